use std::fs;
use std::path::{Path, PathBuf};

use charvar::certify::validate_nu;
use charvar::constructions::{parse_graph, pencil_map, preset, raag, Graph, GroupModel};
use charvar::presentation::{parse_presentation, EpimorphismToZm};
use clap::Args;

use crate::CliError;

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Named group: surface, product-surface, torus, free, bb-octahedron, stallings.
    #[arg(long, conflicts_with_all = ["input", "graph"])]
    pub preset: Option<String>,
    /// Genera for surface presets, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub genus: Vec<u32>,
    /// Rank of the free preset.
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Presentation file (`gens a,b; rel [a,b];`).
    #[arg(long, conflicts_with = "graph")]
    pub input: Option<PathBuf>,
    /// Graph file (`v N` / `e u v` lines); the group is its right-angled Artin group.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

impl GroupArgs {
    pub fn model(&self) -> Result<GroupModel, CliError> {
        if let Some(path) = &self.input {
            let p = parse_presentation(&read(path)?).map_err(charvar::Error::from)?;
            let name = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
            return Ok(GroupModel::from_presentation(name, p));
        }
        if let Some(path) = &self.graph {
            return Ok(raag(&load_graph(path)?).map_err(charvar::Error::from)?);
        }
        let name = self.preset.as_deref().ok_or_else(|| CliError::Usage("one of --preset, --input, --graph is required".into()))?;
        Ok(preset(name, &self.genus, self.rank).map_err(charvar::Error::from)?)
    }
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph file (`v N` / `e u v` lines).
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Built-in graph: cycle:N, complete:N, empty:N, octahedron.
    #[arg(long)]
    pub family: Option<String>,
}

impl GraphArgs {
    pub fn graph(&self) -> Result<Graph, CliError> {
        if let Some(path) = &self.graph {
            return load_graph(path);
        }
        let spec = self.family.as_deref().ok_or_else(|| CliError::Usage("one of --graph, --family is required".into()))?;
        family(spec)
    }
}

fn family(spec: &str) -> Result<Graph, CliError> {
    let (kind, n) = match spec.split_once(':') {
        Some((k, n)) => (k, Some(n.parse::<usize>().map_err(|_| CliError::Usage(format!("bad size in '{spec}'")))?)),
        None => (spec, None),
    };
    let g = match (kind, n) {
        ("octahedron", None) => Graph::octahedron(),
        ("complete", Some(n)) => Graph::complete(n),
        ("empty", Some(n)) => Graph::empty(n),
        ("cycle", Some(n)) => Graph::cycle(n).map_err(charvar::Error::from)?,
        _ => return Err(CliError::Usage(format!("unknown graph family '{spec}'"))),
    };
    Ok(g)
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(parse_graph(&read(path)?).map_err(charvar::Error::from)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `ones`, `pencil`, or explicit images: one row per generator separated by
/// `;`, coordinates separated by `,` (e.g. `1,0;0,1;0,0;0,0`).
pub fn parse_nu(model: &GroupModel, spec: &str) -> Result<EpimorphismToZm, CliError> {
    let nu = match spec.trim() {
        "ones" => model.diagonal_map().map_err(charvar::Error::from)?,
        "pencil" => {
            let curves = model.curve_euler().is_some()
                || (!model.factors().is_empty() && model.factors().iter().all(|f| f.curve_euler().is_some()));
            if !curves {
                return Err(CliError::Usage("--nu pencil needs a surface group or a product of them".into()));
            }
            pencil_map(model).map_err(charvar::Error::from)?
        }
        explicit => {
            let images = explicit
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad image entry '{}'", x.trim()))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = images.first().map_or(0, Vec::len);
            if images.iter().any(|r| r.len() != m) {
                return Err(CliError::Usage("every image row needs the same number of coordinates".into()));
            }
            validate_nu(model, m, images).map_err(charvar::Error::from)?
        }
    };
    Ok(nu)
}
