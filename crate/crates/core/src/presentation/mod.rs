//! Free-group words, finite presentations, abelianization and maps to `Z^m`.

mod abelian;
mod epimorphism;
mod parse;
mod word;

pub use abelian::{abelianize, integer_smith, AbelianData, IntegerSmith};
pub use epimorphism::{recoordinatize, EpimorphismToZm, LatticeMap, Recoordinatization};
pub use parse::parse_presentation;
pub use word::{free_reduce, Letter, Word};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown generator '{name}' at {line}:{col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("duplicate generator '{name}' at {line}:{col}")]
    DuplicateGenerator { name: String, line: usize, col: usize },
    #[error("presentation has no generators")]
    EmptyGenerators,
    #[error("relator {relator} uses generator index {index} but only {count} generators exist")]
    GeneratorOutOfRange { relator: usize, index: usize, count: usize },
    #[error("expected {expected} image vectors, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },
    #[error("image vectors must all have length {expected}")]
    ImageRankMismatch { expected: usize },
    #[error("relator {0} is not sent to zero")]
    RelatorNotKilled(usize),
    #[error("images generate a proper subgroup of Z^{target_rank} (index {index:?})")]
    NotSurjective { target_rank: usize, index: Option<u64> },
    #[error("the homomorphism is trivial")]
    ZeroMap,
}

impl PresentationError {
    pub fn code(&self) -> &'static str {
        match self {
            PresentationError::Syntax { .. } => "Syntax",
            PresentationError::UnknownGenerator { .. } => "UnknownGenerator",
            PresentationError::DuplicateGenerator { .. } => "DuplicateGenerator",
            PresentationError::EmptyGenerators => "EmptyGenerators",
            PresentationError::GeneratorOutOfRange { .. } => "GeneratorOutOfRange",
            PresentationError::ImageCountMismatch { .. } => "ImageCountMismatch",
            PresentationError::ImageRankMismatch { .. } => "ImageRankMismatch",
            PresentationError::RelatorNotKilled(_) => "RelatorNotKilled",
            PresentationError::NotSurjective { .. } => "NotSurjective",
            PresentationError::ZeroMap => "ZeroMap",
        }
    }
}

/// A finite presentation `<x_1..x_n | r_1..r_s>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generator_names.is_empty() {
            return Err(PresentationError::EmptyGenerators);
        }
        let count = generator_names.len();
        for (j, r) in relators.iter().enumerate() {
            if let Some(index) = r.max_generator() {
                if index >= count {
                    return Err(PresentationError::GeneratorOutOfRange { relator: j, index, count });
                }
            }
        }
        let relators = relators.iter().map(free_reduce).collect();
        Ok(Presentation { generator_names, relators })
    }

    /// Free group on the given generator names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PresentationError> {
        Presentation::new(names.into_iter().map(Into::into).collect(), Vec::new())
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Relator exponent vectors as rows (`s x n`).
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.generator_count();
        self.relators.iter().map(|r| r.exponent_vector(n)).collect()
    }

    /// Renders back into the presentation language.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens {};\n", self.generator_names.join(", "));
        for r in &self.relators {
            let body = r
                .letters()
                .iter()
                .map(|l| {
                    let name = &self.generator_names[l.gen];
                    if l.exp == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{}", l.exp)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ");
            s.push_str(&format!("rel {body};\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = parse_presentation("gens a1,b1,a2,b2; rel [a1,b1][a2,b2]; rel a1^3 B1;").unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn out_of_range_relator_rejected() {
        let err = Presentation::new(vec!["a".into()], vec![Word::generator(3)]).unwrap_err();
        assert_eq!(err.code(), "GeneratorOutOfRange");
    }
}
