//! Acceptance criteria, one line of output per criterion.
//!
//! Runs under a custom harness so the pass/fail lines are always printed.
//! Expected values that are not read off a closed formula are recomputed by
//! an independent oracle in this file first.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use charvar::certify::{certify_non_fp, generic_vanishing_probe, Conclusion, Strategy};
use charvar::constructions::{
    direct_product, flag_complex, free_group, pencil_map, pencil_numerology, preset, raag, raag_complex,
    reduced_homology, riemann_hurwitz_audit, surface_group, Graph, GroupModel,
};
use charvar::fox::fundamental_identity_check;
use charvar::homology::{
    finite_cover_oracle, kernel_homology_univariate, presentation_complex, twisted_betti, window_homology,
    window_slope, KernelHomologyReport, DEFAULT_WINDOW_MEMORY,
};
use charvar::jump_loci::{is_full_vr_product, v1_ideal, FullnessStatus};
use charvar::laurent::{parse_polynomial, Character};
use charvar::presentation::Word;
use charvar::sampling::{sample_character, trial_rng};
use num_rational::Ratio;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, format!("took {t:?}, limit {limit:?}"))
}

fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let steps: Vec<(usize, i64)> =
        (0..len).map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    Word::from_pairs(&steps)
}

fn fox_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = trial_rng(1, 0);
    for i in 0..1000 {
        let rank = rng.gen_range(1..=4);
        let w = random_word(&mut rng, rank, 20);
        ensure(fundamental_identity_check(&w), format!("word {i} ({w}) fails the identity"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("1000 words in {:?}", start.elapsed()))
}

fn euler_invariance() -> Outcome {
    let start = Instant::now();
    for g in [2u32, 3] {
        let model = surface_group(g).map_err(|e| e.to_string())?;
        let c = model.full_complex().map_err(|e| e.to_string())?;
        let chi = 2 - 2 * i64::from(g);
        for k in 0..50 {
            let rho = sample_character(&mut trial_rng(2, u64::from(g) * 100 + k), 2 * g as usize, 50);
            let b = twisted_betti(&c, &rho).map_err(|e| e.to_string())?;
            ensure(b.euler_characteristic() == chi, format!("g={g}: chi {} at {rho}", b.euler_characteristic()))?;
            ensure(b.get(1) == 2 * g as usize - 2, format!("g={g}: b1 = {} at {rho}", b.get(1)))?;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("100 characters in {:?}", start.elapsed()))
}

fn torus_jump_locus() -> Outcome {
    let torus = surface_group(1).map_err(|e| e.to_string())?;
    let ideal = v1_ideal(torus.presentation(), 1).map_err(|e| e.to_string())?;
    // oracle: the Alexander matrix [1 - t2, t1 - 1], each entry up to units
    let expected: Vec<String> = ["1 - t2", "t1 - 1"]
        .iter()
        .map(|s| parse_polynomial(s, 2).unwrap().primitive_part().to_string())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    ensure(ideal.generators == expected, format!("ideal {:?}, expected {expected:?}", ideal.generators))?;
    let c = torus.full_complex().map_err(|e| e.to_string())?;
    for k in 0..100 {
        let rho = sample_character(&mut trial_rng(3, k), 2, 40);
        let b1 = twisted_betti(&c, &rho).map_err(|e| e.to_string())?.get(1);
        ensure(b1 == 0, format!("b1 = {b1} at {rho}"))?;
    }
    let b1 = twisted_betti(&c, &Character::trivial(2)).map_err(|e| e.to_string())?.get(1);
    ensure(b1 == 2, format!("trivial b1 = {b1}"))?;
    Ok(format!("ideal ({}), 100 samples b1 = 0, trivial b1 = 2", ideal.generators.join(", ")))
}

fn product_fullness() -> Outcome {
    let g2 = surface_group(2).map_err(|e| e.to_string())?;
    let f2 = free_group(2).map_err(|e| e.to_string())?;
    let torus = surface_group(1).map_err(|e| e.to_string())?;
    let a = is_full_vr_product(&[g2.clone(), g2.clone(), g2.clone()], 3, 4).map_err(|e| e.to_string())?;
    ensure(a.status == FullnessStatus::Full, format!("(genus-2)^3: {:?}", a.status))?;
    let b = is_full_vr_product(&[f2.clone(), f2.clone(), f2], 3, 4).map_err(|e| e.to_string())?;
    ensure(b.status == FullnessStatus::Full, format!("F2^3: {:?}", b.status))?;
    let c = is_full_vr_product(&[g2, torus], 2, 4).map_err(|e| e.to_string())?;
    ensure(c.status == FullnessStatus::NotConcluded, format!("genus-2 x torus: {:?}", c.status))?;
    Ok("full, full, not-concluded".into())
}

/// Oracle for the probe: `b_1` of each factor at its restriction, through
/// that factor's own presentation complex, convolved by hand.
fn factor_convolution(factors: &[GroupModel], nu_rows: &[Vec<i64>], rho: &Character) -> Result<Vec<usize>, String> {
    let mut acc = vec![1usize];
    let mut offset = 0;
    for f in factors {
        let n = f.presentation().generator_count();
        let images: Vec<Vec<i64>> = nu_rows[offset..offset + n].to_vec();
        offset += n;
        let m = rho.coords().unwrap().len();
        let map = charvar::presentation::LatticeMap::new(m, images).map_err(|e| e.to_string())?;
        let c = presentation_complex(f.presentation(), &map).map_err(|e| e.to_string())?;
        let b = twisted_betti(&c, rho).map_err(|e| e.to_string())?.betti;
        let mut next = vec![0; acc.len() + b.len() - 1];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn theorem_pipeline() -> Outcome {
    let start = Instant::now();
    let g = preset("product-surface", &[2, 2, 2], 0).map_err(|e| e.to_string())?;
    let nu = pencil_map(&g).map_err(|e| e.to_string())?;
    let cert = certify_non_fp(&g, &nu, 3, Strategy::KunnethProduct, 5).map_err(|e| e.to_string())?;
    let want = [Conclusion::HLeqRInfinite, Conclusion::NotFpR, Conclusion::NotCommensurableFpR];
    ensure(cert.conclusions == want, format!("conclusions {:?}", cert.conclusions))?;
    let probe = generic_vanishing_probe(&g, &nu, 3, 100, 5).map_err(|e| e.to_string())?;
    ensure(probe.vanishing == 0, format!("{} of 100 samples vanish", probe.vanishing))?;
    for s in probe.samples.iter().take(10) {
        let oracle = factor_convolution(g.factors(), nu.images(), &s.character)?;
        ensure(s.betti[..] == oracle[..4], format!("trial {}: {:?} vs oracle {:?}", s.trial, s.betti, oracle))?;
    }
    let min_b3 = probe.samples.iter().map(|s| s.betti[3]).min().unwrap_or(0);
    within(start, Duration::from_secs(120))?;
    Ok(format!("3 conclusions, 0/100 vanishing, min b3 = {min_b3}, {:?}", start.elapsed()))
}

fn torsion_dims(r: &KernelHomologyReport) -> Vec<u64> {
    r.degrees.iter().map(|d| d.torsion_dimension).collect()
}

fn shapiro() -> Outcome {
    let f = free_group(2).map_err(|e| e.to_string())?;
    let g = direct_product(vec![f.clone(), f]).map_err(|e| e.to_string())?;
    let nu = g.diagonal_map().map_err(|e| e.to_string())?;
    let c = g.complex(nu.as_map()).map_err(|e| e.to_string())?;
    let r = kernel_homology_univariate(&c).map_err(|e| e.to_string())?;
    let d2 = &r.degrees[2];
    ensure(d2.free_rank == 1 && d2.infinite_dimensional, format!("degree 2: {d2:?}"))?;
    // oracle: growth of the truncated cover in degree 2
    let rows = window_homology(&c, 5, DEFAULT_WINDOW_MEMORY).map_err(|e| e.to_string())?;
    ensure(window_slope(&rows, 1, 2) == Some(Ratio::from_integer(1)), "window slope disagrees with free rank")?;
    let k3 = raag(&Graph::complete(3)).map_err(|e| e.to_string())?;
    let nu = k3.diagonal_map().map_err(|e| e.to_string())?;
    let r = kernel_homology_univariate(&k3.complex(nu.as_map()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(r.degrees.iter().all(|d| d.free_rank == 0), "K3 kernel has a free summand")?;
    // oracle: H_j(Z^2; Q) has dimension binomial(2, j)
    ensure(torsion_dims(&r)[..3] == [1, 2, 1], format!("K3 dims {:?}", torsion_dims(&r)))?;
    Ok(format!("F2xF2 degree-2 free rank 1; K3 dims {:?}", &torsion_dims(&r)[..3]))
}

fn window_growth() -> Outcome {
    let start = Instant::now();
    let f = free_group(2).map_err(|e| e.to_string())?;
    let g = direct_product(vec![f.clone(), f]).map_err(|e| e.to_string())?;
    let nu = g.diagonal_map().map_err(|e| e.to_string())?;
    let rows = window_homology(&g.complex(nu.as_map()).map_err(|e| e.to_string())?, 6, DEFAULT_WINDOW_MEMORY)
        .map_err(|e| e.to_string())?;
    let dims: Vec<usize> = rows.iter().map(|r| r.dimensions[2]).collect();
    ensure(dims.windows(2).all(|w| w[0] < w[1]), format!("not strictly increasing: {dims:?}"))?;
    let diffs: Vec<usize> = dims.windows(2).map(|w| w[1] - w[0]).collect();
    ensure(diffs[diffs.len() - 3..].iter().all(|&d| d == diffs[diffs.len() - 1]), format!("differences {diffs:?}"))?;
    let slope = window_slope(&rows, 1, 2);
    ensure(slope == Some(Ratio::from_integer(1)), format!("slope per translate {slope:?}"))?;
    let t = surface_group(1).map_err(|e| e.to_string())?;
    let nu = t.epimorphism(1, vec![vec![1], vec![0]]).map_err(|e| e.to_string())?;
    let rows = window_homology(&t.complex(nu.as_map()).map_err(|e| e.to_string())?, 6, DEFAULT_WINDOW_MEMORY)
        .map_err(|e| e.to_string())?;
    let tdims: Vec<usize> = rows.iter().map(|r| r.dimensions[1]).collect();
    ensure(tdims[2..].iter().all(|&d| d == tdims[5]), format!("torus degree 1 does not stabilize: {tdims:?}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("degree-2 dims {dims:?} (slope 1 per translate); torus degree 1 {tdims:?}"))
}

/// Rank of an index-`k` subgroup of `F_n`.
fn schreier_rank(k: usize, n: usize) -> usize {
    k * (n - 1) + 1
}

/// Genus of a connected degree-`k` cover of a closed genus-`g` surface.
fn cover_genus(k: usize, g: usize) -> usize {
    k * (g - 1) + 1
}

fn cover_oracle() -> Outcome {
    // oracles: index-2 subgroups of F_n have rank 2(n-1)+1; the double cover
    // of a genus-g surface has genus 2g-1; index-2 subgroups of Z^2 are Z^2
    let cases: Vec<(&str, GroupModel, Vec<Vec<i64>>, usize)> = vec![
        ("F2", free_group(2).unwrap(), vec![vec![1], vec![1]], schreier_rank(2, 2)),
        ("torus", surface_group(1).unwrap(), vec![vec![1], vec![0]], 2),
        ("genus-2", surface_group(2).unwrap(), vec![vec![1], vec![0], vec![0], vec![0]], 2 * cover_genus(2, 2)),
    ];
    let mut parts = Vec::new();
    for (name, model, images, expected) in cases {
        let nu = model.epimorphism(1, images).map_err(|e| e.to_string())?;
        let r = finite_cover_oracle(model.presentation(), &nu).map_err(|e| e.to_string())?;
        ensure(r.subgroup_b1 == expected, format!("{name}: subgroup b1 {} vs {expected}", r.subgroup_b1))?;
        ensure(r.consistent, format!("{name}: {} != {}", r.subgroup_b1, r.twisted_sum))?;
        parts.push(format!("{name} {} = {} + {}", r.subgroup_b1, r.twisted_b1[0].1, r.twisted_b1[1].1));
    }
    Ok(parts.join("; "))
}

fn pencil() -> Outcome {
    let d = pencil_numerology(&[2, 2, 2]).map_err(|e| e.to_string())?;
    ensure(d.branch_sizes == [2, 2, 2], format!("branch sizes {:?}", d.branch_sizes))?;
    // oracle: enumerate C(h) as tuples of ramification points
    let sets: Vec<Vec<u64>> = d.ramification_sizes.iter().map(|&n| (0..n).collect()).collect();
    let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
    for s in &sets {
        tuples = tuples.iter().flat_map(|t| s.iter().map(move |&x| [t.clone(), vec![x]].concat())).collect();
    }
    ensure(d.critical_points == tuples.len() as u64 && d.critical_points == 8, format!("|C(h)| = {}", d.critical_points))?;
    ensure(d.euler_x == -8, format!("chi(X) = {}", d.euler_x))?;
    for g in 2..=10 {
        let a = riemann_hurwitz_audit(g);
        ensure(a.holds && a.euler_cover == 2 - 2 * i64::from(g), format!("Riemann-Hurwitz fails for g={g}"))?;
    }
    Ok("|B_j| = 2, |C(h)| = 8, chi(X) = -8, audit g = 2..10".into())
}

fn model_agreement() -> Outcome {
    let c4 = Graph::cycle(4).map_err(|e| e.to_string())?;
    let salvetti = kernel_homology_univariate(&raag_complex(&c4)).map_err(|e| e.to_string())?;
    let f = free_group(2).map_err(|e| e.to_string())?;
    let g = direct_product(vec![f.clone(), f]).map_err(|e| e.to_string())?;
    let nu = g.diagonal_map().map_err(|e| e.to_string())?;
    let tensor = kernel_homology_univariate(&g.complex(nu.as_map()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let top = salvetti.degrees.len().max(tensor.degrees.len());
    for j in 0..top {
        let a = salvetti.degree(j).map(|d| (d.free_rank, d.torsion_factors.clone()));
        let b = tensor.degree(j).map(|d| (d.free_rank, d.torsion_factors.clone()));
        let zero = Some((0, Vec::new()));
        ensure(a.clone().or(zero.clone()) == b.clone().or(zero), format!("degree {j}: {a:?} vs {b:?}"))?;
    }
    Ok(format!("{} degrees agree", top))
}

/// Oracle for one-dimensional flag complexes and cones: components and
/// Euler characteristic.
fn graph_reduced_betti(g: &Graph) -> (usize, usize) {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let comps = (0..n).filter(|&x| find(&mut parent, x) == x).count();
    (comps - 1, g.edges().len() + comps - n)
}

fn flag_diagnostics() -> Outcome {
    let c4 = Graph::cycle(4).map_err(|e| e.to_string())?;
    let (b0, b1) = graph_reduced_betti(&c4);
    let got = reduced_homology(&flag_complex(&c4));
    ensure(got == [b0, b1] && got == [0, 1], format!("C4: {got:?}"))?;
    let k3 = reduced_homology(&flag_complex(&Graph::complete(3)));
    ensure(k3.iter().all(|&b| b == 0) && k3.len() == 3, format!("K3: {k3:?}"))?;
    Ok(format!("C4 {got:?}, K3 {k3:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("fox-soundness", fox_soundness),
        ("euler-invariance", euler_invariance),
        ("torus-jump-locus", torus_jump_locus),
        ("product-fullness", product_fullness),
        ("non-fp-pipeline", theorem_pipeline),
        ("univariate-shapiro", shapiro),
        ("window-growth", window_growth),
        ("finite-cover-oracle", cover_oracle),
        ("pencil-numerology", pencil),
        ("model-agreement", model_agreement),
        ("flag-diagnostics", flag_diagnostics),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
