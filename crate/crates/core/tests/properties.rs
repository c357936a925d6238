use charvar::certify::{
    certify_non_fp, generic_vanishing_probe, kernel_report_univariate, CertifyError, Strategy as Route,
};
use charvar::constructions::{
    bestvina_brady, direct_product, free_group, raag_complex, riemann_hurwitz_audit, surface_group, Graph,
    GroupModel,
};
use charvar::homology::{
    generic_ranks, kernel_homology_univariate, kunneth_convolution, presentation_complex, tensor_complex,
    twisted_betti, window_homology, window_slope, TwistedComplex, DEFAULT_WINDOW_MEMORY,
};
use charvar::jump_loci::{in_variety, is_full_v1, is_full_vr_product, v1_ideal, JumpLocusQuery};
use charvar::laurent::{evaluate, Character};
use charvar::presentation::{abelianize, LatticeMap, Presentation, Word};
use charvar::sampling::{sample_character, special_points, trial_rng};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use proptest::prelude::*;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, prop::bool::ANY), 0..=max_len)
        .prop_map(|steps| Word::from_pairs(&steps.iter().map(|&(g, s)| (g, if s { 1 } else { -1 })).collect::<Vec<_>>()))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(word(n, 6), 0..=2).prop_map(move |rels| {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            Presentation::new(names, rels).unwrap()
        })
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (1i64..=9, prop::bool::ANY, 1i64..=9)
        .prop_map(|(p, neg, q)| BigRational::new(BigInt::from(if neg { -p } else { p }), BigInt::from(q)))
}

/// Presentation complex over the free part of the abelianization.
fn full_presentation_complex(p: &Presentation) -> TwistedComplex {
    presentation_complex(p, &LatticeMap::from_abelian(&abelianize(p))).unwrap()
}

fn catalog(index: usize) -> GroupModel {
    match index {
        0 => surface_group(1).unwrap(),
        1 => surface_group(2).unwrap(),
        2 => free_group(2).unwrap(),
        _ => free_group(3).unwrap(),
    }
}

/// `nu` onto `Z` sending each generator of `g` to the given integers, made
/// surjective by forcing the first image to 1.
fn univariate_nu(g: &GroupModel, mut images: Vec<i64>) -> charvar::presentation::EpimorphismToZm {
    images[0] = 1;
    g.epimorphism(1, images.into_iter().map(|x| vec![x]).collect()).unwrap()
}

fn pad(v: &[usize], n: usize) -> Vec<usize> {
    let mut v = v.to_vec();
    v.resize(n, 0);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // every constructed complex is validated by TwistedComplex::new, which
    // rejects any pair with d_j d_{j+1} != 0
    #[test]
    fn constructed_complexes_compose_to_zero(a in presentation(), b in presentation()) {
        let ca = full_presentation_complex(&a);
        let cb = full_presentation_complex(&b);
        let t = tensor_complex(&ca, &cb).unwrap();
        for j in 1..t.differentials().len() {
            let prod = t.differential(j).unwrap().try_mul(t.differential(j + 1).unwrap()).unwrap();
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn euler_invariance(p in presentation(), seed in any::<u64>()) {
        let c = full_presentation_complex(&p);
        let rho = sample_character(&mut trial_rng(seed, 0), c.variable_count(), 9);
        prop_assert_eq!(twisted_betti(&c, &rho).unwrap().euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(twisted_betti(&c, &Character::Generic).unwrap().euler_characteristic(), c.euler_characteristic());
    }

    #[test]
    fn kunneth_exact(a in presentation(), b in presentation(), seed in any::<u64>()) {
        let ca = full_presentation_complex(&a);
        let cb = full_presentation_complex(&b);
        let (na, nb) = (ca.variable_count(), cb.variable_count());
        let rho = sample_character(&mut trial_rng(seed, 1), na + nb, 5);
        let whole = twisted_betti(&tensor_complex(&ca, &cb).unwrap(), &rho).unwrap().betti;
        let ba = twisted_betti(&ca, &rho.restrict(0, na)).unwrap().betti;
        let bb = twisted_betti(&cb, &rho.restrict(na, na + nb)).unwrap().betti;
        let conv = kunneth_convolution(&[ba, bb]);
        let n = whole.len().max(conv.len());
        prop_assert_eq!(pad(&whole, n), pad(&conv, n));
    }

    #[test]
    fn semicontinuity(p in presentation(), coords in prop::collection::vec(rational(), 3)) {
        let c = full_presentation_complex(&p);
        let rho = Character::Rational(coords[..c.variable_count()].to_vec());
        let generic = twisted_betti(&c, &Character::Generic).unwrap();
        let at = twisted_betti(&c, &rho).unwrap();
        for j in 0..=c.top_degree() {
            prop_assert!(at.get(j) >= generic.get(j), "degree {}: {} < {}", j, at.get(j), generic.get(j));
        }
        prop_assert_eq!(generic.differential_ranks, generic_ranks(&c));
    }

    #[test]
    fn zero_set_consistency(index in 0usize..4, depth in 1usize..=2, seed in any::<u64>()) {
        let g = catalog(index);
        let ideal = v1_ideal(g.presentation(), depth).unwrap();
        let rho = sample_character(&mut trial_rng(seed, 2), g.torus_dimension(), 6);
        let in_zero_set = ideal.polynomials.iter().all(|f| evaluate(f, &rho).unwrap().is_zero());
        let member = in_variety(&g, &JumpLocusQuery { degree: 1, depth, character: rho }).unwrap();
        prop_assert_eq!(in_zero_set, member);
    }

    #[test]
    fn fullness_soundness(index in 0usize..4, seed in any::<u64>()) {
        let g = catalog(index);
        let verdict = is_full_v1(&g).unwrap();
        if verdict.is_full {
            let m = g.torus_dimension();
            let mut points: Vec<Character> = special_points(m).into_iter().map(|(_, c)| c).collect();
            points.extend((0..8).map(|k| sample_character(&mut trial_rng(seed, k), m, 8)));
            for rho in points {
                let q = JumpLocusQuery { degree: 1, depth: 1, character: rho };
                prop_assert!(in_variety(&g, &q).unwrap());
            }
        }
    }

    #[test]
    fn product_lower_bound(i in 0usize..4, j in 0usize..4, seed in any::<u64>()) {
        let (a, b) = (catalog(i), catalog(j));
        let (na, nb) = (a.torus_dimension(), b.torus_dimension());
        let g = direct_product(vec![a.clone(), b.clone()]).unwrap();
        let rho = sample_character(&mut trial_rng(seed, 3), na + nb, 7);
        let (ra, rb) = (rho.restrict(0, na), rho.restrict(na, na + nb));
        prop_assume!(!ra.is_trivial() && !rb.is_trivial());
        let b2 = twisted_betti(&g.full_complex().unwrap(), &rho).unwrap().get(2);
        let b1a = twisted_betti(&a.full_complex().unwrap(), &ra).unwrap().get(1);
        let b1b = twisted_betti(&b.full_complex().unwrap(), &rb).unwrap().get(1);
        prop_assert!(b2 >= b1a * b1b);
    }

    #[test]
    fn catalog_surface_betti(g in 1u32..=3, seed in any::<u64>()) {
        let model = surface_group(g).unwrap();
        let c = model.full_complex().unwrap();
        let rho = sample_character(&mut trial_rng(seed, 4), 2 * g as usize, 12);
        let n = 2 * g as usize;
        prop_assert_eq!(twisted_betti(&c, &rho).unwrap().betti, vec![0, n - 2, 0]);
        prop_assert_eq!(twisted_betti(&c, &Character::trivial(n)).unwrap().betti, vec![1, n, 1]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn window_growth_matches_free_rank(index in 0usize..4, images in prop::collection::vec(-2i64..=2, 6)) {
        let g = catalog(index);
        let nu = univariate_nu(&g, images[..g.presentation().generator_count()].to_vec());
        let c = g.complex(nu.as_map()).unwrap();
        let kernel = kernel_homology_univariate(&c).unwrap();
        let rows = window_homology(&c, 5, DEFAULT_WINDOW_MEMORY).unwrap();
        for j in 0..=c.top_degree() {
            let dims: Vec<usize> = rows.iter().map(|r| r.dimensions[j]).collect();
            prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]), "degree {} not monotone: {:?}", j, dims);
            let free = kernel.degree(j).map_or(0, |d| d.free_rank) as i64;
            prop_assert_eq!(window_slope(&rows, 1, j), Some(Ratio::from_integer(free)));
        }
    }

    #[test]
    fn soundness_coupling_and_determinism(i in 2usize..4, j in 2usize..4, images in prop::collection::vec(-2i64..=2, 6), seed in any::<u64>()) {
        let g = direct_product(vec![catalog(i), catalog(j)]).unwrap();
        let n = g.presentation().generator_count();
        let nu = univariate_nu(&g, images.iter().copied().cycle().take(n).collect());
        let cert = certify_non_fp(&g, &nu, 2, Route::KunnethProduct, seed).unwrap();
        let again = certify_non_fp(&g, &nu, 2, Route::KunnethProduct, seed).unwrap();
        prop_assert_eq!(serde_json::to_string(&cert).unwrap(), serde_json::to_string(&again).unwrap());
        let probe = generic_vanishing_probe(&g, &nu, 2, 8, seed).unwrap();
        prop_assert_eq!(probe.vanishing, 0);
        let report = kernel_report_univariate(&g, &nu, 2, Some(&cert)).unwrap();
        let cross = report.cross_check.unwrap();
        prop_assert!(cross.consistent && cross.report_infinite);
    }
}

#[test]
fn riemann_hurwitz_holds_for_many_genera() {
    for g in 2..=500 {
        assert!(riemann_hurwitz_audit(g).holds, "g = {g}");
    }
}

#[test]
fn bestvina_brady_of_complete_graphs_not_certifiable() {
    for n in 1..=4 {
        let bb = bestvina_brady(&Graph::complete(n)).unwrap();
        for r in 1..=n {
            match certify_non_fp(&bb.group, &bb.nu, r, Route::GenericRank, 1) {
                Err(CertifyError::FullnessNotEstablished(_)) => {}
                other => panic!("K_{n}, r = {r}: {other:?}"),
            }
        }
    }
}

#[test]
fn raag_agrees_with_tensor_route_on_complete_bipartite_graphs() {
    for a in 1..=3 {
        for b in 1..=2 {
            let edges: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
            let graph = Graph::new(a + b, &edges).unwrap();
            let salvetti = kernel_homology_univariate(&raag_complex(&graph)).unwrap();
            let g = direct_product(vec![free_group(a).unwrap(), free_group(b).unwrap()]).unwrap();
            let tensor = kernel_homology_univariate(&g.complex(g.diagonal_map().unwrap().as_map()).unwrap()).unwrap();
            for j in 0..salvetti.degrees.len().max(tensor.degrees.len()) {
                let s = salvetti.degree(j).map_or((0, vec![]), |d| (d.free_rank, d.torsion_factors.clone()));
                let t = tensor.degree(j).map_or((0, vec![]), |d| (d.free_rank, d.torsion_factors.clone()));
                assert_eq!(s, t, "K_{{{a},{b}}} degree {j}");
            }
        }
    }
}

#[test]
fn product_fullness_verdicts_are_sound() {
    let g2 = surface_group(2).unwrap();
    let f2 = free_group(2).unwrap();
    let factors = vec![g2, f2];
    let verdict = is_full_vr_product(&factors, 2, 9).unwrap();
    assert!(verdict.is_full);
    let product = direct_product(factors).unwrap();
    let c = product.full_complex().unwrap();
    for (_, rho) in special_points(product.torus_dimension()) {
        assert!(twisted_betti(&c, &rho).unwrap().get(2) >= 1);
    }
    for k in 0..16 {
        let rho = sample_character(&mut trial_rng(11, k), product.torus_dimension(), 16);
        assert!(twisted_betti(&c, &rho).unwrap().get(2) >= 1);
    }
}
