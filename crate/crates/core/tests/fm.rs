//! Weighted configuration spaces: forests, local-model charts, collision
//! limits and induced building sets, with independent normalization and
//! vanishing-order oracles.

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use wblowup::fm::*;
use wblowup::jets::{Series, WeightVector};
use wblowup::rational::{q, qf, q_to_f64, Q};
use wblowup::verify::VerifyConfig;

fn set(v: &[usize]) -> Labels {
    v.iter().copied().collect()
}

fn wv(w: &[u32]) -> WeightVector {
    WeightVector::new(w.to_vec()).unwrap()
}

fn nine_point_nest() -> IndexNest {
    IndexNest::new(9, [set(&[1, 2, 3]), set(&[5, 6]), set(&[7, 8, 9]), set(&[5, 6, 7, 8, 9])]).unwrap()
}

/// Weighted unit scale by plain bisection: the `μ > 0` with
/// `Σ (v_i / μ^{w_i})² = 1`.
fn bisect_scale(v: &[f64], w: &[u32]) -> f64 {
    let f = |mu: f64| v.iter().zip(w).map(|(x, &wi)| (x / mu.powi(wi as i32)).powi(2)).sum::<f64>() - 1.0;
    let (mut lo, mut hi) = (1e-12, 1.0);
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn nine_point_forest_with_explicit_roots() {
    let nest = nine_point_nest();
    let root_of: BTreeMap<Labels, usize> =
        BTreeMap::from([(set(&[1, 2, 3]), 2), (set(&[5, 6]), 6), (set(&[7, 8, 9]), 7), (set(&[5, 6, 7, 8, 9]), 7)]);
    let roots: Vec<usize> = nest.members().iter().map(|m| root_of[m]).collect();
    let c = covering_forest_with_roots(&nest, &roots).unwrap();
    assert_eq!(c.forest.parent_map(), &BTreeMap::from([(1, 2), (3, 2), (5, 6), (8, 7), (9, 7), (6, 7)]));
    let controls: BTreeMap<Labels, Labels> = nest.members().iter().cloned().zip(c.controls.iter().cloned()).collect();
    assert_eq!(controls[&set(&[1, 2, 3])], set(&[1, 3]));
    assert_eq!(controls[&set(&[5, 6])], set(&[5]));
    assert_eq!(controls[&set(&[7, 8, 9])], set(&[8, 9]));
    assert_eq!(controls[&set(&[5, 6, 7, 8, 9])], set(&[6]));
    assert_control_partition(&c);
}

#[test]
fn nine_point_default_forest_is_a_covering() {
    let c = covering_forest(&nine_point_nest());
    assert_eq!(c.forest.parent_map(), &BTreeMap::from([(2, 1), (3, 1), (6, 5), (8, 7), (9, 7), (7, 5)]));
    assert_control_partition(&c);
    assert!(check_covering(&c.nest, &c.forest).is_ok());
}

fn assert_control_partition(c: &Covering) {
    let mut seen: Labels = c.roots();
    let mut total = seen.len();
    for ct in &c.controls {
        total += ct.len();
        seen.extend(ct.iter().copied());
    }
    assert_eq!(total, c.nest.s());
    assert_eq!(seen, (1..=c.nest.s()).collect());
}

#[test]
fn every_default_forest_covers_its_nest() {
    for s in 2..=5 {
        for nest in brute_force_index_nests(s) {
            let c = covering_forest(&nest);
            assert_eq!(check_covering(&nest, &c.forest).unwrap().controls, c.controls);
            assert_control_partition(&c);
        }
    }
}

#[test]
fn bad_forests_are_rejected() {
    let nest = IndexNest::new(3, [set(&[1, 2])]).unwrap();
    let f = Forest::new(3, BTreeMap::from([(3, 1)])).unwrap();
    assert!(check_covering(&nest, &f).is_err());
    assert!(Forest::new(2, BTreeMap::from([(1, 2), (2, 1)])).is_err());
}

#[test]
fn chart_normalization_matches_bisection() {
    let nest = IndexNest::new(2, [set(&[1, 2])]).unwrap();
    let c = covering_forest(&nest);
    let p = fm_chart(&wv(&[1, 2]), &c, &[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
    let mu = bisect_scale(&[3.0, 4.0], &[1, 2]);
    let closed = ((9.0 + 145f64.sqrt()) / 2.0).sqrt();
    assert!((mu - closed).abs() < 1e-12);
    assert!((p.t[0] - mu).abs() < 1e-12);
    assert!((p.screens[0][0] - 3.0 / mu).abs() < 1e-12 && (p.screens[0][1] - 4.0 / (mu * mu)).abs() < 1e-12);

    let p = fm_chart(&wv(&[1]), &c, &[vec![0.0], vec![0.25]]).unwrap();
    assert_eq!((p.roots[&1].clone(), p.screens[0].clone(), p.t[0]), (vec![0.0], vec![1.0], 0.25));
}

#[test]
fn chart_and_blow_down_are_inverse() {
    let mut rng = VerifyConfig::with_seed(8).rng();
    let mut worst: f64 = 0.0;
    for _ in 0..120 {
        let s = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=3);
        let w: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        let nests = brute_force_index_nests(s);
        let nest = nests.choose(&mut rng).unwrap();
        let c = covering_forest(nest);
        let config: Vec<Vec<f64>> = (0..s).map(|_| (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
        let p = fm_chart(&wv(&w), &c, &config).unwrap();
        assert!(p.t.iter().all(|&t| t > 0.0));
        for (k, sc) in p.screens.iter().enumerate() {
            let bw: Vec<u32> = c.controls[k].iter().flat_map(|_| w.iter().copied()).collect();
            let unit: f64 = sc.iter().zip(&bw).map(|(x, _)| x * x).sum();
            assert!((unit - 1.0).abs() < 1e-12);
        }
        let back = fm_blow_down(&p).unwrap();
        for (a, b) in back.iter().flatten().zip(config.iter().flatten()) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-12, "worst deviation {worst}");
}

#[test]
fn coinciding_points_are_outside_the_chart() {
    let c = covering_forest(&IndexNest::new(2, [set(&[1, 2])]).unwrap());
    assert!(matches!(fm_chart(&wv(&[1]), &c, &[vec![1.0], vec![1.0]]), Err(wblowup::Error::OutsideDomain(_))));
}

#[test]
fn raising_one_control_separates_one_pair() {
    let nest = nine_point_nest();
    let c = covering_forest(&nest);
    let w = wv(&[1, 2]);
    let mut rng = VerifyConfig::with_seed(9).rng();
    let config: Vec<Vec<f64>> = (0..9).map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
    let mut p = fm_chart(&w, &c, &config).unwrap();
    // Everything collided except the outer level of the 5–9 cluster.
    p.t = vec![0.0; 4];
    p.t[nest.position(&set(&[5, 6, 7, 8, 9])).unwrap()] = 0.7;
    let collided = fm_blow_down(&p).unwrap();
    assert_eq!(collided[4], collided[5]);
    assert_ne!(collided[4], collided[6]);
    let k56 = nest.position(&set(&[5, 6])).unwrap();
    p.t[k56] = 0.5;
    let opened = fm_blow_down(&p).unwrap();
    assert_ne!(opened[4], opened[5]);
    assert_eq!(opened[0], collided[0]);
    assert_eq!(opened[6], opened[7]);
}

fn poly(pairs: &[(usize, i64)]) -> Series {
    series_from_pairs(&pairs.iter().map(|&(e, c)| (e, q(c))).collect::<Vec<_>>())
}

#[test]
fn curve_limit_examples() {
    let p = curve_limit(&wv(&[1]), &[vec![poly(&[])], vec![poly(&[(2, 1)])]]).unwrap();
    assert_eq!(p.covering.nest.members(), &[set(&[1, 2])]);
    assert_eq!(p.screens[0], vec![1.0]);
    assert_eq!(fm_blow_down(&p).unwrap(), vec![vec![0.0], vec![0.0]]);

    let p = curve_limit(&wv(&[1]), &[vec![poly(&[])], vec![poly(&[(2, 1)])], vec![poly(&[(1, 1)])]]).unwrap();
    assert_eq!(p.covering.nest.members(), &[set(&[1, 2]), set(&[1, 2, 3])]);

    let p = curve_limit(&wv(&[1, 1, 2]), &[vec![poly(&[]); 3], vec![poly(&[(3, 1)]), poly(&[(4, 1)]), poly(&[])]]).unwrap();
    assert_eq!(p.covering.nest.members(), &[set(&[1, 2])]);
    assert_eq!(p.screens[0], vec![1.0, 0.0, 0.0]);

    let same = curve_limit(&wv(&[1]), &[vec![poly(&[(1, 1)])], vec![poly(&[(1, 1)])]]);
    assert!(matches!(same, Err(wblowup::Error::OutsideDomain(_))));
}

/// Curves `t ↦` blow-down of a model point with `t_N = t^{k_N}` and rational
/// unnormalized screens; the limit must recover the nest and the normalized
/// screens, and blow down to the configuration at `t = 0`.
#[test]
fn curve_limit_recovers_model_curves() {
    let mut rng = VerifyConfig::with_seed(10).rng();
    for _ in 0..40 {
        let s = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=2);
        let w: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        let nests: Vec<IndexNest> = brute_force_index_nests(s).into_iter().filter(|n| !n.is_empty()).collect();
        let nest = nests.choose(&mut rng).unwrap().clone();
        let c = covering_forest(&nest);
        let k: Vec<usize> = (0..nest.len()).map(|_| rng.gen_range(1..=2)).collect();
        let rand_q = |rng: &mut rand_chacha::ChaCha8Rng| -> Q {
            loop {
                let x = qf(rng.gen_range(-4..=4), rng.gen_range(1..=3));
                if x != q(0) {
                    return x;
                }
            }
        };
        // Offsets per label as series.
        let mut offsets: Vec<Vec<Series>> = vec![vec![Series::new(vec![]); m]; s];
        let mut sigma: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        for l in 1..=s {
            let Some(par) = c.forest.parent(l) else {
                // Distinct roots: the first coordinate is the label itself.
                offsets[l - 1] = (0..m).map(|i| Series::constant(if i == 0 { q(l as i64) } else { rand_q(&mut rng) })).collect();
                continue;
            };
            let big_k: usize = (0..nest.len()).filter(|&j| nest.members()[j].contains(&l) && nest.members()[j].contains(&par)).map(|j| k[j]).sum();
            // Distinct first entries keep siblings apart.
            let sg: Vec<Q> = (0..m).map(|i| if i == 0 { q(l as i64) } else { rand_q(&mut rng) }).collect();
            offsets[l - 1] = (0..m).map(|i| series_from_pairs(&[(big_k * w[i] as usize, sg[i].clone())])).collect();
            sigma.insert(l, sg);
        }
        fn position(forest: &Forest, offsets: &[Vec<Series>], l: usize) -> Vec<Series> {
            match forest.parent(l) {
                None => offsets[l - 1].clone(),
                Some(par) => position(forest, offsets, par).iter().zip(&offsets[l - 1]).map(|(a, b)| a.add(b)).collect(),
            }
        }
        let curves: Vec<Vec<Series>> = (1..=s).map(|l| position(&c.forest, &offsets, l)).collect();
        let p = curve_limit(&wv(&w), &curves).unwrap();
        assert_eq!(p.covering.nest, nest);
        for kk in 0..nest.len() {
            let block: Vec<f64> = c.controls[kk].iter().flat_map(|l| sigma[l].iter().map(q_to_f64)).collect();
            let bw: Vec<u32> = c.controls[kk].iter().flat_map(|_| w.iter().copied()).collect();
            let mu = bisect_scale(&block, &bw);
            for (x, (b, &wi)) in p.screens[kk].iter().zip(block.iter().zip(&bw)) {
                assert!((x - b / mu.powi(wi as i32)).abs() < 1e-10);
            }
        }
        let at_zero: Vec<Vec<f64>> = curves.iter().map(|c| c.iter().map(|x| q_to_f64(&x.coeff(0))).collect()).collect();
        assert_eq!(fm_blow_down(&p).unwrap(), at_zero);
    }
}

#[test]
fn induced_building_sets_are_valid() {
    let mut rng = VerifyConfig::with_seed(11).rng();
    let mut checked = 0;
    for _ in 0..50 {
        let s = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=2);
        let w: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        let nests = brute_force_index_nests(s);
        let nest = nests.choose(&mut rng).unwrap();
        let c = covering_forest(nest);
        let bs = induced_diag_building_set(&wv(&w), &c).unwrap();
        assert_eq!(bs.len(), nest.len());
        assert_eq!(bs.dim(), s * m);
        let d = bs.check_weighted_building_set().unwrap();
        assert!(d.separated && d.is_weighted_valid());
        let all: Vec<usize> = (0..bs.len()).collect();
        assert!(bs.is_nest(&all).unwrap());
        for (k, n) in nest.members().iter().enumerate() {
            let g = bs.index_of(&member_element_name(n)).unwrap();
            let expected: BTreeSet<usize> = n.iter().filter(|&&l| l != c.top(k)).flat_map(|&l| (0..m).map(move |j| (l - 1) * m + j)).collect();
            assert_eq!(bs.zeros(g).unwrap(), expected);
        }
        checked += 1;
    }
    assert_eq!(checked, 50);
}

#[test]
fn diagonal_data_pass_the_weighted_check() {
    for s in 2..=4 {
        for w in [&[1u32][..], &[1, 2], &[2, 2, 3]] {
            let r = fm_check(s, &wv(w)).unwrap();
            assert!(r.passed(), "s = {s}, w = {w:?}");
            assert_eq!(r.nests_checked, brute_force_index_nests(s).len());
        }
    }
}

#[test]
fn factorize_is_order_independent_and_idempotent() {
    let mut rng = VerifyConfig::with_seed(12).rng();
    for _ in 0..50 {
        let mut sets: Vec<Labels> = (0..rng.gen_range(1..5)).map(|_| (1..=6).filter(|_| rng.gen_bool(0.4)).collect::<Labels>()).filter(|x| !x.is_empty()).collect();
        if sets.is_empty() {
            continue;
        }
        let a = factorize(&sets);
        sets.reverse();
        assert_eq!(factorize(&sets), a);
        assert_eq!(factorize(&a.iter().cloned().collect::<Vec<_>>()), a);
    }
}

#[test]
fn projective_screens() {
    let c = covering_forest(&IndexNest::new(3, [set(&[1, 2]), set(&[1, 2, 3])]).unwrap());
    let p = fm_chart(&wv(&[1, 2]), &c, &[vec![0.0, 0.0], vec![0.1, 0.3], vec![-1.0, 0.5]]).unwrap();
    let (canon, flags) = fm_projective_canonicalize(&p);
    assert_eq!(canon, p);
    assert_eq!(flags, vec![false, false]);
    let mut z = p.clone();
    z.t = vec![0.0, 0.0];
    let (once, _) = fm_projective_canonicalize(&z);
    assert_eq!(fm_projective_canonicalize(&once).0, once);
    let mut even = z.clone();
    even.weights = wv(&[2, 2]);
    assert_eq!(fm_projective_canonicalize(&even).1, vec![true, true]);
    assert_eq!(screens_render(&p), screens_render(&p.clone()));
    assert!(screens_render(&p).starts_with("x1 = "));
}
