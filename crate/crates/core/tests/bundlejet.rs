//! Jet-pair blow-ups: round trips, exact collision limits of prolonged
//! polynomials, and the value-relation constant estimated from Taylor
//! remainders without going through the blow-up.

use rand::seq::SliceRandom;
use rand::Rng;
use wblowup::bundlejet::*;
use wblowup::fm::{brute_force_index_nests, covering_forest};
use wblowup::jets::{Polynomial, Series};
use wblowup::rational::{q, q_to_f64, qf, Q};
use wblowup::surd::Surd;
use wblowup::verify::{random_q, VerifyConfig};

type Rng8 = rand_chacha::ChaCha8Rng;

fn random_polynomial(rng: &mut Rng8, m: usize, max_degree: u32) -> Polynomial {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(2..=6) {
        let mut e = vec![0u32; m];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            e[rng.gen_range(0..m)] += 1;
        }
        terms.push((e, random_q(rng, 5, 3)));
    }
    // Keep a cubic term so the collision limits are not all trivial.
    let mut cubic = vec![0u32; m];
    cubic[0] = 3;
    terms.push((cubic, qf(rng.gen_range(1..5), 1)));
    Polynomial::from_terms(m, terms).unwrap()
}

fn random_jet(rng: &mut Rng8, m: usize) -> Jet2 {
    let x = (0..m).map(|_| Surd::from_q(random_q(rng, 5, 3))).collect();
    let p = (0..m).map(|_| Surd::from_q(random_q(rng, 5, 3))).collect();
    let mut h = vec![vec![Surd::from_i64(0); m]; m];
    for i in 0..m {
        for j in i..m {
            let v = Surd::from_q(random_q(rng, 5, 3));
            h[i][j] = v.clone();
            h[j][i] = v;
        }
    }
    Jet2::new(x, Surd::from_q(random_q(rng, 5, 3)), p, h).unwrap()
}

fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn chart_and_blow_down_are_inverse() {
    let mut rng = VerifyConfig::with_seed(13).rng();
    let mut checked = 0;
    while checked < 120 {
        let m = rng.gen_range(1..=3);
        let pair = JetPair2 { first: random_jet(&mut rng, m), second: random_jet(&mut rng, m) };
        let Ok(b) = jet_chart(&pair) else { continue };
        assert!(b.lambda.to_f64() > 0.0);
        let norm: f64 = b.dx.iter().map(|x| x.to_f64().powi(2)).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(jet_blow_down(&b).unwrap(), pair);
        let o = jet_offsets(&pair).unwrap();
        assert_eq!(jet_offsets_inv(&pair.first, &o).unwrap(), pair);
        checked += 1;
    }
}

#[test]
fn vertical_collisions_have_no_chart() {
    let mut rng = VerifyConfig::with_seed(14).rng();
    let first = random_jet(&mut rng, 2);
    let mut second = random_jet(&mut rng, 2);
    second.x = first.x.clone();
    assert!(matches!(jet_chart(&JetPair2 { first, second }), Err(wblowup::Error::OutsideDomain(_))));
}

/// The constant `c` in `δy = c·δy′(δx)`, estimated from the Taylor remainders
/// of `f` along `x₀ + εv`: `δy ≈ 3 R₀/ε³` and `δy′(δx) ≈ 2 R₁/ε²` under the
/// ⅓/½ substitution.
fn taylor_constant(f: &Polynomial, x0: &[Q], v: &[Q], eps: &Q) -> Option<f64> {
    let m = f.nvars();
    let grad: Vec<Polynomial> = (0..m).map(|i| f.derivative(i)).collect();
    let x1: Vec<Q> = x0.iter().zip(v).map(|(a, b)| a + eps * b).collect();
    let g0: Vec<Q> = grad.iter().map(|g| g.eval(x0)).collect();
    let g1: Vec<Q> = grad.iter().map(|g| g.eval(&x1)).collect();
    let hv: Vec<Q> = grad.iter().map(|g| (0..m).map(|j| g.derivative(j).eval(x0) * &v[j]).sum()).collect();
    let r0 = f.eval(&x1) - f.eval(x0) - eps * dot_q(&g0, v) - qf(1, 2) * eps * eps * dot_q(v, &hv);
    let r1: Q = (0..m).map(|i| (&g1[i] - &g0[i] - eps * &hv[i]) * &v[i]).sum();
    let dy = q(3) * r0 / (eps * eps * eps);
    let dpdx = q(2) * r1 / (eps * eps);
    // Where the cubic term vanishes along v both sides tend to zero and the
    // ratio is governed by quartic terms instead.
    if q_to_f64(&dpdx).abs() < 1e-3 {
        return None;
    }
    Some(q_to_f64(&(dy / dpdx)))
}

#[test]
fn value_constant_from_taylor_remainders() {
    let mut rng = VerifyConfig::with_seed(15).rng();
    let eps = qf(1, 1_000_000);
    let mut estimates = Vec::new();
    for _ in 0..50 {
        let m = rng.gen_range(1..=2);
        let f = random_polynomial(&mut rng, m, 4);
        let x0: Vec<Q> = (0..m).map(|_| random_q(&mut rng, 3, 2)).collect();
        let v: Vec<Q> = (0..m).map(|i| if i == 0 { q(1) } else { random_q(&mut rng, 2, 2) }).collect();
        if let Some(c) = taylor_constant(&f, &x0, &v, &eps) {
            estimates.push(c);
        }
    }
    assert!(estimates.len() >= 40);
    let c = HOLONOMIC_C.0 as f64 / HOLONOMIC_C.1 as f64;
    for e in &estimates {
        assert!((e - c).abs() < 1e-3, "estimate {e}");
    }
}

fn curve(rng: &mut Rng8, base: &[Q], m: usize) -> Vec<Series> {
    (0..m).map(|i| Series::new(vec![base[i].clone(), random_q(rng, 3, 2), random_q(rng, 3, 2)])).collect()
}

#[test]
fn collision_limits_satisfy_the_relations() {
    let mut rng = VerifyConfig::with_seed(16).rng();
    let half = Surd::from_q(qf(HOLONOMIC_C.0, HOLONOMIC_C.1));
    let mut literal_holds = 0;
    let mut checked = 0;
    while checked < 60 {
        let m = rng.gen_range(1..=2);
        let f = random_polynomial(&mut rng, m, 4);
        let base: Vec<Q> = (0..m).map(|_| random_q(&mut rng, 3, 2)).collect();
        let x1 = curve(&mut rng, &base, m);
        let mut x2 = curve(&mut rng, &base, m);
        // Same limit point, separated at first order.
        x2[0] = Series::new(vec![base[0].clone(), x1[0].coeff(1) + q(1), random_q(&mut rng, 3, 2)]);
        let b = jet_limit(&f, &x1, &x2).unwrap();
        let contracted: Vec<Surd> =
            b.dh.iter().map(|row| row.iter().zip(&b.dx).fold(Surd::from_i64(0), |acc, (a, x)| &acc + &(a * x))).collect();
        assert_eq!(contracted, b.dp);
        let dpdx = b.dp.iter().zip(&b.dx).fold(Surd::from_i64(0), |acc, (a, x)| &acc + &(a * x));
        assert_eq!(b.dy, &half * &dpdx);
        assert!(holonomic_predicate(&b, HolonomicMode::Derived).unwrap());
        if holonomic_predicate(&b, HolonomicMode::Literal).unwrap() {
            literal_holds += 1;
            assert_eq!(dpdx, Surd::from_i64(0));
        }

        // The limit agrees with the chart at a small parameter value.
        let t = qf(1, 100_000);
        let at = |c: &[Series]| -> Vec<Q> { c.iter().map(|s| s.eval(&t)).collect() };
        let pair = JetPair2 { first: Jet2::of_polynomial(&f, &at(&x1)).unwrap(), second: Jet2::of_polynomial(&f, &at(&x2)).unwrap() };
        let near = jet_chart(&pair).unwrap();
        let close = |a: &Surd, b: &Surd| (a.to_f64() - b.to_f64()).abs() <= 1e-3 * (1.0 + b.to_f64().abs());
        assert!(close(&near.dy, &b.dy), "{} vs {}", near.dy.to_f64(), b.dy.to_f64());
        assert!(near.dx.iter().zip(&b.dx).all(|(a, c)| close(a, c)));
        assert!(near.dp.iter().zip(&b.dp).all(|(a, c)| close(a, c)));
        assert!(near.dh.iter().flatten().zip(b.dh.iter().flatten()).all(|(a, c)| close(a, c)));
        checked += 1;
    }
    // The literal relation holds only where δy′(δx) vanishes.
    assert!(literal_holds < checked);
}

#[test]
fn bundle_model_round_trips() {
    let mut rng = VerifyConfig::with_seed(17).rng();
    for _ in 0..100 {
        let m = rng.gen_range(1..=2);
        let model = BundleModel::jet2(m);
        let s = rng.gen_range(2..=4);
        let nests = brute_force_index_nests(s);
        let nest = nests.choose(&mut rng).unwrap();
        let c = covering_forest(nest);
        let width = m + model.d();
        let config: Vec<Vec<f64>> = (0..s).map(|_| (0..width).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
        let p = bundle_chart(&model, &c, &config).unwrap();
        let back = bundle_blow_down(&p).unwrap();
        for (a, b) in back.iter().flatten().zip(config.iter().flatten()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
    assert_eq!(BundleModel::jet2(2).vweights, vec![3, 2, 2, 1, 1, 1]);
}
