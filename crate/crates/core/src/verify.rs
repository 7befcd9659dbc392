//! Verification harness: one-sided finite-difference smoothness checks with
//! Richardson ratios, coherence of blow-up points, a flag-based nest oracle,
//! stratum-closure checks along sequences, and seeded random generators for
//! the property suites.

use crate::arrangements::{BuildingSet, Element};
use crate::blowup::{induced_blowdown_nested, single_chart_fwd, single_transition, BlowupPoint, Component, GoodPerspective, SingleChart};
use crate::error::{Error, Result};
use crate::jets::WeightVector;
use crate::rational::{q, q_to_f64, qf, Q};
use crate::surd::Surd;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Tolerances and seed for every verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Allowed relative deviation of a Richardson ratio from its target.
    pub richardson_tol: f64,
    /// Absolute float tolerance for equality checks.
    pub float_tol: f64,
    /// Largest one-sided step `h` (steps `h`, `h/2`, `h/4` are used).
    pub fd_step: Q,
    /// Differences of difference quotients below this (relative to the
    /// quotient's magnitude) count as vanishing.
    pub near_zero: f64,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig { seed: 0x5eed, richardson_tol: 0.05, float_tol: 1e-10, fd_step: qf(1, 1024), near_zero: 1e-7 }
    }
}

impl VerifyConfig {
    pub fn with_seed(seed: u64) -> VerifyConfig {
        VerifyConfig { seed, ..VerifyConfig::default() }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Outcome of a finite-difference smoothness check.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessReport {
    pub passed: bool,
    /// `(component, order, ratio)`; `None` when the differences vanish.
    pub ratios: Vec<(usize, u8, Option<f64>)>,
}

/// Leading truncation-error orders accepted by the Richardson check.
pub const RICHARDSON_ORDERS: [i32; 3] = [1, 2, 3];

/// Whether a Richardson ratio matches `2^p` (within `tol`, relative) for an
/// integer error order `p`.  Smooth maps have truncation errors expanding in
/// integer powers of the step; the leading order exceeds one exactly when the
/// next derivative vanishes at the base point.
pub fn richardson_consistent(r: f64, tol: f64) -> bool {
    r.is_finite() && RICHARDSON_ORDERS.iter().any(|&p| {
        let target = 2f64.powi(p);
        (r - target).abs() <= tol * target
    })
}

/// Checks one-sided first and second difference quotients of `g` at `0⁺`
/// for Richardson consistency: the ratios of successive differences must
/// match `2^p` for an integer error order `p` (2 in the generic case).
pub fn fd_smoothness_curve(g: &dyn Fn(&Q) -> Result<Vec<f64>>, cfg: &VerifyConfig) -> Result<SmoothnessReport> {
    let h = cfg.fd_step.clone();
    let steps = [h.clone(), &h / q(2), &h / q(4)];
    let g0 = g(&q(0))?;
    let mut at = BTreeMap::new();
    for st in &steps {
        at.insert(st.clone(), g(st)?);
        at.insert(st * q(2), g(&(st * q(2)))?);
    }
    let n = g0.len();
    if at.values().any(|v| v.len() != n) {
        return Err(Error::Invalid("map changes output dimension along the path".into()));
    }
    let mut ratios = Vec::new();
    let mut passed = true;
    for c in 0..n {
        for order in [1u8, 2] {
            let d: Vec<f64> = steps
                .iter()
                .map(|st| {
                    let hf = q_to_f64(st);
                    let g1 = at[st][c];
                    if order == 1 {
                        (g1 - g0[c]) / hf
                    } else {
                        (at[&(st * q(2))][c] - 2.0 * g1 + g0[c]) / (hf * hf)
                    }
                })
                .collect();
            let num = d[0] - d[1];
            let den = d[1] - d[2];
            let scale = d.iter().fold(1.0f64, |a, x| a.max(x.abs()));
            let nz = cfg.near_zero * scale;
            if !d.iter().all(|x| x.is_finite()) {
                passed = false;
                ratios.push((c, order, Some(f64::NAN)));
            } else if num.abs() <= nz && den.abs() <= nz {
                ratios.push((c, order, None));
            } else {
                let r = num / den;
                if !richardson_consistent(r, cfg.richardson_tol) {
                    passed = false;
                }
                ratios.push((c, order, Some(r)));
            }
        }
    }
    Ok(SmoothnessReport { passed, ratios })
}

/// As [`fd_smoothness_curve`] along `point + τ·dir`, `τ ≥ 0`.
pub fn fd_smoothness(map: &dyn Fn(&[Q]) -> Result<Vec<f64>>, point: &[Q], dir: &[Q], cfg: &VerifyConfig) -> Result<SmoothnessReport> {
    if point.len() != dir.len() {
        return Err(Error::DimensionMismatch { expected: point.len(), found: dir.len() });
    }
    let g = |tau: &Q| -> Result<Vec<f64>> {
        let x: Vec<Q> = point.iter().zip(dir).map(|(p, d)| p + d * tau).collect();
        map(&x)
    };
    fd_smoothness_curve(&g, cfg)
}

fn surds(x: &[Q]) -> Vec<Surd> {
    x.iter().cloned().map(Surd::from_q).collect()
}

fn floats(x: &[Surd]) -> Vec<f64> {
    x.iter().map(Surd::to_f64).collect()
}

/// The forced chart through the singular point of the misaligned pair:
/// bulk points `(τ, τ, 0)` in the chart of the (1,2,1)-weighting with control
/// column 1.  Its control coordinate behaves like `√τ`.
pub fn forced_singular_map(tau: &Q) -> Result<Vec<f64>> {
    let c = SingleChart::new(WeightVector::new(vec![1, 2, 1])?, 1, 1)?;
    if tau.is_zero() {
        return Ok(vec![0.0; 3]);
    }
    Ok(floats(&single_chart_fwd(&c, &Component::Bulk(surds(&[tau.clone(), tau.clone(), q(0)])))?))
}

/// Result of a coherence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub witnesses: Vec<String>,
}

/// Checks that all components lie over one base point and that nested
/// pairs are related by the induced blow-down wherever it is defined.
pub fn coherence(bs: &BuildingSet, p: &BlowupPoint) -> Result<CoherenceReport> {
    if p.components.len() != bs.len() {
        return Err(Error::DimensionMismatch { expected: bs.len(), found: p.components.len() });
    }
    let mut witnesses = Vec::new();
    let name = |g: usize| bs.elements()[g].name.clone();
    let base = p.base(bs)?;
    for g in 0..bs.len() {
        let w = bs.weights(g)?;
        if p.components[g].base(w) != base {
            witnesses.push(format!("{} lies over a different base point", name(g)));
        }
        if let Component::Bulk(x) = &p.components[g] {
            if bs.zeros(g)?.iter().all(|&i| x[i].is_zero()) {
                witnesses.push(format!("bulk component of {} lies on {}", name(g), name(g)));
            }
        }
    }
    for a in 0..bs.len() {
        for b in 0..bs.len() {
            if a == b || !bs.subset(a, b) {
                continue;
            }
            if let Ok(induced) = induced_blowdown_nested(bs.weights(a)?, bs.weights(b)?, &p.components[a]) {
                if induced != p.components[b] {
                    witnesses.push(format!("{} is not induced from {}", name(b), name(a)));
                }
            }
        }
    }
    Ok(CoherenceReport { coherent: witnesses.is_empty(), witnesses })
}

/// Nests found by enumerating flags of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestOracleReport {
    pub non_empty_flags: usize,
    pub nests: Vec<Vec<usize>>,
    /// Whether the backtracking enumeration found the same nests.
    pub agrees: bool,
}

pub fn nest_oracle(bs: &BuildingSet) -> Result<NestOracleReport> {
    let (_, flags) = bs.flags()?;
    let from_flags = bs.nests_from_flags()?;
    let enumerated: BTreeSet<Vec<usize>> = bs.enumerate_nests()?.into_iter().collect();
    Ok(NestOracleReport {
        non_empty_flags: flags.iter().filter(|f| !f.is_empty()).count(),
        agrees: from_flags == enumerated,
        nests: from_flags.into_iter().collect(),
    })
}

/// Control sets along a sequence and at its limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub sequence_control_set: Vec<usize>,
    pub limit_control_set: Vec<usize>,
    pub violations: Vec<String>,
}

/// Follows `y_k = limit + dir/k` for `k = 1..=steps` in one chart: the
/// sequence's control set must be constant and contained in the limit's,
/// and chart control sets must match the definitional ones.
pub fn stratum_closure(persp: &GoodPerspective, limit: &[Q], dir: &[Q], steps: usize) -> Result<StratumReport> {
    let bs = persp.building_set();
    let mut violations = Vec::new();
    let mut seq_cs: Option<Vec<usize>> = None;
    let check_point = |y: &[Surd], violations: &mut Vec<String>| -> Result<Vec<usize>> {
        let cs = persp.control_set(y)?;
        let p = persp.chart_inv(y)?;
        let def = p.control_set(bs)?;
        if def != cs {
            violations.push(format!("chart control set {cs:?} differs from definitional {def:?}"));
        }
        let coh = coherence(bs, &p)?;
        if !coh.coherent {
            violations.extend(coh.witnesses);
        }
        Ok(cs)
    };
    for k in 1..=steps {
        let y: Vec<Q> = limit.iter().zip(dir).map(|(l, d)| l + d / q(k as i64)).collect();
        let cs = check_point(&surds(&y), &mut violations)?;
        match &seq_cs {
            None => seq_cs = Some(cs),
            Some(prev) if *prev != cs => violations.push(format!("control set changes along the sequence at step {k}")),
            _ => {}
        }
    }
    let limit_cs = check_point(&surds(limit), &mut violations)?;
    let seq_cs = seq_cs.unwrap_or_default();
    if !seq_cs.iter().all(|g| limit_cs.contains(g)) {
        violations.push(format!("limit control set {limit_cs:?} does not contain {seq_cs:?}"));
    }
    Ok(StratumReport { sequence_control_set: seq_cs, limit_control_set: limit_cs, violations })
}

/// A random rational with numerator in `[-n, n]` and denominator in `[1, d]`.
pub fn random_q(rng: &mut impl Rng, n: i64, d: i64) -> Q {
    qf(rng.gen_range(-n..=n), rng.gen_range(1..=d))
}

/// A random positive rational.
pub fn random_pos_q(rng: &mut impl Rng, n: i64, d: i64) -> Q {
    qf(rng.gen_range(1..=n), rng.gen_range(1..=d))
}

/// A random separated building set of coordinate subspaces of ℝ^m with
/// column-constant weights drawn from `weights` (so the max rule and
/// uniform alignment hold by construction).
pub fn random_separated_building_set(rng: &mut impl Rng, m: usize, max_elements: usize, weights: &[u32]) -> Result<BuildingSet> {
    loop {
        let col_w: Vec<u32> = (0..m).map(|_| *weights.choose(rng).expect("non-empty weight pool")).collect();
        let count = rng.gen_range(1..=max_elements);
        let mut zero_sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for _ in 0..count * 3 {
            if zero_sets.len() == count {
                break;
            }
            let z: BTreeSet<usize> = (0..m).filter(|_| rng.gen_bool(0.45)).collect();
            if !z.is_empty() {
                zero_sets.insert(z);
            }
        }
        let elements = zero_sets
            .iter()
            .enumerate()
            .map(|(k, z)| {
                let w: Vec<u32> = (0..m).map(|i| if z.contains(&i) { col_w[i] } else { 0 }).collect();
                Element::weighted(&format!("E{k}"), &w)
            })
            .collect::<Result<Vec<_>>>()?;
        let bs = BuildingSet::new(m, elements)?;
        if bs.check_separated().0 {
            return Ok(bs);
        }
    }
}

/// A random good perspective on a random non-empty nest, if one exists.
pub fn random_good_perspective(rng: &mut impl Rng, bs: &BuildingSet) -> Result<Option<GoodPerspective>> {
    let nests: Vec<Vec<usize>> = bs.enumerate_nests()?.into_iter().filter(|n| !n.is_empty()).collect();
    let mut order: Vec<usize> = (0..nests.len()).collect();
    order.shuffle(rng);
    for idx in order {
        let nest = &nests[idx];
        let mut options: Vec<Vec<usize>> = Vec::new();
        for &g in nest {
            let z = bs.zeros(g)?;
            let mut cols: Vec<usize> = z
                .iter()
                .copied()
                .filter(|&i| !nest.iter().any(|&o| o != g && bs.subset(g, o) && bs.zeros(o).map(|zo| zo.contains(&i)).unwrap_or(false)))
                .collect();
            cols.shuffle(rng);
            options.push(cols);
        }
        // Distinct control columns by backtracking.
        fn pick(options: &[Vec<usize>], k: usize, used: &mut Vec<usize>) -> bool {
            if k == options.len() {
                return true;
            }
            for &c in &options[k] {
                if !used.contains(&c) {
                    used.push(c);
                    if pick(options, k + 1, used) {
                        return true;
                    }
                    used.pop();
                }
            }
            false
        }
        let mut h = Vec::new();
        if pick(&options, 0, &mut h) {
            let s = nest.iter().map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            return GoodPerspective::new(bs, nest.clone(), h, s).map(Some);
        }
    }
    Ok(None)
}

/// A random corner point: control coordinates non-negative (zero with
/// probability `p_zero`), others arbitrary small rationals.
pub fn random_corner_point(rng: &mut impl Rng, persp: &GoodPerspective, p_zero: f64) -> Vec<Q> {
    let controls: BTreeSet<usize> = persp.h().iter().copied().collect();
    (0..persp.dim())
        .map(|i| {
            if controls.contains(&i) {
                if rng.gen_bool(p_zero) {
                    q(0)
                } else {
                    random_pos_q(rng, 5, 4)
                }
            } else {
                random_q(rng, 5, 4)
            }
        })
        .collect()
}

/// One sampled single-weighting transition across the divisor.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionSample {
    pub weights: Vec<u32>,
    pub from: (usize, i8),
    pub to: (usize, i8),
    pub point: Vec<Q>,
    pub report: SmoothnessReport,
}

/// Samples single-weighting transitions across `y_h = 0` with weights from
/// `pool` and checks their smoothness.
pub fn sample_single_transitions(cfg: &VerifyConfig, rng: &mut impl Rng, count: usize, pool: &[u32]) -> Result<Vec<TransitionSample>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(2..=4);
        let w: Vec<u32> = (0..m).map(|_| *pool.choose(rng).expect("pool")).collect();
        let wv = WeightVector::new(w.clone())?;
        let h = rng.gen_range(0..m);
        let mut h2 = rng.gen_range(0..m - 1);
        if h2 >= h {
            h2 += 1;
        }
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let s2 = if rng.gen_bool(0.5) { 1i8 } else { -1 };
        let mut y: Vec<Q> = (0..m).map(|_| random_q(rng, 4, 3)).collect();
        y[h] = q(0);
        // Target control data bounded away from zero with the target sign.
        y[h2] = random_pos_q(rng, 4, 2) * q(s2 as i64);
        let dir: Vec<Q> = (0..m).map(|i| if i == h { random_pos_q(rng, 3, 2) } else { random_q(rng, 3, 2) }).collect();
        let map = |x: &[Q]| -> Result<Vec<f64>> { Ok(floats(&single_transition(&wv, (h, s), (h2, s2), &surds(x))?)) };
        let report = fd_smoothness(&map, &y, &dir, cfg)?;
        out.push(TransitionSample { weights: w, from: (h, s), to: (h2, s2), point: y, report });
    }
    Ok(out)
}

/// Samples building-set transitions across exceptional divisors between
/// perspectives on random separated, column-aligned data.
pub fn sample_building_transitions(cfg: &VerifyConfig, rng: &mut impl Rng, count: usize, pool: &[u32]) -> Result<Vec<SmoothnessReport>> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let bs = random_separated_building_set(rng, 3, 3, pool)?;
        let (Some(p1), Some(p2)) = (random_good_perspective(rng, &bs)?, random_good_perspective(rng, &bs)?) else { continue };
        let y0 = random_corner_point(rng, &p1, 0.6);
        // Direction: push one vanishing control off zero, move the rest.
        let zero_controls: Vec<usize> = p1.h().iter().copied().filter(|&c| y0[c].is_zero()).collect();
        let Some(&c) = zero_controls.choose(rng) else { continue };
        let dir: Vec<Q> = (0..bs.dim())
            .map(|i| if i == c { random_pos_q(rng, 3, 2) } else if p1.h().contains(&i) { q(0) } else { random_q(rng, 2, 2) })
            .collect();
        let map = |x: &[Q]| -> Result<Vec<f64>> { Ok(floats(&crate::blowup::building_transition(&p1, &surds(x), &p2)?)) };
        // Only keep samples whose whole path lies in the overlap.
        let h = &cfg.fd_step;
        let path_ok = [q(0), h / q(4), h / q(2), h.clone(), h * q(2)]
            .iter()
            .all(|tau| map(&y0.iter().zip(&dir).map(|(a, d)| a + d * tau).collect::<Vec<_>>()).is_ok());
        if !path_ok {
            continue;
        }
        out.push(fd_smoothness(&map, &y0, &dir, cfg)?);
    }
    Ok(out)
}

/// Samples stratum-closure sequences on random perspectives.
pub fn sample_strata(rng: &mut impl Rng, count: usize) -> Result<Vec<StratumReport>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let bs = random_separated_building_set(rng, 4, 4, &[1, 2, 3])?;
        let Some(p) = random_good_perspective(rng, &bs)? else { continue };
        let limit = random_corner_point(rng, &p, 0.6);
        let dir: Vec<Q> = (0..bs.dim())
            .map(|i| if p.h().contains(&i) { if rng.gen_bool(0.5) { random_pos_q(rng, 3, 2) } else { q(0) } } else { random_q(rng, 3, 2) })
            .collect();
        match stratum_closure(&p, &limit, &dir, 6) {
            Ok(r) => out.push(r),
            // The sequence must stay inside the chart's domain.
            Err(Error::OutsideDomain(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Runs a named suite (`smoothness`, `nests`, `strata` or `all`).
pub fn run_suite(which: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteLine>> {
    let mut lines = Vec::new();
    let mut rng = cfg.rng();
    let all = which == "all";
    if !matches!(which, "all" | "smoothness" | "nests" | "strata") {
        return Err(Error::Parse(format!("unknown suite {which:?}")));
    }
    if all || which == "smoothness" {
        let single = sample_single_transitions(cfg, &mut rng, 60, &[1, 2, 3])?;
        let bad = single.iter().filter(|s| !s.report.passed).count();
        lines.push(SuiteLine { name: "single transitions".into(), passed: bad == 0, detail: format!("{} samples, {bad} failing", single.len()) });
        let building = sample_building_transitions(cfg, &mut rng, 20, &[1, 2, 3])?;
        let bad = building.iter().filter(|s| !s.passed).count();
        lines.push(SuiteLine { name: "building transitions".into(), passed: bad == 0, detail: format!("{} samples, {bad} failing", building.len()) });
        let control = fd_smoothness_curve(&forced_singular_map, cfg)?;
        lines.push(SuiteLine { name: "forced singular chart fails".into(), passed: !control.passed, detail: format!("{:?}", control.ratios) });
    }
    if all || which == "nests" {
        let r = nest_oracle(&crate::catalog::two_lines()?)?;
        lines.push(SuiteLine {
            name: "two lines".into(),
            passed: r.agrees && r.non_empty_flags == 5 && r.nests.len() == 4,
            detail: format!("{} non-empty flags, {} nests", r.non_empty_flags, r.nests.len()),
        });
        for s in 3..=4 {
            let bs = crate::fm::fm_building_set(s, 1)?;
            let r = nest_oracle(&bs)?;
            let brute = crate::fm::brute_force_index_nests(s).len();
            lines.push(SuiteLine {
                name: format!("diagonals, {s} points"),
                passed: r.agrees && r.nests.len() == brute,
                detail: format!("{} nests, {brute} index nests", r.nests.len()),
            });
        }
    }
    if all || which == "strata" {
        let reports = sample_strata(&mut rng, 50)?;
        let bad: usize = reports.iter().map(|r| r.violations.len()).sum();
        lines.push(SuiteLine { name: "stratum closure".into(), passed: bad == 0, detail: format!("{} sequences, {bad} violations", reports.len()) });
    }
    Ok(lines)
}
