//! Blow-ups for bundles with a horizontally trivial filtration, and the
//! blow-up of pairs of second-order jets of functions ℝ^m → ℝ.
//!
//! A pair of 2-jets `(x, y, y′, y″)` is passed to offsets relative to the
//! first jet's Taylor polynomial and then blown up with weights 3, 2, 1 on
//! the value, covector and form offsets, with coefficients ⅓ and ½ in the
//! substitution.  Limits of prolonged sections satisfy `δy′ = δy″(δx, ·)` and
//! `δy = c·δy′(δx)` with `c = ½` ([`HOLONOMIC_C`]); the relation with `c = 1`
//! is offered as a separate predicate mode.

use crate::blowup::weighted_unit_scale;
use crate::error::{Error, Result};
use crate::fm::{offset_inv, Covering};
use crate::jets::{Polynomial, Series};
use crate::rational::{qf, Q};
use crate::surd::Surd;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// The constant in `δy = c·δy′(δx)` satisfied by limits of prolonged
/// sections under the ⅓/½ substitution, as `(numerator, denominator)`.
pub const HOLONOMIC_C: (i64, i64) = (1, 2);

/// A 2-jet at a point: position, value, covector and symmetric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet2 {
    pub x: Vec<Surd>,
    pub y: Surd,
    pub p: Vec<Surd>,
    pub h: Vec<Vec<Surd>>,
}

impl Jet2 {
    /// Validates dimensions and symmetry of the form.
    pub fn new(x: Vec<Surd>, y: Surd, p: Vec<Surd>, h: Vec<Vec<Surd>>) -> Result<Jet2> {
        let m = x.len();
        if p.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: p.len() });
        }
        if h.len() != m || h.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: h.len() });
        }
        for i in 0..m {
            for j in 0..i {
                if h[i][j] != h[j][i] {
                    return Err(Error::Invalid(format!("second-order part is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Jet2 { x, y, p, h })
    }

    pub fn zero(m: usize) -> Jet2 {
        Jet2 { x: vec![Surd::zero(); m], y: Surd::zero(), p: vec![Surd::zero(); m], h: vec![vec![Surd::zero(); m]; m] }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// The 2-jet of `f` at a rational point.
    pub fn of_polynomial(f: &Polynomial, x: &[Q]) -> Result<Jet2> {
        let m = f.nvars();
        if x.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: x.len() });
        }
        let sq = |v: Q| Surd::from_q(v);
        let p = (0..m).map(|i| sq(f.derivative(i).eval(x))).collect();
        let h = (0..m).map(|i| (0..m).map(|j| sq(f.derivative(i).derivative(j).eval(x))).collect()).collect();
        Jet2::new(x.iter().cloned().map(sq).collect(), sq(f.eval(x)), p, h)
    }
}

/// A pair of 2-jets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPair2 {
    pub first: Jet2,
    pub second: Jet2,
}

/// Offsets of the second jet relative to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetOffsets {
    pub dx: Vec<Surd>,
    pub dy: Surd,
    pub dp: Vec<Surd>,
    pub dh: Vec<Vec<Surd>>,
}

/// A point of the blown-up jet-pair space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetBlown2 {
    pub first: Jet2,
    pub lambda: Surd,
    pub dx: Vec<Surd>,
    pub dy: Surd,
    pub dp: Vec<Surd>,
    pub dh: Vec<Vec<Surd>>,
}

fn dot(a: &[Surd], b: &[Surd]) -> Surd {
    a.iter().zip(b).fold(Surd::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn form_apply(h: &[Vec<Surd>], v: &[Surd]) -> Vec<Surd> {
    h.iter().map(|row| dot(row, v)).collect()
}

fn sub_vec(a: &[Surd], b: &[Surd]) -> Vec<Surd> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_vec(a: &[Surd], b: &[Surd]) -> Vec<Surd> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale_vec(c: &Surd, v: &[Surd]) -> Vec<Surd> {
    v.iter().map(|x| c * x).collect()
}

fn scale_form(c: &Surd, h: &[Vec<Surd>]) -> Vec<Vec<Surd>> {
    h.iter().map(|r| scale_vec(c, r)).collect()
}

fn check_pair(p: &JetPair2) -> Result<usize> {
    let m = p.first.dim();
    if p.second.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: p.second.dim() });
    }
    Ok(m)
}

/// Offsets relative to the Taylor polynomial of the first jet.
pub fn jet_offsets(p: &JetPair2) -> Result<JetOffsets> {
    check_pair(p)?;
    let (a, b) = (&p.first, &p.second);
    let dx = sub_vec(&b.x, &a.x);
    let hdx = form_apply(&a.h, &dx);
    let half = Surd::from_q(qf(1, 2));
    let dy = &(&(&b.y - &a.y) - &dot(&a.p, &dx)) - &(&half * &dot(&dx, &hdx));
    let dp = sub_vec(&sub_vec(&b.p, &a.p), &hdx);
    let dh = b.h.iter().zip(&a.h).map(|(r2, r1)| sub_vec(r2, r1)).collect();
    Ok(JetOffsets { dx, dy, dp, dh })
}

/// Recomposes the second jet from the first and the offsets.
pub fn jet_offsets_inv(first: &Jet2, o: &JetOffsets) -> Result<JetPair2> {
    let m = first.dim();
    if o.dx.len() != m || o.dp.len() != m || o.dh.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: o.dx.len() });
    }
    let hdx = form_apply(&first.h, &o.dx);
    let half = Surd::from_q(qf(1, 2));
    let y = &(&(&first.y + &dot(&first.p, &o.dx)) + &(&half * &dot(&o.dx, &hdx))) + &o.dy;
    let p = add_vec(&add_vec(&first.p, &hdx), &o.dp);
    let h = first.h.iter().zip(&o.dh).map(|(r1, d)| add_vec(r1, d)).collect();
    let second = Jet2::new(add_vec(&first.x, &o.dx), y, p, h)?;
    Ok(JetPair2 { first: first.clone(), second })
}

/// The blow-down: substitute `(λδx, ⅓λ³δy, ½λ²δy′, λδy″)` for the offsets.
pub fn jet_blow_down(b: &JetBlown2) -> Result<JetPair2> {
    let l = &b.lambda;
    let l2 = l * l;
    let l3 = &l2 * l;
    let o = JetOffsets {
        dx: scale_vec(l, &b.dx),
        dy: &(&l3 * &Surd::from_q(qf(1, 3))) * &b.dy,
        dp: scale_vec(&(&l2 * &Surd::from_q(qf(1, 2))), &b.dp),
        dh: scale_form(l, &b.dh),
    };
    jet_offsets_inv(&b.first, &o)
}

/// Blown-up coordinates of a pair separated horizontally.
pub fn jet_chart(p: &JetPair2) -> Result<JetBlown2> {
    let o = jet_offsets(p)?;
    let norm2 = dot(&o.dx, &o.dx);
    if norm2.is_zero() {
        return Err(Error::OutsideDomain("the two base points coincide (vertical collision)".into()));
    }
    let lambda = norm2.root(2)?;
    let inv = lambda.inv()?;
    let inv2 = &inv * &inv;
    let inv3 = &inv2 * &inv;
    Ok(JetBlown2 {
        first: p.first.clone(),
        dx: scale_vec(&inv, &o.dx),
        dy: &(&Surd::from_i64(3) * &inv3) * &o.dy,
        dp: scale_vec(&(&Surd::from_i64(2) * &inv2), &o.dp),
        dh: scale_form(&inv, &o.dh),
        lambda,
    })
}

/// Which constant the value relation uses at `λ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HolonomicMode {
    /// `δy = δy′(δx)`.
    Literal,
    /// `δy = c·δy′(δx)` with `c =` [`HOLONOMIC_C`].
    Derived,
}

/// Whether a blown-up jet pair satisfies the holonomic relations (which
/// only constrain points with `λ = 0`).
pub fn holonomic_predicate(b: &JetBlown2, mode: HolonomicMode) -> Result<bool> {
    if b.lambda.signum()? > 0 {
        return Ok(true);
    }
    let contracted = form_apply(&b.dh, &b.dx);
    if contracted != b.dp {
        return Ok(false);
    }
    let c = match mode {
        HolonomicMode::Literal => Surd::one(),
        HolonomicMode::Derived => Surd::from_q(qf(HOLONOMIC_C.0, HOLONOMIC_C.1)),
    };
    Ok(b.dy == &c * &dot(&b.dp, &b.dx))
}

fn series_dot(a: &[Series], b: &[Series]) -> Series {
    a.iter().zip(b).fold(Series::new(vec![]), |acc, (x, y)| acc.add(&x.mul(y, None)))
}

/// The 2-jet of `f` along a polynomial curve, as exact series.
fn jet_along(f: &Polynomial, c: &[Series]) -> Result<(Series, Vec<Series>, Vec<Vec<Series>>)> {
    let m = f.nvars();
    let y = f.compose(c, None)?;
    let d: Vec<Polynomial> = (0..m).map(|i| f.derivative(i)).collect();
    let p = d.iter().map(|di| di.compose(c, None)).collect::<Result<Vec<_>>>()?;
    let h = d
        .iter()
        .map(|di| (0..m).map(|j| di.derivative(j).compose(c, None)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((y, p, h))
}

/// Coefficient of `t^k` after checking lower coefficients vanish.
fn leading_at(s: &Series, k: usize, what: &str) -> Result<Q> {
    if let Some(v) = s.valuation() {
        if v < k {
            return Err(Error::OutsideDomain(format!("{what} diverges along the curves")));
        }
    }
    Ok(s.coeff(k))
}

/// Exact limit `t → 0⁺` of the blown-up coordinates of `(j²f(x₁(t)), j²f(x₂(t)))`.
pub fn jet_limit(f: &Polynomial, x1: &[Series], x2: &[Series]) -> Result<JetBlown2> {
    let m = f.nvars();
    if x1.len() != m || x2.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: x1.len().min(x2.len()) });
    }
    let dx: Vec<Series> = x2.iter().zip(x1).map(|(a, b)| a.sub(b)).collect();
    let k = dx
        .iter()
        .filter_map(Series::valuation)
        .min()
        .ok_or_else(|| Error::OutsideDomain("the two curves coincide identically".into()))?;
    if k == 0 {
        return Err(Error::OutsideDomain("the curves do not share a limit point".into()));
    }
    let (y1, p1, h1) = jet_along(f, x1)?;
    let (y2, p2, h2) = jet_along(f, x2)?;
    let h1dx: Vec<Series> = h1.iter().map(|row| series_dot(row, &dx)).collect();
    let dy = y2.sub(&y1).sub(&series_dot(&p1, &dx)).sub(&series_dot(&dx, &h1dx).scale(&qf(1, 2)));
    let dp: Vec<Series> = (0..m).map(|i| p2[i].sub(&p1[i]).sub(&h1dx[i])).collect();
    let a: Vec<Surd> = dx.iter().map(|s| Surd::from_q(s.coeff(k))).collect();
    let norm = dot(&a, &a).root(2)?;
    let inv = norm.inv()?;
    let inv2 = &inv * &inv;
    let inv3 = &inv2 * &inv;
    let q_s = |v: Q| Surd::from_q(v);
    let dy_lim = &(&Surd::from_i64(3) * &inv3) * &q_s(leading_at(&dy, 3 * k, "value offset")?);
    let dp_lim = dp
        .iter()
        .map(|s| Ok(&(&Surd::from_i64(2) * &inv2) * &q_s(leading_at(s, 2 * k, "covector offset")?)))
        .collect::<Result<Vec<_>>>()?;
    let dh_lim = (0..m)
        .map(|i| (0..m).map(|j| Ok(&inv * &q_s(leading_at(&h2[i][j].sub(&h1[i][j]), k, "form offset")?))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let x0: Vec<Q> = x1.iter().map(|s| s.coeff(0)).collect();
    Ok(JetBlown2 {
        first: Jet2::of_polynomial(f, &x0)?,
        lambda: Surd::zero(),
        dx: scale_vec(&inv, &a),
        dy: dy_lim,
        dp: dp_lim,
        dh: dh_lim,
    })
}

/// Weights of a bundle: horizontal directions weigh 1, vertical directions
/// carry the given weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleModel {
    pub m: usize,
    pub vweights: Vec<u32>,
}

impl BundleModel {
    pub fn new(m: usize, vweights: Vec<u32>) -> Result<BundleModel> {
        if m == 0 {
            return Err(Error::Invalid("horizontal dimension must be positive".into()));
        }
        if vweights.contains(&0) {
            return Err(Error::Invalid("vertical weights must be positive".into()));
        }
        Ok(BundleModel { m, vweights })
    }

    pub fn d(&self) -> usize {
        self.vweights.len()
    }

    /// The weights for jet pairs of functions on ℝ^m: 3 on the value, 2 on
    /// the covector, 1 on the upper triangle of the form.
    pub fn jet2(m: usize) -> BundleModel {
        let mut v = vec![3];
        v.extend(std::iter::repeat(2).take(m));
        v.extend(std::iter::repeat(1).take(m * (m + 1) / 2));
        BundleModel { m, vweights: v }
    }
}

/// A point of the bundle local model: horizontal data as in the base local
/// model (trivial weights), vertical offsets rescaled per member.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleModelPoint {
    pub model: BundleModel,
    pub covering: Covering,
    /// Full coordinates (horizontal then vertical) of every root label.
    pub roots: BTreeMap<usize, Vec<f64>>,
    pub horizontal_screens: Vec<Vec<f64>>,
    pub vertical_screens: Vec<Vec<f64>>,
    pub t: Vec<f64>,
}

/// Local-model coordinates from offset data: `offsets[l - 1]` holds the
/// absolute coordinates for roots and the (horizontal then vertical) offset to
/// the parent otherwise.  Only horizontal offsets enter the normalization.
pub fn bundle_chart_offsets(model: &BundleModel, covering: &Covering, offsets: &[Vec<f64>]) -> Result<BundleModelPoint> {
    let m = model.m;
    let width = m + model.d();
    if offsets.len() != covering.nest.s() {
        return Err(Error::DimensionMismatch { expected: covering.nest.s(), found: offsets.len() });
    }
    if let Some(bad) = offsets.iter().find(|o| o.len() != width) {
        return Err(Error::DimensionMismatch { expected: width, found: bad.len() });
    }
    let nest = &covering.nest;
    let mut scale = Vec::with_capacity(nest.len());
    let mut hs = Vec::with_capacity(nest.len());
    let mut vs = Vec::with_capacity(nest.len());
    for (k, ct) in covering.controls.iter().enumerate() {
        let block: Vec<f64> = ct.iter().flat_map(|&l| offsets[l - 1][..m].iter().copied()).collect();
        let ones = vec![1u32; block.len()];
        let mu = weighted_unit_scale(&block, &ones).map_err(|_| {
            Error::OutsideDomain(format!(
                "collision of {} is purely vertical",
                crate::fm::label_name(&nest.members()[k])
            ))
        })?;
        hs.push(block.iter().map(|x| x / mu).collect());
        vs.push(
            ct.iter()
                .flat_map(|&l| offsets[l - 1][m..].iter().zip(&model.vweights).map(move |(x, &w)| x / mu.powi(w as i32)))
                .collect(),
        );
        scale.push(mu);
    }
    let t = (0..nest.len()).map(|k| scale[k] / nest.parent(k).map_or(1.0, |p| scale[p])).collect();
    let roots = covering.roots().into_iter().map(|l| (l, offsets[l - 1].clone())).collect();
    Ok(BundleModelPoint {
        model: model.clone(),
        covering: covering.clone(),
        roots,
        horizontal_screens: hs,
        vertical_screens: vs,
        t,
    })
}

/// Local-model coordinates of a configuration, using plain differences as
/// offsets.
pub fn bundle_chart(model: &BundleModel, covering: &Covering, config: &[Vec<f64>]) -> Result<BundleModelPoint> {
    let off = crate::fm::offset_fwd(&covering.forest, config)?;
    bundle_chart_offsets(model, covering, &off)
}

/// Inverse of [`bundle_chart_offsets`]: offsets per label.
pub fn bundle_blow_down_offsets(p: &BundleModelPoint) -> Result<Vec<Vec<f64>>> {
    let cov = &p.covering;
    let m = p.model.m;
    let d = p.model.d();
    let s = cov.nest.s();
    let mut off = vec![vec![0.0; m + d]; s];
    for l in 1..=s {
        if let Some(r) = p.roots.get(&l) {
            off[l - 1] = r.clone();
            continue;
        }
        let par = cov.forest.parent(l).ok_or_else(|| Error::Invalid(format!("label {l} has no root position")))?;
        let k = cov.control_owner(l).ok_or_else(|| Error::Invalid(format!("label {l} has no screen")))?;
        let pos = cov.controls[k].iter().position(|&x| x == l).expect("owner");
        let scale: f64 = (0..cov.nest.len())
            .filter(|&j| cov.nest.members()[j].contains(&l) && cov.nest.members()[j].contains(&par))
            .map(|j| p.t[j])
            .product();
        for i in 0..m {
            off[l - 1][i] = p.horizontal_screens[k][pos * m + i] * scale;
        }
        for (j, &w) in p.model.vweights.iter().enumerate() {
            off[l - 1][m + j] = p.vertical_screens[k][pos * d + j] * scale.powi(w as i32);
        }
    }
    Ok(off)
}

/// Inverse of [`bundle_chart`].
pub fn bundle_blow_down(p: &BundleModelPoint) -> Result<Vec<Vec<f64>>> {
    offset_inv(&p.covering.forest, &bundle_blow_down_offsets(p)?)
}

/// Flattens jet offsets into vertical data `(Δy, Δy′, upper triangle of Δy″)`.
pub fn jet_vertical_offsets(o: &JetOffsets) -> Vec<Surd> {
    let m = o.dx.len();
    let mut v = vec![o.dy.clone()];
    v.extend(o.dp.iter().cloned());
    for i in 0..m {
        for j in i..m {
            v.push(o.dh[i][j].clone());
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn s(n: i64) -> Surd {
        Surd::from_i64(n)
    }

    #[test]
    fn single_term_blow_down() {
        let b = JetBlown2 {
            first: Jet2::zero(1),
            lambda: s(1),
            dx: vec![s(1)],
            dy: s(3),
            dp: vec![s(0)],
            dh: vec![vec![s(0)]],
        };
        assert_eq!(jet_blow_down(&b).unwrap().second.y, s(1));
    }

    #[test]
    fn vertical_collision_is_rejected() {
        let mut second = Jet2::zero(1);
        second.y = s(1);
        assert!(jet_chart(&JetPair2 { first: Jet2::zero(1), second }).is_err());
    }

    #[test]
    fn cubic_limit_relations() {
        let f = Polynomial::from_terms(1, [(vec![3], q(1))]).unwrap();
        let x1 = vec![Series::new(vec![])];
        let x2 = vec![Series::new(vec![q(0), q(1)])];
        let b = jet_limit(&f, &x1, &x2).unwrap();
        assert_eq!((b.dy.clone(), b.dp[0].clone(), b.dh[0][0].clone()), (s(3), s(6), s(6)));
        assert!(holonomic_predicate(&b, HolonomicMode::Derived).unwrap());
        assert!(!holonomic_predicate(&b, HolonomicMode::Literal).unwrap());
    }
}
