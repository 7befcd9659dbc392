//! Charts of weighted blow-ups: a single standard weighting and a weighted
//! building set of coordinate subspaces.
//!
//! Points of the blow-up of a building set are tuples of components, one per
//! element: either a bulk point of ℝ^m or a class of weighted normal vectors
//! on the exceptional divisor.  Divisor classes are stored in an exact
//! canonical form (the first non-zero normal entry rescaled to ±1), so equality
//! of classes is structural.  All chart arithmetic is exact over [`Surd`].

use crate::arrangements::BuildingSet;
use crate::error::{Error, Result};
use crate::jets::{normal_induced, weighted_action, NormalVector, WeightVector};
use crate::surd::{Exp, Surd};
use crate::weightings::check_uniform_alignment;
use num_traits::Zero;
use std::collections::BTreeSet;

/// One component of a blow-up point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// A point of ℝ^m off the blown-up subspace (or its copy on the bulk).
    Bulk(Vec<Surd>),
    /// A weighted normal class, in canonical form; entries with weight zero
    /// are coordinates of the base point.
    Divisor(Vec<Surd>),
}

impl Component {
    /// The point of ℝ^m this component lies over.
    pub fn base(&self, w: &WeightVector) -> Vec<Surd> {
        match self {
            Component::Bulk(x) => x.clone(),
            Component::Divisor(n) => {
                n.iter().zip(w.as_slice()).map(|(x, &wi)| if wi == 0 { x.clone() } else { Surd::zero() }).collect()
            }
        }
    }

    pub fn is_divisor(&self) -> bool {
        matches!(self, Component::Divisor(_))
    }

    /// A divisor class from any representative.
    pub fn divisor(w: &WeightVector, n: Vec<Surd>) -> Result<Component> {
        Ok(Component::Divisor(canonical_divisor(w, n)?))
    }
}

/// The canonical representative of the class of `n` under positive weighted
/// rescaling: the first non-zero normal entry becomes ±1.
pub fn canonical_divisor(w: &WeightVector, n: Vec<Surd>) -> Result<Vec<Surd>> {
    if n.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), found: n.len() });
    }
    let Some(i) = (0..n.len()).find(|&i| w.get(i) > 0 && !n[i].is_zero()) else {
        return Err(Error::OutsideDomain("normal vector vanishes in all weighted directions".into()));
    };
    let lambda = n[i].abs()?.pow(Exp::new(-1, w.get(i) as i64))?;
    weighted_action(&lambda, &n, w)
}

/// A point of the blow-up of a building set: one component per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPoint {
    pub components: Vec<Component>,
}

impl BlowupPoint {
    /// Base point read off the first component.
    pub fn base(&self, bs: &BuildingSet) -> Result<Vec<Surd>> {
        let c = self.components.first().ok_or_else(|| Error::Invalid("empty blow-up point".into()))?;
        Ok(c.base(bs.weights(0)?))
    }

    /// The control set from the definition: elements whose component is a
    /// divisor class not induced from the divisor of a smaller element.
    pub fn control_set(&self, bs: &BuildingSet) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for g in 0..bs.len() {
            if !self.components[g].is_divisor() {
                continue;
            }
            let induced = (0..bs.len()).any(|h| {
                h != g
                    && bs.subset(h, g)
                    && self.components[h].is_divisor()
                    && match (bs.weights(h), bs.weights(g)) {
                        (Ok(wh), Ok(wg)) => induced_blowdown_nested(wh, wg, &self.components[h]).is_ok(),
                        _ => false,
                    }
            });
            if !induced {
                out.push(g);
            }
        }
        Ok(out)
    }
}

/// A chart of a single weighted blow-up: control column `h`, sign `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleChart {
    pub w: WeightVector,
    pub h: usize,
    pub s: i8,
}

impl SingleChart {
    pub fn new(w: WeightVector, h: usize, s: i8) -> Result<SingleChart> {
        if h >= w.len() || w.get(h) == 0 {
            return Err(Error::Invalid(format!("control column {h} must carry a positive weight")));
        }
        if s != 1 && s != -1 {
            return Err(Error::Invalid("sign must be +1 or -1".into()));
        }
        Ok(SingleChart { w, h, s })
    }

    fn sign(&self) -> Surd {
        Surd::from_i64(self.s as i64)
    }
}

/// Chart coordinates of a bulk point or divisor class.
pub fn single_chart_fwd(c: &SingleChart, p: &Component) -> Result<Vec<Surd>> {
    let (v, bulk) = match p {
        Component::Bulk(x) => (x, true),
        Component::Divisor(n) => (n, false),
    };
    if v.len() != c.w.len() {
        return Err(Error::DimensionMismatch { expected: c.w.len(), found: v.len() });
    }
    let r = &c.sign() * &v[c.h];
    if r.signum()? <= 0 {
        return Err(Error::OutsideDomain(format!("control entry {} has the wrong sign for this chart", c.h)));
    }
    let wh = c.w.get(c.h) as i64;
    let mut y = Vec::with_capacity(v.len());
    for (i, x) in v.iter().enumerate() {
        let wi = c.w.get(i) as i64;
        y.push(if i == c.h {
            if bulk {
                r.pow(Exp::new(1, wh))?
            } else {
                Surd::zero()
            }
        } else if wi == 0 {
            x.clone()
        } else {
            x * &r.pow(Exp::new(-wi, wh))?
        });
    }
    Ok(y)
}

/// Inverse chart: a bulk point for `y_h > 0`, a divisor class for `y_h = 0`.
pub fn single_chart_inv(c: &SingleChart, y: &[Surd]) -> Result<Component> {
    if y.len() != c.w.len() {
        return Err(Error::DimensionMismatch { expected: c.w.len(), found: y.len() });
    }
    let t = &y[c.h];
    let mut v = y.to_vec();
    v[c.h] = c.sign();
    match t.signum()? {
        -1 => Err(Error::OutsideDomain("control coordinate is negative".into())),
        0 => Component::divisor(&c.w, v),
        _ => Ok(Component::Bulk(weighted_action(t, &v, &c.w)?)),
    }
}

/// The blow-down map in a single chart.
pub fn single_blow_down(c: &SingleChart, y: &[Surd]) -> Result<Vec<Surd>> {
    if y.len() != c.w.len() {
        return Err(Error::DimensionMismatch { expected: c.w.len(), found: y.len() });
    }
    if y[c.h].signum()? < 0 {
        return Err(Error::OutsideDomain("control coordinate is negative".into()));
    }
    let mut v = y.to_vec();
    v[c.h] = c.sign();
    weighted_action(&y[c.h], &v, &c.w)
}

/// Closed-form transition between two charts of the same single blow-up.
pub fn single_transition(w: &WeightVector, from: (usize, i8), to: (usize, i8), y: &[Surd]) -> Result<Vec<Surd>> {
    let a = SingleChart::new(w.clone(), from.0, from.1)?;
    let b = SingleChart::new(w.clone(), to.0, to.1)?;
    if y.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), found: y.len() });
    }
    if y[a.h].signum()? < 0 {
        return Err(Error::OutsideDomain("control coordinate is negative".into()));
    }
    if a.h == b.h {
        return if a.s == b.s { Ok(y.to_vec()) } else { Err(Error::OutsideDomain("opposite charts do not overlap".into())) };
    }
    let r = &b.sign() * &y[b.h];
    if r.signum()? <= 0 {
        return Err(Error::OutsideDomain("point is outside the target chart".into()));
    }
    let wt = w.get(b.h) as i64;
    let mut out = Vec::with_capacity(y.len());
    for (i, yi) in y.iter().enumerate() {
        let wi = w.get(i) as i64;
        out.push(if i == b.h {
            &y[a.h] * &r.pow(Exp::new(1, wt))?
        } else if i == a.h {
            &a.sign() * &r.pow(Exp::new(-wi, wt))?
        } else if wi == 0 {
            yi.clone()
        } else {
            yi * &r.pow(Exp::new(-wi, wt))?
        });
    }
    Ok(out)
}

/// The map induced by the identity from the blow-up along `w_small` to the
/// blow-up along a coarser `w_big`, where defined.
pub fn induced_blowdown_nested(w_small: &WeightVector, w_big: &WeightVector, p: &Component) -> Result<Component> {
    if w_small.len() != w_big.len() {
        return Err(Error::DimensionMismatch { expected: w_small.len(), found: w_big.len() });
    }
    match p {
        Component::Bulk(x) => {
            if w_big.support().iter().all(|&i| x[i].is_zero()) {
                Err(Error::OutsideDomain("bulk point lies on the coarser support".into()))
            } else {
                Ok(Component::Bulk(x.clone()))
            }
        }
        Component::Divisor(n) => {
            let v = normal_induced(&NormalVector::new(w_small.clone(), n.clone())?, w_big)?;
            if w_big.support().iter().all(|&i| v.coords[i].is_zero()) {
                return Err(Error::OutsideDomain("induced normal vanishes".into()));
            }
            Component::divisor(w_big, v.coords)
        }
    }
}

/// A good perspective: a nest of a separated, uniformly aligned weighted
/// building set with a control column and sign per nest element.
#[derive(Clone, Debug)]
pub struct GoodPerspective {
    bs: BuildingSet,
    nest: Vec<usize>,
    h: Vec<usize>,
    s: Vec<i8>,
    w: Vec<WeightVector>,
}

/// A signed monomial `±∏ y_j^{e_j}` in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub sign: i8,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn eval(&self, y: &[Surd]) -> Surd {
        self.exps
            .iter()
            .zip(y)
            .fold(Surd::from_i64(self.sign as i64), |acc, (&e, v)| &acc * &crate::jets::pow_u(v, e))
    }

    /// Text form over the given variable names, e.g. `t_A^3*y_2`.
    pub fn render(&self, names: &[String]) -> String {
        let factors: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Component coordinates at a corner point: per nest element the chart
/// coordinates of its component, plus the blow-down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCoords {
    pub per_nest: Vec<Vec<Surd>>,
    pub base: Vec<Surd>,
}

impl GoodPerspective {
    /// Validates the perspective; non-separated or non-uniformly-aligned
    /// data is refused with a diagnostic.
    pub fn new(bs: &BuildingSet, nest: Vec<usize>, h: Vec<usize>, s: Vec<i8>) -> Result<GoodPerspective> {
        if nest.len() != h.len() || nest.len() != s.len() {
            return Err(Error::Invalid("nest, h and s must have equal lengths".into()));
        }
        let mut triples: Vec<(usize, usize, i8)> = (0..nest.len()).map(|k| (nest[k], h[k], s[k])).collect();
        triples.sort_unstable();
        let nest: Vec<usize> = triples.iter().map(|t| t.0).collect();
        let h: Vec<usize> = triples.iter().map(|t| t.1).collect();
        let s: Vec<i8> = triples.iter().map(|t| t.2).collect();
        if nest.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Invalid("nest lists an element twice".into()));
        }
        if let Some(&bad) = nest.iter().find(|&&g| g >= bs.len()) {
            return Err(Error::Invalid(format!("unknown element index {bad}")));
        }
        for g in 0..bs.len() {
            bs.weights(g)?;
            bs.zeros(g)?;
        }
        if let (false, Some(wit)) = bs.check_separated() {
            return Err(Error::Invalid(format!(
                "building set is not separated (factors of the intersection of codimension {} are not transverse)",
                wit.codim()
            )));
        }
        if !bs.is_nest(&nest)? {
            return Err(Error::Invalid("the chosen elements do not form a nest".into()));
        }
        let w: Vec<WeightVector> = nest.iter().map(|&g| bs.weights(g).cloned()).collect::<Result<_>>()?;
        let wr: Vec<&WeightVector> = w.iter().collect();
        if let (false, Some(col)) = check_uniform_alignment(&wr)? {
            return Err(Error::Invalid(format!("nest is not uniformly aligned (column {col})")));
        }
        let hs: BTreeSet<usize> = h.iter().copied().collect();
        if hs.len() != h.len() {
            return Err(Error::Invalid("control columns must be distinct".into()));
        }
        for k in 0..nest.len() {
            if s[k] != 1 && s[k] != -1 {
                return Err(Error::Invalid("signs must be +1 or -1".into()));
            }
            if h[k] >= bs.dim() || w[k].get(h[k]) == 0 {
                return Err(Error::Invalid(format!("control column {} is not normal to {:?}", h[k], bs.elements()[nest[k]].name)));
            }
            if (0..nest.len()).any(|j| j != k && w[j].get(h[k]) != 0 && bs.subset(nest[k], nest[j])) {
                return Err(Error::Invalid(format!(
                    "control column {} of {:?} is not at the top of its column",
                    h[k],
                    bs.elements()[nest[k]].name
                )));
            }
        }
        Ok(GoodPerspective { bs: bs.clone(), nest, h, s, w })
    }

    /// Builds a perspective from element names.
    pub fn from_names(bs: &BuildingSet, entries: &[(&str, usize, i8)]) -> Result<GoodPerspective> {
        let mut nest = Vec::new();
        let mut h = Vec::new();
        let mut s = Vec::new();
        for (name, col, sign) in entries {
            nest.push(bs.index_of(name).ok_or_else(|| Error::Invalid(format!("unknown element {name:?}")))?);
            h.push(*col);
            s.push(*sign);
        }
        GoodPerspective::new(bs, nest, h, s)
    }

    pub fn building_set(&self) -> &BuildingSet {
        &self.bs
    }

    /// Nest elements (building-set indices), sorted.
    pub fn nest(&self) -> &[usize] {
        &self.nest
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn s(&self) -> &[i8] {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.bs.dim()
    }

    /// Nest position `a ⊆` nest position `b` (as subspaces).
    fn sub(&self, a: usize, b: usize) -> bool {
        self.bs.subset(self.nest[a], self.nest[b])
    }

    fn chart(&self, k: usize) -> SingleChart {
        SingleChart { w: self.w[k].clone(), h: self.h[k], s: self.s[k] }
    }

    fn control_of_column(&self, i: usize) -> Option<usize> {
        self.h.iter().position(|&c| c == i)
    }

    /// Selector: the largest nest element (by inclusion) with non-zero weight
    /// in column `i` whose control column is not `i`; `None` stands for ∅.
    /// Returns a nest position.
    pub fn selector(&self, i: usize) -> Result<Option<usize>> {
        let cand: Vec<usize> = (0..self.nest.len()).filter(|&k| self.w[k].get(i) != 0 && self.h[k] != i).collect();
        if cand.is_empty() {
            return Ok(None);
        }
        let maxes: Vec<usize> = cand.iter().copied().filter(|&k| cand.iter().all(|&j| self.sub(j, k))).collect();
        match maxes.as_slice() {
            [k] => Ok(Some(*k)),
            _ => Err(Error::Invalid(format!("selector for column {i} is not unique"))),
        }
    }

    fn check_corner(&self, y: &[Surd]) -> Result<()> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: y.len() });
        }
        for &c in &self.h {
            if y[c].signum()? < 0 {
                return Err(Error::OutsideDomain(format!("control coordinate {c} is negative")));
            }
        }
        Ok(())
    }

    /// Closed-form component coordinate `i` of nest position `k` (or of the
    /// blow-down for `None`) as a signed monomial `±∏ y_j^{e_j}` in the chart
    /// coordinates.
    pub fn component_monomial(&self, k: Option<usize>, i: usize) -> Monomial {
        let nn = self.nest.len();
        let mut exps = vec![0u32; self.dim()];
        let mut sign = 1i8;
        if let Some(k) = k.filter(|&k| self.h[k] == i) {
            for j in (0..nn).filter(|&j| self.sub(j, k)) {
                exps[self.h[j]] += 1;
            }
            return Monomial { sign, exps };
        }
        match self.control_of_column(i) {
            Some(k0) => sign = self.s[k0],
            None => exps[i] += 1,
        }
        for j in 0..nn {
            let applies = match k {
                None => true,
                Some(k) => self.w[k].get(i) == 0 || (j != k && self.sub(k, j)),
            };
            if applies {
                exps[self.h[j]] += self.w[j].get(i);
            }
        }
        Monomial { sign, exps }
    }

    /// All component coordinates at a corner point, in closed form.
    pub fn component_coords(&self, y: &[Surd]) -> Result<ComponentCoords> {
        self.check_corner(y)?;
        let m = self.dim();
        let per_nest = (0..self.nest.len())
            .map(|k| (0..m).map(|i| self.component_monomial(Some(k), i).eval(y)).collect())
            .collect();
        let base = (0..m).map(|i| self.component_monomial(None, i).eval(y)).collect();
        Ok(ComponentCoords { per_nest, base })
    }

    /// The blow-down of a corner point.
    pub fn blow_down(&self, y: &[Surd]) -> Result<Vec<Surd>> {
        Ok(self.component_coords(y)?.base)
    }

    /// The blow-up point with chart coordinates `y`.
    pub fn chart_inv(&self, y: &[Surd]) -> Result<BlowupPoint> {
        let cc = self.component_coords(y)?;
        let mut comps: Vec<Option<Component>> = vec![None; self.bs.len()];
        for k in 0..self.nest.len() {
            comps[self.nest[k]] = Some(single_chart_inv(&self.chart(k), &cc.per_nest[k])?);
        }
        // Nest positions ordered from the smallest subspace upwards.
        let mut by_size: Vec<usize> = (0..self.nest.len()).collect();
        by_size.sort_by_key(|&k| std::cmp::Reverse(self.bs.flat(self.nest[k]).codim()));
        for g in 0..self.bs.len() {
            if comps[g].is_some() {
                continue;
            }
            let zeros = self.bs.zeros(g)?;
            if zeros.iter().any(|&i| !cc.base[i].is_zero()) {
                comps[g] = Some(Component::Bulk(cc.base.clone()));
                continue;
            }
            let wg = self.bs.weights(g)?;
            let found = by_size.iter().filter(|&&k| self.bs.subset(self.nest[k], g)).find_map(|&k| {
                induced_blowdown_nested(&self.w[k], wg, comps[self.nest[k]].as_ref().expect("nest component")).ok()
            });
            comps[g] = Some(found.ok_or_else(|| {
                Error::OutsideDomain(format!("no nest element induces the component of {:?}", self.bs.elements()[g].name))
            })?);
        }
        Ok(BlowupPoint { components: comps.into_iter().map(|c| c.expect("filled")).collect() })
    }

    /// Chart coordinates of a blow-up point in this perspective.
    pub fn chart_fwd(&self, p: &BlowupPoint) -> Result<Vec<Surd>> {
        if p.components.len() != self.bs.len() {
            return Err(Error::DimensionMismatch { expected: self.bs.len(), found: p.components.len() });
        }
        let mut z = Vec::with_capacity(self.nest.len());
        for k in 0..self.nest.len() {
            z.push(single_chart_fwd(&self.chart(k), &p.components[self.nest[k]]).map_err(|e| {
                Error::OutsideDomain(format!("component of {:?} outside its chart: {e}", self.bs.elements()[self.nest[k]].name))
            })?);
        }
        let base = p.base(&self.bs)?;
        let mut y = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let src = match self.selector(i)? {
                Some(k) => z[k][i].clone(),
                None => base[i].clone(),
            };
            y.push(match self.control_of_column(i) {
                Some(k) => {
                    let r = &Surd::from_i64(self.s[k] as i64) * &src;
                    if r.signum()? < 0 {
                        return Err(Error::OutsideDomain(format!("control entry {i} has the wrong sign")));
                    }
                    r.pow(Exp::new(1, self.w[k].get(i) as i64))?
                }
                None => src,
            });
        }
        let back = self.chart_inv(&y).map_err(|e| Error::OutsideDomain(format!("point is not covered by this chart: {e}")))?;
        if &back != p {
            return Err(Error::OutsideDomain("point is not covered by this chart".into()));
        }
        Ok(y)
    }

    /// `{N ∈ 𝒩 : y_{h(N)} = 0}` as building-set indices.
    pub fn control_set(&self, y: &[Surd]) -> Result<Vec<usize>> {
        self.check_corner(y)?;
        Ok((0..self.nest.len()).filter(|&k| y[self.h[k]].is_zero()).map(|k| self.nest[k]).collect())
    }

    /// Whether the closure of the stratum through `y` fails to be a
    /// submanifold: some `A ⊊ B` in the control set with `w_{B,h(B)} > 1`.
    pub fn weak_singularity(&self, y: &[Surd]) -> Result<bool> {
        let cs = self.control_set(y)?;
        let pos = |g: usize| self.nest.iter().position(|&n| n == g).expect("nest element");
        Ok(cs.iter().any(|&b| {
            let kb = pos(b);
            self.w[kb].get(self.h[kb]) > 1 && cs.iter().any(|&a| a != b && self.bs.subset(a, b))
        }))
    }
}

/// Coordinate change between two perspectives on the same building set.
pub fn building_transition(from: &GoodPerspective, y: &[Surd], to: &GoodPerspective) -> Result<Vec<Surd>> {
    to.chart_fwd(&from.chart_inv(y)?)
}

/// The exact canonical projective class: the canonical divisor
/// representative, with the first non-zero odd-weight entry made positive
/// by the action of −1.
pub fn projective_class_exact(w: &WeightVector, n: &[Surd]) -> Result<Vec<Surd>> {
    let c = canonical_divisor(w, n.to_vec())?;
    let first_odd = (0..c.len()).find(|&i| w.get(i) % 2 == 1 && !c[i].is_zero());
    match first_odd {
        Some(i) if c[i].signum()? < 0 => weighted_action(&Surd::from_i64(-1), &c, w),
        _ => Ok(c),
    }
}

/// Scale `μ > 0` with `Σ_i (v_i μ^{-w_i})² = 1` over entries with `w_i > 0`,
/// by bisection on the monotone left-hand side followed by Newton steps.
pub fn weighted_unit_scale(v: &[f64], w: &[u32]) -> Result<f64> {
    let f = |mu: f64| -> f64 { v.iter().zip(w).filter(|(_, &wi)| wi > 0).map(|(x, &wi)| (x / mu.powi(wi as i32)).powi(2)).sum::<f64>() - 1.0 };
    if v.iter().zip(w).all(|(x, &wi)| wi == 0 || *x == 0.0) {
        return Err(Error::OutsideDomain("cannot normalize a vanishing normal vector".into()));
    }
    let (mut lo, mut hi) = (1.0f64, 1.0f64);
    while f(lo) < 0.0 {
        lo /= 2.0;
    }
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
        if (hi - lo) <= 1e-15 * hi {
            break;
        }
    }
    let mut mu = 0.5 * (lo + hi);
    for _ in 0..3 {
        let df: f64 = v
            .iter()
            .zip(w)
            .filter(|(_, &wi)| wi > 0)
            .map(|(x, &wi)| -2.0 * wi as f64 * x * x / mu.powi(2 * wi as i32 + 1))
            .sum();
        if df == 0.0 {
            break;
        }
        let next = mu - f(mu) / df;
        if next > 0.0 && next.is_finite() {
            mu = next;
        }
    }
    Ok(mu)
}

/// Floating-point canonical representative of a projective class: unit
/// Euclidean norm over the weighted entries, and the lexicographically
/// larger of the two representatives related by the action of −1.
pub fn projective_canonicalize(w: &WeightVector, n: &[Surd]) -> Result<Vec<f64>> {
    let c = projective_class_exact(w, n)?;
    let v: Vec<f64> = c.iter().map(Surd::to_f64).collect();
    let mu = weighted_unit_scale(&v, w.as_slice())?;
    Ok(v.iter().zip(w.as_slice()).map(|(x, &wi)| x / mu.powi(wi as i32)).collect())
}

/// Orbifold points of the weighted projective divisor: every odd-weight
/// normal entry vanishes and some even-weight normal direction exists.
pub fn projective_is_singular(w: &WeightVector, n: &[Surd]) -> bool {
    let odd_vanish = (0..n.len()).all(|i| w.get(i) % 2 == 0 || n[i].is_zero());
    let has_even = (0..n.len()).any(|i| w.get(i) > 0 && w.get(i) % 2 == 0);
    odd_vanish && has_even
}
