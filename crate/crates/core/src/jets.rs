//! Truncated curves (higher tangent vectors), polynomial lifts, weighted
//! actions and induced maps between weighted normal bundles.
//!
//! Everything here is exact rational arithmetic.  The single evaluation
//! primitive is composition of a polynomial with truncated power series.

use crate::error::{Error, Result};
use crate::rational::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::Mul;

/// Per-coordinate non-negative integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    /// Weights for `m ≥ 1` coordinates.
    pub fn new(w: Vec<u32>) -> Result<WeightVector> {
        if w.is_empty() {
            return Err(Error::Invalid("weight vector must have at least one entry".into()));
        }
        Ok(WeightVector(w))
    }

    /// All-zero weights on `m` coordinates.
    pub fn zeros(m: usize) -> WeightVector {
        WeightVector(vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// The order `r`, i.e. the largest weight.
    pub fn order(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Indices with positive weight (the normal directions of the support).
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &WeightVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

/// `λ^e` with `λ^0 = 1` (also for `λ = 0`).
pub fn pow_u<T: Clone + One + Mul<Output = T>>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// The graded action `(λ·v)_i = λ^{w_i} v_i`.
pub fn weighted_action<T>(lambda: &T, v: &[T], w: &WeightVector) -> Result<Vec<T>>
where
    T: Clone + One + Zero + Mul<Output = T>,
{
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), found: v.len() });
    }
    Ok(v.iter().zip(w.as_slice()).map(|(x, &wi)| pow_u(lambda, wi) * x.clone()).collect())
}

/// Univariate power series `Σ c_j t^j`, optionally truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub coeffs: Vec<Q>,
}

impl Series {
    pub fn new(mut coeffs: Vec<Q>) -> Series {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Series { coeffs }
    }

    pub fn constant(c: Q) -> Series {
        Series::new(vec![c])
    }

    pub fn coeff(&self, j: usize) -> Q {
        self.coeffs.get(j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.coeffs.len().max(other.coeffs.len());
        Series::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.coeffs.len().max(other.coeffs.len());
        Series::new((0..n).map(|j| self.coeff(j) - other.coeff(j)).collect())
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Product, dropping terms above `max_order` when given.
    pub fn mul(&self, other: &Series, max_order: Option<usize>) -> Series {
        if self.is_zero() || other.is_zero() {
            return Series::new(vec![]);
        }
        let mut n = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(r) = max_order {
            n = n.min(r + 1);
        }
        let mut out = vec![Q::zero(); n];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() || a >= n {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if a + b >= n {
                    break;
                }
                out[a + b] += x * y;
            }
        }
        Series::new(out)
    }

    /// Evaluation at a rational parameter.
    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
    }
}

/// Multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Polynomial> {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Polynomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial { nvars, terms: BTreeMap::from([(e, Q::one())]) }
    }

    pub fn constant(nvars: usize, c: Q) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let zero = {
            let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
            *slot += c;
            slot.is_zero()
        };
        if zero {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    /// Partial derivative `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Q::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| acc * crate::rational::qpow(xi, k)))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// `f(γ(t))` for a curve given by one series per variable, truncated at
    /// `max_order` when given.
    pub fn compose(&self, curve: &[Series], max_order: Option<usize>) -> Result<Series> {
        if curve.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: curve.len() });
        }
        let mut powers: Vec<Vec<Series>> = curve.iter().map(|s| vec![Series::constant(Q::one()), s.clone()]).collect();
        let mut total = Series::new(vec![]);
        for (e, c) in &self.terms {
            let mut term = Series::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&curve[i], max_order);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize], max_order);
            }
            total = total.add(&term);
        }
        Ok(total)
    }
}

/// Coefficients `x_i^{(j)}` of a curve modulo `t^{r+1}`: an element of the
/// order-`r` higher tangent bundle of ℝ^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCurve {
    order: usize,
    coeffs: Vec<Vec<Q>>,
}

impl TruncatedCurve {
    /// `coeffs[i][j]` is the coefficient of `t^j` in coordinate `i`.
    pub fn new(order: usize, coeffs: Vec<Vec<Q>>) -> Result<TruncatedCurve> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a curve needs at least one coordinate".into()));
        }
        for row in &coeffs {
            if row.len() != order + 1 {
                return Err(Error::DimensionMismatch { expected: order + 1, found: row.len() });
            }
        }
        Ok(TruncatedCurve { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Q {
        &self.coeffs[i][j]
    }

    /// The representative polynomial curve, one series per coordinate.
    pub fn series(&self) -> Vec<Series> {
        self.coeffs.iter().map(|r| Series::new(r.clone())).collect()
    }

    /// The reparametrized curve `t ↦ γ(λt)`.
    pub fn scale(&self, lambda: &Q) -> TruncatedCurve {
        let coeffs = self
            .coeffs
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, c)| c * crate::rational::qpow(lambda, j as u32)).collect())
            .collect();
        TruncatedCurve { order: self.order, coeffs }
    }

    /// Drops coefficients above order `r ≤ self.order`.
    pub fn truncate(&self, r: usize) -> Result<TruncatedCurve> {
        if r > self.order {
            return Err(Error::OrderExceeded { requested: r, available: self.order });
        }
        Ok(TruncatedCurve { order: r, coeffs: self.coeffs.iter().map(|row| row[..=r].to_vec()).collect() })
    }
}

/// Brings two curves to a common order by truncating to the smaller one.
/// The flag reports whether any truncation happened.
pub fn align_orders(a: &TruncatedCurve, b: &TruncatedCurve) -> (TruncatedCurve, TruncatedCurve, bool) {
    let r = a.order.min(b.order);
    (a.truncate(r).unwrap(), b.truncate(r).unwrap(), a.order != b.order)
}

/// The `i`-th lift `f^{(i)}(q)`: the `t^i` coefficient of `f(γ(t))`.
pub fn lift(f: &Polynomial, i: usize, q: &TruncatedCurve) -> Result<Q> {
    if i > q.order {
        return Err(Error::OrderExceeded { requested: i, available: q.order });
    }
    Ok(f.compose(&q.series(), Some(q.order))?.coeff(i))
}

/// Whether the curve lies in the standard weighting with weights `w`.
pub fn in_weighting(q: &TruncatedCurve, w: &WeightVector) -> Result<bool> {
    if q.dim() != w.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), found: q.dim() });
    }
    let need = (w.order() as usize).saturating_sub(1);
    if w.order() > 0 && q.order < need {
        return Err(Error::OrderExceeded { requested: need, available: q.order });
    }
    Ok((0..q.dim()).all(|i| (0..w.get(i) as usize).all(|j| q.coeff(i, j).is_zero())))
}

/// A point of the weighted normal bundle in linear coordinates: entry `i` is
/// the lift of `x_i` to degree `w_i` (a base coordinate when `w_i = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalVector<T = Q> {
    pub weight: WeightVector,
    pub coords: Vec<T>,
}

impl<T> NormalVector<T> {
    pub fn new(weight: WeightVector, coords: Vec<T>) -> Result<NormalVector<T>> {
        if weight.len() != coords.len() {
            return Err(Error::DimensionMismatch { expected: weight.len(), found: coords.len() });
        }
        Ok(NormalVector { weight, coords })
    }
}

/// The map between weighted normal bundles induced by the identity of ℝ^m
/// from a weighting to a coarser one: keep entries whose weight is
/// unchanged, zero the rest.
pub fn normal_induced<T: Clone + Zero>(v: &NormalVector<T>, w_target: &WeightVector) -> Result<NormalVector<T>> {
    let ws = &v.weight;
    if ws.len() != w_target.len() {
        return Err(Error::DimensionMismatch { expected: ws.len(), found: w_target.len() });
    }
    for i in 0..ws.len() {
        if ws.get(i) < w_target.get(i) {
            return Err(Error::NotAMorphism { column: i, source_weight: ws.get(i), target_weight: w_target.get(i) });
        }
    }
    let coords = (0..ws.len())
        .map(|i| if ws.get(i) == w_target.get(i) { v.coords[i].clone() } else { T::zero() })
        .collect();
    Ok(NormalVector { weight: w_target.clone(), coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn wv(w: &[u32]) -> WeightVector {
        WeightVector::new(w.to_vec()).unwrap()
    }

    #[test]
    fn action_examples() {
        assert_eq!(weighted_action(&q(2), &[q(3), q(5)], &wv(&[1, 2])).unwrap(), vec![q(6), q(20)]);
        assert_eq!(weighted_action(&q(0), &[q(7), q(8), q(9)], &wv(&[0, 1, 2])).unwrap(), vec![q(7), q(0), q(0)]);
        assert!(weighted_action(&q(1), &[q(1)], &wv(&[1, 1])).is_err());
    }

    #[test]
    fn lift_of_coordinate_is_coefficient() {
        let c = TruncatedCurve::new(2, vec![vec![q(1), q(2), q(3)], vec![q(4), q(5), q(6)]]).unwrap();
        for i in 0..=2 {
            assert_eq!(lift(&Polynomial::var(2, 0), i, &c).unwrap(), c.coeff(0, i).clone());
        }
        assert!(lift(&Polynomial::var(2, 0), 3, &c).is_err());
    }

    #[test]
    fn weighting_membership() {
        let c = TruncatedCurve::new(1, vec![vec![q(5), q(1)], vec![q(0), q(2)], vec![q(0), q(0)]]).unwrap();
        assert!(in_weighting(&c, &wv(&[0, 1, 2])).unwrap());
        let d = TruncatedCurve::new(1, vec![vec![q(5), q(1)], vec![q(0), q(2)], vec![q(0), q(1)]]).unwrap();
        assert!(!in_weighting(&d, &wv(&[0, 1, 2])).unwrap());
        assert!(in_weighting(&d, &wv(&[0, 0, 0])).unwrap());
        let low = TruncatedCurve::new(0, vec![vec![q(0)], vec![q(0)], vec![q(0)]]).unwrap();
        assert!(in_weighting(&low, &wv(&[0, 1, 3])).is_err());
    }

    #[test]
    fn induced_projection_examples() {
        let v = NormalVector::new(wv(&[1, 1, 2]), vec![q(3), q(4), q(5)]).unwrap();
        assert_eq!(normal_induced(&v, &wv(&[0, 1, 1])).unwrap().coords, vec![q(0), q(4), q(0)]);
        let u = NormalVector::new(wv(&[2, 2]), vec![q(3), q(4)]).unwrap();
        assert_eq!(normal_induced(&u, &wv(&[1, 1])).unwrap().coords, vec![q(0), q(0)]);
        assert!(matches!(normal_induced(&u, &wv(&[3, 1])), Err(Error::NotAMorphism { column: 0, .. })));
    }

    #[test]
    fn order_alignment_flags_truncation() {
        let a = TruncatedCurve::new(3, vec![vec![q(1), q(2), q(3), q(4)]]).unwrap();
        let b = TruncatedCurve::new(1, vec![vec![q(1), q(2)]]).unwrap();
        let (a2, b2, warned) = align_orders(&a, &b);
        assert!(warned);
        assert_eq!(a2.order(), 1);
        assert_eq!(b2, b);
    }
}
