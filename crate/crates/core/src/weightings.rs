//! Standard weightings on ℝ^m: monomial generators of the structure
//! filtration, conormal bases, linear data, intersections and alignment.

use crate::error::{Error, Result};
use crate::jets::WeightVector;
use std::collections::{BTreeMap, BTreeSet};

/// Exponent multi-index of a monomial.
pub type MultiIndex = Vec<u32>;

/// `α · w`.
pub fn weighted_degree(alpha: &[u32], w: &WeightVector) -> u64 {
    alpha.iter().zip(w.as_slice()).map(|(&a, &b)| a as u64 * b as u64).sum()
}

/// All multi-indices supported on positive weights with `α_j ≤ bound_j`.
fn box_indices(w: &WeightVector, bound: impl Fn(u32) -> u32) -> Vec<MultiIndex> {
    let mut out = vec![vec![]];
    for &wj in w.as_slice() {
        let top = if wj == 0 { 0 } else { bound(wj) };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=top).map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

/// Minimal monomial generators of the degree-`i` filtration ideal: the
/// componentwise-minimal `α` with `α·w ≥ i`, supported where `w_j > 0`.
pub fn filtration_generators(w: &WeightVector, i: u32) -> BTreeSet<MultiIndex> {
    if i == 0 {
        return BTreeSet::from([vec![0; w.len()]]);
    }
    let candidates: Vec<MultiIndex> = box_indices(w, |wj| i.div_ceil(wj))
        .into_iter()
        .filter(|a| weighted_degree(a, w) >= i as u64)
        .collect();
    candidates
        .iter()
        .filter(|a| {
            // Minimal iff lowering any positive entry drops below degree i.
            (0..a.len()).all(|j| a[j] == 0 || weighted_degree(a, w) - (w.get(j) as u64) < i as u64)
        })
        .cloned()
        .collect()
}

/// Monomials of exact weighted degree `i` on the normal directions.
pub fn conormal_basis(w: &WeightVector, i: u32) -> BTreeSet<MultiIndex> {
    box_indices(w, |wj| i / wj).into_iter().filter(|a| weighted_degree(a, w) == i as u64).collect()
}

/// Whether the monomial `x^β` is divisible by `x^α`.
pub fn divides(alpha: &[u32], beta: &[u32]) -> bool {
    alpha.iter().zip(beta).all(|(a, b)| a <= b)
}

/// Whether `x^β` lies in the monomial ideal generated by `gens`.
pub fn in_monomial_ideal(beta: &[u32], gens: &BTreeSet<MultiIndex>) -> bool {
    gens.iter().any(|g| divides(g, beta))
}

/// Multiplicity of each positive weight.
pub fn linearized_ranks(w: &WeightVector) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for &wi in w.as_slice() {
        if wi > 0 {
            *out.entry(wi).or_default() += 1;
        }
    }
    out
}

/// Intersection of standard weightings: the componentwise maximum.
pub fn intersect_standard(w1: &WeightVector, w2: &WeightVector) -> Result<WeightVector> {
    if w1.len() != w2.len() {
        return Err(Error::DimensionMismatch { expected: w1.len(), found: w2.len() });
    }
    WeightVector::new(w1.as_slice().iter().zip(w2.as_slice()).map(|(a, b)| *a.max(b)).collect())
}

/// Uniform alignment of a family: in every column, all non-zero weights
/// agree.  Returns the first offending (0-based) column on failure.
pub fn check_uniform_alignment(ws: &[&WeightVector]) -> Result<(bool, Option<usize>)> {
    let Some(first) = ws.first() else { return Ok((true, None)) };
    let m = first.len();
    if let Some(bad) = ws.iter().find(|w| w.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: bad.len() });
    }
    for col in 0..m {
        let nz: BTreeSet<u32> = ws.iter().map(|w| w.get(col)).filter(|&x| x > 0).collect();
        if nz.len() > 1 {
            return Ok((false, Some(col)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: &[u32]) -> WeightVector {
        WeightVector::new(w.to_vec()).unwrap()
    }

    fn set(v: &[&[u32]]) -> BTreeSet<MultiIndex> {
        v.iter().map(|a| a.to_vec()).collect()
    }

    #[test]
    fn generators_small_cases() {
        assert_eq!(filtration_generators(&wv(&[0, 1, 2]), 0), set(&[&[0, 0, 0]]));
        assert_eq!(filtration_generators(&wv(&[1, 1]), 2), set(&[&[2, 0], &[1, 1], &[0, 2]]));
    }

    #[test]
    fn conormal_unreachable_degree() {
        assert!(conormal_basis(&wv(&[2]), 3).is_empty());
        assert_eq!(conormal_basis(&wv(&[0, 1, 2]), 1), set(&[&[0, 1, 0]]));
    }

    #[test]
    fn ranks_and_intersections() {
        assert_eq!(linearized_ranks(&wv(&[1, 1, 2, 3, 3])), BTreeMap::from([(1, 2), (2, 1), (3, 2)]));
        assert_eq!(intersect_standard(&wv(&[0, 2, 1]), &wv(&[1, 2, 0])).unwrap(), wv(&[1, 2, 1]));
        assert!(intersect_standard(&wv(&[0]), &wv(&[1, 2])).is_err());
    }

    #[test]
    fn alignment_examples() {
        assert_eq!(check_uniform_alignment(&[&wv(&[0, 2, 1]), &wv(&[1, 2, 0])]).unwrap(), (true, None));
        assert_eq!(check_uniform_alignment(&[&wv(&[1, 1, 0]), &wv(&[1, 2, 1])]).unwrap(), (false, Some(1)));
        assert_eq!(check_uniform_alignment(&[&wv(&[3, 1])]).unwrap(), (true, None));
    }
}
