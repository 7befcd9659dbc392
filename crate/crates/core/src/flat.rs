//! Rational linear subspaces of ℚ^m, stored by their defining equations.
//!
//! A [`Flat`] keeps the reduced row echelon form of the equations cutting it
//! out, which makes equality structural.  Coordinate subspaces are the flats
//! whose equations are unit rows; diagonals of configuration spaces are not.

use crate::rational::Q;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// The common zero set of a family of linear forms on ℚ^m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    dim: usize,
    rows: Vec<Vec<Q>>,
}

impl Flat {
    /// The whole space ℚ^m.
    pub fn ambient(dim: usize) -> Flat {
        Flat { dim, rows: Vec::new() }
    }

    /// The subspace `{x : x_i = 0 for i ∈ zeros}`.
    pub fn coordinate(dim: usize, zeros: &BTreeSet<usize>) -> Flat {
        let rows = zeros
            .iter()
            .map(|&i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Flat::from_equations(dim, rows)
    }

    /// The subspace cut out by the given linear forms.
    pub fn from_equations(dim: usize, rows: Vec<Vec<Q>>) -> Flat {
        debug_assert!(rows.iter().all(|r| r.len() == dim));
        Flat { dim, rows: rref(rows, dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of independent equations.
    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    pub fn equations(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Intersection of two flats.
    pub fn meet(&self, other: &Flat) -> Flat {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Flat::from_equations(self.dim, rows)
    }

    /// Intersection of a family; the empty family gives the ambient space.
    pub fn meet_all<'a>(dim: usize, flats: impl IntoIterator<Item = &'a Flat>) -> Flat {
        let mut rows = Vec::new();
        for f in flats {
            rows.extend(f.rows.iter().cloned());
        }
        Flat::from_equations(dim, rows)
    }

    /// Whether `other ⊆ self` as subspaces.
    pub fn contains(&self, other: &Flat) -> bool {
        self.rows.iter().all(|r| in_row_space(r, &other.rows))
    }

    /// Whether the point lies on the flat.
    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.rows.iter().all(|r| r.iter().zip(x).map(|(a, b)| a * b).fold(Q::zero(), |s, t| s + t).is_zero())
    }

    /// The zero coordinate set if this is a coordinate subspace.
    pub fn coordinate_zeros(&self) -> Option<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for r in &self.rows {
            let nz: Vec<usize> = (0..self.dim).filter(|&j| !r[j].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            out.insert(nz[0]);
        }
        Some(out)
    }

    /// Transversality of a family: codimensions add up under intersection.
    pub fn transverse(dim: usize, flats: &[&Flat]) -> bool {
        let total: usize = flats.iter().map(|f| f.codim()).sum();
        Flat::meet_all(dim, flats.iter().copied()).codim() == total
    }
}

/// Reduced row echelon form with zero rows dropped.
fn rref(mut rows: Vec<Vec<Q>>, dim: usize) -> Vec<Vec<Q>> {
    let mut pivot_row = 0;
    for col in 0..dim {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pr = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Whether `v` lies in the span of RREF rows.
fn in_row_space(v: &[Q], rref_rows: &[Vec<Q>]) -> bool {
    let mut v = v.to_vec();
    for r in rref_rows {
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else { continue };
        if !v[pc].is_zero() {
            let f = v[pc].clone();
            for (x, y) in v.iter_mut().zip(r) {
                *x -= &f * y;
            }
        }
    }
    v.iter().all(|x| x.is_zero())
}
