//! Building sets of linear subspaces: the intersection lattice, factors,
//! separation, flags and nests, validity of weights and weight tableaus.
//!
//! Elements are arbitrary rational linear subspaces (so diagonals of
//! configuration spaces fit); weights are attached to coordinate subspaces.

use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::jets::WeightVector;
use crate::weightings::check_uniform_alignment;
use std::collections::{BTreeMap, BTreeSet};

/// Largest building set accepted by nest enumeration.
pub const NEST_ENUMERATION_CAP: usize = 32;
/// Largest arrangement accepted by flag enumeration.
pub const FLAG_ARRANGEMENT_CAP: usize = 64;
/// Largest `|𝒢_{≥S}|` accepted by the brute-force max-rule check.
pub const MAX_RULE_BRUTE_FORCE_CAP: usize = 12;

/// An element of a building set: a named linear subspace of positive
/// codimension, optionally carrying a standard weighting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub flat: Flat,
    pub weights: Option<WeightVector>,
}

impl Element {
    /// The coordinate subspace cut out by the positive entries of `w`,
    /// weighted by `w`.
    pub fn weighted(name: &str, w: &[u32]) -> Result<Element> {
        let wv = WeightVector::new(w.to_vec())?;
        let zeros: BTreeSet<usize> = wv.support().into_iter().collect();
        Ok(Element { name: name.into(), flat: Flat::coordinate(w.len(), &zeros), weights: Some(wv) })
    }

    /// An unweighted linear subspace.
    pub fn unweighted(name: &str, flat: Flat) -> Element {
        Element { name: name.into(), flat, weights: None }
    }

    /// The zero coordinates, if this is a coordinate subspace.
    pub fn zeros(&self) -> Option<BTreeSet<usize>> {
        self.flat.coordinate_zeros()
    }
}

/// A finite family of subspaces to be blown up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSet {
    dim: usize,
    elements: Vec<Element>,
}

/// The intersection lattice of a building set.
#[derive(Clone, Debug)]
pub struct Arrangement {
    /// Lattice elements sorted by codimension; index 0 is the ambient space.
    pub nodes: Vec<Flat>,
    /// Componentwise maximum of the weights of all elements containing the
    /// node (absent when some such element is unweighted).
    pub weights: Vec<Option<WeightVector>>,
}

impl Arrangement {
    /// Index of a flat in the lattice.
    pub fn index_of(&self, f: &Flat) -> Option<usize> {
        self.nodes.iter().position(|n| n == f)
    }

    /// Lattice order: `a ≤ b` iff `nodes[a] ⊆ nodes[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.nodes[b].contains(&self.nodes[a])
    }

    /// Meet (intersection) of two lattice elements.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.nodes[a].meet(&self.nodes[b])).expect("lattice is closed under intersection")
    }

    /// Join: the smallest lattice element containing both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let dim = self.nodes[0].dim();
        let above: Vec<&Flat> = self.nodes.iter().filter(|n| n.contains(&self.nodes[a]) && n.contains(&self.nodes[b])).collect();
        self.index_of(&Flat::meet_all(dim, above)).expect("lattice is closed under intersection")
    }
}

/// Outcome of the weighted-building-set check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedDiagnostics {
    pub separated: bool,
    pub separation_witness: Option<Flat>,
    /// `(element, column)` pairs breaking the maximum rule.
    pub max_rule_violations: Vec<(usize, usize)>,
    /// `(nest, column)` pairs breaking uniform alignment.
    pub alignment_violations: Vec<(Vec<usize>, usize)>,
}

impl WeightedDiagnostics {
    /// Valid weighted building set: maximum rule and uniform alignment hold.
    pub fn is_weighted_valid(&self) -> bool {
        self.max_rule_violations.is_empty() && self.alignment_violations.is_empty()
    }
}

impl BuildingSet {
    /// Validates names, dimensions, codimensions and weights.
    pub fn new(dim: usize, elements: Vec<Element>) -> Result<BuildingSet> {
        let mut names = BTreeSet::new();
        let mut flats = BTreeSet::new();
        for e in &elements {
            if !names.insert(e.name.clone()) {
                return Err(Error::Invalid(format!("duplicate element name {:?}", e.name)));
            }
            if e.flat.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.flat.dim() });
            }
            if e.flat.codim() == 0 {
                return Err(Error::Invalid(format!("element {:?} has codimension zero", e.name)));
            }
            if !flats.insert(e.flat.clone()) {
                return Err(Error::Invalid(format!("element {:?} duplicates another element", e.name)));
            }
            if let Some(w) = &e.weights {
                if w.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: w.len() });
                }
                let zeros = e
                    .zeros()
                    .ok_or_else(|| Error::Invalid(format!("weighted element {:?} is not a coordinate subspace", e.name)))?;
                let support: BTreeSet<usize> = w.support().into_iter().collect();
                if zeros != support {
                    return Err(Error::Invalid(format!("weights of {:?} must be positive exactly on its zero set", e.name)));
                }
            }
        }
        Ok(BuildingSet { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.elements[i].flat
    }

    /// Weights of element `i`; an error for unweighted elements.
    pub fn weights(&self, i: usize) -> Result<&WeightVector> {
        self.elements[i]
            .weights
            .as_ref()
            .ok_or_else(|| Error::Invalid(format!("element {:?} carries no weights", self.elements[i].name)))
    }

    /// Zero coordinates of element `i`; an error for non-coordinate elements.
    pub fn zeros(&self, i: usize) -> Result<BTreeSet<usize>> {
        self.elements[i]
            .zeros()
            .ok_or_else(|| Error::Invalid(format!("element {:?} is not a coordinate subspace", self.elements[i].name)))
    }

    /// Whether element `a ⊆` element `b` as subspaces.
    pub fn subset(&self, a: usize, b: usize) -> bool {
        self.flat(b).contains(self.flat(a))
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.subset(a, b) || self.subset(b, a)
    }

    /// Intersection of a family of elements (ambient space for none).
    pub fn meet_of(&self, idx: &[usize]) -> Flat {
        Flat::meet_all(self.dim, idx.iter().map(|&i| self.flat(i)))
    }

    /// Index of the element equal to `f`, if any.
    pub fn element_equal_to(&self, f: &Flat) -> Option<usize> {
        self.elements.iter().position(|e| &e.flat == f)
    }

    /// The lattice of all intersections, including the ambient space.
    pub fn arrangement(&self) -> Arrangement {
        let mut nodes: BTreeSet<Flat> = BTreeSet::from([Flat::ambient(self.dim)]);
        for e in &self.elements {
            let new: Vec<Flat> = nodes.iter().map(|n| n.meet(&e.flat)).collect();
            nodes.extend(new);
        }
        let mut nodes: Vec<Flat> = nodes.into_iter().collect();
        nodes.sort_by(|a, b| (a.codim(), a).cmp(&(b.codim(), b)));
        let weights = nodes.iter().map(|n| self.max_weights_above(n)).collect();
        Arrangement { nodes, weights }
    }

    /// Componentwise maximum of the weights of the elements containing `f`.
    fn max_weights_above(&self, f: &Flat) -> Option<WeightVector> {
        let mut acc = vec![0u32; self.dim];
        for e in &self.elements {
            if e.flat.contains(f) {
                let w = e.weights.as_ref()?;
                for (a, b) in acc.iter_mut().zip(w.as_slice()) {
                    *a = (*a).max(*b);
                }
            }
        }
        Some(WeightVector::new(acc).expect("dim ≥ 1"))
    }

    /// Elements containing `s`.
    pub fn elements_above(&self, s: &Flat) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.flat(i).contains(s)).collect()
    }

    /// The factors of an arrangement element: minimal elements containing it.
    pub fn factors(&self, s: &Flat) -> Result<Vec<usize>> {
        let above = self.elements_above(s);
        if &self.meet_of(&above) != s {
            return Err(Error::Invalid("subspace is not an element of the arrangement".into()));
        }
        Ok(above.iter().copied().filter(|&g| !above.iter().any(|&h| h != g && self.subset(h, g))).collect())
    }

    /// Separation: for every lattice element, its factors are transverse.
    /// On failure the offending lattice element is returned.
    pub fn check_separated(&self) -> (bool, Option<Flat>) {
        let arr = self.arrangement();
        for s in arr.nodes.iter().skip(1) {
            let f = self.factors(s).expect("lattice element");
            let flats: Vec<&Flat> = f.iter().map(|&i| self.flat(i)).collect();
            if !Flat::transverse(self.dim, &flats) {
                return (false, Some(s.clone()));
            }
        }
        (true, None)
    }

    /// All antichains of size ≥ `min` inside `set`.
    fn antichains(&self, set: &[usize], min: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.antichains_rec(set, 0, &mut cur, min, &mut out);
        out
    }

    fn antichains_rec(&self, set: &[usize], start: usize, cur: &mut Vec<usize>, min: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= min {
            out.push(cur.clone());
        }
        for k in start..set.len() {
            let g = set[k];
            if cur.iter().all(|&c| !self.comparable(c, g)) {
                cur.push(g);
                self.antichains_rec(set, k + 1, cur, min, out);
                cur.pop();
            }
        }
    }

    /// Nest characterization by antichains: every antichain `P` satisfies
    /// `factors(∩P) = P`.
    pub fn nest_by_factor_antichains(&self, nest: &[usize]) -> bool {
        self.antichains(nest, 1).iter().all(|p| {
            let f: BTreeSet<usize> = self.factors(&self.meet_of(p)).expect("intersection of elements").into_iter().collect();
            f == p.iter().copied().collect()
        })
    }

    /// Nest characterization by intersections: no antichain of size ≥ 2
    /// intersects in an element of the building set.
    pub fn nest_by_intersections(&self, nest: &[usize]) -> bool {
        self.antichains(nest, 2).iter().all(|p| self.element_equal_to(&self.meet_of(p)).is_none())
    }

    /// Nest test by the flag definition (search over all flags).
    pub fn nest_by_flags(&self, nest: &[usize]) -> Result<bool> {
        let mut key: Vec<usize> = nest.to_vec();
        key.sort_unstable();
        key.dedup();
        Ok(self.nests_from_flags()?.contains(&key))
    }

    /// Whether a subset of elements is a nest: by intersections for
    /// separated sets, by flags otherwise.
    pub fn is_nest(&self, nest: &[usize]) -> Result<bool> {
        if self.check_separated().0 {
            Ok(self.nest_by_intersections(nest))
        } else {
            self.nest_by_flags(nest)
        }
    }

    /// All flags `S_1 ⊊ … ⊊ S_l` of proper lattice elements, the trivial flag
    /// first; each flag lists arrangement indices from smallest to largest.
    pub fn flags(&self) -> Result<(Arrangement, Vec<Vec<usize>>)> {
        let arr = self.arrangement();
        if arr.nodes.len() > FLAG_ARRANGEMENT_CAP {
            return Err(Error::CapExceeded { what: "arrangement".into(), size: arr.nodes.len(), cap: FLAG_ARRANGEMENT_CAP });
        }
        let n = arr.nodes.len();
        let above: Vec<Vec<usize>> = (0..n)
            .map(|a| (1..n).filter(|&b| b != a && arr.leq(a, b)).collect())
            .collect();
        let mut out = vec![vec![]];
        let mut stack: Vec<Vec<usize>> = (1..n).map(|a| vec![a]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            for &b in &above[last] {
                let mut c = chain.clone();
                c.push(b);
                stack.push(c);
            }
            out.push(chain);
        }
        out.sort();
        Ok((arr, out))
    }

    /// The set of nests induced by all flags: `⋃_i factors(S_i)`.
    pub fn nests_from_flags(&self) -> Result<BTreeSet<Vec<usize>>> {
        let (arr, flags) = self.flags()?;
        let factor_cache: Vec<Vec<usize>> =
            arr.nodes.iter().enumerate().map(|(k, s)| if k == 0 { vec![] } else { self.factors(s).expect("lattice") }).collect();
        Ok(flags
            .iter()
            .map(|fl| {
                let set: BTreeSet<usize> = fl.iter().flat_map(|&k| factor_cache[k].iter().copied()).collect();
                set.into_iter().collect()
            })
            .collect())
    }

    /// All nests including the empty one, ordered by size then
    /// lexicographically by element index.
    pub fn enumerate_nests(&self) -> Result<Vec<Vec<usize>>> {
        if self.len() > NEST_ENUMERATION_CAP {
            return Err(Error::CapExceeded { what: "building set".into(), size: self.len(), cap: NEST_ENUMERATION_CAP });
        }
        let mut out: Vec<Vec<usize>> = if self.check_separated().0 {
            let mut acc = Vec::new();
            let mut cur = Vec::new();
            self.nest_backtrack(0, &mut cur, &mut acc);
            acc
        } else {
            self.nests_from_flags()?.into_iter().collect()
        };
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }

    fn nest_backtrack(&self, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for g in start..self.len() {
            let others: Vec<usize> = cur.iter().copied().filter(|&c| !self.comparable(c, g)).collect();
            let ok = self.antichains(&others, 1).iter().all(|p| {
                let mut q = p.clone();
                q.push(g);
                self.element_equal_to(&self.meet_of(&q)).is_none()
            });
            if ok {
                cur.push(g);
                self.nest_backtrack(g + 1, cur, out);
                cur.pop();
            }
        }
    }

    /// Weighted validity: the maximum rule for intersections that are
    /// themselves elements, and uniform alignment over every nest.
    ///
    /// The maximum rule is decided column by column without enumerating
    /// subfamilies: for `G` and column `i`, every `P ⊇ G` must satisfy
    /// `w_{P,i} ≤ w_{G,i}`, and the elements `P ⊋ G` with `w_{P,i} < w_{G,i}`
    /// must not already intersect in `G`.
    pub fn check_weighted_building_set(&self) -> Result<WeightedDiagnostics> {
        for i in 0..self.len() {
            self.weights(i)?;
        }
        let (separated, separation_witness) = self.check_separated();
        let mut diag = WeightedDiagnostics { separated, separation_witness, ..Default::default() };
        for g in 0..self.len() {
            let wg = self.weights(g)?;
            let above: Vec<usize> = (0..self.len()).filter(|&p| p != g && self.subset(g, p)).collect();
            for col in 0..self.dim {
                let too_big = above.iter().any(|&p| self.weights(p).map(|w| w.get(col) > wg.get(col)).unwrap_or(false));
                let lower: Vec<usize> =
                    above.iter().copied().filter(|&p| self.weights(p).map(|w| w.get(col) < wg.get(col)).unwrap_or(false)).collect();
                let undercut = !lower.is_empty() && &self.meet_of(&lower) == self.flat(g);
                if too_big || undercut {
                    diag.max_rule_violations.push((g, col));
                }
            }
        }
        for nest in self.enumerate_nests()? {
            let ws: Vec<&WeightVector> = nest.iter().map(|&i| self.weights(i)).collect::<Result<_>>()?;
            if let (false, Some(col)) = check_uniform_alignment(&ws)? {
                diag.alignment_violations.push((nest, col));
            }
        }
        Ok(diag)
    }

    /// The maximum rule by direct enumeration of subfamilies of `𝒢_{≥G}`;
    /// exponential, capped, and used to cross-check the column criterion.
    pub fn max_rule_brute_force(&self) -> Result<Vec<(usize, usize)>> {
        let mut out = BTreeSet::new();
        for g in 0..self.len() {
            let above = self.elements_above(self.flat(g));
            if above.len() > MAX_RULE_BRUTE_FORCE_CAP {
                return Err(Error::CapExceeded { what: "elements above".into(), size: above.len(), cap: MAX_RULE_BRUTE_FORCE_CAP });
            }
            let wg = self.weights(g)?;
            for mask in 1u32..(1 << above.len()) {
                let sub: Vec<usize> = (0..above.len()).filter(|k| mask >> k & 1 == 1).map(|k| above[k]).collect();
                if &self.meet_of(&sub) != self.flat(g) {
                    continue;
                }
                for col in 0..self.dim {
                    let mx = sub.iter().map(|&p| self.weights(p).map(|w| w.get(col))).collect::<Result<Vec<_>>>()?;
                    if mx.into_iter().max().unwrap_or(0) != wg.get(col) {
                        out.insert((g, col));
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Text rendering of the weight tableau of a nest of weighted coordinate
    /// subspaces.  Boxes are stacked with larger subspaces on top; the chosen
    /// control columns `h` (element ↦ column) are shown in parentheses.
    pub fn tableau_render(&self, nest: &[usize], h: Option<&BTreeMap<usize, usize>>) -> Result<String> {
        let mut nest: Vec<usize> = nest.to_vec();
        nest.sort_unstable();
        nest.dedup();
        let zeros: BTreeMap<usize, BTreeSet<usize>> = nest.iter().map(|&n| Ok((n, self.zeros(n)?))).collect::<Result<_>>()?;
        for &n in &nest {
            self.weights(n)?;
        }
        for (k, &a) in nest.iter().enumerate() {
            for &b in &nest[k + 1..] {
                if !zeros[&a].is_disjoint(&zeros[&b]) && !self.comparable(a, b) {
                    return Err(Error::Invalid(format!(
                        "boxes of {:?} and {:?} overlap without being nested; the building set is not separated",
                        self.elements[a].name, self.elements[b].name
                    )));
                }
            }
        }
        if let Some(h) = h {
            for (n, c) in h {
                if !zeros.get(n).is_some_and(|z| z.contains(c)) {
                    return Err(Error::Invalid(format!("marked column {c} is not normal to a nest element")));
                }
            }
        }
        // `children[n]`: nest elements directly stacked on top of n.
        let strictly_above = |n: usize| -> Vec<usize> { nest.iter().copied().filter(|&p| p != n && self.subset(n, p)).collect() };
        let direct_above = |n: usize| -> Vec<usize> {
            let ab = strictly_above(n);
            let mut d: Vec<usize> = ab.iter().copied().filter(|&p| !ab.iter().any(|&q| q != p && self.subset(q, p))).collect();
            d.sort_by_key(|p| zeros[p].iter().next().copied());
            d
        };
        let bottoms: Vec<usize> = {
            let mut b: Vec<usize> = nest.iter().copied().filter(|&n| !nest.iter().any(|&q| q != n && self.subset(q, n))).collect();
            b.sort_by_key(|p| zeros[p].iter().next().copied());
            b
        };
        fn order_cols(
            n: usize,
            zeros: &BTreeMap<usize, BTreeSet<usize>>,
            direct_above: &dyn Fn(usize) -> Vec<usize>,
            out: &mut Vec<usize>,
        ) {
            for c in direct_above(n) {
                order_cols(c, zeros, direct_above, out);
            }
            for &col in &zeros[&n] {
                if !out.contains(&col) {
                    out.push(col);
                }
            }
        }
        let mut cols = Vec::new();
        for &b in &bottoms {
            order_cols(b, &zeros, &direct_above, &mut cols);
        }
        for c in 0..self.dim {
            if !cols.contains(&c) {
                cols.push(c);
            }
        }
        fn height(n: usize, below: &dyn Fn(usize) -> Vec<usize>) -> usize {
            below(n).into_iter().map(|b| height(b, below) + 1).max().unwrap_or(0)
        }
        let below = |n: usize| -> Vec<usize> { nest.iter().copied().filter(|&q| q != n && self.subset(q, n)).collect() };
        let rows = nest.iter().map(|&n| height(n, &below) + 1).max().unwrap_or(0);
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let width = cols.iter().map(|c| format!("x{}", c + 1).len()).max().unwrap_or(2).max(3);
        let mut lines = Vec::new();
        for r in (0..rows).rev() {
            let mut cells = vec![String::new(); self.dim];
            let mut open = vec![' '; self.dim + 1];
            let mut close = vec![' '; self.dim + 1];
            for &n in nest.iter().filter(|&&n| height(n, &below) == r) {
                let w = self.weights(n)?;
                let ps: Vec<usize> = zeros[&n].iter().map(|c| pos[c]).collect();
                let (lo, hi) = (*ps.iter().min().unwrap(), *ps.iter().max().unwrap());
                open[lo] = '[';
                close[hi + 1] = ']';
                for &c in &zeros[&n] {
                    let marked = h.is_some_and(|h| h.get(&n) == Some(&c));
                    let v = w.get(c);
                    cells[pos[&c]] = if marked { format!("({v})") } else { format!("{v}") };
                }
            }
            let mut line = String::new();
            for p in 0..=self.dim {
                line.push(close[p]);
                line.push(open[p]);
                if p < self.dim {
                    line.push_str(&format!("{:^width$}", cells[p]));
                }
            }
            lines.push(line.trim_end().to_string());
        }
        let mut labels = String::new();
        for &c in &cols {
            labels.push_str("  ");
            labels.push_str(&format!("{:^width$}", format!("x{}", c + 1)));
        }
        lines.push(labels.trim_end().to_string());
        Ok(lines.join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn coord(dim: usize, spec: &[(&str, &[u32])]) -> BuildingSet {
        let _ = dim;
        BuildingSet::new(dim, spec.iter().map(|(n, w)| Element::weighted(n, w).unwrap()).collect()).unwrap()
    }

    #[test]
    fn two_lines_in_the_plane() {
        let g = coord(2, &[("G1", &[1, 0]), ("G2", &[0, 1])]);
        assert_eq!(g.arrangement().nodes.len(), 4);
        assert!(g.check_separated().0);
        assert_eq!(g.enumerate_nests().unwrap(), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        let (_, flags) = g.flags().unwrap();
        assert_eq!(flags.len(), 6);
    }

    #[test]
    fn three_lines_are_not_separated() {
        let l = |a: i64, b: i64| Flat::from_equations(2, vec![vec![q(a), q(b)]]);
        let g = BuildingSet::new(
            2,
            vec![Element::unweighted("G1", l(1, 0)), Element::unweighted("G2", l(0, 1)), Element::unweighted("G3", l(1, 1))],
        )
        .unwrap();
        let origin = Flat::coordinate(2, &BTreeSet::from([0, 1]));
        assert_eq!(g.factors(&origin).unwrap(), vec![0, 1, 2]);
        let (sep, w) = g.check_separated();
        assert!(!sep);
        assert_eq!(w, Some(origin));
    }

    #[test]
    fn factors_reject_non_lattice_elements() {
        let g = coord(3, &[("A", &[1, 1, 0])]);
        assert!(g.factors(&Flat::coordinate(3, &BTreeSet::from([0]))).is_err());
        assert_eq!(g.factors(g.flat(0)).unwrap(), vec![0]);
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(BuildingSet::new(2, vec![Element::weighted("A", &[1, 0]).unwrap(), Element::weighted("A", &[0, 1]).unwrap()]).is_err());
        assert!(BuildingSet::new(2, vec![Element::weighted("A", &[1, 0]).unwrap(), Element::weighted("B", &[2, 0]).unwrap()]).is_err());
        assert!(BuildingSet::new(2, vec![Element::weighted("A", &[0, 0]).unwrap()]).is_err());
    }

    #[test]
    fn single_element_is_valid() {
        let g = coord(3, &[("A", &[1, 2, 0])]);
        let d = g.check_weighted_building_set().unwrap();
        assert!(d.is_weighted_valid() && d.separated);
    }
}
