//! The weighted Fulton–MacPherson configuration space of `s` labelled points
//! in ℝ^m with a constant coordinate filtration: index nests, covering
//! forests, offset coordinates, the local model and its blow-down, limits of
//! colliding polynomial curves, and screens.
//!
//! Point labels are 1-based throughout, matching the usual `{1, …, s}`.

use crate::arrangements::{BuildingSet, Element};
use crate::blowup::weighted_unit_scale;
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::jets::{Series, WeightVector};
use crate::rational::{q, q_to_f64, Q};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::{Add, Sub};

/// A set of point labels.
pub type Labels = BTreeSet<usize>;

/// A family of label sets of size ≥ 2, pairwise nested or disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexNest {
    s: usize,
    members: Vec<Labels>,
}

fn size_order(a: &Labels, b: &Labels) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl IndexNest {
    /// Members are stored in non-decreasing size, then lexicographically.
    pub fn new(s: usize, members: impl IntoIterator<Item = Labels>) -> Result<IndexNest> {
        let mut members: Vec<Labels> = members.into_iter().collect();
        members.sort_by(size_order);
        members.dedup();
        for m in &members {
            if m.len() < 2 {
                return Err(Error::Invalid(format!("nest member {m:?} has fewer than two labels")));
            }
            if m.iter().any(|&l| l == 0 || l > s) {
                return Err(Error::Invalid(format!("nest member {m:?} has labels outside 1..={s}")));
            }
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !(a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)) {
                    return Err(Error::Invalid(format!("members {a:?} and {b:?} overlap without nesting")));
                }
            }
        }
        Ok(IndexNest { s, members })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn members(&self) -> &[Labels] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, n: &Labels) -> Option<usize> {
        self.members.iter().position(|m| m == n)
    }

    /// The smallest member strictly containing member `k`.
    pub fn parent(&self, k: usize) -> Option<usize> {
        let n = &self.members[k];
        (0..self.members.len())
            .filter(|&j| j != k && n.is_subset(&self.members[j]))
            .min_by(|&a, &b| size_order(&self.members[a], &self.members[b]))
    }
}

/// Renders a label set compactly, e.g. `{1,2,3}` → `123` (labels < 10) or `1-2-13`.
pub fn label_name(n: &Labels) -> String {
    if n.iter().all(|&l| l < 10) {
        n.iter().map(|l| l.to_string()).collect()
    } else {
        n.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("-")
    }
}

/// A parent map on labels `1..=s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    s: usize,
    parent: BTreeMap<usize, usize>,
}

impl Forest {
    /// Validates labels and acyclicity.
    pub fn new(s: usize, parent: BTreeMap<usize, usize>) -> Result<Forest> {
        for (&c, &p) in &parent {
            if c == 0 || c > s || p == 0 || p > s || c == p {
                return Err(Error::Invalid(format!("invalid forest edge {c} -> {p}")));
            }
        }
        for &start in parent.keys() {
            let mut seen = BTreeSet::from([start]);
            let mut cur = start;
            while let Some(&p) = parent.get(&cur) {
                if !seen.insert(p) {
                    return Err(Error::Invalid(format!("forest has a cycle through {start}")));
                }
                cur = p;
            }
        }
        Ok(Forest { s, parent })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn parent_map(&self) -> &BTreeMap<usize, usize> {
        &self.parent
    }

    pub fn parent(&self, l: usize) -> Option<usize> {
        self.parent.get(&l).copied()
    }

    pub fn roots(&self) -> Labels {
        (1..=self.s).filter(|l| !self.parent.contains_key(l)).collect()
    }

    pub fn children(&self, l: usize) -> Labels {
        self.parent.iter().filter(|(_, &p)| p == l).map(|(&c, _)| c).collect()
    }

    /// `l` together with all its descendants.
    pub fn descendants(&self, l: usize) -> Labels {
        let mut out = BTreeSet::from([l]);
        let mut stack = vec![l];
        while let Some(x) = stack.pop() {
            for c in self.children(x) {
                if out.insert(c) {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Labels ordered so that every parent precedes its children.
    fn topological(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.s);
        let mut stack: Vec<usize> = self.roots().into_iter().rev().collect();
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children(x).into_iter().rev());
        }
        out
    }

    /// Members of `n` whose parent lies outside `n` (the tops of `n`).
    pub fn tops(&self, n: &Labels) -> Labels {
        n.iter().copied().filter(|l| self.parent(*l).map_or(true, |p| !n.contains(&p))).collect()
    }
}

/// A covering forest of a nest with its control sets `Ct_N` (aligned with
/// the nest's member order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub nest: IndexNest,
    pub forest: Forest,
    pub controls: Vec<Labels>,
}

impl Covering {
    pub fn roots(&self) -> Labels {
        self.forest.roots()
    }

    /// The top label of member `k`.
    pub fn top(&self, k: usize) -> usize {
        *self.forest.tops(&self.nest.members[k]).iter().next().expect("non-empty member")
    }

    /// The member whose control set contains `l`, if any.
    pub fn control_owner(&self, l: usize) -> Option<usize> {
        self.controls.iter().position(|c| c.contains(&l))
    }
}

/// The covering forest built by processing members in non-decreasing size
/// and attaching all current roots inside each member under the
/// smallest-index one.
pub fn covering_forest(nest: &IndexNest) -> Covering {
    covering_forest_with(nest, |_, roots| *roots.iter().next().expect("non-empty"))
        .expect("default root choice is always valid")
}

/// As [`covering_forest`], with an explicit root choice per member (aligned
/// with the nest's member order).
pub fn covering_forest_with_roots(nest: &IndexNest, roots: &[usize]) -> Result<Covering> {
    if roots.len() != nest.len() {
        return Err(Error::DimensionMismatch { expected: nest.len(), found: roots.len() });
    }
    covering_forest_with(nest, |k, _| roots[k])
}

fn covering_forest_with(nest: &IndexNest, choose: impl Fn(usize, &Labels) -> usize) -> Result<Covering> {
    let mut current: Labels = (1..=nest.s).collect();
    let mut parent = BTreeMap::new();
    let mut controls = Vec::with_capacity(nest.len());
    for (k, n) in nest.members.iter().enumerate() {
        let inside: Labels = current.intersection(n).copied().collect();
        let r = choose(k, &inside);
        if !inside.contains(&r) {
            return Err(Error::Invalid(format!("label {r} is not a current root inside {}", label_name(n))));
        }
        let ct: Labels = inside.iter().copied().filter(|&x| x != r).collect();
        for &x in &ct {
            parent.insert(x, r);
            current.remove(&x);
        }
        controls.push(ct);
    }
    Ok(Covering { nest: nest.clone(), forest: Forest::new(nest.s, parent)?, controls })
}

/// Control sets of a given forest: `l ∈ Ct_N` when `N` is the smallest member
/// containing `l` as a non-top label.
pub fn controls_of(nest: &IndexNest, forest: &Forest) -> Vec<Labels> {
    let mut controls = vec![Labels::new(); nest.len()];
    for l in 1..=nest.s {
        let owner = (0..nest.len())
            .filter(|&k| nest.members[k].contains(&l) && !forest.tops(&nest.members[k]).contains(&l))
            .min_by(|&a, &b| size_order(&nest.members[a], &nest.members[b]));
        if let Some(k) = owner {
            controls[k].insert(l);
        }
    }
    controls
}

/// Checks that `forest` covers `nest`: every member is a connected subtree,
/// the descendants of every node with children form a member, and roots and
/// control sets partition the labels.  Returns the covering on success.
pub fn check_covering(nest: &IndexNest, forest: &Forest) -> Result<Covering> {
    if nest.s != forest.s {
        return Err(Error::DimensionMismatch { expected: nest.s, found: forest.s });
    }
    for n in &nest.members {
        if forest.tops(n).len() != 1 {
            return Err(Error::Invalid(format!("member {} is not a connected subtree", label_name(n))));
        }
    }
    for l in 1..=nest.s {
        if !forest.children(l).is_empty() {
            let d = forest.descendants(l);
            if nest.position(&d).is_none() {
                return Err(Error::Invalid(format!("descendants of {l} ({}) do not form a member", label_name(&d))));
            }
        }
    }
    let controls = controls_of(nest, forest);
    let mut seen = forest.roots();
    for c in &controls {
        for &l in c {
            if !seen.insert(l) {
                return Err(Error::Invalid(format!("label {l} is both a root and a control")));
            }
        }
    }
    if seen.len() != nest.s {
        return Err(Error::Invalid("roots and controls do not partition the labels".into()));
    }
    Ok(Covering { nest: nest.clone(), forest: forest.clone(), controls })
}

/// Unions of the connected components of the overlap graph.
pub fn factorize(sets: &[Labels]) -> BTreeSet<Labels> {
    let n = sets.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut c = x;
        while uf[c] != r {
            let next = uf[c];
            uf[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if !sets[i].is_disjoint(&sets[j]) {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                uf[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Labels> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut uf, i);
        groups.entry(r).or_default().extend(sets[i].iter().copied());
    }
    groups.into_values().collect()
}

/// Offset coordinates: roots keep their position, children carry the
/// difference to their parent.  `config[l - 1]` is the point labelled `l`.
pub fn offset_fwd<T>(forest: &Forest, config: &[Vec<T>]) -> Result<Vec<Vec<T>>>
where
    T: Clone + Sub<Output = T>,
{
    check_config(forest.s, config)?;
    Ok((1..=forest.s)
        .map(|l| match forest.parent(l) {
            None => config[l - 1].clone(),
            Some(p) => config[l - 1].iter().zip(&config[p - 1]).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
        .collect())
}

/// Inverse of [`offset_fwd`], recomposing from the roots down.
pub fn offset_inv<T>(forest: &Forest, offsets: &[Vec<T>]) -> Result<Vec<Vec<T>>>
where
    T: Clone + Add<Output = T>,
{
    check_config(forest.s, offsets)?;
    let mut out: Vec<Option<Vec<T>>> = vec![None; forest.s];
    for l in forest.topological() {
        out[l - 1] = Some(match forest.parent(l) {
            None => offsets[l - 1].clone(),
            Some(p) => {
                let base = out[p - 1].as_ref().expect("parent first");
                offsets[l - 1].iter().zip(base).map(|(a, b)| a.clone() + b.clone()).collect()
            }
        });
    }
    Ok(out.into_iter().map(|x| x.expect("all labels visited")).collect())
}

fn check_config<T>(s: usize, config: &[Vec<T>]) -> Result<()> {
    if config.len() != s {
        return Err(Error::DimensionMismatch { expected: s, found: config.len() });
    }
    if let Some(first) = config.first() {
        if let Some(bad) = config.iter().find(|p| p.len() != first.len()) {
            return Err(Error::DimensionMismatch { expected: first.len(), found: bad.len() });
        }
    }
    Ok(())
}

/// A point of the local model: root positions, a unit screen per nest member
/// (rows = labels of `Ct_N` in increasing order, columns = coordinates) and a
/// control parameter per member.
#[derive(Clone, Debug, PartialEq)]
pub struct FmModelPoint {
    pub weights: WeightVector,
    pub covering: Covering,
    /// Position of every root label.
    pub roots: BTreeMap<usize, Vec<f64>>,
    /// Per member, the screen in row-major (control × coordinate) order.
    pub screens: Vec<Vec<f64>>,
    pub t: Vec<f64>,
}

impl FmModelPoint {
    /// Screen row of label `l` in member `k`'s block.
    pub fn screen_row(&self, k: usize, l: usize) -> Option<&[f64]> {
        let m = self.weights.len();
        let pos = self.covering.controls[k].iter().position(|&x| x == l)?;
        Some(&self.screens[k][pos * m..(pos + 1) * m])
    }
}

fn block_weights(w: &WeightVector, rows: usize) -> Vec<u32> {
    (0..rows).flat_map(|_| w.as_slice().iter().copied()).collect()
}

/// The local-model coordinates of a bulk configuration.
pub fn fm_chart(w: &WeightVector, covering: &Covering, config: &[Vec<f64>]) -> Result<FmModelPoint> {
    if config.iter().any(|p| p.len() != w.len()) {
        return Err(Error::DimensionMismatch { expected: w.len(), found: config.iter().map(Vec::len).find(|&n| n != w.len()).unwrap_or(0) });
    }
    if w.as_slice().contains(&0) {
        return Err(Error::Invalid("weight sequence entries must be at least 1".into()));
    }
    let off = offset_fwd(&covering.forest, config)?;
    let nest = &covering.nest;
    let mut scale = Vec::with_capacity(nest.len());
    let mut screens = Vec::with_capacity(nest.len());
    for (k, ct) in covering.controls.iter().enumerate() {
        let block: Vec<f64> = ct.iter().flat_map(|&l| off[l - 1].iter().copied()).collect();
        let bw = block_weights(w, ct.len());
        let mu = weighted_unit_scale(&block, &bw).map_err(|_| {
            Error::OutsideDomain(format!("points of {} coincide (empty screen)", label_name(&nest.members[k])))
        })?;
        screens.push(block.iter().zip(&bw).map(|(x, &wi)| x / mu.powi(wi as i32)).collect());
        scale.push(mu);
    }
    let t = (0..nest.len()).map(|k| scale[k] / nest.parent(k).map_or(1.0, |p| scale[p])).collect();
    let roots = covering.roots().into_iter().map(|l| (l, config[l - 1].clone())).collect();
    Ok(FmModelPoint { weights: w.clone(), covering: covering.clone(), roots, screens, t })
}

/// The blow-down map of the local model.
pub fn fm_blow_down(p: &FmModelPoint) -> Result<Vec<Vec<f64>>> {
    let cov = &p.covering;
    let m = p.weights.len();
    let s = cov.nest.s;
    let mut off = vec![vec![0.0; m]; s];
    for l in 1..=s {
        if let Some(r) = p.roots.get(&l) {
            off[l - 1] = r.clone();
            continue;
        }
        let par = cov.forest.parent(l).ok_or_else(|| Error::Invalid(format!("label {l} has no root position")))?;
        let k = cov.control_owner(l).ok_or_else(|| Error::Invalid(format!("label {l} has no screen")))?;
        let row = p.screen_row(k, l).expect("owner row");
        for (i, x) in row.iter().enumerate() {
            let factor: f64 = (0..cov.nest.len())
                .filter(|&j| cov.nest.members[j].contains(&l) && cov.nest.members[j].contains(&par))
                .map(|j| p.t[j].powi(p.weights.get(i) as i32))
                .product();
            off[l - 1][i] = x * factor;
        }
    }
    offset_inv(&cov.forest, &off)
}

/// Exact weighted vanishing order `min_i ord(Δ_i) / w_i` of an offset; `None`
/// when the offset vanishes identically.
fn weighted_order(delta: &[Series], w: &WeightVector) -> Option<Ratio<i64>> {
    delta
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.valuation().map(|v| Ratio::new(v as i64, w.get(i) as i64)))
        .min()
}

/// The collision limit `t → 0⁺` of polynomial curves `curves[l - 1][i]`.
/// Collision groups are detected from exact weighted vanishing orders; the
/// resulting point has every detected control equal to zero.
pub fn curve_limit(w: &WeightVector, curves: &[Vec<Series>]) -> Result<FmModelPoint> {
    let s = curves.len();
    if let Some(bad) = curves.iter().find(|c| c.len() != w.len()) {
        return Err(Error::DimensionMismatch { expected: w.len(), found: bad.len() });
    }
    if w.as_slice().contains(&0) {
        return Err(Error::Invalid("weight sequence entries must be at least 1".into()));
    }
    let diff = |a: usize, b: usize| -> Vec<Series> { (0..w.len()).map(|i| curves[a - 1][i].sub(&curves[b - 1][i])).collect() };
    let mut kappa: BTreeMap<(usize, usize), Ratio<i64>> = BTreeMap::new();
    for a in 1..=s {
        for b in a + 1..=s {
            let k = weighted_order(&diff(a, b), w)
                .ok_or_else(|| Error::OutsideDomain(format!("points {a} and {b} coincide for all t")))?;
            kappa.insert((a, b), k);
        }
    }
    let kab = |a: usize, b: usize| kappa[&(a.min(b), a.max(b))];
    // Balls of the ultrametric at every positive level.
    let levels: BTreeSet<Ratio<i64>> = kappa.values().copied().filter(|k| *k > Ratio::zero()).collect();
    let mut members: BTreeSet<Labels> = BTreeSet::new();
    for &lvl in &levels {
        let mut unassigned: Labels = (1..=s).collect();
        while let Some(&a) = unassigned.iter().next() {
            let ball: Labels = unassigned.iter().copied().filter(|&b| b == a || kab(a, b) >= lvl).collect();
            for b in &ball {
                unassigned.remove(b);
            }
            if ball.len() >= 2 {
                members.insert(ball);
            }
        }
    }
    let nest = IndexNest::new(s, members)?;
    let covering = covering_forest(&nest);
    let mut screens = Vec::with_capacity(nest.len());
    for (k, ct) in covering.controls.iter().enumerate() {
        let n = &nest.members()[k];
        let level = n.iter().flat_map(|&a| n.iter().filter(move |&&b| b > a).map(move |&b| (a, b))).map(|(a, b)| kab(a, b)).min().expect("member of size ≥ 2");
        let mut block = Vec::new();
        for &l in ct {
            let par = covering.forest.parent(l).expect("control has a parent");
            for (i, d) in diff(l, par).iter().enumerate() {
                let e = level * Ratio::from_integer(w.get(i) as i64);
                block.push(if e.is_integer() { q_to_f64(&d.coeff(e.to_integer().to_usize().unwrap_or(usize::MAX))) } else { 0.0 });
            }
        }
        let bw = block_weights(w, ct.len());
        let mu = weighted_unit_scale(&block, &bw)?;
        screens.push(block.iter().zip(&bw).map(|(x, &wi)| x / mu.powi(wi as i32)).collect());
    }
    let roots = covering.roots().into_iter().map(|l| (l, curves[l - 1].iter().map(|c| q_to_f64(&c.coeff(0))).collect())).collect();
    let t = vec![0.0; nest.len()];
    Ok(FmModelPoint { weights: w.clone(), covering, roots, screens, t })
}

/// Curves from exponent/coefficient pairs.
pub fn series_from_pairs(pairs: &[(usize, Q)]) -> Series {
    let top = pairs.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let mut coeffs = vec![q(0); top + 1];
    for (e, c) in pairs {
        coeffs[*e] += c.clone();
    }
    Series::new(coeffs)
}

/// Name of the element of the induced building set for member `n`.
pub fn member_element_name(n: &Labels) -> String {
    format!("D{}", label_name(n))
}

/// The weighted building set on ℝ^{s·m} (offset coordinates, label `l`
/// coordinate `j` at index `(l-1)·m + j`) with one element per nest member,
/// cut out by the offsets of its non-top labels.
pub fn induced_diag_building_set(w: &WeightVector, covering: &Covering) -> Result<BuildingSet> {
    check_covering(&covering.nest, &covering.forest)?;
    let m = w.len();
    let s = covering.nest.s;
    let mut elements = Vec::with_capacity(covering.nest.len());
    for (k, n) in covering.nest.members().iter().enumerate() {
        let top = covering.top(k);
        let mut weights = vec![0u32; s * m];
        for &l in n.iter().filter(|&&l| l != top) {
            for j in 0..m {
                weights[(l - 1) * m + j] = w.get(j);
            }
        }
        elements.push(Element::weighted(&member_element_name(n), &weights)?);
    }
    BuildingSet::new(s * m, elements)
}

/// The diagonal `{x_a = x_b : a, b ∈ n}` in (ℝ^m)^s.
pub fn diagonal_flat(s: usize, m: usize, n: &Labels) -> Flat {
    let mut rows = Vec::new();
    let mut it = n.iter();
    let first = *it.next().expect("non-empty");
    for &b in it {
        for j in 0..m {
            let mut row = vec![q(0); s * m];
            row[(first - 1) * m + j] = q(1);
            row[(b - 1) * m + j] = q(-1);
            rows.push(row);
        }
    }
    Flat::from_equations(s * m, rows)
}

/// All label subsets of size ≥ 2, by size then lexicographically.
pub fn diagonal_index_sets(s: usize) -> Vec<Labels> {
    let mut out: Vec<Labels> = (0u32..(1u32 << s))
        .filter(|mask| mask.count_ones() >= 2)
        .map(|mask| (1..=s).filter(|&l| mask & (1 << (l - 1)) != 0).collect())
        .collect();
    out.sort_by(size_order);
    out
}

/// The (unweighted) building set of all diagonals of (ℝ^m)^s.
pub fn fm_building_set(s: usize, m: usize) -> Result<BuildingSet> {
    let elements = diagonal_index_sets(s)
        .iter()
        .map(|n| Element::unweighted(&member_element_name(n), diagonal_flat(s, m, n)))
        .collect();
    BuildingSet::new(s * m, elements)
}

/// Outcome of checking the weighted FM data for `s` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmCheck {
    pub separated: bool,
    pub nests_checked: usize,
    /// Nests whose induced offset building set fails the weighted checks.
    pub failing_nests: Vec<IndexNest>,
}

impl FmCheck {
    pub fn passed(&self) -> bool {
        self.separated && self.failing_nests.is_empty()
    }
}

/// Checks separation of the diagonals and, for every nest, that the induced
/// offset building set is a valid, uniformly aligned weighted building set.
pub fn fm_check(s: usize, w: &WeightVector) -> Result<FmCheck> {
    let bs = fm_building_set(s, 1)?;
    let (separated, _) = bs.check_separated();
    let nests = brute_force_index_nests(s);
    let mut failing = Vec::new();
    for nest in &nests {
        let cov = covering_forest(nest);
        let ibs = induced_diag_building_set(w, &cov)?;
        let diag = ibs.check_weighted_building_set()?;
        if !diag.is_weighted_valid() {
            failing.push(nest.clone());
        }
    }
    Ok(FmCheck { separated, nests_checked: nests.len(), failing_nests: failing })
}

/// Every index nest on `s` labels, found by brute-force search over families
/// of label subsets (including the empty nest).
pub fn brute_force_index_nests(s: usize) -> Vec<IndexNest> {
    let sets = diagonal_index_sets(s);
    let mut out = Vec::new();
    fn rec(sets: &[Labels], i: usize, chosen: &mut Vec<Labels>, s: usize, out: &mut Vec<IndexNest>) {
        if i == sets.len() {
            out.push(IndexNest::new(s, chosen.clone()).expect("compatible by construction"));
            return;
        }
        rec(sets, i + 1, chosen, s, out);
        let c = &sets[i];
        if chosen.iter().all(|d| c.is_subset(d) || d.is_subset(c) || c.is_disjoint(d)) {
            chosen.push(c.clone());
            rec(sets, i + 1, chosen, s, out);
            chosen.pop();
        }
    }
    rec(&sets, 0, &mut Vec::new(), s, &mut out);
    out
}

/// Canonical representative in the projective local model: per member,
/// `(screen, t)` ~ `((−1)^w · screen, −t)`; the representative has `t ≥ 0`
/// and, at `t = 0`, the lexicographically larger screen.  The flags mark
/// members whose screen is fixed by the identification at `t = 0`.
pub fn fm_projective_canonicalize(p: &FmModelPoint) -> (FmModelPoint, Vec<bool>) {
    let mut out = p.clone();
    let m = p.weights.len();
    let mut singular = Vec::with_capacity(p.t.len());
    for k in 0..p.t.len() {
        let flipped: Vec<f64> =
            p.screens[k].iter().enumerate().map(|(j, x)| if p.weights.get(j % m) % 2 == 1 { -x } else { *x }).collect();
        let take_flip = if p.t[k] < 0.0 {
            true
        } else if p.t[k] == 0.0 {
            flipped.iter().zip(&p.screens[k]).find(|(a, b)| a != b).is_some_and(|(a, b)| a > b)
        } else {
            false
        };
        if take_flip {
            out.screens[k] = flipped.clone();
            out.t[k] = -p.t[k];
        }
        out.t[k] = out.t[k].abs();
        singular.push(out.t[k] == 0.0 && flipped == p.screens[k]);
    }
    (out, singular)
}

fn fmt_vec(v: &[f64]) -> String {
    format!("({})", v.iter().map(|x| crate::rational::fmt_f64(*x)).collect::<Vec<_>>().join(", "))
}

/// Text rendering of a model point: one tree per collision site.
pub fn screens_render(p: &FmModelPoint) -> String {
    let cov = &p.covering;
    let nest = &cov.nest;
    let mut out = String::new();
    fn render_member(p: &FmModelPoint, k: usize, depth: usize, out: &mut String) {
        let cov = &p.covering;
        let nest = &cov.nest;
        let pad = "  ".repeat(depth);
        let _ = writeln!(out, "{pad}[{}] top {} t = {}", label_name(&nest.members()[k]), cov.top(k), crate::rational::fmt_f64(p.t[k]));
        for &l in &cov.controls[k] {
            let row = p.screen_row(k, l).expect("row");
            let _ = writeln!(out, "{pad}  {} -> {}: {}", l, cov.forest.parent(l).expect("parent"), fmt_vec(row));
        }
        let mut kids: Vec<usize> = (0..nest.len()).filter(|&j| nest.parent(j) == Some(k)).collect();
        kids.sort_by_key(|&j| cov.top(j));
        for j in kids {
            render_member(p, j, depth + 1, out);
        }
    }
    for (&l, x) in &p.roots {
        let _ = writeln!(out, "x{l} = {}", fmt_vec(x));
        let tops: Vec<usize> = (0..nest.len()).filter(|&k| nest.parent(k).is_none() && cov.top(k) == l).collect();
        for k in tops {
            render_member(p, k, 1, &mut out);
        }
    }
    out
}
