//! Building sets: separation, weighted validity, factors and nests, with
//! nest counts checked against an independent enumeration of laminar
//! families of index sets.

use std::collections::BTreeSet;
use wblowup::arrangements::{BuildingSet, Element};
use wblowup::catalog;
use wblowup::flat::Flat;
use wblowup::fm::fm_building_set;
use wblowup::rational::q;
use wblowup::verify::{nest_oracle, random_separated_building_set, VerifyConfig};

/// Nests of the diagonals of `s` points: families of index sets of size at
/// least two in which any two members are nested or disjoint.
fn laminar_families(s: usize) -> BTreeSet<BTreeSet<BTreeSet<usize>>> {
    let sets: Vec<BTreeSet<usize>> =
        (1u32..(1 << s)).filter(|m| m.count_ones() >= 2).map(|m| (0..s).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect();
    fn compatible(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
        a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)
    }
    fn grow(sets: &[BTreeSet<usize>], k: usize, cur: &mut Vec<BTreeSet<usize>>, out: &mut BTreeSet<BTreeSet<BTreeSet<usize>>>) {
        if k == sets.len() {
            out.insert(cur.iter().cloned().collect());
            return;
        }
        grow(sets, k + 1, cur, out);
        if cur.iter().all(|c| compatible(c, &sets[k])) {
            cur.push(sets[k].clone());
            grow(sets, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    grow(&sets, 0, &mut Vec::new(), &mut out);
    out
}

fn labels_of(name: &str) -> BTreeSet<usize> {
    name.trim_start_matches('D').chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
}

#[test]
fn two_lines_have_four_nests_and_five_flags() {
    let bs = catalog::two_lines().unwrap();
    let r = nest_oracle(&bs).unwrap();
    assert!(r.agrees);
    assert_eq!(r.non_empty_flags, 5);
    assert_eq!(r.nests.len(), 4);
    assert_eq!(r.nests.iter().filter(|n| !n.is_empty()).count(), 3);
}

#[test]
fn diagonal_nests_match_laminar_families() {
    for s in 3..=5 {
        let bs = fm_building_set(s, 1).unwrap();
        let ours: BTreeSet<BTreeSet<BTreeSet<usize>>> = bs
            .enumerate_nests()
            .unwrap()
            .iter()
            .map(|n| n.iter().map(|&g| labels_of(&bs.elements()[g].name)).collect())
            .collect();
        let oracle = laminar_families(s);
        assert_eq!(ours.len(), oracle.len(), "s = {s}");
        assert_eq!(ours, oracle, "s = {s}");
    }
    assert_eq!(laminar_families(3).len(), 8);
    assert_eq!(laminar_families(4).len(), 52);
}

#[test]
fn nest_characterizations_agree_on_random_sets() {
    let mut rng = VerifyConfig::with_seed(20).rng();
    let mut subsets_checked = 0;
    for _ in 0..200 {
        let bs = random_separated_building_set(&mut rng, 4, 6, &[1, 2, 3]).unwrap();
        let nests: BTreeSet<Vec<usize>> = bs.enumerate_nests().unwrap().into_iter().collect();
        for mask in 0u32..(1 << bs.len()) {
            let sub: Vec<usize> = (0..bs.len()).filter(|i| mask >> i & 1 == 1).collect();
            let a = bs.nest_by_factor_antichains(&sub);
            let b = bs.nest_by_intersections(&sub);
            let c = bs.nest_by_flags(&sub).unwrap();
            assert_eq!((a, b), (c, c), "{sub:?}");
            assert_eq!(nests.contains(&sub), c);
            subsets_checked += 1;
        }
    }
    assert!(subsets_checked >= 200);
}

#[test]
fn non_separated_pair_is_flagged_with_origin() {
    let bs = catalog::two_axes_in_r3().unwrap();
    let (sep, witness) = bs.check_separated();
    assert!(!sep);
    assert_eq!(witness.unwrap(), Flat::coordinate(3, &BTreeSet::from([0, 1, 2])));
}

#[test]
fn misaligned_pair_is_flagged() {
    let bs = catalog::misaligned_pair().unwrap();
    let d = bs.check_weighted_building_set().unwrap();
    assert!(d.separated);
    assert!(!d.alignment_violations.is_empty());
    assert!(d.alignment_violations.iter().all(|(_, col)| *col == 1));
    assert!(!d.is_weighted_valid());
}

#[test]
fn maximum_rule_matches_brute_force() {
    let mut rng = VerifyConfig::with_seed(21).rng();
    for _ in 0..60 {
        let bs = random_separated_building_set(&mut rng, 4, 5, &[1, 2, 3]).unwrap();
        let d = bs.check_weighted_building_set().unwrap();
        let mut exact = d.max_rule_violations.clone();
        exact.sort();
        assert_eq!(exact, bs.max_rule_brute_force().unwrap());
    }
    // A column weight that grows along an inclusion breaks the rule.
    let bs = BuildingSet::new(2, vec![Element::weighted("P", &[1, 1]).unwrap(), Element::weighted("L", &[0, 2]).unwrap()]).unwrap();
    let d = bs.check_weighted_building_set().unwrap();
    assert_eq!(d.max_rule_violations, bs.max_rule_brute_force().unwrap());
    assert!(!d.max_rule_violations.is_empty());
}

#[test]
fn factors_of_intersections() {
    let bs = catalog::two_lines().unwrap();
    let origin = bs.meet_of(&[0, 1]);
    assert_eq!(bs.factors(&origin).unwrap(), vec![0, 1]);
    let fm = fm_building_set(4, 1).unwrap();
    let d12 = fm.index_of("D12").unwrap();
    let d34 = fm.index_of("D34").unwrap();
    let d23 = fm.index_of("D23").unwrap();
    assert_eq!(fm.factors(&fm.meet_of(&[d12, d34])).unwrap(), vec![d12, d34]);
    assert_eq!(fm.factors(&fm.meet_of(&[d12, d23])).unwrap(), vec![fm.index_of("D123").unwrap()]);
}

#[test]
fn general_flats_are_supported() {
    let line = Flat::from_equations(2, vec![vec![q(1), q(-1)]]);
    let bs = BuildingSet::new(2, vec![Element::unweighted("diag", line), Element::unweighted("origin", Flat::coordinate(2, &BTreeSet::from([0, 1])))]).unwrap();
    assert!(bs.check_separated().0);
    assert_eq!(bs.enumerate_nests().unwrap().len(), 4);
}
