//! Small named building sets used by the verification suites, the tests and
//! the command-line `verify` runner.

use crate::arrangements::{BuildingSet, Element};
use crate::error::Result;

/// The two coordinate axes of ℝ² (unit weights): `G1 = {x₂ = 0}`, `G2 = {x₁ = 0}`.
pub fn two_lines() -> Result<BuildingSet> {
    BuildingSet::new(2, vec![Element::weighted("G1", &[0, 1])?, Element::weighted("G2", &[1, 0])?])
}

/// The x₂-axis and x₁-axis of ℝ³: they meet at the origin without their
/// normal directions being independent.
pub fn two_axes_in_r3() -> Result<BuildingSet> {
    BuildingSet::new(3, vec![Element::weighted("G4", &[1, 0, 1])?, Element::weighted("G5", &[0, 1, 1])?])
}

/// The x₃-axis with weights (1,1,0) and the origin with weights (1,2,1) in
/// ℝ³: nested, but the second column carries two different non-zero weights.
pub fn misaligned_pair() -> Result<BuildingSet> {
    BuildingSet::new(3, vec![Element::weighted("A", &[1, 1, 0])?, Element::weighted("B", &[1, 2, 1])?])
}

/// A two-element nest `A ⊂ B` in ℝ⁶: `B` cut out by the first three
/// coordinates with weights (1,2,1), `A` by the first five with weights
/// (1,2,1,2,3).
pub fn column_example() -> Result<BuildingSet> {
    BuildingSet::new(6, vec![Element::weighted("A", &[1, 2, 1, 2, 3, 0])?, Element::weighted("B", &[1, 2, 1, 0, 0, 0])?])
}

/// A nest `A ⊂ B` in ℝ² with `A` the origin (weights (1,2)) and `B` the
/// x₁-axis (weight 2 on x₂), whose corner is singular when both controls
/// vanish and `B`'s control weight exceeds one.
pub fn umbrella_pair() -> Result<BuildingSet> {
    BuildingSet::new(2, vec![Element::weighted("A", &[1, 2])?, Element::weighted("B", &[0, 2])?])
}
