//! Fixtures shared by the kernel benchmarks.

use superharm::random::SuperRng;
use superharm::{Flavor, ReflectionGroup, SuperPoly};

pub fn group(id: &str) -> ReflectionGroup {
    ReflectionGroup::builtin(id).expect("built-in group")
}

/// Deterministic pairs of dual-flavor operands for `dot`.
pub fn operand_pairs(group: &ReflectionGroup, count: usize, seed: u64) -> Vec<(SuperPoly, SuperPoly)> {
    let mut rng = SuperRng::new(seed, group.n(), group.conductor());
    (0..count)
        .map(|_| {
            (
                rng.superpoly(Flavor::DualExterior, 2, false),
                rng.superpoly(Flavor::DualExterior, 4, false),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        let g = group("B2");
        assert_eq!(operand_pairs(&g, 3, 5), operand_pairs(&g, 3, 5));
    }
}
