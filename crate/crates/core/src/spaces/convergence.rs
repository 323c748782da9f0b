//! Horizon-bounded convergence verdicts.
//!
//! A finite prefix can neither prove nor refute convergence outright, so the
//! verdict is three-valued. Per enumerated basic around the candidate limit:
//!
//! * basics the prefix never enters are beyond the horizon's resolution and
//!   abstain;
//! * a basic the prefix enters and then keeps leaving near the end is
//!   divergence evidence (`CertifiedNo`);
//! * a basic with an exit-free tail supports convergence.
//!
//! `TentativelyYes` needs every non-abstaining basic to support convergence
//! and at least one of them to exist.

use super::basic::BasicOpen;
use super::point::Point;
use super::presentation::SpacePresentation;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ConvergenceVerdict {
    TentativelyYes,
    CertifiedNo { witness: BasicOpen },
    Undetermined,
}

enum BasicStatus {
    Abstain,
    TailOk,
    Unsettled,
    Divergent,
}

fn status_for(prefix: &[Point], basic: &BasicOpen, tail_start: usize) -> BasicStatus {
    let mut first_entry: Option<usize> = None;
    let mut last_exit: Option<usize> = None;
    for (i, p) in prefix.iter().enumerate() {
        if basic.contains(p) {
            first_entry.get_or_insert(i);
        } else {
            last_exit = Some(i);
        }
    }
    let Some(entry) = first_entry else {
        return BasicStatus::Abstain;
    };
    match last_exit {
        None => BasicStatus::TailOk,
        Some(exit) if exit < tail_start => BasicStatus::TailOk,
        Some(exit) if entry < exit => BasicStatus::Divergent,
        Some(_) => BasicStatus::Unsettled,
    }
}

/// Adjudicates whether `prefix` looks convergent to `x` against the first
/// `basis_budget` neighborhood basics of `x`.
pub fn converges_at_horizon(
    prefix: &[Point],
    x: &Point,
    space: &SpacePresentation,
    basis_budget: u64,
) -> Result<ConvergenceVerdict> {
    if prefix.is_empty() {
        return Err(Error::InvalidInput("prefix must be nonempty".into()));
    }
    if !space.contains_point(x) {
        return Err(Error::InvalidInput(format!(
            "candidate limit {x:?} is not in {}",
            space.label()
        )));
    }
    let tail_start = prefix.len() - (prefix.len() / 4).max(1);
    let mut supporting = 0u64;
    let mut unsettled = 0u64;
    for basic in space.neighborhood_basics(x, basis_budget) {
        match status_for(prefix, &basic, tail_start) {
            BasicStatus::Divergent => {
                return Ok(ConvergenceVerdict::CertifiedNo { witness: basic })
            }
            BasicStatus::TailOk => supporting += 1,
            BasicStatus::Unsettled => unsettled += 1,
            BasicStatus::Abstain => {}
        }
    }
    if unsettled == 0 && supporting > 0 {
        Ok(ConvergenceVerdict::TentativelyYes)
    } else {
        Ok(ConvergenceVerdict::Undetermined)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_prefix_tentatively_converges_everywhere() {
        let spaces = [
            SpacePresentation::discrete_nat(),
            SpacePresentation::rationals(),
        ];
        let points = [Point::nat(5), Point::rat(1, 3)];
        for (space, x) in spaces.iter().zip(points) {
            let prefix = vec![x.clone(); 20];
            for budget in [1, 3, 10] {
                assert_eq!(
                    converges_at_horizon(&prefix, &x, space, budget).unwrap(),
                    ConvergenceVerdict::TentativelyYes
                );
            }
        }
    }

    #[test]
    fn reciprocals_tentatively_converge_to_zero_at_any_budget() {
        let space = SpacePresentation::rationals();
        let prefix: Vec<Point> = (1..=64).map(|n| Point::rat(1, n)).collect();
        for budget in [1, 4, 8, 20, 40] {
            assert_eq!(
                converges_at_horizon(&prefix, &Point::rat(0, 1), &space, budget).unwrap(),
                ConvergenceVerdict::TentativelyYes,
                "budget {budget}"
            );
        }
    }

    #[test]
    fn alternating_prefix_is_certified_divergent() {
        let space = SpacePresentation::discrete_nat();
        let prefix: Vec<Point> = (0..30)
            .map(|i| Point::nat(if i % 2 == 0 { 1 } else { 2 }))
            .collect();
        match converges_at_horizon(&prefix, &Point::nat(1), &space, 3).unwrap() {
            ConvergenceVerdict::CertifiedNo { witness } => {
                assert_eq!(witness, BasicOpen::Singleton(Point::nat(1)));
            }
            other => panic!("expected certified-no, got {other:?}"),
        }
    }

    #[test]
    fn never_entered_neighborhoods_abstain() {
        // The prefix marches away from 0 but never visits it; continuations
        // could still converge there, so the verdict must stay open.
        let space = SpacePresentation::discrete_nat();
        let prefix: Vec<Point> = (10..40).map(Point::nat).collect();
        assert_eq!(
            converges_at_horizon(&prefix, &Point::nat(1), &space, 2).unwrap(),
            ConvergenceVerdict::Undetermined
        );
    }

    #[test]
    fn rejects_foreign_limit_points() {
        let space = SpacePresentation::discrete_nat();
        let prefix = vec![Point::nat(1)];
        assert!(converges_at_horizon(&prefix, &Point::rat(1, 2), &space, 2).is_err());
        assert!(converges_at_horizon(&[], &Point::nat(1), &space, 2).is_err());
    }
}
