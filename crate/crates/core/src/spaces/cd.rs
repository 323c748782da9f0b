//! Certificate search for closed, relatively discrete point sets.
//!
//! Closedness at desk scale is probe-based: up to `budget` outside points are
//! each required to have an enumerated basic avoiding the whole set. Absence
//! of a certificate is always "undetermined within budget" — an infinite
//! universe cannot be exhausted, so nothing here ever refutes membership.

use super::basic::BasicOpen;
use super::point::Point;
use super::presentation::SpacePresentation;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// One avoiding basic per probed outside point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosednessProbe {
    pub probes_checked: u64,
    pub avoiding: Vec<(Point, BasicOpen)>,
}

/// A per-point separation assignment plus a horizon-bounded closedness probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub assignments: Vec<(Point, BasicOpen)>,
    pub closedness: ClosednessProbe,
}

impl SeparationCertificate {
    /// Re-checks every assignment: the basic contains its point and no other
    /// certificate point. Independent of how the certificate was found.
    pub fn validate(&self) -> Result<()> {
        for (x, basic) in &self.assignments {
            if !basic.contains(x) {
                return Err(Error::WitnessValidation(format!(
                    "separator does not contain its own point {x:?}"
                )));
            }
            for (y, _) in &self.assignments {
                if y != x && basic.contains(y) {
                    return Err(Error::WitnessValidation(format!(
                        "separator for {x:?} also captures {y:?}"
                    )));
                }
            }
        }
        for (probe, basic) in &self.closedness.avoiding {
            if !basic.contains(probe) {
                return Err(Error::WitnessValidation(format!(
                    "closure probe basic misses its probe point {probe:?}"
                )));
            }
            for (x, _) in &self.assignments {
                if basic.contains(x) {
                    return Err(Error::WitnessValidation(format!(
                        "closure probe basic at {probe:?} still meets the set"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Restriction to a subset of the certified points. Separation is
    /// hereditary, so the same assignments keep working.
    pub fn restrict(&self, keep: &[Point]) -> SeparationCertificate {
        let keep: BTreeSet<&Point> = keep.iter().collect();
        SeparationCertificate {
            assignments: self
                .assignments
                .iter()
                .filter(|(x, _)| keep.contains(x))
                .cloned()
                .collect(),
            closedness: self.closedness.clone(),
        }
    }

    pub fn points(&self) -> Vec<Point> {
        self.assignments.iter().map(|(x, _)| x.clone()).collect()
    }
}

/// Outcome of a budget-bounded certificate search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CdOutcome {
    Certified(SeparationCertificate),
    /// Not a refutation: the budget ran out, with a pointer at the suspect.
    Undetermined { diagnostic: String },
}

impl CdOutcome {
    pub fn certificate(&self) -> Option<&SeparationCertificate> {
        match self {
            CdOutcome::Certified(c) => Some(c),
            CdOutcome::Undetermined { .. } => None,
        }
    }
}

/// Searches for a separation certificate for `points`, probing closedness on
/// up to `budget` enumerated outside points.
pub fn cd_certificate(
    points: &[Point],
    space: &SpacePresentation,
    budget: u64,
) -> Result<CdOutcome> {
    let distinct: BTreeSet<&Point> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(Error::InvalidInput(
            "certificate search requires pairwise distinct points".into(),
        ));
    }
    for p in points {
        if !space.contains_point(p) {
            return Err(Error::InvalidInput(format!(
                "point {p:?} is not in {}",
                space.label()
            )));
        }
    }

    let mut assignments = Vec::with_capacity(points.len());
    for x in points {
        let found = space
            .neighborhood_basics(x, budget)
            .into_iter()
            .find(|b| points.iter().all(|y| y == x || !b.contains(y)));
        match found {
            Some(b) => assignments.push((x.clone(), b)),
            None => {
                return Ok(CdOutcome::Undetermined {
                    diagnostic: format!("accumulation suspected at {x:?}"),
                })
            }
        }
    }

    let mut avoiding = Vec::new();
    let mut probes_checked = 0;
    for probe in space.universe_probe(budget) {
        if points.contains(&probe) {
            continue;
        }
        probes_checked += 1;
        let found = space
            .neighborhood_basics(&probe, budget)
            .into_iter()
            .find(|b| points.iter().all(|y| !b.contains(y)));
        match found {
            Some(b) => avoiding.push((probe, b)),
            None => {
                return Ok(CdOutcome::Undetermined {
                    diagnostic: format!("closure point suspected at {probe:?}"),
                })
            }
        }
    }

    let cert = SeparationCertificate {
        assignments,
        closedness: ClosednessProbe {
            probes_checked,
            avoiding,
        },
    };
    cert.validate()?;
    Ok(CdOutcome::Certified(cert))
}

/// Budget-bounded accumulation evidence: every enumerated basic around `at`
/// keeps meeting the selections (other than `at` itself) inside the trailing
/// quarter of the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccumulationCertificate {
    pub at: Point,
    pub basics_checked: u64,
    pub tail_start: usize,
}

/// Looks for a probe point at which the selection sequence accumulates.
/// Probes are taken in order; the first qualifying point wins.
pub fn accumulation_certificate(
    selections: &[Point],
    probes: &[Point],
    space: &SpacePresentation,
    budget: u64,
) -> Option<AccumulationCertificate> {
    if selections.is_empty() {
        return None;
    }
    let tail_start = selections.len() - (selections.len() / 4).max(1);
    'probe: for x in probes {
        if !space.contains_point(x) {
            continue;
        }
        let basics = space.neighborhood_basics(x, budget);
        if basics.is_empty() {
            continue;
        }
        for b in &basics {
            let tail_hit = selections[tail_start..]
                .iter()
                .any(|s| s != x && b.contains(s));
            if !tail_hit {
                continue 'probe;
            }
        }
        return Some(AccumulationCertificate {
            at: x.clone(),
            basics_checked: basics.len() as u64,
            tail_start,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::point::ZkPoint;
    use std::collections::BTreeMap;

    fn nats(ns: impl IntoIterator<Item = u64>) -> Vec<Point> {
        ns.into_iter().map(Point::Nat).collect()
    }

    #[test]
    fn discrete_sets_certify_with_singletons() {
        let space = SpacePresentation::discrete_nat();
        let outcome = cd_certificate(&nats([1, 2, 3]), &space, 8).unwrap();
        let cert = outcome.certificate().expect("discrete sets always certify");
        cert.validate().unwrap();
        assert_eq!(cert.assignments.len(), 3);
        for (x, b) in &cert.assignments {
            assert_eq!(b, &BasicOpen::Singleton(x.clone()));
        }
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let space = SpacePresentation::discrete_nat();
        assert!(cd_certificate(&nats([1, 1]), &space, 4).is_err());
    }

    #[test]
    fn reciprocals_with_zero_stay_undetermined_at_small_budget() {
        let space = SpacePresentation::rationals();
        let mut points: Vec<Point> = (1..=20).map(|n| Point::rat(1, n)).collect();
        points.push(Point::rat(0, 1));
        // Budget 5 only reaches radius 2^-4 = 1/16 > 1/20, so nothing the
        // enumerator offers separates 0 from the tail of the list.
        match cd_certificate(&points, &space, 5).unwrap() {
            CdOutcome::Undetermined { diagnostic } => {
                assert!(diagnostic.contains("accumulation suspected"), "{diagnostic}");
                assert!(diagnostic.contains("Rat"), "{diagnostic}");
            }
            CdOutcome::Certified(_) => panic!("budget 5 cannot separate 0 here"),
        }
        // A deeper budget does separate this finite prefix.
        let deep = cd_certificate(&points, &space, 12).unwrap();
        assert!(deep.certificate().is_some());
    }

    #[test]
    fn zprod_escape_coordinate_certifies() {
        let space = SpacePresentation::zprod(6);
        // Plays agreeing on their declared supports but escaping at
        // coordinate 4 with pairwise distinct values.
        let plays: Vec<Point> = (1..=5)
            .map(|n| Point::ZFun(ZkPoint::new(BTreeMap::from([(0, 1)]), n)))
            .collect();
        let outcome = cd_certificate(&plays, &space, 8).unwrap();
        let cert = outcome.certificate().expect("escape coordinate separates");
        cert.validate().unwrap();
    }

    #[test]
    fn restriction_is_hereditary() {
        let space = SpacePresentation::discrete_nat();
        let points = nats([2, 4, 6, 8]);
        let cert = cd_certificate(&points, &space, 8)
            .unwrap()
            .certificate()
            .unwrap()
            .clone();
        let sub = cert.restrict(&nats([4, 8]));
        sub.validate().unwrap();
        assert_eq!(sub.assignments.len(), 2);
    }

    #[test]
    fn accumulation_at_zero_for_shrinking_selections() {
        let space = SpacePresentation::rationals();
        let selections: Vec<Point> = (1..=40).map(|n| Point::rat(1, n)).collect();
        let cert = accumulation_certificate(&selections, &[Point::rat(0, 1)], &space, 5)
            .expect("every small interval around 0 keeps catching the tail");
        assert_eq!(cert.at, Point::rat(0, 1));
    }

    #[test]
    fn no_accumulation_for_spread_out_selections() {
        let space = SpacePresentation::discrete_nat();
        let selections = nats(1..=30);
        let probes = space.universe_probe(10);
        assert!(accumulation_certificate(&selections, &probes, &space, 5).is_none());
    }
}
