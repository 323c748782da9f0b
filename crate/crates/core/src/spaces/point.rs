//! Point codes: the countable universes that presented spaces range over.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type Rational = num_rational::Ratio<i64>;

/// A finitely-supported integer function: explicit assignments over a default
/// value everywhere else. Normalized so assignments never repeat the default,
/// which makes structural equality agree with functional equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZkPoint {
    assignments: BTreeMap<u64, i64>,
    default: i64,
}

impl ZkPoint {
    pub fn new(assignments: BTreeMap<u64, i64>, default: i64) -> Self {
        let assignments = assignments
            .into_iter()
            .filter(|&(_, v)| v != default)
            .collect();
        ZkPoint {
            assignments,
            default,
        }
    }

    pub fn constant(default: i64) -> Self {
        ZkPoint {
            assignments: BTreeMap::new(),
            default,
        }
    }

    pub fn value(&self, coordinate: u64) -> i64 {
        self.assignments
            .get(&coordinate)
            .copied()
            .unwrap_or(self.default)
    }

    pub fn default_value(&self) -> i64 {
        self.default
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.assignments.keys().copied()
    }
}

/// A nonempty finite set of point codes, the common currency of both
/// hyperspace topologies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteSubset(BTreeSet<Point>);

impl FiniteSubset {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidInput("finite subsets must be nonempty".into()));
        }
        Ok(FiniteSubset(set))
    }

    pub fn singleton(p: Point) -> Self {
        FiniteSubset(BTreeSet::from([p]))
    }

    /// Union with one extra point; a no-op when the point is already present.
    pub fn with_point(&self, p: Point) -> Self {
        let mut set = self.0.clone();
        set.insert(p);
        FiniteSubset(set)
    }

    pub fn union(&self, other: &FiniteSubset) -> Self {
        FiniteSubset(self.0.union(&other.0).cloned().collect())
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.0.contains(p)
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A point of some presented space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Nat(u64),
    Rat(Rational),
    ZFun(ZkPoint),
    Tuple(Vec<Point>),
    /// A hyperspace point: a nonempty finite subset of some ground space.
    Fin(FiniteSubset),
}

impl Point {
    pub fn nat(n: u64) -> Self {
        Point::Nat(n)
    }

    pub fn rat(num: i64, den: i64) -> Self {
        Point::Rat(Rational::new(num, den))
    }

    /// Distance in the natural metric where one exists (naturals, rationals,
    /// and tuples under the max metric). `None` for oracle-only universes.
    pub fn distance(&self, other: &Point) -> Option<f64> {
        match (self, other) {
            (Point::Nat(a), Point::Nat(b)) => Some((*a as f64 - *b as f64).abs()),
            (Point::Rat(a), Point::Rat(b)) => {
                let d = a - b;
                Some((*d.numer() as f64 / *d.denom() as f64).abs())
            }
            (Point::Tuple(a), Point::Tuple(b)) if a.len() == b.len() => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.distance(y))
                .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d))),
            _ => None,
        }
    }
}
