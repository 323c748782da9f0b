//! Basic-open descriptors with decidable membership.
//!
//! Opens are finite unions of basics. Membership is a pure function of the
//! descriptor and the point, so certificates carrying descriptors can be
//! replayed without consulting the space that produced them.

use super::point::{FiniteSubset, Point, Rational};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasicOpen {
    /// The whole space (context-dependent; contains every valid point).
    Whole,
    Singleton(Point),
    /// Open interval with rational endpoints.
    Interval { lo: Rational, hi: Rational },
    /// Cylinder: all finitely-supported functions agreeing with the listed
    /// coordinate constraints.
    Cylinder { constraints: BTreeMap<u64, i64> },
    /// Product-space box, one factor per component.
    Product(Vec<BasicOpen>),
    /// A basic with finitely many points removed.
    Punctured {
        base: Box<BasicOpen>,
        removed: BTreeSet<Point>,
    },
    /// Vietoris basic over finite subsets: contained in the union of the
    /// listed opens and meeting every one of them.
    Vietoris { opens: Vec<OpenSet> },
    /// Pixley-Roy basic `{G : F ⊆ G ⊆ U}`.
    PixleyRoy { f: FiniteSubset, u: OpenSet },
}

impl BasicOpen {
    pub fn interval(lo: Rational, hi: Rational) -> Self {
        BasicOpen::Interval { lo, hi }
    }

    pub fn cylinder(constraints: BTreeMap<u64, i64>) -> Self {
        BasicOpen::Cylinder { constraints }
    }

    pub fn punctured(base: BasicOpen, removed: impl IntoIterator<Item = Point>) -> Self {
        BasicOpen::Punctured {
            base: Box::new(base),
            removed: removed.into_iter().collect(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            BasicOpen::Whole => true,
            BasicOpen::Singleton(q) => p == q,
            BasicOpen::Interval { lo, hi } => match p {
                Point::Rat(r) => lo < r && r < hi,
                _ => false,
            },
            BasicOpen::Cylinder { constraints } => match p {
                Point::ZFun(g) => constraints.iter().all(|(&k, &v)| g.value(k) == v),
                _ => false,
            },
            BasicOpen::Product(parts) => match p {
                Point::Tuple(coords) => {
                    coords.len() == parts.len()
                        && parts.iter().zip(coords).all(|(b, c)| b.contains(c))
                }
                _ => false,
            },
            BasicOpen::Punctured { base, removed } => base.contains(p) && !removed.contains(p),
            BasicOpen::Vietoris { opens } => match p {
                Point::Fin(g) => {
                    g.iter().all(|x| opens.iter().any(|u| u.contains(x)))
                        && opens.iter().all(|u| g.iter().any(|x| u.contains(x)))
                }
                _ => false,
            },
            BasicOpen::PixleyRoy { f, u } => match p {
                Point::Fin(g) => f.is_subset(g) && g.iter().all(|x| u.contains(x)),
                _ => false,
            },
        }
    }

    /// Sound (not complete) subset test between descriptors. A `true` answer
    /// is always correct; unlike kinds fall back to structural equality.
    pub fn subset_of(&self, other: &BasicOpen) -> bool {
        if self == other {
            return true;
        }
        match (self, other) {
            (_, BasicOpen::Whole) => true,
            (BasicOpen::Singleton(p), b) => b.contains(p),
            (BasicOpen::Interval { lo, hi }, BasicOpen::Interval { lo: lo2, hi: hi2 }) => {
                lo2 <= lo && hi <= hi2
            }
            (
                BasicOpen::Cylinder { constraints: c1 },
                BasicOpen::Cylinder { constraints: c2 },
            ) => c2.iter().all(|(k, v)| c1.get(k) == Some(v)),
            (BasicOpen::Product(a), BasicOpen::Product(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.subset_of(y))
            }
            (BasicOpen::Punctured { base, .. }, b) => base.subset_of(b),
            (a, BasicOpen::Punctured { base, removed }) => {
                a.subset_of(base) && removed.iter().all(|p| !a.contains(p))
            }
            (
                BasicOpen::PixleyRoy { f: f1, u: u1 },
                BasicOpen::PixleyRoy { f: f2, u: u2 },
            ) => f2.is_subset(f1) && u1.parts.iter().all(|b| b.inside(u2)),
            _ => false,
        }
    }

    /// Is this basic contained in some single member of the union? Sound and
    /// sufficient; unions that only jointly cover are reported `false`.
    pub fn inside(&self, open: &OpenSet) -> bool {
        open.parts.iter().any(|b| self.subset_of(b))
    }

    /// Constructs a witness point of the basic from the descriptor alone,
    /// where the shape permits: interval midpoints, constraint extensions,
    /// bisection around punctures. `None` falls back to universe probing.
    pub fn sample_point(&self) -> Option<Point> {
        match self {
            BasicOpen::Whole => None,
            BasicOpen::Singleton(p) => Some(p.clone()),
            BasicOpen::Interval { lo, hi } => {
                if lo < hi {
                    mid_rational(*lo, *hi).map(Point::Rat)
                } else {
                    None
                }
            }
            BasicOpen::Cylinder { constraints } => Some(Point::ZFun(
                super::point::ZkPoint::new(constraints.clone(), 0),
            )),
            BasicOpen::Product(parts) => parts
                .iter()
                .map(|b| b.sample_point())
                .collect::<Option<Vec<_>>>()
                .map(Point::Tuple),
            BasicOpen::Punctured { base, removed } => {
                // Bisect toward the upper end until clear of the punctures.
                if let BasicOpen::Interval { lo, hi } = base.as_ref() {
                    let mut lo = *lo;
                    for _ in 0..=removed.len() {
                        let mid = mid_rational(lo, *hi)?;
                        if !removed.contains(&Point::Rat(mid)) {
                            return Some(Point::Rat(mid));
                        }
                        lo = mid;
                    }
                    return None;
                }
                let p = base.sample_point()?;
                (!removed.contains(&p)).then_some(p)
            }
            BasicOpen::Vietoris { opens } => {
                let mut points = Vec::new();
                for u in opens {
                    let p = u.parts.iter().find_map(|b| b.sample_point())?;
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
                FiniteSubset::new(points).ok().map(Point::Fin)
            }
            BasicOpen::PixleyRoy { f, u } => f
                .iter()
                .all(|x| u.contains(x))
                .then(|| Point::Fin(f.clone())),
        }
    }

    /// Point codes syntactically mentioned by the descriptor. Used to seed
    /// probe sets; callers filter for membership in their space.
    pub fn mentioned_points(&self, out: &mut Vec<Point>) {
        match self {
            BasicOpen::Whole => {}
            BasicOpen::Singleton(p) => out.push(p.clone()),
            BasicOpen::Interval { lo, hi } => {
                out.push(Point::Rat(*lo));
                out.push(Point::Rat(*hi));
            }
            BasicOpen::Cylinder { constraints } => {
                out.push(Point::ZFun(super::point::ZkPoint::new(
                    constraints.clone(),
                    0,
                )));
            }
            BasicOpen::Product(parts) => {
                for part in parts {
                    part.mentioned_points(out);
                }
            }
            BasicOpen::Punctured { base, removed } => {
                base.mentioned_points(out);
                out.extend(removed.iter().cloned());
            }
            BasicOpen::Vietoris { opens } => {
                for u in opens {
                    for b in &u.parts {
                        b.mentioned_points(out);
                    }
                }
            }
            BasicOpen::PixleyRoy { f, u } => {
                out.push(Point::Fin(f.clone()));
                out.extend(f.iter().cloned());
                for b in &u.parts {
                    b.mentioned_points(out);
                }
            }
        }
    }
}

/// A finite union of basics; the move/open currency of the whole library.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpenSet {
    pub parts: Vec<BasicOpen>,
}

impl OpenSet {
    pub fn new(parts: Vec<BasicOpen>) -> Self {
        assert!(!parts.is_empty(), "open sets are finite *nonempty* unions");
        OpenSet { parts }
    }

    pub fn whole() -> Self {
        OpenSet::from(BasicOpen::Whole)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.parts.iter().any(|b| b.contains(p))
    }

    pub fn union(&self, other: &OpenSet) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        OpenSet { parts }
    }

    /// Removes finitely many points from every part.
    pub fn minus_points(&self, removed: impl IntoIterator<Item = Point>) -> Self {
        let removed: BTreeSet<Point> = removed.into_iter().collect();
        if removed.is_empty() {
            return self.clone();
        }
        OpenSet {
            parts: self
                .parts
                .iter()
                .map(|b| BasicOpen::Punctured {
                    base: Box::new(b.clone()),
                    removed: removed.clone(),
                })
                .collect(),
        }
    }

    pub fn mentioned_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for b in &self.parts {
            b.mentioned_points(&mut out);
        }
        out
    }
}

fn mid_rational(lo: Rational, hi: Rational) -> Option<Rational> {
    use num_traits::CheckedAdd;
    // Ratio's checked ops normalize as they go, which keeps symmetric
    // intervals like (-2^-k, 2^-k) well inside i64.
    lo.checked_add(&hi)
        .map(|sum| sum / Rational::new(2, 1))
}

impl From<BasicOpen> for OpenSet {
    fn from(b: BasicOpen) -> Self {
        OpenSet { parts: vec![b] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::point::ZkPoint;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn interval_membership() {
        let b = BasicOpen::interval(rat(0, 1), rat(1, 1));
        assert!(b.contains(&Point::rat(1, 2)));
        assert!(!b.contains(&Point::rat(2, 1)));
        assert!(!b.contains(&Point::rat(0, 1)), "endpoints excluded");
        assert!(!b.contains(&Point::nat(1)), "wrong universe");
    }

    #[test]
    fn cylinder_membership_checks_constrained_coordinates_only() {
        let b = BasicOpen::cylinder(BTreeMap::from([(2, 5)]));
        let g = ZkPoint::new(BTreeMap::from([(2, 5), (9, 1)]), 0);
        let h = ZkPoint::new(BTreeMap::from([(2, 4)]), 0);
        assert!(b.contains(&Point::ZFun(g)));
        assert!(!b.contains(&Point::ZFun(h)));
        // A function hitting the constraint through its default also counts.
        assert!(BasicOpen::cylinder(BTreeMap::from([(7, 3)]))
            .contains(&Point::ZFun(ZkPoint::constant(3))));
    }

    #[test]
    fn punctured_membership() {
        let b = BasicOpen::punctured(
            BasicOpen::interval(rat(-1, 1), rat(1, 1)),
            [Point::rat(0, 1)],
        );
        assert!(b.contains(&Point::rat(1, 2)));
        assert!(!b.contains(&Point::rat(0, 1)));
    }

    #[test]
    fn subset_tests_are_sound() {
        let small = BasicOpen::interval(rat(0, 1), rat(1, 2));
        let big = BasicOpen::interval(rat(-1, 1), rat(1, 1));
        assert!(small.subset_of(&big));
        assert!(!big.subset_of(&small));

        let fine = BasicOpen::cylinder(BTreeMap::from([(1, 2), (3, 4)]));
        let coarse = BasicOpen::cylinder(BTreeMap::from([(1, 2)]));
        assert!(fine.subset_of(&coarse));
        assert!(!coarse.subset_of(&fine));

        let punct = BasicOpen::punctured(big.clone(), [Point::rat(0, 1)]);
        assert!(punct.subset_of(&big));
        assert!(small.subset_of(&BasicOpen::Whole));
        let straddling = BasicOpen::interval(rat(-1, 2), rat(1, 2));
        assert!(!straddling.subset_of(&punct), "puncture at 0 lands inside");
        let off_center = BasicOpen::interval(rat(1, 4), rat(1, 2));
        assert!(off_center.subset_of(&punct));
    }

    #[test]
    fn open_sets_union_and_puncture() {
        let u = OpenSet::new(vec![
            BasicOpen::Singleton(Point::nat(1)),
            BasicOpen::Singleton(Point::nat(2)),
        ]);
        assert!(u.contains(&Point::nat(2)));
        let v = u.minus_points([Point::nat(2)]);
        assert!(!v.contains(&Point::nat(2)));
        assert!(v.contains(&Point::nat(1)));
    }
}
