//! Effectively presented countable spaces.
//!
//! A presentation fixes a point universe with decidable equality, a family of
//! basic opens with decidable membership, and a deterministic enumeration
//! order for the neighborhoods of any point. Everything downstream
//! (certificate search, convergence checks, games) consumes presentations
//! through [`SpacePresentation::neighborhood_basics`] and
//! [`SpacePresentation::universe_probe`], so the enumeration order is part of
//! the contract: same inputs, same certificates.

use super::basic::{BasicOpen, OpenSet};
use super::point::{FiniteSubset, Point, Rational, ZkPoint};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFlags {
    pub t1: bool,
    pub discrete: bool,
    /// Declared by the presentation: every presented basic is infinite.
    pub all_basics_infinite: bool,
}

#[derive(Clone, Debug)]
enum SpaceKind {
    FiniteDiscrete(Vec<Point>),
    DiscreteNat,
    Rationals,
    /// Integer product with lazily named coordinates `0..allocated`.
    ZProd { allocated: u64 },
    Product(Vec<SpacePresentation>),
    /// Finite subsets of the ground space under the Vietoris topology.
    PFin(Arc<SpacePresentation>),
    /// Finite subsets of the ground space under the Pixley-Roy topology.
    PixleyRoy(Arc<SpacePresentation>),
}

/// A countable space given by membership oracles. Immutable once built.
#[derive(Clone, Debug)]
pub struct SpacePresentation {
    label: String,
    kind: SpaceKind,
    pub flags: SpaceFlags,
}

impl SpacePresentation {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn finite_discrete(points: Vec<Point>) -> Self {
        let label = format!("finite[{}]", points.len());
        SpacePresentation {
            label,
            kind: SpaceKind::FiniteDiscrete(points),
            flags: SpaceFlags {
                t1: true,
                discrete: true,
                all_basics_infinite: false,
            },
        }
    }

    pub fn discrete_nat() -> Self {
        SpacePresentation {
            label: "discreteN".into(),
            kind: SpaceKind::DiscreteNat,
            flags: SpaceFlags {
                t1: true,
                discrete: true,
                all_basics_infinite: false,
            },
        }
    }

    pub fn rationals() -> Self {
        SpacePresentation {
            label: "rationals".into(),
            kind: SpaceKind::Rationals,
            flags: SpaceFlags {
                t1: true,
                discrete: false,
                all_basics_infinite: true,
            },
        }
    }

    /// Integer product over a lazily indexed coordinate pool. Plays only ever
    /// mention finitely many coordinates; `allocated` bounds how many have
    /// been named so far and hence how far enumerators range.
    pub fn zprod(allocated: u64) -> Self {
        SpacePresentation {
            label: format!("zprod[{allocated}]"),
            kind: SpaceKind::ZProd { allocated },
            flags: SpaceFlags {
                t1: true,
                discrete: false,
                all_basics_infinite: true,
            },
        }
    }

    pub fn product(components: Vec<SpacePresentation>) -> Self {
        assert!(!components.is_empty());
        let label = format!(
            "product({})",
            components
                .iter()
                .map(|c| c.label.clone())
                .collect::<Vec<_>>()
                .join("*")
        );
        let flags = SpaceFlags {
            t1: components.iter().all(|c| c.flags.t1),
            discrete: components.iter().all(|c| c.flags.discrete),
            all_basics_infinite: components.iter().any(|c| c.flags.all_basics_infinite),
        };
        SpacePresentation {
            label,
            kind: SpaceKind::Product(components),
            flags,
        }
    }

    /// Vietoris hyperspace of nonempty finite subsets of `ground`.
    pub fn pfin(ground: SpacePresentation) -> Self {
        let flags = SpaceFlags {
            t1: ground.flags.t1,
            discrete: ground.flags.discrete,
            all_basics_infinite: false,
        };
        SpacePresentation {
            label: format!("pfin({})", ground.label),
            kind: SpaceKind::PFin(Arc::new(ground)),
            flags,
        }
    }

    /// Pixley-Roy hyperspace of nonempty finite subsets of `ground`.
    pub fn pixley_roy(ground: SpacePresentation) -> Self {
        let flags = SpaceFlags {
            t1: ground.flags.t1,
            discrete: ground.flags.discrete,
            all_basics_infinite: ground.flags.all_basics_infinite,
        };
        SpacePresentation {
            label: format!("pr({})", ground.label),
            kind: SpaceKind::PixleyRoy(Arc::new(ground)),
            flags,
        }
    }

    /// Fixture hook: same presentation with different declared flags.
    /// Exists so tests can model spaces that lie about their declarations.
    pub fn with_flags(mut self, flags: SpaceFlags) -> Self {
        self.flags = flags;
        self
    }

    /// The full point list of a finite presentation, `None` otherwise.
    pub fn finite_points(&self) -> Option<&[Point]> {
        match &self.kind {
            SpaceKind::FiniteDiscrete(points) => Some(points),
            _ => None,
        }
    }

    pub fn ground(&self) -> Option<&SpacePresentation> {
        match &self.kind {
            SpaceKind::PFin(g) | SpaceKind::PixleyRoy(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_zprod(&self) -> bool {
        matches!(self.kind, SpaceKind::ZProd { .. })
    }

    pub fn zprod_allocated(&self) -> Option<u64> {
        match self.kind {
            SpaceKind::ZProd { allocated } => Some(allocated),
            _ => None,
        }
    }

    /// Does the point code belong to this space's universe?
    pub fn contains_point(&self, p: &Point) -> bool {
        match (&self.kind, p) {
            (SpaceKind::FiniteDiscrete(points), _) => points.contains(p),
            (SpaceKind::DiscreteNat, Point::Nat(n)) => *n >= 1,
            (SpaceKind::Rationals, Point::Rat(_)) => true,
            (SpaceKind::ZProd { .. }, Point::ZFun(_)) => true,
            (SpaceKind::Product(comps), Point::Tuple(coords)) => {
                comps.len() == coords.len()
                    && comps.iter().zip(coords).all(|(c, x)| c.contains_point(x))
            }
            (SpaceKind::PFin(g) | SpaceKind::PixleyRoy(g), Point::Fin(set)) => {
                set.iter().all(|x| g.contains_point(x))
            }
            _ => false,
        }
    }

    /// Basics containing `x`, in the presentation's fixed order, at most
    /// `budget` of them. Later entries never grow: the enumeration shrinks
    /// toward `x` where the topology allows it.
    pub fn neighborhood_basics(&self, x: &Point, budget: u64) -> Vec<BasicOpen> {
        if budget == 0 || !self.contains_point(x) {
            return Vec::new();
        }
        match (&self.kind, x) {
            (SpaceKind::FiniteDiscrete(_) | SpaceKind::DiscreteNat, _) => {
                vec![BasicOpen::Singleton(x.clone())]
            }
            (SpaceKind::Rationals, Point::Rat(r)) => {
                let mut out = Vec::new();
                for k in 0..budget.min(40) {
                    let radius = Rational::new(1, 1i64 << k);
                    let (lo, hi) = (
                        checked_sub_rational(*r, radius),
                        checked_add_rational(*r, radius),
                    );
                    match (lo, hi) {
                        (Some(lo), Some(hi)) => out.push(BasicOpen::Interval { lo, hi }),
                        _ => break,
                    }
                }
                out
            }
            (SpaceKind::ZProd { allocated }, Point::ZFun(g)) => {
                let mut out = Vec::new();
                for k in 0..(*allocated).min(budget) {
                    out.push(BasicOpen::cylinder(BTreeMap::from([(k, g.value(k))])));
                }
                if (out.len() as u64) < budget {
                    let support: BTreeMap<u64, i64> =
                        g.support().map(|k| (k, g.value(k))).collect();
                    if !support.is_empty() {
                        out.push(BasicOpen::cylinder(support));
                    }
                }
                out
            }
            (SpaceKind::Product(comps), Point::Tuple(coords)) => {
                let lists: Vec<Vec<BasicOpen>> = comps
                    .iter()
                    .zip(coords)
                    .map(|(c, p)| c.neighborhood_basics(p, budget))
                    .collect();
                if lists.iter().any(|l| l.is_empty()) {
                    return Vec::new();
                }
                (0..budget as usize)
                    .map(|k| {
                        BasicOpen::Product(
                            lists
                                .iter()
                                .map(|l| l[k.min(l.len() - 1)].clone())
                                .collect(),
                        )
                    })
                    .take_while_inclusive_dedup()
            }
            (SpaceKind::PFin(ground), Point::Fin(set)) => {
                hyper_neighborhoods(ground, set, budget, |per_point| BasicOpen::Vietoris {
                    opens: per_point.into_iter().map(OpenSet::from).collect(),
                })
            }
            (SpaceKind::PixleyRoy(ground), Point::Fin(set)) => {
                hyper_neighborhoods(ground, set, budget, |per_point| BasicOpen::PixleyRoy {
                    f: set.clone(),
                    u: OpenSet::new(per_point),
                })
            }
            _ => Vec::new(),
        }
    }

    /// Deterministic stream of sample points of the universe.
    pub fn universe_probe(&self, budget: u64) -> Vec<Point> {
        let budget = budget as usize;
        match &self.kind {
            SpaceKind::FiniteDiscrete(points) => points.iter().take(budget).cloned().collect(),
            SpaceKind::DiscreteNat => (1..=budget as u64).map(Point::Nat).collect(),
            SpaceKind::Rationals => rational_stream(budget),
            SpaceKind::ZProd { .. } => {
                let mut out = vec![Point::ZFun(ZkPoint::constant(0))];
                let mut c = 1i64;
                while out.len() < budget {
                    out.push(Point::ZFun(ZkPoint::constant(c)));
                    if out.len() < budget {
                        out.push(Point::ZFun(ZkPoint::constant(-c)));
                    }
                    c += 1;
                }
                out.truncate(budget);
                out
            }
            SpaceKind::Product(comps) => {
                let streams: Vec<Vec<Point>> =
                    comps.iter().map(|c| c.universe_probe(budget as u64)).collect();
                let shortest = streams.iter().map(|s| s.len()).min().unwrap_or(0);
                (0..shortest.min(budget))
                    .map(|i| Point::Tuple(streams.iter().map(|s| s[i].clone()).collect()))
                    .collect()
            }
            SpaceKind::PFin(g) | SpaceKind::PixleyRoy(g) => {
                let ground_points = g.universe_probe(budget as u64);
                let mut out: Vec<Point> = ground_points
                    .iter()
                    .map(|p| Point::Fin(FiniteSubset::singleton(p.clone())))
                    .collect();
                for pair in ground_points.windows(2) {
                    if out.len() >= budget {
                        break;
                    }
                    out.push(Point::Fin(
                        FiniteSubset::new(pair.to_vec()).expect("pair is nonempty"),
                    ));
                }
                out.truncate(budget);
                out
            }
        }
    }

    /// Does a singleton basic pin `x` down?
    pub fn is_isolated(&self, x: &Point) -> bool {
        match &self.kind {
            SpaceKind::FiniteDiscrete(_) | SpaceKind::DiscreteNat => true,
            SpaceKind::Rationals => false,
            SpaceKind::ZProd { .. } => false,
            SpaceKind::Product(comps) => match x {
                Point::Tuple(coords) => comps
                    .iter()
                    .zip(coords)
                    .all(|(c, p)| c.is_isolated(p)),
                _ => false,
            },
            SpaceKind::PFin(g) | SpaceKind::PixleyRoy(g) => g.flags.discrete && {
                match x {
                    Point::Fin(set) => set.iter().all(|p| g.is_isolated(p)),
                    _ => false,
                }
            },
        }
    }

    /// Searches the universe for a point of `open`, probing up to `budget`
    /// candidates (plus the open's own mentioned points).
    pub fn find_point_in(&self, open: &OpenSet, budget: u64) -> Option<Point> {
        for p in open.mentioned_points() {
            if self.contains_point(&p) && open.contains(&p) {
                return Some(p);
            }
        }
        for part in &open.parts {
            if let Some(p) = part.sample_point() {
                if self.contains_point(&p) && open.contains(&p) {
                    return Some(p);
                }
            }
        }
        self.universe_probe(budget)
            .into_iter()
            .find(|p| open.contains(p))
    }
}

/// Shared shape of hyperspace neighborhoods: at stage `k` each ground element
/// contributes its own `k`-th neighborhood basic.
fn hyper_neighborhoods(
    ground: &SpacePresentation,
    set: &FiniteSubset,
    budget: u64,
    build: impl Fn(Vec<BasicOpen>) -> BasicOpen,
) -> Vec<BasicOpen> {
    let lists: Vec<Vec<BasicOpen>> = set
        .iter()
        .map(|p| ground.neighborhood_basics(p, budget))
        .collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Vec::new();
    }
    let depth = lists.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut out = Vec::new();
    for k in 0..depth.min(budget as usize) {
        let per_point: Vec<BasicOpen> = lists
            .iter()
            .map(|l| l[k.min(l.len() - 1)].clone())
            .collect();
        out.push(build(per_point));
    }
    out.dedup();
    out
}

fn checked_add_rational(a: Rational, b: Rational) -> Option<Rational> {
    let den = a.denom().checked_mul(*b.denom())?;
    let lhs = a.numer().checked_mul(*b.denom())?;
    let rhs = b.numer().checked_mul(*a.denom())?;
    Some(Rational::new(lhs.checked_add(rhs)?, den))
}

fn checked_sub_rational(a: Rational, b: Rational) -> Option<Rational> {
    checked_add_rational(a, -b)
}

/// 0, 1, −1, 2, −2, 1/2, −1/2, ... : a fixed diagonal enumeration of ℚ.
fn rational_stream(budget: usize) -> Vec<Point> {
    let mut out = vec![Point::rat(0, 1)];
    let mut total: i64 = 2;
    while out.len() < budget {
        for num in 1..total {
            let den = total - num;
            if num_integer::gcd(num, den) != 1 {
                continue;
            }
            out.push(Point::rat(num, den));
            if out.len() >= budget {
                break;
            }
            out.push(Point::rat(-num, den));
            if out.len() >= budget {
                break;
            }
        }
        total += 1;
    }
    out.truncate(budget);
    out
}

trait DedupTail {
    fn take_while_inclusive_dedup(self) -> Vec<BasicOpen>;
}

impl<I: Iterator<Item = BasicOpen>> DedupTail for I {
    fn take_while_inclusive_dedup(self) -> Vec<BasicOpen> {
        let mut out: Vec<BasicOpen> = Vec::new();
        for b in self {
            if out.last() == Some(&b) {
                break;
            }
            out.push(b);
        }
        out
    }
}

/// Builds a space from a CLI label: `discreteN`, `rationals`, `zprod`,
/// `zprod:K`, `finite:{a,b,...}` (naturals), or `product:lbl*lbl`.
pub fn builtin_space(label: &str) -> Result<SpacePresentation> {
    let unknown = || Error::UnknownLabel(label.to_string());
    match label {
        "discreteN" => return Ok(SpacePresentation::discrete_nat()),
        "rationals" => return Ok(SpacePresentation::rationals()),
        "zprod" => return Ok(SpacePresentation::zprod(16)),
        _ => {}
    }
    if let Some(arg) = label.strip_prefix("zprod:") {
        return Ok(SpacePresentation::zprod(
            arg.parse().map_err(|_| unknown())?,
        ));
    }
    if let Some(arg) = label.strip_prefix("finite:") {
        let body = arg
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(unknown)?;
        let mut points = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            points.push(Point::Nat(part.parse().map_err(|_| unknown())?));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("finite space needs at least one point".into()));
        }
        return Ok(SpacePresentation::finite_discrete(points));
    }
    if let Some(arg) = label.strip_prefix("product:") {
        let comps = arg
            .split('*')
            .map(builtin_space)
            .collect::<Result<Vec<_>>>()?;
        return Ok(SpacePresentation::product(comps));
    }
    if let Some(arg) = label.strip_prefix("pfin:") {
        return Ok(SpacePresentation::pfin(builtin_space(arg)?));
    }
    if let Some(arg) = label.strip_prefix("pr:") {
        return Ok(SpacePresentation::pixley_roy(builtin_space(arg)?));
    }
    Err(unknown())
}
