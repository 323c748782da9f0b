//! Divergence classes and statistical convergence.
//!
//! Certification discipline: existential claims (some subsequence diverges)
//! can be certified by exhibiting a witness; universal claims (every
//! subsequence diverges) can only be certified through a structural bound —
//! a separation certificate whose semantics survive extension — or refuted
//! by a counterexample. Sampling alone never certifies a universal.

use crate::density::{self, DensityClaim, DensityEstimate, DensityVerdict, EstimateKind};
use crate::error::{Error, Result};
use crate::seqmap::{MonotoneMap, Nat};
use crate::spaces::{BasicOpen, Point, SpacePresentation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A lazily evaluated point sequence. Indices are 1-based.
#[derive(Clone)]
pub struct PointSeq {
    label: String,
    gen: Arc<dyn Fn(Nat) -> Point + Send + Sync>,
}

impl std::fmt::Debug for PointSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PointSeq({})", self.label)
    }
}

impl PointSeq {
    pub fn new(label: impl Into<String>, gen: impl Fn(Nat) -> Point + Send + Sync + 'static) -> Self {
        PointSeq {
            label: label.into(),
            gen: Arc::new(gen),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn at(&self, n: Nat) -> Point {
        assert!(n >= 1, "sequences are 1-based");
        (self.gen)(n)
    }

    pub fn prefix(&self, horizon: u64) -> Vec<Point> {
        (1..=horizon as Nat).map(|n| self.at(n)).collect()
    }

    /// The subsequence `self ∘ phi`.
    pub fn compose(&self, phi: &MonotoneMap) -> PointSeq {
        let inner = self.clone();
        let phi = phi.clone();
        PointSeq::new(format!("{}∘{}", self.label, phi.label()), move |n| {
            inner.at(phi.value(n))
        })
    }

    /// Interleaves a constant into an existing sequence: even indices follow
    /// the base sequence, odd indices repeat `constant`.
    pub fn interleave_constant(base: &PointSeq, constant: Point) -> PointSeq {
        let base = base.clone();
        PointSeq::new(format!("weave({})", base.label), move |n| {
            if n % 2 == 0 {
                base.at(n / 2)
            } else {
                constant.clone()
            }
        })
    }
}

/// Pairwise separation evidence over a prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SeparationBound {
    /// All distinct entries at metric distance at least `epsilon`.
    Metric { epsilon: f64 },
    /// Per-pair basics, each containing exactly one of the two entries.
    Basis {
        pairs: Vec<((usize, usize), BasicOpen)>,
    },
}

impl SeparationBound {
    /// Checks the bound on every index pair of the prefix. Returns the first
    /// offending pair on failure.
    pub fn validate(&self, prefix: &[Point]) -> std::result::Result<(), (usize, usize)> {
        match self {
            SeparationBound::Metric { epsilon } => {
                for i in 0..prefix.len() {
                    for j in (i + 1)..prefix.len() {
                        match prefix[i].distance(&prefix[j]) {
                            Some(d) if d >= *epsilon => {}
                            _ => return Err((i, j)),
                        }
                    }
                }
                Ok(())
            }
            SeparationBound::Basis { pairs } => {
                let by_pair: BTreeMap<(usize, usize), &BasicOpen> =
                    pairs.iter().map(|((i, j), b)| ((*i, *j), b)).collect();
                for i in 0..prefix.len() {
                    for j in (i + 1)..prefix.len() {
                        let Some(b) = by_pair.get(&(i, j)) else {
                            return Err((i, j));
                        };
                        if b.contains(&prefix[i]) == b.contains(&prefix[j]) {
                            return Err((i, j));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Builds a basis-form bound from a space's neighborhood enumeration: for
/// each pair, the first enumerated basic around either entry that excludes
/// the other.
pub fn separation_bound_from_space(
    prefix: &[Point],
    space: &SpacePresentation,
    budget: u64,
) -> std::result::Result<SeparationBound, (usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..prefix.len() {
        for j in (i + 1)..prefix.len() {
            let candidate = space
                .neighborhood_basics(&prefix[i], budget)
                .into_iter()
                .find(|b| !b.contains(&prefix[j]))
                .or_else(|| {
                    space
                        .neighborhood_basics(&prefix[j], budget)
                        .into_iter()
                        .find(|b| !b.contains(&prefix[i]))
                });
            match candidate {
                Some(b) => pairs.push(((i, j), b)),
                None => return Err((i, j)),
            }
        }
    }
    Ok(SeparationBound::Basis { pairs })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivClass {
    Sds,
    WSd,
    SdsAlpha(f64),
    WSdAlpha(f64),
    /// Divergence relative to a named subsemigroup of subsequence maps.
    SdsSub(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Certified,
    Refuted,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    SubsequenceMap { label: String },
    Bound(SeparationBound),
    OffendingPair { i: usize, j: usize },
    ConvergentExhibit { description: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceVerdict {
    pub class_name: DivClass,
    pub claim: Claim,
    pub witness: Option<Witness>,
    pub diagnostics: Vec<String>,
}

/// Certifies strong divergence of any extension of `prefix` that maintains
/// the declared bound: an ε-separated (or basis-separated) infinite set
/// admits no convergent subsequence. A failed bound refutes only this
/// certificate attempt, not the divergence class itself.
pub fn sds_certificate_by_separation(
    prefix: &[Point],
    bound: &SeparationBound,
) -> DivergenceVerdict {
    match bound.validate(prefix) {
        Ok(()) => DivergenceVerdict {
            class_name: DivClass::Sds,
            claim: Claim::Certified,
            witness: Some(Witness::Bound(bound.clone())),
            diagnostics: Vec::new(),
        },
        Err((i, j)) => DivergenceVerdict {
            class_name: DivClass::Sds,
            claim: Claim::Refuted,
            witness: Some(Witness::OffendingPair { i, j }),
            diagnostics: vec![format!(
                "bound fails on pair ({i}, {j}): {:?} vs {:?}",
                prefix[i], prefix[j]
            )],
        },
    }
}

/// Largest pairwise metric distance within a slice, when the metric exists.
fn diameter(points: &[Point]) -> Option<f64> {
    let mut d = 0.0f64;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] != points[j] {
                d = d.max(points[i].distance(&points[j])?);
            }
        }
    }
    Some(d)
}

/// Default divergence probe for a prefix over a presented space:
/// certified when the space's own enumeration separates every pair, refuted
/// when the prefix is constant-tailed or metrically collapsing, undetermined
/// otherwise.
pub fn divergence_probe(
    prefix: &[Point],
    space: &SpacePresentation,
    budget: u64,
) -> DivergenceVerdict {
    let all_equal = prefix.windows(2).all(|w| w[0] == w[1]);
    if all_equal && !prefix.is_empty() {
        return DivergenceVerdict {
            class_name: DivClass::Sds,
            claim: Claim::Refuted,
            witness: Some(Witness::ConvergentExhibit {
                description: "constant prefix".into(),
            }),
            diagnostics: Vec::new(),
        };
    }
    match separation_bound_from_space(prefix, space, budget) {
        Ok(bound) => sds_certificate_by_separation(prefix, &bound),
        Err((i, j)) => {
            let half = prefix.len() / 2;
            let collapse = match (diameter(&prefix[..half]), diameter(&prefix[half..])) {
                (Some(d1), Some(d2)) => d2 == 0.0 || (d2 <= d1 / 4.0 && d2 <= 0.25),
                _ => false,
            };
            if collapse {
                DivergenceVerdict {
                    class_name: DivClass::Sds,
                    claim: Claim::Refuted,
                    witness: Some(Witness::ConvergentExhibit {
                        description: "tail diameter collapsed".into(),
                    }),
                    diagnostics: Vec::new(),
                }
            } else {
                DivergenceVerdict {
                    class_name: DivClass::Sds,
                    claim: Claim::Undetermined,
                    witness: None,
                    diagnostics: vec![format!("no separator for pair ({i}, {j}) within budget")],
                }
            }
        }
    }
}

/// Existential transformer: certified as soon as some sampled map composes
/// into an inner-certified subsequence.
pub fn in_w_class(
    seq: &PointSeq,
    sampler: &[MonotoneMap],
    inner: &dyn Fn(&[Point]) -> DivergenceVerdict,
    class_name: DivClass,
    horizon: u64,
) -> DivergenceVerdict {
    let mut diagnostics = Vec::new();
    for phi in sampler {
        let composite = seq.compose(phi).prefix(horizon);
        let verdict = inner(&composite);
        match verdict.claim {
            Claim::Certified => {
                return DivergenceVerdict {
                    class_name,
                    claim: Claim::Certified,
                    witness: Some(Witness::SubsequenceMap {
                        label: phi.label().to_string(),
                    }),
                    diagnostics,
                }
            }
            Claim::Refuted => diagnostics.push(format!(
                "{}: inner predicate refuted ({:?})",
                phi.label(),
                verdict.witness
            )),
            Claim::Undetermined => diagnostics.push(format!("{}: undetermined", phi.label())),
        }
    }
    DivergenceVerdict {
        class_name,
        claim: Claim::Undetermined,
        witness: None,
        diagnostics,
    }
}

/// Universal transformer: refuted as soon as some sampled map composes into
/// an inner-refuted subsequence; otherwise "consistent within budget"
/// (undetermined — samples never certify a universal).
pub fn in_s_class(
    seq: &PointSeq,
    sampler: &[MonotoneMap],
    inner: &dyn Fn(&[Point]) -> DivergenceVerdict,
    class_name: DivClass,
    horizon: u64,
) -> DivergenceVerdict {
    let mut checked = 0;
    for phi in sampler {
        let composite = seq.compose(phi).prefix(horizon);
        let verdict = inner(&composite);
        checked += 1;
        if verdict.claim == Claim::Refuted {
            return DivergenceVerdict {
                class_name,
                claim: Claim::Refuted,
                witness: Some(Witness::SubsequenceMap {
                    label: phi.label().to_string(),
                }),
                diagnostics: vec![format!("inner refutation: {:?}", verdict.witness)],
            };
        }
    }
    DivergenceVerdict {
        class_name,
        claim: Claim::Undetermined,
        witness: None,
        diagnostics: vec![format!("consistent over {checked} sampled maps")],
    }
}

/// A lazily evaluated real sequence, 1-based.
#[derive(Clone)]
pub struct RealSeq {
    label: String,
    gen: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for RealSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RealSeq({})", self.label)
    }
}

impl RealSeq {
    pub fn new(label: impl Into<String>, gen: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        RealSeq {
            label: label.into(),
            gen: Arc::new(gen),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn at(&self, n: u64) -> f64 {
        (self.gen)(n)
    }
}

/// Neighborhood radii used by the statistical-convergence checks.
pub const EPSILON_GRID: [f64; 11] = [
    1.0,
    0.5,
    0.25,
    0.125,
    0.0625,
    0.03125,
    0.015625,
    0.0078125,
    0.00390625,
    0.001953125,
    0.0009765625,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatVerdict {
    TentativelyYes,
    CertifiedNo { epsilon: f64, estimate: DensityEstimate },
    Undetermined,
}

/// Windowed α-density of the exception set `{n : |s_n − x| ≥ epsilon}`.
pub fn exception_density(
    s: &RealSeq,
    x: f64,
    epsilon: f64,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<DensityEstimate> {
    let mut counts: Vec<u64> = Vec::with_capacity(horizon as usize + 1);
    counts.push(0);
    let mut acc = 0;
    for n in 1..=horizon {
        if (s.at(n) - x).abs() >= epsilon {
            acc += 1;
        }
        counts.push(acc);
    }
    density::estimate_delta_alpha_counted(|n| counts[n as usize], alpha, horizon, tolerance)
}

/// Direct exception fraction `#{n ≤ horizon : |s_n − x| ≥ epsilon} / horizon`.
pub fn exception_fraction(s: &RealSeq, x: f64, epsilon: f64, horizon: u64) -> f64 {
    let mut acc = 0u64;
    for n in 1..=horizon {
        if (s.at(n) - x).abs() >= epsilon {
            acc += 1;
        }
    }
    acc as f64 / horizon as f64
}

/// Does `s` α-statistically converge to `x`, as far as the window shows?
/// Tentative yes needs every grid neighborhood's exception set to have a
/// finite α-density estimate within tolerance; a stable exception density
/// strictly above tolerance (or a blow-up) at any radius certifies no.
pub fn statistically_converges(
    s: &RealSeq,
    x: f64,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<StatVerdict> {
    let mut all_small = true;
    for &eps in EPSILON_GRID.iter() {
        let estimate = exception_density(s, x, eps, alpha, horizon, tolerance)?;
        match estimate.kind {
            EstimateKind::Finite(v) if v <= tolerance => {}
            EstimateKind::Finite(v)
                if v > tolerance && estimate.window_first > tolerance =>
            {
                return Ok(StatVerdict::CertifiedNo {
                    epsilon: eps,
                    estimate,
                });
            }
            EstimateKind::Infinite => {
                return Ok(StatVerdict::CertifiedNo {
                    epsilon: eps,
                    estimate,
                });
            }
            _ => all_small = false,
        }
    }
    Ok(if all_small {
        StatVerdict::TentativelyYes
    } else {
        StatVerdict::Undetermined
    })
}

/// Tail-based convergence check for a real prefix: every grid neighborhood
/// must have an exit-free trailing quarter.
pub fn real_prefix_converges(values: &[f64], x: f64) -> bool {
    if values.is_empty() {
        return false;
    }
    let tail_start = values.len() - (values.len() / 4).max(1);
    EPSILON_GRID.iter().all(|&eps| {
        values[tail_start..]
            .iter()
            .all(|v| (v - x).abs() < eps)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SStarOutcome {
    pub verdict: StatVerdict,
    /// Label of the accepted δ_α-dense subsequence map, if any.
    pub witness: Option<String>,
}

/// Searches the candidate maps for one whose subsequence converges to `x` at
/// the horizon. Candidates must come pre-verified δ_α-dense.
pub fn s_star_converges_search(
    s: &RealSeq,
    x: f64,
    candidates: &[(MonotoneMap, DensityVerdict)],
    horizon: u64,
) -> Result<SStarOutcome> {
    for (phi, verdict) in candidates {
        if verdict.claim != DensityClaim::DeltaAlphaDense {
            return Err(Error::Precondition(format!(
                "candidate {} lacks a dense verdict (claim {:?})",
                phi.label(),
                verdict.claim
            )));
        }
    }
    for (phi, _) in candidates {
        let values: Vec<f64> = (1..=horizon)
            .map(|k| s.at(phi.value(k as Nat) as u64))
            .collect();
        if real_prefix_converges(&values, x) {
            return Ok(SStarOutcome {
                verdict: StatVerdict::TentativelyYes,
                witness: Some(phi.label().to_string()),
            });
        }
    }
    Ok(SStarOutcome {
        verdict: StatVerdict::Undetermined,
        witness: None,
    })
}

/// Per-probe outcome of the local-finiteness scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeFiniteness {
    pub probe: Point,
    pub locally_finite: bool,
}

/// Two-sided desk characterization of divergence relative to cofinite-range
/// subsequence maps: finite-to-one plus a locally finite value set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocallyFiniteReport {
    pub max_multiplicity: usize,
    pub multiplicity_threshold: usize,
    pub finite_to_one_ok: bool,
    pub probes: Vec<ProbeFiniteness>,
    pub locally_finite_ok: bool,
    /// Both checks passed: consistent with cofinite-class divergence.
    pub in_class_surrogate: bool,
}

/// Checks finite-to-one-ness of the prefix (bounded multiplicity at desk
/// scale) and probe-based local finiteness: some enumerated basic around each
/// probe stops collecting new prefix values before the trailing quarter.
pub fn sds_cofinite_characterization(
    prefix: &[Point],
    space: &SpacePresentation,
    budget: u64,
) -> Result<LocallyFiniteReport> {
    if prefix.is_empty() {
        return Err(Error::InvalidInput("prefix must be nonempty".into()));
    }
    let mut multiplicity: BTreeMap<&Point, usize> = BTreeMap::new();
    for p in prefix {
        *multiplicity.entry(p).or_default() += 1;
    }
    let max_multiplicity = multiplicity.values().copied().max().unwrap_or(0);
    let multiplicity_threshold = (prefix.len() / 4).max(2);
    let finite_to_one_ok = max_multiplicity <= multiplicity_threshold;

    let tail_start = prefix.len() - (prefix.len() / 4).max(1);
    // Index of each value's first occurrence; a basic is finite-looking when
    // it collects no value first seen inside the tail window.
    let mut first_seen: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, p) in prefix.iter().enumerate() {
        first_seen.entry(p).or_insert(i);
    }

    let mut probes_list: Vec<Point> = space.universe_probe(budget);
    for p in prefix {
        if !probes_list.contains(p) {
            probes_list.push(p.clone());
        }
    }

    let mut probes = Vec::new();
    for probe in probes_list {
        if !space.contains_point(&probe) {
            continue;
        }
        // Finite-looking: the basic collects at most one value first seen in
        // the trailing window, i.e. its meet count has stopped growing.
        let ok = space.neighborhood_basics(&probe, budget).iter().any(|b| {
            first_seen
                .iter()
                .filter(|(p, &i)| i >= tail_start && b.contains(p))
                .count()
                <= 1
        });
        probes.push(ProbeFiniteness {
            probe,
            locally_finite: ok,
        });
    }
    let locally_finite_ok = probes.iter().all(|p| p.locally_finite);
    Ok(LocallyFiniteReport {
        max_multiplicity,
        multiplicity_threshold,
        finite_to_one_ok,
        probes,
        locally_finite_ok,
        in_class_surrogate: finite_to_one_ok && locally_finite_ok,
    })
}

/// `s_n = n` on the squares and `1/n` elsewhere: statistically null but with
/// an unbounded subsequence.
pub fn squares_spike_sequence() -> RealSeq {
    RealSeq::new("squares-spike", |n| {
        let r = (n as f64).sqrt().round() as u64;
        if r * r == n {
            n as f64
        } else {
            1.0 / n as f64
        }
    })
}

/// The fixed involution exchanging the k-th square with the k-th non-square.
pub fn square_swap(n: u64) -> u64 {
    let r = integer_sqrt(n);
    if r * r == n {
        // n is the r-th square: map to the r-th non-square.
        kth_nonsquare(r)
    } else {
        // n is the k-th non-square: map to k².
        let k = n - r;
        k * k
    }
}

fn integer_sqrt(n: u64) -> u64 {
    num_integer::Roots::sqrt(&n)
}

fn kth_nonsquare(k: u64) -> u64 {
    let r = integer_sqrt(k);
    let nearest = if k > r * r + r { r + 1 } else { r };
    k + nearest
}

/// The spike sequence reindexed by the square swap; the exception set at
/// radius 1 flips from the squares to their complement.
pub fn swapped_spike_sequence() -> RealSeq {
    let base = squares_spike_sequence();
    RealSeq::new("squares-spike∘swap", move |n| base.at(square_swap(n)))
}
