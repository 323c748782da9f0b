//! Windowed numeric estimation of asymptotic density and its α-refinement.
//!
//! Every estimator here reports a three-valued [`DensityEstimate`] computed
//! from a trailing, log-spaced sample window:
//!
//! * `finite(v)` — the window spread (max − min) is within tolerance; `v` is
//!   the value at the final sample.
//! * `infinite` — the window is (decile-)nondecreasing, grows by at least
//!   [`BLOWUP_GROWTH`] across the window, and ends above [`BLOWUP_FLOOR`].
//! * `undetermined` — anything else. No estimator ever claims a limit fails
//!   to exist; oscillating densities are real and land here.
//!
//! For a set presented by its enumerator `φ`, the `horizon` parameter is the
//! enumeration budget: counting happens in value space up to `φ(horizon)`,
//! so sparse sets are sampled where their structure actually lives.

use crate::error::{Error, Result};
use crate::seqmap::{MonotoneMap, Nat};
use serde::{Deserialize, Serialize};

/// Smallest accepted horizon; below this the trailing window cannot be filled.
pub const MIN_HORIZON: u64 = 1_000;
/// Window spans `[hi / WINDOW_SPAN, hi]`.
pub const WINDOW_SPAN: u128 = 8;
/// Default tolerance for α-density acceptance checks.
pub const DEFAULT_TOLERANCE: f64 = 0.05;
/// A window counts as blown up only if its final value exceeds this floor.
pub const BLOWUP_FLOOR: f64 = 1.0;
/// Minimum growth factor across the window for an `infinite` verdict.
pub const BLOWUP_GROWTH: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum EstimateKind {
    Finite(f64),
    Infinite,
    Undetermined,
}

impl EstimateKind {
    pub fn finite_value(&self) -> Option<f64> {
        match self {
            EstimateKind::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, EstimateKind::Infinite)
    }
}

/// A windowed limit estimate with its observation metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub kind: EstimateKind,
    /// Enumeration budget the estimate was computed at.
    pub horizon: u64,
    /// max − min of the sampled ratio over the trailing window.
    pub window_spread: f64,
    pub tolerance: f64,
    /// Ratio at the first window sample.
    pub window_first: f64,
    /// Ratio at the final window sample (the horizon itself).
    pub window_last: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityClaim {
    DeltaAlphaDense,
    NotDenseWithinBudget,
    Undetermined,
}

/// Verdict on whether a map's range complement has α-density zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub claim: DensityClaim,
    pub alpha: f64,
    pub evidence: DensityEstimate,
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

fn validate_horizon(horizon: u64) -> Result<()> {
    if horizon < MIN_HORIZON {
        return Err(Error::InvalidInput(format!(
            "horizon {horizon} is smaller than the trailing window ({MIN_HORIZON})"
        )));
    }
    Ok(())
}

fn validate_tolerance(tolerance: f64) -> Result<()> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    Ok(())
}

/// Number of window samples for a given horizon.
fn window_size(horizon: u64) -> usize {
    (horizon / 100).max(1_000) as usize
}

/// Ascending, deduplicated log-spaced grid over `[lo, hi]`, ending at `hi`.
fn log_grid(lo: Nat, hi: Nat, count: usize) -> Vec<Nat> {
    let lo = lo.max(1);
    if hi <= lo || count <= 1 {
        return vec![hi.max(1)];
    }
    let (llo, lhi) = ((lo as f64).ln(), (hi as f64).ln());
    let mut grid = Vec::with_capacity(count);
    let mut prev: Nat = 0;
    for i in 0..count {
        let t = i as f64 / (count - 1) as f64;
        let pos = (llo + t * (lhi - llo)).exp();
        let mut p = pos as Nat;
        if p < lo {
            p = lo;
        }
        if p > hi {
            p = hi;
        }
        if p > prev {
            grid.push(p);
            prev = p;
        }
    }
    if *grid.last().unwrap() != hi {
        grid.push(hi);
    }
    grid
}

/// Classifies a sampled trailing window per the module rules.
fn classify(samples: &[(Nat, f64)], horizon: u64, tolerance: f64) -> DensityEstimate {
    let values: Vec<f64> = samples.iter().map(|&(_, v)| v).collect();
    let first = *values.first().unwrap();
    let last = *values.last().unwrap();
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    let spread = max - min;

    let kind = if spread <= tolerance {
        EstimateKind::Finite(last)
    } else if is_blowup(&values) {
        EstimateKind::Infinite
    } else {
        EstimateKind::Undetermined
    };
    DensityEstimate {
        kind,
        horizon,
        window_spread: spread,
        tolerance,
        window_first: first,
        window_last: last,
    }
}

/// Blow-up test: decile means nondecreasing, total growth at least
/// [`BLOWUP_GROWTH`], and the final value above [`BLOWUP_FLOOR`]. Decile
/// averaging absorbs the jitter that integer counts put on the raw ratios.
fn is_blowup(values: &[f64]) -> bool {
    let last = *values.last().unwrap();
    if last <= BLOWUP_FLOOR {
        return false;
    }
    let buckets = 10.min(values.len());
    let mut means = Vec::with_capacity(buckets);
    for b in 0..buckets {
        let lo = b * values.len() / buckets;
        let hi = ((b + 1) * values.len() / buckets).max(lo + 1);
        let slice = &values[lo..hi.min(values.len())];
        means.push(slice.iter().sum::<f64>() / slice.len() as f64);
    }
    for w in means.windows(2) {
        if w[1] < w[0] * (1.0 - 1e-9) - 1e-12 {
            return false;
        }
    }
    let (first, final_mean) = (means[0], *means.last().unwrap());
    final_mean >= first * BLOWUP_GROWTH || (first <= 0.0 && final_mean > BLOWUP_FLOOR)
}

fn to_f64(n: Nat) -> f64 {
    n as f64
}

/// Samples `#(A ∩ [1, n]) / n^α` for the set enumerated by `set`, at
/// log-spaced values `n` up to `set(horizon)`. Returns the estimate together
/// with the raw `(n, ratio)` window.
pub fn estimate_delta_alpha_traced(
    set: &MonotoneMap,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<(DensityEstimate, Vec<(Nat, f64)>)> {
    validate_alpha(alpha)?;
    validate_horizon(horizon)?;
    validate_tolerance(tolerance)?;
    let value_horizon = set.value(horizon as Nat);
    let grid = log_grid(
        value_horizon / WINDOW_SPAN,
        value_horizon,
        window_size(horizon),
    );
    let samples: Vec<(Nat, f64)> = grid
        .into_iter()
        .map(|n| {
            let count = set.count_range_le(n);
            (n, to_f64(count) / to_f64(n).powf(alpha))
        })
        .collect();
    Ok((classify(&samples, horizon, tolerance), samples))
}

/// Windowed estimate of the α-density of the set enumerated by `set`.
pub fn estimate_delta_alpha(
    set: &MonotoneMap,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<DensityEstimate> {
    estimate_delta_alpha_traced(set, alpha, horizon, tolerance).map(|(e, _)| e)
}

/// Windowed estimate of the asymptotic density of the set enumerated by
/// `set`. Identical to [`estimate_delta_alpha`] at α = 1, bit for bit.
pub fn estimate_delta(set: &MonotoneMap, horizon: u64, tolerance: f64) -> Result<DensityEstimate> {
    estimate_delta_alpha(set, 1.0, horizon, tolerance)
}

/// Windowed estimate of `lim n / φ(n)`, sampling in index space. This is an
/// independent route to the density of `range(φ)`: when both it and
/// [`estimate_delta`] come back finite they agree within twice the tolerance.
pub fn delta_of_map_traced(
    map: &MonotoneMap,
    horizon: u64,
    tolerance: f64,
) -> Result<(DensityEstimate, Vec<(Nat, f64)>)> {
    validate_horizon(horizon)?;
    validate_tolerance(tolerance)?;
    let h = horizon as Nat;
    let grid = log_grid(h / WINDOW_SPAN, h, window_size(horizon));
    let samples: Vec<(Nat, f64)> = grid
        .into_iter()
        .map(|k| (k, to_f64(k) / to_f64(map.value(k))))
        .collect();
    Ok((classify(&samples, horizon, tolerance), samples))
}

pub fn delta_of_map(map: &MonotoneMap, horizon: u64, tolerance: f64) -> Result<DensityEstimate> {
    delta_of_map_traced(map, horizon, tolerance).map(|(e, _)| e)
}

/// Windowed estimate of `lim (φ(n) − n) / φ(n)^α`, the α-density of the
/// complement of `range(φ)` sampled along the range itself.
pub fn delta_alpha_complement_traced(
    map: &MonotoneMap,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<(DensityEstimate, Vec<(Nat, f64)>)> {
    validate_alpha(alpha)?;
    validate_horizon(horizon)?;
    validate_tolerance(tolerance)?;
    let h = horizon as Nat;
    let grid = log_grid(h / WINDOW_SPAN, h, window_size(horizon));
    let samples: Vec<(Nat, f64)> = grid
        .into_iter()
        .map(|k| {
            let v = map.value(k);
            (k, to_f64(v - k) / to_f64(v).powf(alpha))
        })
        .collect();
    Ok((classify(&samples, horizon, tolerance), samples))
}

pub fn delta_alpha_complement(
    map: &MonotoneMap,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<DensityEstimate> {
    delta_alpha_complement_traced(map, alpha, horizon, tolerance).map(|(e, _)| e)
}

/// Windowed density estimate for an index set given by its counting function
/// `count(n) = #(A ∩ [1, n])`, sampled up to `value_horizon`. Used for
/// exception sets in statistical-convergence checks.
pub fn estimate_delta_alpha_counted(
    count: impl Fn(u64) -> u64,
    alpha: f64,
    value_horizon: u64,
    tolerance: f64,
) -> Result<DensityEstimate> {
    validate_alpha(alpha)?;
    validate_horizon(value_horizon)?;
    validate_tolerance(tolerance)?;
    let h = value_horizon as Nat;
    let grid = log_grid(h / WINDOW_SPAN, h, window_size(value_horizon));
    let samples: Vec<(Nat, f64)> = grid
        .into_iter()
        .map(|n| (n, count(n as u64) as f64 / to_f64(n).powf(alpha)))
        .collect();
    Ok(classify(&samples, value_horizon, tolerance))
}

/// Is the complement of `range(φ)` of α-density zero, as far as the budget
/// can tell? Built on [`delta_alpha_complement`].
pub fn is_delta_alpha_dense(
    map: &MonotoneMap,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<DensityVerdict> {
    let evidence = delta_alpha_complement(map, alpha, horizon, tolerance)?;
    let claim = match evidence.kind {
        EstimateKind::Finite(v) if v <= tolerance => DensityClaim::DeltaAlphaDense,
        EstimateKind::Finite(_) | EstimateKind::Infinite => DensityClaim::NotDenseWithinBudget,
        EstimateKind::Undetermined => DensityClaim::Undetermined,
    };
    Ok(DensityVerdict {
        claim,
        alpha,
        evidence,
    })
}

/// Report for the bounded-ratio-to-higher-exponent check: if `n / φ(n)^α`
/// stays bounded then the δ_β estimate of `range(φ)` should vanish.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialBoundingReport {
    pub alpha: f64,
    pub beta: f64,
    /// Whether the sampled `n / φ(n)^α` window avoided a blow-up verdict.
    pub premise_holds: bool,
    /// Largest sampled value of `n / φ(n)^α`.
    pub observed_bound: f64,
    pub alpha_ratio: DensityEstimate,
    pub beta_estimate: DensityEstimate,
    /// `premise_holds` implies the β-estimate fell below tolerance.
    pub consistent: bool,
}

pub fn check_initial_bounding(
    map: &MonotoneMap,
    alpha: f64,
    beta: f64,
    horizon: u64,
) -> Result<InitialBoundingReport> {
    validate_alpha(alpha)?;
    if !(beta > alpha && beta <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "need 0 < alpha < beta <= 1, got alpha={alpha}, beta={beta}"
        )));
    }
    validate_horizon(horizon)?;
    let tolerance = DEFAULT_TOLERANCE;
    let h = horizon as Nat;
    let grid = log_grid(h / WINDOW_SPAN, h, window_size(horizon));
    let samples: Vec<(Nat, f64)> = grid
        .into_iter()
        .map(|k| (k, to_f64(k) / to_f64(map.value(k)).powf(alpha)))
        .collect();
    let alpha_ratio = classify(&samples, horizon, tolerance);
    let observed_bound = samples.iter().map(|&(_, v)| v).fold(f64::MIN, f64::max);
    let premise_holds = !alpha_ratio.kind.is_infinite();
    let beta_estimate = estimate_delta_alpha(map, beta, horizon, tolerance)?;
    let beta_small = matches!(beta_estimate.kind, EstimateKind::Finite(v) if v <= tolerance);
    Ok(InitialBoundingReport {
        alpha,
        beta,
        premise_holds,
        observed_bound,
        alpha_ratio,
        beta_estimate,
        consistent: !premise_holds || beta_small,
    })
}

fn require_dense(map: &MonotoneMap, alpha: f64, horizon: u64) -> Result<()> {
    let verdict = is_delta_alpha_dense(map, alpha, horizon, DEFAULT_TOLERANCE)?;
    if verdict.claim != DensityClaim::DeltaAlphaDense {
        return Err(Error::Precondition(format!(
            "{} is not δ_α-dense at alpha={} within horizon {} (claim {:?}, window last {})",
            map.label(),
            alpha,
            horizon,
            verdict.claim,
            verdict.evidence.window_last
        )));
    }
    Ok(())
}

/// Report on the successive-quotient sequence `φ(ψ(n+1)) / φ(ψ(n))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioBoundReport {
    pub alpha: f64,
    pub horizon: u64,
    /// Maximum of the quotient over all `n < horizon`.
    pub max_ratio: f64,
    /// Mean of the quotient over the trailing window.
    pub window_mean: f64,
    /// Maximum of the quotient over the trailing window.
    pub window_max: f64,
}

/// Scans `φ(ψ(n+1)) / φ(ψ(n))` for `n < horizon`. Both maps must already
/// carry a `delta_alpha_dense` verdict at `alpha`; anything else is rejected.
pub fn check_ratio_bounded(
    phi: &MonotoneMap,
    psi: &MonotoneMap,
    alpha: f64,
    horizon: u64,
) -> Result<RatioBoundReport> {
    require_dense(phi, alpha, horizon)?;
    require_dense(psi, alpha, horizon)?;
    let h = horizon as Nat;
    let window_start = h - (h / WINDOW_SPAN).max(1);
    let mut max_ratio = f64::MIN;
    let mut window_max = f64::MIN;
    let mut window_sum = 0.0;
    let mut window_count = 0u64;
    let mut prev = to_f64(phi.value(psi.value(1)));
    for n in 1..h {
        let next = to_f64(phi.value(psi.value(n + 1)));
        let ratio = next / prev;
        prev = next;
        max_ratio = max_ratio.max(ratio);
        if n >= window_start {
            window_max = window_max.max(ratio);
            window_sum += ratio;
            window_count += 1;
        }
    }
    Ok(RatioBoundReport {
        alpha,
        horizon,
        max_ratio,
        window_mean: window_sum / window_count as f64,
        window_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Decreasing,
    Flat,
    Increasing,
}

/// Report for the composition-stays-dense check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsemigroupReport {
    pub alpha: f64,
    pub verdict: DensityVerdict,
    pub trend: Trend,
    /// Dense, or still undetermined but trending down.
    pub consistent_with_composition_law: bool,
}

/// Checks that the composition of two δ_α-dense maps still looks δ_α-dense.
pub fn verify_subsemigroup(
    phi: &MonotoneMap,
    psi: &MonotoneMap,
    alpha: f64,
    horizon: u64,
    tolerance: f64,
) -> Result<SubsemigroupReport> {
    require_dense(phi, alpha, horizon)?;
    require_dense(psi, alpha, horizon)?;
    let verdict = is_delta_alpha_dense(&phi.compose(psi), alpha, horizon, tolerance)?;
    let (first, last) = (verdict.evidence.window_first, verdict.evidence.window_last);
    let trend = if last <= first * 0.95 {
        Trend::Decreasing
    } else if last >= first * 1.05 {
        Trend::Increasing
    } else {
        Trend::Flat
    };
    let consistent = verdict.claim == DensityClaim::DeltaAlphaDense
        || (verdict.claim == DensityClaim::Undetermined && trend == Trend::Decreasing);
    Ok(SubsemigroupReport {
        alpha,
        verdict,
        trend,
        consistent_with_composition_law: consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqmap::{
        affine, block_skip, complement_enumerator, evens, identity, nonsquares, odds, power,
        power_skip, shift,
    };

    const H: u64 = 100_000;
    const TOL: f64 = 0.05;

    fn finite(e: &DensityEstimate) -> f64 {
        e.kind
            .finite_value()
            .unwrap_or_else(|| panic!("expected finite estimate, got {:?}", e))
    }

    #[test]
    fn evens_have_density_half() {
        let e = estimate_delta(&evens(), H, 0.01).unwrap();
        assert!((finite(&e) - 0.5).abs() <= 0.01, "{e:?}");
    }

    #[test]
    fn identity_has_density_one() {
        let e = estimate_delta(&identity(), H, 0.01).unwrap();
        assert!((finite(&e) - 1.0).abs() <= 0.01);
    }

    #[test]
    fn squares_have_density_zero() {
        let e = estimate_delta(&power(2), 1_000_000, 0.01).unwrap();
        assert!(finite(&e).abs() <= 0.01, "{e:?}");
    }

    #[test]
    fn alpha_one_is_bitwise_identical_to_delta() {
        for map in [evens(), power(2), nonsquares()] {
            let a = estimate_delta(&map, H, TOL).unwrap();
            let b = estimate_delta_alpha(&map, 1.0, H, TOL).unwrap();
            assert_eq!(a, b, "{}", map.label());
        }
    }

    #[test]
    fn squares_at_half_have_alpha_density_one() {
        let e = estimate_delta_alpha(&power(2), 0.5, H, TOL).unwrap();
        assert!((finite(&e) - 1.0).abs() <= 0.05, "{e:?}");
    }

    #[test]
    fn fourth_powers_at_half_vanish() {
        let e = estimate_delta_alpha(&power(4), 0.5, H, TOL).unwrap();
        assert!(finite(&e).abs() <= 0.01, "{e:?}");
    }

    #[test]
    fn squares_at_third_blow_up() {
        let e = estimate_delta_alpha(&power(2), 1.0 / 3.0, H, TOL).unwrap();
        assert!(e.kind.is_infinite(), "{e:?}");
    }

    #[test]
    fn fourth_powers_at_third_stay_small() {
        let e = estimate_delta_alpha(&power(4), 1.0 / 3.0, H, TOL).unwrap();
        assert!(finite(&e).abs() <= 0.05, "{e:?}");
    }

    #[test]
    fn evens_and_odds_blow_up_at_half() {
        for map in [evens(), odds()] {
            let e = estimate_delta_alpha(&map, 0.5, H, TOL).unwrap();
            assert!(e.kind.is_infinite(), "{} gave {e:?}", map.label());
        }
    }

    #[test]
    fn delta_of_map_basics() {
        let e = delta_of_map(&evens(), H, 0.01).unwrap();
        assert!((finite(&e) - 0.5).abs() <= 0.01);
        let e = delta_of_map(&power(2), H, 0.01).unwrap();
        assert!(finite(&e).abs() <= 0.01);
    }

    #[test]
    fn delta_of_map_agrees_with_set_estimate() {
        for map in [evens(), affine(3, 0), nonsquares(), power_skip(2)] {
            let a = delta_of_map(&map, H, TOL).unwrap();
            let b = estimate_delta(&map, H, TOL).unwrap();
            let (va, vb) = (finite(&a), finite(&b));
            assert!(
                (va - vb).abs() <= 2.0 * TOL,
                "{}: {va} vs {vb}",
                map.label()
            );
        }
    }

    #[test]
    fn product_of_affine_densities() {
        let a = finite(&delta_of_map(&affine(2, 0), H, TOL).unwrap());
        let b = finite(&delta_of_map(&affine(3, 0), H, TOL).unwrap());
        let ab = finite(&delta_of_map(&affine(2, 0).compose(&affine(3, 0)), H, TOL).unwrap());
        assert!((ab - a * b).abs() <= 0.02, "{ab} vs {}", a * b);
        assert!((ab - 1.0 / 6.0).abs() <= 0.02);
    }

    #[test]
    fn complement_ratio_of_shift_vanishes() {
        // Bounded numerator: (n+5) − n stays at 5, so the ratio dies off at
        // every α; smaller exponents just need a longer run to settle.
        for alpha in [0.5, 0.75, 1.0] {
            let e = delta_alpha_complement(&shift(5), alpha, H, TOL).unwrap();
            assert!(finite(&e).abs() <= TOL, "alpha={alpha}: {e:?}");
        }
        let e = delta_alpha_complement(&shift(5), 1.0, H, TOL).unwrap();
        assert!(finite(&e).abs() <= 0.001);
    }

    #[test]
    fn complement_ratio_of_evens_is_half() {
        let e = delta_alpha_complement(&evens(), 1.0, H, 0.01).unwrap();
        assert!((finite(&e) - 0.5).abs() <= 0.01);
    }

    #[test]
    fn complement_ratio_of_block_skip_vanishes_at_one() {
        let e = delta_alpha_complement(&block_skip(2), 1.0, H, TOL).unwrap();
        assert!(finite(&e).abs() <= 0.01, "{e:?}");
    }

    #[test]
    fn complement_routes_agree() {
        // Direct formula vs honest counting of the complement enumerator.
        for (map, alpha) in [(evens(), 1.0), (nonsquares(), 0.5), (power(2), 0.5)] {
            let direct = delta_alpha_complement(&map, alpha, H, TOL).unwrap();
            let comp = complement_enumerator(&map);
            let counted = estimate_delta_alpha(&comp, alpha, H, TOL).unwrap();
            match (direct.kind, counted.kind) {
                (EstimateKind::Finite(a), EstimateKind::Finite(b)) => {
                    assert!((a - b).abs() <= 2.0 * TOL, "{}: {a} vs {b}", map.label())
                }
                (a, b) => assert_eq!(
                    std::mem::discriminant(&a),
                    std::mem::discriminant(&b),
                    "{}: {a:?} vs {b:?}",
                    map.label()
                ),
            }
        }
    }

    #[test]
    fn monotone_containment_in_alpha() {
        for map in [shift(7), power_skip(2), block_skip(3)] {
            let lo = delta_alpha_complement(&map, 0.5, 1_000_000, TOL).unwrap();
            let hi = delta_alpha_complement(&map, 0.75, 1_000_000, TOL).unwrap();
            if let (Some(a), Some(b)) = (lo.kind.finite_value(), hi.kind.finite_value()) {
                assert!(b <= a + TOL, "{}: {b} > {a} + tol", map.label());
            }
        }
    }

    #[test]
    fn dense_verdicts() {
        let v = is_delta_alpha_dense(&shift(5), 0.5, H, TOL).unwrap();
        assert_eq!(v.claim, DensityClaim::DeltaAlphaDense);

        let v = is_delta_alpha_dense(&evens(), 1.0, H, TOL).unwrap();
        assert_eq!(v.claim, DensityClaim::NotDenseWithinBudget);
        assert!((finite(&v.evidence) - 0.5).abs() <= TOL);

        let v = is_delta_alpha_dense(&power_skip(2), 0.5, 1_000_000, TOL).unwrap();
        assert_eq!(v.claim, DensityClaim::DeltaAlphaDense, "{v:?}");
    }

    #[test]
    fn initial_bounding_reports() {
        let r = check_initial_bounding(&power(2), 0.5, 1.0, H).unwrap();
        assert!(r.premise_holds);
        assert!((r.observed_bound - 1.0).abs() <= 0.01);
        assert!(r.consistent, "{r:?}");

        let r = check_initial_bounding(&identity(), 0.5, 1.0, H).unwrap();
        assert!(!r.premise_holds, "{r:?}");
        assert!(r.consistent);

        let r = check_initial_bounding(&power(3), 1.0 / 3.0, 0.5, H).unwrap();
        assert!(r.premise_holds);
        assert!(r.consistent, "{r:?}");
    }

    #[test]
    fn ratio_bound_for_shifts() {
        let r = check_ratio_bounded(&shift(5), &shift(5), 0.5, H).unwrap();
        assert!(r.max_ratio <= 2.0);
        assert!((r.window_mean - 1.0).abs() <= 0.01, "{r:?}");
    }

    #[test]
    fn ratio_bound_for_identity() {
        let r = check_ratio_bounded(&identity(), &identity(), 1.0, 100_000).unwrap();
        assert!((r.max_ratio - 2.0).abs() <= 1e-9); // (n+1)/n peaks at n = 1
        assert!((r.window_mean - 1.0).abs() <= 0.01);
    }

    #[test]
    fn ratio_bound_for_sparse_skips() {
        let r = check_ratio_bounded(&power_skip(2), &power_skip(3), 0.5, 1_000_000).unwrap();
        assert!((r.window_mean - 1.0).abs() <= 0.05, "{r:?}");
    }

    #[test]
    fn ratio_bound_rejects_non_dense_inputs() {
        let err = check_ratio_bounded(&evens(), &shift(1), 1.0, H).unwrap_err();
        assert!(err.to_string().contains("not δ_α-dense"), "{err}");
    }

    #[test]
    fn subsemigroup_composition_checks() {
        let r = verify_subsemigroup(&shift(3), &shift(4), 0.5, H, TOL).unwrap();
        assert_eq!(r.verdict.claim, DensityClaim::DeltaAlphaDense);
        assert!(r.consistent_with_composition_law);

        let r = verify_subsemigroup(&power_skip(2), &power_skip(3), 0.5, 1_000_000, TOL).unwrap();
        assert!(r.consistent_with_composition_law, "{r:?}");
        assert!(r.verdict.evidence.window_last <= 0.05);

        let r = verify_subsemigroup(&shift(9), &power_skip(2), 0.5, 1_000_000, TOL).unwrap();
        assert!(r.consistent_with_composition_law, "{r:?}");
    }

    #[test]
    fn estimates_are_deterministic() {
        let a = estimate_delta_alpha(&nonsquares(), 0.5, H, TOL).unwrap();
        let b = estimate_delta_alpha(&nonsquares(), 0.5, H, TOL).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(estimate_delta_alpha(&evens(), 0.0, H, TOL).is_err());
        assert!(estimate_delta_alpha(&evens(), 1.5, H, TOL).is_err());
        assert!(estimate_delta_alpha(&evens(), 0.5, 10, TOL).is_err());
        assert!(estimate_delta_alpha(&evens(), 0.5, H, 0.0).is_err());
        assert!(check_initial_bounding(&evens(), 0.5, 0.5, H).is_err());
    }

    #[test]
    fn counted_estimator_matches_enumerated_route() {
        let map = evens();
        let counted = estimate_delta_alpha_counted(
            |n| map.count_range_le(n as Nat) as u64,
            1.0,
            H,
            TOL,
        )
        .unwrap();
        assert!((finite(&counted) - 0.5).abs() <= 0.01);
    }
}
