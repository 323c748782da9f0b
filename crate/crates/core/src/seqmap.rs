//! Strictly increasing maps on the positive integers.
//!
//! A [`MonotoneMap`] packages a pure evaluator `index -> value` (both 1-based)
//! together with a label and a memoized prefix. Strict increase forces
//! `value(n) >= n`, so these maps double as enumerators of infinite subsets of
//! the positive integers; the complement of the range is the set of skipped
//! values. Composition of two such maps is again strictly increasing, which is
//! what makes them usable as subsequence extractors.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Index/value domain for monotone maps. Compositions of the catalog's power
/// maps overflow `u64` well inside the horizons used here (e.g. `n^4` at
/// `n = 10^6`), so the wider type is used for both indices and values.
pub type Nat = u128;

struct MapInner {
    label: String,
    eval: Box<dyn Fn(Nat) -> Nat + Send + Sync>,
    /// Contiguous prefix cache: `memo[i]` holds the value at index `i + 1`.
    /// Concurrent reads are fine; fills are serialized by the lock.
    memo: Mutex<Vec<Nat>>,
}

/// A strictly increasing map from the positive integers to themselves.
///
/// Cloning is cheap (shared evaluator and prefix cache). Evaluators must be
/// pure; the memo asserts purity and strict increase as indices get evaluated.
#[derive(Clone)]
pub struct MonotoneMap {
    inner: Arc<MapInner>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonotoneMap({})", self.inner.label)
    }
}

impl MonotoneMap {
    /// Wraps a pure, strictly increasing evaluator. The contract is checked
    /// lazily: violations surface as panics when the offending indices are
    /// first evaluated through the prefix cache.
    pub fn new(label: impl Into<String>, eval: impl Fn(Nat) -> Nat + Send + Sync + 'static) -> Self {
        MonotoneMap {
            inner: Arc::new(MapInner {
                label: label.into(),
                eval: Box::new(eval),
                memo: Mutex::new(Vec::new()),
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Value at a 1-based index.
    ///
    /// Indices inside the cached prefix are served from the memo (re-evaluated
    /// values must agree with the cache). An index one past the prefix extends
    /// it; anything further is computed directly without growing the cache, so
    /// sparse probing at large indices stays cheap.
    pub fn value(&self, index: Nat) -> Nat {
        assert!(index >= 1, "monotone map indices are 1-based");
        let mut memo = self.inner.memo.lock().unwrap();
        let idx = index as usize;
        if idx <= memo.len() {
            return memo[idx - 1];
        }
        let v = (self.inner.eval)(index);
        assert!(v >= 1, "{}: value at {} must be >= 1", self.inner.label, index);
        if idx == memo.len() + 1 {
            if let Some(&last) = memo.last() {
                assert!(
                    v > last,
                    "{}: not strictly increasing at index {} ({} -> {})",
                    self.inner.label,
                    index,
                    last,
                    v
                );
            }
            memo.push(v);
        }
        v
    }

    /// First `horizon` values, filling the prefix cache (and therefore
    /// checking strict increase along the way).
    pub fn prefix(&self, horizon: Nat) -> Vec<Nat> {
        (1..=horizon).map(|n| self.value(n)).collect()
    }

    /// Checks `value(n) < value(n+1)` and `value(n) >= n` for `n <= horizon`,
    /// evaluating outside the cache so the check is independent of fill order.
    pub fn check_strictly_increasing(&self, horizon: Nat) -> Result<()> {
        let mut prev: Option<Nat> = None;
        for n in 1..=horizon {
            let v = (self.inner.eval)(n);
            if v < n {
                return Err(Error::WitnessValidation(format!(
                    "{}: value {} at index {} is below the index",
                    self.inner.label, v, n
                )));
            }
            if let Some(p) = prev {
                if v <= p {
                    return Err(Error::WitnessValidation(format!(
                        "{}: not strictly increasing at index {}",
                        self.inner.label, n
                    )));
                }
            }
            prev = Some(v);
        }
        Ok(())
    }

    /// Functional composition: the result evaluates `self(other(n))`.
    pub fn compose(&self, other: &MonotoneMap) -> MonotoneMap {
        let f = self.clone();
        let g = other.clone();
        let label = format!("{}∘{}", self.label(), other.label());
        MonotoneMap::new(label, move |n| f.value(g.value(n)))
    }

    /// `C_φ ∩ [1, horizon]` in increasing order: the values up to `horizon`
    /// skipped by this map.
    pub fn complement_prefix(&self, horizon: Nat) -> Vec<Nat> {
        assert!(horizon >= 1, "horizon must be >= 1");
        let mut out = Vec::new();
        let mut next_expected: Nat = 1;
        let mut k: Nat = 1;
        loop {
            let v = self.value(k);
            if v > horizon {
                break;
            }
            for missing in next_expected..v {
                out.push(missing);
            }
            next_expected = v + 1;
            k += 1;
        }
        for missing in next_expected..=horizon {
            out.push(missing);
        }
        out
    }

    /// Number of range elements `<= bound`, by exponential plus binary search
    /// over the index. Relies on strict increase; the upper probe grows by
    /// doubling so evaluators are never asked for indices far past the answer.
    pub fn count_range_le(&self, bound: Nat) -> Nat {
        if bound == 0 || self.value(1) > bound {
            return 0;
        }
        let mut hi: Nat = 1; // grows until value(hi) > bound
        while self.value(hi) <= bound {
            hi = hi.saturating_mul(2);
        }
        let mut lo: Nat = hi / 2; // value(lo) <= bound
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.value(mid) <= bound {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Enumerator of the complement of `map`'s range.
///
/// Only meaningful when the complement is infinite; the evaluator searches by
/// doubling and panics if the requested complement element does not exist
/// below `2^100`.
pub fn complement_enumerator(map: &MonotoneMap) -> MonotoneMap {
    let inner = map.clone();
    let label = format!("complement({})", map.label());
    MonotoneMap::new(label, move |n| {
        let complement_count = |x: Nat| x - inner.count_range_le(x);
        let mut hi: Nat = 1;
        while complement_count(hi) < n {
            assert!(hi < (1u128 << 100), "complement appears finite");
            hi *= 2;
        }
        let mut lo: Nat = 0; // complement_count(lo) < n
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if complement_count(mid) >= n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    })
}

/// Evidence that a map is eventually the pure shift `k ↦ base + k`:
/// `φ(pivot + k) = base + k` for every probed `k >= 0`.
///
/// Witnesses are produced by budget-bounded search; absence of a witness is
/// "undetermined within budget", never a proof that the range is co-infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CofiniteWitness {
    pub pivot: Nat,
    pub base: Nat,
}

impl CofiniteWitness {
    /// Exact check of the tail law against `map` for all `k <= probe_budget`.
    pub fn validate(&self, map: &MonotoneMap, probe_budget: Nat) -> Result<()> {
        if self.pivot < 1 || self.base < 1 {
            return Err(Error::WitnessValidation("pivot and base must be >= 1".into()));
        }
        for k in 0..=probe_budget {
            let got = map.value(self.pivot + k);
            let want = self.base + k;
            if got != want {
                return Err(Error::WitnessValidation(format!(
                    "{}: tail law fails at k={} (value {}, expected {})",
                    map.label(),
                    k,
                    got,
                    want
                )));
            }
        }
        Ok(())
    }
}

/// Searches for the least pivot whose consecutive run `φ(n+1) = φ(n) + 1`
/// is sustained through `search_budget`. Returns `None` when the last gap
/// sits at the budget's edge, i.e. no nonempty run could be verified.
pub fn cofinite_witness(map: &MonotoneMap, search_budget: Nat) -> Option<CofiniteWitness> {
    assert!(search_budget >= 2, "search budget must be >= 2");
    let mut last_break: Nat = 0;
    let mut prev = map.value(1);
    for n in 2..=search_budget {
        let v = map.value(n);
        if v != prev + 1 {
            last_break = n - 1;
        }
        prev = v;
    }
    let pivot = last_break + 1;
    if pivot >= search_budget {
        return None;
    }
    Some(CofiniteWitness {
        pivot,
        base: map.value(pivot),
    })
}

/// Tail law for a composition: from witnesses `(n_φ, M_φ)` and `(n_ψ, M_ψ)`
/// the composition `φ∘ψ` satisfies `φ(ψ(n_φ + n_ψ + k)) = M_φ + M_ψ + k`.
///
/// Both input witnesses are re-validated against their maps and the output
/// is validated against the actual composition up to `probe_budget`; a
/// failure signals a corrupt input witness.
pub fn cofinite_compose_law(
    phi: &MonotoneMap,
    w_phi: &CofiniteWitness,
    psi: &MonotoneMap,
    w_psi: &CofiniteWitness,
    probe_budget: Nat,
) -> Result<CofiniteWitness> {
    w_phi.validate(phi, probe_budget)?;
    w_psi.validate(psi, probe_budget)?;
    let out = CofiniteWitness {
        pivot: w_phi.pivot + w_psi.pivot,
        base: w_phi.base + w_psi.base,
    };
    let composed = phi.compose(psi);
    out.validate(&composed, probe_budget)?;
    Ok(out)
}

/// Diagonal pairing bijection on the positive integers.
///
/// `(1,1) ↦ 1`, then anti-diagonals in order of increasing `n + j`.
pub fn pairing(n: u64, j: u64) -> u64 {
    assert!(n >= 1 && j >= 1, "pairing arguments are 1-based");
    let x = n - 1;
    let y = j - 1;
    let s = x + y;
    s * (s + 1) / 2 + y + 1
}

/// Inverse of [`pairing`].
pub fn unpairing(m: u64) -> (u64, u64) {
    assert!(m >= 1, "pairing codes are 1-based");
    let z = m - 1;
    // Largest s with s(s+1)/2 <= z.
    let mut s = ((((8 * z + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
    while (s + 1) * (s + 2) / 2 <= z {
        s += 1;
    }
    while s * (s + 1) / 2 > z {
        s -= 1;
    }
    let y = z - s * (s + 1) / 2;
    let x = s - y;
    (x + 1, y + 1)
}

fn isqrt(n: Nat) -> Nat {
    num_integer::Roots::sqrt(&n)
}

/// Affine map `n ↦ a·n + b` (requires `a >= 1`). Saturating arithmetic keeps
/// exponential index probes from overflowing; saturated values only ever feed
/// comparisons, never cached prefixes.
pub fn affine(a: Nat, b: Nat) -> MonotoneMap {
    assert!(a >= 1, "affine slope must be >= 1");
    MonotoneMap::new(format!("affine({a},{b})"), move |n| {
        a.saturating_mul(n).saturating_add(b)
    })
}

/// `n ↦ n^k` (requires `k >= 1`).
pub fn power(k: u32) -> MonotoneMap {
    assert!(k >= 1, "power exponent must be >= 1");
    MonotoneMap::new(format!("power({k})"), move |n| {
        let mut acc: Nat = 1;
        for _ in 0..k {
            acc = acc.saturating_mul(n);
        }
        acc
    })
}

pub fn identity() -> MonotoneMap {
    MonotoneMap::new("identity", |n| n)
}

/// Pure shift `n ↦ n + c`.
pub fn shift(c: Nat) -> MonotoneMap {
    MonotoneMap::new(format!("shift({c})"), move |n| n.saturating_add(c))
}

pub fn evens() -> MonotoneMap {
    MonotoneMap::new("evens", |n| n.saturating_mul(2))
}

pub fn odds() -> MonotoneMap {
    MonotoneMap::new("odds", |n| n.saturating_mul(2) - 1)
}

/// Least fixpoint of `x = n + skipped_le(x)`, which lands on the n-th value
/// outside the skipped set whenever `skipped_le` counts a set of skipped
/// values. `skipped_le` must be monotone.
fn enumerate_complement(n: Nat, skipped_le: impl Fn(Nat) -> Nat) -> Nat {
    let mut x = n;
    loop {
        let next = n + skipped_le(x);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Enumerator of the positive integers minus a finite set.
pub fn skip_finite(skipped: &BTreeSet<Nat>) -> MonotoneMap {
    let set = skipped.clone();
    let label = format!(
        "skip{{{}}}",
        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    MonotoneMap::new(label, move |n| {
        enumerate_complement(n, |x| set.range(..=x).count() as Nat)
    })
}

/// Enumerator of the non-squares. Closed form: the n-th non-square is
/// `n + round(sqrt(n))`.
pub fn nonsquares() -> MonotoneMap {
    MonotoneMap::new("nonsquares", |n| {
        let r = isqrt(n);
        let nearest = if n > r * r + r { r + 1 } else { r };
        n + nearest
    })
}

/// Enumerator of the positive integers minus the powers `{base^k : k >= 1}`.
/// The complement count up to `x` grows like `log(x)`, so the skipped set is
/// thin enough to leave the range α-dense at every α in (0, 1].
pub fn power_skip(base: Nat) -> MonotoneMap {
    assert!(base >= 2, "power_skip base must be >= 2");
    MonotoneMap::new(format!("powerskip({base})"), move |n| {
        enumerate_complement(n, |x| {
            let mut count = 0;
            let mut p = base;
            while p <= x {
                count += 1;
                match p.checked_mul(base) {
                    Some(next) => p = next,
                    None => break,
                }
            }
            count
        })
    })
}

fn sum_of_powers(m: Nat, p: u32) -> Nat {
    match p {
        2 => m * (m + 1) * (2 * m + 1) / 6,
        3 => {
            let t = m * (m + 1) / 2;
            t * t
        }
        _ => unreachable!("block_skip supports p in {{2, 3}}"),
    }
}

/// Block-skip enumerator: the positive integers are split into consecutive
/// blocks where the m-th block has length `m^p`, and the last value of each
/// block is skipped. The complement count up to `x` grows like `x^(1/(p+1))`.
pub fn block_skip(p: u32) -> MonotoneMap {
    assert!(p == 2 || p == 3, "block_skip supports p in {{2, 3}}");
    MonotoneMap::new(format!("blockskip({p})"), move |n| {
        enumerate_complement(n, |x| {
            // Number of block boundaries <= x: largest m with sum_{i<=m} i^p <= x.
            let mut m = match p {
                2 => num_integer::Roots::cbrt(&x.saturating_mul(3)),
                _ => isqrt(isqrt(x.saturating_mul(4))) + 1,
            };
            while sum_of_powers(m, p) > x {
                m -= 1;
            }
            while sum_of_powers(m + 1, p) <= x {
                m += 1;
            }
            m
        })
    })
}

/// The catalog of stock generators, addressable through [`from_label`].
pub fn standard_generators() -> Vec<MonotoneMap> {
    vec![
        identity(),
        evens(),
        odds(),
        shift(3),
        shift(5),
        affine(2, 0),
        affine(3, 0),
        power(2),
        power(4),
        skip_finite(&BTreeSet::from([2, 5])),
        nonsquares(),
        power_skip(2),
        power_skip(3),
        block_skip(2),
        block_skip(3),
    ]
}

/// Parses a catalog label: `identity`, `evens`, `odds`, `shift:c`,
/// `affine:a,b`, `power:k`, `skip:{a,b,...}`, `nonsquares`, `powerskip:b`,
/// `blockskip:p`, and `compose:label|label`.
pub fn from_label(label: &str) -> Result<MonotoneMap> {
    let unknown = || Error::UnknownLabel(label.to_string());
    if let Some(rest) = label.strip_prefix("compose:") {
        let (lhs, rhs) = rest.split_once('|').ok_or_else(unknown)?;
        return Ok(from_label(lhs)?.compose(&from_label(rhs)?));
    }
    match label {
        "identity" => return Ok(identity()),
        "evens" => return Ok(evens()),
        "odds" => return Ok(odds()),
        "nonsquares" => return Ok(nonsquares()),
        _ => {}
    }
    let (head, args) = label.split_once(':').ok_or_else(unknown)?;
    match head {
        "shift" => Ok(shift(args.parse().map_err(|_| unknown())?)),
        "power" => Ok(power(args.parse().map_err(|_| unknown())?)),
        "powerskip" => Ok(power_skip(args.parse().map_err(|_| unknown())?)),
        "blockskip" => Ok(block_skip(args.parse().map_err(|_| unknown())?)),
        "affine" => {
            let (a, b) = args.split_once(',').ok_or_else(unknown)?;
            Ok(affine(
                a.trim().parse().map_err(|_| unknown())?,
                b.trim().parse().map_err(|_| unknown())?,
            ))
        }
        "skip" => {
            let body = args
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(unknown)?;
            let mut set = BTreeSet::new();
            for part in body.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                set.insert(part.parse().map_err(|_| unknown())?);
            }
            Ok(skip_finite(&set))
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_squares_gives_fourth_powers() {
        let sq = power(2);
        let quad = sq.compose(&sq);
        for n in 1..=100u128 {
            assert_eq!(quad.value(n), n.pow(4));
        }
    }

    #[test]
    fn compose_identity_is_neutral() {
        let id = identity();
        let psi = shift(7);
        let left = id.compose(&psi);
        for n in 1..=200 {
            assert_eq!(left.value(n), psi.value(n));
        }
    }

    #[test]
    fn compose_affines_multiplies_slopes() {
        let phi = affine(2, 0);
        let psi = affine(3, 0);
        let comp = phi.compose(&psi);
        for n in 1..=10_000u128 {
            assert_eq!(comp.value(n), 6 * n);
        }
    }

    #[test]
    fn complement_of_evens_is_odds() {
        assert_eq!(evens().complement_prefix(10), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn complement_of_unit_shift() {
        assert_eq!(shift(1).complement_prefix(10), vec![1]);
    }

    #[test]
    fn complement_count_of_squares_at_square_horizons() {
        let sq = power(2);
        for n in [2u128, 5, 10, 31, 100] {
            let horizon = n * n;
            let comp = sq.complement_prefix(horizon);
            assert_eq!(comp.len() as Nat, horizon - n);
        }
    }

    #[test]
    fn complement_and_range_partition_the_interval() {
        for map in [evens(), power(2), nonsquares(), power_skip(2)] {
            let horizon = 500;
            let comp: BTreeSet<Nat> = map.complement_prefix(horizon).into_iter().collect();
            let mut range = BTreeSet::new();
            let mut k = 1;
            while map.value(k) <= horizon {
                range.insert(map.value(k));
                k += 1;
            }
            assert!(comp.is_disjoint(&range), "{}", map.label());
            assert_eq!(comp.len() + range.len(), horizon as usize);
        }
    }

    #[test]
    fn cofinite_witness_of_pure_shift() {
        let w = cofinite_witness(&shift(3), 100).expect("shift is cofinite");
        assert_eq!(w, CofiniteWitness { pivot: 1, base: 4 });
    }

    #[test]
    fn cofinite_witness_absent_for_evens() {
        for budget in [2, 10, 100, 1000] {
            assert!(cofinite_witness(&evens(), budget).is_none());
        }
    }

    #[test]
    fn cofinite_witness_of_finite_skip() {
        // Brute-force enumeration of ℕ \ {2,5}: 1,3,4,6,7,8,...
        let map = skip_finite(&BTreeSet::from([2, 5]));
        assert_eq!(map.prefix(6), vec![1, 3, 4, 6, 7, 8]);
        let w = cofinite_witness(&map, 100).expect("finite skip is cofinite");
        assert_eq!(w, CofiniteWitness { pivot: 4, base: 6 });
        w.validate(&map, 1000).unwrap();
    }

    #[test]
    fn compose_law_on_shifts() {
        let phi = shift(1);
        let psi = shift(2);
        let w_phi = cofinite_witness(&phi, 50).unwrap();
        let w_psi = cofinite_witness(&psi, 50).unwrap();
        assert_eq!(w_phi, CofiniteWitness { pivot: 1, base: 2 });
        assert_eq!(w_psi, CofiniteWitness { pivot: 1, base: 3 });
        let w = cofinite_compose_law(&phi, &w_phi, &psi, &w_psi, 1000).unwrap();
        assert_eq!(w, CofiniteWitness { pivot: 2, base: 5 });
    }

    #[test]
    fn compose_law_arithmetic() {
        // Maps chosen so their witnesses are exactly (2,4) and (3,7).
        let phi = skip_finite(&BTreeSet::from([2, 3])); // 1,4,5,6,...
        let psi = skip_finite(&BTreeSet::from([2, 4, 5, 6])); // 1,3,7,8,...
        let w_phi = cofinite_witness(&phi, 200).unwrap();
        assert_eq!(w_phi, CofiniteWitness { pivot: 2, base: 4 });
        let w_psi = cofinite_witness(&psi, 200).unwrap();
        assert_eq!(w_psi, CofiniteWitness { pivot: 3, base: 7 });
        let w = cofinite_compose_law(&phi, &w_phi, &psi, &w_psi, 1000).unwrap();
        assert_eq!(w, CofiniteWitness { pivot: 5, base: 11 });
    }

    #[test]
    fn compose_law_identity_like() {
        let id = identity();
        let w = cofinite_witness(&id, 10).unwrap();
        assert_eq!(w, CofiniteWitness { pivot: 1, base: 1 });
        let out = cofinite_compose_law(&id, &w, &id, &w, 500).unwrap();
        assert_eq!(out, CofiniteWitness { pivot: 2, base: 2 });
    }

    #[test]
    fn compose_law_rejects_corrupt_witness() {
        let phi = shift(1);
        let bogus = CofiniteWitness { pivot: 1, base: 7 };
        let good = cofinite_witness(&phi, 50).unwrap();
        assert!(cofinite_compose_law(&phi, &bogus, &phi, &good, 100).is_err());
    }

    #[test]
    fn pairing_round_trip() {
        assert_eq!(unpairing(pairing(3, 5)), (3, 5));
        for m in 1..=2000 {
            let (n, j) = unpairing(m);
            assert_eq!(pairing(n, j), m);
        }
    }

    #[test]
    fn pairing_injective_on_square_grid() {
        let mut seen = BTreeSet::new();
        for n in 1..=100 {
            for j in 1..=100 {
                assert!(seen.insert(pairing(n, j)), "collision at ({n},{j})");
            }
        }
        assert_eq!(seen.len(), 100 * 100);
    }

    #[test]
    fn catalog_maps_are_strictly_increasing_and_dominate_index() {
        for map in standard_generators() {
            map.check_strictly_increasing(10_000)
                .unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn composition_is_associative_on_prefixes() {
        let phi = power(2);
        let psi = shift(4);
        let chi = evens();
        let left = phi.compose(&psi).compose(&chi);
        let right = phi.compose(&psi.compose(&chi));
        for n in 1..=1000 {
            assert_eq!(left.value(n), right.value(n));
        }
    }

    #[test]
    fn nonsquares_complement_is_exactly_the_squares() {
        // Sieve oracle: mark squares up to the horizon directly.
        let horizon: Nat = 10_000;
        let mut squares = Vec::new();
        let mut k = 1;
        while k * k <= horizon {
            squares.push(k * k);
            k += 1;
        }
        assert_eq!(nonsquares().complement_prefix(horizon), squares);
    }

    #[test]
    fn power_skip_complement_is_the_power_tower() {
        assert_eq!(
            power_skip(2).complement_prefix(100),
            vec![2, 4, 8, 16, 32, 64]
        );
    }

    #[test]
    fn block_skip_complement_matches_block_boundaries() {
        // Blocks of length 1,4,9,16,... so boundaries fall at 1,5,14,30,55,...
        assert_eq!(block_skip(2).complement_prefix(60), vec![1, 5, 14, 30, 55]);
        let map = block_skip(2);
        map.check_strictly_increasing(5000).unwrap();
    }

    #[test]
    fn labels_round_trip_through_parser() {
        for label in [
            "identity",
            "evens",
            "odds",
            "shift:5",
            "affine:2,0",
            "power:2",
            "skip:{2,5}",
            "nonsquares",
            "powerskip:2",
            "blockskip:2",
            "compose:power:2|power:2",
        ] {
            let map = from_label(label).unwrap_or_else(|e| panic!("{label}: {e}"));
            map.check_strictly_increasing(500).unwrap();
        }
        assert!(from_label("no-such-map").is_err());
    }

    #[test]
    fn memo_serves_reevaluations_identically() {
        let map = nonsquares();
        let first = map.prefix(300);
        let second = map.prefix(300);
        assert_eq!(first, second);
        assert_eq!(map.value(150), first[149]);
    }

    #[test]
    fn complement_enumerator_of_evens_is_odds() {
        let comp = complement_enumerator(&evens());
        for n in 1..=500u128 {
            assert_eq!(comp.value(n), 2 * n - 1);
        }
        let nonsq = complement_enumerator(&power(2));
        assert_eq!(nonsq.prefix(7), vec![2, 3, 5, 6, 7, 8, 10]);
    }

    #[test]
    fn count_range_le_matches_linear_scan() {
        for map in [evens(), power(2), nonsquares(), block_skip(2)] {
            for bound in [0u128, 1, 7, 100, 999] {
                let mut expect = 0;
                let mut k = 1;
                while map.value(k) <= bound {
                    expect += 1;
                    k += 1;
                }
                assert_eq!(map.count_range_le(bound), expect, "{} at {}", map.label(), bound);
            }
        }
    }
}
