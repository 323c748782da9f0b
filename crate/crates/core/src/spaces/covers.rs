//! Sequential cover classification on finite spaces.
//!
//! A finite list of opens stands in for an infinite cover sequence. In the
//! canonical `EventuallyRepeating` reading the list's final entry repeats
//! forever, so "cofinitely many indices" is decidable: a point is
//! tail-uniformly covered exactly when it sits inside a full suffix of the
//! list. `AsGiven` interprets the quantifiers over the finite index range,
//! which yields the same arithmetic; the declared mode is carried into every
//! report so downstream consumers know which surrogate was meant.

use super::basic::OpenSet;
use super::point::Point;
use super::presentation::SpacePresentation;
use crate::error::{Error, Result};
use crate::seqmap::{MonotoneMap, Nat};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    EventuallyRepeating,
    AsGiven,
}

/// An ordered list of opens over a finite space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSequence {
    pub entries: Vec<OpenSet>,
    pub mode: CoverMode,
}

impl CoverSequence {
    pub fn eventually_repeating(entries: Vec<OpenSet>) -> Self {
        CoverSequence {
            entries,
            mode: CoverMode::EventuallyRepeating,
        }
    }

    /// Entry at a 1-based infinite index under the declared surrogate.
    pub fn entry_at(&self, n: Nat) -> &OpenSet {
        let idx = (n as usize).min(self.entries.len()) - 1;
        &self.entries[idx]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverClass {
    /// Covers every point at least once but not tail-uniformly.
    VecO,
    /// Tail-uniform without covering everything; unreachable (kept so the
    /// classification vocabulary is complete).
    VecGamma,
    Neither,
    Both,
}

fn require_finite<'s>(space: &'s SpacePresentation) -> Result<&'s [Point]> {
    space.finite_points().ok_or_else(|| {
        Error::InvalidInput(format!(
            "cover classification needs a finite space, got {}",
            space.label()
        ))
    })
}

fn covers_point(cover: &CoverSequence, x: &Point) -> bool {
    cover.entries.iter().any(|u| u.contains(x))
}

/// Is `x` covered at all but finitely many indices? The final entry repeats
/// forever, so this is exactly membership in it: the list length itself then
/// witnesses the cut.
fn tail_uniform(cover: &CoverSequence, x: &Point) -> bool {
    cover.entries.last().is_some_and(|u| u.contains(x))
}

/// Exact classification of a cover over a finite space.
pub fn vec_cover_class(cover: &CoverSequence, space: &SpacePresentation) -> Result<CoverClass> {
    let points = require_finite(space)?;
    if cover.entries.is_empty() {
        return Err(Error::InvalidInput("cover list must be nonempty".into()));
    }
    let is_o = points.iter().all(|x| covers_point(cover, x));
    let is_gamma = points.iter().all(|x| tail_uniform(cover, x));
    Ok(match (is_o, is_gamma) {
        (true, true) => CoverClass::Both,
        (true, false) => CoverClass::VecO,
        (false, true) => CoverClass::VecGamma,
        (false, false) => CoverClass::Neither,
    })
}

/// Is the φ-subsequence of the cover still a cover? Exact under the
/// repeating surrogate: indices past the list length all denote the final
/// entry, so only finitely many subsequence entries matter.
pub fn subcover_is_vec_o(
    cover: &CoverSequence,
    phi: &MonotoneMap,
    space: &SpacePresentation,
) -> Result<bool> {
    let points = require_finite(space)?;
    let len = cover.entries.len() as Nat;
    let mut entries: Vec<&OpenSet> = Vec::new();
    let mut n: Nat = 1;
    loop {
        let idx = phi.value(n);
        entries.push(cover.entry_at(idx));
        if idx >= len {
            break; // everything beyond repeats the final entry
        }
        n += 1;
    }
    Ok(points
        .iter()
        .all(|x| entries.iter().any(|u| u.contains(x))))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EscapeWitness {
    /// Point with no tail-uniform cover.
    pub missed_point: Point,
    /// Leading values of the recursively built index map.
    pub escape_prefix: Vec<u64>,
    /// The escape subsequence fails to cover `missed_point`.
    pub subcover_vec_o: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaSamplingReport {
    pub classification: CoverClass,
    pub samples: Vec<(String, bool)>,
    pub escape: Option<EscapeWitness>,
    pub consistent: bool,
}

/// Builds the escape subsequence for a point that is not tail-uniformly
/// covered: it enumerates exactly the indices whose entries miss the point.
pub fn escape_map(cover: &CoverSequence, missed: &Point) -> MonotoneMap {
    let len = cover.entries.len() as Nat;
    let failures: Vec<Nat> = (1..=len)
        .filter(|&i| !cover.entry_at(i).contains(missed))
        .collect();
    let cover = cover.clone();
    let missed = missed.clone();
    debug_assert!(
        !cover.entry_at(len).contains(&missed),
        "escape_map needs a point missing from the repeating tail"
    );
    MonotoneMap::new("escape", move |n| {
        let k = failures.len() as Nat;
        if n <= k {
            failures[(n - 1) as usize]
        } else {
            len + (n - k)
        }
    })
}

/// Checks, on sampled subsequence maps, that tail-uniform covers are exactly
/// the ones whose every subsequence is still a cover. When the cover is not
/// tail-uniform the failing direction is verified constructively via
/// [`escape_map`].
pub fn gamma_equals_s_vec_o_check(
    cover: &CoverSequence,
    space: &SpacePresentation,
    samples: &[MonotoneMap],
) -> Result<GammaSamplingReport> {
    let points = require_finite(space)?;
    let classification = vec_cover_class(cover, space)?;
    let is_gamma = matches!(classification, CoverClass::Both | CoverClass::VecGamma);

    let mut sample_results = Vec::with_capacity(samples.len());
    for phi in samples {
        sample_results.push((
            phi.label().to_string(),
            subcover_is_vec_o(cover, phi, space)?,
        ));
    }

    let mut escape = None;
    if !is_gamma {
        if let Some(missed) = points.iter().find(|x| !tail_uniform(cover, x)) {
            let phi = escape_map(cover, missed);
            let still_covers = subcover_is_vec_o(cover, &phi, space)?;
            escape = Some(EscapeWitness {
                missed_point: missed.clone(),
                escape_prefix: (1..=8).map(|n| phi.value(n) as u64).collect(),
                subcover_vec_o: still_covers,
            });
        }
    }

    let consistent = if is_gamma {
        sample_results.iter().all(|(_, ok)| *ok)
    } else {
        escape.as_ref().is_some_and(|e| !e.subcover_vec_o)
    };

    Ok(GammaSamplingReport {
        classification,
        samples: sample_results,
        escape,
        consistent,
    })
}
