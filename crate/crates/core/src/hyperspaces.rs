//! Finite-subset hyperspaces: Pixley-Roy and Vietoris basics, grouping of
//! closed discrete sequences into finite blocks, and certificate translation
//! from the Vietoris topology to the finer Pixley-Roy topology.

use crate::error::{Error, Result};
use crate::seqmap::{MonotoneMap, Nat};
use crate::spaces::{
    cd_certificate, BasicOpen, CdOutcome, FiniteSubset, OpenSet, Point, SeparationCertificate,
    SpacePresentation,
};
use serde::{Deserialize, Serialize};

/// Pixley-Roy basic `[F, U] = {G : F ⊆ G ⊆ U}`. Emptiness (`F ⊄ U`) is
/// flagged when the descriptor is built, not when it is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrBasicOpen {
    pub f: FiniteSubset,
    pub u: OpenSet,
    pub empty: bool,
}

impl PrBasicOpen {
    pub fn new(f: FiniteSubset, u: OpenSet) -> Self {
        let empty = !f.iter().all(|x| u.contains(x));
        PrBasicOpen { f, u, empty }
    }

    pub fn as_basic(&self) -> BasicOpen {
        BasicOpen::PixleyRoy {
            f: self.f.clone(),
            u: self.u.clone(),
        }
    }
}

/// Vietoris basic `[U_1, …, U_n]`: contained in the union, meeting each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VietorisBasicOpen {
    pub opens: Vec<OpenSet>,
}

impl VietorisBasicOpen {
    pub fn new(opens: Vec<OpenSet>) -> Result<Self> {
        if opens.is_empty() {
            return Err(Error::InvalidInput(
                "a Vietoris basic needs at least one open".into(),
            ));
        }
        Ok(VietorisBasicOpen { opens })
    }

    pub fn as_basic(&self) -> BasicOpen {
        BasicOpen::Vietoris {
            opens: self.opens.clone(),
        }
    }
}

/// `F ⊆ G` and `G ⊆ U`.
pub fn pr_member(g: &FiniteSubset, b: &PrBasicOpen) -> bool {
    b.f.is_subset(g) && g.iter().all(|x| b.u.contains(x))
}

/// `G ⊆ ⋃ opens` and `G` meets every listed open.
pub fn vietoris_member(g: &FiniteSubset, b: &VietorisBasicOpen) -> bool {
    g.iter().all(|x| b.opens.iter().any(|u| u.contains(x)))
        && b.opens.iter().all(|u| g.iter().any(|x| u.contains(x)))
}

/// Union with one extra point; idempotent when the point is present.
pub fn append_point(f: &FiniteSubset, x: Point) -> FiniteSubset {
    f.with_point(x)
}

/// Builds a Vietoris basic around `f` from a Pixley-Roy basic containing it.
///
/// Per point, the coarsest available open inside `b.u` that excludes the
/// other points of `f` is chosen: all of `b.u` when nothing needs excluding,
/// otherwise a part of `b.u` or an enumerated neighborhood basic. When the
/// chosen opens fail to cover `b.u`, the whole of `b.u` is appended so that
/// any `G` with `f ⊆ G ⊆ b.u` stays a member.
pub fn refine_vietoris_inside_pr(
    f: &FiniteSubset,
    b: &PrBasicOpen,
    space: &SpacePresentation,
    budget: u64,
) -> Result<VietorisBasicOpen> {
    if !pr_member(f, b) {
        return Err(Error::Precondition(format!(
            "{f:?} is not a member of the given Pixley-Roy basic"
        )));
    }
    let mut opens: Vec<OpenSet> = Vec::new();
    for x in f.iter() {
        let others: Vec<&Point> = f.iter().filter(|y| *y != x).collect();
        let chosen = if others.iter().all(|y| !b.u.contains(y)) {
            Some(b.u.clone())
        } else {
            b.u
                .parts
                .iter()
                .find(|part| part.contains(x) && others.iter().all(|y| !part.contains(y)))
                .cloned()
                .or_else(|| {
                    space
                        .neighborhood_basics(x, budget)
                        .into_iter()
                        .find(|nb| {
                            nb.inside(&b.u) && others.iter().all(|y| !nb.contains(y))
                        })
                })
                .map(OpenSet::from)
        };
        match chosen {
            Some(u) => {
                if !opens.contains(&u) {
                    opens.push(u);
                }
            }
            None => {
                return Err(Error::Precondition(format!(
                    "no separating open inside the basic for {x:?} within budget"
                )))
            }
        }
    }
    let covered = b
        .u
        .parts
        .iter()
        .all(|part| opens.iter().any(|u| part.inside(u)));
    if !covered {
        opens.push(b.u.clone());
    }
    VietorisBasicOpen::new(opens)
}

/// A closed-discrete sequence grouped into consecutive finite blocks, with a
/// Vietoris certificate for the block family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupedFamily {
    pub blocks: Vec<FiniteSubset>,
    pub certificate: SeparationCertificate,
}

/// Groups `prefix` into blocks `{s_j : φ(n) < j ≤ φ(n+1)}` (with the first
/// block ending at `φ(1)`) and certifies the family in the Vietoris
/// hyperspace using the per-point separators of the ground certificate.
///
/// The prefix length must land exactly on a block boundary `φ(m)` so the
/// blocks reconstitute the prefix set.
pub fn group_cd(
    prefix: &[Point],
    ground_cert: &SeparationCertificate,
    phi: &MonotoneMap,
    ground: &SpacePresentation,
    probe_budget: u64,
) -> Result<GroupedFamily> {
    ground_cert.validate()?;
    let cert_points = ground_cert.points();
    for p in prefix {
        if !cert_points.contains(p) {
            return Err(Error::Precondition(format!(
                "certificate does not cover prefix point {p:?}"
            )));
        }
    }

    let mut boundaries: Vec<usize> = Vec::new();
    let mut m: Nat = 1;
    loop {
        let v = phi.value(m);
        if v > prefix.len() as Nat {
            break;
        }
        boundaries.push(v as usize);
        m += 1;
    }
    if boundaries.last().copied() != Some(prefix.len()) {
        return Err(Error::InvalidInput(format!(
            "prefix length {} does not land on a block boundary of {}",
            prefix.len(),
            phi.label()
        )));
    }

    let separator_of = |p: &Point| -> BasicOpen {
        ground_cert
            .assignments
            .iter()
            .find(|(x, _)| x == p)
            .map(|(_, b)| b.clone())
            .expect("checked above")
    };

    let mut blocks = Vec::new();
    let mut assignments = Vec::new();
    let mut start = 0usize;
    for &end in &boundaries {
        let block_points = &prefix[start..end];
        let block = FiniteSubset::new(block_points.iter().cloned())?;
        let opens: Vec<OpenSet> = block_points
            .iter()
            .map(|p| OpenSet::from(separator_of(p)))
            .collect();
        assignments.push((
            Point::Fin(block.clone()),
            VietorisBasicOpen::new(opens)?.as_basic(),
        ));
        blocks.push(block);
        start = end;
    }

    let hyper = SpacePresentation::pfin(ground.clone());
    let family_points: Vec<Point> = blocks.iter().cloned().map(Point::Fin).collect();
    let mut avoiding = Vec::new();
    let mut probes_checked = 0;
    for probe in hyper.universe_probe(probe_budget) {
        if family_points.contains(&probe) {
            continue;
        }
        probes_checked += 1;
        let found = hyper
            .neighborhood_basics(&probe, probe_budget)
            .into_iter()
            .find(|b| family_points.iter().all(|fp| !b.contains(fp)));
        match found {
            Some(b) => avoiding.push((probe, b)),
            None => {
                return Err(Error::WitnessValidation(format!(
                    "closedness probe failed at {probe:?}"
                )))
            }
        }
    }

    let certificate = SeparationCertificate {
        assignments,
        closedness: crate::spaces::ClosednessProbe {
            probes_checked,
            avoiding,
        },
    };
    certificate.validate()?;
    Ok(GroupedFamily {
        blocks,
        certificate,
    })
}

/// A strongly closed discrete certificate: the family is closed discrete in
/// the Vietoris hyperspace and its union is closed discrete in the ground
/// space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScdCertificate {
    pub ground: SeparationCertificate,
    pub hyper: SeparationCertificate,
}

/// Certifies a finite-subset family as strongly closed discrete: first the
/// union of the family in the ground space, then the family itself with
/// Vietoris separators assembled from the union's per-point separators.
/// `None` means undetermined within budget.
pub fn scd_certificate(
    family: &[FiniteSubset],
    ground: &SpacePresentation,
    budget: u64,
) -> Result<Option<ScdCertificate>> {
    if family.is_empty() {
        return Err(Error::InvalidInput("family must be nonempty".into()));
    }
    let mut union_points: Vec<Point> = Vec::new();
    for block in family {
        for p in block.iter() {
            if !union_points.contains(p) {
                union_points.push(p.clone());
            }
        }
    }
    let ground_cert = match cd_certificate(&union_points, ground, budget)? {
        CdOutcome::Certified(c) => c,
        CdOutcome::Undetermined { .. } => return Ok(None),
    };

    let separator_of = |p: &Point| -> BasicOpen {
        ground_cert
            .assignments
            .iter()
            .find(|(x, _)| x == p)
            .map(|(_, b)| b.clone())
            .expect("union certificate covers every family point")
    };

    let mut assignments = Vec::new();
    for block in family {
        let opens: Vec<OpenSet> = block
            .iter()
            .map(|p| OpenSet::from(separator_of(p)))
            .collect();
        assignments.push((
            Point::Fin(block.clone()),
            VietorisBasicOpen::new(opens)?.as_basic(),
        ));
    }

    let hyper_space = SpacePresentation::pfin(ground.clone());
    let family_points: Vec<Point> = family.iter().cloned().map(Point::Fin).collect();
    let mut avoiding = Vec::new();
    let mut probes_checked = 0;
    for probe in hyper_space.universe_probe(budget) {
        if family_points.contains(&probe) {
            continue;
        }
        probes_checked += 1;
        match hyper_space
            .neighborhood_basics(&probe, budget)
            .into_iter()
            .find(|b| family_points.iter().all(|fp| !b.contains(fp)))
        {
            Some(b) => avoiding.push((probe, b)),
            None => return Ok(None),
        }
    }

    let hyper = SeparationCertificate {
        assignments,
        closedness: crate::spaces::ClosednessProbe {
            probes_checked,
            avoiding,
        },
    };
    if hyper.validate().is_err() {
        return Ok(None);
    }
    Ok(Some(ScdCertificate {
        ground: ground_cert,
        hyper,
    }))
}

/// Translates a Vietoris separation certificate over finite subsets into a
/// Pixley-Roy certificate: each separator `[U_1, …, U_n]` for `F` becomes
/// `[F, U_1 ∪ … ∪ U_n]`, and each closedness probe translates pointwise.
/// The result is re-validated by a full membership scan.
pub fn cd_push_pfin_to_pr(cert: &SeparationCertificate) -> Result<SeparationCertificate> {
    cert.validate()?;
    let translate = |point: &Point, basic: &BasicOpen| -> Result<(Point, BasicOpen)> {
        let Point::Fin(f) = point else {
            return Err(Error::InvalidInput(format!(
                "expected a finite-subset point, got {point:?}"
            )));
        };
        let BasicOpen::Vietoris { opens } = basic else {
            return Err(Error::InvalidInput(format!(
                "expected a Vietoris separator, got {basic:?}"
            )));
        };
        let mut union = opens[0].clone();
        for u in &opens[1..] {
            union = union.union(u);
        }
        Ok((
            point.clone(),
            PrBasicOpen::new(f.clone(), union).as_basic(),
        ))
    };

    let assignments = cert
        .assignments
        .iter()
        .map(|(p, b)| translate(p, b))
        .collect::<Result<Vec<_>>>()?;
    let avoiding = cert
        .closedness
        .avoiding
        .iter()
        .map(|(p, b)| translate(p, b))
        .collect::<Result<Vec<_>>>()?;

    let out = SeparationCertificate {
        assignments,
        closedness: crate::spaces::ClosednessProbe {
            probes_checked: cert.closedness.probes_checked,
            avoiding,
        },
    };
    out.validate()?;
    Ok(out)
}
