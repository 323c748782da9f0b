//! Finite-horizon selection games with certificate-based adjudication.
//!
//! A game runs for `horizon` rounds: P1 plays a nonempty open, P2 answers
//! with a point (or a nonempty finite set) inside it. The payoff set is a
//! tail property, so a truncated run is adjudicated three ways: P2 is
//! certified through a structural witness (separation / closed-discreteness),
//! P1 through an accumulation certificate, and everything else stays
//! undetermined. An illegal selection aborts the run — that is a broken
//! strategy, not a loss.

use crate::divergence::{self, Claim, SeparationBound};
use crate::error::{Error, Result};
use crate::hyperspaces::{self, ScdCertificate};
use crate::spaces::{
    accumulation_certificate, cd_certificate, AccumulationCertificate, BasicOpen, CdOutcome,
    FiniteSubset, OpenSet, Point, SeparationCertificate, SpacePresentation,
};
use serde::{Deserialize, Serialize};

pub type Move = OpenSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Single,
    Finite,
}

/// Named payoff predicates with certificate semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Adjudicator {
    /// P2 wins when the selection set is closed and relatively discrete.
    ClosedDiscrete { budget: u64 },
    /// P2 wins when the selection sequence carries a separation bound.
    Separation { budget: u64 },
    /// Finite-set game: the family and its union must both be closed
    /// discrete.
    StronglyClosedDiscrete { budget: u64 },
}

#[derive(Debug, Clone)]
pub struct GameSpec {
    pub space: SpacePresentation,
    pub selector: Selector,
    pub adjudicator: Adjudicator,
    pub horizon: u64,
    /// Declared probe points for accumulation search, on top of every point
    /// mentioned by the moves.
    pub landmarks: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    One(Point),
    Many(FiniteSubset),
}

impl Selection {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Selection::One(p) => vec![p.clone()],
            Selection::Many(f) => f.iter().cloned().collect(),
        }
    }

    fn inside(&self, mv: &Move) -> bool {
        self.points().iter().all(|p| mv.contains(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    Full,
    Markov,
    Predetermined,
    Constant,
}

enum P1Rule {
    /// Sees the history of P2's selections.
    Full(Box<dyn Fn(&[Selection]) -> Result<Move> + Send + Sync>),
    /// Sees only the 1-based round number.
    Predetermined(Box<dyn Fn(u64) -> Result<Move> + Send + Sync>),
    Constant(Move),
}

pub struct P1Strategy {
    label: String,
    rule: P1Rule,
}

impl std::fmt::Debug for P1Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P1Strategy({}, {:?})", self.label, self.kind())
    }
}

impl P1Strategy {
    pub fn full(
        label: impl Into<String>,
        rule: impl Fn(&[Selection]) -> Result<Move> + Send + Sync + 'static,
    ) -> Self {
        P1Strategy {
            label: label.into(),
            rule: P1Rule::Full(Box::new(rule)),
        }
    }

    pub fn predetermined(
        label: impl Into<String>,
        rule: impl Fn(u64) -> Result<Move> + Send + Sync + 'static,
    ) -> Self {
        P1Strategy {
            label: label.into(),
            rule: P1Rule::Predetermined(Box::new(rule)),
        }
    }

    pub fn constant(label: impl Into<String>, mv: Move) -> Self {
        P1Strategy {
            label: label.into(),
            rule: P1Rule::Constant(mv),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> StrategyKind {
        match self.rule {
            P1Rule::Full(_) => StrategyKind::Full,
            P1Rule::Predetermined(_) => StrategyKind::Predetermined,
            P1Rule::Constant(_) => StrategyKind::Constant,
        }
    }

    pub fn next_move(&self, history: &[Selection], round: u64) -> Result<Move> {
        match &self.rule {
            P1Rule::Full(f) => f(history),
            P1Rule::Predetermined(f) => f(round),
            P1Rule::Constant(mv) => Ok(mv.clone()),
        }
    }
}

enum P2Rule {
    /// Sees the history of P1's moves (the current move is the last entry).
    Full(Box<dyn Fn(&[Move]) -> Result<Selection> + Send + Sync>),
    /// Sees the current move and the 1-based round number.
    Markov(Box<dyn Fn(&Move, u64) -> Result<Selection> + Send + Sync>),
}

pub struct P2Strategy {
    label: String,
    rule: P2Rule,
}

impl std::fmt::Debug for P2Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P2Strategy({}, {:?})", self.label, self.kind())
    }
}

impl P2Strategy {
    pub fn full(
        label: impl Into<String>,
        rule: impl Fn(&[Move]) -> Result<Selection> + Send + Sync + 'static,
    ) -> Self {
        P2Strategy {
            label: label.into(),
            rule: P2Rule::Full(Box::new(rule)),
        }
    }

    pub fn markov(
        label: impl Into<String>,
        rule: impl Fn(&Move, u64) -> Result<Selection> + Send + Sync + 'static,
    ) -> Self {
        P2Strategy {
            label: label.into(),
            rule: P2Rule::Markov(Box::new(rule)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> StrategyKind {
        match self.rule {
            P2Rule::Full(_) => StrategyKind::Full,
            P2Rule::Markov(_) => StrategyKind::Markov,
        }
    }

    pub fn select(&self, moves: &[Move], round: u64) -> Result<Selection> {
        match &self.rule {
            P2Rule::Full(f) => f(moves),
            P2Rule::Markov(f) => f(moves.last().expect("a move was played"), round),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictCertificate {
    ClosedDiscrete(SeparationCertificate),
    Accumulation(AccumulationCertificate),
    Separation(SeparationBound),
    ConvergentExhibit { description: String },
    StronglyClosedDiscrete(Box<ScdCertificate>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameVerdict {
    P2Certified { certificate: VerdictCertificate },
    P1Certified { certificate: VerdictCertificate },
    Undetermined { diagnostic: String },
}

impl GameVerdict {
    pub fn is_p2(&self) -> bool {
        matches!(self, GameVerdict::P2Certified { .. })
    }

    pub fn is_p1(&self) -> bool {
        matches!(self, GameVerdict::P1Certified { .. })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Round {
    pub mv: Move,
    pub selection: Selection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Transcript {
    pub space: String,
    pub horizon: u64,
    pub p1: String,
    pub p2: String,
    pub rounds: Vec<Round>,
    pub verdict: GameVerdict,
}

impl Transcript {
    pub fn selection_points(&self) -> Vec<Point> {
        self.rounds
            .iter()
            .flat_map(|r| r.selection.points())
            .collect()
    }
}

/// Plays the game to its horizon, enforcing legality every round, then
/// adjudicates. An illegal selection aborts with the offending round.
pub fn run(spec: &GameSpec, p1: &P1Strategy, p2: &P2Strategy) -> Result<Transcript> {
    if spec.horizon < 1 {
        return Err(Error::InvalidInput("horizon must be at least 1".into()));
    }
    let mut moves: Vec<Move> = Vec::new();
    let mut selections: Vec<Selection> = Vec::new();
    for round in 1..=spec.horizon {
        let mv = p1.next_move(&selections, round)?;
        moves.push(mv);
        let selection = p2.select(&moves, round)?;
        match (&spec.selector, &selection) {
            (Selector::Single, Selection::One(_)) => {}
            (Selector::Finite, Selection::Many(_)) => {}
            _ => {
                return Err(Error::Fault {
                    round,
                    reason: format!(
                        "selection shape does not match the {:?} selector",
                        spec.selector
                    ),
                })
            }
        }
        let mv = moves.last().unwrap();
        if !selection.inside(mv) {
            return Err(Error::Fault {
                round,
                reason: format!("selection {selection:?} is outside the move"),
            });
        }
        for p in selection.points() {
            if !spec.space.contains_point(&p) {
                return Err(Error::Fault {
                    round,
                    reason: format!("selection point {p:?} is outside {}", spec.space.label()),
                });
            }
        }
        selections.push(selection);
    }

    let rounds: Vec<Round> = moves
        .into_iter()
        .zip(selections)
        .map(|(mv, selection)| Round { mv, selection })
        .collect();
    let verdict = adjudicate(spec, &rounds)?;
    Ok(Transcript {
        space: spec.space.label().to_string(),
        horizon: spec.horizon,
        p1: p1.label().to_string(),
        p2: p2.label().to_string(),
        rounds,
        verdict,
    })
}

fn adjudicate(spec: &GameSpec, rounds: &[Round]) -> Result<GameVerdict> {
    match spec.adjudicator {
        Adjudicator::ClosedDiscrete { budget } => adjudicate_cd_rounds(spec, rounds, budget),
        Adjudicator::Separation { budget } => {
            let points: Vec<Point> = rounds.iter().flat_map(|r| r.selection.points()).collect();
            let verdict = divergence::divergence_probe(&points, &spec.space, budget);
            Ok(match verdict.claim {
                Claim::Certified => GameVerdict::P2Certified {
                    certificate: match verdict.witness {
                        Some(divergence::Witness::Bound(b)) => VerdictCertificate::Separation(b),
                        other => VerdictCertificate::ConvergentExhibit {
                            description: format!("unexpected witness {other:?}"),
                        },
                    },
                },
                Claim::Refuted => GameVerdict::P1Certified {
                    certificate: VerdictCertificate::ConvergentExhibit {
                        description: format!("{:?}", verdict.witness),
                    },
                },
                Claim::Undetermined => GameVerdict::Undetermined {
                    diagnostic: verdict.diagnostics.join("; "),
                },
            })
        }
        Adjudicator::StronglyClosedDiscrete { budget } => {
            let mut family = Vec::new();
            for r in rounds {
                match &r.selection {
                    Selection::Many(f) => {
                        if !family.contains(f) {
                            family.push(f.clone());
                        }
                    }
                    Selection::One(_) => {
                        return Err(Error::InvalidInput(
                            "strongly-closed-discrete adjudication needs finite selections".into(),
                        ))
                    }
                }
            }
            match hyperspaces::scd_certificate(&family, &spec.space, budget)? {
                Some(cert) => Ok(GameVerdict::P2Certified {
                    certificate: VerdictCertificate::StronglyClosedDiscrete(Box::new(cert)),
                }),
                None => Ok(GameVerdict::Undetermined {
                    diagnostic: "no strongly-closed-discrete certificate within budget".into(),
                }),
            }
        }
    }
}

/// Closed-discrete adjudication of a finished transcript: a separation
/// certificate for the selection set certifies P2; otherwise an accumulation
/// point among the probes certifies P1. The searches share the same basis
/// enumeration, so at most one of them can succeed.
pub fn adjudicate_cd(
    spec: &GameSpec,
    rounds: &[Round],
    budget: u64,
) -> Result<GameVerdict> {
    adjudicate_cd_rounds(spec, rounds, budget)
}

fn adjudicate_cd_rounds(spec: &GameSpec, rounds: &[Round], budget: u64) -> Result<GameVerdict> {
    let ordered: Vec<Point> = rounds.iter().flat_map(|r| r.selection.points()).collect();
    let mut distinct: Vec<Point> = Vec::new();
    for p in &ordered {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if let CdOutcome::Certified(cert) = cd_certificate(&distinct, &spec.space, budget)? {
        return Ok(GameVerdict::P2Certified {
            certificate: VerdictCertificate::ClosedDiscrete(cert),
        });
    }

    let mut probes: Vec<Point> = Vec::new();
    for r in rounds {
        for p in r.mv.mentioned_points() {
            if spec.space.contains_point(&p) && !probes.contains(&p) {
                probes.push(p);
            }
        }
    }
    for p in spec.landmarks.iter().cloned() {
        if !probes.contains(&p) {
            probes.push(p);
        }
    }
    for p in spec.space.universe_probe(budget) {
        if !probes.contains(&p) {
            probes.push(p);
        }
    }
    if let Some(acc) = accumulation_certificate(&ordered, &probes, &spec.space, budget) {
        return Ok(GameVerdict::P1Certified {
            certificate: VerdictCertificate::Accumulation(acc),
        });
    }
    Ok(GameVerdict::Undetermined {
        diagnostic: "neither a separation nor an accumulation certificate within budget".into(),
    })
}

/// P2 Markov rule picking the first universe point inside the move.
pub fn least_point_markov(space: &SpacePresentation, probe_budget: u64) -> P2Strategy {
    let space = space.clone();
    P2Strategy::markov("least-point", move |mv, round| {
        space
            .find_point_in(mv, probe_budget)
            .map(Selection::One)
            .ok_or_else(|| Error::Fault {
                round,
                reason: "no point of the move found within the probe budget".into(),
            })
    })
}

/// P2 Markov rule picking the `n`-th universe point inside the move at round
/// `n`, so repeated moves still yield fresh selections.
pub fn fresh_point_markov(space: &SpacePresentation, probe_budget: u64) -> P2Strategy {
    let space = space.clone();
    P2Strategy::markov("fresh-point", move |mv, round| {
        space
            .universe_probe(probe_budget)
            .into_iter()
            .filter(|p| mv.contains(p))
            .nth(round as usize - 1)
            .map(Selection::One)
            .ok_or_else(|| Error::Fault {
                round,
                reason: "not enough points of the move within the probe budget".into(),
            })
    })
}

/// The punctured local-π-base attack: a predetermined P1 strategy playing
/// `U_n \ {x}`. Rejected when `x` is isolated (the puncture would need to be
/// legal as an empty move) or when the space is not declared T1.
pub fn pi_base_attack(
    space: &SpacePresentation,
    x: &Point,
    pi_base: Vec<OpenSet>,
) -> Result<P1Strategy> {
    if !space.contains_point(x) {
        return Err(Error::InvalidInput(format!(
            "{x:?} is not a point of {}",
            space.label()
        )));
    }
    if space.is_isolated(x) {
        return Err(Error::Precondition(
            "the attacked point must not be isolated".into(),
        ));
    }
    if !space.flags.t1 {
        return Err(Error::Precondition(
            "the attack needs {x} closed; the space is not declared T1".into(),
        ));
    }
    if pi_base.is_empty() {
        return Err(Error::InvalidInput("π-base must be nonempty".into()));
    }
    let x = x.clone();
    Ok(P1Strategy::predetermined("pi-base-attack", move |round| {
        let idx = (round as usize - 1).min(pi_base.len() - 1);
        Ok(pi_base[idx].minus_points([x.clone()]))
    }))
}

/// Shrinking dyadic interval π-base at a rational point.
pub fn shrinking_interval_pi_base(x: &Point, count: u64) -> Result<Vec<OpenSet>> {
    let space = SpacePresentation::rationals();
    let basics = space.neighborhood_basics(x, count);
    if basics.is_empty() {
        return Err(Error::InvalidInput(format!("{x:?} is not rational")));
    }
    Ok(basics.into_iter().map(OpenSet::from).collect())
}

/// The escape-value Markov strategy on an integer product: answer `[f; F]`
/// at round `n` with the function equal to `f` on `F` and constantly `n`
/// elsewhere.
pub fn zk_markov_strategy(space: &SpacePresentation) -> Result<P2Strategy> {
    if !space.is_zprod() {
        return Err(Error::Precondition(
            "the escape-value strategy needs an integer-product presentation".into(),
        ));
    }
    Ok(P2Strategy::markov("zk-escape", move |mv, round| {
        let BasicOpen::Cylinder { constraints } = &mv.parts[0] else {
            return Err(Error::Fault {
                round,
                reason: format!("move is not a cylinder basic: {:?}", mv.parts[0]),
            });
        };
        Ok(Selection::One(Point::ZFun(crate::spaces::ZkPoint::new(
            constraints.clone(),
            round as i64,
        ))))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::ZkPoint;
    use std::collections::BTreeMap;

    fn discrete_cd_spec(horizon: u64) -> GameSpec {
        GameSpec {
            space: SpacePresentation::discrete_nat(),
            selector: Selector::Single,
            adjudicator: Adjudicator::ClosedDiscrete { budget: 8 },
            horizon,
            landmarks: Vec::new(),
        }
    }

    #[test]
    fn fresh_markov_wins_on_discrete_space() {
        let spec = discrete_cd_spec(20);
        let p1 = P1Strategy::constant("whole", OpenSet::whole());
        let p2 = fresh_point_markov(&spec.space, 64);
        let t = run(&spec, &p1, &p2).unwrap();
        assert!(t.verdict.is_p2(), "{:?}", t.verdict);
        assert_eq!(t.rounds.len(), 20);
        for r in &t.rounds {
            assert!(r.selection.inside(&r.mv), "legality is enforced per round");
        }
    }

    #[test]
    fn single_round_game() {
        let spec = discrete_cd_spec(1);
        let p1 = P1Strategy::constant("whole", OpenSet::whole());
        let p2 = least_point_markov(&spec.space, 16);
        let t = run(&spec, &p1, &p2).unwrap();
        assert_eq!(t.rounds.len(), 1);
        assert!(t.verdict.is_p2());
    }

    #[test]
    fn illegal_selection_aborts_with_round() {
        let spec = discrete_cd_spec(5);
        let p1 = P1Strategy::constant(
            "singleton-3",
            OpenSet::from(BasicOpen::Singleton(Point::nat(3))),
        );
        let p2 = P2Strategy::markov("cheater", |_, _| Ok(Selection::One(Point::nat(9))));
        match run(&spec, &p1, &p2) {
            Err(Error::Fault { round, .. }) => assert_eq!(round, 1),
            other => panic!("expected a fault, got {other:?}"),
        }
    }

    #[test]
    fn pi_base_attack_beats_any_selector_on_rationals() {
        let zero = Point::rat(0, 1);
        let space = SpacePresentation::rationals();
        let spec = GameSpec {
            space: space.clone(),
            selector: Selector::Single,
            adjudicator: Adjudicator::ClosedDiscrete { budget: 5 },
            horizon: 40,
            landmarks: vec![zero.clone()],
        };
        let p1 = pi_base_attack(&space, &zero, shrinking_interval_pi_base(&zero, 40).unwrap())
            .unwrap();
        let p2 = least_point_markov(&space, 20_000);
        let t = run(&spec, &p1, &p2).unwrap();
        match &t.verdict {
            GameVerdict::P1Certified { certificate } => match certificate {
                VerdictCertificate::Accumulation(acc) => assert_eq!(acc.at, zero),
                other => panic!("expected an accumulation certificate, got {other:?}"),
            },
            other => panic!("expected P1 certified, got {other:?}"),
        }
        for r in &t.rounds {
            let Selection::One(p) = &r.selection else { panic!() };
            assert_ne!(p, &zero, "punctured moves exclude the attacked point");
        }
    }

    #[test]
    fn pi_base_attack_rejected_on_discrete_spaces() {
        let space = SpacePresentation::discrete_nat();
        let err = pi_base_attack(
            &space,
            &Point::nat(1),
            vec![OpenSet::from(BasicOpen::Singleton(Point::nat(1)))],
        )
        .unwrap_err();
        assert!(err.to_string().contains("isolated"), "{err}");
    }

    #[test]
    fn undetermined_when_budget_resolves_neither_side() {
        // Selections crawl toward 0 but the basis budget can neither
        // separate the deep tail nor catch it accumulating.
        let space = SpacePresentation::rationals();
        let spec = GameSpec {
            space: space.clone(),
            selector: Selector::Single,
            adjudicator: Adjudicator::ClosedDiscrete { budget: 8 },
            horizon: 20,
            landmarks: vec![Point::rat(0, 1)],
        };
        let p1 = P1Strategy::constant("whole", OpenSet::whole());
        let p2 = P2Strategy::markov("reciprocal", |_, n| {
            Ok(Selection::One(Point::rat(1, n as i64)))
        });
        let t = run(&spec, &p1, &p2).unwrap();
        assert!(
            matches!(t.verdict, GameVerdict::Undetermined { .. }),
            "{:?}",
            t.verdict
        );
    }

    #[test]
    fn cd_and_accumulation_certificates_exclude_each_other() {
        let spec = discrete_cd_spec(16);
        let p1 = P1Strategy::constant("whole", OpenSet::whole());
        let p2 = fresh_point_markov(&spec.space, 64);
        let t = run(&spec, &p1, &p2).unwrap();
        assert!(t.verdict.is_p2());
        // Independent accumulation search over the same rounds finds nothing.
        let probes = spec.space.universe_probe(16);
        assert!(accumulation_certificate(
            &t.selection_points(),
            &probes,
            &spec.space,
            8
        )
        .is_none());
    }

    #[test]
    fn markov_strategies_are_deterministic_in_move_and_round() {
        let space = SpacePresentation::discrete_nat();
        let p2 = fresh_point_markov(&space, 64);
        let mv = OpenSet::whole();
        for round in 1..=10 {
            let a = p2.select(&[mv.clone()], round).unwrap();
            let b = p2
                .select(&[OpenSet::whole(), mv.clone()], round)
                .unwrap();
            assert_eq!(a, b, "only (last move, round) may matter");
        }
        assert_eq!(p2.kind(), StrategyKind::Markov);
    }

    #[test]
    fn zk_markov_escape_values() {
        let space = SpacePresentation::zprod(6);
        let p2 = zk_markov_strategy(&space).unwrap();

        // Single round: the selection agrees with the constraint on F.
        let mv = OpenSet::from(BasicOpen::cylinder(BTreeMap::from([(1, 7)])));
        let Selection::One(Point::ZFun(g)) = p2.select(&[mv.clone()], 1).unwrap() else {
            panic!()
        };
        assert_eq!(g.value(1), 7);
        assert_eq!(g.value(5), 1, "escape coordinate carries the round number");

        // Non-cylinder moves are a strategy fault.
        let bad = OpenSet::whole();
        assert!(p2.select(&[bad], 2).is_err());
    }

    #[test]
    fn zk_markov_game_certifies_cd() {
        let space = SpacePresentation::zprod(8);
        let spec = GameSpec {
            space: space.clone(),
            selector: Selector::Single,
            adjudicator: Adjudicator::ClosedDiscrete { budget: 10 },
            horizon: 50,
            landmarks: Vec::new(),
        };
        let p1 = P1Strategy::predetermined("cycling-cylinders", move |round| {
            let coord = round % 3;
            Ok(OpenSet::from(BasicOpen::cylinder(BTreeMap::from([(
                coord,
                (round % 5) as i64,
            )]))))
        });
        let p2 = zk_markov_strategy(&space).unwrap();
        let t = run(&spec, &p1, &p2).unwrap();
        assert!(t.verdict.is_p2(), "{:?}", t.verdict);

        // Escape coordinate: every play carries its round number at an
        // unconstrained coordinate, so any single-coordinate cylinder there
        // captures at most one selection.
        let escape = 5u64;
        for h in -2i64..=6 {
            let cylinder = BasicOpen::cylinder(BTreeMap::from([(escape, h)]));
            let hits = t
                .selection_points()
                .iter()
                .filter(|p| cylinder.contains(p))
                .count();
            assert!(hits <= 1, "h={h}: {hits}");
        }
    }

    #[test]
    fn separation_adjudicator_certifies_and_refutes() {
        let space = SpacePresentation::discrete_nat();
        let spec = GameSpec {
            space: space.clone(),
            selector: Selector::Single,
            adjudicator: Adjudicator::Separation { budget: 6 },
            horizon: 12,
            landmarks: Vec::new(),
        };
        let p1 = P1Strategy::constant("whole", OpenSet::whole());
        let t = run(&spec, &p1, &fresh_point_markov(&space, 64)).unwrap();
        assert!(t.verdict.is_p2(), "{:?}", t.verdict);

        let constant = P2Strategy::markov("stuck", |_, _| Ok(Selection::One(Point::nat(1))));
        let t = run(&spec, &p1, &constant).unwrap();
        assert!(t.verdict.is_p1(), "constant selections converge: {:?}", t.verdict);
    }

    #[test]
    fn scd_adjudicator_on_finite_selections() {
        let space = SpacePresentation::discrete_nat();
        let spec = GameSpec {
            space: space.clone(),
            selector: Selector::Finite,
            adjudicator: Adjudicator::StronglyClosedDiscrete { budget: 12 },
            horizon: 10,
            landmarks: Vec::new(),
        };
        let p1 = P1Strategy::constant("whole", OpenSet::whole());
        let p2 = P2Strategy::markov("pair-blocks", |_, n| {
            Ok(Selection::Many(
                FiniteSubset::new([Point::nat(2 * n), Point::nat(2 * n + 1)]).unwrap(),
            ))
        });
        let t = run(&spec, &p1, &p2).unwrap();
        match &t.verdict {
            GameVerdict::P2Certified {
                certificate: VerdictCertificate::StronglyClosedDiscrete(cert),
            } => {
                cert.ground.validate().unwrap();
                cert.hyper.validate().unwrap();
            }
            other => panic!("expected an SCD certificate, got {other:?}"),
        }
    }
}
