use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::limit::{GadgetState, LimitSet, StageState};
use crate::circuit::{satisfies, Assignment, Circuit, CircuitError, Gate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerKind {
    ForwardChain,
    ReverseChain,
    ExactPair,
}

impl TowerKind {
    pub const ALL: [TowerKind; 3] = [TowerKind::ForwardChain, TowerKind::ReverseChain, TowerKind::ExactPair];

    pub fn name(self) -> &'static str {
        match self {
            TowerKind::ForwardChain => "forward",
            TowerKind::ReverseChain => "reverse",
            TowerKind::ExactPair => "exact-pair",
        }
    }
}

impl fmt::Display for TowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TowerKind {
    type Err = TowerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TowerKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| TowerError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("unknown tower kind `{0}`")]
    UnknownKind(String),
    #[error("a truncation needs at least one gate")]
    NoGates,
    #[error("{set} is not a definable set of the {kind} limit")]
    Invalid { kind: TowerKind, set: String },
    #[error("assignment {assignment} has {found} nodes, expected {expected}")]
    Length {
        assignment: String,
        expected: usize,
        found: usize,
    },
    #[error("assignment {assignment} violates a gate of the truncation at n={n}")]
    NotDefinable { n: usize, assignment: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// One tower construction: its finite truncations and the symbolic family of
/// definable sets of its limit.
pub trait Tower: Send + Sync {
    fn kind(&self) -> TowerKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn truncate(&self, n: usize) -> Result<Circuit, TowerError>;

    fn is_valid(&self, d: &LimitSet) -> bool;

    fn bottom(&self) -> LimitSet;

    fn top(&self) -> LimitSet;

    /// The `β`-th member of the infinite indexed part of the family.
    fn indexed(&self, beta: usize) -> LimitSet;

    /// Members that are neither bottom, top nor indexed.
    fn extras(&self) -> Vec<LimitSet> {
        Vec::new()
    }

    /// The truncation of `d` to the first `n` gates, as an assignment of
    /// `truncate(n)`'s nodes. Fails if `d` is invalid or the result violates
    /// a gate.
    fn restrict(&self, d: &LimitSet, n: usize) -> Result<Assignment, TowerError>;

    /// A family member restricting to `a` at level `n`.
    fn extend(&self, a: &Assignment, n: usize) -> Result<LimitSet, TowerError>;

    fn indexed_name(&self, beta: usize) -> String;

    /// `⊥`, the first `depth` indexed members, the extras and `⊤`.
    fn members(&self, depth: usize) -> Vec<LimitSet> {
        let mut out = vec![self.bottom()];
        out.extend((0..depth).map(|b| self.indexed(b)));
        out.extend(self.extras());
        out.push(self.top());
        out
    }

    fn label(&self, d: &LimitSet) -> String {
        if *d == self.bottom() {
            return "⊥".into();
        }
        if *d == self.top() {
            return "⊤".into();
        }
        if let Some(g) = d.gadget.filter(|_| self.extras().contains(d)) {
            return format!("X∪{g:?}");
        }
        match (0..=d.horizon()).find(|&b| self.indexed(b) == *d) {
            Some(b) => self.indexed_name(b),
            None => d.to_string(),
        }
    }
}

pub fn towers() -> Vec<Box<dyn Tower>> {
    vec![Box::new(ForwardChain), Box::new(ReverseChain), Box::new(ExactPair)]
}

pub fn tower(kind: TowerKind) -> Box<dyn Tower> {
    match kind {
        TowerKind::ForwardChain => Box::new(ForwardChain),
        TowerKind::ReverseChain => Box::new(ReverseChain),
        TowerKind::ExactPair => Box::new(ExactPair),
    }
}

pub fn tower_by_name(name: &str) -> Result<Box<dyn Tower>, TowerError> {
    Ok(tower(name.parse()?))
}

pub fn truncate(kind: TowerKind, n: usize) -> Result<Circuit, TowerError> {
    tower(kind).truncate(n)
}

/// The gadget alone: apex `x` with `(x,x→a)`, `(x,x→b)` and `(a,b→x)`.
pub fn exact_pair_gadget() -> Circuit {
    Circuit::new(vec!["x".into(), "a".into(), "b".into()], vec![[0, 0, 1], [0, 0, 2], [1, 2, 0]]).expect("static circuit")
}

fn chain_nodes(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("x{i}")).collect()
}

fn check_level(n: usize) -> Result<(), TowerError> {
    if n == 0 {
        Err(TowerError::NoGates)
    } else {
        Ok(())
    }
}

fn invalid(kind: TowerKind, d: &LimitSet) -> TowerError {
    TowerError::Invalid {
        kind,
        set: d.to_string(),
    }
}

fn checked(c: &Circuit, n: usize, a: Assignment) -> Result<Assignment, TowerError> {
    if satisfies(c.gates(), &a) {
        Ok(a)
    } else {
        Err(TowerError::NotDefinable {
            n,
            assignment: crate::bits::to_bit_string(&a),
        })
    }
}

fn check_assignment(c: &Circuit, a: &Assignment, n: usize) -> Result<(), TowerError> {
    if a.len() != c.node_count() {
        return Err(TowerError::Length {
            assignment: crate::bits::to_bit_string(a),
            expected: c.node_count(),
            found: a.len(),
        });
    }
    checked(c, n, a.clone()).map(|_| ())
}

/// Every gate's out node is the next gate's shared input.
fn forward_chain_valid(d: &LimitSet) -> bool {
    (0..=d.horizon()).all(|i| (d.state(i) == StageState::Full) == (d.state(i + 1) != StageState::Empty))
}

fn with_e_at(beta: usize, before: StageState, after: StageState, gadget: Option<GadgetState>) -> LimitSet {
    let mut prefix = vec![before; beta];
    prefix.push(StageState::E);
    LimitSet::new(prefix, after, gadget)
}

/// Gate `i` is `(x_i, x_i → x_{i+1})`.
pub struct ForwardChain;

impl Tower for ForwardChain {
    fn kind(&self) -> TowerKind {
        TowerKind::ForwardChain
    }

    fn truncate(&self, n: usize) -> Result<Circuit, TowerError> {
        check_level(n)?;
        let gates: Vec<Gate> = (0..n).map(|i| [i, i, i + 1]).collect();
        Ok(Circuit::new(chain_nodes(n), gates)?)
    }

    fn is_valid(&self, d: &LimitSet) -> bool {
        d.gadget.is_none() && forward_chain_valid(d)
    }

    fn bottom(&self) -> LimitSet {
        LimitSet::constant(StageState::Empty, None)
    }

    fn top(&self) -> LimitSet {
        LimitSet::constant(StageState::Full, None)
    }

    fn indexed(&self, beta: usize) -> LimitSet {
        with_e_at(beta, StageState::Full, StageState::Empty, None)
    }

    fn indexed_name(&self, beta: usize) -> String {
        format!("D_{beta}")
    }

    fn restrict(&self, d: &LimitSet, n: usize) -> Result<Assignment, TowerError> {
        let c = self.truncate(n)?;
        if !self.is_valid(d) {
            return Err(invalid(self.kind(), d));
        }
        let mut a = Assignment::with_capacity(n + 1);
        for i in 0..n {
            a.set(i, d.state(i) != StageState::Empty);
        }
        a.set(n, d.state(n - 1) == StageState::Full);
        checked(&c, n, a)
    }

    fn extend(&self, a: &Assignment, n: usize) -> Result<LimitSet, TowerError> {
        let c = self.truncate(n)?;
        check_assignment(&c, a, n)?;
        Ok(match a.count_ones(..) {
            0 => self.bottom(),
            p if p == n + 1 => self.top(),
            p => self.indexed(p - 1),
        })
    }
}

/// Gate `i` is `(x_{i+1}, x_{i+1} → x_i)`.
pub struct ReverseChain;

impl Tower for ReverseChain {
    fn kind(&self) -> TowerKind {
        TowerKind::ReverseChain
    }

    fn truncate(&self, n: usize) -> Result<Circuit, TowerError> {
        check_level(n)?;
        let gates: Vec<Gate> = (0..n).map(|i| [i + 1, i + 1, i]).collect();
        Ok(Circuit::new(chain_nodes(n), gates)?)
    }

    fn is_valid(&self, d: &LimitSet) -> bool {
        d.gadget.is_none() && (0..=d.horizon()).all(|i| (d.state(i) != StageState::Empty) == (d.state(i + 1) == StageState::Full))
    }

    fn bottom(&self) -> LimitSet {
        LimitSet::constant(StageState::Empty, None)
    }

    fn top(&self) -> LimitSet {
        LimitSet::constant(StageState::Full, None)
    }

    fn indexed(&self, beta: usize) -> LimitSet {
        with_e_at(beta, StageState::Empty, StageState::Full, None)
    }

    fn indexed_name(&self, beta: usize) -> String {
        format!("D*_{beta}")
    }

    fn restrict(&self, d: &LimitSet, n: usize) -> Result<Assignment, TowerError> {
        let c = self.truncate(n)?;
        if !self.is_valid(d) {
            return Err(invalid(self.kind(), d));
        }
        let mut a = Assignment::with_capacity(n + 1);
        for i in 0..n {
            a.set(i, d.state(i) == StageState::Full);
        }
        a.set(n, d.state(n - 1) != StageState::Empty);
        checked(&c, n, a)
    }

    fn extend(&self, a: &Assignment, n: usize) -> Result<LimitSet, TowerError> {
        let c = self.truncate(n)?;
        check_assignment(&c, a, n)?;
        // On-sets are suffixes x_q..x_n.
        Ok(match a.ones().next() {
            None => self.bottom(),
            Some(0) => self.top(),
            Some(q) => self.indexed(q - 1),
        })
    }
}

/// The forward chain with the three-gate gadget on its apex. At level `n`
/// the node `x_n` stands for the point at infinity.
pub struct ExactPair;

impl ExactPair {
    pub fn pair(&self) -> (LimitSet, LimitSet) {
        (
            LimitSet::constant(StageState::Full, Some(GadgetState::A)),
            LimitSet::constant(StageState::Full, Some(GadgetState::B)),
        )
    }
}

impl Tower for ExactPair {
    fn kind(&self) -> TowerKind {
        TowerKind::ExactPair
    }

    fn truncate(&self, n: usize) -> Result<Circuit, TowerError> {
        check_level(n)?;
        let mut nodes = chain_nodes(n);
        nodes.extend(["a".to_string(), "b".to_string()]);
        let (a, b) = (n + 1, n + 2);
        let mut gates: Vec<Gate> = (0..n).map(|i| [i, i, i + 1]).collect();
        gates.extend([[n, n, a], [n, n, b], [a, b, n]]);
        Ok(Circuit::new(nodes, gates)?)
    }

    fn is_valid(&self, d: &LimitSet) -> bool {
        match d.gadget {
            None => false,
            Some(g) => forward_chain_valid(d) && d.contains_infinity() == (g != GadgetState::Empty),
        }
    }

    fn bottom(&self) -> LimitSet {
        LimitSet::constant(StageState::Empty, Some(GadgetState::Empty))
    }

    fn top(&self) -> LimitSet {
        LimitSet::constant(StageState::Full, Some(GadgetState::Full))
    }

    fn indexed(&self, beta: usize) -> LimitSet {
        with_e_at(beta, StageState::Full, StageState::Empty, Some(GadgetState::Empty))
    }

    fn extras(&self) -> Vec<LimitSet> {
        let (a, b) = self.pair();
        vec![a, b]
    }

    fn indexed_name(&self, beta: usize) -> String {
        format!("D_{beta}")
    }

    fn restrict(&self, d: &LimitSet, n: usize) -> Result<Assignment, TowerError> {
        let c = self.truncate(n)?;
        if !self.is_valid(d) {
            return Err(invalid(self.kind(), d));
        }
        let g = d.gadget.unwrap_or(GadgetState::Empty);
        let mut a = Assignment::with_capacity(n + 3);
        for i in 0..n {
            a.set(i, d.state(i) != StageState::Empty);
        }
        a.set(n, d.contains_infinity());
        a.set(n + 1, g.has_a());
        a.set(n + 2, g.has_b());
        checked(&c, n, a)
    }

    fn extend(&self, a: &Assignment, n: usize) -> Result<LimitSet, TowerError> {
        let c = self.truncate(n)?;
        check_assignment(&c, a, n)?;
        if a.contains(n) {
            return Ok(LimitSet::constant(
                StageState::Full,
                Some(GadgetState::from_parts(a.contains(n + 1), a.contains(n + 2))),
            ));
        }
        Ok(match a.count_ones(..n) {
            0 => self.bottom(),
            p => self.indexed(p - 1),
        })
    }
}

/// Outcome of a meet query on a limit family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeetOutcome {
    Meet { set: LimitSet },
    /// The common lower bounds have no greatest element. `lower_bounds` lists
    /// the sampled ones; `unbounded` says the indexed part of the family keeps
    /// contributing lower bounds past the sample.
    NoMeet {
        lower_bounds: Vec<LimitSet>,
        unbounded: bool,
        has_maximum: bool,
    },
}

/// Order, join and meet queries on a tower's limit family, answered by finite
/// case analysis on horizons and tails.
pub struct LimitFamily {
    tower: Box<dyn Tower>,
    sample: usize,
}

impl LimitFamily {
    pub fn new(kind: TowerKind) -> Self {
        Self {
            tower: tower(kind),
            sample: 8,
        }
    }

    /// Indexed members reported in a failed meet's lower-bound sample.
    pub fn with_sample(mut self, sample: usize) -> Self {
        self.sample = sample;
        self
    }

    pub fn tower(&self) -> &dyn Tower {
        self.tower.as_ref()
    }

    fn check(&self, d: &LimitSet) -> Result<(), TowerError> {
        if self.tower.is_valid(d) {
            Ok(())
        } else {
            Err(invalid(self.tower.kind(), d))
        }
    }

    pub fn leq(&self, a: &LimitSet, b: &LimitSet) -> Result<bool, TowerError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.leq(b))
    }

    /// The join is the union; it is checked to be a member.
    pub fn join(&self, a: &LimitSet, b: &LimitSet) -> Result<LimitSet, TowerError> {
        self.check(a)?;
        self.check(b)?;
        let j = a.union(b);
        self.check(&j)?;
        Ok(j)
    }

    pub fn meet(&self, a: &LimitSet, b: &LimitSet) -> Result<MeetOutcome, TowerError> {
        self.check(a)?;
        self.check(b)?;
        // Past this depth every indexed member relates to `a` and `b` the
        // same way, since both are constant there.
        let depth = (a.horizon().max(b.horizon()) + 2).max(self.sample);
        let lower: Vec<LimitSet> = self
            .tower
            .members(depth)
            .into_iter()
            .filter(|m| m.leq(a) && m.leq(b))
            .collect();
        let deep = self.tower.indexed(depth - 1);
        let unbounded = deep.leq(a) && deep.leq(b);
        let best = lower.iter().find(|m| {
            lower.iter().all(|l| l.leq(m)) && (!unbounded || self.tower.indexed(depth + m.horizon() + 1).leq(m))
        });
        Ok(match best {
            Some(m) => MeetOutcome::Meet { set: m.clone() },
            None => MeetOutcome::NoMeet {
                lower_bounds: lower
                    .into_iter()
                    .filter(|m| *m == self.tower.bottom() || (0..self.sample).any(|b| self.tower.indexed(b) == *m))
                    .collect(),
                unbounded,
                has_maximum: false,
            },
        })
    }

    pub fn meet_exists(&self, a: &LimitSet, b: &LimitSet) -> Result<Option<LimitSet>, TowerError> {
        Ok(match self.meet(a, b)? {
            MeetOutcome::Meet { set } => Some(set),
            MeetOutcome::NoMeet { .. } => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::definable_assignments;
    use StageState::*;

    #[test]
    fn kind_names_round_trip() {
        for k in TowerKind::ALL {
            assert_eq!(k.name().parse::<TowerKind>().unwrap(), k);
        }
        assert!("sideways".parse::<TowerKind>().is_err());
    }

    #[test]
    fn forward_one_gate() {
        let c = truncate(TowerKind::ForwardChain, 1).unwrap();
        assert_eq!((c.gates().len(), c.node_count()), (1, 2));
        assert!(truncate(TowerKind::ForwardChain, 0).is_err());
    }

    #[test]
    fn gadget_alone_has_four_sets_through_apex() {
        let sets = definable_assignments(&exact_pair_gadget());
        let rendered: Vec<String> = sets.iter().map(crate::bits::to_bit_string).collect();
        assert_eq!(rendered, ["000", "110", "101", "111"]);
    }

    #[test]
    fn restrict_forward_d2() {
        let t = ForwardChain;
        let a = t.restrict(&t.indexed(2), 5).unwrap();
        assert_eq!(crate::bits::to_bit_string(&a), "111000");
        assert_eq!(crate::bits::to_bit_string(&t.restrict(&t.top(), 5).unwrap()), "111111");
        assert_eq!(crate::bits::to_bit_string(&t.restrict(&t.bottom(), 5).unwrap()), "000000");
    }

    #[test]
    fn invalid_sets_are_rejected() {
        let t = ForwardChain;
        let bad = LimitSet::new(vec![E, Full], Empty, None);
        assert!(!t.is_valid(&bad));
        assert!(t.restrict(&bad, 3).is_err());
        let x_alone = LimitSet::constant(Full, Some(GadgetState::Empty));
        assert!(!ExactPair.is_valid(&x_alone));
    }

    #[test]
    fn labels() {
        assert_eq!(ForwardChain.label(&ForwardChain.indexed(3)), "D_3");
        assert_eq!(ReverseChain.label(&ReverseChain.indexed(0)), "D*_0");
        assert_eq!(ExactPair.label(&ExactPair.pair().1), "X∪B");
        assert_eq!(ExactPair.label(&ExactPair.top()), "⊤");
    }

    #[test]
    fn chain_meets() {
        let f = LimitFamily::new(TowerKind::ForwardChain);
        let t = f.tower();
        assert_eq!(f.meet_exists(&t.indexed(2), &t.indexed(5)).unwrap(), Some(t.indexed(2)));
        assert_eq!(f.meet_exists(&t.top(), &t.top()).unwrap(), Some(t.top()));
        let r = LimitFamily::new(TowerKind::ReverseChain);
        let t = r.tower();
        assert_eq!(r.meet_exists(&t.indexed(2), &t.indexed(5)).unwrap(), Some(t.indexed(5)));
        assert_eq!(r.join(&t.indexed(2), &t.indexed(5)).unwrap(), t.indexed(2));
    }

    #[test]
    fn exact_pair_has_no_meet() {
        let f = LimitFamily::new(TowerKind::ExactPair);
        let (a, b) = ExactPair.pair();
        match f.meet(&a, &b).unwrap() {
            MeetOutcome::NoMeet {
                lower_bounds,
                unbounded,
                has_maximum,
            } => {
                assert!(unbounded && !has_maximum);
                assert_eq!(lower_bounds.len(), 9);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(f.join(&a, &b).unwrap(), ExactPair.top());
    }
}
