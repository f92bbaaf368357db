use std::fmt;

use serde::{Deserialize, Serialize};

/// How much of one dagger gate a set covers: nothing, the lone input vertex
/// plus its wire (`E`), or the whole gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StageState {
    #[serde(rename = "empty")]
    Empty,
    E,
    #[serde(rename = "full")]
    Full,
}

/// The exact-pair gadget's share of a limit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetState {
    #[serde(rename = "empty")]
    Empty,
    A,
    B,
    #[serde(rename = "full")]
    Full,
}

impl GadgetState {
    pub fn has_a(self) -> bool {
        matches!(self, GadgetState::A | GadgetState::Full)
    }

    pub fn has_b(self) -> bool {
        matches!(self, GadgetState::B | GadgetState::Full)
    }

    pub fn from_parts(a: bool, b: bool) -> Self {
        match (a, b) {
            (false, false) => GadgetState::Empty,
            (true, false) => GadgetState::A,
            (false, true) => GadgetState::B,
            (true, true) => GadgetState::Full,
        }
    }

    pub fn leq(self, other: GadgetState) -> bool {
        (!self.has_a() || other.has_a()) && (!self.has_b() || other.has_b())
    }

    pub fn join(self, other: GadgetState) -> Self {
        Self::from_parts(self.has_a() || other.has_a(), self.has_b() || other.has_b())
    }

    pub fn meet(self, other: GadgetState) -> Self {
        Self::from_parts(self.has_a() && other.has_a(), self.has_b() && other.has_b())
    }
}

/// A definable set of a tower limit, as an eventually constant sequence of
/// per-gate states. The point at infinity belongs to the set exactly when the
/// tail is [`StageState::Full`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LimitSet {
    pub prefix: Vec<StageState>,
    pub tail: StageState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gadget: Option<GadgetState>,
}

impl LimitSet {
    pub fn new(prefix: Vec<StageState>, tail: StageState, gadget: Option<GadgetState>) -> Self {
        let mut d = LimitSet { prefix, tail, gadget };
        while d.prefix.last() == Some(&d.tail) {
            d.prefix.pop();
        }
        d
    }

    pub fn constant(tail: StageState, gadget: Option<GadgetState>) -> Self {
        Self::new(Vec::new(), tail, gadget)
    }

    /// State of gate `i`.
    pub fn state(&self, i: usize) -> StageState {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    /// Gates from here on are all in the tail state.
    pub fn horizon(&self) -> usize {
        self.prefix.len()
    }

    pub fn contains_infinity(&self) -> bool {
        self.tail == StageState::Full
    }

    /// Number of gates that are not empty, or `None` when that is infinite.
    pub fn support(&self) -> Option<usize> {
        if self.tail != StageState::Empty {
            return None;
        }
        Some(self.prefix.iter().filter(|&&s| s != StageState::Empty).count())
    }

    fn gadget_or_empty(&self) -> GadgetState {
        self.gadget.unwrap_or(GadgetState::Empty)
    }

    pub fn leq(&self, other: &LimitSet) -> bool {
        let h = self.horizon().max(other.horizon());
        (0..=h).all(|i| self.state(i) <= other.state(i)) && self.gadget_or_empty().leq(other.gadget_or_empty())
    }

    fn pointwise(&self, other: &LimitSet, f: impl Fn(StageState, StageState) -> StageState, g: impl Fn(GadgetState, GadgetState) -> GadgetState) -> LimitSet {
        let h = self.horizon().max(other.horizon());
        let gadget = match (self.gadget, other.gadget) {
            (None, None) => None,
            _ => Some(g(self.gadget_or_empty(), other.gadget_or_empty())),
        };
        LimitSet::new(
            (0..h).map(|i| f(self.state(i), other.state(i))).collect(),
            f(self.tail, other.tail),
            gadget,
        )
    }

    /// Gate-wise union.
    pub fn union(&self, other: &LimitSet) -> LimitSet {
        self.pointwise(other, Ord::max, GadgetState::join)
    }

    /// Gate-wise intersection. Not necessarily a member of any family.
    pub fn intersection(&self, other: &LimitSet) -> LimitSet {
        self.pointwise(other, Ord::min, GadgetState::meet)
    }
}

impl fmt::Display for StageState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageState::Empty => "empty",
            StageState::E => "E",
            StageState::Full => "full",
        })
    }
}

impl fmt::Display for LimitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for s in &self.prefix {
            write!(f, "{s},")?;
        }
        write!(f, "{}...]", self.tail)?;
        if let Some(g) = self.gadget {
            write!(f, "+{g:?}")?;
        }
        Ok(())
    }
}
