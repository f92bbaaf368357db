use std::fmt;

/// Terminal membership of a gate's definable set (1 = vertex in the set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateState {
    pub in1: bool,
    pub in2: bool,
    pub out: bool,
}

impl GateState {
    pub const fn new(in1: bool, in2: bool, out: bool) -> Self {
        Self { in1, in2, out }
    }

    /// Both inputs off forces the output off.
    pub fn is_allowed(self) -> bool {
        self.in1 || self.in2 || !self.out
    }

    /// Position in the canonical order: `in1` is bit 0, `in2` bit 1, `out` bit 2.
    pub fn code(self) -> u8 {
        self.in1 as u8 | (self.in2 as u8) << 1 | (self.out as u8) << 2
    }

    pub fn from_code(code: u8) -> Self {
        Self::new(code & 1 != 0, code & 2 != 0, code & 4 != 0)
    }

    pub fn as_pattern(self) -> Vec<bool> {
        vec![self.in1, self.in2, self.out]
    }
}

impl fmt::Display for GateState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| if v { '1' } else { '0' };
        write!(f, "{}{}{}", b(self.in1), b(self.in2), b(self.out))
    }
}

/// The seven states 000, 100, 010, 110, 101, 011, 111.
pub fn allowed_states() -> Vec<GateState> {
    (0..8).map(GateState::from_code).filter(|s| s.is_allowed()).collect()
}

pub fn state_join(s: GateState, t: GateState) -> GateState {
    GateState::new(s.in1 || t.in1, s.in2 || t.in2, s.out || t.out)
}

/// `(g, out)` patterns of the dagger gate: 00, 10, 11.
pub fn dagger_patterns() -> Vec<Vec<bool>> {
    vec![vec![false, false], vec![true, false], vec![true, true]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_states_in_canonical_order() {
        let names: Vec<String> = allowed_states().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["000", "100", "010", "110", "101", "011", "111"]);
        assert!(!names.contains(&"001".to_string()));
    }

    #[test]
    fn join_examples_and_closure() {
        let s = |t: &str| allowed_states().into_iter().find(|x| x.to_string() == t).unwrap();
        assert_eq!(state_join(s("100"), s("010")), s("110"));
        assert_eq!(state_join(s("110"), s("101")), s("111"));
        for a in allowed_states() {
            assert_eq!(state_join(s("000"), a), a);
            for b in allowed_states() {
                assert!(state_join(a, b).is_allowed());
            }
        }
    }
}
