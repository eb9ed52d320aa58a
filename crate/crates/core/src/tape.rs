//! State descriptions and clamp sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::formula::{Atom, InterventionSpec, PropFormula};

/// A finite-support assignment of bits to variables; absent indices read 0.
///
/// Only the indices holding 1 are stored, so equal tapes compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tape {
    ones: BTreeSet<u32>,
}

impl Tape {
    pub fn zero() -> Tape {
        Tape::default()
    }

    pub fn from_ones(ones: impl IntoIterator<Item = u32>) -> Tape {
        Tape { ones: ones.into_iter().filter(|&i| i >= 1).collect() }
    }

    pub fn get(&self, index: u32) -> bool {
        self.ones.contains(&index)
    }

    pub fn set(&mut self, index: u32, bit: bool) {
        if bit {
            self.ones.insert(index);
        } else {
            self.ones.remove(&index);
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = u32> + '_ {
        self.ones.iter().copied()
    }

    pub fn max_index(&self) -> u32 {
        self.ones.last().copied().unwrap_or(0)
    }

    pub fn satisfies(&self, formula: &PropFormula) -> bool {
        formula.eval(&|a: Atom| self.get(a.index()))
    }

    /// Keeps only indices `<= n`.
    pub fn restrict(&self, n: u32) -> Tape {
        Tape { ones: self.ones.range(..=n).copied().collect() }
    }
}

/// Truth of a propositional formula on a tape.
pub fn prop_eval(tape: &Tape, formula: &PropFormula) -> bool {
    tape.satisfies(formula)
}

/// Sparse rendering `X1=1,X3=1`; the all-zero tape renders as the empty string.
impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.ones.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "X{i}=1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid tape literal {item:?}: expected comma-separated `Xi=0` or `Xi=1`")]
pub struct TapeError {
    pub item: String,
}

impl FromStr for Tape {
    type Err = TapeError;

    fn from_str(s: &str) -> Result<Tape, TapeError> {
        let mut tape = Tape::zero();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let err = || TapeError { item: item.to_string() };
            let (var, bit) = item.split_once('=').ok_or_else(err)?;
            let index: u32 =
                var.trim().strip_prefix('X').and_then(|d| d.parse().ok()).filter(|&i| i >= 1).ok_or_else(err)?;
            let bit = match bit.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(err()),
            };
            tape.set(index, bit);
        }
        Ok(tape)
    }
}

/// Variables held fixed by an intervention, with their values.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClampSet {
    clamps: BTreeMap<u32, bool>,
}

impl ClampSet {
    pub fn empty() -> ClampSet {
        ClampSet::default()
    }

    pub fn get(&self, index: u32) -> Option<bool> {
        self.clamps.get(&index).copied()
    }

    pub fn insert(&mut self, index: u32, bit: bool) {
        self.clamps.insert(index, bit);
    }

    pub fn is_empty(&self) -> bool {
        self.clamps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.clamps.iter().map(|(&i, &b)| (i, b))
    }

    pub fn max_index(&self) -> u32 {
        self.clamps.keys().last().copied().unwrap_or(0)
    }

    /// True when the tape holds the clamped value at every clamped index.
    pub fn agrees_with(&self, tape: &Tape) -> bool {
        self.iter().all(|(i, b)| tape.get(i) == b)
    }
}

/// Positive literals clamp to 1, negative ones to 0.
pub fn clamp_of(spec: &InterventionSpec) -> ClampSet {
    ClampSet { clamps: spec.literals().iter().map(|l| (l.atom.index(), l.positive)).collect() }
}

impl From<&InterventionSpec> for ClampSet {
    fn from(spec: &InterventionSpec) -> ClampSet {
        clamp_of(spec)
    }
}
