use std::collections::BTreeMap;
use std::fmt;

use super::DiagramError;

/// Crossing sign: `Pos` iff the tangents at the first and second visit form a
/// positively oriented frame of the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_positive(positive: bool) -> Self {
        if positive {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// Cyclic sequence of `2n` crossing visits. Crossings are numbered `0..n` in
/// order of first appearance; the user-facing labels are kept for rendering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGaussCode {
    visits: Vec<usize>,
    signs: Vec<Sign>,
    labels: Vec<u32>,
    positions: Vec<[usize; 2]>,
}

impl SignedGaussCode {
    /// The embedded circle (`n = 0`).
    pub fn empty() -> Self {
        Self {
            visits: Vec::new(),
            signs: Vec::new(),
            labels: Vec::new(),
            positions: Vec::new(),
        }
    }

    /// Parses a list of `(label, sign)` visits.
    pub fn from_tokens(tokens: &[(u32, Sign)]) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<u32, Vec<(usize, Sign)>> = BTreeMap::new();
        for (pos, &(label, sign)) in tokens.iter().enumerate() {
            seen.entry(label).or_default().push((pos, sign));
        }
        for (label, uses) in &seen {
            if uses.len() != 2 {
                return Err(DiagramError::Label {
                    line: None,
                    message: format!("crossing {label} appears {} time(s), expected 2", uses.len()),
                });
            }
            if uses[0].1 != uses[1].1 {
                return Err(DiagramError::Label {
                    line: None,
                    message: format!("crossing {label} carries different signs at its two visits"),
                });
            }
        }
        let mut index_of: BTreeMap<u32, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut signs = Vec::new();
        let mut visits = Vec::with_capacity(tokens.len());
        for &(label, sign) in tokens {
            let c = *index_of.entry(label).or_insert_with(|| {
                labels.push(label);
                signs.push(sign);
                labels.len() - 1
            });
            visits.push(c);
        }
        Ok(Self::assemble(visits, signs, labels))
    }

    /// Builds a code from dense crossing ids. Crossings are renumbered by first
    /// appearance; labels become `1..=n` in that order.
    pub fn from_visits(visits: &[usize], signs: &[Sign]) -> Self {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut new_signs = Vec::new();
        let mut out = Vec::with_capacity(visits.len());
        for &c in visits {
            let id = *remap.entry(c).or_insert_with(|| {
                new_signs.push(signs[c]);
                new_signs.len() - 1
            });
            out.push(id);
        }
        let labels = (1..=new_signs.len() as u32).collect();
        Self::assemble(out, new_signs, labels)
    }

    fn assemble(visits: Vec<usize>, signs: Vec<Sign>, labels: Vec<u32>) -> Self {
        let mut positions = vec![[usize::MAX; 2]; signs.len()];
        for (pos, &c) in visits.iter().enumerate() {
            if positions[c][0] == usize::MAX {
                positions[c][0] = pos;
            } else {
                positions[c][1] = pos;
            }
        }
        debug_assert!(positions.iter().all(|p| p[1] != usize::MAX));
        Self {
            visits,
            signs,
            labels,
            positions,
        }
    }

    /// Number of crossings `n`.
    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// Number of visits, `2n`.
    pub fn len(&self) -> usize {
        self.visits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visits.is_empty()
    }

    pub fn crossing_at(&self, pos: usize) -> usize {
        self.visits[pos]
    }

    pub fn visits(&self) -> &[usize] {
        &self.visits
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.signs[crossing]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn label(&self, crossing: usize) -> u32 {
        self.labels[crossing]
    }

    /// Visit positions of a crossing, first visit first.
    pub fn positions(&self, crossing: usize) -> [usize; 2] {
        self.positions[crossing]
    }

    pub fn tokens(&self) -> Vec<(u32, Sign)> {
        self.visits
            .iter()
            .map(|&c| (self.labels[c], self.signs[c]))
            .collect()
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.visits.is_empty() {
            return write!(f, "-");
        }
        for (i, &c) in self.visits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.labels[c], self.signs[c].symbol())?;
        }
        Ok(())
    }
}
