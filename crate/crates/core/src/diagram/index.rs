use std::collections::VecDeque;

use num_traits::Zero;

use super::{ArcSide, CurveDiagram, DiagramError};
use crate::Rational;

/// Locally constant function on `S \ Γ` that increases by 1 from the right
/// side of every arc to its left side.
///
/// Stored as integer values relative to the base region plus a rational
/// offset, so that `value(base) == offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexFunction {
    base: usize,
    values: Vec<i64>,
    offset: Rational,
}

impl IndexFunction {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn is_integer(&self) -> bool {
        self.offset.is_integer()
    }

    /// Integer values relative to the base region (the offset excluded).
    pub fn relative_values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, region: usize) -> Rational {
        Rational::from_integer(self.values[region].into()) + &self.offset
    }

    /// Adds a constant to every value.
    pub fn shifted(&self, c: &Rational) -> Self {
        Self {
            base: self.base,
            values: self.values.clone(),
            offset: &self.offset + c,
        }
    }

    /// Integer values including an integer offset.
    pub(crate) fn integer_values(&self) -> Result<Vec<i64>, DiagramError> {
        if !self.offset.is_integer() {
            return Err(DiagramError::RationalIndex);
        }
        let off: i64 = i64::try_from(self.offset.to_integer()).map_err(|_| DiagramError::RationalIndex)?;
        Ok(self.values.iter().map(|v| v + off).collect())
    }
}

impl CurveDiagram {
    /// Index function vanishing on `base`, by breadth-first propagation across arcs.
    pub fn index_function(&self, base: usize) -> Result<IndexFunction, DiagramError> {
        if base >= self.region_count() {
            return Err(DiagramError::UnknownRegion(base));
        }
        // (neighbour, jump) pairs: value(neighbour) = value(r) + jump
        let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.region_count()];
        for arc in 0..self.arc_count() {
            let left = self.region_of(ArcSide::left(arc));
            let right = self.region_of(ArcSide::right(arc));
            adjacency[right].push((left, 1));
            adjacency[left].push((right, -1));
        }

        let mut values: Vec<Option<i64>> = vec![None; self.region_count()];
        values[base] = Some(0);
        let mut queue = VecDeque::from([base]);
        while let Some(r) = queue.pop_front() {
            let v = values[r].expect("queued regions have values");
            for &(next, jump) in &adjacency[r] {
                match values[next] {
                    None => {
                        values[next] = Some(v + jump);
                        queue.push_back(next);
                    }
                    Some(w) if w != v + jump => {
                        return Err(DiagramError::HomologicallyNontrivial { region: next });
                    }
                    Some(_) => {}
                }
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(r, v)| v.ok_or_else(|| DiagramError::topology(format!("region {r} does not touch the curve"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IndexFunction {
            base,
            values,
            offset: Rational::zero(),
        })
    }

    /// Index of every arc (mean of its two sides) and every crossing (mean of
    /// its four corners).
    pub fn arc_and_crossing_indices(&self, ind: &IndexFunction) -> (Vec<Rational>, Vec<Rational>) {
        let arcs = (0..self.arc_count())
            .map(|a| {
                let l = ind.value(self.region_of(ArcSide::left(a)));
                let r = ind.value(self.region_of(ArcSide::right(a)));
                (l + r) / Rational::from_integer(2.into())
            })
            .collect();
        let crossings = (0..self.crossing_count())
            .map(|c| {
                let sum = self
                    .corner_regions(c)
                    .iter()
                    .fold(Rational::zero(), |acc, &r| acc + ind.value(r));
                sum / Rational::from_integer(4.into())
            })
            .collect();
        (arcs, crossings)
    }

    /// Crossing index for an integer index function.
    pub(crate) fn crossing_index(&self, values: &[i64], crossing: usize) -> i64 {
        let sum: i64 = self.corner_regions(crossing).iter().map(|&r| values[r]).sum();
        debug_assert_eq!(sum % 4, 0);
        sum / 4
    }
}
