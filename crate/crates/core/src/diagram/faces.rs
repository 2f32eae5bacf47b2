//! Face tracing of the combinatorial map given by a signed Gauss code.
//!
//! Arc `k` runs from visit `k` to visit `k + 1 (mod 2n)`. At a crossing with
//! first visit `f` and second visit `s`, the counterclockwise order of the
//! four arc-ends is
//!
//! ```text
//! sign + : out(f), out(s), in(f), in(s)
//! sign - : out(f), in(s),  in(f), out(s)
//! ```
//!
//! where `out(v)` is the tail of arc `v` and `in(v)` the head of arc `v - 1`.
//! Each boundary cycle keeps its face on the left: after walking along an
//! arc-side into a crossing, the walk continues along the arc-end that is the
//! clockwise neighbour of the end it arrived on.

use std::fmt;

use super::SignedGaussCode;
use super::code::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One side of one arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcSide {
    pub arc: usize,
    pub side: Side,
}

impl ArcSide {
    pub fn new(arc: usize, side: Side) -> Self {
        Self { arc, side }
    }

    pub fn left(arc: usize) -> Self {
        Self::new(arc, Side::Left)
    }

    pub fn right(arc: usize) -> Self {
        Self::new(arc, Side::Right)
    }

    pub fn dart(self) -> usize {
        2 * self.arc + usize::from(self.side == Side::Right)
    }

    pub fn from_dart(dart: usize) -> Self {
        let side = if dart.is_multiple_of(2) { Side::Left } else { Side::Right };
        Self::new(dart / 2, side)
    }

    pub fn opposite(self) -> Self {
        Self::new(self.arc, self.side.opposite())
    }
}

impl fmt::Display for ArcSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        write!(f, "{}{}", self.arc, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Out(usize),
    In(usize),
}

fn rotation(code: &SignedGaussCode, crossing: usize) -> [End; 4] {
    let [f, s] = code.positions(crossing);
    match code.sign(crossing) {
        Sign::Pos => [End::Out(f), End::Out(s), End::In(f), End::In(s)],
        Sign::Neg => [End::Out(f), End::In(s), End::In(f), End::Out(s)],
    }
}

/// A traced face boundary, listed in walking order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryCycle {
    sides: Vec<ArcSide>,
    crossing_free: bool,
}

impl BoundaryCycle {
    pub fn sides(&self) -> &[ArcSide] {
        &self.sides
    }

    /// Number of crossing corners on the cycle.
    pub fn corners(&self) -> usize {
        if self.crossing_free {
            0
        } else {
            self.sides.len()
        }
    }

    pub fn contains(&self, side: ArcSide) -> bool {
        self.sides.contains(&side)
    }
}

/// Result of tracing: the cycles plus lookup tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Faces {
    pub cycles: Vec<BoundaryCycle>,
    /// Cycle id per dart (`ArcSide::dart`).
    pub dart_cycle: Vec<usize>,
    /// Per crossing, the arc-side whose face fills each of the four corners.
    pub corners: Vec<Vec<ArcSide>>,
}

/// Traces all boundary cycles. Cycles are numbered in order of their smallest
/// dart, where darts are ordered `0L, 0R, 1L, 1R, ...`; this numbering is the
/// one used by `region` lines in diagram files.
pub fn trace_boundary_cycles(code: &SignedGaussCode) -> Vec<BoundaryCycle> {
    trace(code).cycles
}

pub(crate) fn trace(code: &SignedGaussCode) -> Faces {
    let visits = code.len();
    if visits == 0 {
        let cycles = vec![
            BoundaryCycle {
                sides: vec![ArcSide::left(0)],
                crossing_free: true,
            },
            BoundaryCycle {
                sides: vec![ArcSide::right(0)],
                crossing_free: true,
            },
        ];
        return Faces {
            cycles,
            dart_cycle: vec![0, 1],
            corners: Vec::new(),
        };
    }

    let rotations: Vec<[End; 4]> = (0..code.crossing_count()).map(|c| rotation(code, c)).collect();
    let darts = 2 * visits;
    let mut dart_cycle = vec![usize::MAX; darts];
    let mut corners = vec![Vec::with_capacity(4); code.crossing_count()];
    let mut cycles = Vec::new();

    for start in 0..darts {
        if dart_cycle[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut sides = Vec::new();
        let mut dart = start;
        loop {
            dart_cycle[dart] = id;
            let side = ArcSide::from_dart(dart);
            sides.push(side);
            let (crossing, arrived) = match side.side {
                Side::Left => {
                    let v = (side.arc + 1) % visits;
                    (code.crossing_at(v), End::In(v))
                }
                Side::Right => (code.crossing_at(side.arc), End::Out(side.arc)),
            };
            corners[crossing].push(side);
            let rot = &rotations[crossing];
            let at = rot.iter().position(|e| *e == arrived).expect("end belongs to its crossing");
            let next = match rot[(at + 3) % 4] {
                End::Out(v) => ArcSide::left(v),
                End::In(v) => ArcSide::right((v + visits - 1) % visits),
            };
            dart = next.dart();
            if dart == start {
                break;
            }
        }
        cycles.push(BoundaryCycle {
            sides,
            crossing_free: false,
        });
    }

    Faces {
        cycles,
        dart_cycle,
        corners,
    }
}
