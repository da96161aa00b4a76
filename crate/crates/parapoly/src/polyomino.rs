//! Staircase (parallelogram) polyominoes and the order-4 reflection group
//! acting on them.
//!
//! A staircase polyomino with `k` columns is encoded by column heights
//! `a_1..a_k` (each >= 1) and consecutive-column overlaps `b_1..b_{k-1}`
//! (each `1 <= b_i <= min(a_i, a_{i+1})`). Column `i+1` starts `a_i - b_i`
//! rows above column `i`, so both the bottom edge and the top edge climb
//! weakly from left to right. Derived statistics: `area = sum(a)`,
//! `height = sum(a) - sum(b)`, `half_perimeter = width + height`.
//!
//! The symmetry group is {1, r2, d1, d2}: `r2` is the half-turn (reverse
//! both tuples), `d1` reflects across the main diagonal (transpose,
//! `(x, y) -> (y, x)`), and `d2` reflects across the antidiagonal
//! (`(x, y) -> (-y, -x)`, followed by renormalization). All three
//! involutions preserve the staircase property, and `r2 = d1 d2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One element of the symmetry group {1, r2, d1, d2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Identity,
    R2,
    D1,
    D2,
}

impl GroupElement {
    pub const ALL: [GroupElement; 4] = [
        GroupElement::Identity,
        GroupElement::R2,
        GroupElement::D1,
        GroupElement::D2,
    ];

    /// Group multiplication; every element is its own inverse and the
    /// product of any two distinct involutions is the third.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        use GroupElement::*;
        match (self, other) {
            (Identity, g) | (g, Identity) => g,
            (a, b) if a == b => Identity,
            (R2, D1) | (D1, R2) => D2,
            (R2, D2) | (D2, R2) => D1,
            (D1, D2) | (D2, D1) => R2,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupElement::Identity => "1",
            GroupElement::R2 => "r2",
            GroupElement::D1 => "d1",
            GroupElement::D2 => "d2",
        };
        write!(f, "{s}")
    }
}

/// A subgroup of the symmetry group; these five are all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subgroup {
    Trivial,
    R2,
    D1,
    D2,
    Full,
}

impl Subgroup {
    pub const ALL: [Subgroup; 5] = [
        Subgroup::Trivial,
        Subgroup::R2,
        Subgroup::D1,
        Subgroup::D2,
        Subgroup::Full,
    ];

    pub fn elements(self) -> &'static [GroupElement] {
        use GroupElement::*;
        match self {
            Subgroup::Trivial => &[Identity],
            Subgroup::R2 => &[Identity, R2],
            Subgroup::D1 => &[Identity, D1],
            Subgroup::D2 => &[Identity, D2],
            Subgroup::Full => &[Identity, R2, D1, D2],
        }
    }

    pub fn order(self) -> usize {
        self.elements().len()
    }

    /// Moebius function of the subgroup lattice from the bottom element:
    /// inverting "fixed by at least H" counts into "stabilizer exactly H"
    /// counts uses mu(Trivial) = 1, mu(order-2) = -1, mu(Full) = 2.
    pub fn mobius_from_trivial(self) -> i64 {
        match self {
            Subgroup::Trivial => 1,
            Subgroup::R2 | Subgroup::D1 | Subgroup::D2 => -1,
            Subgroup::Full => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Subgroup::Trivial => "trivial",
            Subgroup::R2 => "<r2>",
            Subgroup::D1 => "<d1>",
            Subgroup::D2 => "<d2>",
            Subgroup::Full => "full",
        }
    }

    /// The subgroup whose non-identity elements are exactly those flagged.
    /// Panics when the flagged set is not closed under composition, which
    /// would indicate a broken group action.
    pub fn from_fix_flags(r2: bool, d1: bool, d2: bool) -> Subgroup {
        match (r2, d1, d2) {
            (false, false, false) => Subgroup::Trivial,
            (true, false, false) => Subgroup::R2,
            (false, true, false) => Subgroup::D1,
            (false, false, true) => Subgroup::D2,
            (true, true, true) => Subgroup::Full,
            _ => unreachable!("a fixing set must be a subgroup"),
        }
    }
}

/// A staircase polyomino in column-height / overlap encoding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyomino {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl Polyomino {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidPolyomino("no columns".into()));
        }
        if b.len() + 1 != a.len() {
            return Err(Error::InvalidPolyomino(format!(
                "{} columns need {} overlaps, found {}",
                a.len(),
                a.len() - 1,
                b.len()
            )));
        }
        if let Some(&h) = a.iter().find(|&&h| h < 1) {
            return Err(Error::InvalidPolyomino(format!("column height {h} < 1")));
        }
        for i in 0..b.len() {
            if b[i] < 1 || b[i] > a[i].min(a[i + 1]) {
                return Err(Error::InvalidPolyomino(format!(
                    "overlap {} at position {} outside 1..=min({}, {})",
                    b[i],
                    i + 1,
                    a[i],
                    a[i + 1]
                )));
            }
        }
        Ok(Polyomino { a, b })
    }

    /// Constructor for callers that guarantee validity structurally.
    pub(crate) fn new_unchecked(a: Vec<i64>, b: Vec<i64>) -> Self {
        debug_assert!(Polyomino::new(a.clone(), b.clone()).is_ok());
        Polyomino { a, b }
    }

    pub fn columns(&self) -> &[i64] {
        &self.a
    }

    pub fn overlaps(&self) -> &[i64] {
        &self.b
    }

    pub fn width(&self) -> i64 {
        self.a.len() as i64
    }

    pub fn area(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn height(&self) -> i64 {
        self.area() - self.b.iter().sum::<i64>()
    }

    pub fn half_perimeter(&self) -> i64 {
        self.width() + self.height()
    }

    /// Row index where each column starts; column 1 starts at 0.
    pub fn bottom_offsets(&self) -> Vec<i64> {
        let mut s = Vec::with_capacity(self.a.len());
        let mut cur = 0;
        for i in 0..self.a.len() {
            s.push(cur);
            if i + 1 < self.a.len() {
                cur += self.a[i] - self.b[i];
            }
        }
        s
    }

    /// All unit cells, sorted, with the first column at x = 0 and the
    /// bottom of the first column at y = 0.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        let offsets = self.bottom_offsets();
        let mut cells = Vec::with_capacity(self.area() as usize);
        for (x, (&h, &s)) in self.a.iter().zip(offsets.iter()).enumerate() {
            for y in s..s + h {
                cells.push((x as i64, y));
            }
        }
        cells
    }

    /// Rebuild a polyomino from an arbitrary cell set (any translation),
    /// verifying that it is a staircase polyomino: consecutive nonempty
    /// columns of contiguous cells whose bottoms and tops both climb weakly,
    /// with positive overlap between neighbours.
    pub fn from_cells(cells: &[(i64, i64)]) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidPolyomino("no cells".into()));
        }
        let mut sorted: Vec<(i64, i64)> = cells.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let x_min = sorted[0].0;
        let x_max = sorted[sorted.len() - 1].0;
        let width = (x_max - x_min + 1) as usize;
        let mut bottoms = vec![i64::MAX; width];
        let mut tops = vec![i64::MIN; width];
        let mut counts = vec![0i64; width];
        for &(x, y) in &sorted {
            let i = (x - x_min) as usize;
            bottoms[i] = bottoms[i].min(y);
            tops[i] = tops[i].max(y);
            counts[i] += 1;
        }
        for i in 0..width {
            if counts[i] == 0 {
                return Err(Error::InvalidPolyomino(format!(
                    "empty column at x = {}",
                    x_min + i as i64
                )));
            }
            if tops[i] - bottoms[i] + 1 != counts[i] {
                return Err(Error::InvalidPolyomino(format!(
                    "column at x = {} is not contiguous",
                    x_min + i as i64
                )));
            }
        }
        for i in 0..width - 1 {
            if bottoms[i + 1] < bottoms[i] || tops[i + 1] < tops[i] {
                return Err(Error::InvalidPolyomino(format!(
                    "column edges descend between x = {} and x = {}",
                    x_min + i as i64,
                    x_min + i as i64 + 1
                )));
            }
            if bottoms[i + 1] > tops[i] {
                return Err(Error::InvalidPolyomino(format!(
                    "columns at x = {} and x = {} do not overlap",
                    x_min + i as i64,
                    x_min + i as i64 + 1
                )));
            }
        }
        let a: Vec<i64> = counts;
        let b: Vec<i64> = (0..width - 1)
            .map(|i| tops[i] - bottoms[i + 1] + 1)
            .collect();
        Polyomino::new(a, b)
    }

    /// The image under a group element, renormalized to the canonical
    /// placement. Staircase polyominoes are closed under all four elements.
    pub fn apply(&self, g: GroupElement) -> Polyomino {
        match g {
            GroupElement::Identity => self.clone(),
            GroupElement::R2 => {
                let mut a = self.a.clone();
                let mut b = self.b.clone();
                a.reverse();
                b.reverse();
                Polyomino::new_unchecked(a, b)
            }
            GroupElement::D1 => {
                let transposed: Vec<(i64, i64)> =
                    self.cells().into_iter().map(|(x, y)| (y, x)).collect();
                Polyomino::from_cells(&transposed)
                    .expect("transpose of a staircase polyomino is a staircase polyomino")
            }
            GroupElement::D2 => self.apply(GroupElement::D1).apply(GroupElement::R2),
        }
    }

    pub fn is_fixed(&self, g: GroupElement) -> bool {
        match g {
            GroupElement::Identity => true,
            GroupElement::R2 => {
                self.a.iter().eq(self.a.iter().rev()) && self.b.iter().eq(self.b.iter().rev())
            }
            _ => self.apply(g) == *self,
        }
    }

    /// The stabilizer subgroup. The set of fixing elements must be closed
    /// under composition, so exactly 0, 1 or 3 non-identity elements fix;
    /// any other combination would be a bug in the action and panics.
    pub fn symmetry_group(&self) -> Subgroup {
        let r2 = self.is_fixed(GroupElement::R2);
        let transpose = self.apply(GroupElement::D1);
        let d1 = transpose == *self;
        let d2 = transpose.apply(GroupElement::R2) == *self;
        Subgroup::from_fix_flags(r2, d1, d2)
    }

    /// Lexicographically smallest `(a, b)` encoding over the orbit.
    pub fn canonical_orbit_rep(&self) -> Polyomino {
        GroupElement::ALL
            .iter()
            .map(|&g| self.apply(g))
            .min_by(|p, q| p.a.cmp(&q.a).then_with(|| p.b.cmp(&q.b)))
            .unwrap()
    }
}

/// Text form `a=2,2;b=1` (overlap list may be empty: `a=3;b=`).
impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "a={};b={}", join(&self.a), join(&self.b))
    }
}

impl FromStr for Polyomino {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("polyomino literal {s:?}: {msg}"));
        let (a_part, b_part) = s
            .split_once(';')
            .ok_or_else(|| err("expected `a=...;b=...`"))?;
        let a_str = a_part
            .strip_prefix("a=")
            .ok_or_else(|| err("first field must start with `a=`"))?;
        let b_str = b_part
            .strip_prefix("b=")
            .ok_or_else(|| err("second field must start with `b=`"))?;
        let parse_list = |t: &str| -> Result<Vec<i64>> {
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|e| err(&format!("bad integer {x:?}: {e}")))
                })
                .collect()
        };
        Polyomino::new(parse_list(a_str)?, parse_list(b_str)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(a: &[i64], b: &[i64]) -> Polyomino {
        Polyomino::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn statistics_of_small_pieces() {
        let cell = poly(&[1], &[]);
        assert_eq!(cell.half_perimeter(), 2);
        assert_eq!(cell.area(), 1);

        let ell = poly(&[2, 1], &[1]);
        assert_eq!(ell.width(), 2);
        assert_eq!(ell.height(), 2);
        assert_eq!(ell.half_perimeter(), 4);
        assert_eq!(ell.area(), 3);
        assert_eq!(ell.cells(), vec![(0, 0), (0, 1), (1, 1)]);

        let stair = poly(&[2, 2], &[1]);
        assert_eq!(stair.bottom_offsets(), vec![0, 1]);
        assert_eq!(stair.half_perimeter(), 5);
        assert_eq!(stair.cells(), vec![(0, 0), (0, 1), (1, 1), (1, 2)]);
    }

    #[test]
    fn constructor_rejects_bad_data() {
        assert!(Polyomino::new(vec![], vec![]).is_err());
        assert!(Polyomino::new(vec![1, 1], vec![]).is_err());
        assert!(Polyomino::new(vec![0], vec![]).is_err());
        assert!(Polyomino::new(vec![2, 2], vec![0]).is_err());
        assert!(Polyomino::new(vec![2, 1], vec![2]).is_err());
    }

    #[test]
    fn from_cells_round_trips_and_validates() {
        for p in [
            poly(&[1], &[]),
            poly(&[2, 1], &[1]),
            poly(&[2, 2], &[1]),
            poly(&[3, 1, 2], &[1, 1]),
        ] {
            assert_eq!(Polyomino::from_cells(&p.cells()).unwrap(), p);
        }
        // translation invariance
        let shifted: Vec<(i64, i64)> = poly(&[2, 1], &[1])
            .cells()
            .into_iter()
            .map(|(x, y)| (x - 7, y + 3))
            .collect();
        assert_eq!(Polyomino::from_cells(&shifted).unwrap(), poly(&[2, 1], &[1]));
        // gaps, descending edges and disconnected columns are rejected
        assert!(Polyomino::from_cells(&[(0, 0), (0, 2)]).is_err());
        assert!(Polyomino::from_cells(&[(0, 1), (1, 0)]).is_err());
        assert!(Polyomino::from_cells(&[(0, 0), (1, 1)]).is_err());
        assert!(Polyomino::from_cells(&[(0, 0), (2, 0)]).is_err());
    }

    #[test]
    fn group_action_on_the_ell_tromino() {
        // columns 2,1 with overlap 1: cells (0,0),(0,1),(1,1).
        let ell = poly(&[2, 1], &[1]);
        assert_eq!(ell.apply(GroupElement::R2), poly(&[1, 2], &[1]));
        assert_eq!(ell.apply(GroupElement::D1), poly(&[1, 2], &[1]));
        assert_eq!(ell.apply(GroupElement::D2), ell);
        assert_eq!(ell.symmetry_group(), Subgroup::D2);
    }

    #[test]
    fn group_action_on_dominoes_and_squares() {
        let vertical = poly(&[2], &[]);
        assert_eq!(vertical.symmetry_group(), Subgroup::R2);
        assert_eq!(vertical.apply(GroupElement::D1), poly(&[1, 1], &[1]));

        let square = poly(&[2, 2], &[2]);
        assert_eq!(square.symmetry_group(), Subgroup::Full);

        let cell = poly(&[1], &[]);
        assert_eq!(cell.symmetry_group(), Subgroup::Full);

        let stair = poly(&[2, 2], &[1]);
        assert_eq!(stair.symmetry_group(), Subgroup::R2);
    }

    #[test]
    fn half_turn_agrees_with_cellwise_rotation() {
        for p in [poly(&[2, 1], &[1]), poly(&[3, 1, 2], &[1, 1]), poly(&[2, 3], &[2])] {
            let rotated: Vec<(i64, i64)> =
                p.cells().into_iter().map(|(x, y)| (-x, -y)).collect();
            assert_eq!(Polyomino::from_cells(&rotated).unwrap(), p.apply(GroupElement::R2));
        }
    }

    #[test]
    fn antitranspose_agrees_with_cellwise_reflection() {
        for p in [poly(&[2, 1], &[1]), poly(&[3, 1, 2], &[1, 1]), poly(&[2, 3], &[2])] {
            let reflected: Vec<(i64, i64)> =
                p.cells().into_iter().map(|(x, y)| (-y, -x)).collect();
            assert_eq!(Polyomino::from_cells(&reflected).unwrap(), p.apply(GroupElement::D2));
        }
    }

    #[test]
    fn composition_matches_action() {
        let p = poly(&[3, 1, 2], &[1, 1]);
        for &g in &GroupElement::ALL {
            for &h in &GroupElement::ALL {
                assert_eq!(
                    p.apply(g.compose(h)),
                    p.apply(h).apply(g),
                    "composition {g} * {h}"
                );
            }
        }
    }

    #[test]
    fn every_element_is_an_involution() {
        for &g in &GroupElement::ALL {
            assert_eq!(g.compose(g), GroupElement::Identity);
        }
        assert_eq!(
            GroupElement::D1.compose(GroupElement::D2),
            GroupElement::R2
        );
    }

    #[test]
    fn text_form_round_trips() {
        for s in ["a=2,2;b=1", "a=3;b=", "a=3,1,2;b=1,1"] {
            let p: Polyomino = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("a=2,2".parse::<Polyomino>().is_err());
        assert!("b=1;a=2,2".parse::<Polyomino>().is_err());
        assert!("a=2,x;b=1".parse::<Polyomino>().is_err());
        assert!("a=2,1;b=2".parse::<Polyomino>().is_err());
    }

    #[test]
    fn canonical_rep_is_orbit_invariant() {
        let p = poly(&[3, 1, 2], &[1, 1]);
        let rep = p.canonical_orbit_rep();
        for &g in &GroupElement::ALL {
            assert_eq!(p.apply(g).canonical_orbit_rep(), rep);
        }
    }
}
