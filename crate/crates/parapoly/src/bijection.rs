//! Bijective encodings and closed-form counts.
//!
//! Two bijections are implemented, each with an explicit inverse:
//!
//! * the Delest-Viennot encoding of staircase polyominoes as nonempty Dyck
//!   paths: a piece with columns `a` and overlaps `b` becomes the path with
//!   peak heights `a_1..a_k` and valley heights `b_1 - 1..b_{k-1} - 1`.
//!   Half-perimeter `h` corresponds to path length `2(h - 1)`, area to the
//!   sum of peak heights, and the half-turn symmetry to path palindromy.
//!
//! * a cut-and-reflect bijection between half-turn-symmetric pieces of even
//!   half-perimeter `2m` and antidiagonal-symmetric pieces of the same
//!   half-perimeter and area: cells strictly below the antidiagonal band
//!   `x + y = m - 1` are kept, cells on the band are kept (the reflection
//!   fixes them pointwise), and the upper part is replaced by the
//!   antidiagonal mirror image of the lower part. The inverse restores the
//!   upper part by the half-turn about the midpoint of the band's cell run.
//!
//! Closed-form counters (binomials, Catalan numbers, Dyck-prefix counts)
//! live here as well, cross-checking the generating functions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyomino::{GroupElement, Polyomino};
use crate::series::{Mono, TSeries};

/// One step of a lattice path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Rise,
    Fall,
}

/// A Dyck path: as many rises as falls, never dipping below the start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += match s {
                Step::Rise => 1,
                Step::Fall => -1,
            };
            if height < 0 {
                return Err(Error::InvalidDyckPath(format!(
                    "dips below the baseline after step {}",
                    i + 1
                )));
            }
        }
        if height != 0 {
            return Err(Error::InvalidDyckPath(format!(
                "ends at height {height}, not 0"
            )));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Sum of the heights of the peaks (each rise immediately followed by
    /// a fall, measured after the rise).
    pub fn peak_height_sum(&self) -> i64 {
        let mut height = 0i64;
        let mut sum = 0i64;
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::Rise => {
                    height += 1;
                    if self.steps.get(i + 1) == Some(&Step::Fall) {
                        sum += height;
                    }
                }
                Step::Fall => height -= 1,
            }
        }
        sum
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Palindromic under reading backwards with rises and falls swapped —
    /// the image of the half-turn on the polyomino side.
    pub fn is_palindromic(&self) -> bool {
        let n = self.steps.len();
        (0..n / 2 + 1).all(|i| self.steps[i] != self.steps[n - 1 - i])
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Rise => "U",
                Step::Fall => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Rise),
                'D' | 'd' => Ok(Step::Fall),
                _ => Err(Error::Parse(format!("bad path step {c:?}, expected U or D"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// Encode a staircase polyomino as a Dyck path: `a_1` rises; then for each
/// junction `i`, `a_i - b_i + 1` falls and `a_{i+1} - b_i + 1` rises; and
/// finally `a_k` falls.
pub fn dv_forward(p: &Polyomino) -> DyckPath {
    let a = p.columns();
    let b = p.overlaps();
    let mut steps = Vec::with_capacity(2 * (p.half_perimeter() as usize - 1));
    let push = |steps: &mut Vec<Step>, s: Step, n: i64| {
        for _ in 0..n {
            steps.push(s);
        }
    };
    push(&mut steps, Step::Rise, a[0]);
    for i in 0..b.len() {
        push(&mut steps, Step::Fall, a[i] - b[i] + 1);
        push(&mut steps, Step::Rise, a[i + 1] - b[i] + 1);
    }
    push(&mut steps, Step::Fall, a[a.len() - 1]);
    DyckPath::new(steps).expect("the encoding of a staircase polyomino is a Dyck path")
}

/// Decode a nonempty Dyck path: peak heights become column heights and
/// valley heights (plus one) become overlaps.
pub fn dv_inverse(path: &DyckPath) -> Result<Polyomino> {
    if path.is_empty() {
        return Err(Error::InvalidDyckPath("empty path has no polyomino".into()));
    }
    let steps = path.steps();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut height = 0i64;
    for i in 0..steps.len() {
        match steps[i] {
            Step::Rise => {
                height += 1;
                if matches!(steps.get(i + 1), Some(Step::Fall) | None) {
                    a.push(height);
                }
            }
            Step::Fall => {
                height -= 1;
                if matches!(steps.get(i + 1), Some(Step::Rise)) {
                    b.push(height + 1);
                }
            }
        }
    }
    Polyomino::new(a, b)
}

/// Send a half-turn-symmetric piece of even half-perimeter `2m` to the
/// antidiagonal-symmetric piece with the same lower part: keep the cells
/// with `x + y <= m - 1` and reflect those with `x + y <= m - 2` across the
/// band `x + y = m - 1` (cellwise `(x, y) -> (m-1-y, m-1-x)`).
pub fn r2_to_d2(p: &Polyomino) -> Result<Polyomino> {
    if !p.is_fixed(GroupElement::R2) {
        return Err(Error::InvalidPolyomino(
            "cut-and-reflect needs a half-turn-symmetric piece".into(),
        ));
    }
    let hp = p.half_perimeter();
    if hp % 2 != 0 {
        return Err(Error::InvalidPolyomino(
            "cut-and-reflect needs even half-perimeter".into(),
        ));
    }
    let m = hp / 2;
    let mut out = Vec::new();
    for &(x, y) in &p.cells() {
        let s = x + y;
        if s <= m - 1 {
            out.push((x, y));
        }
        if s <= m - 2 {
            out.push((m - 1 - y, m - 1 - x));
        }
    }
    Polyomino::from_cells(&out)
}

/// Inverse of `r2_to_d2`: the band cells locate the original half-turn
/// center (the midpoint of their run), and the upper part is restored by
/// rotating the lower part about it.
pub fn d2_to_r2(q: &Polyomino) -> Result<Polyomino> {
    if !q.is_fixed(GroupElement::D2) {
        return Err(Error::InvalidPolyomino(
            "inverse cut-and-reflect needs an antidiagonal-symmetric piece".into(),
        ));
    }
    let hp = q.half_perimeter();
    if hp % 2 != 0 {
        return Err(Error::InvalidPolyomino(
            "inverse cut-and-reflect needs even half-perimeter".into(),
        ));
    }
    let m = hp / 2;
    let cells = q.cells();
    let band: Vec<i64> = cells
        .iter()
        .filter(|&&(x, y)| x + y == m - 1)
        .map(|&(x, _)| x)
        .collect();
    let (x_lo, x_hi) = match (band.iter().min(), band.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => {
            return Err(Error::InvalidPolyomino(
                "piece does not meet the antidiagonal band".into(),
            ))
        }
    };
    let u = x_lo + x_hi;
    let mut out = Vec::new();
    for &(x, y) in &cells {
        let s = x + y;
        if s <= m - 1 {
            out.push((x, y));
        }
        if s <= m - 2 {
            out.push((u - x, 2 * (m - 1) - u - y));
        }
    }
    Polyomino::from_cells(&out)
}

// ----- closed-form counts -----

/// Binomial coefficient as an exact integer.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The n-th Catalan number.
pub fn catalan(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Central binomial column `C(k, floor(k/2))`, which also counts Dyck-path
/// prefixes of length k.
pub fn central_binomial(k: i64) -> BigInt {
    binomial(k, k / 2)
}

/// Closed form for the number of half-turn-symmetric pieces at
/// half-perimeter `h`.
pub fn r2_fix_closed(h: i64) -> BigInt {
    if h < 2 {
        return BigInt::zero();
    }
    central_binomial(h - 1)
}

/// Closed form for the number of main-diagonal-symmetric pieces at
/// half-perimeter `h`: a Catalan number at even `h`, zero at odd `h`.
pub fn d1_fix_closed(h: i64) -> BigInt {
    if h < 2 || h % 2 != 0 {
        return BigInt::zero();
    }
    catalan((h - 2) / 2)
}

/// Closed form for the number of pieces fixed by the whole group at
/// half-perimeter `h`: a central binomial at even `h`, zero at odd `h`.
pub fn d12_fix_closed(h: i64) -> BigInt {
    if h < 2 || h % 2 != 0 {
        return BigInt::zero();
    }
    central_binomial((h - 2) / 2)
}

/// Numbers of Dyck-path prefixes by length, computed from the grammar
/// route: the full-path series satisfies `C = 1 + t^2 C^2`, and prefixes
/// decompose as `L = C / (1 - t C)` by splitting at the last return to the
/// running minimum. Returns counts for lengths `0..=max_len`.
pub fn left_factor_counts(max_len: i64) -> Vec<BigInt> {
    let w = max_len + 1;
    let mut c = TSeries::one(w, None);
    for _ in 0..=w {
        let next = TSeries::one(w, None).add(&c.mul(&c).mul_mono(Mono::t(2)));
        if next == c {
            break;
        }
        c = next;
    }
    let den = TSeries::one(w, None).sub(&c.mul_mono(Mono::t(1)));
    let l = TSeries::div(&c, &den).expect("prefix-series division");
    (0..w)
        .map(|i| l.coeff(i).expect("within window").eval_one())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate, Measure};

    fn poly(a: &[i64], b: &[i64]) -> Polyomino {
        Polyomino::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn path_encoding_of_small_pieces() {
        assert_eq!(dv_forward(&poly(&[1], &[])).to_string(), "UD");
        assert_eq!(dv_forward(&poly(&[2], &[])).to_string(), "UUDD");
        assert_eq!(dv_forward(&poly(&[1, 1], &[1])).to_string(), "UDUD");
        // columns 2,2 overlap 1: peaks 2,2 with a valley at height 0.
        assert_eq!(dv_forward(&poly(&[2, 2], &[1])).to_string(), "UUDDUUDD");
        // columns 2,2 overlap 2: peaks 2,2 with a valley at height 1.
        assert_eq!(dv_forward(&poly(&[2, 2], &[2])).to_string(), "UUDUDD");
    }

    #[test]
    fn path_decoding_rejects_garbage() {
        assert!("UUD".parse::<DyckPath>().is_err());
        assert!("DU".parse::<DyckPath>().is_err());
        assert!("UX".parse::<DyckPath>().is_err());
        let empty = DyckPath::new(vec![]).unwrap();
        assert!(dv_inverse(&empty).is_err());
    }

    #[test]
    fn encoding_statistics_and_round_trip_exhaustively() {
        for h in 2..=10 {
            let pieces = enumerate(Measure::HalfPerimeter, h);
            let mut seen = std::collections::BTreeSet::new();
            for p in &pieces {
                let path = dv_forward(&p);
                assert_eq!(path.len() as i64, 2 * (h - 1), "length for {p}");
                let peak_sum: i64 = p.columns().iter().sum();
                assert_eq!(peak_sum, p.area());
                assert_eq!(
                    path.is_palindromic(),
                    p.is_fixed(GroupElement::R2),
                    "palindromy for {p}"
                );
                assert_eq!(dv_inverse(&path).unwrap(), *p, "round trip for {p}");
                assert!(seen.insert(path.to_string()), "duplicate path for {p}");
            }
            // surjectivity: every Dyck path of this length is hit, because
            // the counts agree with the Catalan number.
            assert_eq!(BigInt::from(pieces.len()), catalan(h - 1), "count at {h}");
        }
    }

    #[test]
    fn cut_and_reflect_on_named_pieces() {
        // the vertical tromino maps to the corner piece, the square and the
        // single cell map to themselves.
        assert_eq!(r2_to_d2(&poly(&[3], &[])).unwrap(), poly(&[2, 1], &[1]));
        assert_eq!(r2_to_d2(&poly(&[1, 1, 1], &[1, 1])).unwrap(), poly(&[1, 2], &[1]));
        assert_eq!(r2_to_d2(&poly(&[2, 2], &[2])).unwrap(), poly(&[2, 2], &[2]));
        assert_eq!(r2_to_d2(&poly(&[1], &[])).unwrap(), poly(&[1], &[]));
        // rejected inputs: asymmetric, or odd half-perimeter.
        assert!(r2_to_d2(&poly(&[2, 1], &[1])).is_err());
        assert!(r2_to_d2(&poly(&[2], &[])).is_err());
    }

    #[test]
    fn cut_and_reflect_is_a_statistics_preserving_bijection() {
        for m in 1..=6 {
            let h = 2 * m;
            let pieces = enumerate(Measure::HalfPerimeter, h);
            let sources: Vec<&Polyomino> = pieces
                .iter()
                .filter(|p| p.is_fixed(GroupElement::R2))
                .collect();
            let targets: Vec<&Polyomino> = pieces
                .iter()
                .filter(|p| p.is_fixed(GroupElement::D2))
                .collect();
            let mut images = std::collections::BTreeSet::new();
            for p in &sources {
                let q = r2_to_d2(p).unwrap();
                assert!(q.is_fixed(GroupElement::D2), "image of {p} not symmetric");
                assert_eq!(q.half_perimeter(), h, "half-perimeter of image of {p}");
                assert_eq!(q.area(), p.area(), "area of image of {p}");
                assert_eq!(&d2_to_r2(&q).unwrap(), *p, "round trip of {p}");
                assert!(images.insert(q.clone()), "collision at image of {p}");
            }
            assert_eq!(images.len(), targets.len(), "bijection count at {h}");
        }
    }

    #[test]
    fn closed_counts() {
        assert_eq!(catalan(0), BigInt::one());
        assert_eq!(catalan(5), BigInt::from(42));
        assert_eq!(binomial(9, 4), BigInt::from(126));
        assert_eq!(central_binomial(0), BigInt::one());
        assert_eq!(central_binomial(9), BigInt::from(126));
        assert_eq!(r2_fix_closed(5), BigInt::from(6));
        assert_eq!(r2_fix_closed(10), BigInt::from(126));
        assert_eq!(d1_fix_closed(8), BigInt::from(5));
        assert_eq!(d1_fix_closed(9), BigInt::zero());
        assert_eq!(d12_fix_closed(8), BigInt::from(3));
        assert_eq!(d12_fix_closed(20), BigInt::from(126));
    }

    #[test]
    fn prefix_counts_match_central_binomials() {
        let counts = left_factor_counts(10);
        let expect = [1, 1, 2, 3, 6, 10, 20, 35, 70, 126, 252];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(counts[i], BigInt::from(e), "length {i}");
            assert_eq!(counts[i], central_binomial(i as i64), "formula at {i}");
        }
    }
}
