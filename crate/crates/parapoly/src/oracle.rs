//! Independent brute-force enumerator used to cross-validate every
//! generating-function result.
//!
//! The enumerator extends staircase polyominoes column by column: a piece
//! with columns `a_1..a_k` and overlaps `b_1..b_{k-1}` has one child per
//! legal `(b_k, a_{k+1})` pair, and removing the last column recovers the
//! unique parent — so the search tree visits every staircase polyomino
//! exactly once. Every extension strictly increases both half-perimeter
//! and area, which makes pruning at a size budget exact.
//!
//! For each size the survey records, per group element, the histogram of
//! areas over fixed pieces; per subgroup, the histogram over pieces whose
//! stabilizer is exactly that subgroup; and the orbit count, obtained
//! without storing orbits by counting pieces that are the lexicographically
//! smallest member of their own orbit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyomino::{GroupElement, Polyomino, Subgroup};
use crate::series::QPoly;

/// Size statistic the enumeration is organized by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    HalfPerimeter,
    Area,
}

impl Measure {
    pub fn of(self, p: &Polyomino) -> i64 {
        match self {
            Measure::HalfPerimeter => p.half_perimeter(),
            Measure::Area => p.area(),
        }
    }

    /// Smallest attainable value (the single cell).
    pub fn min_value(self) -> i64 {
        match self {
            Measure::HalfPerimeter => 2,
            Measure::Area => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Measure::HalfPerimeter => "half-perimeter",
            Measure::Area => "area",
        }
    }
}

/// Walk all staircase polyominoes with `measure <= n_max` whose first
/// column height lies in `roots`, invoking the callback on each.
fn dfs_roots<F: FnMut(&[i64], &[i64], i64, i64)>(
    measure: Measure,
    n_max: i64,
    roots: impl Iterator<Item = i64>,
    f: &mut F,
) {
    let mut a: Vec<i64> = Vec::new();
    let mut b: Vec<i64> = Vec::new();
    for a1 in roots {
        a.push(a1);
        let hp = 1 + a1;
        let area = a1;
        let within = match measure {
            Measure::HalfPerimeter => hp <= n_max,
            Measure::Area => area <= n_max,
        };
        if within {
            extend(measure, n_max, &mut a, &mut b, hp, area, f);
        }
        a.pop();
    }
}

fn extend<F: FnMut(&[i64], &[i64], i64, i64)>(
    measure: Measure,
    n_max: i64,
    a: &mut Vec<i64>,
    b: &mut Vec<i64>,
    hp: i64,
    area: i64,
    f: &mut F,
) {
    f(a, b, hp, area);
    let last = *a.last().unwrap();
    for overlap in 1..=last {
        // appending column height `h` with this overlap adds
        // 1 + (h - overlap) to the half-perimeter and h to the area.
        let h_max = match measure {
            Measure::HalfPerimeter => n_max - hp - 1 + overlap,
            Measure::Area => n_max - area,
        };
        if h_max < overlap {
            continue;
        }
        b.push(overlap);
        for h in overlap..=h_max {
            a.push(h);
            let nhp = hp + 1 + (h - overlap);
            let narea = area + h;
            extend(measure, n_max, a, b, nhp, narea, f);
            a.pop();
        }
        b.pop();
    }
}

/// All staircase polyominoes with the exact measure value `n`, in
/// depth-first order.
pub fn enumerate(measure: Measure, n: i64) -> Vec<Polyomino> {
    let mut out = Vec::new();
    let mut f = |a: &[i64], b: &[i64], hp: i64, area: i64| {
        let v = match measure {
            Measure::HalfPerimeter => hp,
            Measure::Area => area,
        };
        if v == n {
            out.push(Polyomino::new_unchecked(a.to_vec(), b.to_vec()));
        }
    };
    dfs_roots(measure, n, 1..=n, &mut f);
    out
}

const ELEMS: [GroupElement; 4] = GroupElement::ALL;
const SUBS: [Subgroup; 5] = Subgroup::ALL;

/// Raw per-size tallies with machine-word counters (converted to exact
/// integers in `Survey`); u64 is ample for any enumeration that can finish.
#[derive(Clone, Default)]
struct Accum {
    fix_area: [BTreeMap<i64, u64>; 4],
    exact_area: [BTreeMap<i64, u64>; 5],
    canonical: u64,
}

impl Accum {
    fn merge(mut self, other: Accum) -> Accum {
        for i in 0..4 {
            for (k, v) in other.fix_area[i].iter() {
                *self.fix_area[i].entry(*k).or_insert(0) += v;
            }
        }
        for i in 0..5 {
            for (k, v) in other.exact_area[i].iter() {
                *self.exact_area[i].entry(*k).or_insert(0) += v;
            }
        }
        self.canonical += other.canonical;
        self
    }

    fn record(&mut self, p: &Polyomino) {
        let area = p.area();
        let r2 = p.is_fixed(GroupElement::R2);
        let transpose = p.apply(GroupElement::D1);
        let d1 = transpose == *p;
        let rot_transpose = transpose.apply(GroupElement::R2);
        let d2 = rot_transpose == *p;
        let flags = [true, r2, d1, d2];
        for (i, &fixed) in flags.iter().enumerate() {
            if fixed {
                *self.fix_area[i].entry(area).or_insert(0) += 1;
            }
        }
        let stab = Subgroup::from_fix_flags(r2, d1, d2);
        let si = SUBS.iter().position(|&s| s == stab).unwrap();
        *self.exact_area[si].entry(area).or_insert(0) += 1;

        // lexicographic minimum over the orbit {p, r2 p, d1 p, d2 p}
        let rot = p.apply(GroupElement::R2);
        if *p <= rot && *p <= transpose && *p <= rot_transpose {
            self.canonical += 1;
        }
    }
}

/// Exact per-size enumeration results for one measure value.
#[derive(Clone, Debug)]
pub struct Survey {
    pub measure: Measure,
    pub n: i64,
    /// Histogram of areas over pieces fixed by each group element;
    /// the identity entry is the full population.
    pub fix_area: BTreeMap<GroupElement, QPoly>,
    /// Histogram of areas over pieces with stabilizer exactly each subgroup.
    pub exact_area: BTreeMap<Subgroup, QPoly>,
    /// Number of orbits, counted via canonical representatives.
    pub orbits_canonical: BigInt,
}

impl Survey {
    fn from_accum(measure: Measure, n: i64, acc: &Accum) -> Survey {
        let to_poly = |m: &BTreeMap<i64, u64>| {
            let mut p = QPoly::zero();
            for (&e, &c) in m {
                p.add_term(e, &BigInt::from(c));
            }
            p
        };
        Survey {
            measure,
            n,
            fix_area: ELEMS
                .iter()
                .enumerate()
                .map(|(i, &g)| (g, to_poly(&acc.fix_area[i])))
                .collect(),
            exact_area: SUBS
                .iter()
                .enumerate()
                .map(|(i, &s)| (s, to_poly(&acc.exact_area[i])))
                .collect(),
            orbits_canonical: BigInt::from(acc.canonical),
        }
    }

    pub fn total(&self) -> BigInt {
        self.fix_count(GroupElement::Identity)
    }

    pub fn fix_count(&self, g: GroupElement) -> BigInt {
        self.fix_area[&g].eval_one()
    }

    pub fn exact_count(&self, s: Subgroup) -> BigInt {
        self.exact_area[&s].eval_one()
    }

    /// Orbit count by the group average of fixed-point counts; fails if the
    /// sum is not divisible by the group order.
    pub fn orbits_burnside(&self) -> Result<BigInt> {
        let mut sum = BigInt::zero();
        for &g in &ELEMS {
            sum += self.fix_count(g);
        }
        let (d, r) = num_integer::Integer::div_rem(&sum, &BigInt::from(4));
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!(
                "averaging fixed-point counts at {} {}",
                self.measure.label(),
                self.n
            )));
        }
        Ok(d)
    }

    /// Area histogram of asymmetric pieces (stabilizer trivial).
    pub fn asym_area(&self) -> QPoly {
        self.exact_area[&Subgroup::Trivial].clone()
    }
}

/// Enumerate every staircase polyomino with measure value at most `n_max`
/// and tally per-size statistics. The search forest is partitioned by the
/// first column height and the partitions run in parallel; `jobs` bounds
/// the worker count (`None` = one thread per core).
pub fn survey_range(measure: Measure, n_max: i64, jobs: Option<usize>) -> Vec<Survey> {
    let n_min = measure.min_value();
    if n_max < n_min {
        return Vec::new();
    }
    let slots = (n_max - n_min + 1) as usize;
    let run = || -> Vec<Accum> {
        use rayon::prelude::*;
        (1..=n_max)
            .into_par_iter()
            .map(|a1| {
                let mut accs = vec![Accum::default(); slots];
                let mut f = |a: &[i64], b: &[i64], hp: i64, area: i64| {
                    let v = match measure {
                        Measure::HalfPerimeter => hp,
                        Measure::Area => area,
                    };
                    let p = Polyomino::new_unchecked(a.to_vec(), b.to_vec());
                    accs[(v - n_min) as usize].record(&p);
                };
                dfs_roots(measure, n_max, std::iter::once(a1), &mut f);
                accs
            })
            .reduce(
                || vec![Accum::default(); slots],
                |xs, ys| {
                    xs.into_iter()
                        .zip(ys)
                        .map(|(x, y)| x.merge(y))
                        .collect()
                },
            )
    };
    let accs = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("building a worker pool")
            .install(run),
        None => run(),
    };
    accs.iter()
        .enumerate()
        .map(|(i, acc)| Survey::from_accum(measure, n_min + i as i64, acc))
        .collect()
}

/// Survey a single measure value.
pub fn survey(measure: Measure, n: i64, jobs: Option<usize>) -> Survey {
    survey_range(measure, n, jobs)
        .into_iter()
        .last()
        .unwrap_or_else(|| Survey::from_accum(measure, n, &Accum::default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_by_half_perimeter_are_catalan() {
        let expect = [1u64, 2, 5, 14, 42, 132];
        for (i, &c) in expect.iter().enumerate() {
            let n = 2 + i as i64;
            assert_eq!(
                enumerate(Measure::HalfPerimeter, n).len() as u64,
                c,
                "half-perimeter {n}"
            );
        }
    }

    #[test]
    fn totals_by_area() {
        let expect = [1u64, 2, 4, 9, 20, 46, 105, 242];
        for (i, &c) in expect.iter().enumerate() {
            let n = 1 + i as i64;
            assert_eq!(enumerate(Measure::Area, n).len() as u64, c, "area {n}");
        }
    }

    #[test]
    fn survey_matches_enumeration_and_burnside() {
        let surveys = survey_range(Measure::HalfPerimeter, 8, Some(2));
        let orbits = [1u64, 1, 3, 5, 16, 38, 126];
        for s in &surveys {
            assert_eq!(
                s.total(),
                BigInt::from(enumerate(Measure::HalfPerimeter, s.n).len()),
                "total at {}",
                s.n
            );
            assert_eq!(s.orbits_burnside().unwrap(), s.orbits_canonical, "orbits at {}", s.n);
            assert_eq!(
                s.orbits_canonical,
                BigInt::from(orbits[(s.n - 2) as usize]),
                "orbit count at {}",
                s.n
            );
        }
    }

    #[test]
    fn fix_counts_at_small_sizes() {
        let s4 = survey(Measure::HalfPerimeter, 4, Some(1));
        assert_eq!(s4.fix_count(GroupElement::R2), BigInt::from(3));
        assert_eq!(s4.fix_count(GroupElement::D1), BigInt::from(1));
        assert_eq!(s4.fix_count(GroupElement::D2), BigInt::from(3));

        let s6 = survey(Measure::HalfPerimeter, 6, Some(1));
        assert_eq!(s6.fix_count(GroupElement::R2), BigInt::from(10));
        assert_eq!(s6.fix_count(GroupElement::D1), BigInt::from(2));
        assert_eq!(s6.fix_count(GroupElement::D2), BigInt::from(10));

        let a3 = survey(Measure::Area, 3, None);
        assert_eq!(a3.fix_count(GroupElement::R2), BigInt::from(2));
        assert_eq!(a3.fix_count(GroupElement::D1), BigInt::from(0));
        assert_eq!(a3.fix_count(GroupElement::D2), BigInt::from(2));
    }

    #[test]
    fn area_histograms_at_half_perimeter_four() {
        let s = survey(Measure::HalfPerimeter, 4, None);
        assert_eq!(
            s.fix_area[&GroupElement::Identity],
            QPoly::from_pairs(&[(4, 1), (3, 4)])
        );
        assert_eq!(
            s.fix_area[&GroupElement::R2],
            QPoly::from_pairs(&[(4, 1), (3, 2)])
        );
        assert_eq!(s.fix_area[&GroupElement::D1], QPoly::from_pairs(&[(4, 1)]));
        assert_eq!(
            s.fix_area[&GroupElement::D2],
            QPoly::from_pairs(&[(4, 1), (3, 2)])
        );
    }

    #[test]
    fn exact_counts_partition_the_population() {
        for (measure, n) in [(Measure::HalfPerimeter, 9), (Measure::Area, 9)] {
            let s = survey(measure, n, None);
            let mut sum = BigInt::zero();
            for &sub in &Subgroup::ALL {
                sum += s.exact_count(sub);
            }
            assert_eq!(sum, s.total(), "{} {}", measure.label(), n);
        }
    }

    #[test]
    fn asymmetric_counts_at_small_sizes() {
        assert_eq!(
            survey(Measure::HalfPerimeter, 5, None).exact_count(Subgroup::Trivial),
            BigInt::from(8)
        );
        assert_eq!(
            survey(Measure::Area, 6, None).exact_count(Subgroup::Trivial),
            BigInt::from(32)
        );
    }
}
