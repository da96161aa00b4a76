//! Series built on Dyck paths: the q-Catalan refinement of Dyck prefixes
//! by peak count and area, the diagonally symmetric class obtained from it
//! by substitution, and the doubly symmetric class assembled from
//! staircase slices with a prescribed base row.
//!
//! Every series here that feeds the public tables is computed twice, by
//! structurally different routes, and the two results are asserted equal
//! on their common window before anything is returned.

use crate::error::{Error, Result};
use crate::genfun::bessel::Window;
use crate::series::{Mono, QPoly, TSeries};

/// q-Catalan polynomials c_0..c_max under the convolution
/// c_n = sum_k q^k c_k c_{n-1-k}; c_n has degree n(n-1)/2.
pub fn qcatalan(max: usize) -> Vec<QPoly> {
    let mut c: Vec<QPoly> = Vec::with_capacity(max + 1);
    c.push(QPoly::one());
    for n in 1..=max {
        let mut next = QPoly::zero();
        for k in 0..n {
            let mut term = c[k].mul(&c[n - 1 - k]);
            term.mul_monomial(k as i64, false);
            next.add_assign(&term);
        }
        assert_eq!(
            next.max_exp(),
            Some((n as i64) * (n as i64 - 1) / 2),
            "q-Catalan degree drifted at index {n}"
        );
        c.push(next);
    }
    c
}

/// Dyck-path series D(y, q): y marks peaks, q the number of up-steps.
/// Exact in q. Computed from the q-Catalan convolution and checked against
/// the quotient of alternating sums before being returned.
pub fn dyck_gf(y_max: i64) -> Result<TSeries> {
    let exact = dyck_gf_catalan(y_max);
    let quotient = dyck_gf_quotient(y_max)?;
    exact.assert_equal_on_common_window(&quotient, "Dyck series route agreement")?;
    Ok(exact)
}

fn dyck_gf_catalan(y_max: i64) -> TSeries {
    let cats = qcatalan(y_max.max(1) as usize);
    let mut sum = TSeries::zero(y_max + 1, None);
    for n in 1..=y_max {
        let mut level = cats[(n - 1) as usize].clone();
        level.mul_monomial(2 * n - 1, false);
        sum = sum.add(&TSeries::from_qpoly_at(n, level, y_max + 1, None));
    }
    sum
}

/// Largest q-degree of the y^n coefficient of D.
fn dyck_degree(n: i64) -> i64 {
    2 * n - 1 + (n - 1) * (n - 2) / 2
}

fn dyck_gf_quotient(y_max: i64) -> Result<TSeries> {
    let w = Window::new(y_max + 1, Some(dyck_degree(y_max.max(1)) + 1));
    let trunc_q = w.trunc_q.unwrap();
    let mut num = w.zero();
    let mut m = 0i64;
    while m + 1 < w.trunc_t && (m + 1) * (m + 1) < trunc_q {
        let mut term = w.mono(Mono {
            t: m + 1,
            q: (m + 1) * (m + 1),
            neg: m % 2 == 1,
        });
        for i in 1..=m {
            term = term.geometric_div(Mono::q(i))?;
        }
        num = num.add(&term);
        m += 1;
    }
    let den = dyck_quotient_denominator(&w)?;
    TSeries::div(&num, &den)
}

/// The alternating-sum denominator shared by the Dyck quotient and the
/// bounded-base staircase slices.
fn dyck_quotient_denominator(w: &Window) -> Result<TSeries> {
    let trunc_q = w.trunc_q.ok_or_else(|| {
        Error::BadOperation("quotient denominator needs a q-window".into())
    })?;
    let mut den = w.zero();
    let mut m = 0i64;
    while m < w.trunc_t && m * (m + 1) < trunc_q {
        let mut term = w.mono(Mono {
            t: m,
            q: m * (m + 1),
            neg: m % 2 == 1,
        });
        for i in 1..=m {
            term = term.geometric_div(Mono::q(i))?;
        }
        den = den.add(&term);
        m += 1;
    }
    Ok(den)
}

/// Diagonally symmetric pieces by half-perimeter t and area q: the Dyck
/// series with y -> t^2/q and q -> q^2, exact through t-order `max_t`.
pub fn d1_series(max_t: i64) -> Result<TSeries> {
    let y_max = max_t / 2 + 1;
    let d = dyck_gf(y_max)?;
    Ok(d
        .substitute(Mono::new(2, -1), Mono::q(2))?
        .clip_t(max_t + 1))
}

/// Largest area of a staircase with base row n and j rows total: rows of
/// widths n, n+1, ..., n+j-1.
fn slice_degree(n: i64, j: i64) -> i64 {
    j * n + j * (j - 1) / 2
}

/// Staircase slices L_n(1, y, q): y marks rows, q area, for staircases
/// whose base row has width exactly n and each later row has width between
/// 2 and one more than its predecessor. Exact in q through y-order `y_max`.
pub fn ln_series(n: i64, y_max: i64) -> Result<TSeries> {
    assert!(n >= 1 && y_max >= 1);
    let w = Window::new(y_max + 1, Some(slice_degree(n, y_max) + 1));
    let trunc_q = w.trunc_q.unwrap();
    let mut num = w.zero();
    let mut m = 0i64;
    while m + 1 < w.trunc_t && (m + n) * (m + 1) < trunc_q {
        let mut term = w.mono(Mono {
            t: m + 1,
            q: (m + n) * (m + 1),
            neg: m % 2 == 1,
        });
        for i in 1..=m {
            term = term.geometric_div(Mono::q(i))?;
        }
        num = num.add(&term);
        m += 1;
    }
    let den = dyck_quotient_denominator(&w)?;
    TSeries::div(&num, &den)?.promote_exact(|j| slice_degree(n, j), "staircase slice series")
}

/// Pieces fixed by both diagonal reflections, by half-perimeter t and
/// area q. Route A sums substituted staircase slices over the base-row
/// width n; route B is a single quotient of alternating double sums in
/// q^4. Both are computed and compared on the full window.
pub fn d12_series(max_t: i64) -> Result<TSeries> {
    let mut acc = TSeries::zero(max_t + 1, None);
    let mut n = 1i64;
    while 2 * n <= max_t {
        let j_max = (max_t + 4 - 2 * n) / 4;
        let slices = ln_series(n, j_max)?;
        let substituted = slices.substitute(Mono::new(4, -2), Mono::q(4))?;
        let term = substituted.mul_mono(Mono::new(2 * n - 4, n * n - 4 * n + 2));
        acc = acc.add(&term);
        n += 1;
    }
    debug_assert_eq!(acc.trunc_t(), max_t + 1);

    let route_b = d12_quotient(max_t)?;
    acc.assert_equal_on_common_window(&route_b, "order-4 class route agreement")?;
    Ok(acc)
}

fn d12_quotient(max_t: i64) -> Result<TSeries> {
    let w = Window::new(max_t + 1, Some(max_t * max_t / 4 + 1));
    let trunc_q = w.trunc_q.unwrap();

    let mut num = w.zero();
    let mut m = 0i64;
    loop {
        // innermost n = 1 term; once it clears the window the whole m-row does
        if 4 * m + 2 >= w.trunc_t || 4 * m * m + 2 * m + 4 * m + 1 >= trunc_q {
            break;
        }
        let mut n = 1i64;
        loop {
            let t_exp = 4 * m + 2 * n;
            let q_exp = 4 * m * m + 2 * m + 4 * m * n + n * n;
            if t_exp >= w.trunc_t || q_exp >= trunc_q {
                break;
            }
            let mut term = w.mono(Mono {
                t: t_exp,
                q: q_exp,
                neg: m % 2 == 1,
            });
            for i in 1..=m {
                term = term.geometric_div(Mono::q(4 * i))?;
            }
            num = num.add(&term);
            n += 1;
        }
        m += 1;
    }

    let mut dsum = w.zero();
    let mut m = 0i64;
    while 4 * m + 4 < w.trunc_t && 4 * m * m + 10 * m + 6 < trunc_q {
        let mut term = w.mono(Mono {
            t: 4 * m,
            q: 4 * m * m + 10 * m,
            neg: m % 2 == 1,
        });
        for i in 1..=(m + 1) {
            term = term.geometric_div(Mono::q(4 * i))?;
        }
        dsum = dsum.add(&term);
        m += 1;
    }
    let den = TSeries::one(w.trunc_t, w.trunc_q).sub(&dsum.mul_mono(Mono::new(4, 6)));
    TSeries::div(&num, &den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn qcatalan_small_values() {
        let c = qcatalan(3);
        assert_eq!(c[0], QPoly::one());
        assert_eq!(c[1], QPoly::one());
        assert_eq!(c[2], QPoly::from_pairs(&[(0, 1), (1, 1)]));
        assert_eq!(c[3], QPoly::from_pairs(&[(0, 1), (1, 2), (2, 1), (3, 1)]));
    }

    #[test]
    fn dyck_routes_agree_and_match_known_coefficients() {
        let d = dyck_gf(12).unwrap();
        assert_eq!(d.coeff(1).unwrap(), QPoly::from_pairs(&[(1, 1)]));
        assert_eq!(d.coeff(2).unwrap(), QPoly::from_pairs(&[(3, 1)]));
        // y^3: q^5 c_2(q) = q^5 + q^6.
        assert_eq!(d.coeff(3).unwrap(), QPoly::from_pairs(&[(5, 1), (6, 1)]));
        // Each y-level counts Catalan-many objects in total.
        let catalan = [1i64, 1, 2, 5, 14, 42, 132];
        for (i, &c) in catalan.iter().enumerate() {
            let n = i as i64 + 1;
            assert_eq!(d.coeff(n).unwrap().eval_one(), BigInt::from(c), "y^{n}");
        }
    }

    #[test]
    fn diagonal_series_leading_terms() {
        let d1 = d1_series(8).unwrap();
        assert!(d1.coeff(3).unwrap().is_zero());
        assert_eq!(d1.coeff(2).unwrap(), QPoly::from_pairs(&[(1, 1)]));
        assert_eq!(d1.coeff(4).unwrap(), QPoly::from_pairs(&[(4, 1)]));
        assert_eq!(d1.coeff(6).unwrap(), QPoly::from_pairs(&[(7, 1), (9, 1)]));
        // q = 1 totals are central binomial Catalan-like counts: 1, 1, 2, 5.
        assert_eq!(d1.coeff(8).unwrap().eval_one(), BigInt::from(5u32));
    }

    /// y-adic iteration of the functional equation for staircase slices,
    /// tracking the width of the top row as u: L = u^n y q^n + y u^2 q^2
    /// Psi(L), where Psi maps u^k to sum_{i<k} (uq)^i. Returns the y^j
    /// coefficients at u = 1.
    fn slices_by_functional_equation(n: i64, y_max: i64) -> Vec<QPoly> {
        let mut rows: Vec<Vec<QPoly>> = Vec::new(); // rows[j-1][k] = coeff of y^j u^k
        let mut base = vec![QPoly::zero(); n as usize + 1];
        base[n as usize] = QPoly::monomial(n, BigInt::from(1u32));
        rows.push(base);
        for _ in 1..y_max {
            let prev = rows.last().unwrap();
            let mut next: Vec<QPoly> = vec![QPoly::zero(); prev.len() + 1];
            for (k, poly) in prev.iter().enumerate() {
                if poly.is_zero() {
                    continue;
                }
                for i in 0..k as i64 {
                    // u^2 q^2 * (uq)^i picks up u^{i+2} q^{i+2}
                    let mut contrib = poly.clone();
                    contrib.mul_monomial(i + 2, false);
                    next[(i + 2) as usize].add_assign(&contrib);
                }
            }
            rows.push(next);
        }
        rows.iter()
            .map(|row| {
                let mut at_one = QPoly::zero();
                for poly in row {
                    at_one.add_assign(poly);
                }
                at_one
            })
            .collect()
    }

    /// Direct enumeration of staircases with base width n: each later row
    /// has width between 2 and one more than its predecessor.
    fn slices_by_row_enumeration(n: i64, y_max: i64) -> Vec<QPoly> {
        fn extend(width: i64, area: i64, rows: i64, y_max: i64, out: &mut Vec<QPoly>) {
            out[(rows - 1) as usize].add_term(area, &BigInt::from(1u32));
            if rows == y_max {
                return;
            }
            for w in 2..=(width + 1) {
                extend(w, area + w, rows + 1, y_max, out);
            }
        }
        let mut out = vec![QPoly::zero(); y_max as usize];
        extend(n, n, 1, y_max, &mut out);
        out
    }

    #[test]
    fn slice_series_matches_independent_oracles() {
        for n in 1..=4 {
            let y_max = 5;
            let series = ln_series(n, y_max).unwrap();
            let by_equation = slices_by_functional_equation(n, y_max);
            let by_rows = slices_by_row_enumeration(n, y_max);
            for j in 1..=y_max {
                let got = series.coeff(j).unwrap();
                assert_eq!(got, by_equation[(j - 1) as usize], "n={n} j={j} (equation)");
                assert_eq!(got, by_rows[(j - 1) as usize], "n={n} j={j} (rows)");
            }
        }
    }

    #[test]
    fn slice_known_coefficient() {
        let l2 = ln_series(2, 3).unwrap();
        assert_eq!(l2.coeff(1).unwrap(), QPoly::from_pairs(&[(2, 1)]));
        assert_eq!(l2.coeff(2).unwrap(), QPoly::from_pairs(&[(4, 1), (5, 1)]));
    }

    #[test]
    fn doubly_symmetric_series_leading_terms() {
        let d12 = d12_series(10).unwrap();
        assert_eq!(d12.coeff(2).unwrap(), QPoly::from_pairs(&[(1, 1)]));
        assert!(d12.coeff(3).unwrap().is_zero());
        assert_eq!(d12.coeff(4).unwrap(), QPoly::from_pairs(&[(4, 1)]));
        assert_eq!(d12.coeff(6).unwrap(), QPoly::from_pairs(&[(7, 1), (9, 1)]));
        assert_eq!(
            d12.coeff(8).unwrap(),
            QPoly::from_pairs(&[(10, 1), (14, 1), (16, 1)])
        );
    }
}
