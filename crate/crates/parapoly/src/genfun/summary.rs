//! Assembled per-class series for the two table modes.
//!
//! Half-perimeter mode keeps every class as an exact bivariate series
//! (t = half-perimeter, q = area), computed under a window wide enough
//! that each t-level is provably complete — the largest area at
//! half-perimeter h is floor(h^2/4) — and then promoted to exact.
//! Area mode reuses the same bivariate constructions, clips them to the
//! requested q-window and collapses t = 1; the collapse is sound because
//! a piece's half-perimeter never exceeds its area plus one. The plain
//! area totals are additionally recomputed natively with width and height
//! erased before the quotient, and the two must agree.

use num_bigint::BigInt;

use crate::bijection::catalan;
use crate::error::{Error, Result};
use crate::genfun::bessel::{par_gf, Window};
use crate::genfun::dyck::{d1_series, d12_series};
use crate::series::{Mono, QPoly, TSeries};

/// Exact series by half-perimeter (t) and area (q) for every symmetry
/// class, plus the derived orbit and asymmetric series.
pub struct PerimeterSeries {
    pub max_hp: i64,
    /// All pieces.
    pub p: TSeries,
    /// Fixed by the half-turn.
    pub r2: TSeries,
    /// Fixed by the main-diagonal reflection.
    pub d1: TSeries,
    /// Fixed by the antidiagonal reflection.
    pub d2: TSeries,
    /// Fixed by both diagonal reflections (hence by the whole group).
    pub d12: TSeries,
    /// Orbits under the full group, by Burnside averaging.
    pub orbits: TSeries,
    /// Pieces with trivial stabilizer, by Moebius inversion.
    pub asym: TSeries,
}

/// Area polynomials (coefficient of q^n = count at area n) for the same
/// seven quantities.
pub struct AreaSeries {
    pub max_area: i64,
    pub p: QPoly,
    pub r2: QPoly,
    pub d1: QPoly,
    pub d2: QPoly,
    pub d12: QPoly,
    pub orbits: QPoly,
    pub asym: QPoly,
}

/// Largest possible area of a piece with half-perimeter h.
fn area_bound(h: i64) -> i64 {
    h * h / 4
}

/// All pieces, bivariate, under the given window: last column, width and
/// height all marked by t, area by q.
fn p_bivariate(w: &Window) -> Result<TSeries> {
    par_gf(Mono::t(1), Mono::t(1), Mono::t(1), Mono::q(1), w)
}

/// Half-turn-fixed pieces, bivariate. A piece fixed by the half-turn is
/// determined by its first half; splitting on the parity of the width
/// gives two quotient expressions in doubled variables. Even width: the
/// cut falls between two columns, and the half carries an extra weight
/// for the last column's repetition, collected by a 1/(1-t) factor on a
/// difference of quotients. Odd width: the middle column is its own
/// mirror image, which shifts the last-column weight by t/q.
fn r2_bivariate(w: &Window) -> Result<TSeries> {
    let x = Mono::t(2);
    let y = Mono::t(2);
    let q = Mono::q(2);
    let even = {
        let with_last = par_gf(Mono::t(1), x, y, q, w)?;
        let without = par_gf(Mono::t(2), x, y, q, w)?;
        with_last.sub(&without).geometric_div(Mono::t(1))?
    };
    let odd = par_gf(Mono::new(1, -1), x, y, q, w)?.mul_mono(Mono::new(-1, 0));
    Ok(even.add(&odd))
}

/// Gate: the master quotient with area erased must reproduce the Catalan
/// numbers level by level.
fn check_catalan_specialization(p: &TSeries, max_hp: i64) -> Result<()> {
    for h in 2..=max_hp {
        let got = p.coeff(h)?.eval_one();
        let want = catalan(h - 1);
        if got != want {
            return Err(Error::CrossCheckFailed(format!(
                "Catalan specialization failed at half-perimeter {h}: {got} != {want}"
            )));
        }
    }
    Ok(())
}

/// Exact per-class series through half-perimeter `max_hp`.
pub fn perimeter_series(max_hp: i64) -> Result<PerimeterSeries> {
    assert!(max_hp >= 2, "half-perimeter series needs max_hp >= 2");
    let w = Window::new(max_hp + 1, Some(area_bound(max_hp) + 2));

    let p = p_bivariate(&w)?
        .clip_t(max_hp + 1)
        .promote_exact(area_bound, "piece series")?;
    check_catalan_specialization(&p, max_hp)?;

    let r2 = r2_bivariate(&w)?
        .clip_t(max_hp + 1)
        .promote_exact(area_bound, "half-turn series")?;
    let d1 = d1_series(max_hp)?;
    // Cutting along the antidiagonal and reflecting one half matches the
    // antidiagonal-fixed pieces with the half-turn-fixed pieces of the
    // same (even) half-perimeter and area.
    let d2 = r2.parity_part(0);
    let d12 = d12_series(max_hp)?;

    let sum = p.add(&r2).add(&d1).add(&d2);
    let orbits = sum.divide_scalar(&BigInt::from(4u32), "orbit series")?;
    let asym = p
        .sub(&r2)
        .sub(&d1)
        .sub(&d2)
        .add(&d12.scale(&BigInt::from(2u32)));
    asym.assert_nonnegative("asymmetric series")?;

    Ok(PerimeterSeries {
        max_hp,
        p,
        r2,
        d1,
        d2,
        d12,
        orbits,
        asym,
    })
}

/// Area polynomials through `max_area`, via the bivariate series collapsed
/// at t = 1, with the plain totals double-checked against the native
/// area-only quotient.
pub fn area_series(max_area: i64) -> Result<AreaSeries> {
    assert!(max_area >= 1, "area series needs max_area >= 1");
    let clip = max_area + 1;
    let w = Window::new(max_area + 2, Some(max_area + 2));

    let p_w = p_bivariate(&w)?;
    let p = p_w.clip_q(clip).collapse_at_t_one("piece area totals")?;

    let native = par_gf(
        Mono::one(),
        Mono::one(),
        Mono::one(),
        Mono::q(1),
        &Window::new(1, Some(clip)),
    )?
    .coeff(0)?;
    if native != p {
        return Err(Error::CrossCheckFailed(format!(
            "area totals disagree between the native and collapsed routes: {native} != {p}"
        )));
    }

    let r2_w = r2_bivariate(&w)?;
    let r2 = r2_w.clip_q(clip).collapse_at_t_one("half-turn area totals")?;
    let d2 = r2_w
        .parity_part(0)
        .clip_q(clip)
        .collapse_at_t_one("antidiagonal area totals")?;
    let d1 = d1_series(max_area + 1)?
        .clip_q(clip)
        .collapse_at_t_one("diagonal area totals")?;
    let d12 = d12_series(max_area + 1)?
        .clip_q(clip)
        .collapse_at_t_one("doubly symmetric area totals")?;

    let mut sum = p.clone();
    sum.add_assign(&r2);
    sum.add_assign(&d1);
    sum.add_assign(&d2);
    let four = BigInt::from(4u32);
    if !sum.divisible_by(&four) {
        return Err(Error::NonIntegral(format!(
            "orbit area totals are not divisible by 4: {sum}"
        )));
    }
    let mut orbits = sum;
    orbits.divide_scalar(&four);

    let mut asym = p.clone();
    asym.sub_assign(&r2);
    asym.sub_assign(&d1);
    asym.sub_assign(&d2);
    let mut twice = d12.clone();
    twice.scale(&BigInt::from(2u32));
    asym.add_assign(&twice);
    if !asym.is_nonnegative() {
        return Err(Error::NegativeCount(format!(
            "asymmetric area totals went negative: {asym}"
        )));
    }

    Ok(AreaSeries {
        max_area,
        p,
        r2,
        d1,
        d2,
        d12,
        orbits,
        asym,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(pairs: &[(i64, i64)]) -> QPoly {
        QPoly::from_pairs(pairs)
    }

    #[test]
    fn perimeter_series_small_levels() {
        let s = perimeter_series(6).unwrap();
        assert_eq!(s.p.coeff(4).unwrap(), q(&[(4, 1), (3, 4)]));
        assert_eq!(s.p.coeff(6).unwrap(), q(&[(9, 1), (8, 4), (7, 9), (6, 12), (5, 16)]));
        // Half-turn-fixed: r_2..r_6.
        assert_eq!(s.r2.coeff(2).unwrap(), q(&[(1, 1)]));
        assert_eq!(s.r2.coeff(3).unwrap(), q(&[(2, 2)]));
        assert_eq!(s.r2.coeff(4).unwrap(), q(&[(4, 1), (3, 2)]));
        assert_eq!(s.r2.coeff(5).unwrap(), q(&[(6, 2), (4, 4)]));
        assert_eq!(s.r2.coeff(6).unwrap(), q(&[(9, 1), (8, 2), (7, 1), (6, 2), (5, 4)]));
        // Antidiagonal-fixed matches the even-half-perimeter half-turn data.
        assert_eq!(s.d2.coeff(4).unwrap(), s.r2.coeff(4).unwrap());
        assert!(s.d2.coeff(5).unwrap().is_zero());
        // Orbit levels.
        assert_eq!(s.orbits.coeff(4).unwrap(), q(&[(4, 1), (3, 2)]));
        assert_eq!(s.orbits.coeff(5).unwrap(), q(&[(6, 1), (5, 1), (4, 3)]));
        assert_eq!(
            s.orbits.coeff(6).unwrap(),
            q(&[(9, 1), (8, 2), (7, 3), (6, 4), (5, 6)])
        );
        // Asymmetric levels.
        assert!(s.asym.coeff(4).unwrap().is_zero());
        assert_eq!(s.asym.coeff(5).unwrap(), q(&[(5, 4), (4, 4)]));
        assert_eq!(s.asym.coeff(6).unwrap(), q(&[(7, 8), (6, 8), (5, 8)]));
    }

    #[test]
    fn area_series_small_coefficients() {
        let s = area_series(8).unwrap();
        let totals = [1i64, 2, 4, 9, 20, 46, 105, 242];
        for (i, &c) in totals.iter().enumerate() {
            assert_eq!(s.p.coeff(i as i64 + 1), BigInt::from(c), "area {}", i + 1);
        }
        let r2 = [1i64, 2, 2, 5, 4, 12, 9, 28];
        for (i, &c) in r2.iter().enumerate() {
            assert_eq!(s.r2.coeff(i as i64 + 1), BigInt::from(c), "area {}", i + 1);
        }
        let d1 = [1i64, 0, 0, 1, 0, 0, 1, 0];
        for (i, &c) in d1.iter().enumerate() {
            assert_eq!(s.d1.coeff(i as i64 + 1), BigInt::from(c), "area {}", i + 1);
        }
        let d2 = [1i64, 0, 2, 1, 4, 2, 9, 6];
        for (i, &c) in d2.iter().enumerate() {
            assert_eq!(s.d2.coeff(i as i64 + 1), BigInt::from(c), "area {}", i + 1);
        }
        let orbits = [1i64, 1, 2, 4, 7, 15, 31, 69];
        for (i, &c) in orbits.iter().enumerate() {
            assert_eq!(s.orbits.coeff(i as i64 + 1), BigInt::from(c), "area {}", i + 1);
        }
        let asym = [0i64, 0, 0, 4, 12, 32, 88, 208];
        for (i, &c) in asym.iter().enumerate() {
            assert_eq!(s.asym.coeff(i as i64 + 1), BigInt::from(c), "area {}", i + 1);
        }
    }
}
