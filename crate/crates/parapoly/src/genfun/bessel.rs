//! Alternating q-Bessel-type sums and the column-transfer quotient built
//! from them.
//!
//! The generating function for parallelogram polyominoes is a ratio of two
//! alternating sums whose n-th terms carry the factor x^n q^{n(n+1)/2} and
//! the q-Pochhammer denominators (q;q)_n (yq;q)_n. Because those factors
//! grow in both the t- and q-direction, the sums terminate under any window
//! used here: term n is droppable as soon as its minimal t-exponent clears
//! the t-window or its minimal q-exponent clears the q-window, and both
//! bounds are monotone in n. For a pure q-window M the q-exponent bound
//! n(n+1)/2 gives n <= ceil((sqrt(8M+1)-1)/2), which is asserted on exit.

use crate::error::{Error, Result};
use crate::series::{Mono, TSeries};

/// Truncation window shared by a family of series computations: exclusive
/// t-bound plus optional exclusive q-bound.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub trunc_t: i64,
    pub trunc_q: Option<i64>,
}

impl Window {
    pub fn new(trunc_t: i64, trunc_q: Option<i64>) -> Self {
        Window { trunc_t, trunc_q }
    }

    pub fn zero(&self) -> TSeries {
        TSeries::zero(self.trunc_t, self.trunc_q)
    }

    pub fn mono(&self, m: Mono) -> TSeries {
        TSeries::from_mono(m, self.trunc_t, self.trunc_q)
    }
}

/// Which of the two alternating sums to build: the denominator sum (terms
/// from n = 0) or the numerator sum (terms from n = 1, one fewer Pochhammer
/// factor, and an extra divisor 1 - (vy) q^n carrying the last-column
/// variable).
#[derive(Clone, Copy, Debug)]
pub enum JKind {
    Denominator,
    Numerator { v_times_y: Mono },
}

/// Sum of (-1)^{n-s} x^n q^{n(n+1)/2} / ((q;q)_m (yq;q)_m [1 - vy q^n])
/// over the terms that can touch the window, where s is the starting index
/// and m the Pochhammer depth for the given kind. `x`, `y` must have
/// nonnegative exponents and `q` must be a positive pure q-power; the
/// last-column monomial may carry q-exponent -1 (its divisor still has
/// positive q-exponents since n >= 1).
pub fn j_series(kind: JKind, x: Mono, y: Mono, q: Mono, w: &Window) -> Result<TSeries> {
    if x.neg || y.neg || x.t < 0 || x.q < 0 || y.t < 0 || y.q < 0 {
        return Err(Error::BadOperation(
            "alternating sum needs nonnegative width/height substitutions".into(),
        ));
    }
    if q.neg || q.t != 0 || q.q < 1 {
        return Err(Error::BadOperation(
            "alternating sum needs a positive pure q-power for q".into(),
        ));
    }
    if x.t == 0 && w.trunc_q.is_none() {
        return Err(Error::BadOperation(
            "alternating sum with t-free x terminates only under a q-window".into(),
        ));
    }

    let start: i64 = match kind {
        JKind::Denominator => 0,
        JKind::Numerator { .. } => 1,
    };
    let mut sum = w.zero();
    let mut n = start;
    loop {
        let corner_t = n * x.t;
        let corner_q = n * x.q + (n * (n + 1) / 2) * q.q;
        let t_done = corner_t >= w.trunc_t;
        let q_done = w.trunc_q.map_or(false, |m| corner_q >= m);
        if t_done || q_done {
            break;
        }
        assert!(n <= 2_000, "alternating sum failed to terminate");
        let neg = (n - start) % 2 == 1;
        let mut term = w.mono(Mono {
            t: corner_t,
            q: corner_q,
            neg,
        });
        let depth = match kind {
            JKind::Denominator => n,
            JKind::Numerator { .. } => n - 1,
        };
        for i in 1..=depth {
            term = term.geometric_div(Mono::q(i * q.q))?;
            term = term.geometric_div(y.mul(Mono::q(i * q.q)))?;
        }
        if let JKind::Numerator { v_times_y } = kind {
            term = term.geometric_div(v_times_y.mul(Mono::q(n * q.q)))?;
        }
        sum = sum.add(&term);
        n += 1;
    }
    // Under a pure q-window the number of contributing terms obeys the
    // closed-form bound derived from n(n+1)/2 >= M.
    if x.t == 0 {
        if let Some(m) = w.trunc_q {
            let m = m.max(0) as f64;
            let bound = (((8.0 * m + 1.0).sqrt() - 1.0) / 2.0).ceil() as i64;
            assert!(n - start <= bound + 1, "term count exceeded its q-window bound");
        }
    }
    Ok(sum)
}

/// The master quotient: last-column variable v, width x, height y, area q,
/// assembled as vy * Numerator / Denominator. The last column is passed as
/// the product v*y since v never occurs alone.
pub fn par_gf(v_times_y: Mono, x: Mono, y: Mono, q: Mono, w: &Window) -> Result<TSeries> {
    let den = j_series(JKind::Denominator, x, y, q, w)?;
    let num = j_series(JKind::Numerator { v_times_y }, x, y, q, w)?;
    Ok(TSeries::div(&num, &den)?.mul_mono(v_times_y))
}
