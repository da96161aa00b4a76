//! Truncated bivariate series: power series in `t` whose coefficients are
//! Laurent polynomials in `q`.
//!
//! A `TSeries` represents a series known exactly for all t-exponents below
//! `trunc_t` (exclusive). Orthogonally, `trunc_q = Some(w)` means every
//! stored q-coefficient is only known for q-exponents below `w`; `None`
//! means the q-data is exact. Every operation computes the widest window on
//! which its result is provably complete, so a coefficient read inside the
//! window is always a true coefficient of the underlying series, never an
//! artifact of truncation.
//!
//! Structural invariants: `t_min + coeffs.len() == trunc_t`, and either
//! `coeffs` is empty (the series is zero on the whole window and
//! `t_min == trunc_t`) or `coeffs[0]` is nonzero, making `t_min` the exact
//! minimal t-exponent of the stored data.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::qpoly::QPoly;

/// A signed monomial `(+|-) t^t q^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mono {
    pub t: i64,
    pub q: i64,
    pub neg: bool,
}

impl Mono {
    pub fn new(t: i64, q: i64) -> Self {
        Mono { t, q, neg: false }
    }

    pub fn t(e: i64) -> Self {
        Mono::new(e, 0)
    }

    pub fn q(e: i64) -> Self {
        Mono::new(0, e)
    }

    pub fn one() -> Self {
        Mono::new(0, 0)
    }

    pub fn negated(mut self) -> Self {
        self.neg = !self.neg;
        self
    }

    pub fn pow(self, k: i64) -> Self {
        assert!(k >= 0, "monomial powers must be nonnegative");
        Mono {
            t: self.t * k,
            q: self.q * k,
            neg: self.neg && k % 2 == 1,
        }
    }

    pub fn mul(self, other: Mono) -> Self {
        Mono {
            t: self.t + other.t,
            q: self.q + other.q,
            neg: self.neg != other.neg,
        }
    }
}

/// Minimum of two exclusive windows where `None` means unbounded.
fn min_window(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

/// `window + offset`, with `None` staying unbounded.
fn shift_window(w: Option<i64>, offset: Option<i64>) -> Option<i64> {
    match (w, offset) {
        (Some(w), Some(o)) => Some(w + o),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    t_min: i64,
    coeffs: Vec<QPoly>,
    trunc_t: i64,
    trunc_q: Option<i64>,
}

impl TSeries {
    // ----- construction -----

    pub fn zero(trunc_t: i64, trunc_q: Option<i64>) -> Self {
        TSeries {
            t_min: trunc_t,
            coeffs: Vec::new(),
            trunc_t,
            trunc_q,
        }
    }

    pub fn one(trunc_t: i64, trunc_q: Option<i64>) -> Self {
        TSeries::from_mono(Mono::one(), trunc_t, trunc_q)
    }

    pub fn from_mono(m: Mono, trunc_t: i64, trunc_q: Option<i64>) -> Self {
        let outside_t = m.t >= trunc_t;
        let outside_q = trunc_q.map_or(false, |w| m.q >= w);
        if outside_t || outside_q {
            return TSeries::zero(trunc_t, trunc_q);
        }
        let coeff = QPoly::monomial(m.q, if m.neg { BigInt::from(-1) } else { BigInt::from(1) });
        TSeries::from_qpoly_at(m.t, coeff, trunc_t, trunc_q)
    }

    /// `p * t^t_exp` viewed inside the given windows.
    pub fn from_qpoly_at(t_exp: i64, mut p: QPoly, trunc_t: i64, trunc_q: Option<i64>) -> Self {
        if t_exp >= trunc_t {
            return TSeries::zero(trunc_t, trunc_q);
        }
        if let Some(w) = trunc_q {
            p.truncate_at(w);
        }
        if p.is_zero() {
            return TSeries::zero(trunc_t, trunc_q);
        }
        let len = (trunc_t - t_exp) as usize;
        let mut coeffs = vec![QPoly::zero(); len];
        coeffs[0] = p;
        TSeries {
            t_min: t_exp,
            coeffs,
            trunc_t,
            trunc_q,
        }
    }

    // ----- accessors -----

    pub fn trunc_t(&self) -> i64 {
        self.trunc_t
    }

    pub fn trunc_q(&self) -> Option<i64> {
        self.trunc_q
    }

    /// Exact minimal t-exponent of the content when nonzero; `trunc_t` when
    /// the series is zero on the window. In both cases a valid lower bound
    /// on the t-support of the underlying series.
    pub fn t_min_eff(&self) -> i64 {
        self.t_min
    }

    pub fn is_zero_in_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn level_ref(&self, t: i64) -> Option<&QPoly> {
        if t < self.t_min || t >= self.trunc_t {
            return None;
        }
        self.coeffs.get((t - self.t_min) as usize)
    }

    /// Coefficient of `t^t`; an error if `t` lies outside the window.
    pub fn coeff(&self, t: i64) -> Result<QPoly> {
        if t >= self.trunc_t {
            return Err(Error::OutsideTruncation {
                requested: t,
                trunc_t: self.trunc_t,
            });
        }
        Ok(self.level_ref(t).cloned().unwrap_or_else(QPoly::zero))
    }

    /// Iterate stored nonzero t-levels as `(t_exponent, coefficient)`.
    pub fn levels(&self) -> impl Iterator<Item = (i64, &QPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(i, p)| (self.t_min + i as i64, p))
    }

    /// Lower bound on the q-exponent support of the underlying series:
    /// the minimum stored q-exponent, or the q-window when nothing is stored
    /// (everything missing lies at or above it), or `None` for "+infinity"
    /// (exactly zero).
    fn q_min_lb(&self) -> Option<i64> {
        let stored = self.coeffs.iter().filter_map(|p| p.min_exp()).min();
        match stored {
            Some(m) => Some(m),
            None => self.trunc_q,
        }
    }

    /// Smallest stored q-exponent, if any level is nonzero.
    pub fn min_stored_q(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|p| p.min_exp()).min()
    }

    /// True when every stored q-exponent is >= 0.
    fn q_exps_nonnegative(&self) -> bool {
        self.min_stored_q().map_or(true, |m| m >= 0)
    }

    // ----- normalization -----

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|p| p.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.t_min += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.t_min = self.trunc_t;
        }
        debug_assert_eq!(self.t_min + self.coeffs.len() as i64, self.trunc_t);
    }

    // ----- ring operations -----

    pub fn add(&self, other: &TSeries) -> TSeries {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.combine(other, true)
    }

    fn combine(&self, other: &TSeries, subtract: bool) -> TSeries {
        let trunc_t = self.trunc_t.min(other.trunc_t);
        let trunc_q = min_window(self.trunc_q, other.trunc_q);
        let t_min = self.t_min.min(other.t_min).min(trunc_t);
        let len = (trunc_t - t_min) as usize;
        let mut coeffs = vec![QPoly::zero(); len];
        for (t, p) in self.levels() {
            if t < trunc_t {
                coeffs[(t - t_min) as usize].add_assign(p);
            }
        }
        for (t, p) in other.levels() {
            if t < trunc_t {
                let slot = &mut coeffs[(t - t_min) as usize];
                if subtract {
                    slot.sub_assign(p);
                } else {
                    slot.add_assign(p);
                }
            }
        }
        if let Some(w) = trunc_q {
            for p in &mut coeffs {
                p.truncate_at(w);
            }
        }
        let mut out = TSeries {
            t_min,
            coeffs,
            trunc_t,
            trunc_q,
        };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let trunc_t = (self.trunc_t + other.t_min_eff()).min(other.trunc_t + self.t_min_eff());
        let trunc_q = min_window(
            shift_window(self.trunc_q, other.q_min_lb()),
            shift_window(other.trunc_q, self.q_min_lb()),
        );
        let t_min = (self.t_min_eff() + other.t_min_eff()).min(trunc_t);
        let len = (trunc_t - t_min).max(0) as usize;
        let mut coeffs = vec![QPoly::zero(); len];
        for (ta, pa) in self.levels() {
            for (tb, pb) in other.levels() {
                let t = ta + tb;
                if t < trunc_t {
                    let prod = pa.mul_trunc(pb, trunc_q);
                    coeffs[(t - t_min) as usize].add_assign(&prod);
                }
            }
        }
        let mut out = TSeries {
            t_min: t_min.min(trunc_t),
            coeffs,
            trunc_t,
            trunc_q,
        };
        out.normalize();
        out
    }

    /// Multiply by a signed monomial, shifting both windows along with it.
    pub fn mul_mono(&self, m: Mono) -> TSeries {
        let mut coeffs = self.coeffs.clone();
        for p in &mut coeffs {
            p.mul_monomial(m.q, m.neg);
        }
        TSeries {
            t_min: self.t_min + m.t,
            coeffs,
            trunc_t: self.trunc_t + m.t,
            trunc_q: self.trunc_q.map(|w| w + m.q),
        }
    }

    /// Scale every coefficient by an integer.
    pub fn scale(&self, k: &BigInt) -> TSeries {
        let mut out = self.clone();
        for p in &mut out.coeffs {
            p.scale(k);
        }
        out.normalize();
        out
    }

    // ----- window management -----

    /// Shrink the t-window (no-op if already at most `new_trunc_t`).
    pub fn clip_t(&self, new_trunc_t: i64) -> TSeries {
        if new_trunc_t >= self.trunc_t {
            return self.clone();
        }
        let keep = ((new_trunc_t - self.t_min).max(0) as usize).min(self.coeffs.len());
        let mut out = TSeries {
            t_min: self.t_min.min(new_trunc_t),
            coeffs: self.coeffs[..keep].to_vec(),
            trunc_t: new_trunc_t,
            trunc_q: self.trunc_q,
        };
        out.t_min = if keep == 0 { new_trunc_t } else { self.t_min };
        out.normalize();
        out
    }

    /// Shrink the q-window (no-op if already at most `new_trunc_q`).
    pub fn clip_q(&self, new_trunc_q: i64) -> TSeries {
        if self.trunc_q.map_or(false, |w| w <= new_trunc_q) {
            return self.clone();
        }
        let mut out = self.clone();
        for p in &mut out.coeffs {
            p.truncate_at(new_trunc_q);
        }
        out.trunc_q = Some(new_trunc_q);
        out.normalize();
        out
    }

    /// Declare the q-data exact after verifying it against a proven degree
    /// bound: `bound(t)` must be an upper bound on the q-degree of the true
    /// t^t coefficient. Fails if the window cannot certify the bound, or if
    /// stored data exceeds the bound (which would falsify the bound itself).
    pub fn promote_exact(&self, bound: impl Fn(i64) -> i64, what: &str) -> Result<TSeries> {
        let w = match self.trunc_q {
            Some(w) => w,
            None => return Ok(self.clone()),
        };
        for t in self.t_min..self.trunc_t {
            let b = bound(t);
            if b >= w {
                return Err(Error::TruncationInsufficient {
                    required: b + 1,
                    available: w,
                    what: format!("{what} (t-level {t})"),
                });
            }
            if let Some(p) = self.level_ref(t) {
                if let Some(m) = p.max_exp() {
                    if m > b {
                        return Err(Error::CrossCheckFailed(format!(
                            "{what}: stored q-degree {m} at t-level {t} exceeds proven bound {b}"
                        )));
                    }
                }
            }
        }
        let mut out = self.clone();
        out.trunc_q = None;
        Ok(out)
    }

    // ----- division -----

    /// Divide by `1 - m` (a geometric-series multiplication). Sound when the
    /// monomial strictly raises t-degree, or raises q-degree with a finite
    /// q-window to terminate against. A q-windowed series additionally
    /// requires `m.q >= 0`, otherwise completeness below the window is lost.
    pub fn geometric_div(&self, m: Mono) -> Result<TSeries> {
        let t_ok = m.t >= 1;
        let q_ok = m.t == 0 && m.q >= 1 && self.trunc_q.is_some();
        if !t_ok && !q_ok {
            return Err(Error::BadOperation(format!(
                "geometric divisor 1 - (t^{} q^{}) needs t-degree >= 1, or pure positive q-degree under a q-window",
                m.t, m.q
            )));
        }
        if self.trunc_q.is_some() && m.q < 0 {
            return Err(Error::BadOperation(
                "geometric divisor with negative q-shift under a q-window".into(),
            ));
        }
        let mut out = self.clone();
        if m.t >= 1 {
            let len = out.coeffs.len();
            for i in 0..len {
                let j = i + m.t as usize;
                if j >= len || out.coeffs[i].is_zero() {
                    continue;
                }
                let mut add = out.coeffs[i].clone();
                add.mul_monomial(m.q, m.neg);
                if let Some(w) = out.trunc_q {
                    add.truncate_at(w);
                }
                out.coeffs[j].add_assign(&add);
            }
        } else {
            let w = out.trunc_q.unwrap();
            for p in &mut out.coeffs {
                Self::geometric_div_level(p, m.q, m.neg, w);
            }
        }
        out.normalize();
        Ok(out)
    }

    /// In-place forward propagation of `p / (1 - (+|-) q^dq)` below window `w`.
    fn geometric_div_level(p: &mut QPoly, dq: i64, neg: bool, w: i64) {
        if p.is_zero() {
            return;
        }
        let lo = p.min_exp().unwrap();
        if lo >= w {
            p.truncate_at(w);
            return;
        }
        let len = (w - lo) as usize;
        let mut dense: Vec<BigInt> = vec![BigInt::zero(); len];
        for (e, c) in p.iter() {
            if e < w {
                dense[(e - lo) as usize] = c.clone();
            }
        }
        for i in 0..len {
            let j = i + dq as usize;
            if j >= len || dense[i].is_zero() {
                continue;
            }
            let add = if neg { -&dense[i] } else { dense[i].clone() };
            dense[j] += add;
        }
        let mut out = QPoly::zero();
        for (i, c) in dense.into_iter().enumerate() {
            out.add_term(lo + i as i64, &c);
        }
        *p = out;
    }

    /// Long division `num / den`, proceeding t-level by t-level.
    ///
    /// The divisor's lowest t-level must be invertible as a q-series: either
    /// a single monomial with coefficient +1 or -1 (always fine for q-exact
    /// operands), or — under a finite q-window — any q-series whose minimal
    /// term is the constant 1, which is divided out q-adically within each
    /// level. When either operand is q-windowed, both operands must have
    /// all stored q-exponents >= 0 and the divisor's minimal term must be
    /// exactly 1, so the quotient stays complete below the smaller window.
    pub fn div(num: &TSeries, den: &TSeries) -> Result<TSeries> {
        let mut den = den.clone();
        den.normalize();
        if den.is_zero_in_window() {
            return Err(Error::BadOperation(
                "division by a series that is zero on its whole window".into(),
            ));
        }
        let dm = den.t_min;
        let d0 = den.coeffs[0].clone();
        let trunc_q = min_window(num.trunc_q, den.trunc_q);
        let windowed = num.trunc_q.is_some() || den.trunc_q.is_some();

        let lead = d0.as_unit_monomial();
        match lead {
            Some((e0, dneg)) => {
                if windowed && (e0 != 0 || dneg) {
                    return Err(Error::BadOperation(
                        "q-windowed division needs a divisor with leading coefficient exactly 1"
                            .into(),
                    ));
                }
            }
            None => {
                // leading level is a genuine q-series: it must start with
                // the constant 1 and be inverted under a finite window.
                if trunc_q.is_none() {
                    return Err(Error::NonUnitLeading {
                        found: d0.to_string(),
                    });
                }
                if d0.min_exp() != Some(0) || !d0.coeff(0).is_one() {
                    return Err(Error::NonUnitLeading {
                        found: d0.to_string(),
                    });
                }
            }
        }
        if windowed && (!num.q_exps_nonnegative() || !den.q_exps_nonnegative()) {
            return Err(Error::BadOperation(
                "q-windowed division needs nonnegative q-exponents in both operands".into(),
            ));
        }

        let trunc_t = (num.trunc_t).min(den.trunc_t + num.t_min_eff() - dm) - dm;
        let out_t_min = num.t_min_eff() - dm;
        if trunc_t <= out_t_min {
            return Ok(TSeries::zero(trunc_t, trunc_q));
        }
        let out_len = (trunc_t - out_t_min) as usize;

        // Remainder levels, indexed from num.t_min; only indices < out_len
        // are ever read, and num.t_min + k corresponds to quotient level
        // out_t_min + k.
        let mut rem: Vec<QPoly> = (0..out_len)
            .map(|k| {
                num.level_ref(num.t_min + k as i64)
                    .cloned()
                    .unwrap_or_else(QPoly::zero)
            })
            .collect();
        let den_levels: Vec<(usize, &QPoly)> = den
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, p)| !p.is_zero())
            .collect();

        let mut out_coeffs = vec![QPoly::zero(); out_len];
        for k in 0..out_len {
            if rem[k].is_zero() {
                continue;
            }
            let mut qk = match lead {
                Some((e0, dneg)) => {
                    let mut qk = rem[k].clone();
                    qk.mul_monomial(-e0, dneg);
                    qk
                }
                None => Self::qseries_div_level(&rem[k], &d0, trunc_q.unwrap()),
            };
            if let Some(w) = trunc_q {
                qk.truncate_at(w);
            }
            for &(j, dp) in &den_levels {
                let idx = k + j;
                if idx >= out_len {
                    break;
                }
                let sub = qk.mul_trunc(dp, trunc_q);
                rem[idx].sub_assign(&sub);
            }
            out_coeffs[k] = qk;
        }

        let mut out = TSeries {
            t_min: out_t_min,
            coeffs: out_coeffs,
            trunc_t,
            trunc_q,
        };
        out.normalize();
        Ok(out)
    }

    /// q-adic division of one level by a q-series with constant minimal
    /// term 1 and nonnegative exponents, complete below `w`.
    fn qseries_div_level(num: &QPoly, den: &QPoly, w: i64) -> QPoly {
        debug_assert_eq!(den.min_exp(), Some(0));
        if w <= 0 || num.is_zero() {
            return QPoly::zero();
        }
        let len = w as usize;
        let mut dense: Vec<BigInt> = vec![BigInt::zero(); len];
        for (e, c) in num.iter() {
            debug_assert!(e >= 0);
            if e < w {
                dense[e as usize] = c.clone();
            }
        }
        for e in 0..len {
            if dense[e].is_zero() {
                continue;
            }
            for (d, c) in den.iter() {
                if d == 0 {
                    continue;
                }
                let idx = e + d as usize;
                if idx >= len {
                    break;
                }
                let sub = &dense[e] * c;
                dense[idx] -= sub;
            }
        }
        let mut out = QPoly::zero();
        for (e, c) in dense.into_iter().enumerate() {
            out.add_term(e as i64, &c);
        }
        out
    }

    /// Multiplicative inverse, i.e. `1 / self`.
    pub fn invert(&self) -> Result<TSeries> {
        let one = TSeries::one(self.trunc_t, self.trunc_q);
        TSeries::div(&one, self)
    }

    // ----- substitution -----

    /// Monomial substitution `t -> t_image`, `q -> q_image`, where `t_image`
    /// must raise t-degree (`t_image.t >= 1`, any q-part) and `q_image` must
    /// be a pure positive power of q. The input must be exact in q so that
    /// every image term is known; the result is again exact in q, complete
    /// below `t_image.t * trunc_t`.
    pub fn substitute(&self, t_image: Mono, q_image: Mono) -> Result<TSeries> {
        if self.trunc_q.is_some() {
            return Err(Error::BadOperation(
                "substitution requires a q-exact series".into(),
            ));
        }
        if t_image.t < 1 || t_image.neg {
            return Err(Error::BadOperation(
                "substitution image of t must be a positive monomial with t-degree >= 1".into(),
            ));
        }
        if q_image.t != 0 || q_image.q < 1 || q_image.neg {
            return Err(Error::BadOperation(
                "substitution image of q must be a positive pure power of q".into(),
            ));
        }
        let trunc_t = t_image.t * self.trunc_t;
        let t_min = t_image.t * self.t_min_eff();
        let mut out = TSeries::zero(trunc_t, None);
        out.t_min = t_min.min(trunc_t);
        out.coeffs = vec![QPoly::zero(); (trunc_t - out.t_min) as usize];
        for (t, p) in self.levels() {
            let nt = t_image.t * t;
            if nt >= trunc_t {
                continue;
            }
            let slot = &mut out.coeffs[(nt - out.t_min) as usize];
            for (e, c) in p.iter() {
                slot.add_term(t_image.q * t + q_image.q * e, c);
            }
        }
        out.normalize();
        Ok(out)
    }

    // ----- specializations -----

    /// Sum all t-levels into a single polynomial in q (the value at t = 1),
    /// for series whose support is known to satisfy `t_exp <= q_exp + 1`.
    /// That slope (verified on every stored term) guarantees the t-levels
    /// outside the t-window only carry q-exponents at or above the q-window,
    /// which must therefore be finite with `trunc_t >= trunc_q + 1`.
    pub fn collapse_at_t_one(&self, what: &str) -> Result<QPoly> {
        let w = self.trunc_q.ok_or_else(|| {
            Error::BadOperation(format!("{what}: collapse at t=1 needs a finite q-window"))
        })?;
        if self.trunc_t < w + 1 {
            return Err(Error::TruncationInsufficient {
                required: w + 1,
                available: self.trunc_t,
                what: format!("{what}: t-window for collapse at t=1"),
            });
        }
        let mut sum = QPoly::zero();
        for (t, p) in self.levels() {
            for (e, c) in p.iter() {
                if t > e + 1 {
                    return Err(Error::CrossCheckFailed(format!(
                        "{what}: term t^{t} q^{e} violates the support slope t <= q + 1"
                    )));
                }
                sum.add_term(e, c);
            }
        }
        sum.truncate_at(w);
        Ok(sum)
    }

    /// Evaluate q = 1 levelwise, yielding pairs `(t_exponent, count)`.
    /// Requires q-exact data.
    pub fn eval_q_one(&self) -> Result<Vec<(i64, BigInt)>> {
        if self.trunc_q.is_some() {
            return Err(Error::BadOperation(
                "evaluation at q = 1 requires a q-exact series".into(),
            ));
        }
        Ok(self.levels().map(|(t, p)| (t, p.eval_one())).collect())
    }

    /// Keep only t-levels of the given parity (0 = even, 1 = odd).
    pub fn parity_part(&self, parity: i64) -> TSeries {
        let mut out = self.clone();
        for (i, p) in out.coeffs.iter_mut().enumerate() {
            if (out.t_min + i as i64).rem_euclid(2) != parity {
                *p = QPoly::zero();
            }
        }
        out.normalize();
        out
    }

    /// Divide every coefficient by the integer `k`, failing when any
    /// coefficient is not divisible.
    pub fn divide_scalar(&self, k: &BigInt, what: &str) -> Result<TSeries> {
        let mut out = self.clone();
        for (i, p) in out.coeffs.iter_mut().enumerate() {
            if !p.divisible_by(k) {
                return Err(Error::NonIntegral(format!(
                    "{what}: t-level {} not divisible by {k}",
                    self.t_min + i as i64
                )));
            }
            p.divide_scalar(k);
        }
        Ok(out)
    }

    /// Check coefficientwise nonnegativity.
    pub fn assert_nonnegative(&self, what: &str) -> Result<()> {
        for (t, p) in self.levels() {
            if !p.is_nonnegative() {
                return Err(Error::NegativeCount(format!(
                    "{what}: t-level {t} has a negative coefficient in {p}"
                )));
            }
        }
        Ok(())
    }

    /// Compare two series on the intersection of their windows, reporting
    /// the first differing t-level on mismatch.
    pub fn assert_equal_on_common_window(&self, other: &TSeries, what: &str) -> Result<()> {
        let trunc_t = self.trunc_t.min(other.trunc_t);
        let a = match min_window(self.trunc_q, other.trunc_q) {
            Some(w) => (self.clip_t(trunc_t).clip_q(w), other.clip_t(trunc_t).clip_q(w)),
            None => (self.clip_t(trunc_t), other.clip_t(trunc_t)),
        };
        let (lhs, rhs) = a;
        let lo = lhs.t_min.min(rhs.t_min);
        for t in lo..trunc_t {
            let l = lhs.level_ref(t).cloned().unwrap_or_else(QPoly::zero);
            let r = rhs.level_ref(t).cloned().unwrap_or_else(QPoly::zero);
            if l != r {
                return Err(Error::CrossCheckFailed(format!(
                    "{what}: coefficient of t^{t} differs: {l} vs {r}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(m: Mono, trunc_t: i64, trunc_q: Option<i64>) -> TSeries {
        TSeries::one(trunc_t, trunc_q).geometric_div(m).unwrap()
    }

    #[test]
    fn geometric_inverse_of_one_minus_t() {
        let s = geom(Mono::t(1), 5, None);
        for t in 0..5 {
            assert_eq!(s.coeff(t).unwrap(), QPoly::one(), "t-level {t}");
        }
        assert!(matches!(
            s.coeff(5),
            Err(Error::OutsideTruncation { requested: 5, trunc_t: 5 })
        ));
    }

    #[test]
    fn geometric_inverse_of_one_minus_t_q_squared() {
        let s = geom(Mono::new(1, 2), 4, None);
        for t in 0..4 {
            assert_eq!(s.coeff(t).unwrap(), QPoly::from_pairs(&[(2 * t, 1)]));
        }
    }

    #[test]
    fn geometric_inverse_in_pure_q_needs_window() {
        assert!(TSeries::one(3, None).geometric_div(Mono::q(1)).is_err());
        let s = geom(Mono::q(1), 1, Some(6));
        let p = s.coeff(0).unwrap();
        assert_eq!(p, QPoly::from_pairs(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]));
    }

    #[test]
    fn product_against_divisor_recovers_one() {
        let inv = geom(Mono::t(1), 6, None);
        let one_minus_t = TSeries::one(6, None).sub(&TSeries::from_mono(Mono::t(1), 6, None));
        let prod = inv.mul(&one_minus_t);
        prod.assert_equal_on_common_window(&TSeries::one(6, None), "geometric round trip")
            .unwrap();
    }

    #[test]
    fn multiplication_window_accounts_for_low_degrees() {
        // a complete below t^10 with t_min 3; b complete below t^4 with t_min 2:
        // the product is complete below min(10 + 2, 4 + 3) = 7.
        let a = TSeries::from_mono(Mono::t(3), 10, None)
            .geometric_div(Mono::t(1))
            .unwrap();
        let b = TSeries::from_mono(Mono::t(2), 4, None);
        let prod = a.mul(&b);
        assert_eq!(prod.trunc_t(), 7);
        assert_eq!(prod.t_min_eff(), 5);
        for t in 5..7 {
            assert_eq!(prod.coeff(t).unwrap(), QPoly::one());
        }
    }

    #[test]
    fn long_division_round_trip() {
        // num = (1 - t q)(1 + t + t^2 + ...) reconstructed by division.
        let den = TSeries::one(8, None).sub(&TSeries::from_mono(Mono::new(1, 1), 8, None));
        let num = TSeries::one(8, None);
        let q = TSeries::div(&num, &den).unwrap();
        for t in 0..8 {
            assert_eq!(q.coeff(t).unwrap(), QPoly::from_pairs(&[(t, 1)]));
        }
        let back = q.mul(&den);
        back.assert_equal_on_common_window(&num, "division round trip")
            .unwrap();
    }

    #[test]
    fn long_division_rejects_non_unit_leading() {
        let den = TSeries::from_qpoly_at(0, QPoly::from_pairs(&[(0, 2)]), 4, None);
        assert!(matches!(
            TSeries::div(&TSeries::one(4, None), &den),
            Err(Error::NonUnitLeading { .. })
        ));
    }

    #[test]
    fn long_division_with_shifted_unit_leading() {
        // den = t^2 q^3 (1 - t): quotient of num = t^3 q^3 is t (1 + t + ...).
        let den = TSeries::from_mono(Mono::new(2, 3), 9, None)
            .sub(&TSeries::from_mono(Mono::new(3, 3), 9, None));
        let num = TSeries::from_mono(Mono::new(3, 3), 9, None);
        let q = TSeries::div(&num, &den).unwrap();
        assert_eq!(q.t_min_eff(), 1);
        for t in 1..q.trunc_t() {
            assert_eq!(q.coeff(t).unwrap(), QPoly::one(), "level {t}");
        }
    }

    #[test]
    fn substitution_squares_t_and_tracks_q_shift() {
        // s = 1 + t + t^2 + ... ; t -> t^2 q^-1, q -> q^2 gives levels t^{2i} q^{-i}.
        let s = geom(Mono::t(1), 5, None);
        let out = s.substitute(Mono::new(2, -1), Mono::q(2)).unwrap();
        assert_eq!(out.trunc_t(), 10);
        for i in 0..5 {
            assert_eq!(out.coeff(2 * i).unwrap(), QPoly::from_pairs(&[(-i, 1)]));
            if i > 0 {
                assert!(out.coeff(2 * i - 1).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn substitution_preconditions_are_enforced() {
        let s = geom(Mono::t(1), 5, None);
        assert!(s.substitute(Mono::q(1), Mono::q(2)).is_err());
        assert!(s.substitute(Mono::t(2), Mono::new(1, 1)).is_err());
        let windowed = geom(Mono::t(1), 5, Some(4));
        assert!(windowed.substitute(Mono::t(2), Mono::q(1)).is_err());
    }

    #[test]
    fn promotion_checks_bounds() {
        // levels t^k q^{2k} under a q-window of 9, bound 2t: promotable below t^4.
        let s = geom(Mono::new(1, 2), 4, Some(9));
        let exact = s.promote_exact(|t| 2 * t, "test series").unwrap();
        assert_eq!(exact.trunc_q(), None);
        // with a window too small for the bound at the top level, it fails.
        let tight = geom(Mono::new(1, 2), 4, Some(6));
        assert!(matches!(
            tight.promote_exact(|t| 2 * t, "test series"),
            Err(Error::TruncationInsufficient { .. })
        ));
    }

    #[test]
    fn collapse_sums_levels_and_checks_slope() {
        // t^2 q + t^3 q^2: collapse -> q + q^2 under windows (T=4, Q=3).
        let s = TSeries::from_mono(Mono::new(2, 1), 4, Some(3))
            .add(&TSeries::from_mono(Mono::new(3, 2), 4, Some(3)));
        let p = s.collapse_at_t_one("test").unwrap();
        assert_eq!(p, QPoly::from_pairs(&[(1, 1), (2, 1)]));
        // a term with t > q + 1 is rejected.
        let bad = TSeries::from_mono(Mono::new(3, 0), 4, Some(3));
        assert!(bad.collapse_at_t_one("test").is_err());
        // the t-window must reach past the q-window.
        let narrow = TSeries::from_mono(Mono::new(2, 1), 3, Some(3));
        assert!(matches!(
            narrow.collapse_at_t_one("test"),
            Err(Error::TruncationInsufficient { .. })
        ));
    }

    #[test]
    fn parity_split_recombines() {
        let s = geom(Mono::t(1), 6, None);
        let even = s.parity_part(0);
        let odd = s.parity_part(1);
        even.add(&odd)
            .assert_equal_on_common_window(&s, "parity recombination")
            .unwrap();
        assert!(even.coeff(3).unwrap().is_zero());
        assert!(odd.coeff(4).unwrap().is_zero());
    }

    #[test]
    fn scalar_division_requires_divisibility() {
        let s = TSeries::from_qpoly_at(0, QPoly::from_pairs(&[(0, 4), (1, 8)]), 2, None);
        let half = s.divide_scalar(&BigInt::from(4), "test").unwrap();
        assert_eq!(half.coeff(0).unwrap(), QPoly::from_pairs(&[(0, 1), (1, 2)]));
        assert!(matches!(
            s.divide_scalar(&BigInt::from(3), "test"),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn windowed_division_keeps_window() {
        // 1 / (1 - t/(1-q)) under (T=4, Q=4): level k is 1/(1-q)^k, so the
        // q-coefficients are binomials C(k-1+j, j), truncated below q^4.
        let t_over_one_minus_q = TSeries::from_mono(Mono::t(1), 4, Some(4))
            .geometric_div(Mono::q(1))
            .unwrap();
        let den = TSeries::one(4, Some(4)).sub(&t_over_one_minus_q);
        let inv = den.invert().unwrap();
        assert_eq!(inv.trunc_q(), Some(4));
        assert_eq!(inv.coeff(0).unwrap(), QPoly::one());
        assert_eq!(inv.coeff(1).unwrap(), QPoly::from_pairs(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
        assert_eq!(inv.coeff(2).unwrap(), QPoly::from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 4)]));
        assert_eq!(inv.coeff(3).unwrap(), QPoly::from_pairs(&[(0, 1), (1, 3), (2, 6), (3, 10)]));
    }

    #[test]
    fn division_by_qseries_leading_level() {
        // 1 / (1 - q - q^2 t) under (T=3, Q=5): the divisor's lowest t-level
        // is the q-series 1-q, so each quotient level is produced by q-adic
        // division. Level k is q^{2k} / (1-q)^{k+1}.
        let den = TSeries::one(3, Some(5))
            .sub(&TSeries::from_mono(Mono::q(1), 3, Some(5)))
            .sub(&TSeries::from_mono(Mono::new(1, 2), 3, Some(5)));
        let inv = den.invert().unwrap();
        assert_eq!(inv.trunc_t(), 3);
        assert_eq!(inv.trunc_q(), Some(5));
        assert_eq!(
            inv.coeff(0).unwrap(),
            QPoly::from_pairs(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)])
        );
        assert_eq!(inv.coeff(1).unwrap(), QPoly::from_pairs(&[(2, 1), (3, 2), (4, 3)]));
        assert_eq!(inv.coeff(2).unwrap(), QPoly::from_pairs(&[(4, 1)]));
    }

    #[test]
    fn division_by_qseries_needs_window() {
        let den = TSeries::one(3, None).sub(&TSeries::from_mono(Mono::q(1), 3, None));
        let num = TSeries::one(3, None);
        assert!(matches!(
            TSeries::div(&num, &den),
            Err(Error::NonUnitLeading { .. })
        ));
    }
}
