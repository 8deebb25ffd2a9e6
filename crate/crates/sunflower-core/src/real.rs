//! Exact real arithmetic for threshold comparisons.
//!
//! A [`Real`] is an expression tree over big rationals closed under the
//! field operations, integer powers, `exp` and `ln`. Rational subtrees are
//! folded eagerly, so a value built only from rationals compares exactly by
//! cross-multiplication. Transcendental values are evaluated on demand to a
//! directed interval enclosure `[lo, hi]` at a requested bit precision;
//! comparisons that cannot be decided at the current precision escalate
//! until they separate or the precision cap is hit.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;

/// Hard cap on enclosure precision. A comparison still undecided here is
/// reported as an error instead of looping forever on a (necessarily
/// pathological) tie.
pub const MAX_PRECISION_BITS: u32 = 16_384;

const PRECISION_LADDER: [u32; 9] = [64, 128, 256, 512, 1024, 2048, 4096, 8192, MAX_PRECISION_BITS];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error("logarithm of a nonpositive value")]
    LnNonPositive,
    #[error("division by zero")]
    DivisionByZero,
    #[error("comparison undecided at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },
}

/// A closed rational interval guaranteed to contain the true value.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

enum EvalSignal {
    Domain(RealError),
    NeedPrecision,
}

#[derive(Debug)]
enum Node {
    Rat(BigRational),
    Add(Real, Real),
    Sub(Real, Real),
    Mul(Real, Real),
    Div(Real, Real),
    Neg(Real),
    PowI(Real, i64),
    Exp(Real),
    Ln(Real),
}

/// An exact real number: rational, or a lazily evaluated expression.
#[derive(Clone)]
pub struct Real(Arc<Node>);

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "Real({q})"),
            None => match self.decimal(12) {
                Ok(s) => write!(f, "Real(~{s})"),
                Err(e) => write!(f, "Real(<{e}>)"),
            },
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.decimal(12).map_err(|_| fmt::Error)?),
        }
    }
}

impl From<i64> for Real {
    fn from(v: i64) -> Self {
        Real::rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<u64> for Real {
    fn from(v: u64) -> Self {
        Real::rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Self {
        Real::rational(q)
    }
}

impl Real {
    pub fn rational(q: BigRational) -> Self {
        Real(Arc::new(Node::Rat(q)))
    }

    pub fn integer(v: i64) -> Self {
        Real::from(v)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Real::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Euler's number as an expression.
    pub fn e() -> Self {
        Real::integer(1).exp()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &*self.0 {
            Node::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn add(&self, rhs: &Real) -> Real {
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            return Real::rational(a + b);
        }
        Real(Arc::new(Node::Add(self.clone(), rhs.clone())))
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            return Real::rational(a - b);
        }
        Real(Arc::new(Node::Sub(self.clone(), rhs.clone())))
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            return Real::rational(a * b);
        }
        Real(Arc::new(Node::Mul(self.clone(), rhs.clone())))
    }

    /// Panics if `rhs` is the exact rational zero; interval divisors that
    /// merely straddle zero escalate precision instead.
    pub fn div(&self, rhs: &Real) -> Real {
        if let Some(b) = rhs.as_rational() {
            assert!(!b.is_zero(), "division by exact zero");
            if let Some(a) = self.as_rational() {
                return Real::rational(a / b);
            }
        }
        Real(Arc::new(Node::Div(self.clone(), rhs.clone())))
    }

    pub fn neg(&self) -> Real {
        if let Some(a) = self.as_rational() {
            return Real::rational(-a);
        }
        Real(Arc::new(Node::Neg(self.clone())))
    }

    pub fn powi(&self, e: i64) -> Real {
        if e == 0 {
            return Real::integer(1);
        }
        if e == 1 {
            return self.clone();
        }
        if let Some(q) = self.as_rational() {
            if e > 0 {
                return Real::rational(rat_pow(q, e as u64));
            }
            if !q.is_zero() {
                return Real::rational(rat_pow(q, (-e) as u64).recip());
            }
        }
        Real(Arc::new(Node::PowI(self.clone(), e)))
    }

    pub fn exp(&self) -> Real {
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return Real::integer(1);
            }
        }
        Real(Arc::new(Node::Exp(self.clone())))
    }

    pub fn ln(&self) -> Real {
        if let Some(q) = self.as_rational() {
            if q.is_one() {
                return Real::integer(0);
            }
        }
        Real(Arc::new(Node::Ln(self.clone())))
    }

    fn eval(&self, prec: u32) -> Result<Interval, EvalSignal> {
        match &*self.0 {
            Node::Rat(q) => Ok(Interval::point(q.clone())),
            Node::Add(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                Ok(round_out(x.lo + y.lo, x.hi + y.hi, prec))
            }
            Node::Sub(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                Ok(round_out(x.lo - y.hi, x.hi - y.lo, prec))
            }
            Node::Neg(a) => {
                let x = a.eval(prec)?;
                Ok(Interval { lo: -x.hi, hi: -x.lo })
            }
            Node::Mul(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                let cands = [&x.lo * &y.lo, &x.lo * &y.hi, &x.hi * &y.lo, &x.hi * &y.hi];
                let lo = cands.iter().min().unwrap().clone();
                let hi = cands.iter().max().unwrap().clone();
                Ok(round_out(lo, hi, prec))
            }
            Node::Div(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                if y.contains_zero() {
                    if y.lo.is_zero() && y.hi.is_zero() {
                        return Err(EvalSignal::Domain(RealError::DivisionByZero));
                    }
                    return Err(EvalSignal::NeedPrecision);
                }
                let cands = [&x.lo / &y.lo, &x.lo / &y.hi, &x.hi / &y.lo, &x.hi / &y.hi];
                let lo = cands.iter().min().unwrap().clone();
                let hi = cands.iter().max().unwrap().clone();
                Ok(round_out(lo, hi, prec))
            }
            Node::PowI(a, e) => {
                let x = a.eval(prec)?;
                pow_interval(&x, *e, prec)
            }
            Node::Exp(a) => {
                let x = a.eval(prec)?;
                let lo = exp_directed(&x.lo, prec, false);
                let hi = exp_directed(&x.hi, prec, true);
                Ok(Interval { lo, hi })
            }
            Node::Ln(a) => {
                let x = a.eval(prec)?;
                if !x.hi.is_positive() {
                    return Err(EvalSignal::Domain(RealError::LnNonPositive));
                }
                if !x.lo.is_positive() {
                    return Err(EvalSignal::NeedPrecision);
                }
                let lo = ln_directed(&x.lo, prec, false);
                let hi = ln_directed(&x.hi, prec, true);
                Ok(Interval { lo, hi })
            }
        }
    }

    /// Enclosure at the given precision, escalating internally past
    /// transient indeterminacy (e.g. a divisor interval straddling zero).
    pub fn enclosure(&self, prec: u32) -> Result<Interval, RealError> {
        let mut p = prec.max(64);
        loop {
            match self.eval(p) {
                Ok(iv) => return Ok(iv),
                Err(EvalSignal::Domain(e)) => return Err(e),
                Err(EvalSignal::NeedPrecision) => {
                    if p >= MAX_PRECISION_BITS {
                        return Err(RealError::PrecisionExhausted { bits: p });
                    }
                    p *= 2;
                }
            }
        }
    }

    fn refine<T>(&self, mut decide: impl FnMut(&Interval) -> Option<T>) -> Result<T, RealError> {
        for &p in &PRECISION_LADDER {
            match self.eval(p) {
                Ok(iv) => {
                    if let Some(t) = decide(&iv) {
                        return Ok(t);
                    }
                }
                Err(EvalSignal::Domain(e)) => return Err(e),
                Err(EvalSignal::NeedPrecision) => {}
            }
        }
        Err(RealError::PrecisionExhausted { bits: MAX_PRECISION_BITS })
    }

    /// Strict `self < rhs`, decided conservatively.
    pub fn try_lt(&self, rhs: &Real) -> Result<bool, RealError> {
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            return Ok(a < b);
        }
        let d = self.sub(rhs);
        d.refine(|iv| {
            if iv.hi.is_negative() {
                Some(true)
            } else if !iv.lo.is_negative() {
                Some(false)
            } else {
                None
            }
        })
    }

    /// `self <= rhs`, decided conservatively.
    pub fn try_le(&self, rhs: &Real) -> Result<bool, RealError> {
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            return Ok(a <= b);
        }
        let d = self.sub(rhs);
        d.refine(|iv| {
            if !iv.hi.is_positive() {
                Some(true)
            } else if iv.lo.is_positive() {
                Some(false)
            } else {
                None
            }
        })
    }

    pub fn try_gt(&self, rhs: &Real) -> Result<bool, RealError> {
        rhs.try_lt(self)
    }

    pub fn try_ge(&self, rhs: &Real) -> Result<bool, RealError> {
        rhs.try_le(self)
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> Result<BigInt, RealError> {
        if let Some(q) = self.as_rational() {
            return Ok(q.ceil().to_integer());
        }
        self.refine(|iv| {
            let lo = iv.lo.ceil().to_integer();
            let hi = iv.hi.ceil().to_integer();
            (lo == hi).then_some(lo)
        })
    }

    /// Normalized scientific decimal string with `sig` significant digits,
    /// e.g. `1.304238900e36`.
    pub fn decimal(&self, sig: usize) -> Result<String, RealError> {
        assert!(sig >= 1);
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return Ok("0".to_string());
            }
            return Ok(format_decimal(q, sig));
        }
        // Want relative width below a comfortable margin of the last digit.
        let tol_exp = (sig as u32 + 4) * 4; // 10^(sig+4) < 2^(4*(sig+4))
        self.refine(|iv| {
            if iv.lo.is_positive() != iv.hi.is_positive() {
                return None;
            }
            let scale = if iv.lo.is_positive() { &iv.lo } else { &iv.hi };
            let bound = scale.abs() / BigRational::from_integer(BigInt::one() << tol_exp);
            (iv.width() <= bound).then(|| {
                let mid = (&iv.lo + &iv.hi) / BigRational::from_integer(BigInt::from(2));
                format_decimal(&mid, sig)
            })
        })
    }
}

fn rat_pow(q: &BigRational, e: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = q.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// floor(log2 |q|) up to +-1, cheap.
fn mag2(q: &BigRational) -> i64 {
    debug_assert!(!q.is_zero());
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Round toward -inf (or +inf) onto the dyadic grid with about `prec`
/// significant bits.
fn round_dyadic(q: &BigRational, prec: u32, up: bool) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let shift = prec as i64 - mag2(q);
    let (num, den) = (q.numer(), q.denom());
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num << shift as u64, den.clone())
    } else {
        (num.clone(), den << (-shift) as u64)
    };
    let (d, r) = scaled_num.div_rem(&scaled_den);
    let int = if r.is_zero() {
        d
    } else if up {
        if scaled_num.is_negative() { d } else { d + 1 }
    } else if scaled_num.is_negative() {
        d - 1
    } else {
        d
    };
    if shift >= 0 {
        BigRational::new(int, BigInt::one() << shift as u64)
    } else {
        BigRational::from_integer(int << (-shift) as u64)
    }
}

fn round_out(lo: BigRational, hi: BigRational, prec: u32) -> Interval {
    Interval {
        lo: round_dyadic(&lo, prec + 2, false),
        hi: round_dyadic(&hi, prec + 2, true),
    }
}

fn pow_interval(x: &Interval, e: i64, prec: u32) -> Result<Interval, EvalSignal> {
    if e < 0 {
        if x.contains_zero() {
            if x.lo.is_zero() && x.hi.is_zero() {
                return Err(EvalSignal::Domain(RealError::DivisionByZero));
            }
            return Err(EvalSignal::NeedPrecision);
        }
        let inv = Interval { lo: x.hi.recip(), hi: x.lo.recip() };
        return pow_interval(&inv, -e, prec);
    }
    let n = e as u64;
    let (plo, phi) = if !x.lo.is_negative() {
        (rat_pow(&x.lo, n), rat_pow(&x.hi, n))
    } else if !x.hi.is_positive() {
        let (a, b) = (rat_pow(&x.lo, n), rat_pow(&x.hi, n));
        if n % 2 == 0 { (b, a) } else { (a, b) }
    } else if n % 2 == 0 {
        let m = rat_pow(&x.lo, n).max(rat_pow(&x.hi, n));
        (BigRational::zero(), m)
    } else {
        (rat_pow(&x.lo, n), rat_pow(&x.hi, n))
    };
    Ok(round_out(plo, phi, prec))
}

/// Directed evaluation of exp at an exact rational point.
///
/// Argument reduction exp(q) = exp(q/2^s)^(2^s) with |q|/2^s <= 1/2, then a
/// Taylor partial sum with an explicit geometric tail bound, then `s`
/// directed squarings.
fn exp_directed(q: &BigRational, prec: u32, up: bool) -> BigRational {
    if q.is_zero() {
        return BigRational::one();
    }
    let work = prec + 8;
    let s = (mag2(q) + 1).max(0) as u32;
    let t = q / BigRational::from_integer(BigInt::one() << s as u64);
    // Partial Taylor sum; terms drop by at least half once i >= 1 since
    // |t| <= 1/2, so the tail is at most twice the first omitted term.
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (work + 4) as u64);
    let mut sum = BigRational::one();
    let mut term = t.clone();
    let mut i: u64 = 1;
    loop {
        sum += &term;
        i += 1;
        term = term * &t / BigRational::from_integer(BigInt::from(i));
        if term.abs() <= eps {
            break;
        }
    }
    let tail = term.abs() * BigRational::from_integer(BigInt::from(2));
    let mut v = if up {
        round_dyadic(&(sum + tail), work, true)
    } else {
        round_dyadic(&(sum - tail), work, false)
    };
    if !up && !v.is_positive() {
        // exp(t) >= 1/2 for |t| <= 1/2; only reachable at absurdly low
        // precision, keep the bound sound anyway.
        v = BigRational::new(BigInt::one(), BigInt::one() << work as u64);
    }
    for _ in 0..s {
        v = round_dyadic(&(&v * &v), work, up);
    }
    v
}

/// ln 2 enclosure via 2*atanh(1/3).
fn ln2_bounds(prec: u32) -> (BigRational, BigRational) {
    let work = prec + 8;
    let t = BigRational::new(BigInt::one(), BigInt::from(3));
    let (s, tail) = atanh_series(&t, work);
    let lo = round_dyadic(&(&s - &tail), work, false);
    let hi = round_dyadic(&(s + tail), work, true);
    (lo, hi)
}

/// Partial sum of 2*atanh(t) = 2*(t + t^3/3 + ...) plus a tail bound.
/// Requires |t| < 1/2.
fn atanh_series(t: &BigRational, work: u32) -> (BigRational, BigRational) {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (work + 4) as u64);
    let t2 = t * t;
    let two = BigRational::from_integer(BigInt::from(2));
    let mut sum = BigRational::zero();
    let mut pow = t.clone();
    let mut i: u64 = 0;
    loop {
        let term = &two * &pow / BigRational::from_integer(BigInt::from(2 * i + 1));
        sum += &term;
        pow = pow * &t2;
        i += 1;
        let next = &two * pow.abs() / BigRational::from_integer(BigInt::from(2 * i + 1));
        if next <= eps {
            // Ratio of successive terms is at most t^2 < 1/4.
            let tail = next * BigRational::new(BigInt::from(4), BigInt::from(3));
            return (sum, tail);
        }
    }
}

/// Directed evaluation of ln at an exact positive rational point.
///
/// Reduction q = 2^e * y with y in [3/4, 3/2), then ln y = 2*atanh((y-1)/(y+1)).
fn ln_directed(q: &BigRational, prec: u32, up: bool) -> BigRational {
    debug_assert!(q.is_positive());
    let work = prec + 8;
    let mut e: i64 = mag2(q);
    let three_half = BigRational::new(BigInt::from(3), BigInt::from(2));
    let three_quarter = BigRational::new(BigInt::from(3), BigInt::from(4));
    let pow2 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as u64)
        }
    };
    let mut y = q / pow2(e);
    while y >= three_half {
        y /= BigRational::from_integer(BigInt::from(2));
        e += 1;
    }
    while y < three_quarter {
        y *= BigRational::from_integer(BigInt::from(2));
        e -= 1;
    }
    let t = (&y - BigRational::one()) / (&y + BigRational::one());
    let (s, tail) = atanh_series(&t, work);
    let (ln2_lo, ln2_hi) = ln2_bounds(work);
    let e_rat = BigRational::from_integer(BigInt::from(e));
    let (scaled_lo, scaled_hi) = if e >= 0 {
        (&e_rat * &ln2_lo, &e_rat * &ln2_hi)
    } else {
        (&e_rat * &ln2_hi, &e_rat * &ln2_lo)
    };
    if up {
        round_dyadic(&(scaled_hi + s + tail), work, true)
    } else {
        round_dyadic(&(scaled_lo + s - tail), work, false)
    }
}

/// Format a nonzero rational as `d.dd...eE` with `sig` significant digits.
fn format_decimal(q: &BigRational, sig: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    // e10: decimal exponent with 10^e10 <= a < 10^(e10+1).
    let mut e10 = (mag2(&a) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigInt::from(10);
    let pow10 = |k: u64| -> BigInt { ten.pow(k as u32) };
    let cmp_pow10 = |v: &BigRational, k: i64| -> std::cmp::Ordering {
        if k >= 0 {
            v.cmp(&BigRational::from_integer(pow10(k as u64)))
        } else {
            v.cmp(&BigRational::new(BigInt::one(), pow10((-k) as u64)))
        }
    };
    while cmp_pow10(&a, e10) == std::cmp::Ordering::Less {
        e10 -= 1;
    }
    while cmp_pow10(&a, e10 + 1) != std::cmp::Ordering::Less {
        e10 += 1;
    }
    // digits = round(a / 10^(e10 - sig + 1))
    let shift = e10 - sig as i64 + 1;
    let scaled = if shift >= 0 {
        a / BigRational::from_integer(pow10(shift as u64))
    } else {
        a * BigRational::from_integer(pow10((-shift) as u64))
    };
    let two = BigInt::from(2);
    let rounded = ((scaled.numer() * &two + scaled.denom()) / (scaled.denom() * &two)).to_biguint().unwrap();
    let mut digits = rounded.to_string();
    let mut exp = e10;
    if digits.len() > sig {
        // Carry from rounding, e.g. 999.5 -> 1000.
        digits.truncate(sig);
        exp += 1;
    }
    while digits.len() < sig {
        digits.push('0');
    }
    let mantissa = if sig == 1 {
        digits
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    };
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, exp)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Parse "p/q", decimal ("0.25"), or integer text into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().ok()? };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac.parse().ok()?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        let frac_part = BigRational::new(f, den);
        let int_part = BigRational::from_integer(i);
        return Some(if neg { int_part - frac_part } else { int_part + frac_part });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_encloses(r: &Real, decimal: &str) {
        // The reference literal is itself truncated, so check the tight
        // enclosure sits inside a +-1e-15 relative band around it.
        let v: BigRational = parse_decimal_str(decimal);
        let tol = v.abs() * rat(1, 1_000_000_000_000_000);
        let iv = r.enclosure(128).unwrap();
        assert!(
            iv.lo >= &v - &tol && iv.hi <= &v + &tol,
            "expected [{}, {}] within 1e-15 of {decimal}",
            iv.lo,
            iv.hi
        );
    }

    fn parse_decimal_str(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rational_folding_keeps_exactness() {
        let a = Real::ratio(1, 3);
        let b = Real::ratio(1, 6);
        let s = a.add(&b);
        assert_eq!(s.as_rational().unwrap(), &rat(1, 2));
        assert_eq!(a.powi(-2).as_rational().unwrap(), &rat(9, 1));
    }

    #[test]
    fn exp_enclosure_brackets_known_values() {
        // Reference value from an independent 60-digit evaluation.
        assert_encloses(&Real::e(), "2.7182818284590452");
        assert_encloses(&Real::integer(2).exp(), "7.3890560989306502");
        assert_encloses(&Real::integer(-1).exp(), "0.3678794411714423");
        let big = Real::integer(100).exp();
        let iv = big.enclosure(64).unwrap();
        assert!(iv.width() / iv.lo.clone() < rat(1, 1 << 30));
    }

    #[test]
    fn ln_enclosure_brackets_known_values() {
        assert_encloses(&Real::integer(2).ln(), "0.6931471805599453");
        assert_encloses(&Real::integer(16).ln(), "2.7725887222397812");
        assert_encloses(&Real::rational(rat(3, 4)).ln(), "-0.2876820724517809");
        // ln(ln 16)
        assert_encloses(&Real::integer(16).ln().ln(), "1.0197814405382262");
    }

    #[test]
    fn ln_domain_error() {
        assert!(matches!(
            Real::integer(-3).ln().enclosure(64),
            Err(RealError::LnNonPositive)
        ));
    }

    #[test]
    fn comparisons_escalate_and_decide() {
        // e^2 vs 7.389056098 (just below) and 7.389056099 (just above)
        let c = Real::integer(2).exp();
        assert!(c.try_gt(&Real::rational(parse_decimal_str("7.389056098"))).unwrap());
        assert!(c.try_lt(&Real::rational(parse_decimal_str("7.389056099"))).unwrap());
        // Rational ties decide exactly.
        let half = Real::ratio(1, 2);
        assert!(half.try_le(&Real::ratio(2, 4)).unwrap());
        assert!(!half.try_lt(&Real::ratio(2, 4)).unwrap());
    }

    #[test]
    fn ceil_of_transcendental() {
        assert_eq!(Real::e().ceil_int().unwrap(), BigInt::from(3));
        assert_eq!(Real::integer(2).ln().ceil_int().unwrap(), BigInt::from(1));
        assert_eq!(Real::rational(rat(7, 2)).ceil_int().unwrap(), BigInt::from(4));
        assert_eq!(Real::rational(rat(-7, 2)).ceil_int().unwrap(), BigInt::from(-3));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(Real::ratio(1, 2).decimal(3).unwrap(), "5.00e-1");
        assert_eq!(Real::integer(589824).decimal(6).unwrap(), "5.89824e5");
        assert_eq!(Real::integer(2).exp().decimal(10).unwrap(), "7.389056099e0");
        assert_eq!(Real::rational(rat(9995, 10)).decimal(3).unwrap(), "1.00e3");
        assert_eq!(Real::integer(-4).decimal(2).unwrap(), "-4.0e0");
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        assert_eq!(factorial(10), BigUint::from(3628800u64));
        assert_eq!(binomial(5, 9), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_rule_sweep() {
        // Independent oracle: Pascal's triangle.
        let mut row: Vec<BigUint> = vec![BigUint::one()];
        for n in 1..=64u64 {
            let mut next = vec![BigUint::one()];
            for j in 1..n as usize {
                next.push(&row[j - 1] + &row[j]);
            }
            next.push(BigUint::one());
            row = next;
            for (k, expect) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as u64), expect, "C({n},{k})");
            }
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn directed_rounding_is_outward() {
        let q = rat(1, 3);
        let down = round_dyadic(&q, 16, false);
        let up = round_dyadic(&q, 16, true);
        assert!(down <= q && q <= up);
        assert!(up != down);
        let nq = rat(-1, 3);
        let ndown = round_dyadic(&nq, 16, false);
        let nup = round_dyadic(&nq, 16, true);
        assert!(ndown <= nq && nq <= nup);
    }
}
