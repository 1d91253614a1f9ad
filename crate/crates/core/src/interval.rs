//! Outward-rounded interval arithmetic over dyadic endpoints.
//!
//! An endpoint is `mant·2^exp` with an unbounded integer mantissa and an
//! `i64` exponent, so magnitudes such as 2^{10^6} are cheap. Every
//! operation rounds the lower endpoint down and the upper endpoint up to a
//! working precision, so the true value always lies in the result.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward −∞.
    Down,
    /// Toward +∞.
    Up,
}

/// The dyadic number `mant·2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    /// Zero.
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    /// `mant·2^exp`.
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.trimmed()
    }

    /// An integer.
    pub fn from_int(k: impl Into<BigInt>) -> Self {
        Self::new(k.into(), 0)
    }

    fn trimmed(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    /// Mantissa.
    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    /// Binary exponent.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Sign as −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Position just above the top bit: |x| < 2^top.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u64, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let mant = match dir {
            Round::Down => &self.mant >> shift,
            Round::Up => -((-&self.mant) >> shift),
        };
        Dyadic::new(mant, self.exp + shift as i64)
    }

    fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    fn mul_exact(&self, o: &Self) -> Self {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    fn add_exact(&self, o: &Self) -> Self {
        if self.mant.is_zero() {
            return o.clone();
        }
        if o.mant.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    /// Sum rounded in direction `dir`, skipping the exact alignment when the
    /// summands differ by far more than the precision.
    pub fn add_round(&self, o: &Self, prec: u64, dir: Round) -> Self {
        if !self.mant.is_zero() && !o.mant.is_zero() {
            let (big, small) = if self.top() >= o.top() {
                (self, o)
            } else {
                (o, self)
            };
            if big.top() - small.top() > prec as i64 + 8 {
                let r = big.round(prec, dir);
                let ulp = Dyadic::new(BigInt::one(), big.top() - prec as i64);
                return match (dir, small.signum()) {
                    (Round::Down, -1) => r.add_exact(&ulp.neg()),
                    (Round::Up, 1) => r.add_exact(&ulp),
                    _ => r,
                };
            }
        }
        self.add_exact(o).round(prec, dir)
    }

    /// Quotient rounded in direction `dir`.
    pub fn div_round(&self, o: &Self, prec: u64, dir: Round) -> Self {
        assert!(!o.mant.is_zero(), "dyadic division by zero");
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let a = &self.mant << k as u64;
        let q = match dir {
            Round::Down => a.div_floor(&o.mant),
            Round::Up => -((-a).div_floor(&o.mant)),
        };
        Dyadic::new(q, self.exp - o.exp - k).round(prec, dir)
    }

    /// Rational value rounded in direction `dir`.
    pub fn from_rational(q: &BigRational, prec: u64, dir: Round) -> Self {
        Dyadic::from_int(q.numer().clone()).div_round(
            &Dyadic::from_int(q.denom().clone()),
            prec,
            dir,
        )
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest `f64`, saturating to ±∞.
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m: f64 = (&self.mant >> shift as u64)
            .to_string()
            .parse()
            .unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return if m > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// Decimal scientific notation with `digits` significant digits,
    /// rounded in direction `dir`.
    pub fn to_sci(&self, digits: u32, dir: Round) -> String {
        if self.mant.is_zero() {
            return "0".into();
        }
        let neg = self.mant.is_negative();
        // rounding the magnitude: down for a negative lower bound means up
        let mag_up = matches!((dir, neg), (Round::Up, false) | (Round::Down, true));
        let mag = self.mant.abs();
        let est = ((self.top() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        for q in [est, est + 1, est - 1, est + 2, est - 2] {
            let k = digits as i64 - 1 - q;
            let mut num = mag.clone();
            let mut den = BigInt::one();
            let ten = BigInt::from(10u32);
            if k >= 0 {
                num *= num_traits::pow(ten, k as usize);
            } else {
                den *= num_traits::pow(ten, (-k) as usize);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            let (fl, rem) = num.div_rem(&den);
            let n = if mag_up && !rem.is_zero() { fl + 1 } else { fl };
            let s = n.to_string();
            let lo = num_traits::pow(BigInt::from(10u32), digits as usize - 1);
            if n < lo {
                continue;
            }
            let (s, q) = if s.len() > digits as usize {
                // carried into a new digit: 99.9 → 100; keep it exact-ish
                if s[digits as usize..].chars().all(|c| c == '0') {
                    (s[..digits as usize].to_string(), q + 1)
                } else {
                    continue;
                }
            } else {
                (s, q)
            };
            let sign = if neg { "-" } else { "" };
            return if digits == 1 {
                format!("{sign}{s}e{q}")
            } else {
                format!("{sign}{}.{}e{q}", &s[..1], &s[1..])
            };
        }
        unreachable!("decimal exponent estimate off by more than two")
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let ord = ta.cmp(&tb);
            return if sa > 0 { ord } else { ord.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

/// A closed interval `[lo, hi]` with a working precision in bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u64,
}

impl Interval {
    /// The degenerate interval at `d`.
    pub fn point(d: Dyadic, prec: u64) -> Self {
        Interval {
            lo: d.clone(),
            hi: d,
            prec,
        }
    }

    /// Interval with given endpoints; panics when `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    /// An integer.
    pub fn from_int(k: impl Into<BigInt>, prec: u64) -> Self {
        Self::point(Dyadic::from_int(k), prec)
    }

    /// Enclosure of a rational.
    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    /// Working precision.
    pub fn prec(&self) -> u64 {
        self.prec
    }

    /// Strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    /// Strictly negative.
    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Contains zero.
    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Whether `self < other` is certain.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    /// Whether `self ≤ other` is certain.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    /// `2^k·self`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let sh = |d: &Dyadic| Dyadic::new(d.mant.clone(), d.exp + k);
        Interval {
            lo: sh(&self.lo),
            hi: sh(&self.hi),
            prec: self.prec,
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        Interval {
            lo: self.lo.add_round(&o.lo, p, Round::Down),
            hi: self.hi.add_round(&o.hi, p, Round::Up),
            prec: p,
        }
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let c = [
            self.lo.mul_exact(&o.lo),
            self.lo.mul_exact(&o.hi),
            self.hi.mul_exact(&o.lo),
            self.hi.mul_exact(&o.hi),
        ];
        let lo = c.iter().min().unwrap().round(p, Round::Down);
        let hi = c.iter().max().unwrap().round(p, Round::Up);
        Interval { lo, hi, prec: p }
    }

    /// Quotient; panics if the divisor contains zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(
            !o.contains_zero(),
            "interval division by an interval containing zero"
        );
        let p = self.prec.max(o.prec);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let d = a.div_round(b, p, Round::Down);
                let u = a.div_round(b, p, Round::Up);
                lo = Some(match lo {
                    Some(x) if x <= d => x,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(x) if x >= u => x,
                    _ => u,
                });
            }
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            prec: p,
        }
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn powu(&self, mut e: u64) -> Self {
        let mut acc = Interval::from_int(1, self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power; negative powers need an interval away from zero.
    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.powu(e as u64)
        } else {
            Interval::from_int(1, self.prec).div(&self.powu(e.unsigned_abs()))
        }
    }

    /// Hull of two intervals.
    pub fn hull(&self, o: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.prec.max(o.prec),
        }
    }

    /// Smallest k with |x| < 2^k on the interval; `i64::MIN` for {0}.
    fn mag_top(&self) -> i64 {
        let t = |d: &Dyadic| if d.mant.is_zero() { i64::MIN } else { d.top() };
        t(&self.lo).max(t(&self.hi))
    }

    /// Symmetric error term `[−2^k, 2^k]`.
    fn err(k: i64, prec: u64) -> Self {
        if k < -(1 << 40) {
            return Interval::from_int(0, prec);
        }
        let d = Dyadic::new(BigInt::one(), k);
        Interval {
            lo: d.neg(),
            hi: d,
            prec,
        }
    }

    /// exp on an interval.
    pub fn exp(&self) -> Self {
        let lo = exp_point(&self.lo, self.prec);
        let hi = exp_point(&self.hi, self.prec);
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        }
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of a non-positive interval");
        let lo = ln_point(&self.lo, self.prec);
        let hi = ln_point(&self.hi, self.prec);
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        }
    }

    /// Base-2 logarithm of a positive interval.
    pub fn log2(&self) -> Self {
        self.ln().div(&ln2(self.prec + 8))
    }

    /// Cosine of an interval contained in [0, 4].
    pub fn cos(&self) -> Self {
        let p = self.prec + 16;
        let x = Interval {
            prec: p,
            ..self.clone()
        };
        let x2 = x.mul(&x);
        let mut term = Interval::from_int(1, p);
        let mut sum = term.clone();
        let mut k = 1u64;
        loop {
            term = term
                .mul(&x2)
                .div(&Interval::from_int(-(((2 * k - 1) * 2 * k) as i64), p));
            sum = sum.add(&term);
            k += 1;
            if term.mag_top() < -(p as i64) - 4 && k > 3 {
                // alternating tail bounded by the first omitted term, itself
                // smaller than the last one kept
                let bound = term.mag_top();
                return sum.add(&Interval::err(bound, p)).with_prec(self.prec);
            }
        }
    }

    fn with_prec(mut self, prec: u64) -> Self {
        self.lo = self.lo.round(prec, Round::Down);
        self.hi = self.hi.round(prec, Round::Up);
        self.prec = prec;
        self
    }

    /// Decimal rendering `[lo, hi]` with 17 significant digits.
    pub fn to_decimal_string(&self) -> String {
        format!(
            "[{}, {}]",
            self.lo.to_sci(17, Round::Down),
            self.hi.to_sci(17, Round::Up)
        )
    }

    /// Midpoint as `f64`.
    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }
}

/// exp of a single dyadic: halve to |y| ≤ 2^{-8}, Taylor, then square back.
fn exp_point(d: &Dyadic, prec: u64) -> Interval {
    if d.mant.is_zero() {
        return Interval::from_int(1, prec);
    }
    let j = (d.top() + 8).max(0) as u64;
    let p = prec + j + 20;
    let y = Interval::point(Dyadic::new(d.mant.clone(), d.exp - j as i64), p);
    let mut term = Interval::from_int(1, p);
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        term = term.mul(&y).div(&Interval::from_int(k, p));
        sum = sum.add(&term);
        k += 1;
        let t = term.mag_top();
        if t < -(p as i64) - 4 {
            // |y| ≤ 1/256: the tail is at most twice the next term
            sum = sum.add(&Interval::err(t.saturating_sub(6), p));
            break;
        }
    }
    for _ in 0..j {
        sum = sum.mul(&sum);
    }
    sum.with_prec(prec)
}

/// atanh(z) for a rational |z| ≤ 1/3.
fn atanh_rational(z: &BigRational, prec: u64) -> Interval {
    let p = prec + 16;
    let x = Interval::from_rational(z, p);
    let x2 = x.mul(&x);
    let mut pow = x.clone();
    let mut sum = x.clone();
    let mut k = 1i64;
    loop {
        pow = pow.mul(&x2);
        let term = pow.div(&Interval::from_int(2 * k + 1, p));
        sum = sum.add(&term);
        k += 1;
        let t = term.mag_top();
        if t < -(p as i64) - 4 {
            // geometric tail with ratio ≤ 1/9
            sum = sum.add(&Interval::err(t, p));
            break;
        }
    }
    sum.with_prec(prec)
}

/// Enclosure of ln 2.
pub fn ln2(prec: u64) -> Interval {
    atanh_rational(&BigRational::new(1.into(), 3.into()), prec + 4)
        .mul_pow2(1)
        .with_prec(prec)
}

/// Enclosure of ln 3.
pub fn ln3(prec: u64) -> Interval {
    let l = atanh_rational(&BigRational::new(1.into(), 5.into()), prec + 4).mul_pow2(1);
    ln2(prec + 4).add(&l).with_prec(prec)
}

/// atan(1/q) for an integer q ≥ 2 by the alternating series.
fn atan_inv(q: i64, prec: u64) -> Interval {
    let p = prec + 16;
    let x = Interval::from_rational(&BigRational::new(1.into(), q.into()), p);
    let x2 = x.mul(&x);
    let mut pow = x.clone();
    let mut sum = x.clone();
    let mut k = 1i64;
    loop {
        pow = pow.mul(&x2);
        let term = pow.div(&Interval::from_int(2 * k + 1, p));
        sum = if k % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        k += 1;
        let t = term.mag_top();
        if t < -(p as i64) - 4 {
            sum = sum.add(&Interval::err(t, p));
            break;
        }
    }
    sum.with_prec(prec)
}

/// Enclosure of π by Machin's formula.
pub fn pi(prec: u64) -> Interval {
    let p = prec + 8;
    let a = atan_inv(5, p).mul_pow2(4);
    let b = atan_inv(239, p).mul_pow2(2);
    a.sub(&b).with_prec(prec)
}

/// ln of a positive dyadic: ln(f·2^E) = 2·atanh((f−1)/(f+1)) + E·ln 2.
fn ln_point(d: &Dyadic, prec: u64) -> Interval {
    assert!(d.signum() > 0);
    let t = d.mant.bits() as i64;
    let e = d.exp + t;
    // f = mant / 2^t in [1/2, 1); z = (f−1)/(f+1) = (mant − 2^t)/(mant + 2^t)
    let two_t = BigInt::one() << t as u64;
    let z = BigRational::new(&d.mant - &two_t, &d.mant + &two_t);
    let p = prec + 16 + (64 - e.unsigned_abs().leading_zeros() as u64);
    let lnf = if z.is_zero() {
        Interval::from_int(0, p)
    } else {
        atanh_rational(&z, p).mul_pow2(1)
    };
    lnf.add(&ln2(p).mul(&Interval::from_int(e, p)))
        .with_prec(prec)
}
