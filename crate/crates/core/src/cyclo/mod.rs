//! Exact arithmetic in cyclotomic fields ℚ(ζ_m).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(m)−1} reduced
//! modulo Φ_m, as an integer numerator vector over one positive common
//! denominator. The representation is canonical, so structural equality is
//! value equality.

mod norm;
mod poly;
mod positivity;
mod sqrt;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::util::{euler_phi, gcd, two_power_exponent};

pub(crate) use norm::bareiss_det;
pub use poly::{cyclotomic_poly, poly_mul, CycPoly};
pub use positivity::{is_totally_positive, real_embeddings};
pub use sqrt::{
    check_certificate, is_square_unit, sqrt_in_field, NonSquareCertificate, SquareTest,
};

/// An element of ℚ(ζ_m).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    m: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Mode selector for [`galois_conj_trace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisMode {
    /// Image under ζ ↦ ζ^a.
    Apply,
    /// x + x̄.
    Trace,
    /// x − x̄.
    Antitrace,
}

impl CycNum {
    fn normalized(m: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if num.iter().all(Zero::is_zero) {
            return CycNum {
                m,
                num,
                den: BigInt::one(),
            };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        CycNum { m, num, den }
    }

    /// Builds an element from coefficients of ζ^i for arbitrary exponents
    /// `i` (the vector may be longer than `m`), over denominator `den`.
    pub fn from_exponent_coeffs(m: u64, coeffs: Vec<BigInt>, den: BigInt) -> Self {
        assert!(m >= 1, "modulus must be positive");
        let mut v = poly::fold_exponents(coeffs, m);
        poly::reduce_mod_phi(&mut v, m);
        Self::normalized(m, v, den)
    }

    /// Builds an integral element from small coefficients of ζ^i.
    pub fn from_i64s(m: u64, coeffs: &[i64]) -> Self {
        Self::from_exponent_coeffs(
            m,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::one(),
        )
    }

    /// Builds an element from rational coefficients of ζ^i.
    pub fn from_rationals(m: u64, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_exponent_coeffs(m, num, den)
    }

    /// The zero element.
    pub fn zero(m: u64) -> Self {
        Self::normalized(
            m,
            vec![BigInt::zero(); euler_phi(m) as usize],
            BigInt::one(),
        )
    }

    /// The unit element.
    pub fn one(m: u64) -> Self {
        Self::integer(m, 1)
    }

    /// A rational integer.
    pub fn integer(m: u64, k: impl Into<BigInt>) -> Self {
        Self::rational(m, BigRational::from_integer(k.into()))
    }

    /// A rational number.
    pub fn rational(m: u64, q: BigRational) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(m) as usize];
        num[0] = q.numer().clone();
        Self::normalized(m, num, q.denom().clone())
    }

    /// ζ_m^k for any integer `k`.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        Self::from_exponent_coeffs(m, v, BigInt::one())
    }

    /// ζ_m.
    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// The modulus `m`.
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Degree φ(m) of the ambient field.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    /// Integer numerator coefficients.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    /// Common positive denominator.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Rational coefficient of ζ^i in the reduced power basis.
    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    /// All rational coefficients.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// True for the unit element.
    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// All denominators are powers of 2.
    pub fn is_dyadic(&self) -> bool {
        two_power_exponent(&BigRational::from_integer(self.den.clone())).is_some()
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic moduli differ");
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.m, num, &self.den * q.denom())
    }

    /// Raises to a nonnegative power.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Raises to an integer power; negative powers need an invertible element.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Image under ζ ↦ ζ^a.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.m as i64;
        let a = a.rem_euclid(m);
        if gcd(a as u64, self.m) != 1 {
            return invalid(format!("{a} is not a unit modulo {m}"));
        }
        Ok(self.map_exponents(a as u64))
    }

    /// Substitutes ζ ↦ ζ^a for any `a` (not necessarily a unit), keeping the
    /// modulus. Used internally for lifting and automorphisms.
    fn map_exponents(&self, a: u64) -> Self {
        let m = self.m;
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[((i as u64 * a) % m) as usize] += c;
            }
        }
        Self::from_exponent_coeffs(m, v, self.den.clone())
    }

    /// Complex conjugate ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> Self {
        if self.m <= 2 {
            return self.clone();
        }
        self.map_exponents(self.m - 1)
    }

    /// x + x̄.
    pub fn trace_conj(&self) -> Self {
        self + &self.conj()
    }

    /// x − x̄.
    pub fn antitrace(&self) -> Self {
        self - &self.conj()
    }

    /// x·x̄, the norm to the maximal real subfield.
    pub fn rel_norm_real(&self) -> Self {
        self * &self.conj()
    }

    /// True when the element is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Re-expresses the element at modulus `big`, a multiple of `m`.
    pub fn lift(&self, big: u64) -> Result<Self> {
        if big % self.m != 0 {
            return invalid(format!("{} does not divide {big}", self.m));
        }
        let step = big / self.m;
        let mut v = vec![BigInt::zero(); (self.num.len() as u64 * step) as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step as usize] = c.clone();
        }
        Ok(Self::from_exponent_coeffs(big, v, self.den.clone()))
    }

    /// Absolute norm N_{ℚ(ζ_m)/ℚ}(x); zero for zero.
    pub fn abs_norm(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let n = norm::norm_int(self.m, self.num.clone());
        BigRational::new(n, self.den.pow(self.num.len() as u32))
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return invalid("inverse of zero");
        }
        let (v, d) = norm::inverse_int(self.m, self.num.clone());
        // x = num/den, so x⁻¹ = den·v/d
        let v = v.into_iter().map(|c| c * &self.den).collect();
        Ok(Self::normalized(self.m, v, d))
    }

    /// Exact quotient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.assert_same(other);
        Ok(self * &other.inverse()?)
    }

    /// Absolute value of the norm is a power of 2 (units of ℤ[ζ_m, 1/2]
    /// among integral-at-odd-primes elements).
    pub fn has_two_power_norm(&self) -> bool {
        !self.is_zero() && two_power_exponent(&self.abs_norm()).is_some()
    }
}

/// Applies ζ ↦ ζ^a, or forms the conjugation trace or antitrace.
pub fn galois_conj_trace(x: &CycNum, a: i64, mode: GaloisMode) -> Result<CycNum> {
    match mode {
        GaloisMode::Apply => x.galois(a),
        GaloisMode::Trace => Ok(x.trace_conj()),
        GaloisMode::Antitrace => Ok(x.antitrace()),
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.assert_same(rhs);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycNum::normalized(self.m, num, &self.den * &rhs.den)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            m: self.m,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.assert_same(rhs);
        let prod = poly_mul(&self.num, &rhs.num);
        CycNum::from_exponent_coeffs(self.m, prod, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    /// Canonical form `c0 + c1*z + c2*z^2 (mod Phi_m)`, nonzero terms only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.num.len() {
            if self.num[i].is_zero() {
                continue;
            }
            let c = crate::util::fmt_rational(&self.coeff(i));
            terms.push(match i {
                0 => c,
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} (mod Phi_{})", terms.join(" + "), self.m)
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Parses the canonical form; terms may appear in any order and repeat.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse cyclotomic number: {s}"));
        let (body, modpart) = s.rsplit_once("(mod Phi_").ok_or_else(bad)?;
        let m: u64 = modpart
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in body.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (c, e) = match term.split_once("*z") {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            let q = crate::util::parse_rational(c).ok_or_else(bad)?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigRational::zero());
            }
            coeffs[e] += q;
        }
        Ok(CycNum::from_rationals(m, &coeffs))
    }
}

/// The named generators used by the ladders and bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// p_n = 2 + ζ + ζ^{−1} for n = 2^s.
    PN,
    /// p'_n = 1 + ζ + ζ^{−1} for n = 3·2^s.
    PPrime,
    /// u₊ = 2 + ζ + ζ^{−1} for n = 3·2^s.
    UPlus,
}

/// A named element with its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialElement {
    /// Which generator.
    pub kind: SpecialKind,
    /// Its value at modulus n.
    pub value: CycNum,
}

/// Kind of modulus in the two families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NKind {
    /// n = 2^s.
    Pow2 { s: u32 },
    /// n = 3·2^s.
    ThreePow2 { s: u32 },
}

/// Classifies `n` as 2^s (s ≥ 1) or 3·2^s (s ≥ 1).
pub fn classify_n(n: u64) -> Option<NKind> {
    if n >= 2 && n.is_power_of_two() {
        Some(NKind::Pow2 {
            s: n.trailing_zeros(),
        })
    } else if n % 3 == 0 && n >= 6 && (n / 3).is_power_of_two() {
        Some(NKind::ThreePow2 {
            s: (n / 3).trailing_zeros(),
        })
    } else {
        None
    }
}

/// Builds p_n, p'_n or u₊ at modulus `n`.
pub fn special(kind: SpecialKind, n: u64) -> Result<SpecialElement> {
    let c = &CycNum::zeta(n) + &CycNum::zeta_pow(n, -1);
    let value = match (kind, classify_n(n)) {
        (SpecialKind::PN, Some(NKind::Pow2 { s })) if s >= 2 => &c + &CycNum::integer(n, 2),
        (SpecialKind::PPrime, Some(NKind::ThreePow2 { .. })) => &c + &CycNum::one(n),
        (SpecialKind::UPlus, Some(NKind::ThreePow2 { .. })) => &c + &CycNum::integer(n, 2),
        _ => return invalid(format!("{kind:?} is not defined for n = {n}")),
    };
    Ok(SpecialElement { kind, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, k: i64) -> CycNum {
        CycNum::zeta_pow(m, k)
    }

    #[test]
    fn canonical_reduction() {
        assert_eq!(z(8, 4), CycNum::integer(8, -1));
        assert_eq!(z(8, 8), CycNum::one(8));
        // ζ_12^4 = ζ_12^2 − 1
        assert_eq!(z(12, 4), &z(12, 2) - &CycNum::one(12));
        assert_eq!(&z(7, 3) * &z(7, 5), z(7, 1));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let x = CycNum::from_rationals(
            12,
            &[
                BigRational::new(1.into(), 2.into()),
                BigRational::zero(),
                BigRational::from_integer((-3).into()),
            ],
        );
        let s = x.to_string();
        assert_eq!(s, "1/2 + -3*z^2 (mod Phi_12)");
        assert_eq!(s.parse::<CycNum>().unwrap(), x);
        assert_eq!("0 (mod Phi_5)".parse::<CycNum>().unwrap(), CycNum::zero(5));
        assert!("1 + z".parse::<CycNum>().is_err());
    }

    #[test]
    fn norms_of_one_plus_minus_zeta() {
        let norm = |m: u64, sign: i64| {
            (&CycNum::one(m) + &CycNum::zeta(m).scale(&BigRational::from_integer(sign.into())))
                .abs_norm()
        };
        let q = |k: i64| BigRational::from_integer(k.into());
        assert_eq!(norm(10, 1), q(5));
        assert_eq!(norm(9, -1), q(3));
        assert_eq!(norm(12, -1), q(1));
        assert_eq!(norm(12, 1), q(1));
        assert_eq!(norm(16, 1), q(2));
        assert_eq!(norm(16, -1), q(2));
        assert_eq!(norm(24, 1), q(1));
        assert_eq!(norm(7, -1), q(7));
    }

    #[test]
    fn rel_norm_of_one_plus_zeta8_is_p8() {
        let x = &CycNum::one(8) + &z(8, 1);
        let p8 = special(SpecialKind::PN, 8).unwrap().value;
        assert_eq!(x.rel_norm_real(), p8);
        assert!(p8.is_real());
        assert_eq!(z(20, 3).rel_norm_real(), CycNum::one(20));
    }

    #[test]
    fn antitrace_examples() {
        let n = 16;
        let zeta = z(n, 1);
        let zinv = z(n, -1);
        assert_eq!(zeta.antitrace(), &zeta - &zinv);
        let c = &zeta + &zinv;
        assert!(c.antitrace().is_zero());
        for k in 0..4 {
            let g = &c.pow(k) * &zeta;
            assert_eq!(g.antitrace(), &c.pow(k) * &(&zeta - &zinv));
        }
        assert!(z(15, 3).galois(5).is_err());
        assert_eq!(
            galois_conj_trace(&zeta, 3, GaloisMode::Apply).unwrap(),
            z(n, 3)
        );
    }

    #[test]
    fn inverse_and_lift() {
        for m in [8u64, 12, 15, 16, 24, 48, 9, 7, 1, 2, 6] {
            let x = CycNum::from_i64s(m, &[3, -1, 2, 0, 5, 1]);
            let inv = x.inverse().unwrap();
            assert!((&x * &inv).is_one(), "m = {m}");
        }
        let x = CycNum::from_i64s(8, &[1, 2, 3]);
        let y = x.lift(24).unwrap();
        assert_eq!(y.abs_norm(), x.abs_norm().pow(2));
        assert!(x.lift(12).is_err());
    }

    #[test]
    fn special_elements() {
        assert_eq!(
            special(SpecialKind::PN, 8).unwrap().value.to_string(),
            "2 + 1*z + -1*z^3 (mod Phi_8)"
        );
        let pp = special(SpecialKind::PPrime, 12).unwrap().value;
        assert_eq!(pp.abs_norm(), BigRational::from_integer(4.into()));
        let up = special(SpecialKind::UPlus, 12).unwrap().value;
        assert_eq!(up, &pp + &CycNum::one(12));
        assert!(special(SpecialKind::PN, 12).is_err());
        assert!(special(SpecialKind::UPlus, 16).is_err());
    }
}
