//! Cyclotomic polynomials and dense integer polynomial products.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

use crate::util::{divisors, mobius};

/// A monic integer polynomial Φ_d, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    coeffs: Vec<i64>,
    /// Nonzero `(index, coeff)` pairs below the leading term.
    tail: Vec<(usize, i64)>,
}

impl CycPoly {
    /// Coefficients in ascending degree; the last one is the leading 1.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree, equal to φ(d).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Nonzero lower-order terms.
    pub fn tail(&self) -> &[(usize, i64)] {
        &self.tail
    }

    /// Exact value at an integer point.
    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &x + BigInt::from(c))
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<CycPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns Φ_d, memoized. Concurrent callers may compute the same entry
/// twice; both results are identical.
pub fn cyclotomic_poly(d: u64) -> Arc<CycPoly> {
    assert!(d >= 1, "cyclotomic_poly: d must be positive");
    if let Some(p) = cache().lock().expect("poly cache poisoned").get(&d) {
        return p.clone();
    }
    let p = Arc::new(compute(d));
    cache()
        .lock()
        .expect("poly cache poisoned")
        .entry(d)
        .or_insert(p)
        .clone()
}

fn compute(d: u64) -> CycPoly {
    // Φ_d = ∏_{e | d} (x^e − 1)^{μ(d/e)}
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for e in divisors(d) {
        match mobius(d / e) {
            1 => {
                let e = e as usize;
                let mut next = vec![0i128; num.len() + e];
                for (i, &c) in num.iter().enumerate() {
                    next[i + e] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(e as usize),
            _ => {}
        }
    }
    for e in dens {
        // divide by x^e − 1: p = q·(x^e − 1) gives q[i] = q[i−e] − p[i]
        let qlen = num.len() - e;
        let mut q = vec![0i128; qlen];
        for i in 0..qlen {
            let prev = if i >= e { q[i - e] } else { 0 };
            q[i] = prev - num[i];
        }
        num = q;
    }
    let coeffs: Vec<i64> = num
        .iter()
        .map(|&c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let deg = coeffs.len() - 1;
    let tail = coeffs[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    CycPoly { coeffs, tail }
}

/// Reduces a coefficient vector (indices already below `m`) modulo Φ_m and
/// truncates to length φ(m).
pub(crate) fn reduce_mod_phi(v: &mut Vec<BigInt>, m: u64) {
    let p = cyclotomic_poly(m);
    let deg = p.degree();
    if v.len() > deg {
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            let base = i - deg;
            for &(j, a) in p.tail() {
                match a {
                    1 => v[base + j] -= &c,
                    -1 => v[base + j] += &c,
                    _ => v[base + j] -= &c * a,
                }
            }
        }
    }
    v.resize(deg, BigInt::zero());
}

/// Folds exponents modulo `m`: coefficient of ζ^i moves to ζ^{i mod m}.
pub(crate) fn fold_exponents(v: Vec<BigInt>, m: u64) -> Vec<BigInt> {
    let m = m as usize;
    if v.len() <= m {
        return v;
    }
    let mut out = vec![BigInt::zero(); m];
    for (i, c) in v.into_iter().enumerate() {
        if !c.is_zero() {
            out[i % m] += c;
        }
    }
    out
}

const KRONECKER_MIN: usize = 40;

/// Product of two dense integer polynomials.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KRONECKER_MIN {
        return schoolbook(a, b);
    }
    kronecker(a, b)
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Packs coefficients into 32-bit slots of width `w` words, splitting by sign.
fn pack(v: &[BigInt], w: usize) -> BigInt {
    let mut pos = vec![0u32; v.len() * w];
    let mut neg = vec![0u32; v.len() * w];
    for (i, c) in v.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let dst = if sign == Sign::Minus {
            &mut neg
        } else {
            &mut pos
        };
        dst[i * w..i * w + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos))
        - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

/// Unpacks balanced base-2^{32w} digits.
fn unpack(p: &BigInt, w: usize, len: usize) -> Vec<BigInt> {
    let negative = p.is_negative();
    let digits = p.magnitude().to_u32_digits();
    let half = BigUint::from(1u32) << (32 * w - 1);
    let full = BigInt::from(1u32) << (32 * w);
    let mut out = Vec::with_capacity(len);
    let mut carry = false;
    for i in 0..len {
        let lo = (i * w).min(digits.len());
        let hi = ((i + 1) * w).min(digits.len());
        let mut chunk = BigUint::from_slice(&digits[lo..hi]);
        if carry {
            chunk += 1u32;
        }
        let c = if chunk >= half {
            carry = true;
            BigInt::from_biguint(Sign::Plus, chunk) - &full
        } else {
            carry = false;
            BigInt::from_biguint(Sign::Plus, chunk)
        };
        out.push(if negative { -c } else { c });
    }
    out
}

fn kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len() + b.len() - 1;
    let bound = max_bits(a) + max_bits(b) + (a.len().min(b.len()) as u64).ilog2() as u64 + 3;
    let w = bound.div_ceil(32) as usize;
    let pa = pack(a, w);
    let pb = pack(b, w);
    unpack(&(pa * pb), w, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::euler_phi;
    use num_traits::One;

    fn poly_from(c: &[i64]) -> Vec<i64> {
        c.to_vec()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1).coeffs(), &poly_from(&[-1, 1])[..]);
        assert_eq!(cyclotomic_poly(2).coeffs(), &poly_from(&[1, 1])[..]);
        assert_eq!(
            cyclotomic_poly(8).coeffs(),
            &poly_from(&[1, 0, 0, 0, 1])[..]
        );
        assert_eq!(
            cyclotomic_poly(12).coeffs(),
            &poly_from(&[1, 0, -1, 0, 1])[..]
        );
        assert_eq!(
            cyclotomic_poly(9).coeffs(),
            &poly_from(&[1, 0, 0, 1, 0, 0, 1])[..]
        );
    }

    #[test]
    fn degree_is_phi() {
        for d in 1..200u64 {
            assert_eq!(cyclotomic_poly(d).degree() as u64, euler_phi(d));
        }
    }

    #[test]
    fn product_over_divisors_is_x_m_minus_1() {
        for m in [1u64, 6, 12, 30, 48, 105] {
            let mut prod = vec![BigInt::one()];
            for d in divisors(m) {
                let p: Vec<BigInt> = cyclotomic_poly(d)
                    .coeffs()
                    .iter()
                    .map(|&c| c.into())
                    .collect();
                prod = poly_mul(&prod, &p);
            }
            let mut expect = vec![BigInt::zero(); m as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect, "m = {m}");
        }
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: Vec<BigInt> = (0..97)
            .map(|i| BigInt::from((i * 7919 % 1013) as i64 - 500) << (i % 70))
            .collect();
        let b: Vec<BigInt> = (0..61)
            .map(|i| BigInt::from((i * 104729 % 2027) as i64 - 1000))
            .collect();
        assert_eq!(kronecker(&a, &b), schoolbook(&a, &b));
        let neg: Vec<BigInt> = a.iter().map(|x| -x).collect();
        assert_eq!(kronecker(&neg, &b), schoolbook(&neg, &b));
    }

    #[test]
    fn reduce_by_phi8() {
        // ζ^4 = −1 mod Φ_8
        let mut v: Vec<BigInt> = [0, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        reduce_mod_phi(&mut v, 8);
        assert_eq!(
            v,
            vec![
                BigInt::from(-1),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero()
            ]
        );
    }
}
