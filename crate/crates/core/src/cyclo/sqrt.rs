//! Square roots in ℚ(ζ_m) and certified square testing of real units.
//!
//! Roots are found down the quadratic tower ℚ(ζ_m) ⊃ ℚ(ζ_{m/2}) for 4 | m:
//! writing x = E + ζ·O with E, O in the subfield and y = c + ζ·d, one has
//! E² − ζ²O² = (c² − ζ²d²)², so a root of that subfield element fixes c²
//! and then d. Every candidate is verified by squaring. Non-squares are
//! certified by a real embedding of negative sign or by a split prime
//! ℓ ≡ 1 (mod m) at which the element is a quadratic nonresidue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::norm::{from_odd_half, to_odd_half};
use super::positivity::embedding_signs;
use super::CycNum;
use crate::error::{invalid, Error, Result};
use crate::util::{factorize, gcd, is_prime, pow_mod, rational_sqrt};

/// Evidence that an element is not a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSquareCertificate {
    /// σ_a(u) < 0 for the real embedding indexed by `a`.
    NegativeEmbedding {
        /// The embedding ζ ↦ ζ^a.
        a: u64,
    },
    /// u(r) is a nonresidue modulo ℓ, where r is a root of Φ_m mod ℓ; the
    /// prime of the real subfield below (ℓ, ζ − r) is the witness.
    NonResidue {
        /// Split rational prime ℓ ≡ 1 (mod m).
        ell: u64,
        /// Root of Φ_m modulo ℓ.
        root: u64,
    },
}

/// Outcome of [`is_square_unit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareTest {
    /// An exact root in the real subfield.
    Square(CycNum),
    /// Not a square, with a certificate.
    NonSquare(NonSquareCertificate),
}

impl SquareTest {
    /// Whether the element is a square.
    pub fn is_square(&self) -> bool {
        matches!(self, SquareTest::Square(_))
    }
}

/// Even and odd parts at modulus m/2 for 4 | m.
fn split(x: &CycNum) -> (CycNum, CycNum) {
    let half = x.m / 2;
    let e = x.num.iter().step_by(2).cloned().collect();
    let o = x.num.iter().skip(1).step_by(2).cloned().collect();
    (
        CycNum::normalized(half, e, x.den.clone()),
        CycNum::normalized(half, o, x.den.clone()),
    )
}

/// c(ζ²) + ζ·d(ζ²) at modulus 2·c.m.
fn join(c: &CycNum, d: &CycNum) -> CycNum {
    let m = 2 * c.m;
    let mut num = vec![BigInt::zero(); c.num.len() + d.num.len()];
    let den = c.den.lcm(&d.den);
    for (i, v) in c.num.iter().enumerate() {
        num[2 * i] = v * (&den / &c.den);
    }
    for (i, v) in d.num.iter().enumerate() {
        num[2 * i + 1] = v * (&den / &d.den);
    }
    CycNum::normalized(m, num, den)
}

fn half(x: &CycNum) -> CycNum {
    x.scale(&BigRational::new(1.into(), 2.into()))
}

/// A square root of `x` in ℚ(ζ_m), if one exists. Supported moduli are
/// those whose odd part is 1 or 3.
pub fn sqrt_in_field(x: &CycNum) -> Result<Option<CycNum>> {
    let m = x.m;
    let odd = m >> m.trailing_zeros();
    if odd != 1 && odd != 3 {
        return invalid(format!(
            "square roots are implemented for m = 2^a or 3·2^a, not {m}"
        ));
    }
    Ok(sqrt_rec(x))
}

fn sqrt_rec(x: &CycNum) -> Option<CycNum> {
    let m = x.m;
    if x.is_zero() {
        return Some(x.clone());
    }
    if m <= 2 {
        return rational_sqrt(&x.coeff(0)).map(|q| CycNum::rational(m, q));
    }
    if m == 3 {
        return sqrt_zeta3(x);
    }
    if m % 4 != 0 {
        let y = CycNum::normalized(m / 2, to_odd_half(m, &x.num), x.den.clone());
        let r = sqrt_rec(&y)?;
        return Some(CycNum::normalized(m, from_odd_half(m / 2, &r.num), r.den));
    }
    let (e, o) = split(x);
    let y = CycNum::zeta(m / 2);
    if o.is_zero() {
        // x = E: either c² = E, d = 0, or c = 0 and ζ²d² = E
        if let Some(c) = sqrt_rec(&e) {
            return Some(join(&c, &CycNum::zero(m / 2)));
        }
        let d = sqrt_rec(&e.div(&y).ok()?)?;
        return Some(join(&CycNum::zero(m / 2), &d));
    }
    let n = &(&e * &e) - &(&y * &(&o * &o));
    let r = sqrt_rec(&n)?;
    for cand in [&e + &r, &e - &r] {
        let c2 = half(&cand);
        if c2.is_zero() {
            continue;
        }
        if let Some(c) = sqrt_rec(&c2) {
            let d = o.div(&c.scale(&BigRational::from_integer(2.into()))).ok()?;
            let root = join(&c, &d);
            if &root * &root == *x {
                return Some(root);
            }
        }
    }
    None
}

/// Square root in ℚ(ζ₃) = ℚ(√−3): x = P + Q√−3 with ζ₃ = (−1 + √−3)/2.
fn sqrt_zeta3(x: &CycNum) -> Option<CycNum> {
    let a = x.coeff(0);
    let b = x.coeff(1);
    let two = BigRational::from_integer(2.into());
    let p = &a - &b / &two;
    let q = &b / &two;
    let three = BigRational::from_integer(3.into());
    // √−3 = 1 + 2ζ₃
    let s3 = CycNum::from_i64s(3, &[1, 2]);
    let build = |c: &BigRational, d: &BigRational| &CycNum::rational(3, c.clone()) + &s3.scale(d);
    if q.is_zero() {
        if let Some(c) = rational_sqrt(&p) {
            return Some(CycNum::rational(3, c));
        }
        let d = rational_sqrt(&(-&p / &three))?;
        return Some(build(&BigRational::zero(), &d));
    }
    let r = rational_sqrt(&(&p * &p + &three * &q * &q))?;
    for c2 in [(&p + &r) / &two, (&p - &r) / &two] {
        if let Some(c) = rational_sqrt(&c2) {
            if c.is_zero() {
                continue;
            }
            let d = &q / (&two * &c);
            let root = build(&c, &d);
            if &root * &root == *x {
                return Some(root);
            }
        }
    }
    None
}

/// Smallest primitive m-th root of unity modulo the prime ℓ ≡ 1 (mod m).
fn primitive_root_of_unity(m: u64, ell: u64) -> u64 {
    let qs: Vec<u64> = factorize(m).into_iter().map(|(q, _)| q).collect();
    (2..ell)
        .map(|t| pow_mod(t, (ell - 1) / m, ell))
        .find(|&r| qs.iter().all(|&q| pow_mod(r, m / q, ell) != 1))
        .expect("a primitive root of unity exists modulo a split prime")
}

fn residue(c: &BigInt, ell: u64) -> u64 {
    c.mod_floor(&BigInt::from(ell))
        .to_u64()
        .expect("residue fits")
}

/// Legendre symbol of u(r) mod ℓ, or `None` if it vanishes.
fn legendre_at(u: &CycNum, ell: u64, r: u64) -> Option<i32> {
    let mut acc = 0u64;
    let mut pw = 1u64;
    for c in &u.num {
        acc = (acc + crate::util::mul_mod(residue(c, ell), pw, ell)) % ell;
        pw = crate::util::mul_mod(pw, r, ell);
    }
    let den = residue(&u.den, ell);
    if acc == 0 || den == 0 {
        return None;
    }
    // the denominator's symbol equals that of its inverse
    let v = crate::util::mul_mod(acc, den, ell);
    Some(if pow_mod(v, (ell - 1) / 2, ell) == 1 {
        1
    } else {
        -1
    })
}

const RESIDUE_PRIMES: usize = 6;

/// Decides whether the real unit `u` of ℤ[ζ_m, 1/2] is a square of a real
/// unit. Returns a root or a non-square certificate; never guesses.
pub fn is_square_unit(u: &CycNum) -> Result<SquareTest> {
    if !u.is_real() {
        return invalid("square test needs a conjugation-invariant element");
    }
    if !u.has_two_power_norm() {
        return invalid(format!("{u} is not a unit of the 2-localized ring"));
    }
    let m = u.m;
    // a square of a real number is positive everywhere
    if let Some(&(a, _)) = embedding_signs(u)?.iter().find(|(_, pos)| !pos) {
        return Ok(SquareTest::NonSquare(
            NonSquareCertificate::NegativeEmbedding { a },
        ));
    }
    // a totally positive u that is a square in ℚ(ζ_m) is a square of a real
    // element, since the other roots of t² = u are ±y
    let mm = m.max(2);
    let mut found = 0;
    let mut ell = mm + 1;
    while found < RESIDUE_PRIMES {
        if is_prime(ell) {
            found += 1;
            let r0 = primitive_root_of_unity(mm, ell);
            for k in 1..mm {
                if gcd(k, mm) != 1 {
                    continue;
                }
                let r = pow_mod(r0, k, ell);
                if legendre_at(u, ell, r) == Some(-1) {
                    return Ok(SquareTest::NonSquare(NonSquareCertificate::NonResidue {
                        ell,
                        root: r,
                    }));
                }
            }
        }
        ell += mm;
    }
    match sqrt_in_field(u)? {
        Some(y) => {
            let y = if y.is_real() {
                y
            } else {
                return Err(Error::InternalInconsistency(format!(
                    "non-real square root of {u}"
                )));
            };
            // normalize the sign so the first embedding is positive
            let positive = embedding_signs(&y)?
                .first()
                .map(|&(_, p)| p)
                .unwrap_or(true);
            Ok(SquareTest::Square(if positive { y } else { -y }))
        }
        None => Err(Error::Undecided(format!(
            "no root and no nonresidue found for {u}"
        ))),
    }
}

/// Checks a certificate against `u`.
pub fn check_certificate(u: &CycNum, cert: &NonSquareCertificate) -> Result<bool> {
    match *cert {
        NonSquareCertificate::NegativeEmbedding { a } => {
            Ok(embedding_signs(u)?.iter().any(|&(b, pos)| b == a && !pos))
        }
        NonSquareCertificate::NonResidue { ell, root } => {
            let m = u.m.max(2);
            let is_root = (ell - 1) % m == 0
                && is_prime(ell)
                && factorize(m)
                    .iter()
                    .all(|&(q, _)| pow_mod(root, m / q, ell) != 1)
                && pow_mod(root, m, ell) == 1;
            Ok(is_root && legendre_at(u, ell, root) == Some(-1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{special, SpecialKind};

    fn sqrt2(m: u64) -> CycNum {
        let k = (m / 8) as i64;
        &CycNum::zeta_pow(m, k) + &CycNum::zeta_pow(m, -k)
    }

    #[test]
    fn explicit_square() {
        let u = &CycNum::one(8) + &sqrt2(8);
        match is_square_unit(&(&u * &u)).unwrap() {
            SquareTest::Square(r) => assert!(r == u || r == -u.clone()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn p_n_is_not_a_square() {
        for s in 3..=6 {
            let n = 1u64 << s;
            let p = special(SpecialKind::PN, n).unwrap().value;
            let t = is_square_unit(&p).unwrap();
            let SquareTest::NonSquare(cert) = t else {
                panic!("p_{n} reported square")
            };
            assert!(check_certificate(&p, &cert).unwrap());
        }
    }

    #[test]
    fn u_plus_is_not_a_square() {
        for n in [12u64, 24, 48] {
            let u = special(SpecialKind::UPlus, n).unwrap().value;
            assert!(is_totally_positive_helper(&u));
            let t = is_square_unit(&u).unwrap();
            assert!(!t.is_square(), "n = {n}");
        }
    }

    fn is_totally_positive_helper(x: &CycNum) -> bool {
        crate::cyclo::is_totally_positive(x).unwrap()
    }

    #[test]
    fn non_units_rejected() {
        assert!(is_square_unit(&CycNum::integer(8, 3)).is_err());
        assert!(is_square_unit(&CycNum::zeta(8)).is_err());
    }

    #[test]
    fn field_roots() {
        for m in [3u64, 4, 6, 8, 12, 16, 24, 48] {
            let x = CycNum::from_i64s(m, &[2, -1, 3, 0, 1]);
            let r = sqrt_in_field(&(&x * &x)).unwrap().expect("square");
            assert_eq!(&r * &r, &x * &x, "m = {m}");
        }
        assert!(sqrt_in_field(&CycNum::zeta(8)).unwrap().is_none());
        assert!(sqrt_in_field(&CycNum::zeta(16)).unwrap().is_none());
        assert_eq!(
            sqrt_in_field(&CycNum::integer(8, 2))
                .unwrap()
                .map(|r| &r * &r),
            Some(CycNum::integer(8, 2))
        );
        assert!(sqrt_in_field(&CycNum::one(5)).is_err());
    }
}
