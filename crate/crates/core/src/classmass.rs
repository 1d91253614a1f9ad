//! Relative class numbers, ζ_F(−1), Eichler masses and the class-number
//! ladders of the quadratic orders.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chars::{bernoulli, enumerate_orbits, BernoulliKind, CharFilter, Parity};
use crate::cyclo::{classify_n, NKind};
use crate::error::{inconsistent, invalid, Result};
use crate::orders::{root_of_unity_content, LadderFamily, LadderOrder};
use crate::util::{euler_phi, pow2};

/// The CM fields whose relative class numbers enter the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldFamily {
    /// K_s = ℚ(ζ_{2^s}).
    KPow2(u32),
    /// ℚ(ζ_{3·2^s}).
    K3Pow2(u32),
    /// F_s(√−3), with F_s the real subfield of ℚ(ζ_{2^s}).
    SqrtMinus3(u32),
    /// F_s(√−p_s).
    SqrtMinusP(u32),
    /// F(√−u₊), with F the real subfield of ℚ(ζ_{3·2^s}).
    SqrtMinusUPlus(u32),
}

impl FieldFamily {
    /// Parameter s.
    pub fn s(&self) -> u32 {
        match *self {
            FieldFamily::KPow2(s)
            | FieldFamily::K3Pow2(s)
            | FieldFamily::SqrtMinus3(s)
            | FieldFamily::SqrtMinusP(s)
            | FieldFamily::SqrtMinusUPlus(s) => s,
        }
    }

    /// Smallest supported s.
    pub fn min_s(&self) -> u32 {
        match self {
            FieldFamily::KPow2(_) => 2,
            FieldFamily::SqrtMinus3(_) | FieldFamily::SqrtMinusP(_) => 3,
            FieldFamily::K3Pow2(_) | FieldFamily::SqrtMinusUPlus(_) => 2,
        }
    }

    /// Checks the range of s (at most 20 keeps the moduli in `u64` tables).
    pub fn validate(&self) -> Result<()> {
        let s = self.s();
        if s < self.min_s() || s > 20 {
            return invalid(format!("{self:?}: s must lie in {}..=20", self.min_s()));
        }
        Ok(())
    }

    /// Conductor N of the field: it lies in ℚ(ζ_N).
    pub fn modulus(&self) -> u64 {
        let p = |k: u32| 1u64 << k;
        match *self {
            FieldFamily::KPow2(s) => p(s),
            FieldFamily::K3Pow2(s) | FieldFamily::SqrtMinus3(s) => 3 * p(s),
            FieldFamily::SqrtMinusP(s) => p(s + 1),
            FieldFamily::SqrtMinusUPlus(s) => 3 * p(s + 1),
        }
    }

    /// Residues mod N on which every character of the field is trivial;
    /// they generate the Galois group of ℚ(ζ_N) over the field.
    pub fn kernel(&self) -> Vec<u64> {
        let p = |k: u32| 1u64 << k;
        match *self {
            FieldFamily::KPow2(_) | FieldFamily::K3Pow2(_) => vec![],
            // ≡ −1 mod 2^s and ≡ 1 mod 3
            FieldFamily::SqrtMinus3(s) => {
                let n = 3 * p(s);
                vec![(0..n)
                    .find(|&a| a % p(s) == p(s) - 1 && a % 3 == 1)
                    .expect("CRT")]
            }
            FieldFamily::SqrtMinusP(s) => vec![p(s) - 1],
            FieldFamily::SqrtMinusUPlus(s) => vec![3 * p(s) - 1],
        }
    }

    /// Unit index Q and number of roots of unity w.
    pub fn q_w(&self) -> (u64, u64) {
        match *self {
            FieldFamily::KPow2(s) => (1, 1 << s),
            FieldFamily::SqrtMinus3(_) => (1, 6),
            FieldFamily::SqrtMinusP(_) => (1, 2),
            FieldFamily::K3Pow2(s) => (2, 3 << s),
            FieldFamily::SqrtMinusUPlus(_) => (2, 2),
        }
    }

    /// Short name used by the CLI.
    pub fn cli_name(&self) -> &'static str {
        match self {
            FieldFamily::KPow2(_) => "pow2",
            FieldFamily::K3Pow2(_) => "3pow2",
            FieldFamily::SqrtMinus3(_) => "sqrt3",
            FieldFamily::SqrtMinusP(_) => "sqrtp",
            FieldFamily::SqrtMinusUPlus(_) => "sqrtuplus",
        }
    }

    /// Inverse of [`FieldFamily::cli_name`].
    pub fn from_cli(name: &str, s: u32) -> Result<Self> {
        Ok(match name {
            "pow2" => FieldFamily::KPow2(s),
            "3pow2" => FieldFamily::K3Pow2(s),
            "sqrt3" => FieldFamily::SqrtMinus3(s),
            "sqrtp" => FieldFamily::SqrtMinusP(s),
            "sqrtuplus" => FieldFamily::SqrtMinusUPlus(s),
            _ => return invalid(format!("unknown family {name}")),
        })
    }
}

fn half_neg() -> BigRational {
    BigRational::new((-1).into(), 2.into())
}

/// h⁻ = Q·w·∏_{χ odd}(−B_{1,χ}/2), one exact norm per Galois orbit.
pub fn h_minus(fam: FieldFamily) -> Result<BigInt> {
    fam.validate()?;
    let (q, w) = fam.q_w();
    let orbits = enumerate_orbits(
        fam.modulus(),
        &CharFilter::OfSubfield(fam, Some(Parity::Odd)),
    )?;
    let mut acc = BigRational::from_integer(BigInt::from(q * w));
    for (ch, size) in &orbits {
        let b = bernoulli(&ch.primitive(), BernoulliKind::B1)?;
        acc *= b.orbit_product() * half_neg().pow(*size as i32);
    }
    if !acc.is_integer() || !acc.is_positive() {
        return inconsistent(format!("h⁻ for {fam:?} came out as {acc}"));
    }
    Ok(acc.to_integer())
}

/// ζ_F(−1) for the real subfield F of ℚ(ζ_n), as ∏_{χ even}(−B_{2,χ}/2).
pub fn zeta_minus_one_real_subfield(n: u64) -> Result<BigRational> {
    if n == 0 {
        return invalid("modulus must be positive");
    }
    let orbits = enumerate_orbits(n, &CharFilter::Even)?;
    let mut acc = BigRational::one();
    for (ch, size) in &orbits {
        let b = bernoulli(&ch.primitive(), BernoulliKind::B2)?;
        acc *= b.orbit_product() * half_neg().pow(*size as i32);
    }
    Ok(acc)
}

/// The two families of moduli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// n = 2^s.
    Pow2,
    /// n = 3·2^s.
    ThreePow2,
}

impl Family {
    /// n for a given s.
    pub fn n(&self, s: u32) -> u64 {
        match self {
            Family::Pow2 => 1 << s,
            Family::ThreePow2 => 3 << s,
        }
    }

    /// CLI spelling.
    pub fn cli_name(&self) -> &'static str {
        match self {
            Family::Pow2 => "pow2",
            Family::ThreePow2 => "3pow2",
        }
    }
}

/// ζ_{F_s}(−1) for n = 2^s or 3·2^s.
pub fn zeta_minus_one(s: u32, family: Family) -> Result<BigRational> {
    if !(2..=20).contains(&s) {
        return invalid("s must lie in 2..=20");
    }
    zeta_minus_one_real_subfield(family.n(s))
}

/// Exact masses and the identities derived from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassReport {
    /// The modulus n.
    pub n: u64,
    /// [F_n : ℚ].
    pub degree: u64,
    /// ζ_{F_n}(−1).
    pub zeta_minus_one: BigRational,
    /// M_n = 2^{1−[F_n:ℚ]}|ζ_{F_n}(−1)|.
    pub mass: BigRational,
    /// VM(gr_n) = 2M_n.
    pub vm_gr: BigRational,
    /// EM(gr_n) = 3M_n.
    pub em_gr: BigRational,
    /// VM(ḡr_n) = M_n.
    pub vm_gr_bar: BigRational,
    /// EM(ḡr_n) = 3M_n/2.
    pub em_gr_bar: BigRational,
    /// χ(PSU₂(R_n)) = −M_n.
    pub euler_psu: BigRational,
    /// χ(PU₂(R_n)) = −M_n/2.
    pub euler_pu: BigRational,
}

/// Checks that n = 2^s or 3·2^s with n ≥ 8.
pub fn supported_n(n: u64) -> Result<NKind> {
    match classify_n(n) {
        Some(k) if n >= 8 => Ok(k),
        _ => invalid(format!("n = {n} is not 2^s or 3·2^s with n ≥ 8")),
    }
}

/// The exact mass M_n.
pub fn mass(n: u64) -> Result<BigRational> {
    supported_n(n)?;
    let z = zeta_minus_one_real_subfield(n)?;
    let degree = euler_phi(n) / 2;
    Ok(z.abs() / BigRational::from_integer(pow2(degree - 1)))
}

/// Eichler mass M_n with the graph and Euler-characteristic identities.
pub fn eichler_mass(n: u64) -> Result<MassReport> {
    supported_n(n)?;
    let zeta = zeta_minus_one_real_subfield(n)?;
    let degree = euler_phi(n) / 2;
    let m = zeta.abs() / BigRational::from_integer(pow2(degree - 1));
    let k = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    Ok(MassReport {
        n,
        degree,
        zeta_minus_one: zeta,
        vm_gr: &m * k(2, 1),
        em_gr: &m * k(3, 1),
        vm_gr_bar: m.clone(),
        em_gr_bar: &m * k(3, 2),
        euler_psu: -m.clone(),
        euler_pu: -&m * k(1, 2),
        mass: m,
    })
}

/// Class number of a ladder order from the class numbers of the ambient
/// field: `h_field = h⁺·h⁻` of ℚ(ζ_{2^s}) for Ok and of ℚ(ζ_{3·2^s}) for
/// Opk and T.
pub fn ladder_class_number(ord: &LadderOrder, h_field: &BigInt) -> Result<BigInt> {
    ord.validate()?;
    let (s, k) = (ord.s as i64, ord.k as i64);
    let value = match ord.family {
        LadderFamily::Ok => {
            let w = root_of_unity_content(ord)? as i64;
            scale_pow2(h_field, k - s + w)?
        }
        LadderFamily::Opk => {
            if k <= 1 {
                h_field.clone()
            } else {
                let w = root_of_unity_content(ord)? as i64;
                scale_pow2(h_field, k - s + w - 2)?
            }
        }
        LadderFamily::T => {
            let num: BigInt = h_field * (BigInt::from(3).pow(1u32 << (ord.s - 2)) - 1);
            let den: BigInt = pow2(ord.s as u64);
            if !(&num % &den).is_zero() {
                return inconsistent(format!("h(T) for s = {} is not an integer", ord.s));
            }
            num / den
        }
    };
    Ok(value)
}

fn scale_pow2(h: &BigInt, e: i64) -> Result<BigInt> {
    if e < 0 {
        return inconsistent(format!("negative ladder exponent {e}"));
    }
    Ok(h * pow2(e as u64))
}

/// Unit index [O_max^× : O^×] of a ladder order.
pub fn unit_index(ord: &LadderOrder) -> Result<BigInt> {
    ord.validate()?;
    let s = ord.s as u64;
    Ok(match ord.family {
        LadderFamily::Ok => pow2(s - root_of_unity_content(ord)? as u64),
        LadderFamily::Opk => match ord.k {
            0 => BigInt::one(),
            1 => BigInt::from(3),
            _ => BigInt::from(3) * pow2(s - root_of_unity_content(ord)? as u64 + 1),
        },
        LadderFamily::T => pow2(s),
    })
}
