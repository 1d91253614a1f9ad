//! The ladders of quadratic orders O_k ⊂ ℚ(ζ_{2^s}) and O'_k, T ⊂
//! ℚ(ζ_{3·2^s}) over the real subfield, described by family and parameters.
//!
//! Membership uses the antitrace criterion: an integral x lies in the
//! order of conductor I exactly when ATr(x) ∈ I·ATr(O_L). Here
//! ATr(O_L) = (ζ − ζ̄)·O_F, so the test reduces to r = ATr(x)/(ζ − ζ̄)
//! lying in I, with I generated by c = ζ + ζ̄, p' = 1 + ζ + ζ̄ or √3.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{special, CycNum, SpecialKind};
use crate::error::{invalid, Result};
use crate::util::ceil_log2;

/// Which ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LadderFamily {
    /// O_k = O_F[i, (ζ+ζ⁻¹)^k ζ] in ℚ(ζ_{2^s}), 0 ≤ k < 2^{s−2}.
    Ok,
    /// O'_k in ℚ(ζ_{3·2^s}) with conductor 𝔓'^k, 0 ≤ k ≤ 2^{s−1}.
    Opk,
    /// T in ℚ(ζ_{3·2^s}) with conductor above 3.
    T,
}

/// A ladder order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderOrder {
    /// Family.
    pub family: LadderFamily,
    /// Parameter s.
    pub s: u32,
    /// Ladder index (ignored for T).
    pub k: u64,
}

/// Conductor of a ladder order as a prime power of the real subfield.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conductor {
    /// 𝔓^{e} with 𝔓 = (1 − ζ) over 2 in ℚ(ζ_{2^s}); e = 2k.
    P2 { exponent: u64 },
    /// 𝔓'^{k}, generated by p' = 1 + ζ + ζ̄.
    PPrime { exponent: u64 },
    /// 𝔭'_3 = 𝔓'_3𝔓''_3, generated by √3.
    P3,
}

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conductor::P2 { exponent } => write!(f, "P^{exponent}"),
            Conductor::PPrime { exponent } => write!(f, "P'^{exponent}"),
            Conductor::P3 => write!(f, "p'_3"),
        }
    }
}

impl LadderOrder {
    /// Builds a ladder order without validating the range.
    pub fn new(family: LadderFamily, s: u32, k: u64) -> Self {
        LadderOrder { family, s, k }
    }

    /// The modulus n of the ambient cyclotomic field.
    pub fn n(&self) -> u64 {
        match self.family {
            LadderFamily::Ok => 1 << self.s,
            LadderFamily::Opk | LadderFamily::T => 3 << self.s,
        }
    }

    /// Range check of s and k.
    pub fn validate(&self) -> Result<()> {
        let s = self.s;
        match self.family {
            LadderFamily::Ok => {
                if !(3..=20).contains(&s) || self.k >= 1 << (s - 2) {
                    return invalid(format!(
                        "O_k needs s in 3..=20 and 0 ≤ k < 2^(s−2); got s = {s}, k = {}",
                        self.k
                    ));
                }
            }
            LadderFamily::Opk => {
                if !(2..=20).contains(&s) || self.k > 1 << (s - 1) {
                    return invalid(format!(
                        "O'_k needs s in 2..=20 and 0 ≤ k ≤ 2^(s−1); got s = {s}, k = {}",
                        self.k
                    ));
                }
            }
            LadderFamily::T => {
                if !(3..=20).contains(&s) {
                    return invalid(format!("T needs s in 3..=20; got {s}"));
                }
            }
        }
        Ok(())
    }

    /// Generator of the conductor ideal in O_F and its exponent.
    fn conductor_generator(&self) -> Result<(CycNum, u64)> {
        let n = self.n();
        Ok(match self.family {
            LadderFamily::Ok => (&CycNum::zeta(n) + &CycNum::zeta_pow(n, -1), self.k),
            LadderFamily::Opk => (special(SpecialKind::PPrime, n)?.value, self.k),
            LadderFamily::T => (CycNum::zeta_pow(12, 1).add_conj_lift(n)?, 1),
        })
    }
}

impl CycNum {
    /// ζ_12 + ζ_12⁻¹ = √3 re-expressed at modulus n.
    fn add_conj_lift(&self, n: u64) -> Result<CycNum> {
        self.trace_conj().lift(n)
    }
}

/// r = ATr(x)/(ζ − ζ̄), a real element, integral when x is.
pub fn antitrace_quotient(x: &CycNum) -> Result<CycNum> {
    let n = x.modulus();
    let d = &CycNum::zeta(n) - &CycNum::zeta_pow(n, -1);
    x.antitrace().div(&d)
}

/// Whether x lies in the ladder order.
pub fn order_membership(x: &CycNum, ord: &LadderOrder) -> Result<bool> {
    ord.validate()?;
    if x.modulus() != ord.n() {
        return invalid(format!(
            "element lives at modulus {}, order at {}",
            x.modulus(),
            ord.n()
        ));
    }
    if !x.is_integral() {
        return Ok(false);
    }
    let r = antitrace_quotient(x)?;
    let (g, e) = ord.conductor_generator()?;
    Ok(r.div(&g.pow(e))?.is_integral())
}

/// Largest w with ζ_{2^w} in the order, read off the membership ladder.
pub fn root_of_unity_content(ord: &LadderOrder) -> Result<u32> {
    ord.validate()?;
    if ord.family == LadderFamily::T {
        return invalid(
            "T contains exactly the sixth roots of unity; no 2-power content is defined",
        );
    }
    let n = ord.n();
    let s = ord.s;
    for w in (0..=s).rev() {
        let z = CycNum::zeta_pow(n, (n >> w) as i64);
        if order_membership(&z, ord)? {
            return Ok(w);
        }
    }
    Ok(0)
}

/// Closed form of the 2-power root-of-unity content: s − ⌈log₂(k+1)⌉ for
/// O_k and min(s, s + 1 − ⌈log₂ k⌉) for O'_k.
pub fn root_of_unity_content_closed(ord: &LadderOrder) -> Result<u32> {
    ord.validate()?;
    Ok(match ord.family {
        LadderFamily::Ok => ord.s - ceil_log2(ord.k + 1),
        LadderFamily::Opk => {
            if ord.k <= 1 {
                ord.s
            } else {
                (ord.s + 1 - ceil_log2(ord.k)).min(ord.s)
            }
        }
        LadderFamily::T => return invalid("no 2-power content for T"),
    })
}

/// The conductor of a ladder order.
pub fn conductor(ord: &LadderOrder) -> Result<Conductor> {
    ord.validate()?;
    Ok(match ord.family {
        LadderFamily::Ok => Conductor::P2 {
            exponent: 2 * ord.k,
        },
        LadderFamily::Opk => Conductor::PPrime { exponent: ord.k },
        LadderFamily::T => Conductor::P3,
    })
}

/// Which quadratic field an element generates over the real subfield.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadField {
    /// The cyclotomic field K_n itself.
    K,
    /// F(√−p_s), n = 2^s.
    SqrtMinusP,
    /// F(√−u₊), n = 3·2^s.
    SqrtMinusUPlus,
}

/// Order generated over O_F by the element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratedOrder {
    /// The maximal order.
    Maximal,
    /// O'_j, the order of conductor 𝔓'^j.
    OPrime(u64),
    /// Conductor outside the ladders considered here.
    Other,
}

/// Outcome of [`classify_quadratic_context`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadContext {
    /// Relative norm p_n, n = 2^s.
    Inverting {
        field: QuadField,
        order: GeneratedOrder,
    },
    /// Relative norm u₊, n = 3·2^s.
    Ramifying {
        field: QuadField,
        order: GeneratedOrder,
    },
    /// Norm matches neither.
    Neither,
}

/// An element of a CM quadratic extension of F_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaDescriptor {
    /// γ ∈ K_n given by its cyclotomic coordinates.
    Cyclotomic(CycNum),
    /// γ = a + b√−d with a, b, d real elements of F_n and d totally positive.
    Abstract { a: CycNum, b: CycNum, d: CycNum },
}

fn is_unit_integral(x: &CycNum) -> bool {
    x.is_integral()
        && !x.is_zero()
        && x.abs_norm().numer().magnitude() == &num_bigint::BigUint::from(1u32)
}

/// Classifies γ by its relative norm to F_n.
pub fn classify_quadratic_context(gamma: &GammaDescriptor, n: u64) -> Result<QuadContext> {
    let kind = crate::classmass::supported_n(n)?;
    let target = match kind {
        crate::cyclo::NKind::Pow2 { .. } => special(SpecialKind::PN, n)?.value,
        crate::cyclo::NKind::ThreePow2 { .. } => special(SpecialKind::UPlus, n)?.value,
    };
    let inverting = matches!(kind, crate::cyclo::NKind::Pow2 { .. });
    let wrap = |field, order| {
        if inverting {
            QuadContext::Inverting { field, order }
        } else {
            QuadContext::Ramifying { field, order }
        }
    };
    match gamma {
        GammaDescriptor::Cyclotomic(g) => {
            if g.modulus() != n {
                return invalid(format!("γ lives at modulus {}, expected {n}", g.modulus()));
            }
            if g.rel_norm_real() != target {
                return Ok(QuadContext::Neither);
            }
            let r = antitrace_quotient(g)?;
            let order = if is_unit_integral(&r) {
                GeneratedOrder::Maximal
            } else if !inverting {
                let pp = special(SpecialKind::PPrime, n)?.value;
                let mut j = 0u64;
                let mut cur = r.clone();
                loop {
                    if is_unit_integral(&cur) {
                        break GeneratedOrder::OPrime(j);
                    }
                    let next = cur.div(&pp)?;
                    if !next.is_integral() || j > 64 {
                        break GeneratedOrder::Other;
                    }
                    cur = next;
                    j += 1;
                }
            } else {
                GeneratedOrder::Other
            };
            Ok(wrap(QuadField::K, order))
        }
        GammaDescriptor::Abstract { a, b, d } => {
            for v in [a, b, d] {
                if v.modulus() != n || !v.is_real() {
                    return invalid("a, b, d must be real elements at modulus n");
                }
            }
            let norm = &(a * a) + &(&(b * b) * d);
            if norm != target {
                return Ok(QuadContext::Neither);
            }
            let field = if *d == target {
                if inverting {
                    QuadField::SqrtMinusP
                } else {
                    QuadField::SqrtMinusUPlus
                }
            } else {
                return Ok(wrap(QuadField::K, GeneratedOrder::Other));
            };
            let order = if is_unit_integral(b) && a.is_integral() {
                GeneratedOrder::Maximal
            } else {
                GeneratedOrder::Other
            };
            Ok(wrap(field, order))
        }
    }
}

/// The antitrace images of the basis ζ^0..ζ^{φ−1} scaled into the
/// conductor, used to compare orders by their ATr images.
pub fn antitrace_image_signature(ord: &LadderOrder) -> Result<Vec<bool>> {
    let n = ord.n();
    let deg = crate::util::euler_phi(n) as i64;
    (0..deg)
        .map(|i| order_membership(&CycNum::zeta_pow(n, i), ord))
        .collect()
}

/// r/g^e for the conductor generator, exposed for diagnostics.
pub fn conductor_quotient(x: &CycNum, ord: &LadderOrder) -> Result<CycNum> {
    let r = antitrace_quotient(x)?;
    let (g, e) = ord.conductor_generator()?;
    r.div(&g.pow(e))
}
