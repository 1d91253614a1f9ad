//! 2×2 matrices over R_n = ℤ[ζ_n, 1/2], the gates H and T_n, Hamilton
//! quaternions over the real subfield, the maps Ψ_n and φ_n, the two
//! maximal orders and the ramifying/inverting predicates.

use std::fmt;
use std::ops;

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{is_square_unit, special, CycNum, SpecialKind};
use crate::error::{inconsistent, invalid, Error, Result};

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn check_gate_modulus(n: u64) -> Result<()> {
    if n < 8 || n % 4 != 0 {
        return invalid(format!("gates need 4 | n and n ≥ 8, got {n}"));
    }
    Ok(())
}

/// √−1 = ζ_n^{n/4}.
pub fn sqrt_minus_one(n: u64) -> CycNum {
    CycNum::zeta_pow(n, (n / 4) as i64)
}

/// A 2×2 matrix [[a, b], [c, d]] over ℚ(ζ_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UMat2 {
    n: u64,
    e: [CycNum; 4],
}

impl UMat2 {
    /// Builds the matrix from entries at modulus n.
    pub fn new(n: u64, a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Result<Self> {
        for x in [&a, &b, &c, &d] {
            if x.modulus() != n {
                return invalid(format!(
                    "entry at modulus {} in a matrix over modulus {n}",
                    x.modulus()
                ));
            }
        }
        Ok(UMat2 { n, e: [a, b, c, d] })
    }

    /// Identity.
    pub fn identity(n: u64) -> Self {
        UMat2 {
            n,
            e: [
                CycNum::one(n),
                CycNum::zero(n),
                CycNum::zero(n),
                CycNum::one(n),
            ],
        }
    }

    /// diag(x, y).
    pub fn diag(x: CycNum, y: CycNum) -> Result<Self> {
        let n = x.modulus();
        UMat2::new(n, x, CycNum::zero(n), CycNum::zero(n), y)
    }

    /// Modulus.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[CycNum; 4] {
        &self.e
    }

    /// Determinant.
    pub fn det(&self) -> CycNum {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = &self.e;
        UMat2 {
            n: self.n,
            e: [a.conj(), c.conj(), b.conj(), d.conj()],
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, x: &CycNum) -> Self {
        UMat2 {
            n: self.n,
            e: self.e.clone().map(|v| &v * x),
        }
    }

    /// Whether every entry lies in R_n.
    pub fn is_over_rn(&self) -> bool {
        self.e.iter().all(CycNum::is_dyadic)
    }

    /// Whether A·A* = I.
    pub fn is_unitary(&self) -> bool {
        (self * &self.adjoint()) == UMat2::identity(self.n)
    }
}

impl ops::Mul for &UMat2 {
    type Output = UMat2;
    fn mul(self, o: &UMat2) -> UMat2 {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        UMat2 {
            n: self.n,
            e: [
                &(a * p) + &(b * r),
                &(a * q) + &(b * s),
                &(c * p) + &(d * r),
                &(c * q) + &(d * s),
            ],
        }
    }
}

impl fmt::Display for UMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

/// The two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateName {
    /// Hadamard gate ½[[1+i, 1+i], [1+i, −1−i]].
    H,
    /// Phase gate diag(1, ζ_n).
    T,
}

/// The gate matrix.
pub fn gate(name: GateName, n: u64) -> Result<UMat2> {
    check_gate_modulus(n)?;
    Ok(match name {
        GateName::H => {
            let w = (&CycNum::one(n) + &sqrt_minus_one(n)).scale(&half());
            UMat2::new(n, w.clone(), w.clone(), w.clone(), -w)?
        }
        GateName::T => UMat2::diag(CycNum::one(n), CycNum::zeta(n))?,
    })
}

/// Product of a word over {H, T, t}, with t = T⁻¹, read left to right.
pub fn word_matrix(word: &str, n: u64) -> Result<UMat2> {
    let h = gate(GateName::H, n)?;
    let t = gate(GateName::T, n)?;
    let ti = UMat2::diag(CycNum::one(n), CycNum::zeta_pow(n, -1))?;
    let mut acc = UMat2::identity(n);
    for ch in word.chars() {
        let g = match ch {
            'H' => &h,
            'T' => &t,
            't' => &ti,
            _ => return invalid(format!("gate words use H, T and t; found {ch:?}")),
        };
        acc = &acc * g;
    }
    Ok(acc)
}

/// A uniformly random word of the given length over {H, T, t}.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> String {
    (0..len)
        .map(|_| ['H', 'T', 't'][rng.gen_range(0..3)])
        .collect()
}

/// Strongest group containing a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    /// Not a unitary matrix over R_n.
    NotUnitary,
    /// In U₂(R_n) with det outside ⟨ζ_n⟩.
    U2,
    /// In U₂(R_n) with det ∈ ⟨ζ_n⟩.
    U2Zeta,
    /// In SU₂(R_n).
    SU2,
}

/// k with x = ζ_n^k, if x is a power of ζ_n.
pub fn zeta_log(x: &CycNum) -> Option<u64> {
    let n = x.modulus();
    (0..n).find(|&k| *x == CycNum::zeta_pow(n, k as i64))
}

/// Classifies a matrix.
pub fn membership(a: &UMat2) -> Membership {
    if !a.is_over_rn() || !a.is_unitary() {
        return Membership::NotUnitary;
    }
    let d = a.det();
    if d.is_one() {
        Membership::SU2
    } else if zeta_log(&d).is_some() {
        Membership::U2Zeta
    } else {
        Membership::U2
    }
}

/// A Hamilton quaternion a + bi + cj + dk with coordinates in the real
/// subfield of ℚ(ζ_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    n: u64,
    c: [CycNum; 4],
}

impl Quaternion {
    /// Builds a quaternion from real coordinates at modulus n.
    pub fn new(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Result<Self> {
        let n = a.modulus();
        for x in [&a, &b, &c, &d] {
            if x.modulus() != n || !x.is_real() {
                return invalid("quaternion coordinates must be real elements at one modulus");
            }
        }
        Ok(Quaternion { n, c: [a, b, c, d] })
    }

    /// A real scalar.
    pub fn scalar(x: CycNum) -> Result<Self> {
        let n = x.modulus();
        Quaternion::new(x, CycNum::zero(n), CycNum::zero(n), CycNum::zero(n))
    }

    /// 1.
    pub fn one(n: u64) -> Self {
        Quaternion {
            n,
            c: [
                CycNum::one(n),
                CycNum::zero(n),
                CycNum::zero(n),
                CycNum::zero(n),
            ],
        }
    }

    /// Modulus.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Coordinates (a, b, c, d).
    pub fn coords(&self) -> &[CycNum; 4] {
        &self.c
    }

    /// Conjugate a − bi − cj − dk.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Quaternion {
            n: self.n,
            c: [a.clone(), -b, -c, -d],
        }
    }

    /// Reduced norm a² + b² + c² + d².
    pub fn norm(&self) -> CycNum {
        self.c
            .iter()
            .fold(CycNum::zero(self.n), |acc, x| &acc + &(x * x))
    }

    /// Scalar multiple.
    pub fn scale(&self, x: &CycNum) -> Self {
        Quaternion {
            n: self.n,
            c: self.c.clone().map(|v| &v * x),
        }
    }

    /// Whether the quaternion is a real scalar.
    pub fn is_central(&self) -> bool {
        self.c[1..].iter().all(CycNum::is_zero)
    }

    /// Inverse, for a nonzero quaternion.
    pub fn inverse(&self) -> Result<Self> {
        let nm = self.norm();
        if nm.is_zero() {
            return invalid("zero quaternion has no inverse");
        }
        Ok(self.conj().scale(&nm.inverse()?))
    }

    /// Scaled so that the first nonzero coordinate is 1; a normal form for
    /// the class modulo nonzero real scalars.
    pub fn canonical(&self) -> Result<Self> {
        let Some(first) = self.c.iter().find(|x| !x.is_zero()) else {
            return invalid("zero quaternion has no projective class");
        };
        Ok(self.scale(&first.inverse()?))
    }
}

impl ops::Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &o.c;
        let a = &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2));
        let b = &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2));
        let c = &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2));
        let d = &(&(a1 * d2) + &(b1 * c2)) + &(&(d1 * a2) - &(c1 * b2));
        Quaternion {
            n: self.n,
            c: [a, b, c, d],
        }
    }
}

impl ops::Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion {
            n: self.n,
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl ops::Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion {
            n: self.n,
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})i + ({})j + ({})k",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

/// Whether a real element is a unit of ℤ[ζ_n, 1/2] ∩ F_n.
fn is_rbar_unit(x: &CycNum) -> bool {
    x.is_dyadic() && x.has_two_power_norm() && x.inverse().map(|y| y.is_dyadic()).unwrap_or(false)
}

fn is_abs_unit(x: &CycNum) -> bool {
    let a = x.abs_norm();
    a.is_integer() && a.numer().magnitude() == &1u32.into()
}

/// Whether q₁ and q₂ agree up to a unit of the real ring ℤ[ζ_n, 1/2]⁺.
pub fn projectively_equal(q1: &Quaternion, q2: &Quaternion) -> Result<bool> {
    let r = q1 * &q2.inverse()?;
    Ok(r.is_central() && is_rbar_unit(&r.c[0]))
}

/// x = r + s·√−1 with r, s real.
fn split_complex(x: &CycNum) -> (CycNum, CycNum) {
    let n = x.modulus();
    let r = x.trace_conj().scale(&half());
    let s = (&x.antitrace() * &sqrt_minus_one(n).conj()).scale(&half());
    (r, s)
}

/// The quaternion r − ui − tj − sk of A = [[r+si, t+ui], [·, ·]], without
/// checking membership.
fn psi_raw(a: &UMat2) -> Quaternion {
    let (r, s) = split_complex(&a.e[0]);
    let (t, u) = split_complex(&a.e[1]);
    Quaternion {
        n: a.n,
        c: [r, -u, -t, -s],
    }
}

/// Ψ_n: SU₂(R_n) → norm-one units of the standard maximal order.
pub fn psi(a: &UMat2) -> Result<Quaternion> {
    if membership(a) != Membership::SU2 {
        return invalid("Ψ is defined on SU₂(R_n)");
    }
    Ok(psi_raw(a))
}

/// Embeds x = r + s√−1 ∈ ℚ(ζ_n) into ℍ as r + si.
pub fn embed_cm(x: &CycNum) -> Quaternion {
    let n = x.modulus();
    let (r, s) = split_complex(x);
    Quaternion {
        n,
        c: [r, s, CycNum::zero(n), CycNum::zero(n)],
    }
}

/// Which of the four Hilbert-90 candidates was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaBranch {
    /// β = (1+ζ)^e.
    OnePlusZeta(i64),
    /// β = (1+ζ̄)^e.
    OnePlusZetaBar(i64),
}

/// Result of φ_n: a representative of the projective class, the chosen β
/// and its branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    /// Representative r − ui − tj − sk of βA.
    pub rep: Quaternion,
    /// β.
    pub beta: CycNum,
    /// Branch of β.
    pub branch: BetaBranch,
    /// det A = ζ^k.
    pub k: u64,
}

fn beta_candidates(n: u64, k: u64) -> Result<Vec<(BetaBranch, CycNum)>> {
    let z = CycNum::zeta(n);
    let one = CycNum::one(n);
    let p = &one + &z;
    let q = &one + &z.conj();
    let k = k as i64;
    Ok(vec![
        (BetaBranch::OnePlusZeta(k), p.powi(k)?),
        (BetaBranch::OnePlusZeta(-k), p.powi(-k)?),
        (BetaBranch::OnePlusZetaBar(k), q.powi(k)?),
        (BetaBranch::OnePlusZetaBar(-k), q.powi(-k)?),
    ])
}

fn check_phi_modulus(n: u64) -> Result<()> {
    let odd = n >> n.trailing_zeros();
    if n < 8 || n % 4 != 0 || (odd != 1 && odd != 3) {
        return invalid(format!("φ needs n = 2^s or 3·2^s with n ≥ 8, got {n}"));
    }
    Ok(())
}

/// φ_n on U₂(R_n), choosing β by the postcondition det(βA) = ββ̄.
pub fn phi(a: &UMat2) -> Result<PhiImage> {
    phi_all(a)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InternalInconsistency("no β satisfies det(βA) = ββ̄".into()))
}

/// Every valid choice of β with the resulting representative.
pub fn phi_all(a: &UMat2) -> Result<Vec<PhiImage>> {
    check_phi_modulus(a.n)?;
    match membership(a) {
        Membership::NotUnitary => return invalid("φ is defined on U₂(R_n)"),
        Membership::U2 => return inconsistent("unitary matrix with det outside ⟨ζ_n⟩"),
        _ => {}
    }
    let det = a.det();
    let k = zeta_log(&det).expect("membership checked the determinant");
    let mut out = Vec::new();
    for (branch, beta) in beta_candidates(a.n, k)? {
        let bb = &beta * &beta.conj();
        if (&(&beta * &beta) * &det) == bb {
            let rep = psi_raw(&a.scale(&beta));
            if rep.norm() != bb {
                return inconsistent("Nm(φ(A)) differs from ββ̄");
            }
            out.push(PhiImage {
                rep,
                beta,
                branch,
                k,
            });
        }
    }
    Ok(out)
}

/// The maximal orders of ℍ_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    /// R̄_n⟨1, i, j, (1+i+j+k)/2⟩ with R̄_n = ℤ[ζ_n, 1/2]⁺.
    Mtilde,
    /// Ō_n⟨1, (1+i)/α, (1+j)/α, (1+i+j+k)/2⟩.
    M,
}

/// α with α² = 2·unit: √2 when 8 | n, 1+√3 when n = 12.
pub fn alpha(n: u64) -> Result<CycNum> {
    if n % 8 == 0 {
        let e = (n / 8) as i64;
        Ok(&CycNum::zeta_pow(n, e) + &CycNum::zeta_pow(n, -e))
    } else if n == 12 {
        Ok(&CycNum::one(12) + &(&CycNum::zeta(12) + &CycNum::zeta_pow(12, -1)))
    } else {
        invalid(format!(
            "the order M_n is defined here for 8 | n or n = 12, not {n}"
        ))
    }
}

/// Coordinates of q in the basis of the chosen order.
pub fn order_coordinates(q: &Quaternion, which: OrderKind) -> Result<[CycNum; 4]> {
    let [a, b, c, d] = &q.c;
    Ok(match which {
        OrderKind::Mtilde => [a - d, b - d, c - d, d + d],
        OrderKind::M => {
            let al = alpha(q.n)?;
            [&(a - b) + &(d - c), &al * &(b - d), &al * &(c - d), d + d]
        }
    })
}

/// Membership in the chosen maximal order.
pub fn order_membership_quat(q: &Quaternion, which: OrderKind) -> Result<bool> {
    check_phi_modulus(q.n).or_else(|_| {
        if q.n == 12 {
            Ok(())
        } else {
            invalid("unsupported modulus")
        }
    })?;
    let coords = order_coordinates(q, which)?;
    Ok(match which {
        OrderKind::Mtilde => coords.iter().all(CycNum::is_dyadic),
        OrderKind::M => coords.iter().all(CycNum::is_integral),
    })
}

/// Whether q is a unit of the chosen order.
pub fn is_order_unit(q: &Quaternion, which: OrderKind) -> Result<bool> {
    if !order_membership_quat(q, which)? {
        return Ok(false);
    }
    let nm = q.norm();
    Ok(match which {
        OrderKind::Mtilde => is_rbar_unit(&nm),
        OrderKind::M => nm.is_integral() && is_abs_unit(&nm),
    })
}

/// The element predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementKind {
    /// Noncentral, norm a totally positive nonsquare unit of Ō_n.
    Ramifying,
    /// Norm p_n and γ²/p_n a unit of M_n (n = 2^s).
    Inverting,
}

/// Evaluates the ramifying or inverting predicate on a unit of M̃_n.
pub fn element_predicate(gamma: &Quaternion, kind: ElementKind) -> Result<bool> {
    if !is_order_unit(gamma, OrderKind::Mtilde)? {
        return invalid("γ is not a unit of the standard maximal order");
    }
    let n = gamma.n;
    let nm = gamma.norm();
    match kind {
        ElementKind::Ramifying => {
            if gamma.is_central() {
                return Ok(false);
            }
            let unit = nm.is_integral() && is_abs_unit(&nm);
            if !unit {
                return Ok(false);
            }
            Ok(!is_square_unit(&nm)?.is_square())
        }
        ElementKind::Inverting => {
            if n & (n - 1) != 0 {
                return invalid("inverting elements are defined for n = 2^s");
            }
            let p = special(SpecialKind::PN, n)?.value;
            if nm != p {
                return Ok(false);
            }
            let u = (gamma * gamma).scale(&p.inverse()?);
            is_order_unit(&u, OrderKind::M)
        }
    }
}

/// Whether the norm of a φ-representative is a square in R̄_n.
pub fn norm_is_square(q: &Quaternion) -> Result<bool> {
    let nm = q.norm();
    if !is_rbar_unit(&nm) {
        return invalid("norm is not a unit of the 2-localized real ring");
    }
    Ok(is_square_unit(&nm)?.is_square())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2(n: u64) -> CycNum {
        alpha(n).unwrap()
    }

    #[test]
    fn gate_identities() {
        for n in [8u64, 12, 16, 24] {
            let h = gate(GateName::H, n).unwrap();
            let t = gate(GateName::T, n).unwrap();
            let i = sqrt_minus_one(n);
            assert_eq!(t.det(), CycNum::zeta(n));
            assert_eq!(h.det(), -i.clone());
            assert_eq!(&h * &h, UMat2::identity(n).scale(&i));
            let mut p = UMat2::identity(n);
            for _ in 0..n {
                p = &p * &t;
            }
            assert_eq!(p, UMat2::identity(n));
            assert_eq!(membership(&h), Membership::U2Zeta);
            assert_eq!(membership(&t), Membership::U2Zeta);
            let d = UMat2::diag(CycNum::zeta(n), CycNum::zeta_pow(n, -1)).unwrap();
            assert_eq!(membership(&d), Membership::SU2);
        }
        assert!(gate(GateName::H, 6).is_err());
        let bad = UMat2::diag(CycNum::integer(8, 2), CycNum::one(8)).unwrap();
        assert_eq!(membership(&bad), Membership::NotUnitary);
    }

    #[test]
    fn psi_examples() {
        let n = 8;
        assert_eq!(psi(&UMat2::identity(n)).unwrap(), Quaternion::one(n));
        let i = sqrt_minus_one(n);
        let d = UMat2::diag(i.clone(), -i).unwrap();
        let q = psi(&d).unwrap();
        assert_eq!(
            q,
            Quaternion::new(
                CycNum::zero(8),
                CycNum::zero(8),
                CycNum::zero(8),
                CycNum::integer(8, -1)
            )
            .unwrap()
        );
        assert!(psi(&gate(GateName::T, 8).unwrap()).is_err());
    }

    #[test]
    fn psi_multiplicative_on_small_words() {
        let n = 16;
        let words = ["HTHt", "THtH", "HHHH", "TtHTtH"];
        for w in words {
            let a = word_matrix(w, n).unwrap();
            let det = a.det();
            let k = zeta_log(&det).unwrap();
            if k % 2 == 0 {
                let c = CycNum::zeta_pow(n, -(k as i64) / 2);
                let su = a.scale(&c);
                let q = psi(&su).unwrap();
                assert!(q.norm().is_one());
                let q2 = psi(&(&su * &su)).unwrap();
                assert_eq!(q2, &q * &q);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let n = 8;
        let im = phi(&UMat2::identity(n)).unwrap();
        assert!(projectively_equal(&im.rep, &Quaternion::one(n)).unwrap());
        let t = gate(GateName::T, n).unwrap();
        let all = phi_all(&t).unwrap();
        assert_eq!(all.len(), 2);
        let r2h = sqrt2(n).scale(&half());
        let expected = Quaternion::new(
            &CycNum::one(n) + &r2h,
            CycNum::zero(n),
            CycNum::zero(n),
            r2h,
        )
        .unwrap();
        assert!(projectively_equal(&all[0].rep, &expected).unwrap());
        assert!(projectively_equal(&all[0].rep, &all[1].rep).unwrap());
        let p8 = special(SpecialKind::PN, 8).unwrap().value;
        assert!(all.iter().any(|im| im.rep.norm() == p8));
        let h = gate(GateName::H, n).unwrap();
        let hh = phi(&(&h * &h)).unwrap();
        assert!(projectively_equal(&hh.rep, &Quaternion::one(n)).unwrap());
        assert!(order_membership_quat(&phi(&h).unwrap().rep, OrderKind::Mtilde).unwrap());
    }

    #[test]
    fn orders() {
        let n = 8;
        let one = CycNum::one(n);
        let z = CycNum::zero(n);
        let hq = |a: &CycNum, b: &CycNum, c: &CycNum, d: &CycNum| {
            Quaternion::new(a.clone(), b.clone(), c.clone(), d.clone()).unwrap()
        };
        let h = one.scale(&half());
        assert!(order_membership_quat(&hq(&h, &h, &h, &h), OrderKind::Mtilde).unwrap());
        assert!(order_membership_quat(&hq(&h, &h, &h, &h), OrderKind::M).unwrap());
        let r = sqrt2(n).inverse().unwrap();
        assert!(order_membership_quat(&hq(&r, &r, &z, &z), OrderKind::M).unwrap());
        assert!(!order_membership_quat(&hq(&h, &h, &z, &z), OrderKind::M).unwrap());
        assert!(order_membership_quat(&hq(&h, &h, &z, &z), OrderKind::Mtilde).unwrap());
        let third = one.scale(&BigRational::new(1.into(), 3.into()));
        assert!(!order_membership_quat(&hq(&third, &z, &z, &z), OrderKind::Mtilde).unwrap());
        assert!(alpha(20).is_err());
        let a12 = alpha(12).unwrap();
        assert!(order_membership_quat(
            &hq(
                &a12.inverse().unwrap(),
                &a12.inverse().unwrap(),
                &CycNum::zero(12),
                &CycNum::zero(12)
            ),
            OrderKind::M
        )
        .unwrap());
    }

    #[test]
    fn predicates() {
        let n = 8;
        let r = sqrt2(n).inverse().unwrap();
        let g = Quaternion::new(&CycNum::one(n) + &r, r, CycNum::zero(n), CycNum::zero(n)).unwrap();
        assert_eq!(g.norm(), special(SpecialKind::PN, 8).unwrap().value);
        assert!(element_predicate(&g, ElementKind::Inverting).unwrap());
        assert!(!element_predicate(&g, ElementKind::Ramifying).unwrap());
        let g12 = embed_cm(&(&CycNum::one(12) + &CycNum::zeta(12)));
        assert_eq!(g12.norm(), special(SpecialKind::UPlus, 12).unwrap().value);
        assert!(element_predicate(&g12, ElementKind::Ramifying).unwrap());
        assert!(element_predicate(&g12, ElementKind::Inverting).is_err());
        let third = Quaternion::scalar(CycNum::integer(8, 3)).unwrap();
        assert!(element_predicate(&third, ElementKind::Ramifying).is_err());
    }

    #[test]
    fn words() {
        assert!(word_matrix("HTx", 8).is_err());
        assert_eq!(word_matrix("Tt", 8).unwrap(), UMat2::identity(8));
    }
}
