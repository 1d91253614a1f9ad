//! Dirichlet characters, conductors, parity and generalized Bernoulli
//! numbers, with values held as exponents of a root of unity so every sum
//! is exact in ℤ[ζ_ord].

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classmass::FieldFamily;
use crate::cyclo::CycNum;
use crate::error::{inconsistent, invalid, Result};
use crate::util::{divisors, factorize, gcd, pow_mod};

/// A cyclic factor of (ℤ/N)^×: a generator (as a residue mod N) and its order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Gen {
    residue: u64,
    order: u64,
}

/// Generators of (ℤ/N)^× with discrete logarithms for every residue.
struct UnitGroup {
    n: u64,
    gens: Vec<Gen>,
    /// `logs[a]` holds the exponent vector of `a`, or `None` off units.
    logs: Vec<Option<Vec<u64>>>,
    exponent: u64,
}

fn crt_lift(r: u64, q: u64, n: u64) -> u64 {
    // x ≡ r (mod q), x ≡ 1 (mod n/q)
    let other = n / q;
    (0..q)
        .map(|t| 1 + other * t)
        .find(|x| x % q == r % q)
        .expect("coprime moduli")
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let qs: Vec<u64> = factorize(p - 1).into_iter().map(|(r, _)| r).collect();
    let g = (2..p)
        .find(|&g| qs.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .unwrap_or(1);
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        (g + p) % q
    } else {
        g
    }
}

impl UnitGroup {
    fn new(n: u64) -> Self {
        assert!(n >= 1);
        // per prime power: (modulus, generator residues mod q, orders)
        let mut parts: Vec<(u64, Vec<(u64, u64)>)> = Vec::new();
        for (p, e) in factorize(n) {
            let q = p.pow(e);
            if p == 2 {
                match e {
                    1 => parts.push((q, vec![])),
                    2 => parts.push((q, vec![(q - 1, 2)])),
                    _ => parts.push((q, vec![(q - 1, 2), (5, q / 4)])),
                }
            } else {
                parts.push((q, vec![(primitive_root_prime_power(p, e), q / p * (p - 1))]));
            }
        }
        let mut gens = Vec::new();
        let mut local_logs: Vec<Vec<Option<Vec<u64>>>> = Vec::new();
        for (q, gs) in &parts {
            let q = *q;
            let mut table: Vec<Option<Vec<u64>>> = vec![None; q as usize];
            if gs.is_empty() {
                table[(1 % q) as usize] = Some(vec![]);
                if q == 2 {
                    table[1] = Some(vec![]);
                }
            } else if gs.len() == 1 {
                let (g, o) = gs[0];
                let mut x = 1 % q;
                for k in 0..o {
                    table[x as usize] = Some(vec![k]);
                    x = x * g % q;
                }
            } else {
                let (_, o5) = gs[1];
                let mut x = 1u64;
                for k in 0..o5 {
                    table[x as usize] = Some(vec![0, k]);
                    table[(q - x) as usize] = Some(vec![1, k]);
                    x = x * 5 % q;
                }
            }
            for &(g, o) in gs {
                gens.push(Gen {
                    residue: crt_lift(g, q, n),
                    order: o,
                });
            }
            local_logs.push(table);
        }
        let mut logs = vec![None; n as usize];
        for a in 0..n {
            if gcd(a, n) != 1 && n > 1 {
                continue;
            }
            let mut v = Vec::new();
            for ((q, _), table) in parts.iter().zip(&local_logs) {
                v.extend(table[(a % q) as usize].clone().expect("unit residue"));
            }
            logs[a as usize] = Some(v);
        }
        let exponent = gens
            .iter()
            .fold(1u64, |acc, g| num_integer::lcm(acc, g.order));
        UnitGroup {
            n,
            gens,
            logs,
            exponent,
        }
    }
}

/// Parity of a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// χ(−1) = 1.
    Even,
    /// χ(−1) = −1.
    Odd,
}

/// Selection passed to [`enumerate_chars`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharFilter {
    /// Every character modulo N.
    All,
    /// Odd characters.
    Odd,
    /// Even characters.
    Even,
    /// Characters of an abelian field inside ℚ(ζ_N), optionally one parity.
    OfSubfield(FieldFamily, Option<Parity>),
}

/// A Dirichlet character modulo N with values in μ_ord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    modulus: u64,
    order: u64,
    /// Exponent of ζ_ord at each residue; −1 off units.
    vals: Arc<Vec<i64>>,
    /// (generator residue, exponent of ζ_ord) for a fixed generating set.
    gen_images: Vec<(u64, u64)>,
    conductor: u64,
    parity: Parity,
}

impl DirichletChar {
    /// Builds a character from exponents of ζ_big at every residue mod N
    /// (−1 off units), reducing to the exact order.
    fn from_exponents(modulus: u64, big: u64, mut vals: Vec<i64>, group: &UnitGroup) -> Self {
        let g = vals
            .iter()
            .filter(|&&v| v >= 0)
            .fold(big, |acc, &v| gcd(acc, v as u64));
        let order = big / g;
        for v in vals.iter_mut() {
            if *v >= 0 {
                *v = (*v as u64 / g) as i64;
            }
        }
        let gen_images = group
            .gens
            .iter()
            .map(|gen| (gen.residue, vals[gen.residue as usize] as u64))
            .collect();
        let minus_one = vals[(modulus - 1) as usize];
        let parity = if modulus <= 2 || minus_one == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        let mut ch = DirichletChar {
            modulus,
            order,
            vals: Arc::new(vals),
            gen_images,
            conductor: modulus,
            parity,
        };
        ch.conductor = ch.compute_conductor();
        ch
    }

    /// Smallest f | N such that χ is trivial on units ≡ 1 (mod f).
    fn compute_conductor(&self) -> u64 {
        let n = self.modulus;
        for f in divisors(n) {
            let trivial = (0..n)
                .filter(|&a| self.vals[a as usize] >= 0 && a % f == 1 % f)
                .all(|a| self.vals[a as usize] == 0);
            if trivial {
                return f;
            }
        }
        n
    }

    /// The modulus N.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of χ in the character group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Conductor f_χ.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Parity.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// True when χ(−1) = −1.
    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    /// True for the principal character.
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// True when the conductor equals the modulus.
    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// Images of the fixed generators of (ℤ/N)^× as exponents of ζ_ord.
    pub fn generator_images(&self) -> &[(u64, u64)] {
        &self.gen_images
    }

    /// Exponent e with χ(a) = ζ_ord^e, or `None` when gcd(a, N) > 1.
    pub fn exponent_at(&self, a: i64) -> Option<u64> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        let v = self.vals[r];
        (v >= 0).then_some(v as u64)
    }

    /// χ(a) as an element of ℚ(ζ_ord) (zero off units).
    pub fn value(&self, a: i64) -> CycNum {
        match self.exponent_at(a) {
            Some(e) => CycNum::zeta_pow(self.order, e as i64),
            None => CycNum::zero(self.order),
        }
    }

    /// χ^k.
    pub fn pow(&self, k: u64) -> Self {
        let group = UnitGroup::new(self.modulus);
        let vals = self
            .vals
            .iter()
            .map(|&v| {
                if v < 0 {
                    -1
                } else {
                    ((v as u64 * k) % self.order) as i64
                }
            })
            .collect();
        Self::from_exponents(self.modulus, self.order, vals, &group)
    }

    /// The primitive character of conductor f_χ inducing χ.
    pub fn primitive(&self) -> Self {
        if self.is_primitive() {
            return self.clone();
        }
        let f = self.conductor;
        let n = self.modulus;
        let group = UnitGroup::new(f);
        let vals = (0..f)
            .map(|a| {
                if gcd(a, f) != 1 && f > 1 {
                    return -1;
                }
                let lift = (0..n / f)
                    .map(|t| a + f * t)
                    .find(|&x| gcd(x, n) == 1)
                    .expect("unit lift");
                self.vals[lift as usize]
            })
            .collect();
        Self::from_exponents(f, self.order, vals, &group)
    }

    /// The character modulo a multiple M of N induced by χ.
    pub fn induce(&self, m: u64) -> Result<Self> {
        if m % self.modulus != 0 {
            return invalid(format!("{m} is not a multiple of {}", self.modulus));
        }
        let group = UnitGroup::new(m);
        let vals = (0..m)
            .map(|a| {
                if gcd(a, m) != 1 && m > 1 {
                    -1
                } else {
                    self.vals[(a % self.modulus) as usize]
                }
            })
            .collect();
        Ok(Self::from_exponents(m, self.order, vals, &group))
    }

    /// Exponent of ζ_ord at `a` under the primitive character, or `None`
    /// when gcd(a, f_χ) > 1.
    fn primitive_exponent(&self, prim: &Self, a: u64) -> Option<u64> {
        debug_assert_eq!(prim.conductor, self.conductor);
        prim.exponent_at(a as i64)
    }
}

/// Enumerates the characters modulo N passing `filter`, in a fixed order.
pub fn enumerate_chars(n: u64, filter: &CharFilter) -> Result<Vec<DirichletChar>> {
    if n == 0 {
        return invalid("modulus must be positive");
    }
    let (kernel, parity) = resolve_filter(n, filter)?;
    let group = UnitGroup::new(n);
    let big = group.exponent;
    let mut out = Vec::new();
    let total: u64 = group.gens.iter().map(|g| g.order).product();
    for idx in 0..total {
        // mixed-radix exponent vector
        let mut rest = idx;
        let ks: Vec<u64> = group
            .gens
            .iter()
            .map(|g| {
                let k = rest % g.order;
                rest /= g.order;
                k
            })
            .collect();
        let exps: Vec<i64> = (0..n)
            .map(|a| match &group.logs[a as usize] {
                None => -1,
                Some(l) => {
                    let e: u64 = l
                        .iter()
                        .zip(&ks)
                        .zip(&group.gens)
                        .map(|((&li, &k), g)| (li * k % g.order) * (big / g.order))
                        .sum();
                    (e % big) as i64
                }
            })
            .collect();
        if kernel.iter().any(|&u| exps[(u % n) as usize] != 0) {
            continue;
        }
        let ch = DirichletChar::from_exponents(n, big, exps, &group);
        if parity.map_or(true, |p| p == ch.parity) {
            out.push(ch);
        }
    }
    Ok(out)
}

fn resolve_filter(n: u64, filter: &CharFilter) -> Result<(Vec<u64>, Option<Parity>)> {
    Ok(match filter {
        CharFilter::All => (vec![], None),
        CharFilter::Odd => (vec![], Some(Parity::Odd)),
        CharFilter::Even => (vec![], Some(Parity::Even)),
        CharFilter::OfSubfield(fam, par) => {
            if fam.modulus() != n {
                return invalid(format!(
                    "{fam:?} lives in modulus {}, not {n}",
                    fam.modulus()
                ));
            }
            (fam.kernel(), *par)
        }
    })
}

/// Exponent of ζ_big at residue `a` for the character with generator
/// exponents `c` (already scaled to ζ_big).
fn eval_scaled(group: &UnitGroup, c: &[u64], a: u64) -> Option<u64> {
    let l = group.logs[(a % group.n) as usize].as_ref()?;
    let big = group.exponent;
    Some(l.iter().zip(c).map(|(&li, &ci)| li * ci % big).sum::<u64>() % big)
}

/// One representative per Galois orbit of the characters passing `filter`,
/// with the orbit size. Only representatives are materialized, so this
/// scales to moduli where listing every character would not fit in memory.
pub fn enumerate_orbits(n: u64, filter: &CharFilter) -> Result<Vec<(DirichletChar, usize)>> {
    if n == 0 {
        return invalid("modulus must be positive");
    }
    let (kernel, parity) = resolve_filter(n, filter)?;
    let group = UnitGroup::new(n);
    let big = group.exponent;
    let units: Vec<u64> = (1..=big).filter(|&a| gcd(a, big) == 1).collect();
    let total: u64 = group.gens.iter().map(|g| g.order).product();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let c: Vec<u64> = group
            .gens
            .iter()
            .map(|g| {
                let k = rest % g.order;
                rest /= g.order;
                k * (big / g.order)
            })
            .collect();
        if seen.contains(&c) {
            continue;
        }
        if kernel
            .iter()
            .any(|&u| eval_scaled(&group, &c, u) != Some(0))
        {
            continue;
        }
        let odd = n > 2 && eval_scaled(&group, &c, n - 1) != Some(0);
        if let Some(p) = parity {
            if (p == Parity::Odd) != odd {
                continue;
            }
        }
        let mut size = 0;
        for &a in &units {
            if seen.insert(c.iter().map(|&x| x * a % big).collect()) {
                size += 1;
            }
        }
        let vals = (0..n)
            .map(|a| eval_scaled(&group, &c, a).map_or(-1, |e| e as i64))
            .collect();
        out.push((DirichletChar::from_exponents(n, big, vals, &group), size));
    }
    Ok(out)
}

/// Partitions characters into Galois orbits {χ^a : gcd(a, ord χ) = 1};
/// returns one representative per orbit with the orbit size.
pub fn galois_orbits(chars: &[DirichletChar]) -> Vec<(DirichletChar, usize)> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    for ch in chars {
        if seen.contains(ch.vals.as_ref()) {
            continue;
        }
        let mut size = 0;
        for a in 1..=ch.order {
            if gcd(a, ch.order) == 1 {
                let v: Vec<i64> = ch
                    .vals
                    .iter()
                    .map(|&e| {
                        if e < 0 {
                            -1
                        } else {
                            ((e as u64 * a) % ch.order) as i64
                        }
                    })
                    .collect();
                if seen.insert(v) {
                    size += 1;
                }
            }
        }
        out.push((ch.clone(), size));
    }
    out
}

/// Which generalized Bernoulli number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernoulliKind {
    /// B_{1,χ}.
    B1,
    /// B_{2,χ}.
    B2,
}

/// A generalized Bernoulli number `scale · cyc` with `cyc ∈ ℤ[ζ_ord]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliValue {
    /// B1 or B2.
    pub kind: BernoulliKind,
    /// Integral cyclotomic part.
    pub cyc: CycNum,
    /// Rational scale.
    pub scale: BigRational,
}

impl BernoulliValue {
    /// The value as one cyclotomic number.
    pub fn value(&self) -> CycNum {
        self.cyc.scale(&self.scale)
    }

    /// Product of all Galois conjugates, a rational number.
    pub fn orbit_product(&self) -> BigRational {
        let d = self.cyc.degree() as i32;
        self.cyc.abs_norm() * self.scale.pow(d)
    }
}

/// Σ_{i} c_i ζ^{e(i)} accumulated into a coefficient vector of length ord.
fn accumulate(order: u64, terms: impl Iterator<Item = (u64, BigInt)>) -> CycNum {
    let mut coeffs = vec![BigInt::zero(); order as usize];
    for (e, c) in terms {
        coeffs[e as usize] += c;
    }
    CycNum::from_exponent_coeffs(order, coeffs, BigInt::one())
}

/// B_{1,χ} or B_{2,χ} for a primitive χ.
pub fn bernoulli(ch: &DirichletChar, kind: BernoulliKind) -> Result<BernoulliValue> {
    if !ch.is_primitive() {
        return invalid(format!(
            "character mod {} has conductor {}; primitivize first",
            ch.modulus, ch.conductor
        ));
    }
    let f = ch.conductor;
    let ord = ch.order;
    match kind {
        BernoulliKind::B1 => {
            if ch.is_trivial() {
                // B_{1,1} = 1/2
                return Ok(BernoulliValue {
                    kind,
                    cyc: CycNum::one(1),
                    scale: BigRational::new(1.into(), 2.into()),
                });
            }
            let cyc = accumulate(
                ord,
                (1..=f).filter_map(|i| ch.exponent_at(i as i64).map(|e| (e, BigInt::from(i)))),
            );
            Ok(BernoulliValue {
                kind,
                cyc,
                scale: BigRational::new(1.into(), f.into()),
            })
        }
        BernoulliKind::B2 => {
            if ch.is_trivial() {
                return Ok(BernoulliValue {
                    kind,
                    cyc: CycNum::one(1),
                    scale: BigRational::new(1.into(), 6.into()),
                });
            }
            // f·Σ χ(a)(a²/f² − a/f + 1/6) = (1/f)·Σ χ(a)(a² − f·a) since Σ χ(a) = 0
            let cyc = accumulate(
                ord,
                (1..=f).filter_map(|a| {
                    ch.exponent_at(a as i64)
                        .map(|e| (e, BigInt::from(a) * BigInt::from(a) - BigInt::from(f * a)))
                }),
            );
            Ok(BernoulliValue {
                kind,
                cyc,
                scale: BigRational::new(1.into(), f.into()),
            })
        }
    }
}

/// Σ_{i=1}^{N} i·χ(i) with χ read modulo N (zero off units mod N).
pub fn weighted_char_sum(ch: &DirichletChar, n: u64) -> Result<CycNum> {
    if n % ch.conductor != 0 {
        return invalid(format!("conductor {} does not divide {n}", ch.conductor));
    }
    let prim = ch.primitive();
    let terms = (1..=n)
        .filter(|&i| gcd(i, n) == 1 || n == 1)
        .filter_map(|i| {
            ch.primitive_exponent(&prim, i % prim.modulus)
                .map(|e| (e, BigInt::from(i)))
        });
    Ok(accumulate(ch.order, terms))
}

/// Σ_{i=1}^{N} i·χ_f(i) with the primitive character (zero only where
/// gcd(i, f_χ) > 1).
pub fn primitive_weighted_sum(ch: &DirichletChar, n: u64) -> CycNum {
    let prim = ch.primitive();
    let terms = (1..=n).filter_map(|i| {
        ch.primitive_exponent(&prim, i % prim.modulus)
            .map(|e| (e, BigInt::from(i)))
    });
    accumulate(ch.order, terms)
}

/// Σ over the odd characters passing `filter` of |Σ_{i=1}^{N} i·χ(i)|²,
/// with χ evaluated primitively. Exact; asserts the total is a rational
/// integer.
pub fn sum_abs_squares_odd(n: u64, filter: &CharFilter) -> Result<BigInt> {
    let filter = match filter {
        CharFilter::All | CharFilter::Odd => CharFilter::Odd,
        CharFilter::Even => return Ok(BigInt::zero()),
        CharFilter::OfSubfield(f, _) => CharFilter::OfSubfield(*f, Some(Parity::Odd)),
    };
    let chars = enumerate_chars(n, &filter)?;
    let big = chars
        .iter()
        .fold(1u64, |acc, c| num_integer::lcm(acc, c.order));
    let mut total = CycNum::zero(big);
    for ch in &chars {
        let z = primitive_weighted_sum(ch, n);
        total = &total + &z.rel_norm_real().lift(big)?;
    }
    match total.as_rational() {
        Some(q) if q.is_integer() => Ok(q.to_integer()),
        _ => inconsistent(format!(
            "character square sum mod {n} is not a rational integer"
        )),
    }
}

/// G_s = 3·2^{3s} + 2^s.
pub fn g_s(s: u32) -> BigInt {
    BigInt::from(3) * (BigInt::one() << (3 * s)) + (BigInt::one() << s)
}

/// Closed forms for [`sum_abs_squares_odd`] in the four families.
pub mod closed_forms {
    use num_bigint::BigInt;
    use num_traits::One;

    fn p2(k: u32) -> BigInt {
        BigInt::one() << k
    }

    /// All odd χ mod 2^s: 2^{s−2}(2^{3s−2} − 2^s)/3.
    pub fn pow2(s: u32) -> BigInt {
        p2(s - 2) * (p2(3 * s - 2) - p2(s)) / 3
    }

    /// Odd χ of F_s(√−3) mod 3·2^s: 2^{s−2}(c₁2^{3s} + c₂2^{2s} − 3·2^{2s})
    /// with (c₁, c₂) = (1, 60) for even s and (2, 4) for odd s.
    pub fn sqrt_minus3(s: u32) -> BigInt {
        let (c1, c2) = if s % 2 == 0 { (1, 60) } else { (2, 4) };
        p2(s - 2)
            * (BigInt::from(c1) * p2(3 * s) + BigInt::from(c2) * p2(2 * s)
                - BigInt::from(3) * p2(2 * s))
    }

    /// Odd χ of F_s(√−p_s) mod 2^{s+1}: 2^{4s−2}.
    pub fn sqrt_minus_p(s: u32) -> BigInt {
        p2(4 * s - 2)
    }

    /// All odd χ mod 3·2^s:
    /// 3·2^{s−2}(2^{3s−2} − 2^s) + 2^{2s−1}(2^{2s} + (−2)^{s+1} − 6).
    pub fn three_pow2(s: u32) -> BigInt {
        let sign = if (s + 1) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        BigInt::from(3) * p2(s - 2) * (p2(3 * s - 2) - p2(s))
            + p2(2 * s - 1) * (p2(2 * s) + sign * p2(s + 1) - BigInt::from(6))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::euler_phi;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn counts_and_conductors() {
        let odd8 = enumerate_chars(8, &CharFilter::Odd).unwrap();
        assert_eq!(odd8.len(), 2);
        let mut f: Vec<u64> = odd8.iter().map(|c| c.conductor()).collect();
        f.sort();
        assert_eq!(f, vec![4, 8]);
        let one = enumerate_chars(1, &CharFilter::All).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_trivial());
        for n in 1..=60u64 {
            assert_eq!(
                enumerate_chars(n, &CharFilter::All).unwrap().len() as u64,
                euler_phi(n)
            );
        }
    }

    #[test]
    fn parity_matches_value_at_minus_one() {
        for n in 3..=40u64 {
            for ch in enumerate_chars(n, &CharFilter::All).unwrap() {
                let v = ch.value(-1);
                assert_eq!(ch.is_odd(), v == CycNum::integer(ch.order(), -1));
                assert_eq!(ch.primitive().parity(), ch.parity());
            }
        }
    }

    #[test]
    fn multiplicativity() {
        for n in [15u64, 16, 24, 36, 48] {
            for ch in enumerate_chars(n, &CharFilter::All).unwrap() {
                for a in 0..n as i64 {
                    for b in 0..n as i64 {
                        assert_eq!(&ch.value(a) * &ch.value(b), ch.value(a * b));
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality() {
        for n in 1..=48u64 {
            let chars = enumerate_chars(n, &CharFilter::All).unwrap();
            let big = chars
                .iter()
                .fold(1u64, |acc, c| num_integer::lcm(acc, c.order()));
            for i in 0..n as i64 {
                if gcd(i as u64, n) != 1 && n > 1 {
                    continue;
                }
                for j in 0..n as i64 {
                    if gcd(j as u64, n) != 1 && n > 1 {
                        continue;
                    }
                    let mut counts = vec![BigInt::zero(); big as usize];
                    for ch in &chars {
                        let step = big / ch.order();
                        let e =
                            ch.exponent_at(i).unwrap() as i64 - ch.exponent_at(j).unwrap() as i64;
                        counts[((e * step as i64).rem_euclid(big as i64)) as usize] += 1;
                    }
                    let s = CycNum::from_exponent_coeffs(big, counts, BigInt::one());
                    let expect = if i == j { euler_phi(n) } else { 0 };
                    assert_eq!(s, CycNum::integer(big, expect), "n = {n}, i = {i}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        let chi4 = enumerate_chars(4, &CharFilter::Odd).unwrap().remove(0);
        assert_eq!(
            bernoulli(&chi4, BernoulliKind::B1)
                .unwrap()
                .value()
                .as_rational(),
            Some(q(-1, 2))
        );
        let chi3 = enumerate_chars(3, &CharFilter::Odd).unwrap().remove(0);
        assert_eq!(
            bernoulli(&chi3, BernoulliKind::B1)
                .unwrap()
                .value()
                .as_rational(),
            Some(q(-1, 3))
        );
        let chi8 = enumerate_chars(8, &CharFilter::Even)
            .unwrap()
            .into_iter()
            .find(|c| c.conductor() == 8)
            .unwrap();
        assert_eq!(
            bernoulli(&chi8, BernoulliKind::B2)
                .unwrap()
                .value()
                .as_rational(),
            Some(q(2, 1))
        );
        let chi12 = enumerate_chars(12, &CharFilter::Even)
            .unwrap()
            .into_iter()
            .find(|c| c.conductor() == 12)
            .unwrap();
        assert_eq!(
            bernoulli(&chi12, BernoulliKind::B2)
                .unwrap()
                .value()
                .as_rational(),
            Some(q(4, 1))
        );
        let imprim = enumerate_chars(8, &CharFilter::Odd)
            .unwrap()
            .into_iter()
            .find(|c| c.conductor() == 4)
            .unwrap();
        assert!(bernoulli(&imprim, BernoulliKind::B1).is_err());
    }

    /// B₂ directly from the Bernoulli polynomial, no simplification.
    fn b2_oracle(ch: &DirichletChar) -> CycNum {
        let f = ch.conductor() as i64;
        let mut acc = CycNum::zero(ch.order());
        for a in 1..=f {
            let x = q(a, f);
            let b2 = &x * &x - &x + q(1, 6);
            acc = &acc
                + &ch
                    .value(a)
                    .scale(&(b2 * BigRational::from_integer(f.into())));
        }
        acc
    }

    #[test]
    fn b2_matches_polynomial_oracle() {
        for n in [5u64, 8, 12, 13, 16, 21, 24, 32] {
            for ch in enumerate_chars(n, &CharFilter::Even).unwrap() {
                let p = ch.primitive();
                assert_eq!(
                    bernoulli(&p, BernoulliKind::B2).unwrap().value(),
                    b2_oracle(&p)
                );
            }
        }
    }

    #[test]
    fn weighted_sums() {
        let chi4 = enumerate_chars(4, &CharFilter::Odd)
            .unwrap()
            .remove(0)
            .induce(8)
            .unwrap();
        assert_eq!(
            weighted_char_sum(&chi4, 8).unwrap(),
            CycNum::integer(chi4.order(), -4)
        );
        let odd8 = enumerate_chars(8, &CharFilter::Odd)
            .unwrap()
            .into_iter()
            .find(|c| c.conductor() == 8)
            .unwrap();
        assert_eq!(odd8.exponent_at(3), Some(0));
        assert_eq!(
            weighted_char_sum(&odd8, 8).unwrap(),
            CycNum::integer(odd8.order(), -8)
        );
        let triv = enumerate_chars(1, &CharFilter::All).unwrap().remove(0);
        assert_eq!(weighted_char_sum(&triv, 1).unwrap(), CycNum::one(1));
    }

    #[test]
    fn weighted_sum_at_conductor_is_f_b1() {
        for n in [7u64, 8, 9, 15, 16, 24, 32] {
            for ch in enumerate_chars(n, &CharFilter::Odd).unwrap() {
                let p = ch.primitive();
                let f = p.conductor();
                let lhs = weighted_char_sum(&p, f).unwrap();
                let rhs = bernoulli(&p, BernoulliKind::B1)
                    .unwrap()
                    .value()
                    .scale(&BigRational::from_integer(f.into()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn orbit_products_are_integers() {
        for n in [16u64, 32, 48, 64, 96] {
            let chars = enumerate_chars(n, &CharFilter::Odd).unwrap();
            for (ch, size) in galois_orbits(&chars) {
                let p = ch.primitive();
                let b = bernoulli(&p, BernoulliKind::B1).unwrap();
                assert_eq!(size as u64, euler_phi(ch.order()));
                let fb = BernoulliValue {
                    scale: BigRational::one(),
                    ..b
                };
                assert!(fb.orbit_product().is_integer());
            }
        }
    }

    #[test]
    fn orbit_enumeration_matches_full_listing() {
        for n in [16u64, 24, 35, 48, 64] {
            for filter in [CharFilter::All, CharFilter::Odd, CharFilter::Even] {
                let full = enumerate_chars(n, &filter).unwrap();
                let orbits = enumerate_orbits(n, &filter).unwrap();
                assert_eq!(orbits.iter().map(|(_, k)| k).sum::<usize>(), full.len());
                let mut a: Vec<usize> = galois_orbits(&full).iter().map(|(_, k)| *k).collect();
                let mut b: Vec<usize> = orbits.iter().map(|(_, k)| *k).collect();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn small_square_sums() {
        assert_eq!(
            sum_abs_squares_odd(8, &CharFilter::Odd).unwrap(),
            BigInt::from(80)
        );
        assert_eq!(
            sum_abs_squares_odd(16, &CharFilter::Odd).unwrap(),
            BigInt::from(1344)
        );
        assert_eq!(closed_forms::pow2(3), BigInt::from(80));
        assert_eq!(closed_forms::pow2(4), BigInt::from(1344));
        let f = CharFilter::OfSubfield(FieldFamily::SqrtMinusP(3), None);
        assert_eq!(sum_abs_squares_odd(16, &f).unwrap(), BigInt::from(1024));
        assert_eq!(
            enumerate_chars(
                16,
                &CharFilter::OfSubfield(FieldFamily::SqrtMinusP(3), Some(Parity::Odd))
            )
            .unwrap()
            .len(),
            2
        );
    }
}
