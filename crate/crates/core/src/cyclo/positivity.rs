//! Real embeddings and total positivity by interval refinement.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::CycNum;
use crate::error::{invalid, Error, Result};
use crate::interval::{pi, Interval};
use crate::util::gcd;

const START_PREC: u64 = 64;
const MAX_PREC: u64 = 1 << 14;

/// cos(2πj/m) for j = 0..m.
fn cos_table(m: u64, prec: u64) -> Vec<Interval> {
    let two_pi = pi(prec + 8).mul_pow2(1);
    let half = m / 2;
    let mut base: Vec<Interval> = Vec::with_capacity(half as usize + 1);
    for j in 0..=half {
        let theta = two_pi.mul(&Interval::from_rational(
            &BigRational::new(j.into(), m.into()),
            prec + 8,
        ));
        base.push(theta.cos());
    }
    (0..m)
        .map(|j| {
            let j = if j > half { m - j } else { j };
            base[j as usize].clone()
        })
        .collect()
}

fn embeddings_at(x: &CycNum, prec: u64) -> Vec<(u64, Interval)> {
    let m = x.m;
    let den = Interval::from_int(x.den.clone(), prec);
    if m <= 2 {
        return vec![(1, Interval::from_int(x.num[0].clone(), prec).div(&den))];
    }
    let table = cos_table(m, prec);
    let mut out = Vec::new();
    for a in 1..=m / 2 {
        if gcd(a, m) != 1 {
            continue;
        }
        let mut acc = Interval::from_int(0, prec);
        for (i, c) in x.num.iter().enumerate() {
            if c.sign() == num_bigint::Sign::NoSign {
                continue;
            }
            let idx = (a * i as u64 % m) as usize;
            acc = acc.add(&table[idx].mul(&Interval::from_int(c.clone(), prec)));
        }
        out.push((a, acc.div(&den)));
    }
    out
}

/// Enclosures of σ_a(x) for a real `x`, one per embedding of the real
/// subfield (a ranges over units with 1 ≤ a ≤ m/2).
pub fn real_embeddings(x: &CycNum, prec: u64) -> Result<Vec<(u64, Interval)>> {
    if !x.is_real() {
        return invalid("real embeddings need a conjugation-invariant element");
    }
    Ok(embeddings_at(x, prec))
}

/// Sign pattern of all real embeddings, refined until every enclosure
/// excludes zero.
pub(crate) fn embedding_signs(x: &CycNum) -> Result<Vec<(u64, bool)>> {
    if x.is_zero() {
        return invalid("sign of zero");
    }
    if !x.is_real() {
        return invalid("positivity needs a conjugation-invariant element");
    }
    let mut prec = START_PREC + 4 * x.num.iter().map(BigInt::bits).max().unwrap_or(0);
    while prec <= MAX_PREC {
        let emb = embeddings_at(x, prec);
        if emb.iter().all(|(_, iv)| !iv.contains_zero()) {
            return Ok(emb
                .into_iter()
                .map(|(a, iv)| (a, iv.is_positive()))
                .collect());
        }
        prec *= 2;
    }
    Err(Error::Undecided(format!(
        "embedding signs of {x} unresolved at {MAX_PREC} bits"
    )))
}

/// True iff every real embedding of the nonzero real element is positive.
pub fn is_totally_positive(x: &CycNum) -> Result<bool> {
    Ok(embedding_signs(x)?.iter().all(|&(_, pos)| pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{special, SpecialKind};

    #[test]
    fn examples() {
        let p8 = special(SpecialKind::PN, 8).unwrap().value;
        assert!(is_totally_positive(&p8).unwrap());
        let pp = special(SpecialKind::PPrime, 12).unwrap().value;
        assert!(!is_totally_positive(&pp).unwrap());
        assert!(!is_totally_positive(&CycNum::integer(7, -1)).unwrap());
        assert!(is_totally_positive(&CycNum::zero(8)).is_err());
        assert!(is_totally_positive(&CycNum::zeta(8)).is_err());
    }

    #[test]
    fn embeddings_of_sqrt2() {
        let c = &CycNum::zeta(8) + &CycNum::zeta_pow(8, -1);
        let e = real_embeddings(&c, 80).unwrap();
        assert_eq!(e.len(), 2);
        assert!((e[0].1.mid_f64() - 2f64.sqrt()).abs() < 1e-12);
        assert!((e[1].1.mid_f64() + 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn tiny_but_nonzero_is_resolved() {
        // (1+√2)^{-40} is positive; its conjugate is huge in absolute value
        let u = &CycNum::one(8) + &(&CycNum::zeta(8) + &CycNum::zeta_pow(8, -1));
        let x = u.powi(-40).unwrap();
        assert!(is_totally_positive(&x).unwrap());
        let y = &x - &CycNum::rational(8, BigRational::new(1.into(), BigInt::from(10).pow(15)));
        assert!(!is_totally_positive(&y).unwrap());
    }
}
