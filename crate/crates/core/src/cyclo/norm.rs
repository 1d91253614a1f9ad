//! Absolute norms and inverses on integer coefficient vectors.
//!
//! For 4 | m the field ℚ(ζ_m) is quadratic over ℚ(ζ_{m/2}) with
//! Φ_m(x) = Φ_{m/2}(x²), so x(ζ)·x(−ζ) = E(y)² − y·O(y)² lies in the
//! subfield (y = ζ²). Norms and inverses descend through that tower; the
//! odd part is handled directly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{poly_mul, reduce_mod_phi};
use crate::util::gcd;

/// Splits into even- and odd-index parts.
fn split(v: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let e = v.iter().step_by(2).cloned().collect();
    let o = v.iter().skip(1).step_by(2).cloned().collect();
    (e, o)
}

/// x(ζ)·x(−ζ) expressed at modulus m/2, for 4 | m.
fn descend(m: u64, v: &[BigInt]) -> Vec<BigInt> {
    let (e, o) = split(v);
    let mut w = poly_mul(&e, &e);
    if !o.is_empty() {
        let o2 = poly_mul(&o, &o);
        if w.len() < o2.len() + 1 {
            w.resize(o2.len() + 1, BigInt::zero());
        }
        for (i, c) in o2.into_iter().enumerate() {
            w[i + 1] -= c;
        }
    }
    reduce_mod_phi(&mut w, m / 2);
    w
}

/// Isomorphism ℚ(ζ_{2k}) → ℚ(ζ_k) for odd k, ζ_{2k} ↦ −ζ_k^{(k+1)/2}.
pub(super) fn to_odd_half(m: u64, v: &[BigInt]) -> Vec<BigInt> {
    let k = m / 2;
    let h = k.div_ceil(2);
    let mut w = vec![BigInt::zero(); k as usize];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = ((i as u64 * h) % k) as usize;
        if i % 2 == 0 {
            w[idx] += c;
        } else {
            w[idx] -= c;
        }
    }
    reduce_mod_phi(&mut w, k);
    w
}

/// Inverse of [`to_odd_half`]: ζ_k ↦ ζ_{2k}².
pub(super) fn from_odd_half(k: u64, v: &[BigInt]) -> Vec<BigInt> {
    let m = 2 * k;
    let mut w = vec![BigInt::zero(); m as usize];
    for (i, c) in v.iter().enumerate() {
        w[(2 * i as u64 % m) as usize] += c;
    }
    reduce_mod_phi(&mut w, m);
    w
}

/// Substitution ζ ↦ ζ^a on a reduced vector.
fn galois_vec(m: u64, v: &[BigInt], a: u64) -> Vec<BigInt> {
    let mut w = vec![BigInt::zero(); m as usize];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            w[((i as u64 * a) % m) as usize] += c;
        }
    }
    reduce_mod_phi(&mut w, m);
    w
}

fn mul_mod(m: u64, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut w = super::poly::fold_exponents(poly_mul(a, b), m);
    reduce_mod_phi(&mut w, m);
    w
}

/// Norm of the integral element with coefficient vector `v` at modulus `m`.
pub(crate) fn norm_int(mut m: u64, mut v: Vec<BigInt>) -> BigInt {
    loop {
        if m <= 2 {
            return v[0].clone();
        }
        if m % 4 == 0 {
            v = descend(m, &v);
            m /= 2;
            continue;
        }
        if m % 2 == 0 {
            v = to_odd_half(m, &v);
            m /= 2;
            continue;
        }
        if m == 3 {
            let (a, b) = (&v[0], &v[1]);
            return a * a - a * b + b * b;
        }
        return bareiss_norm(m, &v);
    }
}

/// Determinant of multiplication by `v` on the power basis.
#[allow(clippy::needless_range_loop)]
fn bareiss_norm(m: u64, v: &[BigInt]) -> BigInt {
    let n = v.len();
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    let mut col = v.to_vec();
    for j in 0..n {
        for i in 0..n {
            rows[i][j] = col[i].clone();
        }
        // multiply by ζ
        let mut next = vec![BigInt::zero(); n + 1];
        next[1..].clone_from_slice(&col);
        reduce_mod_phi(&mut next, m);
        col = next;
    }
    bareiss_det(rows)
}

/// Fraction-free Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Returns `(w, d)` with x⁻¹ = w/d for the nonzero integral element `v`.
pub(crate) fn inverse_int(m: u64, v: Vec<BigInt>) -> (Vec<BigInt>, BigInt) {
    if m <= 2 {
        return (vec![BigInt::one()], v[0].clone());
    }
    if m % 4 == 0 {
        let half = descend(m, &v);
        let (u, d) = inverse_int(m / 2, half);
        // x(−ζ)
        let xbar: Vec<BigInt> = v
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .collect();
        let mut lifted = vec![BigInt::zero(); 2 * u.len()];
        for (i, c) in u.into_iter().enumerate() {
            lifted[2 * i] = c;
        }
        return (mul_mod(m, &xbar, &lifted), d);
    }
    if m % 2 == 0 {
        let (u, d) = inverse_int(m / 2, to_odd_half(m, &v));
        return (from_odd_half(m / 2, &u), d);
    }
    let mut adj = vec![BigInt::zero(); v.len()];
    adj[0] = BigInt::one();
    for a in 2..m {
        if gcd(a, m) == 1 {
            adj = mul_mod(m, &adj, &galois_vec(m, &v, a));
        }
    }
    let n = mul_mod(m, &v, &adj);
    debug_assert!(n[1..].iter().all(Zero::is_zero));
    (adj, n[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::euler_phi;

    /// Floating product of all complex conjugates.
    fn float_norm(m: u64, v: &[i64]) -> f64 {
        let mut prod = (1.0f64, 0.0f64);
        for a in 1..=m {
            if gcd(a, m) != 1 {
                continue;
            }
            let (mut re, mut im) = (0.0, 0.0);
            for (i, &c) in v.iter().enumerate() {
                let t = 2.0 * std::f64::consts::PI * (a as f64) * (i as f64) / (m as f64);
                re += c as f64 * t.cos();
                im += c as f64 * t.sin();
            }
            prod = (prod.0 * re - prod.1 * im, prod.0 * im + prod.1 * re);
        }
        prod.0
    }

    #[test]
    fn norm_matches_float_oracle() {
        for m in 1..=40u64 {
            let phi = euler_phi(m) as usize;
            let v: Vec<i64> = (0..phi)
                .map(|i| ((i * 7 + m as usize) % 5) as i64 - 2)
                .collect();
            let exact = norm_int(m, v.iter().map(|&c| BigInt::from(c)).collect());
            let approx = float_norm(m, &v);
            let e: f64 = exact.to_string().parse().unwrap();
            assert!(
                (e - approx).abs() <= 1e-6 * approx.abs().max(1.0),
                "m = {m}: {e} vs {approx}"
            );
        }
    }

    #[test]
    fn bareiss_agrees_with_descent() {
        for m in [8u64, 12, 16, 20, 24] {
            let phi = euler_phi(m) as usize;
            let v: Vec<BigInt> = (0..phi)
                .map(|i| BigInt::from((i * i % 7) as i64 - 3))
                .collect();
            assert_eq!(norm_int(m, v.clone()), bareiss_norm(m, &v));
        }
    }
}
