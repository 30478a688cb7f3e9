//! Factorization of square-free primitive integer polynomials in one variable.
//!
//! Berlekamp modulo a small prime, linear multifactor Hensel lifting, then
//! recombination of the lifted factors by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer polynomial, index `i` holds the coefficient of `x^i`.
pub type ZPoly = Vec<BigInt>;

type Fp = Vec<u64>;

fn trim_fp(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn trim_z(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_from_z(f: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut out: Fp = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    trim_fp(&mut out);
    out
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_fp(&mut out);
    out
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim_fp(&mut out);
    out
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let mut r = a.clone();
    trim_fp(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - c * bc % p) % p;
        }
        trim_fp(&mut r);
    }
    trim_fp(&mut q);
    (q, r)
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    let sc = |v: &Fp| {
        let mut o: Fp = v.iter().map(|&c| c * inv % p).collect();
        trim_fp(&mut o);
        o
    };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    let mut out: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim_fp(&mut out);
    out
}

/// Berlekamp factorization of a monic square-free polynomial modulo `p`.
fn berlekamp(f: &Fp, p: u64) -> Vec<Fp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows of Q: x^(i p) mod f.
    let xp = {
        let mut acc = vec![1u64];
        let mut base = vec![0u64, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_divrem(&fp_mul(&acc, &base, p), f, p).1;
            }
            base = fp_divrem(&fp_mul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        acc
    };
    let mut q = vec![vec![0u64; n]; n];
    let mut cur = vec![1u64];
    for row in q.iter_mut() {
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // Nullspace of (Q - I)^T acting on coefficient vectors: v Q = v.
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut c = q[j][i];
            if i == j {
                c = (c + p - 1) % p;
            }
            m[i][j] = c;
        }
    }
    let basis = nullspace_mod(&mut m, p);
    let k = basis.len();
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == k {
            break;
        }
        let mut vpoly = v.clone();
        trim_fp(&mut vpoly);
        if vpoly.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = fp_sub(&vpoly, &vec![s], p);
                let h = fp_gcd(&rest, &shifted, p);
                if h.len() > 1 && h.len() < rest.len() {
                    rest = fp_divrem(&rest, &h, p).0;
                    next.push(h);
                }
            }
            next.push(fp_monic(&rest, p));
        }
        factors = next;
    }
    factors
}

fn nullspace_mod(m: &mut [Vec<u64>], p: u64) -> Vec<Fp> {
    let n = m.len();
    let cols = m[0].len();
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (v, w) in m[i].iter_mut().zip(&pivot) {
                    *v = (*v + p - f * w % p) % p;
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for c in 0..cols {
            let pr = pivot_of_col[c];
            if pr != usize::MAX {
                v[c] = (p - m[pr][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..2000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn zmod(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(&mut out);
    out
}

fn z_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut o: ZPoly = a.iter().map(|c| zmod(c, m)).collect();
    trim_z(&mut o);
    o
}

fn fp_to_z(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact division over the integers; `None` if not exact.
pub fn z_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    trim_z(&mut r);
    let lb = b.last()?;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        trim_z(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    trim_z(&mut q);
    Some(q)
}

fn z_content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let c = z_content(a);
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

/// Irreducible factors over the integers of a primitive square-free polynomial.
pub fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let f = z_primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    // Choose among a few good primes the one with fewest modular factors.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fp = fp_from_z(&f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = fp_gcd(&fp, &fp_derivative(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        let facs = berlekamp(&fp_monic(&fp, p), p);
        if facs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modular) = best.expect("a suitable prime exists for square-free input");
    let lc = f.last().unwrap().clone();
    // Coefficient bound for factors of lc * f.
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2).pow(n as u32) * BigInt::from(n + 1) * &maxc * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

fn hensel_lift(f: &ZPoly, factors: &[Fp], p: u64, k: u32) -> Vec<ZPoly> {
    let r = factors.len();
    let pb = BigInt::from(p);
    // Partial-fraction cofactors: sum s_i prod_{j != i} g_j = 1 (mod p).
    let mut s: Vec<Fp> = Vec::with_capacity(r);
    for i in 0..r {
        let mut other = vec![1u64];
        for (j, g) in factors.iter().enumerate() {
            if j != i {
                other = fp_mul(&other, g, p);
            }
        }
        let (_, _, t) = fp_xgcd(&factors[i], &other, p);
        s.push(fp_divrem(&t, &factors[i], p).1);
    }
    let mut g: Vec<ZPoly> = factors.iter().map(fp_to_z).collect();
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let lc = f.last().unwrap();
        let lc_inv = lc.modinv(&next).expect("lc invertible modulo p^k");
        let monic_f = z_mod(&f.iter().map(|c| c * &lc_inv).collect::<ZPoly>(), &next);
        let mut prod = vec![BigInt::one()];
        for gi in &g {
            prod = z_mod(&z_mul(&prod, gi), &next);
        }
        let n = monic_f.len().max(prod.len());
        let mut e = Vec::with_capacity(n);
        for i in 0..n {
            let a = monic_f.get(i).cloned().unwrap_or_default();
            let b = prod.get(i).cloned().unwrap_or_default();
            e.push(zmod(&(a - b), &next) / &pk);
        }
        let e = fp_from_z(&e, p);
        if !e.is_empty() {
            for i in 0..r {
                let delta = fp_divrem(&fp_mul(&e, &s[i], p), &factors[i], p).1;
                for (j, c) in delta.iter().enumerate() {
                    g[i][j] += BigInt::from(*c) * &pk;
                }
            }
        }
        pk = next;
    }
    g
}

fn recombine(mut f: ZPoly, mut modular: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = z_mul(&cand, &modular[i]);
                cand = cand.iter().map(|c| symmetric(c, modulus)).collect();
            }
            let cand = z_primitive(&cand);
            if let Some(q) = z_div_exact(&f, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q;
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        found.push(z_primitive(&f));
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn product(fs: &[ZPoly]) -> ZPoly {
        fs.iter().fold(z(&[1]), |a, b| z_mul(&a, b))
    }

    #[test]
    fn irreducible_quadratic() {
        assert_eq!(factor_squarefree(&z(&[-2, 0, 1])), vec![z(&[-2, 0, 1])]);
    }

    #[test]
    fn splits_linear_factors() {
        let f = product(&[z(&[1, 1]), z(&[-2, 1]), z(&[3, 2])]);
        let mut got = factor_squarefree(&f);
        got.sort();
        let mut want = vec![z(&[1, 1]), z(&[-2, 1]), z(&[3, 2])];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn swinnerton_dyer_like_degree_four() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        assert_eq!(factor_squarefree(&z(&[1, 0, -10, 0, 1])).len(), 1);
    }

    #[test]
    fn degree_twelve_product() {
        let parts = vec![
            z(&[1, 0, 1]),
            z(&[-3, 0, 0, 1]),
            z(&[5, -1, 0, 0, 0, 0, 2]),
            z(&[7, 1]),
        ];
        let f = product(&parts);
        assert_eq!(f.len(), 13);
        let got = factor_squarefree(&f);
        assert_eq!(got.len(), 4);
        assert_eq!(product(&got), f);
    }
}
