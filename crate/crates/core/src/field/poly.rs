//! Dense univariate polynomials over one tower level, constant term first.

use super::Field;

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(f: &Field, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        let shift = top - dm;
        for (j, &mj) in m.iter().enumerate() {
            if mj != 0 {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, mj));
            }
        }
        trim(&mut r);
    }
    r
}

fn mul_mod(f: &Field, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
    }
    rem(f, &prod, m)
}

fn pow_mod(f: &Field, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(f, &b, &b, m);
        }
    }
    acc
}

fn gcd(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// Degree of the smallest irreducible factor of `poly`, or `None` when
/// `poly` is irreducible. Uses `gcd(poly, X^{s^i} - X)` for `i ≤ deg/2`,
/// where `s` is the field order.
pub fn smallest_factor_degree(f: &Field, poly: &[u32]) -> Option<usize> {
    let mut p = poly.to_vec();
    trim(&mut p);
    let d = p.len().saturating_sub(1);
    if d <= 1 {
        return None;
    }
    let s = f.order();
    let x = vec![0u32, 1];
    let mut h = x.clone();
    for i in 1..=d / 2 {
        h = pow_mod(f, &h, s, &p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = f.sub(diff[1], 1);
        trim(&mut diff);
        let g = gcd(f, &p, &diff);
        if g.len() > 1 {
            return Some(i);
        }
    }
    None
}
