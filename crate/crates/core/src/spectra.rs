//! Generalized rank weights, generalized weight polynomials and the weight
//! spectra they determine.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{input, structural, Result};
use crate::lattice::BettiTable;
use crate::linalg::{binomial2, gaussian_binomial, gaussian_binomial_big, matrix_count, Subspace};
use crate::qmatroid::QMatroid;

/// An integer polynomial in `X`, constant term first, without trailing
/// zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightPolynomial {
    coeffs: Vec<BigInt>,
}

impl WeightPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        WeightPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        WeightPolynomial::default()
    }

    pub fn one() -> Self {
        WeightPolynomial::new(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize) -> BigInt {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &WeightPolynomial {
    type Output = WeightPolynomial;

    fn add(self, other: &WeightPolynomial) -> WeightPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        WeightPolynomial::new((0..len).map(|l| self.coeff(l) + other.coeff(l)).collect())
    }
}

impl Sum for WeightPolynomial {
    fn sum<I: Iterator<Item = WeightPolynomial>>(iter: I) -> Self {
        iter.fold(WeightPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one() && l > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match l {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{l}")?,
            }
        }
        Ok(())
    }
}

/// `d_r` for `r = 1..=k`: the least dimension of a subspace with
/// conullity at least `r`.
pub fn weights_by_conullity(m: &QMatroid, cap: u64) -> Result<Vec<usize>> {
    let k = m.full_rank();
    let mut best = vec![0usize; m.n() + 1];
    for x in m.ambient().all_subspaces(cap)? {
        let c = m.conullity(&x);
        best[x.dim()] = best[x.dim()].max(c);
    }
    (1..=k)
        .map(|r| {
            best.iter()
                .position(|&c| c >= r)
                .ok_or_else(|| crate::Error::Structural(format!("no subspace of conullity {r}")))
        })
        .collect()
}

/// `d_r = min { j : β^{(0)}_{r,j} ≠ 0 }`.
pub fn weights_by_betti(table: &BettiTable) -> Result<Vec<usize>> {
    let k = table.levels() - 1;
    (1..=k)
        .map(|r| {
            table
                .entries()
                .range((0, r, 0)..(0, r + 1, 0))
                .map(|(&(_, _, j), _)| j)
                .next()
                .ok_or_else(|| crate::Error::Structural(format!("Betti row {r} is empty")))
        })
        .collect()
}

/// `d_r = n − (largest dimension of a q-flat of rank k − r)`.
pub fn weights_by_flats(m: &QMatroid, cap: u64) -> Result<Vec<usize>> {
    let k = m.full_rank();
    let flats = m.qflats(cap)?;
    (1..=k)
        .map(|r| {
            flats
                .iter()
                .filter(|(_, rank)| *rank == k - r)
                .map(|(f, _)| f.dim())
                .max()
                .map(|mr| m.n() - mr)
                .ok_or_else(|| crate::Error::Structural(format!("no q-flat of rank {}", k - r)))
        })
        .collect()
}

/// `d_i = min { s : deg P_s = i }` for `i = 1..=k`; zero polynomials are
/// skipped.
pub fn weights_from_polys(polys: &[WeightPolynomial], k: usize) -> Result<Vec<usize>> {
    (1..=k)
        .map(|i| {
            polys
                .iter()
                .position(|p| p.degree() == Some(i))
                .ok_or_else(|| crate::Error::Structural(format!("no polynomial of degree {i}")))
        })
        .collect()
}

/// Runs the conullity, Betti and flat methods and insists they agree.
pub fn generalized_weights(m: &QMatroid, table: &BettiTable, cap: u64) -> Result<Vec<usize>> {
    let a = weights_by_conullity(m, cap)?;
    let b = weights_by_betti(table)?;
    let c = weights_by_flats(m, cap)?;
    if a != b || a != c {
        return structural(format!(
            "generalized weights disagree: conullity {a:?}, betti {b:?}, flats {c:?}"
        ));
    }
    Ok(a)
}

/// `P_s(X) = Σ_l Σ_i (−1)^i (β^{(l)}_{i,s} − β^{(l−1)}_{i,s}) X^l` with
/// `β^{(−1)} = 0`.
pub fn weight_poly_betti(table: &BettiTable, s: usize) -> WeightPolynomial {
    let signed = |l: usize| -> BigInt {
        table
            .entries()
            .range((l, 0, 0)..(l + 1, 0, 0))
            .filter(|(&(_, _, j), _)| j == s)
            .map(|(&(_, i, _), v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
            .sum()
    };
    let mut coeffs = Vec::with_capacity(table.levels());
    let mut prev = BigInt::zero();
    for l in 0..table.levels() {
        let cur = signed(l);
        coeffs.push(&cur - &prev);
        prev = cur;
    }
    WeightPolynomial::new(coeffs)
}

/// `P_s(X) = Σ_{dim U = s} Σ_{V ⊆ U} (−1)^{s−dim V} q^{C(s−dim V, 2)} X^{η*(V)}`,
/// by direct enumeration.
pub fn weight_poly_mobius(m: &QMatroid, s: usize, cap: u64) -> Result<WeightPolynomial> {
    if s > m.n() {
        return input(format!("weight {s} exceeds the length {}", m.n()));
    }
    m.ambient()
        .enumerate(s, cap)?
        .map(|u| support_poly_mobius(m, &u, cap))
        .sum()
}

/// The inner sum of [`weight_poly_mobius`] for one `U`: the polynomial
/// counting extension codewords with rank support exactly `U`.
pub fn support_poly_mobius(m: &QMatroid, u: &Subspace, cap: u64) -> Result<WeightPolynomial> {
    let q = BigInt::from(m.q());
    let mut coeffs = vec![BigInt::zero(); m.full_rank() + 1];
    for v in m.ambient().subspaces_of(u, cap)? {
        let gap = (u.dim() - v.dim()) as u32;
        let term = q.pow(binomial2(gap));
        let slot = &mut coeffs[m.conullity(&v)];
        if gap.is_multiple_of(2) {
            *slot += term;
        } else {
            *slot -= term;
        }
    }
    Ok(WeightPolynomial::new(coeffs))
}

/// `A_s = P_s(x)` for every `s`.
pub fn weight_distribution(polys: &[WeightPolynomial], x: &BigInt) -> Vec<BigInt> {
    polys.iter().map(|p| p.eval(x)).collect()
}

/// Solves `P_w(Q^r) = Σ_s [r,s]_Q A^{(s)}_w` for `r = 0..=k` by forward
/// substitution. Row `i` of the result is `A^{(i)}_w` for `w = 0..=n`.
pub fn higher_spectra(polys: &[WeightPolynomial], k: usize, big_q: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let mut out = vec![vec![BigInt::zero(); polys.len()]; k + 1];
    for (w, p) in polys.iter().enumerate() {
        for r in 0..=k {
            let mut rest = p.eval(&big_q.pow(r as u32));
            for (s, row) in out.iter().enumerate().take(r) {
                rest -= matrix_count(r as u32, s as u32, big_q) * &row[w];
            }
            let pivot = matrix_count(r as u32, r as u32, big_q);
            if !(&rest % &pivot).is_zero() {
                return structural(format!(
                    "higher spectrum A^({r})_{w} is not integral: {rest} / {pivot}"
                ));
            }
            out[r][w] = rest / pivot;
        }
    }
    Ok(out)
}

/// Rank-weight distribution of an `[n, k]` MRD code over `F_{q^m}`.
pub fn mrd_closed_form(q: u64, m: usize, n: usize, k: usize) -> Result<Vec<BigInt>> {
    if q < 2 {
        return input("q must be at least 2");
    }
    if !(k <= n && n <= m) {
        return input(format!("MRD codes need k ≤ n ≤ m, got k={k} n={n} m={m}"));
    }
    let qb = BigInt::from(q);
    let d = n - k + 1;
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::one();
    for (r, slot) in out.iter_mut().enumerate().skip(d) {
        let mut acc = BigInt::zero();
        for i in 0..=r - d {
            let term = qb.pow(binomial2(i as u32))
                * gaussian_binomial(r as i64, i as i64, q)
                * (qb.pow((m * (k + r - n - i)) as u32) - 1);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        *slot = gaussian_binomial(n as i64, r as i64, q) * acc;
    }
    Ok(out)
}

/// Möbius values `h^{(l)}_i` of a rank-`l+i` node in the level-`l`
/// collapse of the dual cycle lattice of `U(k, n)`, for `i = 1..=k−l`.
/// A rank-`l+i` cycle has dimension `d−1+l+i` with `d = n−k+1` and
/// contains `[d−1+l+i, i−j]_q` cycles of rank `l+j`.
pub fn uniform_h(q: u64, n: usize, k: usize, l: usize) -> Vec<BigInt> {
    let d = n - k + 1;
    let mut h: Vec<BigInt> = Vec::new();
    for i in 1..=k.saturating_sub(l) {
        let top = (d - 1 + l + i) as i64;
        let mut acc = BigInt::one();
        for (j0, hj) in h.iter().enumerate() {
            let j = j0 + 1;
            acc += gaussian_binomial(top, (i - j) as i64, q) * hj;
        }
        h.push(-acc);
    }
    h
}

/// Betti table of `U(k, n)` from [`uniform_h`]:
/// `β^{(l)}_{i, d−1+l+i} = [n, d−1+l+i]_q |h^{(l)}_i|`.
pub fn uniform_betti_table(q: u64, n: usize, k: usize) -> Result<BettiTable> {
    if k > n {
        return input(format!("uniform q-matroid needs k ≤ n, got k={k} n={n}"));
    }
    let d = n - k + 1;
    let mut entries = Vec::new();
    for l in 0..=k {
        entries.push(((l, 0, 0), BigInt::one()));
        for (i0, h) in uniform_h(q, n, k, l).into_iter().enumerate() {
            let i = i0 + 1;
            let dim = d - 1 + l + i;
            entries.push(((l, i, dim), gaussian_binomial(n as i64, dim as i64, q) * h.abs()));
        }
    }
    Ok(BettiTable::from_entries(n, q, k + 1, entries))
}

/// `φ^{(l)}_s = Σ_{l' ≤ l} [X^{l'}] P_s`, indexed `[l][s]` for
/// `l = 0..levels`.
pub fn phi_from_polys(polys: &[WeightPolynomial], levels: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::zero(); polys.len()]; levels];
    for (s, p) in polys.iter().enumerate() {
        let mut acc = BigInt::zero();
        for (l, row) in out.iter_mut().enumerate() {
            acc += p.coeff(l);
            row[s] = acc.clone();
        }
    }
    out
}

/// Inverse of [`phi_from_polys`]: `[X^l] P_s = φ^{(l)}_s − φ^{(l−1)}_s`.
pub fn polys_from_phi(phi: &[Vec<BigInt>]) -> Vec<WeightPolynomial> {
    let width = phi.first().map_or(0, |r| r.len());
    (0..width)
        .map(|s| {
            let mut prev = BigInt::zero();
            let coeffs = phi
                .iter()
                .map(|row| {
                    let c = &row[s] - &prev;
                    prev = row[s].clone();
                    c
                })
                .collect();
            WeightPolynomial::new(coeffs)
        })
        .collect()
}

/// Evaluated spectra of a code or q-matroid at `Q̃ = Q^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub r: u32,
    pub evaluation_point: BigInt,
    /// `A_s(Q̃)` for `s = 0..=n`.
    pub distribution: Vec<BigInt>,
    /// `A^{(i)}_w` for `i = 0..=k`, `w = 0..=n`.
    pub higher: Vec<Vec<BigInt>>,
    pub weights: Vec<usize>,
}

impl SpectrumTable {
    /// `big_q` is `Q = q^m`.
    pub fn from_polys(polys: &[WeightPolynomial], k: usize, big_q: &BigInt, r: u32) -> Result<Self> {
        let point = big_q.pow(r);
        Ok(SpectrumTable {
            r,
            distribution: weight_distribution(polys, &point),
            evaluation_point: point,
            higher: higher_spectra(polys, k, big_q)?,
            weights: weights_from_polys(polys, k)?,
        })
    }
}

/// `[k, i]_Q` for each `i = 0..=k`: the expected row totals of the higher
/// spectra.
pub fn subcode_counts(k: usize, big_q: &BigInt) -> Vec<BigInt> {
    (0..=k)
        .map(|i| gaussian_binomial_big(k as i64, i as i64, big_q))
        .collect()
}
