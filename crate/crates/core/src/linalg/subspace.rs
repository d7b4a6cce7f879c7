//! Subspaces of `F_q^n` in canonical reduced row echelon form.

use num_traits::ToPrimitive;

use super::{gaussian_binomial, rref_in_place, Mat};
use crate::error::{input, Error, Result};
use crate::field::Field;

/// A subspace of `F_q^n`, stored as its RREF basis. Two values are equal
/// exactly when they describe the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    dim: usize,
    basis: Vec<u32>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Row-major RREF basis, `dim × n`.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.basis[i * self.n..(i + 1) * self.n]
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_flat(self.dim, self.n, self.basis.clone()).expect("shape is consistent")
    }

    /// Each basis row as a little-endian base-`q` integer.
    pub fn encode_rows(&self, q: u64) -> Vec<u64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().rev().fold(0u64, |acc, &x| acc * q + x as u64))
            .collect()
    }
}

/// The ambient space `F_q^n`; all subspace operations go through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    field: Field,
    n: usize,
}

impl Ambient {
    pub fn new(field: Field, n: usize) -> Self {
        Ambient { field, n }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    fn check(&self, x: &Subspace) -> Result<()> {
        if x.n != self.n {
            return input(format!(
                "subspace of F_q^{} used in ambient F_q^{}",
                x.n, self.n
            ));
        }
        Ok(())
    }

    /// Canonical row space of `count` rows stored row-major in `rows`.
    pub fn span_flat(&self, mut rows: Vec<u32>, count: usize) -> Subspace {
        debug_assert_eq!(rows.len(), count * self.n);
        let pivots = rref_in_place(&self.field, &mut rows, count, self.n);
        rows.truncate(pivots.len() * self.n);
        Subspace {
            n: self.n,
            dim: pivots.len(),
            basis: rows,
            pivots,
        }
    }

    pub fn from_mat(&self, m: &Mat) -> Result<Subspace> {
        if m.cols() != self.n {
            return input(format!("expected {} columns, got {}", self.n, m.cols()));
        }
        if !m.all_in(&self.field) {
            return input("entry outside the base field");
        }
        Ok(self.span_flat(m.data().to_vec(), m.rows()))
    }

    pub fn from_rows(&self, rows: &[Vec<u32>]) -> Result<Subspace> {
        self.from_mat(&Mat::from_rows(self.n, rows)?)
    }

    pub fn zero(&self) -> Subspace {
        Subspace {
            n: self.n,
            dim: 0,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(&self) -> Subspace {
        self.span_flat(Mat::identity(self.n).data().to_vec(), self.n)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self, x: &Subspace) -> Subspace {
        let n = self.n;
        let mut is_pivot = vec![false; n];
        for &p in &x.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut rows = vec![0u32; free.len() * n];
        for (t, &fc) in free.iter().enumerate() {
            rows[t * n + fc] = 1;
            for (i, &pc) in x.pivots.iter().enumerate() {
                rows[t * n + pc] = self.field.neg(x.basis[i * n + fc]);
            }
        }
        self.span_flat(rows, free.len())
    }

    pub fn sum(&self, x: &Subspace, y: &Subspace) -> Result<Subspace> {
        self.check(x)?;
        self.check(y)?;
        let mut rows = x.basis.clone();
        rows.extend_from_slice(&y.basis);
        Ok(self.span_flat(rows, x.dim + y.dim))
    }

    /// `X ∩ Y = (X^⊥ + Y^⊥)^⊥`.
    pub fn intersection(&self, x: &Subspace, y: &Subspace) -> Result<Subspace> {
        let s = self.sum(&self.perp(x), &self.perp(y))?;
        Ok(self.perp(&s))
    }

    /// Residue of `v` after clearing `x`'s pivot columns; zero iff `v ∈ x`.
    fn reduce(&self, x: &Subspace, v: &mut [u32]) {
        for (i, &p) in x.pivots.iter().enumerate() {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (j, vj) in v.iter_mut().enumerate() {
                let b = x.basis[i * self.n + j];
                if b != 0 {
                    *vj = self.field.sub(*vj, self.field.mul(c, b));
                }
            }
        }
    }

    pub fn contains_vector(&self, x: &Subspace, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(x, &mut w);
        w.iter().all(|&c| c == 0)
    }

    /// `y ⊆ x`.
    pub fn contains(&self, x: &Subspace, y: &Subspace) -> bool {
        y.dim <= x.dim && (0..y.dim).all(|i| self.contains_vector(x, y.row(i)))
    }

    fn count_checked(&self, dim: usize, s: usize, cap: u64) -> Result<()> {
        let count = gaussian_binomial(dim as i64, s as i64, self.q());
        match count.to_u64() {
            Some(c) if c <= cap => Ok(()),
            _ => Err(Error::Resource(format!(
                "{count} subspaces of dimension {s} in dimension {dim} exceed the cap of {cap}"
            ))),
        }
    }

    /// Every `s`-dimensional subspace exactly once: pivot sets in
    /// lexicographic order, then free entries in odometer order.
    pub fn enumerate(&self, s: usize, cap: u64) -> Result<Subspaces> {
        if s > self.n {
            return input(format!("no subspaces of dimension {s} in F_q^{}", self.n));
        }
        self.count_checked(self.n, s, cap)?;
        Ok(Subspaces::new(self.n, s, self.q() as u32))
    }

    /// All subspaces, by increasing dimension.
    pub fn all_subspaces(&self, cap: u64) -> Result<Vec<Subspace>> {
        let mut total = num_bigint::BigInt::from(0);
        for s in 0..=self.n {
            total += gaussian_binomial(self.n as i64, s as i64, self.q());
        }
        if total.to_u64().is_none_or(|t| t > cap) {
            return Err(Error::Resource(format!(
                "{total} subspaces of F_q^{} exceed the cap of {cap}",
                self.n
            )));
        }
        let mut out = Vec::new();
        for s in 0..=self.n {
            out.extend(Subspaces::new(self.n, s, self.q() as u32));
        }
        Ok(out)
    }

    /// Coordinates of `v ⊆ u` in the RREF basis of `u`, as a subspace of
    /// `F_q^{dim u}`. For an RREF basis these are the pivot-column entries.
    pub fn chart_coords(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        if !self.contains(u, v) {
            return input("subspace is not contained in the chart");
        }
        let inner = Ambient::new(self.field.clone(), u.dim);
        let mut rows = Vec::with_capacity(v.dim * u.dim);
        for i in 0..v.dim {
            for &p in &u.pivots {
                rows.push(v.basis[i * self.n + p]);
            }
        }
        Ok(inner.span_flat(rows, v.dim))
    }

    /// Image of `w ⊆ F_q^{rows(chart)}` under `x ↦ x · chart`.
    pub fn lift(&self, chart: &Mat, w: &Subspace) -> Subspace {
        debug_assert_eq!(chart.cols(), self.n);
        debug_assert_eq!(chart.rows(), w.n);
        let mut rows = vec![0u32; w.dim * self.n];
        for i in 0..w.dim {
            for t in 0..w.n {
                let c = w.basis[i * w.n + t];
                if c == 0 {
                    continue;
                }
                for j in 0..self.n {
                    let b = chart.get(t, j);
                    if b != 0 {
                        let cur = rows[i * self.n + j];
                        rows[i * self.n + j] = self.field.add(cur, self.field.mul(c, b));
                    }
                }
            }
        }
        self.span_flat(rows, w.dim)
    }

    /// `s`-dimensional subspaces of `u`, enumerated through `u`'s RREF chart.
    pub fn enumerate_in(&self, u: &Subspace, s: usize, cap: u64) -> Result<Vec<Subspace>> {
        self.check(u)?;
        if s > u.dim {
            return input(format!("no subspaces of dimension {s} inside dimension {}", u.dim));
        }
        self.count_checked(u.dim, s, cap)?;
        let chart = u.to_mat();
        Ok(Subspaces::new(u.dim, s, self.q() as u32)
            .map(|w| self.lift(&chart, &w))
            .collect())
    }

    /// All subspaces of `u`, by increasing dimension.
    pub fn subspaces_of(&self, u: &Subspace, cap: u64) -> Result<Vec<Subspace>> {
        let mut out = Vec::new();
        for s in 0..=u.dim {
            out.extend(self.enumerate_in(u, s, cap)?);
        }
        Ok(out)
    }
}

/// Iterator over the `s`-dimensional subspaces of `F_q^n`, built directly
/// in RREF.
pub struct Subspaces {
    n: usize,
    s: usize,
    q: u32,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    done: bool,
}

impl Subspaces {
    fn new(n: usize, s: usize, q: u32) -> Self {
        let mut it = Subspaces {
            n,
            s,
            q,
            pivots: (0..s).collect(),
            free: Vec::new(),
            digits: Vec::new(),
            done: s > n,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !is_pivot[c] {
                    self.free.push((i, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, s) = (self.n, self.s);
        let mut i = s;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - s + i {
                self.pivots[i] += 1;
                for j in i + 1..s {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let n = self.n;
        let mut basis = vec![0u32; self.s * n];
        for (i, &p) in self.pivots.iter().enumerate() {
            basis[i * n + p] = 1;
        }
        for (&(i, c), &d) in self.free.iter().zip(&self.digits) {
            basis[i * n + c] = d;
        }
        let out = Subspace {
            n,
            dim: self.s,
            basis,
            pivots: self.pivots.clone(),
        };
        self.advance();
        Some(out)
    }
}
