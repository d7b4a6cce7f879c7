//! Towers of finite fields `F_p ⊂ F_{p^a} ⊂ F_{p^{ab}} ⊂ ...`.
//!
//! Every level is the polynomial quotient `prev[X]/(f)` for a monic
//! irreducible `f`, with the polynomial basis `{1, a, a^2, ...}` over the
//! previous level. Elements are stored as integer encodings,
//! `value = Σ c_i · |prev|^i`, little-endian in that basis. Because the
//! encodings nest, an element of a lower level keeps its encoding when viewed
//! in a higher level, and the base-`|F_j|` digits of an encoding are exactly
//! its coordinates over level `j` in the product basis.

mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{input, Error, Result};

pub use poly::smallest_factor_degree;

/// Largest field order a tower may reach.
pub const MAX_FIELD_ORDER: u64 = 1 << 31;

#[derive(Debug, PartialEq, Eq)]
struct Level {
    degree: usize,
    /// Monic modulus over the previous level, constant term first. Empty for
    /// the prime level.
    modulus: Vec<u32>,
    order: u64,
}

#[derive(Debug, PartialEq, Eq)]
struct TowerInner {
    p: u32,
    levels: Vec<Level>,
}

/// An immutable chain of field extensions over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTower {
    inner: Arc<TowerInner>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<u64> = self.inner.levels.iter().map(|l| l.order).collect();
        f.debug_struct("FieldTower")
            .field("p", &self.inner.p)
            .field("orders", &orders)
            .finish()
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTower {
    /// One-level tower holding `F_p`.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::Resource(format!(
                "field order {p} exceeds the cap of {MAX_FIELD_ORDER}"
            )));
        }
        Ok(FieldTower {
            inner: Arc::new(TowerInner {
                p: p as u32,
                levels: vec![Level {
                    degree: 1,
                    modulus: Vec::new(),
                    order: p,
                }],
            }),
        })
    }

    /// Adjoins a root of `modulus` (coefficients over the top level, constant
    /// term first, monic) and returns the taller tower.
    pub fn extend(&self, modulus: &[u32]) -> Result<Self> {
        let top = self.top();
        let degree = match modulus.len() {
            0..=2 => return input("extension modulus must have degree at least 2"),
            len => len - 1,
        };
        if modulus[degree] != 1 {
            return input("extension modulus must be monic");
        }
        if let Some(&bad) = modulus.iter().find(|&&c| !top.contains(c)) {
            return input(format!(
                "modulus coefficient {bad} is not an element of the order-{} field",
                top.order()
            ));
        }
        let order = (top.order() as u128).pow(degree as u32);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::Resource(format!(
                "extension of order {order} exceeds the cap of {MAX_FIELD_ORDER}"
            )));
        }
        if let Some(d) = smallest_factor_degree(&top, modulus) {
            return input(format!(
                "modulus is reducible: it has an irreducible factor of degree {d}"
            ));
        }
        let mut levels: Vec<Level> = self
            .inner
            .levels
            .iter()
            .map(|l| Level {
                degree: l.degree,
                modulus: l.modulus.clone(),
                order: l.order,
            })
            .collect();
        levels.push(Level {
            degree,
            modulus: modulus.to_vec(),
            order: order as u64,
        });
        Ok(FieldTower {
            inner: Arc::new(TowerInner {
                p: self.inner.p,
                levels,
            }),
        })
    }

    /// The monic irreducible polynomial of the given degree over the top level
    /// whose non-leading coefficients have the smallest encoding
    /// `Σ c_i · |top|^i`.
    pub fn find_irreducible(&self, degree: usize) -> Result<Vec<u32>> {
        if degree == 0 {
            return input("irreducible polynomials have degree at least 1");
        }
        let top = self.top();
        let s = top.order();
        if (s as f64).powi(degree as i32) > 1e15 {
            return Err(Error::Resource(format!(
                "search space for degree-{degree} polynomials over F_{s} is too large"
            )));
        }
        let count = s.pow(degree as u32);
        for code in 0..count {
            let mut poly = Vec::with_capacity(degree + 1);
            let mut rest = code;
            for _ in 0..degree {
                poly.push((rest % s) as u32);
                rest /= s;
            }
            poly.push(1);
            if smallest_factor_degree(&top, &poly).is_none() {
                return Ok(poly);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn num_levels(&self) -> usize {
        self.inner.levels.len()
    }

    pub fn order(&self, level: usize) -> u64 {
        self.inner.levels[level].order
    }

    /// Modulus used to build `level` from the one below it.
    pub fn modulus(&self, level: usize) -> &[u32] {
        &self.inner.levels[level].modulus
    }

    pub fn field(&self, level: usize) -> Result<Field> {
        if level >= self.num_levels() {
            return input(format!(
                "level {level} does not exist in a tower of height {}",
                self.num_levels()
            ));
        }
        Ok(Field {
            tower: self.clone(),
            level,
        })
    }

    pub fn top(&self) -> Field {
        Field {
            tower: self.clone(),
            level: self.num_levels() - 1,
        }
    }

    pub fn element(&self, level: usize, value: u32) -> Result<FieldElement> {
        let f = self.field(level)?;
        if !f.contains(value) {
            return input(format!(
                "{value} is not an element of the order-{} field",
                f.order()
            ));
        }
        Ok(FieldElement { level, value })
    }

    fn same_level(&self, a: FieldElement, b: FieldElement) -> Result<Field> {
        if a.level != b.level {
            return input(format!(
                "operands live on different levels ({} and {})",
                a.level, b.level
            ));
        }
        self.field(a.level)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let f = self.same_level(a, b)?;
        Ok(f.wrap(f.add(a.value, b.value)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let f = self.same_level(a, b)?;
        Ok(f.wrap(f.sub(a.value, b.value)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let f = self.same_level(a, b)?;
        Ok(f.wrap(f.mul(a.value, b.value)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let f = self.same_level(a, b)?;
        Ok(f.wrap(f.div(a.value, b.value)?))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let f = self.field(a.level)?;
        Ok(f.wrap(f.inv(a.value)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        let f = self.field(a.level)?;
        Ok(f.wrap(f.pow(a.value, e)))
    }

    /// `x ↦ x^|F_sublevel|`.
    pub fn frobenius(&self, a: FieldElement, sublevel: usize) -> Result<FieldElement> {
        if sublevel > a.level {
            return input("Frobenius base level must lie below the element");
        }
        self.pow(a, self.order(sublevel))
    }

    /// Coordinates of `x` over `sublevel` in the tower basis.
    pub fn coords(&self, x: FieldElement, sublevel: usize) -> Result<Vec<u32>> {
        let f = self.field(x.level)?;
        let sub = self.field(sublevel)?;
        let m = f.degree_over(&sub)?;
        let mut out = vec![0; m];
        f.coords_into(x.value, sub.order(), &mut out);
        Ok(out)
    }

    pub fn from_coords(&self, level: usize, sublevel: usize, coords: &[u32]) -> Result<FieldElement> {
        let f = self.field(level)?;
        let sub = self.field(sublevel)?;
        let m = f.degree_over(&sub)?;
        if coords.len() != m {
            return input(format!("expected {m} coordinates, got {}", coords.len()));
        }
        if let Some(&c) = coords.iter().find(|&&c| !sub.contains(c)) {
            return input(format!("coordinate {c} is out of range"));
        }
        let s = sub.order();
        let value = coords.iter().rev().fold(0u64, |acc, &c| acc * s + c as u64);
        Ok(FieldElement {
            level,
            value: value as u32,
        })
    }
}

impl TowerInner {
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0u32, 1u32);
        while a != 0 || b != 0 {
            let d = (a % p + b % p) % p;
            out += d * scale;
            a /= p;
            b /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let (mut out, mut scale) = (0u32, 1u32);
        while a != 0 {
            let d = (p - a % p) % p;
            out += d * scale;
            a /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    fn mul(&self, level: usize, a: u32, b: u32) -> u32 {
        if level == 0 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if a == 1 {
            return b;
        }
        if b == 1 {
            return a;
        }
        let lv = &self.levels[level];
        let d = lv.degree;
        let base = self.levels[level - 1].order as u32;
        let mut xa = [0u32; 32];
        let mut xb = [0u32; 32];
        let (mut ra, mut rb) = (a, b);
        for i in 0..d {
            xa[i] = ra % base;
            ra /= base;
            xb[i] = rb % base;
            rb /= base;
        }
        let mut prod = [0u32; 64];
        for i in 0..d {
            if xa[i] == 0 {
                continue;
            }
            for j in 0..d {
                if xb[j] == 0 {
                    continue;
                }
                let t = self.mul(level - 1, xa[i], xb[j]);
                prod[i + j] = self.add(prod[i + j], t);
            }
        }
        // X^d = -(m_0 + m_1 X + ... + m_{d-1} X^{d-1})
        for t in (d..2 * d - 1).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            for j in 0..d {
                let mj = lv.modulus[j];
                if mj != 0 {
                    let s = self.mul(level - 1, c, mj);
                    prod[t - d + j] = self.add(prod[t - d + j], self.neg(s));
                }
            }
        }
        prod[..d]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * base as u64 + c as u64) as u32
    }
}

/// One level of a [`FieldTower`], viewed as a field in its own right.
/// Elements are raw `u32` encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    tower: FieldTower,
    level: usize,
}

impl Field {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn order(&self) -> u64 {
        self.tower.inner.levels[self.level].order
    }

    pub fn characteristic(&self) -> u32 {
        self.tower.inner.p
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        (x as u64) < self.order()
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement {
            level: self.level,
            value,
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.tower.inner.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.tower.inner.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let inner = &self.tower.inner;
        inner.add(a, inner.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.tower.inner.mul(self.level, a, b)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        if b == 0 {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x ↦ x^|sub|`, which fixes `sub` pointwise and is `sub`-linear.
    pub fn frobenius(&self, x: u32, sub: &Field) -> u32 {
        self.pow(x, sub.order())
    }

    /// Extension degree of this level over `sub`.
    pub fn degree_over(&self, sub: &Field) -> Result<usize> {
        if sub.tower != self.tower || sub.level > self.level {
            return input("not a subfield of this level in the same tower");
        }
        Ok(self.tower.inner.levels[sub.level + 1..=self.level]
            .iter()
            .map(|l| l.degree)
            .product())
    }

    /// Writes the coordinates of `x` over a subfield of order `sub_order`
    /// into `out`; `out.len()` must be the extension degree.
    #[inline]
    pub fn coords_into(&self, x: u32, sub_order: u64, out: &mut [u32]) {
        let mut rest = x as u64;
        for c in out.iter_mut() {
            *c = (rest % sub_order) as u32;
            rest /= sub_order;
        }
    }

    /// Element with a single base-`p` digit set: the `t`-th vector of the
    /// `F_p`-basis of this field.
    pub fn prime_basis_element(&self, t: usize) -> u32 {
        (self.characteristic() as u64).pow(t as u32) as u32
    }

    /// Dimension of this field over the prime field.
    pub fn prime_degree(&self) -> usize {
        let p = self.characteristic() as u64;
        let mut o = self.order();
        let mut e = 0;
        while o > 1 {
            o /= p;
            e += 1;
        }
        e
    }
}

/// A tower element tagged with its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub level: usize,
    pub value: u32,
}
