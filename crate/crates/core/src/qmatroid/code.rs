//! Linear codes over `F_{q^m}` with the rank metric.

use super::super::linalg::{rank, rank_support, Ambient, Mat};
use crate::error::{input, Result};
use crate::field::Field;

/// A `k`-dimensional code in `F_{q^m}^n` given by a full-rank generator
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinCode {
    base: Field,
    field: Field,
    generator: Mat,
}

impl GabidulinCode {
    /// `base` is `F_q` and `field` is `F_{q^m}`; both must be levels of one
    /// tower. Rejects generators that are not of full row rank.
    pub fn new(base: Field, field: Field, generator: Mat) -> Result<Self> {
        field.degree_over(&base)?;
        if generator.cols() == 0 {
            return input("code length must be positive");
        }
        if !generator.all_in(&field) {
            return input("generator entry outside F_{q^m}");
        }
        let r = rank(&field, &generator);
        if r != generator.rows() {
            return input(format!(
                "generator has {} rows but rank {r}",
                generator.rows()
            ));
        }
        Ok(GabidulinCode {
            base,
            field,
            generator,
        })
    }

    /// The Gabidulin code with rows `(a_1^{q^j}, …, a_n^{q^j})` for
    /// `j = 0..k`. The anchors must be `F_q`-independent and
    /// `k ≤ n ≤ m`.
    pub fn mrd(base: Field, field: Field, anchors: &[u32], k: usize) -> Result<Self> {
        let m = field.degree_over(&base)?;
        let n = anchors.len();
        if !(k <= n && n <= m) {
            return input(format!("MRD construction needs k ≤ n ≤ m, got k={k} n={n} m={m}"));
        }
        if anchors.iter().any(|&a| !field.contains(a)) {
            return input("anchor outside F_{q^m}");
        }
        let amb = Ambient::new(base.clone(), n);
        if rank_support(&field, &amb, anchors)?.dim() != n {
            return input("anchors are not linearly independent over F_q");
        }
        let mut rows = Vec::with_capacity(k);
        let mut cur = anchors.to_vec();
        for _ in 0..k {
            rows.push(cur.clone());
            cur = cur.iter().map(|&a| field.frobenius(a, &base)).collect();
        }
        GabidulinCode::new(base, field, Mat::from_rows(n, &rows)?)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Extension degree of `F_{q^m}` over `F_q`.
    pub fn m(&self) -> usize {
        self.field.degree_over(&self.base).expect("checked at construction")
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.base.clone(), self.n())
    }

    /// `u · G` for a message `u ∈ F_{q^m}^k`.
    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.n()];
        for (i, &u) in msg.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(u, self.generator.get(i, j)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn f16() -> (Field, Field) {
        let t = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 0, 0, 1]).unwrap();
        (t.field(0).unwrap(), t.top())
    }

    #[test]
    fn rejects_rank_deficient_generators() {
        let (b, f) = f16();
        let g = Mat::from_rows(2, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(GabidulinCode::new(b.clone(), f.clone(), g).is_err());
        let g = Mat::from_rows(2, &[vec![1, 16]]).unwrap();
        assert!(GabidulinCode::new(b, f, g).is_err());
    }

    #[test]
    fn mrd_rows_are_frobenius_powers() {
        let (b, f) = f16();
        let c = GabidulinCode::mrd(b.clone(), f.clone(), &[1, 2, 4, 8], 2).unwrap();
        assert_eq!(c.generator().row(1), &[1, 4, 3, 12]);
        assert_eq!((c.n(), c.k(), c.m()), (4, 2, 4));
        assert!(GabidulinCode::mrd(b.clone(), f.clone(), &[1, 2, 3, 8], 2).is_err());
        assert!(GabidulinCode::mrd(b, f, &[1, 2], 3).is_err());
    }

    #[test]
    fn encoding_is_linear_combination_of_rows() {
        let (b, f) = f16();
        let g = Mat::from_rows(4, &[vec![7, 4, 11, 15], vec![7, 9, 2, 3], vec![5, 1, 5, 9]]).unwrap();
        let c = GabidulinCode::new(b, f, g).unwrap();
        assert_eq!(c.encode(&[0, 1, 0]), vec![7, 9, 2, 3]);
        assert_eq!(c.encode(&[1, 1, 0]), vec![0, 13, 9, 12]);
    }
}
