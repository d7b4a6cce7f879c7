//! Matrix expansion of vectors over an extension field and their rank
//! supports.

use super::{Ambient, Mat, Subspace};
use crate::error::Result;
use crate::field::Field;

/// The `deg × n` matrix over `base` whose column `j` holds the coordinates
/// of `c[j]` in the tower basis of `top` over `base`.
pub fn expand_codeword(top: &Field, base: &Field, c: &[u32]) -> Result<Mat> {
    let deg = top.degree_over(base)?;
    let n = c.len();
    let mut m = Mat::zeros(deg, n);
    let mut col = vec![0u32; deg];
    for (j, &x) in c.iter().enumerate() {
        top.coords_into(x, base.order(), &mut col);
        for (t, &v) in col.iter().enumerate() {
            m.set(t, j, v);
        }
    }
    Ok(m)
}

/// Row space over `base` of [`expand_codeword`]; its dimension is the rank
/// weight of `c`.
pub fn rank_support(top: &Field, ambient: &Ambient, c: &[u32]) -> Result<Subspace> {
    let m = expand_codeword(top, ambient.field(), c)?;
    ambient.from_mat(&m)
}

/// Span of the rank supports of a set of vectors.
pub fn rank_support_of_set(top: &Field, ambient: &Ambient, words: &[Vec<u32>]) -> Result<Subspace> {
    let mut rows = Vec::new();
    let mut count = 0;
    for c in words {
        let m = expand_codeword(top, ambient.field(), c)?;
        rows.extend_from_slice(m.data());
        count += m.rows();
    }
    Ok(ambient.span_flat(rows, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn setup() -> (Field, Ambient) {
        let t = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 0, 0, 1]).unwrap();
        (t.top(), Ambient::new(t.field(0).unwrap(), 4))
    }

    #[test]
    fn basis_vector_expands_to_identity() {
        let (top, amb) = setup();
        let m = expand_codeword(&top, amb.field(), &[1, 2, 4, 8]).unwrap();
        assert_eq!(m, Mat::identity(4));
        assert_eq!(rank_support(&top, &amb, &[1, 2, 4, 8]).unwrap(), amb.full());
        assert_eq!(expand_codeword(&top, amb.field(), &[0; 4]).unwrap(), Mat::zeros(4, 4));
        assert_eq!(rank_support(&top, &amb, &[0; 4]).unwrap(), amb.zero());
    }

    #[test]
    fn expansion_is_additive() {
        let (top, amb) = setup();
        let c = [7u32, 4, 11, 15];
        let d = [7u32, 9, 2, 3];
        let sum: Vec<u32> = c.iter().zip(&d).map(|(&a, &b)| top.add(a, b)).collect();
        let ec = expand_codeword(&top, amb.field(), &c).unwrap();
        let ed = expand_codeword(&top, amb.field(), &d).unwrap();
        let es = expand_codeword(&top, amb.field(), &sum).unwrap();
        for (i, &v) in es.data().iter().enumerate() {
            assert_eq!(v, amb.field().add(ec.data()[i], ed.data()[i]));
        }
    }

    #[test]
    fn support_is_scale_invariant() {
        let (top, amb) = setup();
        for c in [[7u32, 4, 11, 15], [5, 1, 5, 9], [0, 3, 0, 3]] {
            let base = rank_support(&top, &amb, &c).unwrap();
            for lambda in 1..16 {
                let scaled: Vec<u32> = c.iter().map(|&x| top.mul(lambda, x)).collect();
                assert_eq!(rank_support(&top, &amb, &scaled).unwrap(), base);
            }
        }
    }

    #[test]
    fn set_support_is_the_sum() {
        let (top, amb) = setup();
        let a = vec![1u32, 1, 0, 0];
        let b = vec![0u32, 0, 1, 0];
        let s = rank_support_of_set(&top, &amb, &[a.clone(), b.clone()]).unwrap();
        let want = amb
            .sum(
                &rank_support(&top, &amb, &a).unwrap(),
                &rank_support(&top, &amb, &b).unwrap(),
            )
            .unwrap();
        assert_eq!(s, want);
        assert_eq!(s.dim(), 2);
    }
}
