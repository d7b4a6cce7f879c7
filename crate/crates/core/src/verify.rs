//! Cross-checks of an [`Analysis`] against independent routes.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::analysis::{Analysis, Options};
use crate::error::{Error, Result};
use crate::input::{Problem, ProblemKind};
use crate::linalg::gaussian_binomial_big;
use crate::oracle::{
    brute_higher, brute_spectrum, inclusion_exclusion_poly, verify_lattice_isomorphism,
    verify_restriction_ideals, CodewordCensus,
};
use crate::qmatroid::{AxiomCheck, QMatroid};
use crate::spectra::{
    mrd_closed_form, phi_from_polys, polys_from_phi, subcode_counts, weight_poly_mobius,
    weights_by_betti, weights_by_conullity, weights_by_flats, weights_from_polys, WeightPolynomial,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

type Outcome = Result<Option<String>>;

fn run(out: &mut Vec<Verdict>, check: &str, f: impl FnOnce() -> Outcome) {
    let (status, witness) = match f() {
        Ok(None) => (Status::Pass, None),
        Ok(Some(w)) => (Status::Fail, Some(w)),
        Err(Error::Resource(msg)) => (Status::Skip, Some(msg)),
        Err(e) => (Status::Fail, Some(e.to_string())),
    };
    out.push(Verdict {
        check: check.to_string(),
        status,
        witness,
    });
}

fn skip(out: &mut Vec<Verdict>, check: &str, why: &str) {
    out.push(Verdict {
        check: check.to_string(),
        status: Status::Skip,
        witness: Some(why.to_string()),
    });
}

fn compare(what: &str, got: &[BigInt], want: &[BigInt]) -> Option<String> {
    (got != want).then(|| format!("{what}: got {got:?}, expected {want:?}"))
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Runs the quick checks, and at [`Level::Full`] the brute-force oracles.
pub fn verify(pr: &Problem, a: &Analysis, level: Level, opts: &Options) -> Vec<Verdict> {
    let m = &pr.matroid;
    let cap = opts.subspace_cap;
    let k = m.full_rank();
    let mut out = Vec::new();

    run(&mut out, "axioms", || {
        Ok(match m.verify_axioms(cap)? {
            AxiomCheck::Pass => None,
            AxiomCheck::Fail { axiom, witness } => Some(format!("{axiom}: {witness}")),
        })
    });
    run(&mut out, "lattice-structure", || {
        let top = a.lattice.nodes().last().map(|c| c.dim());
        Ok((a.lattice.height() != k).then(|| format!("height {} but rank {k} (top dim {top:?})", a.lattice.height())))
    });
    run(&mut out, "polynomial-identity", || {
        for (s, p) in a.polys.iter().enumerate() {
            let direct = weight_poly_mobius(m, s, cap)?;
            if &direct != p {
                return Ok(Some(format!("s = {s}: Betti route {p}, Möbius route {direct}")));
            }
        }
        Ok(None)
    });
    run(&mut out, "weight-methods", || {
        let methods = [
            ("conullity", weights_by_conullity(m, cap)?),
            ("betti", weights_by_betti(&a.betti)?),
            ("flats", weights_by_flats(m, cap)?),
            ("degrees", weights_from_polys(&a.polys, k)?),
        ];
        if let Some((name, w)) = methods.iter().find(|(_, w)| w != &methods[0].1) {
            return Ok(Some(format!("{name} gives {w:?}, conullity gives {:?}", methods[0].1)));
        }
        let w = &methods[0].1;
        let strict = pr.code.is_some() || pr.kind == ProblemKind::Uniform;
        let ordered = w.windows(2).all(|p| if strict { p[0] < p[1] } else { p[0] <= p[1] });
        Ok((!ordered || w.last().is_some_and(|&d| d > m.n())).then(|| format!("weights {w:?} are not increasing")))
    });
    run(&mut out, "mass-conservation", || {
        for t in 1..=3u32 {
            let x = a.big_q.pow(t);
            let vals: Vec<BigInt> = a.polys.iter().map(|p| p.eval(&x)).collect();
            if let Some(neg) = vals.iter().position(|v| v.is_negative()) {
                return Ok(Some(format!("P_{neg}({x}) is negative")));
            }
            let total: BigInt = vals.iter().sum();
            if total != x.pow(k as u32) {
                return Ok(Some(format!("spectrum at {x} sums to {total}")));
            }
        }
        Ok(None)
    });
    run(&mut out, "higher-spectra", || {
        let h = &a.spectrum.higher;
        for (i, total) in subcode_counts(k, &a.big_q).iter().enumerate() {
            let sum: BigInt = h[i].iter().sum();
            if &sum != total {
                return Ok(Some(format!("row {i} sums to {sum}, expected {total}")));
            }
        }
        for i in 1..=k {
            let d = a.weights[i - 1];
            if let Some(w) = h[i][..d].iter().position(|v| !v.is_zero()) {
                return Ok(Some(format!("A^({i})_{w} is nonzero below d_{i} = {d}")));
            }
        }
        if k >= 1 {
            let q1 = &a.big_q - 1;
            for (w, p) in a.polys.iter().enumerate().skip(1) {
                if p.eval(&a.big_q) != &h[1][w] * &q1 {
                    return Ok(Some(format!("A^(1)_{w} is not A_{w}(Q)/(Q-1)")));
                }
            }
        }
        Ok(None)
    });
    run(&mut out, "phi-round-trip", || {
        let phi = phi_from_polys(&a.polys, a.betti.levels());
        for (l, row) in phi.iter().enumerate() {
            for (s, v) in row.iter().enumerate() {
                if v != &a.betti.phi(l, s) {
                    return Ok(Some(format!("φ^({l})_{s} is {v}, Betti table gives {}", a.betti.phi(l, s))));
                }
            }
        }
        Ok((polys_from_phi(&phi) != a.polys).then(|| "polynomials not recovered from φ".to_string()))
    });

    if level == Level::Quick {
        return out;
    }

    run(&mut out, "restriction-ideals", || verify_restriction_ideals(m, &a.lattice, cap));
    run(&mut out, "classical-lattice", || verify_lattice_isomorphism(m, cap));
    run(&mut out, "inclusion-exclusion", || {
        for s in 0..=2.min(m.n()) {
            let total = m
                .ambient()
                .enumerate(s, cap)?
                .map(|u| inclusion_exclusion_poly(m, &u))
                .sum::<Result<WeightPolynomial>>()?;
            if total != a.polys[s] {
                return Ok(Some(format!("s = {s}: inclusion-exclusion gives {total}, pipeline {}", a.polys[s])));
            }
        }
        Ok(None)
    });

    if matches!(pr.kind, ProblemKind::Uniform | ProblemKind::Gabidulin) {
        if pr.n() <= pr.m {
            run(&mut out, "mrd-closed-form", || {
                let closed = mrd_closed_form(pr.q(), pr.m, pr.n(), k)?;
                let at_q: Vec<BigInt> = a.polys.iter().map(|p| p.eval(&a.big_q)).collect();
                Ok(compare("closed form vs pipeline", &at_q, &closed))
            });
        } else {
            skip(&mut out, "mrd-closed-form", "no MRD code with n > m");
        }
    }

    let Some(code) = &pr.code else {
        for check in ["code-matroid", "conullity-census", "brute-spectrum-r1", "brute-spectrum-r2", "brute-higher"] {
            skip(&mut out, check, "no code is attached to this q-matroid");
        }
        return out;
    };
    run(&mut out, "code-matroid", || {
        let from_code = QMatroid::from_code(code);
        Ok(from_code
            .first_difference(m, cap)?
            .map(|x| format!("rank differs at {:?}", x.encode_rows(pr.q()))))
    });
    run(&mut out, "conullity-census", || {
        let census = CodewordCensus::new(code, opts.codeword_cap)?;
        for x in m.ambient().all_subspaces(cap)? {
            if census.subcode_dim(&x) != m.conullity(&x) {
                return Ok(Some(format!("dim C(X) differs at {:?}", x.encode_rows(pr.q()))));
            }
        }
        Ok(None)
    });
    for r in 1..=2u32 {
        run(&mut out, &format!("brute-spectrum-r{r}"), || {
            let brute = brute_spectrum(code, r as usize, opts.codeword_cap)?;
            let x = a.big_q.pow(r);
            let want: Vec<BigInt> = a.polys.iter().map(|p| p.eval(&x)).collect();
            Ok(compare(&format!("spectrum at {x}"), &to_big(&brute), &want))
        });
    }
    run(&mut out, "brute-higher", || {
        for i in 0..=2.min(k) {
            let count = gaussian_binomial_big(k as i64, i as i64, &a.big_q);
            if count > BigInt::from(opts.codeword_cap) {
                return Err(Error::Resource(format!("{count} subcodes of dimension {i} exceed the cap")));
            }
            let brute = brute_higher(code, i, opts.codeword_cap)?;
            if let Some(w) = compare(&format!("A^({i})"), &to_big(&brute), &a.spectrum.higher[i]) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::input::parse_problem;

    #[test]
    fn uniform_quick_and_full_pass() {
        let pr = parse_problem(r#"{"uniform": {"q": 2, "k": 2, "n": 4}}"#).unwrap();
        let opts = Options::default();
        let a = analyze(&pr, &opts).unwrap();
        for level in [Level::Quick, Level::Full] {
            let v = verify(&pr, &a, level, &opts);
            assert!(v.iter().all(|x| x.status != Status::Fail), "{v:?}");
        }
    }

    #[test]
    fn uniform_without_code_skips_oracles() {
        let pr = parse_problem(r#"{"uniform": {"q": 3, "k": 1, "n": 3, "m": 2}}"#).unwrap();
        let opts = Options::default();
        let a = analyze(&pr, &opts).unwrap();
        let v = verify(&pr, &a, Level::Full, &opts);
        assert!(v.iter().all(|x| x.status != Status::Fail), "{v:?}");
        assert!(v.iter().any(|x| x.check == "brute-spectrum-r1" && x.status == Status::Skip));
    }
}
