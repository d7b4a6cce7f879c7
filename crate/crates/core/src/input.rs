//! JSON problem descriptions: an explicit generator matrix, a uniform
//! q-matroid, or a Gabidulin MRD construction.

use serde::Deserialize;

use crate::error::{input, Error, Result};
use crate::field::{Field, FieldTower};
use crate::linalg::Mat;
use crate::qmatroid::{GabidulinCode, QMatroid};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(default)]
    name: Option<String>,
    p: Option<u64>,
    #[serde(default)]
    q_extensions: Vec<Vec<u32>>,
    m_extension: Option<Vec<u32>>,
    n: Option<usize>,
    generator: Option<Vec<Vec<u32>>>,
    uniform: Option<UniformSpec>,
    mrd_gabidulin: Option<MrdSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UniformSpec {
    q: u64,
    k: usize,
    n: usize,
    m: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MrdSpec {
    p: u64,
    #[serde(default)]
    q_extensions: Vec<Vec<u32>>,
    m_extension: Vec<u32>,
    n: Option<usize>,
    k: usize,
    anchors: Vec<u32>,
}

/// A parsed problem: always a q-matroid, plus a code when one is known.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: Option<String>,
    pub matroid: QMatroid,
    pub code: Option<GabidulinCode>,
    /// `F_q`; the matroid lives on `F_q^n`.
    pub base: Field,
    /// `m` with `Q = q^m`, the evaluation base for spectra.
    pub m: usize,
    pub kind: ProblemKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Generator,
    Uniform,
    Gabidulin,
}

impl Problem {
    pub fn q(&self) -> u64 {
        self.base.order()
    }

    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    pub fn k(&self) -> usize {
        self.matroid.full_rank()
    }

    pub fn from_code(code: GabidulinCode, name: Option<String>, kind: ProblemKind) -> Self {
        Problem {
            name,
            kind,
            matroid: QMatroid::from_code(&code),
            base: code.base().clone(),
            m: code.m(),
            code: Some(code),
        }
    }

    pub fn uniform(q: u64, k: usize, n: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return input("m must be positive");
        }
        let mut base = prime_power_field(q)?;
        let code = if n <= m && n > 0 {
            let code = standard_mrd(&base, m, n, k)?;
            base = code.base().clone();
            Some(code)
        } else {
            None
        };
        let matroid = QMatroid::uniform(base.clone(), k, n)?;
        Ok(Problem {
            name: None,
            kind: ProblemKind::Uniform,
            matroid,
            code,
            base,
            m,
        })
    }
}

/// `F_q` for a prime power `q`, built over `F_p` with the smallest
/// irreducible modulus.
pub fn prime_power_field(q: u64) -> Result<Field> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(|| Error::Input("q must be at least 2".into()))?;
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return input(format!("{q} is not a prime power"));
    }
    let tower = FieldTower::prime_field(p)?;
    if e == 1 {
        return Ok(tower.top());
    }
    Ok(tower.extend(&tower.find_irreducible(e)?)?.top())
}

/// The Gabidulin code on the first `n` tower basis vectors of `F_{q^m}`.
pub fn standard_mrd(base: &Field, m: usize, n: usize, k: usize) -> Result<GabidulinCode> {
    let tower = base.tower();
    let ext = if m == 1 {
        base.clone()
    } else {
        tower.extend(&tower.find_irreducible(m)?)?.top()
    };
    let base = ext.tower().field(base.level())?;
    let q = base.order();
    let anchors: Vec<u32> = (0..n as u32).map(|t| q.pow(t) as u32).collect();
    GabidulinCode::mrd(base, ext, &anchors, k)
}

fn build_tower(p: u64, q_ext: &[Vec<u32>], m_ext: Option<&[u32]>) -> Result<(Field, Field)> {
    let mut tower = FieldTower::prime_field(p)?;
    for f in q_ext {
        tower = tower.extend(f)?;
    }
    let base_level = tower.num_levels() - 1;
    if let Some(f) = m_ext {
        tower = tower.extend(f)?;
    }
    Ok((tower.field(base_level)?, tower.top()))
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed specification: {e}")))?;
    let present = [raw.generator.is_some(), raw.uniform.is_some(), raw.mrd_gabidulin.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if present != 1 {
        return input("exactly one of \"generator\", \"uniform\" or \"mrd_gabidulin\" must be given");
    }
    if let Some(u) = raw.uniform {
        if raw.p.is_some() || raw.m_extension.is_some() || raw.n.is_some() || !raw.q_extensions.is_empty() {
            return input("field keys belong inside \"uniform\" for a uniform specification");
        }
        let mut pr = Problem::uniform(u.q, u.k, u.n, u.m.unwrap_or(u.n))?;
        pr.name = raw.name;
        return Ok(pr);
    }
    if let Some(spec) = raw.mrd_gabidulin {
        if raw.p.is_some() || raw.m_extension.is_some() || raw.n.is_some() || !raw.q_extensions.is_empty() {
            return input("field keys belong inside \"mrd_gabidulin\"");
        }
        if let Some(n) = spec.n {
            if n != spec.anchors.len() {
                return input(format!("n = {n} but {} anchors given", spec.anchors.len()));
            }
        }
        let (base, top) = build_tower(spec.p, &spec.q_extensions, Some(&spec.m_extension))?;
        let code = GabidulinCode::mrd(base, top, &spec.anchors, spec.k)?;
        return Ok(Problem::from_code(code, raw.name, ProblemKind::Gabidulin));
    }
    let rows = raw.generator.expect("checked above");
    let p = raw.p.ok_or_else(|| Error::Input("\"p\" is required with \"generator\"".into()))?;
    let (base, top) = build_tower(p, &raw.q_extensions, raw.m_extension.as_deref())?;
    let n = match (raw.n, rows.first()) {
        (Some(n), _) => n,
        (None, Some(r)) => r.len(),
        (None, None) => return input("cannot infer n from an empty generator; give \"n\""),
    };
    let g = Mat::from_rows(n, &rows)?;
    let code = GabidulinCode::new(base, top, g)?;
    Ok(Problem::from_code(code, raw.name, ProblemKind::Generator))
}
