//! q-Matroids on `F_q^n` given by memoized rank oracles.

mod code;

pub use code::GabidulinCode;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{input, Result};
use crate::field::Field;
use crate::linalg::{rank_in_place, Ambient, Mat, Subspace};

enum Kind {
    Uniform(usize),
    Code(GabidulinCode),
    Dual(QMatroid),
    /// Lives on `F_q^{dim U}`; queries are lifted through `chart`, whose
    /// rows form a basis of `U` in the parent ambient.
    Restricted {
        parent: QMatroid,
        chart: Mat,
        span_conullity: usize,
    },
    Table(HashMap<Subspace, usize>),
}

struct Inner {
    ambient: Ambient,
    kind: Kind,
    memo: RwLock<HashMap<Subspace, usize>>,
    full_rank: usize,
}

/// A q-matroid: the ambient `F_q^n` plus a rank function on its subspaces.
/// Cloning is cheap and clones share the memo table.
#[derive(Clone)]
pub struct QMatroid(Arc<Inner>);

impl fmt::Debug for QMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.kind {
            Kind::Uniform(_) => "uniform",
            Kind::Code(_) => "code",
            Kind::Dual(_) => "dual",
            Kind::Restricted { .. } => "restricted",
            Kind::Table(_) => "table",
        };
        f.debug_struct("QMatroid")
            .field("kind", &kind)
            .field("n", &self.n())
            .field("q", &self.q())
            .field("rank", &self.0.full_rank)
            .finish()
    }
}

/// Outcome of [`QMatroid::verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomCheck {
    Pass,
    Fail { axiom: &'static str, witness: String },
}

impl QMatroid {
    fn build(ambient: Ambient, kind: Kind) -> Self {
        let mut inner = Inner {
            ambient,
            kind,
            memo: RwLock::new(HashMap::new()),
            full_rank: 0,
        };
        let full = inner.ambient.full();
        let tmp = QMatroid(Arc::new(inner));
        let r = tmp.compute(&full);
        inner = Arc::try_unwrap(tmp.0).ok().expect("no other handles yet");
        inner.full_rank = r;
        QMatroid(Arc::new(inner))
    }

    /// `U(k, n)` over `F_q`: `ρ(X) = min(dim X, k)`.
    pub fn uniform(field: Field, k: usize, n: usize) -> Result<Self> {
        if k > n {
            return input(format!("uniform q-matroid needs k ≤ n, got k={k} n={n}"));
        }
        Ok(Self::build(Ambient::new(field, n), Kind::Uniform(k)))
    }

    /// `ρ(U) = rank(G·Yᵀ)` with `Y` a basis of `U`.
    pub fn from_code(code: &GabidulinCode) -> Self {
        Self::build(code.ambient(), Kind::Code(code.clone()))
    }

    /// A q-matroid given by an explicit table holding every subspace.
    pub fn from_table(ambient: Ambient, table: HashMap<Subspace, usize>) -> Result<Self> {
        if !table.contains_key(&ambient.full()) || !table.contains_key(&ambient.zero()) {
            return input("rank table must cover every subspace");
        }
        Ok(Self::build(ambient, Kind::Table(table)))
    }

    /// Tabulates the rank function; useful for freezing or corrupting it.
    pub fn to_table(&self, cap: u64) -> Result<HashMap<Subspace, usize>> {
        Ok(self
            .ambient()
            .all_subspaces(cap)?
            .into_iter()
            .map(|x| {
                let r = self.rank(&x);
                (x, r)
            })
            .collect())
    }

    pub fn ambient(&self) -> &Ambient {
        &self.0.ambient
    }

    pub fn n(&self) -> usize {
        self.0.ambient.n()
    }

    pub fn q(&self) -> u64 {
        self.0.ambient.q()
    }

    /// `ρ(𝓔)`.
    pub fn full_rank(&self) -> usize {
        self.0.full_rank
    }

    fn compute(&self, x: &Subspace) -> usize {
        match &self.0.kind {
            Kind::Uniform(k) => x.dim().min(*k),
            Kind::Code(code) => code_rank(code, x),
            Kind::Dual(primal) => {
                x.dim() + primal.rank(&primal.ambient().perp(x)) - primal.full_rank()
            }
            Kind::Restricted {
                parent,
                chart,
                span_conullity,
            } => {
                let comp = self.0.ambient.perp(x);
                let lifted = parent.ambient().lift(chart, &comp);
                span_conullity - parent.conullity(&lifted)
            }
            Kind::Table(t) => t[x],
        }
    }

    pub fn rank(&self, x: &Subspace) -> usize {
        if let Some(&r) = self.0.memo.read().expect("memo lock").get(x) {
            return r;
        }
        let r = self.compute(x);
        self.0.memo.write().expect("memo lock").insert(x.clone(), r);
        r
    }

    /// `η(X) = dim X − ρ(X)`.
    pub fn nullity(&self, x: &Subspace) -> usize {
        x.dim() - self.rank(x)
    }

    /// `ρ*(X) = dim X + ρ(X^⊥) − ρ(𝓔)`.
    pub fn dual_rank(&self, x: &Subspace) -> usize {
        x.dim() + self.rank(&self.ambient().perp(x)) - self.full_rank()
    }

    /// `η*(X) = ρ(𝓔) − ρ(X^⊥)`; for a code this is `dim C(X)`.
    pub fn conullity(&self, x: &Subspace) -> usize {
        self.full_rank() - self.rank(&self.ambient().perp(x))
    }

    pub fn dual(&self) -> QMatroid {
        Self::build(self.0.ambient.clone(), Kind::Dual(self.clone()))
    }

    /// Restriction to `u`, charted by the RREF basis of `u`. Conullities
    /// agree with the parent's on every subspace of `u`.
    pub fn restrict(&self, u: &Subspace) -> Result<QMatroid> {
        self.restrict_with_chart(&u.to_mat())
    }

    /// Restriction to the row space of `chart`, which must have independent
    /// rows; subspace `W ⊆ F_q^{rows}` stands for `W · chart`.
    pub fn restrict_with_chart(&self, chart: &Mat) -> Result<QMatroid> {
        let span = self.ambient().from_mat(chart)?;
        if span.dim() != chart.rows() {
            return input("chart rows are not independent");
        }
        let span_conullity = self.conullity(&span);
        let ambient = Ambient::new(self.ambient().field().clone(), chart.rows());
        Ok(Self::build(
            ambient,
            Kind::Restricted {
                parent: self.clone(),
                chart: chart.clone(),
                span_conullity,
            },
        ))
    }

    /// `F` is a q-flat iff adding any line outside `F` raises the rank.
    pub fn is_qflat(&self, f: &Subspace) -> bool {
        let amb = self.ambient();
        let r = self.rank(f);
        amb.enumerate(1, u64::MAX)
            .expect("lines of the ambient")
            .filter(|e| !amb.contains(f, e))
            .all(|e| self.rank(&amb.sum(f, &e).expect("same ambient")) > r)
    }

    /// `X` is a q-cycle iff every hyperplane of `X` has nullity `η(X) − 1`.
    pub fn is_qcycle(&self, x: &Subspace) -> bool {
        if x.dim() == 0 {
            return true;
        }
        let eta = self.nullity(x);
        if eta == 0 {
            return false;
        }
        let amb = self.ambient();
        amb.enumerate_in(x, x.dim() - 1, u64::MAX)
            .expect("hyperplanes of a subspace")
            .iter()
            .all(|v| self.nullity(v) == eta - 1)
    }

    /// All q-cycles with their nullities, by increasing dimension.
    pub fn qcycles(&self, cap: u64) -> Result<Vec<(Subspace, usize)>> {
        Ok(self
            .ambient()
            .all_subspaces(cap)?
            .into_iter()
            .filter(|x| self.is_qcycle(x))
            .map(|x| {
                let e = self.nullity(&x);
                (x, e)
            })
            .collect())
    }

    /// All q-flats with their ranks, by increasing dimension.
    pub fn qflats(&self, cap: u64) -> Result<Vec<(Subspace, usize)>> {
        Ok(self
            .ambient()
            .all_subspaces(cap)?
            .into_iter()
            .filter(|x| self.is_qflat(x))
            .map(|x| {
                let r = self.rank(&x);
                (x, r)
            })
            .collect())
    }

    /// Checks boundedness and monotonicity on every subspace and pair, and
    /// submodularity on every pair. Reports the first violation.
    pub fn verify_axioms(&self, cap: u64) -> Result<AxiomCheck> {
        let amb = self.ambient();
        let all = amb.all_subspaces(cap)?;
        let pairs = (all.len() as u64).saturating_mul(all.len() as u64);
        if pairs > cap {
            return Err(crate::Error::Resource(format!(
                "{pairs} subspace pairs exceed the cap of {cap}"
            )));
        }
        let ranks: Vec<usize> = all.iter().map(|x| self.rank(x)).collect();
        for (x, &r) in all.iter().zip(&ranks) {
            if r > x.dim() {
                return Ok(AxiomCheck::Fail {
                    axiom: "P1",
                    witness: format!("rank {r} exceeds dim {} at {:?}", x.dim(), x.encode_rows(self.q())),
                });
            }
        }
        for (x, &rx) in all.iter().zip(&ranks) {
            for (y, &ry) in all.iter().zip(&ranks) {
                if rx > ry && amb.contains(y, x) {
                    return Ok(AxiomCheck::Fail {
                        axiom: "P2",
                        witness: format!(
                            "{:?} ⊆ {:?} but ranks {rx} > {ry}",
                            x.encode_rows(self.q()),
                            y.encode_rows(self.q())
                        ),
                    });
                }
                let s = amb.sum(x, y)?;
                let i = amb.intersection(x, y)?;
                if self.rank(&s) + self.rank(&i) > rx + ry {
                    return Ok(AxiomCheck::Fail {
                        axiom: "P3",
                        witness: format!(
                            "not submodular at {:?}, {:?}",
                            x.encode_rows(self.q()),
                            y.encode_rows(self.q())
                        ),
                    });
                }
            }
        }
        Ok(AxiomCheck::Pass)
    }

    /// First subspace on which the two rank functions differ.
    pub fn first_difference(&self, other: &QMatroid, cap: u64) -> Result<Option<Subspace>> {
        if self.ambient() != other.ambient() {
            return input("q-matroids live on different ambients");
        }
        Ok(self
            .ambient()
            .all_subspaces(cap)?
            .into_iter()
            .find(|x| self.rank(x) != other.rank(x)))
    }
}

fn code_rank(code: &GabidulinCode, x: &Subspace) -> usize {
    let f = code.field();
    let g = code.generator();
    let (k, n, s) = (code.k(), code.n(), x.dim());
    let mut prod = vec![0u32; k * s];
    for i in 0..k {
        for t in 0..s {
            let row = x.row(t);
            let mut acc = 0u32;
            for j in 0..n {
                if row[j] != 0 {
                    acc = f.add(acc, f.mul(g.get(i, j), row[j]));
                }
            }
            prod[i * s + t] = acc;
        }
    }
    rank_in_place(f, &mut prod, k, s)
}
