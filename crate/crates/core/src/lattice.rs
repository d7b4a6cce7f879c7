//! The lattice of q-cycles of a dual q-matroid, Möbius values on its
//! rank-collapsed quotients, and the virtual Betti numbers they induce.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{input, structural, Result};
use crate::linalg::Subspace;
use crate::qmatroid::QMatroid;

/// A q-cycle of `M*` with its nullity there, which is its lattice rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleNode {
    pub space: Subspace,
    pub rank: usize,
}

impl CycleNode {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Cycles of `M*` ordered by inclusion and graded by nullity, with Möbius
/// values from the bottom for every collapse level.
#[derive(Clone, Debug)]
pub struct CycleLattice {
    n: usize,
    q: u64,
    nodes: Vec<CycleNode>,
    index: HashMap<Subspace, usize>,
    /// `below[j]`: nodes strictly below node `j`.
    below: Vec<BitSet>,
    /// `mobius[l][j]`: Möbius value from the bottom of the level-`l`
    /// collapse to node `j` (1 for collapsed nodes).
    mobius: Vec<Vec<BigInt>>,
}

impl CycleLattice {
    /// Builds the lattice of q-cycles of `m.dual()` and checks its shape:
    /// a unique bottom `{0}`, closure under sums (joins), existence of
    /// meets, and Jordan–Dedekind grading by nullity.
    pub fn build(m: &QMatroid, cap: u64) -> Result<Self> {
        let dual = m.dual();
        let mut nodes: Vec<CycleNode> = dual
            .qcycles(cap)?
            .into_iter()
            .map(|(space, rank)| CycleNode { space, rank })
            .collect();
        nodes.sort_by(|a, b| (a.rank, a.dim(), &a.space).cmp(&(b.rank, b.dim(), &b.space)));
        let amb = m.ambient();
        let count = nodes.len();
        let index: HashMap<Subspace, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, node)| (node.space.clone(), i))
            .collect();

        let bottoms: Vec<&CycleNode> = nodes.iter().filter(|c| c.rank == 0).collect();
        if bottoms.len() != 1 || bottoms[0].dim() != 0 {
            return structural(format!(
                "expected the zero space as the only rank-0 cycle, found {}",
                bottoms.len()
            ));
        }

        let mut below = vec![BitSet::new(count); count];
        for j in 0..count {
            for i in 0..j {
                if nodes[i].dim() < nodes[j].dim() && amb.contains(&nodes[j].space, &nodes[i].space) {
                    below[j].insert(i);
                }
            }
        }

        for j in 0..count {
            let mut deeper = BitSet::new(count);
            for k in below[j].iter() {
                deeper.union_with(&below[k]);
            }
            for i in below[j].iter().filter(|&i| !deeper.contains(i)) {
                if nodes[j].rank != nodes[i].rank + 1 {
                    return structural(format!(
                        "cover from rank {} to rank {} breaks the grading",
                        nodes[i].rank, nodes[j].rank
                    ));
                }
            }
        }

        let lattice = CycleLattice {
            n: m.n(),
            q: m.q(),
            nodes,
            index,
            below,
            mobius: Vec::new(),
        };
        lattice.check_joins_and_meets(m)?;
        let mut lattice = lattice;
        lattice.mobius = (0..=lattice.height()).map(|l| lattice.mobius_level(l)).collect();
        Ok(lattice)
    }

    fn check_joins_and_meets(&self, m: &QMatroid) -> Result<()> {
        let amb = m.ambient();
        let count = self.nodes.len();
        for i in 0..count {
            for j in i + 1..count {
                let s = amb.sum(&self.nodes[i].space, &self.nodes[j].space)?;
                if !self.index.contains_key(&s) {
                    return structural(format!(
                        "sum of cycles {i} and {j} (dim {}) is not a cycle",
                        s.dim()
                    ));
                }
                let mut lo_i = self.below[i].clone();
                lo_i.insert(i);
                let mut lo_j = self.below[j].clone();
                lo_j.insert(j);
                let common = lo_i.and(&lo_j);
                let members: Vec<usize> = common.iter().collect();
                let has_max = members.iter().any(|&t| {
                    members.iter().all(|&u| u == t || self.below[t].contains(u))
                });
                if !has_max {
                    return structural(format!("cycles {i} and {j} have no meet"));
                }
            }
        }
        Ok(())
    }

    fn mobius_level(&self, l: usize) -> Vec<BigInt> {
        let mut mu = vec![BigInt::one(); self.nodes.len()];
        let start = self.nodes.partition_point(|c| c.rank <= l);
        let mut lo = start;
        while lo < self.nodes.len() {
            let r = self.nodes[lo].rank;
            let hi = self.nodes.partition_point(|c| c.rank <= r);
            let compute = |j: usize| -> BigInt {
                let mut acc = BigInt::one();
                for i in self.below[j].iter().filter(|&i| i >= start) {
                    acc += &mu[i];
                }
                -acc
            };
            #[cfg(feature = "parallel")]
            let level: Vec<BigInt> = {
                use rayon::prelude::*;
                (lo..hi).into_par_iter().map(compute).collect()
            };
            #[cfg(not(feature = "parallel"))]
            let level: Vec<BigInt> = (lo..hi).map(compute).collect();
            for (j, v) in (lo..hi).zip(level) {
                mu[j] = v;
            }
            lo = hi;
        }
        mu
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn nodes(&self) -> &[CycleNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest rank, i.e. `ρ(𝓔)` of the primal q-matroid when `𝓔` is a
    /// cycle of the dual.
    pub fn height(&self) -> usize {
        self.nodes.last().map_or(0, |c| c.rank)
    }

    pub fn index_of(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `i ≤ j` in the lattice.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.below[j].contains(i)
    }

    /// Nodes below or equal to `j`.
    pub fn ideal(&self, j: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.below[j].iter().collect();
        out.push(j);
        out
    }

    /// Möbius value from the bottom to node `p` in the lattice with every
    /// node of rank at most `l` collapsed into the bottom.
    pub fn mobius_bottom(&self, p: usize, l: usize) -> Result<BigInt> {
        if l > self.height() {
            return input(format!("collapse level {l} exceeds the height {}", self.height()));
        }
        if p >= self.nodes.len() {
            return input(format!("no node {p}"));
        }
        Ok(self.mobius[l][p].clone())
    }

    /// Virtual Betti numbers `(−1)^{rank−l} μ^{(l)}` summed per
    /// `(l, rank − l, dim)`, plus `β^{(l)}_{0,0} = 1` for every level.
    pub fn virtual_betti_table(&self) -> Result<BettiTable> {
        for (j, node) in self.nodes.iter().enumerate() {
            if self.mobius[0][j].is_zero() {
                return structural(format!("Möbius value vanishes at cycle {j} of rank {}", node.rank));
            }
        }
        let mut entries = BTreeMap::new();
        for l in 0..=self.height() {
            entries.insert((l, 0, 0), BigInt::one());
            for (j, node) in self.nodes.iter().enumerate().filter(|(_, c)| c.rank > l) {
                let i = node.rank - l;
                let v = if i % 2 == 0 {
                    self.mobius[l][j].clone()
                } else {
                    -self.mobius[l][j].clone()
                };
                if v.is_negative() {
                    return structural(format!(
                        "negative virtual Betti number at level {l}, cycle {j}"
                    ));
                }
                *entries.entry((l, i, node.dim())).or_insert_with(BigInt::zero) += v;
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(BettiTable {
            n: self.n,
            q: self.q,
            levels: self.height() + 1,
            entries,
        })
    }
}

/// One row of a [`BettiTable`] in both gradings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRecord {
    pub l: usize,
    pub i: usize,
    pub j_dim: usize,
    pub j_classical: BigInt,
    pub value: BigInt,
}

/// Virtual Betti numbers `β^{(l)}_{i,j}` keyed by elongation level `l`,
/// homological index `i` and q-dimension `j`. Absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    q: u64,
    levels: usize,
    entries: BTreeMap<(usize, usize, usize), BigInt>,
}

impl BettiTable {
    /// Assembles a table from raw entries; zero entries are dropped.
    pub fn from_entries(
        n: usize,
        q: u64,
        levels: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), BigInt)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (key, v) in entries {
            *map.entry(key).or_insert_with(BigInt::zero) += v;
        }
        map.retain(|_, v: &mut BigInt| !v.is_zero());
        BettiTable {
            n,
            q,
            levels,
            entries: map,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elongation levels `0..levels`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn get(&self, l: usize, i: usize, j: usize) -> BigInt {
        self.entries.get(&(l, i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize, usize), BigInt> {
        &self.entries
    }

    /// `[j] = q^{n−1} + … + q^{n−j}`.
    pub fn classical_grading(&self, j: usize) -> BigInt {
        let q = BigInt::from(self.q);
        (1..=j).map(|t| q.pow((self.n - t) as u32)).sum()
    }

    pub fn records(&self) -> Vec<BettiRecord> {
        self.entries
            .iter()
            .map(|(&(l, i, j), v)| BettiRecord {
                l,
                i,
                j_dim: j,
                j_classical: self.classical_grading(j),
                value: v.clone(),
            })
            .collect()
    }

    /// `φ^{(l)}_j = Σ_i (−1)^i β^{(l)}_{i,j}`.
    pub fn phi(&self, l: usize, j: usize) -> BigInt {
        self.entries
            .range((l, 0, 0)..(l + 1, 0, 0))
            .filter(|(&(_, _, jj), _)| jj == j)
            .map(|(&(_, i, _), v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;
    use crate::linalg::Mat;
    use crate::qmatroid::GabidulinCode;

    fn golden() -> QMatroid {
        let t = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 0, 0, 1]).unwrap();
        let g = Mat::from_rows(4, &[vec![7, 4, 11, 15], vec![7, 9, 2, 3], vec![5, 1, 5, 9]]).unwrap();
        QMatroid::from_code(&GabidulinCode::new(t.field(0).unwrap(), t.top(), g).unwrap())
    }

    fn u24() -> QMatroid {
        QMatroid::uniform(FieldTower::prime_field(2).unwrap().top(), 2, 4).unwrap()
    }

    #[test]
    fn uniform_lattice_shape_and_mobius() {
        let lat = CycleLattice::build(&u24(), 1000).unwrap();
        assert_eq!(lat.len(), 17);
        assert_eq!(lat.height(), 2);
        assert_eq!(lat.nodes()[0].dim(), 0);
        assert!(lat.nodes()[1..16].iter().all(|c| c.rank == 1 && c.dim() == 3));
        assert_eq!(lat.nodes()[16].dim(), 4);
        assert_eq!(lat.mobius_bottom(0, 0).unwrap(), BigInt::one());
        assert_eq!(lat.mobius_bottom(1, 0).unwrap(), BigInt::from(-1));
        assert_eq!(lat.mobius_bottom(16, 0).unwrap(), BigInt::from(14));
        assert_eq!(lat.mobius_bottom(16, 1).unwrap(), BigInt::from(-1));
        assert!(lat.mobius_bottom(16, 3).is_err());
    }

    #[test]
    fn golden_lattice_and_betti_table() {
        let lat = CycleLattice::build(&golden(), 1000).unwrap();
        assert_eq!(lat.len(), 46);
        let t = lat.virtual_betti_table().unwrap();
        let want = [
            ((0, 0, 0), 1),
            ((0, 1, 1), 1),
            ((0, 1, 2), 28),
            ((0, 2, 3), 76),
            ((0, 3, 4), 48),
            ((1, 0, 0), 1),
            ((1, 1, 3), 15),
            ((1, 2, 4), 14),
            ((2, 0, 0), 1),
            ((2, 1, 4), 1),
            ((3, 0, 0), 1),
        ];
        let got: Vec<((usize, usize, usize), i64)> = t
            .entries()
            .iter()
            .map(|(&k, v)| (k, i64::try_from(v).unwrap()))
            .collect();
        assert_eq!(got, want.to_vec());
        assert_eq!(t.classical_grading(1), BigInt::from(8));
        assert_eq!(t.classical_grading(2), BigInt::from(12));
        assert_eq!(t.classical_grading(3), BigInt::from(14));
        assert_eq!(t.classical_grading(4), BigInt::from(15));
    }

    #[test]
    fn phi_sums() {
        let t = CycleLattice::build(&golden(), 1000).unwrap().virtual_betti_table().unwrap();
        assert_eq!(t.phi(0, 0), BigInt::one());
        assert_eq!(t.phi(0, 1), BigInt::from(-1));
        assert_eq!(t.phi(0, 4), BigInt::from(-48));
        assert_eq!(t.phi(1, 4), BigInt::from(14));
        assert_eq!(t.phi(0, 3), BigInt::from(76));
    }

    #[test]
    fn empty_code_gives_a_point() {
        let m = QMatroid::uniform(FieldTower::prime_field(2).unwrap().top(), 0, 3).unwrap();
        let lat = CycleLattice::build(&m, 1000).unwrap();
        assert_eq!(lat.len(), 1);
        let t = lat.virtual_betti_table().unwrap();
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.get(0, 0, 0), BigInt::one());
    }

    #[test]
    fn support_matches_cycle_dimensions() {
        let lat = CycleLattice::build(&golden(), 1000).unwrap();
        let t = lat.virtual_betti_table().unwrap();
        for (&(l, i, j), _) in t.entries().iter().filter(|(k, _)| k.1 > 0) {
            assert!(lat.nodes().iter().any(|c| c.rank == l + i && c.dim() == j));
        }
        for c in lat.nodes() {
            assert!(!t.get(0, c.rank, c.dim()).is_zero());
        }
    }

    #[test]
    fn ideal_and_order() {
        let lat = CycleLattice::build(&u24(), 1000).unwrap();
        assert_eq!(lat.ideal(16).len(), 17);
        assert_eq!(lat.ideal(3), vec![0, 3]);
        assert!(lat.leq(0, 5) && !lat.leq(5, 0) && !lat.leq(1, 2));
        assert_eq!(lat.index_of(&lat.nodes()[7].space), Some(7));
    }
}
