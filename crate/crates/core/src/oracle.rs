//! Brute-force ground truth for small instances. Nothing here touches the
//! cycle lattice; the only shared layers are field arithmetic and linear
//! algebra.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Error, Result};
use crate::field::Field;
use crate::lattice::CycleLattice;
use crate::linalg::{
    expand_codeword, gaussian_binomial_big, rank_in_place, rank_support, rank_support_of_set,
    Ambient, Subspace,
};
use crate::qmatroid::{GabidulinCode, QMatroid};
use crate::spectra::WeightPolynomial;

/// The field `F_{Q^r}` over the code's `F_Q`, built from the smallest
/// irreducible polynomial of degree `r`.
pub fn extension_field(code: &GabidulinCode, r: usize) -> Result<Field> {
    let f = code.field();
    if r == 0 {
        return input("extension degree must be positive");
    }
    if r == 1 {
        return Ok(f.clone());
    }
    let tower = f.tower();
    if f.level() + 1 != tower.num_levels() {
        return input("the code's field must be the top of its tower to extend it");
    }
    Ok(tower.extend(&tower.find_irreducible(r)?)?.top())
}

fn binary_rank(rows: impl Iterator<Item = u64>, n: usize) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in rows {
        for b in (0..n).rev() {
            if v >> b & 1 == 0 {
                continue;
            }
            if basis[b] == 0 {
                basis[b] = v;
                rank += 1;
                break;
            }
            v ^= basis[b];
        }
    }
    rank
}

struct Enumerator {
    p: u32,
    n: usize,
    rows: usize,
    base: Field,
    /// Expansion over `F_q` of each `F_p`-basis codeword, row-major
    /// `rows × n`.
    generators: Vec<Vec<u32>>,
    /// Same, bit-packed, when `q = 2` and the matrix fits in 128 bits.
    packed: Option<Vec<u128>>,
}

impl Enumerator {
    fn tally_range(&self, start: u64, end: u64) -> Vec<u64> {
        let mut tally = vec![0u64; self.n + 1];
        if let Some(packed) = &self.packed {
            let n = self.n;
            let mask = (1u128 << n) - 1;
            let gray = start ^ (start >> 1);
            let mut state: u128 = 0;
            for (b, g) in packed.iter().enumerate() {
                if gray >> b & 1 == 1 {
                    state ^= g;
                }
            }
            let rank_of = |s: u128| {
                binary_rank((0..self.rows).map(|t| ((s >> (t * n)) & mask) as u64), n)
            };
            tally[rank_of(state)] += 1;
            for idx in start + 1..end {
                state ^= packed[idx.trailing_zeros() as usize];
                tally[rank_of(state)] += 1;
            }
            return tally;
        }
        let p = self.p as u64;
        let mut digits = Vec::with_capacity(self.generators.len());
        let mut rest = start;
        for _ in 0..self.generators.len() {
            digits.push((rest % p) as u32);
            rest /= p;
        }
        let mut state = vec![0u32; self.rows * self.n];
        for (g, &d) in self.generators.iter().zip(&digits) {
            for _ in 0..d {
                self.add_into(&mut state, g);
            }
        }
        let mut scratch = vec![0u32; state.len()];
        for idx in start..end {
            scratch.copy_from_slice(&state);
            tally[rank_in_place(&self.base, &mut scratch, self.rows, self.n)] += 1;
            if idx + 1 == end {
                break;
            }
            for (b, d) in digits.iter_mut().enumerate() {
                self.add_into(&mut state, &self.generators[b]);
                *d += 1;
                if *d < self.p {
                    break;
                }
                *d = 0;
            }
        }
        tally
    }

    fn add_into(&self, state: &mut [u32], g: &[u32]) {
        for (s, &x) in state.iter_mut().zip(g) {
            if x != 0 {
                *s = self.base.add(*s, x);
            }
        }
    }
}

/// Rank-weight distribution of `C ⊗ F_{Q^r}` by enumerating all
/// `Q^{rk}` codewords.
pub fn brute_spectrum(code: &GabidulinCode, r: usize, cap: u64) -> Result<Vec<u64>> {
    let ext = extension_field(code, r)?;
    let base = ext.tower().field(code.base().level())?;
    let p = base.characteristic();
    let e = ext.prime_degree();
    let dims = code.k() * e;
    let total = BigInt::from(p).pow(dims as u32);
    let total = match total.to_u64() {
        Some(t) if t <= cap => t,
        _ => {
            return Err(Error::Resource(format!(
                "brute-force spectrum needs {total} codewords, cap is {cap}"
            )))
        }
    };
    let n = code.n();
    let rows = ext.degree_over(&base)?;
    let mut generators = Vec::with_capacity(dims);
    for t in 0..e {
        let beta = ext.prime_basis_element(t);
        for i in 0..code.k() {
            let word: Vec<u32> = code.generator().row(i).iter().map(|&g| ext.mul(beta, g)).collect();
            generators.push(expand_codeword(&ext, &base, &word)?.data().to_vec());
        }
    }
    let packed = (base.order() == 2 && rows * n <= 128 && n <= 64).then(|| {
        generators
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .fold(0u128, |acc, (pos, &b)| acc | (b as u128) << pos)
            })
            .collect()
    });
    let en = Enumerator {
        p,
        n,
        rows,
        base,
        generators,
        packed,
    };
    let chunk = (total / 256).max(1 << 12);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let run = |&s: &u64| en.tally_range(s, (s + chunk).min(total));
    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        starts.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<u64>> = starts.iter().map(run).collect();
    let mut tally = vec![0u64; n + 1];
    for part in parts {
        for (a, b) in tally.iter_mut().zip(part) {
            *a += b;
        }
    }
    Ok(tally)
}

/// Number of `i`-dimensional subcodes with each rank-support dimension,
/// by enumerating subspaces of the message space.
pub fn brute_higher(code: &GabidulinCode, i: usize, cap: u64) -> Result<Vec<u64>> {
    if i > code.k() {
        return input(format!("no subcodes of dimension {i} in a code of dimension {}", code.k()));
    }
    let messages = Ambient::new(code.field().clone(), code.k());
    let amb = code.ambient();
    let mut tally = vec![0u64; code.n() + 1];
    for d in messages.enumerate(i, cap)? {
        let words: Vec<Vec<u32>> = (0..d.dim()).map(|t| code.encode(d.row(t))).collect();
        tally[rank_support_of_set(code.field(), &amb, &words)?.dim()] += 1;
    }
    Ok(tally)
}

/// Rank supports of every codeword of `C`, for computing `dim C(X)`
/// without any rank oracle.
pub struct CodewordCensus {
    big_q: u64,
    ambient: Ambient,
    supports: Vec<Subspace>,
}

impl CodewordCensus {
    pub fn new(code: &GabidulinCode, cap: u64) -> Result<Self> {
        let big_q = code.field().order();
        let total = BigInt::from(big_q).pow(code.k() as u32);
        let total = match total.to_u64() {
            Some(t) if t <= cap => t,
            _ => {
                return Err(Error::Resource(format!(
                    "codeword census needs {total} codewords, cap is {cap}"
                )))
            }
        };
        let amb = code.ambient();
        let mut supports = Vec::with_capacity(total as usize);
        let mut msg = vec![0u32; code.k()];
        for idx in 0..total {
            let mut rest = idx;
            for m in msg.iter_mut() {
                *m = (rest % big_q) as u32;
                rest /= big_q;
            }
            supports.push(rank_support(code.field(), &amb, &code.encode(&msg))?);
        }
        Ok(CodewordCensus {
            big_q,
            ambient: amb,
            supports,
        })
    }

    /// Number of codewords of each rank weight.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.ambient.n() + 1];
        for s in &self.supports {
            out[s.dim()] += 1;
        }
        out
    }

    /// `dim C(X)`, the dimension of the subcode supported inside `x`.
    pub fn subcode_dim(&self, x: &Subspace) -> usize {
        let mut count = self
            .supports
            .iter()
            .filter(|s| self.ambient.contains(x, s))
            .count() as u64;
        let mut d = 0;
        while count > 1 {
            count /= self.big_q;
            d += 1;
        }
        d
    }
}

/// Largest ground set for which [`ClassicalMatroid`] tabulates all ranks.
pub const MAX_CLASSICAL_GROUND: usize = 20;

/// The classical matroid on the projective points of `F_q^n` with rank
/// `S ↦ ρ(span S)`, tabulated on every subset.
pub struct ClassicalMatroid {
    lines: Vec<Subspace>,
    ranks: Vec<u8>,
}

impl ClassicalMatroid {
    pub fn build(m: &QMatroid) -> Result<Self> {
        let amb = m.ambient();
        let q = m.q();
        let mut lines: Vec<Subspace> = if amb.n() == 0 {
            Vec::new()
        } else {
            amb.enumerate(1, MAX_CLASSICAL_GROUND as u64)?.collect()
        };
        lines.sort_by_key(|l| l.encode_rows(q));
        let size = lines.len();
        if size > MAX_CLASSICAL_GROUND {
            return Err(Error::Resource(format!(
                "{size} projective points exceed the limit of {MAX_CLASSICAL_GROUND}"
            )));
        }
        let mut spans: Vec<Subspace> = vec![amb.zero(); 1 << size];
        let mut ranks = vec![0u8; 1 << size];
        for set in 1usize..1 << size {
            let low = set.trailing_zeros() as usize;
            let span = amb.sum(&spans[set & (set - 1)], &lines[low])?;
            ranks[set] = m.rank(&span) as u8;
            spans[set] = span;
        }
        Ok(ClassicalMatroid { lines, ranks })
    }

    pub fn ground(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn rank(&self, set: usize) -> usize {
        self.ranks[set] as usize
    }

    fn full(&self) -> usize {
        (1 << self.lines.len()) - 1
    }

    /// Bitmask of the points lying in `x`.
    pub fn points_of(&self, amb: &Ambient, x: &Subspace) -> usize {
        self.lines
            .iter()
            .enumerate()
            .filter(|(_, l)| amb.contains(x, l))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn is_flat(&self, set: usize) -> bool {
        let r = self.rank(set);
        (0..self.lines.len())
            .filter(|&e| set >> e & 1 == 0)
            .all(|e| self.rank(set | 1 << e) > r)
    }

    pub fn flats(&self) -> Vec<usize> {
        (0..=self.full()).filter(|&s| self.is_flat(s)).collect()
    }

    /// Boundedness and monotonicity on all subsets, submodularity on
    /// `samples` seeded random pairs. Returns a witness on failure.
    pub fn check_axioms(&self, samples: usize, seed: u64) -> Option<String> {
        for set in 0..=self.full() {
            let r = self.rank(set);
            if r > set.count_ones() as usize {
                return Some(format!("R1 fails at subset {set:#x}"));
            }
            for e in 0..self.lines.len() {
                if self.rank(set | 1 << e) < r {
                    return Some(format!("R2 fails at subset {set:#x} plus point {e}"));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = self.full() as u64;
        for _ in 0..samples {
            let a = (rng.next_u64() & full) as usize;
            let b = (rng.next_u64() & full) as usize;
            if self.rank(a | b) + self.rank(a & b) > self.rank(a) + self.rank(b) {
                return Some(format!("R3 fails at subsets {a:#x}, {b:#x}"));
            }
        }
        None
    }
}

/// Compares the flats of the classical matroid with the q-flats of `m`:
/// the two families must correspond through `F ↦ P(F)` with matching
/// ranks and inclusions, and complements of flats must have the sizes
/// `q^{n−1} + … + q^{dim F}`. Returns a witness on failure.
pub fn verify_lattice_isomorphism(m: &QMatroid, cap: u64) -> Result<Option<String>> {
    let cl = ClassicalMatroid::build(m)?;
    if let Some(w) = cl.check_axioms(200, 0x5eed) {
        return Ok(Some(w));
    }
    let amb = m.ambient();
    let (n, q) = (m.n(), m.q());
    let qflats = m.qflats(cap)?;
    let mut images = Vec::with_capacity(qflats.len());
    for (f, r) in &qflats {
        let pts = cl.points_of(amb, f);
        if !cl.is_flat(pts) {
            return Ok(Some(format!("points of the q-flat {:?} do not form a flat", f.encode_rows(q))));
        }
        if cl.rank(pts) != *r {
            return Ok(Some(format!("rank mismatch at q-flat {:?}", f.encode_rows(q))));
        }
        let complement = (cl.full() & !pts).count_ones() as u64;
        let want: u64 = (1..=n - f.dim()).map(|t| q.pow((n - t) as u32)).sum();
        if complement != want {
            return Ok(Some(format!(
                "cycle of size {complement} where {want} was expected for dim {}",
                f.dim()
            )));
        }
        images.push(pts);
    }
    let image_set: HashSet<usize> = images.iter().copied().collect();
    let flats = cl.flats();
    if image_set.len() != images.len() || flats.len() != images.len() {
        return Ok(Some(format!(
            "{} classical flats but {} q-flats",
            flats.len(),
            qflats.len()
        )));
    }
    if let Some(extra) = flats.iter().find(|f| !image_set.contains(f)) {
        return Ok(Some(format!("classical flat {extra:#x} has no q-flat")));
    }
    for (a, (fa, _)) in qflats.iter().enumerate() {
        for (b, (fb, _)) in qflats.iter().enumerate() {
            let sub = amb.contains(fb, fa);
            let cls = images[a] & !images[b] == 0;
            if sub != cls {
                return Ok(Some(format!("inclusion differs between flats {a} and {b}")));
            }
        }
    }
    Ok(None)
}

/// For every node `U` of the cycle lattice, the dual cycles of `m`
/// restricted to `U` must be exactly the nodes below `U`, with the same
/// ranks. Returns a witness on failure.
pub fn verify_restriction_ideals(m: &QMatroid, lattice: &CycleLattice, cap: u64) -> Result<Option<String>> {
    let amb = m.ambient();
    for (j, node) in lattice.nodes().iter().enumerate() {
        let chart = node.space.to_mat();
        let local = CycleLattice::build(&m.restrict(&node.space)?, cap)?;
        let lifted: HashMap<Subspace, usize> = local
            .nodes()
            .iter()
            .map(|c| (amb.lift(&chart, &c.space), c.rank))
            .collect();
        let ideal = lattice.ideal(j);
        if ideal.len() != lifted.len() {
            return Ok(Some(format!(
                "cycle {j}: {} cycles below it but {} in its restriction",
                ideal.len(),
                lifted.len()
            )));
        }
        for i in ideal {
            let below = &lattice.nodes()[i];
            if lifted.get(&below.space) != Some(&below.rank) {
                return Ok(Some(format!("cycle {i} below {j} is missing from the restriction")));
            }
        }
    }
    Ok(None)
}

/// Largest `|P(U)|` accepted by [`inclusion_exclusion_poly`].
pub const MAX_INCLUSION_EXCLUSION_POINTS: usize = 15;

/// The codeword-count polynomial for support exactly `u`, as a signed sum
/// over subsets `γ` of the points of `u` of `X^{n*(γ)}`, with `n*` the
/// dual nullity in the classical matroid of the restriction to `u`.
pub fn inclusion_exclusion_poly(m: &QMatroid, u: &Subspace) -> Result<WeightPolynomial> {
    let points = gaussian_binomial_big(u.dim() as i64, 1, &BigInt::from(m.q()));
    if points > BigInt::from(MAX_INCLUSION_EXCLUSION_POINTS) {
        return Err(Error::Resource(format!(
            "{points} points exceed the inclusion-exclusion limit of {MAX_INCLUSION_EXCLUSION_POINTS}"
        )));
    }
    let local = m.restrict(u)?;
    let cl = ClassicalMatroid::build(&local)?;
    let full = cl.full();
    let top = cl.rank(full);
    let mut coeffs = vec![BigInt::zero(); m.full_rank() + 1];
    for gamma in 0..=full {
        let nstar = top - cl.rank(full & !gamma);
        if gamma.count_ones() % 2 == 0 {
            coeffs[nstar] += 1;
        } else {
            coeffs[nstar] -= 1;
        }
    }
    if cl.len() % 2 == 1 {
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    Ok(WeightPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;
    use crate::linalg::Mat;
    use crate::spectra::support_poly_mobius;

    fn golden_code() -> GabidulinCode {
        let t = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 0, 0, 1]).unwrap();
        let g = Mat::from_rows(4, &[vec![7, 4, 11, 15], vec![7, 9, 2, 3], vec![5, 1, 5, 9]]).unwrap();
        GabidulinCode::new(t.field(0).unwrap(), t.top(), g).unwrap()
    }

    fn mrd_code() -> GabidulinCode {
        let t = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 0, 0, 1]).unwrap();
        GabidulinCode::mrd(t.field(0).unwrap(), t.top(), &[1, 2, 4, 8], 2).unwrap()
    }

    #[test]
    fn golden_brute_spectrum() {
        assert_eq!(brute_spectrum(&golden_code(), 1, 1 << 20).unwrap(), vec![1, 15, 420, 2460, 1200]);
        assert!(matches!(brute_spectrum(&golden_code(), 2, 1000), Err(Error::Resource(_))));
    }

    #[test]
    fn mrd_brute_spectrum() {
        assert_eq!(brute_spectrum(&mrd_code(), 1, 1 << 20).unwrap(), vec![1, 0, 0, 225, 30]);
    }

    #[test]
    fn odd_characteristic_matches_census() {
        let t = FieldTower::prime_field(3).unwrap().extend(&[1, 0, 1]).unwrap();
        let g = Mat::from_rows(2, &[vec![1, 3]]).unwrap();
        let code = GabidulinCode::new(t.field(0).unwrap(), t.top(), g).unwrap();
        let census = CodewordCensus::new(&code, 1000).unwrap();
        assert_eq!(brute_spectrum(&code, 1, 1000).unwrap(), census.weight_distribution());
        let two = brute_spectrum(&code, 2, 1000).unwrap();
        assert_eq!(two.iter().sum::<u64>(), 81);
        assert_eq!(two[0], 1);
    }

    #[test]
    fn census_matches_conullity() {
        let code = golden_code();
        let m = QMatroid::from_code(&code);
        let census = CodewordCensus::new(&code, 1 << 20).unwrap();
        assert_eq!(census.weight_distribution(), vec![1, 15, 420, 2460, 1200]);
        for x in m.ambient().all_subspaces(1000).unwrap() {
            assert_eq!(census.subcode_dim(&x), m.conullity(&x));
        }
    }

    #[test]
    fn golden_brute_higher() {
        let code = golden_code();
        assert_eq!(brute_higher(&code, 0, 10).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(brute_higher(&code, 1, 1000).unwrap(), vec![0, 1, 28, 164, 80]);
        assert_eq!(brute_higher(&mrd_code(), 2, 1000).unwrap(), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn classical_matroid_basics() {
        let f = FieldTower::prime_field(2).unwrap().top();
        let m = QMatroid::uniform(f, 2, 4).unwrap();
        let cl = ClassicalMatroid::build(&m).unwrap();
        assert_eq!(cl.len(), 15);
        assert_eq!(cl.rank(0), 0);
        assert_eq!(cl.rank(cl.full()), 2);
        for a in 0..15 {
            for b in 0..15 {
                if a != b {
                    assert_eq!(cl.rank(1 << a | 1 << b), 2);
                }
            }
        }
        let rank_one = cl.flats().into_iter().filter(|&s| cl.rank(s) == 1).count();
        assert_eq!(rank_one, 15);
        assert_eq!(cl.check_axioms(200, 1), None);
    }

    #[test]
    fn lattice_isomorphisms_hold() {
        let f = FieldTower::prime_field(2).unwrap().top();
        for m in [QMatroid::uniform(f, 2, 4).unwrap(), QMatroid::from_code(&golden_code())] {
            assert_eq!(verify_lattice_isomorphism(&m, 1000).unwrap(), None);
            let lat = CycleLattice::build(&m, 1000).unwrap();
            assert_eq!(verify_restriction_ideals(&m, &lat, 1000).unwrap(), None);
        }
    }

    #[test]
    fn inclusion_exclusion_agrees_with_mobius() {
        let m = QMatroid::from_code(&golden_code());
        let amb = m.ambient().clone();
        assert_eq!(inclusion_exclusion_poly(&m, &amb.zero()).unwrap(), WeightPolynomial::one());
        let mut total = BigInt::zero();
        for s in 0..=2 {
            for u in amb.enumerate(s, 100).unwrap() {
                let ie = inclusion_exclusion_poly(&m, &u).unwrap();
                assert_eq!(ie, support_poly_mobius(&m, &u, 100).unwrap());
                if s == 2 {
                    total += ie.eval(&BigInt::from(16));
                }
            }
        }
        assert_eq!(total, BigInt::from(420));
    }
}
