use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qspectra::field::FieldTower;
use qspectra::lattice::CycleLattice;
use qspectra::linalg::{gaussian_binomial_big, Ambient, Mat};
use qspectra::oracle::extension_field;
use qspectra::qmatroid::AxiomCheck;
use qspectra::spectra::{
    higher_spectra, phi_from_polys, polys_from_phi, weight_distribution, weight_poly_betti, weight_poly_mobius,
    weights_by_betti, weights_by_conullity, weights_by_flats, weights_from_polys,
};
use qspectra::{Field, GabidulinCode, QMatroid, WeightPolynomial};

const CAP: u64 = 1_000_000;

/// F_2 < F_4 < F_16 and F_3 < F_9 < F_81, built by hand-picked moduli.
fn towers() -> &'static [FieldTower] {
    static T: OnceLock<Vec<FieldTower>> = OnceLock::new();
    T.get_or_init(|| {
        vec![
            FieldTower::prime_field(2).unwrap().extend(&[1, 1, 1]).unwrap().extend(&[2, 1, 1]).unwrap(),
            FieldTower::prime_field(3).unwrap().extend(&[1, 0, 1]).unwrap().extend(&[3, 1, 1]).unwrap(),
        ]
    })
}

fn f16() -> (Field, Field) {
    let t = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 0, 0, 1]).unwrap();
    (t.field(0).unwrap(), t.top())
}

fn f9() -> (Field, Field) {
    let t = FieldTower::prime_field(3).unwrap().extend(&[1, 0, 1]).unwrap();
    (t.field(0).unwrap(), t.top())
}

fn field_and_elements() -> impl Strategy<Value = (Field, u32, u32, u32)> {
    (0..2usize, 0..3usize).prop_flat_map(|(t, level)| {
        let f = towers()[t].field(level).unwrap();
        let o = f.order() as u32;
        (Just(f), 0..o, 0..o, 0..o)
    })
}

/// A random full-rank `k x n` generator over `top`, with `k` in `1..=kmax`.
fn code_in(base: Field, top: Field, n: usize, kmax: usize) -> impl Strategy<Value = GabidulinCode> {
    let o = top.order() as u32;
    (1..=kmax)
        .prop_flat_map(move |k| proptest::collection::vec(0..o, k * n))
        .prop_filter_map("rank deficient", move |data| {
            let g = Mat::from_flat(data.len() / n, n, data).ok()?;
            GabidulinCode::new(base.clone(), top.clone(), g).ok()
        })
}

fn binary_code() -> impl Strategy<Value = GabidulinCode> {
    let (b, t) = f16();
    (1..=4usize).prop_flat_map(move |n| code_in(b.clone(), t.clone(), n, n))
}

fn ternary_code() -> impl Strategy<Value = GabidulinCode> {
    let (b, t) = f9();
    (1..=3usize).prop_flat_map(move |n| code_in(b.clone(), t.clone(), n, n.min(2)))
}

fn any_code() -> impl Strategy<Value = GabidulinCode> {
    prop_oneof![3 => binary_code(), 1 => ternary_code()]
}

fn big_q(code: &GabidulinCode) -> BigInt {
    BigInt::from(code.base().order()).pow(code.m() as u32)
}

fn polys(m: &QMatroid) -> (CycleLattice, Vec<WeightPolynomial>) {
    let lat = CycleLattice::build(m, CAP).unwrap();
    let t = lat.virtual_betti_table().unwrap();
    let p = (0..=m.n()).map(|s| weight_poly_betti(&t, s)).collect();
    (lat, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, a, b, c) in field_and_elements()) {
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.div(f.mul(a, b), a).unwrap(), b);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn coordinates_are_linear((f, a, b, _) in field_and_elements()) {
        let tower = f.tower();
        for sub in 0..=f.level() {
            let sf = tower.field(sub).unwrap();
            let ca = tower.coords(tower.element(f.level(), a).unwrap(), sub).unwrap();
            let cb = tower.coords(tower.element(f.level(), b).unwrap(), sub).unwrap();
            let cs = tower.coords(tower.element(f.level(), f.add(a, b)).unwrap(), sub).unwrap();
            for t in 0..ca.len() {
                prop_assert_eq!(cs[t], sf.add(ca[t], cb[t]));
            }
            // Frobenius of the subfield fixes exactly the subfield.
            let fixed = f.frobenius(a, &sf) == a;
            prop_assert_eq!(fixed, sf.contains(a));
        }
    }

    #[test]
    fn subspaces_are_canonical(
        rows in proptest::collection::vec(proptest::collection::vec(0..3u32, 4), 1..4),
        mix in proptest::collection::vec(0..3u32, 9),
    ) {
        let f = FieldTower::prime_field(3).unwrap().top();
        let amb = Ambient::new(f.clone(), 4);
        let x = amb.from_rows(&rows).unwrap();
        // Add multiples of other rows, scale by nonzero factors, reverse.
        let mut other = rows.clone();
        let k = other.len();
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    let c = mix[(3 * i + j) % mix.len()];
                    let src = other[j].clone();
                    for (t, v) in other[i].iter_mut().enumerate() {
                        *v = f.add(*v, f.mul(c, src[t]));
                    }
                }
            }
        }
        other.reverse();
        let y = amb.from_rows(&other).unwrap();
        if y.dim() == x.dim() {
            prop_assert_eq!(&y, &x);
        } else {
            prop_assert!(y.dim() < x.dim() && amb.contains(&x, &y));
        }
        prop_assert_eq!(amb.from_rows(&x.to_mat().row_vecs()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn code_qmatroid_invariants(code in any_code()) {
        let m = QMatroid::from_code(&code);
        let amb = m.ambient().clone();
        prop_assert!(matches!(m.verify_axioms(CAP).unwrap(), AxiomCheck::Pass));
        let dd = m.dual().dual();
        let all = amb.all_subspaces(CAP).unwrap();
        let full = m.full_rank();
        for x in &all {
            let r = m.rank(x);
            prop_assert_eq!(dd.rank(x), r);
            prop_assert_eq!(m.rank(x), r);
            let xp = amb.perp(x);
            prop_assert_eq!(m.is_qflat(x), m.dual().is_qcycle(&xp));
            if m.is_qflat(x) {
                prop_assert_eq!(m.dual().nullity(&xp), full - r);
            }
        }
    }

    #[test]
    fn scalar_extension_keeps_the_qmatroid(code in binary_code()) {
        let ext = extension_field(&code, 2).unwrap();
        let tower = ext.tower();
        let base = tower.field(code.base().level()).unwrap();
        let same = tower.field(code.field().level()).unwrap();
        let g = code.generator().clone();
        let here = QMatroid::from_code(&GabidulinCode::new(base.clone(), same, g.clone()).unwrap());
        let there = QMatroid::from_code(&GabidulinCode::new(base, ext, g).unwrap());
        prop_assert_eq!(here.first_difference(&there, CAP).unwrap(), None);
    }

    #[test]
    fn spectra_identities(code in any_code()) {
        let m = QMatroid::from_code(&code);
        let k = code.k();
        let q = big_q(&code);
        let (lat, p) = polys(&m);
        let table = lat.virtual_betti_table().unwrap();

        for s in 0..=m.n() {
            prop_assert_eq!(&weight_poly_mobius(&m, s, CAP).unwrap(), &p[s], "s = {}", s);
        }
        for t in 1..=3u32 {
            let x = q.pow(t);
            let a = weight_distribution(&p, &x);
            prop_assert!(a.iter().all(|v| *v >= BigInt::zero()));
            prop_assert_eq!(a.iter().sum::<BigInt>(), x.pow(k as u32));
        }

        let w = weights_by_conullity(&m, CAP).unwrap();
        prop_assert_eq!(&weights_by_betti(&table).unwrap(), &w);
        prop_assert_eq!(&weights_by_flats(&m, CAP).unwrap(), &w);
        prop_assert_eq!(&weights_from_polys(&p, k).unwrap(), &w);
        prop_assert!(w.windows(2).all(|d| d[0] < d[1]));
        prop_assert!(w.first().is_none_or(|&d| d > 0) && w.last().is_none_or(|&d| d <= m.n()));

        let phi = phi_from_polys(&p, table.levels());
        prop_assert_eq!(&polys_from_phi(&phi), &p);

        let h = higher_spectra(&p, k, &q).unwrap();
        for (i, row) in h.iter().enumerate() {
            let total: BigInt = row.iter().sum();
            prop_assert_eq!(total, gaussian_binomial_big(k as i64, i as i64, &q));
        }
        let a1 = weight_distribution(&p, &q);
        for (wt, v) in h[1].iter().enumerate().skip(1) {
            prop_assert_eq!(v * (&q - BigInt::one()), a1[wt].clone());
        }
    }

    #[test]
    fn betti_support_follows_cycles(code in any_code()) {
        let m = QMatroid::from_code(&code);
        let lat = CycleLattice::build(&m, CAP).unwrap();
        let t = lat.virtual_betti_table().unwrap();
        for (&(l, i, j), v) in t.entries() {
            prop_assert!(*v > BigInt::zero());
            if i > 0 {
                prop_assert!(lat.nodes().iter().any(|c| c.rank == l + i && c.dim() == j));
            }
        }
        for c in lat.nodes() {
            prop_assert!(!t.get(0, c.rank, c.dim()).is_zero());
        }
        for (l, i, j) in t.entries().keys().copied() {
            let classical: BigInt = (1..=j).map(|s| BigInt::from(code.base().order()).pow((m.n() - s) as u32)).sum();
            prop_assert_eq!(t.classical_grading(j), classical, "l={} i={}", l, i);
        }
    }
}

/// Trial division by every monic polynomial of degree at most `d/2`.
fn irreducible_by_trial_division(f: &Field, poly: &[u32]) -> bool {
    let d = poly.len() - 1;
    let o = f.order() as u32;
    for deg in 1..=d / 2 {
        let count = (o as u64).pow(deg as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                div.push((c % o as u64) as u32);
                c /= o as u64;
            }
            div.push(1);
            let mut r = poly.to_vec();
            for top in (deg..=d).rev() {
                let lead = r[top];
                if lead != 0 {
                    for (t, &dv) in div.iter().enumerate() {
                        r[top - deg + t] = f.sub(r[top - deg + t], f.mul(lead, dv));
                    }
                }
            }
            if r[..deg].iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

#[test]
fn found_moduli_are_irreducible() {
    for (p, maxdeg) in [(2u64, 9usize), (3, 5), (5, 4)] {
        let tower = FieldTower::prime_field(p).unwrap();
        for d in 2..=maxdeg {
            let poly = tower.find_irreducible(d).unwrap();
            assert_eq!(poly.len(), d + 1);
            assert!(irreducible_by_trial_division(&tower.top(), &poly), "p={p} d={d} {poly:?}");
        }
    }
    let f4 = FieldTower::prime_field(2).unwrap().extend(&[1, 1, 1]).unwrap();
    for d in 2..=4 {
        let poly = f4.find_irreducible(d).unwrap();
        assert!(irreducible_by_trial_division(&f4.top(), &poly), "F_4 d={d}");
    }
}

#[test]
fn encodings_round_trip_exhaustively() {
    let big = FieldTower::prime_field(2)
        .unwrap()
        .extend(&[1, 1, 1])
        .unwrap()
        .extend(&[2, 1, 1])
        .unwrap();
    let big = big.extend(&big.find_irreducible(4).unwrap()).unwrap();
    assert_eq!(big.top().order(), 1 << 16);
    for tower in towers().iter().chain([&big]) {
        let top = tower.num_levels() - 1;
        for x in 0..tower.order(top) as u32 {
            let e = tower.element(top, x).unwrap();
            for sub in 0..=top {
                let c = tower.coords(e, sub).unwrap();
                assert_eq!(tower.from_coords(top, sub, &c).unwrap(), e);
            }
        }
    }
}

#[test]
fn double_duality_exhaustive() {
    for q in [2u64, 3] {
        let f = FieldTower::prime_field(q).unwrap().top();
        let nmax = if q == 2 { 4 } else { 3 };
        for n in 1..=nmax {
            let amb = Ambient::new(f.clone(), n);
            for k in 0..=n {
                let m = QMatroid::uniform(f.clone(), k, n).unwrap();
                let dd = m.dual().dual();
                for x in amb.all_subspaces(CAP).unwrap() {
                    assert_eq!(dd.rank(&x), m.rank(&x));
                }
            }
        }
    }
}
