//! Property tests for the algebraic invariants.

use std::sync::Arc;

use proptest::prelude::*;

use ro2alg::backend::{AlgebraBackend, Backend, BredonBackend, Elem};
use ro2alg::bordism::{GnCohomology, GnElement};
use ro2alg::expansions::Expander;
use ro2alg::fgl::borel_backend;
use ro2alg::linalg::BitVec;
use ro2alg::ring::{F2Ring, PolynomialExtension, Ring, RingElem};
use ro2alg::series::Series;
use ro2alg::{Group, GroupHom, RepGrading};

fn hom(source: usize, target: usize, columns: &[u64]) -> GroupHom {
    let mask = (1u64 << target) - 1;
    GroupHom::from_columns(Group::new(source), Group::new(target), columns[..source].iter().map(|c| c & mask).collect())
        .unwrap()
}

fn grading(group: Group, k: i64, mults: &[u32]) -> RepGrading {
    let chars = ro2alg::group::enumerate_characters(group);
    RepGrading::from_multiplicities(group, k, chars.into_iter().zip(mults.iter().copied())).unwrap()
}

fn elem(b: &dyn AlgebraBackend, m: &RepGrading, bits: &[bool]) -> Elem {
    let dim = b.dim(m).unwrap();
    let coords: Vec<bool> = (0..dim).map(|i| bits.get(i).copied().unwrap_or(false)).collect();
    Elem::new(m.clone(), BitVec::from_bools(&coords))
}

/// `F2[x, y]` with `deg x = 1`, `deg y = 2`.
fn coefficients() -> Ring {
    Arc::new(PolynomialExtension::new(Arc::new(F2Ring), vec![("x".into(), 1), ("y".into(), 2)]).unwrap())
}

fn random_coeff(ring: &Ring, degree: i64, bits: &[bool]) -> RingElem {
    let dim = ring.dim(degree).unwrap();
    let coords: Vec<bool> = (0..dim).map(|i| bits.get(i).copied().unwrap_or(false)).collect();
    RingElem::new(degree, BitVec::from_bools(&coords))
}

/// `Σ_e c_e θ^e` of the given degree with `e` in `lo..hi`, coefficients from `bits`.
fn series(ring: &Ring, degree: i64, lo: i64, hi: i64, trunc: i64, bits: &[bool]) -> Series {
    let mut s = Series::zero(ring.clone(), &["θ"], &[1], degree, Some(trunc));
    let mut offset = 0;
    for e in lo..hi {
        let c = random_coeff(ring, degree + e, &bits[offset.min(bits.len())..]);
        offset += 3;
        s.set_coeff(&[e], c.coords);
    }
    s
}

fn backends() -> [Backend; 2] {
    [Arc::new(BredonBackend::default()), Arc::new(borel_backend())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_is_functorial(
        q in 0usize..=2, r in 1usize..=2, s in 1usize..=2,
        outer in prop::collection::vec(0u64..4, 2),
        inner in prop::collection::vec(0u64..4, 2),
        k in -2i64..=2,
        mults in prop::collection::vec(0u32..=2, 3),
        bits in prop::collection::vec(any::<bool>(), 16),
        which in 0usize..2,
    ) {
        let alpha = hom(r, s, &outer);
        let beta = hom(q, r, &inner);
        let composite = alpha.compose(&beta).unwrap();
        let m = grading(Group::new(s), k, &mults);
        let stepwise = beta.pull_grading(&alpha.pull_grading(&m).unwrap()).unwrap();
        prop_assert_eq!(&composite.pull_grading(&m).unwrap(), &stepwise);
        let b = &backends()[which];
        let x = elem(b.as_ref(), &m, &bits);
        let once = b.restrict(&composite, &x).unwrap();
        let twice = b.restrict(&beta, &b.restrict(&alpha, &x).unwrap()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn bredon_dims_agree_by_two_routes(rank in 1usize..=2, k in -4i64..=4, mults in prop::collection::vec(0u32..=3, 3)) {
        let b = BredonBackend::default();
        let m = grading(Group::new(rank), k, &mults);
        let p = b.presentation(m.group()).unwrap();
        prop_assert_eq!(b.dim(&m).unwrap(), p.algebra.dim_by_rank(&p.degree_of(&m)));
    }

    #[test]
    fn inverse_times_series_is_one(bits in prop::collection::vec(any::<bool>(), 40)) {
        let ring = coefficients();
        // θ (1 + Σ_{e ≥ 1} c_e θ^e)
        let mut f = series(&ring, -1, 2, 8, 9, &bits);
        f.set_coeff(&[1], ring.one().unwrap().coords);
        let inv = f.inverse(Some(7)).unwrap();
        let one = Series::one(ring, &["θ"], &[1], None).unwrap();
        prop_assert_eq!(f.mul(&inv).unwrap().first_difference(&one).unwrap(), None);
    }

    #[test]
    fn substitution_is_multiplicative(
        f_bits in prop::collection::vec(any::<bool>(), 30),
        g_bits in prop::collection::vec(any::<bool>(), 30),
        h_bits in prop::collection::vec(any::<bool>(), 30),
    ) {
        let ring = coefficients();
        let f = series(&ring, 0, 0, 6, 6, &f_bits);
        let g = series(&ring, 1, 0, 6, 6, &g_bits);
        let mut h = series(&ring, -1, 2, 6, 6, &h_bits);
        h.set_coeff(&[1], ring.one().unwrap().coords);
        let lhs = Series::substitute(&f.mul(&g).unwrap(), &h).unwrap();
        let rhs = Series::substitute(&f, &h).unwrap().mul(&Series::substitute(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs.first_difference(&rhs).unwrap(), None);
    }

    #[test]
    fn delta_is_multiplicative(
        which in 0usize..2,
        rank in 1usize..=2,
        k1 in -2i64..=2, k2 in -2i64..=2,
        m1 in prop::collection::vec(0u32..=2, 3),
        m2 in prop::collection::vec(0u32..=2, 3),
        bits1 in prop::collection::vec(any::<bool>(), 16),
        bits2 in prop::collection::vec(any::<bool>(), 16),
    ) {
        let b = backends()[which].clone();
        let x = Expander::new(b.clone());
        let group = Group::new(rank);
        let u = elem(b.as_ref(), &grading(group, k1, &m1), &bits1);
        let v = elem(b.as_ref(), &grading(group, k2, &m2), &bits2);
        let uv = b.mul(&u, &v).unwrap();
        let top = Some(4);
        let lhs = x.delta(&uv, top).unwrap();
        let rhs = x.delta(&u, top).unwrap().mul(&x.delta(&v, top).unwrap()).unwrap();
        prop_assert_eq!(lhs.first_difference(&rhs).unwrap(), None);
    }

    #[test]
    fn gn_product_is_commutative_and_associative(
        n in 1usize..=6,
        xs in prop::collection::vec(0u64..64, 1..4),
        ys in prop::collection::vec(0u64..64, 1..4),
        zs in prop::collection::vec(0u64..64, 1..4),
    ) {
        let g = GnCohomology::new(n).unwrap();
        let mask = (1u64 << n) - 1;
        let el = |v: &[u64]| -> GnElement {
            let mut out = GnElement::new();
            for m in v {
                if !out.insert(m & mask) {
                    out.remove(&(m & mask));
                }
            }
            out
        };
        let (x, y, z) = (el(&xs), el(&ys), el(&zs));
        prop_assert_eq!(g.product(&x, &y), g.product(&y, &x));
        prop_assert_eq!(g.product(&g.product(&x, &y), &z), g.product(&x, &g.product(&y, &z)));
    }
}
