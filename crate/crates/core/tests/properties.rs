use proptest::prelude::*;
use std::sync::OnceLock;
use tubecat::fusion::{index, pointed_ring, restrict, IndexOutcome, Subcategory};
use tubecat::grouprep::{FiniteGroup, GroupCategory};
use tubecat::planar::{compose, enumerate_rect, zeta_on_basis, PairDiagram, TLVector};
use tubecat::scalar::{rat, Cyclo, Field, RatFunc};
use tubecat::tlj::jones_wenzl;
use tubecat::tube::{spectral, Elem, Layout, QuantumDouble, TubeAlgebra};

type S3 = GroupCategory<Cyclo>;

fn s3() -> &'static (TubeAlgebra<S3>, Layout<usize>) {
    static CELL: OnceLock<(TubeAlgebra<S3>, Layout<usize>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let alg = TubeAlgebra::new(GroupCategory::builtin("S3").unwrap());
        let layout = Layout::new(&alg, alg.all_blocks().unwrap()).unwrap();
        (alg, layout)
    })
}

fn element(coeffs: &[i64]) -> Elem<S3> {
    let v: Vec<Cyclo> = coeffs.iter().map(|&c| Cyclo::int(c)).collect();
    s3().1.unflatten(&v)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], 17)
}

fn diagram(u: usize, l: usize) -> impl Strategy<Value = PairDiagram> {
    let all = enumerate_rect(u, l);
    (0..all.len()).prop_map(move |k| all[k].clone())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tube_star_algebra_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let alg = &s3().0;
        let (x, y, z) = (element(&a), element(&b), element(&c));
        let xy = alg.mul(&x, &y).unwrap();
        prop_assert_eq!(alg.mul(&xy, &z).unwrap(), alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(alg.sharp(&xy).unwrap(), alg.mul(&alg.sharp(&y).unwrap(), &alg.sharp(&x).unwrap()).unwrap());
        prop_assert_eq!(
            alg.mul(&x, &y.add(&z)).unwrap(),
            alg.mul(&x, &y).unwrap().add(&alg.mul(&x, &z).unwrap())
        );
        prop_assert_eq!(alg.tau(&xy).unwrap(), alg.tau(&alg.mul(&y, &x).unwrap()).unwrap());
    }

    #[test]
    fn tube_trace_is_faithful(a in coeffs()) {
        let alg = &s3().0;
        let x = element(&a);
        let t = alg.tau(&alg.mul(&alg.sharp(&x).unwrap(), &x).unwrap()).unwrap().to_c64();
        prop_assert!(t.im.abs() < 1e-12);
        if x.is_zero() { prop_assert!(t.re.abs() < 1e-12) } else { prop_assert!(t.re > 0.0) }
    }

    #[test]
    fn central_unitaries_commute(a in coeffs()) {
        let alg = &s3().0;
        let x = element(&a);
        for i in 0..3 {
            for j in 0..3 {
                let v = alg.mul(&alg.mul(&alg.p(&i).unwrap(), &x).unwrap(), &alg.p(&j).unwrap()).unwrap();
                let left = alg.mul(&alg.central_u(&i).unwrap(), &v).unwrap();
                prop_assert_eq!(left, alg.mul(&v, &alg.central_u(&j).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn double_is_a_tracial_star_algebra(seed in any::<u64>()) {
        use rand::SeedableRng;
        let d = QuantumDouble::<Cyclo>::builtin("S3").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (d.random_element(&mut rng), d.random_element(&mut rng));
        prop_assert_eq!(d.tau(&d.mul(&a, &b)), d.tau(&d.mul(&b, &a)));
        prop_assert_eq!(d.star(&d.mul(&a, &b)), d.mul(&d.star(&b), &d.star(&a)));
    }

    #[test]
    fn diagram_composition_is_associative(p in diagram(2, 4), q in diagram(4, 2), r in diagram(2, 4)) {
        let l = RatFunc::var();
        let (p, q, r) = (TLVector::<RatFunc>::basis(p), TLVector::basis(q), TLVector::basis(r));
        let left = p.compose(&q, &l).unwrap().compose(&r, &l).unwrap();
        let right = p.compose(&q.compose(&r, &l).unwrap(), &l).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn involution_reverses_composition(p in diagram(3, 5), q in diagram(1, 3)) {
        let (pq, loops) = compose(&p, &q).unwrap();
        let (qp, loops2) = compose(&q.involute(), &p.involute()).unwrap();
        prop_assert_eq!(pq.involute(), qp);
        prop_assert_eq!(loops, loops2);
    }

    #[test]
    fn rotation_shortcut_agrees_with_gluing(p in diagram(0, 10)) {
        prop_assert_eq!(zeta_on_basis(&p), p.rotate2());
    }

    #[test]
    fn jones_wenzl_at_rational_loop_values(n in 2usize..=4, num in 2i64..=9, den in 1i64..=3) {
        prop_assume!(num >= 2 * den);
        let l = RatFunc::from_rational(&rat(num, den));
        let jw = jones_wenzl(n, &l).unwrap();
        prop_assert_eq!(jw.compose(&jw, &l).unwrap(), jw.clone());
        for i in 1..n {
            prop_assert!(TLVector::basis(PairDiagram::e(n, i)).compose(&jw, &l).unwrap().is_empty());
        }
    }

    #[test]
    fn index_is_multiplicative_on_cyclic_chains(k in 1usize..=3, m in 1usize..=3, n in 1usize..=2) {
        // Z/(kmn) ⊃ Z/(mn) ⊃ Z/n as subgroups generated by k and km
        let order = k * m * n;
        let ring = pointed_ring(&FiniteGroup::cyclic(order));
        let c1 = Subcategory::finite((0..order).filter(|g| g % k == 0));
        let c2 = Subcategory::finite((0..order).filter(|g| g % (k * m) == 0));
        let finite = |o: IndexOutcome| match o { IndexOutcome::Finite(q) => q, other => panic!("{other}") };
        let whole = finite(index(&ring, &c2, 100).unwrap());
        let first = finite(index(&ring, &c1, 100).unwrap());
        let sub = restrict(&ring, &c1).unwrap();
        let c2_in_c1 = Subcategory::finite((0..m * n).filter(|g| g % m == 0));
        let second = finite(index(&sub, &c2_in_c1, 100).unwrap());
        prop_assert_eq!(whole, first * second);
    }
}

#[test]
fn cyclic_moments_for_every_order_up_to_eight() {
    for n in 1..=8u32 {
        let alg = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin(&format!("Z/{n}")).unwrap());
        for g in 0..n as usize {
            for k in 0..=n as usize {
                let want = Cyclo::int(((g * k) % n as usize == 0) as i64);
                assert_eq!(spectral::moment_u(&alg, &g, k).unwrap(), want);
            }
        }
    }
}
