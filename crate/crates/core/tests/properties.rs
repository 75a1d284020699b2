mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use tori::braid::{self, BraidWord};
use tori::cover::{self, CoverElement};
use tori::hochschild::{self, bar};
use tori::lattice;
use tori::mat::{self, Mat2Z};
use tori::orbit::{self, OrbitMorphism, OrbitObject};
use tori::qq;
use tori::semidirect::{self, Part, SemidirectElement, TorusPoint};

fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..=max_len)
        .prop_map(|l| BraidWord::new(l).unwrap())
}

fn positive(r: i64) -> impl Strategy<Value = Mat2Z> {
    [-r..=r, -r..=r, -r..=r, -r..=r]
        .prop_filter("det > 0", |e| e[0] * e[3] - e[1] * e[2] > 0)
        .prop_map(|e| Mat2Z::from_i64(e[0], e[1], e[2], e[3]))
}

fn cover_el() -> impl Strategy<Value = CoverElement> {
    (positive(12), -3i64..=3).prop_map(|(m, w)| CoverElement::new(m, w).unwrap())
}

/// Elements of SL2(Z) as products of the generators.
fn unimodular() -> impl Strategy<Value = Mat2Z> {
    word(10).prop_map(|w| braid::phi(&w))
}

fn point() -> impl Strategy<Value = TorusPoint> {
    (1i64..=12, 1i64..=12, 0i64..12, 0i64..12)
        .prop_map(|(d1, d2, n1, n2)| TorusPoint::new(qq::qf(n1, d1), qq::qf(n2, d2)))
}

fn subgroup() -> impl Strategy<Value = lattice::FiniteTorusSubgroup> {
    (1i64..=8, any::<prop::sample::Index>()).prop_map(|(n, i)| {
        let all = lattice::enumerate_subgroups(n).unwrap();
        all[i.index(all.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_problem_matches_burau(x in word(9), y in word(9)) {
        prop_assert_eq!(braid::braid_eq(&x, &y), common::burau(&x) == common::burau(&y));
    }

    #[test]
    fn relator_insertion_preserves_the_braid(x in word(9), at in any::<prop::sample::Index>(), r in 0usize..3) {
        let relators: [&[i8]; 3] = [&[1, 2, 1, -2, -1, -2], &[2, -2], &[-1, 1]];
        let mut letters = x.letters().to_vec();
        let i = at.index(letters.len() + 1);
        letters.splice(i..i, relators[r].iter().copied());
        let y = BraidWord::new(letters).unwrap();
        prop_assert!(braid::braid_eq(&x, &y));
        prop_assert_eq!(common::burau(&x), common::burau(&y));
        prop_assert_eq!(braid::normal_form(&x), braid::normal_form(&y));
    }

    #[test]
    fn normal_form_is_canonical(x in word(14)) {
        let nf = braid::normal_form(&x);
        prop_assert!(nf.is_left_weighted());
        prop_assert_eq!(braid::normal_form(&nf.to_word()), nf.clone());
        prop_assert_eq!(common::burau(&nf.to_word()), common::burau(&x));
    }

    #[test]
    fn phi_is_a_homomorphism(x in word(10), y in word(10)) {
        let xy = braid::braid_mul(&x, &y);
        prop_assert_eq!(braid::phi(&xy), braid::phi(&x).mul(&braid::phi(&y)));
        prop_assert_eq!(braid::phi(&x.inverse()).mul(&braid::phi(&x)), Mat2Z::identity());
    }

    #[test]
    fn kernel_power_detects_delta_powers(x in word(8), k in -3i64..=3) {
        let w = braid::braid_mul(&braid::braid_mul(&x, &BraidWord::delta_pow(4 * k)), &x.inverse());
        prop_assert_eq!(braid::kernel_power(&w).unwrap(), Some(k));
    }

    #[test]
    fn lift_matrix_round_trips(m in unimodular()) {
        prop_assert_eq!(braid::phi(&braid::lift_matrix(&m).unwrap()), m);
    }

    #[test]
    fn lift_word_matches_path_lifting(x in word(16)) {
        let lifted = cover::lift_word(&x);
        prop_assert_eq!(lifted.matrix(), &braid::phi(&x));
        prop_assert_eq!(lifted.winding(), common::path_lift_winding(&x));
    }

    #[test]
    fn lift_word_is_multiplicative_and_respects_relations(x in word(10), y in word(10)) {
        let lhs = cover::lift_word(&braid::braid_mul(&x, &y));
        prop_assert_eq!(lhs, cover::cover_mul(&cover::lift_word(&x), &cover::lift_word(&y)));
        if braid::braid_eq(&x, &y) {
            prop_assert_eq!(cover::lift_word(&x), cover::lift_word(&y));
        }
    }

    #[test]
    fn cover_monoid_laws(x in cover_el(), y in cover_el(), z in cover_el()) {
        let id = CoverElement::identity();
        prop_assert_eq!(cover::cover_mul(&id, &x), x.clone());
        prop_assert_eq!(cover::cover_mul(&x, &id), x.clone());
        prop_assert_eq!(
            cover::cover_mul(&cover::cover_mul(&x, &y), &z),
            cover::cover_mul(&x, &cover::cover_mul(&y, &z))
        );
        prop_assert_eq!(cover::transpose_cover(&cover::transpose_cover(&x)), x.clone());
        prop_assert_eq!(
            cover::transpose_cover(&cover::cover_mul(&x, &y)),
            cover::cover_mul(&cover::transpose_cover(&y), &cover::transpose_cover(&x))
        );
    }

    #[test]
    fn unimodular_cover_elements_invert(m in unimodular(), w in -3i64..=3) {
        let x = CoverElement::new(m, w).unwrap();
        let inv = x.inverse().unwrap();
        prop_assert_eq!(cover::cover_mul(&x, &inv), CoverElement::identity());
        prop_assert_eq!(cover::cover_mul(&inv, &x), CoverElement::identity());
    }

    #[test]
    fn cover_parameter_is_additive(x in cover_el(), y in cover_el()) {
        // s(xy) = s(x) + s(y) + η(x, y), η = Arg ζ in (−π/2, π/2)
        let zeta = cover::eta_zeta(&x.matrix().to_q(), &y.matrix().to_q()).unwrap();
        let s = cover::cover_mul(&x, &y).parameter_f64();
        let expected = x.parameter_f64() + y.parameter_f64() + zeta.arg_f64();
        prop_assert!((s - expected).abs() < 1e-9, "{} vs {}", s, expected);
        prop_assert!(zeta.arg_f64().abs() < std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn row_hnf_is_invariant_under_left_unimodular(m in positive(9), u in unimodular()) {
        let h = |m: &Mat2Z| mat::row_hnf([m.a.clone(), m.b.clone()], [m.c.clone(), m.d.clone()]).unwrap();
        prop_assert_eq!(h(&u.mul(&m)), h(&m));
    }

    #[test]
    fn image_lattice_is_invariant_under_right_unimodular(m in positive(9), u in unimodular()) {
        let a = lattice::image_lattice(&m).unwrap();
        let b = lattice::image_lattice(&m.mul(&u)).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(a.index(), m.det());
        // every column of m lies in its image
        let cols = [[qq::zi(m.a.clone()), qq::zi(m.c.clone())], [qq::zi(m.b.clone()), qq::zi(m.d.clone())]];
        for c in &cols {
            prop_assert!(a.contains(c));
        }
    }

    #[test]
    fn kernel_is_a_left_coset_invariant(m in positive(7), u in unimodular()) {
        let k = lattice::kernel_subgroup(&m).unwrap();
        prop_assert_eq!(k.order(), m.det());
        prop_assert_eq!(lattice::kernel_subgroup(&u.mul(&m)).unwrap(), k.clone());
        // m kills each element of its kernel
        for p in k.elements() {
            let img = m.to_q().apply(&p);
            prop_assert!(img.iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn duality_round_trip(c in subgroup()) {
        let a = lattice::matrix_from_subgroup(&c);
        prop_assert_eq!(a.det(), c.order());
        prop_assert_eq!(lattice::kernel_subgroup(&a).unwrap(), c);
    }

    #[test]
    fn containment_matches_element_sets(c in subgroup(), d in subgroup()) {
        let ce = c.elements();
        let de = d.elements();
        prop_assert_eq!(c.is_subgroup_of(&d), ce.iter().all(|p| de.contains(p)));
        prop_assert_eq!(BigInt::from(ce.len()), c.order());
    }

    #[test]
    fn orbit_morphisms_compose_associatively(
        c in subgroup(), t1 in point(), t2 in point(), t3 in point()
    ) {
        let free = OrbitObject::free();
        let target = OrbitObject::new(c);
        let tr = |p: &TorusPoint| [p.x().clone(), p.y().clone()];
        let f = OrbitMorphism::new(free.clone(), free.clone(), tr(&t1)).unwrap();
        let g = OrbitMorphism::new(free.clone(), target.clone(), tr(&t2)).unwrap();
        let h = OrbitMorphism::new(target.clone(), target.clone(), tr(&t3)).unwrap();
        let lhs = orbit::compose(&orbit::compose(&f, &g).unwrap(), &h).unwrap();
        let rhs = orbit::compose(&f, &orbit::compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(orbit::compose(&OrbitMorphism::identity(&free), &f).unwrap(), f.clone());
        // composition agrees with applying the maps one after another
        let p = [qq::qf(1, 7), qq::qf(2, 5)];
        prop_assert_eq!(lhs.apply(&p), h.apply(&g.apply(&f.apply(&p))));
    }

    #[test]
    fn isogeny_action(a in positive(4), b in positive(3), c in subgroup()) {
        let c = OrbitObject::new(c);
        let ac = orbit::isogeny_act(&a, &c).unwrap();
        prop_assert_eq!(ac.subgroup.order(), a.det() * c.subgroup.order());
        let lhs = orbit::isogeny_act(&a.mul(&b), &c).unwrap();
        prop_assert_eq!(lhs, orbit::isogeny_act(&a, &orbit::isogeny_act(&b, &c).unwrap()).unwrap());
        // n·I pulls C back to a supergroup
        if is_scalar(&a) {
            prop_assert!(orbit::hom_exists(&c, &ac));
        }
    }

    #[test]
    fn semidirect_product_is_associative(
        p in prop::array::uniform3(point()),
        m in prop::array::uniform3(positive(4)),
    ) {
        let el = |i: usize| SemidirectElement::new(p[i].clone(), Part::Matrix(m[i].clone())).unwrap();
        let (g, h, k) = (el(0), el(1), el(2));
        let lhs = semidirect::sd_mul(&semidirect::sd_mul(&g, &h).unwrap(), &k).unwrap();
        let rhs = semidirect::sd_mul(&g, &semidirect::sd_mul(&h, &k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_semidirect_law(p in point(), q in point(), x in word(8), y in word(8), r in point()) {
        let g = SemidirectElement::new(p, Part::Braid(x)).unwrap();
        let h = SemidirectElement::new(q, Part::Braid(y)).unwrap();
        let gh = semidirect::sd_mul(&g, &h).unwrap();
        prop_assert_eq!(
            semidirect::aff_apply(&gh, &r),
            semidirect::aff_apply(&g, &semidirect::aff_apply(&h, &r))
        );
        let inv = g.inverse().unwrap();
        prop_assert!(semidirect::sd_eq(&semidirect::sd_mul(&inv, &g).unwrap(), &g.identity_like()));
    }
}

fn is_scalar(m: &Mat2Z) -> bool {
    m.b == BigInt::from(0) && m.c == BigInt::from(0) && m.a == m.d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Q[Z/n] and Q[x]/xⁿ: normalized and unnormalized complexes agree, and
    /// HH_0 is the whole (commutative) algebra.
    #[test]
    fn small_commutative_algebras(n in 1usize..=3, group in any::<bool>()) {
        let a = if group {
            hochschild::algebra::cyclic_group_algebra(n)
        } else {
            hochschild::algebra::truncated_polynomial(n)
        };
        prop_assert!(a.validate().is_valid());
        let norm = bar::hh_betti(&a, 4).unwrap();
        prop_assert_eq!(&norm, &bar::hh_betti_with(&a, 4, false).unwrap());
        prop_assert_eq!(norm[0], n);
        prop_assert_eq!(hochschild::hh0_direct(&a), n);
        if group {
            // separable: nothing above degree 0
            prop_assert!(norm[1..].iter().all(|&b| b == 0));
        }
    }
}

#[test]
fn sigma_oracle_is_consistent() {
    for n in 1..=200u64 {
        assert_eq!(common::sigma1_by_factorization(n), lattice::sigma1(n), "{n}");
    }
}
