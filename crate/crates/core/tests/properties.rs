//! Randomized invariants across the library.

use b3rep::classify::{classify, recover_beta};
use b3rep::document::{parse_document, parse_element, MatrixDocument};
use b3rep::families::{construct, FamilyId, FamilyInstance, Param, Params, Presentation, Sign};
use b3rep::field::{root_of_unity, CycloElement, Rational};
use b3rep::groebner::{buchberger, MonomialOrder, MultiPoly};
use b3rep::linalg::{intertwiner_space, ExactMatrix};
use b3rep::poly::Poly;
use b3rep::rep::{
    braid_defect, commutant, decompose, direct_sum, equivalent, is_indecomposable, is_irreducible, make_rep,
    verify_decomposition, verify_witness, B3Rep,
};
use b3rep::spectra::{generalized_eigenspaces, jordan_form, jordan_matrix, roots_in_field, shift, DEFAULT_PRECISION};
use b3rep::yangbaxter::{r_matrix, analyze_r_matrix, ybe_defect, RKind, RMatrixSpec};
use proptest::prelude::*;

const N: u32 = 24;

fn e(v: i64) -> CycloElement {
    CycloElement::from_int(N, v)
}

fn elt() -> impl Strategy<Value = CycloElement> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 0i64..24).prop_map(|(n, d, c, k)| {
        let r = CycloElement::from_rational(N, &Rational::new(n.into(), d.into()));
        &r + &(&e(c) * &root_of_unity(N, k))
    })
}

fn square(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(elt(), n * n).prop_map(move |v| ExactMatrix::from_vector(n, n, N, &v))
}

fn invertible_int(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| ExactMatrix::from_vector(n, n, N, &v.into_iter().map(e).collect::<Vec<_>>()))
        .prop_filter("singular", |m| !m.determinant().unwrap().is_zero())
}

fn nonzero_param() -> impl Strategy<Value = CycloElement> {
    prop_oneof![
        (1i64..=5, 1i64..=3, any::<bool>())
            .prop_map(|(n, d, neg)| CycloElement::from_rational(N, &Rational::new((if neg { -n } else { n }).into(), d.into()))),
        (0i64..24).prop_map(|k| root_of_unity(N, k)),
    ]
}

/// A valid instance of a strictly indecomposable family, or `None` when the
/// sampled values violate its constraints.
fn instance() -> impl Strategy<Value = FamilyInstance> {
    let ids: Vec<FamilyId> = FamilyId::indecomposable().collect();
    (prop::sample::select(ids), nonzero_param(), nonzero_param(), -3i64..=3, any::<bool>(), any::<bool>())
        .prop_filter_map("constraints", |(id, x, y, beta, minus, alt)| {
            let mut given = Params::new();
            let mut vals = [x, y].into_iter();
            for p in id.free_params() {
                let v = if *p == Param::Beta { e(beta) } else { vals.next().unwrap() };
                given.insert(*p, v);
            }
            let sign = id.has_sign().then_some(if minus { Sign::Minus } else { Sign::Plus });
            let pres = if alt { Presentation::Alternate } else { Presentation::First };
            FamilyInstance::new(id, given, sign, pres).ok()
        })
}

fn jordan_shape() -> impl Strategy<Value = Vec<(CycloElement, Vec<usize>)>> {
    prop::collection::vec((prop::sample::select(vec![-2i64, -1, 1, 2, 3]), 1usize..=3), 1..=3).prop_map(|blocks| {
        blocks.into_iter().map(|(l, s)| (e(l), vec![s])).collect()
    })
}

/// Summand dimensions in sorted order.
fn dims_multiset(rep: &B3Rep) -> Vec<usize> {
    decompose(rep).unwrap().sorted_dims()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rref_idempotent_and_kernel_exact(m in (1usize..=4).prop_flat_map(square)) {
        let r = m.rref();
        prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).iter().all(CycloElement::is_zero));
        }
    }

    #[test]
    fn determinant_multiplies_and_inverse_is_two_sided((m, k) in (1usize..=3).prop_flat_map(|n| (square(n), square(n)))) {
        let dm = m.determinant().unwrap();
        prop_assert_eq!(m.mul(&k).determinant().unwrap(), &dm * &k.determinant().unwrap());
        if !dm.is_zero() {
            let inv = m.inverse().unwrap();
            let id = ExactMatrix::identity(m.rows(), N);
            prop_assert_eq!(inv.mul(&m), id.clone());
            prop_assert_eq!(m.mul(&inv), id);
        }
    }

    #[test]
    fn intertwiners_contain_identity((a, b) in (1usize..=3).prop_flat_map(|n| (square(n), square(n)))) {
        let space = intertwiner_space(&a, &b, &a, &b).unwrap();
        prop_assert!(space.contains(&ExactMatrix::identity(a.rows(), N).to_vector()));
    }

    #[test]
    fn exact_roots_substitute_to_zero(roots in prop::collection::vec(nonzero_param(), 1..=4)) {
        let p = Poly::from_roots(N, &roots);
        let report = roots_in_field(&p, DEFAULT_PRECISION).unwrap();
        prop_assert!(report.split);
        for (r, _) in &report.roots {
            prop_assert!(p.eval(r).is_zero());
        }
        let total: usize = report.roots.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, roots.len());
    }

    #[test]
    fn jordan_witness_and_eigenspaces(
        (blocks, p) in jordan_shape().prop_flat_map(|b| {
            let n = b.iter().map(|(_, s)| s[0]).sum::<usize>();
            (Just(b), invertible_int(n))
        })
    ) {
        let j = jordan_matrix(&blocks, N);
        let m = p.mul(&j).mul(&p.inverse().unwrap());
        let n = m.rows();
        let jd = jordan_form(&m).unwrap();
        prop_assert_eq!(jd.p.inverse().unwrap().mul(&m).mul(&jd.p), jd.j.clone());
        prop_assert_eq!(jd.j.char_poly().unwrap(), m.char_poly().unwrap());
        prop_assert_eq!(jordan_form(&m).unwrap(), jd);
        let spaces = generalized_eigenspaces(&m).unwrap();
        prop_assert_eq!(spaces.iter().map(|(_, s)| s.dim()).sum::<usize>(), n);
        for (lambda, space) in &spaces {
            let power = shift(&m, lambda).pow(n as u32);
            for v in space.basis() {
                prop_assert!(power.mul_vec(v).iter().all(CycloElement::is_zero));
            }
        }
    }

    #[test]
    fn one_dimensional_reps_have_a_equal_b(x in nonzero_param(), y in nonzero_param()) {
        let a = ExactMatrix::diag(&[x.clone()]);
        let b = ExactMatrix::diag(&[y.clone()]);
        prop_assert_eq!(make_rep(a, b).is_ok(), x == y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn cayley_hamilton_to_dim_8(m in (1usize..=8).prop_flat_map(square)) {
        let p = m.char_poly().unwrap();
        prop_assert_eq!(p.degree(), Some(m.rows()));
        prop_assert!(m.eval_poly(&p).is_zero());
    }

    #[test]
    fn structure_is_conjugation_invariant(inst in instance(), m in invertible_int(3)) {
        let rep = construct(&inst).unwrap();
        prop_assert!(braid_defect(rep.a(), rep.b()).unwrap().is_zero());
        prop_assert!(!rep.a().determinant().unwrap().is_zero() && !rep.b().determinant().unwrap().is_zero());
        let n = rep.dim();
        let m = m.block(0, n);
        prop_assume!(!m.determinant().unwrap().is_zero());
        let moved = rep.conjugate(&m).unwrap();
        prop_assert_eq!(is_irreducible(&moved), is_irreducible(&rep));
        prop_assert_eq!(is_indecomposable(&moved), is_indecomposable(&rep));
        let (c0, c1) = (commutant(&rep), commutant(&moved));
        prop_assert_eq!((c0.dim, c0.radical_dim), (c1.dim, c1.radical_dim));
        prop_assert_eq!(dims_multiset(&moved), dims_multiset(&rep));
        let w = equivalent(&rep, &moved).unwrap().expect("conjugates are equivalent");
        prop_assert!(verify_witness(&rep, &moved, &w));
        let back = equivalent(&moved, &rep).unwrap().expect("equivalence is symmetric");
        prop_assert!(verify_witness(&moved, &rep, &back));
        prop_assert!(verify_witness(&moved, &rep, &w.inverse().unwrap()));
    }

    #[test]
    fn classification_is_conjugation_invariant(inst in instance(), m in invertible_int(3)) {
        let rep = construct(&inst).unwrap();
        let m = m.block(0, rep.dim());
        prop_assume!(!m.determinant().unwrap().is_zero());
        let before = classify(&rep).unwrap();
        let after = classify(&rep.conjugate(&m).unwrap()).unwrap();
        prop_assert_eq!(before.tag(), after.tag());
        prop_assert_eq!(before.family(), after.family());
        // Overlapping families may be relabelled, so compare representations.
        let fam = before.family().unwrap();
        let rebuilt = construct(fam).unwrap();
        let w = equivalent(&rebuilt, &rep).unwrap().expect("label rebuilds an equivalent rep");
        prop_assert!(verify_witness(&rebuilt, &rep, &w));
        if inst.id == FamilyId::W1_4_1 {
            prop_assert_eq!(fam.param(Param::Beta), inst.param(Param::Beta));
        }
    }

    #[test]
    fn direct_sums_split_back(x in instance(), y in instance()) {
        let (rx, ry) = (construct(&x).unwrap(), construct(&y).unwrap());
        let sum = direct_sum(&[rx.clone(), ry.clone()]).unwrap();
        prop_assert!(!is_indecomposable(&sum));
        let report = decompose(&sum).unwrap();
        prop_assert!(verify_decomposition(&sum, &report));
        prop_assert_eq!(report.dims().iter().sum::<usize>(), sum.dim());
        for s in &report.summands {
            prop_assert!(braid_defect(s.rep.a(), s.rep.b()).unwrap().is_zero());
        }
        let mut want = vec![rx.dim(), ry.dim()];
        want.sort_unstable();
        prop_assert_eq!(report.sorted_dims(), want);
    }

    #[test]
    fn irreducible_implies_indecomposable(a in (2usize..=3).prop_flat_map(|n| prop::collection::vec(nonzero_param(), n))) {
        let (rep, _) = b3rep::families::tuba_wenzl(&a).unwrap();
        prop_assert!(!is_irreducible(&rep) || is_indecomposable(&rep));
    }

    #[test]
    fn beta_is_constant_on_commutant_orbits(l2 in nonzero_param(), beta in -4i64..=4, c in prop::collection::vec(-3i64..=3, 3)) {
        let inst = FamilyInstance::with(FamilyId::W1_4_1, &[(Param::Lambda2, l2), (Param::Beta, e(beta))], None).unwrap();
        let rep = construct(&inst).unwrap();
        let a = rep.a();
        let m = ExactMatrix::identity(3, N).scale(&e(c[0])).add(&a.scale(&e(c[1]))).add(&a.mul(a).scale(&e(c[2])));
        prop_assume!(!m.determinant().unwrap().is_zero());
        let moved = rep.conjugate(&m).unwrap();
        prop_assert_eq!(moved.a(), a);
        prop_assert_eq!(recover_beta(&moved).unwrap(), e(beta));
    }

    #[test]
    fn content_stripping_keeps_membership(k in 1i64..=9, pick in 0usize..4) {
        let vars = MultiPoly::ring(&["x", "y"]);
        let p = |s: &str| MultiPoly::parse(&vars, s).unwrap();
        let gb = buchberger(&[p("x^2 - y"), p("x*y - 1")], MonomialOrder::DegRevLex).unwrap();
        let f = [p("x^3 - 1"), p("y^3 - 1"), p("x + y"), p("y - x^2")][pick].clone();
        let scaled = f.scale(&Rational::new(k.into(), 7.into()));
        prop_assert_eq!(gb.contains(&scaled), gb.contains(&f));
        prop_assert_eq!(gb.contains(&scaled.primitive()), gb.contains(&f));
    }

    #[test]
    fn documents_round_trip(m in (1usize..=3).prop_flat_map(square), x in elt()) {
        let mut doc = MatrixDocument::new(N);
        doc.matrices.insert("M".into(), m);
        doc.metadata.insert("note".into(), "sample".into());
        let text = doc.to_json();
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(parse_element(&x.to_string(), N).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn r_matrices_give_exact_subrepresentations(kind in prop::sample::select(vec![RKind::R1, RKind::R2]), a in nonzero_param(), b in nonzero_param()) {
        prop_assume!(a != b);
        let spec = RMatrixSpec::new(kind, a, b).unwrap();
        let r = r_matrix(&spec).unwrap();
        prop_assert!(ybe_defect(&r).unwrap().is_zero());
        let report = analyze_r_matrix(&spec).unwrap();
        prop_assert!(report.ybe_defect_zero);
        prop_assert!(report.decomposition_verified);
        prop_assert_eq!(report.summand_dims.iter().sum::<usize>(), 8);
        for s in &report.decomposition.summands {
            prop_assert!(braid_defect(s.rep.a(), s.rep.b()).unwrap().is_zero());
        }
    }
}
