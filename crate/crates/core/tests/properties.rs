use proptest::prelude::*;

use mhcheck::algebra::{multiply, tensor, Element, Key};
use mhcheck::bundle::{element_of, terms_of};
use mhcheck::coaction::{check_globality, check_partial_axioms, check_symmetric_axioms, t_rank};
use mhcheck::construct::{check_h_conditions, h_coaction};
use mhcheck::exact::{in_span, solve_linear, Field, Matrix, Scalar};
use mhcheck::gallery::{function_algebra, group_algebra, indicator, sweedler, FiniteGroup};
use mhcheck::mhopf::{tensor_mha, Mha};
use mhcheck::multiplier::Multiplier;
use mhcheck::smash::{self, Smash};
use mhcheck::window::Sampling;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime { p: 7 }), Just(Field::Prime { p: 101 })]
}

fn matrix(field: Field, entries: &[i64], rows: usize, cols: usize) -> Matrix {
    let rows = entries.chunks(cols).take(rows).map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
    Matrix::from_rows(field, rows).unwrap()
}

fn vector(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.int(x)).collect()
}

fn element_over(m: &Mha, coeffs: &[i64]) -> Element {
    let f = m.field();
    m.alg.window().iter().zip(coeffs).map(|(k, &c)| (k.clone(), f.int(c))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solutions_of_consistent_systems_are_exact(
        field in field_strategy(),
        entries in prop::collection::vec(-4i64..5, 20),
        x in prop::collection::vec(-3i64..4, 5),
    ) {
        let a = matrix(field, &entries, 4, 5);
        let b = a.mul_vec(&vector(field, &x)).unwrap();
        let sol = solve_linear(&a, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn rank_is_transpose_invariant(field in field_strategy(), entries in prop::collection::vec(-3i64..4, 25)) {
        let a = matrix(field, &entries, 5, 5);
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn in_span_matches_rank_test(
        field in field_strategy(),
        span in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 1..4),
        v in prop::collection::vec(-2i64..3, 4),
    ) {
        let s: Vec<Vec<Scalar>> = span.iter().map(|r| vector(field, r)).collect();
        let v = vector(field, &v);
        let base = Matrix::from_rows(field, s.clone()).unwrap().rank();
        let mut with_v = s.clone();
        with_v.push(v.clone());
        let extended = Matrix::from_rows(field, with_v).unwrap().rank();
        prop_assert_eq!(in_span(field, &v, &s).unwrap(), base == extended);
    }

    #[test]
    fn rational_field_laws(a in -50i64..50, b in -50i64..50, c in 1i64..30, d in 1i64..30) {
        let f = Field::Rationals;
        let x = f.ratio(a, c).unwrap();
        let y = f.ratio(b, d).unwrap();
        prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
        if !y.is_zero() {
            prop_assert!((&y * &y.inv().unwrap()).is_one());
        }
        prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn element_terms_round_trip(field in field_strategy(), coeffs in prop::collection::vec(-5i64..6, 6)) {
        let x: Element = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Key::pair(Key::Int(i as i64 % 3), Key::Int(i as i64)), field.int(c)))
            .collect();
        prop_assert!(x.terms().all(|(_, c)| !c.is_zero()));
        prop_assert_eq!(element_of(&terms_of(&x), field, "x").unwrap(), x);
    }

    #[test]
    fn embedding_is_multiplicative(xs in prop::collection::vec(-3i64..4, 4), ys in prop::collection::vec(-3i64..4, 4)) {
        let h4 = sweedler(Field::Rationals).unwrap();
        let (x, y) = (element_over(&h4, &xs), element_over(&h4, &ys));
        let prod = Multiplier::embed(&x, h4.alg.clone()).unwrap().mul(&Multiplier::embed(&y, h4.alg.clone()).unwrap()).unwrap();
        let xy = multiply(&x, &y, h4.alg.as_ref()).unwrap();
        for k in h4.alg.window() {
            let b = h4.basis_element(k);
            prop_assert_eq!(prod.act_left(&b).unwrap(), multiply(&xy, &b, h4.alg.as_ref()).unwrap());
        }
    }

    #[test]
    fn hopf_identities_on_random_elements(xs in prop::collection::vec(-3i64..4, 4), ys in prop::collection::vec(-3i64..4, 4)) {
        let h4 = sweedler(Field::Rationals).unwrap();
        let (x, y) = (element_over(&h4, &xs), element_over(&h4, &ys));
        let dx = h4.classical_delta(&x).unwrap();
        let eps = |k: &Key| h4.counit_of(&h4.basis_element(k));
        prop_assert_eq!(tensor::contract_leg(&dx, 2, 0, eps).unwrap(), x.clone());
        prop_assert_eq!(tensor::contract_leg(&dx, 2, 1, eps).unwrap(), x.clone());
        let xy = multiply(&x, &y, h4.alg.as_ref()).unwrap();
        let dxy = h4.classical_delta(&xy).unwrap();
        let prod = multiply(&dx, &h4.classical_delta(&y).unwrap(), h4.square().as_ref()).unwrap();
        prop_assert_eq!(dxy, prod);
        let mut s_x1_x2 = Element::zero();
        for (k, c) in dx.terms() {
            let legs = tensor::legs_of(k, 2);
            let s1 = h4.antipode_of(&h4.basis_element(&legs[0])).unwrap();
            s_x1_x2.add_scaled(&multiply(&s1, &h4.basis_element(&legs[1]), h4.alg.as_ref()).unwrap(), c);
        }
        let one = h4.alg.unit().unwrap();
        prop_assert_eq!(s_x1_x2, one.scale(&h4.counit_of(&x)));
    }

    #[test]
    fn h_conditions_hold_exactly_for_subgroups_of_z6(mask in 1u32..64) {
        let f = Field::Rationals;
        let g = FiniteGroup::cyclic(6).unwrap();
        let members: Vec<usize> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
        let is_subgroup = members.contains(&0)
            && members.iter().all(|&a| members.iter().all(|&b| members.contains(&g.mul(a, b))));
        let a = function_algebra(&g, f).unwrap();
        let y = group_algebra(&FiniteGroup::cyclic(2).unwrap(), f).unwrap();
        let h = Multiplier::embed(&indicator(&members, f), a.alg.clone()).unwrap();
        let s = Sampling::default();
        let conditions = check_h_conditions(&a, &h, &s).is_ok();
        prop_assert_eq!(conditions, is_subgroup);
        let cc = h_coaction(&y, &a, &h).unwrap();
        prop_assert_eq!(check_partial_axioms(&cc, &s).is_ok(), conditions);
        if conditions {
            prop_assert!(check_symmetric_axioms(&cc, &s).is_ok());
            let global = members.len() == 6;
            prop_assert_eq!(check_globality(&cc, &s).is_ok(), global);
            prop_assert_eq!(t_rank(&cc).unwrap(), (2 * members.len(), 12));
        }
    }
}

#[test]
fn smash_of_z4_over_n_matches_y_tensor_a_z2() {
    let f = Field::Rationals;
    let a = function_algebra(&FiniteGroup::cyclic(4).unwrap(), f).unwrap();
    let y = group_algebra(&FiniteGroup::cyclic(2).unwrap(), f).unwrap();
    let h = Multiplier::embed(&indicator(&[0, 2], f), a.alg.clone()).unwrap();
    let ss = Smash::new(&h_coaction(&y, &a, &h).unwrap()).unwrap();
    let cb = smash::build_cb(&ss, &smash::default_b(&ss).unwrap()).unwrap();
    assert_eq!(cb.dim(), 4);

    // y⊗δ_n in Y⊗A_Z2 corresponds to y⊗δ_{2n} in Y⊗A_Z4.
    let oracle = tensor_mha(&y, &function_algebra(&FiniteGroup::cyclic(2).unwrap(), f).unwrap()).unwrap();
    let relabel = |k: &Key| -> Element {
        let l = tensor::legs_of(k, 2);
        let n = l[1].as_int().unwrap();
        ss.element(&l[0], &Key::Int(2 * n))
    };
    let relabel2 = |t: &Element| -> Element {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let l = tensor::legs_of(k, 2);
            out.add_scaled(&tensor::pure(&[&relabel(&l[0]), &relabel(&l[1])]), c);
        }
        out
    };
    for k in oracle.alg.window() {
        let x = relabel(k);
        assert!(cb.contains(&x));
        let expected = relabel2(&oracle.classical_delta(&oracle.basis_element(k)).unwrap());
        assert_eq!(ss.delta_bar(&x).unwrap(), expected, "Δ at {}", oracle.label(k));
        assert_eq!(ss.eps_bar_of(&x), oracle.counit_of(&oracle.basis_element(k)));
        for k2 in oracle.alg.window() {
            let prod = multiply(&oracle.basis_element(k), &oracle.basis_element(k2), oracle.alg.as_ref()).unwrap();
            let lhs = multiply(&x, &relabel(k2), ss.carrier().as_ref()).unwrap();
            assert_eq!(lhs, prod.linear(|k| Ok(relabel(k))).unwrap());
        }
    }
}
