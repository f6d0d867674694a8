use super::*;
use crate::coeffring::{brace_plus, rf_eq};
use crate::knots::validate_pairs;
use crate::partitions::partitions_of;
use crate::toralg::{gl2_act, ToralElement};

const CAP: u32 = 12;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

fn v(m: i64, n: i64) -> ToralVector {
    ToralVector::new(m, n).unwrap()
}

fn vv(e: i64) -> RatFunc {
    RatFunc::var_pow(Var::V, e)
}

fn ss(e: i64) -> RatFunc {
    RatFunc::var_pow(Var::S, e)
}

#[test]
fn s_coeff_examples() {
    // Empty pair: the unknot constant (v^-m - v^m)/(s^m - s^-m).
    for m in [1i64, 2, 3, -2] {
        let got = s_coeff(&Partition::empty(), &Partition::empty(), m).unwrap();
        let expect = vv(-m).sub(&vv(m)).div(&brace(m)).unwrap();
        assert!(rf_eq(&got, &expect), "m = {m}");
    }

    // Single cell of content zero.
    let got = s_coeff(&p(&[1]), &Partition::empty(), 1).unwrap();
    let expect = brace(1)
        .mul(&vv(-1))
        .add(&vv(-1).sub(&vv(1)).div(&brace(1)).unwrap());
    assert!(rf_eq(&got, &expect));

    // Content multisets {0,1} against {0} at m = 2.
    let got = s_coeff(&p(&[2]), &p(&[1]), 2).unwrap();
    let expect = brace(2)
        .mul(
            &vv(-2)
                .mul(&RatFunc::one().add(&ss(4)))
                .sub(&vv(2)),
        )
        .add(&vv(-2).sub(&vv(2)).div(&brace(2)).unwrap());
    assert!(rf_eq(&got, &expect));

    assert_eq!(
        s_coeff(&p(&[1]), &p(&[1]), 0),
        Err(Error::ZeroIndex)
    );
}

#[test]
fn s_coeff_symmetry() {
    // s(lambda, mu, -m) = s(mu, lambda, m).
    for m in 1..=3i64 {
        for la in partitions_of(2) {
            for mu in partitions_of(3) {
                let a = s_coeff(&la, &mu, -m).unwrap();
                let b = s_coeff(&mu, &la, m).unwrap();
                assert!(rf_eq(&a, &b));
            }
        }
    }
}

#[test]
fn act_diagonal() {
    let e = SkeinElement::basis(p(&[2]), p(&[1]));
    let got = act_p(v(1, 0), &e, false).unwrap();
    let expect = e.scale(&s_coeff(&p(&[2]), &p(&[1]), 1).unwrap());
    assert_eq!(got, expect);
}

#[test]
fn act_vertical_on_unit() {
    let got = act_p(v(0, 1), &SkeinElement::unit(), false).unwrap();
    assert_eq!(got, SkeinElement::basis(p(&[1]), Partition::empty()));
}

#[test]
fn act_skew_matches_commutator_oracle() {
    // P(1,2) on the unit, checked against (1/{2}) [P(1,0), P(0,2)] computed
    // from the diagonal and vertical actions only.
    let unit = SkeinElement::unit();
    let got = act_p(v(1, 2), &unit, false).unwrap();

    let ab = act_p(v(1, 0), &act_p(v(0, 2), &unit, false).unwrap(), false).unwrap();
    let ba = act_p(v(0, 2), &act_p(v(1, 0), &unit, false).unwrap(), false).unwrap();
    let oracle = ab.sub(&ba).scale(&brace(2).recip().unwrap());
    for key in [(p(&[2]), p(&[])), (p(&[1, 1]), p(&[]))] {
        assert!(rf_eq(&got.coeff(&key.0, &key.1), &oracle.coeff(&key.0, &key.1)));
    }
    assert_eq!(got.terms().count(), oracle.terms().count());
}

#[test]
fn representation_identity_small() {
    // [P(m,0), P(0,n)] = {mn} P(m,n) on basis vectors.
    for m in [-2i64, -1, 1, 2] {
        for n in [-2i64, -1, 1, 2] {
            for la in partitions_of(2) {
                for mu in partitions_of(1) {
                    let e = SkeinElement::basis(la.clone(), mu.clone());
                    let lhs = act_p(v(m, 0), &act_p(v(0, n), &e, false).unwrap(), false)
                        .unwrap()
                        .sub(&act_p(v(0, n), &act_p(v(m, 0), &e, false).unwrap(), false).unwrap());
                    let rhs = act_p(v(m, n), &e, false).unwrap().scale(&brace(m * n));
                    assert_eq!(
                        lhs.terms().count(),
                        rhs.terms().count(),
                        "m={m} n={n} {la} {mu}"
                    );
                    for (key, c) in lhs.terms() {
                        assert!(
                            rf_eq(c, &rhs.coeff(&key.0, &key.1)),
                            "m={m} n={n} {la} {mu} at {:?}",
                            key
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn identity_vector_eigenvalue() {
    // P(m,0) on the unit is scalar ev(P_m) = (v^-m - v^m)/(s^m - s^-m).
    for m in 1..=3i64 {
        let got = act_p(v(m, 0), &SkeinElement::unit(), false).unwrap();
        let ev = vv(-m).sub(&vv(m)).div(&brace(m)).unwrap();
        assert_eq!(got.terms().count(), 1);
        assert!(rf_eq(
            &got.coeff(&Partition::empty(), &Partition::empty()),
            &ev
        ));
    }
}

#[test]
fn action_shifts_grading() {
    let e = SkeinElement::basis(p(&[2, 1]), p(&[1]));
    for (m, n) in [(0i64, 2i64), (1, 2), (2, -1), (-1, 1)] {
        let out = act_p(v(m, n), &e, false).unwrap();
        for d in out.degrees() {
            assert_eq!(d, 2 + n, "vector ({m},{n})");
        }
    }
}

#[test]
fn build_q_single_cells() {
    // Q((1),(1)) = s_1 ⊗ s_1 - 1 ⊗ 1.
    let q = build_q(&p(&[1]), &p(&[1]), CAP).unwrap();
    assert!(rf_eq(&q.coeff(&p(&[1]), &p(&[1])), &RatFunc::one()));
    assert!(rf_eq(
        &q.coeff(&Partition::empty(), &Partition::empty()),
        &RatFunc::from_int(-1)
    ));
    assert_eq!(q.terms().count(), 2);
}

#[test]
fn build_q_schur_column() {
    // With mu empty the determinant is the Jacobi-Trudi matrix, so
    // Q(lambda, ∅) = s_lambda ⊗ 1.
    for size in 0..=4u32 {
        for lambda in partitions_of(size) {
            let q = build_q(&lambda, &Partition::empty(), CAP).unwrap();
            let expect = TensorElem::schur_pair(lambda.clone(), Partition::empty());
            assert_eq!(q, expect, "lambda = {lambda}");
        }
    }
}

#[test]
fn build_q_swap_symmetry() {
    for (la, mu) in [
        (p(&[1]), p(&[1])),
        (p(&[2]), p(&[1])),
        (p(&[2, 1]), p(&[1, 1])),
        (p(&[3]), p(&[2, 1])),
    ] {
        let q = build_q(&la, &mu, CAP).unwrap();
        let swapped = build_q(&mu, &la, CAP).unwrap();
        assert_eq!(q.swap(), swapped, "{la} {mu}");
    }
}

#[test]
fn build_q_lower_filtration_correction() {
    // Q(lambda, mu) - (s_lambda ⊗ 1)(1 ⊗ s_mu) lives strictly below the top
    // bidegree, with both degrees dropping.
    for (la, mu) in [(p(&[1]), p(&[1])), (p(&[2]), p(&[1])), (p(&[2, 1]), p(&[2]))] {
        let q = build_q(&la, &mu, CAP).unwrap();
        let top = TensorElem::schur_pair(la.clone(), mu.clone());
        let rest = q.sub(&top);
        for ((a, b), _) in rest.terms() {
            assert!(a.size() < la.size(), "{la} {mu}");
            assert!(b.size() < mu.size(), "{la} {mu}");
        }
    }
}

#[test]
fn q_expansion_positive_example() {
    // Q((1),∅) Q(∅,(1)) = Q((1),(1)) + Q(∅,∅): positive integer
    // coefficients.
    let prod = build_q(&p(&[1]), &Partition::empty(), CAP)
        .unwrap()
        .mul(&build_q(&Partition::empty(), &p(&[1]), CAP).unwrap(), CAP)
        .unwrap();
    let expanded = q_expand(&prod, CAP).unwrap();
    assert!(rf_eq(&expanded.coeff(&p(&[1]), &p(&[1])), &RatFunc::one()));
    assert!(rf_eq(
        &expanded.coeff(&Partition::empty(), &Partition::empty()),
        &RatFunc::one()
    ));
    assert_eq!(expanded.terms().count(), 2);
}

#[test]
fn build_q_degree_cap() {
    assert!(matches!(
        build_q(&p(&[8]), &p(&[7]), 12),
        Err(Error::DegreeCapExceeded { needed: 15, cap: 12 })
    ));
}

#[test]
fn cable_step_identity_direction() {
    // The (1,0) cable is the identity map.
    let f = SymFunc::basis_element(Basis::Schur, p(&[2, 1]))
        .add(&SymFunc::basis_element(Basis::Schur, p(&[1])).scale(&brace(2)));
    let got = cable_step_h(1, 0, &f, CAP).unwrap();
    assert!(crate::symfunc::sym_eq(&got, &f, CAP).unwrap());
}

#[test]
fn cable_step_one_one_is_framing_monomial() {
    let s1 = SymFunc::basis_element(Basis::Schur, p(&[1]));
    let got = cable_step_h(1, 1, &s1, CAP).unwrap();
    assert_eq!(got.num_terms(), 1);
    assert!(rf_eq(&got.coeff(&p(&[1])), &vv(-1)));
    // And the negative twist gives the opposite monomial.
    let got = cable_step_h(1, -1, &s1, CAP).unwrap();
    assert!(rf_eq(&got.coeff(&p(&[1])), &vv(1)));
}

#[test]
fn cable_step_two_one_degree() {
    let s1 = SymFunc::basis_element(Basis::Schur, p(&[1]));
    let got = cable_step_h(2, 1, &s1, CAP).unwrap();
    assert_eq!(got.max_degree(), 2);
    let support: Vec<Partition> = got.terms().map(|(l, _)| l.clone()).collect();
    assert_eq!(support, vec![p(&[1, 1]), p(&[2])]);
}

#[test]
fn cable_step_rejects_bad_input() {
    let s1 = SymFunc::basis_element(Basis::Schur, p(&[1]));
    assert_eq!(
        cable_step_h(2, 4, &s1, CAP),
        Err(Error::NotCoprime(2, 4))
    );
    assert_eq!(cable_step_h(0, 1, &s1, CAP), Err(Error::NonpositiveM(0)));
}

#[test]
fn j_h_unknot() {
    let pairs = validate_pairs(&[(1, 0)]).unwrap();
    let got = j_h(&pairs, &p(&[1]), CAP).unwrap();
    let expect = vv(-1).sub(&vv(1)).div(&brace(1)).unwrap();
    assert!(rf_eq(&got, &expect));

    // The empty cable is the unknot colored by lambda.
    let empty = validate_pairs(&[]).unwrap();
    for lambda in partitions_of(3) {
        let got = j_h(&empty, &lambda, CAP).unwrap();
        let expect =
            symfunc::ev_H(&SymFunc::basis_element(Basis::Schur, lambda.clone())).unwrap();
        assert!(rf_eq(&got, &expect));
    }
}

#[test]
fn j_h_trefoil_matches_published_value() {
    // (v^-1 - v)/(s - s^-1) * (2v^2 - v^4 + v^2 (s - s^-1)^2), up to the
    // framing monomial v^-6 in this normalization.
    let pairs = validate_pairs(&[(2, 3)]).unwrap();
    let got = j_h(&pairs, &p(&[1]), CAP).unwrap();

    let z = brace(1);
    let lit = vv(-1)
        .sub(&vv(1))
        .div(&z)
        .unwrap()
        .mul(
            &RatFunc::from_int(2)
                .mul(&vv(2))
                .sub(&vv(4))
                .add(&vv(2).mul(&z).mul(&z)),
        );
    let ratio = got.div(&lit).unwrap();
    let (c, e) = ratio.as_monomial().expect("ratio must be a monomial");
    assert_eq!(c, num_rational::BigRational::from_integer(1.into()));
    assert_eq!(e[Var::V as usize], -6);
    assert_eq!(e[Var::S as usize], 0);
    assert!(rf_eq(&got, &lit.mul(&vv(-6))));
}

#[test]
fn j_h_torus_knot_mirror_pair() {
    // Mirror image: v -> v^-1, s -> s^-1 sends the (2,3) answer to the
    // (2,-3) answer.
    let lam = p(&[1]);
    let plus = j_h(&validate_pairs(&[(2, 3)]).unwrap(), &lam, CAP).unwrap();
    let minus = j_h(&validate_pairs(&[(2, -3)]).unwrap(), &lam, CAP).unwrap();
    let bind = std::collections::BTreeMap::from([
        (
            Var::V,
            LaurentPoly::monomial(BigRational::from_integer(1.into()), Var::V, -1),
        ),
        (
            Var::S,
            LaurentPoly::monomial(BigRational::from_integer(1.into()), Var::S, -1),
        ),
    ]);
    let mirrored = plus.specialize(&bind).unwrap();
    assert!(rf_eq(&mirrored, &minus));
}

#[test]
fn iota_choice_is_immaterial() {
    // Two lifts of (m,n) from (1,0) differing by an upper-triangular matrix
    // send every P(k,0) to the same generator.
    let gamma = [[2, 1], [1, 1]]; // maps (1,0) to (2,1)
    let gamma_alt = [[2, 3], [1, 2]]; // gamma * [[1,1],[0,1]]
    for k in 1..=3i64 {
        let gen = ToralElement::generator(v(k, 0));
        let a = gl2_act(&gamma, &gen).unwrap();
        let b = gl2_act(&gamma_alt, &gen).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, ToralElement::generator(v(2 * k, k)));
    }
}

#[test]
fn skein_element_json() {
    let e = SkeinElement::basis(p(&[2, 1]), p(&[1])).scale(&brace_plus(1));
    let text = serde_json::to_string(&e).unwrap();
    assert!(text.contains("\"lambda\":[2,1]"));
    assert!(text.contains("\"mu\":[1]"));
    let val: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(val["terms"].is_array());
}
