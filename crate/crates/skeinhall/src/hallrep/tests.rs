
use super::*;
use crate::coeffring::rf_eq;
use crate::knots::validate_pairs;
use crate::partitions::partitions_of;
use crate::skeinmod::{self, SkeinElement};
use crate::symfunc::{ev_E, principal_spec, sym_eq};
use crate::toralg::ToralVector;

const CAP: u32 = 12;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

fn qv() -> RatFunc {
    RatFunc::var(Var::Q)
}

#[test]
fn diag_eigenvalues() {
    // diag(1) on P_1 multiplies by (q - 1).
    let p1 = SymFunc::basis_element(Basis::Macdonald, p(&[1]));
    let got = diag_action(1, &p1).unwrap();
    let expect = p1.scale(&qv().sub(&RatFunc::one()));
    assert!(sym_eq(&got, &expect, CAP).unwrap());

    // Empty partition: the sum is empty.
    let unit = SymFunc::one(Basis::Macdonald);
    assert!(diag_action(2, &unit).unwrap().is_zero());

    // Negative index: q (q^-1 - 1) = 1 - q.
    let got = diag_action(-1, &p1).unwrap();
    let expect = p1.scale(&RatFunc::one().sub(&qv()));
    assert!(sym_eq(&got, &expect, CAP).unwrap());

    assert_eq!(diag_action(0, &p1), Err(Error::ZeroIndex));
}

#[test]
fn renormalized_horizontal_generator_is_p1() {
    let op = u_op(1, 0, true).unwrap();
    let got = apply_op(&op, &SymFunc::one(Basis::Macdonald), CAP).unwrap();
    let expect = SymFunc::basis_element(Basis::Macdonald, p(&[1]));
    assert!(sym_eq(&got, &expect, CAP).unwrap());
    assert_eq!(op.hdeg(), 1);
}

#[test]
fn vertical_u_is_scaled_diag() {
    let op = u_op(0, 2, false).unwrap();
    for lambda in partitions_of(3) {
        let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
        let got = apply_op(&op, &f, CAP).unwrap();
        let scale = RatFunc::var_pow(Var::Q, 2).sub(&RatFunc::one()).recip().unwrap();
        let expect = diag_action(2, &f).unwrap().scale(&scale);
        assert!(sym_eq(&got, &expect, CAP).unwrap(), "{lambda}");
    }
}

#[test]
fn commutator_of_bases() {
    // [diag(1), mul_p1] on the unit gives (q - 1) P_1.
    let op = HallOperator::diag(1).unwrap().commutator(&HallOperator::mul_p1());
    let got = apply_op(&op, &SymFunc::one(Basis::Macdonald), CAP).unwrap();
    let expect =
        SymFunc::basis_element(Basis::Macdonald, p(&[1])).scale(&qv().sub(&RatFunc::one()));
    assert!(sym_eq(&got, &expect, CAP).unwrap());
}

#[test]
fn grading_shift() {
    for (m, n) in [(1i64, 1i64), (2, 1), (3, -2), (2, -3)] {
        let op = v_op(m, n).unwrap();
        assert_eq!(op.hdeg(), m, "({m},{n})");
        for lambda in partitions_of(2) {
            let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
            let image = apply_op(&op, &f, CAP).unwrap();
            for (l, _) in image.terms() {
                assert_eq!(l.size() as i64, 2 + m);
            }
        }
    }
}

#[test]
fn theta_series_generating_identity() {
    // Coefficients of the exponential of sum alpha_r u_r z^r reproduce the
    // canonical theta operators along a primitive ray, on low degrees.
    let x0 = (1i64, 1i64);
    for d in 1..=3u32 {
        let theta = theta_op(d, x0).unwrap();
        // exp coefficient: sum over ordered compositions of d into j parts,
        // each part i contributing alpha_i u_{i x0}, weighted by 1/j!.
        let mut exp_coeff: Option<HallOperator> = None;
        for j in 1..=d {
            let mut fact = BigRational::from_integer(1.into());
            for f in 1..=j as i64 {
                fact = fact * BigRational::from_integer(f.into());
            }
            for comp in super::compositions(d, j) {
                let mut chain: Option<HallOperator> = None;
                for part in comp {
                    let u = u_op(part as i64 * x0.0, part as i64 * x0.1, false)
                        .unwrap()
                        .scale(&alpha(part));
                    chain = Some(match chain {
                        None => u,
                        Some(c) => c.compose(&u),
                    });
                }
                let term = chain
                    .unwrap()
                    .scale(&RatFunc::from_rat(fact.recip()));
                exp_coeff = Some(match exp_coeff {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
        }
        let exp_coeff = exp_coeff.unwrap();
        for size in 0..=2u32 {
            for lambda in partitions_of(size) {
                let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
                let a = apply_op(&theta, &f, CAP).unwrap();
                let b = apply_op(&exp_coeff, &f, CAP).unwrap();
                assert!(sym_eq(&a, &b, CAP).unwrap(), "d = {d}, lambda = {lambda}");
            }
        }
    }
}

#[test]
fn relation_one_smoke() {
    // Generators along one ray commute: [u(1,1), u(2,2)] = 0 on low degrees.
    let a = u_op(1, 1, false).unwrap();
    let b = u_op(2, 2, false).unwrap();
    let c = a.commutator(&b);
    for size in 0..=3u32 {
        for lambda in partitions_of(size) {
            let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
            let image = apply_op(&c, &f, CAP).unwrap();
            assert!(
                sym_eq(&image, &SymFunc::zero(Basis::Macdonald), CAP).unwrap(),
                "lambda = {lambda}"
            );
        }
    }
}

#[test]
fn relation_two_decomposition_independence_smoke() {
    // theta(1,1) from two different admissible pairs.
    let t1 = theta_via((0, 1), (1, 0)).unwrap();
    let t2 = theta_via((1, 0), (0, 1)).unwrap();
    for size in 0..=3u32 {
        for lambda in partitions_of(size) {
            let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
            let a = apply_op(&t1, &f, CAP).unwrap();
            let b = apply_op(&t2, &f, CAP).unwrap();
            assert!(sym_eq(&a, &b, CAP).unwrap(), "lambda = {lambda}");
        }
    }
}

#[test]
fn qt_bridge_single_box() {
    // The twisted skein action of P(1,1) on the unit matches
    // v^1 s^0 v(1,1) at q = t = s^-2.
    let skein = skeinmod::act_p(
        ToralVector::new(1, 1).unwrap(),
        &SkeinElement::unit(),
        true,
    )
    .unwrap()
    .to_cplus()
    .unwrap();
    let hall = phi_image(1, 1, &Partition::empty(), CAP).unwrap();
    assert!(sym_eq(&skein, &hall, CAP).unwrap());
}

#[test]
fn j_e_unknot_values() {
    let pairs = validate_pairs(&[(1, 0)]).unwrap();
    let got = j_e(&pairs, &p(&[1]), CAP).unwrap();
    let expect = RatFunc::one()
        .sub(&RatFunc::var(Var::U))
        .div(&RatFunc::one().sub(&RatFunc::var(Var::T)))
        .unwrap();
    assert!(rf_eq(&got, &expect));

    let empty = validate_pairs(&[]).unwrap();
    for lambda in partitions_of(2) {
        let got = j_e(&empty, &lambda, CAP).unwrap();
        let expect = ev_E(&SymFunc::basis_element(Basis::Macdonald, lambda.clone())).unwrap();
        assert!(rf_eq(&got, &expect));
    }
}

#[test]
fn spec_examples() {
    let f = RatFunc::one()
        .sub(&RatFunc::var(Var::U))
        .div(&RatFunc::one().sub(&RatFunc::var(Var::T)))
        .unwrap();
    let skein = spec_to_skein(&f).unwrap();
    let expect = RatFunc::one()
        .sub(&RatFunc::var_pow(Var::V, 2))
        .div(&RatFunc::one().sub(&RatFunc::var_pow(Var::S, -2)))
        .unwrap();
    assert!(rf_eq(&skein, &expect));

    let at2 = spec_to_n(&f, 2).unwrap();
    let expect = RatFunc::one().add(&RatFunc::var(Var::T));
    assert!(rf_eq(&at2, &expect));
}

#[test]
fn j_e_principal_specialization() {
    // spec_to_n(jE([(1,0)], lambda), N) equals the principal specialization.
    let pairs = validate_pairs(&[(1, 0)]).unwrap();
    for lambda in partitions_of(2) {
        let je = j_e(&pairs, &lambda, CAP).unwrap();
        for n in 1..=3u32 {
            let got = spec_to_n(&je, n).unwrap();
            let oracle =
                principal_spec(&SymFunc::basis_element(Basis::Macdonald, lambda.clone()), n)
                    .unwrap();
            assert!(rf_eq(&got, &oracle), "{lambda} at N = {n}");
        }
    }
}

#[test]
fn j_e_torus_knot_ratio_is_monomial() {
    // Early pipeline consistency check at the smallest interesting cable.
    let pairs = validate_pairs(&[(2, 1)]).unwrap();
    let lam = p(&[1]);
    let je = j_e(&pairs, &lam, CAP).unwrap();
    let jh = skeinmod::j_h(&pairs, &lam, CAP).unwrap();
    let ratio = spec_to_skein(&je).unwrap().div(&jh).unwrap();
    let (c, e) = ratio.as_monomial().expect("monomial ratio");
    assert!(
        c == BigRational::from_integer(1.into()) || c == BigRational::from_integer((-1).into())
    );
    assert_eq!(e[Var::Q as usize], 0);
    assert_eq!(e[Var::T as usize], 0);
    assert_eq!(e[Var::U as usize], 0);
}

#[test]
fn cable_step_rejects_bad_input() {
    let f = SymFunc::one(Basis::Macdonald);
    assert_eq!(cable_step_e(2, 4, &f, CAP), Err(Error::NotCoprime(2, 4)));
    assert_eq!(cable_step_e(-1, 1, &f, CAP), Err(Error::NonpositiveM(-1)));
}

#[test]
fn degree_cap_respected() {
    let pairs = validate_pairs(&[(3, 1)]).unwrap();
    assert!(matches!(
        j_e(&pairs, &p(&[3, 2]), 12),
        Err(Error::DegreeCapExceeded { needed: 15, cap: 12 })
    ));
}
