use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::coeffring::{rf_eq, ArithOp, rf_arith};
use crate::partitions::{partitions_of, Partition};

const CAP: u32 = 12;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Independent oracle: count semistandard tableaux of shape `lambda` and
/// content `mu` by direct recursive filling.
fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    fn fill(
        lambda: &Partition,
        cells: &[(usize, usize)],
        at: usize,
        grid: &mut Vec<Vec<usize>>,
        remaining: &mut Vec<u32>,
    ) -> u64 {
        if at == cells.len() {
            return 1;
        }
        let (r, c) = cells[at];
        let mut total = 0;
        for val in 0..remaining.len() {
            if remaining[val] == 0 {
                continue;
            }
            // Rows weakly increase left to right, columns strictly increase
            // downwards (English reading of the diagram).
            if c > 0 && grid[r][c - 1] > val {
                continue;
            }
            if r > 0 && grid[r - 1][c] >= val {
                continue;
            }
            grid[r][c] = val;
            remaining[val] -= 1;
            total += fill(lambda, cells, at + 1, grid, remaining);
            remaining[val] += 1;
        }
        total
    }
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![usize::MAX; lambda.part(1) as usize]; lambda.len()];
    let mut remaining: Vec<u32> = mu.parts().to_vec();
    fill(lambda, &cells, 0, &mut grid, &mut remaining)
}

/// Independent oracle: `s_lambda` in the monomial basis via tableau counts.
fn schur_in_m_oracle(lambda: &Partition) -> SymFunc {
    let mut out = SymFunc::zero(Basis::Monomial);
    for mu in partitions_of(lambda.size()) {
        let k = kostka(lambda, &mu);
        if k > 0 {
            out.insert_add(mu, RatFunc::from_rat(rat(k as i64, 1)));
        }
    }
    out
}

#[test]
fn schur_in_p_small() {
    let f = schur_in_p(&p(&[1]), CAP).unwrap();
    assert_eq!(f, SymFunc::basis_element(Basis::PowerSum, p(&[1])));

    // s_2 = (p_11 + p_2)/2
    let f = schur_in_p(&p(&[2]), CAP).unwrap();
    assert_eq!(f.coeff(&p(&[1, 1])), RatFunc::from_rat(rat(1, 2)));
    assert_eq!(f.coeff(&p(&[2])), RatFunc::from_rat(rat(1, 2)));

    // s_21 = (p_111 - p_3)/3
    let f = schur_in_p(&p(&[2, 1]), CAP).unwrap();
    assert_eq!(f.coeff(&p(&[1, 1, 1])), RatFunc::from_rat(rat(1, 3)));
    assert_eq!(f.coeff(&p(&[3])), RatFunc::from_rat(rat(-1, 3)));
    assert_eq!(f.num_terms(), 2);
}

#[test]
fn schur_expansion_matches_tableau_oracle() {
    for n in 1..=5u32 {
        for lambda in partitions_of(n) {
            let via_p = to_basis(&schur_in_p(&lambda, CAP).unwrap(), Basis::Monomial, CAP).unwrap();
            let oracle = schur_in_m_oracle(&lambda);
            assert!(
                sym_eq(&via_p, &oracle, CAP).unwrap(),
                "mismatch for {lambda}"
            );
        }
    }
}

#[test]
fn mult_basics() {
    let p1 = SymFunc::basis_element(Basis::PowerSum, p(&[1]));
    let got = mult(&p1, &p1, CAP).unwrap();
    assert_eq!(got, SymFunc::basis_element(Basis::PowerSum, p(&[1, 1])));

    let s1 = SymFunc::basis_element(Basis::Schur, p(&[1]));
    let got = mult(&s1, &s1, CAP).unwrap();
    let expect = SymFunc::basis_element(Basis::Schur, p(&[2]))
        .add(&SymFunc::basis_element(Basis::Schur, p(&[1, 1])));
    assert_eq!(got, expect);

    let f = SymFunc::basis_element(Basis::Schur, p(&[2, 2, 1]));
    assert!(sym_eq(&mult(&f, &SymFunc::one(Basis::Schur), CAP).unwrap(), &f, CAP).unwrap());
}

#[test]
fn p_mult_schur_examples() {
    assert_eq!(
        p_mult_schur(1, &Partition::empty()),
        SymFunc::basis_element(Basis::Schur, p(&[1]))
    );

    // p_2 s_1 = s_3 - s_111, against the ring-product oracle.
    let got = p_mult_schur(2, &p(&[1]));
    let expect = SymFunc::basis_element(Basis::Schur, p(&[3]))
        .sub(&SymFunc::basis_element(Basis::Schur, p(&[1, 1, 1])));
    assert_eq!(got, expect);
    let oracle = mult(
        &SymFunc::basis_element(Basis::PowerSum, p(&[2])),
        &schur_in_p(&p(&[1]), CAP).unwrap(),
        CAP,
    )
    .unwrap();
    assert!(sym_eq(&got, &oracle, CAP).unwrap());

    // p_3 = s_3 - s_21 + s_111.
    let got = p_mult_schur(3, &Partition::empty());
    let expect = SymFunc::basis_element(Basis::Schur, p(&[3]))
        .sub(&SymFunc::basis_element(Basis::Schur, p(&[2, 1])))
        .add(&SymFunc::basis_element(Basis::Schur, p(&[1, 1, 1])));
    assert_eq!(got, expect);
}

#[test]
fn murnaghan_nakayama_consistency() {
    for n in 1..=4u32 {
        for size in 0..=4u32 {
            for lambda in partitions_of(size) {
                let got = p_mult_schur(n, &lambda);
                let oracle = mult(
                    &SymFunc::basis_element(Basis::PowerSum, p(&[n])),
                    &SymFunc::basis_element(Basis::Schur, lambda.clone()),
                    CAP,
                )
                .unwrap();
                assert!(sym_eq(&got, &oracle, CAP).unwrap(), "p_{n} * s_{lambda}");
            }
        }
    }
}

#[test]
fn macdonald_p2() {
    // P_2 = m_2 + (1+q)(1-t)/(1-qt) m_11, verified against Gram-Schmidt and
    // orthogonality.
    let f = macdonald_P(&p(&[2]), CAP).unwrap();
    assert_eq!(f.coeff(&p(&[2])), RatFunc::one());
    let q = RatFunc::var(Var::Q);
    let t = RatFunc::var(Var::T);
    let c = RatFunc::one()
        .add(&q)
        .mul(&RatFunc::one().sub(&t))
        .div(&RatFunc::one().sub(&q.mul(&t)))
        .unwrap();
    assert!(rf_eq(&f.coeff(&p(&[1, 1])), &c));

    // Orthogonal to P_11 under the inner product.
    let p11 = macdonald_P(&p(&[1, 1]), CAP).unwrap();
    let pairing = inner_product(&f, &p11).unwrap();
    assert!(pairing.is_zero() || rf_eq(&pairing, &RatFunc::zero()));
}

#[test]
fn macdonald_monic_single_cell() {
    let f = macdonald_P(&p(&[1]), CAP).unwrap();
    assert_eq!(f, SymFunc::basis_element(Basis::Monomial, p(&[1])));
}

#[test]
fn macdonald_qt_specializes_to_schur() {
    // At q = t the Macdonald polynomials become Schur functions; compare
    // with the tableau-count oracle.
    let bind = BTreeMap::from([(Var::Q, crate::coeffring::LaurentPoly::var(Var::T))]);
    for n in 1..=5u32 {
        for lambda in partitions_of(n) {
            let mac = macdonald_P(&lambda, CAP).unwrap();
            let spec = mac.specialize(&bind).unwrap();
            let oracle = schur_in_m_oracle(&lambda);
            assert!(sym_eq(&spec, &oracle, CAP).unwrap(), "q=t failure at {lambda}");
        }
    }
}

#[test]
fn macdonald_orthogonality_degree4() {
    for n in 1..=4u32 {
        let parts = partitions_of(n);
        for (i, a) in parts.iter().enumerate() {
            for b in parts.iter().skip(i + 1) {
                let pa = macdonald_P(a, CAP).unwrap();
                let pb = macdonald_P(b, CAP).unwrap();
                let pairing = inner_product(&pa, &pb).unwrap();
                assert!(
                    rf_eq(&pairing, &RatFunc::zero()),
                    "<P_{a}, P_{b}> should vanish"
                );
            }
        }
    }
}

#[test]
fn principal_spec_examples() {
    let p1 = SymFunc::basis_element(Basis::PowerSum, p(&[1]));
    let got = principal_spec(&p1, 2).unwrap();
    let expect = RatFunc::one().add(&RatFunc::var(Var::T));
    assert!(rf_eq(&got, &expect));

    let s111 = SymFunc::basis_element(Basis::Schur, p(&[1, 1, 1]));
    assert!(principal_spec(&s111, 2).unwrap().is_zero());

    let mac2 = SymFunc::basis_element(Basis::Macdonald, p(&[2]));
    assert!(rf_eq(&principal_spec(&mac2, 1).unwrap(), &RatFunc::one()));
}

#[test]
fn ev_h_examples() {
    let empty = SymFunc::one(Basis::Schur);
    assert!(rf_eq(&ev_H(&empty).unwrap(), &RatFunc::one()));

    // ev(s_1) = (v^-1 - v)/(s - s^-1).
    let s1 = SymFunc::basis_element(Basis::Schur, p(&[1]));
    let num = RatFunc::var_pow(Var::V, -1).sub(&RatFunc::var(Var::V));
    let den = RatFunc::var(Var::S).sub(&RatFunc::var_pow(Var::S, -1));
    let expect = num.div(&den).unwrap();
    assert!(rf_eq(&ev_H(&s1).unwrap(), &expect));

    // ev(p_2) = (v^-2 - v^2)/(s^2 - s^-2).
    let p2 = to_basis(
        &SymFunc::basis_element(Basis::PowerSum, p(&[2])),
        Basis::Schur,
        CAP,
    )
    .unwrap();
    let num = RatFunc::var_pow(Var::V, -2).sub(&RatFunc::var_pow(Var::V, 2));
    let den = RatFunc::var_pow(Var::S, 2).sub(&RatFunc::var_pow(Var::S, -2));
    let expect = num.div(&den).unwrap();
    assert!(rf_eq(&ev_H(&p2).unwrap(), &expect));
}

#[test]
fn ev_e_examples() {
    let empty = SymFunc::one(Basis::Macdonald);
    assert!(rf_eq(&ev_E(&empty).unwrap(), &RatFunc::one()));

    // ev(P_1) = (1 - u)/(1 - t).
    let p1 = SymFunc::basis_element(Basis::Macdonald, p(&[1]));
    let expect = RatFunc::one()
        .sub(&RatFunc::var(Var::U))
        .div(&RatFunc::one().sub(&RatFunc::var(Var::T)))
        .unwrap();
    assert!(rf_eq(&ev_E(&p1).unwrap(), &expect));

    // The u = t^3 specialization is the principal specialization at N = 3.
    let bind = BTreeMap::from([(
        Var::U,
        crate::coeffring::LaurentPoly::monomial(BigRational::from_integer(1.into()), Var::T, 3),
    )]);
    let got = ev_E(&p1).unwrap().specialize(&bind).unwrap();
    let oracle = principal_spec(&p1, 3).unwrap();
    assert!(rf_eq(&got, &oracle));
}

#[test]
fn ev_e_principal_specialization_scan() {
    for n in 1..=4u32 {
        for lambda in partitions_of(n) {
            let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
            let ev = ev_E(&f).unwrap();
            for nvars in 1..=3u32 {
                let bind = BTreeMap::from([(
                    Var::U,
                    crate::coeffring::LaurentPoly::monomial(
                        BigRational::from_integer(1.into()),
                        Var::T,
                        nvars as i64,
                    ),
                )]);
                let got = ev.specialize(&bind).unwrap();
                let oracle = principal_spec(&f, nvars).unwrap();
                assert!(
                    rf_eq(&got, &oracle),
                    "u = t^{nvars} mismatch for {lambda}"
                );
            }
        }
    }
}

#[test]
fn to_basis_round_trips() {
    let p1 = SymFunc::basis_element(Basis::PowerSum, p(&[1]));
    assert_eq!(
        to_basis(&p1, Basis::Schur, CAP).unwrap(),
        SymFunc::basis_element(Basis::Schur, p(&[1]))
    );

    // s_2 in the monomial basis: m_2 + m_11.
    let s2 = SymFunc::basis_element(Basis::Schur, p(&[2]));
    let got = to_basis(&s2, Basis::Monomial, CAP).unwrap();
    let expect = SymFunc::basis_element(Basis::Monomial, p(&[2]))
        .add(&SymFunc::basis_element(Basis::Monomial, p(&[1, 1])));
    assert!(sym_eq(&got, &expect, CAP).unwrap());

    // Round trip through the power-sum basis preserves P_21.
    let mac = SymFunc::basis_element(Basis::Macdonald, p(&[2, 1]));
    let round = to_basis(&to_basis(&mac, Basis::PowerSum, CAP).unwrap(), Basis::Macdonald, CAP)
        .unwrap();
    assert!(sym_eq(&mac, &round, CAP).unwrap());
    for (l, c) in round.terms() {
        if l == &p(&[2, 1]) {
            assert!(rf_eq(c, &RatFunc::one()));
        } else {
            assert!(c.is_zero() || rf_eq(c, &RatFunc::zero()));
        }
    }
}

#[test]
fn degree_cap_guard() {
    let lambda = p(&[5, 4, 3, 1]);
    assert!(matches!(
        schur_in_p(&lambda, 8),
        Err(crate::error::Error::DegreeCapExceeded { needed: 13, cap: 8 })
    ));
    let f = SymFunc::basis_element(Basis::PowerSum, p(&[7]));
    assert!(mult(&f, &f, 13).is_err());
    assert!(mult(&f, &f, 14).is_ok());
}

#[test]
fn conversion_round_trip_scan() {
    // m <-> p and s <-> p are mutually inverse through degree 6.
    for n in 1..=6u32 {
        for lambda in partitions_of(n) {
            let m = SymFunc::basis_element(Basis::Monomial, lambda.clone());
            let back = to_basis(&to_basis(&m, Basis::PowerSum, CAP).unwrap(), Basis::Monomial, CAP)
                .unwrap();
            assert_eq!(m, back, "m round trip at {lambda}");

            let s = SymFunc::basis_element(Basis::Schur, lambda.clone());
            let back = to_basis(&to_basis(&s, Basis::PowerSum, CAP).unwrap(), Basis::Schur, CAP)
                .unwrap();
            assert!(sym_eq(&s, &back, CAP).unwrap(), "s round trip at {lambda}");
        }
    }
}

#[test]
fn symfunc_json_round_trip() {
    let f = macdonald_P(&p(&[2, 1]), CAP).unwrap();
    let text = serde_json::to_string(&f).unwrap();
    assert!(text.contains("\"basis\":\"m\""));
    let back: SymFunc = serde_json::from_str(&text).unwrap();
    assert_eq!(f, back);
}

#[test]
fn arith_dispatch_still_exact() {
    // Spot check that rf_arith composes with symmetric-function coefficients.
    let a = ev_H(&SymFunc::basis_element(Basis::Schur, p(&[1]))).unwrap();
    let b = rf_arith(&a, &a, ArithOp::Div).unwrap();
    assert!(rf_eq(&b, &RatFunc::one()));
}
