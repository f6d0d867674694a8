//! The torus algebra on generators `P(m,n)`, `(m,n) != (0,0)`, presented by
//! the commutation relation `[P_x, P_y] = {det[x y]} P_{x+y}`, as a PBW
//! normal-ordering rewrite system.
//!
//! Monomials are words of generators sorted by the angle of the vector in
//! `[0, 2*pi)` measured from the positive horizontal axis; equal angles are
//! sorted by increasing gcd (colinear generators commute). An out-of-order
//! adjacent pair rewrites by
//!
//! ```text
//! P_a P_b = x^{2k} P_b P_a + x^k {k} P_{a+b},   k = det[a b]
//! ```
//!
//! where `x` is the adapted skein parameter; `x = 1` is the plain algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::coeffring::{brace, RatFunc};
use crate::error::{Error, Result};

/// Rewriting guard: words longer than this are refused.
pub const WORD_CAP: usize = 12;

/// A nonzero vector labeling a torus generator. The derived ordering is the
/// plain lexicographic one used for canonical storage; PBW position is
/// [`ToralVector::pbw_cmp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ToralVector {
    pub m: i64,
    pub n: i64,
}

impl ToralVector {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::ZeroVector);
        }
        Ok(ToralVector { m, n })
    }

    /// gcd of the absolute coordinates; at least 1.
    pub fn d(&self) -> i64 {
        self.m.abs().gcd(&self.n.abs()).max(1)
    }

    pub fn add(&self, other: &ToralVector) -> Option<ToralVector> {
        ToralVector::new(self.m + other.m, self.n + other.n).ok()
    }

    /// `det[self other]`, the signed crossing number.
    pub fn det(&self, other: &ToralVector) -> i64 {
        self.m * other.n - self.n * other.m
    }

    /// 0 for angles in `[0, pi)`, 1 for `[pi, 2pi)`.
    fn half(&self) -> u8 {
        if self.n > 0 || (self.n == 0 && self.m > 0) {
            0
        } else {
            1
        }
    }

    /// PBW position: increasing angle, ties broken by increasing gcd.
    pub fn pbw_cmp(&self, other: &ToralVector) -> Ordering {
        self.half().cmp(&other.half()).then_with(|| {
            let cross = self.det(other);
            if cross > 0 {
                Ordering::Less
            } else if cross < 0 {
                Ordering::Greater
            } else {
                self.d().cmp(&other.d())
            }
        })
    }
}

impl fmt::Display for ToralVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.m, self.n)
    }
}

type Word = Vec<ToralVector>;

fn word_degree(word: &[ToralVector]) -> (i64, i64) {
    word.iter().fold((0, 0), |(m, n), v| (m + v.m, n + v.n))
}

/// An element of the algebra: a linear combination of PBW-ordered words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ToralElement {
    terms: BTreeMap<Word, RatFunc>,
}

impl ToralElement {
    pub fn zero() -> Self {
        ToralElement::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), RatFunc::one());
        ToralElement { terms }
    }

    /// A single generator.
    pub fn generator(v: ToralVector) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![v], RatFunc::one());
        ToralElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[ToralVector]) -> RatFunc {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    fn insert_add(&mut self, word: Word, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ToralElement {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// The set of Z^2 degrees carried by the element's monomials.
    pub fn degrees(&self) -> std::collections::BTreeSet<(i64, i64)> {
        self.terms.keys().map(|w| word_degree(w)).collect()
    }

    /// Product with re-normal-ordering at `x_param = 1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_x(other, &RatFunc::one())
    }

    /// Product with re-normal-ordering at the given `x_param`.
    pub fn mul_x(&self, other: &Self, x_param: &RatFunc) -> Result<Self> {
        let mut out = ToralElement::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut word = wa.clone();
                word.extend_from_slice(wb);
                reorder_into(&word, &ca.mul(cb), x_param, &mut out)?;
            }
        }
        Ok(out)
    }
}

/// Canonical PBW form of an unordered product of generators, at `x_param`
/// (pass `RatFunc::one()` for the plain algebra).
pub fn normal_order(word: &[ToralVector], x_param: &RatFunc) -> Result<ToralElement> {
    let mut out = ToralElement::zero();
    reorder_into(word, &RatFunc::one(), x_param, &mut out)?;
    Ok(out)
}

fn reorder_into(
    word: &[ToralVector],
    coeff: &RatFunc,
    x_param: &RatFunc,
    acc: &mut ToralElement,
) -> Result<()> {
    if word.len() > WORD_CAP {
        return Err(Error::WordTooLong(word.len()));
    }
    if x_param.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let x_is_one = x_param.is_one();
    let mut stack: Vec<(Word, RatFunc)> = vec![(word.to_vec(), coeff.clone())];
    while let Some((w, c)) = stack.pop() {
        match w
            .windows(2)
            .position(|p| p[0].pbw_cmp(&p[1]) == Ordering::Greater)
        {
            None => acc.insert_add(w, c),
            Some(i) => {
                let a = w[i];
                let b = w[i + 1];
                let k = a.det(&b);
                // P_a P_b = x^{2k} P_b P_a + x^k {k} P_{a+b}
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                if x_is_one || k == 0 {
                    stack.push((swapped, c.clone()));
                } else {
                    stack.push((swapped, c.mul(&x_param.pow(2 * k)?)));
                }
                if k != 0 {
                    let sum = a.add(&b).expect("k != 0 implies a + b != 0");
                    let mut combined = Vec::with_capacity(w.len() - 1);
                    combined.extend_from_slice(&w[..i]);
                    combined.push(sum);
                    combined.extend_from_slice(&w[i + 2..]);
                    let extra = if x_is_one {
                        c.mul(&brace(k))
                    } else {
                        c.mul(&x_param.pow(k)?).mul(&brace(k))
                    };
                    stack.push((combined, extra));
                }
            }
        }
    }
    Ok(())
}

/// Apply an integer matrix of determinant +-1 to the generators. A matrix of
/// determinant -1 acts as an anti-automorphism: each word is reversed before
/// re-normal-ordering.
pub fn gl2_act(gamma: &[[i64; 2]; 2], e: &ToralElement) -> Result<ToralElement> {
    gl2_act_x(gamma, e, &RatFunc::one())
}

pub fn gl2_act_x(
    gamma: &[[i64; 2]; 2],
    e: &ToralElement,
    x_param: &RatFunc,
) -> Result<ToralElement> {
    let det = gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0];
    if det != 1 && det != -1 {
        return Err(Error::NotUnimodular);
    }
    let mut out = ToralElement::zero();
    for (w, c) in &e.terms {
        let mut mapped: Word = w
            .iter()
            .map(|v| ToralVector {
                m: gamma[0][0] * v.m + gamma[0][1] * v.n,
                n: gamma[1][0] * v.m + gamma[1][1] * v.n,
            })
            .collect();
        if det == -1 {
            mapped.reverse();
        }
        reorder_into(&mapped, c, x_param, &mut out)?;
    }
    Ok(out)
}

/// `normal_order(ab - ba)` at `x_param = 1`.
pub fn commutator(a: &ToralElement, b: &ToralElement) -> Result<ToralElement> {
    Ok(a.mul(b)?.sub(&b.mul(a)?))
}

impl fmt::Display for ToralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                let word = w
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("*");
                write!(f, "({c})*{word}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for ToralElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermRepr<'a> {
            monomial: Vec<[i64; 2]>,
            coeff: &'a RatFunc,
        }
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(w, c)| TermRepr {
                monomial: w.iter().map(|v| [v.m, v.n]).collect(),
                coeff: c,
            })
            .collect();
        let mut st = serializer.serialize_struct("ToralElement", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{rf_eq, Var};

    fn v(m: i64, n: i64) -> ToralVector {
        ToralVector::new(m, n).unwrap()
    }

    fn one() -> RatFunc {
        RatFunc::one()
    }

    #[test]
    fn base_relation_from_switch() {
        // P(0,1) P(1,0) = P(1,0) P(0,1) - {1} P(1,1).
        let e = normal_order(&[v(0, 1), v(1, 0)], &one()).unwrap();
        assert_eq!(e.coeff(&[v(1, 0), v(0, 1)]), RatFunc::one());
        assert!(rf_eq(&e.coeff(&[v(1, 1)]), &brace(1).neg()));
        assert_eq!(e.terms().count(), 2);
    }

    #[test]
    fn colinear_generators_commute() {
        let e = normal_order(&[v(2, 0), v(4, 0)], &one()).unwrap();
        assert_eq!(e.coeff(&[v(2, 0), v(4, 0)]), RatFunc::one());
        assert_eq!(e.terms().count(), 1);
        // Reversed input gives the same canonical form.
        let r = normal_order(&[v(4, 0), v(2, 0)], &one()).unwrap();
        assert_eq!(e, r);
    }

    #[test]
    fn vertical_horizontal_cross_term() {
        // [P(0,-1), P(m,1)] = {m} P(m,0).
        for m in 1..=3i64 {
            let a = ToralElement::generator(v(0, -1));
            let b = ToralElement::generator(v(m, 1));
            let c = commutator(&a, &b).unwrap();
            assert!(rf_eq(&c.coeff(&[v(m, 0)]), &brace(m)), "m = {m}");
            assert_eq!(c.terms().count(), 1);
        }
    }

    #[test]
    fn commutator_examples() {
        let c = commutator(
            &ToralElement::generator(v(1, 0)),
            &ToralElement::generator(v(0, 2)),
        )
        .unwrap();
        assert!(rf_eq(&c.coeff(&[v(1, 2)]), &brace(2)));
        assert_eq!(c.terms().count(), 1);

        let c = commutator(
            &ToralElement::generator(v(1, 1)),
            &ToralElement::generator(v(2, 2)),
        )
        .unwrap();
        assert!(c.is_zero());

        let c = commutator(
            &ToralElement::generator(v(2, 1)),
            &ToralElement::generator(v(1, 2)),
        )
        .unwrap();
        assert!(rf_eq(&c.coeff(&[v(3, 3)]), &brace(3)));
    }

    #[test]
    fn gl2_identity_and_rotation() {
        let e = normal_order(&[v(1, 0), v(0, 1)], &one()).unwrap();
        let id = [[1, 0], [0, 1]];
        assert_eq!(gl2_act(&id, &e).unwrap(), e);

        let rot = [[0, -1], [1, 0]];
        let g = gl2_act(&rot, &ToralElement::generator(v(1, 0))).unwrap();
        assert_eq!(g, ToralElement::generator(v(0, 1)));
    }

    #[test]
    fn gl2_flip_is_anti_automorphism() {
        // sigma = diag(1,-1): sigma(ab) = sigma(b) sigma(a).
        let sigma = [[1, 0], [0, -1]];
        let a = ToralElement::generator(v(1, 0));
        let b = ToralElement::generator(v(0, 1));
        let ab = a.mul(&b).unwrap();
        let lhs = gl2_act(&sigma, &ab).unwrap();
        let rhs = gl2_act(&sigma, &b)
            .unwrap()
            .mul(&gl2_act(&sigma, &a).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // And it matches the example: sigma of normal_order(P(1,0) P(0,1))
        // equals normal_order(P(0,-1) P(1,0)).
        let direct = normal_order(&[v(0, -1), v(1, 0)], &one()).unwrap();
        assert_eq!(lhs, direct);
    }

    #[test]
    fn not_unimodular_rejected() {
        let twice = [[2, 0], [0, 1]];
        assert_eq!(
            gl2_act(&twice, &ToralElement::one()),
            Err(Error::NotUnimodular)
        );
    }

    #[test]
    fn adapted_relation_symbolic_x() {
        // P_a P_b = x^{2k} P_b P_a + x^k {k} P_{a+b} with k = det[a b].
        let x = RatFunc::var(Var::X);
        let e = normal_order(&[v(0, 1), v(1, 0)], &x).unwrap();
        // k = det[(0,1),(1,0)] = -1.
        assert!(rf_eq(
            &e.coeff(&[v(1, 0), v(0, 1)]),
            &RatFunc::var_pow(Var::X, -2)
        ));
        let expect = RatFunc::var_pow(Var::X, -1).mul(&brace(-1));
        assert!(rf_eq(&e.coeff(&[v(1, 1)]), &expect));
    }

    #[test]
    fn associativity_spot_check() {
        let (a, b, c) = (v(1, 0), v(0, 1), v(-1, 2));
        for x in [RatFunc::one(), RatFunc::var(Var::X)] {
            let ab = normal_order(&[a, b], &x).unwrap();
            let left = ab.mul_x(&ToralElement::generator(c), &x).unwrap();
            let bc = normal_order(&[b, c], &x).unwrap();
            let right = ToralElement::generator(a).mul_x(&bc, &x).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn grading_is_additive() {
        let e = normal_order(&[v(2, -1), v(1, 3), v(0, 1)], &one()).unwrap();
        for (w, _) in e.terms() {
            assert_eq!(word_degree(w), (3, 3));
        }
    }

    #[test]
    fn word_cap_enforced() {
        let word = vec![v(1, 0); WORD_CAP + 1];
        assert_eq!(
            normal_order(&word, &one()),
            Err(Error::WordTooLong(WORD_CAP + 1))
        );
    }

    #[test]
    fn hall_side_bracket_translation() {
        // The renormalized Hall relation coefficient -sign(k) ([k]_s)^2 {1}^2
        // divided by the generator normalization -sign(k){k} reproduces {k}.
        for k in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            let sign = if k > 0 { 1 } else { -1 };
            let bracket_sq = crate::coeffring::bracket(k)
                .mul(&crate::coeffring::bracket(k))
                .mul(&brace(1))
                .mul(&brace(1))
                .scale(&num_rational::BigRational::from_integer((-sign).into()));
            let norm = brace(k).scale(&num_rational::BigRational::from_integer((-sign).into()));
            let got = bracket_sq.div(&norm).unwrap();
            assert!(rf_eq(&got, &brace(k)), "k = {k}");
        }
    }

    #[test]
    fn text_form() {
        let e = normal_order(&[v(2, 1), v(0, 3)], &one()).unwrap();
        assert_eq!(e.to_string(), "(1)*P(2,1)*P(0,3)");
    }
}
