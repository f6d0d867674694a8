//! The module of the annulus in its eigenvector basis `Q(lambda, mu)`, the
//! full torus-generator action, the determinant realization inside the
//! tensor square of symmetric functions, and the Homflypt cabling pipeline.
//!
//! The action formulas: `P(m,0)` is diagonal with eigenvalue
//! `s_coeff(lambda, mu, m)`; `P(0,n)` adds signed `n`-ribbons to `lambda`
//! and removes them from `mu`; for `m, n` both nonzero, `P(m,n)` acts by
//! `{m}/{mn}` times `b^-`-weighted ribbon sums. Negative `n` removes from
//! `lambda` and adds to `mu`, with `ht` read from the honest skew shape and
//! `b(m, alpha-lambda) = -b(m, lambda-alpha)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeffring::{brace, LaurentPoly, RatFunc, Var};
use crate::error::{Error, Result};
use crate::knots::NewtonPairs;
use crate::partitions::{ribbons_add, ribbons_remove, BorderStrip, Partition};
use crate::symfunc::{self, Basis, SymFunc};
use crate::toralg::ToralVector;

/// An element of the annulus module: a linear combination of basis symbols
/// `Q(lambda, mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkeinElement {
    terms: BTreeMap<(Partition, Partition), RatFunc>,
}

impl SkeinElement {
    pub fn zero() -> Self {
        SkeinElement::default()
    }

    /// The identity element `Q(∅, ∅)`.
    pub fn unit() -> Self {
        Self::basis(Partition::empty(), Partition::empty())
    }

    pub fn basis(lambda: Partition, mu: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((lambda, mu), RatFunc::one());
        SkeinElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition, mu: &Partition) -> RatFunc {
        self.terms
            .get(&(lambda.clone(), mu.clone()))
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    fn insert_add(&mut self, key: (Partition, Partition), coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SkeinElement {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Z-degrees `|lambda| - |mu|` present in the element.
    pub fn degrees(&self) -> std::collections::BTreeSet<i64> {
        self.terms
            .keys()
            .map(|(l, m)| l.size() as i64 - m.size() as i64)
            .collect()
    }

    /// Embed a Schur-basis symmetric function as `sum c Q(lambda, ∅)`.
    pub fn from_cplus(f: &SymFunc) -> Result<Self> {
        let fs = symfunc::to_basis(f, Basis::Schur, u32::MAX)?;
        let mut out = SkeinElement::zero();
        for (l, c) in fs.terms() {
            out.insert_add((l.clone(), Partition::empty()), c.clone());
        }
        Ok(out)
    }

    /// Extract the symmetric function when every term has `mu = ∅`.
    pub fn to_cplus(&self) -> Option<SymFunc> {
        let mut terms = BTreeMap::new();
        for ((l, m), c) in &self.terms {
            if !m.is_empty() {
                return None;
            }
            terms.insert(l.clone(), c.clone());
        }
        Some(SymFunc::from_terms(Basis::Schur, terms))
    }
}

/// The meridian eigenvalue
/// `s_coeff(l, u, m) = {m}(v^-m C_l(s^2m) - v^m C_u(s^-2m)) + (v^-m - v^m)/(s^m - s^-m)`.
pub fn s_coeff(lambda: &Partition, mu: &Partition, m: i64) -> Result<RatFunc> {
    if m == 0 {
        return Err(Error::ZeroIndex);
    }
    let c_lambda = content_poly(lambda, 2 * m);
    let c_mu = content_poly(mu, -2 * m);
    let vm = RatFunc::var_pow(Var::V, -m);
    let vp = RatFunc::var_pow(Var::V, m);
    let diag = brace(m).mul(&vm.mul(&c_lambda).sub(&vp.mul(&c_mu)));
    let constant = vm.sub(&vp).div(&brace(m))?;
    Ok(diag.add(&constant))
}

/// `C_lambda(s^e) = sum over cells of s^{e * content}`.
fn content_poly(lambda: &Partition, e: i64) -> RatFunc {
    let mut p = LaurentPoly::zero();
    for (content, mult) in lambda.content_multiset() {
        p = p.add(&LaurentPoly::monomial(
            BigRational::from_integer(BigInt::from(mult)),
            Var::S,
            e * content,
        ));
    }
    RatFunc::from_poly(p)
}

/// `b(m, strip) = v^-m C_strip(s^2m)`; strip contents are the interval
/// `[min_content, min_content + length)`.
fn b_coeff(m: i64, strip: &BorderStrip) -> RatFunc {
    let mut p = LaurentPoly::zero();
    for k in 0..strip.length as i64 {
        p = p.add(&LaurentPoly::monomial(
            BigRational::from_integer(1.into()),
            Var::S,
            2 * m * (strip.min_content + k),
        ));
    }
    RatFunc::var_pow(Var::V, -m).mul(&RatFunc::from_poly(p))
}

/// `b^-(m, strip) = (-1)^{ht(strip)} b(m, strip)`.
fn b_minus(m: i64, strip: &BorderStrip) -> RatFunc {
    b_coeff(m, strip).scale(&BigRational::from_integer(BigInt::from(strip.sign())))
}

/// Action of the torus generator `P(x)` on the module. With `twisted` set,
/// the generator is first rotated a quarter turn, `(m, n) -> (-n, m)`, which
/// makes the generators of nonnegative horizontal degree preserve the
/// `mu = ∅` subspace.
pub fn act_p(x: ToralVector, e: &SkeinElement, twisted: bool) -> Result<SkeinElement> {
    let (m, n) = if twisted { (-x.n, x.m) } else { (x.m, x.n) };
    if m == 0 && n == 0 {
        return Err(Error::ZeroVector);
    }
    let mut out = SkeinElement::zero();
    for ((lambda, mu), coeff) in &e.terms {
        if n == 0 {
            out.insert_add(
                (lambda.clone(), mu.clone()),
                coeff.mul(&s_coeff(lambda, mu, m)?),
            );
        } else if m == 0 {
            act_vertical(n, lambda, mu, coeff, &mut out);
        } else {
            act_skew(m, n, lambda, mu, coeff, &mut out)?;
        }
    }
    Ok(out)
}

/// `P(0, n)`: signed ribbon sums, adding to `lambda` and removing from `mu`
/// for `n > 0`, the reverse for `n < 0`.
fn act_vertical(
    n: i64,
    lambda: &Partition,
    mu: &Partition,
    coeff: &RatFunc,
    out: &mut SkeinElement,
) {
    let len = n.unsigned_abs() as u32;
    let sign_coeff =
        |strip: &BorderStrip| coeff.scale(&BigRational::from_integer(BigInt::from(strip.sign())));
    if n > 0 {
        for (alpha, strip) in ribbons_add(lambda, len) {
            out.insert_add((alpha, mu.clone()), sign_coeff(&strip));
        }
        for (beta, strip) in ribbons_remove(mu, len) {
            out.insert_add((lambda.clone(), beta), sign_coeff(&strip));
        }
    } else {
        for (alpha, strip) in ribbons_remove(lambda, len) {
            out.insert_add((alpha, mu.clone()), sign_coeff(&strip));
        }
        for (beta, strip) in ribbons_add(mu, len) {
            out.insert_add((lambda.clone(), beta), sign_coeff(&strip));
        }
    }
}

/// `P(m, n)` with `m, n` both nonzero: `{m}/{mn}` times `b^-`-weighted
/// ribbon sums.
fn act_skew(
    m: i64,
    n: i64,
    lambda: &Partition,
    mu: &Partition,
    coeff: &RatFunc,
    out: &mut SkeinElement,
) -> Result<()> {
    let len = n.unsigned_abs() as u32;
    let pre = brace(m).div(&brace(m * n))?.mul(coeff);
    if n > 0 {
        for (alpha, strip) in ribbons_add(lambda, len) {
            out.insert_add((alpha, mu.clone()), pre.mul(&b_minus(m, &strip)));
        }
        for (beta, strip) in ribbons_remove(mu, len) {
            out.insert_add((lambda.clone(), beta), pre.mul(&b_minus(-m, &strip)));
        }
    } else {
        for (alpha, strip) in ribbons_remove(lambda, len) {
            out.insert_add((alpha, mu.clone()), pre.mul(&b_minus(m, &strip).neg()));
        }
        for (beta, strip) in ribbons_add(mu, len) {
            out.insert_add((lambda.clone(), beta), pre.mul(&b_minus(-m, &strip).neg()));
        }
    }
    Ok(())
}

/// Cabling coordinates to acting vector. The meridian coordinate flips sign
/// so that a positive cabling twist carries the positive-curl framing
/// monomial: the `(1,1)` cable of the 0-framed unknot evaluates to `v^-1`
/// times the unknot.
fn cable_vector(k: u32, m: i64, n: i64) -> ToralVector {
    ToralVector {
        m: k as i64 * m,
        n: -(k as i64) * n,
    }
}

/// One cabling step: expand in power sums, send `p_k` to the twisted action
/// of the generator along `k * (m, n)`, and apply to the identity element.
/// Requires `gcd(m, n) = 1` and `m > 0`; the result stays in the Schur-basis
/// image of the annulus subalgebra.
pub fn cable_step_h(m: i64, n: i64, f: &SymFunc, cap: u32) -> Result<SymFunc> {
    use num_integer::Integer;
    if m < 1 {
        return Err(Error::NonpositiveM(m));
    }
    if m.gcd(&n.abs()) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let needed = f.max_degree() * m as u32;
    if needed > cap {
        return Err(Error::DegreeCapExceeded { needed, cap });
    }
    let fp = symfunc::to_basis(f, Basis::PowerSum, cap)?;
    let mut acc = SkeinElement::zero();
    for (rho, c) in fp.terms() {
        let mut state = SkeinElement::unit();
        for &k in rho.parts() {
            state = act_p(cable_vector(k, m, n), &state, true)?;
        }
        acc = acc.add(&state.scale(c));
    }
    acc.to_cplus()
        .ok_or_else(|| Error::Parse("cabling image left the Schur subspace".into()))
}

/// The framed colored Homflypt invariant of the iterated cable described by
/// the Newton pairs, colored by `lambda`. The innermost cable is the last
/// pair.
pub fn j_h(pairs: &NewtonPairs, lambda: &Partition, cap: u32) -> Result<RatFunc> {
    let needed = lambda.size() * pairs.degree_factor();
    if needed > cap {
        return Err(Error::DegreeCapExceeded { needed, cap });
    }
    let mut state = SymFunc::basis_element(Basis::Schur, lambda.clone());
    for &(m, n) in pairs.pairs().iter().rev() {
        state = cable_step_h(m, n, &state, cap)?;
    }
    symfunc::ev_H(&state)
}

// ---------------------------------------------------------------------------
// Determinant realization
// ---------------------------------------------------------------------------

/// An element of the tensor square of the ring of symmetric functions, in
/// the Schur ⊗ Schur basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<(Partition, Partition), RatFunc>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Partition::empty(), Partition::empty()), RatFunc::one());
        TensorElem { terms }
    }

    pub fn schur_pair(a: Partition, b: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((a, b), RatFunc::one());
        TensorElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &Partition, b: &Partition) -> RatFunc {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    fn insert_add(&mut self, key: (Partition, Partition), coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorElem {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Factorwise product.
    pub fn mul(&self, other: &Self, cap: u32) -> Result<Self> {
        let mut out = TensorElem::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let left = symfunc::mult(
                    &SymFunc::basis_element(Basis::Schur, a1.clone()),
                    &SymFunc::basis_element(Basis::Schur, a2.clone()),
                    cap,
                )?;
                let right = symfunc::mult(
                    &SymFunc::basis_element(Basis::Schur, b1.clone()),
                    &SymFunc::basis_element(Basis::Schur, b2.clone()),
                    cap,
                )?;
                let c = c1.mul(c2);
                for (la, ca) in left.terms() {
                    for (lb, cb) in right.terms() {
                        out.insert_add((la.clone(), lb.clone()), c.mul(ca).mul(cb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Swap the tensor factors.
    pub fn swap(&self) -> Self {
        TensorElem {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn max_bidegree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| a.size() + b.size())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy)]
enum DetEntry {
    Zero,
    One,
    H(u32),
    HStar(u32),
}

/// The Jacobi-Trudi style determinant realizing `Q(lambda, mu)` in the
/// tensor square. Rows for the parts of `mu` carry starred complete
/// homogeneous entries with indices decreasing along the row; rows for the
/// parts of `lambda` carry plain entries with indices increasing. Index 0 is
/// the identity and negative indices vanish.
pub fn build_q(lambda: &Partition, mu: &Partition, cap: u32) -> Result<TensorElem> {
    let needed = lambda.size() + mu.size();
    if needed > cap {
        return Err(Error::DegreeCapExceeded { needed, cap });
    }
    let p = mu.len();
    let l = lambda.len();
    let n = p + l;
    if n == 0 {
        return Ok(TensorElem::one());
    }
    let entry = |i: usize, j: usize| -> DetEntry {
        // 1-based row and column.
        let idx = if i <= p {
            mu.part(p + 1 - i) as i64 - j as i64 + i as i64
        } else {
            lambda.part(i - p) as i64 + j as i64 - i as i64
        };
        match idx {
            x if x < 0 => DetEntry::Zero,
            0 => DetEntry::One,
            x if i <= p => DetEntry::HStar(x as u32),
            x => DetEntry::H(x as u32),
        }
    };
    let matrix: Vec<Vec<DetEntry>> = (1..=n)
        .map(|i| (1..=n).map(|j| entry(i, j)).collect())
        .collect();
    det_expand(&matrix, &(0..n).collect::<Vec<_>>(), cap)
}

fn det_entry_elem(e: DetEntry) -> Option<TensorElem> {
    match e {
        DetEntry::Zero => None,
        DetEntry::One => Some(TensorElem::one()),
        DetEntry::H(k) => Some(TensorElem::schur_pair(
            Partition::new(vec![k]),
            Partition::empty(),
        )),
        DetEntry::HStar(k) => Some(TensorElem::schur_pair(
            Partition::empty(),
            Partition::new(vec![k]),
        )),
    }
}

/// Laplace expansion along the first remaining row.
fn det_expand(matrix: &[Vec<DetEntry>], cols: &[usize], cap: u32) -> Result<TensorElem> {
    if cols.is_empty() {
        return Ok(TensorElem::one());
    }
    let row = matrix.len() - cols.len();
    let mut acc = TensorElem::zero();
    for (pos, &j) in cols.iter().enumerate() {
        let Some(e) = det_entry_elem(matrix[row][j]) else {
            continue;
        };
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        let minor = det_expand(matrix, &rest, cap)?;
        let signed = e.mul(&minor, cap)?;
        if pos % 2 == 0 {
            acc = acc.add(&signed);
        } else {
            acc = acc.sub(&signed);
        }
    }
    Ok(acc)
}

/// Expand a tensor element in the `Q(lambda, mu)` basis by greedy
/// subtraction of determinant representatives, highest total degree first.
pub fn q_expand(elem: &TensorElem, cap: u32) -> Result<SkeinElement> {
    let mut rem = elem.clone();
    let mut out = SkeinElement::zero();
    let mut memo: HashMap<(Partition, Partition), TensorElem> = HashMap::new();
    while !rem.is_zero() {
        let (key, coeff) = rem
            .terms
            .iter()
            .max_by_key(|((a, b), _)| (a.size() + b.size(), a.clone(), b.clone()))
            .map(|(k, c)| (k.clone(), c.clone()))
            .expect("nonzero element has terms");
        let q = match memo.get(&key) {
            Some(q) => q.clone(),
            None => {
                let q = build_q(&key.0, &key.1, cap)?;
                memo.insert(key.clone(), q.clone());
                q
            }
        };
        rem = rem.sub(&q.scale(&coeff));
        out.insert_add(key, coeff);
    }
    Ok(out)
}

impl fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((l, m), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*Q[{l},{m}]")?;
        }
        Ok(())
    }
}

impl Serialize for SkeinElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermRepr<'a> {
            lambda: &'a [u32],
            mu: &'a [u32],
            coeff: &'a RatFunc,
        }
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|((l, m), c)| TermRepr {
                lambda: l.parts(),
                mu: m.parts(),
                coeff: c,
            })
            .collect();
        let mut st = serializer.serialize_struct("SkeinElement", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests;
