//! The ring of symmetric functions over the rational-function coefficient
//! ring, with power-sum, Schur, monomial and Macdonald bases.
//!
//! Conversions route through the power-sum basis (a free commutative
//! polynomial algebra on `p_1, p_2, ...`), except for the Macdonald basis
//! which is triangular over the monomial basis. The Schur/power-sum bridge
//! is the border-strip (Murnaghan-Nakayama) recursion; the monomial bridge
//! collects sorted exponent vectors degree by degree.

mod macdonald;

pub use macdonald::set_cache_dir;
pub(crate) use macdonald::{cache_dir, inner_product, mac_table, p2m_table};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeffring::{brace, rf_eq, LaurentPoly, RatFunc, Var};
use crate::error::{Error, Result};
use crate::partitions::{cell_stats, partitions_of, ribbons_add, ribbons_remove, Partition};

/// Basis labels for [`SymFunc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// Power sums `p_lambda`.
    PowerSum,
    /// Schur functions `s_lambda`.
    Schur,
    /// Monomial symmetric functions `m_lambda`.
    Monomial,
    /// Macdonald polynomials `P_lambda(q, t)`.
    Macdonald,
}

impl Basis {
    pub fn id(self) -> &'static str {
        match self {
            Basis::PowerSum => "p",
            Basis::Schur => "s",
            Basis::Monomial => "m",
            Basis::Macdonald => "macdonald",
        }
    }

    pub fn from_id(s: &str) -> Option<Basis> {
        match s {
            "p" => Some(Basis::PowerSum),
            "s" => Some(Basis::Schur),
            "m" => Some(Basis::Monomial),
            "macdonald" | "P" => Some(Basis::Macdonald),
            _ => None,
        }
    }
}

/// A finite linear combination of basis-labeled partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, RatFunc>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity (the empty partition).
    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, RatFunc::one());
        SymFunc { basis, terms }
    }

    pub fn from_terms(basis: Basis, terms: BTreeMap<Partition, RatFunc>) -> Self {
        let mut f = SymFunc { basis, terms };
        f.terms.retain(|_, c| !c.is_zero());
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> RatFunc {
        self.terms.get(lambda).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    pub(crate) fn insert_add(&mut self, lambda: Partition, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lambda) {
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
        assert_eq!(self.basis, other.basis, "basis mismatch in add");
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.insert_add(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, k)| (l.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, k)| (l.clone(), k.scale(c)))
                .collect(),
        }
    }

    /// Split into homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, SymFunc> {
        let mut out: BTreeMap<u32, SymFunc> = BTreeMap::new();
        for (l, c) in &self.terms {
            out.entry(l.size())
                .or_insert_with(|| SymFunc::zero(self.basis))
                .insert_add(l.clone(), c.clone());
        }
        out
    }

    /// Substitute variables in every coefficient.
    pub fn specialize(&self, bindings: &BTreeMap<Var, LaurentPoly>) -> Result<SymFunc> {
        let mut terms = BTreeMap::new();
        for (l, c) in &self.terms {
            let sc = c.specialize(bindings)?;
            if !sc.is_zero() {
                terms.insert(l.clone(), sc);
            }
        }
        Ok(SymFunc {
            basis: self.basis,
            terms,
        })
    }
}

/// Mathematical equality: compare in a common basis coefficientwise.
pub fn sym_eq(f: &SymFunc, g: &SymFunc, cap: u32) -> Result<bool> {
    let fb = to_basis(f, Basis::PowerSum, cap)?;
    let gb = to_basis(g, Basis::PowerSum, cap)?;
    let keys: std::collections::BTreeSet<&Partition> =
        fb.terms.keys().chain(gb.terms.keys()).collect();
    for k in keys {
        if !rf_eq(&fb.coeff(k), &gb.coeff(k)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_cap(needed: u32, cap: u32) -> Result<()> {
    if needed > cap {
        return Err(Error::DegreeCapExceeded { needed, cap });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Schur / power-sum bridge
// ---------------------------------------------------------------------------

static CHAR_CACHE: LazyLock<RwLock<std::collections::HashMap<(Partition, Partition), i64>>> =
    LazyLock::new(|| RwLock::new(std::collections::HashMap::new()));

/// Irreducible symmetric-group character value by the border-strip
/// recursion.
pub(crate) fn character(lambda: &Partition, rho: &Partition) -> i64 {
    debug_assert_eq!(lambda.size(), rho.size());
    if lambda.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(v) = CHAR_CACHE.read().unwrap().get(&key) {
        return *v;
    }
    let r = rho.part(1);
    let rest = Partition::from_sorted(rho.parts()[1..].to_vec());
    let mut total = 0i64;
    for (beta, strip) in ribbons_remove(lambda, r) {
        total += strip.sign() * character(&beta, &rest);
    }
    CHAR_CACHE.write().unwrap().insert(key, total);
    total
}

/// Expansion of the Schur function in power sums:
/// `s_lambda = sum_rho (chi^lambda_rho / z_rho) p_rho`.
pub fn schur_in_p(lambda: &Partition, cap: u32) -> Result<SymFunc> {
    check_cap(lambda.size(), cap)?;
    let n = lambda.size();
    let mut terms = BTreeMap::new();
    for rho in partitions_of(n) {
        let chi = character(lambda, &rho);
        if chi == 0 {
            continue;
        }
        let z = rho.centralizer_order();
        let c = BigRational::new(BigInt::from(chi), BigInt::from(z));
        terms.insert(rho, RatFunc::from_rat(c));
    }
    Ok(SymFunc {
        basis: Basis::PowerSum,
        terms,
    })
}

/// The signed border-strip expansion of `p_n * s_lambda` in the Schur basis.
pub fn p_mult_schur(n: u32, lambda: &Partition) -> SymFunc {
    assert!(n >= 1);
    let mut out = SymFunc::zero(Basis::Schur);
    for (alpha, strip) in ribbons_add(lambda, n) {
        out.insert_add(alpha, RatFunc::from_int(strip.sign()));
    }
    out
}

fn p_to_schur(f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::PowerSum);
    let mut out = SymFunc::zero(Basis::Schur);
    for (rho, coeff) in &f.terms {
        let mut acc = SymFunc::one(Basis::Schur);
        for &part in rho.parts() {
            let mut next = SymFunc::zero(Basis::Schur);
            for (l, c) in &acc.terms {
                let prod = p_mult_schur(part, l);
                for (a, pc) in &prod.terms {
                    next.insert_add(a.clone(), c.mul(pc));
                }
            }
            acc = next;
        }
        for (l, c) in &acc.terms {
            out.insert_add(l.clone(), coeff.mul(c));
        }
    }
    out
}

fn schur_to_p(f: &SymFunc, cap: u32) -> Result<SymFunc> {
    debug_assert_eq!(f.basis, Basis::Schur);
    let mut out = SymFunc::zero(Basis::PowerSum);
    for (l, c) in &f.terms {
        let exp = schur_in_p(l, cap)?;
        for (rho, k) in &exp.terms {
            out.insert_add(rho.clone(), c.mul(k));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Monomial bridge
// ---------------------------------------------------------------------------

/// Expansion of `m_mu * p_k` in the monomial basis: add `k` to one part (or
/// as a new part); the multiplicity of `m_nu` counts the positions of `nu`
/// whose removal gives back `mu`.
pub(crate) fn m_times_p(mu: &Partition, k: u32) -> Vec<(Partition, u32)> {
    use std::collections::BTreeSet;
    let mut candidates: BTreeSet<Partition> = BTreeSet::new();
    for idx in 0..=mu.len() {
        let mut parts = mu.parts().to_vec();
        if idx < parts.len() {
            parts[idx] += k;
        } else {
            parts.push(k);
        }
        candidates.insert(Partition::new(parts));
    }
    let mut out = Vec::new();
    for nu in candidates {
        let mut count = 0u32;
        for i in 0..nu.len() {
            if nu.parts()[i] < k {
                continue;
            }
            let mut parts = nu.parts().to_vec();
            parts[i] -= k;
            if Partition::new(parts) == *mu {
                count += 1;
            }
        }
        if count > 0 {
            out.push((nu, count));
        }
    }
    out
}

fn p_to_monomial(f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::PowerSum);
    let mut out = SymFunc::zero(Basis::Monomial);
    for (rho, coeff) in &f.terms {
        let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
        acc.insert(Partition::empty(), BigRational::one());
        for &part in rho.parts() {
            let mut next: BTreeMap<Partition, BigRational> = BTreeMap::new();
            for (mu, c) in &acc {
                for (nu, mult) in m_times_p(mu, part) {
                    let add = c * BigRational::from_integer(BigInt::from(mult));
                    let entry = next.entry(nu).or_insert_with(BigRational::zero);
                    *entry += add;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        for (mu, c) in acc {
            out.insert_add(mu, coeff.scale(&c));
        }
    }
    out
}

fn monomial_to_p(f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::Monomial);
    let mut out = SymFunc::zero(Basis::PowerSum);
    for (deg, comp) in f.components() {
        let table = p2m_table(deg);
        for (mu, coeff) in &comp.terms {
            let mi = table.index(mu);
            for (ri, c) in table.m_in_p[mi].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.insert_add(table.parts[ri].clone(), coeff.scale(c));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Macdonald basis
// ---------------------------------------------------------------------------

/// The Macdonald polynomial `P_lambda(q, t)` in the monomial basis: monic,
/// dominance-triangular and orthogonal for the `(q, t)` inner product
/// `<p_lambda, p_mu> = delta z_lambda prod_i (1 - q^{lambda_i}) / (1 - t^{lambda_i})`.
#[allow(non_snake_case)]
pub fn macdonald_P(lambda: &Partition, cap: u32) -> Result<SymFunc> {
    check_cap(lambda.size(), cap)?;
    let table = mac_table(lambda.size());
    let idx = table.index(lambda);
    let mut terms = BTreeMap::new();
    for (mi, c) in table.mac_in_m[idx].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        terms.insert(table.parts[mi].clone(), c.clone());
    }
    Ok(SymFunc {
        basis: Basis::Monomial,
        terms,
    })
}

fn macdonald_to_monomial(f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::Macdonald);
    let mut out = SymFunc::zero(Basis::Monomial);
    for (deg, comp) in f.components() {
        let table = mac_table(deg);
        for (l, coeff) in &comp.terms {
            let li = table.index(l);
            for (mi, c) in table.mac_in_m[li].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.insert_add(table.parts[mi].clone(), coeff.mul(c));
            }
        }
    }
    out
}

fn macdonald_to_p(f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::Macdonald);
    let mut out = SymFunc::zero(Basis::PowerSum);
    for (deg, comp) in f.components() {
        let table = mac_table(deg);
        for (l, coeff) in &comp.terms {
            let li = table.index(l);
            for (ri, c) in table.mac_in_p[li].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.insert_add(table.parts[ri].clone(), coeff.mul(c));
            }
        }
    }
    out
}

fn monomial_to_macdonald(f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::Monomial);
    let mut out = SymFunc::zero(Basis::Macdonald);
    for (deg, comp) in f.components() {
        let table = mac_table(deg);
        for (mu, coeff) in &comp.terms {
            let mi = table.index(mu);
            for (li, c) in table.m_in_mac[mi].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.insert_add(table.parts[li].clone(), coeff.mul(c));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Public conversions and products
// ---------------------------------------------------------------------------

/// Re-express `f` in the target basis.
pub fn to_basis(f: &SymFunc, target: Basis, cap: u32) -> Result<SymFunc> {
    check_cap(f.max_degree(), cap)?;
    if f.basis == target {
        return Ok(f.clone());
    }
    use Basis::*;
    let out = match (f.basis, target) {
        (PowerSum, Schur) => p_to_schur(f),
        (Schur, PowerSum) => schur_to_p(f, cap)?,
        (PowerSum, Monomial) => p_to_monomial(f),
        (Monomial, PowerSum) => monomial_to_p(f),
        (Macdonald, Monomial) => macdonald_to_monomial(f),
        (Monomial, Macdonald) => monomial_to_macdonald(f),
        (Schur, Monomial) => p_to_monomial(&schur_to_p(f, cap)?),
        (Monomial, Schur) => p_to_schur(&monomial_to_p(f)),
        (PowerSum, Macdonald) => monomial_to_macdonald(&p_to_monomial(f)),
        (Macdonald, PowerSum) => macdonald_to_p(f),
        (Schur, Macdonald) => {
            monomial_to_macdonald(&p_to_monomial(&schur_to_p(f, cap)?))
        }
        (Macdonald, Schur) => p_to_schur(&macdonald_to_p(f)),
        _ => unreachable!("same-basis case handled above"),
    };
    Ok(out)
}

/// Product in the ring of symmetric functions, returned in the basis of `f`.
pub fn mult(f: &SymFunc, g: &SymFunc, cap: u32) -> Result<SymFunc> {
    check_cap(f.max_degree() + g.max_degree(), cap)?;
    let fp = to_basis(f, Basis::PowerSum, cap)?;
    let gp = to_basis(g, Basis::PowerSum, cap)?;
    let mut prod = SymFunc::zero(Basis::PowerSum);
    for (a, ca) in &fp.terms {
        for (b, cb) in &gp.terms {
            let mut parts = a.parts().to_vec();
            parts.extend_from_slice(b.parts());
            prod.insert_add(Partition::new(parts), ca.mul(cb));
        }
    }
    to_basis(&prod, f.basis, cap)
}

// ---------------------------------------------------------------------------
// Evaluations
// ---------------------------------------------------------------------------

/// Principal specialization: the value at `x_i = t^{i-1}` for `i = 1..N`,
/// computed by `p_k -> (1 - t^{kN}) / (1 - t^k)`.
pub fn principal_spec(f: &SymFunc, n_vars: u32) -> Result<RatFunc> {
    assert!(n_vars >= 1);
    let fp = to_basis(f, Basis::PowerSum, u32::MAX)?;
    let mut acc = RatFunc::zero();
    for (rho, coeff) in &fp.terms {
        let mut term = coeff.clone();
        for &k in rho.parts() {
            let num = RatFunc::one().sub(&RatFunc::var_pow(Var::T, (k * n_vars) as i64));
            let den = RatFunc::one().sub(&RatFunc::var_pow(Var::T, k as i64));
            term = term.mul(&num.div(&den)?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Unknot evaluation of a Schur-basis element:
/// `ev(s_lambda) = prod_cells (v^-1 s^c - v s^-c) / (s^h - s^-h)`,
/// extended linearly.
#[allow(non_snake_case)]
pub fn ev_H(f: &SymFunc) -> Result<RatFunc> {
    let fs = to_basis(f, Basis::Schur, u32::MAX)?;
    let mut acc = RatFunc::zero();
    for (l, coeff) in &fs.terms {
        acc = acc.add(&coeff.mul(&ev_h_schur(l)?));
    }
    Ok(acc)
}

fn ev_h_schur(lambda: &Partition) -> Result<RatFunc> {
    let mut out = RatFunc::one();
    for cell in lambda.cells() {
        let st = cell_stats(lambda, cell)?;
        let num = RatFunc::from_poly(
            LaurentPoly::term(BigRational::one(), {
                let mut e = [0i64; 6];
                e[Var::V as usize] = -1;
                e[Var::S as usize] = st.content;
                e
            })
            .sub(&LaurentPoly::term(BigRational::one(), {
                let mut e = [0i64; 6];
                e[Var::V as usize] = 1;
                e[Var::S as usize] = -st.content;
                e
            })),
        );
        out = out.mul(&num.div(&brace(st.hook as i64))?);
    }
    Ok(out)
}

/// Macdonald-basis evaluation
/// `ev(P_lambda) = prod_cells (t^{coleg} - u q^{coarm}) / (1 - q^{arm} t^{leg+1})`,
/// extended linearly. Returns a rational function in `q, t, u`.
#[allow(non_snake_case)]
pub fn ev_E(f: &SymFunc) -> Result<RatFunc> {
    let fm = to_basis(f, Basis::Macdonald, u32::MAX)?;
    let mut acc = RatFunc::zero();
    for (l, coeff) in &fm.terms {
        acc = acc.add(&coeff.mul(&ev_e_macdonald(l)?));
    }
    Ok(acc)
}

fn ev_e_macdonald(lambda: &Partition) -> Result<RatFunc> {
    let mut out = RatFunc::one();
    for cell in lambda.cells() {
        let st = cell_stats(lambda, cell)?;
        let num = RatFunc::var_pow(Var::T, st.coleg as i64).sub(
            &RatFunc::var(Var::U).mul(&RatFunc::var_pow(Var::Q, st.coarm as i64)),
        );
        let den = RatFunc::one().sub(
            &RatFunc::var_pow(Var::Q, st.arm as i64).mul(&RatFunc::var_pow(Var::T, st.leg as i64 + 1)),
        );
        out = out.mul(&num.div(&den)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Serialization and display
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermRepr {
    partition: Vec<u32>,
    coeff: RatFunc,
}

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SymFunc", 2)?;
        st.serialize_field("basis", self.basis.id())?;
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(l, c)| TermRepr {
                partition: l.parts().to_vec(),
                coeff: c.clone(),
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            basis: String,
            terms: Vec<TermRepr>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let basis = Basis::from_id(&raw.basis)
            .ok_or_else(|| D::Error::custom(format!("unknown basis id {:?}", raw.basis)))?;
        let mut out = SymFunc::zero(basis);
        for term in raw.terms {
            out.insert_add(Partition::new(term.partition), term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let label = match self.basis {
            Basis::PowerSum => "p",
            Basis::Schur => "s",
            Basis::Monomial => "m",
            Basis::Macdonald => "P",
        };
        let mut first = true;
        for (l, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{label}{l}")?;
        }
        Ok(())
    }
}

// Shared single-flight cache helper used by the per-degree tables.
pub(crate) struct DegreeCache<T> {
    slots: Mutex<std::collections::HashMap<u32, Arc<OnceLock<Arc<T>>>>>,
}

impl<T> DegreeCache<T> {
    pub(crate) fn new() -> Self {
        DegreeCache {
            slots: Mutex::new(std::collections::HashMap::new()),
        }
    }

    /// Get or compute the entry for `deg`; concurrent callers block on the
    /// same cell so the computation runs once.
    pub(crate) fn get_or_init(&self, deg: u32, init: impl FnOnce() -> T) -> Arc<T> {
        let cell = {
            let mut slots = self.slots.lock().unwrap();
            slots
                .entry(deg)
                .or_insert_with(|| Arc::new(OnceLock::new()))
                .clone()
        };
        cell.get_or_init(|| Arc::new(init())).clone()
    }
}

#[cfg(test)]
mod tests;
