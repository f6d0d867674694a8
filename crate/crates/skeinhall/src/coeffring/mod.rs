//! Exact multivariate Laurent-polynomial and rational-function arithmetic
//! over the rationals.
//!
//! All coefficients live in the fixed variable set `q, t, u, s, v, x` (in
//! that order). A [`LaurentPoly`] is a canonical sparse term map from signed
//! exponent vectors to big rationals; a [`RatFunc`] is a normalized quotient
//! of two Laurent polynomials. Equality of rational functions is decided by
//! cross multiplication, so correctness never depends on fraction reduction;
//! reduction (see [`gcd`]) is a best-effort size control.

mod gcd;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of variables in the fixed ring.
pub const NVARS: usize = 6;

/// Exponent vector in the fixed variable order `q, t, u, s, v, x`.
pub type ExpVec = [i64; NVARS];

/// The six ring variables, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q = 0,
    T = 1,
    U = 2,
    S = 3,
    V = 4,
    X = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::T, Var::U, Var::S, Var::V, Var::X];

    pub fn name(self) -> char {
        match self {
            Var::Q => 'q',
            Var::T => 't',
            Var::U => 'u',
            Var::S => 's',
            Var::V => 'v',
            Var::X => 'x',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == c)
    }
}

fn exp_add(a: &ExpVec, b: &ExpVec) -> ExpVec {
    let mut out = [0i64; NVARS];
    for i in 0..NVARS {
        out[i] = a[i]
            .checked_add(b[i])
            .expect("exponent arithmetic overflowed");
    }
    out
}

fn exp_sub(a: &ExpVec, b: &ExpVec) -> ExpVec {
    let mut out = [0i64; NVARS];
    for i in 0..NVARS {
        out[i] = a[i]
            .checked_sub(b[i])
            .expect("exponent arithmetic overflowed");
    }
    out
}

/// Sparse Laurent polynomial with big-rational coefficients.
///
/// Invariants: no stored coefficient is zero, and the term map is canonical,
/// so structural equality coincides with mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<ExpVec, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NVARS], c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The monomial `c * var^e`.
    pub fn monomial(c: BigRational, var: Var, e: i64) -> Self {
        let mut exps = [0i64; NVARS];
        exps[var as usize] = e;
        Self::term(c, exps)
    }

    /// The single term `c * q^e0 t^e1 u^e2 s^e3 v^e4 x^e5`.
    pub fn term(c: BigRational, exps: ExpVec) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(var: Var) -> Self {
        Self::monomial(BigRational::one(), var, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0; NVARS])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigRational)> {
        self.terms.iter()
    }

    /// Lexicographically largest term, if any.
    pub fn leading(&self) -> Option<(&ExpVec, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, exps: ExpVec, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(exp_add(ea, eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^shift` (componentwise exponent shift).
    pub fn shift(&self, shift: &ExpVec) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (exp_add(e, shift), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Componentwise minimum exponent over all terms (zero for the zero
    /// polynomial).
    pub fn min_exps(&self) -> ExpVec {
        let mut out = [i64::MAX; NVARS];
        if self.terms.is_empty() {
            return [0; NVARS];
        }
        for e in self.terms.keys() {
            for i in 0..NVARS {
                out[i] = out[i].min(e[i]);
            }
        }
        out
    }

    /// True when the variable occurs with nonzero exponent.
    pub fn uses_var(&self, var: Var) -> bool {
        self.terms.keys().any(|e| e[var as usize] != 0)
    }

    /// Evaluate at an exact rational point. Every variable occurring in the
    /// polynomial must be bound; bound values must be nonzero wherever a
    /// negative exponent occurs.
    pub fn eval(&self, point: &BTreeMap<Var, BigRational>) -> Result<BigRational> {
        let mut vals: [Option<&BigRational>; NVARS] = [None; NVARS];
        for (v, val) in point {
            vals[*v as usize] = Some(val);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..NVARS {
                if e[i] == 0 {
                    continue;
                }
                let val = vals[i].ok_or(Error::MissingVariable(Var::ALL[i].name()))?;
                if val.is_zero() {
                    if e[i] < 0 {
                        return Err(Error::EvalPole);
                    }
                    term = BigRational::zero();
                    break;
                }
                term *= rat_pow(val, e[i]);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Exact division; `None` when `self` is not a multiple of `d`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        gcd::div_exact(self, d)
    }

    /// The rational scalar `c` such that `self / c` has coprime integer
    /// coefficients and positive leading coefficient. Returns 1 for zero.
    fn canonical_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        content
    }
}

fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    let mut p = BigRational::one();
    let mut b = base.clone();
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            p *= &b;
        }
        n >>= 1;
        if n > 0 {
            b = &b * &b;
        }
    }
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Normalized quotient of Laurent polynomials.
///
/// Invariants: the denominator is nonzero, carries no pure-monomial factor
/// (monomial content is moved to the numerator), and is scaled to have
/// coprime integer coefficients with positive leading coefficient. A zero
/// value is stored as `0/1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: LaurentPoly::one(),
            });
        }
        let (mut num, mut den) = gcd::reduce(num, den);
        // Move the denominator's monomial content into the numerator and
        // scale the denominator to a canonical primitive form.
        let shift = den.min_exps();
        if shift != [0; NVARS] {
            let neg: ExpVec = {
                let mut n = [0i64; NVARS];
                for i in 0..NVARS {
                    n[i] = -shift[i];
                }
                n
            };
            den = den.shift(&neg);
            num = num.shift(&neg);
        }
        let content = den.canonical_content();
        if !content.is_one() {
            let inv = content.recip();
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rat(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    /// The monomial `var^e` (negative exponents allowed).
    pub fn var_pow(v: Var, e: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(BigRational::one(), v, e))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone())
                .expect("denominator is nonzero");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("denominator is nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Reduce crosswise first so the product starts close to lowest terms.
        let (na, db) = gcd::reduce(self.num.clone(), other.den.clone());
        let (nb, da) = gcd::reduce(other.num.clone(), self.den.clone());
        RatFunc::new(na.mul(&nb), da.mul(&db)).expect("denominator is nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&RatFunc {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::one().div(self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("denominator is nonzero")
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = RatFunc::new(self.num.pow(e.unsigned_abs() as u32), self.den.pow(e.unsigned_abs() as u32))
            .expect("denominator is nonzero");
        if e < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// If the value is a single Laurent term, return its coefficient and
    /// exponent vector. Robust against unreduced representations.
    pub fn as_monomial(&self) -> Option<(BigRational, ExpVec)> {
        if self.is_zero() {
            return Some((BigRational::zero(), [0; NVARS]));
        }
        let quo = self.num.div_exact(&self.den)?;
        if quo.num_terms() != 1 {
            return None;
        }
        let (e, c) = quo.terms().next().unwrap();
        Some((c.clone(), *e))
    }

    /// Exact evaluation at a rational point.
    pub fn eval_at(&self, point: &BTreeMap<Var, BigRational>) -> Result<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::EvalPole);
        }
        let n = self.num.eval(point)?;
        Ok(n / d)
    }

    /// Exact substitution of Laurent polynomials for variables. Bindings may
    /// be arbitrary Laurent polynomials in the remaining variables; the
    /// substituted denominator must not vanish identically.
    pub fn specialize(&self, bindings: &BTreeMap<Var, LaurentPoly>) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let num = substitute(&self.num, bindings)?;
        let den = substitute(&self.den, bindings)?;
        if den.is_zero() {
            return Err(Error::SpecializationPole);
        }
        num.div(&den).map_err(|_| Error::SpecializationPole)
    }
}

/// Substitute bindings into a Laurent polynomial, producing a rational
/// function (negative exponents of a substituted variable become division).
fn substitute(p: &LaurentPoly, bindings: &BTreeMap<Var, LaurentPoly>) -> Result<RatFunc> {
    // Fast path: all bindings are single Laurent terms, so substitution is a
    // linear rewrite of exponent vectors.
    if bindings.values().all(|b| b.num_terms() == 1) {
        let mut out = LaurentPoly::zero();
        'terms: for (e, c) in p.terms() {
            let mut exps = *e;
            let mut coeff = c.clone();
            for (v, b) in bindings {
                let i = *v as usize;
                let exp = exps[i];
                if exp == 0 {
                    continue;
                }
                exps[i] = 0;
                let (be, bc) = b.terms().next().unwrap();
                if !bc.is_one() {
                    coeff *= rat_pow(bc, exp);
                }
                for j in 0..NVARS {
                    if be[j] != 0 {
                        exps[j] = exps[j]
                            .checked_add(
                                be[j].checked_mul(exp).expect("exponent arithmetic overflowed"),
                            )
                            .expect("exponent arithmetic overflowed");
                    }
                }
                if coeff.is_zero() {
                    continue 'terms;
                }
            }
            out.insert_add(exps, coeff);
        }
        return Ok(RatFunc::from_poly(out));
    }

    let mut acc = RatFunc::zero();
    for (e, c) in p.terms() {
        let mut term = RatFunc::from_rat(c.clone());
        for i in 0..NVARS {
            if e[i] == 0 {
                continue;
            }
            let base = match bindings.get(&Var::ALL[i]) {
                Some(b) => RatFunc::from_poly(b.clone()),
                None => RatFunc::var(Var::ALL[i]),
            };
            if base.is_zero() && e[i] < 0 {
                return Err(Error::SpecializationPole);
            }
            term = term.mul(&base.pow(e[i]).map_err(|_| Error::SpecializationPole)?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Arithmetic dispatch used by the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic on rational functions.
pub fn rf_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

/// Equality of rational functions by cross multiplication, with a cheap
/// evaluation prefilter at fixed rational points.
pub fn rf_eq(a: &RatFunc, b: &RatFunc) -> bool {
    for round in 0..3u32 {
        let point = probe_point(round);
        match (a.eval_at(&point), b.eval_at(&point)) {
            (Ok(x), Ok(y)) => {
                if x != y {
                    return false;
                }
            }
            _ => continue,
        }
    }
    a.num.mul(&b.den) == b.num.mul(&a.den)
}

fn probe_point(round: u32) -> BTreeMap<Var, BigRational> {
    // Fixed pseudo-random primes; distinct per variable and round.
    const PRIMES: [[i64; NVARS]; 3] = [
        [2, 3, 5, 7, 11, 13],
        [17, 5, 23, 3, 29, 31],
        [7, 41, 2, 43, 13, 53],
    ];
    Var::ALL
        .iter()
        .enumerate()
        .map(|(i, v)| {
            (
                *v,
                BigRational::from_integer(BigInt::from(PRIMES[round as usize][i])),
            )
        })
        .collect()
}

/// The quantum bracket `{d} = s^d - s^{-d}`.
pub fn brace(d: i64) -> RatFunc {
    let p = LaurentPoly::monomial(BigRational::one(), Var::S, d).sub(&LaurentPoly::monomial(
        BigRational::one(),
        Var::S,
        -d,
    ));
    RatFunc::from_poly(p)
}

/// The quantum bracket `{d}^+ = s^d + s^{-d}`.
pub fn brace_plus(d: i64) -> RatFunc {
    let p = LaurentPoly::monomial(BigRational::one(), Var::S, d).add(&LaurentPoly::monomial(
        BigRational::one(),
        Var::S,
        -d,
    ));
    RatFunc::from_poly(p)
}

/// The balanced quantum integer `[d] = {d}/{1}`.
pub fn bracket(d: i64) -> RatFunc {
    brace(d).div(&brace(1)).expect("{1} is nonzero")
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms sorted lexicographically by descending
    /// exponent vector, e.g. `-1*q^2*t^-1 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.iter().all(|&x| x == 0) {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}")?;
                for (i, v) in Var::ALL.iter().enumerate() {
                    if e[i] == 0 {
                        continue;
                    }
                    write!(f, "*{}", v.name())?;
                    if e[i] != 1 {
                        write!(f, "^{}", e[i])?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

fn poly_to_json(p: &LaurentPoly) -> Vec<(String, ExpVec)> {
    p.terms
        .iter()
        .rev()
        .map(|(e, c)| (c.to_string(), *e))
        .collect()
}

fn poly_from_json(v: Vec<(String, ExpVec)>) -> std::result::Result<LaurentPoly, String> {
    let mut out = LaurentPoly::zero();
    for (c, e) in v {
        let c = BigRational::from_str(&c).map_err(|err| format!("bad coefficient: {err}"))?;
        out.insert_add(e, c);
    }
    Ok(out)
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        poly_to_json(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<(String, ExpVec)>::deserialize(deserializer)?;
        poly_from_json(v).map_err(D::Error::custom)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: LaurentPoly,
            den: LaurentPoly,
        }
        let raw = Raw::deserialize(deserializer)?;
        RatFunc::new(raw.num, raw.den).map_err(|e| D::Error::custom(e.to_string()))
    }
}
