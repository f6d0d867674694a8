//! Best-effort fraction reduction for Laurent polynomials.
//!
//! `reduce` removes a common polynomial factor from a numerator/denominator
//! pair when one can be found cheaply. The common factor is found with the
//! evaluation-based heuristic GCD (substitute a large integer for one
//! variable at a time, take integer GCDs, lift back digit by digit, verify
//! by exact division). A failed heuristic simply leaves the fraction
//! unreduced, which is always correct: rational-function equality is decided
//! by cross multiplication elsewhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{exp_add, exp_sub, ExpVec, LaurentPoly, NVARS};

type IntPoly = BTreeMap<ExpVec, BigInt>;

const MAX_ATTEMPTS: usize = 6;
const TERM_BUDGET: usize = 20_000;

/// Divide out a common polynomial factor of `num` and `den` when one can be
/// found cheaply. Denominators in this ring are overwhelmingly products of
/// binomials `1 ± x^e` (quantum brackets, inner-product weights, hook
/// products), so trial division by binomial factors read off the
/// denominator's support runs first; the general heuristic GCD picks up
/// whatever remains.
pub(super) fn reduce(num: LaurentPoly, den: LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if num.is_zero() || den.is_zero() || num.num_terms() <= 1 || den.num_terms() <= 1 {
        // A single-term denominator is a unit times a monomial; the
        // normalization moves it wholesale. A single-term numerator shares
        // at most a monomial with the denominator.
        return (num, den);
    }
    let (mut num, mut den) = cancel_binomials(num, den);
    if num.num_terms() <= 1 || den.num_terms() <= 1 {
        return (num, den);
    }
    if num.num_terms() + den.num_terms() > GCD_INPUT_BUDGET {
        return (num, den);
    }
    let a = to_int_poly(&num);
    let b = to_int_poly(&den);
    if let Some(g) = gcd_int(&a, &b) {
        if !is_constant(&g) {
            let g = from_int_poly(&g);
            if let (Some(n), Some(d)) = (num.div_exact(&g), den.div_exact(&g)) {
                num = n;
                den = d;
            }
        }
    }
    (num, den)
}

const GCD_INPUT_BUDGET: usize = 1_500;
const BINOMIAL_CANDIDATES: usize = 64;

/// Repeatedly cancel factors `1 - x^e` and `1 + x^e` common to both sides,
/// with candidate exponents read off the denominator's support.
fn cancel_binomials(mut num: LaurentPoly, mut den: LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    loop {
        let shift = den.min_exps();
        let mut candidates: Vec<ExpVec> = den
            .terms()
            .map(|(e, _)| exp_sub(e, &shift))
            .filter(|e| e != &[0; NVARS])
            .take(BINOMIAL_CANDIDATES)
            .collect();
        candidates.sort_by_key(|e| e.iter().map(|x| x.unsigned_abs()).sum::<u64>());
        let mut progress = false;
        for e in candidates {
            for sign in [-1i64, 1] {
                let factor = LaurentPoly::one().add(&LaurentPoly::term(
                    BigRational::from_integer(BigInt::from(sign)),
                    e,
                ));
                loop {
                    let Some(d) = den.div_exact(&factor) else {
                        break;
                    };
                    let Some(n) = num.div_exact(&factor) else {
                        break;
                    };
                    den = d;
                    num = n;
                    progress = true;
                    if num.num_terms() <= 1 || den.num_terms() <= 1 {
                        return (num, den);
                    }
                }
            }
        }
        if !progress {
            return (num, den);
        }
    }
}

/// Exact Laurent division: `Some(q)` with `a = q * d`, or `None`.
pub(super) fn div_exact(a: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    if d.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let shift_a = a.min_exps();
    let shift_d = d.min_exps();
    let mut rem: BTreeMap<ExpVec, BigRational> = a
        .terms()
        .map(|(e, c)| (exp_sub(e, &shift_a), c.clone()))
        .collect();
    let dd: Vec<(ExpVec, BigRational)> = d
        .terms()
        .map(|(e, c)| (exp_sub(e, &shift_d), c.clone()))
        .collect();
    let (lead_e, lead_c) = dd.last().expect("nonzero divisor").clone();

    let mut quo: BTreeMap<ExpVec, BigRational> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (*e, c.clone())) {
        steps += 1;
        if steps > TERM_BUDGET {
            return None;
        }
        let mut qe = [0i64; NVARS];
        for i in 0..NVARS {
            qe[i] = re[i] - lead_e[i];
            if qe[i] < 0 {
                return None;
            }
        }
        let qc = rc / &lead_c;
        for (de, dc) in &dd {
            let e = exp_add(de, &qe);
            let entry = rem.entry(e).or_insert_with(BigRational::zero);
            *entry -= &qc * dc;
            if entry.is_zero() {
                rem.remove(&e);
            }
        }
        quo.insert(qe, qc);
    }

    // Undo the normalizing monomial shifts.
    let correction = exp_sub(&shift_a, &shift_d);
    let out = LaurentPoly {
        terms: quo
            .into_iter()
            .map(|(e, c)| (exp_add(&e, &correction), c))
            .collect(),
    };
    Some(out)
}

fn to_int_poly(p: &LaurentPoly) -> IntPoly {
    let shift = p.min_exps();
    let mut den_lcm = BigInt::one();
    for c in p.terms().map(|(_, c)| c) {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut out: IntPoly = BTreeMap::new();
    for (e, c) in p.terms() {
        let scaled = c * BigRational::from_integer(den_lcm.clone());
        debug_assert!(scaled.denom().is_one());
        out.insert(exp_sub(e, &shift), scaled.numer().clone());
    }
    primitive_part(out)
}

fn from_int_poly(p: &IntPoly) -> LaurentPoly {
    LaurentPoly {
        terms: p
            .iter()
            .map(|(e, c)| (*e, BigRational::from_integer(c.clone())))
            .collect(),
    }
}

fn is_constant(p: &IntPoly) -> bool {
    p.len() == 1 && p.keys().next().map(|e| e == &[0; NVARS]).unwrap_or(false)
}

fn primitive_part(p: IntPoly) -> IntPoly {
    let mut content = BigInt::zero();
    for c in p.values() {
        content = content.gcd(c);
    }
    if content.is_zero() || content.is_one() {
        return p;
    }
    p.into_iter().map(|(e, c)| (e, c / &content)).collect()
}

fn max_norm(p: &IntPoly) -> BigInt {
    let mut out = BigInt::zero();
    for c in p.values() {
        let a = c.abs();
        if a > out {
            out = a;
        }
    }
    out
}

fn active_vars(a: &IntPoly, b: &IntPoly) -> Vec<usize> {
    let mut used = [false; NVARS];
    for e in a.keys().chain(b.keys()) {
        for i in 0..NVARS {
            if e[i] != 0 {
                used[i] = true;
            }
        }
    }
    (0..NVARS).filter(|&i| used[i]).collect()
}

fn max_degree(p: &IntPoly, var: usize) -> i64 {
    p.keys().map(|e| e[var]).max().unwrap_or(0)
}

fn monomial_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut exps = [i64::MAX; NVARS];
    for e in a.keys().chain(b.keys()) {
        for i in 0..NVARS {
            exps[i] = exps[i].min(e[i]);
        }
    }
    let mut content = BigInt::zero();
    for c in a.values().chain(b.values()) {
        content = content.gcd(c);
    }
    let mut out = BTreeMap::new();
    out.insert(exps, content);
    out
}

fn eval_var(p: &IntPoly, var: usize, xi: &BigInt) -> IntPoly {
    let maxdeg = max_degree(p, var) as usize;
    let mut pows = Vec::with_capacity(maxdeg + 1);
    pows.push(BigInt::one());
    for i in 1..=maxdeg {
        let next = &pows[i - 1] * xi;
        pows.push(next);
    }
    let mut out: IntPoly = BTreeMap::new();
    for (e, c) in p {
        let mut e0 = *e;
        let d = e0[var] as usize;
        e0[var] = 0;
        let entry = out.entry(e0).or_insert_with(BigInt::zero);
        *entry += c * &pows[d];
        if entry.is_zero() {
            out.remove(&e0);
        }
    }
    out
}

fn balanced_mod(c: &BigInt, xi: &BigInt) -> BigInt {
    let mut r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r -= xi;
    }
    r
}

/// Lift an evaluated GCD image back to a polynomial in `var` by balanced
/// `xi`-adic expansion of every coefficient.
fn lift(gamma: &IntPoly, var: usize, xi: &BigInt) -> Option<IntPoly> {
    let mut out: IntPoly = BTreeMap::new();
    let mut cur = gamma.clone();
    let mut power = 0i64;
    while !cur.is_empty() {
        if power > 4_096 {
            return None;
        }
        let mut next: IntPoly = BTreeMap::new();
        for (e, c) in &cur {
            let digit = balanced_mod(c, xi);
            if !digit.is_zero() {
                let mut de = *e;
                de[var] = power;
                out.insert(de, digit.clone());
            }
            let rest = (c - digit) / xi;
            if !rest.is_zero() {
                next.insert(*e, rest);
            }
        }
        cur = next;
        power += 1;
    }
    Some(out)
}

fn int_div_exact(a: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    if d.is_empty() {
        return None;
    }
    let (lead_e, lead_c) = d.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
    let mut rem = a.clone();
    let mut quo: IntPoly = BTreeMap::new();
    let mut steps = 0usize;
    while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (*e, c.clone())) {
        steps += 1;
        if steps > TERM_BUDGET {
            return None;
        }
        let mut qe = [0i64; NVARS];
        for i in 0..NVARS {
            qe[i] = re[i] - lead_e[i];
            if qe[i] < 0 {
                return None;
            }
        }
        let (qc, r) = rc.div_rem(&lead_c);
        if !r.is_zero() {
            return None;
        }
        for (de, dc) in d {
            let e = exp_add(de, &qe);
            let entry = rem.entry(e).or_insert_with(BigInt::zero);
            *entry -= &qc * dc;
            if entry.is_zero() {
                rem.remove(&e);
            }
        }
        quo.insert(qe, qc);
    }
    Some(quo)
}

fn gcd_int(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    if a.len() + b.len() > TERM_BUDGET {
        return None;
    }
    if a == b {
        return Some(a.clone());
    }
    if a.len() == 1 || b.len() == 1 {
        return Some(monomial_gcd(a, b));
    }
    let vars = active_vars(a, b);
    if vars.is_empty() {
        let ca = a.values().next()?;
        let cb = b.values().next()?;
        let mut out = BTreeMap::new();
        out.insert([0; NVARS], ca.gcd(cb));
        return Some(out);
    }
    // Evaluate the variable of smallest degree spread first; fewer digits to
    // lift.
    let var = *vars
        .iter()
        .min_by_key(|&&v| max_degree(a, v).max(max_degree(b, v)))?;

    let norm = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = norm * 2 + 29;
    // Keep the evaluated integers within a sane bit budget.
    let deg = max_degree(a, var).max(max_degree(b, var)) as u64;
    if deg.saturating_mul(xi.bits()) > 2_000_000 {
        return None;
    }

    for _ in 0..MAX_ATTEMPTS {
        let ea = eval_var(a, var, &xi);
        let eb = eval_var(b, var, &xi);
        if !ea.is_empty() && !eb.is_empty() {
            if let Some(gamma) = gcd_int(&ea, &eb) {
                if let Some(cand) = lift(&gamma, var, &xi) {
                    let cand = primitive_part(cand);
                    if !cand.is_empty()
                        && int_div_exact(a, &cand).is_some()
                        && int_div_exact(b, &cand).is_some()
                    {
                        return Some(cand);
                    }
                }
            }
        }
        xi = (&xi * 73794) / 27011 + 37;
    }
    None
}
