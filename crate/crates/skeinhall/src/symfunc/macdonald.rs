//! Per-degree basis tables: the rational monomial/power-sum transition
//! matrices and the Macdonald basis produced by Gram-Schmidt.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffring::{RatFunc, Var};
use crate::error::Result;
use crate::partitions::{partitions_of, Partition};

use super::{m_times_p, to_basis, Basis, DegreeCache, SymFunc};

/// Strategy stamp for the on-disk cache: Gram-Schmidt over the descending
/// lexicographic order.
const TABLE_VERSION: &str = "mac-gs-lexdesc-1";

static CACHE_DIR: LazyLock<RwLock<Option<PathBuf>>> = LazyLock::new(|| RwLock::new(None));

/// Set (or clear) the directory used to persist computed basis tables and
/// operator images between runs.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    if let Some(d) = &dir {
        let _ = std::fs::create_dir_all(d);
    }
    *CACHE_DIR.write().unwrap() = dir;
}

pub(crate) fn cache_dir() -> Option<PathBuf> {
    CACHE_DIR.read().unwrap().clone()
}

/// Rational transition data between the monomial and power-sum bases in one
/// degree. Partitions are listed in descending lexicographic order, a linear
/// extension of dominance with the largest partition first.
pub(crate) struct P2MTable {
    pub parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row `r`: expansion of `p_{parts[r]}` in the monomial basis.
    pub p_in_m: Vec<Vec<BigRational>>,
    /// Row `r`: expansion of `m_{parts[r]}` in the power-sum basis.
    pub m_in_p: Vec<Vec<BigRational>>,
}

impl P2MTable {
    pub fn index(&self, p: &Partition) -> usize {
        self.index[p]
    }
}

static P2M_CACHE: LazyLock<DegreeCache<P2MTable>> = LazyLock::new(DegreeCache::new);

pub(crate) fn p2m_table(deg: u32) -> Arc<P2MTable> {
    P2M_CACHE.get_or_init(deg, || build_p2m(deg))
}

fn build_p2m(deg: u32) -> P2MTable {
    let parts = partitions_of(deg);
    let n = parts.len();
    let index: HashMap<Partition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

    // p_rho in the m basis by repeated multiplication with p_k. Nonzero
    // entries sit at coarsenings of rho, which dominate it, so the matrix is
    // lower triangular in this ordering.
    let mut p_in_m = vec![vec![BigRational::zero(); n]; n];
    for (r, rho) in parts.iter().enumerate() {
        let mut acc: HashMap<Partition, BigRational> = HashMap::new();
        acc.insert(Partition::empty(), BigRational::one());
        for &part in rho.parts() {
            let mut next: HashMap<Partition, BigRational> = HashMap::new();
            for (mu, c) in &acc {
                for (nu, mult) in m_times_p(mu, part) {
                    let add = c * BigRational::from_integer(BigInt::from(mult));
                    *next.entry(nu).or_insert_with(BigRational::zero) += add;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        for (nu, c) in acc {
            p_in_m[r][index[&nu]] = c;
        }
    }

    // Invert the lower-triangular matrix by forward substitution.
    let mut m_in_p = vec![vec![BigRational::zero(); n]; n];
    for r in 0..n {
        m_in_p[r][r] = p_in_m[r][r].recip();
        for d in (0..r).rev() {
            let mut s = BigRational::zero();
            for k in (d + 1)..=r {
                if !m_in_p[r][k].is_zero() && !p_in_m[k][d].is_zero() {
                    s += &m_in_p[r][k] * &p_in_m[k][d];
                }
            }
            if !s.is_zero() {
                m_in_p[r][d] = -s / &p_in_m[d][d];
            }
        }
    }

    P2MTable {
        parts,
        index,
        p_in_m,
        m_in_p,
    }
}

/// Macdonald basis data in one degree.
pub(crate) struct MacTable {
    pub parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `P_lambda` in the power-sum basis.
    pub mac_in_p: Vec<Vec<RatFunc>>,
    /// `P_lambda` in the monomial basis.
    pub mac_in_m: Vec<Vec<RatFunc>>,
    /// `m_lambda` in the Macdonald basis.
    pub m_in_mac: Vec<Vec<RatFunc>>,
    /// `<P_lambda, P_lambda>`.
    pub norms: Vec<RatFunc>,
}

impl MacTable {
    pub fn index(&self, p: &Partition) -> usize {
        self.index[p]
    }
}

static MAC_CACHE: LazyLock<DegreeCache<MacTable>> = LazyLock::new(DegreeCache::new);

pub(crate) fn mac_table(deg: u32) -> Arc<MacTable> {
    MAC_CACHE.get_or_init(deg, || {
        load_mac(deg).unwrap_or_else(|| {
            let table = build_mac(deg);
            store_mac(deg, &table);
            table
        })
    })
}

#[derive(Serialize, Deserialize)]
struct MacTableRepr {
    version: String,
    degree: u32,
    parts: Vec<Partition>,
    mac_in_p: Vec<Vec<RatFunc>>,
    mac_in_m: Vec<Vec<RatFunc>>,
    m_in_mac: Vec<Vec<RatFunc>>,
    norms: Vec<RatFunc>,
}

fn mac_path(dir: &std::path::Path, deg: u32) -> PathBuf {
    dir.join(format!("{TABLE_VERSION}-deg{deg}.json"))
}

fn load_mac(deg: u32) -> Option<MacTable> {
    let dir = cache_dir()?;
    let text = std::fs::read_to_string(mac_path(&dir, deg)).ok()?;
    let repr: MacTableRepr = serde_json::from_str(&text).ok()?;
    if repr.version != TABLE_VERSION || repr.degree != deg || repr.parts != partitions_of(deg) {
        return None;
    }
    let index = repr
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Some(MacTable {
        parts: repr.parts,
        index,
        mac_in_p: repr.mac_in_p,
        mac_in_m: repr.mac_in_m,
        m_in_mac: repr.m_in_mac,
        norms: repr.norms,
    })
}

fn store_mac(deg: u32, table: &MacTable) {
    let Some(dir) = cache_dir() else {
        return;
    };
    let repr = MacTableRepr {
        version: TABLE_VERSION.to_string(),
        degree: deg,
        parts: table.parts.clone(),
        mac_in_p: table.mac_in_p.clone(),
        mac_in_m: table.mac_in_m.clone(),
        m_in_mac: table.m_in_mac.clone(),
        norms: table.norms.clone(),
    };
    if let Ok(text) = serde_json::to_string(&repr) {
        let _ = std::fs::write(mac_path(&dir, deg), text);
    }
}

/// `<p_rho, p_rho> = z_rho prod_i (1 - q^{rho_i}) / (1 - t^{rho_i})`.
fn inner_weight(rho: &Partition) -> RatFunc {
    let mut num = RatFunc::from_rat(BigRational::from_integer(BigInt::from(
        rho.centralizer_order(),
    )));
    let mut den = RatFunc::one();
    for &k in rho.parts() {
        num = num.mul(&RatFunc::one().sub(&RatFunc::var_pow(Var::Q, k as i64)));
        den = den.mul(&RatFunc::one().sub(&RatFunc::var_pow(Var::T, k as i64)));
    }
    num.div(&den).expect("denominator is nonzero")
}

/// Balanced summation keeps intermediate cross-multiplied denominators
/// small.
fn rf_sum(mut items: Vec<RatFunc>) -> RatFunc {
    items.retain(|x| !x.is_zero());
    if items.is_empty() {
        return RatFunc::zero();
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(&b)),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}

fn dot_weighted(a: &[RatFunc], b: &[RatFunc], w: &[RatFunc]) -> RatFunc {
    let mut items = Vec::new();
    for i in 0..a.len() {
        if a[i].is_zero() || b[i].is_zero() {
            continue;
        }
        items.push(a[i].mul(&b[i]).mul(&w[i]));
    }
    rf_sum(items)
}

fn build_mac(deg: u32) -> MacTable {
    let p2m = p2m_table(deg);
    let parts = p2m.parts.clone();
    let n = parts.len();
    let index: HashMap<Partition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let weights: Vec<RatFunc> = parts.iter().map(inner_weight).collect();

    let mut mac_in_p: Vec<Vec<RatFunc>> = vec![Vec::new(); n];
    let mut norms: Vec<RatFunc> = vec![RatFunc::zero(); n];

    // Gram-Schmidt from the dominance-minimal partition upwards. The
    // projection against P_mu vanishes unless mu is dominated by lambda, so
    // incomparable pairs are skipped.
    for li in (0..n).rev() {
        let mut v: Vec<RatFunc> = p2m.m_in_p[li]
            .iter()
            .map(|c| RatFunc::from_rat(c.clone()))
            .collect();
        for mi in (li + 1)..n {
            if !parts[mi].dominated_by(&parts[li]) {
                continue;
            }
            let c = dot_weighted(&v, &mac_in_p[mi], &weights)
                .div(&norms[mi])
                .expect("norm is nonzero");
            if c.is_zero() {
                continue;
            }
            for (vi, entry) in v.iter_mut().enumerate() {
                if !mac_in_p[mi][vi].is_zero() {
                    *entry = entry.sub(&c.mul(&mac_in_p[mi][vi]));
                }
            }
        }
        norms[li] = dot_weighted(&v, &v, &weights);
        mac_in_p[li] = v;
    }

    // Convert to the monomial basis with the rational transition matrix.
    let mut mac_in_m: Vec<Vec<RatFunc>> = vec![Vec::new(); n];
    for li in 0..n {
        let mut row = vec![RatFunc::zero(); n];
        for ri in 0..n {
            let c = &mac_in_p[li][ri];
            if c.is_zero() {
                continue;
            }
            for (mi, k) in p2m.p_in_m[ri].iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                row[mi] = row[mi].add(&c.scale(k));
            }
        }
        mac_in_m[li] = row;
    }

    // m_lambda in the Macdonald basis by unitriangular back substitution.
    let mut m_in_mac: Vec<Vec<RatFunc>> = vec![Vec::new(); n];
    for mi in 0..n {
        let mut work = vec![RatFunc::zero(); n];
        work[mi] = RatFunc::one();
        let mut row = vec![RatFunc::zero(); n];
        for li in 0..n {
            let c = work[li].clone();
            if c.is_zero() {
                continue;
            }
            row[li] = c.clone();
            for (k, entry) in mac_in_m[li].iter().enumerate() {
                if !entry.is_zero() {
                    work[k] = work[k].sub(&c.mul(entry));
                }
            }
        }
        m_in_mac[mi] = row;
    }

    MacTable {
        parts,
        index,
        mac_in_p,
        mac_in_m,
        m_in_mac,
        norms,
    }
}

/// The `(q, t)` inner product, bilinear over rational functions.
pub(crate) fn inner_product(f: &SymFunc, g: &SymFunc) -> Result<RatFunc> {
    let fp = to_basis(f, Basis::PowerSum, u32::MAX)?;
    let gp = to_basis(g, Basis::PowerSum, u32::MAX)?;
    let mut items = Vec::new();
    for (rho, a) in fp.terms() {
        let b = gp.coeff(rho);
        if b.is_zero() {
            continue;
        }
        items.push(a.mul(&b).mul(&inner_weight(rho)));
    }
    Ok(rf_sum(items))
}
