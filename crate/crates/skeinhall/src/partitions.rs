//! Integer partitions, cell statistics and border-strip enumeration.
//!
//! Rows and columns are 0-based with the corner cell of a nonempty partition
//! at row and column 0. Arm, leg, coarm and coleg are strict counts: for a
//! cell `(i, j)` of `lambda`, `arm = lambda_{i+1} - j - 1`, `leg` counts the
//! cells strictly above in the column, `coarm = j` and `coleg = i`.
//! Border-strip enumeration works on beta-numbers (first-column hook
//! lengths): adding an `n`-ribbon is moving one bead up `n` positions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Construct from a list already known to be weakly decreasing.
    pub fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based part lookup; zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row < self.0.len() && (cell.col as u32) < self.0[cell.row]
    }

    /// Set containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(i, &p)| i < self.0.len() && self.0[i] >= p)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| {
            (0..p as usize).map(move |j| Cell { row: i, col: j })
        })
    }

    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut parts = vec![0u32; cols];
        for (j, part) in parts.iter_mut().enumerate() {
            *part = self.0.iter().filter(|&&p| p as usize > j).count() as u32;
        }
        Partition::from_sorted(parts)
    }

    /// Dominance order: `self <= other` (both must have equal size).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..self.0.len().max(other.0.len()) {
            a += self.part(i + 1) as u64;
            b += other.part(i + 1) as u64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// The centralizer order `z_lambda = prod_i i^{k_i} k_i!` where `k_i` is
    /// the multiplicity of `i`.
    pub fn centralizer_order(&self) -> u64 {
        let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_insert(0) += 1;
        }
        let mut z = 1u64;
        for (i, k) in mult {
            for _ in 0..k {
                z *= i as u64;
            }
            for f in 1..=k as u64 {
                z *= f;
            }
        }
        z
    }

    /// Multiplicity of each content value over the cells.
    pub fn content_multiset(&self) -> BTreeMap<i64, u32> {
        let mut out = BTreeMap::new();
        for cell in self.cells() {
            *out.entry(cell.content()).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A cell in row `row` and column `col`, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// Arm, leg, coarm, coleg, content and hook length of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellStats {
    pub arm: u32,
    pub leg: u32,
    pub coarm: u32,
    pub coleg: u32,
    pub content: i64,
    pub hook: u32,
}

/// Statistics of a cell of `lambda` under the 0-based strict-count
/// convention.
pub fn cell_stats(lambda: &Partition, cell: Cell) -> Result<CellStats> {
    if !lambda.contains_cell(cell) {
        return Err(Error::CellOutOfShape(cell.row, cell.col));
    }
    let arm = lambda.part(cell.row + 1) - cell.col as u32 - 1;
    let leg = lambda
        .parts()
        .iter()
        .skip(cell.row + 1)
        .filter(|&&p| p as usize > cell.col)
        .count() as u32;
    Ok(CellStats {
        arm,
        leg,
        coarm: cell.col as u32,
        coleg: cell.row as u32,
        content: cell.content(),
        hook: arm + leg + 1,
    })
}

/// A border strip (ribbon): connected skew shape without a 2x2 square whose
/// contents form an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderStrip {
    pub cells: Vec<Cell>,
    pub rows_spanned: u32,
    pub min_content: i64,
    pub length: u32,
}

impl BorderStrip {
    /// Height convention: number of rows spanned plus one. Only its parity
    /// enters any formula.
    pub fn ht(&self) -> u32 {
        self.rows_spanned + 1
    }

    /// The sign `(-1)^{rows_spanned + 1} = (-1)^{ht}`.
    pub fn sign(&self) -> i64 {
        if self.ht() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn from_skew(outer: &Partition, inner: &Partition) -> Self {
        let mut cells = Vec::new();
        for (i, &op) in outer.parts().iter().enumerate() {
            let ip = inner.part(i + 1);
            for j in ip..op {
                cells.push(Cell::new(i, j as usize));
            }
        }
        let rows_spanned = {
            let mut rows: Vec<usize> = cells.iter().map(|c| c.row).collect();
            rows.dedup();
            rows.len() as u32
        };
        let min_content = cells.iter().map(|c| c.content()).min().unwrap_or(0);
        let length = cells.len() as u32;
        BorderStrip {
            cells,
            rows_spanned,
            min_content,
            length,
        }
    }
}

fn beta_numbers(lambda: &Partition, slots: usize) -> Vec<i64> {
    debug_assert!(slots >= lambda.len());
    (1..=slots)
        .map(|i| lambda.part(i) as i64 + (slots - i) as i64)
        .collect()
}

fn partition_from_betas(mut betas: Vec<i64>) -> Partition {
    betas.sort_unstable_by(|a, b| b.cmp(a));
    let slots = betas.len();
    let parts: Vec<u32> = betas
        .iter()
        .enumerate()
        .map(|(idx, &b)| (b - (slots - idx - 1) as i64) as u32)
        .filter(|&p| p > 0)
        .collect();
    Partition::from_sorted(parts)
}

/// All partitions `alpha` containing `lambda` with `alpha - lambda` a border
/// strip of length `n`, in descending lexicographic order of `alpha`.
pub fn ribbons_add(lambda: &Partition, n: u32) -> Vec<(Partition, BorderStrip)> {
    assert!(n >= 1, "ribbon length must be positive");
    let slots = lambda.len() + n as usize + 1;
    let betas = beta_numbers(lambda, slots);
    let mut out = Vec::new();
    for (i, &b) in betas.iter().enumerate() {
        let target = b + n as i64;
        if betas.contains(&target) {
            continue;
        }
        let mut moved = betas.clone();
        moved[i] = target;
        let alpha = partition_from_betas(moved);
        let strip = BorderStrip::from_skew(&alpha, lambda);
        debug_assert_eq!(strip.length, n);
        out.push((alpha, strip));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// All partitions `beta` contained in `lambda` with `lambda - beta` a border
/// strip of length `n`, in descending lexicographic order of `beta`.
pub fn ribbons_remove(lambda: &Partition, n: u32) -> Vec<(Partition, BorderStrip)> {
    assert!(n >= 1, "ribbon length must be positive");
    let slots = lambda.len() + 1;
    let betas = beta_numbers(lambda, slots);
    let mut out = Vec::new();
    for (i, &b) in betas.iter().enumerate() {
        let target = b - n as i64;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        let mut moved = betas.clone();
        moved[i] = target;
        let beta = partition_from_betas(moved);
        let strip = BorderStrip::from_skew(lambda, &beta);
        debug_assert_eq!(strip.length, n);
        out.push((beta, strip));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

static ALL_PARTITIONS: LazyLock<RwLock<BTreeMap<u32, Vec<Partition>>>> =
    LazyLock::new(|| RwLock::new(BTreeMap::new()));

/// All partitions of `n`, in descending lexicographic order (a linear
/// extension of dominance, largest first). Memoized.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    if let Some(v) = ALL_PARTITIONS.read().unwrap().get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen_partitions(n, u32::MAX, &mut current, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    ALL_PARTITIONS.write().unwrap().insert(n, out.clone());
    out
}

fn gen_partitions(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    let top = rest.min(max);
    for p in (1..=top).rev() {
        current.push(p);
        gen_partitions(rest - p, p, current, out);
        current.pop();
    }
}
