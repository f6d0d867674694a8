//! Lattice-triangle decompositions certified by Pick's theorem.
//!
//! A vector `z` with `z.m >= 1` splits as `z = x + y` with `gcd(x) = 1`,
//! both summands nonnegative in the first coordinate, `det[x y] != 0`, and
//! the triangle `(0, x, x + y)` free of interior lattice points. Emptiness
//! is certified arithmetically: by Pick's theorem the triangle has no
//! interior points exactly when `|det[x y]| = d(x) + d(y) + d(z) - 2`.

use num_integer::Integer;

use crate::error::{Error, Result};

pub type Vec2 = (i64, i64);

pub fn gcd_of(v: Vec2) -> i64 {
    v.0.abs().gcd(&v.1.abs()).max(1)
}

pub fn det(x: Vec2, y: Vec2) -> i64 {
    x.0 * y.1 - x.1 * y.0
}

/// Well-founded measure driving the recursive construction: first
/// coordinate, then the absolute second coordinate.
fn measure(v: Vec2) -> (i64, i64) {
    (v.0, v.1.abs())
}

/// Pick certificate for the triangle `(0, x, x+y)` having no interior
/// lattice points.
pub fn is_empty_triangle(x: Vec2, y: Vec2) -> bool {
    let z = (x.0 + y.0, x.1 + y.1);
    let d = det(x, y);
    d != 0 && d.abs() == gcd_of(x) + gcd_of(y) + gcd_of(z) - 2
}

/// Brute-force count of interior lattice points of the triangle
/// `(0, x, x+y)`; independent of the Pick certificate.
pub fn interior_points(x: Vec2, y: Vec2) -> u64 {
    let z = (x.0 + y.0, x.1 + y.1);
    let xs = [0, x.0, z.0];
    let ys = [0, x.1, z.1];
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut count = 0;
    for px in x0..=x1 {
        for py in y0..=y1 {
            let c1 = det(x, (px, py));
            let c2 = det((z.0 - x.0, z.1 - x.1), (px - x.0, py - x.1));
            let c3 = det((-z.0, -z.1), (px - z.0, py - z.1));
            if (c1 > 0 && c2 > 0 && c3 > 0) || (c1 < 0 && c2 < 0 && c3 < 0) {
                count += 1;
            }
        }
    }
    count
}

/// Split `z` (with `z.0 >= 1`, `z != (1,0)`) into an admissible pair
/// `(x, y)`: `x + y = z`, `gcd(x) = 1`, both first coordinates nonnegative,
/// nonzero determinant, empty triangle, and both summands strictly smaller
/// in the well-founded measure.
pub fn pick_decomposition(z: Vec2) -> Result<(Vec2, Vec2)> {
    if z.0 < 1 || z == (1, 0) {
        return Err(Error::DecompositionNotFound(z.0, z.1));
    }

    // Canonical fast path along the column z = (1, n).
    if z.0 == 1 {
        let s = z.1.signum();
        let x = (0, s);
        let y = (1, z.1 - s);
        debug_assert!(is_empty_triangle(x, y));
        return Ok((x, y));
    }
    // Canonical fast path along rays over (1, n'): z = k (1, n'), k >= 2.
    let k = gcd_of(z);
    if k >= 2 && z.0 == k {
        let np = z.1 / k;
        let x = (1, np + 1);
        let y = (k - 1, (k - 1) * np - 1);
        debug_assert!(is_empty_triangle(x, y));
        return Ok((x, y));
    }

    // Deterministic brute force, preferring the smallest |det|.
    let bound = z.1.abs() + z.0;
    let mut best: Option<(i64, (Vec2, Vec2))> = None;
    for x0 in 0..=z.0 {
        for x1 in -bound..=bound {
            let x = (x0, x1);
            if x == (0, 0) || gcd_of(x) != 1 {
                continue;
            }
            let y = (z.0 - x.0, z.1 - x.1);
            if y == (0, 0) {
                continue;
            }
            let d = det(x, y);
            if d == 0 {
                continue;
            }
            if measure(x) >= measure(z) || measure(y) >= measure(z) {
                continue;
            }
            if !is_empty_triangle(x, y) {
                continue;
            }
            if best.as_ref().map(|(bd, _)| d.abs() < *bd).unwrap_or(true) {
                best = Some((d.abs(), (x, y)));
            }
        }
    }
    best.map(|(_, pair)| pair)
        .ok_or(Error::DecompositionNotFound(z.0, z.1))
}
