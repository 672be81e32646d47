//! The Cantor pairing bijection between the discrete plane and the
//! naturals, taxicab geometry and the pairing efficiency surface.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{binary_entropy, info, isqrt, nat, Nat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Nat,
    pub y: Nat,
}

pub fn point(x: u64, y: u64) -> Point {
    Point {
        x: nat(x),
        y: nat(y),
    }
}

/// One sampled cell of an efficiency surface.
#[derive(Debug, Clone)]
pub struct SurfaceCell {
    pub x: Nat,
    pub y: Nat,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub struct SurfaceSample {
    pub grid: Vec<SurfaceCell>,
    pub step: Nat,
}

/// Counter-diagonal traversal of the plane: (x,y) -> (x+y)(x+y+1)/2 + y.
pub fn pair(p: &Point) -> Nat {
    let k = &p.x + &p.y;
    (&k * (&k + 1u32)) / 2u32 + &p.y
}

/// Exact inverse via the triangular root w = (isqrt(8z+1) - 1) / 2.
pub fn unpair(z: &Nat) -> Point {
    let w = (isqrt(&((z << 3u32) + 1u32)) - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    Point { x, y }
}

pub fn taxicab(a: &Point, b: &Point) -> Nat {
    let dx = if a.x >= b.x { &a.x - &b.x } else { &b.x - &a.x };
    let dy = if a.y >= b.y { &a.y - &b.y } else { &b.y - &a.y };
    dx + dy
}

/// Entropy of the ascending lattice paths from the origin to `p`:
/// the binary entropy of x/(x+y).
pub fn path_entropy(p: &Point) -> Result<f64> {
    let k = &p.x + &p.y;
    if k.is_zero() {
        return Err(Error::OutOfDomain("path entropy is undefined at the origin"));
    }
    let ratio = ratio_f64(&p.x, &k);
    Ok(binary_entropy(ratio))
}

fn ratio_f64(num: &Nat, den: &Nat) -> f64 {
    // both fit comfortably after scaling to 64 significant bits
    let shift = den.bits().saturating_sub(53);
    let n = (num >> shift).to_f64().unwrap_or(0.0);
    let d = (den >> shift).to_f64().expect("denominator nonzero");
    n / d
}

/// Information efficiency of pairing at `p`: info(pair(p)) - info(x) - info(y).
pub fn pairing_efficiency(p: &Point) -> Result<f64> {
    if p.x.is_zero() || p.y.is_zero() {
        return Err(Error::OutOfDomain(
            "efficiency needs both coordinates at least 1",
        ));
    }
    Ok(info(&pair(p)) - info(&p.x) - info(&p.y))
}

/// Lattice samples of the pairing efficiency over [1,x_max] x [1,y_max].
/// Rows are emitted y-major, x fastest, so CSV output is reproducible.
pub fn efficiency_surface(x_max: &Nat, y_max: &Nat, step: &Nat) -> Result<SurfaceSample> {
    if step.is_zero() {
        return Err(Error::OutOfDomain("step must be at least 1"));
    }
    let mut grid = Vec::new();
    let mut y = nat(1);
    while &y <= y_max {
        let mut x = nat(1);
        while &x <= x_max {
            let p = Point {
                x: x.clone(),
                y: y.clone(),
            };
            grid.push(SurfaceCell {
                x: x.clone(),
                y: y.clone(),
                delta: pairing_efficiency(&p)?,
            });
            x += step;
        }
        y += step;
    }
    Ok(SurfaceSample {
        grid,
        step: step.clone(),
    })
}

/// CSV rendering with header `x,y,delta`, deltas at 6 fractional digits.
pub fn surface_to_csv(s: &SurfaceSample) -> String {
    let mut out = String::from("x,y,delta\n");
    for cell in &s.grid {
        out.push_str(&format!("{},{},{:.6}\n", cell.x, cell.y, cell.delta));
    }
    out
}
