//! Elastic dilations of the discrete plane: rate-driven column
//! stretching with row compression, their exact inverses, the induced
//! endomorphisms of the naturals and efficiency diagnostics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{info, isqrt, log2, nat, nth_root, Nat};
use crate::pairing::{pair, unpair, Point};

/// Rate function r(x) driving a dilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rate {
    /// r(x) = c
    Constant(Nat),
    /// r(x) = c·x
    Linear(Nat),
    /// r(x) = c·x^k
    Polynomial(Nat, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationSpec {
    pub rate: Rate,
}

impl DilationSpec {
    pub fn constant(c: u64) -> Self {
        DilationSpec {
            rate: Rate::Constant(nat(c)),
        }
    }

    pub fn linear(c: u64) -> Self {
        DilationSpec {
            rate: Rate::Linear(nat(c)),
        }
    }

    pub fn polynomial(c: u64, k: u32) -> Self {
        DilationSpec {
            rate: Rate::Polynomial(nat(c), k),
        }
    }

    pub fn rate_at(&self, x: &Nat) -> Nat {
        match &self.rate {
            Rate::Constant(c) => c.clone(),
            Rate::Linear(c) => c * x,
            Rate::Polynomial(c, k) => c * x.pow(*k),
        }
    }
}

/// (x, y) -> (x·r(x) + y mod r(x), floor(y / r(x))).
pub fn dilate(spec: &DilationSpec, p: &Point) -> Result<Point> {
    let r = spec.rate_at(&p.x);
    if r.is_zero() {
        return Err(Error::ZeroRate);
    }
    Ok(Point {
        x: &p.x * &r + &p.y % &r,
        y: &p.y / &r,
    })
}

/// Exact inverse on the image: recover the source column as the largest
/// x with x·r(x) <= q.x, then check the remainder fits under the rate.
/// Returns None for points outside the image (the dilation's gaps).
pub fn undilate(spec: &DilationSpec, q: &Point) -> Option<Point> {
    let x = match &spec.rate {
        Rate::Constant(c) => &q.x / c,
        Rate::Linear(c) => adjust_column(spec, isqrt(&(&q.x / c)), &q.x),
        Rate::Polynomial(c, k) => {
            adjust_column(spec, nth_root(&(&q.x / c), k + 1), &q.x)
        }
    };
    let r = spec.rate_at(&x);
    if r.is_zero() {
        // non-constant rate leaves column x = 0 undefined
        return None;
    }
    let base = &x * &r;
    if base > q.x {
        return None;
    }
    let d = &q.x - base;
    if d >= r {
        return None; // q sits in a gap between stretched columns
    }
    Some(Point {
        x,
        y: &q.y * &r + d,
    })
}

// the root-based guess can be off by one because of the inner floor
// division; climb to the exact maximal column
fn adjust_column(spec: &DilationSpec, mut x: Nat, target: &Nat) -> Nat {
    loop {
        let next = &x + 1u32;
        if &next * spec.rate_at(&next) <= *target {
            x = next;
        } else {
            break;
        }
    }
    while !x.is_zero() && &x * spec.rate_at(&x) > *target {
        x -= 1u32;
    }
    x
}

/// The endomorphism of the naturals a dilation induces through pairing.
pub fn induced_endo(spec: &DilationSpec, n: &Nat) -> Result<Nat> {
    Ok(pair(&dilate(spec, &unpair(n))?))
}

/// info(pair(dilate(p))) - info(x) - info(y).
pub fn dilation_efficiency(spec: &DilationSpec, p: &Point) -> Result<f64> {
    if p.x.is_zero() || p.y.is_zero() {
        return Err(Error::OutOfDomain(
            "efficiency needs both coordinates at least 1",
        ));
    }
    let image = dilate(spec, p)?;
    Ok(info(&pair(&image)) - info(&p.x) - info(&p.y))
}

#[derive(Debug, Clone)]
pub struct DilationSurfaceCell {
    pub x: Nat,
    pub y: Nat,
    pub delta: f64,
    /// y mod c for constant rates — labels the interleaved family
    pub residue: Option<Nat>,
}

/// Efficiency samples over [1,x_max] x [1,y_max]; constant rates carry a
/// residue column exposing the c interleaved families.
pub fn dilation_surface(
    spec: &DilationSpec,
    x_max: &Nat,
    y_max: &Nat,
    step: &Nat,
) -> Result<Vec<DilationSurfaceCell>> {
    if step.is_zero() {
        return Err(Error::OutOfDomain("step must be at least 1"));
    }
    let modulus = match &spec.rate {
        Rate::Constant(c) => Some(c.clone()),
        _ => None,
    };
    let mut grid = Vec::new();
    let mut y = nat(1);
    while &y <= y_max {
        let mut x = nat(1);
        while &x <= x_max {
            let p = Point {
                x: x.clone(),
                y: y.clone(),
            };
            grid.push(DilationSurfaceCell {
                x: x.clone(),
                y: y.clone(),
                delta: dilation_efficiency(spec, &p)?,
                residue: modulus.as_ref().map(|c| &y % c),
            });
            x += step;
        }
        y += step;
    }
    Ok(grid)
}

pub fn dilation_surface_to_csv(grid: &[DilationSurfaceCell]) -> String {
    let with_residue = grid.first().map(|c| c.residue.is_some()).unwrap_or(false);
    let mut out = String::from(if with_residue {
        "x,y,delta,residue\n"
    } else {
        "x,y,delta\n"
    });
    for cell in grid {
        match &cell.residue {
            Some(r) => out.push_str(&format!(
                "{},{},{:.6},{}\n",
                cell.x, cell.y, cell.delta, r
            )),
            None => out.push_str(&format!("{},{},{:.6}\n", cell.x, cell.y, cell.delta)),
        }
    }
    out
}

/// Closed-form limit of the shift introduced by the exact reference
/// dilation (c·x, y/c) along the ray y = h·x:
/// log2 of (c² + h)² / (c² (1 + h)²).
pub fn reference_ratio(c: &Nat, h: &BigRational) -> f64 {
    let c2 = BigRational::from(BigInt::from(c.clone()) * BigInt::from(c.clone()));
    let one = BigRational::one();
    let num = (&c2 + h) * (&c2 + h);
    let den = &c2 * (&one + h) * (&one + h);
    log2_rational(&(num / den))
}

/// Measured counterpart: log2 of pair(c·x, h·x/c) / pair(x, h·x) with all
/// arithmetic exact, so convergence to the closed form is visible at
/// large x without float noise.
pub fn empirical_reference_ratio(c: &Nat, h: &BigRational, x: &Nat) -> f64 {
    let xr = BigRational::from(BigInt::from(x.clone()));
    let cr = BigRational::from(BigInt::from(c.clone()));
    let pair_rational = |px: &BigRational, py: &BigRational| {
        let k = px + py;
        (&k * (&k + BigRational::one())) / BigRational::from(BigInt::from(2)) + py
    };
    let y = h * &xr;
    let plain = pair_rational(&xr, &y);
    let dilated = pair_rational(&(&cr * &xr), &(&y / &cr));
    log2_rational(&(dilated / plain))
}

fn log2_rational(q: &BigRational) -> f64 {
    assert!(q.is_positive());
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    log2(num) - log2(den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::point;
    use crate::pairing::pairing_efficiency;
    use crate::prng::SplitMix64;
    use std::collections::HashSet;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dilate_examples() {
        let c2 = DilationSpec::constant(2);
        assert_eq!(dilate(&c2, &point(1, 3)).unwrap(), point(3, 1));
        assert_eq!(dilate(&c2, &point(0, 0)).unwrap(), point(0, 0));
        let lin = DilationSpec::linear(1);
        assert_eq!(dilate(&lin, &point(3, 7)).unwrap(), point(10, 2));
        assert_eq!(dilate(&lin, &point(0, 0)), Err(Error::ZeroRate));
        let poly = DilationSpec::polynomial(1, 2);
        // r(2) = 4: (2,9) -> (2*4 + 1, 2)
        assert_eq!(dilate(&poly, &point(2, 9)).unwrap(), point(9, 2));
    }

    #[test]
    fn undilate_examples() {
        let c2 = DilationSpec::constant(2);
        assert_eq!(undilate(&c2, &point(3, 1)), Some(point(1, 3)));
        let lin = DilationSpec::linear(1);
        assert_eq!(undilate(&lin, &point(14, 0)), None);
        assert_eq!(undilate(&lin, &point(10, 2)), Some(point(3, 7)));
    }

    #[test]
    fn roundtrip_everywhere_defined() {
        let specs = [
            DilationSpec::constant(2),
            DilationSpec::constant(3),
            DilationSpec::constant(7),
            DilationSpec::linear(1),
            DilationSpec::linear(3),
            DilationSpec::polynomial(2, 2),
        ];
        let mut rng = SplitMix64::new(88);
        for spec in &specs {
            for _ in 0..300 {
                let x = match spec.rate {
                    Rate::Constant(_) => rng.below(1 << 20),
                    _ => 1 + rng.below(1 << 20),
                };
                let p = point(x, rng.below(1 << 20));
                let q = dilate(spec, &p).unwrap();
                assert_eq!(undilate(spec, &q), Some(p), "spec {spec:?}");
            }
        }
    }

    #[test]
    fn injective_on_rectangles() {
        for spec in [
            DilationSpec::constant(2),
            DilationSpec::constant(3),
            DilationSpec::constant(7),
            DilationSpec::linear(1),
        ] {
            let mut seen = HashSet::new();
            let x_lo = if matches!(spec.rate, Rate::Constant(_)) { 0 } else { 1 };
            for x in x_lo..256u64 {
                for y in 0..256u64 {
                    let q = dilate(&spec, &point(x, y)).unwrap();
                    assert!(seen.insert((q.x.clone(), q.y.clone())), "spec {spec:?}");
                }
            }
        }
    }

    #[test]
    fn induced_endo_values() {
        let c2 = DilationSpec::constant(2);
        assert_eq!(induced_endo(&c2, &nat(0)).unwrap(), nat(0));
        // n = 4 = pair(1,1): dilate -> (3,0), pair = 6
        assert_eq!(induced_endo(&c2, &nat(4)).unwrap(), nat(6));
        for c in [2u64, 3, 100] {
            let spec = DilationSpec::constant(c);
            let mut seen = HashSet::new();
            for n in 0u64..10_000 {
                let v = induced_endo(&spec, &nat(n)).unwrap();
                assert!(seen.insert(v), "c={c} n={n}");
            }
        }
    }

    #[test]
    fn interleaved_families_at_constant_rate() {
        // for c = 2 the image column is 2x + (y mod 2): the two residue
        // families land on columns of opposite parity, which is the
        // two-sheet interleaving visible in the efficiency surface
        let c2 = DilationSpec::constant(2);
        for x in 1u64..=4 {
            for y in 1u64..=19 {
                let q = dilate(&c2, &point(x, y)).unwrap();
                assert_eq!(&q.x % nat(2), nat(y % 2));
            }
        }
        let grid = dilation_surface(&c2, &nat(4), &nat(19), &nat(1)).unwrap();
        assert_eq!(grid.len(), 76);
        assert!(grid.iter().all(|cell| cell.residue.is_some()));
    }

    #[test]
    fn efficiency_diagonal_limit() {
        let c2 = DilationSpec::constant(2);
        let d = dilation_efficiency(&c2, &point(1_000_000, 1_000_000)).unwrap();
        let expect = 2.0 * 5f64.log2() - 3.0;
        assert!((d - expect).abs() < 0.01, "d={d}");
    }

    #[test]
    fn unit_rate_is_identity() {
        let c1 = DilationSpec::constant(1);
        let mut rng = SplitMix64::new(4);
        for _ in 0..100 {
            let p = point(1 + rng.below(10_000), 1 + rng.below(10_000));
            assert_eq!(dilate(&c1, &p).unwrap(), p);
            assert_eq!(
                dilation_efficiency(&c1, &p).unwrap(),
                pairing_efficiency(&p).unwrap()
            );
        }
    }

    #[test]
    fn unbounded_information_growth_on_diagonal() {
        // linear rate at x = y: the image index is about x^4/2, so the
        // efficiency grows like 2·log2 x
        let lin = DilationSpec::linear(1);
        for exp in [8u32, 16, 32] {
            let x = Nat::one() << exp;
            let p = Point { x: x.clone(), y: x };
            let d = dilation_efficiency(&lin, &p).unwrap();
            assert!(d >= 2.0 * exp as f64 - 2.0, "exp={exp} d={d}");
        }
    }

    #[test]
    fn gap_columns_under_linear_rate() {
        let lin = DilationSpec::linear(1);
        let mut columns = HashSet::new();
        for x in 1u64..=32 {
            for y in 0u64..=32 {
                columns.insert(dilate(&lin, &point(x, y)).unwrap().x);
            }
        }
        assert!(!columns.contains(&nat(14)));
        assert!(!columns.contains(&nat(15)));
        // the occupied band at x = 3 is 9..=11, then x = 4 restarts at 16
        assert!(columns.contains(&nat(11)));
        assert!(columns.contains(&nat(16)));
    }

    #[test]
    fn positive_efficiency_for_constant_rates() {
        let c3 = DilationSpec::constant(3);
        for exp in [10u32, 14, 17, 20] {
            let v = 1u64 << exp;
            let d = dilation_efficiency(&c3, &point(v, v)).unwrap();
            assert!(d > 0.0, "exp={exp} d={d}");
        }
    }

    #[test]
    fn reference_ratio_values() {
        assert_eq!(reference_ratio(&nat(1), &rational(7, 3)), 0.0);
        let r = reference_ratio(&nat(2), &rational(1, 1));
        assert!((r - (25f64 / 16.0).log2()).abs() < 1e-12);
        for (c, h) in [(2u64, rational(1, 1)), (3, rational(2, 1))] {
            let closed = reference_ratio(&nat(c), &h);
            let measured = empirical_reference_ratio(&nat(c), &h, &nat(1_000_000));
            assert!((closed - measured).abs() < 1e-3, "c={c}");
        }
    }

    #[test]
    fn surface_csv_schema() {
        let c2 = DilationSpec::constant(2);
        let grid = dilation_surface(&c2, &nat(2), &nat(2), &nat(1)).unwrap();
        let csv = dilation_surface_to_csv(&grid);
        assert!(csv.starts_with("x,y,delta,residue\n"));
        let lin = DilationSpec::linear(1);
        let grid = dilation_surface(&lin, &nat(2), &nat(2), &nat(1)).unwrap();
        assert!(dilation_surface_to_csv(&grid).starts_with("x,y,delta\n"));
    }
}
