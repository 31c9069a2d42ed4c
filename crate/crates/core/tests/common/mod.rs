//! Shared test helpers: a grid-point oracle for realized spans, and small enumerations.

#![allow(dead_code)]

use opgroup::backend::Placement;
use opgroup::markings::{MarkedArrow, SemiPartitionClass};
use opgroup::{enumerate, Backend, Flavor, Span};

/// A point of the disjoint union of unit cells: coordinate `target`, and per axis the
/// rational `a / base^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub target: usize,
    pub axes: Vec<(u128, u32)>,
}

fn pow(base: u32, e: u32) -> u128 {
    (base as u128).pow(e)
}

fn offset(digits: &[u8], base: u32) -> u128 {
    digits.iter().fold(0u128, |acc, &d| acc * base as u128 + d as u128)
}

impl Point {
    fn normalized(mut self, base: u32) -> Point {
        for (a, e) in &mut self.axes {
            while *e > 0 && *a % base as u128 == 0 {
                *a /= base as u128;
                *e -= 1;
            }
        }
        self
    }
}

/// Does the cell of `p` contain the point?
fn contains(p: &Placement, x: &Point, base: u32) -> bool {
    if p.target != x.target {
        return false;
    }
    x.axes.iter().enumerate().all(|(j, &(a, e))| {
        let digits = p.cell.axis(j);
        let big_e = digits.len() as u32;
        let (a, e) = if e < big_e { (a * pow(base, big_e - e), big_e) } else { (a, e) };
        a / pow(base, e - big_e) == offset(digits, base)
    })
}

/// Affine image of `x` (inside `from`) in `to`.
fn transport(from: &Placement, to: &Placement, x: &Point, base: u32) -> Point {
    let axes = x
        .axes
        .iter()
        .enumerate()
        .map(|(j, &(a, e))| {
            let (src, dst) = (from.cell.axis(j), to.cell.axis(j));
            let big_e = src.len() as u32;
            let (a, e) = if e < big_e { (a * pow(base, big_e - e), big_e) } else { (a, e) };
            let shift = pow(base, e - big_e);
            let local = a - offset(src, base) * shift;
            (offset(dst, base) * shift + local, e - big_e + dst.len() as u32)
        })
        .collect();
    Point { target: to.target, axes }.normalized(base)
}

/// The realized map of a span: denominator cells onto numerator cells.
pub fn eval(pieces: &[(Placement, Placement)], x: &Point, base: u32) -> Point {
    let (from, to) = pieces
        .iter()
        .find(|(d, _)| contains(d, x, base))
        .expect("denominator cells cover the base word");
    transport(from, to, x, base)
}

/// Per-axis resolution: one digit finer than every cell of the given pieces.
fn resolution(pieces: &[&[(Placement, Placement)]], dim: usize) -> Vec<u32> {
    (0..dim)
        .map(|j| {
            pieces
                .iter()
                .flat_map(|ps| ps.iter())
                .flat_map(|(d, n)| [d.cell.exponent(j), n.cell.exponent(j)])
                .max()
                .unwrap_or(0) as u32
                + 1
        })
        .collect()
}

/// All grid points of `base_len` coordinates at the given per-axis resolution.
fn grid(base_len: usize, res: &[u32], base: u32) -> Vec<Point> {
    let mut points = Vec::new();
    for target in 0..base_len {
        let mut cur = vec![Vec::new()];
        for &k in res {
            let n = pow(base, k);
            cur = cur
                .into_iter()
                .flat_map(|p: Vec<(u128, u32)>| {
                    (0..n).map(move |a| {
                        let mut q = p.clone();
                        q.push((a, k));
                        q
                    })
                })
                .collect();
        }
        points.extend(cur.into_iter().map(|axes| Point { target, axes }.normalized(base)));
    }
    points
}

/// Oracle for span equality: the realized maps agree on every grid point one digit
/// finer than all breakpoints.
pub fn grid_equal(g: &Span, h: &Span, base: u32) -> bool {
    let (pg, ph) = (g.realize(), h.realize());
    let dim = g.den().dim();
    let res = resolution(&[&pg, &ph], dim);
    grid(g.base(), &res, base)
        .iter()
        .all(|x| eval(&pg, x, base) == eval(&ph, x, base))
}

/// The realized map of `g * h` is that of `g` followed by that of `h`.
pub fn grid_product_law(g: &Span, h: &Span, gh: &Span, base: u32) -> bool {
    let (pg, ph, pgh) = (g.realize(), h.realize(), gh.realize());
    let res = resolution(&[&pgh], g.den().dim());
    grid(g.base(), &res, base)
        .iter()
        .all(|x| eval(&pgh, x, base) == eval(&ph, &eval(&pg, x, base), base))
}

pub fn tree(k: u8) -> Backend {
    Backend::kary_tree(k, Flavor::Symmetric).unwrap()
}

pub fn cube(d: u8) -> Backend {
    Backend::dyadic_cube(d, Flavor::Symmetric).unwrap()
}

/// Every marked arrow over `base` with at most `depth` generators, arbitrary
/// permutation, arbitrary partial marking.
pub fn marked_arrows(backend: &Backend, base: usize, depth: usize) -> Vec<MarkedArrow> {
    let ordered = !backend.is_symmetric();
    enumerate::arrows(backend, base, depth)
        .into_iter()
        .flat_map(|a| {
            enumerate::partial_markings(a.domain(), ordered)
                .into_iter()
                .map(move |m| MarkedArrow::new(a.clone(), m).unwrap())
        })
        .collect()
}

/// Fully marked classes over `base` with at most `depth` generators, not deduplicated.
pub fn partitions(backend: &Backend, base: usize, depth: usize) -> Vec<SemiPartitionClass> {
    let ordered = !backend.is_symmetric();
    enumerate::planar_arrows(backend, base, depth)
        .into_iter()
        .flat_map(|a| {
            enumerate::full_markings(a.domain(), ordered)
                .into_iter()
                .map(move |m| SemiPartitionClass::new(MarkedArrow::new(a.clone(), m).unwrap()))
        })
        .collect()
}
