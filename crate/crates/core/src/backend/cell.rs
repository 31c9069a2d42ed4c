//! Geometric cells: k-adic subintervals of `[0,1)` and dyadic sub-boxes of `[0,1)^d`.
//!
//! A cell stores, per axis, the base-`b` digit string of its nested interval, coarsest
//! digit first. The interval `[a·b^-e, (a+1)·b^-e)` has `e` digits spelling `a`.
//! This representation never overflows, makes containment a prefix test and turns
//! the affine transport of a cell into a parent cell into digit concatenation.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    axes: Vec<Vec<u8>>,
}

/// Compare the lower endpoints of two intervals given by digit strings.
fn cmp_corner(a: &[u8], b: &[u8]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        match x.cmp(&y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl Ord for Cell {
    /// Lexicographic on the lower corner, then on the exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.axes.iter().zip(&other.axes) {
            match cmp_corner(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        for (a, b) in self.axes.iter().zip(&other.axes) {
            match a.len().cmp(&b.len()) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.axes.len().cmp(&other.axes.len())
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Cell {
    /// The whole unit cell in `dim` dimensions.
    pub fn unit(dim: usize) -> Self {
        Cell { axes: vec![Vec::new(); dim] }
    }

    pub fn from_axes(axes: Vec<Vec<u8>>) -> Self {
        Cell { axes }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, i: usize) -> &[u8] {
        &self.axes[i]
    }

    pub fn axes(&self) -> &[Vec<u8>] {
        &self.axes
    }

    pub fn exponent(&self, axis: usize) -> usize {
        self.axes[axis].len()
    }

    /// Total number of digits; the cell has volume `b^-depth`.
    pub fn depth(&self) -> usize {
        self.axes.iter().map(Vec::len).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.axes.iter().all(Vec::is_empty)
    }

    /// The `digit`-th child after cutting along `axis`.
    pub fn child(&self, axis: usize, digit: u8) -> Cell {
        let mut axes = self.axes.clone();
        axes[axis].push(digit);
        Cell { axes }
    }

    /// Image of `inner` (a cell of the unit cube) under the affine bijection onto `self`.
    pub fn transport(&self, inner: &Cell) -> Cell {
        debug_assert_eq!(self.dim(), inner.dim());
        let axes = self
            .axes
            .iter()
            .zip(&inner.axes)
            .map(|(outer, inner)| {
                let mut v = Vec::with_capacity(outer.len() + inner.len());
                v.extend_from_slice(outer);
                v.extend_from_slice(inner);
                v
            })
            .collect();
        Cell { axes }
    }

    pub fn contains(&self, other: &Cell) -> bool {
        self.axes
            .iter()
            .zip(&other.axes)
            .all(|(a, b)| b.starts_with(a))
    }

    /// Inverse of [`Cell::transport`]: the position of `self` inside `outer`.
    pub fn relative_to(&self, outer: &Cell) -> Option<Cell> {
        if !outer.contains(self) {
            return None;
        }
        let axes = self
            .axes
            .iter()
            .zip(&outer.axes)
            .map(|(a, o)| a[o.len()..].to_vec())
            .collect();
        Some(Cell { axes })
    }

    /// Nested-or-disjoint per axis, so a nonempty intersection is again a cell.
    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        let mut axes = Vec::with_capacity(self.dim());
        for (a, b) in self.axes.iter().zip(&other.axes) {
            if a.starts_with(b) {
                axes.push(a.clone());
            } else if b.starts_with(a) {
                axes.push(b.clone());
            } else {
                return None;
            }
        }
        Some(Cell { axes })
    }

    pub fn is_disjoint(&self, other: &Cell) -> bool {
        self.intersect(other).is_none()
    }

    /// The smallest cell containing both.
    pub fn join(&self, other: &Cell) -> Cell {
        let axes = self
            .axes
            .iter()
            .zip(&other.axes)
            .map(|(a, b)| {
                let n = a.iter().zip(b).take_while(|(x, y)| x == y).count();
                a[..n].to_vec()
            })
            .collect();
        Cell { axes }
    }

    /// Offset `a` of the interval `[a·b^-e, (a+1)·b^-e)` on one axis.
    pub fn offset(&self, axis: usize, base: u32) -> BigUint {
        self.axes[axis]
            .iter()
            .fold(BigUint::from(0u32), |acc, &d| acc * base + d)
    }

    /// Build a cell from `(exponent, offset)` pairs; `None` if an offset is out of range.
    pub fn from_offsets(pairs: &[(usize, BigUint)], base: u32) -> Option<Cell> {
        let mut axes = Vec::with_capacity(pairs.len());
        for (e, a) in pairs {
            let limit = BigUint::from(base).pow(*e as u32);
            if a >= &limit {
                return None;
            }
            let mut digits = vec![0u8; *e];
            let mut rest = a.clone();
            for slot in digits.iter_mut().rev() {
                let r = &rest % base;
                *slot = r.to_u32_digits().first().copied().unwrap_or(0) as u8;
                rest /= base;
            }
            axes.push(digits);
        }
        Some(Cell { axes })
    }
}

/// Decide whether cells of the given depths (relative to a common parent) have total
/// volume exactly one in base `base`. Uses exact carrying, no floating point.
pub(crate) fn volumes_sum_to_one(depths: impl IntoIterator<Item = usize>, base: u32) -> bool {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for d in depths {
        *counts.entry(d).or_default() += 1;
    }
    let Some(&max) = counts.keys().next_back() else {
        return false;
    };
    let base = base as u64;
    for d in (1..=max).rev() {
        let c = counts.get(&d).copied().unwrap_or(0);
        if c % base != 0 {
            return false;
        }
        if c > 0 {
            *counts.entry(d - 1).or_default() += c / base;
        }
    }
    counts.get(&0).copied() == Some(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(axes: &[&[u8]]) -> Cell {
        Cell::from_axes(axes.iter().map(|a| a.to_vec()).collect())
    }

    #[test]
    fn corner_order_is_lexicographic() {
        // [0,1/2)x[1/2,1) < [1/2,1)x[0,1)
        assert!(c(&[&[0], &[1]]) < c(&[&[1], &[]]));
        // same corner: coarser exponent first
        assert!(c(&[&[]]) < c(&[&[0]]));
        assert_eq!(cmp_corner(&[0, 0], &[]), Ordering::Equal);
    }

    #[test]
    fn transport_and_relative_are_inverse() {
        let outer = c(&[&[1], &[0, 1]]);
        let inner = c(&[&[0, 1], &[1]]);
        let t = outer.transport(&inner);
        assert_eq!(t, c(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(t.relative_to(&outer), Some(inner));
        assert!(outer.contains(&t));
        assert!(!t.contains(&outer));
    }

    #[test]
    fn intersection_and_join() {
        let a = c(&[&[0], &[]]);
        let b = c(&[&[], &[1]]);
        assert_eq!(a.intersect(&b), Some(c(&[&[0], &[1]])));
        assert!(c(&[&[0]]).is_disjoint(&c(&[&[1]])));
        assert_eq!(c(&[&[0, 1]]).join(&c(&[&[0, 0, 1]])), c(&[&[0]]));
    }

    #[test]
    fn offsets_round_trip() {
        let cell = c(&[&[1, 0, 1], &[2]]);
        assert_eq!(cell.offset(0, 3), BigUint::from(10u32));
        let pairs = vec![(3, BigUint::from(10u32)), (1, BigUint::from(2u32))];
        assert_eq!(Cell::from_offsets(&pairs, 3), Some(cell));
        assert_eq!(Cell::from_offsets(&[(1, BigUint::from(2u32))], 2), None);
    }

    #[test]
    fn volume_carry() {
        assert!(volumes_sum_to_one([1, 2, 2], 2));
        assert!(volumes_sum_to_one([0], 2));
        assert!(!volumes_sum_to_one([1, 2], 2));
        assert!(!volumes_sum_to_one([1, 1, 1], 2));
        assert!(volumes_sum_to_one([1, 1, 2, 2, 2], 3));
        assert!(!volumes_sum_to_one([], 2));
    }
}
