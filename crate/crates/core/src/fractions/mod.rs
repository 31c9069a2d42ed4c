//! Group elements as spans `x <- a -> x`: the denominator comes first.

use std::collections::HashMap;

use crate::backend::{realize, Cell, Operation, Placement};
use crate::category::{Arrow, Permutation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    den: Arrow,
    num: Arrow,
}

impl Span {
    pub fn new(den: Arrow, num: Arrow) -> Result<Self> {
        if den.domain() != num.domain() {
            return Err(Error::SizeMismatch { expected: den.domain(), got: num.domain() });
        }
        if den.codomain() != num.codomain() {
            return Err(Error::CodomainMismatch(den.codomain(), num.codomain()));
        }
        Ok(Span { den, num })
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let id = Arrow::identity(n, dim);
        Span { den: id.clone(), num: id }
    }

    pub fn den(&self) -> &Arrow {
        &self.den
    }

    pub fn num(&self) -> &Arrow {
        &self.num
    }

    /// Length of the base word.
    pub fn base(&self) -> usize {
        self.den.codomain()
    }

    fn same_base(&self, other: &Span) -> Result<()> {
        if self.base() != other.base() {
            return Err(Error::BaseMismatch(self.base(), other.base()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Span) -> Result<Span> {
        self.same_base(other)?;
        let (b1, b2) = Arrow::square_fill(&self.num, &other.den)?;
        Ok(Span { den: b1.compose(&self.den)?, num: b2.compose(&other.num)? })
    }

    pub fn inv(&self) -> Span {
        Span { den: self.num.clone(), num: self.den.clone() }
    }

    /// Equality in the fundamental group: bring both to a common denominator and
    /// compare numerators.
    pub fn equiv(&self, other: &Span) -> Result<bool> {
        self.same_base(other)?;
        let (b1, b2) = Arrow::square_fill(&self.den, &other.den)?;
        Ok(b1.compose(&self.num)? == b2.compose(&other.num)?)
    }

    pub fn is_trivial(&self) -> bool {
        self.den == self.num
    }

    pub fn pow(&self, n: i64, base: u32) -> Span {
        let g = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Span::identity(self.base(), self.den.dim());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&g).expect("same base").reduce(base);
        }
        acc
    }

    /// Least `1 <= n <= max_n` with `self^n` trivial.
    pub fn order(&self, max_n: usize, base: u32) -> Option<usize> {
        let mut acc = self.reduce(base);
        for n in 1..=max_n {
            if acc.is_trivial() {
                return Some(n);
            }
            acc = acc.mul(self).expect("same base").reduce(base);
        }
        None
    }

    pub fn tensor(&self, other: &Span) -> Span {
        Span { den: self.den.tensor(&other.den), num: self.num.tensor(&other.num) }
    }

    /// Precompose both legs with `a`; the element is unchanged.
    pub fn expand(&self, a: &Arrow) -> Result<Span> {
        Ok(Span { den: a.compose(&self.den)?, num: a.compose(&self.num)? })
    }

    /// Postcompose both legs with `a` (conjugation by the fraction of `a`).
    pub fn push_forward(&self, a: &Arrow) -> Result<Span> {
        Ok(Span { den: self.den.compose(a)?, num: self.num.compose(a)? })
    }

    /// The realized piecewise map, one piece per domain coordinate: the denominator
    /// cell is sent affinely onto the numerator cell.
    pub fn realize(&self) -> Vec<(Placement, Placement)> {
        realize(&self.den).into_iter().zip(realize(&self.num)).collect()
    }

    /// Remove generators common to both legs, one sibling group at a time. The result
    /// is an equal element with smaller legs.
    pub fn reduce(&self, base: u32) -> Span {
        let dim = self.den.dim();
        let mut pieces = self.realize();
        while let Some(merged) = merge_once(&pieces, base, dim) {
            pieces = merged;
        }
        let (d, n): (Vec<_>, Vec<_>) = pieces.into_iter().unzip();
        let den = Arrow::from_placements(&d, self.base(), dim).expect("merged pieces partition");
        let num = Arrow::from_placements(&n, self.base(), dim).expect("merged pieces partition");
        Span { den, num }
    }
}

type Piece = (Placement, Placement);

/// Parent and last digit along `axis`, if the cell was cut there.
fn parent(cell: &Cell, axis: usize) -> Option<(Cell, u8)> {
    let digits = cell.axis(axis);
    let (&last, _) = digits.split_last()?;
    let mut axes = cell.axes().to_vec();
    axes[axis].pop();
    Some((Cell::from_axes(axes), last))
}

/// Find `base` pieces whose denominator cells are the children of one cell along one
/// axis, and whose numerator cells are the children of one cell along the same axis, in
/// the same order.
fn merge_once(pieces: &[Piece], base: u32, dim: usize) -> Option<Vec<Piece>> {
    let index: HashMap<&Placement, usize> = pieces.iter().enumerate().map(|(i, p)| (&p.0, i)).collect();
    for (first, (d0, n0)) in pieces.iter().enumerate() {
        for axis in 0..dim {
            let Some((dp, 0)) = parent(&d0.cell, axis) else { continue };
            let group: Option<Vec<usize>> = (0..base as u8)
                .map(|t| {
                    let key = Placement { target: d0.target, cell: dp.child(axis, t) };
                    index.get(&key).copied()
                })
                .collect();
            let Some(group) = group else { continue };
            // the affine pieces act axis by axis, so the numerator must split along
            // the same axis
            let Some((np, 0)) = parent(&n0.cell, axis) else { continue };
            let aligned = group.iter().enumerate().all(|(t, &j)| {
                let n = &pieces[j].1;
                n.target == n0.target && n.cell == np.child(axis, t as u8)
            });
            if !aligned {
                continue;
            }
            let merged = (
                Placement { target: d0.target, cell: dp },
                Placement { target: n0.target, cell: np },
            );
            let mut out: Vec<Piece> = Vec::with_capacity(pieces.len() + 1 - base as usize);
            for (i, p) in pieces.iter().enumerate() {
                if i == first {
                    out.push(merged.clone());
                } else if !group.contains(&i) {
                    out.push(p.clone());
                }
            }
            if still_valid(&out, base, dim) {
                return Some(out);
            }
        }
    }
    None
}

/// Coarsening a guillotine partition can break guillotine realizability when `dim > 1`.
fn still_valid(pieces: &[Piece], base: u32, dim: usize) -> bool {
    if dim == 1 {
        return true;
    }
    let side_ok = |pick: fn(&Piece) -> &Placement| {
        let mut groups: HashMap<usize, Vec<Cell>> = HashMap::new();
        for p in pieces {
            let pl = pick(p);
            groups.entry(pl.target).or_default().push(pl.cell.clone());
        }
        groups
            .values()
            .all(|cells| Operation::validate_cells(cells, base, dim).is_ok())
    };
    side_ok(|p| &p.0) && side_ok(|p| &p.1)
}

/// A span from a permutation of the base word: `(id, sigma)`.
pub fn permutation_span(sigma: Permutation, dim: usize) -> Span {
    Span { den: Arrow::identity(sigma.len(), dim), num: Arrow::permutation(sigma, dim) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{Backend, Flavor};

    fn caret() -> Arrow {
        Arrow::from_operations(vec![Backend::kary_tree(2, Flavor::Symmetric).unwrap().caret()])
    }

    fn left_comb() -> Arrow {
        let c = Backend::kary_tree(2, Flavor::Symmetric).unwrap().caret();
        Arrow::from_operations(vec![c.compose(0, &c).unwrap()])
    }

    fn right_comb() -> Arrow {
        let c = Backend::kary_tree(2, Flavor::Symmetric).unwrap().caret();
        Arrow::from_operations(vec![c.compose(1, &c).unwrap()])
    }

    fn swap() -> Arrow {
        Arrow::permutation(Permutation::transposition(2, 0, 1), 1)
    }

    #[test]
    fn reduce_keeps_cut_axes_apart() {
        let c = Backend::dyadic_cube(2, Flavor::Symmetric).unwrap();
        let g = c.generators();
        // left half onto bottom half: a genuine element, not the identity
        let turn = Span::new(
            Arrow::from_operations(vec![g[0].clone()]),
            Arrow::from_operations(vec![g[1].clone()]),
        )
        .unwrap();
        let r = turn.reduce(2);
        assert!(!r.is_trivial());
        assert!(r.equiv(&turn).unwrap());
    }

    #[test]
    fn group_laws_on_small_elements() {
        let g = Span::new(caret(), swap().compose(&caret()).unwrap()).unwrap();
        let one = Span::identity(1, 1);
        assert!(one.mul(&g).unwrap().equiv(&g).unwrap());
        assert!(g.mul(&g.inv()).unwrap().equiv(&one).unwrap());
        assert!(g.inv().mul(&g).unwrap().equiv(&one).unwrap());
        assert_eq!(g.inv().inv(), g);
        assert!(!g.equiv(&one).unwrap());
        assert_eq!(g.order(4, 2), Some(2));
        assert_eq!(one.order(4, 2), Some(1));
    }

    #[test]
    fn common_factor_cancels() {
        let c = Arrow::from_operations(vec![
            Backend::kary_tree(2, Flavor::Symmetric).unwrap().caret(),
            Operation::identity(1),
            Operation::identity(1),
        ]);
        let a = left_comb();
        let b = Arrow::permutation(Permutation::new(vec![2, 0, 1]).unwrap(), 1)
            .compose(&left_comb())
            .unwrap();
        let g = Span::new(a.clone(), b.clone()).unwrap();
        let h = g.expand(&c).unwrap();
        assert!(g.equiv(&h).unwrap());
        assert!(Span::new(a.clone(), a).unwrap().equiv(&Span::identity(1, 1)).unwrap());
    }

    #[test]
    fn infinite_element_has_no_small_power() {
        let g = Span::new(left_comb(), right_comb()).unwrap();
        assert!(!g.pow(5, 2).is_trivial());
        assert!(g.pow(0, 2).is_trivial());
        assert!(g.pow(3, 2).mul(&g.pow(-3, 2)).unwrap().equiv(&Span::identity(1, 1)).unwrap());
        assert_eq!(g.order(64, 2), None);
    }

    #[test]
    fn reduce_cancels_padding() {
        let g = Span::new(left_comb(), right_comb()).unwrap();
        let pad = Arrow::from_operations(vec![
            Operation::identity(1),
            Backend::kary_tree(2, Flavor::Symmetric).unwrap().caret(),
            Operation::identity(1),
        ]);
        assert_eq!(g.expand(&pad).unwrap().reduce(2), g);
        assert_eq!(Span::new(caret(), caret()).unwrap().reduce(2), Span::identity(1, 1));
    }

    #[test]
    fn base_mismatch() {
        let g = Span::identity(1, 1);
        let h = Span::identity(2, 1);
        assert_eq!(g.mul(&h), Err(Error::BaseMismatch(1, 2)));
        assert_eq!(g.equiv(&h), Err(Error::BaseMismatch(1, 2)));
    }
}
