use super::cell::{volumes_sum_to_one, Cell};
use super::cuttree::CutTree;
use crate::category::Permutation;
use crate::error::{Error, Result};

/// An operation of the operad: an ordered sequence of cells partitioning the unit cell.
///
/// Input `i` of the operation is the cell `cells[i]`. Operations stored inside arrows are
/// canonical (cells sorted), which is the planar representative of each symmetric orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    cells: Vec<Cell>,
}

/// Output of [`Operation::common_refinement`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub refined: Operation,
    /// One canonical operation per input of the left operand.
    pub left_forest: Vec<Operation>,
    pub right_forest: Vec<Operation>,
    /// Grafting `left_forest` into the left operand lists the refined cells in graft order;
    /// input `i` of that graft is input `left_perm(i)` of `refined`.
    pub left_perm: Permutation,
    pub right_perm: Permutation,
}

impl Operation {
    pub fn identity(dim: usize) -> Self {
        Operation { cells: vec![Cell::unit(dim)] }
    }

    /// Caller guarantees the cells partition the unit cell.
    pub(crate) fn from_cells_unchecked(cells: Vec<Cell>) -> Self {
        debug_assert!(!cells.is_empty());
        Operation { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn arity(&self) -> usize {
        self.cells.len()
    }

    pub fn dim(&self) -> usize {
        self.cells[0].dim()
    }

    pub fn is_identity(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn is_canonical(&self) -> bool {
        self.cells.windows(2).all(|w| w[0] < w[1])
    }

    /// Substitute `inner` into input `slot`.
    pub fn compose(&self, slot: usize, inner: &Operation) -> Result<Operation> {
        if slot >= self.arity() {
            return Err(Error::SlotRange { slot, arity: self.arity() });
        }
        let mut cells = Vec::with_capacity(self.arity() + inner.arity() - 1);
        cells.extend_from_slice(&self.cells[..slot]);
        let target = &self.cells[slot];
        cells.extend(inner.cells.iter().map(|c| target.transport(c)));
        cells.extend_from_slice(&self.cells[slot + 1..]);
        Ok(Operation { cells })
    }

    /// Substitute one operation into every input at once.
    pub fn graft(&self, inners: &[Operation]) -> Operation {
        debug_assert_eq!(inners.len(), self.arity());
        let cells = self
            .cells
            .iter()
            .zip(inners)
            .flat_map(|(outer, inner)| inner.cells.iter().map(move |c| outer.transport(c)))
            .collect();
        Operation { cells }
    }

    /// Sort the inputs. Returns the canonical operation and the permutation sending
    /// each input of `self` to its position in the canonical operation.
    pub fn canonicalize(&self) -> (Operation, Permutation) {
        let mut order: Vec<usize> = (0..self.arity()).collect();
        order.sort_by(|&a, &b| self.cells[a].cmp(&self.cells[b]));
        let mut imgs = vec![0; self.arity()];
        for (pos, &i) in order.iter().enumerate() {
            imgs[i] = pos;
        }
        let cells = order.iter().map(|&i| self.cells[i].clone()).collect();
        (Operation { cells }, Permutation::from_images_unchecked(imgs))
    }

    /// The overlay of two operations: every nonempty intersection of an input cell of
    /// `self` with one of `other`, in canonical order, together with the forests that
    /// refine each side into it.
    pub fn common_refinement(&self, other: &Operation) -> Refinement {
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .flat_map(|a| other.cells.iter().filter_map(move |b| a.intersect(b)))
            .collect();
        cells.sort();
        let refined = Operation { cells };
        let (left_forest, left_perm) = refined.split_along(self);
        let (right_forest, right_perm) = refined.split_along(other);
        Refinement { refined, left_forest, right_forest, left_perm, right_perm }
    }

    /// `self` must refine `coarse`. Returns the forest `phi` with `coarse.graft(phi)`
    /// equal to `self` up to the returned reordering.
    fn split_along(&self, coarse: &Operation) -> (Vec<Operation>, Permutation) {
        let mut forest = Vec::with_capacity(coarse.arity());
        let mut imgs = Vec::with_capacity(self.arity());
        for outer in &coarse.cells {
            let mut inside: Vec<(Cell, usize)> = self
                .cells
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.relative_to(outer).map(|r| (r, i)))
                .collect();
            inside.sort();
            imgs.extend(inside.iter().map(|(_, i)| *i));
            forest.push(Operation { cells: inside.into_iter().map(|(r, _)| r).collect() });
        }
        (forest, Permutation::from_images_unchecked(imgs))
    }

    /// Check that `cells` partition the unit cell and can be produced by recursive
    /// midpoint cuts; returns a cut witness.
    pub(crate) fn validate_cells(cells: &[Cell], base: u32, dim: usize) -> Result<CutTree> {
        if cells.is_empty() {
            return Err(Error::NotPartition("empty pattern".into()));
        }
        if let Some(c) = cells.iter().find(|c| c.dim() != dim) {
            return Err(Error::NotPartition(format!("cell of dimension {} in a {dim}-dimensional pattern", c.dim())));
        }
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if !a.is_disjoint(b) {
                    return Err(Error::NotPartition("overlapping cells".into()));
                }
            }
        }
        if !volumes_sum_to_one(cells.iter().map(Cell::depth), base) {
            return Err(Error::NotPartition("cells do not cover the unit cell".into()));
        }
        let refs: Vec<&Cell> = cells.iter().collect();
        guillotine(&Cell::unit(dim), &refs, base).ok_or(Error::NotGuillotine)
    }
}

/// Greedy recursive cut search. Any crossing-free axis works: restricting a cuttable
/// partition to one side of a midpoint cut is again cuttable.
fn guillotine(region: &Cell, cells: &[&Cell], base: u32) -> Option<CutTree> {
    if cells.is_empty() {
        return None;
    }
    if cells.len() == 1 && cells[0] == region {
        return Some(CutTree::Leaf);
    }
    'axis: for axis in 0..region.dim() {
        let level = region.exponent(axis);
        for c in cells {
            if c.exponent(axis) <= level {
                continue 'axis;
            }
        }
        let mut children = Vec::with_capacity(base as usize);
        for digit in 0..base as u8 {
            let part: Vec<&Cell> = cells
                .iter()
                .copied()
                .filter(|c| c.axis(axis)[level] == digit)
                .collect();
            children.push(guillotine(&region.child(axis, digit), &part, base)?);
        }
        return Some(CutTree::node(axis, children));
    }
    None
}
