//! The two concrete monochromatic operads: k-ary planar trees (Higman-Thompson) and
//! d-dimensional dyadic cube cutting (Brin-Thompson).
//!
//! Both are realized geometrically. An operation of arity `n` is an ordered list of `n`
//! cells partitioning the unit cell: k-adic intervals for trees, dyadic boxes for cubes.
//! A k-ary tree corresponds to its leaf intervals, a cube-cutting pattern to its boxes.

mod cell;
mod cuttree;
mod operation;
mod realize;

pub use cell::Cell;
pub(crate) use cell::volumes_sum_to_one;
pub use cuttree::CutTree;
pub use operation::{Operation, Refinement};
pub use realize::{compose_realizations, realize, Placement};

use crate::category::{Arrow, Permutation};
use crate::error::{Error, Result};
use crate::fractions::Span;

/// Dyadic boxes are cube-backend cells.
pub type DyadicBox = Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BackendKind {
    KaryTree { k: u8 },
    DyadicCube { d: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Planar,
    Symmetric,
}

/// Which operad the kernel computes in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Backend {
    kind: BackendKind,
    flavor: Flavor,
}

impl Backend {
    pub fn new(kind: BackendKind, flavor: Flavor) -> Result<Self> {
        match kind {
            BackendKind::KaryTree { k } if !(2..=36).contains(&k) => {
                return Err(Error::Backend(format!("tree arity k={k} must lie in 2..=36")))
            }
            BackendKind::DyadicCube { d } if !(1..=8).contains(&d) => {
                return Err(Error::Backend(format!("cube dimension d={d} must lie in 1..=8")))
            }
            BackendKind::DyadicCube { d } if d >= 2 && flavor == Flavor::Planar => {
                return Err(Error::Flavor(format!(
                    "planar cube cutting is only defined for d=1 (got d={d})"
                )))
            }
            _ => {}
        }
        Ok(Backend { kind, flavor })
    }

    pub fn kary_tree(k: u8, flavor: Flavor) -> Result<Self> {
        Self::new(BackendKind::KaryTree { k }, flavor)
    }

    pub fn dyadic_cube(d: u8, flavor: Flavor) -> Result<Self> {
        Self::new(BackendKind::DyadicCube { d }, flavor)
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_symmetric(&self) -> bool {
        self.flavor == Flavor::Symmetric
    }

    pub fn is_tree(&self) -> bool {
        matches!(self.kind, BackendKind::KaryTree { .. })
    }

    /// Digit base of the cells; also the arity of every generator.
    pub fn base(&self) -> u32 {
        match self.kind {
            BackendKind::KaryTree { k } => k as u32,
            BackendKind::DyadicCube { .. } => 2,
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            BackendKind::KaryTree { .. } => 1,
            BackendKind::DyadicCube { d } => d as usize,
        }
    }

    pub fn identity_op(&self) -> Operation {
        Operation::identity(self.dim())
    }

    /// The generating operations: the k-caret, or the midpoint halving along each axis.
    pub fn generators(&self) -> Vec<Operation> {
        let unit = Cell::unit(self.dim());
        (0..self.dim())
            .map(|axis| {
                Operation::from_cells_unchecked(
                    (0..self.base()).map(|d| unit.child(axis, d as u8)).collect(),
                )
            })
            .collect()
    }

    /// The first generator; the split operation used by the certificates.
    pub fn caret(&self) -> Operation {
        self.generators().swap_remove(0)
    }

    /// Number of generators (internal nodes or cuts) in any decomposition of `op`.
    pub fn generator_count(&self, op: &Operation) -> usize {
        (op.arity() - 1) / (self.base() as usize - 1)
    }

    /// Validate an ordered box sequence. The order is kept as given.
    pub fn validate_pattern(&self, cells: Vec<Cell>) -> Result<Operation> {
        let base = self.base();
        if let Some(bad) = cells
            .iter()
            .flat_map(|c| c.axes().iter().flatten())
            .find(|&&digit| digit as u32 >= base)
        {
            return Err(Error::NotPartition(format!("digit {bad} out of range for base {base}")));
        }
        Operation::validate_cells(&cells, base, self.dim())?;
        Ok(Operation::from_cells_unchecked(cells))
    }

    /// Cut witness for an operation (always exists for valid operations).
    pub fn cut_witness(&self, op: &Operation) -> Result<CutTree> {
        Operation::validate_cells(op.cells(), self.base(), self.dim())
    }

    pub fn operation_from_cut_tree(&self, tree: &CutTree) -> Result<Operation> {
        fn check(t: &CutTree, dim: usize, base: usize) -> Result<()> {
            match t {
                CutTree::Leaf => Ok(()),
                CutTree::Node { axis, children } => {
                    if *axis >= dim {
                        return Err(Error::Parse(format!("cut axis {axis} out of range for d={dim}")));
                    }
                    if children.len() != base {
                        return Err(Error::Parse(format!(
                            "a cut has {base} parts, got {}",
                            children.len()
                        )));
                    }
                    children.iter().try_for_each(|c| check(c, dim, base))
                }
            }
        }
        check(tree, self.dim(), self.base() as usize)?;
        Ok(tree.to_operation(self.dim()))
    }

    /// A canonical operation with at least `m` inputs, built by repeatedly splitting the
    /// last input with the first generator.
    pub fn op_with_arity_at_least(&self, m: usize) -> Operation {
        let caret = self.caret();
        let mut op = self.identity_op();
        while op.arity() < m {
            op = op.compose(op.arity() - 1, &caret).expect("slot in range");
        }
        op.canonicalize().0
    }

    pub fn identity_arrow(&self, n: usize) -> Arrow {
        Arrow::identity(n, self.dim())
    }

    pub fn identity_span(&self, n: usize) -> Span {
        Span::identity(n, self.dim())
    }

    pub fn permutation_arrow(&self, perm: Permutation) -> Result<Arrow> {
        let a = Arrow::permutation(perm, self.dim());
        self.check_arrow(&a)?;
        Ok(a)
    }

    /// Arrow built from a forest of (possibly non-canonical) operations, with the input
    /// reordering absorbed into the permutation.
    pub fn forest_arrow(&self, forest: Vec<Operation>) -> Result<Arrow> {
        let a = Arrow::from_operations(forest);
        self.check_arrow(&a)?;
        Ok(a)
    }

    /// Flavor and dimension checks for arrows built outside the backend.
    pub fn check_arrow(&self, a: &Arrow) -> Result<()> {
        if let Some(op) = a.forest().iter().find(|op| op.dim() != self.dim()) {
            return Err(Error::Backend(format!(
                "operation of dimension {} in a {}-dimensional backend",
                op.dim(),
                self.dim()
            )));
        }
        if !self.is_symmetric() && !a.perm().is_identity() {
            return Err(Error::Flavor("planar arrows carry no permutation".into()));
        }
        Ok(())
    }

    pub fn check_span(&self, s: &Span) -> Result<()> {
        self.check_arrow(s.den())?;
        self.check_arrow(s.num())
    }
}
