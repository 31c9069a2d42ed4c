use super::cell::Cell;
use super::operation::Operation;

/// A cut witness: recursive midpoint cuts of the current cell along an axis.
///
/// Children are listed from the lowest part to the highest. Cube backends always cut in
/// two; the k-ary tree backend cuts an interval into `k` parts along axis 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CutTree {
    Leaf,
    Node { axis: usize, children: Vec<CutTree> },
}

impl CutTree {
    pub fn node(axis: usize, children: Vec<CutTree>) -> Self {
        CutTree::Node { axis, children }
    }

    pub fn halving(axis: usize) -> Self {
        CutTree::node(axis, vec![CutTree::Leaf, CutTree::Leaf])
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            CutTree::Leaf => 1,
            CutTree::Node { children, .. } => children.iter().map(CutTree::leaf_count).sum(),
        }
    }

    pub fn cut_count(&self) -> usize {
        match self {
            CutTree::Leaf => 0,
            CutTree::Node { children, .. } => 1 + children.iter().map(CutTree::cut_count).sum::<usize>(),
        }
    }

    /// Leaf cells in depth-first order, low part before high part.
    pub fn to_operation(&self, dim: usize) -> Operation {
        let mut cells = Vec::with_capacity(self.leaf_count());
        self.collect(&Cell::unit(dim), &mut cells);
        Operation::from_cells_unchecked(cells)
    }

    fn collect(&self, region: &Cell, out: &mut Vec<Cell>) {
        match self {
            CutTree::Leaf => out.push(region.clone()),
            CutTree::Node { axis, children } => {
                for (digit, child) in children.iter().enumerate() {
                    child.collect(&region.child(*axis, digit as u8), out);
                }
            }
        }
    }
}
