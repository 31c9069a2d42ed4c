use super::cell::Cell;
use crate::category::Arrow;

/// Where one domain coordinate of an arrow ends up: a cell inside codomain coordinate
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub target: usize,
    pub cell: Cell,
}

/// Geometric realization of an arrow, one placement per domain coordinate.
///
/// Domain coordinate `i` is routed by the permutation to forest input `perm(i)`, which
/// is a cell of one forest operation. Two arrows are equal iff their realizations are.
pub fn realize(arrow: &Arrow) -> Vec<Placement> {
    let slots: Vec<Placement> = arrow
        .forest()
        .iter()
        .enumerate()
        .flat_map(|(target, op)| {
            op.cells().iter().map(move |c| Placement { target, cell: c.clone() })
        })
        .collect();
    (0..arrow.domain())
        .map(|i| slots[arrow.perm().apply(i)].clone())
        .collect()
}

/// Realization of "first, then second", computed placement by placement.
pub fn compose_realizations(first: &[Placement], second: &[Placement]) -> Vec<Placement> {
    first
        .iter()
        .map(|p| {
            let outer = &second[p.target];
            Placement { target: outer.target, cell: outer.cell.transport(&p.cell) }
        })
        .collect()
}
