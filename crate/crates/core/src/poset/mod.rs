//! Split and progressive objects, the n-condition and the poset of partitions.

use crate::backend::{Backend, Operation};
use crate::category::Arrow;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::markings::{object_equivalent, pull_back, MarkedArrow, Marking, SemiPartitionClass};

/// In a monochromatic operad every non-empty word is split as soon as some generator
/// has two inputs, which holds in both backends.
pub fn is_split(backend: &Backend, x: usize) -> bool {
    x >= 1 && backend.base() >= 2
}

/// Monochromatic words are progressive iff composites reach arity `x`.
pub fn is_progressive(_backend: &Backend, x: usize) -> bool {
    x >= 1
}

/// Generators needed for one operation with at least `y` inputs.
fn generators_for_arity(backend: &Backend, y: usize) -> usize {
    let step = backend.base() as usize - 1;
    y.saturating_sub(1).div_ceil(step)
}

/// For every arrow `Z -> x` with at most `depth` generators, look for an arrow
/// `A1 y A2 -> Z` within the same bound whose `y` block feeds a single operation.
/// `Err(Unknown)` when the bound is too small to decide.
pub fn is_y_progressive(backend: &Backend, x: usize, y: usize, depth: usize) -> Result<bool> {
    if x == 0 {
        return Ok(false);
    }
    if y == 0 {
        return Ok(true);
    }
    if generators_for_arity(backend, y) > depth {
        return Err(Error::Unknown);
    }
    let theta = backend.op_with_arity_at_least(y);
    for z in enumerate::planar_arrows(backend, x, depth) {
        let mut forest = vec![backend.identity_op(); z.domain()];
        forest[0] = theta.clone();
        let witness = Arrow::from_operations(forest);
        // the first y inputs all belong to the operation in slot 0
        let linked = (0..y).all(|i| witness.perm().apply(i) < theta.arity());
        if !linked {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An arrow into a word of length `len` whose domain starts with `max(n, 1)` blocks of
/// length `y`, all fed through one operation on coordinate 0.
fn y_blocks(backend: &Backend, len: usize, y: usize, n: usize) -> Arrow {
    let gens = backend.generators();
    let mut forest = vec![backend.identity_op(); len];
    forest[0] = backend.op_with_arity_at_least(y.max(2));
    let mut arrow = Arrow::from_operations(forest);
    for i in 0..n.max(1) - 1 {
        let start = i * y;
        let gen = &gens[(i + 1) % gens.len()];
        let mut split: Vec<Operation> = vec![backend.identity_op(); arrow.domain() - y + 1];
        split.splice(start..start + 1, std::iter::repeat_n(gen.clone(), y));
        arrow = Arrow::from_operations(split).compose(&arrow).expect("lengths agree");
    }
    arrow
}

/// A partition over `x` with at least `n` submultiballs of length `y`.
pub fn construct_partition_n(backend: &Backend, x: usize, y: usize, n: usize) -> Result<SemiPartitionClass> {
    if !is_split(backend, y) || x == 0 {
        return Err(Error::NotSplit);
    }
    let blocks = n.max(1);
    let arrow = y_blocks(backend, x, y, n);
    let symbols = (0..arrow.domain())
        .map(|i| Some(if i < blocks * y { (i / y) as u32 } else { blocks as u32 }))
        .collect();
    Ok(SemiPartitionClass::new(MarkedArrow::new(arrow, Marking::new(symbols))?))
}

pub fn n_condition(backend: &Backend, p: &SemiPartitionClass, y: usize, n: usize) -> Result<bool> {
    if !p.is_partition() {
        return Err(Error::NotPartitionClass);
    }
    let mut count = 0;
    for b in p.submultiballs() {
        if object_equivalent(b.object_class()?, y, backend) {
            count += 1;
        }
    }
    Ok(count >= n)
}

/// A common refinement of two partitions satisfying the n-condition.
pub fn refine_to_n(
    backend: &Backend,
    p: &SemiPartitionClass,
    q: &SemiPartitionClass,
    y: usize,
    n: usize,
) -> Result<SemiPartitionClass> {
    if !p.is_partition() || !q.is_partition() {
        return Err(Error::NotPartitionClass);
    }
    if p.base() != q.base() {
        return Err(Error::BaseMismatch(p.base(), q.base()));
    }
    if !is_split(backend, y) {
        return Err(Error::NotSplit);
    }
    let (bp, _) = Arrow::square_fill(p.rep().arrow(), q.rep().arrow())?;
    let delta = bp.compose(p.rep().arrow())?;
    let mu = Marking::full((0..delta.domain() as u32).collect());
    let nu = y_blocks(backend, delta.domain(), y, n);
    let pulled = pull_back(&nu, &mu)?;
    let fresh = pulled.symbol_count() as u32;
    let symbols = (0..nu.domain())
        .map(|i| Some(if i < n.max(1) * y { fresh + (i / y) as u32 } else { pulled.get(i).expect("full") }))
        .collect();
    let arrow = nu.compose(&delta)?;
    Ok(SemiPartitionClass::new(MarkedArrow::new(arrow, Marking::new(symbols))?))
}

/// Partitions over `base` with at most `depth` generators that satisfy the
/// n-condition, one per class.
#[derive(Clone, Debug)]
pub struct PosetTruncation {
    pub base: usize,
    pub depth: usize,
    pub n: usize,
    pub y: usize,
    pub elements: Vec<SemiPartitionClass>,
}

pub fn enumerate_pn(backend: &Backend, base: usize, depth: usize, y: usize, n: usize) -> Result<PosetTruncation> {
    let ordered = !backend.is_symmetric();
    let mut elements: Vec<SemiPartitionClass> = Vec::new();
    for arrow in enumerate::planar_arrows(backend, base, depth) {
        for marking in enumerate::full_markings(arrow.domain(), ordered) {
            let c = SemiPartitionClass::new(MarkedArrow::new(arrow.clone(), marking)?);
            if !n_condition(backend, &c, y, n)? {
                continue;
            }
            let mut fresh = true;
            for e in &elements {
                if e.equiv(&c)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                elements.push(c);
            }
        }
    }
    let b = backend.base();
    elements.sort_by_cached_key(|e| e.canonical_key(b));
    Ok(PosetTruncation { base, depth, n, y, elements })
}

#[derive(Clone, Debug)]
pub struct FilterRow {
    pub p: usize,
    pub q: usize,
    pub upper_bound: SemiPartitionClass,
    pub ok: bool,
}

/// Upper bounds for every pair of elements, each checked against both elements and
/// the n-condition.
pub fn check_filtered(backend: &Backend, t: &PosetTruncation) -> Result<Vec<FilterRow>> {
    let mut rows = Vec::new();
    for (i, p) in t.elements.iter().enumerate() {
        for (j, q) in t.elements.iter().enumerate().skip(i + 1) {
            let r = refine_to_n(backend, p, q, t.y, t.n)?;
            let ok = r.subset(p)? && r.subset(q)? && n_condition(backend, &r, t.y, t.n)?;
            rows.push(FilterRow { p: i, q: j, upper_bound: r, ok });
        }
    }
    Ok(rows)
}
