//! Markings of words, the comarking pull-back, marked arrows and semi-partition
//! classes.

use std::collections::{BTreeSet, HashMap};

use crate::backend::{realize, Backend, BackendKind, Cell};
use crate::category::Arrow;
use crate::error::{Error, Result};

/// Partial symbol assignment on the coordinates of a word. Symbols are relabeled
/// `0, 1, ..` by first occurrence, so equivalent markings compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    symbols: Vec<Option<u32>>,
}

impl Marking {
    pub fn new(symbols: Vec<Option<u32>>) -> Self {
        let mut fresh: HashMap<u32, u32> = HashMap::new();
        let symbols = symbols
            .into_iter()
            .map(|s| {
                s.map(|s| {
                    let next = fresh.len() as u32;
                    *fresh.entry(s).or_insert(next)
                })
            })
            .collect();
        Marking { symbols }
    }

    pub fn full(symbols: Vec<u32>) -> Self {
        Self::new(symbols.into_iter().map(Some).collect())
    }

    /// Every coordinate marked with the same symbol.
    pub fn uniform(n: usize) -> Self {
        Marking { symbols: vec![Some(0); n] }
    }

    /// Only coordinate `i` is marked.
    pub fn single(n: usize, i: usize) -> Self {
        let mut symbols = vec![None; n];
        symbols[i] = Some(0);
        Marking { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[Option<u32>] {
        &self.symbols
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.iter().flatten().max().map_or(0, |&s| s as usize + 1)
    }

    pub fn marked_count(&self) -> usize {
        self.symbols.iter().flatten().count()
    }

    pub fn is_full(&self) -> bool {
        self.symbols.iter().all(Option::is_some)
    }

    pub fn is_uni(&self) -> bool {
        self.symbol_count() == 1
    }

    pub fn is_single(&self) -> bool {
        self.marked_count() == 1
    }

    /// Coordinates carrying each symbol, in symbol order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.symbol_count()];
        for (i, s) in self.symbols.iter().enumerate() {
            if let Some(s) = s {
                out[*s as usize].push(i);
            }
        }
        out
    }

    /// Each symbol occupies a contiguous run of coordinates.
    pub fn is_ordered(&self) -> bool {
        self.blocks().iter().all(|b| b.last().unwrap() - b[0] + 1 == b.len())
    }

    /// Erase every symbol but `s`.
    pub fn keep_only(&self, s: u32) -> Marking {
        Marking { symbols: self.symbols.iter().map(|&t| (t == Some(s)).then_some(0)).collect() }
    }

    /// Is there a symbol map sending every marked coordinate of `self` to a coordinate
    /// marked with the image symbol in `other`?
    pub fn subset(&self, other: &Marking) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::Length { marking: self.len(), word: other.len() });
        }
        let mut map: HashMap<u32, u32> = HashMap::new();
        for (a, b) in self.symbols.iter().zip(&other.symbols) {
            match (a, b) {
                (None, _) => {}
                (Some(_), None) => return Ok(false),
                (Some(a), Some(b)) => {
                    if *map.entry(*a).or_insert(*b) != *b {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Transport along a permutation of coordinates: coordinate `i` moves to `perm(i)`.
    pub fn permuted(&self, perm: &crate::category::Permutation) -> Marking {
        let mut symbols = vec![None; self.len()];
        for (i, &s) in self.symbols.iter().enumerate() {
            symbols[perm.apply(i)] = s;
        }
        Marking::new(symbols)
    }
}

/// Every input of an operation inherits the symbol of its output; the permutation then
/// routes the inputs back to the domain coordinates.
pub fn pull_back(arrow: &Arrow, comarking: &Marking) -> Result<Marking> {
    if comarking.len() != arrow.codomain() {
        return Err(Error::Length { marking: comarking.len(), word: arrow.codomain() });
    }
    let slots: Vec<Option<u32>> = arrow
        .forest()
        .iter()
        .enumerate()
        .flat_map(|(j, op)| std::iter::repeat_n(comarking.get(j), op.arity()))
        .collect();
    Ok(Marking::new((0..arrow.domain()).map(|i| slots[arrow.perm().apply(i)]).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedArrow {
    arrow: Arrow,
    marking: Marking,
}

impl MarkedArrow {
    pub fn new(arrow: Arrow, marking: Marking) -> Result<Self> {
        if arrow.domain() != marking.len() {
            return Err(Error::Length { marking: marking.len(), word: arrow.domain() });
        }
        Ok(MarkedArrow { arrow, marking })
    }

    pub fn arrow(&self) -> &Arrow {
        &self.arrow
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }

    pub fn base(&self) -> usize {
        self.arrow.codomain()
    }

    /// An equivalent marked arrow with identity permutation.
    pub fn normalized(&self) -> MarkedArrow {
        let perm = self.arrow.perm();
        let arrow = Arrow::new(
            crate::category::Permutation::identity(perm.len()),
            self.arrow.forest().to_vec(),
            self.arrow.dim(),
        )
        .expect("same forest");
        MarkedArrow { arrow, marking: self.marking.permuted(perm) }
    }

    /// Square-fill the arrows and compare pulled-back markings.
    pub fn subset(&self, other: &MarkedArrow) -> Result<bool> {
        if self.base() != other.base() {
            return Err(Error::BaseMismatch(self.base(), other.base()));
        }
        let (b1, b2) = Arrow::square_fill(&self.arrow, &other.arrow)?;
        pull_back(&b1, &self.marking)?.subset(&pull_back(&b2, &other.marking)?)
    }
}

/// Equivalence class of marked arrows over a fixed base word, stored by any
/// representative.
#[derive(Clone, Debug)]
pub struct SemiPartitionClass {
    rep: MarkedArrow,
}

impl SemiPartitionClass {
    pub fn new(rep: MarkedArrow) -> Self {
        SemiPartitionClass { rep }
    }

    /// The coarsest partition: one symbol on the identity arrow.
    pub fn trivial(base: usize, dim: usize) -> Self {
        let rep = MarkedArrow::new(Arrow::identity(base, dim), Marking::uniform(base)).expect("lengths agree");
        SemiPartitionClass { rep }
    }

    pub fn rep(&self) -> &MarkedArrow {
        &self.rep
    }

    pub fn base(&self) -> usize {
        self.rep.base()
    }

    pub fn symbol_count(&self) -> usize {
        self.rep.marking.symbol_count()
    }

    pub fn is_partition(&self) -> bool {
        self.rep.marking.is_full()
    }

    pub fn is_multiball(&self) -> bool {
        self.rep.marking.is_uni()
    }

    pub fn subset(&self, other: &SemiPartitionClass) -> Result<bool> {
        self.rep.subset(&other.rep)
    }

    pub fn equiv(&self, other: &SemiPartitionClass) -> Result<bool> {
        Ok(self.subset(other)? && other.subset(self)?)
    }

    /// One multiball per symbol, in symbol order.
    pub fn submultiballs(&self) -> Vec<SemiPartitionClass> {
        (0..self.symbol_count() as u32)
            .map(|s| SemiPartitionClass {
                rep: MarkedArrow { arrow: self.rep.arrow.clone(), marking: self.rep.marking.keep_only(s) },
            })
            .collect()
    }

    /// Realized cells of the coordinates carrying each symbol.
    pub fn regions(&self) -> Vec<Vec<(usize, Cell)>> {
        let places = realize(&self.rep.arrow);
        self.rep
            .marking
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| (places[i].target, places[i].cell.clone())).collect())
            .collect()
    }

    /// Geometric invariant of the class: the set of symbol regions, each written at its
    /// coarsest grid resolution. Two classes are equal iff their keys are.
    pub fn canonical_key(&self, base: u32) -> ClassKey {
        let mut regions: Vec<RegionKey> = self
            .regions()
            .into_iter()
            .map(|r| region_key(&r, base, self.rep.arrow.dim()))
            .collect();
        regions.sort();
        regions
    }

    /// A multiball is a ball when its marked cells fill out one cell of the base word.
    pub fn is_ball(&self, backend: &Backend) -> Result<bool> {
        if !self.is_multiball() {
            return Err(Error::NotMultiball);
        }
        let region = self.regions().swap_remove(0);
        let target = region[0].0;
        if region.iter().any(|(t, _)| *t != target) {
            return Ok(false);
        }
        let join = region.iter().skip(1).fold(region[0].1.clone(), |acc, (_, c)| acc.join(c));
        let depth = join.depth();
        Ok(crate::backend::volumes_sum_to_one(
            region.iter().map(|(_, c)| c.depth() - depth),
            backend.base(),
        ))
    }

    /// Length of the marked subword of a multiball.
    pub fn object_class(&self) -> Result<usize> {
        if !self.is_multiball() {
            return Err(Error::NotMultiball);
        }
        Ok(self.rep.marking.marked_count())
    }
}

/// Per codomain coordinate: the grid exponents and the grid cells covered.
pub type RegionKey = Vec<(usize, Vec<usize>, Vec<Cell>)>;
pub type ClassKey = Vec<RegionKey>;

fn region_key(cells: &[(usize, Cell)], base: u32, dim: usize) -> RegionKey {
    let mut targets: Vec<usize> = cells.iter().map(|(t, _)| *t).collect();
    targets.sort();
    targets.dedup();
    targets
        .into_iter()
        .map(|t| {
            let mine: Vec<&Cell> = cells.iter().filter(|(u, _)| *u == t).map(|(_, c)| c).collect();
            let mut exps: Vec<usize> =
                (0..dim).map(|a| mine.iter().map(|c| c.exponent(a)).max().unwrap_or(0)).collect();
            let mut grid: BTreeSet<Cell> = BTreeSet::new();
            for c in mine {
                expand(c, &exps, base, &mut grid);
            }
            let mut changed = true;
            while changed {
                changed = false;
                for (a, e) in exps.iter_mut().enumerate() {
                    while *e > 0 {
                        let Some(coarse) = coarsen(&grid, a, base) else { break };
                        grid = coarse;
                        *e -= 1;
                        changed = true;
                    }
                }
            }
            (t, exps, grid.into_iter().collect())
        })
        .collect()
}

fn expand(c: &Cell, exps: &[usize], base: u32, out: &mut BTreeSet<Cell>) {
    match (0..exps.len()).find(|&a| c.exponent(a) < exps[a]) {
        None => {
            out.insert(c.clone());
        }
        Some(a) => {
            for d in 0..base as u8 {
                expand(&c.child(a, d), exps, base, out);
            }
        }
    }
}

/// Merge sibling groups along `axis`, if every group is complete.
fn coarsen(grid: &BTreeSet<Cell>, axis: usize, base: u32) -> Option<BTreeSet<Cell>> {
    let mut parents: HashMap<Cell, u32> = HashMap::new();
    for c in grid {
        let mut axes = c.axes().to_vec();
        axes[axis].pop();
        *parents.entry(Cell::from_axes(axes)).or_default() += 1;
    }
    parents.values().all(|&n| n == base).then(|| parents.into_keys().collect())
}

/// Whether two word lengths are connected by a span.
pub fn object_equivalent(a: usize, b: usize, backend: &Backend) -> bool {
    if a == 0 || b == 0 {
        return a == b;
    }
    match backend.kind() {
        BackendKind::KaryTree { k } => (a % (k as usize - 1)) == (b % (k as usize - 1)),
        BackendKind::DyadicCube { .. } => true,
    }
}
