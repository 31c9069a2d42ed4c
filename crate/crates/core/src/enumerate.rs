//! Exhaustive enumeration of operations, forests, arrows and markings by generator
//! count.

use std::collections::BTreeSet;

use crate::backend::{Backend, Operation};
use crate::category::{Arrow, Permutation};
use crate::markings::Marking;

/// Canonical operations with exactly `g` generators, grouped by count: index `i` of the
/// result holds those with `i` generators.
pub fn operations_by_count(backend: &Backend, g: usize) -> Vec<Vec<Operation>> {
    operations_from(&backend.generators(), backend.identity_op(), g)
}

/// Like [`operations_by_count`], composing only the given generators.
pub fn operations_from(gens: &[Operation], identity: Operation, g: usize) -> Vec<Vec<Operation>> {
    let mut levels = vec![vec![identity]];
    for _ in 0..g {
        let prev = levels.last().expect("non-empty");
        let mut next = BTreeSet::new();
        for op in prev {
            for slot in 0..op.arity() {
                for gen in gens {
                    next.insert(op.compose(slot, gen).expect("slot in range").canonicalize().0);
                }
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

/// Forests over `base` coordinates with at most `depth` generators in total.
pub fn forests(backend: &Backend, base: usize, depth: usize) -> Vec<Vec<Operation>> {
    let levels = operations_by_count(backend, depth);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(base);
    fill_forests(&levels, base, depth, &mut cur, &mut out);
    out
}

fn fill_forests(
    levels: &[Vec<Operation>],
    base: usize,
    budget: usize,
    cur: &mut Vec<Operation>,
    out: &mut Vec<Vec<Operation>>,
) {
    if cur.len() == base {
        out.push(cur.clone());
        return;
    }
    for g in 0..=budget {
        for op in &levels[g] {
            cur.push(op.clone());
            fill_forests(levels, base, budget - g, cur, out);
            cur.pop();
        }
    }
}

/// Identity-permutation arrows into `base` with at most `depth` generators.
pub fn planar_arrows(backend: &Backend, base: usize, depth: usize) -> Vec<Arrow> {
    forests(backend, base, depth).into_iter().map(|f| arrow_of(backend, f)).collect()
}

/// All arrows into `base` with at most `depth` generators; permutations are included
/// for symmetric backends.
pub fn arrows(backend: &Backend, base: usize, depth: usize) -> Vec<Arrow> {
    let planar = planar_arrows(backend, base, depth);
    if !backend.is_symmetric() {
        return planar;
    }
    planar
        .iter()
        .flat_map(|a| {
            Permutation::all(a.domain()).into_iter().map(move |p| {
                Arrow::permutation(p, a.dim()).compose(a).expect("domains agree")
            })
        })
        .collect()
}

fn arrow_of(backend: &Backend, forest: Vec<Operation>) -> Arrow {
    if forest.is_empty() {
        Arrow::identity(0, backend.dim())
    } else {
        Arrow::from_operations(forest)
    }
}

/// Full markings of `n` coordinates up to relabeling; `ordered` keeps only markings
/// with contiguous symbol blocks.
pub fn full_markings(n: usize, ordered: bool) -> Vec<Marking> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    growth_strings(n, false, &mut cur, &mut out);
    out.into_iter().filter(|m| !ordered || m.is_ordered()).collect()
}

/// Markings of `n` coordinates, unmarked coordinates allowed.
pub fn partial_markings(n: usize, ordered: bool) -> Vec<Marking> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    growth_strings(n, true, &mut cur, &mut out);
    out.into_iter().filter(|m| !ordered || m.is_ordered()).collect()
}

fn growth_strings(n: usize, partial: bool, cur: &mut Vec<Option<u32>>, out: &mut Vec<Marking>) {
    if cur.len() == n {
        out.push(Marking::new(cur.clone()));
        return;
    }
    let used = cur.iter().flatten().max().map_or(0, |&s| s + 1);
    if partial {
        cur.push(None);
        growth_strings(n, partial, cur, out);
        cur.pop();
    }
    for s in 0..=used {
        cur.push(Some(s));
        growth_strings(n, partial, cur, out);
        cur.pop();
    }
}
