//! Seedable random operations, arrows and spans for testing and exploration.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::backend::{Backend, Operation};
use crate::category::{Arrow, Permutation};
use crate::fractions::Span;

/// A canonical operation built from exactly `gens` random generator insertions.
pub fn operation<R: Rng + ?Sized>(backend: &Backend, rng: &mut R, gens: usize) -> Operation {
    let generators = backend.generators();
    let mut op = backend.identity_op();
    for _ in 0..gens {
        let slot = rng.gen_range(0..op.arity());
        let g = generators.choose(rng).expect("at least one generator");
        op = op.compose(slot, g).expect("slot in range");
    }
    op.canonicalize().0
}

/// Uniformly random permutation (identity in the planar flavor).
pub fn permutation<R: Rng + ?Sized>(backend: &Backend, rng: &mut R, n: usize) -> Permutation {
    if !backend.is_symmetric() {
        return Permutation::identity(n);
    }
    let mut imgs: Vec<usize> = (0..n).collect();
    imgs.shuffle(rng);
    Permutation::new(imgs).expect("shuffle of 0..n")
}

/// An arrow into `base` whose forest has exactly `gens` generators in total.
pub fn arrow<R: Rng + ?Sized>(backend: &Backend, rng: &mut R, base: usize, gens: usize) -> Arrow {
    assert!(base > 0, "arrows into the empty word carry no generators");
    let mut counts = vec![0; base];
    for _ in 0..gens {
        counts[rng.gen_range(0..base)] += 1;
    }
    let forest = counts.into_iter().map(|g| operation(backend, rng, g)).collect();
    let planar = Arrow::from_operations(forest);
    let p = permutation(backend, rng, planar.domain());
    Arrow::permutation(p, backend.dim()).compose(&planar).expect("domains agree")
}

/// A span over `base` whose legs have the same number of generators, at most
/// `max_gens` in total.
pub fn span<R: Rng + ?Sized>(backend: &Backend, rng: &mut R, base: usize, max_gens: usize) -> Span {
    let g = rng.gen_range(0..=max_gens / 2);
    let den = arrow(backend, rng, base, g);
    let num = arrow(backend, rng, base, g);
    Span::new(den, num).expect("equal generator counts give equal domains")
}
