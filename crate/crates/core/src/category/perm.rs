use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`; `imgs[i]` is the image of `i`.
///
/// Composition is diagrammatic: `p.then(q)` sends `i` to `q(p(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    imgs: Vec<usize>,
}

impl Permutation {
    pub fn new(imgs: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; imgs.len()];
        for &j in &imgs {
            if j >= imgs.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Parse(format!("{imgs:?} is not a permutation")));
            }
        }
        Ok(Permutation { imgs })
    }

    pub(crate) fn from_images_unchecked(imgs: Vec<usize>) -> Self {
        debug_assert!(Self::new(imgs.clone()).is_ok());
        Permutation { imgs }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { imgs: (0..n).collect() }
    }

    /// The transposition of `i` and `j` on `n` points.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut imgs: Vec<usize> = (0..n).collect();
        imgs.swap(i, j);
        Permutation { imgs }
    }

    /// The permutation listing positions in the given order: `order[k]` is sent to `k`.
    pub fn sorting(order: &[usize]) -> Self {
        let mut imgs = vec![0; order.len()];
        for (k, &i) in order.iter().enumerate() {
            imgs[i] = k;
        }
        Permutation { imgs }
    }

    pub fn len(&self) -> usize {
        self.imgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.imgs.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.imgs
    }

    pub fn apply(&self, i: usize) -> usize {
        self.imgs[i]
    }

    pub fn is_identity(&self) -> bool {
        self.imgs.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut imgs = vec![0; self.len()];
        for (i, &j) in self.imgs.iter().enumerate() {
            imgs[j] = i;
        }
        Permutation { imgs }
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Permutation { imgs: self.imgs.iter().map(|&j| other.imgs[j]).collect() }
    }

    /// Block-diagonal sum.
    pub fn block_sum(parts: &[Permutation]) -> Self {
        let mut imgs = Vec::with_capacity(parts.iter().map(Permutation::len).sum());
        let mut offset = 0;
        for p in parts {
            imgs.extend(p.imgs.iter().map(|&j| j + offset));
            offset += p.len();
        }
        Permutation { imgs }
    }

    /// Move contiguous blocks of the given sizes: block `j` goes to block position
    /// `self(j)`, keeping its internal order.
    pub fn on_blocks(&self, sizes: &[usize]) -> Self {
        debug_assert_eq!(sizes.len(), self.len());
        let inv = self.inverse();
        let mut new_start = vec![0; sizes.len()];
        let mut acc = 0;
        for pos in 0..sizes.len() {
            let j = inv.imgs[pos];
            new_start[j] = acc;
            acc += sizes[j];
        }
        let mut imgs = Vec::with_capacity(acc);
        for (j, &s) in sizes.iter().enumerate() {
            imgs.extend((0..s).map(|t| new_start[j] + t));
        }
        Permutation { imgs }
    }

    /// Least `n >= 1` with `self^n = id`.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut lcm = 1usize;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.imgs[i];
                len += 1;
            }
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm
    }

    /// All permutations of `n` points in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { imgs: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
