use super::perm::Permutation;
use crate::backend::{realize, Cell, Operation, Placement};
use crate::error::{Error, Result};

/// An arrow of the symmetric monoidal category: first permute the domain word, then
/// apply one operation per codomain coordinate.
///
/// Domain coordinate `i` is routed to input `perm(i)` of the concatenated forest. The
/// forest operations are canonical, which makes the pair a unique normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    perm: Permutation,
    forest: Vec<Operation>,
    dim: usize,
}

/// The arrows completing two square fillings to a common one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFilling {
    pub alpha: Arrow,
    pub beta: Arrow,
    pub delta: Arrow,
    pub epsilon: Arrow,
}

impl Arrow {
    /// Normalizes non-canonical operations by absorbing their input order into `perm`.
    pub fn new(perm: Permutation, forest: Vec<Operation>, dim: usize) -> Result<Self> {
        let total: usize = forest.iter().map(Operation::arity).sum();
        if perm.len() != total {
            return Err(Error::SizeMismatch { expected: total, got: perm.len() });
        }
        if let Some(op) = forest.iter().find(|op| op.dim() != dim) {
            return Err(Error::Backend(format!(
                "operation of dimension {} in a {dim}-dimensional arrow",
                op.dim()
            )));
        }
        Ok(Self::normalize(perm, forest, dim))
    }

    fn normalize(perm: Permutation, forest: Vec<Operation>, dim: usize) -> Self {
        if forest.iter().all(Operation::is_canonical) {
            return Arrow { perm, forest, dim };
        }
        let (forest, fixes): (Vec<_>, Vec<_>) = forest.iter().map(Operation::canonicalize).unzip();
        let perm = perm.then(&Permutation::block_sum(&fixes));
        Arrow { perm, forest, dim }
    }

    /// `(id, forest)`; the forest must be non-empty or the dimension is unknown.
    pub fn from_operations(forest: Vec<Operation>) -> Self {
        let dim = forest.first().map_or(1, Operation::dim);
        let n = forest.iter().map(Operation::arity).sum();
        Self::normalize(Permutation::identity(n), forest, dim)
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        Arrow { perm: Permutation::identity(n), forest: vec![Operation::identity(dim); n], dim }
    }

    pub fn permutation(perm: Permutation, dim: usize) -> Self {
        let n = perm.len();
        Arrow { perm, forest: vec![Operation::identity(dim); n], dim }
    }

    /// Build the arrow with the given realization. The caller guarantees that the
    /// placements into each codomain coordinate partition its cell.
    pub(crate) fn from_placements(places: &[Placement], codomain: usize, dim: usize) -> Option<Self> {
        let mut groups: Vec<Vec<(Cell, usize)>> = vec![Vec::new(); codomain];
        for (i, p) in places.iter().enumerate() {
            groups.get_mut(p.target)?.push((p.cell.clone(), i));
        }
        let mut imgs = vec![0; places.len()];
        let mut forest = Vec::with_capacity(codomain);
        let mut offset = 0;
        for mut g in groups {
            g.sort();
            if g.is_empty() {
                return None;
            }
            for (pos, (_, i)) in g.iter().enumerate() {
                imgs[*i] = offset + pos;
            }
            offset += g.len();
            forest.push(Operation::from_cells_unchecked(g.into_iter().map(|(c, _)| c).collect()));
        }
        Some(Arrow { perm: Permutation::from_images_unchecked(imgs), forest, dim })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn forest(&self) -> &[Operation] {
        &self.forest
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> usize {
        self.perm.len()
    }

    pub fn codomain(&self) -> usize {
        self.forest.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.forest.iter().all(Operation::is_identity)
    }

    /// Total generator count of the forest for generators of arity `base`.
    pub fn generator_count(&self, base: u32) -> usize {
        (self.domain() - self.codomain()) / (base as usize - 1)
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn compose(&self, next: &Arrow) -> Result<Arrow> {
        if self.codomain() != next.domain() {
            return Err(Error::DomainMismatch { codomain: self.codomain(), domain: next.domain() });
        }
        let (tau_hat, moved) = push_perm(&self.forest, &next.perm)?;
        let perm = self.perm.then(&tau_hat);
        let mut rest = moved.as_slice();
        let forest = next
            .forest
            .iter()
            .map(|outer| {
                let (block, tail) = rest.split_at(outer.arity());
                rest = tail;
                outer.graft(block)
            })
            .collect();
        Ok(Self::normalize(perm, forest, self.dim))
    }

    pub fn tensor(&self, other: &Arrow) -> Arrow {
        let perm = Permutation::block_sum(&[self.perm.clone(), other.perm.clone()]);
        let forest = self.forest.iter().chain(&other.forest).cloned().collect();
        Arrow { perm, forest, dim: self.dim }
    }

    pub fn tensor_all(parts: &[Arrow], dim: usize) -> Arrow {
        parts.iter().fold(Arrow::identity(0, dim), |acc, a| acc.tensor(a))
    }

    /// The unique `b` with `b.compose(self) == target`, if any.
    pub fn divide(target: &Arrow, by: &Arrow) -> Option<Arrow> {
        if target.codomain() != by.codomain() {
            return None;
        }
        let mine = realize(by);
        let places = realize(target)
            .into_iter()
            .map(|t| {
                mine.iter().enumerate().find_map(|(i, p)| {
                    if p.target != t.target {
                        return None;
                    }
                    t.cell.relative_to(&p.cell).map(|cell| Placement { target: i, cell })
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Arrow::from_placements(&places, by.domain(), target.dim)
    }

    /// Canonical minimal square filling: `(b1, b2)` with `b1 ; a1 == b2 ; a2`.
    pub fn square_fill(a1: &Arrow, a2: &Arrow) -> Result<(Arrow, Arrow)> {
        if a1.codomain() != a2.codomain() {
            return Err(Error::CodomainMismatch(a1.codomain(), a2.codomain()));
        }
        let overlay: Vec<Operation> = a1
            .forest
            .iter()
            .zip(&a2.forest)
            .map(|(p, q)| p.common_refinement(q).refined)
            .collect();
        let target = Arrow::from_operations_dim(overlay, a1.dim);
        let b1 = Arrow::divide(&target, a1).expect("overlay refines the left leg");
        let b2 = Arrow::divide(&target, a2).expect("overlay refines the right leg");
        Ok((b1, b2))
    }

    fn from_operations_dim(forest: Vec<Operation>, dim: usize) -> Arrow {
        let n = forest.iter().map(Operation::arity).sum();
        Self::normalize(Permutation::identity(n), forest, dim)
    }

    /// Combine two square fillings `(i, h)` and `(j, g)` of the cospan `(x, y)` into one
    /// commuting diagram. Equalizers are identities here since arrows cancel.
    pub fn combine_fillings(
        f1: (&Arrow, &Arrow),
        f2: (&Arrow, &Arrow),
        cospan: (&Arrow, &Arrow),
    ) -> Result<CommonFilling> {
        let (i, h) = f1;
        let (j, g) = f2;
        let (x, y) = cospan;
        let commutes = |u: &Arrow, v: &Arrow| -> Result<bool> {
            Ok(u.domain() == v.domain() && u.compose(x)? == v.compose(y)?)
        };
        if x.codomain() != y.codomain() || !commutes(i, h)? || !commutes(j, g)? {
            return Err(Error::NotFillings);
        }
        let (c, d) = Arrow::square_fill(&i.compose(x)?, &j.compose(x)?)?;
        let out = CommonFilling {
            alpha: c.compose(i)?,
            beta: c.compose(h)?,
            delta: c,
            epsilon: d,
        };
        let ok = out.delta.compose(i)? == out.alpha
            && out.delta.compose(h)? == out.beta
            && out.epsilon.compose(j)? == out.alpha
            && out.epsilon.compose(g)? == out.beta
            && out.alpha.compose(x)? == out.beta.compose(y)?
            && out.delta.compose(i)?.compose(x)? == out.epsilon.compose(g)?.compose(y)?;
        if !ok {
            return Err(Error::NotFillings);
        }
        Ok(out)
    }

    /// Write `self` as a tensor product of arrows into consecutive codomain blocks of
    /// the given lengths, if its permutation respects the blocks.
    pub fn split(&self, lens: &[usize]) -> Option<Vec<Arrow>> {
        if lens.iter().sum::<usize>() != self.codomain() {
            return None;
        }
        let mut parts = Vec::with_capacity(lens.len());
        let mut cod = 0;
        let mut dom = 0;
        for &len in lens {
            let forest = self.forest[cod..cod + len].to_vec();
            let size: usize = forest.iter().map(Operation::arity).sum();
            let mut imgs = Vec::with_capacity(size);
            for i in dom..dom + size {
                let j = self.perm.apply(i);
                if !(dom..dom + size).contains(&j) {
                    return None;
                }
                imgs.push(j - dom);
            }
            parts.push(Arrow { perm: Permutation::from_images_unchecked(imgs), forest, dim: self.dim });
            cod += len;
            dom += size;
        }
        Some(parts)
    }
}

/// Move the forest across a permutation of its outputs: `(id, forest) ; (tau, id)`
/// equals `(tau_hat, forest_hat)`.
pub fn push_perm(forest: &[Operation], tau: &Permutation) -> Result<(Permutation, Vec<Operation>)> {
    if forest.len() != tau.len() {
        return Err(Error::SizeMismatch { expected: forest.len(), got: tau.len() });
    }
    let sizes: Vec<usize> = forest.iter().map(Operation::arity).collect();
    let mut moved = forest.to_vec();
    for (j, op) in forest.iter().enumerate() {
        moved[tau.apply(j)] = op.clone();
    }
    Ok((tau.on_blocks(&sizes), moved))
}
