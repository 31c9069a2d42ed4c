//! The action of the group on semi-partitions and the product decomposition of
//! pointwise stabilizers.

use crate::category::{Arrow, Permutation};
use crate::error::{Error, Result};
use crate::fractions::Span;
use crate::markings::{pull_back, MarkedArrow, Marking, SemiPartitionClass};

/// `g . S`: fill the numerator of `g` against the representative and pull the marking
/// back along the filling.
pub fn act(g: &Span, s: &SemiPartitionClass) -> Result<SemiPartitionClass> {
    if g.base() != s.base() {
        return Err(Error::BaseMismatch(g.base(), s.base()));
    }
    let rep = s.rep();
    let (b1, b2) = Arrow::square_fill(g.num(), rep.arrow())?;
    let arrow = b1.compose(g.den())?;
    let marking = pull_back(&b2, rep.marking())?;
    Ok(SemiPartitionClass::new(MarkedArrow::new(arrow, marking)?))
}

/// Does `g` fix every submultiball of the partition `p`?
pub fn stabilizes_pointwise(g: &Span, p: &SemiPartitionClass) -> Result<bool> {
    if !p.is_partition() {
        return Err(Error::NotPartitionClass);
    }
    for b in p.submultiballs() {
        if !act(g, &b)?.equiv(&b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stable sort of coordinates by symbol, as the permutation arrow listing them in
/// that order.
fn sorting_arrow(marking: &Marking, dim: usize) -> Arrow {
    let mut order: Vec<usize> = (0..marking.len()).collect();
    order.sort_by_key(|&i| marking.get(i));
    Arrow::permutation(Permutation::new(order).expect("sorted indices"), dim)
}

/// A partition representative `(alpha, m)` with ordered marking: the domain of `alpha`
/// is the concatenation of one subword per symbol.
#[derive(Clone, Debug)]
pub struct StabilizerWitness {
    partition: SemiPartitionClass,
    subwords: Vec<usize>,
    base_arrow: Arrow,
    marking: Marking,
}

impl StabilizerWitness {
    pub fn new(partition: &SemiPartitionClass) -> Result<Self> {
        if !partition.is_partition() {
            return Err(Error::NotPartitionClass);
        }
        let rep = partition.rep();
        let sort = sorting_arrow(rep.marking(), rep.arrow().dim());
        let base_arrow = sort.compose(rep.arrow())?;
        let marking = pull_back(&sort, rep.marking())?;
        debug_assert!(marking.is_ordered());
        let subwords = marking.blocks().iter().map(Vec::len).collect();
        Ok(StabilizerWitness { partition: partition.clone(), subwords, base_arrow, marking })
    }

    pub fn partition(&self) -> &SemiPartitionClass {
        &self.partition
    }

    pub fn subwords(&self) -> &[usize] {
        &self.subwords
    }

    pub fn base_arrow(&self) -> &Arrow {
        &self.base_arrow
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }
}

/// Tensor the component spans and conjugate by the base arrow.
pub fn xi(components: &[Span], w: &StabilizerWitness) -> Result<Span> {
    if components.len() != w.subwords.len() {
        return Err(Error::SizeMismatch { expected: w.subwords.len(), got: components.len() });
    }
    for (c, &len) in components.iter().zip(&w.subwords) {
        if c.base() != len {
            return Err(Error::BaseMismatch(c.base(), len));
        }
    }
    let dim = w.base_arrow.dim();
    let product = components
        .iter()
        .fold(Span::identity(0, dim), |acc, c| acc.tensor(c));
    product.push_forward(&w.base_arrow)
}

/// Inverse of [`xi`] on the pointwise stabilizer.
pub fn decompose(g: &Span, w: &StabilizerWitness) -> Result<Vec<Span>> {
    let alpha = &w.base_arrow;
    if g.base() != alpha.codomain() {
        return Err(Error::BaseMismatch(g.base(), alpha.codomain()));
    }
    // Force the denominator, then the numerator, through alpha.
    let (b1, b2) = Arrow::square_fill(g.den(), alpha)?;
    let (e1, e2) = Arrow::square_fill(&b1.compose(g.num())?, alpha)?;
    let z_den = e1.compose(&b2)?;
    let z_num = e2;
    let mu = pull_back(&z_den, &w.marking)?;
    if mu != pull_back(&z_num, &w.marking)? {
        return Err(Error::NotInStabilizer);
    }
    let sort = sorting_arrow(&mu, alpha.dim());
    let dens = sort.compose(&z_den)?.split(&w.subwords).ok_or(Error::NotInStabilizer)?;
    let nums = sort.compose(&z_num)?.split(&w.subwords).ok_or(Error::NotInStabilizer)?;
    dens.into_iter().zip(nums).map(|(d, n)| Span::new(d, n)).collect()
}
