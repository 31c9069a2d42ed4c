//! Executable group-theoretic certificates: torsion, a ping-pong pair generating
//! `Z/2 * Z/3`, an element of infinite order, and freeness of the permutation action.

use serde::Serialize;

use crate::action::act;
use crate::backend::{Backend, Operation};
use crate::category::{Arrow, Permutation};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::fractions::Span;
use crate::markings::{MarkedArrow, Marking, SemiPartitionClass};
use crate::syntax::{format_arrow, format_marked_arrow, format_permutation, format_span};

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub check: String,
    pub instance: String,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    fn push(&mut self, check: &str, instance: String, ok: bool, witness: Option<String>) {
        self.rows.push(Row { check: check.to_string(), instance, ok, witness });
    }

    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok).count()
    }

    pub fn all_ok(&self) -> bool {
        self.violations() == 0
    }
}

/// An arrow `A1 X A2 X A3 -> X`: the two `X` blocks start at `first` and `second`.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    varpi: Arrow,
    first: usize,
    second: usize,
}

/// Block positions of the 3-cycle in the numerator of the order-3 element.
const GAMMA2_CYCLE: [usize; 3] = [2, 0, 1];

impl SplitWitness {
    pub fn new(varpi: Arrow, first: usize, second: usize) -> Result<Self> {
        let x = varpi.codomain();
        if x == 0 || first + x > second || second + x > varpi.domain() {
            return Err(Error::NotSplit);
        }
        Ok(SplitWitness { varpi, first, second })
    }

    /// One first generator per coordinate of `x`; the blocks are the first `2x`
    /// inputs.
    pub fn standard(backend: &Backend, x: usize) -> Result<Self> {
        if x == 0 {
            return Err(Error::NotSplit);
        }
        let varpi = Arrow::from_operations(vec![backend.caret(); x]);
        Self::new(varpi, 0, x)
    }

    pub fn varpi(&self) -> &Arrow {
        &self.varpi
    }

    fn x(&self) -> usize {
        self.varpi.codomain()
    }

    fn dim(&self) -> usize {
        self.varpi.dim()
    }

    /// `varpi` applied to the block starting at `start` of its own domain.
    fn varpi_at(&self, start: usize) -> Arrow {
        let d = self.varpi.domain();
        let left = Arrow::identity(start, self.dim());
        let right = Arrow::identity(d - start - self.x(), self.dim());
        left.tensor(&self.varpi).tensor(&right)
    }

    /// Coordinate permutation moving block `t` (of length `x`, at `starts[t]`) onto
    /// block `cycle[t]`.
    fn block_perm(&self, n: usize, starts: &[usize], cycle: &[usize]) -> Arrow {
        let mut imgs: Vec<usize> = (0..n).collect();
        for (t, &s) in starts.iter().enumerate() {
            for r in 0..self.x() {
                imgs[s + r] = starts[cycle[t]] + r;
            }
        }
        Arrow::permutation(Permutation::new(imgs).expect("disjoint blocks"), self.dim())
    }

    /// Swap the two blocks: order 2.
    pub fn gamma1(&self) -> Span {
        let d = self.varpi.domain();
        let sigma = self.block_perm(d, &[self.first, self.second], &[1, 0]);
        Span::new(self.varpi.clone(), sigma.compose(&self.varpi).expect("same domain")).expect("parallel")
    }

    /// Split the first block once more and rotate the three blocks: order 3.
    pub fn gamma2(&self) -> Span {
        let d = self.varpi.domain();
        let den = self.varpi_at(self.first).compose(&self.varpi).expect("composable");
        let starts = [2 * self.first, self.first + self.second, self.second + d - self.x()];
        let sigma = self.block_perm(den.domain(), &starts, &GAMMA2_CYCLE);
        Span::new(den.clone(), sigma.compose(&den).expect("same domain")).expect("parallel")
    }

    /// Left-associated against right-associated double split.
    pub fn infinite_element(&self) -> Span {
        let den = self.varpi_at(self.first).compose(&self.varpi).expect("composable");
        let num = self.varpi_at(self.second).compose(&self.varpi).expect("composable");
        Span::new(den, num).expect("parallel")
    }

    fn block_class(&self, start: usize) -> SemiPartitionClass {
        let mut symbols = vec![None; self.varpi.domain()];
        for s in &mut symbols[start..start + self.x()] {
            *s = Some(0);
        }
        SemiPartitionClass::new(MarkedArrow::new(self.varpi.clone(), Marking::new(symbols)).expect("lengths"))
    }

    /// The second block, marked.
    pub fn b1(&self) -> SemiPartitionClass {
        self.block_class(self.second)
    }

    /// The first block, marked.
    pub fn b2(&self) -> SemiPartitionClass {
        self.block_class(self.first)
    }
}

pub fn make_gamma1(backend: &Backend, x: usize) -> Result<Span> {
    Ok(SplitWitness::standard(backend, x)?.gamma1())
}

pub fn make_gamma2(backend: &Backend, x: usize) -> Result<Span> {
    Ok(SplitWitness::standard(backend, x)?.gamma2())
}

pub fn make_infinite_element(backend: &Backend, x: usize) -> Result<Span> {
    Ok(SplitWitness::standard(backend, x)?.infinite_element())
}

/// Orders of the two torsion elements, searched up to `max_n`.
pub fn torsion_check(backend: &Backend, w: &SplitWitness, max_n: usize) -> Report {
    let mut r = Report::default();
    for (name, g, expected) in [("gamma1", w.gamma1(), 2), ("gamma2", w.gamma2(), 3)] {
        let order = g.order(max_n, backend.base());
        r.push(
            "torsion",
            format!("{name} = {}", format_span(backend, &g)),
            order == Some(expected),
            Some(order.map_or("none".into(), |n| n.to_string())),
        );
    }
    r
}

/// Balls below `varpi` built from the first generator alone, single-marked.
fn varpi_tree_balls(backend: &Backend, depth: usize) -> Vec<SemiPartitionClass> {
    let levels = enumerate::operations_from(&[backend.caret()], backend.identity_op(), depth);
    levels
        .into_iter()
        .flatten()
        .flat_map(|op: Operation| {
            let n = op.arity();
            let arrow = Arrow::from_operations(vec![op]);
            (0..n).map(move |i| {
                SemiPartitionClass::new(MarkedArrow::new(arrow.clone(), Marking::single(n, i)).expect("lengths"))
            })
        })
        .collect()
}

fn is_in(backend: &Backend, c: &SemiPartitionClass, b: &SemiPartitionClass) -> Result<bool> {
    Ok(c.is_multiball() && c.is_ball(backend)? && c.subset(b)?)
}

/// `gamma1 A2 ⊆ A1` and `gamma2^{1,2} A1 ⊆ A2` over all balls with at most `depth`
/// generators, at base 1.
pub fn pingpong_check(backend: &Backend, depth: usize) -> Result<Report> {
    let w = SplitWitness::standard(backend, 1)?;
    let (b1, b2) = (w.b1(), w.b2());
    let g1 = w.gamma1();
    let g2 = w.gamma2();
    let g2sq = g2.pow(2, backend.base());
    let mut r = Report::default();
    for ball in varpi_tree_balls(backend, depth) {
        let in1 = is_in(backend, &ball, &b1)?;
        let in2 = is_in(backend, &ball, &b2)?;
        let instance = format_marked_arrow(backend, ball.rep());
        if in1 && in2 {
            r.push("pingpong.disjoint", instance.clone(), false, None);
        }
        if in2 {
            let image = act(&g1, &ball)?;
            let ok = is_in(backend, &image, &b1)?;
            r.push("pingpong.gamma1", instance.clone(), ok, Some(format_marked_arrow(backend, image.rep())));
        }
        if in1 {
            for (name, g) in [("pingpong.gamma2", &g2), ("pingpong.gamma2^2", &g2sq)] {
                let image = act(g, &ball)?;
                let ok = is_in(backend, &image, &b2)?;
                r.push(name, instance.clone(), ok, Some(format_marked_arrow(backend, image.rep())));
            }
        }
    }
    Ok(r)
}

/// Letters of reduced words in `Z/2 * Z/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Syllable {
    G1,
    G2,
    G2Inv,
}

impl Syllable {
    fn name(self) -> &'static str {
        match self {
            Syllable::G1 => "g1",
            Syllable::G2 => "g2",
            Syllable::G2Inv => "g2^-1",
        }
    }

    fn next(self) -> &'static [Syllable] {
        match self {
            Syllable::G1 => &[Syllable::G2, Syllable::G2Inv],
            _ => &[Syllable::G1],
        }
    }
}

/// Every alternating word of at most `max_len` syllables is non-trivial.
pub fn alternating_words_nontrivial(backend: &Backend, max_len: usize) -> Result<Report> {
    alternating_words_for(backend, &SplitWitness::standard(backend, 1)?, max_len)
}

/// [`alternating_words_nontrivial`] for the torsion elements of any split witness.
pub fn alternating_words_for(backend: &Backend, w: &SplitWitness, max_len: usize) -> Result<Report> {
    let g1 = w.gamma1();
    let g2 = w.gamma2();
    let g2inv = g2.inv();
    let letter = |s: Syllable| match s {
        Syllable::G1 => &g1,
        Syllable::G2 => &g2,
        Syllable::G2Inv => &g2inv,
    };
    let mut r = Report::default();
    let mut stack: Vec<(Vec<Syllable>, Span)> = [Syllable::G1, Syllable::G2, Syllable::G2Inv]
        .into_iter()
        .map(|s| (vec![s], letter(s).clone()))
        .collect();
    stack.reverse();
    while let Some((word, value)) = stack.pop() {
        let name: Vec<&str> = word.iter().map(|s| s.name()).collect();
        let trivial = value.is_trivial();
        r.push("words", name.join(" "), !trivial, trivial.then(|| format_span(backend, &value)));
        if word.len() < max_len {
            let last = *word.last().expect("non-empty");
            for &s in last.next().iter().rev() {
                let v = value.mul(letter(s))?.reduce(backend.base());
                let mut longer = word.clone();
                longer.push(s);
                stack.push((longer, v));
            }
        }
    }
    Ok(r)
}

/// No power `1..=max_n` of the infinite-order element is trivial.
pub fn infinite_order_check(backend: &Backend, w: &SplitWitness, max_n: usize) -> Result<Report> {
    let g = w.infinite_element();
    let mut acc = g.clone();
    let mut r = Report::default();
    for n in 1..=max_n {
        let trivial = acc.is_trivial();
        r.push("infinite", format!("gamma^{n}"), !trivial, trivial.then(|| format_span(backend, &acc)));
        acc = acc.mul(&g)?.reduce(backend.base());
    }
    Ok(r)
}

/// Arrows with a permutation part, into words of length `1..=max_size` with at most
/// `max_depth` generators and domain length at most `max_size`.
fn small_arrows(backend: &Backend, max_size: usize, max_depth: usize) -> Vec<Arrow> {
    (1..=max_size)
        .flat_map(|c| enumerate::planar_arrows(backend, c, max_depth))
        .filter(|a| a.domain() <= max_size)
        .flat_map(|a| {
            Permutation::all(a.domain())
                .into_iter()
                .map(move |p| Arrow::permutation(p, a.dim()).compose(&a).expect("domains agree"))
        })
        .collect()
}

fn require_symmetric(backend: &Backend) -> Result<()> {
    if !backend.is_symmetric() {
        return Err(Error::Flavor("permutations act only in the symmetric flavor".into()));
    }
    Ok(())
}

/// A non-identity permutation never fixes an arrow: `(sigma, id) ; alpha != alpha`.
pub fn free_action_check(backend: &Backend, max_perm_size: usize, max_depth: usize) -> Result<Report> {
    require_symmetric(backend)?;
    let mut r = Report::default();
    for alpha in small_arrows(backend, max_perm_size, max_depth) {
        for sigma in Permutation::all(alpha.domain()).into_iter().filter(|s| !s.is_identity()) {
            let moved = Arrow::permutation(sigma.clone(), alpha.dim()).compose(&alpha)?;
            let ok = moved != alpha;
            r.push(
                "freeaction",
                format!("{} on {}", format_permutation(&sigma), format_arrow(backend, &alpha)),
                ok,
                (!ok).then(|| format_arrow(backend, &moved)),
            );
        }
    }
    Ok(r)
}

fn sigma_span(alpha: &Arrow, sigma: &Permutation) -> Result<Span> {
    if sigma.len() != alpha.domain() {
        return Err(Error::SizeMismatch { expected: alpha.domain(), got: sigma.len() });
    }
    Span::new(alpha.clone(), Arrow::permutation(sigma.clone(), alpha.dim()).compose(alpha)?)
}

/// Is the span `(alpha, sigma ; alpha)` the identity?
pub fn sigma_span_check(alpha: &Arrow, sigma: &Permutation) -> Result<bool> {
    let g = sigma_span(alpha, sigma)?;
    g.equiv(&Span::identity(g.base(), alpha.dim()))
}

/// The same question through the action: does the span fix the ball marking one
/// coordinate that `sigma^-1` moves? Identity permutations fix everything.
pub fn sigma_span_marked(alpha: &Arrow, sigma: &Permutation) -> Result<bool> {
    let g = sigma_span(alpha, sigma)?;
    let inv = sigma.inverse();
    let Some(i) = (0..sigma.len()).find(|&i| inv.apply(i) != i) else {
        return Ok(true);
    };
    let r = SemiPartitionClass::new(MarkedArrow::new(alpha.clone(), Marking::single(sigma.len(), i))?);
    act(&g, &r)?.equiv(&r)
}

/// Both routes for every non-identity permutation and small arrow; a row passes when
/// both report a non-trivial element.
pub fn sigma_span_report(backend: &Backend, max_perm_size: usize, max_depth: usize) -> Result<Report> {
    require_symmetric(backend)?;
    let mut r = Report::default();
    for alpha in small_arrows(backend, max_perm_size, max_depth) {
        for sigma in Permutation::all(alpha.domain()).into_iter().filter(|s| !s.is_identity()) {
            let algebraic = sigma_span_check(&alpha, &sigma)?;
            let marked = sigma_span_marked(&alpha, &sigma)?;
            r.push(
                "sigma",
                format!("{} on {}", format_permutation(&sigma), format_arrow(backend, &alpha)),
                !algebraic && !marked,
                (algebraic != marked).then(|| format!("routes disagree: sp_eq={algebraic} action={marked}")),
            );
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::Flavor;
    use crate::syntax::parse_arrow;

    fn t2() -> Backend {
        Backend::kary_tree(2, Flavor::Symmetric).unwrap()
    }

    #[test]
    fn torsion_orders() {
        let t = t2();
        let w = SplitWitness::standard(&t, 1).unwrap();
        assert_eq!(w.gamma1().order(4, 2), Some(2));
        assert_eq!(w.gamma2().order(4, 2), Some(3));
        assert_eq!(
            w.gamma2().num().perm(),
            &Permutation::new(vec![2, 0, 1]).unwrap()
        );
        assert!(torsion_check(&t, &w, 4).all_ok());
        assert_eq!(make_gamma1(&t, 0).unwrap_err(), Error::NotSplit);
    }

    #[test]
    fn infinite_element_is_comb_pair() {
        let t = t2();
        let g = make_infinite_element(&t, 1).unwrap();
        assert_eq!(g.den(), &parse_arrow(&t, "left-comb").unwrap());
        assert_eq!(g.num(), &parse_arrow(&t, "right-comb").unwrap());
        let w = SplitWitness::standard(&t, 1).unwrap();
        assert!(infinite_order_check(&t, &w, 16).unwrap().all_ok());
    }

    #[test]
    fn gamma1_moves_b2_to_b1() {
        let t = t2();
        let w = SplitWitness::standard(&t, 1).unwrap();
        assert!(act(&w.gamma1(), &w.b2()).unwrap().equiv(&w.b1()).unwrap());
        let r = pingpong_check(&t, 1).unwrap();
        assert!(r.all_ok());
        assert!(!r.rows.is_empty());
    }

    #[test]
    fn short_words() {
        let r = alternating_words_nontrivial(&t2(), 3).unwrap();
        // g1, g2, g2^-1; g1 g2, g1 g2^-1, g2 g1, g2^-1 g1; 4 + 4 of length three
        assert_eq!(r.rows.len(), 3 + 4 + 8 - 2);
        assert!(r.all_ok());
    }

    #[test]
    fn sigma_examples() {
        let t = t2();
        let caret = parse_arrow(&t, "caret").unwrap();
        let swap = Permutation::transposition(2, 0, 1);
        assert!(sigma_span_check(&caret, &Permutation::identity(2)).unwrap());
        assert!(!sigma_span_check(&caret, &swap).unwrap());
        assert!(!sigma_span_marked(&caret, &swap).unwrap());
        assert!(sigma_span_check(&caret, &Permutation::identity(3)).is_err());
        let moved = Arrow::permutation(swap, 1).compose(&caret).unwrap();
        assert_ne!(moved, caret);
    }

    #[test]
    fn planar_rejects_permutation_checks() {
        let p = Backend::kary_tree(2, Flavor::Planar).unwrap();
        assert!(matches!(free_action_check(&p, 2, 1), Err(Error::Flavor(_))));
    }
}
