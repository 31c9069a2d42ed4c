//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock limits.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cube, grid_equal, grid_product_law, marked_arrows, partitions, tree};
use opgroup::action::{act, decompose, stabilizes_pointwise, xi, StabilizerWitness};
use opgroup::backend::{realize, CutTree};
use opgroup::certificates::{
    alternating_words_nontrivial, free_action_check, infinite_order_check, pingpong_check,
    sigma_span_report, torsion_check, SplitWitness,
};
use opgroup::markings::{pull_back, MarkedArrow, Marking, SemiPartitionClass};
use opgroup::poset::{check_filtered, construct_partition_n, enumerate_pn, n_condition};
use opgroup::{sample, Arrow, Backend, Error, Flavor, Span};

type Outcome = Result<String, String>;

/// Number, name, check, and wall-clock limit in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_torsion() -> Outcome {
    let t = tree(2);
    let w = SplitWitness::standard(&t, 1).map_err(|e| e.to_string())?;
    let o1 = w.gamma1().order(4, 2);
    let o2 = w.gamma2().order(4, 2);
    ensure(o1 == Some(2) && o2 == Some(3), || format!("orders {o1:?}, {o2:?}"))?;
    ensure(torsion_check(&t, &w, 4).all_ok(), || "torsion report has violations".into())?;
    Ok("orders 2 and 3".into())
}

fn c2_infinite() -> Outcome {
    let t = tree(2);
    let w = SplitWitness::standard(&t, 1).map_err(|e| e.to_string())?;
    let r = infinite_order_check(&t, &w, 64).map_err(|e| e.to_string())?;
    ensure(r.rows.len() == 64 && r.all_ok(), || format!("{} trivial powers", r.violations()))?;
    ensure(w.infinite_element().order(64, 2).is_none(), || "finite order".into())?;
    Ok("no power 1..=64 trivial".into())
}

fn c3_pingpong() -> Outcome {
    let r = pingpong_check(&tree(2), 6).map_err(|e| e.to_string())?;
    ensure(r.all_ok(), || format!("{} violations", r.violations()))?;
    Ok(format!("{} inclusions checked", r.rows.len()))
}

fn c4_words() -> Outcome {
    let r = alternating_words_nontrivial(&tree(2), 10).map_err(|e| e.to_string())?;
    // 3 words of length 1, then each syllable has 2 or 1 successors
    ensure(r.rows.len() == 217, || format!("{} words", r.rows.len()))?;
    ensure(r.all_ok(), || format!("{} trivial words", r.violations()))?;
    Ok(format!("{} words nontrivial", r.rows.len()))
}

fn c5_group_axioms() -> Outcome {
    let backends = [
        (tree(2), 1),
        (tree(2), 2),
        (tree(3), 1),
        (Backend::kary_tree(2, Flavor::Planar).unwrap(), 2),
        (cube(1), 1),
        (cube(2), 1),
        (cube(2), 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut queries = 0;
    for i in 0..1000 {
        let (b, base) = &backends[i % backends.len()];
        let kb = b.base();
        let spans: Vec<Span> = (0..3).map(|_| sample::span(b, &mut rng, *base, 8)).collect();
        let (g, h, k) = (&spans[0], &spans[1], &spans[2]);
        let id = Span::identity(*base, b.dim());
        let err = |e: Error| e.to_string();
        let lhs = g.mul(h).map_err(err)?.mul(k).map_err(err)?;
        let rhs = g.mul(&h.mul(k).map_err(err)?).map_err(err)?;
        ensure(lhs.equiv(&rhs).map_err(err)?, || format!("associativity fails at sample {i}"))?;
        ensure(g.mul(&id).map_err(err)?.equiv(g).map_err(err)?, || format!("right identity at {i}"))?;
        ensure(id.mul(g).map_err(err)?.equiv(g).map_err(err)?, || format!("left identity at {i}"))?;
        ensure(g.mul(&g.inv()).map_err(err)?.is_trivial() || g.mul(&g.inv()).map_err(err)?.equiv(&id).map_err(err)?,
            || format!("inverse at {i}"))?;

        let gh = g.mul(h).map_err(err)?;
        ensure(grid_product_law(g, h, &gh, kb), || format!("realized product law at {i}"))?;
        let extra_gens = rng.gen_range(0..3);
        let extra = sample::arrow(b, &mut rng, g.den().domain(), extra_gens);
        let g2 = g.expand(&extra).map_err(err)?;
        let conj = g.mul(h).map_err(err)?.mul(&g.inv()).map_err(err)?;
        for (x, y) in [(g, h), (g, &g2), (&gh, &conj), (g, &id), (&lhs, &rhs)] {
            let algebraic = x.equiv(y).map_err(err)?;
            let oracle = grid_equal(x, y, kb);
            ensure(algebraic == oracle, || format!("sp_eq={algebraic} but oracle={oracle} at sample {i}"))?;
            queries += 1;
        }
    }
    Ok(format!("1000 samples, {queries} equality queries agree with the grid oracle"))
}

fn c6_marked_arrows() -> Outcome {
    let backends = [tree(2), cube(1), cube(2)];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut total = 0;
    for b in &backends {
        let all = marked_arrows(b, 1, 2);
        let index: HashMap<MarkedArrow, usize> = all.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = all.len();
        total += n;
        let mut sub = vec![false; n * n];
        for (i, p) in all.iter().enumerate() {
            for (j, q) in all.iter().enumerate() {
                let v = p.subset(q).map_err(|e| e.to_string())?;
                sub[i * n + j] = v;
                // a second filling: swapped legs, then refined by a random arrow
                let (c2, c1) = Arrow::square_fill(q.arrow(), p.arrow()).map_err(|e| e.to_string())?;
                let gamma_gens = rng.gen_range(0..2);
                let gamma = sample::arrow(b, &mut rng, c1.domain(), gamma_gens);
                let (f1, f2) = (gamma.compose(&c1).unwrap(), gamma.compose(&c2).unwrap());
                let w = pull_back(&f1, p.marking()).unwrap().subset(&pull_back(&f2, q.marking()).unwrap()).unwrap();
                ensure(v == w, || format!("filling dependence for pair ({i},{j})"))?;
            }
        }
        for i in 0..n {
            ensure(sub[i * n + i], || format!("reflexivity fails at {i}"))?;
        }
        for i in 0..n {
            for j in 0..n {
                if !sub[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    ensure(!sub[j * n + k] || sub[i * n + k], || format!("transitivity fails at ({i},{j},{k})"))?;
                }
            }
        }
        // submultiball characterizations of inclusion and equality
        let balls: Vec<Vec<usize>> = all
            .iter()
            .map(|p| {
                SemiPartitionClass::new(p.clone())
                    .submultiballs()
                    .iter()
                    .map(|s| index[s.rep()])
                    .collect()
            })
            .collect();
        let eq = |i: usize, j: usize| sub[i * n + j] && sub[j * n + i];
        for i in 0..n {
            for j in 0..n {
                let by_balls = balls[i].iter().all(|&q| balls[j].iter().any(|&p| sub[q * n + p]));
                ensure(by_balls == sub[i * n + j], || format!("inclusion vs submultiballs at ({i},{j})"))?;
                let same_balls = balls[i].iter().all(|&q| balls[j].iter().any(|&p| eq(p, q)))
                    && balls[j].iter().all(|&p| balls[i].iter().any(|&q| eq(p, q)));
                ensure(same_balls == eq(i, j), || format!("equality vs submultiballs at ({i},{j})"))?;
            }
        }
    }
    Ok(format!("{total} marked arrows over 3 backends"))
}

fn c7_action() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for b in [tree(2), cube(2)] {
        let classes = enumerate_pn(&b, 1, 2, 1, 0).map_err(|e| e.to_string())?.elements;
        let raw = partitions(&b, 1, 2);
        let err = |e: Error| e.to_string();
        for _ in 0..100 {
            let g = sample::span(&b, &mut rng, 1, 8);
            let h = sample::span(&b, &mut rng, 1, 8);
            let gh = g.mul(&h).map_err(err)?;
            let moved: Vec<SemiPartitionClass> = classes.iter().map(|p| act(&g, p)).collect::<Result<_, _>>().map_err(err)?;
            for (p, gp) in classes.iter().zip(&moved) {
                ensure(act(&Span::identity(1, b.dim()), p).map_err(err)?.equiv(p).map_err(err)?, || "identity law".into())?;
                let two = act(&g, &act(&h, p).map_err(err)?).map_err(err)?;
                ensure(act(&gh, p).map_err(err)?.equiv(&two).map_err(err)?, || "composition law".into())?;
                let balls: Vec<SemiPartitionClass> =
                    p.submultiballs().iter().map(|s| act(&g, s)).collect::<Result<_, _>>().map_err(err)?;
                let image_balls = gp.submultiballs();
                ensure(balls.len() == image_balls.len(), || "submultiball count changed".into())?;
                for x in &image_balls {
                    let mut found = false;
                    for y in &balls {
                        if x.equiv(y).map_err(err)? {
                            found = true;
                            break;
                        }
                    }
                    ensure(found, || "submultiballs of the image differ".into())?;
                }
            }
            for (i, p) in classes.iter().enumerate() {
                for (j, q) in classes.iter().enumerate() {
                    if p.subset(q).map_err(err)? {
                        ensure(moved[i].subset(&moved[j]).map_err(err)?, || "order not preserved".into())?;
                    }
                }
            }
            for p in &raw {
                let gp = act(&g, p).map_err(err)?;
                ensure(act(&g.inv(), &gp).map_err(err)?.equiv(p).map_err(err)?, || "inverse law".into())?;
            }
            checked += 1;
        }
        ensure(!classes.is_empty(), || "no partitions".into())?;
    }
    Ok(format!("{checked} random elements over two backends"))
}

fn c8_stabilizer() -> Outcome {
    let t = tree(2);
    let caret = Arrow::from_operations(vec![t.caret()]);
    let c = t.caret();
    let lc = Arrow::from_operations(vec![c.compose(0, &c).unwrap()]);
    let witnesses = [
        SemiPartitionClass::new(MarkedArrow::new(caret.clone(), Marking::full(vec![0, 1])).unwrap()),
        SemiPartitionClass::new(MarkedArrow::new(lc.clone(), Marking::full(vec![0, 1, 2])).unwrap()),
        SemiPartitionClass::new(MarkedArrow::new(lc, Marking::full(vec![0, 1, 0])).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let err = |e: Error| e.to_string();
    let mut rounds = 0;
    for p in &witnesses {
        let w = StabilizerWitness::new(p).map_err(err)?;
        for _ in 0..200 {
            let comps: Vec<Span> = w.subwords().iter().map(|&len| sample::span(&t, &mut rng, len, 8)).collect();
            let g = xi(&comps, &w).map_err(err)?;
            ensure(stabilizes_pointwise(&g, p).map_err(err)?, || "xi image moves a ball".into())?;
            let back = decompose(&g, &w).map_err(err)?;
            for (a, b) in back.iter().zip(&comps) {
                ensure(a.equiv(b).map_err(err)?, || "round trip changed a component".into())?;
            }
            rounds += 1;
        }
    }
    let g1 = SplitWitness::standard(&t, 1).unwrap().gamma1();
    let w = StabilizerWitness::new(&witnesses[0]).map_err(err)?;
    ensure(decompose(&g1, &w) == Err(Error::NotInStabilizer), || "gamma1 not rejected".into())?;
    Ok(format!("{rounds} round trips; gamma1 rejected"))
}

fn c9_poset() -> Outcome {
    let err = |e: Error| e.to_string();
    let t = tree(2);
    let pn = enumerate_pn(&t, 1, 1, 1, 1).map_err(err)?;
    ensure(pn.elements.len() == 2, || format!("{} classes", pn.elements.len()))?;
    for b in [tree(2), tree(3), cube(2)] {
        for y in 1..=2 {
            for n in 1..=4 {
                let p = construct_partition_n(&b, 1, y, n).map_err(err)?;
                ensure(p.is_partition() && n_condition(&b, &p, y, n).map_err(err)?, || {
                    format!("construction fails for y={y}, n={n}")
                })?;
            }
        }
    }
    let mut pairs = 0;
    for b in [tree(2), cube(2)] {
        for n in 1..=2 {
            for depth in 0..=2 {
                let trunc = enumerate_pn(&b, 1, depth, 1, n).map_err(err)?;
                let rows = check_filtered(&b, &trunc).map_err(err)?;
                ensure(rows.iter().all(|r| r.ok), || format!("unfiltered pair at depth {depth}, n={n}"))?;
                pairs += rows.len();
            }
        }
    }
    Ok(format!("2 classes; constructions pass; {pairs} upper bounds verified"))
}

fn c10_freeness() -> Outcome {
    let err = |e: Error| e.to_string();
    let t = tree(2);
    let free = free_action_check(&t, 4, 3).map_err(err)?;
    ensure(free.all_ok(), || format!("{} fixed arrows", free.violations()))?;
    let sigma = sigma_span_report(&t, 4, 3).map_err(err)?;
    ensure(sigma.all_ok(), || format!("{} sigma-span violations", sigma.violations()))?;
    ensure(sigma.rows.iter().all(|r| r.witness.is_none()), || "routes disagree".into())?;
    Ok(format!("{} free-action and {} sigma-span instances", free.rows.len(), sigma.rows.len()))
}

fn tree_to_cut(op_tree: &Backend, op: &opgroup::Operation) -> CutTree {
    op_tree.cut_witness(op).unwrap()
}

fn c11_coherence() -> Outcome {
    let t = tree(2);
    let c = cube(1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let base = rng.gen_range(1..=3);
        let gens = rng.gen_range(0..=6);
        let a = sample::arrow(&t, &mut rng, base, gens);
        let forest = a.forest().iter().map(|op| c.operation_from_cut_tree(&tree_to_cut(&t, op)).unwrap()).collect();
        let planar = c.forest_arrow(forest).map_err(|e| e.to_string())?;
        let b = c.permutation_arrow(a.perm().clone()).unwrap().compose(&planar).unwrap();
        let ra: Vec<_> = realize(&a).iter().map(|p| (p.target, p.cell.offset(0, 2), p.cell.exponent(0))).collect();
        let rb: Vec<_> = realize(&b).iter().map(|p| (p.target, p.cell.offset(0, 2), p.cell.exponent(0))).collect();
        ensure(ra == rb, || format!("realizations differ at sample {i}"))?;
    }
    let d2 = cube(2);
    let g = d2.generators();
    let vh = g[0].graft(&[g[1].clone(), g[1].clone()]).canonicalize().0;
    let hv = g[1].graft(&[g[0].clone(), g[0].clone()]).canonicalize().0;
    ensure(vh == hv && vh.arity() == 4, || "quadrant cut orders disagree".into())?;
    Ok("500 arrows agree; quadrant cut orders agree".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "torsion certificates", c1_torsion, Some(1)),
        (2, "infinite order", c2_infinite, Some(5)),
        (3, "ping-pong at depth 6", c3_pingpong, Some(60)),
        (4, "alternating words up to length 10", c4_words, Some(60)),
        (5, "group axioms and grid oracle", c5_group_axioms, None),
        (6, "marked-arrow calculus", c6_marked_arrows, None),
        (7, "action suite", c7_action, None),
        (8, "stabilizer decomposition", c8_stabilizer, None),
        (9, "poset of partitions", c9_poset, None),
        (10, "freeness and sigma-spans", c10_freeness, None),
        (11, "backend coherence", c11_coherence, None),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("took {:.2} s, limit {secs} s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        let limit = limit.map_or(String::new(), |s| format!(", limit {s} s"));
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} ({:.2} s{limit})", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} ({:.2} s{limit})", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
