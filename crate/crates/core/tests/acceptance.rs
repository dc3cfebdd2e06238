//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the per-criterion lines are always
//! printed. Expected values come from hand-written tables or from the
//! reference implementations in `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clusterfold::cartan::{check_admissible, fold_doubleprime, fold_prime};
use clusterfold::explorer::report::{explore_report, TypeSetup};
use clusterfold::explorer::{check_independence, enumerate, EnumerateOptions, ExchangeGraph, Mutator};
use clusterfold::fold::{check_consistency_batch, orbit_mutate, project_variable, SeedFolding};
use clusterfold::seed::initial_seed;
use clusterfold::weyl::{longest_word, positive_roots, ReducedWord, RootSystem};
use clusterfold::{CartanMatrix, FoldingData, LaurentPoly, Parallelism, Seed, TypeLabel};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::Matrix;

type Outcome = Result<String, String>;

/// `(number, name, time limit, check)`.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ty(s: &str) -> TypeLabel {
    s.parse().unwrap()
}

fn cartan(s: &str) -> CartanMatrix {
    CartanMatrix::from_type(ty(s))
}

fn entries(c: &CartanMatrix) -> Matrix {
    c.entries().to_vec()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// Standard matrices, typed in by hand.
fn b2() -> Matrix {
    vec![vec![2, -1], vec![-2, 2]]
}
fn c2() -> Matrix {
    vec![vec![2, -2], vec![-1, 2]]
}
fn b3() -> Matrix {
    vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
}
fn c3() -> Matrix {
    vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
}
fn g2() -> Matrix {
    vec![vec![2, -1], vec![-3, 2]]
}
fn f4() -> Matrix {
    vec![
        vec![2, -1, 0, 0],
        vec![-1, 2, -1, 0],
        vec![0, -2, 2, -1],
        vec![0, 0, -1, 2],
    ]
}

fn criterion_1() -> Outcome {
    let cases: [(&str, &[&[u32]], Matrix, Matrix); 5] = [
        ("A3", &[&[1, 3]], b2(), c2()),
        ("A5", &[&[1, 5], &[2, 4]], b3(), c3()),
        ("D4", &[&[3, 4]], c3(), b3()),
        ("D4", &[&[1, 3, 4]], g2(), g2()),
        ("E6", &[&[1, 6], &[3, 5]], f4(), f4()),
    ];
    for (src, cycles, want_prime, want_double) in cases {
        let f = FoldingData::from_cycles(cartan(src), cycles).map_err(|e| format!("{src} {cycles:?}: {e}"))?;
        let (p, d) = (entries(&fold_prime(&f)), entries(&fold_doubleprime(&f)));
        ensure!(common::same_up_to_reordering(&p, &want_prime), "{src} {cycles:?}: C' = {p:?}");
        ensure!(common::same_up_to_reordering(&d, &want_double), "{src} {cycles:?}: C'' = {d:?}");
    }
    Ok("A3, A5, D4 fork, D4 triality, E6".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let types = ["A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"];
    for t in types {
        let c = cartan(t);
        let m = entries(&c);
        let n = m.len();
        for perm in common::permutations(n) {
            let is_auto = (0..n).all(|i| (0..n).all(|j| m[perm[i]][perm[j]] == m[i][j]));
            if !is_auto || perm.iter().enumerate().all(|(i, &p)| i == p) {
                continue;
            }
            // Admissible: no two members of one orbit are joined.
            let mut admissible = true;
            for i in 0..n {
                let mut j = perm[i];
                while j != i {
                    admissible &= m[i][j] == 0;
                    j = perm[j];
                }
            }
            let lib = check_admissible(&c, &perm).map_err(|e| e.to_string())?;
            ensure!(lib == admissible, "{t} {perm:?}: admissibility {lib} vs {admissible}");
            if !admissible {
                continue;
            }
            let f = FoldingData::new(c.clone(), perm.clone()).map_err(|e| e.to_string())?;
            ensure!(
                fold_doubleprime(&f) == fold_prime(&f).transpose(),
                "{t} {perm:?}: C'' is not the transpose of C'"
            );
            checked += 1;
        }
    }
    ensure!(checked >= 8, "only {checked} admissible foldings found");
    Ok(format!("{checked} admissible foldings"))
}

fn criterion_3() -> Outcome {
    let expected = [
        ("A3", 6),
        ("A5", 15),
        ("D4", 12),
        ("C2", 4),
        ("B3", 9),
        ("C3", 9),
        ("G2", 6),
        ("F4", 24),
        ("E6", 36),
    ];
    for (t, n) in expected {
        let c = cartan(t);
        let oracle = common::positive_root_count(&entries(&c));
        let lib = positive_roots(&c).len();
        ensure!(oracle == n && lib == n, "{t}: library {lib}, oracle {oracle}, expected {n}");
        let w = longest_word(&c);
        let idx: Vec<usize> = w.letters().iter().map(|&l| c.index_of(l).unwrap()).collect();
        ensure!(w.len() == n, "{t}: longest word has length {}", w.len());
        ensure!(common::is_reduced(&entries(&c), &idx), "{t}: longest word not reduced (oracle)");
        // Longest: every simple reflection lowers it, i.e. w s_i is not reduced.
        for i in 0..c.rank() {
            let mut longer = idx.clone();
            longer.push(i);
            ensure!(!common::is_reduced(&entries(&c), &longer), "{t}: {w:?} extends by {i}");
        }
    }
    Ok("9 types".into())
}

fn criterion_4() -> Outcome {
    let cases: [(&str, &[&[u32]], &str); 2] = [("A3", &[&[1, 3]], "C2"), ("D4", &[&[1, 3, 4]], "G2")];
    let mut swaps = 0;
    for (src, cycles, folded) in cases {
        let f = FoldingData::from_cycles(cartan(src), cycles).map_err(|e| e.to_string())?;
        let target = common::positive_root_count(&entries(f.source()));
        let rs = RootSystem::new(f.source());
        let words = [longest_word(&fold_doubleprime(&f)), {
            // The other reduced word of the longest element in rank 2.
            let w = longest_word(&fold_doubleprime(&f));
            ReducedWord(w.letters().iter().map(|&l| 3 - l).collect())
        }];
        for w in words {
            let lifted = clusterfold::weyl::lift_word(&w, &f).map_err(|e| format!("{src} {w:?}: {e}"))?;
            let idx: Vec<usize> = lifted
                .letters()
                .iter()
                .map(|&l| f.source().index_of(l).unwrap())
                .collect();
            ensure!(lifted.len() == target, "{src}/{folded}: lifted length {}", lifted.len());
            ensure!(common::is_reduced(&entries(f.source()), &idx), "{src}: lift not reduced (oracle)");
            ensure!(rs.is_reduced(&lifted.word()).unwrap(), "{src}: lift not reduced (library)");
            let element = rs.element(&lifted.word()).unwrap();
            let matrix = common::word_matrix(&entries(f.source()), &idx);
            for blk in lifted.blocks() {
                for a in blk.start..blk.start + blk.len {
                    for b in a + 1..blk.start + blk.len {
                        let mut letters = lifted.letters().to_vec();
                        letters.swap(a, b);
                        let mut swapped = idx.clone();
                        swapped.swap(a, b);
                        ensure!(
                            rs.element(&ReducedWord(letters)).unwrap() == element,
                            "{src}: swap {a},{b} changes the element"
                        );
                        ensure!(
                            common::word_matrix(&entries(f.source()), &swapped) == matrix,
                            "{src}: swap {a},{b} changes the matrix (oracle)"
                        );
                        swaps += 1;
                    }
                }
            }
        }
    }
    Ok(format!("4 lifts, {swaps} in-block transpositions"))
}

/// Oracle invariance: vertex `sigma(i)` carries variable `i` renamed by
/// `sigma`, and `B` is unchanged by `sigma`.
fn fixed_by_sigma(s: &Seed, sf: &SeedFolding) -> bool {
    let sigma = sf.sigma().images();
    let n = s.len();
    (0..n).all(|i| {
        s.vertices()[sigma[i]].variable == s.vertices()[i].variable.permute_vars(sigma)
            && s.vertices()[sigma[i]].frozen == s.vertices()[i].frozen
            && (0..n).all(|j| s.b()[sigma[i]][sigma[j]] == s.b()[i][j])
    })
}

fn criterion_5() -> Outcome {
    for t in ["C2", "C3", "G2"] {
        let setup = TypeSetup::new(ty(t), None).map_err(|e| e.to_string())?;
        let src = setup.folding.source();
        let roots = common::positive_root_count(&entries(src));
        let s = &setup.unfolded;
        ensure!(s.len() == roots, "{t}: {} vertices, expected {roots}", s.len());
        ensure!(s.frozen_count() == src.rank(), "{t}: {} frozen", s.frozen_count());
        ensure!(fixed_by_sigma(s, &setup.seed_folding), "{t}: initial seed not fixed by sigma");
        let folded = &setup.folded.seed;
        let own = common::positive_root_count(&entries(&cartan(t)));
        ensure!(folded.len() == own, "{t}: folded seed has {} vertices", folded.len());
        ensure!(folded.frozen_count() == cartan(t).rank(), "{t}: folded frozen count");
    }
    Ok("C2 (A3: 6/3), C3 (A5: 15/5), G2 (D4: 12/4)".into())
}

/// Randomly oriented, randomly relabelled finite-type diagram of rank at
/// most six, with possibly one vertex frozen. Finite type keeps every
/// reachable seed small, so length-8 sequences stay cheap.
fn random_seed(rng: &mut ChaCha8Rng) -> Seed {
    const TYPES: [&str; 19] = [
        "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C3", "C4", "C5", "C6", "D4", "D5", "D6",
        "E6", "G2",
    ];
    let c = entries(&cartan(TYPES.choose(rng).unwrap()));
    let n = c.len();
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if c[i][j] != 0 {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                b[relabel[i]][relabel[j]] = -s * c[i][j];
                b[relabel[j]][relabel[i]] = s * c[j][i];
            }
        }
    }
    let frozen: Vec<bool> = (0..n).map(|i| i >= n - rng.gen_range(0..=1)).collect();
    Seed::with_fresh_variables(b, &frozen, "x").unwrap()
}

/// `d_i B_ij = -d_j B_ji` for all `i, j`.
fn symmetrized_by(b: &[Vec<i64>], d: &[i64]) -> bool {
    (0..b.len()).all(|i| (0..b.len()).all(|j| d[i] * b[i][j] == -d[j] * b[j][i]))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pool: Vec<Seed> = ["A2", "A3", "A4"]
        .iter()
        .map(|t| {
            let c = cartan(t);
            initial_seed(&c, &longest_word(&c)).unwrap()
        })
        .collect();
    for t in ["C2", "G2"] {
        let setup = TypeSetup::new(ty(t), None).unwrap();
        // Seeds of at most six vertices: the C2 lift qualifies, the G2 lift does not.
        if setup.unfolded.len() <= 6 {
            pool.push(setup.unfolded.clone());
        }
        pool.push(setup.folded.seed);
    }
    let mut mutations = 0;
    for case in 0..1000 {
        let start = if case % 2 == 0 {
            pool[case / 2 % pool.len()].clone()
        } else {
            random_seed(&mut rng)
        };
        let d = start.skew_symmetrizer().ok_or("pool seed not skew-symmetrizable")?;
        let mutable = start.mutable_ids();
        ensure!(!mutable.is_empty(), "case {case}: nothing to mutate");
        let point: Vec<BigRational> = (0..start.len()).map(|_| common::rat(rng.gen_range(1..9), rng.gen_range(1..9))).collect();
        let len = rng.gen_range(1..=8);
        let mut s = start;
        for _ in 0..len {
            let k = *mutable.choose(&mut rng).unwrap();
            let next = s.mutate(k).map_err(|e| format!("case {case}: {e}"))?;
            ensure!(next.mutate(k).map_err(|e| e.to_string())? == s, "case {case}: mu_{k} mu_{k} != id");
            ensure!(symmetrized_by(next.b(), &d), "case {case}: symmetrizer lost");
            ensure!(next.skew_symmetrizer().is_some(), "case {case}: not skew-symmetrizable");
            // Exchange relation at a rational point.
            let value = |p: &LaurentPoly| common::evaluate(p, &point);
            let col = |sign: i64| {
                s.vertices().iter().enumerate().fold(common::one(), |acc, (i, v)| {
                    let e = (sign * s.b()[i][k - 1]).max(0);
                    (0..e).fold(acc, |a, _| a * value(&v.variable))
                })
            };
            let lhs = value(&s.vertices()[k - 1].variable) * value(&next.vertices()[k - 1].variable);
            ensure!(lhs == col(1) + col(-1), "case {case}: exchange relation fails at mu_{k}");
            s = next;
            mutations += 1;
        }
    }
    Ok(format!("1000 sequences, {mutations} mutations"))
}

fn block_orders(block: &[usize]) -> Vec<Vec<usize>> {
    common::permutations(block.len())
        .into_iter()
        .map(|p| p.iter().map(|&i| block[i]).collect())
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut steps = 0;
    for t in ["C2", "G2"] {
        let setup = TypeSetup::new(ty(t), None).map_err(|e| e.to_string())?;
        let sf = setup.seed_folding.clone().with_order_check(true);
        let blocks = sf.mutable_blocks(&setup.unfolded);
        let mut check = |s: &Seed, blk: usize| -> Result<Seed, String> {
            let out = orbit_mutate(s, &sf, blk).map_err(|e| format!("{t} block {blk}: {e}"))?;
            for order in block_orders(&sf.blocks()[blk - 1]) {
                let other = order.iter().try_fold(s.clone(), |acc, &p| acc.mutate(p + 1)).map_err(|e| e.to_string())?;
                ensure!(other == out, "{t} block {blk}: order {order:?} differs");
            }
            ensure!(fixed_by_sigma(&out, &sf), "{t} block {blk}: invariance lost");
            ensure!(orbit_mutate(&out, &sf, blk).map_err(|e| e.to_string())? == *s, "{t} block {blk}: nu nu != id");
            steps += 1;
            Ok(out)
        };
        for &blk in &blocks {
            check(&setup.unfolded, blk)?;
        }
        for _ in 0..200 {
            let len = rng.gen_range(1..=6);
            let mut s = setup.unfolded.clone();
            for _ in 0..len {
                s = check(&s, *blocks.choose(&mut rng).unwrap())?;
            }
        }
    }
    Ok(format!("400 sequences, {steps} orbit mutations"))
}

fn criterion_8() -> Outcome {
    let c2 = TypeSetup::new(ty("C2"), None).map_err(|e| e.to_string())?;
    let blocks = c2.seed_folding.mutable_blocks(&c2.unfolded);
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = all.clone();
    for _ in 0..4 {
        frontier = frontier
            .iter()
            .flat_map(|w| blocks.iter().map(move |&b| [w.clone(), vec![b]].concat()))
            .collect();
        all.extend(frontier.iter().cloned());
    }
    let ok = check_consistency_batch(&c2.unfolded, &c2.seed_folding, &all, Parallelism::Parallel)
        .map_err(|e| e.to_string())?;
    ensure!(ok.iter().all(|&b| b), "C2: inconsistent sequence {:?}", all[ok.iter().position(|&b| !b).unwrap()]);

    let g2 = TypeSetup::new(ty("G2"), None).map_err(|e| e.to_string())?;
    let blocks = g2.seed_folding.mutable_blocks(&g2.unfolded);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let random: Vec<Vec<usize>> = (0..200)
        .map(|_| (0..rng.gen_range(1..=6)).map(|_| *blocks.choose(&mut rng).unwrap()).collect())
        .collect();
    let ok = check_consistency_batch(&g2.unfolded, &g2.seed_folding, &random, Parallelism::Parallel)
        .map_err(|e| e.to_string())?;
    ensure!(ok.iter().all(|&b| b), "G2: inconsistent sequence {:?}", random[ok.iter().position(|&b| !b).unwrap()]);
    Ok(format!("C2: {} sequences (all, length <= 4); G2: 200 random", all.len()))
}

type Cluster = BTreeSet<LaurentPoly>;

fn clusters(g: &ExchangeGraph) -> Vec<Cluster> {
    g.nodes.iter().map(|s| s.variables().cloned().collect()).collect()
}

fn criterion_9() -> Outcome {
    let setup = TypeSetup::new(ty("C2"), None).map_err(|e| e.to_string())?;
    let sf = &setup.seed_folding;
    let opts = EnumerateOptions::default();
    let folded = enumerate(&setup.folded.seed, Mutator::Ordinary, opts).map_err(|e| e.to_string())?;
    let unfolded = enumerate(&setup.unfolded, Mutator::Ordinary, opts).map_err(|e| e.to_string())?;
    ensure!(unfolded.node_count() == 14, "A3 has {} clusters", unfolded.node_count());

    let sigma = sf.sigma().images();
    let invariant: Vec<Cluster> = clusters(&unfolded)
        .into_iter()
        .filter(|c| c.iter().map(|v| v.permute_vars(sigma)).collect::<Cluster>() == *c)
        .collect();
    let project = |c: &Cluster| -> Result<Cluster, String> {
        c.iter().map(|v| project_variable(v, sf).map_err(|e| e.to_string())).collect()
    };
    let projected: BTreeSet<Cluster> = invariant.iter().map(project).collect::<Result<_, _>>()?;
    let folded_clusters: BTreeSet<Cluster> = clusters(&folded).into_iter().collect();
    ensure!(projected.len() == invariant.len(), "projection is not injective on invariant clusters");
    ensure!(projected == folded_clusters, "projected invariant clusters differ from folded clusters");

    // Orbit-mutation graph from the unfolded seed: same shape as the folded graph.
    let orbit = enumerate(&setup.unfolded, Mutator::Orbit(sf), opts).map_err(|e| e.to_string())?;
    let image: Vec<usize> = clusters(&orbit)
        .iter()
        .map(|c| {
            let p = project(c)?;
            folded.nodes.iter().position(|s| s.variables().cloned().collect::<Cluster>() == p).ok_or("orbit node with no folded image".to_string())
        })
        .collect::<Result<_, _>>()?;
    let mapped: BTreeSet<(usize, usize, usize)> = orbit.edges.iter().map(|e| (image[e.from], e.label, image[e.to])).collect();
    let direct: BTreeSet<(usize, usize, usize)> = folded.edges.iter().map(|e| (e.from, e.label, e.to)).collect();
    ensure!(orbit.node_count() == folded.node_count() && mapped == direct, "orbit graph and folded graph differ");

    // Preimages of folded variables sit inside one invariant cluster.
    let unfolded_vars: BTreeSet<&LaurentPoly> = unfolded.nodes.iter().flat_map(|s| s.variables()).collect();
    for f in folded.nodes.iter().flat_map(|s| s.variables()).collect::<BTreeSet<_>>() {
        let pre: Vec<&LaurentPoly> = unfolded_vars
            .iter()
            .copied()
            .filter(|v| project_variable(v, sf).is_ok_and(|p| p == *f))
            .collect();
        ensure!(!pre.is_empty(), "folded variable {f} has no preimage");
        ensure!(
            invariant.iter().any(|c| pre.iter().all(|v| c.contains(*v))),
            "preimage of {f} is not inside one invariant cluster"
        );
    }
    Ok(format!(
        "{} folded clusters = {} invariant of {} unfolded",
        folded.node_count(),
        invariant.len(),
        unfolded.node_count()
    ))
}

/// Rank of the cluster monomials by dense elimination, built from scratch.
fn oracle_independence(g: &ExchangeGraph, d: u32) -> (usize, usize) {
    let mut monomials: BTreeSet<Vec<(LaurentPoly, u32)>> = BTreeSet::new();
    for node in &g.nodes {
        let vars: Vec<LaurentPoly> = node.variables().cloned().collect();
        let mut stack = vec![(0usize, d, Vec::<(LaurentPoly, u32)>::new())];
        while let Some((i, left, acc)) = stack.pop() {
            if i == vars.len() {
                let mut m = acc;
                m.sort();
                monomials.insert(m);
                continue;
            }
            for e in 0..=left {
                let mut next = acc.clone();
                if e > 0 {
                    next.push((vars[i].clone(), e));
                }
                stack.push((i + 1, left - e, next));
            }
        }
    }
    let one = LaurentPoly::one(g.nodes[0].vertices()[0].variable.vars());
    let expanded: Vec<LaurentPoly> = monomials
        .iter()
        .map(|m| m.iter().fold(one.clone(), |acc, (v, e)| &acc * &v.pow(*e)))
        .collect();
    let mut columns = BTreeMap::new();
    for p in &expanded {
        for (m, _) in p.terms() {
            let n = columns.len();
            columns.entry(m.clone()).or_insert(n);
        }
    }
    let rows = expanded
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::from_integer(0.into()); columns.len()];
            for (m, c) in p.terms() {
                row[columns[m]] = c.clone();
            }
            row
        })
        .collect();
    (monomials.len(), common::dense_rank(rows))
}

fn criterion_10() -> Outcome {
    let c2 = TypeSetup::new(ty("C2"), None).map_err(|e| e.to_string())?;
    let a2 = initial_seed(&cartan("A2"), &longest_word(&cartan("A2"))).unwrap();
    let a3 = initial_seed(&cartan("A3"), &longest_word(&cartan("A3"))).unwrap();
    let cases = [("C2 folded", c2.folded.seed.clone(), 3), ("A2", a2, 2), ("A3", a3, 2)];
    let mut summary = Vec::new();
    for (name, seed, max_d) in cases {
        let g = enumerate(&seed, Mutator::Ordinary, EnumerateOptions::default()).map_err(|e| e.to_string())?;
        for d in 1..=max_d {
            let r = check_independence(&g, d, Parallelism::Parallel).map_err(|e| e.to_string())?;
            let (count, rank) = oracle_independence(&g, d);
            ensure!(
                r.monomial_count == count && r.rank == rank,
                "{name} d={d}: library {}/{}, oracle {rank}/{count}",
                r.rank,
                r.monomial_count
            );
            ensure!(r.independent && rank == count, "{name} d={d}: rank {rank} < {count}");
        }
        summary.push(format!("{name} d<={max_d}"));
    }
    Ok(summary.join(", "))
}

fn criterion_11() -> Outcome {
    let cases = [("C2", false, 1_000_000), ("A3", true, 1_000_000), ("G2", false, 150)];
    for (t, unfolded, cap) in cases {
        let setup = TypeSetup::new(ty(t), None).map_err(|e| e.to_string())?;
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let out = explore_report(
                    &setup,
                    unfolded,
                    EnumerateOptions {
                        cap,
                        parallelism: Parallelism::Parallel,
                    },
                )
                .unwrap();
                (serde_json::to_string_pretty(&out.json).unwrap(), out.dot)
            })
        };
        let single = run(1);
        for threads in [4, 8] {
            ensure!(run(threads) == single, "{t}: output differs with {threads} threads");
        }
        let sequential = {
            let out = explore_report(&setup, unfolded, EnumerateOptions { cap, parallelism: Parallelism::Sequential }).unwrap();
            (serde_json::to_string_pretty(&out.json).unwrap(), out.dot)
        };
        ensure!(sequential == single, "{t}: sequential output differs");
    }
    Ok("C2, A3 unfolded, G2 capped: 1/4/8 threads and sequential agree".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "folding tables", Duration::from_secs(1), criterion_1),
        (2, "transpose duality", Duration::from_secs(10), criterion_2),
        (3, "root counts", Duration::from_secs(10), criterion_3),
        (4, "lift correctness", Duration::from_secs(10), criterion_4),
        (5, "initial seed shape", Duration::from_secs(10), criterion_5),
        (6, "mutation laws", Duration::from_secs(30), criterion_6),
        (7, "orbit mutation", Duration::from_secs(60), criterion_7),
        (8, "central commutation", Duration::from_secs(60), criterion_8),
        (9, "cluster bijection", Duration::from_secs(60), criterion_9),
        (10, "independence", Duration::from_secs(60), criterion_10),
        (11, "determinism", Duration::from_secs(60), criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {id:>2}  {name:<20} {took:>10.2?}  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {id:>2}  {name:<20} {took:>10.2?}  {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
