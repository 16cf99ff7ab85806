//! Acceptance suite: one PASS/FAIL line per criterion, with the time limit
//! each criterion carries. Exits nonzero when any criterion fails.

mod common;

use std::collections::HashMap;
use std::panic;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svbr::braid::{BraidWord, Permutation};
use svbr::forest::{open_interval, Color, ColoredForest, ColoredTree};
use svbr::homology::{
    connectivity_report, interval_order_complex, matching_complex, reduced_homology, Multigraph, SimplicialComplex,
};
use svbr::morse::{self, inequalities};
use svbr::spraige::{multiply, random, svbr_equal, Budget, Move, PermSpraige, Side, Spraige, Verdict};

type Outcome = Result<String, String>;

fn gadget() -> Spraige {
    Spraige::from_parts(2, "(1 (2 _ _) (2 _ _))", "B4: 2", "(2 (1 _ _) (1 _ _))").unwrap()
}

fn cross_relation() -> Outcome {
    let pv = PermSpraige::new(
        2,
        "(1 (2 _ _) (2 _ _))".parse().unwrap(),
        Permutation::from_one_based(&[1, 3, 2, 4]).unwrap(),
        "(2 (1 _ _) (1 _ _))".parse().unwrap(),
    );
    let m = pv.brick_map();
    let quarters = m.pieces.len() == 4 && m.pieces.iter().all(|(d, r)| d == r && d.total_level() == 2);
    if !quarters || !m.is_identity() {
        return Err("unbraided cross relation is not the identity on quarters".into());
    }
    match svbr_equal(&gadget(), &Spraige::identity(1, 2), Budget::with_states(10_000)) {
        Verdict::Equal(cert) => {
            svbr::spraige::audit(&gadget(), &Spraige::identity(1, 2), &cert)?;
            Ok(format!("brick map identity on 4 quarters; gadget = identity ({})", cert.summary()))
        }
        v => Err(format!("gadget vs identity: {v:?}")),
    }
}

fn candidates(x: &Spraige, kind: usize, max_leaves: usize) -> Vec<Move> {
    let n = x.leaves();
    let colors = x.colors() as Color;
    match kind {
        0 if n < max_leaves => {
            (1..=n).flat_map(|leaf| (1..=colors).map(move |color| Move::Expand { leaf, color })).collect()
        }
        1 => x.reduction_sites().into_iter().map(|leaf| Move::Reduce { leaf }).collect(),
        2 if n + 3 <= max_leaves => (1..=n)
            .flat_map(|leaf| {
                (1..=colors).flat_map(move |outer| {
                    (1..=colors).filter(move |&inner| inner != outer).map(move |inner| Move::CrossInsert {
                        leaf,
                        outer,
                        inner,
                    })
                })
            })
            .collect(),
        3 => (1..=n).filter(|&i| x.cross_remove(i).is_ok()).map(|leaf| Move::CrossRemove { leaf }).collect(),
        4 => [Side::Minus, Side::Plus]
            .into_iter()
            .flat_map(|side| x.exchange_sites(side).into_iter().map(move |(root, path)| Move::RootExchange { side, root, path }))
            .collect(),
        5 => (0..x.braid().len()).filter(|&p| x.slide(p).is_ok()).map(|position| Move::Slide { position }).collect(),
        _ => Vec::new(),
    }
}

fn master_suite() -> Outcome {
    const MOVES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut applied: HashMap<&'static str, usize> = HashMap::new();
    let mut total = 0;
    while total < MOVES {
        let colors = rng.gen_range(1..=3);
        let heads = rng.gen_range(1..=2);
        let mut x = random::spraige(&mut rng, colors, heads, 3, 6);
        let start = x.brick_map();
        for _ in 0..25 {
            let mut kinds: Vec<usize> = (0..6).collect();
            let mut chosen = None;
            while !kinds.is_empty() {
                let kind = kinds.remove(rng.gen_range(0..kinds.len()));
                let c = candidates(&x, kind, 16);
                if !c.is_empty() {
                    chosen = Some(c[rng.gen_range(0..c.len())].clone());
                    break;
                }
            }
            let Some(m) = chosen else { break };
            let y = x.apply(&m).map_err(|e| format!("{m} on {x}: {e}"))?;
            if !y.brick_map().equivalent(&x.brick_map()) || !y.brick_map().equivalent(&start) {
                return Err(format!("{m} changed the brick map of {x}"));
            }
            *applied.entry(m.kind()).or_insert(0) += 1;
            total += 1;
            x = y;
            if total == MOVES {
                break;
            }
        }
    }
    let mut kinds: Vec<_> = applied.into_iter().collect();
    kinds.sort();
    if kinds.len() < 6 {
        return Err(format!("some move kinds never applied: {kinds:?}"));
    }
    let shown: Vec<String> = kinds.iter().map(|(k, n)| format!("{n} {k}")).collect();
    Ok(format!("{total} moves preserved the brick map ({})", shown.join(", ")))
}

fn group_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let id = Spraige::identity(1, 2);
    for _ in 0..200 {
        let g = random::element(&mut rng, 2, 3, 6);
        let p = multiply(&g, &g.inverse()).map_err(|e| e.to_string())?;
        if !svbr_equal(&p, &id, Budget::default()).is_equal() {
            return Err(format!("g * g^-1 not shown equal to 1 for g = {g}"));
        }
    }
    for _ in 0..200 {
        let g = random::element(&mut rng, 2, 3, 6);
        let h = random::element(&mut rng, 2, 3, 6);
        let p = multiply(&g, &h).map_err(|e| e.to_string())?;
        if !p.brick_map().equivalent(&g.brick_map().then(&h.brick_map())) {
            return Err(format!("projection not multiplicative on {g} and {h}"));
        }
    }
    Ok("200 inverses cancel; projection multiplicative on 200 pairs".into())
}

fn matching_connectivity() -> Outcome {
    let mut shown = Vec::new();
    for n in 4..=9usize {
        let nu = morse::nu(n as i64);
        let x = matching_complex(&Multigraph::complete(n));
        let r = connectivity_report(&x, nu as isize - 1);
        if !r.passed() {
            return Err(format!("M(K{n}): {r}"));
        }
        shown.push(format!("K{n}: nu={nu}, components={}", r.components));
    }
    Ok(shown.join("; "))
}

/// Matchings of each size in the path on `n` vertices, by dynamic
/// programming over the last vertex.
fn path_matchings(n: usize) -> Vec<u64> {
    // free[v][m]: matchings of size m on vertices 0..v; two-step recurrence
    let mut free = vec![vec![0u64; n / 2 + 2]; n + 1];
    free[0][0] = 1;
    if n >= 1 {
        free[1][0] = 1;
    }
    for v in 2..=n {
        for m in 0..=n / 2 {
            free[v][m] = free[v - 1][m] + if m > 0 { free[v - 2][m - 1] } else { 0 };
        }
    }
    free[n].clone()
}

fn bijection_counts() -> Outcome {
    let mut checked = 0;
    for s in 1..=3usize {
        for n in 1..=9usize {
            let m = matching_complex(&Multigraph::linear(s as u32, n - 1));
            let f = m.f_vector();
            let paths = path_matchings(n);
            let forests = morse::very_elementary_forests(n, s);
            for (q, &count) in f.iter().enumerate() {
                let expected = paths[q + 1] * (s as u64).pow(q as u32 + 1);
                let by_forests = forests.iter().filter(|t| t.carets() == q + 1).count() as u64;
                if count as u64 != expected || by_forests != expected {
                    return Err(format!(
                        "s={s}, n={n}, q={q}: complex {count}, path count {expected}, forests {by_forests}"
                    ));
                }
                checked += 1;
            }
            if paths.get(f.len() + 1).is_some_and(|&c| c != 0) {
                return Err(format!("s={s}, n={n}: complex too small"));
            }
        }
    }
    Ok(format!("{checked} (s, n, q) counts agree three ways"))
}

fn join_minus_simplex() -> Outcome {
    let mut cases = 0;
    for k in 2..=5usize {
        for mask in 0..(1u32 << k) {
            let sizes: Vec<usize> = (0..k).map(|i| 2 + ((mask >> i) & 1) as usize).collect();
            let mut y = SimplicialComplex::points(sizes[0]);
            for &s in &sizes[1..] {
                y = y.join(&SimplicialComplex::points(s));
            }
            let offsets: Vec<u32> = sizes.iter().scan(0u32, |acc, &s| {
                let o = *acc;
                *acc += s as u32;
                Some(o)
            }).collect();
            let total: usize = sizes.iter().product();
            for pick in 0..total {
                let mut rest = pick;
                let simplex: Vec<u32> = sizes
                    .iter()
                    .zip(&offsets)
                    .map(|(&s, &o)| {
                        let v = o + (rest % s) as u32;
                        rest /= s;
                        v
                    })
                    .collect();
                let z = y.remove_open_simplex(&simplex).map_err(|e| e.to_string())?;
                let r = connectivity_report(&z, k as isize - 2);
                let h0 = reduced_homology(&z, 0);
                if !r.passed() || !h0.vanishes(-1, 0) {
                    return Err(format!("sizes {sizes:?}, removed {simplex:?}: {r}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} joins minus a maximal simplex are connected with vanishing H~ through k-2"))
}

fn morse_data() -> Outcome {
    let z = Spraige::new(
        2,
        ColoredForest::trivial(9),
        BraidWord::identity(9),
        "_ (1 (2 _ _) (2 _ _)) _ (1 (2 _ _) _)".parse().unwrap(),
    )
    .unwrap();
    let h = morse::height(&z).map_err(|e| e.to_string())?;
    if h.mu.to_string() != "(1, 1)" || h.f != 4 {
        return Err(format!("sample braige has h = {h}"));
    }
    let r = morse::height_trichotomy(6, 2, morse::legality_budget());
    if !r.violations.is_empty() {
        return Err(format!("{} violations, first {}", r.violations.len(), r.violations[0]));
    }
    if r.unknown > 0 {
        return Err(format!("{} splittings undecided within budget", r.unknown));
    }
    Ok(format!(
        "mu = (1, 1), f = 4; trichotomy holds on {} pairs over {} braiges ({} legal splittings left the elementary braiges)",
        r.pairs, r.braiges, r.non_elementary
    ))
}

fn arithmetic_chains() -> Outcome {
    let suite = inequalities::inequality_suite(1000);
    let failed: Vec<String> = suite.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    if !failed.is_empty() {
        return Err(failed.join("; "));
    }
    let instances: usize = suite.iter().map(|c| c.instances).sum();
    let alternate = inequalities::link_chain_alternate_as_printed(1000);
    let descending = inequalities::descending_chain_as_printed(1000, 2);
    Ok(format!(
        "{} corrected chains hold on {instances} instances; in the naive form, one intermediate step fails on {} \
         (alternate link bound) and {} (descending bound, s=2) instances",
        suite.len(),
        alternate.failure_count,
        descending.failure_count
    ))
}

/// Image of strand `i` (0-based) under a `width`-fold cabling of `rho`.
fn cabled_permutation(rho: &Permutation, i: usize, width: usize) -> Vec<usize> {
    let target = rho.apply(i);
    let mut out = Vec::new();
    for k in 0..rho.size() {
        let p = rho.apply(k);
        let shifted = if p > target { p + width - 1 } else { p };
        if k == i {
            out.extend((0..width).map(|j| target + j));
        } else {
            out.push(shifted);
        }
    }
    out
}

fn braid_engine() -> Outcome {
    let (words, roots) = common::relator_classes(8);
    let short: Vec<usize> = (0..words.len()).filter(|&i| words[i].len() <= 4).collect();
    let braids: Vec<BraidWord> = short.iter().map(|&i| BraidWord::new(3, words[i].clone()).unwrap()).collect();
    let mut pairs = 0;
    for (a, &i) in short.iter().enumerate() {
        for (b, &j) in short.iter().enumerate() {
            let eq = braids[a].equal(&braids[b]).map_err(|e| e.to_string())?;
            if eq != (roots[i] == roots[j]) {
                return Err(format!("{} vs {}: coordinates say {eq}", braids[a], braids[b]));
            }
            pairs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let strands = rng.gen_range(2..=5);
        let b = random::braid(&mut rng, strands, 6);
        let i = rng.gen_range(1..=strands);
        let width = rng.gen_range(2..=4);
        let rho = b.permutation();
        let doubled = b.double_strand(i).map_err(|e| e.to_string())?;
        let cabled = b.cable(i, width).map_err(|e| e.to_string())?;
        if doubled.permutation().images() != cabled_permutation(&rho, i - 1, 2).as_slice()
            || cabled.permutation().images() != cabled_permutation(&rho, i - 1, width).as_slice()
        {
            return Err(format!("cabling {b} at {i} (width {width}) moves strands incorrectly"));
        }
        if !doubled.equal(&b.cable(i, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? {
            return Err(format!("doubling and 2-cabling {b} at {i} differ"));
        }
    }
    Ok(format!("{pairs} word pairs agree with relator closure; 1000 cablings coherent"))
}

fn trees_with_carets(k: usize, colors: usize) -> Vec<ColoredTree> {
    if k == 0 {
        return vec![ColoredTree::Leaf];
    }
    let mut out = Vec::new();
    for c in 1..=colors as Color {
        for l in 0..k {
            for a in trees_with_carets(l, colors) {
                for b in trees_with_carets(k - 1 - l, colors) {
                    out.push(ColoredTree::caret(c, a.clone(), b));
                }
            }
        }
    }
    out
}

/// Forests of nontrivial trees with at most `max` carets in total.
fn forests_up_to(max: usize, colors: usize) -> Vec<ColoredForest> {
    let mut out = Vec::new();
    fn go(left: usize, colors: usize, prefix: &mut Vec<ColoredTree>, out: &mut Vec<ColoredForest>) {
        if !prefix.is_empty() {
            out.push(ColoredForest::new(prefix.clone()).unwrap());
        }
        for k in 1..=left {
            for t in trees_with_carets(k, colors) {
                prefix.push(t);
                go(left - k, colors, prefix, out);
                prefix.pop();
            }
        }
    }
    go(max, colors, &mut Vec::new(), &mut out);
    out
}

fn interval_acyclicity() -> Outcome {
    let mut nonempty = 0;
    let mut bad_elementary = Vec::new();
    let mut bad_other = Vec::new();
    let mut elementary = 0;
    for s in 1..=2 {
        for f in forests_up_to(4, s) {
            if open_interval(&f, s).map_err(|e| e.to_string())?.is_empty() {
                continue;
            }
            nonempty += 1;
            let (_, x) = interval_order_complex(&f, s).map_err(|e| e.to_string())?;
            let dim = x.dim().max(0) as usize;
            let ok = x.components() == 1 && reduced_homology(&x, dim).vanishes(-1, dim as isize);
            let is_elementary = f.is_elementary();
            elementary += is_elementary as usize;
            if !ok {
                let entry = format!("s={s} {f}");
                if is_elementary {
                    bad_elementary.push(entry);
                } else {
                    bad_other.push(entry);
                }
            }
        }
    }
    let summary = format!(
        "{nonempty} nonempty intervals; non-elementary failures: {}; elementary failures: {} of {elementary}",
        bad_other.len(),
        bad_elementary.len()
    );
    if bad_other.is_empty() && bad_elementary.is_empty() {
        Ok(summary)
    } else {
        let first = bad_other.first().or(bad_elementary.first()).unwrap();
        Err(format!("{summary} (first: {first})"))
    }
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("cross-relation soundness", 1, cross_relation),
        ("rewrite-semantics master suite", 60, master_suite),
        ("group laws", 120, group_laws),
        ("matching-complex connectivity", 300, matching_connectivity),
        ("bijection count", 10, bijection_counts),
        ("join minus a simplex", 60, join_minus_simplex),
        ("Morse data", 60, morse_data),
        ("arithmetic chains", 10, arithmetic_chains),
        ("braid engine", 60, braid_engine),
        ("interval acyclicity", 60, interval_acyclicity),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = t.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the time limit; {d}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name} [{:.2} s of {limit} s] {detail}", k + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
