//! Named verification suites. Suites run concurrently; reports print in the
//! order requested.

use std::thread;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use svbr::braid::{BraidWord, Permutation};
use svbr::forest::ColoredForest;
use svbr::homology::{connectivity_report, matching_complex, Multigraph, SimplicialComplex};
use svbr::morse::{self, inequalities, Classification};
use svbr::spraige::{audit, multiply, random, svbr_equal, Budget, PermSpraige, Spraige, Verdict};

use crate::{FALSE, TRUE, UNKNOWN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    CrossRelation,
    GroupLaws,
    #[value(name = "matching-K")]
    MatchingK,
    #[value(name = "join-lemma")]
    JoinMinusSimplex,
    #[value(name = "morse-figure10")]
    MorseHeight,
    Inequalities,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::CrossRelation,
        Suite::GroupLaws,
        Suite::MatchingK,
        Suite::JoinMinusSimplex,
        Suite::MorseHeight,
        Suite::Inequalities,
    ];

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

pub struct Context {
    pub budget: Option<usize>,
    pub seed: u64,
    pub colors: usize,
}

enum Outcome {
    Pass(String),
    Fail(String),
    Unknown(String),
}

impl Outcome {
    fn code(&self) -> u8 {
        match self {
            Outcome::Pass(_) => TRUE,
            Outcome::Fail(_) => FALSE,
            Outcome::Unknown(_) => UNKNOWN,
        }
    }
}

fn budget(ctx: &Context) -> Budget {
    ctx.budget.map_or_else(Budget::default, Budget::with_states)
}

fn cross_relation(ctx: &Context) -> Outcome {
    let mut notes = Vec::new();
    for (a, b) in [(1, 2), (2, 1)] {
        let top: ColoredForest = format!("({a} ({b} _ _) ({b} _ _))").parse().expect("literal forest");
        let bottom: ColoredForest = format!("({b} ({a} _ _) ({a} _ _))").parse().expect("literal forest");
        let swap = Permutation::from_one_based(&[1, 3, 2, 4]).expect("literal permutation");
        let flat = PermSpraige::new(2, top.clone(), swap, bottom.clone());
        if !flat.brick_map().is_identity() {
            return Outcome::Fail(format!("unbraided cross relation ({a} over {b}) is not the identity"));
        }
        let sign = svbr::spraige::cross_sign(a, b);
        let gadget = Spraige::new(2, top, BraidWord::new(4, vec![2 * sign]).expect("valid letter"), bottom)
            .expect("well formed gadget");
        let id = Spraige::identity(1, 2);
        match svbr_equal(&gadget, &id, budget(ctx)) {
            Verdict::Equal(cert) => {
                if let Err(e) = audit(&gadget, &id, &cert) {
                    return Outcome::Fail(format!("certificate rejected: {e}"));
                }
                notes.push(format!("{a} over {b}: {}", cert.summary()));
            }
            Verdict::NotEqual => return Outcome::Fail(format!("gadget {a} over {b} separated from the identity")),
            Verdict::Unknown => return Outcome::Unknown(format!("gadget {a} over {b} undecided within budget")),
        }
    }
    Outcome::Pass(format!("both gadgets equal the identity ({})", notes.join("; ")))
}

fn group_laws(ctx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let colors = ctx.colors.max(1);
    let id = Spraige::identity(1, colors);
    let mut unknown = 0;
    const SAMPLES: usize = 100;
    for _ in 0..SAMPLES {
        let g = random::element(&mut rng, colors, 3, 6);
        let h = random::element(&mut rng, colors, 3, 6);
        let k = random::element(&mut rng, colors, 3, 6);
        let (Ok(gh), Ok(hk)) = (multiply(&g, &h), multiply(&h, &k)) else {
            return Outcome::Fail(format!("product failed for {g} and {h}"));
        };
        if !gh.brick_map().equivalent(&g.brick_map().then(&h.brick_map())) {
            return Outcome::Fail(format!("projection not multiplicative on {g} and {h}"));
        }
        let (Ok(left), Ok(right)) = (multiply(&gh, &k), multiply(&g, &hk)) else {
            return Outcome::Fail("triple product failed".into());
        };
        if svbr_equal(&left, &right, budget(ctx)) == Verdict::NotEqual {
            return Outcome::Fail(format!("associativity separated on {g}, {h}, {k}"));
        }
        let Ok(p) = multiply(&g, &g.inverse()) else {
            return Outcome::Fail(format!("product with inverse failed for {g}"));
        };
        match svbr_equal(&p, &id, budget(ctx)) {
            Verdict::Equal(_) => {}
            Verdict::NotEqual => return Outcome::Fail(format!("g * g^-1 separated from 1 for {g}")),
            Verdict::Unknown => unknown += 1,
        }
    }
    if unknown > 0 {
        return Outcome::Unknown(format!("{unknown} of {SAMPLES} inverse products undecided"));
    }
    Outcome::Pass(format!("{SAMPLES} samples: inverses cancel, products associate, projection multiplicative"))
}

fn matching_k() -> Outcome {
    let mut shown = Vec::new();
    for n in 2..=9usize {
        let nu = morse::nu(n as i64);
        let r = connectivity_report(&matching_complex(&Multigraph::complete(n)), nu as isize - 1);
        if !r.passed() {
            return Outcome::Fail(format!("M(K{n}): {r}"));
        }
        shown.push(format!("K{n}: {}-acyclic", nu - 1));
    }
    Outcome::Pass(shown.join(", "))
}

fn join_minus_simplex() -> Outcome {
    let mut cases = 0;
    for k in 2..=4usize {
        for mask in 0..(1u32 << k) {
            let sizes: Vec<usize> = (0..k).map(|i| 2 + ((mask >> i) & 1) as usize).collect();
            let mut y = SimplicialComplex::points(sizes[0]);
            let mut offsets = vec![0u32];
            for &s in &sizes[1..] {
                offsets.push(y.vertex_count() as u32);
                y = y.join(&SimplicialComplex::points(s));
            }
            for pick in 0..sizes.iter().product::<usize>() {
                let mut rest = pick;
                let delta: Vec<u32> = sizes
                    .iter()
                    .zip(&offsets)
                    .map(|(&s, &o)| {
                        let v = o + (rest % s) as u32;
                        rest /= s;
                        v
                    })
                    .collect();
                let z = match y.remove_open_simplex(&delta) {
                    Ok(z) => z,
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                let r = connectivity_report(&z, k as isize - 2);
                if !r.passed() {
                    return Outcome::Fail(format!("sizes {sizes:?} minus {delta:?}: {r}"));
                }
                cases += 1;
            }
        }
    }
    Outcome::Pass(format!("{cases} joins of 2- and 3-point sets minus a maximal simplex are (k-2)-acyclic and connected"))
}

fn morse_height(ctx: &Context) -> Outcome {
    let merges: ColoredForest = "_ (1 (2 _ _) (2 _ _)) _ (1 (2 _ _) _)".parse().expect("literal forest");
    let z = Spraige::new(2, ColoredForest::trivial(9), BraidWord::identity(9), merges).expect("well formed braige");
    let h = match morse::height(&z) {
        Ok(h) => h,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    if h.mu.to_string() != "(1, 1)" || h.f != 4 {
        return Outcome::Fail(format!("height {h}, expected mu = (1, 1) and f = 4"));
    }
    let b = morse::legality_budget();
    let b = Budget { states: ctx.budget.unwrap_or(b.states), ..b };
    match morse::classify(&z, b) {
        Ok(Classification::Bottleneck(foot)) => {
            Outcome::Pass(format!("h = {h}; bottleneck merge at foot {}", foot + 1))
        }
        Ok(Classification::Undetermined) => Outcome::Unknown("classification undecided within budget".into()),
        Ok(c) => Outcome::Fail(format!("h = {h} but classification is {c}")),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn inequality_chains() -> Outcome {
    let suite = inequalities::inequality_suite(1000);
    let failed: Vec<String> = suite.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    if !failed.is_empty() {
        return Outcome::Fail(failed.join("; "));
    }
    let instances: usize = suite.iter().map(|c| c.instances).sum();
    Outcome::Pass(format!("{} chains hold on {instances} instances (n <= 1000)", suite.len()))
}

fn run_one(suite: Suite, ctx: &Context) -> Outcome {
    match suite {
        Suite::CrossRelation => cross_relation(ctx),
        Suite::GroupLaws => group_laws(ctx),
        Suite::MatchingK => matching_k(),
        Suite::JoinMinusSimplex => join_minus_simplex(),
        Suite::MorseHeight => morse_height(ctx),
        Suite::Inequalities => inequality_chains(),
    }
}

/// Runs the suites and returns the worst exit code: failures outrank
/// undecided suites.
pub fn run_all(suites: &[Suite], ctx: &Context) -> u8 {
    let outcomes: Vec<Outcome> = thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&suite| s.spawn(move || run_one(suite, ctx))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Outcome::Fail("panicked".into()))).collect()
    });
    let mut code = TRUE;
    for (suite, o) in suites.iter().zip(&outcomes) {
        let (label, msg) = match o {
            Outcome::Pass(m) => ("pass", m),
            Outcome::Fail(m) => ("FAIL", m),
            Outcome::Unknown(m) => ("unknown", m),
        };
        println!("{label} {}: {msg}", suite.name());
        code = match (code, o.code()) {
            (FALSE, _) | (_, FALSE) => FALSE,
            (UNKNOWN, _) | (_, UNKNOWN) => UNKNOWN,
            _ => TRUE,
        };
    }
    code
}
