//! Exhaustive evaluation of the displayed inequality chains in the
//! connectivity arguments. Each chain is a list of exact rationals (kept
//! as integers over a common denominator) joined by `=` or `≥`; every
//! link is checked for every parameter in range, and so is the endpoint.

use std::fmt;

use super::{eta, nu};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ge,
}

/// Result for one chain over its whole parameter range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub name: &'static str,
    pub instances: usize,
    /// Failing links as `link k at (params)`, capped at 20 entries.
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl ChainCheck {
    fn new(name: &'static str) -> Self {
        ChainCheck { name, instances: 0, failures: Vec::new(), failure_count: 0 }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Checks `values[0] rel[0] values[1] rel[1] …` and the endpoint
    /// `values[0] ≥ values[last]`.
    fn check(&mut self, values: &[i64], rels: &[Rel], params: impl Fn() -> String) {
        self.instances += 1;
        let mut bad = Vec::new();
        for (k, rel) in rels.iter().enumerate() {
            let (a, b) = (values[k], values[k + 1]);
            let ok = match rel {
                Rel::Eq => a == b,
                Rel::Ge => a >= b,
            };
            if !ok {
                bad.push(k + 1);
            }
        }
        if values[0] < values[values.len() - 1] {
            bad.push(0);
        }
        if !bad.is_empty() {
            self.failure_count += 1;
            if self.failures.len() < 20 {
                self.failures.push(format!("links {bad:?} at {}", params()));
            }
        }
    }
}

impl fmt::Display for ChainCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "ok    {} ({} instances)", self.name, self.instances)
        } else {
            write!(
                f,
                "FAIL  {} ({} of {} instances; first: {})",
                self.name,
                self.failure_count,
                self.instances,
                self.failures.first().map_or("", |s| s.as_str())
            )
        }
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `ν(n−2k−2) − 1 ≥ ν(n) − k − 2` through its four displayed steps, for
/// `2 ≤ n ≤ n_max` and `0 ≤ 2k + 2 ≤ n`.
pub fn link_chain(n_max: i64) -> ChainCheck {
    let mut c = ChainCheck::new("link bound nu(n-2k-2)-1 >= nu(n)-k-2");
    for n in 2..=n_max {
        for k in 0..=(n - 2) / 2 {
            let v = [
                nu(n - 2 * k - 2) - 1,
                floor_div((n - 2) - 2 * k - 2, 3) - 1,
                floor_div((n - 2) - 2 * k, 3) - 2,
                floor_div(n - 2, 3) - k - 2,
                nu(n) - k - 2,
            ];
            c.check(&v, &[Rel::Eq, Rel::Ge, Rel::Ge, Rel::Eq], || format!("n={n}, k={k}"));
        }
    }
    c
}

/// The same bound written with `ν(n) = ⌊(n+1)/3⌋ − 1`, as printed. The
/// third value carries `⌊(−2k−1)/3⌋` where the previous line gives
/// `⌊(−2k−2)/3⌋`, so the second `=` fails for many `k`.
pub fn link_chain_alternate_as_printed(n_max: i64) -> ChainCheck {
    let mut c = ChainCheck::new("alternate link bound, as printed");
    for n in 2..=n_max {
        for k in 0..=(n - 2) / 2 {
            let v = [
                nu(n - 2 * k - 2),
                floor_div(n - 2 * k - 1, 3) - 1,
                floor_div(n + 1, 3) + floor_div(-2 * k - 2, 3) - 1,
                nu(n) + floor_div(-2 * k - 1, 3),
                nu(n) + floor_div(-2 * k, 3) + floor_div(-1, 3),
                nu(n) - k - 1,
            ];
            c.check(&v, &[Rel::Eq, Rel::Ge, Rel::Eq, Rel::Ge, Rel::Ge], || format!("n={n}, k={k}"));
        }
    }
    c
}

/// The alternate chain with the floor term carried through correctly.
pub fn link_chain_alternate(n_max: i64) -> ChainCheck {
    let mut c = ChainCheck::new("alternate link bound nu(n-2k-2) >= nu(n)-k-1");
    for n in 2..=n_max {
        for k in 0..=(n - 2) / 2 {
            let v = [
                nu(n - 2 * k - 2),
                floor_div(n - 2 * k - 1, 3) - 1,
                floor_div(n + 1, 3) + floor_div(-2 * k - 2, 3) - 1,
                nu(n) + floor_div(-2 * k - 2, 3),
                nu(n) + floor_div(-2 * k, 3) + floor_div(-2, 3),
                nu(n) - k - 1,
            ];
            c.check(&v, &[Rel::Eq, Rel::Ge, Rel::Eq, Rel::Ge, Rel::Ge], || format!("n={n}, k={k}"));
        }
    }
    c
}

/// Parameters of the descending-link bound: `k_e ≥ 1` merges of 3 to
/// `2^s` leaves each and `k_u` unmerged heads, so
/// `3k_e + k_u ≤ n ≤ 2^s k_e + k_u`.
fn descending_params(n_max: i64, s: u32, mut visit: impl FnMut(i64, i64, i64)) {
    let top = 1i64 << s;
    for n in 1..=n_max {
        for k_u in 0..=n {
            let merged = n - k_u;
            let lo = (merged + top - 1) / top;
            for k_e in lo.max(1)..=merged / 3 {
                visit(n, k_u, k_e);
            }
        }
    }
}

/// `k_e + ν(k_u) − 1 ≥ η(n) − 2` through the displayed steps, scaled by
/// `3·2^s`. As printed, the step `(k_u − 2)/3 ≥ (k_u − 2)/2^s` needs
/// `k_u ≥ 2`.
pub fn descending_chain_as_printed(n_max: i64, s: u32) -> ChainCheck {
    let mut c = ChainCheck::new("descending link bound, as printed");
    let p = 1i64 << s;
    let l = 3 * p;
    descending_params(n_max, s, |n, k_u, k_e| {
        let v = [
            l * (k_e + nu(k_u) - 1),
            3 * (n - k_u) + l * (nu(k_u) - 1),
            3 * (n - k_u) + l * (floor_div(k_u - 2, 3) - 1),
            3 * (n - k_u) + p * (k_u - 2) - 2 * l,
            3 * (n - k_u) + 3 * (k_u - 2) - 2 * l,
            3 * (k_u - 2) + 3 * (n - k_u) - 2 * l,
            3 * (n - 2) - 2 * l,
            l * (floor_div(n - 2, p) - 2),
            l * (eta(n, s) - 2),
        ];
        let rels = [Rel::Ge, Rel::Eq, Rel::Ge, Rel::Ge, Rel::Eq, Rel::Eq, Rel::Ge, Rel::Eq];
        c.check(&v, &rels, || format!("s={s}, n={n}, k_u={k_u}, k_e={k_e}"));
    });
    c
}

/// The descending-link chain with the middle steps merged into
/// `ν(k_u) − 1 ≥ (k_u − 2)/2^s − 2`, which holds for every `k_u ≥ 0`.
pub fn descending_chain(n_max: i64, s: u32) -> ChainCheck {
    let mut c = ChainCheck::new("descending link bound k_e+nu(k_u)-1 >= eta(n)-2");
    let p = 1i64 << s;
    let l = 3 * p;
    descending_params(n_max, s, |n, k_u, k_e| {
        let v = [
            l * (k_e + nu(k_u) - 1),
            3 * (n - k_u) + l * (nu(k_u) - 1),
            3 * (n - k_u) + 3 * (k_u - 2) - 2 * l,
            3 * (n - 2) - 2 * l,
            l * (eta(n, s) - 2),
        ];
        c.check(&v, &[Rel::Ge, Rel::Ge, Rel::Eq, Rel::Ge], || format!("s={s}, n={n}, k_u={k_u}, k_e={k_e}"));
    });
    c
}

/// `η(n) ≤ ν(n)` for `1 ≤ n ≤ n_max` and `2 ≤ s ≤ s_max`.
pub fn eta_below_nu(n_max: i64, s_max: u32) -> ChainCheck {
    let mut c = ChainCheck::new("eta(n) <= nu(n)");
    for s in 2..=s_max {
        for n in 1..=n_max {
            c.check(&[nu(n), eta(n, s)], &[Rel::Ge], || format!("s={s}, n={n}"));
        }
    }
    c
}

/// `ν(n) = ⌊(n+1)/3⌋ − 1` for `1 ≤ n ≤ n_max`.
pub fn nu_forms_agree(n_max: i64) -> ChainCheck {
    let mut c = ChainCheck::new("nu(n) = floor((n+1)/3) - 1");
    for n in 1..=n_max {
        c.check(&[nu(n), floor_div(n + 1, 3) - 1], &[Rel::Eq], || format!("n={n}"));
    }
    c
}

/// The corrected chains over `n ≤ n_max`, `s ∈ 2..=4`, plus `η ≤ ν` and
/// the two forms of `ν` up to `10^4`.
pub fn inequality_suite(n_max: i64) -> Vec<ChainCheck> {
    let mut out = vec![link_chain(n_max), link_chain_alternate(n_max)];
    for s in 2..=4 {
        out.push(descending_chain(n_max, s));
    }
    out.push(eta_below_nu(10_000, 6));
    out.push(nu_forms_agree(10_000));
    out
}
