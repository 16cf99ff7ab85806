//! Morse data on braiges `(1_n, b, F)`: the merge census `μ`, the height
//! `h = (μ, f)`, legal single-caret splittings, bottlenecks, split links,
//! and the integer arithmetic behind the connectivity bounds.

use std::fmt;

use crate::braid::BraidWord;
use crate::forest::{Color, ColoredForest, ColoredTree};
use crate::spraige::{search_for, Budget, SearchOutcome, Spraige, SpraigeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorseError {
    #[error("diagram has splits; expected a braige")]
    NotBraige,
    #[error("merge forest is not elementary")]
    NotElementary,
    #[error("braige has a very elementary merge")]
    VeryElementaryMerge,
    #[error("merge tree at foot {0} is trivial")]
    TrivialTree(usize),
    #[error("no foot {0}")]
    NoSuchFoot(usize),
    #[error(transparent)]
    Spraige(#[from] SpraigeError),
}

/// `(μ_{2^s}, …, μ_3)`: the number of merges with each leaf count, largest
/// first. The derived order is the lexicographic one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuVector {
    counts: Vec<usize>,
}

impl MuVector {
    pub fn of_forest(f: &ColoredForest, colors: usize) -> Self {
        let top = 1usize << colors;
        let mut counts = vec![0; top.saturating_sub(2)];
        for t in f.trees() {
            let k = t.leaves();
            if (3..=top).contains(&k) {
                counts[top - k] += 1;
            }
        }
        MuVector { counts }
    }

    /// `μ_k`, zero outside `3..=2^s`.
    pub fn get(&self, k: usize) -> usize {
        let top = self.counts.len() + 2;
        if (3..=top).contains(&k) {
            self.counts[top - k]
        } else {
            0
        }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for MuVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `h = (μ, f)`, ordered lexicographically with `μ` first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Height {
    pub mu: MuVector,
    pub f: usize,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu, self.f)
    }
}

fn elementary_braige(z: &Spraige) -> Result<(), MorseError> {
    if !z.is_braige() {
        return Err(MorseError::NotBraige);
    }
    if !z.f_plus().is_elementary() {
        return Err(MorseError::NotElementary);
    }
    Ok(())
}

pub fn mu(z: &Spraige) -> Result<MuVector, MorseError> {
    elementary_braige(z)?;
    Ok(MuVector::of_forest(z.f_plus(), z.colors()))
}

/// Number of two-leaf merges.
pub fn mu2(z: &Spraige) -> Result<usize, MorseError> {
    elementary_braige(z)?;
    Ok(z.f_plus().trees().iter().filter(|t| t.leaves() == 2).count())
}

pub fn height(z: &Spraige) -> Result<Height, MorseError> {
    Ok(Height { mu: mu(z)?, f: z.feet() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Legality {
    /// The splitting rewrites to this braige.
    Legal(Spraige),
    /// No diagram in the class is a braige: some head is cut into pieces.
    NotLegal,
    /// Neither shown within the search budget.
    Unknown,
}

impl Legality {
    pub fn is_legal(&self) -> bool {
        matches!(self, Legality::Legal(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Legality::Legal(_) => "legal",
            Legality::NotLegal => "not legal",
            Legality::Unknown => "unknown",
        }
    }
}

/// The forest with one caret of the given color at each listed foot
/// (0-based) and trivial trees elsewhere.
pub fn split_forest(feet: usize, splits: &[(usize, Color)]) -> ColoredForest {
    let trees = (0..feet)
        .map(|j| match splits.iter().find(|(k, _)| *k == j) {
            Some(&(_, c)) => ColoredTree::single(c),
            None => ColoredTree::Leaf,
        })
        .collect();
    ColoredForest::new(trees).expect("nonempty forest")
}

/// Decides whether `x` equals a braige: directly after reduction, refuted
/// by the brick map, or found by the rewriting search.
pub fn settle(x: &Spraige, budget: Budget) -> Legality {
    let x = x.reduce_fully();
    if x.is_braige() {
        return Legality::Legal(x);
    }
    if x.brick_map().head_images().is_none() {
        return Legality::NotLegal;
    }
    match search_for(&x, Spraige::is_braige, budget) {
        SearchOutcome::Found(moves) => {
            let mut y = x;
            for m in &moves {
                y = y.apply(m).expect("search scripts replay");
            }
            Legality::Legal(y)
        }
        _ => Legality::Unknown,
    }
}

/// Splitting `z` by single carets at the given feet.
pub fn split(z: &Spraige, splits: &[(usize, Color)], budget: Budget) -> Result<Legality, MorseError> {
    if let Some(&(j, _)) = splits.iter().find(|(j, _)| *j >= z.feet()) {
        return Err(MorseError::NoSuchFoot(j));
    }
    let x = z.splitting(&split_forest(z.feet(), splits))?;
    Ok(settle(&x, budget))
}

/// Budget used for legality probes unless the caller overrides it.
pub fn legality_budget() -> Budget {
    Budget { depth: 8, states: 4_000, extra_leaves: 2 }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub foot: usize,
    pub color: Color,
    pub legality: Legality,
}

/// Every single-caret splitting of every foot, with its legality.
pub fn probe_splits(z: &Spraige, budget: Budget) -> Result<Vec<Probe>, MorseError> {
    elementary_braige(z)?;
    let mut out = Vec::new();
    for foot in 0..z.feet() {
        for color in 1..=z.colors() as Color {
            let legality = split(z, &[(foot, color)], budget)?;
            out.push(Probe { foot, color, legality });
        }
    }
    Ok(out)
}

/// `(foot, color)` pairs whose splitting is shown legal. Unknown probes
/// are left out here; [`probe_splits`] reports them.
pub fn legal_splits(z: &Spraige, budget: Budget) -> Result<Vec<(usize, Color)>, MorseError> {
    Ok(probe_splits(z, budget)?
        .into_iter()
        .filter(|p| p.legality.is_legal())
        .map(|p| (p.foot, p.color))
        .collect())
}

/// Exactly one color splits the merge at `foot` legally. `None` when the
/// answer depends on an undecided probe.
pub fn is_bottleneck(z: &Spraige, foot: usize, budget: Budget) -> Result<Option<bool>, MorseError> {
    elementary_braige(z)?;
    if foot >= z.feet() {
        return Err(MorseError::NoSuchFoot(foot));
    }
    if z.f_plus().tree(foot).is_leaf() {
        return Err(MorseError::TrivialTree(foot));
    }
    let mut legal = 0;
    let mut unknown = false;
    for color in 1..=z.colors() as Color {
        match split(z, &[(foot, color)], budget)? {
            Legality::Legal(_) => legal += 1,
            Legality::NotLegal => {}
            Legality::Unknown => unknown = true,
        }
    }
    Ok(match (legal, unknown) {
        (n, _) if n >= 2 => Some(false),
        (n, false) => Some(n == 1),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    HasVeryElementaryMerge,
    /// The first bottleneck merge, by foot.
    Bottleneck(usize),
    Neither,
    /// No very elementary merge, and some bottleneck test was undecided.
    Undetermined,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::HasVeryElementaryMerge => write!(f, "has a very elementary merge"),
            Classification::Bottleneck(j) => write!(f, "bottleneck merge at foot {}", j + 1),
            Classification::Neither => write!(f, "no very elementary or bottleneck merge"),
            Classification::Undetermined => write!(f, "undetermined within budget"),
        }
    }
}

pub fn classify(z: &Spraige, budget: Budget) -> Result<Classification, MorseError> {
    if mu2(z)? > 0 {
        return Ok(Classification::HasVeryElementaryMerge);
    }
    let mut undecided = false;
    for foot in 0..z.feet() {
        if z.f_plus().tree(foot).is_leaf() {
            continue;
        }
        match is_bottleneck(z, foot, budget)? {
            Some(true) => return Ok(Classification::Bottleneck(foot)),
            Some(false) => {}
            None => undecided = true,
        }
    }
    Ok(if undecided { Classification::Undetermined } else { Classification::Neither })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitVertex {
    /// `(foot, color)`, sorted by foot.
    pub splits: Vec<(usize, Color)>,
    pub braige: Spraige,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitLink {
    pub vertices: Vec<SplitVertex>,
    /// Combined splittings left undecided by the search.
    pub unknown: usize,
}

/// Braiges reached from `z` by splitting a nonempty set of merges with at
/// least three leaves, one legal single caret per merge.
pub fn split_link_vertices(z: &Spraige, budget: Budget) -> Result<SplitLink, MorseError> {
    elementary_braige(z)?;
    let mut options: Vec<(usize, Vec<Color>)> = Vec::new();
    for foot in 0..z.feet() {
        if z.f_plus().tree(foot).leaves() < 3 {
            continue;
        }
        let colors = (1..=z.colors() as Color)
            .filter(|&c| matches!(split(z, &[(foot, c)], budget), Ok(Legality::Legal(_))))
            .collect();
        options.push((foot, colors));
    }
    let mut choices: Vec<Vec<(usize, Color)>> = vec![Vec::new()];
    for (foot, colors) in &options {
        let mut next = Vec::new();
        for prefix in &choices {
            next.push(prefix.clone());
            for &c in colors {
                let mut v = prefix.clone();
                v.push((*foot, c));
                next.push(v);
            }
        }
        choices = next;
    }
    let mut link = SplitLink { vertices: Vec::new(), unknown: 0 };
    for splits in choices.into_iter().filter(|s| !s.is_empty()) {
        match split(z, &splits, budget)? {
            Legality::Legal(braige) => link.vertices.push(SplitVertex { splits, braige }),
            Legality::NotLegal => {}
            Legality::Unknown => link.unknown += 1,
        }
    }
    Ok(link)
}

/// Unmerged heads `k_u` and merges `k_e` of a braige without very
/// elementary merges, with the bound `n ≤ 2^s·k_e + k_u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingStats {
    pub n: usize,
    pub colors: usize,
    pub k_u: usize,
    pub k_e: usize,
}

impl CountingStats {
    pub fn bound_holds(&self) -> bool {
        self.n <= (self.k_e << self.colors) + self.k_u
    }
}

pub fn counting_stats(z: &Spraige) -> Result<CountingStats, MorseError> {
    if mu2(z)? > 0 {
        return Err(MorseError::VeryElementaryMerge);
    }
    let trees = z.f_plus().trees();
    Ok(CountingStats {
        n: z.heads(),
        colors: z.colors(),
        k_u: trees.iter().filter(|t| t.is_leaf()).count(),
        k_e: trees.iter().filter(|t| !t.is_leaf()).count(),
    })
}

/// `ν(n) = ⌊(n − 2)/3⌋`.
pub fn nu(n: i64) -> i64 {
    (n - 2).div_euclid(3)
}

/// `η(n) = ⌊(n − 2)/2^s⌋`.
pub fn eta(n: i64, colors: u32) -> i64 {
    (n - 2).div_euclid(1 << colors)
}

/// All elementary merge forests with `n` leaves over `colors` colors.
pub fn elementary_forests(n: usize, colors: usize) -> Vec<ColoredForest> {
    let mut trees_by_leaves: Vec<Vec<ColoredTree>> = vec![Vec::new(); n + 1];
    for k in 1..=n {
        trees_by_leaves[k] = elementary_trees(k, colors, &mut Vec::new());
    }
    let mut out = Vec::new();
    fn go(rest: usize, by: &[Vec<ColoredTree>], prefix: &mut Vec<ColoredTree>, out: &mut Vec<ColoredForest>) {
        if rest == 0 {
            out.push(ColoredForest::new(prefix.clone()).expect("nonempty"));
            return;
        }
        for k in 1..=rest {
            for t in &by[k] {
                prefix.push(t.clone());
                go(rest - k, by, prefix, out);
                prefix.pop();
            }
        }
    }
    if n > 0 {
        go(n, &trees_by_leaves, &mut Vec::new(), &mut out);
    }
    out
}

fn elementary_trees(leaves: usize, colors: usize, used: &mut Vec<Color>) -> Vec<ColoredTree> {
    if leaves == 1 {
        return vec![ColoredTree::Leaf];
    }
    let mut out = Vec::new();
    for c in 1..=colors as Color {
        if used.contains(&c) {
            continue;
        }
        used.push(c);
        for l in 1..leaves {
            let lefts = elementary_trees(l, colors, used);
            let rights = elementary_trees(leaves - l, colors, used);
            for a in &lefts {
                for b in &rights {
                    out.push(ColoredTree::caret(c, a.clone(), b.clone()));
                }
            }
        }
        used.pop();
    }
    out
}

/// Very elementary forests with `n` leaves: one caret per tree at most.
pub fn very_elementary_forests(n: usize, colors: usize) -> Vec<ColoredForest> {
    elementary_forests(n, colors).into_iter().filter(|f| f.is_very_elementary()).collect()
}

/// The matching of `sL_{n-1}` for a very elementary forest on `n` leaves:
/// a caret of color `c` over leaves `i, i+1` is edge `i–(i+1)` labeled
/// `c`, indexed as in [`crate::homology::Multigraph::linear`].
pub fn forest_matching(f: &ColoredForest, colors: usize) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    let mut leaf = 0;
    for t in f.trees() {
        match t {
            ColoredTree::Leaf => leaf += 1,
            ColoredTree::Caret(c, l, r) if l.is_leaf() && r.is_leaf() => {
                out.push((leaf * colors + (*c as usize - 1)) as u32);
                leaf += 2;
            }
            _ => return None,
        }
    }
    Some(out)
}

/// Forests with the given number of roots and at most `max_leaves` leaves,
/// other than the trivial one.
pub fn nontrivial_forests(roots: usize, max_leaves: usize, colors: usize) -> Vec<ColoredForest> {
    let mut by_leaves: Vec<Vec<ColoredTree>> = vec![Vec::new(); max_leaves + 1];
    for k in 1..=max_leaves {
        by_leaves[k] = if k == 1 {
            vec![ColoredTree::Leaf]
        } else {
            let mut v = Vec::new();
            for c in 1..=colors as Color {
                for l in 1..k {
                    for a in &by_leaves[l] {
                        for b in &by_leaves[k - l] {
                            v.push(ColoredTree::caret(c, a.clone(), b.clone()));
                        }
                    }
                }
            }
            v
        };
    }
    let mut out = Vec::new();
    fn go(roots: usize, budget: usize, by: &[Vec<ColoredTree>], prefix: &mut Vec<ColoredTree>, out: &mut Vec<ColoredForest>) {
        if prefix.len() == roots {
            if prefix.iter().any(|t| !t.is_leaf()) {
                out.push(ColoredForest::new(prefix.clone()).expect("nonempty"));
            }
            return;
        }
        let left = roots - prefix.len() - 1;
        for k in 1..=budget.saturating_sub(left) {
            for t in &by[k] {
                prefix.push(t.clone());
                go(roots, budget - k, by, prefix, out);
                prefix.pop();
            }
        }
    }
    if roots > 0 && max_leaves >= roots {
        go(roots, max_leaves, &by_leaves, &mut Vec::new(), &mut out);
    }
    out
}

/// Outcome of checking the height comparison over splittings `x < y`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrichotomyReport {
    pub braiges: usize,
    pub pairs: usize,
    pub unknown: usize,
    /// Legal splittings that left the elementary braiges.
    pub non_elementary: usize,
    pub violations: Vec<String>,
}

/// For every elementary braige `x = (1_n, id, F)` with `n ≤ max_heads` and
/// every nontrivial split forest `G`, when `x ∗ G` is an elementary braige
/// `y`: `f(x) < f(y)`, `μ(x) ≥ μ(y)`, `h(x) < h(y) ⇔ μ(x) = μ(y)` and
/// `h(x) > h(y) ⇔ μ(x) > μ(y)`.
pub fn height_trichotomy(max_heads: usize, colors: usize, budget: Budget) -> TrichotomyReport {
    let mut report = TrichotomyReport::default();
    for n in 1..=max_heads {
        for f in elementary_forests(n, colors) {
            let x = Spraige::new(colors, ColoredForest::trivial(n), BraidWord::identity(n), f)
                .expect("well formed braige");
            report.braiges += 1;
            let hx = height(&x).expect("elementary braige");
            for g in nontrivial_forests(x.feet(), n, colors) {
                let Ok(prod) = x.splitting(&g) else { continue };
                let y = match settle(&prod, budget) {
                    Legality::Legal(y) => y,
                    Legality::NotLegal => continue,
                    Legality::Unknown => {
                        report.unknown += 1;
                        continue;
                    }
                };
                let Ok(hy) = height(&y) else {
                    report.non_elementary += 1;
                    continue;
                };
                report.pairs += 1;
                let ok = hx.f < hy.f
                    && hx.mu >= hy.mu
                    && ((hx < hy) == (hx.mu == hy.mu))
                    && ((hx > hy) == (hx.mu > hy.mu));
                if !ok {
                    report.violations.push(format!("x = {}, G = {g}: h(x) = {hx}, h(y) = {hy}", x.f_plus()));
                }
            }
        }
    }
    report
}

pub mod inequalities;
