//! Multicolored binary trees and ordered forests, read as dyadic-brick
//! subdivisions of disjoint unit `s`-cubes.
//!
//! A caret of color `c` halves its brick along dimension `c`; the left child
//! is the lower half. Leaves, roots and tree nodes are numbered from 1 in the
//! public API.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ForestError {
    #[error("leaf index {index} out of range 1..={leaves}")]
    LeafOutOfRange { index: usize, leaves: usize },
    #[error("root index {index} out of range 1..={roots}")]
    RootOutOfRange { index: usize, roots: usize },
    #[error("color {color} outside 1..={colors}")]
    BadColor { color: Color, colors: usize },
    #[error("no node at the given path")]
    NoSuchNode,
    #[error("a forest needs at least one tree")]
    Empty,
    #[error("cannot parse forest: {0}")]
    Parse(String),
}

/// Address of a node inside a tree: `false` descends left, `true` right.
pub type Path = Vec<bool>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColoredTree {
    Leaf,
    Caret(Color, Box<ColoredTree>, Box<ColoredTree>),
}

impl ColoredTree {
    pub fn caret(color: Color, left: ColoredTree, right: ColoredTree) -> Self {
        ColoredTree::Caret(color, Box::new(left), Box::new(right))
    }

    /// A single caret with two leaves.
    pub fn single(color: Color) -> Self {
        Self::caret(color, ColoredTree::Leaf, ColoredTree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, ColoredTree::Leaf)
    }

    pub fn root_color(&self) -> Option<Color> {
        match self {
            ColoredTree::Leaf => None,
            ColoredTree::Caret(c, _, _) => Some(*c),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            ColoredTree::Leaf => 1,
            ColoredTree::Caret(_, l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn carets(&self) -> usize {
        self.leaves() - 1
    }

    pub fn depth(&self) -> usize {
        match self {
            ColoredTree::Leaf => 0,
            ColoredTree::Caret(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn max_color(&self) -> Color {
        match self {
            ColoredTree::Leaf => 0,
            ColoredTree::Caret(c, l, r) => (*c).max(l.max_color()).max(r.max_color()),
        }
    }

    pub fn carets_by_color(&self) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        self.count_colors(&mut out);
        out
    }

    fn count_colors(&self, out: &mut BTreeMap<Color, usize>) {
        if let ColoredTree::Caret(c, l, r) = self {
            *out.entry(*c).or_insert(0) += 1;
            l.count_colors(out);
            r.count_colors(out);
        }
    }

    /// No color repeats along any root-to-leaf path.
    pub fn is_elementary(&self) -> bool {
        fn go(t: &ColoredTree, used: &mut Vec<Color>) -> bool {
            match t {
                ColoredTree::Leaf => true,
                ColoredTree::Caret(c, l, r) => {
                    if used.contains(c) {
                        return false;
                    }
                    used.push(*c);
                    let ok = go(l, used) && go(r, used);
                    used.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new())
    }

    /// The per-tree reading: no color occurs twice anywhere in the tree.
    pub fn is_elementary_strict(&self) -> bool {
        self.carets_by_color().values().all(|&n| n <= 1)
    }

    pub fn is_very_elementary(&self) -> bool {
        self.carets() <= 1
    }

    pub fn subtree(&self, path: &[bool]) -> Option<&ColoredTree> {
        match (path.split_first(), self) {
            (None, t) => Some(t),
            (Some(_), ColoredTree::Leaf) => None,
            (Some((&right, rest)), ColoredTree::Caret(_, l, r)) => {
                if right {
                    r.subtree(rest)
                } else {
                    l.subtree(rest)
                }
            }
        }
    }

    pub fn subtree_mut(&mut self, path: &[bool]) -> Option<&mut ColoredTree> {
        match path.split_first() {
            None => Some(self),
            Some((&right, rest)) => match self {
                ColoredTree::Leaf => None,
                ColoredTree::Caret(_, l, r) => {
                    if right {
                        r.subtree_mut(rest)
                    } else {
                        l.subtree_mut(rest)
                    }
                }
            },
        }
    }

    /// Number of leaves strictly to the left of the node at `path`.
    pub fn leaf_offset(&self, path: &[bool]) -> Option<usize> {
        match (path.split_first(), self) {
            (None, _) => Some(0),
            (Some(_), ColoredTree::Leaf) => None,
            (Some((&right, rest)), ColoredTree::Caret(_, l, r)) => {
                if right {
                    Some(l.leaves() + r.leaf_offset(rest)?)
                } else {
                    l.leaf_offset(rest)
                }
            }
        }
    }

    /// Path to the leaf with 0-based index `i`.
    pub fn leaf_path(&self, mut i: usize) -> Option<Path> {
        let mut path = Vec::new();
        let mut t = self;
        loop {
            match t {
                ColoredTree::Leaf => return if i == 0 { Some(path) } else { None },
                ColoredTree::Caret(_, l, r) => {
                    let nl = l.leaves();
                    if i < nl {
                        path.push(false);
                        t = l;
                    } else {
                        i -= nl;
                        path.push(true);
                        t = r;
                    }
                }
            }
        }
    }

    /// Paths of all carets, in prefix order.
    pub fn caret_paths(&self) -> Vec<Path> {
        fn go(t: &ColoredTree, path: &mut Path, out: &mut Vec<Path>) {
            if let ColoredTree::Caret(_, l, r) = t {
                out.push(path.clone());
                path.push(false);
                go(l, path, out);
                path.pop();
                path.push(true);
                go(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Replaces the leaf with 0-based index `i` by `sub`.
    pub fn graft(&self, i: usize, sub: &ColoredTree) -> Option<ColoredTree> {
        let path = self.leaf_path(i)?;
        let mut t = self.clone();
        *t.subtree_mut(&path)? = sub.clone();
        Some(t)
    }

    /// Bricks of the leaves, in leaf order, inside `cell`.
    fn bricks_into(&self, cell: Brick, out: &mut Vec<Brick>) {
        match self {
            ColoredTree::Leaf => out.push(cell),
            ColoredTree::Caret(c, l, r) => {
                let (lo, hi) = cell.halves(*c as usize - 1);
                l.bricks_into(lo, out);
                r.bricks_into(hi, out);
            }
        }
    }
}

impl fmt::Display for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoredTree::Leaf => write!(f, "_"),
            ColoredTree::Caret(c, l, r) => write!(f, "({c} {l} {r})"),
        }
    }
}

/// An ordered nonempty sequence of trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredForest {
    trees: Vec<ColoredTree>,
}

impl ColoredForest {
    pub fn new(trees: Vec<ColoredTree>) -> Result<Self, ForestError> {
        if trees.is_empty() {
            return Err(ForestError::Empty);
        }
        Ok(ColoredForest { trees })
    }

    /// The trivial forest `1_n`.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0, "a forest needs at least one tree");
        ColoredForest { trees: vec![ColoredTree::Leaf; n] }
    }

    pub fn from_tree(t: ColoredTree) -> Self {
        ColoredForest { trees: vec![t] }
    }

    pub fn trees(&self) -> &[ColoredTree] {
        &self.trees
    }

    pub fn tree(&self, root: usize) -> &ColoredTree {
        &self.trees[root]
    }

    pub(crate) fn tree_mut(&mut self, root: usize) -> &mut ColoredTree {
        &mut self.trees[root]
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(|t| t.leaves()).sum()
    }

    pub fn carets(&self) -> usize {
        self.leaves() - self.roots()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(|t| t.is_leaf())
    }

    pub fn max_color(&self) -> Color {
        self.trees.iter().map(|t| t.max_color()).max().unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        self.trees.iter().map(|t| t.depth()).max().unwrap_or(0)
    }

    pub fn carets_by_color(&self) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        for t in &self.trees {
            t.count_colors(&mut out);
        }
        out
    }

    pub fn check_colors(&self, colors: usize) -> Result<(), ForestError> {
        let m = self.max_color();
        if m as usize > colors {
            return Err(ForestError::BadColor { color: m, colors });
        }
        Ok(())
    }

    pub fn is_elementary(&self) -> bool {
        self.trees.iter().all(|t| t.is_elementary())
    }

    pub fn is_elementary_strict(&self) -> bool {
        self.trees.iter().all(|t| t.is_elementary_strict())
    }

    pub fn is_very_elementary(&self) -> bool {
        self.trees.iter().all(|t| t.is_very_elementary())
    }

    /// 0-based index of the first leaf of tree `root` (0-based).
    pub fn leaf_start(&self, root: usize) -> usize {
        self.trees[..root].iter().map(|t| t.leaves()).sum()
    }

    /// Tree and in-tree index of the 0-based forest leaf `i`.
    pub fn locate_leaf(&self, mut i: usize) -> Option<(usize, usize)> {
        for (r, t) in self.trees.iter().enumerate() {
            let n = t.leaves();
            if i < n {
                return Some((r, i));
            }
            i -= n;
        }
        None
    }

    /// Replaces leaf `i` (1-based) by `sub`.
    pub fn graft(&self, i: usize, sub: &ColoredTree) -> Result<ColoredForest, ForestError> {
        let leaves = self.leaves();
        if i == 0 || i > leaves {
            return Err(ForestError::LeafOutOfRange { index: i, leaves });
        }
        let (r, j) = self.locate_leaf(i - 1).expect("index checked");
        let mut out = self.clone();
        out.trees[r] = self.trees[r].graft(j, sub).expect("index checked");
        Ok(out)
    }

    /// Leaf counts of the nontrivial trees.
    pub fn merge_leaf_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.trees.iter().map(|t| t.leaves()).filter(|&n| n > 1).collect();
        v.sort_unstable();
        v
    }

    pub fn elementarity(&self) -> Elementarity {
        if self.is_very_elementary() {
            Elementarity::VeryElementary
        } else if self.is_elementary() {
            Elementarity::Elementary
        } else {
            Elementarity::General
        }
    }

    /// Leaf bricks in leaf order; tree `r` subdivides unit cube `r`.
    pub fn bricks(&self, colors: usize) -> Result<Vec<Brick>, ForestError> {
        self.check_colors(colors)?;
        let mut out = Vec::with_capacity(self.leaves());
        for (r, t) in self.trees.iter().enumerate() {
            t.bricks_into(Brick::unit(r, colors), &mut out);
        }
        Ok(out)
    }

    /// The brick partition of this forest, as a sorted set.
    pub fn partition(&self, colors: usize) -> Result<Partition, ForestError> {
        Ok(Partition::new(self.bricks(colors)?))
    }
}

impl fmt::Display for ColoredForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.trees.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for ColoredTree {
    type Err = ForestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let f: ColoredForest = s.parse()?;
        if f.roots() != 1 {
            return Err(ForestError::Parse(format!("expected one tree, found {}", f.roots())));
        }
        Ok(f.trees.into_iter().next().expect("one tree"))
    }
}

impl FromStr for ColoredForest {
    type Err = ForestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let mut trees = Vec::new();
        while pos < tokens.len() {
            trees.push(parse_tree(&tokens, &mut pos)?);
        }
        ColoredForest::new(trees)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Leaf,
    Num(Color),
}

fn tokenize(s: &str) -> Result<Vec<Token>, ForestError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            '(' => {
                out.push(Token::Open);
                chars.next();
            }
            ')' => {
                out.push(Token::Close);
                chars.next();
            }
            '_' => {
                out.push(Token::Leaf);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    n.push(d);
                    chars.next();
                }
                let v: Color = n.parse().map_err(|_| ForestError::Parse(format!("bad color {n}")))?;
                out.push(Token::Num(v));
            }
            c => return Err(ForestError::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

fn parse_tree(tokens: &[Token], pos: &mut usize) -> Result<ColoredTree, ForestError> {
    let err = |m: &str| ForestError::Parse(m.to_string());
    match tokens.get(*pos) {
        Some(Token::Leaf) => {
            *pos += 1;
            Ok(ColoredTree::Leaf)
        }
        Some(Token::Open) => {
            *pos += 1;
            let c = match tokens.get(*pos) {
                Some(Token::Num(c)) if *c >= 1 => *c,
                _ => return Err(err("expected a positive color after `(`")),
            };
            *pos += 1;
            let l = parse_tree(tokens, pos)?;
            let r = parse_tree(tokens, pos)?;
            if tokens.get(*pos) != Some(&Token::Close) {
                return Err(err("expected `)`"));
            }
            *pos += 1;
            Ok(ColoredTree::caret(c, l, r))
        }
        Some(t) => Err(ForestError::Parse(format!("unexpected token {t:?}"))),
        None => Err(err("unexpected end of input")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementarity {
    VeryElementary,
    Elementary,
    General,
}

/// A dyadic interval `[num / 2^level, (num + 1) / 2^level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    pub num: u64,
    pub level: u32,
}

impl Dyadic {
    pub const UNIT: Dyadic = Dyadic { num: 0, level: 0 };

    pub fn halves(self) -> (Dyadic, Dyadic) {
        assert!(self.level < 62, "dyadic level too deep");
        let l = self.level + 1;
        (Dyadic { num: 2 * self.num, level: l }, Dyadic { num: 2 * self.num + 1, level: l })
    }

    pub fn contains(self, other: Dyadic) -> bool {
        other.level >= self.level && (other.num >> (other.level - self.level)) == self.num
    }

    /// Position of `inner` relative to `self`, as a dyadic in the unit interval.
    pub fn relative(self, inner: Dyadic) -> Dyadic {
        debug_assert!(self.contains(inner));
        let d = inner.level - self.level;
        Dyadic { num: inner.num - (self.num << d), level: d }
    }

    /// The sub-interval of `self` at relative position `rel`.
    pub fn at(self, rel: Dyadic) -> Dyadic {
        Dyadic { num: (self.num << rel.level) + rel.num, level: self.level + rel.level }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = 1u128 << self.level;
        write!(f, "[{}/{den},{}/{den})", self.num, self.num + 1)
    }
}

/// A dyadic box inside unit cube number `root` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Brick {
    pub root: usize,
    pub sides: Vec<Dyadic>,
}

impl Brick {
    pub fn unit(root: usize, colors: usize) -> Self {
        Brick { root, sides: vec![Dyadic::UNIT; colors] }
    }

    pub fn dims(&self) -> usize {
        self.sides.len()
    }

    pub fn halves(&self, dim: usize) -> (Brick, Brick) {
        let (lo, hi) = self.sides[dim].halves();
        let mut a = self.clone();
        let mut b = self.clone();
        a.sides[dim] = lo;
        b.sides[dim] = hi;
        (a, b)
    }

    pub fn contains(&self, other: &Brick) -> bool {
        self.root == other.root && self.sides.iter().zip(&other.sides).all(|(a, b)| a.contains(*b))
    }

    /// Along each axis two dyadic intervals are nested or disjoint, so boxes
    /// meet iff every axis pair is nested.
    pub fn meets(&self, other: &Brick) -> bool {
        self.root == other.root
            && self
                .sides
                .iter()
                .zip(&other.sides)
                .all(|(a, b)| a.contains(*b) || b.contains(*a))
    }

    pub fn intersection(&self, other: &Brick) -> Option<Brick> {
        if !self.meets(other) {
            return None;
        }
        let sides = self
            .sides
            .iter()
            .zip(&other.sides)
            .map(|(a, b)| if a.level >= b.level { *a } else { *b })
            .collect();
        Some(Brick { root: self.root, sides })
    }

    /// Total halvings; the volume is `2^-total_level`.
    pub fn total_level(&self) -> u32 {
        self.sides.iter().map(|d| d.level).sum()
    }

    /// Every side has length at least ½.
    pub fn is_coarse(&self) -> bool {
        self.sides.iter().all(|d| d.level <= 1)
    }

    /// Position of `inner` relative to `self`, rooted at 0.
    pub fn relative(&self, inner: &Brick) -> Brick {
        Brick {
            root: 0,
            sides: self.sides.iter().zip(&inner.sides).map(|(a, b)| a.relative(*b)).collect(),
        }
    }

    /// The sub-box of `self` at relative position `rel`.
    pub fn at(&self, rel: &Brick) -> Brick {
        Brick {
            root: self.root,
            sides: self.sides.iter().zip(&rel.sides).map(|(a, r)| a.at(*r)).collect(),
        }
    }
}

impl fmt::Display for Brick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.root + 1)?;
        for d in &self.sides {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}

/// A set of bricks, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    bricks: Vec<Brick>,
}

impl Partition {
    pub fn new(mut bricks: Vec<Brick>) -> Self {
        bricks.sort();
        Partition { bricks }
    }

    pub fn trivial(roots: usize, colors: usize) -> Self {
        Partition::new((0..roots).map(|r| Brick::unit(r, colors)).collect())
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    /// True iff `finer` subdivides every brick of `self` by successive
    /// halvings, i.e. `finer` is obtained from `self` by a forest splitting.
    pub fn realizably_refined_by(&self, finer: &Partition) -> bool {
        let mut used = 0;
        for b in &self.bricks {
            let inside: Vec<&Brick> = finer.bricks.iter().filter(|x| b.contains(x)).collect();
            used += inside.len();
            if !realizable(b, &inside) {
                return false;
            }
        }
        used == finer.bricks.len()
    }
}

/// Whether `parts` tile `cell` by recursive halving.
fn realizable(cell: &Brick, parts: &[&Brick]) -> bool {
    if parts.len() == 1 {
        return parts[0] == cell;
    }
    if parts.is_empty() || parts.contains(&cell) {
        return false;
    }
    for dim in 0..cell.dims() {
        let (lo, hi) = cell.halves(dim);
        let (a, b): (Vec<&Brick>, Vec<&Brick>) = parts.iter().partition(|p| lo.contains(p));
        if b.iter().all(|p| hi.contains(p)) && realizable(&lo, &a) && realizable(&hi, &b) {
            return true;
        }
    }
    false
}

/// All realizable coarsenings of the partition of `cell` given by `parts`
/// (which must itself be realizable), including `{cell}` and `parts`.
fn coarsenings(cell: &Brick, parts: &[Brick]) -> BTreeSet<Vec<Brick>> {
    let mut out = BTreeSet::new();
    out.insert(vec![cell.clone()]);
    if parts.len() <= 1 {
        return out;
    }
    for dim in 0..cell.dims() {
        let (lo, hi) = cell.halves(dim);
        let (a, b): (Vec<Brick>, Vec<Brick>) = parts.iter().cloned().partition(|p| lo.contains(p));
        if a.is_empty() || b.is_empty() || !b.iter().all(|p| hi.contains(p)) {
            continue;
        }
        let ca = coarsenings(&lo, &a);
        let cb = coarsenings(&hi, &b);
        for x in &ca {
            for y in &cb {
                let mut v = x.clone();
                v.extend(y.iter().cloned());
                v.sort();
                out.insert(v);
            }
        }
    }
    out
}

/// Partitions strictly between the trivial one and that of `f`, each
/// reachable from the trivial partition by splitting and refined to `f`'s
/// partition by splitting. Returned sorted.
pub fn open_interval(f: &ColoredForest, colors: usize) -> Result<Vec<Partition>, ForestError> {
    let top = f.partition(colors)?;
    let bottom = Partition::trivial(f.roots(), colors);
    let mut per_root: Vec<Vec<Vec<Brick>>> = Vec::new();
    for r in 0..f.roots() {
        let cell = Brick::unit(r, colors);
        let parts: Vec<Brick> = top.bricks.iter().filter(|b| b.root == r).cloned().collect();
        per_root.push(coarsenings(&cell, &parts).into_iter().collect());
    }
    let mut out = vec![Vec::new()];
    for options in &per_root {
        let mut next = Vec::new();
        for prefix in &out {
            for o in options {
                let mut v: Vec<Brick> = prefix.clone();
                v.extend(o.iter().cloned());
                next.push(v);
            }
        }
        out = next;
    }
    let mut result: Vec<Partition> = out
        .into_iter()
        .map(Partition::new)
        .filter(|p| *p != top && *p != bottom)
        .collect();
    result.sort();
    result.dedup();
    Ok(result)
}
