//! Split-braid-merge diagrams `(F−, b, F+)` and their rewriting moves.
//!
//! Leaf `i` of `F−` is the top of strand `i`; that strand ends at bottom
//! position `ρ_b(i)`, which is leaf `ρ_b(i)` of `F+`. Heads are the roots of
//! `F−`, feet the roots of `F+`.

mod brickmap;
mod file;
pub mod random;
mod search;
mod unify;

pub use brickmap::{BrickMap, PermSpraige};
pub use search::{audit, svbr_equal, search_for, Budget, Certificate, SearchOutcome, Verdict};
pub use unify::{multiply, multiply_raw, unify, Unification, UnifyStep, DEFAULT_DEPTH_BOUND};

use std::fmt;

use crate::braid::{block_cross, BraidError, BraidWord};
use crate::forest::{Color, ColoredForest, ColoredTree, ForestError, Path};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpraigeError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error("leaf counts differ: F- has {minus}, braid has {strands} strands, F+ has {plus}")]
    LeafMismatch { minus: usize, strands: usize, plus: usize },
    #[error("color count must be at least 1")]
    NoColors,
    #[error("diagrams use different color counts ({0} vs {1})")]
    ColorMismatch(usize, usize),
    #[error("{feet} feet cannot meet {heads} heads")]
    InterfaceMismatch { feet: usize, heads: usize },
    #[error("move does not apply: {0}")]
    NotApplicable(String),
    #[error("unification exceeded the depth bound {0}")]
    DepthExceeded(usize),
    #[error("cannot parse diagram: {0}")]
    Parse(String),
}

/// Which forest of a diagram a move acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

/// A single rewriting move. Leaf and root indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Expand { leaf: usize, color: Color },
    Reduce { leaf: usize },
    CrossInsert { leaf: usize, outer: Color, inner: Color },
    CrossRemove { leaf: usize },
    RootExchange { side: Side, root: usize, path: Path },
    Slide { position: usize },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Expand { .. } => "expansion",
            Move::Reduce { .. } => "reduction",
            Move::CrossInsert { .. } => "cross insertion",
            Move::CrossRemove { .. } => "cross removal",
            Move::RootExchange { .. } => "root exchange",
            Move::Slide { .. } => "slide",
        }
    }
}

fn path_string(path: &[bool]) -> String {
    if path.is_empty() {
        return "root".into();
    }
    path.iter().map(|&r| if r { 'R' } else { 'L' }).collect()
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Expand { leaf, color } => write!(f, "expand leaf {leaf} color {color}"),
            Move::Reduce { leaf } => write!(f, "reduce leaves {leaf},{}", leaf + 1),
            Move::CrossInsert { leaf, outer, inner } => {
                write!(f, "insert cross gadget ({outer} over {inner}) at leaf {leaf}")
            }
            Move::CrossRemove { leaf } => write!(f, "remove cross gadget at leaf {leaf}"),
            Move::RootExchange { side, root, path } => {
                let s = match side {
                    Side::Minus => "F-",
                    Side::Plus => "F+",
                };
                write!(f, "exchange {s} tree {root} node {}", path_string(path))
            }
            Move::Slide { position } => write!(f, "slide braid letter {position}"),
        }
    }
}

/// `+1` iff `a < b`: the sign of the crossing in the braided cross relation.
pub fn cross_sign(a: Color, b: Color) -> i32 {
    if a < b {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spraige {
    colors: usize,
    f_minus: ColoredForest,
    braid: BraidWord,
    f_plus: ColoredForest,
}

impl Spraige {
    pub fn new(
        colors: usize,
        f_minus: ColoredForest,
        braid: BraidWord,
        f_plus: ColoredForest,
    ) -> Result<Self, SpraigeError> {
        if colors == 0 {
            return Err(SpraigeError::NoColors);
        }
        f_minus.check_colors(colors)?;
        f_plus.check_colors(colors)?;
        let (minus, strands, plus) = (f_minus.leaves(), braid.strands(), f_plus.leaves());
        if minus != strands || plus != strands {
            return Err(SpraigeError::LeafMismatch { minus, strands, plus });
        }
        Ok(Spraige { colors, f_minus, braid, f_plus })
    }

    /// Parses the three parts from their text forms.
    pub fn from_parts(colors: usize, f_minus: &str, braid: &str, f_plus: &str) -> Result<Self, SpraigeError> {
        Spraige::new(colors, f_minus.parse()?, braid.parse()?, f_plus.parse()?)
    }

    pub fn identity(n: usize, colors: usize) -> Self {
        Spraige {
            colors,
            f_minus: ColoredForest::trivial(n),
            braid: BraidWord::identity(n),
            f_plus: ColoredForest::trivial(n),
        }
    }

    /// The pure braid diagram `(1_n, b, 1_n)`.
    pub fn from_braid(b: BraidWord, colors: usize) -> Self {
        let n = b.strands();
        Spraige { colors, f_minus: ColoredForest::trivial(n), braid: b, f_plus: ColoredForest::trivial(n) }
    }

    /// `(F, id, 1_l)`: splitting by `F`.
    pub fn split_by(f: ColoredForest, colors: usize) -> Result<Self, SpraigeError> {
        let l = f.leaves();
        Spraige::new(colors, f, BraidWord::identity(l), ColoredForest::trivial(l))
    }

    /// `(1_l, id, F)`: merging by `F`.
    pub fn merge_by(f: ColoredForest, colors: usize) -> Result<Self, SpraigeError> {
        let l = f.leaves();
        Spraige::new(colors, ColoredForest::trivial(l), BraidWord::identity(l), f)
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn f_minus(&self) -> &ColoredForest {
        &self.f_minus
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn f_plus(&self) -> &ColoredForest {
        &self.f_plus
    }

    pub fn heads(&self) -> usize {
        self.f_minus.roots()
    }

    pub fn feet(&self) -> usize {
        self.f_plus.roots()
    }

    pub fn leaves(&self) -> usize {
        self.braid.strands()
    }

    pub fn carets(&self) -> usize {
        self.f_minus.carets() + self.f_plus.carets()
    }

    /// No splits: `F−` is trivial.
    pub fn is_braige(&self) -> bool {
        self.f_minus.is_trivial()
    }

    /// Trivial forests and a trivial braid.
    pub fn is_identity(&self) -> bool {
        self.f_minus.is_trivial() && self.f_plus.is_trivial() && self.braid.is_trivial()
    }

    pub fn inverse(&self) -> Spraige {
        Spraige {
            colors: self.colors,
            f_minus: self.f_plus.clone(),
            braid: self.braid.inverse(),
            f_plus: self.f_minus.clone(),
        }
    }

    pub fn project(&self) -> PermSpraige {
        PermSpraige::new(self.colors, self.f_minus.clone(), self.braid.permutation(), self.f_plus.clone())
    }

    pub fn brick_map(&self) -> BrickMap {
        self.project().brick_map()
    }

    /// Same element of the groupoid of unbraided diagrams.
    pub fn sv_equal(&self, other: &Spraige) -> bool {
        self.brick_map().equivalent(&other.brick_map())
    }

    fn check_color(&self, c: Color) -> Result<(), SpraigeError> {
        if c == 0 || c as usize > self.colors {
            return Err(ForestError::BadColor { color: c, colors: self.colors }.into());
        }
        Ok(())
    }

    fn check_leaf(&self, i: usize) -> Result<(), SpraigeError> {
        let leaves = self.leaves();
        if i == 0 || i > leaves {
            return Err(ForestError::LeafOutOfRange { index: i, leaves }.into());
        }
        Ok(())
    }

    /// Grafts a `c`-caret at leaf `i` of `F−` and at the matching leaf of
    /// `F+`, doubling strand `i`.
    pub fn expand(&self, i: usize, c: Color) -> Result<Spraige, SpraigeError> {
        self.check_leaf(i)?;
        self.check_color(c)?;
        let p = self.braid.permutation().apply(i - 1) + 1;
        let caret = ColoredTree::single(c);
        Ok(Spraige {
            colors: self.colors,
            f_minus: self.f_minus.graft(i, &caret)?,
            braid: self.braid.double_strand(i)?,
            f_plus: self.f_plus.graft(p, &caret)?,
        })
    }

    /// Expansion addressed by a leaf of `F+`.
    pub fn expand_bottom(&self, p: usize, c: Color) -> Result<Spraige, SpraigeError> {
        self.check_leaf(p)?;
        let i = self.braid.permutation().inverse().apply(p - 1) + 1;
        self.expand(i, c)
    }

    /// Removes the carets over leaves `i, i+1` of `F−` and the matching
    /// carets of `F+` when their strands run parallel through the braid.
    pub fn reduce_at(&self, i: usize) -> Result<Spraige, SpraigeError> {
        let na = |m: &str| SpraigeError::NotApplicable(format!("reduction at leaf {i}: {m}"));
        self.check_leaf(i)?;
        if i == self.leaves() {
            return Err(na("no right neighbour"));
        }
        let (rm, pm, c) = elementary_caret_at(&self.f_minus, i - 1).ok_or_else(|| na("no elementary caret in F-"))?;
        let rho = self.braid.permutation();
        let p = rho.apply(i - 1);
        if rho.apply(i) != p + 1 {
            return Err(na("strands not adjacent at the bottom"));
        }
        let (rp, pp, d) = elementary_caret_at(&self.f_plus, p).ok_or_else(|| na("no elementary caret in F+"))?;
        if c != d {
            return Err(na("caret colors differ"));
        }
        let reduced = self.braid.remove_strand(i + 1)?;
        if !reduced.double_strand(i)?.equal(&self.braid)? {
            return Err(na("strands are braided around each other"));
        }
        let mut f_minus = self.f_minus.clone();
        *f_minus.tree_mut(rm).subtree_mut(&pm).expect("path found above") = ColoredTree::Leaf;
        let mut f_plus = self.f_plus.clone();
        *f_plus.tree_mut(rp).subtree_mut(&pp).expect("path found above") = ColoredTree::Leaf;
        Ok(Spraige { colors: self.colors, f_minus, braid: reduced.freely_reduced(), f_plus })
    }

    /// Leaves of `F−` at which a reduction applies.
    pub fn reduction_sites(&self) -> Vec<usize> {
        (1..self.leaves()).filter(|&i| self.reduce_at(i).is_ok()).collect()
    }

    pub fn reduce_once(&self) -> Option<Spraige> {
        (1..self.leaves()).find_map(|i| self.reduce_at(i).ok())
    }

    pub fn reduce_fully(&self) -> Spraige {
        self.reduce_fully_logged().0
    }

    /// Reduces until no site remains, returning the moves applied.
    pub fn reduce_fully_logged(&self) -> (Spraige, Vec<Move>) {
        let mut x = self.clone();
        let mut log = Vec::new();
        'outer: loop {
            for i in 1..x.leaves() {
                if let Ok(y) = x.reduce_at(i) {
                    x = y;
                    log.push(Move::Reduce { leaf: i });
                    continue 'outer;
                }
            }
            return (x, log);
        }
    }

    /// Inserts the braided cross gadget at leaf `i`: `F−` gains
    /// `outer(inner, inner)`, `F+` gains `inner(outer, outer)`, and the
    /// braid gains one crossing of the two middle strands on top.
    pub fn cross_insert(&self, i: usize, outer: Color, inner: Color) -> Result<Spraige, SpraigeError> {
        self.check_leaf(i)?;
        self.check_color(outer)?;
        self.check_color(inner)?;
        if outer == inner {
            return Err(SpraigeError::NotApplicable("cross gadget needs two colors".into()));
        }
        let p = self.braid.permutation().apply(i - 1) + 1;
        let top = ColoredTree::caret(outer, ColoredTree::single(inner), ColoredTree::single(inner));
        let bottom = ColoredTree::caret(inner, ColoredTree::single(outer), ColoredTree::single(outer));
        let cabled = self.braid.cable(i, 4)?;
        let crossing = BraidWord::new(cabled.strands(), vec![cross_sign(outer, inner) * (i as i32 + 1)])?;
        Ok(Spraige {
            colors: self.colors,
            f_minus: self.f_minus.graft(i, &top)?,
            braid: crossing.concat(&cabled),
            f_plus: self.f_plus.graft(p, &bottom)?,
        })
    }

    /// Removes a cross gadget whose `F−` pattern starts at leaf `i`.
    pub fn cross_remove(&self, i: usize) -> Result<Spraige, SpraigeError> {
        let na = |m: &str| SpraigeError::NotApplicable(format!("cross removal at leaf {i}: {m}"));
        self.check_leaf(i)?;
        let (rm, pm, outer, inner) = gadget_at(&self.f_minus, i - 1).ok_or_else(|| na("no gadget pattern in F-"))?;
        let n = self.leaves();
        let undo = BraidWord::new(n, vec![-cross_sign(outer, inner) * (i as i32 + 1)])?;
        let rest = undo.compose(&self.braid)?;
        let rho = rest.permutation();
        let p = rho.apply(i - 1);
        if (1..4).any(|k| rho.apply(i - 1 + k) != p + k) {
            return Err(na("gadget strands do not stay parallel"));
        }
        let (rp, pp, o2, i2) = gadget_at(&self.f_plus, p).ok_or_else(|| na("no gadget pattern in F+"))?;
        if (o2, i2) != (inner, outer) {
            return Err(na("F+ pattern colors do not match"));
        }
        let mut core = rest.clone();
        for _ in 0..3 {
            core = core.remove_strand(i + 1)?;
        }
        if !core.cable(i, 4)?.equal(&rest)? {
            return Err(na("gadget strands are braided"));
        }
        let mut f_minus = self.f_minus.clone();
        *f_minus.tree_mut(rm).subtree_mut(&pm).expect("path found above") = ColoredTree::Leaf;
        let mut f_plus = self.f_plus.clone();
        *f_plus.tree_mut(rp).subtree_mut(&pp).expect("path found above") = ColoredTree::Leaf;
        Ok(Spraige { colors: self.colors, f_minus, braid: core.freely_reduced(), f_plus })
    }

    /// Rewrites `c(d(A,B), d(C,D))` at the given node to `d(c(A,C), c(B,D))`,
    /// transposing the strand blocks of `B` and `C` next to that forest.
    pub fn root_exchange(&self, side: Side, root: usize, path: &[bool]) -> Result<Spraige, SpraigeError> {
        let forest = match side {
            Side::Minus => &self.f_minus,
            Side::Plus => &self.f_plus,
        };
        if root == 0 || root > forest.roots() {
            return Err(ForestError::RootOutOfRange { index: root, roots: forest.roots() }.into());
        }
        let tree = forest.tree(root - 1);
        let node = tree.subtree(path).ok_or(ForestError::NoSuchNode)?;
        let (outer, inner, exchanged, sizes) = exchange_node(node)
            .ok_or_else(|| SpraigeError::NotApplicable("node is not of the form c(d(A,B), d(C,D))".into()))?;
        let o = forest.leaf_start(root - 1) + tree.leaf_offset(path).expect("node exists");
        let n = self.leaves();
        let [a, b, c, _] = sizes;
        let mut out = self.clone();
        match side {
            Side::Plus => {
                out.braid = self.braid.concat(&block_cross(n, o + a, b, c, cross_sign(outer, inner))).freely_reduced();
                *out.f_plus.tree_mut(root - 1).subtree_mut(path).expect("node exists") = exchanged;
            }
            Side::Minus => {
                out.braid = block_cross(n, o + a, c, b, -cross_sign(outer, inner)).concat(&self.braid).freely_reduced();
                *out.f_minus.tree_mut(root - 1).subtree_mut(path).expect("node exists") = exchanged;
            }
        }
        Ok(out)
    }

    /// All `(root, path)` nodes of one forest where a root exchange applies.
    pub fn exchange_sites(&self, side: Side) -> Vec<(usize, Path)> {
        let forest = match side {
            Side::Minus => &self.f_minus,
            Side::Plus => &self.f_plus,
        };
        let mut out = Vec::new();
        for (r, t) in forest.trees().iter().enumerate() {
            for p in t.caret_paths() {
                if exchange_node(t.subtree(&p).expect("listed path")).is_some() {
                    out.push((r + 1, p));
                }
            }
        }
        out
    }

    /// Rewrites the braid word by one Artin relation at `position` (1-based).
    pub fn slide(&self, position: usize) -> Result<Spraige, SpraigeError> {
        if position == 0 {
            return Err(SpraigeError::NotApplicable("braid positions start at 1".into()));
        }
        let b = self
            .braid
            .artin_rewrite_at(position - 1)
            .ok_or_else(|| SpraigeError::NotApplicable(format!("no Artin relation at letter {position}")))?;
        let mut out = self.clone();
        out.braid = b;
        Ok(out)
    }

    pub fn apply(&self, m: &Move) -> Result<Spraige, SpraigeError> {
        match m {
            Move::Expand { leaf, color } => self.expand(*leaf, *color),
            Move::Reduce { leaf } => self.reduce_at(*leaf),
            Move::CrossInsert { leaf, outer, inner } => self.cross_insert(*leaf, *outer, *inner),
            Move::CrossRemove { leaf } => self.cross_remove(*leaf),
            Move::RootExchange { side, root, path } => self.root_exchange(*side, *root, path),
            Move::Slide { position } => self.slide(*position),
        }
    }

    /// `σ ∗ (F, id, 1_l)`.
    pub fn splitting(&self, f: &ColoredForest) -> Result<Spraige, SpraigeError> {
        if f.roots() != self.feet() {
            return Err(SpraigeError::InterfaceMismatch { feet: self.feet(), heads: f.roots() });
        }
        multiply(self, &Spraige::split_by(f.clone(), self.colors)?)
    }

    /// `σ ∗ (1_m, id, F)`; `F` has one leaf per foot of `σ`.
    pub fn merging(&self, f: &ColoredForest) -> Result<Spraige, SpraigeError> {
        if f.leaves() != self.feet() {
            return Err(SpraigeError::InterfaceMismatch { feet: self.feet(), heads: f.leaves() });
        }
        multiply(self, &Spraige::merge_by(f.clone(), self.colors)?)
    }
}

/// The caret whose left leaf is forest leaf `i` (0-based), when both of
/// its children are leaves: `(root, path, color)`.
fn elementary_caret_at(f: &ColoredForest, i: usize) -> Option<(usize, Path, Color)> {
    let (r, j) = f.locate_leaf(i)?;
    let tree = f.tree(r);
    let mut path = tree.leaf_path(j)?;
    if path.pop()? {
        return None;
    }
    match tree.subtree(&path)? {
        ColoredTree::Caret(c, l, rr) if l.is_leaf() && rr.is_leaf() => Some((r, path, *c)),
        _ => None,
    }
}

/// The node `outer(inner(_,_), inner(_,_))` whose first leaf is forest leaf
/// `i` (0-based): `(root, path, outer, inner)`.
fn gadget_at(f: &ColoredForest, i: usize) -> Option<(usize, Path, Color, Color)> {
    let (r, j) = f.locate_leaf(i)?;
    let tree = f.tree(r);
    let mut path = tree.leaf_path(j)?;
    if path.len() < 2 || path.pop()? || path.pop()? {
        return None;
    }
    let node = tree.subtree(&path)?;
    let single = |t: &ColoredTree| match t {
        ColoredTree::Caret(c, l, r) if l.is_leaf() && r.is_leaf() => Some(*c),
        _ => None,
    };
    match node {
        ColoredTree::Caret(c, l, rr) => {
            let (dl, dr) = (single(l)?, single(rr)?);
            (dl == dr && dl != *c).then_some((r, path, *c, dl))
        }
        _ => None,
    }
}

/// For `c(d(A,B), d(C,D))` with `c ≠ d`: `(c, d, d(c(A,C), c(B,D)), leaf counts)`.
fn exchange_node(node: &ColoredTree) -> Option<(Color, Color, ColoredTree, [usize; 4])> {
    let ColoredTree::Caret(c, l, r) = node else { return None };
    let ColoredTree::Caret(d1, a, b) = l.as_ref() else { return None };
    let ColoredTree::Caret(d2, cc, dd) = r.as_ref() else { return None };
    if d1 != d2 || d1 == c {
        return None;
    }
    let sizes = [a.leaves(), b.leaves(), cc.leaves(), dd.leaves()];
    let swapped = ColoredTree::caret(
        *d1,
        ColoredTree::caret(*c, (**a).clone(), (**cc).clone()),
        ColoredTree::caret(*c, (**b).clone(), (**dd).clone()),
    );
    Some((*c, *d1, swapped, sizes))
}

impl fmt::Display for Spraige {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_string())
    }
}

#[cfg(test)]
mod tests;
