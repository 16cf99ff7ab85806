//! Common refinement of two trees, and multiplication of diagrams by
//! unifying each facing pair of trees.

use crate::forest::{Color, ColoredTree, Path};

use super::{exchange_node, Side, Spraige, SpraigeError};

/// Recursion limit for unification; far above what trees of depth 8 need.
pub const DEFAULT_DEPTH_BOUND: usize = 64;

/// One step of a unification script, addressed inside a single tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnifyStep {
    /// Graft a caret at the leaf with this 0-based in-tree index.
    Expand { leaf: usize, color: Color },
    RootExchange { path: Path },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unification {
    pub common: ColoredTree,
    pub left: Vec<UnifyStep>,
    pub right: Vec<UnifyStep>,
}

/// Rewrites `t` (left) and `u` (right) to one common tree. The left tree may
/// be expanded and root-exchanged toward the right tree's colors; the right
/// tree is only expanded.
pub fn unify(t: &ColoredTree, u: &ColoredTree, depth_bound: usize) -> Result<Unification, SpraigeError> {
    let mut st = State { t: t.clone(), u: u.clone(), left: Vec::new(), right: Vec::new(), bound: depth_bound };
    st.unify_at(&mut Vec::new(), 0)?;
    debug_assert_eq!(st.t, st.u);
    Ok(Unification { common: st.t, left: st.left, right: st.right })
}

struct State {
    t: ColoredTree,
    u: ColoredTree,
    left: Vec<UnifyStep>,
    right: Vec<UnifyStep>,
    bound: usize,
}

impl State {
    fn expand_left(&mut self, path: &[bool], color: Color) {
        let leaf = self.t.leaf_offset(path).expect("node exists");
        *self.t.subtree_mut(path).expect("node exists") = ColoredTree::single(color);
        self.left.push(UnifyStep::Expand { leaf, color });
    }

    fn expand_right(&mut self, path: &[bool], color: Color) {
        let leaf = self.u.leaf_offset(path).expect("node exists");
        *self.u.subtree_mut(path).expect("node exists") = ColoredTree::single(color);
        self.right.push(UnifyStep::Expand { leaf, color });
    }

    fn children(&mut self, path: &mut Path, depth: usize, f: fn(&mut State, &mut Path, usize) -> Result<(), SpraigeError>) -> Result<(), SpraigeError> {
        for side in [false, true] {
            path.push(side);
            let r = f(self, path, depth + 1);
            path.pop();
            r?;
        }
        Ok(())
    }

    fn unify_at(&mut self, path: &mut Path, depth: usize) -> Result<(), SpraigeError> {
        if depth > self.bound {
            return Err(SpraigeError::DepthExceeded(self.bound));
        }
        let a = self.t.subtree(path).expect("node exists").root_color();
        let b = self.u.subtree(path).expect("node exists").root_color();
        match (a, b) {
            (None, None) => return Ok(()),
            (None, Some(c)) => self.expand_left(path, c),
            (Some(c), None) => self.expand_right(path, c),
            (Some(c), Some(d)) if c == d => {}
            (Some(_), Some(d)) => {
                self.force(path, d, depth)?;
            }
        }
        self.children(path, depth, State::unify_at)
    }

    /// Makes the left node at `path` carry root color `d`.
    fn force(&mut self, path: &mut Path, d: Color, depth: usize) -> Result<(), SpraigeError> {
        if depth > self.bound {
            return Err(SpraigeError::DepthExceeded(self.bound));
        }
        match self.t.subtree(path).expect("node exists").root_color() {
            None => {
                self.expand_left(path, d);
                Ok(())
            }
            Some(c) if c == d => Ok(()),
            Some(_) => {
                for side in [false, true] {
                    path.push(side);
                    let r = self.force(path, d, depth + 1);
                    path.pop();
                    r?;
                }
                let node = self.t.subtree(path).expect("node exists");
                let (_, _, swapped, _) = exchange_node(node).expect("children were forced");
                *self.t.subtree_mut(path).expect("node exists") = swapped;
                self.left.push(UnifyStep::RootExchange { path: path.clone() });
                Ok(())
            }
        }
    }
}

/// Product without the final reduction pass. `σ` sits on top of `τ`.
pub fn multiply_raw(sigma: &Spraige, tau: &Spraige) -> Result<Spraige, SpraigeError> {
    if sigma.colors != tau.colors {
        return Err(SpraigeError::ColorMismatch(sigma.colors, tau.colors));
    }
    if sigma.feet() != tau.heads() {
        return Err(SpraigeError::InterfaceMismatch { feet: sigma.feet(), heads: tau.heads() });
    }
    let mut s = sigma.clone();
    let mut t = tau.clone();
    for j in 0..s.feet() {
        let un = unify(s.f_plus.tree(j), t.f_minus.tree(j), DEFAULT_DEPTH_BOUND)?;
        for step in &un.left {
            let base = s.f_plus.leaf_start(j);
            s = match step {
                UnifyStep::Expand { leaf, color } => s.expand_bottom(base + leaf + 1, *color)?,
                UnifyStep::RootExchange { path } => s.root_exchange(Side::Plus, j + 1, path)?,
            };
        }
        for step in &un.right {
            let base = t.f_minus.leaf_start(j);
            t = match step {
                UnifyStep::Expand { leaf, color } => t.expand(base + leaf + 1, *color)?,
                UnifyStep::RootExchange { .. } => unreachable!("the right tree is only expanded"),
            };
        }
    }
    debug_assert_eq!(s.f_plus, t.f_minus);
    let braid = s.braid.compose(&t.braid)?;
    Ok(Spraige { colors: s.colors, f_minus: s.f_minus, braid, f_plus: t.f_plus })
}

/// `σ ∗ τ`, reduced.
pub fn multiply(sigma: &Spraige, tau: &Spraige) -> Result<Spraige, SpraigeError> {
    Ok(multiply_raw(sigma, tau)?.reduce_fully())
}
