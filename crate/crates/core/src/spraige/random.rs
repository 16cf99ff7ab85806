//! Random trees, braids and diagrams for property tests and sweeps.

use rand::Rng;

use crate::braid::BraidWord;
use crate::forest::{Color, ColoredForest, ColoredTree};

use super::Spraige;

/// A tree of depth at most `max_depth`; each node splits with probability `p`.
pub fn tree<R: Rng>(rng: &mut R, colors: usize, max_depth: usize, p: f64) -> ColoredTree {
    if max_depth == 0 || !rng.gen_bool(p) {
        return ColoredTree::Leaf;
    }
    let c = rng.gen_range(1..=colors as Color);
    ColoredTree::caret(c, tree(rng, colors, max_depth - 1, p), tree(rng, colors, max_depth - 1, p))
}

/// A tree with exactly `leaves` leaves and depth at most `max_depth`.
pub fn tree_with_leaves<R: Rng>(rng: &mut R, colors: usize, leaves: usize, max_depth: usize) -> ColoredTree {
    assert!(leaves >= 1 && leaves <= 1 << max_depth, "no tree with {leaves} leaves and depth {max_depth}");
    if leaves == 1 {
        return ColoredTree::Leaf;
    }
    let cap = 1usize << (max_depth - 1);
    let lo = leaves.saturating_sub(cap).max(1);
    let hi = (leaves - 1).min(cap);
    let left = rng.gen_range(lo..=hi);
    let c = rng.gen_range(1..=colors as Color);
    ColoredTree::caret(
        c,
        tree_with_leaves(rng, colors, left, max_depth - 1),
        tree_with_leaves(rng, colors, leaves - left, max_depth - 1),
    )
}

pub fn braid<R: Rng>(rng: &mut R, strands: usize, max_len: usize) -> BraidWord {
    if strands < 2 {
        return BraidWord::identity(strands.max(1));
    }
    let len = rng.gen_range(0..=max_len);
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, word).expect("letters in range")
}

/// A forest with exactly `leaves` leaves whose trees have depth at most
/// `max_depth`.
pub fn forest_with_leaves<R: Rng>(rng: &mut R, colors: usize, leaves: usize, max_depth: usize) -> ColoredForest {
    let cap = 1usize << max_depth;
    let mut sizes = Vec::new();
    let mut left = leaves;
    while left > 0 {
        let k = rng.gen_range(1..=left.min(cap));
        sizes.push(k);
        left -= k;
    }
    let trees = sizes.into_iter().map(|k| tree_with_leaves(rng, colors, k, max_depth)).collect();
    ColoredForest::new(trees).expect("at least one tree")
}

/// A diagram with `heads` heads, random splits and merges of depth at most
/// `max_depth`, and a braid of length at most `max_braid`.
pub fn spraige<R: Rng>(rng: &mut R, colors: usize, heads: usize, max_depth: usize, max_braid: usize) -> Spraige {
    let trees: Vec<ColoredTree> = (0..heads).map(|_| tree(rng, colors, max_depth, 0.5)).collect();
    let f_minus = ColoredForest::new(trees).expect("heads >= 1");
    let k = f_minus.leaves();
    let f_plus = forest_with_leaves(rng, colors, k, max_depth);
    Spraige::new(colors, f_minus, braid(rng, k, max_braid), f_plus).expect("leaf counts match")
}

/// A random element with one head and one foot.
pub fn element<R: Rng>(rng: &mut R, colors: usize, max_depth: usize, max_braid: usize) -> Spraige {
    let t = tree(rng, colors, max_depth, 0.6);
    let k = t.leaves();
    let u = tree_with_leaves(rng, colors, k, max_depth);
    Spraige::new(colors, ColoredForest::from_tree(t), braid(rng, k, max_braid), ColoredForest::from_tree(u))
        .expect("leaf counts match")
}
