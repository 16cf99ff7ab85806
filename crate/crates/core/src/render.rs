//! SVG drawings of diagrams: splits on top, the braid in the middle with a
//! gap in each under-strand, merges at the bottom. Output depends only on
//! the diagram, so reruns are byte-identical.

use std::fmt::Write;

use crate::forest::{ColoredForest, ColoredTree};
use crate::spraige::Spraige;

const DX: i64 = 40;
const DY: i64 = 30;
const MARGIN: i64 = 20;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn color_of(c: u32) -> &'static str {
    PALETTE[(c as usize - 1) % PALETTE.len()]
}

fn height(t: &ColoredTree) -> i64 {
    match t {
        ColoredTree::Leaf => 0,
        ColoredTree::Caret(_, l, r) => 1 + height(l).max(height(r)),
    }
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn line(&mut self, (x1, y1): (i64, i64), (x2, y2): (i64, i64), stroke: &str) {
        writeln!(
            self.body,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="2"/>"#
        )
        .expect("writing to a string");
    }

    fn dot(&mut self, (x, y): (i64, i64), fill: &str) {
        writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="3" fill="{fill}"/>"#).expect("writing to a string");
    }
}

/// Draws a tree whose leaves sit on `leaf_y`, growing toward its root in
/// direction `dir` (`-1` up, `1` down). Returns the root position.
fn draw_tree(cv: &mut Canvas, t: &ColoredTree, first_leaf: usize, leaf_y: i64, dir: i64) -> (i64, i64) {
    match t {
        ColoredTree::Leaf => (MARGIN + first_leaf as i64 * DX, leaf_y),
        ColoredTree::Caret(c, l, r) => {
            let a = draw_tree(cv, l, first_leaf, leaf_y, dir);
            let b = draw_tree(cv, r, first_leaf + l.leaves(), leaf_y, dir);
            let node = ((a.0 + b.0) / 2, leaf_y + dir * height(t) * DY);
            cv.line(node, a, color_of(*c));
            cv.line(node, b, color_of(*c));
            cv.dot(node, color_of(*c));
            node
        }
    }
}

/// Draws a forest and joins each root to the edge line `edge_y`.
fn draw_forest(cv: &mut Canvas, f: &ColoredForest, leaf_y: i64, edge_y: i64, dir: i64) {
    let mut leaf = 0;
    for t in f.trees() {
        let root = draw_tree(cv, t, leaf, leaf_y, dir);
        cv.line(root, (root.0, edge_y), "#000");
        leaf += t.leaves();
    }
}

pub fn svg(x: &Spraige) -> String {
    let n = x.leaves() as i64;
    let top = x.f_minus().trees().iter().map(height).max().unwrap_or(0);
    let bottom = x.f_plus().trees().iter().map(height).max().unwrap_or(0);
    let letters = x.braid().letters();
    let split_y = MARGIN + (top + 1) * DY;
    let braid_end = split_y + letters.len().max(1) as i64 * DY;
    let merge_y = braid_end + (bottom + 1) * DY;
    let width = 2 * MARGIN + (n - 1).max(0) * DX;
    let total = merge_y + MARGIN;
    let mut cv = Canvas { body: String::new() };
    draw_forest(&mut cv, x.f_minus(), split_y, MARGIN, -1);
    let xpos = |i: i64| MARGIN + i * DX;
    if letters.is_empty() {
        for i in 0..n {
            cv.line((xpos(i), split_y), (xpos(i), braid_end), "#000");
        }
    }
    for (row, &l) in letters.iter().enumerate() {
        let y0 = split_y + row as i64 * DY;
        let y1 = y0 + DY;
        let i = (l.unsigned_abs() - 1) as i64;
        for k in 0..n {
            if k != i && k != i + 1 {
                cv.line((xpos(k), y0), (xpos(k), y1), "#000");
            }
        }
        // the over strand leaves position i for a positive letter
        let (over_from, under_from) = if l > 0 { (i, i + 1) } else { (i + 1, i) };
        let (over_to, under_to) = (under_from, over_from);
        cv.line((xpos(over_from), y0), (xpos(over_to), y1), "#000");
        let (ux0, ux1) = (xpos(under_from), xpos(under_to));
        let gap = |t: i64| (ux0 + (ux1 - ux0) * t / 10, y0 + DY * t / 10);
        cv.line((ux0, y0), gap(3), "#000");
        cv.line(gap(7), (ux1, y1), "#000");
    }
    draw_forest(&mut cv, x.f_plus(), braid_end, merge_y + MARGIN / 2, 1);
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{total}\" viewBox=\"0 0 {width} {total}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n{}</svg>\n",
        cv.body
    )
}
