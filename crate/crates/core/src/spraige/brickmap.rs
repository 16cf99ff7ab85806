//! Unbraided diagrams and their meaning as piecewise dyadic-affine maps
//! between disjoint unions of unit cubes.

use crate::braid::Permutation;
use crate::forest::{Brick, ColoredForest};

/// A diagram with a permutation in place of the braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSpraige {
    pub colors: usize,
    pub f_minus: ColoredForest,
    pub perm: Permutation,
    pub f_plus: ColoredForest,
}

impl PermSpraige {
    pub fn new(colors: usize, f_minus: ColoredForest, perm: Permutation, f_plus: ColoredForest) -> Self {
        assert_eq!(f_minus.leaves(), perm.size());
        assert_eq!(f_plus.leaves(), perm.size());
        PermSpraige { colors, f_minus, perm, f_plus }
    }

    pub fn identity(n: usize, colors: usize) -> Self {
        PermSpraige::new(colors, ColoredForest::trivial(n), Permutation::identity(n), ColoredForest::trivial(n))
    }

    /// Leaf brick `i` of `F−` goes to the brick of leaf `ρ(i)` of `F+`.
    pub fn brick_map(&self) -> BrickMap {
        let dom = self.f_minus.bricks(self.colors).expect("colors checked on construction");
        let ran = self.f_plus.bricks(self.colors).expect("colors checked on construction");
        let pieces = dom
            .into_iter()
            .enumerate()
            .map(|(i, d)| (d, ran[self.perm.apply(i)].clone()))
            .collect();
        BrickMap { colors: self.colors, heads: self.f_minus.roots(), feet: self.f_plus.roots(), pieces }
    }

    pub fn sv_equal(&self, other: &PermSpraige) -> bool {
        self.brick_map().equivalent(&other.brick_map())
    }
}

/// A bijection from `heads` unit cubes to `feet` unit cubes, given by
/// pieces `domain ↦ image`, each a translation and per-axis dyadic scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickMap {
    pub colors: usize,
    pub heads: usize,
    pub feet: usize,
    pub pieces: Vec<(Brick, Brick)>,
}

impl BrickMap {
    pub fn identity(n: usize, colors: usize) -> Self {
        PermSpraige::identity(n, colors).brick_map()
    }

    /// Image of a box lying inside one domain piece.
    pub fn image(&self, sub: &Brick) -> Option<Brick> {
        self.pieces
            .iter()
            .find(|(d, _)| d.contains(sub))
            .map(|(d, r)| r.at(&d.relative(sub)))
    }

    /// Preimage of a box lying inside one image piece.
    pub fn preimage(&self, sub: &Brick) -> Option<Brick> {
        self.pieces
            .iter()
            .find(|(_, r)| r.contains(sub))
            .map(|(d, r)| d.at(&r.relative(sub)))
    }

    /// Both maps agree everywhere.
    pub fn equivalent(&self, other: &BrickMap) -> bool {
        if (self.colors, self.heads, self.feet) != (other.colors, other.heads, other.feet) {
            return false;
        }
        for (d, r) in &self.pieces {
            for (e, s) in &other.pieces {
                let Some(both) = d.intersection(e) else { continue };
                if r.at(&d.relative(&both)) != s.at(&e.relative(&both)) {
                    return false;
                }
            }
        }
        true
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &BrickMap) -> BrickMap {
        assert_eq!(self.feet, next.heads, "maps do not compose");
        assert_eq!(self.colors, next.colors);
        let mut pieces = Vec::new();
        for (d, r) in &self.pieces {
            for (e, s) in &next.pieces {
                let Some(mid) = r.intersection(e) else { continue };
                pieces.push((d.at(&r.relative(&mid)), s.at(&e.relative(&mid))));
            }
        }
        BrickMap { colors: self.colors, heads: self.heads, feet: next.feet, pieces }
    }

    pub fn is_identity(&self) -> bool {
        self.heads == self.feet && self.equivalent(&BrickMap::identity(self.heads, self.colors))
    }

    /// Domain and image pieces each tile their cubes exactly once.
    pub fn is_bijection(&self) -> bool {
        let tiles = |bricks: Vec<&Brick>, cubes: usize| -> bool {
            for (k, a) in bricks.iter().enumerate() {
                if a.root >= cubes || bricks[k + 1..].iter().any(|b| a.meets(b)) {
                    return false;
                }
            }
            // total volume equals the number of cubes
            let top = bricks.iter().map(|b| b.total_level()).max().unwrap_or(0);
            let volume: u128 = bricks.iter().map(|b| 1u128 << (top - b.total_level())).sum();
            volume == (cubes as u128) << top
        };
        tiles(self.pieces.iter().map(|p| &p.0).collect(), self.heads)
            && tiles(self.pieces.iter().map(|p| &p.1).collect(), self.feet)
    }

    /// When the map is a single affine piece on every head cube, the image
    /// brick of each head; otherwise `None`.
    pub fn head_images(&self) -> Option<Vec<Brick>> {
        let mut out = Vec::with_capacity(self.heads);
        for root in 0..self.heads {
            let mut candidate: Option<Brick> = None;
            for (d, r) in self.pieces.iter().filter(|(d, _)| d.root == root) {
                let mut sides = Vec::with_capacity(self.colors);
                for (ds, rs) in d.sides.iter().zip(&r.sides) {
                    if rs.level < ds.level {
                        return None;
                    }
                    let shifted = rs.num.checked_sub(ds.num)?;
                    if shifted % (1u64 << ds.level) != 0 {
                        return None;
                    }
                    sides.push(crate::forest::Dyadic { num: shifted >> ds.level, level: rs.level - ds.level });
                }
                let whole = Brick { root: r.root, sides };
                match &candidate {
                    None => candidate = Some(whole),
                    Some(c) if *c == whole => {}
                    Some(_) => return None,
                }
            }
            out.push(candidate?);
        }
        Some(out)
    }
}
