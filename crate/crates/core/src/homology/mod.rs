//! Finite simplicial complexes and their reduced integral homology.

mod graph;
pub mod snf;

pub use graph::{Edge, GraphError, Multigraph};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::forest::{open_interval, ColoredForest, ForestError, Partition};
use snf::{elementary_divisors, SparseMatrix};

pub type Simplex = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("simplex {0:?} is not in the complex")]
    NotASimplex(Simplex),
    #[error("vertex {0} outside the vertex range")]
    BadVertex(u32),
    #[error("the trivial forest has no interval")]
    TrivialForest,
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// A face-closed set of simplices on vertices `0..vertex_count`. Simplices
/// are sorted vertex lists; `faces[d]` holds the `d`-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty(vertex_count: usize) -> Self {
        SimplicialComplex { vertex_count, faces: Vec::new() }
    }

    /// Closure of the given simplices under taking faces.
    pub fn from_facets(vertex_count: usize, facets: impl IntoIterator<Item = Simplex>) -> Result<Self, ComplexError> {
        let mut x = SimplicialComplex::empty(vertex_count);
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(ComplexError::BadVertex(v));
            }
            x.insert_closed(&f);
        }
        Ok(x)
    }

    fn insert_closed(&mut self, f: &[u32]) {
        if f.is_empty() || self.contains(f) {
            return;
        }
        let d = f.len() - 1;
        while self.faces.len() <= d {
            self.faces.push(BTreeSet::new());
        }
        self.faces[d].insert(f.to_vec());
        for skip in 0..f.len() {
            let face: Simplex = f.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
            self.insert_closed(&face);
        }
    }

    /// The full simplex on `n` vertices.
    pub fn full_simplex(n: usize) -> Self {
        SimplicialComplex::from_facets(n, [(0..n as u32).collect()]).expect("vertices in range")
    }

    /// `n` isolated points.
    pub fn points(n: usize) -> Self {
        SimplicialComplex::from_facets(n, (0..n as u32).map(|v| vec![v])).expect("vertices in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_empty(&self) -> bool {
        self.faces.iter().all(|s| s.is_empty())
    }

    /// Dimension, `-1` when empty.
    pub fn dim(&self) -> isize {
        self.faces.iter().rposition(|s| !s.is_empty()).map_or(-1, |d| d as isize)
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        if s.is_empty() {
            return true;
        }
        self.faces.get(s.len() - 1).is_some_and(|f| f.contains(s))
    }

    pub fn simplices(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.faces.get(d).into_iter().flatten()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    /// Simplex counts by dimension, starting at dimension 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = (self.dim() + 1) as usize;
        self.faces[..d].iter().map(|s| s.len()).collect()
    }

    /// Alternating simplex count `Σ (-1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, layer) in self.faces.iter().enumerate() {
            for s in layer {
                let covered = self.faces.get(d + 1).is_some_and(|up| {
                    up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Connected components of the vertices that occur in the complex.
    pub fn components(&self) -> usize {
        let verts: Vec<u32> = self.simplices(0).map(|s| s[0]).collect();
        let mut parent: HashMap<u32, u32> = verts.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut HashMap<u32, u32>, mut x: u32) -> u32 {
            while p[&x] != x {
                let up = p[&p[&x]];
                p.insert(x, up);
                x = up;
            }
            x
        }
        let mut comps = verts.len();
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent.insert(a, b);
                comps -= 1;
            }
        }
        comps
    }

    /// Join with the vertices of `y` shifted past those of `self`.
    pub fn join(&self, y: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.vertex_count as u32;
        let left: Vec<&[u32]> = std::iter::once(&[][..]).chain(self.all_simplices().map(|s| s.as_slice())).collect();
        let right: Vec<Simplex> = std::iter::once(Vec::new())
            .chain(y.all_simplices().map(|s| s.iter().map(|v| v + shift).collect()))
            .collect();
        let mut out = SimplicialComplex::empty(self.vertex_count + y.vertex_count);
        for a in &left {
            for b in &right {
                if a.is_empty() && b.is_empty() {
                    continue;
                }
                let mut s = a.to_vec();
                s.extend_from_slice(b);
                let d = s.len() - 1;
                while out.faces.len() <= d {
                    out.faces.push(BTreeSet::new());
                }
                out.faces[d].insert(s);
            }
        }
        out
    }

    /// `{τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}`.
    pub fn link(&self, sigma: &[u32]) -> Result<SimplicialComplex, ComplexError> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.contains(&sigma) {
            return Err(ComplexError::NotASimplex(sigma));
        }
        let mut out = SimplicialComplex::empty(self.vertex_count);
        for s in self.all_simplices() {
            if !sigma.iter().all(|v| s.binary_search(v).is_ok()) || s.len() == sigma.len() {
                continue;
            }
            let t: Simplex = s.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect();
            let d = t.len() - 1;
            while out.faces.len() <= d {
                out.faces.push(BTreeSet::new());
            }
            out.faces[d].insert(t);
        }
        Ok(out)
    }

    /// Deletes `delta` together with every simplex containing it.
    pub fn remove_open_simplex(&self, delta: &[u32]) -> Result<SimplicialComplex, ComplexError> {
        let mut delta = delta.to_vec();
        delta.sort_unstable();
        if delta.is_empty() || !self.contains(&delta) {
            return Err(ComplexError::NotASimplex(delta));
        }
        let mut out = self.clone();
        for layer in out.faces.iter_mut() {
            layer.retain(|s| !delta.iter().all(|v| s.binary_search(v).is_ok()));
        }
        Ok(out)
    }

    /// Boundary matrix `C_d → C_{d-1}` as rows indexed by `d`-simplices;
    /// `d = 0` maps onto the augmentation `C_{-1} = ℤ`.
    fn boundary(&self, d: usize) -> SparseMatrix {
        if d == 0 {
            return SparseMatrix { rows: self.simplices(0).map(|_| vec![(0, 1)]).collect(), cols: 1 };
        }
        let index: HashMap<&Simplex, usize> = self.simplices(d - 1).enumerate().map(|(i, s)| (s, i)).collect();
        let rows = self
            .simplices(d)
            .map(|s| {
                let mut row: Vec<(usize, i64)> = (0..s.len())
                    .map(|k| {
                        let face: Simplex = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                        (index[&face], if k % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        SparseMatrix { rows, cols: index.len() }
    }

    fn count(&self, d: isize) -> usize {
        match d {
            -1 => 1,
            d if d < -1 => 0,
            d => self.faces.get(d as usize).map_or(0, |s| s.len()),
        }
    }
}

/// One reduced homology group `ℤ^betti ⊕ ⊕ ℤ/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(format!("Z^{}", self.betti));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reduced homology in degrees `-1..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub groups: Vec<(isize, HomologyGroup)>,
}

impl HomologyReport {
    pub fn degree(&self, d: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|(k, _)| *k == d).map(|(_, g)| g)
    }

    pub fn betti(&self, d: isize) -> usize {
        self.degree(d).map_or(0, |g| g.betti)
    }

    /// `Σ (-1)^d rank H̃_d`, equal to the reduced Euler characteristic
    /// when the report covers every degree.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(d, g)| if d.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// `H̃_i = 0` for all `i` in `lo..=hi`.
    pub fn vanishes(&self, lo: isize, hi: isize) -> bool {
        (lo..=hi).all(|d| self.degree(d).is_none_or(|g| g.is_zero()))
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, g) in &self.groups {
            if *d == -1 && g.is_zero() {
                continue;
            }
            writeln!(f, "H~_{d} = {g}")?;
        }
        Ok(())
    }
}

/// Exact reduced integral homology in degrees `-1..=max_degree`.
pub fn reduced_homology(x: &SimplicialComplex, max_degree: usize) -> HomologyReport {
    let top = max_degree as isize;
    // divisors[d + 1] holds the elementary divisors of ∂_d, for d = 0..=top+1
    let divisors: Vec<Vec<BigInt>> = (0..=max_degree + 1)
        .map(|d| if x.count(d as isize) == 0 { Vec::new() } else { elementary_divisors(&x.boundary(d)) })
        .collect();
    let rank = |d: isize| -> usize { if d < 0 { 0 } else { divisors[d as usize].len() } };
    let mut groups = Vec::new();
    for d in -1..=top {
        let betti = x.count(d) - rank(d) - rank(d + 1);
        let torsion = divisors[(d + 1) as usize].iter().filter(|v| !v.is_one()).cloned().collect();
        groups.push((d, HomologyGroup { betti, torsion }));
    }
    HomologyReport { groups }
}

/// Simplices are the sets of pairwise disjoint edges; vertex `k` of the
/// complex is edge `k` of the graph.
pub fn matching_complex(g: &Multigraph) -> SimplicialComplex {
    let edges = g.edges();
    let mut out = SimplicialComplex::empty(edges.len());
    let mut stack: Vec<u32> = Vec::new();
    fn grow(edges: &[Edge], start: usize, stack: &mut Vec<u32>, out: &mut SimplicialComplex) {
        for k in start..edges.len() {
            if stack.iter().any(|&j| edges[j as usize].shares_endpoint(&edges[k])) {
                continue;
            }
            stack.push(k as u32);
            let d = stack.len() - 1;
            while out.faces.len() <= d {
                out.faces.push(BTreeSet::new());
            }
            out.faces[d].insert(stack.clone());
            grow(edges, k + 1, stack, out);
            stack.pop();
        }
    }
    grow(edges, 0, &mut stack, &mut out);
    out
}

/// Outcome of a homological connectivity check. It certifies nonemptiness,
/// path-connectivity and vanishing homology, never higher homotopy groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub k: isize,
    pub nonempty: bool,
    pub components: usize,
    /// Degrees in `1..=k` with nonzero reduced homology.
    pub nonzero_degrees: Vec<isize>,
}

impl ConnectivityReport {
    pub fn passed(&self) -> bool {
        self.nonempty && (self.k < 0 || self.components == 1) && self.nonzero_degrees.is_empty()
    }
}

impl fmt::Display for ConnectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{verdict}: {}-acyclic + connected check (nonempty={}, components={}",
            self.k, self.nonempty, self.components
        )?;
        if !self.nonzero_degrees.is_empty() {
            write!(f, ", nonzero H~ in degrees {:?}", self.nonzero_degrees)?;
        }
        write!(f, ")")
    }
}

pub fn connectivity_report(x: &SimplicialComplex, k: isize) -> ConnectivityReport {
    let nonempty = !x.is_empty();
    let components = x.components();
    let mut nonzero_degrees = Vec::new();
    if k >= 1 {
        let h = reduced_homology(x, k as usize);
        nonzero_degrees = (1..=k).filter(|&d| !h.vanishes(d, d)).collect();
    }
    ConnectivityReport { k, nonempty, components, nonzero_degrees }
}

/// Order complex of a finite poset given by its strict order relation.
pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool) -> SimplicialComplex {
    let up: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| a != b && less(a, b)).collect()).collect();
    let mut out = SimplicialComplex::empty(n);
    fn chains(up: &[Vec<usize>], chain: &mut Vec<u32>, out: &mut SimplicialComplex) {
        let mut s = chain.clone();
        s.sort_unstable();
        let d = s.len() - 1;
        while out.faces.len() <= d {
            out.faces.push(BTreeSet::new());
        }
        out.faces[d].insert(s);
        let last = *chain.last().expect("nonempty chain") as usize;
        for &b in &up[last] {
            chain.push(b as u32);
            chains(up, chain, out);
            chain.pop();
        }
    }
    for a in 0..n {
        let mut chain = vec![a as u32];
        chains(&up, &mut chain, &mut out);
    }
    out
}

/// Order complex of the open interval between the trivial forest and `f`,
/// with its elements.
pub fn interval_order_complex(
    f: &ColoredForest,
    colors: usize,
) -> Result<(Vec<Partition>, SimplicialComplex), ComplexError> {
    if f.is_trivial() {
        return Err(ComplexError::TrivialForest);
    }
    let elems = open_interval(f, colors)?;
    let x = order_complex(elems.len(), |a, b| elems[a].realizably_refined_by(&elems[b]));
    Ok((elems, x))
}
