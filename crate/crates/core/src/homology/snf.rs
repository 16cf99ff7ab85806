//! Elementary divisors of integer matrices.
//!
//! Unit pivots are eliminated first on a sparse representation (boundary
//! matrices are mostly ±1), and the small remainder goes through a dense
//! Smith normal form. Arithmetic runs in checked `i64` and restarts with big
//! integers on overflow.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Ring: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_cmp_key(&self) -> BigInt;
    fn abs(&self) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    /// Truncating quotient.
    fn quot(&self, o: &Self) -> Self;
    fn divides(&self, o: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_cmp_key(&self) -> BigInt {
        num_traits::Signed::abs(&BigInt::from(*self))
    }
    fn abs(&self) -> Self {
        i64::abs(*self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        o % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        Signed::abs(self).is_one()
    }
    fn abs_cmp_key(&self) -> BigInt {
        Signed::abs(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        o.is_multiple_of(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// A sparse integer matrix given by rows of `(column, value)` entries.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    pub rows: Vec<Vec<(usize, i64)>>,
    pub cols: usize,
}

/// Nonzero elementary divisors (absolute values, each dividing the next).
/// Their count is the rank.
pub fn elementary_divisors(m: &SparseMatrix) -> Vec<BigInt> {
    if let Some(d) = divisors_in::<i64>(m) {
        return d;
    }
    divisors_in::<BigInt>(m).expect("big integers do not overflow")
}

fn divisors_in<T: Ring>(m: &SparseMatrix) -> Option<Vec<BigInt>> {
    let mut rows: Vec<Vec<(usize, T)>> = m
        .rows
        .iter()
        .map(|r| r.iter().filter(|(_, v)| *v != 0).map(|&(c, v)| (c, T::from_i64(v))).collect())
        .collect();
    for r in &mut rows {
        r.sort_by_key(|e| e.0);
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c].insert(i);
        }
    }
    let mut alive: BTreeSet<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut units = 0usize;
    loop {
        // shortest live row holding a unit; its unit in the sparsest column
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for &i in &alive {
            let len = rows[i].len();
            if best.is_some_and(|b| b.0 <= len) {
                continue;
            }
            for (c, v) in &rows[i] {
                if v.is_unit() {
                    let cnt = col_rows[*c].len();
                    if best.is_none_or(|b| (len, cnt) < (b.0, b.1)) {
                        best = Some((len, cnt, i, *c));
                    }
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        alive.remove(&pr);
        for &(c, _) in &pivot_row {
            col_rows[c].remove(&pr);
        }
        let pv = pivot_row.iter().find(|e| e.0 == pc).expect("pivot present").1.clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for k in targets {
            let a = rows[k].iter().find(|e| e.0 == pc).expect("indexed").1.clone();
            // pv = ±1, so a * pv is the exact multiplier
            let factor = a.mul(&pv)?;
            let old = std::mem::take(&mut rows[k]);
            for &(c, _) in &old {
                col_rows[c].remove(&k);
            }
            let new = axpy(&old, &pivot_row, &factor)?;
            for &(c, _) in &new {
                col_rows[c].insert(k);
            }
            if new.is_empty() {
                alive.remove(&k);
            }
            rows[k] = new;
        }
        units += 1;
    }
    // dense remainder
    let live: Vec<usize> = alive.iter().copied().filter(|&i| !rows[i].is_empty()).collect();
    let cols: BTreeSet<usize> = live.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let mut dense = vec![vec![T::zero(); cols.len()]; live.len()];
    for (ri, &i) in live.iter().enumerate() {
        for (c, v) in &rows[i] {
            let ci = cols.binary_search(c).expect("collected");
            dense[ri][ci] = v.clone();
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_snf(dense)?);
    Some(out)
}

/// `x - f·y` on sorted sparse rows.
fn axpy<T: Ring>(x: &[(usize, T)], y: &[(usize, T)], f: &T) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (c, v) = if take_x {
            i += 1;
            (x[i - 1].0, x[i - 1].1.clone())
        } else if take_y {
            j += 1;
            (y[j - 1].0, T::zero().sub(&f.mul(&y[j - 1].1)?)?)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, x[i - 1].1.sub(&f.mul(&y[j - 1].1)?)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn dense_snf<T: Ring>(mut a: Vec<Vec<T>>) -> Option<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() {
                    let k = v.abs_cmp_key();
                    if best.as_ref().is_none_or(|b| k < b.0) {
                        best = Some((k, i, j));
                    }
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].quot(&p);
                    for j in t..n {
                        let v = a[i][j].sub(&q.mul(&a[t][j])?)?;
                        a[i][j] = v;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].quot(&p);
                    for i in t..m {
                        let v = a[i][j].sub(&q.mul(&a[i][t])?)?;
                        a[i][j] = v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a smaller remainder sits in row or column t; move it to the pivot
                let mut best: Option<(BigInt, usize, usize)> = None;
                for i in t..m {
                    if !a[i][t].is_zero() {
                        let k = a[i][t].abs_cmp_key();
                        if best.as_ref().is_none_or(|b| k < b.0) {
                            best = Some((k, i, t));
                        }
                    }
                }
                for j in t..n {
                    if !a[t][j].is_zero() {
                        let k = a[t][j].abs_cmp_key();
                        if best.as_ref().is_none_or(|b| k < b.0) {
                            best = Some((k, t, j));
                        }
                    }
                }
                let (_, bi, bj) = best.expect("pivot nonzero");
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // the pivot must divide everything left
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(&a[i][j])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[t][j].add(&a[i][j])?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs().to_big());
        t += 1;
    }
    out.sort();
    Some(out)
}

/// Convenience for tests: divisors of a small dense matrix.
pub fn dense_divisors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let cols = rows.first().map_or(0, |r| r.len());
    let sparse = SparseMatrix {
        rows: rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
            .collect(),
        cols,
    };
    elementary_divisors(&sparse)
}
