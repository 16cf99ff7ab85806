//! Braid words in Artin generators, their permutations, strand cabling and
//! an exact equality test through the Dynnikov coordinate action.
//!
//! Strands are numbered by their position at the top of the braid. The
//! letter `g > 0` is `σ_g`: the strand in position `g` passes in front of
//! the strand in position `g + 1`. `g < 0` is the inverse crossing. Words are
//! read top to bottom, so in `a ∗ b` the braid `a` sits above `b`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("letter {letter} is not a generator of B_{strands}")]
    BadLetter { letter: i32, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("strand index {index} out of range 1..={strands}")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("cannot parse braid: {0}")]
    Parse(String),
}

/// A permutation of `{1..n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    /// 1-based constructor, handy for literals in tests.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length ≥ 2, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A word in the Artin generators of `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(BraidError::BadLetter { letter: g, strands });
            }
        }
        Ok(BraidWord { strands, word })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        BraidWord { strands, word: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Cancels adjacent `g, -g` pairs until none remain.
    pub fn freely_reduced(&self) -> BraidWord {
        let mut stack: Vec<i32> = Vec::with_capacity(self.word.len());
        for &g in &self.word {
            if stack.last() == Some(&-g) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        BraidWord { strands: self.strands, word: stack }
    }

    /// `self` stacked above `other`, freely reduced.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(BraidWord { strands: self.strands, word }.freely_reduced())
    }

    /// Concatenation without free reduction.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        debug_assert_eq!(self.strands, other.strands);
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        BraidWord { strands: self.strands, word }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            word: self.word.iter().rev().map(|g| -g).collect(),
        }
    }

    /// `ρ_b`: the 0-based image of `i` is the bottom position of the strand
    /// that starts at top position `i`.
    pub fn permutation(&self) -> Permutation {
        // at[p] = strand currently in position p
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let j = g.unsigned_abs() as usize;
            at.swap(j - 1, j);
        }
        let mut images = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation { images }
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Replaces the strand starting at top position `i` (1-based) by two
    /// parallel strands. Crossings with the doubled strand become pairs of
    /// crossings of the same sign; every other letter is re-indexed.
    pub fn double_strand(&self, i: usize) -> Result<BraidWord, BraidError> {
        if i == 0 || i > self.strands {
            return Err(BraidError::IndexOutOfRange { index: i, strands: self.strands });
        }
        // 1-based position of the left strand of the cable
        let mut p = i;
        let mut word = Vec::with_capacity(self.word.len() * 2);
        for &g in &self.word {
            let j = g.unsigned_abs() as usize;
            let e = g.signum();
            if j + 1 == p {
                // the strand left of the cable crosses both cable strands
                word.push(e * j as i32);
                word.push(e * (j + 1) as i32);
                p -= 1;
            } else if j == p {
                // the cable crosses the strand to its right, right cable strand first
                word.push(e * (j + 1) as i32);
                word.push(e * j as i32);
                p += 1;
            } else if j + 1 < p {
                word.push(g);
            } else {
                word.push(e * (j + 1) as i32);
            }
        }
        Ok(BraidWord { strands: self.strands + 1, word })
    }

    /// Replaces strand `i` by `width` parallel strands.
    pub fn cable(&self, i: usize, width: usize) -> Result<BraidWord, BraidError> {
        assert!(width >= 1);
        let mut b = self.clone();
        for _ in 1..width {
            b = b.double_strand(i)?;
        }
        Ok(b)
    }

    /// Forgets the strand starting at top position `i` (1-based). Letters in
    /// which that strand takes part are deleted. Well defined on braids.
    pub fn remove_strand(&self, i: usize) -> Result<BraidWord, BraidError> {
        if i == 0 || i > self.strands {
            return Err(BraidError::IndexOutOfRange { index: i, strands: self.strands });
        }
        if self.strands == 1 {
            return Err(BraidError::NoStrands);
        }
        let mut f = i;
        let mut word = Vec::with_capacity(self.word.len());
        for &g in &self.word {
            let j = g.unsigned_abs() as usize;
            if j == f {
                f += 1;
            } else if j + 1 == f {
                f -= 1;
            } else if j > f {
                word.push(g.signum() * (j - 1) as i32);
            } else {
                word.push(g);
            }
        }
        Ok(BraidWord { strands: self.strands - 1, word })
    }

    /// Applies an Artin relation at letter `pos` if one matches there:
    /// far commutation `σ_i^e σ_j^f → σ_j^f σ_i^e`, or the braid relation on
    /// three equal-sign letters. Returns `None` when nothing applies.
    pub fn artin_rewrite_at(&self, pos: usize) -> Option<BraidWord> {
        let w = &self.word;
        if pos + 1 < w.len() {
            let (a, b) = (w[pos], w[pos + 1]);
            if (a.abs() - b.abs()).abs() >= 2 {
                let mut word = w.clone();
                word.swap(pos, pos + 1);
                return Some(BraidWord { strands: self.strands, word });
            }
        }
        if pos + 2 < w.len() {
            let (a, b, c) = (w[pos], w[pos + 1], w[pos + 2]);
            if a == c && a.signum() == b.signum() && (a.abs() - b.abs()).abs() == 1 {
                let mut word = w.clone();
                word[pos] = b;
                word[pos + 1] = a;
                word[pos + 2] = b;
                return Some(BraidWord { strands: self.strands, word });
            }
        }
        None
    }

    /// True iff `self` and `other` are the same element of `B_n`.
    pub fn equal(&self, other: &BraidWord) -> Result<bool, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        if self.permutation() != other.permutation() {
            return Ok(false);
        }
        let w = self.concat(&other.inverse()).freely_reduced();
        Ok(is_trivial(&w))
    }

    pub fn is_trivial(&self) -> bool {
        is_trivial(&self.freely_reduced())
    }

    /// Dynnikov coordinates of the image of the standard curve system.
    pub fn dynnikov_coordinates(&self) -> Vec<BigInt> {
        match act::<i128>(self) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => act::<BigInt>(self).expect("big integers do not overflow"),
        }
    }
}

fn is_trivial(w: &BraidWord) -> bool {
    if w.is_empty() {
        return true;
    }
    if !w.is_pure() {
        return false;
    }
    let start = standard_coordinates::<i128>(w.strands);
    match act::<i128>(w) {
        Some(v) => v == start,
        None => act::<BigInt>(w).expect("big integers do not overflow") == standard_coordinates::<BigInt>(w.strands),
    }
}

/// Integer type usable for the coordinate action; `None` signals overflow.
trait Coord: Clone + Ord + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
}

impl Coord for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
}

impl Coord for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
}

fn pos<T: Coord>(x: &T) -> T {
    if *x > T::zero() {
        x.clone()
    } else {
        T::zero()
    }
}

fn neg<T: Coord>(x: &T) -> T {
    if *x < T::zero() {
        x.clone()
    } else {
        T::zero()
    }
}

fn standard_coordinates<T: Coord>(strands: usize) -> Vec<T> {
    (0..strands).flat_map(|_| [T::zero(), T::one()]).collect()
}

fn act<T: Coord>(w: &BraidWord) -> Option<Vec<T>> {
    let mut v = standard_coordinates::<T>(w.strands);
    for &g in w.letters() {
        let k = 2 * (g.unsigned_abs() as usize - 1);
        let (x1, y1, x2, y2) = (&v[k], &v[k + 1], &v[k + 2], &v[k + 3]);
        let out = if g > 0 {
            let z = x1.sub(&neg(y1))?.sub(x2)?.add(&pos(y2))?;
            [
                x1.add(&pos(y1))?.add(&pos(&pos(y2).sub(&z)?))?,
                y2.sub(&pos(&z))?,
                x2.add(&neg(y2))?.add(&neg(&neg(y1).add(&z)?))?,
                y1.add(&pos(&z))?,
            ]
        } else {
            let z = x1.add(&neg(y1))?.sub(x2)?.sub(&pos(y2))?;
            [
                x1.sub(&pos(y1))?.sub(&pos(&pos(y2).add(&z)?))?,
                y2.add(&neg(&z))?,
                x2.sub(&neg(y2))?.sub(&neg(&neg(y1).sub(&z)?))?,
                y1.sub(&neg(&z))?,
            ]
        };
        for (slot, val) in v[k..k + 4].iter_mut().zip(out) {
            *slot = val;
        }
    }
    Some(v)
}

/// Word in which a block of `left` strands starting at 0-based position
/// `offset` crosses a block of `right` strands to its right. With `sign > 0`
/// the left block passes in front.
pub fn block_cross(strands: usize, offset: usize, left: usize, right: usize, sign: i32) -> BraidWord {
    assert!(offset + left + right <= strands);
    let mut word = Vec::with_capacity(left * right);
    for k in (0..left).rev() {
        for j in 0..right {
            word.push(sign * (offset + k + j + 1) as i32);
        }
    }
    BraidWord { strands, word }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}: ", self.strands)?;
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let rest = s
            .strip_prefix('B')
            .ok_or_else(|| BraidError::Parse(format!("expected `B<n>:` prefix in {s:?}")))?;
        let (n, letters) = rest
            .split_once(':')
            .ok_or_else(|| BraidError::Parse(format!("missing `:` in {s:?}")))?;
        let strands: usize = n
            .trim()
            .parse()
            .map_err(|_| BraidError::Parse(format!("bad strand count {n:?}")))?;
        let letters = letters.trim();
        let word = if letters == "e" || letters.is_empty() {
            Vec::new()
        } else {
            letters
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|_| BraidError::Parse(format!("bad letter {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        BraidWord::new(strands, word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(n: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(n, w.to_vec()).unwrap()
    }

    #[test]
    fn compose_cancels_and_concatenates() {
        assert!(bw(2, &[1]).compose(&bw(2, &[-1])).unwrap().is_empty());
        assert_eq!(bw(3, &[1]).compose(&bw(3, &[2])).unwrap().letters(), &[1, 2]);
        assert!(matches!(
            bw(3, &[1]).compose(&bw(2, &[])),
            Err(BraidError::StrandMismatch(3, 2))
        ));
    }

    #[test]
    fn permutation_follows_strands() {
        // σ1σ2: strand 1 ends in position 3, strand 2 in 1, strand 3 in 2
        let p = bw(3, &[1, 2]).permutation();
        assert_eq!(p, Permutation::from_one_based(&[3, 1, 2]).unwrap());
        assert_eq!(p.cycles(), vec![vec![1, 3, 2]]);
        assert_eq!(bw(2, &[1]).permutation(), Permutation::transposition(2, 1, 2));
        assert!(bw(4, &[]).permutation().is_identity());
        assert_eq!(bw(3, &[1, -1, 2]).permutation(), Permutation::transposition(3, 2, 3));
    }

    #[test]
    fn inverse_reverses_and_negates() {
        assert_eq!(bw(3, &[1, 2]).inverse().letters(), &[-2, -1]);
        assert!(bw(3, &[]).inverse().is_empty());
    }

    #[test]
    fn artin_relations_hold() {
        assert!(bw(3, &[1, 2, 1]).equal(&bw(3, &[2, 1, 2])).unwrap());
        assert!(bw(4, &[1, 3]).equal(&bw(4, &[3, 1])).unwrap());
        assert!(!bw(2, &[1]).equal(&bw(2, &[-1])).unwrap());
        assert!(!bw(2, &[1, 1]).equal(&bw(2, &[])).unwrap());
        assert!(bw(3, &[1, 2, -1]).equal(&bw(3, &[-2, 1, 2])).unwrap());
    }

    #[test]
    fn full_twist_is_central_but_nontrivial() {
        let delta2 = bw(3, &[1, 2, 1, 1, 2, 1]);
        assert!(delta2.is_pure());
        assert!(!delta2.is_trivial());
        let a = bw(3, &[1, -2]);
        let lhs = delta2.compose(&a).unwrap();
        let rhs = a.compose(&delta2).unwrap();
        assert!(lhs.equal(&rhs).unwrap());
    }

    #[test]
    fn pure_braids() {
        assert!(bw(2, &[1, 1]).is_pure());
        assert!(!bw(2, &[1]).is_pure());
        // [σ1, σ2] = σ1σ2σ1⁻¹σ2⁻¹ has permutation (1 3), not pure
        assert!(!bw(3, &[1, 2, -1, -2]).is_pure());
    }

    #[test]
    fn doubling_rules() {
        assert!(BraidWord::identity(1).double_strand(1).unwrap().is_empty());
        assert_eq!(BraidWord::identity(1).double_strand(1).unwrap().strands(), 2);
        // cable {1,2} passes over strand 3
        let d = bw(2, &[1]).double_strand(1).unwrap();
        assert_eq!(d.letters(), &[2, 1]);
        assert!(d.equal(&bw(3, &[2, 1])).unwrap());
        assert!(!d.equal(&bw(3, &[1, 2])).unwrap());
        // strand 1 passes over the cable {2,3}
        assert_eq!(bw(2, &[1]).double_strand(2).unwrap().letters(), &[1, 2]);
        assert!(matches!(bw(2, &[1]).double_strand(3), Err(BraidError::IndexOutOfRange { .. })));
    }

    #[test]
    fn remove_strand_undoes_doubling() {
        let b = bw(4, &[1, -2, 3, 2, -1]);
        for i in 1..=4 {
            let d = b.double_strand(i).unwrap();
            assert_eq!(d.remove_strand(i + 1).unwrap(), b);
            assert_eq!(d.remove_strand(i).unwrap(), b);
        }
    }

    #[test]
    fn block_cross_matches_cabling() {
        // a 2-cable crossing over one strand is the doubled σ1
        let w = block_cross(3, 0, 2, 1, 1);
        assert!(w.equal(&bw(2, &[1]).double_strand(1).unwrap()).unwrap());
        let w = block_cross(5, 1, 2, 2, -1);
        assert!(w.equal(&bw(3, &[-2]).cable(2, 2).unwrap().cable(4, 2).unwrap()).unwrap());
    }

    #[test]
    fn text_form_round_trips() {
        let b: BraidWord = "B4: 1,-2,3".parse().unwrap();
        assert_eq!(b, bw(4, &[1, -2, 3]));
        assert_eq!(b.to_string(), "B4: 1,-2,3");
        let e: BraidWord = "B3: e".parse().unwrap();
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "B3: e");
        assert!("B2: 2".parse::<BraidWord>().is_err());
        assert!("4: 1".parse::<BraidWord>().is_err());
    }

    #[test]
    fn artin_rewrite_preserves_the_element() {
        let b = bw(4, &[1, 2, 1, 3, -1]);
        for pos in 0..b.len() {
            if let Some(r) = b.artin_rewrite_at(pos) {
                assert!(r.equal(&b).unwrap(), "rewrite at {pos} gave {r}");
            }
        }
        assert_eq!(b.artin_rewrite_at(0).unwrap().letters(), &[2, 1, 2, 3, -1]);
    }

    #[test]
    fn long_words_fall_back_to_big_integers() {
        let mut w = Vec::new();
        for _ in 0..200 {
            w.extend_from_slice(&[1, -2, 3]);
        }
        let b = bw(4, &w);
        let coords = b.dynnikov_coordinates();
        assert!(coords.iter().any(|c| c.bits() > 127));
        assert!(b.compose(&b.inverse()).unwrap().is_trivial());
        assert!(!b.is_trivial());
    }
}
