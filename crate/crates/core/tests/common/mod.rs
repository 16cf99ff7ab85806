//! Oracles shared by the integration tests.

use std::collections::HashMap;

/// Union-find over all freely reduced B_3 words of length ≤ `max`, merging
/// words related by one substitution of a relator fragment.
pub fn relator_classes(max: usize) -> (Vec<Vec<i32>>, Vec<usize>) {
    let gens = [1, -1, 2, -2];
    let mut words: Vec<Vec<i32>> = vec![vec![]];
    let mut frontier: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &gens {
                if w.last() == Some(&-g) {
                    continue;
                }
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<Vec<i32>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let base = [1, 2, 1, -2, -1, -2];
    let mut relators: Vec<Vec<i32>> = Vec::new();
    for r in [base.to_vec(), base.iter().rev().map(|g| -g).collect()] {
        for k in 0..r.len() {
            let mut rot = r[k..].to_vec();
            rot.extend_from_slice(&r[..k]);
            relators.push(rot);
        }
    }
    let reduce = |w: &[i32]| -> Vec<i32> {
        let mut s: Vec<i32> = Vec::new();
        for &g in w {
            if s.last() == Some(&-g) {
                s.pop();
            } else {
                s.push(g);
            }
        }
        s
    };
    for (wi, w) in words.iter().enumerate() {
        for r in &relators {
            // replace a prefix u of r appearing in w by the inverse of the rest
            for cut in 1..=r.len() {
                let u = &r[..cut];
                let repl: Vec<i32> = r[cut..].iter().rev().map(|g| -g).collect();
                if u.len() > w.len() {
                    continue;
                }
                for start in 0..=w.len() - u.len() {
                    if &w[start..start + u.len()] != u {
                        continue;
                    }
                    let mut v = w[..start].to_vec();
                    v.extend_from_slice(&repl);
                    v.extend_from_slice(&w[start + u.len()..]);
                    let v = reduce(&v);
                    if let Some(&vi) = index.get(&v) {
                        let (a, b) = (find(&mut parent, wi), find(&mut parent, vi));
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let roots = (0..words.len()).map(|i| find(&mut parent, i)).collect();
    (words, roots)
}
