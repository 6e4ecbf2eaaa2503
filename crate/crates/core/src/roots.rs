//! Positive roots of a simply-laced Dynkin diagram by closing the simple roots
//! under simple reflections. Used as an oracle independent of the
//! Auslander–Reiten knitting in [`crate::indec`].

use std::collections::BTreeSet;

use crate::quiver::DynkinType;

pub fn positive_roots(t: DynkinType) -> Vec<Vec<usize>> {
    let n = t.rank;
    let mut adj = vec![Vec::new(); n];
    for (a, b) in t.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let simple = |i: usize| {
        let mut r = vec![0i64; n];
        r[i] = 1;
        r
    };
    let mut seen: BTreeSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut todo: Vec<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(r) = todo.pop() {
        for i in 0..n {
            // s_i(r) = r - <r, α_i> α_i with <r, α_i> = 2 r_i - Σ_{j ~ i} r_j.
            let pairing = 2 * r[i] - adj[i].iter().map(|&j| r[j]).sum::<i64>();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && seen.insert(s.clone()) {
                todo.push(s);
            }
        }
    }
    seen.into_iter().map(|r| r.into_iter().map(|c| c as usize).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalogue;

    #[test]
    fn counts() {
        for t in catalogue() {
            assert_eq!(positive_roots(t).len(), t.positive_root_count(), "{t}");
        }
    }
}
