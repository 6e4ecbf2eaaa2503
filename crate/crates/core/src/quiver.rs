//! Dynkin quivers and their orientation strings.
//!
//! Vertex numbering (1-based in labels, 0-based internally):
//!
//! * `A_n`: the chain `1 - 2 - ... - n`.
//! * `D_n` (n >= 4): the chain `1 - ... - (n-1)` with vertex `n` attached to `n-2`.
//! * `E_n` (n = 6, 7, 8): the chain `1 - ... - (n-1)` with vertex `n` attached to `3`.
//!
//! An orientation string lists chains of vertices joined by `>` (arrow to
//! the right) or `<` (arrow to the left), separated by commas, e.g.
//! `A3:1>2<3` or `D4:1>2>3,2<4`. Every edge of the diagram must be oriented
//! exactly once. Without an orientation every edge points from the smaller
//! to the larger label.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinType {
    pub kind: DynkinKind,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(kind: DynkinKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            DynkinKind::A => rank >= 1,
            DynkinKind::D => rank >= 4,
            DynkinKind::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { kind, rank })
        } else {
            Err(Error::UnknownQuiver(format!("{kind:?}{rank}")))
        }
    }

    /// Undirected edges in canonical order, 0-based, smaller endpoint first.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.kind {
            DynkinKind::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            DynkinKind::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinKind::E => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.kind, n) {
            (DynkinKind::A, _) => n * (n + 1) / 2,
            (DynkinKind::D, _) => n * (n - 1),
            (DynkinKind::E, 6) => 36,
            (DynkinKind::E, 7) => 63,
            (DynkinKind::E, _) => 120,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// A Dynkin quiver. Arrows are `(source, target)` pairs, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    dynkin: DynkinType,
    arrows: Vec<(usize, usize)>,
    /// `reach[u][v]`: there is a path from `u` to `v` (including `u == v`).
    reach: Vec<Vec<bool>>,
    /// `paths[u][v]`: the arrows of the unique path `u ~> v`, in application order.
    paths: Vec<Vec<Option<Vec<usize>>>>,
}

impl Quiver {
    /// Builds a quiver from a diagram and an orientation of each canonical edge
    /// (`true` = smaller label to larger label).
    pub fn new(dynkin: DynkinType, forward: &[bool]) -> Result<Self> {
        let edges = dynkin.edges();
        if forward.len() != edges.len() {
            return Err(Error::Orientation(format!(
                "{dynkin} has {} edges, got {} orientations",
                edges.len(),
                forward.len()
            )));
        }
        let arrows = edges
            .iter()
            .zip(forward)
            .map(|(&(a, b), &fw)| if fw { (a, b) } else { (b, a) })
            .collect();
        Ok(Self::from_arrows(dynkin, arrows))
    }

    fn from_arrows(dynkin: DynkinType, arrows: Vec<(usize, usize)>) -> Self {
        let n = dynkin.rank;
        let mut paths: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
        for u in 0..n {
            paths[u][u] = Some(Vec::new());
            let mut stack = vec![u];
            while let Some(x) = stack.pop() {
                for (a, &(s, t)) in arrows.iter().enumerate() {
                    if s == x && paths[u][t].is_none() {
                        let mut p = paths[u][x].clone().unwrap();
                        p.push(a);
                        paths[u][t] = Some(p);
                        stack.push(t);
                    }
                }
            }
        }
        let reach = paths.iter().map(|row| row.iter().map(Option::is_some).collect()).collect();
        Quiver { dynkin, arrows, reach, paths }
    }

    pub fn default_orientation(dynkin: DynkinType) -> Self {
        let forward = vec![true; dynkin.edges().len()];
        Self::new(dynkin, &forward).expect("edge count matches")
    }

    /// Parses labels such as `A2`, `A3:1>2<3` or `D4:1>2>3,2<4`.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let (ty, orient) = match label.split_once(':') {
            Some((t, o)) => (t.trim(), Some(o.trim())),
            None => (label, None),
        };
        let dynkin = parse_dynkin(ty)?;
        let Some(orient) = orient else {
            return Ok(Self::default_orientation(dynkin));
        };
        let edges = dynkin.edges();
        let mut forward: Vec<Option<bool>> = vec![None; edges.len()];
        for chain in orient.split(',') {
            let chain = chain.trim();
            let mut tokens = Vec::new();
            let mut num = String::new();
            for ch in chain.chars() {
                match ch {
                    '0'..='9' => num.push(ch),
                    '>' | '<' => {
                        tokens.push(std::mem::take(&mut num));
                        tokens.push(ch.to_string());
                    }
                    c if c.is_whitespace() => {}
                    c => return Err(Error::Orientation(format!("unexpected character {c:?} in {chain:?}"))),
                }
            }
            tokens.push(num);
            if tokens.len() < 3 {
                return Err(Error::Orientation(format!("chain {chain:?} has no edge")));
            }
            let vertex = |t: &str| -> Result<usize> {
                let v: usize = t.parse().map_err(|_| Error::Orientation(format!("bad vertex {t:?} in {chain:?}")))?;
                if v == 0 || v > dynkin.rank {
                    return Err(Error::Orientation(format!("vertex {v} out of range for {dynkin}")));
                }
                Ok(v - 1)
            };
            let mut prev = vertex(&tokens[0])?;
            for pair in tokens[1..].chunks(2) {
                if pair.len() != 2 {
                    return Err(Error::Orientation(format!("dangling arrow in {chain:?}")));
                }
                let next = vertex(&pair[1])?;
                let (s, t) = if pair[0] == ">" { (prev, next) } else { (next, prev) };
                let key = (s.min(t), s.max(t));
                let Some(idx) = edges.iter().position(|&e| e == key) else {
                    return Err(Error::Orientation(format!("{}-{} is not an edge of {dynkin}", s + 1, t + 1)));
                };
                if forward[idx].is_some() {
                    return Err(Error::Orientation(format!("edge {}-{} oriented twice", key.0 + 1, key.1 + 1)));
                }
                forward[idx] = Some(s < t);
                prev = next;
            }
        }
        let forward: Vec<bool> = forward
            .into_iter()
            .zip(&edges)
            .map(|(f, e)| f.ok_or_else(|| Error::Orientation(format!("edge {}-{} not oriented", e.0 + 1, e.1 + 1))))
            .collect::<Result<_>>()?;
        Self::new(dynkin, &forward)
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn vertex_count(&self) -> usize {
        self.dynkin.rank
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.reach[from][to]
    }

    pub fn path(&self, from: usize, to: usize) -> Option<&[usize]> {
        self.paths[from][to].as_deref()
    }

    /// Same diagram with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Self::from_arrows(self.dynkin, self.arrows.iter().map(|&(s, t)| (t, s)).collect())
    }

    /// Canonical label, e.g. `A3:1>2<3` or `D4:1>2>3,2>4`.
    pub fn label(&self) -> String {
        let edges = self.dynkin.edges();
        let dir = |e: &(usize, usize)| {
            if self.arrows.contains(e) {
                '>'
            } else {
                '<'
            }
        };
        let n = self.dynkin.rank;
        let chain_len = match self.dynkin.kind {
            DynkinKind::A => n.saturating_sub(1),
            _ => n - 2,
        };
        let mut s = format!("{}:1", self.dynkin);
        if n == 1 {
            return self.dynkin.to_string();
        }
        for e in &edges[..chain_len] {
            s.push(dir(e));
            s.push_str(&(e.1 + 1).to_string());
        }
        for e in &edges[chain_len..] {
            s.push_str(&format!(",{}{}{}", e.0 + 1, dir(e), e.1 + 1));
        }
        s
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn parse_dynkin(s: &str) -> Result<DynkinType> {
    let unknown = || Error::UnknownQuiver(s.to_string());
    let mut chars = s.chars();
    let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => DynkinKind::A,
        Some('D') => DynkinKind::D,
        Some('E') => DynkinKind::E,
        _ => return Err(unknown()),
    };
    let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| unknown())?;
    DynkinType::new(kind, rank).map_err(|_| unknown())
}

/// Diagram types offered by the explorer and the CLI help.
pub fn catalogue() -> Vec<DynkinType> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(DynkinType { kind: DynkinKind::A, rank: n });
    }
    for n in 4..=8 {
        out.push(DynkinType { kind: DynkinKind::D, rank: n });
    }
    for n in 6..=8 {
        out.push(DynkinType { kind: DynkinKind::E, rank: n });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_default_and_oriented_labels() {
        let q = Quiver::parse("A2").unwrap();
        assert_eq!(q.arrows(), &[(0, 1)]);
        assert_eq!(q.label(), "A2:1>2");

        let q = Quiver::parse("A3:1>2<3").unwrap();
        assert_eq!(q.arrows(), &[(0, 1), (2, 1)]);
        assert_eq!(q.label(), "A3:1>2<3");

        let q = Quiver::parse("D4:1>2<3,2<4").unwrap();
        assert_eq!(q.arrows(), &[(0, 1), (2, 1), (3, 1)]);
        assert_eq!(Quiver::parse(&q.label()).unwrap(), q);
    }

    #[test]
    fn diagram_shapes() {
        let d5 = DynkinType::new(DynkinKind::D, 5).unwrap();
        assert_eq!(d5.edges(), vec![(0, 1), (1, 2), (2, 3), (2, 4)]);
        let e6 = DynkinType::new(DynkinKind::E, 6).unwrap();
        assert_eq!(e6.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]);
        for t in catalogue() {
            assert_eq!(t.edges().len(), t.rank - 1, "{t} is a tree");
        }
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(matches!(Quiver::parse("B3"), Err(Error::UnknownQuiver(_))));
        assert!(matches!(Quiver::parse("E9"), Err(Error::UnknownQuiver(_))));
        assert!(matches!(Quiver::parse("D3"), Err(Error::UnknownQuiver(_))));
        assert!(matches!(Quiver::parse("A3:1>3>2"), Err(Error::Orientation(_))));
        assert!(matches!(Quiver::parse("A3:1>2"), Err(Error::Orientation(_))));
        assert!(matches!(Quiver::parse("A3:1>2>3,2<1"), Err(Error::Orientation(_))));
        assert!(matches!(Quiver::parse("A3:1>2>"), Err(Error::Orientation(_))));
    }

    #[test]
    fn paths_follow_arrows() {
        let q = Quiver::parse("A3:1>2>3").unwrap();
        assert_eq!(q.path(0, 2), Some(&[0, 1][..]));
        assert!(q.reaches(0, 2));
        assert!(!q.reaches(2, 0));
        assert!(q.opposite().reaches(2, 0));
        let q = Quiver::parse("A3:1>2<3").unwrap();
        assert!(!q.reaches(0, 2));
    }
}
