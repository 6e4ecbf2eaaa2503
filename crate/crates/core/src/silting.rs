//! Silting objects in the fundamental domain, minimal approximations,
//! mutation triangles, complement chains and the silting quiver.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derived::{cone, cone_inclusion, ChainMap, Complex, Stalk, StalkSum};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::linalg::{Mat, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "l" => Ok(Direction::Left),
            "right" | "r" => Ok(Direction::Right),
            _ => Err(Error::Parse(format!("direction must be left or right, got {s:?}"))),
        }
    }
}

/// `Hom(a, b[k]) = 0` for all `k > 0`, in both orders.
pub fn pair_rigid(inst: &Instance, a: Stalk, b: Stalk) -> bool {
    one_way_rigid(inst, a, b) && one_way_rigid(inst, b, a)
}

fn one_way_rigid(inst: &Instance, a: Stalk, b: Stalk) -> bool {
    // Hom(a, b[k]) can only be nonzero when b.shift + k ∈ {a.shift, a.shift + 1}.
    let hom_shift = a.shift - b.shift;
    let ext_shift = a.shift + 1 - b.shift;
    (hom_shift <= 0 || inst.module_hom_dim(a.id, b.id) == 0) && (ext_shift <= 0 || inst.module_ext_dim(a.id, b.id) == 0)
}

pub fn is_rigid(inst: &Instance, x: &StalkSum) -> bool {
    let s = x.stalks();
    s.iter().enumerate().all(|(i, &a)| s[i..].iter().all(|&b| pair_rigid(inst, a, b)))
}

pub fn in_domain(inst: &Instance, x: &StalkSum, m: usize) -> bool {
    x.stalks().into_iter().all(|s| inst.in_domain(s, m))
}

/// Rigid, basic, exactly `n` summands, all in the fundamental domain.
pub fn is_silting_in_domain(inst: &Instance, x: &StalkSum, m: usize) -> bool {
    x.is_basic() && x.distinct_count() == inst.rank() && in_domain(inst, x, m) && is_rigid(inst, x)
}

/// Rigid and basic with `n` summands, wherever they sit.
pub fn is_silting(inst: &Instance, x: &StalkSum) -> bool {
    x.is_basic() && x.distinct_count() == inst.rank() && is_rigid(inst, x)
}

/// Confirms that no further stalk of the domain can be adjoined while staying rigid.
pub fn maximality_audit(inst: &Instance, x: &StalkSum, m: usize) -> bool {
    inst.domain_candidates(m)
        .into_iter()
        .filter(|c| !x.contains(*c))
        .all(|c| x.stalks().into_iter().any(|s| !pair_rigid(inst, s, c)))
}

/// All basic silting objects of the fundamental domain, in canonical order.
pub fn enumerate_silting(inst: &Instance, m: usize) -> Vec<StalkSum> {
    let cands = inst.domain_candidates(m);
    let k = cands.len();
    let compat: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && pair_rigid(inst, cands[i], cands[j])).collect()).collect();
    let n = inst.rank();

    fn extend(compat: &[Vec<bool>], n: usize, chosen: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == n {
            out.push(chosen.clone());
            return;
        }
        for c in next..compat.len() {
            if chosen.iter().all(|&p| compat[p][c]) {
                chosen.push(c);
                extend(compat, n, chosen, c + 1, out);
                chosen.pop();
            }
        }
    }

    let mut found: Vec<StalkSum> = (0..k)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            extend(&compat, n, &mut vec![first], first + 1, &mut out);
            out.into_iter().map(|ix| ix.into_iter().map(|i| cands[i]).collect::<StalkSum>()).collect::<Vec<_>>()
        })
        .collect();
    found.sort();
    found
}

/// A minimal approximation of `x` by `add(targets)`, stored as one Hom-space
/// coordinate vector per copy of a target summand.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub x: Stalk,
    pub side: Direction,
    pub targets: Vec<Stalk>,
    /// `(target summand, coordinates)` in canonical order; for a left
    /// approximation the coordinates live in `Hom(x, t)`, for a right one in `Hom(t, x)`.
    pub copies: Vec<(Stalk, Vec<Scalar>)>,
}

impl Approximation {
    pub fn object(&self) -> StalkSum {
        let mut s = StalkSum::new();
        for (t, _) in &self.copies {
            s.add(*t, 1);
        }
        s
    }

    pub fn multiplicity(&self, t: Stalk) -> usize {
        self.copies.iter().filter(|(s, _)| *s == t).count()
    }

    /// The copy maps as chain maps between stalk presentations.
    pub fn maps(&self, inst: &Instance) -> Vec<ChainMap> {
        self.copies
            .iter()
            .map(|(t, c)| match self.side {
                Direction::Left => inst.stalk_hom(self.x, *t).map_from_coords(c),
                Direction::Right => inst.stalk_hom(*t, self.x).map_from_coords(c),
            })
            .collect()
    }

    /// The whole approximation as a chain map between presentations
    /// (`x -> b` for a left approximation, `b -> x` for a right one).
    pub fn chain_map(&self, inst: &Instance) -> (Complex, Complex, ChainMap) {
        let xc = inst.present_stalk(self.x);
        let parts: Vec<Complex> = self.copies.iter().map(|(t, _)| inst.present_stalk(*t)).collect();
        let part_refs: Vec<&Complex> = parts.iter().collect();
        let b = Complex::direct_sum(&part_refs);
        let maps = self.maps(inst);
        match self.side {
            Direction::Left => {
                let blocks = maps.into_iter().enumerate().map(|(i, f)| ((i, 0), f)).collect();
                (xc.clone(), b, ChainMap::from_blocks(&[&xc], &part_refs, &blocks))
            }
            Direction::Right => {
                let blocks = maps.into_iter().enumerate().map(|(i, f)| ((0, i), f)).collect();
                (b, xc.clone(), ChainMap::from_blocks(&part_refs, &[&xc], &blocks))
            }
        }
    }
}

fn unit(n: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[j] = Scalar::one();
    v
}

/// Minimal left `add(targets)`-approximation of `x`.
///
/// The multiplicity of `T_a` is the dimension of `Hom(x, T_a)` modulo the maps
/// factoring through some `T_c`, `c ≠ a` (all such maps are radical since the
/// targets are pairwise non-isomorphic with endomorphism ring `Q`).
pub fn minimal_left_approx(inst: &Instance, x: Stalk, targets: &[Stalk]) -> Approximation {
    approx(inst, x, targets, Direction::Left)
}

/// Minimal right `add(targets)`-approximation of `x`.
pub fn minimal_right_approx(inst: &Instance, x: Stalk, targets: &[Stalk]) -> Approximation {
    approx(inst, x, targets, Direction::Right)
}

fn approx(inst: &Instance, x: Stalk, targets: &[Stalk], side: Direction) -> Approximation {
    let targets: Vec<Stalk> = targets.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut copies = Vec::new();
    for &a in &targets {
        let ha = hom_with(inst, x, a, side);
        if ha.dim() == 0 {
            continue;
        }
        let mut through = Vec::new();
        for &c in &targets {
            if c == a {
                continue;
            }
            through.extend(factor_coords(inst, x, c, a, side));
        }
        let sub = Subspace::new(ha.dim(), &through);
        for j in sub.free_cols() {
            copies.push((a, unit(ha.dim(), j)));
        }
    }
    Approximation { x, side, targets, copies }
}

fn hom_with(inst: &Instance, x: Stalk, a: Stalk, side: Direction) -> std::sync::Arc<crate::derived::HomSpace> {
    match side {
        Direction::Left => inst.stalk_hom(x, a),
        Direction::Right => inst.stalk_hom(a, x),
    }
}

/// Coordinates (in `Hom(x, a)` resp. `Hom(a, x)`) of all composites through `c`.
fn factor_coords(inst: &Instance, x: Stalk, c: Stalk, a: Stalk, side: Direction) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    match side {
        Direction::Left => {
            let (hxc, hca, hxa) = (inst.stalk_hom(x, c), inst.stalk_hom(c, a), inst.stalk_hom(x, a));
            for alpha in hxc.basis() {
                for beta in hca.basis() {
                    out.push(hxa.coords(&beta.compose(&alpha)));
                }
            }
        }
        Direction::Right => {
            let (hac, hcx, hax) = (inst.stalk_hom(a, c), inst.stalk_hom(c, x), inst.stalk_hom(a, x));
            for beta in hac.basis() {
                for alpha in hcx.basis() {
                    out.push(hax.coords(&alpha.compose(&beta)));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxAudit {
    /// Every map from `x` to (resp. into `x` from) a target factors through the approximation.
    pub approximation: bool,
    /// Dropping any copy destroys the approximation property.
    pub minimal: bool,
}

fn spans_everything(inst: &Instance, ap: &Approximation, copies: &[usize]) -> bool {
    let maps = ap.maps(inst);
    ap.targets.iter().all(|&a| {
        let ha = hom_with(inst, ap.x, a, ap.side);
        if ha.dim() == 0 {
            return true;
        }
        let mut vecs = Vec::new();
        for &i in copies {
            let c = ap.copies[i].0;
            match ap.side {
                Direction::Left => {
                    for beta in inst.stalk_hom(c, a).basis() {
                        vecs.push(ha.coords(&beta.compose(&maps[i])));
                    }
                }
                Direction::Right => {
                    for beta in inst.stalk_hom(a, c).basis() {
                        vecs.push(ha.coords(&maps[i].compose(&beta)));
                    }
                }
            }
        }
        Subspace::new(ha.dim(), &vecs).dim() == ha.dim()
    })
}

pub fn audit_approximation(inst: &Instance, ap: &Approximation) -> ApproxAudit {
    let all: Vec<usize> = (0..ap.copies.len()).collect();
    let approximation = spans_everything(inst, ap, &all);
    let minimal = (0..ap.copies.len()).all(|drop| {
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != drop).collect();
        !spans_everything(inst, ap, &rest)
    });
    ApproxAudit { approximation, minimal }
}

/// The exchange triangle `x -> b -> y -> x[1]` (left) or `y -> b -> x -> y[1]` (right).
#[derive(Clone, Debug)]
pub struct MutationTriangle {
    pub dir: Direction,
    /// The summand being replaced.
    pub x: Stalk,
    pub b: StalkSum,
    /// Its replacement.
    pub y: Stalk,
    pub approximation: Approximation,
    /// The cone of the approximation map.
    pub cone: Complex,
    /// Left: the map `b -> cone(f)`; right: the map `cone(g)[-1] -> b`.
    pub g: ChainMap,
}

impl MutationTriangle {
    /// The triangle `first -> middle -> last -> first[1]`.
    pub fn ends(&self) -> (Stalk, Stalk) {
        match self.dir {
            Direction::Left => (self.x, self.y),
            Direction::Right => (self.y, self.x),
        }
    }

    pub fn describe(&self, inst: &Instance) -> String {
        let (a, c) = self.ends();
        let mid = if self.b.is_empty() { "0".to_string() } else { sum_plain(inst, &self.b) };
        format!(
            "{} -> {} -> {} -> {}",
            inst.stalk_name(a),
            mid,
            inst.stalk_name(c),
            inst.stalk_name(a.shifted(1))
        )
    }
}

fn sum_plain(inst: &Instance, x: &StalkSum) -> String {
    x.with_mult()
        .map(|(s, m)| if m == 1 { inst.stalk_name(s) } else { format!("{}^{m}", inst.stalk_name(s)) })
        .collect::<Vec<_>>()
        .join("+")
}

/// Replaces `x` by the cone of its minimal approximation by `add(complement)`.
pub fn mutate_summand(inst: &Instance, complement: &StalkSum, x: Stalk, dir: Direction) -> Result<MutationTriangle> {
    let targets = complement.stalks();
    let ap = approx(inst, x, &targets, dir);
    let (src, tgt, f) = ap.chain_map(inst);
    let c = cone(&f, &src, &tgt);
    let y_sum = match dir {
        Direction::Left => inst.normalize(&c)?,
        Direction::Right => inst.normalize(&c)?.shifted(-1),
    };
    let stalks = y_sum.stalks();
    if stalks.len() != 1 || y_sum.total_count() != 1 {
        return Err(Error::Internal(format!(
            "mutating {} produced {}, expected one indecomposable",
            inst.stalk_name(x),
            inst.sum_name(&y_sum)
        )));
    }
    let g = match dir {
        Direction::Left => cone_inclusion(&src, &tgt),
        // cone(g)[-1] -> b is the projection cone(g) -> b[1], shifted back; no sign.
        Direction::Right => crate::derived::cone_projection(&src, &tgt).shift(-1),
    };
    Ok(MutationTriangle { dir, x, b: ap.object(), y: stalks[0], approximation: ap, cone: c, g })
}

/// Mutates the `k`-th summand (canonical order) of `t`.
pub fn mutate(inst: &Instance, t: &StalkSum, k: usize, dir: Direction) -> Result<(StalkSum, MutationTriangle)> {
    let stalks = t.stalks();
    let x = *stalks.get(k).ok_or(Error::IndexOutOfRange { index: k, len: stalks.len() })?;
    let rest = t.without(x);
    let tri = mutate_summand(inst, &rest, x, dir)?;
    let mut out = rest;
    out.add(tri.y, 1);
    Ok((out, tri))
}

pub fn is_almost_complete(inst: &Instance, core: &StalkSum) -> bool {
    core.is_basic() && core.distinct_count() + 1 == inst.rank() && is_rigid(inst, core)
}

/// Complements of `core` inside the fundamental domain.
pub fn domain_complements(inst: &Instance, core: &StalkSum, m: usize) -> Vec<Stalk> {
    inst.domain_candidates(m)
        .into_iter()
        .filter(|c| !core.contains(*c) && core.stalks().into_iter().all(|s| pair_rigid(inst, s, *c)))
        .collect()
}

/// The complements `M_j` of an almost complete silting object, for `j` in a window.
///
/// `M_0` is the domain complement whose right mutation leaves the domain;
/// left mutation moves `j` up by one, right mutation moves it down.
#[derive(Clone, Debug)]
pub struct ComplementChain {
    pub core: StalkSum,
    pub m: usize,
    pub members: BTreeMap<i32, Stalk>,
    /// Domain complements, as found by the direct search.
    pub domain: Vec<Stalk>,
    /// `exchange[j]`: middle term of `M_{j-1} -> B -> M_j -> M_{j-1}[1]`.
    pub exchange: BTreeMap<i32, StalkSum>,
}

impl ComplementChain {
    pub fn get(&self, j: i32) -> Option<Stalk> {
        self.members.get(&j).copied()
    }

    pub fn window(&self) -> (i32, i32) {
        (*self.members.keys().next().expect("nonempty"), *self.members.keys().last().expect("nonempty"))
    }
}

pub fn complement_chain(inst: &Instance, core: &StalkSum, m: usize, lo: i32, hi: i32) -> Result<ComplementChain> {
    if !is_almost_complete(inst, core) {
        return Err(Error::NotAlmostComplete(inst.sum_name(core)));
    }
    let domain = domain_complements(inst, core, m);
    let start: Vec<Stalk> = domain
        .iter()
        .copied()
        .filter(|&c| mutate_summand(inst, core, c, Direction::Right).map(|t| !domain.contains(&t.y)).unwrap_or(false))
        .collect();
    let m0 = match start.as_slice() {
        [one] => *one,
        [] => return Err(Error::NotAlmostComplete(format!("{} has no complement in the domain", inst.sum_name(core)))),
        _ => return Err(Error::Internal(format!("several chain starts for {}", inst.sum_name(core)))),
    };
    let mut members = BTreeMap::from([(0, m0)]);
    let mut exchange = BTreeMap::new();
    for j in 1..=hi.max(0) {
        let t = mutate_summand(inst, core, members[&(j - 1)], Direction::Left)?;
        members.insert(j, t.y);
        exchange.insert(j, t.b);
    }
    for j in (lo.min(0)..0).rev() {
        let t = mutate_summand(inst, core, members[&(j + 1)], Direction::Right)?;
        members.insert(j, t.y);
        exchange.insert(j + 1, t.b);
    }
    members.retain(|&j, _| (lo..=hi).contains(&j) || j == 0);
    Ok(ComplementChain { core: core.clone(), m, members, domain, exchange })
}

#[derive(Clone, Debug, Default)]
pub struct SiltingQuiver {
    pub vertices: Vec<StalkSum>,
    /// `(from, to, exchanged summand index in the source)`.
    pub arrows: Vec<(usize, usize, usize)>,
    /// Left mutations whose result leaves the domain.
    pub leaving: usize,
}

pub fn silting_quiver(inst: &Instance, m: usize) -> Result<SiltingQuiver> {
    let vertices = enumerate_silting(inst, m);
    let index: BTreeMap<&StalkSum, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let results: Vec<Result<Vec<(usize, Option<usize>)>>> = vertices
        .par_iter()
        .map(|v| {
            (0..v.distinct_count())
                .map(|k| mutate(inst, v, k, Direction::Left).map(|(w, _)| (k, index.get(&w).copied())))
                .collect()
        })
        .collect();
    let mut arrows = Vec::new();
    let mut leaving = 0;
    for (i, r) in results.into_iter().enumerate() {
        for (k, target) in r? {
            match target {
                Some(j) => arrows.push((i, j, k)),
                None => leaving += 1,
            }
        }
    }
    Ok(SiltingQuiver { vertices, arrows, leaving })
}

pub fn is_connected(sq: &SiltingQuiver) -> bool {
    let n = sq.vertices.len();
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in &sq.arrows {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Coefficient matrix of a left approximation, one column per copy (used in reports).
pub fn approximation_matrix(ap: &Approximation) -> Mat {
    let rows = ap.copies.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let cols: Vec<Vec<Scalar>> = ap
        .copies
        .iter()
        .map(|(_, c)| {
            let mut v = c.clone();
            v.resize(rows, Scalar::zero());
            v
        })
        .collect();
    Mat::from_columns(rows, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Instance {
        Instance::parse("A2").unwrap()
    }

    fn sum(inst: &Instance, s: &str) -> StalkSum {
        inst.parse_sum(s).unwrap()
    }

    #[test]
    fn rigidity_examples() {
        let inst = a2();
        assert!(is_rigid(&inst, &sum(&inst, "P1,P2")));
        assert!(!is_rigid(&inst, &sum(&inst, "P1,P2[1]")));
        assert!(is_rigid(&inst, &sum(&inst, "S1,P2[1]")));
        assert!(is_silting_in_domain(&inst, &sum(&inst, "P1,S1"), 1));
        assert!(!is_silting_in_domain(&inst, &sum(&inst, "P1"), 1));
    }

    #[test]
    fn a2_enumeration() {
        let inst = a2();
        let got: BTreeSet<StalkSum> = enumerate_silting(&inst, 1).into_iter().collect();
        let want: BTreeSet<StalkSum> = ["P1,P2", "P1,S1", "S1,P2[1]", "P2,P1[1]", "P1[1],P2[1]"]
            .iter()
            .map(|s| sum(&inst, s))
            .collect();
        assert_eq!(got, want);
        for t in &got {
            assert!(maximality_audit(&inst, t, 1));
        }
    }

    #[test]
    fn approximations_into_p1() {
        let inst = a2();
        let s = |t: &str| inst.parse_stalk(t).unwrap();
        let p1 = [s("P1")];
        let ap = minimal_left_approx(&inst, s("P2"), &p1);
        assert_eq!(ap.object(), sum(&inst, "P1"));
        assert_eq!(audit_approximation(&inst, &ap), ApproxAudit { approximation: true, minimal: true });
        assert!(minimal_left_approx(&inst, s("S1"), &p1).object().is_empty());
        let ap = minimal_left_approx(&inst, s("P1"), &p1);
        assert_eq!(ap.object(), sum(&inst, "P1"));
    }

    #[test]
    fn mutation_examples() {
        let inst = a2();
        let t = sum(&inst, "P1,P2");
        let (t1, tri) = mutate(&inst, &t, 1, Direction::Left).unwrap();
        assert_eq!(t1, sum(&inst, "P1,S1"));
        assert_eq!(tri.describe(&inst), "P2 -> P1 -> S1 -> P2[1]");
        let (t2, tri) = mutate(&inst, &t1, 1, Direction::Left).unwrap();
        assert_eq!(t2, sum(&inst, "P1,S1[1]"));
        assert_eq!(tri.describe(&inst), "S1 -> 0 -> S1[1] -> S1[1]");
        let (t3, _) = mutate(&inst, &t, 1, Direction::Right).unwrap();
        assert_eq!(t3, sum(&inst, "P2[-1],P1"));
        assert!(mutate(&inst, &t, 2, Direction::Left).is_err());
    }

    #[test]
    fn a2_chain() {
        let inst = a2();
        let chain = complement_chain(&inst, &sum(&inst, "P1"), 1, -2, 4).unwrap();
        let names: Vec<String> = (-2..=4).map(|j| inst.stalk_name(chain.get(j).unwrap())).collect();
        assert_eq!(names, ["P2[-2]", "P2[-1]", "P2", "S1", "S1[1]", "S1[2]", "S1[3]"]);
        assert!(complement_chain(&inst, &sum(&inst, "P1,P2"), 1, 0, 1).is_err());
    }

    #[test]
    fn small_quivers() {
        let inst = Instance::parse("A1").unwrap();
        let sq = silting_quiver(&inst, 1).unwrap();
        assert_eq!(sq.vertices.len(), 2);
        assert_eq!(sq.arrows.len(), 1);
        assert!(is_connected(&sq));
        let split = SiltingQuiver { vertices: vec![StalkSum::new(), StalkSum::new()], arrows: vec![], leaving: 0 };
        assert!(!is_connected(&split));
        let single = SiltingQuiver { vertices: vec![StalkSum::new()], arrows: vec![], leaving: 0 };
        assert!(is_connected(&single));
    }
}
