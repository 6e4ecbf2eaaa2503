//! Bounded complexes of projective representations, chain maps up to homotopy,
//! cones, and stalk objects.
//!
//! Terms are sums of standard projectives ([`ProjSum`]) and all maps are
//! path-coefficient matrices, so `d∘d`, chain-map composition and homotopies
//! are plain matrix arithmetic.
//!
//! Conventions: the stalk `M[j]` sits in cohomological degree `-j`;
//! `(X[1])^n = X^{n+1}` with the differential negated; the cone of
//! `f: X -> Y` has `C^n = X^{n+1} ⊕ Y^n` and `d = [[-d_X, 0], [f, d_Y]]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{kernel_basis, rref, Mat, Scalar, Subspace};
use crate::quiver::Quiver;
use crate::rep::{coefficient_mask, ProjSum, RepMor, Subquotient};

/// An indecomposable stalk `M[shift]`, `M` given by its table id.
/// Ordered by `(shift, id)`, the canonical summand order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stalk {
    pub id: usize,
    pub shift: i32,
}

impl Stalk {
    pub fn new(id: usize, shift: i32) -> Self {
        Stalk { id, shift }
    }

    pub fn shifted(self, k: i32) -> Self {
        Stalk { id: self.id, shift: self.shift + k }
    }

    /// The degree of `M[j]` is `j`.
    pub fn degree(self) -> i32 {
        self.shift
    }
}

impl Ord for Stalk {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.shift, self.id).cmp(&(other.shift, other.id))
    }
}

impl PartialOrd for Stalk {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Wire form of one summand: `{id, shift, mult}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub id: usize,
    pub shift: i32,
    pub mult: usize,
}

/// A derived object in normal form: a multiset of stalks, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StalkSum {
    parts: BTreeMap<Stalk, usize>,
}

impl StalkSum {
    pub fn new() -> Self {
        StalkSum::default()
    }

    pub fn from_stalks(stalks: impl IntoIterator<Item = Stalk>) -> Self {
        let mut s = StalkSum::new();
        for x in stalks {
            s.add(x, 1);
        }
        s
    }

    pub fn add(&mut self, s: Stalk, mult: usize) {
        if mult > 0 {
            *self.parts.entry(s).or_default() += mult;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct summands in canonical order.
    pub fn stalks(&self) -> Vec<Stalk> {
        self.parts.keys().copied().collect()
    }

    /// Summands with multiplicity, in canonical order.
    pub fn with_mult(&self) -> impl Iterator<Item = (Stalk, usize)> + '_ {
        self.parts.iter().map(|(&s, &m)| (s, m))
    }

    /// Every copy listed separately, in canonical order.
    pub fn expanded(&self) -> Vec<Stalk> {
        self.with_mult().flat_map(|(s, m)| std::iter::repeat(s).take(m)).collect()
    }

    pub fn mult(&self, s: Stalk) -> usize {
        self.parts.get(&s).copied().unwrap_or(0)
    }

    pub fn contains(&self, s: Stalk) -> bool {
        self.parts.contains_key(&s)
    }

    pub fn distinct_count(&self) -> usize {
        self.parts.len()
    }

    pub fn total_count(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn is_basic(&self) -> bool {
        self.parts.values().all(|&m| m == 1)
    }

    pub fn shifted(&self, k: i32) -> StalkSum {
        StalkSum { parts: self.parts.iter().map(|(s, &m)| (s.shifted(k), m)).collect() }
    }

    pub fn union(&self, other: &StalkSum) -> StalkSum {
        let mut out = self.clone();
        for (s, m) in other.with_mult() {
            out.add(s, m);
        }
        out
    }

    pub fn without(&self, s: Stalk) -> StalkSum {
        let mut out = self.clone();
        out.parts.remove(&s);
        out
    }

    pub fn to_json(&self) -> Vec<SummandJson> {
        self.with_mult().map(|(s, mult)| SummandJson { id: s.id, shift: s.shift, mult }).collect()
    }

    pub fn from_json(parts: &[SummandJson]) -> Self {
        let mut s = StalkSum::new();
        for p in parts {
            s.add(Stalk::new(p.id, p.shift), p.mult);
        }
        s
    }
}

impl FromIterator<Stalk> for StalkSum {
    fn from_iter<I: IntoIterator<Item = Stalk>>(iter: I) -> Self {
        StalkSum::from_stalks(iter)
    }
}

/// A bounded complex of projectives: `terms[k]` sits in degree `lo + k` and
/// `diffs[k]` is the coefficient matrix `terms[k] -> terms[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub lo: i32,
    pub terms: Vec<ProjSum>,
    pub diffs: Vec<Mat>,
}

static EMPTY: ProjSum = ProjSum(Vec::new());

impl Complex {
    pub fn zero() -> Self {
        Complex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn new(lo: i32, terms: Vec<ProjSum>, diffs: Vec<Mat>) -> Self {
        assert_eq!(diffs.len(), terms.len().saturating_sub(1));
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.shape(), (terms[k + 1].len(), terms[k].len()), "differential shape");
        }
        Complex { lo, terms, diffs }.trimmed()
    }

    /// Projective `P` concentrated in degree `deg`.
    pub fn single(deg: i32, p: ProjSum) -> Self {
        Complex::new(deg, vec![p], Vec::new())
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(ProjSum::is_empty)
    }

    pub fn term(&self, d: i32) -> &ProjSum {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &EMPTY
        } else {
            &self.terms[k as usize]
        }
    }

    /// Differential `d^d: X^d -> X^{d+1}`.
    pub fn diff(&self, d: i32) -> Mat {
        let k = d - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            Mat::zeros(self.term(d + 1).len(), self.term(d).len())
        }
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(ProjSum::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(ProjSum::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    /// `X[k]`: degrees move down by `k`, differentials pick up `(-1)^k`.
    pub fn shift(&self, k: i32) -> Complex {
        let sign = if k.rem_euclid(2) == 0 { Scalar::one() } else { -Scalar::one() };
        Complex {
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// Degreewise direct sum; summand `p` occupies the rows starting at `offset(p, d)`.
    pub fn direct_sum(parts: &[&Complex]) -> Complex {
        let nonzero: Vec<&&Complex> = parts.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return Complex::zero();
        }
        let lo = nonzero.iter().map(|c| c.lo).min().expect("nonempty");
        let hi = nonzero.iter().map(|c| c.hi()).max().expect("nonempty");
        let terms: Vec<ProjSum> = (lo..=hi)
            .map(|d| ProjSum(parts.iter().flat_map(|c| c.term(d).0.iter().copied()).collect()))
            .collect();
        let diffs = (lo..hi)
            .map(|d| {
                let blocks: Vec<Mat> = parts.iter().map(|c| c.diff(d)).collect();
                Mat::block_diag(&blocks.iter().collect::<Vec<_>>())
            })
            .collect();
        Complex::new(lo, terms, diffs)
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(ProjSum::len).sum()
    }
}

/// Row offset of part `p` at degree `d` inside [`Complex::direct_sum`] of `parts`.
pub fn sum_offset(parts: &[&Complex], p: usize, d: i32) -> usize {
    parts[..p].iter().map(|c| c.term(d).len()).sum()
}

/// Degreewise coefficient matrices of a chain map; absent degrees are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainMap {
    pub comps: BTreeMap<i32, Mat>,
}

impl ChainMap {
    pub fn zero() -> Self {
        ChainMap::default()
    }

    pub fn identity(x: &Complex) -> Self {
        ChainMap { comps: x.degrees().map(|d| (d, Mat::identity(x.term(d).len()))).collect() }
    }

    pub fn comp(&self, d: i32, src: &Complex, tgt: &Complex) -> Mat {
        self.comps.get(&d).cloned().unwrap_or_else(|| Mat::zeros(tgt.term(d).len(), src.term(d).len()))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            comps: self
                .comps
                .iter()
                .filter_map(|(d, a)| other.comps.get(d).map(|b| (*d, a.mul(b))))
                .collect(),
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut comps = self.comps.clone();
        for (d, m) in &other.comps {
            comps.entry(*d).and_modify(|x| *x = x.add(m)).or_insert_with(|| m.clone());
        }
        ChainMap { comps }
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|(d, m)| (*d, m.scale(s))).collect() }
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&-Scalar::one())
    }

    /// `f[k]`: the components move with the degrees, no sign.
    pub fn shift(&self, k: i32) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|(d, m)| (d - k, m.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Mat::is_zero)
    }

    pub fn commutes(&self, src: &Complex, tgt: &Complex) -> bool {
        let lo = src.lo.min(tgt.lo) - 1;
        let hi = src.hi().max(tgt.hi()) + 1;
        (lo..=hi).all(|d| {
            tgt.diff(d).mul(&self.comp(d, src, tgt)) == self.comp(d + 1, src, tgt).mul(&src.diff(d))
        })
    }

    /// Assembles a map between direct sums from blocks `(target part, source part) -> map`.
    pub fn from_blocks(
        src_parts: &[&Complex],
        tgt_parts: &[&Complex],
        blocks: &BTreeMap<(usize, usize), ChainMap>,
    ) -> ChainMap {
        let mut comps: BTreeMap<i32, Mat> = BTreeMap::new();
        for (&(r, c), f) in blocks {
            for (&d, m) in &f.comps {
                if m.rows() == 0 || m.cols() == 0 {
                    continue;
                }
                let entry = comps.entry(d).or_insert_with(|| {
                    let rows = tgt_parts.iter().map(|x| x.term(d).len()).sum();
                    let cols = src_parts.iter().map(|x| x.term(d).len()).sum();
                    Mat::zeros(rows, cols)
                });
                let (ro, co) = (sum_offset(tgt_parts, r, d), sum_offset(src_parts, c, d));
                let cur = entry.block(ro, co, m.rows(), m.cols());
                entry.set_block(ro, co, &cur.add(m));
            }
        }
        ChainMap { comps }
    }

    /// The block `(target part r, source part c)` of a map between direct sums.
    pub fn block(&self, src_parts: &[&Complex], tgt_parts: &[&Complex], r: usize, c: usize) -> ChainMap {
        let mut comps = BTreeMap::new();
        for (&d, m) in &self.comps {
            let (rows, cols) = (tgt_parts[r].term(d).len(), src_parts[c].term(d).len());
            if rows == 0 || cols == 0 {
                continue;
            }
            let (ro, co) = (sum_offset(tgt_parts, r, d), sum_offset(src_parts, c, d));
            comps.insert(d, m.block(ro, co, rows, cols));
        }
        ChainMap { comps }
    }
}

/// Mapping cone of `f: x -> y`, with `C^n = x^{n+1} ⊕ y^n`.
pub fn cone(f: &ChainMap, x: &Complex, y: &Complex) -> Complex {
    if x.is_zero() && y.is_zero() {
        return Complex::zero();
    }
    let lo = if x.is_zero() { y.lo } else if y.is_zero() { x.lo - 1 } else { (x.lo - 1).min(y.lo) };
    let hi = if x.is_zero() { y.hi() } else if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
    let terms: Vec<ProjSum> = (lo..=hi).map(|n| x.term(n + 1).concat(y.term(n))).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let (xa, ya) = (x.term(n + 1).len(), y.term(n).len());
            let (xb, yb) = (x.term(n + 2).len(), y.term(n + 1).len());
            let mut d = Mat::zeros(xb + yb, xa + ya);
            d.set_block(0, 0, &x.diff(n + 1).neg());
            d.set_block(xb, 0, &f.comp(n + 1, x, y));
            d.set_block(xb, xa, &y.diff(n));
            d
        })
        .collect();
    Complex::new(lo, terms, diffs)
}

/// The inclusion `y -> cone(f)`.
pub fn cone_inclusion(x: &Complex, y: &Complex) -> ChainMap {
    ChainMap {
        comps: y
            .degrees()
            .filter(|_| !y.is_zero())
            .map(|n| {
                let (xa, ya) = (x.term(n + 1).len(), y.term(n).len());
                let mut m = Mat::zeros(xa + ya, ya);
                m.set_block(xa, 0, &Mat::identity(ya));
                (n, m)
            })
            .collect(),
    }
}

/// The projection `cone(f) -> x[1]`.
pub fn cone_projection(x: &Complex, y: &Complex) -> ChainMap {
    ChainMap {
        comps: x
            .degrees()
            .filter(|_| !x.is_zero())
            .map(|k| {
                let n = k - 1;
                let (xa, ya) = (x.term(n + 1).len(), y.term(n).len());
                let mut m = Mat::zeros(xa, xa + ya);
                m.set_block(0, 0, &Mat::identity(xa));
                (n, m)
            })
            .collect(),
    }
}

/// `Hom(x, y)` in the homotopy category: cycles of the Hom complex modulo boundaries.
///
/// Unknowns are the entries of `F^d` allowed by the path pattern. `Z` is the
/// solution space of `d_y F^d = F^{d+1} d_x`, `B` the span of the
/// null-homotopic maps `d_y H + H d_x`. A class is represented by its
/// reduction modulo the echelon form of `B`; coordinates are read off at the
/// pivots of the reduced cycle space.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Complex,
    pub target: Complex,
    vars: Vec<(i32, usize, usize)>,
    var_index: BTreeMap<(i32, usize, usize), usize>,
    boundaries: Subspace,
    reps: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl HomSpace {
    pub fn new(q: &Quiver, x: &Complex, y: &Complex) -> Self {
        let mut vars = Vec::new();
        if !x.is_zero() && !y.is_zero() {
            for d in x.lo.max(y.lo)..=x.hi().min(y.hi()) {
                let mask = coefficient_mask(q, &x.term(d).0, &y.term(d).0);
                for (i, row) in mask.iter().enumerate() {
                    for (j, &ok) in row.iter().enumerate() {
                        if ok {
                            vars.push((d, i, j));
                        }
                    }
                }
            }
        }
        let var_index: BTreeMap<_, _> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let nv = vars.len();

        // Commutation: (d_y^d F^d - F^{d+1} d_x^d)[i][j] = 0.
        let mut eqs: Vec<Vec<Scalar>> = Vec::new();
        if nv > 0 {
            for d in (x.lo - 1)..=x.hi() {
                let (xs, yt) = (x.term(d), y.term(d + 1));
                if xs.is_empty() || yt.is_empty() {
                    continue;
                }
                let (dy, dx) = (y.diff(d), x.diff(d));
                let mask = coefficient_mask(q, &xs.0, &yt.0);
                for i in 0..yt.len() {
                    for j in 0..xs.len() {
                        if !mask[i][j] {
                            continue;
                        }
                        let mut row = vec![Scalar::zero(); nv];
                        for k in 0..dy.cols() {
                            if let Some(&v) = var_index.get(&(d, k, j)) {
                                if !dy[(i, k)].is_zero() {
                                    row[v] += &dy[(i, k)];
                                }
                            }
                        }
                        for k in 0..dx.rows() {
                            if let Some(&v) = var_index.get(&(d + 1, i, k)) {
                                if !dx[(k, j)].is_zero() {
                                    row[v] -= &dx[(k, j)];
                                }
                            }
                        }
                        if row.iter().any(|c| !c.is_zero()) {
                            eqs.push(row);
                        }
                    }
                }
            }
        }
        let cycles = if eqs.is_empty() {
            (0..nv)
                .map(|k| {
                    let mut e = vec![Scalar::zero(); nv];
                    e[k] = Scalar::one();
                    e
                })
                .collect()
        } else {
            kernel_basis(&Mat::from_rows(eqs))
        };

        // Homotopies H^d: x^d -> y^{d-1}.
        let mut bvecs: Vec<Vec<Scalar>> = Vec::new();
        if nv > 0 {
            for d in x.degrees() {
                let (xs, yt) = (x.term(d), y.term(d - 1));
                if xs.is_empty() || yt.is_empty() {
                    continue;
                }
                let mask = coefficient_mask(q, &xs.0, &yt.0);
                let (dy, dx) = (y.diff(d - 1), x.diff(d - 1));
                for (i, mrow) in mask.iter().enumerate() {
                    for (j, &ok) in mrow.iter().enumerate() {
                        if !ok {
                            continue;
                        }
                        let mut v = vec![Scalar::zero(); nv];
                        // d_y^{d-1} E_ij contributes to F^d, column j.
                        for r in 0..dy.rows() {
                            if !dy[(r, i)].is_zero() {
                                let k = var_index[&(d, r, j)];
                                v[k] += &dy[(r, i)];
                            }
                        }
                        // E_ij d_x^{d-1} contributes to F^{d-1}, row i.
                        for c in 0..dx.cols() {
                            if !dx[(j, c)].is_zero() {
                                let k = var_index[&(d - 1, i, c)];
                                v[k] += &dx[(j, c)];
                            }
                        }
                        if v.iter().any(|c| !c.is_zero()) {
                            bvecs.push(v);
                        }
                    }
                }
            }
        }
        let boundaries = Subspace::new(nv, &bvecs);
        let reduced: Vec<Vec<Scalar>> = cycles.iter().map(|z| boundaries.reduce(z)).collect();
        let (reps, pivots) = if reduced.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let r = rref(&Mat::from_rows(reduced));
            ((0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect(), r.pivot_cols)
        };
        HomSpace { source: x.clone(), target: y.clone(), vars, var_index, boundaries, reps, pivots }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn to_map(&self, v: &[Scalar]) -> ChainMap {
        let mut comps: BTreeMap<i32, Mat> = BTreeMap::new();
        for (k, &(d, i, j)) in self.vars.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let m = comps
                .entry(d)
                .or_insert_with(|| Mat::zeros(self.target.term(d).len(), self.source.term(d).len()));
            m[(i, j)] = v[k].clone();
        }
        ChainMap { comps }
    }

    pub fn basis_map(&self, k: usize) -> ChainMap {
        self.to_map(&self.reps[k])
    }

    pub fn basis(&self) -> Vec<ChainMap> {
        (0..self.dim()).map(|k| self.basis_map(k)).collect()
    }

    pub fn map_from_coords(&self, c: &[Scalar]) -> ChainMap {
        assert_eq!(c.len(), self.dim());
        let nv = self.vars.len();
        let mut v = vec![Scalar::zero(); nv];
        for (ck, rep) in c.iter().zip(&self.reps) {
            if ck.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(rep) {
                if !b.is_zero() {
                    *a += ck * b;
                }
            }
        }
        self.to_map(&v)
    }

    /// Coordinates of the homotopy class of a chain map `source -> target`.
    pub fn coords(&self, f: &ChainMap) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.vars.len()];
        for (&d, m) in &f.comps {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if m[(i, j)].is_zero() {
                        continue;
                    }
                    let k = self.var_index.get(&(d, i, j)).expect("chain map respects the path pattern");
                    v[*k] = m[(i, j)].clone();
                }
            }
        }
        let r = self.boundaries.reduce(&v);
        self.pivots.iter().map(|&p| r[p].clone()).collect()
    }

    pub fn is_null(&self, f: &ChainMap) -> bool {
        self.coords(f).iter().all(Zero::is_zero)
    }
}

/// `H^d(x)` as a subquotient of the term representation at degree `d`.
pub fn cohomology(q: &Quiver, x: &Complex, d: i32) -> Subquotient {
    let term = x.term(d);
    let rep = term.to_rep(q);
    let out = x.term(d + 1);
    let dout: RepMor = term.mor(q, out, &x.diff(d));
    let prev = x.term(d - 1);
    let din: RepMor = prev.mor(q, term, &x.diff(d - 1));
    let nv = q.vertex_count();
    let upper: Vec<Mat> = (0..nv)
        .map(|v| {
            let k = kernel_basis(&dout.comps[v]);
            Mat::from_columns(rep.dim(v), &k)
        })
        .collect();
    let lower: Vec<Vec<Vec<Scalar>>> = (0..nv)
        .map(|v| {
            let m = &din.comps[v];
            rref(m).pivot_cols.into_iter().map(|j| m.column(j)).collect()
        })
        .collect();
    Subquotient::new(q, &rep, upper, &lower)
}

/// The map `H^d(x) -> H^d(y)` induced by a chain map.
pub fn induced_on_cohomology(q: &Quiver, f: &ChainMap, x: &Complex, y: &Complex, d: i32) -> (Subquotient, Subquotient, RepMor) {
    let (hx, hy) = (cohomology(q, x, d), cohomology(q, y, d));
    let fd = x.term(d).mor(q, y.term(d), &f.comp(d, x, y));
    let comps = (0..q.vertex_count())
        .map(|v| {
            let cols: Vec<Vec<Scalar>> =
                (0..hx.rep.dim(v)).map(|j| hy.project(v, &fd.comps[v].mul_vec(&hx.lift(v, j)))).collect();
            Mat::from_columns(hy.rep.dim(v), &cols)
        })
        .collect();
    (hx, hy, RepMor { comps })
}

impl fmt::Display for Stalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}[{}]", self.id, self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    fn a2() -> Quiver {
        Quiver::parse("A2").unwrap()
    }

    // S1 = coker(P2 -> P1), in degrees -1, 0.
    fn s1(q: &Quiver) -> Complex {
        let _ = q;
        Complex::new(-1, vec![ProjSum(vec![1]), ProjSum(vec![0])], vec![Mat::from_i64(&[&[1]])])
    }

    #[test]
    fn hom_ext_between_stalks() {
        let q = a2();
        let p2_shift1 = Complex::single(-1, ProjSum(vec![1]));
        assert_eq!(HomSpace::new(&q, &s1(&q), &p2_shift1).dim(), 1);
        let p1 = Complex::single(0, ProjSum(vec![0]));
        assert_eq!(HomSpace::new(&q, &p1, &p2_shift1).dim(), 0);
        assert_eq!(HomSpace::new(&q, &p1, &p1).dim(), 1);
        assert_eq!(HomSpace::new(&q, &s1(&q), &s1(&q)).dim(), 1);
        assert_eq!(HomSpace::new(&q, &p2_shift1, &s1(&q)).dim(), 0);
    }

    #[test]
    fn identity_of_contractible_is_null() {
        let q = a2();
        let c = Complex::new(0, vec![ProjSum(vec![0]), ProjSum(vec![0])], vec![Mat::from_i64(&[&[2]])]);
        let h = HomSpace::new(&q, &c, &c);
        assert_eq!(h.dim(), 0);
        assert!(h.is_null(&ChainMap::identity(&c)));
    }

    #[test]
    fn cone_of_inclusion_has_simple_cohomology() {
        let q = a2();
        let (x, y) = (Complex::single(0, ProjSum(vec![1])), Complex::single(0, ProjSum(vec![0])));
        let f = ChainMap { comps: [(0, Mat::from_i64(&[&[1]]))].into() };
        assert!(f.commutes(&x, &y));
        let c = cone(&f, &x, &y);
        assert!(c.is_complex());
        assert_eq!(c, s1(&q));
        assert!(cone_inclusion(&x, &y).commutes(&y, &c));
        assert!(cone_projection(&x, &y).commutes(&c, &x.shift(1)));
        assert_eq!(cohomology(&q, &c, 0).rep.dims(), &[1, 0]);
        assert!(cohomology(&q, &c, -1).rep.is_zero());
    }

    #[test]
    fn shift_preserves_hom_dims() {
        let q = a2();
        let (a, b) = (s1(&q), Complex::single(-1, ProjSum(vec![1])));
        for k in -2..3 {
            assert_eq!(HomSpace::new(&q, &a.shift(k), &b.shift(k)).dim(), 1);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let q = Quiver::parse("A3").unwrap();
        let x = Complex::single(0, ProjSum(vec![2, 1]));
        let y = Complex::single(0, ProjSum(vec![0, 1]));
        let h = HomSpace::new(&q, &x, &y);
        assert_eq!(h.dim(), 4);
        let c = vec![scalar(2), scalar(-1), scalar(5), scalar(0)];
        assert_eq!(h.coords(&h.map_from_coords(&c)), c);
    }

    #[test]
    fn stalk_sum_is_canonical() {
        let s = StalkSum::from_stalks([Stalk::new(2, 1), Stalk::new(0, 0), Stalk::new(1, 0), Stalk::new(0, 0)]);
        assert_eq!(s.stalks(), vec![Stalk::new(0, 0), Stalk::new(1, 0), Stalk::new(2, 1)]);
        assert_eq!(s.mult(Stalk::new(0, 0)), 2);
        assert!(!s.is_basic());
        assert_eq!(StalkSum::from_json(&s.to_json()), s);
    }
}
