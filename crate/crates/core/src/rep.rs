//! Finite-dimensional representations of a Dynkin quiver and their morphisms.
//!
//! A representation carries one matrix per arrow, of shape
//! `dim(target) x dim(source)`. A path acts by composing its arrow matrices in
//! the order the arrows are traversed.
//!
//! Standard projectives and injectives use path bases. Since Dynkin quivers
//! are trees there is at most one path between two vertices, so
//! `P(v)_u` and `I(v)_u` are at most one-dimensional and a morphism between
//! direct sums of standard projectives (or injectives) is a plain scalar
//! matrix of path coefficients. [`ProjSum`] and [`InjSum`] work at that level.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, kernel_basis, parse_scalar, rref, scalar, solve, Mat, Scalar, Subspace};
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

/// Morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMor {
    pub comps: Vec<Mat>,
}

impl Rep {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch("representation does not fit the quiver".into()));
        }
        for (m, &(s, t)) in maps.iter().zip(q.arrows()) {
            if m.shape() != (dims[t], dims[s]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {}->{} expects a {}x{} matrix, got {:?}",
                    s,
                    t,
                    dims[t],
                    dims[s],
                    m.shape()
                )));
            }
        }
        Ok(Rep { dims, maps })
    }

    pub fn zero(q: &Quiver) -> Self {
        let n = q.vertex_count();
        Rep { dims: vec![0; n], maps: q.arrows().iter().map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }

    /// Matrix of the path `from ~> to`, `None` if there is no such path.
    pub fn path_map(&self, q: &Quiver, from: usize, to: usize) -> Option<Mat> {
        let path = q.path(from, to)?;
        let mut m = Mat::identity(self.dims[from]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        Some(m)
    }

    pub fn direct_sum(q: &Quiver, parts: &[&Rep]) -> Rep {
        let dims = (0..q.vertex_count()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..q.arrows().len())
            .map(|a| Mat::block_diag(&parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
            .collect();
        Rep { dims, maps }
    }

    pub fn to_json(&self, q: &Quiver) -> RepJson {
        RepJson {
            dims: self.dims.clone(),
            arrows: q
                .arrows()
                .iter()
                .zip(&self.maps)
                .map(|(&(src, tgt), m)| ArrowJson { src, tgt, matrix: m.to_strings() })
                .collect(),
        }
    }

    pub fn from_json(q: &Quiver, doc: &RepJson) -> Result<Self> {
        let mut maps = vec![None; q.arrows().len()];
        for a in &doc.arrows {
            let idx = q
                .arrows()
                .iter()
                .position(|&e| e == (a.src, a.tgt))
                .ok_or_else(|| Error::Parse(format!("no arrow {}->{} in {q}", a.src, a.tgt)))?;
            let rows = a
                .matrix
                .iter()
                .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let (r, c) = (doc.dims.get(a.tgt).copied().unwrap_or(0), doc.dims.get(a.src).copied().unwrap_or(0));
            let m = if r == 0 || c == 0 { Mat::zeros(r, c) } else { Mat::from_rows(rows) };
            maps[idx] = Some(m);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::Parse(format!("arrow {:?} missing", q.arrows()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Rep::new(q, doc.dims.clone(), maps)
    }
}

/// Wire form of a representation. Vertices are 0-based; rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub dims: Vec<usize>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub src: usize,
    pub tgt: usize,
    pub matrix: Vec<Vec<String>>,
}

impl RepMor {
    pub fn zero(m: &Rep, n: &Rep) -> Self {
        RepMor { comps: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Mat::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Rep) -> Self {
        RepMor { comps: m.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &RepMor) -> RepMor {
        RepMor { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &RepMor) -> RepMor {
        RepMor { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> RepMor {
        RepMor { comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    pub fn is_valid(&self, q: &Quiver, m: &Rep, n: &Rep) -> bool {
        q.arrows().iter().enumerate().all(|(a, &(s, t))| {
            self.comps[t].mul(&m.maps[a]) == n.maps[a].mul(&self.comps[s])
        })
    }

    fn flatten(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|c| c.entries().iter().cloned()).collect()
    }
}

/// Basis of `Hom(m, n)`, the null space of the intertwining system.
pub fn hom_basis(q: &Quiver, m: &Rep, n: &Rep) -> Vec<RepMor> {
    let nv = q.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let eq_count: usize = q.arrows().iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut sys = Mat::zeros(eq_count, unknowns);
    let mut row = 0;
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        // f_t M_a - N_a f_s = 0, entry (i, j) with i < n_t, j < m_s
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                for k in 0..m.dims[t] {
                    let c = &ma[(k, j)];
                    if !c.is_zero() {
                        sys[(row, offset[t] + i * m.dims[t] + k)] += c;
                    }
                }
                for k in 0..n.dims[s] {
                    let c = &na[(i, k)];
                    if !c.is_zero() {
                        sys[(row, offset[s] + k * m.dims[s] + j)] -= c;
                    }
                }
                row += 1;
            }
        }
    }
    kernel_basis(&sys)
        .into_iter()
        .map(|x| RepMor {
            comps: (0..nv)
                .map(|v| {
                    let (r, c) = (n.dims[v], m.dims[v]);
                    let mut comp = Mat::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            comp[(i, j)] = x[offset[v] + i * c + j].clone();
                        }
                    }
                    comp
                })
                .collect(),
        })
        .collect()
}

pub fn hom_dim(q: &Quiver, m: &Rep, n: &Rep) -> usize {
    hom_basis(q, m, n).len()
}

/// `<d, e> = sum_v d_v e_v - sum_{a: u -> w} d_u e_w`
pub fn euler_form(q: &Quiver, d: &[usize], e: &[usize]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(&x, &y)| (x * y) as i64).sum();
    let arrows: i64 = q.arrows().iter().map(|&(u, w)| (d[u] * e[w]) as i64).sum();
    diag - arrows
}

pub fn ext1_dim(q: &Quiver, m: &Rep, n: &Rep) -> Result<usize> {
    let v = hom_dim(q, m, n) as i64 - euler_form(q, m.dims(), n.dims());
    usize::try_from(v).map_err(|_| Error::Internal(format!("negative Ext^1 dimension {v}")))
}

/// A subquotient `U / L` of a representation, given vertexwise by a column
/// basis `U_v` of a subrepresentation and a subrepresentation `L_v ⊆ U_v`.
///
/// The quotient basis consists of the columns of `U_v` at the free positions
/// of `L_v` (expressed in `U_v`-coordinates).
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub rep: Rep,
    upper: Vec<Mat>,
    lower: Vec<Subspace>,
    free: Vec<Vec<usize>>,
}

impl Subquotient {
    pub fn new(q: &Quiver, ambient: &Rep, upper: Vec<Mat>, lower: &[Vec<Vec<Scalar>>]) -> Self {
        let nv = q.vertex_count();
        let lower: Vec<Subspace> = (0..nv)
            .map(|v| {
                let u = &upper[v];
                let in_u: Vec<Vec<Scalar>> = lower[v]
                    .iter()
                    .map(|x| solve(u, x).expect("shape").expect("lower lies in upper"))
                    .collect();
                Subspace::new(u.cols(), &in_u)
            })
            .collect();
        let free: Vec<Vec<usize>> = lower.iter().map(Subspace::free_cols).collect();
        let dims: Vec<usize> = free.iter().map(Vec::len).collect();
        let mut sq = Subquotient { rep: Rep::zero(q), upper, lower, free };
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let cols: Vec<Vec<Scalar>> = (0..dims[s])
                    .map(|j| sq.project(t, &ambient.maps[a].mul_vec(&sq.lift(s, j))))
                    .collect();
                Mat::from_columns(dims[t], &cols)
            })
            .collect();
        sq.rep = Rep::new(q, dims, maps).expect("subquotient shapes");
        sq
    }

    /// Ambient vector representing the `j`-th basis vector at `v`.
    pub fn lift(&self, v: usize, j: usize) -> Vec<Scalar> {
        self.upper[v].column(self.free[v][j])
    }

    /// Quotient coordinates of an ambient vector lying in `U_v`.
    pub fn project(&self, v: usize, x: &[Scalar]) -> Vec<Scalar> {
        let in_u = solve(&self.upper[v], x).expect("shape").expect("vector lies in the upper subspace");
        self.lower[v].quotient_coords(&in_u)
    }

    /// Vertexwise matrices of the inclusion of the basis lifts into the ambient space.
    pub fn lift_mor(&self) -> RepMor {
        RepMor {
            comps: (0..self.upper.len())
                .map(|v| {
                    let cols: Vec<_> = (0..self.rep.dims[v]).map(|j| self.lift(v, j)).collect();
                    Mat::from_columns(self.upper[v].rows(), &cols)
                })
                .collect(),
        }
    }
}

/// Kernel, image and cokernel of a morphism, with their structure maps.
#[derive(Clone, Debug)]
pub struct MorphismParts {
    pub kernel: Rep,
    pub image: Rep,
    pub cokernel: Rep,
    pub kernel_inclusion: RepMor,
    pub image_inclusion: RepMor,
    pub cokernel_projection: RepMor,
}

fn column_space(m: &Mat) -> Vec<Vec<Scalar>> {
    rref(m).pivot_cols.into_iter().map(|j| m.column(j)).collect()
}

fn basis_matrix(rows: usize, vecs: &[Vec<Scalar>]) -> Mat {
    Mat::from_columns(rows, vecs)
}

pub fn morphism_parts(q: &Quiver, m: &Rep, n: &Rep, f: &RepMor) -> MorphismParts {
    let nv = q.vertex_count();
    let kernel_vecs: Vec<_> = (0..nv).map(|v| kernel_basis(&f.comps[v])).collect();
    let image_vecs: Vec<_> = (0..nv).map(|v| column_space(&f.comps[v])).collect();
    let none: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];

    let ker = Subquotient::new(q, m, (0..nv).map(|v| basis_matrix(m.dims[v], &kernel_vecs[v])).collect(), &none);
    let im = Subquotient::new(q, n, (0..nv).map(|v| basis_matrix(n.dims[v], &image_vecs[v])).collect(), &none);
    let cok = Subquotient::new(q, n, n.dims.iter().map(|&d| Mat::identity(d)).collect(), &image_vecs);
    let projection = RepMor {
        comps: (0..nv)
            .map(|v| {
                let cols: Vec<_> = (0..n.dims[v])
                    .map(|j| {
                        let mut e = vec![Scalar::zero(); n.dims[v]];
                        e[j] = Scalar::one();
                        cok.project(v, &e)
                    })
                    .collect();
                Mat::from_columns(cok.rep.dims[v], &cols)
            })
            .collect(),
    };
    MorphismParts {
        kernel_inclusion: ker.lift_mor(),
        image_inclusion: im.lift_mor(),
        kernel: ker.rep,
        image: im.rep,
        cokernel: cok.rep,
        cokernel_projection: projection,
    }
}

/// Sub-representation generated by nothing but a vertexwise kernel: `ker f` with its inclusion.
pub fn kernel(q: &Quiver, m: &Rep, n: &Rep, f: &RepMor) -> (Rep, RepMor) {
    let p = morphism_parts(q, m, n, f);
    (p.kernel, p.kernel_inclusion)
}

/// Direct sum of standard projectives `P(v)` for the listed vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ProjSum(pub Vec<usize>);

/// Direct sum of standard injectives `I(v)` for the listed vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InjSum(pub Vec<usize>);

/// `Hom(P(v), P(w))` and `Hom(I(v), I(w))` are one-dimensional exactly when
/// there is a path `w ~> v`. This is the support pattern of coefficient
/// matrices (rows indexed by `w`, columns by `v`).
pub fn coefficient_mask(q: &Quiver, src: &[usize], tgt: &[usize]) -> Vec<Vec<bool>> {
    tgt.iter().map(|&w| src.iter().map(|&v| q.reaches(w, v)).collect()).collect()
}

impl ProjSum {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices of summands `k` with `P(v_k)_u != 0`, i.e. the basis of the sum at `u`.
    fn basis_at(&self, q: &Quiver, u: usize) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| q.reaches(self.0[k], u)).collect()
    }

    pub fn to_rep(&self, q: &Quiver) -> Rep {
        let bases: Vec<_> = (0..q.vertex_count()).map(|u| self.basis_at(q, u)).collect();
        let dims = bases.iter().map(Vec::len).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let mut m = Mat::zeros(bases[t].len(), bases[s].len());
                for (j, k) in bases[s].iter().enumerate() {
                    let i = bases[t].iter().position(|x| x == k).expect("paths extend along arrows");
                    m[(i, j)] = Scalar::one();
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    /// Morphism `self -> tgt` with path coefficients `coeffs` (`tgt.len() x self.len()`).
    pub fn mor(&self, q: &Quiver, tgt: &ProjSum, coeffs: &Mat) -> RepMor {
        assert_eq!(coeffs.shape(), (tgt.len(), self.len()));
        RepMor {
            comps: (0..q.vertex_count())
                .map(|u| {
                    let (sb, tb) = (self.basis_at(q, u), tgt.basis_at(q, u));
                    coeffs.select(&tb, &sb)
                })
                .collect(),
        }
    }

    /// Reads the path coefficients of a morphism `self -> tgt`.
    pub fn coefficients(&self, q: &Quiver, tgt: &ProjSum, f: &RepMor) -> Mat {
        let mut c = Mat::zeros(tgt.len(), self.len());
        for (k, &v) in self.0.iter().enumerate() {
            let (sb, tb) = (self.basis_at(q, v), tgt.basis_at(q, v));
            let j = sb.iter().position(|&x| x == k).expect("generator of P(v) lives at v");
            for (i, &l) in tb.iter().enumerate() {
                c[(l, k)] = f.comps[v][(i, j)].clone();
            }
        }
        c
    }

    pub fn concat(&self, other: &ProjSum) -> ProjSum {
        ProjSum(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl InjSum {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn basis_at(&self, q: &Quiver, u: usize) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| q.reaches(u, self.0[k])).collect()
    }

    pub fn to_rep(&self, q: &Quiver) -> Rep {
        let bases: Vec<_> = (0..q.vertex_count()).map(|u| self.basis_at(q, u)).collect();
        let dims = bases.iter().map(Vec::len).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let mut m = Mat::zeros(bases[t].len(), bases[s].len());
                for (i, k) in bases[t].iter().enumerate() {
                    let j = bases[s].iter().position(|x| x == k).expect("paths extend backwards along arrows");
                    m[(i, j)] = Scalar::one();
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    pub fn mor(&self, q: &Quiver, tgt: &InjSum, coeffs: &Mat) -> RepMor {
        assert_eq!(coeffs.shape(), (tgt.len(), self.len()));
        RepMor {
            comps: (0..q.vertex_count())
                .map(|u| {
                    let (sb, tb) = (self.basis_at(q, u), tgt.basis_at(q, u));
                    coeffs.select(&tb, &sb)
                })
                .collect(),
        }
    }

    /// Reads path coefficients: for `I(v_k) -> I(w_l)` the entry of the
    /// component at `w_l` on the cogenerator of `I(w_l)`.
    pub fn coefficients(&self, q: &Quiver, tgt: &InjSum, f: &RepMor) -> Mat {
        let mut c = Mat::zeros(tgt.len(), self.len());
        for (l, &w) in tgt.0.iter().enumerate() {
            let (sb, tb) = (self.basis_at(q, w), tgt.basis_at(q, w));
            let i = tb.iter().position(|&x| x == l).expect("cogenerator of I(w) lives at w");
            for (j, &k) in sb.iter().enumerate() {
                c[(l, k)] = f.comps[w][(i, j)].clone();
            }
        }
        c
    }
}

pub fn projective(q: &Quiver, v: usize) -> Rep {
    ProjSum(vec![v]).to_rep(q)
}

pub fn injective(q: &Quiver, v: usize) -> Rep {
    InjSum(vec![v]).to_rep(q)
}

pub fn simple(q: &Quiver, v: usize) -> Rep {
    let dims = (0..q.vertex_count()).map(|u| usize::from(u == v)).collect();
    let maps = q.arrows().iter().map(|&(s, t)| Mat::zeros(usize::from(t == v), usize::from(s == v))).collect();
    Rep { dims, maps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

pub fn standard_rep(q: &Quiver, kind: StandardKind, v: usize) -> Result<Rep> {
    if v >= q.vertex_count() {
        return Err(Error::Invalid(format!("vertex {v} out of range")));
    }
    Ok(match kind {
        StandardKind::Projective => projective(q, v),
        StandardKind::Injective => injective(q, v),
        StandardKind::Simple => simple(q, v),
    })
}

/// Top of `m` at each vertex: a basis of a complement of the arrow images landing there.
fn top_generators(q: &Quiver, m: &Rep) -> Vec<Vec<Vec<Scalar>>> {
    (0..q.vertex_count())
        .map(|v| {
            let incoming: Vec<Vec<Scalar>> = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, &(_, t))| t == v)
                .flat_map(|(a, _)| column_space(&m.maps[a]))
                .collect();
            crate::linalg::quotient_basis(m.dims[v], &incoming)
        })
        .collect()
}

/// Projective cover `P -> m`, with `P` a sum of standard projectives.
pub fn projective_cover(q: &Quiver, m: &Rep) -> (ProjSum, RepMor) {
    let gens = top_generators(q, m);
    let mut verts = Vec::new();
    let mut elems = Vec::new();
    for (v, g) in gens.into_iter().enumerate() {
        for x in g {
            verts.push(v);
            elems.push(x);
        }
    }
    let p = ProjSum(verts);
    // The generator of P(v_k) maps to x_k; the path v_k ~> u maps to M_path x_k.
    let comps = (0..q.vertex_count())
        .map(|u| {
            let basis = p.basis_at(q, u);
            let cols: Vec<_> = basis
                .iter()
                .map(|&k| m.path_map(q, p.0[k], u).expect("reachable").mul_vec(&elems[k]))
                .collect();
            Mat::from_columns(m.dims[u], &cols)
        })
        .collect();
    (p, RepMor { comps })
}

/// Injective envelope `m -> I`, with `I` a sum of standard injectives.
pub fn injective_envelope(q: &Quiver, m: &Rep) -> (InjSum, RepMor) {
    let mut verts = Vec::new();
    let mut functionals: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..q.vertex_count() {
        let d = m.dims[v];
        if d == 0 {
            continue;
        }
        let outgoing: Vec<&Mat> =
            q.arrows().iter().enumerate().filter(|(_, &(s, _))| s == v).map(|(a, _)| &m.maps[a]).collect();
        let socle = if outgoing.is_empty() {
            (0..d)
                .map(|j| {
                    let mut e = vec![Scalar::zero(); d];
                    e[j] = Scalar::one();
                    e
                })
                .collect()
        } else {
            let stacked = outgoing.iter().skip(1).fold(outgoing[0].clone(), |acc, x| acc.vstack(x));
            kernel_basis(&stacked)
        };
        if socle.is_empty() {
            continue;
        }
        // Complete the socle to a basis; the first rows of the inverse restrict to a dual basis on it.
        let mut basis = socle.clone();
        basis.extend(crate::linalg::quotient_basis(d, &socle));
        let inv = crate::linalg::inverse(&Mat::from_columns(d, &basis)).expect("completed basis");
        for i in 0..socle.len() {
            verts.push(v);
            functionals.push(inv.row(i).to_vec());
        }
    }
    let inj = InjSum(verts);
    // The functional xi on M_v induces M -> I(v): at u, x |-> xi(M_{u~>v} x).
    let comps = (0..q.vertex_count())
        .map(|u| {
            let basis = inj.basis_at(q, u);
            let rows: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|&k| {
                    let pm = m.path_map(q, u, inj.0[k]).expect("reachable");
                    pm.transpose().mul_vec(&functionals[k])
                })
                .collect();
            Mat::from_columns(m.dims[u], &rows).transpose()
        })
        .collect();
    (inj, RepMor { comps })
}

/// Minimal projective resolution `0 -> P1 -> P0 -> m -> 0` (the algebra is hereditary).
/// Returns `(P1, P0, d)` with `d` the coefficient matrix of `P1 -> P0`.
pub fn projective_resolution(q: &Quiver, m: &Rep) -> (ProjSum, ProjSum, Mat) {
    let (p0, cover) = projective_cover(q, m);
    let p0_rep = p0.to_rep(q);
    let (k, incl) = kernel(q, &p0_rep, m, &cover);
    let (p1, kcover) = projective_cover(q, &k);
    let d = incl.compose(&kcover);
    let coeffs = p1.coefficients(q, &p0, &d);
    (p1, p0, coeffs)
}

/// Minimal injective copresentation `0 -> m -> I0 -> I1 -> 0`, with the coefficient matrix of `I0 -> I1`.
pub fn injective_copresentation(q: &Quiver, m: &Rep) -> (InjSum, InjSum, Mat) {
    let (i0, env) = injective_envelope(q, m);
    let i0_rep = i0.to_rep(q);
    let parts = morphism_parts(q, m, &i0_rep, &env);
    let (i1, env1) = injective_envelope(q, &parts.cokernel);
    let g = env1.compose(&parts.cokernel_projection);
    let coeffs = i0.coefficients(q, &i1, &g);
    (i0, i1, coeffs)
}

/// Flattened component entries; handy for spanning arguments over morphism spaces.
pub fn flatten_mor(f: &RepMor) -> Vec<Scalar> {
    f.flatten()
}

pub fn dimension_vector_string(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn scalar_mat_from_i64(rows: &[&[i64]]) -> Mat {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| scalar(x)).collect()).collect())
}

pub fn format_matrix(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| m.row(i).iter().map(format_scalar).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::parse("A2").unwrap()
    }

    #[test]
    fn standard_reps_of_a2() {
        let q = a2();
        let p1 = projective(&q, 0);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.map(0), &Mat::identity(1));
        assert_eq!(projective(&q, 1).dims(), &[0, 1]);
        assert_eq!(injective(&q, 0), simple(&q, 0));
        assert_eq!(injective(&q, 1).dims(), &[1, 1]);
    }

    #[test]
    fn hom_dims_of_a2() {
        let q = a2();
        let (p1, p2, s1) = (projective(&q, 0), projective(&q, 1), simple(&q, 0));
        assert_eq!(hom_dim(&q, &p1, &p2), 0);
        assert_eq!(hom_dim(&q, &p2, &p1), 1);
        assert_eq!(hom_dim(&q, &s1, &s1), 1);
        for f in hom_basis(&q, &p2, &p1) {
            assert!(f.is_valid(&q, &p2, &p1));
        }
    }

    #[test]
    fn euler_and_ext() {
        let q = a2();
        assert_eq!(euler_form(&q, &[1, 0], &[0, 1]), -1);
        assert_eq!(euler_form(&q, &[1, 1], &[1, 1]), 1);
        assert_eq!(euler_form(&q, &[2, 3], &[0, 0]), 0);
        let (p1, p2, s1) = (projective(&q, 0), projective(&q, 1), simple(&q, 0));
        assert_eq!(ext1_dim(&q, &s1, &p2).unwrap(), 1);
        assert_eq!(ext1_dim(&q, &p2, &s1).unwrap(), 0);
        for x in [&p1, &p2, &s1] {
            assert_eq!(ext1_dim(&q, &p1, x).unwrap(), 0);
        }
    }

    #[test]
    fn parts_of_inclusion_zero_and_identity() {
        let q = a2();
        let (p1, p2) = (projective(&q, 0), projective(&q, 1));
        let incl = hom_basis(&q, &p2, &p1).remove(0);
        let parts = morphism_parts(&q, &p2, &p1, &incl);
        assert!(parts.kernel.is_zero());
        assert_eq!(parts.cokernel.dims(), &[1, 0]);
        assert_eq!(parts.image.dims(), &[0, 1]);

        let zero = RepMor::zero(&p1, &p2);
        let parts = morphism_parts(&q, &p1, &p2, &zero);
        assert_eq!(parts.kernel.dims(), p1.dims());
        assert_eq!(parts.cokernel.dims(), p2.dims());

        let parts = morphism_parts(&q, &p1, &p1, &RepMor::identity(&p1));
        assert!(parts.kernel.is_zero() && parts.cokernel.is_zero());
        assert!(parts.cokernel_projection.is_valid(&q, &p1, &parts.cokernel));
        assert!(parts.kernel_inclusion.is_valid(&q, &parts.kernel, &p1));
    }

    #[test]
    fn resolution_of_s1() {
        let q = a2();
        let (p1, p0, d) = projective_resolution(&q, &simple(&q, 0));
        assert_eq!(p1, ProjSum(vec![1]));
        assert_eq!(p0, ProjSum(vec![0]));
        assert!(!d.is_zero());
        let (i0, i1, g) = injective_copresentation(&q, &projective(&q, 1));
        assert_eq!(i0, InjSum(vec![1]));
        assert_eq!(i1, InjSum(vec![0]));
        assert!(!g.is_zero());
    }

    #[test]
    fn coefficient_round_trip() {
        let q = Quiver::parse("D4:1>2<3,2<4").unwrap();
        let src = ProjSum(vec![1, 0, 1]);
        let tgt = ProjSum(vec![0, 2, 3, 1]);
        let mask = coefficient_mask(&q, &src.0, &tgt.0);
        let mut c = Mat::zeros(4, 3);
        for i in 0..4 {
            for j in 0..3 {
                if mask[i][j] {
                    c[(i, j)] = scalar((i * 3 + j) as i64 + 1);
                }
            }
        }
        let f = src.mor(&q, &tgt, &c);
        assert!(f.is_valid(&q, &src.to_rep(&q), &tgt.to_rep(&q)));
        assert_eq!(src.coefficients(&q, &tgt, &f), c);

        let (isrc, itgt) = (InjSum(src.0.clone()), InjSum(tgt.0.clone()));
        let g = isrc.mor(&q, &itgt, &c);
        assert!(g.is_valid(&q, &isrc.to_rep(&q), &itgt.to_rep(&q)));
        assert_eq!(isrc.coefficients(&q, &itgt, &g), c);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::parse("A3:1>2<3").unwrap();
        let m = ProjSum(vec![0, 2]).to_rep(&q);
        let doc = m.to_json(&q);
        let text = serde_json::to_string(&doc).unwrap();
        let back: RepJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Rep::from_json(&q, &back).unwrap(), m);
        assert_eq!(serde_json::to_string(&Rep::from_json(&q, &back).unwrap().to_json(&q)).unwrap(), text);
    }
}
