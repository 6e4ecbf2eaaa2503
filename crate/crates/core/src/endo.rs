//! Endomorphism algebras of basic objects as structure-constant algebras, their
//! modules, radical, quiver and global dimension, and the functor
//! `G = Hom(T, -)`.
//!
//! Side convention: `Hom(T, X)` is naturally a right `End(T)`-module under
//! precomposition. We write `Γ` for the opposite algebra, with product
//! `x · y = y ∘ x`, and treat `G(X)` as a left `Γ`-module with `γ · φ = φ ∘ γ`.
//! The indecomposable projective at `a` is then `G(T_a) = Hom(T, T_a)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::derived::{ChainMap, Complex, HomSpace, Stalk, StalkSum};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::linalg::{inverse, kernel_basis, rref, solve, Mat, Scalar, Subspace};

/// A finite-dimensional algebra given by structure constants and a complete
/// set of orthogonal idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    /// `mult[x][y]`: coordinates of the product of basis elements `x · y`.
    mult: Vec<Vec<Vec<Scalar>>>,
    idempotents: Vec<Vec<Scalar>>,
}

/// A left module: one action matrix per basis element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    pub dim: usize,
    pub actions: Vec<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraQuiver {
    /// `arrows[a][b]`: number of arrows `a -> b`.
    pub arrows: Vec<Vec<usize>>,
    /// `cartan[b][a] = dim e_a Γ e_b`, i.e. `dim Hom(T_a, T_b)` for an endomorphism algebra.
    pub cartan: Vec<Vec<usize>>,
}

impl AlgebraQuiver {
    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().flatten().sum()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.arrows.len()).any(|a| self.arrows[a][a] > 0)
    }

    pub fn has_two_cycles(&self) -> bool {
        let n = self.arrows.len();
        (0..n).any(|a| (a + 1..n).any(|b| self.arrows[a][b] > 0 && self.arrows[b][a] > 0))
    }

    /// No oriented cycles at all (loops included).
    pub fn is_acyclic(&self) -> bool {
        let n = self.arrows.len();
        let mut indeg: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| self.arrows[a][b] > 0).count()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for w in 0..n {
                if self.arrows[v][w] > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        seen == n
    }
}

fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

fn axpy(acc: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (s, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *s += a * v;
        }
    }
}

/// Column basis of the span of `vecs` (as an echelon basis).
fn span(dim: usize, vecs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    Subspace::new(dim, vecs).basis().to_vec()
}

impl Algebra {
    pub fn new(dim: usize, mult: Vec<Vec<Vec<Scalar>>>, idempotents: Vec<Vec<Scalar>>) -> Result<Self> {
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch("structure constants".into()));
        }
        Ok(Algebra { dim, mult, idempotents })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn idempotent(&self, a: usize) -> &[Scalar] {
        &self.idempotents[a]
    }

    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (x, ux) in u.iter().enumerate() {
            if ux.is_zero() {
                continue;
            }
            for (y, vy) in v.iter().enumerate() {
                if vy.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ux * vy), &self.mult[x][y]);
            }
        }
        out
    }

    pub fn basis_vec(&self, x: usize) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim);
        v[x] = Scalar::one();
        v
    }

    /// Matrix of `y ↦ x · y`.
    pub fn left_mult(&self, u: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|y| self.product(u, &self.basis_vec(y))).collect();
        Mat::from_columns(self.dim, &cols)
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|x| {
            (0..d).all(|y| {
                (0..d).all(|z| {
                    let xy_z = self.product(&self.mult[x][y], &self.basis_vec(z));
                    let x_yz = self.product(&self.basis_vec(x), &self.mult[y][z]);
                    xy_z == x_yz
                })
            })
        })
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = zero_vec(self.dim);
        for e in &self.idempotents {
            axpy(&mut u, &Scalar::one(), e);
        }
        u
    }

    /// Checks that the idempotents are orthogonal and sum to a two-sided unit.
    pub fn idempotents_ok(&self) -> bool {
        let u = self.unit();
        let unit_ok = (0..self.dim).all(|x| {
            let b = self.basis_vec(x);
            self.product(&u, &b) == b && self.product(&b, &u) == b
        });
        let orth = self.idempotents.iter().enumerate().all(|(i, e)| {
            self.idempotents.iter().enumerate().all(|(j, f)| {
                let p = self.product(e, f);
                if i == j {
                    p == *e
                } else {
                    p.iter().all(Zero::is_zero)
                }
            })
        });
        unit_ok && orth
    }

    /// Radical in characteristic zero: `{x : Tr(L_x L_y) = 0 for all y}`.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        let l: Vec<Mat> = (0..self.dim).map(|x| self.left_mult(&self.basis_vec(x))).collect();
        let mut gram = Mat::zeros(self.dim, self.dim);
        for x in 0..self.dim {
            for y in x..self.dim {
                let t = l[x].mul(&l[y]).trace();
                gram[(x, y)] = t.clone();
                gram[(y, x)] = t;
            }
        }
        span(self.dim, &kernel_basis(&gram))
    }

    /// Products of `a` with `b` elementwise, spanned.
    fn products(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let prods: Vec<Vec<Scalar>> = a.iter().flat_map(|x| b.iter().map(move |y| self.product(x, y))).collect();
        span(self.dim, &prods)
    }

    /// Smallest `k` with `rad^k = 0`, if it happens by `rad^{dim+1}`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let rad = self.radical();
        let mut power = rad.clone();
        for k in 1..=self.dim + 1 {
            if power.is_empty() {
                return Some(k);
            }
            power = self.products(&power, &rad);
        }
        None
    }

    /// `dim e_a S e_b` for a subspace `S` given by a spanning set.
    fn corner_dim(&self, s: &[Vec<Scalar>], a: usize, b: usize) -> usize {
        let (ea, eb) = (&self.idempotents[a], &self.idempotents[b]);
        let v: Vec<Vec<Scalar>> = s.iter().map(|x| self.product(&self.product(ea, x), eb)).collect();
        Subspace::new(self.dim, &v).dim()
    }

    /// Arrows `a -> b` counted as `dim e_a (rad/rad²) e_b`; for an endomorphism
    /// algebra these are the irreducible maps `T_a -> T_b`.
    pub fn quiver(&self) -> AlgebraQuiver {
        let rad = self.radical();
        let rad2 = self.products(&rad, &rad);
        let n = self.vertex_count();
        let all: Vec<Vec<Scalar>> = (0..self.dim).map(|x| self.basis_vec(x)).collect();
        let arrows = (0..n)
            .map(|a| (0..n).map(|b| self.corner_dim(&rad, a, b) - self.corner_dim(&rad2, a, b)).collect())
            .collect();
        let cartan = (0..n).map(|b| (0..n).map(|a| self.corner_dim(&all, a, b)).collect()).collect();
        AlgebraQuiver { arrows, cartan }
    }

    /// The same algebra written in the basis given by the columns of `p`.
    pub fn with_basis_change(&self, p: &Mat) -> Result<Algebra> {
        let pinv = inverse(p).ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
        let d = self.dim;
        let newb: Vec<Vec<Scalar>> = (0..d).map(|j| p.column(j)).collect();
        let mult = (0..d)
            .map(|x| (0..d).map(|y| pinv.mul_vec(&self.product(&newb[x], &newb[y]))).collect())
            .collect();
        let idempotents = self.idempotents.iter().map(|e| pinv.mul_vec(e)).collect();
        Algebra::new(d, mult, idempotents)
    }

    pub fn regular_module(&self) -> FdModule {
        FdModule { dim: self.dim, actions: (0..self.dim).map(|x| self.left_mult(&self.basis_vec(x))).collect() }
    }

    /// `Γ e_a`, a summand of the regular module.
    pub fn projective_module(&self, a: usize) -> FdModule {
        let e = &self.idempotents[a];
        let gens: Vec<Vec<Scalar>> = (0..self.dim).map(|x| self.product(&self.basis_vec(x), e)).collect();
        let basis = span(self.dim, &gens);
        self.regular_module().submodule(&basis).expect("left ideal")
    }

    /// The simple top of `Γ e_a`.
    pub fn simple_module(&self, a: usize) -> FdModule {
        let rad = Subspace::new(self.dim, &self.radical());
        // On the simple S_a, x acts by the coefficient of e_a in x modulo the radical.
        let e = &self.idempotents[a];
        let actions = (0..self.dim)
            .map(|x| {
                let ex = self.product(&self.product(e, &self.basis_vec(x)), e);
                let r = rad.reduce(&ex);
                let re = rad.reduce(e);
                let p = re.iter().position(|v| !v.is_zero()).expect("idempotent outside the radical");
                Mat::from_rows(vec![vec![&r[p] / &re[p]]])
            })
            .collect();
        FdModule { dim: 1, actions }
    }

    /// `rad M`: span of the radical acting on `M`.
    fn module_radical(&self, m: &FdModule, rad: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut vecs = Vec::new();
        for r in rad {
            let a = m.action_of(r);
            vecs.extend(a.columns());
        }
        span(m.dim, &vecs)
    }

    /// Generators of a minimal projective cover: `(vertex, vector in e_a M)` pairs.
    fn top_generators(&self, m: &FdModule, rad: &[Vec<Scalar>]) -> Vec<(usize, Vec<Scalar>)> {
        let rm = self.module_radical(m, rad);
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            let ea = m.action_of(&self.idempotents[a]);
            let corner: Vec<Vec<Scalar>> = span(m.dim, &ea.columns());
            let mut acc: Vec<Vec<Scalar>> = rm.iter().map(|v| ea.mul_vec(v)).collect();
            let mut have = Subspace::new(m.dim, &acc).dim();
            for v in corner {
                acc.push(v.clone());
                let d = Subspace::new(m.dim, &acc).dim();
                if d > have {
                    have = d;
                    out.push((a, v));
                } else {
                    acc.pop();
                }
            }
        }
        out
    }

    /// Projective cover `⊕ Γ e_{a_i} -> M`: returns the tops, the cover module and the map matrix.
    fn projective_cover(&self, m: &FdModule, rad: &[Vec<Scalar>]) -> (Vec<usize>, FdModule, Mat) {
        let gens = self.top_generators(m, rad);
        let mut parts = Vec::new();
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        let mut tops = Vec::new();
        for (a, t) in gens {
            let p = self.projective_module(a);
            // Basis of Γ e_a inside Γ, to evaluate x ↦ x · t.
            let e = &self.idempotents[a];
            let gens: Vec<Vec<Scalar>> = (0..self.dim).map(|x| self.product(&self.basis_vec(x), e)).collect();
            for b in span(self.dim, &gens) {
                cols.push(m.action_of(&b).mul_vec(&t));
            }
            parts.push(p);
            tops.push(a);
        }
        let cover = FdModule::direct_sum(self.dim, &parts);
        (tops, cover, Mat::from_columns(m.dim, &cols))
    }

    /// Minimal projective resolution tops, stage by stage. Stops at zero, or
    /// after `cutoff + 2` stages, which witnesses projective dimension `> cutoff`.
    pub fn resolution_tops(&self, m: &FdModule, cutoff: usize) -> Vec<Vec<usize>> {
        let rad = self.radical();
        let mut cur = m.clone();
        let mut stages = Vec::new();
        while cur.dim > 0 && stages.len() <= cutoff + 1 {
            let (tops, cover, map) = self.projective_cover(&cur, &rad);
            stages.push(tops);
            let k = kernel_basis(&map);
            cur = cover.submodule(&k).expect("kernel of a module map");
        }
        stages
    }

    /// `None` when some simple needs more than `cutoff` steps.
    pub fn global_dimension(&self, cutoff: usize) -> Option<usize> {
        let mut gd = 0;
        for a in 0..self.vertex_count() {
            let stages = self.resolution_tops(&self.simple_module(a), cutoff);
            if stages.len() > cutoff + 1 {
                return None;
            }
            gd = gd.max(stages.len().saturating_sub(1));
        }
        Some(gd)
    }

    /// `ext[a][b] = dim Ext¹(S_a, S_b)`, read off the first syzygy's top.
    pub fn ext1_simples(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        (0..n)
            .map(|a| {
                let stages = self.resolution_tops(&self.simple_module(a), 2);
                let mut row = vec![0; n];
                if let Some(p1) = stages.get(1) {
                    for &b in p1 {
                        row[b] += 1;
                    }
                }
                row
            })
            .collect()
    }
}

impl FdModule {
    pub fn zero(alg_dim: usize) -> Self {
        FdModule { dim: 0, actions: vec![Mat::zeros(0, 0); alg_dim] }
    }

    pub fn action_of(&self, u: &[Scalar]) -> Mat {
        let mut acc = Mat::zeros(self.dim, self.dim);
        for (x, c) in u.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.actions[x].scale(c));
            }
        }
        acc
    }

    pub fn direct_sum(alg_dim: usize, parts: &[FdModule]) -> FdModule {
        let dim = parts.iter().map(|p| p.dim).sum();
        let actions = (0..alg_dim)
            .map(|x| Mat::block_diag(&parts.iter().map(|p| &p.actions[x]).collect::<Vec<_>>()))
            .collect();
        FdModule { dim, actions }
    }

    /// The submodule with the given basis (columns), `None` if it is not invariant.
    pub fn submodule(&self, basis: &[Vec<Scalar>]) -> Option<FdModule> {
        let b = Mat::from_columns(self.dim, basis);
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let img = a.mul(&b);
            let mut cols = Vec::with_capacity(basis.len());
            for j in 0..img.cols() {
                cols.push(solve(&b, &img.column(j)).expect("shape")?);
            }
            actions.push(Mat::from_columns(basis.len(), &cols));
        }
        Some(FdModule { dim: basis.len(), actions })
    }

    /// Checks `A_{x·y} = A_x A_y` and that the unit acts as the identity.
    pub fn is_module_over(&self, alg: &Algebra) -> bool {
        let d = alg.dim();
        let assoc = (0..d).all(|x| {
            (0..d).all(|y| self.action_of(&alg.mult[x][y]) == self.actions[x].mul(&self.actions[y]))
        });
        assoc && self.action_of(&alg.unit()) == Mat::identity(self.dim)
    }
}

/// Dimension of `Hom_Γ(u, v)`: matrices `F` with `F A^u_x = A^v_x F` for all `x`.
pub fn module_hom_dim(u: &FdModule, v: &FdModule) -> Result<usize> {
    if u.actions.len() != v.actions.len() {
        return Err(Error::DimensionMismatch("modules over different algebras".into()));
    }
    let (p, q) = (u.dim, v.dim);
    let nv = p * q;
    if nv == 0 {
        return Ok(0);
    }
    // F is q×p, unknown F[i][j] at index i*p + j.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (au, av) in u.actions.iter().zip(&v.actions) {
        for i in 0..q {
            for j in 0..p {
                let mut row = zero_vec(nv);
                for k in 0..p {
                    if !au[(k, j)].is_zero() {
                        row[i * p + k] += &au[(k, j)];
                    }
                }
                for k in 0..q {
                    if !av[(i, k)].is_zero() {
                        row[k * p + j] -= &av[(i, k)];
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(nv);
    }
    Ok(nv - rref(&Mat::from_rows(rows)).rank)
}

/// A basis element of `End(T)`: the `index`-th basis map `T_src -> T_tgt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisLabel {
    pub src: usize,
    pub tgt: usize,
    pub index: usize,
}

/// `End(T)` for a basic object `T`, as the algebra `Γ = End(T)^op`.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub summands: Vec<Stalk>,
    pub labels: Vec<BasisLabel>,
    pub algebra: Algebra,
    blocks: BTreeMap<(usize, usize), usize>,
}

impl EndoAlgebra {
    pub fn new(inst: &Instance, t: &StalkSum) -> Result<Self> {
        if !t.is_basic() {
            return Err(Error::Invalid(format!("{} is not basic", inst.sum_name(t))));
        }
        let summands = t.stalks();
        let n = summands.len();
        let mut labels = Vec::new();
        let mut blocks = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let h = inst.stalk_hom(summands[a], summands[b]);
                blocks.insert((a, b), labels.len());
                labels.extend((0..h.dim()).map(|index| BasisLabel { src: a, tgt: b, index }));
            }
        }
        let d = labels.len();
        let maps: Vec<ChainMap> = labels
            .iter()
            .map(|l| inst.stalk_hom(summands[l.src], summands[l.tgt]).basis_map(l.index))
            .collect();
        // Γ-product x · y = y ∘ x, defined when tgt(x) = src(y).
        let mult = (0..d)
            .map(|x| {
                (0..d)
                    .map(|y| {
                        let (lx, ly) = (labels[x], labels[y]);
                        let mut v = zero_vec(d);
                        if lx.tgt == ly.src {
                            let h = inst.stalk_hom(summands[lx.src], summands[ly.tgt]);
                            let c = h.coords(&maps[y].compose(&maps[x]));
                            let off = blocks[&(lx.src, ly.tgt)];
                            for (k, ck) in c.into_iter().enumerate() {
                                v[off + k] = ck;
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let idempotents = (0..n)
            .map(|a| {
                let c = inst.identity_coords(summands[a]);
                let off = blocks[&(a, a)];
                let mut v = zero_vec(d);
                for (k, ck) in c.into_iter().enumerate() {
                    v[off + k] = ck;
                }
                v
            })
            .collect();
        Ok(EndoAlgebra { summands, labels, algebra: Algebra::new(d, mult, idempotents)?, blocks })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn block_offset(&self, src: usize, tgt: usize) -> usize {
        self.blocks[&(src, tgt)]
    }

    pub fn quiver(&self) -> AlgebraQuiver {
        self.algebra.quiver()
    }

    pub fn index_of(&self, s: Stalk) -> Option<usize> {
        self.summands.iter().position(|&x| x == s)
    }
}

/// `G(x) = ⊕_a Hom(T_a, x)` with the Hom spaces it was built from.
pub struct GImage {
    pub spaces: Vec<HomSpace>,
    pub module: FdModule,
}

impl GImage {
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.spaces.len());
        let mut acc = 0;
        for h in &self.spaces {
            out.push(acc);
            acc += h.dim();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.spaces.iter().map(HomSpace::dim).collect()
    }
}

pub fn g_module(inst: &Instance, endo: &EndoAlgebra, x: &Complex) -> GImage {
    let spaces: Vec<HomSpace> =
        endo.summands.iter().map(|&t| HomSpace::new(inst.quiver(), &inst.present_stalk(t), x)).collect();
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let total: usize = dims.iter().sum();
    let mut off = vec![0; dims.len()];
    for a in 1..dims.len() {
        off[a] = off[a - 1] + dims[a - 1];
    }
    let bases: Vec<Vec<ChainMap>> = spaces.iter().map(HomSpace::basis).collect();
    let actions = endo
        .labels
        .iter()
        .map(|l| {
            // γ: T_a -> T_b sends φ ∈ Hom(T_b, x) to φ ∘ γ ∈ Hom(T_a, x).
            let gamma = inst.stalk_hom(endo.summands[l.src], endo.summands[l.tgt]).basis_map(l.index);
            let mut m = Mat::zeros(total, total);
            for (k, phi) in bases[l.tgt].iter().enumerate() {
                let c = spaces[l.src].coords(&phi.compose(&gamma));
                for (i, ci) in c.into_iter().enumerate() {
                    m[(off[l.src] + i, off[l.tgt] + k)] = ci;
                }
            }
            m
        })
        .collect();
    GImage { spaces, module: FdModule { dim: total, actions } }
}

/// Ranks of the components `Hom(T_a, x) -> Hom(T_a, y)`, `φ ↦ f ∘ φ`, of `G(f)`.
pub fn g_map_ranks(gx: &GImage, gy: &GImage, f: &ChainMap) -> Vec<usize> {
    gx.spaces
        .iter()
        .zip(&gy.spaces)
        .map(|(hx, hy)| {
            if hx.dim() == 0 || hy.dim() == 0 {
                return 0;
            }
            let cols: Vec<Vec<Scalar>> = hx.basis().iter().map(|phi| hy.coords(&f.compose(phi))).collect();
            Mat::from_columns(hy.dim(), &cols).rank()
        })
        .collect()
}

/// Rank of `G(f)`.
pub fn g_map_rank(gx: &GImage, gy: &GImage, f: &ChainMap) -> usize {
    g_map_ranks(gx, gy, f).iter().sum()
}

/// Dimension of the subspace of `Hom(m, n)` spanned by composites through summands of `through`.
pub fn factoring_dim(inst: &Instance, m: &Complex, n: &Complex, through: &StalkSum) -> usize {
    let q = inst.quiver();
    let hmn = HomSpace::new(q, m, n);
    if hmn.dim() == 0 {
        return 0;
    }
    let mut vecs = Vec::new();
    for s in through.stalks() {
        let ps = inst.present_stalk(s);
        let (into, out) = (HomSpace::new(q, m, &ps), HomSpace::new(q, &ps, n));
        for alpha in into.basis() {
            for beta in out.basis() {
                vecs.push(hmn.coords(&beta.compose(&alpha)));
            }
        }
    }
    Subspace::new(hmn.dim(), &vecs).dim()
}

/// Summary served to clients and printed by the CLI.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EndoSummary {
    pub dim: usize,
    pub arrows: Vec<Vec<usize>>,
    pub cartan: Vec<Vec<usize>>,
    pub acyclic: bool,
    pub loops: bool,
    pub two_cycles: bool,
    pub global_dimension: Option<usize>,
}

pub fn summarize(endo: &EndoAlgebra, cutoff: usize) -> EndoSummary {
    let q = endo.quiver();
    EndoSummary {
        dim: endo.dim(),
        acyclic: q.is_acyclic(),
        loops: q.has_loops(),
        two_cycles: q.has_two_cycles(),
        global_dimension: endo.algebra.global_dimension(cutoff),
        arrows: q.arrows,
        cartan: q.cartan,
    }
}

/// `k[x]/(x²)`: the commutative local algebra of dimension 2 with square-zero radical.
pub fn dual_numbers() -> Algebra {
    let one = Scalar::one();
    let z = Scalar::zero();
    let mult = vec![
        vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
        vec![vec![z.clone(), one.clone()], vec![z.clone(), z.clone()]],
    ];
    Algebra::new(2, mult, vec![vec![one, z]]).expect("fixed shape")
}

/// Path algebra of `1 -> 2` with basis `e1, e2, a`, as a fixture.
pub fn a2_path_algebra() -> Algebra {
    let s = crate::linalg::scalar;
    let e = |i: usize| {
        let mut v = vec![s(0); 3];
        v[i] = s(1);
        v
    };
    let zero = vec![s(0); 3];
    // Products in path order "first x then y" written y·x? Use the convention a = e2·a·e1.
    let mut mult = vec![vec![zero.clone(); 3]; 3];
    mult[0][0] = e(0);
    mult[1][1] = e(1);
    mult[1][2] = e(2);
    mult[2][0] = e(2);
    Algebra::new(3, mult, vec![e(0), e(1)]).expect("fixed shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Instance {
        Instance::parse("A2").unwrap()
    }

    fn endo(inst: &Instance, s: &str) -> EndoAlgebra {
        EndoAlgebra::new(inst, &inst.parse_sum(s).unwrap()).unwrap()
    }

    #[test]
    fn dims_of_small_endomorphism_algebras() {
        let inst = a2();
        assert_eq!(endo(&inst, "P1,P2").dim(), 3);
        assert_eq!(endo(&inst, "P1,S1").dim(), 3);
        assert_eq!(endo(&inst, "P1,S1[1]").dim(), 2);
        for s in ["P1,P2", "P1,S1", "P1,S1[1]", "S1,P2[1]"] {
            let e = endo(&inst, s);
            assert!(e.algebra.is_associative(), "{s}");
            assert!(e.algebra.idempotents_ok(), "{s}");
            assert!(e.algebra.regular_module().is_module_over(&e.algebra), "{s}");
        }
    }

    #[test]
    fn quivers_and_cartan() {
        let inst = a2();
        let q = endo(&inst, "P1,P2").quiver();
        assert_eq!(q.arrow_count(), 1);
        // P1 is summand 0, P2 summand 1; the map P2 -> P1 is the arrow.
        assert_eq!(q.arrows, vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(q.cartan, vec![vec![1, 1], vec![0, 1]]);
        let q = endo(&inst, "P1,S1[1]").quiver();
        assert_eq!(q.arrow_count(), 0);
        assert_eq!(q.cartan, vec![vec![1, 0], vec![0, 1]]);
        let loop_q = dual_numbers().quiver();
        assert_eq!(loop_q.arrows, vec![vec![1]]);
        assert!(loop_q.has_loops() && !loop_q.is_acyclic());
    }

    #[test]
    fn global_dimensions() {
        let inst = a2();
        assert_eq!(endo(&inst, "P1,P2").algebra.global_dimension(4), Some(1));
        assert_eq!(endo(&inst, "P1[1],P2[1]").algebra.global_dimension(4), Some(1));
        assert!(endo(&inst, "S1,P2[1]").algebra.global_dimension(4).unwrap() <= 2);
        assert_eq!(dual_numbers().global_dimension(5), None);
        assert_eq!(a2_path_algebra().global_dimension(3), Some(1));
    }

    #[test]
    fn module_homs() {
        let alg = a2_path_algebra();
        assert!(alg.is_associative() && alg.idempotents_ok());
        let reg = alg.regular_module();
        assert!(module_hom_dim(&reg, &reg).unwrap() >= 1);
        let (s0, s1) = (alg.simple_module(0), alg.simple_module(1));
        assert!(s0.is_module_over(&alg) && s1.is_module_over(&alg));
        assert_eq!(module_hom_dim(&s0, &s1).unwrap(), 0);
        // Γ e_a has simple top S_a.
        assert_eq!(module_hom_dim(&alg.projective_module(0), &s0).unwrap(), 1);
        assert_eq!(module_hom_dim(&alg.projective_module(1), &s1).unwrap(), 1);
        let e = endo(&a2(), "P1,P2");
        let (t0, t1) = (e.algebra.simple_module(0), e.algebra.simple_module(1));
        assert_eq!(module_hom_dim(&t0, &t1).unwrap(), 0);
        assert!(module_hom_dim(&t0, &FdModule::zero(2)).is_err());
    }

    #[test]
    fn g_module_examples() {
        let inst = a2();
        let e = endo(&inst, "P1,S1");
        let s = |t: &str| inst.present_stalk(inst.parse_stalk(t).unwrap());
        let g = g_module(&inst, &e, &s("S1"));
        assert_eq!(g.dim(), 2);
        assert!(g.module.is_module_over(&e.algebra));
        assert_eq!(g_module(&inst, &e, &s("P2[1]")).dim(), 1);
        let t = inst.present(&inst.parse_sum("P1,S1").unwrap());
        let reg = g_module(&inst, &e, &t);
        assert_eq!(reg.dim(), 3);
        assert_eq!(module_hom_dim(&reg.module, &e.algebra.regular_module()).unwrap(), 3);
    }

    #[test]
    fn factoring_examples() {
        let inst = a2();
        let t1 = inst.parse_sum("P1[1],S1[1]").unwrap();
        let s = |t: &str| inst.present_stalk(inst.parse_stalk(t).unwrap());
        assert_eq!(factoring_dim(&inst, &s("S1[1]"), &s("S1[1]"), &t1), 1);
        assert_eq!(factoring_dim(&inst, &s("P2"), &s("P1"), &t1), 0);
        assert_eq!(factoring_dim(&inst, &Complex::zero(), &s("P1"), &t1), 0);
    }

    #[test]
    fn arrows_survive_basis_change() {
        let inst = Instance::parse("A3").unwrap();
        let e = endo(&inst, "P1,P2,P3");
        let d = e.dim();
        let mut p = Mat::identity(d);
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    p[(i, j)] = crate::linalg::scalar(((i * 7 + j * 3) % 5) as i64 - 2);
                }
            }
        }
        if inverse(&p).is_none() {
            p = Mat::identity(d);
        }
        let changed = e.algebra.with_basis_change(&p).unwrap();
        assert!(changed.is_associative());
        assert_eq!(changed.quiver(), e.quiver());
    }
}
