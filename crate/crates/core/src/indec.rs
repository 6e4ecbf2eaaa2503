//! Indecomposable representations, enumerated as `τ⁻¹`-orbits of the projectives.
//!
//! `τ⁻¹ M` is computed from a minimal injective copresentation
//! `0 -> M -> I0 -> I1 -> 0`: applying `ν⁻¹` keeps the path coefficients and
//! yields `P(I0) -> P(I1)`, whose cokernel is `τ⁻¹ M`. Dually `τ M` is the
//! kernel of `ν` applied to a minimal projective presentation.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::quiver::Quiver;
use crate::rep::{
    hom_basis, injective_copresentation, morphism_parts, projective_resolution, InjSum, ProjSum, Rep, RepMor,
};

#[derive(Clone, Debug)]
pub struct Indec {
    pub id: usize,
    pub name: String,
    pub rep: Rep,
    /// Position in the Auslander–Reiten quiver: `rep ≅ τ^{-step} P(vertex)`.
    pub step: usize,
    pub vertex: usize,
    pub tau: Option<usize>,
    pub tau_inverse: Option<usize>,
    pub is_projective: bool,
    pub is_injective: bool,
    /// Minimal projective resolution `P1 -> P0` with its coefficient matrix.
    pub p1: ProjSum,
    pub p0: ProjSum,
    pub presentation: Mat,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndecSummary {
    pub id: usize,
    pub name: String,
    pub dims: Vec<usize>,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug)]
pub struct IndecTable {
    entries: Vec<Indec>,
    by_dims: HashMap<Vec<usize>, usize>,
    by_name: HashMap<String, usize>,
}

pub fn tau_inverse(q: &Quiver, m: &Rep) -> Rep {
    let (i0, i1, c) = injective_copresentation(q, m);
    nu_inverse_cokernel(q, &i0, &i1, &c)
}

fn nu_inverse_cokernel(q: &Quiver, i0: &InjSum, i1: &InjSum, c: &Mat) -> Rep {
    let (p0, p1) = (ProjSum(i0.0.clone()), ProjSum(i1.0.clone()));
    let f = p0.mor(q, &p1, c);
    morphism_parts(q, &p0.to_rep(q), &p1.to_rep(q), &f).cokernel
}

pub fn tau(q: &Quiver, m: &Rep) -> Rep {
    let (p1, p0, d) = projective_resolution(q, m);
    let (i1, i0) = (InjSum(p1.0), InjSum(p0.0));
    let f = i1.mor(q, &i0, &d);
    morphism_parts(q, &i1.to_rep(q), &i0.to_rep(q), &f).kernel
}

fn digits(dims: &[usize]) -> String {
    dims.iter().map(ToString::to_string).collect()
}

fn is_unit(dims: &[usize]) -> Option<usize> {
    (dims.iter().sum::<usize>() == 1).then(|| dims.iter().position(|&d| d == 1).expect("one entry"))
}

impl IndecTable {
    pub fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let injective_dims: Vec<Vec<usize>> = (0..n).map(|v| InjSum(vec![v]).to_rep(q).dims().to_vec()).collect();
        // Walk all orbits in lockstep so entries come out ordered by (step, vertex).
        let mut current: Vec<Option<Rep>> = (0..n).map(|v| Some(ProjSum(vec![v]).to_rep(q))).collect();
        let mut entries: Vec<Indec> = Vec::new();
        let mut prev_id: Vec<Option<usize>> = vec![None; n];
        let mut step = 0;
        while current.iter().any(Option::is_some) {
            let mut next = vec![None; n];
            for v in 0..n {
                let Some(rep) = current[v].take() else { continue };
                let id = entries.len();
                let dims = rep.dims().to_vec();
                let name = if step == 0 {
                    format!("P{}", v + 1)
                } else if let Some(s) = is_unit(&dims) {
                    format!("S{}", s + 1)
                } else if let Some(i) = injective_dims.iter().position(|d| *d == dims) {
                    format!("I{}", i + 1)
                } else {
                    format!("M{}", digits(&dims))
                };
                let (p1, p0, presentation) = projective_resolution(q, &rep);
                let next_rep = tau_inverse(q, &rep);
                let is_injective = next_rep.is_zero();
                if let Some(p) = prev_id[v] {
                    entries[p].tau_inverse = Some(id);
                }
                entries.push(Indec {
                    id,
                    name,
                    rep,
                    step,
                    vertex: v,
                    tau: prev_id[v],
                    tau_inverse: None,
                    is_projective: step == 0,
                    is_injective,
                    p1,
                    p0,
                    presentation,
                });
                prev_id[v] = Some(id);
                if !is_injective {
                    next[v] = Some(next_rep);
                }
            }
            current = next;
            step += 1;
        }
        let by_dims = entries.iter().map(|e| (e.rep.dims().to_vec(), e.id)).collect();
        let by_name = entries.iter().map(|e| (e.name.clone(), e.id)).collect();
        IndecTable { entries, by_dims, by_name }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Indec] {
        &self.entries
    }

    pub fn get(&self, id: usize) -> &Indec {
        &self.entries[id]
    }

    pub fn name(&self, id: usize) -> &str {
        &self.entries[id].name
    }

    pub fn by_dims(&self, dims: &[usize]) -> Option<usize> {
        self.by_dims.get(dims).copied()
    }

    /// Accepts the table names (`P1`, `S2`, `I3`, `M111`) and bare dimension vectors (`111`).
    pub fn lookup(&self, name: &str) -> Result<usize> {
        if let Some(&id) = self.by_name.get(name) {
            return Ok(id);
        }
        let digits = name.strip_prefix('M').unwrap_or(name);
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            let dims: Vec<usize> = digits.chars().map(|c| c as usize - '0' as usize).collect();
            if let Some(id) = self.by_dims(&dims) {
                return Ok(id);
            }
        }
        Err(Error::UnknownIndecomposable(name.to_string()))
    }

    pub fn projective(&self, v: usize) -> usize {
        self.entries.iter().find(|e| e.step == 0 && e.vertex == v).expect("every vertex has a projective").id
    }

    pub fn projectives(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.is_projective).map(|e| e.id).collect()
    }

    pub fn summaries(&self) -> Vec<IndecSummary> {
        self.entries
            .iter()
            .map(|e| IndecSummary {
                id: e.id,
                name: e.name.clone(),
                dims: e.rep.dims().to_vec(),
                projective: e.is_projective,
                injective: e.is_injective,
            })
            .collect()
    }

    /// Multiplicities of the indecomposable summands of `m`, in table order.
    ///
    /// Since every indecomposable `X` has `End(X) = k`, the composition
    /// pairing `Hom(X, m) x Hom(m, X) -> End(X)` has rank equal to the
    /// multiplicity of `X` in `m`.
    pub fn decompose(&self, q: &Quiver, m: &Rep) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let mut total = vec![0usize; m.dims().len()];
        for e in &self.entries {
            let d = e.rep.dims();
            if d.iter().zip(m.dims()).any(|(a, b)| a > b) {
                continue;
            }
            let into = hom_basis(q, &e.rep, m);
            if into.is_empty() {
                continue;
            }
            let out_of = hom_basis(q, m, &e.rep);
            if out_of.is_empty() {
                continue;
            }
            let v = d.iter().position(|&x| x > 0).expect("nonzero indecomposable");
            let pairing = Mat::from_rows(
                out_of.iter().map(|psi| into.iter().map(|phi| endo_scalar(psi, phi, v)).collect()).collect(),
            );
            let mult = pairing.rank();
            if mult > 0 {
                for (t, x) in total.iter_mut().zip(d) {
                    *t += mult * x;
                }
                out.push((e.id, mult));
            }
        }
        if total != m.dims() {
            return Err(Error::Internal(format!(
                "decomposition accounts for {total:?}, representation has {:?}",
                m.dims()
            )));
        }
        Ok(out)
    }
}

/// The scalar `c` with `psi ∘ phi = c · id`, read at a vertex in the support.
fn endo_scalar(psi: &RepMor, phi: &RepMor, v: usize) -> Scalar {
    let c = psi.comps[v].mul(&phi.comps[v]);
    if c.rows() == 0 {
        Scalar::zero()
    } else {
        c[(0, 0)].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{injective, simple};

    #[test]
    fn a2_table() {
        let q = Quiver::parse("A2").unwrap();
        let t = IndecTable::new(&q);
        let names: Vec<_> = t.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["P1", "P2", "S1"]);
        assert_eq!(t.get(1).tau_inverse, Some(2));
        assert_eq!(t.get(2).tau, Some(1));
        assert!(t.get(0).is_injective && t.get(2).is_injective && !t.get(1).is_injective);
    }

    #[test]
    fn counts_match_positive_roots() {
        for label in ["A1", "A3:1>2<3", "A4:1<2>3<4", "D4", "D5:1<2>3>4,3<5", "E6"] {
            let q = Quiver::parse(label).unwrap();
            assert_eq!(IndecTable::new(&q).len(), q.dynkin().positive_root_count(), "{label}");
        }
    }

    #[test]
    fn tau_undoes_tau_inverse() {
        let q = Quiver::parse("D4:1>2<3,2>4").unwrap();
        let t = IndecTable::new(&q);
        for e in t.entries() {
            if let Some(j) = e.tau_inverse {
                assert_eq!(tau(&q, &t.get(j).rep).dims(), e.rep.dims());
            }
        }
        for v in 0..4 {
            let id = t.by_dims(injective(&q, v).dims()).unwrap();
            assert!(t.get(id).is_injective);
        }
    }

    #[test]
    fn decompose_direct_sums() {
        let q = Quiver::parse("A3").unwrap();
        let t = IndecTable::new(&q);
        let (a, b) = (t.lookup("S2").unwrap(), t.lookup("P1").unwrap());
        let m = Rep::direct_sum(&q, &[&t.get(a).rep, &t.get(b).rep, &t.get(a).rep, &simple(&q, 2)]);
        let mut got = t.decompose(&q, &m).unwrap();
        got.sort();
        let mut want = vec![(a, 2), (b, 1), (t.by_dims(&[0, 0, 1]).unwrap(), 1)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn lookup_by_dims() {
        let q = Quiver::parse("A3").unwrap();
        let t = IndecTable::new(&q);
        assert_eq!(t.lookup("110").unwrap(), t.by_dims(&[1, 1, 0]).unwrap());
        assert!(t.lookup("P9").is_err());
    }
}
