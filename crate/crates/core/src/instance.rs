//! A quiver together with everything derived from it once: the table of
//! indecomposables, module-level Hom/Ext dimensions, stalk presentations and a
//! shared cache of stalk Hom spaces.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::derived::{cohomology, Complex, HomSpace, Stalk, StalkSum};
use crate::error::{Error, Result};
use crate::indec::IndecTable;
use crate::linalg::{scalar, Mat};
use crate::quiver::Quiver;
use crate::rep::{ext1_dim, hom_dim};

pub struct Instance {
    quiver: Quiver,
    table: IndecTable,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    presentations: Vec<Complex>,
    homs: RwLock<HashMap<(Stalk, Stalk), Arc<HomSpace>>>,
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance").field("quiver", &self.quiver.label()).finish_non_exhaustive()
    }
}

impl Instance {
    pub fn new(quiver: Quiver) -> Self {
        let table = IndecTable::new(&quiver);
        let n = table.len();
        let mut hom = vec![vec![0; n]; n];
        let mut ext = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (&table.get(a).rep, &table.get(b).rep);
                hom[a][b] = hom_dim(&quiver, ra, rb);
                ext[a][b] = ext1_dim(&quiver, ra, rb).expect("Euler form bounds Hom for indecomposables");
            }
        }
        let presentations = table
            .entries()
            .iter()
            .map(|e| {
                if e.p1.is_empty() {
                    Complex::single(0, e.p0.clone())
                } else {
                    Complex::new(-1, vec![e.p1.clone(), e.p0.clone()], vec![e.presentation.clone()])
                }
            })
            .collect();
        Instance { quiver, table, hom, ext, presentations, homs: RwLock::new(HashMap::new()) }
    }

    pub fn parse(label: &str) -> Result<Self> {
        Ok(Instance::new(Quiver::parse(label)?))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn table(&self) -> &IndecTable {
        &self.table
    }

    pub fn rank(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn module_hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom[a][b]
    }

    pub fn module_ext_dim(&self, a: usize, b: usize) -> usize {
        self.ext[a][b]
    }

    fn check_id(&self, s: Stalk) -> Result<()> {
        if s.id < self.table.len() {
            Ok(())
        } else {
            Err(Error::UnknownIndecomposable(format!("id {}", s.id)))
        }
    }

    /// Hereditary shortcut: `Hom(M[i], N[j])` is `Hom(M, N)` for `j = i`,
    /// `Ext¹(M, N)` for `j = i + 1`, and zero otherwise.
    pub fn stalk_hom_dim(&self, a: Stalk, b: Stalk) -> usize {
        match b.shift - a.shift {
            0 => self.hom[a.id][b.id],
            1 => self.ext[a.id][b.id],
            _ => 0,
        }
    }

    /// Minimal projective resolution of the stalk, placed at its shift.
    pub fn present_stalk(&self, s: Stalk) -> Complex {
        self.presentations[s.id].shift(s.shift)
    }

    pub fn try_present_stalk(&self, s: Stalk) -> Result<Complex> {
        self.check_id(s)?;
        Ok(self.present_stalk(s))
    }

    /// Presentation of a sum, one block per copy in canonical order.
    pub fn present(&self, x: &StalkSum) -> Complex {
        let parts: Vec<Complex> = x.expanded().into_iter().map(|s| self.present_stalk(s)).collect();
        Complex::direct_sum(&parts.iter().collect::<Vec<_>>())
    }

    pub fn try_present(&self, x: &StalkSum) -> Result<Complex> {
        for s in x.stalks() {
            self.check_id(s)?;
        }
        Ok(self.present(x))
    }

    /// `Hom(a, b)` between stalk presentations, memoized.
    pub fn stalk_hom(&self, a: Stalk, b: Stalk) -> Arc<HomSpace> {
        if let Some(h) = self.homs.read().expect("hom cache").get(&(a, b)) {
            return h.clone();
        }
        let h = Arc::new(HomSpace::new(&self.quiver, &self.present_stalk(a), &self.present_stalk(b)));
        self.homs.write().expect("hom cache").entry((a, b)).or_insert(h).clone()
    }

    /// Reads off a complex as a sum of shifted modules: `x ≅ ⊕ H^d(x)[-d]`.
    pub fn normalize(&self, x: &Complex) -> Result<StalkSum> {
        let mut out = StalkSum::new();
        if x.is_zero() {
            return Ok(out);
        }
        for d in x.degrees() {
            let h = cohomology(&self.quiver, x, d);
            for (id, mult) in self.table.decompose(&self.quiver, &h.rep)? {
                out.add(Stalk::new(id, -d), mult);
            }
        }
        Ok(out)
    }

    /// Stalk candidates of the fundamental domain: modules at shifts `0..m`, projectives at shift `m`.
    pub fn domain_candidates(&self, m: usize) -> Vec<Stalk> {
        let mut out: Vec<Stalk> = (0..m as i32)
            .flat_map(|j| (0..self.table.len()).map(move |id| Stalk::new(id, j)))
            .collect();
        out.extend(self.table.projectives().into_iter().map(|id| Stalk::new(id, m as i32)));
        out.sort();
        out
    }

    pub fn in_domain(&self, s: Stalk, m: usize) -> bool {
        let m = m as i32;
        (0..m).contains(&s.shift) || (s.shift == m && self.table.get(s.id).is_projective)
    }

    pub fn stalk_name(&self, s: Stalk) -> String {
        let base = self.table.name(s.id);
        if s.shift == 0 {
            base.to_string()
        } else {
            format!("{base}[{}]", s.shift)
        }
    }

    pub fn sum_name(&self, x: &StalkSum) -> String {
        let parts: Vec<String> = x
            .with_mult()
            .map(|(s, m)| if m == 1 { self.stalk_name(s) } else { format!("{}^{m}", self.stalk_name(s)) })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Parses `S1`, `P2[1]`, `M011[-2]` (also accepts `#3[1]` for a raw id).
    pub fn parse_stalk(&self, text: &str) -> Result<Stalk> {
        let text = text.trim();
        let (base, shift) = match text.find('[') {
            Some(p) => {
                let inner = text[p + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse(format!("unclosed shift in {text:?}")))?;
                let shift = inner.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad shift in {text:?}")))?;
                (&text[..p], shift)
            }
            None => (text, 0),
        };
        let id = match base.strip_prefix('#') {
            Some(raw) => {
                let id = raw.parse::<usize>().map_err(|_| Error::Parse(format!("bad id in {text:?}")))?;
                self.check_id(Stalk::new(id, 0))?;
                id
            }
            None => self.table.lookup(base)?,
        };
        Ok(Stalk::new(id, shift))
    }

    /// Comma-separated stalk list, e.g. `"S1, P2[1]"`.
    pub fn parse_sum(&self, text: &str) -> Result<StalkSum> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        if text.trim().is_empty() {
            return Ok(StalkSum::new());
        }
        let mut out = StalkSum::new();
        for part in split_top_level(text) {
            out.add(self.parse_stalk(&part)?, 1);
        }
        Ok(out)
    }

    /// The regular object `A[0]`.
    pub fn regular(&self) -> StalkSum {
        self.table.projectives().into_iter().map(|id| Stalk::new(id, 0)).collect()
    }

    /// Identity-like check used by tests and audits: the class of `id` in `End(s)`.
    pub fn identity_coords(&self, s: Stalk) -> Vec<crate::linalg::Scalar> {
        let h = self.stalk_hom(s, s);
        h.coords(&crate::derived::ChainMap::identity(&h.source))
    }
}

fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).collect()
}

/// Scalar matrix helper for fixtures.
pub fn int_mat(rows: &[&[i64]]) -> Mat {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| scalar(x)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{cone, ChainMap};
    use crate::rep::ProjSum;

    fn a2() -> Instance {
        Instance::parse("A2").unwrap()
    }

    #[test]
    fn presentations_of_a2() {
        let inst = a2();
        let s1 = inst.parse_stalk("S1").unwrap();
        let c = inst.present_stalk(s1);
        assert_eq!((c.lo, c.terms.clone()), (-1, vec![ProjSum(vec![1]), ProjSum(vec![0])]));
        let p2 = inst.present_stalk(inst.parse_stalk("P2[1]").unwrap());
        assert_eq!((p2.lo, p2.terms.clone()), (-1, vec![ProjSum(vec![1])]));
        assert!(inst.present(&StalkSum::new()).is_zero());
    }

    #[test]
    fn stalk_hom_examples() {
        let inst = a2();
        let s = |t: &str| inst.parse_stalk(t).unwrap();
        assert_eq!(inst.stalk_hom_dim(s("P2"), s("P1")), 1);
        assert_eq!(inst.stalk_hom_dim(s("S1"), s("P2[1]")), 1);
        assert_eq!(inst.stalk_hom_dim(s("S1"), s("P2[5]")), 0);
        assert_eq!(inst.stalk_hom(s("S1"), s("P2[1]")).dim(), 1);
    }

    #[test]
    fn normalize_examples() {
        let inst = a2();
        let s = |t: &str| inst.parse_stalk(t).unwrap();
        let x = inst.present_stalk(s("P2"));
        let y = inst.present_stalk(s("P1"));
        let f = inst.stalk_hom(s("P2"), s("P1")).basis_map(0);
        assert_eq!(inst.normalize(&cone(&f, &x, &y)).unwrap(), StalkSum::from_stalks([s("S1")]));
        assert!(inst.normalize(&Complex::zero()).unwrap().is_empty());
        let (a, b) = (inst.present_stalk(s("S1")), inst.present_stalk(s("P2[1]")));
        let got = inst.normalize(&cone(&ChainMap::zero(), &a, &b)).unwrap();
        assert_eq!(got, StalkSum::from_stalks([s("P2[1]"), s("S1[1]")]));
        let id = ChainMap::identity(&a);
        assert!(inst.normalize(&cone(&id, &a, &a)).unwrap().is_empty());
    }

    #[test]
    fn normalize_inverts_present() {
        let inst = Instance::parse("A3:1>2<3").unwrap();
        let all: StalkSum = (0..6).map(|id| Stalk::new(id, (id as i32 % 3) - 1)).collect();
        assert_eq!(inst.normalize(&inst.present(&all)).unwrap(), all);
    }

    #[test]
    fn names_round_trip() {
        let inst = Instance::parse("D4").unwrap();
        for s in inst.domain_candidates(2) {
            assert_eq!(inst.parse_stalk(&inst.stalk_name(s)).unwrap(), s);
        }
        let x = inst.parse_sum("{P1, S1[1]}").unwrap();
        assert_eq!(inst.parse_sum(&inst.sum_name(&x)).unwrap(), x);
        assert!(inst.parse_sum("Q7").is_err());
    }

    #[test]
    fn domain_candidate_counts() {
        let inst = a2();
        assert_eq!(inst.domain_candidates(1).len(), 5);
        assert_eq!(inst.domain_candidates(2).len(), 8);
    }
}
