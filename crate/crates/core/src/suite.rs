//! The acceptance matrix: every criterion over its full set of instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::checks::{
    check_arrows, check_prop33, check_prop35, check_thm32, check_thm34, default_cutoff, instance_label, Report,
};
use crate::derived::{HomSpace, Stalk, StalkSum};
use crate::error::Result;
use crate::export::silting_quiver_doc;
use crate::instance::Instance;
use crate::replicated::{bb_condition_report, bridge_consistency, exchange_report, realizable_complements, t_bound_report};
use crate::rep::euler_form;
use crate::roots::positive_roots;
use crate::silting::{enumerate_silting, is_rigid, maximality_audit, mutate, silting_quiver, Direction};

/// Options shared by the suites.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random samples per silting object for the sampled `thm32` instances.
    pub samples: usize,
    /// Global dimension cutoff; `None` means `2mn + 2` per instance.
    pub cutoff: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 2024, samples: 200, cutoff: None }
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub key: &'static str,
    pub title: &'static str,
    pub report: Report,
}

/// All four orientations of `A_3`.
pub const A3_ORIENTATIONS: [&str; 4] = ["A3:1>2>3", "A3:1>2<3", "A3:1<2>3", "A3:1<2<3"];

fn inst(label: &str) -> Instance {
    Instance::parse(label).expect("built-in label")
}

/// Almost complete objects obtained by deleting one summand, deduplicated.
pub fn cores_of(objects: &[StalkSum]) -> Vec<StalkSum> {
    let set: BTreeSet<StalkSum> =
        objects.iter().flat_map(|t| t.stalks().into_iter().map(move |s| t.without(s))).collect();
    set.into_iter().collect()
}

pub fn merge_all(name: &str, parts: Vec<Result<Report>>) -> Result<Report> {
    let mut out = Report::new(name);
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

/// `hom_h` on presentations against the hereditary formula, and
/// `dim Hom - dim Ext¹ = <dim, dim>` with `Ext¹` read off `hom_h(M, N[1])`.
pub fn hom_consistency() -> Result<Report> {
    let mut report = Report::new("hom");
    let labels = ["A2", "A3:1>2>3", "A3:1>2<3", "D4"];
    for label in labels {
        let inst = inst(label);
        let q = inst.quiver();
        for m in 1..=2 {
            let cands = inst.domain_candidates(m);
            let bad: Vec<String> = cands
                .par_iter()
                .flat_map_iter(|&a| {
                    let inst = &inst;
                    cands.iter().filter_map(move |&b| {
                        let h = HomSpace::new(q, &inst.present_stalk(a), &inst.present_stalk(b)).dim();
                        let f = inst.stalk_hom_dim(a, b);
                        (h != f).then(|| format!("{} -> {}: hom_h {h}, formula {f}", inst.stalk_name(a), inst.stalk_name(b)))
                    })
                })
                .collect();
            let n = cands.len() * cands.len();
            report.push(
                "hom.hom_h_formula",
                instance_label(&inst, m),
                format!("{n}/{n} pairs agree"),
                summary(n, &bad),
                bad.is_empty(),
            );
        }
        let t = inst.table();
        let mut bad = Vec::new();
        for a in 0..t.len() {
            for b in 0..t.len() {
                let (sa, sb) = (Stalk::new(a, 0), Stalk::new(b, 0));
                let hom = HomSpace::new(q, &inst.present_stalk(sa), &inst.present_stalk(sb)).dim() as i64;
                let ext = HomSpace::new(q, &inst.present_stalk(sa), &inst.present_stalk(sb.shifted(1))).dim() as i64;
                let chi = euler_form(q, t.get(a).rep.dims(), t.get(b).rep.dims());
                if hom - ext != chi {
                    bad.push(format!("{} , {}: {hom} - {ext} != {chi}", t.name(a), t.name(b)));
                }
            }
        }
        let n = t.len() * t.len();
        report.push("hom.euler", q.label(), format!("{n}/{n} pairs"), summary(n, &bad), bad.is_empty());
    }
    Ok(report)
}

fn summary(n: usize, bad: &[String]) -> String {
    match bad.first() {
        None => format!("{n}/{n} pairs agree"),
        Some(f) => format!("{}/{n}; first failure {f}", n - bad.len()),
    }
}

pub fn indec_counts() -> Result<Report> {
    let mut report = Report::new("indec");
    for (label, want) in [("A2", 3), ("A3", 6), ("D4", 12)] {
        let inst = inst(label);
        let roots: BTreeSet<Vec<usize>> = positive_roots(inst.quiver().dynkin()).into_iter().collect();
        let dims: BTreeSet<Vec<usize>> = inst.table().entries().iter().map(|e| e.rep.dims().to_vec()).collect();
        report.expect_eq("indec.count", label, want, inst.table().len());
        report.expect_eq("indec.roots", label, roots.len(), dims.len());
        report.push("indec.dimension_vectors", label, "positive roots", if dims == roots { "positive roots" } else { "differ" }, dims == roots);
    }
    Ok(report)
}

/// Sequential backtracking over a shuffled candidate list; an independent
/// second search used to cross-check [`enumerate_silting`].
pub fn enumerate_permuted(inst: &Instance, m: usize, seed: u64) -> Vec<StalkSum> {
    let mut cands = inst.domain_candidates(m);
    cands.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n = inst.rank();
    let mut out = Vec::new();
    fn go(inst: &Instance, cands: &[Stalk], n: usize, from: usize, cur: &mut Vec<Stalk>, out: &mut Vec<StalkSum>) {
        if cur.len() == n {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in from..cands.len() {
            cur.push(cands[i]);
            if is_rigid(inst, &cur.iter().copied().collect()) {
                go(inst, cands, n, i + 1, cur, out);
            }
            cur.pop();
        }
    }
    go(inst, &cands, n, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Fuss–Catalan number `1/(n+1) binom((m+1)(n+1), n)`, the count for `A_n`.
pub fn fuss_catalan(n: usize, m: usize) -> u128 {
    let top = (m + 1) * (n + 1);
    let mut c: u128 = 1;
    for i in 0..n {
        c = c * (top - i) as u128 / (i + 1) as u128;
    }
    c / (n + 1) as u128
}

pub fn silting_enumeration() -> Result<Report> {
    let mut report = Report::new("enumerate");
    let a2 = inst("A2");
    let listed: BTreeSet<StalkSum> = ["P1,P2", "P1,S1", "S1,P2[1]", "P2,P1[1]", "P1[1],P2[1]"]
        .iter()
        .map(|s| a2.parse_sum(s))
        .collect::<Result<_>>()?;
    let got: BTreeSet<StalkSum> = enumerate_silting(&a2, 1).into_iter().collect();
    let names = |s: &BTreeSet<StalkSum>| s.iter().map(|t| a2.sum_name(t)).collect::<Vec<_>>().join(" ");
    report.expect_eq("enumerate.a2_listed", "A2 m=1", names(&listed), names(&got));
    for label in A3_ORIENTATIONS {
        let i = inst(label);
        report.expect_eq("enumerate.count", &instance_label(&i, 1), 14, enumerate_silting(&i, 1).len());
    }
    for (label, m) in [("A2", 1), ("A3", 1), ("A2", 2)] {
        let i = inst(label);
        let main = enumerate_silting(&i, m);
        let here = instance_label(&i, m);
        report.expect_eq("enumerate.fuss_catalan", &here, fuss_catalan(i.rank(), m), main.len() as u128);
        let perm = enumerate_permuted(&i, m, 11);
        report.push("enumerate.permuted_search", &here, main.len(), perm.len(), perm == main);
        let maximal = main.iter().all(|t| maximality_audit(&i, t, m));
        report.push("enumerate.maximal", &here, true, maximal, maximal);
    }
    Ok(report)
}

pub fn prop33() -> Result<Report> {
    let parts = [("A2", 1), ("A2", 2), ("A3", 1), ("A3", 2)].into_iter().map(|(l, m)| check_prop33(&inst(l), m)).collect();
    merge_all("prop33", parts)
}

pub fn thm32(opts: &SuiteOptions) -> Result<Report> {
    let mut parts = Vec::new();
    for (label, samples) in [("A2", None), ("A3", Some(opts.samples))] {
        let i = inst(label);
        let objs = enumerate_silting(&i, 1);
        parts.extend(
            objs.par_iter()
                .enumerate()
                .map(|(k, t)| check_thm32(&i, 1, t, samples, opts.seed.wrapping_add(k as u64)))
                .collect::<Vec<_>>(),
        );
    }
    merge_all("thm32", parts)
}

fn instances_m12() -> Vec<(Instance, usize)> {
    [("A2", 1), ("A2", 2), ("A3", 1), ("A3", 2)].into_iter().map(|(l, m)| (inst(l), m)).collect()
}

pub fn thm34() -> Result<Report> {
    let mut parts = Vec::new();
    for (i, m) in instances_m12() {
        let cores = cores_of(&enumerate_silting(&i, m));
        parts.extend(cores.par_iter().map(|c| check_thm34(&i, c, m)).collect::<Vec<_>>());
    }
    merge_all("thm34", parts)
}

pub fn prop35(opts: &SuiteOptions) -> Result<Report> {
    let mut parts = Vec::new();
    for (i, m) in instances_m12() {
        let cutoff = opts.cutoff.unwrap_or_else(|| default_cutoff(&i, m));
        parts.extend(enumerate_silting(&i, m).par_iter().map(|t| check_prop35(&i, m, t, cutoff)).collect::<Vec<_>>());
    }
    merge_all("prop35", parts)
}

pub fn arrows() -> Result<Report> {
    let mut parts = Vec::new();
    for label in ["A2", "A3"] {
        let i = inst(label);
        parts.extend(enumerate_silting(&i, 1).par_iter().map(|t| check_arrows(&i, 1, t)).collect::<Vec<_>>());
    }
    merge_all("arrows", parts)
}

/// Realizable complements, the `t` bound, exchange sequences and BB reports for one core.
pub fn thm42_core(i: &Instance, m: usize, core: &StalkSum, cutoff: usize) -> Result<Report> {
    let chain = realizable_complements(i, core, m)?;
    let mut r = t_bound_report(i, &chain);
    r.merge(exchange_report(i, &chain)?);
    for k in 0..chain.t.max(1) {
        r.merge(bb_condition_report(i, &chain, k, cutoff)?.0);
    }
    Ok(r)
}

pub fn cores_of_domain(i: &Instance, m: usize) -> Vec<StalkSum> {
    cores_of(&enumerate_silting(i, m))
}

pub fn thm42_for(i: &Instance, m: usize, cutoff: usize) -> Result<Report> {
    let objs = enumerate_silting(i, m);
    let cores = cores_of(&objs);
    let per_core: Vec<Result<Report>> = cores.par_iter().map(|c| thm42_core(i, m, c, cutoff)).collect();
    let bridges: Vec<Result<Report>> = objs.par_iter().map(|t| bridge_consistency(i, m, t)).collect();
    let mut out = merge_all("thm42", per_core)?;
    out.merge(merge_all("thm42", bridges)?);
    Ok(out)
}

pub fn thm42(opts: &SuiteOptions) -> Result<Report> {
    let parts = instances_m12()
        .into_iter()
        .map(|(i, m)| thm42_for(&i, m, opts.cutoff.unwrap_or_else(|| default_cutoff(&i, m))))
        .collect();
    merge_all("thm42", parts)
}

/// `right ∘ left` and `left ∘ right` are the identity at every summand, and
/// repeated computations serialize identically.
pub fn involution_determinism() -> Result<Report> {
    let mut report = Report::new("involution");
    for (i, m) in instances_m12() {
        let objs = enumerate_silting(&i, m);
        let bad: Vec<String> = objs
            .par_iter()
            .flat_map_iter(|t| {
                let i = &i;
                (0..t.distinct_count()).flat_map(move |k| {
                    [(Direction::Left, Direction::Right), (Direction::Right, Direction::Left)].into_iter().filter_map(
                        move |(d1, d2)| match round_trip(i, t, k, d1, d2) {
                            Ok(true) => None,
                            Ok(false) => Some(format!("{} at {k} {d1} then {d2}", i.sum_name(t))),
                            Err(e) => Some(format!("{} at {k}: {e}", i.sum_name(t))),
                        },
                    )
                })
            })
            .collect();
        let n = objs.iter().map(|t| 2 * t.distinct_count()).sum::<usize>();
        report.push("involution.round_trip", instance_label(&i, m), format!("{n}/{n}"), summary(n, &bad), bad.is_empty());
        let docs: Vec<String> = (0..2)
            .map(|_| {
                let sq = silting_quiver(&i, m)?;
                Ok(serde_json::to_string(&silting_quiver_doc(&i, m, &sq))?)
            })
            .collect::<Result<_>>()?;
        report.push("involution.deterministic", instance_label(&i, m), "identical", if docs[0] == docs[1] { "identical" } else { "differ" }, docs[0] == docs[1]);
    }
    Ok(report)
}

fn round_trip(i: &Instance, t: &StalkSum, k: usize, d1: Direction, d2: Direction) -> Result<bool> {
    let (t1, tri) = mutate(i, t, k, d1)?;
    let back = t1.stalks().iter().position(|&s| s == tri.y).expect("new summand present");
    let (t2, _) = mutate(i, &t1, back, d2)?;
    Ok(t2 == *t)
}

/// Every acceptance criterion, in order.
pub fn run_all(opts: &SuiteOptions) -> Result<Vec<Criterion>> {
    let mut out = Vec::new();
    let mut add = |key: &'static str, title: &'static str, r: Result<Report>| -> Result<()> {
        out.push(Criterion { key, title, report: r? });
        Ok(())
    };
    add("hom", "Hom consistency", hom_consistency())?;
    add("indec", "Indecomposable counts", indec_counts())?;
    add("enumerate", "Silting enumeration", silting_enumeration())?;
    add("prop33", "Silting quiver connectivity", prop33())?;
    add("thm32", "Density and equivalence identities", thm32(opts))?;
    add("thm34", "Complement chains", thm34())?;
    add("prop35", "Acyclic quivers, finite global dimension", prop35(opts))?;
    add("arrows", "Arrow-count identities", arrows())?;
    add("thm42", "Replicated model", thm42(opts))?;
    add("involution", "Mutation involution and determinism", involution_determinism())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(fuss_catalan(2, 1), 5);
        assert_eq!(fuss_catalan(3, 1), 14);
        assert_eq!(fuss_catalan(2, 2), 12);
        assert_eq!(fuss_catalan(3, 2), 55);
    }

    #[test]
    fn permuted_search_matches_on_a2() {
        let i = inst("A2");
        assert_eq!(enumerate_permuted(&i, 1, 3), enumerate_silting(&i, 1));
    }
}
