use proptest::prelude::*;

use silt_core::derived::{HomSpace, Stalk};
use silt_core::endo::EndoAlgebra;
use silt_core::instance::Instance;
use silt_core::linalg::Mat;
use silt_core::rep::{euler_form, ext1_dim, hom_dim, Rep};
use silt_core::silting::{enumerate_silting, is_silting, mutate, Direction};

const LABELS: [&str; 5] = ["A2", "A3:1>2>3", "A3:1>2<3", "A3:1<2>3", "D4"];

fn inst(k: usize) -> Instance {
    Instance::parse(LABELS[k % LABELS.len()]).unwrap()
}

/// Conjugate every vertex space by an elementary matrix `1 + c E_{ij}`.
fn twist(inst: &Instance, m: &Rep, c: i64) -> Rep {
    let q = inst.quiver();
    let g: Vec<(Mat, Mat)> = m
        .dims()
        .iter()
        .map(|&d| {
            let (mut a, mut b) = (Mat::identity(d), Mat::identity(d));
            if d >= 2 {
                let mut e = Mat::zeros(d, d);
                e.set_block(0, d - 1, &Mat::from_i64(&[&[c]]));
                a = a.add(&e);
                b = b.sub(&e);
            }
            (a, b)
        })
        .collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| g[t].0.mul(m.map(k)).mul(&g[s].1))
        .collect();
    Rep::new(q, m.dims().to_vec(), maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn hom_minus_ext_is_euler(k in 0usize..5, a in 0usize..12, b in 0usize..12) {
        let inst = inst(k);
        let t = inst.table();
        let (a, b) = (a % t.len(), b % t.len());
        let q = inst.quiver();
        let (ma, mb) = (&t.get(a).rep, &t.get(b).rep);
        let h = hom_dim(q, ma, mb) as i64;
        let e = ext1_dim(q, ma, mb).unwrap() as i64;
        prop_assert_eq!(h - e, euler_form(q, ma.dims(), mb.dims()));
    }

    #[test]
    fn ext_is_dual_to_hom_into_tau(k in 0usize..5, a in 0usize..12, b in 0usize..12) {
        let inst = inst(k);
        let t = inst.table();
        let (a, b) = (a % t.len(), b % t.len());
        let q = inst.quiver();
        let e = ext1_dim(q, &t.get(a).rep, &t.get(b).rep).unwrap();
        let dual = match t.get(a).tau {
            Some(ta) => hom_dim(q, &t.get(b).rep, &t.get(ta).rep),
            None => 0,
        };
        prop_assert_eq!(e, dual);
    }

    #[test]
    fn decomposition_recovers_summands(k in 0usize..5, picks in prop::collection::vec(0usize..12, 1..4), c in -3i64..4) {
        let inst = inst(k);
        let t = inst.table();
        let q = inst.quiver();
        let ids: Vec<usize> = picks.iter().map(|p| p % t.len()).collect();
        let parts: Vec<&Rep> = ids.iter().map(|&i| &t.get(i).rep).collect();
        let sum = twist(&inst, &Rep::direct_sum(q, &parts), c);
        let mut want = std::collections::BTreeMap::new();
        for i in ids {
            *want.entry(i).or_insert(0usize) += 1;
        }
        let got: std::collections::BTreeMap<usize, usize> = t.decompose(q, &sum).unwrap().into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn homotopy_hom_matches_formula_and_shifts(k in 0usize..4, a in 0usize..12, b in 0usize..12, d in -1i32..3, s in -2i32..3) {
        let inst = inst(k);
        let n = inst.table().len();
        let x = Stalk::new(a % n, 0);
        let y = Stalk::new(b % n, d);
        let q = inst.quiver();
        let h0 = HomSpace::new(q, &inst.present_stalk(x), &inst.present_stalk(y)).dim();
        let hs = HomSpace::new(q, &inst.present_stalk(x.shifted(s)), &inst.present_stalk(y.shifted(s))).dim();
        prop_assert_eq!(h0, inst.stalk_hom_dim(x, y));
        prop_assert_eq!(h0, hs);
    }

    #[test]
    fn mutation_is_an_involution(k in 0usize..4, m in 1usize..3, pick in 0usize..1000, slot in 0usize..4) {
        let inst = inst(k);
        let objects = enumerate_silting(&inst, m);
        let t = &objects[pick % objects.len()];
        let slot = slot % t.distinct_count();
        for (d1, d2) in [(Direction::Left, Direction::Right), (Direction::Right, Direction::Left)] {
            let (t1, tri) = mutate(&inst, t, slot, d1).unwrap();
            prop_assert!(is_silting(&inst, &t1));
            let back = t1.stalks().iter().position(|&s| s == tri.y).unwrap();
            let (t2, _) = mutate(&inst, &t1, back, d2).unwrap();
            prop_assert_eq!(&t2, t);
        }
    }

    #[test]
    fn endomorphism_algebras_are_unital_associative(k in 0usize..4, m in 1usize..3, pick in 0usize..1000) {
        let inst = inst(k);
        let objects = enumerate_silting(&inst, m);
        let t = &objects[pick % objects.len()];
        let endo = EndoAlgebra::new(&inst, t).unwrap();
        let alg = &endo.algebra;
        prop_assert!(alg.is_associative());
        let one = alg.unit();
        for x in 0..alg.dim() {
            let bx = alg.basis_vec(x);
            prop_assert_eq!(alg.product(&one, &bx), bx.clone());
            prop_assert_eq!(alg.product(&bx, &one), bx);
        }
        let dims: usize = t.stalks().iter().flat_map(|&a| t.stalks().into_iter().map(move |b| (a, b))).map(|(a, b)| inst.stalk_hom_dim(a, b)).sum();
        prop_assert_eq!(alg.dim(), dims);
    }
}
