use detmbqc::boolfn::{
    and_from_nonlinear, check_equiv_mod_linear, derive_equiv_maps, four_point, is_linear, toffoli_forward_maps,
    toffoli_table, Linearity, TruthTable,
};
use detmbqc::contextuality::{build_system, decide, verify, Context, Verdict};
use detmbqc::gf2::BitVec;
use detmbqc::mbqc::{example1_instance, truth_table};
use proptest::prelude::*;

fn table(n_in: usize, n_out: usize, bits: &[bool]) -> TruthTable {
    TruthTable::from_fn(n_in, n_out, |x| {
        let base = x.to_u64() as usize * n_out;
        BitVec::from_fn(n_out, |k| bits[base + k])
    })
    .unwrap()
}

fn any_table() -> impl Strategy<Value = TruthTable> {
    (1usize..7, 1usize..4).prop_flat_map(|(n_in, n_out)| {
        prop::collection::vec(any::<bool>(), (1 << n_in) * n_out).prop_map(move |b| table(n_in, n_out, &b))
    })
}

/// Affine tables, built from a random `(A, b)`.
fn affine_table() -> impl Strategy<Value = TruthTable> {
    (1usize..8, 1usize..4).prop_flat_map(|(n_in, n_out)| {
        (prop::collection::vec(any::<u64>(), n_out), any::<u64>()).prop_map(move |(rows, b)| {
            TruthTable::from_fn(n_in, n_out, |x| {
                let v = x.to_u64();
                BitVec::from_fn(n_out, |k| ((rows[k] & v).count_ones() % 2 == 1) ^ (b >> k & 1 == 1))
            })
            .unwrap()
        })
    })
}

fn all_four_point_pass(tt: &TruthTable) -> bool {
    let n = tt.n_in();
    (0..1u64 << n).all(|p| {
        (0..1u64 << n).all(|q| {
            four_point(tt, &BitVec::from_u64(n, p), &BitVec::from_u64(n, q))
                .unwrap()
                .is_zero()
        })
    })
}

proptest! {
    #[test]
    fn linearity_matches_exhaustive_four_point(tt in any_table()) {
        let verdict = is_linear(&tt);
        prop_assert_eq!(verdict.is_linear(), all_four_point_pass(&tt));
        match verdict {
            Linearity::Linear { a, b } => {
                for (x, row) in tt.rows().iter().enumerate() {
                    let y = a.mul_vec(&BitVec::from_u64(tt.n_in(), x as u64)).unwrap().xor(&b);
                    prop_assert_eq!(&y, row);
                }
            }
            Linearity::Nonlinear { p, q, output } => {
                prop_assert!(four_point(&tt, &p, &q).unwrap().get(output));
            }
        }
    }

    #[test]
    fn affine_tables_are_linear(tt in affine_table()) {
        prop_assert!(is_linear(&tt).is_linear());
    }

    #[test]
    fn and_extraction_yields_and(tt in any_table()) {
        let single = tt.output(0).unwrap();
        match and_from_nonlinear(&single) {
            Ok(ex) => {
                for (x, row) in ex.g.rows().iter().enumerate() {
                    prop_assert_eq!(row.get(0), x == 3);
                }
                prop_assert!(!is_linear(&single).is_linear());
            }
            Err(_) => prop_assert!(is_linear(&single).is_linear()),
        }
    }

    #[test]
    fn hvm_verdicts_are_sound(
        (n, raw) in (1usize..7).prop_flat_map(|n| (Just(n), prop::collection::vec((any::<u64>(), any::<u64>(), any::<bool>()), 0..40)))
    ) {
        let contexts: Vec<Context> = raw
            .iter()
            .map(|&(z, q, o)| Context { z: BitVec::from_u64(n, z & ((1 << n) - 1)), q: BitVec::from_u64(n, q & ((1 << n) - 1)), o })
            .collect();
        let sys = build_system(n, contexts).unwrap();
        let v = decide(&sys);
        prop_assert!(verify(&sys, &v));
    }

    #[test]
    fn planted_models_are_found((n, c, d, raw) in (1usize..8).prop_flat_map(|n| (Just(n), any::<u64>(), any::<u64>(), prop::collection::vec((any::<u64>(), any::<u64>()), 0..60)))) {
        let mask = (1u64 << n) - 1;
        let c = BitVec::from_u64(n, c & mask);
        let d = BitVec::from_u64(n, d & mask);
        let contexts: Vec<Context> = raw
            .iter()
            .map(|&(z, q)| {
                let z = BitVec::from_u64(n, z & mask);
                let q = BitVec::from_u64(n, q & mask);
                let o = z.dot(&c) ^ z.and(&q).dot(&d);
                Context { z, q, o }
            })
            .collect();
        let sys = build_system(n, contexts).unwrap();
        let v = decide(&sys);
        prop_assert!(!v.is_contextual());
        prop_assert!(verify(&sys, &v));
    }
}

#[test]
fn toffoli_equivalence_both_ways() {
    let f = truth_table(&example1_instance()).unwrap();
    let g = toffoli_table();
    let forward = toffoli_forward_maps();
    let reverse = derive_equiv_maps(&g, &f).unwrap().expect("reverse maps exist");
    assert!(check_equiv_mod_linear(&f, &g, &forward, &reverse).unwrap());
    // one flipped entry of A3 breaks the forward direction
    let mut broken = forward.clone();
    let a3 = &mut broken.l3.a;
    let flipped = !a3.get(1, 1);
    a3.set(1, 1, flipped);
    assert!(!check_equiv_mod_linear(&f, &g, &broken, &reverse).unwrap());
    let id = derive_equiv_maps(&f, &f).unwrap().unwrap();
    assert!(check_equiv_mod_linear(&f, &f, &id, &id).unwrap());
}

#[test]
fn two_input_and() {
    let and = TruthTable::from_bits(2, |x| x == 3).unwrap();
    match is_linear(&and) {
        Linearity::Nonlinear { p, q, .. } => {
            assert_eq!(p.to_u64() ^ q.to_u64(), 3);
        }
        other => panic!("{other:?}"),
    }
    let ex = and_from_nonlinear(&and).unwrap();
    assert_eq!((ex.a.to_u64(), ex.b.to_u64(), ex.c.to_u64()), (1, 2, 0));
    let id = TruthTable::from_fn(3, 3, |x| x.clone()).unwrap();
    assert!(is_linear(&id).is_linear());
    assert!(and_from_nonlinear(&id.output(0).unwrap()).is_err());
}

#[test]
fn ghz_verdict_rows() {
    let a = detmbqc::contextuality::analyze_instance(&example1_instance()).unwrap();
    let Verdict::Contextual { witness } = &a.verdict else { panic!() };
    assert_eq!(witness.len(), 4);
}
