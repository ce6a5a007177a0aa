use detmbqc::boolfn::is_linear;
use detmbqc::contextuality::{analyze_instance, verify, Verdict};
use detmbqc::gf2::{BinMatrix, BitVec};
use detmbqc::lulc::v_split;
use detmbqc::mbqc::{truth_table, MbqcInstance};
use detmbqc::phasestate::{make_rm_state, AngleSpec};
use detmbqc::rmfamily::{
    build, determinism_exact, sufficient_condition, ClosedForm, DeterminismOptions, FamilyParams, Method,
};
use detmbqc::Error;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = FamilyParams> {
    (1usize..6)
        .prop_flat_map(|m| (0..=m, 0..=m, Just(m), 1u32..5))
        .prop_map(|(r, t, m, chi)| FamilyParams { r, t, m, chi })
}

/// One deterministic instance: an NCHVM forces a
/// linear table, and every verdict re-verifies.
fn check_direction(inst: &MbqcInstance) -> Result<Option<bool>, TestCaseError> {
    let tt = match truth_table(inst) {
        Ok(tt) => tt,
        Err(Error::DeterminismViolation(_)) => return Ok(None),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let a = analyze_instance(inst).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(verify(&a.system, &a.verdict));
    let linear = is_linear(&tt).is_linear();
    if let Verdict::HvmExists { .. } = a.verdict {
        prop_assert!(linear);
    }
    if !linear {
        prop_assert!(a.verdict.is_contextual());
    }
    Ok(Some(linear))
}

proptest! {
    #[test]
    fn sufficient_implies_deterministic(p in params()) {
        let verdict = determinism_exact(p, DeterminismOptions::default()).unwrap();
        if sufficient_condition(p) {
            prop_assert!(verdict.is_deterministic(), "{p}");
        }
        if verdict.is_deterministic() {
            prop_assert!(p.m > 2 * p.r, "{p}");
        }
    }

    #[test]
    fn reduction_agrees_with_enumeration(p in params()) {
        // cases past 2^26 work items are left to the acceptance run
        let enumerate = DeterminismOptions { method: Method::Enumerate, budget: Some(1 << 26), ..Default::default() };
        let reduce = DeterminismOptions { method: Method::Reduce, ..Default::default() };
        if let Ok(a) = determinism_exact(p, enumerate) {
            let b = determinism_exact(p, reduce).unwrap();
            prop_assert_eq!(a.is_deterministic(), b.is_deterministic(), "{}", p);
        }
    }

    #[test]
    fn closed_form_matches_engine(p in params()) {
        prop_assume!(p.n_inputs() <= 11 && p.n_outputs() <= 16);
        let inst = build(p).unwrap();
        match truth_table(&inst) {
            Ok(tt) => {
                prop_assert!(determinism_exact(p, DeterminismOptions::default()).unwrap().is_deterministic());
                prop_assert_eq!(ClosedForm::new(p).unwrap().truth_table().unwrap(), tt);
            }
            Err(Error::DeterminismViolation(_)) => {
                prop_assert!(!determinism_exact(p, DeterminismOptions::default()).unwrap().is_deterministic());
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn family_members_hvm_implies_linear(p in params()) {
        prop_assume!(p.n_inputs() <= 8 && p.m <= 4);
        check_direction(&build(p).unwrap())?;
    }

    #[test]
    fn random_instances_hvm_implies_linear(
        (r, m, d, cols, zsel) in (0usize..3, 1usize..4, 1u32..3, prop::collection::vec(any::<u16>(), 1..4), prop::collection::vec(any::<u16>(), 1..3))
    ) {
        prop_assume!(r <= m);
        let state = make_rm_state(r, m).unwrap();
        let n = state.n();
        let k = cols.len();
        let q = BinMatrix::new(k, (0..n).map(|j| BitVec::from_fn(k, |c| cols[c] >> (j % 16) & 1 == 1)).collect()).unwrap();
        // output rows drawn from the code, so contexts are not trivially zero
        let gens = state.generators().clone();
        let z_rows: Vec<BitVec> = zsel
            .iter()
            .map(|&s| {
                gens.rows()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> (i % 16) & 1 == 1)
                    .fold(BitVec::zeros(n), |acc, (_, row)| acc.xor(row))
            })
            .collect();
        let z = BinMatrix::new(n, z_rows).unwrap();
        let inst = MbqcInstance::flat(state, AngleSpec::uniform(n, d), q, z).unwrap();
        check_direction(&inst)?;
    }

    #[test]
    fn v_split_identity(e in 0u8..4, k in 0u8..4) {
        let (e, k) = (2 * e + 1, 2 * k);
        let (q, v) = v_split(e, k).unwrap();
        let lhs = (i32::from(e) + i32::from(k)).rem_euclid(8);
        let sign = if q == 1 { -1 } else { 1 };
        let rhs = (sign * i32::from(e) + 4 * i32::from(v)).rem_euclid(8);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(q <= 1 && v <= 1);
    }
}
