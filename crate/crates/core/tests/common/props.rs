//! Randomized property checks driven by proptest's runner so callers can
//! report each property on one line.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use kswitch::boolean_core::{eta, eta_inverse, mbf_positive, MbfFunction, OrderedTuple, Side};
use kswitch::interaction::ClassTag;
use kswitch::realizability::{
    check_class, collapse_witness, lift_eta, lower_eta, realize_k, verify_k, verify_witness, Verdict, Witness,
};

pub const CASES: u32 = 1000;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn pick(n: usize, seed: u32) -> MbfFunction {
    let all = mbf_positive(n);
    all[seed as usize % all.len()]
}

/// A chain built by accumulating unions, so every prefix is ordered.
fn chain(n: usize, seeds: &[u32]) -> Vec<MbfFunction> {
    let mut out: Vec<MbfFunction> = Vec::new();
    for &s in seeds {
        let a = pick(n, s);
        let next = match out.last() {
            Some(prev) => MbfFunction::from_fn(n, |v| prev.value(v) || a.value(v)).unwrap(),
            None => a,
        };
        out.push(next);
    }
    out
}

fn pair(n: usize, a: u32, b: u32) -> (MbfFunction, MbfFunction) {
    let c = chain(n, &[a, b]);
    (c[0], c[1])
}

fn class_of(k: u8) -> ClassTag {
    [ClassTag::Sigma, ClassTag::PiSigma, ClassTag::SigmaPiSigma][k as usize % 3]
}

fn witness_for(t: &OrderedTuple, class: ClassTag) -> Option<Witness> {
    match check_class(t, class).unwrap() {
        Verdict::Realizable(w) => Some(w),
        _ => None,
    }
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn realize_k_verifies(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(1usize..=4, prop::collection::vec(any::<u32>(), 1..=4)), |(n, seeds)| {
            let t = OrderedTuple::new(chain(n, &seeds)).unwrap();
            prop_assert!(verify_k(&t, &realize_k(&t)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Lifting along eta then lowering in the new direction gives back the
/// pair; lowering in any factor or simple-term direction verifies.
pub fn lift_and_lower_verify(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(1usize..=3, any::<u32>(), any::<u32>(), any::<u8>()), |(n, a, b, k)| {
            let (f, g) = pair(n, a, b);
            let class = class_of(k);
            let t = OrderedTuple::pair(f, g).unwrap();
            let Some(w) = witness_for(&t, class) else { return Ok(()) };
            let lifted = lift_eta(&f, &g, &w, class).map_err(|e| fail(format!("lift {f} {g} {class}: {e}")))?;
            let h = eta(&f, &g).unwrap();
            prop_assert_eq!(verify_witness(&OrderedTuple::new(vec![h]).unwrap(), &lifted), Ok(true));
            prop_assert!(lifted.structure.class_tag() <= class);
            let ((f2, g2), back) = lower_eta(&h, &lifted, n).map_err(|e| fail(format!("lower {h}: {e}")))?;
            prop_assert_eq!((f2, g2), (f, g));
            prop_assert_eq!(verify_witness(&t, &back), Ok(true));
            for var in 0..n {
                let s = &lifted.structure;
                if s.has_factor(var) || s.has_simple_term(var) {
                    let ((lf, lg), lw) = lower_eta(&h, &lifted, var).map_err(|e| fail(format!("lower {h} z{}: {e}", var + 1)))?;
                    prop_assert_eq!(verify_witness(&OrderedTuple::pair(lf, lg).unwrap(), &lw), Ok(true));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn collapse_witness_verifies(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(2usize..=3, any::<u32>(), any::<u32>(), any::<u8>(), any::<usize>(), any::<bool>()), |(n, a, b, k, var, up)| {
            let (f, g) = pair(n, a, b);
            let class = class_of(k);
            let t = OrderedTuple::pair(f, g).unwrap();
            let Some(w) = witness_for(&t, class) else { return Ok(()) };
            let side = if up { Side::Ceiling } else { Side::Floor };
            let var = var % n;
            let (ct, cw) = collapse_witness(&t, &w, var, side).map_err(|e| fail(format!("{f} {g} {class} z{}: {e}", var + 1)))?;
            prop_assert_eq!(verify_witness(&ct, &cw), Ok(true));
            prop_assert!(cw.structure.class_tag() <= class);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn eta_roundtrips(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(0usize..=4, any::<u32>(), any::<u32>()), |(n, a, b)| {
            let (f, g) = pair(n, a, b);
            prop_assert_eq!(eta_inverse(&eta(&f, &g).unwrap()).unwrap(), (f, g));
            let h = pick(n + 1, a);
            let (lo, hi) = eta_inverse(&h).unwrap();
            prop_assert_eq!(eta(&lo, &hi).unwrap(), h);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
