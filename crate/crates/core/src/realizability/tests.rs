use super::*;
use crate::boolean_core::{enumerate_ordered_pairs, mbf_positive};
use crate::gallery::{product_not_sum, sum_of_products_not_product, tabulated_only};
use crate::interaction::qs;

fn structure(text: &str, n: usize) -> InteractionStructure {
    InteractionStructure::parse(text, n).unwrap()
}

fn witness(text: &str, high: &[Q], thresholds: &[Q]) -> Witness {
    Witness {
        structure: structure(text, high.len()),
        phi: PhiAssignment::unit_low(high.to_vec()).unwrap(),
        thresholds: thresholds.to_vec(),
    }
}

#[test]
fn product_pair_stated_witness() {
    let t = product_not_sum();
    let w = witness("(z1+z2)*z3", &[qi(4), q(41, 10), qi(2)], &[qi(9), q(9, 2)]);
    assert_eq!(verify_witness(&t, &w), Ok(true));
    let w4 = witness("(z1+z2)*z3", &qs(&[4, 4, 2]), &[qi(9), q(9, 2)]);
    assert_eq!(verify_witness(&t, &w4), Ok(true));
    let swapped = witness("(z1+z2)*z3", &qs(&[4, 4, 2]), &[q(9, 2), qi(9)]);
    assert_eq!(verify_witness(&t, &swapped), Ok(false));
    let on_value = witness("(z1+z2)*z3", &qs(&[4, 4, 2]), &[qi(10), q(9, 2)]);
    assert!(matches!(verify_witness(&t, &on_value), Err(RealizabilityError::InvalidWitness(_))));
}

#[test]
fn realize_k_examples() {
    let t = product_not_sum();
    let k = realize_k(&t);
    assert_eq!(k.thresholds, vec![q(3, 2), q(1, 2)]);
    assert!(verify_k(&t, &k));
    let one = OrderedTuple::new(vec![MbfFunction::one(2)]).unwrap();
    let k1 = realize_k(&one);
    assert!(k1.table.iter().all(|x| *x == qi(1)));
    assert_eq!(k1.thresholds, vec![q(1, 2)]);
    let mid = mbf_positive(3)[7];
    let triple = OrderedTuple::new(vec![MbfFunction::zero(3), mid, MbfFunction::one(3)]).unwrap();
    let k3 = realize_k(&triple);
    assert_eq!(k3.thresholds, vec![q(5, 2), q(3, 2), q(1, 2)]);
    for v in 0..8 {
        assert_eq!(k3.table[v], qi(1 + mid.value(v) as i64));
    }
    assert!(verify_k(&triple, &k3));
}

#[test]
fn sigma_decisions() {
    for (f, g) in enumerate_ordered_pairs(2).unwrap() {
        let t = OrderedTuple::pair(f, g).unwrap();
        match check_sigma(&t).unwrap() {
            Verdict::Realizable(w) => assert_eq!(verify_witness(&t, &w), Ok(true)),
            other => panic!("{f} {g}: {other:?}"),
        }
    }
    let t = product_not_sum();
    match check_sigma(&t).unwrap() {
        Verdict::NotRealizable(c) => assert!(replay_certificate(&t, &c)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn direction_certificates() {
    let t = product_not_sum();
    let c = necessary_condition(&t, &structure("z1+z2+z3", 3)).unwrap();
    assert_eq!(c.var, 0);
    assert!(c.replay(&t));
    assert!(necessary_condition(&t, &structure("(z1+z2)*z3", 3)).is_none());
    let t7 = sum_of_products_not_product();
    let c7 = necessary_condition(&t7, &structure("(z2+z3)*z1", 3)).unwrap();
    assert_eq!(c7.var, 0);
    assert!(c7.replay(&t7));
    // replay rejects a certificate moved to another tuple
    assert!(!c7.replay(&t));
}

#[test]
fn monomial_certificates() {
    let t7 = sum_of_products_not_product();
    let c = monomial_certificate(&t7, &structure("(z1+z2)*z3", 3)).unwrap();
    assert!(c.replay(&t7));
    assert!(monomial_certificate(&product_not_sum(), &structure("(z1+z2)*z3", 3)).is_none());
    let mut broken = c.clone();
    broken.multipliers[0] = &broken.multipliers[0] * qi(2);
    assert!(!broken.replay(&t7));
}

#[test]
fn grid_search() {
    let t = product_not_sum();
    let w = search_witness(&t, &structure("(z1+z2)*z3", 3), &SearchConfig::default()).unwrap();
    assert_eq!(verify_witness(&t, &w), Ok(true));
    let c = OrderedTuple::pair(MbfFunction::zero(1), MbfFunction::one(1)).unwrap();
    let w = search_witness(&c, &structure("z1", 1), &SearchConfig::default()).unwrap();
    assert_eq!(verify_witness(&c, &w), Ok(true));
}

#[test]
fn class_verdicts_for_named_pairs() {
    let t6 = product_not_sum();
    assert!(check_class(&t6, ClassTag::PiSigma).unwrap().is_realizable());
    let t7 = sum_of_products_not_product();
    match check_class(&t7, ClassTag::PiSigma).unwrap() {
        Verdict::NotRealizable(c) => {
            assert!(replay_certificate(&t7, &c));
            let Certificate::Exhaustion(e) = &c else { panic!() };
            let kinds: Vec<&str> = e.parts.iter().map(|p| p.certificate.kind()).collect();
            assert_eq!(kinds.iter().filter(|k| **k == "direction").count(), 4);
            assert_eq!(kinds.iter().filter(|k| **k == "monomial").count(), 1);
        }
        other => panic!("{other:?}"),
    }
    match check_class(&t7, ClassTag::SigmaPiSigma).unwrap() {
        Verdict::Realizable(w) => assert_eq!(verify_witness(&t7, &w), Ok(true)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(check_class(&t7, ClassTag::K).unwrap(), Verdict::RealizableK(_)));
}

#[test]
fn four_input_pair_is_pruned_by_collapse() {
    let t = tabulated_only();
    match check_class(&t, ClassTag::SigmaPiSigma).unwrap() {
        Verdict::NotRealizable(c) => assert!(replay_certificate(&t, &c)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn eta_lift_and_lower() {
    let t = product_not_sum();
    let [f, g] = [t.functions()[0], t.functions()[1]];
    let w = witness("(z1+z2)*z3", &qs(&[4, 4, 2]), &[qi(9), q(9, 2)]);
    let lifted = lift_eta(&f, &g, &w, ClassTag::PiSigma).unwrap();
    assert_eq!(lifted.phi.high[3], qi(2));
    let h = crate::boolean_core::eta(&f, &g).unwrap();
    let ((f2, g2), back) = lower_eta(&h, &lifted, 3).unwrap();
    assert_eq!((f2, g2), (f, g));
    assert_eq!(verify_witness(&t, &back), Ok(true));
    let c = OrderedTuple::pair(MbfFunction::zero(2), MbfFunction::one(2)).unwrap();
    let Verdict::Realizable(wc) = check_sigma(&c).unwrap() else { panic!() };
    let lifted = lift_eta(&MbfFunction::zero(2), &MbfFunction::one(2), &wc, ClassTag::Sigma).unwrap();
    let ((a, b), _) = lower_eta(&MbfFunction::projection(3, 2), &lifted, 2).unwrap();
    assert_eq!((a, b), (MbfFunction::zero(2), MbfFunction::one(2)));
}

#[test]
fn collapse_witness_examples() {
    let t7 = sum_of_products_not_product();
    let w = witness("z1*z2+z3", &[qi(3), q(31, 10), qi(4)], &[qi(9), q(9, 2)]);
    assert_eq!(verify_witness(&t7, &w), Ok(true));
    let (ct, cw) = collapse_witness(&t7, &w, 2, Side::Floor).unwrap();
    assert_eq!(cw.structure.to_string(), "z1*z2");
    assert_eq!(verify_witness(&ct, &cw), Ok(true));
    let t6 = product_not_sum();
    let w6 = witness("(z1+z2)*z3", &qs(&[4, 4, 2]), &[qi(9), q(9, 2)]);
    let (ct, cw) = collapse_witness(&t6, &w6, 2, Side::Ceiling).unwrap();
    assert_eq!(cw.phi.high, qs(&[8, 8]));
    assert_eq!(verify_witness(&ct, &cw), Ok(true));
}

#[test]
fn threshold_conversion() {
    let and = MbfFunction::from_corners(2, &["11"]).unwrap();
    let tf = ThresholdForm { weights: qs(&[1, 1]), thresholds: vec![q(3, 2)] };
    let w = threshold_form_to_witness(&tf).unwrap();
    assert_eq!(w.phi.high, qs(&[2, 2]));
    assert_eq!(w.thresholds, vec![q(7, 2)]);
    assert_eq!(verify_witness(&OrderedTuple::new(vec![and]).unwrap(), &w), Ok(true));
    let one = ThresholdForm { weights: qs(&[0, 0]), thresholds: vec![q(-3, 2)] };
    let w1 = threshold_form_to_witness(&one).unwrap();
    assert_eq!(verify_witness(&OrderedTuple::new(vec![MbfFunction::one(2)]).unwrap(), &w1), Ok(true));
    let bad = ThresholdForm { weights: qs(&[1, 1]), thresholds: vec![qi(-2)] };
    assert!(threshold_form_to_witness(&bad).is_err());
    for f in mbf_positive(3) {
        let t = OrderedTuple::new(vec![*f]).unwrap();
        let Verdict::Realizable(w) = check_sigma(&t).unwrap() else { panic!("{f}") };
        let tf = sigma_threshold_convert(&w).unwrap();
        assert_eq!(tf.functions()[0], f.table());
        let back = threshold_form_to_witness(&tf).unwrap();
        assert_eq!(verify_witness(&t, &back), Ok(true));
    }
}

#[test]
fn witness_file_roundtrip() {
    let t = product_not_sum();
    let w = witness("(z1+z2)*z3", &[qi(4), q(41, 10), qi(2)], &[qi(9), q(9, 2)]);
    let text = write_witness_file(&w, Some(&t));
    assert!(text.contains("thresholds = 9,9/2"));
    let back = parse_witness_file(&text).unwrap();
    assert_eq!(back.witness, w);
    assert_eq!(back.tuple, Some(t));
}

#[test]
fn certificates_serialize() {
    let t7 = sum_of_products_not_product();
    let Verdict::NotRealizable(c) = check_class(&t7, ClassTag::PiSigma).unwrap() else { panic!() };
    let json = serde_json::to_string(&c).unwrap();
    let back: Certificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c);
    assert!(replay_certificate(&t7, &back));
}
