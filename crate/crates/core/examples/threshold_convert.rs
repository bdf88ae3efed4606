//! A sum witness is a weighted threshold form, and back.
use kswitch::boolean_core::MbfFunction;
use kswitch::realizability::{check_class, sigma_threshold_convert, threshold_form_to_witness, verify_witness, Verdict};
use kswitch::{ClassTag, OrderedTuple};

fn main() {
    let f = MbfFunction::from_corners(3, &["111"]).unwrap();
    let g = MbfFunction::from_corners(3, &["110", "101", "011", "111"]).unwrap();
    let t = OrderedTuple::pair(f, g).unwrap();
    let Verdict::Realizable(w) = check_class(&t, ClassTag::Sigma).unwrap() else { return };
    let tf = sigma_threshold_convert(&w).unwrap();
    let show = |xs: &[kswitch::Q]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    println!("weights [{}], thresholds [{}]", show(&tf.weights), show(&tf.thresholds));
    let back = threshold_form_to_witness(&tf).unwrap();
    println!("back to {} verified = {:?}", back.structure, verify_witness(&t, &back));
}
