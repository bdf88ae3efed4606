//! Packing a pair into one function on n+1 inputs and back, with witnesses.
use kswitch::boolean_core::{eta, eta_inverse};
use kswitch::gallery::product_not_sum;
use kswitch::realizability::{check_class, lift_eta, lower_eta, verify_witness, Verdict};
use kswitch::{ClassTag, OrderedTuple};

fn main() {
    let t = product_not_sum();
    let (f, g) = (t.functions()[0], t.functions()[1]);
    let h = eta(&f, &g).unwrap();
    println!("eta({f}, {g}) = {h}");
    println!("inverse matches: {}", eta_inverse(&h).unwrap() == (f, g));

    let Verdict::Realizable(w) = check_class(&t, ClassTag::PiSigma).unwrap() else { return };
    let lifted = lift_eta(&f, &g, &w, ClassTag::PiSigma).unwrap();
    let single = OrderedTuple::new(vec![h]).unwrap();
    println!("lifted {} -> {}: {:?}", w.structure, lifted.structure, verify_witness(&single, &lifted));
    let ((f2, g2), back) = lower_eta(&h, &lifted, 3).unwrap();
    println!("lowered: {} ({f2}, {g2}) verified = {:?}", back.structure, verify_witness(&t, &back));
}
