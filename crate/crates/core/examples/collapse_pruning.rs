//! Collapsing a witness along one input gives a witness for the floor or
//! ceiling pair, so a non-realizable floor rules out the whole pair.
use kswitch::gallery::{sum_of_products_not_product, tabulated_only};
use kswitch::realizability::{check_class, collapse_witness, verify_witness, Verdict};
use kswitch::{ClassTag, OrderedTuple, Side};

fn main() {
    let t = tabulated_only();
    let fs: Vec<_> = t.functions().iter().map(|f| f.collapse(3, Side::Floor).unwrap()).collect();
    let floor = OrderedTuple::new(fs).unwrap();
    println!("floor in z4 equals the z1*z2+z3 pair: {}", floor == sum_of_products_not_product());
    println!("so the four-input pair is {} for products of sums", check_class(&t, ClassTag::PiSigma).unwrap().label());

    let Verdict::Realizable(w) = check_class(&floor, ClassTag::SigmaPiSigma).unwrap() else { return };
    println!("witness {} for the floor", w.structure);
    for var in 0..3 {
        for side in [Side::Floor, Side::Ceiling] {
            let (ct, cw) = collapse_witness(&floor, &w, var, side).unwrap();
            println!("  z{} {:?}: {} verified = {:?}", var + 1, side, cw.structure, verify_witness(&ct, &cw));
        }
    }
}
