//! A pair that no sum realizes but a product of sums does.
use kswitch::gallery::product_not_sum;
use kswitch::realizability::{check_class, replay_certificate, verify_witness, write_witness_file, Verdict};
use kswitch::ClassTag;

fn main() {
    let t = product_not_sum();
    match check_class(&t, ClassTag::Sigma).unwrap() {
        Verdict::NotRealizable(c) => println!("sum: not realizable ({}, replays: {})", c.kind(), replay_certificate(&t, &c)),
        v => println!("sum: {}", v.label()),
    }
    if let Verdict::Realizable(w) = check_class(&t, ClassTag::PiSigma).unwrap() {
        println!("product of sums: realizable, verified = {:?}", verify_witness(&t, &w));
        print!("{}", write_witness_file(&w, Some(&t)));
    }
}
