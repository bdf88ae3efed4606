//! Class counts over all ordered pairs on three inputs.
use kswitch::boolean_core::enumerate_ordered_pairs;
use kswitch::realizability::check_class;
use kswitch::{ClassTag, OrderedTuple};

fn main() {
    let pairs = enumerate_ordered_pairs(3).unwrap();
    println!("{} pairs", pairs.len());
    for class in [ClassTag::Sigma, ClassTag::PiSigma, ClassTag::SigmaPiSigma] {
        let mut counts = [0usize; 3];
        for (f, g) in &pairs {
            let v = check_class(&OrderedTuple::pair(*f, *g).unwrap(), class).unwrap();
            counts[match v.label() {
                "Realizable" => 0,
                "NotRealizable" => 1,
                _ => 2,
            }] += 1;
        }
        println!("{:<13} {}/{}/{}", class.name(), counts[0], counts[1], counts[2]);
    }
}
