//! Class separation: z1*z2+z3 realizes a pair no product of sums reaches,
//! and a four-input pair escapes every algebraic class but not a table.
use kswitch::gallery::{sum_of_products_not_product, tabulated_only};
use kswitch::realizability::{check_class, realize_k, verify_k};
use kswitch::ClassTag;

fn main() {
    for (name, t) in [("z1*z2+z3 pair", sum_of_products_not_product()), ("four-input pair", tabulated_only())] {
        println!("{name}: {}", t.functions().iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" < "));
        for class in [ClassTag::Sigma, ClassTag::PiSigma, ClassTag::SigmaPiSigma] {
            println!("  {:<13} {}", class.name(), check_class(&t, class).unwrap().label());
        }
        println!("  {:<13} {}", "k", if verify_k(&t, &realize_k(&t)) { "Realizable" } else { "?" });
    }
}
