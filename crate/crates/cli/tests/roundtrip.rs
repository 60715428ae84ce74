//! Printing a polynomial and parsing it back gives the same polynomial.

use num_bigint::BigInt;
use presym_cli::parse::parse_expression;
use presym_core::terms::enumerate_good;
use presym_core::{Alphabet, Coefficient, Poly, DEFAULT_CAP};
use proptest::prelude::*;

fn alphabet() -> Alphabet {
    Alphabet::new(["a", "b", "c1"]).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    let words = enumerate_good(&alphabet(), 4, DEFAULT_CAP).unwrap();
    let n = words.len();
    prop::collection::vec((0..n, -20i64..20, 1i64..6), 0..6).prop_map(move |terms| {
        let mut p = Poly::zero();
        for (k, num, den) in terms {
            p.add_term(words[k].clone(), Coefficient::new(BigInt::from(num), BigInt::from(den)));
        }
        p
    })
}

proptest! {
    #[test]
    fn print_then_parse(p in poly_strategy()) {
        let alphabet = alphabet();
        let printed = p.display(&alphabet).to_string();
        let parsed = parse_expression(&printed, &alphabet).unwrap();
        prop_assert_eq!(parsed, p, "{}", printed);
    }
}
