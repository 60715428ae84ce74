//! Properties of the good-word basis and of the product in the free
//! right-symmetric algebra.

mod common;

use common::{l, n};
use presym_core::oracle::count_good_table;
use presym_core::poly::{leading_product, normalize, normalize_by_rewriting, Multiplier};
use presym_core::terms::{compare, enumerate_good};
use presym_core::{Alphabet, GoodWord, Letter, Poly, Word, DEFAULT_CAP};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn two_letters() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn words_up_to(len: usize) -> Vec<GoodWord> {
    enumerate_good(&two_letters(), len, DEFAULT_CAP).unwrap()
}

fn random_word(rng: &mut StdRng, letters: usize, len: usize) -> Word {
    if len == 1 {
        return l(rng.gen_range(0..letters));
    }
    let k = rng.gen_range(1..len);
    n(random_word(rng, letters, k), random_word(rng, letters, len - k))
}

fn mono(w: &GoodWord) -> Poly {
    Poly::monomial(w.clone())
}

#[test]
fn enumeration_counts_match_recurrence() {
    for letters in 1..=2 {
        let alphabet = Alphabet::indexed("x", letters);
        let words = enumerate_good(&alphabet, 6, DEFAULT_CAP).unwrap();
        let expected = count_good_table(letters, 6);
        for (len, count) in expected.iter().enumerate() {
            let got = words.iter().filter(|w| w.len() == len + 1).count();
            assert_eq!(count, &got.into(), "letters {letters}, length {}", len + 1);
        }
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn right_symmetric_identity_on_random_triples() {
    let words = words_up_to(4);
    let mut rng = StdRng::seed_from_u64(7);
    let mut mul = Multiplier::new();
    let mut checked = 0;
    while checked < 1000 {
        let u = &words[rng.gen_range(0..words.len())];
        let v = &words[rng.gen_range(0..words.len())];
        let w = &words[rng.gen_range(0..words.len())];
        if u.len() + v.len() + w.len() > 6 {
            continue;
        }
        let (u, v, w) = (mono(u), mono(v), mono(w));
        let uv = mul.multiply(&u, &v);
        let vw = mul.multiply(&v, &w);
        let uw = mul.multiply(&u, &w);
        let wv = mul.multiply(&w, &v);
        let lhs = mul.multiply(&uv, &w) - mul.multiply(&u, &vw);
        let rhs = mul.multiply(&uw, &v) - mul.multiply(&u, &wv);
        assert_eq!(lhs, rhs);
        checked += 1;
    }
}

#[test]
fn leading_word_of_product() {
    let words = words_up_to(5);
    let mut rng = StdRng::seed_from_u64(11);
    let mut mul = Multiplier::new();
    for _ in 0..500 {
        let u = &words[rng.gen_range(0..words.len())];
        let v = &words[rng.gen_range(0..words.len())];
        let product = mul.words(u, v);
        assert_eq!(product.leading().unwrap(), &leading_product(u, v));
        assert!(product.is_monic());
    }
}

#[test]
fn monotonicity_exhaustive() {
    let words = words_up_to(3);
    let mut mul = Multiplier::new();
    for u in &words {
        for v in words.iter().filter(|v| u < *v) {
            for w in &words {
                assert!(leading_product(w, u) < leading_product(w, v));
                assert!(leading_product(u, w) < leading_product(v, w));
                let (wu, wv) = (mul.words(w, u), mul.words(w, v));
                assert!(wu.leading().unwrap() < wv.leading().unwrap());
                let (uw, vw) = (mul.words(u, w), mul.words(v, w));
                assert!(uw.leading().unwrap() < vw.leading().unwrap());
            }
        }
    }
}

#[test]
fn last_multiplier_above_right_factor() {
    let words = words_up_to(4);
    let mut mul = Multiplier::new();
    for u in &words {
        let Some((prefix, last)) = u.split() else {
            continue;
        };
        for v in words.iter().filter(|v| *v < &last) {
            let whole = leading_product(u, v);
            let inner = leading_product(&prefix, v);
            assert_eq!(Some(whole.clone()), inner.attach(&last));
            let uv = mul.words(u, v);
            assert_eq!(uv.leading().unwrap(), &whole);
            let last_v = mul.words(&last, v);
            let v_last = mul.words(v, &last);
            for tail in [last_v, v_last] {
                let p = mul.word_poly(&prefix, &tail);
                assert!(p.leading().unwrap() < &whole);
            }
        }
    }
}

#[test]
fn rewriting_order_does_not_matter() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..150 {
        let len = rng.gen_range(2..=6);
        let word = random_word(&mut rng, 2, len);
        let expected = normalize(&word);
        assert_eq!(normalize_by_rewriting(&word, |_| 0), expected);
        let mut picker = StdRng::seed_from_u64(rng.gen());
        assert_eq!(
            normalize_by_rewriting(&word, |k| picker.gen_range(0..k)),
            expected
        );
    }
}

#[test]
fn good_words_are_fixed_by_normalization() {
    for w in words_up_to(5) {
        assert_eq!(normalize(&w.tree_form()), mono(&w));
    }
}

#[test]
fn non_good_words_have_good_expansions() {
    // the rewrite preserves length, so every expansion is homogeneous
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let len = rng.gen_range(3..=6);
        let word = random_word(&mut rng, 2, len);
        for (w, _) in normalize(&word).terms() {
            assert!(w.tree_form().is_good());
            assert_eq!(w.len(), len);
        }
    }
}

fn word_strategy() -> impl Strategy<Value = Word> {
    let leaf = (0..2usize).prop_map(|r| Word::leaf(Letter::new(r)));
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Word::node(a, b))
    })
}

proptest! {
    #[test]
    fn compare_is_antisymmetric_and_strict(u in word_strategy(), v in word_strategy()) {
        prop_assert_eq!(compare(&u, &v), compare(&v, &u).reverse());
        prop_assert_eq!(compare(&u, &v).is_eq(), u == v);
        if u.len() != v.len() {
            prop_assert_eq!(compare(&u, &v), u.len().cmp(&v.len()));
        }
    }

    #[test]
    fn decompose_agrees_with_is_good(u in word_strategy()) {
        match GoodWord::decompose(&u) {
            Ok(g) => {
                prop_assert!(u.is_good());
                prop_assert_eq!(g.tree_form(), u);
            }
            Err(_) => prop_assert!(!u.is_good()),
        }
    }

    #[test]
    fn left_heavy_violations_are_never_good(v1 in word_strategy(), v2 in word_strategy(), w in word_strategy()) {
        prop_assume!(v2 > w);
        prop_assert!(!Word::node(Word::node(v1, v2), w).is_good());
    }
}
