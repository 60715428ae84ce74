//! Cross-checks of reduction, compositions and irreducible words against
//! the brute-force quotient dimensions.

mod common;

use common::{int, theorem_algebras};
use presym_core::gs::{
    self, counts_by_degree, irr, is_gs, occurrences, reduce, CompositionKind, Presentation, Reducer,
};
use presym_core::lie::{self, enveloping_presentation, pbw_basis, validate, verify_theorem, Constant, LieAlgebra};
use presym_core::oracle::{quotient_dims, rank};
use presym_core::terms::enumerate_good;
use presym_core::{Alphabet, Coefficient, GoodWord, Poly, DEFAULT_CAP};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn gs_presentations() -> Vec<(&'static str, Presentation)> {
    theorem_algebras()
        .into_iter()
        .map(|(name, algebra)| (name, enveloping_presentation(&algebra).unwrap()))
        .collect()
}

fn random_poly(rng: &mut StdRng, words: &[GoodWord]) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..6) {
        let w = words[rng.gen_range(0..words.len())].clone();
        p.add_term(w, int(rng.gen_range(-3..=3)));
    }
    p
}

#[test]
fn reduction_certificates_replay() {
    let mut rng = StdRng::seed_from_u64(17);
    for (name, s) in gs_presentations() {
        let words = enumerate_good(s.alphabet(), 4, DEFAULT_CAP).unwrap();
        let mut reducer = Reducer::new(&s);
        for _ in 0..40 {
            let f = random_poly(&mut rng, &words);
            let r = reducer.reduce(&f);
            assert_eq!(r.replay(&s).unwrap(), &f - &r.normal_form, "{name}");
            let hosts: Vec<&GoodWord> = r.steps.iter().map(|s| &s.occurrence.host).collect();
            assert!(hosts.windows(2).all(|p| p[0] > p[1]), "{name}: descent");
            for (w, _) in r.normal_form.terms() {
                assert!(reducer.is_irreducible(w), "{name}: normal form");
            }
        }
    }
}

#[test]
fn normal_s_words_reduce_to_zero() {
    for (name, s) in gs_presentations() {
        let max = if s.alphabet().len() <= 2 { 5 } else { 4 };
        let hosts = enumerate_good(s.alphabet(), max, DEFAULT_CAP).unwrap();
        let mut reducer = Reducer::new(&s);
        for (i, rel) in s.relations().iter().enumerate() {
            let lead = rel.leading().unwrap();
            for host in &hosts {
                for occ in occurrences(host, lead) {
                    let word = reducer.substitute(&occ, rel).unwrap();
                    assert_eq!(word.leading().unwrap(), host);
                    assert!(
                        reducer.reduce(&word).normal_form.is_zero(),
                        "{name}: relation {i} in {host:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn overlapping_reductions_agree() {
    for (name, s) in gs_presentations() {
        let hosts = enumerate_good(s.alphabet(), 4, DEFAULT_CAP).unwrap();
        let mut reducer = Reducer::new(&s);
        for host in &hosts {
            let mut remainders = Vec::new();
            for rel in s.relations() {
                for occ in occurrences(host, rel.leading().unwrap()) {
                    let word = reducer.substitute(&occ, rel).unwrap();
                    let remainder = &Poly::monomial(host.clone()) - &word;
                    remainders.push(reducer.reduce(&remainder).normal_form);
                }
            }
            assert!(
                remainders.windows(2).all(|p| p[0] == p[1]),
                "{name}: {host:?}"
            );
        }
    }
}

#[test]
fn irreducible_words_count_quotient_dimensions() {
    for (name, s) in gs_presentations() {
        let words = irr(&s, 4, DEFAULT_CAP).unwrap();
        let dims = quotient_dims(&s, 4, DEFAULT_CAP).unwrap();
        assert_eq!(counts_by_degree(&words, 4), dims.as_slice(), "{name}");
    }
}

#[test]
fn trivial_compositions_have_dominated_certificates() {
    for (name, s) in gs_presentations() {
        let check = is_gs(&s, DEFAULT_CAP).unwrap();
        assert!(check.is_gs, "{name}");
        for report in &check.reports {
            assert!(report.trivial);
            assert_eq!(report.reduction().replay(&s).unwrap(), report.raw);
            for step in &report.certificate {
                match report.kind {
                    CompositionKind::Inclusion => assert!(step.occurrence.host < report.ambiguity),
                    CompositionKind::RightMultiplication => {
                        assert!(step.occurrence.host <= report.ambiguity)
                    }
                }
            }
        }
    }
}

#[test]
fn adding_relations_never_increases_dimensions() {
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    let words = enumerate_good(&alphabet, 3, DEFAULT_CAP).unwrap();
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..10 {
        let mut relations = Vec::new();
        let mut previous = quotient_dims(&Presentation::free(alphabet.clone()), 4, DEFAULT_CAP).unwrap();
        for _ in 0..3 {
            let r = random_poly(&mut rng, &words);
            if r.is_zero() {
                continue;
            }
            relations.push(r);
            let s = Presentation::new(alphabet.clone(), relations.clone()).unwrap();
            let dims = quotient_dims(&s, 4, DEFAULT_CAP).unwrap();
            for (now, before) in dims.as_slice().iter().zip(previous.as_slice()) {
                assert!(now <= before);
            }
            previous = dims;
        }
    }
}

#[test]
fn completed_sets_pass_the_basis_check() {
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    let words = enumerate_good(&alphabet, 2, DEFAULT_CAP).unwrap();
    let mut rng = StdRng::seed_from_u64(31);
    let mut completed = 0;
    for _ in 0..20 {
        let relations: Vec<Poly> = (0..2).map(|_| random_poly(&mut rng, &words)).filter(|p| !p.is_zero()).collect();
        let s = Presentation::new(alphabet.clone(), relations).unwrap();
        let done = gs::complete(&s, 3, DEFAULT_CAP).unwrap();
        if done.status == gs::CompletionStatus::Complete {
            completed += 1;
            assert!(is_gs(&done.presentation, DEFAULT_CAP).unwrap().is_gs);
            let dims = quotient_dims(&done.presentation, 3, DEFAULT_CAP).unwrap();
            let words = irr(&done.presentation, 3, DEFAULT_CAP).unwrap();
            assert_eq!(counts_by_degree(&words, 3), dims.as_slice());
            // same ideal as the input, degree by degree
            assert_eq!(quotient_dims(&s, 3, DEFAULT_CAP).unwrap().get(1), dims.get(1));
        }
    }
    assert!(completed > 0);
}

/// Every antisymmetric table on three generators with structure constants
/// in {-1, 0, 1}.
fn small_tables() -> Vec<LieAlgebra> {
    let pairs = [(2, 1), (3, 1), (3, 2)];
    let mut out = Vec::new();
    for code in 0..3usize.pow(9) {
        let mut digits = code;
        let mut constants = Vec::new();
        for &(i, j) in &pairs {
            let mut value = Vec::new();
            for m in 1..=3 {
                let v = (digits % 3) as i64 - 1;
                digits /= 3;
                if v != 0 {
                    value.push((m, int(v)));
                }
            }
            constants.push(Constant { i, j, value });
        }
        out.push(LieAlgebra::from_constants(Alphabet::indexed("e", 3), &constants).unwrap());
    }
    out
}

#[test]
fn theorem_holds_for_all_small_lie_algebras() {
    let mut valid = 0;
    for algebra in small_tables() {
        if !validate(&algebra).is_empty() {
            assert!(verify_theorem(&algebra, DEFAULT_CAP).is_err());
            continue;
        }
        valid += 1;
        let report = verify_theorem(&algebra, DEFAULT_CAP).unwrap();
        assert!(report.passes, "{:?}", algebra.constants());
        for r in report.presentation.relations() {
            let lead = r.leading().unwrap();
            assert_eq!(lead.len(), 2);
            assert!(lead.head() > lead.multipliers()[0].head());
        }
    }
    assert!(valid > 100, "only {valid} valid tables");
}

#[test]
fn scaling_preserves_validity_and_theorem() {
    let factors = [int(2), int(-1), Coefficient::new(3.into(), 7.into())];
    for algebra in small_tables().into_iter().step_by(97) {
        let valid = validate(&algebra).is_empty();
        for c in &factors {
            let scaled = algebra.scaled(c);
            assert_eq!(validate(&scaled).is_empty(), valid);
            if valid {
                assert!(verify_theorem(&scaled, DEFAULT_CAP).unwrap().passes);
            }
        }
    }
}

#[test]
fn pbw_counts_match_oracle() {
    for (name, algebra) in theorem_algebras() {
        let basis = pbw_basis(&algebra, 4, DEFAULT_CAP).unwrap();
        let s = lie::enveloping_presentation(&algebra).unwrap();
        let dims = quotient_dims(&s, 4, DEFAULT_CAP).unwrap();
        assert_eq!(basis.counts, dims.as_slice(), "{name}");
        assert!(basis.embedding_ok, "{name}");
        assert_eq!(basis.counts[0], algebra.dim());
    }
}

#[test]
fn reduction_is_deterministic() {
    let s = enveloping_presentation(&common::sl2()).unwrap();
    let first = is_gs(&s, DEFAULT_CAP).unwrap().reports;
    let second = is_gs(&s, DEFAULT_CAP).unwrap().reports;
    assert_eq!(first, second);
    let words = enumerate_good(s.alphabet(), 3, DEFAULT_CAP).unwrap();
    let f: Poly = words.iter().fold(Poly::zero(), |acc, w| acc + Poly::monomial(w.clone()));
    assert_eq!(reduce(&f, &s), reduce(&f, &s));
}

fn poly_strategy() -> impl Strategy<Value = Vec<Poly>> {
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    let words = enumerate_good(&alphabet, 3, DEFAULT_CAP).unwrap();
    let degree_three: Vec<GoodWord> = words.into_iter().filter(|w| w.len() == 3).collect();
    let n = degree_three.len();
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..6).prop_map(move |rows| {
        rows.into_iter()
            .map(|row| {
                let mut p = Poly::zero();
                for (w, c) in degree_three.iter().zip(row) {
                    p.add_term(w.clone(), int(c));
                }
                p
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_ignores_scaling_and_order(vectors in poly_strategy(), seed in any::<u64>()) {
        let r = rank(&vectors);
        let mut rng = StdRng::seed_from_u64(seed);
        let mut shuffled: Vec<Poly> = vectors
            .iter()
            .map(|v| v.scaled(&int(rng.gen_range(1..5) * if rng.gen() { 1 } else { -1 })))
            .collect();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(rank(&shuffled), r);
        prop_assert!(r <= vectors.len());
    }
}
