//! Elements of the free right-symmetric algebra over the rationals.
//!
//! A [`Poly`] is a finite linear combination of good words. Products are
//! brought back to the good-word basis with the right-symmetric rewrite
//!
//! ```text
//! (u' m) v = (u' v) m + u' (m v) - u' (v m)      whenever m > v,
//! ```
//!
//! applied where `u = (u' m)` is good but `(u v)` is not.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::terms::{Alphabet, GoodWord, Letter, Word};

pub type Coefficient = BigRational;

/// Finite rational combination of good words; zero coefficients are never
/// stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<GoodWord, Coefficient>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(word: GoodWord) -> Self {
        Self::term(Coefficient::one(), word)
    }

    pub fn term(coefficient: Coefficient, word: GoodWord) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coefficient);
        p
    }

    pub fn letter(letter: Letter) -> Self {
        Self::monomial(GoodWord::letter(letter))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending order, leading term first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&GoodWord, &Coefficient)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, word: &GoodWord) -> Option<&Coefficient> {
        self.terms.get(word)
    }

    pub fn leading_term(&self) -> Option<(&GoodWord, &Coefficient)> {
        self.terms.last_key_value()
    }

    pub fn leading(&self) -> Result<&GoodWord> {
        self.leading_term().map(|(w, _)| w).ok_or(Error::ZeroPolynomial)
    }

    pub fn lc(&self) -> Result<&Coefficient> {
        self.leading_term().map(|(_, c)| c).ok_or(Error::ZeroPolynomial)
    }

    pub fn monic(&self) -> Result<Poly> {
        let lc = self.lc()?;
        Ok(self.scaled(&lc.recip()))
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_ok_and(|c| c.is_one())
    }

    /// Length of the leading word; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.leading_term().map_or(0, |(w, _)| w.len())
    }

    pub fn add_term(&mut self, word: GoodWord, coefficient: Coefficient) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &Poly, factor: &Coefficient) {
        if factor.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &Coefficient) -> Poly {
        if factor.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(GoodWord, Coefficient)> {
        self.terms.pop_last()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.terms.keys().flat_map(GoodWord::letters).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Prints in the bracketed expression syntax, e.g.
    /// `((a a) b) + (a (b a)) - 3/2 (a (a b))`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        PolyDisplay {
            poly: self,
            alphabet,
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms().map(|(w, c)| (w, c.to_string()))).finish()
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude} ")?;
            }
            write!(f, "{}", w.display(self.alphabet))?;
        }
        Ok(())
    }
}

impl From<GoodWord> for Poly {
    fn from(word: GoodWord) -> Self {
        Poly::monomial(word)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        multiply(self, rhs)
    }
}

/// Product engine with a memo table of good-word products. Reuse one
/// instance across many products of related words.
#[derive(Default)]
pub struct Multiplier {
    cache: HashMap<(GoodWord, GoodWord), Arc<Poly>>,
}

impl Multiplier {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[u][v]` expanded in the good-word basis.
    pub fn words(&mut self, u: &GoodWord, v: &GoodWord) -> Arc<Poly> {
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Arc::clone(hit);
        }
        let product = match u.attach(v) {
            Some(good) => Poly::monomial(good),
            None => {
                let (prefix, last) = u.split().expect("a letter accepts any right factor");
                let prefix_v = self.words(&prefix, v);
                let mut out = self.poly_word(&prefix_v, &last);
                let last_v = self.words(&last, v);
                out += &self.word_poly(&prefix, &last_v);
                let v_last = self.words(v, &last);
                out -= &self.word_poly(&prefix, &v_last);
                out
            }
        };
        let product = Arc::new(product);
        self.cache.insert(key, Arc::clone(&product));
        product
    }

    pub fn multiply(&mut self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in &p.terms {
            for (v, b) in &q.terms {
                let uv = self.words(u, v);
                out.add_scaled(&uv, &(a * b));
            }
        }
        out
    }

    pub fn word_poly(&mut self, u: &GoodWord, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (v, b) in &q.terms {
            let uv = self.words(u, v);
            out.add_scaled(&uv, b);
        }
        out
    }

    pub fn poly_word(&mut self, p: &Poly, v: &GoodWord) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in &p.terms {
            let uv = self.words(u, v);
            out.add_scaled(&uv, a);
        }
        out
    }

    pub fn normalize(&mut self, word: &Word) -> Poly {
        match word.children() {
            None => Poly::letter(word.as_letter().expect("leaf")),
            Some((left, right)) => {
                let left = self.normalize(left);
                let right = self.normalize(right);
                self.multiply(&left, &right)
            }
        }
    }

    pub fn cached_products(&self) -> usize {
        self.cache.len()
    }
}

/// Expansion of an arbitrary bracketed word in the good-word basis.
pub fn normalize(word: &Word) -> Poly {
    Multiplier::new().normalize(word)
}

pub fn multiply(p: &Poly, q: &Poly) -> Poly {
    Multiplier::new().multiply(p, q)
}

/// Leading word of `[u][v]`: `v` inserted into the multiplier list of `u`
/// after all multipliers `<= v`. No product is expanded.
pub fn leading_product(u: &GoodWord, v: &GoodWord) -> GoodWord {
    u.insert(v)
}

/// Normalizes by explicit rewriting of word-level linear combinations.
///
/// Each step chooses one pending non-good word and one rewritable node in
/// it: a node `((v1 v2) w)` whose subtrees are good with `v2 > w`. `pick` is
/// called with the number of candidates and returns the chosen index, first
/// for the word and then for the node; nodes are offered in leftmost-innermost
/// order, so `|_| 0` is the leftmost-innermost strategy.
pub fn normalize_by_rewriting<F>(word: &Word, mut pick: F) -> Poly
where
    F: FnMut(usize) -> usize,
{
    let mut pending: BTreeMap<Word, Coefficient> = BTreeMap::new();
    let mut done = Poly::zero();
    pending.insert(word.clone(), Coefficient::one());
    while !pending.is_empty() {
        let index = pick(pending.len()) % pending.len();
        let key = pending.keys().nth(index).cloned().expect("index in range");
        let coefficient = pending.remove(&key).expect("present");
        if let Ok(good) = GoodWord::decompose(&key) {
            done.add_term(good, coefficient);
            continue;
        }
        let mut sites = Vec::new();
        rewrite_sites(&key, &mut Vec::new(), &mut sites);
        let site = &sites[pick(sites.len()) % sites.len()];
        for (replacement, sign) in rewrite_at(&key, site) {
            let c = if sign { coefficient.clone() } else { -&coefficient };
            let slot = pending.entry(replacement).or_insert_with(Coefficient::zero);
            *slot += c;
        }
        pending.retain(|_, c| !c.is_zero());
    }
    done
}

// Paths (false = left, true = right) of innermost non-good nodes, in
// postorder.
fn rewrite_sites(word: &Word, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    let Some((left, right)) = word.children() else {
        return;
    };
    path.push(false);
    rewrite_sites(left, path, out);
    path.pop();
    path.push(true);
    rewrite_sites(right, path, out);
    path.pop();
    if let Some((_, v2)) = left.children() {
        if left.is_good() && right.is_good() && v2 > right {
            out.push(path.clone());
        }
    }
}

fn rewrite_at(word: &Word, path: &[bool]) -> Vec<(Word, bool)> {
    let Some((left, right)) = word.children() else {
        unreachable!("rewrite site is a composite node");
    };
    match path.split_first() {
        None => {
            let (v1, v2) = left.children().expect("rewrite site has a composite left factor");
            let w = right;
            vec![
                (Word::node(Word::node(v1.clone(), w.clone()), v2.clone()), true),
                (Word::node(v1.clone(), Word::node(v2.clone(), w.clone())), true),
                (Word::node(v1.clone(), Word::node(w.clone(), v2.clone())), false),
            ]
        }
        Some((false, rest)) => rewrite_at(left, rest)
            .into_iter()
            .map(|(l, s)| (Word::node(l, right.clone()), s))
            .collect(),
        Some((true, rest)) => rewrite_at(right, rest)
            .into_iter()
            .map(|(r, s)| (Word::node(left.clone(), r), s))
            .collect(),
    }
}
