//! Brute-force oracles used to cross-check the rewriting engine.
//!
//! Nothing here looks at leading-word containment: quotient dimensions come
//! from spanning the truncated ideal with explicit products and running
//! exact elimination, and good-word counts come from a multiset recurrence.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gs::Presentation;
use crate::poly::{Multiplier, Poly};
use crate::terms::{enumerate_good, GoodWord};

/// Per-degree dimensions for degrees `1..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    dims: Vec<usize>,
}

impl DegreeTable {
    pub fn new(dims: Vec<usize>) -> Self {
        DegreeTable { dims }
    }

    pub fn get(&self, degree: usize) -> Option<usize> {
        degree.checked_sub(1).and_then(|i| self.dims.get(i)).copied()
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len()
    }

    /// Dimensions in degree order, starting at degree 1.
    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }
}

/// Number of good words of length exactly `n` over `letters` letters.
///
/// A good word is a head letter followed by a multiset of good words whose
/// lengths sum to `n - 1`, so `T(n) = k · M(n - 1)` where `M` is the Euler
/// transform of `T`:
/// `m · M(m) = Σ_{j=1..m} (Σ_{d | j} d · T(d)) · M(m - j)`.
pub fn count_good(letters: usize, n: usize) -> BigUint {
    count_good_table(letters, n).pop().unwrap_or_default()
}

/// `[T(1), .., T(n)]`.
pub fn count_good_table(letters: usize, n: usize) -> Vec<BigUint> {
    let k = BigUint::from(letters);
    let mut t: Vec<BigUint> = vec![BigUint::zero()]; // t[0] unused
    let mut multisets: Vec<BigUint> = vec![BigUint::from(1u32)]; // M(0) = 1
    let mut weighted: Vec<BigUint> = vec![BigUint::zero()]; // c(j) = Σ_{d|j} d T(d)
    for len in 1..=n {
        t.push(&k * &multisets[len - 1]);
        // c(len) needs T(d) for d | len, all known now
        let c: BigUint = (1..=len)
            .filter(|d| len % d == 0)
            .map(|d| &t[d] * BigUint::from(d))
            .sum();
        weighted.push(c);
        let total: BigUint = (1..=len).map(|j| &weighted[j] * &multisets[len - j]).sum();
        multisets.push(total / BigUint::from(len));
    }
    t.into_iter().skip(1).collect()
}

/// Semi-echelon basis keyed by leading word.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<GoodWord, Poly>,
}

impl Echelon {
    /// Adds `p` to the span; returns the new basis vector when the rank
    /// grows.
    fn insert(&mut self, mut p: Poly) -> Option<Poly> {
        while let Some((lead, c)) = p.leading_term() {
            let Some(pivot) = self.pivots.get(lead) else {
                break;
            };
            let c = -c.clone();
            p.add_scaled(pivot, &c);
        }
        if p.is_zero() {
            return None;
        }
        let p = p.monic().expect("nonzero");
        self.pivots.insert(p.leading().expect("nonzero").clone(), p.clone());
        Some(p)
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Exact rank over the rationals of the given vectors in good-word
/// coordinates.
pub fn rank(vectors: &[Poly]) -> usize {
    let mut echelon = Echelon::default();
    for v in vectors {
        echelon.insert(v.clone());
    }
    echelon.rank()
}

/// Per-degree dimensions of the quotient by the ideal generated by the
/// relations, truncated at `max_degree`.
///
/// The ideal is spanned inside the space of words of length at most
/// `max_degree` by closing the relations under left and right products with
/// good words. The basis is kept in semi-echelon form on leading words, so
/// every element of the span with leading length `m` is a combination of
/// basis vectors of leading length at most `m`; multiplying each basis
/// vector once by all short enough words therefore reaches the fixpoint.
pub fn quotient_dims(presentation: &Presentation, max_degree: usize, cap: usize) -> Result<DegreeTable> {
    let alphabet = presentation.alphabet();
    let totals = count_good_table(alphabet.len(), max_degree);
    let mut total_words = 0usize;
    for t in &totals {
        total_words = total_words.saturating_add(t.to_usize().unwrap_or(usize::MAX));
    }
    if total_words > cap {
        return Err(Error::ResourceBound { cap });
    }

    let multipliers = if max_degree > 1 {
        enumerate_good(alphabet, max_degree - 1, cap)?
    } else {
        Vec::new()
    };
    let mut mul = Multiplier::new();
    let mut echelon = Echelon::default();
    let mut queue = VecDeque::new();
    for r in presentation.relations() {
        if r.degree() <= max_degree {
            queue.extend(echelon.insert(r.clone()));
        }
    }
    while let Some(b) = queue.pop_front() {
        let room = max_degree - b.degree();
        for u in multipliers.iter().take_while(|u| u.len() <= room) {
            let u = Poly::monomial(u.clone());
            let left = mul.multiply(&u, &b);
            queue.extend(echelon.insert(left));
            let right = mul.multiply(&b, &u);
            queue.extend(echelon.insert(right));
        }
    }

    let mut in_ideal = vec![0usize; max_degree];
    for lead in echelon.pivots.keys() {
        in_ideal[lead.len() - 1] += 1;
    }
    let dims = totals
        .iter()
        .zip(in_ideal)
        .map(|(t, i)| t.to_usize().expect("bounded by cap") - i)
        .collect();
    Ok(DegreeTable::new(dims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{Alphabet, Letter};
    use num_bigint::BigInt;
    use crate::poly::Coefficient;

    #[test]
    fn count_good_values() {
        let one: Vec<usize> = count_good_table(1, 7)
            .iter()
            .map(|v| v.to_usize().unwrap())
            .collect();
        assert_eq!(one, [1, 1, 2, 4, 9, 20, 48]);
        assert_eq!(count_good(2, 2), BigUint::from(4u32));
        assert_eq!(count_good(1, 1), BigUint::from(1u32));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[]), 0);
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let (a, b) = (GoodWord::letter(Letter::new(0)), GoodWord::letter(Letter::new(1)));
        let mut v = Poly::monomial(b.attach(&a).unwrap());
        v.add_term(a.attach(&b).unwrap(), Coefficient::from_integer(BigInt::from(-1)));
        let two = v.scaled(&Coefficient::from_integer(BigInt::from(2)));
        assert_eq!(rank(&[v.clone(), two]), 1);
        let s = Presentation::new(ab, vec![v]).unwrap();
        assert_eq!(quotient_dims(&s, 2, usize::MAX).unwrap().as_slice(), [2, 3]);
    }

    #[test]
    fn free_dims() {
        let s = Presentation::free(Alphabet::indexed("x", 1));
        assert_eq!(quotient_dims(&s, 5, usize::MAX).unwrap().as_slice(), [1, 1, 2, 4, 9]);
    }
}
