//! Letters, bracketed words and the good-word basis.
//!
//! A [`Word`] is an arbitrary binary bracketing of letters. A [`GoodWord`] is
//! stored in canonical form: a head letter followed by a nondecreasing list
//! of good right multipliers, so that its tree form is
//! `((..((head m1) m2)..) mn)`. Both carry the same deg-lex order: longer
//! words are greater, equal-length composites compare left subwords first
//! and then right subwords, letters compare by rank.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A generator, identified by its rank in the declared alphabet order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(rank: usize) -> Self {
        Letter(rank as u32)
    }

    pub fn rank(self) -> usize {
        self.0 as usize
    }
}

/// Ordered, finite set of named generators. The first declared name is the
/// least letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::EmptyGenerator);
            }
            if alphabet.index.contains_key(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            alphabet
                .index
                .insert(name.clone(), Letter::new(alphabet.names.len()));
            alphabet.names.push(name);
        }
        Ok(alphabet)
    }

    /// Generators `e1 < e2 < .. < en`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("distinct generated names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter::new)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.rank()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.rank() < self.names.len()
    }
}

/// A fully bracketed nonassociative word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Leaf(Letter),
    Node {
        left: Box<Word>,
        right: Box<Word>,
        len: usize,
    },
}

// Words always have at least one letter.
#[allow(clippy::len_without_is_empty)]
impl Word {
    pub fn leaf(letter: Letter) -> Self {
        Word::Leaf(letter)
    }

    pub fn node(left: Word, right: Word) -> Self {
        let len = left.len() + right.len();
        Word::Node {
            left: Box::new(left),
            right: Box::new(right),
            len,
        }
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        match self {
            Word::Leaf(_) => 1,
            Word::Node { len, .. } => *len,
        }
    }

    pub fn as_letter(&self) -> Option<Letter> {
        match self {
            Word::Leaf(l) => Some(*l),
            Word::Node { .. } => None,
        }
    }

    pub fn children(&self) -> Option<(&Word, &Word)> {
        match self {
            Word::Leaf(_) => None,
            Word::Node { left, right, .. } => Some((left, right)),
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            Word::Leaf(l) => out.push(*l),
            Word::Node { left, right, .. } => {
                left.collect_letters(out);
                right.collect_letters(out);
            }
        }
    }

    /// Segal's goodness condition, checked directly on the tree.
    pub fn is_good(&self) -> bool {
        match self {
            Word::Leaf(_) => true,
            Word::Node { left, right, .. } => {
                left.is_good()
                    && right.is_good()
                    && match left.children() {
                        None => true,
                        Some((_, v2)) => v2 <= &**right,
                    }
            }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        Named {
            alphabet,
            item: self,
        }
    }

    fn fmt_named(&self, f: &mut fmt::Formatter<'_>, alphabet: &Alphabet) -> fmt::Result {
        match self {
            Word::Leaf(l) => f.write_str(alphabet.name(*l)),
            Word::Node { left, right, .. } => {
                f.write_str("(")?;
                left.fmt_named(f, alphabet)?;
                f.write_str(" ")?;
                right.fmt_named(f, alphabet)?;
                f.write_str(")")
            }
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        match (self, other) {
            (Word::Leaf(a), Word::Leaf(b)) => a.cmp(b),
            (
                Word::Node {
                    left: l1,
                    right: r1,
                    ..
                },
                Word::Node {
                    left: l2,
                    right: r2,
                    ..
                },
            ) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
            // equal lengths force equal shapes at the root
            _ => unreachable!("a letter and a composite never share a length"),
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deg-lex comparison of two bracketed words.
pub fn compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

struct Node {
    head: Letter,
    multipliers: Vec<GoodWord>,
    // ends[k] = length of the prefix word head R_{m1} .. R_{mk}
    ends: Vec<usize>,
    hash: u64,
}

/// A good word in canonical head + sorted multipliers form.
#[derive(Clone)]
pub struct GoodWord(Arc<Node>);

#[allow(clippy::len_without_is_empty)]
impl GoodWord {
    pub fn letter(head: Letter) -> Self {
        Self::from_sorted(head, Vec::new())
    }

    /// Builds `head R_{m1} .. R_{mn}`; the multipliers must be nondecreasing.
    pub fn new(head: Letter, multipliers: Vec<GoodWord>) -> Result<Self> {
        if multipliers.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedMultipliers);
        }
        Ok(Self::from_sorted(head, multipliers))
    }

    fn from_sorted(head: Letter, multipliers: Vec<GoodWord>) -> Self {
        let mut ends = Vec::with_capacity(multipliers.len() + 1);
        ends.push(1);
        let mut hasher = DefaultHasher::new();
        head.hash(&mut hasher);
        for m in &multipliers {
            ends.push(ends[ends.len() - 1] + m.len());
            hasher.write_u64(m.0.hash);
        }
        GoodWord(Arc::new(Node {
            head,
            multipliers,
            ends,
            hash: hasher.finish(),
        }))
    }

    pub fn head(&self) -> Letter {
        self.0.head
    }

    pub fn multipliers(&self) -> &[GoodWord] {
        &self.0.multipliers
    }

    pub fn len(&self) -> usize {
        self.0.ends[self.0.multipliers.len()]
    }

    /// Length of `prefix(k)`.
    pub fn prefix_len(&self, k: usize) -> usize {
        self.0.ends[k]
    }

    pub fn is_letter(&self) -> bool {
        self.0.multipliers.is_empty()
    }

    pub fn last_multiplier(&self) -> Option<&GoodWord> {
        self.0.multipliers.last()
    }

    /// The word `head R_{m1} .. R_{mk}` made of the first `k` multipliers.
    pub fn prefix(&self, k: usize) -> GoodWord {
        if k == self.0.multipliers.len() {
            return self.clone();
        }
        Self::from_sorted(self.0.head, self.0.multipliers[..k].to_vec())
    }

    /// Left and right factors of the tree form, `None` for a letter.
    pub fn split(&self) -> Option<(GoodWord, GoodWord)> {
        let n = self.0.multipliers.len();
        let last = self.0.multipliers.last()?;
        Some((self.prefix(n - 1), last.clone()))
    }

    /// `(self w)` when that product is still a good word.
    pub fn attach(&self, w: &GoodWord) -> Option<GoodWord> {
        match self.last_multiplier() {
            Some(last) if last > w => None,
            _ => {
                let mut multipliers = self.0.multipliers.clone();
                multipliers.push(w.clone());
                Some(Self::from_sorted(self.0.head, multipliers))
            }
        }
    }

    /// Inserts `v` into the multiplier list after every multiplier `<= v`.
    pub fn insert(&self, v: &GoodWord) -> GoodWord {
        let at = self.0.multipliers.partition_point(|m| m <= v);
        let mut multipliers = Vec::with_capacity(self.0.multipliers.len() + 1);
        multipliers.extend_from_slice(&self.0.multipliers[..at]);
        multipliers.push(v.clone());
        multipliers.extend_from_slice(&self.0.multipliers[at..]);
        Self::from_sorted(self.0.head, multipliers)
    }

    pub fn tree_form(&self) -> Word {
        self.0
            .multipliers
            .iter()
            .fold(Word::leaf(self.0.head), |acc, m| Word::node(acc, m.tree_form()))
    }

    /// Canonical form of a good bracketed word.
    pub fn decompose(word: &Word) -> Result<GoodWord> {
        match word {
            Word::Leaf(l) => Ok(GoodWord::letter(*l)),
            Word::Node { left, right, .. } => {
                let left = Self::decompose(left)?;
                let right = Self::decompose(right)?;
                left.attach(&right).ok_or(Error::NotGood)
            }
        }
    }

    /// Every letter occurring in the word.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = vec![self.0.head];
        for m in &self.0.multipliers {
            out.extend(m.letters());
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        Named {
            alphabet,
            item: self,
        }
    }

    fn fmt_prefix(&self, k: usize, f: &mut fmt::Formatter<'_>, alphabet: &Alphabet) -> fmt::Result {
        if k == 0 {
            return f.write_str(alphabet.name(self.0.head));
        }
        f.write_str("(")?;
        self.fmt_prefix(k - 1, f, alphabet)?;
        f.write_str(" ")?;
        let m = &self.0.multipliers[k - 1];
        m.fmt_prefix(m.0.multipliers.len(), f, alphabet)?;
        f.write_str(")")
    }
}

/// Deg-lex comparison of the prefixes `a[..ka]` and `b[..kb]`, walking the
/// tree form without materializing it.
fn cmp_prefix(a: &Node, ka: usize, b: &Node, kb: usize) -> Ordering {
    let (la, lb) = (a.ends[ka], b.ends[kb]);
    if la != lb {
        return la.cmp(&lb);
    }
    if la == 1 {
        return a.head.cmp(&b.head);
    }
    cmp_prefix(a, ka - 1, b, kb - 1).then_with(|| a.multipliers[ka - 1].cmp(&b.multipliers[kb - 1]))
}

impl Ord for GoodWord {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        cmp_prefix(&self.0, self.0.multipliers.len(), &other.0, other.0.multipliers.len())
    }
}

impl PartialOrd for GoodWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for GoodWord {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.head == other.0.head
                && self.0.ends == other.0.ends
                && self.0.multipliers == other.0.multipliers)
    }
}

impl Eq for GoodWord {}

impl Hash for GoodWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for GoodWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_letter() {
            write!(f, "x{}", self.0.head.rank())
        } else {
            write!(f, "x{}", self.0.head.rank())?;
            for m in &self.0.multipliers {
                write!(f, "R[{m:?}]")?;
            }
            Ok(())
        }
    }
}

struct Named<'a, T: ?Sized> {
    alphabet: &'a Alphabet,
    item: &'a T,
}

impl fmt::Display for Named<'_, Word> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.item.fmt_named(f, self.alphabet)
    }
}

impl fmt::Display for Named<'_, GoodWord> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.item.fmt_prefix(self.item.multipliers().len(), f, self.alphabet)
    }
}

/// Good words of every length `1..=max_len`, grouped by length; each group
/// sorted ascending.
pub(crate) fn good_words_by_length(
    letters: usize,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Vec<GoodWord>>> {
    // by_len[n] holds the good words of length n; by_len[0] stays empty
    let mut by_len: Vec<Vec<GoodWord>> = vec![Vec::new()];
    let mut total = 0usize;
    for n in 1..=max_len {
        let pool: Vec<GoodWord> = by_len.iter().flatten().cloned().collect();
        let mut layer = Vec::new();
        let mut multisets = Vec::new();
        let mut current = Vec::new();
        collect_multisets(&pool, 0, n - 1, &mut current, &mut multisets, cap)?;
        for head in (0..letters).map(Letter::new) {
            for ms in &multisets {
                total += 1;
                if total > cap {
                    return Err(Error::ResourceBound { cap });
                }
                layer.push(GoodWord::from_sorted(head, ms.clone()));
            }
        }
        layer.sort();
        by_len.push(layer);
    }
    Ok(by_len)
}

// Nondecreasing selections from `pool` (sorted ascending) with total length
// `remaining`.
fn collect_multisets(
    pool: &[GoodWord],
    start: usize,
    remaining: usize,
    current: &mut Vec<GoodWord>,
    out: &mut Vec<Vec<GoodWord>>,
    cap: usize,
) -> Result<()> {
    if remaining == 0 {
        if out.len() >= cap {
            return Err(Error::ResourceBound { cap });
        }
        out.push(current.clone());
        return Ok(());
    }
    for i in start..pool.len() {
        let len = pool[i].len();
        if len > remaining {
            break;
        }
        current.push(pool[i].clone());
        collect_multisets(pool, i, remaining - len, current, out, cap)?;
        current.pop();
    }
    Ok(())
}

/// All good words of length at most `max_len`, ascending.
pub fn enumerate_good(alphabet: &Alphabet, max_len: usize, cap: usize) -> Result<Vec<GoodWord>> {
    let by_len = good_words_by_length(alphabet.len(), max_len, cap)?;
    Ok(by_len.into_iter().flatten().collect())
}

/// All good words strictly below `bound`.
pub fn good_below(bound: &GoodWord, alphabet: &Alphabet, cap: usize) -> Result<Vec<GoodWord>> {
    let by_len = good_words_by_length(alphabet.len(), bound.len(), cap)?;
    Ok(by_len
        .into_iter()
        .flatten()
        .filter(|w| w < bound)
        .collect())
}
