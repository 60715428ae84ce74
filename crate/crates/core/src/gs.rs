//! Gröbner–Shirshov machinery: subword occurrences, normal S-words,
//! reduction modulo a relation set, compositions, basis checking and
//! completion.
//!
//! A subword of a good word is a complete bracketed factor, i.e. a subtree
//! of its tree form. Every subtree of a good word is good, so a subtree is
//! addressed as a prefix `head R_{m1} .. R_{mk}` of some good word reached
//! by a path of left/right steps.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{Coefficient, Multiplier, Poly};
use crate::terms::{good_below, good_words_by_length, Alphabet, GoodWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Left,
    Right,
}

/// A subtree of `host`, addressed from the root of its tree form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub host: GoodWord,
    pub path: Vec<Step>,
}

impl Occurrence {
    pub fn root(host: GoodWord) -> Self {
        Occurrence {
            host,
            path: Vec::new(),
        }
    }

    /// The good word sitting at `path`.
    pub fn subtree(&self) -> Result<GoodWord> {
        let (word, k) = walk(&self.host, &self.path, |_| {})?;
        Ok(word.prefix(k))
    }
}

// Follows `path`, reporting the sibling of every step taken; returns the
// final position as (word, prefix length).
fn walk<'a>(
    host: &'a GoodWord,
    path: &[Step],
    mut sibling: impl FnMut(Sibling<'a>),
) -> Result<(&'a GoodWord, usize)> {
    let mut word = host;
    let mut k = host.multipliers().len();
    for step in path {
        if k == 0 {
            return Err(Error::InvalidPath);
        }
        let right = &word.multipliers()[k - 1];
        match step {
            Step::Left => {
                sibling(Sibling::Right(right));
                k -= 1;
            }
            Step::Right => {
                sibling(Sibling::Left(word, k - 1));
                word = right;
                k = right.multipliers().len();
            }
        }
    }
    Ok((word, k))
}

enum Sibling<'a> {
    // the subtree was the left factor; this is the right factor
    Right(&'a GoodWord),
    // the subtree was the right factor; the left factor is word.prefix(k)
    Left(&'a GoodWord, usize),
}

fn prefix_matches(word: &GoodWord, k: usize, pattern: &GoodWord) -> bool {
    word.prefix_len(k) == pattern.len()
        && word.head() == pattern.head()
        && word.multipliers()[..k] == *pattern.multipliers()
}

// Preorder visit of every subtree; stops early when `f` returns true.
fn visit(
    word: &GoodWord,
    k: usize,
    path: &mut Vec<Step>,
    f: &mut impl FnMut(&[Step], &GoodWord, usize) -> bool,
) -> bool {
    if f(path, word, k) {
        return true;
    }
    if k == 0 {
        return false;
    }
    path.push(Step::Left);
    if visit(word, k - 1, path, f) {
        return true;
    }
    path.pop();
    path.push(Step::Right);
    let right = &word.multipliers()[k - 1];
    if visit(right, right.multipliers().len(), path, f) {
        return true;
    }
    path.pop();
    false
}

/// Every position of `pattern` as a subtree of `host`, outermost and
/// leftmost first.
pub fn occurrences(host: &GoodWord, pattern: &GoodWord) -> Vec<Occurrence> {
    let mut out = Vec::new();
    visit(host, host.multipliers().len(), &mut Vec::new(), &mut |path, word, k| {
        if prefix_matches(word, k, pattern) {
            out.push(Occurrence {
                host: host.clone(),
                path: path.to_vec(),
            });
        }
        false
    });
    out
}

/// Evaluates the normal S-word obtained by plugging `g` into `occ`.
pub fn substitute(occ: &Occurrence, g: &Poly) -> Result<Poly> {
    substitute_with(&mut Multiplier::new(), occ, g)
}

fn substitute_with(mul: &mut Multiplier, occ: &Occurrence, g: &Poly) -> Result<Poly> {
    let mut context = Vec::with_capacity(occ.path.len());
    let (word, k) = walk(&occ.host, &occ.path, |s| context.push(s))?;
    let lead = g.leading()?;
    if !prefix_matches(word, k, lead) {
        return Err(Error::PatternMismatch);
    }
    let mut out = g.clone();
    for sibling in context.into_iter().rev() {
        out = match sibling {
            Sibling::Right(right) => mul.poly_word(&out, right),
            Sibling::Left(left, k) => mul.word_poly(&left.prefix(k), &out),
        };
    }
    Ok(out)
}

/// Ordered alphabet together with a list of monic relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<Poly>,
}

impl Presentation {
    /// Makes every relation monic; rejects zero relations and letters
    /// outside the alphabet.
    pub fn new(alphabet: Alphabet, relations: Vec<Poly>) -> Result<Self> {
        let relations = relations
            .iter()
            .map(|r| {
                if let Some(bad) = r.letters().into_iter().find(|l| !alphabet.contains(*l)) {
                    return Err(Error::LetterOutOfRange {
                        rank: bad.rank(),
                        size: alphabet.len(),
                    });
                }
                r.monic()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            alphabet,
            relations,
        })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        Presentation {
            alphabet,
            relations: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn leading_words(&self) -> Vec<GoodWord> {
        self.relations
            .iter()
            .map(|r| r.leading().expect("relations are nonzero").clone())
            .collect()
    }

    fn with_relations(&self, relations: Vec<Poly>) -> Self {
        Presentation {
            alphabet: self.alphabet.clone(),
            relations,
        }
    }
}

/// One step of a reduction: `coefficient * [a s b]` was subtracted, where
/// `s` is relation `relation` plugged in at `occurrence`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub relation: usize,
    pub occurrence: Occurrence,
    pub coefficient: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub normal_form: Poly,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    /// Sum of the recorded S-words; equals `f - normal_form` for the input
    /// `f` of the reduction.
    pub fn replay(&self, presentation: &Presentation) -> Result<Poly> {
        let mut mul = Multiplier::new();
        let mut out = Poly::zero();
        for step in &self.steps {
            let s = presentation
                .relations
                .get(step.relation)
                .ok_or(Error::PatternMismatch)?;
            let word = substitute_with(&mut mul, &step.occurrence, s)?;
            out.add_scaled(&word, &step.coefficient);
        }
        Ok(out)
    }
}

/// Reduction engine bound to one relation set; keeps its product cache
/// across calls.
pub struct Reducer<'a> {
    presentation: &'a Presentation,
    by_shape: HashMap<(usize, Letter), Vec<usize>>,
    mul: Multiplier,
}

impl<'a> Reducer<'a> {
    pub fn new(presentation: &'a Presentation) -> Self {
        let mut by_shape: HashMap<(usize, Letter), Vec<usize>> = HashMap::new();
        for (i, r) in presentation.relations.iter().enumerate() {
            let lead = r.leading().expect("relations are nonzero");
            by_shape.entry((lead.len(), lead.head())).or_default().push(i);
        }
        Reducer {
            presentation,
            by_shape,
            mul: Multiplier::new(),
        }
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.presentation
    }

    pub fn multiplier(&mut self) -> &mut Multiplier {
        &mut self.mul
    }

    /// Leftmost-outermost occurrence of any leading word in `host`; ties
    /// at one position go to the lowest relation index.
    pub fn find(&self, host: &GoodWord) -> Option<(usize, Occurrence)> {
        let relations = &self.presentation.relations;
        let mut found = None;
        visit(host, host.multipliers().len(), &mut Vec::new(), &mut |path, word, k| {
            let Some(candidates) = self.by_shape.get(&(word.prefix_len(k), word.head())) else {
                return false;
            };
            for &i in candidates {
                let lead = relations[i].leading().expect("relations are nonzero");
                if word.multipliers()[..k] == *lead.multipliers() {
                    found = Some((
                        i,
                        Occurrence {
                            host: host.clone(),
                            path: path.to_vec(),
                        },
                    ));
                    return true;
                }
            }
            false
        });
        found
    }

    pub fn is_irreducible(&self, word: &GoodWord) -> bool {
        self.find(word).is_none()
    }

    pub fn substitute(&mut self, occ: &Occurrence, g: &Poly) -> Result<Poly> {
        substitute_with(&mut self.mul, occ, g)
    }

    pub fn reduce(&mut self, f: &Poly) -> Reduction {
        let mut remainder = f.clone();
        let mut normal_form = Poly::zero();
        let mut steps = Vec::new();
        while let Some((lead, c)) = remainder.leading_term() {
            let lead = lead.clone();
            match self.find(&lead) {
                Some((i, occurrence)) => {
                    let coefficient = c.clone();
                    let s = &self.presentation.relations[i];
                    let word = substitute_with(&mut self.mul, &occurrence, s)
                        .expect("occurrence matches the relation's leading word");
                    remainder.add_scaled(&word, &-&coefficient);
                    assert!(
                        remainder.coefficient(&lead).is_none(),
                        "normal S-word must have the host as leading word"
                    );
                    steps.push(ReductionStep {
                        relation: i,
                        occurrence,
                        coefficient,
                    });
                }
                None => {
                    let (w, c) = remainder.pop_leading().expect("nonzero");
                    normal_form.add_term(w, c);
                }
            }
        }
        Reduction { normal_form, steps }
    }
}

/// Normal form of `f` modulo the relations, with its certificate.
pub fn reduce(f: &Poly, presentation: &Presentation) -> Reduction {
    Reducer::new(presentation).reduce(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositionKind {
    Inclusion,
    RightMultiplication,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub kind: CompositionKind,
    /// Relation indices: `[f, g]` for inclusion, `[f]` for right
    /// multiplication.
    pub sources: Vec<usize>,
    /// Position of `g` inside the leading word of `f` (inclusion only).
    pub path: Option<Vec<Step>>,
    /// The right factor `[w]` (right multiplication only).
    pub multiplier: Option<GoodWord>,
    /// The ambiguous word the composition resolves: `f̄` for inclusion,
    /// the leading word of `f·[w]` for right multiplication.
    pub ambiguity: GoodWord,
    pub raw: Poly,
    pub normal_form: Poly,
    pub certificate: Vec<ReductionStep>,
    pub trivial: bool,
}

impl CompositionReport {
    fn new(
        kind: CompositionKind,
        sources: Vec<usize>,
        path: Option<Vec<Step>>,
        multiplier: Option<GoodWord>,
        ambiguity: GoodWord,
        raw: Poly,
        reduction: Reduction,
    ) -> Self {
        CompositionReport {
            kind,
            sources,
            path,
            multiplier,
            ambiguity,
            raw,
            trivial: reduction.normal_form.is_zero(),
            normal_form: reduction.normal_form,
            certificate: reduction.steps,
        }
    }

    pub fn reduction(&self) -> Reduction {
        Reduction {
            normal_form: self.normal_form.clone(),
            steps: self.certificate.clone(),
        }
    }
}

impl Reducer<'_> {
    /// Compositions of inclusion of relation `g` in relation `f`.
    pub fn inclusion_compositions(&mut self, f: usize, g: usize) -> Vec<CompositionReport> {
        let relations = &self.presentation.relations;
        let (fp, gp) = (&relations[f], &relations[g]);
        let f_lead = fp.leading().expect("relations are nonzero").clone();
        let g_lead = gp.leading().expect("relations are nonzero");
        let mut out = Vec::new();
        for occ in occurrences(&f_lead, g_lead) {
            if f == g && occ.path.is_empty() {
                continue;
            }
            let word = substitute_with(&mut self.mul, &occ, gp).expect("occurrence of g's lead");
            let raw = fp - &word;
            let reduction = self.reduce(&raw);
            out.push(CompositionReport::new(
                CompositionKind::Inclusion,
                vec![f, g],
                Some(occ.path),
                None,
                f_lead.clone(),
                raw,
                reduction,
            ));
        }
        out
    }

    /// Compositions `f·[w]` for every good `[w]` below the last multiplier
    /// of `f̄`.
    pub fn rightmul_compositions(&mut self, f: usize, cap: usize) -> Result<Vec<CompositionReport>> {
        let fp = self.presentation.relations[f].clone();
        let lead = fp.leading()?.clone();
        let Some(last) = lead.last_multiplier() else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for w in good_below(last, &self.presentation.alphabet, cap)? {
            let raw = self.mul.poly_word(&fp, &w);
            let reduction = self.reduce(&raw);
            out.push(CompositionReport::new(
                CompositionKind::RightMultiplication,
                vec![f],
                None,
                Some(w.clone()),
                lead.insert(&w),
                raw,
                reduction,
            ));
        }
        Ok(out)
    }

    /// Every composition of the relation set, reduced.
    pub fn all_compositions(&mut self, cap: usize) -> Result<Vec<CompositionReport>> {
        let n = self.presentation.relations.len();
        let mut out = Vec::new();
        for f in 0..n {
            for g in 0..n {
                out.extend(self.inclusion_compositions(f, g));
            }
        }
        for f in 0..n {
            out.extend(self.rightmul_compositions(f, cap)?);
        }
        Ok(out)
    }
}

pub fn inclusion_compositions(
    presentation: &Presentation,
    f: usize,
    g: usize,
) -> Vec<CompositionReport> {
    Reducer::new(presentation).inclusion_compositions(f, g)
}

pub fn rightmul_compositions(
    presentation: &Presentation,
    f: usize,
    cap: usize,
) -> Result<Vec<CompositionReport>> {
    Reducer::new(presentation).rightmul_compositions(f, cap)
}

#[derive(Debug, Clone)]
pub struct GsCheck {
    pub is_gs: bool,
    pub reports: Vec<CompositionReport>,
}

/// Computes every composition and reports whether all of them reduce to 0.
pub fn is_gs(presentation: &Presentation, cap: usize) -> Result<GsCheck> {
    let reports = Reducer::new(presentation).all_compositions(cap)?;
    Ok(GsCheck {
        is_gs: reports.iter().all(|r| r.trivial),
        reports,
    })
}

/// Fully reduces every relation modulo the others, drops zeros and
/// duplicates, and sorts by leading word.
pub fn interreduce(presentation: &Presentation) -> Presentation {
    let mut relations: Vec<Poly> = presentation.relations.clone();
    loop {
        relations.sort_by(|a, b| a.leading().ok().cmp(&b.leading().ok()));
        relations.dedup();
        let mut changed = false;
        for i in 0..relations.len() {
            let mut others = relations.clone();
            let current = others.remove(i);
            let rest = presentation.with_relations(others);
            let reduced = reduce(&current, &rest).normal_form;
            if reduced != current {
                if reduced.is_zero() {
                    relations.remove(i);
                } else {
                    relations[i] = reduced.monic().expect("nonzero");
                }
                changed = true;
                break;
            }
        }
        if !changed {
            return presentation.with_relations(relations);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    BoundReached,
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub presentation: Presentation,
    pub status: CompletionStatus,
    pub rounds: usize,
    /// Degrees of nontrivial compositions discarded for exceeding the cap
    /// in the final round.
    pub over_bound: Vec<usize>,
}

/// Shirshov-style completion: compositions are processed in ascending order
/// of their leading words, nonzero normal forms of degree at most
/// `max_degree` are added, and the set is inter-reduced between rounds.
pub fn complete(presentation: &Presentation, max_degree: usize, cap: usize) -> Result<Completion> {
    let mut current = interreduce(presentation);
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut reports = Reducer::new(&current).all_compositions(cap)?;
        reports.sort_by(|a, b| a.raw.leading().ok().cmp(&b.raw.leading().ok()));
        let mut relations = current.relations.clone();
        let mut over_bound = Vec::new();
        let mut added = false;
        for report in reports.into_iter().filter(|r| !r.trivial) {
            let working = current.with_relations(relations.clone());
            let nf = reduce(&report.raw, &working).normal_form;
            if nf.is_zero() {
                continue;
            }
            if nf.degree() <= max_degree {
                relations.push(nf.monic()?);
                added = true;
            } else {
                over_bound.push(nf.degree());
            }
        }
        if !added {
            let status = if over_bound.is_empty() {
                CompletionStatus::Complete
            } else {
                CompletionStatus::BoundReached
            };
            return Ok(Completion {
                presentation: current,
                status,
                rounds,
                over_bound,
            });
        }
        current = interreduce(&current.with_relations(relations));
    }
}

/// Good words of length at most `max_degree` containing no leading word of
/// the relations, ascending.
pub fn irr(presentation: &Presentation, max_degree: usize, cap: usize) -> Result<Vec<GoodWord>> {
    let reducer = Reducer::new(presentation);
    let by_len = good_words_by_length(presentation.alphabet.len(), max_degree, cap)?;
    Ok(by_len
        .into_iter()
        .flatten()
        .filter(|w| reducer.is_irreducible(w))
        .collect())
}

/// Decides `f = g` in the quotient algebra. Requires the relations to form a
/// Gröbner–Shirshov basis.
pub fn nf_equal(f: &Poly, g: &Poly, presentation: &Presentation, cap: usize) -> Result<bool> {
    if !is_gs(presentation, cap)?.is_gs {
        return Err(Error::NotConfluent);
    }
    Ok(reduce(&(f - g), presentation).normal_form.is_zero())
}

/// Per-degree counts of a sorted word list, index 0 = degree 1.
pub fn counts_by_degree(words: &[GoodWord], max_degree: usize) -> Vec<usize> {
    let mut counts = vec![0; max_degree];
    for w in words {
        if (1..=max_degree).contains(&w.len()) {
            counts[w.len() - 1] += 1;
        }
    }
    counts
}
