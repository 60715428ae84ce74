//! Lie algebras given by structure constants and their universal enveloping
//! right-symmetric algebras.
//!
//! For a Lie algebra with basis `e1 < .. < en` and bracket
//! `[ei, ej] = Σ α_ij^m em`, the enveloping right-symmetric algebra is
//! presented by the relations `(ei ej) - (ej ei) - Σ α_ij^m em` for `i > j`.
//! These relations form a Gröbner–Shirshov basis; [`verify_theorem`] checks
//! that by computing every composition.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gs::{self, CompositionReport, Presentation, Reducer};
use crate::poly::{Coefficient, Poly};
use crate::terms::{Alphabet, GoodWord, Letter};

/// Finite-dimensional Lie algebra over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Alphabet,
    // table[i][j][m]: coefficient of e_m in [e_i, e_j], 0-based
    table: Vec<Vec<Vec<Coefficient>>>,
}

/// One bracket entry in 1-based indices: `[e_i, e_j] = Σ value_m e_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constant {
    pub i: usize,
    pub j: usize,
    pub value: Vec<(usize, Coefficient)>,
}

impl LieAlgebra {
    pub fn abelian(basis: Alphabet) -> Self {
        let n = basis.len();
        LieAlgebra {
            basis,
            table: vec![vec![vec![Coefficient::zero(); n]; n]; n],
        }
    }

    /// Builds the bracket table from the given entries. An entry for
    /// `(i, j)` also fills `(j, i)` with the negated vector unless `(j, i)`
    /// is given explicitly; explicit entries are taken as-is, so
    /// inconsistent input shows up in [`validate`].
    pub fn from_constants(basis: Alphabet, constants: &[Constant]) -> Result<Self> {
        let n = basis.len();
        let mut algebra = Self::abelian(basis);
        let check = |index: usize| {
            if index == 0 || index > n {
                Err(Error::LieIndexOutOfRange { index, dim: n })
            } else {
                Ok(index - 1)
            }
        };
        let mut explicit = vec![vec![false; n]; n];
        for c in constants {
            let (i, j) = (check(c.i)?, check(c.j)?);
            let mut vector = vec![Coefficient::zero(); n];
            for (m, v) in &c.value {
                vector[check(*m)?] += v;
            }
            explicit[i][j] = true;
            algebra.table[i][j] = vector;
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                if explicit[i][j] && !explicit[j][i] {
                    algebra.table[j][i] = algebra.table[i][j].iter().map(|c| -c).collect();
                }
            }
        }
        Ok(algebra)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Alphabet {
        &self.basis
    }

    /// `[e_i, e_j]` as a coefficient vector, 0-based indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Coefficient] {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &[Coefficient], y: &[Coefficient]) -> Vec<Coefficient> {
        let n = self.dim();
        let mut out = vec![Coefficient::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (m, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[m] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Same algebra with every structure constant multiplied by `factor`.
    pub fn scaled(&self, factor: &Coefficient) -> Self {
        LieAlgebra {
            basis: self.basis.clone(),
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|c| c * factor).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Entries `[e_i, e_j]` with `i > j` and nonzero value, 1-based.
    pub fn constants(&self) -> Vec<Constant> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..i {
                let value: Vec<(usize, Coefficient)> = self.table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m + 1, c.clone()))
                    .collect();
                if !value.is_empty() {
                    out.push(Constant {
                        i: i + 1,
                        j: j + 1,
                        value,
                    });
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Coefficient> {
        let mut v = vec![Coefficient::zero(); self.dim()];
        v[i] = Coefficient::from_integer(1.into());
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Antisymmetry,
    Jacobi,
}

/// A failed axiom: 1-based indices of the offending pair or triple and the
/// nonzero defect vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    pub defect: Vec<Coefficient>,
}

/// Checks antisymmetry on all pairs and the Jacobi identity on all
/// unordered triples.
pub fn validate(algebra: &LieAlgebra) -> Vec<Violation> {
    let n = algebra.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let defect: Vec<Coefficient> = algebra.table[i][j]
                .iter()
                .zip(&algebra.table[j][i])
                .map(|(a, b)| a + b)
                .collect();
            if defect.iter().any(|c| !c.is_zero()) {
                out.push(Violation {
                    kind: ViolationKind::Antisymmetry,
                    indices: vec![i + 1, j + 1],
                    defect,
                });
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let (ei, ej, ek) = (algebra.unit(i), algebra.unit(j), algebra.unit(k));
                let terms = [
                    algebra.bracket(&algebra.bracket(&ei, &ej), &ek),
                    algebra.bracket(&algebra.bracket(&ej, &ek), &ei),
                    algebra.bracket(&algebra.bracket(&ek, &ei), &ej),
                ];
                let defect: Vec<Coefficient> = (0..n)
                    .map(|m| terms.iter().map(|t| &t[m]).sum())
                    .collect();
                if defect.iter().any(|c| !c.is_zero()) {
                    out.push(Violation {
                        kind: ViolationKind::Jacobi,
                        indices: vec![i + 1, j + 1, k + 1],
                        defect,
                    });
                }
            }
        }
    }
    out
}

fn require_valid(algebra: &LieAlgebra) -> Result<()> {
    let violations = validate(algebra);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidLie(violations))
    }
}

/// The relation `(e_i e_j) - (e_j e_i) - [e_i, e_j]`, 0-based.
pub fn enveloping_relation(algebra: &LieAlgebra, i: usize, j: usize) -> Poly {
    let (ei, ej) = (GoodWord::letter(Letter::new(i)), GoodWord::letter(Letter::new(j)));
    let one = Coefficient::from_integer(1.into());
    let mut f = Poly::monomial(ei.attach(&ej).expect("length-2 words are good"));
    f.add_term(ej.attach(&ei).expect("length-2 words are good"), -&one);
    for (m, c) in algebra.table[i][j].iter().enumerate() {
        f.add_term(GoodWord::letter(Letter::new(m)), -c);
    }
    f
}

/// Relations `f_ij` for all `i > j`, ordered by `(i, j)`.
pub fn enveloping_presentation(algebra: &LieAlgebra) -> Result<Presentation> {
    require_valid(algebra)?;
    let n = algebra.dim();
    let relations = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| enveloping_relation(algebra, i, j))
        .collect();
    Presentation::new(algebra.basis.clone(), relations)
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub presentation: Presentation,
    pub compositions: Vec<CompositionReport>,
    pub passes: bool,
}

/// Computes every composition of the enveloping relations and checks that
/// each one reduces to zero.
pub fn verify_theorem(algebra: &LieAlgebra, cap: usize) -> Result<TheoremReport> {
    let presentation = enveloping_presentation(algebra)?;
    let check = gs::is_gs(&presentation, cap)?;
    Ok(TheoremReport {
        passes: check.is_gs,
        compositions: check.reports,
        presentation,
    })
}

#[derive(Debug, Clone)]
pub struct PbwBasis {
    pub words: Vec<GoodWord>,
    /// Index 0 holds degree 1.
    pub counts: Vec<usize>,
    /// All basis letters survive at degree 1 with pairwise distinct normal
    /// forms.
    pub embedding_ok: bool,
}

pub fn pbw_basis(algebra: &LieAlgebra, max_degree: usize, cap: usize) -> Result<PbwBasis> {
    let presentation = enveloping_presentation(algebra)?;
    let words = gs::irr(&presentation, max_degree, cap)?;
    let counts = gs::counts_by_degree(&words, max_degree);

    let letters: Vec<GoodWord> = words.iter().filter(|w| w.len() == 1).cloned().collect();
    let all_letters = letters.len() == algebra.dim()
        && algebra
            .basis
            .letters()
            .all(|l| letters.contains(&GoodWord::letter(l)));
    let mut reducer = Reducer::new(&presentation);
    let forms: Vec<Poly> = algebra
        .basis
        .letters()
        .map(|l| reducer.reduce(&Poly::letter(l)).normal_form)
        .collect();
    let distinct = forms.iter().all(|f| !f.is_zero())
        && forms
            .iter()
            .enumerate()
            .all(|(i, f)| forms[i + 1..].iter().all(|g| g != f));
    Ok(PbwBasis {
        words,
        counts,
        embedding_ok: max_degree >= 1 && all_letters && distinct,
    })
}
