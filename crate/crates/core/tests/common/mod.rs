#![allow(dead_code)]

use num_bigint::BigInt;
use presym_core::lie::{Constant, LieAlgebra};
use presym_core::poly::normalize;
use presym_core::{Alphabet, Coefficient, Letter, Poly, Word};

pub fn int(n: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(n))
}

pub fn l(rank: usize) -> Word {
    Word::leaf(Letter::new(rank))
}

pub fn n(a: Word, b: Word) -> Word {
    Word::node(a, b)
}

pub fn poly(terms: &[(i64, Word)]) -> Poly {
    let mut p = Poly::zero();
    for (c, w) in terms {
        p += &normalize(w).scaled(&int(*c));
    }
    p
}

pub fn constant(i: usize, j: usize, value: &[(usize, i64)]) -> Constant {
    Constant {
        i,
        j,
        value: value.iter().map(|&(m, v)| (m, int(v))).collect(),
    }
}

pub fn abelian(dim: usize) -> LieAlgebra {
    LieAlgebra::abelian(Alphabet::indexed("e", dim))
}

/// `[e2, e1] = e3`, `e3` central.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_constants(Alphabet::indexed("e", 3), &[constant(2, 1, &[(3, 1)])]).unwrap()
}

/// Basis `e < f < h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_constants(
        Alphabet::new(["e", "f", "h"]).unwrap(),
        &[
            constant(3, 1, &[(1, 2)]),
            constant(3, 2, &[(2, -2)]),
            constant(2, 1, &[(3, -1)]),
        ],
    )
    .unwrap()
}

/// `[e2, e1] = e1`.
pub fn affine_line() -> LieAlgebra {
    LieAlgebra::from_constants(Alphabet::indexed("e", 2), &[constant(2, 1, &[(1, 1)])]).unwrap()
}

pub fn theorem_algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian-1", abelian(1)),
        ("abelian-2", abelian(2)),
        ("abelian-3", abelian(3)),
        ("heisenberg", heisenberg()),
        ("sl2", sl2()),
        ("affine-line", affine_line()),
    ]
}
