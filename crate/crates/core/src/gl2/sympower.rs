//! Symmetric powers of 2x2 matrices.
//!
//! Basis convention: v_j is the sum over all distinct tensor words in
//! e1, e2 of length m containing exactly j copies of e2, with no
//! normalization. This is the convention in which the symmetric cube of
//! an upper-triangular matrix [[A, B], [0, D]] has off-diagonal
//! constants 3, 3, 2, 1, 1, 1.

use crate::matrix::Matrix;
use crate::ring::{Rational, Ring};

/// Words of length m with exactly j ones, as bitmasks.
fn words(m: usize, j: usize) -> Vec<u32> {
    (0u32..(1 << m))
        .filter(|w| w.count_ones() as usize == j)
        .collect()
}

fn letter(w: u32, pos: usize) -> usize {
    ((w >> pos) & 1) as usize
}

/// Matrix of g acting on Sym^m in the symmetrized tensor-word basis.
/// Entry (i, j) is the coefficient of v_i in g . v_j, read off as the
/// coefficient of one representative word with i copies of e2.
pub fn sym_power_matrix<R: Ring>(g: &Matrix<R>, m: usize) -> Matrix<R> {
    assert_eq!((g.rows(), g.cols()), (2, 2), "input must be 2x2");
    let n = m + 1;
    Matrix::from_fn(n, n, |i, j| {
        // representative target word: e2 in the first i positions
        let target: u32 = (1u32 << i) - 1;
        let mut acc = R::zero();
        for w in words(m, j) {
            let mut prod = R::one();
            for pos in 0..m {
                prod = prod.mul(g.get(letter(target, pos), letter(w, pos)));
            }
            acc = acc.add(&prod);
        }
        acc
    })
}

/// Action of a gl(2) Lie algebra element on Sym^m: the derivative of the
/// symmetric power, i.e. x acting in one tensor factor at a time.
pub fn sym_power_lie(x: &Matrix<Rational>, m: usize) -> Matrix<Rational> {
    assert_eq!((x.rows(), x.cols()), (2, 2), "input must be 2x2");
    let n = m + 1;
    Matrix::from_fn(n, n, |i, j| {
        let target: u32 = (1u32 << i) - 1;
        let mut acc = Rational::zero();
        // words differing from the target in at most one position
        for pos in 0..m {
            for l in 0..2usize {
                let w = (target & !(1 << pos)) | ((l as u32) << pos);
                if w.count_ones() as usize != j {
                    continue;
                }
                acc = acc.add(x.get(letter(target, pos), l));
            }
        }
        acc
    })
}
