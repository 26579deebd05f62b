//! Exact integer matrices: characteristic polynomials, the block matrices
//! of a pair of multicurves, and inertia of symmetric matrices.

mod charpoly;
mod matrix;

pub use charpoly::{charpoly, charpoly_bareiss, charpoly_mod_p, charpoly_multimodular, determinant, BAREISS_MAX_DIM};
pub use matrix::{IntMatrix, SymIntMatrix};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::origami::CurveSystem;
use crate::poly::{cauchy_bound, squarefree_decomposition, sturm_sequence, IntPoly};

/// `Omega = [[0, X], [X^T, 0]]`
pub fn build_omega(cs: &CurveSystem) -> SymIntMatrix {
    let (n, m) = (cs.n(), cs.m());
    let om = IntMatrix::block(&IntMatrix::zeros(n, n), &cs.x, &cs.x.transpose(), &IntMatrix::zeros(m, m));
    SymIntMatrix::new(om).expect("block matrix is symmetric")
}

/// `M = [[I - XX^T, X], [-X^T, I]]`, the action of the product of the two
/// multitwists on the span of the core curves.
pub fn build_m(cs: &CurveSystem) -> IntMatrix {
    let (n, m) = (cs.n(), cs.m());
    let xxt = cs.xxt().into_matrix();
    IntMatrix::block(
        &IntMatrix::identity(n).sub(&xxt),
        &cs.x,
        &cs.x.transpose().neg(),
        &IntMatrix::identity(m),
    )
}

/// `[[I, -X], [X^T, I - X^T X]]`, the inverse of [`build_m`].
pub fn build_m_inverse(cs: &CurveSystem) -> IntMatrix {
    let (n, m) = (cs.n(), cs.m());
    let xtx = cs.xtx().into_matrix();
    IntMatrix::block(
        &IntMatrix::identity(n),
        &cs.x.neg(),
        &cs.x.transpose(),
        &IntMatrix::identity(m).sub(&xtx),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.n_pos as i64 - self.n_neg as i64
    }

    pub fn nullity(&self) -> usize {
        self.n_zero
    }

    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }
}

/// Inertia of a symmetric matrix from its characteristic polynomial: the
/// multiplicity of `t` gives the nullity, and Sturm counts on each square-free
/// part give the positive and negative eigenvalues.
pub fn inertia(a: &SymIntMatrix) -> Inertia {
    inertia_of_charpoly(&charpoly(a))
}

/// Inertia read off a characteristic polynomial with only real roots.
pub fn inertia_of_charpoly(p: &IntPoly) -> Inertia {
    let n_zero = p.t_valuation();
    let rest = p.shr(n_zero);
    let zero = BigRational::from_integer(0.into());
    let (mut n_pos, mut n_neg) = (0, 0);
    for (f, mult) in squarefree_decomposition(&rest) {
        let b = BigRational::from_integer(cauchy_bound(&f));
        let seq = sturm_sequence(&f).expect("nonzero factor");
        n_pos += mult * seq.count(&zero, &b);
        n_neg += mult * seq.count(&-b, &zero);
    }
    let out = Inertia { n_pos, n_neg, n_zero };
    assert_eq!(out.dim(), p.deg(), "characteristic polynomial has non-real roots");
    out
}
