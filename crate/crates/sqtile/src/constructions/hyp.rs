//! Staircase surfaces in hyperelliptic components.

use serde::{Deserialize, Serialize};

use super::{expect_stratum, Canvas, Family, Params};
use crate::error::{Error, Result};
use crate::linalg::SymIntMatrix;
use crate::origami::{Origami, Stratum};

/// Parameters of `X_{n,k,y}` (`collapse_a0 = false`) and `Y_{n,k,y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseParams {
    pub n: usize,
    pub k: usize,
    pub y: usize,
    pub collapse_a0: bool,
}

impl StaircaseParams {
    pub fn genus(&self) -> usize {
        self.n + self.k + 2
    }

    /// Corner entry of `XX^T` for the main row.
    pub fn alpha(&self) -> usize {
        4 * self.n + if self.collapse_a0 { 1 } else { 2 }
    }

    pub fn stratum(&self) -> Stratum {
        let g = self.genus();
        if self.collapse_a0 {
            Stratum::new(vec![2 * g - 2])
        } else {
            Stratum::new(vec![g - 1, g - 1])
        }
    }
}

/// Adds `k` steps of two squares on top of square `prev`; returns the right
/// square of the last step (or `prev` itself when `k = 0`).
fn steps(c: &mut Canvas, mut prev: usize, k: usize) -> usize {
    for _ in 0..k {
        let (a, b) = (c.square(), c.square());
        c.set_h(a, b);
        c.set_h(b, a);
        c.set_v(prev, a);
        c.set_v(a, prev);
        prev = b;
    }
    prev
}

/// Main row of `2n + 2` squares (`2n + 1` for the Y family) with the pairs
/// `A_i` glued across, `k` steps, and a column of `y` squares forming one
/// horizontal cylinder on top.
///
/// `y = 1` is rejected: the top column then collapses to a single square and
/// the surface falls into a smaller genus.
pub fn build_hyp(p: &StaircaseParams) -> Result<Origami> {
    if p.y < 2 {
        return Err(Error::ParamsTooSmall(format!("y = {} must be at least 2", p.y)));
    }
    let n = p.n;
    let len = 2 * n + if p.collapse_a0 { 1 } else { 2 };
    let mut c = Canvas::row(len);
    let shift = if p.collapse_a0 { 0 } else { 1 };
    for i in 0..n {
        let right = n + shift + (n - 1 - i);
        c.set_v(i, right);
        c.set_v(right, i);
    }
    let prev = steps(&mut c, len - 1, p.k);
    let col = c.squares(p.y);
    for i in 0..p.y {
        c.set_h(col[i], col[(i + 1) % p.y]);
    }
    c.set_v(prev, col[0]);
    for w in col.windows(2) {
        c.set_v(w[0], w[1]);
    }
    c.set_v(col[p.y - 1], prev);
    let o = c.finish()?;
    expect_stratum(&o, &p.stratum(), if p.collapse_a0 { "hyp_Y" } else { "hyp_X" })?;
    Ok(o)
}

/// Main row of `y^2` squares, `g - 2` steps and a single square on top.
pub fn build_hyp_staircase_long(g: usize, y: usize) -> Result<Origami> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    if y < 2 {
        return Err(Error::ParamsTooSmall(format!("y = {y} must be at least 2")));
    }
    let len = y * y;
    let mut c = Canvas::row(len);
    let prev = steps(&mut c, len - 1, g - 2);
    let top = c.square();
    c.set_v(prev, top);
    c.set_v(top, prev);
    let o = c.finish()?;
    expect_stratum(&o, &Stratum::new(vec![2 * g - 2]), "hyp_staircase_long")?;
    Ok(o)
}

fn tridiagonal(diag: &[i64], off: &[i64]) -> SymIntMatrix {
    let n = diag.len();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        rows[i][i] = diag[i];
        if i + 1 < n {
            rows[i][i + 1] = off[i];
            rows[i + 1][i] = off[i];
        }
    }
    SymIntMatrix::from_rows(&rows).expect("symmetric")
}

/// `XX^T` of `X_{n,k,y}` / `Y_{n,k,y}`: diagonal `(alpha, 2, .., 2, y^2)`,
/// off-diagonal `(1, .., 1, y)`.
pub fn hyp_jacobi_matrix(p: &StaircaseParams) -> SymIntMatrix {
    let k = p.k;
    let y = p.y as i64;
    let mut diag = vec![p.alpha() as i64];
    diag.extend(std::iter::repeat_n(2, k));
    diag.push(y * y);
    let mut off = vec![1; k];
    off.push(y);
    tridiagonal(&diag, &off)
}

/// `(k+1) x (k+1)` path matrix `2I + Adj` with `alpha - 2` added to the
/// first diagonal entry.
pub fn hyp_b_matrix(alpha: i64, k: usize) -> SymIntMatrix {
    let mut diag = vec![2; k + 1];
    diag[0] = alpha;
    tridiagonal(&diag, &vec![1; k])
}

/// `g x g` path matrix `2I + Adj` with 1 subtracted from the last diagonal entry.
pub fn staircase_b_matrix(g: usize) -> SymIntMatrix {
    let mut diag = vec![2; g];
    if g > 0 {
        diag[g - 1] = 1;
    }
    tridiagonal(&diag, &vec![1; g.saturating_sub(1)])
}

/// `XX^T` of [`build_hyp_staircase_long`]: diagonal `(y^2, 2, .., 2, 1)`,
/// unit off-diagonals.
pub fn staircase_long_matrix(g: usize, y: usize) -> SymIntMatrix {
    let mut diag = vec![2i64; g];
    diag[g - 1] = 1;
    diag[0] = (y * y) as i64;
    tridiagonal(&diag, &vec![1; g - 1])
}

pub(super) struct HypFamily {
    pub collapse_a0: bool,
}

impl Family for HypFamily {
    fn name(&self) -> &'static str {
        if self.collapse_a0 {
            "hyp_Y"
        } else {
            "hyp_X"
        }
    }

    fn usage(&self) -> &'static str {
        "n=<n> k=<steps> y=<column height, at least 2>"
    }

    fn build(&self, p: &Params) -> Result<Origami> {
        build_hyp(&StaircaseParams {
            n: p.usize("n")?,
            k: p.usize("k")?,
            y: p.usize("y")?,
            collapse_a0: self.collapse_a0,
        })
    }
}

pub(super) struct StaircaseLongFamily;

impl Family for StaircaseLongFamily {
    fn name(&self) -> &'static str {
        "hyp_staircase_long"
    }

    fn usage(&self) -> &'static str {
        "g=<genus> y=<y, at least 2>"
    }

    fn build(&self, p: &Params) -> Result<Origami> {
        build_hyp_staircase_long(p.usize("g")?, p.usize("y")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::charpoly;

    #[test]
    fn x_112() {
        let p = StaircaseParams { n: 1, k: 1, y: 2, collapse_a0: false };
        let o = build_hyp(&p).unwrap();
        assert_eq!(o.n_squares(), 8);
        assert_eq!(o.genus().unwrap(), 4);
        assert_eq!(o.stratum(), Stratum::new(vec![3, 3]));
        assert_eq!(o.curve_system().xxt(), hyp_jacobi_matrix(&p));
    }

    #[test]
    fn y_family_strata() {
        for n in 0..=3 {
            for k in 0..=3 {
                for y in 2..=4 {
                    let p = StaircaseParams { n, k, y, collapse_a0: true };
                    let o = build_hyp(&p).unwrap();
                    assert_eq!(o.genus().unwrap(), n + k + 2);
                    assert_eq!(o.curve_system().xxt(), hyp_jacobi_matrix(&p));
                }
            }
        }
    }

    #[test]
    fn y_equal_one_rejected() {
        let p = StaircaseParams { n: 1, k: 0, y: 1, collapse_a0: true };
        assert!(matches!(build_hyp(&p), Err(Error::ParamsTooSmall(_))));
    }

    #[test]
    fn long_staircase_matrices() {
        let o = build_hyp_staircase_long(2, 2).unwrap();
        assert_eq!(o.curve_system().xxt(), SymIntMatrix::from_rows(&[vec![4, 1], vec![1, 1]]).unwrap());
        let o = build_hyp_staircase_long(3, 3).unwrap();
        let want = SymIntMatrix::from_rows(&[vec![9, 1, 0], vec![1, 2, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(o.curve_system().xxt(), want);
        assert_eq!(charpoly(&want), charpoly(&staircase_long_matrix(3, 3)));
    }
}
