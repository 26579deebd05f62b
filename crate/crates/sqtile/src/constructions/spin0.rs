//! Even spin families: a hyperelliptic `H(2,2)` base grown by strips, and two
//! surfaces in the minimal stratum.

use super::generic::block_matrix;
use super::{expect_stratum, Canvas, Family, Params};
use crate::error::{Error, Result};
use crate::linalg::SymIntMatrix;
use crate::origami::{Origami, Stratum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spin0MultiParams {
    pub g: usize,
    pub stratum: Stratum,
    /// The main row has `y^2 - 2` squares.
    pub y: usize,
    /// Height of the stack below the main row, then strip heights.
    pub y_list: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spin0MinParams {
    pub g: usize,
    pub y: usize,
    /// Strip heights, `g - 3` of them.
    pub y_list: Vec<usize>,
    /// Height of the vertical cylinder closing the handle.
    pub handle: usize,
}

/// The `H(2,2)` base: main row of `len` squares, a stack of `low` squares
/// below square 0 closing up through square 2, and a strip of height `up`
/// above square 1. Zero A sits at the left of square 0, zero B at the right
/// of square 2.
fn base(len: usize, low: usize, up: usize) -> Canvas {
    let mut c = Canvas::row(len);
    let stack = c.squares(low);
    c.set_v(stack[0], 0);
    for j in 1..low {
        c.set_v(stack[j], stack[j - 1]);
    }
    c.set_v(2, stack[low - 1]);
    c.set_v(0, 2);
    c.strip(1, up);
    c
}

fn check_heights(y_list: &[usize]) -> Result<()> {
    if y_list.contains(&0) {
        return Err(Error::InvalidParam("heights must be positive".into()));
    }
    Ok(())
}

pub fn build_spin0_multi(p: &Spin0MultiParams) -> Result<Origami> {
    let g = p.g;
    if g < 3 {
        return Err(Error::GenusTooSmall(g));
    }
    p.stratum.validate(g)?;
    if !p.stratum.all_even() || p.stratum.n_zeros() < 2 {
        return Err(Error::InvalidStratum(format!(
            "{} needs even orders and at least two zeros",
            p.stratum
        )));
    }
    if p.y_list.len() != g - 1 {
        return Err(Error::InvalidParam(format!("y_list needs {} entries, got {}", g - 1, p.y_list.len())));
    }
    check_heights(&p.y_list)?;
    let len = (p.y * p.y).saturating_sub(2);
    let half: Vec<usize> = p.stratum.orders().iter().map(|k| k / 2).collect();
    let (a_b, a_a, middle) = (half[0], half[1], &half[2..]);
    // columns used after the base: B's run, then gap-separated middle runs
    let mut pos = 2 + a_b;
    let mut middle_cols = Vec::new();
    for &m in middle {
        middle_cols.push(pos + 1);
        pos += 1 + m;
    }
    if len < 4 || pos + 1 + (a_a - 1) > len {
        return Err(Error::ParamsTooSmall(format!("main row of {len} squares is too short for {}", p.stratum)));
    }
    let mut c = base(len, p.y_list[0], p.y_list[1]);
    let mut ys = p.y_list[2..].iter().copied();
    for col in 3..2 + a_b {
        c.strip(col, ys.next().unwrap());
    }
    for (&m, &start) in middle.iter().zip(&middle_cols) {
        for col in start..start + m {
            c.strip(col, ys.next().unwrap());
        }
    }
    for j in 1..a_a {
        c.strip(len - j, ys.next().unwrap());
    }
    let o = c.finish()?;
    expect_stratum(&o, &p.stratum, "spin0_multi")?;
    Ok(o)
}

/// Default heights for [`build_spin0_min_deg2`]: `(2, 1, ..., 1)`.
pub fn deg2_default_heights(g: usize) -> Vec<usize> {
    let mut v = vec![1; g - 1];
    v[0] = 2;
    v
}

/// The `H(2,2)` base on a main row of `g` squares with strips in columns
/// `3..g`, which joins both zeros into one of order `2g - 2`.
pub fn build_spin0_min_deg2(g: usize, y_list: Option<&[usize]>) -> Result<Origami> {
    if g <= 3 {
        return Err(Error::GenusTooSmall(g));
    }
    let ys = match y_list {
        Some(v) => v.to_vec(),
        None => deg2_default_heights(g),
    };
    if ys.len() != g - 1 {
        return Err(Error::InvalidParam(format!("heights need {} entries, got {}", g - 1, ys.len())));
    }
    check_heights(&ys)?;
    let mut c = base(g, ys[0], ys[1]);
    for (i, col) in (3..g).enumerate() {
        c.strip(col, ys[2 + i]);
    }
    let o = c.finish()?;
    expect_stratum(&o, &Stratum::new(vec![2 * g - 2]), "spin0_min_deg2")?;
    Ok(o)
}

/// Strips in columns `1..g-2`, then a handle: a horizontal cylinder of two
/// squares above column `g - 2` whose second square carries a vertical
/// cylinder of height `handle`.
pub fn build_spin0_min(p: &Spin0MinParams) -> Result<Origami> {
    let g = p.g;
    if g <= 3 {
        return Err(Error::GenusTooSmall(g));
    }
    if p.y_list.len() != g - 3 {
        return Err(Error::InvalidParam(format!("y_list needs {} entries, got {}", g - 3, p.y_list.len())));
    }
    check_heights(&p.y_list)?;
    if p.handle == 0 {
        return Err(Error::InvalidParam("handle height must be positive".into()));
    }
    let len = p.y * p.y;
    if len < g - 1 {
        return Err(Error::ParamsTooSmall(format!("main row of {len} squares is shorter than g - 1 = {}", g - 1)));
    }
    let mut c = Canvas::row(len);
    for (i, &h) in p.y_list.iter().enumerate() {
        c.strip(1 + i, h);
    }
    let hc = g - 2;
    let (pp, q) = (c.square(), c.square());
    c.set_h(pp, q);
    c.set_h(q, pp);
    let top = c.v(hc);
    c.set_v(hc, pp);
    c.set_v(pp, top);
    let rs = c.squares(p.handle);
    c.set_v(q, rs[0]);
    for w in rs.windows(2) {
        c.set_v(w[0], w[1]);
    }
    c.set_v(rs[p.handle - 1], q);
    let o = c.finish()?;
    expect_stratum(&o, &Stratum::new(vec![2 * g - 2]), "spin0_min")?;
    Ok(o)
}

/// `XX^T` of [`build_spin0_multi`] on a main row of `len` squares: main entry
/// `len + 2`, the stack block meeting the main row in 2.
pub fn spin0_multi_matrix(len: usize, y_list: &[usize]) -> SymIntMatrix {
    let mut m = block_matrix(0, 0, y_list, 2).into_matrix();
    m.set(0, 0, ((len + 2) as i64).into());
    SymIntMatrix::new(m).expect("symmetric")
}

/// `XX^T` of [`build_spin0_min_deg2`] with default heights, of size `g + 1`.
pub fn deg2_matrix(g: usize) -> SymIntMatrix {
    spin0_multi_matrix(g, &deg2_default_heights(g))
}

/// `XX^T` of [`build_spin0_min`] with handle height 1: the strip pattern
/// followed by the block `[[2, 1], [1, 1]]`, whose first row meets the main row.
pub fn spin0_min_matrix(y: usize, y_list: &[usize]) -> SymIntMatrix {
    let base = block_matrix(y, 0, y_list, 1);
    let k = base.dim();
    let mut rows = vec![vec![0i64; k + 2]; k + 2];
    for (i, row) in rows.iter_mut().enumerate().take(k) {
        for (j, e) in row.iter_mut().enumerate().take(k) {
            *e = i64::try_from(base.get(i, j).clone()).unwrap();
        }
    }
    rows[0][k] = 1;
    rows[k][0] = 1;
    rows[k][k] = 2;
    rows[k][k + 1] = 1;
    rows[k + 1][k] = 1;
    rows[k + 1][k + 1] = 1;
    SymIntMatrix::from_rows(&rows).expect("symmetric")
}

pub(super) struct Spin0MultiFamily;

impl Family for Spin0MultiFamily {
    fn name(&self) -> &'static str {
        "spin0_multi"
    }

    fn usage(&self) -> &'static str {
        "g=<genus> stratum=<even orders, at least two> y=<y> ys=<y1,..,y_{g-1}>"
    }

    fn build(&self, p: &Params) -> Result<Origami> {
        build_spin0_multi(&Spin0MultiParams {
            g: p.usize("g")?,
            stratum: p.stratum("stratum")?,
            y: p.usize("y")?,
            y_list: p.list("ys")?,
        })
    }
}

pub(super) struct Spin0MinDeg2Family;

impl Family for Spin0MinDeg2Family {
    fn name(&self) -> &'static str {
        "spin0_min_deg2"
    }

    fn usage(&self) -> &'static str {
        "g=<genus > 3> [ys=<y1,..,y_{g-1}>, default 2,1,..,1]"
    }

    fn build(&self, p: &Params) -> Result<Origami> {
        let ys = p.list_opt("ys")?;
        build_spin0_min_deg2(p.usize("g")?, ys.as_deref())
    }
}

pub(super) struct Spin0MinFamily;

impl Family for Spin0MinFamily {
    fn name(&self) -> &'static str {
        "spin0_min"
    }

    fn usage(&self) -> &'static str {
        "g=<genus > 3> y=<y> ys=<y1,..,y_{g-3}> [handle=1]"
    }

    fn build(&self, p: &Params) -> Result<Origami> {
        build_spin0_min(&Spin0MinParams {
            g: p.usize("g")?,
            y: p.usize("y")?,
            y_list: p.list("ys")?,
            handle: p.usize_or("handle", 1)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::charpoly;
    use crate::poly::IntPoly;

    #[test]
    fn base_is_h22() {
        let o = build_spin0_multi(&Spin0MultiParams {
            g: 3,
            stratum: Stratum::new(vec![2, 2]),
            y: 3,
            y_list: vec![2, 3],
        })
        .unwrap();
        assert_eq!(o.genus().unwrap(), 3);
        assert_eq!(o.curve_system().xxt(), spin0_multi_matrix(7, &[2, 3]));
    }

    #[test]
    fn multi_three_zeros() {
        let p = Spin0MultiParams { g: 4, stratum: Stratum::new(vec![2, 2, 2]), y: 3, y_list: vec![1, 2, 3] };
        let o = build_spin0_multi(&p).unwrap();
        assert_eq!(o.curve_system().xxt(), spin0_multi_matrix(7, &[1, 2, 3]));
        let p = Spin0MultiParams { g: 6, stratum: Stratum::new(vec![4, 4, 2]), y: 4, y_list: vec![1, 2, 3, 1, 2] };
        let o = build_spin0_multi(&p).unwrap();
        assert_eq!(o.stratum(), Stratum::new(vec![4, 4, 2]));
    }

    #[test]
    fn multi_rejects_odd_and_minimal() {
        let p = Spin0MultiParams { g: 3, stratum: Stratum::new(vec![3, 1]), y: 3, y_list: vec![1, 1] };
        assert!(matches!(build_spin0_multi(&p), Err(Error::InvalidStratum(_))));
        let p = Spin0MultiParams { g: 3, stratum: Stratum::new(vec![4]), y: 3, y_list: vec![1, 1] };
        assert!(matches!(build_spin0_multi(&p), Err(Error::InvalidStratum(_))));
    }

    #[test]
    fn deg2_charpoly() {
        for g in 4..=8 {
            let o = build_spin0_min_deg2(g, None).unwrap();
            let xxt = o.curve_system().xxt();
            assert_eq!(xxt, deg2_matrix(g));
            let gi = g as i64;
            let quad = IntPoly::from_i64(&[2 * gi + 2, -(gi + 5), 1]);
            let want = &IntPoly::linear_root(1).pow(g - 3).shl(2) * &quad;
            assert_eq!(charpoly(&xxt), want, "g = {g}");
        }
        assert!(matches!(build_spin0_min_deg2(3, None), Err(Error::GenusTooSmall(3))));
    }

    #[test]
    fn min_handle_block() {
        let p = Spin0MinParams { g: 5, y: 3, y_list: vec![2, 3], handle: 1 };
        let o = build_spin0_min(&p).unwrap();
        let xxt = o.curve_system().xxt();
        assert_eq!(xxt, spin0_min_matrix(3, &[2, 3]));
        // p(t, y, ys) (t^2 - 3t + 1) - t^a (t - 1) prod (t - y_i)
        let pblk = crate::constructions::generic::block_charpoly(3, 0, &[2, 3], 1);
        let a = 1 + 2;
        let prod = &IntPoly::linear_root(2) * &IntPoly::linear_root(3);
        let want = &(&pblk * &IntPoly::from_i64(&[1, -3, 1])) - &(&prod * &IntPoly::linear_root(1)).shl(a);
        assert_eq!(charpoly(&xxt), want);
    }

    #[test]
    fn min_taller_handles() {
        for handle in 1..=4 {
            let p = Spin0MinParams { g: 4, y: 2, y_list: vec![2], handle };
            assert!(build_spin0_min(&p).is_ok());
        }
    }
}
