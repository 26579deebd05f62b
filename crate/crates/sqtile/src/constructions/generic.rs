use num_bigint::BigInt;

use super::{expect_stratum, Canvas, Family, Params};
use crate::error::{Error, Result};
use crate::linalg::SymIntMatrix;
use crate::origami::{Origami, Stratum};
use crate::poly::IntPoly;

/// Where the runs of inserted pieces go along the main row.
///
/// Pieces attached to the same zero sit in adjacent columns (a run); runs are
/// separated by `gap` untouched columns. `run_order` permutes the runs along
/// the row without changing square labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub start: usize,
    pub gap: usize,
    pub run_order: Option<Vec<usize>>,
}

impl Default for Layout {
    fn default() -> Self {
        Layout { start: 1, gap: 1, run_order: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericParams {
    pub g: usize,
    pub stratum: Stratum,
    /// Number of L-shapes; must be half the number of odd orders.
    pub l: usize,
    /// The main row has `y^2` squares.
    pub y: usize,
    /// Widths of the L-shapes, then heights of the strips.
    pub y_list: Vec<usize>,
    pub layout: Layout,
}

impl GenericParams {
    pub fn new(g: usize, stratum: Stratum, y: usize, y_list: Vec<usize>) -> Self {
        let l = stratum.n_odd() / 2;
        GenericParams { g, stratum, l, y, y_list, layout: Layout::default() }
    }
}

enum Piece {
    Strip,
    L,
}

/// Runs in canonical order: one per odd pair (strips, L, strips), then one per
/// even order.
fn runs(stratum: &Stratum) -> Vec<Vec<Piece>> {
    let odd: Vec<usize> = stratum.orders().iter().copied().filter(|k| k % 2 == 1).collect();
    let even: Vec<usize> = stratum.orders().iter().copied().filter(|k| k % 2 == 0).collect();
    let mut out = Vec::new();
    for pair in odd.chunks(2) {
        let (a, b) = (pair[0] / 2, pair[1] / 2);
        let mut run: Vec<Piece> = (0..a).map(|_| Piece::Strip).collect();
        run.push(Piece::L);
        run.extend((0..b).map(|_| Piece::Strip));
        out.push(run);
    }
    for k in even {
        out.push((0..k / 2).map(|_| Piece::Strip).collect());
    }
    out
}

pub fn build_generic(p: &GenericParams) -> Result<Origami> {
    let g = p.g;
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    p.stratum.validate(g)?;
    if p.l * 2 != p.stratum.n_odd() {
        return Err(Error::InvalidStratum(format!(
            "stratum {} has {} odd orders but l = {}",
            p.stratum,
            p.stratum.n_odd(),
            p.l
        )));
    }
    if p.y_list.len() != g - 1 {
        return Err(Error::InvalidParam(format!("y_list needs {} entries, got {}", g - 1, p.y_list.len())));
    }
    if p.y_list.contains(&0) {
        return Err(Error::InvalidParam("y_list entries must be positive".into()));
    }
    if let Some(w) = p.y_list[..p.l].iter().find(|&&w| w < 2) {
        return Err(Error::ParamsTooSmall(format!("L-shape width {w} must be at least 2")));
    }
    let len = p.y * p.y;
    if len < g + 1 {
        return Err(Error::ParamsTooSmall(format!("y^2 = {len} must be at least g + 1 = {}", g + 1)));
    }
    let runs = runs(&p.stratum);
    let order: Vec<usize> = match &p.layout.run_order {
        Some(o) => {
            let mut s = o.clone();
            s.sort_unstable();
            if s != (0..runs.len()).collect::<Vec<_>>() {
                return Err(Error::InvalidParam(format!("run_order must permute 0..{}", runs.len())));
            }
            o.clone()
        }
        None => (0..runs.len()).collect(),
    };
    if p.layout.gap == 0 {
        return Err(Error::InvalidParam("gap must be at least 1".into()));
    }
    // column of the first piece of each run
    let mut first_col = vec![0; runs.len()];
    let mut pos = p.layout.start;
    for &r in &order {
        first_col[r] = pos;
        pos += runs[r].len() + p.layout.gap;
    }
    let last = pos - p.layout.gap - 1;
    // the wrap-around gap between the last run and the first one
    if last + p.layout.gap > len + p.layout.start - 1 {
        return Err(Error::ParamsTooSmall(format!(
            "main row of {len} squares cannot hold {} pieces in {} runs",
            g - 1,
            runs.len()
        )));
    }

    let mut c = Canvas::row(len);
    // L-shapes first so that their rows come right after the main row
    let mut next_l = 0;
    for (r, run) in runs.iter().enumerate() {
        for (i, piece) in run.iter().enumerate() {
            if let Piece::L = piece {
                c.lshape(first_col[r] + i, p.y_list[next_l]);
                next_l += 1;
            }
        }
    }
    let mut next_s = p.l;
    for (r, run) in runs.iter().enumerate() {
        for (i, piece) in run.iter().enumerate() {
            if let Piece::Strip = piece {
                c.strip(first_col[r] + i, p.y_list[next_s]);
                next_s += 1;
            }
        }
    }
    let o = c.finish()?;
    expect_stratum(&o, &p.stratum, "generic")?;
    Ok(o)
}

/// The block matrix `XX^T` of the generic construction: main row `y^2`,
/// L-shape rows `y_1..y_l` meeting it in `1`, and an all-ones block per strip
/// meeting it in `b` (first strip) or `1` (the others).
pub fn block_matrix(y: usize, l: usize, y_list: &[usize], b: i64) -> SymIntMatrix {
    let strips: usize = y_list[l..].iter().sum();
    let n = 1 + l + strips;
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][0] = (y * y) as i64;
    for i in 0..l {
        rows[0][1 + i] = 1;
        rows[1 + i][0] = 1;
        rows[1 + i][1 + i] = y_list[i] as i64;
    }
    let mut at = 1 + l;
    for (k, &h) in y_list[l..].iter().enumerate() {
        let e = if k == 0 { b } else { 1 };
        for i in at..at + h {
            rows[0][i] = e;
            rows[i][0] = e;
            for j in at..at + h {
                rows[i][j] = 1;
            }
        }
        at += h;
    }
    SymIntMatrix::from_rows(&rows).expect("symmetric by construction")
}

/// Closed form for the characteristic polynomial of [`block_matrix`]:
/// `t^a (-y^2 P + t P - sum_i c_i P / (t - y_i))` with `P = prod (t - y_i)`.
pub fn block_charpoly(y: usize, l: usize, y_list: &[usize], b: i64) -> IntPoly {
    let a: usize = y_list[l..].iter().map(|v| v - 1).sum();
    let lin: Vec<IntPoly> = y_list.iter().map(|&v| IntPoly::linear_root(v as i64)).collect();
    let prod = IntPoly::product(lin.iter());
    let mut sum = IntPoly::zero();
    for i in 0..y_list.len() {
        let ci = if i < l {
            1
        } else if i == l {
            y_list[i] as i64 * b * b
        } else {
            y_list[i] as i64
        };
        let others = IntPoly::product(lin.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f));
        sum = &sum + &others.scale(&BigInt::from(ci));
    }
    let y2 = BigInt::from(y * y);
    let inner = &(&(&IntPoly::t() * &prod) - &prod.scale(&y2)) - &sum;
    inner.shl(a)
}

/// Reference matrix for the generic construction (`b = 1`).
pub fn generic_matrix(p: &GenericParams) -> SymIntMatrix {
    block_matrix(p.y, p.l, &p.y_list, 1)
}

pub(super) struct GenericFamily;

impl Family for GenericFamily {
    fn name(&self) -> &'static str {
        "generic"
    }

    fn usage(&self) -> &'static str {
        "g=<genus> stratum=<k1,k2,..> y=<y> ys=<y1,..,y_{g-1}> [l=<L-shapes>] [start=1] [gap=1]"
    }

    fn build(&self, p: &Params) -> Result<Origami> {
        let g = p.usize("g")?;
        let stratum = p.stratum("stratum")?;
        let mut gp = GenericParams::new(g, stratum, p.usize("y")?, p.list("ys")?);
        if p.raw("l").is_some() {
            gp.l = p.usize("l")?;
        }
        gp.layout.start = p.usize_or("start", 1)?;
        gp.layout.gap = p.usize_or("gap", 1)?;
        build_generic(&gp)
    }
}
