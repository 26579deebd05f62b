//! Square-tiled surfaces as pairs of permutations.
//!
//! Square `i` has right neighbour `sigma_h[i]` and upper neighbour
//! `sigma_v[i]`. Cone points are the cycles of the corner permutation
//! `c = v h v^-1 h^-1`, which walks around the lower-left corners of the
//! squares sharing a vertex; a cycle of length `k + 1` is a cone point of
//! angle `2 pi (k + 1)`, that is, a zero of order `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SymIntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrigamiRepr", into = "OrigamiRepr")]
pub struct Origami {
    h: Vec<usize>,
    v: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OrigamiRepr {
    n: usize,
    sigma_h: Vec<usize>,
    sigma_v: Vec<usize>,
}

impl TryFrom<OrigamiRepr> for Origami {
    type Error = Error;
    fn try_from(r: OrigamiRepr) -> Result<Self> {
        if r.sigma_h.len() != r.n || r.sigma_v.len() != r.n {
            return Err(Error::NotAPermutation(format!("expected {} entries", r.n)));
        }
        Origami::new(r.sigma_h, r.sigma_v)
    }
}

impl From<Origami> for OrigamiRepr {
    fn from(o: Origami) -> Self {
        OrigamiRepr { n: o.h.len(), sigma_h: o.h, sigma_v: o.v }
    }
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// Cycles of a permutation, each listed from its smallest element, ordered by that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut c = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            c.push(j);
            j = p[j];
        }
        out.push(c);
    }
    out
}

fn check_perm(p: &[usize], name: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return Err(Error::NotAPermutation(format!("{name} is not a permutation of 0..{}", p.len())));
        }
        seen[x] = true;
    }
    Ok(())
}

impl Origami {
    pub fn new(sigma_h: Vec<usize>, sigma_v: Vec<usize>) -> Result<Self> {
        if sigma_h.is_empty() || sigma_h.len() != sigma_v.len() {
            return Err(Error::NotAPermutation(format!(
                "lengths {} and {} must be equal and positive",
                sigma_h.len(),
                sigma_v.len()
            )));
        }
        check_perm(&sigma_h, "sigma_h")?;
        check_perm(&sigma_v, "sigma_v")?;
        let n = sigma_h.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [sigma_h[x], sigma_v[x]] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != n {
            return Err(Error::NotConnected { orbit: count, total: n });
        }
        Ok(Origami { h: sigma_h, v: sigma_v })
    }

    /// One horizontal cylinder of `n` squares glued to itself vertically.
    pub fn torus(n: usize) -> Self {
        let h = (0..n).map(|i| (i + 1) % n).collect();
        Origami { h, v: (0..n).collect() }
    }

    pub fn n_squares(&self) -> usize {
        self.h.len()
    }

    pub fn sigma_h(&self) -> &[usize] {
        &self.h
    }

    pub fn sigma_v(&self) -> &[usize] {
        &self.v
    }

    /// Corner permutation; its cycles are the vertices of the square tiling.
    pub fn corner_permutation(&self) -> Vec<usize> {
        let hi = inverse(&self.h);
        let vi = inverse(&self.v);
        (0..self.n_squares()).map(|i| self.v[self.h[vi[hi[i]]]]).collect()
    }

    /// Vertices as cycles of the corner permutation.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.corner_permutation())
    }

    /// Vertices with positive order, paired with that order.
    pub fn cone_points(&self) -> Vec<(Vec<usize>, usize)> {
        self.vertices()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let k = c.len() - 1;
                (c, k)
            })
            .collect()
    }

    pub fn stratum(&self) -> Stratum {
        Stratum::new(self.cone_points().into_iter().map(|(_, k)| k).collect())
    }

    /// Genus from the stratum, cross-checked against the Euler characteristic.
    pub fn genus(&self) -> Result<usize> {
        let s = self.stratum();
        let total: usize = s.orders().iter().sum();
        if total % 2 != 0 {
            return Err(Error::InternalInconsistency(format!("odd total order {total}")));
        }
        let g = 1 + total / 2;
        let v = self.vertices().len() as i64;
        let chi = v - self.n_squares() as i64;
        if chi != 2 - 2 * g as i64 {
            return Err(Error::InternalInconsistency(format!(
                "Euler characteristic {chi} disagrees with genus {g}"
            )));
        }
        Ok(g)
    }

    /// Maximal cylinders in the given direction.
    pub fn cylinders(&self, dir: Direction) -> CylinderDecomposition {
        let (along, across) = match dir {
            Direction::Horizontal => (&self.h, &self.v),
            Direction::Vertical => (&self.v, &self.h),
        };
        let cyc = cycles(along);
        let mut which = vec![0; self.n_squares()];
        for (k, c) in cyc.iter().enumerate() {
            for &s in c {
                which[s] = k;
            }
        }
        let mut parent: Vec<usize> = (0..cyc.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for (k, c) in cyc.iter().enumerate() {
            // no cone point on the boundary above this cycle
            if c.iter().all(|&i| along[across[i]] == across[along[i]]) {
                let above = which[across[c[0]]];
                let (a, b) = (find(&mut parent, k), find(&mut parent, above));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..cyc.len() {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(k);
        }
        let mut cylinders: Vec<Cylinder> = groups
            .values()
            .map(|ks| {
                let mut squares: Vec<usize> = ks.iter().flat_map(|&k| cyc[k].iter().copied()).collect();
                squares.sort_unstable();
                Cylinder { circumference: cyc[ks[0]].len(), height: ks.len(), squares }
            })
            .collect();
        cylinders.sort_by_key(|c| c.squares[0]);
        CylinderDecomposition { direction: dir, cylinders }
    }

    /// Core curves of the one-square-wide annuli: horizontal curves are the
    /// cycles of `sigma_h`, vertical curves the cycles of `sigma_v`, and
    /// `X[i][j]` counts the squares they share.
    pub fn curve_system(&self) -> CurveSystem {
        let hc = cycles(&self.h);
        let vc = cycles(&self.v);
        let mut col = vec![0; self.n_squares()];
        for (j, c) in vc.iter().enumerate() {
            for &s in c {
                col[s] = j;
            }
        }
        let mut x = vec![vec![0i64; vc.len()]; hc.len()];
        for (i, c) in hc.iter().enumerate() {
            for &s in c {
                x[i][col[s]] += 1;
            }
        }
        CurveSystem { x: IntMatrix::from_rows(&x), horizontal: hc, vertical: vc }
    }

    /// Intersection counts between maximal cylinders, divided by the size of
    /// one crossing block (`height_i * width_j`); the division must be exact.
    pub fn cylinder_intersections(&self) -> Result<IntMatrix> {
        let hd = self.cylinders(Direction::Horizontal);
        let vd = self.cylinders(Direction::Vertical);
        let mut col = vec![0; self.n_squares()];
        for (j, c) in vd.cylinders.iter().enumerate() {
            for &s in &c.squares {
                col[s] = j;
            }
        }
        let mut x = vec![vec![0i64; vd.cylinders.len()]; hd.cylinders.len()];
        for (i, c) in hd.cylinders.iter().enumerate() {
            for &s in &c.squares {
                x[i][col[s]] += 1;
            }
        }
        for (i, row) in x.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let block = (hd.cylinders[i].height * vd.cylinders[j].height) as i64;
                if *e % block != 0 {
                    return Err(Error::NonIntegralIntersection(format!(
                        "horizontal cylinder {i} meets vertical cylinder {j} in {e} squares, block size {block}"
                    )));
                }
                *e /= block;
            }
        }
        Ok(IntMatrix::from_rows(&x))
    }

    /// Conjugates by the relabelling `i -> perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Origami> {
        check_perm(perm, "relabelling")?;
        let n = self.n_squares();
        if perm.len() != n {
            return Err(Error::NotAPermutation("relabelling has the wrong length".into()));
        }
        let mut h = vec![0; n];
        let mut v = vec![0; n];
        for i in 0..n {
            h[perm[i]] = perm[self.h[i]];
            v[perm[i]] = perm[self.v[i]];
        }
        Origami::new(h, v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("origami serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cylinder {
    pub squares: Vec<usize>,
    pub circumference: usize,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
}

/// Filling pair of multicurves given by the core curves of the horizontal and
/// vertical annuli, with their geometric intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    pub x: IntMatrix,
    /// Squares crossed by each horizontal curve (empty for curves given only by matrix).
    #[serde(skip)]
    pub horizontal: Vec<Vec<usize>>,
    #[serde(skip)]
    pub vertical: Vec<Vec<usize>>,
}

impl CurveSystem {
    /// A curve system given only by its intersection matrix.
    pub fn from_matrix(x: IntMatrix) -> Result<Self> {
        for i in 0..x.rows() {
            if x.row(i).iter().all(num_traits::Zero::is_zero) {
                return Err(Error::InvalidParam(format!("row {i} of X is zero")));
            }
        }
        for j in 0..x.cols() {
            if (0..x.rows()).all(|i| num_traits::Zero::is_zero(x.get(i, j))) {
                return Err(Error::InvalidParam(format!("column {j} of X is zero")));
            }
        }
        Ok(CurveSystem { x, horizontal: Vec::new(), vertical: Vec::new() })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_matrix(IntMatrix::from_rows(rows))
    }

    /// Number of horizontal curves.
    pub fn n(&self) -> usize {
        self.x.rows()
    }

    /// Number of vertical curves.
    pub fn m(&self) -> usize {
        self.x.cols()
    }

    pub fn xxt(&self) -> SymIntMatrix {
        SymIntMatrix::new(self.x.mul(&self.x.transpose())).expect("XX^T is symmetric")
    }

    pub fn xtx(&self) -> SymIntMatrix {
        SymIntMatrix::new(self.x.transpose().mul(&self.x)).expect("X^TX is symmetric")
    }

    /// Replaces horizontal curve `i` by `rows[i]` parallel copies and
    /// vertical curve `j` by `cols[j]` parallel copies.
    pub fn with_multiplicities(&self, rows: &[usize], cols: &[usize]) -> CurveSystem {
        let ri: Vec<usize> = rows.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect();
        let ci: Vec<usize> = cols.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j, k)).collect();
        CurveSystem { x: self.x.select(&ri, &ci), horizontal: Vec::new(), vertical: Vec::new() }
    }
}

/// Multiset of positive zero orders, stored in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Stratum(Vec<usize>);

impl Stratum {
    pub fn new(mut orders: Vec<usize>) -> Self {
        orders.retain(|&k| k > 0);
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Stratum(orders)
    }

    pub fn orders(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Genus, or `None` when the orders sum to an odd number.
    pub fn genus(&self) -> Option<usize> {
        let t = self.total();
        (t % 2 == 0).then_some(1 + t / 2)
    }

    pub fn n_zeros(&self) -> usize {
        self.0.len()
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|k| k % 2 == 0)
    }

    pub fn n_odd(&self) -> usize {
        self.0.iter().filter(|k| *k % 2 == 1).count()
    }

    /// `H(2g-2)`
    pub fn is_minimal(&self) -> bool {
        self.0.len() == 1
    }

    /// `H(g-1, g-1)`
    pub fn is_symmetric_pair(&self) -> bool {
        self.0.len() == 2 && self.0[0] == self.0[1]
    }

    /// Checks that the orders describe a stratum of genus `g`.
    pub fn validate(&self, g: usize) -> Result<()> {
        if g < 2 {
            return Err(Error::InvalidStratum(format!("genus {g} has no zeros")));
        }
        if self.total() != 2 * g - 2 {
            return Err(Error::InvalidStratum(format!(
                "orders {self} sum to {}, expected {}",
                self.total(),
                2 * g - 2
            )));
        }
        Ok(())
    }

    /// All strata of genus `g`, as partitions of `2g - 2`.
    pub fn all_of_genus(g: usize) -> Vec<Stratum> {
        fn parts(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Stratum>) {
            if n == 0 {
                out.push(Stratum::new(cur.clone()));
                return;
            }
            for k in (1..=max.min(n)).rev() {
                cur.push(k);
                parts(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if g >= 2 {
            parts(2 * g - 2, 2 * g - 2, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Stratum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches("H(").trim_end_matches(')');
        if t.is_empty() {
            return Ok(Stratum::default());
        }
        let mut v = Vec::new();
        for part in t.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidStratum(format!("cannot parse '{part}'")))?;
            if k == 0 {
                return Err(Error::InvalidStratum("orders must be positive".into()));
            }
            v.push(k);
        }
        Ok(Stratum::new(v))
    }
}

impl Serialize for Stratum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Stratum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Stratum::new(Vec::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_square_torus() {
        let o = Origami::new(vec![0], vec![0]).unwrap();
        assert!(o.stratum().orders().is_empty());
        assert_eq!(o.genus().unwrap(), 1);
        let c = o.cylinders(Direction::Horizontal);
        assert_eq!(c.cylinders.len(), 1);
        assert_eq!((c.cylinders[0].circumference, c.cylinders[0].height), (1, 1));
        assert_eq!(o.curve_system().x, IntMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn two_square_torus() {
        let o = Origami::new(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!(o.genus().unwrap(), 1);
        let c = o.cylinders(Direction::Horizontal);
        assert_eq!(c.cylinders.len(), 1);
        assert_eq!(c.cylinders[0].circumference, 2);
    }

    #[test]
    fn disconnected_pair() {
        assert_eq!(
            Origami::new(vec![0, 1], vec![0, 1]).unwrap_err(),
            Error::NotConnected { orbit: 1, total: 2 }
        );
    }

    #[test]
    fn not_a_permutation() {
        assert!(matches!(Origami::new(vec![0, 0], vec![0, 1]), Err(Error::NotAPermutation(_))));
        assert!(matches!(Origami::new(vec![0], vec![0, 1]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn l_shaped_three_squares() {
        // squares 0,1 in a row, square 2 above square 0
        let o = Origami::new(vec![1, 0, 2], vec![2, 1, 0]).unwrap();
        assert_eq!(o.stratum().orders(), &[2]);
        assert_eq!(o.genus().unwrap(), 2);
    }

    #[test]
    fn stratum_parsing_and_partitions() {
        let s: Stratum = "1,3".parse().unwrap();
        assert_eq!(s.orders(), &[3, 1]);
        assert_eq!(s.to_string(), "3,1");
        let g3 = Stratum::all_of_genus(3);
        assert_eq!(g3.len(), 5);
        assert_eq!(Stratum::all_of_genus(4).len(), 11);
    }

    #[test]
    fn json_form() {
        let o = Origami::new(vec![1, 0, 2], vec![2, 1, 0]).unwrap();
        let s = o.to_json();
        assert_eq!(s, r#"{"n":3,"sigma_h":[1,0,2],"sigma_v":[2,1,0]}"#);
        let back: Origami = serde_json::from_str(&s).unwrap();
        assert_eq!(back, o);
        assert!(serde_json::from_str::<Origami>(r#"{"n":2,"sigma_h":[0,1],"sigma_v":[0,1]}"#).is_err());
    }

    #[test]
    fn multiplicities_repeat_rows_and_columns() {
        let cs = CurveSystem::from_rows(&[vec![1, 2]]).unwrap();
        let w = cs.with_multiplicities(&[2], &[1, 3]);
        assert_eq!(w.x, IntMatrix::from_rows(&[vec![1, 2, 2, 2], vec![1, 2, 2, 2]]));
    }
}
