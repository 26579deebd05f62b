//! Parity of the spin structure.
//!
//! [`spin_parity`] works from the fundamental cycles of the dual graph of the
//! squares, which always span first homology; `q` of a cycle is its turning
//! number plus one. [`arf_of_curves`] is the shortcut through the core curves
//! of the two annulus decompositions, each of index 0 so `q = 1` on all of
//! them, with intersection form `X mod 2`; it is only the parity when those
//! curves span, which fails for some surfaces. In both cases a symplectic
//! basis is extracted greedily and the Arf invariant summed over it.

use num_integer::Integer;

use crate::error::{Error, Result};
use std::collections::VecDeque;

use crate::origami::{inverse, CurveSystem, Origami};

type Bits = Vec<u64>;

fn flip(v: &mut Bits, i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

fn xor(a: &mut Bits, b: &Bits) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn dot(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 1
}

/// A class with its image under the Gram matrix and its value under `q`.
#[derive(Clone)]
struct Class {
    gv: Bits,
    v: Bits,
    q: bool,
}

impl Class {
    fn pair(&self, o: &Class) -> bool {
        dot(&self.gv, &o.v)
    }

    fn add(&mut self, o: &Class) {
        self.q ^= o.q ^ self.pair(o);
        xor(&mut self.v, &o.v);
        xor(&mut self.gv, &o.gv);
    }
}

/// Result of the symplectic reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArfData {
    /// Rank of the intersection form on the span of the curves.
    pub rank: usize,
    /// `(q(a_i), q(b_i))` along the symplectic basis found.
    pub pairs: Vec<(u8, u8)>,
    pub parity: u8,
}

/// Arf invariant of `q = 1` on the curves of `cs`, without checking the rank.
pub fn arf_of_curves(cs: &CurveSystem) -> ArfData {
    let (n, m) = (cs.n(), cs.m());
    let dim = n + m;
    let words = dim.div_ceil(64).max(1);
    let mut gram: Vec<Bits> = vec![vec![0; words]; dim];
    for i in 0..n {
        for j in 0..m {
            if cs.x.get(i, j).is_odd() {
                flip(&mut gram[i], n + j);
                flip(&mut gram[n + j], i);
            }
        }
    }
    arf(gram, vec![true; dim])
}

/// Spin parity of the curves of `cs` on a surface of genus `g`.
pub fn spin_parity_of_curves(cs: &CurveSystem, g: usize) -> Result<u8> {
    let a = arf_of_curves(cs);
    if a.rank != 2 * g {
        return Err(Error::CurvesDoNotGenerate { rank: a.rank, expected: 2 * g });
    }
    Ok(a.parity)
}

/// Edge `x` joins `x` to `h(x)`, edge `n + x` joins `x` to `v(x)`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Heading {
    East,
    North,
    West,
    South,
}

impl Heading {
    fn quarter(self) -> i64 {
        match self {
            Heading::East => 0,
            Heading::North => 1,
            Heading::West => 2,
            Heading::South => 3,
        }
    }
}

/// One step of a path in the dual graph: leave `from` with heading `dir`.
#[derive(Clone, Copy)]
struct Step {
    edge: usize,
    dir: Heading,
}

/// Fundamental cycles of a spanning tree of the dual graph, each an embedded
/// closed curve through square centres, as ordered steps.
fn dual_cycles(o: &Origami) -> Vec<Vec<Step>> {
    let (h, v) = (o.sigma_h(), o.sigma_v());
    let n = h.len();
    let hi = inverse(h);
    let vi = inverse(v);
    let moves = |x: usize| {
        [
            (h[x], Step { edge: x, dir: Heading::East }),
            (v[x], Step { edge: n + x, dir: Heading::North }),
            (hi[x], Step { edge: hi[x], dir: Heading::West }),
            (vi[x], Step { edge: n + vi[x], dir: Heading::South }),
        ]
    };
    // parent step into each square, and depth
    let mut parent: Vec<Option<(usize, Step)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; 2 * n];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (y, st) in moves(x) {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some((x, st));
                tree[st.edge] = true;
                queue.push_back(y);
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..n {
        for (y, st) in moves(x).into_iter().take(2) {
            if tree[st.edge] {
                continue;
            }
            // x -> y across the edge, then y up to the common ancestor and down to x
            let (mut a, mut b) = (y, x);
            let mut up = Vec::new();
            let mut down = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, s) = parent[a].expect("non-root");
                    up.push(reverse(s));
                    a = p;
                } else {
                    let (p, s) = parent[b].expect("non-root");
                    down.push(s);
                    b = p;
                }
            }
            let mut cyc = vec![st];
            cyc.extend(up);
            cyc.extend(down.into_iter().rev());
            out.push(cyc);
        }
    }
    out
}

fn reverse(s: Step) -> Step {
    let dir = match s.dir {
        Heading::East => Heading::West,
        Heading::West => Heading::East,
        Heading::North => Heading::South,
        Heading::South => Heading::North,
    };
    Step { edge: s.edge, dir }
}

/// `q` of an embedded curve: turning number plus one, mod 2.
fn quadratic_value(c: &[Step]) -> bool {
    let mut quarters = 0i64;
    for (i, s) in c.iter().enumerate() {
        let next = c[(i + 1) % c.len()];
        let t = (next.dir.quarter() - s.dir.quarter()).rem_euclid(4);
        debug_assert!(t != 2, "dual cycle backtracks");
        quarters += if t == 3 { -1 } else { t };
    }
    debug_assert_eq!(quarters % 4, 0);
    (quarters / 4).rem_euclid(2) == 0
}

/// Mod 2 intersection of two dual cycles, given as edge sets.
///
/// The second is pushed off by a small vector `(e, 2e)`; the copies then
/// cross only near a square centre `s`, where the first leaves east while the
/// second arrives from the south, or the first leaves north while the second
/// arrives from the west.
fn dual_pairing(a: &Bits, b: &Bits, hi: &[usize], vi: &[usize]) -> bool {
    let n = hi.len();
    let has = |c: &Bits, i: usize| c[i / 64] >> (i % 64) & 1 == 1;
    let mut acc = false;
    for s in 0..n {
        acc ^= has(a, s) && has(b, n + vi[s]);
        acc ^= has(a, n + s) && has(b, hi[s]);
    }
    acc
}

/// Arf invariant of `q` on the span of some classes; `gram[i]` holds the
/// pairings of class `i` with all the others.
fn arf(gram: Vec<Bits>, q: Vec<bool>) -> ArfData {
    let dim = gram.len();
    let words = dim.div_ceil(64).max(1);
    let mut pool: Vec<Class> = gram
        .into_iter()
        .zip(q)
        .enumerate()
        .map(|(i, (gv, q))| {
            let mut v = vec![0; words];
            flip(&mut v, i);
            Class { gv, v, q }
        })
        .collect();
    let mut pairs = Vec::new();
    let mut parity = false;
    loop {
        let mut found = None;
        'outer: for a in 0..pool.len() {
            for b in a + 1..pool.len() {
                if pool[a].pair(&pool[b]) {
                    found = Some((a, b));
                    break 'outer;
                }
            }
        }
        let Some((a, b)) = found else { break };
        let w = pool.remove(b);
        let u = pool.remove(a);
        pairs.push((u.q as u8, w.q as u8));
        parity ^= u.q && w.q;
        for x in pool.iter_mut() {
            if x.pair(&w) {
                x.add(&u);
            }
            if x.pair(&u) {
                x.add(&w);
            }
        }
    }
    ArfData { rank: 2 * pairs.len(), pairs, parity: parity as u8 }
}

/// Arf invariant computed from the fundamental cycles of the dual graph,
/// which always span first homology.
pub fn arf_of_dual_cycles(o: &Origami) -> ArfData {
    let (h, v) = (o.sigma_h(), o.sigma_v());
    let n = h.len();
    let hi = inverse(h);
    let vi = inverse(v);
    let cycles = dual_cycles(o);
    let words = (2 * n).div_ceil(64).max(1);
    let sets: Vec<Bits> = cycles
        .iter()
        .map(|c| {
            let mut b = vec![0; words];
            for s in c {
                flip(&mut b, s.edge);
            }
            b
        })
        .collect();
    let k = cycles.len();
    let gw = k.div_ceil(64).max(1);
    let mut gram = vec![vec![0u64; gw]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && dual_pairing(&sets[i], &sets[j], &hi, &vi) {
                flip(&mut gram[i], j);
            }
        }
    }
    arf(gram, cycles.iter().map(|c| quadratic_value(c)).collect())
}

/// Spin parity of a square-tiled surface whose zeros all have even order.
pub fn spin_parity(o: &Origami) -> Result<u8> {
    if !o.stratum().all_even() {
        return Err(Error::SpinUndefined);
    }
    let g = o.genus()?;
    let a = arf_of_dual_cycles(o);
    if a.rank != 2 * g {
        return Err(Error::InternalInconsistency(format!(
            "dual cycles span rank {} in genus {g}",
            a.rank
        )));
    }
    Ok(a.parity)
}
