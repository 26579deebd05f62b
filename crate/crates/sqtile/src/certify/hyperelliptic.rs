//! Rotations by 180 degrees that permute the squares.
//!
//! Such a rotation `tau` satisfies `tau h = h^-1 tau` and `tau v = v^-1 tau`,
//! so it is fixed by the image of square 0. Zeros sit at vertices, which pins
//! the rotation centre to the half-integer lattice of square centres, edge
//! midpoints and vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{inverse, Origami};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Involution {
    pub tau: Vec<usize>,
    pub fixed_squares: usize,
    pub fixed_horizontal_edges: usize,
    pub fixed_vertical_edges: usize,
    pub fixed_vertices: usize,
    /// Whether every zero is sent to a different zero.
    pub swaps_zeros: bool,
}

impl Involution {
    pub fn fixed_points(&self) -> usize {
        self.fixed_squares + self.fixed_horizontal_edges + self.fixed_vertical_edges + self.fixed_vertices
    }
}

fn candidate(o: &Origami, hi: &[usize], vi: &[usize], s: usize) -> Option<Vec<usize>> {
    let (h, v) = (o.sigma_h(), o.sigma_v());
    let n = o.n_squares();
    let mut tau = vec![usize::MAX; n];
    tau[0] = s;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        let t = tau[x];
        for (y, ty) in [(h[x], hi[t]), (hi[x], h[t]), (v[x], vi[t]), (vi[x], v[t])] {
            if tau[y] == usize::MAX {
                tau[y] = ty;
                stack.push(y);
            } else if tau[y] != ty {
                return None;
            }
        }
    }
    let involutive = (0..n).all(|x| tau[tau[x]] == x);
    involutive.then_some(tau)
}

/// All square-permuting rotations by 180 degrees that square to the identity.
pub fn involutions(o: &Origami) -> Result<Vec<Involution>> {
    let cones = o.cone_points();
    if cones.is_empty() {
        return Err(Error::NoConePoint);
    }
    let (h, v) = (o.sigma_h(), o.sigma_v());
    let hi = inverse(h);
    let vi = inverse(v);
    let verts = o.vertices();
    let mut vid = vec![0; o.n_squares()];
    for (k, c) in verts.iter().enumerate() {
        for &s in c {
            vid[s] = k;
        }
    }
    let mut out = Vec::new();
    for s in 0..o.n_squares() {
        let Some(tau) = candidate(o, &hi, &vi, s) else { continue };
        let n = o.n_squares();
        // the bottom-left corner of x goes to the top-right corner of tau(x)
        let image = |k: usize| vid[v[h[tau[verts[k][0]]]]];
        let fixed_vertices = (0..verts.len()).filter(|&k| image(k) == k).count();
        let swaps_zeros = verts
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .all(|(k, _)| image(k) != k);
        out.push(Involution {
            fixed_squares: (0..n).filter(|&x| tau[x] == x).count(),
            fixed_horizontal_edges: (0..n).filter(|&x| tau[x] == v[x]).count(),
            fixed_vertical_edges: (0..n).filter(|&x| tau[x] == h[x]).count(),
            fixed_vertices,
            swaps_zeros,
            tau,
        });
    }
    Ok(out)
}

/// Whether some rotation has exactly `2g + 2` fixed points, with the largest
/// fixed point count seen.
pub fn is_hyperelliptic(o: &Origami) -> Result<(bool, usize)> {
    let g = o.genus()?;
    let inv = involutions(o)?;
    let target = 2 * g + 2;
    if inv.iter().any(|i| i.fixed_points() == target) {
        return Ok((true, target));
    }
    Ok((false, inv.iter().map(|i| i.fixed_points()).max().unwrap_or(0)))
}

/// Membership in the hyperelliptic component: a rotation with `2g + 2` fixed
/// points which, in `H(g-1, g-1)`, also exchanges the two zeros.
pub fn in_hyperelliptic_component(o: &Origami) -> Result<bool> {
    let g = o.genus()?;
    let s = o.stratum();
    if !(s.is_minimal() || s.is_symmetric_pair()) {
        return Ok(false);
    }
    let inv = involutions(o)?;
    Ok(inv
        .iter()
        .any(|i| i.fixed_points() == 2 * g + 2 && (s.is_minimal() || i.swaps_zeros)))
}
