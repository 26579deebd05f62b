use super::IntPoly;

/// Square-free decomposition by Yun's algorithm.
///
/// Returns pairs `(f_i, i)` of primitive, pairwise coprime, square-free
/// polynomials with positive leading coefficient such that the input equals
/// `c * prod f_i^i` for an integer `c`. The factor `t` is always reported on
/// its own so that the multiplicity of the root zero can be read off directly.
/// Pairs are ordered by decreasing multiplicity, then by degree.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    if p.is_zero() || p.deg() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let v = p.t_valuation();
    if v > 0 {
        out.push((IntPoly::t(), v));
    }
    let f = p.shr(v).primitive_part();
    if f.deg() > 0 {
        out.extend(yun(&f));
    }
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.deg().cmp(&b.0.deg())));
    out
}

fn yun(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let df = f.derivative();
    let a0 = f.gcd(&df).primitive_part();
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d).primitive_part();
        let nb = b.div_exact(&a).expect("gcd divides b");
        let nc = d.div_exact(&a).expect("gcd divides d");
        if a.deg() > 0 {
            out.push((a, i));
        }
        d = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    out
}
