use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{build_m, build_omega, charpoly, inertia, Inertia};
use crate::origami::CurveSystem;
use crate::poly::{
    cauchy_bound, isolate_largest_real_root, minimal_polynomial_with_interval, sturm_sequence, IntPoly, RootInterval,
};

/// Perron-Frobenius eigenvalue of `XX^T` with its minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceField {
    pub degree: usize,
    pub minpoly: IntPoly,
    pub root: RootInterval,
    pub xxt_charpoly: IntPoly,
}

pub fn trace_field(cs: &CurveSystem) -> Result<TraceField> {
    let p = charpoly(&cs.xxt());
    let r = isolate_largest_real_root(&p)?;
    let (minpoly, root) = minimal_polynomial_with_interval(&p, &r)?;
    Ok(TraceField { degree: minpoly.deg(), minpoly, root, xxt_charpoly: p })
}

/// Degree of `Q(mu^2)`, the minimal polynomial of `mu^2` and an isolating interval.
pub fn trace_field_degree(cs: &CurveSystem) -> Result<(usize, IntPoly, RootInterval)> {
    let tf = trace_field(cs)?;
    Ok((tf.degree, tf.minpoly, tf.root))
}

/// Whether a polynomial has a root in `(4, oo)`.
fn has_root_above_four(p: &IntPoly) -> bool {
    let four = BigRational::from_integer(BigInt::from(4));
    let b = BigRational::from_integer(cauchy_bound(p));
    if b <= four {
        return false;
    }
    let seq = sturm_sequence(&crate::poly::squarefree_part(p)).expect("nonzero");
    seq.count(&four, &b) > 0
}

/// The twist product is pseudo-Anosov iff the PF eigenvalue of `XX^T` exceeds 4.
pub fn is_pseudo_anosov(cs: &CurveSystem) -> bool {
    has_root_above_four(&charpoly(&cs.xxt()))
}

/// `t^d f(t + 1/t + 2)` for `f` of degree `d`: the polynomial whose roots are
/// the `lambda` with `lambda + 1/lambda + 2` a root of `f`.
pub fn trace_transform(f: &IntPoly) -> IntPoly {
    let d = f.deg();
    let sq = IntPoly::from_i64(&[1, 2, 1]);
    let mut out = IntPoly::zero();
    for k in 0..=d {
        let c = f.coeff(k);
        if c == BigInt::from(0) {
            continue;
        }
        let term = sq.pow(k).shl(d - k).scale(&c);
        out = &out + &term;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchFactor {
    pub degree: usize,
    pub minpoly: IntPoly,
    pub root: RootInterval,
}

/// Largest eigenvalue of `-M` and its minimal polynomial.
pub fn stretch_factor(cs: &CurveSystem) -> Result<StretchFactor> {
    if !is_pseudo_anosov(cs) {
        return Err(Error::NotPseudoAnosov);
    }
    let p = charpoly(&build_m(cs).neg());
    let r = isolate_largest_real_root(&p)?;
    let (minpoly, root) = minimal_polynomial_with_interval(&p, &r)?;
    Ok(StretchFactor { degree: minpoly.deg(), minpoly, root })
}

pub fn stretch_degree_direct(cs: &CurveSystem) -> Result<(usize, IntPoly)> {
    let s = stretch_factor(cs)?;
    Ok((s.degree, s.minpoly))
}

pub fn omega_plus_two_inertia(cs: &CurveSystem) -> Inertia {
    inertia(&build_omega(cs).add_scalar_identity(2))
}

/// `n + m > sigma + null > n + m - 2d` on the inertia of `Omega + 2I`.
pub fn criterion_holds(inertia: &Inertia, d: usize) -> bool {
    let dim = inertia.dim() as i64;
    let s = inertia.signature() + inertia.nullity() as i64;
    dim > s && s > dim - 2 * d as i64
}

/// Degree criterion for `d`, which must be the certified trace degree.
pub fn nonsplitting_criterion(cs: &CurveSystem, d: usize) -> Result<bool> {
    let (certified, _, _) = trace_field_degree(cs)?;
    if certified != d {
        return Err(Error::DegreeMismatch { given: d, certified });
    }
    Ok(criterion_holds(&omega_plus_two_inertia(cs), d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub trace_degree: usize,
    pub stretch_degree: usize,
    pub pf_minpoly: IntPoly,
    pub stretch_minpoly: IntPoly,
    pub inertia_of_omega_plus_2i: Inertia,
    pub criterion_applies: bool,
    pub pf_root: RootInterval,
    pub stretch_root: RootInterval,
    pub xxt_charpoly: IntPoly,
}

/// Full certificate: trace degree, stretch degree computed directly, and the
/// degree criterion, with every cross-check between them enforced.
pub fn certify(cs: &CurveSystem) -> Result<DegreeCertificate> {
    let tf = trace_field(cs)?;
    if !has_root_above_four(&tf.xxt_charpoly) {
        return Err(Error::NotPseudoAnosov);
    }
    let sf = stretch_factor(cs)?;
    let d = tf.degree;
    let transform = trace_transform(&tf.minpoly);
    if !transform.divisible_by(&sf.minpoly) {
        return Err(Error::InternalInconsistency(format!(
            "stretch factor polynomial {} does not divide {}",
            sf.minpoly, transform
        )));
    }
    if sf.degree != d && sf.degree != 2 * d {
        return Err(Error::InternalInconsistency(format!(
            "stretch degree {} with trace degree {d}",
            sf.degree
        )));
    }
    let inertia = omega_plus_two_inertia(cs);
    let criterion = criterion_holds(&inertia, d);
    if criterion {
        if sf.degree != 2 * d {
            return Err(Error::InternalInconsistency(format!(
                "criterion holds but stretch degree is {} for trace degree {d}",
                sf.degree
            )));
        }
        if sf.minpoly.reverse() != sf.minpoly && sf.minpoly.reverse() != -&sf.minpoly {
            return Err(Error::InternalInconsistency("stretch factor polynomial is not reciprocal".into()));
        }
    }
    Ok(DegreeCertificate {
        trace_degree: d,
        stretch_degree: sf.degree,
        pf_minpoly: tf.minpoly,
        stretch_minpoly: sf.minpoly,
        inertia_of_omega_plus_2i: inertia,
        criterion_applies: criterion,
        pf_root: tf.root,
        stretch_root: sf.root,
        xxt_charpoly: tf.xxt_charpoly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(rows: &[Vec<i64>]) -> CurveSystem {
        CurveSystem::from_rows(rows).unwrap()
    }

    #[test]
    fn one_square() {
        let (d, f, _) = trace_field_degree(&cs(&[vec![1]])).unwrap();
        assert_eq!((d, f), (1, IntPoly::from_i64(&[-1, 1])));
        assert!(!is_pseudo_anosov(&cs(&[vec![1]])));
        assert!(!is_pseudo_anosov(&cs(&[vec![2]])));
        assert!(is_pseudo_anosov(&cs(&[vec![3]])));
    }

    #[test]
    fn three() {
        let c = cs(&[vec![3]]);
        let (d, f) = stretch_degree_direct(&c).unwrap();
        assert_eq!((d, f), (2, IntPoly::from_i64(&[1, -7, 1])));
        assert!(!nonsplitting_criterion(&c, 1).unwrap());
        assert!(matches!(nonsplitting_criterion(&c, 2), Err(Error::DegreeMismatch { given: 2, certified: 1 })));
        let cert = certify(&c).unwrap();
        assert_eq!(cert.stretch_degree, 2);
        assert!(!cert.criterion_applies);
    }

    #[test]
    fn transform_of_linear() {
        // mu^2 = 9: lambda + 1/lambda = 7
        assert_eq!(trace_transform(&IntPoly::from_i64(&[-9, 1])), IntPoly::from_i64(&[1, -7, 1]));
    }

    #[test]
    fn not_pseudo_anosov_is_an_error() {
        assert!(matches!(stretch_degree_direct(&cs(&[vec![2]])), Err(Error::NotPseudoAnosov)));
    }
}
