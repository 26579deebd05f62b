use rayon::prelude::*;

use super::degree::{certify, is_pseudo_anosov, trace_field, DegreeCertificate};
use crate::error::{Error, Result};
use crate::origami::{CurveSystem, Origami};

/// A surface together with the curve system whose twists are certified.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub origami: Origami,
    pub curves: CurveSystem,
}

impl Candidate {
    pub fn of(origami: Origami) -> Self {
        let curves = origami.curve_system();
        Candidate { origami, curves }
    }
}

#[derive(Clone, Debug)]
pub struct Found {
    pub y: usize,
    pub candidate: Candidate,
    pub certificate: DegreeCertificate,
}

/// Whether `c` is pseudo-Anosov with trace degree `d`.
fn hits(c: &Candidate, d: usize) -> Result<bool> {
    if !is_pseudo_anosov(&c.curves) {
        return Ok(false);
    }
    Ok(trace_field(&c.curves)?.degree == d)
}

/// Smallest `y` in `y_start..=y_max` whose surface has trace degree `d`.
///
/// Parameters the builder rejects as too small are skipped. Values are tried
/// in parallel batches, but the answer is always the smallest hit.
pub fn hilbert_search<F>(build: F, y_start: usize, y_max: usize, d: usize) -> Result<Found>
where
    F: Fn(usize) -> Result<Candidate> + Sync,
{
    let batch = rayon::current_num_threads().max(1);
    let mut y = y_start;
    while y <= y_max {
        let hi = (y + batch - 1).min(y_max);
        let results: Vec<(usize, Result<Option<Candidate>>)> = (y..=hi)
            .into_par_iter()
            .map(|yy| {
                let r = match build(yy) {
                    Ok(c) => hits(&c, d).map(|ok| ok.then_some(c)),
                    Err(Error::ParamsTooSmall(_)) => Ok(None),
                    Err(e) => Err(e),
                };
                (yy, r)
            })
            .collect();
        for (yy, r) in results {
            if let Some(c) = r? {
                let certificate = certify(&c.curves)?;
                return Ok(Found { y: yy, candidate: c, certificate });
            }
        }
        y = hi + 1;
    }
    Err(Error::SearchExhausted(y_max as u64))
}
