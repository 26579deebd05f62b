//! Choosing a family for a (stratum, component, degree) request and searching
//! its free parameter for a surface with the requested trace-field degree.
//!
//! Dispatch table (`w` is 1 without L-shapes, 2 with them):
//!
//! | component | stratum | degree | family, free parameter |
//! |---|---|---|---|
//! | odd, nonhyp, unique | any | `d >= 2` | `generic`, `y >= 5`, `ys = w+1..w+d-2, w x (g-d+1)` |
//! | even | two or more zeros | `d >= 2` | `spin0_multi`, `y >= 3`, `ys = 2..d-1, 1 x (g-d+1)` |
//! | even | `H(6)` | 2, 3 | `spin0_min`, `y = 2`, `ys = 2`, handle height searched |
//! | even | `H(2g-2)`, `g >= 5` | 2 | `spin0_min_deg2`, fixed |
//! | even | `H(2g-2)`, `g >= 5` | 3 | `spin0_min_deg2`, `ys = 2, s, 1, .., 1`, `s >= 3` |
//! | even | `H(2g-2)` | `d >= 4` | `spin0_min`, `y >= 2`, `ys = 2..d-3, 1 x (g+1-d)` |
//! | hyp | `H(2g-2)` | `2 <= d < g` | `hyp_Y`, `n = g-d`, `k = d-2`, `y >= 2` |
//! | hyp | `H(2g-2)` | `d = g` | `hyp_staircase_long`, `y >= 2` |
//! | hyp | `H(g-1,g-1)` | `d >= 2` | `hyp_X`, `n = g-d`, `k = d-2`, `y >= 2` |
//! | any | any | 1 | the `d = 2` route from its smallest buildable value, curves weighted |
//!
//! In degree 1 every horizontal curve of circumference `c` is repeated
//! `k L / c` times, `L` the least common multiple of the circumferences, and
//! likewise vertically; the Perron-Frobenius eigenvalue of `XX^T` is then
//! `k^2 L L'`, rational, and `k` is the least value making it exceed 4.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::certify::{certify, component_label, components, hilbert_search, Candidate, ComponentKind, ComponentLabel, DegreeCertificate};
use crate::constructions::{Params, Registry};
use crate::error::{Error, Result};
use crate::origami::{CurveSystem, Origami, Stratum};

/// Placeholder for the searched value inside a route template.
pub const FREE: &str = "{}";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub genus: usize,
    pub stratum: Stratum,
    /// `None` accepts whichever component the dispatch picks first.
    pub component: Option<ComponentKind>,
    pub degree: usize,
    pub y_max: usize,
}

/// A family with a parameter template; values equal to [`FREE`] (or list
/// entries equal to it) receive the searched value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub family: &'static str,
    pub template: Params,
    pub start: usize,
    pub weighted: bool,
}

impl Route {
    fn new(family: &'static str, template: Params, start: usize) -> Self {
        Route { family, template, start, weighted: false }
    }

    /// Whether some parameter is searched.
    pub fn has_free(&self) -> bool {
        self.template.iter().any(|(_, v)| v.split(',').any(|x| x == FREE))
    }

    pub fn params(&self, value: usize) -> Params {
        let mut p = Params::new();
        for (k, v) in self.template.iter() {
            let s: Vec<String> =
                v.split(',').map(|x| if x == FREE { value.to_string() } else { x.to_string() }).collect();
            p = p.with(k, s.join(","));
        }
        p
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.family, self.template)?;
        if self.weighted {
            write!(f, " (weighted)")?;
        }
        Ok(())
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `w+1, .., w+d-2` followed by `g-d+1` copies of `w`.
fn template_heights(g: usize, d: usize, w: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=d.saturating_sub(2)).map(|i| w + i).collect();
    v.extend(std::iter::repeat_n(w, g + 1 - d));
    v
}

/// The component the dispatch uses when none is requested.
pub fn default_component(s: &Stratum) -> Option<ComponentKind> {
    components(s).first().copied()
}

/// Route for a request, after validating it.
pub fn route(g: usize, s: &Stratum, c: ComponentKind, d: usize) -> Result<Route> {
    use ComponentKind::*;
    s.validate(g)?;
    if d == 0 || d > g {
        return Err(Error::InvalidParam(format!("degree must lie in 1..={g}, got {d}")));
    }
    let comps = components(s);
    if !comps.contains(&c) {
        let names: Vec<&str> = comps.iter().map(|k| k.as_str()).collect();
        return Err(Error::InvalidParam(format!("{s} has no {c} component (it has {})", names.join(", "))));
    }
    if d == 1 {
        // any surface of the component will do; small circumferences keep
        // the multiplicities small
        let mut r = route(g, s, c, 2)?;
        r.weighted = true;
        r.start = r.start.min(1);
        return Ok(r);
    }
    let base = Params::new().with("g", g);
    let st = s.to_string();
    let r = match c {
        Hyp if s.is_minimal() && d == g => {
            Route::new("hyp_staircase_long", base.with("y", FREE), 2)
        }
        Hyp => {
            let family = if s.is_minimal() { "hyp_Y" } else { "hyp_X" };
            let p = Params::new().with("n", g - d).with("k", d - 2).with("y", FREE);
            Route::new(family, p, 2)
        }
        Even if s.n_zeros() >= 2 => {
            let p = base.with("stratum", st).with("y", FREE).with("ys", list(&template_heights(g, d, 1)));
            Route::new("spin0_multi", p, 3)
        }
        Even if g == 4 && d <= 3 => {
            Route::new("spin0_min", base.with("y", 2).with("ys", 2).with("handle", FREE), 1)
        }
        Even if d == 2 => Route::new("spin0_min_deg2", base, 0),
        Even if d == 3 => {
            let mut ys = vec!["2".to_string(), FREE.to_string()];
            ys.extend(std::iter::repeat_n("1".to_string(), g - 3));
            Route::new("spin0_min_deg2", base.with("ys", ys.join(",")), 3)
        }
        Even => {
            let mut ys: Vec<usize> = (2..=d - 3).collect();
            ys.extend(std::iter::repeat_n(1, g + 1 - d));
            Route::new("spin0_min", base.with("y", FREE).with("ys", list(&ys)), 2)
        }
        Odd | NonHyp | Unique => {
            let w = if s.n_odd() > 0 { 2 } else { 1 };
            let p = base.with("stratum", st).with("y", FREE).with("ys", list(&template_heights(g, d, w)));
            Route::new("generic", p, 5)
        }
    };
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub route: String,
    pub params: Vec<(String, String)>,
    /// Value of the searched parameter, if any.
    pub y_found: Option<usize>,
    pub component: ComponentKind,
    #[serde(skip)]
    pub origami: Origami,
    #[serde(skip)]
    pub curves: CurveSystem,
    /// Copies of each horizontal and vertical curve in degree 1.
    pub multiplicities: Option<(Vec<usize>, Vec<usize>)>,
    pub certificate: DegreeCertificate,
    pub label: ComponentLabel,
}

/// Curve multiplicities turning the unit-annulus twists into an affine
/// multitwist with trace field `Q`.
pub fn affine_weights(cs: &CurveSystem) -> (Vec<usize>, Vec<usize>) {
    let x = cs.x.to_i64_rows().expect("small intersection numbers");
    let rows: Vec<usize> = x.iter().map(|r| r.iter().sum::<i64>() as usize).collect();
    let cols: Vec<usize> = (0..cs.m()).map(|j| x.iter().map(|r| r[j]).sum::<i64>() as usize).collect();
    let l = rows.iter().fold(1, |a, &b| a.lcm(&b));
    let lc = cols.iter().fold(1, |a, &b| a.lcm(&b));
    let mut k = 1;
    while k * k * l * lc <= 4 {
        k += 1;
    }
    (rows.iter().map(|c| k * l / c).collect(), cols.iter().map(|c| k * lc / c).collect())
}

pub fn realize(req: &Request) -> Result<Realization> {
    realize_with(&Registry::standard(), req)
}

pub fn realize_with(registry: &Registry, req: &Request) -> Result<Realization> {
    let (g, d) = (req.genus, req.degree);
    req.stratum.validate(g)?;
    let c = match req.component {
        Some(c) => c,
        None => default_component(&req.stratum).ok_or_else(|| Error::InvalidStratum(req.stratum.to_string()))?,
    };
    let r = route(g, &req.stratum, c, d)?;
    let build = |v: usize| -> Result<Candidate> { Ok(Candidate::of(registry.build(r.family, &r.params(v))?)) };
    let last = if r.has_free() { req.y_max } else { r.start };
    if r.start > last {
        return Err(Error::SearchExhausted(req.y_max as u64));
    }
    let (y_found, candidate, certificate, multiplicities) = if r.weighted {
        let mut v = r.start;
        let cand = loop {
            match build(v) {
                Ok(cand) => break cand,
                Err(Error::ParamsTooSmall(_)) if v < last => v += 1,
                Err(Error::ParamsTooSmall(_)) => return Err(Error::SearchExhausted(last as u64)),
                Err(e) => return Err(e),
            }
        };
        let w = affine_weights(&cand.curves);
        let curves = cand.curves.with_multiplicities(&w.0, &w.1);
        let cert = certify(&curves)?;
        if cert.trace_degree != 1 {
            return Err(Error::InternalInconsistency(format!(
                "weighted curves have trace degree {}",
                cert.trace_degree
            )));
        }
        (Some(v), Candidate { origami: cand.origami, curves }, cert, Some(w))
    } else {
        let found = hilbert_search(build, r.start, last, d)?;
        (Some(found.y), found.candidate, found.certificate, None)
    };
    let label = component_label(&candidate.origami)?;
    if label.label != c {
        return Err(Error::InternalInconsistency(format!("{} built a surface labelled {}, not {c}", r, label.label)));
    }
    if candidate.origami.stratum() != req.stratum {
        return Err(Error::InternalInconsistency(format!("{r} left the stratum {}", req.stratum)));
    }
    let chosen = r.params(y_found.unwrap_or(r.start));
    Ok(Realization {
        route: r.to_string(),
        params: chosen.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        y_found: if r.has_free() { y_found } else { None },
        component: c,
        origami: candidate.origami,
        curves: candidate.curves,
        multiplicities,
        certificate,
        label,
    })
}

/// One `(stratum, component, degree)` cell of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub genus: usize,
    pub stratum: Stratum,
    pub component: ComponentKind,
    pub degree: usize,
}

/// All cells of genus `2..=g_max`, in a fixed order.
pub fn all_cells(g_max: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    for g in 2..=g_max {
        for s in Stratum::all_of_genus(g) {
            for c in components(&s) {
                for d in 1..=g {
                    out.push(Cell { genus: g, stratum: s.clone(), component: c, degree: d });
                }
            }
        }
    }
    out
}
