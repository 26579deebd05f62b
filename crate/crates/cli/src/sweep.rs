use std::time::Instant;

use rayon::prelude::*;
use sqtile::certify::{certify, ComponentKind};
use sqtile::constructions::Registry;
use sqtile::realize::{all_cells, realize_with, route, Cell, Realization, Request};
use sqtile::{Error, Result, Stratum};

use crate::report::{csv_row, CsvRow};

pub struct CellResult {
    pub cell: Cell,
    pub outcome: Result<Realization>,
    pub ms: u128,
}

impl CellResult {
    pub fn csv(&self) -> String {
        let c = &self.cell;
        let d = c.degree.to_string();
        match &self.outcome {
            Ok(r) => {
                let cert = &r.certificate;
                csv_row(&CsvRow {
                    genus: c.genus,
                    stratum: &c.stratum,
                    component: c.component.as_str(),
                    d: &d,
                    y_found: r.y_found,
                    trace_degree: &cert.trace_degree.to_string(),
                    stretch_degree: &cert.stretch_degree.to_string(),
                    criterion_applied: &cert.criterion_applies.to_string(),
                    hyperelliptic: r.label.hyperelliptic,
                    spin: r.label.spin,
                    n_squares: r.origami.n_squares(),
                    ms_elapsed: self.ms,
                })
            }
            Err(_) => csv_row(&CsvRow {
                genus: c.genus,
                stratum: &c.stratum,
                component: c.component.as_str(),
                d: &d,
                y_found: None,
                trace_degree: "",
                stretch_degree: "",
                criterion_applied: "",
                hyperelliptic: false,
                spin: None,
                n_squares: 0,
                ms_elapsed: self.ms,
            }),
        }
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

/// Every `(stratum, component, degree)` cell of genus at most `g_max`, in the
/// order of [`all_cells`] whatever the number of workers.
pub fn verify(g_max: usize, y_budget: usize, jobs: usize) -> Vec<CellResult> {
    let registry = Registry::standard();
    let cells = all_cells(g_max);
    pool(jobs).install(|| {
        cells
            .into_par_iter()
            .map(|cell| {
                let t = Instant::now();
                let req = Request {
                    genus: cell.genus,
                    stratum: cell.stratum.clone(),
                    component: Some(cell.component),
                    degree: cell.degree,
                    y_max: y_budget,
                };
                let outcome = realize_with(&registry, &req);
                CellResult { cell, outcome, ms: t.elapsed().as_millis() }
            })
            .collect()
    })
}

pub struct OddHit {
    pub genus: usize,
    pub stratum: Stratum,
    pub component: ComponentKind,
    pub route: String,
    pub value: usize,
    pub degree: usize,
}

/// Surfaces along the dispatch routes whose stretch factor has odd degree,
/// which happens exactly when it lies in the trace field. Odd trace degrees
/// `3..=g` are scanned over every free value up to `y_budget`.
pub fn explore_odd(g_max: usize, y_budget: usize, jobs: usize) -> Result<Vec<OddHit>> {
    let registry = Registry::standard();
    let mut tasks = Vec::new();
    for cell in all_cells(g_max) {
        if cell.degree % 2 == 1 && cell.degree >= 3 {
            let r = route(cell.genus, &cell.stratum, cell.component, cell.degree)?;
            let last = if r.has_free() { y_budget } else { r.start };
            for v in r.start..=last {
                tasks.push((cell.clone(), r.clone(), v));
            }
        }
    }
    let found: Vec<Result<Option<OddHit>>> = pool(jobs).install(|| {
        tasks
            .into_par_iter()
            .map(|(cell, r, v)| {
                let o = match registry.build(r.family, &r.params(v)) {
                    Ok(o) => o,
                    Err(Error::ParamsTooSmall(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                let cert = match certify(&o.curve_system()) {
                    Ok(c) => c,
                    Err(Error::NotPseudoAnosov) => return Ok(None),
                    Err(e) => return Err(e),
                };
                Ok((cert.stretch_degree % 2 == 1).then(|| OddHit {
                    genus: cell.genus,
                    stratum: cell.stratum.clone(),
                    component: cell.component,
                    route: r.to_string(),
                    value: v,
                    degree: cert.stretch_degree,
                }))
            })
            .collect()
    });
    let mut out = Vec::new();
    for f in found {
        if let Some(h) = f? {
            out.push(h);
        }
    }
    Ok(out)
}
