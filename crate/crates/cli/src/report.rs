use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use sqtile::certify::{
    certify, component_label, is_pseudo_anosov, trace_field, ComponentLabel, DegreeCertificate, TraceField,
};
use sqtile::poly::{factor_over_integers, Factorization};
use sqtile::realize::Realization;
use sqtile::{linalg::charpoly, CurveSystem, Error, IntPoly, Origami, Result, Stratum, SymIntMatrix};

pub const SCHEMA: u32 = 1;

pub const CSV_HEADER: &str = "genus,stratum,component,d,y_found,trace_degree,stretch_degree,criterion_applied,hyperelliptic,spin,n_squares,ms_elapsed";

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub request: serde_json::Value,
    pub origami: Origami,
    pub genus: usize,
    pub stratum: Stratum,
    pub n_squares: usize,
    pub component: ComponentLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_found: Option<usize>,
    /// Copies of each horizontal and vertical core curve, when not all one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<(Vec<usize>, Vec<usize>)>,
    pub x: sqtile::IntMatrix,
    pub xxt: SymIntMatrix,
    pub charpoly: IntPoly,
    pub charpoly_factors: Factorization,
    pub trace_field: TraceField,
    pub pseudo_anosov: bool,
    /// Absent when the multitwist is not pseudo-Anosov.
    pub certificate: Option<DegreeCertificate>,
    pub timings_ms: BTreeMap<&'static str, u128>,
}

fn ms(t: Instant) -> u128 {
    t.elapsed().as_millis()
}

impl Report {
    /// Certifies the core curves of `o`, weighted by `mult` if given.
    pub fn build(
        request: serde_json::Value,
        o: Origami,
        mult: Option<(Vec<usize>, Vec<usize>)>,
        mut timings_ms: BTreeMap<&'static str, u128>,
    ) -> Result<Report> {
        let t = Instant::now();
        let base = o.curve_system();
        let cs: CurveSystem = match &mult {
            Some((r, c)) => base.with_multiplicities(r, c),
            None => base,
        };
        let xxt = cs.xxt();
        let cp = charpoly(xxt.as_matrix());
        let charpoly_factors = factor_over_integers(&cp);
        let tf = trace_field(&cs)?;
        let pa = is_pseudo_anosov(&cs);
        let certificate = match certify(&cs) {
            Ok(c) => Some(c),
            Err(Error::NotPseudoAnosov) => None,
            Err(e) => return Err(e),
        };
        timings_ms.insert("certify", ms(t));
        let t = Instant::now();
        let component = component_label(&o)?;
        timings_ms.insert("label", ms(t));
        Ok(Report {
            schema: SCHEMA,
            request,
            genus: o.genus()?,
            stratum: o.stratum(),
            n_squares: o.n_squares(),
            origami: o,
            component,
            route: None,
            y_found: None,
            multiplicities: mult,
            x: cs.x.clone(),
            xxt,
            charpoly: cp,
            charpoly_factors,
            trace_field: tf,
            pseudo_anosov: pa,
            certificate,
            timings_ms,
        })
    }

    pub fn from_realization(request: serde_json::Value, r: Realization, search_ms: u128) -> Result<Report> {
        let mut timings = BTreeMap::new();
        timings.insert("search", search_ms);
        let mut rep = Report::build(request, r.origami, r.multiplicities, timings)?;
        if rep.certificate.as_ref() != Some(&r.certificate) {
            return Err(Error::InternalInconsistency("re-certification differs from the search result".into()));
        }
        rep.route = Some(r.route);
        rep.y_found = r.y_found;
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn csv_row(&self, ms_elapsed: u128) -> String {
        let (trace, stretch, crit) = match &self.certificate {
            Some(c) => (c.trace_degree.to_string(), c.stretch_degree.to_string(), c.criterion_applies.to_string()),
            None => (self.trace_field.degree.to_string(), String::new(), "false".into()),
        };
        csv_row(&CsvRow {
            genus: self.genus,
            stratum: &self.stratum,
            component: self.component.label.as_str(),
            d: &trace,
            y_found: self.y_found,
            trace_degree: &trace,
            stretch_degree: &stretch,
            criterion_applied: &crit,
            hyperelliptic: self.component.hyperelliptic,
            spin: self.component.spin,
            n_squares: self.n_squares,
            ms_elapsed,
        })
    }
}

pub struct CsvRow<'a> {
    pub genus: usize,
    pub stratum: &'a Stratum,
    pub component: &'a str,
    pub d: &'a str,
    pub y_found: Option<usize>,
    pub trace_degree: &'a str,
    pub stretch_degree: &'a str,
    pub criterion_applied: &'a str,
    pub hyperelliptic: bool,
    pub spin: Option<u8>,
    pub n_squares: usize,
    pub ms_elapsed: u128,
}

/// Strata contain commas, so that field is quoted.
pub fn csv_row(r: &CsvRow) -> String {
    format!(
        "{},\"{}\",{},{},{},{},{},{},{},{},{},{}",
        r.genus,
        r.stratum,
        r.component,
        r.d,
        r.y_found.map(|y| y.to_string()).unwrap_or_default(),
        r.trace_degree,
        r.stretch_degree,
        r.criterion_applied,
        r.hyperelliptic,
        r.spin.map(|s| s.to_string()).unwrap_or_default(),
        r.n_squares,
        r.ms_elapsed
    )
}
