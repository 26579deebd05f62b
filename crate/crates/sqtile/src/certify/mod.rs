//! Invariants of square-tiled surfaces and degree certificates for the
//! Thurston-Veech twist products they carry.

mod degree;
mod hyperelliptic;
mod search;
mod spin;

pub use degree::{
    certify, criterion_holds, is_pseudo_anosov, nonsplitting_criterion, omega_plus_two_inertia, stretch_degree_direct,
    stretch_factor, trace_field, trace_field_degree, trace_transform, DegreeCertificate, StretchFactor, TraceField,
};
pub use hyperelliptic::{in_hyperelliptic_component, involutions, is_hyperelliptic, Involution};
pub use search::{hilbert_search, Candidate, Found};
pub use spin::{arf_of_curves, arf_of_dual_cycles, spin_parity, spin_parity_of_curves, ArfData};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{Origami, Stratum};

/// Connected component names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Hyp,
    Even,
    Odd,
    NonHyp,
    Unique,
}

impl ComponentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentKind::Hyp => "hyp",
            ComponentKind::Even => "even",
            ComponentKind::Odd => "odd",
            ComponentKind::NonHyp => "nonhyp",
            ComponentKind::Unique => "unique",
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ComponentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "hyp" => ComponentKind::Hyp,
            "even" => ComponentKind::Even,
            "odd" => ComponentKind::Odd,
            "nonhyp" | "non-hyp" => ComponentKind::NonHyp,
            "unique" => ComponentKind::Unique,
            _ => return Err(Error::InvalidParam(format!("unknown component '{s}'"))),
        })
    }
}

/// Connected components of a stratum, after Kontsevich and Zorich.
pub fn components(s: &Stratum) -> Vec<ComponentKind> {
    use ComponentKind::*;
    let Some(g) = s.genus() else { return Vec::new() };
    if g == 2 {
        return vec![Hyp];
    }
    if s.is_minimal() {
        return if g == 3 { vec![Hyp, Odd] } else { vec![Hyp, Even, Odd] };
    }
    if s.is_symmetric_pair() {
        return match g {
            3 => vec![Hyp, Odd],
            _ if g % 2 == 1 => vec![Hyp, Even, Odd],
            _ => vec![Hyp, NonHyp],
        };
    }
    if s.all_even() && g >= 4 {
        return vec![Even, Odd];
    }
    vec![Unique]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub hyperelliptic: bool,
    /// `None` when some zero has odd order.
    pub spin: Option<u8>,
    pub label: ComponentKind,
    /// Genus at most 3, where the classification has exceptional strata.
    pub low_genus_caveat: bool,
}

pub fn component_label(o: &Origami) -> Result<ComponentLabel> {
    let s = o.stratum();
    let g = o.genus()?;
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let comps = components(&s);
    let hyp = if comps.contains(&ComponentKind::Hyp) { in_hyperelliptic_component(o)? } else { false };
    let spin = if s.all_even() { Some(spin_parity(o)?) } else { None };
    let label = if hyp {
        ComponentKind::Hyp
    } else if comps == [ComponentKind::Unique] {
        ComponentKind::Unique
    } else if comps.contains(&ComponentKind::NonHyp) {
        ComponentKind::NonHyp
    } else {
        match spin {
            Some(0) => ComponentKind::Even,
            Some(_) => ComponentKind::Odd,
            None => ComponentKind::Unique,
        }
    };
    if !comps.contains(&label) {
        return Err(Error::InternalInconsistency(format!(
            "invariants (hyperelliptic = {hyp}, spin = {spin:?}) give {label}, which {s} does not have"
        )));
    }
    Ok(ComponentLabel { hyperelliptic: hyp, spin, label, low_genus_caveat: g <= 3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComponentKind::*;

    fn st(v: &[usize]) -> Stratum {
        Stratum::new(v.to_vec())
    }

    #[test]
    fn classification_table() {
        assert_eq!(components(&st(&[2])), vec![Hyp]);
        assert_eq!(components(&st(&[1, 1])), vec![Hyp]);
        assert_eq!(components(&st(&[4])), vec![Hyp, Odd]);
        assert_eq!(components(&st(&[2, 2])), vec![Hyp, Odd]);
        assert_eq!(components(&st(&[3, 1])), vec![Unique]);
        assert_eq!(components(&st(&[6])), vec![Hyp, Even, Odd]);
        assert_eq!(components(&st(&[3, 3])), vec![Hyp, NonHyp]);
        assert_eq!(components(&st(&[4, 4])), vec![Hyp, Even, Odd]);
        assert_eq!(components(&st(&[4, 2])), vec![Even, Odd]);
        assert_eq!(components(&st(&[2, 2, 2])), vec![Even, Odd]);
        assert_eq!(components(&st(&[2, 2, 1, 1])), vec![Unique]);
    }

    #[test]
    fn names_round_trip() {
        for k in [Hyp, Even, Odd, NonHyp, Unique] {
            assert_eq!(k.as_str().parse::<ComponentKind>().unwrap(), k);
        }
    }
}
