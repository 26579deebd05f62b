//! Explicit families of square-tiled surfaces.
//!
//! Every family sits behind the [`Family`] trait and is looked up by name in
//! a [`Registry`]. Builders lay out the long horizontal row first, then the
//! inserted pieces in insertion order, so that the horizontal curves (ordered
//! by smallest square label) come out in the order of the displayed matrices.

mod generic;
mod hyp;
mod spin0;

pub use generic::{block_charpoly, block_matrix, build_generic, generic_matrix, GenericParams, Layout};
pub use hyp::{
    build_hyp, build_hyp_staircase_long, hyp_b_matrix, hyp_jacobi_matrix, staircase_b_matrix, staircase_long_matrix,
    StaircaseParams,
};
pub use spin0::{
    build_spin0_min, build_spin0_min_deg2, build_spin0_multi, deg2_default_heights, deg2_matrix, spin0_min_matrix,
    spin0_multi_matrix, Spin0MinParams, Spin0MultiParams,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::origami::{Origami, Stratum};

/// Mutable surface under construction.
pub(crate) struct Canvas {
    h: Vec<usize>,
    v: Vec<usize>,
}

impl Canvas {
    /// A single horizontal cylinder of `len` squares, glued to itself vertically.
    pub fn row(len: usize) -> Self {
        Canvas { h: (0..len).map(|i| (i + 1) % len).collect(), v: (0..len).collect() }
    }

    pub fn square(&mut self) -> usize {
        let s = self.h.len();
        self.h.push(s);
        self.v.push(s);
        s
    }

    pub fn squares(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.square()).collect()
    }

    /// Vertical strip of `height` squares inserted above square `col`.
    pub fn strip(&mut self, col: usize, height: usize) {
        let sq = self.squares(height);
        let top = self.v[col];
        self.v[col] = sq[0];
        for w in sq.windows(2) {
            self.v[w[0]] = w[1];
        }
        self.v[sq[height - 1]] = top;
    }

    /// L-shape: a horizontal cylinder of `width` squares whose first square
    /// sits above square `col`.
    pub fn lshape(&mut self, col: usize, width: usize) {
        let sq = self.squares(width);
        for i in 0..width {
            self.h[sq[i]] = sq[(i + 1) % width];
        }
        let top = self.v[col];
        self.v[col] = sq[0];
        self.v[sq[0]] = top;
    }

    pub fn set_h(&mut self, a: usize, b: usize) {
        self.h[a] = b;
    }

    pub fn set_v(&mut self, a: usize, b: usize) {
        self.v[a] = b;
    }

    pub fn v(&self, a: usize) -> usize {
        self.v[a]
    }

    pub fn finish(self) -> Result<Origami> {
        Origami::new(self.h, self.v)
    }
}

/// Checks the stratum a builder promised.
pub(crate) fn expect_stratum(o: &Origami, want: &Stratum, what: &str) -> Result<()> {
    let got = o.stratum();
    if &got != want {
        return Err(Error::InternalInconsistency(format!("{what}: built stratum {got}, expected {want}")));
    }
    o.genus()?;
    Ok(())
}

/// String parameters as given on the command line (`key=value`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn parse<'a, I: IntoIterator<Item = &'a str>>(items: I) -> Result<Self> {
        let mut m = BTreeMap::new();
        for it in items {
            let (k, v) = it
                .split_once('=')
                .ok_or_else(|| Error::InvalidParam(format!("expected key=value, got '{it}'")))?;
            m.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(m))
    }

    pub fn with(mut self, k: &str, v: impl ToString) -> Self {
        self.0.insert(k.to_string(), v.to_string());
        self
    }

    pub fn raw(&self, k: &str) -> Option<&str> {
        self.0.get(k).map(|s| s.as_str())
    }

    pub fn usize(&self, k: &str) -> Result<usize> {
        let s = self.raw(k).ok_or_else(|| Error::InvalidParam(format!("missing parameter '{k}'")))?;
        s.parse().map_err(|_| Error::InvalidParam(format!("'{k}' must be a nonnegative integer, got '{s}'")))
    }

    pub fn usize_or(&self, k: &str, default: usize) -> Result<usize> {
        match self.raw(k) {
            Some(_) => self.usize(k),
            None => Ok(default),
        }
    }

    pub fn list(&self, k: &str) -> Result<Vec<usize>> {
        let s = self.raw(k).ok_or_else(|| Error::InvalidParam(format!("missing parameter '{k}'")))?;
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::InvalidParam(format!("'{k}' must be a comma separated list, got '{s}'")))
            })
            .collect()
    }

    pub fn list_opt(&self, k: &str) -> Result<Option<Vec<usize>>> {
        match self.raw(k) {
            Some(_) => self.list(k).map(Some),
            None => Ok(None),
        }
    }

    pub fn stratum(&self, k: &str) -> Result<Stratum> {
        let s = self.raw(k).ok_or_else(|| Error::InvalidParam(format!("missing parameter '{k}'")))?;
        s.parse()
    }

    pub fn bool_or(&self, k: &str, default: bool) -> Result<bool> {
        match self.raw(k) {
            None => Ok(default),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(s) => Err(Error::InvalidParam(format!("'{k}' must be a boolean, got '{s}'"))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &String)> {
        self.0.iter()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", v.join(" "))
    }
}

/// A named family of surfaces.
pub trait Family: Send + Sync {
    fn name(&self) -> &'static str;

    /// One-line description including the accepted parameters.
    fn usage(&self) -> &'static str;

    fn build(&self, p: &Params) -> Result<Origami>;
}

/// Families by name.
pub struct Registry {
    families: BTreeMap<&'static str, Box<dyn Family>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { families: BTreeMap::new() }
    }

    /// All built-in families.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(generic::GenericFamily));
        r.register(Box::new(spin0::Spin0MultiFamily));
        r.register(Box::new(spin0::Spin0MinDeg2Family));
        r.register(Box::new(spin0::Spin0MinFamily));
        r.register(Box::new(hyp::HypFamily { collapse_a0: false }));
        r.register(Box::new(hyp::HypFamily { collapse_a0: true }));
        r.register(Box::new(hyp::StaircaseLongFamily));
        r
    }

    pub fn register(&mut self, f: Box<dyn Family>) {
        self.families.insert(f.name(), f);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Family> {
        self.families
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    pub fn build(&self, name: &str, p: &Params) -> Result<Origami> {
        self.get(name)?.build(p)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}
