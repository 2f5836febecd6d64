//! Command implementations behind the `geobound` binary.

pub mod report;
pub mod suite;

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use geobound_core::colouring::{family_colouring, Colouring, ColouringJson, Family};
use geobound_core::complex::realize;
use geobound_core::isometry::{family_central_involution, IsometryGroup};
use geobound_core::polytope::{build_loebell, build_polygon, Polytope};

/// Largest genus any command accepts.
pub const GENUS_CAP: usize = 100;

/// A problem with the command line or its inputs; the binary exits with 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// Parses `A..B` (inclusive) or a single genus.
pub fn parse_genus_range(s: &str) -> Result<(usize, usize), InputError> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| input(format!("bad genus `{t}`")));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let g = num(s)?;
            (g, g)
        }
    };
    if a > b {
        return Err(input(format!("empty genus range {s}")));
    }
    if b > GENUS_CAP {
        return Err(input(format!("genus {b} exceeds the cap of {GENUS_CAP}")));
    }
    Ok((a, b))
}

/// The genera in the range the family's suite can run, in increasing order.
pub fn suite_genera(family: Family, range: (usize, usize)) -> Result<Vec<usize>, InputError> {
    if family.is_loebell() {
        return Err(input(format!("no verification suite for family {family}")));
    }
    let gs: Vec<usize> = (range.0..=range.1).filter(|&g| suite::genus_is_valid(family, g)).collect();
    if gs.is_empty() {
        return Err(input(format!("no valid genus for {family} in {}..{}", range.0, range.1)));
    }
    Ok(gs)
}

/// `polygon:M` or `loebell:M`.
pub fn parse_polytope(s: &str) -> Result<Polytope, InputError> {
    let (kind, m) = s.split_once(':').ok_or_else(|| input(format!("expected polygon:M or loebell:M, got `{s}`")))?;
    let m: usize = m.parse().map_err(|_| input(format!("bad size `{m}`")))?;
    if m > 4 * GENUS_CAP {
        return Err(input(format!("polytope size {m} is too large")));
    }
    let built = match kind {
        "polygon" => build_polygon(m),
        "loebell" => build_loebell(m),
        _ => return Err(input(format!("unknown polytope kind `{kind}`"))),
    };
    built.map_err(|e| input(e.to_string()))
}

/// `FAMILY:G`, or a path to a colouring JSON file for `polytope`.
pub fn parse_colouring(s: &str, polytope: Polytope) -> Result<Colouring, InputError> {
    if let Some((fam, g)) = s.split_once(':') {
        if let Ok(family) = fam.parse::<Family>() {
            let g: usize = g.parse().map_err(|_| input(format!("bad genus `{g}`")))?;
            if g > GENUS_CAP {
                return Err(input(format!("genus {g} exceeds the cap of {GENUS_CAP}")));
            }
            let c = family_colouring(family, g).map_err(|e| input(e.to_string()))?;
            if *c.polytope() != polytope {
                return Err(input(format!(
                    "colouring {s} lives on a polytope with {} facets, not the one given ({} facets)",
                    c.polytope().facet_count(),
                    polytope.facet_count()
                )));
            }
            return Ok(c);
        }
    }
    let text = fs::read_to_string(s).map_err(|e| input(format!("cannot read {s}: {e}")))?;
    let json: ColouringJson = serde_json::from_str(&text).map_err(|e| input(format!("{s}: {e}")))?;
    Colouring::from_json(Arc::new(polytope), &json).map_err(|e| input(format!("{s}: {e}")))
}

/// Realizes the colouring, writes `polytope.json`, `colouring.json` and
/// `complex.json` into `out`, and returns the analysis summary.
pub fn build(polytope: &str, colouring: &str, out: &Path) -> Result<Value, Box<dyn std::error::Error>> {
    let p = parse_polytope(polytope)?;
    let lambda = parse_colouring(colouring, p)?;
    lambda.require_proper().map_err(|e| input(e.to_string()))?;
    let c = realize(&lambda)?;
    fs::create_dir_all(out)?;
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("json values serialize") + "\n";
    fs::write(out.join("polytope.json"), pretty(&serde_json::to_value(lambda.polytope().to_json())?))?;
    fs::write(out.join("colouring.json"), pretty(&serde_json::to_value(lambda.to_json())?))?;
    fs::write(out.join("complex.json"), pretty(&c.to_json(Some(lambda.polytope()))))?;
    Ok(json!({ "cells": c.cell_counts(), "analysis": c.analyze() }))
}

/// Which subgroup an involution search works modulo.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Modulo {
    None,
    /// `c_g` for the Wiman family.
    C,
    /// `d_g` for the Kulkarni family.
    D,
}

/// Fixed-point-free involutions of the requested orientation behaviour, one
/// JSON object each, in element order.
pub fn search(family: Family, g: usize, orientation: i8, modulo: Modulo) -> Result<Vec<Value>, Box<dyn std::error::Error>> {
    if family.is_loebell() {
        return Err(input(format!("search runs on surface families, not {family}")).into());
    }
    if g > GENUS_CAP {
        return Err(input(format!("genus {g} exceeds the cap of {GENUS_CAP}")).into());
    }
    let lambda = Arc::new(family_colouring(family, g).map_err(|e| input(e.to_string()))?);
    let group = IsometryGroup::new(lambda)?;
    let central = match (modulo, family) {
        (Modulo::None, _) => None,
        (Modulo::C, Family::Wiman) | (Modulo::D, Family::Kulkarni) => Some(family_central_involution(&group, family, g)?),
        (Modulo::C, _) => return Err(input("modulo c needs the wiman family").into()),
        (Modulo::D, _) => return Err(input("modulo d needs the kulkarni family").into()),
    };
    let found = group.search_involutions(orientation, central)?;
    Ok(found
        .into_iter()
        .map(|i| {
            let mut w = group.element(i).to_json();
            w["index"] = json!(i);
            w
        })
        .collect())
}
