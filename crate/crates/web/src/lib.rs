//! WebAssembly bindings behind the static page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string, so
//! the page needs nothing beyond `JSON.parse`. The `*_json` functions are the
//! native entry points the exports wrap.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use geobound_core::colouring::{family_colouring, Family};
use geobound_core::complex::{quotient, CellComplex};
use geobound_core::isometry::{family_central_involution, IsometryGroup};
use geobound_core::pairings::{glue, theorem_e_table};

/// Genera beyond this make the page sluggish without showing anything new.
pub const MAX_DEMO_GENUS: usize = 40;

fn surface_family(name: &str, genus: usize) -> Result<Family, String> {
    let family: Family = name.parse().map_err(|e: geobound_core::Error| e.to_string())?;
    if family.is_loebell() {
        return Err(format!("{family} colours a polyhedron; pick am, wiman or kulkarni"));
    }
    if genus > MAX_DEMO_GENUS {
        return Err(format!("the demo stops at genus {MAX_DEMO_GENUS}"));
    }
    family.check_genus(genus).map_err(|e| e.to_string())?;
    Ok(family)
}

fn group_of(family: Family, genus: usize) -> Result<IsometryGroup, String> {
    let lambda = family_colouring(family, genus).map_err(|e| e.to_string())?;
    IsometryGroup::new(Arc::new(lambda)).map_err(|e| e.to_string())
}

fn summary(c: &CellComplex) -> Value {
    json!({ "cells": c.cell_counts(), "analysis": c.analyze() })
}

/// The coloured polygon, its surface and, for Wiman and Kulkarni, the
/// genus-`g` quotient by the central involution.
pub fn polygon_surface_json(family: &str, genus: usize) -> Result<String, String> {
    let family = surface_family(family, genus)?;
    let group = group_of(family, genus)?;
    let lambda = group.colouring();
    let surface = group.complex();
    let quotient_surface = match family {
        Family::Am => None,
        _ => {
            let c = family_central_involution(&group, family, genus).map_err(|e| e.to_string())?;
            let q = quotient(surface, &[group.flag_map(c)]).map_err(|e| e.to_string())?;
            Some(json!({ "element": group.element(c).to_json(), "surface": summary(&q) }))
        }
    };
    let out = json!({
        "family": family.as_str(),
        "genus": genus,
        "sides": lambda.polytope().facet_count(),
        "rank": lambda.rank(),
        "colours": lambda.colours(),
        "orientation_functional": lambda.orientation_functional(),
        "surface": summary(surface),
        "group_order": group.order(),
        "quotient": quotient_surface,
    });
    Ok(out.to_string())
}

/// The side-pairing table of the family and the surface it glues to.
pub fn pairing_table_json(family: &str, genus: usize) -> Result<String, String> {
    let family = surface_family(family, genus)?;
    let table = theorem_e_table(family, genus).map_err(|e| e.to_string())?;
    let glued = glue(&table).map_err(|e| e.to_string())?;
    Ok(json!({ "table": table, "surface": summary(&glued) }).to_string())
}

/// Fixed-point-free involutions with the given orientation behaviour
/// (`"rev"` or `"pres"`), optionally modulo the family's central involution.
pub fn involutions_json(family: &str, genus: usize, orientation: &str, modulo_central: bool) -> Result<String, String> {
    let family = surface_family(family, genus)?;
    let want = match orientation {
        "rev" => -1,
        "pres" => 1,
        other => return Err(format!("orientation must be rev or pres, not {other}")),
    };
    let group = group_of(family, genus)?;
    let central = if modulo_central {
        Some(family_central_involution(&group, family, genus).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let found = group.search_involutions(want, central).map_err(|e| e.to_string())?;
    let elements: Vec<Value> = found.iter().map(|&i| group.element(i).to_json()).collect();
    Ok(json!({
        "modulo": central.map(|c| group.element(c).to_json()),
        "group_order": group.order(),
        "involutions": elements,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = polygonSurface)]
pub fn polygon_surface(family: &str, genus: u32) -> Result<String, JsError> {
    js(polygon_surface_json(family, genus as usize))
}

#[wasm_bindgen(js_name = pairingTable)]
pub fn pairing_table(family: &str, genus: u32) -> Result<String, JsError> {
    js(pairing_table_json(family, genus as usize))
}

#[wasm_bindgen(js_name = searchInvolutions)]
pub fn search_involutions(family: &str, genus: u32, orientation: &str, modulo_central: bool) -> Result<String, JsError> {
    js(involutions_json(family, genus as usize, orientation, modulo_central))
}
