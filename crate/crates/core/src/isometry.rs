//! Coloured isometries `(s, v)` of `M_λ`: an admissible symmetry of the
//! polytope together with a translation in `Z₂^k`.
//!
//! Products follow `(s,u)·(t,w) = (st, u + Φ(s)w)` and the action on cells is
//! `(f, v) ↦ (s(f), Φ(s)v + u)`. With this convention `(r₁,e₁)(r₂,e₁) = (r₁r₂, 0)`
//! and `(r₂,e₁)² = (id, e₁+e₂)` on the lowest-rank polygon colouring.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::colouring::{Colouring, Family};
use crate::complex::{realize, Cell, CellComplex, FlagMap};
use crate::error::{invalid, Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};
use crate::groups::FiniteGroup;
use crate::polytope::{automorphisms, invariant_faces, Symmetry};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColouredIsometry {
    pub sym: Symmetry,
    pub vec: BitVector,
    /// `Φ_λ(sym)`.
    pub phi: BitMatrix,
}

impl ColouredIsometry {
    pub fn act(&self, cell: &Cell, lambda: &Colouring) -> Cell {
        let face = self.sym.apply_face(&cell.face);
        Cell::new(face, self.phi.apply(cell.coset_rep) + self.vec, lambda)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "perm": self.sym.perm(), "vec": self.vec })
    }
}

/// Admissible symmetries with their linear maps: `Φ(s)λ(F) = λ(s(F))` for every facet.
pub fn admissible_symmetries(lambda: &Colouring) -> Result<Vec<(Symmetry, BitMatrix)>> {
    lambda.require_proper()?;
    let p = lambda.polytope();
    let sources = lambda.colours();
    Ok(automorphisms(p)
        .into_iter()
        .filter_map(|s| {
            let targets: Vec<BitVector> = (0..p.facet_count()).map(|f| lambda.colour(s.apply(f))).collect();
            BitMatrix::from_images(sources, &targets).map(|phi| (s, phi))
        })
        .collect())
}

/// The coloured isometry group `Adm_λ(P) ⋉ Z₂^k`. Element `i` is the pair
/// `(syms[i / 2^k], v)` with `v.bits() == i % 2^k`; element 0 is the identity.
#[derive(Debug)]
pub struct IsometryGroup {
    lambda: Arc<Colouring>,
    syms: Vec<(Symmetry, BitMatrix)>,
    sym_index: HashMap<Symmetry, usize>,
    sym_mul: Vec<u32>,
    complex: OnceLock<CellComplex>,
    signs: OnceLock<Option<Vec<i8>>>,
}

impl IsometryGroup {
    pub fn new(lambda: Arc<Colouring>) -> Result<Self> {
        let syms = admissible_symmetries(&lambda)?;
        debug_assert!(syms[0].0.is_identity());
        let sym_index: HashMap<Symmetry, usize> = syms.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
        let n = syms.len();
        let mut sym_mul = vec![0u32; n * n];
        for (i, (s, _)) in syms.iter().enumerate() {
            for (j, (t, _)) in syms.iter().enumerate() {
                let st = s.compose(t);
                sym_mul[i * n + j] = *sym_index.get(&st).ok_or_else(|| invalid("admissible symmetries are not closed"))? as u32;
            }
        }
        Ok(Self { lambda, syms, sym_index, sym_mul, complex: OnceLock::new(), signs: OnceLock::new() })
    }

    pub fn colouring(&self) -> &Colouring {
        &self.lambda
    }

    fn translations(&self) -> usize {
        1 << self.lambda.rank()
    }

    pub fn order(&self) -> usize {
        self.syms.len() * self.translations()
    }

    pub fn symmetries(&self) -> &[(Symmetry, BitMatrix)] {
        &self.syms
    }

    pub fn sym_of(&self, i: usize) -> usize {
        i / self.translations()
    }

    pub fn element(&self, i: usize) -> ColouredIsometry {
        let (s, phi) = &self.syms[self.sym_of(i)];
        ColouredIsometry {
            sym: s.clone(),
            vec: BitVector::from_bits((i % self.translations()) as u8, self.lambda.rank()),
            phi: *phi,
        }
    }

    pub fn index_of(&self, sym: &Symmetry, vec: BitVector) -> Result<usize> {
        if vec.dim() != self.lambda.rank() {
            return Err(Error::DimensionMismatch { expected: self.lambda.rank(), found: vec.dim() });
        }
        let s = self.sym_index.get(sym).ok_or_else(|| invalid("symmetry is not admissible"))?;
        Ok(s * self.translations() + vec.bits() as usize)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let t = self.translations();
        let (s, u) = (i / t, i % t);
        let (r, w) = (j / t, j % t);
        let phi = &self.syms[s].1;
        let w = phi.apply(BitVector::from_bits(w as u8, self.lambda.rank())).bits() as usize;
        self.sym_mul[s * self.syms.len() + r] as usize * t + (u ^ w)
    }

    pub fn pow(&self, i: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, i))
    }

    pub fn inverse(&self, i: usize) -> usize {
        // (s,u)⁻¹ = (s⁻¹, Φ(s)⁻¹u)
        let t = self.translations();
        let (s, u) = (i / t, i % t);
        let inv_s = self.sym_index[&self.syms[s].0.inverse()];
        let phi_inv = &self.syms[inv_s].1;
        inv_s * t + phi_inv.apply(BitVector::from_bits(u as u8, self.lambda.rank())).bits() as usize
    }

    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.mul(i, j) as u32;
            }
        }
        FiniteGroup::from_table_unchecked(n, table)
    }

    /// The realized complex `M_λ`, built on first use.
    pub fn complex(&self) -> &CellComplex {
        self.complex.get_or_init(|| realize(&self.lambda).expect("colouring was checked proper"))
    }

    pub fn flag_map(&self, i: usize) -> FlagMap {
        flag_map(&self.element(i), self.complex())
    }

    /// `±1` per element; `NotOrientable` when `M_λ` is not orientable.
    pub fn orientation_signs(&self) -> Result<&[i8]> {
        self.signs
            .get_or_init(|| {
                let c = self.complex();
                let parity = c.flag_parity()?;
                Some((0..self.order()).map(|i| orientation_sign_with(&self.element(i), c, &parity)).collect())
            })
            .as_deref()
            .ok_or(Error::NotOrientable)
    }

    pub fn has_fixed_point(&self, i: usize) -> bool {
        has_fixed_point(&self.element(i), &self.lambda)
    }

    pub fn is_central(&self, i: usize) -> bool {
        (0..self.order()).all(|j| self.mul(i, j) == self.mul(j, i))
    }

    /// Hash of the product table, for regression comparisons.
    pub fn table_hash(&self) -> u64 {
        // FNV-1a over the full table, stable across platforms
        let mut h: u64 = 0xcbf29ce484222325;
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                for b in (self.mul(i, j) as u32).to_le_bytes() {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x100000001b3);
                }
            }
        }
        h
    }

    /// All qualifying `φ`: `φ² ∈ ⟨z⟩`, `φ ∉ ⟨z⟩`, with the requested orientation
    /// sign and every non-identity element of `⟨φ, z⟩` fixed-point-free. These
    /// descend to fixed-point-free involutions of `M_λ / ⟨z⟩`.
    pub fn search_involutions(&self, want_orientation: i8, modulo: Option<usize>) -> Result<Vec<usize>> {
        if want_orientation != 1 && want_orientation != -1 {
            return Err(invalid("orientation must be +1 or -1"));
        }
        if let Some(z) = modulo {
            if z == 0 || z >= self.order() || self.mul(z, z) != 0 {
                return Err(invalid("the central element must have order 2"));
            }
            if !self.is_central(z) {
                return Err(invalid("the element is not central"));
            }
            if self.has_fixed_point(z) {
                return Err(invalid("the central element has fixed points"));
            }
        }
        let signs = self.orientation_signs()?;
        let z = modulo.unwrap_or(0);
        Ok((1..self.order())
            .filter(|&phi| {
                if phi == z || signs[phi] != want_orientation {
                    return false;
                }
                let sq = self.mul(phi, phi);
                if sq != 0 && sq != z {
                    return false;
                }
                !self.has_fixed_point(phi) && (z == 0 || !self.has_fixed_point(self.mul(phi, z)))
            })
            .collect())
    }
}

/// The action of an isometry on the flags of `realize(λ)`.
pub fn flag_map(iso: &ColouredIsometry, c: &CellComplex) -> FlagMap {
    let labels = c.labels().expect("complex built by realize");
    let l = labels.local_flags.len();
    let copies = c.flag_count() / l;
    let local: Vec<u32> = labels
        .local_flags
        .iter()
        .map(|flag| {
            let image: Vec<usize> = flag.iter().map(|&f| iso.sym.apply(f)).collect();
            labels.local_flag_index(&image).expect("symmetry preserves flags") as u32
        })
        .collect();
    let rank = labels.rank;
    let mut out = Vec::with_capacity(c.flag_count());
    for v in 0..copies {
        let w = (iso.phi.apply(BitVector::from_bits(v as u8, rank)) + iso.vec).bits() as usize;
        for &li in &local {
            out.push((w * l) as u32 + li);
        }
    }
    FlagMap(out)
}

fn orientation_sign_with(iso: &ColouredIsometry, c: &CellComplex, parity: &[bool]) -> i8 {
    let img = flag_map_single(iso, c, 0);
    if parity[0] == parity[img] {
        1
    } else {
        -1
    }
}

fn flag_map_single(iso: &ColouredIsometry, c: &CellComplex, flag: usize) -> usize {
    let labels = c.labels().expect("complex built by realize");
    let l = labels.local_flags.len();
    let (v, li) = (flag / l, flag % l);
    let image: Vec<usize> = labels.local_flags[li].iter().map(|&f| iso.sym.apply(f)).collect();
    let w = (iso.phi.apply(BitVector::from_bits(v as u8, labels.rank)) + iso.vec).bits() as usize;
    w * l + labels.local_flag_index(&image).expect("symmetry preserves flags")
}

/// `+1` if the isometry preserves the orientation of `c = realize(λ)`.
pub fn orientation_sign(iso: &ColouredIsometry, c: &CellComplex) -> Result<i8> {
    let parity = c.flag_parity().ok_or(Error::NotOrientable)?;
    Ok(orientation_sign_with(iso, c, &parity))
}

/// Exact fixed-point test: some face `S` with `s(S) = S` and
/// `vec ∈ G_S + Im(Φ(s) + I)`.
pub fn has_fixed_point(iso: &ColouredIsometry, lambda: &Colouring) -> bool {
    let moved = Subspace::image_plus_identity(&iso.phi).expect("Φ is square");
    invariant_faces(lambda.polytope(), &iso.sym).iter().any(|face| {
        let g = lambda.isotropy(face.facets());
        g.sum(&moved).expect("same ambient space").contains(iso.vec)
    })
}

/// Brute force: does the isometry map some cell of `M_λ` to itself?
pub fn has_invariant_cell(iso: &ColouredIsometry, lambda: &Colouring, c: &CellComplex) -> bool {
    let labels = c.labels().expect("complex built by realize");
    labels.cells.iter().flatten().any(|cell| iso.act(cell, lambda) == *cell)
}

/// Orientation-compatible serialization of a group: element list and table hash.
#[derive(Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub symmetries: usize,
    pub table_hash: String,
}

impl From<&IsometryGroup> for GroupSummary {
    fn from(g: &IsometryGroup) -> Self {
        GroupSummary { order: g.order(), symmetries: g.syms.len(), table_hash: format!("{:016x}", g.table_hash()) }
    }
}

/// The reflections of a polygon with `m` sides (facet `i` is side `i+1`):
/// `r₁` fixes side 1, `r₂` fixes the vertex shared by sides 1 and 2.
pub fn polygon_reflections(m: usize) -> (Symmetry, Symmetry) {
    let r1 = Symmetry::from_perm((0..m).map(|i| (m - i) % m).collect()).expect("permutation");
    let r2 = Symmetry::from_perm((0..m).map(|i| (m + 1 - i) % m).collect()).expect("permutation");
    (r1, r2)
}

/// The central involution a family surface is divided by to reach genus `g`:
/// `c_g = ((r₁r₂)^{2g}, e₁+e₂)` for Wiman and `d_g = ((r₁r₂)^{g+1}, e₁+e₃)`
/// for Kulkarni. The group must be the one of `family_colouring(family, g)`.
pub fn family_central_involution(group: &IsometryGroup, family: Family, g: usize) -> Result<usize> {
    let k = group.colouring().rank();
    let (r1, r2) = polygon_reflections(family.polygon_sides(g));
    let rot = r1.compose(&r2);
    match family {
        Family::Wiman => group.index_of(&rot.pow(2 * g), BitVector::unit(1, k) + BitVector::unit(2, k)),
        Family::Kulkarni => group.index_of(&rot.pow(g + 1), BitVector::unit(1, k) + BitVector::unit(3, k)),
        _ => Err(invalid(format!("family {family} has no distinguished central involution"))),
    }
}
