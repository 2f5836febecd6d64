//! Colourings `λ: facets → Z₂^k` and the named families built on polygons and
//! Löbell polyhedra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf2::{self, solve_unit_functional, BitMatrix, BitVector, Subspace};
use crate::polytope::{
    automorphisms, build_loebell, build_polygon, cycle, loebell_bottom_ring, loebell_top_ring, FacetId,
    Polytope, Symmetry, LOEBELL_BOTTOM, LOEBELL_TOP,
};

/// Largest supported colouring rank.
pub const MAX_RANK: usize = 4;

/// The colouring families built by [`family_colouring`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    /// Alternating `e₁, e₂` on the `(2g+2)`-gon.
    Am,
    /// Alternating `e₁, e₂` on the `4g`-gon.
    Wiman,
    /// Cyclic `e₁, e₂, e₃, e₁+e₂+e₃` on the `(2g+2)`-gon, `g ≡ 3 (mod 4)`.
    Kulkarni,
    LoebellAm,
    LoebellWiman,
    LoebellKulkarni,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Am,
        Family::Wiman,
        Family::Kulkarni,
        Family::LoebellAm,
        Family::LoebellWiman,
        Family::LoebellKulkarni,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Am => "am",
            Family::Wiman => "wiman",
            Family::Kulkarni => "kulkarni",
            Family::LoebellAm => "loebell-am",
            Family::LoebellWiman => "loebell-wiman",
            Family::LoebellKulkarni => "loebell-kulkarni",
        }
    }

    /// Number of sides of the polygon (or of the two large faces) for genus `g`.
    pub fn polygon_sides(&self, g: usize) -> usize {
        match self {
            Family::Wiman | Family::LoebellWiman => 4 * g,
            _ => 2 * g + 2,
        }
    }

    pub fn is_loebell(&self) -> bool {
        matches!(self, Family::LoebellAm | Family::LoebellWiman | Family::LoebellKulkarni)
    }

    pub fn check_genus(&self, g: usize) -> Result<()> {
        if g < 2 {
            return Err(invalid(format!("genus must be at least 2, got {g}")));
        }
        if matches!(self, Family::Kulkarni | Family::LoebellKulkarni) && g % 4 != 3 {
            return Err(invalid(format!("the {} family needs g ≡ 3 (mod 4), got {g}", self.as_str())));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown family {s:?}")))
    }
}

/// A surjective colouring of a polytope's facets by `Z₂^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    polytope: Arc<Polytope>,
    rank: usize,
    colours: Vec<BitVector>,
}

/// JSON shape of a colouring: colours keyed by facet name.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColouringJson {
    pub rank: usize,
    pub colours: BTreeMap<String, BitVector>,
}

impl Colouring {
    pub fn new(polytope: Arc<Polytope>, rank: usize, colours: Vec<BitVector>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(invalid(format!("colouring rank must lie in 1..={MAX_RANK}, got {rank}")));
        }
        if colours.len() != polytope.facet_count() {
            return Err(Error::DimensionMismatch { expected: polytope.facet_count(), found: colours.len() });
        }
        if let Some(c) = colours.iter().find(|c| c.dim() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: c.dim() });
        }
        if gf2::rank(&colours) != rank {
            return Err(invalid("colours do not span the colour space"));
        }
        Ok(Self { polytope, rank, colours })
    }

    pub fn from_json(polytope: Arc<Polytope>, json: &ColouringJson) -> Result<Self> {
        let mut colours = Vec::with_capacity(polytope.facet_count());
        for name in polytope.names() {
            let c = json.colours.get(name).ok_or_else(|| invalid(format!("facet {name} has no colour")))?;
            colours.push(*c);
        }
        if json.colours.len() != polytope.facet_count() {
            return Err(invalid("colouring names facets the polytope does not have"));
        }
        Self::new(polytope, json.rank, colours)
    }

    pub fn to_json(&self) -> ColouringJson {
        ColouringJson {
            rank: self.rank,
            colours: self
                .colours
                .iter()
                .enumerate()
                .map(|(f, c)| (self.polytope.name(f).to_string(), *c))
                .collect(),
        }
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn polytope_arc(&self) -> &Arc<Polytope> {
        &self.polytope
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colour(&self, f: FacetId) -> BitVector {
        self.colours[f]
    }

    pub fn colours(&self) -> &[BitVector] {
        &self.colours
    }

    /// The isotropy subspace `G_f` spanned by the colours of the given facets.
    pub fn isotropy(&self, facets: &[FacetId]) -> Subspace {
        let mut s = Subspace::zero(self.rank);
        for &f in facets {
            s.insert(self.colours[f]);
        }
        s
    }

    /// First vertex whose colours are dependent, if any.
    pub fn improper_vertex(&self) -> Option<usize> {
        self.polytope.vertices().iter().position(|v| self.isotropy(v).dim() != v.len())
    }

    pub fn is_proper(&self) -> bool {
        self.improper_vertex().is_none()
    }

    pub fn require_proper(&self) -> Result<()> {
        match self.improper_vertex() {
            Some(vertex) => Err(Error::Improper { vertex }),
            None => Ok(()),
        }
    }

    /// A functional equal to 1 on every colour; its existence means the
    /// manifold is orientable.
    pub fn orientation_functional(&self) -> Option<BitVector> {
        solve_unit_functional(&self.colours).expect("colours share a dimension")
    }

    pub fn is_orientable_colouring(&self) -> Result<bool> {
        self.require_proper()?;
        Ok(self.orientation_functional().is_some())
    }

    /// `F ↦ p(λ(F))`. Properness is not preserved in general.
    pub fn pushforward(&self, p: &BitMatrix, target_rank: usize) -> Result<Colouring> {
        if p.ncols() != self.rank || p.nrows() != target_rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: p.ncols() });
        }
        if p.rank() != target_rank {
            return Err(invalid("projection is not surjective"));
        }
        let colours = self.colours.iter().map(|c| p.apply(*c)).collect();
        Colouring::new(self.polytope.clone(), target_rank, colours)
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colours.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", self.polytope.name(i), c)?;
        }
        Ok(())
    }
}

fn e(i: usize, k: usize) -> BitVector {
    BitVector::unit(i, k)
}

fn cyclic4(k: usize) -> [BitVector; 4] {
    [e(1, k), e(2, k), e(3, k), e(1, k) + e(2, k) + e(3, k)]
}

/// Builds the named colouring for genus `g`.
pub fn family_colouring(family: Family, g: usize) -> Result<Colouring> {
    family.check_genus(g)?;
    let m = family.polygon_sides(g);
    match family {
        Family::Am | Family::Wiman => {
            let p = Arc::new(build_polygon(m)?);
            let colours = (0..m).map(|i| if i % 2 == 0 { e(1, 2) } else { e(2, 2) }).collect();
            Colouring::new(p, 2, colours)
        }
        Family::Kulkarni => {
            let p = Arc::new(build_polygon(m)?);
            let seq = cyclic4(3);
            Colouring::new(p, 3, (0..m).map(|i| seq[i % 4]).collect())
        }
        Family::LoebellAm | Family::LoebellWiman => {
            let p = build_loebell(m)?;
            let mut colours = vec![BitVector::zero(3); p.facet_count()];
            colours[LOEBELL_TOP] = e(1, 3);
            colours[LOEBELL_BOTTOM] = e(3, 3);
            for i in 1..=m {
                colours[loebell_top_ring(m, i)] = if i % 2 == 1 { e(2, 3) } else { e(3, 3) };
                colours[loebell_bottom_ring(m, i)] =
                    if i % 2 == 1 { e(1, 3) } else { e(1, 3) + e(2, 3) + e(3, 3) };
            }
            finish(Colouring::new(Arc::new(p), 3, colours)?)
        }
        Family::LoebellKulkarni => {
            let p = build_loebell(m)?;
            let seq = cyclic4(4);
            let mut colours = vec![BitVector::zero(4); p.facet_count()];
            colours[LOEBELL_TOP] = e(4, 4);
            colours[LOEBELL_BOTTOM] = e(4, 4);
            for i in 1..=m {
                colours[loebell_top_ring(m, i)] = seq[(i - 1) % 4];
                // the bottom ring repeats the cycle two faces further on
                colours[loebell_bottom_ring(m, i)] = seq[(i + 1) % 4];
            }
            finish(Colouring::new(Arc::new(p), 4, colours)?)
        }
    }
}

fn finish(c: Colouring) -> Result<Colouring> {
    c.require_proper()?;
    Ok(c)
}

/// The colouring `λ` induces on the polygon `F₀`.
///
/// The polygon's edges are the facets adjacent to `F₀`, relabelled `1..m`
/// along the cycle starting from the lowest-indexed neighbour and heading to
/// its lower-indexed cycle neighbour. Colours are rewritten in a basis of
/// `W = span{λ(F) : F adjacent to F₀}` picked greedily in that cyclic order.
#[derive(Clone, Debug)]
pub struct InducedColouring {
    pub colouring: Colouring,
    /// `edges[i]` is the facet of the ambient polytope that cuts edge `i + 1`.
    pub edges: Vec<FacetId>,
    /// The chosen basis of `W`, in ambient coordinates.
    pub basis: Vec<BitVector>,
}

pub fn induced_colouring(lambda: &Colouring, f0: FacetId) -> Result<InducedColouring> {
    let p = lambda.polytope();
    if p.dim() != 3 {
        return Err(invalid("induced colourings need a 3-dimensional polytope"));
    }
    if f0 >= p.facet_count() {
        return Err(invalid(format!("facet {f0} out of range")));
    }
    lambda.require_proper()?;
    let ring = p.neighbours(f0).to_vec();
    let cyc_neighbours = |f: FacetId| -> Vec<FacetId> {
        ring.iter().copied().filter(|&g| g != f && p.is_face(&[f0, f, g])).collect()
    };
    let start = ring[0];
    let mut edges = vec![start];
    let mut prev = start;
    let mut cur = *cyc_neighbours(start).iter().min().ok_or_else(|| invalid("degenerate facet"))?;
    while cur != start {
        edges.push(cur);
        let next = cyc_neighbours(cur)
            .into_iter()
            .find(|&g| g != prev)
            .ok_or_else(|| invalid("facet boundary is not a cycle"))?;
        prev = cur;
        cur = next;
    }
    if edges.len() != ring.len() {
        return Err(invalid("facet boundary is not a single cycle"));
    }

    let mut span = Subspace::zero(lambda.rank());
    let mut basis = Vec::new();
    for &f in &edges {
        if span.insert(lambda.colour(f)) {
            basis.push(lambda.colour(f));
        }
    }
    let b = BitMatrix::from_columns(&basis)?;
    let colours = edges
        .iter()
        .map(|&f| b.solve(lambda.colour(f)).expect("colour lies in the span"))
        .collect();
    let polygon = Arc::new(cycle(edges.len())?);
    let colouring = Colouring::new(polygon, basis.len(), colours)?;
    Ok(InducedColouring { colouring, edges, basis })
}

/// A witness `(g, φ)` with `λ₂(F) = φ(λ₁(g(F)))` for every facet.
pub fn are_equivalent(l1: &Colouring, l2: &Colouring) -> Result<Option<(Symmetry, BitMatrix)>> {
    if l1.polytope() != l2.polytope() {
        return Err(invalid("colourings live on different polytopes"));
    }
    if l1.rank() != l2.rank() {
        return Ok(None);
    }
    for g in automorphisms(l1.polytope()) {
        let sources: Vec<BitVector> = (0..l1.colours.len()).map(|f| l1.colour(g.apply(f))).collect();
        if let Some(phi) = BitMatrix::from_images(&sources, &l2.colours) {
            if phi.is_invertible() {
                return Ok(Some((g, phi)));
            }
        }
    }
    Ok(None)
}
