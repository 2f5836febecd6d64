//! Combinatorial simple polytopes in dimensions 2 and 3.
//!
//! A polytope is given by its facets and its vertices, each vertex being the
//! set of `dim` facets that meet there. Because the polytope is simple, every
//! subset of a vertex's facets is again a face, so the whole face lattice is
//! recovered from the vertex list. A face is named by its facet set; the empty
//! set is the polytope itself.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Index of a facet inside its polytope.
pub type FacetId = usize;

/// A face, named by the facets containing it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Face {
    facets: Vec<FacetId>,
}

impl Face {
    pub fn new(mut facets: Vec<FacetId>) -> Self {
        facets.sort_unstable();
        facets.dedup();
        Self { facets }
    }

    pub fn whole() -> Self {
        Self { facets: Vec::new() }
    }

    pub fn facets(&self) -> &[FacetId] {
        &self.facets
    }

    pub fn is_whole(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn codim(&self) -> usize {
        self.facets.len()
    }
}

/// A face-lattice automorphism, as a permutation of facets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symmetry {
    perm: Vec<u16>,
}

impl Symmetry {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n as u16).collect() }
    }

    /// Wraps a permutation without checking that it preserves any lattice.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(invalid("not a permutation"));
            }
        }
        Ok(Self { perm: perm.into_iter().map(|p| p as u16).collect() })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, f: FacetId) -> FacetId {
        self.perm[f] as usize
    }

    pub fn apply_face(&self, face: &Face) -> Face {
        Face::new(face.facets.iter().map(|&f| self.apply(f)).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        Symmetry { perm: other.perm.iter().map(|&f| self.perm[f as usize]).collect() }
    }

    pub fn inverse(&self) -> Symmetry {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        Symmetry { perm: inv }
    }

    pub fn pow(&self, k: usize) -> Symmetry {
        let mut out = Symmetry::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p as usize).collect()
    }
}

/// A simple polytope of dimension 2 or 3.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    names: Vec<String>,
    vertices: Vec<Vec<FacetId>>,
    faces: Vec<Face>,
    face_index: HashMap<Face, usize>,
    neighbours: Vec<Vec<FacetId>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.names.len() == other.names.len() && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// JSON shape of a polytope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<String>>,
}

impl Polytope {
    /// Validates and builds a polytope from facet-index vertex sets.
    pub fn new(dim: usize, names: Vec<String>, vertices: Vec<Vec<FacetId>>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(invalid(format!("polytope dimension must be 2 or 3, got {dim}")));
        }
        let n = names.len();
        if n <= dim {
            return Err(invalid("too few facets"));
        }
        if n > u16::MAX as usize {
            return Err(invalid("too many facets"));
        }
        let unique_names: BTreeSet<&String> = names.iter().collect();
        if unique_names.len() != n {
            return Err(invalid("facet names must be unique"));
        }
        let mut verts = Vec::with_capacity(vertices.len());
        for v in vertices {
            let set: BTreeSet<FacetId> = v.iter().copied().collect();
            if set.len() != dim || v.len() != dim {
                return Err(invalid(format!("vertex {v:?} must lie in exactly {dim} distinct facets")));
            }
            if set.iter().any(|&f| f >= n) {
                return Err(invalid(format!("vertex {v:?} names an unknown facet")));
            }
            verts.push(set.into_iter().collect::<Vec<_>>());
        }
        let distinct: BTreeSet<&Vec<FacetId>> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(invalid("duplicate vertex"));
        }

        let mut count = vec![0usize; n];
        for v in &verts {
            for &f in v {
                count[f] += 1;
            }
        }
        if let Some(f) = (0..n).find(|&f| count[f] < dim) {
            return Err(invalid(format!("facet {} lies in fewer than {dim} vertices", names[f])));
        }

        // every subset of a vertex is a face
        let mut face_set: BTreeSet<Face> = BTreeSet::new();
        for v in &verts {
            for mask in 0..(1u32 << dim) {
                let sub = (0..dim).filter(|i| (mask >> i) & 1 == 1).map(|i| v[i]).collect();
                face_set.insert(Face::new(sub));
            }
        }
        let mut faces: Vec<Face> = face_set.into_iter().collect();
        faces.sort_by(|a, b| a.codim().cmp(&b.codim()).then_with(|| a.cmp(b)));
        let face_index = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();

        let mut neighbours = vec![BTreeSet::new(); n];
        for v in &verts {
            for &a in v {
                for &b in v {
                    if a != b {
                        neighbours[a].insert(b);
                    }
                }
            }
        }
        let neighbours: Vec<Vec<FacetId>> = neighbours.into_iter().map(|s| s.into_iter().collect()).collect();

        let p = Self { dim, names, vertices: verts, faces, face_index, neighbours };
        p.check_shape()?;
        Ok(p)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.facet_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for &g in &self.neighbours[f] {
                if !std::mem::replace(&mut seen[g], true) {
                    queue.push_back(g);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("facet adjacency graph is disconnected"));
        }
        // each edge (ridge of codimension dim-1) must have exactly two vertices
        let ridges = self.faces_of_codim(self.dim - 1);
        for r in &ridges {
            let k = self.vertices.iter().filter(|v| r.facets().iter().all(|f| v.contains(f))).count();
            if k != 2 {
                return Err(invalid(format!("edge {:?} has {k} endpoints", r.facets())));
            }
        }
        if self.dim == 3 {
            let (v, e, f) = (self.vertex_count() as i64, ridges.len() as i64, n as i64);
            if v - e + f != 2 {
                return Err(invalid(format!("Euler relation fails: V - E + F = {}", v - e + f)));
            }
        }
        Ok(())
    }

    pub fn from_json(json: &PolytopeJson) -> Result<Self> {
        let index: HashMap<&str, FacetId> =
            json.facets.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let vertices = json
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| index.get(s.as_str()).copied().ok_or_else(|| invalid(format!("unknown facet {s}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.dim, json.facets.clone(), vertices)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.dim,
            facets: self.names.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|&f| self.names[f].clone()).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn name(&self, f: FacetId) -> &str {
        &self.names[f]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn facet_by_name(&self, name: &str) -> Option<FacetId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn vertices(&self) -> &[Vec<FacetId>] {
        &self.vertices
    }

    /// Faces ordered by codimension, then by facet set; the polytope itself first.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_id(&self, face: &Face) -> Option<usize> {
        self.face_index.get(face).copied()
    }

    pub fn is_face(&self, facets: &[FacetId]) -> bool {
        self.face_index.contains_key(&Face::new(facets.to_vec()))
    }

    pub fn faces_of_codim(&self, codim: usize) -> Vec<Face> {
        self.faces.iter().filter(|f| f.codim() == codim).cloned().collect()
    }

    /// Edges of a 3-polytope as facet pairs; for polygons, the facets themselves.
    pub fn edge_count(&self) -> usize {
        self.faces.iter().filter(|f| f.codim() == self.dim - 1).count()
    }

    pub fn neighbours(&self, f: FacetId) -> &[FacetId] {
        &self.neighbours[f]
    }

    pub fn adjacent(&self, a: FacetId, b: FacetId) -> bool {
        self.neighbours[a].binary_search(&b).is_ok()
    }

    /// Whether `s` maps vertices to vertices.
    pub fn preserves_lattice(&self, s: &Symmetry) -> bool {
        if s.len() != self.facet_count() {
            return false;
        }
        self.vertices.iter().all(|v| {
            let image = Face::new(v.iter().map(|&f| s.apply(f)).collect());
            image.codim() == self.dim && self.face_index.contains_key(&image)
        })
    }

    /// Local flags: orderings `(F₁, …, F_dim)` of a vertex's facets. The prefix
    /// of length `j` names the incident face of dimension `dim - j`.
    pub fn flags(&self) -> Vec<Vec<FacetId>> {
        let mut out = Vec::new();
        for v in &self.vertices {
            permutations(v, &mut out);
        }
        out
    }

    /// The vertex other than `v` on the edge named by `edge` (a `dim - 1` facet set).
    pub fn other_vertex(&self, edge: &[FacetId], v: &[FacetId]) -> Option<Vec<FacetId>> {
        self.vertices
            .iter()
            .find(|w| edge.iter().all(|f| w.contains(f)) && {
                let mut a = (*w).clone();
                let mut b = v.to_vec();
                a.sort_unstable();
                b.sort_unstable();
                a != b
            })
            .cloned()
    }

    /// Euler characteristic of the reflection orbifold: each face of codimension
    /// `c` contributes `(-1)^(dim-c) / 2^c`. Returned as `(numerator, 2^dim)`.
    pub fn orbifold_euler(&self) -> (i64, i64) {
        let den = 1i64 << self.dim;
        let num = self
            .faces
            .iter()
            .map(|f| {
                let sign = if (self.dim - f.codim()).is_multiple_of(2) { 1 } else { -1 };
                sign * (den >> f.codim())
            })
            .sum();
        (num, den)
    }
}

fn permutations(items: &[FacetId], out: &mut Vec<Vec<FacetId>>) {
    fn go(rest: &mut Vec<FacetId>, acc: &mut Vec<FacetId>, out: &mut Vec<Vec<FacetId>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    go(&mut items.to_vec(), &mut Vec::new(), out);
}

/// A cycle of `m` edges with no hyperbolicity requirement.
pub(crate) fn cycle(m: usize) -> Result<Polytope> {
    if m < 3 {
        return Err(invalid("a polygon needs at least three sides"));
    }
    let names = (1..=m).map(|i| i.to_string()).collect();
    let vertices = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    Polytope::new(2, names, vertices)
}

/// The right-angled `m`-gon, edges labelled `1..m` in cyclic order.
pub fn build_polygon(m: usize) -> Result<Polytope> {
    if m < 5 {
        return Err(invalid(format!("a right-angled hyperbolic polygon needs at least 5 sides, got {m}")));
    }
    cycle(m)
}

/// Index of the top `m`-gon in a Löbell polyhedron.
pub const LOEBELL_TOP: FacetId = 0;
/// Index of the bottom `m`-gon in a Löbell polyhedron.
pub const LOEBELL_BOTTOM: FacetId = 1;

/// Index of the top-ring pentagon `t_i`, `i` in `1..=m` (taken cyclically).
pub fn loebell_top_ring(m: usize, i: usize) -> FacetId {
    2 + (i + m - 1) % m
}

/// Index of the bottom-ring pentagon `b_i`, `i` in `1..=m` (taken cyclically).
pub fn loebell_bottom_ring(m: usize, i: usize) -> FacetId {
    2 + m + (i + m - 1) % m
}

/// The Löbell polyhedron `R(m)`: two `m`-gons `T`, `B` and two rings of
/// pentagons. `t_i` meets `T`, `t_{i±1}`, `b_i` and `b_{i+1}`.
pub fn build_loebell(m: usize) -> Result<Polytope> {
    if m < 5 {
        return Err(invalid(format!("the Löbell polyhedron R(m) needs m >= 5, got {m}")));
    }
    let mut names = vec!["T".to_string(), "B".to_string()];
    names.extend((1..=m).map(|i| format!("t{i}")));
    names.extend((1..=m).map(|i| format!("b{i}")));
    let t = |i| loebell_top_ring(m, i);
    let b = |i| loebell_bottom_ring(m, i);
    let mut vertices = Vec::with_capacity(4 * m);
    for i in 1..=m {
        vertices.push(vec![LOEBELL_TOP, t(i), t(i + 1)]);
    }
    for i in 1..=m {
        vertices.push(vec![t(i), t(i + 1), b(i + 1)]);
    }
    for i in 1..=m {
        vertices.push(vec![b(i), b(i + 1), t(i)]);
    }
    for i in 1..=m {
        vertices.push(vec![LOEBELL_BOTTOM, b(i), b(i + 1)]);
    }
    Polytope::new(3, names, vertices)
}

/// The half-turn of `R(m)` about the axis through the centres of `T` and `B`.
pub fn loebell_half_turn(p: &Polytope) -> Result<Symmetry> {
    let m = (p.facet_count() - 2) / 2;
    if p.dim() != 3 || !m.is_multiple_of(2) || p != &build_loebell(m)? {
        return Err(invalid("half-turn needs a Löbell polyhedron with an even number of ring faces"));
    }
    let mut perm = vec![LOEBELL_TOP, LOEBELL_BOTTOM];
    perm.extend((1..=m).map(|i| loebell_top_ring(m, i + m / 2)));
    perm.extend((1..=m).map(|i| loebell_bottom_ring(m, i + m / 2)));
    let s = Symmetry::from_perm(perm)?;
    debug_assert!(p.preserves_lattice(&s));
    Ok(s)
}

/// All face-lattice automorphisms, found by backtracking over facet adjacency.
/// The identity comes first; the rest are in lexicographic order.
pub fn automorphisms(p: &Polytope) -> Vec<Symmetry> {
    let n = p.facet_count();
    // breadth-first order, each facet after the first anchored to an earlier neighbour
    let mut order = vec![0];
    let mut anchor = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let f = order[head];
        head += 1;
        for &g in p.neighbours(f) {
            if !std::mem::replace(&mut seen[g], true) {
                anchor[g] = f;
                order.push(g);
            }
        }
    }
    let degree: Vec<usize> = (0..n).map(|f| p.neighbours(f).len()).collect();

    struct Search<'a> {
        p: &'a Polytope,
        order: Vec<usize>,
        anchor: Vec<usize>,
        degree: Vec<usize>,
        image: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Symmetry>,
    }

    impl Search<'_> {
        fn candidate_ok(&self, depth: usize, f: usize, c: usize) -> bool {
            if self.used[c] || self.degree[c] != self.degree[f] {
                return false;
            }
            self.order[..depth].iter().all(|&g| self.p.adjacent(f, g) == self.p.adjacent(c, self.image[g]))
        }

        fn run(&mut self, depth: usize) {
            if depth == self.order.len() {
                let s = Symmetry { perm: self.image.iter().map(|&x| x as u16).collect() };
                if self.p.preserves_lattice(&s) {
                    self.found.push(s);
                }
                return;
            }
            let f = self.order[depth];
            let candidates: Vec<usize> = if depth == 0 {
                (0..self.p.facet_count()).collect()
            } else {
                self.p.neighbours(self.image[self.anchor[f]]).to_vec()
            };
            for c in candidates {
                if self.candidate_ok(depth, f, c) {
                    self.image[f] = c;
                    self.used[c] = true;
                    self.run(depth + 1);
                    self.used[c] = false;
                }
            }
        }
    }

    let mut search = Search {
        p,
        order,
        anchor,
        degree,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found;
    found.sort();
    found
}

/// Faces mapped to themselves by `s`, the polytope itself included.
pub fn invariant_faces(p: &Polytope, s: &Symmetry) -> Vec<Face> {
    p.faces().iter().filter(|f| s.apply_face(f) == **f).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group(syms: &[Symmetry]) {
        let set: std::collections::HashSet<_> = syms.iter().collect();
        for a in syms {
            assert!(set.contains(&a.inverse()));
            for b in syms {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn polygon_counts() {
        let p = build_polygon(6).unwrap();
        assert_eq!((p.facet_count(), p.vertex_count()), (6, 6));
        let p8 = build_polygon(8).unwrap();
        let names: Vec<Vec<String>> = p8.to_json().vertices;
        assert_eq!(names[0], vec!["1", "2"]);
        assert_eq!(names[7], vec!["1", "8"]);
        assert!(build_polygon(4).is_err());
    }

    #[test]
    fn loebell_counts() {
        let r = build_loebell(8).unwrap();
        assert_eq!(r.facet_count(), 18);
        assert_eq!(r.vertex_count(), 32);
        assert_eq!(r.edge_count(), 48);
        // simple-polytope oracle: 3V = 2E and V - E + F = 2
        assert_eq!(3 * r.vertex_count(), 2 * r.edge_count());
        assert!(r.vertices().iter().all(|v| v.len() == 3));
        // top and bottom are 8-gons, ring faces pentagons
        let face_size = |f| r.vertices().iter().filter(|v| v.contains(&f)).count();
        assert_eq!(face_size(LOEBELL_TOP), 8);
        assert_eq!(face_size(LOEBELL_BOTTOM), 8);
        for i in 1..=8 {
            assert_eq!(face_size(loebell_top_ring(8, i)), 5);
            assert_eq!(face_size(loebell_bottom_ring(8, i)), 5);
            assert!(r.adjacent(loebell_top_ring(8, i), loebell_bottom_ring(8, i)));
            assert!(r.adjacent(loebell_top_ring(8, i), loebell_bottom_ring(8, i + 1)));
        }
        assert!(build_loebell(4).is_err());
    }

    #[test]
    fn symmetry_group_orders() {
        let p6 = automorphisms(&build_polygon(6).unwrap());
        assert_eq!(p6.len(), 12);
        assert!(p6[0].is_identity());
        check_group(&p6);
        let r8 = automorphisms(&build_loebell(8).unwrap());
        assert_eq!(r8.len(), 32);
        assert!(r8[0].is_identity());
        check_group(&r8);
        // R(5) is the dodecahedron
        assert_eq!(automorphisms(&build_loebell(5).unwrap()).len(), 120);
    }

    #[test]
    fn invariant_faces_examples() {
        let p6 = build_polygon(6).unwrap();
        assert_eq!(invariant_faces(&p6, &Symmetry::identity(6)).len(), 13);

        let p8 = build_polygon(8).unwrap();
        let antipodal = Symmetry::from_perm((0..8).map(|i| (i + 4) % 8).collect()).unwrap();
        assert_eq!(invariant_faces(&p8, &antipodal), vec![Face::whole()]);

        // reflection fixing edge 1: i ↦ -i fixes edges 1 and 4 and no vertex
        let r1 = Symmetry::from_perm((0..6).map(|i| (6 - i) % 6).collect()).unwrap();
        assert!(p6.preserves_lattice(&r1));
        let brute: Vec<Face> = p6.faces().iter().filter(|f| r1.apply_face(f) == **f).cloned().collect();
        let fixed = invariant_faces(&p6, &r1);
        assert_eq!(fixed, brute);
        assert_eq!(fixed, vec![Face::whole(), Face::new(vec![0]), Face::new(vec![3])]);
    }

    #[test]
    fn half_turn_is_automorphism() {
        let r = build_loebell(8).unwrap();
        let h = loebell_half_turn(&r).unwrap();
        assert!(automorphisms(&r).contains(&h));
        assert!(h.compose(&h).is_identity());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let r = build_loebell(6).unwrap();
        let json = serde_json::to_string(&r.to_json()).unwrap();
        let back = Polytope::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, r);

        let bad = PolytopeJson {
            dim: 2,
            facets: vec!["a".into(), "b".into(), "c".into()],
            vertices: vec![vec!["a".into(), "b".into()]],
        };
        assert!(Polytope::from_json(&bad).is_err());
    }

    #[test]
    fn flags_and_orbifold_euler() {
        let p = build_polygon(6).unwrap();
        assert_eq!(p.flags().len(), 12);
        // 1 - m/4 for an m-gon
        assert_eq!(p.orbifold_euler(), (4 - 6, 4));
        let r = build_loebell(8).unwrap();
        assert_eq!(r.flags().len(), 6 * 32);
        assert_eq!(r.orbifold_euler().0, 0);
    }
}
