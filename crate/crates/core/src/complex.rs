//! Cell complexes of the manifolds `M_λ` and their quotients.
//!
//! A complex of dimension `n` is stored through its flags: maximal chains
//! `c₀ < c₁ < … < c_n` of cells, one of each dimension. Each flag has, for
//! every `i`, exactly one neighbour `σ_i(flag)` that differs from it only in
//! the `i`-cell. The `i`-cells are the orbits of flags under the `σ_j` with
//! `j ≠ i`, and incidences are read off shared flags. This handles quotients
//! and glued polygons where a cell meets another more than once.
//!
//! For `realize`, flags are indexed `v · L + ℓ` where `v` is the copy (the bits
//! of a vector in `Z₂^k`) and `ℓ` the index of a local flag of the polytope.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::colouring::Colouring;
use crate::error::{invalid, Error, Result};
use crate::gf2::{BitVector, Subspace};
use crate::polytope::{Face, FacetId, Polytope};

/// A cell of `M_λ`: a face of the polytope together with a coset of its isotropy group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cell {
    pub face: Face,
    /// Lexicographically smallest vector of the coset.
    pub coset_rep: BitVector,
    pub isotropy: Subspace,
}

impl Cell {
    pub fn new(face: Face, v: BitVector, lambda: &Colouring) -> Self {
        let isotropy = lambda.isotropy(face.facets());
        Cell { face, coset_rep: isotropy.reduce(v), isotropy }
    }

    pub fn dim(&self, polytope_dim: usize) -> usize {
        polytope_dim - self.face.codim()
    }
}

/// Realization data attached to complexes built by [`realize`].
#[derive(Clone, Debug)]
pub struct Labels {
    pub cells: Vec<Vec<Cell>>,
    pub local_flags: Vec<Vec<FacetId>>,
    local_index: HashMap<Vec<FacetId>, u32>,
    cell_index: Vec<HashMap<(Face, BitVector), u32>>,
    pub rank: usize,
}

impl Labels {
    pub fn local_flag_index(&self, flag: &[FacetId]) -> Option<usize> {
        self.local_index.get(flag).map(|&i| i as usize)
    }

    /// Id of a labelled cell.
    pub fn cell_id(&self, cell: &Cell) -> Option<usize> {
        let d = self.cells.len() - 1 - cell.face.codim();
        self.cell_index[d].get(&(cell.face.clone(), cell.coset_rep)).map(|&i| i as usize)
    }
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    dim: usize,
    adj: Vec<u32>,
    cell_of: Vec<Vec<u32>>,
    reps: Vec<Vec<u32>>,
    labels: Option<Arc<Labels>>,
}

/// Euler characteristic, connectivity, orientability and genus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Analysis {
    pub euler: i64,
    pub components: usize,
    pub orientable: bool,
    /// Only for connected orientable surfaces.
    pub genus: Option<i64>,
}

/// A permutation of flags. Cellular automorphisms commute with every `σ_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FlagMap(pub Vec<u32>);

impl FlagMap {
    pub fn identity(n: usize) -> Self {
        FlagMap((0..n as u32).collect())
    }

    pub fn apply(&self, flag: usize) -> usize {
        self.0[flag] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FlagMap) -> FlagMap {
        FlagMap(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> FlagMap {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        FlagMap(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn is_automorphism(&self, c: &CellComplex) -> bool {
        if self.0.len() != c.flag_count() {
            return false;
        }
        let mut seen = vec![false; self.0.len()];
        for &x in &self.0 {
            if x as usize >= seen.len() || std::mem::replace(&mut seen[x as usize], true) {
                return false;
            }
        }
        (0..c.flag_count()).all(|f| (0..=c.dim).all(|i| self.apply(c.sigma(i, f)) == c.sigma(i, self.apply(f))))
    }

    pub fn cell_image(&self, c: &CellComplex, d: usize, cell: usize) -> usize {
        c.cell_of(d, self.apply(c.rep(d, cell)))
    }
}

/// Closes a set of flag maps into the group they generate, identity first.
pub fn close_group(n: usize, gens: &[FlagMap]) -> Vec<FlagMap> {
    let id = FlagMap::identity(n);
    let mut seen: HashSet<FlagMap> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = g.compose(&out[i]);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
        i += 1;
    }
    out
}

impl CellComplex {
    /// Builds a complex from its flag adjacencies (`adj[flag * (dim+1) + i] = σ_i(flag)`).
    pub fn from_flags(dim: usize, adj: Vec<u32>) -> Result<Self> {
        let w = dim + 1;
        if !adj.len().is_multiple_of(w) || adj.is_empty() {
            return Err(invalid("flag table has the wrong length"));
        }
        let n = adj.len() / w;
        for f in 0..n {
            for i in 0..w {
                let g = adj[f * w + i] as usize;
                if g >= n || g == f || adj[g * w + i] as usize != f {
                    return Err(invalid(format!("σ_{i} is not a fixed-point-free involution at flag {f}")));
                }
                for j in (i + 2)..w {
                    let a = adj[adj[f * w + i] as usize * w + j];
                    let b = adj[adj[f * w + j] as usize * w + i];
                    if a != b {
                        return Err(invalid(format!("σ_{i} and σ_{j} do not commute at flag {f}")));
                    }
                }
            }
        }
        let mut c = CellComplex { dim, adj, cell_of: Vec::new(), reps: Vec::new(), labels: None };
        for d in 0..=dim {
            let gens: Vec<usize> = (0..=dim).filter(|&j| j != d).collect();
            let (ids, reps) = c.orbits(&gens);
            c.cell_of.push(ids);
            c.reps.push(reps);
        }
        Ok(c)
    }

    /// Orbits of flags under the given `σ`s, numbered by smallest flag.
    fn orbits(&self, gens: &[usize]) -> (Vec<u32>, Vec<u32>) {
        let n = self.flag_count();
        let mut ids = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for f in 0..n {
            if ids[f] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(f as u32);
            ids[f] = id;
            stack.push(f);
            while let Some(x) = stack.pop() {
                for &i in gens {
                    let y = self.sigma(i, x);
                    if ids[y] == u32::MAX {
                        ids[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
        (ids, reps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flag_count(&self) -> usize {
        self.adj.len() / (self.dim + 1)
    }

    pub fn sigma(&self, i: usize, flag: usize) -> usize {
        self.adj[flag * (self.dim + 1) + i] as usize
    }

    pub fn cell_of(&self, d: usize, flag: usize) -> usize {
        self.cell_of[d][flag] as usize
    }

    /// Smallest flag through a cell.
    pub fn rep(&self, d: usize, cell: usize) -> usize {
        self.reps[d][cell] as usize
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.reps[d].len()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        (0..=self.dim).map(|d| self.cell_count(d)).collect()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_deref()
    }

    pub fn euler(&self) -> i64 {
        (0..=self.dim).map(|d| if d % 2 == 0 { 1 } else { -1 } * self.cell_count(d) as i64).sum()
    }

    /// Connected components of the flag graph, as a component id per flag.
    pub fn components(&self) -> (usize, Vec<u32>) {
        let gens: Vec<usize> = (0..=self.dim).collect();
        let (ids, reps) = self.orbits(&gens);
        (reps.len(), ids)
    }

    /// A 2-colouring of flags in which `σ_i` always switches colour; `None`
    /// when the complex is not orientable. Each component starts at `true`.
    pub fn flag_parity(&self) -> Option<Vec<bool>> {
        let n = self.flag_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(true);
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for i in 0..=self.dim {
                    let y = self.sigma(i, x);
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Incidences between `d`-cells and `(d-1)`-cells: `(d-cell, (d-1)-cell, a flag)`,
    /// one entry per occurrence of the lower cell in the boundary.
    pub fn incidences(&self, d: usize) -> Vec<(usize, usize, usize)> {
        assert!(d >= 1 && d <= self.dim);
        let (_, reps) = self.incidence_orbits(d);
        let mut out: Vec<(usize, usize, usize)> = reps
            .iter()
            .map(|&f| (self.cell_of(d, f as usize), self.cell_of(d - 1, f as usize), f as usize))
            .collect();
        out.sort_unstable();
        out
    }

    fn incidence_orbits(&self, d: usize) -> (Vec<u32>, Vec<u32>) {
        let gens: Vec<usize> = (0..=self.dim).filter(|&j| j != d && j != d - 1).collect();
        self.orbits(&gens)
    }

    /// Boundary of a `d`-cell as `(d-1)`-cells with multiplicity.
    pub fn boundary(&self, d: usize, cell: usize) -> Vec<usize> {
        self.incidences(d).into_iter().filter(|&(c, _, _)| c == cell).map(|(_, b, _)| b).collect()
    }

    /// Whether each `(n-1)`-cell sits on exactly two sides of top cells.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let mut sides = vec![0usize; self.cell_count(self.dim - 1)];
        for (_, b, _) in self.incidences(self.dim) {
            sides[b] += 1;
        }
        sides.iter().all(|&s| s == 2)
    }

    pub fn analyze(&self) -> Analysis {
        let euler = self.euler();
        let (components, _) = self.components();
        let orientable = self.flag_parity().is_some();
        let genus = (self.dim == 2 && components == 1 && orientable).then(|| (2 - euler) / 2);
        Analysis { euler, components, orientable, genus }
    }

    /// Sign of each top cell under the propagated orientation (parity of its
    /// smallest flag).
    pub fn top_cell_orientation(&self) -> Option<Vec<i8>> {
        let parity = self.flag_parity()?;
        Some(
            (0..self.cell_count(self.dim))
                .map(|c| if parity[self.rep(self.dim, c)] { 1 } else { -1 })
                .collect(),
        )
    }

    /// JSON dump: cells with ids, dimensions, boundaries and orientation signs.
    pub fn to_json(&self, polytope: Option<&Polytope>) -> serde_json::Value {
        let parity = self.flag_parity();
        let mut offsets = vec![0usize];
        for d in 0..=self.dim {
            offsets.push(offsets[d] + self.cell_count(d));
        }
        let mut boundaries: Vec<Vec<Vec<Vec<i64>>>> =
            (0..=self.dim).map(|d| vec![Vec::new(); self.cell_count(d)]).collect();
        for d in 1..=self.dim {
            let (orbit_ids, orbit_reps) = self.incidence_orbits(d);
            for (c, b, f) in self.incidences(d) {
                let sign = match (&parity, d == self.dim) {
                    (Some(p), true) => {
                        // read both sides against the lower chain of the smallest flag
                        // on either side; σ_n carries it across with opposite parity
                        let other = orbit_reps[orbit_ids[self.sigma(d, f)] as usize] as usize;
                        if f < other {
                            if p[f] { 1 } else { -1 }
                        } else if p[other] {
                            -1
                        } else {
                            1
                        }
                    }
                    _ => 0,
                };
                boundaries[d][c].push(vec![(offsets[d - 1] + b) as i64, sign]);
            }
        }
        let orientation = self.top_cell_orientation();
        let mut cells = Vec::new();
        for d in 0..=self.dim {
            for c in 0..self.cell_count(d) {
                let mut entry = serde_json::json!({
                    "id": offsets[d] + c,
                    "dim": d,
                    "boundary": boundaries[d][c],
                });
                if let Some(labels) = self.labels() {
                    let cell = &labels.cells[d][c];
                    let face: Vec<String> = cell
                        .face
                        .facets()
                        .iter()
                        .map(|&f| polytope.map_or_else(|| f.to_string(), |p| p.name(f).to_string()))
                        .collect();
                    entry["face"] = serde_json::json!(face);
                    entry["coset"] = serde_json::json!(cell.coset_rep);
                }
                if d == self.dim {
                    if let Some(o) = &orientation {
                        entry["orientation"] = serde_json::json!(o[c]);
                    }
                }
                cells.push(entry);
            }
        }
        serde_json::json!({
            "dim": self.dim,
            "counts": self.cell_counts(),
            "cells": cells,
        })
    }
}

/// Builds `M_λ = (P × Z₂^k)/~` as a cell complex.
pub fn realize(lambda: &Colouring) -> Result<CellComplex> {
    lambda.require_proper()?;
    let p = lambda.polytope();
    let n = p.dim();
    let k = lambda.rank();
    let local_flags = p.flags();
    let local_index: HashMap<Vec<FacetId>, u32> =
        local_flags.iter().cloned().enumerate().map(|(i, f)| (f, i as u32)).collect();
    let l = local_flags.len();

    // σ_i on local flags for i < n
    let mut local_adj = vec![0u32; l * n];
    for (idx, flag) in local_flags.iter().enumerate() {
        let other = p
            .other_vertex(&flag[..n - 1], flag)
            .ok_or_else(|| invalid("edge with a single vertex"))?;
        let last = *other.iter().find(|f| !flag[..n - 1].contains(f)).expect("vertices differ");
        let mut moved = flag.clone();
        moved[n - 1] = last;
        local_adj[idx * n] = local_index[&moved];
        for i in 1..n {
            let mut swapped = flag.clone();
            swapped.swap(n - i - 1, n - i);
            local_adj[idx * n + i] = local_index[&swapped];
        }
    }

    let copies = 1usize << k;
    let w = n + 1;
    let mut adj = vec![0u32; copies * l * w];
    for v in 0..copies {
        for (idx, flag) in local_flags.iter().enumerate() {
            let f = v * l + idx;
            for i in 0..n {
                adj[f * w + i] = (v * l) as u32 + local_adj[idx * n + i];
            }
            let across = v ^ lambda.colour(flag[0]).bits() as usize;
            adj[f * w + n] = (across * l + idx) as u32;
        }
    }
    let mut c = CellComplex::from_flags(n, adj)?;

    // label cells and renumber them in face-lattice order, then coset representative
    let mut cells = Vec::with_capacity(n + 1);
    let mut cell_index = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut labelled: Vec<(usize, Cell, usize)> = (0..c.cell_count(d))
            .map(|old| {
                let f = c.rep(d, old);
                let (v, idx) = (f / l, f % l);
                let face = Face::new(local_flags[idx][..n - d].to_vec());
                let cell = Cell::new(face, BitVector::from_bits(v as u8, k), lambda);
                (p.face_id(&cell.face).expect("face of the polytope"), cell, old)
            })
            .collect();
        labelled.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.coset_rep.cmp(&b.1.coset_rep)));
        let mut renumber = vec![0u32; labelled.len()];
        let mut index = HashMap::with_capacity(labelled.len());
        for (new, (_, cell, old)) in labelled.iter().enumerate() {
            renumber[*old] = new as u32;
            if index.insert((cell.face.clone(), cell.coset_rep), new as u32).is_some() {
                return Err(invalid("two cells received the same label"));
            }
        }
        for id in c.cell_of[d].iter_mut() {
            *id = renumber[*id as usize];
        }
        let mut reps = vec![0u32; labelled.len()];
        for (old, &r) in c.reps[d].iter().enumerate() {
            reps[renumber[old] as usize] = r;
        }
        c.reps[d] = reps;
        cells.push(labelled.into_iter().map(|(_, cell, _)| cell).collect());
        cell_index.push(index);
    }
    c.labels = Some(Arc::new(Labels { cells, local_flags, local_index, cell_index, rank: k }));
    Ok(c)
}

/// Quotient by the group generated by `gens`, which must act freely.
pub fn quotient(c: &CellComplex, gens: &[FlagMap]) -> Result<CellComplex> {
    quotient_with_projection(c, gens).map(|(q, _)| q)
}

/// Like [`quotient`], also returning the quotient flag of every flag of `c`.
pub fn quotient_with_projection(c: &CellComplex, gens: &[FlagMap]) -> Result<(CellComplex, Vec<u32>)> {
    if let Some(bad) = gens.iter().position(|g| !g.is_automorphism(c)) {
        return Err(invalid(format!("generator {bad} is not a cellular automorphism")));
    }
    let group = close_group(c.flag_count(), gens);
    if group.len() == 1 {
        return Ok((c.clone(), (0..c.flag_count() as u32).collect()));
    }
    for (idx, g) in group.iter().enumerate().skip(1) {
        for d in 0..=c.dim {
            if let Some(cell) = (0..c.cell_count(d)).find(|&cell| g.cell_image(c, d, cell) == cell) {
                return Err(Error::NotFree { element: idx, dim: d, cell });
            }
        }
    }
    let n = c.flag_count();
    let mut orbit = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for f in 0..n {
        if orbit[f] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(f);
        for g in &group {
            orbit[g.apply(f)] = id;
        }
    }
    let w = c.dim + 1;
    let mut adj = vec![0u32; reps.len() * w];
    for (o, &f) in reps.iter().enumerate() {
        for i in 0..w {
            adj[o * w + i] = orbit[c.sigma(i, f)];
        }
    }
    Ok((CellComplex::from_flags(c.dim, adj)?, orbit))
}

impl FlagMap {
    /// The map induced on a quotient by an automorphism normalizing the
    /// quotient group; `None` if it does not respect the projection.
    pub fn descend(&self, projection: &[u32]) -> Option<FlagMap> {
        let n = projection.iter().map(|&o| o as usize + 1).max().unwrap_or(0);
        let mut out = vec![u32::MAX; n];
        for (f, &o) in projection.iter().enumerate() {
            let img = projection[self.apply(f)];
            match out[o as usize] {
                u32::MAX => out[o as usize] = img,
                prev if prev != img => return None,
                _ => {}
            }
        }
        Some(FlagMap(out))
    }
}

/// A flag-level isomorphism together with the induced cell bijections.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub flags: FlagMap,
    pub cells: Vec<Vec<usize>>,
}

/// An isomorphism `a → b` of flag complexes, if one exists.
pub fn isomorphic(a: &CellComplex, b: &CellComplex) -> Option<Isomorphism> {
    if a.dim != b.dim || a.flag_count() != b.flag_count() || a.cell_counts() != b.cell_counts() {
        return None;
    }
    let n = a.flag_count();
    let (ncomp_a, comp_a) = a.components();
    let (_, comp_b) = b.components();
    let mut fwd = vec![u32::MAX; n];
    let mut back = vec![u32::MAX; n];
    let mut used_comp: HashSet<u32> = HashSet::new();
    for comp in 0..ncomp_a as u32 {
        let seed = (0..n).find(|&f| comp_a[f] == comp).expect("component has a flag");
        let mut matched = false;
        #[allow(clippy::needless_range_loop)] // `target` is a flag of `b`, not just an index
        for target in 0..n {
            if used_comp.contains(&comp_b[target]) {
                continue;
            }
            if propagate(a, b, seed, target, &mut fwd, &mut back).is_some() {
                used_comp.insert(comp_b[target]);
                matched = true;
                break;
            }
        }
        if !matched {
            return None;
        }
    }
    let flags = FlagMap(fwd);
    let cells = (0..=a.dim)
        .map(|d| (0..a.cell_count(d)).map(|c| b.cell_of(d, flags.apply(a.rep(d, c)))).collect())
        .collect();
    Some(Isomorphism { flags, cells })
}

/// Extends `seed ↦ target` along σ-moves; on conflict, undoes its work.
fn propagate(
    a: &CellComplex,
    b: &CellComplex,
    seed: usize,
    target: usize,
    fwd: &mut [u32],
    back: &mut [u32],
) -> Option<Vec<usize>> {
    let mut touched = vec![seed];
    fwd[seed] = target as u32;
    back[target] = seed as u32;
    let mut i = 0;
    let mut ok = true;
    'outer: while i < touched.len() {
        let x = touched[i];
        let y = fwd[x] as usize;
        for s in 0..=a.dim {
            let (x2, y2) = (a.sigma(s, x), b.sigma(s, y));
            match (fwd[x2], back[y2]) {
                (u32::MAX, u32::MAX) => {
                    fwd[x2] = y2 as u32;
                    back[y2] = x2 as u32;
                    touched.push(x2);
                }
                (fx, by) if fx == y2 as u32 && by == x2 as u32 => {}
                _ => {
                    ok = false;
                    break 'outer;
                }
            }
        }
        i += 1;
    }
    if ok {
        Some(touched)
    } else {
        for &x in &touched {
            back[fwd[x] as usize] = u32::MAX;
            fwd[x] = u32::MAX;
        }
        None
    }
}

fn permutations_of(n: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for x in 0..n as u8 {
                if !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Barycentric subdivision. A flag of the subdivision is a flag `Φ` of the
/// original complex (naming a top simplex) together with an ordering of the
/// simplex's vertex types; it is stored at `Φ · (n+1)! + ordering`.
pub fn subdivide(c: &CellComplex) -> Result<CellComplex> {
    let n = c.dim;
    if n > 3 {
        return Err(invalid("subdivision is limited to dimension 3"));
    }
    let perms = permutations_of(n + 1);
    let index: HashMap<Vec<u8>, u32> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let np = perms.len();
    let w = n + 1;
    let mut adj = vec![0u32; c.flag_count() * np * w];
    for f in 0..c.flag_count() {
        for (pi, p) in perms.iter().enumerate() {
            let me = f * np + pi;
            for j in 0..n {
                let mut q = p.clone();
                q.swap(j, j + 1);
                adj[me * w + j] = (f * np) as u32 + index[&q];
            }
            let moved = c.sigma(p[n] as usize, f);
            adj[me * w + n] = (moved * np + pi) as u32;
        }
    }
    CellComplex::from_flags(n, adj)
}

/// The automorphism of `subdivide(c)` induced by an automorphism of `c`.
pub fn subdivide_map(g: &FlagMap, dim: usize) -> FlagMap {
    let np: usize = (1..=dim + 1).product();
    let mut out = Vec::with_capacity(g.0.len() * np);
    for &img in &g.0 {
        for pi in 0..np {
            out.push(img * np as u32 + pi as u32);
        }
    }
    FlagMap(out)
}

/// Number of connected components of the part of `M_λ` lying over the facet `f0`.
pub fn facet_preimage_components(c: &CellComplex, f0: FacetId) -> Result<usize> {
    let labels = c.labels().ok_or_else(|| invalid("complex carries no realization labels"))?;
    let n = c.dim;
    // flags whose facet-level cell lies over f0, joined along moves that keep
    // the facet fixed (σ_0 .. σ_{n-2})
    let l = labels.local_flags.len();
    let over = |f: usize| labels.local_flags[f % l][0] == f0;
    let mut seen = vec![false; c.flag_count()];
    let mut count = 0;
    for s in 0..c.flag_count() {
        if seen[s] || !over(s) {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            // lower moves stay inside one copy of f0, σ_n crosses f0 itself, and
            // σ_{n-1} σ_n σ_{n-1} crosses a ridge of f0 into the neighbouring copy
            let across = c.sigma(n - 1, c.sigma(n, c.sigma(n - 1, x)));
            for y in (0..n - 1).map(|i| c.sigma(i, x)).chain([c.sigma(n, x), across]) {
                if over(y) && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{family_colouring, Family};
    use crate::polytope::cycle;

    fn square_torus() -> CellComplex {
        // flags (side i, end e) of one square; sides 0↔2 and 1↔3 glued by translation
        let m = 4;
        let w = 3;
        let mut adj = vec![0u32; 2 * m * w];
        for i in 0..m {
            for e in 0..2 {
                let f = 2 * i + e;
                adj[f * w] = (2 * i + 1 - e) as u32;
                adj[f * w + 1] = if e == 0 { (2 * ((i + m - 1) % m) + 1) as u32 } else { (2 * ((i + 1) % m)) as u32 };
                adj[f * w + 2] = (2 * ((i + 2) % m) + 1 - e) as u32;
            }
        }
        CellComplex::from_flags(2, adj).unwrap()
    }

    #[test]
    fn realize_polygon_counts() {
        let l = family_colouring(Family::Am, 2).unwrap();
        let c = realize(&l).unwrap();
        assert_eq!(c.cell_counts(), vec![6, 12, 4]);
        let a = c.analyze();
        assert_eq!(a, Analysis { euler: -2, components: 1, orientable: true, genus: Some(2) });
        assert!(c.is_closed_pseudomanifold());
    }

    #[test]
    fn cell_counts_match_coset_counts() {
        for fam in [Family::Am, Family::Kulkarni, Family::LoebellAm, Family::LoebellKulkarni] {
            let l = family_colouring(fam, 3).unwrap();
            let c = realize(&l).unwrap();
            let p = l.polytope();
            for d in 0..=p.dim() {
                let expected: usize = p
                    .faces_of_codim(p.dim() - d)
                    .iter()
                    .map(|f| 1usize << (l.rank() - l.isotropy(f.facets()).dim()))
                    .sum();
                assert_eq!(c.cell_count(d), expected, "{fam} dim {d}");
            }
            // Euler characteristic equals 2^k times the orbifold one
            let (num, den) = p.orbifold_euler();
            assert_eq!(c.euler() * den, (1i64 << l.rank()) * num);
        }
    }

    #[test]
    fn kulkarni_genus_and_loebell_euler() {
        let c = realize(&family_colouring(Family::Kulkarni, 3).unwrap()).unwrap();
        assert_eq!(c.analyze().genus, Some(5));
        let r = realize(&family_colouring(Family::LoebellAm, 3).unwrap()).unwrap();
        let a = r.analyze();
        assert_eq!((a.euler, a.components, a.orientable, a.genus), (0, 1, true, None));
        assert_eq!(r.cell_count(3), 8);
        assert!(r.is_closed_pseudomanifold());
    }

    #[test]
    fn orientation_matches_functional() {
        for fam in [Family::Am, Family::Kulkarni, Family::LoebellAm] {
            let l = family_colouring(fam, 3).unwrap();
            let f = l.orientation_functional().unwrap();
            let c = realize(&l).unwrap();
            let signs = c.top_cell_orientation().unwrap();
            let cells = &c.labels().unwrap().cells[c.dim()];
            for (i, cell) in cells.iter().enumerate() {
                let expected = if f.dot(&cell.coset_rep) { -1 } else { 1 };
                assert_eq!(signs[i], expected);
            }
        }
    }

    #[test]
    fn improper_colouring_refused() {
        let p = Arc::new(cycle(6).unwrap());
        let l = Colouring::new(p, 1, vec![BitVector::unit(1, 1); 6]).unwrap();
        assert!(matches!(realize(&l), Err(Error::Improper { .. })));
    }

    #[test]
    fn torus_from_square() {
        let t = square_torus();
        assert_eq!(t.cell_counts(), vec![1, 2, 1]);
        assert_eq!(t.analyze().genus, Some(1));
        assert_eq!(t.boundary(2, 0).len(), 4);
    }

    #[test]
    fn subdivision_preserves_euler() {
        let c = realize(&family_colouring(Family::Am, 2).unwrap()).unwrap();
        let s = subdivide(&c).unwrap();
        assert_eq!(s.euler(), c.euler());
        assert_eq!(s.cell_count(2), c.flag_count());
        let s2 = subdivide(&s).unwrap();
        assert_eq!(s2.euler(), c.euler());
        let r = realize(&family_colouring(Family::LoebellAm, 2).unwrap()).unwrap();
        assert_eq!(subdivide(&r).unwrap().euler(), 0);
        // one polygon with m sides: 2m triangles
        let t = square_torus();
        assert_eq!(subdivide(&t).unwrap().cell_count(2), 8);
    }

    #[test]
    fn subdivision_transports_automorphisms() {
        let c = square_torus();
        // rotation of the square by one side
        let rot = FlagMap((0..8).map(|f| ((f + 2) % 8) as u32).collect());
        assert!(rot.is_automorphism(&c));
        let s = subdivide(&c).unwrap();
        let group = close_group(c.flag_count(), std::slice::from_ref(&rot));
        let lifted: Vec<FlagMap> = group.iter().map(|g| subdivide_map(g, 2)).collect();
        assert!(lifted.iter().all(|g| g.is_automorphism(&s)));
        let closed = close_group(s.flag_count(), &[subdivide_map(&rot, 2)]);
        assert_eq!(closed.len(), group.len());
    }

    #[test]
    fn isomorphism_examples() {
        let c = realize(&family_colouring(Family::Am, 2).unwrap()).unwrap();
        let iso = isomorphic(&c, &c).unwrap();
        assert_eq!(iso.cells[2].len(), 4);
        let c3 = realize(&family_colouring(Family::Am, 3).unwrap()).unwrap();
        assert!(isomorphic(&c, &c3).is_none());
        assert!(isomorphic(&square_torus(), &square_torus()).is_some());
    }

    #[test]
    fn quotient_by_identity_is_same() {
        let c = realize(&family_colouring(Family::Am, 2).unwrap()).unwrap();
        let q = quotient(&c, &[FlagMap::identity(c.flag_count())]).unwrap();
        assert_eq!(q.cell_counts(), c.cell_counts());
        assert!(isomorphic(&q, &c).is_some());
    }

    #[test]
    fn facet_preimages() {
        // rank 3 on the Löbell polyhedron, rank 2 induced on the big faces: one component
        let l = family_colouring(Family::LoebellAm, 3).unwrap();
        let c = realize(&l).unwrap();
        let top = crate::polytope::LOEBELL_TOP;
        assert_eq!(facet_preimage_components(&c, top).unwrap(), 1);
        // an edge of a polygon in the rank-2 surface closes up into one curve
        let p = realize(&family_colouring(Family::Am, 2).unwrap()).unwrap();
        assert_eq!(facet_preimage_components(&p, 0).unwrap(), 1);
        // a rank-3 polygon colouring with an edge whose endpoints only see rank 2
        let poly = Arc::new(cycle(6).unwrap());
        let e = |i| BitVector::unit(i, 3);
        let l3 = Colouring::new(poly, 3, vec![e(1), e(2), e(1), e(2), e(1), e(3)]).unwrap();
        let c3 = realize(&l3).unwrap();
        assert_eq!(facet_preimage_components(&c3, 1).unwrap(), 2);
    }

    #[test]
    fn quotient_of_torus_by_half_turn() {
        // the half-turn of the square fixes its single vertex (and the square)
        let t = square_torus();
        let half = FlagMap((0..8).map(|f| ((f + 4) % 8) as u32).collect());
        assert!(half.is_automorphism(&t));
        assert!(matches!(quotient(&t, &[half]), Err(Error::NotFree { dim: 0, cell: 0, .. })));
        // (r₁, e₁+e₂) acts freely on the genus-2 surface, reversing orientation
        use crate::isometry::{polygon_reflections, IsometryGroup};
        let grp = IsometryGroup::new(Arc::new(family_colouring(Family::Am, 2).unwrap())).unwrap();
        let (r1, _) = polygon_reflections(6);
        let e12 = BitVector::unit(1, 2) + BitVector::unit(2, 2);
        let inv = grp.flag_map(grp.index_of(&r1, e12).unwrap());
        let c = grp.complex();
        let (q, proj) = quotient_with_projection(c, std::slice::from_ref(&inv)).unwrap();
        assert_eq!(q.cell_counts(), vec![3, 6, 2]);
        assert_eq!(q.euler() * 2, c.euler());
        assert!(!q.analyze().orientable);
        assert!(inv.descend(&proj).unwrap().is_identity());
        let rot = grp.flag_map(grp.index_of(&r1.compose(&polygon_reflections(6).1), BitVector::zero(2)).unwrap());
        assert!(rot.descend(&proj).is_none());
    }

    #[test]
    fn bad_flag_tables_rejected() {
        assert!(CellComplex::from_flags(2, vec![0, 0, 0]).is_err());
        assert!(CellComplex::from_flags(1, vec![1, 1, 0]).is_err());
    }

    #[test]
    fn json_dump_is_stable() {
        let l = family_colouring(Family::Am, 2).unwrap();
        let c = realize(&l).unwrap();
        let a = serde_json::to_string(&c.to_json(Some(l.polytope()))).unwrap();
        let b = serde_json::to_string(&realize(&l).unwrap().to_json(Some(l.polytope()))).unwrap();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["cells"].as_array().unwrap().len(), 22);
        // opposite signs on the two sides of every edge
        let mut by_edge: HashMap<i64, i64> = HashMap::new();
        for cell in v["cells"].as_array().unwrap().iter().filter(|c| c["dim"] == 2) {
            for pair in cell["boundary"].as_array().unwrap() {
                *by_edge.entry(pair[0].as_i64().unwrap()).or_default() += pair[1].as_i64().unwrap();
            }
        }
        assert!(by_edge.values().all(|&s| s == 0));
    }
}
