//! Finite abstract simplicial complexes and their closed-star structure.
//!
//! A complex is stored as its antichain of facets over a fixed ambient
//! vertex set `0..n`. Faces are dense bit sets, so membership and star
//! computations are mask arithmetic. The star poset groups faces by their
//! closed star and orders the resulting subcomplexes by inclusion; it is
//! the combinatorial skeleton everything downstream hangs off.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on ambient vertices, set by the `u32` face representation.
pub const MAX_VERTICES: usize = 32;

/// Hard cap on facets, set by the `u128` facet masks in [`StarPoset`].
pub const MAX_FACETS: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    /// A complex needs at least one facet; the void complex is rejected.
    #[error("complex has no facets")]
    EmptyComplex,
    /// Vertex listed in the ambient set but absent from every facet.
    #[error("vertex {0} appears in no facet")]
    GhostVertex(usize),
    /// Vertex index outside the ambient range `0..n`.
    #[error("vertex index {0} out of range for {1} vertices")]
    BadIndex(usize, usize),
    /// Queried face is not a face of the complex.
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
}

/// A face: a finite set of vertices, stored as a bit set over `0..32`.
///
/// Ordering is by cardinality first, then lexicographic on the ascending
/// vertex list, which keeps face listings grouped by dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn singleton(v: usize) -> Face {
        assert!(v < MAX_VERTICES);
        Face(1 << v)
    }

    pub fn from_vertices(vs: &[usize]) -> Face {
        let mut bits = 0u32;
        for &v in vs {
            assert!(v < MAX_VERTICES, "vertex {v} out of representable range");
            bits |= 1 << v;
        }
        Face(bits)
    }

    /// Support of an exponent vector: the set of indices with a positive entry.
    pub fn support(exps: &[u32]) -> Face {
        let mut bits = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                bits |= 1 << i;
            }
        }
        Face(bits)
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..MAX_VERTICES).filter(|&v| self.contains(v)).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Dimension as a simplex: `len() - 1`, so the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.len() as isize - 1
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn union(&self, other: &Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn insert(&self, v: usize) -> Face {
        assert!(v < MAX_VERTICES);
        Face(self.0 | (1 << v))
    }

    pub fn max_vertex(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(31 - self.0.leading_zeros() as usize)
        }
    }

    /// Shift every vertex up by `offset`, used when joining complexes.
    pub fn shifted(&self, offset: usize) -> Face {
        assert!(self.max_vertex().map_or(0, |m| m + offset + 1) <= MAX_VERTICES);
        Face(self.0 << offset)
    }

    pub(crate) fn from_bits(bits: u32) -> Face {
        Face(bits)
    }

    /// All subsets of this face, in ascending mask order.
    pub fn subsets(&self) -> Vec<Face> {
        let m = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u32;
        loop {
            out.push(Face(sub));
            if sub == m {
                break;
            }
            // next submask of m in increasing order
            sub = sub.wrapping_sub(m) & m;
        }
        out
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(&other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    /// Renders with 1-based vertices, e.g. `{1,3}`; the empty face is `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// Monomial label for a face with 1-based variables: `{0,2}` becomes `x1*x3`,
/// the empty face becomes `1`.
pub fn monomial_label(face: &Face) -> String {
    if face.is_empty() {
        "1".to_string()
    } else {
        face.vertices()
            .iter()
            .map(|v| format!("x{}", v + 1))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A simplicial complex on the ambient vertex set `0..n_vertices`, stored
/// as its sorted antichain of facets.
///
/// Validated construction via [`SimplicialComplex::build`] additionally
/// rejects ghost vertices. Subcomplexes produced internally (closed stars,
/// for instance) share the ambient vertex set and may leave some vertices
/// uncovered; all operations tolerate that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Validating constructor: minimizes the face list to an antichain,
    /// then rejects empty input, out-of-range vertices, and ghost vertices.
    pub fn build(n_vertices: usize, faces: &[Face]) -> Result<Self, SimplicialError> {
        if faces.is_empty() {
            return Err(SimplicialError::EmptyComplex);
        }
        if n_vertices > MAX_VERTICES {
            return Err(SimplicialError::TooLarge(format!(
                "{n_vertices} vertices exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        for f in faces {
            if let Some(m) = f.max_vertex() {
                if m >= n_vertices {
                    return Err(SimplicialError::BadIndex(m, n_vertices));
                }
            }
        }
        let complex = Self::from_faces_unchecked(n_vertices, faces);
        if complex.facets.len() > MAX_FACETS {
            return Err(SimplicialError::TooLarge(format!(
                "{} facets exceeds the maximum of {MAX_FACETS}",
                complex.facets.len()
            )));
        }
        let mut covered = Face::EMPTY;
        for f in &complex.facets {
            covered = covered.union(f);
        }
        for v in 0..n_vertices {
            if !covered.contains(v) {
                return Err(SimplicialError::GhostVertex(v));
            }
        }
        Ok(complex)
    }

    /// Builds from 1-based vertex lists, the convention used in files.
    pub fn build_1based(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let mut faces = Vec::with_capacity(facets.len());
        for fv in facets {
            let mut bits = Face::EMPTY;
            for &v in fv {
                if v == 0 || v > n_vertices {
                    return Err(SimplicialError::BadIndex(v.wrapping_sub(1), n_vertices));
                }
                bits = bits.insert(v - 1);
            }
            faces.push(bits);
        }
        SimplicialComplex::build(n_vertices, &faces)
    }

    /// Subcomplex constructor: minimizes to an antichain, no ghost check.
    pub(crate) fn from_faces_unchecked(n: usize, faces: &[Face]) -> Self {
        let mut maximal: Vec<Face> = Vec::new();
        for &f in faces {
            if faces.iter().any(|g| f != *g && f.is_subset_of(g)) {
                continue;
            }
            if !maximal.contains(&f) {
                maximal.push(f);
            }
        }
        maximal.sort();
        SimplicialComplex { n, facets: maximal }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub(crate) fn has_face(&self, f: &Face) -> bool {
        self.facets.iter().any(|m| f.is_subset_of(m))
    }

    /// Face membership; errors if the query uses vertices outside `0..n`.
    pub fn is_face(&self, f: &Face) -> Result<bool, SimplicialError> {
        if let Some(m) = f.max_vertex() {
            if m >= self.n {
                return Err(SimplicialError::BadIndex(m, self.n));
            }
        }
        Ok(self.has_face(f))
    }

    fn require_face(&self, f: &Face) -> Result<(), SimplicialError> {
        if self.is_face(f)? {
            Ok(())
        } else {
            Err(SimplicialError::NotAFace(*f))
        }
    }

    /// Closed star of a face: the subcomplex of faces whose union with
    /// `sigma` is still a face. Its facets are the facets containing `sigma`.
    pub fn closed_star(&self, sigma: &Face) -> Result<SimplicialComplex, SimplicialError> {
        self.require_face(sigma)?;
        let star: Vec<Face> = self
            .facets
            .iter()
            .copied()
            .filter(|m| sigma.is_subset_of(m))
            .collect();
        Ok(SimplicialComplex { n: self.n, facets: star })
    }

    /// Faces outside the closed star of `sigma`: those whose union with
    /// `sigma` is not a face. Sorted.
    pub fn open_complement(&self, sigma: &Face) -> Result<Vec<Face>, SimplicialError> {
        self.require_face(sigma)?;
        Ok(self
            .faces()
            .into_iter()
            .filter(|t| !self.has_face(&t.union(sigma)))
            .collect())
    }

    /// Does the closed star of `tau` sit inside the closed star of `sigma`?
    ///
    /// Equivalent to: every facet containing `tau` contains `sigma`.
    pub fn star_leq(&self, tau: &Face, sigma: &Face) -> Result<bool, SimplicialError> {
        self.require_face(tau)?;
        self.require_face(sigma)?;
        Ok(self
            .facets
            .iter()
            .all(|m| !tau.is_subset_of(m) || sigma.is_subset_of(m)))
    }

    /// Mask over facet indices: bit i set iff facet i contains `f`.
    pub(crate) fn facet_mask(&self, f: &Face) -> u128 {
        let mut mask = 0u128;
        for (i, m) in self.facets.iter().enumerate() {
            if f.is_subset_of(m) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// All faces, sorted by dimension then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = BTreeSet::new();
        for m in &self.facets {
            for s in m.subsets() {
                seen.insert(s);
            }
        }
        seen.into_iter().collect()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    /// Face counts indexed from dimension -1: entry i counts faces of
    /// dimension i-1, so the vector always starts with 1 for the empty face.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; (self.dim() + 2) as usize];
        for face in self.faces() {
            f[(face.dim() + 1) as usize] += 1;
        }
        f
    }

    /// Join of two complexes on the disjoint union of their vertex sets;
    /// the second complex is relabelled above the first.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, SimplicialError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(SimplicialError::TooLarge(format!(
                "join would have {n} vertices, exceeding the maximum of {MAX_VERTICES}"
            )));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(&b.shifted(self.n)));
            }
        }
        if facets.len() > MAX_FACETS {
            return Err(SimplicialError::TooLarge(format!(
                "join would have {} facets, exceeding the maximum of {MAX_FACETS}",
                facets.len()
            )));
        }
        let mut facets = facets;
        facets.sort();
        facets.dedup();
        Ok(SimplicialComplex { n, facets })
    }

    /// Groups faces by closed star and orders the stars by inclusion.
    pub fn star_poset(&self) -> StarPoset {
        StarPoset::new(self)
    }

    /// Order complex of the proper part of the star poset: one vertex per
    /// proper star, facets the maximal chains of nested stars.
    ///
    /// When every star is the whole complex the proper part is empty and the
    /// result is the complex whose only face is the empty face.
    pub fn nerve_complex(&self) -> Result<SimplicialComplex, SimplicialError> {
        let poset = self.star_poset();
        let proper: Vec<usize> = poset.proper_node_ids().collect();
        if proper.is_empty() {
            return Ok(SimplicialComplex { n: 0, facets: vec![Face::EMPTY] });
        }
        if proper.len() > MAX_VERTICES {
            return Err(SimplicialError::TooLarge(format!(
                "{} proper stars exceed the representable {MAX_VERTICES} nerve vertices",
                proper.len()
            )));
        }
        let index_of: BTreeMap<usize, usize> =
            proper.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let covers = poset.covers();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); proper.len()];
        let mut has_lower = vec![false; proper.len()];
        for (lo, hi) in covers {
            if let (Some(&a), Some(&b)) = (index_of.get(&lo), index_of.get(&hi)) {
                up[a].push(b);
                has_lower[b] = true;
            }
        }
        // maximal chains are cover paths from minimal to maximal proper nodes
        let mut chains = Vec::new();
        let mut stack: Vec<(usize, Face)> = (0..proper.len())
            .filter(|&i| !has_lower[i])
            .map(|i| (i, Face::singleton(i)))
            .collect();
        while let Some((node, chain)) = stack.pop() {
            if up[node].is_empty() {
                chains.push(chain);
            } else {
                for &next in &up[node] {
                    stack.push((next, chain.insert(next)));
                }
            }
        }
        Ok(SimplicialComplex::from_faces_unchecked(proper.len(), &chains))
    }
}

/// One node of the star poset: a closed star together with every face
/// realizing it. The representative is the smallest such face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarNode {
    pub representative: Face,
    pub faces: Vec<Face>,
    pub star: SimplicialComplex,
    mask: u128,
}

/// The distinct closed stars of a complex, ordered by inclusion of the
/// underlying subcomplexes. Inclusion is subset order on facet masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPoset {
    complex: SimplicialComplex,
    nodes: Vec<StarNode>,
    full: usize,
}

impl StarPoset {
    fn new(complex: &SimplicialComplex) -> StarPoset {
        let mut groups: BTreeMap<u128, Vec<Face>> = BTreeMap::new();
        for face in complex.faces() {
            groups.entry(complex.facet_mask(&face)).or_default().push(face);
        }
        let mut nodes: Vec<StarNode> = groups
            .into_iter()
            .map(|(mask, mut faces)| {
                faces.sort();
                let star_facets: Vec<Face> = complex
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, f)| *f)
                    .collect();
                StarNode {
                    representative: faces[0],
                    faces,
                    star: SimplicialComplex { n: complex.n, facets: star_facets },
                    mask,
                }
            })
            .collect();
        nodes.sort_by(|a, b| a.representative.cmp(&b.representative));
        let full_mask = complex.facet_mask(&Face::EMPTY);
        let full = nodes.iter().position(|n| n.mask == full_mask).expect("empty face star");
        StarPoset { complex: complex.clone(), nodes, full }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn nodes(&self) -> &[StarNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the node whose star is the whole complex.
    pub fn full_node(&self) -> usize {
        self.full
    }

    pub fn is_full(&self, id: usize) -> bool {
        id == self.full
    }

    /// Ids of nodes whose star is a proper subcomplex, in node order.
    pub fn proper_node_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&i| i != self.full)
    }

    /// Node containing the given face.
    pub fn node_of_face(&self, face: &Face) -> Result<usize, SimplicialError> {
        self.complex.require_face(face)?;
        let mask = self.complex.facet_mask(face);
        Ok(self
            .nodes
            .iter()
            .position(|n| n.mask == mask)
            .expect("every face belongs to a node"))
    }

    /// Star inclusion between nodes.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.nodes[a].mask & self.nodes[b].mask == self.nodes[a].mask
    }

    /// Covering pairs `(lo, hi)` with `lo < hi` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.nodes.len();
        let mut out = Vec::new();
        for lo in 0..m {
            for hi in 0..m {
                if lo == hi || !self.leq(lo, hi) || self.leq(hi, lo) {
                    continue;
                }
                let direct = !(0..m).any(|w| {
                    w != lo
                        && w != hi
                        && self.leq(lo, w)
                        && self.leq(w, hi)
                        && !self.leq(w, lo)
                        && !self.leq(hi, w)
                });
                if direct {
                    out.push((lo, hi));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Display label for a node: `K` for the full star, else `st(...)` with
    /// the representative face's monomial.
    pub fn label(&self, id: usize) -> String {
        if self.is_full(id) {
            "K".to_string()
        } else {
            format!("st({})", monomial_label(&self.nodes[id].representative))
        }
    }

    /// Hasse diagram in DOT format, edges pointing from smaller to larger star.
    pub fn dot(&self) -> String {
        let mut out = String::from("digraph star_poset {\n  rankdir=BT;\n");
        for id in 0..self.nodes.len() {
            out.push_str(&format!("  \"{}\";\n", self.label(id)));
        }
        for (lo, hi) in self.covers() {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", self.label(lo), self.label(hi)));
        }
        out.push_str("}\n");
        out
    }
}

/// File form of a complex: 1-based vertex lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> ComplexJson {
        ComplexJson {
            n_vertices: k.n_vertices(),
            facets: k
                .facets()
                .iter()
                .map(|f| f.vertices().iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}

impl TryFrom<&ComplexJson> for SimplicialComplex {
    type Error = SimplicialError;

    fn try_from(j: &ComplexJson) -> Result<SimplicialComplex, SimplicialError> {
        SimplicialComplex::build_1based(j.n_vertices, &j.facets)
    }
}

/// Undirected DOT drawing of a complex through its 1-skeleton; vertices are
/// labelled by the supplied names.
pub fn skeleton_dot(k: &SimplicialComplex, names: &[String]) -> String {
    assert_eq!(names.len(), k.n_vertices());
    let mut out = String::from("graph nerve {\n");
    for name in names {
        out.push_str(&format!("  \"{name}\";\n"));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for f in k.faces() {
        let vs = f.vertices();
        if vs.len() == 2 {
            edges.push((vs[0], vs[1]));
        }
    }
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", names[a], names[b]));
    }
    out.push_str("}\n");
    out
}
