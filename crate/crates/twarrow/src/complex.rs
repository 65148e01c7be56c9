//! Finite simplicial subcomplexes of a standard simplex.
//!
//! A complex is stored as a downward-closed family of nonempty vertex
//! subsets of a fixed, totally ordered ambient vertex set. Degenerate
//! simplices are never materialized. All operations are pure; values are
//! immutable and freely shareable across threads.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A vertex label: a plain index, or a twisted pair (row, index).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Label {
    Plain(u32),
    Tw { row: u8, idx: u32 },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Plain(i) => write!(f, "{i}"),
            Label::Tw { row, idx } => write!(f, "{row}{idx}"),
        }
    }
}

impl Label {
    /// Parses a label. Twisted labels are a row digit followed by the index.
    pub fn parse(s: &str, twisted: bool) -> Option<Label> {
        if twisted {
            let mut chars = s.chars();
            let row = match chars.next()? {
                '0' => 0u8,
                '1' => 1u8,
                _ => return None,
            };
            let rest = chars.as_str();
            let idx: u32 = rest.parse().ok()?;
            Some(Label::Tw { row, idx })
        } else {
            s.parse().ok().map(Label::Plain)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty ambient is not allowed")]
    EmptyAmbient,
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(Label),
    #[error("unknown vertex label {0}")]
    UnknownLabel(Label),
    #[error("ambient mismatch between operands")]
    AmbientMismatch,
    #[error("empty face is not allowed")]
    EmptyFace,
    #[error("subset {0:?} is not contained in {1:?}")]
    NotASubset(Vec<Label>, Vec<Label>),
    #[error("vertex map is not weakly order-preserving at source position {0}")]
    NotMonotone(usize),
    #[error("face does not belong to the source ambient of the map")]
    SourceMismatch,
    #[error("thin triangle {0} is not a 2-dimensional face of the complex")]
    ThinNotAFace(String),
    #[error("operation requires a twisted ambient tw(n)")]
    NotTwisted,
    #[error("argument out of range: {0}")]
    Range(String),
}

#[derive(Debug, PartialEq, Eq)]
struct AmbientData {
    labels: Vec<Label>,
}

/// A finite totally ordered vertex set. The order is fixed at construction;
/// faces are identified with bitmasks over vertex positions.
#[derive(Clone, Debug)]
pub struct Ambient(Arc<AmbientData>);

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}
impl Eq for Ambient {}

impl Ambient {
    pub fn new(labels: Vec<Label>) -> Result<Ambient, ComplexError> {
        if labels.is_empty() {
            return Err(ComplexError::EmptyAmbient);
        }
        assert!(labels.len() <= 64, "ambient too large for bitmask faces");
        let mut seen = BTreeSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(ComplexError::DuplicateLabel(l));
            }
        }
        Ok(Ambient(Arc::new(AmbientData { labels })))
    }

    /// The plain simplex ambient `0 < 1 < … < n`.
    pub fn simplex(n: u32) -> Ambient {
        Ambient::new((0..=n).map(Label::Plain).collect()).unwrap()
    }

    /// The twisted ambient `00 < 01 < … < 0n < 1n < 1(n-1) < … < 10`.
    pub fn twisted(n: u32) -> Ambient {
        let mut labels: Vec<Label> = (0..=n).map(|i| Label::Tw { row: 0, idx: i }).collect();
        labels.extend((0..=n).rev().map(|i| Label::Tw { row: 1, idx: i }));
        Ambient::new(labels).unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[Label] {
        &self.0.labels
    }

    pub fn label(&self, pos: usize) -> Label {
        self.0.labels[pos]
    }

    pub fn position(&self, label: Label) -> Result<usize, ComplexError> {
        self.0
            .labels
            .iter()
            .position(|&l| l == label)
            .ok_or(ComplexError::UnknownLabel(label))
    }

    /// Returns `n` when this ambient is exactly `tw(n)`.
    pub fn twisted_level(&self) -> Option<u32> {
        let len = self.len();
        if len < 2 || !len.is_multiple_of(2) {
            return None;
        }
        let n = (len / 2 - 1) as u32;
        if *self == Ambient::twisted(n) {
            Some(n)
        } else {
            None
        }
    }

    /// Returns `n` when this ambient is exactly the plain simplex on `[n]`.
    pub fn simplex_level(&self) -> Option<u32> {
        let n = (self.len() - 1) as u32;
        if *self == Ambient::simplex(n) {
            Some(n)
        } else {
            None
        }
    }

    /// The face spanning every ambient vertex.
    pub fn top_face(&self) -> Face {
        Face(((1u128 << self.len()) - 1) as u64)
    }

    pub fn face_from_labels(&self, labels: &[Label]) -> Result<Face, ComplexError> {
        let mut mask = 0u64;
        for &l in labels {
            mask |= 1 << self.position(l)?;
        }
        if mask == 0 {
            return Err(ComplexError::EmptyFace);
        }
        Ok(Face(mask))
    }

    pub fn face_labels(&self, face: Face) -> Vec<Label> {
        face.positions().map(|p| self.label(p)).collect()
    }

    pub fn face_string(&self, face: Face) -> String {
        let labels: Vec<String> = self.face_labels(face).iter().map(|l| l.to_string()).collect();
        labels.join(" ")
    }
}

/// A nonempty set of ambient vertex positions, encoded as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face(pub u64);

impl Face {
    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Face {
        let mut mask = 0u64;
        for p in positions {
            mask |= 1 << p;
        }
        Face(mask)
    }

    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |p| mask & (1 << p) != 0)
    }

    pub fn vertex_count(self) -> u32 {
        self.0.count_ones()
    }

    /// Dimension, i.e. vertex count minus one.
    pub fn dim(self) -> i32 {
        self.0.count_ones() as i32 - 1
    }

    pub fn contains(self, other: Face) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn remove(self, pos: usize) -> Face {
        Face(self.0 & !(1 << pos))
    }

    pub fn insert(self, pos: usize) -> Face {
        Face(self.0 | (1 << pos))
    }

    pub fn has(self, pos: usize) -> bool {
        self.0 & (1 << pos) != 0
    }

    /// All nonempty subsets, including the face itself.
    pub fn subfaces(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        std::iter::successors(Some(full), move |&m| {
            if m == 0 {
                None
            } else {
                Some((m - 1) & full)
            }
        })
        .filter(|&m| m != 0)
        .map(Face)
    }

    /// Codimension-one subfaces.
    pub fn facets(self) -> impl Iterator<Item = Face> {
        self.positions().map(move |p| self.remove(p))
    }

    /// Canonical order: by dimension, then lexicographically on the sorted
    /// vertex position list.
    pub fn canonical_cmp(self, other: Face) -> std::cmp::Ordering {
        self.vertex_count()
            .cmp(&other.vertex_count())
            .then_with(|| {
                let a: Vec<usize> = self.positions().collect();
                let b: Vec<usize> = other.positions().collect();
                a.cmp(&b)
            })
    }
}

/// A downward-closed family of nonempty faces of a fixed ambient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subcomplex {
    ambient: Ambient,
    faces: BTreeSet<Face>,
}

impl Subcomplex {
    pub fn empty(ambient: Ambient) -> Subcomplex {
        Subcomplex { ambient, faces: BTreeSet::new() }
    }

    /// The full simplex on the ambient vertex set.
    pub fn full(ambient: Ambient) -> Subcomplex {
        let top = ambient.top_face();
        Subcomplex::closure_of(ambient, top)
    }

    /// Downward closure of a single face.
    pub fn closure_of(ambient: Ambient, face: Face) -> Subcomplex {
        let faces = face.subfaces().collect();
        Subcomplex { ambient, faces }
    }

    /// Smallest downward-closed family containing every generator.
    pub fn spanned(ambient: Ambient, generators: &[Vec<Label>]) -> Result<Subcomplex, ComplexError> {
        let mut faces = BTreeSet::new();
        for g in generators {
            if g.is_empty() {
                return Err(ComplexError::EmptyFace);
            }
            let face = ambient.face_from_labels(g)?;
            faces.extend(face.subfaces());
        }
        Ok(Subcomplex { ambient, faces })
    }

    /// Closure of a set of faces given by masks.
    pub fn spanned_by_faces(ambient: Ambient, generators: &[Face]) -> Subcomplex {
        let mut faces = BTreeSet::new();
        for g in generators {
            faces.extend(g.subfaces());
        }
        Subcomplex { ambient, faces }
    }

    /// The horn `Λ^I_M`: the union over `i ∈ I−M` of the closures of `I−{i}`.
    /// For `M = ∅` this is the boundary of `Δ^I`; for `M = I` it is empty.
    pub fn horn(ambient: Ambient, i_face: Face, m_face: Face) -> Result<Subcomplex, ComplexError> {
        if !i_face.contains(m_face) {
            return Err(ComplexError::NotASubset(
                ambient.face_labels(m_face),
                ambient.face_labels(i_face),
            ));
        }
        let generators: Vec<Face> = i_face
            .positions()
            .filter(|&p| !m_face.has(p))
            .map(|p| i_face.remove(p))
            .filter(|f| f.0 != 0)
            .collect();
        Ok(Subcomplex::spanned_by_faces(ambient, &generators))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied()
    }

    pub fn face_set(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn contains_face(&self, f: Face) -> bool {
        self.faces.contains(&f)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces_of_dim(&self, d: i32) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied().filter(move |f| f.dim() == d)
    }

    pub fn dim(&self) -> i32 {
        self.faces.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    /// Faces in canonical order: by dimension, then lexicographic.
    pub fn canonical_faces(&self) -> Vec<Face> {
        let mut v: Vec<Face> = self.faces.iter().copied().collect();
        v.sort_by(|a, b| a.canonical_cmp(*b));
        v
    }

    fn check_ambient(&self, other: &Subcomplex) -> Result<(), ComplexError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(ComplexError::AmbientMismatch)
        }
    }

    pub fn union(&self, other: &Subcomplex) -> Result<Subcomplex, ComplexError> {
        self.check_ambient(other)?;
        let faces = self.faces.union(&other.faces).copied().collect();
        Ok(Subcomplex { ambient: self.ambient.clone(), faces })
    }

    pub fn intersection(&self, other: &Subcomplex) -> Result<Subcomplex, ComplexError> {
        self.check_ambient(other)?;
        let faces = self.faces.intersection(&other.faces).copied().collect();
        Ok(Subcomplex { ambient: self.ambient.clone(), faces })
    }

    pub fn is_subcomplex_of(&self, other: &Subcomplex) -> bool {
        self.ambient == other.ambient && self.faces.is_subset(&other.faces)
    }

    /// Exhaustive downward-closure check.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| f.subfaces().all(|s| self.faces.contains(&s)))
    }

    /// Reads the face family against the reversed ambient order. An
    /// involution; on `tw(n)` it coincides with the conjugate relabeling.
    pub fn order_reverse(&self) -> Subcomplex {
        let n = self.ambient.len();
        let faces = self
            .faces
            .iter()
            .map(|f| Face::from_positions(f.positions().map(|p| n - 1 - p)))
            .collect();
        Subcomplex { ambient: self.ambient.clone(), faces }
    }

    /// Image under a vertex map. The image of a downward-closed family under
    /// a weakly order-preserving map is downward closed.
    pub fn map_image(&self, map: &VertexMap) -> Result<Subcomplex, ComplexError> {
        if self.ambient != *map.source() {
            return Err(ComplexError::SourceMismatch);
        }
        let faces = self.faces.iter().map(|&f| map.apply(f)).collect();
        Ok(Subcomplex { ambient: map.target().clone(), faces })
    }

    /// Face-list text format: one face per line, `k: v0 v1 … vk`,
    /// canonically sorted.
    pub fn render_face_list(&self) -> String {
        let mut out = String::new();
        for face in self.canonical_faces() {
            out.push_str(&format!("{}: {}\n", face.dim(), self.ambient.face_string(face)));
        }
        out
    }
}

/// A weakly order-preserving total map between ambient vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    source: Ambient,
    target: Ambient,
    map: Vec<usize>,
}

impl VertexMap {
    pub fn new(source: Ambient, target: Ambient, map: Vec<usize>) -> Result<VertexMap, ComplexError> {
        assert_eq!(map.len(), source.len(), "vertex map must be total");
        for w in map.windows(2) {
            if w[0] > w[1] {
                return Err(ComplexError::NotMonotone(1));
            }
        }
        if let Some(&m) = map.iter().max() {
            if m >= target.len() {
                return Err(ComplexError::Range(format!("target position {m} out of range")));
            }
        }
        Ok(VertexMap { source, target, map })
    }

    pub fn identity(ambient: Ambient) -> VertexMap {
        let map = (0..ambient.len()).collect();
        VertexMap { source: ambient.clone(), target: ambient, map }
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn positions(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.map.windows(2).all(|w| w[0] < w[1])
    }

    pub fn apply(&self, face: Face) -> Face {
        Face::from_positions(face.positions().map(|p| self.map[p]))
    }

    pub fn compose(&self, then: &VertexMap) -> Result<VertexMap, ComplexError> {
        if self.target != then.source {
            return Err(ComplexError::AmbientMismatch);
        }
        let map = self.map.iter().map(|&p| then.map[p]).collect();
        VertexMap::new(self.source.clone(), then.target.clone(), map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(ns: &[u32]) -> Vec<Label> {
        ns.iter().map(|&i| Label::Plain(i)).collect()
    }

    #[test]
    fn full_simplex_closure_has_all_subsets() {
        let amb = Ambient::simplex(3);
        let s = Subcomplex::spanned(amb, &[plain(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(s.face_count(), 15);
        assert!(s.is_downward_closed());
    }

    #[test]
    fn spanned_empty_is_empty() {
        let amb = Ambient::simplex(2);
        let s = Subcomplex::spanned(amb, &[]).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn spanned_unknown_label_errors() {
        let amb = Ambient::simplex(2);
        let err = Subcomplex::spanned(amb, &[plain(&[0, 7])]).unwrap_err();
        assert_eq!(err, ComplexError::UnknownLabel(Label::Plain(7)));
    }

    #[test]
    fn horn_definition_unrolled() {
        let amb = Ambient::simplex(3);
        let top = amb.top_face();
        let m = amb.face_from_labels(&plain(&[1])).unwrap();
        let horn = Subcomplex::horn(amb.clone(), top, m).unwrap();
        let expected = Subcomplex::spanned(
            amb,
            &[plain(&[1, 2, 3]), plain(&[0, 1, 3]), plain(&[0, 1, 2])],
        )
        .unwrap();
        assert_eq!(horn, expected);
    }

    #[test]
    fn horn_boundary_case() {
        let amb = Ambient::simplex(3);
        let top = amb.top_face();
        let horn = Subcomplex::horn(amb.clone(), top, Face(0)).unwrap();
        let full = Subcomplex::full(amb);
        assert_eq!(horn.face_count(), full.face_count() - 1);
        assert!(!horn.contains_face(top));
    }

    #[test]
    fn horn_facet_counts() {
        for n in 2..=5u32 {
            let amb = Ambient::simplex(n);
            let top = amb.top_face();
            for m_mask in 0..(1u64 << (n + 1)) {
                let m = Face(m_mask);
                if !top.contains(m) {
                    continue;
                }
                let horn = Subcomplex::horn(amb.clone(), top, m).unwrap();
                let facets = horn.faces_of_dim(n as i32 - 1).count();
                assert_eq!(facets as u32, n + 1 - m.vertex_count());
            }
        }
    }

    #[test]
    fn horn_extension_identity() {
        // horn(I, M) ∪ closure(I−{v}) = horn(I, M−{v})
        let amb = Ambient::simplex(4);
        let top = amb.top_face();
        let m = Face::from_positions([1, 3]);
        let horn = Subcomplex::horn(amb.clone(), top, m).unwrap();
        let facet = Subcomplex::closure_of(amb.clone(), top.remove(3));
        let bigger = Subcomplex::horn(amb, top, Face::from_positions([1])).unwrap();
        assert_eq!(horn.union(&facet).unwrap(), bigger);
    }

    #[test]
    fn union_with_empty_is_identity() {
        let amb = Ambient::simplex(3);
        let a = Subcomplex::spanned(amb.clone(), &[plain(&[0, 2, 3])]).unwrap();
        let e = Subcomplex::empty(amb);
        assert_eq!(a.union(&e).unwrap(), a);
    }

    #[test]
    fn lambda31_meets_face_023() {
        // brute-force cross-check of an intersection against hand enumeration
        let amb = Ambient::simplex(3);
        let top = amb.top_face();
        let horn = Subcomplex::horn(amb.clone(), top, Face::from_positions([1])).unwrap();
        let face = Subcomplex::spanned(amb.clone(), &[plain(&[0, 2, 3])]).unwrap();
        let meet = horn.intersection(&face).unwrap();
        let expected =
            Subcomplex::spanned(amb, &[plain(&[2, 3]), plain(&[0, 3]), plain(&[0, 2])]).unwrap();
        assert_eq!(meet, expected);
    }

    #[test]
    fn order_reverse_swaps_inner_horns() {
        let amb = Ambient::simplex(3);
        let top = amb.top_face();
        let l1 = Subcomplex::horn(amb.clone(), top, Face::from_positions([1])).unwrap();
        let l2 = Subcomplex::horn(amb, top, Face::from_positions([2])).unwrap();
        assert_eq!(l1.order_reverse(), l2);
        assert_eq!(l1.order_reverse().order_reverse(), l1);
    }

    #[test]
    fn full_simplex_is_order_reverse_invariant() {
        let amb = Ambient::simplex(4);
        let full = Subcomplex::full(amb);
        assert_eq!(full.order_reverse(), full);
    }

    #[test]
    fn twisted_ambient_order() {
        let amb = Ambient::twisted(2);
        let labels: Vec<String> = amb.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, vec!["00", "01", "02", "12", "11", "10"]);
    }

    #[test]
    fn face_counts_of_full_twisted_simplex() {
        for n in 0..=4u32 {
            let amb = Ambient::twisted(n);
            let full = Subcomplex::full(amb);
            let verts = 2 * n + 2;
            for k in 0..verts {
                let expected = binomial(verts as u64, k as u64 + 1);
                assert_eq!(full.faces_of_dim(k as i32).count() as u64, expected);
            }
        }
    }

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut r = 1u64;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn map_image_of_identity() {
        let amb = Ambient::simplex(3);
        let s = Subcomplex::spanned(amb.clone(), &[plain(&[0, 1, 3])]).unwrap();
        let id = VertexMap::identity(amb);
        assert_eq!(s.map_image(&id).unwrap(), s);
    }

    #[test]
    fn map_image_collapses_degeneracies() {
        // s^0 : Δ^2 → Δ^1 collapsing 0,1
        let src = Ambient::simplex(2);
        let tgt = Ambient::simplex(1);
        let map = VertexMap::new(src.clone(), tgt.clone(), vec![0, 0, 1]).unwrap();
        let s = Subcomplex::full(src);
        let img = s.map_image(&map).unwrap();
        assert_eq!(img, Subcomplex::full(tgt));
    }

    #[test]
    fn vertex_map_rejects_non_monotone() {
        let src = Ambient::simplex(1);
        let tgt = Ambient::simplex(1);
        assert!(VertexMap::new(src, tgt, vec![1, 0]).is_err());
    }
}
