//! Scaled subcomplexes: thin-triangle bookkeeping.
//!
//! A scaled complex is a subcomplex together with a set of 2-dimensional
//! faces marked thin. Degenerate thin triangles are implicit and never
//! stored. Equality is equality of the face set and the thin set.

use std::collections::BTreeSet;

use crate::complex::{Ambient, ComplexError, Face, Subcomplex};

/// Constructor mode for [`ScaledComplex::make`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalingMode {
    /// Mark every 2-dimensional face thin.
    Sharp,
    /// Mark no nondegenerate triangle thin.
    Flat,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledComplex {
    complex: Subcomplex,
    thin: BTreeSet<Face>,
}

impl ScaledComplex {
    /// Sharp or flat scaling of a subcomplex.
    pub fn make(complex: Subcomplex, mode: ScalingMode) -> ScaledComplex {
        let thin = match mode {
            ScalingMode::Sharp => complex.faces_of_dim(2).collect(),
            ScalingMode::Flat => BTreeSet::new(),
        };
        ScaledComplex { complex, thin }
    }

    /// Explicit scaling. Every listed triangle must be a 2-dimensional face
    /// of the complex.
    pub fn explicit(complex: Subcomplex, thin: BTreeSet<Face>) -> Result<ScaledComplex, ComplexError> {
        for &t in &thin {
            if t.dim() != 2 || !complex.contains_face(t) {
                return Err(ComplexError::ThinNotAFace(complex.ambient().face_string(t)));
            }
        }
        Ok(ScaledComplex { complex, thin })
    }

    /// Restriction of a parent scaling to a subcomplex: `thin ∩ faces(sub)`.
    pub fn induce(&self, sub: Subcomplex) -> Result<ScaledComplex, ComplexError> {
        if !sub.is_subcomplex_of(&self.complex) {
            return Err(ComplexError::NotASubset(vec![], vec![]));
        }
        let thin = self.thin.iter().copied().filter(|t| sub.contains_face(*t)).collect();
        Ok(ScaledComplex { complex: sub, thin })
    }

    /// Same complex with extra thin triangles.
    pub fn add_thin(&self, extra: &BTreeSet<Face>) -> Result<ScaledComplex, ComplexError> {
        for &t in extra {
            if t.dim() != 2 || !self.complex.contains_face(t) {
                return Err(ComplexError::ThinNotAFace(self.complex.ambient().face_string(t)));
            }
        }
        let thin = self.thin.union(extra).copied().collect();
        Ok(ScaledComplex { complex: self.complex.clone(), thin })
    }

    /// The conjugate of a scaled subcomplex of `tw(n)`: order reversal
    /// composed with the row swap `0i ↔ 1i`. On positions the two cancel to
    /// plain reversal, so this is an involution.
    pub fn conj(&self) -> Result<ScaledComplex, ComplexError> {
        if self.complex.ambient().twisted_level().is_none() {
            return Err(ComplexError::NotTwisted);
        }
        Ok(self.order_reverse())
    }

    /// Face family and thin set read against the reversed ambient order.
    pub fn order_reverse(&self) -> ScaledComplex {
        let n = self.complex.ambient().len();
        let complex = self.complex.order_reverse();
        let thin = self
            .thin
            .iter()
            .map(|f| Face::from_positions(f.positions().map(|p| n - 1 - p)))
            .collect();
        ScaledComplex { complex, thin }
    }

    pub fn complex(&self) -> &Subcomplex {
        &self.complex
    }

    pub fn ambient(&self) -> &Ambient {
        self.complex.ambient()
    }

    pub fn thin(&self) -> &BTreeSet<Face> {
        &self.thin
    }

    pub fn is_thin(&self, f: Face) -> bool {
        self.thin.contains(&f)
    }

    pub fn union(&self, other: &ScaledComplex) -> Result<ScaledComplex, ComplexError> {
        let complex = self.complex.union(&other.complex)?;
        let thin = self.thin.union(&other.thin).copied().collect();
        Ok(ScaledComplex { complex, thin })
    }

    pub fn intersection(&self, other: &ScaledComplex) -> Result<ScaledComplex, ComplexError> {
        let complex = self.complex.intersection(&other.complex)?;
        let thin = self.thin.intersection(&other.thin).copied().collect();
        Ok(ScaledComplex { complex, thin })
    }

    pub fn is_scaled_subcomplex_of(&self, other: &ScaledComplex) -> bool {
        self.complex.is_subcomplex_of(&other.complex) && self.thin.is_subset(&other.thin)
    }

    /// Thin set sanity: every thin triangle is a 2-face of the complex.
    pub fn thin_is_valid(&self) -> bool {
        self.thin.iter().all(|&t| t.dim() == 2 && self.complex.contains_face(t))
    }

    /// Face-list export with `thin: a b c` lines appended.
    pub fn render(&self) -> String {
        let mut out = self.complex.render_face_list();
        let mut thins: Vec<Face> = self.thin.iter().copied().collect();
        thins.sort_by(|a, b| a.canonical_cmp(*b));
        for t in thins {
            out.push_str(&format!("thin: {}\n", self.ambient().face_string(t)));
        }
        out
    }
}
