//! Certificate data model and verification kernel for scaled-anodyne
//! inclusions.
//!
//! A certificate witnesses an inclusion `small → big` of scaled
//! subcomplexes of a fixed ambient as a sequence of pushout attachments.
//! Each step is justified by a generator instance (An1, An2), a trusted
//! rule, or a previously certified inclusion. Replay is exact: a step with
//! embedded domain `D` and codomain `E` is accepted against the current
//! complex `C` only when `C ∩ E = D` on faces and thin sets; the state then
//! becomes `C ∪ E`. A certificate passes when replay reconstructs `big`
//! from `small` on the nose.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{Ambient, Face, Subcomplex};
use crate::constructions::{k_complex, q};
use crate::scaling::ScaledComplex;

/// Identifiers of the trusted rules. An3 is listed with the generators for
/// documentation but has no matcher: its codomain is a quotient, which the
/// subcomplex representation cannot express, and no in-scope certificate
/// uses it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum RuleId {
    /// `(Λ^n_i)_♯ → (Δ^n)_♯` is scaled anodyne for `0 < i < n`.
    SharpInnerHorn,
    /// If every triangle of a 3-simplex other than the face opposite its
    /// second vertex is thin, marking that face thin is scaled anodyne.
    Thin3Simplex,
    /// `(K^n_i)_S → Q(n)` is scaled anodyne for `0 < i < n`.
    GsK,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::SharpInnerHorn => "R-SHARP-INNER-HORN",
            RuleId::Thin3Simplex => "R-THIN-3SIMPLEX",
            RuleId::GsK => "AX-GS-K",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::SharpInnerHorn => "Lurie, Remark 3.1.5",
            RuleId::Thin3Simplex => "Lurie, Remark 3.1.4",
            RuleId::GsK => "Abellan Garcia-Stern, Lemmas 2.10.1 and 2.12.1",
        }
    }

    pub fn parse(s: &str) -> Option<RuleId> {
        match s {
            "R-SHARP-INNER-HORN" => Some(RuleId::SharpInnerHorn),
            "R-THIN-3SIMPLEX" => Some(RuleId::Thin3Simplex),
            "AX-GS-K" => Some(RuleId::GsK),
            _ => None,
        }
    }

    pub fn all() -> [RuleId; 3] {
        [RuleId::SharpInnerHorn, RuleId::Thin3Simplex, RuleId::GsK]
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Multiset of trusted rules used by a certificate.
pub type TrustBase = BTreeMap<RuleId, usize>;

pub fn render_trust(trust: &TrustBase) -> String {
    if trust.is_empty() {
        return "-".to_string();
    }
    trust
        .iter()
        .map(|(r, c)| format!("{}:{}", r.name(), c))
        .collect::<Vec<_>>()
        .join(",")
}

/// Step justification. Embeddings list target ambient positions in source
/// order: strictly increasing for everything except An2, whose embedding is
/// weakly increasing and may collapse one adjacent pair of vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Justification {
    An1 { n: u32, i: u32, embed: Vec<usize> },
    An2 { embed: Vec<usize> },
    Trusted { rule: RuleId, i: u32, embed: Vec<usize> },
    Derived { cert_id: String, embed: Vec<usize> },
}

/// One pushout attachment, together with the faces and thin triangles it
/// claims to add. Replay recomputes both from the justification and fails
/// on any mismatch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub just: Justification,
    pub added_faces: BTreeSet<Face>,
    pub added_thins: BTreeSet<Face>,
}

/// The claim of a certificate: an inclusion of scaled subcomplexes of one
/// ambient. The small complex must be a scaled subcomplex of the big one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledInclusion {
    pub small: ScaledComplex,
    pub big: ScaledComplex,
}

impl ScaledInclusion {
    pub fn new(small: ScaledComplex, big: ScaledComplex) -> Result<ScaledInclusion, String> {
        if small.ambient() != big.ambient() {
            return Err("claim: small and big live in different ambients".into());
        }
        if !small.complex().is_subcomplex_of(big.complex()) {
            return Err("claim: small is not a subcomplex of big".into());
        }
        if !small.thin().is_subset(big.thin()) {
            return Err("claim: small thin set is not contained in big thin set".into());
        }
        Ok(ScaledInclusion { small, big })
    }

    pub fn ambient(&self) -> &Ambient {
        self.small.ambient()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub id: String,
    pub claim: ScaledInclusion,
    pub steps: Vec<Step>,
}

/// Registry of certificates for `derived` references.
#[derive(Default, Clone)]
pub struct CertStore {
    map: BTreeMap<String, Certificate>,
}

impl CertStore {
    pub fn new() -> CertStore {
        CertStore::default()
    }

    pub fn insert(&mut self, cert: Certificate) {
        self.map.insert(cert.id.clone(), cert);
    }

    pub fn get(&self, id: &str) -> Option<&Certificate> {
        self.map.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepFailure {
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub pass: bool,
    pub trust: TrustBase,
    pub failure: Option<StepFailure>,
}

impl VerifyReport {
    fn fail(step: usize, reason: String) -> VerifyReport {
        VerifyReport { pass: false, trust: TrustBase::new(), failure: Some(StepFailure { step, reason }) }
    }
}

fn remap(face: Face, embed: &[usize]) -> Face {
    Face::from_positions(face.positions().map(|p| embed[p]))
}

fn remap_scaled(s: &ScaledComplex, embed: &[usize], ambient: &Ambient) -> ScaledComplex {
    let faces: Vec<Face> = s.complex().faces().map(|f| remap(f, embed)).collect();
    let complex = Subcomplex::spanned_by_faces(ambient.clone(), &faces);
    let thin: BTreeSet<Face> =
        s.thin().iter().map(|&t| remap(t, embed)).filter(|t| t.dim() == 2).collect();
    ScaledComplex::explicit(complex, thin).expect("remapped thin set")
}

fn check_embed(embed: &[usize], ambient: &Ambient, strict: bool) -> Result<(), String> {
    for &p in embed {
        if p >= ambient.len() {
            return Err(format!("embedding position {p} outside the ambient"));
        }
    }
    for w in embed.windows(2) {
        if strict && w[0] >= w[1] {
            return Err("embedding must be strictly order-preserving".into());
        }
        if !strict && w[0] > w[1] {
            return Err("embedding must be weakly order-preserving".into());
        }
    }
    Ok(())
}

/// An2 source thin triangles, as index triples into the 5 generator vertices.
const AN2_SOURCE: [[usize; 3]; 5] = [[0, 2, 4], [1, 2, 3], [0, 1, 3], [1, 3, 4], [0, 1, 2]];
/// An2 added thin triangles.
const AN2_ADDED: [[usize; 3]; 2] = [[0, 3, 4], [0, 1, 4]];

/// Instantiates a justification as an embedded (domain, codomain) pair of
/// scaled complexes in the given ambient.
fn instantiate(
    just: &Justification,
    ambient: &Ambient,
    store: &CertStore,
    stack: &mut Vec<String>,
) -> Result<(ScaledComplex, ScaledComplex, TrustBase), String> {
    match just {
        Justification::An1 { n, i, embed } => {
            if !(*n >= 2 && 0 < *i && *i < *n) {
                return Err(format!("an1 requires n ≥ 2 and 0 < i < n, got n={n} i={i}"));
            }
            if embed.len() != *n as usize + 1 {
                return Err("an1 embedding has the wrong arity".into());
            }
            check_embed(embed, ambient, true)?;
            let top = Face::from_positions(embed.iter().copied());
            let witness = Face::from_positions([
                embed[*i as usize - 1],
                embed[*i as usize],
                embed[*i as usize + 1],
            ]);
            let horn =
                Subcomplex::horn(ambient.clone(), top, Face::from_positions([embed[*i as usize]]))
                    .unwrap();
            let d_thin: BTreeSet<Face> =
                [witness].into_iter().filter(|t| horn.contains_face(*t)).collect();
            let d = ScaledComplex::explicit(horn, d_thin).unwrap();
            let e = ScaledComplex::explicit(
                Subcomplex::closure_of(ambient.clone(), top),
                [witness].into_iter().collect(),
            )
            .unwrap();
            Ok((d, e, TrustBase::new()))
        }
        Justification::An2 { embed } => {
            if embed.len() != 5 {
                return Err("an2 embedding has the wrong arity".into());
            }
            check_embed(embed, ambient, false)?;
            let distinct: BTreeSet<usize> = embed.iter().copied().collect();
            if distinct.len() < 4 {
                return Err("an2 embedding may collapse at most one adjacent pair".into());
            }
            let image = Face::from_positions(embed.iter().copied());
            let complex = Subcomplex::closure_of(ambient.clone(), image);
            let src: BTreeSet<Face> = AN2_SOURCE
                .iter()
                .map(|t| Face::from_positions(t.iter().map(|&k| embed[k])))
                .filter(|f| f.dim() == 2)
                .collect();
            let mut all = src.clone();
            all.extend(
                AN2_ADDED
                    .iter()
                    .map(|t| Face::from_positions(t.iter().map(|&k| embed[k])))
                    .filter(|f| f.dim() == 2),
            );
            let d = ScaledComplex::explicit(complex.clone(), src).unwrap();
            let e = ScaledComplex::explicit(complex, all).unwrap();
            Ok((d, e, TrustBase::new()))
        }
        Justification::Trusted { rule, i, embed } => {
            let mut trust = TrustBase::new();
            *trust.entry(*rule).or_insert(0) += 1;
            match rule {
                RuleId::SharpInnerHorn => {
                    let n = embed.len() as u32 - 1;
                    if !(0 < *i && *i < n) {
                        return Err(format!("sharp inner horn requires 0 < i < n, got i={i} n={n}"));
                    }
                    check_embed(embed, ambient, true)?;
                    let top = Face::from_positions(embed.iter().copied());
                    let horn = Subcomplex::horn(
                        ambient.clone(),
                        top,
                        Face::from_positions([embed[*i as usize]]),
                    )
                    .unwrap();
                    let d_thin: BTreeSet<Face> = horn.faces_of_dim(2).collect();
                    let full = Subcomplex::closure_of(ambient.clone(), top);
                    let e_thin: BTreeSet<Face> = full.faces_of_dim(2).collect();
                    Ok((
                        ScaledComplex::explicit(horn, d_thin).unwrap(),
                        ScaledComplex::explicit(full, e_thin).unwrap(),
                        trust,
                    ))
                }
                RuleId::Thin3Simplex => {
                    if embed.len() != 4 {
                        return Err("thin 3-simplex rule needs a 4-vertex embedding".into());
                    }
                    check_embed(embed, ambient, true)?;
                    let top = Face::from_positions(embed.iter().copied());
                    let tetra = Subcomplex::closure_of(ambient.clone(), top);
                    let exempt = Face::from_positions([embed[0], embed[2], embed[3]]);
                    let all: BTreeSet<Face> = tetra.faces_of_dim(2).collect();
                    let d_thin: BTreeSet<Face> =
                        all.iter().copied().filter(|&t| t != exempt).collect();
                    Ok((
                        ScaledComplex::explicit(tetra.clone(), d_thin).unwrap(),
                        ScaledComplex::explicit(tetra, all).unwrap(),
                        trust,
                    ))
                }
                RuleId::GsK => {
                    let len = embed.len() as u32;
                    if len < 4 || !len.is_multiple_of(2) {
                        return Err("AX-GS-K embedding must cover a twisted ambient".into());
                    }
                    let n = len / 2 - 1;
                    if !(0 < *i && *i < n) {
                        return Err(format!("AX-GS-K requires 0 < i < n, got i={i} n={n}"));
                    }
                    check_embed(embed, ambient, true)?;
                    let k = k_complex(n, *i).map_err(|e| e.to_string())?;
                    let d = remap_scaled(&k, embed, ambient);
                    let e = remap_scaled(&q(n), embed, ambient);
                    Ok((d, e, trust))
                }
            }
        }
        Justification::Derived { cert_id, embed } => {
            let cert = store
                .get(cert_id)
                .ok_or_else(|| format!("dangling certificate reference {cert_id}"))?;
            if stack.iter().any(|s| s == cert_id) {
                return Err(format!("cyclic certificate reference {cert_id}"));
            }
            if embed.len() != cert.claim.ambient().len() {
                return Err("derived embedding has the wrong arity".into());
            }
            check_embed(embed, ambient, true)?;
            stack.push(cert_id.clone());
            let report = verify_inner(cert, store, stack);
            stack.pop();
            if !report.pass {
                let detail = report
                    .failure
                    .map(|f| format!(" (step {}: {})", f.step, f.reason))
                    .unwrap_or_default();
                return Err(format!("derived certificate {cert_id} fails{detail}"));
            }
            let d = remap_scaled(&cert.claim.small, embed, ambient);
            let e = remap_scaled(&cert.claim.big, embed, ambient);
            Ok((d, e, report.trust))
        }
    }
}

fn diff_summary(ambient: &Ambient, label: &str, got: &BTreeSet<Face>, want: &BTreeSet<Face>) -> String {
    let extra: Vec<String> =
        got.difference(want).take(4).map(|&f| ambient.face_string(f)).collect();
    let missing: Vec<String> =
        want.difference(got).take(4).map(|&f| ambient.face_string(f)).collect();
    let mut parts = Vec::new();
    if !extra.is_empty() {
        parts.push(format!("unexpected [{}]", extra.join("; ")));
    }
    if !missing.is_empty() {
        parts.push(format!("missing [{}]", missing.join("; ")));
    }
    format!("{label} equation violated: {}", parts.join(", "))
}

/// Replays a certificate. PASS means every step satisfied the exact pushout
/// equations and the final state equals the claimed big complex.
pub fn verify(cert: &Certificate, store: &CertStore) -> VerifyReport {
    let mut stack = Vec::new();
    verify_inner(cert, store, &mut stack)
}

fn verify_inner(cert: &Certificate, store: &CertStore, stack: &mut Vec<String>) -> VerifyReport {
    let ambient = cert.claim.ambient().clone();
    if ScaledInclusion::new(cert.claim.small.clone(), cert.claim.big.clone()).is_err() {
        return VerifyReport::fail(0, "claim is not a scaled inclusion".into());
    }
    let mut state = cert.claim.small.clone();
    let mut trust = TrustBase::new();
    for (idx, step) in cert.steps.iter().enumerate() {
        let k = idx + 1;
        let (d, e, step_trust) = match instantiate(&step.just, &ambient, store, stack) {
            Ok(v) => v,
            Err(msg) => return VerifyReport::fail(k, msg),
        };
        let meet_faces: BTreeSet<Face> =
            state.complex().face_set().intersection(e.complex().face_set()).copied().collect();
        if &meet_faces != d.complex().face_set() {
            return VerifyReport::fail(
                k,
                diff_summary(&ambient, "face", &meet_faces, d.complex().face_set()),
            );
        }
        let meet_thin: BTreeSet<Face> = state.thin().intersection(e.thin()).copied().collect();
        if &meet_thin != d.thin() {
            return VerifyReport::fail(k, diff_summary(&ambient, "thin-set", &meet_thin, d.thin()));
        }
        let added_faces: BTreeSet<Face> =
            e.complex().face_set().difference(state.complex().face_set()).copied().collect();
        let added_thins: BTreeSet<Face> = e.thin().difference(state.thin()).copied().collect();
        if added_faces.is_empty() && added_thins.is_empty() {
            return VerifyReport::fail(k, "step adds neither faces nor thin triangles".into());
        }
        if added_faces != step.added_faces {
            return VerifyReport::fail(
                k,
                diff_summary(&ambient, "recorded added-face", &step.added_faces, &added_faces),
            );
        }
        if added_thins != step.added_thins {
            return VerifyReport::fail(
                k,
                diff_summary(&ambient, "recorded added-thin", &step.added_thins, &added_thins),
            );
        }
        state = state.union(&e).expect("same ambient");
        for (r, c) in step_trust {
            *trust.entry(r).or_insert(0) += c;
        }
    }
    if state.complex() != cert.claim.big.complex() {
        return VerifyReport::fail(
            cert.steps.len(),
            diff_summary(
                &ambient,
                "final face",
                state.complex().face_set(),
                cert.claim.big.complex().face_set(),
            ),
        );
    }
    if state.thin() != cert.claim.big.thin() {
        return VerifyReport::fail(
            cert.steps.len(),
            diff_summary(&ambient, "final thin", state.thin(), cert.claim.big.thin()),
        );
    }
    VerifyReport { pass: true, trust, failure: None }
}

/// Collects the multiset of trusted rules used, transitively through
/// derived references. Errors on dangling references.
pub fn trust_base(cert: &Certificate, store: &CertStore) -> Result<TrustBase, String> {
    let mut trust = TrustBase::new();
    for step in &cert.steps {
        match &step.just {
            Justification::Trusted { rule, .. } => *trust.entry(*rule).or_insert(0) += 1,
            Justification::Derived { cert_id, .. } => {
                let sub = store
                    .get(cert_id)
                    .ok_or_else(|| format!("dangling certificate reference {cert_id}"))?;
                for (r, c) in trust_base(sub, store)? {
                    *trust.entry(r).or_insert(0) += c;
                }
            }
            _ => {}
        }
    }
    Ok(trust)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildError {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

/// Assembles a certificate from bare justifications, replaying them to fill
/// in and validate the per-step added faces and thin triangles.
pub fn assemble(
    id: &str,
    claim: ScaledInclusion,
    justs: Vec<Justification>,
    store: &CertStore,
) -> Result<Certificate, BuildError> {
    let ambient = claim.ambient().clone();
    let mut state = claim.small.clone();
    let mut steps = Vec::with_capacity(justs.len());
    let mut stack = Vec::new();
    for (idx, just) in justs.into_iter().enumerate() {
        let k = idx + 1;
        let (d, e, _) = instantiate(&just, &ambient, store, &mut stack)
            .map_err(|reason| BuildError { step: k, reason })?;
        let meet_faces: BTreeSet<Face> =
            state.complex().face_set().intersection(e.complex().face_set()).copied().collect();
        if &meet_faces != d.complex().face_set() {
            return Err(BuildError {
                step: k,
                reason: diff_summary(&ambient, "face", &meet_faces, d.complex().face_set()),
            });
        }
        let meet_thin: BTreeSet<Face> = state.thin().intersection(e.thin()).copied().collect();
        if &meet_thin != d.thin() {
            return Err(BuildError {
                step: k,
                reason: diff_summary(&ambient, "thin-set", &meet_thin, d.thin()),
            });
        }
        let added_faces: BTreeSet<Face> =
            e.complex().face_set().difference(state.complex().face_set()).copied().collect();
        let added_thins: BTreeSet<Face> = e.thin().difference(state.thin()).copied().collect();
        state = state.union(&e).expect("same ambient");
        steps.push(Step { just, added_faces, added_thins });
    }
    if state != claim.big {
        return Err(BuildError {
            step: steps.len(),
            reason: diff_summary(
                &ambient,
                "final face",
                state.complex().face_set(),
                claim.big.complex().face_set(),
            ) + "; "
                + &diff_summary(&ambient, "final thin", state.thin(), claim.big.thin()),
        });
    }
    Ok(Certificate { id: id.to_string(), claim, steps })
}

/// Builds a certificate from justifications without insisting that the
/// steps replay: the per-step added sets are filled from a best-effort
/// replay, and any defect is left for [`verify`] to report. Used when
/// reading certificate files, so that malformed proofs fail verification
/// rather than parsing.
pub fn assemble_lenient(
    id: &str,
    claim: ScaledInclusion,
    justs: Vec<Justification>,
    store: &CertStore,
) -> Certificate {
    let ambient = claim.ambient().clone();
    let mut state = claim.small.clone();
    let mut stack = Vec::new();
    let mut steps = Vec::with_capacity(justs.len());
    for just in justs {
        let (added_faces, added_thins) = match instantiate(&just, &ambient, store, &mut stack) {
            Ok((_, e, _)) => {
                let af: BTreeSet<Face> =
                    e.complex().face_set().difference(state.complex().face_set()).copied().collect();
                let at: BTreeSet<Face> = e.thin().difference(state.thin()).copied().collect();
                state = state.union(&e).expect("same ambient");
                (af, at)
            }
            Err(_) => (BTreeSet::new(), BTreeSet::new()),
        };
        steps.push(Step { just, added_faces, added_thins });
    }
    Certificate { id: id.to_string(), claim, steps }
}

// ---------------------------------------------------------------------------
// the horn lemma engine
// ---------------------------------------------------------------------------

/// A failed hypothesis of the horn lemma, returned as a value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisViolation(pub String);

impl fmt::Display for HypothesisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn mirror_vertices(n: u32, m: &BTreeSet<u32>) -> BTreeSet<u32> {
    m.iter().map(|&x| n - x).collect()
}

/// Checks the hypotheses of the horn lemma on a fully scaled `Δ^n`:
/// `M ⊆ [n]−{n}` nonempty, an admissible pivot `s` exists, `|M| ≤ n−2`,
/// the complementary triangle is not thin when `|M| = n−2`, and the
/// witness triangles `{b,t,t+1}` are thin for `s ≤ b < t`. The dual flag
/// checks the mirrored clauses.
pub fn check_lemma36_hypotheses(
    scaling: &ScaledComplex,
    m: &BTreeSet<u32>,
    dual: bool,
) -> Result<(), HypothesisViolation> {
    let n = match scaling.ambient().simplex_level() {
        Some(n) => n,
        None => return Err(HypothesisViolation("ambient must be a plain simplex".into())),
    };
    if scaling.complex() != &Subcomplex::full(scaling.ambient().clone()) {
        return Err(HypothesisViolation("scaling must live on the full simplex".into()));
    }
    if dual {
        return check_primal(n, &scaling.order_reverse(), &mirror_vertices(n, m), true);
    }
    check_primal(n, scaling, m, false)
}

fn check_primal(
    n: u32,
    scaling: &ScaledComplex,
    m: &BTreeSet<u32>,
    mirrored: bool,
) -> Result<(), HypothesisViolation> {
    let show = |v: u32| if mirrored { n - v } else { v };
    let show_tri = |a: u32, b: u32, c: u32| {
        let mut t = [show(a), show(b), show(c)];
        t.sort_unstable();
        format!("{} {} {}", t[0], t[1], t[2])
    };
    if n < 3 {
        return Err(HypothesisViolation(format!("need n ≥ 3, got n = {n}")));
    }
    if m.is_empty() {
        return Err(HypothesisViolation("M must be nonempty".into()));
    }
    if m.iter().any(|&x| x > n) {
        return Err(HypothesisViolation("M must consist of vertices of the simplex".into()));
    }
    if m.contains(&n) {
        return Err(HypothesisViolation(if mirrored {
            "M must avoid the bottom vertex".into()
        } else {
            "M must avoid the top vertex".into()
        }));
    }
    let t = *m.iter().max().unwrap();
    let s = match (0..t).rev().find(|b| !m.contains(b)) {
        Some(s) => s,
        None => {
            return Err(HypothesisViolation(
                "no admissible s: M contains every vertex below its extreme".into(),
            ))
        }
    };
    if m.len() as u32 > n - 2 {
        return Err(HypothesisViolation(format!("|M| = {} exceeds n−2 = {}", m.len(), n - 2)));
    }
    if m.len() as u32 == n - 2 {
        let complement = Face::from_positions((0..=n).filter(|v| !m.contains(v)).map(|v| v as usize));
        if scaling.is_thin(complement) {
            let vs: Vec<u32> = (0..=n).filter(|v| !m.contains(v)).collect();
            return Err(HypothesisViolation(format!(
                "triangle {} must not be thin when |M| = n−2",
                show_tri(vs[0], vs[1], vs[2])
            )));
        }
    }
    for b in s..t {
        let tri = Face::from_positions([b as usize, t as usize, t as usize + 1]);
        if !scaling.is_thin(tri) {
            return Err(HypothesisViolation(format!(
                "triangle {} is not thin",
                show_tri(b, t, t + 1)
            )));
        }
    }
    Ok(())
}

fn lemma36_steps(i_verts: &[usize], m: &BTreeSet<usize>) -> Vec<Justification> {
    if m.len() == 1 {
        let mv = *m.iter().next().unwrap();
        let i = i_verts.iter().position(|&v| v == mv).unwrap() as u32;
        return vec![Justification::An1 {
            n: i_verts.len() as u32 - 1,
            i,
            embed: i_verts.to_vec(),
        }];
    }
    let min_m = *m.iter().next().unwrap();
    let mut m_rest = m.clone();
    m_rest.remove(&min_m);
    let face: Vec<usize> = i_verts.iter().copied().filter(|&v| v != min_m).collect();
    let mut steps = lemma36_steps(&face, &m_rest);
    steps.extend(lemma36_steps(i_verts, &m_rest));
    steps
}

/// Emits the certificate for `Λ^n_{M,†} → Δ^n_†` built by the inductive
/// proof of the horn lemma: An1 instances only, peeling the least element
/// of `M` through the opposite facet. Refuses with the violated hypothesis
/// when the lemma does not apply.
pub fn lemma36(
    scaling: &ScaledComplex,
    m: &BTreeSet<u32>,
    dual: bool,
) -> Result<Certificate, HypothesisViolation> {
    check_lemma36_hypotheses(scaling, m, dual)?;
    let n = scaling.ambient().simplex_level().unwrap();
    let (work_scaling, work_m) = if dual {
        (scaling.order_reverse(), mirror_vertices(n, m))
    } else {
        (scaling.clone(), m.clone())
    };
    let all: Vec<usize> = (0..=n as usize).collect();
    let m_pos: BTreeSet<usize> = work_m.iter().map(|&v| v as usize).collect();
    let mut justs = lemma36_steps(&all, &m_pos);
    if dual {
        // mirror each step back; mirroring preserves the replay order
        justs = justs
            .into_iter()
            .map(|j| match j {
                Justification::An1 { n: k, i, embed } => {
                    let mut e: Vec<usize> = embed.into_iter().map(|p| n as usize - p).collect();
                    e.reverse();
                    Justification::An1 { n: k, i: k - i, embed: e }
                }
                other => other,
            })
            .collect();
    }
    let m_face = Face::from_positions(m.iter().map(|&v| v as usize));
    let horn =
        Subcomplex::horn(scaling.ambient().clone(), scaling.ambient().top_face(), m_face).unwrap();
    let small = scaling.induce(horn).unwrap();
    let claim = ScaledInclusion::new(small, scaling.clone()).expect("horn inclusion");
    let m_list: Vec<String> = m.iter().map(|v| v.to_string()).collect();
    let id = format!(
        "lemma36(n={n},M={{{}}}{})",
        m_list.join(","),
        if dual { ",dual" } else { "" }
    );
    let _ = work_scaling;
    assemble(&id, claim, justs, &CertStore::new())
        .map_err(|e| HypothesisViolation(format!("internal: emitted steps do not replay: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaling::ScalingMode;

    fn delta_with_thin(n: u32, thins: &[[u32; 3]]) -> ScaledComplex {
        let full = Subcomplex::full(Ambient::simplex(n));
        let thin: BTreeSet<Face> = thins
            .iter()
            .map(|t| Face::from_positions(t.iter().map(|&v| v as usize)))
            .collect();
        ScaledComplex::explicit(full, thin).unwrap()
    }

    fn mset(vs: &[u32]) -> BTreeSet<u32> {
        vs.iter().copied().collect()
    }

    #[test]
    fn base_case_single_an1_step() {
        let scaling = delta_with_thin(3, &[[0, 1, 2]]);
        let cert = lemma36(&scaling, &mset(&[1]), false).unwrap();
        assert_eq!(cert.steps.len(), 1);
        let report = verify(&cert, &CertStore::new());
        assert!(report.pass, "{:?}", report.failure);
        assert!(report.trust.is_empty());
    }

    #[test]
    fn base_case_fails_without_the_witness() {
        let scaling = delta_with_thin(3, &[[0, 1, 2]]);
        let cert = lemma36(&scaling, &mset(&[1]), false).unwrap();
        // strip the witness from the ambient scaling: claim and step no
        // longer agree on thin sets
        let flat = ScaledComplex::make(scaling.complex().clone(), ScalingMode::Flat);
        let small = flat.induce(cert.claim.small.complex().clone()).unwrap();
        let broken = Certificate {
            id: cert.id.clone(),
            claim: ScaledInclusion::new(small, flat).unwrap(),
            steps: cert.steps.clone(),
        };
        let report = verify(&broken, &CertStore::new());
        assert!(!report.pass);
        assert_eq!(report.failure.as_ref().unwrap().step, 1);
        assert!(report.failure.unwrap().reason.contains("thin-set"));
    }

    #[test]
    fn flat_scaling_is_refused() {
        let scaling = delta_with_thin(3, &[]);
        let err = lemma36(&scaling, &mset(&[1]), false).unwrap_err();
        assert_eq!(err.0, "triangle 0 1 2 is not thin");
    }

    #[test]
    fn low_dimension_is_refused() {
        let scaling = ScaledComplex::make(
            Subcomplex::full(Ambient::simplex(2)),
            ScalingMode::Sharp,
        );
        let err = check_lemma36_hypotheses(&scaling, &mset(&[1]), false).unwrap_err();
        assert!(err.0.contains("n ≥ 3"), "{}", err.0);
    }

    #[test]
    fn top_vertex_is_refused() {
        let scaling = delta_with_thin(5, &[[2, 4, 5], [3, 4, 5]]);
        let err = check_lemma36_hypotheses(&scaling, &mset(&[5]), false).unwrap_err();
        assert_eq!(err.0, "M must avoid the top vertex");
    }

    #[test]
    fn oversized_m_is_refused() {
        let scaling = ScaledComplex::make(Subcomplex::full(Ambient::simplex(4)), ScalingMode::Sharp);
        let err = check_lemma36_hypotheses(&scaling, &mset(&[1, 2, 3]), false).unwrap_err();
        assert!(err.0.contains("exceeds"));
    }

    #[test]
    fn complement_triangle_thin_is_refused() {
        let scaling = delta_with_thin(5, &[[2, 4, 5], [3, 4, 5], [0, 2, 5]]);
        let err = check_lemma36_hypotheses(&scaling, &mset(&[1, 3, 4]), false).unwrap_err();
        assert!(err.0.contains("0 2 5"), "{}", err.0);
    }

    #[test]
    fn paper_example_n5() {
        // n = 5, M = {1,3,4}: thin {2,4,5} and {3,4,5}, {0,2,5} not thin
        let scaling = delta_with_thin(5, &[[2, 4, 5], [3, 4, 5]]);
        let cert = lemma36(&scaling, &mset(&[1, 3, 4]), false).unwrap();
        assert_eq!(cert.steps.len(), 4);
        let report = verify(&cert, &CertStore::new());
        assert!(report.pass, "{:?}", report.failure);
        assert!(report.trust.is_empty());
    }

    #[test]
    fn dual_symmetry() {
        // dual form at n = 4, M = {2,3}: t = 2, s = 4, witnesses {1,2,b}
        let scaling = delta_with_thin(4, &[[1, 2, 3], [1, 2, 4]]);
        let m = mset(&[2, 3]);
        // dual on S equals order-reversed primal on order_reverse(S)
        let dual_cert = lemma36(&scaling, &m, true).unwrap();
        let report = verify(&dual_cert, &CertStore::new());
        assert!(report.pass, "{:?}", report.failure);
        let mirrored = lemma36(&scaling.order_reverse(), &mirror_vertices(4, &m), false).unwrap();
        assert_eq!(dual_cert.claim.small, mirrored.claim.small.order_reverse());
        assert_eq!(dual_cert.steps.len(), mirrored.steps.len());
    }

    #[test]
    fn mutated_added_faces_fail() {
        let scaling = delta_with_thin(3, &[[0, 1, 2]]);
        let mut cert = lemma36(&scaling, &mset(&[1]), false).unwrap();
        let victim = *cert.steps[0].added_faces.iter().next().unwrap();
        cert.steps[0].added_faces.remove(&victim);
        let report = verify(&cert, &CertStore::new());
        assert!(!report.pass);
        assert!(report.failure.unwrap().reason.contains("recorded added-face"));
    }

    #[test]
    fn dangling_derived_reference_fails() {
        let scaling = delta_with_thin(3, &[[0, 1, 2]]);
        let base = lemma36(&scaling, &mset(&[1]), false).unwrap();
        let mut cert = base.clone();
        cert.steps[0].just =
            Justification::Derived { cert_id: "nowhere".into(), embed: vec![0, 1, 2, 3] };
        let report = verify(&cert, &CertStore::new());
        assert!(!report.pass);
        assert!(report.failure.unwrap().reason.contains("dangling"));
        let err = trust_base(&cert, &CertStore::new()).unwrap_err();
        assert!(err.contains("dangling"));
    }

    #[test]
    fn verified_steps_grow_the_state() {
        let scaling = delta_with_thin(5, &[[2, 4, 5], [3, 4, 5]]);
        let cert = lemma36(&scaling, &mset(&[1, 3, 4]), false).unwrap();
        for step in &cert.steps {
            assert!(!step.added_faces.is_empty() || !step.added_thins.is_empty());
        }
    }

    #[test]
    fn lemma36_emits_an1_steps_only() {
        for (n, m, thins) in [
            (4u32, mset(&[1, 2]), vec![[0, 2, 3], [1, 2, 3]]),
            (4, mset(&[3]), vec![[2, 3, 4]]),
            (5, mset(&[1, 3, 4]), vec![[2, 4, 5], [3, 4, 5]]),
        ] {
            let scaling = delta_with_thin(n, &thins);
            let cert = lemma36(&scaling, &m, false).unwrap();
            assert!(cert
                .steps
                .iter()
                .all(|s| matches!(s.just, Justification::An1 { .. })));
        }
    }
}
