//! Named verification suites, one per combinatorial statement, each
//! assembling certificates and independent oracle checks into a
//! deterministic machine-readable report.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::anodyne::{
    check_lemma36_hypotheses, lemma36, render_trust, trust_base, verify, CertStore, RuleId,
    TrustBase,
};
use crate::certs::{
    cert_cart, cert_cart_prime, cert_q_consec, cert_q_cosegal, cert_spine_p, cert_t_cosegal,
    cert_t_in_q, cert_t_inner,
};
use crate::complex::{Ambient, Face, Subcomplex};
use crate::constructions::{
    cosegal_t, e_coface_image, e_nerve, e_union, latching, omega, omega_full, plain_horn, q, q_of,
    sigma, t, t3_family, tau, tw_face, u_complex, v_complex, x_cart, x_complex, Family, TVariant,
};
use crate::nerve::{compare_models, FiniteCategory};
use crate::scaling::{ScaledComplex, ScalingMode};

pub const DEFAULT_N_MAX: u32 = 4;
pub const DEFAULT_SEED: u64 = 20260606;
const LEMMA36_RANDOM_SUPERSETS: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub n_max: u32,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n_max: DEFAULT_N_MAX, seed: DEFAULT_SEED, timings: false }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "TRUSTED-PASS")]
    TrustedPass,
    #[serde(rename = "REFUSED")]
    Refused,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::TrustedPass => "TRUSTED-PASS",
            Status::Refused => "REFUSED",
            Status::Fail => "FAIL",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub params: String,
    pub status: Status,
    pub trust: String,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub records: Vec<SuiteRecord>,
}

impl SuiteReport {
    pub fn has_failure(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    pub fn digest(&self) -> String {
        digest_records(&self.records)
    }
}

/// Deterministic digest over statuses and trust bases; elapsed times are
/// excluded.
pub fn digest_records(records: &[SuiteRecord]) -> String {
    let mut hasher = Sha256::new();
    for r in records {
        hasher.update(r.suite.as_bytes());
        hasher.update(b"\t");
        hasher.update(r.params.as_bytes());
        hasher.update(b"\t");
        hasher.update(r.status.to_string().as_bytes());
        hasher.update(b"\t");
        hasher.update(r.trust.as_bytes());
        hasher.update(b"\n");
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn render_text(records: &[SuiteRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.suite, r.params, r.status, r.trust, r.millis
        ));
    }
    out.push_str(&format!("digest {}\n", digest_records(records)));
    out
}

pub fn render_records(records: &[SuiteRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out.push_str(&format!("{{\"digest\":\"{}\"}}\n", digest_records(records)));
    out
}

pub const SUITE_NAMES: [&str; 10] = [
    "suite_lemma36",
    "suite_inner_horn_T",
    "suite_T_in_Q",
    "suite_cart",
    "suite_q_cosegal",
    "suite_T_cosegal",
    "suite_latching",
    "suite_basic_identities",
    "suite_spine_P",
    "suite_nerve_models",
];

/// Runs one suite. Unknown names return `None`; failing instances become
/// FAIL records, never errors.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<SuiteReport> {
    let mut records = match name {
        "suite_lemma36" => suite_lemma36(cfg),
        "suite_inner_horn_T" => suite_inner_horn_t(cfg),
        "suite_T_in_Q" => suite_t_in_q(cfg),
        "suite_cart" => suite_cart(cfg),
        "suite_q_cosegal" => suite_q_cosegal(cfg),
        "suite_T_cosegal" => suite_t_cosegal(cfg),
        "suite_latching" => suite_latching(cfg),
        "suite_basic_identities" => suite_basic_identities(cfg),
        "suite_spine_P" => suite_spine_p(cfg),
        "suite_nerve_models" => suite_nerve_models(cfg),
        _ => return None,
    };
    records.sort_by(|a, b| a.suite.cmp(&b.suite).then_with(|| a.params.cmp(&b.params)));
    Some(SuiteReport { records })
}

/// Runs the whole battery in canonical order.
pub fn run_all(cfg: &SuiteConfig) -> SuiteReport {
    let mut records = Vec::new();
    for name in SUITE_NAMES {
        records.extend(run_suite(name, cfg).unwrap().records);
    }
    SuiteReport { records }
}

struct Recorder<'a> {
    suite: &'static str,
    cfg: &'a SuiteConfig,
    records: Vec<SuiteRecord>,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'static str, cfg: &'a SuiteConfig) -> Self {
        Recorder { suite, cfg, records: Vec::new() }
    }

    fn run(&mut self, params: String, f: impl FnOnce() -> (Status, TrustBase)) {
        let start = Instant::now();
        let (status, trust) = f();
        let millis = if self.cfg.timings { start.elapsed().as_millis() } else { 0 };
        self.records.push(SuiteRecord {
            suite: self.suite.to_string(),
            params,
            status,
            trust: render_trust(&trust),
            millis,
        });
    }

    fn check(&mut self, params: String, ok: bool) {
        self.run(params, || (if ok { Status::Pass } else { Status::Fail }, TrustBase::new()));
    }
}

fn status_of(pass: bool, trust: &TrustBase) -> Status {
    match (pass, trust.is_empty()) {
        (true, true) => Status::Pass,
        (true, false) => Status::TrustedPass,
        (false, _) => Status::Fail,
    }
}

fn verified_with(
    cert_result: Result<crate::anodyne::Certificate, String>,
    store: &CertStore,
    allowed: &[RuleId],
) -> (Status, TrustBase) {
    match cert_result {
        Ok(cert) => {
            let report = verify(&cert, store);
            let in_base = report.trust.keys().all(|r| allowed.contains(r));
            let tb = trust_base(&cert, store).unwrap_or_default();
            let consistent = tb == report.trust;
            (status_of(report.pass && in_base && consistent, &report.trust), report.trust)
        }
        Err(_) => (Status::Fail, TrustBase::new()),
    }
}

// ---------------------------------------------------------------------------
// the intersection oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleShape {
    /// The whole closure of the simplex, top face included.
    Full,
    /// The horn `Λ^I_M`; `M = ∅` is the boundary.
    Horn(Face),
    /// Not a horn: the raw intersection.
    Other(Subcomplex),
}

/// Computes `closure(simplex) ∩ sub` by brute force and recognizes horns.
/// Independent of the certificate kernel: only set operations on faces.
pub fn oracle_intersection(simplex: Face, sub: &Subcomplex) -> OracleShape {
    let ambient = sub.ambient().clone();
    let closure = Subcomplex::closure_of(ambient.clone(), simplex);
    let inter = sub.intersection(&closure).expect("same ambient");
    if inter == closure {
        return OracleShape::Full;
    }
    let m = Face::from_positions(
        simplex.positions().filter(|&p| !inter.contains_face(simplex.remove(p))),
    );
    let horn = Subcomplex::horn(ambient, simplex, m).expect("M ⊆ I");
    if inter == horn {
        OracleShape::Horn(m)
    } else {
        OracleShape::Other(inter)
    }
}

// ---------------------------------------------------------------------------
// suite_lemma36
// ---------------------------------------------------------------------------

fn mix_rng(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &t in tags {
        h = h.wrapping_add(t).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 27;
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn admissible_sets(n: u32) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let m: BTreeSet<u32> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if m.len() as u32 > n - 2 {
            continue;
        }
        let t = *m.iter().max().unwrap();
        // t = 0 leaves no room for s < t; a full run {0..t} leaves no s at all
        if t > 0 && (0..t).rev().any(|b| !m.contains(&b)) {
            out.push(m);
        }
    }
    out
}

fn minimal_witnesses(m: &BTreeSet<u32>) -> BTreeSet<Face> {
    let t = *m.iter().max().unwrap();
    let s = (0..t).rev().find(|b| !m.contains(b)).unwrap();
    (s..t)
        .map(|b| Face::from_positions([b as usize, t as usize, t as usize + 1]))
        .collect()
}

fn m_string(m: &BTreeSet<u32>) -> String {
    let parts: Vec<String> = m.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn lemma36_scaling(n: u32, thin: BTreeSet<Face>) -> ScaledComplex {
    ScaledComplex::explicit(Subcomplex::full(Ambient::simplex(n)), thin).unwrap()
}

fn suite_lemma36(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_lemma36", cfg);
    let store = CertStore::new();
    // the dimension clause, violated once below the admissible range
    rec.run("n=2 neg=dim".into(), || {
        let scaling = ScaledComplex::make(
            Subcomplex::full(Ambient::simplex(2)),
            ScalingMode::Sharp,
        );
        match check_lemma36_hypotheses(&scaling, &[1u32].into_iter().collect(), false) {
            Err(_) => (Status::Refused, TrustBase::new()),
            Ok(()) => (Status::Fail, TrustBase::new()),
        }
    });
    for n in 3..=cfg.n_max.max(3) {
        for m in admissible_sets(n) {
            let witnesses = minimal_witnesses(&m);
            let forbidden: Option<Face> = if m.len() as u32 == n - 2 {
                Some(Face::from_positions(
                    (0..=n).filter(|v| !m.contains(v)).map(|v| v as usize),
                ))
            } else {
                None
            };
            let all_triangles: Vec<Face> =
                Subcomplex::full(Ambient::simplex(n)).faces_of_dim(2).collect();
            for k in 0..=LEMMA36_RANDOM_SUPERSETS {
                let mut thin = witnesses.clone();
                if k > 0 {
                    let mask: u64 = m.iter().fold(0, |a, &v| a | (1 << v));
                    let mut rng = mix_rng(cfg.seed, &[n as u64, mask, k as u64]);
                    for &tri in &all_triangles {
                        if Some(tri) != forbidden && rng.gen_bool(0.25) {
                            thin.insert(tri);
                        }
                    }
                }
                let scaling = lemma36_scaling(n, thin);
                for dual in [false, true] {
                    let (scal, mm) = if dual {
                        (
                            scaling.order_reverse(),
                            m.iter().map(|&v| n - v).collect::<BTreeSet<u32>>(),
                        )
                    } else {
                        (scaling.clone(), m.clone())
                    };
                    let params = format!(
                        "n={n} M={} k={k}{}",
                        m_string(&mm),
                        if dual { " dual" } else { "" }
                    );
                    rec.run(params, || match lemma36(&scal, &mm, dual) {
                        Ok(cert) => {
                            let report = verify(&cert, &store);
                            (status_of(report.pass && report.trust.is_empty(), &report.trust), report.trust)
                        }
                        Err(_) => (Status::Fail, TrustBase::new()),
                    });
                }
            }
            // negatives: one mechanical violation per hypothesis clause
            let mut negatives: Vec<(String, ScaledComplex, BTreeSet<u32>)> = Vec::new();
            let mut reduced = witnesses.clone();
            let last = *reduced.iter().next_back().unwrap();
            reduced.remove(&last);
            negatives.push(("neg=witness".into(), lemma36_scaling(n, reduced), m.clone()));
            let mut top = m.clone();
            top.insert(n);
            negatives.push(("neg=top".into(), lemma36_scaling(n, witnesses.clone()), top));
            let t = *m.iter().max().unwrap();
            let run: BTreeSet<u32> = (0..=t).collect();
            negatives.push(("neg=run".into(), lemma36_scaling(n, witnesses.clone()), run));
            if let Some(f) = forbidden {
                let mut with_frob = witnesses.clone();
                with_frob.insert(f);
                negatives.push(("neg=thin".into(), lemma36_scaling(n, with_frob), m.clone()));
            }
            for (tag, scal, mm) in negatives {
                let params = format!("n={n} M={} {tag}", m_string(&m));
                rec.run(params, || {
                    match check_lemma36_hypotheses(&scal, &mm, false) {
                        Err(_) => (Status::Refused, TrustBase::new()),
                        Ok(()) => (Status::Fail, TrustBase::new()),
                    }
                });
            }
        }
        // the size clause, once per n
        let oversized: BTreeSet<u32> = (1..n).collect();
        rec.run(format!("n={n} neg=size"), || {
            match check_lemma36_hypotheses(
                &lemma36_scaling(n, minimal_witnesses(&oversized)),
                &oversized,
                false,
            ) {
                Err(_) => (Status::Refused, TrustBase::new()),
                Ok(()) => (Status::Fail, TrustBase::new()),
            }
        });
    }
    rec.records
}

// ---------------------------------------------------------------------------
// the horn-shape tables of the filtration proofs
// ---------------------------------------------------------------------------

fn m_table_inner(n: u32, i: u32, s: u32) -> Face {
    if s == 0 {
        tw_face(n, &[(1, i)])
    } else if s < i {
        tw_face(n, &[(0, s), (1, i)])
    } else if s == i {
        tw_face(n, &[(0, i)])
    } else {
        tw_face(n, &[(0, i), (0, s)])
    }
}

fn m_table_tau(n: u32, k: u32, j: u32) -> Face {
    let mut verts: Vec<(u8, u32)> = (0..=k).map(|a| (0, a)).collect();
    verts.extend((k + 1..=n).map(|a| (1, a)));
    if j < n {
        verts.extend((j + 1..=n).map(|a| (0, a)));
    }
    tw_face(n, &verts)
}

fn n_table_cart(n: u32, s: u32) -> Face {
    if s == 0 {
        tw_face(n, &[(1, n)])
    } else if s < n {
        tw_face(n, &[(0, s), (1, n)])
    } else {
        tw_face(n, &[(0, n)])
    }
}

// ---------------------------------------------------------------------------
// certificate suites
// ---------------------------------------------------------------------------

fn suite_inner_horn_t(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_inner_horn_T", cfg);
    let store = CertStore::new();
    for n in 2..=cfg.n_max {
        for i in 1..n {
            rec.run(format!("cert n={n} i={i}"), || {
                verified_with(cert_t_inner(n, i), &store, &[RuleId::SharpInnerHorn])
            });
            for s in 0..=n {
                let x_next = x_complex(n, i, s + 1).unwrap();
                let shape = oracle_intersection(sigma(n, s).unwrap(), x_next.complex());
                let ok = shape == OracleShape::Horn(m_table_inner(n, i, s));
                rec.check(format!("oracle n={n} i={i} s={s}"), ok);
            }
        }
    }
    rec.records
}

fn suite_t_in_q(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_T_in_Q", cfg);
    let store = CertStore::new();
    for n in 1..=cfg.n_max {
        rec.run(format!("cert n={n}"), || {
            verified_with(cert_t_in_q(n), &store, &[RuleId::SharpInnerHorn])
        });
        rec.check(format!("u0-equals-q n={n}"), u_complex(n, 0).unwrap() == q(n));
        for k in 0..n {
            for j in (k + 1..=n).rev() {
                let stage = v_complex(n, k, j + 1).unwrap();
                let shape = oracle_intersection(tau(n, k, j).unwrap(), stage.complex());
                let ok = shape == OracleShape::Horn(m_table_tau(n, k, j));
                rec.check(format!("oracle n={n} k={k} j={j}"), ok);
            }
        }
    }
    rec.records
}

fn suite_cart(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_cart", cfg);
    let store = CertStore::new();
    for n in 1..=cfg.n_max {
        rec.run(format!("cert n={n}"), || {
            verified_with(cert_cart(n), &store, &[RuleId::SharpInnerHorn, RuleId::Thin3Simplex])
        });
        for s in 0..=n {
            let x_next = x_cart(n, s + 1).unwrap();
            let shape = oracle_intersection(sigma(n, s).unwrap(), x_next.complex());
            let ok = shape == OracleShape::Horn(n_table_cart(n, s));
            rec.check(format!("oracle n={n} s={s}"), ok);
        }
        if n >= 2 {
            rec.run(format!("prime n={n}"), || {
                verified_with(cert_cart_prime(n), &store, &[RuleId::Thin3Simplex])
            });
        }
    }
    rec.records
}

fn suite_q_cosegal(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_q_cosegal", cfg);
    let mut store = CertStore::new();
    for n in 2..=cfg.n_max {
        for i in 1..n {
            let cert = cert_q_consec(n, i, &mut store);
            let store_ref = &store;
            rec.run(format!("consec n={n} i={i}"), || {
                verified_with(cert, store_ref, &[RuleId::SharpInnerHorn, RuleId::GsK])
            });
        }
    }
    for n in 0..=cfg.n_max {
        let cert = cert_q_cosegal(n, &mut store);
        let store_ref = &store;
        rec.run(format!("cosegal n={n}"), || {
            verified_with(cert, store_ref, &[RuleId::SharpInnerHorn, RuleId::GsK])
        });
    }
    rec.records
}

fn suite_t_cosegal(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_T_cosegal", cfg);
    let mut store = CertStore::new();
    for n in 0..=cfg.n_max {
        let cert = cert_t_cosegal(n, &mut store);
        let store_ref = &store;
        rec.run(format!("cosegal n={n}"), || {
            verified_with(cert, store_ref, &[RuleId::SharpInnerHorn])
        });
    }
    // the co-Segal subobject is the union of the inert images
    for n in 0..=cfg.n_max {
        let sub = cosegal_t(n);
        let mut union: Option<Subcomplex> = None;
        for i in 0..n.max(1) {
            let hi = if n == 0 { 0 } else { i + 1 };
            let verts: Vec<u32> = if n == 0 { vec![0] } else { vec![i, hi] };
            let piece = omega(n, &crate::constructions::plain_face(n, &verts));
            union = Some(match union {
                None => piece,
                Some(u) => u.union(&piece).unwrap(),
            });
        }
        rec.check(format!("inert-union n={n}"), Some(sub.complex().clone()) == union);
    }
    rec.records
}

fn suite_latching(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_latching", cfg);
    for n in 1..=cfg.n_max {
        let lq = latching(Family::Q, n).unwrap();
        let mut union: Option<ScaledComplex> = None;
        for i in 0..=n {
            let verts: Vec<u32> = (0..=n).filter(|&j| j != i).collect();
            let piece = q_of(n, &crate::constructions::plain_face(n, &verts));
            union = Some(match union {
                None => piece,
                Some(u) => u.union(&piece).unwrap(),
            });
        }
        rec.check(format!("q n={n}"), lq == union.unwrap());

        let lt = latching(Family::T, n).unwrap();
        let boundary = plain_horn(n, &[]);
        let expect = t(n, TVariant::Plain).unwrap().induce(omega(n, &boundary)).unwrap();
        rec.check(format!("t n={n}"), lt == expect);

        let ld = latching(Family::DeltaSharp, n).unwrap();
        let expect_d = ScaledComplex::make(plain_horn(n, &[]), ScalingMode::Sharp);
        rec.check(format!("delta n={n}"), ld == expect_d);
    }
    for n in 1..=cfg.n_max.min(3) {
        let d = n + 2;
        let prev = e_nerve(n - 1, d, false);
        let mut acc = e_coface_image(&prev, 0);
        for i in 1..=n {
            acc = e_union(&acc, &e_coface_image(&prev, i));
        }
        rec.check(format!("e n={n} d={d}"), acc == e_nerve(n, d, true));
    }
    rec.records
}

// ---------------------------------------------------------------------------
// suite_basic_identities
// ---------------------------------------------------------------------------

fn random_subcomplex(rng: &mut ChaCha8Rng, ambient: &Ambient, max_gens: usize) -> Subcomplex {
    let count = rng.gen_range(0..=max_gens);
    let all = ambient.top_face().0;
    let gens: Vec<Face> = (0..count)
        .map(|_| {
            let mut mask = 0u64;
            while mask == 0 {
                mask = rng.gen_range(1..=all) & all;
            }
            Face(mask)
        })
        .collect();
    Subcomplex::spanned_by_faces(ambient.clone(), &gens)
}

fn random_scaled(rng: &mut ChaCha8Rng, ambient: &Ambient) -> ScaledComplex {
    let sub = random_subcomplex(rng, ambient, 3);
    let thin: BTreeSet<Face> =
        sub.faces_of_dim(2).filter(|_| rng.gen_bool(0.5)).collect();
    ScaledComplex::explicit(sub, thin).unwrap()
}

/// Independent oracle for `Ω(Δ^1 × K)`: materializes the chains of the
/// product poset `[1] × [n]` and takes their hat images.
fn omega_hat_oracle(n: u32, k: &Subcomplex) -> Subcomplex {
    let ambient = Ambient::twisted(n);
    let mut elements: Vec<(u8, u32)> = Vec::new();
    for row in 0..=1u8 {
        for idx in 0..=n {
            elements.push((row, idx));
        }
    }
    let below = |a: (u8, u32), b: (u8, u32)| a.0 <= b.0 && a.1 <= b.1 && a != b;
    let mut generators: Vec<Face> = Vec::new();
    let mut chain: Vec<(u8, u32)> = Vec::new();
    fn rec(
        n: u32,
        elements: &[(u8, u32)],
        below: &impl Fn((u8, u32), (u8, u32)) -> bool,
        k: &Subcomplex,
        chain: &mut Vec<(u8, u32)>,
        generators: &mut Vec<Face>,
    ) {
        if !chain.is_empty() {
            let proj = Face::from_positions(chain.iter().map(|&(_, idx)| idx as usize));
            if k.contains_face(proj) {
                generators.push(tw_face(n, chain));
            } else {
                return; // no extension can shrink the projection
            }
        }
        let start = chain.last().copied();
        for &e in elements {
            if start.is_none_or(|last| below(last, e)) {
                chain.push(e);
                rec(n, elements, below, k, chain, generators);
                chain.pop();
            }
        }
    }
    rec(n, &elements, &below, k, &mut chain, &mut generators);
    Subcomplex::spanned_by_faces(ambient, &generators)
}

fn suite_basic_identities(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_basic_identities", cfg);

    // Q(K∩L) = Q(K) ∩ Q(L) on seeded random pairs in Δ^4
    let delta4 = Ambient::simplex(4);
    let mut ok = true;
    let mut rng = mix_rng(cfg.seed, &[1]);
    for _ in 0..100 {
        let k = random_subcomplex(&mut rng, &delta4, 3);
        let l = random_subcomplex(&mut rng, &delta4, 3);
        let lhs = q_of(4, &k.intersection(&l).unwrap());
        let rhs = q_of(4, &k).intersection(&q_of(4, &l)).unwrap();
        ok &= lhs == rhs;
    }
    rec.check("q-meet n=4 pairs=100".into(), ok);

    // Ω is a lattice map on subcomplexes of Δ^4
    let mut ok = true;
    let mut rng = mix_rng(cfg.seed, &[2]);
    for _ in 0..100 {
        let k = random_subcomplex(&mut rng, &delta4, 3);
        let l = random_subcomplex(&mut rng, &delta4, 3);
        let meet = omega(4, &k.intersection(&l).unwrap());
        ok &= meet == omega(4, &k).intersection(&omega(4, &l)).unwrap();
        let join = omega(4, &k.union(&l).unwrap());
        ok &= join == omega(4, &k).union(&omega(4, &l)).unwrap();
        if k.is_subcomplex_of(&l) {
            ok &= omega(4, &k).is_subcomplex_of(&omega(4, &l));
        }
    }
    rec.check("omega-lattice n=4 pairs=100".into(), ok);

    // (Ω^n)_2 ∩ T3 = ∅
    for n in 0..=6u32 {
        let o = omega_full(n);
        let ok = t3_family(n).iter().all(|t| !o.contains_face(*t));
        rec.check(format!("t3-exclusion n={n}"), ok);
    }

    // conjugation identities
    for n in 0..=cfg.n_max {
        rec.check(format!("conj-q n={n}"), q(n).conj().unwrap() == q(n));
        let tn = t(n, TVariant::Plain).unwrap();
        let mut gens: Vec<Face> = Vec::new();
        for k in 0..=n {
            let mut verts: Vec<(u8, u32)> = (0..=k).map(|i| (1, i)).collect();
            verts.extend((k..=n).map(|i| (0, i)));
            gens.push(tw_face(n, &verts));
        }
        let conj_complex = Subcomplex::spanned_by_faces(Ambient::twisted(n).clone(), &gens);
        rec.check(
            format!("conj-t n={n}"),
            tn.conj().unwrap().complex() == &conj_complex,
        );
    }
    let mut ok = true;
    let mut rng = mix_rng(cfg.seed, &[3]);
    for _ in 0..200 {
        let tw3 = Ambient::twisted(3);
        let s = random_scaled(&mut rng, &tw3);
        ok &= s.conj().unwrap().conj().unwrap() == s;
        ok &= s.order_reverse().order_reverse() == s;
        ok &= s.order_reverse().thin().len() == s.thin().len();
    }
    rec.check("involutions samples=200".into(), ok);

    // Ω agrees with the hat definition on Δ^1 × K
    for n in 1..=cfg.n_max {
        let full = Subcomplex::full(Ambient::simplex(n));
        let mut ok = omega(n, &full) == omega_hat_oracle(n, &full);
        let mut rng = mix_rng(cfg.seed, &[4, n as u64]);
        for _ in 0..10 {
            let k = random_subcomplex(&mut rng, &Ambient::simplex(n), 3);
            ok &= omega(n, &k) == omega_hat_oracle(n, &k);
        }
        rec.check(format!("omega-hat n={n}"), ok);
    }

    // staircase shape facts
    for n in 0..=cfg.n_max {
        let o = omega_full(n);
        let mut ok = o.faces_of_dim(n as i32 + 1).count() == n as usize + 1;
        for r in 0..=n {
            ok &= sigma(n, r).unwrap().vertex_count() == n + 2;
        }
        for i in 0..=n {
            for j in 0..=n {
                ok &= o.contains_face(tw_face(n, &[(0, i), (1, j)])) == (i <= j);
            }
        }
        rec.check(format!("omega-shape n={n}"), ok);
    }

    rec.records
}

fn suite_spine_p(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_spine_P", cfg);
    let store = CertStore::new();
    rec.run("cert".into(), || match cert_spine_p() {
        Ok(cert) => {
            let report = verify(&cert, &store);
            (status_of(report.pass && report.trust.is_empty(), &report.trust), report.trust)
        }
        Err(_) => (Status::Fail, TrustBase::new()),
    });
    rec.records
}

fn suite_nerve_models(cfg: &SuiteConfig) -> Vec<SuiteRecord> {
    let mut rec = Recorder::new("suite_nerve_models", cfg);
    let n_max = cfg.n_max.min(3);
    for cat in FiniteCategory::catalog() {
        let comparison = compare_models(&cat, n_max);
        let counts: Vec<String> =
            comparison.levels.iter().map(|l| l.q_count.to_string()).collect();
        rec.check(
            format!("cat={} n_max={n_max} counts={}", cat.name(), counts.join(",")),
            comparison.pass,
        );
    }
    rec.records
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_shapes() {
        // (σ(1), X(2)) at n=2, i=1 → M = {01}
        let x2 = x_complex(2, 1, 2).unwrap();
        let shape = oracle_intersection(sigma(2, 1).unwrap(), x2.complex());
        assert_eq!(shape, OracleShape::Horn(tw_face(2, &[(0, 1)])));
        // (σ(2), X(3)) at n=2, i=1 → M = {01, 02}
        let x3 = x_complex(2, 1, 3).unwrap();
        let shape = oracle_intersection(sigma(2, 2).unwrap(), x3.complex());
        assert_eq!(shape, OracleShape::Horn(tw_face(2, &[(0, 1), (0, 2)])));
        // full ambient: everything present
        let full = Subcomplex::full(Ambient::twisted(1));
        assert_eq!(oracle_intersection(sigma(1, 0).unwrap(), &full), OracleShape::Full);
        // boundary is the horn at M = ∅
        let amb = Ambient::simplex(2);
        let boundary = plain_horn(2, &[]);
        assert_eq!(
            oracle_intersection(amb.top_face(), &boundary),
            OracleShape::Horn(Face(0))
        );
    }

    #[test]
    fn oracle_other_shape() {
        let amb = Ambient::simplex(2);
        let vertex = Subcomplex::closure_of(amb.clone(), Face::from_positions([0usize]));
        match oracle_intersection(amb.top_face(), &vertex) {
            OracleShape::Other(s) => assert_eq!(s.face_count(), 1),
            other => panic!("expected Other, got {other:?}"),
        }
    }

    #[test]
    fn small_battery_passes() {
        let cfg = SuiteConfig { n_max: 2, seed: DEFAULT_SEED, timings: false };
        for name in SUITE_NAMES {
            let report = run_suite(name, &cfg).unwrap();
            for r in &report.records {
                assert_ne!(r.status, Status::Fail, "{name}: {} failed", r.params);
            }
        }
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nosuch", &SuiteConfig::default()).is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig { n_max: 2, seed: DEFAULT_SEED, timings: false };
        let a = run_suite("suite_lemma36", &cfg).unwrap();
        let b = run_suite("suite_lemma36", &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(render_text(&a.records), render_text(&b.records));
        assert_eq!(a.digest(), b.digest());
    }

    #[test]
    fn digest_ignores_millis() {
        let r1 = SuiteRecord {
            suite: "s".into(),
            params: "p".into(),
            status: Status::Pass,
            trust: "-".into(),
            millis: 1,
        };
        let mut r2 = r1.clone();
        r2.millis = 99;
        assert_eq!(digest_records(&[r1]), digest_records(&[r2]));
    }

    #[test]
    fn lemma36_negatives_are_refused() {
        let cfg = SuiteConfig { n_max: 3, seed: DEFAULT_SEED, timings: false };
        let report = run_suite("suite_lemma36", &cfg).unwrap();
        let negatives: Vec<&SuiteRecord> =
            report.records.iter().filter(|r| r.params.contains("neg=")).collect();
        assert!(!negatives.is_empty());
        for r in negatives {
            assert_eq!(r.status, Status::Refused, "{}", r.params);
        }
    }
}
