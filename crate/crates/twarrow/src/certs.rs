//! Builders for the certificates replaying the horn filtrations, and the
//! line-oriented certificate file format.
//!
//! The single-simplex attachment engine turns "attach `Δ^I` along
//! `Λ^I_M`" into generator steps. Where the horn lemma applies this is the
//! usual peeling; where a thin triangle lies outside the horn the engine
//! routes through an An1 attachment followed by an An2 instance pushed
//! along a degeneracy, which marks the one missing triangle.

use std::collections::BTreeSet;

use crate::anodyne::{
    assemble, BuildError, CertStore, Certificate, Justification, RuleId, ScaledInclusion,
};
use crate::complex::{Ambient, Face, Label, Subcomplex};
use crate::constructions::{
    cart_thin, cosegal_q, cosegal_t, k_complex, lambda_bar_t, lambda_bar_t_cart,
    lambda_bar_t_prime, lambda_t, omega, p1, plain_horn_consec, q, q_horn, q_horn_consec,
    row_face, sigma, spine_p, t, tau, tw_double, tw_face, tw_pos, u_complex, v_complex, x_cart,
    x_complex, TVariant,
};
use crate::scaling::ScaledComplex;

fn face_vec(f: Face) -> Vec<usize> {
    f.positions().collect()
}

/// Decomposes one simplex attachment along a horn into generator steps,
/// simulating the replay locally so that every emitted step verifies.
fn attach_steps(
    current: &Subcomplex,
    top: Face,
    target_thin: &BTreeSet<Face>,
) -> Result<Vec<Justification>, String> {
    let ambient = current.ambient().clone();
    let closure = Subcomplex::closure_of(ambient.clone(), top);
    let inter = current.intersection(&closure).map_err(|e| e.to_string())?;
    let m_face = Face::from_positions(
        top.positions().filter(|&p| !inter.contains_face(top.remove(p))),
    );
    let horn = Subcomplex::horn(ambient.clone(), top, m_face).map_err(|e| e.to_string())?;
    if inter != horn {
        return Err(format!(
            "intersection with {} is not a horn",
            ambient.face_string(top)
        ));
    }
    if m_face.0 == 0 || m_face == top {
        return Err(format!(
            "attachment of {} has no admissible horn",
            ambient.face_string(top)
        ));
    }
    let base = Face(top.0 & !m_face.0);
    let m_verts = face_vec(m_face);
    let (b_min, b_max) = {
        let v = face_vec(base);
        (*v.first().unwrap(), *v.last().unwrap())
    };
    let mut last_err = String::from("no pairing vertex admits a decomposition");
    for &w in &m_verts {
        if !(b_min < w && w < b_max) {
            continue;
        }
        match try_pairing(&ambient, top, base, m_face, w, &horn, target_thin) {
            Ok(steps) => return Ok(steps),
            Err(e) => last_err = e,
        }
    }
    Err(format!("attachment of {}: {last_err}", ambient.face_string(top)))
}

fn try_pairing(
    ambient: &Ambient,
    top: Face,
    base: Face,
    m_face: Face,
    w: usize,
    horn: &Subcomplex,
    target_thin: &BTreeSet<Face>,
) -> Result<Vec<Justification>, String> {
    let mut faces: BTreeSet<Face> = horn.faces().collect();
    let mut thin: BTreeSet<Face> =
        target_thin.iter().copied().filter(|t| faces.contains(t)).collect();
    let mut steps = Vec::new();

    let rest: Vec<usize> = face_vec(m_face).into_iter().filter(|&v| v != w).collect();
    let mut groups: Vec<Vec<usize>> = (0..1u64 << rest.len())
        .map(|mask| {
            rest.iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    groups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    for g in groups {
        let missing = base.union(Face::from_positions(g.iter().copied()));
        let tface = missing.insert(w);
        let tverts = face_vec(tface);
        let pos_w = tverts.iter().position(|&v| v == w).unwrap();
        if tverts.len() == 3 {
            // An1(2,1): attaches and marks the triangle itself
            if !target_thin.contains(&tface) {
                return Err(format!(
                    "triangle {} would be marked but is not thin in the target",
                    ambient.face_string(tface)
                ));
            }
            steps.push(Justification::An1 { n: 2, i: 1, embed: tverts });
            faces.insert(missing);
            faces.insert(tface);
            thin.insert(tface);
            continue;
        }
        let witness = Face::from_positions([
            tverts[pos_w - 1],
            tverts[pos_w],
            tverts[pos_w + 1],
        ]);
        if !thin.contains(&witness) {
            return Err(format!(
                "witness {} is not thin at attachment time",
                ambient.face_string(witness)
            ));
        }
        steps.push(Justification::An1 {
            n: tverts.len() as u32 - 1,
            i: pos_w as u32,
            embed: tverts.clone(),
        });
        faces.insert(missing);
        faces.insert(tface);
        if missing.dim() == 2 && target_thin.contains(&missing) {
            // the added facet must end up thin: An2 along the degeneracy
            // collapsing w marks exactly that triangle
            for x in tface.positions() {
                if x == w {
                    continue;
                }
                let other = tface.remove(x);
                if !thin.contains(&other) && other != missing {
                    return Err(format!(
                        "triangle {} needed for the An2 marking is not thin",
                        ambient.face_string(other)
                    ));
                }
            }
            let mut embed = Vec::with_capacity(5);
            for &v in &tverts {
                embed.push(v);
                if v == w {
                    embed.push(v);
                }
            }
            steps.push(Justification::An2 { embed });
            thin.insert(missing);
        }
    }

    let closure = Subcomplex::closure_of(ambient.clone(), top);
    let want_thin: BTreeSet<Face> =
        target_thin.iter().copied().filter(|t| closure.contains_face(*t)).collect();
    let got_faces: BTreeSet<Face> = closure.faces().collect();
    if faces != got_faces {
        return Err("decomposition did not fill the simplex".into());
    }
    if thin != want_thin {
        return Err("decomposition did not reproduce the induced scaling".into());
    }
    Ok(steps)
}

fn finish(
    id: &str,
    small: ScaledComplex,
    big: ScaledComplex,
    justs: Vec<Justification>,
    store: &CertStore,
) -> Result<Certificate, String> {
    let claim = ScaledInclusion::new(small, big)?;
    assemble(id, claim, justs, store).map_err(|e: BuildError| format!("{id}: {e}"))
}

/// Identity embedding of `tw(n)` into itself.
fn tw_identity_embed(n: u32) -> Vec<usize> {
    (0..2 * n as usize + 2).collect()
}

/// `Λ^n_i T → T(n)`: the two sharp row attachments followed by the
/// staircase filtration.
pub fn cert_t_inner(n: u32, i: u32) -> Result<Certificate, String> {
    let small = lambda_t(n, i).map_err(|e| e.to_string())?;
    let big = t(n, TVariant::Plain).map_err(|e| e.to_string())?;
    let target_thin = big.thin().clone();
    let mut justs = vec![
        Justification::Trusted {
            rule: RuleId::SharpInnerHorn,
            i,
            embed: (0..=n as usize).collect(),
        },
        Justification::Trusted {
            rule: RuleId::SharpInnerHorn,
            i: n - i,
            embed: (n as usize + 1..=2 * n as usize + 1).collect(),
        },
    ];
    let mut state = small
        .complex()
        .union(&Subcomplex::spanned_by_faces(
            small.ambient().clone(),
            &[row_face(n, 0), row_face(n, 1)],
        ))
        .map_err(|e| e.to_string())?;
    for s in (0..=n).rev() {
        let top = sigma(n, s).map_err(|e| e.to_string())?;
        justs.extend(attach_steps(&state, top, &target_thin)?);
        state = state
            .union(&Subcomplex::closure_of(state.ambient().clone(), top))
            .map_err(|e| e.to_string())?;
    }
    finish(&format!("t_inner({n},{i})"), small, big, justs, &CertStore::new())
}

/// `T(n) → Q(n)` through the interpolating-simplex filtration.
pub fn cert_t_in_q(n: u32) -> Result<Certificate, String> {
    let small = t(n, TVariant::Plain).map_err(|e| e.to_string())?;
    let big = q(n);
    let target_thin = big.thin().clone();
    let mut justs = Vec::new();
    let mut state = small.complex().clone();
    for k in (0..n).rev() {
        for j in (k + 1..=n).rev() {
            let top = tau(n, k, j).map_err(|e| e.to_string())?;
            justs.extend(attach_steps(&state, top, &target_thin)?);
            state = state
                .union(&Subcomplex::closure_of(state.ambient().clone(), top))
                .map_err(|e| e.to_string())?;
        }
    }
    finish(&format!("t_in_q({n})"), small, big, justs, &CertStore::new())
}

/// `Λ̄^n_n T_cart → T(n)_cart` through the cartesian staircase filtration.
pub fn cert_cart(n: u32) -> Result<Certificate, String> {
    let small = lambda_bar_t_cart(n).map_err(|e| e.to_string())?;
    let big = t(n, TVariant::Cart).map_err(|e| e.to_string())?;
    let target_thin = cart_thin(n);
    let mut justs = Vec::new();
    let mut state = small.complex().clone();
    for s in (0..=n).rev() {
        let top = sigma(n, s).map_err(|e| e.to_string())?;
        justs.extend(attach_steps(&state, top, &target_thin)?);
        state = state
            .union(&Subcomplex::closure_of(state.ambient().clone(), top))
            .map_err(|e| e.to_string())?;
    }
    finish(&format!("cart({n})"), small, big, justs, &CertStore::new())
}

/// `Λ̄^n_n T' → Λ̄^n_n T_cart`: one thin-3-simplex step per triangle of the
/// cartesian family away from the last square. The identity at `n = 2`.
pub fn cert_cart_prime(n: u32) -> Result<Certificate, String> {
    let small = lambda_bar_t_prime(n).map_err(|e| e.to_string())?;
    let big = lambda_bar_t_cart(n).map_err(|e| e.to_string())?;
    // each missing thin triangle {0i,1(n-1),1n} spans, with 0(n-1), a
    // 3-simplex whose other faces are already thin
    let mut justs = Vec::new();
    for missing in big.thin().difference(small.thin()) {
        let tetra = missing.insert(tw_pos(n, 0, n - 1));
        justs.push(Justification::Trusted {
            rule: RuleId::Thin3Simplex,
            i: 0,
            embed: tetra.positions().collect(),
        });
    }
    finish(&format!("cart_prime({n})"), small, big, justs, &CertStore::new())
}

/// `Q(Λ^n_i) → Q(n)`: sharp rows, then the trusted Garcia-Stern jump.
pub fn cert_q_inner(n: u32, i: u32) -> Result<Certificate, String> {
    let small = q_horn(n, i).map_err(|e| e.to_string())?;
    let big = q(n);
    let justs = vec![
        Justification::Trusted {
            rule: RuleId::SharpInnerHorn,
            i,
            embed: (0..=n as usize).collect(),
        },
        Justification::Trusted {
            rule: RuleId::SharpInnerHorn,
            i: n - i,
            embed: (n as usize + 1..=2 * n as usize + 1).collect(),
        },
        Justification::Trusted { rule: RuleId::GsK, i, embed: tw_identity_embed(n) },
    ];
    finish(&format!("q_inner({n},{i})"), small, big, justs, &CertStore::new())
}

fn face_embedding(n: u32, keep: &[u32]) -> Vec<usize> {
    let m = keep.len() as u32 - 1;
    let map = tw_double(m, n, keep);
    map.positions().to_vec()
}

/// `Q(Λ^n_{{1..i}}) → Q(n)` by the consecutive-horn recursion; the emitted
/// certificates are stored for derived references.
pub fn cert_q_consec(n: u32, i: u32, store: &mut CertStore) -> Result<Certificate, String> {
    let id = format!("q_consec({n},{i})");
    if let Some(c) = store.get(&id) {
        return Ok(c.clone());
    }
    let small = q_horn_consec(n, i).map_err(|e| e.to_string())?;
    let big = q(n);
    let justs = if i == 1 {
        let inner = cert_q_inner(n, 1)?;
        let inner_id = inner.id.clone();
        store.insert(inner);
        vec![Justification::Derived { cert_id: inner_id, embed: tw_identity_embed(n) }]
    } else {
        let sub = cert_q_consec(n - 1, i - 1, store)?;
        let cont = cert_q_consec(n, i - 1, store)?;
        let keep: Vec<u32> = (0..=n).filter(|&j| j != i).collect();
        vec![
            Justification::Derived { cert_id: sub.id.clone(), embed: face_embedding(n, &keep) },
            Justification::Derived { cert_id: cont.id.clone(), embed: tw_identity_embed(n) },
        ]
    };
    let cert = finish(&id, small, big, justs, store)?;
    store.insert(cert.clone());
    Ok(cert)
}

/// The co-Segal certificate `Q(sp_{[0,n]}) → Q(n)`.
pub fn cert_q_cosegal(n: u32, store: &mut CertStore) -> Result<Certificate, String> {
    let id = format!("q_cosegal({n})");
    if let Some(c) = store.get(&id) {
        return Ok(c.clone());
    }
    let small = cosegal_q(n);
    let big = q(n);
    let mut justs = Vec::new();
    if n >= 2 {
        if n > 2 {
            let sub = cert_q_cosegal(n - 1, store)?;
            justs.push(Justification::Derived {
                cert_id: sub.id.clone(),
                embed: face_embedding(n, &(0..n).collect::<Vec<_>>()),
            });
        }
        for i in (0..=n - 2).rev() {
            let m = n - i;
            let sub = cert_q_consec(m, m - 1, store)?;
            let keep: Vec<u32> = (i..=n).collect();
            justs.push(Justification::Derived {
                cert_id: sub.id.clone(),
                embed: face_embedding(n, &keep),
            });
        }
    }
    let cert = finish(&id, small, big, justs, store)?;
    store.insert(cert.clone());
    Ok(cert)
}

/// `Ω(Δ^1 × Λ^n_{{1..i}}) → T(n)` by the same recursion at the T-level.
pub fn cert_t_consec(n: u32, i: u32, store: &mut CertStore) -> Result<Certificate, String> {
    let id = format!("t_consec({n},{i})");
    if let Some(c) = store.get(&id) {
        return Ok(c.clone());
    }
    let big = t(n, TVariant::Plain).map_err(|e| e.to_string())?;
    let small = big
        .induce(omega(n, &plain_horn_consec(n, i).map_err(|e| e.to_string())?))
        .map_err(|e| e.to_string())?;
    let justs = if i == 1 {
        let inner = cert_t_inner(n, 1)?;
        let inner_id = inner.id.clone();
        store.insert(inner);
        vec![Justification::Derived { cert_id: inner_id, embed: tw_identity_embed(n) }]
    } else {
        let sub = cert_t_consec(n - 1, i - 1, store)?;
        let cont = cert_t_consec(n, i - 1, store)?;
        let keep: Vec<u32> = (0..=n).filter(|&j| j != i).collect();
        vec![
            Justification::Derived { cert_id: sub.id.clone(), embed: face_embedding(n, &keep) },
            Justification::Derived { cert_id: cont.id.clone(), embed: tw_identity_embed(n) },
        ]
    };
    let cert = finish(&id, small, big, justs, store)?;
    store.insert(cert.clone());
    Ok(cert)
}

/// The co-Segal certificate at the T-level.
pub fn cert_t_cosegal(n: u32, store: &mut CertStore) -> Result<Certificate, String> {
    let id = format!("t_cosegal({n})");
    if let Some(c) = store.get(&id) {
        return Ok(c.clone());
    }
    let small = cosegal_t(n);
    let big = t(n, TVariant::Plain).map_err(|e| e.to_string())?;
    let mut justs = Vec::new();
    if n >= 2 {
        if n > 2 {
            let sub = cert_t_cosegal(n - 1, store)?;
            justs.push(Justification::Derived {
                cert_id: sub.id.clone(),
                embed: face_embedding(n, &(0..n).collect::<Vec<_>>()),
            });
        }
        for i in (0..=n - 2).rev() {
            let m = n - i;
            let sub = cert_t_consec(m, m - 1, store)?;
            let keep: Vec<u32> = (i..=n).collect();
            justs.push(Justification::Derived {
                cert_id: sub.id.clone(),
                embed: face_embedding(n, &keep),
            });
        }
    }
    let cert = finish(&id, small, big, justs, store)?;
    store.insert(cert.clone());
    Ok(cert)
}

/// `Sp_1(P) → P(1)`: four An1 attachments and one An2 instance pushed along
/// a degeneracy, marking the last thin triangle.
pub fn cert_spine_p() -> Result<Certificate, String> {
    let justs = vec![
        Justification::An1 { n: 2, i: 1, embed: vec![0, 1, 2] },
        Justification::An1 { n: 2, i: 1, embed: vec![1, 2, 3] },
        Justification::An1 { n: 2, i: 1, embed: vec![0, 2, 3] },
        Justification::An1 { n: 3, i: 2, embed: vec![0, 1, 2, 3] },
        Justification::An2 { embed: vec![0, 1, 2, 2, 3] },
    ];
    finish("spine_p", spine_p(), p1(), justs, &CertStore::new())
}

// ---------------------------------------------------------------------------
// certificate file format
// ---------------------------------------------------------------------------

/// Reference strings used in `claim` lines, with the optional `thin` context
/// lines for explicitly scaled plain simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertRefs {
    pub ambient: String,
    pub thin_ctx: Vec<Face>,
    pub small: String,
    pub big: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub refs: CertRefs,
    pub cert: Certificate,
}

#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn parse_ambient(s: &str) -> Result<Ambient, String> {
    if let Some(n) = s.strip_prefix("tw:") {
        let n: u32 = n.parse().map_err(|_| format!("bad ambient {s}"))?;
        Ok(Ambient::twisted(n))
    } else if let Some(n) = s.strip_prefix("delta:") {
        let n: u32 = n.parse().map_err(|_| format!("bad ambient {s}"))?;
        Ok(Ambient::simplex(n))
    } else {
        Err(format!("bad ambient {s}"))
    }
}

fn ambient_ref(ambient: &Ambient) -> String {
    if let Some(n) = ambient.twisted_level() {
        format!("tw:{n}")
    } else {
        format!("delta:{}", ambient.len() - 1)
    }
}

fn parse_args(s: &str, name: &str) -> Result<Vec<u32>, String> {
    let inner = s
        .strip_prefix(name)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("bad reference {s}"))?;
    inner
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad argument in {s}")))
        .collect()
}

/// Resolves a claim reference against an ambient and an explicit thin
/// context (for `full` and `horn{..}` over plain simplices).
pub fn resolve_ref(
    ambient: &Ambient,
    thin_ctx: &[Face],
    r: &str,
) -> Result<ScaledComplex, String> {
    let scaled_delta = || -> Result<ScaledComplex, String> {
        let full = Subcomplex::full(ambient.clone());
        ScaledComplex::explicit(full, thin_ctx.iter().copied().collect())
            .map_err(|e| e.to_string())
    };
    let expect = |got: &Ambient, c: ScaledComplex| -> Result<ScaledComplex, String> {
        if got == ambient {
            Ok(c)
        } else {
            Err(format!("reference {r} lives in a different ambient"))
        }
    };
    if r == "full" {
        return scaled_delta();
    }
    if let Some(inner) = r.strip_prefix("horn{").and_then(|x| x.strip_suffix('}')) {
        let scaled = scaled_delta()?;
        let m: Vec<usize> = inner
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad horn set in {r}")))
            .collect::<Result<_, _>>()?;
        let m_face = Face::from_positions(m);
        let horn = Subcomplex::horn(ambient.clone(), ambient.top_face(), m_face)
            .map_err(|e| e.to_string())?;
        return scaled.induce(horn).map_err(|e| e.to_string());
    }
    let head = r.split('(').next().unwrap_or(r);
    let c = match head {
        "q" => {
            let a = parse_args(r, "q")?;
            q(a[0])
        }
        "t" => {
            let a = parse_args(r, "t")?;
            t(a[0], TVariant::Plain).map_err(|e| e.to_string())?
        }
        "tcart" => {
            let a = parse_args(r, "tcart")?;
            t(a[0], TVariant::Cart).map_err(|e| e.to_string())?
        }
        "p" => {
            let a = parse_args(r, "p")?;
            if a[0] != 1 {
                return Err("p(n) is only defined at n = 1".into());
            }
            p1()
        }
        "spine_p" => spine_p(),
        "lambda_t" => {
            let a = parse_args(r, "lambda_t")?;
            lambda_t(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "lambda_bar_t" => {
            let a = parse_args(r, "lambda_bar_t")?;
            lambda_bar_t(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "x" => {
            let a = parse_args(r, "x")?;
            x_complex(a[0], a[1], a[2]).map_err(|e| e.to_string())?
        }
        "u" => {
            let a = parse_args(r, "u")?;
            u_complex(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "v" => {
            let a = parse_args(r, "v")?;
            v_complex(a[0], a[1], a[2]).map_err(|e| e.to_string())?
        }
        "xcart" => {
            let a = parse_args(r, "xcart")?;
            x_cart(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "lambda_bar_t_cart" => {
            let a = parse_args(r, "lambda_bar_t_cart")?;
            lambda_bar_t_cart(a[0]).map_err(|e| e.to_string())?
        }
        "lambda_bar_t_prime" => {
            let a = parse_args(r, "lambda_bar_t_prime")?;
            lambda_bar_t_prime(a[0]).map_err(|e| e.to_string())?
        }
        "k" => {
            let a = parse_args(r, "k")?;
            k_complex(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "q_horn" => {
            let a = parse_args(r, "q_horn")?;
            q_horn(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "q_horn_consec" => {
            let a = parse_args(r, "q_horn_consec")?;
            q_horn_consec(a[0], a[1]).map_err(|e| e.to_string())?
        }
        "cosegal_q" => {
            let a = parse_args(r, "cosegal_q")?;
            cosegal_q(a[0])
        }
        "cosegal_t" => {
            let a = parse_args(r, "cosegal_t")?;
            cosegal_t(a[0])
        }
        "omega_horn_consec" => {
            let a = parse_args(r, "omega_horn_consec")?;
            let big = t(a[0], TVariant::Plain).map_err(|e| e.to_string())?;
            big.induce(omega(a[0], &plain_horn_consec(a[0], a[1]).map_err(|e| e.to_string())?))
                .map_err(|e| e.to_string())?
        }
        _ => return Err(format!("unknown reference {r}")),
    };
    expect(c.ambient(), c.clone())
}

/// The reference strings for the claims of the named certificates built in
/// this module, keyed by certificate id.
pub fn refs_for(id: &str) -> Option<(String, String)> {
    let head = id.split('(').next()?;
    let args: Vec<String> = id
        .split('(')
        .nth(1)?
        .trim_end_matches(')')
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let a = |k: usize| args.get(k).cloned().unwrap_or_default();
    match head {
        "t_inner" => Some((format!("lambda_t({},{})", a(0), a(1)), format!("t({})", a(0)))),
        "t_in_q" => Some((format!("t({})", a(0)), format!("q({})", a(0)))),
        "cart" => Some((format!("lambda_bar_t_cart({})", a(0)), format!("tcart({})", a(0)))),
        "cart_prime" => Some((
            format!("lambda_bar_t_prime({})", a(0)),
            format!("lambda_bar_t_cart({})", a(0)),
        )),
        "q_inner" => Some((format!("q_horn({},{})", a(0), a(1)), format!("q({})", a(0)))),
        "q_consec" => Some((format!("q_horn_consec({},{})", a(0), a(1)), format!("q({})", a(0)))),
        "q_cosegal" => Some((format!("cosegal_q({})", a(0)), format!("q({})", a(0)))),
        "t_consec" => {
            Some((format!("omega_horn_consec({},{})", a(0), a(1)), format!("t({})", a(0))))
        }
        "t_cosegal" => Some((format!("cosegal_t({})", a(0)), format!("t({})", a(0)))),
        _ => None,
    }
}

/// Renders certificate entries in the line-oriented file format.
pub fn render_file(entries: &[CertEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        let ambient = entry.cert.claim.ambient().clone();
        out.push_str(&format!("cert {}\n", entry.cert.id));
        for &t in &entry.refs.thin_ctx {
            out.push_str(&format!("thin {}\n", ambient.face_string(t)));
        }
        out.push_str(&format!(
            "claim {} small={} big={}\n",
            entry.refs.ambient, entry.refs.small, entry.refs.big
        ));
        for (k, step) in entry.cert.steps.iter().enumerate() {
            let idx = k + 1;
            let embed_str = |embed: &[usize]| {
                embed
                    .iter()
                    .map(|&p| ambient.label(p).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let line = match &step.just {
                Justification::An1 { n, i, embed } => {
                    format!("step {idx} an1 n={n} i={i} embed {}", embed_str(embed))
                }
                Justification::An2 { embed } => {
                    format!("step {idx} an2 embed {}", embed_str(embed))
                }
                Justification::Trusted { rule, i, embed } => match rule {
                    RuleId::Thin3Simplex => {
                        format!("step {idx} trusted {} embed {}", rule.name(), embed_str(embed))
                    }
                    _ => format!(
                        "step {idx} trusted {} i={i} embed {}",
                        rule.name(),
                        embed_str(embed)
                    ),
                },
                Justification::Derived { cert_id, embed } => {
                    format!("step {idx} derived {cert_id} embed {}", embed_str(embed))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Parses a certificate file. Derived references resolve against earlier
/// entries in the same file and against `base`.
pub fn parse_file(text: &str, base: &CertStore) -> Result<Vec<CertEntry>, ParseError> {
    let mut entries: Vec<CertEntry> = Vec::new();
    let mut store = base.clone();

    struct Pending {
        id: String,
        line: usize,
        thin_raw: Vec<(usize, String)>,
        claim: Option<(usize, String, String, String)>,
        steps: Vec<(usize, String)>,
    }
    let mut pending: Option<Pending> = None;

    let flush = |p: Pending, store: &mut CertStore, entries: &mut Vec<CertEntry>| -> Result<(), ParseError> {
        let (claim_line, ambient_str, small_ref, big_ref) = p.claim.ok_or(ParseError {
            line: p.line,
            message: format!("certificate {} has no claim line", p.id),
        })?;
        let ambient = parse_ambient(&ambient_str)
            .map_err(|message| ParseError { line: claim_line, message })?;
        let twisted = ambient.twisted_level().is_some();
        let mut thin_ctx: Vec<Face> = Vec::new();
        for (line, raw) in &p.thin_raw {
            let labels: Vec<Label> = raw
                .split_whitespace()
                .map(|tok| {
                    Label::parse(tok, twisted).ok_or(ParseError {
                        line: *line,
                        message: format!("bad vertex label {tok}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            let face = ambient
                .face_from_labels(&labels)
                .map_err(|e| ParseError { line: *line, message: e.to_string() })?;
            thin_ctx.push(face);
        }
        let small = resolve_ref(&ambient, &thin_ctx, &small_ref)
            .map_err(|message| ParseError { line: claim_line, message })?;
        let big = resolve_ref(&ambient, &thin_ctx, &big_ref)
            .map_err(|message| ParseError { line: claim_line, message })?;
        let claim = ScaledInclusion::new(small, big)
            .map_err(|message| ParseError { line: claim_line, message })?;

        let mut justs = Vec::new();
        for (line, raw) in &p.steps {
            justs.push(parse_step(&ambient, twisted, raw).map_err(|message| ParseError {
                line: *line,
                message,
            })?);
        }
        // lenient: defective proofs should fail verification, not parsing
        let cert = crate::anodyne::assemble_lenient(&p.id, claim, justs, store);
        store.insert(cert.clone());
        entries.push(CertEntry {
            refs: CertRefs { ambient: ambient_str, thin_ctx, small: small_ref, big: big_ref },
            cert,
        });
        Ok(())
    };

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.splitn(2, ' ');
        let keyword = parts.next().unwrap();
        let rest = parts.next().unwrap_or("").trim().to_string();
        match keyword {
            "cert" => {
                if let Some(p) = pending.take() {
                    flush(p, &mut store, &mut entries)?;
                }
                if rest.is_empty() {
                    return Err(ParseError { line, message: "cert line needs an id".into() });
                }
                pending = Some(Pending {
                    id: rest,
                    line,
                    thin_raw: Vec::new(),
                    claim: None,
                    steps: Vec::new(),
                });
            }
            "thin" => {
                let p = pending
                    .as_mut()
                    .ok_or(ParseError { line, message: "thin line outside a certificate".into() })?;
                p.thin_raw.push((line, rest));
            }
            "claim" => {
                let p = pending
                    .as_mut()
                    .ok_or(ParseError { line, message: "claim line outside a certificate".into() })?;
                let mut toks = rest.split_whitespace();
                let ambient_str = toks
                    .next()
                    .ok_or(ParseError { line, message: "claim needs an ambient".into() })?
                    .to_string();
                let small = toks
                    .next()
                    .and_then(|t| t.strip_prefix("small="))
                    .ok_or(ParseError { line, message: "claim needs small=<ref>".into() })?
                    .to_string();
                let big = toks
                    .next()
                    .and_then(|t| t.strip_prefix("big="))
                    .ok_or(ParseError { line, message: "claim needs big=<ref>".into() })?
                    .to_string();
                p.claim = Some((line, ambient_str, small, big));
            }
            "step" => {
                let p = pending
                    .as_mut()
                    .ok_or(ParseError { line, message: "step line outside a certificate".into() })?;
                p.steps.push((line, rest));
            }
            other => {
                return Err(ParseError { line, message: format!("unknown keyword {other}") });
            }
        }
    }
    if let Some(p) = pending.take() {
        flush(p, &mut store, &mut entries)?;
    }
    Ok(entries)
}

fn parse_step(ambient: &Ambient, twisted: bool, rest: &str) -> Result<Justification, String> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    if toks.len() < 2 {
        return Err("malformed step line".into());
    }
    // toks[0] is the step index; kept for readability, not meaning
    let kind = toks[1];
    let embed_at = toks
        .iter()
        .position(|&t| t == "embed")
        .ok_or_else(|| "step line has no embedding".to_string())?;
    let embed: Vec<usize> = toks[embed_at + 1..]
        .iter()
        .map(|tok| {
            let label =
                Label::parse(tok, twisted).ok_or_else(|| format!("bad vertex label {tok}"))?;
            ambient.position(label).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let get_kv = |key: &str| -> Option<u32> {
        toks[2..embed_at].iter().find_map(|t| {
            t.strip_prefix(key).and_then(|v| v.strip_prefix('=')).and_then(|v| v.parse().ok())
        })
    };
    match kind {
        "an1" => {
            let n = get_kv("n").ok_or("an1 needs n=<n>")?;
            let i = get_kv("i").ok_or("an1 needs i=<i>")?;
            Ok(Justification::An1 { n, i, embed })
        }
        "an2" => Ok(Justification::An2 { embed }),
        "trusted" => {
            let rule = RuleId::parse(toks[2]).ok_or_else(|| format!("unknown rule {}", toks[2]))?;
            let i = get_kv("i").unwrap_or(0);
            Ok(Justification::Trusted { rule, i, embed })
        }
        "derived" => {
            if toks.len() < 3 {
                return Err("derived step needs a certificate id".into());
            }
            Ok(Justification::Derived { cert_id: toks[2].to_string(), embed })
        }
        other => Err(format!("unknown step kind {other}")),
    }
}

/// File entry for a lemma36 certificate, recording the explicit scaling as
/// thin context lines.
pub fn lemma36_entry(scaling: &ScaledComplex, m: &BTreeSet<u32>, dual: bool) -> Result<CertEntry, String> {
    let cert = crate::anodyne::lemma36(scaling, m, dual).map_err(|v| v.0)?;
    let m_list: Vec<String> = m.iter().map(|v| v.to_string()).collect();
    let refs = CertRefs {
        ambient: ambient_ref(scaling.ambient()),
        thin_ctx: scaling.thin().iter().copied().collect(),
        small: format!("horn{{{}}}", m_list.join(",")),
        big: "full".to_string(),
    };
    Ok(CertEntry { refs, cert })
}

/// File entries for a named certificate together with the dependency
/// closure it needs, in replayable order.
pub fn named_entries(cert: &Certificate, store: &CertStore) -> Result<Vec<CertEntry>, String> {
    let mut order: Vec<String> = Vec::new();
    collect_deps(cert, store, &mut order)?;
    let mut entries = Vec::new();
    for id in order {
        let c = if id == cert.id { cert } else { store.get(&id).unwrap() };
        let (small, big) =
            refs_for(&id).ok_or_else(|| format!("no reference names for certificate {id}"))?;
        entries.push(CertEntry {
            refs: CertRefs {
                ambient: ambient_ref(c.claim.ambient()),
                thin_ctx: Vec::new(),
                small,
                big,
            },
            cert: c.clone(),
        });
    }
    Ok(entries)
}

fn collect_deps(cert: &Certificate, store: &CertStore, order: &mut Vec<String>) -> Result<(), String> {
    for step in &cert.steps {
        if let Justification::Derived { cert_id, .. } = &step.just {
            if !order.iter().any(|x| x == cert_id) {
                let sub = store
                    .get(cert_id)
                    .ok_or_else(|| format!("dangling certificate reference {cert_id}"))?;
                collect_deps(sub, store, order)?;
            }
        }
    }
    if !order.iter().any(|x| x == &cert.id) {
        order.push(cert.id.clone());
    }
    Ok(())
}

// ---------------------------------------------------------------------------

/// Convenience wrapper: faces of `tw(n)` by twisted labels, for tests.
pub fn tw_face_of(n: u32, verts: &[(u8, u32)]) -> Face {
    tw_face(n, verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anodyne::{trust_base, verify};
    use crate::constructions::{tw_coface, Family};
    use crate::scaling::ScalingMode;

    #[test]
    fn spine_p_cert_is_generator_only() {
        let cert = cert_spine_p().unwrap();
        let store = CertStore::new();
        let report = verify(&cert, &store);
        assert!(report.pass, "{:?}", report.failure);
        assert!(report.trust.is_empty());
        assert_eq!(cert.steps.len(), 5);
    }

    #[test]
    fn t_inner_2_1_uses_two_sharp_horns() {
        let cert = cert_t_inner(2, 1).unwrap();
        let report = verify(&cert, &CertStore::new());
        assert!(report.pass, "{:?}", report.failure);
        assert_eq!(report.trust.get(&RuleId::SharpInnerHorn), Some(&2));
        assert_eq!(report.trust.len(), 1);
    }

    #[test]
    fn t_inner_all_small_levels() {
        for n in 2..=3u32 {
            for i in 1..n {
                let cert = cert_t_inner(n, i).unwrap();
                let report = verify(&cert, &CertStore::new());
                assert!(report.pass, "t_inner({n},{i}): {:?}", report.failure);
                assert_eq!(report.trust.get(&RuleId::SharpInnerHorn), Some(&2));
            }
        }
    }

    #[test]
    fn t_in_q_is_trust_free() {
        for n in 1..=3u32 {
            let cert = cert_t_in_q(n).unwrap();
            let report = verify(&cert, &CertStore::new());
            assert!(report.pass, "t_in_q({n}): {:?}", report.failure);
            assert!(report.trust.is_empty());
        }
    }

    #[test]
    fn cart_certs() {
        for n in 1..=3u32 {
            let cert = cert_cart(n).unwrap();
            let report = verify(&cert, &CertStore::new());
            assert!(report.pass, "cart({n}): {:?}", report.failure);
            assert!(report.trust.is_empty());
        }
        let prime2 = cert_cart_prime(2).unwrap();
        assert!(prime2.steps.is_empty());
        assert!(verify(&prime2, &CertStore::new()).pass);
        let prime3 = cert_cart_prime(3).unwrap();
        let report = verify(&prime3, &CertStore::new());
        assert!(report.pass, "{:?}", report.failure);
        assert_eq!(report.trust.get(&RuleId::Thin3Simplex), Some(&2));
        assert_eq!(report.trust.len(), 1);
    }

    #[test]
    fn q_inner_trust() {
        let cert = cert_q_inner(2, 1).unwrap();
        let report = verify(&cert, &CertStore::new());
        assert!(report.pass, "{:?}", report.failure);
        assert_eq!(report.trust.get(&RuleId::SharpInnerHorn), Some(&2));
        assert_eq!(report.trust.get(&RuleId::GsK), Some(&1));
    }

    #[test]
    fn q_cosegal_trust_set() {
        let mut store = CertStore::new();
        let cert = cert_q_cosegal(3, &mut store).unwrap();
        let report = verify(&cert, &store);
        assert!(report.pass, "{:?}", report.failure);
        let rules: Vec<RuleId> = report.trust.keys().copied().collect();
        assert_eq!(rules, vec![RuleId::SharpInnerHorn, RuleId::GsK]);
        assert_eq!(trust_base(&cert, &store).unwrap(), report.trust);
    }

    #[test]
    fn t_cosegal_trust_set() {
        let mut store = CertStore::new();
        let cert = cert_t_cosegal(3, &mut store).unwrap();
        let report = verify(&cert, &store);
        assert!(report.pass, "{:?}", report.failure);
        let rules: Vec<RuleId> = report.trust.keys().copied().collect();
        assert_eq!(rules, vec![RuleId::SharpInnerHorn]);
    }

    #[test]
    fn file_round_trip() {
        let mut store = CertStore::new();
        let cert = cert_q_cosegal(2, &mut store).unwrap();
        let entries = named_entries(&cert, &store).unwrap();
        let text = render_file(&entries);
        let parsed = parse_file(&text, &CertStore::new()).unwrap();
        assert_eq!(parsed, entries);
        assert_eq!(render_file(&parsed), text);
    }

    #[test]
    fn deep_derived_file_round_trip() {
        let mut store = CertStore::new();
        let cert = cert_t_cosegal(3, &mut store).unwrap();
        let entries = named_entries(&cert, &store).unwrap();
        assert!(entries.len() > 3, "dependency closure rendered first");
        let text = render_file(&entries);
        let parsed = parse_file(&text, &CertStore::new()).unwrap();
        assert_eq!(render_file(&parsed), text);
        // the last entry is the main claim; replaying it against the
        // earlier entries passes
        let mut replay = CertStore::new();
        for e in &parsed[..parsed.len() - 1] {
            replay.insert(e.cert.clone());
        }
        let report = verify(&parsed.last().unwrap().cert, &replay);
        assert!(report.pass, "{:?}", report.failure);
    }

    #[test]
    fn lemma36_entry_round_trip() {
        let full = Subcomplex::full(Ambient::simplex(5));
        let thin: BTreeSet<Face> = [
            Face::from_positions([2usize, 4, 5]),
            Face::from_positions([3usize, 4, 5]),
        ]
        .into_iter()
        .collect();
        let scaling = ScaledComplex::explicit(full, thin).unwrap();
        let m: BTreeSet<u32> = [1u32, 3, 4].into_iter().collect();
        let entry = lemma36_entry(&scaling, &m, false).unwrap();
        let text = render_file(std::slice::from_ref(&entry));
        let parsed = parse_file(&text, &CertStore::new()).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0], entry);
        let report = verify(&parsed[0].cert, &CertStore::new());
        assert!(report.pass);
    }

    #[test]
    fn corrupted_file_fails_verification() {
        let cert = cert_spine_p().unwrap();
        let entry = CertEntry {
            refs: CertRefs {
                ambient: "tw:1".into(),
                thin_ctx: vec![],
                small: "spine_p".into(),
                big: "p(1)".into(),
            },
            cert,
        };
        let text = render_file(std::slice::from_ref(&entry));
        // swap one An1 step's pivot: parsing stays lenient, replay fails
        let bad = text.replace("an1 n=3 i=2", "an1 n=3 i=1");
        let parsed = parse_file(&bad, &CertStore::new()).unwrap();
        let report = verify(&parsed[0].cert, &CertStore::new());
        assert!(!report.pass);
        assert_eq!(report.failure.unwrap().step, 4);
        // garbage keywords are still parse errors
        let err = parse_file("bogus line\n", &CertStore::new()).unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn latching_t_matches_coface_union_scaled() {
        // cross-check that the derived embeddings used by the builders are
        // the cosimplicial cofaces
        for n in 1..=3u32 {
            for i in 0..=n {
                let keep: Vec<u32> = (0..=n).filter(|&j| j != i).collect();
                assert_eq!(face_embedding(n, &keep), tw_coface(n - 1, i).positions().to_vec());
            }
        }
        let _ = Family::Q;
    }

    #[test]
    fn mutated_thin_step_fails_at_scale() {
        let mut cert = cert_t_in_q(3).unwrap();
        let victim = cert
            .steps
            .iter()
            .position(|s| !s.added_thins.is_empty())
            .expect("some step marks a thin triangle");
        let tri = *cert.steps[victim].added_thins.iter().next().unwrap();
        cert.steps[victim].added_thins.remove(&tri);
        let report = verify(&cert, &CertStore::new());
        assert!(!report.pass);
        assert_eq!(report.failure.as_ref().unwrap().step, victim + 1);

        let mut cert2 = cert_spine_p().unwrap();
        let last = cert2.steps.len() - 1;
        cert2.steps[last].added_thins.clear();
        let report = verify(&cert2, &CertStore::new());
        assert!(!report.pass);
        assert!(report.failure.unwrap().reason.contains("recorded added-thin"));
    }

    #[test]
    fn attach_rejects_non_horn_intersections() {
        // the full boundary is not a horn: no 2-facet pairing applies
        let amb = Ambient::twisted(1);
        let top = amb.top_face();
        let boundary = Subcomplex::horn(amb.clone(), top, Face(0)).unwrap();
        let sharp = ScaledComplex::make(Subcomplex::full(amb), ScalingMode::Sharp);
        let err = attach_steps(&boundary, top, sharp.thin()).unwrap_err();
        assert!(err.contains("no admissible horn"), "{err}");
    }
}
