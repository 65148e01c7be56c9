//! The named scaled complexes: `Q(n)`, `Ω(K)`, `T(n)`, the staircase and
//! interpolating simplices, the filtration complexes, latching objects,
//! co-Segal subobjects, and the truncated path complex `E(n)`.

use std::collections::BTreeSet;

use crate::complex::{Ambient, ComplexError, Face, Subcomplex, VertexMap};
use crate::scaling::{ScaledComplex, ScalingMode};

/// Position of the twisted vertex `row i` inside the `tw(n)` ambient.
pub fn tw_pos(n: u32, row: u8, idx: u32) -> usize {
    debug_assert!(idx <= n);
    match row {
        0 => idx as usize,
        _ => (2 * n + 1 - idx) as usize,
    }
}

/// The face of `tw(n)` spanned by the given twisted vertices.
pub fn tw_face(n: u32, verts: &[(u8, u32)]) -> Face {
    Face::from_positions(verts.iter().map(|&(r, i)| tw_pos(n, r, i)))
}

/// The full row-`r` simplex `Δ^n` or `Δ^{n,op}` inside `tw(n)`.
pub fn row_face(n: u32, row: u8) -> Face {
    Face::from_positions((0..=n).map(|i| tw_pos(n, row, i)))
}

/// The staircase simplex `σ(r) = Δ^{00,…,0r,1r,…,1n}`.
pub fn sigma(n: u32, r: u32) -> Result<Face, ComplexError> {
    if r > n {
        return Err(ComplexError::Range(format!("sigma({n},{r}): need 0 ≤ r ≤ n")));
    }
    let mut verts: Vec<(u8, u32)> = (0..=r).map(|i| (0, i)).collect();
    verts.extend((r..=n).map(|i| (1, i)));
    Ok(tw_face(n, &verts))
}

/// The interpolating simplex `τ(k,l) = Δ^{00,…,0k,0l,…,0n,1k,…,1n}`, with
/// `τ(k,n+1) = σ(k)`.
pub fn tau(n: u32, k: u32, l: u32) -> Result<Face, ComplexError> {
    if !(k < l && l <= n + 1 && k <= n) {
        return Err(ComplexError::Range(format!("tau({n},{k},{l}): need 0 ≤ k < l ≤ n+1")));
    }
    let mut verts: Vec<(u8, u32)> = (0..=k).map(|i| (0, i)).collect();
    verts.extend((l..=n).map(|i| (0, i)));
    verts.extend((k..=n).map(|i| (1, i)));
    Ok(tw_face(n, &verts))
}

/// The thin-triangle set `T_{Q(n)} = T1 ∪ T2 ∪ T3` (degenerates implicit).
pub fn q_thin(n: u32) -> BTreeSet<Face> {
    let mut thin = BTreeSet::new();
    // T1: three vertices in one row
    for row in 0..=1u8 {
        for k in 0..=n {
            for k1 in (k + 1)..=n {
                for k2 in (k1 + 1)..=n {
                    thin.insert(tw_face(n, &[(row, k), (row, k1), (row, k2)]));
                }
            }
        }
    }
    // T2: {0k, 0k', 1k''} with k < k' ≤ k''
    // T3: {1k, 1k', 0k''} with k < k' ≤ k''
    for k in 0..=n {
        for k1 in (k + 1)..=n {
            for k2 in k1..=n {
                thin.insert(tw_face(n, &[(0, k), (0, k1), (1, k2)]));
                thin.insert(tw_face(n, &[(1, k), (1, k1), (0, k2)]));
            }
        }
    }
    thin
}

/// The `T3` family `{1k,1k',0k''}` of `T_{Q(n)}` alone.
pub fn t3_family(n: u32) -> BTreeSet<Face> {
    let mut thin = BTreeSet::new();
    for k in 0..=n {
        for k1 in (k + 1)..=n {
            for k2 in k1..=n {
                thin.insert(tw_face(n, &[(1, k), (1, k1), (0, k2)]));
            }
        }
    }
    thin
}

/// The scaled `(2n+1)`-simplex `Q(n)`.
pub fn q(n: u32) -> ScaledComplex {
    let full = Subcomplex::full(Ambient::twisted(n));
    ScaledComplex::explicit(full, q_thin(n)).unwrap()
}

/// `Q(K)` for a subcomplex `K ⊆ Δ^n`: the union over faces `Δ^I ⊆ K` of the
/// doubled simplices `Δ^I ⋆ Δ^{I,op}`, with the scaling induced from `Q(n)`.
pub fn q_of(n: u32, k: &Subcomplex) -> ScaledComplex {
    assert_eq!(k.ambient().simplex_level(), Some(n), "K must live in Δ^n");
    let ambient = Ambient::twisted(n);
    let generators: Vec<Face> = k
        .faces()
        .map(|f| {
            let mut verts: Vec<(u8, u32)> = f.positions().map(|p| (0u8, p as u32)).collect();
            verts.extend(f.positions().map(|p| (1u8, p as u32)));
            tw_face(n, &verts)
        })
        .collect();
    let complex = Subcomplex::spanned_by_faces(ambient, &generators);
    q(n).induce(complex).unwrap()
}

/// `Ω(Δ^1 × K)` for `K ⊆ Δ^n`, computed from the maximal-chain description:
/// the union over faces `Δ^I ⊆ K` and `r ∈ I` of the closures of
/// `{0i : i ∈ I, i ≤ r} ∪ {1i : i ∈ I, i ≥ r}`.
pub fn omega(n: u32, k: &Subcomplex) -> Subcomplex {
    assert_eq!(k.ambient().simplex_level(), Some(n), "K must live in Δ^n");
    let ambient = Ambient::twisted(n);
    let mut generators: Vec<Face> = Vec::new();
    for f in k.faces() {
        let idxs: Vec<u32> = f.positions().map(|p| p as u32).collect();
        for &r in &idxs {
            let mut verts: Vec<(u8, u32)> = idxs.iter().filter(|&&i| i <= r).map(|&i| (0u8, i)).collect();
            verts.extend(idxs.iter().filter(|&&i| i >= r).map(|&i| (1u8, i)));
            generators.push(tw_face(n, &verts));
        }
    }
    Subcomplex::spanned_by_faces(ambient, &generators)
}

/// `Ω^n = Ω(Δ^1 × Δ^n)`, the union of the staircase closures.
pub fn omega_full(n: u32) -> Subcomplex {
    let gens: Vec<Face> = (0..=n).map(|r| sigma(n, r).unwrap()).collect();
    Subcomplex::spanned_by_faces(Ambient::twisted(n), &gens)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TVariant {
    Plain,
    Cart,
}

/// The cartesian thin set `T_{T(n)} ∪ {Δ^{0i,1(n-1),1n} | 0 ≤ i < n}` on the
/// full `Ω^n`.
pub fn cart_thin(n: u32) -> BTreeSet<Face> {
    let omega_n = omega_full(n);
    let mut thin: BTreeSet<Face> =
        q_thin(n).into_iter().filter(|t| omega_n.contains_face(*t)).collect();
    for i in 0..n {
        thin.insert(tw_face(n, &[(0, i), (1, n - 1), (1, n)]));
    }
    thin
}

/// `T(n)`: the subcomplex `Ω^n` of `Q(n)` with the induced scaling, or the
/// cartesian variant with the extra thin triangles of `T(n)_cart`.
pub fn t(n: u32, variant: TVariant) -> Result<ScaledComplex, ComplexError> {
    let complex = omega_full(n);
    match variant {
        TVariant::Plain => Ok(q(n).induce(complex).unwrap()),
        TVariant::Cart => {
            if n == 0 {
                return Err(ComplexError::Range("T(n)_cart requires n ≥ 1".into()));
            }
            Ok(ScaledComplex::explicit(complex, cart_thin(n)).unwrap())
        }
    }
}

/// The scaled complex with underlying `K ⊆ Ω^n` and the scaling induced from
/// `T(n)_cart`.
pub fn cart_induce(n: u32, k: Subcomplex) -> ScaledComplex {
    t(n, TVariant::Cart).unwrap().induce(k).unwrap()
}

// ---------------------------------------------------------------------------
// plain-simplex subcomplexes
// ---------------------------------------------------------------------------

/// `Λ^n_M` inside the plain `Δ^n`.
pub fn plain_horn(n: u32, m: &[u32]) -> Subcomplex {
    let amb = Ambient::simplex(n);
    let top = amb.top_face();
    let m_face = Face::from_positions(m.iter().map(|&i| i as usize));
    Subcomplex::horn(amb, top, m_face).unwrap()
}

/// The closure of the face `Δ^I` of `Δ^n`.
pub fn plain_face(n: u32, verts: &[u32]) -> Subcomplex {
    let amb = Ambient::simplex(n);
    Subcomplex::closure_of(amb, Face::from_positions(verts.iter().map(|&i| i as usize)))
}

/// The spine `sp_{[i,j]} = Δ^{i,i+1} ∪ … ∪ Δ^{j-1,j}` of `Δ^n`.
pub fn spine(n: u32, i: u32, j: u32) -> Result<Subcomplex, ComplexError> {
    if !(i <= j && j <= n) {
        return Err(ComplexError::Range(format!("spine({n},{i},{j}): need 0 ≤ i ≤ j ≤ n")));
    }
    let amb = Ambient::simplex(n);
    let mut gens: Vec<Face> = (i..j).map(|k| Face::from_positions([k as usize, k as usize + 1])).collect();
    if gens.is_empty() {
        gens.push(Face::from_positions([i as usize]));
    }
    Ok(Subcomplex::spanned_by_faces(amb, &gens))
}

/// `s(i,n) = Δ^{0,…,n-1} ∪ Δ^{i,…,n}`.
pub fn s_complex(n: u32, i: u32) -> Result<Subcomplex, ComplexError> {
    if i >= n {
        return Err(ComplexError::Range(format!("s({i},{n}): need 0 ≤ i < n")));
    }
    let a: Vec<u32> = (0..n).collect();
    let b: Vec<u32> = (i..=n).collect();
    plain_face(n, &a).union(&plain_face(n, &b))
}

/// The consecutive horn `Λ^n_{{1,…,i}}` of `Δ^n`.
pub fn plain_horn_consec(n: u32, i: u32) -> Result<Subcomplex, ComplexError> {
    if !(0 < i && i < n) {
        return Err(ComplexError::Range(format!("horn_consec({n},{i}): need 0 < i < n")));
    }
    let m: Vec<u32> = (1..=i).collect();
    Ok(plain_horn(n, &m))
}

// ---------------------------------------------------------------------------
// filtration complexes
// ---------------------------------------------------------------------------

/// `Λ^n_i T = Ω(Δ^1 × Λ^n_i)` with the scaling induced from `T(n)`.
pub fn lambda_t(n: u32, i: u32) -> Result<ScaledComplex, ComplexError> {
    if !(0 < i && i < n) {
        return Err(ComplexError::Range(format!("lambda_t({n},{i}): need 0 < i < n")));
    }
    let k = plain_horn(n, &[i]);
    t(n, TVariant::Plain)?.induce(omega(n, &k))
}

fn bar_complex(n: u32, i: u32) -> Subcomplex {
    let k = plain_horn(n, &[i]);
    let rows = Subcomplex::spanned_by_faces(Ambient::twisted(n), &[row_face(n, 0), row_face(n, 1)]);
    omega(n, &k).union(&rows).unwrap()
}

/// `Λ̄^n_i T = Ω(Δ^1 × Λ^n_i ∪ ∂Δ^1 × Δ^n)` with the scaling induced from `T(n)`.
pub fn lambda_bar_t(n: u32, i: u32) -> Result<ScaledComplex, ComplexError> {
    if i > n {
        return Err(ComplexError::Range(format!("lambda_bar_t({n},{i}): need 0 ≤ i ≤ n")));
    }
    t(n, TVariant::Plain)?.induce(bar_complex(n, i))
}

/// `X(s) = Λ̄^n_i T ∪ σ(s)_S ∪ … ∪ σ(n)_S`.
pub fn x_complex(n: u32, i: u32, s: u32) -> Result<ScaledComplex, ComplexError> {
    if s > n + 1 {
        return Err(ComplexError::Range(format!("x({n},{i},{s}): need 0 ≤ s ≤ n+1")));
    }
    let mut c = bar_complex(n, i);
    for r in s..=n {
        c = c.union(&Subcomplex::closure_of(c.ambient().clone(), sigma(n, r)?))?;
    }
    t(n, TVariant::Plain)?.induce(c)
}

/// `U(k) = T(n) ∪ τ(k,k+1)_S ∪ … ∪ τ(n,n+1)_S` with the scaling induced from `Q(n)`.
pub fn u_complex(n: u32, k: u32) -> Result<ScaledComplex, ComplexError> {
    if k > n {
        return Err(ComplexError::Range(format!("u({n},{k}): need 0 ≤ k ≤ n")));
    }
    let mut c = omega_full(n);
    for i in k..=n {
        c = c.union(&Subcomplex::closure_of(c.ambient().clone(), tau(n, i, i + 1)?))?;
    }
    q(n).induce(c)
}

/// `V(k,l) = U(k+1) ∪ τ(k,l)_S ∪ … ∪ τ(k,n+1)_S` with the scaling induced from `Q(n)`.
pub fn v_complex(n: u32, k: u32, l: u32) -> Result<ScaledComplex, ComplexError> {
    if !(k < n && k < l && l <= n + 1) {
        return Err(ComplexError::Range(format!("v({n},{k},{l}): need 0 ≤ k < n, k+1 ≤ l ≤ n+1")));
    }
    let mut c = u_complex(n, k + 1)?.complex().clone();
    for j in l..=n + 1 {
        c = c.union(&Subcomplex::closure_of(c.ambient().clone(), tau(n, k, j)?))?;
    }
    q(n).induce(c)
}

/// `Λ̄^n_n T_cart`: the same underlying complex as `Λ̄^n_n T`, with the
/// scaling induced from `T(n)_cart`.
pub fn lambda_bar_t_cart(n: u32) -> Result<ScaledComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Range("lambda_bar_t_cart requires n ≥ 1".into()));
    }
    Ok(cart_induce(n, bar_complex(n, n)))
}

/// `X(s)_cart = Λ̄^n_n T_cart ∪ σ(s)_cart ∪ … ∪ σ(n)_cart`.
pub fn x_cart(n: u32, s: u32) -> Result<ScaledComplex, ComplexError> {
    if n == 0 || s > n + 1 {
        return Err(ComplexError::Range(format!("x_cart({n},{s}): need n ≥ 1, 0 ≤ s ≤ n+1")));
    }
    let mut c = bar_complex(n, n);
    for r in s..=n {
        c = c.union(&Subcomplex::closure_of(c.ambient().clone(), sigma(n, r)?))?;
    }
    Ok(cart_induce(n, c))
}

/// `Λ̄^n_n T' = Λ̄^n_n T ∪ Ω(Δ^1 × Δ^{n-1,n})_cart`: the underlying complex
/// of `Λ̄^n_n T`, carrying the plain scaling away from the last square and
/// the cartesian scaling on it.
pub fn lambda_bar_t_prime(n: u32) -> Result<ScaledComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Range("lambda_bar_t_prime requires n ≥ 1".into()));
    }
    let complex = bar_complex(n, n);
    let plain_part = t(n, TVariant::Plain)?.induce(complex.clone())?;
    let square = omega(n, &plain_face(n, &[n - 1, n]));
    let cart_part = cart_induce(n, square);
    plain_part.union(&cart_part)
}

/// `(K^n_i)_S = Q(Λ^n_i) ∪ Δ^n_♯ ∪ Δ^{n,op}_♯` with the scaling induced from `Q(n)`.
pub fn k_complex(n: u32, i: u32) -> Result<ScaledComplex, ComplexError> {
    if !(0 < i && i < n) {
        return Err(ComplexError::Range(format!("k({n},{i}): need 0 < i < n")));
    }
    let horn_part = q_of(n, &plain_horn(n, &[i])).complex().clone();
    let rows = Subcomplex::spanned_by_faces(Ambient::twisted(n), &[row_face(n, 0), row_face(n, 1)]);
    Ok(q(n).induce(horn_part.union(&rows)?).unwrap())
}

/// `Q(Λ^n_i)`.
pub fn q_horn(n: u32, i: u32) -> Result<ScaledComplex, ComplexError> {
    if !(0 < i && i < n) {
        return Err(ComplexError::Range(format!("q_horn({n},{i}): need 0 < i < n")));
    }
    Ok(q_of(n, &plain_horn(n, &[i])))
}

/// `Q(Λ^n_{{1,…,i}})`.
pub fn q_horn_consec(n: u32, i: u32) -> Result<ScaledComplex, ComplexError> {
    Ok(q_of(n, &plain_horn_consec(n, i)?))
}

/// The co-Segal subobject of `Q(n)`: `Q(sp_{[0,n]})`.
pub fn cosegal_q(n: u32) -> ScaledComplex {
    q_of(n, &spine(n, 0, n).unwrap())
}

/// The co-Segal subobject of `T(n)`: `Ω(Δ^1 × sp_{[0,n]})` with the induced scaling.
pub fn cosegal_t(n: u32) -> ScaledComplex {
    t(n, TVariant::Plain).unwrap().induce(omega(n, &spine(n, 0, n).unwrap())).unwrap()
}

/// `P(1) = (Δ^1 ⋆ Δ^{1,op})_♯`.
pub fn p1() -> ScaledComplex {
    ScaledComplex::make(Subcomplex::full(Ambient::twisted(1)), ScalingMode::Sharp)
}

/// `Sp_1(P)`: the sharp spine `00 → 01 → 11 → 10` of `tw(1)`.
pub fn spine_p() -> ScaledComplex {
    let amb = Ambient::twisted(1);
    let gens = [
        Face::from_positions([0usize, 1]),
        Face::from_positions([1usize, 2]),
        Face::from_positions([2usize, 3]),
    ];
    ScaledComplex::make(Subcomplex::spanned_by_faces(amb, &gens), ScalingMode::Sharp)
}

// ---------------------------------------------------------------------------
// cosimplicial structure
// ---------------------------------------------------------------------------

/// Coface `δ^i : [m] → [m+1]` as a vertex map of plain simplices.
pub fn plain_coface(m: u32, i: u32) -> VertexMap {
    let src = Ambient::simplex(m);
    let tgt = Ambient::simplex(m + 1);
    let map = (0..=m).map(|j| if j < i { j as usize } else { j as usize + 1 }).collect();
    VertexMap::new(src, tgt, map).unwrap()
}

/// Codegeneracy `σ^j : [m] → [m-1]` as a vertex map of plain simplices.
pub fn plain_codegen(m: u32, j: u32) -> VertexMap {
    let src = Ambient::simplex(m);
    let tgt = Ambient::simplex(m - 1);
    let map = (0..=m).map(|k| if k <= j { k as usize } else { k as usize - 1 }).collect();
    VertexMap::new(src, tgt, map).unwrap()
}

/// The twisted double of a monotone map `[m] → [n]`: acts as the map on both
/// rows of the twisted ambients.
pub fn tw_double(m: u32, n: u32, f: &[u32]) -> VertexMap {
    assert_eq!(f.len() as u32, m + 1);
    let src = Ambient::twisted(m);
    let tgt = Ambient::twisted(n);
    let mut map = vec![0usize; 2 * m as usize + 2];
    for j in 0..=m {
        map[tw_pos(m, 0, j)] = tw_pos(n, 0, f[j as usize]);
        map[tw_pos(m, 1, j)] = tw_pos(n, 1, f[j as usize]);
    }
    VertexMap::new(src, tgt, map).unwrap()
}

/// Twisted coface `tw(m) → tw(m+1)` doubling `δ^i`.
pub fn tw_coface(m: u32, i: u32) -> VertexMap {
    let f: Vec<u32> = (0..=m).map(|j| if j < i { j } else { j + 1 }).collect();
    tw_double(m, m + 1, &f)
}

/// Twisted codegeneracy `tw(m) → tw(m-1)` doubling `σ^j`.
pub fn tw_codegen(m: u32, j: u32) -> VertexMap {
    let f: Vec<u32> = (0..=m).map(|k| if k <= j { k } else { k - 1 }).collect();
    tw_double(m, m - 1, &f)
}

/// Coface of the opposite cosimplicial simplex: `δ^i` conjugated by the
/// order reversals of source and target.
pub fn op_coface(m: u32, i: u32) -> VertexMap {
    let src = Ambient::simplex(m);
    let tgt = Ambient::simplex(m + 1);
    let map = (0..=m)
        .map(|j| {
            let r = m - j;
            let image = if r < i { r } else { r + 1 };
            (m + 1 - image) as usize
        })
        .collect();
    VertexMap::new(src, tgt, map).unwrap()
}

/// Codegeneracy of the opposite cosimplicial simplex.
pub fn op_codegen(m: u32, j: u32) -> VertexMap {
    let src = Ambient::simplex(m);
    let tgt = Ambient::simplex(m - 1);
    let map = (0..=m)
        .map(|k| {
            let r = m - k;
            let image = if r <= j { r } else { r - 1 };
            (m - 1 - image) as usize
        })
        .collect();
    VertexMap::new(src, tgt, map).unwrap()
}

/// The cosimplicial families with scaled-complex levels.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Q,
    T,
    /// The unscaled staircase complexes, carried flat.
    Omega,
    DeltaSharp,
    DeltaOpSharp,
}

impl Family {
    pub fn level(self, n: u32) -> ScaledComplex {
        match self {
            Family::Q => q(n),
            Family::T => t(n, TVariant::Plain).unwrap(),
            Family::Omega => ScaledComplex::make(omega_full(n), ScalingMode::Flat),
            Family::DeltaSharp | Family::DeltaOpSharp => {
                ScaledComplex::make(Subcomplex::full(Ambient::simplex(n)), ScalingMode::Sharp)
            }
        }
    }

    pub fn coface(self, n: u32, i: u32) -> VertexMap {
        match self {
            Family::Q | Family::T | Family::Omega => tw_coface(n - 1, i),
            Family::DeltaSharp => plain_coface(n - 1, i),
            Family::DeltaOpSharp => op_coface(n - 1, i),
        }
    }

    pub fn codegen(self, n: u32, j: u32) -> VertexMap {
        match self {
            Family::Q | Family::T | Family::Omega => tw_codegen(n + 1, j),
            Family::DeltaSharp => plain_codegen(n + 1, j),
            Family::DeltaOpSharp => op_codegen(n + 1, j),
        }
    }

    /// Latching is supported for the Reedy-cofibrancy checks.
    pub fn supports_latching(self) -> bool {
        matches!(self, Family::Q | Family::T | Family::DeltaSharp)
    }
}

/// Image of a scaled complex under a vertex map: faces and nondegenerate
/// thin images.
pub fn scaled_image(map: &VertexMap, s: &ScaledComplex) -> Result<ScaledComplex, ComplexError> {
    let complex = s.complex().map_image(map)?;
    let thin: BTreeSet<Face> =
        s.thin().iter().map(|&t| map.apply(t)).filter(|t| t.dim() == 2).collect();
    ScaledComplex::explicit(complex, thin)
}

/// The `n`-th latching object: the union of the images of all cofaces
/// `family(n-1) → family(n)`.
pub fn latching(family: Family, n: u32) -> Result<ScaledComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Range("latching requires n ≥ 1".into()));
    }
    if !family.supports_latching() {
        return Err(ComplexError::Range(format!("unsupported family {family:?}")));
    }
    let prev = family.level(n - 1);
    let mut acc: Option<ScaledComplex> = None;
    for i in 0..=n {
        let img = scaled_image(&family.coface(n, i), &prev)?;
        acc = Some(match acc {
            None => img,
            Some(a) => a.union(&img)?,
        });
    }
    Ok(acc.unwrap())
}

// ---------------------------------------------------------------------------
// the path complex E(n)
// ---------------------------------------------------------------------------

/// Truncated nerve of the free groupoid on `[n]`: the `k`-simplices for
/// `k ≤ d` are the paths `(i_0,…,i_k)` on `{0,…,n}` with consecutive entries
/// distinct. Infinite-dimensional as a simplicial set, hence the truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathComplex {
    pub n: u32,
    pub max_dim: u32,
    pub paths: Vec<BTreeSet<Vec<u32>>>,
}

impl PathComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.paths.iter().map(|s| s.len()).collect()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.paths.get(p.len() - 1).is_some_and(|s| s.contains(p))
    }
}

/// `E(n)` truncated at dimension `d`; with `latching` set, only the paths
/// omitting at least one vertex value (the `n`-th latching object of `E(⋆)`).
pub fn e_nerve(n: u32, d: u32, latching: bool) -> PathComplex {
    let mut paths: Vec<BTreeSet<Vec<u32>>> = Vec::with_capacity(d as usize + 1);
    let mut level: Vec<Vec<u32>> = (0..=n).map(|i| vec![i]).collect();
    for dim in 0..=d {
        if dim > 0 {
            let mut next = Vec::new();
            for p in &level {
                let last = *p.last().unwrap();
                for v in 0..=n {
                    if v != last {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
            }
            level = next;
        }
        let keep: BTreeSet<Vec<u32>> = level
            .iter()
            .filter(|p| !latching || (0..=n).any(|v| !p.contains(&v)))
            .cloned()
            .collect();
        paths.push(keep);
    }
    PathComplex { n, max_dim: d, paths }
}

/// Image of a truncated path complex under the coface `δ^i : [n-1] → [n]`.
pub fn e_coface_image(src: &PathComplex, i: u32) -> PathComplex {
    let n = src.n + 1;
    let relabel = |v: u32| if v < i { v } else { v + 1 };
    let paths = src
        .paths
        .iter()
        .map(|level| level.iter().map(|p| p.iter().map(|&v| relabel(v)).collect()).collect())
        .collect();
    PathComplex { n, max_dim: src.max_dim, paths }
}

/// Union of truncated path complexes over the same `[n]`.
pub fn e_union(a: &PathComplex, b: &PathComplex) -> PathComplex {
    assert_eq!(a.n, b.n);
    assert_eq!(a.max_dim, b.max_dim);
    let paths = a
        .paths
        .iter()
        .zip(&b.paths)
        .map(|(x, y)| x.union(y).cloned().collect())
        .collect();
    PathComplex { n: a.n, max_dim: a.max_dim, paths }
}
