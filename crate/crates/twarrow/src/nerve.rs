//! Finite categories, their twisted-arrow simplex sets under the doubled
//! and staircase models, and the level-by-level comparison.
//!
//! At a sharply scaled nerve the scaling conditions are vacuous, so a
//! level-`n` simplex of the doubled model is a functor `[2n+1] → C` read
//! along the twisted vertex order, and a level-`n` simplex of the
//! staircase model is a compatible tuple of `(n+1)`-chains, one per
//! staircase simplex.

use std::collections::BTreeSet;
use std::fmt;

use crate::constructions::{tw_double, tw_pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CategoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

const MAX_OBJECTS: usize = 12;
const MAX_MORPHISMS: usize = 64;

#[derive(Clone, Debug)]
struct MorData {
    name: String,
    src: usize,
    dst: usize,
}

/// A finite category with a complete composition table, validated for
/// identity neutrality and associativity at construction.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    mors: Vec<MorData>,
    identity: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    /// Builds and validates a category. `mors` lists the non-identity
    /// morphisms; identities are created implicitly. `comps` are entries
    /// `(g, f, h)` meaning `g ∘ f = h`, by morphism name.
    pub fn new(
        name: &str,
        objects: Vec<String>,
        mors: Vec<(String, String, String)>,
        comps: Vec<(String, String, String)>,
    ) -> Result<FiniteCategory, CategoryError> {
        let err = |message: String| CategoryError { line: 0, message };
        if objects.len() > MAX_OBJECTS {
            return Err(err(format!("more than {MAX_OBJECTS} objects")));
        }
        let obj_index = |o: &str| -> Result<usize, CategoryError> {
            objects.iter().position(|x| x == o).ok_or(CategoryError {
                line: 0,
                message: format!("unknown object {o}"),
            })
        };
        let mut all_mors: Vec<MorData> = Vec::new();
        let mut identity = Vec::new();
        for (k, o) in objects.iter().enumerate() {
            identity.push(all_mors.len());
            all_mors.push(MorData { name: format!("id_{o}"), src: k, dst: k });
        }
        for (mname, s, d) in mors {
            all_mors.push(MorData { name: mname, src: obj_index(&s)?, dst: obj_index(&d)? });
        }
        if all_mors.len() > MAX_MORPHISMS {
            return Err(err(format!("more than {MAX_MORPHISMS} morphisms")));
        }
        let mor_index = |m: &str| -> Result<usize, CategoryError> {
            all_mors.iter().position(|x| x.name == m).ok_or(CategoryError {
                line: 0,
                message: format!("unknown morphism {m}"),
            })
        };
        let count = all_mors.len();
        let mut comp: Vec<Vec<Option<usize>>> = vec![vec![None; count]; count];
        for (k, m) in all_mors.iter().enumerate() {
            comp[k][identity[m.src]] = Some(k);
            comp[identity[m.dst]][k] = Some(k);
        }
        for (g, f, h) in comps {
            let (g, f, h) = (mor_index(&g)?, mor_index(&f)?, mor_index(&h)?);
            if all_mors[f].dst != all_mors[g].src {
                return Err(err(format!(
                    "composition {} ∘ {} is not composable",
                    all_mors[g].name, all_mors[f].name
                )));
            }
            if all_mors[h].src != all_mors[f].src || all_mors[h].dst != all_mors[g].dst {
                return Err(err(format!(
                    "composition {} ∘ {} = {} has mismatched endpoints",
                    all_mors[g].name, all_mors[f].name, all_mors[h].name
                )));
            }
            if let Some(prev) = comp[g][f] {
                if prev != h {
                    return Err(err(format!(
                        "conflicting entries for {} ∘ {}",
                        all_mors[g].name, all_mors[f].name
                    )));
                }
            }
            comp[g][f] = Some(h);
        }
        let cat = FiniteCategory {
            name: name.to_string(),
            objects,
            mors: all_mors,
            identity,
            comp,
        };
        cat.validate().map_err(err)?;
        Ok(cat)
    }

    fn validate(&self) -> Result<(), String> {
        let n = self.mors.len();
        for g in 0..n {
            for f in 0..n {
                let composable = self.mors[f].dst == self.mors[g].src;
                match self.comp[g][f] {
                    Some(h) => {
                        if !composable {
                            return Err(format!(
                                "table has entry for non-composable {} ∘ {}",
                                self.mors[g].name, self.mors[f].name
                            ));
                        }
                        if self.mors[h].src != self.mors[f].src
                            || self.mors[h].dst != self.mors[g].dst
                        {
                            return Err("composition endpoints broken".into());
                        }
                    }
                    None => {
                        if composable {
                            return Err(format!(
                                "missing composition {} ∘ {}",
                                self.mors[g].name, self.mors[f].name
                            ));
                        }
                    }
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    if self.mors[f].dst == self.mors[g].src && self.mors[g].dst == self.mors[h].src
                    {
                        let left = self.comp[h][self.comp[g][f].unwrap()].unwrap();
                        let right = self.comp[self.comp[h][g].unwrap()][f].unwrap();
                        if left != right {
                            return Err(format!(
                                "associativity fails on {} ∘ {} ∘ {}",
                                self.mors[h].name, self.mors[g].name, self.mors[f].name
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn mor_count(&self) -> usize {
        self.mors.len()
    }

    pub fn src(&self, m: usize) -> usize {
        self.mors[m].src
    }

    pub fn dst(&self, m: usize) -> usize {
        self.mors[m].dst
    }

    pub fn id(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[g][f].expect("composable")
    }

    /// Parses the line-oriented category format: `obj <name>`,
    /// `mor <name>: <src> -> <dst>`, `comp <g> <f> = <h>`.
    pub fn parse(name: &str, text: &str) -> Result<FiniteCategory, CategoryError> {
        let mut objects = Vec::new();
        let mut mors = Vec::new();
        let mut comps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let fail = |message: String| CategoryError { line, message };
            if let Some(rest) = t.strip_prefix("obj ") {
                objects.push(rest.trim().to_string());
            } else if let Some(rest) = t.strip_prefix("mor ") {
                let (mname, arrow) = rest
                    .split_once(':')
                    .ok_or_else(|| fail("expected `mor <name>: <src> -> <dst>`".into()))?;
                let (s, d) = arrow
                    .split_once("->")
                    .ok_or_else(|| fail("expected `-> <dst>`".into()))?;
                mors.push((
                    mname.trim().to_string(),
                    s.trim().to_string(),
                    d.trim().to_string(),
                ));
            } else if let Some(rest) = t.strip_prefix("comp ") {
                let (gf, h) = rest
                    .split_once('=')
                    .ok_or_else(|| fail("expected `comp <g> <f> = <h>`".into()))?;
                let parts: Vec<&str> = gf.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(fail("expected `comp <g> <f> = <h>`".into()));
                }
                comps.push((parts[0].to_string(), parts[1].to_string(), h.trim().to_string()));
            } else {
                return Err(fail(format!("unknown directive: {t}")));
            }
        }
        FiniteCategory::new(name, objects, mors, comps).map_err(|mut e| {
            // attribute validation failures to the end of the input
            if e.line == 0 {
                e.line = text.lines().count();
            }
            e
        })
    }

    /// A poset category: objects plus a reflexive-transitive `leq`.
    pub fn poset(name: &str, objects: &[&str], leq: impl Fn(usize, usize) -> bool) -> FiniteCategory {
        let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let mut mors = Vec::new();
        for a in 0..objs.len() {
            for b in 0..objs.len() {
                if a != b && leq(a, b) {
                    mors.push((format!("{}_{}", objects[a], objects[b]), objs[a].clone(), objs[b].clone()));
                }
            }
        }
        let mor_name = |a: usize, b: usize| {
            if a == b {
                format!("id_{}", objects[a])
            } else {
                format!("{}_{}", objects[a], objects[b])
            }
        };
        let mut comps = Vec::new();
        for a in 0..objs.len() {
            for b in 0..objs.len() {
                for c in 0..objs.len() {
                    if a != b && b != c && leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "leq must be transitive");
                        comps.push((mor_name(b, c), mor_name(a, b), mor_name(a, c)));
                    }
                }
            }
        }
        FiniteCategory::new(name, objs, mors, comps).expect("poset category is valid")
    }

    /// The linear poset `[n]`.
    pub fn chain(n: u32) -> FiniteCategory {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FiniteCategory::poset(&format!("[{n}]"), &refs, |a, b| a <= b)
    }

    pub fn terminal() -> FiniteCategory {
        FiniteCategory::poset("terminal", &["*"], |a, b| a == b)
    }

    /// The commutative square: the product poset `[1] × [1]`.
    pub fn commutative_square() -> FiniteCategory {
        let names = ["00", "01", "10", "11"];
        FiniteCategory::poset("square", &names, |a, b| {
            let (a0, a1) = (a / 2, a % 2);
            let (b0, b1) = (b / 2, b % 2);
            a0 <= b0 && a1 <= b1
        })
    }

    /// Two objects with a parallel pair of arrows and no relations.
    pub fn free_parallel_pair() -> FiniteCategory {
        FiniteCategory::new(
            "parallel-pair",
            vec!["x".into(), "y".into()],
            vec![
                ("f".into(), "x".into(), "y".into()),
                ("g".into(), "x".into(), "y".into()),
            ],
            vec![],
        )
        .unwrap()
    }

    /// A five-element non-linear poset: a diamond with a tail,
    /// `a < b, c < d < e` with `b, c` incomparable.
    pub fn poset5() -> FiniteCategory {
        let names = ["a", "b", "c", "d", "e"];
        let leq = |x: usize, y: usize| -> bool {
            if x == y {
                return true;
            }
            matches!((x, y), (0, _) | (1, 3) | (1, 4) | (2, 3) | (2, 4) | (3, 4))
        };
        FiniteCategory::poset("poset5", &names, leq)
    }

    /// The fixed comparison catalog.
    pub fn catalog() -> Vec<FiniteCategory> {
        vec![
            FiniteCategory::terminal(),
            FiniteCategory::chain(1),
            FiniteCategory::chain(2),
            FiniteCategory::commutative_square(),
            FiniteCategory::free_parallel_pair(),
            FiniteCategory::poset5(),
        ]
    }
}

/// A level-`n` simplex of the doubled model: the `2n+1` composable
/// morphisms of a functor `[2n+1] → C` along the twisted vertex order.
pub type QSimplex = Vec<usize>;

/// One staircase chain: the `n+1` composable morphisms of a functor
/// `[n+1] → C` along `σ(r)`.
pub type Chain = Vec<usize>;

/// A level-`n` simplex of the staircase model: one chain per `σ(r)`,
/// compatible on every overlap.
pub type TSimplex = Vec<Chain>;

/// All composable strings of the given length.
fn composable_strings(cat: &FiniteCategory, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(len);
    fn rec(cat: &FiniteCategory, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for m in 0..cat.mor_count() {
            if let Some(&last) = cur.last() {
                if cat.dst(last) != cat.src(m) {
                    continue;
                }
            }
            cur.push(m);
            rec(cat, len, cur, out);
            cur.pop();
        }
    }
    rec(cat, len, &mut cur, &mut out);
    out
}

/// Level `n` of the doubled model: all functors `[2n+1] → C`.
pub fn q_level(cat: &FiniteCategory, n: u32) -> BTreeSet<QSimplex> {
    composable_strings(cat, 2 * n as usize + 1).into_iter().collect()
}

/// Level `n` of the classical twisted arrow nerve, `Fun([n]⋆[n]^op, C)`,
/// read along the same vertex order.
pub fn classical_tw_level(cat: &FiniteCategory, n: u32) -> BTreeSet<QSimplex> {
    q_level(cat, n)
}

fn chain_objects(cat: &FiniteCategory, chain: &Chain) -> Vec<usize> {
    let mut objs = Vec::with_capacity(chain.len() + 1);
    objs.push(cat.src(chain[0]));
    for &m in chain {
        objs.push(cat.dst(m));
    }
    objs
}

/// Composite of a chain between positions `i ≤ j`.
fn chain_edge(cat: &FiniteCategory, chain: &Chain, i: usize, j: usize) -> usize {
    if i == j {
        return cat.id(chain_objects(cat, chain)[i]);
    }
    let mut acc = chain[i];
    for &m in &chain[i + 1..j] {
        acc = cat.compose(m, acc);
    }
    acc
}

/// Position of the twisted vertex `(row, idx)` along `σ(r)`.
fn sigma_index(n: u32, r: u32, row: u8, idx: u32) -> usize {
    if row == 0 {
        debug_assert!(idx <= r);
        idx as usize
    } else {
        debug_assert!(idx >= r);
        (r + 1 + (n - idx)) as usize
    }
}

fn sigma_vertices(n: u32, r: u32) -> Vec<(u8, u32)> {
    let mut v: Vec<(u8, u32)> = (0..=r).map(|i| (0u8, i)).collect();
    v.extend((r..=n).rev().map(|i| (1u8, i)));
    v
}

fn chains_compatible(
    cat: &FiniteCategory,
    n: u32,
    r1: u32,
    c1: &Chain,
    r2: u32,
    c2: &Chain,
) -> bool {
    debug_assert!(r1 < r2);
    // common face: {00..0r1} ∪ {1r2..1n}, in ambient order
    let mut common: Vec<(u8, u32)> = (0..=r1).map(|i| (0u8, i)).collect();
    common.extend((r2..=n).rev().map(|i| (1u8, i)));
    for a in 0..common.len() {
        for b in a..common.len() {
            let (ra, ia) = common[a];
            let (rb, ib) = common[b];
            let e1 = chain_edge(cat, c1, sigma_index(n, r1, ra, ia), sigma_index(n, r1, rb, ib));
            let e2 = chain_edge(cat, c2, sigma_index(n, r2, ra, ia), sigma_index(n, r2, rb, ib));
            if e1 != e2 {
                return false;
            }
        }
    }
    true
}

/// Level `n` of the staircase model, enumerated directly as compatible
/// chain tuples (independently of the spine determination).
pub fn t_level(cat: &FiniteCategory, n: u32) -> BTreeSet<TSimplex> {
    let chains = composable_strings(cat, n as usize + 1);
    let mut out = BTreeSet::new();
    let mut cur: Vec<Chain> = Vec::new();
    fn rec(
        cat: &FiniteCategory,
        n: u32,
        chains: &[Chain],
        cur: &mut Vec<Chain>,
        out: &mut BTreeSet<TSimplex>,
    ) {
        let r = cur.len() as u32;
        if r == n + 1 {
            out.insert(cur.clone());
            return;
        }
        'next: for c in chains {
            for (r1, c1) in cur.iter().enumerate() {
                if !chains_compatible(cat, n, r1 as u32, c1, r, c) {
                    continue 'next;
                }
            }
            cur.push(c.clone());
            rec(cat, n, chains, cur, out);
            cur.pop();
        }
    }
    rec(cat, n, &chains, &mut cur, &mut out);
    out
}

/// Composite of a doubled-model simplex between twisted ambient positions.
fn q_edge(cat: &FiniteCategory, s: &QSimplex, a: usize, b: usize) -> usize {
    debug_assert!(a <= b);
    if a == b {
        let obj = if a == 0 { cat.src(s[0]) } else { cat.dst(s[a - 1]) };
        return cat.id(obj);
    }
    let mut acc = s[a];
    for &m in &s[a + 1..b] {
        acc = cat.compose(m, acc);
    }
    acc
}

/// The restriction of a doubled-model simplex to the staircase model:
/// forget the faces outside `Ω^n`.
pub fn restrict_to_t(cat: &FiniteCategory, n: u32, s: &QSimplex) -> TSimplex {
    (0..=n)
        .map(|r| {
            let verts = sigma_vertices(n, r);
            verts
                .windows(2)
                .map(|w| {
                    let a = tw_pos(n, w[0].0, w[0].1);
                    let b = tw_pos(n, w[1].0, w[1].1);
                    q_edge(cat, s, a, b)
                })
                .collect()
        })
        .collect()
}

/// Edge value of a staircase simplex on an edge of `Ω^n`.
fn t_edge(cat: &FiniteCategory, n: u32, t: &TSimplex, u: (u8, u32), v: (u8, u32)) -> usize {
    let r = (0..=n)
        .find(|&r| {
            let ok = |(row, idx): (u8, u32)| if row == 0 { idx <= r } else { idx >= r };
            ok(u) && ok(v)
        })
        .expect("edge lies in some staircase simplex");
    chain_edge(cat, &t[r as usize], sigma_index(n, r, u.0, u.1), sigma_index(n, r, v.0, v.1))
}

/// Action of a monotone map `α : [m] → [n]` on the doubled model,
/// `level n → level m`.
pub fn q_act(cat: &FiniteCategory, m: u32, n: u32, alpha: &[u32], s: &QSimplex) -> QSimplex {
    let dbl = tw_double(m, n, alpha);
    let pos = dbl.positions();
    (1..=2 * m as usize + 1).map(|k| q_edge(cat, s, pos[k - 1], pos[k])).collect()
}

/// Action of a monotone map `α : [m] → [n]` on the staircase model.
pub fn t_act(cat: &FiniteCategory, m: u32, n: u32, alpha: &[u32], t: &TSimplex) -> TSimplex {
    (0..=m)
        .map(|r| {
            let verts = sigma_vertices(m, r);
            verts
                .windows(2)
                .map(|w| {
                    let u = (w[0].0, alpha[w[0].1 as usize]);
                    let v = (w[1].0, alpha[w[1].1 as usize]);
                    t_edge(cat, n, t, u, v)
                })
                .collect()
        })
        .collect()
}

/// The two boundary strings of a doubled-model simplex: the images under
/// the projections to the nerve of `C` and of `C^op`.
pub fn q_projection(cat: &FiniteCategory, n: u32, s: &QSimplex) -> (Vec<usize>, Vec<usize>) {
    let row0 = (0..n).map(|i| q_edge(cat, s, i as usize, i as usize + 1)).collect();
    let row1 = (0..n)
        .map(|i| {
            let a = tw_pos(n, 1, i + 1);
            let b = tw_pos(n, 1, i);
            q_edge(cat, s, a, b)
        })
        .collect();
    (row0, row1)
}

/// The boundary strings of a staircase simplex.
pub fn t_projection(cat: &FiniteCategory, n: u32, t: &TSimplex) -> (Vec<usize>, Vec<usize>) {
    let row0 = (0..n).map(|i| t_edge(cat, n, t, (0, i), (0, i + 1))).collect();
    let row1 = (0..n).map(|i| t_edge(cat, n, t, (1, i + 1), (1, i))).collect();
    (row0, row1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub n: u32,
    pub q_count: usize,
    pub t_count: usize,
    pub bijective: bool,
    pub operators_ok: bool,
    pub projection_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelComparison {
    pub category: String,
    pub levels: Vec<LevelReport>,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Verifies, level by level, that restriction to the staircase model is a
/// bijection compatible with the simplicial operators and with the
/// projection to the boundary strings.
pub fn compare_models(cat: &FiniteCategory, n_max: u32) -> ModelComparison {
    let mut levels = Vec::new();
    let mut pass = true;
    let mut witness = None;
    let q_levels: Vec<BTreeSet<QSimplex>> = (0..=n_max).map(|n| q_level(cat, n)).collect();
    for n in 0..=n_max {
        let qs = &q_levels[n as usize];
        let ts = t_level(cat, n);
        let image: BTreeSet<TSimplex> = qs.iter().map(|s| restrict_to_t(cat, n, s)).collect();
        let classical = classical_tw_level(cat, n);
        let bijective = image.len() == qs.len() && image == ts && &classical == qs;
        if !bijective && witness.is_none() {
            let missing = ts.difference(&image).next();
            witness = Some(format!(
                "level {n}: restriction is not a bijection{}",
                missing.map(|t| format!(", unmatched tuple {t:?}")).unwrap_or_default()
            ));
        }

        let mut operators_ok = true;
        // face operators into this level from level n+1, degeneracies from n-1
        if n < n_max {
            for i in 0..=(n + 1) {
                let alpha: Vec<u32> = (0..=n).map(|j| if j < i { j } else { j + 1 }).collect();
                for s in &q_levels[n as usize + 1] {
                    let lhs = restrict_to_t(cat, n, &q_act(cat, n, n + 1, &alpha, s));
                    let rhs = t_act(cat, n, n + 1, &alpha, &restrict_to_t(cat, n + 1, s));
                    if lhs != rhs {
                        operators_ok = false;
                    }
                }
            }
        }
        if n >= 1 {
            for j in 0..n {
                let alpha: Vec<u32> = (0..=n).map(|k| if k <= j { k } else { k - 1 }).collect();
                for s in &q_levels[n as usize - 1] {
                    let lhs = restrict_to_t(cat, n, &q_act(cat, n, n - 1, &alpha, s));
                    let rhs = t_act(cat, n, n - 1, &alpha, &restrict_to_t(cat, n - 1, s));
                    if lhs != rhs {
                        operators_ok = false;
                    }
                }
            }
        }
        if !operators_ok && witness.is_none() {
            witness = Some(format!("level {n}: operator actions disagree"));
        }

        let mut projection_ok = true;
        for s in qs {
            if q_projection(cat, n, s) != t_projection(cat, n, &restrict_to_t(cat, n, s)) {
                projection_ok = false;
            }
        }
        if !projection_ok && witness.is_none() {
            witness = Some(format!("level {n}: boundary projections disagree"));
        }

        pass = pass && bijective && operators_ok && projection_ok;
        levels.push(LevelReport {
            n,
            q_count: qs.len(),
            t_count: ts.len(),
            bijective,
            operators_ok,
            projection_ok,
        });
    }
    ModelComparison { category: cat.name().to_string(), levels, pass, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_category_counts() {
        let c1 = FiniteCategory::chain(1);
        assert_eq!(q_level(&c1, 0).len(), 3);
        assert_eq!(q_level(&c1, 1).len(), 5);
        assert_eq!(t_level(&c1, 1).len(), 5);
        let c2 = FiniteCategory::chain(2);
        assert_eq!(q_level(&c2, 0).len(), 6);
    }

    #[test]
    fn terminal_has_one_simplex_per_level() {
        let c = FiniteCategory::terminal();
        for n in 0..=3 {
            assert_eq!(q_level(&c, n).len(), 1);
            assert_eq!(t_level(&c, n).len(), 1);
        }
    }

    #[test]
    fn chain1_counts_are_odd_numbers() {
        let c = FiniteCategory::chain(1);
        let counts: Vec<usize> = (0..=3).map(|n| q_level(&c, n).len()).collect();
        assert_eq!(counts, vec![3, 5, 7, 9]);
    }

    #[test]
    fn compare_models_on_chain1() {
        let rep = compare_models(&FiniteCategory::chain(1), 3);
        assert!(rep.pass, "{:?}", rep.witness);
        let counts: Vec<usize> = rep.levels.iter().map(|l| l.q_count).collect();
        assert_eq!(counts, vec![3, 5, 7, 9]);
    }

    #[test]
    fn compare_models_on_square() {
        let rep = compare_models(&FiniteCategory::commutative_square(), 2);
        assert!(rep.pass, "{:?}", rep.witness);
    }

    #[test]
    fn compare_models_on_parallel_pair() {
        let rep = compare_models(&FiniteCategory::free_parallel_pair(), 2);
        assert!(rep.pass, "{:?}", rep.witness);
    }

    #[test]
    fn poset_spine_determination() {
        // for posets, level counts equal the number of composable strings
        let c = FiniteCategory::poset5();
        for n in 0..=2u32 {
            assert_eq!(
                t_level(&c, n).len(),
                composable_strings(&c, 2 * n as usize + 1).len()
            );
        }
    }

    #[test]
    fn parse_category_format() {
        let text = "obj a\nobj b\nobj c\nmor f: a -> b\nmor g: b -> c\nmor h: a -> c\ncomp g f = h\n";
        let cat = FiniteCategory::parse("tri", text).unwrap();
        assert_eq!(cat.object_count(), 3);
        assert_eq!(cat.mor_count(), 6);
        let rep = compare_models(&cat, 2);
        assert!(rep.pass);
    }

    #[test]
    fn parse_rejects_missing_composition() {
        let text = "obj a\nobj b\nobj c\nmor f: a -> b\nmor g: b -> c\n";
        let err = FiniteCategory::parse("bad", text).unwrap_err();
        assert!(err.message.contains("missing composition"), "{}", err.message);
        assert!(err.line > 0);
    }

    #[test]
    fn parse_rejects_bad_associativity() {
        // e, k : b -> c parallel; f : a -> b; composing picks inconsistent values
        let text = "obj a\nobj b\nobj c\nobj d\n\
                    mor f: a -> b\nmor e: b -> c\nmor k: b -> c\nmor u: c -> d\n\
                    mor x1: a -> c\nmor x2: a -> c\nmor y1: b -> d\nmor z: a -> d\n\
                    comp e f = x1\ncomp k f = x2\ncomp u e = y1\ncomp u k = y1\n\
                    comp u x1 = z\ncomp u x2 = z\ncomp y1 f = z\n";
        assert!(FiniteCategory::parse("assoc", text).is_ok());
        let really_bad = "obj a\nobj b\nobj c\nobj d\n\
             mor f: a -> b\nmor g: b -> c\nmor h: c -> d\n\
             mor gf: a -> c\nmor hg: b -> d\nmor w1: a -> d\nmor w2: a -> d\n\
             comp g f = gf\ncomp h g = hg\ncomp h gf = w1\ncomp hg f = w2\n";
        let err = FiniteCategory::parse("assoc2", really_bad).unwrap_err();
        assert!(err.message.contains("associativity"), "{}", err.message);
    }

    #[test]
    fn simplicial_identities_on_q_levels() {
        let cat = FiniteCategory::chain(2);
        // d_i d_j = d_{j-1} d_i for i < j on level 2
        for s in q_level(&cat, 2) {
            for j in 0..=2u32 {
                for i in 0..j {
                    let dj: Vec<u32> = (0..=1).map(|k| if k < j { k } else { k + 1 }).collect();
                    let di: Vec<u32> = (0..=0).map(|k| if k < i { k } else { k + 1 }).collect();
                    let left = q_act(&cat, 0, 1, &di, &q_act(&cat, 1, 2, &dj, &s));
                    let dio: Vec<u32> = (0..=1).map(|k| if k < i { k } else { k + 1 }).collect();
                    let djo: Vec<u32> =
                        (0..=0).map(|k| if k < j - 1 { k } else { k + 1 }).collect();
                    let right = q_act(&cat, 0, 1, &djo, &q_act(&cat, 1, 2, &dio, &s));
                    assert_eq!(left, right);
                }
            }
        }
    }
}
