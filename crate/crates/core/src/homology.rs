//! Regularity oracle: polarization plus Hochster's formula.
//!
//! For a squarefree ideal `I` with Stanley–Reisner complex `K`,
//! `reg(S/I) = max { j + 1 : H̃_j(K|W; Q) ≠ 0, W ⊆ vars }` and
//! `reg(I) = reg(S/I) + 1`. Homology is over the rationals.
//!
//! The scan skips every `W` on which `K|W` is a cone (some vertex of `W` lies
//! in no minimal non-face inside `W`), only asks for homology in degrees that
//! could still raise the running maximum, screens ranks modulo a prime and
//! confirms every nonzero candidate with exact integer elimination.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::edge_ideal::{colon_direct, EdgeProduct};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::linalg::{rank_exact, rank_mod_p, Reduction, SparseColumn};
use crate::monomial::MonomialIdeal;

/// Default cap on the number of (used) variables of a scan.
pub const DEFAULT_MAX_VARS: usize = 22;

/// Hard cap from the bitset representation.
const HARD_MAX_VARS: usize = 63;

/// A simplicial complex given by its minimal non-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    minimal_nonfaces: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds a complex on `vertex_count` vertices; `nonfaces` is reduced to
    /// its inclusion-minimal members.
    pub fn new(vertex_count: usize, nonfaces: &[u64]) -> Result<Self> {
        if vertex_count > HARD_MAX_VARS {
            return Err(Error::ResourceLimit {
                vars: vertex_count,
                limit: HARD_MAX_VARS,
            });
        }
        let all = full_mask(vertex_count);
        if let Some(bad) = nonfaces.iter().find(|&&n| n & !all != 0) {
            return Err(Error::InvalidArgument(format!(
                "non-face {bad:#x} uses a vertex out of range"
            )));
        }
        let mut sorted: Vec<u64> = nonfaces.to_vec();
        sorted.sort_by_key(|n| (n.count_ones(), *n));
        sorted.dedup();
        let mut minimal: Vec<u64> = Vec::new();
        for n in sorted {
            if !minimal.iter().any(|&m| m & !n == 0) {
                minimal.push(n);
            }
        }
        minimal.sort_unstable();
        Ok(SimplicialComplex {
            vertex_count,
            minimal_nonfaces: minimal,
        })
    }

    /// The Stanley–Reisner complex of a squarefree ideal: one vertex per
    /// variable, minimal non-faces are generator supports.
    pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let names = ideal.variables();
        if let Some(g) = ideal.generators().iter().find(|g| !g.is_squarefree()) {
            return Err(Error::NotSquarefree(g.render(names)));
        }
        let supports: Vec<u64> = ideal
            .generators()
            .iter()
            .map(|g| g.support_mask())
            .collect();
        SimplicialComplex::new(names.len(), &supports)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn minimal_nonfaces(&self) -> &[u64] {
        &self.minimal_nonfaces
    }

    pub fn is_face(&self, sigma: u64) -> bool {
        sigma & !full_mask(self.vertex_count) == 0
            && !self.minimal_nonfaces.iter().any(|&n| n & !sigma == 0)
    }

    /// Faces of `K|W`, grouped by cardinality (index 0 holds `∅`), each
    /// group sorted.
    pub fn faces_within(&self, w: u64) -> Vec<Vec<u64>> {
        let by_vertex = self.nonfaces_by_vertex();
        faces_by_size(&by_vertex, w & full_mask(self.vertex_count), 0)
    }

    fn nonfaces_by_vertex(&self) -> Vec<Vec<u64>> {
        let mut lists = vec![Vec::new(); self.vertex_count];
        for &n in &self.minimal_nonfaces {
            for v in bits(n) {
                lists[v].push(n);
            }
        }
        lists
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reduced rational homology dimensions, nonzero degrees only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub dims: BTreeMap<i32, usize>,
}

impl HomologyProfile {
    pub fn is_acyclic(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }

    /// `Σ (-1)^j dim H̃_j`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&j, &d)| {
                if j.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }
}

/// Reduced Euler characteristic `Σ (-1)^j f_j` of a face list from
/// [`SimplicialComplex::faces_within`] (`f_{-1}` = 1 for `∅`).
pub fn reduced_euler_characteristic(faces: &[Vec<u64>]) -> i64 {
    faces
        .iter()
        .enumerate()
        .map(|(size, f)| {
            if size % 2 == 1 {
                f.len() as i64
            } else {
                -(f.len() as i64)
            }
        })
        .sum()
}

/// Exact reduced homology of `K|W` in every degree. The restriction to
/// `W = ∅` has no homology by convention; a nonempty `W` with no vertex
/// faces gives `H̃_{-1} = Q`.
pub fn reduced_homology(k: &SimplicialComplex, w: u64) -> HomologyProfile {
    let w = w & full_mask(k.vertex_count);
    let mut profile = HomologyProfile::default();
    if w == 0 {
        return profile;
    }
    let faces = k.faces_within(w);
    let top = faces.len() as i32 - 2;
    let mut above = Reduction::default();
    for j in (-1..=top).rev() {
        let cols = boundary(&faces, j);
        let cleared = cleared_columns(&faces, j, &above);
        let here = rank_exact(&cols, &cleared);
        let f = faces[(j + 1) as usize].len();
        let h = f - here.rank - above.rank;
        if h > 0 {
            profile.dims.insert(j, h);
        }
        above = here;
    }
    profile
}

/// Faces of the restriction to `w`, by size, keeping only sizes `>= min_size`
/// (smaller groups are left empty).
fn faces_by_size(by_vertex: &[Vec<u64>], w: u64, min_size: usize) -> Vec<Vec<u64>> {
    let verts: Vec<usize> = bits(w).collect();
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    fn rec(
        by_vertex: &[Vec<u64>],
        verts: &[usize],
        start: usize,
        face: u64,
        size: usize,
        min_size: usize,
        out: &mut Vec<Vec<u64>>,
    ) {
        if size >= min_size {
            if out.len() <= size {
                out.resize(size + 1, Vec::new());
            }
            out[size].push(face);
        }
        for i in start..verts.len() {
            let v = verts[i];
            let next = face | (1 << v);
            if by_vertex[v].iter().any(|&n| n & !next == 0) {
                continue;
            }
            rec(by_vertex, verts, i + 1, next, size + 1, min_size, out);
        }
    }
    out.clear();
    rec(by_vertex, &verts, 0, 0, 0, min_size, &mut out);
    if out.is_empty() {
        out.push(Vec::new());
    }
    for group in &mut out {
        group.sort_unstable();
    }
    out
}

/// Columns of `∂_j`: `j`-faces (size `j+1`) to `(j-1)`-faces, with rows
/// indexed by position in the sorted face list of size `j`.
fn boundary(faces: &[Vec<u64>], j: i32) -> Vec<SparseColumn> {
    let size = (j + 1) as usize;
    let (Some(cols), Some(rows)) = (
        faces.get(size),
        size.checked_sub(1).and_then(|s| faces.get(s)),
    ) else {
        return Vec::new();
    };
    cols.iter()
        .map(|&sigma| {
            let mut col: SparseColumn = bits(sigma)
                .enumerate()
                .map(|(pos, v)| {
                    let row = rows
                        .binary_search(&(sigma & !(1 << v)))
                        .expect("faces are closed under subsets");
                    (row, if pos % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect()
}

/// A `j`-face that is the pivot row of a reduced column of `∂_{j+1}` is a
/// column of `∂_j` that reduces to zero.
fn cleared_columns(faces: &[Vec<u64>], j: i32, above: &Reduction) -> Vec<bool> {
    let n = faces.get((j + 1) as usize).map_or(0, Vec::len);
    let mut cleared = vec![false; n];
    for &r in &above.pivot_rows {
        cleared[r] = true;
    }
    cleared
}

/// Largest `j >= min_degree` with `H̃_j(K|W) ≠ 0`, for `W ≠ ∅`.
fn top_homology_at_least(by_vertex: &[Vec<u64>], w: u64, min_degree: i32) -> Option<i32> {
    let min_degree = min_degree.max(-1);
    let faces = faces_by_size(by_vertex, w, min_degree.max(0) as usize);
    let top = faces.len() as i32 - 2;
    let mut above = Reduction::default();
    let mut above_cols = Vec::new();
    for j in (min_degree..=top).rev() {
        let f = faces[(j + 1) as usize].len();
        let cols = if j == -1 {
            Vec::new()
        } else {
            boundary(&faces, j)
        };
        let cleared = cleared_columns(&faces, j, &above);
        // ∂_{-1} is zero; ∂_0 maps every vertex to ∅.
        let here = if j == 0 {
            let r = usize::from(f > 0);
            Reduction {
                rank: r,
                pivot_rows: vec![0; r],
            }
        } else {
            rank_mod_p(&cols, &cleared)
        };
        if f > here.rank + above.rank {
            let exact_here =
                confirm_rank(&cols, &here, faces.get(j as usize).map_or(0, Vec::len), j);
            let exact_above = confirm_rank(&above_cols, &above, f, j + 1);
            if f > exact_here + exact_above {
                return Some(j);
            }
        }
        above = here;
        above_cols = cols;
    }
    None
}

/// Rank over Q of a boundary matrix whose rank mod p is known. A modular
/// rank that already equals `min(rows, cols)` is exact.
fn confirm_rank(cols: &[SparseColumn], modular: &Reduction, rows: usize, j: i32) -> usize {
    if j <= 0 || modular.rank == rows.min(cols.len()) {
        return modular.rank;
    }
    rank_exact(cols, &[]).rank
}

/// How [`regularity_monomial`] evaluates Hochster's formula on the
/// polarization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Restrictions of the polarized complex are read off as upper Koszul
    /// complexes on the original variables. Same values and witnesses as
    /// the literal scan, on complexes with at most `2^(original vars)` faces.
    #[default]
    Multigraded,
    /// Literal scan over subsets of the polarized variables.
    Hochster,
}

/// Oracle limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Scans over more (polarized, used) variables than this are refused
    /// unless `allow_heavy` is set.
    pub max_vars: usize,
    pub allow_heavy: bool,
    pub engine: Engine,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vars: DEFAULT_MAX_VARS,
            allow_heavy: false,
            engine: Engine::default(),
        }
    }
}

impl OracleConfig {
    fn check_size(&self, vars: usize) -> Result<()> {
        if (vars > self.max_vars && !self.allow_heavy) || vars > HARD_MAX_VARS {
            let limit = if self.allow_heavy {
                HARD_MAX_VARS
            } else {
                self.max_vars
            };
            return Err(Error::ResourceLimit { vars, limit });
        }
        Ok(())
    }
}

/// A subset attaining the maximum in Hochster's formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subset: Vec<String>,
    pub homology_degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// `reg(I)`; `1` for the zero ideal.
    pub regularity: u32,
    /// Variables that occur in some generator; the scan ranges over these.
    pub variables: usize,
    /// Numerically smallest witness subset (as a bitmask over the used
    /// variables) among those attaining the maximum; `None` for `(0)`.
    pub witness: Option<Witness>,
    pub characteristic: u32,
}

/// `reg(I)` of a squarefree monomial ideal.
pub fn regularity_squarefree(ideal: &MonomialIdeal, config: &OracleConfig) -> Result<OracleResult> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let names = ideal.variables();
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(g.render(names)));
    }
    // Compress to the variables that actually occur.
    let used: u64 = ideal
        .generators()
        .iter()
        .fold(0, |m, g| m | g.support_mask());
    let used_vars: Vec<usize> = bits(used).collect();
    let n = used_vars.len();
    if ideal.is_zero() {
        return Ok(OracleResult {
            regularity: 1,
            variables: 0,
            witness: None,
            characteristic: 0,
        });
    }
    config.check_size(n)?;
    let compress = |m: u64| {
        bits(m).fold(0u64, |acc, v| {
            acc | 1 << used_vars.binary_search(&v).unwrap()
        })
    };
    let nonfaces: Vec<u64> = ideal
        .generators()
        .iter()
        .map(|g| compress(g.support_mask()))
        .collect();
    let k = SimplicialComplex::new(n, &nonfaces)?;
    let by_vertex = k.nonfaces_by_vertex();

    // A generator of maximal degree d gives a boundary of a simplex, so
    // reg(S/I) >= d - 1.
    let seed = ideal.max_degree() - 1;
    let best = AtomicU32::new(seed);
    const CHUNK_BITS: usize = 12;
    let chunks: u64 = if n > CHUNK_BITS {
        1 << (n - CHUNK_BITS)
    } else {
        1
    };
    let chunk_len: u64 = if n > CHUNK_BITS {
        1 << CHUNK_BITS
    } else {
        1 << n
    };

    let found = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local: Option<(u32, u64, i32)> = None;
            for w in (c * chunk_len).max(1)..(c + 1) * chunk_len {
                let cur = best.load(Ordering::Relaxed);
                // dim K|W <= |W| - 2 since W itself is a non-face.
                if w.count_ones() < cur + 1 || !is_cone_free(&by_vertex, w) {
                    continue;
                }
                if let Some(j) = top_homology_at_least(&by_vertex, w, cur as i32 - 1) {
                    let d = (j + 1) as u32;
                    best.fetch_max(d, Ordering::Relaxed);
                    if local.map_or(true, |(ld, _, _)| d > ld) {
                        local = Some((d, w, j));
                    }
                }
            }
            local
        })
        .reduce(|| None, pick_witness);
    let (d, w, j) = found.expect("the support of a top-degree generator always witnesses the seed");
    let subset = bits(w).map(|i| names[used_vars[i]].clone()).collect();
    Ok(OracleResult {
        regularity: d + 1,
        variables: n,
        witness: Some(Witness {
            subset,
            homology_degree: j,
        }),
        characteristic: 0,
    })
}

/// Every vertex of `w` lies in some minimal non-face contained in `w`;
/// otherwise that vertex is a cone point of `K|W`.
fn is_cone_free(by_vertex: &[Vec<u64>], w: u64) -> bool {
    bits(w).all(|v| by_vertex[v].iter().any(|&n| n & !w == 0))
}

/// `reg(I)` of any monomial ideal, via its polarization.
pub fn regularity_monomial(ideal: &MonomialIdeal, config: &OracleConfig) -> Result<OracleResult> {
    match config.engine {
        Engine::Hochster => regularity_squarefree(&ideal.polarize().ideal, config),
        Engine::Multigraded => regularity_multigraded(ideal, config),
    }
}

/// Hochster's formula for `I^pol`, evaluated multidegree by multidegree.
///
/// Only subsets `W` of the polarized variables of the form
/// `{x_{i,1}, ..., x_{i,b_i}}` can avoid being cones, and for those
/// `H̃_{|W|-k-2}((K^pol)|W) ≅ H̃_{k-1}(K^b(I))`, where
/// `K^b(I) = { τ ⊆ supp b : x^{b-τ} ∈ I }` (the upper Koszul complex).
/// Its facets are `supp b ∖ { i : g_i = b_i }` over generators `g | x^b`.
fn regularity_multigraded(ideal: &MonomialIdeal, config: &OracleConfig) -> Result<OracleResult> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_zero() {
        return Ok(OracleResult {
            regularity: 1,
            variables: 0,
            witness: None,
            characteristic: 0,
        });
    }
    let pol = ideal.polarize();
    let used: u64 = ideal
        .generators()
        .iter()
        .fold(0, |m, g| m | g.support_mask());
    let used_vars: Vec<usize> = bits(used).collect();
    let n = used_vars.len();
    let gens: Vec<Vec<u32>> = ideal
        .generators()
        .iter()
        .map(|g| used_vars.iter().map(|&v| g.exponent(v)).collect())
        .collect();
    let max_exp: Vec<u32> = (0..n)
        .map(|i| gens.iter().map(|g| g[i]).max().unwrap_or(0))
        .collect();
    let pol_vars: usize = max_exp.iter().map(|&a| a as usize).sum();
    config.check_size(pol_vars)?;
    // offset of x_{i,1} among the polarized variables
    let offsets: Vec<usize> = max_exp
        .iter()
        .scan(0usize, |acc, &a| {
            let o = *acc;
            *acc += a as usize;
            Some(o)
        })
        .collect();
    let boxes: u64 = max_exp.iter().map(|&a| a as u64 + 1).product();

    let seed = ideal.max_degree();
    let best = AtomicU32::new(seed);
    const CHUNK: u64 = 1 << 10;
    let chunks = boxes.div_ceil(CHUNK);
    let found = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local: Option<(u32, u64, i32)> = None;
            let mut b = vec![0u32; n];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(boxes) {
                let mut rest = idx;
                for (i, bi) in b.iter_mut().enumerate() {
                    let r = max_exp[i] as u64 + 1;
                    *bi = (rest % r) as u32;
                    rest /= r;
                }
                let total: u32 = b.iter().sum();
                let cur = best.load(Ordering::Relaxed);
                if total < cur {
                    continue;
                }
                let Some(facets) = koszul_facets(&gens, &b) else {
                    continue;
                };
                // contribution |b| - k, with H̃_{k-1}(K^b) ≠ 0, k >= 0
                let max_k = (total - cur) as i32;
                if let Some(j) = lowest_homology_at_most(&facets, max_k - 1) {
                    let reg = (total as i32 - j - 1) as u32;
                    best.fetch_max(reg, Ordering::Relaxed);
                    let mask = b
                        .iter()
                        .enumerate()
                        .fold(0u64, |m, (i, &bi)| m | (((1u64 << bi) - 1) << offsets[i]));
                    let better = match local {
                        None => true,
                        Some((lr, lm, _)) => reg > lr || (reg == lr && mask < lm),
                    };
                    if better {
                        local = Some((reg, mask, total as i32 - j - 3));
                    }
                }
            }
            local
        })
        .reduce(|| None, pick_witness);
    let (reg, mask, degree) = found.expect("every minimal generator is its own witness");
    let names = pol.ideal.variables();
    Ok(OracleResult {
        regularity: reg,
        variables: pol_vars,
        witness: Some(Witness {
            subset: bits(mask).map(|i| names[i].clone()).collect(),
            homology_degree: degree,
        }),
        characteristic: 0,
    })
}

fn pick_witness(a: Option<(u32, u64, i32)>, b: Option<(u32, u64, i32)>) -> Option<(u32, u64, i32)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
            y
        } else {
            x
        }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Facets of `K^b(I)` over positions `0..n`, or `None` when `b` is not the
/// lcm of the generators dividing `x^b` (then `K^b` is a cone).
fn koszul_facets(gens: &[Vec<u32>], b: &[u32]) -> Option<Vec<u64>> {
    let support = b
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | 1 << i);
    let mut tight_union = 0u64;
    let mut facets: Vec<u64> = Vec::new();
    for g in gens {
        if g.iter().zip(b).any(|(gi, bi)| gi > bi) {
            continue;
        }
        let tight = g
            .iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (gi, bi))| gi == bi && **bi > 0)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        tight_union |= tight;
        facets.push(support & !tight);
    }
    if tight_union != support {
        return None;
    }
    facets.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
    let mut maximal: Vec<u64> = Vec::new();
    for f in facets {
        if !maximal.iter().any(|&m| f & !m == 0) {
            maximal.push(f);
        }
    }
    Some(maximal)
}

/// All faces of the complex generated by `facets`, grouped by size.
fn faces_from_facets(facets: &[u64]) -> Vec<Vec<u64>> {
    let mut all = std::collections::BTreeSet::new();
    for &f in facets {
        // every subset of f
        let mut sub = f;
        loop {
            all.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & f;
        }
    }
    let top = all
        .iter()
        .map(|f| f.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut out = vec![Vec::new(); top + 1];
    for f in all {
        out[f.count_ones() as usize].push(f);
    }
    out
}

/// Smallest `j <= max_degree` with `H̃_j ≠ 0` for the complex generated by
/// `facets` (an empty facet list is the void complex, which is acyclic).
fn lowest_homology_at_most(facets: &[u64], max_degree: i32) -> Option<i32> {
    if facets.is_empty() || max_degree < -1 {
        return None;
    }
    let faces = faces_from_facets(facets);
    let top = (faces.len() as i32 - 2).min(max_degree);
    let mut below = None;
    for j in -1..=top {
        let f = faces[(j + 1) as usize].len();
        let here = match below.take() {
            Some(r) => r,
            None => boundary_rank(&faces, j),
        };
        let above = boundary_rank(&faces, j + 1);
        if f > here.1 + above.1 {
            let exact_here = if here.0 {
                here.1
            } else {
                rank_exact(&boundary(&faces, j), &[]).rank
            };
            let exact_above = if above.0 {
                above.1
            } else {
                rank_exact(&boundary(&faces, j + 1), &[]).rank
            };
            if f > exact_here + exact_above {
                return Some(j);
            }
        }
        below = Some(above);
    }
    None
}

/// `(known_exact, rank mod p)` of `∂_j`.
fn boundary_rank(faces: &[Vec<u64>], j: i32) -> (bool, usize) {
    if j <= 0 {
        let r = usize::from(j == 0 && faces.get(1).is_some_and(|f| !f.is_empty()));
        return (true, r);
    }
    let cols = boundary(faces, j);
    let rows = faces.get(j as usize).map_or(0, Vec::len);
    let r = rank_mod_p(&cols, &[]).rank;
    (r == rows.min(cols.len()), r)
}

/// `reg` of the polarization of `(I(G)^{s+1} : M)` for an `s`-fold edge
/// product `M`.
pub fn regularity_colon_graph(
    g: &Graph,
    m: &EdgeProduct,
    config: &OracleConfig,
) -> Result<OracleResult> {
    regularity_monomial(&colon_direct(g, m)?, config)
}
