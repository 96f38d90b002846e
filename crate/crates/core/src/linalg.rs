//! Sparse column reduction for ranks of integer matrices.
//!
//! Columns are sorted `(row, value)` lists. Reduction is the usual
//! lowest-pivot column algorithm; a column whose index appears in `cleared`
//! is known to reduce to zero and is skipped.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

pub type SparseColumn = Vec<(usize, i64)>;

/// Result of a reduction: the rank and the pivot rows (lowest entries of
/// the nonzero reduced columns).
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

const P: u64 = 2_147_483_647; // 2^31 - 1

/// Rank over GF(2^31 - 1). Never exceeds the rank over Q.
pub fn rank_mod_p(columns: &[SparseColumn], cleared: &[bool]) -> Reduction {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    let mut pivot_rows = Vec::new();
    for (ci, col) in columns.iter().enumerate() {
        if cleared.get(ci).copied().unwrap_or(false) {
            continue;
        }
        let mut c: Vec<(usize, u64)> = col
            .iter()
            .map(|&(r, v)| (r, v.rem_euclid(P as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(low, a)) = c.last() {
            let Some(p) = pivots.get(&low) else { break };
            let b = p.last().unwrap().1;
            // c <- b*c - a*p
            c = combine_mod(&c, b, p, P - a);
        }
        if let Some(&(low, _)) = c.last() {
            pivot_rows.push(low);
            pivots.insert(low, c);
        }
    }
    Reduction {
        rank: pivot_rows.len(),
        pivot_rows,
    }
}

fn combine_mod(x: &[(usize, u64)], s: u64, y: &[(usize, u64)], t: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some(&(rx, vx)), Some(&(ry, vy))) if rx == ry => {
                i += 1;
                j += 1;
                (rx, (s * vx + t * vy) % P)
            }
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                i += 1;
                (rx, s * vx % P)
            }
            (Some(&(rx, vx)), None) => {
                i += 1;
                (rx, s * vx % P)
            }
            (_, Some(&(ry, vy))) => {
                j += 1;
                (ry, t * vy % P)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((r, v));
        }
    }
    out
}

/// Exact rank over Q by fraction-free elimination: `c <- b*c - a*p`
/// followed by division by the content of `c`. Runs in `i128` and falls
/// back to arbitrary precision on overflow.
pub fn rank_exact(columns: &[SparseColumn], cleared: &[bool]) -> Reduction {
    let small: Vec<Vec<(usize, i128)>> = columns
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, v as i128)).collect())
        .collect();
    if let Some(r) = reduce_exact(&small, cleared) {
        return r;
    }
    let big: Vec<Vec<(usize, BigInt)>> = columns
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect())
        .collect();
    reduce_exact(&big, cleared).expect("arbitrary precision arithmetic does not overflow")
}

fn reduce_exact<T>(columns: &[Vec<(usize, T)>], cleared: &[bool]) -> Option<Reduction>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut pivot_rows = Vec::new();
    for (ci, col) in columns.iter().enumerate() {
        if cleared.get(ci).copied().unwrap_or(false) {
            continue;
        }
        let mut c: Vec<(usize, T)> = col.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        while let Some((low, a)) = c.last().cloned() {
            let Some(p) = pivots.get(&low) else { break };
            let b = p.last().unwrap().1.clone();
            let g = a.gcd(&b);
            let (s, t) = (b / g.clone(), a / g);
            c = combine_exact(&c, &s, p, &t)?;
            normalize(&mut c);
        }
        if let Some((low, _)) = c.last() {
            pivot_rows.push(*low);
            pivots.insert(*low, c);
        }
    }
    Some(Reduction {
        rank: pivot_rows.len(),
        pivot_rows,
    })
}

/// `s*x - t*y`, or `None` on overflow.
fn combine_exact<T>(x: &[(usize, T)], s: &T, y: &[(usize, T)], t: &T) -> Option<Vec<(usize, T)>>
where
    T: Clone + Integer + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::zero();
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some((rx, vx)), Some((ry, vy))) if rx == ry => {
                i += 1;
                j += 1;
                (*rx, s.checked_mul(vx)?.checked_sub(&t.checked_mul(vy)?)?)
            }
            (Some((rx, vx)), Some((ry, _))) if rx < ry => {
                i += 1;
                (*rx, s.checked_mul(vx)?)
            }
            (Some((rx, vx)), None) => {
                i += 1;
                (*rx, s.checked_mul(vx)?)
            }
            (_, Some((ry, vy))) => {
                j += 1;
                (*ry, zero.checked_sub(&t.checked_mul(vy)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    Some(out)
}

fn normalize<T: Clone + Integer + Signed>(c: &mut [(usize, T)]) {
    let mut g = T::zero();
    for (_, v) in c.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in c.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
}
