//! Monomial ideals: minimal generators, sums, powers, colons and
//! polarization.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Var = usize;

/// A monomial as sorted `(variable, exponent)` pairs; exponents are
/// positive and the empty list is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Product of the given powers; repeated variables accumulate and zero
    /// exponents are dropped.
    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut exps: Vec<(Var, u32)> = pairs.iter().copied().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial { exps: out }
    }

    pub fn from_vars(vars: &[Var]) -> Self {
        Monomial::from_pairs(&vars.iter().map(|&v| (v, 1)).collect::<Vec<_>>())
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    /// Support as a bitmask; all variables must be below 64.
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().fold(0, |m, &(v, _)| m | (1u64 << v))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < other.exps.len() && other.exps[j].0 < v {
                j += 1;
            }
            if j == other.exps.len() || other.exps[j].0 != v || other.exps[j].1 < e {
                return false;
            }
        }
        true
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let (v, e) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    i += 1;
                    j += 1;
                    (va, f(ea, eb))
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    i += 1;
                    (va, f(ea, 0))
                }
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, f(ea, 0))
                }
                (_, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, f(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::min)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.saturating_sub(b))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&(v, e)| (v, e * k))
                .filter(|&(_, e)| e > 0)
                .collect(),
        }
    }

    fn remap(&self, map: &[Var]) -> Monomial {
        Monomial::from_pairs(
            &self
                .exps
                .iter()
                .map(|&(v, e)| (map[v], e))
                .collect::<Vec<_>>(),
        )
    }

    /// Pure lexicographic order with the smallest variable id most
    /// significant; `Greater` means the larger exponent appears first.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        for k in 0..a.len().max(b.len()) {
            match (a.get(k), b.get(k)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return vb.cmp(&va);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => break,
            }
        }
        Ordering::Equal
    }

    /// Renders as `x1^2*x2` using the given variable names; `1` for the unit.
    pub fn render(&self, names: &[String]) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    names[v].clone()
                } else {
                    format!("{}^{}", names[v], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Reduces a generator list to the minimal generating set of the ideal it
/// generates, sorted lexicographically (largest first).
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.lex_cmp(a));
    kept
}

/// A monomial ideal over a named variable set, stored by its minimal
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens
            .iter()
            .find(|g| g.exps.last().is_some_and(|&(v, _)| v >= vars.len()))
        {
            return Err(Error::InvalidArgument(format!(
                "generator uses variable {} but only {} are declared",
                g.exps.last().unwrap().0,
                vars.len()
            )));
        }
        Ok(MonomialIdeal {
            vars,
            gens: minimalize(gens),
        })
    }

    pub fn zero(vars: Vec<String>) -> Self {
        MonomialIdeal {
            vars,
            gens: Vec::new(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn var_index(&self, name: &str) -> Option<Var> {
        self.vars.iter().position(|v| v == name)
    }

    /// `I + J`. Variables are matched by name; names only in `J` are
    /// appended.
    pub fn add(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut vars = self.vars.clone();
        let map: Vec<Var> = other
            .vars
            .iter()
            .map(|name| match vars.iter().position(|v| v == name) {
                Some(i) => i,
                None => {
                    vars.push(name.clone());
                    vars.len() - 1
                }
            })
            .collect();
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| g.remap(&map)));
        MonomialIdeal {
            vars,
            gens: minimalize(gens),
        }
    }

    pub fn with_generators(&self, extra: &[Monomial]) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        MonomialIdeal {
            vars: self.vars.clone(),
            gens: minimalize(gens),
        }
    }

    pub fn mul(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(
            self.vars, other.vars,
            "product of ideals over different variable sets"
        );
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        MonomialIdeal {
            vars: self.vars.clone(),
            gens: minimalize(gens),
        }
    }

    /// Minimal generators of `I^s`, `s >= 1`.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal> {
        if s == 0 {
            return Err(Error::InvalidArgument("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// `(I : m)`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            vars: self.vars.clone(),
            gens: minimalize(self.gens.iter().map(|g| g.colon(m)).collect()),
        }
    }

    /// Squarefree polarization. Variable `x` with maximal exponent `a > 1`
    /// becomes `x_1, ..., x_a`, ordered by (original index, copy); variables
    /// of maximal exponent one keep their name (so squarefree ideals are
    /// fixed up to dropping unused variables), unless that would clash with
    /// a copy name, in which case every variable is suffixed. Variables
    /// absent from every generator are dropped.
    pub fn polarize(&self) -> Polarization {
        let mut max_exp = vec![0u32; self.vars.len()];
        for g in &self.gens {
            for &(v, e) in &g.exps {
                max_exp[v] = max_exp[v].max(e);
            }
        }
        let mut first = vec![0usize; self.vars.len()];
        let mut origin = Vec::new();
        let mut vars = Vec::new();
        for (v, &a) in max_exp.iter().enumerate() {
            first[v] = origin.len();
            for copy in 1..=a {
                origin.push((v, copy));
                vars.push(if a == 1 {
                    self.vars[v].clone()
                } else {
                    format!("{}_{}", self.vars[v], copy)
                });
            }
        }
        if vars.iter().collect::<HashSet<_>>().len() < vars.len() {
            vars = origin
                .iter()
                .map(|&(v, copy)| format!("{}_{}", self.vars[v], copy))
                .collect();
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let vs: Vec<Var> = g
                    .exps
                    .iter()
                    .flat_map(|&(v, e)| {
                        let base = first[v];
                        (0..e as usize).map(move |j| base + j)
                    })
                    .collect();
                Monomial::from_vars(&vs)
            })
            .collect();
        Polarization {
            ideal: MonomialIdeal {
                vars,
                gens: minimalize(gens),
            },
            origin,
        }
    }

    /// Canonical text form, e.g. `(x1^2*x2, x1*x3)`; `(0)` for the zero
    /// ideal.
    pub fn render(&self) -> String {
        if self.gens.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.render(&self.vars)).collect();
        format!("({})", parts.join(", "))
    }

    /// Parses the canonical text form. Variables are numbered by first
    /// appearance. A term that is exactly `1` is the unit monomial, and
    /// `(0)` or `()` is the zero ideal.
    pub fn parse(text: &str) -> Result<MonomialIdeal> {
        let err = |message: String| Error::Parse { line: 1, message };
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix('(') {
            body = inner
                .strip_suffix(')')
                .ok_or_else(|| err("unbalanced parenthesis".into()))?
                .trim();
        }
        let mut vars: Vec<String> = Vec::new();
        let mut gens = Vec::new();
        if body.is_empty() || body == "0" {
            return Ok(MonomialIdeal::zero(vars));
        }
        for term in body.split(',') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty generator".into()));
            }
            if term == "1" {
                gens.push(Monomial::one());
                continue;
            }
            let mut pairs = Vec::new();
            for factor in term.split('*') {
                let factor = factor.trim();
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                        if e == 0 || e > 1024 {
                            return Err(err(format!("exponent out of range in {factor:?}")));
                        }
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                if name.is_empty()
                    || name
                        .chars()
                        .any(|c| c.is_whitespace() || "()^*,".contains(c))
                {
                    return Err(err(format!("bad variable name {name:?}")));
                }
                let v = match vars.iter().position(|x| x == name) {
                    Some(i) => i,
                    None => {
                        vars.push(name.to_string());
                        vars.len() - 1
                    }
                };
                pairs.push((v, exp));
            }
            let m = Monomial::from_pairs(&pairs);
            if m.degree() > 4096 {
                return Err(err("generator degree exceeds 4096".into()));
            }
            gens.push(m);
        }
        MonomialIdeal::new(vars, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A polarized ideal plus, for each new variable, its `(original variable,
/// copy index)` origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    pub origin: Vec<(Var, u32)>,
}
