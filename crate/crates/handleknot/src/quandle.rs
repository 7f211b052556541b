//! Finite quandles, coloring counts and the polynomial Φ_p.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{enumerate_cycles, CycleAssignment, Kind, SpineDiagram};
use crate::ideals::is_prime;
use crate::laurent::parse_poly;

pub const DEFAULT_BRUTE_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("quandle axiom {axiom} fails at {at:?}")]
    Axiom { axiom: &'static str, at: Vec<usize> },
    #[error("invalid quandle parameters: {0}")]
    Parameters(String),
    #[error("colorings are implemented for involutory quandles only (type {0})")]
    NotInvolutory(usize),
    #[error("cycle modulus must be 2, got {0}")]
    Modulus(u32),
    #[error("brute-force coloring limited to {limit} arcs, diagram has {arcs}")]
    TooManyArcs { arcs: usize, limit: usize },
    #[error("expected {expected} boundary colors, got {found}")]
    Boundary { expected: usize, found: usize },
    #[error("diagram kind not supported here: {0}")]
    Kind(String),
    #[error("coloring count overflows")]
    Overflow,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuandleSpec {
    Dihedral(usize),
    /// `Z_m[t]/(h)` with `a*b = u·a + (1-u)·b`; polynomials as coefficient
    /// vectors, lowest degree first.
    Alexander { m: usize, h: Vec<i64>, u: Vec<i64> },
    Tetrahedral,
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuandle {
    pub spec: QuandleSpec,
    /// `table[a][b] = a * b`
    pub table: Vec<Vec<usize>>,
}

impl FiniteQuandle {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    fn dihedral_prime(&self) -> Option<u64> {
        match self.spec {
            QuandleSpec::Dihedral(m) if m % 2 == 1 && is_prime(m as u64) => Some(m as u64),
            _ => None,
        }
    }
}

pub fn check_axioms(table: &[Vec<usize>]) -> Result<(), QuandleError> {
    let m = table.len();
    if m == 0 || table.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
        return Err(QuandleError::Parameters("table must be square with entries < order".into()));
    }
    for a in 0..m {
        if table[a][a] != a {
            return Err(QuandleError::Axiom {
                axiom: "Q1",
                at: vec![a],
            });
        }
    }
    for b in 0..m {
        let mut seen = vec![false; m];
        for a in 0..m {
            if std::mem::replace(&mut seen[table[a][b]], true) {
                return Err(QuandleError::Axiom {
                    axiom: "Q3",
                    at: vec![b],
                });
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if table[table[a][b]][c] != table[table[a][c]][table[b][c]] {
                    return Err(QuandleError::Axiom {
                        axiom: "Q2",
                        at: vec![a, b, c],
                    });
                }
            }
        }
    }
    Ok(())
}

fn poly_mulmod(a: &[i64], b: &[i64], h: &[i64], m: i64) -> Vec<i64> {
    let n = h.len() - 1;
    let mut prod = vec![0i64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y).rem_euclid(m);
        }
    }
    let lead_inv = inv_mod_i64(h[n], m).expect("unit leading coefficient");
    for k in (n..prod.len()).rev() {
        let c = prod[k] * lead_inv % m;
        if c == 0 {
            continue;
        }
        for (j, hj) in h.iter().enumerate() {
            prod[k - n + j] = (prod[k - n + j] - c * hj).rem_euclid(m);
        }
    }
    prod.truncate(n);
    prod.resize(n, 0);
    prod
}

fn inv_mod_i64(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

pub fn make_quandle(spec: QuandleSpec) -> Result<FiniteQuandle, QuandleError> {
    let table = match &spec {
        QuandleSpec::Dihedral(m) => {
            let m = *m;
            if m < 2 {
                return Err(QuandleError::Parameters("dihedral order must be at least 2".into()));
            }
            (0..m)
                .map(|a| (0..m).map(|b| (2 * b + m - a) % m).collect())
                .collect()
        }
        QuandleSpec::Alexander { m, h, u } => alexander_table(*m, h, u)?,
        QuandleSpec::Tetrahedral => tetrahedral_table(),
        QuandleSpec::Explicit(t) => t.clone(),
    };
    check_axioms(&table)?;
    Ok(FiniteQuandle { spec, table })
}

fn alexander_table(m: usize, h: &[i64], u: &[i64]) -> Result<Vec<Vec<usize>>, QuandleError> {
    if m < 2 {
        return Err(QuandleError::Parameters("modulus must be at least 2".into()));
    }
    let mi = m as i64;
    let mut h: Vec<i64> = h.iter().map(|c| c.rem_euclid(mi)).collect();
    while h.last() == Some(&0) {
        h.pop();
    }
    if h.len() < 2 {
        return Err(QuandleError::Parameters("h must have positive degree".into()));
    }
    if inv_mod_i64(h[0], mi).is_none() || inv_mod_i64(h[h.len() - 1], mi).is_none() {
        return Err(QuandleError::Parameters(
            "leading and trailing coefficients of h must be units".into(),
        ));
    }
    let n = h.len() - 1;
    let size = m
        .checked_pow(n as u32)
        .filter(|&s| s <= 4096)
        .ok_or_else(|| QuandleError::Parameters("quandle too large".into()))?;
    let decode = |mut x: usize| -> Vec<i64> {
        (0..n)
            .map(|_| {
                let c = (x % m) as i64;
                x /= m;
                c
            })
            .collect()
    };
    let encode = |v: &[i64]| v.iter().rev().fold(0usize, |acc, &c| acc * m + c.rem_euclid(mi) as usize);
    let mut uu: Vec<i64> = u.iter().map(|c| c.rem_euclid(mi)).collect();
    uu.resize(uu.len().max(1), 0);
    let uu = poly_mulmod(&uu, &[1], &h, mi);
    let mut one_minus_u: Vec<i64> = uu.iter().map(|c| (-c).rem_euclid(mi)).collect();
    one_minus_u[0] = (one_minus_u[0] + 1) % mi;
    let mut table = vec![vec![0usize; size]; size];
    for a in 0..size {
        let ua = poly_mulmod(&uu, &decode(a), &h, mi);
        for b in 0..size {
            let vb = poly_mulmod(&one_minus_u, &decode(b), &h, mi);
            let s: Vec<i64> = ua.iter().zip(&vb).map(|(x, y)| (x + y) % mi).collect();
            table[a][b] = encode(&s);
        }
    }
    Ok(table)
}

/// Conjugation quandle `a*b = b^-1 a b` on the four 3-cycles of A_4
/// conjugate to (0 1 2).
fn tetrahedral_table() -> Vec<Vec<usize>> {
    type Perm = [usize; 4];
    let compose = |p: &Perm, q: &Perm| -> Perm { [0, 1, 2, 3].map(|i| q[p[i]]) };
    let inverse = |p: &Perm| -> Perm {
        let mut r = [0; 4];
        for i in 0..4 {
            r[p[i]] = i;
        }
        r
    };
    let base: Perm = [1, 2, 0, 3];
    let mut elems: Vec<Perm> = vec![base];
    let gens: [Perm; 2] = [[1, 2, 0, 3], [0, 2, 3, 1]];
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let c = compose(&compose(&inverse(g), &elems[i]), g);
            if !elems.contains(&c) {
                elems.push(c);
            }
        }
        i += 1;
    }
    let idx = |p: &Perm| elems.iter().position(|q| q == p).expect("closed class");
    (0..elems.len())
        .map(|a| {
            (0..elems.len())
                .map(|b| idx(&compose(&compose(&inverse(&elems[b]), &elems[a]), &elems[b])))
                .collect()
        })
        .collect()
}

/// Parses `dihedral:5`, `tetrahedral`, `alexander:2:t^2+t+1:t`.
pub fn parse_quandle_spec(s: &str) -> Result<QuandleSpec, QuandleError> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let bad = || QuandleError::Parameters(format!("bad quandle spec `{s}`"));
    match parts.as_slice() {
        ["dihedral", m] => Ok(QuandleSpec::Dihedral(m.parse().map_err(|_| bad())?)),
        ["tetrahedral"] => Ok(QuandleSpec::Tetrahedral),
        ["alexander", m, h, u] => Ok(QuandleSpec::Alexander {
            m: m.parse().map_err(|_| bad())?,
            h: univariate(h).ok_or_else(bad)?,
            u: univariate(u).ok_or_else(bad)?,
        }),
        _ => Err(bad()),
    }
}

fn univariate(s: &str) -> Option<Vec<i64>> {
    let f = parse_poly(s).ok()?;
    let mut out: Vec<i64> = Vec::new();
    for (&(a, b), c) in f.terms() {
        let e = match (a, b) {
            (0, e) | (e, 0) => e,
            _ => return None,
        };
        if !(0..64).contains(&e) {
            return None;
        }
        let e = e as usize;
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] += i64::try_from(c).ok()?;
    }
    if out.is_empty() {
        out.push(0);
    }
    Some(out)
}

/// Least `k >= 2` with `a *^k b = a` for all `a, b`.
pub fn quandle_type(q: &FiniteQuandle) -> usize {
    let m = q.order();
    let mut k = 1usize;
    for b in 0..m {
        let mut seen = vec![false; m];
        for a in 0..m {
            if seen[a] {
                continue;
            }
            let mut len = 0;
            let mut x = a;
            loop {
                seen[x] = true;
                x = q.op(x, b);
                len += 1;
                if x == a {
                    break;
                }
            }
            k = k.lcm(&len);
        }
    }
    k.max(2)
}

pub fn brute_limit() -> usize {
    std::env::var("HANDLEKNOT_BRUTE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BRUTE_LIMIT)
}

fn check_inputs(d: &SpineDiagram, q: &FiniteQuandle, z: &CycleAssignment) -> Result<(), QuandleError> {
    let ty = quandle_type(q);
    if ty != 2 {
        return Err(QuandleError::NotInvolutory(ty));
    }
    if z.k != 2 {
        return Err(QuandleError::Modulus(z.k));
    }
    let _ = d;
    Ok(())
}

fn boundary_pins(d: &SpineDiagram, colors: &[usize]) -> Result<Vec<(usize, usize)>, QuandleError> {
    if colors.len() != d.boundary.len() {
        return Err(QuandleError::Boundary {
            expected: d.boundary.len(),
            found: colors.len(),
        });
    }
    Ok(d.boundary.iter().zip(colors).map(|(b, &c)| (b.arc, c)).collect())
}

/// Number of colorings of a closed diagram.
pub fn count_colorings(d: &SpineDiagram, q: &FiniteQuandle, z: &CycleAssignment) -> Result<u128, QuandleError> {
    if d.kind == Kind::Tangle {
        return Err(QuandleError::Kind("use count_tangle_colorings for tangles".into()));
    }
    count_with_pins(d, q, z, &[])
}

/// Number of colorings of a tangle with the given colors on its boundary
/// ends, in the order of `d.boundary`.
pub fn count_tangle_colorings(
    d: &SpineDiagram,
    q: &FiniteQuandle,
    z: &CycleAssignment,
    boundary: &[usize],
) -> Result<u128, QuandleError> {
    if d.kind != Kind::Tangle {
        return Err(QuandleError::Kind("expected a tangle".into()));
    }
    let pins = boundary_pins(d, boundary)?;
    count_with_pins(d, q, z, &pins)
}

fn count_with_pins(
    d: &SpineDiagram,
    q: &FiniteQuandle,
    z: &CycleAssignment,
    pins: &[(usize, usize)],
) -> Result<u128, QuandleError> {
    check_inputs(d, q, z)?;
    if pins.iter().any(|&(_, c)| c >= q.order()) {
        return Err(QuandleError::Parameters("boundary color out of range".into()));
    }
    match q.dihedral_prime() {
        Some(p) => {
            let dim = solution_dimension(d, p, z, pins);
            match dim {
                None => Ok(0),
                Some(k) => (p as u128).checked_pow(k as u32).ok_or(QuandleError::Overflow),
            }
        }
        None => brute_force_count(d, q, z, pins),
    }
}

/// Linear system over F_p for dihedral colorings: rows `(coeffs, rhs)`.
fn dihedral_system(d: &SpineDiagram, p: u64, z: &CycleAssignment, pins: &[(usize, usize)]) -> Vec<(Vec<u64>, u64)> {
    let n = d.arcs.len();
    let mut rows = Vec::new();
    let neg = |x: u64| (p - x % p) % p;
    for c in &d.crossings {
        let mut r = vec![0u64; n];
        if z.value(d.arcs[c.over].comp).is_multiple_of(2) {
            r[c.under_out] = (r[c.under_out] + 1) % p;
            r[c.under_in] = (r[c.under_in] + neg(1)) % p;
        } else {
            r[c.under_out] = (r[c.under_out] + 1) % p;
            r[c.under_in] = (r[c.under_in] + 1) % p;
            r[c.over] = (r[c.over] + neg(2)) % p;
        }
        rows.push((r, 0));
    }
    for v in &d.vertices {
        for k in 1..3 {
            let mut r = vec![0u64; n];
            r[v.ends[0].arc] = (r[v.ends[0].arc] + 1) % p;
            r[v.ends[k].arc] = (r[v.ends[k].arc] + neg(1)) % p;
            rows.push((r, 0));
        }
    }
    for &(arc, c) in pins {
        let mut r = vec![0u64; n];
        r[arc] = 1;
        rows.push((r, c as u64 % p));
    }
    rows
}

/// Dimension of the solution space over F_p, or `None` when inconsistent.
pub fn solution_dimension(d: &SpineDiagram, p: u64, z: &CycleAssignment, pins: &[(usize, usize)]) -> Option<usize> {
    let n = d.arcs.len();
    let mut rows = dihedral_system(d, p, z, pins);
    let inv = |a: u64| -> u64 {
        let e = (a as i64).extended_gcd(&(p as i64));
        e.x.rem_euclid(p as i64) as u64
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i].0[col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let iv = inv(rows[rank].0[col]);
        let (pc, prhs) = {
            let (c, r) = &rows[rank];
            (c.iter().map(|x| x * iv % p).collect::<Vec<u64>>(), r * iv % p)
        };
        rows[rank] = (pc.clone(), prhs);
        for i in 0..rows.len() {
            if i == rank || rows[i].0[col] == 0 {
                continue;
            }
            let f = rows[i].0[col];
            for j in 0..n {
                rows[i].0[j] = (rows[i].0[j] + p * p - f * pc[j] % p) % p;
            }
            rows[i].1 = (rows[i].1 + p * p - f * prhs % p) % p;
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, r)| *r != 0) {
        return None;
    }
    Some(n - rank)
}

/// Exhaustive search with propagation of forced colors.
pub fn brute_force_count(
    d: &SpineDiagram,
    q: &FiniteQuandle,
    z: &CycleAssignment,
    pins: &[(usize, usize)],
) -> Result<u128, QuandleError> {
    check_inputs(d, q, z)?;
    let limit = brute_limit();
    if d.arcs.len() > limit {
        return Err(QuandleError::TooManyArcs {
            arcs: d.arcs.len(),
            limit,
        });
    }
    let mut col: Vec<Option<usize>> = vec![None; d.arcs.len()];
    for &(a, c) in pins {
        if col[a].is_some_and(|x| x != c) {
            return Ok(0);
        }
        col[a] = Some(c);
    }
    Ok(search(d, q, z, &col))
}

fn propagate(d: &SpineDiagram, q: &FiniteQuandle, z: &CycleAssignment, col: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        let set = |col: &mut [Option<usize>], a: usize, v: usize| -> Option<bool> {
            match col[a] {
                Some(x) if x != v => None,
                Some(_) => Some(false),
                None => {
                    col[a] = Some(v);
                    Some(true)
                }
            }
        };
        for c in &d.crossings {
            let twist = z.value(d.arcs[c.over].comp) % 2 == 1;
            let Some(o) = col[c.over] else { continue };
            let act = |x: usize| if twist { q.op(x, o) } else { x };
            if let Some(x) = col[c.under_in] {
                match set(col, c.under_out, act(x)) {
                    None => return false,
                    Some(ch) => changed |= ch,
                }
            } else if let Some(y) = col[c.under_out] {
                match set(col, c.under_in, act(y)) {
                    None => return false,
                    Some(ch) => changed |= ch,
                }
            }
        }
        for v in &d.vertices {
            if let Some(x) = v.ends.iter().find_map(|e| col[e.arc]) {
                for e in &v.ends {
                    match set(col, e.arc, x) {
                        None => return false,
                        Some(ch) => changed |= ch,
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn consistent(d: &SpineDiagram, q: &FiniteQuandle, z: &CycleAssignment, col: &[Option<usize>]) -> bool {
    d.crossings.iter().all(|c| {
        let twist = z.value(d.arcs[c.over].comp) % 2 == 1;
        let (o, x, y) = (col[c.over], col[c.under_in], col[c.under_out]);
        match (o, x, y) {
            (Some(o), Some(x), Some(y)) => y == if twist { q.op(x, o) } else { x },
            _ => true,
        }
    }) && d.vertices.iter().all(|v| {
        let cs: Vec<usize> = v.ends.iter().filter_map(|e| col[e.arc]).collect();
        cs.windows(2).all(|w| w[0] == w[1])
    })
}

fn search(d: &SpineDiagram, q: &FiniteQuandle, z: &CycleAssignment, col: &[Option<usize>]) -> u128 {
    let mut work = col.to_vec();
    if !propagate(d, q, z, &mut work) || !consistent(d, q, z, &work) {
        return 0;
    }
    match work.iter().position(|c| c.is_none()) {
        None => 1,
        Some(i) => (0..q.order())
            .map(|v| {
                let mut next = work.clone();
                next[i] = Some(v);
                search(d, q, z, &next)
            })
            .sum(),
    }
}

/// Exponent multiset `{d(z) - 1}` over the four Z_2-cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhiPolynomial {
    pub exps: [u32; 4],
}

impl PhiPolynomial {
    pub fn new(mut exps: [u32; 4]) -> Self {
        exps.sort_unstable();
        PhiPolynomial { exps }
    }

    pub fn coefficient_sum(&self) -> u32 {
        4
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &e in &self.exps {
            match out.last_mut() {
                Some((x, c)) if *x == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }
}

impl fmt::Display for PhiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(e, c)| {
                let var = match e {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{e}"),
                };
                match (c, var.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => var,
                    _ => format!("{c}{var}"),
                }
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for PhiPolynomial {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut exps = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (c, e) = match term.find('t') {
                None => (term, 0),
                Some(i) => {
                    let e = match &term[i + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|x| x.parse().ok())
                            .ok_or_else(|| format!("bad term `{term}`"))?,
                    };
                    (&term[..i], e)
                }
            };
            let c: usize = if c.is_empty() { 1 } else { c.parse().map_err(|_| format!("bad term `{term}`"))? };
            if exps.len() + c > 4 {
                return Err(format!("`{s}` has coefficient sum above 4"));
            }
            exps.extend(std::iter::repeat_n(e, c));
        }
        let exps: [u32; 4] = exps
            .try_into()
            .map_err(|_| format!("`{s}` must have coefficient sum 4"))?;
        Ok(PhiPolynomial::new(exps))
    }
}

impl Serialize for PhiPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PhiPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-cycle dimensions `d(D, z)` in the order (0,0), (0,1), (1,0), (1,1).
pub fn cycle_dimensions(d: &SpineDiagram, p: u64) -> Result<Vec<(CycleAssignment, u32)>, QuandleError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(QuandleError::NotOddPrime(p));
    }
    let cycles = enumerate_cycles(d, 2).map_err(|e| QuandleError::Kind(e.to_string()))?;
    let mut out = Vec::new();
    for z in cycles {
        let dim = solution_dimension(d, p, &z, &[]).expect("homogeneous system is consistent");
        out.push((z, dim as u32));
    }
    Ok(out)
}

pub fn phi_p(d: &SpineDiagram, p: u64) -> Result<PhiPolynomial, QuandleError> {
    let dims = cycle_dimensions(d, p)?;
    let mut exps = [0u32; 4];
    for (i, (_, k)) in dims.iter().enumerate() {
        exps[i] = k.checked_sub(1).ok_or(QuandleError::Overflow)?;
    }
    Ok(PhiPolynomial::new(exps))
}

/// Dihedral counts for every cycle, keyed by `(z1, z2)`.
pub fn count_table(d: &SpineDiagram, p: u64) -> Result<HashMap<(u32, u32), u128>, QuandleError> {
    Ok(cycle_dimensions(d, p)?
        .into_iter()
        .map(|(z, k)| ((z.z1, z.z2), (p as u128).pow(k)))
        .collect())
}
