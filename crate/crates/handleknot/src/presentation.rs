//! Finite presentations, Fox calculus, Smith normal form and Alexander matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::freegroup::{parse_word, FreeWord, WordError};
use crate::ideals::LambdaMatrix;
use crate::laurent::{Exp, LaurentPoly2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("abelianization is not Z^2: invariant factors {torsion:?}, free rank {free_rank}")]
    NotZ2 { torsion: Vec<String>, free_rank: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub n: usize,
    pub relators: Vec<FreeWord>,
    pub names: Vec<String>,
}

impl GroupPresentation {
    pub fn new(n: usize, relators: Vec<FreeWord>) -> Self {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_names(n, relators, names)
    }

    pub fn with_names(n: usize, relators: Vec<FreeWord>, names: Vec<String>) -> Self {
        assert_eq!(names.len(), n);
        let relators = relators
            .into_iter()
            .map(|r| FreeWord::from_letters(n, r.letters()).expect("relator within rank"))
            .collect();
        GroupPresentation { n, relators, names }
    }

    pub fn deficiency(&self) -> i64 {
        self.n as i64 - self.relators.len() as i64
    }

    /// The presentation file format: `gens: n` then `rel:` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.n);
        for r in &self.relators {
            s.push_str(&format!("rel: {}\n", r.display_with("x")));
        }
        s
    }

    /// Relator rendered with the generator names.
    pub fn relator_named(&self, i: usize) -> String {
        let r = &self.relators[i];
        if r.is_identity() {
            return "1".into();
        }
        r.letters()
            .iter()
            .map(|&l| {
                let name = &self.names[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.names.join(","))?;
        let rels: Vec<String> = (0..self.relators.len()).map(|i| self.relator_named(i)).collect();
        write!(f, "{}>", rels.join(", "))
    }
}

pub fn deficiency(p: &GroupPresentation) -> i64 {
    p.deficiency()
}

pub fn parse_presentation(text: &str) -> Result<GroupPresentation, PresentationError> {
    let mut n: Option<usize> = None;
    let mut rels = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| PresentationError::Syntax { line: i + 1, msg };
        if let Some(rest) = line.strip_prefix("gens:") {
            if n.is_some() {
                return Err(err("duplicate `gens:` line".into()));
            }
            let v: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad generator count `{}`", rest.trim())))?;
            if v == 0 || v > 10_000 {
                return Err(err(format!("generator count {v} out of range")));
            }
            n = Some(v);
        } else if let Some(rest) = line.strip_prefix("rel:") {
            let n = n.ok_or_else(|| err("`rel:` before `gens:`".into()))?;
            let w = parse_word(rest, n).map_err(|e: WordError| err(e.to_string()))?;
            rels.push(w);
        } else {
            return Err(err(format!("unrecognized line `{line}`")));
        }
    }
    let n = n.ok_or(PresentationError::Syntax {
        line: 0,
        msg: "missing `gens:` line".into(),
    })?;
    Ok(GroupPresentation::new(n, rels))
}

/// Finitely supported Z-linear combination of free-group elements.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    pub terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: FreeWord) -> Self {
        let mut e = Self::zero();
        e.add_term(w, BigInt::one());
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        let entry = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, g: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(g.mul(w), c.clone());
        }
        out
    }

    /// Image under `x_j -> t^{images[j]}`.
    pub fn abelianize(&self, images: &[Exp]) -> LaurentPoly2 {
        LaurentPoly2::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (word_exponent(w, images), c.clone())),
        )
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}*[{}]", w.display_with("x")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn word_exponent(w: &FreeWord, images: &[Exp]) -> Exp {
    w.letters().iter().fold((0, 0), |acc, &l| {
        let (a, b) = images[l.unsigned_abs() as usize - 1];
        let s = l.signum() as i64;
        (acc.0 + s * a, acc.1 + s * b)
    })
}

/// `∂_j r` with `∂_j x_j = 1` and `∂_j x_j^-1 = -x_j^-1`.
pub fn fox_derivative(r: &FreeWord, j: usize) -> Result<GroupRingElement, PresentationError> {
    if j == 0 || j > r.rank() {
        return Err(PresentationError::IndexOutOfRange(j));
    }
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity(r.rank());
    for &l in r.letters() {
        let step = FreeWord::from_letters(r.rank(), &[l]).expect("letter in range");
        if l == j as i32 {
            out.add_term(prefix.clone(), BigInt::one());
        }
        prefix = prefix.mul(&step);
        if l == -(j as i32) {
            out.add_term(prefix.clone(), -BigInt::one());
        }
    }
    Ok(out)
}

/// Abelianized Fox derivative computed on exponents only.
fn fox_abelian(r: &FreeWord, j: usize, images: &[Exp]) -> LaurentPoly2 {
    let mut out = LaurentPoly2::zero();
    let mut pos = (0i64, 0i64);
    for &l in r.letters() {
        let (a, b) = images[l.unsigned_abs() as usize - 1];
        if l == j as i32 {
            out = &out + &LaurentPoly2::monomial(1, pos.0, pos.1);
        }
        if l > 0 {
            pos = (pos.0 + a, pos.1 + b);
        } else {
            pos = (pos.0 - a, pos.1 - b);
        }
        if l == -(j as i32) {
            out = &out - &LaurentPoly2::monomial(1, pos.0, pos.1);
        }
    }
    out
}

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

pub fn int_matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b.iter()).map(|(x, br)| x * &br[j]).sum())
                .collect()
        })
        .collect()
}

/// `(D, U, V)` with `U·A·V = D`, `U`, `V` unimodular and `d_i | d_{i+1}`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity_matrix(s);
    let mut v = identity_matrix(n);
    for t in 0..s.min(n) {
        loop {
            let Some((pi, pj)) = min_entry(&d, t) else {
                return (d, u, v);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let p = d[t][t].clone();
            let mut dirty = false;
            for i in t + 1..s {
                let q = d[i][t].div_floor(&p);
                if !q.is_zero() {
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = d[t][j].div_floor(&p);
                if !q.is_zero() {
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..s).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_axpy(&mut d, t, i, &m1);
                    row_axpy(&mut u, t, i, &m1);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    (d, u, v)
}


fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in d.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row_i -= q·row_k`
fn row_axpy(m: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    let src = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(src.iter()) {
        *x -= q * y;
    }
}

/// `col_j -= q·col_k`
fn col_axpy(m: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[k].clone();
        row[j] -= q * y;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    pub images: Vec<Exp>,
}

pub fn relator_exponent_matrix(p: &GroupPresentation) -> IntMatrix {
    p.relators
        .iter()
        .map(|r| r.abelianize().into_iter().map(BigInt::from).collect())
        .collect()
}

pub fn abelianization_map(p: &GroupPresentation) -> Result<AbelianizationMap, PresentationError> {
    let n = p.n;
    let r = relator_exponent_matrix(p);
    let (d, _, v) = if r.is_empty() {
        (Vec::new(), Vec::new(), identity_matrix(n))
    } else {
        smith_normal_form(&r)
    };
    let diag: Vec<BigInt> = (0..d.len().min(n))
        .map(|i| d[i][i].clone())
        .filter(|x| !x.is_zero())
        .collect();
    let free_rank = n - diag.len();
    let torsion: Vec<String> = diag.iter().filter(|x| !x.is_one()).map(|x| x.to_string()).collect();
    if free_rank != 2 || !torsion.is_empty() {
        return Err(PresentationError::NotZ2 { torsion, free_rank });
    }
    let k = diag.len();
    let to_i64 = |x: &BigInt| i64::try_from(x).expect("abelianization coordinate fits in i64");
    let images = (0..n).map(|j| (to_i64(&v[j][k]), to_i64(&v[j][k + 1]))).collect();
    Ok(AbelianizationMap { images })
}

pub fn alexander_matrix(p: &GroupPresentation) -> Result<LambdaMatrix, PresentationError> {
    let ab = abelianization_map(p)?;
    Ok(alexander_matrix_with(p, &ab.images))
}

pub fn alexander_matrix_with(p: &GroupPresentation, images: &[Exp]) -> LambdaMatrix {
    let entries = p
        .relators
        .iter()
        .map(|r| (1..=p.n).map(|j| fox_abelian(r, j, images)).collect())
        .collect();
    LambdaMatrix::new(p.relators.len(), p.n, entries)
}
