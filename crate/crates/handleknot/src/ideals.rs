//! Elementary ideals over Λ, Alexander polynomials and the unitarity,
//! symmetry and principality tests.

use std::cmp::Ordering;
use std::fmt;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{
    augmentation_eval, gcd_many, involution_sigma, preferred_generator, Exp, LaurentError,
    LaurentPoly2,
};
use crate::presentation::{
    alexander_matrix, smith_normal_form, GroupPresentation, PresentationError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("the zero ideal has no Alexander polynomial")]
    ZeroIdeal,
    #[error("principality is only tested for proper nonzero ideals")]
    Degenerate,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<LaurentPoly2>>,
}

impl std::fmt::Debug for LambdaMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl LambdaMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<LaurentPoly2>>) -> Self {
        assert_eq!(entries.len(), rows);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        LambdaMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_ints(m: &[Vec<i64>]) -> Self {
        let cols = m.first().map_or(0, |r| r.len());
        Self::new(
            m.len(),
            cols,
            m.iter()
                .map(|r| r.iter().map(|&x| LaurentPoly2::constant(x)).collect())
                .collect(),
        )
    }

    /// `A ⊕ Λ^k`: appends `k` zero columns.
    pub fn append_zero_columns(&self, k: usize) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.extend(std::iter::repeat_n(LaurentPoly2::zero(), k));
                r
            })
            .collect();
        Self::new(self.rows, self.cols + k, entries)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly2) -> LaurentPoly2) -> Self {
        Self::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        )
    }
}

/// Determinant by cofactor expansion memoized on column subsets.
pub fn determinant(m: &[Vec<LaurentPoly2>]) -> LaurentPoly2 {
    let k = m.len();
    if k == 0 {
        return LaurentPoly2::one();
    }
    assert!(k < 31, "determinant order too large");
    let mut memo: HashMap<u32, LaurentPoly2> = HashMap::new();
    det_rec(m, (1u32 << k) - 1, &mut memo)
}

fn det_rec(m: &[Vec<LaurentPoly2>], mask: u32, memo: &mut HashMap<u32, LaurentPoly2>) -> LaurentPoly2 {
    let k = m.len();
    let used = mask.count_ones() as usize;
    if used == 0 {
        return LaurentPoly2::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = k - used;
    let mut acc = LaurentPoly2::zero();
    let mut pos = 0;
    for j in 0..k {
        if mask & (1 << j) == 0 {
            continue;
        }
        if !m[row][j].is_zero() {
            let sub = det_rec(m, mask & !(1 << j), memo);
            let term = &m[row][j] * &sub;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// An ideal of Λ given by generators; `full` marks Λ itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealGens {
    pub full: bool,
    pub gens: Vec<LaurentPoly2>,
}

impl fmt::Display for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            return f.write_str("(1)");
        }
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        let g: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl IdealGens {
    pub fn zero() -> Self {
        IdealGens {
            full: false,
            gens: Vec::new(),
        }
    }

    pub fn full_ring() -> Self {
        IdealGens {
            full: true,
            gens: Vec::new(),
        }
    }

    /// Normalizes to preferred generators, drops zeros, associates and
    /// generators that are multiples of other generators.
    pub fn new(gens: impl IntoIterator<Item = LaurentPoly2>) -> Self {
        let mut v: Vec<LaurentPoly2> = Vec::new();
        for g in gens {
            let Ok(g) = preferred_generator(&g) else {
                continue;
            };
            if g.is_unit() {
                return Self::full_ring();
            }
            if !v.contains(&g) {
                v.push(g);
            }
        }
        v.sort_by(|a, b| a.num_terms().cmp(&b.num_terms()).then_with(|| a.cmp(b)));
        let mut kept: Vec<LaurentPoly2> = Vec::new();
        for g in v {
            if !kept.iter().any(|h| h.divides(&g)) {
                kept.push(g);
            }
        }
        IdealGens {
            full: false,
            gens: kept,
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.full && self.gens.is_empty()
    }

    pub fn generators(&self) -> Vec<LaurentPoly2> {
        if self.full {
            vec![LaurentPoly2::one()]
        } else {
            self.gens.clone()
        }
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly2) -> LaurentPoly2) -> Self {
        if self.full {
            return self.clone();
        }
        Self::new(self.gens.iter().map(f))
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k×k` minors.
pub fn minors(b: &LambdaMatrix, k: usize) -> Vec<LaurentPoly2> {
    let mut out = Vec::new();
    let row_sets = k_subsets(b.rows, k);
    let col_sets = k_subsets(b.cols, k);
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<LaurentPoly2>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| b.entries[i][j].clone()).collect())
                .collect();
            out.push(determinant(&sub));
        }
    }
    out
}

/// `E_d(B)`: the ideal of `(n-d)`-minors; zero when `n-d > s`, Λ when `n-d <= 0`.
pub fn elementary_ideal(b: &LambdaMatrix, d: usize) -> IdealGens {
    if b.cols <= d {
        return IdealGens::full_ring();
    }
    let k = b.cols - d;
    if k > b.rows {
        return IdealGens::zero();
    }
    IdealGens::new(minors(b, k))
}

/// Eliminates unit pivots and zero rows. Every `E_d` is preserved at the
/// same index `d`; each elimination lowers both dimensions by one.
pub fn simplify_matrix(b: &LambdaMatrix) -> LambdaMatrix {
    let mut m = b.entries.clone();
    let mut cols = b.cols;
    loop {
        m.retain(|r| r.iter().any(|x| !x.is_zero()));
        let pivot = m.iter().enumerate().find_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| x.is_unit())
                .min_by_key(|(j, _)| m.iter().filter(|r2| !r2[*j].is_zero()).count())
                .map(|(j, x)| (i, j, x.as_unit().expect("unit")))
        });
        let Some((pi, pj, u)) = pivot else {
            break;
        };
        let inv = LaurentPoly2::monomial(u.sign as i64, -u.exp.0, -u.exp.1);
        let prow = m[pi].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == pi || row[pj].is_zero() {
                continue;
            }
            let factor = &row[pj] * &inv;
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        m.remove(pi);
        for row in m.iter_mut() {
            row.remove(pj);
        }
        cols -= 1;
    }
    LambdaMatrix::new(m.len(), cols, m)
}

/// `Δ`: the preferred generator of the gcd of the generators.
pub fn delta(i: &IdealGens) -> Result<LaurentPoly2, IdealError> {
    if i.full {
        return Ok(LaurentPoly2::one());
    }
    if i.gens.is_empty() {
        return Err(IdealError::ZeroIdeal);
    }
    Ok(gcd_many(i.gens.iter())?)
}

pub fn unitary_test(i: &IdealGens) -> bool {
    if i.full {
        return true;
    }
    i.gens
        .iter()
        .fold(BigInt::zero(), |g, f| g.gcd(&augmentation_eval(f)))
        .is_one()
}

/// `f = ± t1^a t2^b f(t1^-1, t2^-1)` for some `a, b`.
pub fn symmetry_test(f: &LaurentPoly2) -> Result<bool, IdealError> {
    Ok(preferred_generator(f)? == preferred_generator(&involution_sigma(f))?)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Monomial in at most three variables, ordered by graded reverse lex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    fn lcm(&self, other: &Mono) -> Mono {
        Mono([0, 1, 2].map(|i| self.0[i].max(other.0[i])))
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono([0, 1, 2].map(|i| self.0[i] - other.0[i]))
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono([0, 1, 2].map(|i| self.0[i] + other.0[i]))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| {
            for i in (0..3).rev() {
                if self.0[i] != other.0[i] {
                    return other.0[i].cmp(&self.0[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over F_p in at most three variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    pub terms: BTreeMap<Mono, u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let r = num_integer::Integer::extended_gcd(&(a as i128), &(p as i128));
    (r.x.rem_euclid(p as i128)) as u64
}

impl ModPoly {
    pub fn zero(p: u64) -> Self {
        ModPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(p: u64, terms: &[([u32; 3], i64)]) -> Self {
        let mut out = Self::zero(p);
        for &(m, c) in terms {
            out.add_term(Mono(m), c.rem_euclid(p as i64) as u64);
        }
        out
    }

    fn add_term(&mut self, m: Mono, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = (*e + c) % self.p;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono([0, 0, 0])) == Some(&1)
    }

    fn lead(&self) -> Option<(Mono, u64)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) => self.scale(inv_mod(c, self.p)),
            None => self.clone(),
        }
    }

    fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.p);
        for (m, x) in &self.terms {
            out.add_term(*m, (*x as u128 * c as u128 % self.p as u128) as u64);
        }
        out
    }

    /// `self - c·mono·g`
    fn sub_mul(&self, c: u64, mono: &Mono, g: &ModPoly) -> Self {
        let mut out = self.clone();
        let p = self.p;
        for (m, x) in &g.terms {
            let v = (*x as u128 * c as u128 % p as u128) as u64;
            out.add_term(m.mul(mono), p - v);
        }
        out
    }

    pub fn normal_form(&self, basis: &[ModPoly]) -> ModPoly {
        let mut f = self.clone();
        let mut r = ModPoly::zero(self.p);
        while let Some((m, c)) = f.lead() {
            match basis.iter().find(|g| g.lead().is_some_and(|(gm, _)| gm.divides(&m))) {
                Some(g) => {
                    let (gm, gc) = g.lead().expect("nonzero basis element");
                    let q = (c as u128 * inv_mod(gc, self.p) as u128 % self.p as u128) as u64;
                    f = f.sub_mul(q, &m.div(&gm), g);
                }
                None => {
                    f.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        r
    }
}

fn s_poly(f: &ModPoly, g: &ModPoly) -> ModPoly {
    let (fm, fc) = f.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let l = fm.lcm(&gm);
    let a = f.scale(inv_mod(fc, f.p));
    let b = g.scale(inv_mod(gc, g.p));
    let mut out = ModPoly::zero(f.p);
    for (m, x) in &a.terms {
        out.add_term(m.mul(&l.div(&fm)), *x);
    }
    out.sub_mul(1, &l.div(&gm), &b)
}

/// Reduced Gröbner basis over F_p by Buchberger's algorithm, grevlex order.
pub fn groebner_mod_p(polys: &[ModPoly], p: u64) -> Result<Vec<ModPoly>, IdealError> {
    if !is_prime(p) {
        return Err(IdealError::NonPrime(p));
    }
    let mut g: Vec<ModPoly> = polys
        .iter()
        .map(|f| ModPoly {
            p,
            terms: f.terms.iter().map(|(m, c)| (*m, c % p)).filter(|x| x.1 != 0).collect(),
        })
        .filter(|f| !f.is_zero())
        .map(|f| f.monic())
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, _) = g[i].lead().expect("nonzero");
        let (mj, _) = g[j].lead().expect("nonzero");
        if mi.lcm(&mj) == mi.mul(&mj) {
            continue;
        }
        let r = s_poly(&g[i], &g[j]).normal_form(&g);
        if !r.is_zero() {
            let r = r.monic();
            if r.is_one() {
                return Ok(vec![r]);
            }
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    Ok(reduce_basis(g))
}

fn reduce_basis(mut g: Vec<ModPoly>) -> Vec<ModPoly> {
    g.sort_by(|a, b| a.lead().map(|x| x.0).cmp(&b.lead().map(|x| x.0)));
    let mut minimal: Vec<ModPoly> = Vec::new();
    for f in g {
        let (fm, _) = f.lead().expect("nonzero");
        if !minimal.iter().any(|h| h.lead().expect("nonzero").0.divides(&fm)) {
            minimal.push(f);
        }
    }
    let mut out = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<ModPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, f)| f.clone())
            .collect();
        let (m, c) = minimal[i].lead().expect("nonzero");
        let mut tail = minimal[i].clone();
        tail.terms.remove(&m);
        let mut r = tail.normal_form(&others);
        r.add_term(m, c);
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.lead().map(|x| x.0).cmp(&b.lead().map(|x| x.0)));
    out
}

/// Image of a Laurent polynomial in F_p[t1, t2] after clearing denominators.
fn to_mod_poly(f: &LaurentPoly2, p: u64) -> ModPoly {
    let (a0, b0) = f.min_exponents();
    let mut out = ModPoly::zero(p);
    let pb = BigInt::from(p);
    for (&(a, b), c) in f.terms() {
        let c = c.mod_floor(&pb).to_u64().expect("reduced coefficient");
        out.add_term(Mono([(a - a0) as u32, (b - b0) as u32, 0]), c);
    }
    out
}

fn saturated_basis(gens: &[LaurentPoly2], p: u64) -> Result<Vec<ModPoly>, IdealError> {
    let mut polys: Vec<ModPoly> = gens.iter().map(|g| to_mod_poly(g, p)).collect();
    polys.push(ModPoly::from_terms(p, &[([1, 1, 1], 1), ([0, 0, 0], -1)]));
    groebner_mod_p(&polys, p)
}

/// Whether `I ⊗ F_p` is the unit ideal of F_p[t1^±1, t2^±1].
pub fn is_unit_ideal_laurent_mod_p(i: &IdealGens, p: u64) -> Result<bool, IdealError> {
    if !is_prime(p) {
        return Err(IdealError::NonPrime(p));
    }
    if i.full {
        return Ok(true);
    }
    let basis = saturated_basis(&i.gens, p)?;
    Ok(basis.len() == 1 && basis[0].is_one())
}

/// Sound refutation of `f ∈ I`: false means `f mod p ∉ I mod p`.
pub fn maybe_member_mod_p(f: &LaurentPoly2, i: &IdealGens, p: u64) -> Result<bool, IdealError> {
    if i.full || f.is_zero() {
        return Ok(true);
    }
    let basis = saturated_basis(&i.gens, p)?;
    Ok(to_mod_poly(f, p).normal_form(&basis).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Principal {
    Yes(LaurentPoly2),
    No(u64),
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetric {
    Yes,
    No,
    NotApplicable,
}

pub const WITNESS_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

pub fn principality_check(i: &IdealGens) -> Result<Principal, IdealError> {
    if i.full || i.is_zero() {
        return Err(IdealError::Degenerate);
    }
    let d = delta(i)?;
    if i.gens.iter().any(|g| g.is_associate(&d)) {
        return Ok(Principal::Yes(d));
    }
    if certificate_search(&d, &i.gens, 4) {
        return Ok(Principal::Yes(d));
    }
    for p in WITNESS_PRIMES {
        let big = saturated_basis(&i.gens, p)?;
        let small = saturated_basis(std::slice::from_ref(&d), p)?;
        if big != small {
            return Ok(Principal::No(p));
        }
    }
    Ok(Principal::Unknown)
}

/// Looks for `target = Σ c_i g_i` with each `c_i` supported on exponents
/// `|a| + |b| <= deg`, by solving the integer linear system via Smith form.
pub fn certificate_search(target: &LaurentPoly2, gens: &[LaurentPoly2], deg: i64) -> bool {
    let shifts: Vec<Exp> = (-deg..=deg)
        .flat_map(|a| (-deg..=deg).map(move |b| (a, b)))
        .filter(|(a, b)| a.abs() + b.abs() <= deg)
        .collect();
    let mut columns: Vec<LaurentPoly2> = Vec::new();
    for g in gens {
        for &(a, b) in &shifts {
            columns.push(g.shift(a, b));
        }
    }
    let mut index: BTreeMap<Exp, usize> = BTreeMap::new();
    for f in columns.iter().chain(std::iter::once(target)) {
        for (e, _) in f.terms() {
            let n = index.len();
            index.entry(*e).or_insert(n);
        }
    }
    let rows = index.len();
    let mut a = vec![vec![BigInt::zero(); columns.len()]; rows];
    for (j, f) in columns.iter().enumerate() {
        for (e, c) in f.terms() {
            a[index[e]][j] = c.clone();
        }
    }
    let mut rhs = vec![BigInt::zero(); rows];
    for (e, c) in target.terms() {
        rhs[index[e]] = c.clone();
    }
    integer_solvable(&a, &rhs)
}

/// Whether `A x = b` has an integer solution.
pub fn integer_solvable(a: &[Vec<BigInt>], b: &[BigInt]) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let (d, u, _) = smith_normal_form(&a.to_vec());
    let ub: Vec<BigInt> = u
        .iter()
        .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
        .collect();
    let cols = a[0].len();
    for (i, v) in ub.iter().enumerate() {
        let di = if i < cols { d[i][i].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !v.is_zero() {
                return false;
            }
        } else if !v.is_multiple_of(&di) {
            return false;
        }
    }
    true
}

/// The block matrix `[[A11ᵀ - t1 A11, (1-t1) A12], [(1-t2) A12ᵀ, A22ᵀ - t2 A22]]`.
pub fn seifert_presentation(
    a11: &[Vec<i64>],
    a12: &[Vec<i64>],
    a22: &[Vec<i64>],
    g1: usize,
    g2: usize,
) -> Result<LambdaMatrix, IdealError> {
    let (n1, n2) = (2 * g1, 2 * g2);
    let square = |m: &[Vec<i64>], n: usize| m.len() == n && m.iter().all(|r| r.len() == n);
    if !square(a11, n1) || !square(a22, n2) {
        return Err(IdealError::Dimension("diagonal blocks must be 2g×2g".into()));
    }
    let a12_ok = (a12.len() == n1 && a12.iter().all(|r| r.len() == n2)) 
        || ((n1 == 0 || n2 == 0) && a12.iter().all(|r| r.is_empty()));
    if !a12_ok {
        return Err(IdealError::Dimension("A12 must be 2g1×2g2".into()));
    }
    let t1 = LaurentPoly2::t1();
    let t2 = LaurentPoly2::t2();
    let one = LaurentPoly2::one();
    let c = |x: i64| LaurentPoly2::constant(x);
    let n = n1 + n2;
    let mut m = vec![vec![LaurentPoly2::zero(); n]; n];
    for i in 0..n1 {
        for j in 0..n1 {
            m[i][j] = &c(a11[j][i]) - &(&t1 * &c(a11[i][j]));
        }
        for j in 0..n2 {
            m[i][n1 + j] = &(&one - &t1) * &c(a12[i][j]);
        }
    }
    for i in 0..n2 {
        for j in 0..n1 {
            m[n1 + i][j] = &(&one - &t2) * &c(a12[j][i]);
        }
        for j in 0..n2 {
            m[n1 + i][n1 + j] = &c(a22[j][i]) - &(&t2 * &c(a22[i][j]));
        }
    }
    Ok(LambdaMatrix::new(n, n, m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderReport {
    pub e0_is_zero: bool,
    pub e1_is_zero: bool,
    pub e2: IdealGens,
    pub delta2: LaurentPoly2,
    pub unitary: bool,
    pub principal: Principal,
    pub symmetric: Symmetric,
    pub warnings: Vec<String>,
}

pub const NOT_HANDLEBODY_WARNING: &str = "input is not a genus-2 handlebody complement group";

pub fn alexander_report(p: &GroupPresentation) -> Result<AlexanderReport, IdealError> {
    let b = alexander_matrix(p)?;
    Ok(report_from_matrix(&b))
}

pub fn report_from_matrix(b: &LambdaMatrix) -> AlexanderReport {
    let s = simplify_matrix(b);
    let e0 = elementary_ideal(&s, 0);
    let e1 = elementary_ideal(&s, 1);
    let e2 = elementary_ideal(&s, 2);
    report_from_ideals(e0.is_zero(), e1.is_zero(), e2)
}

pub fn report_from_ideals(e0_is_zero: bool, e1_is_zero: bool, e2: IdealGens) -> AlexanderReport {
    let mut warnings = Vec::new();
    let unitary = unitary_test(&e2);
    if !e0_is_zero || !e1_is_zero || !unitary {
        warnings.push(NOT_HANDLEBODY_WARNING.to_string());
    }
    let (delta2, principal, symmetric) = if e2.full {
        let one = LaurentPoly2::one();
        (one.clone(), Principal::Yes(one), Symmetric::Yes)
    } else if e2.is_zero() {
        let z = LaurentPoly2::zero();
        (z.clone(), Principal::Yes(z), Symmetric::Yes)
    } else {
        let d = delta(&e2).expect("nonzero ideal");
        let pr = principality_check(&e2).expect("proper nonzero ideal");
        let sym = match &pr {
            Principal::Yes(g) => {
                if symmetry_test(g).expect("nonzero generator") {
                    Symmetric::Yes
                } else {
                    Symmetric::No
                }
            }
            _ => Symmetric::NotApplicable,
        };
        (d, pr, sym)
    };
    AlexanderReport {
        e0_is_zero,
        e1_is_zero,
        e2,
        delta2,
        unitary,
        principal,
        symmetric,
        warnings,
    }
}
