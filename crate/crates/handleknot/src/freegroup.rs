//! Words in finite-rank free groups.
//!
//! Letters are signed generator indices: `3` is `t3`, `-3` is `t3^-1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    OutOfRange { index: i32, rank: usize },
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

/// Syllables `(generator, exponent)` with adjacent generators distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SyllableForm(pub Vec<(usize, i64)>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignFilter {
    PassesNecessaryCondition,
    NotPrimitive,
}

fn free_reduce(raw: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in raw {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn reduce(rank: usize, raw: &[i32]) -> Result<FreeWord, WordError> {
    for &l in raw {
        if l == 0 || l.unsigned_abs() as usize > rank {
            return Err(WordError::OutOfRange { index: l, rank });
        }
    }
    Ok(FreeWord {
        rank,
        letters: free_reduce(raw.iter().copied()),
    })
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `t_i` (1-based). Panics when `i` is out of range.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator {i} out of range");
        FreeWord {
            rank,
            letters: vec![i as i32],
        }
    }

    pub fn from_letters(rank: usize, raw: &[i32]) -> Result<Self, WordError> {
        reduce(rank, raw)
    }

    /// `t1^n t2^m` in rank 2.
    pub fn t1n_t2m(n: i64, m: i64) -> Self {
        FreeWord::generator(2, 1)
            .pow(n)
            .mul(&FreeWord::generator(2, 2).pow(m))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let rank = self.rank.max(other.rank);
        FreeWord {
            rank,
            letters: free_reduce(self.letters.iter().chain(other.letters.iter()).copied()),
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g w g^-1`
    pub fn conjugate_by(&self, g: &FreeWord) -> FreeWord {
        g.mul(self).mul(&g.inverse())
    }

    /// Substitutes the image of each generator.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let rank = images.first().map_or(self.rank, |w| w.rank);
        let mut out = FreeWord::identity(rank);
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            out = if l > 0 {
                out.mul(img)
            } else {
                out.mul(&img.inverse())
            };
        }
        out
    }

    /// Cyclically reduced core and the conjugator `u` with `self = u core u^-1`.
    pub fn cyclic_reduction(&self) -> (FreeWord, FreeWord) {
        let l = &self.letters;
        let mut i = 0;
        while i < l.len() / 2 && l[i] == -l[l.len() - 1 - i] {
            i += 1;
        }
        let core = FreeWord {
            rank: self.rank,
            letters: l[i..l.len() - i].to_vec(),
        };
        let u = FreeWord {
            rank: self.rank,
            letters: l[..i].to_vec(),
        };
        (core, u)
    }

    pub fn cyclic_length(&self) -> usize {
        self.cyclic_reduction().0.len()
    }

    pub fn syllables(&self) -> SyllableForm {
        SyllableForm(syllables_of(&self.letters))
    }

    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Renders with the given generator prefix, e.g. `x1 x2^-1`.
    pub fn display_with(&self, prefix: &str) -> String {
        let syl = syllables_of(&self.letters);
        if syl.is_empty() {
            return "1".to_string();
        }
        syl.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("{prefix}{g}")
                } else {
                    format!("{prefix}{g}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({})", self)
    }
}

fn syllables_of(letters: &[i32]) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for &l in letters {
        let g = l.unsigned_abs() as usize;
        match out.last_mut() {
            Some((h, e)) if *h == g => *e += l.signum() as i64,
            _ => out.push((g, l.signum() as i64)),
        }
    }
    out
}

impl SyllableForm {
    pub fn to_word(&self, rank: usize) -> FreeWord {
        let mut raw = Vec::new();
        for &(g, e) in &self.0 {
            let l = if e > 0 { g as i32 } else { -(g as i32) };
            raw.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        FreeWord {
            rank,
            letters: free_reduce(raw),
        }
    }
}

/// Parses `t1^2 t2^-1 t1`. Generator tokens may use the prefix `t` or `x`.
/// An empty string or `1` is the identity.
pub fn parse_word(text: &str, rank: usize) -> Result<FreeWord, WordError> {
    let mut raw = Vec::new();
    let mut col = 0usize;
    for tok in text.split_whitespace() {
        col = text[col..].find(tok).map_or(col, |p| col + p) + 1;
        if tok == "1" {
            continue;
        }
        let syntax = |msg: &str| WordError::Syntax {
            col,
            msg: format!("{msg} in token `{tok}`"),
        };
        let body = tok
            .strip_prefix('t')
            .or_else(|| tok.strip_prefix('x'))
            .ok_or_else(|| syntax("expected generator `t<i>` or `x<i>`"))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<i64>().map_err(|_| syntax("bad exponent"))?),
            None => (body, 1),
        };
        let idx: usize = idx.parse().map_err(|_| syntax("bad generator index"))?;
        if idx == 0 || idx > rank {
            return Err(WordError::OutOfRange {
                index: idx.min(i32::MAX as usize) as i32,
                rank,
            });
        }
        if exp.unsigned_abs() > 1_000_000 {
            return Err(syntax("exponent too large"));
        }
        let l = if exp > 0 { idx as i32 } else { -(idx as i32) };
        raw.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
    }
    reduce(rank, &raw)
}

fn letter_key(l: i32) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

/// Cyclic normal form: the lexicographically least rotation of the cyclic
/// reduction under `t1 < t1^-1 < t2 < t2^-1 < ...`, as syllables.
pub fn cyclic_normal_form(w: &FreeWord) -> SyllableForm {
    let core = w.cyclic_reduction().0;
    let l = core.letters;
    if l.is_empty() {
        return SyllableForm(Vec::new());
    }
    let n = l.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|k| letter_key(l[(a + k) % n]))
                .cmp((0..n).map(|k| letter_key(l[(b + k) % n])))
        })
        .unwrap_or(0);
    let rotated: Vec<i32> = (0..n).map(|k| l[(best + k) % n]).collect();
    SyllableForm(syllables_of(&rotated))
}

pub fn abelianize(w: &FreeWord) -> Vec<i64> {
    w.abelianize()
}

fn indivisible(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

pub fn nielsen_sign_filter(w: &FreeWord) -> SignFilter {
    if !indivisible(&w.abelianize()) {
        return SignFilter::NotPrimitive;
    }
    let syl = cyclic_normal_form(w).0;
    let gens: HashSet<usize> = syl.iter().map(|s| s.0).collect();
    if gens.len() >= 2 {
        for g in gens {
            let pos = syl.iter().any(|&(h, e)| h == g && e > 0);
            let neg = syl.iter().any(|&(h, e)| h == g && e < 0);
            if pos && neg {
                return SignFilter::NotPrimitive;
            }
        }
    }
    SignFilter::PassesNecessaryCondition
}

/// The rank-2 Whitehead automorphisms that can change cyclic length:
/// one generator fixed, the other multiplied by it on one side.
pub fn whitehead_automorphisms() -> Vec<[FreeWord; 2]> {
    let t = |i: i32| FreeWord::from_letters(2, &[i]).expect("rank 2 letter");
    let mut out = Vec::new();
    for a in [1i32, -1, 2, -2] {
        let fixed = a.abs();
        let other = 3 - fixed;
        for right in [true, false] {
            let img = if right {
                FreeWord::from_letters(2, &[other, a])
            } else {
                FreeWord::from_letters(2, &[-a, other])
            }
            .expect("rank 2 letters");
            let mut pair = [t(1), t(2)];
            pair[other as usize - 1] = img;
            out.push(pair);
        }
    }
    out
}

/// Length-preserving automorphisms: swap and the two inversions.
pub fn permutation_automorphisms() -> Vec<[FreeWord; 2]> {
    let t = |i: i32| FreeWord::from_letters(2, &[i]).expect("rank 2 letter");
    vec![[t(2), t(1)], [t(-1), t(2)], [t(1), t(-2)]]
}

/// Whitehead's algorithm in rank 2. Peak reduction guarantees that a
/// cyclic word that is not of minimal length in its automorphism orbit has
/// a Whitehead image of strictly smaller cyclic length, and primitive
/// elements have minimal cyclic length 1.
pub fn is_primitive(w: &FreeWord) -> bool {
    assert_eq!(w.rank, 2, "primitivity is implemented in rank 2");
    let autos = whitehead_automorphisms();
    let mut cur = w.cyclic_reduction().0;
    loop {
        if cur.len() <= 1 {
            return cur.len() == 1;
        }
        let next = autos
            .iter()
            .map(|a| cur.substitute(a).cyclic_reduction().0)
            .filter(|c| c.len() < cur.len())
            .min_by_key(|c| c.len());
        match next {
            Some(c) => cur = c,
            None => return false,
        }
    }
}

fn nielsen_moves(u: &FreeWord, v: &FreeWord) -> Vec<(FreeWord, FreeWord)> {
    let vi = v.inverse();
    let ui = u.inverse();
    vec![
        (u.mul(v), v.clone()),
        (u.mul(&vi), v.clone()),
        (v.mul(u), v.clone()),
        (vi.mul(u), v.clone()),
        (u.clone(), v.mul(u)),
        (u.clone(), v.mul(&ui)),
        (u.clone(), u.mul(v)),
        (u.clone(), ui.mul(v)),
    ]
}

fn is_letter_basis(u: &FreeWord, v: &FreeWord) -> bool {
    u.len() == 1 && v.len() == 1 && u.letters[0].abs() != v.letters[0].abs()
}

/// Nielsen reduction of the pair. Strictly length-decreasing moves are
/// applied greedily; when none exists the finite plateau of
/// length-preserving moves is searched for a state that admits one.
pub fn is_base_pair(u: &FreeWord, v: &FreeWord) -> bool {
    assert!(u.rank == 2 && v.rank == 2, "base pairs are implemented in rank 2");
    let mut cur = (u.clone(), v.clone());
    loop {
        if cur.0.is_identity() || cur.1.is_identity() {
            return false;
        }
        if is_letter_basis(&cur.0, &cur.1) {
            return true;
        }
        let total = cur.0.len() + cur.1.len();
        match find_descent(&cur, total) {
            Some(next) => cur = next,
            None => return false,
        }
    }
}

fn find_descent(start: &(FreeWord, FreeWord), total: usize) -> Option<(FreeWord, FreeWord)> {
    const PLATEAU_LIMIT: usize = 20_000;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some((a, b)) = queue.pop_front() {
        let mut moves = nielsen_moves(&a, &b);
        moves.sort_by_key(|(x, y)| x.len() + y.len());
        for m in moves {
            let len = m.0.len() + m.1.len();
            if len < total {
                return Some(m);
            }
            if len == total && seen.len() < PLATEAU_LIMIT && seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    None
}
