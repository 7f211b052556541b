//! Link patterns and handlebody patterns in F(t1, t2).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{is_base_pair, is_primitive, parse_word, FreeWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern words must have rank 2")]
    Rank,
    #[error("abelianization of (w1, w2) has determinant {0}, expected ±1")]
    Determinant(i64),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {err}")]
    Word { line: usize, err: WordError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPattern {
    w1: FreeWord,
    w2: FreeWord,
}

impl LinkPattern {
    pub fn new(w1: FreeWord, w2: FreeWord) -> Result<Self, PatternError> {
        if w1.rank() != 2 || w2.rank() != 2 {
            return Err(PatternError::Rank);
        }
        let (a, b) = (w1.abelianize(), w2.abelianize());
        let det = a[0] * b[1] - a[1] * b[0];
        if det.abs() != 1 {
            return Err(PatternError::Determinant(det));
        }
        Ok(LinkPattern { w1, w2 })
    }

    pub fn w1(&self) -> &FreeWord {
        &self.w1
    }

    pub fn w2(&self) -> &FreeWord {
        &self.w2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlebodyPattern {
    pub w0: FreeWord,
    pub link: LinkPattern,
}

impl HandlebodyPattern {
    pub fn new(w0: FreeWord, w1: FreeWord, w2: FreeWord) -> Result<Self, PatternError> {
        if w0.rank() != 2 {
            return Err(PatternError::Rank);
        }
        Ok(HandlebodyPattern {
            w0,
            link: LinkPattern::new(w1, w2)?,
        })
    }

    pub fn to_text(&self) -> String {
        format!("w0: {}\nw1: {}\nw2: {}\n", self.w0, self.link.w1, self.link.w2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternTag {
    Trivial,
    NonTrivial,
    Obstructed,
    Inconclusive,
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternVerdict {
    pub test: String,
    pub tag: PatternTag,
    pub evidence: String,
}

pub fn classify_link_pattern(p: &LinkPattern) -> PatternTag {
    if is_primitive(&p.w1) && is_primitive(&p.w2) {
        PatternTag::Trivial
    } else {
        PatternTag::NonTrivial
    }
}

pub fn classify_handlebody_pattern(h: &HandlebodyPattern) -> PatternTag {
    let conj = h.w0.mul(&h.link.w2).mul(&h.w0.inverse());
    if is_base_pair(&h.link.w1, &conj) {
        PatternTag::Trivial
    } else {
        PatternTag::NonTrivial
    }
}

/// True iff the reduced form of `w0` is `t1^n t2^m`.
pub fn isthmus_word_test(w0: &FreeWord) -> bool {
    let l = w0.letters();
    let split = l.iter().position(|x| x.abs() != 1).unwrap_or(l.len());
    l[split..].iter().all(|x| x.abs() == 2)
}

/// Reduced form `g^k z g^-h` with `k, h >= 1` and `z` non-empty.
fn sandwiched(w: &FreeWord, g: i32) -> bool {
    let l = w.letters();
    let k = l.iter().take_while(|&&x| x == g).count();
    let h = l.iter().rev().take_while(|&&x| x == -g).count();
    k >= 1 && h >= 1 && k + h < l.len()
}

fn power_of(w: &FreeWord, g: i32) -> bool {
    w.letters().iter().all(|x| x.abs() == g)
}

fn conj_power(w: &FreeWord, g: usize, n: i64) -> FreeWord {
    let t = FreeWord::generator(2, g).pow(n);
    t.mul(w).mul(&t.inverse())
}

fn rigid_shape(w1: &FreeWord, w2: &FreeWord, g1: usize, g2: usize) -> Option<i64> {
    if power_of(w1, g1 as i32) {
        return None;
    }
    let bound = (w1.len() + w2.len() + 1) as i64;
    (0..=bound).find(|&n| {
        let a = conj_power(w1, g1, n);
        let b = conj_power(w2, g2, n);
        sandwiched(&a, g1 as i32) && (power_of(&b, g2 as i32) || sandwiched(&b, g2 as i32))
    })
}

/// The no-cancellation shape test: after conjugating `w1` by a power of
/// `t1` and `w2` by a power of `t2` (or with the roles swapped), both are
/// sandwiched between opposite powers of their own generator, and the
/// link pattern is non-trivial.
pub fn rigid_obstruction(w1: &FreeWord, w2: &FreeWord) -> PatternTag {
    let shaped = rigid_shape(w1, w2, 1, 2).is_some() || rigid_shape(w2, w1, 2, 1).is_some();
    if !shaped {
        return PatternTag::Inconclusive;
    }
    let nontrivial = !(is_primitive(w1) && is_primitive(w2));
    if nontrivial {
        PatternTag::Obstructed
    } else {
        PatternTag::Inconclusive
    }
}

/// All verdicts for a handlebody pattern, in a fixed order.
pub fn pattern_verdicts(h: &HandlebodyPattern) -> Vec<PatternVerdict> {
    let (w1, w2) = (&h.link.w1, &h.link.w2);
    let v = |test: &str, tag, evidence: String| PatternVerdict {
        test: test.into(),
        tag,
        evidence,
    };
    vec![
        v(
            "link_pattern",
            classify_link_pattern(&h.link),
            format!("primitive(w1)={}, primitive(w2)={}", is_primitive(w1), is_primitive(w2)),
        ),
        v(
            "handlebody_pattern",
            classify_handlebody_pattern(h),
            format!("base pair (w1, w0 w2 w0^-1) with w0 = {}", h.w0),
        ),
        v(
            "isthmus_word",
            if isthmus_word_test(&h.w0) { PatternTag::Trivial } else { PatternTag::NonTrivial },
            format!("w0 = {}", h.w0),
        ),
        v("rigid", rigid_obstruction(w1, w2), format!("w1 = {w1}, w2 = {w2}")),
    ]
}

/// Parses `w0: <word>`, `w1: <word>`, `w2: <word>` lines (`=` also
/// accepted, `#` starts a comment). `w0` defaults to the identity.
pub fn parse_pattern(text: &str) -> Result<HandlebodyPattern, PatternError> {
    let mut words: [Option<FreeWord>; 3] = [None, None, None];
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, word)) = body.split_once([':', '=']) else {
            return Err(PatternError::Syntax {
                line,
                msg: "expected `wN: <word>`".into(),
            });
        };
        let slot = match key.trim() {
            "w0" => 0,
            "w1" => 1,
            "w2" => 2,
            k => {
                return Err(PatternError::Syntax {
                    line,
                    msg: format!("unknown key `{k}`"),
                })
            }
        };
        if words[slot].is_some() {
            return Err(PatternError::Syntax {
                line,
                msg: format!("duplicate key `w{slot}`"),
            });
        }
        let w = parse_word(word.trim(), 2).map_err(|err| PatternError::Word { line, err })?;
        words[slot] = Some(w);
    }
    let [w0, w1, w2] = words;
    let missing = |k: &str| PatternError::Syntax {
        line: last,
        msg: format!("missing `{k}`"),
    };
    let w1 = w1.ok_or_else(|| missing("w1"))?;
    let w2 = w2.ok_or_else(|| missing("w2"))?;
    HandlebodyPattern::new(w0.unwrap_or_else(|| FreeWord::identity(2)), w1, w2)
}
