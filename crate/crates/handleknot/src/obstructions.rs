//! Knotting-level verdicts from computed invariants, closed under the
//! implications between levels.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{validate, wirtinger, DiagramError, Kind, SpineDiagram};
use crate::freegroup::FreeWord;
use crate::ideals::{alexander_report, AlexanderReport, IdealError, Principal, Symmetric};
use crate::patterns::{
    classify_handlebody_pattern, isthmus_word_test, pattern_verdicts, rigid_obstruction,
    HandlebodyPattern, PatternTag, PatternVerdict,
};
use crate::quandle::{phi_p, PhiPolynomial, QuandleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    #[serde(rename = "(1)_S")]
    S1,
    #[serde(rename = "(2)_S")]
    S2,
    #[serde(rename = "(3)_S")]
    S3,
    #[serde(rename = "(4)_S")]
    S4,
    #[serde(rename = "(1)_L")]
    L1,
    #[serde(rename = "(2)_L")]
    L2,
    #[serde(rename = "(3)_L")]
    L3,
    #[serde(rename = "(4)_L")]
    L4,
}

impl Level {
    pub const ALL: [Level; 8] = [
        Level::S1,
        Level::S2,
        Level::S3,
        Level::S4,
        Level::L1,
        Level::L2,
        Level::L3,
        Level::L4,
    ];

    pub fn k(self) -> u8 {
        match self {
            Level::S1 | Level::L1 => 1,
            Level::S2 | Level::L2 => 2,
            Level::S3 | Level::L3 => 3,
            Level::S4 | Level::L4 => 4,
        }
    }

    pub fn is_link(self) -> bool {
        matches!(self, Level::L1 | Level::L2 | Level::L3 | Level::L4)
    }

    fn from_parts(k: u8, link: bool) -> Level {
        let i = (k - 1) as usize + if link { 4 } else { 0 };
        Level::ALL[i]
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_{}", self.k(), if self.is_link() { 'L' } else { 'S' })
    }
}

/// Direct implications: being knotted at `from` forces knotting at `to`.
pub fn implication_edges() -> Vec<(Level, Level)> {
    let mut e = Vec::new();
    for k in 1..4 {
        e.push((Level::from_parts(k + 1, false), Level::from_parts(k, false)));
        e.push((Level::from_parts(k + 1, true), Level::from_parts(k, true)));
    }
    for k in 1..=4 {
        e.push((Level::from_parts(k, true), Level::from_parts(k, false)));
    }
    e.push((Level::S4, Level::L4));
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Knotted,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub level: Level,
    pub invariant: String,
    pub value: String,
    pub citation: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelVerdict {
    pub level: Level,
    pub verdict: Verdict,
    /// From a level with direct evidence down to this one.
    pub chain: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRecord {
    pub p: u64,
    pub phi: PhiPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnottingReport {
    pub levels: Vec<LevelVerdict>,
    pub evidence: Vec<Evidence>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quandle: Vec<PhiRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<AlexanderReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub patterns: Vec<PatternVerdict>,
}

impl KnottingReport {
    pub fn verdict(&self, l: Level) -> Verdict {
        self.levels
            .iter()
            .find(|v| v.level == l)
            .map_or(Verdict::Unknown, |v| v.verdict)
    }

    pub fn knotted(&self, l: Level) -> bool {
        self.verdict(l) == Verdict::Knotted
    }

    pub fn knotted_levels(&self) -> Vec<Level> {
        Level::ALL.into_iter().filter(|&l| self.knotted(l)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.quandle {
            s += &format!("Phi_{} = {}\n", r.p, r.phi);
        }
        if let Some(a) = &self.alexander {
            s += &format!("E2 = {}\n", a.e2);
            s += &format!("principal = {}\n", principal_text(&a.principal));
            s += &format!("symmetric = {:?}\n", a.symmetric);
        }
        for v in &self.patterns {
            s += &format!("pattern {}: {} ({})\n", v.test, v.tag, v.evidence);
        }
        for v in &self.levels {
            match v.verdict {
                Verdict::Knotted => {
                    let chain: Vec<String> = v.chain.iter().map(|l| l.to_string()).collect();
                    s += &format!("{}: Knotted via {}\n", v.level, chain.join(" -> "));
                }
                Verdict::Unknown => s += &format!("{}: Unknown\n", v.level),
            }
        }
        for e in &self.evidence {
            let cond = if e.conditional { " [conditional on realization]" } else { "" };
            s += &format!("evidence {}: {} = {} ({}){}\n", e.level, e.invariant, e.value, e.citation, cond);
        }
        for w in &self.warnings {
            s += &format!("warning: {w}\n");
        }
        s
    }
}

pub fn principal_text(p: &Principal) -> String {
    match p {
        Principal::Yes(g) => format!("Yes({g})"),
        Principal::No(q) => format!("No({q})"),
        Principal::Unknown => "Unknown".into(),
    }
}

fn multiset_eq(mut a: [u32; 4], b: &[u32; 4]) -> bool {
    a.sort_unstable();
    a == *b
}

/// Some `h1, h2 >= 0` give exponents `{0, h1, h2, h1+h2}`.
pub fn split_shape(phi: &PhiPolynomial) -> bool {
    let e = phi.exps;
    e.iter()
        .flat_map(|&h1| e.iter().map(move |&h2| (h1, h2)))
        .any(|(h1, h2)| multiset_eq([0, h1, h2, h1 + h2], &e))
}

/// Some `h1 <= h2 <= h3` with `h3` in `{h1+h2, h1+h2+1}` give exponents
/// `{0, h1, h2, h3}`.
pub fn boundary_link_shape(phi: &PhiPolynomial) -> bool {
    let e = phi.exps;
    e.iter()
        .flat_map(|&h1| e.iter().map(move |&h2| (h1, h2)))
        .filter(|(h1, h2)| h1 <= h2)
        .any(|(h1, h2)| {
            [h1 + h2, h1 + h2 + 1]
                .into_iter()
                .any(|h3| multiset_eq([0, h1, h2, h3], &e))
        })
}

pub fn quandle_shape_tests(phis: &[(u64, PhiPolynomial)]) -> Vec<Evidence> {
    let mut out = Vec::new();
    for (p, phi) in phis {
        let ev = |level, citation: &str| Evidence {
            level,
            invariant: format!("Phi_{p}"),
            value: phi.to_string(),
            citation: citation.into(),
            conditional: false,
        };
        if !split_shape(phi) {
            out.push(ev(Level::S2, "phi-split-shape"));
        }
        if !boundary_link_shape(phi) {
            out.push(ev(Level::L2, "phi-boundary-link-shape"));
        }
        if phi.exps != [0, 0, 0, 0] && phi.exps != [0, 0, 0, 1] {
            out.push(ev(Level::L1, "phi-trivial-link-values"));
        }
    }
    out
}

/// Evidence plus warnings from an Alexander report.
pub fn alexander_tests(r: &AlexanderReport) -> (Vec<Evidence>, Vec<String>) {
    if !r.warnings.is_empty() {
        return (Vec::new(), r.warnings.clone());
    }
    let mut out = Vec::new();
    match &r.principal {
        Principal::No(p) => out.push(Evidence {
            level: Level::L4,
            invariant: "E2 principality".into(),
            value: format!("No({p})"),
            citation: "alexander-nonprincipal".into(),
            conditional: false,
        }),
        Principal::Yes(g) if r.symmetric == Symmetric::No => out.push(Evidence {
            level: Level::S3,
            invariant: "E2 symmetry".into(),
            value: format!("generator {g} not symmetric"),
            citation: "alexander-asymmetric".into(),
            conditional: false,
        }),
        _ => {}
    }
    (out, Vec::new())
}

/// Evidence from a pattern the caller asserts is realized by the
/// handlebody under test.
pub fn pattern_tests(h: &HandlebodyPattern) -> Vec<Evidence> {
    let mut out = Vec::new();
    let ev = |level, invariant: &str, value: String, citation: &str| Evidence {
        level,
        invariant: invariant.into(),
        value,
        citation: citation.into(),
        conditional: true,
    };
    if classify_handlebody_pattern(h) == PatternTag::NonTrivial {
        out.push(ev(
            Level::S3,
            "handlebody pattern",
            format!("(w0, w1, w2) = ({}, {}, {}) non-trivial", h.w0, h.link.w1(), h.link.w2()),
            "pattern-nontrivial",
        ));
    }
    let base = h.link.w1() == &FreeWord::generator(2, 1) && h.link.w2() == &FreeWord::generator(2, 2);
    if base && !isthmus_word_test(&h.w0) {
        out.push(ev(
            Level::S3,
            "isthmus word",
            format!("{} is not t1^n t2^m", h.w0),
            "isthmus-word",
        ));
    }
    if rigid_obstruction(h.link.w1(), h.link.w2()) == PatternTag::Obstructed {
        out.push(ev(
            Level::L3,
            "rigid pattern",
            format!("(w1, w2) = ({}, {})", h.link.w1(), h.link.w2()),
            "pattern-rigid",
        ));
    }
    out
}

pub fn combine_report(evidence: Vec<Evidence>, warnings: Vec<String>) -> KnottingReport {
    let edges = implication_edges();
    let mut pred: BTreeMap<Level, Option<Level>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for e in &evidence {
        if pred.insert(e.level, None).is_none() {
            queue.push_back(e.level);
        }
    }
    let direct: Vec<Level> = pred.keys().copied().collect();
    for l in direct {
        pred.insert(l, None);
    }
    while let Some(l) = queue.pop_front() {
        for &(a, b) in &edges {
            if a == l && !pred.contains_key(&b) {
                pred.insert(b, Some(a));
                queue.push_back(b);
            }
        }
    }
    let levels = Level::ALL
        .into_iter()
        .map(|level| match pred.get(&level) {
            None => LevelVerdict {
                level,
                verdict: Verdict::Unknown,
                chain: Vec::new(),
            },
            Some(_) => {
                let mut chain = vec![level];
                let mut cur = level;
                while let Some(Some(p)) = pred.get(&cur) {
                    chain.push(*p);
                    cur = *p;
                }
                chain.reverse();
                LevelVerdict {
                    level,
                    verdict: Verdict::Knotted,
                    chain,
                }
            }
        })
        .collect();
    KnottingReport {
        levels,
        evidence,
        warnings,
        quandle: Vec::new(),
        alexander: None,
        patterns: Vec::new(),
    }
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("{0} is not an odd prime")]
    Prime(u64),
}

/// Runs every applicable engine on a diagram (and optionally a pattern
/// asserted to be realized by it) and closes the evidence.
pub fn analyze(
    d: &SpineDiagram,
    primes: &[u64],
    pattern: Option<&HandlebodyPattern>,
) -> Result<KnottingReport, AnalysisError> {
    let mut warnings: Vec<String> = validate(d).iter().map(|v| v.to_string()).collect();
    let mut evidence = Vec::new();
    let mut phis = Vec::new();
    let mut alex = None;
    if d.kind == Kind::Handcuff && warnings.is_empty() {
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        for p in ps {
            if p % 2 == 0 || !crate::ideals::is_prime(p) {
                return Err(AnalysisError::Prime(p));
            }
            phis.push((p, phi_p(d, p)?));
        }
        evidence.extend(quandle_shape_tests(&phis));
        let r = alexander_report(&wirtinger(d)?)?;
        let (ev, w) = alexander_tests(&r);
        evidence.extend(ev);
        warnings.extend(w);
        alex = Some(r);
    } else if d.kind != Kind::Handcuff {
        warnings.push(format!("{:?} diagram: only handcuff spines are analyzed", d.kind));
    }
    let mut pats = Vec::new();
    if let Some(h) = pattern {
        evidence.extend(pattern_tests(h));
        pats = pattern_verdicts(h);
    }
    let mut report = combine_report(evidence, warnings);
    report.quandle = phis.into_iter().map(|(p, phi)| PhiRecord { p, phi }).collect();
    report.alexander = alex;
    report.patterns = pats;
    Ok(report)
}
