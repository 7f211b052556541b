//! Diagrams of handcuff spines, links, knots and tangles.
//!
//! Arcs are oriented. At a crossing `under=x>y` the under-arc `x` ends and
//! `y` starts. At a vertex each incident end either leaves (`+`) or enters
//! (`-`) the vertex; ends are listed in clockwise order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::FreeWord;
use crate::presentation::GroupPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    K1,
    K2,
    Isthmus,
}

impl Component {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "K1" => Some(Component::K1),
            "K2" => Some(Component::K2),
            "isthmus" => Some(Component::Isthmus),
            _ => None,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Component::K1 => "K1",
            Component::K2 => "K2",
            Component::Isthmus => "isthmus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Handcuff,
    Link,
    Knot,
    Tangle,
}

impl Kind {
    fn as_str(&self) -> &'static str {
        match self {
            Kind::Handcuff => "handcuff",
            Kind::Link => "link",
            Kind::Knot => "knot",
            Kind::Tangle => "tangle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub name: String,
    pub comp: Component,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// An arc end at a vertex; `out` when the arc starts there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexEnd {
    pub arc: usize,
    pub out: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub ends: [VertexEnd; 3],
    /// Position in `ends` of the isthmus end.
    pub isthmus: usize,
}

/// A tangle endpoint; `start` when the arc starts on the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEnd {
    pub label: String,
    pub arc: usize,
    pub start: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineDiagram {
    pub kind: Kind,
    pub arcs: Vec<Arc>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
    pub boundary: Vec<BoundaryEnd>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MultiplyConsumed { arc: String, end: &'static str },
    Dangling { arc: String, end: &'static str },
    ComponentMismatch { crossing: usize },
    VertexCount { expected: usize, found: usize },
    VertexShape { vertex: usize, msg: String },
    IsthmusPath(String),
    WrongComponents(String),
    BoundaryOutsideTangle,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MultiplyConsumed { arc, end } => {
                write!(f, "arc-end multiply consumed: {end} of `{arc}`")
            }
            Violation::Dangling { arc, end } => write!(f, "arc-end not consumed: {end} of `{arc}`"),
            Violation::ComponentMismatch { crossing } => write!(
                f,
                "component labels change along the under-strand at crossing {}",
                crossing + 1
            ),
            Violation::VertexCount { expected, found } => {
                write!(f, "expected {expected} vertices, found {found}")
            }
            Violation::VertexShape { vertex, msg } => write!(f, "vertex {}: {msg}", vertex + 1),
            Violation::IsthmusPath(m) => write!(f, "isthmus does not form a path: {m}"),
            Violation::WrongComponents(m) => write!(f, "component labels: {m}"),
            Violation::BoundaryOutsideTangle => write!(f, "boundary ends outside a tangle"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("operation needs kind {expected}, got {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
    #[error("malformed vertex structure: {0}")]
    MalformedVertex(String),
}

impl SpineDiagram {
    pub fn new(kind: Kind) -> Self {
        SpineDiagram {
            kind,
            arcs: Vec::new(),
            crossings: Vec::new(),
            vertices: Vec::new(),
            boundary: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, name: impl Into<String>, comp: Component) -> usize {
        self.arcs.push(Arc {
            name: name.into(),
            comp,
        });
        self.arcs.len() - 1
    }

    pub fn arc_index(&self, name: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.name == name)
    }

    pub fn arc_named(&self, name: &str) -> usize {
        self.arc_index(name)
            .unwrap_or_else(|| panic!("no arc named `{name}`"))
    }

    pub fn boundary_index(&self, label: &str) -> Option<usize> {
        self.boundary.iter().position(|b| b.label == label)
    }

    pub fn isthmus_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.comp == Component::Isthmus).count()
    }

    /// Number of times each end of each arc is consumed: `(start, end)`.
    fn end_usage(&self) -> Vec<(usize, usize)> {
        let mut use_ = vec![(0usize, 0usize); self.arcs.len()];
        for c in &self.crossings {
            use_[c.under_in].1 += 1;
            use_[c.under_out].0 += 1;
        }
        for v in &self.vertices {
            for e in &v.ends {
                if e.out {
                    use_[e.arc].0 += 1;
                } else {
                    use_[e.arc].1 += 1;
                }
            }
        }
        for b in &self.boundary {
            if b.start {
                use_[b.arc].0 += 1;
            } else {
                use_[b.arc].1 += 1;
            }
        }
        use_
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("kind {}\n", self.kind.as_str());
        for a in &self.arcs {
            s.push_str(&format!("arc {} {}\n", a.name, a.comp.as_str()));
        }
        for c in &self.crossings {
            s.push_str(&format!(
                "X over={} under={}>{} sign={}\n",
                self.arcs[c.over].name,
                self.arcs[c.under_in].name,
                self.arcs[c.under_out].name,
                if c.sign > 0 { "+" } else { "-" }
            ));
        }
        for v in &self.vertices {
            let ends: Vec<String> = v
                .ends
                .iter()
                .map(|e| format!("{}{}", if e.out { "+" } else { "-" }, self.arcs[e.arc].name))
                .collect();
            s.push_str(&format!(
                "V ends={} isthmus={}\n",
                ends.join(","),
                self.arcs[v.ends[v.isthmus].arc].name
            ));
        }
        if !self.boundary.is_empty() {
            let b: Vec<String> = self
                .boundary
                .iter()
                .map(|b| {
                    format!(
                        "{}:{}{}",
                        b.label,
                        if b.start { "+" } else { "-" },
                        self.arcs[b.arc].name
                    )
                })
                .collect();
            s.push_str(&format!("boundary {}\n", b.join(",")));
        }
        s
    }
}

fn end_name(start: bool) -> &'static str {
    if start {
        "start"
    } else {
        "end"
    }
}

pub fn validate(d: &SpineDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    if d.kind != Kind::Tangle && !d.boundary.is_empty() {
        out.push(Violation::BoundaryOutsideTangle);
    }
    for (i, &(s, e)) in d.end_usage().iter().enumerate() {
        let name = &d.arcs[i].name;
        for (n, start) in [(s, true), (e, false)] {
            if n > 1 {
                out.push(Violation::MultiplyConsumed {
                    arc: name.clone(),
                    end: end_name(start),
                });
            }
        }
        if (s == 0) != (e == 0) {
            out.push(Violation::Dangling {
                arc: name.clone(),
                end: end_name(s == 0),
            });
        }
    }
    for (i, c) in d.crossings.iter().enumerate() {
        if d.arcs[c.under_in].comp != d.arcs[c.under_out].comp {
            out.push(Violation::ComponentMismatch { crossing: i });
        }
    }
    let comps: Vec<Component> = d.arcs.iter().map(|a| a.comp).collect();
    let has = |c: Component| comps.contains(&c);
    match d.kind {
        Kind::Handcuff => {
            if d.vertices.len() != 2 {
                out.push(Violation::VertexCount {
                    expected: 2,
                    found: d.vertices.len(),
                });
            } else {
                check_handcuff(d, &mut out);
            }
        }
        Kind::Link | Kind::Knot => {
            if !d.vertices.is_empty() {
                out.push(Violation::VertexCount {
                    expected: 0,
                    found: d.vertices.len(),
                });
            }
            if has(Component::Isthmus) {
                out.push(Violation::WrongComponents("isthmus arc outside a handcuff".into()));
            }
            if d.kind == Kind::Knot && has(Component::K2) {
                out.push(Violation::WrongComponents("a knot has only K1 arcs".into()));
            }
            if d.kind == Kind::Link && !(has(Component::K1) && has(Component::K2)) {
                out.push(Violation::WrongComponents("a link needs K1 and K2 arcs".into()));
            }
        }
        Kind::Tangle => {
            for (i, v) in d.vertices.iter().enumerate() {
                check_vertex(d, i, v, &mut out);
            }
        }
    }
    out
}

fn check_vertex(d: &SpineDiagram, i: usize, v: &Vertex, out: &mut Vec<Violation>) -> Option<Component> {
    if v.isthmus > 2 {
        out.push(Violation::VertexShape {
            vertex: i,
            msg: "isthmus position out of range".into(),
        });
        return None;
    }
    let isth = v.ends[v.isthmus];
    if d.arcs[isth.arc].comp != Component::Isthmus {
        out.push(Violation::VertexShape {
            vertex: i,
            msg: "designated isthmus end is not an isthmus arc".into(),
        });
    }
    let knot: Vec<VertexEnd> = (0..3).filter(|&k| k != v.isthmus).map(|k| v.ends[k]).collect();
    let (c0, c1) = (d.arcs[knot[0].arc].comp, d.arcs[knot[1].arc].comp);
    if c0 != c1 || c0 == Component::Isthmus {
        out.push(Violation::VertexShape {
            vertex: i,
            msg: "the two non-isthmus ends must lie on the same constituent knot".into(),
        });
        return None;
    }
    if knot[0].out == knot[1].out {
        out.push(Violation::VertexShape {
            vertex: i,
            msg: "one knot end must enter and one must leave".into(),
        });
    }
    Some(c0)
}

fn check_handcuff(d: &SpineDiagram, out: &mut Vec<Violation>) {
    let c0 = check_vertex(d, 0, &d.vertices[0], out);
    let c1 = check_vertex(d, 1, &d.vertices[1], out);
    if let (Some(a), Some(b)) = (c0, c1) {
        if a == b {
            out.push(Violation::WrongComponents(
                "both vertices lie on the same constituent knot".into(),
            ));
        }
    }
    let iv: Vec<VertexEnd> = d.vertices.iter().map(|v| v.ends[v.isthmus.min(2)]).collect();
    if iv[0].out == iv[1].out {
        out.push(Violation::IsthmusPath("isthmus must leave one vertex and enter the other".into()));
        return;
    }
    let (start, end) = if iv[0].out { (iv[0].arc, iv[1].arc) } else { (iv[1].arc, iv[0].arc) };
    let mut next: HashMap<usize, usize> = HashMap::new();
    for c in &d.crossings {
        if d.arcs[c.under_in].comp == Component::Isthmus {
            next.insert(c.under_in, c.under_out);
        }
    }
    let mut cur = start;
    let mut steps = 0;
    while cur != end {
        match next.get(&cur) {
            Some(&n) => cur = n,
            None => {
                out.push(Violation::IsthmusPath(format!(
                    "`{}` does not continue",
                    d.arcs[cur].name
                )));
                return;
            }
        }
        steps += 1;
        if steps > d.arcs.len() {
            out.push(Violation::IsthmusPath("cycle".into()));
            return;
        }
    }
    if steps + 1 != d.isthmus_arcs() {
        out.push(Violation::IsthmusPath("isthmus arcs off the vertex-to-vertex path".into()));
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// `(line, [(leaves, arc name, column)], isthmus arc name)`
type PendingVertex = (usize, Vec<(Option<bool>, String, usize)>, String);
/// `(line, [(arc name, column); over, under-in, under-out], sign)`
type PendingCrossing = (usize, [(String, usize); 3], i8);

pub fn parse_diagram(text: &str) -> Result<SpineDiagram, DiagramError> {
    let mut kind: Option<Kind> = None;
    let mut d = SpineDiagram::new(Kind::Knot);
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut pending_vertices: Vec<PendingVertex> = Vec::new();
    let mut pending_crossings: Vec<PendingCrossing> = Vec::new();
    let mut pending_boundary: Vec<(usize, usize, String, Option<bool>, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut pos = 0;
        for t in line.split_whitespace() {
            let at = line[pos..].find(t).map_or(pos, |p| pos + p);
            toks.push((t, at + 1));
            pos = at + t.len();
        }
        let Some(&(head, _)) = toks.first() else {
            continue;
        };
        let arg = |k: usize| {
            toks.get(k)
                .copied()
                .ok_or_else(|| syntax(line_no, line.len() + 1, format!("`{head}` needs more fields")))
        };
        match head {
            "kind" => {
                let (v, col) = arg(1)?;
                if kind.is_some() {
                    return Err(syntax(line_no, 1, "duplicate `kind` line"));
                }
                kind = Some(match v {
                    "handcuff" => Kind::Handcuff,
                    "link" => Kind::Link,
                    "knot" => Kind::Knot,
                    "tangle" => Kind::Tangle,
                    _ => return Err(syntax(line_no, col, format!("unknown kind `{v}`"))),
                });
            }
            "arc" => {
                let (name, ncol) = arg(1)?;
                let (comp, ccol) = arg(2)?;
                let comp = Component::parse(comp)
                    .ok_or_else(|| syntax(line_no, ccol, format!("unknown component `{comp}`")))?;
                if names.contains_key(name) {
                    return Err(syntax(line_no, ncol, format!("duplicate arc `{name}`")));
                }
                if name.contains([',', '>', '=', ':']) || name.starts_with(['+', '-']) {
                    return Err(syntax(line_no, ncol, format!("bad arc name `{name}`")));
                }
                names.insert(name.to_string(), d.add_arc(name, comp));
            }
            "X" => {
                let mut over = None;
                let mut under = None;
                let mut sign = None;
                for &(t, col) in &toks[1..] {
                    let (k, v) = t
                        .split_once('=')
                        .ok_or_else(|| syntax(line_no, col, format!("expected key=value, got `{t}`")))?;
                    let vcol = col + k.len() + 1;
                    match k {
                        "over" => over = Some((v.to_string(), vcol)),
                        "under" => {
                            let (a, b) = v
                                .split_once('>')
                                .ok_or_else(|| syntax(line_no, vcol, "expected under=x>y"))?;
                            under = Some(((a.to_string(), vcol), (b.to_string(), vcol + a.len() + 1)));
                        }
                        "sign" => {
                            sign = Some(match v {
                                "+" => 1,
                                "-" => -1,
                                _ => return Err(syntax(line_no, vcol, format!("bad sign `{v}`"))),
                            })
                        }
                        _ => return Err(syntax(line_no, col, format!("unknown key `{k}`"))),
                    }
                }
                let over = over.ok_or_else(|| syntax(line_no, 1, "crossing needs over="))?;
                let (ui, uo) = under.ok_or_else(|| syntax(line_no, 1, "crossing needs under="))?;
                let sign = sign.ok_or_else(|| syntax(line_no, 1, "crossing needs sign="))?;
                pending_crossings.push((line_no, [over, ui, uo], sign));
            }
            "V" => {
                let mut ends = None;
                let mut isth = None;
                for &(t, col) in &toks[1..] {
                    let (k, v) = t
                        .split_once('=')
                        .ok_or_else(|| syntax(line_no, col, format!("expected key=value, got `{t}`")))?;
                    let vcol = col + k.len() + 1;
                    match k {
                        "ends" => {
                            let mut list = Vec::new();
                            let mut c = vcol;
                            for e in v.split(',') {
                                let (dir, name) = match e.as_bytes().first() {
                                    Some(b'+') => (Some(true), &e[1..]),
                                    Some(b'-') => (Some(false), &e[1..]),
                                    _ => (None, e),
                                };
                                list.push((dir, name.to_string(), c));
                                c += e.len() + 1;
                            }
                            if list.len() != 3 {
                                return Err(syntax(line_no, vcol, "a vertex has exactly three ends"));
                            }
                            ends = Some((list, vcol));
                        }
                        "isthmus" => isth = Some(v.to_string()),
                        _ => return Err(syntax(line_no, col, format!("unknown key `{k}`"))),
                    }
                }
                let (ends, _) = ends.ok_or_else(|| syntax(line_no, 1, "vertex needs ends="))?;
                let isth = isth.ok_or_else(|| syntax(line_no, 1, "vertex needs isthmus="))?;
                pending_vertices.push((line_no, ends, isth));
            }
            "boundary" => {
                let (list, col) = arg(1)?;
                let mut c = col;
                for e in list.split(',') {
                    let (label, rest) = match e.split_once(':') {
                        Some((l, r)) => (l.to_string(), r),
                        None => ((d.boundary.len() + pending_boundary.len() + 1).to_string(), e),
                    };
                    let (dir, name) = match rest.as_bytes().first() {
                        Some(b'+') => (Some(true), &rest[1..]),
                        Some(b'-') => (Some(false), &rest[1..]),
                        _ => (None, rest),
                    };
                    pending_boundary.push((line_no, c, label, dir, name.to_string()));
                    c += e.len() + 1;
                }
            }
            _ => return Err(syntax(line_no, toks[0].1, format!("unknown directive `{head}`"))),
        }
    }
    d.kind = kind.ok_or_else(|| syntax(1, 1, "missing `kind` line"))?;
    let lookup = |name: &str, line: usize, col: usize| {
        names
            .get(name)
            .copied()
            .ok_or_else(|| syntax(line, col, format!("unknown arc `{name}`")))
    };
    for (line, [(o, oc), (a, ac), (b, bc)], sign) in pending_crossings {
        d.crossings.push(Crossing {
            over: lookup(&o, line, oc)?,
            under_in: lookup(&a, line, ac)?,
            under_out: lookup(&b, line, bc)?,
            sign,
        });
    }
    for (line, ends, isth) in pending_vertices {
        let default = [true, false, true];
        let mut vends = [VertexEnd { arc: 0, out: true }; 3];
        let mut ipos = None;
        for (k, (dir, name, col)) in ends.iter().enumerate() {
            vends[k] = VertexEnd {
                arc: lookup(name, line, *col)?,
                out: dir.unwrap_or(default[k]),
            };
            if *name == isth {
                ipos = Some(k);
            }
        }
        let isthmus = ipos.ok_or_else(|| syntax(line, 1, format!("isthmus `{isth}` is not among the ends")))?;
        d.vertices.push(Vertex {
            ends: vends,
            isthmus,
        });
    }
    let usage = d.end_usage();
    let mut claimed: HashMap<usize, usize> = HashMap::new();
    for (line, col, label, dir, name) in pending_boundary {
        let arc = lookup(&name, line, col)?;
        let start = match dir {
            Some(s) => s,
            None => {
                let (s, e) = usage[arc];
                let k = claimed.entry(arc).or_insert(0);
                *k += 1;
                match (s, e) {
                    (0, 0) => *k == 1,
                    (0, _) => true,
                    (_, 0) => false,
                    _ => return Err(syntax(line, col, format!("both ends of `{name}` are consumed"))),
                }
            }
        };
        d.boundary.push(BoundaryEnd { label, arc, start });
    }
    let v = validate(&d);
    if v.is_empty() {
        Ok(d)
    } else {
        Err(DiagramError::Invalid(v))
    }
}

/// Wirtinger presentation: one generator per arc, one relator per crossing
/// and per vertex, with the last relator dropped as redundant.
///
/// At a crossing with over-arc `o`, under-arcs `x > y` and sign `ε`,
/// `y = o^ε x o^-ε`; the relator is `o x o^-1 y^-1` for `ε = +1` and
/// `o y o^-1 x^-1` for `ε = -1`. A vertex contributes the clockwise
/// product of its generators, inverted on entering ends.
pub fn wirtinger(d: &SpineDiagram) -> Result<GroupPresentation, DiagramError> {
    if d.kind == Kind::Tangle {
        return Err(DiagramError::KindMismatch {
            expected: "handcuff, link or knot",
            found: "tangle",
        });
    }
    let rels = wirtinger_relators(d);
    let n = d.arcs.len();
    let mut rels = rels;
    rels.pop();
    let names = d.arcs.iter().map(|a| a.name.clone()).collect();
    Ok(GroupPresentation::with_names(n, rels, names))
}

/// All relators before the redundant one is dropped.
pub fn wirtinger_relators(d: &SpineDiagram) -> Vec<FreeWord> {
    let n = d.arcs.len();
    let g = |i: usize, e: i32| (i as i32 + 1) * e;
    let mut rels = Vec::new();
    for c in &d.crossings {
        let (o, x, y) = (c.over, c.under_in, c.under_out);
        let raw = if c.sign > 0 {
            [g(o, 1), g(x, 1), g(o, -1), g(y, -1)]
        } else {
            [g(o, 1), g(y, 1), g(o, -1), g(x, -1)]
        };
        rels.push(FreeWord::from_letters(n, &raw).expect("arc indices in range"));
    }
    for v in &d.vertices {
        let raw: Vec<i32> = v
            .ends
            .iter()
            .map(|e| g(e.arc, if e.out { 1 } else { -1 }))
            .collect();
        rels.push(FreeWord::from_letters(n, &raw).expect("arc indices in range"));
    }
    rels
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleAssignment {
    pub k: u32,
    pub z1: u32,
    pub z2: u32,
}

impl CycleAssignment {
    pub fn value(&self, c: Component) -> u32 {
        match c {
            Component::K1 => self.z1,
            Component::K2 => self.z2,
            Component::Isthmus => 0,
        }
    }
}

pub fn enumerate_cycles(d: &SpineDiagram, k: u32) -> Result<Vec<CycleAssignment>, DiagramError> {
    if !matches!(d.kind, Kind::Handcuff | Kind::Link) {
        return Err(DiagramError::KindMismatch {
            expected: "handcuff or link",
            found: d.kind.as_str(),
        });
    }
    Ok((0..k)
        .flat_map(|z1| (0..k).map(move |z2| CycleAssignment { k, z1, z2 }))
        .collect())
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra.max(rb)] = ra.min(rb);
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// Constituent link: removes the isthmus, joins the two knot arcs at each
/// vertex, drops crossings under the isthmus and joins the under-arcs of
/// crossings over it.
pub fn delete_isthmus(d: &SpineDiagram) -> Result<SpineDiagram, DiagramError> {
    if d.kind != Kind::Handcuff {
        return Err(DiagramError::KindMismatch {
            expected: "handcuff",
            found: d.kind.as_str(),
        });
    }
    let n = d.arcs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, v) in d.vertices.iter().enumerate() {
        let knot: Vec<usize> = (0..3).filter(|&k| k != v.isthmus).map(|k| v.ends[k].arc).collect();
        if knot.len() != 2 || d.arcs[v.ends[v.isthmus].arc].comp != Component::Isthmus {
            return Err(DiagramError::MalformedVertex(format!("vertex {}", i + 1)));
        }
        union(&mut parent, knot[0], knot[1]);
    }
    let isth = |a: usize| d.arcs[a].comp == Component::Isthmus;
    for c in &d.crossings {
        if isth(c.over) && !isth(c.under_in) {
            union(&mut parent, c.under_in, c.under_out);
        }
    }
    let mut out = SpineDiagram::new(Kind::Link);
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        if isth(i) {
            continue;
        }
        let r = find(&mut parent, i);
        map.entry(r).or_insert_with(|| out.add_arc(d.arcs[r].name.clone(), d.arcs[r].comp));
    }
    for c in &d.crossings {
        if isth(c.over) || isth(c.under_in) {
            continue;
        }
        let m = |a: usize, p: &mut [usize]| map[&find(p, a)];
        out.crossings.push(Crossing {
            over: m(c.over, &mut parent),
            under_in: m(c.under_in, &mut parent),
            under_out: m(c.under_out, &mut parent),
            sign: c.sign,
        });
    }
    let v = validate(&out);
    if v.is_empty() {
        Ok(out)
    } else {
        Err(DiagramError::Invalid(v))
    }
}
