//! Builders for the worked examples: the tangles E(q), O(q), Ō(q) and B,
//! the spine families Γ₁–Γ₄, the Lambert diagrams, the Kinoshita
//! presentation and the Cochran–Orr pattern.

pub mod sketch;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Component, Crossing, Kind, SpineDiagram, Vertex, VertexEnd};
use crate::freegroup::{parse_word, FreeWord};
use crate::ideals::is_prime;
use crate::patterns::HandlebodyPattern;
use crate::presentation::GroupPresentation;
use sketch::{compile, walk_line, End, Path, Sketch, Strand};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("sketch error: {0}")]
    Sketch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangleName {
    E,
    O,
    Obar,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Gamma1,
    Gamma2,
    Gamma3,
    Gamma4,
}

impl FromStr for TangleName {
    type Err = FixtureError;
    fn from_str(s: &str) -> Result<Self, FixtureError> {
        match s {
            "E" => Ok(TangleName::E),
            "O" => Ok(TangleName::O),
            "Obar" => Ok(TangleName::Obar),
            "B" => Ok(TangleName::B),
            _ => Err(FixtureError::Unknown(s.into())),
        }
    }
}

impl FromStr for Family {
    type Err = FixtureError;
    fn from_str(s: &str) -> Result<Self, FixtureError> {
        match s {
            "Gamma1" => Ok(Family::Gamma1),
            "Gamma2" => Ok(Family::Gamma2),
            "Gamma3" => Ok(Family::Gamma3),
            "Gamma4" => Ok(Family::Gamma4),
            _ => Err(FixtureError::Unknown(s.into())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gamma1 => "Gamma1",
            Family::Gamma2 => "Gamma2",
            Family::Gamma3 => "Gamma3",
            Family::Gamma4 => "Gamma4",
        };
        f.write_str(s)
    }
}

fn odd(q: usize) -> Result<(), FixtureError> {
    if q % 2 == 1 {
        Ok(())
    } else {
        Err(FixtureError::Parameter(format!("{q} is not odd")))
    }
}

fn odd_prime(p: usize) -> Result<(), FixtureError> {
    if p % 2 == 1 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(FixtureError::Parameter(format!("{p} is not an odd prime")))
    }
}

fn build(kind: Kind, s: &Sketch) -> Result<SpineDiagram, FixtureError> {
    compile(kind, s).map_err(FixtureError::Sketch)
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// The isthmus of E(q): from (0,1) on the top line, winding around both
/// lines, to (q,0) on the bottom line. Passes under on the way down and
/// over on the way up.
fn e_isthmus(q: usize) -> Path {
    let mut p = Path::at(0.0, 1.0).to(0.0, -0.5, -1.0);
    for l in 1..=(q - 1) / 2 {
        let x = (2 * l - 1) as f64;
        p = p
            .to(x, -0.5, 0.0)
            .to(x, 1.5, 1.0)
            .to(x + 1.0, 1.5, 0.0)
            .to(x + 1.0, -0.5, -1.0);
    }
    p.to(q as f64, -0.5, 0.0).to(q as f64, 0.0, 0.0)
}

fn e_sketch(q: usize) -> Sketch {
    let qf = q as f64;
    Sketch {
        vertices: vec![[0.0, 1.0], [qf, 0.0]],
        strands: vec![
            Strand::open(
                "t",
                Component::K1,
                Path::at(-1.0, 1.0).to(0.0, 1.0, 0.0),
                End::Boundary("a".into()),
                End::Vertex(0),
            ),
            Strand::open(
                "u",
                Component::K1,
                Path::at(0.0, 1.0).to(qf + 1.0, 1.0, 0.0),
                End::Vertex(0),
                End::Boundary("a'".into()),
            ),
            Strand::open(
                "v",
                Component::K2,
                Path::at(-1.0, 0.0).to(qf, 0.0, 0.0),
                End::Boundary("b".into()),
                End::Vertex(1),
            ),
            Strand::open(
                "w",
                Component::K2,
                Path::at(qf, 0.0).to(qf + 1.0, 0.0, 0.0),
                End::Vertex(1),
                End::Boundary("b'".into()),
            ),
            Strand::open("i", Component::Isthmus, e_isthmus(q), End::Vertex(0), End::Vertex(1)),
        ],
        boundary_order: labels(&["a", "a'", "b", "b'"]),
    }
}

/// A positive curl on a strand heading east along y, reached at height `z`.
fn kink(p: Path, x0: f64, y: f64, z: f64) -> Path {
    p.to(x0, y, z)
        .to(x0 + 0.6, y, -2.0)
        .to(x0 + 0.6, y + 0.6, -2.0)
        .to(x0 + 0.3, y + 0.6, -2.0)
        .to(x0 + 0.3, y - 0.3, -1.5)
        .to(x0 + 1.2, y - 0.3, -2.0)
        .to(x0 + 1.2, y, -2.0)
}

struct OCore {
    /// From `a` (top left) to `b` (bottom left).
    left: Path,
    /// From `b'` (bottom right) to `a'` (top right).
    right: Path,
    xa: f64,
    xr: f64,
    xt: f64,
}

/// The two strands of O(q), q = 2k-1. The pair of strands runs down
/// under both lines at x = 4j, 4j+0.5 and back up over both lines at
/// x = 4j+1.5, 4j+2. With `kinks`, each strand gets one positive curl so
/// that each band of the double has zero net shift.
fn o_core(q: usize, kinks: bool) -> OCore {
    let k = q.div_ceil(2);
    let xa = if kinks { -2.5 } else { -1.0 };
    let xr = 4.0 * k as f64;
    let xt = if kinks { xr + 2.0 } else { xr };
    let mut left = Path::at(xa, 0.8);
    if kinks {
        left = kink(left, -2.2, 0.8, -2.0);
    }
    left = left.to(0.5, 0.8, -2.0);
    for j in 0..k {
        let x = 4.0 * j as f64;
        if j + 1 == k {
            left = left.to(x + 0.5, 0.0, -1.0);
        } else {
            left = left
                .to(x + 0.5, -0.75, -1.0)
                .to(x + 1.5, -0.75, 0.0)
                .to(x + 1.5, 2.0, 1.0)
                .to(x + 4.5, 2.0, 0.0);
        }
    }
    left = left.to(xa, 0.0, 0.0);
    let xc = 4.0 * (k - 1) as f64;
    let mut right = Path::at(xr, -1.5).to(xc, -1.5, 0.0);
    for j in (0..k).rev() {
        let x = 4.0 * j as f64;
        if j == 0 {
            right = right.to(0.0, 1.0, -1.0);
        } else {
            right = right
                .to(x, 1.75, -1.0)
                .to(x - 2.0, 1.75, 0.0)
                .to(x - 2.0, -1.0, 1.0)
                .to(x - 4.0, -1.0, 0.0);
        }
    }
    if kinks {
        right = kink(right, xr + 0.4, 1.0, 0.0);
    }
    right = right.to(xt, 1.0, 0.0);
    OCore { left, right, xa, xr, xt }
}

/// O(q) closed into a knot over the top and under the bottom.
fn o_knot(q: usize, kinks: bool) -> Path {
    let c = o_core(q, kinks);
    let bottom = Path::at(c.xa, 0.0)
        .to(c.xa - 0.5, 0.0, 0.0)
        .to(c.xa - 0.5, -3.0, 0.0)
        .to(c.xr + 0.5, -3.0, 0.0)
        .to(c.xr + 0.5, -1.5, 0.0)
        .to(c.xr, -1.5, 0.0);
    let top = Path::at(c.xt, 1.0)
        .to(c.xt + 1.0, 1.0, 0.0)
        .to(c.xt + 1.0, 3.0, 0.0)
        .to(c.xa - 1.0, 3.0, 0.0)
        .to(c.xa - 1.0, 0.8, 0.0)
        .to(c.xa, 0.8, 0.0);
    c.left.extend(&bottom).extend(&c.right).extend(&top)
}

const BAND: f64 = 0.05;

fn o_sketch(q: usize) -> Sketch {
    let c = o_core(q, false);
    Sketch {
        vertices: Vec::new(),
        strands: vec![
            Strand::open("l", Component::K1, c.left, End::Boundary("a".into()), End::Boundary("b".into())),
            Strand::open("r", Component::K1, c.right, End::Boundary("b'".into()), End::Boundary("a'".into())),
        ],
        boundary_order: labels(&["a", "b", "a'", "b'"]),
    }
}

/// Doubled O(q): K1 runs on the right of each band, K2 on the left. The
/// top band ends carry labels `a` (left) and `b` (right), the bottom band
/// ends `d` (left) and `c` (right).
fn obar_sketch(q: usize) -> Sketch {
    let c = o_core(q, true);
    let mut strands = Vec::new();
    for (name, path, top_first) in [("l", &c.left, true), ("r", &c.right, false)] {
        for (side, comp, d) in [("L", Component::K2, BAND), ("R", Component::K1, -BAND)] {
            let (top, bottom) = if comp == Component::K2 { ("a", "d") } else { ("b", "c") };
            let (s, e) = if top_first { (top, bottom) } else { (bottom, top) };
            strands.push(Strand::open(
                &format!("{name}{side}"),
                comp,
                path.offset(d),
                End::Boundary(s.into()),
                End::Boundary(e.into()),
            ));
        }
    }
    Sketch {
        vertices: Vec::new(),
        strands,
        boundary_order: labels(&["a", "b", "c", "d"]),
    }
}

const HALF_WIDTH: f64 = 0.15;

/// Bands of one plumbing unit at offset `x`: two bands on the top disk
/// (feet on y = 10) and two on the bottom disk (feet on y = 0).
fn b_unit(x: f64) -> ([Path; 2], [Path; 2]) {
    let alpha = Path::at(x + 1.0, 10.0)
        .to(x + 1.0, 4.0, 1.0)
        .to(x + 5.0, 4.0, -1.0)
        .to(x + 5.0, 10.0, 1.0);
    let beta = Path::at(x + 3.0, 10.0)
        .to(x + 3.0, 7.0, 0.0)
        .to(x + 7.0, 7.0, -1.0)
        .to(x + 7.0, 10.0, 1.0);
    let gamma = Path::at(x, 0.0)
        .to(x, 5.0, 0.0)
        .to(x + 2.0, 5.0, 0.0)
        .to(x + 2.0, 2.0, 0.0)
        .to(x + 6.5, 2.0, 1.0)
        .to(x + 6.5, 0.0, 0.0);
    let eps = Path::at(x + 4.0, 0.0)
        .to(x + 4.0, 1.0, 0.0)
        .to(x + 6.0, 1.0, 0.0)
        .to(x + 6.0, 8.0, 0.0)
        .to(x + 8.0, 8.0, 0.0)
        .to(x + 8.0, 0.0, 0.0);
    ([alpha, beta], [gamma, eps])
}

fn b_sketch() -> Sketch {
    let (top, bottom) = b_unit(0.0);
    let t = walk_line(10.0, -2.0, 10.0, 1.0, &top, HALF_WIDTH);
    let b = walk_line(0.0, 10.0, -2.0, -1.0, &bottom, HALF_WIDTH);
    Sketch {
        vertices: Vec::new(),
        strands: vec![
            Strand::open("t", Component::K1, t, End::Boundary("a".into()), End::Boundary("b".into())),
            Strand::open("s", Component::K2, b, End::Boundary("d".into()), End::Boundary("c".into())),
        ],
        boundary_order: labels(&["a", "b", "c", "d"]),
    }
}

/// Tangles with boundary ends in the order documented per tangle:
/// E: `a, a', b, b'` (top line left/right, bottom line left/right);
/// O: `a, b, a', b'`; Ō: `a, a, b, b, c, c, d, d`; B: `a, b, c, d`.
pub fn build_tangle(name: TangleName, q: usize) -> Result<SpineDiagram, FixtureError> {
    let s = match name {
        TangleName::E => {
            odd(q)?;
            e_sketch(q)
        }
        TangleName::O => {
            odd(q)?;
            o_sketch(q)
        }
        TangleName::Obar => {
            odd(q)?;
            obar_sketch(q)
        }
        TangleName::B => b_sketch(),
    };
    build(Kind::Tangle, &s)
}

fn gamma1(q: usize) -> Sketch {
    let qf = q as f64;
    let k1 = Path::at(0.0, 1.0)
        .to(qf + 1.0, 1.0, 0.0)
        .to(qf + 1.0, 3.0, 0.0)
        .to(-1.0, 3.0, 0.0)
        .to(-1.0, 1.0, 0.0)
        .to(0.0, 1.0, 0.0);
    let k2 = Path::at(qf, 0.0)
        .to(qf + 1.0, 0.0, 0.0)
        .to(qf + 1.0, -2.0, 0.0)
        .to(-1.0, -2.0, 0.0)
        .to(-1.0, 0.0, 0.0)
        .to(qf, 0.0, 0.0);
    Sketch {
        vertices: vec![[0.0, 1.0], [qf, 0.0]],
        strands: vec![
            Strand::open("k", Component::K1, k1, End::Vertex(0), End::Vertex(0)),
            Strand::open("m", Component::K2, k2, End::Vertex(1), End::Vertex(1)),
            Strand::open("i", Component::Isthmus, e_isthmus(q), End::Vertex(0), End::Vertex(1)),
        ],
        boundary_order: Vec::new(),
    }
}

fn gamma2(q: usize) -> Sketch {
    let knot = o_knot(q, false);
    let shift = 10.0;
    let v1 = [2.0, -3.0];
    let v2 = [2.0, 3.0 - shift];
    let k1 = knot.rooted_at(v1);
    let k2 = knot.map(|p| [p[0], p[1] - shift]).rooted_at(v2);
    let isthmus = Path::at(v1[0], v1[1]).to(v2[0], v2[1], 0.0);
    Sketch {
        vertices: vec![v1, v2],
        strands: vec![
            Strand::open("k", Component::K1, k1, End::Vertex(0), End::Vertex(0)),
            Strand::open("m", Component::K2, k2, End::Vertex(1), End::Vertex(1)),
            Strand::open("i", Component::Isthmus, isthmus, End::Vertex(0), End::Vertex(1)),
        ],
        boundary_order: Vec::new(),
    }
}

fn gamma3(q: usize) -> Sketch {
    let knot = o_knot(q, true);
    let lo = 3.0 - BAND;
    let v1 = [0.0, 3.0 + BAND];
    let v2 = [q as f64, lo];
    let k1 = knot.offset(-BAND).rooted_at(v1);
    let k2 = knot.offset(BAND).rooted_at(v2);
    let isthmus = e_isthmus(q).map(|p| [p[0], lo + 2.0 * BAND * p[1]]);
    Sketch {
        vertices: vec![v1, v2],
        strands: vec![
            Strand::open("k", Component::K1, k1, End::Vertex(0), End::Vertex(0)),
            Strand::open("m", Component::K2, k2, End::Vertex(1), End::Vertex(1)),
            Strand::open("i", Component::Isthmus, isthmus, End::Vertex(0), End::Vertex(1)),
        ],
        boundary_order: Vec::new(),
    }
}

fn gamma4(q: usize) -> Sketch {
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for i in 0..q {
        let (t, b) = b_unit(12.0 * i as f64);
        top.extend(t);
        bottom.extend(b);
    }
    let l = 12.0 * q as f64 - 2.0;
    let k1 = Path::at(-2.0, 11.0)
        .to(-2.0, 10.0, 0.0)
        .extend(&walk_line(10.0, -2.0, l, 1.0, &top, HALF_WIDTH))
        .to(l, 12.0, 0.0)
        .to(-2.0, 12.0, 0.0)
        .to(-2.0, 11.0, 0.0);
    let k2 = Path::at(-2.0, -1.0)
        .to(-2.0, -2.0, 0.0)
        .to(l, -2.0, 0.0)
        .to(l, 0.0, 0.0)
        .extend(&walk_line(0.0, l, -2.0, -1.0, &bottom, HALF_WIDTH))
        .to(-2.0, -1.0, 0.0);
    let isthmus = Path::at(-2.0, 11.0)
        .to(-3.0, 11.0, 0.0)
        .to(-3.0, -1.0, 0.0)
        .to(-2.0, -1.0, 0.0);
    Sketch {
        vertices: vec![[-2.0, 11.0], [-2.0, -1.0]],
        strands: vec![
            Strand::open("k", Component::K1, k1, End::Vertex(0), End::Vertex(0)),
            Strand::open("m", Component::K2, k2, End::Vertex(1), End::Vertex(1)),
            Strand::open("i", Component::Isthmus, isthmus, End::Vertex(0), End::Vertex(1)),
        ],
        boundary_order: Vec::new(),
    }
}

pub fn build_family(family: Family, param: usize) -> Result<SpineDiagram, FixtureError> {
    let s = match family {
        Family::Gamma1 => {
            odd_prime(param)?;
            gamma1(param)
        }
        Family::Gamma2 => {
            odd_prime(param)?;
            gamma2(param)
        }
        Family::Gamma3 => {
            odd_prime(param)?;
            gamma3(param)
        }
        Family::Gamma4 => {
            if param == 0 {
                return Err(FixtureError::Parameter("q must be at least 1".into()));
            }
            gamma4(param)
        }
    };
    build(Kind::Handcuff, &s)
}

/// The coil drawing of Γ₁(p) with generators `a_i, b_j` on the isthmus,
/// `c_i` on K1 and `d_i` on K2, r = (p+1)/2.
pub fn lambert_diagram(p: usize) -> Result<SpineDiagram, FixtureError> {
    odd_prime(p)?;
    let r = p.div_ceil(2);
    let mut d = SpineDiagram::new(Kind::Handcuff);
    let a: Vec<usize> = (1..=r).map(|i| d.add_arc(format!("a{i}"), Component::Isthmus)).collect();
    let b: Vec<usize> = (1..r).map(|i| d.add_arc(format!("b{i}"), Component::Isthmus)).collect();
    let c: Vec<usize> = (1..=r).map(|i| d.add_arc(format!("c{i}"), Component::K1)).collect();
    let e: Vec<usize> = (1..=r).map(|i| d.add_arc(format!("d{i}"), Component::K2)).collect();
    let x = |over, under_in, under_out, sign| Crossing {
        over,
        under_in,
        under_out,
        sign,
    };
    for i in 0..r - 1 {
        d.crossings.push(x(c[i], a[i], b[i], -1));
        d.crossings.push(x(b[i], c[i + 1], c[i], -1));
        d.crossings.push(x(b[i], e[i], e[i + 1], 1));
        d.crossings.push(x(e[i + 1], b[i], a[i + 1], 1));
    }
    let end = |arc, out| VertexEnd { arc, out };
    d.vertices.push(Vertex {
        ends: [end(c[0], false), end(a[r - 1], false), end(c[r - 1], true)],
        isthmus: 1,
    });
    d.vertices.push(Vertex {
        ends: [end(e[0], true), end(e[r - 1], false), end(a[0], true)],
        isthmus: 2,
    });
    Ok(d)
}

/// ⟨x1, x2, x3 | x1 x2 x1⁻¹ x3 x1 x3⁻¹ x2 x3 x2⁻¹⟩
pub fn kinoshita_presentation() -> GroupPresentation {
    let r = parse_word("x1 x2 x1^-1 x3 x1 x3^-1 x2 x3 x2^-1", 3).expect("valid word");
    GroupPresentation::new(3, vec![r])
}

/// w0 = 1, w1 = t1 t2 t1⁻¹ t2⁻¹ t1, w2 = t2.
pub fn cochran_orr_pattern() -> HandlebodyPattern {
    let w = |s: &str| parse_word(s, 2).expect("valid word");
    HandlebodyPattern::new(FreeWord::identity(2), w("t1 t2 t1^-1 t2^-1 t1"), w("t2")).expect("unimodular")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fixture {
    Diagram(SpineDiagram),
    Presentation(GroupPresentation),
    Pattern(HandlebodyPattern),
}

/// Catalog names with a description of their parameter.
pub const CATALOG: &[(&str, &str)] = &[
    ("E", "odd q"),
    ("O", "odd q"),
    ("Obar", "odd q"),
    ("B", "none"),
    ("Gamma1", "odd prime p"),
    ("Gamma2", "odd prime p"),
    ("Gamma3", "odd prime p"),
    ("Gamma4", "q >= 1"),
    ("lambert", "odd prime p"),
    ("kinoshita", "none"),
    ("cochran-orr", "none"),
];

pub fn build_named(name: &str, param: Option<usize>) -> Result<Fixture, FixtureError> {
    let need = || param.ok_or_else(|| FixtureError::Parameter(format!("`{name}` needs a parameter")));
    if let Ok(t) = name.parse::<TangleName>() {
        let q = if t == TangleName::B { param.unwrap_or(1) } else { need()? };
        return build_tangle(t, q).map(Fixture::Diagram);
    }
    if let Ok(f) = name.parse::<Family>() {
        return build_family(f, need()?).map(Fixture::Diagram);
    }
    match name {
        "lambert" => lambert_diagram(need()?).map(Fixture::Diagram),
        "kinoshita" => Ok(Fixture::Presentation(kinoshita_presentation())),
        "cochran-orr" => Ok(Fixture::Pattern(cochran_orr_pattern())),
        _ => Err(FixtureError::Unknown(name.into())),
    }
}

/// Expands per-label colors into per-end boundary colors.
pub fn boundary_colors(d: &SpineDiagram, colors: &[(&str, usize)]) -> Vec<usize> {
    d.boundary
        .iter()
        .map(|b| {
            colors
                .iter()
                .find(|(l, _)| *l == b.label)
                .unwrap_or_else(|| panic!("no color for boundary label `{}`", b.label))
                .1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate, wirtinger};
    use crate::quandle::{count_tangle_colorings, make_quandle, phi_p, QuandleSpec};
    use crate::diagram::CycleAssignment;

    fn z(z1: u32, z2: u32) -> CycleAssignment {
        CycleAssignment { k: 2, z1, z2 }
    }

    #[test]
    fn all_fixtures_validate() {
        for q in [1, 3, 5] {
            for t in [TangleName::E, TangleName::O, TangleName::Obar] {
                let d = build_tangle(t, q).unwrap();
                assert!(validate(&d).is_empty());
            }
        }
        assert!(validate(&build_tangle(TangleName::B, 1).unwrap()).is_empty());
        for p in [3, 5, 7] {
            for f in [Family::Gamma1, Family::Gamma2, Family::Gamma3] {
                let d = build_family(f, p).unwrap();
                assert!(validate(&d).is_empty(), "{f} {p}");
                assert_eq!(wirtinger(&d).unwrap().deficiency(), 2);
            }
            assert!(validate(&lambert_diagram(p).unwrap()).is_empty());
        }
        for q in 1..=3 {
            assert!(validate(&build_family(Family::Gamma4, q).unwrap()).is_empty());
        }
    }

    #[test]
    fn e_tangle_counts() {
        let d3 = make_quandle(QuandleSpec::Dihedral(3)).unwrap();
        let e3 = build_tangle(TangleName::E, 3).unwrap();
        let e5 = build_tangle(TangleName::E, 5).unwrap();
        assert_eq!(count_tangle_colorings(&e3, &d3, &z(1, 1), &[0, 0, 1, 1]).unwrap(), 1);
        assert_eq!(count_tangle_colorings(&e5, &d3, &z(1, 1), &[0, 0, 1, 1]).unwrap(), 0);
    }

    #[test]
    fn b_tangle_counts() {
        let b = build_tangle(TangleName::B, 1).unwrap();
        let d3 = make_quandle(QuandleSpec::Dihedral(3)).unwrap();
        let d5 = make_quandle(QuandleSpec::Dihedral(5)).unwrap();
        assert_eq!(count_tangle_colorings(&b, &d3, &z(1, 1), &[0, 0, 1, 1]).unwrap(), 9);
        assert_eq!(count_tangle_colorings(&b, &d5, &z(1, 1), &[2, 2, 4, 4]).unwrap(), 1);
    }

    #[test]
    fn family_phi_examples() {
        assert_eq!(phi_p(&build_family(Family::Gamma1, 3).unwrap(), 3).unwrap().to_string(), "3+t");
        assert_eq!(phi_p(&build_family(Family::Gamma1, 5).unwrap(), 3).unwrap().to_string(), "4");
        assert_eq!(phi_p(&build_family(Family::Gamma2, 3).unwrap(), 3).unwrap().to_string(), "1+2t^2+t^4");
        assert_eq!(phi_p(&build_family(Family::Gamma3, 3).unwrap(), 3).unwrap().to_string(), "1+t+2t^2");
        assert_eq!(phi_p(&build_family(Family::Gamma4, 1).unwrap(), 3).unwrap().to_string(), "3+t^2");
        assert_eq!(phi_p(&lambert_diagram(3).unwrap(), 3).unwrap().to_string(), "3+t");
    }

    #[test]
    fn catalog_builds() {
        for (name, param) in CATALOG {
            let arg = if *param == "none" { None } else { Some(3) };
            assert!(build_named(name, arg).is_ok(), "{name}");
        }
        assert!(build_named("Gamma1", Some(9)).is_err());
        assert!(build_named("nope", None).is_err());
    }

    /// Pushes a finger out of a horizontal segment, across a parallel line
    /// at height `z`: a Reidemeister II move when the line is crossed twice.
    fn finger(s: &mut Sketch, strand: usize, seg: usize, xs: (f64, f64), y2: f64, z: f64) {
        let st = &mut s.strands[strand];
        let y = st.pts[seg][1];
        let z0 = st.z[seg];
        let pts = [[xs.0, y], [xs.0, y2], [xs.1, y2], [xs.1, y]];
        for (k, p) in pts.into_iter().enumerate() {
            st.pts.insert(seg + 1 + k, p);
        }
        for (k, h) in [z, z0, z, z0].into_iter().enumerate() {
            st.z.insert(seg + 1 + k, h);
        }
    }

    #[test]
    fn reidemeister_two_invariance() {
        let cases = [(3, 1, 0, (3.4, 3.6), 2.0, 1.0), (3, 1, 0, (3.4, 3.6), 2.0, -1.0), (5, 0, 4, (-0.6, -0.4), -1.0, -1.0)];
        for (q, strand, seg, xs, y2, z) in cases {
            let plain = compile(Kind::Handcuff, &gamma1(q)).unwrap();
            let mut s = gamma1(q);
            finger(&mut s, strand, seg, xs, y2, z);
            let moved = compile(Kind::Handcuff, &s).unwrap();
            assert!(validate(&moved).is_empty());
            assert_eq!(moved.crossings.len(), plain.crossings.len() + 2, "q={q} strand={strand}");
            for p in [3, 5] {
                assert_eq!(phi_p(&plain, p).unwrap(), phi_p(&moved, p).unwrap(), "q={q} p={p}");
            }
        }
    }
}
