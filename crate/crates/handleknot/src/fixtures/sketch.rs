//! Planar polyline sketches with heights, compiled into diagrams.
//!
//! Each strand is a polyline in the plane with one height per segment.
//! Where two segments cross, the higher one passes over. Crossing signs
//! and the cyclic order of ends at each vertex are read off the geometry.

use std::collections::HashMap;

use crate::diagram::{validate, BoundaryEnd, Component, Crossing, Kind, SpineDiagram, Vertex, VertexEnd};

const EPS: f64 = 1e-9;

pub type Pt = [f64; 2];

#[derive(Clone, Debug, PartialEq)]
pub enum End {
    Vertex(usize),
    Boundary(String),
    Closed,
}

#[derive(Clone, Debug)]
pub struct Strand {
    pub name: String,
    pub comp: Component,
    pub pts: Vec<Pt>,
    /// Height of each segment.
    pub z: Vec<f64>,
    pub start: End,
    pub end: End,
}

impl Strand {
    pub fn open(name: &str, comp: Component, path: Path, start: End, end: End) -> Self {
        Strand {
            name: name.into(),
            comp,
            pts: path.pts,
            z: path.z,
            start,
            end,
        }
    }

    pub fn closed(name: &str, comp: Component, path: Path) -> Self {
        let mut s = Strand::open(name, comp, path, End::Closed, End::Closed);
        if s.pts.first() != s.pts.last() {
            let z = *s.z.last().unwrap_or(&0.0);
            s.pts.push(s.pts[0]);
            s.z.push(z);
        }
        s
    }

    fn is_closed(&self) -> bool {
        self.start == End::Closed
    }
}

/// Polyline builder; `to(x, y, z)` appends a segment at height `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub pts: Vec<Pt>,
    pub z: Vec<f64>,
}

impl Path {
    pub fn at(x: f64, y: f64) -> Self {
        Path {
            pts: vec![[x, y]],
            z: Vec::new(),
        }
    }

    pub fn to(mut self, x: f64, y: f64, z: f64) -> Self {
        self.pts.push([x, y]);
        self.z.push(z);
        self
    }

    pub fn last(&self) -> Pt {
        *self.pts.last().expect("nonempty path")
    }

    pub fn extend(mut self, other: &Path) -> Self {
        assert!(close(self.last(), other.pts[0]), "paths do not meet");
        self.pts.extend_from_slice(&other.pts[1..]);
        self.z.extend_from_slice(&other.z);
        self
    }

    pub fn reversed(&self) -> Path {
        let mut pts = self.pts.clone();
        pts.reverse();
        let mut z = self.z.clone();
        z.reverse();
        Path { pts, z }
    }

    pub fn map(&self, f: impl Fn(Pt) -> Pt) -> Path {
        Path {
            pts: self.pts.iter().map(|&p| f(p)).collect(),
            z: self.z.clone(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.pts.len() > 2 && close(self.pts[0], self.last())
    }

    /// Parallel copy at signed distance `d` (positive to the left).
    pub fn offset(&self, d: f64) -> Path {
        let n = self.pts.len();
        let closed = self.is_closed();
        let dir = |i: usize| unit(sub(self.pts[i + 1], self.pts[i]));
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let (before, after) = match (i, closed) {
                (0, false) => (None, Some(dir(0))),
                (i, false) if i == n - 1 => (Some(dir(n - 2)), None),
                (0, true) => (Some(dir(n - 2)), Some(dir(0))),
                (i, true) if i == n - 1 => (Some(dir(n - 2)), Some(dir(0))),
                (i, _) => (Some(dir(i - 1)), Some(dir(i))),
            };
            let shift = match (before, after) {
                (Some(u), Some(v)) => {
                    let (a, b) = (left(u), left(v));
                    let k = 1.0 + a[0] * b[0] + a[1] * b[1];
                    assert!(k > 1e-6, "offset of a reversing polyline");
                    [d * (a[0] + b[0]) / k, d * (a[1] + b[1]) / k]
                }
                (Some(u), None) | (None, Some(u)) => {
                    let a = left(u);
                    [d * a[0], d * a[1]]
                }
                (None, None) => unreachable!(),
            };
            pts.push([self.pts[i][0] + shift[0], self.pts[i][1] + shift[1]]);
        }
        Path { pts, z: self.z.clone() }
    }

    /// Rotates a closed path so that it starts at `p`, inserting `p` on
    /// the segment that contains it.
    pub fn rooted_at(&self, p: Pt) -> Path {
        assert!(self.is_closed());
        let n = self.z.len();
        let i = (0..n)
            .find(|&i| on_segment(p, self.pts[i], self.pts[i + 1]))
            .unwrap_or_else(|| panic!("point {p:?} is not on the path"));
        let mut out = Path::at(p[0], p[1]);
        let at_corner = close(p, self.pts[i]);
        for k in 0..n {
            let seg = (i + k) % n;
            let q = self.pts[seg + 1];
            out = out.to(q[0], q[1], self.z[seg]);
        }
        if !at_corner {
            out = out.to(p[0], p[1], self.z[i]);
        }
        out
    }
}

fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Pt, b: Pt) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn unit(a: Pt) -> Pt {
    let l = (a[0] * a[0] + a[1] * a[1]).sqrt();
    assert!(l > EPS, "zero-length segment");
    [a[0] / l, a[1] / l]
}

fn left(u: Pt) -> Pt {
    [-u[1], u[0]]
}

fn close(a: Pt, b: Pt) -> bool {
    (a[0] - b[0]).abs() < 1e-7 && (a[1] - b[1]).abs() < 1e-7
}

fn on_segment(p: Pt, a: Pt, b: Pt) -> bool {
    let r = sub(b, a);
    let w = sub(p, a);
    if cross(r, w).abs() > 1e-7 {
        return false;
    }
    let t = (w[0] * r[0] + w[1] * r[1]) / (r[0] * r[0] + r[1] * r[1]);
    (-1e-9..1.0 - 1e-9).contains(&t)
}

#[derive(Clone, Debug, Default)]
pub struct Sketch {
    pub vertices: Vec<Pt>,
    pub strands: Vec<Strand>,
    /// Boundary labels in output order; ends sharing a label keep strand order.
    pub boundary_order: Vec<String>,
}

struct Seg {
    strand: usize,
    idx: usize,
    a: Pt,
    b: Pt,
    z: f64,
}

struct RawCrossing {
    over: (usize, f64),
    under: (usize, f64),
    sign: i8,
}

pub fn compile(kind: Kind, s: &Sketch) -> Result<SpineDiagram, String> {
    let mut segs = Vec::new();
    for (si, st) in s.strands.iter().enumerate() {
        if st.z.len() + 1 != st.pts.len() || st.pts.len() < 2 {
            return Err(format!("strand `{}`: heights do not match segments", st.name));
        }
        for i in 0..st.z.len() {
            segs.push(Seg {
                strand: si,
                idx: i,
                a: st.pts[i],
                b: st.pts[i + 1],
                z: st.z[i],
            });
        }
    }
    let mut raw = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (p, q) = (&segs[i], &segs[j]);
            if p.strand == q.strand {
                let st = &s.strands[p.strand];
                let last = st.z.len() - 1;
                let adjacent = p.idx.abs_diff(q.idx) == 1
                    || (st.is_closed() && ((p.idx == 0 && q.idx == last) || (q.idx == 0 && p.idx == last)));
                if adjacent {
                    continue;
                }
            }
            if let Some(c) = intersect(p, q, &s.vertices)? {
                raw.push(c);
            }
        }
    }
    let mut cuts: Vec<Vec<f64>> = vec![Vec::new(); s.strands.len()];
    for c in &raw {
        cuts[c.under.0].push(c.under.1);
    }
    for c in cuts.iter_mut() {
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    let mut d = SpineDiagram::new(kind);
    let mut first_arc = Vec::new();
    for (si, st) in s.strands.iter().enumerate() {
        first_arc.push(d.arcs.len());
        let k = cuts[si].len();
        let count = if st.is_closed() { k.max(1) } else { k + 1 };
        for j in 0..count {
            let name = if count == 1 {
                st.name.clone()
            } else {
                format!("{}{}", st.name, j + 1)
            };
            d.add_arc(name, st.comp);
        }
    }
    let arc_at = |si: usize, pos: f64| -> usize {
        let m = cuts[si].iter().filter(|&&c| c < pos).count();
        let k = cuts[si].len();
        let local = if s.strands[si].is_closed() && k > 0 {
            (m + k - 1) % k
        } else {
            m
        };
        first_arc[si] + local
    };
    for c in &raw {
        let (si, pos) = c.under;
        let m = cuts[si].iter().position(|&x| x == pos).expect("cut recorded");
        let k = cuts[si].len();
        let (inn, out) = if s.strands[si].is_closed() {
            ((m + k - 1) % k, m)
        } else {
            (m, m + 1)
        };
        d.crossings.push(Crossing {
            over: arc_at(c.over.0, c.over.1),
            under_in: first_arc[si] + inn,
            under_out: first_arc[si] + out,
            sign: c.sign,
        });
    }
    let last_arc = |si: usize| -> usize {
        let k = cuts[si].len();
        first_arc[si] + if s.strands[si].is_closed() { k.max(1) - 1 } else { k }
    };
    for (vi, &vp) in s.vertices.iter().enumerate() {
        let mut ends: Vec<(f64, VertexEnd, Component)> = Vec::new();
        for (si, st) in s.strands.iter().enumerate() {
            let n = st.pts.len();
            if st.start == End::Vertex(vi) {
                if !close(st.pts[0], vp) {
                    return Err(format!("strand `{}` does not start at vertex {}", st.name, vi + 1));
                }
                let dir = sub(st.pts[1], st.pts[0]);
                ends.push((dir[1].atan2(dir[0]), VertexEnd { arc: first_arc[si], out: true }, st.comp));
            }
            if st.end == End::Vertex(vi) {
                if !close(st.pts[n - 1], vp) {
                    return Err(format!("strand `{}` does not end at vertex {}", st.name, vi + 1));
                }
                let dir = sub(st.pts[n - 2], st.pts[n - 1]);
                ends.push((dir[1].atan2(dir[0]), VertexEnd { arc: last_arc(si), out: false }, st.comp));
            }
        }
        if ends.len() != 3 {
            return Err(format!("vertex {} has {} ends", vi + 1, ends.len()));
        }
        ends.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let isthmus = ends
            .iter()
            .position(|e| e.2 == Component::Isthmus)
            .ok_or_else(|| format!("vertex {} has no isthmus end", vi + 1))?;
        d.vertices.push(Vertex {
            ends: [ends[0].1, ends[1].1, ends[2].1],
            isthmus,
        });
    }
    let mut boundary: Vec<(usize, BoundaryEnd)> = Vec::new();
    for (si, st) in s.strands.iter().enumerate() {
        for (end, start, arc) in [(&st.start, true, first_arc[si]), (&st.end, false, last_arc(si))] {
            if let End::Boundary(label) = end {
                let rank = s
                    .boundary_order
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| format!("boundary label `{label}` not ordered"))?;
                boundary.push((
                    rank,
                    BoundaryEnd {
                        label: label.clone(),
                        arc,
                        start,
                    },
                ));
            }
        }
    }
    boundary.sort_by_key(|b| b.0);
    d.boundary = boundary.into_iter().map(|b| b.1).collect();
    let v = validate(&d);
    if !v.is_empty() {
        return Err(format!(
            "sketch compiles to an invalid diagram: {}",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
        ));
    }
    Ok(d)
}

fn intersect(p: &Seg, q: &Seg, vertices: &[Pt]) -> Result<Option<RawCrossing>, String> {
    let r = sub(p.b, p.a);
    let sv = sub(q.b, q.a);
    let w = sub(q.a, p.a);
    let den = cross(r, sv);
    if den.abs() < EPS {
        if cross(w, r).abs() > 1e-7 {
            return Ok(None);
        }
        let rr = r[0] * r[0] + r[1] * r[1];
        let t0 = (w[0] * r[0] + w[1] * r[1]) / rr;
        let t1 = ((q.b[0] - p.a[0]) * r[0] + (q.b[1] - p.a[1]) * r[1]) / rr;
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        if hi > 1e-7 && lo < 1.0 - 1e-7 {
            return Err(format!("overlapping segments near {:?}", p.a));
        }
        return Ok(None);
    }
    let t = cross(w, sv) / den;
    let u = cross(w, r) / den;
    let tol = 1e-7;
    if t < -tol || t > 1.0 + tol || u < -tol || u > 1.0 + tol {
        return Ok(None);
    }
    let pt = [p.a[0] + t * r[0], p.a[1] + t * r[1]];
    let at_end = |x: f64| x < tol || x > 1.0 - tol;
    if at_end(t) || at_end(u) {
        if vertices.iter().any(|&v| close(v, pt)) {
            return Ok(None);
        }
        return Err(format!("segments touch at a polyline corner near {pt:?}"));
    }
    if (p.z - q.z).abs() < EPS {
        return Err(format!("crossing at equal heights near {pt:?}"));
    }
    let (over, under, od, ud) = if p.z > q.z {
        ((p.strand, p.idx as f64 + t), (q.strand, q.idx as f64 + u), r, sv)
    } else {
        ((q.strand, q.idx as f64 + u), (p.strand, p.idx as f64 + t), sv, r)
    };
    let sign = if cross(od, ud) > 0.0 { 1 } else { -1 };
    Ok(Some(RawCrossing { over, under, sign }))
}

/// Boundary of a family of bands whose feet sit on one horizontal line.
///
/// `line_y` is the line, `dir` is +1 to walk east and -1 to walk west. Each
/// band core starts and ends on the line. The walk enters at `from` and
/// stops at the first line point past `to`, following band edges of half
/// width `w` whenever it meets a foot.
pub fn walk_line(line_y: f64, from: f64, to: f64, dir: f64, bands: &[Path], w: f64) -> Path {
    let mut edges: Vec<Path> = Vec::new();
    for b in bands {
        edges.push(b.offset(w));
        edges.push(b.offset(-w));
    }
    let mut stops: Vec<(f64, usize, bool)> = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        assert!((e.pts[0][1] - line_y).abs() < 1e-7 && (e.last()[1] - line_y).abs() < 1e-7);
        stops.push((e.pts[0][0], i, true));
        stops.push((e.last()[0], i, false));
    }
    let mut used = vec![false; edges.len()];
    let mut path = Path::at(from, line_y);
    let mut x = from;
    loop {
        let next = stops
            .iter()
            .filter(|s| (s.0 - x) * dir > 1e-9 && (s.0 - to) * dir < 0.0)
            .min_by(|a, b| ((a.0 - x) * dir).partial_cmp(&((b.0 - x) * dir)).unwrap());
        let Some(&(sx, ei, at_start)) = next else { break };
        assert!(!used[ei], "band edge traversed twice");
        used[ei] = true;
        path = path.to(sx, line_y, 0.0);
        let e = if at_start { edges[ei].clone() } else { edges[ei].reversed() };
        path = path.extend(&e);
        x = path.last()[0];
    }
    assert!(used.iter().all(|&u| u), "band edges left over");
    path.to(to, line_y, 0.0)
}

/// Counts how often each label appears among the boundary ends.
pub fn boundary_labels(d: &SpineDiagram) -> HashMap<String, usize> {
    let mut m = HashMap::new();
    for b in &d.boundary {
        *m.entry(b.label.clone()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn single_crossing_signs() {
        let mut s = Sketch {
            boundary_order: vec!["o".into(), "o'".into(), "u".into(), "u'".into()],
            ..Sketch::default()
        };
        s.strands.push(Strand::open(
            "o",
            Component::K1,
            Path::at(-1.0, -1.0).to(1.0, 1.0, 1.0),
            End::Boundary("o".into()),
            End::Boundary("o'".into()),
        ));
        s.strands.push(Strand::open(
            "u",
            Component::K1,
            Path::at(1.0, -1.0).to(-1.0, 1.0, 0.0),
            End::Boundary("u".into()),
            End::Boundary("u'".into()),
        ));
        let d = compile(Kind::Tangle, &s).unwrap();
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.crossings[0].sign, 1);
        assert_eq!(d.arcs.len(), 3);
        assert_eq!(parse_diagram(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn kinked_circle_has_one_positive_crossing() {
        let p = Path::at(0.0, 0.8)
            .to(0.6, 0.8, 0.0)
            .to(0.6, 1.4, 0.0)
            .to(0.3, 1.4, 0.0)
            .to(0.3, 0.5, 1.0)
            .to(1.2, 0.5, 0.0)
            .to(1.2, 0.8, 0.0)
            .to(2.0, 0.8, 0.0)
            .to(2.0, -1.0, 0.0)
            .to(0.0, -1.0, 0.0)
            .to(0.0, 0.8, 0.0);
        let s = Sketch {
            strands: vec![Strand::closed("k", Component::K1, p)],
            ..Default::default()
        };
        let d = compile(Kind::Knot, &s).unwrap();
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.crossings[0].sign, 1);
        assert_eq!(d.arcs.len(), 1);
    }

    #[test]
    fn equal_heights_rejected() {
        let s = Sketch {
            boundary_order: vec!["x".into()],
            strands: vec![
                Strand::open("a", Component::K1, Path::at(-1.0, 0.0).to(1.0, 0.0, 0.0), End::Boundary("x".into()), End::Boundary("x".into())),
                Strand::open("b", Component::K1, Path::at(0.0, -1.0).to(0.0, 1.0, 0.0), End::Boundary("x".into()), End::Boundary("x".into())),
            ],
            ..Default::default()
        };
        assert!(compile(Kind::Tangle, &s).is_err());
    }

    #[test]
    fn offsets_and_rooting() {
        let sq = Path::at(0.0, 0.0)
            .to(2.0, 0.0, 0.0)
            .to(2.0, 2.0, 0.0)
            .to(0.0, 2.0, 0.0)
            .to(0.0, 0.0, 0.0);
        let inner = sq.offset(0.5);
        assert!(close(inner.pts[0], [0.5, 0.5]));
        assert!(close(inner.pts[2], [1.5, 1.5]));
        let r = sq.rooted_at([1.0, 2.0]);
        assert!(close(r.pts[0], [1.0, 2.0]));
        assert!(close(r.last(), [1.0, 2.0]));
        assert_eq!(r.pts.len(), 6);
    }
}
