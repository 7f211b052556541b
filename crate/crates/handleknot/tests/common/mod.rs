#![allow(dead_code)]

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use handleknot::diagram::{CycleAssignment, SpineDiagram};
use handleknot::fixtures::{build_tangle, TangleName};
use handleknot::freegroup::{permutation_automorphisms, whitehead_automorphisms, FreeWord};
use handleknot::ideals::{certificate_search, elementary_ideal, report_from_ideals, IdealGens, LambdaMatrix, Principal};
use handleknot::laurent::{preferred_generator, sl2_substitute, LaurentPoly2};
use handleknot::presentation::{fox_derivative, GroupRingElement};
use handleknot::quandle::{count_tangle_colorings, make_quandle, FiniteQuandle, QuandleSpec};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_word(r: &mut StdRng, rank: usize, max_len: usize) -> FreeWord {
    let n = r.gen_range(0..=max_len);
    let raw: Vec<i32> = (0..n)
        .map(|_| {
            let g = r.gen_range(1..=rank as i32);
            if r.gen_bool(0.5) { g } else { -g }
        })
        .collect();
    FreeWord::from_letters(rank, &raw).unwrap()
}

pub fn rand_poly(r: &mut StdRng, max_terms: usize, max_coef: i64, max_exp: i64) -> LaurentPoly2 {
    let mut f = LaurentPoly2::zero();
    for _ in 0..r.gen_range(0..=max_terms) {
        let c = r.gen_range(-max_coef..=max_coef);
        let m = LaurentPoly2::monomial(c, r.gen_range(-max_exp..=max_exp), r.gen_range(-max_exp..=max_exp));
        f = &f + &m;
    }
    f
}

pub fn rand_nonzero_poly(r: &mut StdRng, max_terms: usize, max_coef: i64, max_exp: i64) -> LaurentPoly2 {
    loop {
        let f = rand_poly(r, max_terms.max(1), max_coef, max_exp);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn rand_lambda_matrix(r: &mut StdRng, rows: usize, cols: usize) -> LambdaMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| rand_poly(r, 2, 2, 1)).collect())
        .collect();
    LambdaMatrix::new(rows, cols, entries)
}

/// A product of a few elementary unimodular matrices.
pub fn rand_gl2(r: &mut StdRng) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..r.gen_range(1..=3) {
        let e = match r.gen_range(0..4) {
            0 => [[1, 1], [0, 1]],
            1 => [[1, 0], [1, 1]],
            2 => [[1, -1], [0, 1]],
            _ => [[0, 1], [-1, 0]],
        };
        m = [
            [m[0][0] * e[0][0] + m[0][1] * e[1][0], m[0][0] * e[0][1] + m[0][1] * e[1][1]],
            [m[1][0] * e[0][0] + m[1][1] * e[1][0], m[1][0] * e[0][1] + m[1][1] * e[1][1]],
        ];
    }
    m
}

/// Small unimodular matrices with entries in -1..=1.
pub fn small_gl2() -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for d in -1..=1 {
                    let det: i64 = a * d - b * c;
                    if det.abs() == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn apply_aut(w: &FreeWord, aut: &[FreeWord; 2]) -> FreeWord {
    w.substitute(aut)
}

fn all_automorphisms() -> Vec<[FreeWord; 2]> {
    let mut v = whitehead_automorphisms();
    v.extend(permutation_automorphisms());
    v
}

/// The image of `t1` under up to ten random elementary automorphisms.
pub fn rand_primitive(r: &mut StdRng) -> FreeWord {
    let auts = all_automorphisms();
    let mut w = FreeWord::generator(2, 1);
    for _ in 0..r.gen_range(0..=10) {
        w = apply_aut(&w, &auts[r.gen_range(0..auts.len())]);
    }
    w
}

/// `(t1, t2)` after up to ten random Nielsen moves.
pub fn rand_base_pair(r: &mut StdRng) -> (FreeWord, FreeWord) {
    let mut u = FreeWord::generator(2, 1);
    let mut v = FreeWord::generator(2, 2);
    for _ in 0..r.gen_range(0..=10) {
        match r.gen_range(0..6) {
            0 => std::mem::swap(&mut u, &mut v),
            1 => u = u.inverse(),
            2 => u = u.mul(&v),
            3 => u = v.mul(&u),
            4 => u = u.mul(&v.inverse()),
            _ => u = v.inverse().mul(&u),
        }
    }
    (u, v)
}

pub fn fox_fundamental_holds(r: &FreeWord) -> bool {
    let mut sum = GroupRingElement::zero();
    for j in 0..r.rank() {
        let x = GroupRingElement::word(FreeWord::generator(r.rank(), j + 1));
        let one = GroupRingElement::word(FreeWord::identity(r.rank()));
        sum = sum.add(&fox_derivative(r, j + 1).unwrap().mul(&x.sub(&one)));
    }
    let rhs = GroupRingElement::word(r.clone()).sub(&GroupRingElement::word(FreeWord::identity(r.rank())));
    sum == rhs
}

pub fn fox_product_rule_holds(u: &FreeWord, v: &FreeWord) -> bool {
    (1..=u.rank()).all(|j| {
        let lhs = fox_derivative(&u.mul(v), j).unwrap();
        let rhs = fox_derivative(u, j).unwrap().add(&fox_derivative(v, j).unwrap().left_mul(u));
        lhs == rhs
    })
}

/// Appending k zero columns moves every ideal up by k.
pub fn shift_identity_holds(b: &LambdaMatrix, k: usize) -> bool {
    let wide = b.append_zero_columns(k);
    (0..=b.cols + 1).all(|d| elementary_ideal(&wide, d + k) == elementary_ideal(b, d))
}

pub fn substitute_ideal(i: &IdealGens, m: [[i64; 2]; 2]) -> IdealGens {
    if i.full {
        return IdealGens::full_ring();
    }
    IdealGens::new(i.gens.iter().map(|g| sl2_substitute(g, m).unwrap()))
}

/// Unitary, principal and symmetric verdicts survive the substitution.
pub fn verdicts_invariant(e2: &IdealGens, m: [[i64; 2]; 2]) -> bool {
    let a = report_from_ideals(true, true, e2.clone());
    let b = report_from_ideals(true, true, substitute_ideal(e2, m));
    let same_principal = match (&a.principal, &b.principal) {
        (Principal::Yes(f), Principal::Yes(g)) => {
            preferred_generator(&sl2_substitute(f, m).unwrap()).unwrap() == preferred_generator(g).unwrap()
        }
        (Principal::No(_), Principal::No(_)) | (Principal::Unknown, Principal::Unknown) => true,
        _ => false,
    };
    a.unitary == b.unitary && same_principal && a.symmetric == b.symmetric
}

fn contains_all(i: &IdealGens, gens: &[LaurentPoly2]) -> bool {
    gens.iter().all(|g| certificate_search(g, &i.generators(), 3))
}

/// Equality of ideals after some small unimodular change of variables,
/// proved by explicit membership certificates both ways.
pub fn ideals_equivalent(i: &IdealGens, j: &IdealGens) -> bool {
    small_gl2().into_iter().any(|m| {
        let jm = substitute_ideal(j, m);
        contains_all(i, &jm.generators()) && contains_all(&jm, &i.generators())
    })
}

pub fn principal_equivalent(f: &LaurentPoly2, g: &LaurentPoly2) -> bool {
    let g = preferred_generator(g).unwrap();
    small_gl2()
        .into_iter()
        .any(|m| preferred_generator(&sl2_substitute(f, m).unwrap()).unwrap() == g)
}

fn s_poly() -> LaurentPoly2 {
    LaurentPoly2::t1()
}

fn t_poly() -> LaurentPoly2 {
    LaurentPoly2::t2()
}

fn geometric_sum(r: usize) -> LaurentPoly2 {
    let q = &s_poly() * &LaurentPoly2::monomial(1, 0, -1);
    let mut sum = LaurentPoly2::zero();
    for j in 0..r.saturating_sub(1) {
        sum = &sum + &q.pow(j as u32);
    }
    sum
}

/// `(1-s) t^-1 (sum_{j<=r-2} (s t^-1)^j) - 1` with s = t1, t = t2.
pub fn lambert_f(p: usize) -> LaurentPoly2 {
    let r = p.div_ceil(2);
    let one = LaurentPoly2::one();
    let tinv = LaurentPoly2::monomial(1, 0, -1);
    &(&(&(&one - &s_poly()) * &tinv) * &geometric_sum(r)) - &one
}

/// The companion condition `(1-t) t^-1 (sum) - (s t^-1)^{r-1}`.
pub fn lambert_companion(p: usize) -> LaurentPoly2 {
    let r = p.div_ceil(2);
    let one = LaurentPoly2::one();
    let tinv = LaurentPoly2::monomial(1, 0, -1);
    let q = &s_poly() * &tinv;
    &(&(&(&one - &t_poly()) * &tinv) * &geometric_sum(r)) - &q.pow((r - 1) as u32)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn z(z1: u32, z2: u32) -> CycleAssignment {
    CycleAssignment { k: 2, z1, z2 }
}

pub const CYCLES: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn count(d: &SpineDiagram, q: &FiniteQuandle, c: (u32, u32), colors: &[usize]) -> u128 {
    count_tangle_colorings(d, q, &z(c.0, c.1), colors).expect("count")
}

fn e_expected(p: usize, q: usize, c: (u32, u32), a: usize, b: usize) -> u128 {
    if q.is_multiple_of(p) && c == (1, 1) {
        1
    } else {
        u128::from(a == b)
    }
}

fn obar_expected(p: usize, q: usize, c: (u32, u32), [a, b, cc, d]: [usize; 4]) -> Option<u128> {
    match c {
        (1, 1) | (0, 0) => Some(u128::from(a == d && b == cc)),
        _ if a != b => None,
        _ if p == q => Some(if cc == d { p as u128 } else { 0 }),
        _ => Some(u128::from(a == cc && cc == d)),
    }
}

fn b_expected(p: usize, [a, b, c, d]: [usize; 4]) -> u128 {
    match (a == b && c == d, p == 3) {
        (false, _) => 0,
        (true, true) => (p * p) as u128,
        (true, false) => 1,
    }
}

/// Compares every tangle count against the lemma tables; returns the
/// mismatches found.
pub fn tangle_table_mismatches(p: usize, q: usize) -> Vec<String> {
    let dq = make_quandle(QuandleSpec::Dihedral(p)).unwrap();
    let mut bad = Vec::new();
    let e = build_tangle(TangleName::E, q).unwrap();
    let o = build_tangle(TangleName::O, q).unwrap();
    let ob = build_tangle(TangleName::Obar, q).unwrap();
    let b = build_tangle(TangleName::B, 1).unwrap();
    for c in CYCLES {
        for a in 0..p {
            for bb in 0..p {
                let got = count(&e, &dq, c, &[a, a, bb, bb]);
                let want = e_expected(p, q, c, a, bb);
                if got != want {
                    bad.push(format!("E({q}) p={p} z={c:?} a={a} b={bb}: {got} != {want}"));
                }
                let mut hits = Vec::new();
                for a2 in 0..p {
                    for b2 in 0..p {
                        let got = count(&o, &dq, c, &[a, bb, a2, b2]);
                        if c.0 == 0 {
                            let want = u128::from(a == bb && a2 == b2);
                            if got != want {
                                bad.push(format!("O({q}) p={p} z=0 ({a},{bb},{a2},{b2}): {got} != {want}"));
                            }
                        } else if p == q {
                            let want = if a == a2 && bb == b2 { p as u128 } else { 0 };
                            if got != want {
                                bad.push(format!("O({q}) p={p} z=1 ({a},{bb},{a2},{b2}): {got} != {want}"));
                            }
                        } else if got != 0 {
                            hits.push((a2, b2, got));
                        }
                    }
                }
                if c.0 == 1 && p != q {
                    let ok = match hits.as_slice() {
                        [(a2, b2, 1)] => !((a == *a2 || bb == *b2) && !(a == bb && bb == *a2 && *a2 == *b2)),
                        _ => false,
                    };
                    if !ok {
                        bad.push(format!("O({q}) p={p} z=1 from ({a},{bb}): hits {hits:?}"));
                    }
                }
                for cc in 0..p {
                    for d in 0..p {
                        let k = [a, bb, cc, d];
                        if let Some(want) = obar_expected(p, q, c, k) {
                            let got = count(&ob, &dq, c, &[a, a, bb, bb, cc, cc, d, d]);
                            if got != want {
                                bad.push(format!("Obar({q}) p={p} z={c:?} {k:?}: {got} != {want}"));
                            }
                        }
                        if c == (1, 1) {
                            let got = count(&b, &dq, c, &k);
                            let want = b_expected(p, k);
                            if got != want {
                                bad.push(format!("B p={p} {k:?}: {got} != {want}"));
                            }
                        }
                    }
                }
            }
        }
    }
    bad
}

/// Brute-force counts that disagree with the linear-algebra counts, over
/// every cycle and (for tangles) every boundary coloring.
pub fn brute_vs_linear_mismatches(d: &SpineDiagram, p: usize) -> Vec<String> {
    use handleknot::diagram::{enumerate_cycles, Kind};
    use handleknot::quandle::{brute_force_count, solution_dimension};
    let q = make_quandle(QuandleSpec::Dihedral(p)).unwrap();
    let cycles: Vec<CycleAssignment> = if d.kind == Kind::Tangle {
        CYCLES.iter().map(|&(a, b)| z(a, b)).collect()
    } else {
        enumerate_cycles(d, 2).unwrap()
    };
    let ends = d.boundary.len();
    let mut bad = Vec::new();
    for c in cycles {
        for code in 0..p.pow(ends as u32) {
            let pins: Vec<(usize, usize)> = d
                .boundary
                .iter()
                .enumerate()
                .map(|(i, b)| (b.arc, code / p.pow(i as u32) % p))
                .collect();
            let linear = solution_dimension(d, p as u64, &c, &pins).map_or(0, |k| (p as u128).pow(k as u32));
            let brute = brute_force_count(d, &q, &c, &pins).unwrap();
            if linear != brute {
                bad.push(format!("cycle {:?} pins {:?}: linear {linear}, brute {brute}", c, pins));
            }
        }
    }
    bad
}
