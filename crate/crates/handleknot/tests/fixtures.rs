mod common;

use handleknot::diagram::{delete_isthmus, Component, enumerate_cycles, validate, wirtinger, Kind, SpineDiagram};
use handleknot::fixtures::{build_family, build_named, lambert_diagram, Family, Fixture, CATALOG};
use handleknot::obstructions::{analyze, Level};
use handleknot::quandle::{count_table, phi_p};

fn handcuffs() -> Vec<(String, SpineDiagram)> {
    let mut v = Vec::new();
    for p in [3, 5] {
        for f in [Family::Gamma1, Family::Gamma2, Family::Gamma3] {
            v.push((format!("{f}({p})"), build_family(f, p).unwrap()));
        }
        v.push((format!("lambert({p})"), lambert_diagram(p).unwrap()));
    }
    for q in 1..=2 {
        v.push((format!("Gamma4({q})"), build_family(Family::Gamma4, q).unwrap()));
    }
    v
}

#[test]
fn catalog_entries_build_and_validate() {
    for (name, _) in CATALOG {
        let f = build_named(name, Some(3)).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Fixture::Diagram(d) = f {
            assert!(validate(&d).is_empty(), "{name}");
        }
    }
}

#[test]
fn handcuff_presentations_have_deficiency_two() {
    for (name, d) in handcuffs() {
        assert_eq!(wirtinger(&d).unwrap().deficiency(), 2, "{name}");
    }
}

#[test]
fn cycle_count_is_k_squared() {
    for (name, d) in handcuffs() {
        for k in [2, 3, 4] {
            assert_eq!(enumerate_cycles(&d, k).unwrap().len(), (k * k) as usize, "{name} k={k}");
        }
    }
}

#[test]
fn deleting_the_isthmus_merges_arcs() {
    for (name, d) in handcuffs() {
        let l = delete_isthmus(&d).unwrap();
        assert_eq!(l.kind, Kind::Link);
        assert!(validate(&l).is_empty(), "{name}");
        let expected: usize = [Component::K1, Component::K2]
            .into_iter()
            .map(|k| {
                d.crossings
                    .iter()
                    .filter(|c| d.arcs[c.under_in].comp == k && d.arcs[c.over].comp != Component::Isthmus)
                    .count()
                    .max(1)
            })
            .sum();
        assert_eq!(l.arcs.len(), expected, "{name}");
    }
}

#[test]
fn counts_are_powers_of_p_and_phi_sums_to_four() {
    for (name, d) in handcuffs() {
        for p in [3u64, 5] {
            for (z, n) in count_table(&d, p).unwrap() {
                assert!(n >= p as u128, "{name} p={p} z={z:?}: {n}");
                let mut m = n;
                while m % p as u128 == 0 {
                    m /= p as u128;
                }
                assert_eq!(m, 1, "{name} p={p} z={z:?}: {n}");
            }
            assert_eq!(phi_p(&d, p).unwrap().coefficient_sum(), 4, "{name}");
        }
    }
}

#[test]
fn handcuff_exponents_against_constituent_link() {
    for (name, d) in handcuffs() {
        let l = delete_isthmus(&d).unwrap();
        for p in [3u64, 5] {
            let n = phi_p(&d, p).unwrap().exps;
            let m = phi_p(&l, p).unwrap().exps;
            for j in 0..4 {
                assert!(n[j] == m[j] || n[j] + 1 == m[j], "{name} p={p}: {n:?} vs {m:?}");
            }
        }
    }
}

#[test]
fn brute_force_agrees_with_linear_algebra() {
    for (name, d) in handcuffs().into_iter().filter(|(_, d)| d.arcs.len() <= 12) {
        for p in [3, 5] {
            let bad = common::brute_vs_linear_mismatches(&d, p);
            assert!(bad.is_empty(), "{name} p={p}: {:?}", bad.first());
        }
    }
}

#[test]
fn gamma1_closure_stops_at_split_levels() {
    for p in [3, 5] {
        let r = analyze(&build_family(Family::Gamma1, p).unwrap(), &[3, 5], None).unwrap();
        assert!(r.knotted(Level::S2) && r.knotted(Level::S3), "{:?}", r.knotted_levels());
        assert!(!r.knotted(Level::L1), "{:?}", r.knotted_levels());
    }
}

/// The family admits a boundary spine, so nothing may certify (3)_S; the
/// link levels stop at (2)_L.
#[test]
fn gamma4_closure_reaches_two_l_only() {
    for q in 1..=2 {
        let r = analyze(&build_family(Family::Gamma4, q).unwrap(), &[3], None).unwrap();
        assert!(r.knotted(Level::L2), "{:?}", r.knotted_levels());
        assert!(!r.knotted(Level::S3) && !r.knotted(Level::L3), "{:?}", r.knotted_levels());
    }
}
