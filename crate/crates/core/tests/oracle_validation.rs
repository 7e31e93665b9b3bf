mod common;

use common::*;
use pcolor_core::pauli::oracle::anticommutes_dense;
use pcolor_core::palette::{self, PaletteParams, RunOptions};
use pcolor_core::validate::{color_classes, validate, validate_colors, ValidationMode};
use pcolor_core::{EdgeOracleView, Pauli, PauliSet, PauliString};

fn all_strings(qubits: usize) -> Vec<PauliString> {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    (0..4usize.pow(qubits as u32))
        .map(|mut k| {
            let ops = (0..qubits)
                .map(|_| {
                    let p = letters[k % 4];
                    k /= 4;
                    p
                })
                .collect();
            PauliString::new(ops).unwrap()
        })
        .collect()
}

#[test]
fn packed_parity_matches_matrices_for_three_qubits() {
    let strings = all_strings(3);
    let set = PauliSet::new(strings.clone()).unwrap();
    for i in 0..strings.len() {
        for j in 0..strings.len() {
            assert_eq!(
                set.encoded(i).anticommutes(&set.encoded(j)).unwrap(),
                anticommutes_dense(&strings[i], &strings[j]).unwrap(),
                "{} vs {}",
                strings[i],
                strings[j]
            );
        }
    }
}

#[test]
fn validator_agrees_with_independent_loop() {
    for seed in 0..6u64 {
        let set = random_pauli(400 + seed as usize * 20, 7, seed);
        let view = EdgeOracleView::pauli(&set);
        // a deliberately poor coloring: vertex id modulo a small number
        let colors: Vec<u32> = (0..view.len() as u32).map(|v| v % (30 + seed as u32)).collect();
        let report = validate_colors(&view, &colors, ValidationMode::Exhaustive).unwrap();
        let mut expected = 0;
        for i in 0..view.len() {
            for j in i + 1..view.len() {
                if colors[i] == colors[j] && naive_adjacent(&view, None, i, j) {
                    expected += 1;
                }
            }
        }
        assert_eq!(report.violation_count, expected);
        assert_eq!(report.proper, expected == 0);
        assert!(report.violations.len() <= 100);
    }
}

#[test]
fn exported_groups_are_anticommuting_cliques() {
    let set = random_pauli(900, 9, 12);
    let view = EdgeOracleView::pauli(&set);
    let r = palette::run(&view, &PaletteParams::normal(1), &RunOptions::default()).unwrap();
    let rep = validate(&view, &r, ValidationMode::Exhaustive).unwrap();
    assert!(rep.proper);
    assert!(rep.ec_max_pct > 0.0);
    let groups = color_classes(&r.colors);
    assert_eq!(groups.len(), r.num_colors);
    assert_eq!(groups.iter().map(Vec::len).sum::<usize>(), 900);
    for g in &groups {
        for (a, &u) in g.iter().enumerate() {
            for &v in &g[a + 1..] {
                assert!(set.anticommutes(u as usize, v as usize));
            }
        }
    }
}

#[test]
fn commuting_pair_splits_and_singleton_stays() {
    let set = PauliSet::from_strs(["XX", "YY"]).unwrap();
    let view = EdgeOracleView::pauli(&set);
    let r = palette::run(&view, &PaletteParams::normal(0), &RunOptions::default()).unwrap();
    assert_eq!(color_classes(&r.colors).len(), 2);
    let one = PauliSet::from_strs(["XZ"]).unwrap();
    let r = palette::run(&EdgeOracleView::pauli(&one), &PaletteParams::normal(0), &RunOptions::default()).unwrap();
    assert_eq!(color_classes(&r.colors), vec![vec![0]]);
}
