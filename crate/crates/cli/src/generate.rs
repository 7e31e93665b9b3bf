//! Seeded synthetic instances.

use pcolor_core::rng::{self, Purpose};
use pcolor_core::{ExplicitGraph, Pauli, PauliSet, PauliString};
use rand::Rng;

use crate::error::{CliError, Result};

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// `n` uniform strings over `{I,X,Y,Z}^qubits`. String `i` depends only on
/// `(seed, i)`, so prefixes of larger instances agree.
pub fn random_pauli(n: usize, qubits: usize, seed: u64, exclude_identity: bool) -> Result<PauliSet> {
    if n == 0 || qubits == 0 {
        return Err(CliError::Usage("random-pauli needs n >= 1 and qubits >= 1".into()));
    }
    let strings = (0..n)
        .map(|i| {
            let mut r = rng::stream(seed, Purpose::Generator, 0, i as u64);
            loop {
                let ops: Vec<Pauli> = (0..qubits).map(|_| LETTERS[r.gen_range(0..4)]).collect();
                if !(exclude_identity && ops.iter().all(|&p| p == Pauli::I)) {
                    return PauliString::new(ops).expect("qubits >= 1");
                }
            }
        })
        .collect();
    Ok(PauliSet::new(strings)?)
}

/// Erdős–Rényi `G(n, p)`: each pair is an edge independently with
/// probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<ExplicitGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("edge probability {p} outside [0, 1]")));
    }
    if n > u32::MAX as usize {
        return Err(CliError::Usage("too many vertices".into()));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        let mut r = rng::stream(seed, Purpose::Generator, 1, u as u64);
        for v in u + 1..n {
            if r.gen_bool(p) {
                pairs.push((u as u32, v as u32));
            }
        }
    }
    Ok(ExplicitGraph::from_unique_pairs(n, &pairs))
}
