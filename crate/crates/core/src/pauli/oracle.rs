//! Dense-matrix anticommutation check, kept independent of the packed
//! encoding so it can serve as a test oracle.
//!
//! Entries are exact Gaussian integers: every Pauli matrix has entries in
//! `{0, ±1, ±i}`, so Kronecker products and their products stay integral.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use super::{Pauli, PauliError, PauliString};

/// Largest qubit count accepted (matrices of dimension `2^12`).
pub const MAX_ORACLE_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: Self = Self { re: 0, im: 0 };
    pub const ONE: Self = Self { re: 1, im: 0 };
    pub const I: Self = Self { re: 0, im: 1 };

    const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }
}

impl Add for GaussInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for GaussInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<GaussInt>,
}

impl DenseMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> GaussInt {
        self.data[r * self.dim + c]
    }

    pub fn single(p: Pauli) -> Self {
        let (o, l, i) = (GaussInt::ZERO, GaussInt::ONE, GaussInt::I);
        let m1 = GaussInt::new(-1, 0);
        let mi = GaussInt::new(0, -1);
        let data = match p {
            Pauli::I => vec![l, o, o, l],
            Pauli::X => vec![o, l, l, o],
            Pauli::Y => vec![o, mi, i, o],
            Pauli::Z => vec![l, o, o, m1],
        };
        Self { dim: 2, data }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let dim = self.dim * rhs.dim;
        let mut data = vec![GaussInt::ZERO; dim * dim];
        for ar in 0..self.dim {
            for ac in 0..self.dim {
                let a = self.get(ar, ac);
                if a == GaussInt::ZERO {
                    continue;
                }
                for br in 0..rhs.dim {
                    for bc in 0..rhs.dim {
                        data[(ar * rhs.dim + br) * dim + ac * rhs.dim + bc] = a * rhs.get(br, bc);
                    }
                }
            }
        }
        Self { dim, data }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut data = vec![GaussInt::ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == GaussInt::ZERO {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] = data[r * n + c] + a * rhs.get(k, c);
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == GaussInt::ZERO)
    }

    /// Full `2^N x 2^N` operator of a Pauli string.
    pub fn from_pauli(p: &PauliString) -> Result<Self, PauliError> {
        let n = p.num_qubits();
        if n > MAX_ORACLE_QUBITS {
            return Err(PauliError::TooLarge {
                max: MAX_ORACLE_QUBITS,
                found: n,
            });
        }
        let mut ops = p.ops().iter();
        let first = Self::single(*ops.next().expect("non-empty Pauli string"));
        Ok(ops.fold(first, |acc, &q| acc.kron(&Self::single(q))))
    }

    /// `A·B + B·A == 0`.
    pub fn anticommutes_with(&self, other: &Self) -> bool {
        let ab = self.matmul(other);
        let ba = other.matmul(self);
        ab.data.iter().zip(&ba.data).all(|(&x, &y)| x + y == GaussInt::ZERO)
    }
}

pub fn anticommutes_dense(a: &PauliString, b: &PauliString) -> Result<bool, PauliError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(PauliError::LengthMismatch(a.num_qubits(), b.num_qubits()));
    }
    let ma = DenseMatrix::from_pauli(a)?;
    let mb = DenseMatrix::from_pauli(b)?;
    Ok(ma.anticommutes_with(&mb))
}
