//! Hadamard matrices: Sylvester doubling, Paley skew-type, normalization.

use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::matrix::{kronecker, IntMatrix};

pub const MAX_SYLVESTER_EXPONENT: u32 = 10;
pub const MAX_PALEY_ORDER: u64 = 200;

/// A ±1 matrix with `H·Hᵗ = n·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    matrix: IntMatrix,
}

impl HadamardMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.entries().iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidArgument(
                "Hadamard entries must be +1 or -1".into(),
            ));
        }
        let n = matrix.order() as i64;
        let gram = matrix.mul(&matrix.transpose())?;
        if gram != IntMatrix::identity(matrix.order()).scale(n)? {
            return Err(Error::InvalidArgument("H·Hᵗ differs from n·I".into()));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| self.matrix.get(0, i) == 1 && self.matrix.get(i, 0) == 1)
    }

    /// `H + Hᵗ = 2I`.
    pub fn is_skew_type(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| {
            (0..n).all(|j| self.matrix.get(i, j) + self.matrix.get(j, i) == if i == j { 2 } else { 0 })
        })
    }

    /// Negates rows so the first column is all +1, then columns so the first
    /// row is all +1.
    pub fn normalize(&self) -> Self {
        let n = self.order();
        let mut m = self.matrix.clone();
        for i in 0..n {
            if m.get(i, 0) == -1 {
                for j in 0..n {
                    m.set(i, j, -m.get(i, j));
                }
            }
        }
        for j in 0..n {
            if m.get(0, j) == -1 {
                for i in 0..n {
                    m.set(i, j, -m.get(i, j));
                }
            }
        }
        Self { matrix: m }
    }

    pub fn negated(&self) -> Self {
        Self {
            matrix: self.matrix.map(|x| -x),
        }
    }
}

/// `[[1, 1], [1, -1]]^{⊗k}`.
pub fn sylvester(k: u32) -> Result<HadamardMatrix> {
    if k > MAX_SYLVESTER_EXPONENT {
        return Err(Error::SizeBound(format!(
            "Sylvester exponent {k} exceeds {MAX_SYLVESTER_EXPONENT}"
        )));
    }
    let base = IntMatrix::from_rows(&[[1, 1], [1, -1]])?;
    let mut h = IntMatrix::identity(1);
    for _ in 0..k {
        h = kronecker(&h, &base)?;
    }
    Ok(HadamardMatrix { matrix: h })
}

/// Paley type I: `I + [[0, jᵗ], [-j, Q]]` with `Q` the Jacobsthal matrix of
/// GF(q), `q ≡ 3 (mod 4)`. The result is skew-type of order `q + 1`.
pub fn paley_skew(q: u64) -> Result<HadamardMatrix> {
    if prime_power(q).map_or(true, |(p, _)| p == 2) {
        return Err(Error::InvalidArgument(format!("{q} is not an odd prime power")));
    }
    if q % 4 != 3 {
        return Err(Error::InvalidArgument(format!("{q} is not 3 mod 4")));
    }
    if q + 1 > MAX_PALEY_ORDER {
        return Err(Error::SizeBound(format!(
            "Paley order {} exceeds {MAX_PALEY_ORDER}",
            q + 1
        )));
    }
    let field = FiniteField::of_order(q)?;
    let squares = field.square_table();
    let elements: Vec<_> = field.elements().collect();
    let n = q as usize + 1;
    let matrix = IntMatrix::from_fn(n, |i, j| match (i, j) {
        _ if i == j => 1,
        (0, _) => 1,
        (_, 0) => -1,
        _ => {
            let d = field.sub(elements[j - 1], elements[i - 1]);
            if squares[d.index()] {
                1
            } else {
                -1
            }
        }
    });
    HadamardMatrix::new(matrix)
}

/// A skew-type Hadamard matrix of the given order from the built-in families:
/// order 2, or `q + 1` for an odd prime power `q ≡ 3 (mod 4)`.
pub fn skew_hadamard(order: usize) -> Result<HadamardMatrix> {
    match order {
        1 => HadamardMatrix::new(IntMatrix::identity(1)),
        2 => HadamardMatrix::new(IntMatrix::from_rows(&[[1, 1], [-1, 1]])?),
        _ => paley_skew(order as u64 - 1).map_err(|e| match e {
            Error::SizeBound(_) => e,
            _ => Error::InvalidArgument(format!(
                "no built-in skew Hadamard matrix of order {order}"
            )),
        }),
    }
}
