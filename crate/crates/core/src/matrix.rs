//! Dense square integer matrices and the digraphs built on top of them.
//!
//! Every identity checked in this crate is an exact integer statement, so
//! entries are `i64` and all arithmetic is overflow-checked. Products switch
//! to an unchecked kernel only when an a-priori bound proves it cannot
//! overflow.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orders at or above this use the row-parallel product kernel.
const PARALLEL_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(order: usize, entries: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Dimension("matrix order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::Dimension(format!(
                "order {order} needs {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Self::new(order, entries)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self { order, entries }
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| 0)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| i64::from(i == j))
    }

    /// The all-ones matrix `J`.
    pub fn ones(order: usize) -> Self {
        Self::from_fn(order, |_, _| 1)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.order + j] = value;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i))
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.order];
        for row in self.rows() {
            for (s, &x) in sums.iter_mut().zip(row) {
                *s += x;
            }
        }
        sums
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().map(|x| x.saturating_abs()).max().unwrap_or(0)
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn is_signed(&self) -> bool {
        self.entries.iter().all(|&x| (-1..=1).contains(&x))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|&x| f(x)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, what: &'static str, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::Dimension(format!(
                "{what} of orders {} and {}",
                self.order, other.order
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| f(x, y).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "matrix sum", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "matrix difference", i64::checked_sub)
    }

    pub fn scale(&self, factor: i64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|&x| x.checked_mul(factor).ok_or(Error::Overflow("scalar multiple")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            entries,
        })
    }

    /// Exact matrix product.
    ///
    /// The result is independent of whether the parallel kernel ran: each
    /// output row is computed by exactly one task.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.order;
        if n != other.order {
            return Err(Error::Dimension(format!(
                "product of orders {n} and {}",
                other.order
            )));
        }
        let bound = (self.max_abs() as i128) * (other.max_abs() as i128) * (n as i128);
        let mut out = vec![0i64; n * n];
        if bound <= i64::MAX as i128 {
            let kernel = |(i, out_row): (usize, &mut [i64])| {
                for (k, &a) in self.row(i).iter().enumerate() {
                    if a != 0 {
                        for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                            *o += a * b;
                        }
                    }
                }
            };
            if n >= PARALLEL_ORDER {
                out.par_chunks_mut(n).enumerate().for_each(kernel);
            } else {
                out.chunks_mut(n).enumerate().for_each(kernel);
            }
        } else {
            for i in 0..n {
                for k in 0..n {
                    let a = self.get(i, k);
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let term = a
                            .checked_mul(other.get(k, j))
                            .ok_or(Error::Overflow("matrix product"))?;
                        out[i * n + j] = out[i * n + j]
                            .checked_add(term)
                            .ok_or(Error::Overflow("matrix product"))?;
                    }
                }
            }
        }
        Ok(Self {
            order: n,
            entries: out,
        })
    }

    /// Simultaneous row/column relabeling: entry `(i, j)` of the result is
    /// entry `(perm[i], perm[j])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.order)?;
        Ok(Self::from_fn(self.order, |i, j| self.get(perm[i], perm[j])))
    }

    /// Splits into an `order / block` square grid of blocks, row-major.
    pub fn block_split(&self, block: usize) -> Result<Vec<Vec<IntMatrix>>> {
        if block == 0 || self.order % block != 0 {
            return Err(Error::Dimension(format!(
                "block order {block} does not divide {}",
                self.order
            )));
        }
        let g = self.order / block;
        Ok((0..g)
            .map(|bi| {
                (0..g)
                    .map(|bj| {
                        IntMatrix::from_fn(block, |r, s| self.get(bi * block + r, bj * block + s))
                    })
                    .collect()
            })
            .collect())
    }
}

fn check_permutation(perm: &[usize], order: usize) -> Result<()> {
    if perm.len() != order {
        return Err(Error::Dimension(format!(
            "permutation of length {} applied to order {order}",
            perm.len()
        )));
    }
    let mut seen = vec![false; order];
    for &p in perm {
        if p >= order || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
    }
    Ok(())
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({})", self.order)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `A ⊗ B`: block `(i, j)` is `A[i][j] · B`.
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let (na, nb) = (a.order(), b.order());
    let n = na
        .checked_mul(nb)
        .ok_or_else(|| Error::SizeBound("kronecker order".into()))?;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..na {
        for r in 0..nb {
            for j in 0..na {
                let x = a.get(i, j);
                for s in 0..nb {
                    entries.push(
                        x.checked_mul(b.get(r, s))
                            .ok_or(Error::Overflow("kronecker product"))?,
                    );
                }
            }
        }
    }
    IntMatrix::new(n, entries)
}

/// Circulant matrix whose row `i` is `first_row` rotated right by `i`.
pub fn circulant(first_row: &[i64]) -> Result<IntMatrix> {
    let n = first_row.len();
    if n == 0 {
        return Err(Error::InvalidArgument("circulant needs a nonempty row".into()));
    }
    Ok(IntMatrix::from_fn(n, |i, j| first_row[(j + n - i) % n]))
}

/// The forward shift `circ(0, 1, 0, …, 0)` of order `n`.
pub fn shift(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, |i, j| i64::from(j == (i + 1) % n))
}

pub fn block_assemble(grid: &[Vec<IntMatrix>]) -> Result<IntMatrix> {
    let g = grid.len();
    if g == 0 {
        return Err(Error::Dimension("empty block grid".into()));
    }
    let h = grid[0]
        .first()
        .map(IntMatrix::order)
        .ok_or_else(|| Error::Dimension("empty block row".into()))?;
    for (i, row) in grid.iter().enumerate() {
        if row.len() != g {
            return Err(Error::Dimension(format!(
                "block row {i} has {} blocks, expected {g}",
                row.len()
            )));
        }
        if let Some((j, b)) = row.iter().enumerate().find(|(_, b)| b.order() != h) {
            return Err(Error::Dimension(format!(
                "block ({i},{j}) has order {}, expected {h}",
                b.order()
            )));
        }
    }
    Ok(IntMatrix::from_fn(g * h, |r, c| {
        grid[r / h][c / h].get(r % h, c % h)
    }))
}

/// The square `M·M`, right Gram `M·Mᵗ`, and left Gram `Mᵗ·M`.
pub fn gram_products(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let t = m.transpose();
    Ok((m.mul(m)?, m.mul(&t)?, t.mul(m)?))
}

/// A 0/1 adjacency matrix. Loops are only permitted when `loops_allowed`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Digraph {
    adjacency: IntMatrix,
    loops_allowed: bool,
}

impl Digraph {
    pub fn new(adjacency: IntMatrix, loops_allowed: bool) -> Result<Self> {
        if !adjacency.is_binary() {
            return Err(Error::InvalidArgument(
                "adjacency entries must be 0 or 1".into(),
            ));
        }
        if !loops_allowed {
            if let Some(i) = (0..adjacency.order()).find(|&i| adjacency.get(i, i) != 0) {
                return Err(Error::InvalidArgument(format!("loop at vertex {i}")));
            }
        }
        Ok(Self {
            adjacency,
            loops_allowed,
        })
    }

    /// Loop-free digraph.
    pub fn simple(adjacency: IntMatrix) -> Result<Self> {
        Self::new(adjacency, false)
    }

    /// Accepts any 0/1 matrix, allowing loops exactly when the diagonal has one.
    pub fn from_matrix(adjacency: IntMatrix) -> Result<Self> {
        let loops = adjacency.diagonal().iter().any(|&x| x != 0);
        Self::new(adjacency, loops)
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn into_adjacency(self) -> IntMatrix {
        self.adjacency
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    pub fn has_loops(&self) -> bool {
        self.adjacency.diagonal().iter().any(|&x| x != 0)
    }

    pub fn order(&self) -> usize {
        self.adjacency.order()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v) != 0
    }

    pub fn arc_count(&self) -> usize {
        self.adjacency.entries().iter().filter(|&&x| x != 0).count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency.is_symmetric()
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        Ok(Self {
            adjacency: self.adjacency.permute(perm)?,
            loops_allowed: self.loops_allowed,
        })
    }

    pub fn reverse(&self) -> Self {
        Self {
            adjacency: self.adjacency.transpose(),
            loops_allowed: self.loops_allowed,
        }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(loops_allowed={}) ", self.loops_allowed)?;
        self.adjacency.fmt(f)
    }
}
