//! Association schemes: axiom checking, intersection numbers, and fusion
//! digraphs whose two-path counts are read off the intersection numbers.

use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::matrix::{Digraph, IntMatrix};
use crate::verify::{classify, DezaParams, Params, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationScheme {
    relations: Vec<IntMatrix>,
    /// `p[i][j][k]` flattened as `(i * (d+1) + j) * (d+1) + k`.
    intersection: Vec<i64>,
    transpose_index: Vec<usize>,
}

fn axiom(axiom: u8, detail: impl Into<String>) -> Error {
    Error::SchemeAxiom {
        axiom,
        detail: detail.into(),
    }
}

/// Checks the five scheme axioms in order and extracts `p_{i,j}^k`.
///
/// Each `p_{i,j}^k` is read at one representative pair of relation `k` and
/// the full identity `A_i A_j = Σ_k p_{i,j}^k A_k` is then checked entrywise.
pub fn verify_scheme(matrices: &[IntMatrix]) -> Result<AssociationScheme> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::InvalidArgument("a scheme needs at least one relation".into()))?;
    let n = first.order();
    if let Some((i, m)) = matrices
        .iter()
        .enumerate()
        .find(|(_, m)| m.order() != n || !m.is_binary())
    {
        return Err(Error::InvalidArgument(format!(
            "relation {i} is not a 0/1 matrix of order {n} (order {})",
            m.order()
        )));
    }
    let classes = matrices.len();

    if *first != IntMatrix::identity(n) {
        return Err(axiom(1, "A_0 is not the identity"));
    }

    let mut cover = vec![0i64; n * n];
    for m in matrices {
        for (c, &x) in cover.iter_mut().zip(m.entries()) {
            *c += x;
        }
    }
    if let Some(pos) = cover.iter().position(|&c| c != 1) {
        return Err(axiom(
            2,
            format!(
                "position ({}, {}) is covered {} times",
                pos / n,
                pos % n,
                cover[pos]
            ),
        ));
    }
    if let Some(i) = matrices.iter().position(IntMatrix::is_zero) {
        return Err(axiom(2, format!("relation {i} is empty")));
    }

    let mut transpose_index = Vec::with_capacity(classes);
    for (i, m) in matrices.iter().enumerate() {
        let t = m.transpose();
        let j = matrices
            .iter()
            .position(|other| *other == t)
            .ok_or_else(|| axiom(3, format!("transpose of A_{i} is not a relation")))?;
        transpose_index.push(j);
    }

    let representatives: Vec<(usize, usize)> = matrices
        .iter()
        .map(|m| {
            let pos = m.entries().iter().position(|&x| x == 1).expect("nonempty");
            (pos / n, pos % n)
        })
        .collect();
    let mut intersection = vec![0i64; classes * classes * classes];
    let mut products = Vec::with_capacity(classes * classes);
    for i in 0..classes {
        for j in 0..classes {
            let product = matrices[i].mul(&matrices[j])?;
            let mut combination = IntMatrix::zeros(n);
            for (k, &(x, y)) in representatives.iter().enumerate() {
                let p = product.get(x, y);
                intersection[(i * classes + j) * classes + k] = p;
                combination = combination.add(&matrices[k].scale(p)?)?;
            }
            if combination != product {
                let pos = product
                    .entries()
                    .iter()
                    .zip(combination.entries())
                    .position(|(a, b)| a != b)
                    .expect("matrices differ");
                return Err(axiom(
                    4,
                    format!(
                        "A_{i}A_{j} is not constant on relation {} (entry ({}, {}))",
                        matrices
                            .iter()
                            .position(|m| m.entries()[pos] == 1)
                            .expect("relations cover J"),
                        pos / n,
                        pos % n
                    ),
                ));
            }
            products.push(product);
        }
    }

    for i in 1..classes {
        for j in i + 1..classes {
            if products[i * classes + j] != products[j * classes + i] {
                return Err(axiom(5, format!("A_{i}A_{j} != A_{j}A_{i}")));
            }
        }
    }

    Ok(AssociationScheme {
        relations: matrices.to_vec(),
        intersection,
        transpose_index,
    })
}

impl AssociationScheme {
    /// Number of classes `d`.
    pub fn classes(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.relations[0].order()
    }

    pub fn relations(&self) -> &[IntMatrix] {
        &self.relations
    }

    pub fn p(&self, i: usize, j: usize, k: usize) -> i64 {
        let c = self.relations.len();
        self.intersection[(i * c + j) * c + k]
    }

    /// Index of the relation `A_iᵗ`.
    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose_index[i]
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose_index.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn valency(&self, i: usize) -> i64 {
        self.p(i, self.transpose_of(i), 0)
    }
}

/// The digraph `Σ_{f ∈ F} A_f`, with its Deza verdict computed purely from
/// intersection numbers.
///
/// Two-path counts on relation `k` are `Σ_{f,g ∈ F} p_{f,g}^k`; the number of
/// mutual neighbours is `Σ_{f ∈ F} p_{f,f}^0`.
pub fn fusion_digraph(
    scheme: &AssociationScheme,
    fused: &[usize],
) -> Result<(Digraph, VerificationReport)> {
    let d = scheme.classes();
    if fused.is_empty() {
        return Err(Error::InvalidArgument("fusion set is empty".into()));
    }
    let mut seen = vec![false; d + 1];
    for &f in fused {
        if f == 0 || f > d || std::mem::replace(&mut seen[f], true) {
            return Err(Error::InvalidArgument(format!(
                "fusion index {f} is not a distinct class in 1..={d}"
            )));
        }
    }
    let n = scheme.vertex_count();
    let mut adjacency = IntMatrix::zeros(n);
    for &f in fused {
        adjacency = adjacency.add(&scheme.relations()[f])?;
    }
    let digraph = Digraph::simple(adjacency)?;

    let k: i64 = fused.iter().map(|&f| scheme.valency(f)).sum();
    let pair_sum = |c: usize| -> i64 {
        fused
            .iter()
            .flat_map(|&f| fused.iter().map(move |&g| (f, g)))
            .map(|(f, g)| scheme.p(f, g, c))
            .sum()
    };
    // p_{f,g}^0 is nonzero only for g = fᵗ, so this counts mutual arcs even
    // when a fused class is non-symmetric
    let t = pair_sum(0);
    let mut values: Vec<i64> = (1..=d).map(pair_sum).collect();
    values.sort_unstable();
    values.dedup();

    let report = if values.len() <= 2 {
        let a = values.first().copied().unwrap_or(0);
        let b = values.last().copied().unwrap_or(0);
        let params = DezaParams {
            n: n as u64,
            k: k as u64,
            b: b as u64,
            a: a as u64,
            t: t as u64,
        };
        let mut report = VerificationReport::member(classify(&params), Params::Deza(params));
        report.note = Some(format!("two-path values from intersection numbers: {values:?}"));
        report
    } else {
        VerificationReport::failure(format!(
            "fused intersection numbers take {} values: {values:?}",
            values.len()
        ))
    };
    Ok((digraph, report))
}

/// Relations `{I, A, Aᵗ}` of the Paley tournament on GF(q).
pub fn paley_tournament_relations(q: u64) -> Result<Vec<IntMatrix>> {
    let a = paley_tournament(q)?.into_adjacency();
    Ok(vec![IntMatrix::identity(a.order()), a.clone(), a.transpose()])
}

/// Arc `u → v` iff `v − u` is a nonzero square of GF(q), `q ≡ 3 (mod 4)`.
pub fn paley_tournament(q: u64) -> Result<Digraph> {
    if prime_power(q).map_or(true, |(p, _)| p == 2) || q % 4 != 3 {
        return Err(Error::InvalidArgument(format!(
            "{q} is not an odd prime power congruent to 3 mod 4"
        )));
    }
    Digraph::simple(quadratic_residue_matrix(&FiniteField::of_order(q)?))
}

/// 0/1 matrix with `(u, v)` set iff `v − u` is a nonzero square.
pub(crate) fn quadratic_residue_matrix(field: &FiniteField) -> IntMatrix {
    let squares = field.square_table();
    let elements: Vec<_> = field.elements().collect();
    IntMatrix::from_fn(field.order(), |u, v| {
        i64::from(squares[field.sub(elements[v], elements[u]).index()])
    })
}
