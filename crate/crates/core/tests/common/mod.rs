#![allow(dead_code)]

use deza_core::{Digraph, HadamardMatrix, IntMatrix};

/// The order-8 directed Deza graph with parameters (8, 3, 3, 1, 0).
pub fn m1() -> Digraph {
    Digraph::simple(
        IntMatrix::from_rows(&[
            [0, 0, 1, 0, 1, 0, 1, 0],
            [0, 0, 0, 1, 0, 1, 0, 1],
            [0, 1, 0, 0, 1, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 1, 0],
            [0, 1, 0, 1, 0, 0, 1, 0],
            [1, 0, 1, 0, 0, 0, 0, 1],
            [0, 1, 1, 0, 0, 1, 0, 0],
            [1, 0, 0, 1, 1, 0, 0, 0],
        ])
        .unwrap(),
    )
    .unwrap()
}

/// The order-8 directed Deza graph with parameters (8, 4, 3, 1, 1).
pub fn m2() -> Digraph {
    Digraph::simple(
        IntMatrix::from_rows(&[
            [0, 1, 0, 1, 0, 1, 0, 1],
            [1, 0, 1, 0, 1, 0, 1, 0],
            [1, 0, 0, 1, 0, 1, 1, 0],
            [0, 1, 1, 0, 1, 0, 0, 1],
            [1, 0, 1, 0, 0, 1, 0, 1],
            [0, 1, 0, 1, 1, 0, 1, 0],
            [1, 0, 0, 1, 1, 0, 0, 1],
            [0, 1, 1, 0, 0, 1, 1, 0],
        ])
        .unwrap(),
    )
    .unwrap()
}

/// Skew-type Hadamard matrix of order 4 that yields `m1`.
pub fn skew_example() -> HadamardMatrix {
    HadamardMatrix::new(
        IntMatrix::from_rows(&[[1, 1, 1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1], [-1, 1, -1, 1]])
            .unwrap(),
    )
    .unwrap()
}

/// Normalized Hadamard matrix of order 4 used for the twin example.
pub fn twin_example() -> HadamardMatrix {
    HadamardMatrix::new(
        IntMatrix::from_rows(&[[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
            .unwrap(),
    )
    .unwrap()
}

pub fn directed_cycle(n: usize) -> Digraph {
    let mut row = vec![0; n];
    row[1 % n] = 1;
    Digraph::simple(deza_core::matrix::circulant(&row).unwrap()).unwrap()
}

/// `N_{uv}` counted by walking every intermediate vertex.
pub fn two_paths(m: &IntMatrix, u: usize, v: usize) -> i64 {
    (0..m.order()).filter(|&w| m.get(u, w) == 1 && m.get(w, v) == 1).count() as i64
}

/// α and β of vertex `u` by direct two-path counting.
pub fn alpha_beta_by_walks(m: &IntMatrix, u: usize, a: i64, b: i64) -> (usize, usize) {
    let others = || (0..m.order()).filter(move |&v| v != u);
    (
        others().filter(|&v| two_paths(m, u, v) == a).count(),
        others().filter(|&v| two_paths(m, u, v) == b).count(),
    )
}
