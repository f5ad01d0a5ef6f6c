//! Lexicographic-product recognition (`b = t` and type-II `b = k`),
//! exhaustive backtracking search for small Deza digraphs and DSRGs, and
//! canonical forms for isomorphism checks.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{kronecker, Digraph, IntMatrix};
use crate::verify::{
    equivalence_classes, feasibility, verify_deza_digraph, verify_dsrg, verify_symmetric_design,
    verify_type2, DezaParams, DsrgParams, Params,
};

pub const MAX_SEARCH_ORDER: usize = 10;
pub const MAX_CANONICAL_ORDER: usize = 10;

/// `D ≅ D₁[E_{n₂}]` with the quotient `D₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub quotient: Digraph,
    pub class_size: usize,
    /// Vertex → class index.
    pub class_map: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Parameters of the quotient: a DSRG or a symmetric design.
    pub quotient_params: Params,
}

impl Decomposition {
    /// Classes concatenated in order; relabeling the input by it gives
    /// `M_quotient ⊗ J_{n₂}`.
    pub fn class_order(&self) -> Vec<usize> {
        self.classes.concat()
    }
}

fn certify(d: &Digraph, classes: Vec<Vec<usize>>) -> Result<(Digraph, Vec<Vec<usize>>, usize)> {
    let size = classes[0].len();
    if let Some(c) = classes.iter().find(|c| c.len() != size) {
        return Err(Error::Decomposition(format!(
            "classes have unequal sizes {} and {size}",
            c.len()
        )));
    }
    let m = d.adjacency();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let quotient = IntMatrix::from_fn(classes.len(), |i, j| m.get(reps[i], reps[j]));
    let order: Vec<usize> = classes.concat();
    let sorted = m.permute(&order)?;
    if sorted != kronecker(&quotient, &IntMatrix::ones(size))? {
        return Err(Error::Decomposition(
            "class-sorted adjacency is not quotient ⊗ J".into(),
        ));
    }
    Ok((Digraph::simple(quotient)?, classes, size))
}

fn class_map(classes: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut map = vec![0; n];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            map[v] = c;
        }
    }
    map
}

fn non_equivalence_witness(n: usize, related: impl Fn(usize, usize) -> bool) -> String {
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            if related(u, v) != related(v, u) {
                return format!("R({u}, {v}) holds but R({v}, {u}) does not");
            }
            for w in (0..n).filter(|&w| w != u && w != v) {
                if related(u, v) && related(v, w) && !related(u, w) {
                    return format!("R({u}, {v}) and R({v}, {w}) hold but R({u}, {w}) does not");
                }
            }
        }
    }
    "relation is not an equivalence".into()
}

/// Recovers `D ≅ D₁[E_{n₂}]` for a directed Deza graph with `b = t`.
///
/// Vertices are related when they have `b` two-paths between them.
pub fn decompose_b_eq_t(d: &Digraph) -> Result<Decomposition> {
    let report = verify_deza_digraph(d)?;
    let p = report.deza_params().ok_or_else(|| {
        Error::Decomposition(format!(
            "not a directed Deza graph: {}",
            report.witness.clone().unwrap_or_default()
        ))
    })?;
    if p.b != p.t {
        return Err(Error::Decomposition(format!("b ≠ t ({} vs {})", p.b, p.t)));
    }
    let m = d.adjacency();
    let n = m.order();
    if p.a == p.b {
        return Err(Error::Decomposition(
            "a = b: every pair has b two-paths, so the relation is total".into(),
        ));
    }
    let square = m.mul(m)?;
    let related = |u: usize, v: usize| square.get(u, v) == p.b as i64;
    let classes = equivalence_classes(n, related)
        .ok_or_else(|| Error::Decomposition(non_equivalence_witness(n, related)))?;
    let beta = report.beta.unwrap_or(0) as usize;
    if classes.iter().any(|c| c.len() != beta + 1) {
        return Err(Error::Decomposition(format!(
            "class sizes differ from β + 1 = {}",
            beta + 1
        )));
    }
    let (quotient, classes, size) = certify(d, classes)?;
    let q = verify_dsrg(&quotient)?;
    let qp = q.dsrg_params().ok_or_else(|| {
        Error::Decomposition(format!(
            "quotient is not a DSRG: {}",
            q.witness.clone().unwrap_or_default()
        ))
    })?;
    // a one-vertex quotient has vacuous λ and μ
    if qp.lambda != qp.mu && quotient.order() > 1 {
        return Err(Error::Decomposition(format!(
            "quotient DSRG has λ = {} ≠ μ = {}",
            qp.lambda, qp.mu
        )));
    }
    Ok(Decomposition {
        quotient,
        class_size: size,
        class_map: class_map(&classes, n),
        classes,
        quotient_params: Params::Dsrg(qp),
    })
}

/// Recovers `D ≅ D₁[E_{n₂}]` with `D₁` a symmetric design for a type-II
/// Deza digraph with `b = k`; related vertices share `k` out-neighbours.
pub fn decompose_type2_b_eq_k(d: &Digraph) -> Result<Decomposition> {
    let report = verify_type2(d)?;
    let p = report.type2_params().ok_or_else(|| {
        Error::Decomposition(format!(
            "not a type-II Deza digraph: {}",
            report.witness.clone().unwrap_or_default()
        ))
    })?;
    if p.b != p.k {
        return Err(Error::Decomposition(format!("b ≠ k ({} vs {})", p.b, p.k)));
    }
    let m = d.adjacency();
    let n = m.order();
    let gram = m.mul(&m.transpose())?;
    let related = |u: usize, v: usize| gram.get(u, v) == p.k as i64;
    let classes = equivalence_classes(n, related)
        .ok_or_else(|| Error::Decomposition(non_equivalence_witness(n, related)))?;
    let (quotient, classes, size) = certify(d, classes)?;
    let design = verify_symmetric_design(quotient.adjacency())
        .map_err(|e| Error::Decomposition(format!("quotient is not a symmetric design: {e}")))?;
    Ok(Decomposition {
        quotient,
        class_size: size,
        class_map: class_map(&classes, n),
        classes,
        quotient_params: Params::Design(design),
    })
}

/// Row-major backtracking over loop-free 0/1 matrices with the given Deza
/// parameters. Rows are tried in increasing lexicographic order, so the
/// solutions come out in lexicographic adjacency order.
struct Search {
    n: usize,
    k: u32,
    t: u32,
    values: [u32; 2],
    /// Candidate rows per vertex, as column bitmasks in lexicographic order.
    candidates: Vec<Vec<u32>>,
}

impl Search {
    fn new(p: &DezaParams) -> Self {
        let n = p.n as usize;
        let k = p.k as u32;
        let mut candidates = Vec::with_capacity(n);
        for i in 0..n {
            let mut rows: Vec<u32> = (0u32..1 << n)
                .filter(|m| m.count_ones() == k && m & (1 << i) == 0)
                .collect();
            // column 0 is the most significant position of the row string
            rows.sort_by_key(|&m| (0..n).map(|j| (m >> j) & 1).collect::<Vec<_>>());
            candidates.push(rows);
        }
        Self {
            n,
            k,
            t: p.t as u32,
            values: [p.a as u32, p.b as u32],
            candidates,
        }
    }

    fn allowed(&self, lo: u32, hi: u32) -> bool {
        self.values.iter().any(|&v| lo <= v && v <= hi)
    }

    /// Checks the two-path bounds of every decided row after rows `0..=i`.
    fn consistent(&self, rows: &[u32], i: usize) -> bool {
        let n = self.n;
        let known: u32 = (1u32 << (i + 1)) - 1;
        let unknown: u32 = ((1u32 << n) - 1) & !known;
        // column bitmasks restricted to decided rows
        let cols: Vec<u32> = (0..n)
            .map(|v| (0..=i).fold(0, |acc, w| acc | (((rows[w] >> v) & 1) << w)))
            .collect();
        for u in 0..=i {
            let r = rows[u];
            for v in 0..n {
                let lo = (r & known & cols[v]).count_ones();
                let pending = r & unknown & !(1 << v);
                let hi = lo + pending.count_ones();
                if u == v {
                    if lo > self.t || hi < self.t {
                        return false;
                    }
                } else if !self.allowed(lo, hi) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&self, first_rows: &[u32], limit: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut rows = vec![0u32; self.n];
        let mut col_sums = vec![0u32; self.n];
        for &first in first_rows {
            rows[0] = first;
            for (j, c) in col_sums.iter_mut().enumerate() {
                *c = (first >> j) & 1;
            }
            if self.consistent(&rows, 0) {
                self.descend(1, &mut rows, &mut col_sums, limit, &mut out);
            }
            if out.len() >= limit {
                break;
            }
        }
        out
    }

    fn descend(
        &self,
        i: usize,
        rows: &mut Vec<u32>,
        col_sums: &mut Vec<u32>,
        limit: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == self.n {
            out.push(rows.clone());
            return;
        }
        let remaining_after = (self.n - i - 1) as u32;
        for &cand in &self.candidates[i] {
            let mut ok = true;
            for j in 0..self.n {
                let c = col_sums[j] + ((cand >> j) & 1);
                // rows still to come that may hit column j (row j itself cannot)
                let room = remaining_after - u32::from(j > i);
                if c > self.k || c + room < self.k {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for (j, c) in col_sums.iter_mut().enumerate() {
                *c += (cand >> j) & 1;
            }
            rows[i] = cand;
            if self.consistent(rows, i) {
                self.descend(i + 1, rows, col_sums, limit, out);
            }
            for (j, c) in col_sums.iter_mut().enumerate() {
                *c -= (cand >> j) & 1;
            }
            if out.len() >= limit {
                return;
            }
        }
        rows[i] = 0;
    }
}

fn rows_to_digraph(rows: &[u32]) -> Digraph {
    let n = rows.len();
    Digraph::simple(IntMatrix::from_fn(n, |i, j| i64::from((rows[i] >> j) & 1)))
        .expect("search rows avoid the diagonal")
}

fn check_search_order(n: u64) -> Result<()> {
    if n as usize > MAX_SEARCH_ORDER {
        return Err(Error::SizeBound(format!(
            "search supports n <= {MAX_SEARCH_ORDER}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub limit: usize,
    /// Keep one representative per isomorphism class. Vertex 0 is then
    /// restricted to its lexicographically first out-neighbourhood, which
    /// every isomorphism class can be relabeled to.
    pub canonical_dedup: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            limit: usize::MAX,
            canonical_dedup: false,
        }
    }
}

/// Every loop-free digraph with exactly the given directed Deza parameters,
/// in lexicographic adjacency order, up to `options.limit`.
pub fn search_deza_digraphs(p: &DezaParams, options: SearchOptions) -> Result<Vec<Digraph>> {
    p.check_invariants()?;
    check_search_order(p.n)?;
    if p.k >= p.n || options.limit == 0 {
        return Ok(Vec::new());
    }
    let search = Search::new(p);
    let first_rows: Vec<u32> = if options.canonical_dedup {
        search.candidates[0].iter().take(1).copied().collect()
    } else {
        search.candidates[0].clone()
    };
    let inner_limit = if options.canonical_dedup {
        usize::MAX
    } else {
        options.limit
    };
    // subtrees split by first row and merged in first-row order
    let found: Vec<Vec<Vec<u32>>> = if options.canonical_dedup || options.limit != usize::MAX {
        vec![search.run(&first_rows, inner_limit)]
    } else {
        first_rows
            .par_iter()
            .map(|&r| search.run(&[r], usize::MAX))
            .collect()
    };
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for rows in found.into_iter().flatten() {
        let d = rows_to_digraph(&rows);
        let report = verify_deza_digraph(&d)?;
        if report.deza_params() != Some(*p) {
            continue;
        }
        if options.canonical_dedup && !seen.insert(canonical_form(&d)?) {
            continue;
        }
        out.push(d);
        if out.len() >= options.limit {
            break;
        }
    }
    Ok(out)
}

/// DSRG parameter sets `(n, k, λ, μ, t)` with `0 < k < n − 1`, `t < k`
/// satisfying `k² = t + λk + μ(n − k − 1)`.
pub fn dsrg_parameter_sets(n: u64) -> Vec<DsrgParams> {
    let mut out = Vec::new();
    for k in 1..n.saturating_sub(1) {
        for t in 0..k {
            for lambda in 0..=k {
                for mu in 0..=k {
                    if k * k == t + lambda * k + mu * (n - k - 1) {
                        out.push(DsrgParams { n, k, lambda, mu, t });
                    }
                }
            }
        }
    }
    out
}

/// DSRGs with `t < k` on at most `n_max` vertices, one per isomorphism
/// class, ordered by parameters and then by lexicographic adjacency.
pub fn search_dsrg(n_max: u64, require_lambda_eq_mu: bool) -> Result<Vec<(DsrgParams, Digraph)>> {
    check_search_order(n_max)?;
    let sets: Vec<DsrgParams> = (2..=n_max)
        .flat_map(dsrg_parameter_sets)
        .filter(|p| !require_lambda_eq_mu || p.lambda == p.mu)
        .collect();
    let found: Vec<Result<Vec<(DsrgParams, Digraph)>>> = sets
        .par_iter()
        .map(|p| {
            let deza = DezaParams::new(p.n, p.k, p.lambda.max(p.mu), p.lambda.min(p.mu), p.t);
            let options = SearchOptions {
                limit: usize::MAX,
                canonical_dedup: true,
            };
            let mut hits = Vec::new();
            for d in search_deza_digraphs(&deza, options)? {
                if verify_dsrg(&d)?.dsrg_params() == Some(*p) {
                    hits.push((*p, d));
                }
            }
            Ok(hits)
        })
        .collect();
    let mut out = Vec::new();
    for hits in found {
        out.extend(hits?);
    }
    Ok(out)
}

/// Isomorphism-invariant vertex label used to order the refinement cells.
fn vertex_invariant(m: &IntMatrix, square: &IntMatrix, v: usize) -> (i64, i64, i64, i64, Vec<i64>) {
    let n = m.order();
    let out_deg: i64 = m.row(v).iter().sum();
    let in_deg: i64 = (0..n).map(|u| m.get(u, v)).sum();
    let mutual = (0..n).filter(|&u| u != v && m.get(u, v) == 1 && m.get(v, u) == 1).count() as i64;
    let mut profile: Vec<i64> = square.row(v).to_vec();
    profile.sort_unstable();
    (m.get(v, v), out_deg, in_deg, mutual, profile)
}

struct Canon<'a> {
    m: &'a IntMatrix,
    n: usize,
    /// For each new position, the vertices allowed there.
    cells: Vec<Vec<usize>>,
    best: Option<Vec<u8>>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl Canon<'_> {
    /// Entries added when position `i` is filled: `(r, i)` for `r < i`, then
    /// `(i, c)` for `c <= i`.
    fn layer(&self, i: usize) -> Vec<u8> {
        let p = &self.perm;
        let mut out = Vec::with_capacity(2 * i + 1);
        for r in 0..i {
            out.push(self.m.get(p[r], p[i]) as u8);
        }
        for c in 0..=i {
            out.push(self.m.get(p[i], p[c]) as u8);
        }
        out
    }

    fn go(&mut self, i: usize, prefix: &mut Vec<u8>) {
        if i == self.n {
            if self.best.as_ref().map_or(true, |b| prefix[..] < b[..]) {
                self.best = Some(prefix.clone());
            }
            return;
        }
        for idx in 0..self.cells[i].len() {
            let v = self.cells[i][idx];
            if self.used[v] {
                continue;
            }
            self.used[v] = true;
            self.perm[i] = v;
            let start = prefix.len();
            prefix.extend(self.layer(i));
            let keep = match &self.best {
                Some(b) => prefix[..] <= b[..prefix.len()],
                None => true,
            };
            if keep {
                self.go(i + 1, prefix);
            }
            prefix.truncate(start);
            self.used[v] = false;
        }
    }
}

/// Minimal adjacency string over all relabelings that list vertices in
/// increasing invariant order; equal iff the digraphs are isomorphic.
pub fn canonical_form(d: &Digraph) -> Result<Vec<u8>> {
    let m = d.adjacency();
    let n = m.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::SizeBound(format!(
            "canonical form supports n <= {MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let square = m.mul(m)?;
    let mut labelled: Vec<_> = (0..n).map(|v| (vertex_invariant(m, &square, v), v)).collect();
    labelled.sort();
    let cells: Vec<Vec<usize>> = labelled
        .iter()
        .map(|(inv, _)| {
            labelled
                .iter()
                .filter(|(other, _)| other == inv)
                .map(|&(_, v)| v)
                .collect()
        })
        .collect();
    let mut canon = Canon {
        m,
        n,
        cells,
        best: None,
        perm: vec![0; n],
        used: vec![false; n],
    };
    canon.go(0, &mut Vec::new());
    let mut out = vec![n as u8];
    out.extend(canon.best.unwrap_or_default());
    Ok(out)
}

/// Parameter tuples `(n, k, b, a, t)` with `n <= n_max` satisfying the
/// ordering invariants, in lexicographic order.
pub fn parameter_tuples(n_max: u64) -> Vec<DezaParams> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 0..=n {
            for b in 0..=k {
                for a in 0..=b {
                    for t in 0..=k {
                        out.push(DezaParams::new(n, k, b, a, t));
                    }
                }
            }
        }
    }
    out
}

/// `feasibility` treats contradictory tuples as errors; this folds them
/// into a plain rejection.
pub fn feasible(p: &DezaParams) -> bool {
    feasibility(p).map_or(false, |f| f.feasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{design_lex_empty, empty_digraph, lex_product, qr_symmetric_design};
    use crate::matrix::circulant;
    use crate::scheme::paley_tournament;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Digraph {
        let mut row = vec![0; n];
        row[1] = 1;
        Digraph::simple(circulant(&row).unwrap()).unwrap()
    }

    #[test]
    fn five_cycle_is_found() {
        let p = DezaParams::new(5, 1, 1, 0, 0);
        let found = search_deza_digraphs(&p, SearchOptions::default()).unwrap();
        assert!(found.contains(&cycle(5)));
        // 4! directed Hamiltonian cycles on 5 labelled vertices
        assert_eq!(found.len(), 24);
        let classes = search_deza_digraphs(
            &p,
            SearchOptions { limit: usize::MAX, canonical_dedup: true },
        )
        .unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn search_is_lexicographic_and_limited() {
        let p = DezaParams::new(5, 1, 1, 0, 0);
        let all = search_deza_digraphs(&p, SearchOptions::default()).unwrap();
        let strings: Vec<Vec<i64>> = all.iter().map(|d| d.adjacency().entries().to_vec()).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
        let first = search_deza_digraphs(&p, SearchOptions { limit: 3, canonical_dedup: false }).unwrap();
        assert_eq!(first[..], all[..3]);
    }

    #[test]
    fn contradictory_parameters_find_nothing() {
        let p = DezaParams::new(4, 2, 2, 2, 0);
        assert!(!feasible(&p));
        assert!(search_deza_digraphs(&p, SearchOptions::default()).unwrap().is_empty());
        assert!(matches!(
            search_deza_digraphs(&DezaParams::new(11, 2, 1, 0, 0), SearchOptions::default()),
            Err(Error::SizeBound(_))
        ));
    }

    #[test]
    fn canonical_form_examples() {
        let c3 = cycle(3);
        assert_eq!(canonical_form(&c3).unwrap(), canonical_form(&c3.reverse()).unwrap());
        let pt = paley_tournament(7).unwrap();
        assert_ne!(canonical_form(&pt).unwrap(), canonical_form(&cycle(7)).unwrap());
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant(
            bits in proptest::collection::vec(any::<bool>(), 49),
            perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let m = IntMatrix::from_fn(7, |i, j| i64::from(i != j && bits[i * 7 + j]));
            let d = Digraph::simple(m).unwrap();
            let relabeled = d.relabel(&perm).unwrap();
            prop_assert_eq!(canonical_form(&d).unwrap(), canonical_form(&relabeled).unwrap());
        }

        #[test]
        fn canonical_form_separates_edge_counts(
            bits in proptest::collection::vec(any::<bool>(), 36),
        ) {
            let m = IntMatrix::from_fn(6, |i, j| i64::from(i != j && bits[i * 6 + j]));
            let d = Digraph::simple(m).unwrap();
            let mut flipped = d.adjacency().clone();
            flipped.set(0, 1, 1 - flipped.get(0, 1));
            let e = Digraph::simple(flipped).unwrap();
            prop_assert_ne!(canonical_form(&d).unwrap(), canonical_form(&e).unwrap());
        }
    }

    #[test]
    fn dsrg_parameter_condition() {
        assert!(dsrg_parameter_sets(6).contains(&DsrgParams { n: 6, k: 2, lambda: 0, mu: 1, t: 1 }));
        assert!(dsrg_parameter_sets(7).contains(&DsrgParams { n: 7, k: 3, lambda: 1, mu: 2, t: 0 }));
    }

    #[test]
    fn type2_round_trip_fano() {
        let fano = qr_symmetric_design(7).unwrap();
        let d = design_lex_empty(&fano, 2).unwrap();
        let dec = decompose_type2_b_eq_k(&d).unwrap();
        assert_eq!(dec.class_size, 2);
        match dec.quotient_params {
            Params::Design(p) => assert_eq!((p.n, p.k, p.lambda), (7, 3, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn b_eq_t_rejects_other_graphs() {
        let d = lex_product(&paley_tournament(7).unwrap(), &empty_digraph(2)).unwrap();
        assert!(matches!(decompose_b_eq_t(&d), Err(Error::Decomposition(_))));
        assert!(matches!(decompose_b_eq_t(&cycle(5)), Err(Error::Decomposition(_))));
    }
}
