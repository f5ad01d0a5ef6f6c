//! Constructions: lexicographic products, the skew-Hadamard family, twin and
//! Siamese twin graphs, the finite-field type-II family and the designs and
//! strongly regular graphs they consume.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::hadamard::HadamardMatrix;
use crate::matrix::{kronecker, shift, Digraph, IntMatrix};
use crate::scheme::quadratic_residue_matrix;
use crate::verify::{feasibility, verify_symmetric_design, DezaParams, DsrgParams};

/// Adjacency `M₁ ⊗ J_{n'} + I_n ⊗ M₂`.
pub fn lex_product(d1: &Digraph, d2: &Digraph) -> Result<Digraph> {
    let n2 = d2.order();
    let outer = kronecker(d1.adjacency(), &IntMatrix::ones(n2))?;
    let inner = kronecker(&IntMatrix::identity(d1.order()), d2.adjacency())?;
    Digraph::new(outer.add(&inner)?, d1.loops_allowed() || d2.loops_allowed())
}

pub fn empty_digraph(n: usize) -> Digraph {
    Digraph::simple(IntMatrix::zeros(n)).expect("zero matrix is a digraph")
}

/// Whether a DSRG `(n, k, λ, μ, t)` composed with a directed Deza graph
/// `(n', k', b, a, t')` is again directed Deza.
///
/// The two-path counts of the product are `tn' + a` and `tn' + b` inside a
/// copy of `D₂` (only the values `D₂` realizes), `λn' + 2k'` along arcs of
/// the DSRG and `μn'` along its non-arcs; at most two may occur.
pub fn lex_deza_condition(dsrg: &DsrgParams, deza: &DezaParams) -> Result<bool> {
    let f = feasibility(deza)?;
    let mut values = Vec::new();
    if deza.n > 1 {
        if f.alpha.numerator != 0 {
            values.push(dsrg.t * deza.n + deza.a);
        }
        if f.beta.numerator != 0 {
            values.push(dsrg.t * deza.n + deza.b);
        }
    }
    if dsrg.k > 0 {
        values.push(dsrg.lambda * deza.n + 2 * deza.k);
    }
    if dsrg.k + 1 < dsrg.n {
        values.push(dsrg.mu * deza.n);
    }
    values.sort_unstable();
    values.dedup();
    Ok(values.len() <= 2)
}

/// The closed-form parameter set the lexicographic-product theorem states,
/// `{a + kn', b + kn', μn', λn' + 2k'}`, kept for comparison with
/// [`lex_deza_condition`].
pub fn lex_condition_as_stated(dsrg: &DsrgParams, deza: &DezaParams) -> bool {
    let mut values = vec![
        deza.a + dsrg.k * deza.n,
        deza.b + dsrg.k * deza.n,
        dsrg.mu * deza.n,
        dsrg.lambda * deza.n + 2 * deza.k,
    ];
    values.sort_unstable();
    values.dedup();
    values.len() <= 2
}

/// Diagonal → `O₂`, `+1` → `I₂`, `−1` → `J₂ − I₂`.
pub fn skew_hadamard_deza(h: &HadamardMatrix) -> Result<Digraph> {
    if !h.is_skew_type() {
        return Err(Error::InvalidArgument("Hadamard matrix is not skew-type".into()));
    }
    let m = h.matrix();
    let n = m.order();
    if n % 4 != 0 {
        return Err(Error::InvalidArgument(format!("order {n} is not a multiple of 4")));
    }
    let adjacency = IntMatrix::from_fn(2 * n, |r, c| {
        let (i, j) = (r / 2, c / 2);
        let same = r % 2 == c % 2;
        match (i == j, m.get(i, j)) {
            (true, _) => 0,
            (false, 1) => i64::from(same),
            (false, _) => i64::from(!same),
        }
    });
    Digraph::simple(adjacency)
}

/// `count` consecutive classes of `size` vertices: `{0..size}, {size..2·size}, …`.
pub fn consecutive_classes(count: usize, size: usize) -> Vec<Vec<usize>> {
    (0..count).map(|c| (c * size..(c + 1) * size).collect()).collect()
}

/// `K = A − B` with disjoint 0/1 parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPair {
    pub signed: IntMatrix,
    pub positive_part: Digraph,
    pub negative_part: Digraph,
}

impl TwinPair {
    fn split(signed: IntMatrix) -> Result<Self> {
        let positive = Digraph::simple(signed.map(|x| i64::from(x > 0)))?;
        let negative = Digraph::simple(signed.map(|x| i64::from(x < 0)))?;
        Ok(Self {
            signed,
            positive_part: positive,
            negative_part: negative,
        })
    }
}

/// `r_iᵗ r_i` for each row of `h`.
fn row_outer_products(h: &IntMatrix) -> Vec<IntMatrix> {
    h.rows()
        .map(|r| IntMatrix::from_fn(r.len(), |i, j| r[i] * r[j]))
        .collect()
}

/// Substitutes `sign(s)·C_{|s|}` for each symbol `s` of the circulant with
/// first row `symbols`, zeroing the diagonal blocks.
fn substitute_zeroed(symbols: &[i64], blocks: &[IntMatrix]) -> IntMatrix {
    let g = symbols.len();
    let n = blocks[0].order();
    IntMatrix::from_fn(g * n, |r, c| {
        let (bi, bj) = (r / n, c / n);
        if bi == bj {
            return 0;
        }
        let s = symbols[(bj + g - bi) % g];
        s.signum() * blocks[s.unsigned_abs() as usize - 1].get(r % n, c % n)
    })
}

fn require_normalized(h: &HadamardMatrix) -> Result<()> {
    if h.is_normalized() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("Hadamard matrix is not normalized".into()))
    }
}

/// `(1, 2, …, n, n, n−1, …, 2)`.
pub fn twin_symbols(n: usize) -> Vec<i64> {
    let n = n as i64;
    (1..=n).chain((2..=n).rev()).collect()
}

/// `(1, 2, …, n, −n, −n+1, …, −2)`.
pub fn directed_twin_symbols(n: usize) -> Vec<i64> {
    let n = n as i64;
    (1..=n).chain((2..=n).rev().map(|i| -i)).collect()
}

pub fn twin_deza(h: &HadamardMatrix) -> Result<TwinPair> {
    require_normalized(h)?;
    let blocks = row_outer_products(h.matrix());
    TwinPair::split(substitute_zeroed(&twin_symbols(h.order()), &blocks))
}

fn add_cliques(d: &Digraph, n: usize) -> Result<Digraph> {
    let cliques = kronecker(&IntMatrix::identity(d.order() / n), &IntMatrix::ones(n))?;
    Digraph::new(d.adjacency().add(&cliques)?, true)
}

/// `A + I ⊗ C₁` and `B + I ⊗ C₁`; `C₁ = J_n` for normalized `H`.
pub fn siamese_reflexive(pair: &TwinPair, h: &HadamardMatrix) -> Result<(Digraph, Digraph)> {
    if twin_deza(h)? != *pair {
        return Err(Error::InvalidArgument(
            "twin pair was not built from this Hadamard matrix".into(),
        ));
    }
    let n = h.order();
    Ok((
        add_cliques(&pair.positive_part, n)?,
        add_cliques(&pair.negative_part, n)?,
    ))
}

/// Directed twin `K' = A − B` and the reflexive pair `A + I ⊗ C₁`, `B + I ⊗ C₁`.
pub fn twin_directed(h: &HadamardMatrix) -> Result<(TwinPair, (Digraph, Digraph))> {
    require_normalized(h)?;
    let n = h.order();
    let blocks = row_outer_products(h.matrix());
    let pair = TwinPair::split(substitute_zeroed(&directed_twin_symbols(n), &blocks))?;
    let reflexive = (
        add_cliques(&pair.positive_part, n)?,
        add_cliques(&pair.negative_part, n)?,
    );
    Ok((pair, reflexive))
}

/// Index of a block of `L`: the field elements and the extra symbol `y`
/// (the symbol `x` contributes only zero blocks and needs no index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Y,
    Element(FieldElement),
}

/// The finite-field family: `C_{a,α}` blocks and the symmetric circulant
/// arrangement `L` of order `2q + 3`.
///
/// `L` has `x` at position 0, `y` at position 1 and the field element with
/// index `i` at position `i + 2`, mirrored by `L_j = L_{2q+3−j}`.
pub struct FieldFamily<'f> {
    field: &'f FiniteField,
}

impl<'f> FieldFamily<'f> {
    pub fn new(field: &'f FiniteField) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidArgument("characteristic must be odd".into()));
        }
        Ok(Self { field })
    }

    pub fn field(&self) -> &FiniteField {
        self.field
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    /// Order of `L`.
    pub fn arrangement_order(&self) -> usize {
        2 * self.q() + 3
    }

    /// `y` followed by the field elements in index order.
    pub fn symbols(&self) -> Vec<Symbol> {
        std::iter::once(Symbol::Y)
            .chain(self.field.elements().map(Symbol::Element))
            .collect()
    }

    /// Position of a symbol in the first row of `L`, in `1..=q+1`.
    pub fn position(&self, a: Symbol) -> usize {
        match a {
            Symbol::Y => 1,
            Symbol::Element(e) => e.index() + 2,
        }
    }

    /// `C_{a,α}`, of order `q²`.
    pub fn block(&self, a: Symbol, alpha: FieldElement) -> IntMatrix {
        let f = self.field;
        let q = self.q();
        let elements: Vec<_> = f.elements().collect();
        match a {
            Symbol::Y => kronecker(&f.rep(alpha), &IntMatrix::ones(q)).expect("small orders"),
            Symbol::Element(gamma) => IntMatrix::from_fn(q * q, |r, c| {
                let (b, u) = (elements[r / q], elements[r % q]);
                let (b2, v) = (elements[c / q], elements[c % q]);
                let shift_by = f.add(f.mul(gamma, f.sub(b2, b)), alpha);
                i64::from(f.add(u, shift_by) == v)
            }),
        }
    }

    /// `V^p + V^{−p}` with `V` the forward shift of order `2q + 3`.
    pub fn indicator(&self, a: Symbol) -> IntMatrix {
        let n = self.arrangement_order();
        let p = self.position(a);
        IntMatrix::from_fn(n, |i, j| i64::from((j + n - i) % n == p || (i + n - j) % n == p))
    }

    /// `V^{2p} + V^{−2p}`.
    pub fn doubled_indicator(&self, a: Symbol) -> IntMatrix {
        let n = self.arrangement_order();
        let p = 2 * self.position(a) % n;
        IntMatrix::from_fn(n, |i, j| {
            i64::from((j + n - i) % n == p) + i64::from((i + n - j) % n == p)
        })
    }

    /// `N_α = Σ_a P_a ⊗ C_{a,α}` over `a ∈ F_q ∪ {y}`.
    pub fn matrix(&self, alpha: FieldElement) -> IntMatrix {
        let n = self.arrangement_order();
        let size = self.q() * self.q();
        let mut by_offset: Vec<Option<IntMatrix>> = vec![None; n];
        for a in self.symbols() {
            let p = self.position(a);
            let block = self.block(a, alpha);
            by_offset[p] = Some(block.clone());
            by_offset[n - p] = Some(block);
        }
        IntMatrix::from_fn(n * size, |r, c| {
            let offset = (c / size + n - r / size) % n;
            by_offset[offset]
                .as_ref()
                .map_or(0, |b| b.get(r % size, c % size))
        })
    }

    /// Right-hand side of the `N_α N_β` expansion.
    pub fn product_expansion(&self, alpha: FieldElement, beta: FieldElement) -> Result<IntMatrix> {
        let q = self.q() as i64;
        let n = self.arrangement_order();
        let s = self.field.add(alpha, beta);
        let phi = self.field.rep(s);
        let iq = IntMatrix::identity(self.q());
        let first = kronecker(&IntMatrix::identity(self.q() * n), &phi)?.scale(2 * q * q)?;
        let second = kronecker(
            &IntMatrix::identity(n),
            &kronecker(&phi.sub(&iq)?, &IntMatrix::ones(self.q()))?,
        )?
        .scale(2 * q)?;
        let third = IntMatrix::ones(n * self.q() * self.q()).scale(2 * q)?;
        let mut total = first.add(&second)?.add(&third)?;
        for a in self.symbols() {
            let term = kronecker(&self.doubled_indicator(a), &self.block(a, s))?.scale(q)?;
            total = total.add(&term)?;
        }
        Ok(total)
    }
}

/// `N_α` of order `(2q + 3)q²`.
pub fn field_type2(field: &FiniteField, alpha: FieldElement) -> Result<Digraph> {
    Digraph::simple(FieldFamily::new(field)?.matrix(alpha))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub q: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Checker {
    check: IdentityCheck,
}

impl Checker {
    fn new(name: &str, statement: &str) -> Self {
        Self {
            check: IdentityCheck {
                name: name.into(),
                statement: statement.into(),
                cases: 0,
                passed: true,
                counterexample: None,
            },
        }
    }

    fn case(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.check.cases += 1;
        if !holds && self.check.passed {
            self.check.passed = false;
            self.check.counterexample = Some(describe());
        }
    }
}

pub const MAX_IDENTITY_FIELD_ORDER: usize = 7;

fn symbol_name(a: Symbol) -> String {
    match a {
        Symbol::Y => "y".into(),
        Symbol::Element(e) => e.index().to_string(),
    }
}

/// Evaluates the block identities of the finite-field family and the
/// `N_α N_β` expansion over every index tuple.
pub fn check_field_identities(field: &FiniteField) -> Result<IdentityReport> {
    let fam = FieldFamily::new(field)?;
    let q = fam.q();
    if q > MAX_IDENTITY_FIELD_ORDER {
        return Err(Error::SizeBound(format!(
            "identity check supports q <= {MAX_IDENTITY_FIELD_ORDER}, got {q}"
        )));
    }
    let f = field;
    let elements: Vec<_> = f.elements().collect();
    let symbols = fam.symbols();
    let qi = q as i64;
    let size = q * q;
    let iq = IntMatrix::identity(q);
    let jq = IntMatrix::ones(q);
    let blocks: Vec<Vec<IntMatrix>> = symbols
        .iter()
        .map(|&a| elements.iter().map(|&al| fam.block(a, al)).collect())
        .collect();
    let blk = |ai: usize, al: FieldElement| &blocks[ai][al.index()];
    let mut checks = Vec::new();

    let mut c = Checker::new("transpose_blocks", "C_{a,α}ᵗ = C_{a,−α}");
    for (ai, &a) in symbols.iter().enumerate() {
        for &al in &elements {
            c.case(blk(ai, al).transpose() == *blk(ai, f.neg(al)), || {
                format!("a = {}, α = {}", symbol_name(a), al.index())
            });
        }
    }
    checks.push(c.check);

    let mut c = Checker::new("block_sum", "Σ_a C_{a,α} = qI ⊗ φ(α) + (J + φ(α) − I) ⊗ J");
    for &al in &elements {
        let mut sum = IntMatrix::zeros(size);
        for ai in 0..symbols.len() {
            sum = sum.add(blk(ai, al))?;
        }
        let phi = f.rep(al);
        let rhs = kronecker(&iq, &phi)?
            .scale(qi)?
            .add(&kronecker(&jq.add(&phi)?.sub(&iq)?, &jq)?)?;
        c.case(sum == rhs, || format!("α = {}", al.index()));
    }
    checks.push(c.check);

    let mut c = Checker::new("same_block_product", "C_{a,α} C_{a,α'} = q C_{a,α+α'}");
    for (ai, &a) in symbols.iter().enumerate() {
        for &al in &elements {
            for &al2 in &elements {
                let lhs = blk(ai, al).mul(blk(ai, al2))?;
                let rhs = blk(ai, f.add(al, al2)).scale(qi)?;
                c.case(lhs == rhs, || {
                    format!("a = {}, α = {}, α' = {}", symbol_name(a), al.index(), al2.index())
                });
            }
        }
    }
    checks.push(c.check);

    let mut c = Checker::new("distinct_block_product", "C_{a,α} C_{a',α'} = J for a ≠ a'");
    let j_size = IntMatrix::ones(size);
    for (ai, &a) in symbols.iter().enumerate() {
        for (bi, &b) in symbols.iter().enumerate().filter(|&(bi, _)| bi != ai) {
            for &al in &elements {
                for &al2 in &elements {
                    c.case(blk(ai, al).mul(blk(bi, al2))? == j_size, || {
                        format!(
                            "a = {}, a' = {}, α = {}, α' = {}",
                            symbol_name(a),
                            symbol_name(b),
                            al.index(),
                            al2.index()
                        )
                    });
                }
            }
        }
    }
    checks.push(c.check);

    let mut c = Checker::new("translate_field_block", "(I ⊗ φ(α'')) C_{α,α'} = C_{α,α'+α''}");
    for &al in &elements {
        let ai = al.index() + 1;
        for &al2 in &elements {
            for &al3 in &elements {
                let lhs = kronecker(&iq, &f.rep(al3))?.mul(blk(ai, al2))?;
                c.case(lhs == *blk(ai, f.add(al2, al3)), || {
                    format!("α = {}, α' = {}, α'' = {}", al.index(), al2.index(), al3.index())
                });
            }
        }
    }
    checks.push(c.check);

    let mut c = Checker::new("translate_y_block", "(I ⊗ φ(α)) C_{y,α'} = C_{y,α'}");
    for &al in &elements {
        for &al2 in &elements {
            let lhs = kronecker(&iq, &f.rep(al))?.mul(blk(0, al2))?;
            c.case(lhs == *blk(0, al2), || format!("α = {}, α' = {}", al.index(), al2.index()));
        }
    }
    checks.push(c.check);

    let mut c = Checker::new("indicator_products", "Σ_{a≠b} P_a P_b = 2q(J − I)");
    let n = fam.arrangement_order();
    let indicators: Vec<IntMatrix> = symbols.iter().map(|&a| fam.indicator(a)).collect();
    let mut sum = IntMatrix::zeros(n);
    for (i, pa) in indicators.iter().enumerate() {
        for (j, pb) in indicators.iter().enumerate() {
            if i != j {
                sum = sum.add(&pa.mul(pb)?)?;
            }
        }
    }
    let rhs = IntMatrix::ones(n).sub(&IntMatrix::identity(n))?.scale(2 * qi)?;
    c.case(sum == rhs, || "sum differs".into());
    checks.push(c.check);

    let matrices: Vec<IntMatrix> = elements.iter().map(|&al| fam.matrix(al)).collect();

    let mut c = Checker::new("transpose_family", "N_αᵗ = N_{−α}");
    for &al in &elements {
        c.case(
            matrices[al.index()].transpose() == matrices[f.neg(al).index()],
            || format!("α = {}", al.index()),
        );
    }
    checks.push(c.check);

    let mut c = Checker::new(
        "product_expansion",
        "N_α N_β = 2q² I ⊗ φ(α+β) + 2q I ⊗ (φ(α+β) − I) ⊗ J + 2q J + q Σ_a (V^{2p} + V^{−2p}) ⊗ C_{a,α+β}",
    );
    for &al in &elements {
        for &be in &elements {
            let lhs = matrices[al.index()].mul(&matrices[be.index()])?;
            c.case(lhs == fam.product_expansion(al, be)?, || {
                format!("α = {}, β = {}", al.index(), be.index())
            });
        }
    }
    checks.push(c.check);

    Ok(IdentityReport { q, checks })
}

/// Incidence of the quadratic-residue difference set of GF(q): `(u, v)` is
/// set iff `v − u` is a nonzero square. A symmetric
/// `(q, (q−1)/2, (q−3)/4)` design for `q ≡ 3 (mod 4)`.
pub fn qr_symmetric_design(q: u64) -> Result<IntMatrix> {
    if q % 4 != 3 {
        return Err(Error::InvalidArgument(format!("{q} is not 3 mod 4")));
    }
    Ok(quadratic_residue_matrix(&FiniteField::of_order(q)?))
}

/// `N ⊗ J_{n₂}`: a symmetric design composed with the empty digraph.
pub fn design_lex_empty(incidence: &IntMatrix, n2: usize) -> Result<Digraph> {
    verify_symmetric_design(incidence)?;
    if incidence.diagonal().iter().any(|&d| d != 0) {
        return Err(Error::InvalidArgument(
            "incidence matrix must have zero diagonal".into(),
        ));
    }
    if n2 == 0 {
        return Err(Error::InvalidArgument("n2 must be positive".into()));
    }
    Digraph::simple(kronecker(incidence, &IntMatrix::ones(n2))?)
}

/// Paley graph of GF(q), `q ≡ 1 (mod 4)`.
pub fn paley_graph(q: u64) -> Result<Digraph> {
    if q % 4 != 1 {
        return Err(Error::InvalidArgument(format!("{q} is not 1 mod 4")));
    }
    Digraph::simple(quadratic_residue_matrix(&FiniteField::of_order(q)?))
}

/// `V^p` for the forward shift of order `n`.
pub fn shift_power(n: usize, p: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    let v = shift(n);
    for _ in 0..p % n {
        m = m.mul(&v).expect("permutation matrices");
    }
    m
}
