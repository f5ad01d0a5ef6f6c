//! Classification of 0/1 matrices as directed Deza graphs, DSRGs, type-II
//! Deza digraphs, divisible design digraphs, (reflexive) Deza graphs and
//! symmetric designs.
//!
//! Membership failures are reported as a [`VerificationReport`] with a
//! witness; `Err` is reserved for inputs that violate a verifier's
//! precondition (wrong shape, loops where none are allowed, and so on).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Digraph, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    DezaDigraph,
    DezaGraph,
    Dsrg,
    Srg,
    #[serde(rename = "typeII")]
    TypeII,
    Ddd,
    ReflexiveDezaGraph,
    ReflexiveDirectedDeza,
    SymmetricDesign,
    NotMember,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::DezaDigraph => "deza_digraph",
            Classification::DezaGraph => "deza_graph",
            Classification::Dsrg => "dsrg",
            Classification::Srg => "srg",
            Classification::TypeII => "typeII",
            Classification::Ddd => "ddd",
            Classification::ReflexiveDezaGraph => "reflexive_deza_graph",
            Classification::ReflexiveDirectedDeza => "reflexive_directed_deza",
            Classification::SymmetricDesign => "symmetric_design",
            Classification::NotMember => "not_member",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DezaParams {
    pub n: u64,
    pub k: u64,
    pub b: u64,
    pub a: u64,
    pub t: u64,
}

impl DezaParams {
    pub fn new(n: u64, k: u64, b: u64, a: u64, t: u64) -> Self {
        Self { n, k, b, a, t }
    }

    pub fn check_invariants(&self) -> Result<()> {
        let Self { n, k, b, a, t } = *self;
        if a <= b && b <= k && k <= n && t <= k {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "parameters ({n},{k},{b},{a},{t}) violate 0 <= a <= b <= k <= n, t <= k"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeIIParams {
    pub n: u64,
    pub k: u64,
    pub b: u64,
    pub a: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsrgParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub t: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DddParams {
    pub v: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub m: u64,
    pub n_class: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DesignParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Params {
    Deza(DezaParams),
    #[serde(rename = "typeII")]
    TypeII(TypeIIParams),
    Dsrg(DsrgParams),
    Ddd(DddParams),
    Design(DesignParams),
}

/// Serializable view of an exact rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: i64,
    pub denominator: i64,
}

impl From<Ratio<i64>> for Fraction {
    fn from(r: Ratio<i64>) -> Self {
        Self {
            numerator: *r.numer(),
            denominator: *r.denom(),
        }
    }
}

impl Fraction {
    pub fn as_integer(&self) -> Option<i64> {
        (self.denominator == 1).then_some(self.numerator)
    }
}

/// Diagonal and off-diagonal value profile of one product matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductStatistic {
    /// `"square"` for `M·M`, `"gram"` for `M·Mᵗ`.
    pub name: String,
    /// The common diagonal value, if the diagonal is constant.
    pub diagonal: Option<i64>,
    /// Distinct off-diagonal values, ascending.
    pub off_diagonal: Vec<i64>,
    /// For `"gram"`: whether `M·Mᵗ = Mᵗ·M`.
    pub commutes: Option<bool>,
    /// Constant diagonal and at most two off-diagonal values.
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub classification: Classification,
    pub params: Option<Params>,
    /// `|{v : N_uv = a}|`, counted directly.
    pub alpha: Option<u64>,
    /// `|{v : N_uv = b}|`, counted directly.
    pub beta: Option<u64>,
    pub alpha_formula: Option<Fraction>,
    pub beta_formula: Option<Fraction>,
    /// Direct counts agree with the closed forms and are vertex-independent.
    pub formula_consistent: Option<bool>,
    #[serde(skip)]
    pub children: Option<(Digraph, Digraph)>,
    /// Which product the parameters describe: `"square"` (`M²`) or `"gram"`
    /// (`M·Mᵗ`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realized_by: Option<String>,
    pub witness: Option<String>,
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub statistics: Vec<ProductStatistic>,
}

impl VerificationReport {
    pub fn member(classification: Classification, params: Params) -> Self {
        Self {
            classification,
            params: Some(params),
            alpha: None,
            beta: None,
            alpha_formula: None,
            beta_formula: None,
            formula_consistent: None,
            children: None,
            realized_by: None,
            witness: None,
            note: None,
            statistics: Vec::new(),
        }
    }

    pub fn failure(witness: impl Into<String>) -> Self {
        Self {
            classification: Classification::NotMember,
            params: None,
            alpha: None,
            beta: None,
            alpha_formula: None,
            beta_formula: None,
            formula_consistent: None,
            children: None,
            realized_by: None,
            witness: Some(witness.into()),
            note: None,
            statistics: Vec::new(),
        }
    }

    pub fn is_member(&self) -> bool {
        self.classification != Classification::NotMember
    }

    pub fn deza_params(&self) -> Option<DezaParams> {
        match self.params {
            Some(Params::Deza(p)) => Some(p),
            _ => None,
        }
    }

    pub fn type2_params(&self) -> Option<TypeIIParams> {
        match self.params {
            Some(Params::TypeII(p)) => Some(p),
            _ => None,
        }
    }

    pub fn dsrg_params(&self) -> Option<DsrgParams> {
        match self.params {
            Some(Params::Dsrg(p)) => Some(p),
            _ => None,
        }
    }

    pub fn ddd_params(&self) -> Option<DddParams> {
        match self.params {
            Some(Params::Ddd(p)) => Some(p),
            _ => None,
        }
    }
}

/// Tag for a two-valued `M²` profile: `a = b` is strongly regular, `t = k`
/// means every arc is mutual (an undirected graph).
pub fn classify(p: &DezaParams) -> Classification {
    match (p.a == p.b, p.t == p.k) {
        (true, true) => Classification::Srg,
        (true, false) => Classification::Dsrg,
        (false, true) => Classification::DezaGraph,
        (false, false) => Classification::DezaDigraph,
    }
}

fn regular_degree(m: &IntMatrix) -> std::result::Result<i64, String> {
    let rows = m.row_sums();
    let cols = m.column_sums();
    let k = rows[0];
    if let Some(i) = rows.iter().position(|&r| r != k) {
        return Err(format!("row {i} has sum {}, row 0 has {k}", rows[i]));
    }
    if let Some(j) = cols.iter().position(|&c| c != k) {
        return Err(format!("column {j} has sum {}, rows have {k}", cols[j]));
    }
    Ok(k)
}

fn off_diagonal_values(m: &IntMatrix) -> Vec<i64> {
    let n = m.order();
    let mut values: Vec<i64> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| m.get(i, j)))
        .collect();
    values.sort_unstable();
    values.dedup();
    values
}

fn constant_diagonal(m: &IntMatrix) -> Option<i64> {
    let d = m.diagonal();
    d.iter().all(|&x| x == d[0]).then_some(d[0])
}

/// Outcome of splitting a product matrix into `a·X + b·Y + c·I`.
struct TwoValued {
    a: i64,
    b: i64,
    x: IntMatrix,
    y: IntMatrix,
    alpha: u64,
    beta: u64,
    row_independent: bool,
}

fn split_two_values(product: &IntMatrix) -> std::result::Result<TwoValued, String> {
    let n = product.order();
    let values = off_diagonal_values(product);
    if values.len() > 2 {
        return Err(format!("off-diagonal values {values:?}"));
    }
    let a = values.first().copied().unwrap_or(0);
    let b = values.last().copied().unwrap_or(0);
    // a = b: every off-diagonal position belongs to X and Y is empty
    let x = IntMatrix::from_fn(n, |i, j| i64::from(i != j && product.get(i, j) == a));
    let y = IntMatrix::from_fn(n, |i, j| i64::from(i != j && a != b && product.get(i, j) == b));
    let count = |i: usize, v: i64| (0..n).filter(|&j| j != i && product.get(i, j) == v).count() as u64;
    let (alpha, beta) = (count(0, a), count(0, b));
    let row_independent = (0..n).all(|i| count(i, a) == alpha && count(i, b) == beta);
    Ok(TwoValued {
        a,
        b,
        x,
        y,
        alpha,
        beta,
        row_independent,
    })
}

/// Closed forms for `α`, `β` given the diagonal constant `c` of the product
/// (`t` for `M²`, `k` for `M·Mᵗ`). `None` when `a = b = 0`.
fn alpha_beta_closed_form(n: i64, k: i64, b: i64, a: i64, c: i64) -> Option<(Ratio<i64>, Ratio<i64>)> {
    if a != b {
        Some((
            Ratio::new(b * (n - 1) - k * k + c, b - a),
            Ratio::new(a * (n - 1) - k * k + c, a - b),
        ))
    } else if a != 0 {
        let v = Ratio::new(k * k - c, a);
        Some((v, v))
    } else {
        None
    }
}

fn fill_alpha_beta(report: &mut VerificationReport, split: &TwoValued, n: i64, k: i64, c: i64) {
    report.alpha = Some(split.alpha);
    report.beta = Some(split.beta);
    let closed = alpha_beta_closed_form(n, k, split.b, split.a, c);
    report.alpha_formula = closed.map(|(x, _)| x.into());
    report.beta_formula = closed.map(|(_, y)| y.into());
    let agrees = closed.map_or(true, |(x, y)| {
        x == Ratio::from_integer(split.alpha as i64) && y == Ratio::from_integer(split.beta as i64)
    });
    report.formula_consistent = Some(agrees && split.row_independent);
}

fn digraph_of(m: IntMatrix) -> Digraph {
    Digraph::simple(m).expect("children are loop-free 0/1 matrices")
}

/// Directed `(n, k, b, a, t)`-Deza graph check via `M² = aX + bY + tI`.
pub fn verify_deza_digraph(d: &Digraph) -> Result<VerificationReport> {
    if d.has_loops() {
        return Err(Error::Precondition(
            "directed Deza verification needs a loop-free digraph".into(),
        ));
    }
    let m = d.adjacency();
    let n = m.order();
    let k = match regular_degree(m) {
        Ok(k) => k,
        Err(w) => return Ok(VerificationReport::failure(format!("not regular: {w}"))),
    };

    let mutual: Vec<i64> = (0..n)
        .map(|u| (0..n).filter(|&v| m.get(u, v) == 1 && m.get(v, u) == 1).count() as i64)
        .collect();
    let t = mutual[0];
    if let Some(u) = mutual.iter().position(|&c| c != t) {
        return Ok(VerificationReport::failure(format!(
            "vertex {u} is adjacent to {} vertices, vertex 0 to {t}",
            mutual[u]
        )));
    }
    let square = m.mul(m)?;
    if let Some(u) = (0..n).find(|&u| square.get(u, u) != t) {
        return Ok(VerificationReport::failure(format!(
            "diagonal of M² at {u} is {}, mutual count is {t}",
            square.get(u, u)
        )));
    }
    let split = match split_two_values(&square) {
        Ok(s) => s,
        Err(w) => return Ok(VerificationReport::failure(format!("M² has {w}"))),
    };
    let params = DezaParams::new(n as u64, k as u64, split.b as u64, split.a as u64, t as u64);
    let mut report = VerificationReport::member(classify(&params), Params::Deza(params));
    fill_alpha_beta(&mut report, &split, n as i64, k, t);
    report.children = Some((digraph_of(split.x), digraph_of(split.y)));
    report.realized_by = Some("square".into());
    Ok(report)
}

/// The Deza children `(D_X, D_Y)` of a successful Deza classification.
pub fn deza_children(report: &VerificationReport) -> Result<(Digraph, Digraph)> {
    match (&report.params, &report.children) {
        (Some(Params::Deza(_) | Params::TypeII(_)), Some(children)) => Ok(children.clone()),
        _ => Err(Error::InvalidArgument(
            "report is not a Deza classification with children".into(),
        )),
    }
}

/// `a·X + b·Y + c·I` from a report's children and parameters, where `c` is
/// `t` for Deza reports and `k` for type-II reports. Compare with
/// [`realized_product`].
pub fn reconstruct_product(report: &VerificationReport) -> Result<IntMatrix> {
    let (x, y) = deza_children(report)?;
    let (a, b, c) = match report.params {
        Some(Params::Deza(p)) => (p.a, p.b, p.t),
        Some(Params::TypeII(p)) => (p.a, p.b, p.k),
        _ => unreachable!("deza_children checked the params"),
    };
    let n = x.order();
    x.adjacency()
        .scale(a as i64)?
        .add(&y.adjacency().scale(b as i64)?)?
        .add(&IntMatrix::identity(n).scale(c as i64)?)
}

/// The product a report's parameters describe: `M²` or `M·Mᵗ`.
pub fn realized_product(d: &Digraph, report: &VerificationReport) -> Result<IntMatrix> {
    let m = d.adjacency();
    match report.realized_by.as_deref() {
        Some("square") => m.mul(m),
        Some("gram") => m.mul(&m.transpose()),
        _ => Err(Error::InvalidArgument("report names no realized product".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub alpha: Fraction,
    pub beta: Fraction,
    /// `b − a` divides both numerators (or `a` divides `k² − t` when `a = b`).
    pub divisible: bool,
    /// `a(n−1) < k² − t < b(n−1)`; `None` when it is not required.
    pub inequality: Option<bool>,
    pub feasible: bool,
}

/// Necessary conditions on `(n, k, b, a, t)` from the closed forms for `α`, `β`.
///
/// With `a = b` the closed form must also equal `n − 1`, since then every
/// other vertex is counted by both `α` and `β`.
pub fn feasibility(p: &DezaParams) -> Result<Feasibility> {
    p.check_invariants()?;
    let (n, k, b, a, t) = (p.n as i64, p.k as i64, p.b as i64, p.a as i64, p.t as i64);
    let excess = k * k - t;
    if a == b && a == 0 {
        if excess != 0 {
            return Err(Error::InvalidArgument(format!(
                "a = b = 0 forces k² = t, but k² − t = {excess}"
            )));
        }
        let all = Fraction::from(Ratio::from_integer(n - 1));
        return Ok(Feasibility {
            alpha: all,
            beta: all,
            divisible: true,
            inequality: None,
            feasible: true,
        });
    }
    let (alpha, beta) = alpha_beta_closed_form(n, k, b, a, t).expect("a and b not both zero");
    let divisible = alpha.is_integer() && beta.is_integer();
    let nonnegative = alpha >= Ratio::from_integer(0) && beta >= Ratio::from_integer(0);
    let inequality = (a != b && alpha != Ratio::from_integer(0) && beta != Ratio::from_integer(0))
        .then(|| a * (n - 1) < excess && excess < b * (n - 1));
    let consistent = a != b || alpha == Ratio::from_integer(n - 1);
    Ok(Feasibility {
        alpha: alpha.into(),
        beta: beta.into(),
        divisible,
        inequality,
        feasible: divisible && nonnegative && inequality.unwrap_or(true) && consistent,
    })
}

/// Fits `M² = tI + λM + μ(J − I − M)`. A value with no positions to occupy
/// (`λ` for the empty digraph, `μ` for the complete one) is reported as 0.
pub fn verify_dsrg(d: &Digraph) -> Result<VerificationReport> {
    if d.has_loops() {
        return Err(Error::Precondition("DSRG verification needs a loop-free digraph".into()));
    }
    let m = d.adjacency();
    let n = m.order();
    let k = match regular_degree(m) {
        Ok(k) => k,
        Err(w) => return Ok(VerificationReport::failure(format!("not regular: {w}"))),
    };
    let square = m.mul(m)?;
    let t = match constant_diagonal(&square) {
        Some(t) => t,
        None => return Ok(VerificationReport::failure("diagonal of M² is not constant")),
    };
    let (mut lambda, mut mu) = (None, None);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let slot = if m.get(i, j) == 1 { &mut lambda } else { &mut mu };
            let v = square.get(i, j);
            match *slot {
                None => *slot = Some(v),
                Some(prev) if prev != v => {
                    let which = if m.get(i, j) == 1 { "arcs" } else { "non-arcs" };
                    return Ok(VerificationReport::failure(format!(
                        "M² takes values {prev} and {v} on {which} (at ({i}, {j}))"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let params = DsrgParams {
        n: n as u64,
        k: k as u64,
        lambda: lambda.unwrap_or(0) as u64,
        mu: mu.unwrap_or(0) as u64,
        t: t as u64,
    };
    let classification = if t == k {
        Classification::Srg
    } else {
        Classification::Dsrg
    };
    Ok(VerificationReport::member(classification, Params::Dsrg(params)))
}

/// Type-II check: `M·Mᵗ = Mᵗ·M = aX + bY + kI`.
pub fn verify_type2(d: &Digraph) -> Result<VerificationReport> {
    if d.has_loops() && !d.loops_allowed() {
        return Err(Error::Precondition("unexpected loops".into()));
    }
    let m = d.adjacency();
    let n = m.order();
    let k = match regular_degree(m) {
        Ok(k) => k,
        Err(w) => return Ok(VerificationReport::failure(format!("not regular: {w}"))),
    };
    let t = m.transpose();
    let right = m.mul(&t)?;
    let left = t.mul(m)?;
    if let Some(pos) = right
        .entries()
        .iter()
        .zip(left.entries())
        .position(|(x, y)| x != y)
    {
        return Ok(VerificationReport::failure(format!(
            "M·Mᵗ and Mᵗ·M differ at ({}, {}): {} vs {}",
            pos / n,
            pos % n,
            right.entries()[pos],
            left.entries()[pos]
        )));
    }
    let split = match split_two_values(&right) {
        Ok(s) => s,
        Err(w) => return Ok(VerificationReport::failure(format!("M·Mᵗ has {w}"))),
    };
    let params = TypeIIParams {
        n: n as u64,
        k: k as u64,
        b: split.b as u64,
        a: split.a as u64,
    };
    let mut report = VerificationReport::member(Classification::TypeII, Params::TypeII(params));
    fill_alpha_beta(&mut report, &split, n as i64, k, k);
    report.children = Some((digraph_of(split.x), digraph_of(split.y)));
    report.realized_by = Some("gram".into());
    Ok(report)
}

fn check_partition(partition: &[Vec<usize>], n: usize) -> Result<Vec<usize>> {
    let size = partition
        .first()
        .map(Vec::len)
        .filter(|&s| s > 0)
        .ok_or_else(|| Error::Precondition("partition has no nonempty classes".into()))?;
    let mut class_of = vec![usize::MAX; n];
    for (c, class) in partition.iter().enumerate() {
        if class.len() != size {
            return Err(Error::Precondition(format!(
                "class {c} has size {}, class 0 has {size}",
                class.len()
            )));
        }
        for &v in class {
            if v >= n || class_of[v] != usize::MAX {
                return Err(Error::Precondition(format!(
                    "vertex {v} is out of range or listed twice"
                )));
            }
            class_of[v] = c;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Precondition(format!("vertex {v} is in no class")));
    }
    Ok(class_of)
}

/// Divisible design digraph check against an explicit equal-size partition.
///
/// For distinct `x, y` the number of `z` dominating both (`(Mᵗ·M)_{xy}`) and
/// the number of `z` dominated by both (`(M·Mᵗ)_{xy}`) must coincide and
/// equal `λ₁` inside a class, `λ₂` across classes.
pub fn verify_ddd(d: &Digraph, partition: &[Vec<usize>]) -> Result<VerificationReport> {
    let m = d.adjacency();
    let n = m.order();
    if d.has_loops() {
        return Err(Error::Precondition("a DDD has no loops".into()));
    }
    if let Some((i, j)) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| m.get(i, j) == 1 && m.get(j, i) == 1)
    {
        return Err(Error::Precondition(format!(
            "digraph is not asymmetric: arcs both ways between {i} and {j}"
        )));
    }
    let class_of = check_partition(partition, n)?;
    let k = match regular_degree(m) {
        Ok(k) => k,
        Err(w) => return Ok(VerificationReport::failure(format!("not regular: {w}"))),
    };
    let t = m.transpose();
    let dominated = m.mul(&t)?;
    let dominating = t.mul(m)?;
    let (mut within, mut across) = (None, None);
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let v = dominated.get(x, y);
            if dominating.get(x, y) != v {
                return Ok(VerificationReport::failure(format!(
                    "pair ({x}, {y}): {} vertices dominate both, {v} are dominated by both",
                    dominating.get(x, y)
                )));
            }
            let (slot, label) = if class_of[x] == class_of[y] {
                (&mut within, "within")
            } else {
                (&mut across, "across")
            };
            match *slot {
                None => *slot = Some(v),
                Some(prev) if prev != v => {
                    return Ok(VerificationReport::failure(format!(
                        "count {v} at pair ({x}, {y}) differs from {prev} {label} classes"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let params = DddParams {
        v: n as u64,
        k: k as u64,
        lambda1: within.unwrap_or(0) as u64,
        lambda2: across.unwrap_or(0) as u64,
        m: partition.len() as u64,
        n_class: partition[0].len() as u64,
    };
    let mut report = VerificationReport::member(Classification::Ddd, Params::Ddd(params));
    if within.is_none() || across.is_none() {
        report.note = Some(format!(
            "{} is vacuous",
            if within.is_none() { "lambda1" } else { "lambda2" }
        ));
    }
    Ok(report)
}

/// Tries to recover a DDD partition from `M·Mᵗ`: the pairs carrying one of
/// its two off-diagonal values (rarer value first) must form an equivalence
/// relation with equal classes. A single value yields singleton classes.
pub fn discover_ddd_partition(d: &Digraph) -> Option<Vec<Vec<usize>>> {
    let m = d.adjacency();
    let n = m.order();
    let gram = m.mul(&m.transpose()).ok()?;
    let values = off_diagonal_values(&gram);
    match values.len() {
        0 | 1 => return Some((0..n).map(|v| vec![v]).collect()),
        2 => {}
        _ => return None,
    }
    let frequency = |v: i64| gram.entries().iter().filter(|&&x| x == v).count();
    let mut candidates = values.clone();
    candidates.sort_by_key(|&v| frequency(v));
    candidates
        .into_iter()
        .find_map(|v| equivalence_classes(n, |x, y| gram.get(x, y) == v))
        .filter(|classes| classes.iter().all(|c| c.len() == classes[0].len()))
}

/// Classes of the reflexive closure of `related`, if it is an equivalence.
/// Classes are ordered by smallest member, members ascending.
pub(crate) fn equivalence_classes(
    n: usize,
    related: impl Fn(usize, usize) -> bool,
) -> Option<Vec<Vec<usize>>> {
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class_of[u] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = std::iter::once(u)
            .chain((u + 1..n).filter(|&v| related(u, v)))
            .collect();
        for &v in &members {
            if class_of[v] != usize::MAX {
                return None;
            }
            class_of[v] = classes.len();
        }
        classes.push(members);
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            if related(x, y) != (class_of[x] == class_of[y]) {
                return None;
            }
        }
    }
    Some(classes)
}

/// Undirected Deza graph check; with `reflexive` every vertex carries a loop
/// that counts towards its degree.
pub fn verify_deza_graph(g: &Digraph, reflexive: bool) -> Result<VerificationReport> {
    let m = g.adjacency();
    let n = m.order();
    if !m.is_symmetric() {
        return Err(Error::Precondition("Deza graph input must be symmetric".into()));
    }
    let wanted_loop = i64::from(reflexive);
    if let Some(u) = (0..n).find(|&u| m.get(u, u) != wanted_loop) {
        return Err(Error::Precondition(format!(
            "vertex {u} {} a loop",
            if reflexive { "lacks" } else { "has" }
        )));
    }
    let k = match regular_degree(m) {
        Ok(k) => k,
        Err(w) => return Ok(VerificationReport::failure(format!("not regular: {w}"))),
    };
    let square = m.mul(m)?;
    let split = match split_two_values(&square) {
        Ok(s) => s,
        Err(w) => return Ok(VerificationReport::failure(format!("M² has {w}"))),
    };
    let params = DezaParams::new(n as u64, k as u64, split.b as u64, split.a as u64, k as u64);
    let classification = match (reflexive, split.a == split.b) {
        (true, _) => Classification::ReflexiveDezaGraph,
        (false, true) => Classification::Srg,
        (false, false) => Classification::DezaGraph,
    };
    let mut report = VerificationReport::member(classification, Params::Deza(params));
    fill_alpha_beta(&mut report, &split, n as i64, k, k);
    report.children = Some((digraph_of(split.x), digraph_of(split.y)));
    report.realized_by = Some("square".into());
    if split.a == split.b {
        report.note = Some("single off-diagonal value: strongly regular".into());
    }
    Ok(report)
}

fn product_statistic(name: &str, product: &IntMatrix, commutes: Option<bool>) -> ProductStatistic {
    let diagonal = constant_diagonal(product);
    let off_diagonal = off_diagonal_values(product);
    let matches = diagonal.is_some() && off_diagonal.len() <= 2 && commutes.unwrap_or(true);
    ProductStatistic {
        name: name.into(),
        diagonal,
        off_diagonal,
        commutes,
        matches,
    }
}

/// Reflexive directed Deza check. Both the two-path statistic `M²` and the
/// common-neighbour statistic `M·Mᵗ` (with `M·Mᵗ = Mᵗ·M`) are evaluated and
/// recorded; the parameters come from the first statistic that has a
/// constant diagonal and at most two off-diagonal values, with `t` read off
/// that diagonal.
pub fn verify_reflexive_directed_deza(d: &Digraph) -> Result<VerificationReport> {
    let m = d.adjacency();
    let n = m.order();
    if let Some(u) = (0..n).find(|&u| m.get(u, u) != 1) {
        return Err(Error::Precondition(format!("vertex {u} lacks a loop")));
    }
    let k = match regular_degree(m) {
        Ok(k) => k,
        Err(w) => return Err(Error::Precondition(format!("not regular: {w}"))),
    };
    let t = m.transpose();
    let square = m.mul(m)?;
    let right = m.mul(&t)?;
    let left = t.mul(m)?;
    let statistics = vec![
        product_statistic("square", &square, None),
        product_statistic("gram", &right, Some(right == left)),
    ];
    let chosen = statistics.iter().find(|s| s.matches).cloned();
    let mut report = match &chosen {
        Some(s) => {
            let a = s.off_diagonal.first().copied().unwrap_or(0);
            let b = s.off_diagonal.last().copied().unwrap_or(0);
            let diag = s.diagonal.expect("matching statistic has a constant diagonal");
            let params = DezaParams::new(n as u64, k as u64, b as u64, a as u64, diag as u64);
            let mut r = VerificationReport::member(
                Classification::ReflexiveDirectedDeza,
                Params::Deza(params),
            );
            let product = if s.name == "square" { &square } else { &right };
            let split = split_two_values(product).expect("at most two values");
            fill_alpha_beta(&mut r, &split, n as i64, k, diag);
            r.children = Some((digraph_of(split.x), digraph_of(split.y)));
            r.realized_by = Some(s.name.clone());
            r
        }
        None => VerificationReport::failure("neither M² nor M·Mᵗ is two-valued off the diagonal"),
    };
    report.statistics = statistics;
    Ok(report)
}

/// `(n, k, λ)` if `N·Nᵗ = Nᵗ·N = (k − λ)I + λJ` with constant line sums `k`.
pub fn verify_symmetric_design(incidence: &IntMatrix) -> Result<DesignParams> {
    if !incidence.is_binary() {
        return Err(Error::InvalidArgument("incidence matrix must be 0/1".into()));
    }
    let n = incidence.order();
    let k = regular_degree(incidence).map_err(Error::InvalidArgument)?;
    let t = incidence.transpose();
    let right = incidence.mul(&t)?;
    let left = t.mul(incidence)?;
    let lambda = if n > 1 { right.get(0, 1) } else { 0 };
    let expected = IntMatrix::from_fn(n, |i, j| if i == j { k } else { lambda });
    if right != expected || left != expected {
        return Err(Error::InvalidArgument(
            "Gram matrices are not (k − λ)I + λJ".into(),
        ));
    }
    Ok(DesignParams {
        n: n as u64,
        k: k as u64,
        lambda: lambda as u64,
    })
}

/// Runs every applicable classifier and returns the successful reports.
pub fn verify_all(d: &Digraph) -> Vec<VerificationReport> {
    let mut hits = Vec::new();
    let mut keep = |r: Result<VerificationReport>| {
        if let Ok(r) = r {
            if r.is_member() {
                hits.push(r);
            }
        }
    };
    if d.has_loops() {
        if d.is_symmetric() {
            keep(verify_deza_graph(d, true));
        }
        keep(verify_reflexive_directed_deza(d));
        keep(verify_type2(d));
    } else {
        keep(verify_deza_digraph(d));
        keep(verify_dsrg(d));
        keep(verify_type2(d));
        if let Some(partition) = discover_ddd_partition(d) {
            keep(verify_ddd(d, &partition));
        }
    }
    if let Ok(p) = verify_symmetric_design(d.adjacency()) {
        hits.push(VerificationReport::member(
            Classification::SymmetricDesign,
            Params::Design(p),
        ));
    }
    hits
}
