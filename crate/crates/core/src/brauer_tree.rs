//! Planar embedded Brauer trees in the Coxeter case.
//!
//! Vertex `j` (for `0 ≤ j < h0`) is the unipotent character `χ_j`; vertex
//! `h0` is the exceptional node. Edge `j` is the simple module `S_j`, joining
//! `χ_j` to `χ_{j−1}` inside a branch or to the exceptional node when `j` is
//! the first index `m_ζ` of its branch.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{gcd, is_prime, mult_order, pow_mod, prime_power};
use crate::ell_arith::{hensel_root, EllContext, TruncatedPadic};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Branch {
    /// Tag for the eigenvalue `ζ` of `F^δ` labelling the Harish-Chandra series.
    pub zeta: i64,
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
}

#[allow(clippy::len_without_is_empty)]
impl Branch {
    pub fn len(&self) -> u64 {
        self.big_m - self.m + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDatum {
    pub h0: u64,
    pub branches: Vec<Branch>,
}

impl SeriesDatum {
    /// Check that the intervals `[m, M]` partition `Z/h0`.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSeries(msg));
        if self.h0 == 0 {
            return bad("h0 must be positive".into());
        }
        if self.branches.is_empty() {
            return bad("no branches".into());
        }
        let mut seen = vec![false; self.h0 as usize];
        for b in &self.branches {
            if b.m >= self.h0 || b.big_m < b.m || b.len() > self.h0 {
                return bad(format!("branch [{}, {}] is not an interval mod {}", b.m, b.big_m, self.h0));
            }
            for j in b.m..=b.big_m {
                let k = (j % self.h0) as usize;
                if seen[k] {
                    return bad(format!("index {k} lies in two branches"));
                }
                seen[k] = true;
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return bad(format!("index {k} lies in no branch"));
        }
        Ok(())
    }

    /// One branch covering every index.
    pub fn line(h0: u64) -> Self {
        SeriesDatum { h0, branches: vec![Branch { zeta: 0, m: 0, big_m: h0 - 1 }] }
    }

    /// `h0` branches of length one.
    pub fn star(h0: u64) -> Self {
        SeriesDatum { h0, branches: (0..h0).map(|j| Branch { zeta: j as i64, m: j, big_m: j }).collect() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInfo {
    pub label: Option<String>,
    /// `a_χ`, the lowest power of `q` in the generic degree.
    pub a: Option<u64>,
    /// `A_χ`, the degree of the generic degree.
    #[serde(rename = "A")]
    pub big_a: Option<u64>,
}

/// The Hensel lift `ζ` of the action exponent for star trees of `D⋊E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaLift {
    pub value: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarBrauerTree {
    pub h0: u64,
    pub r: u64,
    pub multiplicity: u64,
    pub branches: Vec<Branch>,
    /// Anticlockwise order of the edges at the exceptional node.
    pub exc_order: Vec<usize>,
    pub vertices: Vec<VertexInfo>,
    /// Coefficient field characteristic, when known.
    pub ell: Option<u64>,
    pub zeta_lift: Option<ZetaLift>,
    branch_of: Vec<usize>,
}

pub fn exceptional_multiplicity(ctx: &EllContext) -> Result<u64> {
    let part = ctx.torus_ell_part();
    let h0 = ctx.datum.h0 as u128;
    if !(part - 1).is_multiple_of(h0) {
        return Err(Error::NonIntegral(format!("({part} - 1)/{h0}")));
    }
    Ok(((part - 1) / h0) as u64)
}

pub fn build_hlm_tree(ctx: &EllContext, series: &SeriesDatum) -> Result<PlanarBrauerTree> {
    if series.h0 != ctx.datum.h0 {
        return Err(Error::InvalidSeries(format!(
            "series has h0 = {} but the regime has h0 = {}",
            series.h0, ctx.datum.h0
        )));
    }
    let mu = exceptional_multiplicity(ctx)?;
    let mut tree = build_hlm_tree_with(series, ctx.datum.r, mu)?;
    tree.ell = Some(ctx.ell);
    Ok(tree)
}

/// The HLM tree for given `r` and `μ`, without a modular regime.
pub fn build_hlm_tree_with(series: &SeriesDatum, r: u64, mu: u64) -> Result<PlanarBrauerTree> {
    series.validate()?;
    if mu == 0 {
        return Err(Error::invalid("exceptional multiplicity must be at least 1"));
    }
    let mut branches = series.branches.clone();
    branches.sort_by_key(|b| b.m);
    // Successor of S_{m_ζ} is S_{m_ξ} with m_ξ ≡ M_ζ + 1, i.e. increasing m.
    let exc_order = branches.iter().map(|b| b.m as usize).collect();
    PlanarBrauerTree::assemble(series.h0, r, mu, branches, exc_order, None)
}

pub fn build_star_tree(d_order: u64, e_order: u64, n: u64) -> Result<PlanarBrauerTree> {
    let (ell, alpha) = prime_power(d_order)
        .filter(|&(p, _)| is_prime(p))
        .ok_or_else(|| Error::invalid(format!("|D| = {d_order} is not a prime power")))?;
    if e_order == 0 || gcd(e_order, ell) != 1 {
        return Err(Error::BadAction(format!("|E| = {e_order} is not prime to {ell}")));
    }
    if mult_order(n % ell, ell) != Some(e_order) || pow_mod(n, e_order, d_order) != 1 % d_order {
        return Err(Error::BadAction(format!("{n} does not act with order {e_order} on Z/{d_order}")));
    }
    let mu = (d_order - 1) / e_order;
    if mu * e_order != d_order - 1 {
        return Err(Error::NonIntegral(format!("({d_order} - 1)/{e_order}")));
    }
    let one = TruncatedPadic::new(1, ell, alpha)?;
    let zeta = hensel_root(one, e_order, n % ell)?;
    let series = SeriesDatum::star(e_order);
    let mut tree = build_hlm_tree_with(&series, 0, mu)?;
    tree.ell = Some(ell);
    tree.zeta_lift = Some(ZetaLift { value: zeta.value, modulus: zeta.modulus() });
    Ok(tree)
}

impl PlanarBrauerTree {
    fn assemble(
        h0: u64,
        r: u64,
        mu: u64,
        branches: Vec<Branch>,
        exc_order: Vec<usize>,
        vertices: Option<Vec<VertexInfo>>,
    ) -> Result<Self> {
        let mut branch_of = vec![usize::MAX; h0 as usize];
        for (bi, b) in branches.iter().enumerate() {
            for j in b.m..=b.big_m {
                branch_of[(j % h0) as usize] = bi;
            }
        }
        let mut starts: Vec<usize> = branches.iter().map(|b| b.m as usize).collect();
        let mut given = exc_order.clone();
        starts.sort_unstable();
        given.sort_unstable();
        if starts != given {
            return Err(Error::InvalidSeries(
                "cyclic order at the exceptional node must list each branch start once".into(),
            ));
        }
        let vertices = vertices.unwrap_or_else(|| vec![VertexInfo::default(); h0 as usize]);
        if vertices.len() != h0 as usize {
            return Err(Error::invalid("vertex info does not match h0"));
        }
        Ok(PlanarBrauerTree {
            h0,
            r,
            multiplicity: mu,
            branches,
            exc_order,
            vertices,
            ell: None,
            zeta_lift: None,
            branch_of,
        })
    }

    /// Number of edges, equal to the number of non-exceptional vertices.
    pub fn n_edges(&self) -> usize {
        self.h0 as usize
    }

    /// Vertex id of the exceptional node.
    pub fn exceptional(&self) -> usize {
        self.h0 as usize
    }

    pub fn n_vertices(&self) -> usize {
        self.h0 as usize + 1
    }

    pub fn branch(&self, j: usize) -> &Branch {
        &self.branches[self.branch_of[j]]
    }

    /// Position of `j` along its branch, so `m_ζ` has offset 0.
    pub fn offset(&self, j: usize) -> u64 {
        let b = self.branch(j);
        (j as u64 + self.h0 - b.m) % self.h0
    }

    /// `(inner, outer)` endpoints of edge `j`; `outer` is always `χ_j`.
    pub fn edge_ends(&self, j: usize) -> (usize, usize) {
        if self.offset(j) == 0 {
            (self.exceptional(), j)
        } else {
            ((j + self.n_edges() - 1) % self.n_edges(), j)
        }
    }

    /// The next index along the branch, if the branch continues.
    pub fn branch_next(&self, j: usize) -> Option<usize> {
        let b = self.branch(j);
        (self.offset(j) + 1 < b.len()).then(|| (j + 1) % self.n_edges())
    }

    pub fn node_multiplicity(&self, v: usize) -> u64 {
        if v == self.exceptional() {
            self.multiplicity
        } else {
            1
        }
    }

    /// Anticlockwise cyclic list of the edges at vertex `v`.
    pub fn cyclic_order(&self, v: usize) -> Vec<usize> {
        if v == self.exceptional() {
            return self.exc_order.clone();
        }
        let mut out = vec![v];
        if let Some(next) = self.branch_next(v) {
            out.push(next);
        }
        out
    }

    /// Anticlockwise successor of edge `e` around vertex `v`.
    pub fn succ_at(&self, v: usize, e: usize) -> usize {
        let order = self.cyclic_order(v);
        let i = order.iter().position(|&x| x == e).expect("edge is incident to the vertex");
        order[(i + 1) % order.len()]
    }

    pub fn pred_at(&self, v: usize, e: usize) -> usize {
        let order = self.cyclic_order(v);
        let i = order.iter().position(|&x| x == e).expect("edge is incident to the vertex");
        order[(i + order.len() - 1) % order.len()]
    }

    pub fn vertex_label(&self, v: usize) -> String {
        if v == self.exceptional() {
            return "exc".into();
        }
        self.vertices[v].label.clone().unwrap_or_else(|| format!("chi_{v}"))
    }

    pub fn with_labels(mut self, labels: &[(usize, &str)]) -> Self {
        for &(v, l) in labels {
            self.vertices[v].label = Some(l.to_string());
        }
        self
    }

    pub fn with_annotations(mut self, ann: &[(usize, u64, u64)]) -> Self {
        for &(v, a, big_a) in ann {
            self.vertices[v].a = Some(a);
            self.vertices[v].big_a = Some(big_a);
        }
        self
    }

    /// Planar successor relation at every node, as `(from, to)` pairs
    /// `e → succ_v(e)` over nodes with `s_v·μ_v > 1`. A lone edge between two
    /// nodes of multiplicity one gives `k[x]/x²`, whose loop is `(0, 0)`.
    pub fn successor_pairs(&self) -> Vec<(usize, usize)> {
        if self.n_edges() == 1 && self.multiplicity == 1 {
            return vec![(0, 0)];
        }
        let mut out = Vec::new();
        for v in 0..self.n_vertices() {
            let order = self.cyclic_order(v);
            if order.len() as u64 * self.node_multiplicity(v) > 1 {
                for &e in &order {
                    out.push((e, self.succ_at(v, e)));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// The prime the tree was built over, or else the least prime `p` with
/// `p ≡ 1 mod h0·μ` so that the field holds the relevant roots of unity.
pub fn default_ell(tree: &PlanarBrauerTree) -> u64 {
    if let Some(ell) = tree.ell {
        return ell;
    }
    let step = tree.h0 * tree.multiplicity;
    (1..).map(|k| k * step + 1).find(|&p| is_prime(p)).expect("Dirichlet")
}

pub fn height(tree: &PlanarBrauerTree, j: usize) -> u64 {
    tree.offset(j)
}

pub fn perversity(tree: &PlanarBrauerTree, i: i64) -> i64 {
    i - 2 * tree.r as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionMatrix {
    pub row_labels: Vec<String>,
    pub rows: Vec<Vec<u64>>,
    /// Number of non-exceptional rows; the rest are the exceptional rows.
    pub n_ordinary: usize,
    pub multiplicity: u64,
}

impl DecompositionMatrix {
    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Exceptional rows merged into a single row for `χ_exc`.
    pub fn collapsed(&self) -> Vec<Vec<u64>> {
        let mut out = self.rows[..self.n_ordinary].to_vec();
        if self.rows.len() > self.n_ordinary {
            out.push(self.rows[self.n_ordinary].clone());
        }
        out
    }
}

pub fn decomposition_matrix(tree: &PlanarBrauerTree) -> DecompositionMatrix {
    let n = tree.n_edges();
    let mut rows = vec![vec![0u64; n]; n + tree.multiplicity as usize];
    for e in 0..n {
        let (inner, outer) = tree.edge_ends(e);
        rows[outer][e] = 1;
        if inner == tree.exceptional() {
            for row in rows.iter_mut().skip(n) {
                row[e] = 1;
            }
        } else {
            rows[inner][e] = 1;
        }
    }
    let mut row_labels: Vec<String> = (0..n).map(|v| tree.vertex_label(v)).collect();
    row_labels.extend((0..tree.multiplicity).map(|k| format!("exc_{k}")));
    let d = DecompositionMatrix { row_labels, rows, n_ordinary: n, multiplicity: tree.multiplicity };
    for e in 0..n {
        let col: u64 = d.collapsed().iter().map(|r| r[e]).sum();
        debug_assert_eq!(col, 2, "projective S_{e} must have two ordinary constituents");
    }
    d
}

/// `Dᵀ·D`, counting every exceptional row.
pub fn cartan_matrix(d: &DecompositionMatrix) -> Vec<Vec<u64>> {
    let n = d.n_cols();
    let mut c = vec![vec![0u64; n]; n];
    for row in &d.rows {
        for i in 0..n {
            if row[i] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += row[i] * row[j];
            }
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ordering {
    /// Decreasing height of the edge `S_j`, ties by `j`.
    Height,
    /// Increasing `a_χ`, grouped into families of equal `a_χ`.
    Annotations { height_fallback: bool },
    /// Explicit order of the non-exceptional vertices.
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitriangularWitness {
    pub ok: bool,
    /// Row order of the ordinary characters; exceptional rows follow.
    pub order: Vec<usize>,
    /// First offending `(row, col)` in the reordered matrix.
    pub violation: Option<(usize, usize)>,
}

/// Order the rows `χ_j` (and columns `S_j` alike) and test for a lower
/// unitriangular shape with identity blocks on the diagonal.
pub fn check_unitriangular(
    tree: &PlanarBrauerTree,
    d: &DecompositionMatrix,
    ordering: &Ordering,
) -> Result<UnitriangularWitness> {
    let n = tree.n_edges();
    let height_keys = || (0..n).map(|j| (u64::MAX - height(tree, j), j)).collect::<Vec<_>>();
    let (order, group): (Vec<usize>, Vec<u64>) = match ordering {
        Ordering::Height => {
            let mut keys = height_keys();
            keys.sort_unstable();
            (keys.iter().map(|k| k.1).collect(), keys.iter().map(|k| k.0).collect())
        }
        Ordering::Annotations { height_fallback } => match (0..n).find(|&v| tree.vertices[v].a.is_none()) {
            Some(v) if !height_fallback => return Err(Error::MissingAnnotations(v)),
            Some(_) => return check_unitriangular(tree, d, &Ordering::Height),
            None => {
                let mut keys: Vec<(u64, usize)> = (0..n).map(|j| (tree.vertices[j].a.unwrap(), j)).collect();
                keys.sort_unstable();
                (keys.iter().map(|k| k.1).collect(), keys.iter().map(|k| k.0).collect())
            }
        },
        Ordering::Explicit(order) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::invalid("explicit ordering must be a permutation of the vertices"));
            }
            (order.clone(), (0..n as u64).collect())
        }
    };
    let mut violation = None;
    'outer: for (a, &ra) in order.iter().enumerate() {
        for (b, &cb) in order.iter().enumerate() {
            let x = d.rows[ra][cb];
            let expect_zero = group[b] > group[a] || (group[a] == group[b] && a != b);
            let bad = if a == b { x != 1 } else { expect_zero && x != 0 };
            if bad {
                violation = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(UnitriangularWitness { ok: violation.is_none(), order, violation })
}

/// `n_χ = 2r − (a_χ + A_χ)/h`.
pub fn n_chi(tree: &PlanarBrauerTree, v: usize, h: u64) -> Result<Ratio<i64>> {
    let info = &tree.vertices[v];
    let (Some(a), Some(big_a)) = (info.a, info.big_a) else {
        return Err(Error::MissingAnnotations(v));
    };
    Ok(Ratio::from_integer(2 * tree.r as i64) - Ratio::new((a + big_a) as i64, h as i64))
}

/// Whether `n_χ` strictly increases outward along every branch.
pub fn n_chi_monotone(tree: &PlanarBrauerTree, h: u64) -> Result<bool> {
    for j in 0..tree.n_edges() {
        if let Some(next) = tree.branch_next(j) {
            if n_chi(tree, j, h)? >= n_chi(tree, next, h)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn to_dot(tree: &PlanarBrauerTree) -> String {
    let mut s = String::new();
    let exc = tree.exceptional();
    s.push_str("graph brauer_tree {\n");
    let _ = writeln!(s, "  // h0={} r={} multiplicity={}", tree.h0, tree.r, tree.multiplicity);
    s.push_str("  ordering=out;\n");
    s.push_str("  node [shape=circle];\n");
    let _ = writeln!(s, "  v{exc} [label=\"exc\", shape=doublecircle, multiplicity={}];", tree.multiplicity);
    for v in 0..tree.n_edges() {
        let _ = writeln!(s, "  v{v} [label=\"{}\"];", tree.vertex_label(v));
    }
    let mut k = 0;
    for &start in &tree.exc_order {
        let mut j = Some(start);
        while let Some(e) = j {
            let (a, b) = tree.edge_ends(e);
            let _ = writeln!(s, "  v{a} -- v{b} [label=\"S{e}\", order={k}];");
            k += 1;
            j = tree.branch_next(e);
        }
    }
    s.push_str("}\n");
    s
}

pub fn to_json(tree: &PlanarBrauerTree) -> Value {
    let mut v = json!({
        "h0": tree.h0,
        "r": tree.r,
        "multiplicity": tree.multiplicity,
        "branches": tree.branches,
        "cyclic_order": tree.exc_order,
    });
    let labels: BTreeMap<String, &str> =
        tree.vertices.iter().enumerate().filter_map(|(i, x)| x.label.as_deref().map(|l| (i.to_string(), l))).collect();
    if !labels.is_empty() {
        v["labels"] = json!(labels);
    }
    let ann: Vec<Value> = tree
        .vertices
        .iter()
        .enumerate()
        .filter_map(|(i, x)| match (x.a, x.big_a) {
            (Some(a), Some(big_a)) => Some(json!({"vertex": i, "a": a, "A": big_a})),
            _ => None,
        })
        .collect();
    if !ann.is_empty() {
        v["annotations"] = Value::Array(ann);
    }
    if let Some(ell) = tree.ell {
        v["ell"] = json!(ell);
    }
    if let Some(z) = tree.zeta_lift {
        v["zeta_lift"] = json!(z);
    }
    v
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("/{key}"), "missing field"))
}

fn uint(v: &Value, loc: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::parse(loc, "expected a non-negative integer"))
}

pub fn from_json(v: &Value) -> Result<PlanarBrauerTree> {
    if !v.is_object() {
        return Err(Error::parse("/", "expected an object"));
    }
    let h0 = uint(field(v, "h0")?, "/h0")?;
    let r = uint(field(v, "r")?, "/r")?;
    let mu = uint(field(v, "multiplicity")?, "/multiplicity")?;
    let branches: Vec<Branch> =
        serde_json::from_value(field(v, "branches")?.clone()).map_err(|e| Error::parse("/branches", e.to_string()))?;
    if branches.is_empty() {
        return Err(Error::parse("/branches", "empty series"));
    }
    let series = SeriesDatum { h0, branches };
    series.validate().map_err(|e| Error::parse("/branches", e.to_string()))?;
    let mut tree = build_hlm_tree_with(&series, r, mu).map_err(|e| Error::parse("/", e.to_string()))?;
    if let Some(order) = v.get("cyclic_order") {
        let order = order
            .as_array()
            .ok_or_else(|| Error::parse("/cyclic_order", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, x)| uint(x, &format!("/cyclic_order/{i}")).map(|x| x as usize))
            .collect::<Result<Vec<_>>>()?;
        tree = PlanarBrauerTree::assemble(h0, r, mu, tree.branches, order, None)
            .map_err(|e| Error::parse("/cyclic_order", e.to_string()))?;
    }
    if let Some(labels) = v.get("labels") {
        let obj = labels.as_object().ok_or_else(|| Error::parse("/labels", "expected an object"))?;
        for (k, l) in obj {
            let loc = format!("/labels/{k}");
            let idx: usize = k.parse().map_err(|_| Error::parse(&loc, "key is not a vertex index"))?;
            let l = l.as_str().ok_or_else(|| Error::parse(&loc, "expected a string"))?;
            if idx >= tree.n_edges() {
                return Err(Error::parse(loc, "vertex index out of range"));
            }
            tree.vertices[idx].label = Some(l.to_string());
        }
    }
    if let Some(ann) = v.get("annotations") {
        let arr = ann.as_array().ok_or_else(|| Error::parse("/annotations", "expected an array"))?;
        for (i, a) in arr.iter().enumerate() {
            let loc = format!("/annotations/{i}");
            let vertex = uint(field(a, "vertex").map_err(|_| Error::parse(&loc, "missing vertex"))?, &loc)? as usize;
            let lo = uint(field(a, "a").map_err(|_| Error::parse(&loc, "missing a"))?, &loc)?;
            let hi = uint(field(a, "A").map_err(|_| Error::parse(&loc, "missing A"))?, &loc)?;
            if vertex >= tree.n_edges() {
                return Err(Error::parse(loc, "vertex index out of range"));
            }
            tree.vertices[vertex].a = Some(lo);
            tree.vertices[vertex].big_a = Some(hi);
        }
    }
    if let Some(ell) = v.get("ell") {
        tree.ell = Some(uint(ell, "/ell")?);
    }
    if let Some(z) = v.get("zeta_lift") {
        tree.zeta_lift =
            Some(serde_json::from_value(z.clone()).map_err(|e| Error::parse("/zeta_lift", e.to_string()))?);
    }
    Ok(tree)
}

pub fn from_json_str(s: &str) -> Result<PlanarBrauerTree> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ell_arith::validate_ell;
    use crate::root_data::{coxeter_datum, TwistedType};

    fn ctx(name: &str, q: u64, ell: u64) -> EllContext {
        let d = coxeter_datum(TwistedType::parse(name, None).unwrap()).unwrap();
        validate_ell(&d, q, ell).unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(exceptional_multiplicity(&ctx("2G2", 27, 19)).unwrap(), 3);
        assert_eq!(exceptional_multiplicity(&ctx("A2", 2, 7)).unwrap(), 2);
    }

    #[test]
    fn star_shapes() {
        let t = build_star_tree(7, 3, 2).unwrap();
        assert_eq!((t.n_edges(), t.multiplicity), (3, 2));
        assert_eq!(t.cyclic_order(t.exceptional()), vec![0, 1, 2]);
        assert_eq!(t.succ_at(3, 2), 0);
        let t = build_star_tree(11, 1, 1).unwrap();
        assert_eq!((t.n_edges(), t.multiplicity), (1, 10));
        let t = build_star_tree(49, 3, 18).unwrap();
        assert_eq!(t.multiplicity, 16);
        assert_eq!(t.zeta_lift.unwrap().value, 18);
        assert!(matches!(build_star_tree(7, 3, 3), Err(Error::BadAction(_))));
    }

    #[test]
    fn line_and_star_series() {
        let t = build_hlm_tree_with(&SeriesDatum::line(4), 1, 2).unwrap();
        assert_eq!(t.edge_ends(0), (4, 0));
        assert_eq!(t.edge_ends(3), (2, 3));
        assert_eq!(height(&t, 3), 3);
        let s = build_hlm_tree_with(&SeriesDatum::star(5), 1, 1).unwrap();
        assert_eq!(s.exc_order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn invalid_series() {
        let s = SeriesDatum { h0: 3, branches: vec![Branch { zeta: 0, m: 0, big_m: 1 }] };
        assert!(matches!(s.validate(), Err(Error::InvalidSeries(_))));
        let s = SeriesDatum {
            h0: 3,
            branches: vec![Branch { zeta: 0, m: 0, big_m: 1 }, Branch { zeta: 1, m: 1, big_m: 2 }],
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn wrapping_branch() {
        let s = SeriesDatum {
            h0: 4,
            branches: vec![Branch { zeta: 0, m: 3, big_m: 4 }, Branch { zeta: 1, m: 1, big_m: 2 }],
        };
        let t = build_hlm_tree_with(&s, 1, 1).unwrap();
        assert_eq!(t.edge_ends(0), (3, 0));
        assert_eq!(t.exc_order, vec![1, 3]);
        assert_eq!(height(&t, 0), 1);
    }

    #[test]
    fn star_matrices() {
        let t = build_star_tree(7, 3, 2).unwrap();
        let d = decomposition_matrix(&t);
        assert_eq!(d.rows, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        assert_eq!(cartan_matrix(&d), vec![vec![3, 2, 2], vec![2, 3, 2], vec![2, 2, 3]]);
        let single = build_star_tree(5, 1, 1).unwrap();
        assert_eq!(cartan_matrix(&decomposition_matrix(&single)), vec![vec![5]]);
        let line = build_hlm_tree_with(&SeriesDatum::line(2), 1, 1).unwrap();
        assert_eq!(cartan_matrix(&decomposition_matrix(&line)), vec![vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn line_columns() {
        let t = build_hlm_tree_with(&SeriesDatum::line(3), 1, 2).unwrap();
        let d = decomposition_matrix(&t);
        let col0: Vec<u64> = d.rows.iter().map(|r| r[0]).collect();
        assert_eq!(col0, vec![1, 0, 0, 1, 1]);
        let col2: Vec<u64> = d.rows.iter().map(|r| r[2]).collect();
        assert_eq!(col2, vec![0, 1, 1, 0, 0]);
    }

    #[test]
    fn unitriangular_orderings() {
        let t = build_hlm_tree_with(&SeriesDatum::line(3), 1, 2).unwrap();
        let d = decomposition_matrix(&t);
        let w = check_unitriangular(&t, &d, &Ordering::Height).unwrap();
        assert!(w.ok);
        assert_eq!(w.order, vec![2, 1, 0]);
        let bad = check_unitriangular(&t, &d, &Ordering::Explicit(vec![0, 1, 2])).unwrap();
        assert!(!bad.ok);
        let star = build_star_tree(7, 3, 2).unwrap();
        assert!(check_unitriangular(&star, &decomposition_matrix(&star), &Ordering::Height).unwrap().ok);
        assert_eq!(
            check_unitriangular(&t, &d, &Ordering::Annotations { height_fallback: false }).unwrap_err(),
            Error::MissingAnnotations(0)
        );
        assert!(check_unitriangular(&t, &d, &Ordering::Annotations { height_fallback: true }).unwrap().ok);
    }

    #[test]
    fn annotated_ordering() {
        // A2: St (a = 3), the reflection character (a = 1), 1 (a = 0) along one branch.
        let t = build_hlm_tree_with(&SeriesDatum::line(3), 2, 2).unwrap().with_annotations(&[
            (0, 3, 3),
            (1, 1, 2),
            (2, 0, 0),
        ]);
        let d = decomposition_matrix(&t);
        let w = check_unitriangular(&t, &d, &Ordering::Annotations { height_fallback: false }).unwrap();
        assert!(w.ok);
        assert_eq!(w.order, vec![2, 1, 0]);
        assert_eq!(n_chi(&t, 2, 3).unwrap(), Ratio::from_integer(4));
        assert_eq!(n_chi(&t, 0, 3).unwrap(), Ratio::from_integer(2));
        assert!(n_chi_monotone(&t, 3).unwrap());
    }

    #[test]
    fn perversity_values() {
        let t = build_hlm_tree_with(&SeriesDatum::line(2), 1, 1).unwrap();
        assert_eq!(perversity(&t, 0), -2);
        assert_eq!(perversity(&t, 2), 0);
    }

    #[test]
    fn json_round_trip() {
        let t = build_star_tree(7, 3, 2).unwrap().with_labels(&[(0, "eta_0")]);
        let back = from_json(&to_json(&t)).unwrap();
        assert_eq!(back, t);
        let t = build_hlm_tree_with(&SeriesDatum::line(3), 1, 2).unwrap().with_annotations(&[(1, 1, 2)]);
        assert_eq!(from_json_str(&to_json(&t).to_string()).unwrap(), t);
    }

    #[test]
    fn json_errors() {
        let e = from_json_str(r#"{"h0": 3, "r": 1, "multiplicity": 1, "branches": []}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { ref location, .. } if location == "/branches"));
        assert!(matches!(from_json_str("{"), Err(Error::Parse { .. })));
        let e = from_json_str(
            r#"{"h0": 2, "r": 1, "multiplicity": 1, "branches": [{"zeta":0,"m":0,"M":0},{"zeta":1,"m":1,"M":1}], "cyclic_order": [0, 0]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, Error::Parse { ref location, .. } if location == "/cyclic_order"));
    }
}
