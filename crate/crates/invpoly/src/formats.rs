//! Machine (JSON) and human (text, DOT) renderings of every report.
//!
//! Every JSON type derives `Serialize` with fixed field order, so identical
//! inputs give byte-identical output.

use std::fmt::Write as _;

use invpoly_core::{
    exceptional_block_count, Atom, BStrategy, Classification, CleaveStep, DecompositionTree, ExponentMatrix,
    GorensteinReport, GroupStructure, MilnorReport, NodeKind, TreeNode, VgitData, WeightSystem,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// An exact integer: a JSON number when it fits in `i64`, else a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Int {
    fn from(x: &BigInt) -> Self {
        x.to_i64().map_or_else(|| Int::Big(x.to_string()), Int::Small)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub monomials: Vec<Vec<u32>>,
}

impl From<&ExponentMatrix> for MatrixJson {
    fn from(m: &ExponentMatrix) -> Self {
        Self { monomials: m.to_rows() }
    }
}

/// Renders `m` with column `j` named `x{names[j] + 1}`.
pub fn polynomial_with_names(m: &ExponentMatrix, names: &[usize]) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        if i > 0 {
            out.push_str(" + ");
        }
        let mut first = true;
        for (j, &e) in m.row(i).iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            let _ = write!(out, "x{}", names[j] + 1);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
    }
    out
}

pub fn polynomial(m: &ExponentMatrix) -> String {
    invpoly_core::format_polynomial(m)
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomJson {
    pub kind: &'static str,
    pub exponents: Vec<u32>,
    /// 1-based variable indices.
    pub variables: Vec<usize>,
    /// 1-based monomial indices.
    pub monomials: Vec<usize>,
}

fn atom_json(atom: &Atom, rows: &[usize]) -> AtomJson {
    AtomJson {
        kind: atom_kind(atom),
        exponents: atom.exponents.clone(),
        variables: atom.variables.iter().map(|v| v + 1).collect(),
        monomials: rows.iter().map(|r| r + 1).collect(),
    }
}

fn atom_kind(atom: &Atom) -> &'static str {
    match atom.kind {
        invpoly_core::AtomKind::Fermat => "fermat",
        invpoly_core::AtomKind::Chain => "chain",
        invpoly_core::AtomKind::Loop => "loop",
    }
}

/// `Chain(2,3)` style label without variables.
pub fn atom_label(atom: &Atom) -> String {
    let exps: Vec<String> = atom.exponents.iter().map(u32::to_string).collect();
    format!("{}({})", atom.kind, exps.join(","))
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightsJson {
    pub weights: Vec<u64>,
    pub degree: u64,
}

impl From<&WeightSystem> for WeightsJson {
    fn from(w: &WeightSystem) -> Self {
        Self { weights: w.weights.clone(), degree: w.degree }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaJson {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub torsion_order: Int,
}

impl From<&GroupStructure> for GammaJson {
    fn from(g: &GroupStructure) -> Self {
        Self {
            free_rank: g.free_rank,
            torsion: ints(&g.torsion_orders),
            torsion_order: (&g.torsion_order_total).into(),
        }
    }
}

fn gamma_text(g: &GroupStructure) -> String {
    let mut s = format!("G_m^{}", g.free_rank);
    for t in &g.torsion_orders {
        let _ = write!(s, " x Z/{t}");
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyJson {
    pub polynomial: String,
    pub monomials: Vec<Vec<u32>>,
    pub atoms: Vec<AtomJson>,
    pub weights: WeightsJson,
    pub transpose_weights: WeightsJson,
    pub gamma: GammaJson,
}

impl ClassifyJson {
    pub fn new(
        m: &ExponentMatrix,
        c: &Classification,
        w: &WeightSystem,
        wt: &WeightSystem,
        g: &GroupStructure,
    ) -> Self {
        Self {
            polynomial: polynomial(m),
            monomials: m.to_rows(),
            atoms: c.atoms.iter().zip(&c.atom_rows).map(|(a, r)| atom_json(a, r)).collect(),
            weights: w.into(),
            transpose_weights: wt.into(),
            gamma: g.into(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("polynomial: {}\n", self.polynomial);
        for a in &self.atoms {
            let vars: Vec<String> = a.variables.iter().map(|v| format!("x{v}")).collect();
            let exps: Vec<String> = a.exponents.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "atom: {}({}) on {}", capitalized(a.kind), exps.join(","), vars.join(","));
        }
        let _ = writeln!(s, "weights: q = {:?}, d = {}", self.weights.weights, self.weights.degree);
        let _ = writeln!(
            s,
            "transpose weights: r = {:?}, d^T = {}",
            self.transpose_weights.weights, self.transpose_weights.degree
        );
        s
    }
}

fn capitalized(kind: &str) -> String {
    let mut c = kind.chars();
    c.next().map(|f| f.to_ascii_uppercase().to_string() + c.as_str()).unwrap_or_default()
}

pub fn classify_text(json: &ClassifyJson, g: &GroupStructure) -> String {
    let mut s = json.to_text();
    let _ = writeln!(s, "Gamma: {} (rank {}, torsion order {})", gamma_text(g), g.free_rank, g.torsion_order_total);
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct MilnorJson {
    pub polynomial: String,
    pub transpose: bool,
    pub mu: Int,
    pub method: &'static str,
    pub graded_dims: Option<Vec<u64>>,
    pub socle: Option<u64>,
}

impl MilnorJson {
    pub fn new(m: &ExponentMatrix, transpose: bool, r: &MilnorReport) -> Self {
        Self {
            polynomial: polynomial(m),
            transpose,
            mu: (&r.value).into(),
            method: r.method.name(),
            graded_dims: r.graded_dims.clone(),
            socle: r.socle_degree,
        }
    }

    pub fn to_text(&self, value: &BigInt) -> String {
        let which = if self.transpose { "mu(w^T)" } else { "mu(w)" };
        let mut s = format!("{which} = {value} ({})\n", self.method);
        if let (Some(dims), Some(socle)) = (&self.graded_dims, self.socle) {
            let _ = writeln!(s, "socle degree: {socle}");
            let _ = writeln!(s, "graded dims: {dims:?}");
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VgitJson {
    pub d: Vec<Int>,
    pub c: Vec<Int>,
    pub gcd: Int,
    pub sum_d: Int,
    pub t: Int,
}

impl From<&VgitData> for VgitJson {
    fn from(v: &VgitData) -> Self {
        let b = exceptional_block_count(v);
        Self { d: ints(&v.d), c: ints(&v.c), gcd: (&v.gcd).into(), sum_d: (&v.sum_d).into(), t: (&b.t).into() }
    }
}

pub fn bracketed(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn vgit_text(v: &VgitData) -> String {
    let b = exceptional_block_count(v);
    format!(
        "d = {}\nc = {}\ngcd(d) = {}, sum d = {}, t = {} ({} block(s) of {})\n",
        bracketed(&v.d),
        bracketed(&v.c),
        v.gcd,
        v.sum_d,
        b.t,
        b.blocks,
        b.kernel_order
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryJson {
    pub polynomial: String,
    pub gamma: GammaJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vgit: Option<VgitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cokernel_torsion: Option<Int>,
}

pub fn symmetry_text(m: &ExponentMatrix, g: &GroupStructure, v: Option<&VgitData>, torsion: Option<&BigInt>) -> String {
    let mut s = format!("polynomial: {}\nGamma: {}\n", polynomial(m), gamma_text(g));
    if let Some(v) = v {
        s.push_str(&vgit_text(v));
    }
    if let Some(t) = torsion {
        let _ = writeln!(s, "torsion of coker(A): {t}");
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct CleaveJson {
    pub atom: String,
    pub b: u32,
    pub augmented: String,
    pub w_plus: String,
    pub w_minus: String,
    pub w_minus_atoms: Vec<String>,
    pub vgit: VgitJson,
    pub case: String,
    pub t: Int,
    pub mu_plus: Int,
    pub mu_minus: Int,
}

impl From<&CleaveStep> for CleaveJson {
    fn from(s: &CleaveStep) -> Self {
        Self {
            atom: atom_label(&s.atom),
            b: s.b,
            augmented: polynomial(&s.augmented),
            w_plus: polynomial(&s.atom.local_matrix()),
            w_minus: polynomial_with_names(&s.minus_matrix, &s.minus_variables()),
            w_minus_atoms: s.w_minus.atoms.iter().map(atom_label).collect(),
            vgit: (&s.vgit).into(),
            case: s.case.to_string(),
            t: (&s.t).into(),
            mu_plus: (&s.mu_plus).into(),
            mu_minus: (&s.mu_minus).into(),
        }
    }
}

pub fn cleave_text(s: &CleaveStep) -> String {
    let j = CleaveJson::from(s);
    let mut out = format!(
        "w+ = {} [{}]\nW  = {} (b = {})\nw- = {} [{}]\n",
        j.w_plus,
        j.atom,
        j.augmented,
        j.b,
        j.w_minus,
        j.w_minus_atoms.join(" + ")
    );
    out.push_str(&vgit_text(&s.vgit));
    let _ = writeln!(out, "case {}: mu(w+^T) = {}, mu(w-^T) = {}", s.case, s.mu_plus, s.mu_minus);
    out
}

pub fn strategy_name(s: BStrategy) -> String {
    match s {
        BStrategy::Min => "min".into(),
        BStrategy::Max => "max".into(),
        BStrategy::Gorenstein => "gorenstein".into(),
        BStrategy::Fixed(b) => format!("fixed:{b}"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeJson {
    pub node: &'static str,
    pub label: String,
    pub polynomial: String,
    pub total: Int,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub child: Option<Box<NodeJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub children: Option<Vec<NodeJson>>,
}

fn node_label(n: &TreeNode) -> String {
    match &n.kind {
        NodeKind::Cleave { step, .. } => atom_label(&step.atom),
        NodeKind::FermatLeaf { exponent } => format!("Fermat({exponent})"),
        NodeKind::Tensor { children } => children.iter().map(node_label).collect::<Vec<_>>().join(" + "),
    }
}

impl From<&TreeNode> for NodeJson {
    fn from(n: &TreeNode) -> Self {
        let mut j = NodeJson {
            node: "",
            label: node_label(n),
            polynomial: polynomial(&n.polynomial),
            total: (&n.total).into(),
            b: None,
            t: None,
            case: None,
            child: None,
            children: None,
        };
        match &n.kind {
            NodeKind::Cleave { step, child } => {
                j.node = "cleave";
                j.b = Some(step.b);
                j.t = Some((&step.t).into());
                j.case = Some(step.case.to_string());
                j.child = Some(Box::new(child.as_ref().into()));
            }
            NodeKind::FermatLeaf { .. } => j.node = "fermat",
            NodeKind::Tensor { children } => {
                j.node = "sum";
                j.children = Some(children.iter().map(NodeJson::from).collect());
            }
        }
        j
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeJson {
    pub polynomial: String,
    pub strategy: String,
    pub total_exceptionals: Int,
    pub tree: NodeJson,
}

impl From<&DecompositionTree> for TreeJson {
    fn from(t: &DecompositionTree) -> Self {
        Self {
            polynomial: polynomial(&t.root),
            strategy: strategy_name(t.strategy),
            total_exceptionals: (&t.total_exceptionals).into(),
            tree: (&t.node).into(),
        }
    }
}

pub fn tree_text(t: &DecompositionTree) -> String {
    let mut out = format!(
        "{}  [strategy {}, {} exceptional objects]\n",
        polynomial(&t.root),
        strategy_name(t.strategy),
        t.total_exceptionals
    );
    node_text(&t.node, 0, &mut out);
    out
}

fn node_text(n: &TreeNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}{}: {}  (total {})", node_label(n), polynomial(&n.polynomial), n.total);
    match &n.kind {
        NodeKind::Cleave { step, child } => {
            let _ = writeln!(out, "{pad}  cleave b={} case {} t={}", step.b, step.case, step.t);
            node_text(child, depth + 1, out);
        }
        NodeKind::FermatLeaf { .. } => {}
        NodeKind::Tensor { children } => children.iter().for_each(|c| node_text(c, depth + 1, out)),
    }
}

/// One DOT node per cleave, sum and leaf; cleave edges are labelled by `t`.
pub fn tree_dot(t: &DecompositionTree) -> String {
    let mut out = String::from("digraph decomposition {\n  node [shape=box, fontname=\"monospace\"];\n");
    let mut next = 0usize;
    dot_node(&t.node, &mut next, &mut out);
    out.push_str("}\n");
    out
}

fn dot_node(n: &TreeNode, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    let _ = writeln!(out, "  n{id} [label=\"{}\\n{}\\ntotal {}\"];", node_label(n), polynomial(&n.polynomial), n.total);
    match &n.kind {
        NodeKind::Cleave { step, child } => {
            let c = dot_node(child, next, out);
            let _ = writeln!(out, "  n{id} -> n{c} [label=\"t={} (b={}, case {})\"];", step.t, step.b, step.case);
        }
        NodeKind::FermatLeaf { .. } => {}
        NodeKind::Tensor { children } => {
            for ch in children {
                let c = dot_node(ch, next, out);
                let _ = writeln!(out, "  n{id} -> n{c} [style=dashed];");
            }
        }
    }
    id
}

#[derive(Debug, Clone, Serialize)]
pub struct GorensteinStepJson {
    pub atom: String,
    pub b: u32,
    pub w_minus: Vec<String>,
    pub d: Vec<Int>,
    pub sum_d: Int,
}

#[derive(Debug, Clone, Serialize)]
pub struct GorensteinJson {
    pub polynomial: String,
    pub gorenstein: bool,
    pub tilting: bool,
    pub transpose_weights: WeightsJson,
    pub steps: Vec<GorensteinStepJson>,
    pub terminal: Vec<u32>,
    pub terminal_polynomial: Option<String>,
}

impl GorensteinJson {
    pub fn new(m: &ExponentMatrix, r: &GorensteinReport) -> Self {
        Self {
            polynomial: polynomial(m),
            gorenstein: r.gorenstein,
            tilting: r.tilting,
            transpose_weights: (&r.transpose_weights).into(),
            steps: r
                .steps
                .iter()
                .map(|s| GorensteinStepJson {
                    atom: atom_label(&s.atom),
                    b: s.b,
                    w_minus: s.w_minus.atoms.iter().map(atom_label).collect(),
                    d: ints(&s.vgit.d),
                    sum_d: (&s.vgit.sum_d).into(),
                })
                .collect(),
            terminal: r.terminal.clone(),
            terminal_polynomial: r.terminal_polynomial().map(|t| polynomial(&t)),
        }
    }

    pub fn to_text(&self) -> String {
        let w = &self.transpose_weights;
        let mut s =
            format!("polynomial: {}\ntranspose weights: r = {:?}, d^T = {}\n", self.polynomial, w.weights, w.degree);
        if !self.gorenstein {
            s.push_str("not Gorenstein: some r_i does not divide d^T\ntilting: false\n");
            return s;
        }
        for st in &self.steps {
            let _ = writeln!(s, "{} --b={}--> {}   (sum d = 0)", st.atom, st.b, st.w_minus.join(" + "));
        }
        let _ = writeln!(s, "terminal: {}", self.terminal_polynomial.as_deref().unwrap_or(""));
        s.push_str("tilting: true\n");
        s
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}
