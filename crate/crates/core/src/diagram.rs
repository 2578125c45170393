//! Fixed-shape diagrams, validated eagerly: every map T-linear, every square
//! commuting and every declared exactness holding before an engine runs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{is_exact_at, is_short_exact, require_chain};
use crate::module::{FiniteModule, ModuleMorphism};

pub(crate) fn require_linear(name: &str, m: &ModuleMorphism) -> Result<()> {
    m.validate().map_err(|v| Error::Precondition(format!("map {name} is not T-linear: {v}")))
}

fn require_link(a: &str, f: &ModuleMorphism, b: &str, g: &ModuleMorphism) -> Result<()> {
    require_chain(f, g).map_err(|_| Error::Shape(format!("codomain of {a} is not the domain of {b}")))
}

/// `second ∘ first = fourth ∘ third`, pointwise.
fn require_square(name: &str, first: &ModuleMorphism, second: &ModuleMorphism, third: &ModuleMorphism, fourth: &ModuleMorphism) -> Result<()> {
    let lhs = first.then(second)?;
    let rhs = third.then(fourth)?;
    match (0..lhs.dom.size()).find(|&x| lhs.apply(x) != rhs.apply(x)) {
        Some(x) => Err(Error::Precondition(format!(
            "square {name} does not commute at {x}: {} vs {}",
            lhs.apply(x),
            rhs.apply(x)
        ))),
        None => Ok(()),
    }
}

fn require_exact(name: &str, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<usize> {
    is_exact_at(f, g)?.ok_or_else(|| Error::Precondition(format!("{name} is not exact")))
}

fn require_short_exact(name: &str, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<usize> {
    let r = is_short_exact(f, g)?;
    match r.witness {
        Some(w) if r.verdict_a => Ok(w),
        _ => Err(Error::Precondition(format!("{name} is not short exact"))),
    }
}

/// ```text
///       M′ --φ--> M --ψ--> M″ --> ⋆
///       |f′       |f       |f″
/// ⋆ --> N′ --φ₁-> N --ψ₁-> N″
/// ```
#[derive(Debug, Clone)]
pub struct SnakeDiagram {
    pub phi: ModuleMorphism,
    pub psi: ModuleMorphism,
    pub phi1: ModuleMorphism,
    pub psi1: ModuleMorphism,
    pub f_left: ModuleMorphism,
    pub f_mid: ModuleMorphism,
    pub f_right: ModuleMorphism,
    pub top_witness: usize,
    pub bottom_witness: usize,
}

impl SnakeDiagram {
    pub fn new(
        phi: ModuleMorphism,
        psi: ModuleMorphism,
        phi1: ModuleMorphism,
        psi1: ModuleMorphism,
        f_left: ModuleMorphism,
        f_mid: ModuleMorphism,
        f_right: ModuleMorphism,
    ) -> Result<Self> {
        require_link("φ", &phi, "ψ", &psi)?;
        require_link("φ₁", &phi1, "ψ₁", &psi1)?;
        require_link("f′", &f_left, "φ₁", &phi1)?;
        require_link("f", &f_mid, "ψ₁", &psi1)?;
        require_link("φ", &phi, "f", &f_mid)?;
        require_link("ψ", &psi, "f″", &f_right)?;
        if !crate::module::same_module(&phi.dom, &f_left.dom) {
            return Err(Error::Shape("domain of φ is not the domain of f′".into()));
        }
        if !crate::module::same_module(&psi1.cod, &f_right.cod) {
            return Err(Error::Shape("codomain of ψ₁ is not the codomain of f″".into()));
        }
        for (name, m) in [("φ", &phi), ("ψ", &psi), ("φ₁", &phi1), ("ψ₁", &psi1), ("f′", &f_left), ("f", &f_mid), ("f″", &f_right)] {
            require_linear(name, m)?;
        }
        require_square("f∘φ = φ₁∘f′", &phi, &f_mid, &f_left, &phi1)?;
        require_square("f″∘ψ = ψ₁∘f", &psi, &f_right, &f_mid, &psi1)?;
        let top_witness = require_exact("top row at M", &phi, &psi)?;
        if !psi.is_surjective() {
            return Err(Error::Precondition("top row is not exact at M″ (ψ is not surjective)".into()));
        }
        let bottom_witness = require_exact("bottom row at N", &phi1, &psi1)?;
        if !phi1.is_injective() {
            return Err(Error::Precondition("bottom row is not exact at N′ (φ₁ is not injective)".into()));
        }
        if phi.dom.absorbers().is_empty() {
            return Err(Error::Precondition("M′ has no absorbers".into()));
        }
        Ok(Self { phi, psi, phi1, psi1, f_left, f_mid, f_right, top_witness, bottom_witness })
    }

    pub fn m_left(&self) -> &Arc<FiniteModule> {
        &self.phi.dom
    }

    pub fn maps(&self) -> [(&'static str, &ModuleMorphism); 7] {
        [
            ("phi", &self.phi),
            ("psi", &self.psi),
            ("phi1", &self.phi1),
            ("psi1", &self.psi1),
            ("f_left", &self.f_left),
            ("f_mid", &self.f_mid),
            ("f_right", &self.f_right),
        ]
    }
}

/// Rows `⋆ → Xᵢ′ → Xᵢ → Xᵢ″ → ⋆` written as `(f, g)` pairs top to bottom and
/// columns as `(α′, α)`, `(β′, β)`, `(γ′, γ)` left to right.
///
/// ```text
/// A′ --f′--> B′ --g′--> C′
/// |α′        |β′        |γ′
/// A  --f---> B  --g---> C
/// |α         |β         |γ
/// A″ --f″--> B″ --g″--> C″
/// ```
#[derive(Debug, Clone)]
pub struct Grid3x3 {
    pub rows: [(ModuleMorphism, ModuleMorphism); 3],
    pub cols: [(ModuleMorphism, ModuleMorphism); 3],
}

const ROW_NAMES: [(&str, &str); 3] = [("f′", "g′"), ("f", "g"), ("f″", "g″")];
const COL_NAMES: [(&str, &str); 3] = [("α′", "α"), ("β′", "β"), ("γ′", "γ")];

impl Grid3x3 {
    /// Checks shape, linearity, commutativity of the four squares, short
    /// exactness of the three rows and of the middle column.
    pub fn new(rows: [(ModuleMorphism, ModuleMorphism); 3], cols: [(ModuleMorphism, ModuleMorphism); 3]) -> Result<Self> {
        for i in 0..3 {
            let (fa, ga) = ROW_NAMES[i];
            require_link(fa, &rows[i].0, ga, &rows[i].1)?;
            let (xa, xb) = COL_NAMES[i];
            require_link(xa, &cols[i].0, xb, &cols[i].1)?;
        }
        let node = |r: usize, c: usize| -> &Arc<FiniteModule> {
            match c {
                0 => &rows[r].0.dom,
                1 => &rows[r].0.cod,
                _ => &rows[r].1.cod,
            }
        };
        let col_node = |r: usize, c: usize| -> &Arc<FiniteModule> {
            match r {
                0 => &cols[c].0.dom,
                1 => &cols[c].0.cod,
                _ => &cols[c].1.cod,
            }
        };
        for r in 0..3 {
            for c in 0..3 {
                if !crate::module::same_module(node(r, c), col_node(r, c)) {
                    return Err(Error::Shape(format!("row and column disagree at node ({r}, {c})")));
                }
            }
        }
        for i in 0..3 {
            require_linear(ROW_NAMES[i].0, &rows[i].0)?;
            require_linear(ROW_NAMES[i].1, &rows[i].1)?;
            require_linear(COL_NAMES[i].0, &cols[i].0)?;
            require_linear(COL_NAMES[i].1, &cols[i].1)?;
        }
        require_square("f∘α′ = β′∘f′", &cols[0].0, &rows[1].0, &rows[0].0, &cols[1].0)?;
        require_square("g∘β′ = γ′∘g′", &cols[1].0, &rows[1].1, &rows[0].1, &cols[2].0)?;
        require_square("f″∘α = β∘f", &cols[0].1, &rows[2].0, &rows[1].0, &cols[1].1)?;
        require_square("g″∘β = γ∘g", &cols[1].1, &rows[2].1, &rows[1].1, &cols[2].1)?;
        for (i, name) in ["top row", "middle row", "bottom row"].iter().enumerate() {
            require_short_exact(name, &rows[i].0, &rows[i].1)?;
        }
        require_short_exact("middle column", &cols[1].0, &cols[1].1)?;
        Ok(Self { rows, cols })
    }
}

/// ```text
/// A --φ₁--> B --φ₂--> C --φ₃--> D --φ₄--> E
/// |α        |β        |γ        |δ        |ε
/// A′ -ψ₁--> B′ -ψ₂--> C′ -ψ₃--> D′ -ψ₄--> E′
/// ```
#[derive(Debug, Clone)]
pub struct Row2x5 {
    pub top: [ModuleMorphism; 4],
    pub bottom: [ModuleMorphism; 4],
    pub vertical: [ModuleMorphism; 5],
}

const TOP_NAMES: [&str; 4] = ["φ₁", "φ₂", "φ₃", "φ₄"];
const BOTTOM_NAMES: [&str; 4] = ["ψ₁", "ψ₂", "ψ₃", "ψ₄"];
const VERTICAL_NAMES: [&str; 5] = ["α", "β", "γ", "δ", "ε"];

impl Row2x5 {
    /// Checks shape, linearity, the four squares and exactness of both rows
    /// at the three interior positions.
    pub fn new(top: [ModuleMorphism; 4], bottom: [ModuleMorphism; 4], vertical: [ModuleMorphism; 5]) -> Result<Self> {
        for i in 0..3 {
            require_link(TOP_NAMES[i], &top[i], TOP_NAMES[i + 1], &top[i + 1])?;
            require_link(BOTTOM_NAMES[i], &bottom[i], BOTTOM_NAMES[i + 1], &bottom[i + 1])?;
        }
        for i in 0..5 {
            let (src, dst) = if i < 4 { (&top[i].dom, &bottom[i].dom) } else { (&top[3].cod, &bottom[3].cod) };
            if !crate::module::same_module(src, &vertical[i].dom) || !crate::module::same_module(dst, &vertical[i].cod) {
                return Err(Error::Shape(format!("vertical map {} does not connect the rows", VERTICAL_NAMES[i])));
            }
        }
        for i in 0..4 {
            require_linear(TOP_NAMES[i], &top[i])?;
            require_linear(BOTTOM_NAMES[i], &bottom[i])?;
        }
        for (name, v) in VERTICAL_NAMES.iter().zip(&vertical) {
            require_linear(name, v)?;
        }
        for i in 0..4 {
            let name = format!("{}∘{} = {}∘{}", VERTICAL_NAMES[i + 1], TOP_NAMES[i], BOTTOM_NAMES[i], VERTICAL_NAMES[i]);
            require_square(&name, &top[i], &vertical[i + 1], &vertical[i], &bottom[i])?;
        }
        for i in 0..3 {
            require_exact(&format!("top row at position {}", i + 2), &top[i], &top[i + 1])?;
            require_exact(&format!("bottom row at position {}", i + 2), &bottom[i], &bottom[i + 1])?;
        }
        Ok(Self { top, bottom, vertical })
    }
}

/// Two rows of two maps with vertical maps between them:
///
/// ```text
/// A′ --φ₁--> A --ψ₁--> A″
/// |          |         |
/// B′ --φ₂--> B --ψ₂--> B″
/// ```
///
/// The vertical maps present depend on the use: the cokernel-side induced
/// map needs the left and middle ones, the kernel-side one the middle and
/// right ones.
#[derive(Debug, Clone)]
pub struct TwoRow {
    pub phi1: ModuleMorphism,
    pub psi1: ModuleMorphism,
    pub phi2: ModuleMorphism,
    pub psi2: ModuleMorphism,
    pub left: Option<ModuleMorphism>,
    pub middle: ModuleMorphism,
    pub right: Option<ModuleMorphism>,
}

impl TwoRow {
    fn check_common(&self) -> Result<()> {
        require_link("φ₁", &self.phi1, "ψ₁", &self.psi1)?;
        require_link("φ₂", &self.phi2, "ψ₂", &self.psi2)?;
        require_link("φ₁", &self.phi1, "middle", &self.middle)?;
        require_link("middle", &self.middle, "ψ₂", &self.psi2)?;
        for (name, m) in [("φ₁", &self.phi1), ("ψ₁", &self.psi1), ("φ₂", &self.phi2), ("ψ₂", &self.psi2), ("middle", &self.middle)] {
            require_linear(name, m)?;
        }
        Ok(())
    }

    /// Rows `A′ → A → A″ → ⋆` and `B′ → B → B″ → ⋆`, left square commuting.
    pub fn cokernel_side(phi1: ModuleMorphism, psi1: ModuleMorphism, phi2: ModuleMorphism, psi2: ModuleMorphism, left: ModuleMorphism, middle: ModuleMorphism) -> Result<Self> {
        let d = Self { phi1, psi1, phi2, psi2, left: Some(left), middle, right: None };
        d.check_common()?;
        let left = d.left.as_ref().expect("set");
        require_link("left", left, "φ₂", &d.phi2)?;
        if !crate::module::same_module(&left.dom, &d.phi1.dom) {
            return Err(Error::Shape("left vertical map does not start at A′".into()));
        }
        require_linear("left", left)?;
        require_square("middle∘φ₁ = φ₂∘left", &d.phi1, &d.middle, left, &d.phi2)?;
        require_exact("top row at A", &d.phi1, &d.psi1)?;
        require_exact("bottom row at B", &d.phi2, &d.psi2)?;
        if !d.psi1.is_surjective() || !d.psi2.is_surjective() {
            return Err(Error::Precondition("rows are not exact at the right end (ψ not surjective)".into()));
        }
        Ok(d)
    }

    /// Rows `⋆ → A′ → A → A″` and `⋆ → B′ → B → B″` exact with base points
    /// `a″`, `b″` such that `Im φ₁ = ker_{a″} ψ₁`, `Im φ₂ = ker_{b″} ψ₂` and
    /// `right(a″) = b″`; right square commuting.
    pub fn kernel_side(phi1: ModuleMorphism, psi1: ModuleMorphism, phi2: ModuleMorphism, psi2: ModuleMorphism, middle: ModuleMorphism, right: ModuleMorphism) -> Result<(Self, usize, usize)> {
        let d = Self { phi1, psi1, phi2, psi2, left: None, middle, right: Some(right) };
        d.check_common()?;
        let right = d.right.as_ref().expect("set");
        require_link("ψ₁", &d.psi1, "right", right)?;
        if !crate::module::same_module(&right.cod, &d.psi2.cod) {
            return Err(Error::Shape("right vertical map does not end at B″".into()));
        }
        require_linear("right", right)?;
        require_square("ψ₂∘middle = right∘ψ₁", &d.middle, &d.psi2, &d.psi1, right)?;
        let a = require_exact("top row at A", &d.phi1, &d.psi1)?;
        let b = require_exact("bottom row at B", &d.phi2, &d.psi2)?;
        if !d.phi1.is_injective() || !d.phi2.is_injective() {
            return Err(Error::Precondition("rows are not exact at the left end (φ not injective)".into()));
        }
        if right.apply(a) != b {
            return Err(Error::Hypothesis(format!("right vertical map sends a″ = {a} to {}, not b″ = {b}", right.apply(a))));
        }
        Ok((d, a, b))
    }
}

/// `⋆ → M₁ → M → M₂ → ⋆` with an optional declared base point in `M₂`.
#[derive(Debug, Clone)]
pub struct Ses {
    pub f: ModuleMorphism,
    pub g: ModuleMorphism,
    pub e2: Option<usize>,
}

impl Ses {
    pub fn new(f: ModuleMorphism, g: ModuleMorphism, e2: Option<usize>) -> Result<Self> {
        require_link("f", &f, "g", &g)?;
        require_linear("f", &f)?;
        require_linear("g", &g)?;
        if let Some(e) = e2 {
            if e >= g.cod.size() {
                return Err(Error::OutOfRange { what: "e2", index: e, size: g.cod.size() });
            }
        }
        Ok(Self { f, g, e2 })
    }
}
