//! Short-five, five and nine lemmas, and the maps induced between exact rows.

use serde::Serialize;

use crate::diagram::{Grid3x3, Row2x5, SnakeDiagram, TwoRow};
use crate::error::{Error, Result};
use crate::exact::{is_short_exact, ShortExactReport};
use crate::hom::HomSearch;
use crate::module::ModuleMorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapKind {
    pub injective: bool,
    pub surjective: bool,
}

impl MapKind {
    pub fn of(m: &ModuleMorphism) -> Self {
        Self { injective: m.is_injective(), surjective: m.is_surjective() }
    }

    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// One implication evaluated on an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl Clause {
    fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

fn settle(what: &str, clauses: &[Clause]) -> Result<()> {
    match clauses.iter().find(|c| !c.holds()) {
        Some(c) => Err(Error::Falsified(format!("{what}: hypotheses of clause `{}` hold but the conclusion fails", c.name))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShortFiveReport {
    pub f_left: MapKind,
    pub f_mid: MapKind,
    pub f_right: MapKind,
    pub clauses: Vec<Clause>,
}

pub fn short_five(d: &SnakeDiagram) -> Result<ShortFiveReport> {
    let (l, m, r) = (MapKind::of(&d.f_left), MapKind::of(&d.f_mid), MapKind::of(&d.f_right));
    let clauses = vec![
        Clause { name: "injective", hypothesis: l.injective && r.injective, conclusion: m.injective },
        Clause { name: "surjective", hypothesis: l.surjective && r.surjective, conclusion: m.surjective },
        Clause { name: "isomorphism", hypothesis: l.bijective() && r.bijective(), conclusion: m.bijective() },
    ];
    settle("short five lemma", &clauses)?;
    Ok(ShortFiveReport { f_left: l, f_mid: m, f_right: r, clauses })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiveReport {
    pub vertical: [MapKind; 5],
    pub clauses: Vec<Clause>,
}

pub fn five_lemma(d: &Row2x5) -> Result<FiveReport> {
    let v = [0, 1, 2, 3, 4].map(|i| MapKind::of(&d.vertical[i]));
    let [a, b, c, dd, e] = v;
    let clauses = vec![
        Clause { name: "injective", hypothesis: a.surjective && b.injective && dd.injective, conclusion: c.injective },
        Clause { name: "surjective", hypothesis: e.injective && b.surjective && dd.surjective, conclusion: c.surjective },
        Clause {
            name: "isomorphism",
            hypothesis: a.bijective() && b.bijective() && dd.bijective() && e.bijective(),
            conclusion: c.bijective(),
        },
    ];
    settle("five lemma", &clauses)?;
    Ok(FiveReport { vertical: v, clauses })
}

#[derive(Debug, Clone, Serialize)]
pub struct NineReport {
    pub first_column: ShortExactReport,
    pub last_column: ShortExactReport,
}

/// With rows and the middle column short exact (checked by [`Grid3x3::new`]),
/// the first column is short exact iff the last one is.
pub fn nine_lemma(d: &Grid3x3) -> Result<NineReport> {
    let first_column = is_short_exact(&d.cols[0].0, &d.cols[0].1)?;
    let last_column = is_short_exact(&d.cols[2].0, &d.cols[2].1)?;
    if first_column.is_short_exact() != last_column.is_short_exact() {
        return Err(Error::Falsified(format!(
            "nine lemma: first column short exact = {}, last column short exact = {}",
            first_column.is_short_exact(),
            last_column.is_short_exact()
        )));
    }
    Ok(NineReport { first_column, last_column })
}

/// How strongly uniqueness of an induced map was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    /// Every T-linear map satisfying the defining equation was enumerated and
    /// exactly one was found.
    Enumerated,
    /// The search was over budget; only existence and the equation were checked.
    Unverified,
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedMap {
    pub map: Vec<usize>,
    pub uniqueness: Uniqueness,
    /// `Some` when the vertical maps given are isomorphisms, recording whether
    /// the induced map is one too.
    pub iso_clause: Option<bool>,
    #[serde(skip)]
    pub morphism: ModuleMorphism,
}

pub(crate) fn uniqueness(search: HomSearch, budget: u128, h: &ModuleMorphism) -> Result<Uniqueness> {
    match search.collect(budget) {
        Ok(all) => match all.as_slice() {
            [only] if only.map == h.map => Ok(Uniqueness::Enumerated),
            _ => Err(Error::Falsified(format!("{} maps satisfy the defining equation, expected exactly one", all.len()))),
        },
        Err(Error::BudgetExceeded { .. }) => Ok(Uniqueness::Unverified),
        Err(e) => Err(e),
    }
}

/// The unique `h: A″ → B″` with `h∘ψ₁ = ψ₂∘g`, for a diagram built by
/// [`TwoRow::cokernel_side`].
pub fn induced_epi_map(d: &TwoRow, budget: u128) -> Result<InducedMap> {
    let left = d.left.as_ref().ok_or_else(|| Error::Shape("left vertical map missing".into()))?;
    let target = d.middle.then(&d.psi2)?;
    let mut map = vec![usize::MAX; d.psi1.cod.size()];
    for x in 0..d.psi1.dom.size() {
        let (x2, value) = (d.psi1.apply(x), target.apply(x));
        if map[x2] == usize::MAX {
            map[x2] = value;
        } else if map[x2] != value {
            return Err(Error::Falsified(format!("h({x2}) depends on the preimage chosen")));
        }
    }
    let h = ModuleMorphism::new(d.psi1.cod.clone(), d.psi2.cod.clone(), map)?;
    h.validate().map_err(|v| Error::Falsified(format!("induced map is not T-linear: {v}")))?;
    // Constrain h(ψ₁(x)) = ψ₂g(x); any solution must agree with h.
    let mut search = HomSearch::new(h.dom.clone(), h.cod.clone())?;
    let mut checks = vec![Vec::new(); h.dom.size()];
    for x in 0..d.psi1.dom.size() {
        checks[d.psi1.apply(x)].push(target.apply(x));
    }
    for (x2, values) in checks.into_iter().enumerate() {
        search = search.restrict(x2, values);
    }
    let uniqueness = uniqueness(search, budget, &h)?;
    let iso_clause = (left.is_bijective() && d.middle.is_bijective()).then(|| h.is_bijective());
    if iso_clause == Some(false) {
        return Err(Error::Falsified("vertical maps are isomorphisms but the induced map is not".into()));
    }
    Ok(InducedMap { map: h.map.clone(), uniqueness, iso_clause, morphism: h })
}

/// The unique `h: A′ → B′` with `φ₂∘h = f∘φ₁`, for a diagram built by
/// [`TwoRow::kernel_side`].
pub fn induced_mono_map(d: &TwoRow, budget: u128) -> Result<InducedMap> {
    let right = d.right.as_ref().ok_or_else(|| Error::Shape("right vertical map missing".into()))?;
    let target = d.phi1.then(&d.middle)?;
    let pre = d.phi2.preimages();
    let mut map = Vec::with_capacity(d.phi1.dom.size());
    for a in 0..d.phi1.dom.size() {
        match pre[target.apply(a)].as_slice() {
            [b] => map.push(*b),
            [] => return Err(Error::Falsified(format!("f∘φ₁({a}) is not in Im φ₂"))),
            _ => return Err(Error::Consistency("φ₂ was validated injective".into())),
        }
    }
    let h = ModuleMorphism::new(d.phi1.dom.clone(), d.phi2.dom.clone(), map)?;
    h.validate().map_err(|v| Error::Falsified(format!("induced map is not T-linear: {v}")))?;
    let mut search = HomSearch::new(h.dom.clone(), h.cod.clone())?;
    for a in 0..h.dom.size() {
        let t = target.apply(a);
        search = search.restrict(a, (0..h.cod.size()).filter(|&b| d.phi2.apply(b) == t));
    }
    let uniqueness = uniqueness(search, budget, &h)?;
    let iso_clause = (d.middle.is_bijective() && right.is_bijective()).then(|| h.is_bijective());
    if iso_clause == Some(false) {
        return Err(Error::Falsified("vertical maps are isomorphisms but the induced map is not".into()));
    }
    Ok(InducedMap { map: h.map.clone(), uniqueness, iso_clause, morphism: h })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact::fixtures::*;
    use crate::hom::DEFAULT_HOM_BUDGET;

    fn identity_stack() -> TwoRow {
        let (phi, psi) = z2_z4_z2();
        let id_l = ModuleMorphism::identity(phi.dom.clone());
        let id_m = ModuleMorphism::identity(phi.cod.clone());
        TwoRow::cokernel_side(phi.clone(), psi.clone(), phi, psi, id_l, id_m).unwrap()
    }

    #[test]
    fn induced_maps_on_identity_stacks() {
        let d = identity_stack();
        let h = induced_epi_map(&d, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(h.map, vec![0, 1]);
        assert_eq!(h.uniqueness, Uniqueness::Enumerated);
        assert_eq!(h.iso_clause, Some(true));

        let (phi, psi) = z2_z4_z2();
        let id_m = ModuleMorphism::identity(phi.cod.clone());
        let id_r = ModuleMorphism::identity(psi.cod.clone());
        let (d, a, b) = TwoRow::kernel_side(phi.clone(), psi.clone(), phi, psi, id_m, id_r).unwrap();
        assert_eq!((a, b), (0, 0));
        let h = induced_mono_map(&d, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(h.map, vec![0, 1]);
        assert_eq!(h.uniqueness, Uniqueness::Enumerated);
    }

    #[test]
    fn five_lemma_with_identity_verticals() {
        let tr = t(4);
        let z4 = zm(&tr, 4);
        let two = ModuleMorphism::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let row = [two.clone(), two.clone(), two.clone(), two];
        let ids = [0; 5].map(|_| ModuleMorphism::identity(z4.clone()));
        let d = Row2x5::new(row.clone(), row, ids).unwrap();
        let r = five_lemma(&d).unwrap();
        assert!(r.vertical[2].bijective());
    }

    #[test]
    fn nine_lemma_degenerate_and_broken() {
        let (f, g) = z2_z4_z2();
        let tr = f.dom.truss().clone();
        let (z2, z4) = (f.dom.clone(), f.cod.clone());
        let star = Arc::new(crate::module::FiniteModule::singleton(tr));
        let id2 = ModuleMorphism::identity(z2.clone());
        let to_star = ModuleMorphism::constant(z2.clone(), star.clone(), 0).unwrap();
        let row_top = (id2.clone(), to_star.clone());
        let row_mid = (f.clone(), g.clone());
        let z2b = g.cod.clone();
        let z2c = Arc::new((*z2).clone());
        let id2c = ModuleMorphism::identity(z2c.clone());
        let to_star_c = ModuleMorphism::constant(z2c.clone(), star.clone(), 0).unwrap();
        let row_bot = (id2c.clone(), to_star_c);
        let alpha_p = ModuleMorphism::identity(z2.clone());
        let alpha = ModuleMorphism::constant(z2.clone(), z2c.clone(), 0).unwrap();
        let beta_p = f.clone();
        let beta = ModuleMorphism::new(z4, z2c, vec![0, 1, 0, 1]).unwrap();
        let gamma_p = ModuleMorphism::constant(star.clone(), z2b.clone(), 0).unwrap();
        let gamma = ModuleMorphism::constant(z2b, star, 0).unwrap();
        let grid = Grid3x3::new([row_top, row_mid, row_bot], [(alpha_p, alpha), (beta_p, beta), (gamma_p, gamma)]).unwrap();
        let r = nine_lemma(&grid).unwrap();
        assert!(!r.first_column.is_short_exact());
        assert!(!r.last_column.is_short_exact());
    }
}
