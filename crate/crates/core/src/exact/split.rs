//! Splitting of short exact sequences: sections, retractions and product
//! decompositions.

use std::sync::Arc;

use serde::Serialize;

use crate::diagram::Ses;
use crate::error::{Error, Result};
use crate::exact::is_short_exact;
use crate::hom::HomSearch;
use crate::module::{FiniteModule, ModuleMorphism};

#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    pub e2: usize,
    pub has_section: bool,
    pub has_retraction: bool,
    pub has_product_iso: bool,
    /// First section `h` with `g∘h = 1` in search order.
    pub section: Option<Vec<usize>>,
    /// First retraction `k` with `k∘f = 1` in search order.
    pub retraction: Option<Vec<usize>>,
    /// `φ(m₁, m₂) = [f(m₁), h(e₂), h(m₂)]`, pairs indexed `m₁·|M₂| + m₂`.
    pub phi: Option<Vec<usize>>,
}

impl SplitReport {
    pub fn splits(&self) -> bool {
        self.has_section
    }
}

struct Setup<'a> {
    f: &'a ModuleMorphism,
    g: &'a ModuleMorphism,
    e2: usize,
    product: Arc<FiniteModule>,
    k: usize,
}

impl Setup<'_> {
    /// `φ∘τ₁ = f` and `g∘φ = π₂`, with `φ` a T-linear bijection.
    fn check_phi(&self, phi: &ModuleMorphism, name: &str) -> Result<()> {
        phi.validate().map_err(|v| Error::Falsified(format!("{name} is not T-linear: {v}")))?;
        if !phi.is_bijective() {
            return Err(Error::Falsified(format!("{name} is not bijective")));
        }
        for m1 in 0..self.f.dom.size() {
            if phi.apply(m1 * self.k + self.e2) != self.f.apply(m1) {
                return Err(Error::Falsified(format!("{name}∘τ₁ ≠ f at {m1}")));
            }
        }
        for p in 0..self.product.size() {
            if self.g.apply(phi.apply(p)) != p % self.k {
                return Err(Error::Falsified(format!("g∘{name} ≠ π₂ at pair {p}")));
            }
        }
        Ok(())
    }

    fn phi_from_section(&self, h: &ModuleMorphism) -> Result<ModuleMorphism> {
        let m = &self.f.cod;
        let he2 = h.apply(self.e2);
        let phi = ModuleMorphism::from_fn(self.product.clone(), m.clone(), |p| {
            m.op(self.f.apply(p / self.k), he2, h.apply(p % self.k))
        })?;
        self.check_phi(&phi, "φ")?;
        Ok(phi)
    }

    fn phi_from_retraction(&self, k: &ModuleMorphism) -> Result<ModuleMorphism> {
        let psi = ModuleMorphism::from_fn(self.f.cod.clone(), self.product.clone(), |m| k.apply(m) * self.k + self.g.apply(m))?;
        psi.validate().map_err(|v| Error::Falsified(format!("ψ = (k, g) is not T-linear: {v}")))?;
        if !psi.is_bijective() {
            return Err(Error::Falsified("ψ = (k, g) is not bijective".into()));
        }
        let mut inverse = vec![0; self.product.size()];
        for m in 0..psi.dom.size() {
            inverse[psi.apply(m)] = m;
        }
        let phi = ModuleMorphism::new(self.product.clone(), self.f.cod.clone(), inverse)?;
        self.check_phi(&phi, "ψ⁻¹")?;
        Ok(phi)
    }

    /// `h = φ∘τ₂` and `k = π₁∘φ⁻¹`, with `τ₂(m₂) = (e₁, m₂)`.
    fn maps_from_phi(&self, phi: &ModuleMorphism, e1: usize) -> Result<()> {
        let h = ModuleMorphism::from_fn(self.g.cod.clone(), self.f.cod.clone(), |m2| phi.apply(e1 * self.k + m2))?;
        h.validate().map_err(|v| Error::Falsified(format!("φ∘τ₂ is not T-linear: {v}")))?;
        if (0..self.k).any(|m2| self.g.apply(h.apply(m2)) != m2) {
            return Err(Error::Falsified("g∘φ∘τ₂ ≠ 1".into()));
        }
        let mut inverse = vec![0; self.product.size()];
        for p in 0..self.product.size() {
            inverse[phi.apply(p)] = p;
        }
        let k = ModuleMorphism::from_fn(self.f.cod.clone(), self.f.dom.clone(), |m| inverse[m] / self.k)?;
        k.validate().map_err(|v| Error::Falsified(format!("π₁∘φ⁻¹ is not T-linear: {v}")))?;
        if (0..self.f.dom.size()).any(|m1| k.apply(self.f.apply(m1)) != m1) {
            return Err(Error::Falsified("π₁∘φ⁻¹∘f ≠ 1".into()));
        }
        Ok(())
    }
}

/// Searches for a section, a retraction and a product isomorphism and checks
/// that all three exist or none does.
pub fn splitting(ses: &Ses, budget: u128) -> Result<SplitReport> {
    let (f, g) = (&ses.f, &ses.g);
    let report = is_short_exact(f, g)?;
    if !report.is_short_exact() {
        return Err(Error::Precondition("sequence is not short exact".into()));
    }
    let e2 = match ses.e2 {
        Some(e) => e,
        None => report.witness.ok_or_else(|| Error::Consistency("short exact without a witness".into()))?,
    };
    let image = f.image();
    if (0..g.dom.size()).filter(|&x| g.apply(x) == e2).ne(image.iter().copied()) {
        return Err(Error::Precondition(format!("Im f ≠ ker_{e2} g")));
    }
    if !g.cod.is_absorber(e2) {
        return Err(Error::Precondition(format!("e₂ = {e2} is not an absorber of M₂")));
    }
    let e1 = *f.dom.absorbers().first().ok_or_else(|| Error::Precondition("Abs(M₁) is empty".into()))?;

    let setup = Setup { f, g, e2, product: Arc::new(f.dom.product(&g.cod)?), k: g.cod.size() };
    let g_pre = g.preimages();

    let mut sections = HomSearch::new(g.cod.clone(), g.dom.clone())?;
    for m2 in 0..g.cod.size() {
        sections = sections.restrict(m2, g_pre[m2].iter().copied());
    }
    let section = sections.find(budget, |_| true)?;

    let mut retractions = HomSearch::new(f.cod.clone(), f.dom.clone())?;
    for m1 in 0..f.dom.size() {
        retractions = retractions.restrict(f.apply(m1), [m1]);
    }
    let retraction = retractions.find(budget, |_| true)?;

    let mut isos = HomSearch::new(setup.product.clone(), f.cod.clone())?;
    for p in 0..setup.product.size() {
        let (m1, m2) = (p / setup.k, p % setup.k);
        isos = if m2 == e2 { isos.restrict(p, [f.apply(m1)]) } else { isos.restrict(p, g_pre[m2].iter().copied()) };
    }
    let product_iso = isos.find(budget, |m| {
        let mut seen = vec![false; m.len()];
        m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    })?;

    let (has_section, has_retraction, has_product_iso) = (section.is_some(), retraction.is_some(), product_iso.is_some());
    if has_section != has_retraction || has_section != has_product_iso {
        return Err(Error::Falsified(format!(
            "splitting: section {has_section}, retraction {has_retraction}, product isomorphism {has_product_iso}"
        )));
    }
    let mut phi = None;
    if let (Some(h), Some(k), Some(iso)) = (&section, &retraction, &product_iso) {
        setup.check_phi(iso, "searched φ")?;
        setup.maps_from_phi(iso, e1)?;
        setup.phi_from_retraction(k)?;
        phi = Some(setup.phi_from_section(h)?.map);
    }
    Ok(SplitReport {
        e2,
        has_section,
        has_retraction,
        has_product_iso,
        section: section.map(|m| m.map),
        retraction: retraction.map(|m| m.map),
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fixtures::*;
    use crate::heap::FiniteHeap;
    use crate::hom::DEFAULT_HOM_BUDGET;

    #[test]
    fn z2_z4_z2_does_not_split() {
        let (f, g) = z2_z4_z2();
        let r = splitting(&Ses::new(f, g, None).unwrap(), DEFAULT_HOM_BUDGET).unwrap();
        assert!(!r.has_section && !r.has_retraction && !r.has_product_iso);
    }

    #[test]
    fn product_splits() {
        let tr = t(6);
        let (a, b) = (zm(&tr, 2), zm(&tr, 3));
        let ab = Arc::new(a.product(&b).unwrap());
        let f = ModuleMorphism::from_fn(a.clone(), ab.clone(), |x| x * 3).unwrap();
        let g = ModuleMorphism::from_fn(ab, b, |x| x % 3).unwrap();
        let r = splitting(&Ses::new(f, g, None).unwrap(), DEFAULT_HOM_BUDGET).unwrap();
        assert!(r.has_section && r.has_retraction && r.has_product_iso);
        assert_eq!(r.phi.unwrap(), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn singleton_quotient_splits() {
        let tr = t(4);
        let m = zm(&tr, 4);
        let star = Arc::new(FiniteModule::singleton(tr.clone()));
        let f = ModuleMorphism::identity(m.clone());
        let g = ModuleMorphism::constant(m, star, 0).unwrap();
        assert!(splitting(&Ses::new(f, g, None).unwrap(), DEFAULT_HOM_BUDGET).unwrap().splits());
    }

    #[test]
    fn trivial_action_quotient_splits_over_its_witness() {
        let tr = t(2);
        let m = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(FiniteHeap::cyclic(2))));
        let two = zm(&tr, 2);
        let mp = Arc::new(two.product(&m).unwrap());
        let f = ModuleMorphism::from_fn(two, mp.clone(), |x| x * 2 + 1).unwrap();
        let g = ModuleMorphism::from_fn(mp, m, |x| x % 2).unwrap();
        let r = splitting(&Ses::new(f.clone(), g.clone(), None).unwrap(), DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(r.e2, 1);
        assert!(r.splits());
        let err = splitting(&Ses::new(f, g, Some(0)).unwrap(), DEFAULT_HOM_BUDGET).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
