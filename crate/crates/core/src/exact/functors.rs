//! Exactness of `Hom_T(Q, −)`, of `(−)_Abs` and of the functor `T`.

use std::sync::Arc;

use serde::Serialize;

use crate::abs::{abs_morphism, abs_object, AbsImage};
use crate::diagram::require_linear;
use crate::error::{Error, Result};
use crate::exact::{is_exact_at, is_short_exact, require_chain, ShortExactReport};
use crate::hom::{enumerate_hom, hom_module, HomSet};
use crate::module::{FiniteModule, ModuleMorphism};
use crate::ring_module::{is_short_exact_rings, RingModuleMorphism, TFunctor};

#[derive(Debug, Clone, Serialize)]
pub struct HomExactReport {
    /// `|Hom(Q,M)|, |Hom(Q,N)|, |Hom(Q,P)|`.
    pub sizes: [usize; 3],
    /// `α ↦ f∘α` on morphism indices.
    pub h: Vec<usize>,
    /// `β ↦ g∘β` on morphism indices.
    pub l: Vec<usize>,
    /// Index of the constant map `q ↦ e`.
    pub gamma: usize,
    /// Whether all three Hom heaps carry the pointwise action; when they do,
    /// `h` and `l` were also checked T-linear and the sequence exact there.
    pub hom_modules: bool,
}

fn postcompose(from: &HomSet, to: &HomSet, by: &ModuleMorphism) -> Result<Vec<usize>> {
    from.morphisms
        .iter()
        .map(|a| {
            let composed: Vec<usize> = a.map.iter().map(|&x| by.apply(x)).collect();
            to.index_of(&composed).ok_or_else(|| Error::Consistency(format!("composite {composed:?} is missing from the Hom set")))
        })
        .collect()
}

/// `⋆ → Hom(Q,M) → Hom(Q,N) → Hom(Q,P)` for `⋆ → M → N → P` exact at `N`
/// with absorbing witness `e`.
pub fn hom_left_exact(q: &Arc<FiniteModule>, f: &ModuleMorphism, g: &ModuleMorphism, e: usize, budget: u128) -> Result<HomExactReport> {
    require_chain(f, g)?;
    require_linear("f", f)?;
    require_linear("g", g)?;
    if e >= g.cod.size() {
        return Err(Error::OutOfRange { what: "e", index: e, size: g.cod.size() });
    }
    if !g.cod.is_absorber(e) {
        return Err(Error::NotAbsorber(e));
    }
    if !f.is_injective() {
        return Err(Error::Precondition("f is not injective".into()));
    }
    if (0..g.dom.size()).filter(|&x| g.apply(x) == e).ne(f.image()) {
        return Err(Error::Precondition(format!("Im f ≠ ker_{e} g")));
    }
    let hm = enumerate_hom(q, &f.dom, budget)?;
    let hn = enumerate_hom(q, &f.cod, budget)?;
    let hp = enumerate_hom(q, &g.cod, budget)?;
    let h = postcompose(&hm, &hn, f)?;
    let l = postcompose(&hn, &hp, g)?;
    let gamma = hp.index_of(&vec![e; q.size()]).ok_or_else(|| Error::Consistency("constant absorber map is missing".into()))?;

    let mut seen = vec![false; hn.len()];
    if let Some(a) = h.iter().position(|&b| std::mem::replace(&mut seen[b], true)) {
        return Err(Error::Falsified(format!("h is not injective at α = {a}")));
    }
    let mut image = h.clone();
    image.sort_unstable();
    let kernel: Vec<usize> = (0..hn.len()).filter(|&b| l[b] == gamma).collect();
    if image != kernel {
        return Err(Error::Falsified("Im h ≠ ker_γ l".into()));
    }

    let hom_modules = if hm.len() == 0 || hn.len() == 0 {
        false
    } else {
        match (hom_module(&hm), hom_module(&hn), hom_module(&hp)) {
            (Ok(a), Ok(b), Ok(c)) => {
                let (a, b, c) = (Arc::new(a), Arc::new(b), Arc::new(c));
                let hh = ModuleMorphism::new(a, b.clone(), h.clone())?;
                let ll = ModuleMorphism::new(b, c, l.clone())?;
                hh.validate().map_err(|v| Error::Falsified(format!("h is not T-linear: {v}")))?;
                ll.validate().map_err(|v| Error::Falsified(format!("l is not T-linear: {v}")))?;
                if is_exact_at(&hh, &ll)? != Some(gamma) {
                    return Err(Error::Consistency("Hom sequence exact as sets but not as modules".into()));
                }
                true
            }
            (Err(Error::HomActionNotClosed { .. }), _, _) | (_, Err(Error::HomActionNotClosed { .. }), _) | (_, _, Err(Error::HomActionNotClosed { .. })) => false,
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e),
        }
    };
    Ok(HomExactReport { sizes: [hm.len(), hn.len(), hp.len()], h, l, gamma, hom_modules })
}

#[derive(Debug, Clone, Serialize)]
pub struct AbsExactReport {
    pub e: usize,
    pub images: [AbsImage; 3],
    pub f_abs: Vec<usize>,
    pub g_abs: Vec<usize>,
    #[serde(skip)]
    pub maps: (RingModuleMorphism, RingModuleMorphism),
}

/// `0 → M_Abs → N_Abs → P_Abs → 0` from `⋆ → M → N → P` exact at `N` with
/// absorbing witness `e`, `g(Abs N) = Abs P` and `g` surjective.
pub fn abs_exact(f: &ModuleMorphism, g: &ModuleMorphism, functor: &TFunctor) -> Result<AbsExactReport> {
    require_chain(f, g)?;
    require_linear("f", f)?;
    require_linear("g", g)?;
    if !f.is_injective() {
        return Err(Error::Precondition("f is not injective".into()));
    }
    let e = is_exact_at(f, g)?.ok_or_else(|| Error::Precondition("sequence is not exact at N".into()))?;
    if !g.cod.is_absorber(e) {
        return Err(Error::Precondition(format!("witness {e} is not an absorber of P")));
    }
    let abs_n = f.cod.absorbers();
    let abs_p = g.cod.absorbers();
    let mut hit: Vec<usize> = abs_n.iter().map(|&n| g.apply(n)).collect();
    hit.sort_unstable();
    hit.dedup();
    if let Some(&p) = abs_p.iter().find(|p| hit.binary_search(p).is_err()) {
        return Err(Error::Hypothesis(format!("g(Abs N) ≠ Abs P: absorber {p} of P is not g of an absorber")));
    }
    if let Some(&p) = hit.iter().find(|p| abs_p.binary_search(p).is_err()) {
        return Err(Error::Consistency(format!("g sends an absorber to the non-absorber {p}")));
    }
    if !g.is_surjective() {
        return Err(Error::Precondition("g is not surjective".into()));
    }
    let images = [abs_object(&f.dom, functor)?, abs_object(&f.cod, functor)?, abs_object(&g.cod, functor)?];
    let fa = abs_morphism(f, &images[0], &images[1])?;
    let ga = abs_morphism(g, &images[1], &images[2])?;
    if !is_short_exact_rings(&fa, &ga)? {
        return Err(Error::Falsified(format!(
            "Abs sequence is not exact: f_Abs injective {}, g_Abs surjective {}, Im f_Abs = Ker g_Abs {}",
            fa.is_injective(),
            ga.is_surjective(),
            fa.image() == ga.kernel()
        )));
    }
    Ok(AbsExactReport { e, images, f_abs: fa.map.clone(), g_abs: ga.map.clone(), maps: (fa, ga) })
}

#[derive(Debug, Clone, Serialize)]
pub struct TSesReport {
    pub report: ShortExactReport,
    #[serde(skip)]
    pub maps: (ModuleMorphism, ModuleMorphism),
}

/// The image under `T` of a short exact sequence of `R`-modules.
pub fn t_functor_ses(f: &RingModuleMorphism, g: &RingModuleMorphism, functor: &TFunctor) -> Result<TSesReport> {
    f.validate().map_err(|v| Error::Precondition(format!("f is not R-linear: {v}")))?;
    g.validate().map_err(|v| Error::Precondition(format!("g is not R-linear: {v}")))?;
    if !is_short_exact_rings(f, g)? {
        return Err(Error::Precondition("sequence of R-modules is not short exact".into()));
    }
    let (tf, tg) = functor.pair(f, g)?;
    let report = is_short_exact(&tf, &tg)?;
    if !report.is_short_exact() || report.witness != Some(g.cod.zero()) {
        return Err(Error::Falsified(format!("T-image is not short exact over 0 (witness {:?})", report.witness)));
    }
    Ok(TSesReport { report, maps: (tf, tg) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fixtures::*;
    use crate::heap::FiniteHeap;
    use crate::hom::DEFAULT_HOM_BUDGET;
    use crate::ring_module::FiniteRingModule;
    use crate::truss::FiniteRing;

    #[test]
    fn hom_into_z2_z4_z2() {
        let (f, g) = z2_z4_z2();
        let tr = f.dom.truss().clone();
        for q in [zm(&tr, 2), zm(&tr, 4), Arc::new(FiniteModule::singleton(tr.clone()))] {
            let r = hom_left_exact(&q, &f, &g, 0, DEFAULT_HOM_BUDGET).unwrap();
            assert!(r.hom_modules);
        }
        let star = Arc::new(FiniteModule::singleton(tr));
        let r = hom_left_exact(&star, &f, &g, 0, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(r.sizes, [1, 1, 1]);
    }

    #[test]
    fn hom_with_identity_f() {
        let tr = t(4);
        let m = zm(&tr, 4);
        let f = ModuleMorphism::identity(m.clone());
        let star = Arc::new(FiniteModule::singleton(tr));
        let g = ModuleMorphism::constant(m.clone(), star, 0).unwrap();
        let r = hom_left_exact(&m, &f, &g, 0, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(r.h, (0..r.sizes[1]).collect::<Vec<_>>());
    }

    #[test]
    fn non_absorbing_e_is_rejected() {
        let (f, g) = z2_z4_z2();
        assert!(matches!(hom_left_exact(&f.dom, &f, &g, 1, DEFAULT_HOM_BUDGET), Err(Error::NotAbsorber(1))));
    }

    fn ring_ses(n: usize) -> (TFunctor, RingModuleMorphism, RingModuleMorphism) {
        let functor = TFunctor::new(Arc::new(FiniteRing::zn(n * n))).unwrap();
        let r = functor.ring.clone();
        let big = Arc::new(FiniteRingModule::regular(r.clone()));
        let sub: Vec<usize> = (0..n * n).step_by(n).collect();
        let inc = big.submodule(&sub).unwrap();
        let proj = big.quotient(&sub).unwrap();
        (functor, inc, proj)
    }

    #[test]
    fn t_then_abs_recovers_the_ring_sequence() {
        let (functor, f, g) = ring_ses(2);
        let t = t_functor_ses(&f, &g, &functor).unwrap();
        let r = abs_exact(&t.maps.0, &t.maps.1, &functor).unwrap();
        assert_eq!(r.images.each_ref().map(|i| i.module.size()), [2, 4, 2]);
    }

    #[test]
    fn trivial_actions_give_zero_abs_images() {
        let functor = TFunctor::new(Arc::new(FiniteRing::zn(2))).unwrap();
        let tr = functor.truss.clone();
        let a = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(FiniteHeap::cyclic(2))));
        let b = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(FiniteHeap::cyclic(4))));
        let f = ModuleMorphism::new(a, b.clone(), vec![0, 2]).unwrap();
        let g = ModuleMorphism::new(b, Arc::new(FiniteModule::trivial_action(tr, Arc::new(FiniteHeap::cyclic(2)))), vec![0, 1, 0, 1]).unwrap();
        let r = abs_exact(&f, &g, &functor).unwrap();
        assert!(r.images.iter().all(|i| i.module.size() == 1));
    }

    #[test]
    fn broken_abs_hypothesis_names_the_missed_absorber() {
        let functor = TFunctor::new(Arc::new(FiniteRing::zn(4))).unwrap();
        let tr = functor.truss.clone();
        let (z2, z4) = (zm(&tr, 2), zm(&tr, 4));
        let triv = FiniteModule::trivial_action(tr.clone(), Arc::new(FiniteHeap::cyclic(2)));
        let p = Arc::new(z4.product(&triv).unwrap());
        let f = ModuleMorphism::new(z2, z4.clone(), vec![0, 2]).unwrap();
        let g = ModuleMorphism::from_fn(z4.clone(), p, |n| (2 * n % 4) * 2).unwrap();
        let err = abs_exact(&f, &g, &functor).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(msg) if msg.contains("absorber 1 ")));
        let g = ModuleMorphism::new(z4.clone(), z4, vec![0, 2, 0, 2]).unwrap();
        assert!(matches!(abs_exact(&f, &g, &functor), Err(Error::Precondition(_))));
    }
}
