//! Factoring a map through an epimorphism or a monomorphism.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::lemmas::{uniqueness, Uniqueness};
use crate::hom::HomSearch;
use crate::module::{same_module, ModuleMorphism};

#[derive(Debug, Clone, Serialize)]
pub struct Factorization {
    pub h: Vec<usize>,
    pub uniqueness: Uniqueness,
    pub h_injective: bool,
    pub h_surjective: bool,
    #[serde(skip)]
    pub morphism: ModuleMorphism,
}

fn fiber(m: &ModuleMorphism, y: usize) -> Vec<usize> {
    (0..m.dom.size()).filter(|&x| m.apply(x) == y).collect()
}

/// The unique `h: M′ → N` with `f = h∘g`, given `g: M → M′` surjective and
/// `ker_s g ⊆ ker_t f`.
pub fn factor_through_epi(f: &ModuleMorphism, g: &ModuleMorphism, s: usize, t: usize, budget: u128) -> Result<Factorization> {
    if !same_module(&f.dom, &g.dom) {
        return Err(Error::ChainMismatch("f and g have different domains".into()));
    }
    if !g.is_surjective() {
        return Err(Error::Precondition("g is not surjective".into()));
    }
    if !g.image().contains(&s) {
        return Err(Error::NotInImage(s));
    }
    if !f.image().contains(&t) {
        return Err(Error::NotInImage(t));
    }
    if let Some(x) = fiber(g, s).into_iter().find(|&x| f.apply(x) != t) {
        return Err(Error::Hypothesis(format!("ker_s g ⊄ ker_t f: g({x}) = {s} but f({x}) = {} ≠ {t}", f.apply(x))));
    }
    let mut map = vec![usize::MAX; g.cod.size()];
    for x in 0..g.dom.size() {
        let (y, v) = (g.apply(x), f.apply(x));
        if map[y] == usize::MAX {
            map[y] = v;
        } else if map[y] != v {
            return Err(Error::Falsified(format!("h({y}) depends on the preimage chosen")));
        }
    }
    let h = ModuleMorphism::new(g.cod.clone(), f.cod.clone(), map)?;
    h.validate().map_err(|v| Error::Falsified(format!("h is not T-linear: {v}")))?;
    let ker_t_h = fiber(&h, t);
    let mut g_ker_t_f: Vec<usize> = fiber(f, t).into_iter().map(|x| g.apply(x)).collect();
    g_ker_t_f.sort_unstable();
    g_ker_t_f.dedup();
    if ker_t_h != g_ker_t_f {
        return Err(Error::Falsified("ker_t h ≠ g(ker_t f)".into()));
    }
    if h.image() != f.image() {
        return Err(Error::Falsified("Im h ≠ Im f".into()));
    }
    let monic_criterion = fiber(&h, t).into_iter().any(|m1| fiber(g, m1) == fiber(f, t));
    if h.is_injective() != monic_criterion {
        return Err(Error::Falsified("h is monic but ker_{m′} g ≠ ker_t f, or conversely".into()));
    }
    if h.is_surjective() != f.is_surjective() {
        return Err(Error::Falsified("h epic and f epic disagree".into()));
    }
    let mut search = HomSearch::new(h.dom.clone(), h.cod.clone())?;
    for x in 0..g.dom.size() {
        search = search.restrict(g.apply(x), [f.apply(x)]);
    }
    let uniqueness = uniqueness(search, budget, &h)?;
    Ok(Factorization { h: h.map.clone(), uniqueness, h_injective: h.is_injective(), h_surjective: h.is_surjective(), morphism: h })
}

/// The unique `h: M → N′` with `f = g∘h`, given `g: N′ → N` injective and
/// `Im f ⊆ Im g`.
pub fn factor_through_mono(f: &ModuleMorphism, g: &ModuleMorphism, budget: u128) -> Result<Factorization> {
    if !same_module(&f.cod, &g.cod) {
        return Err(Error::ChainMismatch("f and g have different codomains".into()));
    }
    if !g.is_injective() {
        return Err(Error::Precondition("g is not injective".into()));
    }
    let pre = g.preimages();
    let mut map = Vec::with_capacity(f.dom.size());
    for m in 0..f.dom.size() {
        match pre[f.apply(m)].as_slice() {
            [b] => map.push(*b),
            _ => return Err(Error::Hypothesis(format!("Im f ⊄ Im g: f({m}) = {} is not in Im g", f.apply(m)))),
        }
    }
    let h = ModuleMorphism::new(f.dom.clone(), g.dom.clone(), map)?;
    h.validate().map_err(|v| Error::Falsified(format!("h is not T-linear: {v}")))?;
    if (0..f.dom.size()).any(|m| g.apply(h.apply(m)) != f.apply(m)) {
        return Err(Error::Consistency("f ≠ g∘h".into()));
    }
    if (0..f.dom.size()).any(|m| fiber(&h, h.apply(m)) != fiber(f, f.apply(m))) {
        return Err(Error::Falsified("ker_{h(m)} h ≠ ker_{f(m)} f for some m".into()));
    }
    let f_image = f.image();
    let pullback: Vec<usize> = (0..g.dom.size()).filter(|&b| f_image.contains(&g.apply(b))).collect();
    if h.image() != pullback {
        return Err(Error::Falsified("Im h ≠ g⁻¹(Im f)".into()));
    }
    if h.is_surjective() != (f_image == g.image()) {
        return Err(Error::Falsified("h epic and Im f = Im g disagree".into()));
    }
    if h.is_injective() != f.is_injective() {
        return Err(Error::Falsified("h monic and f monic disagree".into()));
    }
    let mut search = HomSearch::new(h.dom.clone(), h.cod.clone())?;
    for m in 0..f.dom.size() {
        search = search.restrict(m, [h.apply(m)]);
    }
    let uniqueness = uniqueness(search, budget, &h)?;
    Ok(Factorization { h: h.map.clone(), uniqueness, h_injective: h.is_injective(), h_surjective: h.is_surjective(), morphism: h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fixtures::*;
    use crate::hom::DEFAULT_HOM_BUDGET;
    use crate::module::{quotient_module, Submodule};

    #[test]
    fn through_identity() {
        let tr = t(4);
        let z4 = zm(&tr, 4);
        let f = ModuleMorphism::new(z4.clone(), zm(&tr, 2), vec![0, 1, 0, 1]).unwrap();
        let id = ModuleMorphism::identity(z4.clone());
        assert_eq!(factor_through_epi(&f, &id, 0, 0, DEFAULT_HOM_BUDGET).unwrap().h, f.map);
        let id2 = ModuleMorphism::identity(f.cod.clone());
        assert_eq!(factor_through_mono(&f, &id2, DEFAULT_HOM_BUDGET).unwrap().h, f.map);
    }

    #[test]
    fn mod_two_through_quotient_is_an_iso() {
        let tr = t(4);
        let z4 = zm(&tr, 4);
        let f = ModuleMorphism::new(z4.clone(), zm(&tr, 2), vec![0, 1, 0, 1]).unwrap();
        let q = quotient_module(&z4, &Submodule::new(z4.clone(), [0, 2]).unwrap()).unwrap();
        let r = factor_through_epi(&f, &q.projection, 0, 0, DEFAULT_HOM_BUDGET).unwrap();
        assert!(r.h_injective && r.h_surjective);
        assert_eq!(r.uniqueness, Uniqueness::Enumerated);
    }

    #[test]
    fn hypothesis_violation_names_a_witness() {
        let tr = t(4);
        let z4 = zm(&tr, 4);
        let f = ModuleMorphism::new(z4.clone(), zm(&tr, 2), vec![0, 1, 0, 1]).unwrap();
        let c = ModuleMorphism::constant(z4.clone(), zm(&tr, 1), 0).unwrap();
        let err = factor_through_epi(&f, &c, 0, 0, DEFAULT_HOM_BUDGET).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(msg) if msg.contains("g(1)")));
    }

    #[test]
    fn corestriction_through_inclusion() {
        let tr = t(4);
        let z4 = zm(&tr, 4);
        let two = ModuleMorphism::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let inc = Submodule::new(z4.clone(), [0, 2]).unwrap().embed().inclusion;
        let r = factor_through_mono(&two, &inc, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(r.h, vec![0, 1, 0, 1]);
        assert!(r.h_surjective);
        let c = ModuleMorphism::constant(z4.clone(), z4.clone(), 0).unwrap();
        assert_eq!(factor_through_mono(&c, &inc, DEFAULT_HOM_BUDGET).unwrap().h, vec![0; 4]);
        let id = ModuleMorphism::identity(z4);
        assert!(matches!(factor_through_mono(&id, &inc, DEFAULT_HOM_BUDGET), Err(Error::Hypothesis(_))));
    }
}
