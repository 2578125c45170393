//! Exhaustive enumeration of `Hom_T(M,N)` and its heap and module structure.
//!
//! The search assigns images in index order. An element that is `[a,b,c]` or
//! `t·a` for earlier indices has its image forced; only the remaining free
//! positions branch. Every heap triple and action pair is checked as soon as
//! all of its indices are assigned, so partial maps are pruned early and the
//! output comes out in lexicographic order of map tables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::heap::FiniteHeap;
use crate::module::{same_truss, FiniteModule, ModuleMorphism};

/// Default cap on the number of branches of a Hom search.
pub const DEFAULT_HOM_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, Copy)]
enum Derivation {
    Heap(usize, usize, usize),
    Act(usize, usize),
}

/// A Hom search with optional per-element candidate sets.
#[derive(Debug, Clone)]
pub struct HomSearch {
    dom: Arc<FiniteModule>,
    cod: Arc<FiniteModule>,
    allowed: Vec<Vec<bool>>,
    derivation: Vec<Option<Derivation>>,
    heap_checks: Vec<Vec<[usize; 3]>>,
    act_checks: Vec<Vec<(usize, usize)>>,
}

impl HomSearch {
    pub fn new(dom: Arc<FiniteModule>, cod: Arc<FiniteModule>) -> Result<Self> {
        if !same_truss(dom.truss(), cod.truss()) {
            return Err(Error::TrussMismatch);
        }
        let (n, nt) = (dom.size(), dom.truss().size());
        let mut derivation = vec![None; n];
        let mut heap_checks = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let d = dom.op(a, b, c);
                    let inputs = a.max(b).max(c);
                    heap_checks[inputs.max(d)].push([a, b, c]);
                    if d > inputs && derivation[d].is_none() {
                        derivation[d] = Some(Derivation::Heap(a, b, c));
                    }
                }
            }
        }
        let mut act_checks = vec![Vec::new(); n];
        for t in 0..nt {
            for y in 0..n {
                let d = dom.act(t, y);
                act_checks[y.max(d)].push((t, y));
                if d > y && derivation[d].is_none() {
                    derivation[d] = Some(Derivation::Act(t, y));
                }
            }
        }
        let allowed = vec![vec![true; cod.size()]; n];
        Ok(Self { dom, cod, allowed, derivation, heap_checks, act_checks })
    }

    pub fn dom(&self) -> &Arc<FiniteModule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteModule> {
        &self.cod
    }

    /// Restricts the image of `x` to `values`.
    pub fn restrict(mut self, x: usize, values: impl IntoIterator<Item = usize>) -> Self {
        let mut keep = vec![false; self.cod.size()];
        for v in values {
            if v < keep.len() {
                keep[v] = true;
            }
        }
        for (slot, k) in self.allowed[x].iter_mut().zip(keep) {
            *slot &= k;
        }
        self
    }

    /// Number of branches: the product of candidate counts over the
    /// positions whose image is not forced by earlier ones.
    pub fn space(&self) -> u128 {
        let mut total: u128 = 1;
        for x in 0..self.dom.size() {
            let k = self.allowed[x].iter().filter(|&&b| b).count() as u128;
            if k == 0 {
                return 0;
            }
            if self.derivation[x].is_none() {
                total = total.saturating_mul(k);
            }
        }
        total
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        let needed = self.space();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(())
    }

    /// Calls `visit` on every T-linear map in lexicographic order until it
    /// returns `false`.
    pub fn run(&self, budget: u128, mut visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
        self.check_budget(budget)?;
        let mut f = vec![usize::MAX; self.dom.size()];
        self.extend(0, &mut f, &mut visit);
        Ok(())
    }

    fn consistent(&self, x: usize, f: &[usize]) -> bool {
        let (d, c) = (&self.dom, &self.cod);
        self.heap_checks[x].iter().all(|&[a, b, e]| f[d.op(a, b, e)] == c.op(f[a], f[b], f[e]))
            && self.act_checks[x].iter().all(|&(t, y)| f[d.act(t, y)] == c.act(t, f[y]))
    }

    fn extend(&self, x: usize, f: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if x == f.len() {
            return visit(f);
        }
        let forced = self.derivation[x].map(|d| match d {
            Derivation::Heap(a, b, c) => self.cod.op(f[a], f[b], f[c]),
            Derivation::Act(t, y) => self.cod.act(t, f[y]),
        });
        let choices: Box<dyn Iterator<Item = usize>> = match forced {
            Some(v) => Box::new(std::iter::once(v)),
            None => Box::new(0..self.cod.size()),
        };
        for v in choices {
            if !self.allowed[x][v] {
                continue;
            }
            f[x] = v;
            if self.consistent(x, f) && !self.extend(x + 1, f, visit) {
                return false;
            }
        }
        f[x] = usize::MAX;
        true
    }

    /// All matching maps, validated.
    pub fn collect(&self, budget: u128) -> Result<Vec<ModuleMorphism>> {
        let mut maps = Vec::new();
        self.run(budget, |f| {
            maps.push(f.to_vec());
            true
        })?;
        maps.into_iter().map(|m| self.morphism(m)).collect()
    }

    /// First matching map satisfying `pred`, validated.
    pub fn find(&self, budget: u128, mut pred: impl FnMut(&[usize]) -> bool) -> Result<Option<ModuleMorphism>> {
        let mut found = None;
        self.run(budget, |f| {
            if pred(f) {
                found = Some(f.to_vec());
                false
            } else {
                true
            }
        })?;
        found.map(|m| self.morphism(m)).transpose()
    }

    fn morphism(&self, map: Vec<usize>) -> Result<ModuleMorphism> {
        let m = ModuleMorphism::new(self.dom.clone(), self.cod.clone(), map)?;
        m.validate().map_err(|v| Error::Consistency(format!("hom search produced a non-linear map: {v}")))?;
        Ok(m)
    }
}

/// `Hom_T(M,N)` as a lexicographically ordered list.
#[derive(Debug, Clone)]
pub struct HomSet {
    pub dom: Arc<FiniteModule>,
    pub cod: Arc<FiniteModule>,
    pub morphisms: Vec<ModuleMorphism>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn maps(&self) -> Vec<Vec<usize>> {
        self.morphisms.iter().map(|m| m.map.clone()).collect()
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.morphisms.binary_search_by(|m| m.map.as_slice().cmp(map)).ok()
    }
}

pub fn enumerate_hom(dom: &Arc<FiniteModule>, cod: &Arc<FiniteModule>, budget: u128) -> Result<HomSet> {
    let morphisms = HomSearch::new(dom.clone(), cod.clone())?.collect(budget)?;
    Ok(HomSet { dom: dom.clone(), cod: cod.clone(), morphisms })
}

/// The pointwise heap `[f,g,h](m) = [f(m),g(m),h(m)]` over morphism indices.
pub fn hom_heap(hom: &HomSet) -> Result<FiniteHeap> {
    let k = hom.len();
    if k == 0 {
        return Err(Error::EmptyCarrier);
    }
    let cod = &hom.cod;
    let mut op = Vec::with_capacity(k * k * k);
    let mut buf = vec![0; hom.dom.size()];
    for f in &hom.morphisms {
        for g in &hom.morphisms {
            for h in &hom.morphisms {
                for (m, slot) in buf.iter_mut().enumerate() {
                    *slot = cod.op(f.map[m], g.map[m], h.map[m]);
                }
                let i = hom.index_of(&buf).ok_or_else(|| {
                    Error::Falsified(format!(
                        "pointwise [{:?}, {:?}, {:?}] = {buf:?} is not T-linear",
                        f.map, g.map, h.map
                    ))
                })?;
                op.push(i);
            }
        }
    }
    FiniteHeap::new(k, op)
}

/// The pointwise action `(t·f)(m) = t·f(m)`, checked to stay inside Hom.
pub fn hom_module(hom: &HomSet) -> Result<FiniteModule> {
    let heap = Arc::new(hom_heap(hom)?);
    let truss = hom.dom.truss().clone();
    let cod = &hom.cod;
    let mut act = Vec::with_capacity(truss.size() * hom.len());
    for t in 0..truss.size() {
        for f in &hom.morphisms {
            let tf: Vec<usize> = f.map.iter().map(|&y| cod.act(t, y)).collect();
            let i = hom
                .index_of(&tf)
                .ok_or_else(|| Error::HomActionNotClosed { t, morphism: f.map.clone() })?;
            act.push(i);
        }
    }
    FiniteModule::new(truss, heap, act, cod.is_unital())
}

/// First isomorphism `M → N` in lexicographic order, if any.
pub fn find_isomorphism(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>, budget: u128) -> Result<Option<ModuleMorphism>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let search = HomSearch::new(a.clone(), b.clone())?;
    search.find(budget, |f| {
        let mut seen = vec![false; f.len()];
        f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truss::{truss_of_ring, FiniteRing, FiniteTruss};

    fn t(n: usize) -> Arc<FiniteTruss> {
        Arc::new(truss_of_ring(&FiniteRing::zn(n)).unwrap())
    }

    #[test]
    fn self_hom_of_t_z2() {
        let m = Arc::new(FiniteModule::regular(t(2)));
        let hom = enumerate_hom(&m, &m, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(hom.maps(), vec![vec![0, 0], vec![0, 1]]);
        let heap = hom_heap(&hom).unwrap();
        assert_eq!(heap, FiniteHeap::cyclic(2));
        let module = hom_module(&hom).unwrap();
        assert_eq!(module.act(0, 1), 0);
        assert_eq!(module.act(1, 1), 1);
        assert_eq!(module.validate().unwrap(), Ok(()));
    }

    #[test]
    fn hom_from_and_to_singleton() {
        let tr = t(4);
        let star = Arc::new(FiniteModule::singleton(tr.clone()));
        let triv = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(FiniteHeap::cyclic(3))));
        let reg = Arc::new(FiniteModule::regular(tr));
        assert_eq!(enumerate_hom(&star, &reg, DEFAULT_HOM_BUDGET).unwrap().len(), 1);
        assert_eq!(enumerate_hom(&star, &triv, DEFAULT_HOM_BUDGET).unwrap().len(), 3);
        assert_eq!(enumerate_hom(&reg, &star, DEFAULT_HOM_BUDGET).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let tr = t(2);
        let triv = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(FiniteHeap::cyclic(7))));
        let err = enumerate_hom(&triv, &triv, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 49, budget: 10 }));
    }

    #[test]
    fn isomorphisms_between_induced_modules() {
        let reg = FiniteModule::regular(t(4));
        let a = Arc::new(reg.induced(1).unwrap());
        let b = Arc::new(reg.induced(3).unwrap());
        let iso = find_isomorphism(&a, &b, DEFAULT_HOM_BUDGET).unwrap().unwrap();
        assert!(iso.is_bijective());
        let z2 = Arc::new(FiniteModule::regular(t(2)));
        let c = Arc::new(FiniteModule::trivial_action(t(2), Arc::new(FiniteHeap::cyclic(2))));
        assert!(find_isomorphism(&z2, &c, DEFAULT_HOM_BUDGET).unwrap().is_none());
    }

    /// Upper triangular 2×2 matrices over 𝔽₂, encoded `(a,b,c) ↦ 4a+2b+c`
    /// for `[[a,b],[0,c]]`.
    fn upper_triangular() -> FiniteRing {
        let dec = |x: usize| (x >> 2 & 1, x >> 1 & 1, x & 1);
        let enc = |a: usize, b: usize, c: usize| (a % 2) << 2 | (b % 2) << 1 | (c % 2);
        let add = (0..64).map(|i| (i / 8) ^ (i % 8)).collect();
        let mul = (0..64)
            .map(|i| {
                let ((a, b, c), (d, e, f)) = (dec(i / 8), dec(i % 8));
                enc(a * d, a * e + b * f, c * f)
            })
            .collect();
        FiniteRing::new(8, add, mul, 0, Some(enc(1, 0, 1))).unwrap()
    }

    #[test]
    fn hom_action_fails_over_a_noncommutative_truss() {
        let ring = upper_triangular();
        assert_eq!(ring.validate(), Ok(()));
        assert!(!ring.is_commutative());
        let m = Arc::new(FiniteModule::regular(Arc::new(truss_of_ring(&ring).unwrap())));
        let hom = enumerate_hom(&m, &m, DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(hom.len(), 8);
        assert!(hom_heap(&hom).unwrap().is_abelian());
        assert!(matches!(hom_module(&hom), Err(Error::HomActionNotClosed { .. })));
    }
}
