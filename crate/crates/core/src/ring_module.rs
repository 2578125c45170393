//! Modules over finite rings and the functor `T` into modules over `T(R)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Law, LawViolation, Result, Verdict};
use crate::heap::{heap_of_group, FiniteGroup};
use crate::module::{FiniteModule, ModuleMorphism};
use crate::table;
use crate::truss::{truss_of_ring, FiniteRing, FiniteTruss};

/// An abelian group `(N,+,0)` with an action table `act[r][x]` of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteRingModule {
    ring: Arc<FiniteRing>,
    size: usize,
    add: Vec<usize>,
    zero: usize,
    act: Vec<usize>,
    unital: bool,
}

impl FiniteRingModule {
    pub fn new(ring: Arc<FiniteRing>, size: usize, add: Vec<usize>, zero: usize, act: Vec<usize>, unital: bool) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        table::check_map("add", size * size, size, &add)?;
        table::check_map("act", ring.size() * size, size, &act)?;
        if zero >= size {
            return Err(Error::OutOfRange { what: "zero", index: zero, size });
        }
        if unital && ring.one().is_none() {
            return Err(table::malformed("unital", "declared unital over a ring without a unit"));
        }
        Ok(Self { ring, size, add, zero, act, unital })
    }

    pub fn from_fn(
        ring: Arc<FiniteRing>,
        size: usize,
        zero: usize,
        unital: bool,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let add_t = (0..size * size).map(|i| add(i / size, i % size)).collect();
        let act_t = (0..ring.size() * size).map(|i| act(i / size, i % size)).collect();
        Self::new(ring, size, add_t, zero, act_t, unital)
    }

    /// `R` acting on itself.
    pub fn regular(ring: Arc<FiniteRing>) -> Self {
        let r = ring.clone();
        let n = ring.size();
        let unital = ring.one().is_some();
        Self::from_fn(ring, n, r.zero(), unital, |a, b| r.add(a, b), |a, b| r.mul(a, b)).expect("regular module")
    }

    /// The zero module.
    pub fn zero_module(ring: Arc<FiniteRing>) -> Self {
        let unital = ring.one().is_some();
        Self::from_fn(ring, 1, 0, unital, |_, _| 0, |_, _| 0).expect("zero module")
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.size + x]
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn act_table(&self) -> &[usize] {
        &self.act
    }

    pub fn nested_add(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size, &self.add)
    }

    pub fn nested_act(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size, &self.act)
    }

    pub fn additive_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::new(self.size, self.add.clone(), self.zero)
    }

    /// Group laws (with commutativity) first, then the module laws.
    pub fn validate(&self) -> Verdict {
        let n = self.size;
        let group = self
            .additive_group()
            .map_err(|_| LawViolation::new(Law::GroupInverse, [self.zero]))?;
        group.validate()?;
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(LawViolation::new(Law::AdditiveGroup, [a, b]));
                }
            }
        }
        let ring = &self.ring;
        let nr = ring.size();
        for r in 0..nr {
            for x in 0..n {
                for y in 0..n {
                    if self.act(r, self.add(x, y)) != self.add(self.act(r, x), self.act(r, y)) {
                        return Err(LawViolation::new(Law::ActionOverModule, [r, x, y]));
                    }
                }
            }
        }
        for r in 0..nr {
            for s in 0..nr {
                for x in 0..n {
                    if self.act(ring.add(r, s), x) != self.add(self.act(r, x), self.act(s, x)) {
                        return Err(LawViolation::new(Law::ActionAddition, [r, s, x]));
                    }
                    if self.act(ring.mul(r, s), x) != self.act(r, self.act(s, x)) {
                        return Err(LawViolation::new(Law::ActionAssociativity, [r, s, x]));
                    }
                }
            }
        }
        if self.unital {
            let one = ring.one().expect("checked at construction");
            if let Some(x) = (0..n).find(|&x| self.act(one, x) != x) {
                return Err(LawViolation::new(Law::ActionUnit, [x]));
            }
        }
        Ok(())
    }

    /// Product module on pairs indexed `a * |other| + b`.
    pub fn product(&self, other: &FiniteRingModule) -> Result<FiniteRingModule> {
        if self.ring != other.ring {
            return Err(Error::TrussMismatch);
        }
        let k = other.size;
        FiniteRingModule::from_fn(
            self.ring.clone(),
            self.size * k,
            self.zero * k + other.zero,
            self.unital && other.unital,
            |a, b| self.add(a / k, b / k) * k + other.add(a % k, b % k),
            |r, x| self.act(r, x / k) * k + other.act(r, x % k),
        )
    }

    /// Whether `subset` is closed under addition, negation and the action
    /// and contains zero.
    pub fn is_submodule(&self, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.size];
        for &x in subset {
            if x >= self.size {
                return false;
            }
            mask[x] = true;
        }
        if !mask[self.zero] {
            return false;
        }
        let closed_add = subset.iter().all(|&a| subset.iter().all(|&b| mask[self.add(a, b)]));
        let closed_act = (0..self.ring.size()).all(|r| subset.iter().all(|&x| mask[self.act(r, x)]));
        closed_add && closed_act
    }

    /// The submodule on `subset`, re-indexed ascending, with its inclusion.
    pub fn submodule(self: &Arc<Self>, subset: &[usize]) -> Result<RingModuleMorphism> {
        let elems: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if !self.is_submodule(&elems) {
            return Err(Error::Precondition(format!("{elems:?} is not a submodule")));
        }
        let idx = |x: usize| elems.binary_search(&x).expect("closed");
        let sub = FiniteRingModule::from_fn(
            self.ring.clone(),
            elems.len(),
            idx(self.zero),
            self.unital,
            |a, b| idx(self.add(elems[a], elems[b])),
            |r, x| idx(self.act(r, elems[x])),
        )?;
        Ok(RingModuleMorphism { dom: Arc::new(sub), cod: self.clone(), map: elems.clone() })
    }

    /// `N/S` for a submodule `S`, classes labelled by smallest member, with
    /// the projection.
    pub fn quotient(self: &Arc<Self>, subset: &[usize]) -> Result<RingModuleMorphism> {
        if !self.is_submodule(subset) {
            return Err(Error::Precondition(format!("{subset:?} is not a submodule")));
        }
        let n = self.size;
        let group = self.additive_group()?;
        let mut mask = vec![false; n];
        for &s in subset {
            mask[s] = true;
        }
        let partition = crate::partition::Partition::from_relation(n, |a, b| mask[self.add(b, group.inv(a))]);
        let k = partition.len();
        let cls = |x: usize| partition.class_of(x);
        let rep = |c: usize| partition.representative(c);
        let quotient = FiniteRingModule::from_fn(
            self.ring.clone(),
            k,
            cls(self.zero),
            self.unital,
            |a, b| cls(self.add(rep(a), rep(b))),
            |r, x| cls(self.act(r, rep(x))),
        )?;
        let map = (0..n).map(cls).collect();
        let proj = RingModuleMorphism { dom: self.clone(), cod: Arc::new(quotient), map };
        proj.validate()
            .map_err(|v| Error::Consistency(format!("projection onto quotient is not R-linear: {v}")))?;
        Ok(proj)
    }
}

/// An additive `R`-linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModuleMorphism {
    pub dom: Arc<FiniteRingModule>,
    pub cod: Arc<FiniteRingModule>,
    pub map: Vec<usize>,
}

impl RingModuleMorphism {
    pub fn new(dom: Arc<FiniteRingModule>, cod: Arc<FiniteRingModule>, map: Vec<usize>) -> Result<Self> {
        if dom.ring != cod.ring {
            return Err(Error::TrussMismatch);
        }
        table::check_map("map", dom.size, cod.size, &map)?;
        Ok(Self { dom, cod, map })
    }

    pub fn from_fn(dom: Arc<FiniteRingModule>, cod: Arc<FiniteRingModule>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let map = (0..dom.size).map(f).collect();
        Self::new(dom, cod, map)
    }

    pub fn identity(module: Arc<FiniteRingModule>) -> Self {
        let map = (0..module.size).collect();
        Self { dom: module.clone(), cod: module, map }
    }

    pub fn zero(dom: Arc<FiniteRingModule>, cod: Arc<FiniteRingModule>) -> Result<Self> {
        let z = cod.zero;
        Self::from_fn(dom, cod, |_| z)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingModuleMorphism) -> Result<RingModuleMorphism> {
        if !(Arc::ptr_eq(&self.cod, &next.dom) || self.cod == next.dom) {
            return Err(Error::ChainMismatch("codomain of the first map is not the domain of the second".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        Ok(RingModuleMorphism { dom: self.dom.clone(), cod: next.cod.clone(), map })
    }

    pub fn validate(&self) -> Verdict {
        let (d, c, f) = (&self.dom, &self.cod, &self.map);
        for x in 0..d.size {
            for y in 0..d.size {
                if f[d.add(x, y)] != c.add(f[x], f[y]) {
                    return Err(LawViolation::new(Law::Additivity, [x, y]));
                }
            }
        }
        for r in 0..d.ring.size() {
            for x in 0..d.size {
                if f[d.act(r, x)] != c.act(r, f[x]) {
                    return Err(LawViolation::new(Law::Linearity, [r, x]));
                }
            }
        }
        Ok(())
    }

    pub fn image(&self) -> Vec<usize> {
        self.map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Elements sent to zero, ascending.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.dom.size).filter(|&x| self.map[x] == self.cod.zero).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1 && self.image().len() == self.dom.size
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.size
    }
}

/// Exactness of `0 → A → B → C → 0` in the group-theoretic sense: `f`
/// injective, `g` surjective and `Im f = Ker g`.
pub fn is_short_exact_rings(f: &RingModuleMorphism, g: &RingModuleMorphism) -> Result<bool> {
    if !(Arc::ptr_eq(&f.cod, &g.dom) || f.cod == g.dom) {
        return Err(Error::ChainMismatch("middle modules differ".into()));
    }
    Ok(f.is_injective() && g.is_surjective() && f.image() == g.kernel())
}

/// Whether `Im f = Ker g` as subsets of the middle module.
pub fn is_exact_rings_at(f: &RingModuleMorphism, g: &RingModuleMorphism) -> Result<bool> {
    if !(Arc::ptr_eq(&f.cod, &g.dom) || f.cod == g.dom) {
        return Err(Error::ChainMismatch("middle modules differ".into()));
    }
    Ok(f.image() == g.kernel())
}

/// The functor `T`: shares the truss `T(R)` among all its images so that the
/// resulting modules can be composed.
#[derive(Debug, Clone)]
pub struct TFunctor {
    pub ring: Arc<FiniteRing>,
    pub truss: Arc<FiniteTruss>,
}

impl TFunctor {
    pub fn new(ring: Arc<FiniteRing>) -> Result<Self> {
        let truss = Arc::new(truss_of_ring(&ring)?);
        Ok(Self { ring, truss })
    }

    /// `(N,+,·) ↦ (H(N,+),·)`.
    pub fn module(&self, n: &FiniteRingModule) -> Result<FiniteModule> {
        if *n.ring != *self.ring {
            return Err(Error::TrussMismatch);
        }
        let heap = heap_of_group(&n.additive_group()?);
        FiniteModule::new(self.truss.clone(), Arc::new(heap), n.act.clone(), n.unital)
    }

    /// Same map table between the images of the endpoints.
    pub fn morphism(&self, f: &RingModuleMorphism) -> Result<ModuleMorphism> {
        let dom = Arc::new(self.module(&f.dom)?);
        let cod = Arc::new(self.module(&f.cod)?);
        ModuleMorphism::new(dom, cod, f.map.clone())
    }

    /// Images of a composable pair sharing the middle module.
    pub fn pair(&self, f: &RingModuleMorphism, g: &RingModuleMorphism) -> Result<(ModuleMorphism, ModuleMorphism)> {
        let a = Arc::new(self.module(&f.dom)?);
        let b = Arc::new(self.module(&f.cod)?);
        let c = Arc::new(self.module(&g.cod)?);
        Ok((ModuleMorphism::new(a, b.clone(), f.map.clone())?, ModuleMorphism::new(b, c, g.map.clone())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n))
    }

    #[test]
    fn regular_and_quotient_modules_validate() {
        let r = zn(4);
        let reg = Arc::new(FiniteRingModule::regular(r.clone()));
        assert_eq!(reg.validate(), Ok(()));
        let proj = reg.quotient(&[0, 2]).unwrap();
        assert_eq!(proj.cod.size(), 2);
        assert_eq!(proj.cod.validate(), Ok(()));
        assert_eq!(proj.map, vec![0, 1, 0, 1]);
        let inc = reg.submodule(&[0, 2]).unwrap();
        assert_eq!(inc.validate(), Ok(()));
        assert!(is_short_exact_rings(&inc, &proj).unwrap());
        assert!(reg.quotient(&[1, 3]).is_err());
    }

    #[test]
    fn t_images_validate() {
        let r = zn(4);
        let t = TFunctor::new(r.clone()).unwrap();
        let reg = Arc::new(FiniteRingModule::regular(r.clone()));
        let z2 = reg.quotient(&[0, 2]).unwrap();
        let tm = t.module(&z2.cod).unwrap();
        assert_eq!(tm.size(), 2);
        assert_eq!(tm.validate().unwrap(), Ok(()));
        let zero = t.module(&FiniteRingModule::zero_module(r)).unwrap();
        assert_eq!(zero.size(), 1);
        let tf = t.morphism(&z2).unwrap();
        assert_eq!(tf.validate(), Ok(()));
        assert_eq!(tf.map, z2.map);
    }

    #[test]
    fn broken_action_is_caught() {
        let r = zn(3);
        let m = FiniteRingModule::from_fn(r, 3, 0, true, |a, b| (a + b) % 3, |s, x| (s * s * x) % 3).unwrap();
        assert!(m.validate().is_err());
    }
}
