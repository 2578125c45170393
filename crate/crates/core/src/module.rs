//! Finite left modules over a finite truss.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Law, LawViolation, Result, Verdict};
use crate::heap::{self, FiniteHeap, SubHeap};
use crate::partition::Partition;
use crate::table;
use crate::truss::FiniteTruss;

/// An abelian heap `M` with an action table `act[t][x]` of a truss `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModule {
    truss: Arc<FiniteTruss>,
    heap: Arc<FiniteHeap>,
    act: Vec<usize>,
    unital: bool,
}

pub(crate) fn same_truss(a: &Arc<FiniteTruss>, b: &Arc<FiniteTruss>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn same_module(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FiniteModule {
    pub fn new(truss: Arc<FiniteTruss>, heap: Arc<FiniteHeap>, act: Vec<usize>, unital: bool) -> Result<Self> {
        table::check_map("act", truss.size() * heap.size(), heap.size(), &act)?;
        if unital && truss.one().is_none() {
            return Err(table::malformed("unital", "declared unital over a truss without a unit"));
        }
        Ok(Self { truss, heap, act, unital })
    }

    pub fn from_fn(
        truss: Arc<FiniteTruss>,
        heap: Arc<FiniteHeap>,
        unital: bool,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let m = heap.size();
        let act = (0..truss.size() * m).map(|i| f(i / m, i % m)).collect();
        Self::new(truss, heap, act, unital)
    }

    /// `T` acting on itself by left multiplication.
    pub fn regular(truss: Arc<FiniteTruss>) -> Self {
        let unital = truss.one().is_some();
        let heap = truss.heap().clone();
        let t = truss.clone();
        Self::from_fn(truss, heap, unital, move |a, x| t.mul(a, x)).expect("regular module")
    }

    /// Every element fixed by every `t`.
    pub fn trivial_action(truss: Arc<FiniteTruss>, heap: Arc<FiniteHeap>) -> Self {
        let unital = truss.one().is_some();
        Self::from_fn(truss, heap, unital, |_, x| x).expect("trivial action")
    }

    /// The terminal module ⋆.
    pub fn singleton(truss: Arc<FiniteTruss>) -> Self {
        Self::trivial_action(truss, Arc::new(FiniteHeap::singleton()))
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn truss(&self) -> &Arc<FiniteTruss> {
        &self.truss
    }

    pub fn heap(&self) -> &Arc<FiniteHeap> {
        &self.heap
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize, c: usize) -> usize {
        self.heap.op(a, b, c)
    }

    #[inline]
    pub fn act(&self, t: usize, x: usize) -> usize {
        self.act[t * self.size() + x]
    }

    pub fn act_table(&self) -> &[usize] {
        &self.act
    }

    pub fn nested_act(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size(), &self.act)
    }

    /// The heap must be a valid abelian heap (errors otherwise); the action
    /// laws go into the verdict, first violation in lexicographic order.
    pub fn validate(&self) -> Result<Verdict> {
        self.heap.validate()?;
        self.heap.require_abelian()?;
        Ok(self.check_laws())
    }

    fn check_laws(&self) -> Verdict {
        let (nt, m) = (self.truss.size(), self.size());
        let tr = &self.truss;
        for t in 0..nt {
            for s in 0..nt {
                let ts = tr.mul(t, s);
                for x in 0..m {
                    if self.act(t, self.act(s, x)) != self.act(ts, x) {
                        return Err(LawViolation::new(Law::ActionAssociativity, [t, s, x]));
                    }
                }
            }
        }
        for t in 0..nt {
            for s in 0..nt {
                for u in 0..nt {
                    let tsu = tr.op(t, s, u);
                    for x in 0..m {
                        if self.act(tsu, x) != self.op(self.act(t, x), self.act(s, x), self.act(u, x)) {
                            return Err(LawViolation::new(Law::ActionOverTruss, [t, s, u, x]));
                        }
                    }
                }
            }
        }
        for t in 0..nt {
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        let lhs = self.act(t, self.op(x, y, z));
                        if lhs != self.op(self.act(t, x), self.act(t, y), self.act(t, z)) {
                            return Err(LawViolation::new(Law::ActionOverModule, [t, x, y, z]));
                        }
                    }
                }
            }
        }
        if self.unital {
            let one = tr.one().expect("checked at construction");
            if let Some(x) = (0..m).find(|&x| self.act(one, x) != x) {
                return Err(LawViolation::new(Law::ActionUnit, [x]));
            }
        }
        Ok(())
    }

    /// `Abs(M) = {x | t·x = x for all t}`, ascending.
    pub fn absorbers(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_absorber(x)).collect()
    }

    pub fn is_absorber(&self, x: usize) -> bool {
        (0..self.truss.size()).all(|t| self.act(t, x) == x)
    }

    /// `M^(e)`: the action `t·_e m = [t·m, t·e, e]`.
    pub fn induced(&self, e: usize) -> Result<FiniteModule> {
        if e >= self.size() {
            return Err(Error::OutOfRange { what: "base point", index: e, size: self.size() });
        }
        let act = (0..self.truss.size() * self.size())
            .map(|i| {
                let (t, x) = (i / self.size(), i % self.size());
                self.op(self.act(t, x), self.act(t, e), e)
            })
            .collect();
        FiniteModule::new(self.truss.clone(), self.heap.clone(), act, self.unital)
    }

    /// Product module on pairs indexed `m * |other| + n`.
    pub fn product(&self, other: &FiniteModule) -> Result<FiniteModule> {
        if !same_truss(&self.truss, &other.truss) {
            return Err(Error::TrussMismatch);
        }
        let k = other.size();
        let heap = Arc::new(self.heap.product(&other.heap));
        FiniteModule::from_fn(self.truss.clone(), heap, self.unital && other.unital, |t, x| {
            self.act(t, x / k) * k + other.act(t, x % k)
        })
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        match subset.iter().find(|&&x| x >= self.size()) {
            Some(&x) => Err(Error::OutOfRange { what: "element", index: x, size: self.size() }),
            None => Ok(()),
        }
    }

    /// Sub-heap closed under the action.
    pub fn is_submodule(&self, subset: &[usize]) -> Result<bool> {
        self.check_subset(subset)?;
        Ok(self.submodule_witness(subset).is_none())
    }

    fn submodule_witness(&self, subset: &[usize]) -> Option<Error> {
        if let Some(w) = self.heap.closure_witness(subset) {
            return Some(Error::NotClosed(w.to_vec()));
        }
        let mask = mask(self.size(), subset);
        for t in 0..self.truss.size() {
            for &x in subset {
                if !mask[self.act(t, x)] {
                    return Some(Error::NotSubmodule { t, x });
                }
            }
        }
        None
    }

    /// Sub-heap closed under every `e`-induced action with `e` in the subset.
    pub fn is_induced_submodule(&self, subset: &[usize]) -> Result<bool> {
        self.check_subset(subset)?;
        if !self.heap.is_subheap(subset) {
            return Ok(false);
        }
        let mask = mask(self.size(), subset);
        for t in 0..self.truss.size() {
            for &e in subset {
                let te = self.act(t, e);
                for &x in subset {
                    if !mask[self.op(self.act(t, x), te, e)] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn mask(n: usize, subset: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in subset {
        m[x] = true;
    }
    m
}

/// A non-empty subset closed under the heap operation and the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    parent: Arc<FiniteModule>,
    elems: Vec<usize>,
}

impl Submodule {
    pub fn new(parent: Arc<FiniteModule>, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elems: Vec<usize> = elems.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        parent.check_subset(&elems)?;
        if let Some(err) = parent.submodule_witness(&elems) {
            return Err(err);
        }
        Ok(Self { parent, elems })
    }

    pub fn parent(&self) -> &Arc<FiniteModule> {
        &self.parent
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Position of `x` in the ascending member list, i.e. its index in
    /// [`Submodule::embed`]'s module.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.elems.binary_search(&x).ok()
    }

    pub fn as_subheap(&self) -> SubHeap {
        SubHeap::new(self.parent.heap.clone(), self.elems.iter().copied()).expect("submodules are sub-heaps")
    }

    /// The submodule as a module in its own right (members re-indexed in
    /// ascending order) with its inclusion.
    pub fn embed(&self) -> Embedded {
        let p = &self.parent;
        let idx = |x: usize| self.index_of(x).expect("closed");
        let k = self.elems.len();
        let heap = FiniteHeap::from_fn(k, |a, b, c| idx(p.op(self.elems[a], self.elems[b], self.elems[c])))
            .expect("non-empty");
        let module = FiniteModule::from_fn(p.truss.clone(), Arc::new(heap), p.unital, |t, x| idx(p.act(t, self.elems[x])))
            .expect("restricted action");
        let module = Arc::new(module);
        let inclusion = ModuleMorphism { dom: module.clone(), cod: p.clone(), map: self.elems.clone() };
        Embedded { module, inclusion }
    }
}

#[derive(Debug, Clone)]
pub struct Embedded {
    pub module: Arc<FiniteModule>,
    pub inclusion: ModuleMorphism,
}

#[derive(Debug, Clone)]
pub struct ModuleQuotient {
    pub partition: Partition,
    pub module: Arc<FiniteModule>,
    pub projection: ModuleMorphism,
}

/// `M/N` for a submodule `N`, using the congruence `∼_N`; the action on
/// classes is checked for independence of representatives.
pub fn quotient_module(module: &Arc<FiniteModule>, sub: &Submodule) -> Result<ModuleQuotient> {
    if !same_module(sub.parent(), module) {
        return Err(Error::Precondition("submodule belongs to a different module".into()));
    }
    let partition = heap::subheap_congruence(&module.heap, &sub.as_subheap())?;
    quotient_by_partition(module, partition)
}

/// Quotient of a module by a partition that must be a congruence for both
/// the heap operation and the action.
pub fn quotient_by_partition(module: &Arc<FiniteModule>, partition: Partition) -> Result<ModuleQuotient> {
    let heap = Arc::new(heap::quotient_by_partition(&module.heap, &partition)?);
    let nt = module.truss.size();
    let act: Vec<usize> = (0..nt * partition.len())
        .map(|i| partition.class_of(module.act(i / partition.len(), partition.representative(i % partition.len()))))
        .collect();
    for t in 0..nt {
        for x in 0..module.size() {
            if partition.class_of(module.act(t, x)) != act[t * partition.len() + partition.class_of(x)] {
                return Err(Error::NotCongruence(vec![t, x]));
            }
        }
    }
    let quotient = Arc::new(FiniteModule::new(module.truss.clone(), heap, act, module.unital)?);
    let map = (0..module.size()).map(|x| partition.class_of(x)).collect();
    let projection = ModuleMorphism { dom: module.clone(), cod: quotient.clone(), map };
    projection
        .validate()
        .map_err(|v| Error::Consistency(format!("canonical projection is not T-linear: {v}")))?;
    Ok(ModuleQuotient { partition, module: quotient, projection })
}

/// A fiber `ker_e f`, with whether it is closed under the action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub base: usize,
    pub elems: Vec<usize>,
    pub action_closed: bool,
}

/// A total map between modules over the same truss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub dom: Arc<FiniteModule>,
    pub cod: Arc<FiniteModule>,
    pub map: Vec<usize>,
}

impl ModuleMorphism {
    pub fn new(dom: Arc<FiniteModule>, cod: Arc<FiniteModule>, map: Vec<usize>) -> Result<Self> {
        if !same_truss(&dom.truss, &cod.truss) {
            return Err(Error::TrussMismatch);
        }
        table::check_map("map", dom.size(), cod.size(), &map)?;
        Ok(Self { dom, cod, map })
    }

    pub fn from_fn(dom: Arc<FiniteModule>, cod: Arc<FiniteModule>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let map = (0..dom.size()).map(f).collect();
        Self::new(dom, cod, map)
    }

    pub fn identity(module: Arc<FiniteModule>) -> Self {
        let map = (0..module.size()).collect();
        Self { dom: module.clone(), cod: module, map }
    }

    pub fn constant(dom: Arc<FiniteModule>, cod: Arc<FiniteModule>, value: usize) -> Result<Self> {
        let map = vec![value; dom.size()];
        Self::new(dom, cod, map)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ModuleMorphism) -> Result<ModuleMorphism> {
        if !same_module(&self.cod, &next.dom) {
            return Err(Error::ChainMismatch("codomain of the first map is not the domain of the second".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        Ok(ModuleMorphism { dom: self.dom.clone(), cod: next.cod.clone(), map })
    }

    /// Heap-morphism law over triples, then `f(t·x) = t·f(x)`.
    pub fn validate(&self) -> Verdict {
        let (d, c) = (&self.dom, &self.cod);
        let f = &self.map;
        let n = d.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if f[d.op(x, y, z)] != c.op(f[x], f[y], f[z]) {
                        return Err(LawViolation::new(Law::HeapMorphism, [x, y, z]));
                    }
                }
            }
        }
        for t in 0..d.truss.size() {
            for x in 0..n {
                if f[d.act(t, x)] != c.act(t, f[x]) {
                    return Err(LawViolation::new(Law::Linearity, [t, x]));
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.size()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    /// Image elements, ascending.
    pub fn image(&self) -> Vec<usize> {
        self.map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn image_submodule(&self) -> Result<Submodule> {
        Submodule::new(self.cod.clone(), self.map.iter().copied()).map_err(|e| match e {
            Error::NotClosed(_) | Error::NotSubmodule { .. } => {
                Error::Consistency(format!("image of a T-linear map is not a submodule: {e}"))
            }
            other => other,
        })
    }

    /// `ker_e f` for any `e` in the image.
    pub fn fiber(&self, e: usize) -> Result<Fiber> {
        let elems: Vec<usize> = (0..self.dom.size()).filter(|&x| self.map[x] == e).collect();
        if elems.is_empty() {
            return Err(Error::NotInImage(e));
        }
        if !self.dom.heap.is_subheap(&elems) {
            return Err(Error::Consistency(format!("fiber over {e} is not a sub-heap")));
        }
        let action_closed = self.dom.submodule_witness(&elems).is_none();
        Ok(Fiber { base: e, elems, action_closed })
    }

    pub fn kernel_relation(&self) -> Partition {
        Partition::from_key(self.dom.size(), |x| self.map[x])
    }

    /// Preimages of every codomain element.
    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cod.size()];
        for (x, &y) in self.map.iter().enumerate() {
            out[y].push(x);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct FirstIsomorphism {
    pub quotient: ModuleQuotient,
    pub image: Submodule,
    pub image_module: Arc<FiniteModule>,
    pub iso: ModuleMorphism,
    /// Set when the image was not action-closed and the induced structure of
    /// the codomain at `f(0)` was used instead.
    pub induced_structure: bool,
}

/// `M / Ker f ≅ Im f`, with the quotient taken by the fiber partition and the
/// canonical map validated as a bijective T-linear map.
pub fn first_isomorphism(f: &ModuleMorphism) -> Result<FirstIsomorphism> {
    f.validate().map_err(|v| Error::Precondition(format!("map is not T-linear: {v}")))?;
    let quotient = quotient_by_partition(&f.dom, f.kernel_relation())?;
    let (image, induced_structure) = match f.image_submodule() {
        Ok(sub) => (sub, false),
        Err(_) => {
            let induced = Arc::new(f.cod.induced(f.map[0])?);
            (Submodule::new(induced, f.image())?, true)
        }
    };
    let embedded = image.embed();
    let map = (0..quotient.partition.len())
        .map(|c| image.index_of(f.map[quotient.partition.representative(c)]).expect("image member"))
        .collect();
    let iso = ModuleMorphism::new(quotient.module.clone(), embedded.module.clone(), map)?;
    if let Err(v) = iso.validate() {
        return Err(Error::Falsified(format!("canonical map M/Ker f → Im f is not T-linear: {v}")));
    }
    if !iso.is_bijective() {
        return Err(Error::Falsified("canonical map M/Ker f → Im f is not bijective".into()));
    }
    Ok(FirstIsomorphism { quotient, image, image_module: embedded.module, iso, induced_structure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truss::{truss_of_ring, FiniteRing};

    fn t(n: usize) -> Arc<FiniteTruss> {
        Arc::new(truss_of_ring(&FiniteRing::zn(n)).unwrap())
    }

    fn z2_over_z4() -> Arc<FiniteModule> {
        Arc::new(
            FiniteModule::from_fn(t(4), Arc::new(FiniteHeap::cyclic(2)), true, |a, m| (a * m) % 2).unwrap(),
        )
    }

    #[test]
    fn standard_modules_validate() {
        let reg = FiniteModule::regular(t(4));
        assert_eq!(reg.validate().unwrap(), Ok(()));
        assert_eq!(z2_over_z4().validate().unwrap(), Ok(()));
        assert_eq!(FiniteModule::singleton(t(3)).validate().unwrap(), Ok(()));
        let triv = FiniteModule::trivial_action(t(3), Arc::new(FiniteHeap::cyclic(5)));
        assert_eq!(triv.validate().unwrap(), Ok(()));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let r = FiniteModule::new(t(4), Arc::new(FiniteHeap::cyclic(2)), vec![0; 7], false);
        assert!(matches!(r, Err(Error::Malformed { .. })));
    }

    #[test]
    fn corrupted_action_is_caught() {
        let reg = FiniteModule::regular(t(4));
        let mut act = reg.act_table().to_vec();
        act[2 * 4 + 1] = 3;
        let bad = FiniteModule::new(t(4), reg.heap().clone(), act, true).unwrap();
        assert!(bad.validate().unwrap().is_err());
    }

    #[test]
    fn absorbers_examples() {
        assert_eq!(FiniteModule::regular(t(4)).absorbers(), vec![0]);
        let triv = FiniteModule::trivial_action(t(4), Arc::new(FiniteHeap::cyclic(3)));
        assert_eq!(triv.absorbers(), vec![0, 1, 2]);
        assert_eq!(FiniteModule::singleton(t(2)).absorbers(), vec![0]);
    }

    #[test]
    fn induced_action_examples() {
        let reg = FiniteModule::regular(t(4));
        let at0 = reg.induced(0).unwrap();
        assert_eq!(at0, reg);
        let at1 = reg.induced(1).unwrap();
        assert_eq!(at1.act(2, 3), 1);
        assert_eq!(at1.validate().unwrap(), Ok(()));
        for e in 0..4 {
            let m = reg.induced(e).unwrap();
            assert!(m.is_absorber(e));
        }
        assert!(matches!(reg.induced(4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn submodule_and_induced_submodule() {
        let reg = FiniteModule::regular(t(4));
        assert!(reg.is_submodule(&[0, 2]).unwrap());
        assert!(!reg.is_submodule(&[1, 3]).unwrap());
        assert!(reg.is_induced_submodule(&[1, 3]).unwrap());
        assert!(reg.is_submodule(&[0, 1, 2, 3]).unwrap());
        assert!(reg.is_induced_submodule(&[0, 1, 2, 3]).unwrap());
        assert!(matches!(reg.is_submodule(&[]), Err(Error::EmptyCarrier)));
    }

    #[test]
    fn quotients() {
        let reg = Arc::new(FiniteModule::regular(t(4)));
        let sub = Submodule::new(reg.clone(), [0, 2]).unwrap();
        let q = quotient_module(&reg, &sub).unwrap();
        assert_eq!(q.partition.classes(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(*q.module, *z2_over_z4());

        let all = Submodule::new(reg.clone(), 0..4).unwrap();
        assert_eq!(quotient_module(&reg, &all).unwrap().module.size(), 1);

        let zero = Submodule::new(reg.clone(), [0]).unwrap();
        let q = quotient_module(&reg, &zero).unwrap();
        assert_eq!(q.partition, Partition::discrete(4));
        assert_eq!(*q.module, *reg);

        assert!(matches!(Submodule::new(reg, [1, 3]), Err(Error::NotSubmodule { .. })));
    }

    #[test]
    fn product_modules() {
        let a = FiniteModule::regular(t(2));
        let b = FiniteModule::trivial_action(t(2), Arc::new(FiniteHeap::cyclic(3)));
        let p = a.product(&b).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.validate().unwrap(), Ok(()));
        let aa = a.product(&a).unwrap();
        // (1,0) has index 2.
        assert_eq!(aa.act(1, 2), 2);
        assert_eq!(aa.act(0, 2), 0);
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    let expected = a.op(x / 3, y / 3, z / 3) * 3 + b.op(x % 3, y % 3, z % 3);
                    assert_eq!(p.op(x, y, z), expected);
                }
            }
        }
        let other = FiniteModule::regular(t(3));
        assert!(matches!(a.product(&other), Err(Error::TrussMismatch)));
    }

    #[test]
    fn morphisms_images_and_fibers() {
        let reg = Arc::new(FiniteModule::regular(t(4)));
        let z2 = z2_over_z4();
        let mod2 = ModuleMorphism::new(reg.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(mod2.validate(), Ok(()));
        let k = mod2.fiber(0).unwrap();
        assert_eq!(k.elems, vec![0, 2]);
        assert!(k.action_closed);
        let k1 = mod2.fiber(1).unwrap();
        assert!(!k1.action_closed);
        assert_eq!(mod2.image_submodule().unwrap().elems(), &[0, 1]);

        let id = ModuleMorphism::identity(reg.clone());
        assert_eq!(id.fiber(3).unwrap().elems, vec![3]);
        let c = ModuleMorphism::constant(reg.clone(), z2, 0).unwrap();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.fiber(0).unwrap().elems.len(), 4);
        assert!(matches!(c.fiber(1), Err(Error::NotInImage(1))));
    }

    #[test]
    fn first_isomorphism_examples() {
        let reg = Arc::new(FiniteModule::regular(t(4)));
        let mod2 = ModuleMorphism::new(reg.clone(), z2_over_z4(), vec![0, 1, 0, 1]).unwrap();
        let fi = first_isomorphism(&mod2).unwrap();
        assert_eq!(fi.quotient.partition.classes(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(fi.image_module.size(), 2);
        assert!(!fi.induced_structure);

        let fi = first_isomorphism(&ModuleMorphism::identity(reg.clone())).unwrap();
        assert_eq!(fi.iso.map, vec![0, 1, 2, 3]);

        let c = ModuleMorphism::constant(reg.clone(), reg, 0).unwrap();
        let fi = first_isomorphism(&c).unwrap();
        assert_eq!(fi.quotient.module.size(), 1);
        assert_eq!(fi.image_module.size(), 1);
    }
}
