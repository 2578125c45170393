//! The functor `(−)_Abs`: a `T(R)`-module `M` goes to the `R`-module
//! `G(M/Abs(M); Abs(M))`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heap::{self, group_of_heap, SubHeap};
use crate::hom;
use crate::module::{FiniteModule, ModuleMorphism};
use crate::partition::Partition;
use crate::ring_module::{FiniteRingModule, RingModuleMorphism, TFunctor};

#[derive(Debug, Clone, Serialize)]
pub struct AbsImage {
    pub classes: Vec<Vec<usize>>,
    pub group_mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub action: Vec<Vec<usize>>,
    #[serde(skip)]
    pub partition: Partition,
    #[serde(skip)]
    pub module: Arc<FiniteRingModule>,
}

impl AbsImage {
    /// Class of an element of the source module.
    pub fn class_of(&self, x: usize) -> usize {
        self.partition.class_of(x)
    }
}

fn check_truss(m: &FiniteModule, functor: &TFunctor) -> Result<()> {
    if **m.truss() != *functor.truss {
        return Err(Error::TrussMismatch);
    }
    Ok(())
}

pub fn abs_object(m: &FiniteModule, functor: &TFunctor) -> Result<AbsImage> {
    check_truss(m, functor)?;
    let abs = m.absorbers();
    if abs.is_empty() {
        return Err(Error::NoAbsorbers);
    }
    let sub = SubHeap::new(m.heap().clone(), abs.iter().copied())
        .map_err(|e| Error::Consistency(format!("absorbers do not form a sub-heap: {e}")))?;
    let partition = heap::subheap_congruence(m.heap(), &sub)?;
    let quotient = heap::quotient_by_partition(m.heap(), &partition)?;
    let zero = partition.class_of(abs[0]);
    let group = group_of_heap(&quotient, zero)?;
    let k = partition.len();
    let ring = functor.ring.clone();
    let mut act = Vec::with_capacity(ring.size() * k);
    for r in 0..ring.size() {
        for c in 0..k {
            let value = partition.class_of(m.act(r, partition.representative(c)));
            if let Some(&x) = partition.class(c).iter().find(|&&x| partition.class_of(m.act(r, x)) != value) {
                return Err(Error::Consistency(format!("action on Abs classes depends on the representative at ({r}, {x})")));
            }
            act.push(value);
        }
    }
    let module = FiniteRingModule::new(ring, k, group.mul_table().to_vec(), zero, act, m.is_unital())?;
    module
        .validate()
        .map_err(|v| Error::Falsified(format!("Abs image is not an R-module: {v}")))?;
    Ok(AbsImage {
        classes: partition.classes().to_vec(),
        group_mul: group.nested_mul(),
        zero,
        action: module.nested_act(),
        partition,
        module: Arc::new(module),
    })
}

/// `φ_Abs: m̄ ↦ φ(m)‾`, checked on every representative.
pub fn abs_morphism(phi: &ModuleMorphism, src: &AbsImage, dst: &AbsImage) -> Result<RingModuleMorphism> {
    let mut map = Vec::with_capacity(src.partition.len());
    for (c, class) in src.partition.classes().iter().enumerate() {
        let value = dst.class_of(phi.apply(class[0]));
        if let Some(&x) = class.iter().find(|&&x| dst.class_of(phi.apply(x)) != value) {
            return Err(Error::Consistency(format!("φ_Abs is not well defined on class {c} at {x}")));
        }
        map.push(value);
    }
    let f = RingModuleMorphism::new(src.module.clone(), dst.module.clone(), map)?;
    f.validate()
        .map_err(|v| Error::Falsified(format!("φ_Abs is not R-linear: {v}")))?;
    Ok(f)
}

/// An `R`-linear isomorphism, found as a `T(R)`-linear bijection between the
/// `T`-images (a `T(R)`-linear map fixes zero, since `f(0) = 0·f(0)`).
pub fn find_ring_isomorphism(
    a: &FiniteRingModule,
    b: &FiniteRingModule,
    functor: &TFunctor,
    budget: u128,
) -> Result<Option<RingModuleMorphism>> {
    let ta = Arc::new(functor.module(a)?);
    let tb = Arc::new(functor.module(b)?);
    let Some(iso) = hom::find_isomorphism(&ta, &tb, budget)? else {
        return Ok(None);
    };
    let f = RingModuleMorphism::new(Arc::new(a.clone()), Arc::new(b.clone()), iso.map)?;
    f.validate()
        .map_err(|v| Error::Consistency(format!("T-linear bijection is not R-linear: {v}")))?;
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::FiniteHeap;
    use crate::hom::DEFAULT_HOM_BUDGET;
    use crate::truss::FiniteRing;

    fn functor(n: usize) -> TFunctor {
        TFunctor::new(Arc::new(FiniteRing::zn(n))).unwrap()
    }

    #[test]
    fn abs_of_regular_is_the_ring() {
        let t = functor(4);
        let reg = FiniteModule::regular(t.truss.clone());
        let img = abs_object(&reg, &t).unwrap();
        assert_eq!(img.classes.len(), 4);
        let n = FiniteRingModule::regular(t.ring.clone());
        assert!(find_ring_isomorphism(&img.module, &n, &t, DEFAULT_HOM_BUDGET).unwrap().is_some());
    }

    #[test]
    fn abs_of_trivial_action_is_zero() {
        let t = functor(3);
        let m = FiniteModule::trivial_action(t.truss.clone(), Arc::new(FiniteHeap::cyclic(4)));
        assert_eq!(abs_object(&m, &t).unwrap().module.size(), 1);
    }

    #[test]
    fn abs_of_mod_two_map() {
        let t = functor(4);
        let reg = Arc::new(FiniteRingModule::regular(t.ring.clone()));
        let proj = reg.quotient(&[0, 2]).unwrap();
        let tp = t.morphism(&proj).unwrap();
        let a = abs_object(&tp.dom, &t).unwrap();
        let b = abs_object(&tp.cod, &t).unwrap();
        let f = abs_morphism(&tp, &a, &b).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.cod.size(), 2);
    }

    #[test]
    fn no_absorbers_is_an_error() {
        use crate::truss::FiniteTruss;
        let left = Arc::new(FiniteTruss::from_fn(Arc::new(FiniteHeap::cyclic(2)), None, |a, _| a).unwrap());
        assert_eq!(left.validate().unwrap(), Ok(()));
        let m = FiniteModule::from_fn(left, Arc::new(FiniteHeap::cyclic(2)), false, |t, _| t).unwrap();
        assert_eq!(m.validate().unwrap(), Ok(()));
        assert!(m.absorbers().is_empty());
        assert!(matches!(abs_object(&m, &functor(2)), Err(Error::TrussMismatch)));
        let t = TFunctor { ring: Arc::new(FiniteRing::zn(2)), truss: m.truss().clone() };
        assert!(matches!(abs_object(&m, &t), Err(Error::NoAbsorbers)));
    }
}
