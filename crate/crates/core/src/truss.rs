//! Finite trusses, finite rings and the truss `T(R)` of a ring.

use std::sync::Arc;

use crate::error::{Error, Law, LawViolation, Result, Verdict};
use crate::heap::{heap_of_group, FiniteGroup, FiniteHeap};
use crate::table;

/// An abelian heap with an associative multiplication distributing over the
/// heap operation on both sides. Unitality is declared, not detected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteTruss {
    heap: Arc<FiniteHeap>,
    mul: Vec<usize>,
    one: Option<usize>,
}

impl FiniteTruss {
    pub fn new(heap: Arc<FiniteHeap>, mul: Vec<usize>, one: Option<usize>) -> Result<Self> {
        let n = heap.size();
        table::check_map("mul", n * n, n, &mul)?;
        if let Some(u) = one.filter(|&u| u >= n) {
            return Err(Error::OutOfRange { what: "unit", index: u, size: n });
        }
        Ok(Self { heap, mul, one })
    }

    pub fn from_nested(heap: Arc<FiniteHeap>, mul: &[Vec<usize>], one: Option<usize>) -> Result<Self> {
        let n = heap.size();
        Self::new(heap, table::flatten2("mul", n, n, n, mul)?, one)
    }

    pub fn from_fn(heap: Arc<FiniteHeap>, one: Option<usize>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = heap.size();
        let mul = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(heap, mul, one)
    }

    pub fn singleton() -> Self {
        Self { heap: Arc::new(FiniteHeap::singleton()), mul: vec![0], one: None }
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn heap(&self) -> &Arc<FiniteHeap> {
        &self.heap
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize, c: usize) -> usize {
        self.heap.op(a, b, c)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn nested_mul(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size(), &self.mul)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Heap axioms and abelianness are preconditions (reported as errors);
    /// the truss laws are reported in the returned verdict.
    pub fn validate(&self) -> Result<Verdict> {
        self.heap.validate()?;
        self.heap.require_abelian()?;
        Ok(self.check_laws())
    }

    fn check_laws(&self) -> Verdict {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(LawViolation::new(Law::MulAssociativity, [a, b, c]));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let xyz = self.op(x, y, z);
                        if self.mul(w, xyz) != self.op(self.mul(w, x), self.mul(w, y), self.mul(w, z)) {
                            return Err(LawViolation::new(Law::LeftDistributivity, [w, x, y, z]));
                        }
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let xyz = self.op(x, y, z);
                        if self.mul(xyz, w) != self.op(self.mul(x, w), self.mul(y, w), self.mul(z, w)) {
                            return Err(LawViolation::new(Law::RightDistributivity, [w, x, y, z]));
                        }
                    }
                }
            }
        }
        if let Some(u) = self.one {
            if let Some(a) = (0..n).find(|&a| self.mul(u, a) != a || self.mul(a, u) != a) {
                return Err(LawViolation::new(Law::Unit, [a]));
            }
        }
        Ok(())
    }
}

/// A finite ring given by addition and multiplication tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: Option<usize>,
}

impl FiniteRing {
    pub fn new(size: usize, add: Vec<usize>, mul: Vec<usize>, zero: usize, one: Option<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        table::check_map("add", size * size, size, &add)?;
        table::check_map("mul", size * size, size, &mul)?;
        if zero >= size {
            return Err(Error::OutOfRange { what: "zero", index: zero, size });
        }
        if let Some(u) = one.filter(|&u| u >= size) {
            return Err(Error::OutOfRange { what: "one", index: u, size });
        }
        Ok(Self { size, add, mul, zero, one })
    }

    pub fn from_nested(
        size: usize,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: Option<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let add = table::flatten2("add", size, size, size, add)?;
        let mul = table::flatten2("mul", size, size, size, mul)?;
        Self::new(size, add, mul, zero, one)
    }

    /// ℤ/n with unit `1 mod n`.
    pub fn zn(n: usize) -> Self {
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        Self::new(n, add, mul, 0, Some(1 % n)).expect("n > 0")
    }

    /// Componentwise product, elements indexed `a * |other| + b`.
    pub fn product(&self, other: &FiniteRing) -> Self {
        let m = other.size;
        let n = self.size * m;
        let lift = |f: &dyn Fn(usize, usize, usize, usize) -> usize| -> Vec<usize> {
            (0..n * n).map(|i| f(i / n / m, i / n % m, i % n / m, i % n % m)).collect()
        };
        let add = lift(&|a1, a2, b1, b2| self.add(a1, b1) * m + other.add(a2, b2));
        let mul = lift(&|a1, a2, b1, b2| self.mul(a1, b1) * m + other.mul(a2, b2));
        let one = match (self.one, other.one) {
            (Some(u), Some(v)) => Some(u * m + v),
            _ => None,
        };
        Self::new(n, add, mul, self.zero * m + other.zero, one).expect("product ring")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn nested_add(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size, &self.add)
    }

    pub fn nested_mul(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size, &self.mul)
    }

    /// The additive group `(R, +)`.
    pub fn additive_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::new(self.size, self.add.clone(), self.zero)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn validate(&self) -> Verdict {
        let group = self.additive_group().map_err(|_| LawViolation::new(Law::AdditiveGroup, [self.zero]))?;
        group.validate().map_err(|v| LawViolation::new(Law::AdditiveGroup, v.witness))?;
        if let Some([a, b, _]) = heap_of_group(&group).abelian_witness() {
            return Err(LawViolation::new(Law::AdditiveGroup, [a, b]));
        }
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(LawViolation::new(Law::MulAssociativity, [a, b, c]));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(LawViolation::new(Law::LeftDistributivity, [a, b, c]));
                    }
                    if self.mul(self.add(b, c), a) != self.add(self.mul(b, a), self.mul(c, a)) {
                        return Err(LawViolation::new(Law::RightDistributivity, [a, b, c]));
                    }
                }
            }
        }
        if let Some(u) = self.one {
            if let Some(a) = (0..n).find(|&a| self.mul(u, a) != a || self.mul(a, u) != a) {
                return Err(LawViolation::new(Law::Unit, [a]));
            }
        }
        Ok(())
    }
}

/// `T(R) = (H(R,+), ·)`, unital exactly when `R` is.
pub fn truss_of_ring(ring: &FiniteRing) -> Result<FiniteTruss> {
    let heap = Arc::new(heap_of_group(&ring.additive_group()?));
    FiniteTruss::new(heap, ring.mul_table().to_vec(), ring.one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussMorphism {
    pub dom: Arc<FiniteTruss>,
    pub cod: Arc<FiniteTruss>,
    pub map: Vec<usize>,
}

impl TrussMorphism {
    pub fn new(dom: Arc<FiniteTruss>, cod: Arc<FiniteTruss>, map: Vec<usize>) -> Result<Self> {
        table::check_map("map", dom.size(), cod.size(), &map)?;
        Ok(Self { dom, cod, map })
    }

    pub fn identity(truss: Arc<FiniteTruss>) -> Self {
        let map = (0..truss.size()).collect();
        Self { dom: truss.clone(), cod: truss, map }
    }

    pub fn validate(&self) -> Verdict {
        let n = self.dom.size();
        let f = &self.map;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if f[self.dom.op(x, y, z)] != self.cod.op(f[x], f[y], f[z]) {
                        return Err(LawViolation::new(Law::HeapMorphism, [x, y, z]));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if f[self.dom.mul(x, y)] != self.cod.mul(f[x], f[y]) {
                    return Err(LawViolation::new(Law::Multiplicativity, [x, y]));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize) -> Arc<FiniteTruss> {
        Arc::new(truss_of_ring(&FiniteRing::zn(n)).unwrap())
    }

    #[test]
    fn truss_of_zn_validates() {
        for n in 1..=8 {
            let ring = FiniteRing::zn(n);
            assert_eq!(ring.validate(), Ok(()));
            let truss = truss_of_ring(&ring).unwrap();
            assert_eq!(truss.validate().unwrap(), Ok(()));
            assert!(truss.is_commutative());
        }
        assert_eq!(t(4).mul(2, 3), 2);
        assert_eq!(FiniteTruss::singleton().validate().unwrap(), Ok(()));
        assert_eq!(*truss_of_ring(&FiniteRing::zn(1)).unwrap().heap(), Arc::new(FiniteHeap::singleton()));
    }

    #[test]
    fn product_ring_multiplies_componentwise() {
        let r = FiniteRing::zn(2).product(&FiniteRing::zn(2));
        assert_eq!(r.validate(), Ok(()));
        // (1,0)·(1,1) = (1,0)
        assert_eq!(r.mul(2, 3), 2);
        assert_eq!(truss_of_ring(&r).unwrap().validate().unwrap(), Ok(()));
    }

    #[test]
    fn addition_as_multiplication_is_a_truss() {
        // mul[a][b] = a + b distributes over [x,y,z] = x - y + z on both sides,
        // so this is a (non-ring) truss; an exhaustive check finds no violation.
        let heap = Arc::new(FiniteHeap::cyclic(4));
        let truss = FiniteTruss::from_fn(heap, None, |a, b| (a + b) % 4).unwrap();
        assert_eq!(truss.validate().unwrap(), Ok(()));
    }

    #[test]
    fn broken_distributivity_is_reported() {
        // x·w = x² is associative and left distributive on ℤ/3 but
        // (x - y + z)² ≠ x² - y² + z².
        let heap = Arc::new(FiniteHeap::cyclic(3));
        let truss = FiniteTruss::from_fn(heap, None, |a, _| (a * a) % 3).unwrap();
        let v = truss.validate().unwrap().unwrap_err();
        assert_eq!(v.law, Law::RightDistributivity);
        let [w, x, y, z] = [v.witness[0], v.witness[1], v.witness[2], v.witness[3]];
        let xyz = (x + 3 - y + z) % 3;
        assert_ne!(truss.mul(xyz, w), (x * x + 3 - (y * y) % 3 + z * z) % 3);
    }

    #[test]
    fn non_abelian_heap_is_rejected() {
        let heap = Arc::new(heap_of_group(&FiniteGroup::symmetric3()));
        let truss = FiniteTruss::from_fn(heap, None, |a, _| a).unwrap();
        assert!(matches!(truss.validate(), Err(Error::NotAbelian(_))));
    }

    #[test]
    fn truss_morphisms() {
        assert_eq!(TrussMorphism::identity(t(4)).validate(), Ok(()));
        let mod2 = TrussMorphism::new(t(4), t(2), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(mod2.validate(), Ok(()));
        let shift = TrussMorphism::new(t(4), t(4), vec![1, 2, 3, 0]).unwrap();
        let v = shift.validate().unwrap_err();
        assert_eq!(v, LawViolation::new(Law::Multiplicativity, [0, 1]));
    }
}
