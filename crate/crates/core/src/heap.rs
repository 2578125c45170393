//! Finite heaps as ternary operation tables over `{0..n-1}`.
//!
//! Besides axiom checking this module provides the translations between
//! groups and heaps (`[a,b,c] = a·b⁻¹·c` one way, `a·b = [a,e,b]` the other),
//! sub-heaps with their congruences and quotients, and heap morphisms with
//! their fibers.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Law, LawViolation, Result, Verdict};
use crate::partition::Partition;
use crate::table;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteHeap {
    size: usize,
    op: Vec<usize>,
}

impl FiniteHeap {
    /// Builds a heap from a flat row-major table `op[(a*n + b)*n + c]`.
    /// Only dimensions and ranges are checked; see [`FiniteHeap::validate`].
    pub fn new(size: usize, op: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if op.len() != size * size * size {
            return Err(table::malformed("op", format!("expected {} entries, found {}", size.pow(3), op.len())));
        }
        if let Some(i) = op.iter().position(|&v| v >= size) {
            let (a, b, c) = (i / (size * size), (i / size) % size, i % size);
            return Err(table::malformed(format!("op[{a}][{b}][{c}]"), format!("entry {} out of range", op[i])));
        }
        Ok(Self { size, op })
    }

    pub fn from_nested(size: usize, op: &[Vec<Vec<usize>>]) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        Self::new(size, table::flatten3("op", size, size, op)?)
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let mut op = Vec::with_capacity(size * size * size);
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    op.push(f(a, b, c));
                }
            }
        }
        Self::new(size, op)
    }

    /// The terminal heap ⋆.
    pub fn singleton() -> Self {
        Self { size: 1, op: vec![0] }
    }

    /// The heap of the cyclic group ℤ/n.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b, c| (a + n - b + c) % n).expect("n > 0")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize, c: usize) -> usize {
        self.op[(a * self.size + b) * self.size + c]
    }

    pub fn table(&self) -> &[usize] {
        &self.op
    }

    pub fn nested_table(&self) -> Vec<Vec<Vec<usize>>> {
        table::nest3(self.size, &self.op)
    }

    /// Checks the Mal'cev identities (over pairs) and then associativity
    /// (over 5-tuples), each scanned in lexicographic order.
    pub fn validate(&self) -> Verdict {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                if self.op(a, b, b) != a {
                    return Err(LawViolation::new(Law::MalcevRight, [a, b]));
                }
                if self.op(b, b, a) != a {
                    return Err(LawViolation::new(Law::MalcevLeft, [a, b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let abc = self.op(a, b, c);
                    for d in 0..n {
                        for e in 0..n {
                            if self.op(abc, d, e) != self.op(a, b, self.op(c, d, e)) {
                                return Err(LawViolation::new(Law::HeapAssociativity, [a, b, c, d, e]));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple with `[a,b,c] ≠ [c,b,a]`, if any.
    pub fn abelian_witness(&self) -> Option<[usize; 3]> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.op(a, b, c) != self.op(c, b, a) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    pub(crate) fn require_abelian(&self) -> Result<()> {
        match self.abelian_witness() {
            Some(w) => Err(Error::NotAbelian(w)),
            None => Ok(()),
        }
    }

    /// Product heap on pairs indexed `a * |other| + b`.
    pub fn product(&self, other: &FiniteHeap) -> FiniteHeap {
        let m = other.size;
        FiniteHeap::from_fn(self.size * m, |x, y, z| {
            self.op(x / m, y / m, z / m) * m + other.op(x % m, y % m, z % m)
        })
        .expect("product of non-empty heaps")
    }

    /// Solves `[x,y,z] = w` for the one unknown position. The closed forms
    /// `x = [w,z,y]`, `y = [z,w,x]`, `z = [y,x,w]` are cross-checked against an
    /// exhaustive scan, which must find exactly one solution.
    pub fn solve_fourth(&self, unknown: FourthUnknown) -> Result<usize> {
        let n = self.size;
        let idx = |v: usize| -> Result<usize> {
            if v < n {
                Ok(v)
            } else {
                Err(Error::OutOfRange { what: "element", index: v, size: n })
            }
        };
        let (closed, holds): (usize, Box<dyn Fn(usize) -> bool + '_>) = match unknown {
            FourthUnknown::First { y, z, w } => {
                let (y, z, w) = (idx(y)?, idx(z)?, idx(w)?);
                (self.op(w, z, y), Box::new(move |x| self.op(x, y, z) == w))
            }
            FourthUnknown::Second { x, z, w } => {
                let (x, z, w) = (idx(x)?, idx(z)?, idx(w)?);
                (self.op(z, w, x), Box::new(move |y| self.op(x, y, z) == w))
            }
            FourthUnknown::Third { x, y, w } => {
                let (x, y, w) = (idx(x)?, idx(y)?, idx(w)?);
                (self.op(y, x, w), Box::new(move |z| self.op(x, y, z) == w))
            }
            FourthUnknown::Result { x, y, z } => {
                let (x, y, z) = (idx(x)?, idx(y)?, idx(z)?);
                let w = self.op(x, y, z);
                (w, Box::new(move |v| v == w))
            }
        };
        let solutions: Vec<usize> = (0..n).filter(|&v| holds(v)).collect();
        match solutions.as_slice() {
            [s] if *s == closed => Ok(*s),
            _ => Err(Error::Consistency(format!(
                "equation {unknown:?} has solutions {solutions:?}, closed form gives {closed}"
            ))),
        }
    }

    pub fn is_subheap(&self, subset: &[usize]) -> bool {
        self.closure_witness(subset).is_none()
    }

    pub(crate) fn closure_witness(&self, subset: &[usize]) -> Option<[usize; 3]> {
        let mut mask = vec![false; self.size];
        for &s in subset {
            if s >= self.size {
                return Some([s, s, s]);
            }
            mask[s] = true;
        }
        for &a in subset {
            for &b in subset {
                for &c in subset {
                    if !mask[self.op(a, b, c)] {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

/// Which position of `[x,y,z] = w` is unknown; the fields are the known values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourthUnknown {
    First { y: usize, z: usize, w: usize },
    Second { x: usize, z: usize, w: usize },
    Third { x: usize, y: usize, w: usize },
    Result { x: usize, y: usize, z: usize },
}

/// A non-empty subset of a heap closed under the heap operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubHeap {
    parent: Arc<FiniteHeap>,
    elems: Vec<usize>,
}

impl SubHeap {
    /// Validates closure; `elems` may be in any order and contain repeats.
    pub fn new(parent: Arc<FiniteHeap>, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elems: Vec<usize> = elems.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if elems.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if let Some(&bad) = elems.iter().find(|&&e| e >= parent.size()) {
            return Err(Error::OutOfRange { what: "element", index: bad, size: parent.size() });
        }
        if let Some(w) = parent.closure_witness(&elems) {
            return Err(Error::NotClosed(w.to_vec()));
        }
        Ok(Self { parent, elems })
    }

    /// Smallest sub-heap containing `seed`, by iterating the operation to a
    /// fixpoint.
    pub fn closure(parent: Arc<FiniteHeap>, seed: &[usize]) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let n = parent.size();
        let mut mask = vec![false; n];
        for &s in seed {
            if s >= n {
                return Err(Error::OutOfRange { what: "element", index: s, size: n });
            }
            mask[s] = true;
        }
        loop {
            let current: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    for &c in &current {
                        let v = parent.op(a, b, c);
                        if !mask[v] {
                            mask[v] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return Ok(Self { parent, elems: current });
            }
        }
    }

    pub fn parent(&self) -> &Arc<FiniteHeap> {
        &self.parent
    }

    /// Members in ascending order.
    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// The congruence `a ∼ b ⟺ [a,b,s] ∈ S`, computed with the smallest `s ∈ S`
/// and checked against every other `s`.
pub fn subheap_congruence(heap: &FiniteHeap, sub: &SubHeap) -> Result<Partition> {
    heap.require_abelian()?;
    let mut mask = vec![false; heap.size()];
    for &s in sub.elems() {
        mask[s] = true;
    }
    let s0 = sub.elems()[0];
    let partition = Partition::from_relation(heap.size(), |a, b| mask[heap.op(a, b, s0)]);
    for a in 0..heap.size() {
        for b in 0..heap.size() {
            let related = partition.class_of(a) == partition.class_of(b);
            if let Some(&s) = sub.elems().iter().find(|&&s| mask[heap.op(a, b, s)] != related) {
                return Err(Error::Consistency(format!(
                    "relation ∼_S depends on the choice of s: ({a},{b}) with s = {s}"
                )));
            }
        }
    }
    let class = partition.class(partition.class_of(s0));
    if class != sub.elems() {
        return Err(Error::Consistency(format!("class of {s0} is {class:?}, not the sub-heap itself")));
    }
    Ok(partition)
}

/// Builds the quotient heap of `heap` by a partition, checking that the
/// partition is a congruence over every choice of representatives.
pub fn quotient_by_partition(heap: &FiniteHeap, partition: &Partition) -> Result<FiniteHeap> {
    let k = partition.len();
    let quotient = FiniteHeap::from_fn(k, |i, j, l| {
        partition.class_of(heap.op(partition.representative(i), partition.representative(j), partition.representative(l)))
    })?;
    let n = heap.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = partition.class_of(heap.op(a, b, c));
                let rhs = quotient.op(partition.class_of(a), partition.class_of(b), partition.class_of(c));
                if lhs != rhs {
                    return Err(Error::NotCongruence(vec![a, b, c]));
                }
            }
        }
    }
    Ok(quotient)
}

#[derive(Debug, Clone)]
pub struct HeapQuotient {
    pub partition: Partition,
    pub heap: Arc<FiniteHeap>,
    pub projection: HeapMorphism,
}

/// `H/S` for an abelian heap `H` and a sub-heap `S`.
pub fn quotient_heap(heap: &Arc<FiniteHeap>, sub: &SubHeap) -> Result<HeapQuotient> {
    if sub.parent() != heap {
        return Err(Error::Precondition("sub-heap belongs to a different heap".into()));
    }
    let partition = subheap_congruence(heap, sub)?;
    let quotient = Arc::new(quotient_by_partition(heap, &partition)?);
    let map = (0..heap.size()).map(|x| partition.class_of(x)).collect();
    let projection = HeapMorphism::new(heap.clone(), quotient.clone(), map)?;
    projection.validate().map_err(|v| Error::Consistency(format!("projection is not a heap morphism: {v}")))?;
    Ok(HeapQuotient { partition, heap: quotient, projection })
}

/// A total map between heap carriers; laws are checked by
/// [`HeapMorphism::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapMorphism {
    pub dom: Arc<FiniteHeap>,
    pub cod: Arc<FiniteHeap>,
    pub map: Vec<usize>,
}

impl HeapMorphism {
    pub fn new(dom: Arc<FiniteHeap>, cod: Arc<FiniteHeap>, map: Vec<usize>) -> Result<Self> {
        table::check_map("map", dom.size(), cod.size(), &map)?;
        Ok(Self { dom, cod, map })
    }

    pub fn identity(heap: Arc<FiniteHeap>) -> Self {
        let map = (0..heap.size()).collect();
        Self { dom: heap.clone(), cod: heap, map }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn validate(&self) -> Verdict {
        let n = self.dom.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.map[self.dom.op(x, y, z)];
                    let rhs = self.cod.op(self.map[x], self.map[y], self.map[z]);
                    if lhs != rhs {
                        return Err(LawViolation::new(Law::HeapMorphism, [x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    /// The image, ascending.
    pub fn image(&self) -> Vec<usize> {
        self.map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// `ker_e f = {a | f(a) = e}`, a sub-heap of the domain.
    pub fn kernel(&self, e: usize) -> Result<SubHeap> {
        let fiber: Vec<usize> = (0..self.dom.size()).filter(|&a| self.map[a] == e).collect();
        if fiber.is_empty() {
            return Err(Error::NotInImage(e));
        }
        SubHeap::new(self.dom.clone(), fiber).map_err(|err| match err {
            Error::NotClosed(w) => Error::Consistency(format!("fiber over {e} is not closed at {w:?}")),
            other => other,
        })
    }

    /// The kernel relation `a ≡ b ⟺ f(a) = f(b)`.
    pub fn kernel_relation(&self) -> Partition {
        Partition::from_key(self.dom.size(), |a| self.map[a])
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>,
    id: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a flat `mul` table and identity; inverses are
    /// looked up in the table. Associativity is checked by
    /// [`FiniteGroup::validate`].
    pub fn new(size: usize, mul: Vec<usize>, id: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        table::check_map("mul", size * size, size, &mul)?;
        if id >= size {
            return Err(Error::OutOfRange { what: "identity", index: id, size });
        }
        let mut inv = Vec::with_capacity(size);
        for a in 0..size {
            match (0..size).find(|&b| mul[a * size + b] == id && mul[b * size + a] == id) {
                Some(b) => inv.push(b),
                None => return Err(LawViolation::new(Law::GroupInverse, [a]).into()),
            }
        }
        Ok(Self { size, mul, id, inv })
    }

    pub fn from_nested(size: usize, mul: &[Vec<usize>], id: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        Self::new(size, table::flatten2("mul", size, size, size, mul)?, id)
    }

    pub fn from_fn(size: usize, id: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mul = (0..size * size).map(|i| f(i / size, i % size)).collect();
        Self::new(size, mul, id)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, 0, |a, b| (a + b) % n).expect("n > 0")
    }

    /// Direct product indexed `a * |other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let m = other.size;
        Self::from_fn(self.size * m, self.id * m + other.id, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("product of groups")
    }

    /// The group generated by permutations of `{0..d-1}`, elements sorted
    /// lexicographically as permutation vectors.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(identity.clone());
        let mut frontier = vec![identity.clone()];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let next = compose(&p, g);
                if elems.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index = |p: &Vec<usize>| elems.binary_search(p).expect("closed");
        let n = elems.len();
        let id = index(&identity);
        Self::from_fn(n, id, |a, b| index(&compose(&elems[a], &elems[b])))
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    pub fn dihedral4() -> Self {
        Self::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
    }

    /// Quaternion group Q8 as a regular permutation group.
    pub fn quaternion() -> Self {
        // Elements ±1, ±i, ±j, ±k encoded as sign * 4 + unit with units 1,i,j,k.
        let unit_mul = |u: usize, v: usize| -> (usize, usize) {
            // (sign, unit) of unit u times unit v.
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            T[u][v]
        };
        Self::from_fn(8, 0, |a, b| {
            let (s, u) = unit_mul(a % 4, b % 4);
            ((a / 4 + b / 4 + s) % 2) * 4 + u
        })
        .expect("Q8")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn nested_mul(&self) -> Vec<Vec<usize>> {
        table::nest2(self.size, &self.mul)
    }

    pub fn validate(&self) -> Verdict {
        let n = self.size;
        for a in 0..n {
            if self.mul(self.id, a) != a || self.mul(a, self.id) != a {
                return Err(LawViolation::new(Law::GroupIdentity, [a]));
            }
            if self.mul(a, self.inv[a]) != self.id || self.mul(self.inv[a], a) != self.id {
                return Err(LawViolation::new(Law::GroupInverse, [a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(LawViolation::new(Law::GroupAssociativity, [a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// `H(G)` with `[a,b,c] = a·b⁻¹·c`.
pub fn heap_of_group(group: &FiniteGroup) -> FiniteHeap {
    FiniteHeap::from_fn(group.size(), |a, b, c| group.mul(group.mul(a, group.inv(b)), c)).expect("non-empty group")
}

/// `G(H; e)` with `a·b = [a,e,b]`, identity `e` and `a⁻¹ = [e,a,e]`.
pub fn group_of_heap(heap: &FiniteHeap, e: usize) -> Result<FiniteGroup> {
    let n = heap.size();
    if e >= n {
        return Err(Error::OutOfRange { what: "base point", index: e, size: n });
    }
    let mul: Vec<usize> = (0..n * n).map(|i| heap.op(i / n, e, i % n)).collect();
    let inv = (0..n).map(|a| heap.op(e, a, e)).collect();
    Ok(FiniteGroup { size: n, mul, id: e, inv })
}
