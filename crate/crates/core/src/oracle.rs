//! Law checks that go through the group retract instead of the ternary
//! laws. They serve as an independent reference for the validators.
//!
//! A ternary operation is a heap operation iff `x·y = [x, 0, y]` is a group
//! with identity `0` and `[a, b, c] = a·b⁻¹·c`. A map between heaps preserves
//! the ternary operation iff it is affine: a group homomorphism followed by a
//! translation.

/// `size` elements with `op(a, b, c)` given on a flat table.
pub fn is_heap(size: usize, op: &[usize]) -> bool {
    group_retract(size, op).is_some()
}

/// `(mul, inv)` of `G(H; 0)` when `op` is a heap operation.
fn group_retract(n: usize, op: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let t = |a: usize, b: usize, c: usize| op[(a * n + b) * n + c];
    let mul: Vec<usize> = (0..n * n).map(|i| t(i / n, 0, i % n)).collect();
    let m = |a: usize, b: usize| mul[a * n + b];
    let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| m(a, b) == 0)).collect::<Option<_>>()?;
    let group = (0..n).all(|a| m(0, a) == a && m(a, 0) == a && m(inv[a], a) == 0)
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
    let torsor = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t(a, b, c) == m(m(a, inv[b]), c))));
    (group && torsor).then_some((mul, inv))
}

fn is_commutative(n: usize, mul: &[usize]) -> bool {
    (0..n).all(|a| (0..n).all(|b| mul[a * n + b] == mul[b * n + a]))
}

/// Whether `f` is affine between groups given by their tables.
fn affine(f: impl Fn(usize) -> usize, dom: (usize, &[usize]), cod: (usize, &[usize], &[usize])) -> bool {
    let (n, dmul) = dom;
    let (k, cmul, cinv) = cod;
    let shift = cinv[f(0)];
    let linear = |x: usize| cmul[f(x) * k + shift];
    (0..n).all(|a| (0..n).all(|b| linear(dmul[a * n + b]) == cmul[linear(a) * k + linear(b)]))
}

pub fn is_truss(size: usize, op: &[usize], mul: &[usize], one: Option<usize>) -> bool {
    let n = size;
    let Some((add, inv)) = group_retract(n, op) else { return false };
    if !is_commutative(n, &add) {
        return false;
    }
    let m = |a: usize, b: usize| mul[a * n + b];
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
    let left = (0..n).all(|w| affine(|x| m(w, x), (n, &add), (n, &add, &inv)));
    let right = (0..n).all(|w| affine(|x| m(x, w), (n, &add), (n, &add, &inv)));
    let unit = one.map_or(true, |u| (0..n).all(|a| m(u, a) == a && m(a, u) == a));
    assoc && left && right && unit
}

/// Module laws over a truss that is assumed valid.
pub fn is_module(truss: (usize, &[usize], &[usize], Option<usize>), size: usize, op: &[usize], act: &[usize], unital: bool) -> bool {
    let (nt, top, tmul, one) = truss;
    let n = size;
    let Some((add, inv)) = group_retract(n, op) else { return false };
    let Some((tadd, _)) = group_retract(nt, top) else { return false };
    if !is_commutative(n, &add) {
        return false;
    }
    let a = |t: usize, x: usize| act[t * n + x];
    let assoc = (0..nt).all(|t| (0..nt).all(|s| (0..n).all(|x| a(t, a(s, x)) == a(tmul[t * nt + s], x))));
    let over_module = (0..nt).all(|t| affine(|x| a(t, x), (n, &add), (n, &add, &inv)));
    let over_truss = (0..n).all(|x| affine(|t| a(t, x), (nt, &tadd), (n, &add, &inv)));
    let unit = !unital || one.is_some_and(|u| (0..n).all(|x| a(u, x) == x));
    assoc && over_module && over_truss && unit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::{heap_of_group, FiniteGroup, FiniteHeap};
    use crate::truss::{truss_of_ring, FiniteRing};

    #[test]
    fn recognises_group_heaps() {
        for g in [FiniteGroup::symmetric3(), FiniteGroup::quaternion(), FiniteGroup::cyclic(5)] {
            let h = heap_of_group(&g);
            assert!(is_heap(h.size(), h.table()));
        }
        let proj = FiniteHeap::from_fn(2, |a, _, _| a).unwrap();
        assert!(!is_heap(2, proj.table()));
    }

    #[test]
    fn recognises_ring_trusses() {
        let t = truss_of_ring(&FiniteRing::zn(6)).unwrap();
        assert!(is_truss(6, t.heap().table(), t.mul_table(), t.one()));
        let mut mul = t.mul_table().to_vec();
        mul[7] = 0;
        assert!(!is_truss(6, t.heap().table(), &mul, t.one()));
    }

    #[test]
    fn xnor_is_a_truss_on_two_elements() {
        let t = truss_of_ring(&FiniteRing::zn(2)).unwrap();
        assert!(is_truss(2, t.heap().table(), &[1, 0, 0, 1], t.one()));
    }
}
