use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

/// A partition of `{0..n-1}` whose classes are labelled by their smallest
/// member, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl Partition {
    /// Fibers of `key` over `{0..n-1}`.
    pub fn from_key<K: Eq + Hash>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut seen: HashMap<K, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for x in 0..n {
            let next = classes.len();
            let c = *seen.entry(key(x)).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(x);
            class_of.push(c);
        }
        Self { classes, class_of }
    }

    /// Classes of an equivalence relation given as a predicate. The relation
    /// is assumed to be an equivalence; each element is compared with the
    /// smallest member of the existing classes.
    pub fn from_relation(n: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for x in 0..n {
            match classes.iter().position(|c| related(c[0], x)) {
                Some(c) => {
                    classes[c].push(x);
                    class_of.push(c);
                }
                None => {
                    class_of.push(classes.len());
                    classes.push(vec![x]);
                }
            }
        }
        Self { classes, class_of }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_key(n, |x| x)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn carrier_size(&self) -> usize {
        self.class_of.len()
    }
}
