#![allow(dead_code)]

use std::sync::OnceLock;

use gk_core::{enumerate_diagrams, CanonicalClass, Diagram};
use proptest::prelude::*;

pub const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

/// Every class of degree 2..=8, tadpoles included.
pub fn all_classes() -> &'static [CanonicalClass] {
    static CLASSES: OnceLock<Vec<CanonicalClass>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        [2, 4, 6, 8]
            .into_iter()
            .flat_map(|d| enumerate_diagrams(d, true).unwrap())
            .collect()
    })
}

/// A relabeling of an `n`-vertex diagram: vertex images and per-vertex
/// rotation permutations.
#[derive(Clone, Debug)]
pub struct Relabeling {
    pub vertices: Vec<usize>,
    pub slots: Vec<[usize; 3]>,
}

impl Relabeling {
    pub fn apply(&self, d: &Diagram) -> (Diagram, i8) {
        d.relabel(&self.vertices, &self.slots)
    }
}

pub fn relabeling(n: usize) -> impl Strategy<Value = Relabeling> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(0..6usize, n),
    )
        .prop_map(|(vertices, idx)| Relabeling {
            vertices,
            slots: idx.into_iter().map(|i| PERMS3[i]).collect(),
        })
}

/// A class from [`all_classes`] together with a relabeling of it.
pub fn relabeled_class() -> impl Strategy<Value = (usize, Relabeling)> {
    (0..all_classes().len()).prop_flat_map(|i| {
        let n = all_classes()[i].form().vertex_count();
        (Just(i), relabeling(n))
    })
}

/// A class with two successive relabelings.
pub fn twice_relabeled_class() -> impl Strategy<Value = (usize, Relabeling, Relabeling)> {
    (0..all_classes().len()).prop_flat_map(|i| {
        let n = all_classes()[i].form().vertex_count();
        (Just(i), relabeling(n), relabeling(n))
    })
}
