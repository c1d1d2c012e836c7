//! Surgery data paired against test diagrams.
//!
//! A [`SurgeryGraph`] reads a diagram as clasper data: vertex `i` is a
//! handlebody whose three handles are the rotation slots `3i, 3i+1, 3i+2`,
//! and the pairing says which handles are linked. Pairing a test diagram
//! against it expands every edge tensor over the dual bases of linked handle
//! pairs and evaluates an antisymmetric trilinear form at each vertex.
//!
//! Because the vertex form vanishes on repeated arguments and each handle is
//! linked to exactly one other, the only surviving basis assignments are
//! those sending the three half-edges of a test vertex bijectively onto the
//! handles of one handlebody, compatibly with the pairings. Each contributes
//! `∏ sgn(σ_v) · d_v` times the link sign of every edge.
//!
//! Weights other than 2 and 4 are a linear extrapolation of the vertex
//! evaluation; no geometric meaning is claimed for them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::canon::automorphisms;
use crate::diagram::{perm3_sign, Diagram};
use crate::relations::{ASpaceBasis, DiagramVector};

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("test diagram has a tadpole")]
    TadpoleTest,
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight of vertex {vertex} must be at least 1")]
    ZeroWeight { vertex: usize },
    #[error("link sign must be +1 or -1, found {0}")]
    BadLinkSign(i8),
}

/// A diagram read as surgery data, with one weight per handlebody.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryGraph {
    shape: Diagram,
    weights: Vec<u64>,
    link_sign: i8,
}

impl SurgeryGraph {
    /// Link sign +1.
    pub fn new(shape: Diagram, weights: Vec<u64>) -> Result<Self, PairingError> {
        Self::with_link_sign(shape, weights, 1)
    }

    pub fn with_link_sign(shape: Diagram, weights: Vec<u64>, link_sign: i8) -> Result<Self, PairingError> {
        if weights.len() != shape.vertex_count() {
            return Err(PairingError::WeightCount {
                expected: shape.vertex_count(),
                found: weights.len(),
            });
        }
        if let Some(vertex) = weights.iter().position(|&w| w == 0) {
            return Err(PairingError::ZeroWeight { vertex });
        }
        if link_sign != 1 && link_sign != -1 {
            return Err(PairingError::BadLinkSign(link_sign));
        }
        Ok(SurgeryGraph {
            shape,
            weights,
            link_sign,
        })
    }

    /// Every weight equal to `d`.
    pub fn uniform(shape: Diagram, d: u64) -> Result<Self, PairingError> {
        let n = shape.vertex_count();
        Self::new(shape, vec![d; n])
    }

    pub fn shape(&self) -> &Diagram {
        &self.shape
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn link_sign(&self) -> i8 {
        self.link_sign
    }

    /// `∏ d_i`.
    pub fn weight_product(&self) -> BigInt {
        self.weights.iter().fold(BigInt::one(), |acc, &w| acc * BigInt::from(w))
    }

    fn check_test(&self, test: &Diagram) -> Result<(), PairingError> {
        if test.vertex_count() != self.shape.vertex_count() {
            return Err(PairingError::DegreeMismatch {
                expected: self.shape.vertex_count(),
                found: test.vertex_count(),
            });
        }
        if test.has_tadpole() {
            return Err(PairingError::TadpoleTest);
        }
        Ok(())
    }
}

struct Contraction<'a> {
    s: &'a SurgeryGraph,
    test: &'a Diagram,
    order: Vec<usize>,
    image: Vec<usize>,
    perm: Vec<[usize; 3]>,
    used: Vec<bool>,
    total: BigInt,
}

impl Contraction<'_> {
    /// Each test slot, once its vertex is placed, must land on a handle
    /// linked to the image of its partner when the partner is placed too.
    fn compatible(&self, v: usize, target: usize, sigma: &[usize; 3]) -> bool {
        (0..3).all(|j| {
            let t = self.test.partner(3 * v + j);
            let w = t / 3;
            let here = 3 * target + sigma[j];
            let there = if w == v {
                3 * target + sigma[t % 3]
            } else if self.image[w] != usize::MAX {
                3 * self.image[w] + self.perm[w][t % 3]
            } else {
                return true;
            };
            self.s.shape.partner(here) == there
        })
    }

    fn run(&mut self, depth: usize, acc: BigInt, identity: bool) {
        if depth == self.order.len() {
            self.total += acc;
            return;
        }
        let v = self.order[depth];
        let n = self.image.len();
        for target in 0..n {
            if self.used[target] || (identity && target != v) {
                continue;
            }
            for sigma in &PERMS3 {
                if !self.compatible(v, target, sigma) {
                    continue;
                }
                let factor = BigInt::from(perm3_sign(*sigma) as i64 * self.s.weights[target] as i64);
                self.image[v] = target;
                self.perm[v] = *sigma;
                self.used[target] = true;
                self.run(depth + 1, &acc * factor, identity);
                self.used[target] = false;
                self.image[v] = usize::MAX;
            }
        }
    }
}

fn bfs_order(d: &Diagram) -> Vec<usize> {
    let mut order = vec![0];
    let mut seen = vec![false; d.vertex_count()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for s in d.rotation(order[i]) {
            let w = d.partner(s) / 3;
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    order
}

fn contraction(s: &SurgeryGraph, test: &Diagram, identity: bool) -> BigRational {
    let n = test.vertex_count();
    let mut c = Contraction {
        s,
        test,
        order: bfs_order(test),
        image: vec![usize::MAX; n],
        perm: vec![[0, 1, 2]; n],
        used: vec![false; n],
        total: BigInt::zero(),
    };
    c.run(0, BigInt::one(), identity);
    let link = if s.link_sign < 0 && test.edge_count() % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    BigRational::from_integer(c.total * link)
}

/// Pairing with test vertex `i` placed on handlebody `i`.
pub fn contract(s: &SurgeryGraph, test: &Diagram) -> Result<BigRational, PairingError> {
    s.check_test(test)?;
    Ok(contraction(s, test, true))
}

/// Pairing summed over every placement of test vertices on handlebodies.
pub fn contract_full(s: &SurgeryGraph, test: &Diagram) -> Result<BigRational, PairingError> {
    s.check_test(test)?;
    Ok(contraction(s, test, false))
}

/// `Σ_{Γ'} contract_full(s, Γ') / |Aut Γ'| · [Γ']` over loop-free classes,
/// in coordinates of `b`. A shape with a tadpole evaluates to zero.
pub fn zeta_evaluate(s: &SurgeryGraph, b: &ASpaceBasis) -> Result<Vec<BigRational>, PairingError> {
    if b.degree() != s.shape.vertex_count() {
        return Err(PairingError::DegreeMismatch {
            expected: s.shape.vertex_count(),
            found: b.degree(),
        });
    }
    if s.shape.has_tadpole() {
        return Ok(vec![BigRational::zero(); b.dimension()]);
    }
    let terms: Vec<(usize, BigRational)> = b
        .loop_free_classes()
        .par_iter()
        .enumerate()
        .map(|(i, class)| {
            let value = contraction(s, class.form(), false);
            if value.is_zero() {
                return (i, value);
            }
            let aut = automorphisms(class.form()).aut_order;
            (i, value / BigRational::from_integer(BigInt::from(aut)))
        })
        .collect();
    let mut v = DiagramVector::zero();
    for (i, coeff) in terms {
        v.add_class(b.loop_free_classes()[i].clone(), coeff);
    }
    Ok(crate::relations::reduce(&v, b).expect("classes share the basis degree"))
}
