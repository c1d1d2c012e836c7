//! Vertex-oriented trivalent multigraphs.
//!
//! A [`Diagram`] with `V` vertices owns `3V` half-edge *slots*. Slot `3v + j`
//! is the `j`-th entry of the rotation (ordered triple) at vertex `v`, so the
//! orientation of the diagram is carried entirely by slot order. The edge set
//! is a fixed-point-free involution on slots.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Errors raised while building a [`Diagram`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("vertex count {0} is not a positive even integer")]
    BadVertexCount(usize),
    #[error("expected {expected} rotations, found {found}")]
    RotationCount { expected: usize, found: usize },
    #[error("vertex {vertex} has {count} half-edges, expected 3")]
    NonTrivalent { vertex: usize, count: usize },
    #[error("half-edge {0} appears at more than one rotation slot")]
    DuplicateHalfEdge(usize),
    #[error("bad pairing: {0}")]
    BadPairing(String),
    #[error("diagram is disconnected")]
    Disconnected,
}

/// Connected trivalent multigraph with an ordered triple of half-edges at
/// every vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    vertex_count: usize,
    pairing: Vec<usize>,
}

/// Sign of a permutation of `{0, 1, 2}` given as images.
pub fn perm3_sign(p: [usize; 3]) -> i8 {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Build a diagram from arbitrary half-edge identifiers.
///
/// `rotations[v]` lists the half-edges of vertex `v` in rotation order and
/// `pairing` lists the edges as unordered pairs of half-edge identifiers.
pub fn build_diagram(
    vertex_count: usize,
    rotations: &[Vec<usize>],
    pairing: &[(usize, usize)],
) -> Result<Diagram, DiagramError> {
    if vertex_count == 0 || !vertex_count.is_multiple_of(2) {
        return Err(DiagramError::BadVertexCount(vertex_count));
    }
    if rotations.len() != vertex_count {
        return Err(DiagramError::RotationCount {
            expected: vertex_count,
            found: rotations.len(),
        });
    }
    let mut slot_of: HashMap<usize, usize> = HashMap::new();
    for (v, rot) in rotations.iter().enumerate() {
        if rot.len() != 3 {
            return Err(DiagramError::NonTrivalent {
                vertex: v,
                count: rot.len(),
            });
        }
        for (j, &h) in rot.iter().enumerate() {
            if slot_of.insert(h, 3 * v + j).is_some() {
                return Err(DiagramError::DuplicateHalfEdge(h));
            }
        }
    }
    let slots = 3 * vertex_count;
    let mut partner = vec![usize::MAX; slots];
    for &(a, b) in pairing {
        if a == b {
            return Err(DiagramError::BadPairing(format!(
                "half-edge {a} is paired with itself"
            )));
        }
        let sa = *slot_of
            .get(&a)
            .ok_or_else(|| DiagramError::BadPairing(format!("unknown half-edge {a}")))?;
        let sb = *slot_of
            .get(&b)
            .ok_or_else(|| DiagramError::BadPairing(format!("unknown half-edge {b}")))?;
        for (s, h) in [(sa, a), (sb, b)] {
            if partner[s] != usize::MAX {
                return Err(DiagramError::BadPairing(format!(
                    "half-edge {h} belongs to more than one edge"
                )));
            }
        }
        partner[sa] = sb;
        partner[sb] = sa;
    }
    if let Some(s) = partner.iter().position(|&p| p == usize::MAX) {
        let v = s / 3;
        return Err(DiagramError::BadPairing(format!(
            "half-edge {} is not paired",
            rotations[v][s % 3]
        )));
    }
    Diagram::from_pairing(vertex_count, partner)
}

impl Diagram {
    /// Build from a slot-level involution (slot `3v + j` is slot `j` of `v`).
    pub fn from_pairing(vertex_count: usize, pairing: Vec<usize>) -> Result<Diagram, DiagramError> {
        if vertex_count == 0 || !vertex_count.is_multiple_of(2) {
            return Err(DiagramError::BadVertexCount(vertex_count));
        }
        if pairing.len() != 3 * vertex_count {
            return Err(DiagramError::BadPairing(format!(
                "expected {} slots, found {}",
                3 * vertex_count,
                pairing.len()
            )));
        }
        for (s, &t) in pairing.iter().enumerate() {
            if t >= pairing.len() {
                return Err(DiagramError::BadPairing(format!("slot {s} paired out of range")));
            }
            if t == s {
                return Err(DiagramError::BadPairing(format!("slot {s} is a fixed point")));
            }
            if pairing[t] != s {
                return Err(DiagramError::BadPairing(format!("slot {s} is not an involution point")));
            }
        }
        let d = Diagram {
            vertex_count,
            pairing,
        };
        if !d.is_connected() {
            return Err(DiagramError::Disconnected);
        }
        Ok(d)
    }

    /// Number of vertices, which is also the degree `2n`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn degree(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        3 * self.vertex_count / 2
    }

    pub fn slot_count(&self) -> usize {
        self.pairing.len()
    }

    /// Slot-level involution.
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    #[inline]
    pub fn partner(&self, slot: usize) -> usize {
        self.pairing[slot]
    }

    #[inline]
    pub fn vertex_of(slot: usize) -> usize {
        slot / 3
    }

    /// Rotation of `v` as slot identifiers.
    pub fn rotation(&self, v: usize) -> [usize; 3] {
        [3 * v, 3 * v + 1, 3 * v + 2]
    }

    /// Edges as slot pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.pairing
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (a, b))
            .collect()
    }

    pub fn is_loop(&self, slot: usize) -> bool {
        slot / 3 == self.pairing[slot] / 3
    }

    pub fn loop_count(&self) -> usize {
        self.edges().iter().filter(|&&(a, _)| self.is_loop(a)).count()
    }

    /// True iff some edge has both half-edges at one vertex.
    pub fn has_tadpole(&self) -> bool {
        (0..self.slot_count()).any(|s| self.is_loop(s))
    }

    /// Symmetric multiplicity matrix; the diagonal counts loops.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let v = self.vertex_count;
        let mut adj = vec![vec![0u8; v]; v];
        for (a, b) in self.edges() {
            let (x, y) = (a / 3, b / 3);
            if x == y {
                adj[x][x] += 1;
            } else {
                adj[x][y] += 1;
                adj[y][x] += 1;
            }
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for s in self.rotation(v) {
                let w = self.pairing[s] / 3;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Relabel vertices and reorder rotations.
    ///
    /// Vertex `v` becomes `vertex_perm[v]`, and the half-edge in position `j`
    /// of its rotation moves to position `slot_perms[v][j]`. Returns the new
    /// diagram together with the AS sign of the reordering, i.e. the product
    /// of the slot permutation parities.
    ///
    /// Panics if the arguments are not permutations of the right size.
    pub fn relabel(&self, vertex_perm: &[usize], slot_perms: &[[usize; 3]]) -> (Diagram, i8) {
        let n = self.vertex_count;
        assert_eq!(vertex_perm.len(), n);
        assert_eq!(slot_perms.len(), n);
        let mut seen = vec![false; n];
        for &v in vertex_perm {
            assert!(v < n && !seen[v], "vertex_perm is not a permutation");
            seen[v] = true;
        }
        let mut sign = 1i8;
        let mut image = vec![0usize; 3 * n];
        for v in 0..n {
            let p = slot_perms[v];
            let mut hit = [false; 3];
            for &x in &p {
                assert!(x < 3 && !hit[x], "slot permutation is not a permutation");
                hit[x] = true;
            }
            sign *= perm3_sign(p);
            for j in 0..3 {
                image[3 * v + j] = 3 * vertex_perm[v] + p[j];
            }
        }
        let mut pairing = vec![0usize; 3 * n];
        for (s, &t) in self.pairing.iter().enumerate() {
            pairing[image[s]] = image[t];
        }
        (
            Diagram {
                vertex_count: n,
                pairing,
            },
            sign,
        )
    }

    /// The theta graph: two vertices joined by three parallel edges.
    pub fn theta() -> Diagram {
        Diagram::from_pairing(2, vec![3, 4, 5, 0, 1, 2]).expect("theta is valid")
    }

    /// Two vertices, each with a loop, joined by one edge.
    pub fn dumbbell() -> Diagram {
        Diagram::from_pairing(2, vec![1, 0, 5, 4, 3, 2]).expect("dumbbell is valid")
    }

    /// Complete graph on four vertices.
    pub fn k4() -> Diagram {
        // vertex v has neighbours (v+1, v+2, v+3) mod 4 in rotation order
        let mut pairing = vec![0usize; 12];
        for v in 0..4 {
            for j in 0..3 {
                let w = (v + j + 1) % 4;
                // position of v among w's neighbours
                let k = (v + 4 - w) % 4 - 1;
                pairing[3 * v + j] = 3 * w + k;
            }
        }
        Diagram::from_pairing(4, pairing).expect("K4 is valid")
    }

    /// Four-cycle with alternate edges doubled.
    pub fn doubled_cycle() -> Diagram {
        // 0=1 double, 1-2, 2=3 double, 3-0
        let pairing = vec![
            3, 4, 11, // v0: to v1, v1, v3
            0, 1, 6, //  v1: to v0, v0, v2
            5, 9, 10, // v2: to v1, v3, v3
            7, 8, 2, //  v3: to v2, v2, v0
        ];
        Diagram::from_pairing(4, pairing).expect("doubled cycle is valid")
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram[{}](", self.vertex_count)?;
        for (i, (a, b)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, ")")
    }
}
