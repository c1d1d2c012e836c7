//! Diagram enumeration, IHX relations and bases of the AS/IHX quotient.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{automorphism_maps, canonicalize, class_from_code, label_multigraph, CanonicalClass};
use crate::diagram::Diagram;
use crate::linalg::{row_reduce, RationalMatrix};

/// Largest degree enumerated unless the caller raises the cap.
pub const DEFAULT_DEGREE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("degree {0} must be a positive even integer")]
    DegreeOdd(usize),
    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("dimension {value} at position {index} is negative")]
    NegativeDim { index: usize, value: i64 },
}

fn check_degree(degree: usize, cap: usize) -> Result<(), RelationError> {
    if degree == 0 || !degree.is_multiple_of(2) {
        return Err(RelationError::DegreeOdd(degree));
    }
    if degree > cap {
        return Err(RelationError::DegreeTooLarge { degree, cap });
    }
    Ok(())
}

/// Finite rational combination of AS-nonzero diagram classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramVector {
    terms: BTreeMap<CanonicalClass, BigRational>,
}

impl DiagramVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `[d]` expressed through its canonical class.
    pub fn from_diagram(d: &Diagram) -> Self {
        let mut v = Self::zero();
        v.add_diagram(d, &BigRational::one());
        v
    }

    /// Add `coeff·[d]`, applying the canonicalization sign; AS-degenerate
    /// classes are dropped.
    pub fn add_diagram(&mut self, d: &Diagram, coeff: &BigRational) {
        let (class, sign) = canonicalize(d);
        let c = if sign < 0 { -coeff.clone() } else { coeff.clone() };
        self.add_class(class, c);
    }

    pub fn add_class(&mut self, class: CanonicalClass, coeff: BigRational) {
        if class.as_zero() || coeff.is_zero() {
            return;
        }
        match self.terms.entry(class) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalClass, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, by: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_class(k.clone(), v * by);
        }
        out
    }
}

impl std::ops::Add for &DiagramVector {
    type Output = DiagramVector;
    fn add(self, rhs: &DiagramVector) -> DiagramVector {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_class(k.clone(), v.clone());
        }
        out
    }
}

/// Labeled multigraphs in breadth-first labeling, one row at a time.
///
/// Vertex `v` may connect to itself (loop), to already-discovered vertices
/// `w > v`, and to a block of new vertices labeled consecutively from `next`.
/// Every connected cubic multigraph has at least one such labeling.
#[derive(Clone)]
struct GenState {
    adj: Vec<Vec<u8>>,
    deg: Vec<u8>,
    next: usize,
    row: usize,
}

impl GenState {
    fn new(n: usize) -> Self {
        GenState {
            adj: vec![vec![0; n]; n],
            deg: vec![0; n],
            next: 1,
            row: 0,
        }
    }
}

/// All ways to complete the current row, yielding the successor states.
fn expand_row(st: &GenState, loops: bool) -> Vec<GenState> {
    let n = st.adj.len();
    let v = st.row;
    let mut out = Vec::new();
    if v >= st.next {
        return out; // disconnected
    }
    let need = 3 - st.deg[v] as usize;
    let mut base = st.clone();
    base.row += 1;
    for l in 0..=usize::from(loops && need >= 2 && st.adj[v][v] == 0) {
        let mut s = base.clone();
        s.adj[v][v] += l as u8;
        s.deg[v] += 2 * l as u8;
        old_targets(&mut s, v, v + 1, need - 2 * l, n, &mut out);
    }
    out
}

fn old_targets(s: &mut GenState, v: usize, w: usize, rem: usize, n: usize, out: &mut Vec<GenState>) {
    if w >= s.next {
        new_targets(s, v, rem, n, out);
        return;
    }
    let cap = rem.min(3 - s.deg[w] as usize);
    for m in 0..=cap {
        let mut t = s.clone();
        t.adj[v][w] += m as u8;
        t.adj[w][v] += m as u8;
        t.deg[v] += m as u8;
        t.deg[w] += m as u8;
        old_targets(&mut t, v, w + 1, rem - m, n, out);
    }
}

fn new_targets(s: &mut GenState, v: usize, rem: usize, n: usize, out: &mut Vec<GenState>) {
    if rem == 0 {
        debug_assert_eq!(s.deg[v], 3);
        out.push(s.clone());
        return;
    }
    if s.next >= n {
        return;
    }
    for m in 1..=rem.min(3) {
        let mut t = s.clone();
        let c = t.next;
        t.next += 1;
        t.adj[v][c] += m as u8;
        t.adj[c][v] += m as u8;
        t.deg[v] += m as u8;
        t.deg[c] += m as u8;
        new_targets(&mut t, v, rem - m, n, out);
    }
}

fn complete(st: GenState, loops: bool, codes: &mut HashSet<Vec<u8>>) {
    let n = st.adj.len();
    if st.row == n {
        if st.next == n {
            codes.insert(label_multigraph(&st.adj).code);
        }
        return;
    }
    for s in expand_row(&st, loops) {
        complete(s, loops, codes);
    }
}

/// Options for [`enumerate_with`].
#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub allow_tadpoles: bool,
    pub cap: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            allow_tadpoles: false,
            cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Every isomorphism class of connected trivalent diagrams of `degree`
/// vertices, each exactly once, AS-degenerate classes included and flagged.
pub fn enumerate_diagrams(degree: usize, allow_tadpoles: bool) -> Result<Vec<CanonicalClass>, RelationError> {
    enumerate_with(
        degree,
        &EnumOptions {
            allow_tadpoles,
            ..EnumOptions::default()
        },
    )
}

pub fn enumerate_with(degree: usize, opts: &EnumOptions) -> Result<Vec<CanonicalClass>, RelationError> {
    check_degree(degree, opts.cap)?;
    let loops = opts.allow_tadpoles;
    // split the search after the first two rows
    let mut frontier = vec![GenState::new(degree)];
    for _ in 0..2.min(degree) {
        frontier = frontier.iter().flat_map(|s| expand_row(s, loops)).collect();
    }
    let codes: HashSet<Vec<u8>> = frontier
        .into_par_iter()
        .map(|st| {
            let mut local = HashSet::new();
            complete(st, loops, &mut local);
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut codes: Vec<Vec<u8>> = codes.into_iter().collect();
    codes.sort_unstable();
    let mut classes: Vec<CanonicalClass> = codes
        .par_iter()
        .map(|c| class_from_code(degree, c))
        .collect();
    classes.sort();
    Ok(classes)
}

/// Representatives of the non-loop edge orbits under `Aut(d)`, as slots.
pub fn edge_orbit_representatives(d: &Diagram) -> Vec<usize> {
    let maps = automorphism_maps(d);
    let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    d.edges()
        .into_iter()
        .filter(|&(a, _)| !d.is_loop(a))
        .filter(|&(a, b)| maps.iter().all(|m| norm(m[a], m[b]) >= (a, b)))
        .map(|(a, _)| a)
        .collect()
}

/// Diagram obtained by placing `at_u` and `at_w` (old slot ids, edge slot
/// first) as the new rotations of the two endpoints.
fn rewire(d: &Diagram, u: usize, w: usize, at_u: [usize; 3], at_w: [usize; 3]) -> Diagram {
    let mut image: Vec<usize> = (0..d.slot_count()).collect();
    for j in 0..3 {
        image[at_u[j]] = 3 * u + j;
        image[at_w[j]] = 3 * w + j;
    }
    let mut pairing = vec![0usize; d.slot_count()];
    for (s, &t) in d.pairing().iter().enumerate() {
        pairing[image[s]] = image[t];
    }
    Diagram::from_pairing(d.vertex_count(), pairing).expect("IHX preserves connectivity")
}

/// The three diagrams of the IHX relation on the edge through `slot`.
///
/// With the endpoint rotations rotated cyclically to `(e, a, b)` at `u` and
/// `(e', c, d)` at `w`, the terms are
/// `I = u(e,a,b) w(e',c,d)`, `H = u(e,a,c) w(e',b,d)`, `X = u(e,b,c) w(e',a,d)`
/// and the relation reads `I − H + X = 0`. This is the Jacobi identity
/// `f(e,a,b)f(e,c,d) + f(e,b,c)f(e,a,d) + f(e,c,a)f(e,b,d) = 0` for a totally
/// antisymmetric vertex tensor `f`.
pub fn ihx_terms(d: &Diagram, slot: usize) -> [Diagram; 3] {
    let e = slot;
    let f = d.partner(slot);
    let (u, w) = (e / 3, f / 3);
    assert_ne!(u, w, "IHX is taken on a non-loop edge");
    let (a, b) = (3 * u + (e % 3 + 1) % 3, 3 * u + (e % 3 + 2) % 3);
    let (c, dd) = (3 * w + (f % 3 + 1) % 3, 3 * w + (f % 3 + 2) % 3);
    [
        rewire(d, u, w, [e, a, b], [f, c, dd]),
        rewire(d, u, w, [e, a, c], [f, b, dd]),
        rewire(d, u, w, [e, b, c], [f, a, dd]),
    ]
}

/// `I − H + X` on the edge through `slot`, canonicalized with signs.
pub fn ihx_relation(d: &Diagram, slot: usize) -> DiagramVector {
    let [i, h, x] = ihx_terms(d, slot);
    let one = BigRational::one();
    let mut v = DiagramVector::zero();
    v.add_diagram(&i, &one);
    v.add_diagram(&h, &-one.clone());
    v.add_diagram(&x, &one);
    v
}

/// One relation per (class, non-loop edge orbit), over every class of the
/// degree including tadpole classes. Zero relations are omitted.
pub fn ihx_relations(degree: usize) -> Result<Vec<DiagramVector>, RelationError> {
    ihx_relations_with(degree, DEFAULT_DEGREE_CAP)
}

pub fn ihx_relations_with(degree: usize, cap: usize) -> Result<Vec<DiagramVector>, RelationError> {
    let classes = enumerate_with(
        degree,
        &EnumOptions {
            allow_tadpoles: true,
            cap,
        },
    )?;
    Ok(relations_for(&classes))
}

fn relations_for(classes: &[CanonicalClass]) -> Vec<DiagramVector> {
    classes
        .par_iter()
        .flat_map_iter(|c| {
            let d = c.form().clone();
            edge_orbit_representatives(&d)
                .into_iter()
                .map(move |s| ihx_relation(&d, s))
        })
        .filter(|v| !v.is_empty())
        .collect()
}

/// Basis of the degree-`2n` quotient with the data needed to reduce into it.
#[derive(Clone, Debug)]
pub struct ASpaceBasis {
    degree: usize,
    generators: Vec<CanonicalClass>,
    index: HashMap<CanonicalClass, usize>,
    relation_matrix: RationalMatrix,
    reduced: RationalMatrix,
    pivots: Vec<usize>,
    basis_columns: Vec<usize>,
    loop_free_classes: Vec<CanonicalClass>,
}

impl ASpaceBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.basis_columns.len()
    }

    /// AS-nonzero loop-free classes, in column order.
    pub fn generators(&self) -> &[CanonicalClass] {
        &self.generators
    }

    /// Generator indices forming the basis.
    pub fn basis_columns(&self) -> &[usize] {
        &self.basis_columns
    }

    pub fn basis_classes(&self) -> Vec<&CanonicalClass> {
        self.basis_columns.iter().map(|&j| &self.generators[j]).collect()
    }

    pub fn relation_matrix(&self) -> &RationalMatrix {
        &self.relation_matrix
    }

    /// Reduced row-echelon form of the relation matrix.
    pub fn reduced(&self) -> &RationalMatrix {
        &self.reduced
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Every loop-free class of this degree, AS-degenerate ones included.
    pub fn loop_free_classes(&self) -> &[CanonicalClass] {
        &self.loop_free_classes
    }

    pub fn generator_index(&self, class: &CanonicalClass) -> Option<usize> {
        self.index.get(class).copied()
    }

    /// Coordinates of a generator vector (indexed like `generators`).
    pub fn reduce_generator_vector(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.generators.len());
        self.basis_columns
            .iter()
            .map(|&j| {
                let mut x = v[j].clone();
                for (i, &p) in self.pivots.iter().enumerate() {
                    if !v[p].is_zero() {
                        x -= &v[p] * self.reduced.get(i, j);
                    }
                }
                x
            })
            .collect()
    }

    /// Coordinates of each generator in the basis.
    pub fn generator_coordinates(&self) -> Vec<Vec<BigRational>> {
        (0..self.generators.len())
            .map(|j| {
                let mut e = vec![BigRational::zero(); self.generators.len()];
                e[j] = BigRational::one();
                self.reduce_generator_vector(&e)
            })
            .collect()
    }
}

/// Options for [`a_space_basis_with`].
#[derive(Clone, Debug)]
pub struct BasisOptions {
    pub cap: usize,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions {
            cap: DEFAULT_DEGREE_CAP,
        }
    }
}

pub fn a_space_basis(degree: usize) -> Result<ASpaceBasis, RelationError> {
    a_space_basis_with(degree, &BasisOptions::default())
}

pub fn a_space_basis_with(degree: usize, opts: &BasisOptions) -> Result<ASpaceBasis, RelationError> {
    let all = enumerate_with(
        degree,
        &EnumOptions {
            allow_tadpoles: true,
            cap: opts.cap,
        },
    )?;
    let loop_free_classes: Vec<CanonicalClass> =
        all.iter().filter(|c| !c.has_tadpole()).cloned().collect();
    let generators: Vec<CanonicalClass> = loop_free_classes
        .iter()
        .filter(|c| !c.as_zero())
        .cloned()
        .collect();
    let index: HashMap<CanonicalClass, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let relations = relations_for(&all);
    let mut relation_matrix = RationalMatrix::new(0, generators.len());
    for r in &relations {
        let row: Vec<(usize, BigRational)> = r
            .terms()
            .map(|(c, x)| (index[c], x.clone()))
            .collect();
        relation_matrix.push_row(&row);
    }
    let (reduced, pivots) = row_reduce(&relation_matrix);
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let basis_columns = (0..generators.len())
        .filter(|j| !pivot_set.contains(j))
        .collect();
    Ok(ASpaceBasis {
        degree,
        generators,
        index,
        relation_matrix,
        reduced,
        pivots,
        basis_columns,
        loop_free_classes,
    })
}

/// `dim 𝒜_degree`.
pub fn a_space_dimension(degree: usize) -> Result<usize, RelationError> {
    Ok(a_space_basis(degree)?.dimension())
}

/// Coordinates of `v` in the basis.
pub fn reduce(v: &DiagramVector, b: &ASpaceBasis) -> Result<Vec<BigRational>, RelationError> {
    let mut full = vec![BigRational::zero(); b.generators.len()];
    for (class, x) in v.terms() {
        if class.degree() != b.degree {
            return Err(RelationError::DegreeMismatch {
                expected: b.degree,
                found: class.degree(),
            });
        }
        let j = b
            .generator_index(class)
            .expect("AS-nonzero classes of the basis degree are generators");
        full[j] += x;
    }
    Ok(b.reduce_generator_vector(&full))
}

/// Graded dimensions of the free commutative algebra with `connected_dims[j]`
/// generators in degree `2(j+1)`, for degrees `0, 2, …, max_degree`.
pub fn poly_ring_dims(connected_dims: &[i64], max_degree: usize) -> Result<Vec<BigInt>, RelationError> {
    if let Some((index, &value)) = connected_dims.iter().enumerate().find(|(_, &x)| x < 0) {
        return Err(RelationError::NegativeDim { index, value });
    }
    let n = max_degree / 2;
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for (j, &count) in connected_dims.iter().enumerate().take(n) {
        let step = j + 1;
        // multiply by (1 - x^step)^(-count)
        for _ in 0..count {
            for i in step..=n {
                let prev = series[i - step].clone();
                series[i] += prev;
            }
        }
    }
    Ok(series)
}

/// Largest absolute coefficient in a relation.
pub fn max_abs_coefficient(v: &DiagramVector) -> BigRational {
    v.terms()
        .map(|(_, x)| x.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}
