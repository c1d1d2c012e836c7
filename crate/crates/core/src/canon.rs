//! Canonical labeling with AS-sign tracking, and automorphism groups.
//!
//! Canonical forms are found by colour refinement on the multigraph followed
//! by an exhaustive individualization search. Every leaf of the search tree
//! is a vertex ordering; the leaf whose permuted multiplicity matrix is
//! lexicographically smallest defines the canonical form. Leaves sharing the
//! minimal code differ by a vertex automorphism, which is how odd
//! automorphisms (and hence AS-vanishing) are detected.
//!
//! [`automorphisms`] is a separate backtracking search over half-edge maps and
//! does not share code with the canonical labeling.

use std::cmp::Ordering;

use crate::diagram::{perm3_sign, Diagram};

/// Canonical representative of a diagram class.
///
/// Equality, hashing and ordering are those of the canonical form.
#[derive(Clone, Debug)]
pub struct CanonicalClass {
    form: Diagram,
    as_zero: bool,
}

impl CanonicalClass {
    pub fn form(&self) -> &Diagram {
        &self.form
    }

    /// True when an automorphism reverses orientation, so the class is zero
    /// modulo AS.
    pub fn as_zero(&self) -> bool {
        self.as_zero
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn has_tadpole(&self) -> bool {
        self.form.has_tadpole()
    }
}

impl PartialEq for CanonicalClass {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form
    }
}

impl Eq for CanonicalClass {}

impl std::hash::Hash for CanonicalClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.form.hash(state)
    }
}

impl PartialOrd for CanonicalClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.form.cmp(&other.form)
    }
}

/// Automorphism group orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutInfo {
    /// `|Aut Γ|`, counting half-edge permutations.
    pub aut_order: u64,
    /// Automorphisms fixing every vertex.
    pub edge_fixing_order: u64,
    /// `aut_order / edge_fixing_order`.
    pub vertex_action_order: u64,
    /// Number of orientation-reversing automorphisms.
    pub odd_count: u64,
}

impl AutInfo {
    pub fn has_odd(&self) -> bool {
        self.odd_count > 0
    }
}

type Adjacency = Vec<Vec<u8>>;

/// Result of the individualization search on a multigraph.
pub(crate) struct Labeling {
    /// Upper triangle (with diagonal) of the multiplicity matrix in
    /// canonical vertex order.
    pub code: Vec<u8>,
    /// All leaves achieving `code`; `leaves[i][v]` is the canonical label of
    /// vertex `v`.
    pub leaves: Vec<Vec<usize>>,
}

fn refine(adj: &Adjacency, colors: &mut [usize]) {
    let n = adj.len();
    let mut cells = count_colors(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<(usize, u8)>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u8)> = (0..n)
                    .filter(|&w| adj[v][w] > 0)
                    .map(|w| (colors[w], adj[v][w] + if w == v { 100 } else { 0 }))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let next = rank + 1;
        if next == cells {
            break;
        }
        cells = next;
    }
}

fn count_colors(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn leaf_code(adj: &Adjacency, labels: &[usize]) -> Vec<u8> {
    let n = adj.len();
    let mut inv = vec![0usize; n];
    for (v, &c) in labels.iter().enumerate() {
        inv[c] = v;
    }
    let mut code = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            code.push(adj[inv[i]][inv[j]]);
        }
    }
    code
}

fn search(adj: &Adjacency, colors: Vec<usize>, best: &mut Option<Labeling>) {
    let n = adj.len();
    if count_colors(&colors) == n {
        let code = leaf_code(adj, &colors);
        match best {
            None => {
                *best = Some(Labeling {
                    code,
                    leaves: vec![colors],
                })
            }
            Some(b) => match code.cmp(&b.code) {
                Ordering::Less => {
                    b.code = code;
                    b.leaves.clear();
                    b.leaves.push(colors);
                }
                Ordering::Equal => b.leaves.push(colors),
                Ordering::Greater => {}
            },
        }
        return;
    }
    // first smallest non-singleton cell
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("non-discrete colouring has a non-singleton cell");
    for v in (0..n).filter(|&v| colors[v] == target) {
        let mut next: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + usize::from(c == target && w != v))
            .collect();
        // compress to ranks
        let mut sorted = next.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for c in next.iter_mut() {
            *c = sorted.binary_search(c).unwrap();
        }
        refine(adj, &mut next);
        search(adj, next, best);
    }
}

/// Canonical labeling of a multiplicity matrix.
pub(crate) fn label_multigraph(adj: &Adjacency) -> Labeling {
    let n = adj.len();
    let mut colors: Vec<usize> = (0..n).map(|v| usize::from(adj[v][v] > 0)).collect();
    // compress
    if colors.iter().all(|&c| c == 1) {
        colors.iter_mut().for_each(|c| *c = 0);
    }
    refine(adj, &mut colors);
    let mut best = None;
    search(adj, colors, &mut best);
    best.expect("search reaches at least one leaf")
}

/// Canonical diagram determined by a canonical multiplicity code.
///
/// Slots at each vertex are ordered by neighbour label; parallel edges pair
/// their `j`-th slots, and a loop occupies two consecutive slots.
pub(crate) fn diagram_from_code(n: usize, code: &[u8]) -> Diagram {
    let mut adj = vec![vec![0u8; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            adj[i][j] = code[k];
            adj[j][i] = code[k];
            k += 1;
        }
    }
    let mut pairing = vec![0usize; 3 * n];
    // first slot at u towards w, for each (u, w)
    let mut start = vec![vec![0usize; n]; n];
    for u in 0..n {
        let mut pos = 0;
        for w in 0..n {
            start[u][w] = 3 * u + pos;
            pos += if w == u { 2 * adj[u][u] as usize } else { adj[u][w] as usize };
        }
        debug_assert_eq!(pos, 3);
    }
    for u in 0..n {
        if adj[u][u] > 0 {
            let s = start[u][u];
            pairing[s] = s + 1;
            pairing[s + 1] = s;
        }
        for w in u + 1..n {
            for j in 0..adj[u][w] as usize {
                let a = start[u][w] + j;
                let b = start[w][u] + j;
                pairing[a] = b;
                pairing[b] = a;
            }
        }
    }
    Diagram::from_pairing(n, pairing).expect("canonical code describes a valid diagram")
}

/// Map each slot of `d` to its slot in the canonical form for one leaf, and
/// return the AS sign of that relabeling.
fn leaf_sign(d: &Diagram, labels: &[usize]) -> i8 {
    let mut sign = 1i8;
    for v in 0..d.vertex_count() {
        let mut keyed: Vec<((usize, usize), usize)> = d
            .rotation(v)
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                let t = d.partner(s);
                let w = t / 3;
                let tiebreak = if w == v || labels[v] < labels[w] { s } else { t };
                ((labels[w], tiebreak), j)
            })
            .collect();
        keyed.sort_unstable();
        let mut pos = [0usize; 3];
        for (p, &(_, j)) in keyed.iter().enumerate() {
            pos[j] = p;
        }
        sign *= perm3_sign(pos);
    }
    sign
}

/// Canonicalize a diagram.
///
/// Returns the class and the sign `ε` with `d = ε·form` modulo AS. For an
/// AS-degenerate class the sign is deterministic but carries no meaning.
pub fn canonicalize(d: &Diagram) -> (CanonicalClass, i8) {
    let labeling = label_multigraph(&d.adjacency());
    let form = diagram_from_code(d.vertex_count(), &labeling.code);
    let sign = leaf_sign(d, &labeling.leaves[0]);
    let as_zero = has_odd_vertex_fixing(d)
        || labeling.leaves[1..]
            .iter()
            .any(|leaf| leaf_sign(d, leaf) != sign);
    (CanonicalClass { form, as_zero }, sign)
}

/// Whether a generator of the vertex-fixing automorphisms (a loop flip or a
/// swap of two parallel edges) reverses orientation.
fn has_odd_vertex_fixing(d: &Diagram) -> bool {
    let edges = d.edges();
    let swap_sign = |pairs: &[(usize, usize)]| {
        let mut map: Vec<usize> = (0..d.slot_count()).collect();
        for &(x, y) in pairs {
            map.swap(x, y);
        }
        map_sign(&map)
    };
    for (i, &(a, b)) in edges.iter().enumerate() {
        if d.is_loop(a) && swap_sign(&[(a, b)]) < 0 {
            return true;
        }
        for &(c, e) in &edges[i + 1..] {
            if a / 3 == c / 3 && b / 3 == e / 3 && a / 3 != b / 3 && swap_sign(&[(a, c), (b, e)]) < 0 {
                return true;
            }
        }
    }
    false
}

/// Class from a canonical code, computing AS-degeneracy.
pub(crate) fn class_from_code(n: usize, code: &[u8]) -> CanonicalClass {
    let form = diagram_from_code(n, code);
    canonicalize(&form).0
}

/// Exhaustive automorphism search over half-edge bijections.
///
/// Vertices are visited in breadth-first order; once one half-edge of a vertex
/// has an image, the remaining two have two possible images, so the search is
/// bounded by `6V · 6 · 2^(V-1)` leaves.
pub fn automorphisms(d: &Diagram) -> AutInfo {
    let mut info = AutInfo {
        aut_order: 0,
        edge_fixing_order: 0,
        vertex_action_order: 0,
        odd_count: 0,
    };
    for_each_isomorphism(d, d, |map| {
        info.aut_order += 1;
        if (0..d.vertex_count()).all(|v| map[3 * v] / 3 == v) {
            info.edge_fixing_order += 1;
        }
        if map_sign(map) < 0 {
            info.odd_count += 1;
        }
    });
    info.vertex_action_order = info.aut_order / info.edge_fixing_order;
    info
}

/// All automorphisms as slot maps.
pub fn automorphism_maps(d: &Diagram) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(d, d, |map| out.push(map.to_vec()));
    out
}

/// AS sign of a slot bijection between diagrams.
pub fn map_sign(map: &[usize]) -> i8 {
    let mut sign = 1;
    for v in 0..map.len() / 3 {
        let base = map[3 * v] / 3 * 3;
        sign *= perm3_sign([map[3 * v] - base, map[3 * v + 1] - base, map[3 * v + 2] - base]);
    }
    sign
}

/// Visit every slot bijection `src -> dst` that sends vertices to vertices and
/// commutes with the pairings.
pub fn for_each_isomorphism<F: FnMut(&[usize])>(src: &Diagram, dst: &Diagram, mut f: F) {
    let n = src.vertex_count();
    if dst.vertex_count() != n {
        return;
    }
    // BFS order on src with the slot through which each vertex is reached
    let mut order = vec![(0usize, usize::MAX)];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i].0;
        for s in src.rotation(v) {
            let t = src.partner(s);
            let w = t / 3;
            if !seen[w] {
                seen[w] = true;
                order.push((w, t));
            }
        }
        i += 1;
    }
    let mut map = vec![usize::MAX; 3 * n];
    let mut used = vec![false; n];
    for root_img in 0..3 * n {
        // root slot 0 of vertex 0 maps to root_img
        let w = root_img / 3;
        used[w] = true;
        for rest in rotations_fixing(root_img) {
            assign_vertex(&mut map, 0, [root_img, rest[0], rest[1]]);
            extend(src, dst, &order, 1, &mut map, &mut used, &mut f);
            clear_vertex(&mut map, 0);
        }
        used[w] = false;
    }
}

/// The two orderings of the remaining slots of the vertex containing `slot`.
fn rotations_fixing(slot: usize) -> [[usize; 2]; 2] {
    let base = slot / 3 * 3;
    let others: Vec<usize> = (base..base + 3).filter(|&x| x != slot).collect();
    [[others[0], others[1]], [others[1], others[0]]]
}

fn assign_vertex(map: &mut [usize], v: usize, images: [usize; 3]) {
    map[3 * v] = images[0];
    map[3 * v + 1] = images[1];
    map[3 * v + 2] = images[2];
}

fn clear_vertex(map: &mut [usize], v: usize) {
    map[3 * v..3 * v + 3].fill(usize::MAX);
}

fn consistent(src: &Diagram, dst: &Diagram, map: &[usize], v: usize) -> bool {
    for s in src.rotation(v) {
        let t = src.partner(s);
        if map[t] != usize::MAX && dst.partner(map[s]) != map[t] {
            return false;
        }
    }
    true
}

fn extend<F: FnMut(&[usize])>(
    src: &Diagram,
    dst: &Diagram,
    order: &[(usize, usize)],
    idx: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    f: &mut F,
) {
    if idx == 1 && !consistent(src, dst, map, 0) {
        return;
    }
    if idx == order.len() {
        f(map);
        return;
    }
    let (v, via) = order[idx];
    // `via` is a slot of v whose partner is already mapped
    let img = dst.partner(map[src.partner(via)]);
    let w = img / 3;
    if used[w] {
        return;
    }
    used[w] = true;
    let j = via % 3;
    for rest in rotations_fixing(img) {
        let mut images = [0usize; 3];
        images[j] = img;
        let mut k = 0;
        for (pos, slot) in images.iter_mut().enumerate() {
            if pos != j {
                *slot = rest[k];
                k += 1;
            }
        }
        assign_vertex(map, v, images);
        if consistent(src, dst, map, v) {
            extend(src, dst, order, idx + 1, map, used, f);
        }
        clear_vertex(map, v);
    }
    used[w] = false;
}
