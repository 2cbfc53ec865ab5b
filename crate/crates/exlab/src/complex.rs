//! Exclusivity structures as abstract simplicial complexes.
//!
//! A complex is stored by its *facets* (maximal simplices); the downward
//! closure is implicit. Vertices are `0..n_vertices`, and each vertex may
//! carry a string label (used to tie vertices of derived complexes back to
//! measurement events). The facet list is kept canonical: every facet is
//! sorted ascending, and the list itself is sorted lexicographically with
//! duplicates removed.

use std::collections::HashSet;
use std::fmt;

use crate::error::Error;

/// A structural problem found by [`SimplicialComplex::validate`].
///
/// Defects are data, not errors: a complex with defects can still be
/// inspected, but the bound computations assume a valid complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    /// A facet with no vertices.
    EmptyFacet { index: usize },
    /// A facet mentions a vertex outside `0..n_vertices`.
    VertexOutOfRange { facet: Vec<usize>, vertex: usize },
    /// One listed facet is contained in another, so it is not maximal.
    NestedFacet {
        inner: Vec<usize>,
        outer: Vec<usize>,
    },
    /// A vertex belongs to no facet.
    UncoveredVertex { vertex: usize },
    /// The label list length differs from the vertex count.
    LabelCountMismatch { expected: usize, found: usize },
    /// Two vertices carry the same label.
    DuplicateLabel {
        label: String,
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::EmptyFacet { index } => write!(f, "facet #{index} is empty"),
            Defect::VertexOutOfRange { facet, vertex } => {
                write!(f, "facet {facet:?} mentions out-of-range vertex {vertex}")
            }
            Defect::NestedFacet { inner, outer } => {
                write!(f, "facet {inner:?} is nested inside facet {outer:?}")
            }
            Defect::UncoveredVertex { vertex } => {
                write!(f, "vertex {vertex} is not covered by any facet")
            }
            Defect::LabelCountMismatch { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            Defect::DuplicateLabel {
                label,
                first,
                second,
            } => {
                write!(
                    f,
                    "label {label:?} used by both vertex {first} and vertex {second}"
                )
            }
        }
    }
}

/// An abstract simplicial complex on vertices `0..n_vertices`, stored by
/// its facets. Faces (all subsets of facets) are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    facets: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl SimplicialComplex {
    /// Builds a complex from a raw facet list, canonicalizing order and
    /// dropping exact duplicates but *keeping* nested facets and other
    /// structural problems so that [`validate`](Self::validate) can report
    /// them. Use [`from_maximal_sets`](Self::from_maximal_sets) when the
    /// input is a mathematical family of sets rather than untrusted data.
    pub fn new(n_vertices: usize, facets: Vec<Vec<usize>>) -> Self {
        let mut canon: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut facet| {
                facet.sort_unstable();
                facet.dedup();
                facet
            })
            .collect();
        canon.sort();
        canon.dedup();
        SimplicialComplex {
            n_vertices,
            facets: canon,
            labels: None,
        }
    }

    /// Builds the complex generated by a family of sets: canonicalizes,
    /// discards sets contained in other sets, and covers any remaining
    /// vertex with a singleton facet. The result is always valid
    /// (assuming all vertices are in range).
    pub fn from_maximal_sets(n_vertices: usize, sets: Vec<Vec<usize>>) -> Self {
        let complex = SimplicialComplex::new(n_vertices, sets);
        let mut masks: Vec<Mask> = complex
            .facets
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| Mask::from_set(n_vertices, f))
            .collect();
        masks = antichain(masks);
        let mut covered = Mask::empty(n_vertices);
        for m in &masks {
            covered.union_with(m);
        }
        let mut facets: Vec<Vec<usize>> = masks.iter().map(Mask::to_set).collect();
        for v in 0..n_vertices {
            if !covered.contains(v) {
                facets.push(vec![v]);
            }
        }
        facets.sort();
        SimplicialComplex {
            n_vertices,
            facets,
            labels: None,
        }
    }

    /// Attaches vertex labels. Length and uniqueness are checked by
    /// [`validate`](Self::validate), not here.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, vertex: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|ls| ls.get(vertex))
            .map(String::as_str)
    }

    /// Reports every structural defect: empty or nested facets,
    /// out-of-range or uncovered vertices, and label problems.
    /// An empty vector means the complex is valid.
    pub fn validate(&self) -> Vec<Defect> {
        let mut defects = Vec::new();
        let mut covered = vec![false; self.n_vertices];
        for (index, facet) in self.facets.iter().enumerate() {
            if facet.is_empty() {
                defects.push(Defect::EmptyFacet { index });
            }
            for &v in facet {
                if v >= self.n_vertices {
                    defects.push(Defect::VertexOutOfRange {
                        facet: facet.clone(),
                        vertex: v,
                    });
                } else {
                    covered[v] = true;
                }
            }
        }
        for (i, a) in self.facets.iter().enumerate() {
            for (j, b) in self.facets.iter().enumerate() {
                if i != j && !a.is_empty() && is_subset(a, b) {
                    // Report each nested pair once, inner before outer.
                    if a.len() < b.len() || (a.len() == b.len() && i < j) {
                        defects.push(Defect::NestedFacet {
                            inner: a.clone(),
                            outer: b.clone(),
                        });
                    }
                }
            }
        }
        for (vertex, &c) in covered.iter().enumerate() {
            if !c {
                defects.push(Defect::UncoveredVertex { vertex });
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.n_vertices {
                defects.push(Defect::LabelCountMismatch {
                    expected: self.n_vertices,
                    found: labels.len(),
                });
            }
            let mut seen: Vec<(&String, usize)> = Vec::new();
            for (i, label) in labels.iter().enumerate() {
                if let Some(&(_, first)) = seen.iter().find(|(l, _)| *l == label) {
                    defects.push(Defect::DuplicateLabel {
                        label: label.clone(),
                        first,
                        second: i,
                    });
                } else {
                    seen.push((label, i));
                }
            }
        }
        defects
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// True iff the given vertices form an exclusive set: at least two
    /// distinct vertices, all contained in one facet. Singletons and the
    /// empty set are simplices but never *exclusive* — exclusivity is a
    /// relation between two or more events.
    pub fn is_exclusive_set(&self, set: &[usize]) -> Result<bool, Error> {
        for &v in set {
            if v >= self.n_vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n_vertices: self.n_vertices,
                });
            }
        }
        let mut sorted: Vec<usize> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < 2 {
            return Ok(false);
        }
        Ok(self.facets.iter().any(|f| is_subset(&sorted, f)))
    }

    /// The exclusivity graph: vertices of the complex, with an edge for
    /// every pair that lies in a common facet.
    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::empty(self.n_vertices);
        for facet in &self.facets {
            for (i, &u) in facet.iter().enumerate() {
                for &v in &facet[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// The clique complex of the skeleton: facets are the maximal cliques
    /// of the exclusivity graph. Always contains this complex (every facet
    /// is a clique of the skeleton); equals it iff every maximal clique is
    /// already a facet. Labels carry over.
    pub fn clique_complex(&self) -> SimplicialComplex {
        let cliques = self.skeleton().maximal_cliques();
        let mut out = SimplicialComplex::from_maximal_sets(self.n_vertices, cliques);
        out.labels = self.labels.clone();
        out
    }

    /// The OR product of two complexes. Vertices are pairs `(i, j)` with
    /// `i` from `self` and `j` from `other`, numbered `i * other.n + j`. A
    /// joint set is exclusive iff, on at least one side, its coordinates
    /// are pairwise distinct and form an exclusive set of that factor with
    /// at least two elements.
    ///
    /// The facets are computed as images `{(i, f(i)) : i in F}` of facets
    /// `F` with `|F| >= 2` under arbitrary maps `f` into the other factor's
    /// vertex set (and symmetrically), reduced to an antichain. This is
    /// exponential in facet size, which is fine for the few-vertex facets
    /// that arise from measurement scenarios; the vertex-pair count, not
    /// the API, is the practical limit.
    ///
    /// Labels of the factors (or vertex numbers, when unlabeled) combine as
    /// `"a⊗b"`.
    pub fn or_product(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n1 = self.n_vertices;
        let n2 = other.n_vertices;
        let n = n1 * n2;
        let index = |i: usize, j: usize| i * n2 + j;

        let mut candidates: HashSet<Mask> = HashSet::new();
        for facet in self.facets.iter().filter(|f| f.len() >= 2) {
            // Every map facet -> V2, enumerated as an odometer.
            let mut choice = vec![0usize; facet.len()];
            if n2 == 0 {
                continue;
            }
            loop {
                let mut mask = Mask::empty(n);
                for (pos, &i) in facet.iter().enumerate() {
                    mask.insert(index(i, choice[pos]));
                }
                candidates.insert(mask);
                if !advance(&mut choice, n2) {
                    break;
                }
            }
        }
        for facet in other.facets.iter().filter(|f| f.len() >= 2) {
            let mut choice = vec![0usize; facet.len()];
            if n1 == 0 {
                continue;
            }
            loop {
                let mut mask = Mask::empty(n);
                for (pos, &j) in facet.iter().enumerate() {
                    mask.insert(index(choice[pos], j));
                }
                candidates.insert(mask);
                if !advance(&mut choice, n1) {
                    break;
                }
            }
        }

        let facets: Vec<Vec<usize>> = antichain(candidates.into_iter().collect())
            .iter()
            .map(Mask::to_set)
            .collect();
        let mut out = SimplicialComplex::from_maximal_sets(n, facets);

        let name1 = |i: usize| {
            self.label(i)
                .map(str::to_string)
                .unwrap_or_else(|| i.to_string())
        };
        let name2 = |j: usize| {
            other
                .label(j)
                .map(str::to_string)
                .unwrap_or_else(|| j.to_string())
        };
        let labels: Vec<String> = (0..n1)
            .flat_map(|i| (0..n2).map(move |j| (i, j)))
            .map(|(i, j)| format!("{}⊗{}", name1(i), name2(j)))
            .collect();
        if n > 0 {
            out.labels = Some(labels);
        }
        out
    }

    /// The subcomplex induced on a vertex subset: facets are the maximal
    /// nonempty intersections of the original facets with the subset.
    /// Vertices are reindexed `0..keep.len()` in ascending original order,
    /// and their labels carry over.
    pub fn induced_subcomplex(&self, keep: &[usize]) -> Result<SimplicialComplex, Error> {
        for &v in keep {
            if v >= self.n_vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n_vertices: self.n_vertices,
                });
            }
        }
        let mut selected: Vec<usize> = keep.to_vec();
        selected.sort_unstable();
        selected.dedup();
        let position = |v: usize| selected.binary_search(&v).ok();
        let sets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|facet| facet.iter().filter_map(|&v| position(v)).collect())
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect();
        let mut out = SimplicialComplex::from_maximal_sets(selected.len(), sets);
        if let Some(labels) = &self.labels {
            out.labels = Some(
                selected
                    .iter()
                    .map(|&v| labels.get(v).cloned().unwrap_or_else(|| v.to_string()))
                    .collect(),
            );
        }
        Ok(out)
    }

    /// Searches the skeleton for `count` pairwise vertex-disjoint cliques
    /// of exactly `k` vertices each. Returns the cliques (each sorted, the
    /// list sorted) or `None` when no such family exists.
    pub fn find_disjoint_cliques(&self, k: usize, count: usize) -> Option<Vec<Vec<usize>>> {
        if k == 0 || count == 0 {
            return None;
        }
        if k * count > self.n_vertices {
            return None;
        }
        let cliques = self.skeleton().cliques_of_size(k);
        let masks: Vec<Mask> = cliques
            .iter()
            .map(|c| Mask::from_set(self.n_vertices, c))
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        let mut used = Mask::empty(self.n_vertices);
        if search_disjoint(&masks, count, 0, &mut chosen, &mut used) {
            let mut found: Vec<Vec<usize>> = chosen.iter().map(|&i| cliques[i].clone()).collect();
            found.sort();
            Some(found)
        } else {
            None
        }
    }
}

fn search_disjoint(
    masks: &[Mask],
    count: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    used: &mut Mask,
) -> bool {
    if chosen.len() == count {
        return true;
    }
    for i in start..masks.len() {
        if masks.len() - i < count - chosen.len() {
            return false;
        }
        if used.intersects(&masks[i]) {
            continue;
        }
        chosen.push(i);
        used.union_with(&masks[i]);
        if search_disjoint(masks, count, i + 1, chosen, used) {
            return true;
        }
        used.difference_with(&masks[i]);
        chosen.pop();
    }
    false
}

/// Advances a mixed-radix odometer with uniform radix; false on wrap.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// True iff sorted slice `a` is a subset of sorted slice `b`.
fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    'outer: for &x in a {
        for &y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Keeps only the maximal sets of a family (no set contained in another).
/// Input masks must be distinct.
fn antichain(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.sort_by_key(Mask::len);
    // Only strictly larger sets can be proper supersets, so each mask
    // starts its scan past the run of masks sharing its cardinality.
    let mut next_larger = vec![masks.len(); masks.len()];
    for i in (0..masks.len().saturating_sub(1)).rev() {
        next_larger[i] = if masks[i + 1].len() > masks[i].len() {
            i + 1
        } else {
            next_larger[i + 1]
        };
    }
    let mut keep = vec![true; masks.len()];
    for i in 0..masks.len() {
        for j in next_larger[i]..masks.len() {
            if masks[i].is_subset(&masks[j]) {
                keep[i] = false;
                break;
            }
        }
    }
    masks
        .into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Fixed-capacity bitset over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Mask {
    words: Vec<u64>,
    len: usize,
}

impl Mask {
    fn empty(capacity: usize) -> Mask {
        Mask {
            words: vec![0; capacity.div_ceil(64)],
            len: 0,
        }
    }

    fn from_set(capacity: usize, set: &[usize]) -> Mask {
        let mut m = Mask::empty(capacity);
        for &v in set {
            m.insert(v);
        }
        m
    }

    fn insert(&mut self, v: usize) {
        let (w, b) = (v / 64, v % 64);
        if self.words[w] & (1 << b) == 0 {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    fn len(&self) -> usize {
        self.len
    }

    fn is_subset(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn intersects(&self, other: &Mask) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn union_with(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn difference_with(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn to_set(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len);
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// A simple undirected graph on vertices `0..n_vertices`, used for
/// skeletons. Dense adjacency; the graphs here stay small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn empty(n_vertices: usize) -> Graph {
        Graph {
            n_vertices,
            adj: vec![vec![false; n_vertices]; n_vertices],
        }
    }

    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Graph, Error> {
        let mut g = Graph::empty(n_vertices);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        n_vertices,
                    });
                }
            }
            if u != v {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n_vertices {
            for v in (u + 1)..self.n_vertices {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&e| e).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n_vertices).filter(|&u| self.adj[v][u]).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n_vertices);
        for u in 0..self.n_vertices {
            for v in 0..self.n_vertices {
                if u != v {
                    g.adj[u][v] = !self.adj[u][v];
                }
            }
        }
        g
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && u < self.n_vertices && v < self.n_vertices && self.adj[u][v])
        })
    }

    pub fn is_independent_set(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.adj[u][v]))
    }

    /// All maximal cliques, via Bron–Kerbosch with pivoting; isolated
    /// vertices appear as singleton cliques. Each clique is sorted and the
    /// list is sorted, so the output is deterministic.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        let candidates: Vec<usize> = (0..self.n_vertices).collect();
        self.bron_kerbosch(&mut current, candidates, Vec::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        current: &mut Vec<usize>,
        mut candidates: Vec<usize>,
        mut excluded: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() && excluded.is_empty() {
            let mut clique = current.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        // Pivot on the vertex of candidates ∪ excluded with the most
        // neighbors among candidates; only non-neighbors of the pivot are
        // branched on.
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .copied()
            .max_by_key(|&u| {
                (
                    candidates.iter().filter(|&&v| self.adj[u][v]).count(),
                    // Tiebreaker keeps the choice deterministic.
                    usize::MAX - u,
                )
            })
            .expect("candidates or excluded nonempty");
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| !self.adj[pivot][v])
            .collect();
        for v in branch {
            current.push(v);
            let next_candidates = candidates
                .iter()
                .copied()
                .filter(|&u| self.adj[v][u])
                .collect();
            let next_excluded = excluded
                .iter()
                .copied()
                .filter(|&u| self.adj[v][u])
                .collect();
            self.bron_kerbosch(current, next_candidates, next_excluded, out);
            current.pop();
            let pos = candidates
                .iter()
                .position(|&u| u == v)
                .expect("v in candidates");
            candidates.remove(pos);
            excluded.push(v);
        }
    }

    /// All cliques of exactly `k` vertices, sorted lexicographically.
    /// `k = 0` gives the empty clique.
    pub fn cliques_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_cliques(&mut current, 0, k, &mut out);
        out
    }

    fn extend_cliques(
        &self,
        current: &mut Vec<usize>,
        start: usize,
        k: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for v in start..self.n_vertices {
            if self.n_vertices - v < needed {
                break;
            }
            if current.iter().all(|&u| self.adj[u][v]) {
                current.push(v);
                self.extend_cliques(current, v + 1, k, out);
                current.pop();
            }
        }
    }
}
