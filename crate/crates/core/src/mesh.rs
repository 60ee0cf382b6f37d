//! Hom spaces in the mesh category of a translation quiver, and the knitting
//! recurrence for radical layers.
//!
//! Morphisms of the mesh category are linear combinations of paths modulo the
//! ideal generated by the mesh relations
//!
//! ```text
//!     sum_i (m_i -> v) ∘ (tau v -> m_i) = 0
//! ```
//!
//! taken with all coefficients `+1`. Relations are homogeneous in path length,
//! so each Hom space is graded by length and the grading is the radical
//! filtration. None of the quivers here has multiple arrows, so a path is
//! identified with its vertex sequence.
//!
//! Every enumerating operation takes a window radius. Source and target must
//! lie in the caller's window; intermediate vertices may use an enlarged window
//! of `radius + length + 2`, and anything beyond that is a [`Error::Window`]
//! rather than a silent truncation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{quotient_dim, span_dim, FieldSpec, Scalar, Subspace, Vector};
use crate::quiver::{Arrow, PathLength, QuiverKind, TranslationQuiver, Vertex};

/// A path as its vertex sequence, source first.
pub type Path = Vec<Vertex>;

/// Enlarged radius used for intermediate vertices.
pub fn enlarged_radius(radius: u32, length: u32) -> u32 {
    radius + length + 2
}

fn require_in_window(q: &TranslationQuiver, v: &Vertex, radius: u32) -> Result<()> {
    q.check_vertex(v)?;
    if q.in_window(v, radius) {
        Ok(())
    } else {
        Err(Error::Window { vertex: *v, radius })
    }
}

/// A formal linear combination of parallel paths of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathVector {
    source: Vertex,
    target: Vertex,
    terms: Vec<(Vec<Arrow>, Scalar)>,
}

impl PathVector {
    pub fn new(source: Vertex, target: Vertex, terms: Vec<(Vec<Arrow>, Scalar)>) -> Result<Self> {
        let mut len = None;
        for (path, _) in &terms {
            let mut at = source;
            for a in path {
                if a.source != at {
                    return Err(Error::Consistency(format!(
                        "arrow {} -> {} does not continue a path at {at}",
                        a.source, a.target
                    )));
                }
                at = a.target;
            }
            if at != target {
                return Err(Error::Consistency(format!("path ends at {at}, expected {target}")));
            }
            match len {
                None => len = Some(path.len()),
                Some(l) if l != path.len() => {
                    return Err(Error::Consistency(format!(
                        "mixed path lengths {l} and {} from {source} to {target}",
                        path.len()
                    )))
                }
                _ => {}
            }
        }
        Ok(PathVector { source, target, terms })
    }

    /// The single path through the given vertices, with coefficient one.
    pub fn from_vertices(q: &TranslationQuiver, vertices: &[Vertex], field: FieldSpec) -> Result<Self> {
        let (first, last) = match (vertices.first(), vertices.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::Consistency("empty vertex path".into())),
        };
        let mut arrows = Vec::new();
        for w in vertices.windows(2) {
            let a = q.arrow(&w[0], &w[1]).ok_or_else(|| {
                Error::Consistency(format!("no arrow {} -> {}", w[0], w[1]))
            })?;
            arrows.push(a);
        }
        PathVector::new(first, last, vec![(arrows, field.one())])
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn terms(&self) -> &[(Vec<Arrow>, Scalar)] {
        &self.terms
    }

    pub fn grade(&self) -> Option<usize> {
        self.terms.first().map(|(p, _)| p.len())
    }

    fn vertex_paths(&self) -> Vec<(Path, Scalar)> {
        self.terms
            .iter()
            .map(|(arrows, c)| {
                let mut p = vec![self.source];
                p.extend(arrows.iter().map(|a| a.target));
                (p, c.clone())
            })
            .collect()
    }
}

/// Graded piece of a mesh-category Hom space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpace {
    pub source: Vertex,
    pub target: Vertex,
    pub grade: u32,
    pub basis_dim: usize,
    pub relation_rank: usize,
    pub dim: usize,
}

/// All paths of one length between two vertices, with the mesh relations among them.
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub source: Vertex,
    pub target: Vertex,
    pub grade: u32,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Each relation is a set of path indices whose sum vanishes.
    relations: Vec<Vec<usize>>,
}

impl PathSpace {
    pub fn build(q: &TranslationQuiver, u: &Vertex, m: &Vertex, grade: u32, radius: u32) -> Result<Self> {
        require_in_window(q, u, radius)?;
        require_in_window(q, m, radius)?;
        let outer = enlarged_radius(radius, grade);
        let mut paths = Vec::new();
        if q.path_length(u, m).admits(grade) {
            let mut stack = vec![*u];
            enumerate(q, m, grade, outer, &mut stack, &mut paths)?;
        }
        let index: HashMap<Path, usize> =
            paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut seen = BTreeSet::new();
        for p in &paths {
            for t in 0..p.len().saturating_sub(2) {
                let end = p[t + 2];
                if p[t] != q.tau(&end) {
                    continue;
                }
                let mesh = q.mesh(&end);
                if !mesh.middles.contains(&p[t + 1]) {
                    continue;
                }
                let mut rel = Vec::with_capacity(mesh.middles.len());
                for mid in &mesh.middles {
                    let mut other = p.clone();
                    other[t + 1] = *mid;
                    if other.len() != p.len() {
                        return Err(Error::Consistency("inhomogeneous mesh relation".into()));
                    }
                    let idx = index.get(&other).ok_or_else(|| {
                        Error::Consistency(format!(
                            "relation term through {mid} is not a path {u} -> {m} of length {grade}"
                        ))
                    })?;
                    rel.push(*idx);
                }
                rel.sort_unstable();
                seen.insert((t, rel));
            }
        }
        let relations = seen.into_iter().map(|(_, r)| r).collect::<BTreeSet<_>>().into_iter().collect();
        Ok(PathSpace { source: *u, target: *m, grade, paths, index, relations })
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn index_of(&self, p: &[Vertex]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn unit(&self, field: FieldSpec, i: usize) -> Vector {
        let mut v = vec![field.zero(); self.paths.len()];
        v[i] = field.one();
        v
    }

    pub fn relation_vectors(&self, field: FieldSpec) -> Vec<Vector> {
        self.relations
            .iter()
            .map(|rel| {
                let mut v = vec![field.zero(); self.paths.len()];
                for &i in rel {
                    v[i] = &v[i] + &field.one();
                }
                v
            })
            .collect()
    }

    pub fn relation_span(&self, field: FieldSpec) -> Result<Subspace> {
        Subspace::new(field, self.paths.len(), &self.relation_vectors(field))
    }

    /// Coordinates of a path vector in this path basis.
    pub fn coordinates(&self, field: FieldSpec, pv: &PathVector) -> Result<Vector> {
        if pv.source != self.source || pv.target != self.target {
            return Err(Error::Consistency("path vector is not parallel to this path space".into()));
        }
        let mut v = vec![field.zero(); self.paths.len()];
        for (p, c) in pv.vertex_paths() {
            let i = self.index_of(&p).ok_or_else(|| {
                Error::Consistency(format!("path of length {} not in grade {}", p.len() - 1, self.grade))
            })?;
            v[i] = &v[i] + &c;
        }
        Ok(v)
    }

    /// Whether every relation has at most two terms, so that
    /// [`TwoTermReducer`] applies.
    pub fn two_term(&self) -> bool {
        self.relations.iter().all(|r| r.len() <= 2)
    }

    /// Dense elimination up to [`DENSE_PATH_LIMIT`] paths, the two-term
    /// reducer beyond.
    pub fn hom_space(&self, field: FieldSpec) -> Result<HomSpace> {
        let relation_rank = if self.paths.len() > DENSE_PATH_LIMIT && self.two_term() {
            self.paths.len() - TwoTermReducer::new(self, field)?.quotient_dim()
        } else {
            span_dim(&self.relation_vectors(field))?
        };
        Ok(self.with_rank(relation_rank))
    }

    /// Dense elimination regardless of size.
    pub fn hom_space_dense(&self, field: FieldSpec) -> Result<HomSpace> {
        Ok(self.with_rank(span_dim(&self.relation_vectors(field))?))
    }

    fn with_rank(&self, relation_rank: usize) -> HomSpace {
        HomSpace {
            source: self.source,
            target: self.target,
            grade: self.grade,
            basis_dim: self.paths.len(),
            relation_rank,
            dim: self.paths.len() - relation_rank,
        }
    }
}

fn enumerate(
    q: &TranslationQuiver,
    m: &Vertex,
    remaining: u32,
    outer: u32,
    stack: &mut Path,
    out: &mut Vec<Path>,
) -> Result<()> {
    let here = *stack.last().expect("nonempty path");
    if remaining == 0 {
        if here == *m {
            out.push(stack.clone());
        }
        return Ok(());
    }
    for a in q.arrows_out(&here) {
        if !q.path_length(&a.target, m).admits(remaining - 1) {
            continue;
        }
        if !q.in_window(&a.target, outer) {
            return Err(Error::Window { vertex: a.target, radius: outer });
        }
        stack.push(a.target);
        enumerate(q, m, remaining - 1, outer, stack, out)?;
        stack.pop();
    }
    Ok(())
}

/// Grade of `Hom(u, m)` to use when the caller gives none.
fn resolve_grade(q: &TranslationQuiver, u: &Vertex, m: &Vertex, grade: Option<u32>) -> Result<Option<u32>> {
    match (grade, q.path_length(u, m)) {
        (Some(g), _) => Ok(Some(g)),
        (None, PathLength::Forced(l)) => Ok(Some(l)),
        (None, PathLength::Unreachable) => Ok(None),
        (None, PathLength::Flexible { .. }) => Err(Error::Consistency(format!(
            "paths {u} -> {m} have mixed lengths; a grade must be given"
        ))),
    }
}

/// Dimension of the graded piece of the mesh-category Hom space `Hom(u, m)`.
///
/// With `grade = None` the forced path length is used; the tube needs an
/// explicit grade since its paths between a fixed pair have several lengths.
pub fn hom_dim_mesh(
    q: &TranslationQuiver,
    u: &Vertex,
    m: &Vertex,
    grade: Option<u32>,
    window: u32,
    field: FieldSpec,
) -> Result<HomSpace> {
    require_in_window(q, u, window)?;
    require_in_window(q, m, window)?;
    match resolve_grade(q, u, m, grade)? {
        Some(g) => PathSpace::build(q, u, m, g, window)?.hom_space(field),
        None => Ok(HomSpace { source: *u, target: *m, grade: 0, basis_dim: 0, relation_rank: 0, dim: 0 }),
    }
}

/// Reduction modulo a span of relations with at most two terms, each with
/// coefficient `+1`: a union-find with parities. Two-term relations `e_a + e_b`
/// identify `e_a = -e_b`; one-term relations kill a class.
#[derive(Clone, Debug)]
pub struct TwoTermReducer {
    parent: Vec<usize>,
    flip: Vec<bool>,
    zero: Vec<bool>,
    char2: bool,
}

impl TwoTermReducer {
    pub fn new(space: &PathSpace, field: FieldSpec) -> Result<Self> {
        let n = space.paths.len();
        let mut r = TwoTermReducer {
            parent: (0..n).collect(),
            flip: vec![false; n],
            zero: vec![false; n],
            char2: field.characteristic() == 2,
        };
        for rel in &space.relations {
            match rel.as_slice() {
                [a] => {
                    let (ra, _) = r.find(*a);
                    r.zero[ra] = true;
                }
                [a, b] => r.union(*a, *b),
                other => {
                    return Err(Error::Unsupported(format!(
                        "relation with {} terms needs dense reduction",
                        other.len()
                    )))
                }
            }
        }
        Ok(r)
    }

    fn find(&mut self, a: usize) -> (usize, bool) {
        let p = self.parent[a];
        if p == a {
            return (a, false);
        }
        let (root, f) = self.find(p);
        self.parent[a] = root;
        self.flip[a] ^= f;
        (root, self.flip[a])
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            // e_a = -e_b must hold; a conflicting parity gives 2 e_a = 0
            if fa == fb && !self.char2 {
                self.zero[ra] = true;
            }
            return;
        }
        self.parent[rb] = ra;
        self.flip[rb] = !(fa ^ fb);
        self.zero[ra] |= self.zero[rb];
    }

    /// Whether `e_a - sign * e_b` lies in the relation span.
    pub fn differs_by(&mut self, a: usize, b: usize, sign: i32) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        let (za, zb) = (self.zero[ra], self.zero[rb]);
        if za || zb {
            return za && zb;
        }
        if ra != rb {
            return false;
        }
        if self.char2 {
            return true;
        }
        let rel = if fa == fb { 1 } else { -1 };
        rel == sign
    }

    /// Adds the one-term relation `e_a = 0`.
    pub fn kill(&mut self, a: usize) {
        let (ra, _) = self.find(a);
        self.zero[ra] = true;
    }

    pub fn is_zero(&mut self, a: usize) -> bool {
        let (ra, _) = self.find(a);
        self.zero[ra]
    }

    /// Dimension of the quotient of the path space by the relation span.
    pub fn quotient_dim(&mut self) -> usize {
        let n = self.parent.len();
        let mut roots = BTreeSet::new();
        for a in 0..n {
            let (r, _) = self.find(a);
            if !self.zero[r] {
                roots.insert(r);
            }
        }
        roots.len()
    }
}

/// Multiplicities of simple functors `s^V` in the radical layers of `Hom(-, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerTable {
    pub target: Vertex,
    /// `(k, V) -> multiplicity`; zero entries are omitted.
    pub layers: BTreeMap<(u32, Vertex), i64>,
    pub max_layer: u32,
    /// Last layer reported; equals `max_layer` unless the recurrence left its
    /// validity range.
    pub valid_through: u32,
}

impl LayerTable {
    pub fn new(target: Vertex, max_layer: u32) -> Self {
        LayerTable { target, layers: BTreeMap::new(), max_layer, valid_through: max_layer }
    }

    pub fn add(&mut self, k: u32, v: Vertex, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.layers.entry((k, v)).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.layers.remove(&(k, v));
        }
    }

    pub fn multiplicity(&self, k: u32, v: &Vertex) -> i64 {
        self.layers.get(&(k, *v)).copied().unwrap_or(0)
    }

    pub fn layer(&self, k: u32) -> BTreeMap<Vertex, i64> {
        self.layers
            .iter()
            .filter(|((l, _), _)| *l == k)
            .map(|((_, v), m)| (*v, *m))
            .collect()
    }

    /// Sum of multiplicities over all layers at `v`.
    pub fn total_at(&self, v: &Vertex) -> i64 {
        self.layers.iter().filter(|((_, w), _)| w == v).map(|(_, m)| m).sum()
    }

    /// Vertices carrying a nonzero multiplicity in some layer.
    pub fn factors(&self) -> BTreeSet<Vertex> {
        self.layers.keys().map(|(_, v)| *v).collect()
    }

    pub fn factor_count(&self) -> i64 {
        self.layers.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.valid_through < self.max_layer
    }
}

/// Memoized knitting recurrence on one quiver. A context is single-threaded;
/// separate contexts are independent.
pub struct Knitter<'q> {
    quiver: &'q TranslationQuiver,
    radius: u32,
    memo: HashMap<(u32, Vertex), BTreeMap<Vertex, i64>>,
}

impl<'q> Knitter<'q> {
    pub fn new(quiver: &'q TranslationQuiver, radius: u32) -> Self {
        Knitter { quiver, radius, memo: HashMap::new() }
    }

    /// Signed recurrence value of layer `k` of `Hom(-, v)`:
    /// `L_0 = s^v`, `L_k = sum_i L_{k-1}(m_i) - L_{k-2}(tau v)`.
    pub fn raw_layer(&mut self, k: u32, v: &Vertex) -> Result<BTreeMap<Vertex, i64>> {
        if let Some(hit) = self.memo.get(&(k, *v)) {
            return Ok(hit.clone());
        }
        if !self.quiver.in_window(v, self.radius) {
            return Err(Error::Window { vertex: *v, radius: self.radius });
        }
        let mut acc: BTreeMap<Vertex, i64> = BTreeMap::new();
        if k == 0 {
            acc.insert(*v, 1);
        } else {
            let mesh = self.quiver.mesh(v);
            for mid in &mesh.middles {
                for (w, m) in self.raw_layer(k - 1, mid)? {
                    *acc.entry(w).or_insert(0) += m;
                }
            }
            if k >= 2 {
                for (w, m) in self.raw_layer(k - 2, &mesh.left)? {
                    *acc.entry(w).or_insert(0) -= m;
                }
            }
            acc.retain(|_, m| *m != 0);
        }
        self.memo.insert((k, *v), acc.clone());
        Ok(acc)
    }
}

/// Radical layers of `Hom(-, m)` by the knitting recurrence, up to `k_max` or
/// the first layer where a multiplicity would go negative.
pub fn knit_layers(q: &TranslationQuiver, m: &Vertex, k_max: u32, window: u32) -> Result<LayerTable> {
    require_in_window(q, m, window)?;
    let mut knitter = Knitter::new(q, enlarged_radius(window, k_max));
    let mut table = LayerTable::new(*m, k_max);
    for k in 0..=k_max {
        let layer = knitter.raw_layer(k, m)?;
        if layer.values().any(|&x| x < 0) {
            table.valid_through = k - 1;
            break;
        }
        for (v, mult) in layer {
            table.add(k, v, mult);
        }
    }
    Ok(table)
}

/// Sign relating one path to a reference path of its flip class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSign {
    pub path: Vec<Vertex>,
    /// `+1` or `-1` relative to the class root; `0` when the path composite is zero.
    pub sign: i32,
    pub flips: u32,
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacentPair {
    pub a: usize,
    pub b: usize,
    /// Position of the flipped middle vertex.
    pub position: usize,
    pub sign: i32,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignReport {
    pub source: Vertex,
    pub target: Vertex,
    pub grade: u32,
    pub paths: Vec<PathSign>,
    pub adjacent_pairs: Vec<AdjacentPair>,
    /// Number of flip classes; 1 whenever every mesh on the way has two middles.
    pub classes: usize,
    pub counterexamples: Vec<String>,
    /// Whether membership was decided by dense elimination (as opposed to the
    /// two-term reducer).
    pub dense: bool,
}

impl SignReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Path counts up to which dense elimination is used even when every relation
/// has at most two terms; above it the two-term reducer takes over, which is
/// exact for the unit-coefficient meshes of the builders. Sign checks in dense
/// mode also compare every pair of paths.
pub const DENSE_PATH_LIMIT: usize = 35;

enum Membership {
    Dense(Subspace),
    TwoTerm(TwoTermReducer),
}

impl Membership {
    fn differs_by(&mut self, space: &PathSpace, field: FieldSpec, a: usize, b: usize, sign: i32) -> bool {
        match self {
            Membership::Dense(sub) => {
                let mut v = space.unit(field, a);
                let s = field.from_i64(sign as i64);
                v[b] = &v[b] - &s;
                sub.contains(&v)
            }
            Membership::TwoTerm(r) => r.differs_by(a, b, sign),
        }
    }

    fn is_zero(&mut self, space: &PathSpace, field: FieldSpec, a: usize) -> bool {
        match self {
            Membership::Dense(sub) => sub.contains(&space.unit(field, a)),
            Membership::TwoTerm(r) => r.is_zero(a),
        }
    }
}

/// Checks that parallel paths `u -> m` agree up to the sign `(-1)^(mesh flips)`.
///
/// Adjacent paths differ at one interior vertex inside a two-middle mesh; each
/// such pair is checked for `p + q ≡ 0`, signs are propagated through the flip
/// graph, and every path is then reduced against its class root.
pub fn path_sign_check(
    q: &TranslationQuiver,
    u: &Vertex,
    m: &Vertex,
    grade: Option<u32>,
    window: u32,
    field: FieldSpec,
) -> Result<SignReport> {
    require_in_window(q, u, window)?;
    require_in_window(q, m, window)?;
    let grade = match resolve_grade(q, u, m, grade)? {
        Some(g) => g,
        None => {
            return Ok(SignReport {
                source: *u,
                target: *m,
                grade: 0,
                paths: Vec::new(),
                adjacent_pairs: Vec::new(),
                classes: 0,
                counterexamples: Vec::new(),
                dense: false,
            })
        }
    };
    let space = PathSpace::build(q, u, m, grade, window)?;
    let n = space.paths.len();
    let dense = n <= DENSE_PATH_LIMIT || !space.two_term();
    let mut membership = if dense {
        Membership::Dense(space.relation_span(field)?)
    } else {
        Membership::TwoTerm(TwoTermReducer::new(&space, field)?)
    };

    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut pairs = Vec::new();
    let mut counterexamples = Vec::new();
    for rel in &space.relations {
        if rel.len() != 2 {
            continue;
        }
        let (a, b) = (rel[0], rel[1]);
        let position = (0..space.paths[a].len())
            .find(|&t| space.paths[a][t] != space.paths[b][t])
            .expect("distinct paths in a relation");
        let verified = membership.differs_by(&space, field, a, b, -1);
        if !verified {
            counterexamples.push(format!(
                "adjacent paths {} and {} are not negatives of each other",
                fmt_path(&space.paths[a]),
                fmt_path(&space.paths[b])
            ));
        }
        adjacency[a].push((b, position));
        adjacency[b].push((a, position));
        pairs.push(AdjacentPair { a, b, position, sign: -1, verified });
    }

    // breadth-first sign propagation, one class per flip-connected component
    let mut sign = vec![0i32; n];
    let mut flips = vec![0u32; n];
    let mut class = vec![usize::MAX; n];
    let mut classes = 0;
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = classes;
        sign[start] = 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(b, _) in &adjacency[a] {
                if class[b] == usize::MAX {
                    class[b] = classes;
                    sign[b] = -sign[a];
                    flips[b] = flips[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        classes += 1;
    }

    let mut roots = vec![usize::MAX; classes];
    for a in 0..n {
        if roots[class[a]] == usize::MAX {
            roots[class[a]] = a;
        }
    }
    let mut path_signs = Vec::with_capacity(n);
    for a in 0..n {
        let root = roots[class[a]];
        let zero = membership.is_zero(&space, field, a);
        let predicted = sign[a] * sign[root];
        if !membership.differs_by(&space, field, a, root, predicted) {
            counterexamples.push(format!(
                "{} is not {:+} times {}",
                fmt_path(&space.paths[a]),
                predicted,
                fmt_path(&space.paths[root])
            ));
        }
        path_signs.push(PathSign {
            path: space.paths[a].clone(),
            sign: if zero { 0 } else { sign[a] },
            flips: flips[a],
            class: class[a],
        });
    }
    if dense {
        // all pairs, not only against the root
        for a in 0..n {
            for b in (a + 1)..n {
                if class[a] != class[b] {
                    continue;
                }
                if !membership.differs_by(&space, field, a, b, sign[a] * sign[b]) {
                    counterexamples.push(format!(
                        "{} is not {:+} times {}",
                        fmt_path(&space.paths[a]),
                        sign[a] * sign[b],
                        fmt_path(&space.paths[b])
                    ));
                }
            }
        }
    }
    Ok(SignReport {
        source: *u,
        target: *m,
        grade,
        paths: path_signs,
        adjacent_pairs: pairs,
        classes,
        counterexamples,
        dense,
    })
}

pub fn fmt_path(p: &[Vertex]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" -> ")
}

/// Corners of the diamond `tau^n m -> m + (2n,0) ⊕ m + (0,2n) -> m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diamond {
    pub apex: Vertex,
    pub first_shoulder: Vertex,
    pub second_shoulder: Vertex,
    pub bottom: Vertex,
}

pub fn diamond(q: &TranslationQuiver, m: &Vertex, n: u32) -> Result<Diamond> {
    if q.kind() != QuiverKind::Dihedral {
        return Err(Error::KindMismatch { expected: "dihedral".into(), got: q.kind().to_string() });
    }
    if n == 0 {
        return Err(Error::Precondition("diamond size n must be at least 1".into()));
    }
    q.check_vertex(m)?;
    let s = 2 * n as i64;
    Ok(Diamond {
        apex: *m,
        first_shoulder: q.tensor_translate(m, (s, 0))?,
        second_shoulder: q.tensor_translate(m, (0, s))?,
        bottom: q.tensor_translate(m, (s, s))?,
    })
}

/// The straight path from `from` to `to` (one coordinate changes).
fn straight_path(q: &TranslationQuiver, from: &Vertex, to: &Vertex) -> Result<Path> {
    let mut p = vec![*from];
    let mut at = *from;
    while at != *to {
        let next = q
            .arrows_out(&at)
            .into_iter()
            .map(|a| a.target)
            .find(|t| q.path_length(t, to) != PathLength::Unreachable)
            .ok_or_else(|| Error::Consistency(format!("no path {from} -> {to}")))?;
        p.push(next);
        at = next;
    }
    Ok(p)
}

/// Layer table of the cokernel of
/// `Hom(-, m+(2n,0) ⊕ m+(0,2n)) -> Hom(-, m)` in the mesh category.
///
/// For every window vertex `V` of the component, the cokernel dimension is the
/// quotient of the paths `V -> m` by the mesh relations together with all
/// composites through either shoulder; it is recorded in layer
/// `length(V -> m)`.
pub fn diamond_cokernel(
    q: &TranslationQuiver,
    m: &Vertex,
    n: u32,
    window: u32,
    field: FieldSpec,
) -> Result<LayerTable> {
    let d = diamond(q, m, n)?;
    for corner in [d.apex, d.first_shoulder, d.second_shoulder, d.bottom] {
        require_in_window(q, &corner, window)?;
    }
    let first_leg = PathVector::from_vertices(q, &straight_path(q, &d.first_shoulder, m)?, field)?;
    let second_leg = PathVector::from_vertices(q, &straight_path(q, &d.second_shoulder, m)?, field)?;

    let mut max_layer = 0;
    let mut table = LayerTable::new(*m, 0);
    for v in q.component_window(m, window) {
        let PathLength::Forced(grade) = q.path_length(&v, m) else {
            continue;
        };
        let space = PathSpace::build(q, &v, m, grade, window)?;
        let fast = space.paths().len() > DENSE_PATH_LIMIT && space.two_term();
        let mut sub = if fast { Vec::new() } else { space.relation_vectors(field) };
        let mut killed = Vec::new();
        for leg in [&first_leg, &second_leg] {
            let Some(leg_len) = leg.grade() else { continue };
            let leg_len = leg_len as u32;
            if grade < leg_len {
                continue;
            }
            let PathLength::Forced(pre_len) = q.path_length(&v, &leg.source()) else {
                continue;
            };
            let pre = PathSpace::build(q, &v, &leg.source(), pre_len, window)?;
            for p in pre.paths() {
                let composite = compose(q, p, leg, field)?;
                if fast {
                    // legs are single paths, so composites are single paths
                    for (path, _) in composite.vertex_paths() {
                        killed.push(space.index_of(&path).ok_or_else(|| {
                            Error::Consistency(format!("composite {} is not a path", fmt_path(&path)))
                        })?);
                    }
                } else {
                    sub.push(space.coordinates(field, &composite)?);
                }
            }
        }
        let dim = if fast {
            let mut reducer = TwoTermReducer::new(&space, field)?;
            for k in killed {
                reducer.kill(k);
            }
            reducer.quotient_dim()
        } else {
            let all: Vec<Vector> = (0..space.paths().len()).map(|i| space.unit(field, i)).collect();
            quotient_dim(&all, &sub)?
        };
        if dim > 0 {
            table.add(grade, v, dim as i64);
            max_layer = max_layer.max(grade);
        }
    }
    table.max_layer = max_layer;
    table.valid_through = max_layer;
    Ok(table)
}

/// Composite of a path `p` (ending at `leg.source()`) followed by `leg`.
fn compose(q: &TranslationQuiver, p: &[Vertex], leg: &PathVector, field: FieldSpec) -> Result<PathVector> {
    let head = PathVector::from_vertices(q, p, field)?;
    let (head_arrows, head_c) = head.terms[0].clone();
    let terms = leg
        .terms
        .iter()
        .map(|(arrows, c)| {
            let mut all = head_arrows.clone();
            all.extend(arrows.iter().copied());
            (all, &head_c * c)
        })
        .collect();
    PathVector::new(head.source, leg.target, terms)
}

/// Result of checking rim composites on `ZA_inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RimCheck {
    pub rim_vertex: Vertex,
    /// `(source, target, grade, dim)` for every rim-to-rim pair examined.
    pub composites: Vec<(Vertex, Vertex, u32, usize)>,
    pub all_zero: bool,
}

fn require_za(q: &TranslationQuiver) -> Result<()> {
    if q.kind() != QuiverKind::ZaInf {
        return Err(Error::KindMismatch { expected: "za_inf".into(), got: q.kind().to_string() });
    }
    Ok(())
}

/// Every positive-length composite between rim vertices through `rim_vertex`
/// vanishes in the mesh category: consecutive rim steps compose to zero.
pub fn rim_obstruction_check(
    q: &TranslationQuiver,
    rim_vertex: &Vertex,
    window: u32,
    field: FieldSpec,
) -> Result<RimCheck> {
    require_za(q)?;
    let Vertex::Za { level: 1, pos, copy } = *rim_vertex else {
        return Err(Error::Precondition(format!("{rim_vertex} is not on the rim")));
    };
    require_in_window(q, rim_vertex, window)?;
    let r = window as i64;
    let mut composites = Vec::new();
    for other in -r..=r {
        if other == pos {
            continue;
        }
        let w = Vertex::Za { level: 1, pos: other, copy };
        // paths run from larger to smaller positions
        let (src, dst) = if other > pos { (w, *rim_vertex) } else { (*rim_vertex, w) };
        let hom = hom_dim_mesh(q, &src, &dst, None, window, field)?;
        if hom.basis_dim > 0 {
            composites.push((src, dst, hom.grade, hom.dim));
        }
    }
    let all_zero = composites.iter().all(|c| c.3 == 0);
    Ok(RimCheck { rim_vertex: *rim_vertex, composites, all_zero })
}
