//! Graded-center elements on quiver components, modeled by the composition
//! factors of the image functors `Im Hom(-, α_v)`.
//!
//! Degrees follow `Σ = Ω^{-1}`: an element of degree `r` has components
//! `α_v : v -> Ω^r v = Σ^{-r} v`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};
use crate::mesh::{diamond_cokernel, hom_dim_mesh, LayerTable, PathSpace};
use crate::quiver::{PathLength, QuiverKind, TranslationQuiver, Vertex};

#[derive(Clone, Debug, PartialEq)]
pub enum ElementKind {
    /// Almost vanishing classes on one shift orbit, scaled per vertex.
    SingleOrbit { anchor: Vertex, scalars: BTreeMap<Vertex, Scalar> },
    /// The element built from the diamond sequence of size `n`, supported on
    /// one component.
    Diamond { n: u32, component: String },
    Sum(Vec<GradedCenterElement>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedCenterElement {
    degree: i64,
    kind: ElementKind,
    quiver: TranslationQuiver,
    /// Diamond elements: base vertex and its cokernel table.
    base: Option<(Vertex, LayerTable)>,
}

fn translate_table(q: &TranslationQuiver, t: &LayerTable, target: &Vertex) -> Result<LayerTable> {
    let (bi, bj) = t.target.coords();
    let (ti, tj) = target.coords();
    let by = (ti - bi, tj - bj);
    let mut out = LayerTable::new(*target, t.max_layer);
    for ((k, v), m) in &t.layers {
        out.add(*k, q.tensor_translate(v, by)?, *m);
    }
    out.valid_through = t.valid_through;
    Ok(out)
}

impl GradedCenterElement {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn kind(&self) -> &ElementKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ElementKind::SingleOrbit { .. } => "single_orbit",
            ElementKind::Diamond { .. } => "diamond",
            ElementKind::Sum(_) => "sum",
        }
    }

    pub fn quiver(&self) -> &TranslationQuiver {
        &self.quiver
    }

    /// The zero element of a given degree (an empty sum).
    pub fn zero(q: &TranslationQuiver, degree: i64) -> Self {
        GradedCenterElement { degree, kind: ElementKind::Sum(vec![]), quiver: q.clone(), base: None }
    }

    /// Sum of elements of equal degree with pairwise disjoint supports.
    pub fn sum(q: &TranslationQuiver, parts: Vec<GradedCenterElement>) -> Result<Self> {
        let degree = parts.first().map_or(0, |p| p.degree);
        if let Some(p) = parts.iter().find(|p| p.degree != degree) {
            return Err(Error::Degree(format!("summands of degrees {degree} and {}", p.degree)));
        }
        if parts.iter().any(|p| p.quiver != *q) {
            return Err(Error::Consistency("summands live on different quivers".into()));
        }
        Ok(GradedCenterElement { degree, kind: ElementKind::Sum(parts), quiver: q.clone(), base: None })
    }

    /// Replaces the scalar at one orbit vertex; scalars must be nonzero.
    pub fn with_scalar(mut self, v: Vertex, s: Scalar) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::Precondition("single-orbit scalars must be nonzero".into()));
        }
        match &mut self.kind {
            ElementKind::SingleOrbit { anchor, scalars } if self.quiver.same_orbit(anchor, &v) => {
                scalars.insert(v, s);
                Ok(self)
            }
            _ => Err(Error::Precondition(format!("{v} is not on the orbit of this element"))),
        }
    }

    /// Scalar of the component at `v` (zero off the support of a single-orbit element).
    pub fn scalar_at(&self, v: &Vertex, field: FieldSpec) -> Option<Scalar> {
        match &self.kind {
            ElementKind::SingleOrbit { anchor, scalars } if self.quiver.same_orbit(anchor, v) => {
                Some(scalars.get(v).cloned().unwrap_or_else(|| field.one()))
            }
            ElementKind::SingleOrbit { .. } => Some(field.zero()),
            _ => None,
        }
    }

    /// Composition factors of the image of `Hom(-, α_v)`.
    pub fn image_table(&self, v: &Vertex) -> Result<LayerTable> {
        self.quiver.check_vertex(v)?;
        match &self.kind {
            ElementKind::SingleOrbit { anchor, .. } => {
                let mut t = LayerTable::new(*v, 0);
                if self.quiver.same_orbit(anchor, v) {
                    t.add(0, *v, 1);
                }
                Ok(t)
            }
            ElementKind::Diamond { component, .. } => {
                if v.component_id() != *component {
                    return Ok(LayerTable::new(*v, 0));
                }
                let (_, base) = self.base.as_ref().expect("diamond elements carry a base table");
                translate_table(&self.quiver, base, v)
            }
            ElementKind::Sum(parts) => {
                let mut found: Option<LayerTable> = None;
                for p in parts {
                    let t = p.image_table(v)?;
                    if t.is_empty() {
                        continue;
                    }
                    if found.is_some() {
                        return Err(Error::Unsupported(format!("summands overlap at {v}")));
                    }
                    found = Some(t);
                }
                Ok(found.unwrap_or_else(|| LayerTable::new(*v, 0)))
            }
        }
    }

    pub fn is_supported_at(&self, v: &Vertex) -> Result<bool> {
        Ok(!self.image_table(v)?.is_empty())
    }
}

/// Element with almost vanishing components on the shift orbit of `v`.
///
/// The orbit must avoid the arrow-neighbours of `v` (checked on the window),
/// and the degree must send each orbit vertex `u` to `Σ^{-r} u = S(u)`.
pub fn single_orbit_element(q: &TranslationQuiver, v: &Vertex, r: i64, window: u32) -> Result<GradedCenterElement> {
    q.check_vertex(v)?;
    let mut orbit = q.orbit_in_window(v, window);
    if !orbit.contains(v) {
        orbit.push(*v);
    }
    let neighbours: BTreeSet<Vertex> = q
        .arrows_out(v)
        .into_iter()
        .map(|a| a.target)
        .chain(q.arrows_in(v).into_iter().map(|a| a.source))
        .collect();
    if let Some(bad) = orbit.iter().find(|u| neighbours.contains(u)) {
        return Err(Error::Precondition(format!(
            "{bad} lies on the shift orbit of {v} and is joined to it by an arrow"
        )));
    }
    for u in &orbit {
        let codomain = q.sigma_pow(u, -r);
        if codomain != q.serre(u) {
            return Err(Error::Degree(format!(
                "degree {r} sends {u} to {codomain}, but the Serre image is {}",
                q.serre(u)
            )));
        }
    }
    Ok(GradedCenterElement {
        degree: r,
        kind: ElementKind::SingleOrbit { anchor: *v, scalars: BTreeMap::new() },
        quiver: q.clone(),
        base: None,
    })
}

/// The element of degree `2n - 1` whose component at `m` is the connecting
/// map of the diamond sequence, supported on the even component.
pub fn mu_element(q: &TranslationQuiver, n: u32) -> Result<GradedCenterElement> {
    mu_element_on(q, n, "dihedral:even", FieldSpec::Rationals)
}

/// [`mu_element`] on a chosen dihedral component (`dihedral:even` or `dihedral:odd`).
pub fn mu_element_on(q: &TranslationQuiver, n: u32, component: &str, field: FieldSpec) -> Result<GradedCenterElement> {
    if q.kind() != QuiverKind::Dihedral {
        return Err(Error::KindMismatch { expected: "dihedral".into(), got: q.kind().to_string() });
    }
    if n == 0 {
        return Err(Error::Precondition("mu_element needs n >= 1".into()));
    }
    let base = match component {
        "dihedral:even" => Vertex::dihedral(0, 0)?,
        "dihedral:odd" => Vertex::dihedral(1, 1)?,
        other => return Err(Error::InvalidVertex(format!("unknown dihedral component {other:?}"))),
    };
    let table = diamond_cokernel(q, &base, n, n + 1, field)?;
    Ok(GradedCenterElement {
        degree: 2 * n as i64 - 1,
        kind: ElementKind::Diamond { n, component: component.to_string() },
        quiver: q.clone(),
        base: Some((base, table)),
    })
}

/// Supports read off the image tables on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub degree: i64,
    pub kind: String,
    pub window: u32,
    pub element_support: BTreeSet<Vertex>,
    pub per_vertex_hom_support: BTreeMap<Vertex, BTreeSet<Vertex>>,
    pub finite_flags: BTreeMap<Vertex, bool>,
}

impl SupportReport {
    pub fn max_hom_support(&self) -> usize {
        self.per_vertex_hom_support.values().map(BTreeSet::len).max().unwrap_or(0)
    }
}

pub fn support_report(e: &GradedCenterElement, window: u32) -> Result<SupportReport> {
    let q = &e.quiver;
    let mut report = SupportReport {
        degree: e.degree,
        kind: e.kind_name().to_string(),
        window,
        element_support: BTreeSet::new(),
        per_vertex_hom_support: BTreeMap::new(),
        finite_flags: BTreeMap::new(),
    };
    for v in q.window(window) {
        let t = e.image_table(&v)?;
        // image tables are finite maps by construction
        report.finite_flags.insert(v, true);
        if t.is_empty() {
            continue;
        }
        report.element_support.insert(v);
        report.per_vertex_hom_support.insert(v, t.factors());
    }
    Ok(report)
}

/// Hypotheses and conclusion of the support-propagation theorem on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub degree: i64,
    pub kind: String,
    pub window: u32,
    pub components: Vec<String>,
    /// `1_calabi_yau`, `2_tau_orbit`, `3_two_middles`, `4a_finite_support`,
    /// `4b_support_at_least_2`.
    pub hypotheses: BTreeMap<String, bool>,
    pub applicable: bool,
    /// The support contains every window vertex of each component it meets.
    pub conclusion: bool,
    pub note: Option<String>,
}

fn same_tau_orbit(a: &Vertex, b: &Vertex) -> bool {
    match (*a, *b) {
        (Vertex::Tube { .. }, Vertex::Tube { .. }) => a == b,
        (Vertex::Za { level: l1, copy: c1, .. }, Vertex::Za { level: l2, copy: c2, .. }) => l1 == l2 && c1 == c2,
        (Vertex::Dihedral { i: i1, j: j1 }, Vertex::Dihedral { i: i2, j: j2 }) => {
            i1 - i2 == j1 - j2 && (i1 - i2).rem_euclid(2) == 0
        }
        _ => false,
    }
}

pub fn check_propagation(q: &TranslationQuiver, e: &GradedCenterElement, window: u32) -> Result<PropagationReport> {
    let d = q.cy_degree() as i64;
    let r = e.degree;
    let all = q.window(window);
    let h1 = all.iter().all(|v| q.sigma_pow(v, d) == q.serre(v));

    let report = support_report(e, window)?;
    let mut components: Vec<String> =
        report.element_support.iter().map(Vertex::component_id).collect::<BTreeSet<_>>().into_iter().collect();
    let empty = components.is_empty();
    if empty {
        components = all.iter().map(Vertex::component_id).collect::<BTreeSet<_>>().into_iter().collect();
    }
    let in_scope: Vec<&Vertex> = all.iter().filter(|v| components.contains(&v.component_id())).collect();

    // α : Id -> Σ^{-r}; the theorem's exponent is -r
    let h2 = in_scope.iter().all(|u| same_tau_orbit(&q.sigma_pow(u, -r - d), u));
    let h3 = in_scope.iter().all(|u| q.mesh(u).middles.len() <= 2);
    let h4a = in_scope.iter().all(|u| report.finite_flags.get(u).copied().unwrap_or(false));
    let h4b = in_scope
        .iter()
        .any(|u| report.per_vertex_hom_support.get(u).map_or(0, BTreeSet::len) >= 2);
    let conclusion = !empty && in_scope.iter().all(|u| report.element_support.contains(u));

    let hypotheses: BTreeMap<String, bool> = [
        ("1_calabi_yau", h1),
        ("2_tau_orbit", h2),
        ("3_two_middles", h3),
        ("4a_finite_support", h4a),
        ("4b_support_at_least_2", h4b),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let applicable = hypotheses.values().all(|&b| b);
    let note = if !h4b {
        Some("every per-vertex hom support has size at most 1; the theorem does not apply".to_string())
    } else {
        None
    };
    Ok(PropagationReport {
        degree: r,
        kind: e.kind_name().to_string(),
        window,
        components,
        hypotheses,
        applicable,
        conclusion,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub degree: i64,
    pub window: u32,
    pub rim_vertices: usize,
    /// Distinct rim-to-rim Hom spaces examined (nonempty path sets).
    pub composites: usize,
    /// Every rim-to-rim composite of positive length vanishes.
    pub certified: bool,
    /// Window radius below 2: no rim composite fits, the result is vacuous.
    pub small_window: bool,
    pub witness: Option<String>,
}

/// Certifies on a `ZA_inf` window that no element of degree `r` can satisfy
/// the propagation hypotheses: every rim-to-rim composite of positive length,
/// in particular the one from `Σ^{-r-d} N_0` to `N_0`, is zero.
pub fn a_inf_obstruction(q: &TranslationQuiver, r: i64, window: u32, field: FieldSpec) -> Result<ObstructionReport> {
    if q.kind() != QuiverKind::ZaInf {
        return Err(Error::KindMismatch { expected: "za_inf".into(), got: q.kind().to_string() });
    }
    let d = q.cy_degree() as i64;
    let rim: Vec<Vertex> = q.window(window).into_iter().filter(|v| matches!(v, Vertex::Za { level: 1, .. })).collect();
    let mut homs: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    let mut hom = |src: &Vertex, dst: &Vertex| -> Result<Option<usize>> {
        if let Some(&d) = homs.get(&(*src, *dst)) {
            return Ok(Some(d));
        }
        let h = hom_dim_mesh(q, src, dst, None, window, field)?;
        if h.basis_dim == 0 {
            return Ok(None);
        }
        homs.insert((*src, *dst), h.dim);
        Ok(Some(h.dim))
    };
    let mut witness = None;
    for a in &rim {
        for b in &rim {
            // paths run from larger to smaller positions
            let (Vertex::Za { pos: pa, copy: ca, .. }, Vertex::Za { pos: pb, copy: cb, .. }) = (*a, *b) else { continue };
            if ca != cb || pa <= pb {
                continue;
            }
            if let Some(dim) = hom(a, b)? {
                if dim != 0 {
                    witness.get_or_insert_with(|| format!("composite {a} -> {b} has dimension {dim}"));
                }
            }
        }
        let shifted = q.sigma_pow(a, -r - d);
        if shifted != *a && q.in_window(&shifted, window) && hom(&shifted, a)?.is_some_and(|dim| dim != 0) {
            witness.get_or_insert_with(|| format!("{shifted} -> {a} is nonzero"));
        }
    }
    let composites = homs.len();
    Ok(ObstructionReport {
        degree: r,
        window,
        rim_vertices: rim.len(),
        composites,
        certified: witness.is_none(),
        small_window: window < 2,
        witness,
    })
}

/// Composition of `e` with a morphism between different components vanishes.
///
/// Such morphisms have no mesh-category representative (they lie in the
/// infinite radical), so the model assigns them zero composites. For diamond
/// elements the factorization criterion behind this is also checked: every
/// class into the component vertex from `2n - 1` mesh levels away factors
/// through the diamond shoulders, i.e. the cokernel vanishes there.
pub fn cross_component_vanishing(
    e: &GradedCenterElement,
    f_source: &Vertex,
    f_target: &Vertex,
    field: FieldSpec,
) -> Result<bool> {
    let q = &e.quiver;
    q.check_vertex(f_source)?;
    q.check_vertex(f_target)?;
    if f_source.same_component(f_target) {
        return Err(Error::Precondition(format!("{f_source} and {f_target} lie in the same component")));
    }
    match &e.kind {
        ElementKind::SingleOrbit { .. } => Ok(true),
        ElementKind::Sum(parts) => {
            for p in parts {
                if !cross_component_vanishing(p, f_source, f_target, field)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ElementKind::Diamond { n, component } => {
            for end in [f_source, f_target] {
                if end.component_id() != *component {
                    continue;
                }
                let level = 2 * n - 1;
                let (i, j) = end.coords();
                let reach = i.abs().max(j.abs()) as u32 + 2 * level;
                let table = diamond_cokernel(q, end, *n, reach.div_ceil(2), field)?;
                if table.layers.keys().any(|(k, _)| *k >= level) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Naturality along arrows: for every arrow `f: u -> v` between window
/// vertices, each `W` in the hom support of `v` that maps to `u` with `W -> u
/// -> v` nonzero in the mesh category lies in the hom support of `u`.
/// Returns the violations.
pub fn naturality_violations(e: &GradedCenterElement, window: u32, field: FieldSpec) -> Result<Vec<String>> {
    let q = &e.quiver;
    let mut out = Vec::new();
    for v in q.window(window) {
        let here = e.image_table(&v)?.factors();
        for arrow in q.arrows_in(&v) {
            let u = arrow.source;
            if !q.in_window(&u, window) {
                continue;
            }
            let there = e.image_table(&u)?.factors();
            for w in &here {
                let PathLength::Forced(len) = q.path_length(w, &u) else { continue };
                let space = PathSpace::build(q, w, &v, len + 1, window + 2)?;
                let through: Vec<usize> = (0..space.paths().len())
                    .filter(|&i| space.paths()[i][len as usize] == u)
                    .collect();
                let Some(&first) = through.first() else { continue };
                if space.relation_span(field)?.contains(&space.unit(field, first)) {
                    continue;
                }
                if !there.contains(w) {
                    out.push(format!("{w} in support at {v} via {u}, missing at {u}"));
                }
            }
        }
    }
    Ok(out)
}
