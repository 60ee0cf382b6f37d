//! Brute-force model of the stable module category of `k[t]/(t^n)`.
//!
//! Objects are [`JordanModule`]s, morphisms are matrices commuting with the
//! action of `t`, and stable classes are canonical representatives modulo the
//! maps factoring through the projective `J_n`. Everything is computed by
//! exact linear algebra; nothing is read off closed formulas.
//!
//! Quantifiers over "all objects" run over the indecomposables `J_1..J_{n-1}`,
//! which suffices by additivity.

mod checks;
mod module;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

pub use checks::{AlmostVanishingReport, SupportSolution, Verdict, CHECK_NAMES};
pub use module::{hom_basis, is_module_map, jordan_type, JordanModule};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, solve, span_dim, FieldSpec, Matrix, Subspace, Vector};
use crate::mesh::LayerTable;
use crate::quiver::Vertex;

/// Field used by the oracle unless the caller asks otherwise.
pub const DEFAULT_ORACLE_FIELD: FieldSpec = FieldSpec::PrimeField { characteristic: 5 };

/// Above this many projective points the enumeration of nonzero classes falls
/// back to coefficient vectors with entries in `{-1, 0, 1}`.
pub const ENUMERATION_LIMIT: usize = 4096;

/// A morphism class in the stable category, stored by its canonical
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableMap {
    pub source: JordanModule,
    pub target: JordanModule,
    /// Canonical representative, reduced modulo maps through projectives.
    pub matrix: Matrix,
    /// The representative flattened row-major; equal classes have equal vectors.
    pub class: Vector,
}

impl StableMap {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|s| s.is_zero())
    }
}

#[derive(Debug)]
struct HomData {
    projective: Subspace,
    /// Canonical representatives of a basis of the stable Hom space.
    stable: Vec<Matrix>,
}

#[derive(Debug)]
struct Syzygy {
    /// Projective cover `J_n -> x` (sending `1` to `e_0`).
    cover: Matrix,
    /// Columns `v, tv, t^2 v, ...`: a Jordan basis of the kernel of the cover.
    kernel: Matrix,
    module: JordanModule,
}

/// Shortened exact sequence data for `0 -> J_i -> E -> J_i -> 0`.
#[derive(Clone, Debug)]
pub struct ArSequence {
    pub end: JordanModule,
    pub middle: JordanModule,
    /// Non-projective part of the middle term.
    pub stable_middle: JordanModule,
    /// The summand `J_n`, present when `i = n - 1`.
    pub projective: Option<JordanModule>,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub non_split: bool,
    /// Every non-split-epi from an indecomposable into the end lifts through `beta`.
    pub lifting: bool,
    /// The connecting class `J_i -> Σ J_i`.
    pub connecting: StableMap,
}

/// Per-`n` computation context. Caches Hom data; single-threaded.
pub struct Oracle {
    n: u32,
    field: FieldSpec,
    homs: RefCell<HashMap<(JordanModule, JordanModule), Rc<HomData>>>,
    syzygies: RefCell<HashMap<u32, Rc<Syzygy>>>,
}

impl Oracle {
    pub fn new(n: u32, field: FieldSpec) -> Result<Self> {
        if n < 2 {
            return Err(Error::Algebra(format!("k[t]/(t^{n}) has no non-projective modules")));
        }
        Ok(Oracle { n, field, homs: RefCell::default(), syzygies: RefCell::default() })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn j(&self, i: u32) -> Result<JordanModule> {
        JordanModule::j(self.n, i)
    }

    fn projective(&self) -> JordanModule {
        JordanModule::j(self.n, self.n).expect("n >= 1")
    }

    /// The non-projective indecomposables `J_1..J_{n-1}`.
    pub fn indecomposables(&self) -> Vec<JordanModule> {
        (1..self.n).map(|i| JordanModule::j(self.n, i).expect("valid index")).collect()
    }

    fn check_module(&self, x: &JordanModule) -> Result<()> {
        if x.n() != self.n {
            return Err(Error::Algebra(format!(
                "{x} is over k[t]/(t^{}), oracle has n = {}",
                x.n(),
                self.n
            )));
        }
        Ok(())
    }

    fn nonprojective_indecomposable(&self, x: &JordanModule) -> Result<u32> {
        self.check_module(x)?;
        match x.index() {
            Some(i) if i < self.n => Ok(i),
            Some(_) => Err(Error::Precondition(format!("{x} is projective"))),
            None => Err(Error::Precondition(format!("{x} is not indecomposable"))),
        }
    }

    fn hom_data(&self, x: &JordanModule, y: &JordanModule) -> Result<Rc<HomData>> {
        self.check_module(x)?;
        self.check_module(y)?;
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.homs.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let f = self.field;
        let len = x.dim() * y.dim();
        let basis = hom_basis(x, y, f)?;
        let p = self.projective();
        let into_p = hom_basis(x, &p, f)?;
        let out_of_p = hom_basis(&p, y, f)?;
        let mut gens = Vec::new();
        for b in &out_of_p {
            for a in &into_p {
                gens.push(b.mul(a)?.to_vector());
            }
        }
        let projective = Subspace::new(f, len, &gens)?;
        let reduced: Vec<Vector> = basis.iter().map(|m| projective.reduce(&m.to_vector())).collect();
        let stable = Subspace::new(f, len, &reduced)?
            .basis()
            .iter()
            .map(|v| Matrix::from_vector(f, y.dim(), x.dim(), v.clone()))
            .collect::<Result<Vec<_>>>()?;
        let data = Rc::new(HomData { projective, stable });
        self.homs.borrow_mut().insert(key, data.clone());
        Ok(data)
    }

    /// Wraps a module map known to be equivariant.
    fn wrap(&self, x: &JordanModule, y: &JordanModule, m: &Matrix) -> Result<StableMap> {
        let data = self.hom_data(x, y)?;
        let class = data.projective.reduce(&m.to_vector());
        let matrix = Matrix::from_vector(self.field, y.dim(), x.dim(), class.clone())?;
        Ok(StableMap { source: x.clone(), target: y.clone(), matrix, class })
    }

    /// Stable class of a module map; fails if `m` does not commute with `t`.
    pub fn stable_map(&self, x: &JordanModule, y: &JordanModule, m: &Matrix) -> Result<StableMap> {
        if m.field() != self.field {
            return Err(Error::FieldMismatch(format!(
                "matrix over {} for an oracle over {}",
                m.field(),
                self.field
            )));
        }
        if !is_module_map(x, y, m)? {
            return Err(Error::Consistency(format!("matrix is not a module map {x} -> {y}")));
        }
        self.wrap(x, y, m)
    }

    pub fn zero_map(&self, x: &JordanModule, y: &JordanModule) -> Result<StableMap> {
        self.wrap(x, y, &Matrix::zeros(self.field, y.dim(), x.dim()))
    }

    pub fn identity(&self, x: &JordanModule) -> Result<StableMap> {
        self.wrap(x, x, &Matrix::identity(self.field, x.dim()))
    }

    /// Canonical representatives of a basis of stable `Hom(x, y)`.
    pub fn stable_basis(&self, x: &JordanModule, y: &JordanModule) -> Result<Vec<StableMap>> {
        let data = self.hom_data(x, y)?;
        Ok(data
            .stable
            .iter()
            .map(|m| StableMap {
                source: x.clone(),
                target: y.clone(),
                matrix: m.clone(),
                class: m.to_vector(),
            })
            .collect())
    }

    /// `dim Hom(x, y)` minus the maps factoring through `add(J_n)`.
    pub fn stable_hom_dim(&self, x: &JordanModule, y: &JordanModule) -> Result<usize> {
        x.same_algebra(y)?;
        Ok(self.hom_data(x, y)?.stable.len())
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &StableMap, f: &StableMap) -> Result<StableMap> {
        if f.target != g.source {
            return Err(Error::Consistency(format!(
                "cannot compose {} -> {} after {} -> {}",
                g.source, g.target, f.source, f.target
            )));
        }
        self.wrap(&f.source, &g.target, &g.matrix.mul(&f.matrix)?)
    }

    /// `sum_l c_l b_l` for maps sharing source and target.
    pub fn combine(&self, x: &JordanModule, y: &JordanModule, coeffs: &[crate::linalg::Scalar], maps: &[StableMap]) -> Result<StableMap> {
        let mut acc = Matrix::zeros(self.field, y.dim(), x.dim());
        for (c, m) in coeffs.iter().zip(maps) {
            acc = acc.add(&m.matrix.scale(c))?;
        }
        self.wrap(x, y, &acc)
    }

    /// Basis of the stable non-isomorphisms `x -> y` between indecomposables.
    pub fn rad_basis(&self, x: &JordanModule, y: &JordanModule) -> Result<Vec<StableMap>> {
        let basis = self.stable_basis(x, y)?;
        if x != y {
            return Ok(basis);
        }
        self.non_isomorphisms(x, &basis)
    }

    /// Combinations of endomorphisms of an indecomposable with zero `e_0`-coefficient at `e_0`.
    fn non_isomorphisms(&self, x: &JordanModule, basis: &[StableMap]) -> Result<Vec<StableMap>> {
        if basis.is_empty() {
            return Ok(vec![]);
        }
        let functional = Matrix::new(
            self.field,
            1,
            basis.len(),
            basis.iter().map(|b| b.matrix.get(0, 0).clone()).collect(),
        )?;
        kernel_basis(&functional)
            .iter()
            .map(|c| self.combine(x, x, c, basis))
            .collect()
    }

    /// Nonzero stable classes `x -> y`, one per line through the origin.
    ///
    /// Over a prime field with at most [`ENUMERATION_LIMIT`] points this is
    /// every class up to scalars; otherwise the coefficient vectors with
    /// entries in `{-1, 0, 1}` and leading entry 1.
    pub fn nonzero_classes(&self, x: &JordanModule, y: &JordanModule) -> Result<Vec<StableMap>> {
        let basis = self.stable_basis(x, y)?;
        let d = basis.len();
        let p = self.field.characteristic();
        let exhaustive = p > 0 && (p as f64).powi(d as i32) <= ENUMERATION_LIMIT as f64;
        let digits: Vec<i64> = if exhaustive { (0..p as i64).collect() } else { vec![0, 1, -1] };
        let mut out = Vec::new();
        let mut coeffs = vec![0usize; d];
        loop {
            let lead = coeffs.iter().position(|&c| c != 0);
            if let Some(l) = lead {
                if digits[coeffs[l]] == 1 {
                    let scalars: Vec<_> = coeffs.iter().map(|&c| self.field.from_i64(digits[c])).collect();
                    out.push(self.combine(x, y, &scalars, &basis)?);
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == d {
                    return Ok(out);
                }
                coeffs[pos] += 1;
                if coeffs[pos] < digits.len() {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Whether `target` (in stable `Hom(x, z)`) lies in the span of `maps`.
    pub(crate) fn in_span(&self, maps: &[StableMap], target: &StableMap) -> Result<bool> {
        if target.is_zero() {
            return Ok(true);
        }
        if maps.is_empty() {
            return Ok(false);
        }
        let columns: Vec<Vector> = maps.iter().map(|m| m.class.clone()).collect();
        let system = Matrix::from_columns(self.field, target.class.len(), &columns)?;
        Ok(solve(&system, &target.class)?.is_some())
    }

    /// Canonical maps forming a basis of the span of `maps`.
    pub(crate) fn span_basis(&self, x: &JordanModule, y: &JordanModule, maps: &[StableMap]) -> Result<Vec<StableMap>> {
        let vs: Vec<Vector> = maps.iter().map(|m| m.class.clone()).collect();
        Subspace::new(self.field, x.dim() * y.dim(), &vs)?
            .basis()
            .iter()
            .map(|v| {
                let matrix = Matrix::from_vector(self.field, y.dim(), x.dim(), v.clone())?;
                Ok(StableMap { source: x.clone(), target: y.clone(), matrix, class: v.clone() })
            })
            .collect()
    }

    pub(crate) fn span_dim(&self, maps: &[StableMap]) -> Result<usize> {
        let vs: Vec<Vector> = maps.iter().map(|m| m.class.clone()).collect();
        span_dim(&vs)
    }

    fn syzygy(&self, i: u32) -> Result<Rc<Syzygy>> {
        if let Some(hit) = self.syzygies.borrow().get(&i) {
            return Ok(hit.clone());
        }
        let x = self.j(i)?;
        let p = self.projective();
        let cover = cover_matrix(&p, &x, self.field)?;
        let kernel = kernel_basis(&cover);
        let len = (self.n - i) as usize;
        let t = p.nilpotent(self.field);
        let generator = kernel
            .iter()
            .find(|v| {
                let mut w = (*v).clone();
                for _ in 0..len - 1 {
                    w = t.apply(&w).expect("square");
                }
                w.iter().any(|s| !s.is_zero())
            })
            .cloned()
            .ok_or_else(|| Error::Consistency(format!("kernel of the cover of {x} is not cyclic")))?;
        let mut columns = vec![generator];
        for _ in 1..len {
            let next = t.apply(columns.last().unwrap())?;
            columns.push(next);
        }
        let kernel = Matrix::from_columns(self.field, self.n as usize, &columns)?;
        let module = self.j(self.n - i)?;
        let s = Rc::new(Syzygy { cover, kernel, module });
        self.syzygies.borrow_mut().insert(i, s.clone());
        Ok(s)
    }

    /// `Ω(x)`: the kernel of the projective cover, identified by its Jordan type.
    pub fn omega(&self, x: &JordanModule) -> Result<JordanModule> {
        self.check_module(x)?;
        if x.is_projective() {
            return Err(Error::Precondition(format!("Ω is not defined on the projective {x}")));
        }
        let cover_source = JordanModule::new(self.n, vec![self.n; x.blocks().len()])?;
        let cover = cover_matrix(&cover_source, x, self.field)?;
        let kernel = kernel_basis(&cover);
        let basis = Matrix::from_columns(self.field, cover_source.dim(), &kernel)?;
        let mut blocks = jordan_type(&cover_source, &basis)?;
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        JordanModule::new(self.n, blocks)
    }

    /// `Ω(f)` for `f` between non-projective indecomposables: lift `f` to the
    /// projective covers and restrict to the kernels.
    pub fn omega_map(&self, f: &StableMap) -> Result<StableMap> {
        let i = self.nonprojective_indecomposable(&f.source)?;
        let j = self.nonprojective_indecomposable(&f.target)?;
        let (si, sj) = (self.syzygy(i)?, self.syzygy(j)?);
        let image = f.matrix.column(0);
        let w = solve(&sj.cover, &image)?
            .ok_or_else(|| Error::Consistency("projective cover is not surjective".into()))?;
        let t = self.projective().nilpotent(self.field);
        let mut columns = vec![w];
        for _ in 1..self.n {
            let next = t.apply(columns.last().unwrap())?;
            columns.push(next);
        }
        let lift = Matrix::from_columns(self.field, self.n as usize, &columns)?;
        let moved = lift.mul(&si.kernel)?;
        let mut out = Vec::with_capacity(moved.cols());
        for c in 0..moved.cols() {
            let coords = solve(&sj.kernel, &moved.column(c))?
                .ok_or_else(|| Error::Consistency("lift does not preserve the syzygies".into()))?;
            out.push(coords);
        }
        let m = Matrix::from_columns(self.field, sj.module.dim(), &out)?;
        self.stable_map(&si.module, &sj.module, &m)
    }

    /// The almost split sequence ending at the non-projective indecomposable `x`,
    /// verified to be non-split and to have the lifting property.
    pub fn ar_sequence(&self, x: &JordanModule) -> Result<ArSequence> {
        let i = self.nonprojective_indecomposable(x)?;
        let f = self.field;
        let n = self.n;
        let blocks: Vec<u32> = [i - 1, i + 1].into_iter().filter(|&b| b > 0).collect();
        let e = JordanModule::new(n, blocks)?;
        let lower = (i - 1) as usize;
        let iu = i as usize;
        let mut alpha = Matrix::zeros(f, e.dim(), iu);
        let mut beta = Matrix::zeros(f, iu, e.dim());
        for k in 0..iu {
            if k < lower {
                alpha.set(k, k, f.one());
            }
            alpha.set(lower + k + 1, k, f.one());
        }
        for k in 0..lower {
            beta.set(k + 1, k, f.one());
        }
        for k in 0..iu {
            beta.set(k, lower + k, f.from_i64(-1));
        }
        if !is_module_map(x, &e, &alpha)? || !is_module_map(&e, x, &beta)? {
            return Err(Error::Consistency("almost split sequence maps are not module maps".into()));
        }
        if !beta.mul(&alpha)?.is_zero() || rank(&alpha) != iu || rank(&beta) != iu {
            return Err(Error::Consistency("almost split sequence is not exact".into()));
        }

        // non-split: no module map s with beta s = id
        let sections: Vec<Vector> = hom_basis(x, &e, f)?
            .iter()
            .map(|s| beta.mul(s).map(|m| m.to_vector()))
            .collect::<Result<_>>()?;
        let id = Matrix::identity(f, iu).to_vector();
        let non_split = !solvable(f, &sections, &id)?;

        let mut lifting = true;
        for v in 1..=n {
            let source = self.j(v)?;
            let lifts: Vec<Vector> = hom_basis(&source, &e, f)?
                .iter()
                .map(|h| beta.mul(h).map(|m| m.to_vector()))
                .collect::<Result<_>>()?;
            let mut maps = hom_basis(&source, x, f)?;
            if v == i {
                maps = module_non_isomorphisms(f, &maps)?;
            }
            for g in maps {
                if !solvable(f, &lifts, &g.to_vector())? {
                    lifting = false;
                }
            }
        }

        // connecting class q h s
        let p = self.projective();
        let hull_len = (n - i) as usize;
        let mut hull = Matrix::zeros(f, n as usize, iu);
        for k in 0..iu {
            hull.set(hull_len + k, k, f.one());
        }
        let extensions = hom_basis(&e, &p, f)?;
        let columns: Vec<Vector> = extensions
            .iter()
            .map(|h| h.mul(&alpha).map(|m| m.to_vector()))
            .collect::<Result<_>>()?;
        let system = Matrix::from_columns(f, n as usize * iu, &columns)?;
        let coeffs = solve(&system, &hull.to_vector())?
            .ok_or_else(|| Error::Consistency("injective hull does not extend".into()))?;
        let mut h = Matrix::zeros(f, n as usize, e.dim());
        for (c, basis) in coeffs.iter().zip(&extensions) {
            h = h.add(&basis.scale(c))?;
        }
        let mut q = Matrix::zeros(f, hull_len, n as usize);
        for k in 0..hull_len {
            q.set(k, k, f.one());
        }
        let mut section_columns = Vec::with_capacity(iu);
        for k in 0..iu {
            let mut unit = vec![f.zero(); iu];
            unit[k] = f.one();
            section_columns.push(
                solve(&beta, &unit)?.ok_or_else(|| Error::Consistency("beta is not surjective".into()))?,
            );
        }
        let s = Matrix::from_columns(f, e.dim(), &section_columns)?;
        let delta = q.mul(&h)?.mul(&s)?;
        let connecting = self.stable_map(x, &self.j(n - i)?, &delta)?;

        let stable_middle = e.stable_part();
        let projective = (i + 1 == n).then(|| p.clone());
        Ok(ArSequence {
            end: x.clone(),
            middle: e,
            stable_middle,
            projective,
            alpha,
            beta,
            non_split,
            lifting,
            connecting,
        })
    }

    /// Dimension of `f ∘ Hom(V, source)` inside `Hom(V, target)` for every
    /// indecomposable `V`: the composition factors of the image of `Hom(-, f)`.
    pub fn image_comp_factors(&self, f: &StableMap) -> Result<BTreeMap<Vertex, usize>> {
        let mut out = BTreeMap::new();
        for v in self.indecomposables() {
            let images: Vec<StableMap> = self
                .stable_basis(&v, &f.source)?
                .iter()
                .map(|g| self.compose(f, g))
                .collect::<Result<_>>()?;
            let d = self.span_dim(&images)?;
            if d > 0 {
                out.insert(v.vertex().expect("non-projective"), d);
            }
        }
        Ok(out)
    }

    /// Radical layers of `Hom(-, m)` by explicit spans of composites of
    /// non-isomorphisms.
    pub fn radical_layers_bruteforce(&self, m: &JordanModule, k_max: u32) -> Result<LayerTable> {
        self.nonprojective_indecomposable(m)?;
        let objects = self.indecomposables();
        let mut table = LayerTable::new(m.vertex().expect("non-projective"), k_max);
        // current[v] spans Rad^k(V, m)
        let mut current: Vec<Vec<StableMap>> =
            objects.iter().map(|v| self.stable_basis(v, m)).collect::<Result<_>>()?;
        for k in 0..=k_max {
            let mut next = Vec::with_capacity(objects.len());
            for v in &objects {
                if k == 0 {
                    next.push(self.rad_basis(v, m)?);
                    continue;
                }
                let mut gens = Vec::new();
                for (w, deeper) in objects.iter().zip(&current) {
                    let rad = self.rad_basis(v, w)?;
                    for g in deeper {
                        for h in &rad {
                            gens.push(self.compose(g, h)?);
                        }
                    }
                }
                next.push(self.span_basis(v, m, &gens)?);
            }
            for ((v, here), below) in objects.iter().zip(&current).zip(&next) {
                let layer = self.span_dim(here)? - self.span_dim(below)?;
                table.add(k, v.vertex().expect("non-projective"), layer as i64);
            }
            current = next;
        }
        Ok(table)
    }
}

fn cover_matrix(p: &JordanModule, x: &JordanModule, f: FieldSpec) -> Result<Matrix> {
    let mut m = Matrix::zeros(f, x.dim(), p.dim());
    let n = p.n() as usize;
    for (b, (&size, o)) in x.blocks().iter().zip(x.offsets()).enumerate() {
        for k in 0..size as usize {
            m.set(o + k, b * n + k, f.one());
        }
    }
    Ok(m)
}

fn solvable(f: FieldSpec, columns: &[Vector], rhs: &[crate::linalg::Scalar]) -> Result<bool> {
    if rhs.iter().all(|s| s.is_zero()) {
        return Ok(true);
    }
    if columns.is_empty() {
        return Ok(false);
    }
    let system = Matrix::from_columns(f, rhs.len(), columns)?;
    Ok(solve(&system, rhs)?.is_some())
}

/// Module-level non-isomorphisms among endomorphisms of an indecomposable.
fn module_non_isomorphisms(f: FieldSpec, basis: &[Matrix]) -> Result<Vec<Matrix>> {
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let functional = Matrix::new(f, 1, basis.len(), basis.iter().map(|b| b.get(0, 0).clone()).collect())?;
    kernel_basis(&functional)
        .iter()
        .map(|c| {
            let mut acc = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
            for (s, b) in c.iter().zip(basis) {
                acc = acc.add(&b.scale(s))?;
            }
            Ok(acc)
        })
        .collect()
}

/// Stable Hom grid between indecomposables, rows = source, columns = target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomGrid {
    pub n: u32,
    pub dims: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn stable_grid(&self) -> Result<HomGrid> {
        let objects = self.indecomposables();
        let dims = objects
            .iter()
            .map(|x| objects.iter().map(|y| self.stable_hom_dim(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(HomGrid { n: self.n, dims })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: u32) -> Oracle {
        Oracle::new(n, DEFAULT_ORACLE_FIELD).unwrap()
    }

    #[test]
    fn stable_dims() {
        let o = oracle(4);
        let j = |i| o.j(i).unwrap();
        assert_eq!(o.stable_hom_dim(&j(2), &j(2)).unwrap(), 2);
        assert_eq!(o.stable_hom_dim(&j(1), &j(3)).unwrap(), 1);
        for i in 1..=4 {
            assert_eq!(o.stable_hom_dim(&j(i), &j(4)).unwrap(), 0);
        }
        for n in 3..=6 {
            let o = oracle(n);
            let grid = o.stable_grid().unwrap();
            for i in 1..n {
                for k in 1..n {
                    let want = i.min(k).min(n - i).min(n - k) as usize;
                    assert_eq!(grid.dims[i as usize - 1][k as usize - 1], want, "n={n} ({i},{k})");
                }
            }
        }
    }

    #[test]
    fn omega_on_objects() {
        let o = oracle(4);
        assert_eq!(o.omega(&o.j(1).unwrap()).unwrap(), o.j(3).unwrap());
        assert_eq!(o.omega(&o.omega(&o.j(2).unwrap()).unwrap()).unwrap(), o.j(2).unwrap());
        assert!(matches!(o.omega(&o.j(4).unwrap()), Err(Error::Precondition(_))));
        let mixed = JordanModule::new(4, vec![1, 4, 3]).unwrap();
        assert_eq!(o.omega(&mixed).unwrap().blocks(), &[3, 1]);
    }

    #[test]
    fn omega_is_functorial_on_classes() {
        let o = oracle(5);
        for x in o.indecomposables() {
            for y in o.indecomposables() {
                for z in o.indecomposables() {
                    for f in o.stable_basis(&x, &y).unwrap() {
                        for g in o.stable_basis(&y, &z).unwrap() {
                            let lhs = o.omega_map(&o.compose(&g, &f).unwrap()).unwrap();
                            let rhs = o
                                .compose(&o.omega_map(&g).unwrap(), &o.omega_map(&f).unwrap())
                                .unwrap();
                            assert_eq!(lhs.class, rhs.class);
                        }
                    }
                }
            }
            let id = o.identity(&x).unwrap();
            assert!(!o.omega_map(&id).unwrap().is_zero());
        }
    }

    #[test]
    fn ar_sequences() {
        let o = oracle(4);
        let s1 = o.ar_sequence(&o.j(1).unwrap()).unwrap();
        assert_eq!(s1.stable_middle.blocks(), &[2]);
        assert!(s1.projective.is_none());
        let s3 = o.ar_sequence(&o.j(3).unwrap()).unwrap();
        assert_eq!(s3.stable_middle.blocks(), &[2]);
        assert!(s3.projective.is_some());
        let s2 = o.ar_sequence(&o.j(2).unwrap()).unwrap();
        assert_eq!(s2.stable_middle.blocks(), &[3, 1]);
        for s in [&s1, &s2, &s3] {
            assert!(s.non_split && s.lifting);
            assert!(!s.connecting.is_zero());
        }
        assert!(o.ar_sequence(&o.j(4).unwrap()).is_err());
    }

    #[test]
    fn image_factors() {
        let o = oracle(4);
        let j2 = o.j(2).unwrap();
        let id = o.identity(&j2).unwrap();
        let img = o.image_comp_factors(&id).unwrap();
        let want: BTreeMap<Vertex, usize> =
            [(Vertex::tube(1), 1), (Vertex::tube(2), 2), (Vertex::tube(3), 1)].into_iter().collect();
        assert_eq!(img, want);
        let zero = o.zero_map(&j2, &j2).unwrap();
        assert!(o.image_comp_factors(&zero).unwrap().is_empty());
    }

    #[test]
    fn radical_layers_examples() {
        let o = oracle(4);
        let t = o.radical_layers_bruteforce(&o.j(2).unwrap(), 4).unwrap();
        let (j1, j2, j3) = (Vertex::tube(1), Vertex::tube(2), Vertex::tube(3));
        assert_eq!(t.layer(0), [(j2, 1)].into_iter().collect());
        assert_eq!(t.layer(1), [(j1, 1), (j3, 1)].into_iter().collect());
        assert_eq!(t.layer(2), [(j2, 1)].into_iter().collect());
        assert!(t.layer(3).is_empty());
        for n in 3..=6 {
            let o = oracle(n);
            for m in o.indecomposables() {
                let t = o.radical_layers_bruteforce(&m, 2 * n).unwrap();
                for v in o.indecomposables() {
                    let total = t.total_at(&v.vertex().unwrap());
                    assert_eq!(total as usize, o.stable_hom_dim(&v, &m).unwrap());
                }
            }
        }
    }

    #[test]
    fn nonzero_class_enumeration() {
        let o = oracle(4);
        let j2 = o.j(2).unwrap();
        // (5^2 - 1) / 4 lines
        assert_eq!(o.nonzero_classes(&j2, &j2).unwrap().len(), 6);
        let q = Oracle::new(4, FieldSpec::Rationals).unwrap();
        let j2 = q.j(2).unwrap();
        assert_eq!(q.nonzero_classes(&j2, &j2).unwrap().len(), 4);
    }

    #[test]
    fn rejects_foreign_modules() {
        let o = oracle(4);
        let x = JordanModule::j(5, 1).unwrap();
        assert!(matches!(o.stable_hom_dim(&x, &x), Err(Error::Algebra(_))));
        let bad = Matrix::from_i64(DEFAULT_ORACLE_FIELD, 2, 2, &[1, 1, 0, 1]).unwrap();
        let j2 = o.j(2).unwrap();
        assert!(o.stable_map(&j2, &j2, &bad).is_err());
    }
}
