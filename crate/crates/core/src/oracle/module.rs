//! Modules over `k[t]/(t^n)` as direct sums of Jordan blocks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, FieldSpec, Matrix};
use crate::quiver::Vertex;

/// `J_{b_1} ⊕ ... ⊕ J_{b_r}` over `k[t]/(t^n)`.
///
/// The basis of block `J_s` is `e_0 = 1, e_1 = t, ..., e_{s-1} = t^{s-1}` and
/// `t` acts by `e_k -> e_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanModule {
    n: u32,
    blocks: Vec<u32>,
}

impl JordanModule {
    pub fn new(n: u32, blocks: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Algebra("k[t]/(t^n) needs n >= 1".into()));
        }
        if let Some(b) = blocks.iter().find(|&&b| b == 0 || b > n) {
            return Err(Error::Algebra(format!("block size {b} outside 1..={n}")));
        }
        Ok(JordanModule { n, blocks })
    }

    /// The indecomposable `J_i`; `i = 0` gives the zero module.
    pub fn j(n: u32, i: u32) -> Result<Self> {
        if i == 0 {
            return JordanModule::new(n, vec![]);
        }
        JordanModule::new(n, vec![i])
    }

    pub fn zero(n: u32) -> Self {
        JordanModule { n, blocks: vec![] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&b| b as usize).sum()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_projective(&self) -> bool {
        self.blocks.iter().all(|&b| b == self.n)
    }

    /// Size of the single block, if indecomposable.
    pub fn index(&self) -> Option<u32> {
        match self.blocks.as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// Tube vertex of an indecomposable non-projective module.
    pub fn vertex(&self) -> Option<Vertex> {
        self.index().filter(|&i| i < self.n).map(Vertex::tube)
    }

    /// Starting basis index of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let o = acc;
                acc += b as usize;
                o
            })
            .collect()
    }

    /// Matrix of the action of `t`.
    pub fn nilpotent(&self, field: FieldSpec) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(field, d, d);
        for (&b, o) in self.blocks.iter().zip(self.offsets()) {
            for k in 0..b as usize - 1 {
                m.set(o + k + 1, o + k, field.one());
            }
        }
        m
    }

    /// The non-projective part, sorted by decreasing block size.
    pub fn stable_part(&self) -> JordanModule {
        let mut blocks: Vec<u32> = self.blocks.iter().copied().filter(|&b| b < self.n).collect();
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        JordanModule { n: self.n, blocks }
    }

    pub(crate) fn same_algebra(&self, other: &JordanModule) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Algebra(format!(
                "modules over k[t]/(t^{}) and k[t]/(t^{})",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for JordanModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("J{b}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Whether `a` commutes with the actions: `a * T_x = T_y * a`.
pub fn is_module_map(x: &JordanModule, y: &JordanModule, a: &Matrix) -> Result<bool> {
    x.same_algebra(y)?;
    let field = a.field();
    if a.rows() != y.dim() || a.cols() != x.dim() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for a map {x} -> {y}",
            a.rows(),
            a.cols()
        )));
    }
    let lhs = a.mul(&x.nilpotent(field))?;
    let rhs = y.nilpotent(field).mul(a)?;
    Ok(lhs == rhs)
}

/// Basis of the module homomorphisms `x -> y`, as `dim y x dim x` matrices.
///
/// Solves `A T_x = T_y A` for the entries of `A`.
pub fn hom_basis(x: &JordanModule, y: &JordanModule, field: FieldSpec) -> Result<Vec<Matrix>> {
    x.same_algebra(y)?;
    let (dx, dy) = (x.dim(), y.dim());
    if dx == 0 || dy == 0 {
        return Ok(vec![]);
    }
    let tx = x.nilpotent(field);
    let ty = y.nilpotent(field);
    let unknowns = dx * dy;
    let mut columns = Vec::with_capacity(unknowns);
    for idx in 0..unknowns {
        let mut e = Matrix::zeros(field, dy, dx);
        e.set(idx / dx, idx % dx, field.one());
        columns.push(e.mul(&tx)?.sub(&ty.mul(&e)?)?.to_vector());
    }
    let system = Matrix::from_columns(field, unknowns, &columns)?;
    kernel_basis(&system)
        .into_iter()
        .map(|v| Matrix::from_vector(field, dy, dx, v))
        .collect()
}

/// Jordan type of `t` restricted to the invariant subspace spanned by the
/// columns of `basis`, read off from the ranks of powers.
pub fn jordan_type(module: &JordanModule, basis: &Matrix) -> Result<Vec<u32>> {
    let field = basis.field();
    let t = module.nilpotent(field);
    let mut ranks = vec![rank(basis)];
    let mut power = basis.clone();
    while *ranks.last().unwrap() > 0 {
        power = t.mul(&power)?;
        ranks.push(rank(&power));
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    let mut blocks = Vec::new();
    for k in (1..ranks.len()).rev() {
        let at_least = ranks[k - 1] - ranks[k];
        let longer = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
        for _ in 0..at_least - longer {
            blocks.push(k as u32);
        }
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F5: FieldSpec = FieldSpec::PrimeField { characteristic: 5 };

    fn j(n: u32, i: u32) -> JordanModule {
        JordanModule::j(n, i).unwrap()
    }

    #[test]
    fn hom_dims_are_min() {
        for n in 2..=5 {
            for a in 1..=n {
                for b in 1..=n {
                    let basis = hom_basis(&j(n, a), &j(n, b), F5).unwrap();
                    assert_eq!(basis.len() as u32, a.min(b), "n={n} J{a}->J{b}");
                    for m in &basis {
                        assert!(is_module_map(&j(n, a), &j(n, b), m).unwrap());
                    }
                }
            }
        }
        assert_eq!(hom_basis(&j(4, 2), &j(4, 3), F5).unwrap().len(), 2);
        assert!(hom_basis(&JordanModule::zero(4), &j(4, 3), F5).unwrap().is_empty());
    }

    #[test]
    fn mismatched_algebras_rejected() {
        assert!(matches!(hom_basis(&j(4, 1), &j(5, 1), F5), Err(Error::Algebra(_))));
        assert!(JordanModule::new(4, vec![5]).is_err());
    }

    #[test]
    fn jordan_type_of_whole_module() {
        let x = JordanModule::new(5, vec![3, 1, 2]).unwrap();
        let id = Matrix::identity(F5, x.dim());
        let mut ty = jordan_type(&x, &id).unwrap();
        ty.sort_unstable();
        assert_eq!(ty, vec![1, 2, 3]);
        assert_eq!(x.to_string(), "J3+J1+J2");
        assert_eq!(x.stable_part().blocks(), &[3, 2, 1]);
    }
}
