//! Canonical subspace arithmetic over an algebra's field.
//!
//! Subspaces are represented by their reduced-row-echelon basis, which is
//! unique per subspace, so equality of subspaces is equality of matrices.
//! All pivots are exact (first nonzero column); there are no magnitude
//! heuristics because the arithmetic is exact.

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::scalar::{FieldDesc, Scalar};

/// A linear subspace of `F^n` in canonical RREF form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldDesc,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

/// Reduces `rows` in place to RREF and strips zero rows.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col]
            .checked_inv()
            .expect("pivot entry is nonzero");
        for entry in rows[rank][col..].iter_mut() {
            *entry = &inv * entry;
        }
        let pivot_row = std::mem::take(&mut rows[rank]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    let sub = &factor * p;
                    *entry = &*entry - &sub;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
}

impl Subspace {
    pub fn zero(field: FieldDesc, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(field: FieldDesc, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut row = vec![field.zero(); ambient_dim];
                row[i] = field.one();
                row
            })
            .collect();
        Subspace {
            field,
            ambient_dim,
            basis,
        }
    }

    /// RREF span of arbitrary coordinate rows.
    pub fn from_rows(
        field: FieldDesc,
        ambient_dim: usize,
        mut rows: Vec<Vec<Scalar>>,
    ) -> Result<Self, AlgebraError> {
        for r in &rows {
            if r.len() != ambient_dim {
                return Err(AlgebraError::CoordsLength {
                    got: r.len(),
                    expected: ambient_dim,
                });
            }
            for c in r {
                if c.field() != field {
                    return Err(crate::scalar::ScalarError::FieldMismatch(c.field(), field).into());
                }
            }
        }
        rref(&mut rows, ambient_dim);
        Ok(Subspace {
            field,
            ambient_dim,
            basis: rows,
        })
    }

    /// Span of elements of one algebra.
    pub fn span(algebra: &Algebra, elements: &[Element]) -> Result<Self, AlgebraError> {
        for e in elements {
            if !algebra.is_compatible(e) {
                return Err(AlgebraError::Mismatch);
            }
        }
        Self::from_rows(
            algebra.field(),
            algebra.dim(),
            elements.iter().map(|e| e.coords().to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Pivot columns of the RREF basis, ascending.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|c| !c.is_zero()).expect("no zero rows"))
            .collect()
    }

    /// Columns without a pivot; the canonical complement coordinates.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        let pivots = self.pivot_columns();
        (0..self.ambient_dim)
            .filter(|c| !pivots.contains(c))
            .collect()
    }

    /// Residual of `v` after eliminating all pivot coordinates.
    pub(crate) fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(self.pivot_columns().iter()) {
            if !out[p].is_zero() {
                let factor = out[p].clone();
                for (o, b) in out.iter_mut().zip(row) {
                    let sub = &factor * b;
                    *o = &*o - &sub;
                }
            }
        }
        out
    }

    pub(crate) fn contains_coords(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Membership by residual reduction against the RREF basis.
    pub fn contains(&self, e: &Element) -> Result<bool, AlgebraError> {
        if e.coords().len() != self.ambient_dim
            || e.coords().iter().any(|c| c.field() != self.field)
        {
            return Err(AlgebraError::Mismatch);
        }
        Ok(self.contains_coords(e.coords()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.field == other.field
            && self.basis.iter().all(|r| other.contains_coords(r))
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), AlgebraError> {
        if self.ambient_dim == other.ambient_dim && self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch)
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref(&mut rows, self.ambient_dim);
        Ok(Subspace {
            field: self.field,
            ambient_dim: self.ambient_dim,
            basis: rows,
        })
    }

    /// Intersection by the Zassenhaus construction: rows `[s | s]` and
    /// `[t | 0]`; after reduction, rows with zero left block carry the
    /// intersection in the right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_same_ambient(other)?;
        let n = self.ambient_dim;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.basis {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        for r in &other.basis {
            let mut row = r.clone();
            row.resize(2 * n, self.field.zero());
            rows.push(row);
        }
        rref(&mut rows, 2 * n);
        let inter: Vec<Vec<Scalar>> = rows
            .into_iter()
            .filter(|row| row[..n].iter().all(Scalar::is_zero))
            .map(|row| row[n..].to_vec())
            .collect();
        Subspace::from_rows(self.field, n, inter)
    }
}

fn check_space(algebra: &Algebra, s: &Subspace) -> Result<(), AlgebraError> {
    if s.ambient_dim == algebra.dim() && s.field == algebra.field() {
        Ok(())
    } else {
        Err(AlgebraError::Mismatch)
    }
}

/// Span of `{a * b}` over basis pairs; sufficient by bilinearity.
pub fn product_span(
    algebra: &Algebra,
    a: &Subspace,
    b: &Subspace,
) -> Result<Subspace, AlgebraError> {
    check_space(algebra, a)?;
    check_space(algebra, b)?;
    let mut rows = Vec::with_capacity(a.dim() * b.dim());
    for ra in a.basis() {
        for rb in b.basis() {
            rows.push(algebra.mul_coords(ra, rb));
        }
    }
    Subspace::from_rows(algebra.field(), algebra.dim(), rows)
}

/// Span of `{[a, b, c]}` over basis triples; sufficient by trilinearity.
pub fn bracket_span(
    algebra: &Algebra,
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
) -> Result<Subspace, AlgebraError> {
    check_space(algebra, a)?;
    check_space(algebra, b)?;
    check_space(algebra, c)?;
    let mut rows = Vec::new();
    for ra in a.basis() {
        for rb in b.basis() {
            for rc in c.basis() {
                rows.push(algebra.bracket_coords(ra, rb, rc));
            }
        }
    }
    Subspace::from_rows(algebra.field(), algebra.dim(), rows)
}

/// A closure result together with the number of growth rounds the
/// fixed-point iteration needed.
#[derive(Debug, Clone)]
pub struct Closure {
    pub space: Subspace,
    pub rounds: usize,
}

/// Generic worklist fixed point: each round maps only the newly added basis
/// rows through `generate` and re-canonicalizes. Terminates because the
/// dimension is bounded by the ambient dimension.
fn close_under<F>(algebra: &Algebra, seed: &Subspace, mut generate: F) -> Closure
where
    F: FnMut(&[Scalar]) -> Vec<Vec<Scalar>>,
{
    let mut space = seed.clone();
    let mut frontier: Vec<Vec<Scalar>> = space.basis().to_vec();
    let mut rounds = 0;
    while !frontier.is_empty() {
        let mut rows = space.basis().to_vec();
        for v in &frontier {
            rows.extend(generate(v));
        }
        rref(&mut rows, algebra.dim());
        let next = Subspace {
            field: algebra.field(),
            ambient_dim: algebra.dim(),
            basis: rows,
        };
        if next.dim() == space.dim() {
            break;
        }
        rounds += 1;
        frontier = next
            .basis()
            .iter()
            .filter(|r| !space.contains_coords(r))
            .cloned()
            .collect();
        space = next;
    }
    Closure { space, rounds }
}

/// Least subspace containing `seed` and closed under multiplication by all
/// basis elements (an ideal of the associative structure).
pub fn associative_ideal_closure(
    algebra: &Algebra,
    seed: &Subspace,
) -> Result<Subspace, AlgebraError> {
    Ok(associative_ideal_closure_detailed(algebra, seed)?.space)
}

pub fn associative_ideal_closure_detailed(
    algebra: &Algebra,
    seed: &Subspace,
) -> Result<Closure, AlgebraError> {
    check_space(algebra, seed)?;
    let n = algebra.dim();
    Ok(close_under(algebra, seed, |v| {
        (0..n).map(|j| algebra.mul_row_basis(v, j)).collect()
    }))
}

/// Least subspace containing `seed` and closed under both `x -> x e_j` and
/// `x -> [x, e_j, e_k]` (an ideal of the full Poisson (2-3)-structure).
pub fn poisson_ideal_closure(
    algebra: &Algebra,
    seed: &Subspace,
) -> Result<Subspace, AlgebraError> {
    Ok(poisson_ideal_closure_detailed(algebra, seed)?.space)
}

pub fn poisson_ideal_closure_detailed(
    algebra: &Algebra,
    seed: &Subspace,
) -> Result<Closure, AlgebraError> {
    check_space(algebra, seed)?;
    let n = algebra.dim();
    Ok(close_under(algebra, seed, |v| {
        let mut out: Vec<Vec<Scalar>> = (0..n).map(|j| algebra.mul_row_basis(v, j)).collect();
        for j in 0..n {
            for k in j + 1..n {
                out.push(algebra.bracket_row_first(v, j, k));
            }
        }
        out
    }))
}

/// Least subalgebra containing `seed`: closed under products and brackets
/// of its own elements.
pub fn subalgebra_closure(algebra: &Algebra, seed: &Subspace) -> Result<Subspace, AlgebraError> {
    check_space(algebra, seed)?;
    let mut space = seed.clone();
    loop {
        let grown = space
            .sum(&product_span(algebra, &space, &space)?)?
            .sum(&bracket_span(algebra, &space, &space, &space)?)?;
        if grown.dim() == space.dim() {
            return Ok(space);
        }
        space = grown;
    }
}

/// Subalgebra test on generators (sufficient by multilinearity):
/// `SS <= S` and `[S,S,S] <= S`.
pub fn is_subalgebra(algebra: &Algebra, s: &Subspace) -> Result<bool, AlgebraError> {
    check_space(algebra, s)?;
    Ok(product_span(algebra, s, s)?.is_subspace_of(s)
        && bracket_span(algebra, s, s, s)?.is_subspace_of(s))
}

/// Ideal test on generators: `SP <= S` and `[S,P,P] <= S`.
pub fn is_ideal(algebra: &Algebra, s: &Subspace) -> Result<bool, AlgebraError> {
    check_space(algebra, s)?;
    let full = Subspace::full(algebra.field(), algebra.dim());
    Ok(product_span(algebra, s, &full)?.is_subspace_of(s)
        && bracket_span(algebra, s, &full, &full)?.is_subspace_of(s))
}

/// The subspace `aP = span{a e_j}`.
pub fn principal_span(algebra: &Algebra, a: &Element) -> Result<Subspace, AlgebraError> {
    if !algebra.is_compatible(a) {
        return Err(AlgebraError::Mismatch);
    }
    let rows = (0..algebra.dim())
        .map(|j| algebra.mul_row_basis(a.coords(), j))
        .collect();
    Subspace::from_rows(algebra.field(), algebra.dim(), rows)
}

/// Canonical basis of the nullspace of the linear system given by `rows`
/// (each row is one homogeneous constraint on `ncols` unknowns).
pub(crate) fn nullspace(field: FieldDesc, ncols: usize, mut rows: Vec<Vec<Scalar>>) -> Subspace {
    rref(&mut rows, ncols);
    let pivots: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).expect("no zero rows"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    rref(&mut basis, ncols);
    Subspace {
        field,
        ambient_dim: ncols,
        basis,
    }
}

/// Exact inverse of a square matrix, or `None` if singular.
pub(crate) fn invert_matrix(field: FieldDesc, mat: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = mat.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut rows: Vec<Vec<Scalar>> = mat
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "matrix must be square");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    rref(&mut rows, 2 * n);
    if rows.len() < n || rows[n - 1][..n].iter().all(Scalar::is_zero) {
        return None;
    }
    // full rank on the left block means the left half reduced to the identity
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}
