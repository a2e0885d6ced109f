//! The q-particle r-equilibrium problem.
//!
//! Unknowns are the symmetric coefficients `λ_T`, one per r-subset `T` of `{1..q}`.
//! For each `(r-1)`-subset `M` there is one vector equation
//!
//! ```text
//! F_M :  sum over i not in M of  λ_{M ∪ {i}} · F(M ++ i) = 0
//! ```
//!
//! with `F(M ++ i)` read through the antisymmetric accessor. The solver works on the
//! full family of equations. The reduced family (tuples avoiding `q`) is built too,
//! and its equivalence to the full family is checked rather than assumed.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::combinat::{binomial, colex_rank, colex_subsets, Sign, SortedTuple};
use crate::detsr::{det_sr, require_square_count, RowLabel};
use crate::error::{domain, Error, Result};
use crate::exact::{kernel_basis, max_abs, rank_exact, ExactMatrix, ExactRational};
use crate::tensors::{zero_vector, CoefficientSystem, ForceSystem, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumSystem {
    /// `d·C(q, r-1)` rows by `C(q, r)` columns.
    pub full_matrix: ExactMatrix,
    /// The leading rows of `full_matrix`: equations whose tuple excludes `q`.
    pub reduced_matrix: ExactMatrix,
    pub row_labels: Vec<RowLabel>,
    pub col_labels: Vec<SortedTuple>,
}

pub fn build_equilibrium_system(f: &ForceSystem) -> Result<EquilibriumSystem> {
    let (r, d, q) = (f.r(), f.d(), f.q());
    if q < r {
        return Err(domain!("q = {q} particles cannot carry arity r = {r}"));
    }
    let n_eq = binomial(q, r - 1);
    let mut full = ExactMatrix::zeros(n_eq * d, binomial(q, r));
    let mut row_labels = Vec::with_capacity(n_eq * d);
    let mut idx = Vec::with_capacity(r);
    for m in colex_subsets(r - 1, q) {
        let block = colex_rank(m.elems()) * d;
        for i in (1..=q).filter(|&i| !m.contains(i)) {
            idx.clear();
            idx.extend_from_slice(m.elems());
            idx.push(i);
            let Some((sign, vec)) = f.signed_entry(&idx)? else {
                continue;
            };
            let col = colex_rank(m.insert(i)?.0.elems());
            for (c, x) in vec.iter().enumerate() {
                if !x.is_zero() {
                    full.set(block + c, col, sign.apply(x.clone()));
                }
            }
        }
        for coord in 1..=d {
            row_labels.push(RowLabel {
                equation: m.clone(),
                coord,
            });
        }
    }
    // colex puts the (r-1)-subsets of {1..q-1} first
    let reduced = full.top_rows(binomial(q - 1, r - 1) * d);
    Ok(EquilibriumSystem {
        full_matrix: full,
        reduced_matrix: reduced,
        row_labels,
        col_labels: colex_subsets(r, q).collect(),
    })
}

/// A nonzero symmetric `λ` solving every equation exactly, if one exists.
pub fn solve_nontrivial(f: &ForceSystem) -> Result<Option<CoefficientSystem>> {
    if f.q() < f.r() {
        return Ok(None);
    }
    let system = build_equilibrium_system(f)?;
    match kernel_basis(&system.full_matrix).into_iter().next() {
        Some(v) => CoefficientSystem::from_colex_vector(f.r(), f.q(), &v).map(Some),
        None => Ok(None),
    }
}

/// Left-hand side of `F_M` at `λ`.
pub fn equation_value(f: &ForceSystem, lambda: &CoefficientSystem, m: &SortedTuple) -> Result<Vector> {
    check_shapes(f, lambda)?;
    let mut acc = zero_vector(f.d());
    let mut idx = Vec::with_capacity(f.r());
    for i in (1..=f.q()).filter(|&i| !m.contains(i)) {
        idx.clear();
        idx.extend_from_slice(m.elems());
        idx.push(i);
        let Some(l) = lambda.get_sorted(&m.insert(i)?.0) else {
            continue;
        };
        if let Some((sign, vec)) = f.signed_entry(&idx)? {
            let coeff = sign.apply(l.clone());
            for (a, x) in acc.iter_mut().zip(vec) {
                *a += &coeff * x;
            }
        }
    }
    Ok(acc)
}

fn check_shapes(f: &ForceSystem, lambda: &CoefficientSystem) -> Result<()> {
    if f.r() != lambda.r() || f.q() != lambda.q() {
        return Err(Error::ArityMismatch(alloc::format!(
            "forces (r = {}, q = {}) against coefficients (r = {}, q = {})",
            f.r(),
            f.q(),
            lambda.r(),
            lambda.q()
        )));
    }
    Ok(())
}

/// Largest absolute coordinate over all equations at `λ`; zero iff `λ` is a solution.
pub fn residual(f: &ForceSystem, lambda: &CoefficientSystem) -> Result<ExactRational> {
    check_shapes(f, lambda)?;
    let mut worst = ExactRational::zero();
    for m in colex_subsets(f.r() - 1, f.q()) {
        let value = max_abs(&equation_value(f, lambda, &m)?);
        if value > worst {
            worst = value;
        }
    }
    Ok(worst)
}

/// Weight of `F_{sorted(N ∪ {j})}` in the force-side relation for `N`: the sign that
/// sorts `N ++ j`.
fn force_relation_sign(n: &SortedTuple, j: usize) -> Result<Sign> {
    let (_, p) = n.insert(j)?;
    Ok(Sign::from_parity(n.arity() + 1 - p))
}

/// Checks, for every `(r-2)`-subset `N`, that
/// `sum over j not in N of sign(N ++ j) · F_{sorted(N ∪ {j})}` vanishes at `λ`.
/// At `r = 3` this reads `-sum_{s<m} F_{s,m} + sum_{t>m} F_{m,t} = 0`.
pub fn check_force_relations(f: &ForceSystem, lambda: &CoefficientSystem) -> Result<bool> {
    check_shapes(f, lambda)?;
    let (r, q) = (f.r(), f.q());
    if r < 2 {
        return Ok(true);
    }
    for n in colex_subsets(r - 2, q) {
        let mut total = zero_vector(f.d());
        for j in (1..=q).filter(|&j| !n.contains(j)) {
            let sign = force_relation_sign(&n, j)?;
            let (m, _) = n.insert(j)?;
            for (a, x) in total.iter_mut().zip(equation_value(f, lambda, &m)?) {
                *a += sign.apply(x);
            }
        }
        if total.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same relations applied to the rows of the full matrix: every combination must
/// be the zero row, independent of `λ`.
pub fn check_force_relations_structural(f: &ForceSystem) -> Result<bool> {
    let (r, d, q) = (f.r(), f.d(), f.q());
    if r < 2 {
        return Ok(true);
    }
    let system = build_equilibrium_system(f)?;
    let full = &system.full_matrix;
    for n in colex_subsets(r - 2, q) {
        for c in 0..d {
            let mut total = zero_vector(full.cols());
            for j in (1..=q).filter(|&j| !n.contains(j)) {
                let sign = force_relation_sign(&n, j)?;
                let row = colex_rank(n.insert(j)?.0.elems()) * d + c;
                for (a, x) in total.iter_mut().zip(full.row(row)) {
                    if !x.is_zero() {
                        *a += sign.apply(x.clone());
                    }
                }
            }
            if total.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// `det^{S^r}` of the sign-adjusted configuration.
    pub det_value: ExactRational,
    /// Dimension of the solution space of the full system.
    pub kernel_dim: usize,
    pub full_rank: usize,
    pub reduced_rank: usize,
    /// Every reduced-kernel basis vector solves the full system.
    pub reduced_kernel_solves_full: bool,
    /// `det = 0` exactly when the full system has a nonzero solution.
    pub consistent: bool,
}

impl ConsistencyReport {
    pub fn reduced_equivalent(&self) -> bool {
        self.full_rank == self.reduced_rank && self.reduced_kernel_solves_full
    }
}

/// Cross-checks the determinant criterion against the kernel of the full system.
pub fn theorem_consistency(f: &ForceSystem) -> Result<ConsistencyReport> {
    require_square_count(f.r(), f.d(), f.q())?;
    let det_value = det_sr(&f.to_configuration())?;
    let system = build_equilibrium_system(f)?;
    let full_rank = rank_exact(&system.full_matrix);
    let kernel_dim = system.full_matrix.cols() - full_rank;
    let mut reduced_kernel_solves_full = true;
    let reduced_kernel = kernel_basis(&system.reduced_matrix);
    let reduced_rank = system.reduced_matrix.cols() - reduced_kernel.len();
    for v in &reduced_kernel {
        let image = system.full_matrix.mul_vec(v)?;
        if image.iter().any(|x| !x.is_zero()) {
            reduced_kernel_solves_full = false;
            break;
        }
    }
    Ok(ConsistencyReport {
        consistent: det_value.is_zero() == (kernel_dim > 0),
        det_value,
        kernel_dim,
        full_rank,
        reduced_rank,
        reduced_kernel_solves_full,
    })
}
