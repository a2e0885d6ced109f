//! The square system whose determinant is `det^{S^r}`.
//!
//! For every `(r-1)`-subset `M` of `{1..q}` there is one vector equation `E_M`:
//!
//! ```text
//! E_M :  sum over i not in M of  (-1)^(i + p) · λ_{M ∪ {i}} · v_{M ∪ {i}} = 0
//! ```
//!
//! where `p` is the 1-based slot of `i` in `sorted(M ∪ {i})`. At `r = 2` and `r = 3`
//! this is the classical pattern term for term. The equations satisfy, for every
//! `(r-2)`-subset `N`,
//!
//! ```text
//! sum over j not in N of  (-1)^(j + p(N, j)) · E_{N ∪ {j}} = 0
//! ```
//!
//! so the equations whose tuple contains `q` can be dropped. With `q = r·d` the kept
//! equations give `d·C(rd-1, r-1) = C(rd, r)` rows, one per unknown `λ`.
//!
//! Rows are ordered by the colex rank of `M`, then coordinate; columns by the colex
//! rank of the unknown's tuple. The determinant's global sign is tied to that order.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::combinat::{binomial, colex_rank, colex_subsets, insert_position, Sign, SortedTuple};
use crate::error::{Error, Result};
use crate::exact::{det_exact, ExactMatrix, ExactRational};
use crate::tensors::{zero_vector, CoefficientSystem, Vector, VectorConfiguration};

/// Sign attached to the term `λ_{M∪{i}} v_{M∪{i}}` in equation `E_M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignRule {
    /// `(-1)^(i + p)`.
    #[default]
    Standard,
    /// `(-1)^i`, ignoring the slot. Wrong for every `r ≥ 2`; kept so the relation and
    /// vanishing checks can be shown to reject a corrupted sign table.
    SlotBlind,
}

impl SignRule {
    /// Sign for inserted index `i` landing in 1-based slot `p`.
    pub fn term_sign(self, i: usize, p: usize) -> Sign {
        match self {
            SignRule::Standard => Sign::from_parity(i + p),
            SignRule::SlotBlind => Sign::from_parity(i),
        }
    }
}

/// Row label: equation tuple `M` and coordinate (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowLabel {
    pub equation: SortedTuple,
    pub coord: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMatrix {
    pub matrix: ExactMatrix,
    pub row_labels: Vec<RowLabel>,
    pub col_labels: Vec<SortedTuple>,
}

pub(crate) fn require_square_count(r: usize, d: usize, q: usize) -> Result<()> {
    if q != r * d {
        return Err(Error::ParticleCount {
            expected: r * d,
            found: q,
        });
    }
    Ok(())
}

pub fn build_system_matrix(v: &VectorConfiguration) -> Result<SystemMatrix> {
    build_system_matrix_with(v, SignRule::Standard)
}

pub fn build_system_matrix_with(v: &VectorConfiguration, rule: SignRule) -> Result<SystemMatrix> {
    let (r, d, q) = (v.r(), v.d(), v.q());
    require_square_count(r, d, q)?;
    let n_eq = binomial(q - 1, r - 1);
    let mut matrix = ExactMatrix::zeros(n_eq * d, binomial(q, r));
    let mut row_labels = Vec::with_capacity(n_eq * d);
    for m in colex_subsets(r - 1, q - 1) {
        let block = colex_rank(m.elems()) * d;
        for i in (1..=q).filter(|&i| !m.contains(i)) {
            let (t, p) = m.insert(i)?;
            let Some(vec) = v.get_ref(&t) else { continue };
            let sign = rule.term_sign(i, p);
            let col = colex_rank(t.elems());
            for (c, x) in vec.iter().enumerate() {
                if !x.is_zero() {
                    matrix.set(block + c, col, sign.apply(x.clone()));
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
    Ok(SystemMatrix {
        matrix,
        row_labels,
        col_labels: colex_subsets(r, q).collect(),
    })
}

/// `det^{S^r}` of a configuration with `q = r·d`.
pub fn det_sr(v: &VectorConfiguration) -> Result<ExactRational> {
    det_sr_with(v, SignRule::Standard)
}

pub fn det_sr_with(v: &VectorConfiguration, rule: SignRule) -> Result<ExactRational> {
    det_exact(&build_system_matrix_with(v, rule)?.matrix)
}

/// Left-hand side of `E_M` evaluated at `(λ, v)`. Any `q ≥ r` is accepted.
pub fn equation_value(
    v: &VectorConfiguration,
    lambda: &CoefficientSystem,
    m: &SortedTuple,
    rule: SignRule,
) -> Result<Vector> {
    check_shapes(v, lambda)?;
    let mut acc = zero_vector(v.d());
    for i in (1..=v.q()).filter(|&i| !m.contains(i)) {
        let (t, p) = m.insert(i)?;
        let (Some(vec), Some(l)) = (v.get_ref(&t), lambda.get_sorted(&t)) else {
            continue;
        };
        let coeff = rule.term_sign(i, p).apply(l.clone());
        for (a, x) in acc.iter_mut().zip(vec) {
            *a += &coeff * x;
        }
    }
    Ok(acc)
}

fn check_shapes(v: &VectorConfiguration, lambda: &CoefficientSystem) -> Result<()> {
    if v.r() != lambda.r() || v.q() != lambda.q() {
        return Err(Error::ArityMismatch(alloc::format!(
            "configuration (r = {}, q = {}) against coefficients (r = {}, q = {})",
            v.r(),
            v.q(),
            lambda.r(),
            lambda.q()
        )));
    }
    Ok(())
}

/// Evaluates every dependence relation at `(λ, v)` and reports whether all of them
/// vanish exactly. Holds identically under [`SignRule::Standard`].
pub fn check_dependence_relations(v: &VectorConfiguration, lambda: &CoefficientSystem) -> Result<bool> {
    check_dependence_relations_with(v, lambda, SignRule::Standard)
}

/// As [`check_dependence_relations`], with the equations built under `rule`. The
/// relation coefficients themselves always use the standard pattern.
pub fn check_dependence_relations_with(
    v: &VectorConfiguration,
    lambda: &CoefficientSystem,
    rule: SignRule,
) -> Result<bool> {
    check_shapes(v, lambda)?;
    let (r, q) = (v.r(), v.q());
    if r < 2 {
        return Ok(true);
    }
    for n in colex_subsets(r - 2, q) {
        let mut total = zero_vector(v.d());
        for j in (1..=q).filter(|&j| !n.contains(j)) {
            let (m, p) = n.insert(j)?;
            let e = equation_value(v, lambda, &m, rule)?;
            let s = Sign::from_parity(j + p);
            for (a, x) in total.iter_mut().zip(e) {
                *a += s.apply(x);
            }
        }
        if total.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(-1)^(j + p)` with `p` the slot of `j` in `sorted(N ∪ {j})`; the relation weight.
pub fn relation_sign(n: &SortedTuple, j: usize) -> Result<Sign> {
    Ok(Sign::from_parity(j + insert_position(n, j)?))
}
