//! Force systems, coefficient systems and vector configurations.
//!
//! All three store values on sorted tuples only. Antisymmetry of forces and symmetry
//! of coefficients live in the accessors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::combinat::{binomial, colex_subsets, sort_with_sign, Sign, SortedTuple};
use crate::error::{domain, Error, Result};
use crate::exact::ExactRational;

pub type Vector = Vec<ExactRational>;

pub fn zero_vector(d: usize) -> Vector {
    vec![ExactRational::zero(); d]
}

/// Shared storage: arity-`r` sorted tuples over `{1..q}` to vectors of length `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct VectorTable {
    r: usize,
    d: usize,
    q: usize,
    entries: BTreeMap<SortedTuple, Vector>,
}

impl VectorTable {
    fn new(r: usize, d: usize, q: usize) -> Result<Self> {
        if r == 0 || d == 0 {
            return Err(domain!("arity and dimension must be positive (r = {r}, d = {d})"));
        }
        if q < r {
            return Err(domain!("need at least r = {r} particles, got q = {q}"));
        }
        Ok(VectorTable {
            r,
            d,
            q,
            entries: BTreeMap::new(),
        })
    }

    fn check_key(&self, t: &SortedTuple) -> Result<()> {
        if t.arity() != self.r {
            return Err(Error::ArityMismatch(alloc::format!(
                "tuple {} has arity {}, expected {}",
                t,
                t.arity(),
                self.r
            )));
        }
        if t.largest().is_some_and(|m| m > self.q) {
            return Err(domain!("tuple {} exceeds q = {}", t, self.q));
        }
        Ok(())
    }

    fn set(&mut self, t: SortedTuple, v: Vector) -> Result<()> {
        self.check_key(&t)?;
        if v.len() != self.d {
            return Err(Error::Shape(alloc::format!(
                "vector of length {} in dimension {}",
                v.len(),
                self.d
            )));
        }
        if v.iter().all(Zero::is_zero) {
            self.entries.remove(&t);
        } else {
            self.entries.insert(t, v);
        }
        Ok(())
    }

    fn get(&self, t: &SortedTuple) -> Vector {
        self.entries
            .get(t)
            .cloned()
            .unwrap_or_else(|| zero_vector(self.d))
    }

    fn get_ref(&self, t: &SortedTuple) -> Option<&Vector> {
        self.entries.get(t)
    }
}

/// The vectors `v_{i_1..i_r}` that `det^{S^r}` consumes. Absent tuples read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorConfiguration(VectorTable);

impl VectorConfiguration {
    pub fn new(r: usize, d: usize, q: usize) -> Result<Self> {
        VectorTable::new(r, d, q).map(VectorConfiguration)
    }

    /// Fills every tuple from `f`, visiting tuples in colex order.
    pub fn from_fn(
        r: usize,
        d: usize,
        q: usize,
        mut f: impl FnMut(&SortedTuple) -> Vector,
    ) -> Result<Self> {
        let mut v = Self::new(r, d, q)?;
        for t in colex_subsets(r, q) {
            let x = f(&t);
            v.set(t, x)?;
        }
        Ok(v)
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn d(&self) -> usize {
        self.0.d
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    pub fn set(&mut self, t: SortedTuple, v: Vector) -> Result<()> {
        self.0.set(t, v)
    }

    /// The stored vector, or zero.
    pub fn get(&self, t: &SortedTuple) -> Vector {
        self.0.get(t)
    }

    pub(crate) fn get_ref(&self, t: &SortedTuple) -> Option<&Vector> {
        self.0.get_ref(t)
    }

    /// Nonzero entries, ordered by tuple.
    pub fn iter(&self) -> impl Iterator<Item = (&SortedTuple, &Vector)> {
        self.0.entries.iter()
    }

    /// Applies `f` to every stored vector.
    pub fn map_vectors(&self, mut f: impl FnMut(&SortedTuple, &Vector) -> Vector) -> Result<Self> {
        let mut out = Self::new(self.r(), self.d(), self.q())?;
        for (t, v) in self.iter() {
            out.set(t.clone(), f(t, v))?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.entries.is_empty()
    }
}

/// An antisymmetric family of forces `F_{i_1..i_r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForceSystem(VectorTable);

impl ForceSystem {
    pub fn new(r: usize, d: usize, q: usize) -> Result<Self> {
        VectorTable::new(r, d, q).map(ForceSystem)
    }

    pub fn from_fn(
        r: usize,
        d: usize,
        q: usize,
        mut f: impl FnMut(&SortedTuple) -> Vector,
    ) -> Result<Self> {
        let mut s = Self::new(r, d, q)?;
        for t in colex_subsets(r, q) {
            let x = f(&t);
            s.set_canonical(t, x)?;
        }
        Ok(s)
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn d(&self) -> usize {
        self.0.d
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    /// Sets `F` on a sorted tuple; every permutation follows by antisymmetry.
    pub fn set_canonical(&mut self, t: SortedTuple, v: Vector) -> Result<()> {
        self.0.set(t, v)
    }

    pub fn canonical(&self, t: &SortedTuple) -> Vector {
        self.0.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SortedTuple, &Vector)> {
        self.0.entries.iter()
    }

    /// `F` at an arbitrary index sequence: zero on repeats, otherwise the sign of the
    /// sorting permutation times the canonical entry.
    pub fn force_get(&self, idx: &[usize]) -> Result<Vector> {
        Ok(match self.signed_entry(idx)? {
            Some((sign, v)) => v.iter().map(|x| sign.apply(x.clone())).collect(),
            None => zero_vector(self.d()),
        })
    }

    /// The canonical entry and its sign, or `None` for a zero read.
    pub(crate) fn signed_entry(&self, idx: &[usize]) -> Result<Option<(Sign, &Vector)>> {
        if idx.len() != self.r() {
            return Err(Error::ArityMismatch(alloc::format!(
                "{} indices for arity {}",
                idx.len(),
                self.r()
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > self.q()) {
            return Err(domain!("index {} outside 1..={}", bad, self.q()));
        }
        Ok(sort_with_sign(idx).and_then(|(t, sign)| self.0.get_ref(&t).map(|v| (sign, v))))
    }

    /// `v = (-1)^(i_1 + .. + i_r + r - 1) F` on every sorted tuple.
    pub fn to_configuration(&self) -> VectorConfiguration {
        let r = self.r();
        let mut table = self.0.clone();
        for (t, v) in table.entries.iter_mut() {
            if Sign::from_parity(t.sum() + r - 1) == Sign::Minus {
                for x in v.iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
        }
        VectorConfiguration(table)
    }

    /// Inverse of [`ForceSystem::to_configuration`]; the sign map is an involution.
    pub fn from_configuration(v: &VectorConfiguration) -> ForceSystem {
        let back = ForceSystem(v.0.clone()).to_configuration();
        ForceSystem(back.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.entries.is_empty()
    }
}

/// A fully symmetric scalar family `λ_{i_1..i_r}`; the unknowns of every system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSystem {
    r: usize,
    q: usize,
    canonical: BTreeMap<SortedTuple, ExactRational>,
}

impl CoefficientSystem {
    pub fn new(r: usize, q: usize) -> Result<Self> {
        if r == 0 || q < r {
            return Err(domain!("invalid coefficient shape r = {r}, q = {q}"));
        }
        Ok(CoefficientSystem {
            r,
            q,
            canonical: BTreeMap::new(),
        })
    }

    /// Reads a vector indexed by the colex order of the r-subsets of `{1..q}`.
    pub fn from_colex_vector(r: usize, q: usize, values: &[ExactRational]) -> Result<Self> {
        let mut c = Self::new(r, q)?;
        if values.len() != binomial(q, r) {
            return Err(Error::Shape(alloc::format!(
                "{} values for C({}, {}) = {} unknowns",
                values.len(),
                q,
                r,
                binomial(q, r)
            )));
        }
        for (t, x) in colex_subsets(r, q).zip(values) {
            c.set(t, x.clone())?;
        }
        Ok(c)
    }

    pub fn to_colex_vector(&self) -> Vec<ExactRational> {
        colex_subsets(self.r, self.q)
            .map(|t| self.canonical.get(&t).cloned().unwrap_or_default())
            .collect()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn set(&mut self, t: SortedTuple, x: ExactRational) -> Result<()> {
        if t.arity() != self.r || t.largest().is_some_and(|m| m > self.q) {
            return Err(domain!("tuple {} does not index λ with r = {}, q = {}", t, self.r, self.q));
        }
        if x.is_zero() {
            self.canonical.remove(&t);
        } else {
            self.canonical.insert(t, x);
        }
        Ok(())
    }

    /// `λ` at an arbitrary ordering of distinct indices.
    pub fn coeff_get(&self, idx: &[usize]) -> Result<ExactRational> {
        if idx.len() != self.r {
            return Err(Error::ArityMismatch(alloc::format!(
                "{} indices for arity {}",
                idx.len(),
                self.r
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > self.q) {
            return Err(domain!("index {} outside 1..={}", bad, self.q));
        }
        let (t, _) =
            sort_with_sign(idx).ok_or_else(|| domain!("repeated index in {:?}", idx))?;
        Ok(self.canonical.get(&t).cloned().unwrap_or_default())
    }

    pub(crate) fn get_sorted(&self, t: &SortedTuple) -> Option<&ExactRational> {
        self.canonical.get(t)
    }

    /// Nonzero values, ordered by tuple.
    pub fn iter(&self) -> impl Iterator<Item = (&SortedTuple, &ExactRational)> {
        self.canonical.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical.is_empty()
    }
}
