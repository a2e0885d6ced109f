//! Generators for the worked examples, the SL_d action, and seeded witness search.
//!
//! All randomness comes from `ChaCha8Rng`. A trial `k` of a search with seed `s` uses
//! the generator seeded with `s` on stream `k`, so trials are independent of each other
//! and of how they are scheduled.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{binomial, colex_subsets, SortedTuple};
use crate::detsr::det_sr;
use crate::error::{domain, Error, Result};
use crate::exact::{kernel_basis, rat, ExactMatrix, ExactRational};
use crate::tensors::{CoefficientSystem, ForceSystem, Vector, VectorConfiguration};

/// Generator for stream `stream` under `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_vector<R: Rng>(d: usize, bound: i64, rng: &mut R) -> Vector {
    (0..d).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// Uniform integer entries in `[-bound, bound]`, tuples filled in colex order.
pub fn random_configuration<R: Rng>(
    r: usize,
    d: usize,
    q: usize,
    bound: i64,
    rng: &mut R,
) -> Result<VectorConfiguration> {
    VectorConfiguration::from_fn(r, d, q, |_| random_vector(d, bound, rng))
}

pub fn random_forces<R: Rng>(r: usize, d: usize, q: usize, bound: i64, rng: &mut R) -> Result<ForceSystem> {
    ForceSystem::from_fn(r, d, q, |_| random_vector(d, bound, rng))
}

pub fn random_points<R: Rng>(count: usize, dim: usize, bound: i64, rng: &mut R) -> Vec<Vector> {
    (0..count).map(|_| random_vector(dim, bound, rng)).collect()
}

/// Sets every r-subset of the `(r+1)`-set `clique` to `shared`.
pub fn share_clique(v: &mut VectorConfiguration, clique: &SortedTuple, shared: &Vector) -> Result<()> {
    if clique.arity() != v.r() + 1 {
        return Err(Error::ArityMismatch(alloc::format!(
            "clique {} needs {} elements",
            clique,
            v.r() + 1
        )));
    }
    for &x in clique.elems() {
        let t = clique.remove(x).expect("element of clique");
        v.set(t, shared.clone())?;
    }
    Ok(())
}

fn sub(a: &Vector, b: &Vector) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn cross(a: &Vector, b: &Vector) -> Vector {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// `u ∧ w` in the basis `e_a ∧ e_b`, `a < b`, ordered colexicographically:
/// `(1,2), (1,3), (2,3), (1,4), ...`.
pub fn wedge(u: &Vector, w: &Vector) -> Vector {
    let s = u.len();
    colex_subsets(2, s)
        .map(|t| {
            let (a, b) = (t.elems()[0] - 1, t.elems()[1] - 1);
            &u[a] * &w[b] - &u[b] * &w[a]
        })
        .collect()
}

/// `F_{i,j,k} = (p_j - p_i) × (p_k - p_i)` for points in 3-space; `r = 3`, `d = 3`.
pub fn cross_product_forces(points: &[Vector]) -> Result<ForceSystem> {
    if let Some(p) = points.iter().find(|p| p.len() != 3) {
        return Err(domain!("cross products need 3-dimensional points, got dimension {}", p.len()));
    }
    if points.len() < 3 {
        return Err(domain!("need at least 3 points, got {}", points.len()));
    }
    ForceSystem::from_fn(3, 3, points.len(), |t| {
        let [i, j, k] = [t.elems()[0] - 1, t.elems()[1] - 1, t.elems()[2] - 1];
        cross(&sub(&points[j], &points[i]), &sub(&points[k], &points[i]))
    })
}

/// `F_{i,j,k} = v_i∧v_j + v_j∧v_k + v_k∧v_i` in `Λ²` of an `s`-space, so
/// `d = C(s, 2)` and `q = 3d` vectors are required.
pub fn wedge_forces(s: usize, vectors: &[Vector]) -> Result<ForceSystem> {
    if s < 3 {
        return Err(domain!("wedge example needs s >= 3, got {s}"));
    }
    let d = binomial(s, 2);
    if vectors.len() != 3 * d {
        return Err(domain!("need 3*C({s},2) = {} vectors, got {}", 3 * d, vectors.len()));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != s) {
        return Err(domain!("vector of dimension {} in an s = {s} space", v.len()));
    }
    ForceSystem::from_fn(3, d, 3 * d, |t| {
        let [i, j, k] = [t.elems()[0] - 1, t.elems()[1] - 1, t.elems()[2] - 1];
        let (a, b, c) = (
            wedge(&vectors[i], &vectors[j]),
            wedge(&vectors[j], &vectors[k]),
            wedge(&vectors[k], &vectors[i]),
        );
        a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect()
    })
}

/// `v_{i,j} = p_j - p_i` from `2d` points in `d`-space.
pub fn difference_configuration(points: &[Vector]) -> Result<VectorConfiguration> {
    let d = points.first().map_or(0, Vec::len);
    if d == 0 || points.len() != 2 * d {
        return Err(domain!("need 2d points in d-space, got {} points of dimension {}", points.len(), d));
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(domain!("points of mixed dimension"));
    }
    VectorConfiguration::from_fn(2, d, 2 * d, |t| {
        sub(&points[t.elems()[1] - 1], &points[t.elems()[0] - 1])
    })
}

fn support(x: &[ExactRational]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

/// Scalars `λ_i`, not all zero, with `Σ λ_i p_i = 0`, `Σ λ_i = 0`, and at least three
/// nonzero entries.
///
/// Candidates are the kernel basis vectors, then the combinations `Σ_k c^k b_k` for
/// `c = 1, 2, ...`. Each coordinate of that combination is a polynomial in `c` of
/// degree below the kernel dimension, so after `q·dim + 1` values of `c` the candidate
/// has reached the largest support any kernel vector can have.
pub fn affine_dependence_lambda(points: &[Vector]) -> Result<Vec<ExactRational>> {
    let q = points.len();
    let s = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != s) {
        return Err(domain!("points of mixed dimension"));
    }
    let mut m = ExactMatrix::zeros(s + 1, q);
    for (j, p) in points.iter().enumerate() {
        for (i, x) in p.iter().enumerate() {
            m.set(i, j, x.clone());
        }
        m.set(s, j, ExactRational::one());
    }
    let basis = kernel_basis(&m);
    if basis.is_empty() {
        return Err(Error::NotFound(alloc::format!(
            "{q} points in {s}-space admit no affine dependence"
        )));
    }
    if let Some(b) = basis.iter().find(|b| support(b) >= 3) {
        return Ok(b.clone());
    }
    for c in 1..=(q * basis.len() + 1) as i64 {
        let mut combo = vec![ExactRational::zero(); q];
        let mut weight = ExactRational::one();
        for b in &basis {
            weight *= rat(c);
            for (acc, x) in combo.iter_mut().zip(b) {
                *acc += &weight * x;
            }
        }
        if support(&combo) >= 3 {
            return Ok(combo);
        }
    }
    Err(Error::NotFound(
        "every affine dependence has fewer than three nonzero coefficients".into(),
    ))
}

/// `λ_T = Π_{i∈T} λ_i` over all r-subsets `T`.
pub fn product_coefficients(lambdas: &[ExactRational], r: usize) -> Result<CoefficientSystem> {
    let q = lambdas.len();
    let mut c = CoefficientSystem::new(r, q)?;
    for t in colex_subsets(r, q) {
        let x = t
            .elems()
            .iter()
            .fold(ExactRational::one(), |acc, &i| acc * &lambdas[i - 1]);
        c.set(t, x)?;
    }
    Ok(c)
}

/// A `d×d` integer matrix of determinant 1: a product of `3d` elementary shears with
/// multipliers in `{-2, -1, 1, 2}`, chosen by `seed`.
pub fn random_unimodular(d: usize, seed: u64) -> ExactMatrix {
    let mut g = ExactMatrix::identity(d);
    if d < 2 {
        return g;
    }
    let mut rng = seeded_rng(seed, 0);
    for _ in 0..3 * d {
        let target = rng.gen_range(0..d);
        let mut source = rng.gen_range(0..d - 1);
        if source >= target {
            source += 1;
        }
        let c = rat([-2, -1, 1, 2][rng.gen_range(0..4)]);
        for col in 0..d {
            let updated = g.get(target, col) + &c * g.get(source, col);
            g.set(target, col, updated);
        }
    }
    g
}

/// Applies `g` to every vector of the configuration.
pub fn sl_transform(v: &VectorConfiguration, g: &ExactMatrix) -> Result<VectorConfiguration> {
    if g.rows() != v.d() || g.cols() != v.d() {
        return Err(Error::Shape(alloc::format!(
            "{}x{} matrix acting on dimension {}",
            g.rows(),
            g.cols(),
            v.d()
        )));
    }
    v.map_vectors(|_, x| g.mul_vec(x).expect("shape checked"))
}

/// Outcome of a randomized search for configurations with `det^{S^r} ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub r: usize,
    pub d: usize,
    pub bound: i64,
    pub seed: u64,
    pub trials: u64,
    pub nonzero_count: u64,
    /// Lowest-index trial whose determinant was nonzero.
    pub first_witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub trial: u64,
    pub configuration: VectorConfiguration,
    pub det: ExactRational,
}

impl WitnessReport {
    /// Combines reports over disjoint trial ranges of the same search.
    pub fn merge(mut self, other: WitnessReport) -> WitnessReport {
        debug_assert_eq!((self.r, self.d, self.bound, self.seed), (other.r, other.d, other.bound, other.seed));
        self.trials += other.trials;
        self.nonzero_count += other.nonzero_count;
        self.first_witness = match (self.first_witness, other.first_witness) {
            (Some(a), Some(b)) => Some(if a.trial <= b.trial { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Configuration and determinant of trial `trial`.
pub fn witness_trial(
    r: usize,
    d: usize,
    bound: i64,
    seed: u64,
    trial: u64,
) -> Result<(VectorConfiguration, ExactRational)> {
    let mut rng = seeded_rng(seed, trial);
    let v = random_configuration(r, d, r * d, bound, &mut rng)?;
    let det = det_sr(&v)?;
    Ok((v, det))
}

/// Runs the trials in `range` sequentially.
pub fn witness_search_range(
    r: usize,
    d: usize,
    bound: i64,
    seed: u64,
    range: Range<u64>,
) -> Result<WitnessReport> {
    if bound < 1 {
        return Err(domain!("bound must be at least 1"));
    }
    let mut report = WitnessReport {
        r,
        d,
        bound,
        seed,
        trials: 0,
        nonzero_count: 0,
        first_witness: None,
    };
    for trial in range {
        let (configuration, det) = witness_trial(r, d, bound, seed, trial)?;
        report.trials += 1;
        if !det.is_zero() {
            report.nonzero_count += 1;
            if report.first_witness.is_none() {
                report.first_witness = Some(Witness {
                    trial,
                    configuration,
                    det,
                });
            }
        }
    }
    Ok(report)
}

pub fn witness_search(r: usize, d: usize, trials: u64, bound: i64, seed: u64) -> Result<WitnessReport> {
    if trials == 0 {
        return Err(domain!("trials must be at least 1"));
    }
    witness_search_range(r, d, bound, seed, 0..trials)
}
