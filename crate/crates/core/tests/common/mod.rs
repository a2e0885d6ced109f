//! Oracles shared by the integration tests. Nothing here calls the elimination code.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use requilibrium::exact::{rat, ExactRational};
use requilibrium::tensors::Vector;
use requilibrium::{SortedTuple, VectorConfiguration};

pub fn st(v: &[usize]) -> SortedTuple {
    SortedTuple::new(v.to_vec()).unwrap()
}

pub fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The r = 2, d = 2 system written out from
/// `E_m: Σ_{s<m} (-1)^(s-1) λ_{s,m} v_{s,m} + Σ_{t>m} (-1)^t λ_{m,t} v_{m,t}`
/// for m = 1, 2, 3, columns (1,2),(1,3),(2,3),(1,4),(2,4),(3,4).
pub fn hand_built_r2_d2(v: &VectorConfiguration) -> Vec<Vec<BigInt>> {
    let cols = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)];
    let col = |a: usize, b: usize| cols.iter().position(|&c| c == (a, b)).unwrap();
    let mut rows = Vec::new();
    for m in 1..=3usize {
        for coord in 0..2 {
            let mut row = vec![BigInt::zero(); 6];
            for s in 1..m {
                let x = &v.get(&st(&[s, m]))[coord];
                let sign = if (s - 1) % 2 == 0 { 1 } else { -1 };
                row[col(s, m)] = BigInt::from(sign) * integer(x);
            }
            for t in m + 1..=4 {
                let x = &v.get(&st(&[m, t]))[coord];
                let sign = if t % 2 == 0 { 1 } else { -1 };
                row[col(m, t)] = BigInt::from(sign) * integer(x);
            }
            rows.push(row);
        }
    }
    rows
}

fn integer(x: &ExactRational) -> BigInt {
    assert!(x.is_integer());
    x.to_integer()
}

/// v_{1,2}=e1, v_{1,3}=e2, v_{1,4}=e1, v_{2,3}=e1, v_{2,4}=e2, v_{3,4}=e2.
pub fn basis_pattern_r2_d2() -> VectorConfiguration {
    let (e1, e2) = (ints(&[1, 0]), ints(&[0, 1]));
    let mut v = VectorConfiguration::new(2, 2, 4).unwrap();
    for (t, e) in [
        ([1, 2], &e1),
        ([1, 3], &e2),
        ([1, 4], &e1),
        ([2, 3], &e1),
        ([2, 4], &e2),
        ([3, 4], &e2),
    ] {
        v.set(st(&t), e.clone()).unwrap();
    }
    v
}

/// det^{S^2} of [`basis_pattern_r2_d2`], frozen from the cofactor expansion of
/// [`hand_built_r2_d2`] before the elimination code existed.
pub const BASIS_PATTERN_R2_D2_DET: i64 = -1;
