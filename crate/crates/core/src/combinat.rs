//! Sorted index tuples, colexicographic ranking and permutation signs.
//!
//! Particle indices are 1-based everywhere in the public API. Ranks are 0-based and
//! are what the matrix builders use as row and column addresses.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Mul, Neg};

use crate::error::{domain, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn from_parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Multiplies `x` by this sign.
    pub fn apply<T: Neg<Output = T>>(self, x: T) -> T {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A strictly increasing list of 1-based particle indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortedTuple(Vec<usize>);

impl SortedTuple {
    pub fn new(elems: Vec<usize>) -> Result<Self> {
        if elems.contains(&0) {
            return Err(domain!("tuple {:?} contains index 0; indices are 1-based", elems));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain!("tuple {:?} is not strictly increasing", elems));
        }
        Ok(SortedTuple(elems))
    }

    pub fn empty() -> Self {
        SortedTuple(Vec::new())
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `self ∪ {x}` together with the 1-based slot `x` lands in.
    pub fn insert(&self, x: usize) -> Result<(SortedTuple, usize)> {
        let p = insert_position(self, x)?;
        let mut elems = Vec::with_capacity(self.0.len() + 1);
        elems.extend_from_slice(&self.0[..p - 1]);
        elems.push(x);
        elems.extend_from_slice(&self.0[p - 1..]);
        Ok((SortedTuple(elems), p))
    }

    /// `self \ {x}`; `None` when `x` is not an element.
    pub fn remove(&self, x: usize) -> Option<SortedTuple> {
        let pos = self.0.binary_search(&x).ok()?;
        let mut elems = self.0.clone();
        elems.remove(pos);
        Some(SortedTuple(elems))
    }
}

impl fmt::Display for SortedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// 0-based colexicographic rank of `t` among the `|t|`-subsets of `{1..n}`.
pub fn subset_rank(t: &SortedTuple, n: usize) -> Result<usize> {
    if let Some(m) = t.largest() {
        if m > n {
            return Err(domain!("tuple {} has an element above n = {}", t, n));
        }
    }
    Ok(colex_rank(t.elems()))
}

/// Rank without the bound check. The colex rank does not depend on `n`.
pub(crate) fn colex_rank(elems: &[usize]) -> usize {
    elems
        .iter()
        .enumerate()
        .map(|(k, &e)| binomial(e - 1, k + 1))
        .sum()
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(rank: usize, k: usize, n: usize) -> Result<SortedTuple> {
    let total = binomial(n, k);
    if rank >= total {
        return Err(domain!("rank {} out of range for C({}, {}) = {}", rank, n, k, total));
    }
    let mut rest = rank;
    let mut elems = Vec::with_capacity(k);
    let mut bound = n;
    for slot in (1..=k).rev() {
        // largest c < bound with C(c, slot) <= rest
        let mut c = bound - 1;
        while binomial(c, slot) > rest {
            c -= 1;
        }
        rest -= binomial(c, slot);
        elems.push(c + 1);
        bound = c;
    }
    elems.reverse();
    Ok(SortedTuple(elems))
}

/// `(-1)^(number of inversions)`.
pub fn permutation_sign(perm: &[i64]) -> Result<Sign> {
    let mut inversions = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] == perm[b] {
                return Err(domain!("repeated entry {} in permutation", perm[a]));
            }
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    Ok(Sign::from_parity(inversions))
}

/// 1-based slot that `x` occupies in `sorted(t ∪ {x})`.
pub fn insert_position(t: &SortedTuple, x: usize) -> Result<usize> {
    match t.0.binary_search(&x) {
        Ok(_) => Err(domain!("{} is already an element of {}", x, t)),
        Err(pos) => Ok(pos + 1),
    }
}

/// Sorts an index sequence and returns the sign of the sorting permutation.
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(SortedTuple, Sign)> {
    let mut elems = idx.to_vec();
    let mut sign = Sign::Plus;
    // insertion sort, one sign flip per adjacent swap
    for a in 1..elems.len() {
        let mut b = a;
        while b > 0 && elems[b - 1] > elems[b] {
            elems.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if elems.windows(2).any(|w| w[0] == w[1]) || elems.first() == Some(&0) {
        return None;
    }
    Some((SortedTuple(elems), sign))
}

/// All `k`-subsets of `{1..n}` in colexicographic order.
pub fn colex_subsets(k: usize, n: usize) -> ColexSubsets {
    let next = if k <= n {
        Some((1..=k).collect())
    } else {
        None
    };
    ColexSubsets { n, next }
}

#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for ColexSubsets {
    type Item = SortedTuple;

    fn next(&mut self) -> Option<SortedTuple> {
        let cur = self.next.take()?;
        let k = cur.len();
        let mut succ = cur.clone();
        // bump the lowest slot that has room below its right neighbour
        let mut j = 0;
        while j < k {
            let cap = if j + 1 < k { succ[j + 1] } else { self.n + 1 };
            if succ[j] + 1 < cap {
                succ[j] += 1;
                for (t, slot) in succ.iter_mut().enumerate().take(j) {
                    *slot = t + 1;
                }
                self.next = Some(succ);
                break;
            }
            j += 1;
        }
        Some(SortedTuple(cur))
    }
}
