//! Fast invariant suite run by `requilibrium selfcheck`.

use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;

use requilibrium::combinat::{binomial, subset_unrank, SortedTuple};
use requilibrium::detsr::{check_dependence_relations_with, det_sr_with};
use requilibrium::equilibrium::theorem_consistency;
use requilibrium::witnesses::{random_configuration, random_forces, random_vector, seeded_rng, share_clique};
use requilibrium::{Result, SignRule};

use crate::commands::{random_lambda, Outcome};

const BOUND: i64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Property {
    Vanishing,
    Relations,
    Multilinearity,
    Consistency,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Vanishing => "vanishing",
            Property::Relations => "dependence relations",
            Property::Multilinearity => "multilinearity",
            Property::Consistency => "theorem consistency",
        }
    }

    fn stream_seed(self, seed: u64) -> u64 {
        seed.wrapping_mul(4).wrapping_add(self as u64)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub trials: u64,
    pub seed: u64,
    pub parallel: bool,
    pub rule: SignRule,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            trials: 20,
            seed: 0,
            parallel: false,
            rule: SignRule::Standard,
        }
    }
}

fn trial(p: Property, r: usize, d: usize, seed: u64, k: u64, rule: SignRule) -> Result<bool> {
    let q = r * d;
    let mut rng = seeded_rng(p.stream_seed(seed), k);
    match p {
        Property::Vanishing => {
            let mut v = random_configuration(r, d, q, BOUND, &mut rng)?;
            let clique = subset_unrank((k as usize) % binomial(q, r + 1), r + 1, q)?;
            share_clique(&mut v, &clique, &random_vector(d, BOUND, &mut rng))?;
            Ok(det_sr_with(&v, rule)?.is_zero())
        }
        Property::Relations => {
            let v = random_configuration(r, d, q, BOUND, &mut rng)?;
            let lambda = random_lambda(r, q, BOUND, p.stream_seed(seed) ^ 0x5eed, k)
                .expect("shapes are fixed");
            check_dependence_relations_with(&v, &lambda, rule)
        }
        Property::Multilinearity => {
            let base = random_configuration(r, d, q, BOUND, &mut rng)?;
            let slot: SortedTuple = subset_unrank((k as usize) % binomial(q, r), r, q)?;
            let a = random_vector(d, BOUND, &mut rng);
            let b = random_vector(d, BOUND, &mut rng);
            let c = random_vector(1, 7, &mut rng).remove(0);
            let with = |x: Vec<_>| -> Result<_> {
                let mut v = base.clone();
                v.set(slot.clone(), x)?;
                det_sr_with(&v, rule)
            };
            let sum: Vec<_> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let scaled: Vec<_> = a.iter().map(|x| x * &c).collect();
            let (da, db) = (with(a)?, with(b)?);
            Ok(with(sum)? == &da + &db && with(scaled)? == da * c)
        }
        Property::Consistency => {
            let f = random_forces(r, d, q, BOUND, &mut rng)?;
            let report = theorem_consistency(&f)?;
            Ok(report.consistent && report.reduced_equivalent())
        }
    }
}

/// First failing trial index, if any. Identical for sequential and parallel runs.
fn first_failure(p: Property, r: usize, d: usize, o: &Options) -> Result<Option<u64>> {
    let run = |k: u64| trial(p, r, d, o.seed, k, o.rule).map(|ok| (!ok).then_some(k));
    if o.parallel {
        let found: Result<Vec<Option<u64>>> = (0..o.trials).into_par_iter().map(run).collect();
        Ok(found?.into_iter().flatten().min())
    } else {
        for k in 0..o.trials {
            if let Some(k) = run(k)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

pub fn run(o: &Options) -> Result<Outcome> {
    let mut out = String::new();
    let mut failed = Vec::new();
    for (r, d) in [(2, 2), (3, 2)] {
        for p in [
            Property::Vanishing,
            Property::Relations,
            Property::Multilinearity,
            Property::Consistency,
        ] {
            let label = format!("{} r={r} d={d}", p.name());
            match first_failure(p, r, d, o)? {
                None => writeln!(out, "PASS  {label} ({} trials)", o.trials).unwrap(),
                Some(k) => {
                    writeln!(out, "FAIL  {label} (trial {k} of {})", o.trials).unwrap();
                    failed.push(label);
                }
            }
        }
    }
    if failed.is_empty() {
        writeln!(out, "selfcheck: PASS").unwrap();
        Ok(Outcome { text: out, status: 0 })
    } else {
        writeln!(out, "selfcheck: FAIL ({})", failed.join(", ")).unwrap();
        Ok(Outcome { text: out, status: 1 })
    }
}
