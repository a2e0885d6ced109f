//! JSON tensor files.
//!
//! ```json
//! { "r": 2, "d": 2, "q": 4, "kind": "forces",
//!   "entries": [ { "idx": [1, 2], "vec": ["3", "-1/2"] } ] }
//! ```
//!
//! Scalars are strings: a decimal integer or `p/q` with `q > 0`. Missing tuples are
//! zero vectors; duplicated tuples are rejected. Serialization is canonical: entries
//! in colex order of `idx`, zero vectors dropped, fractions in lowest terms.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use requilibrium::combinat::{subset_rank, SortedTuple};
use requilibrium::tensors::Vector;
use requilibrium::{ExactRational, ForceSystem, VectorConfiguration};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Forces,
    Configuration,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Forces => "forces",
            Kind::Configuration => "configuration",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub idx: Vec<usize>,
    pub vec: Vec<String>,
}

/// The on-disk form, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub r: usize,
    pub d: usize,
    pub q: usize,
    pub kind: Kind,
    pub entries: Vec<Entry>,
}

/// A validated tensor file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tensor {
    Forces(ForceSystem),
    Configuration(VectorConfiguration),
}

impl Tensor {
    pub fn kind(&self) -> Kind {
        match self {
            Tensor::Forces(_) => Kind::Forces,
            Tensor::Configuration(_) => Kind::Configuration,
        }
    }

    /// The configuration `det^{S^r}` is evaluated on; forces go through the sign map.
    pub fn configuration(&self) -> VectorConfiguration {
        match self {
            Tensor::Forces(f) => f.to_configuration(),
            Tensor::Configuration(v) => v.clone(),
        }
    }
}

/// Parses `-?digits` or `-?digits/digits` with a positive denominator.
pub fn parse_scalar(s: &str) -> Result<ExactRational, CliError> {
    let bad = || CliError::Input(format!("invalid scalar {s:?}: expected an integer or p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if let Some(den) = den {
        if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if den.bytes().all(|b| b == b'0') {
            return Err(CliError::Input(format!("invalid scalar {s:?}: zero denominator")));
        }
    }
    ExactRational::from_str(s).map_err(|_| bad())
}

pub fn format_scalar(x: &ExactRational) -> String {
    x.to_string()
}

fn format_vector(v: &Vector) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

impl TensorFile {
    pub fn from_json(text: &str) -> Result<TensorFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed tensor file: {e}")))
    }

    pub fn read(path: &Path) -> Result<TensorFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tensor files always serialize");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<Tensor, CliError> {
        let (r, d, q) = (self.r, self.d, self.q);
        if r == 0 || d == 0 || q == 0 {
            return Err(CliError::Input("r, d and q must be positive".into()));
        }
        if q < r {
            return Err(CliError::Input(format!("q = {q} is smaller than r = {r}")));
        }
        let mut seen = HashSet::new();
        let mut parsed = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if e.idx.len() != r {
                return Err(CliError::Input(format!("idx {:?} does not have length r = {r}", e.idx)));
            }
            let t = SortedTuple::new(e.idx.clone())
                .map_err(|_| CliError::Input(format!("idx {:?} is not strictly increasing and 1-based", e.idx)))?;
            if t.largest().is_some_and(|m| m > q) {
                return Err(CliError::Input(format!("idx {:?} exceeds q = {q}", e.idx)));
            }
            if !seen.insert(t.clone()) {
                return Err(CliError::Input(format!("duplicate idx {:?}", e.idx)));
            }
            if e.vec.len() != d {
                return Err(CliError::Input(format!("vec for idx {:?} does not have length d = {d}", e.idx)));
            }
            let v = e.vec.iter().map(|s| parse_scalar(s)).collect::<Result<Vector, _>>()?;
            parsed.push((t, v));
        }
        let wrap = |e: requilibrium::Error| CliError::Input(e.to_string());
        Ok(match self.kind {
            Kind::Forces => {
                let mut f = ForceSystem::new(r, d, q).map_err(wrap)?;
                for (t, v) in parsed {
                    f.set_canonical(t, v).map_err(wrap)?;
                }
                Tensor::Forces(f)
            }
            Kind::Configuration => {
                let mut c = VectorConfiguration::new(r, d, q).map_err(wrap)?;
                for (t, v) in parsed {
                    c.set(t, v).map_err(wrap)?;
                }
                Tensor::Configuration(c)
            }
        })
    }

    pub fn load(path: &Path) -> Result<Tensor, CliError> {
        Self::read(path)?.validate()
    }

    pub fn from_tensor(t: &Tensor) -> TensorFile {
        match t {
            Tensor::Forces(f) => Self::from_forces(f),
            Tensor::Configuration(v) => Self::from_configuration(v),
        }
    }

    pub fn from_forces(f: &ForceSystem) -> TensorFile {
        Self::build(f.r(), f.d(), f.q(), Kind::Forces, f.iter())
    }

    pub fn from_configuration(v: &VectorConfiguration) -> TensorFile {
        Self::build(v.r(), v.d(), v.q(), Kind::Configuration, v.iter())
    }

    fn build<'a>(
        r: usize,
        d: usize,
        q: usize,
        kind: Kind,
        entries: impl Iterator<Item = (&'a SortedTuple, &'a Vector)>,
    ) -> TensorFile {
        let mut entries: Vec<_> = entries.collect();
        entries.sort_by_key(|(t, _)| subset_rank(t, q).expect("tuples are bounded by q"));
        TensorFile {
            r,
            d,
            q,
            kind,
            entries: entries
                .into_iter()
                .map(|(t, v)| Entry {
                    idx: t.elems().to_vec(),
                    vec: format_vector(v),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use requilibrium::exact::{frac, rat};

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("7").unwrap(), rat(7));
        assert_eq!(parse_scalar("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_scalar("0/5").unwrap(), rat(0));
        for bad in ["", "-", "1/0", "1/-2", "+3", "1.5", "a", "1/", "/2", " 1", "1/2/3"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should be rejected");
        }
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&rat(5)), "5");
    }

    #[test]
    fn validation_errors() {
        let base = r#"{"r":2,"d":2,"q":4,"kind":"forces","entries":ENTRIES}"#;
        let with = |e: &str| TensorFile::from_json(&base.replace("ENTRIES", e)).unwrap().validate();
        assert!(with(r#"[{"idx":[1,2],"vec":["1","2"]}]"#).is_ok());
        assert!(with(r#"[{"idx":[2,1],"vec":["1","2"]}]"#).is_err());
        assert!(with(r#"[{"idx":[1,5],"vec":["1","2"]}]"#).is_err());
        assert!(with(r#"[{"idx":[0,1],"vec":["1","2"]}]"#).is_err());
        assert!(with(r#"[{"idx":[1,2,3],"vec":["1","2"]}]"#).is_err());
        assert!(with(r#"[{"idx":[1,2],"vec":["1"]}]"#).is_err());
        assert!(with(r#"[{"idx":[1,2],"vec":["1","x"]}]"#).is_err());
        assert!(with(r#"[{"idx":[1,2],"vec":["1","2"]},{"idx":[1,2],"vec":["0","0"]}]"#).is_err());
        assert!(TensorFile::from_json(r#"{"r":2}"#).is_err());
        assert!(TensorFile::from_json(&base.replace("ENTRIES", "[]").replace("forces", "matrix")).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let text = r#"{"kind":"configuration","q":4,"d":2,"r":2,"entries":[
            {"idx":[3,4],"vec":["2/4","0"]},
            {"idx":[1,2],"vec":["0","0"]},
            {"idx":[1,3],"vec":["-6/3","1"]}]}"#;
        let tensor = TensorFile::from_json(text).unwrap().validate().unwrap();
        let canon = TensorFile::from_tensor(&tensor);
        assert_eq!(canon.entries.len(), 2);
        assert_eq!(canon.entries[0].idx, vec![1, 3]);
        assert_eq!(canon.entries[0].vec, vec!["-2", "1"]);
        assert_eq!(canon.entries[1].vec, vec!["1/2", "0"]);
        let again = TensorFile::from_tensor(&TensorFile::from_json(&canon.to_json()).unwrap().validate().unwrap());
        assert_eq!(again, canon);
    }
}
