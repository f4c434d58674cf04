use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::hypergraph::{Hypergraph, IndependenceSequence, MAX_VERTICES};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which minimum a [`SolveSpec`] asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Fewest edges so that every k-set contains an edge.
    T,
    /// As `T`, with exactly `m` connected components.
    #[serde(rename = "T_components")]
    TComponents,
    /// Fewest edges with a prescribed independence sequence.
    TildeT,
    /// Fewest edges of a connected graph with independence number at most `s`.
    ConnAlpha,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::T => "T",
            Family::TComponents => "T_components",
            Family::TildeT => "TildeT",
            Family::ConnAlpha => "ConnAlpha",
        })
    }
}

/// A problem instance. For [`Family::ConnAlpha`] the independence budget
/// `s` travels as the single entry of `sequence`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolveSpec {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub k: Option<usize>,
    pub m: Option<usize>,
    #[serde(rename = "S")]
    pub sequence: Option<IndependenceSequence>,
    pub enumerate_all: bool,
}

impl SolveSpec {
    pub fn t(n: usize, k: usize, r: usize) -> Self {
        Self { family: Family::T, n, r, k: Some(k), m: None, sequence: None, enumerate_all: false }
    }

    pub fn t_components(n: usize, k: usize, r: usize, m: usize) -> Self {
        Self { family: Family::TComponents, n, r, k: Some(k), m: Some(m), sequence: None, enumerate_all: false }
    }

    pub fn tilde_t(n: usize, r: usize, sequence: IndependenceSequence) -> Self {
        Self { family: Family::TildeT, n, r, k: None, m: None, sequence: Some(sequence), enumerate_all: false }
    }

    pub fn conn_alpha(n: usize, r: usize, s: usize) -> Self {
        let sequence = IndependenceSequence::new(vec![s]).ok();
        Self { family: Family::ConnAlpha, n, r, k: None, m: None, sequence, enumerate_all: false }
    }

    pub fn enumerate_all(mut self, yes: bool) -> Self {
        self.enumerate_all = yes;
        self
    }

    /// The independence budget of a `ConnAlpha` spec.
    pub fn budget(&self) -> Option<usize> {
        match (self.family, &self.sequence) {
            (Family::ConnAlpha, Some(s)) if s.len() == 1 => Some(s.entries()[0]),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { family, n, r, k, m, sequence, .. } = self;
        let (n, r) = (*n, *r);
        ensure!(r >= 2, "uniformity r={r} must be at least 2");
        ensure!(n <= MAX_VERTICES, "n={n} exceeds {MAX_VERTICES}");
        match family {
            Family::T | Family::TComponents => {
                ensure!(n >= r, "need n >= r (n={n}, r={r})");
                let Some(k) = *k else {
                    return Err(crate::Error::invalid(format!("family {family} needs k")));
                };
                ensure!(r < k && k <= n, "need r < k <= n (r={r}, k={k}, n={n})");
                ensure!(sequence.is_none(), "family {family} takes no sequence");
                if *family == Family::TComponents {
                    let Some(m) = *m else {
                        return Err(crate::Error::invalid("family T_components needs m"));
                    };
                    ensure!((1..=n).contains(&m), "need 1 <= m <= n (m={m}, n={n})");
                } else {
                    ensure!(m.is_none(), "family T takes no component count");
                }
            }
            Family::TildeT => {
                ensure!(n >= 1, "n must be positive");
                ensure!(k.is_none() && m.is_none(), "family TildeT takes only a sequence");
                let Some(s) = sequence else {
                    return Err(crate::Error::invalid("family TildeT needs a sequence"));
                };
                ensure!(!s.is_empty(), "sequence must be non-empty");
                ensure!(s.len() <= n && s.total() <= n, "sequence {s} does not fit on {n} vertices");
            }
            Family::ConnAlpha => {
                ensure!(n >= 1, "n must be positive");
                ensure!(k.is_none() && m.is_none(), "family ConnAlpha takes only a budget");
                ensure!(self.budget().is_some(), "family ConnAlpha needs a single budget entry s >= 1");
            }
        }
        Ok(())
    }

    /// Canonical cache key `family:n:k:r[:m][:S]`, with `-` for an absent k.
    pub fn key(&self) -> String {
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        let mut key = format!("{}:{}:{}:{}", self.family, self.n, k, self.r);
        if let Some(m) = self.m {
            key.push_str(&format!(":{m}"));
        }
        if let Some(s) = &self.sequence {
            let parts: Vec<String> = s.entries().iter().map(|x| x.to_string()).collect();
            key.push(':');
            key.push_str(&parts.join(","));
        }
        if self.enumerate_all {
            key.push_str(":all");
        }
        key
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
    pub lower_bound_used: u64,
    pub threads: usize,
}

/// A solved instance: the optimum, a witness attaining it and how it was
/// found. `value` and `witness` are absent for infeasible instances; when a
/// budget ran out `optimal` is false and `value` is the best upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: SolveSpec,
    pub value: Option<u64>,
    pub infeasible: bool,
    pub witness: Option<Hypergraph>,
    pub all_witnesses: Option<Vec<Hypergraph>>,
    pub stats: Stats,
    pub optimal: bool,
    pub toolkit_version: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }

    /// Re-check the witness (and every enumerated witness) against the
    /// spec using only hypergraph queries. Returns a description of the
    /// first problem found.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.infeasible {
            if self.witness.is_some() || self.value.is_some() {
                return Err("infeasible certificate carries a value or witness".into());
            }
            return Ok(());
        }
        if let Some(v) = self.value {
            if v < self.stats.lower_bound_used {
                return Err(format!("value {v} below lower bound {}", self.stats.lower_bound_used));
            }
        }
        let Some(w) = &self.witness else {
            return if self.optimal { Err("optimal certificate without witness".into()) } else { Ok(()) };
        };
        if Some(w.edge_count() as u64) != self.value {
            return Err(format!("witness has {} edges, value is {:?}", w.edge_count(), self.value));
        }
        check_witness(&self.spec, w)?;
        if let Some(all) = &self.all_witnesses {
            for h in all {
                check_witness(&self.spec, h)?;
                if Some(h.edge_count() as u64) != self.value {
                    return Err("enumerated witness with non-optimal size".into());
                }
            }
        }
        Ok(())
    }
}

/// Whether `h` meets the constraints of `spec` (ignoring optimality).
pub fn check_witness(spec: &SolveSpec, h: &Hypergraph) -> std::result::Result<(), String> {
    if h.n() != spec.n || h.r() != spec.r {
        return Err(format!("witness is a {}-graph on {} vertices", h.r(), h.n()));
    }
    match spec.family {
        Family::T | Family::TComponents => {
            let k = spec.k.ok_or("missing k")?;
            if !h.satisfies_covering(k).map_err(|e| e.to_string())? {
                return Err(format!("some {k}-set contains no edge"));
            }
            if let Some(m) = spec.m {
                if h.component_count() != m {
                    return Err(format!("witness has {} components, expected {m}", h.component_count()));
                }
            }
        }
        Family::TildeT => {
            let s = spec.sequence.as_ref().ok_or("missing sequence")?;
            let got = h.independence_sequence();
            if &got != s {
                return Err(format!("independence sequence {got} differs from {s}"));
            }
        }
        Family::ConnAlpha => {
            let s = spec.budget().ok_or("missing budget")?;
            if !h.is_connected() {
                return Err("witness is disconnected".into());
            }
            if h.independence_number() > s {
                return Err(format!("independence number exceeds {s}"));
            }
        }
    }
    Ok(())
}
