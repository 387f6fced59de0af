//! Certificate persistence and re-verification.
//!
//! A certificate is a JSON record of an edge coloring (red edges explicit,
//! blue implicit) together with the claim it witnesses. The digest covers
//! the canonical payload — schema version, claim, and red edges sorted by
//! edge index — so regenerating a coloring with the same parameters yields
//! the same digest regardless of provenance.

use std::fmt;
use std::str::FromStr;

use kneser_core::coloring::{Color, EdgeColoring};
use kneser_core::combin::RSet;
use kneser_core::kneser::KneserGraph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Schema version this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Errors raised while loading or validating certificates.
#[derive(Debug, thiserror::Error)]
pub enum CertError {
    /// The JSON was syntactically malformed.
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// Schema version mismatch.
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    SchemaVersion(u32),
    /// An edge entry failed validation.
    #[error("bad red edge #{index}: {message}")]
    BadEdge {
        /// 0-based index into `red_edges`.
        index: usize,
        /// What was wrong.
        message: String,
    },
    /// The stored digest does not match the canonical payload.
    #[error("digest mismatch: stored {stored}, computed {computed}")]
    DigestMismatch {
        /// Digest stored in the file.
        stored: String,
        /// Digest recomputed from the payload.
        computed: String,
    },
    /// A core-level error (graph construction, parameter validation).
    #[error(transparent)]
    Core(#[from] kneser_core::Error),
}

/// What a certificate claims about its coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Claim {
    /// No red `K_s` and no blue `K_t`.
    #[serde(rename = "good-coloring")]
    GoodColoring {
        /// Ground-set size.
        n: u8,
        /// Subset size.
        r: u8,
        /// Red clique size excluded.
        s: u8,
        /// Blue clique size excluded.
        t: u8,
    },
    /// No blue triangle and no red induced `KG(m, r)`.
    #[serde(rename = "no-blue-triangle-no-red-induced")]
    NoBlueTriangleNoRedInduced {
        /// Ground-set size.
        n: u8,
        /// Subset size.
        r: u8,
        /// Forbidden induced ground-set size.
        m: u8,
    },
    /// Construction output: no monochromatic induced `KG(m, r)` in either
    /// color.
    #[serde(rename = "construction")]
    Construction {
        /// Ground-set size.
        n: u8,
        /// Subset size.
        r: u8,
        /// Forbidden induced ground-set size.
        m: u8,
    },
}

impl Claim {
    /// Graph parameters `(n, r)` of the claimed host graph.
    pub fn graph_params(&self) -> (u8, u8) {
        match *self {
            Claim::GoodColoring { n, r, .. }
            | Claim::NoBlueTriangleNoRedInduced { n, r, .. }
            | Claim::Construction { n, r, .. } => (n, r),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Claim::GoodColoring { n, r, s, t } => {
                write!(f, "good coloring of KG({n},{r}) for ({s},{t})")
            }
            Claim::NoBlueTriangleNoRedInduced { n, r, m } => write!(
                f,
                "no blue triangle and no red induced KG({m},{r}) in KG({n},{r})"
            ),
            Claim::Construction { n, r, m } => write!(
                f,
                "no monochromatic induced KG({m},{r}) in KG({n},{r})"
            ),
        }
    }
}

/// Where a certificate came from. Not covered by the digest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Generating component (solver, construction name, transcription).
    pub generator: String,
    /// Seed used, when randomness was involved.
    pub seed: Option<u64>,
    /// Ramsey table snapshot in effect.
    pub snapshot: String,
    /// Creation time (RFC 3339 or epoch seconds; informational only).
    pub timestamp: String,
}

/// A serializable record of a coloring plus the claim it witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Schema version.
    pub schema_version: u32,
    /// The claim.
    pub claim: Claim,
    /// Red edges as textual set pairs, sorted by edge index; blue edges
    /// are the complement.
    pub red_edges: Vec<[String; 2]>,
    /// Provenance metadata.
    pub provenance: Provenance,
    /// `sha256:<hex>` over the canonical payload.
    pub digest: String,
}

#[derive(Serialize)]
struct DigestPayload<'a> {
    schema_version: u32,
    claim: &'a Claim,
    red_edges: &'a [[String; 2]],
}

fn compute_digest(claim: &Claim, red_edges: &[[String; 2]]) -> String {
    let payload = DigestPayload {
        schema_version: SCHEMA_VERSION,
        claim,
        red_edges,
    };
    let bytes = serde_json::to_vec(&payload).expect("payload serializes");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

impl Certificate {
    /// Builds a certificate from a coloring; red edges are emitted in edge
    /// index order, which is the canonical serialization.
    pub fn from_coloring(
        claim: Claim,
        coloring: &EdgeColoring,
        provenance: Provenance,
    ) -> Result<Self, CertError> {
        let (n, r) = claim.graph_params();
        let g = coloring.graph();
        if g.n() != n || g.r() != r {
            return Err(CertError::Core(kneser_core::Error::GroundSetMismatch));
        }
        let mut red_edges = Vec::with_capacity(coloring.red_count());
        for e in coloring.red_edge_indices() {
            let (u, v) = g.edge(e);
            red_edges.push([g.vertex(u).to_string(), g.vertex(v).to_string()]);
        }
        let digest = compute_digest(&claim, &red_edges);
        Ok(Certificate {
            schema_version: SCHEMA_VERSION,
            claim,
            red_edges,
            provenance,
            digest,
        })
    }

    /// Parses and fully validates a certificate: schema version, edge
    /// syntax, disjointness, duplicates, canonical order, and digest.
    pub fn load(json: &str) -> Result<Self, CertError> {
        let cert: Certificate = serde_json::from_str(json)?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(CertError::SchemaVersion(cert.schema_version));
        }
        let (graph, edge_indices) = cert.decode_edges()?;
        // Canonical order: ascending edge index, no duplicates.
        for (i, w) in edge_indices.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(CertError::BadEdge {
                    index: i + 1,
                    message: if w[1] == w[0] {
                        "duplicate edge".into()
                    } else {
                        "edges not sorted by edge index".into()
                    },
                });
            }
        }
        let computed = compute_digest(&cert.claim, &cert.red_edges);
        if computed != cert.digest {
            return Err(CertError::DigestMismatch {
                stored: cert.digest.clone(),
                computed,
            });
        }
        drop(graph);
        Ok(cert)
    }

    /// Canonical pretty-printed JSON.
    pub fn save(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificate serializes");
        out.push('\n');
        out
    }

    fn decode_edges(&self) -> Result<(KneserGraph, Vec<u32>), CertError> {
        let (n, r) = self.claim.graph_params();
        let graph = KneserGraph::build(n, r)?;
        let mut indices = Vec::with_capacity(self.red_edges.len());
        for (i, [a, b]) in self.red_edges.iter().enumerate() {
            let bad = |message: String| CertError::BadEdge { index: i, message };
            let sa = RSet::from_str(a)
                .and_then(|s| RSet::new(&s.elements(), n))
                .map_err(|e| bad(format!("{a}: {e}")))?;
            let sb = RSet::from_str(b)
                .and_then(|s| RSet::new(&s.elements(), n))
                .map_err(|e| bad(format!("{b}: {e}")))?;
            let (ra, rb) = (
                graph.rank_of(&sa).map_err(|e| bad(e.to_string()))?,
                graph.rank_of(&sb).map_err(|e| bad(e.to_string()))?,
            );
            let e = graph
                .edge_index(ra, rb)
                .ok_or_else(|| bad(format!("{a} and {b} are not disjoint")))?;
            indices.push(e);
        }
        Ok((graph, indices))
    }

    /// Reconstructs the coloring this certificate records.
    pub fn coloring(&self) -> Result<EdgeColoring, CertError> {
        let (graph, edge_indices) = self.decode_edges()?;
        let mut coloring = EdgeColoring::uniform(graph, Color::Blue);
        for e in edge_indices {
            coloring.set(e, Color::Red);
        }
        Ok(coloring)
    }
}

/// Outcome of re-verifying a certificate's claim.
#[derive(Clone, Debug)]
pub struct VerdictReport {
    /// Whether every check passed.
    pub pass: bool,
    /// The verified claim.
    pub claim: Claim,
    /// One line per executed check.
    pub checks: Vec<String>,
    /// The first counterexample, on failure.
    pub counterexample: Option<String>,
}

struct VerifyState {
    checks: Vec<String>,
    counterexample: Option<String>,
}

impl VerifyState {
    fn mono_clique(&mut self, coloring: &EdgeColoring, color: Color, k: u8) -> bool {
        match coloring.find_mono_clique(color, k as usize) {
            None => {
                self.checks.push(format!("no {color} K_{k}: ok"));
                true
            }
            Some(w) => {
                let names: Vec<String> =
                    w.clique.members().iter().map(|s| s.to_string()).collect();
                self.checks
                    .push(format!("{color} K_{k} found: {}", names.join(" ")));
                self.counterexample
                    .get_or_insert_with(|| format!("{color} K_{k}: {}", names.join(" ")));
                false
            }
        }
    }

    fn mono_induced(&mut self, coloring: &EdgeColoring, color: Color, m: u8) -> bool {
        let r = coloring.graph().r();
        match coloring.find_mono_induced_kneser(color, m) {
            None => {
                self.checks.push(format!("no {color} induced KG({m},{r}): ok"));
                true
            }
            Some(s) => {
                self.checks
                    .push(format!("{color} induced KG({m},{r}) on ground set {s}"));
                self.counterexample
                    .get_or_insert_with(|| format!("{color} induced subgraph on {s}"));
                false
            }
        }
    }
}

/// Re-verifies a certificate by dispatching to the appropriate predicates.
/// A failed claim is a verdict, not an error.
pub fn verify(cert: &Certificate) -> Result<VerdictReport, CertError> {
    let coloring = cert.coloring()?;
    let mut state = VerifyState {
        checks: Vec::new(),
        counterexample: None,
    };

    let pass = match cert.claim {
        Claim::GoodColoring { s, t, .. } => {
            let red_ok = state.mono_clique(&coloring, Color::Red, s);
            let blue_ok = state.mono_clique(&coloring, Color::Blue, t);
            red_ok && blue_ok
        }
        Claim::NoBlueTriangleNoRedInduced { m, .. } => {
            let blue_ok = state.mono_clique(&coloring, Color::Blue, 3);
            let red_ok = state.mono_induced(&coloring, Color::Red, m);
            blue_ok && red_ok
        }
        Claim::Construction { m, .. } => {
            let red_ok = state.mono_induced(&coloring, Color::Red, m);
            let blue_ok = state.mono_induced(&coloring, Color::Blue, m);
            red_ok && blue_ok
        }
    };

    Ok(VerdictReport {
        pass,
        claim: cert.claim,
        checks: state.checks,
        counterexample: state.counterexample,
    })
}

/// Structural spot-check of the bundled `KG(8,2)` coloring
/// (`data/appendix-a.json`): with `A` the pairs inside `[3]`, `B` the pairs
/// inside `[8] \ [3]`, and `C` the rest, all `A`-to-`C` edges and all
/// `B`-internal edges are red while all `A`-to-`B` edges are blue. The
/// parameters are fixed to that bundled certificate.
pub fn appendix_a_structure_check(cert: &Certificate) -> Result<bool, CertError> {
    if cert.claim.graph_params() != (8, 2) {
        return Ok(false);
    }
    let coloring = cert.coloring()?;
    let g = coloring.graph();
    let class_of = |v: u32| -> u8 {
        let m = g.vertex_mask(v);
        let low = 0b111u64; // elements 1..3
        if m & !low == 0 {
            0 // A
        } else if m & low == 0 {
            1 // B
        } else {
            2 // C
        }
    };
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge(e);
        let pair = {
            let (a, b) = (class_of(u), class_of(v));
            (a.min(b), a.max(b))
        };
        let color = coloring.color_of(e);
        let ok = match pair {
            (0, 2) | (1, 1) => color == Color::Red,
            (0, 1) => color == Color::Blue,
            _ => true, // unconstrained classes
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The bundled good coloring of `KG(8,2)`.
pub const APPENDIX_A_JSON: &str = include_str!("../data/appendix-a.json");
