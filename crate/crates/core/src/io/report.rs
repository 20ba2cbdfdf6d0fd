//! JSON reports emitted by the command line.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::format_triangulation;
use crate::complex::{FVector, Triangulation};
use crate::moves::MoveRecord;
use crate::reducer::GrowthLedger;

/// SHA-256 of the `.tet` form.
pub fn digest(t: &Triangulation) -> String {
    hex::encode(Sha256::digest(format_triangulation(t).as_bytes()))
}

/// SHA-256 over the unrooted `.tet` forms of several pieces, in order.
pub fn digest_pieces(pieces: &[Triangulation]) -> String {
    let mut h = Sha256::new();
    for p in pieces {
        h.update(format_triangulation(&p.clone().without_root()).as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, Serialize)]
pub struct NucleusReport {
    pub tet: String,
    pub f_vector: FVector,
    pub parent: Option<usize>,
    pub face: Option<[u32; 3]>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub f_vector_before: Option<FVector>,
    pub f_vector_after: Option<FVector>,
    pub output_digest: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<MoveRecord>,
    pub ledger: Option<GrowthLedger>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub nuclei: Vec<NucleusReport>,
    /// Command-specific payload.
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub result: serde_json::Value,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn with_input(mut self, t: &Triangulation) -> Self {
        self.input_digest = Some(digest(t));
        self.f_vector_before = t.f_vector().ok();
        self
    }

    pub fn with_output(mut self, t: &Triangulation) -> Self {
        self.output_digest = Some(digest(t));
        self.f_vector_after = t.f_vector().ok();
        self
    }

    /// Output digest over the pieces a move log produces.
    pub fn with_pieces(mut self, pieces: &[Triangulation]) -> Self {
        self.output_digest = Some(digest_pieces(pieces));
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        }
        .expect("reports serialize")
    }
}
