//! Instance constructions and algorithm transformers linking Max-π / Min-π
//! to the string guessing games.

pub mod anti;
pub mod asg;
pub mod cliques;
pub mod layered;
pub mod obligatory;

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::engine::OnlineInstance;
use crate::error::{Error, Result};
use crate::optimum::{clique_or_independent, HereditaryFamily};
use crate::property::PropertySpec;

/// Whether the property holds on all independent sets (edges are deleted to
/// plant a solution) or on all cliques (edges are added instead).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Independent,
    Clique,
}

impl Orientation {
    /// Picks the orientation for a hereditary property, preferring
    /// independent sets when both families pass.
    pub fn for_property(p: &PropertySpec) -> Result<Self> {
        Ok(match clique_or_independent(p, 8)? {
            HereditaryFamily::Cliques => Orientation::Clique,
            HereditaryFamily::IndependentSets | HereditaryFamily::Both => Orientation::Independent,
        })
    }
}

/// An instance made of consecutive equal-size layers, each with at most one
/// special vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredInstance {
    pub instance: OnlineInstance,
    pub layer_size: usize,
    /// Special vertex of each layer (absolute revelation position).
    pub special: Vec<Option<usize>>,
    pub construction: String,
}

impl LayeredInstance {
    pub fn layer_count(&self) -> usize {
        self.special.len()
    }

    pub fn layer(&self, i: usize) -> Range<usize> {
        i * self.layer_size..(i + 1) * self.layer_size
    }

    pub fn special_vertices(&self) -> Vec<usize> {
        self.special.iter().flatten().copied().collect()
    }
}

/// Checks that a guessing string uses symbols `1..=sigma`.
pub(crate) fn check_symbols(q: &[u32], sigma: usize) -> Result<()> {
    match q.iter().position(|&s| s == 0 || s as usize > sigma) {
        Some(i) => Err(Error::Input(format!("position {}: symbol {} outside 1..={sigma}", i + 1, q[i]))),
        None => Ok(()),
    }
}
