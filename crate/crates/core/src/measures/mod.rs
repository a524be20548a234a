//! Topological measures over [`GraphView`](crate::graph::GraphView)s.
//!
//! Every measure has an all-vertices form returning one value per vertex,
//! which the featurizer uses for both the targeted vertex and the graph
//! average, and a single-vertex wrapper that validates the vertex.

pub mod cliques;
pub mod flow;
pub mod graph;
pub mod paths;
pub mod spectral;
pub mod vertex;

use crate::error::{Error, Result};
use crate::graph::{GraphView, VertexId};

/// How an edge weight turns into a traversal cost for shortest paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceCost {
    /// Cost `1 / weight`: stronger interaction means closer.
    Reciprocal,
    /// Cost equal to the raw weight.
    Raw,
}

/// Attenuation parameter of the alpha and power centralities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Attenuation {
    /// `fraction / spectral_radius`; when the radius is zero the fraction
    /// itself is used.
    SpectralFraction(f64),
    Fixed(f64),
}

impl Attenuation {
    pub fn resolve(self, spectral_radius: f64) -> f64 {
        match self {
            Attenuation::SpectralFraction(f) if spectral_radius > 1e-12 => f / spectral_radius,
            Attenuation::SpectralFraction(f) => f,
            Attenuation::Fixed(x) => x,
        }
    }
}

/// Free parameters of the measure catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureConfig {
    pub pagerank_damping: f64,
    pub alpha_attenuation: Attenuation,
    pub power_exponent: Attenuation,
    pub iteration_tolerance: f64,
    pub max_iterations: usize,
    pub distance_cost: DistanceCost,
    pub clique_vertex_bound: usize,
    pub community_seed: u64,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            pagerank_damping: 0.85,
            alpha_attenuation: Attenuation::SpectralFraction(0.5),
            power_exponent: Attenuation::SpectralFraction(0.25),
            iteration_tolerance: 1e-10,
            max_iterations: 10_000,
            distance_cost: DistanceCost::Reciprocal,
            clique_vertex_bound: 512,
            community_seed: 0,
        }
    }
}

impl MeasureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.pagerank_damping > 0.0 && self.pagerank_damping < 1.0) {
            return Err(Error::InvalidArgument(format!("damping {} not in (0,1)", self.pagerank_damping)));
        }
        if !(self.iteration_tolerance > 0.0) {
            return Err(Error::InvalidArgument("iteration tolerance must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// A statistic that may be undefined on degenerate input, in which case the
/// value is 0 and `degenerate` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub value: f64,
    pub degenerate: bool,
}

impl Stat {
    pub fn ok(value: f64) -> Stat {
        Stat { value, degenerate: false }
    }

    pub fn undefined() -> Stat {
        Stat { value: 0.0, degenerate: true }
    }
}

pub(crate) fn check_vertex(view: &GraphView, v: VertexId) -> Result<()> {
    if v < view.vertex_count() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v.to_string()))
    }
}

pub(crate) fn unsupported(measure: &str, view: &GraphView) -> Error {
    Error::UnsupportedVariant {
        measure: measure.to_string(),
        variant: format!("{} {:?} view", if view.is_weighted() { "weighted" } else { "unweighted" }, view.mode()),
    }
}

/// Arithmetic mean over the vertex set (0 for an empty graph).
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}
