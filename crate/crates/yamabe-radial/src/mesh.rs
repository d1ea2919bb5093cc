//! Radial meshes: strictly increasing node sets on [r_min, r_max].

use crate::error::{Error, Result};
use crate::geometry::RadialManifold;

/// Minimum element count accepted by the assembler.
pub const MIN_ELEMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialMesh {
    nodes: Vec<f64>,
}

impl RadialMesh {
    /// Uniform mesh with `n_elems` elements.
    pub fn uniform(m: &RadialManifold, n_elems: usize) -> Result<Self> {
        if n_elems < MIN_ELEMENTS {
            return Err(Error::Validation(format!(
                "mesh too coarse: need at least {MIN_ELEMENTS} elements, got {n_elems}"
            )));
        }
        let h = (m.r_max - m.r_min) / n_elems as f64;
        let nodes = (0..=n_elems)
            .map(|i| {
                if i == n_elems {
                    m.r_max
                } else {
                    m.r_min + i as f64 * h
                }
            })
            .collect();
        Ok(Self { nodes })
    }

    /// Geometrically graded mesh: element widths grow by `ratio` away from
    /// r_min, concentrating resolution near the inner edge (used for
    /// bubble-scale features at the center of a ball).
    pub fn graded(m: &RadialManifold, n_elems: usize, ratio: f64) -> Result<Self> {
        if n_elems < MIN_ELEMENTS {
            return Err(Error::Validation(format!(
                "mesh too coarse: need at least {MIN_ELEMENTS} elements, got {n_elems}"
            )));
        }
        if !(ratio > 1.0) {
            return Err(Error::Validation(format!(
                "grading ratio must exceed 1, got {ratio}"
            )));
        }
        // widths h, h·ratio, ..., h·ratio^{N-1} summing to the radial extent
        let total = (ratio.powi(n_elems as i32) - 1.0) / (ratio - 1.0);
        let h0 = (m.r_max - m.r_min) / total;
        let mut nodes = Vec::with_capacity(n_elems + 1);
        let mut r = m.r_min;
        nodes.push(r);
        let mut h = h0;
        for i in 0..n_elems {
            r += h;
            h *= ratio;
            nodes.push(if i + 1 == n_elems { m.r_max } else { r });
        }
        Ok(Self { nodes })
    }

    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < MIN_ELEMENTS + 1 {
            return Err(Error::Validation(format!(
                "mesh too coarse: need at least {} nodes, got {}",
                MIN_ELEMENTS + 1,
                nodes.len()
            )));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Validation("mesh nodes must be strictly increasing".into()));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() - 1
    }
}
