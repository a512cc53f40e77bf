//! Deterministic report emitters: capacity curves as CSV, generator maps
//! as a structured JSON document, and the network polygon as SVG with
//! generator neurons highlighted.
//!
//! Every emitter is a pure function of its inputs, so identical inputs
//! produce byte-identical output. Emitters write to any [`io::Write`]
//! sink; callers that need all-or-nothing files should buffer first.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::CapacityCurves;
use crate::retrieval::GeneratorMap;

/// Fixed fill colors for generator vertices, indexed by fed-memory order
/// (wrapping). Chosen for pairwise distinguishability on white.
pub const PALETTE: [&str; 20] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000", "#aaffc3",
    "#808000", "#ffd8b1", "#000075", "#808080",
];

/// Largest network for which the polygon is drawn with all chords; above
/// this the chord set is quadratic clutter and is omitted.
pub const CHORD_LIMIT: usize = 64;

/// Vertex positions of the network polygon on a square canvas.
///
/// Neuron `i` sits at angle `2*pi*i/n` on a circle centered in the canvas,
/// so positions are a deterministic function of `(i, n, scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonLayout {
    n: usize,
    scale: f64,
}

impl PolygonLayout {
    pub fn new(n: usize, scale: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "canvas scale must be positive and finite, got {scale}"
            )));
        }
        Ok(Self { n, scale })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Canvas coordinates of vertex `i` (0-based).
    pub fn vertex(&self, i: usize) -> (f64, f64) {
        let angle = std::f64::consts::TAU * i as f64 / self.n as f64;
        let center = self.scale / 2.0;
        let radius = 0.85 * center;
        (center + radius * angle.cos(), center + radius * angle.sin())
    }

    /// Vertex marker radius: a fraction of the arc spacing, kept within
    /// visible bounds.
    fn marker_radius(&self) -> f64 {
        let spacing = std::f64::consts::TAU * 0.85 * (self.scale / 2.0) / self.n as f64;
        (0.35 * spacing).clamp(1.5, 0.02 * self.scale)
    }
}

/// Writes the capacity curves as CSV: a `fed,stored_avg,retrieved_avg`
/// header, then one row per feed count with means at six decimal places
/// and LF line endings.
///
/// Empty curves are rejected before anything is written.
pub fn emit_capacity_csv<W: Write>(curves: &CapacityCurves, sink: &mut W) -> Result<()> {
    if curves.is_empty() {
        return Err(Error::EmptyCurves);
    }
    sink.write_all(b"fed,stored_avg,retrieved_avg\n")?;
    for point in curves.points() {
        writeln!(
            sink,
            "{},{:.6},{:.6}",
            point.fed, point.stored_mean, point.retrieved_mean
        )?;
    }
    Ok(())
}

/// Renders the generator map as an SVG polygon graph.
///
/// All vertex pairs are joined by chords when the network has at most
/// [`CHORD_LIMIT`] neurons. Each generator vertex is filled with the
/// palette color of the memory it generates (the `+1` start taking
/// precedence when the two polarities disagree); non-generators are drawn
/// as unfilled outlines.
pub fn emit_generator_svg<W: Write>(
    map: &GeneratorMap,
    layout: &PolygonLayout,
    sink: &mut W,
) -> Result<()> {
    if map.n() != layout.n() {
        return Err(Error::DimensionMismatch {
            expected: layout.n(),
            actual: map.n(),
        });
    }
    let n = layout.n();
    let size = layout.scale();
    writeln!(
        sink,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">"
    )?;
    if n <= CHORD_LIMIT {
        for i in 0..n {
            let (x1, y1) = layout.vertex(i);
            for j in i + 1..n {
                let (x2, y2) = layout.vertex(j);
                writeln!(
                    sink,
                    "  <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" \
                     stroke=\"#cccccc\" stroke-width=\"0.5\"/>"
                )?;
            }
        }
    }
    let r = layout.marker_radius();
    for i in 0..n {
        let (x, y) = layout.vertex(i);
        let fill = match map.record(i).any() {
            Some(memory) => PALETTE[memory % PALETTE.len()],
            None => "none",
        };
        writeln!(
            sink,
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r:.3}\" fill=\"{fill}\" \
             stroke=\"#333333\" stroke-width=\"1\"/>"
        )?;
    }
    writeln!(sink, "</svg>")?;
    Ok(())
}

#[derive(Serialize)]
struct NeuronEntry {
    /// 1-based neuron index.
    neuron: usize,
    polarity: &'static str,
    /// 1-based fed-memory index, or null when this start generates nothing.
    memory: Option<usize>,
}

#[derive(Serialize)]
struct GeneratorDocument {
    n: usize,
    memory_count: usize,
    non_generator_fraction: f64,
    per_memory_generator_fractions: Vec<f64>,
    records: Vec<NeuronEntry>,
}

/// Writes the generator map as a pretty-printed JSON document: overall
/// statistics plus one record per neuron and start polarity. Indices are
/// 1-based to match the printed update orders.
pub fn emit_generator_report<W: Write>(map: &GeneratorMap, sink: &mut W) -> Result<()> {
    let records = map
        .records()
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            [
                NeuronEntry {
                    neuron: i + 1,
                    polarity: "+1",
                    memory: r.plus.map(|m| m + 1),
                },
                NeuronEntry {
                    neuron: i + 1,
                    polarity: "-1",
                    memory: r.minus.map(|m| m + 1),
                },
            ]
        })
        .collect();
    let doc = GeneratorDocument {
        n: map.n(),
        memory_count: map.memory_count(),
        non_generator_fraction: map.non_generator_fraction(),
        per_memory_generator_fractions: map.per_memory_fractions(),
        records,
    };
    serde_json::to_writer_pretty(&mut *sink, &doc).map_err(|e| Error::Io(io::Error::other(e)))?;
    sink.write_all(b"\n")?;
    Ok(())
}
