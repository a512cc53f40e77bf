//! Hebbian feedback networks with single-neuron generator retrieval.
//!
//! A network of `n` bipolar neurons learns memories by summing outer
//! products into a symmetric, zero-diagonal interconnection matrix. Two
//! notions of recall live side by side:
//!
//! * the classical fixed-point test — a memory is *stored* when one
//!   synchronous pass of thresholded feedback reproduces it exactly
//!   ([`TMatrix::is_stored`]);
//! * single-neuron retrieval — clamp one neuron to a polarity, order the
//!   remaining neurons by synaptic proximity, and let activity spread one
//!   neuron at a time through the strictly lower triangle of the relabeled
//!   matrix ([`retrieve_from`]). A neuron whose spread regenerates a fed
//!   memory is that memory's *generator*.
//!
//! [`run_experiment`] feeds memories incrementally and averages both
//! counts over seeded trials, producing capacity curves; the [`report`]
//! module renders curves as CSV and generator maps as JSON and SVG. All
//! randomness flows through per-trial counter-mode streams, so every
//! result is reproducible bit for bit regardless of thread schedule.
//!
//! ```
//! use bmatrix_core::{
//!     retrieve_from, BipolarVector, OrderStrategy, Polarity, ProximityMatrix, TMatrix,
//! };
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//!
//! let mut rng = ChaCha8Rng::seed_from_u64(1);
//! let memory = BipolarVector::random(8, &mut rng)?;
//! let network = TMatrix::zeros(8)?.accumulate(&memory)?;
//! let proximity = ProximityMatrix::fair(8, &mut rng)?;
//!
//! // a single stored memory is regenerated from any start neuron
//! let polarity = Polarity::from_sign(memory.get(3))?;
//! let out = retrieve_from(&network, &proximity, 3, polarity, OrderStrategy::RowSort)?;
//! assert_eq!(out, memory);
//! # Ok::<(), bmatrix_core::Error>(())
//! ```

pub mod error;
pub mod experiment;
pub mod hebbian;
pub mod proximity;
pub mod report;
pub mod retrieval;

pub use error::{Error, Result};
pub use experiment::{
    default_max_memories, generator_snapshot, run_experiment, run_trial, seeded_network,
    CapacityCurves, CapacityPoint, ExperimentConfig, GeneratorSnapshot, TrialPoint,
};
pub use hebbian::{sgn, BMatrix, BipolarVector, TMatrix};
pub use proximity::{OrderStrategy, ProximityMatrix, UpdateOrder};
pub use report::{
    emit_capacity_csv, emit_generator_report, emit_generator_svg, PolygonLayout, CHORD_LIMIT,
    PALETTE,
};
pub use retrieval::{
    match_memory, retrieve_from, scan_generators, Fragment, GeneratorMap, GeneratorRecord,
    Polarity, PolarityPolicy, ScanOptions,
};
