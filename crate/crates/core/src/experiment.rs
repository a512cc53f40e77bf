//! Incremental-feed capacity experiments.
//!
//! A trial builds one network memory by memory: after each feed it counts
//! how many fed patterns the network stores under the fixed-point test and
//! how many it can regenerate through single-neuron retrieval. Averaging
//! those counts over many trials gives the two capacity curves.
//!
//! Every trial owns an RNG stream derived only from `(master_seed,
//! trial_index)`, and per-trial counts are summed in integers, so results
//! are bit-identical across runs and across any parallel schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hebbian::{BipolarVector, TMatrix};
use crate::proximity::ProximityMatrix;
use crate::retrieval::{scan_generators, GeneratorMap, ScanOptions};

/// Default sweep length for a network of `n` neurons: `ceil(0.6 * n)`,
/// capped at `2 * n`. Long enough to reach past the retrieved-curve peak
/// without dwarfing the interesting region.
pub fn default_max_memories(n: usize) -> usize {
    (3 * n).div_ceil(5).min(2 * n)
}

/// Parameters of a capacity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub neurons: usize,
    /// Memories fed per trial; the curves have one point per count 1..=M.
    pub max_memories: usize,
    pub iterations: u64,
    pub master_seed: u64,
    pub scan: ScanOptions,
}

impl ExperimentConfig {
    /// Configuration with conventional defaults for the given size.
    pub fn new(neurons: usize) -> Self {
        Self {
            neurons,
            max_memories: default_max_memories(neurons),
            iterations: 100,
            master_seed: 0,
            scan: ScanOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.neurons < 2 {
            return Err(Error::NetworkTooSmall(self.neurons));
        }
        if self.max_memories == 0 {
            return Err(Error::InvalidConfig(
                "at least one memory must be fed".into(),
            ));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig(
                "at least one iteration is required".into(),
            ));
        }
        Ok(())
    }
}

/// Counts recorded after feeding `fed` memories in a single trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialPoint {
    pub fed: usize,
    pub stored: u64,
    pub retrieved: u64,
}

/// One point of the averaged curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityPoint {
    pub fed: usize,
    pub stored_mean: f64,
    pub retrieved_mean: f64,
}

/// Mean stored and retrieved counts per number of memories fed.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityCurves {
    points: Vec<CapacityPoint>,
}

impl CapacityCurves {
    pub fn from_points(points: Vec<CapacityPoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[CapacityPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First point attaining the maximum of the retrieved curve.
    pub fn peak_retrieved(&self) -> Option<&CapacityPoint> {
        self.points.iter().reduce(|best, p| {
            if p.retrieved_mean > best.retrieved_mean {
                p
            } else {
                best
            }
        })
    }
}

fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// Runs one trial: a fresh proximity matrix, then `max_memories` random
/// memories fed one at a time, with both counts recorded after each feed.
///
/// The draw order inside the stream is fixed (proximity first, then every
/// memory), so results depend only on `(master_seed, trial_index)`.
pub fn run_trial(config: &ExperimentConfig, trial_index: u64) -> Result<Vec<TrialPoint>> {
    config.validate()?;
    let n = config.neurons;
    let mut rng = trial_rng(config.master_seed, trial_index);
    let p = ProximityMatrix::fair(n, &mut rng)?;
    let memories = (0..config.max_memories)
        .map(|_| BipolarVector::random(n, &mut rng))
        .collect::<Result<Vec<_>>>()?;

    let mut t = TMatrix::zeros(n)?;
    let mut points = Vec::with_capacity(config.max_memories);
    for k in 1..=config.max_memories {
        t = t.accumulate(&memories[k - 1])?;
        let fed = &memories[..k];
        let stored = t.count_stored(fed)? as u64;
        let map = scan_generators(&t, &p, fed, &config.scan)?;
        points.push(TrialPoint {
            fed: k,
            stored,
            retrieved: map.retrieved_count() as u64,
        });
    }
    Ok(points)
}

/// Averages [`run_trial`] over all iterations.
///
/// Trials run in parallel; sums are taken in integers keyed by feed count,
/// so the curves are independent of scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<CapacityCurves> {
    config.validate()?;
    let trials: Vec<Vec<TrialPoint>> = (0..config.iterations)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<_>>()?;

    let mut sums = vec![(0u64, 0u64); config.max_memories];
    for trial in &trials {
        for (acc, point) in sums.iter_mut().zip(trial) {
            acc.0 += point.stored;
            acc.1 += point.retrieved;
        }
    }
    let iters = config.iterations as f64;
    let points = sums
        .into_iter()
        .enumerate()
        .map(|(i, (stored, retrieved))| CapacityPoint {
            fed: i + 1,
            stored_mean: stored as f64 / iters,
            retrieved_mean: retrieved as f64 / iters,
        })
        .collect();
    Ok(CapacityCurves { points })
}

/// A single trained network with its generator scan, kept for rendering
/// and reporting.
#[derive(Debug, Clone)]
pub struct GeneratorSnapshot {
    pub memories: Vec<BipolarVector>,
    pub map: GeneratorMap,
}

/// Draws the trial-0 network for a seed: the proximity matrix first, then
/// `memory_count` random memories, exactly as [`run_trial`] does for trial
/// index 0, and trains on all of them.
///
/// This is the one seeding rule shared by every entry point, so a
/// proximity matrix or network produced from seed `s` anywhere in the
/// library matches trial 0 of an experiment with master seed `s`.
pub fn seeded_network(
    n: usize,
    memory_count: usize,
    seed: u64,
) -> Result<(ProximityMatrix, Vec<BipolarVector>, TMatrix)> {
    let mut rng = trial_rng(seed, 0);
    let p = ProximityMatrix::fair(n, &mut rng)?;
    let memories = (0..memory_count)
        .map(|_| BipolarVector::random(n, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let mut t = TMatrix::zeros(n)?;
    for m in &memories {
        t = t.accumulate(m)?;
    }
    Ok((p, memories, t))
}

/// Trains one network with `memory_count` random memories and scans every
/// neuron for generators. Seeding follows [`seeded_network`].
pub fn generator_snapshot(
    n: usize,
    memory_count: usize,
    seed: u64,
    scan: &ScanOptions,
) -> Result<GeneratorSnapshot> {
    if memory_count == 0 {
        return Err(Error::InvalidConfig(
            "at least one memory must be fed".into(),
        ));
    }
    let (p, memories, t) = seeded_network(n, memory_count, seed)?;
    let map = scan_generators(&t, &p, &memories, scan)?;
    Ok(GeneratorSnapshot { memories, map })
}
