//! Single-neuron retrieval: fragment spreading through the permuted
//! triangular matrix, and exhaustive generator scanning.
//!
//! Retrieval clamps a stimulus onto one neuron and grows a fragment one
//! neuron per step along an update order. Relabeling the interconnection
//! matrix so that row order equals activity order makes its strictly lower
//! triangle reach exactly the already-assigned prefix, so each step
//! thresholds one new component and never touches earlier ones. A neuron
//! that regenerates a fed memory this way is that memory's generator.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hebbian::{sgn, BMatrix, BipolarVector, TMatrix};
use crate::proximity::{OrderStrategy, ProximityMatrix, UpdateOrder};

/// Sign of the stimulus clamped onto the start neuron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub const BOTH: [Polarity; 2] = [Polarity::Plus, Polarity::Minus];

    #[inline]
    pub fn sign(self) -> i8 {
        match self {
            Polarity::Plus => 1,
            Polarity::Minus => -1,
        }
    }

    pub fn from_sign(s: i8) -> Result<Self> {
        match s {
            1 => Ok(Polarity::Plus),
            -1 => Ok(Polarity::Minus),
            other => Err(Error::NotBipolar {
                index: 0,
                value: other as i64,
            }),
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Plus => "+1",
            Polarity::Minus => "-1",
        })
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "+" => Ok(Polarity::Plus),
            "-1" | "-" => Ok(Polarity::Minus),
            other => Err(Error::InvalidConfig(format!(
                "unknown polarity {other:?}, expected +1 or -1"
            ))),
        }
    }
}

/// Which start polarities a generator scan tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolarityPolicy {
    Plus,
    Minus,
    #[default]
    Both,
}

impl PolarityPolicy {
    pub fn polarities(self) -> &'static [Polarity] {
        match self {
            PolarityPolicy::Plus => &[Polarity::Plus],
            PolarityPolicy::Minus => &[Polarity::Minus],
            PolarityPolicy::Both => &Polarity::BOTH,
        }
    }
}

impl fmt::Display for PolarityPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarityPolicy::Plus => "+1",
            PolarityPolicy::Minus => "-1",
            PolarityPolicy::Both => "both",
        })
    }
}

impl FromStr for PolarityPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "+" => Ok(PolarityPolicy::Plus),
            "-1" | "-" => Ok(PolarityPolicy::Minus),
            "both" => Ok(PolarityPolicy::Both),
            other => Err(Error::InvalidConfig(format!(
                "unknown polarity {other:?}, expected +1, -1 or both"
            ))),
        }
    }
}

impl TMatrix {
    /// Relabels rows and columns so that position `a` holds neuron
    /// `order.at(a)`: `T'[a][b] = T[order[a]][order[b]]`. Symmetry and the
    /// zero diagonal survive relabeling.
    pub fn permute(&self, order: &UpdateOrder) -> Result<TMatrix> {
        let n = self.n();
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: order.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            let src = order.at(a);
            for b in 0..n {
                entries.push(self.entry(src, order.at(b)));
            }
        }
        Ok(TMatrix::from_raw_unchecked(entries, n, self.memory_count()))
    }
}

/// A growing prefix of a pattern being regenerated along an update order.
///
/// The fragment starts as the clamped polarity on the order's first neuron
/// and gains exactly one component per [`step`](Fragment::step); components
/// already assigned are never recomputed.
#[derive(Debug, Clone)]
pub struct Fragment {
    values: Vec<i8>, // one sign per completed position of the order
    order: UpdateOrder,
    zero_sums: usize,
}

impl Fragment {
    /// Length-1 fragment: the start neuron clamped to `polarity`.
    pub fn seed(order: UpdateOrder, polarity: Polarity) -> Self {
        let mut values = Vec::with_capacity(order.len());
        values.push(polarity.sign());
        Self {
            values,
            order,
            zero_sums: 0,
        }
    }

    /// Assigns the next component by thresholding the triangular row against
    /// the prefix: `f[i] = sgn(sum of b[i][j] * f[j] for j < i)`.
    ///
    /// Returns the new component, or `None` once all positions are assigned.
    /// `b` must live in the same coordinates as the order (row order =
    /// activity order).
    pub fn step(&mut self, b: &BMatrix) -> Result<Option<i8>> {
        if b.n() != self.order.len() {
            return Err(Error::DimensionMismatch {
                expected: self.order.len(),
                actual: b.n(),
            });
        }
        let i = self.values.len();
        if i == self.order.len() {
            return Ok(None);
        }
        let row = b.row(i);
        let sum: i64 = self
            .values
            .iter()
            .zip(row)
            .map(|(&f, &w)| f as i64 * w as i64)
            .sum();
        if sum == 0 {
            self.zero_sums += 1;
        }
        let v = sgn(sum);
        self.values.push(v);
        Ok(Some(v))
    }

    /// Components assigned so far, in order coordinates.
    pub fn assigned(&self) -> &[i8] {
        &self.values
    }

    #[allow(clippy::len_without_is_empty)] // always holds at least the seed
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_complete(&self) -> bool {
        self.values.len() == self.order.len()
    }

    pub fn order(&self) -> &UpdateOrder {
        &self.order
    }

    /// Number of steps whose thresholded sum was exactly zero. When this is
    /// zero, flipping the seeded polarity negates the whole output.
    pub fn zero_sum_count(&self) -> usize {
        self.zero_sums
    }

    /// Relabels the completed fragment back to original neuron indices.
    pub fn into_pattern(self) -> Result<BipolarVector> {
        if !self.is_complete() {
            return Err(Error::FragmentIncomplete {
                assigned: self.values.len(),
                n: self.order.len(),
            });
        }
        let mut signs = vec![0i8; self.order.len()];
        for (pos, &sign) in self.values.iter().enumerate() {
            signs[self.order.at(pos)] = sign;
        }
        BipolarVector::from_signs(signs)
    }
}

impl BMatrix {
    /// Runs the fragment recursion to completion in this matrix's own
    /// coordinates and returns the full pattern.
    pub fn spread(&self, polarity: Polarity) -> BipolarVector {
        self.spread_traced(polarity).0
    }

    /// Like [`spread`](Self::spread) but also reports how many step sums
    /// were exactly zero.
    pub fn spread_traced(&self, polarity: Polarity) -> (BipolarVector, usize) {
        let order = UpdateOrder::identity(self.n()).expect("matrix dimension is at least 2");
        let mut fragment = Fragment::seed(order, polarity);
        while fragment
            .step(self)
            .expect("identity order matches dimension")
            .is_some()
        {}
        let zero_sums = fragment.zero_sum_count();
        let pattern = fragment.into_pattern().expect("fragment ran to completion");
        (pattern, zero_sums)
    }
}

/// Retrieves the pattern generated by clamping `polarity` onto neuron
/// `start` (0-based).
///
/// Composes the update order, the relabeled interconnection matrix, its
/// lower triangle, and the fragment recursion, then maps the result back to
/// original neuron indices. The output at `start` always equals the clamped
/// polarity.
pub fn retrieve_from(
    t: &TMatrix,
    p: &ProximityMatrix,
    start: usize,
    polarity: Polarity,
    strategy: OrderStrategy,
) -> Result<BipolarVector> {
    if p.n() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            actual: p.n(),
        });
    }
    let order = p.update_order(start, strategy)?;
    let permuted = t.permute(&order)?;
    let b = permuted.lower_triangular();
    let mut fragment = Fragment::seed(order, polarity);
    while fragment.step(&b)?.is_some() {}
    fragment.into_pattern()
}

/// Per-neuron, per-polarity record of which fed memory a start regenerates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    records: Vec<GeneratorRecord>,
    memory_count: usize,
}

/// Matches for one neuron's two possible start polarities; memory indices
/// are 0-based feed positions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub plus: Option<usize>,
    pub minus: Option<usize>,
}

impl GeneratorRecord {
    pub fn get(&self, polarity: Polarity) -> Option<usize> {
        match polarity {
            Polarity::Plus => self.plus,
            Polarity::Minus => self.minus,
        }
    }

    /// First match, `+1` polarity taking precedence.
    pub fn any(&self) -> Option<usize> {
        self.plus.or(self.minus)
    }
}

impl GeneratorMap {
    pub fn n(&self) -> usize {
        self.records.len()
    }

    /// Number of memories that were fed when the scan ran.
    pub fn memory_count(&self) -> usize {
        self.memory_count
    }

    pub fn records(&self) -> &[GeneratorRecord] {
        &self.records
    }

    pub fn record(&self, neuron: usize) -> &GeneratorRecord {
        &self.records[neuron]
    }

    /// True when either polarity at this neuron regenerates some memory.
    pub fn is_generator(&self, neuron: usize) -> bool {
        self.records[neuron].plus.is_some() || self.records[neuron].minus.is_some()
    }

    /// Number of distinct fed memories regenerated by at least one start.
    /// Duplicate feeds collapse because matching always records the first
    /// equal memory.
    pub fn retrieved_count(&self) -> usize {
        let mut seen = vec![false; self.memory_count];
        for r in &self.records {
            for m in [r.plus, r.minus].into_iter().flatten() {
                seen[m] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// Fraction of neurons that generate no memory from either polarity.
    pub fn non_generator_fraction(&self) -> f64 {
        let non = (0..self.n()).filter(|&i| !self.is_generator(i)).count();
        non as f64 / self.n() as f64
    }

    /// Per fed memory, the fraction of neurons that generate it.
    pub fn per_memory_fractions(&self) -> Vec<f64> {
        let n = self.n() as f64;
        (0..self.memory_count)
            .map(|m| {
                let hits = self
                    .records
                    .iter()
                    .filter(|r| r.plus == Some(m) || r.minus == Some(m))
                    .count();
                hits as f64 / n
            })
            .collect()
    }
}

/// Options governing a generator scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub strategy: OrderStrategy,
    pub polarity: PolarityPolicy,
    /// When set, an output equal to a fed memory's complement also counts as
    /// generating that memory. Exact matches take precedence.
    pub match_complement: bool,
}

/// Index of the fed memory that `output` regenerates, if any.
///
/// Exact matches are found first, in feed order; complement matches are
/// considered only when `match_complement` is set, and never shadow an
/// exact match.
pub fn match_memory(
    output: &BipolarVector,
    fed: &[BipolarVector],
    match_complement: bool,
) -> Option<usize> {
    if let Some(idx) = fed.iter().position(|m| m == output) {
        return Some(idx);
    }
    if match_complement {
        let flipped = output.complement();
        return fed.iter().position(|m| *m == flipped);
    }
    None
}

/// Runs retrieval from every neuron and every configured polarity, recording
/// which fed memory, if any, each start regenerates exactly.
pub fn scan_generators(
    t: &TMatrix,
    p: &ProximityMatrix,
    fed: &[BipolarVector],
    opts: &ScanOptions,
) -> Result<GeneratorMap> {
    let n = t.n();
    if p.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: p.n(),
        });
    }
    for m in fed {
        if m.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: m.len(),
            });
        }
    }
    let mut records = vec![GeneratorRecord::default(); n];
    for (neuron, record) in records.iter_mut().enumerate() {
        for &polarity in opts.polarity.polarities() {
            let output = retrieve_from(t, p, neuron, polarity, opts.strategy)?;
            let matched = match_memory(&output, fed, opts.match_complement);
            match polarity {
                Polarity::Plus => record.plus = matched,
                Polarity::Minus => record.minus = matched,
            }
        }
    }
    Ok(GeneratorMap {
        records,
        memory_count: fed.len(),
    })
}
