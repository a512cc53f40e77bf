//! Fair proximity matrices and the update orders they induce.
//!
//! The proximity matrix stores a geometric closeness value for every neuron
//! pair; smaller means closer. Activity started at one neuron visits the
//! rest in an order derived from these values. A freshly simulated network
//! has no geometry, so [`ProximityMatrix::fair`] synthesizes one: the first
//! neuron's row encodes the canonical order `1, 2, ..., n` with values kept
//! near `n/2` so no other pair is crowded out, and every remaining pair gets
//! an unbiased random draw below the `n - 1` bound.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, RngExt};

use crate::error::{Error, Result};

/// Pairwise geometric proximity values; larger value = weaker proximity.
///
/// Invariants: symmetric, zero diagonal, off-diagonal entries in
/// `(0, n-1]`, and row 0 strictly increasing left to right so that sorting
/// it reproduces the canonical neuron order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityMatrix {
    entries: Vec<f64>, // row-major n*n
    n: usize,
}

impl ProximityMatrix {
    /// Synthesizes a fair matrix for a simulated `n`-neuron network.
    ///
    /// Row 0 gets the canonical-chain values `n/2 + (c-1)/n` for columns
    /// `c = 1..n`: strictly increasing, all within one unit of `n/2`, so the
    /// canonical order is preserved without giving neuron 0 an outsized
    /// pull. Every other pair draws uniformly from the open interval
    /// `(0, n-1)` and is mirrored for symmetry.
    pub fn fair(n: usize, rng: &mut impl Rng) -> Result<Self> {
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        let mut entries = vec![0.0; n * n];
        let half = n as f64 / 2.0;
        for c in 1..n {
            let v = half + (c - 1) as f64 / n as f64;
            entries[c] = v; // row 0
            entries[c * n] = v; // column 0
        }
        let max = (n - 1) as f64;
        for i in 1..n {
            for j in (i + 1)..n {
                let v = loop {
                    let v: f64 = rng.random_range(0.0..max);
                    if v > 0.0 {
                        break v;
                    }
                };
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Ok(Self { entries, n })
    }

    /// Builds from explicit rows, validating every invariant.
    #[allow(clippy::needless_range_loop)] // (i, j) and (j, i) are compared
    pub fn from_entries(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        let max = (n - 1) as f64;
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                let v = rows[i][j];
                if v != rows[j][i] {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        value: v,
                        mirror: rows[j][i],
                    });
                }
                if !v.is_finite() || v <= 0.0 || v > max {
                    return Err(Error::ProximityOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        max,
                    });
                }
            }
        }
        for c in 2..n {
            if rows[0][c] <= rows[0][c - 1] {
                return Err(Error::ChainRowNotSorted { col: c });
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(Self { entries, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// The order in which activity started at `start` (0-based) visits the
    /// network.
    pub fn update_order(&self, start: usize, strategy: OrderStrategy) -> Result<UpdateOrder> {
        let n = self.n;
        if start >= n {
            return Err(Error::NeuronOutOfRange { index: start, n });
        }
        let mut order = Vec::with_capacity(n);
        order.push(start);
        match strategy {
            OrderStrategy::RowSort => {
                let mut rest: Vec<usize> = (0..n).filter(|&j| j != start).collect();
                // ties broken by the smaller neuron index
                rest.sort_by(|&a, &b| {
                    self.entry(start, a)
                        .total_cmp(&self.entry(start, b))
                        .then(a.cmp(&b))
                });
                order.extend(rest);
            }
            OrderStrategy::GreedyChain => {
                let mut visited = vec![false; n];
                visited[start] = true;
                let mut current = start;
                for _ in 1..n {
                    let next = (0..n)
                        .filter(|&j| !visited[j])
                        .min_by(|&a, &b| {
                            self.entry(current, a)
                                .total_cmp(&self.entry(current, b))
                                .then(a.cmp(&b))
                        })
                        .expect("unvisited neuron remains");
                    visited[next] = true;
                    order.push(next);
                    current = next;
                }
            }
        }
        Ok(UpdateOrder { order })
    }

    /// Plain-text form: first line `n`, then `n` rows of `n` values.
    /// Values print in the shortest round-trip decimal form.
    pub fn to_writer(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "{}", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(w, " ")?;
                }
                write!(w, "{}", self.entry(i, j))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn from_reader(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        let first = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing size line".into(),
        })??;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("bad size {first:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next().ok_or(Error::Parse {
                line: i + 2,
                msg: format!("expected {n} matrix rows"),
            })??;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse().map_err(|_| Error::Parse {
                        line: i + 2,
                        msg: format!("bad value {tok:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse {
                    line: i + 2,
                    msg: format!("expected {n} values, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        Self::from_entries(rows)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut file = File::create(path).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })?;
        self.to_writer(&mut file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_reader(BufReader::new(file))
    }
}

/// How activity spreads from the start neuron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderStrategy {
    /// Sort the start neuron's proximity row ascending.
    #[default]
    RowSort,
    /// Repeatedly hop to the nearest unvisited neuron.
    GreedyChain,
}

impl fmt::Display for OrderStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderStrategy::RowSort => "row-sort",
            OrderStrategy::GreedyChain => "greedy-chain",
        })
    }
}

impl FromStr for OrderStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row-sort" => Ok(OrderStrategy::RowSort),
            "greedy-chain" => Ok(OrderStrategy::GreedyChain),
            other => Err(Error::InvalidConfig(format!(
                "unknown order strategy {other:?}, expected row-sort or greedy-chain"
            ))),
        }
    }
}

/// A permutation of the neurons `0..n`, beginning with the start neuron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateOrder {
    order: Vec<usize>,
}

impl UpdateOrder {
    /// Validates that `order` is a bijection on `0..n`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("index {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("index {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Self { order })
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        Ok(Self {
            order: (0..n).collect(),
        })
    }

    pub fn start(&self) -> usize {
        self.order[0]
    }

    #[allow(clippy::len_without_is_empty)] // orders are never empty
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// Neuron occupying position `pos` in the order.
    #[inline]
    pub fn at(&self, pos: usize) -> usize {
        self.order[pos]
    }
}

/// Renders 1-based and space-separated, e.g. `2 5 3 1 4 6`.
impl fmt::Display for UpdateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, &neuron) in self.order.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", neuron + 1)?;
        }
        Ok(())
    }
}
