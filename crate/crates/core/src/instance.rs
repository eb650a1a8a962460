//! Search problem parameters shared by every engine.
//!
//! The graph is always the complete graph on `n` vertices, each carrying
//! `loops` self-loops. Marked vertices are the first `marked` labels; the
//! complete graph is vertex-transitive, so which labels are marked does not
//! change any observable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DomainError;

/// Coin applied at marked vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoinKind {
    /// `C1 = -C0`: a Grover phase flip on the vertex followed by the walk step.
    Flip,
    /// `C1 = -I`.
    Skw,
}

impl CoinKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoinKind::Flip => "flip",
            CoinKind::Skw => "skw",
        }
    }
}

impl fmt::Display for CoinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoinKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "flip" => Ok(CoinKind::Flip),
            "skw" => Ok(CoinKind::Skw),
            other => Err(format!("unknown coin '{other}' (expected flip or skw)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    DiscreteSubspace,
    DiscreteFull,
    ContinuousSubspace,
    ContinuousFull,
}

impl WalkKind {
    pub fn is_discrete(self) -> bool {
        matches!(self, WalkKind::DiscreteSubspace | WalkKind::DiscreteFull)
    }
}

/// A validated search problem. Construct with [`SearchInstance::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct SearchInstance {
    n: usize,
    loops: usize,
    marked: usize,
    coin: CoinKind,
}

/// Unchecked parameters as they arrive from a CLI or a config document.
///
/// `loops` is signed so that a negative count is reported instead of being
/// rejected by the integer parser with a less useful message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInstance {
    pub n: usize,
    #[serde(default)]
    pub loops: i64,
    #[serde(default = "default_marked")]
    pub marked: usize,
    #[serde(default = "default_coin")]
    pub coin: CoinKind,
}

fn default_marked() -> usize {
    1
}

fn default_coin() -> CoinKind {
    CoinKind::Flip
}

impl RawInstance {
    pub fn new(n: usize, loops: i64, marked: usize, coin: CoinKind) -> Self {
        RawInstance { n, loops, marked, coin }
    }
}

impl TryFrom<RawInstance> for SearchInstance {
    type Error = DomainError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        validate(raw)
    }
}

impl From<SearchInstance> for RawInstance {
    fn from(inst: SearchInstance) -> Self {
        RawInstance::new(inst.n, inst.loops as i64, inst.marked, inst.coin)
    }
}

/// Checks every bound and returns the instance unchanged when they all hold.
///
/// Bounds are checked in a fixed order (N, k ≥ 1, k < N, l ≥ 0) and the first
/// violation is reported.
pub fn validate(raw: RawInstance) -> Result<SearchInstance, DomainError> {
    if raw.n < 3 {
        return Err(DomainError::TooFewVertices(raw.n));
    }
    if raw.marked < 1 {
        return Err(DomainError::NoMarkedVertices);
    }
    if raw.marked >= raw.n {
        return Err(DomainError::TooManyMarked { n: raw.n, marked: raw.marked });
    }
    if raw.loops < 0 {
        return Err(DomainError::NegativeLoops(raw.loops));
    }
    Ok(SearchInstance {
        n: raw.n,
        loops: raw.loops as usize,
        marked: raw.marked,
        coin: raw.coin,
    })
}

impl SearchInstance {
    pub fn new(n: usize, loops: usize, marked: usize, coin: CoinKind) -> Result<Self, DomainError> {
        let loops = i64::try_from(loops).map_err(|_| DomainError::NegativeLoops(i64::MIN))?;
        validate(RawInstance::new(n, loops, marked, coin))
    }

    /// Vertex count N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Self-loops per vertex l.
    pub fn loops(&self) -> usize {
        self.loops
    }

    /// Marked vertex count k.
    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn coin(&self) -> CoinKind {
        self.coin
    }

    /// Coin dimension d = N − 1 + l.
    pub fn coin_dim(&self) -> usize {
        self.n - 1 + self.loops
    }

    /// Number of coin directions at a marked vertex that stay on the marked
    /// set: k − 1 edges to other marked vertices plus l loops. When this is
    /// zero the |aa⟩ basis vector does not exist and the reduced walk is 3D.
    pub fn marked_to_marked(&self) -> usize {
        self.marked - 1 + self.loops
    }

    pub fn with_loops(&self, loops: usize) -> Self {
        SearchInstance { loops, ..*self }
    }

    pub fn with_coin(&self, coin: CoinKind) -> Self {
        SearchInstance { coin, ..*self }
    }

    /// Vertex⊗coin dimension N·(N − 1 + l), or `None` on overflow.
    pub fn full_dim(&self) -> Option<usize> {
        self.n.checked_mul(self.coin_dim())
    }
}

impl fmt::Display for SearchInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} l={} k={} coin={}", self.n, self.loops, self.marked, self.coin)
    }
}
