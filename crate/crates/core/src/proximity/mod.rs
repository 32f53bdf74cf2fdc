//! Clusters of infinitely near points read off the continued fractions of
//! the e/m pairs, and the dual graph of the corresponding blow-ups.

mod graph;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::delta::{DeltaError, DeltaSequence, TypeD, TypeTag};
use crate::values::{rational_gcd, EuclidWalk, OrderedValue, Quotient, ValueError};

pub use graph::{emit_dot, DualGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProximityError {
    #[error("the Noether identity is only defined for type A sequences, got type {0}")]
    NotTypeA(TypeTag),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error(transparent)]
    Value(#[from] ValueError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    Free,
    Satellite,
}

/// Which part of the construction produced a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    /// The walk of the `l`-th e/m pair (0-based).
    Pair(usize),
    /// Trailing free points after the last pair.
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId {
    pub segment: Segment,
    /// 1-based position of the Euclid step inside the segment.
    pub block: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub index: usize,
    pub kind: PointKind,
    /// Earlier points this one is proximate to, in increasing order.
    pub proximate_to: Vec<usize>,
    pub multiplicity: OrderedValue,
    pub block: BlockId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClusterTail {
    Finite,
    InfiniteFree,
    InfiniteSatelliteSameDivisor,
    InfiniteSatelliteAlternating,
    InfiniteBlocks,
}

impl fmt::Display for ClusterTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub points: Vec<Point>,
    pub tail: ClusterTail,
    /// Whether points were dropped because of the truncation bound.
    pub truncated: bool,
    /// Points that later (unrepresented) points may still be proximate to.
    open: Vec<usize>,
}

impl Cluster {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of the multiplicities of the points proximate to `j`.
    pub fn proximate_sum(&self, j: usize) -> Result<OrderedValue, ValueError> {
        let zero = OrderedValue::zero_of(self.points[j].multiplicity.kind());
        self.points[j + 1..]
            .iter()
            .filter(|p| p.proximate_to.contains(&j))
            .try_fold(zero, |acc, p| acc.checked_add(&p.multiplicity))
    }

    /// Whether every point proximate to `j` is represented in the cluster.
    pub fn is_resolved(&self, j: usize) -> bool {
        !self.open.contains(&j)
    }

    /// First point violating the proximity inequality, or a resolved point
    /// where it is strict.
    pub fn proximity_defect(&self) -> Result<Option<usize>, ValueError> {
        for j in 0..self.points.len() {
            let s = self.proximate_sum(j)?;
            let ord = self.points[j].multiplicity.try_cmp(&s)?;
            if ord.is_lt() || (ord.is_gt() && self.is_resolved(j)) {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Sum of squared multiplicities, when they are integers.
    pub fn sum_of_squares(&self) -> Option<BigInt> {
        self.points
            .iter()
            .map(|p| p.multiplicity.to_integer().map(|m| &m * &m))
            .sum()
    }
}

struct Builder {
    points: Vec<Point>,
    limit: usize,
    truncated: bool,
    open: Vec<usize>,
}

impl Builder {
    fn new(limit: usize) -> Self {
        Builder {
            points: Vec::new(),
            limit,
            truncated: false,
            open: Vec::new(),
        }
    }

    fn full(&mut self) -> bool {
        if self.points.len() >= self.limit {
            self.truncated = true;
        }
        self.truncated
    }

    fn push(&mut self, multiplicity: OrderedValue, mut proximate_to: Vec<usize>, block: BlockId) {
        proximate_to.sort_unstable();
        proximate_to.dedup();
        let kind = if proximate_to.len() > 1 {
            PointKind::Satellite
        } else {
            PointKind::Free
        };
        self.points.push(Point {
            index: self.points.len(),
            kind,
            proximate_to,
            multiplicity,
            block,
        });
    }

    fn predecessor(&self) -> Vec<usize> {
        self.points.len().checked_sub(1).into_iter().collect()
    }

    /// Points of one Euclid walk: quotient `a_k` gives `a_k` points of
    /// multiplicity equal to the current divisor.
    fn walk(&mut self, segment: usize, m: &OrderedValue, e: &OrderedValue) -> Result<(), ProximityError> {
        // last point of each finished block, most recent last
        let mut block_last: Vec<Option<usize>> = Vec::new();
        for (k, step) in EuclidWalk::new(m, e)?.enumerate() {
            let block = BlockId {
                segment: Segment::Pair(segment),
                block: k + 1,
            };
            let prev_block = block_last.last().copied().flatten();
            let prev_prev = block_last.len().checked_sub(2).and_then(|i| block_last[i]);
            let count = match &step.quotient {
                Quotient::Finite(q) => q.to_usize().unwrap_or(usize::MAX),
                Quotient::Infinite => usize::MAX,
            };
            // a zero quotient (m < e) leaves the block empty; the point before
            // it then plays the role of its last point
            let mut last = self.points.len().checked_sub(1);
            for t in 0..count {
                if self.full() {
                    self.open = [prev_block, prev_prev, self.predecessor().first().copied()]
                        .into_iter()
                        .flatten()
                        .collect();
                    return Ok(());
                }
                let mut prox = self.predecessor();
                if k > 0 {
                    if t > 0 {
                        prox.extend(prev_block);
                    } else if k > 1 {
                        prox.extend(prev_prev);
                    }
                }
                self.push(step.divisor.clone(), prox, block);
                last = Some(self.points.len() - 1);
            }
            block_last.push(last);
        }
        Ok(())
    }

    fn free_points(&mut self, count: Option<usize>, multiplicity: OrderedValue) {
        let block = BlockId {
            segment: Segment::Free,
            block: 1,
        };
        let mut made = 0;
        while count.is_none_or(|c| made < c) {
            if self.full() {
                break;
            }
            let prox = self.predecessor();
            self.push(multiplicity.clone(), prox, block);
            made += 1;
        }
    }

    fn finish(mut self, tail: ClusterTail) -> Cluster {
        if !self.truncated || self.open.is_empty() {
            self.open = self.predecessor();
        }
        Cluster {
            points: self.points,
            tail,
            truncated: self.truncated,
            open: self.open,
        }
    }
}

fn int_pairs(pairs: Vec<(i64, i64)>) -> Vec<(OrderedValue, OrderedValue)> {
    pairs.into_iter().map(|(m, e)| (m.into(), e.into())).collect()
}

/// The cluster of infinitely near points attached to `seq`, keeping at most
/// `truncation` points. Type E uses the default materialized prefix.
pub fn cluster_from_delta(seq: &DeltaSequence, truncation: usize) -> Result<Cluster, ProximityError> {
    cluster_from_delta_prefix(seq, truncation, None)
}

/// Like [`cluster_from_delta`], reading type E through the prefix `δ0..δj`.
pub fn cluster_from_delta_prefix(
    seq: &DeltaSequence,
    truncation: usize,
    e_prefix: Option<usize>,
) -> Result<Cluster, ProximityError> {
    let mut b = Builder::new(truncation);
    let (pairs, tail) = match seq {
        DeltaSequence::A { core, .. } => (int_pairs(core.em_pairs()), ClusterTail::Finite),
        DeltaSequence::B { core } => (int_pairs(core.em_pairs()), ClusterTail::InfiniteFree),
        DeltaSequence::C { .. } => (seq.em_pairs(None)?, ClusterTail::InfiniteSatelliteSameDivisor),
        DeltaSequence::D(d) => {
            let scale = match d {
                TypeD::General { prefix, .. } => rational_gcd(prefix).unwrap().recip().to_integer(),
                TypeD::Degenerate { .. } => BigInt::from(1),
            };
            let pairs = seq
                .em_pairs(None)?
                .into_iter()
                .map(|(m, e)| (m.scale(&scale), e.scale(&scale)))
                .collect();
            (pairs, ClusterTail::InfiniteSatelliteAlternating)
        }
        DeltaSequence::E(stream) => {
            let j = e_prefix.unwrap_or(crate::delta::DEFAULT_E_PREFIX);
            (int_pairs(stream.validate_prefix(j)?.core.em_pairs()), ClusterTail::InfiniteBlocks)
        }
    };
    for (l, (m, e)) in pairs.iter().enumerate() {
        b.walk(l, m, e)?;
        if b.truncated {
            break;
        }
    }
    match seq {
        DeltaSequence::A { .. } => b.free_points(seq.f_free().map(|f| f as usize), 1.into()),
        DeltaSequence::B { .. } => b.free_points(None, 1.into()),
        // the prefix only describes finitely many blocks
        DeltaSequence::E(_) => b.truncated = true,
        _ => {}
    }
    Ok(b.finish(tail))
}

/// One `(multiplicity, count)` entry per block of the cluster.
pub fn multiplicity_sequence(
    seq: &DeltaSequence,
    truncation: usize,
) -> Result<Vec<(OrderedValue, usize)>, ProximityError> {
    let cluster = cluster_from_delta(seq, truncation)?;
    let mut out: Vec<(BlockId, OrderedValue, usize)> = Vec::new();
    for p in &cluster.points {
        match out.last_mut() {
            Some((b, m, n)) if *b == p.block && *m == p.multiplicity => *n += 1,
            _ => out.push((p.block, p.multiplicity.clone(), 1)),
        }
    }
    Ok(out.into_iter().map(|(_, m, n)| (m, n)).collect())
}

/// `δ0² − Σ m²` over the whole cluster of a type A sequence; equals the last
/// entry of the sequence.
pub fn noether_residual(seq: &DeltaSequence) -> Result<BigInt, ProximityError> {
    let DeltaSequence::A { core, .. } = seq else {
        return Err(ProximityError::NotTypeA(seq.tag()));
    };
    let cluster = cluster_from_delta(seq, usize::MAX)?;
    let d0 = BigInt::from(core.entries()[0]);
    let squares = cluster.sum_of_squares().unwrap_or_else(BigInt::zero);
    Ok(&d0 * &d0 - squares)
}
