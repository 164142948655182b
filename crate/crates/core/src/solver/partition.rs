use crate::basis::Interval;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Time nodes `0 = t_0 < ... < t_M = T` with one degree `r_m >= 1` per step.
#[derive(Debug, Clone, PartialEq)]
pub struct TimePartition<T> {
    nodes: Vec<T>,
    degrees: Vec<usize>,
}

impl<T: Real> TimePartition<T> {
    pub fn new(nodes: Vec<T>, degrees: Vec<usize>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidPartition("need at least two nodes".into()));
        }
        if nodes[0] != T::zero() {
            return Err(Error::InvalidPartition("first node must be 0".into()));
        }
        if let Some(i) = nodes
            .windows(2)
            .position(|w| !(w[1] > w[0]) || !w[1].is_finite())
        {
            return Err(Error::InvalidPartition(format!(
                "nodes must be strictly increasing (index {})",
                i + 1
            )));
        }
        if degrees.len() != nodes.len() - 1 {
            return Err(Error::InvalidPartition(format!(
                "{} degrees for {} intervals",
                degrees.len(),
                nodes.len() - 1
            )));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidPartition("degrees must be at least 1".into()));
        }
        Ok(Self { nodes, degrees })
    }

    /// `m` equal steps on `[0, t_end]`, all of degree `r`.
    pub fn uniform(t_end: T, m: usize, r: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartition("need at least one step".into()));
        }
        let nodes = (0..=m)
            .map(|i| {
                if i == m {
                    t_end
                } else {
                    t_end * T::of(i) / T::of(m)
                }
            })
            .collect();
        Self::new(nodes, vec![r; m])
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn num_steps(&self) -> usize {
        self.degrees.len()
    }

    pub fn end_time(&self) -> T {
        self.nodes[self.nodes.len() - 1]
    }

    /// Interval `I_m` for zero-based `m`.
    pub fn interval(&self, m: usize) -> Interval<T> {
        Interval::new(self.nodes[m], self.nodes[m + 1]).expect("validated nodes")
    }

    pub fn intervals(&self) -> impl Iterator<Item = Interval<T>> + '_ {
        (0..self.num_steps()).map(|m| self.interval(m))
    }

    /// Index of the step containing `t`; nodes belong to the step on their left.
    pub fn locate(&self, t: T) -> Option<usize> {
        if !(t >= self.nodes[0] && t <= self.end_time()) {
            return None;
        }
        let idx = self.nodes.partition_point(|&x| x < t);
        Some(idx.saturating_sub(1).min(self.num_steps() - 1))
    }

    pub fn max_step(&self) -> T {
        self.nodes
            .windows(2)
            .fold(T::zero(), |m, w| m.max(w[1] - w[0]))
    }
}
