//! Exact max-flow / min-cut over integer-capacity networks.
//!
//! The engine is Dinic's blocking-flow algorithm with every capacity update
//! checked. The reported cut is the maximal source side: all nodes that
//! cannot reach the sink in the final residual graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::Capacity;

/// Directed network with a designated source and sink.
///
/// Arc `i` owns residual slots `2i` (forward) and `2i + 1` (reverse).
#[derive(Clone, Debug)]
pub struct FlowNetwork<C> {
    nodes: usize,
    source: usize,
    sink: usize,
    tails: Vec<usize>,
    heads: Vec<usize>,
    capacities: Vec<C>,
    adjacency: Vec<Vec<usize>>,
}

/// Outcome of a max-flow computation.
#[derive(Clone, Debug)]
pub struct CutResult<C> {
    pub max_flow_value: C,
    /// Sorted node ids on the source side; always contains the source.
    pub source_side: Vec<usize>,
    pub cut_capacity: C,
    /// Flow carried by each arc, indexed like the arcs of the network.
    pub arc_flows: Vec<C>,
}

impl<C: Capacity> FlowNetwork<C> {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes || source == sink {
            return Err(Error::Parameter(format!(
                "need distinct terminals below {nodes}, got source={source} sink={sink}"
            )));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            tails: Vec::new(),
            heads: Vec::new(),
            capacities: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        })
    }

    /// Adds an arc and returns its id. Arcs into the source or out of the
    /// sink are rejected.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: C) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::Parameter(format!("arc {from}->{to} outside network")));
        }
        if to == self.source || from == self.sink || from == to {
            return Err(Error::Parameter(format!(
                "arc {from}->{to} enters the source, leaves the sink, or is a loop"
            )));
        }
        if capacity < C::zero() {
            return Err(Error::Parameter("negative capacity".into()));
        }
        let id = self.tails.len();
        self.tails.push(from);
        self.heads.push(to);
        self.capacities.push(capacity);
        self.adjacency[from].push(2 * id);
        self.adjacency[to].push(2 * id + 1);
        Ok(id)
    }

    pub fn set_capacity(&mut self, arc: usize, capacity: C) {
        self.capacities[arc] = capacity;
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// `(from, to, capacity)` of arc `id`.
    pub fn arc(&self, id: usize) -> (usize, usize, &C) {
        (self.tails[id], self.heads[id], &self.capacities[id])
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        (0..self.arc_count()).map(move |id| self.arc(id))
    }

    /// Total capacity of arcs leaving a node set given as a membership mask.
    pub fn cut_capacity(&self, source_side: &[bool]) -> Result<C> {
        self.arcs()
            .filter(|&(from, to, _)| source_side[from] && !source_side[to])
            .try_fold(C::zero(), |acc, (_, _, cap)| {
                acc.checked_add(cap).ok_or(Error::Overflow)
            })
    }

    /// Multiplies every capacity by a positive integer factor.
    pub fn scaled(&self, factor: &C) -> Result<Self>
    where
        C: num_traits::CheckedMul,
    {
        let mut scaled = self.clone();
        for cap in &mut scaled.capacities {
            *cap = cap.checked_mul(factor).ok_or(Error::Overflow)?;
        }
        Ok(scaled)
    }

    fn slot_target(&self, slot: usize) -> usize {
        if slot.is_multiple_of(2) {
            self.heads[slot / 2]
        } else {
            self.tails[slot / 2]
        }
    }
}

struct Residual<'a, C> {
    net: &'a FlowNetwork<C>,
    residual: Vec<C>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

const UNREACHED: usize = usize::MAX;

impl<'a, C: Capacity> Residual<'a, C> {
    fn new(net: &'a FlowNetwork<C>) -> Self {
        let residual = net
            .capacities
            .iter()
            .flat_map(|cap| [cap.clone(), C::zero()])
            .collect();
        Residual {
            net,
            residual,
            level: vec![UNREACHED; net.nodes],
            cursor: vec![0; net.nodes],
        }
    }

    fn build_levels(&mut self) -> bool {
        self.level.fill(UNREACHED);
        self.level[self.net.source] = 0;
        let mut queue = VecDeque::from([self.net.source]);
        while let Some(v) = queue.pop_front() {
            for &slot in &self.net.adjacency[v] {
                let w = self.net.slot_target(slot);
                if self.level[w] == UNREACHED && self.residual[slot] > C::zero() {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[self.net.sink] != UNREACHED
    }

    /// Finds one augmenting path in the level graph, or `None` when the
    /// phase is blocked.
    fn find_path(&mut self) -> Option<Vec<usize>> {
        let (source, sink) = (self.net.source, self.net.sink);
        let mut path: Vec<usize> = Vec::new();
        let mut v = source;
        loop {
            if v == sink {
                return Some(path);
            }
            let mut advanced = false;
            while self.cursor[v] < self.net.adjacency[v].len() {
                let slot = self.net.adjacency[v][self.cursor[v]];
                let w = self.net.slot_target(slot);
                if self.residual[slot] > C::zero()
                    && self.level[w] != UNREACHED
                    && self.level[w] == self.level[v] + 1
                {
                    path.push(slot);
                    v = w;
                    advanced = true;
                    break;
                }
                self.cursor[v] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: prune v from this phase and retreat
            self.level[v] = UNREACHED;
            let slot = path.pop()?;
            v = self.net.slot_target(slot ^ 1);
            self.cursor[v] += 1;
        }
    }

    fn augment(&mut self, path: &[usize]) -> Result<C> {
        let bottleneck = path
            .iter()
            .map(|&slot| &self.residual[slot])
            .min()
            .cloned()
            .expect("augmenting path is non-empty");
        for &slot in path {
            self.residual[slot] = self.residual[slot]
                .checked_sub(&bottleneck)
                .ok_or(Error::Overflow)?;
            self.residual[slot ^ 1] = self.residual[slot ^ 1]
                .checked_add(&bottleneck)
                .ok_or(Error::Overflow)?;
        }
        Ok(bottleneck)
    }

    /// Nodes that can reach the sink through residual arcs.
    fn sink_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.net.nodes];
        seen[self.net.sink] = true;
        let mut queue = VecDeque::from([self.net.sink]);
        while let Some(v) = queue.pop_front() {
            for &slot in &self.net.adjacency[v] {
                let w = self.net.slot_target(slot);
                // slot ^ 1 runs w -> v
                if !seen[w] && self.residual[slot ^ 1] > C::zero() {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Computes a maximum flow and the maximal source-side minimum cut.
pub fn max_flow<C: Capacity>(net: &FlowNetwork<C>) -> Result<CutResult<C>> {
    let mut state = Residual::new(net);
    let mut value = C::zero();
    while state.build_levels() {
        state.cursor.fill(0);
        while let Some(path) = state.find_path() {
            let pushed = state.augment(&path)?;
            value = value.checked_add(&pushed).ok_or(Error::Overflow)?;
        }
    }
    let reaches_sink = state.sink_reachable();
    let on_source_side: Vec<bool> = reaches_sink.iter().map(|&r| !r).collect();
    let cut_capacity = net.cut_capacity(&on_source_side)?;
    let arc_flows = (0..net.arc_count())
        .map(|id| state.residual[2 * id + 1].clone())
        .collect();
    Ok(CutResult {
        max_flow_value: value,
        source_side: (0..net.nodes).filter(|&v| on_source_side[v]).collect(),
        cut_capacity,
        arc_flows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::<i64>::new(2, 0, 1).unwrap();
        net.add_arc(0, 1, 5).unwrap();
        let cut = max_flow(&net).unwrap();
        assert_eq!(cut.max_flow_value, 5);
        assert_eq!(cut.source_side, vec![0]);
        assert_eq!(cut.cut_capacity, 5);
    }

    #[test]
    fn diamond_with_cross_arc() {
        // s=0, a=1, b=2, t=3
        let mut net = FlowNetwork::<i64>::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, 3).unwrap();
        net.add_arc(0, 2, 2).unwrap();
        net.add_arc(1, 3, 2).unwrap();
        net.add_arc(2, 3, 2).unwrap();
        net.add_arc(1, 2, 5).unwrap();
        let cut = max_flow(&net).unwrap();
        assert_eq!(cut.max_flow_value, 4);
        assert_eq!(cut.cut_capacity, 4);
    }

    #[test]
    fn maximal_side_includes_tied_nodes() {
        // s -> a (1), a -> t (1): both {s} and {s, a} are minimum cuts.
        let mut net = FlowNetwork::<i64>::new(3, 0, 2).unwrap();
        net.add_arc(0, 1, 1).unwrap();
        net.add_arc(1, 2, 1).unwrap();
        let cut = max_flow(&net).unwrap();
        assert_eq!(cut.source_side, vec![0, 1]);
    }

    #[test]
    fn disconnected_sink() {
        let mut net = FlowNetwork::<i64>::new(3, 0, 2).unwrap();
        net.add_arc(0, 1, 4).unwrap();
        let cut = max_flow(&net).unwrap();
        assert_eq!(cut.max_flow_value, 0);
        assert_eq!(cut.source_side, vec![0, 1]);
    }

    #[test]
    fn rejects_arcs_into_source_or_out_of_sink() {
        let mut net = FlowNetwork::<i64>::new(3, 0, 2).unwrap();
        assert!(net.add_arc(1, 0, 1).is_err());
        assert!(net.add_arc(2, 1, 1).is_err());
        assert!(net.add_arc(1, 1, 1).is_err());
        assert!(FlowNetwork::<i64>::new(2, 1, 1).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let mut net = FlowNetwork::<i32>::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, i32::MAX).unwrap();
        net.add_arc(0, 2, i32::MAX).unwrap();
        net.add_arc(1, 3, i32::MAX).unwrap();
        net.add_arc(2, 3, i32::MAX).unwrap();
        assert!(matches!(max_flow(&net), Err(Error::Overflow)));
    }

    #[test]
    fn big_integer_capacities() {
        let huge: BigInt = BigInt::from(i128::MAX) * 10u32;
        let mut net = FlowNetwork::<BigInt>::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, huge.clone()).unwrap();
        net.add_arc(0, 2, huge.clone()).unwrap();
        net.add_arc(1, 3, huge.clone()).unwrap();
        net.add_arc(2, 3, huge.clone()).unwrap();
        let cut = max_flow(&net).unwrap();
        assert_eq!(cut.max_flow_value, huge * 2);
    }
}
