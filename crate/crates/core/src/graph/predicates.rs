//! Reachability, strongly connected components and the purely infinite
//! simple test.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Graph;

/// The first condition found to fail, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PisFailure {
    /// The listed vertices form a cycle none of whose vertices emits another edge.
    CycleWithoutExit(Vec<String>),
    /// `from` does not reach `target`, which is a sink or lies on a cycle.
    NotCofinal { from: String, target: String },
    NoCycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PisReport {
    pub purely_infinite_simple: bool,
    pub failure: Option<PisFailure>,
}

impl fmt::Display for PisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PisFailure::CycleWithoutExit(c) => write!(f, "cycle without exit through {}", c.join(", ")),
            PisFailure::NotCofinal { from, target } => write!(f, "not cofinal: {from} does not reach {target}"),
            PisFailure::NoCycle => write!(f, "graph has no cycle"),
        }
    }
}

impl Graph {
    /// `reach[v][w]` iff there is a path (possibly of length zero) from `v` to `w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.num_vertices();
        let mut succ = vec![Vec::new(); n];
        for e in self.edges() {
            succ[e.src].push(e.dst);
        }
        (0..n)
            .map(|start| {
                let mut seen = vec![false; n];
                seen[start] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(v) = queue.pop_front() {
                    for &w in &succ[v] {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Strongly connected components, each sorted, ordered by their smallest vertex.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let reach = self.reachability();
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if comp[v] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (v..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
            for &w in &members {
                comp[w] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// Components that contain at least one edge, i.e. carry a cycle.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let has_loop = |v: usize| self.edges().iter().any(|e| e.src == v && e.dst == v);
        self.strongly_connected_components()
            .into_iter()
            .filter(|c| c.len() > 1 || has_loop(c[0]))
            .collect()
    }

    pub fn has_cycle(&self) -> bool {
        !self.cyclic_components().is_empty()
    }

    /// A cycle without exit, if there is one, as the vertices of its component.
    pub fn cycle_without_exit(&self) -> Option<Vec<usize>> {
        self.cyclic_components()
            .into_iter()
            .find(|c| c.iter().all(|&v| self.out_degree(v) == 1))
    }

    /// Every vertex reaches every sink and some vertex of every cycle.
    /// Returns the first failing pair.
    pub fn cofinality_witness(&self) -> Option<(usize, usize)> {
        let reach = self.reachability();
        let mut targets = self.sinks();
        targets.extend(self.cyclic_components().iter().map(|c| c[0]));
        for (v, row) in reach.iter().enumerate() {
            for &t in &targets {
                if !row[t] {
                    return Some((v, t));
                }
            }
        }
        None
    }

    pub fn is_cofinal(&self) -> bool {
        self.cofinality_witness().is_none()
    }

    /// Condition (L), cofinality and existence of a cycle, checked in that order.
    pub fn purely_infinite_simple_report(&self) -> PisReport {
        let name = |v: usize| self.vertices()[v].clone();
        let failure = if let Some(c) = self.cycle_without_exit() {
            Some(PisFailure::CycleWithoutExit(c.into_iter().map(name).collect()))
        } else if let Some((from, target)) = self.cofinality_witness() {
            Some(PisFailure::NotCofinal { from: name(from), target: name(target) })
        } else if !self.has_cycle() {
            Some(PisFailure::NoCycle)
        } else {
            None
        };
        PisReport { purely_infinite_simple: failure.is_none(), failure }
    }

    pub fn is_purely_infinite_simple(&self) -> bool {
        self.purely_infinite_simple_report().purely_infinite_simple
    }
}
