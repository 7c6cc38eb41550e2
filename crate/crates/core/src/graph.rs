//! Budgeted breadth-first exploration of the labelled mutation graph, and
//! the forkless part, pre-forkless part and finiteness computations built
//! on it.
//!
//! Nodes are identified by their exact multiplicity matrix. Exploration is
//! level-synchronous: every level's mutations and classifications run on
//! the rayon pool, then get merged sequentially in (parent, vertex) order,
//! so the resulting graph does not depend on the number of workers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::{classify, ClassificationReport, MutationSequence, NodeClass, Quiver, QuiverError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid budget: {0}")]
    InvalidBudget(&'static str),
    #[error("escape from the fork region needs a fork")]
    NotAFork,
    #[error("escape from the pre-fork region needs a fork, pre-fork, wing or tip")]
    AlreadyPlain,
}

/// Limits on an exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_nodes: usize,
    /// Largest `|q_ij|` any generated quiver may contain.
    pub max_arrow_weight: u64,
    /// Nodes at this depth are not expanded.
    pub max_depth: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 100_000, max_arrow_weight: 1_000_000_000_000_000, max_depth: None }
    }
}

impl Budget {
    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = Some(max_depth);
        self
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.max_nodes == 0 {
            return Err(GraphError::InvalidBudget("max_nodes must be positive"));
        }
        if self.max_arrow_weight == 0 {
            return Err(GraphError::InvalidBudget("max_arrow_weight must be positive"));
        }
        if self.max_depth == Some(0) {
            return Err(GraphError::InvalidBudget("max_depth must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetReason {
    Nodes,
    ArrowWeight,
    Depth,
    Overflow,
}

/// The mutation that would have broken the budget: `vertex` applied after
/// `sequence` from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingEdge {
    pub sequence: MutationSequence,
    pub vertex: usize,
}

/// Progress at the moment a budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetSnapshot {
    pub reason: BudgetReason,
    pub visited: usize,
    pub expanded: usize,
    /// Nodes that should have been expanded but were not.
    pub frontier: usize,
    pub depth: usize,
    pub max_weight_seen: u64,
    pub offending_edge: Option<OffendingEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphStatus {
    Complete,
    BudgetExceeded(BudgetSnapshot),
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphNode {
    pub quiver: Quiver,
    pub report: ClassificationReport,
    pub depth: usize,
    /// The expansion predicate rejected this node.
    pub boundary: bool,
    /// All `n` neighbours have been generated.
    pub expanded: bool,
    /// `(parent index, vertex)` of the discovering edge.
    pub parent: Option<(usize, usize)>,
}

impl GraphNode {
    pub fn class(&self) -> NodeClass {
        self.report.class()
    }
}

/// The explored part of a labelled mutation graph.
///
/// Node 0 is the root. `edges` holds `(from, vertex, to)` triples and is
/// closed under reversal. Expanded nodes carry all `n` outgoing edges;
/// boundary nodes only carry edges back to the expanded nodes that reached
/// them.
#[derive(Debug, Clone, Serialize)]
pub struct MutationGraph {
    pub vertex_count: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: BTreeSet<(usize, usize, usize)>,
    pub status: GraphStatus,
    #[serde(skip)]
    index: HashMap<Quiver, usize>,
}

impl MutationGraph {
    pub fn root(&self) -> &Quiver {
        &self.nodes[0].quiver
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.status == GraphStatus::Complete
    }

    pub fn node_index(&self, q: &Quiver) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn contains(&self, q: &Quiver) -> bool {
        self.index.contains_key(q)
    }

    /// Nodes accepted by the expansion predicate, in discovery order.
    pub fn interior(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.iter().filter(|n| !n.boundary)
    }

    pub fn boundary(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.iter().filter(|n| n.boundary)
    }

    /// Sequence of mutations leading from the root to node `idx` along
    /// discovering edges.
    pub fn path_to(&self, mut idx: usize) -> MutationSequence {
        let mut steps = Vec::new();
        while let Some((p, v)) = self.nodes[idx].parent {
            steps.push(v);
            idx = p;
        }
        steps.reverse();
        MutationSequence::new(steps)
    }
}

struct Pending {
    quiver: Quiver,
    depth: usize,
    parent: (usize, usize),
}

/// Breadth-first closure from `root`. A node is expanded iff `expand`
/// accepts its report; otherwise it is marked boundary.
pub fn explore<F>(root: &Quiver, budget: &Budget, expand: F) -> Result<MutationGraph, GraphError>
where
    F: Fn(&ClassificationReport) -> bool + Sync,
{
    budget.validate()?;
    let n = root.vertex_count();
    let report = classify(root);
    let mut g = MutationGraph {
        vertex_count: n,
        nodes: vec![GraphNode {
            quiver: root.clone(),
            boundary: !expand(&report),
            report,
            depth: 0,
            expanded: false,
            parent: None,
        }],
        edges: BTreeSet::new(),
        status: GraphStatus::Complete,
        index: HashMap::from([(root.clone(), 0)]),
    };
    let mut max_weight = root.max_multiplicity();
    if max_weight > budget.max_arrow_weight {
        g.status = exceeded(&g, BudgetReason::ArrowWeight, max_weight, None);
        return Ok(g);
    }

    let mut level: Vec<usize> = if g.nodes[0].boundary { vec![] } else { vec![0] };
    while !level.is_empty() {
        let depth = g.nodes[level[0]].depth;
        if budget.max_depth.is_some_and(|d| depth >= d) {
            g.status = exceeded(&g, BudgetReason::Depth, max_weight, None);
            return Ok(g);
        }

        let children: Vec<Vec<Result<Quiver, QuiverError>>> = level
            .par_iter()
            .map(|&a| (0..n).map(|v| g.nodes[a].quiver.mutate(v)).collect())
            .collect();

        let mut pending: Vec<Pending> = Vec::new();
        let mut halt = None;
        'merge: for (&a, kids) in level.iter().zip(children) {
            for (v, kid) in kids.into_iter().enumerate() {
                let q = match kid {
                    Ok(q) => q,
                    Err(_) => {
                        halt = Some((BudgetReason::Overflow, a, v));
                        break 'merge;
                    }
                };
                let w = q.max_multiplicity();
                max_weight = max_weight.max(w);
                if w > budget.max_arrow_weight {
                    halt = Some((BudgetReason::ArrowWeight, a, v));
                    break 'merge;
                }
                let b = match g.index.get(&q) {
                    Some(&b) => b,
                    None => {
                        let b = g.nodes.len() + pending.len();
                        if b >= budget.max_nodes {
                            halt = Some((BudgetReason::Nodes, a, v));
                            break 'merge;
                        }
                        g.index.insert(q.clone(), b);
                        pending.push(Pending { quiver: q, depth: depth + 1, parent: (a, v) });
                        b
                    }
                };
                g.edges.insert((a, v, b));
                g.edges.insert((b, v, a));
            }
            g.nodes[a].expanded = true;
        }

        let reports: Vec<ClassificationReport> = pending.par_iter().map(|p| classify(&p.quiver)).collect();
        let first_new = g.nodes.len();
        for (p, report) in pending.into_iter().zip(reports) {
            g.nodes.push(GraphNode {
                quiver: p.quiver,
                boundary: !expand(&report),
                report,
                depth: p.depth,
                expanded: false,
                parent: Some(p.parent),
            });
        }

        if let Some((reason, a, v)) = halt {
            let edge = OffendingEdge { sequence: g.path_to(a), vertex: v };
            g.status = exceeded(&g, reason, max_weight, Some(edge));
            return Ok(g);
        }
        level = (first_new..g.nodes.len()).filter(|&i| !g.nodes[i].boundary).collect();
    }
    Ok(g)
}

fn exceeded(g: &MutationGraph, reason: BudgetReason, max_weight: u64, edge: Option<OffendingEdge>) -> GraphStatus {
    GraphStatus::BudgetExceeded(BudgetSnapshot {
        reason,
        visited: g.nodes.len(),
        expanded: g.nodes.iter().filter(|n| n.expanded).count(),
        frontier: g.nodes.iter().filter(|n| !n.boundary && !n.expanded).count(),
        depth: g.nodes.iter().map(|n| n.depth).max().unwrap_or(0),
        max_weight_seen: max_weight,
        offending_edge: edge,
    })
}

/// Outcome of [`escape_fork_region`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForkEscape {
    NonForkFound { quiver: Quiver, sequence: MutationSequence, visited: usize },
    AllForks { visited: usize },
    Unknown(BudgetSnapshot),
}

/// Outcome of [`escape_prefork_region`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PreforkEscape {
    PlainFound { quiver: Quiver, sequence: MutationSequence, visited: usize },
    AllExcluded { visited: usize },
    Unknown(BudgetSnapshot),
}

enum Walk {
    Found(Quiver, MutationSequence, usize),
    Exhausted(usize),
    Unknown(BudgetSnapshot),
}

/// Depth-first walk from `start` that follows `moves` out of every node
/// `stop` rejects, smallest vertex first, until `stop` accepts a node.
fn walk<S, M>(start: &Quiver, budget: &Budget, stop: S, moves: M) -> Walk
where
    S: Fn(&Quiver) -> bool,
    M: Fn(&Quiver) -> BTreeSet<usize>,
{
    let mut seen: HashMap<Quiver, usize> = HashMap::from([(start.clone(), 0)]);
    let mut trail: Vec<(Quiver, Option<(usize, usize)>, usize)> = vec![(start.clone(), None, 0)];
    let mut stack = vec![0usize];
    let mut max_weight = start.max_multiplicity();
    let path = |trail: &[(Quiver, Option<(usize, usize)>, usize)], mut i: usize| {
        let mut steps = Vec::new();
        while let Some((p, v)) = trail[i].1 {
            steps.push(v);
            i = p;
        }
        steps.reverse();
        MutationSequence::new(steps)
    };
    let snapshot = |reason, trail: &[(Quiver, Option<(usize, usize)>, usize)], max_weight, edge| BudgetSnapshot {
        reason,
        visited: trail.len(),
        expanded: trail.len(),
        frontier: 0,
        depth: trail.iter().map(|t| t.2).max().unwrap_or(0),
        max_weight_seen: max_weight,
        offending_edge: edge,
    };
    while let Some(i) = stack.pop() {
        let q = trail[i].0.clone();
        if stop(&q) {
            return Walk::Found(q, path(&trail, i), trail.len());
        }
        if budget.max_depth.is_some_and(|d| trail[i].2 >= d) {
            return Walk::Unknown(snapshot(BudgetReason::Depth, &trail, max_weight, None));
        }
        for v in moves(&q).into_iter().rev() {
            let reason = match q.mutate(v) {
                Err(_) => Some(BudgetReason::Overflow),
                Ok(next) => {
                    let w = next.max_multiplicity();
                    max_weight = max_weight.max(w);
                    if w > budget.max_arrow_weight {
                        Some(BudgetReason::ArrowWeight)
                    } else if seen.contains_key(&next) {
                        None
                    } else if trail.len() >= budget.max_nodes {
                        Some(BudgetReason::Nodes)
                    } else {
                        let j = trail.len();
                        seen.insert(next.clone(), j);
                        trail.push((next, Some((i, v)), trail[i].2 + 1));
                        stack.push(j);
                        None
                    }
                }
            };
            if let Some(reason) = reason {
                let edge = OffendingEdge { sequence: path(&trail, i), vertex: v };
                return Walk::Unknown(snapshot(reason, &trail, max_weight, Some(edge)));
            }
        }
    }
    Walk::Exhausted(trail.len())
}

/// Walks out of a fork by mutating only at points of return, the only
/// edges that can leave a fork tree.
pub fn escape_fork_region(q: &Quiver, budget: &Budget) -> Result<ForkEscape, GraphError> {
    budget.validate()?;
    if crate::classify::fork_points_of_return(q).is_empty() {
        return Err(GraphError::NotAFork);
    }
    let returns = |x: &Quiver| crate::classify::fork_points_of_return(x).iter().collect::<BTreeSet<_>>();
    Ok(match walk(q, budget, |x| returns(x).is_empty(), returns) {
        Walk::Found(quiver, sequence, visited) => ForkEscape::NonForkFound { quiver, sequence, visited },
        Walk::Exhausted(visited) => ForkEscape::AllForks { visited },
        Walk::Unknown(s) => ForkEscape::Unknown(s),
    })
}

/// Vertices along which a non-plain quiver may cross a bridge: points of
/// return of forks, all three vertices of pre-fork triples, and both
/// vertices of wing and tip witnesses.
pub fn bridge_moves(report: &ClassificationReport) -> BTreeSet<usize> {
    let mut moves: BTreeSet<usize> = report.fork_returns.iter().collect();
    for t in &report.prefork_triples {
        moves.extend([t.ret, t.pair.0, t.pair.1]);
    }
    for &(a, b) in report.wing_witnesses.iter().chain(&report.tip_witnesses) {
        moves.extend([a, b]);
    }
    moves
}

/// Walks out of the fork/pre-fork/wing/tip region along bridge moves until
/// a plain quiver turns up.
pub fn escape_prefork_region(q: &Quiver, budget: &Budget) -> Result<PreforkEscape, GraphError> {
    budget.validate()?;
    if classify(q).is_plain() {
        return Err(GraphError::AlreadyPlain);
    }
    let plain = |x: &Quiver| classify(x).is_plain();
    let moves = |x: &Quiver| bridge_moves(&classify(x));
    Ok(match walk(q, budget, plain, moves) {
        Walk::Found(quiver, sequence, visited) => PreforkEscape::PlainFound { quiver, sequence, visited },
        Walk::Exhausted(visited) => PreforkEscape::AllExcluded { visited },
        Walk::Unknown(s) => PreforkEscape::Unknown(s),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PartStatus {
    Finite { count: usize, members: Vec<Quiver> },
    Empty,
    BudgetExceeded(BudgetSnapshot),
}

/// Boundary nodes carrying a fork or a pre-fork witness. A node with both
/// counts in both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BoundaryCensus {
    pub forks: usize,
    pub preforks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Escape {
    Fork(ForkEscape),
    Prefork(PreforkEscape),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplorationResult {
    pub status: PartStatus,
    pub root: Quiver,
    /// Where the breadth-first search started, after any escape.
    pub seed: Option<Quiver>,
    pub escape: Option<Escape>,
    pub boundary_census: BoundaryCensus,
    /// Members by display class.
    pub class_census: BTreeMap<NodeClass, usize>,
    #[serde(skip)]
    pub graph: Option<MutationGraph>,
}

impl ExplorationResult {
    /// Member count when finite, 0 when empty.
    pub fn count(&self) -> Option<usize> {
        match &self.status {
            PartStatus::Finite { count, .. } => Some(*count),
            PartStatus::Empty => Some(0),
            PartStatus::BudgetExceeded(_) => None,
        }
    }

    pub fn members(&self) -> &[Quiver] {
        match &self.status {
            PartStatus::Finite { members, .. } => members,
            _ => &[],
        }
    }

    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self.status, PartStatus::BudgetExceeded(_))
    }

    fn without_graph(root: &Quiver, status: PartStatus, escape: Escape) -> Self {
        ExplorationResult {
            status,
            root: root.clone(),
            seed: None,
            escape: Some(escape),
            boundary_census: BoundaryCensus::default(),
            class_census: BTreeMap::new(),
            graph: None,
        }
    }

    fn from_graph(root: &Quiver, escape: Option<Escape>, graph: MutationGraph) -> Self {
        let mut boundary_census = BoundaryCensus::default();
        for node in graph.boundary() {
            boundary_census.forks += usize::from(node.report.is_fork());
            boundary_census.preforks += usize::from(node.report.is_prefork());
        }
        let mut class_census = BTreeMap::new();
        for node in graph.interior() {
            *class_census.entry(node.class()).or_insert(0) += 1;
        }
        let status = match &graph.status {
            GraphStatus::Complete => {
                let members: Vec<Quiver> = graph.interior().map(|n| n.quiver.clone()).collect();
                PartStatus::Finite { count: members.len(), members }
            }
            GraphStatus::BudgetExceeded(s) => PartStatus::BudgetExceeded(s.clone()),
        };
        ExplorationResult {
            status,
            root: root.clone(),
            seed: Some(graph.root().clone()),
            escape,
            boundary_census,
            class_census,
            graph: Some(graph),
        }
    }
}

/// The connected set of non-forks mutation-equivalent to `q`.
///
/// Forks are never expanded: past a fork the graph is a tree of forks, so
/// no non-fork lies beyond one. A fork input is first walked out of its
/// fork region.
pub fn forkless_part(q: &Quiver, budget: &Budget) -> Result<ExplorationResult, GraphError> {
    budget.validate()?;
    let mut escape = None;
    let mut seed = q.clone();
    if classify(q).is_fork() {
        let found = escape_fork_region(q, budget)?;
        match &found {
            ForkEscape::NonForkFound { quiver, .. } => seed = quiver.clone(),
            ForkEscape::AllForks { .. } => {
                return Ok(ExplorationResult::without_graph(q, PartStatus::Empty, Escape::Fork(found)))
            }
            ForkEscape::Unknown(s) => {
                let status = PartStatus::BudgetExceeded(s.clone());
                return Ok(ExplorationResult::without_graph(q, status, Escape::Fork(found)));
            }
        }
        escape = Some(Escape::Fork(found));
    }
    let graph = explore(&seed, budget, |r| !r.is_fork())?;
    Ok(ExplorationResult::from_graph(q, escape, graph))
}

/// The connected set of quivers reachable from `q` without crossing a fork
/// or a pre-fork.
///
/// Wings and tips are expanded: those on the key side of a bridge belong to
/// the part, and those on the far side are only reachable through a fork
/// or pre-fork. A non-plain input is first walked to a plain quiver.
pub fn preforkless_part(q: &Quiver, budget: &Budget) -> Result<ExplorationResult, GraphError> {
    budget.validate()?;
    let mut escape = None;
    let mut seed = q.clone();
    if !classify(q).is_plain() {
        let found = escape_prefork_region(q, budget)?;
        match &found {
            PreforkEscape::PlainFound { quiver, .. } => seed = quiver.clone(),
            PreforkEscape::AllExcluded { .. } => {
                return Ok(ExplorationResult::without_graph(q, PartStatus::Empty, Escape::Prefork(found)))
            }
            PreforkEscape::Unknown(s) => {
                let status = PartStatus::BudgetExceeded(s.clone());
                return Ok(ExplorationResult::without_graph(q, status, Escape::Prefork(found)));
            }
        }
        escape = Some(Escape::Prefork(found));
    }
    let graph = explore(&seed, budget, |r| !r.is_boundary())?;
    Ok(ExplorationResult::from_graph(q, escape, graph))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Finiteness {
    /// Size of the labelled mutation class: the product of the component
    /// class sizes.
    Finite { class_size: u128, component_sizes: Vec<usize> },
    /// `witness` is the fork reached inside `component` (re-indexed in
    /// increasing vertex order) by `sequence`, given in original labels.
    Infinite {
        component: VertexSet,
        witness: Quiver,
        returns: VertexSet,
        sequence: MutationSequence,
    },
    Unknown { component: VertexSet, snapshot: BudgetSnapshot },
}

/// Decides mutation-finiteness componentwise: unpruned search that stops
/// at the first fork, which proves the component mutation-infinite.
pub fn mutation_finiteness(q: &Quiver, budget: &Budget) -> Result<Finiteness, GraphError> {
    budget.validate()?;
    let mut sizes = Vec::new();
    for comp in q.components() {
        let (sub, map) = q.full_subquiver(&comp).expect("components are nonempty");
        match component_finiteness(&sub, budget) {
            ComponentVerdict::Finite(size) => sizes.push(size),
            ComponentVerdict::Infinite(witness, returns, seq) => {
                let sequence = MutationSequence::new(seq.steps().iter().map(|&v| map[v]).collect::<Vec<_>>());
                return Ok(Finiteness::Infinite { component: comp, witness, returns, sequence });
            }
            ComponentVerdict::Unknown(snapshot) => {
                return Ok(Finiteness::Unknown { component: comp, snapshot });
            }
        }
    }
    let class_size = sizes.iter().map(|&s| s as u128).product();
    Ok(Finiteness::Finite { class_size, component_sizes: sizes })
}

enum ComponentVerdict {
    Finite(usize),
    Infinite(Quiver, VertexSet, MutationSequence),
    Unknown(BudgetSnapshot),
}

fn component_finiteness(q: &Quiver, budget: &Budget) -> ComponentVerdict {
    let n = q.vertex_count();
    let mut index: HashMap<Quiver, usize> = HashMap::from([(q.clone(), 0)]);
    let mut nodes: Vec<(Quiver, Option<(usize, usize)>, usize)> = vec![(q.clone(), None, 0)];
    let mut max_weight = q.max_multiplicity();
    let path = |nodes: &[(Quiver, Option<(usize, usize)>, usize)], mut i: usize| {
        let mut steps = Vec::new();
        while let Some((p, v)) = nodes[i].1 {
            steps.push(v);
            i = p;
        }
        steps.reverse();
        MutationSequence::new(steps)
    };
    let returns = crate::classify::fork_points_of_return(q);
    if !returns.is_empty() {
        return ComponentVerdict::Infinite(q.clone(), returns, MutationSequence::empty());
    }
    let mut head = 0;
    while head < nodes.len() {
        let (x, _, depth) = nodes[head].clone();
        let stopped = |reason, nodes: &[(Quiver, Option<(usize, usize)>, usize)], max_weight, v: Option<usize>| {
            ComponentVerdict::Unknown(BudgetSnapshot {
                reason,
                visited: nodes.len(),
                expanded: head,
                frontier: nodes.len() - head,
                depth,
                max_weight_seen: max_weight,
                offending_edge: v.map(|vertex| OffendingEdge { sequence: path(nodes, head), vertex }),
            })
        };
        if budget.max_depth.is_some_and(|d| depth >= d) {
            return stopped(BudgetReason::Depth, &nodes, max_weight, None);
        }
        for v in 0..n {
            let y = match x.mutate(v) {
                Ok(y) => y,
                Err(_) => return stopped(BudgetReason::Overflow, &nodes, max_weight, Some(v)),
            };
            let w = y.max_multiplicity();
            max_weight = max_weight.max(w);
            if w > budget.max_arrow_weight {
                return stopped(BudgetReason::ArrowWeight, &nodes, max_weight, Some(v));
            }
            if index.contains_key(&y) {
                continue;
            }
            if nodes.len() >= budget.max_nodes {
                return stopped(BudgetReason::Nodes, &nodes, max_weight, Some(v));
            }
            let returns = crate::classify::fork_points_of_return(&y);
            index.insert(y.clone(), nodes.len());
            nodes.push((y.clone(), Some((head, v)), depth + 1));
            if !returns.is_empty() {
                let seq = path(&nodes, nodes.len() - 1);
                return ComponentVerdict::Infinite(y, returns, seq);
            }
        }
        head += 1;
    }
    ComponentVerdict::Finite(nodes.len())
}
