//! Block trees and the type-A characterization.
//!
//! A connected simple bigraph has Dynkin type `A_n` exactly when every block
//! is a complete bigraph `F[X,Y]` (solid between the parts, dotted inside each
//! part) and every separation vertex lies in exactly two blocks.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::bigraph::{Bigraph, Edge, LineStyle};
use crate::flation::{apply_sequence_graph, FlationStep, FlationWitness};

/// A maximal 2-connected piece, a bridge, or an isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

/// `BT(G)`: blocks, separation vertices and the bipartite incidence between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub separators: Vec<usize>,
    /// `(block index, separator)` pairs.
    pub tree_edges: Vec<(usize, usize)>,
}

impl BlockTree {
    /// Number of blocks containing `s`.
    pub fn separator_degree(&self, s: usize) -> usize {
        self.tree_edges.iter().filter(|&&(_, x)| x == s).count()
    }

    pub fn block_degree(&self, b: usize) -> usize {
        self.tree_edges.iter().filter(|&&(x, _)| x == b).count()
    }

    pub fn is_separator(&self, v: usize) -> bool {
        self.separators.binary_search(&v).is_ok()
    }

    /// Index of the blocks containing `v`.
    pub fn blocks_of(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].vertices.binary_search(&v).is_ok())
            .collect()
    }

    /// Separators met strictly between `x` and `y` on the tree path, in order.
    /// `None` when they lie in different components.
    pub fn separator_route(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        let nb = self.blocks.len();
        let node = |v: usize| {
            if self.is_separator(v) {
                Some(nb + v)
            } else {
                self.blocks_of(v).first().copied()
            }
        };
        let (start, goal) = (node(x)?, node(y)?);
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(b, s) in &self.tree_edges {
            adj.entry(b).or_default().push(nb + s);
            adj.entry(nb + s).or_default().push(b);
        }
        let mut prev = HashMap::from([(start, start)]);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &b in adj.get(&a).into_iter().flatten() {
                if let Entry::Vacant(e) = prev.entry(b) {
                    e.insert(a);
                    queue.push_back(b);
                }
            }
        }
        prev.get(&goal)?;
        let mut route = Vec::new();
        let mut cur = goal;
        loop {
            if cur >= nb && cur - nb != x && cur - nb != y {
                route.push(cur - nb);
            }
            if cur == start {
                break;
            }
            cur = prev[&cur];
        }
        route.reverse();
        Some(route)
    }
}

/// Biconnected decomposition of a simple graph, ignoring line styles.
pub fn block_tree(g: &Bigraph) -> BlockTree {
    let n = g.vertex_count();
    let adj = g.adjacency_lists();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();

    // Iterative Tarjan: frames hold (vertex, parent, next neighbor index).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if adj[root].is_empty() {
            blocks.push(Block {
                vertices: vec![root],
                edges: Vec::new(),
            });
            continue;
        }
        let mut frames = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (u, parent, ref mut next)) = frames.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next];
                *next += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    stack.push((u, v));
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    frames.push((v, u, 0));
                } else if disc[v] < disc[u] {
                    stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut pairs = Vec::new();
                        while let Some(e) = stack.pop() {
                            pairs.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        blocks.push(make_block(g, &pairs));
                    }
                }
            }
        }
    }

    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let separators: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if count[v] >= 2 {
                tree_edges.push((i, v));
            }
        }
    }
    BlockTree {
        blocks,
        separators,
        tree_edges,
    }
}

fn make_block(g: &Bigraph, pairs: &[(usize, usize)]) -> Block {
    let mut vertices: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges: Vec<Edge> = pairs
        .iter()
        .flat_map(|&(a, b)| g.edges().iter().filter(move |e| (e.u, e.v) == (a.min(b), a.max(b))))
        .copied()
        .collect();
    edges.sort_unstable();
    Block { vertices, edges }
}

/// A complete bigraph `F[X,Y]`: solid edges across the parts, dotted within.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDecomposition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl FDecomposition {
    pub fn size(&self) -> usize {
        self.x.len() + self.y.len()
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FError {
    #[error("no vertices")]
    Empty,
    #[error("vertices {0} and {1} are not adjacent")]
    NotComplete(usize, usize),
    #[error("line styles admit no solid-across/dotted-within bipartition")]
    NotTwoColorable,
}

/// Builds `F[X,Y]` on `n` vertices.
pub fn f_graph(n: usize, x: &[usize], y: &[usize]) -> Bigraph {
    let mut edges = Vec::new();
    for part in [x, y] {
        for (i, &a) in part.iter().enumerate() {
            for &b in &part[i + 1..] {
                edges.push(Edge::dotted(a, b));
            }
        }
    }
    for &a in x {
        for &b in y {
            edges.push(Edge::solid(a, b));
        }
    }
    Bigraph::new(n, edges).expect("F[X,Y] is well formed")
}

/// Recognizes the whole (connected, simple) bigraph `block` as some `F[X,Y]`.
pub fn recognize_f(block: &Bigraph) -> Result<FDecomposition, FError> {
    let all: Vec<usize> = (0..block.vertex_count()).collect();
    recognize_f_on(block, &all)
}

/// Recognizes the subgraph of `g` induced on the sorted `vertices` as `F[X,Y]`,
/// with `X` the part containing the smallest vertex.
pub fn recognize_f_on(g: &Bigraph, vertices: &[usize]) -> Result<FDecomposition, FError> {
    let (&first, rest) = vertices.split_first().ok_or(FError::Empty)?;
    let mut x = vec![first];
    let mut y = Vec::new();
    for &v in rest {
        match g.style(first, v) {
            None => return Err(FError::NotComplete(first, v)),
            Some(LineStyle::Dotted) => x.push(v),
            Some(LineStyle::Solid) => y.push(v),
        }
    }
    let mut side = vec![false; g.vertex_count()];
    for &v in &y {
        side[v] = true;
    }
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            let expected = if side[a] == side[b] {
                LineStyle::Dotted
            } else {
                LineStyle::Solid
            };
            match g.style(a, b) {
                None => return Err(FError::NotComplete(a, b)),
                Some(s) if s != expected => return Err(FError::NotTwoColorable),
                Some(_) => {}
            }
        }
    }
    Ok(FDecomposition { x, y })
}

/// Every block is some `F[X,Y]` and every separator joins exactly two blocks.
/// False for disconnected or non-simple inputs.
pub fn is_a_block_tree(g: &Bigraph) -> bool {
    if g.vertex_count() == 0 || !g.is_simple() || !g.is_connected() {
        return false;
    }
    let bt = block_tree(g);
    bt.separators.iter().all(|&s| bt.separator_degree(s) == 2)
        && bt.blocks.iter().all(|b| recognize_f_on(g, &b.vertices).is_ok())
}

/// `true` exactly when the connected simple bigraph has Dynkin type `A_n`.
pub fn classify_a(g: &Bigraph) -> bool {
    is_a_block_tree(g)
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("bigraph is not of Dynkin type A")]
    NotAType,
    #[error("reduction did not reach the canonical path (internal error)")]
    ReductionFailed,
}

/// Flation sequence taking an A-type bigraph to the canonical solid path.
///
/// Returns the witness and `order`, where `order[k]` is the vertex that ends
/// up at position `k` of the path.
pub fn reduce_to_an(g: &Bigraph) -> Result<(FlationWitness, Vec<usize>), BlockError> {
    if !is_a_block_tree(g) {
        return Err(BlockError::NotAType);
    }
    let mut cur = g.clone();
    let mut witness = FlationWitness::identity(g.vertex_count());
    let run = |cur: &mut Bigraph, witness: &mut FlationWitness, steps: &[FlationStep]| {
        let (next, w) = apply_sequence_graph(cur, steps).expect("steps stay in range");
        *witness = witness.then(&w);
        *cur = next;
    };

    // Merge leaf blocks into their neighbours until a single F block remains.
    loop {
        let bt = block_tree(&cur);
        if bt.blocks.len() <= 1 {
            break;
        }
        let leaf = (0..bt.blocks.len())
            .filter(|&b| bt.block_degree(b) == 1)
            .min_by_key(|&b| bt.blocks[b].vertices[0])
            .ok_or(BlockError::ReductionFailed)?;
        let s = bt
            .tree_edges
            .iter()
            .find(|&&(b, _)| b == leaf)
            .map(|&(_, s)| s)
            .ok_or(BlockError::ReductionFailed)?;
        let steps: Vec<FlationStep> = bt.blocks[leaf]
            .vertices
            .iter()
            .filter(|&&v| v != s)
            .map(|&v| FlationStep::new(s, v))
            .collect();
        run(&mut cur, &mut witness, &steps);
    }

    let f = recognize_f(&cur).map_err(|_| BlockError::ReductionFailed)?;
    let steps = linearization_steps(&f);
    run(&mut cur, &mut witness, &steps);

    let order: Vec<usize> = f.x.iter().chain(&f.y).copied().collect();
    let mut position = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    if cur.relabel(&position, order.len()) != Bigraph::path(order.len()) {
        return Err(BlockError::ReductionFailed);
    }
    Ok((witness, order))
}

/// Steps turning `F[{x_1..x_m},{y_1..y_m'}]` into the path `x_1 … x_m y_1 … y_m'`:
/// first `T(y_{m'-1},y_{m'})` down to `T(y_1,y_2)`, then `T(x_2,x_1)` up to `T(x_m,x_{m-1})`.
pub fn linearization_steps(f: &FDecomposition) -> Vec<FlationStep> {
    let mut steps = Vec::new();
    for j in (1..f.y.len()).rev() {
        steps.push(FlationStep::new(f.y[j - 1], f.y[j]));
    }
    for i in 1..f.x.len() {
        steps.push(FlationStep::new(f.x[i], f.x[i - 1]));
    }
    steps
}
