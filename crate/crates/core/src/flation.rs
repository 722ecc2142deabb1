//! The elementary transformation `T(s,r)`: congruence of a quasi-Cartan
//! matrix `A` by `M = 1 + σ·e_s·e_rᵀ` with `σ = -A[s][r]`, and the equivalent
//! rewriting of the bigraph.

use std::fmt;

use thiserror::Error;

use crate::bigraph::{Bigraph, BigraphError, Edge, LineStyle};
use crate::matrix::{IntMatrix, QuasiCartanMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlationStep {
    pub s: usize,
    pub r: usize,
}

impl FlationStep {
    pub fn new(s: usize, r: usize) -> FlationStep {
        FlationStep { s, r }
    }

    fn check(self, n: usize) -> Result<(), FlationError> {
        if self.s == self.r {
            return Err(FlationError::SameVertex(self.s));
        }
        let max = self.s.max(self.r);
        if max >= n {
            return Err(FlationError::VertexOutOfRange { vertex: max, n });
        }
        Ok(())
    }
}

impl fmt::Display for FlationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.s, self.r)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FlationError {
    #[error("step endpoints coincide at vertex {0}")]
    SameVertex(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("entry ({s},{r}) = {value} lies outside {{-1,0,1}}")]
    EntryOutOfRange { s: usize, r: usize, value: i64 },
    #[error(transparent)]
    Graph(#[from] BigraphError),
    #[error("step {index} failed: {source}")]
    AtStep {
        index: usize,
        #[source]
        source: Box<FlationError>,
    },
}

/// `1 + σ·e_s·e_rᵀ`.
pub fn elementary_matrix(n: usize, s: usize, r: usize, sigma: i64) -> Result<IntMatrix, FlationError> {
    FlationStep::new(s, r).check(n)?;
    let mut m = IntMatrix::identity(n);
    m.set(s, r, sigma);
    Ok(m)
}

/// Ordered flation steps together with the product of their elementary
/// matrices, so that `accumulatedᵀ · A_in · accumulated = A_out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlationWitness {
    steps: Vec<FlationStep>,
    accumulated: IntMatrix,
}

impl FlationWitness {
    pub fn identity(n: usize) -> FlationWitness {
        FlationWitness {
            steps: Vec::new(),
            accumulated: IntMatrix::identity(n),
        }
    }

    /// Assembles a witness from untrusted parts, e.g. one read from a file.
    pub fn from_parts(steps: Vec<FlationStep>, accumulated: IntMatrix) -> FlationWitness {
        FlationWitness { steps, accumulated }
    }

    pub fn steps(&self) -> &[FlationStep] {
        &self.steps
    }

    pub fn accumulated(&self) -> &IntMatrix {
        &self.accumulated
    }

    pub fn size(&self) -> usize {
        self.accumulated.size()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Records one step applied with coefficient `sigma` (right-multiplies the
    /// accumulated matrix by the elementary matrix: column r += σ·column s).
    pub fn push(&mut self, step: FlationStep, sigma: i64) {
        self.steps.push(step);
        if sigma != 0 {
            let m = &mut self.accumulated;
            for i in 0..m.size() {
                let v = m.get(i, step.r) + sigma * m.get(i, step.s);
                m.set(i, step.r, v);
            }
        }
    }

    /// This witness followed by `next`.
    pub fn then(&self, next: &FlationWitness) -> FlationWitness {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        let accumulated = self
            .accumulated
            .checked_mul(&next.accumulated)
            .expect("witness product overflow");
        FlationWitness { steps, accumulated }
    }
}

/// `T(s,r)` on a matrix, using the closed-form entry update.
pub fn flate_matrix(a: &QuasiCartanMatrix, step: FlationStep) -> Result<QuasiCartanMatrix, FlationError> {
    flate_matrix_with_sigma(a, step).map(|(m, _)| m)
}

pub(crate) fn flate_matrix_with_sigma(
    a: &QuasiCartanMatrix,
    step: FlationStep,
) -> Result<(QuasiCartanMatrix, i64), FlationError> {
    let n = a.size();
    step.check(n)?;
    let FlationStep { s, r } = step;
    let a_sr = a.get(s, r);
    if a_sr.abs() >= 2 {
        return Err(FlationError::EntryOutOfRange { s, r, value: a_sr });
    }
    if a_sr == 0 {
        return Ok((a.clone(), 0));
    }
    let sigma = -a_sr;
    let mut out = a.clone();
    for i in 0..n {
        if i != r {
            out.set_sym(i, r, a.get(i, r) + sigma * a.get(i, s));
        }
    }
    #[cfg(debug_assertions)]
    {
        let m = elementary_matrix(n, s, r, sigma)?;
        let full = m.congruence(a.as_int()).expect("overflow in congruence check");
        debug_assert_eq!(&full, out.as_int(), "closed-form flation disagrees with congruence");
    }
    Ok((out, sigma))
}

/// `T(s,r)` on a simple bigraph by direct edge rewriting.
///
/// If `{s,r}` is an edge its style is flipped, and for every other neighbor
/// `i` of `s` an edge `{i,r}` is added with the style of `{i,s}` (kept when
/// `{s,r}` was solid, flipped when dotted); opposite parallel edges on `{i,r}`
/// then cancel.
pub fn flate_graph(g: &Bigraph, step: FlationStep) -> Result<Bigraph, FlationError> {
    g.ensure_simple()?;
    step.check(g.vertex_count())?;
    let FlationStep { s, r } = step;
    let Some(sr_style) = g.style(s, r) else {
        return Ok(g.clone());
    };
    let mut edges: Vec<Edge> = Vec::with_capacity(g.edge_count() + g.degree(s));
    for e in g.edges() {
        if (e.u, e.v) == (s.min(r), s.max(r)) {
            edges.push(Edge::new(s, r, sr_style.opposite()));
        } else {
            edges.push(*e);
        }
    }
    for e in g.incident(s) {
        let i = e.other(s);
        if i == r {
            continue;
        }
        let added = match sr_style {
            LineStyle::Solid => e.style,
            LineStyle::Dotted => e.style.opposite(),
        };
        edges.push(Edge::new(i, r, added));
    }
    Ok(Bigraph::new(g.vertex_count(), edges)?.simplify())
}

/// Applies `steps` left to right to a matrix, returning the result and its witness.
pub fn apply_sequence_matrix(
    a: &QuasiCartanMatrix,
    steps: &[FlationStep],
) -> Result<(QuasiCartanMatrix, FlationWitness), FlationError> {
    let mut cur = a.clone();
    let mut witness = FlationWitness::identity(a.size());
    for (index, &step) in steps.iter().enumerate() {
        let (next, sigma) = flate_matrix_with_sigma(&cur, step).map_err(|e| FlationError::AtStep {
            index,
            source: Box::new(e),
        })?;
        witness.push(step, sigma);
        cur = next;
    }
    Ok((cur, witness))
}

/// Applies `steps` left to right to a simple bigraph.
pub fn apply_sequence_graph(
    g: &Bigraph,
    steps: &[FlationStep],
) -> Result<(Bigraph, FlationWitness), FlationError> {
    let mut cur = g.clone();
    let mut witness = FlationWitness::identity(g.vertex_count());
    for (index, &step) in steps.iter().enumerate() {
        let at = |e: FlationError| FlationError::AtStep {
            index,
            source: Box::new(e),
        };
        let sigma = match cur.style(step.s, step.r) {
            Some(style) => -style.sign(),
            None => 0,
        };
        cur = flate_graph(&cur, step).map_err(at)?;
        witness.push(step, sigma);
    }
    Ok((cur, witness))
}
