//! The inflations method: repeatedly flate along positive off-diagonal entries
//! until a Cartan matrix remains, then read the Dynkin type off its diagram.
//!
//! This is the reference classifier that the structural recognizers in
//! [`crate::blocks`] and [`crate::dcycle`] are checked against.

use num_traits::{One, Signed};
use thiserror::Error;

use crate::bigraph::{Bigraph, LineStyle};
use crate::dynkin::{DynkinError, DynkinType, Family};
use crate::flation::{elementary_matrix, flate_matrix_with_sigma, FlationStep, FlationWitness};
use crate::matrix::{IntMatrix, QuasiCartanMatrix};

/// How a component's type was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Inflations,
    BlockTree,
    DCycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    /// One type per connected component, ordered by the component's smallest vertex.
    pub types: Vec<DynkinType>,
    pub routes: Vec<Route>,
    /// Maps the input to `canonical` by congruence.
    pub witness: FlationWitness,
    /// Cartan matrix reached by the witness.
    pub canonical: QuasiCartanMatrix,
    /// `canonical.permuted(&permutation)` is the block-diagonal standard matrix of `types`.
    pub permutation: Vec<usize>,
}

impl ClassificationResult {
    pub fn standard_matrix(&self) -> QuasiCartanMatrix {
        let blocks: Vec<_> = self.types.iter().map(|&t| canonical_cartan(t)).collect();
        QuasiCartanMatrix::direct_sum(&blocks)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum InflationError {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("entry ({i},{j}) = {value} lies outside {{-1,0,1}}")]
    EntryOutOfRange { i: usize, j: usize, value: i64 },
    #[error("inflations did not terminate within {0} steps")]
    GuardExceeded(usize),
    #[error("terminal matrix is not a Dynkin diagram: {0}")]
    Diagram(#[from] DiagramError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("component containing vertex {0} is not a Dynkin diagram")]
    NotADynkinDiagram(usize),
}

/// Pivot choice among entries equal to `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest pair `s < r`, applied as `T(s,r)`.
    #[default]
    Lexicographic,
    /// Largest pair `i < j`, applied as `T(j,i)`.
    ReverseLexicographic,
}

impl PivotRule {
    fn pick(self, a: &QuasiCartanMatrix) -> Option<FlationStep> {
        let n = a.size();
        match self {
            PivotRule::Lexicographic => {
                for s in 0..n {
                    for r in s + 1..n {
                        if a.get(s, r) == 1 {
                            return Some(FlationStep::new(s, r));
                        }
                    }
                }
                None
            }
            PivotRule::ReverseLexicographic => {
                for i in (0..n).rev() {
                    for j in (i + 1..n).rev() {
                        if a.get(i, j) == 1 {
                            return Some(FlationStep::new(j, i));
                        }
                    }
                }
                None
            }
        }
    }
}

pub(crate) fn check_entries(a: &QuasiCartanMatrix) -> Result<(), InflationError> {
    match a.max_off_diagonal() {
        Some((i, j, m)) if m >= 2 => Err(InflationError::EntryOutOfRange {
            i,
            j,
            value: a.get(i, j),
        }),
        _ => Ok(()),
    }
}

pub fn inflations_method(a: &QuasiCartanMatrix) -> Result<ClassificationResult, InflationError> {
    inflations_method_with(a, PivotRule::Lexicographic)
}

pub fn inflations_method_with(
    a: &QuasiCartanMatrix,
    rule: PivotRule,
) -> Result<ClassificationResult, InflationError> {
    check_entries(a)?;
    if !a.is_positive_definite() {
        return Err(InflationError::NotPositiveDefinite);
    }
    let n = a.size();
    let guard = 4 * n * n * n;
    let mut cur = a.clone();
    let mut witness = FlationWitness::identity(n);
    let mut steps = 0;
    while let Some(step) = rule.pick(&cur) {
        if steps == guard {
            return Err(InflationError::GuardExceeded(guard));
        }
        let (next, sigma) =
            flate_matrix_with_sigma(&cur, step).expect("positive definite entries stay in range");
        witness.push(step, sigma);
        cur = next;
        steps += 1;
    }
    let labelled = label_diagram(&cur.to_bigraph())?;
    let types: Vec<DynkinType> = labelled.iter().map(|(t, _)| *t).collect();
    let permutation: Vec<usize> = labelled.into_iter().flat_map(|(_, order)| order).collect();
    let result = ClassificationResult {
        routes: vec![Route::Inflations; types.len()],
        types,
        witness,
        canonical: cur,
        permutation,
    };
    debug_assert_eq!(result.canonical.permuted(&result.permutation), result.standard_matrix());
    Ok(result)
}

/// Standard Cartan matrix of a Dynkin type.
///
/// `A_n` is the path `0..n`; `D_n` joins leaves 0 and 1 to vertex 2, followed
/// by the path `2..n`; `E_n` is the path `0..n-1` with vertex `n-1` hanging off
/// vertex 2.
pub fn canonical_cartan(t: DynkinType) -> QuasiCartanMatrix {
    QuasiCartanMatrix::from_bigraph(&canonical_diagram(t))
}

pub fn canonical_diagram(t: DynkinType) -> Bigraph {
    let n = t.rank();
    let edges: Vec<(usize, usize, LineStyle)> = match t.family() {
        Family::A => (1..n).map(|i| (i - 1, i, LineStyle::Solid)).collect(),
        Family::D => {
            let mut e = vec![(0, 2, LineStyle::Solid), (1, 2, LineStyle::Solid)];
            e.extend((3..n).map(|i| (i - 1, i, LineStyle::Solid)));
            e
        }
        Family::E => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i, LineStyle::Solid)).collect();
            e.push((2, n - 1, LineStyle::Solid));
            e
        }
    };
    Bigraph::from_triples(n, &edges)
}

/// Checked form of [`canonical_cartan`] from a family and rank.
pub fn canonical_cartan_of(family: Family, rank: usize) -> Result<QuasiCartanMatrix, DynkinError> {
    DynkinType::new(family, rank).map(canonical_cartan)
}

/// Dynkin types of the components of an all-solid forest.
pub fn recognize_diagram(g: &Bigraph) -> Result<Vec<DynkinType>, DiagramError> {
    Ok(label_diagram(g)?.into_iter().map(|(t, _)| t).collect())
}

/// Like [`recognize_diagram`], also returning for each component the vertex
/// placed at each position of the standard layout of its type.
pub fn label_diagram(g: &Bigraph) -> Result<Vec<(DynkinType, Vec<usize>)>, DiagramError> {
    let adj = g.adjacency_lists();
    let mut out = Vec::new();
    for comp in g.components() {
        let fail = DiagramError::NotADynkinDiagram(comp[0]);
        let edges: Vec<_> = g.edges().iter().filter(|e| comp.binary_search(&e.u).is_ok()).collect();
        if edges.len() + 1 != comp.len() || edges.iter().any(|e| e.style != LineStyle::Solid) {
            return Err(fail);
        }
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
        if comp.iter().any(|&v| adj[v].len() > 3) || branch.len() > 1 {
            return Err(fail);
        }
        let walk = |from: usize, first: usize| {
            let mut arm = vec![first];
            let (mut prev, mut cur) = (from, first);
            while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                arm.push(next);
                prev = cur;
                cur = next;
            }
            arm
        };
        if branch.is_empty() {
            let start = comp.iter().copied().find(|&v| adj[v].len() <= 1).ok_or(fail)?;
            let order = match adj[start].first() {
                None => vec![start],
                Some(&next) => {
                    let mut order = vec![start];
                    order.extend(walk(start, next));
                    order
                }
            };
            out.push((DynkinType::a(comp.len()), order));
            continue;
        }
        let c = branch[0];
        let mut arms: Vec<Vec<usize>> = adj[c].iter().map(|&x| walk(c, x)).collect();
        arms.sort_by_key(|arm| (arm.len(), arm[0]));
        let lens = (arms[0].len(), arms[1].len(), arms[2].len());
        let n = comp.len();
        let order = match lens {
            (1, 1, _) => {
                let mut order = vec![arms[0][0], arms[1][0], c];
                order.extend(&arms[2]);
                out.push((DynkinType::d(n), order));
                continue;
            }
            (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => {
                let mut order = vec![arms[1][1], arms[1][0], c];
                order.extend(&arms[2]);
                order.push(arms[0][0]);
                order
            }
            _ => return Err(fail),
        };
        out.push((DynkinType::e(n), order));
    }
    Ok(out)
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WitnessFailure {
    #[error("dimensions disagree")]
    DimensionMismatch,
    #[error("step {index} cannot be applied: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("accumulated matrix differs from the product of the steps")]
    AccumulatedMismatch,
    #[error("replaying the steps does not reach the claimed matrix")]
    ReplayMismatch,
    #[error("accumulated matrix is not unimodular")]
    NotUnimodular,
    #[error("Mᵀ·A_in·M differs from A_out")]
    CongruenceMismatch,
    #[error("integer overflow while checking")]
    Overflow,
}

/// Checks that `w` proves `a_out = Mᵀ·a_in·M` for a unimodular `M`.
///
/// The steps are replayed from `a_in` to recover each coefficient, the
/// product is recomputed and compared to the stored matrix, and the inverse
/// is rebuilt from the inverted elementary factors.
pub fn verify_witness(
    a_in: &QuasiCartanMatrix,
    a_out: &QuasiCartanMatrix,
    w: &FlationWitness,
) -> Result<(), WitnessFailure> {
    let n = a_in.size();
    if a_out.size() != n || w.size() != n {
        return Err(WitnessFailure::DimensionMismatch);
    }
    let mut cur = a_in.clone();
    let mut product = IntMatrix::identity(n);
    let mut inverse = IntMatrix::identity(n);
    for (index, &step) in w.steps().iter().enumerate() {
        let (next, sigma) = flate_matrix_with_sigma(&cur, step).map_err(|e| WitnessFailure::InvalidStep {
            index,
            reason: e.to_string(),
        })?;
        let m = elementary_matrix(n, step.s, step.r, sigma).expect("validated by replay");
        let m_inv = elementary_matrix(n, step.s, step.r, -sigma).expect("validated by replay");
        product = product.checked_mul(&m).ok_or(WitnessFailure::Overflow)?;
        inverse = m_inv.checked_mul(&inverse).ok_or(WitnessFailure::Overflow)?;
        cur = next;
    }
    if &product != w.accumulated() {
        return Err(WitnessFailure::AccumulatedMismatch);
    }
    if cur != *a_out {
        return Err(WitnessFailure::ReplayMismatch);
    }
    let det = product.determinant();
    let both = product.checked_mul(&inverse).ok_or(WitnessFailure::Overflow)?;
    if !det.abs().is_one() || both != IntMatrix::identity(n) {
        return Err(WitnessFailure::NotUnimodular);
    }
    let congruent = product.congruence(a_in.as_int()).ok_or(WitnessFailure::Overflow)?;
    if &congruent != a_out.as_int() {
        return Err(WitnessFailure::CongruenceMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::LineStyle::*;

    fn qc(rows: &[&[i64]]) -> QuasiCartanMatrix {
        QuasiCartanMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn canonical_matrices() {
        assert_eq!(canonical_cartan(DynkinType::a(1)), qc(&[&[2]]));
        assert_eq!(canonical_cartan(DynkinType::a(3)), qc(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]));
        let d4 = canonical_cartan(DynkinType::d(4));
        assert_eq!(d4.get(0, 2), -1);
        assert_eq!(d4.get(1, 2), -1);
        assert_eq!(d4.get(2, 3), -1);
        assert_eq!(d4.to_bigraph().edge_count(), 3);
        assert!(canonical_cartan_of(Family::D, 3).is_err());
        for t in ["A1", "A5", "D4", "D7", "E6", "E7", "E8"] {
            let t: DynkinType = t.parse().unwrap();
            let m = canonical_cartan(t);
            assert!(m.is_positive_definite(), "{t}");
            assert_eq!(recognize_diagram(&m.to_bigraph()).unwrap(), vec![t]);
        }
    }

    #[test]
    fn recognize_diagram_examples() {
        assert_eq!(recognize_diagram(&Bigraph::path(5)).unwrap(), vec![DynkinType::a(5)]);
        let star = Bigraph::from_triples(4, &[(0, 1, Solid), (0, 2, Solid), (0, 3, Solid)]);
        assert_eq!(recognize_diagram(&star).unwrap(), vec![DynkinType::d(4)]);
        // arms (1,2,2) around vertex 0
        let e6 = Bigraph::from_triples(
            6,
            &[(0, 1, Solid), (0, 2, Solid), (2, 3, Solid), (0, 4, Solid), (4, 5, Solid)],
        );
        assert_eq!(recognize_diagram(&e6).unwrap(), vec![DynkinType::e(6)]);
        // affine E6 (arms 2,2,2) is rejected
        let bad = Bigraph::from_triples(
            7,
            &[(0, 1, Solid), (1, 2, Solid), (0, 3, Solid), (3, 4, Solid), (0, 5, Solid), (5, 6, Solid)],
        );
        assert!(recognize_diagram(&bad).is_err());
        let dotted = Bigraph::from_triples(2, &[(0, 1, Dotted)]);
        assert!(recognize_diagram(&dotted).is_err());
        let cycle = Bigraph::from_triples(3, &[(0, 1, Solid), (1, 2, Solid), (0, 2, Solid)]);
        assert!(recognize_diagram(&cycle).is_err());
    }

    #[test]
    fn label_diagram_maps_onto_standard_layout() {
        let g = Bigraph::from_triples(
            9,
            &[
                (4, 0, Solid),
                (4, 7, Solid),
                (4, 2, Solid),
                (2, 5, Solid),
                (1, 3, Solid),
                (6, 8, Solid),
                (8, 3, Solid),
            ],
        );
        let a = QuasiCartanMatrix::from_bigraph(&g);
        let labelled = label_diagram(&g).unwrap();
        let types: Vec<_> = labelled.iter().map(|x| x.0).collect();
        assert_eq!(types, vec![DynkinType::d(5), DynkinType::a(4)]);
        let perm: Vec<usize> = labelled.into_iter().flat_map(|x| x.1).collect();
        let expected = QuasiCartanMatrix::direct_sum(&[
            canonical_cartan(DynkinType::d(5)),
            canonical_cartan(DynkinType::a(4)),
        ]);
        assert_eq!(a.permuted(&perm), expected);
    }

    #[test]
    fn inflations_examples() {
        let a3 = canonical_cartan(DynkinType::a(3));
        let res = inflations_method(&a3).unwrap();
        assert!(res.witness.is_empty());
        assert_eq!(res.types, vec![DynkinType::a(3)]);

        let a = qc(&[&[2, 1], &[1, 2]]);
        let res = inflations_method(&a).unwrap();
        assert_eq!(res.witness.steps(), &[FlationStep::new(0, 1)]);
        assert_eq!(res.canonical, qc(&[&[2, -1], &[-1, 2]]));
        assert_eq!(res.types, vec![DynkinType::a(2)]);
        assert_eq!(verify_witness(&a, &res.canonical, &res.witness), Ok(()));
    }

    #[test]
    fn inflations_errors() {
        let triangle = qc(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(inflations_method(&triangle), Err(InflationError::NotPositiveDefinite));
        let big = qc(&[&[2, 2], &[2, 2]]);
        assert!(matches!(inflations_method(&big), Err(InflationError::EntryOutOfRange { .. })));
    }

    #[test]
    fn verify_witness_detects_corruption() {
        let a = qc(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        let res = inflations_method(&a).unwrap();
        assert_eq!(verify_witness(&a, &res.canonical, &res.witness), Ok(()));
        assert_eq!(
            verify_witness(&a, &a, &FlationWitness::identity(3)),
            Ok(())
        );
        let mut steps = res.witness.steps().to_vec();
        steps[0] = FlationStep::new(steps[0].r, (steps[0].r + 1) % 3);
        let bad = FlationWitness::from_parts(steps, res.witness.accumulated().clone());
        assert!(verify_witness(&a, &res.canonical, &bad).is_err());
        assert_eq!(
            verify_witness(&a, &canonical_cartan(DynkinType::a(2)), &res.witness),
            Err(WitnessFailure::DimensionMismatch)
        );
    }

    #[test]
    fn pivot_rules_agree_on_type() {
        let a = qc(&[&[2, 1, 1, 0], &[1, 2, 1, 0], &[1, 1, 2, -1], &[0, 0, -1, 2]]);
        if a.is_positive_definite() {
            let x = inflations_method_with(&a, PivotRule::Lexicographic).unwrap();
            let y = inflations_method_with(&a, PivotRule::ReverseLexicographic).unwrap();
            assert_eq!(x.types, y.types);
        }
    }
}
