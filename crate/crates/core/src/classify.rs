//! Component-wise classification through the structural recognizers, falling
//! back to the inflations method for the exceptional types.

use thiserror::Error;

use crate::bigraph::{Bigraph, BigraphError};
use crate::blocks::{classify_a, reduce_to_an};
use crate::dcycle::{decomposition_from_split, recognize_d, reduce_to_dn};
use crate::dynkin::DynkinType;
use crate::flation::{apply_sequence_matrix, FlationStep, FlationWitness};
use crate::inflations::{check_entries, inflations_method, ClassificationResult, InflationError, Route};
use crate::matrix::{IntMatrix, QuasiCartanMatrix};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("entry ({i},{j}) = {value} lies outside {{-1,0,1}}")]
    EntryOutOfRange { i: usize, j: usize, value: i64 },
    #[error("bigraph has parallel edges; simplify it first")]
    NotSimple,
    #[error("{0}")]
    Graph(BigraphError),
    #[error("recognizers disagree on component containing vertex {0}")]
    Inconsistent(usize),
}

impl From<InflationError> for ClassifyError {
    fn from(e: InflationError) -> ClassifyError {
        match e {
            InflationError::NotPositiveDefinite => ClassifyError::NotPositiveDefinite,
            InflationError::EntryOutOfRange { i, j, value } => ClassifyError::EntryOutOfRange { i, j, value },
            _ => ClassifyError::Inconsistent(0),
        }
    }
}

impl From<BigraphError> for ClassifyError {
    fn from(e: BigraphError) -> ClassifyError {
        match e {
            BigraphError::NotSimple => ClassifyError::NotSimple,
            other => ClassifyError::Graph(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Block trees for A, D-cycle splits for D, inflations for what remains.
    #[default]
    Structural,
    Inflations,
}

pub fn classify(g: &Bigraph) -> Result<ClassificationResult, ClassifyError> {
    classify_with(g, Method::Structural)
}

pub fn classify_matrix(a: &QuasiCartanMatrix) -> Result<ClassificationResult, ClassifyError> {
    classify_matrix_with(a, Method::Structural)
}

pub fn classify_matrix_with(a: &QuasiCartanMatrix, method: Method) -> Result<ClassificationResult, ClassifyError> {
    check_entries(a)?;
    classify_with(&a.to_bigraph(), method)
}

pub fn classify_with(g: &Bigraph, method: Method) -> Result<ClassificationResult, ClassifyError> {
    g.ensure_simple()?;
    let a = QuasiCartanMatrix::from_bigraph(g);
    if method == Method::Inflations {
        return Ok(inflations_method(&a)?);
    }
    if !a.is_positive_definite() {
        return Err(ClassifyError::NotPositiveDefinite);
    }
    let n = g.vertex_count();
    let mut types = Vec::new();
    let mut routes = Vec::new();
    let mut steps: Vec<FlationStep> = Vec::new();
    let mut accumulated = IntMatrix::identity(n);
    let mut permutation = Vec::with_capacity(n);
    for comp in g.components() {
        let local = g.induced(&comp);
        let (t, route, w, order) = classify_component(&local).ok_or(ClassifyError::Inconsistent(comp[0]))?;
        types.push(t);
        routes.push(route);
        steps.extend(w.steps().iter().map(|st| FlationStep::new(comp[st.s], comp[st.r])));
        let m = w.accumulated();
        for (i, &gi) in comp.iter().enumerate() {
            for (j, &gj) in comp.iter().enumerate() {
                accumulated.set(gi, gj, m.get(i, j));
            }
        }
        permutation.extend(order.iter().map(|&k| comp[k]));
    }
    let (canonical, replayed) = apply_sequence_matrix(&a, &steps).map_err(|_| ClassifyError::Inconsistent(0))?;
    if replayed.accumulated() != &accumulated {
        return Err(ClassifyError::Inconsistent(0));
    }
    let result = ClassificationResult {
        types,
        routes,
        witness: FlationWitness::from_parts(steps, accumulated),
        canonical,
        permutation,
    };
    if result.canonical.permuted(&result.permutation) != result.standard_matrix() {
        return Err(ClassifyError::Inconsistent(0));
    }
    Ok(result)
}

fn classify_component(g: &Bigraph) -> Option<(DynkinType, Route, FlationWitness, Vec<usize>)> {
    let n = g.vertex_count();
    if classify_a(g) {
        let (w, order) = reduce_to_an(g).ok()?;
        return Some((DynkinType::a(n), Route::BlockTree, w, order));
    }
    if let Some(split) = recognize_d(g) {
        let d = decomposition_from_split(g, &split).ok()?;
        let (w, order) = reduce_to_dn(g, &d).ok()?;
        return Some((DynkinType::d(n), Route::DCycle, w, order));
    }
    let r = inflations_method(&QuasiCartanMatrix::from_bigraph(g)).ok()?;
    Some((r.types[0], Route::Inflations, r.witness, r.permutation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::LineStyle::*;
    use crate::inflations::{canonical_diagram, verify_witness};

    fn check(g: &Bigraph, expected: &[&str]) {
        let r = classify(g).unwrap();
        let names: Vec<String> = r.types.iter().map(|t| t.to_string()).collect();
        assert_eq!(names, expected);
        let a = QuasiCartanMatrix::from_bigraph(g);
        assert_eq!(verify_witness(&a, &r.canonical, &r.witness), Ok(()));
        assert_eq!(r.canonical.permuted(&r.permutation), r.standard_matrix());
    }

    #[test]
    fn single_components() {
        check(&Bigraph::path(1), &["A1"]);
        check(&Bigraph::path(5), &["A5"]);
        check(&Bigraph::from_triples(3, &[(0, 1, Solid), (1, 2, Solid), (0, 2, Dotted)]), &["A3"]);
        check(&Bigraph::from_triples(4, &[(0, 1, Solid), (1, 2, Solid), (2, 3, Solid), (0, 3, Dotted)]), &["D4"]);
        check(&canonical_diagram(DynkinType::d(6)), &["D6"]);
        check(&canonical_diagram(DynkinType::e(7)), &["E7"]);
    }

    #[test]
    fn routes_are_reported() {
        let r = classify(&canonical_diagram(DynkinType::e(6))).unwrap();
        assert_eq!(r.routes, vec![Route::Inflations]);
        let r = classify(&canonical_diagram(DynkinType::d(5))).unwrap();
        assert_eq!(r.routes, vec![Route::DCycle]);
    }

    #[test]
    fn disjoint_union() {
        let g = Bigraph::from_triples(
            8,
            &[(0, 5, Solid), (5, 6, Solid), (6, 7, Solid), (7, 0, Dotted), (1, 3, Solid), (2, 4, Dotted)],
        );
        check(&g, &["D4", "A2", "A2"]);
    }

    #[test]
    fn rejects_bad_input() {
        let all_solid_square = Bigraph::from_triples(4, &[(0, 1, Solid), (1, 2, Solid), (2, 3, Solid), (0, 3, Solid)]);
        assert_eq!(classify(&all_solid_square), Err(ClassifyError::NotPositiveDefinite));
        let parallel = Bigraph::from_triples(2, &[(0, 1, Solid), (0, 1, Solid)]);
        assert_eq!(classify(&parallel), Err(ClassifyError::NotSimple));
        let m = QuasiCartanMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(
            classify_matrix(&m),
            Err(ClassifyError::EntryOutOfRange { i: 0, j: 1, value: -2 })
        );
    }

    #[test]
    fn methods_agree_on_types() {
        let g = Bigraph::from_triples(5, &[(0, 1, Dotted), (1, 2, Solid), (2, 3, Solid), (3, 0, Solid), (2, 4, Solid)]);
        let s = classify_with(&g, Method::Structural).unwrap();
        let i = classify_with(&g, Method::Inflations).unwrap();
        assert_eq!(s.types, i.types);
    }
}
