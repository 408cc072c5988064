//! Small named algebras used in tests, golden files and the CLI.

use crate::algebra::{Algebra, Quiver, Relation, TableSpec};
use crate::scalar::Scalar;

/// `1 -> 2`, basis `{e_1, e_2, a}`.
pub fn a2<T: Scalar>() -> Algebra<T> {
    Algebra::from_quiver(&Quiver::with_vertices(2).arrow("a", 0, 1), &[], 2).expect("valid")
}

/// `1 -> 2 -> 3` with `a*b = 0`.
pub fn a3_with_relation<T: Scalar>() -> Algebra<T> {
    let q = Quiver::with_vertices(3).arrow("a", 0, 1).arrow("b", 1, 2);
    Algebra::from_quiver(&q, &[Relation::monomial(&["a", "b"])], 3).expect("valid")
}

/// `a: 1 -> 2`, `b: 2 -> 1` with all paths of length two set to zero.
pub fn cyclic_two_vertex<T: Scalar>() -> Algebra<T> {
    let q = Quiver::with_vertices(2).arrow("a", 0, 1).arrow("b", 1, 0);
    Algebra::from_quiver(&q, &[], 2).expect("valid")
}

/// The ground field.
pub fn field<T: Scalar>() -> Algebra<T> {
    Algebra::from_quiver(&Quiver::with_vertices(1), &[], 1).expect("valid")
}

/// `k[x]/(x^2)` as a raw table.
pub fn dual_numbers_table<T: Scalar>() -> TableSpec<T> {
    TableSpec {
        vertices: vec!["1".into()],
        labels: vec!["e_1".into(), "x".into()],
        products: vec![(0, 0, vec![(0, T::one())]), (0, 1, vec![(1, T::one())]), (1, 0, vec![(1, T::one())])],
        idempotents: vec![0],
    }
}

pub fn dual_numbers<T: Scalar>() -> Algebra<T> {
    Algebra::from_table(dual_numbers_table()).expect("valid")
}
