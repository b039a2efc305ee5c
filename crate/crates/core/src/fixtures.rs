//! Two known cyclic representations, stored element by element.

use std::sync::Arc;

use crate::coloring::Coloring;
use crate::group::FiniteGroup;

/// Classes A, B, C of the `63_65` representation over `Z/29`.
pub const Z29_A: [usize; 12] = [3, 7, 8, 9, 11, 13, 16, 18, 20, 21, 22, 26];
pub const Z29_B: [usize; 8] = [1, 4, 10, 12, 17, 19, 25, 28];
pub const Z29_C: [usize; 8] = [2, 5, 6, 14, 15, 23, 24, 27];

/// Classes A, B, C of the `57_65` representation over `Z/46`.
pub const Z46_A: [usize; 23] = [
    1, 2, 9, 10, 12, 13, 15, 18, 20, 21, 22, 23, 24, 25, 26, 28, 31, 33, 34, 36, 37, 44, 45,
];
pub const Z46_B: [usize; 10] = [6, 7, 8, 14, 16, 30, 32, 38, 39, 40];
pub const Z46_C: [usize; 12] = [3, 4, 5, 11, 17, 19, 27, 29, 35, 41, 42, 43];

fn build(n: usize, a: &[usize], b: &[usize], c: &[usize]) -> Coloring {
    let g = Arc::new(FiniteGroup::cyclic(n).expect("positive modulus"));
    Coloring::new(
        g,
        [("a", a.to_vec()), ("b", b.to_vec()), ("c", c.to_vec())],
    )
    .expect("fixture elements are in range")
}

pub fn coloring_63_65_z29() -> Coloring {
    build(29, &Z29_A, &Z29_B, &Z29_C)
}

pub fn coloring_57_65_z46() -> Coloring {
    build(46, &Z46_A, &Z46_B, &Z46_C)
}
