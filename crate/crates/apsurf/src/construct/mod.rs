//! Constructions of invariants and surfaces with prescribed periodic direction field.

mod jk;
mod tables;
mod zk;

pub use jk::{
    companion_matrix, diagonal_j, eigenvector, j_from_eigenvectors, j_from_integral_matrix, jk_from_dual_bases,
    jk_from_minpoly, minpoly_dual_bases, normalize_area, transpose_int, IntegralSymmetricInput,
};
pub use tables::{
    eh_ne_ah_example, rectangle_table_columns, rectangle_table_surface, square_tiled_surface, staircase_polygon,
    unfold4, Column, Notch,
};
pub use zk::{half_angle_cosines, zk_field, zk_unfold_triangle};
