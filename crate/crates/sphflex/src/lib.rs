//! Spherical flexibility of graphs: NAP-colorings, motions of `K_{3,3}`, and
//! the cut / μ-table combinatorics behind their classification.

pub mod coloring;
pub mod continuation;
pub mod cuts;
pub mod facts;
pub mod graph;
pub mod io;
pub mod motions;
pub mod quad;
pub mod spherical;
pub mod tol;
