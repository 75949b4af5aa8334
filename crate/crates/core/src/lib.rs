//! Equivariant-degree machinery for Gamma x O(2) symmetric Newtonian systems:
//! exact subgroup lattices, Burnside/Euler ring arithmetic, gradient basic
//! degrees, and the existence/bifurcation invariants built from them.

pub mod angle;
pub mod basicdeg;
pub mod burnside;
pub mod chartab;
pub mod euler;
pub mod group;
pub mod gs1;
pub mod lattice;
pub mod newton;
pub mod o2;
pub mod perm;
pub mod samples;
pub mod smallgrp;
