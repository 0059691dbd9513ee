//! Exact computation engine for N-complexes over commutative rings.
//!
//! Everything reduces to exact linear algebra (Smith normal form, kernels,
//! solving) over a handful of Euclidean coefficient rings. On top of that sit
//! the N-complex calculus (amplitude cohomology, disks, suspension, cones,
//! homotopies, truncations, long exact sequences), the q-twisted tensor/Hom
//! operations, Koszul and Cech and telescope N-complexes, and the derived
//! torsion / derived completion machinery with its classification of
//! non-finitely-generated results.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cech;
pub mod complex;
pub mod enumerate;
pub mod err;
pub mod koszul;
pub mod matrix;
pub mod module;
pub mod qcalc;
pub mod ring;
pub mod snf;
pub mod torsion;

pub use err::{Error, Result};
pub use matrix::Matrix;
pub use module::{CanonicalFg, FpModule, Subquotient};
pub use ring::{Elem, Ring};
