//! Exact-arithmetic engine for Jacobi diagram algebras.
//!
//! The crate works with Chinese characters (vertex-oriented uni-trivalent
//! graphs) and Chinese character diagrams on strings and circles, the spaces
//! they span modulo STU, AS and IHX, and the structures built on top: the
//! cobar complex, rational even associators with certified denominators,
//! the combinatorial Kontsevich invariant of q-tangles and the LMO-type maps.
//!
//! All arithmetic is exact. The linear-algebra and series layers are generic
//! over [`Scalar`]; [`Rational`] is the default instantiation used by the
//! diagram-level modules.

pub mod acceptance;
pub mod associator;
pub mod bspace;
pub mod chi;
pub mod cobar;
pub mod diagram;
pub mod element;
pub mod error;
pub mod hopf;
pub mod linear;
pub mod lmo;
pub mod relations;
pub mod scalar;
pub mod serial;
pub mod series;
pub mod tangle;

pub use diagram::{Component, Graph, Skeleton, Support};
pub use element::Element;
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rationals, the default scalar.
pub type Rational = num_rational::BigRational;
/// Small rationals for experiments that are known not to overflow.
pub type SmallRational = num_rational::Ratio<i64>;
/// Integer type of lattices and normal forms.
pub type Integer = num_bigint::BigInt;
