//! Extremal densities of periodic lattice subsets under local
//! neighbor-count constraints.
//!
//! Patterns live on rectangular tori ([`TorusPattern`]); all densities,
//! areas, weights and bounds are exact rationals ([`Rational`]).

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod io;
pub mod lattice;
pub mod rational;
pub mod rules;
pub mod search;
pub mod simplex;
pub mod voronoi;

pub use bounds::{bound_suite, BoundMethod, BoundResult, CertificateCheck, LpBound, WeightCertificate};
pub use constructions::{gallery, generate, GalleryEntry, NamedConstruction};
pub use error::{Error, Result};
pub use io::PatternFile;
pub use lattice::{Cell, Isometry, Neighborhood, TorusPattern};
pub use rational::Rational;
pub use rules::{Constraint, FiniteGrid, LocalSetFamily, StillLifeReport, Violation, WeightFunction};
pub use search::SearchResult;
pub use voronoi::{CellArea, ConfigType, EpsNorm, LocalConfig, Triangle};
