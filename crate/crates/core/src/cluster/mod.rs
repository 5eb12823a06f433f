//! Cluster algebras with principal coefficients.

mod enumerate;
mod gvector;
mod laurent;
mod seed;

pub use enumerate::{
    enumerate_clusters, enumerate_clusters_to_depth, ClusterEnumeration, ClusterRecord, EnumerationStatus,
};
pub use gvector::{g_vector_of, mutate_gvector, y_degree, GVector, TropicalSeed};
pub use laurent::{check_laurent, Exponent, Fraction, LaurentError, LaurentJson, LaurentPoly, TermJson};
pub use seed::{initial_seed, mutate_seed, ClusterError, Seed, SeedJson};
