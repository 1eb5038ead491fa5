//! Finite group toolkit for adjoining roots economically.
//!
//! The crate builds overgroups in which a chosen element becomes a square
//! (or an `n`-th power), solves positive equations in cyclic wreath
//! products, and replays the dihedral lower-bound argument on concrete
//! groups, including exhaustive searches inside symmetric groups.

pub mod constructions;
pub mod dihedral;
pub mod equations;
pub mod error;
pub mod group;
pub mod perm;
pub mod universe;

pub use error::{GroupError, Result};
pub use group::{Element, Embedding, Generated, Group, Subgroup};
pub use perm::Permutation;

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| GroupError::ResourceCap(format!("worker pool: {e}"))),
        None => Ok(f()),
    }
}
