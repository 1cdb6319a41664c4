//! Individually stable deviation dynamics for anonymous, diversity,
//! fractional and dichotomous hedonic games.
//!
//! The crate covers the move semantics ([`core`]), the game classes
//! ([`games`]), deviation runs with cycle detection ([`dynamics`]), potential
//! monitors ([`potentials`]), exhaustive decision procedures ([`search`]) and
//! bundled instances plus reduction generators ([`instances`]).
//!
//! Search and batch runs use rayon when the default `parallel` feature is on;
//! without it the same code paths run sequentially and give identical answers.

pub mod core;
pub mod dynamics;
pub mod games;
pub mod instances;
pub mod potentials;
pub mod search;

mod par;

pub use par::is_parallel;
