//! Dynamic feedback arc set and feedback vertex set structures for
//! tournaments under arc reversals.
//!
//! The building blocks are layered:
//!
//! * [`basic::DsBasic`] keeps a tournament together with its in-degree
//!   buckets and finds the first vertex after the transitive prefix.
//! * [`triangle_promise::DspTriangle`] adds the set of back arcs and finds
//!   triangles quickly when the tournament is close to acyclic.
//! * [`triangle_full::DsTriangle`] finds triangles in polylogarithmic time
//!   per in-neighbour without any assumption on the input.
//! * [`fast`] answers "is the feedback arc set at most k" by branching.
//! * [`drem::DremState`] maintains a tournament with a small set of removed
//!   vertices, and [`fvst`] builds feedback vertex set queries on top.
//! * [`oracles`] holds exact brute-force references used by the tests.

pub mod arrayset;
pub mod basic;
pub mod counters;
pub mod drem;
pub mod error;
pub mod fast;
pub mod fvst;
pub mod oracles;
pub mod tournament;
pub mod triangle_full;
pub mod triangle_promise;

pub use counters::Counters;
pub use error::{Error, Result};
pub use tournament::{Tournament, Triangle};
