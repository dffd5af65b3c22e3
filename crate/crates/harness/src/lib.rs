//! Instance generation, stream replay, oracle verification and benchmarking
//! for the dynamic tournament structures in `tourndyn`.

pub mod bench;
pub mod campaign;
pub mod engine;
pub mod gen;
pub mod run;
pub mod stream;
pub mod verify;

pub use engine::{Answer, Engine, Snapshot};
pub use run::{BenchRecord, RunOptions};
pub use stream::{Header, Op, StructureKind, UpdateStream};
