//! Library surface of the command-line tool, exposed so integration tests
//! can drive runs in-process.

pub mod certificate;
pub mod run;
pub mod scenario;

pub use certificate::Certificate;
pub use run::{cocycle_order, construct, realize, verify, RunOptions};
pub use scenario::{Depth, Pipeline, ScenarioFile};
