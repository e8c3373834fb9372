//! Federated data-driven multi-objective optimization.
//!
//! Clients keep private evaluations of an expensive problem and train local
//! radial-basis-function networks. A server averages the networks after
//! aligning their centers, builds a lower-confidence-bound acquisition from
//! the ensemble and searches it with NSGA-II or RVEA; the chosen candidates go
//! back to the clients for true evaluation. The [`harness`] module runs whole
//! experiments on the DTLZ suite and reports IGD.

pub mod acquisition;
pub mod benchmarks;
pub mod error;
pub mod federation;
pub mod harness;
pub mod infill;
pub mod metrics;
pub mod moea;
pub mod sampling;
pub mod surrogate;

pub use acquisition::{Acquisition, FederatedLcb};
pub use benchmarks::{Family, Problem};
pub use error::{Error, Result};
pub use federation::{Federation, FederationConfig, RoundState};
pub use harness::{
    run_experiment, sweep, ConvergenceRecord, ExperimentConfig, ExperimentResult, SweepParameter,
};
pub use metrics::{dominates, igd, nondominated_filter};
pub use moea::{MoeaConfig, Optimizer};
pub use surrogate::{Dataset, Kernel, RbfnModel, TrainConfig};
