//! Verification of irredundant spanning, envelopes, concision and the fiber
//! condition.

mod decomposition;
mod envelope;
mod fiber;

pub use decomposition::{
    irredundant_by_subsets, verify_batch, verify_irredundant, Decomposition, IrredundancyReport,
};
pub use envelope::{
    extend_from_subspace, is_concise, restrict_to_envelope, restrict_to_subspace, set_envelope,
    tensor_envelope, Envelope,
};
pub use fiber::{fiber_condition, FiberReport, FiberViolation};
