//! Rewriting systems beyond context-free grammars: membership for
//! noncontracting grammars and a step-bounded Turing machine.

mod csg;
mod tm;

pub use csg::{csg_member, DEFAULT_FORM_BUDGET};
pub use tm::{Move, StepOutcome, TmConfig, TmRun, TuringMachine, TuringMachineBuilder, Verdict};
