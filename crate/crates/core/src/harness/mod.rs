//! Random instance generation and lemma verification.

pub mod generate;
pub mod verify;

pub use generate::{generate_instance, GenSpec, Instance, InstanceJson, Kind};

pub use verify::{replay, run_verification, FailureDump, VerificationReport, LEMMAS};
