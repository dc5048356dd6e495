pub mod analysis;
pub mod cli;
pub mod criteria;
mod decimal;
pub mod envelopes;
pub mod interval;
pub mod report;
pub mod seq_core;
pub mod verdict;
