//! Discriminant recursion, ideal audits and non-abelian certificates.

mod audit;
mod disc;
mod nonabelian;

pub use audit::{ideal_power_audit, IdealAudit, PrimeValuations, PrintedBranches};
pub use disc::{disc_iterate, disc_recursion, relative_norm, DiscStep, DiscTrace, ORACLE_MAX_DEGREE};
pub use nonabelian::{nonabelian_certificate, nonsquare_certificate, odd_valuation_witness, NonabelianCase};

#[cfg(test)]
mod tests;
