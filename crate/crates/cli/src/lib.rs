//! Presentation files, a fixture catalog, and a runner for the verification
//! checks with machine-readable reports.

pub mod dsl;
pub mod report;
pub mod suite;

/// Environment variable fixing the seed of sampled checks.
pub const SEED_VAR: &str = "VER4_SEED";

/// Seed from `VER4_SEED`, defaulting to 0.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{SEED_VAR} must be an unsigned integer, got `{s}`")),
        Err(_) => Ok(0),
    }
}
