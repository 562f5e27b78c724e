//! The single numerical tolerance used by every comparison in the crate.
//!
//! Rank decisions cut singular values below `epsilon() * max(sigma_max, 1)`;
//! membership and equality tests compare absolute Hilbert–Schmidt residuals
//! of unit-normalized matrices against `epsilon()`.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_EPSILON: f64 = 1e-9;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

pub fn epsilon() -> f64 {
    f64::from_bits(EPSILON_BITS.load(Ordering::Relaxed))
}

/// Overrides the global tolerance. Non-positive or non-finite values are ignored.
pub fn set_epsilon(eps: f64) {
    if eps.is_finite() && eps > 0.0 {
        EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
    }
}
