//! Size caps for the brute-force machinery.

/// Default cap on semigroup size; raise with `CK_MAX_ELEMENTS`.
pub const DEFAULT_MAX_ELEMENTS: usize = 512;

/// Full-scan homomorphism enumeration runs when `|Y|^|X|` stays below this.
pub const HOM_SCAN_BUDGET: u128 = 10_000_000;

/// Node budget for backtracking homomorphism enumeration.
pub const HOM_NODE_BUDGET: u128 = 10_000_000;

/// Ideal enumeration walks `2^size` subsets; refuse beyond this many elements.
pub const IDEAL_ENUM_MAX_SIZE: usize = 20;

/// Embedding targets are materialized only up to this many elements.
pub const MATERIALIZE_CAP: usize = 100_000;

/// Current semigroup-size cap: `CK_MAX_ELEMENTS` if set and parseable,
/// otherwise [`DEFAULT_MAX_ELEMENTS`].
pub fn max_elements() -> usize {
    std::env::var("CK_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}
