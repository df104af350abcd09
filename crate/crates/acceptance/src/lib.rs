//! Acceptance suite for `berge-ramsey`; see `tests/acceptance.rs`.
