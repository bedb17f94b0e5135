//! CLI entry points (placeholder).
pub fn run_placeholder() -> i32 { 0 }
