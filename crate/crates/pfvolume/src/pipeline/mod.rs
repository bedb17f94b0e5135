//! Recursive volume algorithms (placeholder).
pub struct VolumeReport;
pub struct VolumeRequest;
