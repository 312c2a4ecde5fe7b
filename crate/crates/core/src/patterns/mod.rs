//! Type I/II patterns, slots, shells and local shells.

pub mod fixtures;
mod pair;
mod shell;
mod slots;

pub use pair::{
    canonical_pattern_pair, entry_point, exit_point, validate_pattern_pair, PatternPair, PatternType,
    PatternValidation, CUBE_SIDE,
};
pub use shell::{
    avoidance_equivalence_check, combinations, local_shell_key, local_shell_members, shared_avoidance_witness,
    shell_key, AvoidanceReport, LocalShell, LocalShellKey, ShellKey, MAX_LOCAL_SLOTS,
};
pub use slots::{empty_polygon, scan_patterns, slot_partition, Segment, Slot, SlotCounts, SlotMap};
