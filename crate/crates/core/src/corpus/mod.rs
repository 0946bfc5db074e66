//! Generated control flow corpora: program skeletons and enumerated
//! two-way-branching flow graphs.

mod enumerate;
mod skeleton;

pub use enumerate::{
    enumerate_2fg_progenitors, enumerate_outdeg2_family, progenitor_to_2fg, random_2fg,
    valid_pairs, ProgenitorRecord, MAX_FAMILY_ORDER, MIN_FAMILY_ORDER,
};
pub use skeleton::{
    gen_goto_skeleton, gen_structured_skeleton, parse_skeleton, skeleton_to_cfg, LineKind, Skeleton,
};
