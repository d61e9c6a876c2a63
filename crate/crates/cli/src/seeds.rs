//! Per-trial seeds derived from a master seed, so results do not depend on
//! the order in which trials are scheduled.

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` of experiment `experiment` under `master`.
pub fn trial_seed(master: u64, experiment: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ experiment) ^ trial)
}
