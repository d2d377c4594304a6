const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output function.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` in a run seeded with `seed`: the `index+1`-th
/// SplitMix64 output of the stream starting at `seed`.
#[inline]
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        // published SplitMix64 outputs for state 1234567
        let expected = [6457827717110365317u64, 3203168211198807973, 9817491932198370423];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(trial_seed(1234567, i as u64), *e);
        }
    }

    #[test]
    fn distinct_trials() {
        let seeds: alloc::vec::Vec<u64> = (0..1000).map(|i| trial_seed(42, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
    }
}
