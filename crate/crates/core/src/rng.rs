//! Deterministic random number plumbing.
//!
//! Every game owns a ChaCha12 stream seeded from
//! `derive_seed(master, bias, game_index)`, so the outcome of game i at bias
//! b is a pure function of the experiment's master seed — independent of
//! thread count, execution order, and platform. The derivation function is
//! pinned (splitmix64 chain, v1) and echoed in experiment metadata.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// The RNG handed to strategies during a game.
pub type GameRng = ChaCha12Rng;

/// Identifier recorded in experiment metadata for the RNG scheme.
pub const RNG_SCHEME: &str = "chacha12/splitmix64-derive-v1";

/// One step of the splitmix64 sequence (Steele, Lea & Flood's constants).
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-game seed: a splitmix64 chain over (master, bias, index).
pub fn derive_seed(master: u64, bias: u64, game_index: u64) -> u64 {
    let mut s = splitmix64(master);
    s = splitmix64(s ^ bias);
    s = splitmix64(s ^ game_index);
    s
}

/// Game RNG for a derived seed.
pub fn game_rng(seed: u64) -> GameRng {
    ChaCha12Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn derive_seed_separates_coordinates() {
        let base = derive_seed(42, 3, 0);
        assert_ne!(base, derive_seed(42, 3, 1));
        assert_ne!(base, derive_seed(42, 4, 0));
        assert_ne!(base, derive_seed(43, 3, 0));
        // stable across runs: freeze one value
        assert_eq!(derive_seed(0, 0, 0), splitmix64(splitmix64(splitmix64(0))));
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = game_rng(derive_seed(7, 100, 5));
        let mut b = game_rng(derive_seed(7, 100, 5));
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
