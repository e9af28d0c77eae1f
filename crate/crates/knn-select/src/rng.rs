//! Seeded, portable random number generation.
//!
//! Everything random in this crate flows through [`SplitMix64`], Vigna's
//! 64-bit mixer (the reference implementation from `splitmix64.c`). The
//! generator is fixed on purpose: splits, folds, and simulated datasets must
//! reproduce bit-for-bit across platforms and releases, so we do not depend
//! on an external RNG crate whose streams may change between versions.
//!
//! Derived draws are equally pinned down:
//! - `next_f64` takes the top 53 bits of `next_u64`, giving a uniform in
//!   `[0, 1)`;
//! - `next_below` uses unbiased rejection sampling (reject below
//!   `2^64 mod bound`);
//! - `next_normal` is the cosine branch of Box-Muller over two uniforms;
//! - `shuffle` is a Fisher-Yates pass from the last element down.

/// SplitMix64 generator. One `u64` of state; every output is a bijective
/// mix of the counter, so short seeds like 0, 1, 2 are fine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `0..bound`, unbiased via rejection sampling.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // 2^64 mod bound; anything below it would over-represent small
        // residues under the modulo.
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let v = self.next_u64();
            if v >= threshold {
                return v % bound;
            }
        }
    }

    /// Standard normal draw (Box-Muller, cosine branch). Consumes two
    /// uniforms per call.
    pub fn next_normal(&mut self) -> f64 {
        // u1 in (0, 1] so the log is finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            slice.swap(i, j);
        }
    }

    /// Seeded permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        self.shuffle(&mut order);
        order
    }
}
