//! Seeded random streams and sorted uniform variates.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

/// A source of uniform variates on the open interval (0, 1).
pub trait UniformSource {
    fn uniform_open(&mut self) -> f64;
}

/// Deterministic seeded random stream.
///
/// Backed by ChaCha8, which gives a 2^64 word-position counter per stream and
/// 2^64 independent streams per seed. The same `(seed, substream)` pair
/// yields the same sequence on every platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    substream: u64,
    draws: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    /// A stream independent of every other substream id under the same seed.
    pub fn substream(seed: u64, id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(id);
        RngStream {
            seed,
            substream: id,
            draws: 0,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn substream_id(&self) -> u64 {
        self.substream
    }

    /// Number of calls to [`UniformSource::uniform_open`] so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }
}

impl UniformSource for RngStream {
    /// Midpoint of one of 2^53 equal cells, so never exactly 0 or 1.
    #[inline]
    fn uniform_open(&mut self) -> f64 {
        self.draws += 1;
        let bits = self.inner.next_u64() >> 11;
        (bits as f64 + 0.5) * INV_2_53
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Replays a fixed sequence of uniforms. Panics once the sequence runs out.
#[derive(Debug, Clone)]
pub struct Replay<'a> {
    values: &'a [f64],
    pos: usize,
}

impl<'a> Replay<'a> {
    pub fn new(values: &'a [f64]) -> Self {
        Replay { values, pos: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl UniformSource for Replay<'_> {
    fn uniform_open(&mut self) -> f64 {
        let u = *self
            .values
            .get(self.pos)
            .expect("replayed uniform sequence exhausted");
        self.pos += 1;
        u
    }
}

/// Strictly increasing uniform variates in (0, 1].
///
/// Generated values always lie in the open interval; the closed upper end
/// is accepted from callers so that `u = 1` can be matched against the
/// catch-all last bucket.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SortedUniforms {
    values: Vec<f64>,
}

impl SortedUniforms {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let mut prev = 0.0;
        for (index, &u) in values.iter().enumerate() {
            if !(u > 0.0 && u <= 1.0) {
                return Err(Error::UniformOutOfRange(u));
            }
            if index > 0 && u <= prev {
                return Err(Error::NotSorted { index });
            }
            prev = u;
        }
        Ok(SortedUniforms { values })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }
}

/// Order statistics of `n` iid uniforms via exponential spacings.
///
/// Draws exactly `n + 1` uniforms, forms the running sums `Z_i` of
/// `-ln u_i` and returns `Z_i / Z_{n+1}` for `i = 1..=n`.
pub fn sorted_uniforms<S: UniformSource + ?Sized>(src: &mut S, n: usize) -> SortedUniforms {
    let mut values = Vec::with_capacity(n);
    sorted_uniforms_into(src, n, &mut values);
    SortedUniforms { values }
}

/// [`sorted_uniforms`] writing into a reusable buffer.
pub(crate) fn sorted_uniforms_into<S: UniformSource + ?Sized>(
    src: &mut S,
    n: usize,
    buf: &mut Vec<f64>,
) {
    buf.clear();
    if n == 0 {
        return;
    }
    let mut acc = 0.0;
    for _ in 0..n {
        acc += -src.uniform_open().ln();
        buf.push(acc);
    }
    let total = acc - src.uniform_open().ln();

    // Rounding can merge neighbours when a spacing is tiny relative to the
    // running sum; nudge those up by one ulp to keep the order strict.
    let mut prev = 0.0f64;
    for v in buf.iter_mut() {
        let mut u = *v / total;
        if u <= prev {
            u = prev.next_up();
        }
        *v = u;
        prev = u;
    }
    let mut limit = 1.0f64;
    for v in buf.iter_mut().rev() {
        if *v < limit {
            break;
        }
        *v = limit.next_down();
        limit = *v;
    }

    debug_assert!(buf.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(buf[0] > 0.0 && buf[buf.len() - 1] < 1.0);
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant(f64, usize);

    impl UniformSource for Constant {
        fn uniform_open(&mut self) -> f64 {
            self.1 += 1;
            self.0
        }
    }

    #[test]
    fn uniform_open_stays_inside_unit_interval() {
        for seed in 0..20 {
            let mut s = RngStream::new(seed);
            for _ in 0..1000 {
                let u = s.uniform_open();
                assert!(u > 0.0 && u < 1.0);
            }
        }
    }

    #[test]
    fn stream_advances_and_is_reproducible() {
        let mut a = RngStream::new(42);
        let x = a.uniform_open();
        let y = a.uniform_open();
        assert_ne!(x, y);

        let mut b = RngStream::new(42);
        let seq_a: Vec<f64> = (0..100).map(|_| a.uniform_open()).collect();
        b.uniform_open();
        b.uniform_open();
        let seq_b: Vec<f64> = (0..100).map(|_| b.uniform_open()).collect();
        assert_eq!(seq_a, seq_b);
    }

    #[test]
    fn constant_half_gives_thirds() {
        let mut src = Constant(0.5, 0);
        let u = sorted_uniforms(&mut src, 2);
        assert_eq!(src.1, 3);
        let got = u.as_slice();
        assert!((got[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((got[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_count_is_empty_and_draws_nothing() {
        let mut s = RngStream::new(1);
        assert!(sorted_uniforms(&mut s, 0).is_empty());
        assert_eq!(s.draws(), 0);
    }

    #[test]
    fn single_value_inside_unit_interval() {
        let mut s = RngStream::new(9);
        let u = sorted_uniforms(&mut s, 1);
        assert_eq!(u.len(), 1);
        assert!(u.as_slice()[0] > 0.0 && u.as_slice()[0] < 1.0);
        assert_eq!(s.draws(), 2);
    }

    #[test]
    fn ties_are_broken_upward() {
        // 1 - 2^-54 is absorbed by the running sum, producing equal Z_i.
        let tiny = 1.0 - f64::EPSILON / 4.0;
        let seq = [0.5, tiny, tiny, 0.5];
        let mut src = Replay::new(&seq);
        let u = sorted_uniforms(&mut src, 3);
        let v = u.as_slice();
        assert!(v[0] < v[1] && v[1] < v[2] && v[2] < 1.0);
    }

    #[test]
    fn from_values_rejects_unsorted_and_out_of_range() {
        assert_eq!(
            SortedUniforms::from_values(vec![0.2, 0.2]),
            Err(Error::NotSorted { index: 1 })
        );
        assert!(matches!(
            SortedUniforms::from_values(vec![0.0, 0.5]),
            Err(Error::UniformOutOfRange(_))
        ));
        assert!(SortedUniforms::from_values(vec![0.5, 1.0]).is_ok());
    }
}
