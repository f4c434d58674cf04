//! Binomial coefficients and colex enumeration of fixed-size subsets of a
//! word-sized ground set.

/// `BINOM[n][k]` for `0 <= k <= n <= 64`. Every entry fits in a `u64`.
static BINOM: [[u64; 65]; 65] = {
    let mut t = [[0u64; 65]; 65];
    let mut n = 0;
    while n < 65 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n || n > 64 {
        if k > n {
            return 0;
        }
        return binom_u128(n as u128, k as u128) as u64;
    }
    BINOM[n][k]
}

fn binom_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of a subset in colex order among subsets of the same size.
pub fn colex_rank(mut mask: u64) -> usize {
    let mut rank = 0u64;
    let mut i = 1;
    while mask != 0 {
        let c = mask.trailing_zeros() as usize;
        rank += binom(c, i);
        i += 1;
        mask &= mask - 1;
    }
    rank as usize
}

/// Iterator over all `k`-subsets of `{0, .., n-1}` as bit masks, in colex
/// order (which for equal-size sets coincides with numeric order).
#[derive(Clone, Debug)]
pub struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= 64);
        if k > n {
            return Self { next: None, limit: 0 };
        }
        let first = low_bits(k);
        // highest valid mask has its top k bits set
        let limit = if k == 0 { 0 } else { low_bits(k) << (n - k) };
        Self { next: Some(first), limit }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == self.limit || cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    }
}

pub fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterate the set bits of a mask from lowest to highest.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Nondecreasing partitions of `n` into exactly `m` parts.
pub(crate) fn partitions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut size = min;
        while size * parts <= left {
            cur.push(size);
            rec(left - size, parts - 1, size, cur, out);
            cur.pop();
            size += 1;
        }
    }
    let mut out = Vec::new();
    if m >= 1 {
        rec(n, m, 1, &mut Vec::new(), &mut out);
    }
    out
}
