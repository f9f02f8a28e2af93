//! The coprime-split construction.
//!
//! Writing `n = p * m` with both sides at least 2 and `gcd(p, m) = 1` pins
//! down a unique `r` in `[1, p-1]` with `p | r*t + 1`, where `t = m mod p`.
//! That `r` yields the idempotent pair `r*m + 1` and `(p-r)*m` of `Z_n`.
//! Running over families of such splits enumerates every idempotent of the
//! ring exactly once per representation.

use crate::arith::{self, gcd, Factorization};
use crate::error::{Error, Result};

/// One representation `n = p * m` with coprime sides, identified by the
/// subset of prime-power factors that make up `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    n: u64,
    mask: u32,
    p: u64,
    m: u64,
}

impl Split {
    /// Split off the factors of `fac` selected by `mask`. The mask must be
    /// a nonempty proper subset so that both sides stay above 1.
    pub fn new(fac: &Factorization, mask: u32) -> Result<Self> {
        let k = fac.k();
        let full = full_mask(k);
        if mask == 0 || mask >= full {
            return Err(Error::InvalidMask { mask, k });
        }
        Ok(Self::for_mask(fac, mask))
    }

    fn for_mask(fac: &Factorization, mask: u32) -> Self {
        let p = fac.subset_product(mask);
        Split {
            n: fac.n(),
            mask,
            p,
            m: fac.n() / p,
        }
    }

    /// Build a split directly from its two sides. Both must be at least 2,
    /// coprime, and their product must fit in 64 bits.
    pub fn from_coprime(p: u64, m: u64) -> Result<Self> {
        if p < 2 || m < 2 {
            return Err(Error::DegenerateSplit { p, m });
        }
        let g = gcd(p, m);
        if g != 1 {
            return Err(Error::NotCoprime { p, m, g });
        }
        let n = p
            .checked_mul(m)
            .ok_or(Error::Overflow { what: "split product p*m" })?;
        let fac = arith::factorize(n).expect("n = p*m >= 4");
        let mut mask = 0u32;
        for (i, &(prime, _)) in fac.factors().iter().enumerate() {
            if p.is_multiple_of(prime) {
                mask |= 1 << i;
            }
        }
        Ok(Split { n, mask, p, m })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Bitset over factor indices selecting the `p` side.
    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Number of prime-power factors on the `p` side (the `h` of the family).
    pub fn h(&self) -> u32 {
        self.mask.count_ones()
    }

    /// The complementary representation with the two sides exchanged.
    pub fn complement(&self, fac: &Factorization) -> Split {
        debug_assert_eq!(fac.n(), self.n);
        Split::for_mask(fac, full_mask(fac.k()) ^ self.mask)
    }
}

/// The solved quantities of one split: `m = p*s + t`, the unique `r`, the
/// quotient `u = (r*t + 1)/p`, and the idempotent pair itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSolution {
    split: Split,
    s: u64,
    t: u64,
    r: u64,
    u: u64,
    e_plus: u64,
    e_zero: u64,
}

impl SplitSolution {
    pub fn split(&self) -> &Split {
        &self.split
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// `t = m mod p`, nonzero because the sides are coprime.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// The unique `r` in `[1, p-1]` with `p | r*t + 1`.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// `u = (r*t + 1) / p`, bounded by `1 <= u <= t`.
    pub fn u(&self) -> u64 {
        self.u
    }

    /// The idempotent `r*m + 1` (0 mod p, 1 mod m).
    pub fn e_plus(&self) -> u64 {
        self.e_plus
    }

    /// The idempotent `(p-r)*m` (1 mod p, 0 mod m).
    pub fn e_zero(&self) -> u64 {
        self.e_zero
    }
}

fn finish_solution(split: &Split, s: u64, t: u64, r: u64) -> SplitSolution {
    debug_assert!((1..split.p).contains(&r));
    debug_assert_eq!((r as u128 * t as u128 + 1) % split.p as u128, 0);
    let u = ((r as u128 * t as u128 + 1) / split.p as u128) as u64;
    SplitSolution {
        split: *split,
        s,
        t,
        r,
        u,
        e_plus: r * split.m + 1,
        e_zero: (split.p - r) * split.m,
    }
}

/// Solve a split through the Bezout coefficient of `p*x + m*y = 1`:
/// `y` is an inverse of `m` modulo `p`, so `-y` normalized into `[1, p-1]`
/// is the unique `r`.
///
/// ```
/// use idemring::engine;
///
/// let split = engine::Split::from_coprime(17, 40).unwrap();
/// let sol = engine::solve_split(&split);
/// assert_eq!((sol.t(), sol.r()), (6, 14));
/// assert_eq!((sol.e_plus(), sol.e_zero()), (561, 120));
/// ```
pub fn solve_split(split: &Split) -> SplitSolution {
    solve_split_counted(split).0
}

/// `solve_split` plus the number of Euclidean division steps taken.
pub fn solve_split_counted(split: &Split) -> (SplitSolution, u64) {
    let (p, m) = (split.p, split.m);
    let (t, s) = (m % p, m / p);
    let (g, _, y, steps) = ext_gcd_counted(p, m);
    debug_assert_eq!(g, 1);
    let r = (-y).rem_euclid(p as i128) as u64;
    (finish_solution(split, s, t, r), steps)
}

/// Solve a split by scanning `u = 1..=t` for the value with
/// `t | p*u - 1` and quotient in `[1, p-1]`. Same output as
/// [`solve_split`]; kept as an independent route for cross-checks and
/// benchmarks.
pub fn solve_split_usearch(split: &Split) -> SplitSolution {
    solve_split_usearch_counted(split).0
}

/// `solve_split_usearch` plus the number of divisibility tests performed.
pub fn solve_split_usearch_counted(split: &Split) -> (SplitSolution, u64) {
    let (p, m) = (split.p, split.m);
    let (t, s) = (m % p, m / p);
    let mut tests = 0u64;
    for u in 1..=t {
        tests += 1;
        let pu = p as u128 * u as u128 - 1;
        if pu.is_multiple_of(t as u128) {
            let r = pu / t as u128;
            if r >= 1 && r < p as u128 {
                return (finish_solution(split, s, t, r as u64), tests);
            }
        }
    }
    panic!("no u in [1, {t}] solves the split p = {p}, m = {m}; invariant broken");
}

/// Solve a split by trying every `r` in `[1, p-1]` against `p | r*t + 1`.
/// The brute-force baseline the other two routes are measured against.
pub fn solve_split_naive(split: &Split) -> SplitSolution {
    solve_split_naive_counted(split).0
}

/// `solve_split_naive` plus the number of divisibility tests performed.
pub fn solve_split_naive_counted(split: &Split) -> (SplitSolution, u64) {
    let (p, m) = (split.p, split.m);
    let (t, s) = (m % p, m / p);
    let mut tests = 0u64;
    for r in 1..p {
        tests += 1;
        if (r as u128 * t as u128 + 1).is_multiple_of(p as u128) {
            return (finish_solution(split, s, t, r), tests);
        }
    }
    panic!("no r in [1, {}] solves the split p = {p}, m = {m}; invariant broken", p - 1);
}

/// Extended gcd that also reports how many division steps it took.
fn ext_gcd_counted(a: u64, b: u64) -> (u64, i128, i128, u64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    let mut steps = 0u64;
    while r != 0 {
        steps += 1;
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    (old_r as u64, old_x, old_y, steps)
}

/// Map a solution for `n = p*(p*s + t)` to the solution for
/// `n1 = p*(p*s + p - t)` without re-solving: the new `r` is `p - r`.
pub fn mirror_solution(sol: &SplitSolution) -> Result<SplitSolution> {
    let (p, s, t) = (sol.split.p, sol.s, sol.t);
    let j = p - t;
    let m1 = p
        .checked_mul(s)
        .and_then(|ps| ps.checked_add(j))
        .ok_or(Error::Overflow { what: "mirrored cofactor p*s + p - t" })?;
    if m1 < 2 {
        return Err(Error::MirrorDegenerate { m1 });
    }
    let g = gcd(p, m1);
    if g != 1 {
        return Err(Error::NotCoprime { p, m: m1, g });
    }
    let split = Split::from_coprime(p, m1)?;
    Ok(finish_solution(&split, s, j, p - sol.r))
}

/// The small-prime fast paths for `q` in {2, 3, 5}: when `n = q*m` with
/// `gcd(q, m) = 1` and `m >= 2`, the nontrivial pair follows from `m mod q`
/// by a fixed case table. Returns `None` when the hypothesis fails.
pub fn small_prime_idempotents(n: u64, q: u64) -> Option<(u64, u64)> {
    assert!(matches!(q, 2 | 3 | 5), "q must be one of 2, 3, 5");
    if !n.is_multiple_of(q) {
        return None;
    }
    let m = n / q;
    if m < 2 || gcd(q, m) != 1 {
        return None;
    }
    let pair = match (q, m % q) {
        (2, 1) => (m, m + 1),
        (3, 2) => (m + 1, 2 * m),
        (3, 1) => (m, 2 * m + 1),
        (5, 1) => (m, 4 * m + 1),
        (5, 2) => (3 * m, 2 * m + 1),
        (5, 3) => (2 * m, 3 * m + 1),
        (5, 4) => (4 * m, m + 1),
        _ => unreachable!("gcd(q, m) = 1 leaves no other residue"),
    };
    Some(pair)
}

fn full_mask(k: u32) -> u32 {
    (1u32 << k) - 1
}

/// Binomial coefficient, small arguments only (k <= 64 here).
pub(crate) fn binomial(k: u32, h: u32) -> u64 {
    if h > k {
        return 0;
    }
    let h = h.min(k - h) as u64;
    let mut acc = 1u64;
    for i in 0..h {
        acc = acc * (k as u64 - i) / (i + 1);
    }
    acc
}

/// Masks of all size-`h` subsets of `{0, .., k-1}` in lexicographic order
/// of the ascending index tuples.
fn lex_subset_masks(k: u32, h: u32) -> Vec<u32> {
    let (k, h) = (k as usize, h as usize);
    let mut idx: Vec<usize> = (0..h).collect();
    let mut out = Vec::with_capacity(binomial(k as u32, h as u32) as usize);
    loop {
        out.push(idx.iter().fold(0u32, |m, &i| m | 1 << i));
        let mut i = h as isize - 1;
        while i >= 0 && idx[i as usize] == k - h + i as usize {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..h {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// All `C(k, h)` splits whose `p` side uses exactly `h` prime-power
/// factors, ordered lexicographically by factor-index tuple.
pub fn enumerate_splits(fac: &Factorization, h: u32) -> Result<Vec<Split>> {
    let k = fac.k();
    if k < 2 || h < 1 || h > k - 1 {
        return Err(Error::FamilySizeOutOfRange { h, max: k.saturating_sub(1) });
    }
    Ok(lex_subset_masks(k, h)
        .into_iter()
        .map(|mask| Split::for_mask(fac, mask))
        .collect())
}

/// The family `h+`: every idempotent produced by size-`h` splits. Sorted
/// and deduplicated; cardinality is `2*C(k,h)`, halving to `C(k,h)` when
/// `h = k/2` because complementary subsets then repeat each pair.
pub fn h_plus(fac: &Factorization, h: u32) -> Result<Vec<u64>> {
    let mut members = Vec::new();
    for split in enumerate_splits(fac, h)? {
        let sol = solve_split(&split);
        members.push(sol.e_plus());
        members.push(sol.e_zero());
    }
    members.sort_unstable();
    members.dedup();
    Ok(members)
}

/// The complete set of idempotents of `Z_n`: sorted residues `e` with
/// `e*e = e (mod n)`, always `2^k` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSet {
    n: u64,
    members: Vec<u64>,
}

impl IdempotentSet {
    pub fn from_members(n: u64, mut members: Vec<u64>) -> Self {
        members.sort_unstable();
        members.dedup();
        IdempotentSet { n, members }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    /// `e -> n + 1 - e (mod n)`, which maps idempotents to idempotents.
    pub fn complement(&self, e: u64) -> u64 {
        (self.n + 1 - e) % self.n
    }
}

/// Half-family enumeration: the size-`k/2` subsets containing factor
/// index 0, one representative per complementary pair.
fn canonical_half_masks(k: u32) -> Vec<u32> {
    lex_subset_masks(k, k / 2)
        .into_iter()
        .filter(|mask| mask & 1 == 1)
        .collect()
}

/// Complete enumeration via the family decomposition: trivial idempotents
/// plus `1+ .. ((k-1)/2)+` for odd `k`, or `1+ .. (k/2 - 1)+` plus the
/// canonical half of `(k/2)+` for even `k`.
pub fn all_idempotents_prop51(fac: &Factorization) -> IdempotentSet {
    let (n, k) = (fac.n(), fac.k());
    let mut members = vec![0u64, 1];
    if k >= 2 {
        let whole_families = if k % 2 == 1 { (k - 1) / 2 } else { k / 2 - 1 };
        for h in 1..=whole_families {
            members.extend(h_plus(fac, h).expect("1 <= h <= k-1"));
        }
        if k % 2 == 0 {
            for mask in canonical_half_masks(k) {
                let sol = solve_split(&Split::for_mask(fac, mask));
                members.push(sol.e_plus());
                members.push(sol.e_zero());
            }
        }
    }
    IdempotentSet::from_members(n, members)
}

/// Complete enumeration collecting the `r*m + 1` form of every split,
/// over every family size.
pub fn all_idempotents_prop52(fac: &Factorization) -> IdempotentSet {
    all_idempotents_one_form(fac, |sol| sol.e_plus())
}

/// Complete enumeration collecting the `(p-r)*m` form of every split.
pub fn all_idempotents_prop53(fac: &Factorization) -> IdempotentSet {
    all_idempotents_one_form(fac, |sol| sol.e_zero())
}

fn all_idempotents_one_form(fac: &Factorization, pick: impl Fn(&SplitSolution) -> u64) -> IdempotentSet {
    let (n, k) = (fac.n(), fac.k());
    let mut members = vec![0u64, 1];
    for h in 1..k {
        for split in enumerate_splits(fac, h).expect("1 <= h <= k-1") {
            members.push(pick(&solve_split(&split)));
        }
    }
    IdempotentSet::from_members(n, members)
}
