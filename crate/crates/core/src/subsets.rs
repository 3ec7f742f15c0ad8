//! Bit-mask subset enumeration for the exhaustive small-`n` checkers.

/// Visits every `k`-subset of `universe` (as a mask) in increasing order of
/// the local Gosper index. Stops early when `f` returns `false`.
pub fn for_each_k_subset(universe: u64, k: usize, mut f: impl FnMut(u64) -> bool) {
    let positions: Vec<u32> = bits(universe).collect();
    let m = positions.len();
    if k > m {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut local: u64 = (1u64 << k) - 1;
    let limit: u128 = 1u128 << m;
    while (local as u128) < limit {
        let mut global = 0u64;
        let mut rest = local;
        while rest != 0 {
            let i = rest.trailing_zeros();
            global |= 1u64 << positions[i as usize];
            rest &= rest - 1;
        }
        if !f(global) {
            return;
        }
        // Gosper's hack
        let c = local & local.wrapping_neg();
        let r = local.wrapping_add(c);
        if r == 0 {
            break;
        }
        local = (((r ^ local) >> 2) / c) | r;
    }
}

pub fn k_subsets(universe: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_k_subset(universe, k, |s| {
        out.push(s);
        true
    });
    out
}

/// Unordered disjoint pairs `{X, Y}` of `k`-subsets, each visited once with
/// `min(X) < min(Y)`.
pub fn for_each_disjoint_pair(universe: u64, k: usize, mut f: impl FnMut(u64, u64) -> bool) {
    let mut go = true;
    for_each_k_subset(universe, k, |x| {
        let rest = disjoint_partners(universe, x);
        for_each_k_subset(rest, k, |y| {
            go = f(x, y);
            go
        });
        go
    });
}

/// Vertices that may form the second set of an unordered pair whose first
/// set is `x`: outside `x` and above its smallest element.
#[inline]
pub fn disjoint_partners(universe: u64, x: u64) -> u64 {
    if x == 0 {
        return universe;
    }
    let low = x.trailing_zeros();
    let above = if low >= 63 { 0 } else { !((1u64 << (low + 1)) - 1) };
    universe & !x & above
}

pub fn bits(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros();
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    bits(mask).map(|b| b as usize).collect()
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `e(X, Y)` for disjoint masks.
#[inline]
pub fn cross_edges(adj: &[u64], x: u64, y: u64) -> u64 {
    bits(x).map(|v| (adj[v as usize] & y).count_ones() as u64).sum()
}

/// `e(G[S])` for a mask.
#[inline]
pub fn inner_edges(adj: &[u64], s: u64) -> u64 {
    bits(s).map(|v| (adj[v as usize] & s).count_ones() as u64).sum::<u64>() / 2
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of unordered disjoint pairs of `k`-subsets of an `n`-set.
pub fn disjoint_pair_count(n: u64, k: u64) -> u128 {
    if 2 * k > n {
        return 0;
    }
    binomial(n, k) * binomial(n - k, k) / if k == 0 { 1 } else { 2 }
}
