//! Test-only oracles that share no code with the library's search.
#![allow(dead_code)]

use std::collections::HashMap;

use kneser_det::{Family, KneserInstance};
use rand::seq::SliceRandom;
use rand::Rng;

/// All k-subsets of `[n]` as bitmasks (bit `e-1` for element `e`), in increasing order.
pub fn k_subsets(n: u32, k: u32) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() == k).collect()
}

/// Whether `sets` separates every pair, checked pair by pair: some set must
/// contain exactly one of the two elements.
pub fn pairwise_separating(n: u32, sets: &[Vec<u32>]) -> bool {
    (1..=n).all(|a| (a + 1..=n).all(|b| sets.iter().any(|s| s.contains(&a) != s.contains(&b))))
}

fn largest_class(sigs: &[u64]) -> usize {
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for &s in sigs {
        *counts.entry(s).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

fn extend(subsets: &[u32], n: u32, from: usize, remaining: u32, depth: u32, sigs: &mut Vec<u64>) -> bool {
    if remaining == 0 {
        return largest_class(sigs) <= 1;
    }
    for idx in from..subsets.len() {
        let s = subsets[idx];
        for (e, sig) in sigs.iter_mut().enumerate().take(n as usize) {
            if s >> e & 1 == 1 {
                *sig |= 1 << depth;
            }
        }
        // a class of size c needs at least log2(c) further sets to split
        let ok = remaining > 63 || largest_class(sigs) <= 1usize << (remaining - 1);
        if ok && extend(subsets, n, idx + 1, remaining - 1, depth + 1, sigs) {
            return true;
        }
        for sig in sigs.iter_mut() {
            *sig &= !(1 << depth);
        }
    }
    false
}

/// Whether some family of `r` distinct k-subsets separates all of `[n]`.
/// The first set is `{1..k}` without loss of generality.
pub fn naive_has_family(n: u32, k: u32, r: u32) -> bool {
    let subsets = k_subsets(n, k);
    let mut sigs = vec![0u64; n as usize];
    if r == 0 {
        return n <= 1;
    }
    for sig in sigs.iter_mut().take(k as usize) {
        *sig = 1;
    }
    if largest_class(&sigs) > 1usize << (r - 1).min(62) {
        return false;
    }
    extend(&subsets, n, 1, r - 1, 1, &mut sigs)
}

/// Smallest `r` for which [`naive_has_family`] holds.
pub fn naive_det(n: u32, k: u32) -> u32 {
    (1..).find(|&r| naive_has_family(n, k, r)).unwrap()
}

pub fn inst(n: u32, k: u32) -> KneserInstance {
    KneserInstance::new(n, k).unwrap()
}

pub fn random_set<R: Rng>(rng: &mut R, n: u32, k: u32) -> Vec<u32> {
    let mut all: Vec<u32> = (1..=n).collect();
    all.shuffle(rng);
    all.truncate(k as usize);
    all
}

pub fn random_family<R: Rng>(rng: &mut R, inst: KneserInstance, r: usize) -> Family {
    let sets: Vec<Vec<u32>> = (0..r).map(|_| random_set(rng, inst.n(), inst.k())).collect();
    Family::new(inst, sets).unwrap()
}

/// Relabels a family by a uniformly random permutation of `[n]`.
pub fn shuffle_labels<R: Rng>(rng: &mut R, f: &Family) -> Family {
    let mut map: Vec<u32> = (1..=f.instance().n()).collect();
    map.shuffle(rng);
    f.relabel(&map).unwrap()
}
