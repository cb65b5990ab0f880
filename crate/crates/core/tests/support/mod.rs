//! Brute-force oracles over F_{2^m}, sharing no code with the library.
//!
//! An element of F_{2^m} is a `u32` whose bit i is the coefficient of z^i,
//! which matches the library's element index when p = 2, e = 1.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use grw::{FieldTower, LinearCode};

#[derive(Clone, Copy, Debug)]
pub struct Gf2m {
    pub m: u32,
    modulus: u32,
}

impl Gf2m {
    /// z^2+z+1, z^3+z+1, z^4+z+1, z^5+z^2+1.
    pub fn new(m: u32) -> Self {
        let modulus = match m {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            5 => 0b100101,
            _ => panic!("no oracle modulus for m = {m}"),
        };
        Gf2m { m, modulus }
    }

    pub fn order(self) -> u32 {
        1 << self.m
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        let mut acc = 0u32;
        for i in 0..self.m {
            if b >> i & 1 == 1 {
                acc ^= a << i;
            }
        }
        for i in (self.m..2 * self.m).rev() {
            if acc >> i & 1 == 1 {
                acc ^= self.modulus << (i - self.m);
            }
        }
        acc
    }

    pub fn inv(self, a: u32) -> u32 {
        (1..self.order()).find(|&b| self.mul(a, b) == 1).expect("nonzero")
    }

    pub fn square(self, a: u32) -> u32 {
        self.mul(a, a)
    }

    /// Rank of a matrix over F_{2^m}, by elimination on a copy.
    pub fn rank(self, rows: &[Vec<u32>]) -> usize {
        let mut a: Vec<Vec<u32>> = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, p);
            let inv = self.inv(a[rank][c]);
            for x in a[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let f = a[r][c];
                    let pivot = a[rank].clone();
                    for (x, &y) in a[r].iter_mut().zip(&pivot) {
                        *x ^= self.mul(f, y);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Rank of a set of bit vectors over F_2.
pub fn f2_rank(vs: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Rank weight: F_2-dimension of the span of the coordinates.
pub fn rank_weight(x: &[u32]) -> usize {
    f2_rank(x)
}

/// Every subspace of F_2^n, each as its list of elements (bit masks of
/// length n), grouped by dimension.
pub fn binary_subspaces(n: u32) -> Vec<Vec<Vec<u32>>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut frontier = vec![vec![0u32]];
    seen.insert(vec![0]);
    let mut by_dim = vec![Vec::new(); n as usize + 1];
    while let Some(s) = frontier.pop() {
        by_dim[s.len().trailing_zeros() as usize].push(s.clone());
        for v in 0..(1u32 << n) {
            if s.contains(&v) {
                continue;
            }
            let mut t: BTreeSet<u32> = s.iter().copied().collect();
            t.extend(s.iter().map(|&x| x ^ v));
            let t: Vec<u32> = t.into_iter().collect();
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    by_dim
}

/// A basis of a subspace given by its elements.
pub fn basis_of(elements: &[u32]) -> Vec<u32> {
    let mut basis = Vec::new();
    for &v in elements {
        let mut with = basis.clone();
        with.push(v);
        if f2_rank(&with) > basis.len() {
            basis = with;
        }
    }
    basis
}

fn bits(v: u32, n: usize) -> Vec<u32> {
    (0..n).map(|j| v >> j & 1).collect()
}

/// A code given by generator rows over F_{2^m}.
#[derive(Clone, Debug)]
pub struct Code {
    pub f: Gf2m,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl Code {
    pub fn from_library(c: &LinearCode) -> Self {
        let t = c.tower();
        assert_eq!((t.p(), t.e()), (2, 1), "oracle covers binary towers only");
        let b = c.generator().basis();
        Code {
            f: Gf2m::new(t.m() as u32),
            n: c.n(),
            rows: (0..b.rows()).map(|r| b.row(r).iter().map(|a| a.index()).collect()).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.f.rank(&self.rows)
    }

    fn meet_dim(&self, basis: &[Vec<u32>]) -> usize {
        let mut stacked = self.rows.clone();
        stacked.extend(basis.iter().cloned());
        self.k() + basis.len() - self.f.rank(&stacked)
    }

    /// `M_r` by scanning every subspace of F_2^n, extended to F_{2^m}^n.
    pub fn gamma_weights(&self) -> Vec<usize> {
        let subspaces = binary_subspaces(self.n as u32);
        let k = self.k();
        (1..=k)
            .map(|r| {
                for (dim, list) in subspaces.iter().enumerate() {
                    for s in list {
                        let basis: Vec<Vec<u32>> = basis_of(s).into_iter().map(|v| bits(v, self.n)).collect();
                        if self.meet_dim(&basis) >= r {
                            return dim;
                        }
                    }
                }
                unreachable!("the full space meets the code in dimension k")
            })
            .collect()
    }

    pub fn codewords(&self) -> Vec<Vec<u32>> {
        let q = self.f.order();
        let k = self.rows.len();
        (0..q.pow(k as u32))
            .map(|mut idx| {
                let mut x = vec![0u32; self.n];
                for row in &self.rows {
                    let c = idx % q;
                    idx /= q;
                    for (xj, &g) in x.iter_mut().zip(row) {
                        *xj ^= self.f.mul(c, g);
                    }
                }
                x
            })
            .collect()
    }

    pub fn min_rank_distance(&self) -> usize {
        self.codewords().iter().filter(|x| x.iter().any(|&a| a != 0)).map(|x| rank_weight(x)).min().unwrap()
    }

    /// Wei's hierarchy: smallest coordinate set S with dim(C ∩ F^S) >= r.
    pub fn hamming_weights(&self) -> Vec<usize> {
        let k = self.k();
        (1..=k)
            .map(|r| {
                (0u32..1 << self.n)
                    .filter(|s| {
                        let outside: Vec<Vec<u32>> = self
                            .rows
                            .iter()
                            .map(|row| (0..self.n).filter(|j| s >> j & 1 == 0).map(|j| row[j]).collect())
                            .collect();
                        let kept = if outside[0].is_empty() { 0 } else { self.f.rank(&outside) };
                        k - kept >= r
                    })
                    .map(|s| s.count_ones() as usize)
                    .min()
                    .unwrap()
            })
            .collect()
    }
}

/// `[n, v]_Q` from the product formula.
pub fn gaussian(n: u32, v: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..v {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Dimension of the span of the Frobenius images of `x`.
pub fn closure_dim(f: Gf2m, x: &[u32]) -> usize {
    let mut rows = vec![x.to_vec()];
    for _ in 1..f.m {
        let last = rows.last().unwrap().clone();
        rows.push(last.iter().map(|&a| f.square(a)).collect());
    }
    f.rank(&rows)
}

pub fn binary_tower(m: usize) -> FieldTower {
    FieldTower::with_defaults(2, 1, m).unwrap()
}
