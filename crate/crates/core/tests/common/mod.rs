//! Reference implementations shared by the integration tests. Nothing here
//! calls into the crate beyond its plain data types.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use symins_core::{BlockVector, OddEncoding};

/// 100 decimals of π.
pub const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

/// `B_2, B_4, ..., B_10`.
pub const EVEN_BERNOULLI: [(i64, i64); 5] = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66)];

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

pub fn inv(d: BigInt) -> BigRational {
    BigRational::new(1.into(), d)
}

/// Word of a composition, built symbol by symbol.
pub fn word_of_composition(parts: &[u32]) -> String {
    let mut s = String::from("0");
    for &p in parts {
        s.push('1');
        for _ in 1..p {
            s.push('0');
        }
    }
    s.push('1');
    s
}

/// `({2}^{b_0}, 1, {2}^{b_1}, 3, ..., {2}^{b_2n})`.
pub fn composition_of_blocks(b: &[u32]) -> Vec<u32> {
    let mut parts = Vec::new();
    for (i, &bi) in b.iter().enumerate() {
        if i > 0 {
            parts.push(if i % 2 == 1 { 1 } else { 3 });
        }
        parts.extend(std::iter::repeat_n(2, bi as usize));
    }
    parts
}

/// Start positions of every window of `len` symbols whose ends differ.
pub fn scan_nontrivial_windows(word: &str, len: usize) -> Vec<usize> {
    let s = word.as_bytes();
    if len > s.len() {
        return Vec::new();
    }
    (0..=s.len() - len).filter(|&p| s[p] != s[p + len - 1]).collect()
}

pub fn slice(word: &str, start: usize, len: usize) -> String {
    word[start..start + len].to_string()
}

pub fn delete_interior(word: &str, start: usize, len: usize) -> String {
    format!("{}{}", &word[..=start], &word[start + len - 1..])
}

pub fn reverse(s: &str) -> String {
    s.chars().rev().collect()
}

/// All block vectors with `2n+1` entries summing to at most `max_sum`.
pub fn block_vectors(n: usize, max_sum: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; 2 * n + 1];
    loop {
        if cur.iter().sum::<u32>() <= max_sum {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= max_sum {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// A uniformly chosen valid odd encoding on a random block vector.
pub fn random_encoding(rng: &mut impl Rng, max_n: usize, max_entry: u32) -> OddEncoding {
    let n = rng.gen_range(1..=max_n);
    let b: Vec<u32> = (0..2 * n + 1).map(|_| rng.gen_range(0..=max_entry)).collect();
    let s = rng.gen_range(0..2 * n);
    let t = s + 1 + 2 * rng.gen_range(0..=(2 * n - s - 1) / 2);
    let len_s = 2 * (b[s] as usize + 1);
    let len_t = 2 * (b[t] as usize + 1);
    let l = rng.gen_range(0..len_s);
    let m = loop {
        let m = rng.gen_range(0..len_t);
        if (l + m) % 2 == 1 {
            break m;
        }
    };
    OddEncoding::new(BlockVector::new(b).unwrap(), s, l, t, m).unwrap()
}
