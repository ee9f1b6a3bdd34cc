//! Seeded random modular lattices.
//!
//! The distribution is deliberately simple and not uniform over
//! isomorphism classes: a size is drawn, the elements are laid out along a
//! chain `0 < e_1 < ... < 1` that fixes a linear extension, random order
//! relations between inner elements are added with a per-attempt density,
//! and the transitive closure is kept only if it is a modular lattice.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::HarnessError;
use crate::lattice::Lattice;

/// Largest `max_size` accepted; enumeration costs dominate beyond it.
pub const MAX_RANDOM_SIZE: usize = 12;

/// Rejection-sampling budget per lattice.
pub const MAX_ATTEMPTS: usize = 20_000;

fn element_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == n - 1 => "1".to_string(),
            _ => ((b'a' + (i - 1) as u8) as char).to_string(),
        })
        .collect()
}

/// One candidate order on `n` elements, as up-set bit masks.
fn candidate(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let density: f64 = rng.gen_range(0.15..0.85);
    let mut up: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    for i in 0..n {
        up[0] |= 1 << i;
        up[i] |= 1 << (n - 1);
    }
    for (i, row) in up.iter_mut().enumerate().take(n.saturating_sub(1)).skip(1) {
        for j in i + 1..n - 1 {
            if rng.gen_bool(density) {
                *row |= 1 << j;
            }
        }
    }
    // Indices increase along every relation, so one backward sweep closes.
    for i in (0..n).rev() {
        let mut acc = up[i];
        for j in i + 1..n {
            if up[i] & (1 << j) != 0 {
                acc |= up[j];
            }
        }
        up[i] = acc;
    }
    up
}

fn generate(rng: &mut ChaCha8Rng, max_size: usize, name: &str) -> Result<Lattice, HarnessError> {
    if max_size == 0 || max_size > MAX_RANDOM_SIZE {
        return Err(HarnessError::BadSize {
            size: max_size,
            cap: MAX_RANDOM_SIZE,
        });
    }
    for _ in 0..MAX_ATTEMPTS {
        let n = rng.gen_range(1..=max_size);
        let up = candidate(rng, n);
        let Ok((lattice, _)) =
            Lattice::from_relation(name.to_string(), element_names(n), |i, j| {
                up[i] & (1 << j) != 0
            })
        else {
            continue;
        };
        if lattice.modularity_witness().is_none() {
            return Ok(lattice);
        }
    }
    Err(HarnessError::GiveUp {
        attempts: MAX_ATTEMPTS,
        max_size,
    })
}

/// A modular lattice with at most `max_size` elements, reproducible from
/// `seed`. `max_size = 1` always yields the one-element lattice.
pub fn random_modular_lattice(seed: u64, max_size: usize) -> Result<Lattice, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate(&mut rng, max_size, &format!("random-{seed}"))
}

/// `count` lattices; lattice `i` is drawn from its own stream, whose seed
/// comes from a master stream seeded with `seed`.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_size: usize,
) -> Result<Vec<Lattice>, HarnessError> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(master.next_u64());
            generate(&mut rng, max_size, &format!("random-{seed}-{i}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_modular_lattice(1, 5).unwrap();
        let b = random_modular_lattice(1, 5).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.len() <= 5);
        assert!(a.modularity_witness().is_none());
    }

    #[test]
    fn size_one_is_trivial() {
        for seed in 0..10 {
            assert_eq!(random_modular_lattice(seed, 1).unwrap().len(), 1);
        }
    }

    #[test]
    fn bad_sizes_rejected() {
        assert!(matches!(
            random_modular_lattice(0, 0),
            Err(HarnessError::BadSize { .. })
        ));
        assert!(random_modular_lattice(0, MAX_RANDOM_SIZE + 1).is_err());
    }

    #[test]
    fn corpus_is_varied_and_modular() {
        let corpus = random_corpus(42, 60, 8).unwrap();
        assert_eq!(corpus, random_corpus(42, 60, 8).unwrap());
        let sizes: std::collections::BTreeSet<usize> = corpus.iter().map(|l| l.len()).collect();
        assert!(sizes.len() >= 5, "sizes {sizes:?}");
        assert!(corpus.iter().any(|l| !l.is_distributive().holds));
        assert!(corpus.iter().all(|l| l.modularity_witness().is_none()));
    }
}
