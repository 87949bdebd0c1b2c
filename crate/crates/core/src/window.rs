//! Tuple enumeration over key windows, exhaustive or seeded-sampled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Key;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sampling {
    /// Cap on random draws for rule backends; dense windows are always exhaustive.
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Sampling {
    pub fn exhaustive() -> Sampling {
        Sampling::default()
    }

    pub fn sampled(samples: usize, seed: u64) -> Sampling {
        Sampling {
            samples: Some(samples),
            seed,
        }
    }
}

/// All tuples of the cartesian product, or a seeded sample of them when the
/// product is large, a sample cap is set, and the window is not exhaustive by nature.
pub fn tuples(lists: &[&[Key]], exhaustive: bool, s: &Sampling) -> Vec<Vec<Key>> {
    if lists.iter().any(|l| l.is_empty()) {
        return Vec::new();
    }
    let total = lists
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
    match (s.samples, total) {
        (Some(cap), t) if !exhaustive && t.is_none_or(|t| t > cap) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            (0..cap)
                .map(|_| lists.iter().map(|l| l[rng.random_range(0..l.len())].clone()).collect())
                .collect()
        }
        _ => {
            let mut out = vec![Vec::new()];
            for l in lists {
                let mut next = Vec::with_capacity(out.len() * l.len());
                for prefix in &out {
                    for k in l.iter() {
                        let mut p = prefix.clone();
                        p.push(k.clone());
                        next.push(p);
                    }
                }
                out = next;
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: i64) -> Vec<Key> {
        (0..n).map(Key::Int).collect()
    }

    #[test]
    fn exhaustive_product() {
        let a = ks(2);
        let b = ks(3);
        let t = tuples(&[&a, &b], true, &Sampling::sampled(1, 0));
        assert_eq!(t.len(), 6);
        assert_eq!(t[1], vec![Key::Int(0), Key::Int(1)]);
    }

    #[test]
    fn sampled_is_seeded() {
        let a = ks(10);
        let s = Sampling::sampled(5, 42);
        let t1 = tuples(&[&a, &a, &a], false, &s);
        let t2 = tuples(&[&a, &a, &a], false, &s);
        assert_eq!(t1.len(), 5);
        assert_eq!(t1, t2);
        let t3 = tuples(&[&a, &a, &a], false, &Sampling::sampled(5, 43));
        assert_ne!(t1, t3);
    }

    #[test]
    fn small_products_stay_exhaustive() {
        let a = ks(2);
        assert_eq!(tuples(&[&a, &a], false, &Sampling::sampled(100, 1)).len(), 4);
    }
}
