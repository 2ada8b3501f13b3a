use super::{canonical_form, Graph};
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

/// All graphs on `n` vertices up to isomorphism, in canonical form, keyed by
/// graph6 of the canonical form. Built by adding one vertex at a time with
/// every possible neighborhood and deduplicating canonical forms.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 9 {
        return Err(Error::Resource(format!("graph enumeration supports 1 <= n <= 9, got {n}")));
    }
    let mut level = vec![Graph::new(1, &[])?];
    for k in 2..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for g in &level {
            let base = g.edges();
            for mask in 0u32..(1 << (k - 1)) {
                let mut e = base.clone();
                e.extend((0..k - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, k - 1)));
                let h = canonical_form(&Graph::new(k, &e)?)?;
                next.entry(h.to_graph6()).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// Connected graphs on `n` vertices up to isomorphism, sorted by canonical graph6.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(|g| g.is_connected()).collect())
}

/// Uniform-ish random `d`-regular simple graph via the pairing model with rejection.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::Precondition(format!("no {d}-regular graph on {n} vertices")));
    }
    for _ in 0..10_000 {
        let mut points: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, d)).collect();
        points.shuffle(rng);
        let mut g = Graph::new(n, &[])?;
        let mut ok = true;
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                ok = false;
                break;
            }
            g.add_edge(u, v);
        }
        if ok {
            return Ok(g);
        }
    }
    Err(Error::Numerical("failed to sample a regular graph".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn known_counts() {
        // Connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112.
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert_eq!(all_graphs(5).unwrap().len(), 34);
    }

    #[test]
    fn regular_sampler() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = random_regular(8, 3, &mut rng).unwrap();
        assert!((0..8).all(|u| g.degree(u) == 3));
    }
}
