//! Random descriptors with Poincare-duality-consistent strata, for
//! property tests and benchmarks.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::hodge::HodgeDiamond;
use crate::stringy::{Component, ResolutionDescriptor, Stratum};

#[derive(Clone, Debug)]
pub struct RandomDescriptorParams {
    pub max_dim: u32,
    pub max_components: usize,
    pub max_discrepancy: u32,
    /// Draw discrepancies from `1..=max_discrepancy` instead of `0..=max_discrepancy`.
    pub terminal: bool,
    pub max_hodge: u64,
    /// Probability that an admissible intersection stratum is nonempty.
    pub intersection_probability: f64,
}

impl Default for RandomDescriptorParams {
    fn default() -> Self {
        Self {
            max_dim: 4,
            max_components: 5,
            max_discrepancy: 3,
            terminal: false,
            max_hodge: 3,
            intersection_probability: 0.5,
        }
    }
}

/// A diamond symmetric under `(p,q) -> (q,p)` and `(p,q) -> (dim-p, dim-q)`
/// with `h^{0,0} = components`.
pub fn random_pd_diamond<R: Rng + ?Sized>(rng: &mut R, dim: u32, components: u64, max_entry: u64) -> HodgeDiamond {
    let mut values: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for p in 0..=dim {
        for q in 0..=dim {
            let orbit = [(p, q), (q, p), (dim - p, dim - q), (dim - q, dim - p)];
            let rep = *orbit.iter().min().expect("nonempty");
            if values.contains_key(&rep) {
                values.insert((p, q), values[&rep]);
                continue;
            }
            let v = if rep == (0, 0) {
                components
            } else {
                rng.gen_range(0..=max_entry)
            };
            values.insert(rep, v);
            values.insert((p, q), v);
        }
    }
    HodgeDiamond::from_entries(dim, values).expect("symmetric by construction")
}

pub fn random_descriptor<R: Rng + ?Sized>(rng: &mut R, params: &RandomDescriptorParams) -> ResolutionDescriptor {
    let n = rng.gen_range(1..=params.max_dim.max(1));
    let count = rng.gen_range(0..=params.max_components);
    let low = u32::from(params.terminal);
    let components: Vec<Component> = (1..=count as u32)
        .map(|id| Component::new(id, rng.gen_range(low..=params.max_discrepancy.max(low))))
        .collect();

    let mut strata = BTreeMap::new();
    strata.insert(Stratum::ambient(), random_pd_diamond(rng, n, 1, params.max_hodge));
    let ids: Vec<u32> = components.iter().map(|c| c.id).collect();
    let mut present: BTreeSet<Vec<u32>> = BTreeSet::new();
    for size in 1..=ids.len().min(n as usize) {
        for subset in subsets_of_size(&ids, size) {
            let admissible = size == 1
                || (0..size).all(|i| {
                    let mut facet = subset.clone();
                    facet.remove(i);
                    present.contains(&facet)
                });
            if !admissible || (size > 1 && !rng.gen_bool(params.intersection_probability)) {
                continue;
            }
            let dim = n - size as u32;
            let pieces = rng.gen_range(1..=2);
            let diamond = random_pd_diamond(rng, dim, pieces, params.max_hodge);
            strata.insert(Stratum::new(subset.clone()).expect("distinct"), diamond);
            present.insert(subset);
        }
    }
    ResolutionDescriptor::new(n, "random", components, strata).expect("valid by construction")
}

fn subsets_of_size(ids: &[u32], size: usize) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if ids.len() < size {
        return Vec::new();
    }
    let (first, rest) = ids.split_first().expect("nonempty");
    let mut out: Vec<Vec<u32>> = subsets_of_size(rest, size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, *first);
            s
        })
        .collect();
    out.extend(subsets_of_size(rest, size));
    out
}
