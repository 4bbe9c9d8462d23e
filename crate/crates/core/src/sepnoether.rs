//! The separating Noether number by exhaustive pruned sweep.
//!
//! `beta_sep(G)` is the maximum length of a group atom over all contexts
//! of at most `rank + 1` distinct non-identity elements of `G`. The sweep
//! enumerates subsets in size-then-lexicographic order and keeps, for each
//! context, the longest group atom. Three prunings keep it exact:
//!
//! - only full-support atoms are tested per context, because a group atom
//!   supported on a sub-context is a group atom of that sub-context, which
//!   the sweep visits earlier;
//! - atoms longer than both the largest element order and half the sum of
//!   orders are never group atoms, so enumeration is capped there;
//! - no group atom can exceed [`upper_bound`], so the sweep stops once a
//!   witness of that length is found.
//!
//! Results are byte-identical for any worker count: subsets are processed
//! in fixed chunks, merged in order, and the early exit applies at chunk
//! granularity only.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::abelian::{GroupElement, GroupSpec, DEFAULT_ELEMENT_CAP};
use crate::blockmonoid::{Context, MultVector, DEFAULT_NODE_CAP};
use crate::error::{Error, Result};
use crate::lattice::{self, LatticeBasis};

/// Default cap on `|G|` before the full sweep refuses to run.
pub const DEFAULT_SWEEP_CAP: u64 = 40;

const CHUNK: usize = 512;

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub workers: usize,
    pub symmetry: bool,
    /// Disables the pruning and re-tests every atom; results must agree.
    pub audit: bool,
    pub include_identity: bool,
    pub node_cap: u64,
    pub element_cap: u64,
    pub sweep_cap: u64,
}

impl Default for SweepOptions {
    fn default() -> SweepOptions {
        SweepOptions {
            workers: 1,
            symmetry: false,
            audit: false,
            include_identity: false,
            node_cap: DEFAULT_NODE_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            sweep_cap: DEFAULT_SWEEP_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BetaSepResult {
    pub value: u64,
    pub witness_context: Vec<GroupElement>,
    pub witness_vector: MultVector,
    pub subsets_examined: u64,
    pub subsets_pruned: u64,
    pub elapsed: Duration,
}

/// `floor(exponent * (rank + 1) / 2)`: no group atom over a context of at
/// most `rank + 1` elements can be longer.
pub fn upper_bound(group: &GroupSpec) -> u64 {
    group.exponent() * (group.rank() as u64 + 1) / 2
}

/// Why the sweep ranges over non-identity elements only.
pub fn identity_exclusion_note() -> &'static str {
    "contexts omit the identity: it only ever contributes the length-1 atom \
     at its own coordinate, which is never maximal; sweep with \
     include_identity to confirm"
}

/// Longest group atom over one context, with the lexicographically least
/// witness of that length. `audit` disables the full-support and length
/// prunings and must not change the answer.
pub fn max_group_atom_length(
    ctx: &Context,
    audit: bool,
    node_cap: u64,
) -> Result<Option<(u64, MultVector)>> {
    let max_ord = *ctx.orders().iter().max().unwrap();
    let ord_sum: u64 = ctx.orders().iter().sum();
    let cap = if audit {
        None
    } else {
        Some(max_ord.max(ord_sum / 2))
    };
    let mut atoms = ctx.enumerate_atoms(cap, node_cap)?;
    atoms.sort_by_key(|a| (a.length(), a.0.clone()));
    let mut basis = LatticeBasis::new(ctx.len());
    let mut best: Option<(u64, MultVector)> = None;
    let mut i = 0;
    while i < atoms.len() {
        let len = atoms[i].length();
        let class_end = atoms[i..]
            .iter()
            .position(|a| a.length() != len)
            .map_or(atoms.len(), |p| i + p);
        for a in &atoms[i..class_end] {
            if !audit && !a.has_full_support() {
                continue;
            }
            if best.as_ref().is_some_and(|&(b, _)| b >= len) {
                break;
            }
            if basis.contains_vector(a)?.is_none() {
                best = Some((len, a.clone()));
            }
        }
        for a in &atoms[i..class_end] {
            basis.insert_vector(a)?;
        }
        i = class_end;
    }
    Ok(best)
}

/// Every automorphism of the group, as a permutation of the element
/// indices from [`GroupSpec::enumerate_elements`].
pub fn automorphisms(group: &GroupSpec, element_cap: u64) -> Result<Vec<Vec<usize>>> {
    let elements = group.enumerate_elements(element_cap)?;
    let orders = elements
        .iter()
        .map(|e| group.element_order(e))
        .collect::<Result<Vec<_>>>()?;
    // A homomorphism is fixed by the images of the standard generators,
    // each of order dividing the matching modulus; it is an automorphism
    // exactly when the induced map is injective.
    let candidates: Vec<Vec<usize>> = group
        .moduli()
        .iter()
        .map(|&m| {
            (0..elements.len())
                .filter(|&i| m % orders[i] == 0)
                .collect()
        })
        .collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if total > 2_000_000 {
        return Err(Error::CapExceeded(format!(
            "automorphism search needs {total} candidate tuples; run without symmetry"
        )));
    }
    let rank = group.rank();
    let mut perms = Vec::new();
    let mut pick = vec![0usize; rank];
    loop {
        let images: Vec<&GroupElement> = pick
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| &elements[c[i]])
            .collect();
        let mut perm = vec![0usize; elements.len()];
        let mut seen = vec![false; elements.len()];
        let mut bijective = true;
        for e in &elements {
            let mut acc = group.zero();
            for (&c, img) in e.coords().iter().zip(&images) {
                acc = group.add(&acc, &group.scalar_mul(c as i64, img));
            }
            let idx = group.element_index(&acc);
            if seen[idx] {
                bijective = false;
                break;
            }
            seen[idx] = true;
            perm[group.element_index(e)] = idx;
        }
        if bijective {
            perms.push(perm);
        }
        let mut i = rank;
        loop {
            if i == 0 {
                return Ok(perms);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < candidates[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

fn pool_permutations(
    group: &GroupSpec,
    pool: &[GroupElement],
    element_cap: u64,
) -> Result<Vec<Vec<usize>>> {
    let perms = automorphisms(group, element_cap)?;
    let total = group.order()? as usize;
    let mut pool_pos = vec![usize::MAX; total];
    for (i, e) in pool.iter().enumerate() {
        pool_pos[group.element_index(e)] = i;
    }
    perms
        .into_iter()
        .map(|perm| {
            pool.iter()
                .map(|e| {
                    let p = pool_pos[perm[group.element_index(e)]];
                    if p == usize::MAX {
                        Err(Error::Internal("automorphism leaves the sweep pool".into()))
                    } else {
                        Ok(p)
                    }
                })
                .collect()
        })
        .collect()
}

fn is_canonical(subset: &[usize], perms: &[Vec<usize>]) -> bool {
    let mut image = vec![0usize; subset.len()];
    for perm in perms {
        for (dst, &s) in image.iter_mut().zip(subset) {
            *dst = perm[s];
        }
        image.sort_unstable();
        if image[..] < *subset {
            return false;
        }
    }
    true
}

struct Combos {
    n: usize,
    k: usize,
    cur: Option<Vec<usize>>,
}

impl Combos {
    fn new(n: usize, k: usize) -> Combos {
        let cur = if k <= n && k > 0 {
            Some((0..k).collect())
        } else {
            None
        };
        Combos { n, k, cur }
    }
}

impl Iterator for Combos {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let mut next = cur.clone();
        let (n, k) = (self.n, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

/// The separating Noether number of `G`, with the first witness in
/// subset enumeration order.
pub fn beta_sep(group: &GroupSpec, opts: &SweepOptions) -> Result<BetaSepResult> {
    let start = Instant::now();
    let order = group.order()?;
    if order > opts.sweep_cap {
        return Err(Error::CapExceeded(format!(
            "group order {order} exceeds the sweep cap {}; raise it to force the sweep",
            opts.sweep_cap
        )));
    }
    let pool: Vec<GroupElement> = if opts.include_identity {
        group.enumerate_elements(opts.element_cap)?
    } else {
        group.nonzero_elements(opts.element_cap)?
    };
    let perms = if opts.symmetry {
        Some(pool_permutations(group, &pool, opts.element_cap)?)
    } else {
        None
    };
    let upper = upper_bound(group);
    let kmax = (group.rank() + 1).min(pool.len());
    let threads = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;

    let mut best: Option<(u64, Vec<usize>, MultVector)> = None;
    let mut examined = 0u64;
    let mut pruned = 0u64;
    'sweep: for k in 1..=kmax {
        let mut combos = Combos::new(pool.len(), k);
        loop {
            let mut chunk: Vec<Vec<usize>> = Vec::with_capacity(CHUNK);
            while chunk.len() < CHUNK {
                match combos.next() {
                    Some(subset) => {
                        if let Some(perms) = &perms {
                            if !is_canonical(&subset, perms) {
                                pruned += 1;
                                continue;
                            }
                        }
                        chunk.push(subset);
                    }
                    None => break,
                }
            }
            if chunk.is_empty() {
                break;
            }
            let results: Vec<Option<(u64, MultVector)>> = threads.install(|| {
                chunk
                    .par_iter()
                    .map(|subset| {
                        let elements = subset.iter().map(|&i| pool[i].clone()).collect();
                        let ctx = Context::allowing_identity(group.clone(), elements)?;
                        max_group_atom_length(&ctx, opts.audit, opts.node_cap)
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            examined += chunk.len() as u64;
            for (subset, res) in chunk.into_iter().zip(results) {
                if let Some((len, vector)) = res {
                    if best.as_ref().is_none_or(|&(b, _, _)| len > b) {
                        best = Some((len, subset, vector));
                    }
                }
            }
            if best.as_ref().is_some_and(|&(b, _, _)| b >= upper) {
                break 'sweep;
            }
        }
    }

    let (value, subset, vector) =
        best.ok_or_else(|| Error::Internal("sweep found no group atom".into()))?;
    let witness_context: Vec<GroupElement> = subset.iter().map(|&i| pool[i].clone()).collect();
    let ctx = Context::allowing_identity(group.clone(), witness_context.clone())?;
    let verdict = lattice::is_group_atom(&ctx, &vector, opts.node_cap)?;
    if !verdict.is_group_atom {
        return Err(Error::Internal(format!(
            "witness {vector} failed re-verification"
        )));
    }
    Ok(BetaSepResult {
        value,
        witness_context,
        witness_vector: vector,
        subsets_examined: examined,
        subsets_pruned: pruned,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(group: &str) -> BetaSepResult {
        let g = GroupSpec::parse(group).unwrap();
        beta_sep(&g, &SweepOptions::default()).unwrap()
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(upper_bound(&GroupSpec::parse("2,2").unwrap()), 3);
        assert_eq!(upper_bound(&GroupSpec::parse("12,4").unwrap()), 18);
        assert_eq!(upper_bound(&GroupSpec::parse("7").unwrap()), 7);
        assert_eq!(upper_bound(&GroupSpec::parse("6,6,2").unwrap()), 12);
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(beta("2").value, 2);
        assert_eq!(beta("3").value, 3);
        assert_eq!(beta("5").value, 5);
        let r = beta("3");
        assert_eq!(r.witness_context[0].coords(), &[1]);
        assert_eq!(r.witness_vector, MultVector(vec![3]));
        assert_eq!(r.subsets_examined, 2);
    }

    #[test]
    fn klein_four_with_witness() {
        let r = beta("2,2");
        assert_eq!(r.value, 3);
        let coords: Vec<&[u64]> = r.witness_context.iter().map(|e| e.coords()).collect();
        assert_eq!(coords, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
        assert_eq!(r.witness_vector, MultVector(vec![1, 1, 1]));
    }

    #[test]
    fn elementary_and_mixed_groups() {
        assert_eq!(beta("3,3").value, 4);
        assert_eq!(beta("2,2,2").value, 4);
        assert_eq!(beta("4,2").value, 5);
        assert_eq!(beta("6,2").value, 7);
    }

    #[test]
    fn sweep_cap_stops_large_groups() {
        let g = GroupSpec::parse("12,4").unwrap();
        let err = beta_sep(&g, &SweepOptions::default()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn options_do_not_change_the_answer() {
        for group in ["3,3", "4,2"] {
            let g = GroupSpec::parse(group).unwrap();
            let base = beta_sep(&g, &SweepOptions::default()).unwrap();
            for opts in [
                SweepOptions {
                    audit: true,
                    ..Default::default()
                },
                SweepOptions {
                    workers: 3,
                    ..Default::default()
                },
                SweepOptions {
                    include_identity: true,
                    ..Default::default()
                },
                SweepOptions {
                    symmetry: true,
                    ..Default::default()
                },
            ] {
                let r = beta_sep(&g, &opts).unwrap();
                assert_eq!(r.value, base.value, "{group} {opts:?}");
                assert_eq!(r.witness_context, base.witness_context, "{group} {opts:?}");
                assert_eq!(r.witness_vector, base.witness_vector, "{group} {opts:?}");
            }
        }
    }

    #[test]
    fn symmetry_prunes_but_preserves_results() {
        let g = GroupSpec::parse("2,2,2").unwrap();
        let base = beta_sep(&g, &SweepOptions::default()).unwrap();
        let sym = beta_sep(
            &g,
            &SweepOptions {
                symmetry: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(sym.value, base.value);
        assert_eq!(sym.witness_context, base.witness_context);
        assert_eq!(sym.witness_vector, base.witness_vector);
        assert!(sym.subsets_pruned > 0);
        assert!(sym.subsets_examined < base.subsets_examined);
    }

    #[test]
    fn automorphism_group_sizes() {
        let count = |g: &str| {
            automorphisms(&GroupSpec::parse(g).unwrap(), DEFAULT_ELEMENT_CAP)
                .unwrap()
                .len()
        };
        // |GL(2,3)| = 48, |GL(3,2)| = 168, |GL(4,2)| = 20160.
        assert_eq!(count("3,3"), 48);
        assert_eq!(count("2,2,2"), 168);
        assert_eq!(count("2,2,2,2"), 20160);
        // Aut(C4 x C2) has order 8.
        assert_eq!(count("4,2"), 8);
    }

    #[test]
    fn per_context_prunings_agree_with_audit() {
        let g = GroupSpec::parse("12,4").unwrap();
        let els = [
            g.element(&[1, 0]).unwrap(),
            g.element(&[1, 1]).unwrap(),
            g.element(&[0, 1]).unwrap(),
        ];
        let ctx = Context::new(g, els.to_vec()).unwrap();
        let fast = max_group_atom_length(&ctx, false, DEFAULT_NODE_CAP).unwrap();
        let slow = max_group_atom_length(&ctx, true, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(fast, slow);
        let (len, _) = fast.unwrap();
        assert!(len <= 14);
    }

    #[test]
    fn combinations_is_lexicographic_and_complete() {
        let all: Vec<Vec<usize>> = Combos::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }
}
