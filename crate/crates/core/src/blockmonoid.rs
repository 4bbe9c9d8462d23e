//! Block monoids: zero-sum multiplicity vectors over a fixed tuple of
//! group elements, and their atoms.
//!
//! Fix elements `g1, .., gk` of a finite abelian group. A multiplicity
//! vector `m in N^k` is a zero-sum when `m1*g1 + .. + mk*gk = 0`. The
//! zero-sums form a monoid under addition; its atoms are the nonzero
//! zero-sums that do not split as a sum of two nonzero zero-sums, which
//! for this monoid is the same as being minimal in the componentwise
//! partial order. Every atom satisfies `mi <= ord(gi)`, with equality in
//! a coordinate only for the single-generator atoms `ord(gi) * ei`, so
//! the atom set is finite and sits inside the box `prod [0, ord(gi)]`.

use std::fmt;
use std::str::FromStr;

use crate::abelian::{GroupElement, GroupSpec};
use crate::error::{Error, Result};

/// Default cap on DFS nodes visited during atom enumeration.
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

/// A multiplicity vector over the generators of a [`Context`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultVector(pub Vec<u64>);

impl MultVector {
    /// `|m|`, the total number of group elements the vector spends.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.0.iter().all(|&c| c != 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }
}

impl fmt::Display for MultVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for MultVector {
    type Err = Error;

    /// Parses `"[11,1,3]"`.
    fn from_str(text: &str) -> Result<MultVector> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("vector {text:?} must look like [a,b,..]")))?;
        let coords: Vec<u64> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad entry in vector {text:?}")))
            })
            .collect::<Result<_>>()?;
        if coords.is_empty() {
            return Err(Error::Parse(format!("vector {text:?} is empty")));
        }
        Ok(MultVector(coords))
    }
}

/// A group together with an ordered tuple of distinct nonzero elements.
#[derive(Debug, Clone)]
pub struct Context {
    group: GroupSpec,
    elements: Vec<GroupElement>,
    orders: Vec<u64>,
}

impl Context {
    /// Validates that the elements are pairwise distinct, nonzero, and
    /// belong to `group` (dimension-checked on construction of each).
    pub fn new(group: GroupSpec, elements: Vec<GroupElement>) -> Result<Context> {
        Context::build(group, elements, false)
    }

    /// Like [`Context::new`] but admits the identity as an element, for
    /// sweeps that deliberately include it.
    pub fn allowing_identity(group: GroupSpec, elements: Vec<GroupElement>) -> Result<Context> {
        Context::build(group, elements, true)
    }

    fn build(
        group: GroupSpec,
        elements: Vec<GroupElement>,
        allow_identity: bool,
    ) -> Result<Context> {
        if elements.is_empty() {
            return Err(Error::InvalidInput(
                "context needs at least one element".into(),
            ));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.coords().len() != group.rank() {
                return Err(Error::DimensionMismatch {
                    expected: group.rank(),
                    got: e.coords().len(),
                });
            }
            if !allow_identity && group.is_zero(e) {
                return Err(Error::InvalidInput(format!(
                    "context element #{i} is the identity"
                )));
            }
            if elements[..i].contains(e) {
                return Err(Error::InvalidInput(format!(
                    "context element #{i} = {e} repeats an earlier element"
                )));
            }
        }
        let orders = elements
            .iter()
            .map(|e| group.element_order(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Context {
            group,
            elements,
            orders,
        })
    }

    /// Context over every non-identity element of the group, in
    /// lexicographic order. Atom lengths over this context realise the
    /// Davenport constant.
    pub fn full_group(group: GroupSpec, element_cap: u64) -> Result<Context> {
        let elements = group.nonzero_elements(element_cap)?;
        Context::new(group, elements)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Context restricted to the listed coordinate positions.
    pub fn restrict(&self, indices: &[usize]) -> Result<Context> {
        let elements = indices
            .iter()
            .map(|&i| {
                self.elements
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Context::new(self.group.clone(), elements)
    }

    fn check_dim(&self, m: &MultVector) -> Result<()> {
        if m.0.len() != self.elements.len() {
            return Err(Error::DimensionMismatch {
                expected: self.elements.len(),
                got: m.0.len(),
            });
        }
        Ok(())
    }

    /// `m1*g1 + .. + mk*gk` in the group.
    pub fn weighted_sum(&self, m: &MultVector) -> Result<GroupElement> {
        self.check_dim(m)?;
        let mut acc = self.group.zero();
        for (c, e) in m.0.iter().zip(&self.elements) {
            let c = (c % self.group.exponent()) as i64;
            acc = self.group.add(&acc, &self.group.scalar_mul(c, e));
        }
        Ok(acc)
    }

    pub fn is_zero_sum(&self, m: &MultVector) -> Result<bool> {
        Ok(self.group.is_zero(&self.weighted_sum(m)?))
    }

    /// The complementer `m*`, with `m*_i = ord(gi) - mi`. Defined for
    /// vectors inside the atom box; zero-sum iff `m` is.
    pub fn complementer(&self, m: &MultVector) -> Result<MultVector> {
        self.check_dim(m)?;
        let coords =
            m.0.iter()
                .zip(&self.orders)
                .map(|(&c, &o)| {
                    o.checked_sub(c).ok_or_else(|| {
                        Error::InvalidInput(format!("entry {c} exceeds element order {o}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
        Ok(MultVector(coords))
    }

    /// Tests whether a nonzero zero-sum is an atom by searching for a
    /// proper nonzero zero-sum below it. Componentwise minimality among
    /// nonzero zero-sums is equivalent to unsplittability here: any proper
    /// zero-sum `v < m` gives the split `m = v + (m - v)`, and conversely.
    pub fn is_atom(&self, m: &MultVector) -> Result<bool> {
        self.check_dim(m)?;
        if m.is_zero() || !self.is_zero_sum(m)? {
            return Ok(false);
        }
        let mut cur = MultVector(vec![0; m.0.len()]);
        Ok(!self.search_proper_zero_sum_below(m, &mut cur, 0, &self.group.zero()))
    }

    fn search_proper_zero_sum_below(
        &self,
        m: &MultVector,
        cur: &mut MultVector,
        i: usize,
        sum: &GroupElement,
    ) -> bool {
        if i == m.0.len() {
            return self.group.is_zero(sum) && !cur.is_zero() && cur != m;
        }
        let mut term = sum.clone();
        for c in 0..=m.0[i] {
            cur.0[i] = c;
            if self.search_proper_zero_sum_below(m, cur, i + 1, &term) {
                return true;
            }
            term = self.group.add(&term, &self.elements[i]);
        }
        cur.0[i] = 0;
        false
    }

    /// Enumerates every atom of the block monoid, sorted lexicographically.
    ///
    /// `max_len` bounds the atom length during the search (exact: a prefix
    /// is abandoned once its running length exceeds the bound, which can
    /// never discard an atom of admissible length). `node_cap` bounds the
    /// number of DFS nodes visited and fails loudly when exhausted.
    pub fn enumerate_atoms(&self, max_len: Option<u64>, node_cap: u64) -> Result<Vec<MultVector>> {
        let mut zero_sums = Vec::new();
        let mut cur = vec![0u64; self.elements.len()];
        let mut nodes = 0u64;
        self.collect_zero_sums(
            &mut cur,
            0,
            &self.group.zero(),
            0,
            max_len,
            node_cap,
            &mut nodes,
            &mut zero_sums,
        )?;
        // Keep the minimal ones. Sorting by length first means every
        // potential strict minorant of a vector is examined before it.
        zero_sums.sort_by_key(|m: &MultVector| (m.length(), m.0.clone()));
        let mut atoms: Vec<MultVector> = Vec::new();
        'outer: for m in zero_sums {
            for a in &atoms {
                if a.le(&m) {
                    continue 'outer;
                }
            }
            atoms.push(m);
        }
        atoms.sort();
        Ok(atoms)
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_zero_sums(
        &self,
        cur: &mut Vec<u64>,
        i: usize,
        sum: &GroupElement,
        len: u64,
        max_len: Option<u64>,
        node_cap: u64,
        nodes: &mut u64,
        out: &mut Vec<MultVector>,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > node_cap {
            return Err(Error::CapExceeded(format!(
                "atom enumeration visited more than {node_cap} nodes"
            )));
        }
        if i == self.elements.len() {
            if self.group.is_zero(sum) && len > 0 {
                out.push(MultVector(cur.clone()));
            }
            return Ok(());
        }
        let mut term = sum.clone();
        for c in 0..=self.orders[i] {
            if let Some(cap) = max_len {
                if len + c > cap {
                    break;
                }
            }
            cur[i] = c;
            self.collect_zero_sums(cur, i + 1, &term, len + c, max_len, node_cap, nodes, out)?;
            term = self.group.add(&term, &self.elements[i]);
        }
        cur[i] = 0;
        Ok(())
    }

    /// Maximum atom length over this context.
    pub fn max_atom_length(&self, node_cap: u64) -> Result<u64> {
        let atoms = self.enumerate_atoms(None, node_cap)?;
        Ok(atoms.iter().map(|a| a.length()).max().unwrap_or(0))
    }
}

/// The Davenport constant `D(G)`: the maximum atom length over the context
/// of all non-identity elements of `G`.
pub fn davenport(group: &GroupSpec, element_cap: u64, node_cap: u64) -> Result<u64> {
    Context::full_group(group.clone(), element_cap)?.max_atom_length(node_cap)
}
