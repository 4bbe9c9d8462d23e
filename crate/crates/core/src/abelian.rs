//! Finite abelian groups in invariant-factor form.
//!
//! A group is a list of cyclic moduli `[n1, n2, .., nr]` with
//! `2 <= nr | n(r-1) | .. | n1`, so `n1` is the exponent and `r` the rank.
//! Elements are coordinate vectors, each residue stored reduced modulo its
//! modulus. Any list of factors >= 2 describes some finite abelian group;
//! `canonicalize` rewrites it into the unique invariant-factor chain.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// Default cap on `|G|` for whole-group element enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

/// A finite abelian group `C_{n1} + C_{n2} + .. + C_{nr}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
}

/// An element of a [`GroupSpec`], one reduced residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupSpec {
    /// Builds the canonical invariant-factor form of `C_{f1} + .. + C_{fk}`.
    ///
    /// Factors equal to 1 are dropped; zero factors are rejected, and so is
    /// an empty result (the trivial group has no canonical chain here).
    pub fn canonicalize(factors: &[u64]) -> Result<GroupSpec> {
        if factors.contains(&0) {
            return Err(Error::InvalidInput("cyclic factors must be >= 1".into()));
        }
        // Bucket prime powers per prime, largest first; the i-th invariant
        // factor is the product of every prime's i-th largest power.
        let mut buckets: Vec<(u64, Vec<u32>)> = Vec::new();
        for &f in factors {
            for (p, e) in arith::factorize(f) {
                match buckets.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, exps)) => exps.push(e),
                    None => buckets.push((p, vec![e])),
                }
            }
        }
        for (_, exps) in &mut buckets {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let depth = buckets.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        if depth == 0 {
            return Err(Error::TrivialGroup);
        }
        let mut moduli = Vec::with_capacity(depth);
        for i in 0..depth {
            let mut m: u64 = 1;
            for (p, exps) in &buckets {
                if let Some(&e) = exps.get(i) {
                    m = m
                        .checked_mul(p.checked_pow(e).ok_or(Error::Overflow("canonicalize"))?)
                        .ok_or(Error::Overflow("canonicalize"))?;
                }
            }
            moduli.push(m);
        }
        Ok(GroupSpec { moduli })
    }

    /// Parses `"12,4"` or the alias `"C12xC4"` (case-insensitive) and
    /// canonicalizes the result.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::GroupParse("empty group description".into()));
        }
        let lower = text.to_ascii_lowercase();
        let parts: Vec<&str> = if lower.contains('x') {
            lower.split('x').collect()
        } else {
            lower.split(',').collect()
        };
        let mut factors = Vec::with_capacity(parts.len());
        for part in parts {
            let digits = part.trim().trim_start_matches('c');
            let f: u64 = digits.parse().map_err(|_| {
                Error::GroupParse(format!("bad cyclic factor {part:?} in {text:?}"))
            })?;
            factors.push(f);
        }
        GroupSpec::canonicalize(&factors).map_err(|e| match e {
            Error::TrivialGroup => Error::TrivialGroup,
            _ => Error::GroupParse(format!("{text:?}: {e}")),
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli[0]
    }

    /// `|G|`, the product of the moduli.
    pub fn order(&self) -> Result<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(Error::Overflow("group order"))
    }

    /// `d*(G) = sum (ni - 1)`, the classical lower-bound quantity for the
    /// Davenport constant.
    pub fn d_star(&self) -> u64 {
        self.moduli.iter().map(|&m| m - 1).sum()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    /// The i-th standard generator (coordinate `i` equal to 1).
    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.moduli.len()];
        coords[i] = 1;
        GroupElement { coords }
    }

    /// Wraps raw coordinates, reducing each modulo its modulus.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::DimensionMismatch {
                expected: self.moduli.len(),
                got: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| c % m)
                .collect(),
        })
    }

    /// Parses `"(1,0)"` into an element of this group.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("element {text:?} must look like (a,b,..)")))?;
        let coords: Vec<u64> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate in element {text:?}")))
            })
            .collect::<Result<_>>()?;
        self.element(&coords)
    }

    pub fn is_zero(&self, g: &GroupElement) -> bool {
        g.coords.iter().all(|&c| c == 0)
    }

    /// Multiplicative order of `g`: lcm over coordinates of `ni / gcd(gi, ni)`.
    pub fn element_order(&self, g: &GroupElement) -> Result<u64> {
        let mut ord = 1u64;
        for (&c, &m) in g.coords.iter().zip(&self.moduli) {
            ord = arith::lcm(ord, m / arith::gcd(c, m))?;
        }
        Ok(ord)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn negate(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        }
    }

    /// `c * g` for any signed scalar `c` (reduced per coordinate).
    pub fn scalar_mul(&self, c: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| {
                    let c = c.rem_euclid(m as i64) as u128;
                    ((c * x as u128) % m as u128) as u64
                })
                .collect(),
        }
    }

    /// All elements in lexicographic coordinate order, identity first.
    /// Refuses groups larger than `cap`.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        let n = self.order()?;
        if n > cap {
            return Err(Error::CapExceeded(format!(
                "group has {n} elements, enumeration cap is {cap}"
            )));
        }
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = vec![0u64; self.moduli.len()];
        loop {
            out.push(GroupElement {
                coords: cur.clone(),
            });
            // Odometer increment, least-significant coordinate last.
            let mut i = self.moduli.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.moduli[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// All non-identity elements, lexicographic order.
    pub fn nonzero_elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        let mut all = self.enumerate_elements(cap)?;
        all.remove(0);
        Ok(all)
    }

    /// Position of `g` in [`GroupSpec::enumerate_elements`] order, i.e. the
    /// mixed-radix value of its coordinates.
    pub fn element_index(&self, g: &GroupElement) -> usize {
        g.coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    /// Alias form like `C12xC4`.
    pub fn alias_name(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("C{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> GroupSpec {
        GroupSpec::parse(text).unwrap()
    }

    /// Independent isomorphism check: two abelian groups are isomorphic iff
    /// the counts of solutions of `d*x = 0` agree for every d. Used as an
    /// oracle for canonicalization, which never counts anything.
    fn torsion_counts(moduli: &[u64]) -> Vec<(u64, u64)> {
        let exp = moduli.iter().fold(1, |a, &b| a * b / arith::gcd(a, b));
        (1..=exp)
            .filter(|d| exp % d == 0)
            .map(|d| (d, moduli.iter().map(|&m| arith::gcd(d, m)).product()))
            .collect()
    }

    #[test]
    fn canonicalize_merges_coprime_factors() {
        let spec = GroupSpec::canonicalize(&[4, 6]).unwrap();
        assert_eq!(spec.moduli(), &[12, 2]);
        assert_eq!(torsion_counts(&[4, 6]), torsion_counts(&[12, 2]));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(GroupSpec::canonicalize(&[2, 2]).unwrap().moduli(), &[2, 2]);
        assert_eq!(GroupSpec::canonicalize(&[5]).unwrap().moduli(), &[5]);
        assert_eq!(
            GroupSpec::canonicalize(&[6, 4, 1]).unwrap().moduli(),
            &[12, 2]
        );
        assert_eq!(
            GroupSpec::canonicalize(&[8, 9, 5]).unwrap().moduli(),
            &[360]
        );
        assert!(matches!(
            GroupSpec::canonicalize(&[1, 1]),
            Err(Error::TrivialGroup)
        ));
        assert!(GroupSpec::canonicalize(&[0]).is_err());
    }

    #[test]
    fn canonicalize_preserves_isomorphism_type() {
        // Torsion profile is a complete invariant for finite abelian groups.
        for factors in [
            vec![2, 3, 4],
            vec![6, 6],
            vec![10, 4],
            vec![9, 3, 3],
            vec![12, 8, 2],
        ] {
            let spec = GroupSpec::canonicalize(&factors).unwrap();
            assert_eq!(torsion_counts(&factors), torsion_counts(spec.moduli()));
            // And the chain condition holds.
            for w in spec.moduli().windows(2) {
                assert_eq!(w[0] % w[1], 0);
            }
            assert!(*spec.moduli().last().unwrap() >= 2);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(g("12,4").moduli(), &[12, 4]);
        assert_eq!(g("C12xC4").moduli(), &[12, 4]);
        assert_eq!(g("c2Xc2").moduli(), &[2, 2]);
        assert_eq!(g("4,6").moduli(), &[12, 2]);
        assert!(GroupSpec::parse("").is_err());
        assert!(GroupSpec::parse("12,foo").is_err());
        assert!(matches!(GroupSpec::parse("1"), Err(Error::TrivialGroup)));
    }

    #[test]
    fn orders_in_c12_c4() {
        let spec = g("12,4");
        let e = |c: &[u64]| spec.element(c).unwrap();
        assert_eq!(spec.element_order(&e(&[1, 0])).unwrap(), 12);
        assert_eq!(spec.element_order(&e(&[0, 1])).unwrap(), 4);
        assert_eq!(spec.element_order(&e(&[1, 1])).unwrap(), 12);
        assert_eq!(spec.element_order(&e(&[6, 2])).unwrap(), 2);
        assert_eq!(spec.element_order(&spec.zero()).unwrap(), 1);
    }

    #[test]
    fn arithmetic_examples() {
        let spec = g("12,4");
        let e = |c: &[u64]| spec.element(c).unwrap();
        assert_eq!(spec.scalar_mul(7, &e(&[11, 3])), e(&[5, 1]));
        assert_eq!(spec.add(&e(&[11, 3]), &e(&[1, 1])), e(&[0, 0]));
        assert_eq!(spec.negate(&e(&[11, 3])), e(&[1, 1]));
        assert_eq!(spec.negate(&spec.zero()), spec.zero());
        assert_eq!(spec.scalar_mul(-1, &e(&[1, 0])), e(&[11, 0]));
        assert_eq!(spec.d_star(), 14);
        assert_eq!(g("2,2").d_star(), 2);
    }

    #[test]
    fn element_reduction_and_dimension_checks() {
        let spec = g("12,4");
        assert_eq!(
            spec.element(&[12, 5]).unwrap(),
            spec.element(&[0, 1]).unwrap()
        );
        assert!(matches!(
            spec.element(&[1]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        ));
        assert_eq!(spec.parse_element("(11, 3)").unwrap().coords(), &[11, 3]);
        assert!(spec.parse_element("11,3").is_err());
        assert!(spec.parse_element("(a,b)").is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_capped() {
        let spec = g("2,2");
        let all = spec.enumerate_elements(DEFAULT_ELEMENT_CAP).unwrap();
        let coords: Vec<&[u64]> = all.iter().map(|e| e.coords()).collect();
        assert_eq!(coords, vec![&[0, 0][..], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(spec.nonzero_elements(10).unwrap().len(), 3);
        assert!(matches!(
            spec.enumerate_elements(3),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn element_index_matches_enumeration_position() {
        let spec = g("6,2");
        for (i, el) in spec.enumerate_elements(100).unwrap().iter().enumerate() {
            assert_eq!(spec.element_index(el), i);
        }
    }

    #[test]
    fn scalar_mul_matches_repeated_addition() {
        let spec = g("6,2");
        for el in spec.enumerate_elements(100).unwrap() {
            let mut acc = spec.zero();
            for c in 0..=13i64 {
                assert_eq!(spec.scalar_mul(c, &el), acc, "c={c} el={el}");
                acc = spec.add(&acc, &el);
            }
            // Negative scalars agree with negation of the positive multiple.
            assert_eq!(
                spec.scalar_mul(-5, &el),
                spec.negate(&spec.scalar_mul(5, &el))
            );
            // The order annihilates and is minimal.
            let ord = spec.element_order(&el).unwrap();
            assert!(spec.is_zero(&spec.scalar_mul(ord as i64, &el)));
            for d in 1..ord {
                if ord.is_multiple_of(d) {
                    assert!(!spec.is_zero(&spec.scalar_mul(d as i64, &el)));
                }
            }
        }
    }
}
