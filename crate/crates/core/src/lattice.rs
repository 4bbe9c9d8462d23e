//! Integer lattices spanned by zero-sum vectors, with exact membership
//! tests, plus the certificate routines that decide or refute the group
//! atom property without enumerating the whole lattice.
//!
//! A multiplicity vector `m` over a context is a *group atom* when it is
//! not an integral linear combination of zero-sum vectors of length
//! strictly below `|m|`. Since every zero-sum decomposes over atoms of no
//! greater length, it suffices to span the lattice generated by the atoms
//! of length `< |m|` and test membership there. The basis is kept in
//! Hermite normal form: row echelon, positive pivots, entries above each
//! pivot reduced into `[0, pivot)`. Alongside each basis row we carry its
//! expression in the original generators, so membership tests yield
//! explicit integer coefficients.

use crate::arith;
use crate::blockmonoid::{Context, MultVector};
use crate::error::{Error, Result};

/// One signed term of an integral decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub vector: MultVector,
}

/// Outcome of a group-atom membership test.
#[derive(Debug, Clone)]
pub struct GroupAtomVerdict {
    pub is_group_atom: bool,
    /// Integral decomposition over shorter atoms when membership holds.
    pub witness: Option<Vec<Term>>,
    /// Number of shorter atoms spanning the lattice that was tested.
    pub generating_set_size: usize,
}

/// Row basis of an integer lattice in Hermite normal form.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    dim: usize,
    rows: Vec<Vec<i64>>,
    transforms: Vec<Vec<i64>>,
    generators: usize,
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or(Error::Overflow("lattice arithmetic"))
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b)
        .ok_or(Error::Overflow("lattice arithmetic"))
}

fn combine(ca: i64, a: &[i64], cb: i64, b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| add(mul(ca, x)?, mul(cb, y)?))
        .collect()
}

fn sub_mul(a: &mut [i64], q: i64, b: &[i64]) -> Result<()> {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = add(*x, -mul(q, y)?)?;
    }
    Ok(())
}

fn negate(a: &mut [i64]) -> Result<()> {
    for x in a.iter_mut() {
        *x = x
            .checked_neg()
            .ok_or(Error::Overflow("lattice arithmetic"))?;
    }
    Ok(())
}

fn vector_to_row(m: &MultVector) -> Result<Vec<i64>> {
    m.0.iter()
        .map(|&c| i64::try_from(c).map_err(|_| Error::Overflow("vector entry")))
        .collect()
}

impl LatticeBasis {
    pub fn new(dim: usize) -> LatticeBasis {
        LatticeBasis {
            dim,
            rows: Vec::new(),
            transforms: Vec::new(),
            generators: 0,
        }
    }

    pub fn from_rows(dim: usize, rows: &[Vec<i64>]) -> Result<LatticeBasis> {
        let mut basis = LatticeBasis::new(dim);
        for row in rows {
            basis.insert(row)?;
        }
        Ok(basis)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<(usize, i64)> {
        self.rows
            .iter()
            .map(|r| {
                let col = r.iter().position(|&x| x != 0).unwrap();
                (col, r[col])
            })
            .collect()
    }

    fn pivot_col(row: &[i64]) -> usize {
        row.iter().position(|&x| x != 0).unwrap()
    }

    /// Adds a generator. Returns whether the lattice actually grew; either
    /// way the generator occupies the next coefficient slot reported by
    /// [`LatticeBasis::contains`].
    pub fn insert(&mut self, v: &[i64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let slot = self.generators;
        self.generators += 1;
        for t in &mut self.transforms {
            t.push(0);
        }
        if self.contains(v)?.is_some() {
            return Ok(false);
        }
        let mut work = v.to_vec();
        let mut twork = vec![0i64; self.generators];
        twork[slot] = 1;
        let mut col = 0;
        while col < self.dim {
            if work[col] == 0 {
                col += 1;
                continue;
            }
            match self.rows.iter().position(|r| Self::pivot_col(r) == col) {
                Some(r) => {
                    let p = self.rows[r][col];
                    let w = work[col];
                    if w % p == 0 {
                        let q = w / p;
                        sub_mul(&mut work, q, &self.rows[r])?;
                        sub_mul(&mut twork, q, &self.transforms[r])?;
                    } else {
                        let (g, x, y) = arith::ext_gcd(p, w);
                        let new_row = combine(x, &self.rows[r], y, &work)?;
                        let new_trow = combine(x, &self.transforms[r], y, &twork)?;
                        let reduced = combine(p / g, &work, -(w / g), &self.rows[r])?;
                        let treduced = combine(p / g, &twork, -(w / g), &self.transforms[r])?;
                        self.rows[r] = new_row;
                        self.transforms[r] = new_trow;
                        work = reduced;
                        twork = treduced;
                    }
                }
                None => {
                    if work[col] < 0 {
                        negate(&mut work)?;
                        negate(&mut twork)?;
                    }
                    let at = self
                        .rows
                        .iter()
                        .position(|r| Self::pivot_col(r) > col)
                        .unwrap_or(self.rows.len());
                    self.rows.insert(at, work);
                    self.transforms.insert(at, twork);
                    self.normalize()?;
                    return Ok(true);
                }
            }
        }
        // The gcd combinations absorbed the generator into existing rows.
        self.normalize()?;
        Ok(true)
    }

    fn normalize(&mut self) -> Result<()> {
        for b in 0..self.rows.len() {
            let col = Self::pivot_col(&self.rows[b]);
            if self.rows[b][col] < 0 {
                negate(&mut self.rows[b])?;
                negate(&mut self.transforms[b])?;
            }
        }
        for b in 0..self.rows.len() {
            let col = Self::pivot_col(&self.rows[b]);
            let p = self.rows[b][col];
            for a in 0..b {
                let q = self.rows[a][col].div_euclid(p);
                if q != 0 {
                    let row = self.rows[b].clone();
                    let trow = self.transforms[b].clone();
                    sub_mul(&mut self.rows[a], q, &row)?;
                    sub_mul(&mut self.transforms[a], q, &trow)?;
                }
            }
        }
        Ok(())
    }

    /// Membership test. Returns the coefficients over the inserted
    /// generators when `v` lies in the lattice.
    pub fn contains(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut work = v.to_vec();
        let mut coeffs = vec![0i64; self.generators];
        for (row, trow) in self.rows.iter().zip(&self.transforms) {
            let col = Self::pivot_col(row);
            if work[..col].iter().any(|&x| x != 0) {
                return Ok(None);
            }
            if work[col] % row[col] != 0 {
                return Ok(None);
            }
            let q = work[col] / row[col];
            if q != 0 {
                sub_mul(&mut work, q, row)?;
                for (c, &t) in coeffs.iter_mut().zip(trow) {
                    *c = add(*c, mul(q, t)?)?;
                }
            }
        }
        if work.iter().all(|&x| x == 0) {
            Ok(Some(coeffs))
        } else {
            Ok(None)
        }
    }

    pub fn insert_vector(&mut self, m: &MultVector) -> Result<bool> {
        self.insert(&vector_to_row(m)?)
    }

    pub fn contains_vector(&self, m: &MultVector) -> Result<Option<Vec<i64>>> {
        self.contains(&vector_to_row(m)?)
    }
}

/// Decides whether `m` is a group atom of its context by spanning the
/// lattice of all atoms of length `< |m|` and testing membership.
pub fn is_group_atom(ctx: &Context, m: &MultVector, node_cap: u64) -> Result<GroupAtomVerdict> {
    if !ctx.is_zero_sum(m)? {
        return Err(Error::InvalidInput(format!(
            "{m} is not a zero-sum over this context"
        )));
    }
    if m.is_zero() {
        return Ok(GroupAtomVerdict {
            is_group_atom: false,
            witness: Some(Vec::new()),
            generating_set_size: 0,
        });
    }
    let len = m.length();
    let mut shorter = ctx.enumerate_atoms(Some(len - 1), node_cap)?;
    shorter.sort_by_key(|a| (a.length(), a.0.clone()));
    let mut basis = LatticeBasis::new(ctx.len());
    for a in &shorter {
        basis.insert(&vector_to_row(a)?)?;
    }
    let target = vector_to_row(m)?;
    match basis.contains(&target)? {
        None => Ok(GroupAtomVerdict {
            is_group_atom: true,
            witness: None,
            generating_set_size: shorter.len(),
        }),
        Some(coeffs) => {
            let terms: Vec<Term> = coeffs
                .iter()
                .zip(&shorter)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, a)| Term {
                    coeff: c,
                    vector: a.clone(),
                })
                .collect();
            verify_decomposition(&terms, &target)?;
            Ok(GroupAtomVerdict {
                is_group_atom: false,
                witness: Some(terms),
                generating_set_size: shorter.len(),
            })
        }
    }
}

fn verify_decomposition(terms: &[Term], target: &[i64]) -> Result<()> {
    let mut acc = vec![0i64; target.len()];
    for t in terms {
        let row = vector_to_row(&t.vector)?;
        for (a, &x) in acc.iter_mut().zip(&row) {
            *a = add(*a, mul(t.coeff, x)?)?;
        }
    }
    if acc != target {
        return Err(Error::Internal(format!(
            "decomposition check failed: terms sum to {acc:?}, target {target:?}"
        )));
    }
    Ok(())
}

/// Result of the support-divisibility certificate for a full-support
/// zero-sum `m`, a coordinate `index`, and a divisor `d`.
///
/// When all three conditions hold, `m` is a group atom: every atom of
/// length `< |m|` misses full support by the third condition, so its
/// `index` entry is divisible by `d` by the first, hence so is the entry
/// of any integral combination, while `m` itself escapes by the second.
#[derive(Debug, Clone)]
pub struct DivisibilityCertificate {
    pub holds: bool,
    /// Every atom without full support has its `index` entry divisible by `d`.
    pub sub_support_entries_divisible: bool,
    /// `d` does not divide the `index` entry of `m`.
    pub target_entry_indivisible: bool,
    /// No full-support atom is shorter than `m`.
    pub full_support_not_shorter: bool,
}

pub fn certify_by_divisibility(
    ctx: &Context,
    m: &MultVector,
    index: usize,
    d: u64,
    node_cap: u64,
) -> Result<DivisibilityCertificate> {
    if index >= ctx.len() {
        return Err(Error::InvalidInput(format!(
            "certificate index {index} out of range for {} elements",
            ctx.len()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidInput(
            "certificate divisor must be >= 1".into(),
        ));
    }
    if !ctx.is_zero_sum(m)? {
        return Err(Error::Precondition(format!("{m} is not a zero-sum")));
    }
    if !m.has_full_support() {
        return Err(Error::Precondition(format!(
            "{m} does not have full support"
        )));
    }
    let atoms = ctx.enumerate_atoms(None, node_cap)?;
    let mut sub_ok = true;
    let mut full_ok = true;
    for a in &atoms {
        if a.has_full_support() {
            if a.length() < m.length() {
                full_ok = false;
            }
        } else if a.0[index] % d != 0 {
            sub_ok = false;
        }
    }
    let entry_ok = !m.0[index].is_multiple_of(d);
    Ok(DivisibilityCertificate {
        holds: sub_ok && entry_ok && full_ok,
        sub_support_entries_divisible: sub_ok,
        target_entry_indivisible: entry_ok,
        full_support_not_shorter: full_ok,
    })
}

/// Finds a unit `l` modulo `alpha * gamma` with `l * beta = 1 (mod alpha)`,
/// for coprime `alpha, beta`. Chosen as the CRT solution that is also
/// `1` modulo every prime of `gamma` outside `alpha`, so coprimality to
/// the full modulus comes for free.
pub fn find_scaling_unit(alpha: u64, beta: u64, gamma: u64) -> Result<u64> {
    if alpha == 0 || gamma == 0 {
        return Err(Error::InvalidInput(
            "scaling unit needs alpha, gamma >= 1".into(),
        ));
    }
    if arith::gcd(alpha, beta) != 1 {
        return Err(Error::Precondition(format!(
            "alpha={alpha} and beta={beta} are not coprime"
        )));
    }
    let modulus = alpha
        .checked_mul(gamma)
        .ok_or(Error::Overflow("scaling unit modulus"))?;
    if modulus == 1 {
        return Ok(1);
    }
    let beta_hat = arith::mod_inverse(beta % alpha, alpha)?;
    let p: u64 = arith::prime_divisors(gamma)
        .into_iter()
        .filter(|&q| !alpha.is_multiple_of(q))
        .try_fold(1u64, |acc, q| acc.checked_mul(q))
        .ok_or(Error::Overflow("scaling unit"))?;
    let ell = arith::crt(beta_hat, alpha, 1 % p, p)?;
    let congruent = alpha == 1 || (ell as u128 * (beta % alpha) as u128) % alpha as u128 == 1;
    if ell == 0 || ell >= modulus || arith::gcd(ell, modulus) != 1 || !congruent {
        return Err(Error::Internal(format!(
            "scaling unit postcondition failed: alpha={alpha} beta={beta} gamma={gamma} ell={ell}"
        )));
    }
    Ok(ell)
}

/// Explicit decomposition of a long atom produced by unit scaling.
#[derive(Debug, Clone)]
pub struct ScalingRefutation {
    pub ell: u64,
    pub ell_hat: u64,
    /// 1 when the scaled vector itself is short, 2 when its complementer is.
    pub branch: u8,
    pub scaled: MultVector,
    pub terms: Vec<Term>,
}

/// Refutes the group-atom property of a long atom over an odd context
/// whose first `k - 1` elements have maximal order: scales `m` by a unit
/// `l`, and expresses `m` integrally over the scaled vector (or its
/// complementer) and single-generator atoms, all of length `< |m|`.
pub fn refute_by_scaling(ctx: &Context, m: &MultVector) -> Result<ScalingRefutation> {
    let k = ctx.len();
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "scaling refutation needs an odd context of >= 3 elements, got {k}"
        )));
    }
    let s = ((k - 1) / 2) as u64;
    let n1 = ctx.group().exponent();
    let orders = ctx.orders();
    if orders[..k - 1].iter().any(|&o| o != n1) {
        return Err(Error::Precondition(format!(
            "all elements except the last must have order {n1}"
        )));
    }
    if !ctx.is_atom(m)? {
        return Err(Error::Precondition(format!("{m} is not an atom")));
    }
    let ord_last = orders[k - 1];
    let p = arith::smallest_prime_divisor(ord_last)
        .ok_or_else(|| Error::Internal("nonzero element with order 1".into()))?;
    let len = m.length();
    let threshold = s * n1 + ord_last / p;
    if len <= threshold {
        return Err(Error::Precondition(format!(
            "length {len} does not exceed the bound {threshold}"
        )));
    }

    let d = arith::gcd(len, ord_last);
    let alpha = ord_last / d;
    let beta = (len - s * n1) / d;
    let gamma = d * n1 / ord_last;
    if arith::gcd(alpha, beta) != 1 {
        return Err(Error::Internal(format!(
            "alpha={alpha} beta={beta} unexpectedly share a factor"
        )));
    }
    let ell = find_scaling_unit(alpha, beta, gamma)?;
    let ell_hat = arith::mod_inverse(ell % n1, n1)?;
    let scaled = MultVector(
        m.0.iter()
            .zip(orders)
            .map(|(&c, &o)| (ell as u128 * c as u128 % o as u128) as u64)
            .collect(),
    );
    let t: Vec<i64> = scaled
        .0
        .iter()
        .zip(&m.0)
        .zip(orders)
        .map(|((&sc, &mc), &o)| {
            let num = ell_hat as i64 * sc as i64 - mc as i64;
            if num % o as i64 != 0 {
                return Err(Error::Internal(format!(
                    "scaled entry {sc} not congruent to {mc} mod {o}"
                )));
            }
            Ok(num / o as i64)
        })
        .collect::<Result<_>>()?;

    let unit_atom = |i: usize| {
        let mut v = vec![0u64; k];
        v[i] = orders[i];
        MultVector(v)
    };
    let target = vector_to_row(m)?;
    let (branch, lead, coeffs): (u8, MultVector, Vec<i64>) = if scaled.length() < len {
        (1, scaled.clone(), t.iter().map(|&x| -x).collect())
    } else {
        let star = ctx.complementer(&scaled)?;
        if star.length() >= len {
            return Err(Error::Internal(format!(
                "neither scaled length {} nor complementer length {} drops below {len}",
                scaled.length(),
                star.length()
            )));
        }
        (2, star, t.iter().map(|&x| ell_hat as i64 - x).collect())
    };
    let mut terms = vec![Term {
        coeff: if branch == 1 {
            ell_hat as i64
        } else {
            -(ell_hat as i64)
        },
        vector: lead,
    }];
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            terms.push(Term {
                coeff: c,
                vector: unit_atom(i),
            });
        }
    }
    for term in &terms {
        if !ctx.is_zero_sum(&term.vector)? || term.vector.length() >= len {
            return Err(Error::Internal(format!(
                "refutation term {} is not a shorter zero-sum",
                term.vector
            )));
        }
    }
    verify_decomposition(&terms, &target)?;
    Ok(ScalingRefutation {
        ell,
        ell_hat,
        branch,
        scaled,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupSpec;
    use crate::blockmonoid::DEFAULT_NODE_CAP;

    fn ctx(group: &str, elements: &[&[u64]]) -> Context {
        let g = GroupSpec::parse(group).unwrap();
        let els = elements.iter().map(|c| g.element(c).unwrap()).collect();
        Context::new(g, els).unwrap()
    }

    #[test]
    fn hnf_of_sum_and_difference() {
        let basis = LatticeBasis::from_rows(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(basis.rows(), &[vec![1, 1], vec![0, 2]]);
        assert_eq!(basis.pivots(), vec![(0, 1), (1, 2)]);
        assert_eq!(basis.contains(&[0, 2]).unwrap(), Some(vec![1, -1]));
        assert_eq!(basis.contains(&[1, 0]).unwrap(), None);
        assert_eq!(basis.contains(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn hnf_of_even_axes() {
        let basis = LatticeBasis::from_rows(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(basis.pivots(), vec![(0, 2), (1, 2)]);
        assert_eq!(basis.contains(&[4, -2]).unwrap(), Some(vec![2, -1]));
        assert_eq!(basis.contains(&[1, 1]).unwrap(), None);
    }

    #[test]
    fn inserting_a_member_does_not_grow_the_lattice() {
        let mut basis = LatticeBasis::from_rows(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        let rows_before = basis.rows().to_vec();
        assert!(!basis.insert(&[3, 1]).unwrap());
        assert_eq!(basis.rows(), &rows_before[..]);
        assert_eq!(basis.generators(), 3);
        // The new slot exists but is never used.
        assert_eq!(basis.contains(&[0, 2]).unwrap(), Some(vec![1, -1, 0]));
    }

    #[test]
    fn coefficients_reconstruct_the_vector() {
        let gens = [vec![3, 1, 0], vec![1, 2, 1], vec![0, 0, 4], vec![2, 2, 2]];
        let mut basis = LatticeBasis::new(3);
        for g in &gens {
            basis.insert(g).unwrap();
        }
        for v in [
            vec![3, 1, 0],
            vec![4, 3, 1],
            vec![6, 2, 0],
            vec![0, 0, 0],
            vec![-2, -4, 2],
            vec![7, 5, 9],
        ] {
            if let Some(coeffs) = basis.contains(&v).unwrap() {
                let mut acc = vec![0i64; 3];
                for (c, g) in coeffs.iter().zip(&gens) {
                    for (a, &x) in acc.iter_mut().zip(g) {
                        *a += c * x;
                    }
                }
                assert_eq!(acc, v);
            }
        }
        // Vectors outside rarely matter, but zero must always be inside.
        assert_eq!(basis.contains(&[0, 0, 0]).unwrap(), Some(vec![0; 4]));
    }

    #[test]
    fn hnf_entries_above_pivots_are_reduced() {
        let basis =
            LatticeBasis::from_rows(3, &[vec![2, 7, 3], vec![0, 5, 1], vec![0, 0, 9]]).unwrap();
        for (i, row) in basis.rows().iter().enumerate() {
            let (col, p) = basis.pivots()[i];
            assert!(p > 0);
            for above in basis.rows()[..i].iter() {
                assert!(
                    0 <= above[col] && above[col] < p,
                    "entry {} above pivot {p}",
                    above[col]
                );
            }
            assert!(row[..col].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn group_atom_in_klein_four() {
        let c = ctx("2,2", &[&[1, 1], &[1, 0], &[0, 1]]);
        let v = is_group_atom(&c, &MultVector(vec![1, 1, 1]), DEFAULT_NODE_CAP).unwrap();
        assert!(v.is_group_atom);
        assert!(v.witness.is_none());
        // The only shorter atoms are the three squares, all even.
        assert_eq!(v.generating_set_size, 3);
        let v = is_group_atom(&c, &MultVector(vec![2, 0, 0]), DEFAULT_NODE_CAP).unwrap();
        assert!(v.is_group_atom);
    }

    #[test]
    fn doubled_atom_is_not_a_group_atom() {
        let c = ctx("3", &[&[1]]);
        let v = is_group_atom(&c, &MultVector(vec![6]), DEFAULT_NODE_CAP).unwrap();
        assert!(!v.is_group_atom);
        assert_eq!(
            v.witness.unwrap(),
            vec![Term {
                coeff: 2,
                vector: MultVector(vec![3])
            }]
        );
    }

    #[test]
    fn long_atom_in_c12_c4_is_refuted() {
        let c = ctx("12,4", &[&[1, 0], &[1, 1], &[0, 1]]);
        let m = MultVector(vec![11, 1, 3]);
        assert!(c.is_atom(&m).unwrap());
        let v = is_group_atom(&c, &m, DEFAULT_NODE_CAP).unwrap();
        assert!(!v.is_group_atom);
        let witness = v.witness.unwrap();
        assert!(!witness.is_empty());
        for t in &witness {
            assert!(t.vector.length() < 15);
            assert!(c.is_zero_sum(&t.vector).unwrap());
        }
    }

    #[test]
    fn scaling_refutation_in_c12_c4() {
        let c = ctx("12,4", &[&[1, 0], &[1, 1], &[0, 1]]);
        let m = MultVector(vec![11, 1, 3]);
        let r = refute_by_scaling(&c, &m).unwrap();
        assert_eq!(r.ell, 7);
        assert_eq!(r.ell_hat, 7);
        assert_eq!(r.branch, 1);
        assert_eq!(r.scaled, MultVector(vec![5, 7, 1]));
        assert_eq!(
            r.terms,
            vec![
                Term {
                    coeff: 7,
                    vector: MultVector(vec![5, 7, 1])
                },
                Term {
                    coeff: -2,
                    vector: MultVector(vec![12, 0, 0])
                },
                Term {
                    coeff: -4,
                    vector: MultVector(vec![0, 12, 0])
                },
                Term {
                    coeff: -1,
                    vector: MultVector(vec![0, 0, 4])
                },
            ]
        );
    }

    #[test]
    fn scaling_refutation_preconditions() {
        let c = ctx("12,4", &[&[1, 0], &[1, 1], &[0, 1]]);
        // Too short: the bound is 12 + 4/2 = 14.
        let err = refute_by_scaling(&c, &MultVector(vec![12, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // Not an atom.
        let err = refute_by_scaling(&c, &MultVector(vec![11, 13, 0])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // Even context.
        let c2 = ctx("12,4", &[&[1, 0], &[1, 1]]);
        let err = refute_by_scaling(&c2, &MultVector(vec![1, 11])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // First elements must have maximal order.
        let c3 = ctx("12,4", &[&[6, 2], &[1, 1], &[0, 1]]);
        let err = refute_by_scaling(&c3, &MultVector(vec![1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn scaling_unit_values() {
        assert_eq!(find_scaling_unit(3, 2, 2).unwrap(), 5);
        assert_eq!(find_scaling_unit(4, 3, 3).unwrap(), 7);
        assert_eq!(find_scaling_unit(1, 7, 5).unwrap(), 1);
        assert_eq!(find_scaling_unit(1, 1, 1).unwrap(), 1);
        assert!(matches!(
            find_scaling_unit(4, 2, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn scaling_unit_postconditions_exhaustively() {
        for alpha in 1..=8u64 {
            for gamma in 1..=8u64 {
                for beta in 1..=20u64 {
                    if arith::gcd(alpha, beta) != 1 {
                        continue;
                    }
                    let ell = find_scaling_unit(alpha, beta, gamma).unwrap();
                    let modulus = alpha * gamma;
                    assert!(ell >= 1);
                    assert!(modulus == 1 || ell < modulus);
                    assert_eq!(arith::gcd(ell, modulus), 1);
                    if alpha > 1 {
                        assert_eq!(ell * beta % alpha, 1 % alpha);
                    }
                }
            }
        }
    }

    #[test]
    fn divisibility_certificate_on_klein_four() {
        let c = ctx("2,2", &[&[1, 1], &[1, 0], &[0, 1]]);
        let m = MultVector(vec![1, 1, 1]);
        let cert = certify_by_divisibility(&c, &m, 1, 2, DEFAULT_NODE_CAP).unwrap();
        assert!(cert.holds);
        assert!(cert.sub_support_entries_divisible);
        assert!(cert.target_entry_indivisible);
        assert!(cert.full_support_not_shorter);
        // A divisor that misses the sub-support atoms fails condition one.
        let cert = certify_by_divisibility(&c, &m, 1, 3, DEFAULT_NODE_CAP).unwrap();
        assert!(!cert.holds);
        assert!(!cert.sub_support_entries_divisible);
        // Preconditions.
        assert!(
            certify_by_divisibility(&c, &MultVector(vec![2, 0, 0]), 0, 2, DEFAULT_NODE_CAP)
                .is_err()
        );
        assert!(certify_by_divisibility(&c, &m, 5, 2, DEFAULT_NODE_CAP).is_err());
    }

    #[test]
    fn certificate_fails_when_a_shorter_full_support_atom_exists() {
        // Over ((1,1),(1,0),(0,1)) in C4xC2 the full-support atoms [1,3,1]
        // and [3,1,1] have length 5, undercutting the zero-sum [2,2,2].
        let c = ctx("4,2", &[&[1, 1], &[1, 0], &[0, 1]]);
        let m = MultVector(vec![2, 2, 2]);
        assert!(c.is_zero_sum(&m).unwrap());
        let cert = certify_by_divisibility(&c, &m, 1, 2, DEFAULT_NODE_CAP).unwrap();
        assert!(!cert.full_support_not_shorter);
        assert!(!cert.holds);
    }
}
