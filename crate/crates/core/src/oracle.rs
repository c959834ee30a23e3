//! Brute-force counts backing the parameter tables: maximal chains of
//! subsets (which number `n!`) and subspaces and complete flags of `GF(q)^n`
//! for prime `q` (which number Gaussian binomials and `[n]_q!`).
//!
//! Everything here enumerates explicitly. Subspaces are identified by the
//! reduced row echelon form of a spanning set, so distinct spans are counted
//! once no matter how they were reached.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};

pub const MAX_CHAIN_N: u32 = 8;
/// Largest `q^n` for subspace counts.
pub const SUBSPACE_SPACE_CAP: u64 = 1 << 16;
/// Largest `q^n` for flag counts.
pub const FLAG_SPACE_CAP: u64 = 1 << 12;
/// Upper limit on vectors tested during one enumeration.
pub const WORK_BUDGET: u64 = 1 << 20;

/// Validated `(n, q)` for the vector-space oracles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FlagCountRequest {
    pub n: u32,
    pub q: u32,
}

impl FlagCountRequest {
    pub fn new(n: u32, q: u32, space_cap: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::Infeasible(format!(
                "q = {q} is not prime; only prime fields are supported"
            )));
        }
        match (q as u64).checked_pow(n) {
            Some(size) if size <= space_cap => Ok(FlagCountRequest { n, q }),
            _ => Err(Error::Infeasible(format!(
                "{q}^{n} exceeds the enumeration cap {space_cap}"
            ))),
        }
    }

    fn space_size(self) -> u64 {
        (self.q as u64).pow(self.n)
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Number of chains `{} = S_0 < S_1 < ... < S_n = {1..n}` with `|S_i| = i`.
pub fn count_subset_chains(n: u32) -> Result<u64> {
    if n > MAX_CHAIN_N {
        return Err(Error::Infeasible(format!(
            "n = {n} exceeds the chain enumeration cap {MAX_CHAIN_N}"
        )));
    }
    fn extend(mask: u32, full: u32) -> u64 {
        if mask == full {
            return 1;
        }
        (0..32)
            .filter(|&x| full & (1 << x) != 0 && mask & (1 << x) == 0)
            .map(|x| extend(mask | (1 << x), full))
            .sum()
    }
    Ok(extend(0, (1u32 << n) - 1))
}

type Vector = Vec<u32>;
/// Reduced row echelon basis; rows ordered by pivot column.
type Subspace = Vec<Vector>;

struct Field {
    p: u32,
}

impl Field {
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    fn inv(&self, a: u32) -> u32 {
        // a^(p-2) mod p
        let mut result = 1u32;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn vector(&self, mut index: u64, n: u32) -> Vector {
        (0..n)
            .map(|_| {
                let digit = (index % self.p as u64) as u32;
                index /= self.p as u64;
                digit
            })
            .collect()
    }

    /// Row reduction to canonical form, dropping zero rows.
    fn rref(&self, mut rows: Vec<Vector>) -> Subspace {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let factor = row[col];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows
    }

    fn contains(&self, space: &Subspace, v: &Vector) -> bool {
        let mut v = v.clone();
        for row in space {
            let pivot = row
                .iter()
                .position(|&x| x != 0)
                .expect("rref rows are nonzero");
            let factor = v[pivot];
            if factor != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = self.sub(*x, self.mul(factor, r));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// All subspaces of dimension `dim(space) + 1` containing `space`.
    fn covers(
        &self,
        space: &Subspace,
        req: FlagCountRequest,
        work: &mut u64,
    ) -> Result<BTreeSet<Subspace>> {
        *work += req.space_size();
        if *work > WORK_BUDGET {
            return Err(Error::Infeasible(format!(
                "enumeration for n = {}, q = {} exceeds the work budget",
                req.n, req.q
            )));
        }
        let mut out = BTreeSet::new();
        for index in 1..req.space_size() {
            let v = self.vector(index, req.n);
            if !self.contains(space, &v) {
                let mut rows = space.clone();
                rows.push(v);
                out.insert(self.rref(rows));
            }
        }
        Ok(out)
    }
}

fn subspace_layers(req: FlagCountRequest, up_to: u32) -> Result<Vec<u64>> {
    let field = Field { p: req.q };
    let mut layer: BTreeSet<Subspace> = BTreeSet::from([Vec::new()]);
    let mut counts = vec![1u64];
    let mut work = 0;
    for _ in 0..up_to {
        let mut next = BTreeSet::new();
        for space in &layer {
            next.extend(field.covers(space, req, &mut work)?);
        }
        counts.push(next.len() as u64);
        layer = next;
    }
    Ok(counts)
}

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn count_subspaces(n: u32, k: u32, q: u32) -> Result<u64> {
    if k > n {
        return Err(Error::Infeasible(format!("k = {k} exceeds n = {n}")));
    }
    let req = FlagCountRequest::new(n, q, SUBSPACE_SPACE_CAP)?;
    Ok(subspace_layers(req, k)?[k as usize])
}

/// Total number of subspaces of `GF(q)^n`, summed over all dimensions.
pub fn count_all_subspaces(n: u32, q: u32) -> Result<u64> {
    let req = FlagCountRequest::new(n, q, SUBSPACE_SPACE_CAP)?;
    Ok(subspace_layers(req, n)?.iter().sum())
}

/// Number of chains `0 = V_0 < V_1 < ... < V_n = GF(q)^n` with `dim V_i = i`.
pub fn count_complete_flags(n: u32, q: u32) -> Result<u64> {
    let req = FlagCountRequest::new(n, q, FLAG_SPACE_CAP)?;
    let field = Field { p: req.q };

    fn walk(
        field: &Field,
        req: FlagCountRequest,
        space: &Subspace,
        found: &mut u64,
        work: &mut u64,
    ) -> Result<()> {
        if space.len() as u32 == req.n {
            *found += 1;
            return Ok(());
        }
        for next in field.covers(space, req, work)? {
            walk(field, req, &next, found, work)?;
        }
        Ok(())
    }

    let (mut found, mut work) = (0, 0);
    walk(&field, req, &Vec::new(), &mut found, &mut work)?;
    Ok(found)
}

/// JSON record for an oracle run; counts are decimal strings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleResult {
    pub kind: String,
    pub params: BTreeMap<String, u64>,
    pub count: String,
    /// The closed-form value the count is compared against.
    pub closed_form: String,
    pub agrees: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleQuery {
    Chains {
        n: u32,
    },
    Subspaces {
        n: u32,
        k: u32,
        q: u32,
    },
    Flags {
        n: u32,
        q: u32,
    },
    /// All subspaces, against the Galois number.
    Galois {
        n: u32,
        q: u32,
    },
}

/// Runs the enumeration and the matching closed form side by side.
pub fn run_oracle(query: OracleQuery) -> Result<OracleResult> {
    let (kind, params, count, closed): (&str, Vec<(&str, u32)>, u64, Rational) = match query {
        OracleQuery::Chains { n } => (
            "chains",
            vec![("n", n)],
            count_subset_chains(n)?,
            exactnum::factorial(n),
        ),
        OracleQuery::Subspaces { n, k, q } => (
            "subspaces",
            vec![("n", n), ("k", k), ("q", q)],
            count_subspaces(n, k, q)?,
            exactnum::gaussian_binomial(n, k, &Rational::from(q))?,
        ),
        OracleQuery::Flags { n, q } => (
            "flags",
            vec![("n", n), ("q", q)],
            count_complete_flags(n, q)?,
            exactnum::q_factorial(n, &Rational::from(q)),
        ),
        OracleQuery::Galois { n, q } => (
            "galois",
            vec![("n", n), ("q", q)],
            count_all_subspaces(n, q)?,
            exactnum::galois_number(n, &Rational::from(q))?,
        ),
    };
    Ok(OracleResult {
        kind: kind.to_string(),
        params: params
            .into_iter()
            .map(|(k, v)| (k.to_string(), v as u64))
            .collect(),
        count: count.to_string(),
        agrees: Rational::from(count) == closed,
        closed_form: closed.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_counts() {
        assert_eq!(count_subset_chains(0).unwrap(), 1);
        assert_eq!(count_subset_chains(3).unwrap(), 6);
        assert_eq!(count_subset_chains(5).unwrap(), 120);
        for n in 0..=7 {
            assert_eq!(
                Rational::from(count_subset_chains(n).unwrap()),
                exactnum::factorial(n)
            );
        }
        assert!(count_subset_chains(9).is_err());
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(count_subspaces(3, 0, 5).unwrap(), 1);
        assert_eq!(count_subspaces(4, 2, 2).unwrap(), 35);
        assert_eq!(count_subspaces(3, 1, 3).unwrap(), 13);
        for q in [2u32, 3] {
            for n in 0..=4 {
                for k in 0..=n {
                    assert_eq!(
                        Rational::from(count_subspaces(n, k, q).unwrap()),
                        exactnum::gaussian_binomial(n, k, &Rational::from(q)).unwrap(),
                        "n={n} k={k} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn galois_counts() {
        for n in 0..=4 {
            let total: u64 = (0..=n).map(|k| count_subspaces(n, k, 2).unwrap()).sum();
            assert_eq!(total, count_all_subspaces(n, 2).unwrap());
            assert_eq!(
                Rational::from(total),
                exactnum::galois_number(n, &Rational::from(2)).unwrap()
            );
        }
    }

    #[test]
    fn flag_counts() {
        assert_eq!(count_complete_flags(1, 7).unwrap(), 1);
        assert_eq!(count_complete_flags(2, 3).unwrap(), 4);
        assert_eq!(count_complete_flags(3, 2).unwrap(), 21);
        let expected = [1u64, 1, 3, 21, 315];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(count_complete_flags(n as u32, 2).unwrap(), e);
        }
        for n in 0..=3 {
            assert_eq!(
                Rational::from(count_complete_flags(n, 3).unwrap()),
                exactnum::q_factorial(n, &Rational::from(3))
            );
        }
    }

    #[test]
    fn caps_are_errors() {
        assert!(count_subspaces(2, 1, 4).is_err()); // not prime
        assert!(count_subspaces(17, 1, 2).is_err()); // 2^17 > 2^16
        assert!(count_complete_flags(13, 2).is_err()); // 2^13 > 2^12
        assert!(count_subspaces(2, 3, 2).is_err());
        assert!(count_complete_flags(12, 2).is_err()); // allowed size, too many flags
    }

    #[test]
    fn rref_is_canonical() {
        let f = Field { p: 3 };
        let a = f.rref(vec![vec![1, 2, 0], vec![0, 1, 1]]);
        let b = f.rref(vec![vec![1, 0, 1], vec![2, 1, 0], vec![1, 2, 0]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn oracle_json() {
        let r = run_oracle(OracleQuery::Flags { n: 3, q: 2 }).unwrap();
        assert!(r.agrees);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["kind"], "flags");
        assert_eq!(json["count"], "21");
        assert_eq!(json["params"]["q"], 2);
    }
}
