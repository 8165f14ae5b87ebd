//! Classical root systems A/B/C/D in ε-coordinates, exact integer arithmetic.
//!
//! Roots are integer coordinate vectors: `A_n` lives in `n+1` coordinates
//! (all roots sum to zero; the all-ones vector is the only relation), the
//! other families in `n` coordinates. The full root list is kept in a fixed
//! lexicographic order so that every membership set downstream is a plain
//! bit-vector indexing into it.

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Classical family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    /// Ambient coordinate dimension for the given rank.
    pub fn ambient_dim(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            _ => rank,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A root (or weight) as an integer vector in ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec {
    coords: Vec<i64>,
}

impl RootVec {
    pub fn new(coords: Vec<i64>) -> Self {
        RootVec { coords }
    }

    /// `c·ε_i` in `dim` coordinates.
    pub fn unit(dim: usize, i: usize, c: i64) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = c;
        RootVec { coords }
    }

    /// `ci·ε_i + cj·ε_j` in `dim` coordinates.
    pub fn pair(dim: usize, i: usize, ci: i64, j: usize, cj: i64) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = ci;
        coords[j] = cj;
        RootVec { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn negated(&self) -> RootVec {
        RootVec {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn sum_with(&self, other: &RootVec) -> RootVec {
        debug_assert_eq!(self.dim(), other.dim());
        RootVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Evaluation `α(z)` of the root on a Cartan element in ε-coordinates;
    /// identical to the Euclidean pairing.
    pub fn eval(&self, z: &[i64]) -> i64 {
        debug_assert_eq!(self.dim(), z.len());
        self.coords.iter().zip(z).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for RootVec {
    /// Renders like `e1-e2`, `e1+e2`, `2e1`, `-e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                write!(f, "+")?;
            }
            match c {
                1 => {}
                -1 => write!(f, "-")?,
                _ => write!(f, "{c}")?,
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Euclidean pairing of two ε-coordinate vectors.
pub fn inner(a: &RootVec, b: &RootVec) -> Result<i64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.eval(b.coords()))
}

/// A full classical root system with its standard positive system marked.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    /// All roots, sorted lexicographically by coordinates.
    roots: Vec<RootVec>,
    /// Index of the standard positive system `R_o⁺` into `roots`.
    base_positive: BitSet,
    /// `negation[i]` is the index of `-roots[i]`.
    negation: Vec<usize>,
    /// `sum_table[i * n + j]` is the index of `roots[i] + roots[j]` when that
    /// sum is again a root.
    sum_table: Vec<Option<u16>>,
}

/// Builds the root system of the given family and rank.
///
/// `D` requires rank ≥ 3; the other families accept any rank ≥ 1.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    if rank == 0 {
        return Err(Error::InvalidRank {
            family: family.letter(),
            rank,
            reason: "rank must be at least 1",
        });
    }
    if family == Family::D && rank < 3 {
        return Err(Error::InvalidRank {
            family: family.letter(),
            rank,
            reason: "family D needs rank at least 3",
        });
    }

    let dim = family.ambient_dim(rank);
    let mut positive: Vec<RootVec> = Vec::new();
    match family {
        Family::A => {
            for i in 0..dim {
                for j in i + 1..dim {
                    positive.push(RootVec::pair(dim, i, 1, j, -1));
                }
            }
        }
        Family::B => {
            for i in 0..dim {
                positive.push(RootVec::unit(dim, i, 1));
                for j in i + 1..dim {
                    positive.push(RootVec::pair(dim, i, 1, j, -1));
                    positive.push(RootVec::pair(dim, i, 1, j, 1));
                }
            }
        }
        Family::C => {
            for i in 0..dim {
                positive.push(RootVec::unit(dim, i, 2));
                for j in i + 1..dim {
                    positive.push(RootVec::pair(dim, i, 1, j, -1));
                    positive.push(RootVec::pair(dim, i, 1, j, 1));
                }
            }
        }
        Family::D => {
            for i in 0..dim {
                for j in i + 1..dim {
                    positive.push(RootVec::pair(dim, i, 1, j, -1));
                    positive.push(RootVec::pair(dim, i, 1, j, 1));
                }
            }
        }
    }

    let mut roots: Vec<RootVec> = positive.iter().map(RootVec::negated).collect();
    roots.extend(positive.iter().cloned());
    roots.sort();

    let mut base_positive = BitSet::new(roots.len());
    for p in &positive {
        let idx = roots.binary_search(p).expect("positive root is in the list");
        base_positive.set(idx);
    }

    let negation: Vec<usize> = roots
        .iter()
        .map(|r| {
            roots
                .binary_search(&r.negated())
                .expect("root set is symmetric")
        })
        .collect();

    let n = roots.len();
    let mut sum_table = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            let s = roots[i].sum_with(&roots[j]);
            if let Ok(k) = roots.binary_search(&s) {
                sum_table[i * n + j] = Some(k as u16);
            }
        }
    }

    Ok(RootSystem {
        family,
        rank,
        ambient_dim: dim,
        roots,
        base_positive,
        negation,
        sum_table,
    })
}

impl RootSystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, idx: usize) -> &RootVec {
        &self.roots[idx]
    }

    /// Index of `-roots[idx]`.
    pub fn negation_of(&self, idx: usize) -> usize {
        self.negation[idx]
    }

    /// Membership set of the standard positive system `R_o⁺`.
    pub fn base_positive(&self) -> &BitSet {
        &self.base_positive
    }

    pub fn base_positive_roots(&self) -> impl Iterator<Item = &RootVec> + '_ {
        self.base_positive.ones().map(move |i| &self.roots[i])
    }

    /// Canonical index of a coordinate vector, if it is a root.
    pub fn index_of(&self, v: &RootVec) -> Option<usize> {
        self.roots.binary_search(v).ok()
    }

    /// Index of `roots[i] + roots[j]` when the sum is a root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sum_table[i * self.roots.len() + j].map(|k| k as usize)
    }
}

/// `a + b` when both arguments and their sum are roots of `rs`.
pub fn add_root(a: &RootVec, b: &RootVec, rs: &RootSystem) -> Option<RootVec> {
    let i = rs.index_of(a)?;
    let j = rs.index_of(b)?;
    rs.sum_index(i, j).map(|k| rs.root(k).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(coords: &[i64]) -> RootVec {
        RootVec::new(coords.to_vec())
    }

    #[test]
    fn counts_match_standard_formulas() {
        for rank in 1..=12 {
            let a = build_root_system(Family::A, rank).unwrap();
            assert_eq!(a.num_roots(), rank * (rank + 1));
            assert_eq!(a.base_positive().count(), rank * (rank + 1) / 2);

            let b = build_root_system(Family::B, rank).unwrap();
            assert_eq!(b.num_roots(), 2 * rank * rank);
            assert_eq!(b.base_positive().count(), rank * rank);

            let c = build_root_system(Family::C, rank).unwrap();
            assert_eq!(c.num_roots(), 2 * rank * rank);

            if rank >= 3 {
                let d = build_root_system(Family::D, rank).unwrap();
                assert_eq!(d.num_roots(), 2 * rank * (rank - 1));
                assert_eq!(d.base_positive().count(), rank * (rank - 1));
            }
        }
    }

    #[test]
    fn low_rank_counts() {
        assert_eq!(build_root_system(Family::A, 2).unwrap().num_roots(), 6);
        assert_eq!(
            build_root_system(Family::A, 2).unwrap().base_positive().count(),
            3
        );
        assert_eq!(build_root_system(Family::B, 3).unwrap().num_roots(), 18);
        assert_eq!(
            build_root_system(Family::B, 3).unwrap().base_positive().count(),
            9
        );
        assert_eq!(build_root_system(Family::D, 3).unwrap().num_roots(), 12);
        assert_eq!(
            build_root_system(Family::D, 3).unwrap().base_positive().count(),
            6
        );
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(build_root_system(Family::D, 2).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
        assert!(build_root_system(Family::B, 0).is_err());
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&rv(&[1, -1, 0]), &rv(&[0, 1, -1])).unwrap(), -1);
        assert_eq!(inner(&rv(&[2, 0]), &rv(&[2, 0])).unwrap(), 4);
        assert_eq!(
            inner(&rv(&[1, 0, 0, -1]), &rv(&[0, 1, -1, 0])).unwrap(),
            0
        );
        assert!(matches!(
            inner(&rv(&[1, 0]), &rv(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inner_invariant_under_all_ones_shift_for_a() {
        // A-roots have zero coordinate sum, so shifting either argument by a
        // multiple of the all-ones vector cannot change the pairing.
        let rs = build_root_system(Family::A, 3).unwrap();
        let shift = RootVec::new(vec![5, 5, 5, 5]);
        for a in rs.roots() {
            for b in rs.roots() {
                let shifted = b.sum_with(&shift);
                assert_eq!(inner(a, b).unwrap(), inner(a, &shifted).unwrap());
            }
        }
    }

    #[test]
    fn add_root_examples() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert_eq!(
            add_root(&rv(&[1, -1, 0]), &rv(&[0, 1, -1]), &a2),
            Some(rv(&[1, 0, -1]))
        );
        assert_eq!(add_root(&rv(&[1, -1, 0]), &rv(&[1, 0, -1]), &a2), None);

        let b2 = build_root_system(Family::B, 2).unwrap();
        assert_eq!(add_root(&rv(&[1, 0]), &rv(&[1, 0]), &b2), None);
    }

    #[test]
    fn negation_and_inner_bounds() {
        for (family, rank) in [
            (Family::A, 4),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 4),
        ] {
            let rs = build_root_system(family, rank).unwrap();
            for (i, r) in rs.roots().iter().enumerate() {
                let ni = rs.negation_of(i);
                assert_eq!(rs.root(ni), &r.negated());
                // α + (-α) = 0 is not a root.
                assert_eq!(rs.sum_index(i, ni), None);
            }
            for a in rs.roots() {
                let norm = inner(a, a).unwrap();
                for b in rs.roots() {
                    let p = inner(a, b).unwrap();
                    assert!((-4..=4).contains(&p));
                    assert!(p.abs() <= norm);
                }
            }
        }
    }

    #[test]
    fn base_positive_is_a_positive_system() {
        for (family, min_rank) in [
            (Family::A, 1),
            (Family::B, 1),
            (Family::C, 1),
            (Family::D, 3),
        ] {
            for rank in min_rank..=8 {
                let rs = build_root_system(family, rank).unwrap();
                let pos = rs.base_positive();
                for i in 0..rs.num_roots() {
                    assert!(pos.contains(i) != pos.contains(rs.negation_of(i)));
                }
                // Closure under addition within R.
                for i in pos.ones() {
                    for j in pos.ones() {
                        if let Some(k) = rs.sum_index(i, j) {
                            assert!(pos.contains(k), "{family:?}{rank} not closed");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(rv(&[1, -1, 0]).to_string(), "e1-e2");
        assert_eq!(rv(&[0, 1, 1]).to_string(), "e2+e3");
        assert_eq!(rv(&[2, 0]).to_string(), "2e1");
        assert_eq!(rv(&[0, -1]).to_string(), "-e2");
    }
}
