//! Weyl groups of classical type as signed permutations, with deterministic
//! restartable enumeration and chamber computation.
//!
//! An element acts as `w(ε_i) = φ_i ε_{σ(i)}`. Family A has no signs, B and C
//! allow arbitrary signs, D constrains the product of signs to +1. Elements
//! are enumerated in lexicographic order: primary key the one-line form of σ,
//! secondary key the sign vector with `+` before `-`. The enumeration is
//! indexed, so any contiguous block can be consumed independently.

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem, RootVec};

/// A Weyl group element as permutation plus sign vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    family: Family,
    /// 0-based images: σ maps coordinate i to coordinate sigma[i].
    sigma: Vec<usize>,
    /// Signs φ_i ∈ {+1, −1}; all +1 for family A.
    phi: Vec<i8>,
}

impl SignedPerm {
    pub fn new(family: Family, sigma: Vec<usize>, phi: Vec<i8>) -> Result<Self> {
        let m = sigma.len();
        let bad = |reason: String| Error::InvalidPerm { reason };
        if phi.len() != m {
            return Err(bad(format!("{} signs for {} letters", phi.len(), m)));
        }
        let mut seen = vec![false; m];
        for &s in &sigma {
            if s >= m || seen[s] {
                return Err(bad("sigma is not a permutation".into()));
            }
            seen[s] = true;
        }
        if phi.iter().any(|&s| s != 1 && s != -1) {
            return Err(bad("signs must be +1 or -1".into()));
        }
        match family {
            Family::A => {
                if phi.iter().any(|&s| s != 1) {
                    return Err(bad("family A admits no sign flips".into()));
                }
            }
            Family::D => {
                if phi.iter().product::<i8>() != 1 {
                    return Err(bad("family D requires an even number of sign flips".into()));
                }
            }
            Family::B | Family::C => {}
        }
        Ok(SignedPerm { family, sigma, phi })
    }

    pub fn identity(family: Family, m: usize) -> Self {
        SignedPerm {
            family,
            sigma: (0..m).collect(),
            phi: vec![1; m],
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of letters (n+1 for A_n, n otherwise).
    pub fn letters(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn phi(&self) -> &[i8] {
        &self.phi
    }

    /// Applies the element to a vector in ε-coordinates.
    pub fn act(&self, a: &RootVec) -> RootVec {
        debug_assert_eq!(a.dim(), self.sigma.len());
        let mut out = vec![0i64; a.dim()];
        for (i, &c) in a.coords().iter().enumerate() {
            out[self.sigma[i]] = self.phi[i] as i64 * c;
        }
        RootVec::new(out)
    }

    /// One-line permutation text, 1-based: `"1 4 2 5 3"`.
    pub fn perm_text(&self) -> String {
        self.sigma
            .iter()
            .map(|&s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Sign text like `"++-+"`; empty for family A.
    pub fn signs_text(&self) -> String {
        if self.family == Family::A {
            return String::new();
        }
        self.phi
            .iter()
            .map(|&s| if s == 1 { '+' } else { '-' })
            .collect()
    }

    /// Parses the textual encoding produced by `perm_text`/`signs_text`.
    pub fn from_text(family: Family, perm: &str, signs: Option<&str>) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "signed permutation",
            input: format!("{perm} / {signs:?}"),
            reason,
        };
        let sigma: Vec<usize> = perm
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| err(e.to_string()))
                    .and_then(|v| v.checked_sub(1).ok_or_else(|| err("1-based".into())))
            })
            .collect::<Result<_>>()?;
        let phi = match signs {
            None | Some("") => vec![1; sigma.len()],
            Some(s) => s
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(err(format!("bad sign char {other:?}"))),
                })
                .collect::<Result<_>>()?,
        };
        SignedPerm::new(family, sigma, phi)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm_text())?;
        let s = self.signs_text();
        if !s.is_empty() {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// Order of the Weyl group.
pub fn group_order(family: Family, rank: usize) -> u64 {
    let m = family.ambient_dim(rank) as u64;
    let fact: u64 = (1..=m).product();
    match family {
        Family::A => fact,
        Family::B | Family::C => fact << rank,
        Family::D => fact << (rank - 1),
    }
}

/// Indexed enumerator over the Weyl group of a classical family.
#[derive(Debug, Clone)]
pub struct WeylEnumerator {
    family: Family,
    letters: usize,
    sign_count: u64,
    order: u64,
    /// Factorials 0!..letters!
    factorial: Vec<u64>,
}

impl WeylEnumerator {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 || (family == Family::D && rank < 3) {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                reason: "no Weyl group at this rank",
            });
        }
        let letters = family.ambient_dim(rank);
        if letters > 16 {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                reason: "enumeration supports at most 16 letters",
            });
        }
        let sign_count = match family {
            Family::A => 1u64,
            Family::B | Family::C => 1 << rank,
            Family::D => 1 << (rank - 1),
        };
        let mut factorial = vec![1u64; letters + 1];
        for i in 1..=letters {
            factorial[i] = factorial[i - 1] * i as u64;
        }
        Ok(WeylEnumerator {
            family,
            letters,
            sign_count,
            order: factorial[letters] * sign_count,
            factorial,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    /// Decodes an index in `[0, order)` into σ and φ without allocating.
    pub fn unrank_into(&self, index: u64, sigma: &mut [usize], phi: &mut [i8]) {
        debug_assert!(index < self.order);
        debug_assert_eq!(sigma.len(), self.letters);
        debug_assert_eq!(phi.len(), self.letters);

        let perm_rank = index / self.sign_count;
        let sign_rank = index % self.sign_count;

        // Lexicographic permutation unranking via the factorial number system.
        // `avail` tracks the still-unused letters in ascending order.
        let m = self.letters;
        let mut avail: [usize; 16] = [0; 16];
        for (i, a) in avail.iter_mut().enumerate().take(m) {
            *a = i;
        }
        let mut rem = perm_rank;
        for (pos, slot) in sigma.iter_mut().enumerate() {
            let f = self.factorial[m - 1 - pos];
            let digit = (rem / f) as usize;
            rem %= f;
            *slot = avail[digit];
            avail.copy_within(digit + 1..m, digit);
        }

        match self.family {
            Family::A => phi.fill(1),
            Family::B | Family::C => {
                for (i, s) in phi.iter_mut().enumerate() {
                    // Most significant bit is φ_1 so ascending index is
                    // ascending lexicographic sign order with + < -.
                    let bit = (sign_rank >> (m - 1 - i)) & 1;
                    *s = if bit == 0 { 1 } else { -1 };
                }
            }
            Family::D => {
                let mut minus = 0u32;
                for (i, s) in phi.iter_mut().take(m - 1).enumerate() {
                    let bit = (sign_rank >> (m - 2 - i)) & 1;
                    *s = if bit == 0 { 1 } else { -1 };
                    minus += bit as u32;
                }
                // Last sign restores even parity; lexicographic order on the
                // full vector equals order on the free prefix.
                phi[m - 1] = if minus.is_multiple_of(2) { 1 } else { -1 };
            }
        }
    }

    pub fn unrank(&self, index: u64) -> SignedPerm {
        let mut sigma = vec![0usize; self.letters];
        let mut phi = vec![0i8; self.letters];
        self.unrank_into(index, &mut sigma, &mut phi);
        SignedPerm {
            family: self.family,
            sigma,
            phi,
        }
    }

    /// Index of an element in the enumeration order.
    pub fn rank_of(&self, w: &SignedPerm) -> u64 {
        let m = self.letters;
        let mut perm_rank = 0u64;
        let mut used = vec![false; m];
        for pos in 0..m {
            let s = w.sigma[pos];
            let smaller = (0..s).filter(|&t| !used[t]).count() as u64;
            perm_rank += smaller * self.factorial[m - 1 - pos];
            used[s] = true;
        }
        let sign_rank = match self.family {
            Family::A => 0u64,
            Family::B | Family::C => {
                let mut r = 0u64;
                for i in 0..m {
                    r = (r << 1) | u64::from(w.phi[i] == -1);
                }
                r
            }
            Family::D => {
                let mut r = 0u64;
                for i in 0..m - 1 {
                    r = (r << 1) | u64::from(w.phi[i] == -1);
                }
                r
            }
        };
        perm_rank * self.sign_count + sign_rank
    }

    /// Streams the whole group in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = SignedPerm> + '_ {
        self.range(0, self.order)
    }

    /// Streams the contiguous index block `[start, end)`.
    pub fn range(&self, start: u64, end: u64) -> impl Iterator<Item = SignedPerm> + '_ {
        (start..end.min(self.order)).map(move |i| self.unrank(i))
    }
}

/// Enumerates the Weyl group of `family` at `rank` in the documented order.
pub fn enumerate(family: Family, rank: usize) -> Result<impl Iterator<Item = SignedPerm>> {
    let e = WeylEnumerator::new(family, rank)?;
    let order = e.order();
    Ok((0..order).map(move |i| e.unrank(i)))
}

/// A positive system as a membership set over the canonical root order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveSystem {
    members: BitSet,
}

impl PositiveSystem {
    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, root_idx: usize) -> bool {
        self.members.contains(root_idx)
    }

    pub fn count(&self) -> usize {
        self.members.count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }
}

/// The chamber `w(R_o⁺)` of a Weyl element.
pub fn chamber(w: &SignedPerm, rs: &RootSystem) -> PositiveSystem {
    let mut members = BitSet::new(rs.num_roots());
    for alpha in rs.base_positive_roots() {
        let image = w.act(alpha);
        let idx = rs
            .index_of(&image)
            .expect("Weyl action permutes the root set");
        members.set(idx);
    }
    PositiveSystem { members }
}

/// A regular dominant representative for the chamber: the sum of its roots.
///
/// Pairs strictly positively with every chamber root.
pub fn chamber_to_z(ps: &PositiveSystem, rs: &RootSystem) -> Vec<i64> {
    let mut z = vec![0i64; rs.ambient_dim()];
    for i in ps.ones() {
        for (k, &c) in rs.root(i).coords().iter().enumerate() {
            z[k] += c;
        }
    }
    z
}
