//! Classical inner real forms: the catalog of inner symmetric pairs, the
//! compact/noncompact root split each one induces, admissible Cartan
//! elements, and the catalog of one-dimensional-center isotropy cases.

use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, Family, RootSystem, RootVec};

/// A classical inner real form (one parameterized row of the catalog).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum RealForm {
    /// su(p,q), p ≥ q ≥ 1; root system A with rank p+q−1.
    Su { p: usize, q: usize },
    /// so(2p+1,2q), p ≥ 0, q ≥ 1; root system B with rank p+q.
    SoOddEven { p: usize, q: usize },
    /// sp(n,ℝ); root system C with rank n. The maximal compact is u(n).
    SpR { n: usize },
    /// sp(p,q), p,q ≥ 1; root system C with rank p+q.
    Sp { p: usize, q: usize },
    /// so*(2n), n ≥ 3; root system D with rank n. The maximal compact is u(n).
    SoStar { n: usize },
    /// so(2p,2q), p,q ≥ 1, p+q ≥ 3; root system D with rank p+q.
    SoEvenEven { p: usize, q: usize },
}

impl RealForm {
    pub fn family(self) -> Family {
        match self {
            RealForm::Su { .. } => Family::A,
            RealForm::SoOddEven { .. } => Family::B,
            RealForm::SpR { .. } | RealForm::Sp { .. } => Family::C,
            RealForm::SoStar { .. } | RealForm::SoEvenEven { .. } => Family::D,
        }
    }

    /// Rank of the ambient complex root system.
    pub fn rank(self) -> usize {
        match self {
            RealForm::Su { p, q } => p + q - 1,
            RealForm::SoOddEven { p, q } => p + q,
            RealForm::SpR { n } => n,
            RealForm::Sp { p, q } => p + q,
            RealForm::SoStar { n } => n,
            RealForm::SoEvenEven { p, q } => p + q,
        }
    }

    /// Size of the first coordinate block where the split is block-defined.
    fn block(self) -> Option<usize> {
        match self {
            RealForm::Su { p, .. }
            | RealForm::SoOddEven { p, .. }
            | RealForm::Sp { p, .. }
            | RealForm::SoEvenEven { p, .. } => Some(p),
            RealForm::SpR { .. } | RealForm::SoStar { .. } => None,
        }
    }

    /// Checks the catalog's parameter constraints.
    pub fn validate(self) -> Result<()> {
        let bad = |reason: String| Error::InvalidForm {
            name: self.to_string(),
            reason,
        };
        match self {
            RealForm::Su { p, q } => {
                if q < 1 || p < q {
                    return Err(bad("su(p,q) requires p >= q >= 1".into()));
                }
            }
            RealForm::SoOddEven { q, .. } => {
                if q < 1 {
                    return Err(bad("so(2p+1,2q) requires q >= 1".into()));
                }
            }
            RealForm::SpR { n } => {
                if n < 1 {
                    return Err(bad("sp(n,R) requires n >= 1".into()));
                }
            }
            RealForm::Sp { p, q } => {
                if p < 1 || q < 1 {
                    return Err(bad("sp(p,q) requires p,q >= 1".into()));
                }
            }
            RealForm::SoStar { n } => {
                if n < 3 {
                    return Err(bad("so*(2n) requires n >= 3".into()));
                }
            }
            RealForm::SoEvenEven { p, q } => {
                if p < 1 || q < 1 || p + q < 3 {
                    return Err(bad("so(2p,2q) requires p,q >= 1 and p+q >= 3".into()));
                }
            }
        }
        Ok(())
    }

    /// Name of the maximal compact subalgebra k.
    pub fn isotropy_name(self) -> String {
        match self {
            RealForm::Su { p, q } => format!("su({p})+su({q})+R"),
            RealForm::SoOddEven { p, q } => format!("so({})+so({})", 2 * p + 1, 2 * q),
            RealForm::SpR { n } => format!("su({n})+R"),
            RealForm::Sp { p, q } => format!("sp({p})+sp({q})"),
            RealForm::SoStar { n } => format!("su({n})+R"),
            RealForm::SoEvenEven { p, q } => format!("so({})+so({})", 2 * p, 2 * q),
        }
    }

    /// Whether a root with the given coordinates is compact for this form.
    pub fn is_compact(self, coords: &[i64]) -> bool {
        let mut it = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c));
        let a = it.next().expect("a root has nonzero support");
        let b = it.next();
        debug_assert!(it.next().is_none(), "classical roots have support <= 2");
        self.is_compact_support(a, b)
    }

    /// Compactness decided from the root's support: the one or two
    /// `(index, coefficient)` pairs of its nonzero coordinates.
    ///
    /// Either the supporting indices lie on the same side of the block
    /// boundary, or (for the u(n) forms) the root must be a difference
    /// `ε_i − ε_j`.
    pub fn is_compact_support(self, a: (usize, i64), b: Option<(usize, i64)>) -> bool {
        match self {
            RealForm::SpR { .. } | RealForm::SoStar { .. } => {
                // Compact roots of u(n) are exactly the differences ε_i − ε_j.
                matches!(b, Some((_, cb)) if a.1 * cb < 0)
            }
            RealForm::Sp { .. } if b.is_none() => true, // ±2ε_i stays in its block
            _ => {
                let p = self.block().expect("block-split form");
                match b {
                    // ±ε_i short root of B: compact iff in the first block.
                    None => a.0 < p,
                    Some((j, _)) => (a.0 < p) == (j < p),
                }
            }
        }
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RealForm::Su { p, q } => write!(f, "su({p},{q})"),
            RealForm::SoOddEven { p, q } => write!(f, "so({},{})", 2 * p + 1, 2 * q),
            RealForm::SpR { n } => write!(f, "sp({n},R)"),
            RealForm::Sp { p, q } => write!(f, "sp({p},{q})"),
            RealForm::SoStar { n } => write!(f, "so*({})", 2 * n),
            RealForm::SoEvenEven { p, q } => write!(f, "so({},{})", 2 * p, 2 * q),
        }
    }
}

impl FromStr for RealForm {
    type Err = Error;

    /// Parses selectors like `su:3,2`, `so:3,2`, `so:4,2`, `sp:2`, `sp:1,1`,
    /// `so*:6` (also spelled `sostar:6`).
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "real form",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, params) = s.split_once(':').ok_or_else(|| err("expected KIND:PARAMS"))?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| err(&format!("bad integer parameter: {e}")))?;
        let form = match (kind.trim().to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("su", [p, q]) => RealForm::Su { p: *p, q: *q },
            ("so", [a, b]) => match (a % 2, b % 2) {
                (0, 0) => RealForm::SoEvenEven { p: a / 2, q: b / 2 },
                (1, 0) => RealForm::SoOddEven { p: (a - 1) / 2, q: b / 2 },
                (0, 1) => RealForm::SoOddEven { p: (b - 1) / 2, q: a / 2 },
                _ => return Err(err("so(odd,odd) is not an inner form")),
            },
            ("sp", [n]) => RealForm::SpR { n: *n },
            ("sp", [p, q]) => RealForm::Sp { p: *p, q: *q },
            ("so*" | "sostar", [m]) => {
                if m % 2 != 0 {
                    return Err(err("so*(m) needs m even"));
                }
                RealForm::SoStar { n: m / 2 }
            }
            _ => return Err(err("unknown form selector")),
        };
        form.validate()?;
        Ok(form)
    }
}

/// All classical catalog rows with rank ≤ `max_rank`, each parameter
/// combination once, in a fixed row-major order.
pub fn catalog(max_rank: usize) -> Vec<RealForm> {
    let mut out = Vec::new();
    for t in 2..=max_rank + 1 {
        for q in (1..=t / 2).rev() {
            out.push(RealForm::Su { p: t - q, q });
        }
    }
    for t in 1..=max_rank {
        for p in 0..t {
            out.push(RealForm::SoOddEven { p, q: t - p });
        }
    }
    for n in 1..=max_rank {
        out.push(RealForm::SpR { n });
    }
    for t in 2..=max_rank {
        for p in 1..t {
            out.push(RealForm::Sp { p, q: t - p });
        }
    }
    for n in 3..=max_rank {
        out.push(RealForm::SoStar { n });
    }
    for t in 3..=max_rank {
        for p in 1..t {
            out.push(RealForm::SoEvenEven { p, q: t - p });
        }
    }
    debug_assert!(out.iter().all(|f| f.validate().is_ok()));
    out
}

/// A root system together with the compact-root membership set of a form.
#[derive(Debug, Clone)]
pub struct RealFormSplit {
    form: RealForm,
    rs: RootSystem,
    compact: BitSet,
}

/// Marks the compact roots of `form` inside `rs`.
pub fn split(rs: RootSystem, form: RealForm) -> Result<RealFormSplit> {
    form.validate()?;
    if rs.family() != form.family() || rs.rank() != form.rank() {
        return Err(Error::FormSystemMismatch {
            form: form.to_string(),
            family: rs.family().letter(),
            rank: rs.rank(),
        });
    }
    let mut compact = BitSet::new(rs.num_roots());
    for (i, r) in rs.roots().iter().enumerate() {
        if form.is_compact(r.coords()) {
            compact.set(i);
        }
    }
    Ok(RealFormSplit { form, rs, compact })
}

impl RealFormSplit {
    /// Builds the root system for `form` and splits it.
    pub fn build(form: RealForm) -> Result<Self> {
        form.validate()?;
        let rs = build_root_system(form.family(), form.rank())?;
        split(rs, form)
    }

    pub fn form(&self) -> RealForm {
        self.form
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn compact(&self) -> &BitSet {
        &self.compact
    }

    #[inline]
    pub fn is_compact(&self, root_idx: usize) -> bool {
        self.compact.contains(root_idx)
    }

    pub fn compact_count(&self) -> usize {
        self.compact.count()
    }

    pub fn noncompact_count(&self) -> usize {
        self.rs.num_roots() - self.compact.count()
    }
}

/// A Cartan element whose vanishing roots are all compact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleElement {
    z: Vec<i64>,
    vanishing: BitSet,
}

/// Checks admissibility of `z`: every root vanishing on it must be compact.
///
/// A regular `z` (empty vanishing set) models torus isotropy.
pub fn admissibility(z: &[i64], sp: &RealFormSplit) -> Result<AdmissibleElement> {
    let rs = sp.root_system();
    if z.len() != rs.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: z.len(),
            right: rs.ambient_dim(),
        });
    }
    let mut vanishing = BitSet::new(rs.num_roots());
    for (i, r) in rs.roots().iter().enumerate() {
        if r.eval(z) == 0 {
            if !sp.is_compact(i) {
                return Err(Error::NotAdmissible {
                    root: r.to_string(),
                });
            }
            vanishing.set(i);
        }
    }
    Ok(AdmissibleElement {
        z: z.to_vec(),
        vanishing,
    })
}

impl AdmissibleElement {
    pub fn z(&self) -> &[i64] {
        &self.z
    }

    pub fn vanishing(&self) -> &BitSet {
        &self.vanishing
    }

    /// Whether the isotropy is a maximal torus.
    pub fn is_regular(&self) -> bool {
        self.vanishing.is_empty()
    }

    /// Roots of R_m = R minus the isotropy subsystem.
    pub fn in_moduli(&self, root_idx: usize) -> bool {
        !self.vanishing.contains(root_idx)
    }

    /// Dimension of the center of the isotropy subalgebra: the Cartan rank
    /// minus the rank of the span of the vanishing roots.
    pub fn center_dim(&self, sp: &RealFormSplit) -> usize {
        let rs = sp.root_system();
        let rows: Vec<Vec<i128>> = self
            .vanishing
            .ones()
            .map(|i| rs.root(i).coords().iter().map(|&c| c as i128).collect())
            .collect();
        rs.rank() - int_rank(rows)
    }
}

/// Rank of a small integer matrix, fraction-free elimination.
fn int_rank(mut rows: Vec<Vec<i128>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = prow[col];
        for row in tail {
            if row[col] != 0 {
                let f = row[col];
                for c in 0..cols {
                    row[c] = row[c] * p - prow[c] * f;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Which isotropy variant a one-dimensional-center catalog entry encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Table2Variant {
    /// so(2p+1,2q) with l = R + so(2p+1) + su(q)
    SoOddUq,
    /// sp(p,q) with l = R + su(p) + sp(q)
    SpUp,
    /// sp(p,q) with l = R + sp(p) + su(q)
    SpUq,
    /// so(2p,2q) with l = R + su(p) + so(2q)
    SoEvenUp,
    /// so(2p,2q) with l = R + so(2p) + su(q)
    SoEvenUq,
}

/// One row instance of the one-dimensional-center isotropy catalog.
#[derive(Debug, Clone)]
pub struct Table2Entry {
    pub form: RealForm,
    pub variant: Table2Variant,
    /// Rendered isotropy subalgebra, e.g. `R+su(2)+so(2)`.
    pub isotropy: String,
    pub split: RealFormSplit,
    pub z: AdmissibleElement,
}

impl Table2Entry {
    fn new(form: RealForm, variant: Table2Variant, isotropy: String, z: Vec<i64>) -> Result<Self> {
        let split = RealFormSplit::build(form)?;
        let z = admissibility(&z, &split)?;
        Ok(Table2Entry {
            form,
            variant,
            isotropy,
            split,
            z,
        })
    }
}

/// Builds the one-dimensional-center catalog up to `max_rank`.
///
/// Each entry's `z` is the 0/1 indicator of the u-factor block. Admissibility
/// is verified computationally entry by entry; a failure (none exists for the
/// classical rows) is reported as an error naming the offending combination.
pub fn table2_catalog(max_rank: usize) -> Result<Vec<Table2Entry>> {
    let mut out = Vec::new();
    let ones_then_zeros = |p: usize, q: usize| {
        let mut z = vec![1i64; p];
        z.extend(std::iter::repeat_n(0, q));
        z
    };
    let zeros_then_ones = |p: usize, q: usize| {
        let mut z = vec![0i64; p];
        z.extend(std::iter::repeat_n(1, q));
        z
    };

    for t in 1..=max_rank {
        for p in 0..t {
            let q = t - p;
            let form = RealForm::SoOddEven { p, q };
            out.push(Table2Entry::new(
                form,
                Table2Variant::SoOddUq,
                format!("R+so({})+su({q})", 2 * p + 1),
                zeros_then_ones(p, q),
            )?);
        }
    }
    for t in 2..=max_rank {
        for p in 1..t {
            let q = t - p;
            let form = RealForm::Sp { p, q };
            out.push(Table2Entry::new(
                form,
                Table2Variant::SpUp,
                format!("R+su({p})+sp({q})"),
                ones_then_zeros(p, q),
            )?);
            out.push(Table2Entry::new(
                form,
                Table2Variant::SpUq,
                format!("R+sp({p})+su({q})"),
                zeros_then_ones(p, q),
            )?);
        }
    }
    for t in 3..=max_rank {
        for p in 1..t {
            let q = t - p;
            let form = RealForm::SoEvenEven { p, q };
            out.push(Table2Entry::new(
                form,
                Table2Variant::SoEvenUp,
                format!("R+su({p})+so({})", 2 * q),
                ones_then_zeros(p, q),
            )?);
            out.push(Table2Entry::new(
                form,
                Table2Variant::SoEvenUq,
                format!("R+so({})+su({q})", 2 * p),
                zeros_then_ones(p, q),
            )?);
        }
    }
    Ok(out)
}

/// Convenience: evaluate a root index of the split's system on z.
pub fn eval_root(sp: &RealFormSplit, root_idx: usize, z: &AdmissibleElement) -> i64 {
    sp.root_system().root(root_idx).eval(z.z())
}

#[allow(dead_code)]
fn root_vec_of(sp: &RealFormSplit, idx: usize) -> &RootVec {
    sp.root_system().root(idx)
}
