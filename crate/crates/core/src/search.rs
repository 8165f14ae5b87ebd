//! Exhaustive classification driver: sweeps every Weyl chamber of a form,
//! decides the Chern-Einstein sign per chamber, and aggregates a report.
//!
//! The sweep works in root-support form so the per-chamber hot loop touches
//! no heap: a chamber root is one or two `(index, sign)` pairs, its image
//! under a signed permutation is again such a pair, and compactness is a
//! block predicate on the support. Sharding splits the enumeration index
//! range into contiguous blocks; the merged report is independent of the
//! shard count because witnesses keep their global enumeration index.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::chern::LambdaSign;
use crate::error::{Error, Result};
use crate::realform::{RealForm, RealFormSplit};
use crate::rootsys::{Family, RootVec};
use crate::weyl::{group_order, SignedPerm, WeylEnumerator};

/// Sweep configuration.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Refuse sweeps above this rank unless raised explicitly.
    pub rank_cap: usize,
    /// Number of contiguous index blocks processed in parallel.
    pub shards: usize,
    /// Abort a chamber's sign scan on the first mixed-sign pair.
    pub early_exit: bool,
    /// Record per-chamber witnesses for solvable chambers.
    pub collect_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            rank_cap: 8,
            shards: 1,
            early_exit: true,
            collect_witnesses: true,
        }
    }
}

/// Chamber counts by verdict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCounts {
    pub pos: u64,
    pub zero: u64,
    pub neg: u64,
    pub none: u64,
}

impl SignCounts {
    pub fn total(&self) -> u64 {
        self.pos + self.zero + self.neg + self.none
    }

    fn bump(&mut self, sign: LambdaSign) {
        match sign {
            LambdaSign::Positive => self.pos += 1,
            LambdaSign::Zero => self.zero += 1,
            LambdaSign::Negative => self.neg += 1,
            LambdaSign::NoSolution => self.none += 1,
        }
    }
}

/// One solvable chamber: its element encoding, verdict and Koszul form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    #[serde(skip)]
    pub index: u64,
    pub perm: String,
    /// Empty for family A, which has no sign vector.
    pub signs: String,
    pub lambda_sign: LambdaSign,
    pub delta: Vec<i64>,
}

/// Aggregated sweep result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub form: String,
    pub rank: usize,
    pub weyl_order: u64,
    pub counts: SignCounts,
    pub witnesses: Vec<WitnessRecord>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub shards: usize,
}

impl ClassificationReport {
    /// Equality of everything a sweep determines (wall time and shard
    /// layout excluded).
    pub fn same_outcome(&self, other: &ClassificationReport) -> bool {
        self.form == other.form
            && self.rank == other.rank
            && self.weyl_order == other.weyl_order
            && self.counts == other.counts
            && self.witnesses == other.witnesses
    }
}

/// A root as its one or two nonzero coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// s·ε_i — the short roots of B.
    Single { i: usize, s: i8 },
    /// 2s·ε_i — the long roots of C.
    Double { i: usize, s: i8 },
    /// si·ε_i + sj·ε_j, i ≠ j.
    Pair { i: usize, si: i8, j: usize, sj: i8 },
}

impl Shape {
    fn of(r: &RootVec) -> Shape {
        let mut nz = r
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c));
        let (i, a) = nz.next().expect("nonzero root");
        match nz.next() {
            None if a.abs() == 2 => Shape::Double {
                i,
                s: (a / 2) as i8,
            },
            None => Shape::Single { i, s: a as i8 },
            Some((j, b)) => Shape::Pair {
                i,
                si: a as i8,
                j,
                sj: b as i8,
            },
        }
    }

    #[inline]
    fn image(self, sigma: &[usize], phi: &[i8]) -> Shape {
        match self {
            Shape::Single { i, s } => Shape::Single {
                i: sigma[i],
                s: s * phi[i],
            },
            Shape::Double { i, s } => Shape::Double {
                i: sigma[i],
                s: s * phi[i],
            },
            Shape::Pair { i, si, j, sj } => Shape::Pair {
                i: sigma[i],
                si: si * phi[i],
                j: sigma[j],
                sj: sj * phi[j],
            },
        }
    }

    #[inline]
    fn is_compact(self, form: RealForm) -> bool {
        match self {
            Shape::Single { i, s } => form.is_compact_support((i, s as i64), None),
            Shape::Double { i, s } => form.is_compact_support((i, 2 * s as i64), None),
            Shape::Pair { i, si, j, sj } => {
                form.is_compact_support((i, si as i64), Some((j, sj as i64)))
            }
        }
    }

    /// Adds k times this root to the accumulator.
    #[inline]
    fn accumulate(self, acc: &mut [i64], k: i64) {
        match self {
            Shape::Single { i, s } => acc[i] += k * s as i64,
            Shape::Double { i, s } => acc[i] += 2 * k * s as i64,
            Shape::Pair { i, si, j, sj } => {
                acc[i] += k * si as i64;
                acc[j] += k * sj as i64;
            }
        }
    }

    #[inline]
    fn inner_with(self, v: &[i64]) -> i64 {
        match self {
            Shape::Single { i, s } => s as i64 * v[i],
            Shape::Double { i, s } => 2 * s as i64 * v[i],
            Shape::Pair { i, si, j, sj } => si as i64 * v[i] + sj as i64 * v[j],
        }
    }
}

struct SweepCtx {
    form: RealForm,
    family: Family,
    letters: usize,
    enumerator: WeylEnumerator,
    base_shapes: Vec<Shape>,
    early_exit: bool,
    collect_witnesses: bool,
}

struct ShardOutput {
    counts: SignCounts,
    witnesses: Vec<WitnessRecord>,
    visited: u64,
}

fn sweep_range(ctx: &SweepCtx, start: u64, end: u64) -> ShardOutput {
    let m = ctx.letters;
    let mut sigma = vec![0usize; m];
    let mut phi = vec![0i8; m];
    let mut delta = vec![0i64; m];
    let mut images = vec![Shape::Single { i: 0, s: 1 }; ctx.base_shapes.len()];

    let mut out = ShardOutput {
        counts: SignCounts::default(),
        witnesses: Vec::new(),
        visited: 0,
    };

    for index in start..end {
        ctx.enumerator.unrank_into(index, &mut sigma, &mut phi);
        delta.fill(0);
        for (slot, &sh) in images.iter_mut().zip(&ctx.base_shapes) {
            let img = sh.image(&sigma, &phi);
            let k = if img.is_compact(ctx.form) { 2 } else { -2 };
            img.accumulate(&mut delta, k);
            *slot = img;
        }

        let zero = match ctx.family {
            Family::A => delta.windows(2).all(|w| w[0] == w[1]),
            _ => delta.iter().all(|&c| c == 0),
        };
        let verdict = if zero {
            LambdaSign::Zero
        } else {
            let mut pos = false;
            let mut neg = false;
            let mut degenerate = false;
            for img in &images {
                let s = img.inner_with(&delta);
                if s > 0 {
                    pos = true;
                } else if s < 0 {
                    neg = true;
                } else {
                    degenerate = true;
                }
                if (degenerate || (pos && neg)) && ctx.early_exit {
                    break;
                }
            }
            match (degenerate || (pos && neg), pos) {
                (true, _) => LambdaSign::NoSolution,
                (false, true) => LambdaSign::Positive,
                (false, false) => LambdaSign::Negative,
            }
        };

        out.counts.bump(verdict);
        out.visited += 1;
        if ctx.collect_witnesses && verdict != LambdaSign::NoSolution {
            let perm = sigma
                .iter()
                .map(|&s| (s + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let signs = if ctx.family == Family::A {
                String::new()
            } else {
                phi.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect()
            };
            out.witnesses.push(WitnessRecord {
                index,
                perm,
                signs,
                lambda_sign: verdict,
                delta: delta.clone(),
            });
        }
    }
    out
}

fn make_ctx(form: RealForm, options: &SearchOptions) -> Result<SweepCtx> {
    form.validate()?;
    let rank = form.rank();
    if rank > options.rank_cap {
        return Err(Error::RankCapExceeded {
            rank,
            cap: options.rank_cap,
            weyl_order: group_order(form.family(), rank),
        });
    }
    let split = RealFormSplit::build(form)?;
    let rs = split.root_system();
    let base_shapes: Vec<Shape> = rs.base_positive_roots().map(Shape::of).collect();
    let enumerator = WeylEnumerator::new(form.family(), rank)?;
    Ok(SweepCtx {
        form,
        family: form.family(),
        letters: enumerator.letters(),
        enumerator,
        base_shapes,
        early_exit: options.early_exit,
        collect_witnesses: options.collect_witnesses,
    })
}

/// Sweeps every chamber of `form` and aggregates verdict counts and
/// witnesses. The result is independent of the shard count.
pub fn classify(form: RealForm, options: &SearchOptions) -> Result<ClassificationReport> {
    let started = Instant::now();
    let ctx = make_ctx(form, options)?;
    let order = ctx.enumerator.order();
    let shards = options.shards.max(1).min(order.max(1) as usize);

    let outputs: Vec<ShardOutput> = if shards == 1 {
        vec![sweep_range(&ctx, 0, order)]
    } else {
        let block = order.div_ceil(shards as u64);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..shards as u64)
                .map(|s| {
                    let ctx = &ctx;
                    let start = s * block;
                    let end = ((s + 1) * block).min(order);
                    scope.spawn(move || sweep_range(ctx, start, end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut counts = SignCounts::default();
    let mut witnesses = Vec::new();
    let mut visited = 0u64;
    for out in outputs {
        counts.pos += out.counts.pos;
        counts.zero += out.counts.zero;
        counts.neg += out.counts.neg;
        counts.none += out.counts.none;
        visited += out.visited;
        witnesses.extend(out.witnesses);
    }
    assert_eq!(visited, order, "every chamber visited exactly once");
    debug_assert!(witnesses.windows(2).all(|w| w[0].index < w[1].index));

    Ok(ClassificationReport {
        form: form.to_string(),
        rank: form.rank(),
        weyl_order: order,
        counts,
        witnesses,
        elapsed_ms: started.elapsed().as_millis() as u64,
        shards,
    })
}

/// Outcome of checking a sweep against the classification theorem.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub ok: bool,
    pub discrepancies: Vec<String>,
    pub report: ClassificationReport,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Sweeps `form` and compares against the predicted classification:
/// su(1,1) solves with λ < 0 in both chambers, su(q+1,q) has exactly
/// (q+1)!·q! Ricci-flat chambers (block preimage = the odd letters), and
/// every other classical form has no solvable chamber.
pub fn verify_theorem(form: RealForm, options: &SearchOptions) -> Result<TheoremCheck> {
    let report = classify(form, options)?;
    let mut discrepancies = Vec::new();
    let mut expect = |label: &str, got: u64, want: u64| {
        if got != want {
            discrepancies.push(format!("{form}: expected {want} {label} chambers, got {got}"));
        }
    };

    match form {
        RealForm::Su { p: 1, q: 1 } => {
            expect("negative", report.counts.neg, 2);
            expect("zero", report.counts.zero, 0);
            expect("positive", report.counts.pos, 0);
        }
        RealForm::Su { p, q } if p == q + 1 => {
            expect("zero", report.counts.zero, factorial(p) * factorial(q));
            expect("positive", report.counts.pos, 0);
            expect("negative", report.counts.neg, 0);
            for w in &report.witnesses {
                let sp = SignedPerm::from_text(Family::A, &w.perm, None)
                    .expect("witness encoding round-trips");
                let block: Vec<usize> = sp
                    .sigma()
                    .iter()
                    .enumerate()
                    .filter(|(_, &img)| img < p)
                    .map(|(i, _)| i + 1)
                    .collect();
                let odd: Vec<usize> = (1..=p + q).step_by(2).collect();
                if block != odd {
                    discrepancies.push(format!(
                        "{form}: flat witness {} has block preimage {block:?}, expected {odd:?}",
                        w.perm
                    ));
                }
            }
        }
        _ => {
            expect("positive", report.counts.pos, 0);
            expect("zero", report.counts.zero, 0);
            expect("negative", report.counts.neg, 0);
        }
    }

    Ok(TheoremCheck {
        ok: discrepancies.is_empty(),
        discrepancies,
        report,
    })
}

/// Count of chambers whose almost complex structure is integrable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegrabilityCensus {
    pub total: u64,
    pub integrable: u64,
}

/// Counts the chambers of `form` passing the root-closedness test.
pub fn integrability_census(form: RealForm, options: &SearchOptions) -> Result<IntegrabilityCensus> {
    form.validate()?;
    let rank = form.rank();
    if rank > options.rank_cap {
        return Err(Error::RankCapExceeded {
            rank,
            cap: options.rank_cap,
            weyl_order: group_order(form.family(), rank),
        });
    }
    let split = RealFormSplit::build(form)?;
    let rs = split.root_system();
    let enumerator = WeylEnumerator::new(form.family(), rank)?;

    let mut integrable = 0u64;
    let mut total = 0u64;
    let mut r10_idx: Vec<usize> = Vec::with_capacity(rs.base_positive().count());
    for w in enumerator.iter() {
        total += 1;
        // R¹⁰ keeps compact chamber roots and flips noncompact ones.
        r10_idx.clear();
        for alpha in rs.base_positive_roots() {
            let img = w.act(alpha);
            let idx = rs.index_of(&img).expect("Weyl image is a root");
            r10_idx.push(if split.is_compact(idx) {
                idx
            } else {
                rs.negation_of(idx)
            });
        }
        let mut member = BitSet::new(rs.num_roots());
        for &i in &r10_idx {
            member.set(i);
        }
        let closed = r10_idx.iter().all(|&i| {
            r10_idx
                .iter()
                .all(|&j| rs.sum_index(i, j).is_none_or(|k| member.contains(k)))
        });
        if closed {
            integrable += 1;
        }
    }
    Ok(IntegrabilityCensus { total, integrable })
}
