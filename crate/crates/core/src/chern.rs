//! The compatible almost complex structure attached to an admissible element,
//! Koszul forms, Ricci coefficients, and the Chern-Einstein sign test.
//!
//! Everything here is a pure function of a `RealFormSplit` and an admissible
//! `z`: the holomorphic root set R¹⁰ picks the compact roots positive on z
//! and the noncompact roots negative on z, the Koszul form is twice the sum
//! over R¹⁰, and the equation δ(z) = λ·B·z is decided by exact sign scans.

use num_rational::Ratio;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::realform::{AdmissibleElement, RealFormSplit};
use crate::rootsys::Family;

/// Sign classification of the Einstein constant for one chamber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LambdaSign {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "neg")]
    Negative,
    #[serde(rename = "none")]
    NoSolution,
}

impl std::fmt::Display for LambdaSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LambdaSign::Positive => "pos",
            LambdaSign::Zero => "zero",
            LambdaSign::Negative => "neg",
            LambdaSign::NoSolution => "none",
        };
        write!(f, "{s}")
    }
}

/// The sign assignment ε_α = ±1 defining an invariant almost complex
/// structure: `r10` holds the roots with ε_α = +1.
#[derive(Debug, Clone)]
pub struct JSplit<'a> {
    split: &'a RealFormSplit,
    z: AdmissibleElement,
    r10: BitSet,
}

/// Builds the unique metric-positive sign assignment for `z`:
/// compact roots positive on z and noncompact roots negative on z.
pub fn j_split<'a>(z: AdmissibleElement, sp: &'a RealFormSplit) -> Result<JSplit<'a>> {
    let rs = sp.root_system();
    let mut r10 = BitSet::new(rs.num_roots());
    for (i, r) in rs.roots().iter().enumerate() {
        let v = r.eval(z.z());
        if v == 0 {
            if !sp.is_compact(i) {
                return Err(Error::NotAdmissible {
                    root: r.to_string(),
                });
            }
            continue;
        }
        let wanted = if sp.is_compact(i) { v > 0 } else { v < 0 };
        if wanted {
            r10.set(i);
        }
    }
    Ok(JSplit { split: sp, z, r10 })
}

impl<'a> JSplit<'a> {
    pub fn split(&self) -> &'a RealFormSplit {
        self.split
    }

    pub fn z(&self) -> &AdmissibleElement {
        &self.z
    }

    pub fn r10(&self) -> &BitSet {
        &self.r10
    }

    pub fn contains(&self, root_idx: usize) -> bool {
        self.r10.contains(root_idx)
    }

    /// The same structure with the pair {α, −α} swapped between R¹⁰ and R⁰¹.
    ///
    /// The result is no longer the metric-positive assignment; it exists so
    /// that the positivity test can be exercised on nearby assignments.
    pub fn with_flipped_pair(&self, root_idx: usize) -> JSplit<'a> {
        let rs = self.split.root_system();
        let neg = rs.negation_of(root_idx);
        let mut r10 = self.r10.clone();
        for i in [root_idx, neg] {
            if r10.contains(i) {
                r10.clear(i);
            } else {
                r10.set(i);
            }
        }
        JSplit {
            split: self.split,
            z: self.z.clone(),
            r10,
        }
    }
}

/// The Koszul form and its compact/noncompact/associated parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulData {
    /// δ = 2 Σ_{α ∈ R¹⁰} α = δ_c − δ_nc
    pub delta: Vec<i64>,
    /// δ_c = 2 Σ over compact roots positive on z
    pub delta_c: Vec<i64>,
    /// δ_nc = 2 Σ over noncompact roots positive on z
    pub delta_nc: Vec<i64>,
    /// δ̃ = 2 Σ over all non-isotropy roots positive on z = δ_c + δ_nc
    pub delta_tilde: Vec<i64>,
}

/// Computes δ, δ_c, δ_nc and δ̃ for the structure.
pub fn koszul_delta(js: &JSplit) -> KoszulData {
    let rs = js.split.root_system();
    let dim = rs.ambient_dim();
    let mut delta_c = vec![0i64; dim];
    let mut delta_nc = vec![0i64; dim];
    for (i, r) in rs.roots().iter().enumerate() {
        if r.eval(js.z.z()) > 0 {
            let target = if js.split.is_compact(i) {
                &mut delta_c
            } else {
                &mut delta_nc
            };
            for (k, &c) in r.coords().iter().enumerate() {
                target[k] += 2 * c;
            }
        }
    }
    let delta: Vec<i64> = delta_c
        .iter()
        .zip(&delta_nc)
        .map(|(c, n)| c - n)
        .collect();
    let delta_tilde: Vec<i64> = delta_c
        .iter()
        .zip(&delta_nc)
        .map(|(c, n)| c + n)
        .collect();
    KoszulData {
        delta,
        delta_c,
        delta_nc,
        delta_tilde,
    }
}

/// Whether a coordinate vector is zero as a weight: exactly zero, except for
/// family A where the all-ones direction is the trivial relation.
pub fn is_zero_weight(family: Family, v: &[i64]) -> bool {
    match family {
        Family::A => v.windows(2).all(|w| w[0] == w[1]),
        _ => v.iter().all(|&c| c == 0),
    }
}

/// The Ricci coefficient r(α) = Σ_{β ∈ R¹⁰} ⟨α, β⟩.
///
/// The Chern-Ricci form takes the value −2i·r(α) on the pair (E_α, E_{−α})
/// and vanishes on all other root pairs.
pub fn ricci_coefficient(a: &crate::rootsys::RootVec, js: &JSplit) -> Result<i64> {
    let rs = js.split.root_system();
    let idx = rs.index_of(a).ok_or(Error::NotARoot)?;
    if !js.z.in_moduli(idx) {
        return Err(Error::RootVanishes);
    }
    let mut acc = 0i64;
    for i in js.r10.ones() {
        acc += a.eval(rs.root(i).coords());
    }
    Ok(acc)
}

/// Result of the Chern-Einstein test on one structure.
#[derive(Debug, Clone)]
pub struct CEResult {
    pub lambda_sign: LambdaSign,
    pub delta: KoszulData,
    /// Membership set of the positive system R⁺(z) used in the sign scan.
    pub positive: BitSet,
}

/// Decides solvability of δ(z) = λ·B·z and the sign of λ.
///
/// Zero iff δ vanishes as a weight. Otherwise the sign is uniform positivity
/// or negativity of ⟨α, δ⟩ over the positive system of z. For a non-regular
/// z the given z is pinned, so δ must additionally be proportional to it;
/// this is automatic when the isotropy center is one-dimensional.
pub fn solve_ce(js: &JSplit) -> CEResult {
    let rs = js.split.root_system();
    let kd = koszul_delta(js);
    let mut positive = BitSet::new(rs.num_roots());
    for (i, r) in rs.roots().iter().enumerate() {
        if r.eval(js.z.z()) > 0 {
            positive.set(i);
        }
    }

    let lambda_sign = if is_zero_weight(rs.family(), &kd.delta) {
        LambdaSign::Zero
    } else {
        let mut saw_pos = false;
        let mut saw_neg = false;
        let mut mixed = false;
        for i in positive.ones() {
            let s = rs.root(i).eval(&kd.delta);
            if s > 0 {
                saw_pos = true;
            } else if s < 0 {
                saw_neg = true;
            } else {
                mixed = true;
                break;
            }
            if saw_pos && saw_neg {
                mixed = true;
                break;
            }
        }
        if mixed {
            LambdaSign::NoSolution
        } else if !js.z.is_regular()
            && !proportional(rs.family(), &kd.delta, js.z.z())
        {
            // Pinned singular z: δ lies in the isotropy center but not on
            // the line of z, so no λ satisfies the equation for this z.
            LambdaSign::NoSolution
        } else if saw_pos {
            LambdaSign::Positive
        } else {
            LambdaSign::Negative
        }
    };

    CEResult {
        lambda_sign,
        delta: kd,
        positive,
    }
}

/// Whether `v = t·w` for some rational t (modulo all-ones for family A).
fn proportional(family: Family, v: &[i64], w: &[i64]) -> bool {
    match family {
        Family::A => {
            // Compare consecutive differences: v_i − v_{i+1} = t (w_i − w_{i+1}).
            let dv: Vec<i64> = v.windows(2).map(|x| x[0] - x[1]).collect();
            let dw: Vec<i64> = w.windows(2).map(|x| x[0] - x[1]).collect();
            proportional_exact(&dv, &dw)
        }
        _ => proportional_exact(v, w),
    }
}

fn proportional_exact(v: &[i64], w: &[i64]) -> bool {
    match w.iter().position(|&c| c != 0) {
        None => v.iter().all(|&c| c == 0),
        Some(k) => {
            // v·w_k = v_k·w cross-multiplied avoids rationals.
            v.iter()
                .zip(w)
                .all(|(&vi, &wi)| vi * w[k] == v[k] * wi)
        }
    }
}

/// Solves δ = λ·c·z for λ exactly, if δ is proportional to z.
///
/// `c` is the caller's normalization of the invariant pairing (the Killing
/// form is a positive multiple of the Euclidean one on the Cartan, so signs
/// never depend on it). Returns `None` when δ is not proportional to z.
pub fn compute_lambda(
    z: &AdmissibleElement,
    js: &JSplit,
    c: Ratio<i64>,
) -> Option<Ratio<i64>> {
    assert!(c > Ratio::new(0, 1), "normalization must be positive");
    let rs = js.split.root_system();
    let kd = koszul_delta(js);
    let (dv, dw): (Vec<i64>, Vec<i64>) = match rs.family() {
        Family::A => (
            kd.delta.windows(2).map(|x| x[0] - x[1]).collect(),
            z.z().windows(2).map(|x| x[0] - x[1]).collect(),
        ),
        _ => (kd.delta.clone(), z.z().to_vec()),
    };
    match dw.iter().position(|&c| c != 0) {
        None => {
            if dv.iter().all(|&c| c == 0) {
                Some(Ratio::new(0, 1))
            } else {
                None
            }
        }
        Some(k) => {
            if !proportional_exact(&dv, &dw) {
                return None;
            }
            Some(Ratio::new(dv[k], dw[k]) / c)
        }
    }
}

/// Whether R¹⁰ is closed under root addition, i.e. whether the almost
/// complex structure is integrable.
pub fn is_integrable(js: &JSplit) -> bool {
    let rs = js.split.root_system();
    for i in js.r10.ones() {
        for j in js.r10.ones() {
            if let Some(k) = rs.sum_index(i, j) {
                if !js.r10.contains(k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Positivity of the metric g = ω∘J for an arbitrary sign assignment:
/// compact R¹⁰ roots must be positive on z, noncompact ones negative.
pub fn metric_check(z: &AdmissibleElement, js: &JSplit) -> bool {
    let rs = js.split.root_system();
    for i in js.r10.ones() {
        let v = rs.root(i).eval(z.z());
        let ok = if js.split.is_compact(i) { v > 0 } else { v < 0 };
        if !ok {
            return false;
        }
    }
    true
}

/// Non-degeneracy of the associated pseudo-Kähler candidate: δ̃ must pair
/// non-trivially with every non-isotropy root.
pub fn delta_tilde_regularity(js: &JSplit) -> bool {
    let rs = js.split.root_system();
    let kd = koszul_delta(js);
    rs.roots().iter().enumerate().all(|(i, r)| {
        !js.z.in_moduli(i) || r.eval(&kd.delta_tilde) != 0
    })
}
