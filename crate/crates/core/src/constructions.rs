//! Explicit determining and auxiliary families.
//!
//! Every routine returns a fresh, 1-based, sorted [`Family`] and checks its own
//! output with the separation oracle before handing it back; a construction
//! that fails its oracle is reported as [`Error::InternalInconsistency`].

use crate::bounds::known_exact;
use crate::error::{Error, Result};
use crate::family::{Family, KneserInstance};
use crate::search::{det_decision, det_exact, Certificate, DetResult, SearchBudget};

/// The two hard-coded starting points of the auxiliary-set induction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxBase {
    /// `{1,2}, {1,3}, {2,4}` on `K(4,2)`.
    K42,
    /// `{1,2,3}, {1,4,5}, {2,4,6}` on `K(6,3)`.
    K63,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionStep {
    pub rule: &'static str,
    pub input: Option<KneserInstance>,
    pub output: KneserInstance,
}

/// An auxiliary family together with the recursion path that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub steps: Vec<ConstructionStep>,
    pub family: Family,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn certify_determining(f: Family, rule: &str) -> Result<Family> {
    if f.is_determining() {
        Ok(f)
    } else {
        Err(Error::InternalInconsistency(format!("{rule} produced a non-determining family on {}", f.instance())))
    }
}

pub fn aux_base(which: AuxBase) -> Family {
    let (inst, sets): (_, &[&[u32]]) = match which {
        AuxBase::K42 => (KneserInstance::auxiliary(4, 2), &[&[1, 2], &[1, 3], &[2, 4]]),
        AuxBase::K63 => (KneserInstance::auxiliary(6, 3), &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]),
    };
    Family::new(inst.expect("valid base instance"), sets.iter().map(|s| s.iter().copied())).expect("valid base family")
}

/// Doubles an auxiliary family of `K(2k,k)` into one of `K(4k,2k)` with one
/// more set: `V_i = A_i ∪ (A_i + 2k)` plus `V_{r+1} = {1, ..., 2k}`.
pub fn aux_double(f: &Family) -> Result<Family> {
    let (n, k) = (f.instance().n(), f.instance().k());
    if n != 2 * k {
        return Err(invalid(format!("aux_double needs an instance K(2k,k), got {}", f.instance())));
    }
    if !f.is_auxiliary() {
        return Err(invalid("aux_double needs an auxiliary family"));
    }
    let target = KneserInstance::auxiliary(2 * n, n)?;
    let mut sets: Vec<Vec<u32>> = f
        .sets()
        .iter()
        .map(|s| s.elements().iter().copied().chain(s.elements().iter().map(|&a| a + n)).collect())
        .collect();
    sets.push((1..=n).collect());
    let out = Family::new(target, sets)?;
    if !out.is_auxiliary() {
        return Err(Error::InternalInconsistency("aux_double output is not auxiliary".into()));
    }
    Ok(out)
}

/// Lifts a determining family of `K(2k+1,k)` with empty intersection and
/// union `[2k]` to a determining family of `K(4k+3,2k+1)` with one more set,
/// empty intersection and union `[4k+2]`.
pub fn det_lift_odd(f: &Family) -> Result<Family> {
    let (n, k) = (f.instance().n(), f.instance().k());
    if n != 2 * k + 1 {
        return Err(invalid(format!("det_lift_odd needs an instance K(2k+1,k), got {}", f.instance())));
    }
    if !f.is_determining() {
        return Err(invalid("det_lift_odd needs a determining family"));
    }
    if !f.common_elements().is_empty() {
        return Err(invalid("det_lift_odd needs members with empty common intersection"));
    }
    if f.uncovered() != [n] {
        return Err(invalid(format!("det_lift_odd needs the union to be exactly [{}]", n - 1)));
    }
    let target = KneserInstance::new(2 * n + 1, n)?;
    let apex = 2 * n;
    let mut sets: Vec<Vec<u32>> = f
        .sets()
        .iter()
        .map(|s| {
            let mut v: Vec<u32> = s.elements().to_vec();
            v.extend(s.elements().iter().map(|&a| a + n));
            v.push(apex);
            v
        })
        .collect();
    sets.push((1..=n).collect());
    let out = certify_determining(Family::new(target, sets)?, "det_lift_odd")?;
    debug_assert!(out.common_elements().is_empty());
    debug_assert_eq!(out.uncovered(), vec![2 * n + 1]);
    Ok(out)
}

/// An auxiliary family of `K(2k,k)` of size `r` with `2^(r-1) - 1 < 2k < 2^r - 1`
/// and empty common intersection, built by induction on `k`: even `k` doubles
/// the family for `k/2`, odd `k` lifts the family for `(k-1)/2`.
pub fn aux_set(k: u32) -> Result<ConstructionTrace> {
    match k {
        0 | 1 => Err(invalid("aux_set needs k >= 2")),
        2 | 3 => {
            let family = aux_base(if k == 2 { AuxBase::K42 } else { AuxBase::K63 });
            let rule = if k == 2 { "base-k42" } else { "base-k63" };
            Ok(ConstructionTrace {
                steps: vec![ConstructionStep { rule, input: None, output: *family.instance() }],
                family,
            })
        }
        _ if k.is_multiple_of(2) => {
            let mut trace = aux_set(k / 2)?;
            let input = *trace.family.instance();
            trace.family = aux_double(&trace.family)?;
            trace.steps.push(ConstructionStep {
                rule: "aux-double",
                input: Some(input),
                output: *trace.family.instance(),
            });
            Ok(trace)
        }
        _ => {
            let half = (k - 1) / 2;
            let mut trace = aux_set(half)?;
            let aux_inst = *trace.family.instance();
            let det = trace.family.reinterpret(KneserInstance::new(2 * half + 1, half)?)?;
            trace.steps.push(ConstructionStep {
                rule: "read-determining",
                input: Some(aux_inst),
                output: *det.instance(),
            });
            let lifted = det_lift_odd(&det)?;
            trace.steps.push(ConstructionStep {
                rule: "odd-lift",
                input: Some(*det.instance()),
                output: *lifted.instance(),
            });
            trace.family = lifted.reinterpret(KneserInstance::auxiliary(2 * k, k)?)?;
            trace.steps.push(ConstructionStep {
                rule: "read-auxiliary",
                input: Some(*lifted.instance()),
                output: *trace.family.instance(),
            });
            if !trace.family.is_auxiliary() {
                return Err(Error::InternalInconsistency(format!("aux_set({k}) is not auxiliary")));
            }
            Ok(trace)
        }
    }
}

/// A minimum determining family of `K(2k+1,k)`, of size `ceil(log2(2k+2))`.
pub fn det_set_odd(k: u32) -> Result<Family> {
    let trace = aux_set(k)?;
    let out = trace.family.reinterpret(KneserInstance::new(2 * k + 1, k)?)?;
    certify_determining(out, "det_set_odd")
}

/// The `r` sets of size `r` on `r(r+1)/2 + 1` points that pairwise meet in
/// exactly one point. Point `r(r+1)/2 + 1` is left uncovered.
///
/// `V_1 = {1..r}`; `V_i` takes the `(i-1)`-th smallest element of each earlier
/// set followed by `r - i + 1` fresh points.
pub fn construct_triangular(r: u32) -> Result<Family> {
    if r < 3 {
        return Err(invalid("construct_triangular needs r >= 3"));
    }
    let n = r * (r + 1) / 2 + 1;
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(r as usize);
    for i in 1..=r {
        let mut set: Vec<u32> = sets.iter().map(|s| s[(i - 2) as usize]).collect();
        let offset = r * (i - 1) - (i - 1) * (i.saturating_sub(2)) / 2;
        set.extend((1..=r - i + 1).map(|j| offset + j));
        sets.push(set);
    }
    certify_determining(Family::new(KneserInstance::new(n, r)?, sets)?, "construct_triangular")
}

/// The points of [`construct_triangular`] lying in exactly one set:
/// `r, 2r-1, 3r-3, ..., r(r+1)/2`.
pub fn triangular_diagonal(r: u32) -> Vec<u32> {
    (1..=r).map(|i| i * r - i * (i - 1) / 2).collect()
}

/// A determining family of `K(n+1,k)` from one of `K(n,k)` with at most one
/// extra set. A family covering `[n]` is reused as is; otherwise the missed
/// point is moved to `n` and `{1, ..., k-1, n+1}` is appended.
pub fn extend_n(f: &Family) -> Result<Family> {
    let inst = f.instance();
    if !f.is_determining() {
        return Err(invalid("extend_n needs a determining family"));
    }
    let (n, k) = (inst.n(), inst.k());
    let target = KneserInstance::new(n + 1, k)?;
    let out = match f.uncovered().as_slice() {
        [] => f.reinterpret(target)?,
        [missed] => f.swap_labels(*missed, n)?.reinterpret(target)?.with_set((1..k).chain(std::iter::once(n + 1)))?,
        _ => unreachable!("a determining family misses at most one point"),
    };
    certify_determining(out, "extend_n")
}

/// Relabels `1..n` by descending column weight (ties by label) keeping `n` fixed.
fn sort_all_but_last(f: &Family) -> Family {
    let n = f.instance().n();
    let weights = f.column_weights();
    let mut order: Vec<u32> = (1..n).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(weights[(e - 1) as usize]), e));
    let mut map = vec![0; n as usize];
    for (pos, &e) in order.iter().enumerate() {
        map[(e - 1) as usize] = pos as u32 + 1;
    }
    map[(n - 1) as usize] = n;
    f.relabel(&map).expect("permutation")
}

/// A determining family of `K(n,k)` of the same size as a determining family
/// of `K(n+1,k)`.
///
/// An uncovered point is simply dropped. Otherwise the point of smallest
/// column weight is labelled `n+1` and removed from the sets containing it one
/// at a time: it is replaced by the smallest `t` outside the set that keeps all
/// signatures distinct, after which the other labels are re-sorted by weight.
pub fn reduce_n(f: &Family) -> Result<Family> {
    let big = f.instance().n();
    let k = f.instance().k();
    if big <= 2 * k + 1 {
        return Err(invalid(format!("reduce_n needs n > 2k for the output K({},{k})", big - 1)));
    }
    if !f.is_determining() {
        return Err(invalid("reduce_n needs a determining family"));
    }
    let target = KneserInstance::new(big - 1, k)?;
    if let Some(&missed) = f.uncovered().first() {
        return certify_determining(f.swap_labels(missed, big)?.reinterpret(target)?, "reduce_n");
    }
    let mut g = f.canonicalize();
    while let Some(i) = g.sets().iter().position(|s| s.contains(big)) {
        let set = g.sets()[i].clone();
        let mut replaced = None;
        for t in (1..big).filter(|&t| !set.contains(t)) {
            let new_set: Vec<u32> = set.elements().iter().map(|&e| if e == big { t } else { e }).collect();
            let candidate = g.replace_set(i, new_set)?;
            if candidate.is_determining() {
                replaced = Some(candidate);
                break;
            }
        }
        let Some(next) = replaced else {
            return Err(Error::InternalInconsistency(format!(
                "reduce_n found no replacement for {big} in set {} of {}",
                i + 1,
                g.instance()
            )));
        };
        g = sort_all_but_last(&next);
    }
    certify_determining(g.reinterpret(target)?, "reduce_n")
}

/// A determining family of `K(n+1,k+1)` of the same size as a determining
/// family of `K(n,k)`, for `n + 1 >= 2k + 3`.
///
/// The family is first arranged to cover exactly `[n-1]`, then `n` is added to
/// every set. If all sets shared a point `a`, `a` is swapped out of the first
/// set for the smallest `t` in `[n-1]` that restores distinct signatures.
pub fn lift_nk(f: &Family) -> Result<Family> {
    let (n, k) = (f.instance().n(), f.instance().k());
    if n + 1 < 2 * k + 3 {
        return Err(invalid(format!("lift_nk needs n + 1 >= 2k + 3, got K({n},{k})")));
    }
    if !f.is_determining() {
        return Err(invalid("lift_nk needs a determining family"));
    }
    let base = match f.uncovered().first() {
        Some(&missed) => f.swap_labels(missed, n)?,
        None => reduce_n(f)?.reinterpret(*f.instance())?,
    };
    debug_assert_eq!(base.uncovered(), vec![n]);
    let target = KneserInstance::new(n + 1, k + 1)?;
    let lifted =
        Family::new(target, base.sets().iter().map(|s| s.elements().iter().copied().chain(std::iter::once(n))))?;
    let out = match base.common_elements().as_slice() {
        [] => lifted,
        [a] => {
            let first = lifted.sets()[0].clone();
            let mut fixed = None;
            for t in (1..n).filter(|&t| !first.contains(t)) {
                let new_set: Vec<u32> = first.elements().iter().map(|&e| if e == *a { t } else { e }).collect();
                let candidate = lifted.replace_set(0, new_set)?;
                if candidate.is_determining() {
                    fixed = Some(candidate);
                    break;
                }
            }
            fixed.ok_or_else(|| {
                Error::InternalInconsistency(format!("lift_nk found no replacement for common point {a}"))
            })?
        }
        _ => return Err(Error::InternalInconsistency("determining family with two common points".into())),
    };
    certify_determining(out, "lift_nk")
}

/// A witness of size `value` read off a construction, if one applies.
fn constructed_witness(inst: &KneserInstance, value: u32) -> Result<Option<Family>> {
    let (n, k) = (inst.n(), inst.k());
    let f = if k == 1 {
        Family::new(*inst, (1..n).map(|e| [e]))?
    } else if n == 2 * k + 1 {
        det_set_odd(k)?
    } else if n == 2 * k + 2 {
        extend_n(&det_set_odd(k)?)?
    } else if k >= 3 && n == k * (k + 1) / 2 + 1 {
        construct_triangular(k)?
    } else {
        return Ok(None);
    };
    Ok((f.len() as u32 == value).then_some(f))
}

/// The determining number with a witness, preferring closed forms.
///
/// When a closed form applies the value is taken from it and the witness comes
/// from a construction, or from a search at that single size. Otherwise this
/// is [`det_exact`].
pub fn determine(inst: &KneserInstance, budget: &SearchBudget) -> Result<DetResult> {
    let Some(exact) = known_exact(inst)? else {
        return det_exact(inst, budget);
    };
    let witness = match constructed_witness(inst, exact.value)? {
        Some(f) => Some(f),
        None => match det_decision(inst, exact.value, budget) {
            Ok(Some(f)) => Some(f),
            Ok(None) => {
                return Err(Error::InternalInconsistency(format!(
                    "no determining family of size {} found for {inst}",
                    exact.value
                )))
            }
            Err(Error::BudgetExceeded) => None,
            Err(e) => return Err(e),
        },
    };
    if let Some(w) = &witness {
        if !w.is_determining() || w.len() as u32 != exact.value {
            return Err(Error::InternalInconsistency(format!("closed-form witness for {inst} does not check out")));
        }
    }
    Ok(DetResult {
        instance: *inst,
        value: Some(exact.value),
        witness,
        certificate: Certificate::ClosedForm,
        last_decided: None,
    })
}
