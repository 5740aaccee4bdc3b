//! The two extension loops that take an additive filter to an idempotent
//! ultrafilter without any maximality argument.
//!
//! On a finite ground, every non-fixpoint step removes the chosen point from
//! the support, so each loop runs at most `|supp F|` times.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{fvg_extend, is_additive, pseudo_sum, FilterError, PFilter};
use crate::semigroup::ElementSet;

/// Picks the ultrafilter `U_v ⊇ F`, i.e. a point of the support.
pub trait Chooser {
    fn choose(&self, support: &ElementSet) -> usize;
}

/// Picks the least element of the support.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinChooser;

impl Chooser for MinChooser {
    fn choose(&self, support: &ElementSet) -> usize {
        support.least().expect("supports are nonempty")
    }
}

/// Picks the greatest element of the support.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxChooser;

impl Chooser for MaxChooser {
    fn choose(&self, support: &ElementSet) -> usize {
        support.iter().last().expect("supports are nonempty")
    }
}

impl<F> Chooser for F
where
    F: Fn(&ElementSet) -> usize,
{
    fn choose(&self, support: &ElementSet) -> usize {
        self(support)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `F ← F ⊕ U_v`
    PsiStep,
    /// `F ← F(U_v, U_v)`
    FvvStep,
    Fixpoint,
}

/// One line of an extension trace: the support at the time of the choice,
/// the chosen point, and what the loop did with it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    pub support: Vec<usize>,
    pub chosen_v: usize,
    pub rule: Rule,
}

#[derive(Debug, Clone)]
pub struct PsiOutcome {
    pub v: usize,
    /// The fixpoint filter; it extends the input and `U_v ⊇ fixpoint ⊕ U_v`.
    pub fixpoint: PFilter,
    pub iterations: usize,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone)]
pub struct ThetaOutcome {
    pub idempotent: usize,
    /// The last filter of the outer loop; `U_idempotent` extends it.
    pub filter: PFilter,
    /// Number of outer rounds, the final fixpoint round included.
    pub rounds: usize,
    pub trace: Vec<TraceStep>,
}

fn choose_checked<C: Chooser + ?Sized>(
    chooser: &C,
    support: &ElementSet,
) -> Result<usize, FilterError> {
    let v = chooser.choose(support);
    if support.contains(v) {
        Ok(v)
    } else {
        Err(FilterError::ChooserOutOfSupport {
            chosen: v,
            support: support.to_vec(),
        })
    }
}

fn require_additive(f: &PFilter) -> Result<(), FilterError> {
    if is_additive(f) {
        Ok(())
    } else {
        Err(FilterError::NotAdditive {
            support: f.support().to_vec(),
        })
    }
}

pub fn psi_extend(f: &PFilter) -> Result<PsiOutcome, FilterError> {
    psi_extend_with(f, &MinChooser)
}

/// Iterates `F_{k+1} = F_k ⊕ U_{v_k}` until the chosen `U_{v_k}` contains
/// `F_k ⊕ U_{v_k}`.
pub fn psi_extend_with<C: Chooser + ?Sized>(
    f: &PFilter,
    chooser: &C,
) -> Result<PsiOutcome, FilterError> {
    require_additive(f)?;
    let mut trace = Vec::new();
    psi_loop(f, chooser, &mut trace)
}

fn psi_loop<C: Chooser + ?Sized>(
    f: &PFilter,
    chooser: &C,
    trace: &mut Vec<TraceStep>,
) -> Result<PsiOutcome, FilterError> {
    let bound = f.support().len();
    let mut current = f.clone();
    let mut iterations = 0;
    loop {
        let support = current.support();
        let v = choose_checked(chooser, &support)?;
        let uv = PFilter::principal(Arc::clone(current.ground()), v)?;
        let shifted = pseudo_sum(&current, &uv)?;
        iterations += 1;
        if uv.extends(&shifted) {
            trace.push(TraceStep {
                step: trace.len(),
                support: support.to_vec(),
                chosen_v: v,
                rule: Rule::Fixpoint,
            });
            return Ok(PsiOutcome {
                v,
                fixpoint: current,
                iterations,
                trace: trace.clone(),
            });
        }
        trace.push(TraceStep {
            step: trace.len(),
            support: support.to_vec(),
            chosen_v: v,
            rule: Rule::PsiStep,
        });
        debug_assert!(
            shifted.extends(&current),
            "additive filters only grow under ⊕ U_v"
        );
        debug_assert!(shifted.support().len() < support.len());
        debug_assert!(iterations <= bound);
        current = shifted;
    }
}

pub fn theta_extend(f: &PFilter) -> Result<ThetaOutcome, FilterError> {
    theta_extend_with(f, &MinChooser)
}

/// Outer loop: `v_k` comes from the inner loop on `F_k`; stop when
/// `U_{v_k} ⊇ F_k(U_{v_k}, U_{v_k})`, otherwise pass to that filter.
pub fn theta_extend_with<C: Chooser + ?Sized>(
    f: &PFilter,
    chooser: &C,
) -> Result<ThetaOutcome, FilterError> {
    require_additive(f)?;
    let bound = f.support().len();
    let mut trace = Vec::new();
    let mut current = f.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let psi = psi_loop(&current, chooser, &mut trace)?;
        // the inner trace already ends with its own fixpoint line
        trace.pop();
        let v = psi.v;
        let uv = PFilter::principal(Arc::clone(current.ground()), v)?;
        let next = fvg_extend(&current, v, &uv)?;
        let support = current.support().to_vec();
        if uv.extends(&next) {
            trace.push(TraceStep {
                step: trace.len(),
                support,
                chosen_v: v,
                rule: Rule::Fixpoint,
            });
            debug_assert!(current.ground().is_idempotent(v));
            return Ok(ThetaOutcome {
                idempotent: v,
                filter: current,
                rounds,
                trace,
            });
        }
        trace.push(TraceStep {
            step: trace.len(),
            support,
            chosen_v: v,
            rule: Rule::FvvStep,
        });
        debug_assert!(next.support().len() < current.support().len());
        debug_assert!(rounds <= bound);
        current = next;
    }
}
