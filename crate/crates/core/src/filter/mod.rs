//! Filters on a finite semigroup.
//!
//! Every filter on a finite set is principal, so a [`PFilter`] is stored as
//! its support: `A` is a member iff `A ⊇ support`. Filter inclusion reverses
//! support inclusion: `F ⊇ G` as families iff `supp F ⊆ supp G`.
//!
//! The pseudo-sum follows the shift convention `A − n = {m : m ⋆ n ∈ A}`,
//! which gives `U_a ⊕ U_b = U_{b⋆a}`. On a noncommutative ground the map
//! `a ↦ U_a` is therefore an anti-homomorphism.

mod extension;

use std::sync::Arc;

use thiserror::Error;

use crate::semigroup::{ElementSet, FiniteSemigroup, SemigroupError};

pub use extension::{
    psi_extend, psi_extend_with, theta_extend, theta_extend_with, Chooser, MaxChooser, MinChooser,
    PsiOutcome, Rule, ThetaOutcome, TraceStep,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("filters live on different ground semigroups")]
    GroundMismatch,
    #[error("a filter needs a nonempty support")]
    EmptySupport,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("filter with support {support:?} is not additive")]
    NotAdditive { support: Vec<usize> },
    #[error("chooser returned {chosen}, which is not in the support {support:?}")]
    ChooserOutOfSupport { chosen: usize, support: Vec<usize> },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A (necessarily principal) filter on a finite semigroup.
#[derive(Debug, Clone)]
pub struct PFilter {
    ground: Arc<FiniteSemigroup>,
    support: ElementSet,
}

impl PartialEq for PFilter {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support && same_ground(&self.ground, &other.ground)
    }
}

impl Eq for PFilter {}

fn same_ground(a: &Arc<FiniteSemigroup>, b: &Arc<FiniteSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a.same_ground(b)
}

impl PFilter {
    pub fn new(ground: Arc<FiniteSemigroup>, support: ElementSet) -> Result<Self, FilterError> {
        if support.order() != ground.order() {
            return Err(FilterError::GroundMismatch);
        }
        if support.is_empty() {
            return Err(FilterError::EmptySupport);
        }
        Ok(PFilter { ground, support })
    }

    pub fn from_elements<I>(ground: Arc<FiniteSemigroup>, elements: I) -> Result<Self, FilterError>
    where
        I: IntoIterator<Item = usize>,
    {
        let support = ground.element_set(elements)?;
        Self::new(ground, support)
    }

    /// The principal ultrafilter `U_x = {A : x ∈ A}`.
    pub fn principal(ground: Arc<FiniteSemigroup>, x: usize) -> Result<Self, FilterError> {
        ground.check_element(x)?;
        let support = ElementSet::singleton(ground.order(), x);
        Ok(PFilter { ground, support })
    }

    /// The filter `{S}`.
    pub fn top(ground: Arc<FiniteSemigroup>) -> Self {
        let support = ElementSet::full(ground.order());
        PFilter { ground, support }
    }

    pub fn ground(&self) -> &Arc<FiniteSemigroup> {
        &self.ground
    }

    pub fn support(&self) -> ElementSet {
        self.support
    }

    pub fn member(&self, a: &ElementSet) -> Result<bool, FilterError> {
        if a.order() != self.ground.order() {
            return Err(FilterError::GroundMismatch);
        }
        Ok(self.support.is_subset(a))
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.support.len() == 1
    }

    pub fn ultrafilter_point(&self) -> Option<usize> {
        if self.is_ultrafilter() {
            self.support.least()
        } else {
            None
        }
    }

    /// `self ⊇ other` as families of sets.
    pub fn extends(&self, other: &PFilter) -> bool {
        same_ground(&self.ground, &other.ground) && self.support.is_subset(&other.support)
    }

    fn check_ground(&self, other: &PFilter) -> Result<(), FilterError> {
        if same_ground(&self.ground, &other.ground) {
            Ok(())
        } else {
            Err(FilterError::GroundMismatch)
        }
    }
}

/// `A_{U_v} = {n : A − n ∈ U_v} = {n : v ⋆ n ∈ A}`.
pub fn shift_preimage(
    s: &FiniteSemigroup,
    a: &ElementSet,
    v: usize,
) -> Result<ElementSet, FilterError> {
    s.check_element(v)?;
    if a.order() != s.order() {
        return Err(FilterError::GroundMismatch);
    }
    let mut out = ElementSet::empty(s.order());
    for n in 0..s.order() {
        if a.contains(s.op(v, n)) {
            out.insert(n);
        }
    }
    Ok(out)
}

/// `F ⊕ G`, by the closed form `supp(F ⊕ G) = supp G ⋆ supp F`.
pub fn pseudo_sum(f: &PFilter, g: &PFilter) -> Result<PFilter, FilterError> {
    f.check_ground(g)?;
    let support = f.ground.product_set_unchecked(&g.support, &f.support);
    Ok(PFilter {
        ground: Arc::clone(&f.ground),
        support,
    })
}

/// `F` is additive iff `F ⊕ U_v ⊇ F` for every ultrafilter `U_v ⊇ F`.
pub fn is_additive(f: &PFilter) -> bool {
    f.support.iter().all(|v| {
        let uv = PFilter::principal(Arc::clone(&f.ground), v).expect("support element in range");
        pseudo_sum(f, &uv).expect("same ground").extends(f)
    })
}

/// The two-ultrafilter characterization: `F ⊆ U_u ⊕ U_v` for all
/// ultrafilters `U_u, U_v ⊇ F`, evaluated by forming each pseudo-sum.
pub fn is_additive_char(f: &PFilter) -> bool {
    let ultrafilters: Vec<PFilter> = f
        .support
        .iter()
        .map(|x| PFilter::principal(Arc::clone(&f.ground), x).expect("support element in range"))
        .collect();
    ultrafilters.iter().all(|u| {
        ultrafilters
            .iter()
            .all(|v| pseudo_sum(u, v).expect("same ground").extends(f))
    })
}

/// `F ⊆ F ⊕ F`.
pub fn is_idempotent_filter(f: &PFilter) -> bool {
    pseudo_sum(f, f).expect("same ground").extends(f)
}

/// `F(U_v, G)`: the smallest filter containing `F` and every `A_{U_v}` with
/// `A ∈ G`. Requires `G ⊇ F ⊕ U_v`.
pub fn fvg_extend(f: &PFilter, v: usize, g: &PFilter) -> Result<PFilter, FilterError> {
    f.check_ground(g)?;
    let uv = PFilter::principal(Arc::clone(&f.ground), v)?;
    let shifted = pseudo_sum(f, &uv)?;
    if !g.extends(&shifted) {
        return Err(FilterError::PreconditionViolated(format!(
            "G (support {:?}) does not contain F ⊕ U_{v} (support {:?})",
            g.support.to_vec(),
            shifted.support.to_vec()
        )));
    }
    let support = f
        .support
        .intersection(&shift_preimage(&f.ground, &g.support, v)?);
    PFilter::new(Arc::clone(&f.ground), support)
}

/// `Fil(C)`: the filter of all supersets of `C`.
pub fn fil_of(s: Arc<FiniteSemigroup>, c: ElementSet) -> Result<PFilter, FilterError> {
    PFilter::new(s, c)
}

/// `Cl(F)`: the points whose ultrafilters extend `F`, i.e. the support.
pub fn cl_of(f: &PFilter) -> ElementSet {
    f.support
}

/// Filters that are maximal among the additive filters, found by scanning
/// supports that are minimal subsemigroups.
pub fn maximal_additive_filters(s: &Arc<FiniteSemigroup>) -> Vec<PFilter> {
    s.minimal_subsemigroups()
        .into_iter()
        .map(|b| PFilter::new(Arc::clone(s), b).expect("minimal subsemigroups are nonempty"))
        .collect()
}
