//! Ideals of `M⁺(X,𝒜)` and `M(X,𝒜)` in canonical core form.
//!
//! Every ideal here is stored by its core member `A ∈ 𝒜`: on the ring side
//! it denotes `{f ∈ M : A ⊆ Z(f)}`, on the semiring side the intersection
//! of that set with the positive cone. `core = X` is the zero ideal and
//! `core = ∅` the improper (whole) ideal, admitted as lattice top so that
//! sums are total. Element-level claims are verified by sweeping the value
//! grid plus the characteristic functions of all members; cores are complete
//! invariants at this scale.

use std::sync::Arc;

use crate::func::{characteristic_fn, divide_witness, MeasurableFn, NonNegFn, ValueGrid};
use crate::space::{SpaceRef, SubsetOfX};
use crate::{Error, Result};

/// Which carrier the ideal lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Ideal of the ring `M(X,𝒜)`.
    Ring,
    /// Ideal of the semiring `M⁺(X,𝒜)`.
    Semiring,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Ring => "ring",
            Side::Semiring => "semiring",
        }
    }
}

/// An ideal in canonical core form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCore {
    space: SpaceRef,
    core: SubsetOfX,
    side: Side,
}

impl IdealCore {
    pub fn new(space: &SpaceRef, core: SubsetOfX, side: Side) -> Result<Self> {
        if !space.is_member(&core) {
            return Err(Error::NotMeasurable(space.format_subset(&core)));
        }
        Ok(IdealCore { space: Arc::clone(space), core, side })
    }

    /// The zero ideal (core `X`).
    pub fn zero_ideal(space: &SpaceRef, side: Side) -> Self {
        IdealCore {
            space: Arc::clone(space),
            core: SubsetOfX::full(space.point_count()),
            side,
        }
    }

    /// The improper whole ideal (core `∅`), the top of the lattice.
    pub fn improper(space: &SpaceRef, side: Side) -> Self {
        IdealCore {
            space: Arc::clone(space),
            core: SubsetOfX::empty(space.point_count()),
            side,
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn core(&self) -> SubsetOfX {
        self.core
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.core.is_full()
    }

    pub fn is_improper(&self) -> bool {
        self.core.is_empty_set()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_improper()
    }

    /// Maximal among proper ideals: the core is an atom.
    pub fn is_maximal(&self) -> bool {
        self.space.atoms().contains(&self.core)
    }

    /// Membership: `core ⊆ Z(f)`. Semiring-side ideals reject functions
    /// outside the positive cone.
    pub fn contains(&self, f: &MeasurableFn) -> Result<bool> {
        if self.side == Side::Semiring && !f.is_non_negative() {
            return Err(Error::NotInPositiveCone(format!("{f:?}")));
        }
        Ok(self.core.is_subset_of(&f.zero_set()))
    }

    /// Inclusion of denoted element sets: `I_A ⊇ I_B ⟺ A ⊆ B`.
    pub fn includes(&self, other: &IdealCore) -> bool {
        self.core.is_subset_of(&other.core)
    }

    /// Intersect with the positive cone: ring ideal to semiring ideal,
    /// preserving the core.
    pub fn alpha(&self) -> Result<IdealCore> {
        if self.side != Side::Ring {
            return Err(Error::SideMismatch("alpha expects a ring ideal".into()));
        }
        Ok(IdealCore { space: Arc::clone(&self.space), core: self.core, side: Side::Semiring })
    }

    /// Differences of elements: semiring ideal to ring ideal, preserving the
    /// core. [`beta_certificate`] exhibits the element-level decomposition.
    pub fn beta(&self) -> Result<IdealCore> {
        if self.side != Side::Semiring {
            return Err(Error::SideMismatch("beta expects a semiring ideal".into()));
        }
        Ok(IdealCore { space: Arc::clone(&self.space), core: self.core, side: Side::Ring })
    }

    /// Lattice join: sum of ideals, core intersection.
    pub fn sum(&self, other: &IdealCore) -> Result<IdealCore> {
        self.check_compatible(other)?;
        Ok(IdealCore {
            space: Arc::clone(&self.space),
            core: self.core.inter(&other.core),
            side: self.side,
        })
    }

    /// Lattice meet: intersection of ideals, core union.
    pub fn meet(&self, other: &IdealCore) -> Result<IdealCore> {
        self.check_compatible(other)?;
        Ok(IdealCore {
            space: Arc::clone(&self.space),
            core: self.core.union(&other.core),
            side: self.side,
        })
    }

    fn check_compatible(&self, other: &IdealCore) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch(format!(
                "{} vs {}",
                self.side.name(),
                other.side.name()
            )));
        }
        if *self.space != *other.space {
            return Err(Error::SpaceMismatch(format!("{} vs {}", self.space, other.space)));
        }
        Ok(())
    }

    /// All ideals on the space, one per member, in canonical member order.
    pub fn enumerate(space: &SpaceRef, side: Side) -> Vec<IdealCore> {
        space
            .members()
            .iter()
            .map(|m| IdealCore { space: Arc::clone(space), core: *m, side })
            .collect()
    }

    /// The fixed maximal ideal at a point: core is the point's atom.
    pub fn fixed_maximal(space: &SpaceRef, point: &str, side: Side) -> Result<IdealCore> {
        let core = space.atom_of(point)?;
        Ok(IdealCore { space: Arc::clone(space), core, side })
    }

    /// `M⁺_f`: the intersection of all maximal ideals containing `f`, which
    /// is the ideal with core `Z(f)`.
    pub fn mplus_of(f: &NonNegFn) -> IdealCore {
        IdealCore {
            space: Arc::clone(f.space()),
            core: f.zero_set(),
            side: Side::Semiring,
        }
    }

    /// z-ideal check with witnesses: for every grid `f ∈ I` and every grid
    /// `g ∈ M⁺_f`, proves `g ∈ I`. Characteristic functions of all members
    /// are appended to the grid so every zero-set pattern is exercised.
    /// Zero sets are computed once per function; the pair scan is mask work.
    pub fn z_ideal_report(&self, grid: &ValueGrid) -> Result<ZIdealReport> {
        if self.side != Side::Semiring {
            return Err(Error::SideMismatch("z-ideal check expects a semiring ideal".into()));
        }
        let fns = grid_with_characteristics(&self.space, grid);
        let zero_sets: Vec<SubsetOfX> = fns.iter().map(|f| f.zero_set()).collect();
        let mut checked = 0usize;
        for (f, zf) in fns.iter().zip(&zero_sets) {
            if !self.core.is_subset_of(zf) {
                continue;
            }
            for (g, zg) in fns.iter().zip(&zero_sets) {
                if zf.is_subset_of(zg) {
                    checked += 1;
                    if !self.core.is_subset_of(zg) {
                        return Ok(ZIdealReport {
                            holds: false,
                            memberships_checked: checked,
                            counterexample: Some((f.clone(), g.clone())),
                        });
                    }
                }
            }
        }
        Ok(ZIdealReport { holds: true, memberships_checked: checked, counterexample: None })
    }

    /// Strong-ideal check: whenever `f+g ∈ I` for grid functions, both
    /// summands are in `I`, with divisibility factors `f = (f+g)·h` as
    /// certificates for a deterministic sample of the passing pairs.
    ///
    /// The membership implication is swept for every pair. Its prefilter
    /// uses `Z(f+g) = Z(f) ∩ Z(g)`, which is scalar arithmetic on the cone
    /// (a sum of non-negatives vanishes where both do); certificate pairs
    /// materialize the sum, re-check its zero set, and verify the factors
    /// multiply back exactly.
    pub fn strong_ideal_report(&self, grid: &ValueGrid) -> Result<StrongIdealReport> {
        if self.side != Side::Semiring {
            return Err(Error::SideMismatch(
                "strong-ideal check expects a semiring ideal".into(),
            ));
        }
        const CERTIFICATE_SAMPLE: usize = 16;
        let fns = grid_with_characteristics(&self.space, grid);
        let zero_sets: Vec<SubsetOfX> = fns.iter().map(|f| f.zero_set()).collect();
        let mut checked = 0usize;
        let mut certificates = Vec::new();
        for (f, zf) in fns.iter().zip(&zero_sets) {
            for (g, zg) in fns.iter().zip(&zero_sets) {
                if !self.core.is_subset_of(&zf.inter(zg)) {
                    continue;
                }
                checked += 1;
                // the implication itself: both summands are members
                if !self.core.is_subset_of(zf) || !self.core.is_subset_of(zg) {
                    return Ok(StrongIdealReport {
                        holds: false,
                        sums_checked: checked,
                        counterexample: Some((f.clone(), g.clone())),
                        certificates,
                    });
                }
                if certificates.len() < CERTIFICATE_SAMPLE {
                    let sum = f.add(g)?;
                    debug_assert_eq!(sum.zero_set(), zf.inter(zg));
                    let hf = divide_witness(f, &sum, 1)?;
                    let hg = divide_witness(g, &sum, 1)?;
                    match (hf, hg) {
                        (Some(a), Some(b)) => certificates.push((f.clone(), g.clone(), a, b)),
                        _ => {
                            return Ok(StrongIdealReport {
                                holds: false,
                                sums_checked: checked,
                                counterexample: Some((f.clone(), g.clone())),
                                certificates,
                            })
                        }
                    }
                }
            }
        }
        Ok(StrongIdealReport {
            holds: true,
            sums_checked: checked,
            counterexample: None,
            certificates,
        })
    }
}

/// Grid functions plus the characteristic functions of every member.
pub fn grid_with_characteristics(space: &SpaceRef, grid: &ValueGrid) -> Vec<NonNegFn> {
    let mut fns = grid.functions(space);
    for m in space.members() {
        let chi = characteristic_fn(space, m).expect("member");
        if !fns.contains(&chi) {
            fns.push(chi);
        }
    }
    fns
}

/// Element-level certificate for `beta`: `f = f⁺ − (−f⁻)` with both parts in
/// the semiring ideal whenever `f` is in the ring ideal.
pub fn beta_certificate(ideal: &IdealCore, f: &MeasurableFn) -> Result<Option<(NonNegFn, NonNegFn)>> {
    if ideal.side() != Side::Semiring {
        return Err(Error::SideMismatch("beta certificate expects a semiring ideal".into()));
    }
    if !ideal.core().is_subset_of(&f.zero_set()) {
        return Ok(None);
    }
    let plus = f.pos_part();
    let minus = NonNegFn::new(f.neg_part().scale(&crate::rat(-1, 1)))?;
    debug_assert!(ideal.contains(plus.as_fn())?);
    debug_assert!(ideal.contains(minus.as_fn())?);
    Ok(Some((plus, minus)))
}

/// Report for [`IdealCore::z_ideal_report`].
#[derive(Debug, Clone)]
pub struct ZIdealReport {
    pub holds: bool,
    pub memberships_checked: usize,
    pub counterexample: Option<(NonNegFn, NonNegFn)>,
}

/// Report for [`IdealCore::strong_ideal_report`].
#[derive(Debug, Clone)]
pub struct StrongIdealReport {
    pub holds: bool,
    pub sums_checked: usize,
    pub counterexample: Option<(NonNegFn, NonNegFn)>,
    /// Sample `(f, g, h_f, h_g)` with `f = (f+g)·h_f` and `g = (f+g)·h_g`.
    pub certificates: Vec<(NonNegFn, NonNegFn, NonNegFn, NonNegFn)>,
}
