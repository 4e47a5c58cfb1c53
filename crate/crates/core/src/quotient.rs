//! Quotients of `M⁺(X,𝒜)` by z-congruences.
//!
//! Classes are stored by a canonical representative: values on atoms outside
//! the filter core are zeroed, which makes class equality a representative
//! equality. The quotient order has member witnesses: `ρ(f) ≤ ρ(g)` iff
//! `f ≤ g` on some member of the agreement filter. For maximal congruences
//! the order is total, every nonzero class is invertible, and the scalar
//! embedding is onto — the realness reports check these facts rather than
//! assume them.


use num::integer::Integer;
use num::{Signed, Zero};

use crate::filtcong::{congruence_pair_sample, Congruence};
use crate::func::{characteristic_fn, MeasurableFn, NonNegFn, ValueGrid};
use crate::ideal::{IdealCore, Side};
use crate::space::{SpaceRef, SubsetOfX};
use crate::structure::StructureSpace;
use crate::{Error, Rat, Result};

/// A class of the quotient semiring, held by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotClass {
    rho: Congruence,
    rep: NonNegFn,
}

impl QuotClass {
    pub fn rho(&self) -> &Congruence {
        &self.rho
    }

    pub fn rep(&self) -> &NonNegFn {
        &self.rep
    }

    pub fn add(&self, other: &QuotClass) -> Result<QuotClass> {
        self.check_same_rho(other)?;
        QuotientSemiring::new(self.rho.clone())?.class(&self.rep.add(&other.rep)?)
    }

    pub fn mul(&self, other: &QuotClass) -> Result<QuotClass> {
        self.check_same_rho(other)?;
        QuotientSemiring::new(self.rho.clone())?.class(&self.rep.mul(&other.rep)?)
    }

    fn check_same_rho(&self, other: &QuotClass) -> Result<()> {
        if self.rho == other.rho {
            Ok(())
        } else {
            Err(Error::SpaceMismatch("classes of different quotients".into()))
        }
    }
}

/// The quotient semiring `M⁺(X,𝒜)/ρ` for a z-kind congruence.
#[derive(Debug, Clone)]
pub struct QuotientSemiring {
    rho: Congruence,
    core: SubsetOfX,
}

impl QuotientSemiring {
    pub fn new(rho: Congruence) -> Result<Self> {
        let core = rho
            .core()
            .ok_or_else(|| Error::NotZCongruence("collapse relation".into()))?;
        Ok(QuotientSemiring { rho, core })
    }

    pub fn rho(&self) -> &Congruence {
        &self.rho
    }

    pub fn space(&self) -> &SpaceRef {
        self.rho.space()
    }

    pub fn core(&self) -> SubsetOfX {
        self.core
    }

    /// Canonical representative: zero the values on atoms outside the core.
    pub fn class(&self, f: &NonNegFn) -> Result<QuotClass> {
        let space = self.space();
        if **f.space() != **space {
            return Err(Error::SpaceMismatch("function not on the quotient's space".into()));
        }
        let values: Vec<Rat> = space
            .atoms()
            .iter()
            .zip(f.values())
            .map(|(atom, v)| {
                if atom.is_subset_of(&self.core) {
                    v.clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        Ok(QuotClass {
            rho: self.rho.clone(),
            rep: NonNegFn::from_atom_values(space, values)?,
        })
    }

    pub fn classes_equal(&self, f: &NonNegFn, g: &NonNegFn) -> Result<bool> {
        self.rho.contains(f.as_fn(), g.as_fn())
    }
}

/// Outcome of the quotient order test.
#[derive(Debug, Clone)]
pub enum LeqOutcome {
    /// `f ≤ g` on the witness member of the agreement filter.
    Holds { witness: SubsetOfX },
    /// On every filter member some atom has `f > g`; one `(member, atom)`
    /// pair is recorded per member.
    NotComparable { proof: Vec<(SubsetOfX, usize)> },
}

impl LeqOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, LeqOutcome::Holds { .. })
    }
}

/// `ρ(f) ≤ ρ(g)` iff `f ≤ g` on some member of `E(ρ)`; the core is the
/// canonical witness. Scans members in canonical order otherwise.
pub fn quot_leq(rho: &Congruence, f: &NonNegFn, g: &NonNegFn) -> Result<LeqOutcome> {
    let quotient = QuotientSemiring::new(rho.clone())?;
    let space = quotient.space();
    let core = quotient.core();
    if f.as_fn().leq_on(g.as_fn(), &core)? {
        return Ok(LeqOutcome::Holds { witness: core });
    }
    let filter = rho.e_of()?;
    for member in filter.members() {
        if f.as_fn().leq_on(g.as_fn(), &member)? {
            return Ok(LeqOutcome::Holds { witness: member });
        }
    }
    // every member contains the core, so a bad core atom defeats them all
    let bad_atom = space
        .atoms_inside(&core)
        .into_iter()
        .find(|k| f.value_on_atom(*k) > g.value_on_atom(*k))
        .expect("comparison failed on the core");
    let proof = filter
        .members()
        .into_iter()
        .map(|m| (m, bad_atom))
        .collect();
    Ok(LeqOutcome::NotComparable { proof })
}

/// Strict order for maximal congruences: `f < g` pointwise on some member.
/// Every filter member contains the core, so strictness on some member is
/// strictness on the core, which is itself a member.
pub fn quot_lt(rho: &Congruence, f: &NonNegFn, g: &NonNegFn) -> Result<Option<SubsetOfX>> {
    require_maximal(rho)?;
    let core = rho.core().expect("maximal congruences are filter-induced");
    if f.as_fn().lt_on(g.as_fn(), &core)? {
        Ok(Some(core))
    } else {
        Ok(None)
    }
}

fn require_maximal(rho: &Congruence) -> Result<()> {
    if rho.is_maximal() {
        Ok(())
    } else {
        Err(Error::NotMaximal(format!("{:?}", rho.kind())))
    }
}

/// Total-order sweep for a maximal congruence: every grid pair is comparable,
/// via the dichotomy `{f ≤ g} ∪ {g ≤ f} = X` with one side in the filter.
pub fn is_totally_ordered(rho: &Congruence, grid: &ValueGrid) -> Result<TotalOrderReport> {
    require_maximal(rho)?;
    let space = rho.space();
    let filter = rho.e_of()?;
    let fns = grid.functions(space);
    let mut pairs_checked = 0usize;
    for f in &fns {
        for g in &fns {
            let a1 = space.member_of_atoms(
                (0..space.atom_count())
                    .filter(|k| f.value_on_atom(*k) <= g.value_on_atom(*k)),
            );
            let a2 = space.member_of_atoms(
                (0..space.atom_count())
                    .filter(|k| g.value_on_atom(*k) <= f.value_on_atom(*k)),
            );
            let dichotomy = a1.union(&a2).is_full()
                && (filter.contains_member(&a1) || filter.contains_member(&a2));
            let comparable =
                quot_leq(rho, f, g)?.holds() || quot_leq(rho, g, f)?.holds();
            if !dichotomy || !comparable {
                return Ok(TotalOrderReport { holds: false, pairs_checked });
            }
            pairs_checked += 1;
        }
    }
    Ok(TotalOrderReport { holds: true, pairs_checked })
}

#[derive(Debug, Clone)]
pub struct TotalOrderReport {
    pub holds: bool,
    pub pairs_checked: usize,
}

/// Embed a non-negative scalar as the class of the constant function.
pub fn scalar_embed(rho: &Congruence, r: &Rat) -> Result<QuotClass> {
    require_maximal(rho)?;
    if r.is_negative() {
        return Err(Error::NotInPositiveCone(r.to_string()));
    }
    let quotient = QuotientSemiring::new(rho.clone())?;
    let constant = NonNegFn::constant(rho.space(), r.clone())?;
    quotient.class(&constant)
}

/// Realness report for a maximal congruence: the three quotient-side
/// criteria plus the ideal-side transfer, each computed independently.
#[derive(Debug, Clone)]
pub struct RealnessReport {
    /// The agreement filter is closed under (finite) intersections.
    pub filter_closed: bool,
    /// The scalar embedding is onto the grid classes.
    pub phi_onto: bool,
    /// The classes of naturals are cofinal in the quotient.
    pub cofinal: bool,
    /// The corresponding maximal ring ideal is real.
    pub ideal_side_real: bool,
    /// Sampling bound used for the cofinality scan.
    pub sample_bound: u64,
}

impl RealnessReport {
    pub fn all_agree(&self) -> bool {
        self.filter_closed == self.phi_onto
            && self.phi_onto == self.cofinal
            && self.cofinal == self.ideal_side_real
    }

    pub fn real(&self) -> bool {
        self.filter_closed && self.phi_onto && self.cofinal
    }
}

/// Sampling bound for natural-indexed scans: `⌈max grid value⌉ + 2`.
pub fn natural_sample_bound(grid: &ValueGrid) -> u64 {
    let m = grid.max_value();
    let ceil = m.numer().div_ceil(m.denom());
    let ceil_u64: u64 = ceil.try_into().unwrap_or(u64::MAX - 2);
    ceil_u64 + 2
}

pub fn is_real(rho: &Congruence, grid: &ValueGrid) -> Result<RealnessReport> {
    require_maximal(rho)?;
    let space = rho.space();
    let filter = rho.e_of()?;
    let quotient = QuotientSemiring::new(rho.clone())?;

    // (a) closure under intersection, pairwise scan
    let members = filter.members();
    let mut filter_closed = true;
    for a in &members {
        for b in &members {
            if !filter.contains_member(&a.inter(b)) {
                filter_closed = false;
            }
        }
    }

    // (b) every grid class is a scalar class
    let core_atom = space
        .atoms()
        .iter()
        .position(|a| *a == quotient.core())
        .expect("maximal core is an atom");
    let mut phi_onto = true;
    for f in grid.functions(space) {
        let scalar = f.value_on_atom(core_atom).clone();
        let constant = NonNegFn::constant(space, scalar)?;
        if !quotient.classes_equal(&f, &constant)? {
            phi_onto = false;
        }
    }

    // (c) cofinality of the natural classes over the sampled range
    let bound = natural_sample_bound(grid);
    let mut cofinal = true;
    for f in grid.functions(space) {
        let dominated = (1..=bound).any(|n| {
            let constant = NonNegFn::constant(space, Rat::from_integer(n.into()))
                .expect("naturals are non-negative");
            matches!(quot_leq(rho, &f, &constant), Ok(o) if o.holds())
        });
        if !dominated {
            cofinal = false;
        }
    }

    // ideal side: the maximal ring ideal with the same core is real iff its
    // zero-set filter is intersection-closed
    let ideal = IdealCore::new(space, quotient.core(), Side::Ring)?;
    let ideal_members: Vec<SubsetOfX> = space
        .members()
        .iter()
        .filter(|m| ideal.core().is_subset_of(m))
        .copied()
        .collect();
    let mut ideal_side_real = true;
    for a in &ideal_members {
        for b in &ideal_members {
            if !ideal.core().is_subset_of(&a.inter(b)) {
                ideal_side_real = false;
            }
        }
    }

    Ok(RealnessReport {
        filter_closed,
        phi_onto,
        cofinal,
        ideal_side_real,
        sample_bound: bound,
    })
}

/// The four equivalent "infinitely large" conditions for `ρ(f)`, each
/// evaluated over the sampled natural range, with the first failing `n`
/// demonstrated per condition.
#[derive(Debug, Clone)]
pub struct FourWayReport {
    /// 1. `ρ(f) ≥ ρ(n)` for every sampled n.
    pub dominates_naturals: bool,
    /// 2. `{x : f(x) ≥ n}` is in the filter for every sampled n.
    pub level_sets_in_filter: bool,
    /// 3. `(f ∧ n, n) ∈ ρ` for every sampled n.
    pub truncation_related: bool,
    /// 4. `f` is unbounded on every filter member.
    pub unbounded_on_members: bool,
    pub failing_n: [Option<u64>; 4],
    /// Conditions 2 and 3 agree at every sampled n.
    pub per_n_agreement: bool,
    pub sample_bound: u64,
}

impl FourWayReport {
    pub fn all_agree(&self) -> bool {
        let v = [
            self.dominates_naturals,
            self.level_sets_in_filter,
            self.truncation_related,
            self.unbounded_on_members,
        ];
        v.iter().all(|x| *x == v[0])
    }

    pub fn infinitely_large(&self) -> bool {
        self.dominates_naturals
    }
}

pub fn is_infinitely_large(
    rho: &Congruence,
    f: &NonNegFn,
    grid: &ValueGrid,
) -> Result<FourWayReport> {
    require_maximal(rho)?;
    let space = rho.space();
    let filter = rho.e_of()?;
    let bound = natural_sample_bound(grid).max(
        // ensure the sampled range reaches past this particular function
        {
            let m = f.sup_abs();
            let c: u64 = m.numer().div_ceil(m.denom()).try_into().unwrap_or(0);
            c + 2
        },
    );

    let mut failing = [None, None, None, None];
    let mut per_n_agreement = true;
    let filter_members = filter.members();

    for n in 1..=bound {
        let n_rat = Rat::from_integer(n.into());
        let n_const = NonNegFn::constant(space, n_rat.clone())?;

        // 1: ρ(n) ≤ ρ(f)
        let c1 = quot_leq(rho, &n_const, f)?.holds();
        if !c1 && failing[0].is_none() {
            failing[0] = Some(n);
        }
        // 2: level set in the filter
        let level = space.member_of_atoms(
            (0..space.atom_count()).filter(|k| *f.value_on_atom(*k) >= n_rat),
        );
        let c2 = filter.contains_member(&level);
        if !c2 && failing[1].is_none() {
            failing[1] = Some(n);
        }
        // 3: (f ∧ n, n) related
        let trunc = f.meet(&n_const)?;
        let c3 = rho.contains(trunc.as_fn(), n_const.as_fn())?;
        if !c3 && failing[2].is_none() {
            failing[2] = Some(n);
        }
        if c2 != c3 {
            per_n_agreement = false;
        }
        // 4: some member on which f stays below n refutes unboundedness
        let bounded_member = filter_members.iter().any(|m| {
            space
                .atoms()
                .iter()
                .enumerate()
                .all(|(k, atom)| !atom.is_subset_of(m) || *f.value_on_atom(k) < n_rat)
        });
        if bounded_member && failing[3].is_none() {
            failing[3] = Some(n);
        }
    }

    Ok(FourWayReport {
        dominates_naturals: failing[0].is_none(),
        level_sets_in_filter: failing[1].is_none(),
        truncation_related: failing[2].is_none(),
        unbounded_on_members: failing[3].is_none(),
        failing_n: failing,
        per_n_agreement,
        sample_bound: bound,
    })
}

/// Multiplicative inverse of a nonzero class: pointwise reciprocal off the
/// zero set. `ρ(f·g) = ρ(1)` is certified before returning.
pub fn quot_inverse(rho: &Congruence, f: &NonNegFn) -> Result<QuotClass> {
    require_maximal(rho)?;
    let space = rho.space();
    let zero = NonNegFn::zero(space);
    if rho.contains(f.as_fn(), zero.as_fn())? {
        return Err(Error::NotInvertible(format!("{f:?} lies in the zero class")));
    }
    let g = f.reciprocal_off_zero();
    let product = f.mul(&g)?;
    let one = NonNegFn::one(space);
    if !rho.contains(product.as_fn(), one.as_fn())? {
        return Err(Error::NotInvertible(format!("{f:?}")));
    }
    QuotientSemiring::new(rho.clone())?.class(&g)
}

/// Convexity sweep: every grid chain `f ≤ f₁ ≤ g₁ ≤ g` with `(f,g)` related
/// has `(f₁,g₁)` related.
pub fn is_convex(rho: &Congruence, grid: &ValueGrid) -> Result<ConvexityReport> {
    let _ = QuotientSemiring::new(rho.clone())?; // z-kind check
    let space = rho.space();
    let fns = grid.functions(space);
    let mut chains_checked = 0usize;
    for f in &fns {
        for g in &fns {
            if !f.as_fn().leq(g.as_fn())? || !rho.contains(f.as_fn(), g.as_fn())? {
                continue;
            }
            for f1 in &fns {
                if !(f.as_fn().leq(f1.as_fn())? && f1.as_fn().leq(g.as_fn())?) {
                    continue;
                }
                for g1 in &fns {
                    if !(f1.as_fn().leq(g1.as_fn())? && g1.as_fn().leq(g.as_fn())?) {
                        continue;
                    }
                    chains_checked += 1;
                    if !rho.contains(f1.as_fn(), g1.as_fn())? {
                        return Ok(ConvexityReport {
                            holds: false,
                            chains_checked,
                            counterexample: Some((f1.clone(), g1.clone())),
                        });
                    }
                }
            }
        }
    }
    Ok(ConvexityReport { holds: true, chains_checked, counterexample: None })
}

#[derive(Debug, Clone)]
pub struct ConvexityReport {
    pub holds: bool,
    pub chains_checked: usize,
    pub counterexample: Option<(NonNegFn, NonNegFn)>,
}

/// The space of real maximal congruences with its measurable structure.
#[derive(Debug, Clone)]
pub struct RmcongReport {
    /// Real maximal congruences, one per atom at this scale.
    pub points: Vec<Congruence>,
    /// Every maximal congruence was found real.
    pub all_maximal_real: bool,
    /// Every real maximal congruence is fixed.
    pub realcompact: bool,
    /// The complement formula for the restricted basic closed sets holds on
    /// the sampled pair range.
    pub complement_formula_holds: bool,
    /// The restricted point map onto real maximal ideals is a bijection.
    pub eta_tilde_bijective: bool,
    pub scope: String,
}

/// Build the real-maximal-congruence space and run its structural checks.
pub fn build_rmcong(space: &SpaceRef, grid: &ValueGrid, pair_cap: usize) -> Result<RmcongReport> {
    let maximal = Congruence::enumerate_maximal(space);
    let mut points = Vec::new();
    let mut all_maximal_real = true;
    for rho in &maximal {
        let report = is_real(rho, grid)?;
        if report.real() {
            points.push(rho.clone());
        } else {
            all_maximal_real = false;
        }
    }

    // fixedness: the intersection of sampled agreement sets is nonempty
    let sample = congruence_pair_sample(space, grid, pair_cap);
    let mut fixed_points = Vec::new();
    for rho in &points {
        let mut common = SubsetOfX::full(space.point_count());
        for (f, g) in &sample.pairs {
            if rho.contains(f.as_fn(), g.as_fn())? {
                common = common.inter(&f.agreement_set(g.as_fn())?);
            }
        }
        if !common.is_empty_set() {
            fixed_points.push(rho.clone());
        }
    }
    let realcompact = fixed_points == points;

    // complement formula on the restricted space, over sampled pairs:
    // the complement of {ρ : (f,g) ∈ ρ} is {ρ : (χ_{E(f,g)}, 0) ∈ ρ}
    let st = StructureSpace::build(space);
    let zero = NonNegFn::zero(space);
    let all_mask: u64 = if points.len() >= 64 {
        u64::MAX
    } else {
        (1 << points.len()) - 1
    };
    let m_restricted = |f: &MeasurableFn, g: &MeasurableFn| -> Result<u64> {
        let mut mask = 0u64;
        for (i, rho) in points.iter().enumerate() {
            if rho.contains(f, g)? {
                mask |= 1 << i;
            }
        }
        Ok(mask)
    };
    let mut complement_formula_holds = true;
    for (f, g) in &sample.pairs {
        let lhs = !m_restricted(f.as_fn(), g.as_fn())? & all_mask;
        let e = f.agreement_set(g.as_fn())?;
        let chi = characteristic_fn(space, &e)?;
        let rhs = m_restricted(chi.as_fn(), zero.as_fn())?;
        if lhs != rhs {
            complement_formula_holds = false;
        }
    }

    // η̃ bijects real maximal congruences with real maximal ideals
    let mut eta_images = Vec::new();
    for rho in &points {
        eta_images.push(st.eta(rho)?);
    }
    let real_max_ideals: Vec<IdealCore> = IdealCore::enumerate(space, Side::Ring)
        .into_iter()
        .filter(|i| i.is_maximal())
        .filter(|i| {
            // real: the zero-set filter is intersection-closed
            let members: Vec<SubsetOfX> = space
                .members()
                .iter()
                .filter(|m| i.core().is_subset_of(m))
                .copied()
                .collect();
            members
                .iter()
                .all(|a| members.iter().all(|b| i.core().is_subset_of(&a.inter(b))))
        })
        .collect();
    let eta_tilde_bijective = eta_images.len() == real_max_ideals.len()
        && real_max_ideals.iter().all(|m| eta_images.contains(m))
        && {
            let mut seen: Vec<&IdealCore> = Vec::new();
            eta_images.iter().all(|i| {
                if seen.contains(&i) {
                    false
                } else {
                    seen.push(i);
                    true
                }
            })
        };

    Ok(RmcongReport {
        points,
        all_maximal_real,
        realcompact,
        complement_formula_holds,
        eta_tilde_bijective,
        scope: sample.scope_description(),
    })
}
