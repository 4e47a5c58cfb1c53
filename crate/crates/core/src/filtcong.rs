//! Z-filters on `𝒜` and congruences on `M⁺(X,𝒜)`.
//!
//! On a finite σ-algebra every Z-filter is principal, so a filter is stored
//! by its core member; the improper filter (core `∅`) is admitted as lattice
//! top. Congruences form a closed tagged universe: the filter-induced
//! relations (which include the diagonal and the universal relation) plus
//! the collapse-all-nonzero relation, which exists solely as the standard
//! non-cancellative counterexample.
//!
//! The duality: a filter `𝔉` induces the cancellative congruence
//! `{(f,g) : E(f,g) ∈ 𝔉}`, and a cancellative congruence induces the filter
//! of its agreement sets. On z-congruences these maps are mutually inverse
//! order isomorphisms.

use std::sync::Arc;

use crate::func::{characteristic_fn, MeasurableFn, NonNegFn, ValueGrid};
use crate::ideal::{IdealCore, Side};
use crate::space::{SpaceRef, SubsetOfX};
use crate::sweep::{select_indices, PairSample};
use crate::{Error, Result};

/// A principal Z-filter: all members of `𝒜` containing the core.
///
/// Proper iff the core is nonempty; the improper filter contains `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZFilter {
    space: SpaceRef,
    core: SubsetOfX,
}

impl ZFilter {
    pub fn new(space: &SpaceRef, core: SubsetOfX) -> Result<Self> {
        if !space.is_member(&core) {
            return Err(Error::NotMeasurable(space.format_subset(&core)));
        }
        Ok(ZFilter { space: Arc::clone(space), core })
    }

    /// The improper filter (all of `𝒜`).
    pub fn improper(space: &SpaceRef) -> Self {
        ZFilter {
            space: Arc::clone(space),
            core: SubsetOfX::empty(space.point_count()),
        }
    }

    /// The principal filter at `X` (smallest filter, `{X}`).
    pub fn at_top(space: &SpaceRef) -> Self {
        ZFilter {
            space: Arc::clone(space),
            core: SubsetOfX::full(space.point_count()),
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn core(&self) -> SubsetOfX {
        self.core
    }

    pub fn is_proper(&self) -> bool {
        !self.core.is_empty_set()
    }

    pub fn contains_member(&self, member: &SubsetOfX) -> bool {
        self.space.is_member(member) && self.core.is_subset_of(member)
    }

    /// All members of the filter in canonical order.
    pub fn members(&self) -> Vec<SubsetOfX> {
        self.space
            .members()
            .iter()
            .filter(|m| self.core.is_subset_of(m))
            .copied()
            .collect()
    }

    /// One filter per member of `𝒜`, canonical order (improper included).
    pub fn enumerate(space: &SpaceRef) -> Vec<ZFilter> {
        space
            .members()
            .iter()
            .map(|m| ZFilter { space: Arc::clone(space), core: *m })
            .collect()
    }

    /// Prime: `A ∪ B` in the filter forces a side in, scanned over all
    /// member pairs. Requires properness.
    pub fn is_prime(&self) -> Result<bool> {
        if !self.is_proper() {
            return Err(Error::ImproperFilter(self.space.format_subset(&self.core)));
        }
        for a in self.space.members() {
            for b in self.space.members() {
                if self.contains_member(&a.union(b))
                    && !self.contains_member(a)
                    && !self.contains_member(b)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Ultrafilter: maximal among proper filters, by inclusion scan over all
    /// cores. Requires properness.
    pub fn is_ultrafilter(&self) -> Result<bool> {
        if !self.is_proper() {
            return Err(Error::ImproperFilter(self.space.format_subset(&self.core)));
        }
        // filter(c1) ⊆ filter(c2) ⟺ c2 ⊆ c1
        for other in self.space.members() {
            if !other.is_empty_set()
                && other.is_subset_of(&self.core)
                && *other != self.core
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Filter inclusion: every member of `self` is a member of `other`.
    pub fn is_subfilter_of(&self, other: &ZFilter) -> bool {
        other.core.is_subset_of(&self.core)
    }
}

/// Display kind of a congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceKind {
    Diagonal,
    Universal,
    FromFilter,
    CollapseNonzero,
}

impl CongruenceKind {
    pub fn name(&self) -> &'static str {
        match self {
            CongruenceKind::Diagonal => "diagonal",
            CongruenceKind::Universal => "universal",
            CongruenceKind::FromFilter => "fromFilter",
            CongruenceKind::CollapseNonzero => "collapseNonzero",
        }
    }
}

/// A congruence on `M⁺(X,𝒜)` from the tagged universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Congruence {
    /// `(f,g)` related iff `E(f,g)` is in the filter, i.e. `core ⊆ E(f,g)`.
    /// Core `X` is the diagonal; the improper filter gives the universal
    /// relation.
    FromFilter(ZFilter),
    /// `(f,g)` related iff `f = g` or both are nonzero functions.
    CollapseNonzero(SpaceRef),
}

impl Congruence {
    pub fn from_filter(filter: ZFilter) -> Self {
        Congruence::FromFilter(filter)
    }

    pub fn from_core(space: &SpaceRef, core: SubsetOfX) -> Result<Self> {
        Ok(Congruence::FromFilter(ZFilter::new(space, core)?))
    }

    pub fn diagonal(space: &SpaceRef) -> Self {
        Congruence::FromFilter(ZFilter::at_top(space))
    }

    pub fn universal(space: &SpaceRef) -> Self {
        Congruence::FromFilter(ZFilter::improper(space))
    }

    pub fn collapse_nonzero(space: &SpaceRef) -> Self {
        Congruence::CollapseNonzero(Arc::clone(space))
    }

    /// The fixed congruence at a point: pairs agreeing on its atom.
    pub fn fixed(space: &SpaceRef, point: &str) -> Result<Self> {
        let core = space.atom_of(point)?;
        Ok(Congruence::FromFilter(ZFilter { space: Arc::clone(space), core }))
    }

    /// All filter-induced congruences, canonical core order.
    pub fn enumerate_z(space: &SpaceRef) -> Vec<Congruence> {
        ZFilter::enumerate(space).into_iter().map(Congruence::FromFilter).collect()
    }

    /// All maximal congruences, one per atom.
    pub fn enumerate_maximal(space: &SpaceRef) -> Vec<Congruence> {
        space
            .atoms()
            .iter()
            .map(|a| Congruence::FromFilter(ZFilter { space: Arc::clone(space), core: *a }))
            .collect()
    }

    pub fn space(&self) -> &SpaceRef {
        match self {
            Congruence::FromFilter(f) => f.space(),
            Congruence::CollapseNonzero(s) => s,
        }
    }

    pub fn kind(&self) -> CongruenceKind {
        match self {
            Congruence::FromFilter(f) => {
                if f.core().is_full() {
                    CongruenceKind::Diagonal
                } else if f.core().is_empty_set() {
                    CongruenceKind::Universal
                } else {
                    CongruenceKind::FromFilter
                }
            }
            Congruence::CollapseNonzero(_) => CongruenceKind::CollapseNonzero,
        }
    }

    pub fn is_z_kind(&self) -> bool {
        matches!(self, Congruence::FromFilter(_))
    }

    pub fn core(&self) -> Option<SubsetOfX> {
        match self {
            Congruence::FromFilter(f) => Some(f.core()),
            Congruence::CollapseNonzero(_) => None,
        }
    }

    pub fn filter(&self) -> Option<&ZFilter> {
        match self {
            Congruence::FromFilter(f) => Some(f),
            Congruence::CollapseNonzero(_) => None,
        }
    }

    fn check_space(&self, f: &MeasurableFn) -> Result<()> {
        if **f.space() == **self.space() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!("{} vs {}", f.space(), self.space())))
        }
    }

    /// Membership predicate.
    pub fn contains(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<bool> {
        self.check_space(f)?;
        self.check_space(g)?;
        match self {
            Congruence::FromFilter(filt) => {
                Ok(filt.core().is_subset_of(&f.agreement_set(g)?))
            }
            Congruence::CollapseNonzero(_) => {
                Ok(f == g || (!f.is_zero_fn() && !g.is_zero_fn()))
            }
        }
    }

    /// The filter of agreement sets. Rejects the collapse relation, whose
    /// agreement sets are not a filter: `(f+1, f)` is related with empty
    /// agreement set, yet `(1, 0)` with the same agreement set is not.
    pub fn e_of(&self) -> Result<ZFilter> {
        match self {
            Congruence::FromFilter(f) => Ok(f.clone()),
            Congruence::CollapseNonzero(_) => Err(Error::NotCancellative(
                "collapse-all-nonzero relates (f+1, f) whose agreement set is empty, \
                 but not (1, 0); cancelling f is impossible and E(·) is not a filter"
                    .into(),
            )),
        }
    }

    /// Maximal ⟺ the filter core is an atom.
    pub fn is_maximal(&self) -> bool {
        match self {
            Congruence::FromFilter(f) => f.space().atoms().contains(&f.core()),
            Congruence::CollapseNonzero(_) => false,
        }
    }

    /// Congruence inclusion for z-kinds: larger core, smaller congruence.
    pub fn is_subcongruence_of(&self, other: &Congruence) -> Option<bool> {
        match (self, other) {
            (Congruence::FromFilter(a), Congruence::FromFilter(b)) => {
                Some(b.core().is_subset_of(&a.core()))
            }
            _ => None,
        }
    }

    /// z-congruence check: `E(f,g) ∈ E(ρ)` forces `(f,g) ∈ ρ`. Filter-kinds
    /// hold structurally; the collapse relation fails with the canonical
    /// witness pair.
    pub fn z_congruence_report(&self) -> ZCongruenceReport {
        match self {
            Congruence::FromFilter(_) => {
                ZCongruenceReport { holds: true, witness: None }
            }
            Congruence::CollapseNonzero(space) => {
                let one = NonNegFn::one(space);
                let zero = NonNegFn::zero(space);
                let f = one.clone();
                let f_plus_one = f.add(&one).expect("same space");
                // E(f+1, f) = ∅ is an agreement set of the relation, and
                // E(1, 0) = ∅ too, but (1, 0) is not related.
                ZCongruenceReport {
                    holds: false,
                    witness: Some(ZCongruenceWitness {
                        related: (f_plus_one, f),
                        unrelated: (one, zero),
                    }),
                }
            }
        }
    }

    pub fn is_z_congruence(&self) -> bool {
        self.z_congruence_report().holds
    }

    /// Meet of a nonempty list of z-kind congruences: union of cores.
    pub fn z_meet(rhos: &[Congruence]) -> Result<Congruence> {
        let first = rhos.first().ok_or_else(|| {
            Error::NotZCongruence("meet of an empty congruence list".into())
        })?;
        let space = first.space().clone();
        let mut core = SubsetOfX::empty(space.point_count());
        for rho in rhos {
            let c = rho
                .core()
                .ok_or_else(|| Error::NotZCongruence("collapse relation in meet".into()))?;
            core = core.union(&c);
        }
        Ok(Congruence::FromFilter(ZFilter { space, core }))
    }

    /// z-join of two z-kind congruences: intersection of cores (universal
    /// when the cores are disjoint).
    pub fn z_join(&self, other: &Congruence) -> Result<Congruence> {
        let (a, b) = match (self.core(), other.core()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotZCongruence("collapse relation in join".into())),
        };
        Ok(Congruence::FromFilter(ZFilter {
            space: self.space().clone(),
            core: a.inter(&b),
        }))
    }

    /// The smallest z-congruence containing the pair `(f,g)`: the meet of all
    /// maximal congruences containing it, which is filter-induced at the
    /// agreement set (universal when the agreement set is empty).
    pub fn m_frak(f: &NonNegFn, g: &NonNegFn) -> Result<Congruence> {
        let core = f.agreement_set(g.as_fn())?;
        Ok(Congruence::FromFilter(ZFilter {
            space: Arc::clone(f.space()),
            core,
        }))
    }

    /// Prime congruence check, computed two independent ways that must agree:
    /// definitionally on a deterministic pair sample (twisted-product
    /// membership forces a factor), and via primality of the agreement-set
    /// filter. The universal congruence is prime vacuously by convention.
    pub fn prime_report(&self, grid: &ValueGrid, pair_cap: usize) -> Result<PrimeReport> {
        let filter = match self {
            Congruence::FromFilter(f) => f,
            Congruence::CollapseNonzero(_) => {
                return Err(Error::NotZCongruence("collapse relation".into()))
            }
        };
        let space = self.space();
        let sample = congruence_pair_sample(space, grid, pair_cap);

        // route 1: definitional scan over sampled pairs of pairs
        let mut definitional = true;
        let mut witness = None;
        'outer: for p1 in &sample.pairs {
            for p2 in &sample.pairs {
                let (tw_left, tw_right) =
                    twisted_product((&p1.0, &p1.1), (&p2.0, &p2.1))?;
                if self.contains(&tw_left, &tw_right)?
                    && !self.contains(p1.0.as_fn(), p1.1.as_fn())?
                    && !self.contains(p2.0.as_fn(), p2.1.as_fn())?
                {
                    definitional = false;
                    witness = Some((p1.clone(), p2.clone()));
                    break 'outer;
                }
            }
        }

        // route 2: filter-side primality; improper filter = vacuously prime
        let filter_prime = if filter.is_proper() {
            filter.is_prime()?
        } else {
            true
        };

        Ok(PrimeReport {
            prime: filter_prime,
            definitional_route: definitional,
            filter_route: filter_prime,
            routes_agree: definitional == filter_prime,
            witness,
            sample_scope: sample.scope_description(),
        })
    }

    /// The four prime characterizations evaluated independently:
    /// 1. definitional primality (twisted membership forces a factor);
    /// 2. contains a prime congruence (core inclusion scan);
    /// 3. diagonal twisted pairs force a factor;
    /// 4. every pair is one-sidedly ordered on some filter member.
    pub fn prime_equivalences(
        &self,
        grid: &ValueGrid,
        pair_cap: usize,
    ) -> Result<PrimeEquivalences> {
        let filter = match self {
            Congruence::FromFilter(f) => f,
            Congruence::CollapseNonzero(_) => {
                return Err(Error::NotZCongruence("collapse relation".into()))
            }
        };
        let space = self.space();

        // condition 2: some prime z-congruence is contained in self.
        // Prime z-congruences are the maximal ones (atom cores) plus the
        // universal relation; σ ⊆ ρ means core_σ ⊇ core_ρ.
        let mut primes: Vec<SubsetOfX> = space.atoms().to_vec();
        primes.push(SubsetOfX::empty(space.point_count()));
        let cond2 = primes.iter().any(|p| filter.core().is_subset_of(p));

        // conditions 1 and 3 share one pass over the sampled pairs of pairs:
        // 1 fires on twisted membership, 3 only on diagonal twisted tuples
        let sample = congruence_pair_sample(space, grid, pair_cap);
        let mut cond1 = true;
        let mut cond3 = true;
        let memberships: Vec<bool> = sample
            .pairs
            .iter()
            .map(|(f, g)| self.contains(f.as_fn(), g.as_fn()))
            .collect::<Result<_>>()?;
        'fused: for (p1, m1) in sample.pairs.iter().zip(&memberships) {
            if *m1 {
                continue; // a violation needs both factors unrelated
            }
            for (p2, m2) in sample.pairs.iter().zip(&memberships) {
                if *m2 {
                    continue;
                }
                let (l, r) = twisted_product((&p1.0, &p1.1), (&p2.0, &p2.1))?;
                if l == r {
                    cond3 = false;
                    cond1 = false;
                } else if cond1 && self.contains(&l, &r)? {
                    cond1 = false;
                }
                if !cond1 && !cond3 {
                    break 'fused;
                }
            }
        }

        // condition 4: some filter member one-sidedly orders each grid pair.
        // The largest member on which f ≤ g is the union of those atoms, and
        // a filter member inside it exists iff it contains the core.
        let fns = grid.functions(space);
        let core = filter.core();
        let mut cond4 = true;
        'c4: for f in &fns {
            for g in &fns {
                let a1 = space.member_of_atoms(
                    (0..space.atom_count())
                        .filter(|k| f.value_on_atom(*k) <= g.value_on_atom(*k)),
                );
                let a2 = space.member_of_atoms(
                    (0..space.atom_count())
                        .filter(|k| g.value_on_atom(*k) <= f.value_on_atom(*k)),
                );
                if !core.is_subset_of(&a1) && !core.is_subset_of(&a2) {
                    cond4 = false;
                    break 'c4;
                }
            }
        }

        Ok(PrimeEquivalences {
            definitional: cond1,
            contains_prime: cond2,
            diagonal_twisted: cond3,
            one_sided_on_member: cond4,
            all_agree: cond1 == cond2 && cond2 == cond3 && cond3 == cond4,
        })
    }
}

/// Witness that the collapse relation is not a z-congruence.
#[derive(Debug, Clone)]
pub struct ZCongruenceWitness {
    /// A related pair with empty agreement set.
    pub related: (NonNegFn, NonNegFn),
    /// An unrelated pair with the same agreement set.
    pub unrelated: (NonNegFn, NonNegFn),
}

#[derive(Debug, Clone)]
pub struct ZCongruenceReport {
    pub holds: bool,
    pub witness: Option<ZCongruenceWitness>,
}

#[derive(Debug, Clone)]
pub struct PrimeReport {
    pub prime: bool,
    pub definitional_route: bool,
    pub filter_route: bool,
    pub routes_agree: bool,
    pub witness: Option<((NonNegFn, NonNegFn), (NonNegFn, NonNegFn))>,
    pub sample_scope: String,
}

#[derive(Debug, Clone)]
pub struct PrimeEquivalences {
    pub definitional: bool,
    pub contains_prime: bool,
    pub diagonal_twisted: bool,
    pub one_sided_on_member: bool,
    pub all_agree: bool,
}

/// The congruence induced by a filter: `E⁻¹(𝔉)`. Improper filters give the
/// universal relation.
pub fn e_inverse(filter: ZFilter) -> Congruence {
    Congruence::FromFilter(filter)
}

/// Twisted product of two pairs:
/// `(x₁,x₂)·(y₁,y₂) = (x₁y₁+x₂y₂, x₁y₂+x₂y₁)`.
pub fn twisted_product(
    p1: (&NonNegFn, &NonNegFn),
    p2: (&NonNegFn, &NonNegFn),
) -> Result<(MeasurableFn, MeasurableFn)> {
    let (x1, x2) = p1;
    let (y1, y2) = p2;
    let left = x1.as_fn().mul(y1.as_fn())?.add(&x2.as_fn().mul(y2.as_fn())?)?;
    let right = x1.as_fn().mul(y2.as_fn())?.add(&x2.as_fn().mul(y1.as_fn())?)?;
    Ok((left, right))
}

/// Deterministic pair sample for twisted-product sweeps: every
/// characteristic pair `(χ_{Aᶜ}, 0)` (these realize all agreement sets) plus
/// grid pairs up to the cap, with a fixed recorded seed. Pair indices are
/// sampled, so the quadratic pair range is never materialized.
pub fn congruence_pair_sample(
    space: &SpaceRef,
    grid: &ValueGrid,
    cap: usize,
) -> CongruencePairSample {
    let zero = NonNegFn::zero(space);
    let mut mandatory: Vec<(NonNegFn, NonNegFn)> = space
        .members()
        .iter()
        .map(|m| {
            let chi = characteristic_fn(space, &m.complement()).expect("member");
            (chi, zero.clone())
        })
        .collect();
    let fns = grid.functions(space);
    let sample: PairSample<usize> = select_indices(fns.len() * fns.len(), cap);
    let scope = sample.scope.clone();
    mandatory.extend(
        sample
            .items
            .into_iter()
            .map(|i| (fns[i / fns.len()].clone(), fns[i % fns.len()].clone())),
    );
    CongruencePairSample { pairs: mandatory, scope }
}

/// Pair sample with its provenance description.
pub struct CongruencePairSample {
    pub pairs: Vec<(NonNegFn, NonNegFn)>,
    pub scope: crate::sweep::SweepScope,
}

impl CongruencePairSample {
    pub fn scope_description(&self) -> String {
        format!("{} pairs ({})", self.pairs.len(), self.scope)
    }
}

/// A congruence on the ring `M(X,𝒜)`, determined by a ring ideal:
/// `(f,g)` related iff `f−g` is in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCongruence {
    ideal: IdealCore,
}

impl RingCongruence {
    pub fn new(ideal: IdealCore) -> Result<Self> {
        if ideal.side() != Side::Ring {
            return Err(Error::SideMismatch("ring congruence needs a ring ideal".into()));
        }
        Ok(RingCongruence { ideal })
    }

    pub fn ideal(&self) -> &IdealCore {
        &self.ideal
    }

    pub fn space(&self) -> &SpaceRef {
        self.ideal.space()
    }

    pub fn core(&self) -> SubsetOfX {
        self.ideal.core()
    }

    pub fn contains(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<bool> {
        self.ideal.contains(&f.sub(g)?)
    }

    /// Restrict to the positive cone: the z-congruence with the same core.
    pub fn nabla(&self) -> Congruence {
        Congruence::FromFilter(ZFilter {
            space: Arc::clone(self.ideal.space()),
            core: self.ideal.core(),
        })
    }
}

/// Extend a z-congruence to the ring: differences land in the core ideal.
/// The element-level description: `(f,g)` related iff `f−g = h−k` for some
/// related cone pair `(h,k)`, realized by `h = f−(f∧g)`, `k = g−(f∧g)`.
pub fn delta(rho: &Congruence) -> Result<RingCongruence> {
    let core = rho
        .core()
        .ok_or_else(|| Error::NotZCongruence("collapse relation".into()))?;
    let ideal = IdealCore::new(rho.space(), core, Side::Ring)?;
    RingCongruence::new(ideal)
}

/// The z-congruence attached to a semiring ideal: pairs `(f,g)` with
/// `f+s = g+t` for some `s,t` in the ideal; filter-induced at the core.
pub fn ideal_to_congruence(ideal: &IdealCore) -> Result<Congruence> {
    if ideal.side() != Side::Semiring {
        return Err(Error::SideMismatch("expected a semiring ideal".into()));
    }
    Ok(Congruence::FromFilter(ZFilter {
        space: Arc::clone(ideal.space()),
        core: ideal.core(),
    }))
}

/// The zeroth class of a z-congruence: the semiring ideal of functions
/// related to zero.
pub fn congruence_to_ideal(rho: &Congruence) -> Result<IdealCore> {
    let core = rho
        .core()
        .ok_or_else(|| Error::NotZCongruence("collapse relation".into()))?;
    IdealCore::new(rho.space(), core, Side::Semiring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::space::SigmaAlgebra;

    fn power3() -> SpaceRef {
        Arc::new(SigmaAlgebra::power_set(vec!["a".into(), "b".into(), "c".into()]).unwrap())
    }

    fn one_atom() -> SpaceRef {
        Arc::new(SigmaAlgebra::generate(vec!["a".into()], &[]).unwrap())
    }

    fn nn(space: &SpaceRef, vals: &[(i64, i64)]) -> NonNegFn {
        NonNegFn::from_atom_values(space, vals.iter().map(|(n, d)| rat(*n, *d)).collect())
            .unwrap()
    }

    #[test]
    fn filter_members_examples() {
        let sp = power3();
        let core_a = sp.subset_from_labels(&["a"]).unwrap();
        let filt = ZFilter::new(&sp, core_a).unwrap();
        let labels: Vec<String> =
            filt.members().iter().map(|m| sp.format_subset(m)).collect();
        assert_eq!(labels, vec!["{a}", "{a,b}", "{a,c}", "{a,b,c}"]);

        assert_eq!(ZFilter::at_top(&sp).members().len(), 1);
        assert_eq!(ZFilter::improper(&sp).members().len(), 8);
    }

    #[test]
    fn prime_and_ultra_agree_and_mean_atom_core() {
        let sp = power3();
        for filt in ZFilter::enumerate(&sp) {
            if !filt.is_proper() {
                assert!(matches!(filt.is_prime(), Err(Error::ImproperFilter(_))));
                continue;
            }
            let prime = filt.is_prime().unwrap();
            let ultra = filt.is_ultrafilter().unwrap();
            assert_eq!(prime, ultra);
            assert_eq!(prime, sp.atoms().contains(&filt.core()));
        }
        // explicit counterexample: {a}∪{b} in the filter at {a,b}, neither side in
        let fab = ZFilter::new(&sp, sp.subset_from_labels(&["a", "b"]).unwrap()).unwrap();
        assert!(!fab.is_prime().unwrap());
        let top = ZFilter::at_top(&sp);
        assert!(!top.is_prime().unwrap());
    }

    #[test]
    fn congruence_kinds_and_membership() {
        let sp = power3();
        let diag = Congruence::diagonal(&sp);
        assert_eq!(diag.kind(), CongruenceKind::Diagonal);
        let univ = Congruence::universal(&sp);
        assert_eq!(univ.kind(), CongruenceKind::Universal);
        let rho_a = Congruence::fixed(&sp, "a").unwrap();
        assert_eq!(rho_a.kind(), CongruenceKind::FromFilter);

        let f = nn(&sp, &[(1, 1), (2, 1), (3, 1)]);
        let g = nn(&sp, &[(1, 1), (5, 1), (7, 1)]);
        assert!(rho_a.contains(f.as_fn(), g.as_fn()).unwrap());
        assert!(!diag.contains(f.as_fn(), g.as_fn()).unwrap());
        assert!(univ.contains(f.as_fn(), g.as_fn()).unwrap());

        let bc = Congruence::from_core(&sp, sp.subset_from_labels(&["b", "c"]).unwrap())
            .unwrap();
        let h = nn(&sp, &[(0, 1), (2, 1), (3, 1)]);
        let k = nn(&sp, &[(9, 1), (2, 1), (3, 1)]);
        assert!(bc.contains(h.as_fn(), k.as_fn()).unwrap());
    }

    #[test]
    fn e_of_and_e_inverse_are_mutually_inverse() {
        let sp = power3();
        for filt in ZFilter::enumerate(&sp) {
            let rho = e_inverse(filt.clone());
            assert_eq!(rho.e_of().unwrap(), filt);
        }
        for rho in Congruence::enumerate_z(&sp) {
            let back = e_inverse(rho.e_of().unwrap());
            assert_eq!(back, rho);
        }
        // order preservation both ways
        let filters = ZFilter::enumerate(&sp);
        for a in &filters {
            for b in &filters {
                let ra = e_inverse(a.clone());
                let rb = e_inverse(b.clone());
                assert_eq!(
                    a.is_subfilter_of(b),
                    ra.is_subcongruence_of(&rb).unwrap()
                );
            }
        }
    }

    #[test]
    fn e_of_matches_grid_agreement_sets() {
        let sp = power3();
        let grid = ValueGrid::default();
        let fns = grid.functions(&sp);
        for rho in Congruence::enumerate_z(&sp) {
            let filt = rho.e_of().unwrap();
            // every agreement set of a related pair is in the filter,
            // and every filter member arises from a characteristic pair
            for f in fns.iter().step_by(9) {
                for g in fns.iter().step_by(9) {
                    if rho.contains(f.as_fn(), g.as_fn()).unwrap() {
                        assert!(filt
                            .contains_member(&f.agreement_set(g.as_fn()).unwrap()));
                    }
                }
            }
            for m in filt.members() {
                let chi = characteristic_fn(&sp, &m.complement()).unwrap();
                let zero = NonNegFn::zero(&sp);
                assert!(rho.contains(chi.as_fn(), zero.as_fn()).unwrap());
                assert_eq!(chi.agreement_set(zero.as_fn()).unwrap(), m);
            }
        }
    }

    #[test]
    fn diagonal_returns_principal_filter_at_top() {
        let sp = power3();
        assert_eq!(
            Congruence::diagonal(&sp).e_of().unwrap(),
            ZFilter::at_top(&sp)
        );
        let rho_a = Congruence::fixed(&sp, "a").unwrap();
        assert_eq!(
            rho_a.e_of().unwrap().core(),
            sp.subset_from_labels(&["a"]).unwrap()
        );
    }

    #[test]
    fn collapse_is_rejected_by_e_of_and_not_z() {
        let sp = power3();
        let k = Congruence::collapse_nonzero(&sp);
        let err = k.e_of().unwrap_err();
        assert!(matches!(err, Error::NotCancellative(_)));
        assert!(err.to_string().contains("(f+1, f)"));

        let report = k.z_congruence_report();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert!(k.contains(w.related.0.as_fn(), w.related.1.as_fn()).unwrap());
        assert!(!k.contains(w.unrelated.0.as_fn(), w.unrelated.1.as_fn()).unwrap());
        assert_eq!(
            w.related.0.agreement_set(w.related.1.as_fn()).unwrap(),
            w.unrelated.0.agreement_set(w.unrelated.1.as_fn()).unwrap()
        );

        for rho in Congruence::enumerate_z(&sp) {
            assert!(rho.is_z_congruence());
        }
    }

    #[test]
    fn collapse_compatibility_on_one_atom_space() {
        // without zero divisors the collapse relation is a genuine congruence
        let sp = one_atom();
        let k = Congruence::collapse_nonzero(&sp);
        let fns = ValueGrid::default().functions(&sp);
        for f in &fns {
            for g in &fns {
                for h in &fns {
                    for j in &fns {
                        let fg = k.contains(f.as_fn(), g.as_fn()).unwrap();
                        let hj = k.contains(h.as_fn(), j.as_fn()).unwrap();
                        if fg && hj {
                            let sum_l = f.add(h).unwrap();
                            let sum_r = g.add(j).unwrap();
                            assert!(k.contains(sum_l.as_fn(), sum_r.as_fn()).unwrap());
                            let mul_l = f.mul(h).unwrap();
                            let mul_r = g.mul(j).unwrap();
                            assert!(k.contains(mul_l.as_fn(), mul_r.as_fn()).unwrap());
                        }
                    }
                }
            }
        }
        // non-cancellative: (f+1, f) related, (1, 0) not
        let one = NonNegFn::one(&sp);
        let f = nn(&sp, &[(1, 2)]);
        let fp1 = f.add(&one).unwrap();
        assert!(k.contains(fp1.as_fn(), f.as_fn()).unwrap());
        assert!(!k.contains(one.as_fn(), NonNegFn::zero(&sp).as_fn()).unwrap());
    }

    #[test]
    fn collapse_multiplicative_compatibility_needs_no_zero_divisors() {
        // on two atoms the relation stops being a congruence: a diagonal
        // pair times a related pair can collapse one side to zero
        let sp: SpaceRef =
            Arc::new(SigmaAlgebra::power_set(vec!["a".into(), "b".into()]).unwrap());
        let k = Congruence::collapse_nonzero(&sp);
        let f1 = nn(&sp, &[(1, 1), (0, 1)]);
        let f2 = nn(&sp, &[(0, 1), (1, 1)]);
        let g2 = nn(&sp, &[(1, 1), (1, 1)]);
        assert!(k.contains(f1.as_fn(), f1.as_fn()).unwrap());
        assert!(k.contains(f2.as_fn(), g2.as_fn()).unwrap());
        let prod_l = f1.mul(&f2).unwrap();
        let prod_r = f1.mul(&g2).unwrap();
        assert!(!k.contains(prod_l.as_fn(), prod_r.as_fn()).unwrap());
    }

    #[test]
    fn twisted_product_examples() {
        let sp: SpaceRef =
            Arc::new(SigmaAlgebra::power_set(vec!["a".into(), "b".into()]).unwrap());
        let e1 = nn(&sp, &[(1, 1), (0, 1)]);
        let e2 = nn(&sp, &[(0, 1), (1, 1)]);
        let (l, r) = twisted_product((&e1, &e2), (&e1, &e2)).unwrap();
        assert_eq!(l, nn(&sp, &[(1, 1), (1, 1)]).into_fn());
        assert_eq!(r, nn(&sp, &[(0, 1), (0, 1)]).into_fn());

        // identity pair (1, 0)
        let one = NonNegFn::one(&sp);
        let zero = NonNegFn::zero(&sp);
        let f = nn(&sp, &[(1, 2), (2, 1)]);
        let g = nn(&sp, &[(2, 1), (1, 2)]);
        let (l, r) = twisted_product((&f, &g), (&one, &zero)).unwrap();
        assert_eq!(l, *f.as_fn());
        assert_eq!(r, *g.as_fn());
    }

    #[test]
    fn twisted_union_identity_on_grid_sample() {
        let sp: SpaceRef =
            Arc::new(SigmaAlgebra::power_set(vec!["a".into(), "b".into()]).unwrap());
        let grid = ValueGrid::default();
        let fns = grid.functions(&sp);
        for f1 in fns.iter().step_by(3) {
            for g1 in fns.iter().step_by(3) {
                for f2 in fns.iter().step_by(5) {
                    for g2 in fns.iter().step_by(5) {
                        let (l, r) = twisted_product((f1, g1), (f2, g2)).unwrap();
                        let union = f1
                            .agreement_set(g1.as_fn())
                            .unwrap()
                            .union(&f2.agreement_set(g2.as_fn()).unwrap());
                        assert_eq!(l.agreement_set(&r).unwrap(), union);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_reports_agree_with_atom_cores() {
        let sp = power3();
        let grid = ValueGrid::default();
        for rho in Congruence::enumerate_z(&sp) {
            let report = rho.prime_report(&grid, 48).unwrap();
            assert!(report.routes_agree, "core {:?}", rho.core());
            let expected = match rho.kind() {
                CongruenceKind::Universal => true,
                _ => sp.atoms().contains(&rho.core().unwrap()),
            };
            assert_eq!(report.prime, expected);
        }
        let rho_x = Congruence::fixed(&sp, "b").unwrap();
        assert!(rho_x.prime_report(&grid, 48).unwrap().prime);
        let ab = Congruence::from_core(&sp, sp.subset_from_labels(&["a", "b"]).unwrap())
            .unwrap();
        let rep = ab.prime_report(&grid, 48).unwrap();
        assert!(!rep.prime);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn prime_equivalences_agree_on_all_z_congruences() {
        let sp = power3();
        let grid = ValueGrid::default();
        for rho in Congruence::enumerate_z(&sp) {
            let eq = rho.prime_equivalences(&grid, 32).unwrap();
            assert!(eq.all_agree, "core {:?}: {eq:?}", rho.core());
        }
    }

    #[test]
    fn maximality_examples() {
        let sp = power3();
        assert!(Congruence::fixed(&sp, "a").unwrap().is_maximal());
        assert!(!Congruence::diagonal(&sp).is_maximal());
        assert!(!Congruence::universal(&sp).is_maximal());
        let maximal: Vec<Congruence> = Congruence::enumerate_z(&sp)
            .into_iter()
            .filter(Congruence::is_maximal)
            .collect();
        assert_eq!(maximal.len(), sp.atom_count());
        // inclusion scan: nothing proper sits strictly above a maximal one
        for m in &maximal {
            for other in Congruence::enumerate_z(&sp) {
                if other.kind() != CongruenceKind::Universal
                    && m.is_subcongruence_of(&other).unwrap()
                    && other != *m
                {
                    panic!("proper congruence strictly above a maximal one");
                }
            }
        }
        // maximal ⟺ prime among proper z-congruences
        let grid = ValueGrid::default();
        for rho in Congruence::enumerate_z(&sp) {
            if rho.kind() == CongruenceKind::Universal {
                continue;
            }
            let prime = rho.prime_report(&grid, 32).unwrap().prime;
            assert_eq!(prime, rho.is_maximal());
        }
    }

    #[test]
    fn fixed_congruences_and_separation() {
        let sp = power3();
        let rhos: Vec<Congruence> = ["a", "b", "c"]
            .iter()
            .map(|p| Congruence::fixed(&sp, p).unwrap())
            .collect();
        assert_eq!(rhos.len(), 3);
        for (i, r1) in rhos.iter().enumerate() {
            assert!(r1.is_maximal());
            for r2 in rhos.iter().skip(i + 1) {
                assert_ne!(r1, r2);
            }
        }
        let coarse: SpaceRef = Arc::new(
            SigmaAlgebra::generate(
                vec!["a".into(), "b".into(), "c".into()],
                &[vec!["a".into()]],
            )
            .unwrap(),
        );
        assert_eq!(
            Congruence::fixed(&coarse, "b").unwrap(),
            Congruence::fixed(&coarse, "c").unwrap()
        );
        assert!(matches!(
            Congruence::fixed(&sp, "zz"),
            Err(Error::UnknownPoint(_))
        ));
    }

    #[test]
    fn z_meet_and_join_examples() {
        let sp = power3();
        let ra = Congruence::fixed(&sp, "a").unwrap();
        let rb = Congruence::fixed(&sp, "b").unwrap();
        let meet = Congruence::z_meet(&[ra.clone(), rb.clone()]).unwrap();
        assert_eq!(meet.core().unwrap(), sp.subset_from_labels(&["a", "b"]).unwrap());
        let join = ra.z_join(&rb).unwrap();
        assert_eq!(join.kind(), CongruenceKind::Universal);
        let univ = Congruence::universal(&sp);
        assert_eq!(Congruence::z_meet(&[ra.clone(), univ]).unwrap(), ra);

        // meet membership matches intersected predicates on a grid sample
        let fns = ValueGrid::default().functions(&sp);
        for f in fns.iter().step_by(11) {
            for g in fns.iter().step_by(11) {
                let in_meet = meet.contains(f.as_fn(), g.as_fn()).unwrap();
                let in_both = ra.contains(f.as_fn(), g.as_fn()).unwrap()
                    && rb.contains(f.as_fn(), g.as_fn()).unwrap();
                assert_eq!(in_meet, in_both);
            }
        }
    }

    #[test]
    fn m_frak_is_intersection_of_maximal_congruences() {
        let sp = power3();
        let fns = ValueGrid::default().functions(&sp);
        let maximal = Congruence::enumerate_maximal(&sp);
        for f in fns.iter().step_by(7) {
            for g in fns.iter().step_by(7) {
                let m = Congruence::m_frak(f, g).unwrap();
                let containing: Vec<Congruence> = maximal
                    .iter()
                    .filter(|rho| rho.contains(f.as_fn(), g.as_fn()).unwrap())
                    .cloned()
                    .collect();
                let expected = if containing.is_empty() {
                    Congruence::universal(&sp)
                } else {
                    Congruence::z_meet(&containing).unwrap()
                };
                assert_eq!(m, expected);
            }
        }
        // frozen examples
        let f = nn(&sp, &[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(Congruence::m_frak(&f, &f).unwrap(), Congruence::diagonal(&sp));
        let g = nn(&sp, &[(1, 1), (0, 1), (0, 1)]);
        let m = Congruence::m_frak(&f, &g).unwrap();
        assert_eq!(m, Congruence::fixed(&sp, "a").unwrap());
        let h = nn(&sp, &[(2, 1), (3, 1), (4, 1)]);
        assert_eq!(
            Congruence::m_frak(&f, &h).unwrap(),
            Congruence::universal(&sp)
        );
    }

    #[test]
    fn z_closure_property_characterizes_z_congruences() {
        // (f,g) ∈ ρ forces 𝔐(f,g) ⊆ ρ for filter-kind congruences
        let sp = power3();
        let fns = ValueGrid::default().functions(&sp);
        for rho in Congruence::enumerate_z(&sp) {
            for f in fns.iter().step_by(13) {
                for g in fns.iter().step_by(13) {
                    if rho.contains(f.as_fn(), g.as_fn()).unwrap() {
                        let m = Congruence::m_frak(f, g).unwrap();
                        assert!(m.is_subcongruence_of(&rho).unwrap());
                    }
                }
            }
        }
        // converse: the collapse relation (the one non-z member of the
        // universe) violates the closure property
        let k = Congruence::collapse_nonzero(&sp);
        let one = NonNegFn::one(&sp);
        let f = nn(&sp, &[(1, 1), (2, 1), (3, 1)]);
        let fp1 = f.add(&one).unwrap();
        assert!(k.contains(fp1.as_fn(), f.as_fn()).unwrap());
        let m = Congruence::m_frak(&fp1, &f).unwrap();
        assert_eq!(m.kind(), CongruenceKind::Universal);
        // the universal relation is not inside k: (1, 0) separates them
        let zero = NonNegFn::zero(&sp);
        assert!(m.contains(one.as_fn(), zero.as_fn()).unwrap());
        assert!(!k.contains(one.as_fn(), zero.as_fn()).unwrap());
    }

    #[test]
    fn nabla_delta_round_trips_and_ideal_correspondence() {
        let sp = power3();
        for rho in Congruence::enumerate_z(&sp) {
            let ring = delta(&rho).unwrap();
            assert_eq!(ring.core(), rho.core().unwrap());
            assert_eq!(ring.nabla(), rho);
        }
        for ideal in IdealCore::enumerate(&sp, Side::Ring) {
            let ring = RingCongruence::new(ideal.clone()).unwrap();
            let rho = ring.nabla();
            assert_eq!(delta(&rho).unwrap(), ring);
        }
        // 𝓘₊ and 𝓚₊ are mutually inverse
        for ideal in IdealCore::enumerate(&sp, Side::Semiring) {
            let rho = ideal_to_congruence(&ideal).unwrap();
            assert_eq!(congruence_to_ideal(&rho).unwrap(), ideal);
        }
        for rho in Congruence::enumerate_z(&sp) {
            let ideal = congruence_to_ideal(&rho).unwrap();
            assert_eq!(ideal_to_congruence(&ideal).unwrap(), rho);
        }
        // improper ideal corresponds to the universal congruence
        let improper = IdealCore::improper(&sp, Side::Semiring);
        assert_eq!(
            ideal_to_congruence(&improper).unwrap().kind(),
            CongruenceKind::Universal
        );
    }

    #[test]
    fn delta_of_fixed_congruence_is_ring_congruence_of_fixed_ideal() {
        let sp = power3();
        let rho_b = Congruence::fixed(&sp, "b").unwrap();
        let ring = delta(&rho_b).unwrap();
        let mb = IdealCore::fixed_maximal(&sp, "b", Side::Ring).unwrap();
        assert_eq!(*ring.ideal(), mb);

        // element-level: the cone pair (h,k) with h−k = f−g matches the
        // grid membership of the ring congruence
        let grid = ValueGrid::default();
        let fns = grid.ring_functions(&sp);
        for f in fns.iter().step_by(37) {
            for g in fns.iter().step_by(37) {
                let h = NonNegFn::new(f.sub(&f.meet(g).unwrap()).unwrap()).unwrap();
                let k = NonNegFn::new(g.sub(&f.meet(g).unwrap()).unwrap()).unwrap();
                assert_eq!(
                    f.sub(g).unwrap(),
                    h.as_fn().sub(k.as_fn()).unwrap()
                );
                assert_eq!(
                    ring.contains(f, g).unwrap(),
                    rho_b.contains(h.as_fn(), k.as_fn()).unwrap()
                );
            }
        }
    }

    #[test]
    fn every_ring_congruence_restricts_to_a_z_congruence() {
        let sp = power3();
        let grid = ValueGrid::default();
        let fns = grid.ring_functions(&sp);
        for ideal in IdealCore::enumerate(&sp, Side::Ring) {
            let k = RingCongruence::new(ideal).unwrap();
            // z-property on the ring side: agreement set in E(k) forces
            // membership; E(k) members are supersets of the core
            for f in fns.iter().step_by(41) {
                for g in fns.iter().step_by(41) {
                    let e = f.agreement_set(g).unwrap();
                    if k.core().is_subset_of(&e) {
                        assert!(k.contains(f, g).unwrap());
                    }
                }
            }
            assert!(k.nabla().is_z_congruence());
        }
    }

    #[test]
    fn zeroth_class_of_fixed_congruence_is_fixed_ideal() {
        let sp = power3();
        let rho_a = Congruence::fixed(&sp, "a").unwrap();
        let ideal = congruence_to_ideal(&rho_a).unwrap();
        assert_eq!(ideal, IdealCore::fixed_maximal(&sp, "a", Side::Semiring).unwrap());
        // zeroth-class scan on the grid
        let zero = NonNegFn::zero(&sp);
        for f in ValueGrid::default().functions(&sp) {
            assert_eq!(
                rho_a.contains(f.as_fn(), zero.as_fn()).unwrap(),
                ideal.contains(f.as_fn()).unwrap()
            );
        }
    }
}
