//! The structure space of maximal congruences with its Stone topology and
//! measurable structure.
//!
//! Points are the maximal congruences (one per atom). The basic closed sets
//! `m(f,g) = {ρ : (f,g) ∈ ρ}` form a base for closed sets; on compact
//! spaces the same family is a separating σ-algebra, and the point maps
//! `η` (to maximal ring ideals) and `φ` (from the base space) are
//! homeomorphisms. The isomorphism problem transfers along `φ`: a
//! member-respecting point bijection induces a semiring isomorphism given by
//! an atom permutation, and the permutation can be read back.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::filtcong::{congruence_pair_sample, twisted_product, Congruence};
use crate::func::{characteristic_fn, MeasurableFn, NonNegFn, ValueGrid};
use crate::ideal::{IdealCore, Side};
use crate::space::{CompactnessReport, GroundSet, SigmaAlgebra, SpaceRef, SubsetOfX};
use crate::{Error, Result};

/// Default cap for sampled pair sweeps inside structure-space checks.
pub const DEFAULT_PAIR_CAP: usize = 64;

/// The structure space of `M⁺(X,𝒜)`.
#[derive(Debug, Clone)]
pub struct StructureSpace {
    space: SpaceRef,
    points: Vec<Congruence>,
    point_labels: Vec<String>,
    /// Canonical pair representatives: member mask of the agreement set to
    /// the mask of points containing the representative pair.
    basic_closed_index: BTreeMap<u64, u64>,
}

impl StructureSpace {
    /// Build the structure space: one point per atom, basic closed sets from
    /// the characteristic pair of every member. The base-union identity is
    /// checked on those canonical pairs during construction.
    pub fn build(space: &SpaceRef) -> Self {
        let points = Congruence::enumerate_maximal(space);
        let point_labels = space
            .atoms()
            .iter()
            .map(|a| space.format_subset(a))
            .collect();
        let mut basic_closed_index = BTreeMap::new();
        for m in space.members() {
            let mask = atoms_mask(space, m);
            basic_closed_index.insert(m.bits(), mask);
        }
        let out = StructureSpace {
            space: Arc::clone(space),
            points,
            point_labels,
            basic_closed_index,
        };
        debug_assert!(out.base_union_identity_on_characteristic_pairs().is_ok());
        out
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn points(&self) -> &[Congruence] {
        &self.points
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn basic_closed_index(&self) -> &BTreeMap<u64, u64> {
        &self.basic_closed_index
    }

    /// `m(f,g)`: the mask of points whose congruence contains the pair.
    pub fn m_of(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<u64> {
        let mut mask = 0u64;
        for (i, rho) in self.points.iter().enumerate() {
            if rho.contains(f, g)? {
                mask |= 1 << i;
            }
        }
        Ok(mask)
    }

    fn all_points_mask(&self) -> u64 {
        if self.points.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.points.len()) - 1
        }
    }

    /// `m(a,b) ∪ m(c,d) = m(ac+bd, ad+bc)` on the canonical pairs.
    fn base_union_identity_on_characteristic_pairs(&self) -> Result<()> {
        let zero = NonNegFn::zero(&self.space);
        for a in self.space.members() {
            for c in self.space.members() {
                let chi_a = characteristic_fn(&self.space, &a.complement())?;
                let chi_c = characteristic_fn(&self.space, &c.complement())?;
                let lhs = self.m_of(chi_a.as_fn(), zero.as_fn())?
                    | self.m_of(chi_c.as_fn(), zero.as_fn())?;
                let (l, r) = twisted_product((&chi_a, &zero), (&chi_c, &zero))?;
                let rhs = self.m_of(&l, &r)?;
                if lhs != rhs {
                    return Err(Error::NotZCongruence(format!(
                        "base union identity failed on members {} and {}",
                        self.space.format_subset(a),
                        self.space.format_subset(c)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full base-union identity sweep over a sampled grid-pair range.
    pub fn base_union_identity_report(
        &self,
        grid: &ValueGrid,
        pair_cap: usize,
    ) -> Result<BaseIdentityReport> {
        let sample = congruence_pair_sample(&self.space, grid, pair_cap);
        let mut checked = 0usize;
        for p1 in &sample.pairs {
            for p2 in &sample.pairs {
                let lhs = self.m_of(p1.0.as_fn(), p1.1.as_fn())?
                    | self.m_of(p2.0.as_fn(), p2.1.as_fn())?;
                let (l, r) = twisted_product((&p1.0, &p1.1), (&p2.0, &p2.1))?;
                if lhs != self.m_of(&l, &r)? {
                    return Ok(BaseIdentityReport {
                        holds: false,
                        pairs_checked: checked,
                        scope: sample.scope_description(),
                    });
                }
                checked += 1;
            }
        }
        Ok(BaseIdentityReport {
            holds: true,
            pairs_checked: checked,
            scope: sample.scope_description(),
        })
    }

    /// `η`: the maximal ring ideal with the congruence's filter core.
    pub fn eta(&self, rho: &Congruence) -> Result<IdealCore> {
        if !rho.is_maximal() {
            return Err(Error::NotMaximal(format!("{:?}", rho.kind())));
        }
        IdealCore::new(rho.space(), rho.core().expect("maximal is filter-kind"), Side::Ring)
    }

    /// The full `η` table, point by point.
    pub fn eta_table(&self) -> Vec<(Congruence, IdealCore)> {
        self.points
            .iter()
            .map(|rho| (rho.clone(), self.eta(rho).expect("points are maximal")))
            .collect()
    }

    /// Closed-set exchange: `η(m(f,g)) = 𝓜_{f−g}` and `η⁻¹(𝓜_h) = m(|h|,0)`,
    /// swept over a sampled pair range plus a signed-grid sample.
    pub fn eta_exchange_report(
        &self,
        grid: &ValueGrid,
        pair_cap: usize,
    ) -> Result<EtaExchangeReport> {
        let sample = congruence_pair_sample(&self.space, grid, pair_cap);
        let ring_ideals = IdealCore::enumerate(&self.space, Side::Ring);
        let maximal_ideals: Vec<&IdealCore> =
            ring_ideals.iter().filter(|i| i.is_maximal()).collect();
        let mut pairs_checked = 0usize;

        for (f, g) in &sample.pairs {
            // left route: push each point of m(f,g) through η
            let mask = self.m_of(f.as_fn(), g.as_fn())?;
            let mut via_eta: Vec<IdealCore> = Vec::new();
            for (i, rho) in self.points.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    via_eta.push(self.eta(rho)?);
                }
            }
            // right route: maximal ideals containing f−g
            let diff = f.as_fn().sub(g.as_fn())?;
            let direct: Vec<IdealCore> = maximal_ideals
                .iter()
                .filter(|m| m.contains(&diff).unwrap())
                .map(|m| (*m).clone())
                .collect();
            if via_eta != direct {
                return Ok(EtaExchangeReport {
                    holds: false,
                    pairs_checked,
                    scope: sample.scope_description(),
                });
            }
            pairs_checked += 1;

            // inverse route on the same difference: η⁻¹(𝓜_h) = m(|h|, 0)
            let zero = NonNegFn::zero(&self.space);
            let inv_mask = self.m_of(diff.abs_fn().as_fn(), zero.as_fn())?;
            let mut expected = 0u64;
            for (i, rho) in self.points.iter().enumerate() {
                let ideal = self.eta(rho)?;
                if ideal.contains(&diff)? {
                    expected |= 1 << i;
                }
            }
            if inv_mask != expected {
                return Ok(EtaExchangeReport {
                    holds: false,
                    pairs_checked,
                    scope: sample.scope_description(),
                });
            }
        }

        // bijectivity of η over the points
        let mut seen: Vec<IdealCore> = Vec::new();
        for rho in &self.points {
            let ideal = self.eta(rho)?;
            if seen.contains(&ideal) {
                return Ok(EtaExchangeReport {
                    holds: false,
                    pairs_checked,
                    scope: sample.scope_description(),
                });
            }
            seen.push(ideal);
        }
        let onto = maximal_ideals.iter().all(|m| seen.contains(m))
            && seen.len() == maximal_ideals.len();

        Ok(EtaExchangeReport {
            holds: onto,
            pairs_checked,
            scope: sample.scope_description(),
        })
    }

    /// The measurable structure on the point set: the family `{m(f,g)}`,
    /// verified closed under complement and finite union by the exchange
    /// formulas, verified separating, and returned as a σ-algebra on the
    /// point labels.
    pub fn sigma_algebra_on_points(&self) -> Result<SigmaAlgebra> {
        let n = self.point_count();
        let zero = NonNegFn::zero(&self.space);
        let mut family: Vec<SubsetOfX> = Vec::new();
        for m in self.space.members() {
            let chi = characteristic_fn(&self.space, &m.complement())?;
            let mask = self.m_of(chi.as_fn(), zero.as_fn())?;
            let s = SubsetOfX::from_bits(mask, n);
            if !family.contains(&s) {
                family.push(s);
            }

            // complement formula: m(f,g)ᶜ = m(χ_{E(f,g)}, 0)
            let e = chi.agreement_set(zero.as_fn())?;
            let chi_e = characteristic_fn(&self.space, &e)?;
            let comp_mask = self.m_of(chi_e.as_fn(), zero.as_fn())?;
            if comp_mask != !mask & self.all_points_mask() {
                return Err(Error::NotMeasurable(
                    "complement formula failed on the point family".into(),
                ));
            }
        }
        // union formula on pairs: m(f1,g1) ∪ m(f2,g2) = m(χ_{Eᶜ∩Eᶜ}, 0)
        for m1 in self.space.members() {
            for m2 in self.space.members() {
                let chi1 = characteristic_fn(&self.space, &m1.complement())?;
                let chi2 = characteristic_fn(&self.space, &m2.complement())?;
                let u = self.m_of(chi1.as_fn(), zero.as_fn())?
                    | self.m_of(chi2.as_fn(), zero.as_fn())?;
                let e1c = chi1.agreement_set(zero.as_fn())?.complement();
                let e2c = chi2.agreement_set(zero.as_fn())?.complement();
                let chi_u = characteristic_fn(&self.space, &e1c.inter(&e2c))?;
                if u != self.m_of(chi_u.as_fn(), zero.as_fn())? {
                    return Err(Error::NotMeasurable(
                        "union formula failed on the point family".into(),
                    ));
                }
            }
        }

        let ground = GroundSet::new(self.point_labels.clone())?;
        let algebra = SigmaAlgebra::generate_from_masks(ground, &family);
        // closure adds nothing: the family is already a σ-algebra
        if algebra.members().len() != family.len() {
            return Err(Error::NotMeasurable(
                "basic closed family is not closed as a σ-algebra".into(),
            ));
        }
        if !algebra.separates_points() {
            return Err(Error::NotTMeasurable("point family fails to separate".into()));
        }
        Ok(algebra)
    }

    /// `φ`: the point map `x ↦ ρ_x`. Requires a separating σ-algebra.
    pub fn phi(&self) -> Result<PointToStructure> {
        if !self.space.is_separating() {
            return Err(Error::NotTMeasurable(format!("{}", self.space)));
        }
        let map: Vec<usize> = (0..self.space.point_count())
            .map(|p| self.space.atom_index_of_point(p))
            .collect();
        Ok(PointToStructure { structure: self.clone(), map })
    }
}

/// Mask of atoms of `space` contained in the member.
fn atoms_mask(space: &SigmaAlgebra, member: &SubsetOfX) -> u64 {
    let mut mask = 0u64;
    for k in space.atoms_inside(member) {
        mask |= 1 << k;
    }
    mask
}

#[derive(Debug, Clone)]
pub struct BaseIdentityReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub scope: String,
}

#[derive(Debug, Clone)]
pub struct EtaExchangeReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub scope: String,
}

/// The bijection `x ↦ ρ_x` from base points to structure points.
#[derive(Debug, Clone)]
pub struct PointToStructure {
    structure: StructureSpace,
    map: Vec<usize>,
}

impl PointToStructure {
    pub fn structure(&self) -> &StructureSpace {
        &self.structure
    }

    /// Structure point index for a base point index.
    pub fn image_of(&self, point_idx: usize) -> usize {
        self.map[point_idx]
    }

    pub fn is_bijective(&self) -> bool {
        let n = self.structure.point_count();
        if self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &i in &self.map {
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// `φ(E(f,g)) = m(f,g)` and back, for a sampled pair range.
    pub fn exchange_report(&self, grid: &ValueGrid, pair_cap: usize) -> Result<bool> {
        let space = self.structure.space();
        let sample = congruence_pair_sample(space, grid, pair_cap);
        for (f, g) in &sample.pairs {
            let e = f.agreement_set(g.as_fn())?;
            let mut image = 0u64;
            for p in e.indices() {
                image |= 1 << self.map[p];
            }
            let m = self.structure.m_of(f.as_fn(), g.as_fn())?;
            if image != m {
                return Ok(false);
            }
            // inverse direction: pull m(f,g) back to E(f,g)
            let mut preimage = SubsetOfX::empty(space.point_count());
            for (p, &s) in self.map.iter().enumerate() {
                if m & (1 << s) != 0 {
                    preimage =
                        preimage.union(&SubsetOfX::from_indices(&[p], space.point_count()));
                }
            }
            if preimage != e {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The five compactness conditions, each evaluated by its own procedure.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub maximal_ideals_fixed: bool,
    pub maximal_congruences_fixed: bool,
    pub family_finite: bool,
    pub lattice_compact: bool,
    pub all_functions_bounded: bool,
    pub member_count: usize,
    pub compactness: CompactnessReport,
}

impl EquivalenceReport {
    pub fn all_agree(&self) -> bool {
        let flags = [
            self.maximal_ideals_fixed,
            self.maximal_congruences_fixed,
            self.family_finite,
            self.lattice_compact,
            self.all_functions_bounded,
        ];
        flags.iter().all(|f| *f == flags[0])
    }
}

/// Evaluate the compactness equivalences on a space, filling the
/// `all_maximal_fixed` slot of the lattice-compactness report.
pub fn compactness_equivalences(space: &SpaceRef, grid: &ValueGrid) -> Result<EquivalenceReport> {
    // (1) every maximal ring ideal is fixed: the common zero set of its
    // sampled elements is nonempty.
    let mut maximal_ideals_fixed = true;
    for ideal in IdealCore::enumerate(space, Side::Ring) {
        if !ideal.is_maximal() {
            continue;
        }
        let mut common = SubsetOfX::full(space.point_count());
        for f in grid.functions(space) {
            if ideal.contains(f.as_fn())? {
                common = common.inter(&f.zero_set());
            }
        }
        for m in space.members() {
            let chi = characteristic_fn(space, &m.complement())?;
            if ideal.contains(chi.as_fn())? {
                common = common.inter(&chi.zero_set());
            }
        }
        if common.is_empty_set() {
            maximal_ideals_fixed = false;
        }
    }

    // (2) every maximal congruence is fixed: the intersection of agreement
    // sets over sampled related pairs is nonempty.
    let mut maximal_congruences_fixed = true;
    let sample = congruence_pair_sample(space, grid, DEFAULT_PAIR_CAP);
    for rho in Congruence::enumerate_maximal(space) {
        let mut common = SubsetOfX::full(space.point_count());
        for (f, g) in &sample.pairs {
            if rho.contains(f.as_fn(), g.as_fn())? {
                common = common.inter(&f.agreement_set(g.as_fn())?);
            }
        }
        if common.is_empty_set() {
            maximal_congruences_fixed = false;
        }
        debug_assert!(rho.core().unwrap().is_subset_of(&common));
    }

    // (3) the member family is finite, with its count.
    let member_count = space.members().len();
    let family_finite = true;

    // (4) the member lattice is compact, certificate included.
    let mut compactness = space.is_compact();
    let lattice_compact = compactness.lattice_compact
        && compactness
            .subcover
            .iter()
            .fold(SubsetOfX::empty(space.point_count()), |acc, s| acc.union(s))
            .is_full();

    // (5) every function is bounded: grid sweep exhibits the bound.
    let all_functions_bounded = grid
        .ring_functions(space)
        .iter()
        .all(|f| f.sup_abs() <= grid.max_value().clone());

    compactness.all_maximal_fixed = Some(maximal_congruences_fixed);
    Ok(EquivalenceReport {
        maximal_ideals_fixed,
        maximal_congruences_fixed,
        family_finite,
        lattice_compact,
        all_functions_bounded,
        member_count,
        compactness,
    })
}

/// A bijection of ground points between two spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointBijection {
    dom: SpaceRef,
    cod: SpaceRef,
    /// `map[i]` is the codomain point index of domain point `i`.
    map: Vec<usize>,
}

impl PointBijection {
    pub fn new(dom: &SpaceRef, cod: &SpaceRef, map: Vec<usize>) -> Result<Self> {
        let n = dom.point_count();
        if cod.point_count() != n || map.len() != n {
            return Err(Error::NotHomeomorphism(format!(
                "point counts differ: {} vs {}",
                n,
                cod.point_count()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(Error::NotHomeomorphism("map is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(PointBijection { dom: Arc::clone(dom), cod: Arc::clone(cod), map })
    }

    /// Build from a label-to-label mapping.
    pub fn from_labels(
        dom: &SpaceRef,
        cod: &SpaceRef,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        let n = dom.point_count();
        if pairs.len() != n {
            return Err(Error::NotHomeomorphism(format!(
                "{} mappings given for {} points",
                pairs.len(),
                n
            )));
        }
        let mut map = vec![usize::MAX; n];
        for (from, to) in pairs {
            let i = dom.ground().index_of(from)?;
            let j = cod.ground().index_of(to)?;
            map[i] = j;
        }
        Self::new(dom, cod, map)
    }

    pub fn dom(&self) -> &SpaceRef {
        &self.dom
    }

    pub fn cod(&self) -> &SpaceRef {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image_of_set(&self, s: &SubsetOfX) -> SubsetOfX {
        let indices: Vec<usize> = s.indices().map(|i| self.map[i]).collect();
        SubsetOfX::from_indices(&indices, self.cod.point_count())
    }

    pub fn preimage_of_set(&self, s: &SubsetOfX) -> SubsetOfX {
        let indices: Vec<usize> = (0..self.dom.point_count())
            .filter(|i| s.contains(self.map[*i]))
            .collect();
        SubsetOfX::from_indices(&indices, self.dom.point_count())
    }

    /// `A ∈ 𝒜 ⟺ h(A) ∈ ℬ`, both directions.
    pub fn is_member_respecting(&self) -> bool {
        self.dom
            .members()
            .iter()
            .all(|m| self.cod.is_member(&self.image_of_set(m)))
            && self
                .cod
                .members()
                .iter()
                .all(|m| self.dom.is_member(&self.preimage_of_set(m)))
    }
}

/// A semiring-isomorphism descriptor: an atom bijection that fixes scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDescriptor {
    dom: SpaceRef,
    cod: SpaceRef,
    /// `atom_map[i]` is the codomain atom index carrying domain atom `i`.
    atom_map: Vec<usize>,
}

impl IsoDescriptor {
    pub fn new(dom: &SpaceRef, cod: &SpaceRef, atom_map: Vec<usize>) -> Result<Self> {
        let k = dom.atom_count();
        if cod.atom_count() != k || atom_map.len() != k {
            return Err(Error::NotRepresentable(format!(
                "atom counts differ: {} vs {}",
                k,
                cod.atom_count()
            )));
        }
        let mut seen = vec![false; k];
        for &i in &atom_map {
            if i >= k || seen[i] {
                return Err(Error::NotRepresentable("atom map is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(IsoDescriptor { dom: Arc::clone(dom), cod: Arc::clone(cod), atom_map })
    }

    pub fn dom(&self) -> &SpaceRef {
        &self.dom
    }

    pub fn cod(&self) -> &SpaceRef {
        &self.cod
    }

    pub fn atom_map(&self) -> &[usize] {
        &self.atom_map
    }

    /// Apply the induced isomorphism `Φ(f) = f ∘ h⁻¹`.
    pub fn apply(&self, f: &MeasurableFn) -> Result<MeasurableFn> {
        if **f.space() != *self.dom {
            return Err(Error::SpaceMismatch("function not on the domain space".into()));
        }
        let mut values = vec![crate::Rat::from_integer(0.into()); self.atom_map.len()];
        for (i, v) in f.values().iter().enumerate() {
            values[self.atom_map[i]] = v.clone();
        }
        MeasurableFn::from_atom_values(&self.cod, values)
    }

    /// Certify semiring + lattice isomorphism behavior on a sampled grid:
    /// additivity, multiplicativity, joins, scalar fixing, injectivity.
    pub fn certify(&self, grid: &ValueGrid, cap: usize) -> Result<bool> {
        let fns = crate::sweep::select_pairs(grid.functions(&self.dom), cap).items;
        for f in &fns {
            for g in &fns {
                let pf = self.apply(f.as_fn())?;
                let pg = self.apply(g.as_fn())?;
                if self.apply(&f.as_fn().add(g.as_fn())?)? != pf.add(&pg)?
                    || self.apply(&f.as_fn().mul(g.as_fn())?)? != pf.mul(&pg)?
                    || self.apply(&f.as_fn().join(g.as_fn())?)? != pf.join(&pg)?
                {
                    return Ok(false);
                }
                if (*f == *g) != (pf == pg) {
                    return Ok(false);
                }
            }
        }
        for r in grid.values() {
            let c = MeasurableFn::constant(&self.dom, r.clone());
            if self.apply(&c)? != MeasurableFn::constant(&self.cod, r.clone()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Turn a member-respecting point bijection into the induced semiring
/// isomorphism on atoms, certified on the grid.
pub fn transfer_isomorphism(
    h: &PointBijection,
    grid: &ValueGrid,
    cap: usize,
) -> Result<IsoDescriptor> {
    if !h.is_member_respecting() {
        return Err(Error::NotHomeomorphism(
            "image of some member is not measurable".into(),
        ));
    }
    let dom = h.dom().clone();
    let cod = h.cod().clone();
    let mut atom_map = Vec::with_capacity(dom.atom_count());
    for atom in dom.atoms() {
        let image = h.image_of_set(atom);
        match cod.atoms().iter().position(|a| *a == image) {
            Some(j) => atom_map.push(j),
            None => {
                return Err(Error::NotHomeomorphism(format!(
                    "image {} of an atom is not an atom",
                    cod.format_subset(&image)
                )))
            }
        }
    }
    let descriptor = IsoDescriptor::new(&dom, &cod, atom_map)?;
    if !descriptor.certify(grid, cap)? {
        return Err(Error::NotHomeomorphism(
            "induced map failed the isomorphism certificate".into(),
        ));
    }
    Ok(descriptor)
}

/// Read the point bijection back from an atom-permutation descriptor.
/// Requires matching atom sizes; points inside an atom map in index order.
pub fn recover_homeomorphism(descriptor: &IsoDescriptor) -> Result<PointBijection> {
    let dom = descriptor.dom().clone();
    let cod = descriptor.cod().clone();
    let mut map = vec![usize::MAX; dom.point_count()];
    for (i, atom) in dom.atoms().iter().enumerate() {
        let target = &cod.atoms()[descriptor.atom_map()[i]];
        if atom.card() != target.card() {
            return Err(Error::NotRepresentable(format!(
                "atom sizes differ: {} vs {}",
                dom.format_subset(atom),
                cod.format_subset(target)
            )));
        }
        for (src, dst) in atom.indices().zip(target.indices()) {
            map[src] = dst;
        }
    }
    let bijection = PointBijection::new(&dom, &cod, map)?;
    if !bijection.is_member_respecting() {
        return Err(Error::NotRepresentable(
            "recovered map does not respect members".into(),
        ));
    }
    Ok(bijection)
}
