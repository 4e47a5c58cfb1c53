//! Finite measurable spaces: ground sets, σ-algebras, atoms, compactness.
//!
//! A σ-algebra on a finite ground set is fully determined by its atom
//! partition: members are exactly the unions of atoms, so `|members| =
//! 2^#atoms`. Construction computes atoms as intersection classes of the
//! generators; the closure property is then structural rather than iterated.
//!
//! All values are immutable after construction and safe to share across
//! threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Maximum number of points a ground set may carry (subsets are `u64` masks).
pub const MAX_POINTS: usize = 64;

/// An ordered list of distinct point names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidGroundSet("no points given".into()));
        }
        if labels.len() > MAX_POINTS {
            return Err(Error::InvalidGroundSet(format!(
                "{} points exceeds the supported maximum of {MAX_POINTS}",
                labels.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidGroundSet(format!("duplicate label {l:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: n ≥ 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }
}

/// A subset of the ground set, as a membership mask over point indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetOfX {
    bits: u64,
    len: usize,
}

impl SubsetOfX {
    pub fn empty(len: usize) -> Self {
        SubsetOfX { bits: 0, len }
    }

    pub fn full(len: usize) -> Self {
        SubsetOfX { bits: mask_of_len(len), len }
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        SubsetOfX { bits: bits & mask_of_len(len), len }
    }

    pub fn from_indices(indices: &[usize], len: usize) -> Self {
        let mut bits = 0u64;
        for &i in indices {
            assert!(i < len, "point index {i} out of range for {len} points");
            bits |= 1 << i;
        }
        SubsetOfX { bits, len }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of points in the ground set (not in the subset).
    pub fn ground_len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, idx: usize) -> bool {
        idx < self.len && self.bits & (1 << idx) != 0
    }

    pub fn is_empty_set(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == mask_of_len(self.len)
    }

    pub fn card(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        SubsetOfX { bits: self.bits | other.bits, len: self.len }
    }

    pub fn inter(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        SubsetOfX { bits: self.bits & other.bits, len: self.len }
    }

    pub fn complement(&self) -> Self {
        SubsetOfX { bits: !self.bits & mask_of_len(self.len), len: self.len }
    }

    pub fn minus(&self, other: &Self) -> Self {
        SubsetOfX { bits: self.bits & !other.bits, len: self.len }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.contains(*i))
    }

    /// Canonical ordering key: (cardinality, numeric mask). All member
    /// enumerations and serialized outputs sort by this key.
    pub fn canonical_key(&self) -> (usize, u64) {
        (self.card(), self.bits)
    }
}

fn mask_of_len(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A σ-algebra on a finite ground set, with its atom partition.
///
/// Invariants established at construction:
/// - `∅` and `X` are members; members are closed under complement and union;
/// - atoms are pairwise disjoint, nonempty, cover `X`;
/// - members are exactly the unions of atoms (`|members| = 2^#atoms`);
/// - `separating` is true iff every atom is a singleton.
#[derive(Debug, Clone)]
pub struct SigmaAlgebra {
    ground: GroundSet,
    members: Vec<SubsetOfX>,
    atoms: Vec<SubsetOfX>,
    atom_of_point: Vec<usize>,
    member_set: BTreeMap<u64, usize>,
    separating: bool,
}

impl PartialEq for SigmaAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SigmaAlgebra {}

impl SigmaAlgebra {
    /// Generate the smallest σ-algebra containing the given generator sets.
    ///
    /// Atoms are the intersection classes of the generators (two points fall
    /// in the same atom iff no generator distinguishes them); members are all
    /// unions of atoms in canonical (cardinality, mask) order.
    pub fn generate(points: Vec<String>, generators: &[Vec<String>]) -> Result<Self> {
        let ground = GroundSet::new(points)?;
        let mut gen_masks = Vec::with_capacity(generators.len());
        for g in generators {
            let mut s = SubsetOfX::empty(ground.len());
            for label in g {
                let idx = ground.index_of(label)?;
                s = s.union(&SubsetOfX::from_indices(&[idx], ground.len()));
            }
            gen_masks.push(s);
        }
        Ok(Self::generate_from_masks(ground, &gen_masks))
    }

    /// Mask-level constructor; generators must live on the given ground set.
    pub fn generate_from_masks(ground: GroundSet, generators: &[SubsetOfX]) -> Self {
        let n = ground.len();
        // Signature of a point: which generators contain it. Equal signature
        // means no generator (hence no generated member) separates the pair.
        let mut signature: Vec<Vec<bool>> = vec![Vec::with_capacity(generators.len()); n];
        for g in generators {
            for (i, sig) in signature.iter_mut().enumerate() {
                sig.push(g.contains(i));
            }
        }
        let mut atoms: Vec<SubsetOfX> = Vec::new();
        let mut atom_of_point = vec![usize::MAX; n];
        for i in 0..n {
            if atom_of_point[i] != usize::MAX {
                continue;
            }
            let mut atom = SubsetOfX::empty(n);
            for j in i..n {
                if signature[j] == signature[i] {
                    atom = atom.union(&SubsetOfX::from_indices(&[j], n));
                }
            }
            let k = atoms.len();
            for j in atom.indices() {
                atom_of_point[j] = k;
            }
            atoms.push(atom);
        }
        atoms.sort_by_key(SubsetOfX::canonical_key);
        let mut atom_of_point = vec![usize::MAX; n];
        for (k, atom) in atoms.iter().enumerate() {
            for j in atom.indices() {
                atom_of_point[j] = k;
            }
        }

        let mut members: Vec<SubsetOfX> = Vec::with_capacity(1 << atoms.len());
        for pick in 0u64..(1u64 << atoms.len()) {
            let mut m = SubsetOfX::empty(n);
            for (k, atom) in atoms.iter().enumerate() {
                if pick & (1 << k) != 0 {
                    m = m.union(atom);
                }
            }
            members.push(m);
        }
        members.sort_by_key(SubsetOfX::canonical_key);
        let member_set = members.iter().enumerate().map(|(i, m)| (m.bits(), i)).collect();
        let separating = atoms.iter().all(|a| a.card() == 1);
        SigmaAlgebra { ground, members, atoms, atom_of_point, member_set, separating }
    }

    /// The full power set on the given labels (the finest σ-algebra).
    pub fn power_set(points: Vec<String>) -> Result<Self> {
        let singletons: Vec<Vec<String>> = points.iter().map(|p| vec![p.clone()]).collect();
        Self::generate(points, &singletons)
    }

    /// All σ-algebras on the given ground set, one per partition of it,
    /// in a deterministic order (restricted-growth-string enumeration).
    pub fn enumerate_all(points: Vec<String>) -> Result<Vec<Self>> {
        let ground = GroundSet::new(points)?;
        let n = ground.len();
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        loop {
            let blocks = rgs.iter().copied().max().unwrap() + 1;
            let mut gens = Vec::with_capacity(blocks);
            for b in 0..blocks {
                let idxs: Vec<usize> =
                    (0..n).filter(|i| rgs[*i] == b).collect();
                gens.push(SubsetOfX::from_indices(&idxs, n));
            }
            out.push(Self::generate_from_masks(ground.clone(), &gens));
            // next restricted growth string
            let mut i = n;
            loop {
                if i == 1 {
                    return Ok(out);
                }
                i -= 1;
                let cap = rgs[..i].iter().copied().max().unwrap() + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for r in rgs.iter_mut().skip(i + 1) {
                        *r = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn point_count(&self) -> usize {
        self.ground.len()
    }

    pub fn members(&self) -> &[SubsetOfX] {
        &self.members
    }

    pub fn atoms(&self) -> &[SubsetOfX] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_member(&self, s: &SubsetOfX) -> bool {
        s.ground_len() == self.ground.len() && self.member_set.contains_key(&s.bits())
    }

    /// Index of a member in the canonical order.
    pub fn member_index(&self, s: &SubsetOfX) -> Option<usize> {
        self.member_set.get(&s.bits()).copied()
    }

    /// The atom containing the named point: the intersection of all members
    /// containing it.
    pub fn atom_of(&self, point: &str) -> Result<SubsetOfX> {
        let idx = self.ground.index_of(point)?;
        Ok(self.atoms[self.atom_of_point[idx]])
    }

    pub fn atom_index_of_point(&self, point_idx: usize) -> usize {
        self.atom_of_point[point_idx]
    }

    /// Atom index for a labeled point.
    pub fn atom_index_of(&self, point: &str) -> Result<usize> {
        Ok(self.atom_of_point[self.ground.index_of(point)?])
    }

    /// Fresh pairwise scan over all members; the stored `separating` flag is
    /// computed from the atom partition, so the two routes cross-check.
    pub fn separates_points(&self) -> bool {
        let n = self.ground.len();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let separated = self
                    .members
                    .iter()
                    .any(|m| m.contains(x) && !m.contains(y));
                if !separated {
                    return false;
                }
            }
        }
        true
    }

    /// Flag computed at construction: every atom is a singleton.
    pub fn is_separating(&self) -> bool {
        self.separating
    }

    /// Compactness of the member lattice, with a finite-subcover certificate
    /// for the canonical cover of `X` by atoms. `all_maximal_fixed` is left
    /// open here and filled by the structure-space equivalences.
    pub fn is_compact(&self) -> CompactnessReport {
        CompactnessReport {
            finite: true,
            lattice_compact: true,
            subcover: self.atoms.clone(),
            all_maximal_fixed: None,
        }
    }

    /// Build a subset from labels, requiring every label to be known.
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetOfX> {
        let mut s = SubsetOfX::empty(self.ground.len());
        for l in labels {
            let idx = self.ground.index_of(l.as_ref())?;
            s = s.union(&SubsetOfX::from_indices(&[idx], self.ground.len()));
        }
        Ok(s)
    }

    /// Member lookup by labels; errors when the set is not measurable.
    pub fn member_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetOfX> {
        let s = self.subset_from_labels(labels)?;
        if !self.is_member(&s) {
            return Err(Error::NotMeasurable(self.format_subset(&s)));
        }
        Ok(s)
    }

    /// Labels of a subset, sorted lexicographically (the serialization order).
    pub fn subset_labels(&self, s: &SubsetOfX) -> Vec<String> {
        let mut out: Vec<String> =
            s.indices().map(|i| self.ground.label(i).to_string()).collect();
        out.sort();
        out
    }

    pub fn format_subset(&self, s: &SubsetOfX) -> String {
        format!("{{{}}}", self.subset_labels(s).join(","))
    }

    /// The member covering a set of atoms (by atom indices).
    pub fn member_of_atoms(&self, atom_indices: impl IntoIterator<Item = usize>) -> SubsetOfX {
        let mut m = SubsetOfX::empty(self.ground.len());
        for k in atom_indices {
            m = m.union(&self.atoms[k]);
        }
        m
    }

    /// Atom indices whose atoms lie inside the given member.
    pub fn atoms_inside(&self, member: &SubsetOfX) -> Vec<usize> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_subset_of(member))
            .map(|(k, _)| k)
            .collect()
    }
}

impl fmt::Display for SigmaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "σ-algebra on {{{}}} with {} atoms",
            self.ground.labels().join(","),
            self.atoms.len()
        )
    }
}

/// Shared handle to a space; functions and relations hold one of these.
pub type SpaceRef = Arc<SigmaAlgebra>;

/// Report produced by [`SigmaAlgebra::is_compact`].
#[derive(Debug, Clone)]
pub struct CompactnessReport {
    /// The member family is finite (structural at this scale).
    pub finite: bool,
    /// The top element of the member lattice is compact.
    pub lattice_compact: bool,
    /// Finite subcover certificate for the atom cover of `X`.
    pub subcover: Vec<SubsetOfX>,
    /// Filled by the structure-space equivalences when linked.
    pub all_maximal_fixed: Option<bool>,
}

impl CompactnessReport {
    /// All filled flags agree (they must all be true on finite spaces).
    pub fn flags_agree(&self) -> bool {
        let fixed = self.all_maximal_fixed.unwrap_or(self.finite);
        self.finite == self.lattice_compact && self.lattice_compact == fixed
    }
}
