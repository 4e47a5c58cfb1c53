//! Theorem-verification suites.
//!
//! Each suite replays one family of correspondences on a concrete space and
//! collects counterexamples. Suites are exhaustive where the range is small
//! (ideals, filters, members) and use the documented grid with deterministic
//! sampling for quadruple sweeps. `--mutate` deliberately miswires one
//! computation so the harness can demonstrate that it catches failures.

use std::time::{Duration, Instant};

use crate::filtcong::{
    congruence_to_ideal, delta, e_inverse, ideal_to_congruence, twisted_product, Congruence,
    CongruenceKind, RingCongruence, ZFilter,
};
use crate::func::{characteristic_fn, NonNegFn, ValueGrid};
use crate::ideal::{beta_certificate, IdealCore, Side};
use crate::quotient::{
    build_rmcong, is_convex, is_infinitely_large, is_real, is_totally_ordered, quot_inverse,
    quot_leq, quot_lt, QuotientSemiring,
};
use crate::space::SpaceRef;
use crate::structure::{compactness_equivalences, StructureSpace};
use crate::Result;

/// Deliberate miswirings for harness self-tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Compute ideal joins where meets belong and vice versa.
    SwapJoinMeet,
}

/// Suite configuration: the value grid, the cap for sampled pair sweeps,
/// and an optional mutation.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub grid: ValueGrid,
    pub pair_cap: usize,
    pub mutate: Option<Mutation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { grid: ValueGrid::default(), pair_cap: 48, mutate: None }
    }
}

/// A failed check with its counterexample rendering.
#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub check: String,
    pub counterexample: String,
}

/// Result of one suite run. `failures` empty iff the suite passed.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub suite: String,
    pub checks_run: usize,
    pub failures: Vec<CheckFailure>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker {
    checks_run: usize,
    failures: Vec<CheckFailure>,
}

impl Checker {
    fn new() -> Self {
        Checker { checks_run: 0, failures: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks_run += 1;
        if !ok {
            self.failures.push(CheckFailure {
                check: name.to_string(),
                counterexample: detail(),
            });
        }
    }

    fn finish(self, suite: &str, started: Instant) -> SuiteResult {
        SuiteResult {
            suite: suite.to_string(),
            checks_run: self.checks_run,
            failures: self.failures,
            elapsed: started.elapsed(),
        }
    }
}

/// The ideal-lattice suite: inverse lattice isomorphisms, modularity,
/// prime/maximal structure, z- and strong-ideal universality.
pub fn ideal_lattice_suite(space: &SpaceRef, config: &VerifyConfig) -> Result<SuiteResult> {
    let started = Instant::now();
    let mut c = Checker::new();
    let ring = IdealCore::enumerate(space, Side::Ring);
    let semi = IdealCore::enumerate(space, Side::Semiring);
    let mutated = config.mutate == Some(Mutation::SwapJoinMeet);

    // transport of joins and meets; the mutation swaps the transported ops
    let sum_of = |a: &IdealCore, b: &IdealCore| -> Result<IdealCore> {
        if mutated {
            a.meet(b)
        } else {
            a.sum(b)
        }
    };
    for i in &ring {
        let down = i.alpha()?;
        c.check(
            "alpha_beta_inverse",
            down.beta()? == *i && down.core() == i.core(),
            || format!("core {}", space.format_subset(&i.core())),
        );
        for j in &ring {
            let direct = sum_of(&i.alpha()?, &j.alpha()?)?;
            let through = i.sum(j)?.alpha()?;
            c.check("alpha_preserves_sum", direct == through, || {
                format!(
                    "cores {} and {}",
                    space.format_subset(&i.core()),
                    space.format_subset(&j.core())
                )
            });
            let direct = i.alpha()?.meet(&j.alpha()?)?;
            let through = i.meet(j)?.alpha()?;
            c.check("alpha_preserves_meet", direct == through, || {
                format!(
                    "cores {} and {}",
                    space.format_subset(&i.core()),
                    space.format_subset(&j.core())
                )
            });
            // order preservation both ways
            c.check(
                "alpha_preserves_order",
                i.includes(j) == i.alpha()?.includes(&j.alpha()?),
                || "order flip".into(),
            );
        }
    }
    for j in &semi {
        c.check("beta_alpha_inverse", j.beta()?.alpha()? == *j, || {
            format!("core {}", space.format_subset(&j.core()))
        });
        for k in &semi {
            let direct = sum_of(&j.beta()?, &k.beta()?)?;
            let through = j.sum(k)?.beta()?;
            c.check("beta_preserves_sum", direct == through, || {
                format!(
                    "cores {} and {}",
                    space.format_subset(&j.core()),
                    space.format_subset(&k.core())
                )
            });
        }
    }

    // beta's element certificate on sampled ring functions
    let ring_fns = config.grid.ring_functions(space);
    for j in semi.iter().take(4) {
        for f in ring_fns.iter().step_by(17) {
            if j.core().is_subset_of(&f.zero_set()) {
                let cert = beta_certificate(j, f)?;
                c.check("beta_certificate", cert.is_some(), || format!("{f:?}"));
            }
        }
    }

    // the ideal lattice is the member lattice reversed; modular law
    for a in &semi {
        for b in &semi {
            for k in &semi {
                if a.includes(k) {
                    continue;
                }
                // a ⊆ k: a ∨ (b ∧ k) = (a ∨ b) ∧ k
                if k.includes(a) {
                    let lhs = a.sum(&b.meet(k)?)?;
                    let rhs = a.sum(b)?.meet(k)?;
                    c.check("modularity", lhs == rhs, || {
                        format!(
                            "cores {}, {}, {}",
                            space.format_subset(&a.core()),
                            space.format_subset(&b.core()),
                            space.format_subset(&k.core())
                        )
                    });
                }
            }
        }
    }

    // prime ⟺ maximal ⟺ atom core, primality by grid product scan.
    // Product zero sets come from Z(fg) = Z(f) ∪ Z(g) (scalars have no
    // zero divisors); the identity itself is pinned by a unit test.
    let fns = crate::ideal::grid_with_characteristics(space, &config.grid);
    let zero_sets: Vec<crate::space::SubsetOfX> = fns.iter().map(|f| f.zero_set()).collect();
    for ideal in &semi {
        if !ideal.is_proper() {
            continue;
        }
        let core = ideal.core();
        let mut prime = true;
        'scan: for zf in &zero_sets {
            for zg in &zero_sets {
                if core.is_subset_of(&zf.union(zg))
                    && !core.is_subset_of(zf)
                    && !core.is_subset_of(zg)
                {
                    prime = false;
                    break 'scan;
                }
            }
        }
        let is_atom = space.atoms().contains(&ideal.core());
        c.check(
            "prime_iff_maximal_iff_atom",
            prime == ideal.is_maximal() && ideal.is_maximal() == is_atom,
            || format!("core {}", space.format_subset(&ideal.core())),
        );
    }

    // z-ideal and strong-ideal universality with witnesses
    for ideal in &semi {
        let z = ideal.z_ideal_report(&config.grid)?;
        c.check("z_ideal", z.holds, || {
            format!("core {}", space.format_subset(&ideal.core()))
        });
        let s = ideal.strong_ideal_report(&config.grid)?;
        c.check("strong_ideal", s.holds, || {
            format!("core {}", space.format_subset(&ideal.core()))
        });
    }

    // M⁺_f has core Z(f), against the maximal-ideal intersection route
    for f in fns.iter().step_by(5) {
        let direct = IdealCore::mplus_of(f);
        let mut inter: Option<crate::space::SubsetOfX> = None;
        for ideal in &semi {
            if ideal.is_maximal() && ideal.contains(f.as_fn())? {
                inter = Some(match inter {
                    None => ideal.core(),
                    Some(acc) => acc.union(&ideal.core()),
                });
            }
        }
        let expected =
            inter.unwrap_or_else(|| crate::space::SubsetOfX::empty(space.point_count()));
        c.check("mplus_core_is_zero_set", direct.core() == expected, || format!("{f:?}"));
    }

    Ok(c.finish("ideal-lattice", started))
}

/// The duality suite: filter/congruence round trips, order preservation,
/// z-congruence checks, the ring-side correspondences.
pub fn duality_suite(space: &SpaceRef, config: &VerifyConfig) -> Result<SuiteResult> {
    let started = Instant::now();
    let mut c = Checker::new();
    let filters = ZFilter::enumerate(space);

    for filt in &filters {
        let rho = e_inverse(filt.clone());
        c.check("e_of_e_inverse_identity", rho.e_of()? == *filt, || {
            format!("core {}", space.format_subset(&filt.core()))
        });
    }
    for rho in Congruence::enumerate_z(space) {
        c.check(
            "e_inverse_e_of_identity",
            e_inverse(rho.e_of()?) == rho,
            || format!("{:?}", rho.kind()),
        );
        c.check("filter_kind_is_z", rho.is_z_congruence(), || format!("{:?}", rho.kind()));
    }
    for a in &filters {
        for b in &filters {
            let ra = e_inverse(a.clone());
            let rb = e_inverse(b.clone());
            c.check(
                "duality_preserves_order",
                a.is_subfilter_of(b) == ra.is_subcongruence_of(&rb).unwrap(),
                || {
                    format!(
                        "cores {} and {}",
                        space.format_subset(&a.core()),
                        space.format_subset(&b.core())
                    )
                },
            );
        }
    }

    // agreement sets of related sampled pairs land in the filter, and every
    // filter member is realized by a characteristic pair
    let sample = crate::filtcong::congruence_pair_sample(space, &config.grid, config.pair_cap);
    for rho in Congruence::enumerate_z(space) {
        let filt = rho.e_of()?;
        for (f, g) in &sample.pairs {
            if rho.contains(f.as_fn(), g.as_fn())? {
                c.check(
                    "agreement_set_in_filter",
                    filt.contains_member(&f.agreement_set(g.as_fn())?),
                    || format!("{f:?} vs {g:?}"),
                );
            }
        }
        for m in filt.members() {
            let chi = characteristic_fn(space, &m.complement())?;
            let zero = NonNegFn::zero(space);
            c.check(
                "filter_member_realized",
                rho.contains(chi.as_fn(), zero.as_fn())?,
                || space.format_subset(&m),
            );
        }
    }

    // z-meet and z-join transport the filter lattice
    let congruences = Congruence::enumerate_z(space);
    for r1 in &congruences {
        for r2 in &congruences {
            let meet = Congruence::z_meet(&[r1.clone(), r2.clone()])?;
            c.check(
                "z_meet_core_is_union",
                meet.core().unwrap() == r1.core().unwrap().union(&r2.core().unwrap()),
                || format!("{:?} and {:?}", r1.core(), r2.core()),
            );
            let join = r1.z_join(r2)?;
            c.check(
                "z_join_core_is_intersection",
                join.core().unwrap() == r1.core().unwrap().inter(&r2.core().unwrap()),
                || format!("{:?} and {:?}", r1.core(), r2.core()),
            );
            // the z-join dominates any two-step chain join of the pair
            for (f, g) in sample.pairs.iter().take(8) {
                for (h, k) in sample.pairs.iter().take(8) {
                    // chain f ~r1 g, g ~r2 h approximated on sampled triples
                    if r1.contains(f.as_fn(), g.as_fn())? && r2.contains(g.as_fn(), h.as_fn())?
                    {
                        c.check(
                            "z_join_dominates_chains",
                            join.contains(f.as_fn(), h.as_fn())?,
                            || format!("{f:?} {g:?} {h:?} {k:?}"),
                        );
                    }
                }
            }
        }
    }

    // ring-side: every ring congruence is a z-congruence; ∇/Δ round trips;
    // ideal ↔ congruence correspondence
    let ring_fns = config.grid.ring_functions(space);
    for ideal in IdealCore::enumerate(space, Side::Ring) {
        let k = RingCongruence::new(ideal.clone())?;
        for f in ring_fns.iter().step_by(23) {
            for g in ring_fns.iter().step_by(29) {
                let e = f.agreement_set(g)?;
                if k.core().is_subset_of(&e) {
                    c.check("ring_congruence_is_z", k.contains(f, g)?, || {
                        format!("{f:?} vs {g:?}")
                    });
                }
            }
        }
        let rho = k.nabla();
        c.check("nabla_delta_round_trip", delta(&rho)? == k, || {
            format!("core {}", space.format_subset(&k.core()))
        });
    }
    for rho in &congruences {
        c.check("delta_nabla_round_trip", delta(rho)?.nabla() == *rho, || {
            format!("{:?}", rho.core())
        });
    }
    for ideal in IdealCore::enumerate(space, Side::Semiring) {
        let rho = ideal_to_congruence(&ideal)?;
        c.check(
            "ideal_congruence_round_trip",
            congruence_to_ideal(&rho)? == ideal,
            || format!("core {}", space.format_subset(&ideal.core())),
        );
    }

    // the collapse relation is rejected by E with the right diagnostic
    let collapse = Congruence::collapse_nonzero(space);
    let err = collapse.e_of();
    c.check(
        "collapse_rejected_by_e",
        matches!(err, Err(crate::Error::NotCancellative(_))),
        || "collapse accepted".into(),
    );
    c.check("collapse_is_not_z", !collapse.is_z_congruence(), || "reported z".into());

    // 𝔐(f,g) equals the brute-force intersection of maximal congruences
    let maximal = Congruence::enumerate_maximal(space);
    for (f, g) in sample.pairs.iter().step_by(3) {
        let m = Congruence::m_frak(f, g)?;
        let containing: Vec<Congruence> = maximal
            .iter()
            .filter(|rho| rho.contains(f.as_fn(), g.as_fn()).unwrap())
            .cloned()
            .collect();
        let expected = if containing.is_empty() {
            Congruence::universal(space)
        } else {
            Congruence::z_meet(&containing)?
        };
        c.check("m_frak_is_maximal_intersection", m == expected, || {
            format!("{f:?} vs {g:?}")
        });
    }

    Ok(c.finish("duality", started))
}

/// The prime suite: the four-way prime characterization, prime ⟺ maximal,
/// prime filter ⟺ ultrafilter ⟺ atom core, and the twisted-union identity.
pub fn prime_suite(space: &SpaceRef, config: &VerifyConfig) -> Result<SuiteResult> {
    let started = Instant::now();
    let mut c = Checker::new();

    for filt in ZFilter::enumerate(space) {
        if !filt.is_proper() {
            continue;
        }
        let prime = filt.is_prime()?;
        let ultra = filt.is_ultrafilter()?;
        let atom = space.atoms().contains(&filt.core());
        c.check(
            "prime_filter_iff_ultrafilter_iff_atom",
            prime == ultra && ultra == atom,
            || format!("core {}", space.format_subset(&filt.core())),
        );
    }

    for rho in Congruence::enumerate_z(space) {
        let report = rho.prime_report(&config.grid, config.pair_cap)?;
        c.check("prime_routes_agree", report.routes_agree, || {
            format!("{:?}: {}", rho.core(), report.sample_scope)
        });
        let eq = rho.prime_equivalences(&config.grid, config.pair_cap)?;
        c.check("prime_four_conditions_agree", eq.all_agree, || {
            format!("{:?}: {eq:?}", rho.core())
        });
        if rho.kind() != CongruenceKind::Universal {
            c.check(
                "prime_iff_maximal",
                report.prime == rho.is_maximal(),
                || format!("{:?}", rho.core()),
            );
        }
        if rho.is_maximal() {
            c.check("maximal_is_prime_and_z", report.prime && rho.is_z_congruence(), || {
                format!("{:?}", rho.core())
            });
        }
    }

    c.check(
        "maximal_count_is_atom_count",
        Congruence::enumerate_maximal(space).len() == space.atom_count(),
        || "count mismatch".into(),
    );

    // twisted product: agreement-set union identity on the sampled range
    let sample = crate::filtcong::congruence_pair_sample(space, &config.grid, config.pair_cap);
    for p1 in &sample.pairs {
        for p2 in &sample.pairs {
            let (l, r) = twisted_product((&p1.0, &p1.1), (&p2.0, &p2.1))?;
            let lhs = p1
                .0
                .agreement_set(p1.1.as_fn())?
                .union(&p2.0.agreement_set(p2.1.as_fn())?);
            c.check("twisted_union_identity", l.agreement_set(&r)? == lhs, || {
                format!("{:?},{:?} vs {:?},{:?}", p1.0, p1.1, p2.0, p2.1)
            });
        }
    }

    Ok(c.finish("prime", started))
}

/// The structure suite: base identity, η exchange, the point σ-algebra,
/// φ on separating spaces, and the compactness pentad.
pub fn structure_suite(space: &SpaceRef, config: &VerifyConfig) -> Result<SuiteResult> {
    let started = Instant::now();
    let mut c = Checker::new();
    let st = StructureSpace::build(space);

    c.check("points_biject_atoms", st.point_count() == space.atom_count(), || {
        "count mismatch".into()
    });

    let base = st.base_union_identity_report(&config.grid, config.pair_cap)?;
    c.check("base_union_identity", base.holds, || base.scope.clone());

    let eta = st.eta_exchange_report(&config.grid, config.pair_cap)?;
    c.check("eta_exchanges_closed_sets", eta.holds, || eta.scope.clone());

    match st.sigma_algebra_on_points() {
        Ok(algebra) => {
            c.check(
                "point_family_is_power_set",
                algebra.members().len() == 1 << st.point_count(),
                || format!("{} members", algebra.members().len()),
            );
            c.check("point_family_separates", algebra.separates_points(), || {
                "non-separating".into()
            });
        }
        Err(e) => c.check("point_family_is_sigma_algebra", false, || e.to_string()),
    }

    if space.is_separating() {
        match st.phi() {
            Ok(phi) => {
                c.check("phi_bijective", phi.is_bijective(), || "not bijective".into());
                c.check(
                    "phi_exchanges_sets",
                    phi.exchange_report(&config.grid, config.pair_cap)?,
                    || "exchange failed".into(),
                );
            }
            Err(e) => c.check("phi_exists", false, || e.to_string()),
        }
    } else {
        c.check(
            "phi_requires_separation",
            matches!(st.phi(), Err(crate::Error::NotTMeasurable(_))),
            || "phi accepted a non-separating space".into(),
        );
    }

    let pentad = compactness_equivalences(space, &config.grid)?;
    c.check("compactness_pentad_agrees", pentad.all_agree(), || format!("{pentad:?}"));
    c.check(
        "compactness_report_flags",
        pentad.compactness.flags_agree(),
        || format!("{:?}", pentad.compactness),
    );

    Ok(c.finish("structure", started))
}

/// The quotient suite: order with witnesses, convexity, trichotomy,
/// realness, boundedness, inverses, and the restricted structure space.
pub fn quotient_suite(space: &SpaceRef, config: &VerifyConfig) -> Result<SuiteResult> {
    let started = Instant::now();
    let mut c = Checker::new();
    let grid = &config.grid;
    let fns = grid.functions(space);

    for rho in Congruence::enumerate_z(space) {
        let convex = is_convex(&rho, grid)?;
        c.check("z_congruence_convex", convex.holds, || {
            format!("{:?}: {:?}", rho.core(), convex.counterexample)
        });
    }

    for rho in Congruence::enumerate_maximal(space) {
        let total = is_totally_ordered(&rho, grid)?;
        c.check("quotient_totally_ordered", total.holds, || format!("{:?}", rho.core()));

        // trichotomy and representative independence on a thinned sample
        let quotient = QuotientSemiring::new(rho.clone())?;
        for f in fns.iter().step_by(3) {
            for g in fns.iter().step_by(3) {
                let eq = quotient.classes_equal(f, g)?;
                let lt = quot_lt(&rho, f, g)?.is_some();
                let gt = quot_lt(&rho, g, f)?.is_some();
                c.check(
                    "trichotomy",
                    [eq, lt, gt].iter().filter(|b| **b).count() == 1,
                    || format!("{f:?} vs {g:?}"),
                );
            }
        }
        for f in fns.iter().step_by(5) {
            for f2 in fns.iter().step_by(5) {
                if !quotient.classes_equal(f, f2)? {
                    continue;
                }
                for g in fns.iter().step_by(7) {
                    c.check(
                        "order_is_representative_independent",
                        quot_leq(&rho, f, g)?.holds() == quot_leq(&rho, f2, g)?.holds(),
                        || format!("{f:?} ~ {f2:?} vs {g:?}"),
                    );
                }
            }
        }

        // scalar embedding: injective and order-preserving on grid values
        for r in grid.values() {
            for s in grid.values() {
                let cr = crate::quotient::scalar_embed(&rho, r)?;
                let cs = crate::quotient::scalar_embed(&rho, s)?;
                let rf = NonNegFn::constant(space, r.clone())?;
                let sf = NonNegFn::constant(space, s.clone())?;
                c.check(
                    "scalar_embedding_order",
                    (r <= s) == quot_leq(&rho, &rf, &sf)?.holds()
                        && (r == s) == (cr == cs),
                    || format!("{r} vs {s}"),
                );
            }
        }

        let real = is_real(&rho, grid)?;
        c.check("realness_criteria_agree", real.all_agree() && real.real(), || {
            format!("{real:?}")
        });
        c.check("realness_transfers_to_ideal", real.ideal_side_real, || {
            format!("{real:?}")
        });

        for f in fns.iter().step_by(3) {
            let four = is_infinitely_large(&rho, f, grid)?;
            c.check(
                "no_infinitely_large_elements",
                four.all_agree() && !four.infinitely_large() && four.per_n_agreement,
                || format!("{f:?}: {four:?}"),
            );
        }

        let zero = NonNegFn::zero(space);
        for f in fns.iter().step_by(3) {
            if rho.contains(f.as_fn(), zero.as_fn())? {
                continue;
            }
            let inv = quot_inverse(&rho, f);
            c.check("nonzero_classes_invertible", inv.is_ok(), || format!("{f:?}"));
        }
    }

    let rm = build_rmcong(space, grid, config.pair_cap)?;
    c.check("rmcong_all_real", rm.all_maximal_real, || format!("{rm:?}"));
    c.check("rmcong_realcompact", rm.realcompact, || format!("{rm:?}"));
    c.check("rmcong_complement_formula", rm.complement_formula_holds, || {
        format!("{rm:?}")
    });
    c.check("rmcong_eta_tilde_bijective", rm.eta_tilde_bijective, || format!("{rm:?}"));

    Ok(c.finish("quotient", started))
}

/// Known suite names in execution order for `all`.
pub const SUITE_NAMES: [&str; 5] =
    ["ideal-lattice", "duality", "prime", "structure", "quotient"];

/// Run a named suite; `all` concatenates every suite's failures.
pub fn run_suite(space: &SpaceRef, name: &str, config: &VerifyConfig) -> Result<Vec<SuiteResult>> {
    match name {
        "ideal-lattice" => Ok(vec![ideal_lattice_suite(space, config)?]),
        "duality" => Ok(vec![duality_suite(space, config)?]),
        "prime" => Ok(vec![prime_suite(space, config)?]),
        "structure" => Ok(vec![structure_suite(space, config)?]),
        "quotient" => Ok(vec![quotient_suite(space, config)?]),
        "all" => {
            let mut out = Vec::new();
            for suite in SUITE_NAMES {
                out.extend(run_suite(space, suite, config)?);
            }
            Ok(out)
        }
        other => Err(crate::Error::Parse(format!("unknown suite {other:?}"))),
    }
}
