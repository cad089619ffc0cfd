//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime budget.
//!
//! Runs as a plain binary (`harness = false`) so the verdict lines always
//! appear in `cargo test` output. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use latgen_core::finite::{enumerate_lattices, enumerate_meet_semilattices};
use latgen_core::generators::{
    analyze, analyze_with, finitary_sublattice_closure, generate, indispensable_elements,
    indispensable_elements_bruteforce, meet_reducible_elements, non_generators_bruteforce, AnalysisLimits,
    ClosureConfig, Completeness,
};
use latgen_core::symbolic::{
    close_positive, dual_chain_closure, dual_chain_verdict, excluding_instance, gamma_formula,
    is_complete_sublattice, m_set, maximal_catalog, nongenerator_membership_screen, phi_formula,
    relative_generator_certificate, truncate, verify_catalog, verify_gamma_not_sublattice, CoFinite,
    DualChainDesc, Family, Forcing, Positive, ScreenConfig, SetDesc, SymElem, SymLattice,
    DEFAULT_INSTANCE_BOUND, DEFAULT_MAX_ROUNDS, DEFAULT_SEED,
};
use latgen_core::{omega_op_eval, FiniteLattice, FiniteStructure, LatticeOps, OmegaSeq, SubsetMask};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn run(id: u32, title: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget")),
        other => other,
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d.as_str()),
        Err(d) => ("FAIL", d.as_str()),
    };
    println!(
        "{tag} criterion {id}: {title} — {detail} ({:.2}s / budget {}s)",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    outcome.is_ok()
}

fn full(n: usize) -> SubsetMask {
    SubsetMask::full(n).expect("small carrier")
}

// ---------------------------------------------------------------------------
// 1. Meet-semilattices: non-generators are exactly the meet-reducibles.

fn check_semilattice<S: FiniteStructure>(s: &S, cfg: &ClosureConfig) -> Result<(), String> {
    let n = s.size();
    let ng = non_generators_bruteforce(s, cfg).map_err(e2s)?;
    let mr = meet_reducible_elements(s, cfg).map_err(e2s)?;
    ensure(ng.gamma == mr.reducible, || {
        format!("Γ {:?} ≠ meet-reducibles {:?}", ng.gamma.to_vec(), mr.reducible.to_vec())
    })?;
    let ind = indispensable_elements(s, cfg).map_err(e2s)?;
    ensure(ind == indispensable_elements_bruteforce(s, cfg).map_err(e2s)?, || {
        "indispensable routes disagree".into()
    })?;
    ensure(ind.intersection(&ng.gamma).is_empty() && ind.union(&ng.gamma) == full(n), || {
        format!("dichotomy fails: indispensable {:?}, Γ {:?}", ind.to_vec(), ng.gamma.to_vec())
    })?;
    for (&a, x) in &ng.witnesses {
        let with = generate(s, &x.clone().with(a), cfg).map_err(e2s)?;
        let without = generate(s, x, cfg).map_err(e2s)?;
        ensure(with.is_full() && !without.is_full(), || format!("bad witness for {a}"))?;
    }
    for (&a, y) in &mr.witnesses {
        let m = y.iter().fold(s.top(), |acc, b| s.meet(acc, b));
        ensure(m == a && !y.contains(a), || format!("bad meet reduction for {a}"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let cfg = ClosureConfig::semilattice();
    let mut exhaustive = 0;
    for n in 1..=5 {
        for s in enumerate_meet_semilattices(n).map_err(e2s)? {
            check_semilattice(&s, &cfg)?;
            exhaustive += 1;
        }
    }
    let six: Vec<_> = enumerate_meet_semilattices(6).map_err(e2s)?.collect();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..10_000 {
        check_semilattice(six.choose(&mut rng).expect("nonempty"), &cfg)?;
    }
    Ok(format!(
        "{exhaustive} structures with n ≤ 5 and 10000 sampled of {} at n = 6, 0 violations",
        six.len()
    ))
}

// ---------------------------------------------------------------------------
// 2. Finite lattices: Γ = Φ, Γ closed, Γ closed under binary operations.

fn small_lattices() -> Result<Vec<FiniteLattice>, String> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.extend(enumerate_lattices(n).map_err(e2s)?);
    }
    Ok(out)
}

fn criterion_2() -> Outcome {
    let lattices = small_lattices()?;
    let cfg = ClosureConfig::lattice();
    for l in &lattices {
        let r = analyze(l, &cfg).map_err(e2s)?;
        r.check_invariants()?;
        ensure(r.gamma_equals_phi && r.gamma == r.phi, || {
            format!("Γ ≠ Φ on {:?}", l.covers())
        })?;
        ensure(r.gamma_is_substructure, || format!("Γ not closed on {:?}", l.covers()))?;
        let fin = finitary_sublattice_closure(l, &r.gamma).map_err(e2s)?;
        ensure(fin == r.gamma, || format!("Γ not a sublattice on {:?}", l.covers()))?;
    }
    Ok(format!("{} lattices with n ≤ 5, 0 violations", lattices.len()))
}

// ---------------------------------------------------------------------------
// Shared symbolic checks.

fn window(family: Family, bound: u64) -> Vec<SymElem> {
    let rows = if family == Family::Omega { 0 } else { bound };
    let mut out = Vec::new();
    for q in 0..=rows {
        for r in 0..=bound {
            for b in 0..=1 {
                out.push(SymElem::pair(q, r, b));
            }
        }
    }
    out.extend([SymElem::top(0), SymElem::top(1)]);
    out
}

/// On a finite window: every element outside Γ carries a relative-generator
/// certificate, and Φ agrees with the intersection of the listed instances.
fn check_gamma_phi_window(family: Family, cfg: &ClosureConfig, bound: u64) -> Result<usize, String> {
    let gamma = gamma_formula(family);
    let phi = phi_formula(family);
    let catalog = maximal_catalog(family, bound + 1);
    let mut certified = 0;
    for e in window(family, bound) {
        let in_all = catalog.iter().all(|i| i.set.contains(e));
        ensure(in_all == phi.contains(e), || {
            format!("{}: Φ formula disagrees with the catalog", family.show_elem(e))
        })?;
        if gamma.contains(e) {
            continue;
        }
        let x: SetDesc = if e == SymElem::top(0) {
            m_set(family).into()
        } else {
            excluding_instance(family, e)
                .ok_or_else(|| format!("no instance omits {}", family.show_elem(e)))?
                .set
                .into()
        };
        relative_generator_certificate(e, &x, cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        certified += 1;
    }
    Ok(certified)
}

fn screen(family: Family, a: SymElem, cfg: &ClosureConfig, trials: usize) -> Result<usize, String> {
    let sc = ScreenConfig {
        trials,
        ..ScreenConfig::default()
    };
    let r = nongenerator_membership_screen(family, a, cfg, &sc).map_err(e2s)?;
    ensure(r.passed(), || format!("screen failed for {}: {r:?}", r.element))?;
    ensure(r.hits > 0, || format!("screen for {} never reached L", r.element))?;
    Ok(r.trials)
}

fn lattice_configs() -> Vec<(&'static str, ClosureConfig)> {
    let l = ClosureConfig::lattice();
    vec![
        ("standard", l),
        ("no extremes", l.without_extremes()),
        ("join-complete", l.with_completeness(Completeness::JoinComplete)),
    ]
}

// ---------------------------------------------------------------------------
// 3. The ω + 1 lattice.

fn criterion_3() -> Outcome {
    let family = Family::Omega;
    let mut detail = Vec::new();
    for (name, cfg) in lattice_configs() {
        let g = gamma_formula(family);
        ensure(
            g == Positive::points(family, [SymElem::pair(0, 0, 0), SymElem::top(1)]).map_err(e2s)?,
            || format!("Γ = {g}"),
        )?;
        ensure(phi_formula(family) == g.with(SymElem::top(0)).map_err(e2s)?, || "Φ formula".into())?;
        let v = verify_gamma_not_sublattice(family, &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        ensure(v.matches_expectation(), || format!("{name}: {v:?}"))?;
        let certified = check_gamma_phi_window(family, &cfg, DEFAULT_INSTANCE_BOUND)?;
        for a in [SymElem::pair(0, 0, 0), SymElem::top(1)] {
            screen(family, a, &cfg, 1000)?;
        }
        let instances = verify_catalog(family, DEFAULT_INSTANCE_BOUND, &cfg).map_err(e2s)?;
        // (ω,0) lies in every maximal instance, yet is a relative generator.
        let top0 = nongenerator_membership_screen(family, SymElem::top(0), &cfg, &ScreenConfig::default())
            .map_err(e2s)?;
        ensure(top0.membership_passed(), || "(ω,0) omitted by an instance".into())?;
        let without = CoFinite::new(family, [SymElem::top(0)]).map_err(e2s)?;
        let check = is_complete_sublattice(&without.into(), &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        let limit = matches!(check.evidence.as_ref().map(|f| &f.by), Some(Forcing::Limit { .. }));
        ensure(!check.closed && limit, || format!("L ∖ {{(ω,0)}}: {check:?}"))?;
        detail.push(format!("{name}: {instances} instances, {certified} certificates"));
    }
    Ok(detail.join("; "))
}

// ---------------------------------------------------------------------------
// 4. The ω² + 1 lattice.

fn criterion_4() -> Outcome {
    let family = Family::OmegaSq;
    let mut trials = 0;
    let mut detail = Vec::new();
    for (name, cfg) in lattice_configs() {
        let v = verify_gamma_not_sublattice(family, &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        ensure(v.matches_expectation(), || format!("{name}: {v:?}"))?;
        let closed = close_positive(&gamma_formula(family), &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        ensure(closed.contains(SymElem::top(0)) && closed == phi_formula(family), || {
            format!("{name}: ⟨Γ⟩ = {closed}")
        })?;
        let certified = check_gamma_phi_window(family, &cfg, 8)?;
        let instances = verify_catalog(family, DEFAULT_INSTANCE_BOUND, &cfg).map_err(e2s)?;
        for n in 1..=DEFAULT_INSTANCE_BOUND {
            trials += screen(family, SymElem::pair(n, 0, 0), &cfg, 1000)?;
        }
        for a in [SymElem::pair(0, 0, 0), SymElem::pair(1, 0, 1), SymElem::pair(4, 0, 1), SymElem::top(1)] {
            trials += screen(family, a, &cfg, 200)?;
        }
        detail.push(format!("{name}: {instances} instances, {certified} certificates"));
    }
    // Removing (ω²,1) from Γ and dropping the conventions still reaches (ω²,0).
    let reduced = Positive::new(
        family,
        gamma_formula(family).blocks().iter().copied().filter(|b| !b.contains(SymElem::top(1))),
    )
    .map_err(e2s)?;
    let closed = close_positive(&reduced, &ClosureConfig::lattice().without_extremes(), DEFAULT_MAX_ROUNDS)
        .map_err(e2s)?;
    ensure(closed.contains(SymElem::top(0)), || format!("⟨Γ ∖ {{(ω²,1)}}⟩ = {closed}"))?;
    ensure(trials >= 1000, || format!("only {trials} trials"))?;
    Ok(format!("{}; {trials} screen trials, 0 counterexamples", detail.join("; ")))
}

// ---------------------------------------------------------------------------
// 5. Finite truncations of ω² + 1 satisfy Γ = Φ.

fn criterion_5() -> Outcome {
    let mut sizes = Vec::new();
    for k in [2, 3, 4] {
        let l = truncate(Family::OmegaSq, k).map_err(e2s)?;
        let r = analyze_with(&l, &ClosureConfig::lattice(), AnalysisLimits::extended(64)).map_err(e2s)?;
        r.check_invariants()?;
        ensure(r.gamma_equals_phi, || format!("Γ ≠ Φ at k = {k}"))?;
        sizes.push(format!("k={k}: {} elements", l.size()));
    }
    Ok(format!("Γ = Φ for {}", sizes.join(", ")))
}

// ---------------------------------------------------------------------------
// 6. The dual ω-chain.

fn criterion_6() -> Outcome {
    let tail = DualChainDesc::ctail(0);
    let fin = dual_chain_verdict(Completeness::Finitary, DEFAULT_INSTANCE_BOUND);
    ensure(fin.d_indispensable && !fin.d_non_generator, || format!("{fin:?}"))?;
    ensure(dual_chain_closure(&tail, Completeness::Finitary) == tail, || "finitary closure".into())?;
    let cc = dual_chain_verdict(Completeness::CountablyComplete, DEFAULT_INSTANCE_BOUND);
    ensure(!cc.d_indispensable && cc.d_non_generator, || format!("{cc:?}"))?;
    ensure(
        dual_chain_closure(&tail, Completeness::CountablyComplete) == DualChainDesc::whole(),
        || "countable closure".into(),
    )?;
    Ok(format!(
        "finitary ⟨c_i⟩ = {}, countable ⟨c_i⟩ = {}",
        fin.closure_of_chain, cc.closure_of_chain
    ))
}

// ---------------------------------------------------------------------------
// 7. The single ω-ary operation.

fn random_sym(rng: &mut ChaCha8Rng, family: Family) -> SymElem {
    if rng.gen_ratio(1, 10) {
        return SymElem::top(rng.gen_range(0..=1));
    }
    let q = if family == Family::Omega { 0 } else { rng.gen_range(0..6) };
    SymElem::pair(q, rng.gen_range(0..10), rng.gen_range(0..=1))
}

fn check_encodings<L: LatticeOps>(l: &L, xs: &[L::Elem]) -> Result<(), String> {
    let (x, y) = (xs[0], xs[1]);
    ensure(omega_op_eval(l, &OmegaSeq::meet_encoding(x, y)) == l.meet(x, y), || {
        format!("meet of {x:?}, {y:?}")
    })?;
    let join = xs.iter().copied().reduce(|a, b| l.join(a, b)).expect("nonempty");
    let enc = OmegaSeq::join_encoding(xs).map_err(e2s)?;
    ensure(omega_op_eval(l, &enc) == join, || format!("join of {xs:?}"))?;
    // arbitrary eventually periodic sequences against a long direct fold
    let seq = OmegaSeq::periodic(xs[..xs.len() / 2].to_vec(), xs[xs.len() / 2..].to_vec()).map_err(e2s)?;
    let direct = (0..4 * xs.len() + 4)
        .map(|i| l.meet(seq.get(2 * i), seq.get(2 * i + 1)))
        .reduce(|a, b| l.join(a, b))
        .expect("nonempty");
    ensure(omega_op_eval(l, &seq) == direct, || format!("sequence {seq:?}"))
}

fn criterion_7() -> Outcome {
    let lattices = small_lattices()?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut counts = [0usize; 3];
    for t in 0..1000 {
        let len = rng.gen_range(2..=6);
        match t % 3 {
            0 => {
                let l = lattices.choose(&mut rng).expect("nonempty");
                let xs: Vec<usize> = (0..len).map(|_| rng.gen_range(0..l.size())).collect();
                check_encodings(l, &xs)?;
            }
            k => {
                let family = if k == 1 { Family::Omega } else { Family::OmegaSq };
                let xs: Vec<SymElem> = (0..len).map(|_| random_sym(&mut rng, family)).collect();
                check_encodings(&SymLattice::new(family), &xs)?;
            }
        }
        counts[t % 3] += 1;
    }
    Ok(format!(
        "1000 tuples ({} finite, {} in ω+1, {} in ω²+1), 0 mismatches",
        counts[0], counts[1], counts[2]
    ))
}

// ---------------------------------------------------------------------------
// 8. Closure laws.

fn finite_configs() -> Vec<ClosureConfig> {
    let mut out = Vec::new();
    for meet in [false, true] {
        for join in [false, true] {
            let mut c = ClosureConfig::lattice();
            c.include_empty_meet = meet;
            c.include_empty_join = join;
            out.push(c);
        }
    }
    out.push(ClosureConfig::semilattice());
    out
}

fn random_mask(rng: &mut ChaCha8Rng, n: usize) -> SubsetMask {
    SubsetMask::from_bits(n, rng.gen::<u64>() & ((1u64 << n) - 1)).expect("in range")
}

fn criterion_8() -> Outcome {
    let lattices = small_lattices()?;
    let mut semis = Vec::new();
    for n in 1..=5 {
        semis.extend(enumerate_meet_semilattices(n).map_err(e2s)?);
    }
    let cfgs = finite_configs();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let finite_cases = 10_000;
    for _ in 0..finite_cases {
        let cfg = *cfgs.choose(&mut rng).expect("nonempty");
        let (x, y, gx, gy, ggx, gx_fin) = if cfg.respect_joins {
            let l = lattices.choose(&mut rng).expect("nonempty");
            let x = random_mask(&mut rng, l.size());
            let y = x.union(&random_mask(&mut rng, l.size()));
            let fin = cfg.with_completeness(Completeness::Finitary);
            let gx = generate(l, &x, &cfg).map_err(e2s)?;
            (x, y.clone(), gx.clone(), generate(l, &y, &cfg).map_err(e2s)?, generate(l, &gx, &cfg).map_err(e2s)?,
                generate(l, &x, &fin).map_err(e2s)?)
        } else {
            let s = semis.choose(&mut rng).expect("nonempty");
            let x = random_mask(&mut rng, s.size());
            let y = x.union(&random_mask(&mut rng, s.size()));
            let fin = cfg.with_completeness(Completeness::Finitary);
            let gx = generate(s, &x, &cfg).map_err(e2s)?;
            (x, y.clone(), gx.clone(), generate(s, &y, &cfg).map_err(e2s)?, generate(s, &gx, &cfg).map_err(e2s)?,
                generate(s, &x, &fin).map_err(e2s)?)
        };
        ensure(x.is_subset(&gx), || format!("not extensive on {:?}", x.to_vec()))?;
        ensure(gx.is_subset(&gy), || format!("not monotone: {:?} ⊆ {:?}", x.to_vec(), y.to_vec()))?;
        ensure(ggx == gx, || format!("not idempotent on {:?}", x.to_vec()))?;
        ensure(gx_fin == gx, || "finitary and countable closures differ".into())?;
    }

    let symbolic_cases = 1200;
    let sym_cfgs = lattice_configs();
    for t in 0..symbolic_cases {
        let family = if t % 2 == 0 { Family::Omega } else { Family::OmegaSq };
        let (_, cfg) = sym_cfgs[t % 3];
        let a = random_sym(&mut rng, family);
        let b = random_sym(&mut rng, family);
        let x = latgen_core::symbolic::claims::sample_description(&mut rng, family, a);
        let y = x
            .union(&latgen_core::symbolic::claims::sample_description(&mut rng, family, b))
            .map_err(e2s)?;
        let gx = close_positive(&x, &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        let gy = close_positive(&y, &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)?;
        ensure(x.is_subset(&gx).map_err(e2s)?, || format!("not extensive on {x}"))?;
        ensure(gx.is_subset(&gy).map_err(e2s)?, || format!("not monotone: {x} ⊆ {y}"))?;
        ensure(close_positive(&gx, &cfg, DEFAULT_MAX_ROUNDS).map_err(e2s)? == gx, || {
            format!("not idempotent on {x}")
        })?;
        // closedness on a window, against the ambient operations
        let inside: Vec<SymElem> = window(family, 4).into_iter().filter(|&e| gx.contains(e)).collect();
        for &e in &inside {
            for &f in &inside {
                ensure(gx.contains(e.meet(f)) && gx.contains(e.join(f)), || {
                    format!("{gx} not closed at {}, {}", family.show_elem(e), family.show_elem(f))
                })?;
            }
        }
    }
    Ok(format!(
        "{finite_cases} finite and {symbolic_cases} symbolic cases, 0 violations"
    ))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "non-generators = meet-reducibles, dichotomy", s(60), criterion_1),
        run(2, "finite lattices: Γ = Φ, Γ closed", s(60), criterion_2),
        run(3, "ω + 1: Γ, Φ, catalog, (ω,0)", s(10), criterion_3),
        run(4, "ω² + 1: ⟨Γ⟩ = Φ ∋ (ω²,0), catalog, screens", s(60), criterion_4),
        run(5, "finite truncations: Γ = Φ", s(30), criterion_5),
        run(6, "dual ω-chain", s(1), criterion_6),
        run(7, "single ω-ary operation", s(10), criterion_7),
        run(8, "closure laws", s(120), criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
