//! Non-generator structure of the two countable lattices: the explicit Γ and
//! Φ, the catalog of maximal proper complete sublattices, relative-generator
//! certificates, and a randomized screen for non-generator candidates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::closure::close_positive;
use super::desc::{Block, CoFinite, Positive, SetDesc};
use super::forcing::{close_cofinite, is_complete_sublattice, is_maximal_complete_sublattice};
use super::ordinal::{Family, OrdK, SymElem};
use crate::error::{Error, Result};
use crate::generators::config::ClosureConfig;

pub const DEFAULT_SEED: u64 = 0xA11CE;
pub const DEFAULT_INSTANCE_BOUND: u64 = 25;

fn p(q: u64, r: u64, b: u8) -> SymElem {
    SymElem::pair(q, r, b)
}

/// The non-generators of `K × {0, 1}`.
pub fn gamma_formula(family: Family) -> Positive {
    let blocks: Vec<Block> = match family {
        Family::Omega => vec![Block::Point(p(0, 0, 0)), Block::Point(SymElem::top(1))],
        Family::OmegaSq => vec![
            Block::ZeroColTail { n0: 0, bit: 0 },
            Block::ZeroColTail { n0: 1, bit: 1 },
            Block::Point(SymElem::top(1)),
        ],
    };
    Positive::new(family, blocks).expect("formula blocks are valid")
}

/// The intersection of the maximal proper complete sublattices.
pub fn phi_formula(family: Family) -> Positive {
    gamma_formula(family)
        .with(SymElem::top(0))
        .expect("top is valid")
}

/// `(K × {1}) ∪ {(0, 0)}`: a proper complete sublattice that `(top, 0)` completes.
pub fn m_set(family: Family) -> Positive {
    Positive::new(
        family,
        [
            Block::FullTail { k0: OrdK::ZERO, bit: 1 },
            Block::Point(p(0, 0, 0)),
        ],
    )
    .expect("valid blocks")
}

/// One member of a listed family of maximal proper complete sublattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogInstance {
    /// Human-readable name, e.g. `L ∖ {(2⋉5,0),(2⋉5,1)}`.
    pub name: String,
    #[serde(skip)]
    pub set: CoFinite,
}

fn instance(family: Family, excluded: &[SymElem]) -> CatalogInstance {
    let set = CoFinite::new(family, excluded.iter().copied()).expect("valid elements");
    CatalogInstance {
        name: set.to_string(),
        set,
    }
}

/// The listed maximal proper complete sublattices with parameters `≤ bound`:
/// `L ∖ {(0,1)}` and the pairs `L ∖ {(k,0),(k,1)}` for successor-free
/// positions `k` (`n ≥ 1` in `ω + 1`, `n⋉m` with `m ≥ 1` in `ω² + 1`).
pub fn maximal_catalog(family: Family, bound: u64) -> Vec<CatalogInstance> {
    let mut out = vec![instance(family, &[p(0, 0, 1)])];
    match family {
        Family::Omega => {
            for n in 1..=bound {
                out.push(instance(family, &[p(0, n, 0), p(0, n, 1)]));
            }
        }
        Family::OmegaSq => {
            for n in 0..=bound {
                for m in 1..=bound {
                    out.push(instance(family, &[p(n, m, 0), p(n, m, 1)]));
                }
            }
        }
    }
    out
}

/// The catalog instance that omits `a`, if `a` lies outside Φ.
pub fn excluding_instance(family: Family, a: SymElem) -> Option<CatalogInstance> {
    if a == p(0, 0, 1) {
        return Some(instance(family, &[a]));
    }
    match (family, a.ord) {
        (Family::Omega, OrdK::Pair(0, n)) if n >= 1 => Some(instance(family, &[p(0, n, 0), p(0, n, 1)])),
        (Family::OmegaSq, OrdK::Pair(n, m)) if m >= 1 => {
            Some(instance(family, &[p(n, m, 0), p(n, m, 1)]))
        }
        _ => None,
    }
}

/// A checked witness that `a` is a relative generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymCertificate {
    pub element: String,
    /// The witness set `X`.
    pub x: String,
    /// `⟨X⟩`, which is proper.
    pub closure_of_x: String,
}

fn is_whole(d: &SetDesc) -> bool {
    match d {
        SetDesc::Positive(p) => p.is_whole(),
        SetDesc::CoFinite(c) => c.is_whole(),
    }
}

/// Verifies `⟨X⟩ ≠ L` and `⟨X, a⟩ = L`.
pub fn relative_generator_certificate(
    a: SymElem,
    x: &SetDesc,
    cfg: &ClosureConfig,
    max_rounds: usize,
) -> Result<SymCertificate> {
    let family = x.family();
    super::ordinal::SymLattice::new(family).check(a)?;
    let (closed, with_a) = match x {
        SetDesc::Positive(px) => (
            SetDesc::Positive(close_positive(px, cfg, max_rounds)?),
            SetDesc::Positive(close_positive(&px.with(a)?, cfg, max_rounds)?),
        ),
        SetDesc::CoFinite(cx) => {
            let rest = cx.excluded().iter().copied().filter(|&e| e != a);
            (
                SetDesc::CoFinite(close_cofinite(cx, cfg)),
                SetDesc::CoFinite(close_cofinite(&CoFinite::new(family, rest)?, cfg)),
            )
        }
    };
    if is_whole(&closed) {
        return Err(Error::CertificateInvalid(format!("⟨X⟩ is already L for X = {x}")));
    }
    if !is_whole(&with_a) {
        return Err(Error::CertificateInvalid(format!(
            "⟨X, {}⟩ = {with_a} is proper",
            family.show_elem(a)
        )));
    }
    Ok(SymCertificate {
        element: family.show_elem(a),
        x: x.to_string(),
        closure_of_x: closed.to_string(),
    })
}

/// Outcome of checking that Γ of `ω² + 1` is not a complete sublattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaVerification {
    pub family: Family,
    pub gamma: String,
    pub closure_of_gamma: String,
    pub gamma_is_closed: bool,
    pub closure_equals_phi: bool,
    /// `(top, 0) ∈ ⟨Γ⟩ ∖ Γ`.
    pub top_zero_added: bool,
    /// Certificate that `(top, 0)` is a relative generator, with `X = M`.
    pub top_zero_certificate: SymCertificate,
}

impl GammaVerification {
    /// The expected outcome: Γ closed in `ω + 1`; `⟨Γ⟩ = Φ ∋ (top, 0)` in `ω² + 1`.
    pub fn matches_expectation(&self) -> bool {
        match self.family {
            Family::Omega => self.gamma_is_closed,
            Family::OmegaSq => !self.gamma_is_closed && self.closure_equals_phi && self.top_zero_added,
        }
    }
}

pub fn verify_gamma_not_sublattice(
    family: Family,
    cfg: &ClosureConfig,
    max_rounds: usize,
) -> Result<GammaVerification> {
    let gamma = gamma_formula(family);
    let closed = close_positive(&gamma, cfg, max_rounds)?;
    let top0 = SymElem::top(0);
    let certificate = relative_generator_certificate(top0, &m_set(family).into(), cfg, max_rounds)?;
    Ok(GammaVerification {
        family,
        gamma: gamma.to_string(),
        closure_of_gamma: closed.to_string(),
        gamma_is_closed: closed == gamma,
        closure_equals_phi: closed == phi_formula(family),
        top_zero_added: closed.contains(top0) && !gamma.contains(top0),
        top_zero_certificate: certificate,
    })
}

/// Checks every catalog instance with parameters `≤ bound` for closedness and
/// maximality; returns the first failure.
pub fn verify_catalog(family: Family, bound: u64, cfg: &ClosureConfig) -> Result<usize> {
    let catalog = maximal_catalog(family, bound);
    for inst in &catalog {
        let check = is_complete_sublattice(&inst.set.clone().into(), cfg, 1)?;
        if !check.closed {
            return Err(Error::CertificateInvalid(format!(
                "{} is not closed: {:?}",
                inst.name, check.evidence
            )));
        }
        if !is_maximal_complete_sublattice(&inst.set, cfg)? {
            return Err(Error::CertificateInvalid(format!("{} is not maximal", inst.name)));
        }
    }
    Ok(catalog.len())
}

/// Bounds and seed for [`nongenerator_membership_screen`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScreenConfig {
    pub bound: u64,
    pub trials: usize,
    pub seed: u64,
    pub max_rounds: usize,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        Self {
            bound: DEFAULT_INSTANCE_BOUND,
            trials: 1000,
            seed: DEFAULT_SEED,
            max_rounds: super::closure::DEFAULT_MAX_ROUNDS,
        }
    }
}

/// Outcome of the necessary-condition screen for "`a` is a non-generator".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenResult {
    pub element: String,
    pub bound: u64,
    pub instances_checked: usize,
    /// A listed maximal instance omitting `a`, if any.
    pub excluded_by: Option<String>,
    pub trials: usize,
    /// Trials in which `⟨X, a⟩ = L`, so the implication was actually tested.
    pub hits: usize,
    /// A sampled `X` with `⟨X, a⟩ = L ≠ ⟨X⟩`, if one was found.
    pub counterexample: Option<String>,
    pub seed: u64,
}

impl ScreenResult {
    pub fn membership_passed(&self) -> bool {
        self.excluded_by.is_none()
    }

    pub fn trials_passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn passed(&self) -> bool {
        self.membership_passed() && self.trials_passed()
    }
}

fn random_ord(rng: &mut ChaCha8Rng, family: Family, around: OrdK) -> OrdK {
    if rng.gen_ratio(1, 12) {
        return OrdK::Top;
    }
    let (q0, r0) = around.pair().unwrap_or((3, 3));
    let q = match family {
        Family::Omega => 0,
        Family::OmegaSq => (q0 as i64 + rng.gen_range(-2i64..=2)).max(0) as u64,
    };
    let r = (r0 as i64 + rng.gen_range(-2i64..=2)).max(0) as u64;
    OrdK::Pair(q, r)
}

/// A random positive description built from a generating backbone and a few
/// blocks near `a`, so that `⟨X, a⟩ = L` holds in a fair share of trials.
pub fn sample_description(rng: &mut ChaCha8Rng, family: Family, a: SymElem) -> Positive {
    let mut blocks = Vec::new();
    if rng.gen_bool(0.85) {
        blocks.push(Block::Point(p(0, 0, 1)));
    }
    for _ in 0..rng.gen_range(1..=2) {
        let k0 = match family {
            Family::Omega => OrdK::Pair(0, rng.gen_range(0..3)),
            Family::OmegaSq => OrdK::Pair(rng.gen_range(0..2), rng.gen_range(0..3)),
        };
        blocks.push(Block::FullTail {
            k0,
            bit: rng.gen_range(0..=1),
        });
    }
    for _ in 0..rng.gen_range(0..=3) {
        let bit = rng.gen_range(0..=1);
        let k = random_ord(rng, family, a.ord);
        let b = match (rng.gen_range(0..4), k, family) {
            (1, OrdK::Pair(q, r), _) => Block::RowTail { n: q, m0: r, bit },
            (2, OrdK::Pair(q, _), Family::OmegaSq) => Block::ZeroColTail { n0: q, bit },
            (3, k, _) => Block::FullTail { k0: k, bit },
            _ => Block::Point(SymElem::new(k, bit)),
        };
        blocks.push(b);
    }
    // Candidates are screened against sets that omit them.
    let x = Positive::new(family, blocks).expect("sampled blocks are valid");
    if x.contains(a) {
        remove_point(&x, a)
    } else {
        x
    }
}

fn remove_point(x: &Positive, a: SymElem) -> Positive {
    let family = x.family();
    let mut blocks = Vec::new();
    for b in x.blocks() {
        if !b.contains(a) {
            blocks.push(*b);
            continue;
        }
        // Split the block around a. When the part below a is not expressible
        // (a block reaching up to ω²) it is dropped; the sample stays valid.
        let lower = super::desc::restrict(family, b.kset(), b.kset().min(), super::desc::Upper::Lt(a.ord))
            .unwrap_or_default();
        let upper = a
            .ord
            .succ()
            .map(|s| super::desc::restrict(family, b.kset(), s, super::desc::Upper::Le(OrdK::Top)))
            .transpose()
            .ok()
            .flatten()
            .unwrap_or_default();
        blocks.extend(lower.into_iter().chain(upper).map(|k| with_bit(k, b.bit())));
    }
    Positive::normalized(family, &blocks)
}

fn with_bit(k: super::desc::KSet, bit: u8) -> Block {
    use super::desc::KSet;
    match k {
        KSet::Point(o) => Block::Point(SymElem::new(o, bit)),
        KSet::Row { n, m0 } => Block::RowTail { n, m0, bit },
        KSet::ZeroCol { n0 } => Block::ZeroColTail { n0, bit },
        KSet::Full(k0) => Block::FullTail { k0, bit },
    }
}

/// Necessary-condition screen: `a` must lie in every listed maximal instance
/// with parameters `≤ bound`, and no sampled `X` may satisfy
/// `⟨X, a⟩ = L ≠ ⟨X⟩`. A falsifier, not a proof.
pub fn nongenerator_membership_screen(
    family: Family,
    a: SymElem,
    cfg: &ClosureConfig,
    screen: &ScreenConfig,
) -> Result<ScreenResult> {
    super::ordinal::SymLattice::new(family).check(a)?;
    let catalog = maximal_catalog(family, screen.bound);
    let excluded_by = catalog.iter().find(|i| !i.set.contains(a)).map(|i| i.name.clone());

    let stream = match a.ord {
        OrdK::Pair(q, r) => q.wrapping_mul(1 << 32) ^ r.wrapping_mul(2) ^ a.bit as u64,
        OrdK::Top => u64::MAX - a.bit as u64,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(screen.seed);
    rng.set_stream(stream);
    let mut hits = 0;
    let mut counterexample = None;
    for _ in 0..screen.trials {
        let x = sample_description(&mut rng, family, a);
        let with = close_positive(&x.with(a)?, cfg, screen.max_rounds)?;
        if !with.is_whole() {
            continue;
        }
        hits += 1;
        if !close_positive(&x, cfg, screen.max_rounds)?.is_whole() {
            counterexample = Some(x.to_string());
            break;
        }
    }
    Ok(ScreenResult {
        element: family.show_elem(a),
        bound: screen.bound,
        instances_checked: catalog.len(),
        excluded_by,
        trials: screen.trials,
        hits,
        counterexample,
        seed: screen.seed,
    })
}

/// Elements `(q⋉r, b)` with `q, r ≤ bound` (only row 0 in `ω + 1`), and both tops.
pub fn element_window(family: Family, bound: u64) -> Vec<SymElem> {
    let rows = match family {
        Family::Omega => 0,
        Family::OmegaSq => bound,
    };
    let mut out = Vec::new();
    for q in 0..=rows {
        for r in 0..=bound {
            out.extend([p(q, r, 0), p(q, r, 1)]);
        }
    }
    out.extend([SymElem::top(0), SymElem::top(1)]);
    out
}

/// A relative-generator certificate for every window element outside Γ:
/// `X = M` for `(top, 0)`, and the listed maximal instance omitting the
/// element otherwise.
pub fn certify_outside_gamma(
    family: Family,
    bound: u64,
    cfg: &ClosureConfig,
    max_rounds: usize,
) -> Result<Vec<SymCertificate>> {
    let gamma = gamma_formula(family);
    let mut out = Vec::new();
    for a in element_window(family, bound) {
        if gamma.contains(a) {
            continue;
        }
        let x: SetDesc = if a == SymElem::top(0) {
            m_set(family).into()
        } else {
            excluding_instance(family, a)
                .ok_or_else(|| Error::CertificateInvalid(format!("no listed instance omits {}", family.show_elem(a))))?
                .set
                .into()
        };
        out.push(relative_generator_certificate(a, &x, cfg, max_rounds)?);
    }
    Ok(out)
}

/// Window elements where membership in the Φ formula differs from membership
/// in every listed instance with parameters `≤ bound + 1`.
pub fn phi_catalog_disagreements(family: Family, bound: u64) -> Vec<SymElem> {
    let phi = phi_formula(family);
    let catalog = maximal_catalog(family, bound + 1);
    element_window(family, bound)
        .into_iter()
        .filter(|&e| catalog.iter().all(|i| i.set.contains(e)) != phi.contains(e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::config::Completeness;
    use crate::symbolic::closure::DEFAULT_MAX_ROUNDS;

    const SQ: Family = Family::OmegaSq;
    const OM: Family = Family::Omega;

    fn cfgs() -> Vec<ClosureConfig> {
        let l = ClosureConfig::lattice();
        vec![l, l.without_extremes(), l.with_completeness(Completeness::JoinComplete)]
    }

    #[test]
    fn formulas() {
        let g = gamma_formula(OM);
        assert_eq!(g.blocks(), &[Block::Point(p(0, 0, 0)), Block::Point(SymElem::top(1))]);
        let phi = phi_formula(OM);
        assert!(phi.contains(SymElem::top(0)) && phi.contains(p(0, 0, 0)));
        assert_eq!(phi.blocks().len(), 3);
        let g = gamma_formula(SQ);
        assert!(g.contains(p(7, 0, 0)) && g.contains(p(0, 0, 0)));
        assert!(g.contains(p(7, 0, 1)) && !g.contains(p(0, 0, 1)));
        assert!(!g.contains(SymElem::top(0)) && g.contains(SymElem::top(1)));
    }

    #[test]
    fn gamma_closure_per_family() {
        for cfg in cfgs() {
            let v = verify_gamma_not_sublattice(SQ, &cfg, DEFAULT_MAX_ROUNDS).unwrap();
            assert!(v.matches_expectation(), "{cfg:?}: {v:?}");
            assert!(!v.gamma_is_closed && v.closure_equals_phi && v.top_zero_added);
            let v = verify_gamma_not_sublattice(OM, &cfg, DEFAULT_MAX_ROUNDS).unwrap();
            assert!(v.gamma_is_closed, "{cfg:?}");
        }
    }

    #[test]
    fn gamma_without_top_still_reaches_top_zero() {
        let g = Positive::new(
            SQ,
            [Block::ZeroColTail { n0: 0, bit: 0 }, Block::ZeroColTail { n0: 1, bit: 1 }],
        )
        .unwrap();
        let cfg = ClosureConfig::lattice().without_extremes();
        assert!(close_positive(&g, &cfg, DEFAULT_MAX_ROUNDS).unwrap().contains(SymElem::top(0)));
    }

    #[test]
    fn gamma_is_closed_under_binary_operations() {
        let fin = ClosureConfig::lattice()
            .without_extremes()
            .with_completeness(Completeness::Finitary);
        let g = gamma_formula(SQ);
        assert_eq!(close_positive(&g, &fin, DEFAULT_MAX_ROUNDS).unwrap(), g);
    }

    #[test]
    fn certificates() {
        let cfg = ClosureConfig::lattice();
        for f in [OM, SQ] {
            relative_generator_certificate(SymElem::top(0), &m_set(f).into(), &cfg, DEFAULT_MAX_ROUNDS)
                .unwrap();
        }
        let x: SetDesc = CoFinite::new(SQ, [p(0, 0, 1)]).unwrap().into();
        relative_generator_certificate(p(0, 0, 1), &x, &cfg, DEFAULT_MAX_ROUNDS).unwrap();
        // a non-generator cannot be certified with these sets
        let err = relative_generator_certificate(p(0, 0, 0), &m_set(SQ).into(), &cfg, DEFAULT_MAX_ROUNDS);
        assert!(matches!(err, Err(Error::CertificateInvalid(_))));
        let whole: SetDesc = Positive::whole(SQ).into();
        let err = relative_generator_certificate(p(0, 0, 0), &whole, &cfg, DEFAULT_MAX_ROUNDS);
        assert!(matches!(err, Err(Error::CertificateInvalid(_))));
    }

    #[test]
    fn catalogs_verify() {
        for cfg in cfgs() {
            assert_eq!(verify_catalog(OM, 8, &cfg).unwrap(), 9);
            assert_eq!(verify_catalog(SQ, 4, &cfg).unwrap(), 1 + 5 * 4);
        }
    }

    #[test]
    fn elements_outside_phi_are_excluded_and_certified() {
        let cfg = ClosureConfig::lattice();
        for f in [OM, SQ] {
            let phi = phi_formula(f);
            let qs = if f == SQ { 0..6 } else { 0..1 };
            for q in qs {
                for r in 0..6 {
                    for bit in 0..=1 {
                        let a = p(q, r, bit);
                        match excluding_instance(f, a) {
                            Some(inst) => {
                                assert!(!phi.contains(a) && !inst.set.contains(a));
                                relative_generator_certificate(a, &inst.set.into(), &cfg, DEFAULT_MAX_ROUNDS)
                                    .unwrap();
                            }
                            None => assert!(phi.contains(a), "{a:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn screens() {
        let cfg = ClosureConfig::lattice();
        let screen = ScreenConfig {
            trials: 150,
            ..ScreenConfig::default()
        };
        let r = nongenerator_membership_screen(SQ, p(3, 0, 0), &cfg, &screen).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.hits > 0);

        let r = nongenerator_membership_screen(OM, SymElem::top(0), &cfg, &screen).unwrap();
        assert!(r.membership_passed());

        let r = nongenerator_membership_screen(SQ, p(2, 5, 0), &cfg, &screen).unwrap();
        assert_eq!(r.excluded_by.as_deref(), Some("L ∖ {(2⋉5,0), (2⋉5,1)}"));
    }

    #[test]
    fn screen_is_reproducible() {
        let cfg = ClosureConfig::lattice();
        let screen = ScreenConfig {
            trials: 60,
            ..ScreenConfig::default()
        };
        let a = nongenerator_membership_screen(SQ, p(1, 0, 0), &cfg, &screen).unwrap();
        let b = nongenerator_membership_screen(SQ, p(1, 0, 0), &cfg, &screen).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_sets_omit_the_candidate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let a = p(rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..=1));
            let x = sample_description(&mut rng, SQ, a);
            assert!(!x.contains(a));
        }
    }

    #[test]
    fn window_certificates_and_phi() {
        for f in [OM, SQ] {
            for cfg in cfgs() {
                let certs = certify_outside_gamma(f, 4, &cfg, DEFAULT_MAX_ROUNDS).unwrap();
                let outside = element_window(f, 4).iter().filter(|&&e| !gamma_formula(f).contains(e)).count();
                assert_eq!(certs.len(), outside);
            }
            assert!(phi_catalog_disagreements(f, 6).is_empty());
        }
        assert_eq!(element_window(OM, 2).len(), 8);
        assert_eq!(element_window(SQ, 2).len(), 20);
    }
}
