//! The single-structure subcommands: analyze, enumerate, export-dot,
//! closure and truncate.

use std::fmt::Write;

use latgen_core::finite::{enumerate_lattices, enumerate_meet_semilattices, CoverList};
use latgen_core::generators::{meet_reducible_elements, non_generators_bruteforce, BRUTE_FORCE_BOUND};
use latgen_core::symbolic::{complete_closure, is_complete_sublattice, truncate as truncate_family, SetDesc};
use latgen_core::{analyze_with, AnalysisLimits, ClosureConfig, Family, FiniteLattice, FiniteStructure, GeneratorReport, SubsetMask};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{dot, Failure, Format, Highlight, Options, Signature};

fn limits(o: &Options) -> AnalysisLimits {
    AnalysisLimits {
        subset_scan: o.analysis_cap.min(BRUTE_FORCE_BOUND),
        closed_sets: o.analysis_cap,
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

/// One value per selected convention: the bare value for a single
/// convention, an object keyed by convention name for `--conventions both`.
fn per_convention(values: Vec<(&'static str, Value)>) -> Value {
    if values.len() == 1 {
        values.into_iter().next().expect("one value").1
    } else {
        Value::Object(values.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
    }
}

fn show_mask<S: FiniteStructure>(s: &S, m: &SubsetMask) -> String {
    let items: Vec<String> = m.iter().map(|i| s.label(i)).collect();
    format!("{{{}}}", items.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_text<S: FiniteStructure>(s: &S, name: &str, r: &GeneratorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "convention: {name}");
    let _ = writeln!(out, "  Γ (non-generators)     = {}", show_mask(s, &r.gamma));
    let _ = writeln!(out, "  Φ (maximal ∩)          = {}", show_mask(s, &r.phi));
    let _ = writeln!(out, "  indispensable          = {}", show_mask(s, &r.indispensables));
    let maximal: Vec<String> = r.maximal_substructures.iter().map(|m| show_mask(s, m)).collect();
    let _ = writeln!(out, "  maximal substructures  = [{}]", maximal.join(", "));
    let _ = writeln!(out, "  Γ = Φ: {}; Γ is a substructure: {}", yes(r.gamma_equals_phi), yes(r.gamma_is_substructure));
    out
}

fn render_reports<S: FiniteStructure>(
    o: &Options,
    s: &S,
    signature: Signature,
    lattice: Option<&FiniteLattice>,
    highlight: Highlight,
) -> Result<String, Failure> {
    let mut reports = Vec::new();
    for (name, cfg) in o.configs(signature) {
        reports.push((name, analyze_with(s, &cfg, limits(o))?));
    }
    match o.format {
        Format::Json => Ok(pretty(&per_convention(
            reports.iter().map(|(n, r)| (*n, serde_json::to_value(r).expect("report serializes"))).collect(),
        ))),
        Format::Text => Ok(reports.iter().map(|(n, r)| report_text(s, n, r)).collect()),
        Format::Dot => {
            let l = lattice.ok_or_else(|| Failure::parse("DOT output needs --signature lattice"))?;
            Ok(dot::render(l, Some(&reports[0].1), highlight))
        }
    }
}

pub fn analyze(o: &Options, text: &str, signature: Signature) -> Result<String, Failure> {
    let covers = CoverList::parse(text)?;
    match signature {
        Signature::Lattice => {
            let l = covers.to_lattice()?;
            render_reports(o, &l, signature, Some(&l), Highlight::Gamma)
        }
        Signature::Semilattice => {
            let s = covers.to_meet_semilattice()?;
            render_reports(o, &s, signature, None, Highlight::Gamma)
        }
    }
}

#[derive(Debug, Default, Serialize)]
struct CorpusStats {
    convention: &'static str,
    structures: usize,
    gamma_equals_phi: usize,
    gamma_is_substructure: usize,
    gamma_is_carrier: usize,
    /// Elements that are neither indispensable nor non-generators.
    dichotomy_violations: usize,
    /// Semilattices only: structures where Γ differs from the meet-reducibles.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_mismatches: Option<usize>,
}

impl CorpusStats {
    fn add<S: FiniteStructure>(&mut self, s: &S, cfg: &ClosureConfig, r: &GeneratorReport) -> Result<(), Failure> {
        self.structures += 1;
        self.gamma_equals_phi += r.gamma_equals_phi as usize;
        self.gamma_is_substructure += r.gamma_is_substructure as usize;
        self.gamma_is_carrier += r.gamma.is_full() as usize;
        self.dichotomy_violations += r.gamma.union(&r.indispensables).complement().len();
        if let Some(m) = self.oracle_mismatches.as_mut() {
            let ng = non_generators_bruteforce(s, cfg)?.gamma;
            *m += (ng != meet_reducible_elements(s, cfg)?.reducible) as usize;
        }
        Ok(())
    }

    fn failed(&self, signature: Signature) -> bool {
        self.gamma_equals_phi != self.structures
            || (signature == Signature::Semilattice
                && (self.dichotomy_violations > 0 || self.oracle_mismatches.unwrap_or(0) > 0))
    }
}

pub fn enumerate(o: &Options, n: usize, signature: Signature) -> Result<(String, u8), Failure> {
    let mut all = Vec::new();
    for (name, cfg) in o.configs(signature) {
        let mut stats = CorpusStats {
            convention: name,
            oracle_mismatches: (signature == Signature::Semilattice).then_some(0),
            ..Default::default()
        };
        match signature {
            Signature::Lattice => {
                for l in enumerate_lattices(n)? {
                    let r = analyze_with(&l, &cfg, limits(o))?;
                    stats.add(&l, &cfg, &r)?;
                }
            }
            Signature::Semilattice => {
                for s in enumerate_meet_semilattices(n)? {
                    let r = analyze_with(&s, &cfg, limits(o))?;
                    stats.add(&s, &cfg, &r)?;
                }
            }
        }
        all.push(stats);
    }
    let failed = all.iter().any(|s| s.failed(signature));
    let signature_name = match signature {
        Signature::Lattice => "lattice",
        Signature::Semilattice => "semilattice",
    };
    let out = match o.format {
        Format::Text => all
            .iter()
            .map(|s| {
                format!(
                    "n = {n}, {signature_name}s, convention {}: {} structures, Γ = Φ in {}, Γ closed in {}, dichotomy violations {}\n",
                    s.convention, s.structures, s.gamma_equals_phi, s.gamma_is_substructure, s.dichotomy_violations
                )
            })
            .collect(),
        Format::Json => pretty(&json!({ "n": n, "signature": signature_name, "results": all })),
        Format::Dot => return Err(Failure::parse("enumerate has no DOT output")),
    };
    if failed {
        eprintln!("latgen: a corpus-level claim failed for n = {n}");
        return Ok((out, 1));
    }
    Ok((out, 0))
}

pub fn export_dot(o: &Options, text: &str, highlight: Highlight) -> Result<String, Failure> {
    let l = CoverList::parse(text)?.to_lattice()?;
    lattice_dot(o, &l, highlight)
}

fn lattice_dot(o: &Options, l: &FiniteLattice, highlight: Highlight) -> Result<String, Failure> {
    let report = match highlight {
        Highlight::None => None,
        _ => {
            let (_, cfg) = o.configs(Signature::Lattice)[0];
            Some(analyze_with(l, &cfg, limits(o))?)
        }
    };
    Ok(dot::render(l, report.as_ref(), highlight))
}

pub fn closure(o: &Options, text: &str) -> Result<String, Failure> {
    let d = SetDesc::parse(text)?;
    let mut results = Vec::new();
    let mut lines = String::new();
    for (name, cfg) in o.configs(Signature::Lattice) {
        let closed = complete_closure(&d, &cfg, o.max_rounds)?;
        let check = is_complete_sublattice(&d, &cfg, o.max_rounds)?;
        let _ = writeln!(lines, "convention {name}: ⟨{d}⟩ = {closed}");
        if let Some(ev) = &check.evidence {
            let _ = writeln!(lines, "  not closed: {} is forced ({:?})", ev.element, ev.by);
        }
        results.push((
            name,
            json!({
                "family": d.family(),
                "input": serde_json::from_str::<Value>(&d.to_json()).expect("valid JSON"),
                "closure": serde_json::from_str::<Value>(&closed.to_json()).expect("valid JSON"),
                "closure_text": closed.to_string(),
                "input_is_closed": check.closed,
                "evidence": check.evidence,
            }),
        ));
    }
    match o.format {
        Format::Json => Ok(pretty(&per_convention(results))),
        Format::Text => Ok(lines),
        Format::Dot => Err(Failure::parse("closure has no DOT output")),
    }
}

pub fn truncate(o: &Options, family: Family, k: usize, highlight: Highlight) -> Result<String, Failure> {
    let l = truncate_family(family, k)?;
    match o.format {
        Format::Json => Ok(CoverList::from_lattice(&l).to_json()),
        Format::Dot => lattice_dot(o, &l, highlight),
        Format::Text => render_reports(o, &l, Signature::Lattice, Some(&l), highlight),
    }
}
