//! The subcommands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cubic_lines::builders::{example as build_example, ExampleName};
use cubic_lines::census::{census, Census, CensusOptions, ComponentKind, DEFAULT_TOL};
use cubic_lines::combinatorics::{
    combinatorial_count, degree_window, enumerate_admissible, free_tjurina_target, hirzebruch_check, DegreeWindow,
    WeakCombinatorics,
};
use cubic_lines::jacobian::{analyze_with, total_tjurina_combinatorial, AnalysisOptions, FreenessReport, SingularityType, Verdict};
use cubic_lines::reproduce::{self, CheckResult, Group, PROPERTY_SEED};
use cubic_lines::ComplexPoint;
use serde::Serialize;

use crate::file::ArrangementFile;
use crate::{CliError, Exit, Output, Provenance, Report};

// ---------------------------------------------------------------- analyze

#[derive(Debug, Clone)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    pub tol: f64,
    pub seed: u64,
}

impl AnalyzeArgs {
    pub fn new(file: impl Into<PathBuf>) -> Self {
        AnalyzeArgs { file: file.into(), tol: DEFAULT_TOL, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairMultiplicity {
    pub pair: (usize, usize),
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEntry {
    /// Normalized representative as `[re, im]` pairs.
    pub location: [[f64; 2]; 3],
    pub members: Vec<usize>,
    pub pairwise: Vec<PairMultiplicity>,
    pub classification: Option<SingularityType>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusEntry {
    pub wc: WeakCombinatorics,
    pub intersection_count: u64,
    pub tau_combinatorial: u64,
    pub points: Vec<PointEntry>,
    pub min_cluster_gap: Option<f64>,
    pub shears: Vec<((usize, usize), u32)>,
}

fn location(p: &ComplexPoint) -> [[f64; 2]; 3] {
    p.normalized().coords().map(|c| [c.re, c.im])
}

impl CensusEntry {
    fn new(c: &Census) -> Self {
        CensusEntry {
            wc: c.wc,
            intersection_count: combinatorial_count(c.wc.k, c.wc.d),
            tau_combinatorial: total_tjurina_combinatorial(&c.wc),
            points: c
                .points
                .iter()
                .map(|p| PointEntry {
                    location: location(&p.location),
                    members: p.members.clone(),
                    pairwise: p
                        .pairwise_mult
                        .iter()
                        .map(|(&pair, &multiplicity)| PairMultiplicity { pair, multiplicity })
                        .collect(),
                    classification: p.classification,
                })
                .collect(),
            min_cluster_gap: c.min_cluster_gap,
            shears: c.shears.iter().map(|s| (s.pair, s.attempt)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub label: String,
    /// Number of cubic and line components, when the file lists them.
    pub components: Option<(u32, u32)>,
    pub census: Option<CensusEntry>,
    pub freeness: FreenessReport,
    /// `"free"`, `"not free"`, `"not free by degree window"` or `"smooth curve"`.
    pub conclusion: String,
}

fn conclusion(r: &FreenessReport) -> String {
    match r.verdict {
        _ if r.smooth => "smooth curve".into(),
        Verdict::Free => "free".into(),
        Verdict::NotFree => "not free".into(),
        Verdict::NotFreeByDegreeWindow => "not free by degree window".into(),
    }
}

fn set_text(set: &[u32]) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn window_text(w: &DegreeWindow) -> String {
    format!("{} <= d1 <= {}  ->  {}", w.lower, w.upper, if w.is_empty() { "empty".into() } else { set_text(&w.admissible) })
}

pub fn analyze(args: &AnalyzeArgs) -> Result<Output<Analysis>, CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::new(Exit::Parse, format!("tolerance must be positive, got {}", args.tol)));
    }
    let parsed = ArrangementFile::read(&args.file)?;
    let census = match &parsed.arrangement {
        Some(arr) => Some(census(arr, CensusOptions { tol: args.tol, seed: args.seed })?),
        None => None,
    };
    let product = parsed.product.ok_or_else(|| {
        CliError::new(Exit::NotApplicable, "exact analysis needs an exact product or exact components")
    })?;
    let freeness = analyze_with(&product, census.as_ref().map(|c| &c.wc), AnalysisOptions::default())?;

    let mut t = String::new();
    let label = if parsed.label.is_empty() { args.file.display().to_string() } else { parsed.label.clone() };
    let components = parsed.arrangement.as_ref().map(|a| (a.k(), a.d()));
    let _ = writeln!(t, "arrangement {label}: degree m = {}", freeness.m);
    if let Some((k, d)) = components {
        let _ = writeln!(t, "  components: {k} cubic(s), {d} line(s)");
    }
    if let Some(c) = &census {
        let wc = c.wc;
        let _ = writeln!(
            t,
            "census: n2 = {}, n3 = {}, t5 = {} (n2 + 3 n3 + 3 t5 = {}, expected {})",
            wc.n2,
            wc.n3,
            wc.t5,
            wc.absorbed_intersections(),
            combinatorial_count(wc.k, wc.d)
        );
        for p in &c.points {
            let kind = p.classification.map_or("?".to_string(), |s| format!("{s:?}"));
            let mults: Vec<String> =
                p.pairwise_mult.iter().map(|((i, j), m)| format!("({i},{j}):{m}")).collect();
            let _ = writeln!(t, "  {kind:<3} members {:?}  multiplicities {}", p.members, mults.join(" "));
        }
        if let Some(g) = c.min_cluster_gap {
            let _ = writeln!(t, "  minimum distance between singular points: {g:.3e}");
        }
        let _ = writeln!(t, "tau (combinatorial) = n2 + 4 n3 + 5 t5 = {}", total_tjurina_combinatorial(&wc));
    }
    let _ = writeln!(t, "mdr = {}", freeness.d1);
    let tail: Vec<String> = freeness.hilbert_tail.iter().map(|(d, v)| format!("{d}:{v}")).collect();
    let _ = writeln!(t, "tau (algebraic) = {}  (Hilbert function {})", freeness.tau_algebraic, tail.join(" "));
    let _ = writeln!(t, "degree window for m = {}: {}", freeness.m, window_text(&freeness.window));
    let result = conclusion(&freeness);
    match (freeness.smooth, freeness.exponents) {
        (true, _) => {
            let _ = writeln!(t, "verdict: smooth curve (tau = 0; the freeness question is vacuous)");
        }
        (false, Some((d1, d2))) => {
            let _ = writeln!(t, "verdict: {} with exponents ({d1}, {d2})", freeness.verdict);
        }
        (false, None) => {
            let _ = writeln!(t, "verdict: {}", freeness.verdict);
        }
    }
    let _ = writeln!(t, "reason: {}", freeness.reason);

    let analysis = Analysis {
        label: parsed.label,
        components,
        census: census.as_ref().map(CensusEntry::new),
        freeness,
        conclusion: result,
    };
    let command = format!("analyze {}", args.file.display());
    Ok(Output {
        report: Report { provenance: Provenance::new(command, args.seed, Some(args.tol)), result: analysis },
        text: t,
        exit: Exit::Success,
    })
}

// -------------------------------------------------------------- enumerate

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateArgs {
    pub cubics: u32,
    pub lines: u32,
    pub free_only: bool,
    pub hirzebruch_filter: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HirzebruchTag {
    Pass,
    Fail,
    /// The inequality's hypotheses do not hold.
    NotApplicable,
}

impl HirzebruchTag {
    fn of(wc: &WeakCombinatorics) -> Self {
        match hirzebruch_check(wc) {
            Ok(true) => HirzebruchTag::Pass,
            Ok(false) => HirzebruchTag::Fail,
            Err(_) => HirzebruchTag::NotApplicable,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            HirzebruchTag::Pass => "pass",
            HirzebruchTag::Fail => "fail",
            HirzebruchTag::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationRow {
    pub n2: u64,
    pub n3: u64,
    pub t5: u64,
    /// `n2 + 3 n3 + 3 t5`.
    pub count: u64,
    /// `n2 + 4 n3 + 5 t5`.
    pub tau: u64,
    /// The `d1` in the degree window whose free Tjurina number equals `tau`.
    pub window_d1: Option<u32>,
    pub hirzebruch: HirzebruchTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub k: u32,
    pub d: u32,
    pub m: u32,
    pub intersection_count: u64,
    pub window: Option<DegreeWindow>,
    pub free_only: bool,
    pub hirzebruch_filter: bool,
    pub rows: Vec<EnumerationRow>,
}

pub fn enumerate(args: EnumerateArgs) -> Result<Output<Enumeration>, CliError> {
    let EnumerateArgs { cubics: k, lines: d, free_only, hirzebruch_filter } = args;
    if k == 0 || d == 0 {
        return Err(CliError::new(Exit::Parse, "--cubics and --lines must both be at least 1"));
    }
    let m = 3 * k + d;
    let window = degree_window(m).ok();
    let admissible = window.as_ref().map(|w| w.admissible.clone()).unwrap_or_default();
    let rows: Vec<EnumerationRow> = enumerate_admissible(k, d)
        .iter()
        .map(|wc| {
            let tau = total_tjurina_combinatorial(wc);
            EnumerationRow {
                n2: wc.n2,
                n3: wc.n3,
                t5: wc.t5,
                count: wc.absorbed_intersections(),
                tau,
                window_d1: admissible.iter().copied().find(|&d1| free_tjurina_target(m, d1) == tau as i64),
                hirzebruch: HirzebruchTag::of(wc),
            }
        })
        // The filter only removes rows that violate the inequality; rows
        // outside its hypotheses are kept.
        .filter(|r| !free_only || r.window_d1.is_some())
        .filter(|r| !hirzebruch_filter || r.hirzebruch != HirzebruchTag::Fail)
        .collect();

    let mut t = String::new();
    let count = combinatorial_count(k, d);
    let _ = writeln!(t, "k = {k} cubic(s), d = {d} line(s), m = {m}; intersection count {count}");
    if let Some(w) = &window {
        let _ = writeln!(t, "degree window: {}", window_text(w));
    }
    let mut filters = Vec::new();
    if free_only {
        filters.push("free candidates only");
    }
    if hirzebruch_filter {
        filters.push("Hirzebruch filter");
    }
    if !filters.is_empty() {
        let _ = writeln!(t, "filters: {}", filters.join(", "));
    }
    let _ = writeln!(t, "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>10}", "n2", "n3", "t5", "count", "tau", "d1", "hirzebruch");
    for r in &rows {
        let d1 = r.window_d1.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(
            t,
            "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>10}",
            r.n2,
            r.n3,
            r.t5,
            r.count,
            r.tau,
            d1,
            r.hirzebruch.as_str()
        );
    }
    let _ = writeln!(t, "{} row(s)", rows.len());

    let mut command = format!("enumerate --cubics {k} --lines {d}");
    if free_only {
        command.push_str(" --free-only");
    }
    if hirzebruch_filter {
        command.push_str(" --hirzebruch-filter");
    }
    let result = Enumeration { k, d, m, intersection_count: count, window, free_only, hirzebruch_filter, rows };
    Ok(Output { report: Report { provenance: Provenance::new(command, 0, None), result }, text: t, exit: Exit::Success })
}

// ----------------------------------------------------------------- window

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeTarget {
    pub d1: u32,
    pub d2: u32,
    pub tau: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowResult {
    pub window: DegreeWindow,
    /// Whether some `d1` is admissible; when false no arrangement of this
    /// degree is free.
    pub can_be_free: bool,
    pub targets: Vec<FreeTarget>,
}

pub fn window(m: u32) -> Result<Output<WindowResult>, CliError> {
    let w = degree_window(m).map_err(|e| CliError::new(Exit::Parse, e.to_string()))?;
    let targets: Vec<FreeTarget> = w
        .admissible
        .iter()
        .map(|&d1| FreeTarget { d1, d2: m - 1 - d1, tau: free_tjurina_target(m, d1) })
        .collect();
    let mut t = String::new();
    let _ = writeln!(t, "degree window for m = {m}: {}", window_text(&w));
    if w.is_empty() {
        let _ = writeln!(t, "an arrangement of degree {m} cannot be free");
    } else {
        for f in &targets {
            let _ = writeln!(t, "  d1 = {}: exponents ({}, {}), free iff tau = {}", f.d1, f.d1, f.d2, f.tau);
        }
    }
    let result = WindowResult { can_be_free: !w.is_empty(), window: w, targets };
    Ok(Output {
        report: Report { provenance: Provenance::new(format!("window --degree {m}"), 0, None), result },
        text: t,
        exit: Exit::Success,
    })
}

// ---------------------------------------------------------------- example

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub kind: ComponentKind,
    /// Exact polynomial, or the numeric coefficients in graded-lex order.
    pub text: String,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleResult {
    pub name: String,
    pub components: Vec<ComponentSummary>,
    pub k: u32,
    pub d: u32,
    pub degree: u32,
    pub emitted: Option<String>,
    pub file: ArrangementFile,
}

fn numeric_text(c: &cubic_lines::NumericPoly) -> String {
    let coeffs: Vec<String> = c.coeffs().iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
    format!("[{}]", coeffs.join(", "))
}

pub fn example(name: &str, emit: Option<&Path>) -> Result<Output<ExampleResult>, CliError> {
    let name: ExampleName = name.parse()?;
    let arr = build_example(name);
    let file = ArrangementFile::from_arrangement(&arr);
    let json = file.to_json();
    // The emitted file must parse back to the same content.
    let reparsed = ArrangementFile::from_json(&json)?.parse()?;
    let same = reparsed.arrangement.as_ref().map(ArrangementFile::from_arrangement).map(|f| f.to_json());
    if same.as_deref() != Some(json.as_str()) {
        return Err(CliError::new(Exit::NotApplicable, format!("{name}: emitted file does not round-trip")));
    }
    if let Some(path) = emit {
        std::fs::write(path, &json)
            .map_err(|e| CliError::new(Exit::Parse, format!("cannot write {}: {e}", path.display())))?;
    }
    let components: Vec<ComponentSummary> = arr
        .components()
        .iter()
        .map(|c| ComponentSummary {
            kind: c.kind(),
            text: c.exact_poly().map_or_else(|| numeric_text(c.numeric()), |p| p.to_string()),
            exact: c.exact_poly().is_some(),
        })
        .collect();
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{name}: {} component(s) ({} cubic(s), {} line(s)), product degree {}",
        components.len(),
        arr.k(),
        arr.d(),
        arr.m()
    );
    for (i, c) in components.iter().enumerate() {
        let kind = match c.kind {
            ComponentKind::Cubic => "cubic",
            ComponentKind::Line => "line",
        };
        let _ = writeln!(t, "  [{i}] {kind:<5} {}{}", c.text, if c.exact { "" } else { "  (numeric)" });
    }
    if let Some(p) = arr.product() {
        let _ = writeln!(t, "product: {p}");
    }
    if let Some(path) = emit {
        let _ = writeln!(t, "wrote {}", path.display());
    }
    let mut command = format!("example {name}");
    if let Some(path) = emit {
        let _ = write!(command, " --emit {}", path.display());
    }
    let result = ExampleResult {
        name: name.to_string(),
        components,
        k: arr.k(),
        d: arr.d(),
        degree: arr.m(),
        emitted: emit.map(|p| p.display().to_string()),
        file,
    };
    Ok(Output { report: Report { provenance: Provenance::new(command, 0, None), result }, text: t, exit: Exit::Success })
}

// -------------------------------------------------------------- reproduce

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupResult {
    pub group: Group,
    pub claim: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproductionMatrix {
    pub passed: bool,
    pub groups: Vec<GroupResult>,
}

pub fn reproduce(only: &[Group]) -> Result<Output<ReproductionMatrix>, CliError> {
    let checks = reproduce::run(only);
    let mut groups: Vec<GroupResult> = Vec::new();
    for c in checks {
        match groups.last_mut() {
            Some(g) if g.group == c.group => {
                g.passed &= c.passed;
                g.checks.push(c);
            }
            _ => groups.push(GroupResult { group: c.group, claim: c.group.claim(), passed: c.passed, checks: vec![c] }),
        }
    }
    let passed = groups.iter().all(|g| g.passed);
    let mut t = String::new();
    for g in &groups {
        let _ = writeln!(t, "{} {:<11} {}", if g.passed { "PASS" } else { "FAIL" }, g.group.as_str(), g.claim);
        for c in &g.checks {
            let _ = writeln!(t, "       {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }
    let failed = groups.iter().filter(|g| !g.passed).count();
    let _ = writeln!(t, "{} of {} group(s) passed", groups.len() - failed, groups.len());

    let mut command = "reproduce-paper".to_string();
    for g in only {
        let _ = write!(command, " --only {}", g.as_str());
    }
    let exit = if passed { Exit::Success } else { Exit::ReproductionFailure };
    let result = ReproductionMatrix { passed, groups };
    Ok(Output { report: Report { provenance: Provenance::new(command, PROPERTY_SEED, None), result }, text: t, exit })
}
