use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use ybhom_core::bimodule::verify_bimodule;
use ybhom_core::brcomplex::{braided_chain_complex, braided_cochain_complex, critical_cochain_complex, critical_complex};
use ybhom_core::catalog::{braided_set_isomorphic, enumerate_idempotent_braidings, size2_family, SIZE2_TAGS};
use ybhom_core::hochschild::{
    compare_homology_with, enumerate_reduced_monoid, factorizable_double_complex, normalized_bar_complex,
};
use ybhom_core::products::{
    check_hirsch_failure, check_homotopy_identity, circle, cup, cup_left_right, differential, hochschild_cup,
    qs_pullback, Cochain, Coefficients,
};
use ybhom_core::{BraidedSet, ChainComplex, Error};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::formats::{complex_json, group_json, homology_json, word_key, BraidedSetFile, CochainFile};
use crate::inputs::*;
use crate::suites;

/// A finished command: its report and whether every requested property held.
pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn pass(json: Value, text: String) -> Self {
        Outcome { passed: true, json, text }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli).and_then(|o| emit(&cli.global, &o).map(|()| o.passed)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    check_maxdeg(g.maxdeg)?;
    match &cli.command {
        Command::Verify(a) => verify(g, a),
        Command::Classify(a) => classify(a),
        Command::Homology(a) => homology(g, a),
        Command::Compare(a) => compare(g, a),
        Command::Products(a) => products(g, a),
        Command::Export(a) => export(g, a),
    }
}

/// Byte-stable rendering, written through a temporary file and renamed into place.
pub fn emit(g: &GlobalArgs, o: &Outcome) -> CliResult<()> {
    let body = match g.format {
        Format::Json => serde_json::to_string_pretty(&o.json).expect("reports serialize") + "\n",
        Format::Text => o.text.clone(),
    };
    match &g.out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => write_atomic(Path::new(path), body.as_bytes()),
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Input(format!("{flag} is required")))
}

// ---------------------------------------------------------------- verify

fn verify(g: &GlobalArgs, a: &VerifyArgs) -> CliResult<Outcome> {
    let mut checks: Vec<(String, bool, String)> = Vec::new();
    let mut suite_reports = Vec::new();
    if let Some(sel) = &a.suites {
        let ids: Vec<char> = if sel == "all" {
            suites::SUITES.iter().map(|(c, _)| *c).collect()
        } else {
            sel.split(',').map(|t| t.trim().chars().next().unwrap_or('?')).collect()
        };
        for id in ids {
            let o = suites::run_suite(id, g.seed).ok_or_else(|| CliError::Input(format!("no property suite `{id}`")))?;
            let shown: Vec<&String> = o.violations.iter().take(10).collect();
            suite_reports.push(json!({
                "suite": o.id.to_string(),
                "title": o.title,
                "checks": o.checks,
                "violations": o.violations.len(),
                "examples": shown,
            }));
            checks.push((format!("suite ({}) {}", o.id, o.title), o.passes(), format!("{} checks, {} violations", o.checks, o.violations.len())));
        }
    }
    if a.braiding.is_none() && a.suites.is_none() {
        return Err(CliError::Input("--braiding is required unless --suites is given".into()));
    }
    if let Some(desc) = &a.braiding {
        let b = load_braiding(desc, g.pseudo_unit)?;
        let s = &b.set;
        let any = a.ybe || a.idempotent || a.unit || a.semigroup || a.bimodule;
        let (ybe, idem) = (a.ybe || !any, a.idempotent || !any);
        let unit = a.unit || (!any && s.pseudo_unit().is_some());
        let semigroup = a.semigroup || (!any && s.is_idempotent());
        if ybe {
            let r = s.check_ybe();
            checks.push(("ybe".into(), r.holds, r.witness.map(|w| format!("fails on ({})", word_key(&w))).unwrap_or_default()));
        }
        if idem {
            let r = s.check_idempotent();
            checks.push(("idempotent".into(), r.holds, r.witness.map(|w| format!("fails on ({})", word_key(&w))).unwrap_or_default()));
        }
        if unit {
            let e = s.pseudo_unit().ok_or_else(|| CliError::Input("no pseudo-unit to check (use --pseudo-unit)".into()))?;
            match s.check_pseudo_unit(e, a.bound) {
                Ok(r) => {
                    let detail = match (r.condition1_witness, &r.condition2_witness) {
                        (Some(x), _) => format!("σ fails to commute {e} with {x}"),
                        (None, Some(w)) => format!("erasing {e} from ({}) leaves a non-normal word", word_key(w)),
                        (None, None) => format!("normal words up to length {}", r.bound),
                    };
                    checks.push(("pseudo-unit".into(), r.passes(), detail))
                }
                Err(err) => checks.push(("pseudo-unit".into(), false, err.to_string())),
            }
        }
        if semigroup {
            match s.verify_braided_semigroup(a.bound) {
                Ok(r) => checks.push((
                    "semigroup".into(),
                    r.passes(),
                    r.violation
                        .map(|v| format!("{:?} law fails on {}", v.law, v.words.iter().map(|w| format!("({})", word_key(w))).collect::<Vec<_>>().join(" "))).unwrap_or_else(|| format!("{} normal words", r.words_checked)),
                )),
                Err(err) => checks.push(("semigroup".into(), false, err.to_string())),
            }
        }
        if a.bimodule {
            let m = build_set_coefficients(&g.coeff, s)?;
            let r = verify_bimodule(s, &m);
            checks.push(("bimodule".into(), r.passes(), format!("{:?}", r.laws)));
        }
    }
    let passed = checks.iter().all(|(_, ok, _)| *ok);
    let mut text = String::new();
    for (name, ok, detail) in &checks {
        text += &format!("{} {name}{}\n", if *ok { "PASS" } else { "FAIL" }, if detail.is_empty() { String::new() } else { format!(": {detail}") });
    }
    let json = json!({
        "braiding": a.braiding,
        "passed": passed,
        "checks": checks.iter().map(|(n, ok, d)| json!({"check": n, "pass": ok, "detail": d})).collect::<Vec<_>>(),
        "suites": suite_reports,
    });
    Ok(Outcome { passed, json, text })
}

// ---------------------------------------------------------------- classify

fn classify(a: &ClassifyArgs) -> CliResult<Outcome> {
    let report = enumerate_idempotent_braidings(a.size)?;
    let tags: Vec<(&str, BraidedSet)> = if a.size == 2 {
        SIZE2_TAGS.iter().map(|&t| (t, size2_family(t).expect("catalog tag"))).collect()
    } else {
        Vec::new()
    };
    let mut passed = true;
    let mut reps = Vec::new();
    let mut text = format!("{} isomorphism classes of idempotent braidings on {} elements ({} tables)\n", report.classes.len(), a.size, report.raw_count);
    for (i, (s, orbit)) in report.classes.iter().zip(&report.orbit_sizes).enumerate() {
        let tag = tags.iter().find(|(_, t)| braided_set_isomorphic(s, t).is_some()).map(|(t, _)| *t);
        let mut entry = json!({"index": i, "orbit_size": orbit, "braiding": BraidedSetFile::from_set(s)});
        if let Some(t) = tag {
            entry["tag"] = json!(t);
        }
        if a.check {
            let ok = s.check_ybe().holds && s.check_idempotent().holds;
            passed &= ok;
            entry["verified"] = json!(ok);
        }
        text += &format!("  #{i:<3} orbit {orbit:<3} {}\n", tag.unwrap_or(""));
        reps.push(entry);
    }
    let json = json!({
        "size": a.size,
        "raw_count": report.raw_count,
        "classes": report.classes.len(),
        "representatives": reps,
    });
    Ok(Outcome { passed, json, text })
}

// ---------------------------------------------------------------- complexes

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Full,
    Critical,
    Bar,
    Double,
}

struct Built {
    complex: ChainComplex,
    source: String,
    coefficients: String,
}

fn no_finite_monoid(name: &str, why: &str) -> CliError {
    CliError::Bound(format!(
        "{name}: {why}. The bar-complex route needs a finite reduced structure monoid; for free or \
         other infinite structure monoids use `homology --critical`, whose answer matches the closed \
         forms (e.g. ℤ, ℤ^n, 0, … for the free monoid on n letters)"
    ))
}

fn build(g: &GlobalArgs, kind: Kind, cochains: bool, braiding: Option<&str>, monoid: Option<&str>, bound: usize) -> CliResult<Built> {
    let k = g.maxdeg;
    let dualize = |c: ChainComplex| if cochains { c.dual() } else { c };
    match kind {
        Kind::Full | Kind::Critical => {
            let b = load_braiding(braiding.ok_or_else(|| CliError::Input("--braiding is required".into()))?, g.pseudo_unit)?;
            let m = load_set_coefficients(&g.coeff, &b.set)?;
            let e = b.set.pseudo_unit();
            let complex = match (kind, cochains) {
                (Kind::Full, false) => braided_chain_complex(&b.set, &m, k)?,
                (Kind::Full, true) => braided_cochain_complex(&b.set, &m, k)?,
                (_, false) => critical_complex(&b.set, e, &m, k)?,
                (_, true) => critical_cochain_complex(&b.set, e, &m, k)?,
            };
            Ok(Built { complex, source: b.name, coefficients: g.coeff.clone() })
        }
        Kind::Bar => {
            let (gm, source) = match (monoid, braiding) {
                (Some(path), _) => (load_monoid(path)?, path.to_string()),
                (None, Some(desc)) => {
                    let b = load_braiding(desc, g.pseudo_unit)?;
                    let e = b.set.pseudo_unit().ok_or_else(|| no_finite_monoid(desc, "no pseudo-unit, so the structure monoid is infinite"))?;
                    let red = enumerate_reduced_monoid(&b.set, e, bound).map_err(|err| match err {
                        Error::MonoidBound(n) => no_finite_monoid(desc, &format!("reduced structure monoid exceeds {n} elements")),
                        other => other.into(),
                    })?;
                    (red.monoid, b.name)
                }
                (None, None) => return Err(CliError::Input("--bar needs --monoid or --braiding".into())),
            };
            let m = load_monoid_coefficients(&g.coeff, &gm)?;
            let complex = dualize(normalized_bar_complex(&gm, &m, k)?);
            Ok(Built { complex, source, coefficients: g.coeff.clone() })
        }
        Kind::Double => {
            let desc = braiding.ok_or_else(|| CliError::Input("--double needs --braiding".into()))?;
            let b = load_braiding(desc, None)?;
            let f = b
                .factorization
                .ok_or_else(|| CliError::Input("--double needs a factorization: or assoc: braiding".into()))?;
            let m = load_set_coefficients(&g.coeff, &f.set)?;
            let dc = factorizable_double_complex(&f, &m, k)?;
            let report = dc.verify()?;
            if !report.holds() {
                return Err(CliError::Input(format!("double complex check failed: {report:?}")));
            }
            Ok(Built { complex: dualize(dc.totalization()?), source: b.name, coefficients: g.coeff.clone() })
        }
    }
}

fn homology_text(title: &str, groups: &[ybhom_core::AbelianGroup], cochains: bool) -> String {
    let mut text = format!("{title}\n");
    for (k, h) in groups.iter().enumerate() {
        text += &format!("  {}{k} = {h}\n", if cochains { "H^" } else { "H_" });
    }
    text
}

fn homology(g: &GlobalArgs, a: &HomologyArgs) -> CliResult<Outcome> {
    let kind = if a.full {
        Kind::Full
    } else if a.bar || (a.monoid.is_some() && !a.critical) {
        Kind::Bar
    } else if a.double {
        Kind::Double
    } else {
        Kind::Critical
    };
    let name = match kind {
        Kind::Full => "full",
        Kind::Critical => "critical",
        Kind::Bar => "bar",
        Kind::Double => "double",
    };
    let built = build(g, kind, a.cohomology, a.braiding.as_deref(), a.monoid.as_deref(), a.bound)?;
    let groups = built.complex.homology_all();
    let mut json = json!({
        "variant": name,
        "source": built.source,
        "coefficients": built.coefficients,
        "maxdeg": g.maxdeg,
        "orientation": if a.cohomology { "cochain" } else { "chain" },
        "ranks": built.complex.ranks(),
        "homology": homology_json(&groups),
    });
    let mut text = homology_text(&format!("{name} {} of {} ({})", if a.cohomology { "cohomology" } else { "homology" }, built.source, built.coefficients), &groups, a.cohomology);
    if let Some(p) = a.prime {
        if p < 2 {
            return Err(CliError::Input("--prime must be at least 2".into()));
        }
        let betti = (0..groups.len()).map(|k| built.complex.betti_mod_p(k, p)).collect::<Result<Vec<_>, _>>()?;
        text += &format!("  betti over F_{p}: {betti:?}\n");
        json["betti_mod_p"] = json!({"p": p, "betti": betti});
    }
    Ok(Outcome::pass(json, text))
}

// ---------------------------------------------------------------- compare

fn compare(g: &GlobalArgs, a: &CompareArgs) -> CliResult<Outcome> {
    let b = load_braiding(&a.braiding, g.pseudo_unit)?;
    let e = b
        .set
        .pseudo_unit()
        .ok_or_else(|| no_finite_monoid(&a.braiding, "no pseudo-unit, so the structure monoid is infinite"))?;
    let red = enumerate_reduced_monoid(&b.set, e, a.bound).map_err(|err| match err {
        Error::MonoidBound(n) => no_finite_monoid(&a.braiding, &format!("reduced structure monoid exceeds {n} elements")),
        other => other.into(),
    })?;
    let m = load_monoid_coefficients(&g.coeff, &red.monoid)?;
    let report = compare_homology_with(&b.set, e, &red, &m, g.maxdeg)?;
    let mut text = format!("{}: reduced structure monoid of order {}\n", b.name, report.monoid_size);
    let degrees: Vec<Value> = report
        .degrees
        .iter()
        .map(|d| {
            text += &format!(
                "  degree {}: critical {} | bar {} | induced map {} -> {}\n",
                d.degree,
                d.critical,
                d.bar,
                if d.induced_isomorphism { "iso" } else { "not iso" },
                if d.agrees() { "agree" } else { "DISAGREE" }
            );
            json!({
                "degree": d.degree,
                "critical": group_json(d.degree, &d.critical),
                "bar": group_json(d.degree, &d.bar),
                "induced_isomorphism": d.induced_isomorphism,
                "agrees": d.agrees(),
            })
        })
        .collect();
    let passed = report.all_agree();
    let json = json!({
        "braiding": b.name,
        "coefficients": g.coeff,
        "maxdeg": g.maxdeg,
        "monoid_size": report.monoid_size,
        "monoid": crate::formats::MonoidFile::from_monoid(&red.monoid),
        "degrees": degrees,
        "all_agree": passed,
    });
    Ok(Outcome { passed, json, text })
}

// ---------------------------------------------------------------- products

fn cochain_json(f: &Cochain) -> Value {
    serde_json::to_value(CochainFile::from_cochain(f)).expect("cochains serialize")
}

fn operands(g: &GlobalArgs, a: &ProductsArgs, s: &BraidedSet, coeff: &Coefficients, count: usize) -> CliResult<Vec<Cochain>> {
    if let Some(degrees) = &a.random {
        if degrees.len() != count {
            return Err(CliError::Input(format!("--random needs {count} degree(s)")));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d > g.maxdeg) {
            return Err(CliError::Input(format!("degree {d} exceeds --maxdeg {}", g.maxdeg)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        return Ok(degrees
            .iter()
            .map(|&d| {
                Cochain::from_fn(s.size(), d, |_| {
                    (0..coeff.rank()).map(|_| num_bigint::BigInt::from(rng.gen_range(-3i64..=3))).collect()
                })
                .reduced(coeff)
            })
            .collect());
    }
    let files = [&a.f, &a.g];
    files[..count]
        .iter()
        .zip(["--f", "--g"])
        .map(|(f, flag)| {
            let c = load_cochain(required(f, flag)?, s, coeff)?;
            if c.degree() > g.maxdeg {
                return Err(CliError::Input(format!("{flag} has degree {} above --maxdeg {}", c.degree(), g.maxdeg)));
            }
            Ok(c.reduced(coeff))
        })
        .collect()
}

fn products(g: &GlobalArgs, a: &ProductsArgs) -> CliResult<Outcome> {
    let b = load_braiding(&a.braiding, g.pseudo_unit)?;
    let s = &b.set;
    let coeff = load_product_coefficients(&g.coeff, s)?;
    let mut json = json!({"operation": format!("{:?}", a.operation).to_lowercase(), "braiding": b.name, "coefficients": g.coeff});
    let mut passed = true;
    let text;
    match a.operation {
        Operation::Cup | Operation::Circle | Operation::CupLeftRight => {
            let ops = operands(g, a, s, &coeff, 2)?;
            let (f, h) = (&ops[0], &ops[1]);
            if f.degree() + h.degree() > g.maxdeg {
                return Err(CliError::Input(format!("product degree exceeds --maxdeg {}", g.maxdeg)));
            }
            json["f"] = cochain_json(f);
            json["g"] = cochain_json(h);
            match a.operation {
                Operation::Cup => json["result"] = cochain_json(&cup(s, &coeff, f, h)?),
                Operation::Circle => json["result"] = cochain_json(&circle(s, &coeff, f, h)?),
                _ => {
                    let (l, r) = cup_left_right(s, &coeff, f, h)?;
                    json["left"] = cochain_json(&l);
                    json["right"] = cochain_json(&r);
                }
            }
            text = serde_json::to_string_pretty(&json).expect("reports serialize") + "\n";
        }
        Operation::Differential => {
            let f = &operands(g, a, s, &coeff, 1)?[0];
            json["f"] = cochain_json(f);
            json["result"] = cochain_json(&differential(s, &coeff, f)?);
            text = serde_json::to_string_pretty(&json).expect("reports serialize") + "\n";
        }
        Operation::Homotopy => {
            let ops = operands(g, a, s, &coeff, 2)?;
            let rep = check_homotopy_identity(s, &coeff, &ops[0], &ops[1])?;
            passed = rep.holds();
            json["holds"] = json!(passed);
            json["witness"] = json!(rep.witness.as_deref().map(word_key));
            json["f"] = cochain_json(&ops[0]);
            json["g"] = cochain_json(&ops[1]);
            text = format!(
                "homotopy identity for degrees ({}, {}): {}\n",
                ops[0].degree(),
                ops[1].degree(),
                if passed { "holds" } else { "FAILS" }
            );
        }
        Operation::Hirsch => {
            if a.values.is_empty() {
                return Err(CliError::Input("--values must not be empty".into()));
            }
            let rep = check_hirsch_failure(s, &coeff, &a.values)?;
            // the formula may fail in general; it must hold whenever h is a cocycle
            passed = rep.cocycle_violation.is_none();
            let triple = |t: &Option<[Cochain; 3]>| {
                t.as_ref().map(|[f, g, h]| json!({"f": cochain_json(f), "g": cochain_json(g), "h": cochain_json(h)}))
            };
            json["values"] = json!(a.values);
            json["triples_tested"] = json!(rep.triples_tested);
            json["cocycle_triples"] = json!(rep.cocycle_triples);
            json["formula_fails"] = json!(rep.violation.is_some());
            json["violation"] = json!(triple(&rep.violation));
            json["cocycle_violation"] = json!(triple(&rep.cocycle_violation));
            text = format!(
                "{} triples, {} with dh = 0: formula {}; cocycle case {}\n",
                rep.triples_tested,
                rep.cocycle_triples,
                if rep.violation.is_some() { "fails on some triple" } else { "holds on all" },
                if passed { "holds" } else { "FAILS" }
            );
        }
        Operation::Qs => {
            let f = &operands(g, a, s, &coeff, 1)?[0];
            json["result"] = cochain_json(&qs_pullback(s, &coeff, s.pseudo_unit(), f)?);
            text = serde_json::to_string_pretty(&json).expect("reports serialize") + "\n";
        }
        Operation::QsCup => {
            let ops = operands(g, a, s, &coeff, 2)?;
            let e = s.pseudo_unit();
            let pull = |c: &Cochain| qs_pullback(s, &coeff, e, c);
            let lhs = pull(&hochschild_cup(s, &coeff, &ops[0], &ops[1])?)?;
            let rhs = cup(s, &coeff, &pull(&ops[0])?, &pull(&ops[1])?)?;
            passed = lhs == rhs;
            json["holds"] = json!(passed);
            json["pullback_of_product"] = cochain_json(&lhs);
            json["product_of_pullbacks"] = cochain_json(&rhs);
            text = format!("QS pullback preserves cup: {}\n", if passed { "yes" } else { "NO" });
        }
    }
    Ok(Outcome { passed, json, text })
}

// ---------------------------------------------------------------- export

fn export(g: &GlobalArgs, a: &ExportArgs) -> CliResult<Outcome> {
    if a.kind == ExportKind::Braiding {
        let b = load_braiding(required(&a.braiding, "--braiding")?, g.pseudo_unit)?;
        let json = serde_json::to_value(BraidedSetFile::from_set(&b.set)).expect("braided sets serialize");
        let text = serde_json::to_string_pretty(&json).expect("reports serialize") + "\n";
        return Ok(Outcome::pass(json, text));
    }
    let (kind, cochains) = match a.kind {
        ExportKind::Full => (Kind::Full, false),
        ExportKind::Cochain => (Kind::Full, true),
        ExportKind::Critical => (Kind::Critical, false),
        ExportKind::CriticalCochain => (Kind::Critical, true),
        ExportKind::Bar => (Kind::Bar, false),
        ExportKind::Double => (Kind::Double, false),
        ExportKind::Braiding => unreachable!(),
    };
    let built = build(g, kind, cochains, a.braiding.as_deref(), a.monoid.as_deref(), a.bound)?;
    let mut json = complex_json(&built.complex);
    json["source"] = json!(built.source);
    json["coefficients"] = json!(built.coefficients);
    json["maxdeg"] = json!(g.maxdeg);
    let text = serde_json::to_string_pretty(&json).expect("reports serialize") + "\n";
    Ok(Outcome::pass(json, text))
}
