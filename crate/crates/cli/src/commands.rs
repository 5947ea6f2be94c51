use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use saito_core::enumerate::{self, EnumerationConfig, EnumerationSummary};
use saito_core::group::{generating_roots, geometric_roots, symmetry_group, GroupPresentation, Side};
use saito_core::json;
use saito_core::polynomial::{parse_polynomial, AtomKind, InvertiblePolynomial};
use saito_core::zeta::{self, VerificationReport};
use saito_core::{BigInt, Error};

use crate::args::{AnalyzeArgs, Cli, Command, EnumerateArgs, InputArgs};
use crate::{EXIT_DATA, EXIT_SOFTWARE, EXIT_USAGE};

/// Subgroup listing refused because the group is too large.
const EXIT_RESOURCE: u8 = 69;

pub const THEOREM_FAILED: u8 = 1;
pub const COROLLARY_FAILED: u8 = 2;
pub const TRUNCATED: u8 = 4;

pub struct Outcome {
    pub output: String,
    pub out_file: Option<PathBuf>,
    /// Lines for stderr.
    pub notes: Vec<String>,
    pub status: u8,
}

pub struct Failure {
    pub message: String,
    pub status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Shape { .. } | Error::SingularPolynomial => EXIT_DATA,
            Error::Precondition(_) => EXIT_USAGE,
            Error::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_SOFTWARE,
        };
        Failure {
            message: e.to_string(),
            status,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// What a command produced, before rendering.
struct Report {
    input: Value,
    result: Value,
    text: String,
    notes: Vec<String>,
    status: u8,
}

pub fn run(cli: &Cli) -> CmdResult {
    let (name, report, out_file) = match &cli.command {
        Command::Analyze(a) => ("analyze", analyze(a)?, None),
        Command::Zeta(a) => ("zeta", zeta_cmd(a)?, None),
        Command::Dual(a) => ("dual", dual(a)?, None),
        Command::Roots(a) => ("roots", roots(a)?, None),
        Command::Enumerate(a) => ("enumerate", enumerate_cmd(a)?, a.out.clone()),
    };
    let output = if cli.json {
        let envelope = json!({
            "tool": "saito",
            "version": env!("CARGO_PKG_VERSION"),
            "command": name,
            "input": report.input,
            "result": report.result,
        });
        let mut s = serde_json::to_string_pretty(&envelope).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        report.text
    };
    Ok(Outcome {
        output,
        out_file,
        notes: report.notes,
        status: report.status,
    })
}

fn read_input(a: &InputArgs) -> Result<(InvertiblePolynomial, Vec<String>), Failure> {
    let parsed = parse_polynomial(&a.input)?;
    let notes = parsed.warnings.iter().map(|w| format!("warning: {w}")).collect();
    Ok((parsed.polynomial, notes))
}

fn input_json(a: &InputArgs) -> Value {
    Value::String(a.input.clone())
}

/// `Z9`, `Z2 x Z12`, or `1` for the trivial group.
fn group_name(g: &GroupPresentation) -> String {
    let factors = g.nontrivial_invariant_factors();
    if factors.is_empty() {
        return "1".into();
    }
    factors
        .iter()
        .map(|s| format!("Z{s}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

fn group_line(g: &GroupPresentation) -> String {
    let kind = if g.is_cyclic() { "cyclic" } else { "not cyclic" };
    format!("{}  (order {}, {kind})", group_name(g), g.order())
}

fn atom_label(kind: AtomKind, exponents: &[u64]) -> String {
    let name = match kind {
        AtomKind::Chain => "chain",
        AtomKind::Loop => "loop",
    };
    let e: Vec<String> = exponents.iter().map(u64::to_string).collect();
    format!("{name}({})", e.join(","))
}

fn analyze(a: &AnalyzeArgs) -> Result<Report, Failure> {
    let (f, notes) = read_input(&a.input)?;
    let w = f.weights();
    let decomposition = f.decompose();
    let g = symmetry_group(&f, Side::Direct);
    let gt = symmetry_group(&f, Side::Transposed);
    let names = f.variables();

    let atoms_json: Vec<Value> = decomposition
        .atoms
        .iter()
        .map(|atom| {
            json!({
                "kind": match atom.kind { AtomKind::Chain => "chain", AtomKind::Loop => "loop" },
                "variables": atom.variables.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "exponents": atom.exponents,
                "degenerateSuspect": atom.has_unit_exponent(),
            })
        })
        .collect();
    let group_json = |g: &Arc<GroupPresentation>| {
        let mut v = json::group(g);
        v["generators"] = Value::Array(
            g.generators()
                .iter()
                .map(|x| json::rational_vector(x.coords()))
                .collect(),
        );
        v
    };
    let mut result = json!({
        "polynomial": f.to_string(),
        "variables": names,
        "E": json::matrix(f.exponents()),
        "weights": {
            "canonical": json::integers(&w.canonical_weights),
            "degree": json::integer(&w.canonical_degree),
            "gcdFactor": json::integer(&w.gcd_factor),
            "reduced": json::integers(&w.reduced_weights),
            "reducedDegree": json::integer(&w.reduced_degree),
        },
        "decomposition": {
            "nonDegenerate": decomposition.non_degenerate,
            "atoms": atoms_json,
        },
        "transpose": f.transpose().to_string(),
        "groups": {
            "direct": group_json(&g),
            "transposed": group_json(&gt),
        },
        "warnings": notes.iter().map(|n| n.trim_start_matches("warning: ")).collect::<Vec<_>>(),
    });

    let mut text = String::new();
    let _ = writeln!(text, "polynomial  {f}");
    let _ = writeln!(text, "exponents   {}", f.exponents());
    let _ = writeln!(text, "weights     {}", weights_text(&f));
    if decomposition.non_degenerate {
        let parts: Vec<String> = decomposition
            .atoms
            .iter()
            .map(|atom| {
                let vars: Vec<&str> = atom.variables.iter().map(|&i| names[i].as_str()).collect();
                let flag = if atom.has_unit_exponent() {
                    " [degenerate-suspect]"
                } else {
                    ""
                };
                format!(
                    "{} in {}{flag}",
                    atom_label(atom.kind, &atom.exponents),
                    vars.join(",")
                )
            })
            .collect();
        let _ = writeln!(text, "atoms       {}", parts.join(" + "));
    } else {
        let _ = writeln!(text, "atoms       not a sum of loops and chains");
    }
    let _ = writeln!(text, "transpose   {}", f.transpose());
    let _ = writeln!(text, "G_f         {}", group_line(&g));
    let _ = writeln!(text, "G_f~        {}", group_line(&gt));
    let gens: Vec<String> = g.generators().iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "generators  {}", gens.join(" "));

    if a.subgroups {
        let bound = a.max_group_order.into();
        let subs = g.enumerate_subgroups(&bound)?;
        result["subgroups"] = Value::Array(subs.iter().map(json::subgroup).collect());
        let _ = writeln!(text, "subgroups   {}", subs.len());
        for k in &subs {
            let _ = writeln!(text, "  order {:<6} basis {}", k.order().to_string(), k.basis());
        }
    }

    Ok(Report {
        input: input_json(&a.input),
        result,
        text,
        notes,
        status: 0,
    })
}

fn weights_text(f: &InvertiblePolynomial) -> String {
    let w = f.weights();
    let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!(
        "({};{})  c_f = {}  reduced ({};{})",
        join(&w.canonical_weights),
        w.canonical_degree,
        w.gcd_factor,
        join(&w.reduced_weights),
        w.reduced_degree
    )
}

fn zeta_cmd(a: &InputArgs) -> Result<Report, Failure> {
    let (f, mut notes) = read_input(a)?;
    let z = zeta::equivariant_zeta(&f)?;
    let milnor = zeta::milnor_number(&f);
    let mut result = z.to_json();
    result["polynomial"] = Value::String(f.to_string());
    result["milnorNumber"] = match &milnor {
        Ok(mu) => json::integer(mu),
        Err(e) => json!({ "error": e.to_string() }),
    };
    if let Err(e) = &milnor {
        notes.push(format!("note: {e}"));
    }

    let mut text = String::new();
    let _ = writeln!(text, "polynomial  {f}");
    let _ = writeln!(text, "group       {}", group_line(&z.group));
    let _ = writeln!(text, "zeta^G      {}", z.equivariant);
    let _ = writeln!(text, "reduced     {}", z.reduced);
    let _ = writeln!(text, "classical   {}", z.classical);
    match &milnor {
        Ok(mu) => {
            let _ = writeln!(text, "milnor      {mu}");
        }
        Err(_) => {
            let _ = writeln!(text, "milnor      n/a");
        }
    }
    let _ = writeln!(text, "strata");
    for t in &z.terms {
        let vars: Vec<&str> = t.subset.iter().map(|&i| f.variables()[i].as_str()).collect();
        let _ = writeln!(
            text,
            "  {{{}}}  coefficient {}  chi {}  |G^I| {}",
            vars.join(","),
            t.coefficient,
            t.euler_characteristic,
            t.isotropy.order()
        );
    }
    Ok(Report {
        input: input_json(a),
        result,
        text,
        notes,
        status: 0,
    })
}

fn verification_text(label: &str, r: &VerificationReport) -> String {
    let verdict = if r.equal { "PASS" } else { "FAIL" };
    format!(
        "{label:<10}  {verdict}\n  lhs  {}\n  rhs  {}\n",
        r.lhs_text, r.rhs_text
    )
}

fn dual(a: &InputArgs) -> Result<Report, Failure> {
    let (f, notes) = read_input(a)?;
    let check = zeta::check_theorem(&f)?;
    let mut status = 0;
    if !check.report.equal {
        status |= THEOREM_FAILED;
    }
    let mut text = String::new();
    let _ = writeln!(text, "polynomial  {f}");
    let _ = writeln!(text, "transpose   {}", f.transpose());
    let _ = write!(text, "{}", verification_text("theorem", &check.report));
    let corollary = match zeta::verify_corollary_with(&f, &check) {
        Ok(r) => {
            if !r.equal {
                status |= COROLLARY_FAILED;
            }
            let _ = write!(text, "{}", verification_text("corollary", &r));
            r.to_json()
        }
        Err(Error::Precondition(msg)) => {
            let _ = writeln!(text, "corollary   skipped: {msg}");
            json!({ "skipped": msg })
        }
        Err(e) => return Err(e.into()),
    };
    let result = json!({
        "polynomial": f.to_string(),
        "transpose": f.transpose().to_string(),
        "theorem": check.report.to_json(),
        "corollary": corollary,
        "audit": {
            "direct": check.direct.to_json(),
            "transposed": check.transposed.to_json(),
        },
    });
    Ok(Report {
        input: input_json(a),
        result,
        text,
        notes,
        status,
    })
}

fn roots(a: &InputArgs) -> Result<Report, Failure> {
    let (f, notes) = read_input(a)?;
    let g = symmetry_group(&f, Side::Direct);
    let h = g.monodromy()?;
    let all = geometric_roots(&f);
    let gens = generating_roots(&f);
    let c = f.weights().gcd_factor;
    let result = json!({
        "polynomial": f.to_string(),
        "group": json::group(&g),
        "monodromy": json::element(&h),
        "degree": json::integer(&c),
        "roots": all.iter().map(json::element).collect::<Vec<_>>(),
        "generatingRoots": gens.iter().map(json::element).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "polynomial  {f}");
    let _ = writeln!(text, "G_f         {}", group_line(&g));
    let _ = writeln!(text, "monodromy   {h}  (order {})", h.order());
    let _ = writeln!(text, "degree c_f  {c}");
    if all.is_empty() {
        let _ = writeln!(text, "roots       none (G_f is not cyclic)");
    } else {
        for r in &all {
            let mark = if gens.contains(r) { "  generator" } else { "" };
            let _ = writeln!(text, "root        {r}  (order {}){mark}", r.order());
        }
    }
    Ok(Report {
        input: input_json(a),
        result,
        text,
        notes,
        status: 0,
    })
}

fn enumerate_cmd(a: &EnumerateArgs) -> Result<Report, Failure> {
    let config = EnumerationConfig {
        max_vars: a.max_vars,
        max_exp: a.max_exp,
        include_loops: !a.no_loops,
        include_chains: !a.no_chains,
        include_sums: a.sums || a.sample_sums.is_some(),
        sample_sums: a.sample_sums,
        seed: a.seed,
        limit: Some(a.limit),
    };
    let start = Instant::now();
    let summary = enumerate::run(&config)?;
    let elapsed = start.elapsed();
    let mut status = 0;
    if summary.theorem_fail() > 0 {
        status |= THEOREM_FAILED;
    }
    if summary.corollary_fail() > 0 {
        status |= COROLLARY_FAILED;
    }
    if summary.truncated {
        status |= TRUNCATED;
    }
    Ok(Report {
        input: config.to_json(),
        result: summary.to_json(),
        text: enumerate_text(&summary),
        notes: vec![format!(
            "checked {} polynomials in {:.2?}",
            summary.total(),
            elapsed
        )],
        status,
    })
}

fn enumerate_text(s: &EnumerationSummary) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "polynomials  {}", s.total());
    let _ = writeln!(
        text,
        "theorem      {} pass, {} fail",
        s.theorem_pass(),
        s.theorem_fail()
    );
    let _ = writeln!(
        text,
        "corollary    {} checked, {} pass, {} fail",
        s.corollary_checked(),
        s.corollary_pass(),
        s.corollary_fail()
    );
    let _ = writeln!(text, "truncated    {}", if s.truncated { "yes" } else { "no" });
    for r in &s.results {
        if !r.theorem_passed() {
            let _ = writeln!(
                text,
                "FAIL theorem    {}  [{}]",
                r.entry.polynomial,
                r.entry.label()
            );
        }
        if r.corollary_passed() == Some(false) {
            let _ = writeln!(
                text,
                "FAIL corollary  {}  [{}]",
                r.entry.polynomial,
                r.entry.label()
            );
        }
    }
    text
}
