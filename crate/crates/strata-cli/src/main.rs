use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use strata::algebra::Algebra;
use strata::borel::{check_exact_borel, default_depth, inherited_borels, BorelEmbedding, TERMINATION_BOUND};
use strata::claims::{self, Status};
use strata::compat::{compatibility_battery, idempotent_for_labels, induced_poset};
use strata::corpus;
use strata::error::{Error, Result};
use strata::input::{export, parse, AlgebraFile};
use strata::kernel::Scalar;
use strata::modules::{comp_mult, n_max, projective, CornerData, QuotientData, ISO_HEIGHT, ISO_SEED, ISO_TRIALS};
use strata::strat::{essential_order, poset_search, LabelPoset, StratDatum, Verdict};
use strata::vmult::{
    bruhat_poset, builtin_tables, ell, reference_ell_formula, regular_borel_existence, simple_dims,
    v_matrix_from_tables, MultTables, VMatrix, WeylType,
};

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "Stratification data of finite-dimensional algebras"
)]
struct Cli {
    /// Machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, Cartan matrix and quiver.
    Describe { file: String },
    /// Standard stratification and quasi-heredity for the file's order.
    Check {
        file: String,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Verdicts for every partial order on the labels.
        #[arg(long)]
        all_orders: bool,
    },
    /// Coarsest order giving the same standard modules.
    EssentialOrder { file: String },
    /// Compatibility conditions for the idempotent summing the given labels.
    Idempotent {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<String>,
    },
    /// Corner algebra eAe.
    Corner {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<String>,
        /// Write the corner as an algebra file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Quotient algebra A/AeA.
    Quotient {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<String>,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Exact Borel checks for a named subalgebra.
    Borel {
        file: String,
        #[arg(long)]
        subalgebra: String,
        /// Ext degree bound for regularity.
        #[arg(long)]
        depth: Option<usize>,
        /// Inherited Borels at the idempotent of the subalgebra summing these labels.
        #[arg(long, value_delimiter = ',')]
        idempotent: Option<Vec<String>>,
        /// Report structure even when the support is not a coideal.
        #[arg(long)]
        diagnostic: bool,
    },
    /// Decomposition matrix V.
    Vmatrix(VSource),
    /// Row sums of V.
    Ell(VSource),
    /// Every published and derived claim over the bundled corpus.
    VerifyPaper {
        /// Only claims whose id contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Read corpus files from this directory instead of the bundled copies.
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
        /// Exit 0 when the only non-passing checks are contradicted published statements.
        #[arg(long)]
        allow_conflicts: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(clap::Args)]
struct VSource {
    /// Algebra file (quasi-hereditary) or bundled corpus name.
    file: Option<String>,
    /// Weyl type for a principal block: A1, A1xA1, A2, B2, G2.
    #[arg(long = "type", conflicts_with = "file")]
    weyl: Option<String>,
    /// Multiplicity tables as JSON.
    #[arg(long, conflicts_with = "file")]
    tables: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Fail => "fail",
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

struct Report {
    result: Value,
    summary: String,
    outcome: Outcome,
}

impl Report {
    fn new(result: Value, summary: String) -> Report {
        Report {
            result,
            summary,
            outcome: Outcome::Pass,
        }
    }

    fn fail_if(&mut self, cond: bool) {
        if cond {
            self.outcome = self.outcome.max(Outcome::Fail);
        }
    }
}

/// JSON pointers of every value equal to "undetermined".
fn undetermined(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::String(s) if s == "undetermined" => out.push(path),
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                undetermined(x, format!("{path}/{i}"), out);
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                undetermined(x, format!("{path}/{k}"), out);
            }
        }
        _ => {}
    }
}

fn settings() -> Value {
    json!({
        "n_max": n_max(),
        "iso_trials": ISO_TRIALS,
        "iso_height": ISO_HEIGHT,
        "iso_seed": ISO_SEED,
        "termination_bound": TERMINATION_BOUND,
    })
}

/// A path to a JSON file, or the name of a bundled corpus entry.
fn load(arg: &str) -> Result<AlgebraFile> {
    let p = Path::new(arg);
    if p.exists() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        return parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{arg}: {m}")),
            e => e,
        });
    }
    if corpus::source(arg).is_some() {
        return corpus::load(arg);
    }
    Err(Error::Parse(format!(
        "{arg}: no such file and no bundled algebra of that name (bundled: {})",
        corpus::NAMES.join(", ")
    )))
}

fn datum(f: &AlgebraFile) -> Result<StratDatum> {
    StratDatum::new(&f.algebra, &f.poset)
}

fn verdict_line(out: &mut String, name: &str, v: Verdict) {
    let _ = writeln!(out, "  {name:<34} {v}");
}

fn matrix_lines(out: &mut String, labels: &[String], rows: &[Vec<usize>]) {
    let w = labels.iter().map(String::len).max().unwrap_or(1);
    for (l, r) in labels.iter().zip(rows) {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  {l:>w$} |{}", cells.join(""));
    }
}

fn cmd_describe(file: &str) -> Result<Report> {
    let f = load(file)?;
    let a = &f.algebra;
    let labels = a.labels().to_vec();
    let proj: Vec<_> = labels.iter().map(|l| projective(a, l)).collect::<Result<_>>()?;
    // cartan[i][j] = [P_j : L_i]
    let cartan: Vec<Vec<usize>> = labels
        .iter()
        .map(|li| proj.iter().map(|p| comp_mult(a, p, li)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let quiver = a.quiver().map(|q| {
        json!({
            "vertices": q.vertices(),
            "arrows": q.arrows().iter().map(|(n, s, t)| json!([n, s, t])).collect::<Vec<_>>(),
        })
    });
    let mut s = String::new();
    if let Some(n) = &f.name {
        let _ = writeln!(s, "{n}");
    }
    if let Some(d) = &f.description {
        let _ = writeln!(s, "{d}");
    }
    let _ = writeln!(
        s,
        "field {}, dimension {}, radical dimension {}",
        a.field(),
        a.dim(),
        a.radical().cols()
    );
    let _ = writeln!(s, "labels {}, order {}", labels.join(" "), f.poset);
    if let Some(q) = a.quiver() {
        for (n, src, t) in q.arrows() {
            let _ = writeln!(s, "  arrow {n}: {src} -> {t}");
        }
    }
    let _ = writeln!(s, "Cartan matrix [P_j : L_i] (row i, column j):");
    matrix_lines(&mut s, &labels, &cartan);
    Ok(Report::new(
        json!({
            "name": f.name,
            "field": a.field().to_string(),
            "dim": a.dim(),
            "basis": a.basis_names(),
            "labels": labels,
            "poset": f.poset.to_json(),
            "basic": a.is_basic(),
            "projective_dims": proj.iter().map(|p| p.dim()).collect::<Vec<_>>(),
            "cartan": cartan,
            "quiver": quiver,
            "subalgebras": f.subalgebras.keys().collect::<Vec<_>>(),
            "claims": f.claims,
        }),
        s,
    ))
}

fn cmd_check(file: &str, side: SideArg, all_orders: bool) -> Result<Report> {
    let f = load(file)?;
    let d = datum(&f)?;
    let mut s = String::new();
    let _ = writeln!(s, "order {}", f.poset);
    let mut result = json!({"poset": f.poset.to_json(), "datum": d.to_json()});
    let mut asserted = Vec::new();
    if matches!(side, SideArg::Left | SideArg::Both) {
        verdict_line(&mut s, "left standardly stratified", d.left_ss());
        result["left_standardly_stratified"] = json!(d.left_ss().as_str());
        asserted.push(d.left_ss());
    }
    if matches!(side, SideArg::Right | SideArg::Both) {
        verdict_line(&mut s, "right standardly stratified", d.right_ss());
        result["right_standardly_stratified"] = json!(d.right_ss().as_str());
        asserted.push(d.right_ss());
    }
    verdict_line(&mut s, "quasi-hereditary", d.quasi_hereditary());
    result["quasi_hereditary"] = json!(d.quasi_hereditary().as_str());
    let mut outcome = verdict_outcome(Verdict::all(asserted));
    if all_orders {
        let rows = poset_search(&f.algebra)?;
        let good = |v: &Verdict| v.is_yes();
        let picked: Vec<_> = rows
            .iter()
            .filter(|r| match side {
                SideArg::Left => good(&r.left_ss),
                SideArg::Right => good(&r.right_ss),
                SideArg::Both => good(&r.left_ss) && good(&r.right_ss),
            })
            .collect();
        let _ = writeln!(s, "{} of {} partial orders stratify:", picked.len(), rows.len());
        for r in &picked {
            let _ = writeln!(s, "  {} (quasi-hereditary {})", r.poset, r.quasi_hereditary);
        }
        result["all_orders"] = json!(rows
            .iter()
            .map(|r| json!({
                "poset": r.poset.to_json(),
                "left_standardly_stratified": r.left_ss.as_str(),
                "right_standardly_stratified": r.right_ss.as_str(),
                "quasi_hereditary": r.quasi_hereditary.as_str(),
            }))
            .collect::<Vec<_>>());
        result["stratifying_orders"] = json!(picked.len());
        outcome = if !picked.is_empty() {
            Outcome::Pass
        } else if rows
            .iter()
            .any(|r| r.left_ss == Verdict::Undetermined || r.right_ss == Verdict::Undetermined)
        {
            Outcome::Inconclusive
        } else {
            Outcome::Fail
        };
    }
    Ok(Report {
        result,
        summary: s,
        outcome,
    })
}

fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Yes => Outcome::Pass,
        Verdict::No => Outcome::Fail,
        Verdict::Undetermined => Outcome::Inconclusive,
    }
}

fn cmd_essential_order(file: &str) -> Result<Report> {
    let f = load(file)?;
    let d = datum(&f)?;
    let ess = essential_order(&d)?;
    let s = format!(
        "given order     {}\nessential order {}\nrefines given   {}\n",
        f.poset,
        ess,
        f.poset.refines(&ess)
    );
    Ok(Report::new(
        json!({"poset": f.poset.to_json(), "essential_order": ess.to_json()}),
        s,
    ))
}

fn cmd_idempotent(file: &str, e: &[String]) -> Result<Report> {
    let f = load(file)?;
    let d = datum(&f)?;
    let idem = idempotent_for_labels(&f.algebra, e)?;
    let r = compatibility_battery(&d, &idem)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "e = {}, support {{{}}}, dim AeA = {}, dim A/AeA = {}",
        f.algebra.vector_name(&idem),
        r.support.join(", "),
        r.ideal_dim,
        r.quotient_dim
    );
    let names = [
        "(1) support is a coideal",
        "(2) stratifying chain through AeA",
        "(3) support is an essential coideal",
        "(4) A/AeA in F(Δ)",
        "(5) D(A/AeA) in F(∇̄)",
        "(6) corner and quotient stratified",
    ];
    for (n, v) in names.iter().zip(r.conditions()) {
        verdict_line(&mut s, n, v);
    }
    let _ = writeln!(s, "  implication diagram consistent      {}", r.diagram_consistent);
    for c in &r.identities {
        let _ = writeln!(s, "  {} [{}]: {:?}", c.name, c.label, c.outcome);
    }
    let mut rep = Report::new(r.to_json(&f.algebra), s);
    rep.fail_if(!r.diagram_consistent || !r.failed_identities().is_empty());
    Ok(rep)
}

fn export_to(path: &Option<PathBuf>, v: &Value) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(v).expect("json");
        std::fs::write(p, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn derived_summary(
    kind: &str,
    f: &AlgebraFile,
    e: &[Scalar],
    labels: &[String],
    alg: &Algebra,
) -> Result<(Value, String)> {
    let poset = induced_poset(&f.poset, labels);
    let d = StratDatum::new(alg, &poset)?;
    let file = export(alg, &poset, f.name.as_ref().map(|n| format!("{n}_{kind}")).as_deref());
    let s = format!(
        "{kind} at e = {}: dimension {}, labels {{{}}}, order {}\n  left standardly stratified {}\n  right standardly stratified {}\n  quasi-hereditary {}\n",
        f.algebra.vector_name(e),
        alg.dim(),
        labels.join(", "),
        poset,
        d.left_ss(),
        d.right_ss(),
        d.quasi_hereditary()
    );
    let v = json!({
        "idempotent": f.algebra.vector_name(e),
        "dim": alg.dim(),
        "labels": labels,
        "poset": poset.to_json(),
        "left_standardly_stratified": d.left_ss().as_str(),
        "right_standardly_stratified": d.right_ss().as_str(),
        "quasi_hereditary": d.quasi_hereditary().as_str(),
        "algebra_file": file,
    });
    Ok((v, s))
}

fn cmd_corner(file: &str, e: &[String], out: &Option<PathBuf>) -> Result<Report> {
    let f = load(file)?;
    let idem = idempotent_for_labels(&f.algebra, e)?;
    let c = CornerData::new(&f.algebra, &idem)?;
    let labels = c.algebra.labels().to_vec();
    let (v, s) = derived_summary("corner", &f, &idem, &labels, &c.algebra)?;
    export_to(out, &v["algebra_file"])?;
    Ok(Report::new(v, s))
}

fn cmd_quotient(file: &str, e: &[String], out: &Option<PathBuf>) -> Result<Report> {
    let f = load(file)?;
    let idem = idempotent_for_labels(&f.algebra, e)?;
    let q = QuotientData::new(&f.algebra, &idem)?;
    let labels = q.algebra.labels().to_vec();
    let (v, s) = derived_summary("quotient", &f, &idem, &labels, &q.algebra)?;
    export_to(out, &v["algebra_file"])?;
    Ok(Report::new(v, s))
}

fn cmd_borel(
    file: &str,
    name: &str,
    depth: Option<usize>,
    idem: &Option<Vec<String>>,
    diagnostic: bool,
) -> Result<Report> {
    let f = load(file)?;
    let d = datum(&f)?;
    let (b, m) = f.subalgebra(name)?;
    let emb = BorelEmbedding::new(d, b, m)?;
    let depth = depth.unwrap_or_else(default_depth);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "subalgebra {name}: dimension {} in dimension {}",
        emb.sub.dim(),
        f.algebra.dim()
    );
    let r = check_exact_borel(&emb, depth)?;
    verdict_line(&mut s, "induction exact", r.axiom1);
    verdict_line(&mut s, "directed", r.axiom2);
    verdict_line(&mut s, "induced simples are standard", r.axiom3);
    verdict_line(&mut s, "endomorphisms of simples", r.axiom4);
    verdict_line(&mut s, "condition (5)", r.condition5);
    if let Some(reg) = &r.regularity {
        let _ = writeln!(s, "  regular up to degree {depth:<17} {}", reg.regular);
    }
    let _ = writeln!(s, "  restriction identity               {}", r.restriction_holds());
    let _ = writeln!(s, "  normality                          {}", r.normality_holds());
    for x in &r.failures {
        let _ = writeln!(s, "  failure: {x}");
    }
    let mut result = json!({"subalgebra": name, "dim": emb.sub.dim(), "depth": depth, "report": r.to_json()});
    let mut outcome = verdict_outcome(r.exact_borel());
    if let Some(labels) = idem {
        let e = idempotent_for_labels(&emb.sub, labels)?;
        let inh = inherited_borels(&emb, &e, depth, diagnostic)?;
        let _ = writeln!(
            s,
            "inherited at {}: supports {{{}}} / {{{}}}, coideal {}, quotient dims {} -> {}, injective {}, passes {}",
            emb.sub.vector_name(&e),
            inh.support_sub.join(", "),
            inh.support_ambient.join(", "),
            inh.coideal,
            inh.quotient_dims.0,
            inh.quotient_dims.1,
            inh.quotient_map_injective,
            inh.passes()
        );
        result["inherited"] = inh.to_json();
        if !inh.passes() {
            outcome = outcome.max(Outcome::Fail);
        }
    }
    Ok(Report {
        result,
        summary: s,
        outcome,
    })
}

/// V together with whatever the source knows about it.
struct VData {
    v: VMatrix,
    source: Value,
    poset: LabelPoset,
    weyl: Option<WeylType>,
    dims: Option<Vec<i64>>,
}

fn v_data(src: &VSource) -> Result<VData> {
    if let Some(w) = &src.weyl {
        let weyl = WeylType::parse(w)?;
        let b = bruhat_poset(weyl);
        let t = match &src.tables {
            Some(p) => read_tables(p)?,
            None => builtin_tables(weyl)?,
        };
        if t.poset.labels() != b.poset.labels() {
            return Err(Error::InvalidTables(format!(
                "tables must be indexed by {}",
                b.poset.labels().join(", ")
            )));
        }
        return Ok(VData {
            v: v_matrix_from_tables(&t)?,
            source: json!({"type": weyl.to_string(), "tables": t.to_json()}),
            poset: t.poset,
            weyl: Some(weyl),
            dims: None,
        });
    }
    if let Some(p) = &src.tables {
        let t = read_tables(p)?;
        return Ok(VData {
            v: v_matrix_from_tables(&t)?,
            source: json!({"tables": t.to_json()}),
            poset: t.poset,
            weyl: None,
            dims: None,
        });
    }
    let Some(file) = &src.file else {
        return Err(Error::Parse("give an algebra file, --type or --tables".into()));
    };
    let f = load(file)?;
    let t = match &f.tables {
        Some(t) => t.clone(),
        None => MultTables::from_algebra(&datum(&f)?)?,
    };
    Ok(VData {
        v: v_matrix_from_tables(&t)?,
        source: json!({"file": file, "tables": t.to_json()}),
        poset: t.poset,
        weyl: None,
        dims: Some(simple_dims(&f.algebra)),
    })
}

fn read_tables(p: &Path) -> Result<MultTables> {
    let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: line {} column {}: {e}", p.display(), e.line(), e.column())))?;
    MultTables::from_json(&v)
}

fn cmd_vmatrix(src: &VSource) -> Result<Report> {
    let d = v_data(src)?;
    let v = &d.v;
    let unitri = v.is_unitriangular(&d.poset);
    let nonneg = v.is_nonnegative();
    let det = v.determinant();
    let mut s = format!("V (row i is v_i):\n{v}");
    let _ = writeln!(s, "unitriangular {unitri}, nonnegative {nonneg}, determinant {det}");
    let sub = v.subdiagonal(&d.poset);
    let _ = writeln!(
        s,
        "first subdiagonal along a linear extension: {}",
        sub.iter()
            .map(|(i, j, x)| format!("v[{i}][{j}]={x}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let mut result = json!({
        "source": d.source,
        "v": v.to_json(),
        "unitriangular": unitri,
        "nonnegative": nonneg,
        "determinant": det.to_string(),
        "subdiagonal": sub.iter().map(|(i, j, x)| json!({"row": i, "column": j, "value": x})).collect::<Vec<_>>(),
    });
    if let Some(dims) = &d.dims {
        let w = regular_borel_existence(v, &d.poset, dims);
        let _ = writeln!(s, "regular Borel dimension vector: {w:?}");
        result["regular_borel_dimensions"] = json!(w);
    }
    let mut rep = Report::new(result, s);
    rep.fail_if(!unitri || !nonneg || !det.is_one());
    Ok(rep)
}

fn cmd_ell(src: &VSource) -> Result<Report> {
    // rank two types without tables: heights and the reference values only
    if let (Some(w), None) = (&src.weyl, &src.tables) {
        let weyl = WeylType::parse(w)?;
        if builtin_tables(weyl).is_err() {
            return ell_reference_only(weyl);
        }
    }
    let d = v_data(src)?;
    let l = ell(&d.v);
    let mut s = String::new();
    for (lab, x) in d.v.labels.iter().zip(&l) {
        let _ = writeln!(s, "  ℓ[{lab}] = {x}");
    }
    let mut result = json!({
        "source": d.source,
        "ell": d.v.labels.iter().zip(&l).map(|(a, x)| json!({"label": a, "value": x})).collect::<Vec<_>>(),
    });
    let mut mismatch = false;
    if let Some(w) = d.weyl {
        let b = bruhat_poset(w);
        result["heights"] = json!(b.heights);
        result["max_height"] = json!(b.max_height());
        let _ = writeln!(s, "maximal Bruhat height {}", b.max_height());
        if let Ok(reference) = reference_ell_formula(w) {
            let matches = reference.iter().zip(&l).all(|((_, r), x)| *x == *r as i64);
            let max = reference.iter().map(|(_, r)| *r).max().unwrap_or(0);
            let _ = writeln!(
                s,
                "3^(height-1) values: maximum {max}, equal to ℓ from the tables {matches}"
            );
            result["reference_formula"] = json!({
                "values": reference.iter().map(|(a, r)| json!({"label": a, "value": r})).collect::<Vec<_>>(),
                "max": max,
                "matches": matches,
            });
            mismatch = !matches;
        }
    }
    let mut rep = Report::new(result, s);
    rep.fail_if(mismatch);
    Ok(rep)
}

fn ell_reference_only(weyl: WeylType) -> Result<Report> {
    let b = bruhat_poset(weyl);
    let reference = reference_ell_formula(weyl)?;
    let max = reference.iter().map(|(_, r)| *r).max().unwrap_or(0);
    let mut s = format!(
        "{weyl}: {} elements, maximal Bruhat height {}\n",
        b.poset.len(),
        b.max_height()
    );
    for ((l, r), h) in reference.iter().zip(&b.heights) {
        let _ = writeln!(s, "  {l:<8} height {h}  3^(height-1) value {r}");
    }
    let _ = writeln!(s, "maximum {max}; ℓ itself needs multiplicity tables (--tables)");
    Ok(Report::new(
        json!({
            "type": weyl.to_string(),
            "elements": b.poset.labels(),
            "words": b.words,
            "heights": b.heights,
            "max_height": b.max_height(),
            "reference_formula": {
                "values": reference.iter().map(|(a, r)| json!({"label": a, "value": r})).collect::<Vec<_>>(),
                "max": max,
            },
            "ell": Value::Null,
        }),
        s,
    ))
}

fn cmd_verify(filter: Option<&str>, dir: &Option<PathBuf>, allow_conflicts: bool) -> Result<Report> {
    let results = match dir {
        None => claims::run_bundled(filter),
        Some(dir) => {
            let dir = dir.clone();
            let load = move |name: &str| -> Result<AlgebraFile> {
                let p = dir.join(format!("{name}.json"));
                let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                parse(&text)
            };
            claims::run(&load, filter)
        }
    };
    if results.is_empty() {
        return Err(Error::Parse(format!("no claim id contains {:?}", filter.unwrap_or(""))));
    }
    let mut s = String::new();
    let mut outcome = Outcome::Pass;
    for r in &results {
        let _ = writeln!(s, "{}", r.to_string().trim_end());
        match r.status() {
            Status::Pass => {}
            Status::Fail => outcome = Outcome::Fail,
            Status::Conflict if !allow_conflicts => outcome = Outcome::Fail,
            Status::Conflict => {}
        }
    }
    let count = |st: Status| results.iter().filter(|r| r.status() == st).count();
    let _ = writeln!(
        s,
        "{} claims: {} pass, {} fail, {} contradict a published statement",
        results.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Conflict)
    );
    Ok(Report {
        result: json!({
            "claims": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "counts": {"pass": count(Status::Pass), "fail": count(Status::Fail), "conflict": count(Status::Conflict)},
        }),
        summary: s,
        outcome,
    })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Describe { file } => cmd_describe(file),
        Command::Check { file, side, all_orders } => cmd_check(file, *side, *all_orders),
        Command::EssentialOrder { file } => cmd_essential_order(file),
        Command::Idempotent { file, e } => cmd_idempotent(file, e),
        Command::Corner { file, e, export } => cmd_corner(file, e, export),
        Command::Quotient { file, e, export } => cmd_quotient(file, e, export),
        Command::Borel {
            file,
            subalgebra,
            depth,
            idempotent,
            diagnostic,
        } => cmd_borel(file, subalgebra, *depth, idempotent, *diagnostic),
        Command::Vmatrix(src) => cmd_vmatrix(src),
        Command::Ell(src) => cmd_ell(src),
        Command::VerifyPaper {
            filter,
            corpus_dir,
            allow_conflicts,
        } => cmd_verify(filter.as_deref(), corpus_dir, *allow_conflicts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().collect();
    match run(&cli) {
        Ok(mut rep) => {
            let mut open = Vec::new();
            undetermined(&rep.result, String::new(), &mut open);
            if !open.is_empty() {
                rep.outcome = rep.outcome.max(Outcome::Inconclusive);
            }
            if cli.json {
                let v = json!({
                    "command": command,
                    "version": env!("CARGO_PKG_VERSION"),
                    "settings": settings(),
                    "status": rep.outcome.as_str(),
                    "undetermined": open,
                    "result": rep.result,
                    "summary": rep.summary,
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                print!("{}", rep.summary);
                for p in &open {
                    println!("undetermined: {p}");
                }
                println!("status: {}", rep.outcome.as_str());
            }
            ExitCode::from(rep.outcome.code())
        }
        Err(e) => {
            if cli.json {
                let v = json!({
                    "command": command,
                    "version": env!("CARGO_PKG_VERSION"),
                    "settings": settings(),
                    "status": "input_error",
                    "error": e.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
