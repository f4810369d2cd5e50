//! The `heisencalc` command-line front end.
//!
//! Every subcommand renders JSON (default), LaTeX (`--latex`) or plain text (`--plain`).
//! Exit codes: 0 on success, 1 on domain errors or failed verifications, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::aut::{morita_crossed_hom, morita_d, EndomorphismTable, FreeWord, HeisAutomorphism};
use crate::braid::{verify_bellingeri, BraidWord};
use crate::error::{Error, Result};
use crate::heis::{verify_presentation, HeisElement, RelationReport};
use crate::matrix::{self, RepMatrix};
use crate::pairing::{self, evaluate_pairing, records_from_json, PairingMode};
use crate::ring::{specialize, HeisPolynomial, SpecializationTarget};
use crate::schrodinger::{
    schrodinger_matrix, standard_generators, verify_schrodinger_rep, weil_cocycle,
    weil_intertwiner, DEFAULT_TOL,
};

#[derive(Parser, Debug)]
#[command(
    name = "heisencalc",
    version,
    about = "Exact computations in the discrete Heisenberg group of a surface and its group ring"
)]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with_all = ["latex", "plain"])]
    json: bool,
    /// Emit LaTeX.
    #[arg(long, global = true, conflicts_with = "plain")]
    latex: bool,
    /// Emit plain text.
    #[arg(long, global = true)]
    plain: bool,
    /// Surface genus.
    #[arg(long, global = true)]
    genus: Option<usize>,
    /// Number of strands (configuration points).
    #[arg(long, global = true)]
    strands: Option<usize>,
    /// Numerical tolerance for floating-point checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Specialization target: moriyama, abelian or torsionN.
    #[arg(long, global = true)]
    specialize: Option<String>,
    /// Input file (matrix fixture, pairing records or endomorphism table).
    #[arg(long, global = true)]
    fixture: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Image of a surface braid word in the Heisenberg group.
    Phi {
        /// Braid word, e.g. "s1 a1^-1 b1 s1^-1".
        word: String,
    },
    /// Product of group elements or group-ring expressions, left to right.
    Mul {
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Compose automorphisms (ta1, tb2^-1, inner:<element>, or JSON) and apply them.
    Aut(AutArgs),
    /// Morita's crossed homomorphism on a built-in or file-supplied action on π₁.
    Morita(MoritaArgs),
    /// Built-in Dehn twist matrices.
    Matrix(MatrixArgs),
    /// Matrix of a word in the genus-one twists, e.g. "a b a^-1".
    Compose { word: String },
    /// Specialize a group-ring expression.
    Specialize { expr: String },
    /// Evaluate the intersection pairing from records.
    Pairing(PairingArgs),
    /// Finite Schrödinger representations and Weil intertwiners.
    Schrodinger(SchrodingerArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct AutArgs {
    /// Automorphisms, composed as written (the last acts first).
    #[arg(required = true)]
    maps: Vec<String>,
    /// Element or expression to apply the composite to.
    #[arg(long)]
    apply: Option<String>,
    /// Report the inverse of the composite.
    #[arg(long)]
    inverse: bool,
    /// Search for an inner witness of the composite.
    #[arg(long)]
    witness: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").args(["builtin", "d"])))]
struct MoritaArgs {
    /// Built-in action: ta<i>, tb<i> or bounding-pair.
    #[arg(long)]
    builtin: Option<String>,
    /// Evaluate d_i on --word instead.
    #[arg(long, requires = "word")]
    d: Option<usize>,
    /// Free-group word for --d.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(
    ArgGroup::new("which")
        .args(["ta", "tb", "aba", "boundary", "separating", "transcribed_boundary", "transcribed_aba"])
))]
struct MatrixArgs {
    #[arg(long)]
    ta: bool,
    #[arg(long)]
    tb: bool,
    /// T_a T_b T_a, checked against both sides of the braid relation.
    #[arg(long)]
    aba: bool,
    /// The boundary twist.
    #[arg(long)]
    boundary: bool,
    /// Twist along a genus-one separating curve (genus >= 2).
    #[arg(long)]
    separating: bool,
    /// The bundled transcription of the boundary twist.
    #[arg(long)]
    transcribed_boundary: bool,
    /// The bundled transcription of T_a T_b T_a.
    #[arg(long)]
    transcribed_aba: bool,
    /// Invert the matrix as a mapping class.
    #[arg(long)]
    inverse: bool,
}

#[derive(Args, Debug)]
struct PairingArgs {
    /// Built-in record set: ta12, ta13, s.
    #[arg(long, conflicts_with = "records")]
    builtin: Option<String>,
    /// Records as a JSON array.
    records: Option<String>,
    /// Include the global sign.
    #[arg(long)]
    oriented: bool,
}

#[derive(Args, Debug)]
struct SchrodingerArgs {
    /// Level N.
    #[arg(long)]
    n: u32,
    /// Element whose image to print.
    #[arg(long)]
    element: Option<String>,
    /// Intertwiner of a symplectic automorphism (ta1, tb1, j1, or JSON).
    #[arg(long)]
    intertwiner: Option<String>,
    /// Cocycle of two symplectic automorphisms.
    #[arg(long, num_args = 2, value_names = ["PHI1", "PHI2"])]
    cocycle: Option<Vec<String>>,
    /// Verify the representation.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run every suite.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    presentation: bool,
    #[arg(long)]
    bellingeri: bool,
    #[arg(long)]
    braid_relation: bool,
    #[arg(long)]
    boundary: bool,
    #[arg(long)]
    moriyama: bool,
    #[arg(long)]
    schrodinger: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Latex,
    Plain,
}

struct Output {
    json: Value,
    latex: String,
    plain: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, latex: String, plain: String) -> Self {
        Self {
            json,
            latex,
            plain,
            ok: true,
        }
    }
}

struct Ctx {
    genus: usize,
    strands: usize,
    tol: f64,
    specialize: Option<SpecializationTarget>,
    fixture: Option<String>,
}

impl Ctx {
    fn read_fixture(&self) -> Result<Option<String>> {
        self.fixture
            .as_ref()
            .map(|p| {
                std::fs::read_to_string(p)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {p}: {e}")))
            })
            .transpose()
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let format = if cli.latex {
        Format::Latex
    } else if cli.plain {
        Format::Plain
    } else {
        Format::Json
    };
    let result = (|| -> Result<Output> {
        let ctx = Ctx {
            genus: cli.genus.unwrap_or(1),
            strands: cli.strands.unwrap_or(2),
            tol: cli.tol.unwrap_or(DEFAULT_TOL),
            specialize: cli
                .specialize
                .as_deref()
                .map(SpecializationTarget::parse)
                .transpose()?,
            fixture: cli.fixture.clone(),
        };
        if ctx.genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        dispatch(&cli.command, &ctx)
    })();
    match result {
        Ok(o) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("serializable"),
                Format::Latex => o.latex,
                Format::Plain => o.plain,
            };
            let _ = writeln!(out, "{text}");
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Output> {
    match cmd {
        Command::Phi { word } => cmd_phi(word, ctx),
        Command::Mul { factors } => cmd_mul(factors, ctx),
        Command::Aut(a) => cmd_aut(a, ctx),
        Command::Morita(m) => cmd_morita(m, ctx),
        Command::Matrix(m) => cmd_matrix(m, ctx),
        Command::Compose { word } => cmd_compose(word, ctx),
        Command::Specialize { expr } => cmd_specialize(expr, ctx),
        Command::Pairing(p) => cmd_pairing(p, ctx),
        Command::Schrodinger(s) => cmd_schrodinger(s, ctx),
        Command::Verify(v) => cmd_verify(v, ctx),
    }
}

fn element_output(e: &HeisElement) -> Output {
    let latex = HeisPolynomial::monomial(e.clone(), 1).to_latex();
    Output::new(e.to_json(), latex, e.to_word_string())
}

fn poly_output(p: &HeisPolynomial) -> Output {
    Output::new(p.to_json(), p.to_latex(), p.to_plain_string())
}

fn cmd_phi(word: &str, ctx: &Ctx) -> Result<Output> {
    let w = BraidWord::parse(word, ctx.genus, ctx.strands)?;
    Ok(element_output(&w.phi()))
}

fn cmd_mul(factors: &[String], ctx: &Ctx) -> Result<Output> {
    let elements: Option<Vec<HeisElement>> = factors
        .iter()
        .map(|f| HeisElement::parse(f, ctx.genus).ok())
        .collect();
    if let Some(es) = elements {
        let mut acc = HeisElement::identity(ctx.genus);
        for e in &es {
            acc = acc.mul(e)?;
        }
        return Ok(element_output(&acc));
    }
    let mut acc = HeisPolynomial::one(ctx.genus);
    for f in factors {
        acc = acc.mul(&HeisPolynomial::parse(f, ctx.genus)?)?;
    }
    Ok(poly_output(&acc))
}

/// `ta1`, `tb2^-1`, `j1`, `inner:<element>`, `{"delta":…, "S":…}` or `id`.
///
/// With `linear` set, the named generators are their symplectic parts (zero delta).
fn parse_automorphism(input: &str, genus: usize, linear: bool) -> Result<HeisAutomorphism> {
    let s = input.trim();
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s)?;
        let a = HeisAutomorphism::from_json(&v)?;
        if a.genus() != genus {
            return Err(Error::GenusMismatch {
                left: genus,
                right: a.genus(),
            });
        }
        return Ok(a);
    }
    if let Some(h) = s.strip_prefix("inner:") {
        return Ok(HeisAutomorphism::inner_of(&HeisElement::parse(h, genus)?));
    }
    if s == "id" {
        return Ok(HeisAutomorphism::identity(genus));
    }
    let (base, power) = match s.split_once('^') {
        Some((b, p)) => (
            b,
            p.trim_matches(|c| c == '{' || c == '}')
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?,
        ),
        None => (s, 1),
    };
    let split = base
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(base.len());
    let (name, digits) = base.split_at(split);
    let i: usize = if digits.is_empty() {
        1
    } else {
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad handle index in `{s}`")))?
    };
    let a = match name {
        "ta" | "tb" | "j" if linear || name == "j" => standard_generators(genus)?
            .into_iter()
            .find(|(n, _)| *n == format!("{name}{i}"))
            .map(|(_, a)| a)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                max: genus,
            })?,
        "ta" => HeisAutomorphism::twist_a(genus, i)?,
        "tb" => HeisAutomorphism::twist_b(genus, i)?,
        _ => return Err(Error::Parse(format!("unknown automorphism `{s}`"))),
    };
    Ok(a.pow(power))
}

fn aut_output(a: &HeisAutomorphism) -> Output {
    Output::new(a.to_json(), a.to_string(), a.to_string())
}

fn cmd_aut(args: &AutArgs, ctx: &Ctx) -> Result<Output> {
    let mut acc = HeisAutomorphism::identity(ctx.genus);
    for m in &args.maps {
        acc = acc.compose(&parse_automorphism(m, ctx.genus, false)?)?;
    }
    if args.inverse {
        acc = acc.inverse();
    }
    let mut json = json!({"automorphism": acc.to_json()});
    let mut plain = vec![acc.to_string()];
    let mut latex = vec![acc.to_string()];
    if let Some(x) = &args.apply {
        match HeisElement::parse(x, ctx.genus) {
            Ok(e) => {
                let img = acc.apply(&e)?;
                json["image"] = img.to_json();
                plain.push(img.to_word_string());
                latex.push(HeisPolynomial::monomial(img, 1).to_latex());
            }
            Err(_) => {
                let img = acc.apply_poly(&HeisPolynomial::parse(x, ctx.genus)?)?;
                json["image"] = img.to_json();
                plain.push(img.to_plain_string());
                latex.push(img.to_latex());
            }
        }
    }
    if args.witness {
        let w = acc.inner_witness();
        json["inner_witness"] = w.as_ref().map_or(Value::Null, HeisElement::to_json);
        plain.push(format!(
            "inner witness: {}",
            w.map_or("none".to_string(), |h| h.to_word_string())
        ));
    }
    Ok(Output::new(json, latex.join("\n"), plain.join("\n")))
}

fn builtin_table(name: &str, genus: usize) -> Result<EndomorphismTable> {
    match name {
        "bounding-pair" | "bp" => EndomorphismTable::bounding_pair(genus),
        _ => {
            let (kind, idx) = name.split_at(name.len().min(2));
            let i = if idx.is_empty() {
                1
            } else {
                idx.parse()
                    .map_err(|_| Error::Parse(format!("bad handle index in `{name}`")))?
            };
            match kind {
                "ta" => EndomorphismTable::twist_a(genus, i),
                "tb" => EndomorphismTable::twist_b(genus, i),
                _ => Err(Error::InvalidArgument(format!(
                    "unknown built-in action `{name}`"
                ))),
            }
        }
    }
}

fn cmd_morita(args: &MoritaArgs, ctx: &Ctx) -> Result<Output> {
    if let Some(i) = args.d {
        let w = FreeWord::parse(args.word.as_deref().unwrap_or(""), ctx.genus)?;
        let d = morita_d(i, &w)?;
        return Ok(Output::new(
            json!({"handle": i, "word": w.to_string(), "d": crate::json::int(&d)}),
            d.to_string(),
            d.to_string(),
        ));
    }
    let table = match (&args.builtin, ctx.read_fixture()?) {
        (Some(b), _) => builtin_table(b, ctx.genus)?,
        (None, Some(text)) => EndomorphismTable::parse(&text, ctx.genus)?,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "give --builtin, --fixture <table> or --d".into(),
            ))
        }
    };
    Ok(aut_output(&morita_crossed_hom(&table)?))
}

fn matrix_output(m: &RepMatrix, ctx: &Ctx) -> Result<Output> {
    if let Some(t) = &ctx.specialize {
        let s = m.specialize(t)?;
        let latex = format!(
            "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}",
            (0..s.rows)
                .map(|i| (0..s.cols)
                    .map(|j| s.get(i, j).to_plain_string())
                    .collect::<Vec<_>>()
                    .join(" & "))
                .collect::<Vec<_>>()
                .join(" \\\\\n")
        );
        return Ok(Output::new(s.to_json(), latex, s.to_plain_string()));
    }
    Ok(Output::new(m.to_json(), m.to_latex(), m.to_plain_string()))
}

fn cmd_matrix(args: &MatrixArgs, ctx: &Ctx) -> Result<Output> {
    let mut m = if args.ta {
        matrix::matrix_ta()
    } else if args.tb {
        matrix::matrix_tb()
    } else if args.aba {
        matrix::matrix_ta_tb_ta()?
    } else if args.boundary {
        matrix::matrix_boundary_twist()?
    } else if args.separating {
        matrix::matrix_separating_twist(ctx.genus)?
    } else if args.transcribed_boundary {
        matrix::fixture_boundary_twist()
    } else if args.transcribed_aba {
        matrix::fixture_ta_tb_ta()
    } else if let Some(text) = ctx.read_fixture()? {
        let v: Value = serde_json::from_str(&text)?;
        if v.get("entries")
            .and_then(|e| e.get(0))
            .and_then(|r| r.get(0))
            .is_some_and(Value::is_string)
        {
            RepMatrix::from_fixture_json(&text)?
        } else {
            RepMatrix::from_json(&v)?
        }
    } else {
        return Err(Error::InvalidArgument(
            "choose one of --ta, --tb, --aba, --boundary, --separating or --fixture".into(),
        ));
    };
    let builtin_genus_one = args.ta || args.tb || args.aba || args.boundary;
    if builtin_genus_one && ctx.genus != 1 {
        return Err(Error::InvalidArgument(
            "the built-in twist matrices are for genus 1; use --separating for higher genus".into(),
        ));
    }
    if args.inverse {
        m = m.mapping_class_inverse()?;
    }
    matrix_output(&m, ctx)
}

fn cmd_compose(word: &str, ctx: &Ctx) -> Result<Output> {
    if ctx.genus != 1 {
        return Err(Error::InvalidArgument("compose works in genus 1".into()));
    }
    let letters = crate::text::parse_word(word)?;
    let (ma, mb) = (matrix::matrix_ta(), matrix::matrix_tb());
    let (ma_inv, mb_inv) = (ma.mapping_class_inverse()?, mb.mapping_class_inverse()?);
    let mut acc = RepMatrix::identity(1, 3);
    for l in letters {
        if l.index.is_some_and(|i| i != 1) {
            return Err(Error::IndexOutOfRange {
                index: l.index.unwrap_or(0),
                max: 1,
            });
        }
        let n: i64 = (&l.exponent)
            .try_into()
            .map_err(|_| Error::Parse("exponent too large".into()))?;
        let (fwd, back) = match l.symbol {
            'a' => (&ma, &ma_inv),
            'b' => (&mb, &mb_inv),
            other => return Err(Error::UnknownGenerator(other.to_string())),
        };
        let step = if n < 0 { back } else { fwd };
        for _ in 0..n.unsigned_abs() {
            acc = RepMatrix::compose_mapping_classes(&acc, step)?;
        }
    }
    matrix_output(&acc, ctx)
}

fn cmd_specialize(expr: &str, ctx: &Ctx) -> Result<Output> {
    let target = ctx
        .specialize
        .clone()
        .ok_or_else(|| Error::InvalidArgument("--specialize <target> is required".into()))?;
    let p = HeisPolynomial::parse(expr, ctx.genus)?;
    let s = specialize(&p, &target)?;
    Ok(Output::new(
        s.to_json(),
        s.to_plain_string(),
        s.to_plain_string(),
    ))
}

fn cmd_pairing(args: &PairingArgs, ctx: &Ctx) -> Result<Output> {
    let records = if let Some(b) = &args.builtin {
        if ctx.genus != 1 {
            return Err(Error::InvalidArgument(
                "built-in records are for genus 1".into(),
            ));
        }
        match b.as_str() {
            "ta12" => pairing::fixture_ta_12(),
            "ta13" => pairing::fixture_ta_13(),
            "s" => pairing::fixture_separating_s(),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown record set `{other}`"
                )))
            }
        }
    } else if let Some(text) = &args.records {
        records_from_json(text, ctx.genus)?
    } else if let Some(text) = ctx.read_fixture()? {
        records_from_json(&text, ctx.genus)?
    } else {
        return Err(Error::InvalidArgument(
            "give records as JSON, --fixture <file> or --builtin".into(),
        ));
    };
    let mode = if args.oriented {
        PairingMode::Oriented
    } else {
        PairingMode::Standard
    };
    Ok(poly_output(&evaluate_pairing(ctx.genus, &records, mode)?))
}

fn unitary_plain(m: &crate::schrodinger::UnitaryMatrix) -> String {
    (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .map(|j| {
                    let z = m.get(i, j);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_schrodinger(args: &SchrodingerArgs, ctx: &Ctx) -> Result<Output> {
    let (n, g) = (args.n, ctx.genus);
    if let Some(x) = &args.element {
        let m = schrodinger_matrix(n, g, &HeisElement::parse(x, g)?)?;
        let plain = unitary_plain(&m);
        return Ok(Output::new(m.to_json(), plain.clone(), plain));
    }
    if let Some(phi) = &args.intertwiner {
        let w = weil_intertwiner(n, g, &parse_automorphism(phi, g, true)?)?;
        let plain = unitary_plain(&w.matrix);
        let json = json!({
            "matrix": w.matrix.to_json(),
            "lift": w.lift.to_json(),
            "singular_values": w.singular_values,
            "residual": w.residual,
        });
        return Ok(Output::new(json, plain.clone(), plain));
    }
    if let Some(pair) = &args.cocycle {
        let l = weil_cocycle(
            n,
            g,
            &parse_automorphism(&pair[0], g, true)?,
            &parse_automorphism(&pair[1], g, true)?,
        )?;
        let text = format!("{:+.12}{:+.12}i", l.re, l.im);
        return Ok(Output::new(
            json!({"cocycle": [l.re, l.im], "modulus": l.norm()}),
            text.clone(),
            text,
        ));
    }
    let report = verify_schrodinger_rep(n, g, ctx.tol)?;
    let mut o = Output::new(
        json!({
            "title": report.title,
            "tolerance": report.tolerance,
            "max_error": report.max_error(),
            "passed": report.all_pass(),
            "checks": report.checks.len(),
        }),
        String::new(),
        format!(
            "{}: {} ({} checks, max error {:.3e})",
            report.title,
            if report.all_pass() { "pass" } else { "FAIL" },
            report.checks.len(),
            report.max_error()
        ),
    );
    o.latex = o.plain.clone();
    o.ok = report.all_pass();
    Ok(o)
}

struct Line {
    name: String,
    passed: bool,
    detail: String,
}

fn relation_line(r: &RelationReport) -> Line {
    let failures: Vec<String> = r
        .failures()
        .map(|c| format!("{}: {} != {}", c.name, c.lhs_value, c.rhs_value))
        .collect();
    Line {
        name: r.title.clone(),
        passed: r.all_hold(),
        detail: if failures.is_empty() {
            format!("{} relations hold", r.checks.len())
        } else {
            failures.join("; ")
        },
    }
}

fn cmd_verify(args: &VerifyArgs, ctx: &Ctx) -> Result<Output> {
    let any = args.presentation
        || args.bellingeri
        || args.braid_relation
        || args.boundary
        || args.moriyama
        || args.schrodinger;
    let on = |flag: bool| args.all || flag || !any;
    let mut lines = Vec::new();
    if on(args.presentation) {
        lines.push(relation_line(&verify_presentation(ctx.genus)?));
    }
    if on(args.bellingeri) {
        lines.push(relation_line(&verify_bellingeri(ctx.genus, ctx.strands)?));
    }
    if on(args.braid_relation) {
        let (lhs, rhs) = matrix::braid_relation_sides()?;
        let d = lhs.diff(&matrix::fixture_ta_tb_ta())?;
        lines.push(Line {
            name: "braid relation for the genus-one twist matrices".into(),
            passed: lhs == rhs && d.is_empty(),
            detail: if d.is_empty() {
                "both sides agree with the transcribed matrix".into()
            } else {
                d.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            },
        });
    }
    if on(args.boundary) {
        let m = matrix::matrix_boundary_twist()?;
        let d = m.diff(&matrix::fixture_boundary_twist())?;
        lines.push(Line {
            name: "boundary twist against the transcribed matrix".into(),
            passed: d.is_empty(),
            detail: if d.is_empty() {
                "all 9 entries agree".into()
            } else {
                d.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            },
        });
    }
    if on(args.moriyama) {
        let t = SpecializationTarget::Moriyama;
        let b = matrix::matrix_boundary_twist()?
            .specialize(&t)?
            .is_identity();
        lines.push(Line {
            name: "Moriyama image of the boundary twist".into(),
            passed: b,
            detail: if b { "identity" } else { "not the identity" }.into(),
        });
        for g in [2, 3] {
            let s = matrix::matrix_separating_twist(g)?
                .specialize(&t)?
                .is_identity();
            lines.push(Line {
                name: format!("Moriyama image of the separating twist, genus {g}"),
                passed: s,
                detail: if s { "identity" } else { "not the identity" }.into(),
            });
        }
    }
    if on(args.schrodinger) {
        for n in 2..=8 {
            let r = verify_schrodinger_rep(n, ctx.genus.min(2), ctx.tol)?;
            lines.push(Line {
                name: r.title.clone(),
                passed: r.all_pass(),
                detail: format!("max error {:.3e}", r.max_error()),
            });
        }
    }
    let passed = lines.iter().all(|l| l.passed);
    let json = json!({
        "passed": passed,
        "checks": lines
            .iter()
            .map(|l| json!({"name": l.name, "passed": l.passed, "detail": l.detail}))
            .collect::<Vec<_>>(),
    });
    let plain = lines
        .iter()
        .map(|l| {
            format!(
                "[{}] {}: {}",
                if l.passed { "pass" } else { "FAIL" },
                l.name,
                l.detail
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut o = Output::new(json, plain.clone(), plain);
    o.ok = passed;
    Ok(o)
}

impl Output {
    #[cfg(test)]
    fn text(&self) -> &str {
        &self.plain
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["heisencalc"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn phi_word() {
        let (code, out, _) =
            run_str(&["phi", "--genus", "1", "--strands", "2", "a1^-1 b1 a1^-1 b1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["word"], "u^2 a1^-2 b1^2");
        let (_, out, _) = run_str(&["phi", "--plain", "a1^-1 b1 a1^-1 b1"]);
        assert_eq!(out.trim(), "u^2 a1^-2 b1^2");
    }

    #[test]
    fn boundary_specializes_to_identity() {
        let (code, out, _) = run_str(&[
            "matrix",
            "--boundary",
            "--genus",
            "1",
            "--specialize",
            "moriyama",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["is_identity"], true);
    }

    #[test]
    fn usage_and_domain_errors() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["phi", "--bogus", "s1"]).0, 2);
        assert_eq!(run_str(&["phi", "s3"]).0, 1);
        assert_eq!(run_str(&["matrix", "--separating", "--genus", "1"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn output_is_deterministic() {
        let a = run_str(&["matrix", "--aba"]);
        let b = run_str(&["matrix", "--aba"]);
        assert_eq!(a, b);
    }

    #[test]
    fn aut_and_morita() {
        let (code, out, _) = run_str(&["aut", "--plain", "--apply", "a1", "ta1", "tb1"]);
        assert_eq!(code, 0);
        assert!(out.contains("delta="));
        let (_, out, _) = run_str(&["morita", "--genus", "2", "--builtin", "bounding-pair"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["delta"][0], json!(2));
        let (_, out, _) = run_str(&["morita", "--plain", "--d", "1", "--word", "b1 a1"]);
        assert_eq!(out.trim(), "-1");
    }

    #[test]
    fn compose_reproduces_aba() {
        let (code, out, _) = run_str(&["compose", "a b a"]);
        assert_eq!(code, 0);
        let m = RepMatrix::from_json(&serde_json::from_str::<Value>(&out).unwrap()).unwrap();
        assert!(m.diff(&matrix::fixture_ta_tb_ta()).unwrap().is_empty());
        let (_, out, _) = run_str(&["compose", "--specialize", "moriyama", "a a^-1 b b^-1"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["is_identity"], true);
    }

    #[test]
    fn specialize_and_pairing() {
        let (_, out, _) = run_str(&[
            "specialize",
            "--plain",
            "--specialize",
            "abelian",
            "u^2 a^-2 b^2",
        ]);
        assert_eq!(out.trim(), "a1^-2 b1^2");
        let (code, out, _) = run_str(&["pairing", "--plain", "--builtin", "ta13"]);
        assert_eq!(code, 0);
        assert_eq!(
            HeisPolynomial::parse(out.trim(), 1).unwrap(),
            HeisPolynomial::parse("(u^-1 - 1) a^-1 b", 1).unwrap()
        );
        assert_eq!(run_str(&["specialize", "u"]).0, 1);
    }

    #[test]
    fn schrodinger_commands() {
        assert_eq!(run_str(&["schrodinger", "--n", "3", "--verify"]).0, 0);
        let (code, out, _) = run_str(&["schrodinger", "--n", "3", "--intertwiner", "ta1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["residual"].as_f64().unwrap() < 1e-10);
        assert_eq!(
            run_str(&[
                "schrodinger",
                "--n",
                "3",
                "--intertwiner",
                "{\"delta\":[1,0],\"S\":[[1,0],[1,1]]}"
            ])
            .0,
            1
        );
        let (code, _, _) = run_str(&["schrodinger", "--n", "4", "--cocycle", "ta1", "j1"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn verify_all() {
        let (code, out, _) = run_str(&[
            "verify",
            "--all",
            "--genus",
            "2",
            "--strands",
            "3",
            "--plain",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"));
        let o = cmd_phi(
            "s1",
            &Ctx {
                genus: 1,
                strands: 2,
                tol: DEFAULT_TOL,
                specialize: None,
                fixture: None,
            },
        )
        .unwrap();
        assert_eq!(o.text(), "u");
    }
}
