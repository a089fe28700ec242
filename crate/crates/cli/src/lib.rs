//! The `aml` command line: argument parsing, dispatch and JSON reports.
//!
//! Every command prints one JSON object on standard output with sorted
//! keys, `"schema": 1`, the tool version and the command echo. Exit codes:
//! 0 on success, 1 when a mathematical check fails, 2 on usage or input
//! errors.

use std::fmt::Display;
use std::fs;

use aml_core::analysis::{
    center_component_count, center_components, component_count_vs_rank, default_grid, grid_maximality_scan,
    idempotent_components, verify_component, CoordinateSpec, Predicate, VarietyComponent,
};
use aml_core::catalog::{
    are_isomorphic, build_monoid, families, is_compatible, q_poly, unit_group, MonoidDescriptor, Quadruple, Side,
};
use aml_core::monoid::{triple_names, PolynomialMonoid, SampleOutcome};
use aml_core::poly::{LaurentPolynomial, Rational};
use aml_core::reduction::{identify_catalog, reduce};
use aml_core::text::{parse_source, to_source};
use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;
pub const SEED_ENV: &str = "AML_SEED";
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u32 = 200;

#[derive(Parser, Debug)]
#[command(name = "aml", version, about = "Exact checks for polynomial monoid structures on affine space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check associativity, commutativity and the unit of a monoid file.
    Check { file: String },
    /// Catalog queries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the multiplication of a catalog entry.
    Build { descriptor: MonoidDescriptor },
    /// Compatibility of a quadruple (b, b', c, c').
    Compatible { b: u32, b_prime: u32, c: u32, c_prime: u32 },
    /// The polynomial Q of a compatible quadruple.
    Qpoly { b: u32, b_prime: u32, c: u32, c_prime: u32 },
    /// Left or right commutative reduction of MAA, MAA_Q or MMA.
    Reduce {
        #[arg(long, value_enum)]
        side: SideArg,
        descriptor: MonoidDescriptor,
    },
    /// Idempotent components of a monoid on A^3.
    Idempotents { descriptor: MonoidDescriptor },
    /// Center of a monoid on A^3.
    Center { descriptor: MonoidDescriptor },
    /// Isomorphism of two catalog entries.
    Iso { first: MonoidDescriptor, second: MonoidDescriptor },
    /// Seeded random search for an associativity counterexample.
    Fuzz {
        file: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        /// Defaults to $AML_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Catalog sweep: associativity, units and reductions up to an exponent bound.
    Sweep {
        #[arg(long)]
        max: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List the families.
    List {
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Display) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

type Fields = Map<String, Value>;

/// Report fields and whether every check passed.
type CommandResult = Result<(Fields, bool), Failure>;

fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational).collect())
}

fn components(m: &PolynomialMonoid) -> Value {
    let names = m.variable_names();
    m.components()
        .iter()
        .map(|c| Value::String(c.display_with(&names).to_string()))
        .collect()
}

fn fields(value: Value) -> Fields {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("reports are objects"),
    }
}

fn read_source(path: &str) -> Result<aml_core::text::MonoidSource, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    parse_source(&text).map_err(|e| usage(format!("{path}:{e}")))
}

fn load_monoid(path: &str) -> Result<(PolynomialMonoid, &'static str), Failure> {
    let source = read_source(path)?;
    let hinted = source.unit_hint.is_some();
    match source.into_monoid() {
        Ok(m) => {
            let status = match (hinted, m.unit().is_some()) {
                (true, _) => "verified_hint",
                (false, true) => "found_in_grid",
                (false, false) => "absent_in_grid",
            };
            Ok((m, status))
        }
        Err(aml_core::Error::InvalidUnit) => Err(Failure {
            code: 1,
            message: format!("{path}: the unit hint is not a two-sided unit"),
        }),
        Err(e) => Err(usage(format!("{path}: {e}"))),
    }
}

fn check(file: &str) -> CommandResult {
    let (m, unit_status) = load_monoid(file)?;
    let report = m.check();
    let names = triple_names(m.dimension());
    let witness = match &report.witness {
        Some(w) => json!({
            "component": w.component + 1,
            "monomial": LaurentPolynomial::term(Rational::from_integer(1.into()), w.monomial.exponents().to_vec())
                .display_with(&names)
                .to_string(),
            "difference": rational(&w.difference),
        }),
        None => Value::Null,
    };
    let descriptor = identify_catalog(&m);
    let out = json!({
        "dimension": m.dimension(),
        "multiplication": components(&m),
        "associative": report.associative,
        "commutative": report.commutative,
        "unit": m.unit().map(|e| point(e)).unwrap_or(Value::Null),
        "unit_status": unit_status,
        "witness": witness,
        "descriptor": descriptor.map(|d| Value::String(d.to_string())).unwrap_or(Value::Null),
        "notation": descriptor.map(|d| Value::String(d.notation())).unwrap_or(Value::Null),
    });
    Ok((fields(out), report.associative))
}

fn catalog_list(dim: Option<usize>) -> CommandResult {
    let rows: Vec<Value> = families()
        .into_iter()
        .filter(|f| dim.is_none_or(|d| d == f.dimension))
        .map(|f| {
            json!({
                "family": f.syntax,
                "dim": f.dimension,
                "rank": f.rank,
                "multiplication": f.multiplication,
                "parameters": f.parameters,
            })
        })
        .collect();
    Ok((fields(json!({ "count": rows.len(), "families": rows })), true))
}

fn build(d: &MonoidDescriptor) -> CommandResult {
    let m = build_monoid(d).map_err(usage)?;
    let out = json!({
        "descriptor": d.to_string(),
        "notation": d.notation(),
        "dimension": m.dimension(),
        "multiplication": components(&m),
        "unit": m.unit().map(|e| point(e)).unwrap_or(Value::Null),
        "source": to_source(&m),
    });
    Ok((fields(out), true))
}

fn compatible(p: Quadruple) -> CommandResult {
    let w = is_compatible(&p).map_err(usage)?;
    let out = json!({
        "quadruple": p.as_array(),
        "compatible": w.is_some(),
        "d": w.map(|w| Value::from(w.d)).unwrap_or(Value::Null),
    });
    Ok((fields(out), true))
}

fn qpoly(p: Quadruple) -> CommandResult {
    let q = q_poly(&p).map_err(usage)?;
    let d = is_compatible(&p).map_err(usage)?.map(|w| w.d);
    let names: Vec<String> = ["x1", "x2", "y1", "y2"].iter().map(|s| s.to_string()).collect();
    let out = json!({
        "quadruple": p.as_array(),
        "d": d,
        "variables": names,
        "q": q.display_with(&names).to_string(),
        "terms": q.len(),
    });
    Ok((fields(out), true))
}

fn reduce_cmd(d: &MonoidDescriptor, side: Side) -> CommandResult {
    if !d.is_semicommutative() {
        return Err(usage(format!("{d} has no commutative reduction (MAA, MAA_Q or MMA expected)")));
    }
    match reduce(d, side) {
        Ok(r) => {
            let m = &r.reduced;
            let out = json!({
                "descriptor": d.to_string(),
                "side": side.to_string(),
                "identified": r.identified.notation(),
                "identified_descriptor": r.identified.to_string(),
                "multiplication": components(m),
                "regular": true,
                "commutative": m.check_commutativity(),
                "associative": m.check_associativity().holds(),
            });
            Ok((fields(out), true))
        }
        Err(aml_core::Error::Inconsistent(msg)) => Err(Failure { code: 1, message: msg }),
        Err(e) => Err(usage(e)),
    }
}

fn coordinate(c: &CoordinateSpec) -> Value {
    match c {
        CoordinateSpec::Fixed(q) => json!({ "kind": "fixed", "value": q.to_string() }),
        CoordinateSpec::Free => json!({ "kind": "free" }),
        CoordinateSpec::Cyclotomic(k) => json!({
            "kind": "roots_of_unity",
            "order": k.order,
            "includes_zero": k.includes_zero,
        }),
    }
}

fn component_json(m: &PolynomialMonoid, c: &VarietyComponent, predicate: Predicate) -> Result<(Value, bool), Failure> {
    let verified = verify_component(m, c, predicate).map_err(usage)?;
    let relation = c
        .relation
        .as_ref()
        .map(|r| json!({ "lhs": r.lhs, "rhs": r.rhs }))
        .unwrap_or(Value::Null);
    Ok((
        json!({
            "coordinates": c.coordinates.iter().map(coordinate).collect::<Vec<_>>(),
            "relation": relation,
            "dim": c.dimension(),
            "irreducible_count": c.irreducible_count(),
            "verified": verified,
        }),
        verified,
    ))
}

fn variety(d: &MonoidDescriptor, predicate: Predicate) -> CommandResult {
    let comps = match predicate {
        Predicate::Idempotent => idempotent_components(d),
        Predicate::Central => center_components(d),
    }
    .map_err(usage)?;
    let m = build_monoid(d).map_err(usage)?;
    let mut all_ok = true;
    let mut listed = Vec::new();
    for c in &comps {
        let (v, ok) = component_json(&m, c, predicate)?;
        all_ok &= ok;
        listed.push(v);
    }
    let maximal = grid_maximality_scan(&m, &comps, predicate, &default_grid()).map_err(usage)?;
    all_ok &= maximal;
    let mut out = fields(json!({
        "descriptor": d.to_string(),
        "components": listed,
        "maximal_on_grid": maximal,
    }));
    match predicate {
        Predicate::Idempotent => {
            let c = component_count_vs_rank(d).map_err(usage)?;
            out.insert("count".into(), c.count.into());
            out.insert("rank".into(), c.rank.into());
            out.insert("count_equals_2_pow_rank".into(), c.equal_2r.into());
        }
        Predicate::Central => {
            out.insert("count".into(), center_component_count(d).map_err(usage)?.into());
            let formula = match d {
                MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) if !d.is_commutative() => {
                    Value::from(p.b.abs_diff(p.b_prime).gcd(&p.c.abs_diff(p.c_prime)) + 1)
                }
                _ => Value::Null,
            };
            out.insert("gcd_formula".into(), formula);
            out.insert("unit_group".into(), unit_group(d).map_err(usage)?.to_string().into());
        }
    }
    Ok((out, all_ok))
}

fn iso(a: &MonoidDescriptor, b: &MonoidDescriptor) -> CommandResult {
    let answer = are_isomorphic(a, b).map_err(usage)?;
    let out = json!({
        "first": a.to_string(),
        "second": b.to_string(),
        "isomorphic": answer.to_string(),
    });
    Ok((fields(out), true))
}

fn fuzz(file: &str, trials: u32, seed: u64) -> CommandResult {
    let (m, _) = load_monoid(file)?;
    let outcome = m.sample_associativity(trials, seed);
    let counterexample = match &outcome {
        SampleOutcome::Counterexample { trial, example } => json!({
            "trial": trial,
            "x": point(&example.x),
            "y": point(&example.y),
            "z": point(&example.z),
            "left": point(&example.left),
            "right": point(&example.right),
        }),
        SampleOutcome::NoCounterexample { .. } => Value::Null,
    };
    let out = json!({
        "seed": seed,
        "trials": trials,
        "counterexample": counterexample,
        "passed": outcome.passed(),
    });
    Ok((fields(out), outcome.passed()))
}

fn sweep(max: u32) -> CommandResult {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut descriptors: Vec<MonoidDescriptor> = Quadruple::grid(0, max)
        .flat_map(|p| [MonoidDescriptor::Maa(p), MonoidDescriptor::Mma(p)])
        .collect();
    descriptors.extend(Quadruple::compatible_grid(max).map(MonoidDescriptor::MaaQ));
    for d in descriptors {
        checked += 1;
        let m = build_monoid(&d).map_err(usage)?;
        if !m.check_associativity().holds() {
            failures.push(format!("{d}: not associative"));
        }
        if !m.unit().is_some_and(|e| m.verify_unit(e).unwrap_or(false)) {
            failures.push(format!("{d}: unit"));
        }
        for side in [Side::Left, Side::Right] {
            match reduce(&d, side) {
                Ok(r) if r.reduced.check_associativity().holds() && r.reduced.check_commutativity() => {}
                Ok(_) => failures.push(format!("{d}: {side} reduction")),
                Err(e) => failures.push(format!("{d}: {side} reduction: {e}")),
            }
        }
    }
    let passed = failures.is_empty();
    let out = json!({
        "max": max,
        "checked": checked,
        "failures": failures,
        "passed": passed,
    });
    Ok((fields(out), passed))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Catalog { .. } => "catalog list",
        Command::Build { .. } => "build",
        Command::Compatible { .. } => "compatible",
        Command::Qpoly { .. } => "qpoly",
        Command::Reduce { .. } => "reduce",
        Command::Idempotents { .. } => "idempotents",
        Command::Center { .. } => "center",
        Command::Iso { .. } => "iso",
        Command::Fuzz { .. } => "fuzz",
        Command::Sweep { .. } => "sweep",
    }
}

fn resolve_seed(flag: Option<u64>, env_seed: Option<&str>) -> Result<u64, Failure> {
    match (flag, env_seed) {
        (Some(s), _) => Ok(s),
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SEED_ENV}={s:?} is not an unsigned integer"))),
        (None, None) => Ok(DEFAULT_SEED),
    }
}

fn dispatch(command: &Command, env_seed: Option<&str>) -> CommandResult {
    match command {
        Command::Check { file } => check(file),
        Command::Catalog {
            action: CatalogAction::List { dim },
        } => catalog_list(*dim),
        Command::Build { descriptor } => build(descriptor),
        Command::Compatible { b, b_prime, c, c_prime } => compatible(Quadruple::new(*b, *b_prime, *c, *c_prime)),
        Command::Qpoly { b, b_prime, c, c_prime } => qpoly(Quadruple::new(*b, *b_prime, *c, *c_prime)),
        Command::Reduce { side, descriptor } => reduce_cmd(descriptor, (*side).into()),
        Command::Idempotents { descriptor } => variety(descriptor, Predicate::Idempotent),
        Command::Center { descriptor } => variety(descriptor, Predicate::Central),
        Command::Iso { first, second } => iso(first, second),
        Command::Fuzz { file, trials, seed } => fuzz(file, *trials, resolve_seed(*seed, env_seed)?),
        Command::Sweep { max } => sweep(*max),
    }
}

/// Runs one invocation. `argv` includes the program name; `env_seed` is
/// the value of `AML_SEED`, if set.
pub fn run<I, T>(argv: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(&cli.command, env_seed) {
        Ok((mut out, passed)) => {
            out.insert("schema".into(), SCHEMA.into());
            out.insert("version".into(), env!("CARGO_PKG_VERSION").into());
            out.insert(
                "command".into(),
                json!({ "name": command_name(&cli.command), "argv": argv[1..].to_vec() }),
            );
            let text = serde_json::to_string_pretty(&Value::Object(out)).expect("serializable");
            Outcome {
                stdout: text + "\n",
                stderr: if passed { String::new() } else { "check failed\n".into() },
                code: if passed { 0 } else { 1 },
            }
        }
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}
