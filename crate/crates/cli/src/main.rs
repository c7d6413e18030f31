//! Command line front end: construct family members, run the coefficient
//! computations, and execute the exact verification battery with text or
//! JSON reports.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 a
//! mathematical obstruction (no exact rational answer exists).

use std::cell::OnceCell;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdvheat_core::text::fmt_rational;
use kdvheat_core::{
    bc_pair, bilinear_check, diagonal_identity_check, gn_series, hadamard_residue, hadamard_table,
    kdv_flow, potential, theta, HadamardError, HadamardTable, RatFun, Rational, Sym, WaveError,
};
use serde_json::{json, Value};

/// Cap for `verify`: the full battery on one cell stays within an
/// interactive runtime budget up to here.
const K_MAX_VERIFY: usize = 4;
/// Cap for the direct commands; cell k introduces the constant s_{2k-1}
/// and the symbol table ends at s21.
const K_MAX_DIRECT: usize = 11;

const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_OBSTRUCTION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "kdvheat",
    version,
    about = "exact rational KdV potentials and their heat kernel coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print theta_k and the potential it induces
    Theta(CellArgs),
    /// Print the potential u_k = 2 (log theta_k)''
    Potential(CellArgs),
    /// Heat coefficients H_1..H_N with termination index and certificates
    Hadamard(HadamardArgs),
    /// Kernel weight series g_n for n = --k, with its exact certificates
    Gn(GnArgs),
    /// Odd flows applied to u_k: exact values, zero iff stationary
    Flow(FlowArgs),
    /// Commuting pair certificate: M of order 2k+1 with M^2 = L^(2k+1)
    Bc(CellArgs),
    /// Run the verification battery for one cell
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Assign a family constant, e.g. --set s3=0 (repeatable)
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CellArgs {
    /// Cell index
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct HadamardArgs {
    /// Cell index
    #[arg(long)]
    k: usize,
    /// Number of coefficients H_1..H_orders (default k+2)
    #[arg(long)]
    orders: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GnArgs {
    /// Series index n (at least 1)
    #[arg(long)]
    k: usize,
    /// Top Taylor order (default 2n+6)
    #[arg(long)]
    orders: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FlowArgs {
    /// Cell index
    #[arg(long)]
    k: usize,
    /// Highest odd flow order to print (default 2k+1)
    #[arg(long)]
    orders: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Cell index (at most 4)
    #[arg(long)]
    k: usize,
    /// Comma separated subset of checks:
    /// bc,bilinear,diagonal,flow,gn,hadamard,kernel,residue
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Override series truncation depths for the series-based checks
    #[arg(long)]
    depth: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

struct CmdError {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn failure(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_FAIL,
        msg: msg.into(),
    }
}

fn obstruction(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_OBSTRUCTION,
        msg: msg.into(),
    }
}

fn main() {
    // die silently on a closed pipe like any well-behaved unix filter,
    // instead of panicking mid println
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            e.code
        }
    };
    std::process::exit(code);
}

fn dispatch(cmd: &Command) -> Result<i32, CmdError> {
    match cmd {
        Command::Theta(a) => cmd_theta(a, true),
        Command::Potential(a) => cmd_theta(a, false),
        Command::Hadamard(a) => cmd_hadamard(a),
        Command::Gn(a) => cmd_gn(a),
        Command::Flow(a) => cmd_flow(a),
        Command::Bc(a) => cmd_bc(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parse the repeatable `--set name=value` assignments. Only the family
/// constants s3, s5, ... are assignable; x, y, t and the jet symbols are
/// structural.
fn parse_assignments(set: &[String]) -> Result<Vec<(Sym, Rational)>, CmdError> {
    let mut out = Vec::with_capacity(set.len());
    for entry in set {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| usage(format!("--set expects NAME=VALUE, got '{entry}'")))?;
        let name = name.trim();
        let sym = Sym::from_name(name)
            .filter(|s| s.name().starts_with('s'))
            .ok_or_else(|| usage(format!("'{name}' is not an assignable family constant")))?;
        let v: Rational = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("cannot parse '{value}' as a rational number")))?;
        out.push((sym, v));
    }
    Ok(out)
}

fn check_cell_range(k: usize, max: usize) -> Result<(), CmdError> {
    if k > max {
        return Err(usage(format!(
            "cell index {k} is above the supported {max}"
        )));
    }
    Ok(())
}

/// Family potential with the requested constants substituted.
fn build_potential(k: usize, assigns: &[(Sym, Rational)]) -> Result<RatFun, CmdError> {
    let mut u = potential(k);
    for (s, v) in assigns {
        u = u
            .subst_rat(*s, v)
            .map_err(|e| obstruction(format!("substitution failed: {e}")))?;
    }
    Ok(u)
}

/// The constants of cell k as (name, value) pairs: the assigned rational
/// in canonical text, or the symbol name itself when left symbolic.
fn constants_of(k: usize, assigns: &[(Sym, Rational)]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for j in 1..k {
        let sym = Sym::s_const(2 * j + 1);
        let value = assigns
            .iter()
            .find(|(s, _)| *s == sym)
            .map(|(_, v)| fmt_rational(v))
            .unwrap_or_else(|| sym.name().to_string());
        out.push((sym.name().to_string(), value));
    }
    out
}

fn constants_json(constants: &[(String, String)]) -> Value {
    let mut map = serde_json::Map::new();
    for (name, value) in constants {
        map.insert(name.clone(), Value::String(value.clone()));
    }
    Value::Object(map)
}

fn constants_text(constants: &[(String, String)]) -> String {
    let mut line = String::from("constants =");
    if constants.is_empty() {
        line.push_str(" none");
    } else {
        for (name, value) in constants {
            if name == value {
                line.push_str(&format!(" {name}"));
            } else {
                line.push_str(&format!(" {name}={value}"));
            }
        }
    }
    line
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_theta(args: &CellArgs, with_theta: bool) -> Result<i32, CmdError> {
    check_cell_range(args.k, K_MAX_DIRECT)?;
    let assigns = parse_assignments(&args.common.set)?;
    let mut th = theta(args.k);
    for (s, v) in &assigns {
        th = th.subst_rat(*s, v);
    }
    let u = build_potential(args.k, &assigns)?;
    let constants = constants_of(args.k, &assigns);
    match args.common.format {
        Format::Text => {
            if with_theta {
                println!("theta = {th}");
            }
            println!("u = {u}");
        }
        Format::Json => {
            let mut v = json!({
                "schema": 1,
                "command": if with_theta { "theta" } else { "potential" },
                "cell": args.k,
                "constants": constants_json(&constants),
                "u": u.to_string(),
            });
            if with_theta {
                v["theta"] = Value::String(th.to_string());
            }
            print_json(&v);
        }
    }
    Ok(0)
}

fn cmd_hadamard(args: &HadamardArgs) -> Result<i32, CmdError> {
    check_cell_range(args.k, K_MAX_DIRECT)?;
    let orders = args.orders.unwrap_or(args.k + 2);
    if orders == 0 || orders > 64 {
        return Err(usage("--orders must be between 1 and 64"));
    }
    let assigns = parse_assignments(&args.common.set)?;
    let u = build_potential(args.k, &assigns)?;
    let table = hadamard_table(&u, orders).map_err(|e| match e {
        HadamardError::LogObstruction => obstruction(e.to_string()),
        _ => failure(e.to_string()),
    })?;
    let mut certificates: Vec<(&str, String)> = Vec::new();
    let pass_or = |r: Result<(), HadamardError>| match r {
        Ok(()) => "pass".to_string(),
        Err(e) => format!("fail: {e}"),
    };
    certificates.push(("transport", pass_or(table.verify_transport())));
    certificates.push(("symmetry", pass_or(table.verify_symmetry())));
    let kernel_status = if table.termination_index.is_some() {
        pass_or(table.verify_finite_kernel())
    } else {
        "skipped".to_string()
    };
    certificates.push(("finite_kernel", kernel_status));
    let diag_status = if args.k >= 1 && args.k <= table.max_order() {
        pass_or(table.diagonal_identity(args.k))
    } else {
        "skipped".to_string()
    };
    certificates.push(("diagonal_identity", diag_status));
    let failed = certificates.iter().any(|(_, s)| s.starts_with("fail"));

    let constants = constants_of(args.k, &assigns);
    match args.common.format {
        Format::Text => {
            println!("cell = {}", args.k);
            println!("{}", constants_text(&constants));
            for n in 1..=orders {
                println!("H_{n} = {}", table.coeff(n));
            }
            match table.termination_index {
                Some(t) => println!("termination = {t}"),
                None => println!("termination = none"),
            }
            for (name, status) in &certificates {
                println!("{name} = {status}");
            }
        }
        Format::Json => {
            let coeffs: Vec<Value> = (1..=orders)
                .map(|n| Value::String(table.coeff(n).to_string()))
                .collect();
            let mut certs = serde_json::Map::new();
            for (name, status) in &certificates {
                certs.insert(name.to_string(), Value::String(status.clone()));
            }
            let v = json!({
                "schema": 1,
                "command": "hadamard",
                "cell": args.k,
                "constants": constants_json(&constants),
                "coefficients": coeffs,
                "termination_index": table.termination_index,
                "certificates": Value::Object(certs),
            });
            print_json(&v);
        }
    }
    Ok(if failed { EXIT_FAIL } else { 0 })
}

fn cmd_gn(args: &GnArgs) -> Result<i32, CmdError> {
    let n = args.k;
    if n == 0 || n > 32 {
        return Err(usage("--k selects the series index n, between 1 and 32"));
    }
    let m_top = args.orders.unwrap_or(2 * n + 6);
    if m_top == 0 || m_top > 128 {
        return Err(usage("--orders must be between 1 and 128"));
    }
    let g = gn_series(n, m_top);
    let mut certificates: Vec<(&str, String)> = Vec::new();
    let pass_or = |r: Result<(), WaveError>| match r {
        Ok(()) => "pass".to_string(),
        Err(e) => format!("fail: {e}"),
    };
    certificates.push(("odd_vanishing", pass_or(g.verify_odd_vanishing())));
    certificates.push(("recursion", pass_or(g.verify_recursion())));
    certificates.push(("ode", pass_or(g.verify_ode())));
    certificates.push(("laguerre", pass_or(g.verify_laguerre())));
    let failed = certificates.iter().any(|(_, s)| s.starts_with("fail"));

    match args.format {
        Format::Text => {
            println!("n = {n}");
            for (m, beta) in g.beta.iter().enumerate() {
                println!("beta_{m} = {}", fmt_rational(beta));
            }
            for (name, status) in &certificates {
                println!("{name} = {status}");
            }
        }
        Format::Json => {
            let beta: Vec<Value> = g
                .beta
                .iter()
                .map(|b| Value::String(fmt_rational(b)))
                .collect();
            let mut certs = serde_json::Map::new();
            for (name, status) in &certificates {
                certs.insert(name.to_string(), Value::String(status.clone()));
            }
            let v = json!({
                "schema": 1,
                "command": "gn",
                "n": n,
                "beta": beta,
                "certificates": Value::Object(certs),
            });
            print_json(&v);
        }
    }
    Ok(if failed { EXIT_FAIL } else { 0 })
}

fn cmd_flow(args: &FlowArgs) -> Result<i32, CmdError> {
    check_cell_range(args.k, K_MAX_DIRECT)?;
    let top = args.orders.unwrap_or((2 * args.k + 1).max(3));
    if top > 21 {
        return Err(usage("--orders must be at most 21"));
    }
    let assigns = parse_assignments(&args.common.set)?;
    let u = build_potential(args.k, &assigns)?;
    let mut flows: Vec<(u32, RatFun)> = Vec::new();
    for j in (3..=top as u32).step_by(2) {
        let f = kdv_flow(&u, j).map_err(|e| failure(e.to_string()))?;
        flows.push((j, f));
    }
    let constants = constants_of(args.k, &assigns);
    match args.common.format {
        Format::Text => {
            println!("cell = {}", args.k);
            println!("{}", constants_text(&constants));
            for (j, f) in &flows {
                println!("flow_{j} = {f}");
            }
        }
        Format::Json => {
            let list: Vec<Value> = flows
                .iter()
                .map(|(j, f)| json!({"order": j, "value": f.to_string()}))
                .collect();
            let v = json!({
                "schema": 1,
                "command": "flow",
                "cell": args.k,
                "constants": constants_json(&constants),
                "flows": list,
            });
            print_json(&v);
        }
    }
    Ok(0)
}

fn cmd_bc(args: &CellArgs) -> Result<i32, CmdError> {
    check_cell_range(args.k, K_MAX_DIRECT)?;
    let assigns = parse_assignments(&args.common.set)?;
    let u = build_potential(args.k, &assigns)?;
    // the pair is certified during construction: square identity and
    // commutation both hold whenever this returns
    let pair = bc_pair(&u, args.k).map_err(|e| failure(e.to_string()))?;
    let constants = constants_of(args.k, &assigns);
    match args.common.format {
        Format::Text => {
            println!("cell = {}", args.k);
            println!("{}", constants_text(&constants));
            println!("l = {}", pair.l);
            println!("m = {}", pair.m);
            println!("square_identity = pass");
            println!("commutation = pass");
        }
        Format::Json => {
            let v = json!({
                "schema": 1,
                "command": "bc",
                "cell": args.k,
                "constants": constants_json(&constants),
                "l": pair.l.to_string(),
                "m": pair.m.to_string(),
                "certificates": {
                    "square_identity": "pass",
                    "commutation": "pass",
                },
            });
            print_json(&v);
        }
    }
    Ok(0)
}

const CHECK_NAMES: [&str; 8] = [
    "bc", "bilinear", "diagonal", "flow", "gn", "hadamard", "kernel", "residue",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Skipped,
    Fail,
    Obstruction,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Skipped => "skipped",
            Status::Fail => "fail",
            Status::Obstruction => "obstruction",
        }
    }
}

struct Outcome {
    name: &'static str,
    status: Status,
    detail: String,
    ms: u128,
}

fn pass() -> (Status, String) {
    (Status::Pass, String::new())
}

fn fail(msg: impl Into<String>) -> (Status, String) {
    (Status::Fail, msg.into())
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CmdError> {
    check_cell_range(args.k, K_MAX_VERIFY)?;
    if let Some(d) = args.depth {
        if d == 0 || d > 64 {
            return Err(usage("--depth must be between 1 and 64"));
        }
    }
    let selected: Vec<&'static str> = match &args.checks {
        None => CHECK_NAMES.to_vec(),
        Some(list) => {
            for name in list {
                if !CHECK_NAMES.contains(&name.as_str()) {
                    return Err(usage(format!("unknown check '{name}'")));
                }
            }
            // canonical report order regardless of how they were listed
            CHECK_NAMES
                .iter()
                .copied()
                .filter(|n| list.iter().any(|l| l == n))
                .collect()
        }
    };
    let assigns = parse_assignments(&args.common.set)?;
    let k = args.k;
    let u = build_potential(k, &assigns)?;
    let table_cell: OnceCell<Result<HadamardTable, HadamardError>> = OnceCell::new();
    let table = || table_cell.get_or_init(|| hadamard_table(&u, k + 1));

    let mut outcomes: Vec<Outcome> = Vec::with_capacity(selected.len());
    for name in selected {
        let t0 = Instant::now();
        let (status, detail) = match name {
            "bc" => match bc_pair(&u, k) {
                Ok(_) => pass(),
                Err(e) => fail(e.to_string()),
            },
            "bilinear" => {
                let m_max = args.depth.unwrap_or(2 * k + 3);
                match bilinear_check(k, m_max) {
                    Ok(_) => pass(),
                    Err(e) => fail(e.to_string()),
                }
            }
            "diagonal" => {
                if k == 0 {
                    (Status::Skipped, "no diagonal identity at cell 0".into())
                } else {
                    match diagonal_identity_check(&u, k) {
                        Ok(()) => pass(),
                        Err(e) => fail(e.to_string()),
                    }
                }
            }
            "flow" => check_flow(&u, k),
            "gn" => check_gn(k, args.depth),
            "hadamard" => check_hadamard(table(), k),
            "kernel" => match table() {
                Ok(t) => match t.verify_finite_kernel() {
                    Ok(()) => pass(),
                    Err(e) => fail(e.to_string()),
                },
                Err(e) => table_error(e),
            },
            "residue" => check_residue(table(), k, &assigns),
            _ => unreachable!("validated above"),
        };
        outcomes.push(Outcome {
            name,
            status,
            detail,
            ms: t0.elapsed().as_millis(),
        });
    }

    let constants = constants_of(k, &assigns);
    let any_fail = outcomes.iter().any(|o| o.status == Status::Fail);
    let any_obstruction = outcomes.iter().any(|o| o.status == Status::Obstruction);
    let overall = if any_fail {
        "fail"
    } else if any_obstruction {
        "obstruction"
    } else {
        "pass"
    };
    match args.common.format {
        Format::Text => {
            println!("cell = {k}");
            println!("{}", constants_text(&constants));
            for o in &outcomes {
                if o.detail.is_empty() {
                    println!("check {}: {} ({} ms)", o.name, o.status.as_str(), o.ms);
                } else {
                    println!(
                        "check {}: {} ({} ms) {}",
                        o.name,
                        o.status.as_str(),
                        o.ms,
                        o.detail
                    );
                }
            }
            println!("result: {overall}");
        }
        Format::Json => {
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "status": o.status.as_str(),
                        "detail": o.detail,
                        "ms": o.ms as u64,
                    })
                })
                .collect();
            let v = json!({
                "schema": 1,
                "command": "verify",
                "cell": k,
                "constants": constants_json(&constants),
                "checks": checks,
                "status": overall,
            });
            print_json(&v);
        }
    }
    Ok(if any_fail {
        EXIT_FAIL
    } else if any_obstruction {
        EXIT_OBSTRUCTION
    } else {
        0
    })
}

fn table_error(e: &HadamardError) -> (Status, String) {
    match e {
        HadamardError::LogObstruction => (Status::Obstruction, e.to_string()),
        _ => (Status::Fail, e.to_string()),
    }
}

/// Termination at exactly k+1 with a nonzero predecessor, plus the
/// transport and symmetry re-checks of every computed row.
fn check_hadamard(table: &Result<HadamardTable, HadamardError>, k: usize) -> (Status, String) {
    let table = match table {
        Ok(t) => t,
        Err(e) => return table_error(e),
    };
    if table.termination_index != Some(k + 1) {
        return fail(format!(
            "termination index is {:?}, expected {}",
            table.termination_index,
            k + 1
        ));
    }
    if k >= 1 && table.coeff(k).is_zero() {
        return fail(format!("H_{k} vanishes but must not"));
    }
    if let Err(e) = table.verify_transport() {
        return fail(e.to_string());
    }
    if let Err(e) = table.verify_symmetry() {
        return fail(e.to_string());
    }
    pass()
}

/// Stationarity at order 2k+1 and sharpness below: every odd flow of lower
/// order at least 3 must be nonzero.
fn check_flow(u: &RatFun, k: usize) -> (Status, String) {
    let top = 2 * k as u32 + 1;
    match kdv_flow(u, top) {
        Ok(f) => {
            if !f.is_zero() {
                return fail(format!("flow {top} is nonzero"));
            }
        }
        Err(e) => return fail(e.to_string()),
    }
    for j in (3..top).step_by(2) {
        match kdv_flow(u, j) {
            Ok(f) => {
                if f.is_zero() {
                    return fail(format!("flow {j} vanishes but must not"));
                }
            }
            Err(e) => return fail(e.to_string()),
        }
    }
    pass()
}

/// The four series certificates for every index up to k+1.
fn check_gn(k: usize, depth: Option<usize>) -> (Status, String) {
    for n in 1..=k + 1 {
        let m_top = depth.unwrap_or(2 * n + 6);
        let g = gn_series(n, m_top);
        let run = |r: Result<(), WaveError>| -> Result<(), String> {
            r.map_err(|e| format!("n = {n}: {e}"))
        };
        if let Err(msg) = run(g.verify_odd_vanishing())
            .and_then(|()| run(g.verify_recursion()))
            .and_then(|()| run(g.verify_ode()))
            .and_then(|()| run(g.verify_laguerre()))
        {
            return fail(msg);
        }
    }
    pass()
}

/// Cross-method equality: the residue formula must reproduce every
/// transport coefficient through order k+1.
fn check_residue(
    table: &Result<HadamardTable, HadamardError>,
    k: usize,
    assigns: &[(Sym, Rational)],
) -> (Status, String) {
    let table = match table {
        Ok(t) => t,
        Err(e) => return table_error(e),
    };
    for n in 1..=k + 1 {
        let mut r = match hadamard_residue(k, n) {
            Ok(r) => r,
            Err(WaveError::NonRationalResult) => {
                return (
                    Status::Obstruction,
                    format!("residue formula is not rational at order {n}"),
                )
            }
            Err(e) => return fail(format!("order {n}: {e}")),
        };
        for (s, v) in assigns {
            r = match r.subst_rat(*s, v) {
                Ok(r) => r,
                Err(e) => return fail(format!("order {n}: substitution failed: {e}")),
            };
        }
        if &r != table.coeff(n) {
            return fail(format!(
                "order {n}: residue formula disagrees with transport"
            ));
        }
    }
    pass()
}
