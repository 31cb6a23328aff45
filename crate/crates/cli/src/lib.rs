//! The `ord` command line: comparisons, trees, arithmetic, sequent proofs, law
//! batteries and the omniscience demos.
//!
//! Exit codes: 0 for a definite answer, 3 when a comparison stays unknown, 1 when a
//! law battery finds a violation, 2 for errors.

pub mod expr;

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use ord_core::bits::{eps_llpo, eps_lpo, llpo_parity_holds, lpo_witness, BitSeq};
use ord_core::compare::{le, lt, EngineError, Fuel};
use ord_core::kernel::{
    assist_le, assist_lt, certify_le, certify_lt, llpo_certificate, to_text, verify, Assist, Certificate, VerifyPolicy,
};
use ord_core::laws::{arith_laws, order_laws, run_battery, BatteryConfig};
use ord_core::mlseq::{ml_cert_exa123, ml_derivable, ml_verify, sequent, Atom};
use ord_core::oracle::{val, GenParams};
use ord_core::trees::enumerate;
use ord_core::{sup_finite, OrdName, TriBool};

use crate::expr::{describe_or_ident, lower, parse};

pub const EXIT_DEFINITE: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// Generated premises checked when a certificate is accepted on the command line.
const SAMPLES: [u64; 6] = [0, 1, 2, 3, 5, 8];
/// Indices sampled in the sequent demo; wide enough to reach the second case.
const ML_SAMPLES: std::ops::Range<u64> = 0..12;

#[derive(Parser, Debug)]
#[command(name = "ord", version, about = "Constructive names of countable ordinals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two expressions.
    Cmp {
        a: String,
        b: String,
        /// Indices examined per family.
        #[arg(long, default_value_t = 64)]
        width: u64,
        /// Nesting bound for the left-hand name.
        #[arg(long, default_value_t = 512)]
        depth: usize,
        /// Try to certify what the engine leaves open.
        #[arg(long)]
        kernel: bool,
        /// Print certificates for a definite verdict.
        #[arg(long)]
        emit_cert: bool,
    },
    /// List the tree nodes of an expression up to a bound on mu.
    Tree {
        expr: String,
        #[arg(long, default_value_t = 5)]
        mu_bound: u64,
    },
    /// Print the canonical form and, for finitary names, the value.
    Eval { expr: String },
    /// Decide a sequent such as "2 < 3, w <= 1" over finitary names.
    MlProve { sequent: String },
    /// Run the order and arithmetic law batteries on random finitary names.
    CheckLaws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Depth bound of generated names.
        #[arg(long, default_value_t = 4)]
        size: u32,
    },
    /// Names built from bit sequences.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        /// Leading bits, e.g. 0011.
        #[arg(long)]
        prefix: String,
        /// How the sequence continues: the last bit repeats, visibly or not.
        #[arg(long, value_enum, default_value_t = TailKind::Const)]
        tail: TailKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DemoKind {
    Lpo,
    MlLpo,
    Llpo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TailKind {
    Const,
    Opaque,
}

/// A failure reported on the error stream with exit code 2.
#[derive(Debug)]
struct Fail(String);

impl From<EngineError> for Fail {
    fn from(e: EngineError) -> Self {
        Fail(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail(e.to_string())
    }
}

type Outcome = Result<i32, Fail>;

/// Runs one command; `args` includes the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_DEFINITE };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Cmp { a, b, width, depth, kernel, emit_cert } => {
            cmd_cmp(&a, &b, Fuel::new(width, depth), kernel, emit_cert, out)
        }
        Command::Tree { expr, mu_bound } => cmd_tree(&expr, mu_bound, out),
        Command::Eval { expr } => cmd_eval(&expr, out),
        Command::MlProve { sequent } => cmd_ml_prove(&sequent, out),
        Command::CheckLaws { seed, cases, size } => cmd_check_laws(seed, cases, size, out),
        Command::Demo { which, prefix, tail } => cmd_demo(which, &prefix, tail, out),
    };
    match result {
        Ok(code) => code,
        Err(Fail(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn name_of(label: &str, src: &str) -> Result<OrdName, Fail> {
    parse(src).map(|e| lower(&e)).map_err(|e| Fail(format!("{label}: {e}")))
}

/// The four relations between two names, as far as they are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Relations {
    le: TriBool,
    ge: TriBool,
    lt: TriBool,
    gt: TriBool,
}

impl Relations {
    fn eq(&self) -> TriBool {
        self.le & self.ge
    }

    fn verdict(&self) -> &'static str {
        if self.lt.is_true() {
            "lt"
        } else if self.gt.is_true() {
            "gt"
        } else if self.eq().is_true() {
            "eq"
        } else {
            "unknown"
        }
    }

    fn slot(&self, strict: bool, flipped: bool) -> TriBool {
        match (strict, flipped) {
            (false, false) => self.le,
            (false, true) => self.ge,
            (true, false) => self.lt,
            (true, true) => self.gt,
        }
    }

    fn slot_mut(&mut self, strict: bool, flipped: bool) -> &mut TriBool {
        match (strict, flipped) {
            (false, false) => &mut self.le,
            (false, true) => &mut self.ge,
            (true, false) => &mut self.lt,
            (true, true) => &mut self.gt,
        }
    }

    /// `α < β` gives `α ≤ β`, and `α ≤ β` excludes `β < α`.
    fn close(&mut self) {
        if self.lt.is_true() {
            self.le = TriBool::True;
            self.ge = TriBool::False;
        }
        if self.gt.is_true() {
            self.ge = TriBool::True;
            self.le = TriBool::False;
        }
        if self.le.is_true() {
            self.gt = TriBool::False;
        }
        if self.ge.is_true() {
            self.lt = TriBool::False;
        }
    }
}

fn spot_checked(c: Option<Certificate>) -> Option<Certificate> {
    c.filter(|c| verify(c, &VerifyPolicy::spot_check(&SAMPLES)).ok)
}

fn kernel_cert(strict: bool, x: &OrdName, y: &OrdName) -> Result<Option<Certificate>, Fail> {
    let opts = Assist::default();
    let rhs = [y.clone()];
    let c = if strict { assist_lt(x, &rhs, &opts) } else { assist_le(x, &rhs, &opts) };
    Ok(spot_checked(c.map_err(|e| Fail(e.to_string()))?))
}

fn engine_cert(strict: bool, x: &OrdName, y: &OrdName, fuel: Fuel) -> Result<Option<Certificate>, Fail> {
    let rhs = [y.clone()];
    let c = if strict { certify_lt(x, &rhs, fuel) } else { certify_le(x, &rhs, fuel) };
    c.map_err(|e| Fail(e.to_string()))
}

fn cmd_cmp(a_src: &str, b_src: &str, fuel: Fuel, kernel: bool, emit_cert: bool, out: &mut dyn Write) -> Outcome {
    let a = name_of("first argument", a_src)?;
    let b = name_of("second argument", b_src)?;
    let (above, below) = ([b.clone()], [a.clone()]);
    let mut rel = Relations {
        le: le(&a, &above, fuel)?.value,
        ge: le(&b, &below, fuel)?.value,
        lt: lt(&a, &above, fuel)?.value,
        gt: lt(&b, &below, fuel)?.value,
    };
    rel.close();
    // Certificates found by the kernel, kept for `--emit-cert`.
    let mut certified: Vec<(bool, bool, Certificate)> = Vec::new();
    if kernel {
        const SLOTS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];
        for (strict, flipped) in SLOTS {
            if rel.slot(strict, flipped).is_known() {
                continue;
            }
            let (x, y) = if flipped { (&b, &a) } else { (&a, &b) };
            if let Some(c) = kernel_cert(strict, x, y)? {
                certified.push((strict, flipped, c));
            }
        }
        // Generators are only sampled, so a certificate can be wrong beyond the samples.
        // Contradicting certificates, or ones that overturn the engine, are all dropped.
        let mut with_kernel = rel;
        for &(strict, flipped, _) in &certified {
            *with_kernel.slot_mut(strict, flipped) = TriBool::True;
        }
        with_kernel.close();
        let consistent = SLOTS.iter().all(|&(s, f)| {
            let before = rel.slot(s, f);
            let after = with_kernel.slot(s, f);
            !before.is_known() || before == after
        }) && certified.iter().all(|&(s, f, _)| with_kernel.slot(s, f).is_true());
        if consistent {
            rel = with_kernel;
        } else {
            certified.clear();
        }
    }
    writeln!(out, "le {}", rel.le.as_str())?;
    writeln!(out, "ge {}", rel.ge.as_str())?;
    writeln!(out, "lt {}", rel.lt.as_str())?;
    writeln!(out, "gt {}", rel.gt.as_str())?;
    writeln!(out, "eq {}", rel.eq().as_str())?;
    let verdict = rel.verdict();
    writeln!(out, "verdict {verdict}")?;
    if emit_cert {
        let wanted: &[(bool, bool)] = match verdict {
            "lt" => &[(true, false)],
            "gt" => &[(true, true)],
            "eq" => &[(false, false), (false, true)],
            _ => &[],
        };
        if wanted.is_empty() {
            writeln!(out, "certificate none")?;
        }
        for &(strict, flipped) in wanted {
            let (x, y) = if flipped { (&b, &a) } else { (&a, &b) };
            let found = match certified.iter().find(|(s, f, _)| (*s, *f) == (strict, flipped)) {
                Some((_, _, c)) => Some(c.clone()),
                None => engine_cert(strict, x, y, fuel)?,
            };
            let symbol = if strict { "<" } else { "<=" };
            writeln!(out, "certificate {} {symbol} {}", describe_or_ident(x), describe_or_ident(y))?;
            match found.map(|c| to_text(&c, &describe_or_ident)) {
                Some(Ok(text)) => write!(out, "{text}")?,
                Some(Err(_)) => writeln!(out, "not serializable: premises over the naturals")?,
                None => writeln!(out, "not found")?,
            }
        }
    }
    Ok(if verdict == "unknown" { EXIT_UNKNOWN } else { EXIT_DEFINITE })
}

fn cmd_tree(src: &str, mu_bound: u64, out: &mut dyn Write) -> Outcome {
    let name = name_of("expression", src)?;
    let nodes = enumerate(&name, mu_bound).map_err(|e| Fail(e.to_string()))?;
    for path in nodes {
        let items: Vec<String> = path.iter().map(u64::to_string).collect();
        writeln!(out, "[{}]", items.join(","))?;
    }
    Ok(EXIT_DEFINITE)
}

fn cmd_eval(src: &str, out: &mut dyn Write) -> Outcome {
    let e = parse(src).map_err(|e| Fail(format!("expression: {e}")))?;
    let name = lower(&e);
    writeln!(out, "expr {e}")?;
    match val(&name) {
        Some(v) => writeln!(out, "value {v}")?,
        None => writeln!(out, "value none (a family over the naturals occurs)")?,
    }
    Ok(EXIT_DEFINITE)
}

/// Splits at commas outside parentheses.
fn top_level_split(src: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&src[start..]);
    parts
}

fn parse_atom(src: &str) -> Result<Atom, String> {
    let at = src.find('<').ok_or("expected `<` or `<=`")?;
    let (lhs, rest) = (&src[..at], &src[at + 1..]);
    let (strict, rhs) = match rest.strip_prefix('=') {
        Some(r) => (false, r),
        None => (true, rest),
    };
    let side = |label: &str, s: &str| parse(s).map(|e| lower(&e)).map_err(|e| format!("{label} side: {e}"));
    let (l, r) = (side("left", lhs)?, side("right", rhs)?);
    Ok(if strict { Atom::lt(&l, &r) } else { Atom::le(&l, &r) })
}

fn cmd_ml_prove(src: &str, out: &mut dyn Write) -> Outcome {
    let atoms = top_level_split(src)
        .into_iter()
        .enumerate()
        .map(|(i, a)| parse_atom(a).map_err(|e| Fail(format!("atom {}: {e}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let derivable = ml_derivable(&sequent(atoms)).map_err(|e| Fail(e.to_string()))?;
    writeln!(out, "derivable {derivable}")?;
    Ok(EXIT_DEFINITE)
}

fn cmd_check_laws(seed: u64, cases: usize, size: u32, out: &mut dyn Write) -> Outcome {
    let cfg = BatteryConfig { seed, cases, params: GenParams { max_depth: size, ..GenParams::default() } };
    let laws: Vec<_> = order_laws().into_iter().chain(arith_laws()).collect();
    let outcomes = run_battery(&laws, &cfg);
    let mut passed = 0;
    let mut first_failure = None;
    for o in &outcomes {
        if o.passed() {
            passed += 1;
            writeln!(out, "{} PASS {}/{}", o.law, o.checked, cases)?;
        } else {
            writeln!(out, "{} FAIL at case {}", o.law, o.checked)?;
            first_failure.get_or_insert(o);
        }
    }
    match first_failure {
        None => {
            writeln!(out, "PASS {passed}/{}", outcomes.len())?;
            Ok(EXIT_DEFINITE)
        }
        Some(o) => {
            let (names, error) = o.counterexample.as_ref().expect("failed outcome has a counterexample");
            let shown: Vec<String> = names.iter().map(describe_or_ident).collect();
            writeln!(out, "counterexample {}: {}", o.law, shown.join("; "))?;
            if let Some(e) = error {
                writeln!(out, "engine error: {e}")?;
            }
            writeln!(out, "FAIL {passed}/{}", outcomes.len())?;
            Ok(EXIT_VIOLATION)
        }
    }
}

fn bit_sequence(prefix: &str, tail: TailKind) -> Result<BitSeq, Fail> {
    let bits = BitSeq::parse_prefix(prefix)
        .filter(|b| !b.is_empty())
        .ok_or_else(|| Fail(format!("prefix `{prefix}` is not a nonempty string of 0 and 1")))?;
    Ok(match tail {
        TailKind::Const => BitSeq::const_last(bits),
        TailKind::Opaque => {
            // Same continuation, but only available one query at a time.
            let last = *bits.last().unwrap();
            BitSeq::opaque(bits, move |_| last)
        }
    })
}

fn describe_seq(u: &BitSeq, tail: TailKind) -> String {
    let bits: String = u.prefix.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let tail = match tail {
        TailKind::Const => "const",
        TailKind::Opaque => "opaque",
    };
    format!("sequence {bits} tail {tail}")
}

fn cmd_demo(which: DemoKind, prefix: &str, tail: TailKind, out: &mut dyn Write) -> Outcome {
    let u = bit_sequence(prefix, tail)?;
    match which {
        DemoKind::Lpo | DemoKind::MlLpo => {
            if u.prefix.windows(2).any(|w| w[0] && !w[1]) {
                return Err(Fail("the sequence must be nondecreasing".into()));
            }
            let (e, e1) = eps_lpo(&u);
            let engine = lt(&e, &[e1], Fuel::default())?.value;
            let samples: Vec<u64> = ML_SAMPLES.collect();
            let report = ml_verify(&ml_cert_exa123(&u), &VerifyPolicy::spot_check(&samples));
            writeln!(out, "{}", describe_seq(&u, tail))?;
            writeln!(out, "engine: {}", engine.as_str())?;
            writeln!(out, "ml: {}", if report.ok { "provable" } else { "not verified" })?;
            if which == DemoKind::MlLpo {
                let at_root: Vec<String> =
                    report.sampled.iter().filter(|(p, _)| p == "root/0").map(|(_, i)| i.to_string()).collect();
                writeln!(out, "ml sampled n: {}", at_root.join(" "))?;
                writeln!(out, "ml nodes checked: {}", report.visited)?;
            }
            let condition = lpo_witness(&u).map_or("undecided", |b| if b { "true" } else { "false" });
            writeln!(out, "lpo condition: {condition}")?;
        }
        DemoKind::Llpo => {
            let ones = u.prefix.iter().filter(|&&b| b).count();
            if ones > 1 || *u.prefix.last().unwrap() {
                return Err(Fail("the sequence must take the value 1 at most once and end in 0".into()));
            }
            let (e, e1, e2) = eps_llpo(&u);
            writeln!(out, "{}", describe_seq(&u, tail))?;
            for (label, side) in [("eps1", &e1), ("eps2", &e2)] {
                let v = le(&e, std::slice::from_ref(side), Fuel::default())?.value;
                writeln!(out, "engine: eps <= {label}: {}", v.as_str())?;
            }
            let both = le(&e, &[sup_finite(&[e1, e2])], Fuel::default())?.value;
            writeln!(out, "engine: eps <= sup(eps1, eps2): {}", both.as_str())?;
            let cert = llpo_certificate(&u).map_err(|e| Fail(e.to_string()))?;
            let samples: Vec<u64> = ML_SAMPLES.collect();
            let ok = verify(&cert, &VerifyPolicy::spot_check(&samples)).ok;
            writeln!(out, "kernel: eps <= sup(eps1, eps2): {}", if ok { "certified" } else { "not verified" })?;
            for k in 0..2 {
                let c = llpo_parity_holds(&u, k).map_or("undecided", |b| if b { "true" } else { "false" });
                writeln!(out, "llpo condition k={k}: {c}")?;
            }
        }
    }
    Ok(EXIT_DEFINITE)
}
