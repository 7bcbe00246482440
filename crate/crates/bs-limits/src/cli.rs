use std::io::Write;
use std::path::PathBuf;

use bs_limits_core::britton::{britton_reduce, gamma_image, is_trivial_gamma};
use bs_limits_core::marked::{
    build_separating_sequence, check_convergence_integers, classify_equal, make_congruence_witness, separating_witness,
    Classification, ConvergenceVerdict, GroupOracle,
};
use bs_limits_core::quotient::{lamp_vector, lamplighter_image};
use bs_limits_core::{
    BsParams, EdgeHandle, Error, LimitGroup, LimitTree, MAdicResidue, Modulus, RsTable, VertexHandle, Word,
};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::search;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "bs-limits",
    version,
    about = "Word problems in Baumslag-Solitar groups and their m-adic limits"
)]
pub struct Cli {
    /// One JSON object per result instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// key = value file with search defaults (max_len, exp_bound, max_a_len, workers).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    pub n: BigInt,
}

/// `ξ ≡ xi (mod |m|^prec)`.
#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub xi: BigInt,
    #[arg(long)]
    pub prec: u32,
}

#[derive(Debug, Args)]
pub struct WordArg {
    #[arg(long)]
    pub word: Word,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Britton normal form in BS(m, n).
    Reduce {
        #[command(flatten)]
        group: BsArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Whether the word is trivial in BS(m, n).
    Trivial {
        #[command(flatten)]
        group: BsArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Whether the word is trivial in the limit group.
    LimitTrivial {
        #[command(flatten)]
        limit: LimitArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Exponent of the word as a b-power in the limit group, if it is one.
    Stab {
        #[command(flatten)]
        limit: LimitArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Image in the lamplighter group.
    Lamp {
        #[command(flatten)]
        word: WordArg,
    },
    /// Image in the affine quotient of BS(m, n).
    Gamma {
        #[command(flatten)]
        group: BsArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Shortest word trivial in exactly one of two marked groups.
    ///
    /// Groups are written `bs:M,N`, `limit:M,XI,PREC`, `gamma:M,N` or `lamp`.
    Distance {
        #[arg(long, allow_hyphen_values = true)]
        g1: GroupSpec,
        #[arg(long, allow_hyphen_values = true)]
        g2: GroupSpec,
        #[arg(long)]
        max_len: Option<usize>,
        /// Search only words with b-exponents bounded by this value.
        #[arg(long)]
        exp_bound: Option<u32>,
        #[arg(long)]
        max_a_len: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare two limit parameters at the known precision.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        xi: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        eta: BigInt,
        #[arg(long)]
        prec: u32,
    },
    /// Test a comma separated integer sequence for convergence of BS(m, ξ_n).
    Converge {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        prec: u32,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        seq: Vec<BigInt>,
    },
    /// Local exploration of the limit Bass-Serre tree.
    Tree {
        #[command(subcommand)]
        command: TreeCommand,
    },
    /// Relator words fixing the base vertex of the limit tree.
    Relator {
        #[command(subcommand)]
        command: RelatorCommand,
    },
    /// Explicit separating words.
    Witness {
        #[command(subcommand)]
        command: WitnessCommand,
    },
    /// Euclidean remainders and quotients on the class `n ≡ class (mod m^level)`.
    RsTable {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        class: BigInt,
        #[arg(long)]
        level: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// Vertices visited by the prefixes of a word.
    Path {
        #[command(flatten)]
        limit: LimitArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Edges leaving a vertex.
    Out {
        #[command(flatten)]
        limit: LimitArgs,
        #[arg(long)]
        vertex: Word,
    },
    /// Edges `u b^μ a e₀` arriving at a vertex, `|μ| <= bound`.
    In {
        #[command(flatten)]
        limit: LimitArgs,
        #[arg(long)]
        vertex: Word,
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum RelatorCommand {
    /// Whether the word is a relator word fixing the base vertex.
    Check {
        #[command(flatten)]
        limit: LimitArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Relators `w·bar(w)` up to `k_max` and `|exponent| <= exp_max`.
    Enum {
        #[command(flatten)]
        limit: LimitArgs,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        exp_max: u32,
        #[arg(long, default_value_t = 50)]
        limit_count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Word trivial in BS(m1 d1, k1 d1) and not in BS(m2 d2, k2 d2).
    Neq {
        #[arg(long, allow_negative_numbers = true)]
        m1: i64,
        #[arg(long, allow_negative_numbers = true)]
        d1: i64,
        #[arg(long, allow_negative_numbers = true)]
        k1: i64,
        #[arg(long, allow_negative_numbers = true)]
        m2: i64,
        #[arg(long, allow_negative_numbers = true)]
        d2: i64,
        #[arg(long, allow_negative_numbers = true)]
        k2: i64,
    },
    /// Word detecting `k ≡ c (mod m₁^t d)` in BS(m, k).
    Congruence {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: BigInt,
        #[arg(long)]
        t: u32,
    },
    /// Integers converging to ξ whose groups are not quotients of the limit.
    Seq {
        #[command(flatten)]
        limit: LimitArgs,
        #[arg(long)]
        count: u32,
    },
}

/// A marked group named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Bs(i64, BigInt),
    Limit(i64, BigInt, u32),
    Gamma(i64, BigInt),
    Lamp,
}

impl std::str::FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let parts: Vec<&str> = rest.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let int = |p: &str| p.parse::<i64>().map_err(|e| format!("{p:?}: {e}"));
        let big = |p: &str| p.parse::<BigInt>().map_err(|e| format!("{p:?}: {e}"));
        match (kind.trim(), parts.as_slice()) {
            ("bs", [m, n]) => Ok(GroupSpec::Bs(int(m)?, big(n)?)),
            ("gamma", [m, n]) => Ok(GroupSpec::Gamma(int(m)?, big(n)?)),
            ("limit", [m, xi, k]) => Ok(GroupSpec::Limit(
                int(m)?,
                big(xi)?,
                k.parse().map_err(|e| format!("{k:?}: {e}"))?,
            )),
            ("lamp", []) => Ok(GroupSpec::Lamp),
            _ => Err(format!(
                "expected bs:M,N | limit:M,XI,PREC | gamma:M,N | lamp, got {s:?}"
            )),
        }
    }
}

impl GroupSpec {
    fn oracle(&self) -> Result<GroupOracle, Error> {
        Ok(match self {
            GroupSpec::Bs(m, n) => GroupOracle::Bs(BsParams::new(*m, n.clone())?),
            GroupSpec::Gamma(m, n) => GroupOracle::Gamma(BsParams::new(*m, n.clone())?),
            GroupSpec::Limit(m, xi, k) => GroupOracle::Limit(limit_group(*m, xi, *k)?),
            GroupSpec::Lamp => GroupOracle::Lamplighter,
        })
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(Error::InsufficientPrecision { .. } | Error::InsufficientLevel { .. }) => EXIT_PRECISION,
            CliError::Core(Error::InternalInvariantViolation(_)) | CliError::Io(_) => EXIT_INTERNAL,
            CliError::Core(_) => EXIT_USAGE,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(s) => s.clone(),
            CliError::Core(Error::InsufficientPrecision { needed, available }) => {
                format!("insufficient precision: {available} digits given, rerun with --prec {needed} or more")
            }
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

enum Outcome {
    Verdict(bool),
    Value { json: Value, text: String },
}

struct Record {
    command: &'static str,
    inputs: Map<String, Value>,
    outcome: Outcome,
    precision_used: Option<u32>,
    validity_bound: Option<BigInt>,
}

impl Record {
    fn new(command: &'static str, outcome: Outcome) -> Self {
        Record {
            command,
            inputs: Map::new(),
            outcome,
            precision_used: None,
            validity_bound: None,
        }
    }

    fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    fn limit_inputs(self, l: &LimitArgs) -> Self {
        self.input("m", l.m).input("xi", big(&l.xi)).input("prec", l.prec)
    }

    fn write(&self, out: &mut dyn Write, as_json: bool) -> std::io::Result<()> {
        if !as_json {
            return match &self.outcome {
                Outcome::Verdict(v) => writeln!(out, "{v}"),
                Outcome::Value { text, .. } => writeln!(out, "{text}"),
            };
        }
        let mut obj = Map::new();
        obj.insert("command".into(), self.command.into());
        obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
        match &self.outcome {
            Outcome::Verdict(v) => obj.insert("verdict".into(), (*v).into()),
            Outcome::Value { json, .. } => obj.insert("value".into(), json.clone()),
        };
        obj.insert(
            "precision_used".into(),
            self.precision_used.map_or(Value::Null, Value::from),
        );
        obj.insert(
            "validity_bound".into(),
            self.validity_bound.as_ref().map_or(Value::Null, big),
        );
        writeln!(out, "{}", Value::Object(obj))
    }
}

fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

fn value(json: impl Into<Value>, text: impl Into<String>) -> Outcome {
    Outcome::Value {
        json: json.into(),
        text: text.into(),
    }
}

fn limit_group(m: i64, xi: &BigInt, prec: u32) -> Result<LimitGroup, Error> {
    LimitGroup::new(m, MAdicResidue::new(&Modulus::new(m)?, prec, xi.clone())?)
}

fn words_value(words: &[Word]) -> Value {
    words.iter().map(|w| Value::from(w.to_string())).collect()
}

fn edges_text(edges: &[EdgeHandle]) -> (Value, String) {
    let reps: Vec<Word> = edges.iter().map(|e| e.rep().clone()).collect();
    let text = reps.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n");
    (words_value(&reps), text)
}

fn execute(cli: &Cli, cfg: &Config) -> Result<Record, CliError> {
    Ok(match &cli.command {
        Command::Reduce { group, word } => {
            let p = BsParams::new(group.m.clone(), group.n.clone())?;
            let r = britton_reduce(&word.word, &p);
            Record::new("reduce", value(r.to_string(), r.to_string()))
                .input("m", big(&group.m))
                .input("n", big(&group.n))
                .input("word", word.word.to_string())
        }
        Command::Trivial { group, word } => {
            let p = BsParams::new(group.m.clone(), group.n.clone())?;
            let v = bs_limits_core::britton::is_trivial_bs(&word.word, &p);
            Record::new("trivial", Outcome::Verdict(v))
                .input("m", big(&group.m))
                .input("n", big(&group.n))
                .input("word", word.word.to_string())
        }
        Command::LimitTrivial { limit, word } | Command::Stab { limit, word } => {
            let g = limit_group(limit.m, &limit.xi, limit.prec)?;
            let w = &word.word;
            let stab = matches!(cli.command, Command::Stab { .. });
            let name = if stab { "stab" } else { "limit-trivial" };
            let mut rec = if w.sigma_a() != 0 {
                // never a b-power; no digits consulted
                let outcome = if stab {
                    value(Value::Null, "none")
                } else {
                    Outcome::Verdict(false)
                };
                let mut rec = Record::new(name, outcome);
                rec.precision_used = Some(0);
                rec
            } else {
                let (ctx, red) = g.reduce(w)?;
                let outcome = match (stab, red.as_b_power()) {
                    (false, _) => Outcome::Verdict(red.is_trivial()),
                    (true, Some(alpha)) => value(alpha.to_string(), format!("b^{alpha}")),
                    (true, None) => value(Value::Null, "none"),
                };
                let mut rec = Record::new(name, outcome);
                rec.precision_used = Some(ctx.level());
                rec.validity_bound = Some(red.verdict_bound(&ctx));
                rec
            };
            rec = rec.limit_inputs(limit).input("word", w.to_string());
            rec
        }
        Command::Lamp { word } => {
            let e = lamplighter_image(&word.word);
            let lamps: Value = lamp_vector(&e).iter().map(|(k, c)| json!([k, big(c)])).collect();
            Record::new(
                "lamp",
                value(json!({ "sigma": e.sigma, "lamps": lamps }), e.to_string()),
            )
            .input("word", word.word.to_string())
        }
        Command::Gamma { group, word } => {
            let p = BsParams::new(group.m.clone(), group.n.clone())?;
            let map = gamma_image(&word.word, &p);
            let trivial = is_trivial_gamma(&word.word, &p);
            let json = json!({
                "sigma": word.word.sigma_a(),
                "scale": map.scale().to_string(),
                "shift": map.shift().to_string(),
                "trivial": trivial,
            });
            Record::new("gamma", value(json, map.to_string()))
                .input("m", big(&group.m))
                .input("n", big(&group.n))
                .input("word", word.word.to_string())
        }
        Command::Distance {
            g1,
            g2,
            max_len,
            exp_bound,
            max_a_len,
            workers,
        } => {
            let (o1, o2) = (g1.oracle()?, g2.oracle()?);
            let workers = workers.unwrap_or(cfg.workers).max(1);
            let exp_bound = exp_bound.or(cfg.exp_bound);
            let (found, budget) = match exp_bound {
                Some(e) => {
                    let a = max_a_len.unwrap_or(cfg.max_a_len);
                    (
                        search::discriminating_word_bounded(&o1, &o2, a, e, workers)?,
                        json!({"max_a_len": a, "exp_bound": e}),
                    )
                }
                None => {
                    let l = max_len.unwrap_or(cfg.max_len);
                    (
                        search::discriminating_word(&o1, &o2, l, workers)?,
                        json!({"max_len": l}),
                    )
                }
            };
            let outcome = match found {
                Some(d) => {
                    let side = if d.trivial_in_first { "g1" } else { "g2" };
                    let text = format!("length = {}\nword = {}\ntrivial in = {side}", d.length, d.word);
                    let json = json!({"length": d.length, "word": d.word.to_string(), "trivial_in": side});
                    value(json, text)
                }
                None => value(Value::Null, "none within budget"),
            };
            Record::new("distance", outcome)
                .input("g1", o1.to_string())
                .input("g2", o2.to_string())
                .input("budget", budget)
        }
        Command::Classify { m, xi, eta, prec } => {
            let modulus = Modulus::new(*m)?;
            let x = MAdicResidue::new(&modulus, *prec, xi.clone())?;
            let y = MAdicResidue::new(&modulus, *prec, eta.clone())?;
            let c = classify_equal(&x, &y)?;
            let detail = match &c {
                Classification::EqualAtPrecision { d, precision } => json!({"d": d, "precision": precision}),
                Classification::DistinctGcd { d1, d2 } => json!({"d1": d1, "d2": d2}),
                Classification::DistinctResidue { d, level } => json!({"d": d, "level": level}),
            };
            let mut rec = Record::new(
                "classify",
                value(json!({"class": c.to_string(), "detail": detail}), c.to_string()),
            )
            .input("m", *m)
            .input("xi", big(xi))
            .input("eta", big(eta))
            .input("prec", *prec);
            rec.precision_used = Some(*prec);
            rec
        }
        Command::Converge { m, prec, seq } => {
            let v = check_convergence_integers(*m, seq, *prec)?;
            let (json, text) = match v {
                ConvergenceVerdict::ConsistentWithConvergence { d } => (
                    json!({"verdict": "ConsistentWithConvergence", "d": d}),
                    format!("ConsistentWithConvergence (d = {d})"),
                ),
                ConvergenceVerdict::DivergenceWitness(i, j) => (
                    json!({"verdict": "DivergenceWitness", "indices": [i, j]}),
                    format!("DivergenceWitness({i}, {j})"),
                ),
            };
            let seq: Vec<Value> = seq.iter().map(big).collect();
            Record::new("converge", value(json, text))
                .input("m", *m)
                .input("prec", *prec)
                .input("seq", seq)
        }
        Command::Tree { command } => tree(command)?,
        Command::Relator { command } => relator(command)?,
        Command::Witness { command } => witness(command)?,
        Command::RsTable { m, class, level } => {
            if *m == 0 {
                return Err(Error::ZeroModulus.into());
            }
            let t = RsTable::at(&BigInt::from(*m), class, *level);
            let list = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            let (r, s) = (&t.r()[1..], &t.s()[1..]);
            let text = format!("r = [{}]\ns = [{}]", list(r), list(s));
            let json = json!({
                "r": r.iter().map(big).collect::<Vec<_>>(),
                "s": s.iter().map(big).collect::<Vec<_>>(),
            });
            Record::new("rs-table", value(json, text))
                .input("m", *m)
                .input("class", big(class))
                .input("level", *level)
        }
    })
}

fn tree(command: &TreeCommand) -> Result<Record, CliError> {
    Ok(match command {
        TreeCommand::Path { limit, word } => {
            let t = LimitTree::new(limit_group(limit.m, &limit.xi, limit.prec)?);
            let path = t.path_of(&word.word);
            let json: Value = path
                .iter()
                .map(|v| json!({"height": v.height(), "rep": v.rep().to_string()}))
                .collect();
            let text = path
                .iter()
                .map(|v| format!("{}\t{}", v.height(), v.rep()))
                .collect::<Vec<_>>()
                .join("\n");
            Record::new("tree path", value(json, text))
                .limit_inputs(limit)
                .input("word", word.word.to_string())
        }
        TreeCommand::Out { limit, vertex } => {
            let t = LimitTree::new(limit_group(limit.m, &limit.xi, limit.prec)?);
            let (json, text) = edges_text(&t.neighbors_out(&VertexHandle::new(vertex.clone())));
            Record::new("tree out", value(json, text))
                .limit_inputs(limit)
                .input("vertex", vertex.to_string())
        }
        TreeCommand::In { limit, vertex, bound } => {
            let t = LimitTree::new(limit_group(limit.m, &limit.xi, limit.prec)?);
            let (json, text) = edges_text(&t.neighbors_in(&VertexHandle::new(vertex.clone()), *bound));
            Record::new("tree in", value(json, text))
                .limit_inputs(limit)
                .input("vertex", vertex.to_string())
                .input("bound", *bound)
        }
    })
}

fn relator(command: &RelatorCommand) -> Result<Record, CliError> {
    Ok(match command {
        RelatorCommand::Check { limit, word } => {
            let t = LimitTree::new(limit_group(limit.m, &limit.xi, limit.prec)?);
            let v = t.is_relator(&word.word)?;
            Record::new("relator check", Outcome::Verdict(v))
                .limit_inputs(limit)
                .input("word", word.word.to_string())
        }
        RelatorCommand::Enum {
            limit,
            k_max,
            exp_max,
            limit_count,
        } => {
            let t = LimitTree::new(limit_group(limit.m, &limit.xi, limit.prec)?);
            let words: Vec<Word> = t.enumerate_relators(*k_max, *exp_max)?.take(*limit_count).collect();
            let text = words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n");
            let mut rec = Record::new("relator enum", value(words_value(&words), text))
                .limit_inputs(limit)
                .input("k_max", *k_max)
                .input("exp_max", *exp_max)
                .input("limit_count", *limit_count);
            rec.precision_used = Some(*k_max as u32);
            rec
        }
    })
}

fn witness(command: &WitnessCommand) -> Result<Record, CliError> {
    Ok(match command {
        WitnessCommand::Neq { m1, d1, k1, m2, d2, k2 } => {
            let w = separating_witness(*m1, *d1, *k1, *m2, *d2, *k2)?;
            Record::new("witness neq", value(w.to_string(), w.to_string()))
                .input("m1", *m1)
                .input("d1", *d1)
                .input("k1", *k1)
                .input("m2", *m2)
                .input("d2", *d2)
                .input("k2", *k2)
        }
        WitnessCommand::Congruence { m, c, t } => {
            let w = make_congruence_witness(*m, c, *t)?;
            Record::new("witness congruence", value(w.to_string(), w.to_string()))
                .input("m", *m)
                .input("c", big(c))
                .input("t", *t)
        }
        WitnessCommand::Seq { limit, count } => {
            let xi = MAdicResidue::new(&Modulus::new(limit.m)?, limit.prec, limit.xi.clone())?;
            let seq = build_separating_sequence(&xi, *count)?;
            let text = seq.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            let mut rec = Record::new("witness seq", value(seq.iter().map(big).collect::<Vec<_>>(), text))
                .limit_inputs(limit)
                .input("count", *count);
            rec.precision_used = Some(limit.prec);
            rec
        }
    })
}

/// Parses `args`, runs the command and writes its result. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let cfg = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                let _ = writeln!(err, "error: config: {e}");
                return EXIT_USAGE;
            }
        },
        None => Config::default(),
    };
    let result = execute(&cli, &cfg).and_then(|rec| rec.write(out, cli.json).map_err(CliError::from));
    match result {
        Ok(()) => 0,
        Err(e) => {
            if cli.json {
                let _ = writeln!(err, "{}", json!({"error": e.message(), "exit_code": e.exit_code()}));
            } else {
                let _ = writeln!(err, "error: {}", e.message());
            }
            e.exit_code()
        }
    }
}
