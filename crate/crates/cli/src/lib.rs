//! The `clonoid` command line. [`run`] parses arguments, dispatches to
//! clonoid-core and returns what the process should print and its exit code,
//! so tests can drive it without spawning a process.

mod query;
mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use clonoid_core::{BooleanFunction, CloneId, Error, FunctionClass};
use serde_json::Value;

/// Exit code for a domain error or a malformed command line.
pub const EXIT_ERROR: u8 = 1;
/// Exit code for a verification suite that found a counterexample.
pub const EXIT_VIOLATION: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "clonoid", version, about = "Boolean clones, clonoids and the finite lemmas behind them")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel suites (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Largest arity any function may have.
    #[arg(long, global = true, value_name = "N")]
    arity_cap: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single Boolean functions.
    #[command(subcommand)]
    Bf(BfCmd),
    /// Clones of Post's lattice.
    #[command(subcommand, name = "clone")]
    CloneOps(CloneCmd),
    /// Function classes and clonoids.
    #[command(subcommand)]
    Clonoid(ClonoidCmd),
    /// Codimension geometry of subsets of GF(2)^n.
    #[command(subcommand)]
    Gf2(Gf2Cmd),
    /// Cardinality of the lattice of (source, target)-clonoids.
    Cardinality(PairArgs),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum BfCmd {
    /// Table, ANF, basic properties and clone memberships.
    Info {
        function: String,
        /// Instantiate the rank families up to this rank.
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
    },
    /// `f(g_1, ..., g_n)`.
    Compose {
        function: String,
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Dual, or one of the two negations.
    Dual {
        function: String,
        /// Negate the inputs only.
        #[arg(long, conflicts_with = "outer")]
        inner: bool,
        /// Negate the output only.
        #[arg(long)]
        outer: bool,
    },
    /// Algebraic normal form.
    Anf { function: String },
}

#[derive(Debug, Subcommand)]
enum CloneCmd {
    /// Clone names, with the rank families up to `--max-rank`.
    List {
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
    },
    /// Whether a function belongs to a clone.
    Member { clone: String, function: String },
    /// The n-ary part of a clone.
    Enumerate {
        clone: String,
        #[arg(long)]
        arity: u32,
    },
    /// Whether the first clone is contained in the second.
    Leq { lower: String, upper: String },
    /// The dual clone.
    Dual { clone: String },
    /// A finite generating set.
    Generators { clone: String },
    /// The clone generated by some functions, up to a cap.
    Closure {
        #[arg(required = true)]
        generators: Vec<String>,
        #[arg(long)]
        cap: u32,
    },
    /// Covering pairs of the encoded order.
    Edges {
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
    },
}

/// A class given inline, from a file, or both.
#[derive(Debug, Args)]
struct ClassArgs {
    /// Function literals such as `2:0x8`, or names such as `and`.
    functions: Vec<String>,
    /// Class file: one literal per line, `#` comments.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    cap: u32,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// The clone composed on the right.
    #[arg(long)]
    source: String,
    /// The clone composed on the left.
    #[arg(long)]
    target: String,
}

#[derive(Debug, Subcommand)]
enum ClonoidCmd {
    /// The (source, target)-clonoid generated by a class.
    Gen {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        class: ClassArgs,
        /// `exact`, or `enumerate:K` to compose with the target's members of
        /// arity at most K only.
        #[arg(long, default_value = "exact")]
        left: String,
    },
    /// Right and left stability of a class.
    Stable {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Every intersection of the given classes.
    MeetClosure {
        /// One class file per class.
        #[arg(long = "file", required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        cap: u32,
    },
    /// The composite class `outer inner`.
    Compose {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        cap: u32,
    },
    /// All minors of a class up to the cap.
    MinorClosure {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// A class defined by its values at the constant tuples, such as `eiio`.
    Predicate {
        name: String,
        #[arg(long)]
        cap: u32,
    },
}

#[derive(Debug, Subcommand)]
enum Gf2Cmd {
    /// Codimension of the support of a function.
    Codim { set: String },
    /// Intersectional codimension of the support of a function.
    Icodim { set: String },
    /// The linear subspaces of GF(2)^n.
    Subspaces {
        #[arg(long)]
        n: u32,
    },
    /// Membership in ICD_d.
    Icd {
        set: String,
        #[arg(long)]
        d: u32,
    },
    /// Whether the support is empty or an affine subspace.
    Aff { set: String },
    /// Preimage of the support under `x -> A x + b`.
    Preimage {
        set: String,
        /// Images of the unit vectors, as bit strings.
        #[arg(long, value_delimiter = ',', required = true)]
        columns: Vec<String>,
        /// `b`, as a bit string.
        #[arg(long)]
        offset: String,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// `u + v + 1` is a false point of beta_n for distinct true points.
    Uvw1 {
        #[arg(long)]
        n: u32,
    },
    /// The trichotomy for families of small sets; sampled when `--samples` is set.
    Si2 {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 7)]
        m_max: u32,
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sum identities and the claims for affine maps between beta_m and beta_n.
    MeqnClaims {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Random search for an affine map putting beta_m below beta_n.
    ProbeMeqn {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Membership fingerprints of the beta_m over subsets of N.
    Separation {
        #[arg(long, value_delimiter = ',', default_value = "7,9")]
        ns: Vec<u32>,
        /// Random probes per ordered pair.
        #[arg(long, default_value_t = 0)]
        budget: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Property suites for class composition.
    Meta {
        /// associativity, clonmon, knid or gen-formula.
        suite: String,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 2)]
        cap: u32,
        #[arg(long)]
        seed: u64,
    },
    /// The encoded order against the membership predicates.
    Coherence {
        #[arg(long, default_value_t = 6)]
        max_rank: u32,
        /// Random candidates per arity above 4.
        #[arg(long, default_value_t = 3000)]
        pool: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// What the process prints, and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// The answer to one command, in both renderings.
pub(crate) struct Reply {
    text: String,
    json: Value,
    violated: bool,
}

impl Reply {
    pub(crate) fn new(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json, violated: false }
    }
}

pub(crate) fn function(s: &str) -> Result<BooleanFunction, Error> {
    if s.contains(':') {
        s.parse()
    } else {
        BooleanFunction::named(s)
    }
}

pub(crate) fn clone_id(s: &str) -> Result<CloneId, Error> {
    s.parse()
}

pub(crate) fn read_class(path: &PathBuf, cap: u32) -> Result<FunctionClass, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    FunctionClass::parse(&text, cap)
}

pub(crate) fn bool_word(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(command: Command) -> Result<Reply, Error> {
    match command {
        Command::Bf(cmd) => query::bf(cmd),
        Command::CloneOps(cmd) => query::clone(cmd),
        Command::Clonoid(cmd) => query::clonoid(cmd),
        Command::Gf2(cmd) => query::gf2(cmd),
        Command::Cardinality(pair) => query::cardinality(&pair),
        Command::Verify(cmd) => suites::verify(cmd),
    }
}

/// Run one command line. `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_ERROR, stdout: String::new(), stderr: rendered }
            } else {
                // --help and --version
                Output { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let fail = |e: Error| Output { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") };
    if let Some(cap) = cli.arity_cap {
        if let Err(e) = clonoid_core::set_arity_cap(cap) {
            return fail(e);
        }
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return fail(Error::InvalidParameter("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return fail(Error::InvalidParameter(format!("cannot start worker threads: {e}"))),
    };
    let json = cli.json;
    match pool.install(|| dispatch(cli.command)) {
        Ok(reply) => emit(reply, json),
        Err(e) => fail(e),
    }
}

fn emit(reply: Reply, json: bool) -> Output {
    let mut stdout = if json {
        serde_json::to_string_pretty(&reply.json).expect("replies serialize")
    } else {
        reply.text
    };
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    let code = if reply.violated { EXIT_VIOLATION } else { 0 };
    Output { code, stdout, stderr: String::new() }
}

/// Verb paths and the library operations each one reaches.
pub const VERBS: &[(&str, &[&str])] = &[
    ("bf info", &["BooleanFunction::from_str", "anf", "degree", "member", "CloneId::instantiated"]),
    ("bf compose", &["BooleanFunction::compose"]),
    ("bf dual", &["BooleanFunction::dual", "BooleanFunction::inner_negation", "BooleanFunction::outer_negation"]),
    ("bf anf", &["Anf::of"]),
    ("clone list", &["CloneId::instantiated"]),
    ("clone member", &["member"]),
    ("clone enumerate", &["enumerate"]),
    ("clone leq", &["leq"]),
    ("clone dual", &["dual_clone"]),
    ("clone generators", &["generators"]),
    ("clone closure", &["clone_closure"]),
    ("clone edges", &["covering_edges"]),
    ("clonoid gen", &["gen_clonoid", "FunctionClass::parse"]),
    ("clonoid stable", &["right_stable", "left_stable", "is_clonoid"]),
    ("clonoid meet-closure", &["meet_closure"]),
    ("clonoid compose", &["class_compose"]),
    ("clonoid minor-closure", &["minor_closure"]),
    ("clonoid predicate", &["predicate_class"]),
    ("gf2 codim", &["codim_set", "support"]),
    ("gf2 icodim", &["icodim_set"]),
    ("gf2 subspaces", &["subspaces"]),
    ("gf2 icd", &["in_icd"]),
    ("gf2 aff", &["in_aff"]),
    ("gf2 preimage", &["AffineMap::from_columns", "preimage"]),
    ("cardinality", &["classify_cardinality", "table_cell"]),
    ("verify uvw1", &["verify_uvw1"]),
    ("verify si2", &["verify_si2"]),
    ("verify meqn-claims", &["verify_meqn_claims"]),
    ("verify probe-meqn", &["probe_meqn"]),
    ("verify separation", &["separation_experiment", "minorant_witness"]),
    ("verify meta", &["verify_meta"]),
    ("verify coherence", &["verify_coherence"]),
];
