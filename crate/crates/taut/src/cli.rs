//! The `tt` command line: one-off computations and verification suites with
//! JSON output.
//!
//! Every output line is a JSON object carrying `"schema":"tt/1"`. Suites
//! stream one line per item in item order, followed by a summary line.
//! Exit codes: 0 pass, 1 a check failed, 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::arith::{a_g, rat_str};
use crate::error::{Error, Result};
use crate::hain::{self, Multiplicities};
use crate::intersect::{self, TopProfile};
use crate::vz::Kind;
use crate::{dr, lemmas, socle, vz};

pub const SCHEMA: &str = "tt/1";

#[derive(Parser, Debug)]
#[command(name = "tt", version, about = "Exact checks for the top tautological group of M_{g,n}")]
pub struct Cli {
    /// Seed for randomized instance generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for suite items.
    #[arg(long, global = true)]
    pub max_threads: Option<usize>,
    /// TOML file with default values for any flag (flags win).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON output (the only format; accepted for compatibility).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    V,
    Z,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Faber's coefficient for exponents l.
    Faber {
        #[arg(long)]
        g: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        l: Vec<i64>,
    },
    /// Generalized top coefficients of a profile.
    Gentop {
        #[arg(long)]
        g: i64,
        #[arg(long, value_delimiter = ',')]
        d: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<i64>,
    },
    /// The intersection number A_g.
    Ag {
        #[arg(long)]
        g: i64,
    },
    /// Hain's class on the rational-tails space.
    Hain {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Keep the multiplicities as variables.
        #[arg(long)]
        symbolic: bool,
    },
    /// psi_1 times a DR symbol.
    DrPsi {
        #[arg(long)]
        g: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        m: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<i64>,
    },
    /// Expansion of a V or Z symbol into DR symbols.
    VzExpand {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        g: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Vec<i64>,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// A_g from the Bernoulli recurrence for 2 <= g <= max-g.
    Ag {
        /// Largest genus [default: 30].
        #[arg(long)]
        max_g: Option<i64>,
    },
    /// String recursion of Faber's coefficients.
    FaberRecursion {
        /// Largest genus [default: 8].
        #[arg(long)]
        max_g: Option<i64>,
        /// Longest exponent list [default: 6].
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Pairing consistency and the determinant of M.
    Pairing {
        /// Largest genus [default: 8].
        #[arg(long)]
        max_g: Option<i64>,
        /// Most marked points [default: 5].
        #[arg(long)]
        max_n: Option<usize>,
        /// Longest kappa multi-index [default: 4].
        #[arg(long)]
        max_m: Option<usize>,
    },
    /// Homogeneity and restriction identities of Hain's formula.
    Hain {
        /// Largest genus for homogeneity [default: 4].
        #[arg(long)]
        max_g: Option<u32>,
        /// Most points for homogeneity [default: 5].
        #[arg(long)]
        max_n: Option<usize>,
        /// Most points for the restriction identity [default: 6].
        #[arg(long)]
        max_restriction_n: Option<usize>,
    },
    /// Vanishing of the psi_1 rule at top degree.
    Intpsi {
        /// Largest genus [default: 4].
        #[arg(long)]
        max_g: Option<u32>,
        /// Number of random instances [default: 500].
        #[arg(long)]
        trials: Option<usize>,
    },
    Lemma51 {
        /// Largest parameter [default: 40].
        #[arg(long)]
        max_p: Option<i64>,
    },
    Lemma52 {
        /// Truncation bound [default: 10].
        #[arg(long)]
        bound: Option<i64>,
    },
    Lemma53 {
        /// Largest degree [default: 25].
        #[arg(long)]
        max_d: Option<i64>,
    },
    /// Main relation against the basic relation.
    Derivation {
        /// Genus [default: 2].
        #[arg(long)]
        g: Option<u32>,
        /// Number of points [default: 1].
        #[arg(long)]
        n: Option<usize>,
        /// Number of random instances [default: 50].
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Determinant of the rescaled change-of-basis matrix.
    Gmatrix {
        /// Largest genus [default: 5].
        #[arg(long)]
        max_g: Option<u32>,
        /// Largest n [default: 5].
        #[arg(long)]
        max_n: Option<usize>,
        /// Number of random instances [default: 100].
        #[arg(long)]
        trials: Option<usize>,
    },
    SocleFirst {
        /// Genus [default: 2].
        #[arg(long)]
        g: Option<u32>,
        /// Number of points [default: 1].
        #[arg(long)]
        n: Option<usize>,
        /// Largest d [default: 6].
        #[arg(long)]
        dmax: Option<i64>,
    },
    SocleN1 {
        /// Genus [default: 2].
        #[arg(long)]
        g: Option<u32>,
        /// Truncation bound [default: 10].
        #[arg(long)]
        bound: Option<i64>,
        /// Drop the polynomial shape constraints.
        #[arg(long)]
        no_shape: bool,
    },
    SocleN2 {
        /// Genus [default: 2].
        #[arg(long)]
        g: Option<u32>,
        /// Truncation bound [default: 8].
        #[arg(long)]
        bound: Option<i64>,
    },
    SocleNk {
        /// Genus [default: 2].
        #[arg(long)]
        g: Option<u32>,
        /// Number of points [default: 3].
        #[arg(long)]
        n: Option<usize>,
        /// Truncation bound [default: 8].
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Three-row reduction of symmetrized symbols.
    Symmetry {
        /// Genus [default: 2].
        #[arg(long)]
        g: Option<u32>,
        /// Number of points [default: 2].
        #[arg(long)]
        n: Option<usize>,
        /// Number of random samples [default: 50].
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Flag defaults read from the config file. Keys are flag names, with
/// either dashes or underscores.
struct Config(toml::Table);

impl Config {
    fn load(path: Option<&PathBuf>) -> Result<Self> {
        let Some(p) = path else {
            return Ok(Config(toml::Table::new()));
        };
        let text = std::fs::read_to_string(p).map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))?;
        let table =
            text.parse::<toml::Table>().map_err(|e| Error::Usage(format!("bad config {}: {e}", p.display())))?;
        Ok(Config(table))
    }

    /// Flag value, else config value, else default.
    fn get<T: DeserializeOwned>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        let alt = key.replace('-', "_");
        match self.0.get(key).or_else(|| self.0.get(&alt)) {
            Some(v) => v.clone().try_into().map_err(|e| Error::Usage(format!("config key {key}: {e}"))),
            None => Ok(default),
        }
    }
}

/// Line-oriented JSON sink.
struct Out {
    w: Box<dyn Write + Send>,
}

impl Out {
    fn line(&mut self, mut v: Value) -> Result<()> {
        if let Value::Object(m) = &mut v {
            let mut o = Map::new();
            o.insert("schema".into(), json!(SCHEMA));
            o.append(m);
            v = Value::Object(o);
        }
        writeln!(self.w, "{v}").and_then(|_| self.w.flush()).map_err(|e| match e.kind() {
            std::io::ErrorKind::BrokenPipe => Error::Closed,
            _ => Error::Usage(format!("write failed: {e}")),
        })
    }
}

/// Evaluates items in parallel chunks and writes one line per item in item
/// order. Returns whether every item passed.
fn stream<T: Sync>(
    out: &mut Out,
    suite: &str,
    items: &[T],
    f: impl Fn(&T) -> Result<(Value, bool)> + Sync,
) -> Result<bool> {
    let chunk = rayon::current_num_threads().max(1) * 4;
    let mut all = true;
    for (c, part) in items.chunks(chunk).enumerate() {
        let results: Vec<Result<(Value, bool)>> = part.par_iter().map(&f).collect();
        for (i, r) in results.into_iter().enumerate() {
            let (item, pass) = r?;
            all &= pass;
            out.line(json!({"suite": suite, "index": c * chunk + i, "item": item, "pass": pass}))?;
        }
    }
    out.line(json!({"suite": suite, "items": items.len(), "pass": all}))?;
    Ok(all)
}

fn nonzero(rng: &mut ChaCha8Rng, m: i64) -> i64 {
    let x = rng.gen_range(1..=m);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

/// Instances `(b, b4, a)` for the derivation check, every fourth one forced
/// onto a vanishing V term and every fourth onto a vanishing Z term.
pub fn derivation_instances(n: usize, trials: usize, seed: u64) -> Vec<([i64; 3], i64, Vec<i64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let mut b = [nonzero(&mut rng, 5), nonzero(&mut rng, 5), nonzero(&mut rng, 5)];
        let a: Vec<i64> = (0..n - 1).map(|_| nonzero(&mut rng, 5)).collect();
        match out.len() % 4 {
            1 => b[1] = -b[0],
            2 => b[1] = -(b[0] + a.iter().sum::<i64>()),
            _ => {}
        }
        let b4 = -(b.iter().sum::<i64>() + a.iter().sum::<i64>());
        if b[1] == 0 || b4 == 0 {
            continue;
        }
        out.push((b, b4, a));
    }
    out
}

/// Instances `(g, a, b)` with `k = g + 1` for the top-degree psi_1 check.
pub fn intpsi_instances(max_g: u32, trials: usize, seed: u64) -> Vec<(u32, Vec<i64>, Vec<i64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let g = rng.gen_range(2..=max_g);
        let n = rng.gen_range(1..=3);
        let b: Vec<i64> = (0..=g).map(|_| nonzero(&mut rng, 6)).collect();
        let mut a: Vec<i64> = (0..n - 1).map(|_| nonzero(&mut rng, 6)).collect();
        let last = -(b.iter().sum::<i64>() + a.iter().sum::<i64>());
        if last == 0 {
            continue;
        }
        a.push(last);
        a.shuffle(&mut rng);
        out.push((g, a, b));
    }
    out
}

/// Exponent lists with sum `g - 2`, length at most `max_len`, and at most
/// one entry equal to -1.
pub fn faber_profiles(g: i64, max_len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        out.extend(intersect::compositions(g - 2, len));
        for pos in 0..len {
            for mut rest in intersect::compositions(g - 1, len - 1) {
                rest.insert(pos, -1);
                out.push(rest);
            }
        }
    }
    out
}

fn cert_line(c: &socle::Certificate) -> Result<(Value, bool)> {
    Ok((serde_json::to_value(c).map_err(|e| Error::Usage(e.to_string()))?, c.pass))
}

fn run_suite(suite: &Suite, cfg: &Config, seed: u64, out: &mut Out) -> Result<bool> {
    match suite {
        Suite::Ag { max_g } => {
            let gs: Vec<i64> = (2..=cfg.get(*max_g, "max-g", 30)?).collect();
            stream(out, "ag", &gs, |&g| {
                let v = a_g(g)?;
                let ok = !num_traits::Zero::is_zero(&v) && (g != 2 || v == crate::arith::rat(1, 2880));
                Ok((json!({"g": g, "A_g": rat_str(&v)}), ok))
            })
        }
        Suite::FaberRecursion { max_g, max_len } => {
            let (mg, ml) = (cfg.get(*max_g, "max-g", 8)?, cfg.get(*max_len, "max-len", 6)?);
            let items: Vec<(i64, Vec<i64>)> =
                (2..=mg).flat_map(|g| faber_profiles(g, ml).into_iter().map(move |l| (g, l))).collect();
            stream(out, "faber-recursion", &items, |(g, l)| {
                let ok = intersect::faber_string_recursion_holds(*g, l)?;
                Ok((json!({"g": g, "l": l, "coeff": rat_str(&intersect::faber_coeff(*g, l)?)}), ok))
            })
        }
        Suite::Pairing { max_g, max_n, max_m } => {
            let mg = cfg.get(*max_g, "max-g", 8)?;
            let mn = cfg.get(*max_n, "max-n", 5)?;
            let mm = cfg.get(*max_m, "max-m", 4)?;
            let mut items = Vec::new();
            for g in 2..=mg {
                for n in 1..=mn {
                    items.push((g, n, None));
                    for m in 0..=mm {
                        for p in intersect::all_profiles(g, n, m) {
                            items.push((g, n, Some(p)));
                        }
                    }
                }
            }
            stream(out, "pairing", &items, |(g, n, p): &(i64, usize, Option<TopProfile>)| match p {
                None => {
                    let m = intersect::matrix_m(*g, *n)?;
                    let ok = intersect::determinant_formula_holds(&m);
                    Ok((json!({"g": g, "n": n, "det": rat_str(&m.determinant)}), ok))
                }
                Some(p) => Ok((json!({"g": g, "d": p.d, "k": p.k}), intersect::verify_pairing_consistency(p)?)),
            })
        }
        Suite::Hain { max_g, max_n, max_restriction_n } => {
            let mg = cfg.get(*max_g, "max-g", 4)?;
            let mn = cfg.get(*max_n, "max-n", 5)?;
            let mr = cfg.get(*max_restriction_n, "max-restriction-n", 6)?;
            let mut items: Vec<(&str, u32, usize)> = Vec::new();
            for g in 1..=mg {
                for n in 2..=mn {
                    items.push(("homogeneity", g, n));
                }
            }
            for n in 3..=mr {
                items.push(("restriction", 0, n));
            }
            stream(out, "hain", &items, |&(kind, g, n)| {
                let ok = if kind == "homogeneity" {
                    hain::homogeneity_holds(&hain::hain_class(g, n, &Multiplicities::Symbolic)?)
                } else {
                    hain::restriction_identity(n)?
                };
                Ok((json!({"check": kind, "g": g, "n": n}), ok))
            })
        }
        Suite::Intpsi { max_g, trials } => {
            let items = intpsi_instances(cfg.get(*max_g, "max-g", 4)?, cfg.get(*trials, "trials", 500)?, seed);
            stream(out, "intpsi", &items, |(g, a, b)| {
                Ok((json!({"g": g, "a": a, "b": b}), dr::intpsi_top_vanishing(*g, a, b)?))
            })
        }
        Suite::Lemma51 { max_p } => {
            let ps: Vec<i64> = (3..=cfg.get(*max_p, "max-p", 40)?).collect();
            stream(out, "lemma51", &ps, |&p| {
                let r = lemmas::lemma51_check(p);
                Ok((serde_json::to_value(&r).expect("serializable"), r.matches))
            })
        }
        Suite::Lemma52 { bound } => {
            let b = cfg.get(*bound, "bound", 10)?;
            if b < 3 {
                return Err(Error::Domain("lemma52 needs bound >= 3".into()));
            }
            stream(out, "lemma52", &[b], |&b| {
                let r = lemmas::lemma52_check(b, seed);
                Ok((serde_json::to_value(&r).expect("serializable"), r.matches))
            })
        }
        Suite::Lemma53 { max_d } => {
            let ds: Vec<i64> = (3..=cfg.get(*max_d, "max-d", 25)?).collect();
            stream(out, "lemma53", &ds, |&d| {
                let r = lemmas::lemma53_check(d);
                Ok((serde_json::to_value(&r).expect("serializable"), r.matches))
            })
        }
        Suite::Derivation { g, n, trials } => {
            let g = cfg.get(*g, "g", 2)?;
            let n = cfg.get(*n, "n", 1)?;
            if n < 1 {
                return Err(Error::Domain("derivation needs n >= 1".into()));
            }
            let items = derivation_instances(n, cfg.get(*trials, "trials", 50)?, seed);
            stream(out, "derivation", &items, |(b, b4, a)| {
                let st = vz::derivation_check(g, b, *b4, a)?;
                Ok((json!({"g": g, "b": b, "b4": b4, "a": a, "status": st}), st.holds()))
            })
        }
        Suite::Gmatrix { max_g, max_n, trials } => {
            let mg = cfg.get(*max_g, "max-g", 5)?;
            let mn = cfg.get(*max_n, "max-n", 5)?;
            let trials = cfg.get(*trials, "trials", 100)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut items = Vec::new();
            while items.len() < trials {
                let g = rng.gen_range(2..=mg);
                let n = rng.gen_range(1..=mn);
                let f: Vec<i64> = (0..=n).map(|_| nonzero(&mut rng, 7)).collect();
                if f.iter().sum::<i64>() != 0 {
                    items.push((g, f));
                }
            }
            stream(out, "gmatrix", &items, |(g, f)| {
                let m = vz::g_matrices(*g, f)?;
                let ok = m.det_g_tilde == m.predicted_det && m.factorization_holds;
                Ok((json!({"g": g, "f": f, "det": rat_str(&m.det_g_tilde)}), ok))
            })
        }
        Suite::SocleFirst { g, n, dmax } => {
            let item = (cfg.get(*g, "g", 2)?, cfg.get(*n, "n", 1)?, cfg.get(*dmax, "dmax", 6)?);
            stream(out, "socle-first", &[item], |&(g, n, d)| cert_line(&socle::first_step_certificate(g, n, d)?))
        }
        Suite::SocleN1 { g, bound, no_shape } => {
            let item = (cfg.get(*g, "g", 2)?, cfg.get(*bound, "bound", 10)?);
            stream(out, "socle-n1", &[item], |&(g, b)| cert_line(&socle::n1_certificate(g, b, !no_shape)?))
        }
        Suite::SocleN2 { g, bound } => {
            let item = (cfg.get(*g, "g", 2)?, cfg.get(*bound, "bound", 8)?);
            stream(out, "socle-n2", &[item], |&(g, b)| cert_line(&socle::n2_certificate(g, b)?))
        }
        Suite::SocleNk { g, n, bound } => {
            let item = (cfg.get(*g, "g", 2)?, cfg.get(*n, "n", 3)?, cfg.get(*bound, "bound", 8)?);
            stream(out, "socle-nk", &[item], |&(g, n, b)| cert_line(&socle::n3_certificate(g, n, b)?))
        }
        Suite::Symmetry { g, n, samples } => {
            let g = cfg.get(*g, "g", 2)?;
            let n = cfg.get(*n, "n", 2)?;
            let samples = cfg.get(*samples, "samples", 50)?;
            let results = socle::symmetry_reduction_check(g, n, samples, seed)?;
            stream(out, "symmetry", &results, |(a, b, ok)| Ok((json!({"g": g, "a": a, "b": b}), *ok)))
        }
    }
}

fn run_cmd(cli: &Cli, out: &mut Out) -> Result<bool> {
    let cfg = Config::load(cli.config.as_ref())?;
    let seed = cfg.get(cli.seed, "seed", 0)?;
    match &cli.cmd {
        Cmd::Faber { g, l } => {
            out.line(json!({"coeff": rat_str(&intersect::faber_coeff(*g, l)?)}))?;
        }
        Cmd::Gentop { g, d, k } => {
            let p = TopProfile::new(*g, d.clone(), k.clone())?;
            let c: Vec<String> = intersect::gen_top_coeffs(&p)?.iter().map(rat_str).collect();
            out.line(json!({"coeffs": c}))?;
        }
        Cmd::Ag { g } => out.line(json!({"A_g": rat_str(&a_g(*g)?)}))?,
        Cmd::Hain { g, n, a, symbolic } => {
            let m = if *symbolic { Multiplicities::Symbolic } else { Multiplicities::Numeric(a.clone()) };
            let c = hain::hain_class(*g, *n, &m)?;
            out.line(json!({"g": g, "n": n, "poly": c.poly.to_json()}))?;
        }
        Cmd::DrPsi { g, m, t } => {
            let (v, audit) = dr::psi1_mul_raw_audit(*g, m, t)?;
            out.line(json!({"vector": dr::vector_json(&v), "dropped_zero_forgotten": audit.zero_forgotten.len()}))?;
        }
        Cmd::VzExpand { kind, g, f } => {
            let k = match kind {
                KindArg::V => Kind::V,
                KindArg::Z => Kind::Z,
            };
            out.line(json!({"vector": dr::vector_json(&vz::expand_raw(k, *g, f)?)}))?;
        }
        Cmd::Verify { suite } => {
            let threads = cfg.get(cli.max_threads, "max-threads", 0)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
            return pool.install(|| run_suite(suite, &cfg, seed, out));
        }
    }
    Ok(true)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(std::io::stdout(), "{e}");
                return 0;
            }
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("usage error"));
            return 2;
        }
    };
    let sink: Box<dyn Write + Send> = match &cli.output {
        Some(p) => match std::fs::File::create(p) {
            Ok(f) => Box::new(std::io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", p.display());
                return 2;
            }
        },
        None => Box::new(std::io::stdout()),
    };
    let mut out = Out { w: sink };
    match run_cmd(&cli, &mut out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::Closed) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
