//! `lg36`: sampling, evaluation, interpolation, chain runs and the
//! verification report, over `𝔽_p` or `Q`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lg36_core::cubics::TwistedCubic;
use lg36_core::dual_quartic::QuarticForm;
use lg36_core::error::Error;
use lg36_core::fibration::{section_through, SectionTower};
use lg36_core::field::{Field, FieldKind, Fp, PrimeField, Rationals, Q};
use lg36_core::group::{parse_word, FormalClass, MarkedFano, RETRY_BUDGET};
use lg36_core::io::{decode, encode, kind_tag, vec_to_raw, Codec};
use lg36_core::linalg::Matrix;
use lg36_core::proj::{ProjPoint, ProjSubspace};
use lg36_core::rng::{rng_from_seed, ChaCha8Rng};
use lg36_core::strata::StratumLabel;
use lg36_core::suites::{run_suite, SessionConfig, SuiteField, Trials, DEFAULT_PRIME, DEFAULT_SEED};
use lg36_core::symplectic::{Geometry, SigmaPoint};

#[derive(Parser)]
#[command(name = "lg36", version, about = "Exact constructive geometry of LG(3,6)")]
struct Cli {
    /// Characteristic of the prime field.
    #[arg(long, global = true, env = "LG36_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Work over F_p (default) or over the rationals.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Fp)]
    field: FieldArg,
    /// Master seed of the session.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Fp,
    Q,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a point of P(W) in a given stratum.
    Sample {
        #[arg(long, value_enum)]
        kind: SampleKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a point of P(W).
    Stratum {
        #[arg(long = "in")]
        input: PathBuf,
    },
    #[command(subcommand)]
    Cubic(CubicCmd),
    #[command(subcommand)]
    Fibration(FibrationCmd),
    #[command(subcommand, name = "dual-quartic")]
    DualQuartic(QuarticCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    /// Run the property suites and print the report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Sigma,
    Omega,
    Generic,
}

#[derive(Subcommand)]
enum CubicCmd {
    /// The twisted cubic through three points of Σ.
    Through {
        #[arg(long, num_args = 3, required = true)]
        points: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A random cubic; optionally also the triple it was built from.
    Sample {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        triple: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FibrationCmd {
    /// A random P⁹ through a triple.
    Section {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The value h ∈ P³ of a triple on the section.
    Eval {
        #[arg(long)]
        section: PathBuf,
        #[arg(long)]
        triple: PathBuf,
    },
    /// Whether two triples on the section have the same value.
    SameFiber {
        #[arg(long)]
        section: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The triple cut on a cubic by the section.
    Intersect {
        #[arg(long)]
        section: PathBuf,
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QuarticCmd {
    /// Interpolate the dual quartic from random tangent hyperplanes.
    Interpolate {
        #[arg(long, default_value_t = 2600)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pull the quartic back to the span of the rows of a subspace or matrix.
    Restrict {
        #[arg(long)]
        quartic: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// A marked Fano threefold with a base cubic.
    Setup {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a chain word to the base cubic.
    Chain {
        #[arg(long)]
        setup: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the group suite on a number of setups.
    Verify {
        #[arg(long, default_value_t = 50)]
        setups: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Also write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Override a trial count, as `name=value`.
    #[arg(long = "trial", value_name = "NAME=VALUE")]
    trials: Vec<String>,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            let code = e.downcast_ref::<Error>().map(exit_code_of).unwrap_or(2);
            match e.downcast_ref::<Error>() {
                Some(err) => eprintln!("error: {}: {e:#}", err.code()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::SchemaMismatch(_) | Error::FieldMismatch(_) => 2,
        _ => 1,
    }
}

fn field_kind(cli: &Cli) -> FieldKind {
    match cli.field {
        FieldArg::Fp => FieldKind::Fp(cli.prime),
        FieldArg::Q => FieldKind::Q,
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    let kind = field_kind(cli);
    let mut config = SessionConfig { field: kind, seed: cli.seed, trials: Trials::default() };
    config.validate()?;
    match &cli.command {
        Command::Verify(args) => {
            for t in &args.trials {
                let (k, v) = t.split_once('=').ok_or_else(|| Error::Config(format!("trial {t:?} is not name=value")))?;
                let v = v.parse().map_err(|_| Error::Config(format!("trial count {v:?} is not a number")))?;
                config.trials.set(k, v)?;
            }
            verify(&config, &args.suite, args.json.as_deref())
        }
        Command::Group(GroupCmd::Verify { setups, json }) => {
            config.trials.setups = *setups;
            verify(&config, "group", json.as_deref())
        }
        _ => match kind {
            FieldKind::Fp(p) => Session { geo: Geometry::<Fp>::new(&PrimeField::new(p)?), rng: rng_from_seed(cli.seed) }.run(&cli.command),
            FieldKind::Q => Session { geo: Geometry::<Q>::new(&Rationals), rng: rng_from_seed(cli.seed) }.run(&cli.command),
        },
    }
}

fn verify(config: &SessionConfig, suite: &str, json: Option<&Path>) -> anyhow::Result<Outcome> {
    let report = run_suite(config, suite)?;
    print!("{}", report.render_text());
    if let Some(path) = json {
        fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.passed { Outcome::Ok } else { Outcome::Failed })
}

struct Session<F: Field> {
    geo: Geometry<F>,
    rng: ChaCha8Rng,
}

impl<F: SuiteField> Session<F> {
    fn read<T: Codec<F>>(&self, path: &Path) -> anyhow::Result<T> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(decode(&self.geo, &text).with_context(|| format!("decoding {}", path.display()))?)
    }

    fn emit<T: Codec<F>>(&self, value: &T, out: Option<&Path>) -> anyhow::Result<()> {
        let text = encode(&self.geo, value);
        match out {
            Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
            None => println!("{text}"),
        }
        Ok(())
    }

    /// A point of P(W), given either as a bare point or a point of Σ.
    fn read_w(&self, path: &Path) -> anyhow::Result<Vec<F>> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        if kind_tag(&text)? == <SigmaPoint<F> as Codec<F>>::KIND {
            let p: SigmaPoint<F> = decode(&self.geo, &text)?;
            return Ok(p.w().to_vec());
        }
        let p: ProjPoint<F> = decode(&self.geo, &text)?;
        Ok(p.into_coords())
    }

    fn run(mut self, cmd: &Command) -> anyhow::Result<Outcome> {
        match cmd {
            Command::Sample { kind, out } => {
                let geo = &self.geo;
                match kind {
                    SampleKind::Sigma => {
                        let p = geo.sample_sigma(&mut self.rng);
                        self.emit(&p, out.as_deref())?;
                    }
                    SampleKind::Omega | SampleKind::Generic => {
                        let w = match kind {
                            SampleKind::Omega => geo.sample_omega(&mut self.rng),
                            _ => geo.sample_generic(&mut self.rng),
                        };
                        let p = ProjPoint::new(w).ok_or_else(|| anyhow!("sampled the zero vector"))?;
                        self.emit(&p, out.as_deref())?;
                    }
                }
            }
            Command::Stratum { input } => {
                let w = self.read_w(input)?;
                let label = self.geo.stratum(&w);
                let mut v = json!({ "stratum": label.name() });
                match &label {
                    StratumLabel::Sigma(p) => v["plucker"] = json!(vec_to_raw(p.plucker.coords())),
                    StratumLabel::Omega { x_omega } => v["x_omega"] = json!(vec_to_raw(x_omega.coords())),
                    StratumLabel::FSmoothLocus { tangency } => v["tangency"] = json!(vec_to_raw(tangency.plucker.coords())),
                    StratumLabel::Generic { lambda } => v["lambda"] = json!(lambda.to_string()),
                }
                println!("{v}");
            }
            Command::Cubic(CubicCmd::Through { points, out }) => {
                let p: Vec<SigmaPoint<F>> = points.iter().map(|f| self.read(f)).collect::<anyhow::Result<_>>()?;
                let c = self.geo.cubic_through_triple(&p[0], &p[1], &p[2])?;
                self.emit(&c, out.as_deref())?;
            }
            Command::Cubic(CubicCmd::Sample { out, triple }) => {
                let (c, xi) = self.geo.sample_cubic(&mut self.rng);
                self.emit(&c, out.as_deref())?;
                if let Some(path) = triple {
                    self.emit(&xi, Some(path))?;
                }
            }
            Command::Fibration(FibrationCmd::Section { triple, out }) => {
                let xi: [SigmaPoint<F>; 3] = self.read(triple)?;
                let s = section_through(&self.geo, &xi, 9, &mut self.rng)?;
                self.emit(&s, out.as_deref())?;
            }
            Command::Fibration(FibrationCmd::Eval { section, triple }) => {
                let s: SectionTower<F> = self.read(section)?;
                let xi: [SigmaPoint<F>; 3] = self.read(triple)?;
                let h = self.geo.fibration_value(&xi, &s, &mut self.rng)?;
                println!("{}", json!({ "h": vec_to_raw(&normalized(&h)) }));
            }
            Command::Fibration(FibrationCmd::SameFiber { section, a, b }) => {
                let s: SectionTower<F> = self.read(section)?;
                let a: [SigmaPoint<F>; 3] = self.read(a)?;
                let b: [SigmaPoint<F>; 3] = self.read(b)?;
                let same = self.geo.same_fiber(&a, &b, &s, &mut self.rng)?;
                println!("{}", json!({ "same_fiber": same }));
            }
            Command::Fibration(FibrationCmd::Intersect { section, cubic, out }) => {
                let s: SectionTower<F> = self.read(section)?;
                let c: TwistedCubic<F> = self.read(cubic)?;
                let xi = self.geo.intersect_with_section(&c, &s)?;
                self.emit(&xi, out.as_deref())?;
            }
            Command::DualQuartic(QuarticCmd::Interpolate { samples, out }) => {
                let hs = (0..*samples)
                    .map(|_| self.geo.sample_tangent_hyperplane(None, &mut self.rng))
                    .collect::<Result<Vec<_>, _>>()?;
                let (q, rank) = F::interpolate(&hs)
                    .ok_or_else(|| Error::Config("interpolation needs a prime field".into()))??;
                eprintln!("interpolation rank {rank}, fingerprint {}", q.fingerprint());
                self.emit(&q, out.as_deref())?;
            }
            Command::DualQuartic(QuarticCmd::Restrict { quartic, subspace, out }) => {
                let q: QuarticForm<F> = self.read(quartic)?;
                let text = fs::read_to_string(subspace).with_context(|| format!("reading {}", subspace.display()))?;
                let rows: Matrix<F> = if kind_tag(&text)? == <Matrix<F> as Codec<F>>::KIND {
                    decode(&self.geo, &text)?
                } else {
                    decode::<F, ProjSubspace<F>>(&self.geo, &text)?.basis().clone()
                };
                if rows.cols() != q.nvars() {
                    return Err(Error::WrongLength(rows.cols()).into());
                }
                self.emit(&q.restrict(&rows)?, out.as_deref())?;
            }
            Command::Group(GroupCmd::Setup { out }) => {
                let setup = self.setup_with_retries()?;
                self.emit(&setup, out.as_deref())?;
            }
            Command::Group(GroupCmd::Chain { setup, word, out }) => {
                let setup: MarkedFano<F> = self.read(setup)?;
                let letters = parse_word(word)?;
                let c = self.geo.chain_apply(&setup, &setup.c0, &letters)?;
                let class = FormalClass::of_word(&letters);
                eprintln!("{}", json!({ "word": word, "class": class, "in_x": setup.p10().contains(c.span3()) }));
                self.emit(&c, out.as_deref())?;
            }
            Command::Verify(_) | Command::Group(GroupCmd::Verify { .. }) => unreachable!("handled by dispatch"),
        }
        Ok(Outcome::Ok)
    }

    fn setup_with_retries(&mut self) -> anyhow::Result<MarkedFano<F>> {
        let mut last = None;
        for _ in 0..RETRY_BUDGET {
            match self.geo.marked_fano_setup(&mut self.rng) {
                Ok(s) => return Ok(s),
                Err(e) => last = Some(e),
            }
        }
        Err(anyhow!(Error::RetriesExhausted(RETRY_BUDGET)).context(format!("last failure: {:?}", last)))
    }
}

/// Scale so the first nonzero coordinate is 1.
fn normalized<F: Field>(p: &ProjPoint<F>) -> Vec<F> {
    let c = p.coords();
    let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero point").inv().expect("nonzero");
    c.iter().map(|x| x.clone() * lead.clone()).collect()
}
