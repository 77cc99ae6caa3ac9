use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use equimorse::action::{check_regularity, check_simplicial_quotient};
use equimorse::complex::{face_poset, simplicial_homology_oracle};
use equimorse::development::develop;
use equimorse::homology::classifying_homology;
use equimorse::io;
use equimorse::lp::{double_nerve, geometric_nerve, LpCategory};
use equimorse::morse::{check_compatibility, flow_category, validate_matching, FlowBudget, Matching};
use equimorse::morse_cog::morse_cog;
use equimorse::pipeline::{load_input, prepare, run_pipeline, Budgets, PipelineConfig, PipelineInput};
use equimorse::{Error, Result};

#[derive(Parser)]
#[command(name = "equimorse", version, about = "Equivariant discrete Morse theory through complexes of groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Inputs {
    /// Complex file with `simplex` lines.
    #[arg(long)]
    complex: PathBuf,
    /// Group file with `gen` lines; the trivial group if omitted.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Matching file with `pair` lines naming quotient simplices.
    #[arg(long)]
    matching: Option<PathBuf>,
    /// Lift overrides with `lift` lines.
    #[arg(long)]
    lifts: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for output files; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = equimorse::lp::DEFAULT_NERVE_BOUND, value_parser = positive)]
    budget_nerve: usize,
    #[arg(long, default_value_t = FlowBudget::default().raw_words, value_parser = positive)]
    budget_words: usize,
    #[arg(long, default_value_t = FlowBudget::default().classes, value_parser = positive)]
    budget_classes: usize,
    #[arg(long, default_value_t = 1_000_000, value_parser = positive)]
    budget_iso: usize,
    #[arg(long)]
    fixed_point_checks: bool,
    #[arg(short, long)]
    verbose: bool,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl Inputs {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            complex: self.complex.clone(),
            group: self.group.clone(),
            matching: self.matching.clone(),
            lifts: self.lifts.clone(),
            seed: self.seed,
            budgets: Budgets {
                nerve: self.budget_nerve,
                flow: FlowBudget {
                    raw_words: self.budget_words,
                    classes: self.budget_classes,
                },
                iso_nodes: self.budget_iso,
            },
            out: self.out.clone(),
            fixed_point_checks: self.fixed_point_checks,
            verbose: self.verbose,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpWhat {
    FacePoset,
    Quotient,
    Flow,
    Development,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the group acts simplicially and regularly.
    Validate(Inputs),
    /// Quotient category with orbit and stabilizer tables.
    Quotient(Inputs),
    /// Complex of groups of the action.
    Cog(Inputs),
    /// Check the matching and its compatibility with the complex of groups.
    Matchcheck(Inputs),
    /// Flow category of the matching on the quotient.
    Flow(Inputs),
    /// Morse complex of groups over the flow category.
    MorseCog(Inputs),
    /// Development of the Morse complex of groups with its action table.
    Develop(Inputs),
    /// Nerve cell counts of the face poset, or of a dumped category.
    Nerve {
        #[command(flatten)]
        inputs: CategoryInput,
    },
    /// Homology of the complex, or of the classifying space of a dumped category.
    Homology {
        #[command(flatten)]
        inputs: CategoryInput,
    },
    /// Category dump of one stage.
    Dump {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "face-poset")]
        what: DumpWhat,
    },
    /// Action on the barycentric subdivision, written as complex and group files.
    Subdivide(Inputs),
    /// Every stage, with a JSON report.
    #[command(alias = "pipeline")]
    Run(Inputs),
}

#[derive(Args)]
struct CategoryInput {
    #[arg(long, required_unless_present = "category")]
    complex: Option<PathBuf>,
    /// Category dump file.
    #[arg(long, conflicts_with = "complex")]
    category: Option<PathBuf>,
    #[arg(long, default_value_t = equimorse::lp::DEFAULT_NERVE_BOUND, value_parser = positive)]
    budget_nerve: usize,
}

fn read(p: &PathBuf) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))
}

fn emit(out: &Option<PathBuf>, name: &str, text: &str) -> Result<()> {
    match out {
        None => print!("{text}"),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), text)?;
        }
    }
    Ok(())
}

fn quotient_matching(input: &PipelineInput, y: &equimorse::complex::SimplicialComplex) -> Result<Matching> {
    Matching::from_names(y, &input.matching)
}

fn category_of(c: &CategoryInput) -> Result<LpCategory> {
    match (&c.category, &c.complex) {
        (Some(p), _) => io::load_category(&read(p)?),
        (None, Some(p)) => Ok(face_poset(&io::parse_complex(&read(p)?)?)),
        (None, None) => Err(Error::Invalid("either --complex or --category is required".into())),
    }
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Validate(i) => {
            let input = load_input(&i.config())?;
            let mut r = check_regularity(&input.action);
            if r.is_ok() {
                r.merge(check_simplicial_quotient(&input.action));
            }
            println!("group order {}", input.action.group.order());
            println!("{}", if r.is_ok() { "PASS" } else { "FAIL" });
            if !r.is_ok() {
                println!("{r}");
                println!("the second barycentric subdivision of any action is regular; see `equimorse subdivide`");
            }
            Ok(if r.is_ok() { 0 } else { 1 })
        }
        Command::Quotient(i) => {
            let input = load_input(&i.config())?;
            let p = prepare(&input, i.seed)?;
            let mut text = io::dump_category(&p.quotient_data.quotient);
            text += &io::orbit_table(&p.quotient_data, &p.face_action.category);
            text += &io::stabilizer_table(&p.face_action);
            emit(&i.out, "quotient.txt", &text)?;
            Ok(0)
        }
        Command::Cog(i) => {
            let input = load_input(&i.config())?;
            let p = prepare(&input, i.seed)?;
            emit(&i.out, "cog.txt", &io::dump_cog(&p.cog, &p.phi))?;
            Ok(0)
        }
        Command::Matchcheck(i) => {
            let input = load_input(&i.config())?;
            let p = prepare(&input, i.seed)?;
            let y = &p.quotient.complex;
            let sigma = quotient_matching(&input, y)?;
            let mut r = validate_matching(y, &sigma);
            if r.is_ok() {
                r.merge(check_compatibility(&p.cog, y, &sigma));
            }
            println!("{} pairs", sigma.len());
            println!("{}", if r.is_ok() { "PASS" } else { "FAIL" });
            if !r.is_ok() {
                println!("{r}");
            }
            Ok(if r.is_ok() { 0 } else { 1 })
        }
        Command::Flow(i) => {
            let cfg = i.config();
            let input = load_input(&cfg)?;
            let p = prepare(&input, i.seed)?;
            let sigma = quotient_matching(&input, &p.quotient.complex)?;
            validate_matching(&p.quotient.complex, &sigma).into_result("matching")?;
            let flow = flow_category(p.quotient.complex.clone(), &sigma, cfg.budgets.flow)?;
            emit(&i.out, "flow.txt", &io::dump_category(&flow.category))?;
            Ok(0)
        }
        Command::MorseCog(i) => {
            let (flow, m, psi) = morse_stage(&i)?;
            let mut text = io::dump_category(&flow);
            text += &io::dump_cog(&m, &psi);
            emit(&i.out, "morse_cog.txt", &text)?;
            Ok(0)
        }
        Command::Develop(i) => {
            let (_, m, psi) = morse_stage(&i)?;
            let d = develop(&m, &psi)?;
            let mut text = io::dump_category(&d.category);
            text += &io::action_table(&d.action);
            emit(&i.out, "development.txt", &text)?;
            Ok(0)
        }
        Command::Nerve { inputs } => {
            let c = category_of(&inputs)?;
            let n = geometric_nerve(&c, None, inputs.budget_nerve)?;
            let bar = double_nerve(&c, inputs.budget_nerve)?;
            let counts = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
            println!("distinct-object simplices: [{}]", counts(n.f_vector()));
            println!("double nerve cells: [{}]", counts(bar.iter().map(Vec::len).collect()));
            Ok(0)
        }
        Command::Homology { inputs } => {
            let h = match (&inputs.category, &inputs.complex) {
                (None, Some(p)) => simplicial_homology_oracle(&io::parse_complex(&read(p)?)?)?,
                _ => classifying_homology(&category_of(&inputs)?, inputs.budget_nerve)?,
            };
            println!("{h}");
            Ok(0)
        }
        Command::Dump { inputs: i, what } => {
            let cfg = i.config();
            let input = load_input(&cfg)?;
            let text = match what {
                DumpWhat::FacePoset => io::dump_category(&face_poset(&input.action.complex)),
                DumpWhat::Quotient => io::dump_category(&prepare(&input, i.seed)?.quotient_data.quotient),
                DumpWhat::Flow => io::dump_category(&morse_stage(&i)?.0),
                DumpWhat::Development => {
                    let (_, m, psi) = morse_stage(&i)?;
                    io::dump_category(&develop(&m, &psi)?.category)
                }
            };
            emit(&i.out, "category.txt", &text)?;
            Ok(0)
        }
        Command::Subdivide(i) => {
            let input = load_input(&i.config())?;
            let sd = input.action.subdivide()?;
            emit(&i.out, "complex.txt", &io::write_complex(&sd.complex))?;
            if i.out.is_none() {
                println!("---");
            }
            emit(&i.out, "group.txt", &io::write_group(&sd.group, &sd.complex))?;
            Ok(0)
        }
        Command::Run(i) => {
            let cfg = i.config();
            let (code, report, err) = run_pipeline(&cfg);
            if let Some(r) = &report {
                if cfg.out.is_none() || cfg.verbose {
                    println!("{}", r.to_json());
                } else {
                    println!("{}", r.verdict);
                }
            }
            if let Some(e) = err {
                eprintln!("error: {e}");
            }
            Ok(code)
        }
    }
}

fn morse_stage(i: &Inputs) -> Result<(Arc<LpCategory>, equimorse::cog::ComplexOfGroups, equimorse::cog::CogMorphismToConstant)> {
    let cfg = i.config();
    let input = load_input(&cfg)?;
    let p = prepare(&input, i.seed)?;
    let y = &p.quotient.complex;
    let sigma = quotient_matching(&input, y)?;
    validate_matching(y, &sigma).into_result("matching")?;
    let flow = flow_category(y.clone(), &sigma, cfg.budgets.flow)?;
    let (m, psi) = morse_cog(&p.cog, &p.phi, &flow)?;
    Ok((flow.category.clone(), m, psi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
