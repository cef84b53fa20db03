use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use condorcet_core::catalog::{catalog_entries, catalog_get, known_discrepancies, verify_catalog};
use condorcet_core::composition::{is_right_obstruction, theorem_hypotheses};
use condorcet_core::enumeration::{
    class_flags, classify, decomposability_census, enumerate_maximal_with, ClassFlags, DomainClass,
    Equivalence,
};
use condorcet_core::graphs::build_graph;
use condorcet_core::properties::{
    has_maximal_width, is_ample, is_arrow_single_peaked, is_copious, is_maximal,
    is_single_crossing, is_single_peaked_wrt, Axis,
};
use condorcet_core::text::{
    parse_domain_list, parse_domain_text, render_domain_list, render_domain_text,
};
use condorcet_core::{nl_compose, nl_decompose, Alternative, Domain, Error};

#[derive(Parser)]
#[command(
    name = "condorcet",
    version,
    about = "Analyse and compose Condorcet domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a property of a domain; exits 1 when it does not hold
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Axis for `single-peaked`, e.g. "1 2 3 4"
        #[arg(long)]
        axis: Option<String>,
    },
    /// Never-last composition of two domains
    Compose {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All ways of writing a domain as a never-last composition
    Decompose { file: PathBuf },
    /// Is A a right obstruction to the swap BC -> CB; exits 1 when not
    Obstruction {
        file: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
    },
    /// Hypotheses of the composition theorem for a factor pair
    Hypotheses { left: PathBuf, right: PathBuf },
    /// All maximal Condorcet domains on {1,...,n}
    Enumerate(EnumerateArgs),
    /// Group the domains of a `---`-separated list into classes
    Classify {
        file: PathBuf,
        /// Classify up to relabeling only
        #[arg(long)]
        no_flip: bool,
        #[arg(long)]
        flags: bool,
    },
    /// Swap graph of a domain
    Graph {
        file: PathBuf,
        /// Write DOT output to this file
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        summary: bool,
    },
    /// Transcribed example domains
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// One representative per class (default)
    #[arg(long, conflicts_with = "labeled")]
    classes: bool,
    /// Every labeled domain
    #[arg(long)]
    labeled: bool,
    /// Annotate classes with their properties
    #[arg(long)]
    flags: bool,
    /// Classify up to relabeling only
    #[arg(long)]
    no_flip: bool,
    /// Emit JSON instead of the text format
    #[arg(long)]
    json: bool,
    /// Permit n = 5 (slow)
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        id: String,
    },
    Verify {
        /// Also write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Property {
    Condorcet,
    Maximal,
    Ample,
    Copious,
    MaxWidth,
    ArrowSp,
    SingleCrossing,
    SinglePeaked,
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_domain(path: &Path) -> Result<Domain, CliError> {
    let text = read_input(path)?;
    parse_domain_text(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn verdict(value: bool) -> ExitCode {
    println!("{value}");
    if value {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn alternative(label: u32) -> Result<Alternative, CliError> {
    Ok(Alternative::new(label)?)
}

fn check(file: &Path, property: Property, axis: Option<&str>) -> Result<ExitCode, CliError> {
    let d = read_domain(file)?;
    let value = match property {
        Property::Condorcet => d.is_condorcet(),
        Property::Maximal => is_maximal(&d)?,
        Property::Ample => is_ample(&d)?,
        Property::Copious => is_copious(&d)?,
        Property::MaxWidth => has_maximal_width(&d),
        Property::ArrowSp => is_arrow_single_peaked(&d)?,
        Property::SingleCrossing => is_single_crossing(&d)?,
        Property::SinglePeaked => {
            let axis =
                axis.ok_or_else(|| CliError::Usage("--axis is required for single-peaked".into()))?;
            let labels = axis
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| CliError::Usage(format!("bad axis label '{t}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            is_single_peaked_wrt(&d, &Axis::from_labels(&labels)?)?
        }
    };
    Ok(verdict(value))
}

fn decompose(file: &Path) -> Result<ExitCode, CliError> {
    let d = read_domain(file)?;
    let parts = nl_decompose(&d)?;
    if parts.is_empty() {
        println!("none");
        return Ok(ExitCode::SUCCESS);
    }
    let mut blocks = Vec::new();
    for p in &parts {
        blocks.push(format!(
            "# {} left\n{}",
            p.roles,
            render_domain_text(&p.left)
        ));
        blocks.push(format!(
            "# {} right\n{}",
            p.roles,
            render_domain_text(&p.right)
        ));
    }
    print!("{}", blocks.join("---\n"));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClassListing<'a> {
    key: &'a str,
    members: usize,
    representative: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flags: Option<ClassFlags>,
}

fn opt(value: Option<bool>) -> String {
    value.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

fn print_classes(classes: &[DomainClass], flags: bool, json: bool) -> Result<(), CliError> {
    let census = decomposability_census(classes);
    if json {
        let listing = classes
            .iter()
            .map(|c| {
                Ok(ClassListing {
                    key: c.key.as_str(),
                    members: c.representatives.len(),
                    representative: c.representative().iter().map(|o| o.to_string()).collect(),
                    flags: if flags { Some(class_flags(c)?) } else { None },
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let doc = serde_json::json!({
            "classes": listing,
            "decomposable": census.count,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
        return Ok(());
    }
    let mut blocks = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        let mut block = format!(
            "# class {} key={} members={}\n",
            i + 1,
            class.key,
            class.representatives.len()
        );
        if flags {
            let f = class_flags(class)?;
            block.push_str(&format!(
                "# size={} decomposable={} nl={} flip_nl={} maximal={} ample={} copious={} maximal_width={} arrow_sp={}\n",
                f.size,
                f.decomposable,
                f.nl_decomposable,
                f.flip_nl_decomposable,
                f.maximal,
                opt(f.ample),
                opt(f.copious),
                f.maximal_width,
                opt(f.arrow_single_peaked)
            ));
        }
        block.push_str(&render_domain_text(class.representative()));
        blocks.push(block);
    }
    print!("{}", blocks.join("---\n"));
    println!("# {} classes, {} decomposable", classes.len(), census.count);
    Ok(())
}

fn equivalence(no_flip: bool) -> Equivalence {
    if no_flip {
        Equivalence::Isomorphism
    } else {
        Equivalence::IsomorphismAndFlip
    }
}

fn enumerate(args: &EnumerateArgs) -> Result<ExitCode, CliError> {
    let domains = enumerate_maximal_with(args.n, args.allow_large)?;
    if args.labeled {
        if args.json {
            let listing: Vec<Vec<String>> = domains
                .iter()
                .map(|d| d.iter().map(|o| o.to_string()).collect())
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&listing).expect("serializable")
            );
        } else {
            print!("{}", render_domain_list(&domains));
            println!("# {} labeled domains", domains.len());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let classes = classify(&domains, equivalence(args.no_flip))?;
    print_classes(&classes, args.flags, args.json)?;
    Ok(ExitCode::SUCCESS)
}

fn catalog(action: &CatalogAction) -> Result<ExitCode, CliError> {
    match action {
        CatalogAction::List => {
            for e in catalog_entries() {
                println!(
                    "{}\t{}\t{} orders",
                    e.id,
                    e.alias.unwrap_or("-"),
                    e.matrix.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Show { id } => {
            let e = catalog_get(id)?;
            match e.alias {
                Some(alias) => println!("# {} ({alias})", e.id),
                None => println!("# {}", e.id),
            }
            if let Some(identity) = &e.stated_identity {
                println!("# stated identity: {identity}");
            }
            if let Some(conditions) = &e.stated_conditions {
                let list: Vec<String> = conditions.iter().map(|c| c.to_string()).collect();
                println!("# stated conditions: {}", list.join(", "));
            }
            if !e.stated_flags.is_empty() {
                let list: Vec<&str> = e.stated_flags.iter().map(|f| f.name()).collect();
                println!("# stated flags: {}", list.join(", "));
            }
            print!("{}", render_domain_text(&e.matrix));
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Verify { json } => {
            let report = verify_catalog()?;
            print!("{}", report.render_lines());
            let unexpected = report.unexpected_mismatches();
            let unreproduced = report.unreproduced_discrepancies();
            for (id, c) in &unexpected {
                println!("# UNEXPECTED {id}: {}", c.check);
            }
            for k in &unreproduced {
                println!("# NOT REPRODUCED {}: {}", k.entry, k.check);
            }
            println!(
                "# {} mismatches, {} known, {} unexpected, {} not reproduced",
                report.mismatches().len(),
                known_discrepancies()
                    .iter()
                    .filter(|k| k.kind == condorcet_core::catalog::DiscrepancyKind::Computed)
                    .count(),
                unexpected.len(),
                unreproduced.len()
            );
            if let Some(path) = json {
                let doc = serde_json::json!({
                    "report": report,
                    "known_discrepancies": known_discrepancies(),
                    "passes": report.passes(),
                });
                write_output(
                    path,
                    &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"),
                )?;
            }
            Ok(if report.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Check {
            file,
            property,
            axis,
        } => check(&file, property, axis.as_deref()),
        Command::Compose {
            left,
            right,
            output,
        } => {
            let composed = nl_compose(&read_domain(&left)?, &read_domain(&right)?)?;
            let text = render_domain_text(&composed);
            if let Some(path) = output {
                write_output(&path, &text)?;
            }
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { file } => decompose(&file),
        Command::Obstruction { file, a, b, c } => {
            let d = read_domain(&file)?;
            Ok(verdict(is_right_obstruction(
                &d,
                alternative(a)?,
                alternative(b)?,
                alternative(c)?,
            )?))
        }
        Command::Hypotheses { left, right } => {
            let report = theorem_hypotheses(&read_domain(&left)?, &read_domain(&right)?)?;
            println!("roles: {}", report.roles);
            for (name, value) in report.fields() {
                println!("{name}: {value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate(args) => enumerate(&args),
        Command::Classify {
            file,
            no_flip,
            flags,
        } => {
            let domains = parse_domain_list(&read_input(&file)?)
                .map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
            let classes = classify(&domains, equivalence(no_flip))?;
            print_classes(&classes, flags, false)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph { file, dot, summary } => {
            let graph = build_graph(&read_domain(&file)?);
            if let Some(path) = &dot {
                write_output(path, &graph.to_dot())?;
            }
            if summary {
                let s = graph.summary();
                println!("vertices: {}", s.vertices);
                println!("edges: {}", s.edges);
                println!("connected: {}", s.connected);
                println!("path: {}", s.path);
            } else if dot.is_none() {
                print!("{}", graph.to_dot());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { action } => catalog(&action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
