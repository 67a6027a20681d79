mod commands;
mod error;
mod format;
mod tables;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quandleforge::envgroup::DEFAULT_MAX_COSETS;

use commands::Style;
use error::CliError;

/// Finite racks and quandles.
#[derive(Parser)]
#[command(name = "quandleforge", version)]
struct Cli {
    /// Worker threads for parallel work.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Print the table as a bracketed matrix.
    #[arg(long)]
    table: bool,
    /// Print the translations in cycle notation.
    #[arg(long)]
    perms: bool,
}

impl From<Output> for Style {
    fn from(o: Output) -> Style {
        Style {
            table: o.table,
            perms: o.perms,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Rack table file, or - for standard input.
    #[arg(long, value_name = "PATH")]
    file: PathBuf,
}

#[derive(Args)]
struct GroupArg {
    /// S<n>, A<n>, or a comma-separated generator list (needs --degree).
    group: String,
    #[arg(long, value_name = "K")]
    degree: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dihedral quandle on Z_n.
    Dihedral {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Affine quandle on Z_n with multiplier t, or on GF(p^k) with --power k.
    Affine {
        modulus: usize,
        /// Multiplier; over a field, the integer whose base-p digits are its coefficients.
        multiplier: usize,
        #[arg(long, value_name = "K")]
        power: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Conjugation quandle on the union of conjugacy classes.
    Conj {
        #[command(flatten)]
        group: GroupArg,
        #[arg(required = true)]
        elements: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Homogeneous quandle on the cosets of a point stabilizer.
    Homogeneous {
        #[command(flatten)]
        group: GroupArg,
        /// Element centralizing the stabilizer.
        z: String,
        #[arg(long, default_value_t = 1)]
        point: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check a table and report its basic properties.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Print a table as a bracketed matrix.
    Table {
        #[command(flatten)]
        input: Input,
    },
    /// Print the translations.
    Perms {
        #[command(flatten)]
        input: Input,
    },
    /// Print the components.
    Components {
        #[command(flatten)]
        input: Input,
    },
    /// Find an isomorphism between two racks.
    Iso { first: PathBuf, second: PathBuf },
    /// Count the indecomposable quandles of size n.
    Classify {
        n: usize,
        #[arg(long, value_name = "PATH")]
        groups: Option<PathBuf>,
        /// Also print the tables.
        #[arg(long)]
        tables: bool,
    },
    /// The i-th indecomposable quandle of size n.
    Small {
        n: usize,
        i: usize,
        #[arg(long, value_name = "PATH", env = "QUANDLEFORGE_DB")]
        db: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        groups: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Integral rack homology.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "K")]
        degree: usize,
    },
    /// Cycles generating the torsion of the homology.
    Torsion {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "K")]
        degree: usize,
    },
    /// Search for a type D subrack.
    Typed {
        #[command(flatten)]
        input: Input,
    },
    /// Order of the finite enveloping group.
    EnvOrder {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Abelianization of the enveloping group.
    Ab {
        #[command(flatten)]
        input: Input,
        /// Use the finite enveloping group.
        #[arg(long)]
        finite: bool,
    },
    /// Write the built-in transitive groups of a degree as a group database.
    GroupsGen { degree: usize },
    /// Parse a group database and summarize it.
    GroupsCheck { path: PathBuf },
    /// Classify sizes 1..=max and write a quandle database.
    DbBuild {
        #[arg(long, value_name = "PATH", env = "QUANDLEFORGE_DB")]
        db: PathBuf,
        #[arg(long)]
        max: usize,
        #[arg(long, value_name = "PATH")]
        groups: Option<PathBuf>,
    },
    /// Query a quandle database.
    DbQuery {
        n: usize,
        i: Option<usize>,
        #[arg(long, value_name = "PATH", env = "QUANDLEFORGE_DB")]
        db: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Recompute the reference tables from the available group data.
    VerifyTables {
        #[arg(long, value_name = "PATH")]
        groups: Option<PathBuf>,
    },
}

fn rack(input: &Input) -> Result<quandleforge::rack::RackTable, CliError> {
    commands::read_rack(&input.file)
}

/// Output text and whether the command reported a failure.
fn run(command: Command) -> Result<(String, bool), CliError> {
    let ok = |s: String| Ok((s, false));
    match command {
        Command::Dihedral { n, out } => ok(commands::dihedral(n, out.into())?),
        Command::Affine {
            modulus,
            multiplier,
            power,
            out,
        } => ok(commands::affine(modulus, multiplier, power, out.into())?),
        Command::Conj {
            group,
            elements,
            out,
        } => {
            let g = commands::group(&group.group, group.degree)?;
            ok(commands::conj(&g, &elements, out.into())?)
        }
        Command::Homogeneous {
            group,
            z,
            point,
            out,
        } => {
            let g = commands::group(&group.group, group.degree)?;
            ok(commands::homogeneous(&g, &z, point, out.into())?)
        }
        Command::Validate { input } => ok(commands::validate(&rack(&input)?)),
        Command::Table { input } => ok(format::matrix(&rack(&input)?)),
        Command::Perms { input } => ok(format::translations(&rack(&input)?)),
        Command::Components { input } => ok(commands::components(&rack(&input)?)),
        Command::Iso { first, second } => {
            let x = commands::read_rack(&first)?;
            let y = commands::read_rack(&second)?;
            ok(commands::iso(&x, &y))
        }
        Command::Classify { n, groups, tables } => {
            ok(commands::classify_cmd(n, groups.as_deref(), tables)?)
        }
        Command::Small {
            n,
            i,
            db,
            groups,
            out,
        } => ok(commands::small(
            n,
            i,
            db.as_deref(),
            groups.as_deref(),
            out.into(),
        )?),
        Command::Homology { input, degree } => ok(commands::homology(&rack(&input)?, degree)?),
        Command::Torsion { input, degree } => ok(commands::torsion(&rack(&input)?, degree)?),
        Command::Typed { input } => ok(commands::typed(&rack(&input)?)),
        Command::EnvOrder { input, max_cosets } => {
            ok(commands::env_order(&rack(&input)?, max_cosets)?)
        }
        Command::Ab { input, finite } => ok(commands::ab(&rack(&input)?, finite)),
        Command::GroupsGen { degree } => ok(commands::groups_gen(degree)?),
        Command::GroupsCheck { path } => ok(commands::groups_check(&path)?),
        Command::DbBuild { db, max, groups } => {
            ok(commands::db_build(&db, max, groups.as_deref())?)
        }
        Command::DbQuery { n, i, db, out } => {
            let db = db.ok_or(CliError::NoDatabase)?;
            ok(commands::db_query(&db, n, i, out.into())?)
        }
        Command::VerifyTables { groups } => tables::verify(groups.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok((text, failed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(u8::from(failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
