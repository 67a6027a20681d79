use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use quandleforge::classify::{
    builtin_transitive_groups, classify_indecomposable, small_quandle, GroupDatabase,
    QuandleDatabase, QuandleRecord, MAX_BUILTIN_DEGREE,
};
use quandleforge::construct::{
    affine_quandle_fq, affine_quandle_zn, conjugation_rack, dihedral_quandle, homogeneous_quandle,
    make_field,
};
use quandleforge::envgroup::{abelian_invariants, enveloping_presentation, todd_coxeter};
use quandleforge::homology::{rack_homology, torsion_generators};
use quandleforge::perm::{parse_cycles, parse_generator_list, PermGroup};
use quandleforge::rack::{find_isomorphism, RackTable};
use quandleforge::typed::is_type_d;

use crate::error::CliError;
use crate::format;

#[derive(Clone, Copy, Default)]
pub struct Style {
    pub table: bool,
    pub perms: bool,
}

pub fn render(x: &RackTable, style: Style) -> String {
    let mut out = String::new();
    if style.table {
        out.push_str(&format::matrix(x));
    }
    if style.perms {
        out.push_str(&format::translations(x));
    }
    if !style.table && !style.perms {
        out.push_str(&x.to_text());
        if !out.ends_with('\n') {
            out.push('\n');
        }
    }
    out
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

pub fn read_rack(path: &Path) -> Result<RackTable, CliError> {
    RackTable::from_text(&read_text(path)?).map_err(|source| CliError::Table {
        path: path.to_owned(),
        source,
    })
}

fn read_groups(path: &Path) -> Result<GroupDatabase, CliError> {
    GroupDatabase::parse(&read_text(path)?).map_err(|source| CliError::Database {
        path: path.to_owned(),
        source,
    })
}

fn read_db(path: &Path) -> Result<QuandleDatabase, CliError> {
    QuandleDatabase::parse(&read_text(path)?).map_err(|source| CliError::Database {
        path: path.to_owned(),
        source,
    })
}

/// Transitive groups of degree `n`: built in up to the supported degree,
/// otherwise from `groups`, which is a database file or a directory holding
/// `transitive_<n>.txt`.
pub fn group_database(n: usize, groups: Option<&Path>) -> Result<Option<GroupDatabase>, CliError> {
    if let Some(path) = groups {
        let file = if path.is_dir() {
            path.join(format!("transitive_{n}.txt"))
        } else {
            path.to_owned()
        };
        if file.exists() {
            let db = read_groups(&file)?;
            if db.degree() == n {
                return Ok(Some(db));
            }
        }
    }
    if n <= MAX_BUILTIN_DEGREE {
        return Ok(Some(builtin_transitive_groups(n)?));
    }
    Ok(None)
}

fn classify(n: usize, groups: Option<&Path>) -> Result<Vec<QuandleRecord>, CliError> {
    if n == 1 {
        return Ok(classify_indecomposable(
            1,
            &GroupDatabase::new(1, Vec::new()),
        )?);
    }
    let db = group_database(n, groups)?
        .ok_or(quandleforge::classify::ClassifyError::MissingGroups(n))?;
    Ok(classify_indecomposable(n, &db)?)
}

pub fn group(text: &str, degree: Option<usize>) -> Result<PermGroup, CliError> {
    let named = |prefix: char| {
        text.strip_prefix(prefix)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| d >= 1)
    };
    if let Some(d) = named('S') {
        return Ok(PermGroup::symmetric(d));
    }
    if let Some(d) = named('A') {
        return Ok(PermGroup::alternating(d));
    }
    let degree = degree.ok_or_else(|| CliError::UnknownGroup(text.to_string()))?;
    Ok(PermGroup::new(degree, parse_generator_list(text, degree)?))
}

pub fn dihedral(n: usize, style: Style) -> Result<String, CliError> {
    Ok(render(&dihedral_quandle(n)?, style))
}

pub fn affine(
    modulus: usize,
    t: usize,
    power: Option<u32>,
    style: Style,
) -> Result<String, CliError> {
    let x = match power {
        None => affine_quandle_zn(modulus, t)?,
        Some(k) => {
            let p = u32::try_from(modulus)
                .map_err(|_| CliError::Failed(format!("{modulus} is too large")))?;
            affine_quandle_fq(&make_field(p, k)?, t)?
        }
    };
    Ok(render(&x, style))
}

pub fn conj(g: &PermGroup, elements: &[String], style: Style) -> Result<String, CliError> {
    let reps = elements
        .iter()
        .map(|e| parse_cycles(e, g.degree()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render(&conjugation_rack(g, &reps)?, style))
}

pub fn homogeneous(g: &PermGroup, z: &str, point: usize, style: Style) -> Result<String, CliError> {
    if point == 0 || point > g.degree() {
        return Err(CliError::PointOutOfRange {
            point,
            degree: g.degree(),
        });
    }
    let h = g.stabilizer(point - 1);
    let z = parse_cycles(z, g.degree())?;
    Ok(render(&homogeneous_quandle(g, &h, &z)?, style))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn validate(x: &RackTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "size = {}", x.size());
    let _ = writeln!(out, "quandle = {}", yes_no(x.is_quandle()));
    let _ = writeln!(out, "indecomposable = {}", yes_no(x.is_indecomposable()));
    let _ = writeln!(out, "faithful = {}", yes_no(x.is_faithful()));
    if x.is_quandle() {
        let _ = writeln!(out, "crossed set = {}", yes_no(x.is_crossed_set()));
    }
    let _ = writeln!(out, "|Inn| = {}", x.inner_group().order());
    out
}

pub fn components(x: &RackTable) -> String {
    format!("{}\n", x.components().to_one_based_string())
}

pub fn iso(x: &RackTable, y: &RackTable) -> String {
    match find_isomorphism(x, y) {
        Some(s) => format!("{s}\n"),
        None => "fail\n".to_string(),
    }
}

pub fn classify_cmd(n: usize, groups: Option<&Path>, tables: bool) -> Result<String, CliError> {
    let recs = classify(n, groups)?;
    let mut out = format!("q({n}) = {}\n", recs.len());
    if tables {
        for r in &recs {
            let _ = writeln!(out, "# Q({n},{})", r.index);
            out.push_str(&render(&r.table, Style::default()));
        }
    }
    Ok(out)
}

pub fn small(
    n: usize,
    i: usize,
    db: Option<&Path>,
    groups: Option<&Path>,
    style: Style,
) -> Result<String, CliError> {
    let x = match db {
        Some(path) => small_quandle(&read_db(path)?, n, i)?,
        None => {
            let mut qdb = QuandleDatabase::default();
            qdb.insert(n, classify(n, groups)?);
            small_quandle(&qdb, n, i)?
        }
    };
    Ok(render(&x, style))
}

pub fn homology(x: &RackTable, degree: usize) -> Result<String, CliError> {
    Ok(format!("{}\n", rack_homology(x, degree)?))
}

pub fn torsion(x: &RackTable, degree: usize) -> Result<String, CliError> {
    Ok(format::torsion(&torsion_generators(x, degree)?))
}

pub fn typed(x: &RackTable) -> String {
    match is_type_d(x) {
        Some(w) => format!("type-D: yes (r={}, s={})\n", w.r + 1, w.s + 1),
        None => "type-D: no\n".to_string(),
    }
}

pub fn env_order(x: &RackTable, max_cosets: usize) -> Result<String, CliError> {
    let table = todd_coxeter(&enveloping_presentation(x, true), max_cosets)?;
    Ok(format!("|env| = {}\n", table.len()))
}

pub fn ab(x: &RackTable, finite: bool) -> String {
    format!(
        "ab = {}\n",
        abelian_invariants(&enveloping_presentation(x, finite))
    )
}

pub fn groups_gen(degree: usize) -> Result<String, CliError> {
    Ok(builtin_transitive_groups(degree)?.to_text())
}

pub fn groups_check(path: &Path) -> Result<String, CliError> {
    let db = read_groups(path)?;
    let orders: Vec<String> = db.groups().iter().map(|g| g.order().to_string()).collect();
    Ok(format!(
        "degree = {}\ngroups = {}\norders = [ {} ]\n",
        db.degree(),
        db.len(),
        orders.join(", ")
    ))
}

pub fn db_build(path: &Path, max: usize, groups: Option<&Path>) -> Result<String, CliError> {
    let mut db = QuandleDatabase::default();
    let mut out = String::new();
    for n in 1..=max {
        if n > 1 && group_database(n, groups)?.is_none() {
            let _ = writeln!(out, "q({n}) skipped: no group data");
            continue;
        }
        let recs = classify(n, groups)?;
        let _ = writeln!(out, "q({n}) = {}", recs.len());
        db.insert(n, recs);
    }
    db.write(path).map_err(|source| CliError::Database {
        path: PathBuf::from(path),
        source,
    })?;
    Ok(out)
}

pub fn db_query(path: &Path, n: usize, i: Option<usize>, style: Style) -> Result<String, CliError> {
    let db = read_db(path)?;
    match i {
        Some(i) => Ok(render(&small_quandle(&db, n, i)?, style)),
        None => {
            let recs = db
                .records(n)
                .ok_or(quandleforge::classify::ClassifyError::SizeAbsent(n))?;
            Ok(format!("q({n}) = {}\n", recs.len()))
        }
    }
}
