use quandleforge::homology::TorsionGenerator;
use quandleforge::rack::RackTable;

/// Operation table as a bracketed matrix with 1-based entries, right-aligned.
pub fn matrix(x: &RackTable) -> String {
    let rows = x.rows_one_based();
    let width = rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        + 1;
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:>width$}")).collect();
            format!("[ {} ]", cells.join(", "))
        })
        .collect();
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        out.push_str(if i == 0 { "[ " } else { "  " });
        out.push_str(line);
        out.push_str(if i + 1 == lines.len() { " ]\n" } else { ",\n" });
    }
    if lines.is_empty() {
        out.push_str("[ ]\n");
    }
    out
}

pub fn translations(x: &RackTable) -> String {
    let perms: Vec<String> = x.translations().iter().map(|p| p.to_string()).collect();
    format!("[ {} ]\n", perms.join(", "))
}

pub fn torsion(gens: &[TorsionGenerator]) -> String {
    gens.iter()
        .map(|g| format!("Z_{}: {}\n", g.order, g.cycle))
        .collect()
}
