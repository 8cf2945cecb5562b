use crate::error::Result;
use crate::lca::{FiniteConfiguration, LcaRule};

/// A cell as comma-joined component values, e.g. `1,0`.
pub fn render_cell(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Space-time diagram: rows for `t = 0..=steps`, cells `-window..=window`
/// separated by single spaces.
pub fn space_time(
    rule: &LcaRule,
    initial: &FiniteConfiguration,
    steps: u64,
    window: i64,
) -> Result<String> {
    let mut out = String::new();
    let mut c = initial.clone();
    for t in 0..=steps {
        if t > 0 {
            c = rule.step(&c)?;
        }
        let row: Vec<String> = (-window..=window)
            .map(|i| render_cell(&c.value(i)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}
