//! Plain-text rendering with aligned columns.

use std::fmt::Display;

use lcz_core::characterize::Mode;
use lcz_core::oracle::OracleResult;
use lcz_core::{CheckReport, SuiteVerdict, Witness};

fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let last = row.len().saturating_sub(1);
        for (c, cell) in row.iter().enumerate() {
            out.push_str(cell);
            if c < last {
                let pad = widths[c] - cell.chars().count() + 2;
                out.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push('\n');
    }
    out
}

pub fn witness(w: &Witness) -> String {
    match w {
        Witness::Coefficient { index, lhs, rhs } => format!("coefficient {index}: {lhs} != {rhs}"),
        Witness::Pair { m, n, lhs, rhs } => format!("at (m, n) = ({m}, {n}): {lhs} != {rhs}"),
        Witness::Point { n, lhs, rhs } => format!("at n = {n}: {lhs} != {rhs}"),
        Witness::SeriesTrial {
            trial,
            trial_seed,
            index,
            lhs,
            rhs,
            ..
        } => {
            format!("trial {trial} (seed {trial_seed:#018x}), coefficient {index}: {lhs} != {rhs}")
        }
        Witness::FunctionTrial {
            trial,
            trial_seed,
            n,
            lhs,
            rhs,
            ..
        } => format!("trial {trial} (seed {trial_seed:#018x}), n = {n}: {lhs} != {rhs}"),
    }
}

pub fn report_table(reports: &[CheckReport]) -> String {
    let mut rows = vec![vec![
        "id".into(),
        "verdict".into(),
        "mode".into(),
        "detail".into(),
    ]];
    for r in reports {
        let mode = match r.mode {
            Mode::Exact => "exact".to_string(),
            Mode::Randomized => format!(
                "random ({} trials, seed {})",
                r.trials.unwrap_or(0),
                r.seed.unwrap_or(0)
            ),
        };
        let mut detail = r.note.clone();
        if let Some(w) = &r.witness {
            detail = format!("{detail}; {}", witness(w));
        }
        if r.hypothesis_violated {
            detail.push_str(" [a_1 = 0]");
        }
        rows.push(vec![
            r.condition.to_string(),
            if r.holds { "holds" } else { "fails" }.into(),
            mode,
            detail,
        ]);
    }
    columns(&rows)
}

pub fn suite(verdict: &SuiteVerdict, header: &str) -> String {
    format!(
        "theorem {} ({header})\n{}consistent: {}\n",
        verdict.theorem,
        report_table(&verdict.reports),
        if verdict.consistent { "yes" } else { "NO" }
    )
}

pub fn table<K: Display, V: Display>(rows: &[(K, V)]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.to_string()])
        .collect();
    columns(&rows)
}

pub fn oracle(result: &OracleResult) -> String {
    let params: Vec<String> = result
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    columns(&[
        vec!["kind".into(), result.kind.clone()],
        vec!["params".into(), params.join(" ")],
        vec!["count".into(), result.count.clone()],
        vec!["closed form".into(), result.closed_form.clone()],
        vec![
            "agrees".into(),
            if result.agrees { "yes" } else { "NO" }.into(),
        ],
    ])
}
