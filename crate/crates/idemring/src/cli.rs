//! Command implementations behind the `idemring` binary: list rendering,
//! the split tables, the verification sweep, and the strategy benchmark.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use serde::Serialize;

use crate::arith::{factorize, Factorization};
use crate::engine::{
    self, enumerate_splits, solve_split, solve_split_counted, solve_split_naive_counted,
    solve_split_usearch_counted, Split, SplitSolution,
};
use crate::error::Result;
use crate::oracle::{crt_idempotents, scan_idempotents_parallel};
use crate::verify::{verify_range, VerifyReport};

/// Environment variable overriding the definition-scan cost guard.
pub const SCAN_CEILING_ENV: &str = "IDEMRING_SCAN_CEILING";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListMethod {
    Prop51,
    Prop52,
    Prop53,
    Scan,
    Crt,
}

impl ListMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ListMethod::Prop51 => "prop51",
            ListMethod::Prop52 => "prop52",
            ListMethod::Prop53 => "prop53",
            ListMethod::Scan => "scan",
            ListMethod::Crt => "crt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMethod {
    /// Family blocks `1+ .. ` up to the halfway size (one representative
    /// per complementary pair at exactly half).
    Auto,
    /// Every split, keeping only the `r*m + 1` column.
    Prop52,
    /// Every split, keeping only the `(p-r)*m` column.
    Prop53,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Tsv,
}

/// Compute the idempotent set of `Z_n` by the requested route.
pub fn list_members(n: u64, method: ListMethod, scan_ceiling: u64) -> Result<(Factorization, Vec<u64>)> {
    let fac = factorize(n)?;
    let members = match method {
        ListMethod::Prop51 => engine::all_idempotents_prop51(&fac).members().to_vec(),
        ListMethod::Prop52 => engine::all_idempotents_prop52(&fac).members().to_vec(),
        ListMethod::Prop53 => engine::all_idempotents_prop53(&fac).members().to_vec(),
        ListMethod::Scan => {
            let threads = std::thread::available_parallelism().map_or(1, |p| p.get().min(8));
            scan_idempotents_parallel(n, scan_ceiling, threads)?.members
        }
        ListMethod::Crt => crt_idempotents(&fac).members,
    };
    Ok((fac, members))
}

#[derive(Serialize)]
struct ListJson<'a> {
    n: u64,
    k: u32,
    factors: Vec<[u64; 2]>,
    method: &'a str,
    members: &'a [u64],
}

/// Render a computed list. Every format carries the identical member
/// sequence; json additionally records n, k, the factorization, and the
/// method, with stable key order.
pub fn render_list(fac: &Factorization, members: &[u64], method: ListMethod, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut line = members
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            line.push('\n');
            line
        }
        OutputFormat::Tsv => {
            let mut out = String::from("idempotent\n");
            for e in members {
                let _ = writeln!(out, "{e}");
            }
            out
        }
        OutputFormat::Json => {
            let doc = ListJson {
                n: fac.n(),
                k: fac.k(),
                factors: fac.factors().iter().map(|&(p, a)| [p, a as u64]).collect(),
                method: method.as_str(),
                members,
            };
            let mut out = serde_json::to_string(&doc).expect("plain data serializes");
            out.push('\n');
            out
        }
    }
}

/// One table row: the family size and the solved split behind it.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub h: u32,
    pub sol: SplitSolution,
}

/// Assemble the rows for `table <n>`. Blocks run over ascending family
/// size; rows inside a block follow the lexicographic factor-subset order,
/// except that blocks past the halfway size are emitted in ascending `p`.
pub fn table_rows(fac: &Factorization, method: TableMethod) -> Vec<TableRow> {
    let k = fac.k();
    if k < 2 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    let mut emit_block = |h: u32, splits: Vec<Split>| {
        let mut block: Vec<TableRow> = splits
            .into_iter()
            .map(|split| TableRow { h, sol: solve_split(&split) })
            .collect();
        if 2 * h > k {
            block.sort_by_key(|row| row.sol.split().p());
        }
        rows.extend(block);
    };
    match method {
        TableMethod::Auto => {
            let whole = if k % 2 == 1 { (k - 1) / 2 } else { k / 2 - 1 };
            for h in 1..=whole {
                emit_block(h, enumerate_splits(fac, h).expect("1 <= h <= k-1"));
            }
            if k.is_multiple_of(2) {
                let half: Vec<Split> = enumerate_splits(fac, k / 2)
                    .expect("1 <= h <= k-1")
                    .into_iter()
                    .filter(|s| s.mask() & 1 == 1)
                    .collect();
                emit_block(k / 2, half);
            }
        }
        TableMethod::Prop52 | TableMethod::Prop53 => {
            for h in 1..k {
                emit_block(h, enumerate_splits(fac, h).expect("1 <= h <= k-1"));
            }
        }
    }
    rows
}

/// `2^2*3^2`-style rendering of the factors selected by `mask`.
fn factored(fac: &Factorization, mask: u32) -> String {
    let mut parts = Vec::new();
    for (i, &(p, a)) in fac.factors().iter().enumerate() {
        if mask >> i & 1 == 1 {
            if a == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{a}"));
            }
        }
    }
    parts.join("*")
}

fn table_columns(method: TableMethod) -> (&'static str, bool, bool) {
    // header tail, keep e_plus, keep e_zero
    match method {
        TableMethod::Auto => ("e_plus\te_zero", true, true),
        TableMethod::Prop52 => ("e_plus", true, false),
        TableMethod::Prop53 => ("e_zero", false, true),
    }
}

/// Render a table. The tsv form is tab-separated with a header row and LF
/// line endings; the text form pads columns and shows p and m factored.
pub fn render_table(fac: &Factorization, method: TableMethod, format: TableFormat) -> String {
    let rows = table_rows(fac, method);
    let (tail, with_plus, with_zero) = table_columns(method);
    match format {
        TableFormat::Tsv => {
            let mut out = format!("family\tp\tm\tt\tr\t{tail}\n");
            for row in &rows {
                let s = &row.sol;
                let _ = write!(
                    out,
                    "{}+\t{}\t{}\t{}\t{}",
                    row.h,
                    s.split().p(),
                    s.split().m(),
                    s.t(),
                    s.r()
                );
                if with_plus {
                    let _ = write!(out, "\t{}", s.e_plus());
                }
                if with_zero {
                    let _ = write!(out, "\t{}", s.e_zero());
                }
                out.push('\n');
            }
            out
        }
        TableFormat::Text => {
            let mut cells: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
            let mut header = vec![
                "family".to_string(),
                "p".to_string(),
                "m".to_string(),
                "t".to_string(),
                "r".to_string(),
            ];
            header.extend(tail.split('\t').map(str::to_string));
            cells.push(header);
            for row in &rows {
                let s = &row.sol;
                let mask = s.split().mask();
                let full = (1u32 << fac.k()) - 1;
                let mut line = vec![
                    format!("{}+", row.h),
                    factored(fac, mask),
                    factored(fac, full ^ mask),
                    s.t().to_string(),
                    s.r().to_string(),
                ];
                if with_plus {
                    line.push(s.e_plus().to_string());
                }
                if with_zero {
                    line.push(s.e_zero().to_string());
                }
                cells.push(line);
            }
            let cols = cells[0].len();
            let widths: Vec<usize> = (0..cols)
                .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for row in &cells {
                for (c, cell) in row.iter().enumerate() {
                    if c > 0 {
                        out.push_str("  ");
                    }
                    let _ = write!(out, "{cell:<width$}", width = widths[c]);
                }
                while out.ends_with(' ') {
                    out.pop();
                }
                out.push('\n');
            }
            out
        }
    }
}

/// Run the verification sweep and render its one-line summary.
pub fn run_verify(max: u64, scan_ceiling: u64) -> (VerifyReport, String) {
    let report = verify_range(max, scan_ceiling);
    let line = format!(
        "{} values checked, {} splits solved, {} violations\n",
        report.values_checked,
        report.splits_solved,
        if report.violation.is_some() { 1 } else { 0 }
    );
    (report, line)
}

pub struct BenchMethod {
    pub name: &'static str,
    pub bound: &'static str,
    pub total: Duration,
    pub ops: u64,
    pub max_ops: u64,
}

pub struct BenchReport {
    pub max: u64,
    pub reps: u32,
    pub splits: u64,
    pub disagreements: u64,
    pub ops_bound_violations: u64,
    pub methods: Vec<BenchMethod>,
}

/// Solve every split of every `n <= max` three ways: Bezout coefficients,
/// the quotient scan over `u`, and the brute-force scan over `r`. Confirms
/// the routes agree and that the scan routes stay inside their per-split
/// test bounds before timing anything.
pub fn run_bench(max: u64, reps: u32) -> BenchReport {
    let mut splits: Vec<Split> = Vec::new();
    for n in 2..=max {
        let fac = factorize(n).expect("n >= 2");
        for h in 1..fac.k() {
            splits.extend(enumerate_splits(&fac, h).expect("1 <= h <= k-1"));
        }
    }

    let mut disagreements = 0u64;
    let mut bound_violations = 0u64;
    let mut ops = [0u64; 3];
    let mut max_ops = [0u64; 3];
    for split in &splits {
        let (a, ca) = solve_split_counted(split);
        let (b, cb) = solve_split_usearch_counted(split);
        let (c, cc) = solve_split_naive_counted(split);
        if a != b || a != c {
            disagreements += 1;
            continue;
        }
        if cb > a.t() {
            bound_violations += 1;
        }
        if cc > split.p() - 1 {
            bound_violations += 1;
        }
        for (slot, count) in [ca, cb, cc].into_iter().enumerate() {
            ops[slot] += count;
            max_ops[slot] = max_ops[slot].max(count);
        }
    }

    let mut totals = [Duration::ZERO; 3];
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        for split in &splits {
            std::hint::black_box(solve_split_counted(std::hint::black_box(split)));
        }
        totals[0] += start.elapsed();

        let start = Instant::now();
        for split in &splits {
            std::hint::black_box(solve_split_usearch_counted(std::hint::black_box(split)));
        }
        totals[1] += start.elapsed();

        let start = Instant::now();
        for split in &splits {
            std::hint::black_box(solve_split_naive_counted(std::hint::black_box(split)));
        }
        totals[2] += start.elapsed();
    }

    let names = ["bezout", "usearch", "naive"];
    let bounds = ["O(log p) divisions", "<= t tests", "<= p-1 tests"];
    BenchReport {
        max,
        reps: reps.max(1),
        splits: splits.len() as u64,
        disagreements,
        ops_bound_violations: bound_violations,
        methods: (0..3)
            .map(|i| BenchMethod {
                name: names[i],
                bound: bounds[i],
                total: totals[i],
                ops: ops[i],
                max_ops: max_ops[i],
            })
            .collect(),
    }
}

pub fn render_bench(report: &BenchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} splits solved for 2 <= n <= {} ({} rep{}), {} disagreements, {} bound violations",
        report.splits,
        report.max,
        report.reps,
        if report.reps == 1 { "" } else { "s" },
        report.disagreements,
        report.ops_bound_violations
    );
    let _ = writeln!(
        out,
        "{:<8}  {:>12}  {:>14}  {:>12}  {:>10}  bound/split",
        "method", "total_ms", "mean_ns/split", "ops_total", "ops_max"
    );
    let per = report.splits.max(1) * report.reps as u64;
    for m in &report.methods {
        let _ = writeln!(
            out,
            "{:<8}  {:>12.3}  {:>14.1}  {:>12}  {:>10}  {}",
            m.name,
            m.total.as_secs_f64() * 1e3,
            m.total.as_nanos() as f64 / per as f64,
            m.ops,
            m.max_ops,
            m.bound
        );
    }
    out
}
