//! JSON and CSV rendering. Big integers and high-precision reals are
//! written as decimal strings; metadata in CSV goes on `#` lines.

use serde::{Deserialize, Serialize};
use tree_asymptotics::expansion::{Analysis, ErrorTable};
use tree_asymptotics::{CountSequence, HpReal};

use crate::config::OutputFormat;
use crate::oeis::VerifyReport;

/// Decimal string at `certified + 2` significant digits, at most `digits`.
pub fn hp_string(x: &HpReal, certified: u32, digits: u32) -> String {
    let sig = (certified + 2).clamp(2, digits.max(2));
    x.to_table_string(sig as usize)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CountsJson {
    pub variety: String,
    pub values: Vec<String>,
}

pub fn render_counts(seq: &CountSequence, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let doc = CountsJson {
                variety: seq.variety().name().to_string(),
                values: seq.values().iter().map(|v| v.to_string()).collect(),
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,value\n");
            for (n, v) in seq.values().iter().enumerate() {
                out.push_str(&format!("{n},{v}\n"));
            }
            out
        }
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct Coefficient {
    pub index: usize,
    pub value: String,
    pub certified_digits: u32,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ExpansionJson {
    pub variety: String,
    pub terms: usize,
    pub digits: u32,
    pub rho: String,
    pub rho_certified_digits: u32,
    pub t: Vec<Coefficient>,
    pub tau: Vec<Coefficient>,
}

fn coefficients(values: &[HpReal], certified: &[u32], digits: u32) -> Vec<Coefficient> {
    values
        .iter()
        .zip(certified)
        .enumerate()
        .map(|(index, (v, &c))| Coefficient { index, value: hp_string(v, c, digits), certified_digits: c })
        .collect()
}

pub fn expansion_json(a: &Analysis) -> ExpansionJson {
    let digits = a.config.digits;
    let k = a.config.puiseux_order;
    ExpansionJson {
        variety: a.spec.name.clone(),
        terms: a.config.terms,
        digits,
        rho: hp_string(&a.rho.rho, a.rho.certified_digits, digits),
        rho_certified_digits: a.rho.certified_digits,
        t: coefficients(a.t(), &a.puiseux.meta.certified_digits[..=k], digits),
        tau: coefficients(a.tau(), &a.asymptotic.meta.certified_digits, digits),
    }
}

pub fn render_expansion(a: &Analysis, format: OutputFormat) -> String {
    let doc = expansion_json(a);
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        OutputFormat::Csv => {
            let mut out = format!(
                "# variety={} terms={} digits={} rho_certified_digits={}\nkind,index,value,certified_digits\n",
                doc.variety, doc.terms, doc.digits, doc.rho_certified_digits
            );
            out.push_str(&format!("rho,0,{},{}\n", doc.rho, doc.rho_certified_digits));
            for (kind, list) in [("t", &doc.t), ("tau", &doc.tau)] {
                for c in list {
                    out.push_str(&format!("{kind},{},{},{}\n", c.index, c.value, c.certified_digits));
                }
            }
            out
        }
    }
}

/// One `name value` row per coefficient at 19 significant digits.
pub fn render_table(prefix: &str, values: &[HpReal]) -> String {
    let width = format!("{prefix}_{}", values.len().saturating_sub(1)).len();
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{:<width$}  {}\n", format!("{prefix}_{i}"), v.to_table_string(19)))
        .collect()
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct EstimateJson {
    pub variety: String,
    pub n: usize,
    pub order: usize,
    pub estimate: String,
    pub exact: String,
    pub relative_error: String,
}

pub fn render_estimate(doc: &EstimateJson, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
        OutputFormat::Csv => format!(
            "variety,n,order,estimate,exact,relative_error\n{},{},{},{},{},{}\n",
            doc.variety, doc.n, doc.order, doc.estimate, doc.exact, doc.relative_error
        ),
    }
}

fn header(table: &ErrorTable, terms: usize, digits: u32) -> String {
    format!("# variety={} terms={terms} digits={digits}\n", table.variety)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ErrorTableJson {
    pub variety: String,
    pub sizes: Vec<usize>,
    pub orders: Vec<usize>,
    /// `relative_errors[j][i]` for `orders[j]` and `sizes[i]`.
    pub relative_errors: Vec<Vec<String>>,
}

/// Rows are orders, columns sizes.
pub fn render_error_table(table: &ErrorTable, terms: usize, digits: u32, format: OutputFormat) -> String {
    let cell = |i: usize, j: usize| table.relative[i][j].to_sci_string(4);
    match format {
        OutputFormat::Json => {
            let doc = ErrorTableJson {
                variety: table.variety.clone(),
                sizes: table.sizes.clone(),
                orders: table.orders.clone(),
                relative_errors: (0..table.orders.len())
                    .map(|j| (0..table.sizes.len()).map(|i| cell(i, j)).collect())
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = header(table, terms, digits);
            out.push_str("order");
            for s in &table.sizes {
                out.push_str(&format!(",{s}"));
            }
            out.push('\n');
            for (j, o) in table.orders.iter().enumerate() {
                out.push_str(&o.to_string());
                for i in 0..table.sizes.len() {
                    out.push(',');
                    out.push_str(&cell(i, j));
                }
                out.push('\n');
            }
            out
        }
    }
}

/// `size,order_k,...` with `estimate / exact` for every size in the table.
pub fn render_ratio_csv(table: &ErrorTable, terms: usize, digits: u32) -> String {
    let mut out = header(table, terms, digits);
    out.push_str("size");
    for o in &table.orders {
        out.push_str(&format!(",order_{o}"));
    }
    out.push('\n');
    for (i, s) in table.sizes.iter().enumerate() {
        out.push_str(&s.to_string());
        for r in &table.ratio[i] {
            out.push(',');
            out.push_str(&r.to_table_string(12));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct VerifyJson {
    pub id: String,
    pub variety: String,
    pub source: String,
    pub checked: usize,
    pub first: Option<usize>,
    pub last: Option<usize>,
    pub mismatches: Vec<(usize, String, String)>,
}

pub fn verify_json(report: &VerifyReport, source: &str) -> VerifyJson {
    VerifyJson {
        id: report.id.clone(),
        variety: report.variety.name().to_string(),
        source: source.to_string(),
        checked: report.checked,
        first: report.range.map(|r| r.0),
        last: report.range.map(|r| r.1),
        mismatches: report
            .mismatches
            .iter()
            .map(|m| (m.n, m.expected.to_string(), m.computed.to_string()))
            .collect(),
    }
}

pub fn render_verify(reports: &[(VerifyReport, &str)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let docs: Vec<VerifyJson> = reports.iter().map(|(r, s)| verify_json(r, s)).collect();
            serde_json::to_string_pretty(&docs).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("id,variety,source,checked,first,last,mismatches\n");
            for (r, s) in reports {
                let (first, last) = r.range.map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.id,
                    r.variety.name(),
                    s,
                    r.checked,
                    first,
                    last,
                    r.mismatches.len()
                ));
            }
            out
        }
    }
}
