use std::fmt::Write as _;

use hpm_taylor::verify::{DegreeStatus, EquivalenceReport, ResidualReport};
use hpm_taylor::{print_expr, Exactness, Expr, HpmExpansion, TaylorSolution, TimeSeriesVec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub order: usize,
    pub system_size: usize,
    /// `coefficients[j][i]` is component `i` of the `t^j` coefficient.
    pub coefficients: Vec<Vec<String>>,
    pub exact: bool,
    pub exact_reason: Option<Exactness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HpmOutput {
    pub corrections: usize,
    pub working_order: usize,
    /// `terms[j][d][i]`: correction `j`, degree `d`, component `i`.
    pub terms: Vec<Vec<Vec<String>>>,
    pub partial_sum: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpandOutput {
    pub expr: String,
    pub order: usize,
    pub coefficients: Vec<String>,
}

fn printed(series: &TimeSeriesVec) -> Vec<Vec<String>> {
    series
        .coeffs()
        .iter()
        .map(|c| c.iter().map(print_expr).collect())
        .collect()
}

fn vector_text(v: &[String]) -> String {
    if v.len() == 1 {
        v[0].clone()
    } else {
        format!("[{}]", v.join(", "))
    }
}

fn is_zero_text(v: &[String]) -> bool {
    v.iter().all(|s| s == "0")
}

impl SolveOutput {
    pub fn new(sol: &TaylorSolution) -> Self {
        SolveOutput {
            order: sol.series.order(),
            system_size: sol.series.system_size(),
            coefficients: printed(&sol.series),
            exact: sol.exact,
            exact_reason: sol.exact_reason,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (j, c) in self.coefficients.iter().enumerate() {
            writeln!(out, "u[{j}] = {}", vector_text(c)).unwrap();
        }
        match self.exact_reason {
            Some(reason) if self.exact => writeln!(out, "verdict: exact ({reason})").unwrap(),
            _ => writeln!(out, "verdict: not exact").unwrap(),
        }
        out
    }
}

impl HpmOutput {
    pub fn new(h: &HpmExpansion) -> Self {
        let j = h.max_correction();
        HpmOutput {
            corrections: j,
            working_order: h.working_order(),
            terms: h.corrections().iter().map(printed).collect(),
            partial_sum: printed(&h.partial_sum(2 * j + 1)),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (j, correction) in self.terms.iter().enumerate() {
            let nonzero: Vec<(usize, &Vec<String>)> = correction
                .iter()
                .enumerate()
                .filter(|(_, c)| !is_zero_text(c))
                .collect();
            if nonzero.is_empty() {
                writeln!(out, "u^({j}) = 0").unwrap();
            }
            for (d, c) in nonzero {
                writeln!(out, "u^({j})[{d}] = {}", vector_text(c)).unwrap();
            }
        }
        writeln!(out, "partial sum through degree {}:", self.partial_sum.len() - 1).unwrap();
        for (d, c) in self.partial_sum.iter().enumerate() {
            writeln!(out, "u[{d}] = {}", vector_text(c)).unwrap();
        }
        out
    }
}

impl ExpandOutput {
    pub fn new(expr: &Expr, order: usize, coefficients: &[Expr]) -> Self {
        ExpandOutput {
            expr: print_expr(expr),
            order,
            coefficients: coefficients.iter().map(print_expr).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        format!("[{}]\n", self.coefficients.join(", "))
    }
}

fn deviation(d: Option<f64>) -> String {
    match d {
        Some(v) => format!("{v:.3e}"),
        None => "n/a".into(),
    }
}

fn degree_table(rows: &[DegreeStatus]) -> String {
    let mut out = String::from("degree  status  max deviation\n");
    for s in rows {
        let status = if s.passed { "ok" } else { "FAIL" };
        writeln!(out, "{:>6}  {:<6}  {}", s.degree, status, deviation(s.max_deviation)).unwrap();
    }
    out
}

pub fn equivalence_text(r: &EquivalenceReport) -> String {
    let mut out = degree_table(&r.per_degree);
    let verdict = if r.equivalent { "yes" } else { "no" };
    writeln!(out, "equivalent with {} corrections: {verdict}", r.corrections).unwrap();
    out
}

pub fn residual_text(r: &ResidualReport) -> String {
    let mut out = degree_table(&r.per_order_status);
    let verdict = if r.overall { "pass" } else { "fail" };
    writeln!(
        out,
        "residual over degrees {}..={}: {verdict}",
        r.checked_orders.start, r.checked_orders.end
    )
    .unwrap();
    out
}
