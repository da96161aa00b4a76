//! Count tables: one row per size, seven exact columns, with byte-stable
//! CSV, JSON and aligned-text renderings and a diff between two builds.
//!
//! Column order is fixed: the four fixed-point counts in group order, the
//! orbit count, the count of pieces whose stabilizer is the full group,
//! and the asymmetric count. All cells are exact integers; JSON renders
//! them as decimal strings so arbitrary precision survives any parser.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genfun::{area_series, perimeter_series};
use crate::oracle::{survey_range, Measure};
use crate::polyomino::{GroupElement, Subgroup};

/// Column headers, in emission order, after the leading size column.
pub const COLUMNS: [&str; 7] = [
    "Fix1", "FixR2", "FixD1", "FixD2", "Orbits", "FixD2grp", "Asym",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub size: i64,
    pub cells: [BigInt; 7],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub measure: Measure,
    pub rows: Vec<TableRow>,
}

impl CountTable {
    /// Table from the generating-function side, sizes from the measure's
    /// minimum through `max`.
    pub fn build_genfun(measure: Measure, max: i64) -> Result<CountTable> {
        let mut rows = Vec::new();
        match measure {
            Measure::HalfPerimeter => {
                let s = perimeter_series(max)?;
                for h in 2..=max {
                    let cells = [
                        s.p.coeff(h)?.eval_one(),
                        s.r2.coeff(h)?.eval_one(),
                        s.d1.coeff(h)?.eval_one(),
                        s.d2.coeff(h)?.eval_one(),
                        s.orbits.coeff(h)?.eval_one(),
                        s.d12.coeff(h)?.eval_one(),
                        s.asym.coeff(h)?.eval_one(),
                    ];
                    rows.push(TableRow { size: h, cells });
                }
            }
            Measure::Area => {
                let s = area_series(max)?;
                for n in 1..=max {
                    let cells = [
                        s.p.coeff(n),
                        s.r2.coeff(n),
                        s.d1.coeff(n),
                        s.d2.coeff(n),
                        s.orbits.coeff(n),
                        s.d12.coeff(n),
                        s.asym.coeff(n),
                    ];
                    rows.push(TableRow { size: n, cells });
                }
            }
        }
        Ok(CountTable { measure, rows })
    }

    /// Table from the brute-force enumerator.
    pub fn build_oracle(measure: Measure, max: i64, jobs: Option<usize>) -> Result<CountTable> {
        let surveys = survey_range(measure, max, jobs);
        let mut rows = Vec::new();
        for s in surveys {
            let orbits = s.orbits_burnside()?;
            if orbits != s.orbits_canonical {
                return Err(Error::CrossCheckFailed(format!(
                    "orbit counts disagree at {} {}: averaged {} vs canonical {}",
                    s.measure.label(),
                    s.n,
                    orbits,
                    s.orbits_canonical
                )));
            }
            let cells = [
                s.fix_count(GroupElement::Identity),
                s.fix_count(GroupElement::R2),
                s.fix_count(GroupElement::D1),
                s.fix_count(GroupElement::D2),
                orbits,
                s.exact_count(Subgroup::Full),
                s.exact_count(Subgroup::Trivial),
            ];
            rows.push(TableRow { size: s.n, cells });
        }
        Ok(CountTable { measure, rows })
    }

    /// Human-readable mismatches between two tables (same measure); empty
    /// means the tables agree on their common rows and have equal extent.
    pub fn diff(&self, other: &CountTable) -> Vec<String> {
        let mut out = Vec::new();
        if self.rows.len() != other.rows.len() {
            out.push(format!(
                "row counts differ: {} vs {}",
                self.rows.len(),
                other.rows.len()
            ));
        }
        for (a, b) in self.rows.iter().zip(&other.rows) {
            if a.size != b.size {
                out.push(format!("row sizes differ: {} vs {}", a.size, b.size));
                continue;
            }
            for (i, name) in COLUMNS.iter().enumerate() {
                if a.cells[i] != b.cells[i] {
                    out.push(format!(
                        "{} {}: {} is {} vs {}",
                        self.measure.label(),
                        a.size,
                        name,
                        a.cells[i],
                        b.cells[i]
                    ));
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("Size,Fix1,FixR2,FixD1,FixD2,Orbits,FixD2grp,Asym\n");
        for row in &self.rows {
            out.push_str(&row.size.to_string());
            for cell in &row.cells {
                out.push(',');
                out.push_str(&cell.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut rows = Vec::new();
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            obj.insert("size".into(), serde_json::Value::from(row.size));
            for (i, name) in COLUMNS.iter().enumerate() {
                obj.insert(
                    (*name).into(),
                    serde_json::Value::from(row.cells[i].to_string()),
                );
            }
            rows.push(serde_json::Value::Object(obj));
        }
        let doc = serde_json::json!({
            "measure": self.measure.label(),
            "columns": COLUMNS,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }

    pub fn to_pretty(&self) -> String {
        let size_header = match self.measure {
            Measure::HalfPerimeter => "HalfPerim",
            Measure::Area => "Area",
        };
        let mut headers: Vec<String> = vec![size_header.to_string()];
        headers.extend(COLUMNS.iter().map(|c| c.to_string()));
        let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
        let mut grid: Vec<Vec<String>> = Vec::new();
        for row in &self.rows {
            let mut cells = vec![row.size.to_string()];
            cells.extend(row.cells.iter().map(|c| c.to_string()));
            for (i, cell) in cells.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
            grid.push(cells);
        }
        let mut out = String::new();
        let render = |cells: &[String], widths: &[usize], out: &mut String| {
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                for _ in 0..widths[i] - cell.len() {
                    out.push(' ');
                }
                out.push_str(cell);
            }
            out.push('\n');
        };
        render(&headers, &widths, &mut out);
        for cells in &grid {
            render(cells, &widths, &mut out);
        }
        out
    }

    /// The named column as (size, value) pairs.
    pub fn column(&self, name: &str) -> Option<Vec<(i64, BigInt)>> {
        let idx = COLUMNS.iter().position(|c| *c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| (r.size, r.cells[idx].clone()))
                .collect(),
        )
    }
}

/// Every size of the measure from its minimum through `max` must appear
/// exactly once, with a nonnegative Fix1 at least as large as every other
/// fixed-point column.
pub fn check_table_shape(table: &CountTable, max: i64) -> Result<()> {
    let mut expect = table.measure.min_value();
    for row in &table.rows {
        if row.size != expect {
            return Err(Error::CrossCheckFailed(format!(
                "table rows skip {} {}",
                table.measure.label(),
                expect
            )));
        }
        for (i, cell) in row.cells.iter().enumerate() {
            if cell < &BigInt::zero() {
                return Err(Error::NegativeCount(format!(
                    "column {} at size {}",
                    COLUMNS[i], row.size
                )));
            }
            if i >= 1 && i <= 3 && cell > &row.cells[0] {
                return Err(Error::CrossCheckFailed(format!(
                    "column {} exceeds the total at size {}",
                    COLUMNS[i], row.size
                )));
            }
        }
        expect += 1;
    }
    if expect != max + 1 {
        return Err(Error::CrossCheckFailed(format!(
            "table ends at {} instead of {}",
            expect - 1,
            max
        )));
    }
    Ok(())
}
