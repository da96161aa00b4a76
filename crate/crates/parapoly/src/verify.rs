//! Verification suites with machine-readable reports.
//!
//! Each suite runs a family of named checks and records pass/fail plus a
//! short detail string; a hard `Err` from a suite means the computation
//! itself could not be carried out (for example a window too small), not
//! that a property failed. Mismatches always come back as failed checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::bijection::{d2_to_r2, dv_forward, dv_inverse, r2_to_d2};
use crate::bijection::{catalan, central_binomial, left_factor_counts};
use crate::error::Result;
use crate::genfun::{area_series, perimeter_series};
use crate::oracle::{enumerate, survey_range, Measure, Survey};
use crate::polyomino::{GroupElement, Subgroup};
use crate::series::QPoly;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.into(),
            pass: true,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Wrapper emitted by the combined run.
#[derive(Clone, Debug, Serialize)]
pub struct CombinedReport {
    pub pass: bool,
    pub suites: Vec<Report>,
}

impl CombinedReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Path bijection exhaustively through `dv_max_hp`, and the half-turn /
/// antidiagonal fold exhaustively through `fold_max_hp`.
pub fn verify_bijection(dv_max_hp: i64, fold_max_hp: i64) -> Result<Report> {
    let mut report = Report::new("bijection");

    let mut dv_ok = true;
    let mut dv_detail = String::new();
    let mut pieces_seen = 0u64;
    'dv: for hp in 2..=dv_max_hp {
        let pieces = enumerate(Measure::HalfPerimeter, hp);
        let mut images = std::collections::BTreeSet::new();
        for p in &pieces {
            pieces_seen += 1;
            let path = dv_forward(p);
            if path.steps().len() as i64 != 2 * (hp - 1) {
                dv_ok = false;
                dv_detail = format!("length off at {p}");
                break 'dv;
            }
            if path.peak_height_sum() != p.area() {
                dv_ok = false;
                dv_detail = format!("peak heights miss the area at {p}");
                break 'dv;
            }
            if path.is_palindromic() != p.is_fixed(GroupElement::R2) {
                dv_ok = false;
                dv_detail = format!("palindromy disagrees with the half-turn at {p}");
                break 'dv;
            }
            match dv_inverse(&path) {
                Ok(back) if back == *p => {}
                _ => {
                    dv_ok = false;
                    dv_detail = format!("round trip failed at {p}");
                    break 'dv;
                }
            }
            if !images.insert(path.to_string()) {
                dv_ok = false;
                dv_detail = format!("two pieces share the path {path}");
                break 'dv;
            }
        }
        if dv_ok && BigInt::from(pieces.len()) != catalan(hp - 1) {
            dv_ok = false;
            dv_detail = format!("piece count at half-perimeter {hp} is not Catalan");
            break;
        }
    }
    report.push(
        format!("path encoding is a statistics-preserving bijection (hp <= {dv_max_hp})"),
        dv_ok,
        if dv_ok {
            format!("{pieces_seen} pieces checked")
        } else {
            dv_detail
        },
    );

    let mut fold_ok = true;
    let mut fold_detail = String::new();
    let mut folded = 0u64;
    'fold: for hp in (2..=fold_max_hp).step_by(2) {
        let pieces = enumerate(Measure::HalfPerimeter, hp);
        let mut images = std::collections::BTreeSet::new();
        let mut r2_count = 0u64;
        let mut d2_count = 0u64;
        for p in &pieces {
            if p.is_fixed(GroupElement::D2) {
                d2_count += 1;
            }
            if !p.is_fixed(GroupElement::R2) {
                continue;
            }
            r2_count += 1;
            folded += 1;
            let image = match r2_to_d2(p) {
                Ok(i) => i,
                Err(e) => {
                    fold_ok = false;
                    fold_detail = format!("fold failed at {p}: {e}");
                    break 'fold;
                }
            };
            if !image.is_fixed(GroupElement::D2)
                || image.half_perimeter() != p.half_perimeter()
                || image.area() != p.area()
            {
                fold_ok = false;
                fold_detail = format!("fold broke a statistic at {p}");
                break 'fold;
            }
            match d2_to_r2(&image) {
                Ok(back) if back == *p => {}
                _ => {
                    fold_ok = false;
                    fold_detail = format!("unfold failed at {p}");
                    break 'fold;
                }
            }
            if !images.insert(image.to_string()) {
                fold_ok = false;
                fold_detail = format!("two pieces fold onto {image}");
                break 'fold;
            }
        }
        if fold_ok && r2_count != d2_count {
            fold_ok = false;
            fold_detail = format!(
                "class sizes differ at half-perimeter {hp}: {r2_count} vs {d2_count}"
            );
            break;
        }
    }
    report.push(
        format!("antidiagonal fold is an area-preserving bijection (hp <= {fold_max_hp})"),
        fold_ok,
        if fold_ok {
            format!("{folded} pieces folded")
        } else {
            fold_detail
        },
    );

    Ok(report)
}

fn series_levels_hp(max_hp: i64) -> Result<BTreeMap<i64, [QPoly; 7]>> {
    let s = perimeter_series(max_hp)?;
    let mut out = BTreeMap::new();
    for h in 2..=max_hp {
        out.insert(
            h,
            [
                s.p.coeff(h)?,
                s.r2.coeff(h)?,
                s.d1.coeff(h)?,
                s.d2.coeff(h)?,
                s.orbits.coeff(h)?,
                s.d12.coeff(h)?,
                s.asym.coeff(h)?,
            ],
        );
    }
    Ok(out)
}

fn oracle_levels(survey: &Survey) -> Result<[QPoly; 7]> {
    let mut orbit_sum = QPoly::zero();
    for g in GroupElement::ALL {
        orbit_sum.add_assign(&survey.fix_area[&g]);
    }
    let four = BigInt::from(4u32);
    if !orbit_sum.divisible_by(&four) {
        return Err(crate::error::Error::NonIntegral(format!(
            "orbit histogram at {} {}",
            survey.measure.label(),
            survey.n
        )));
    }
    orbit_sum.divide_scalar(&four);
    Ok([
        survey.fix_area[&GroupElement::Identity].clone(),
        survey.fix_area[&GroupElement::R2].clone(),
        survey.fix_area[&GroupElement::D1].clone(),
        survey.fix_area[&GroupElement::D2].clone(),
        orbit_sum,
        survey.exact_area[&Subgroup::Full].clone(),
        survey.asym_area(),
    ])
}

const CLASS_NAMES: [&str; 7] = [
    "all pieces",
    "half-turn-fixed",
    "diagonal-fixed",
    "antidiagonal-fixed",
    "orbits",
    "doubly symmetric",
    "asymmetric",
];

/// Fixed-point histograms, orbit counts and the averaging identity:
/// generating functions against the enumerator, area-resolved in
/// half-perimeter mode and per-size in area mode.
pub fn verify_burnside(max_hp: i64, max_area: i64, jobs: Option<usize>) -> Result<Report> {
    let mut report = Report::new("burnside");

    let genfun = series_levels_hp(max_hp)?;
    let surveys = survey_range(Measure::HalfPerimeter, max_hp, jobs);
    let mut hist_ok = true;
    let mut hist_detail = String::new();
    let mut orbit_ok = true;
    let mut orbit_detail = String::new();
    for s in &surveys {
        let oracle = oracle_levels(s)?;
        let series = &genfun[&s.n];
        for (i, name) in CLASS_NAMES.iter().enumerate() {
            if i == 4 || i == 5 || i == 6 {
                continue; // orbit and stabilizer histograms are checked elsewhere
            }
            if oracle[i] != series[i] && hist_ok {
                hist_ok = false;
                hist_detail = format!(
                    "{name} at half-perimeter {}: {} vs {}",
                    s.n, series[i], oracle[i]
                );
            }
        }
        let burnside = s.orbits_burnside()?;
        let genfun_orbits = series[4].eval_one();
        if (burnside != s.orbits_canonical || genfun_orbits != burnside) && orbit_ok {
            orbit_ok = false;
            orbit_detail = format!(
                "half-perimeter {}: averaged {burnside}, canonical {}, series {genfun_orbits}",
                s.n, s.orbits_canonical
            );
        }
        if oracle[4] != series[4] && orbit_ok {
            orbit_ok = false;
            orbit_detail = format!(
                "orbit histogram at half-perimeter {}: {} vs {}",
                s.n, series[4], oracle[4]
            );
        }
    }
    report.push(
        format!("fixed-point histograms match the enumerator (hp <= {max_hp})"),
        hist_ok,
        if hist_ok { "area-resolved".into() } else { hist_detail.clone() },
    );
    report.push(
        format!("orbit counts agree three ways (hp <= {max_hp})"),
        orbit_ok,
        if orbit_ok {
            "averaged = canonical = series, area-resolved".into()
        } else {
            orbit_detail.clone()
        },
    );

    let genfun_area = area_series(max_area)?;
    let surveys = survey_range(Measure::Area, max_area, jobs);
    let mut area_ok = true;
    let mut area_detail = String::new();
    for s in &surveys {
        let oracle = oracle_levels(s)?;
        let series: [BigInt; 7] = [
            genfun_area.p.coeff(s.n),
            genfun_area.r2.coeff(s.n),
            genfun_area.d1.coeff(s.n),
            genfun_area.d2.coeff(s.n),
            genfun_area.orbits.coeff(s.n),
            genfun_area.d12.coeff(s.n),
            genfun_area.asym.coeff(s.n),
        ];
        for (i, name) in CLASS_NAMES.iter().enumerate() {
            let oracle_count = oracle[i].eval_one();
            if oracle_count != series[i] && area_ok {
                area_ok = false;
                area_detail = format!(
                    "{name} at area {}: {} vs {}",
                    s.n, series[i], oracle_count
                );
            }
        }
    }
    report.push(
        format!("all seven columns match the enumerator (area <= {max_area})"),
        area_ok,
        if area_ok { "exact".into() } else { area_detail },
    );

    Ok(report)
}

/// Stabilizer-class counts by inclusion-exclusion over the subgroup
/// lattice, against the enumerator's directly computed stabilizers.
pub fn verify_mobius(max_hp: i64, max_area: i64, jobs: Option<usize>) -> Result<Report> {
    let mut report = Report::new("mobius");

    for (measure, max) in [
        (Measure::HalfPerimeter, max_hp),
        (Measure::Area, max_area),
    ] {
        let surveys = survey_range(measure, max, jobs);
        let mut inv_ok = true;
        let mut inv_detail = String::new();
        let mut part_ok = true;
        let mut part_detail = String::new();
        for s in &surveys {
            // Inversion: each stabilizer class from the fixed-point data.
            let full = s.exact_area[&Subgroup::Full].clone();
            for g in [GroupElement::R2, GroupElement::D1, GroupElement::D2] {
                let mut expect = s.fix_area[&g].clone();
                expect.sub_assign(&full);
                let sub = match g {
                    GroupElement::R2 => Subgroup::R2,
                    GroupElement::D1 => Subgroup::D1,
                    GroupElement::D2 => Subgroup::D2,
                    GroupElement::Identity => unreachable!(),
                };
                if s.exact_area[&sub] != expect && inv_ok {
                    inv_ok = false;
                    inv_detail = format!(
                        "stabilizer <{g}> at {} {}: {} vs {}",
                        measure.label(),
                        s.n,
                        s.exact_area[&sub],
                        expect
                    );
                }
            }
            let mut trivial = s.fix_area[&GroupElement::Identity].clone();
            for g in [GroupElement::R2, GroupElement::D1, GroupElement::D2] {
                trivial.sub_assign(&s.fix_area[&g]);
            }
            let mut twice_full = full.clone();
            twice_full.scale(&BigInt::from(2u32));
            trivial.add_assign(&twice_full);
            if s.exact_area[&Subgroup::Trivial] != trivial && inv_ok {
                inv_ok = false;
                inv_detail = format!(
                    "trivial stabilizer at {} {}: {} vs {}",
                    measure.label(),
                    s.n,
                    s.exact_area[&Subgroup::Trivial],
                    trivial
                );
            }
            if !trivial.is_nonnegative() && inv_ok {
                inv_ok = false;
                inv_detail = format!("negative inversion at {} {}", measure.label(), s.n);
            }
            // Partition: the five stabilizer classes cover every piece once.
            let mut sum = QPoly::zero();
            for sub in Subgroup::ALL {
                sum.add_assign(&s.exact_area[&sub]);
            }
            if sum != s.fix_area[&GroupElement::Identity] && part_ok {
                part_ok = false;
                part_detail = format!("partition failed at {} {}", measure.label(), s.n);
            }
        }
        report.push(
            format!("inversion matches direct stabilizers ({} <= {max})", measure.label()),
            inv_ok,
            if inv_ok { "area-resolved".into() } else { inv_detail },
        );
        report.push(
            format!("stabilizer classes partition the pieces ({} <= {max})", measure.label()),
            part_ok,
            if part_ok { "all sizes".into() } else { part_detail },
        );
    }

    // Series-side inversion against the enumerator's stabilizer classes.
    let s = perimeter_series(max_hp)?;
    let surveys = survey_range(Measure::HalfPerimeter, max_hp, jobs);
    let mut series_ok = true;
    let mut series_detail = String::new();
    for sv in &surveys {
        let d12 = s.d12.coeff(sv.n)?;
        let asym = s.asym.coeff(sv.n)?;
        if d12 != sv.exact_area[&Subgroup::Full] && series_ok {
            series_ok = false;
            series_detail = format!(
                "doubly symmetric series at half-perimeter {}: {} vs {}",
                sv.n, d12, sv.exact_area[&Subgroup::Full]
            );
        }
        if asym != sv.asym_area() && series_ok {
            series_ok = false;
            series_detail = format!(
                "asymmetric series at half-perimeter {}: {} vs {}",
                sv.n,
                asym,
                sv.asym_area()
            );
        }
    }
    report.push(
        format!("series-side inversion matches the enumerator (hp <= {max_hp})"),
        series_ok,
        if series_ok { "area-resolved".into() } else { series_detail },
    );

    // Closed forms: half-turn column, and the doubly symmetric column
    // against the left-factor counts, via the series at q = 1.
    let mut closed_ok = true;
    let mut closed_detail = String::new();
    let prefixes = left_factor_counts(max_hp.max(3) - 1);
    for h in 2..=max_hp {
        let r2_count = s.r2.coeff(h)?.eval_one();
        let want = central_binomial(h - 1);
        if r2_count != want {
            closed_ok = false;
            closed_detail = format!("half-turn count at {h}: {r2_count} vs {want}");
            break;
        }
        let d12_count = s.d12.coeff(h)?.eval_one();
        let want = if h % 2 == 0 {
            prefixes[((h - 2) / 2) as usize].clone()
        } else {
            BigInt::zero()
        };
        if d12_count != want {
            closed_ok = false;
            closed_detail = format!("doubly symmetric count at {h}: {d12_count} vs {want}");
            break;
        }
    }
    report.push(
        format!("closed forms match the series at q = 1 (hp <= {max_hp})"),
        closed_ok,
        if closed_ok {
            "binomial and path-prefix counts".into()
        } else {
            closed_detail
        },
    );

    Ok(report)
}

/// Growth-rate, decay and dominance checks on the exact tables, plus the
/// crude counting bounds that drive them, checked against the enumerator.
pub fn verify_asymptotics(ineq_max_area: i64, jobs: Option<usize>) -> Result<Report> {
    let mut report = Report::new("asymptotics");
    let _ = jobs;

    // Growth rate of the area totals against the known decimal expansion
    // of the growth constant, checked by exact cross-multiplication.
    let a = area_series(23)?;
    let p22 = a.p.coeff(22);
    let p23 = a.p.coeff(23);
    let mu_num = BigInt::from(230_913_859_330i64);
    let mu_den = BigInt::from(10i64).pow(11);
    let lhs = ((&p23 * &mu_den) - (&mu_num * &p22)).abs() * BigInt::from(200u32);
    let rhs = &mu_den * &p22;
    let ratio_ok = lhs < rhs;
    report.push(
        "area-total growth ratio is within 5e-3 of the growth constant",
        ratio_ok,
        format!("{p23}/{p22} vs 2.30913859330"),
    );

    // Symmetric fractions decay: for each nontrivial class, the share at
    // the largest size is below its share at the largest size at most
    // half as big with a nonzero count.
    let hp = perimeter_series(20)?;
    let hp_cols: Vec<(&str, Vec<BigInt>)> = vec![
        ("half-turn-fixed", (2..=20).map(|h| hp.r2.coeff(h).unwrap().eval_one()).collect()),
        ("diagonal-fixed", (2..=20).map(|h| hp.d1.coeff(h).unwrap().eval_one()).collect()),
        ("antidiagonal-fixed", (2..=20).map(|h| hp.d2.coeff(h).unwrap().eval_one()).collect()),
    ];
    let hp_total: Vec<BigInt> = (2..=20).map(|h| hp.p.coeff(h).unwrap().eval_one()).collect();
    let area_cols: Vec<(&str, Vec<BigInt>)> = vec![
        ("half-turn-fixed", (1..=23).map(|n| a.r2.coeff(n)).collect()),
        ("diagonal-fixed", (1..=23).map(|n| a.d1.coeff(n)).collect()),
        ("antidiagonal-fixed", (1..=23).map(|n| a.d2.coeff(n)).collect()),
    ];
    let area_total: Vec<BigInt> = (1..=23).map(|n| a.p.coeff(n)).collect();

    let mut decay_ok = true;
    let mut decay_detail = String::new();
    for (measure, min_size, cols, totals) in [
        (Measure::HalfPerimeter, 2i64, &hp_cols, &hp_total),
        (Measure::Area, 1i64, &area_cols, &area_total),
    ] {
        let n_max = min_size + totals.len() as i64 - 1;
        for (name, col) in cols {
            let half = min_size + ((n_max - min_size) + 1) / 2;
            let s = (min_size..=half)
                .rev()
                .find(|&s| !col[(s - min_size) as usize].is_zero());
            let Some(s) = s else {
                decay_ok = false;
                decay_detail = format!("{name}: no nonzero count up to {half}");
                continue;
            };
            let f_n = &col[(n_max - min_size) as usize];
            let f_s = &col[(s - min_size) as usize];
            let t_n = &totals[(n_max - min_size) as usize];
            let t_s = &totals[(s - min_size) as usize];
            if f_n * t_s >= f_s * t_n {
                decay_ok = false;
                decay_detail = format!(
                    "{name} by {} did not decay from {s} to {n_max}",
                    measure.label()
                );
            }
        }
    }
    report.push(
        "symmetric shares decay from half size to full size",
        decay_ok,
        if decay_ok {
            "both measures, all three classes".into()
        } else {
            decay_detail
        },
    );

    // Dominance: almost every piece is asymmetric by half-perimeter 20.
    let asym20 = hp.asym.coeff(20)?.eval_one();
    let total20 = hp.p.coeff(20)?.eval_one();
    let dom_ok = &asym20 * BigInt::from(1000u32) >= &total20 * BigInt::from(999u32);
    report.push(
        "asymmetric share at half-perimeter 20 is at least 99.9%",
        dom_ok,
        format!("{asym20} of {total20}"),
    );

    // Counting bounds behind the decay argument, on enumerated data:
    // even-width half-turn-fixed pieces of area n are at most (n/2) times
    // the pieces of area n/2 (and absent for odd n); each diagonal class
    // at area n is at most the piece count at area ceil(3n/4), plus one.
    let mut even_r2 = BTreeMap::new();
    let mut d1_fix = BTreeMap::new();
    let mut d2_fix = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for n in 1..=ineq_max_area {
        even_r2.insert(n, 0u64);
        d1_fix.insert(n, 0u64);
        d2_fix.insert(n, 0u64);
        totals.insert(n, 0u64);
        for p in enumerate(Measure::Area, n) {
            *totals.get_mut(&n).unwrap() += 1;
            if p.is_fixed(GroupElement::R2) && p.width() % 2 == 0 {
                *even_r2.get_mut(&n).unwrap() += 1;
            }
            if p.is_fixed(GroupElement::D1) {
                *d1_fix.get_mut(&n).unwrap() += 1;
            }
            if p.is_fixed(GroupElement::D2) {
                *d2_fix.get_mut(&n).unwrap() += 1;
            }
        }
    }
    let mut bound_ok = true;
    let mut bound_detail = String::new();
    for n in 1..=ineq_max_area {
        if n % 2 == 1 {
            if even_r2[&n] != 0 {
                bound_ok = false;
                bound_detail = format!("odd area {n} has an even-width half-turn-fixed piece");
                break;
            }
        } else {
            let allowed = (n as u64 / 2) * totals[&(n / 2)];
            if even_r2[&n] > allowed {
                bound_ok = false;
                bound_detail =
                    format!("even-width half-turn-fixed at area {n}: {} > {allowed}", even_r2[&n]);
                break;
            }
        }
        let cap_idx = (3 * n + 3) / 4;
        let cap = totals[&cap_idx] + 1;
        if d1_fix[&n] > cap || d2_fix[&n] > cap {
            bound_ok = false;
            bound_detail = format!(
                "diagonal bound at area {n}: {} and {} vs {cap}",
                d1_fix[&n], d2_fix[&n]
            );
            break;
        }
    }
    report.push(
        format!("counting bounds hold on enumerated pieces (area <= {ineq_max_area})"),
        bound_ok,
        if bound_ok { "all areas".into() } else { bound_detail },
    );

    Ok(report)
}

/// All four suites with the given limits.
pub fn verify_all(
    dv_max_hp: i64,
    fold_max_hp: i64,
    max_hp: i64,
    max_area: i64,
    ineq_max_area: i64,
    jobs: Option<usize>,
) -> Result<CombinedReport> {
    let suites = vec![
        verify_bijection(dv_max_hp, fold_max_hp)?,
        verify_burnside(max_hp, max_area, jobs)?,
        verify_mobius(max_hp, max_area, jobs)?,
        verify_asymptotics(ineq_max_area, jobs)?,
    ];
    Ok(CombinedReport {
        pass: suites.iter().all(|r| r.pass),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_suite_passes() {
        let r = verify_bijection(8, 8).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn burnside_suite_passes() {
        let r = verify_burnside(9, 9, Some(2)).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn mobius_suite_passes() {
        let r = verify_mobius(9, 9, Some(2)).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn asymptotics_suite_passes() {
        let r = verify_asymptotics(10, Some(2)).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn report_serializes_with_names() {
        let r = verify_bijection(4, 4).unwrap();
        let text = r.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["suite"], "bijection");
        assert_eq!(parsed["pass"], true);
        assert!(parsed["checks"].as_array().unwrap().len() >= 2);
    }
}
