use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use entfluct::dimer::{dimer_concurrence, dimer_lambda_f, dimer_stats};
use entfluct::finite_chain::{chain_stats, ground_state, schmidt_spectrum, ChainSpec};
use entfluct::free_fermion::level_spacing;
use entfluct::generalized_entropy::{renyi, renyi_from_tsallis, tsallis, Source};
use entfluct::identities::{
    modulus_suite, coupling_suite, standard_k_grid, standard_lambda_grid, IdentityReport, IdentityTag,
};
use entfluct::infinite_entropy::{
    dispersion_series, entropy_series, find_lambda_f_infinite, find_lambda_m, stats,
};
use entfluct::solve::{linear_grid, log_grid};
use entfluct::{Coupling, EntropyStats};
use serde::Serialize;

use crate::args::*;
use crate::error::CliError;
use crate::output::{write_record, write_table, Table};

/// Couplings this close to 1 are dropped from infinite-chain grids.
pub const CRITICAL_SKIP: f64 = 1e-12;

const SERIES_TOL: f64 = 1e-16;

fn drop_critical(grid: Vec<f64>) -> Vec<f64> {
    grid.into_iter()
        .filter(|&l| {
            let skip = (l - 1.0).abs() <= CRITICAL_SKIP;
            if skip {
                eprintln!("note: skipping λ = {l} (critical point, S and D diverge)");
            }
            !skip
        })
        .collect()
}

fn infinite_row(lambda: f64, columns: &[Quantity]) -> Result<Vec<Option<f64>>, CliError> {
    let err = |e| CliError::at(lambda, e);
    let c = Coupling::new(lambda).map_err(err)?;
    let st = stats(&c).map_err(err)?;
    let mut row = vec![Some(lambda)];
    for q in columns {
        row.push(match q {
            Quantity::Eps => Some(level_spacing(&c).map_err(err)?),
            Quantity::S => Some(st.entropy),
            Quantity::SSeries => Some(entropy_series(&c, SERIES_TOL).map_err(err)?),
            Quantity::DS => Some(st.fluctuation),
            Quantity::DSSeries => Some(dispersion_series(&c, SERIES_TOL).map_err(err)?.sqrt()),
            Quantity::Delta => st.relative,
        });
    }
    if let Some(v) = row.iter().flatten().find(|v| !v.is_finite()) {
        return Err(CliError::Numerical {
            lambda: Some(lambda),
            message: format!("non-finite value {v}"),
        });
    }
    Ok(row)
}

fn infinite_table(grid: Vec<f64>, columns: &[Quantity]) -> Result<Table, CliError> {
    let mut names = vec!["lambda"];
    names.extend(columns.iter().map(|q| q.column()));
    let mut t = Table::new(names);
    for l in drop_critical(grid) {
        t.push(infinite_row(l, columns)?);
    }
    Ok(t)
}

pub fn sweep(a: &SweepArgs) -> Result<(), CliError> {
    if !(a.from.is_finite() && a.to.is_finite() && a.from > 0.0 && a.from < a.to) {
        return Err(CliError::usage(format!(
            "sweep range must satisfy 0 < from < to, got [{}, {}]",
            a.from, a.to
        )));
    }
    if a.points < 2 {
        return Err(CliError::usage("sweep needs at least 2 points"));
    }
    let mut cols = a.quantities.clone();
    if a.series {
        cols.extend([Quantity::SSeries, Quantity::DSSeries]);
    }
    cols.sort();
    cols.dedup();
    let grid = match a.scale {
        Scale::Linear => linear_grid(a.from, a.to, a.points),
        Scale::Log => log_grid(a.from, a.to, a.points),
    };
    let t = infinite_table(grid, &cols)?;
    write_table(&t, "sweep", a, a.out.format, a.out.output.as_deref())
}

/// Grid and columns behind each figure.
pub fn figure_table(tag: FigureTag) -> Result<Table, CliError> {
    use Quantity::*;
    match tag {
        FigureTag::Fig1 => {
            let mut t = Table::new(vec!["lambda", "S", "dS", "delta"]);
            for l in linear_grid(0.0, 6.0, 601) {
                let st = dimer_stats(l).map_err(|e| CliError::at(l, e))?;
                t.push(vec![Some(l), Some(st.entropy), Some(st.fluctuation), st.relative]);
            }
            Ok(t)
        }
        FigureTag::Fig2 => {
            let mut grid = log_grid(0.01, 100.0, 401);
            grid.extend([FRAC_1_SQRT_2, SQRT_2]);
            grid.sort_by(f64::total_cmp);
            infinite_table(grid, &[Eps])
        }
        FigureTag::Fig3 => infinite_table(linear_grid(0.01, 3.0, 300), &[S, DS]),
        FigureTag::Fig4 => infinite_table(linear_grid(0.01, 3.0, 300), &[Delta]),
        FigureTag::Fig5 => infinite_table(linear_grid(0.99, 1.03, 401), &[Delta]),
    }
}

pub fn figure(a: &FigureArgs) -> Result<(), CliError> {
    let t = figure_table(a.figure)?;
    write_table(&t, "figure", a, a.out.format, a.out.output.as_deref())
}

#[derive(Debug, Serialize)]
pub struct PointRecord {
    pub system: &'static str,
    pub lambda: f64,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub sites: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<usize>,
    /// Dimer only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    /// Infinite chain only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(flatten)]
    pub stats: EntropyStats,
}

fn finite_spec(sites: usize, lambda: f64, cut: Option<usize>) -> Result<ChainSpec, CliError> {
    let spec = ChainSpec::new(sites, lambda).map_err(|e| CliError::at(lambda, e))?;
    match cut {
        Some(c) => spec.with_cut(c).map_err(|e| CliError::at(lambda, e)),
        None => Ok(spec),
    }
}

pub fn point_record(
    lambda: f64,
    system: System,
    sites: Option<usize>,
    cut: Option<usize>,
) -> Result<PointRecord, CliError> {
    let err = |e| CliError::at(lambda, e);
    if let Some(l) = sites {
        let spec = finite_spec(l, lambda, cut)?;
        return Ok(PointRecord {
            system: "finite",
            lambda,
            sites: Some(l),
            cut: Some(spec.cut()),
            concurrence: None,
            eps: None,
            stats: chain_stats(&spec).map_err(err)?,
        });
    }
    Ok(match system {
        System::Dimer => PointRecord {
            system: "dimer",
            lambda,
            sites: None,
            cut: None,
            concurrence: Some(dimer_concurrence(lambda)),
            eps: None,
            stats: dimer_stats(lambda).map_err(err)?,
        },
        System::Infinite => {
            let c = Coupling::new(lambda).map_err(err)?;
            PointRecord {
                system: "infinite",
                lambda,
                sites: None,
                cut: None,
                concurrence: None,
                eps: Some(level_spacing(&c).map_err(err)?),
                stats: stats(&c).map_err(err)?,
            }
        }
    })
}

pub fn point(a: &PointArgs) -> Result<(), CliError> {
    let r = point_record(a.lambda, a.system, a.sites, a.cut)?;
    write_record("point", a, &r, None)
}

pub fn finite(a: &FiniteArgs) -> Result<(), CliError> {
    let r = point_record(a.lambda, System::Infinite, Some(a.sites), a.cut)?;
    write_record("point", a, &r, None)
}

#[derive(Debug, Serialize)]
pub struct RootRecord {
    pub which: RootTag,
    pub lambda: f64,
    /// What `value` holds: the common `S = ΔS` at a crossing, `δS` at the maximum.
    pub quantity: &'static str,
    pub value: f64,
    pub bracket_width: f64,
}

pub fn root_record(which: RootTag) -> Result<RootRecord, CliError> {
    let (lm, quantity) = match which {
        RootTag::DimerLf => (dimer_lambda_f(), "S"),
        RootTag::InfLf => (find_lambda_f_infinite(), "S"),
        RootTag::InfLm => (find_lambda_m(), "delta"),
    };
    let lm = lm.map_err(CliError::numerical)?;
    Ok(RootRecord {
        which,
        lambda: lm.lambda,
        quantity,
        value: lm.value,
        bracket_width: lm.bracket_width,
    })
}

pub fn roots(a: &RootsArgs) -> Result<(), CliError> {
    write_record("roots", a, &root_record(a.which)?, None)
}

#[derive(Debug, Serialize)]
pub struct FamilySummary {
    pub name: IdentityTag,
    pub checks: usize,
    pub max_defect: f64,
    /// Finite-difference floor below which the family cannot be resolved.
    pub resolution: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub families: Vec<FamilySummary>,
    pub reports: Vec<IdentityReport>,
}

const COUPLING_TAGS: [IdentityTag; 4] = [
    IdentityTag::SeriesEntropy,
    IdentityTag::SeriesDispersion,
    IdentityTag::EntropyChain,
    IdentityTag::DispersionChain,
];

pub fn verify_report(tol: f64, only: &[IdentityTag]) -> Result<VerifyReport, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::usage(format!("--tol must be positive, got {tol}")));
    }
    let mut families: Vec<IdentityTag> = if only.is_empty() {
        IdentityTag::MODULUS_FAMILIES.iter().chain(&COUPLING_TAGS).copied().collect()
    } else {
        only.to_vec()
    };
    families.dedup();
    let (per_lambda, per_k): (Vec<IdentityTag>, Vec<IdentityTag>) =
        families.iter().partition(|t| COUPLING_TAGS.contains(t));
    let mut reports = modulus_suite(&per_k, &standard_k_grid(), tol).map_err(CliError::numerical)?;
    reports.extend(coupling_suite(&per_lambda, &standard_lambda_grid(), tol).map_err(CliError::numerical)?);

    let summaries: Vec<FamilySummary> = families
        .iter()
        .map(|&tag| {
            let mine: Vec<&IdentityReport> = reports.iter().filter(|r| r.name == tag).collect();
            FamilySummary {
                name: tag,
                checks: mine.len(),
                max_defect: mine.iter().map(|r| r.defect).fold(0.0, f64::max),
                resolution: tag.resolution(),
                passed: mine.iter().all(|r| r.passes(tol)),
            }
        })
        .collect();
    let failures = reports.iter().filter(|r| !r.passes(tol)).count();
    Ok(VerifyReport {
        passed: failures == 0,
        checks: reports.len(),
        failures,
        families: summaries,
        reports,
    })
}

pub fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let report = verify_report(a.tol, &a.only)?;
    write_record("verify", a, &report, a.output.as_deref())?;
    if let Some(r) = report.reports.iter().find(|r| !r.passes(a.tol)) {
        let at = match r.lambda {
            Some(l) => format!("λ = {l}"),
            None => format!("k = {}", r.k),
        };
        return Err(CliError::Numerical {
            lambda: r.lambda,
            message: format!(
                "identity {} failed at {at}: defect {:e} ≥ tol {:e} ({} of {} checks failed)",
                r.name, r.defect, a.tol, report.failures, report.checks
            ),
        });
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct RenyiRecord {
    pub system: &'static str,
    pub lambda: f64,
    pub alpha: f64,
    pub renyi: f64,
    pub tsallis: f64,
    /// `|S_R(S_T) − S_R|` through the Rényi–Tsallis conversion.
    pub round_trip_residual: f64,
    pub von_neumann: f64,
}

pub fn renyi_record(a: &RenyiArgs) -> Result<RenyiRecord, CliError> {
    let err = |e| CliError::at(a.lambda, e);
    if !(a.alpha > 0.0 && a.alpha.is_finite()) {
        return Err(CliError::usage(format!("--alpha must be positive, got {}", a.alpha)));
    }
    let (system, source) = match (a.sites, a.system) {
        (Some(l), _) => {
            let spec = finite_spec(l, a.lambda, a.cut)?;
            let g = ground_state(&spec).map_err(err)?;
            let p = schmidt_spectrum(&g, spec.cut()).map_err(err)?;
            ("finite", Source::probabilities(p.into_probs()).map_err(err)?)
        }
        (None, System::Dimer) => ("dimer", Source::dimer(a.lambda).map_err(err)?),
        (None, System::Infinite) => ("infinite", Source::infinite(a.lambda).map_err(err)?),
    };
    let s = source.stats().map_err(err)?.entropy;
    if a.alpha == 1.0 {
        eprintln!("note: α = 1, reporting the von Neumann entropy");
        return Ok(RenyiRecord {
            system,
            lambda: a.lambda,
            alpha: 1.0,
            renyi: s,
            tsallis: s,
            round_trip_residual: 0.0,
            von_neumann: s,
        });
    }
    let r = renyi(&source, a.alpha).map_err(err)?;
    let t = tsallis(&source, a.alpha).map_err(err)?;
    let back = renyi_from_tsallis(t, a.alpha).map_err(err)?;
    Ok(RenyiRecord {
        system,
        lambda: a.lambda,
        alpha: a.alpha,
        renyi: r,
        tsallis: t,
        round_trip_residual: (back - r).abs(),
        von_neumann: s,
    })
}

pub fn renyi_cmd(a: &RenyiArgs) -> Result<(), CliError> {
    write_record("renyi", a, &renyi_record(a)?, None)
}
