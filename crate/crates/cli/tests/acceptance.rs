//! One line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::LN_2;
use std::process::{Command, ExitCode};

use entfluct::dimer::{concurrence_of_state, dimer_concurrence, dimer_ground, dimer_lambda_f, dimer_stats};
use entfluct::finite_chain::{
    chain_stats, entropy_stats_from_spectrum, ground_state, max_fluctuation_position,
    schmidt_spectrum, ChainSpec, DEFAULT_PEAK_RANGE,
};
use entfluct::generalized_entropy::{moment_by_alpha_derivative, tsallis, tsallis_moment_expansion, Source};
use entfluct::identities::{modulus_suite, standard_k_grid, standard_lambda_grid, IdentityTag};
use entfluct::infinite_entropy::{
    dispersion_closed, dispersion_series, entropy_closed, entropy_series, find_lambda_f_infinite,
    find_lambda_m, stats_at,
};
use entfluct::Coupling;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(name: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(format!("{name} = {got:.7}"))
    } else {
        Err(format!("{name} = {got} not within {tol:e} of {want}"))
    }
}

fn landmarks() -> Outcome {
    let mut notes = Vec::new();
    let lf = dimer_lambda_f().map_err(|e| e.to_string())?;
    notes.push(within("dimer λ_f", lf.lambda, 2.9447, 5e-4)?);
    let lf = find_lambda_f_infinite().map_err(|e| e.to_string())?;
    notes.push(within("infinite λ_f", lf.lambda, 0.999951, 1e-5)?);
    let lm = find_lambda_m().map_err(|e| e.to_string())?;
    notes.push(within("λ_m", lm.lambda, 1.0044, 1e-3)?);
    notes.push(within("δS_m", lm.value, 0.7957, 5e-4)?);
    let s = stats_at(1e6).map_err(|e| e.to_string())?.entropy;
    if !(LN_2 - 1e-6..=LN_2).contains(&s) {
        return Err(format!("S(1e6) = {s} outside [ln 2 − 1e-6, ln 2]"));
    }
    notes.push(format!("S(1e6) = {s}"));
    Ok(notes.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let grid = standard_lambda_grid();
    let (mut ws, mut wd) = (0.0f64, 0.0f64);
    for &l in &grid {
        let c = Coupling::new(l).map_err(|e| e.to_string())?;
        let e = |x: entfluct::Error| format!("λ = {l}: {x}");
        ws = ws.max((entropy_closed(&c).map_err(e)? - entropy_series(&c, 1e-16).map_err(e)?).abs());
        wd = wd.max((dispersion_closed(&c).map_err(e)? - dispersion_series(&c, 1e-16).map_err(e)?).abs());
    }
    let msg = format!("{} couplings, max |ΔS| {ws:.1e}, max |ΔD| {wd:.1e}", grid.len());
    if grid.len() == 200 && ws < 1e-10 && wd < 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn critical_asymptotics() -> Outcome {
    let unit = 10f64.ln() / 12.0;
    let mut notes = Vec::new();
    for side in [-1.0, 1.0] {
        let at = |d: f64| stats_at(1.0 + side * d).map_err(|e| e.to_string());
        let (a, b) = (at(1e-6)?, at(1e-7)?);
        let ss = (b.entropy - a.entropy) / unit;
        let sd = (b.dispersion - a.dispersion) / unit;
        let ratio = sd / ss;
        notes.push(format!("side {side:+}: S {ss:.5}, D {sd:.5}, ratio {ratio:.5}"));
        if !((0.999..=1.001).contains(&ss) && (0.999..=1.001).contains(&sd) && (0.99..=1.01).contains(&ratio)) {
            return Err(notes.join("; "));
        }
    }
    Ok(notes.join("; "))
}

fn identity_suite() -> Outcome {
    let reports = modulus_suite(&IdentityTag::MODULUS_FAMILIES, &standard_k_grid(), 1e-11).map_err(|e| e.to_string())?;
    let mut worst = (0.0f64, 0.0f64);
    for r in &reports {
        let derivative = matches!(r.name, IdentityTag::DqDk | IdentityTag::DiDk);
        let bound = if derivative { 1e-6 } else { 1e-11 };
        if r.defect >= bound {
            return Err(format!("{} at k = {}: defect {:e}", r.name, r.k, r.defect));
        }
        let slot = if derivative { &mut worst.1 } else { &mut worst.0 };
        *slot = slot.max(r.defect);
    }
    Ok(format!(
        "{} checks, max defect {:.1e} (identities), {:.1e} (derivatives)",
        reports.len(),
        worst.0,
        worst.1
    ))
}

fn cross_module() -> Outcome {
    let err = |e: entfluct::Error| e.to_string();
    let mut worst = 0.0f64;
    for i in 0..50 {
        let l = 0.1 * (i + 1) as f64;
        let spec = ChainSpec::new(2, l).map_err(err)?;
        let g = ground_state(&spec).map_err(err)?;
        let amps = [g.amplitudes[0], g.amplitudes[1], g.amplitudes[2], g.amplitudes[3]];
        let c = concurrence_of_state(&amps).map_err(err)?;
        let (fs, ds) = (chain_stats(&spec).map_err(err)?, dimer_stats(l).map_err(err)?);
        let dg = dimer_ground(l).map_err(err)?;
        let diffs = [
            c - dimer_concurrence(l),
            fs.entropy - ds.entropy,
            fs.fluctuation - ds.fluctuation,
            g.energy - dg.energy,
        ];
        worst = diffs.iter().fold(worst, |m, d| m.max(d.abs()));
    }
    if worst >= 1e-10 {
        return Err(format!("L = 2 vs dimer max difference {worst:e}"));
    }
    let mut sym = 0.0f64;
    for l in [0.5, 1.0, 2.0] {
        let g = ground_state(&ChainSpec::new(10, l).map_err(err)?).map_err(err)?;
        for cut in 1..10 {
            let a = entropy_stats_from_spectrum(&schmidt_spectrum(&g, cut).map_err(err)?).map_err(err)?;
            let b = entropy_stats_from_spectrum(&schmidt_spectrum(&g, 10 - cut).map_err(err)?).map_err(err)?;
            sym = sym.max((a.entropy - b.entropy).abs());
        }
    }
    let msg = format!("L = 2 vs dimer max diff {worst:.1e}; L = 10 cut asymmetry {sym:.1e}");
    if sym < 1e-12 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn finite_size_drift() -> Outcome {
    let err = |e: entfluct::Error| e.to_string();
    let p4 = max_fluctuation_position(4, DEFAULT_PEAK_RANGE).map_err(err)?;
    let p8 = max_fluctuation_position(8, DEFAULT_PEAK_RANGE).map_err(err)?;
    let s_inf = entropy_closed(&Coupling::new(0.5).map_err(err)?).map_err(err)?;
    let mut gaps = Vec::new();
    for l in [6, 8, 10, 12] {
        gaps.push((chain_stats(&ChainSpec::new(l, 0.5).map_err(err)?).map_err(err)?.entropy - s_inf).abs());
    }
    let drift = (p8.lambda - 1.0).abs() < (p4.lambda - 1.0).abs();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let msg = format!(
        "argmax(4) = {:.5}, argmax(8) = {:.5}, |S(12) − S_∞(0.5)| = {:.2e}, gaps decreasing: {monotone}",
        p4.lambda, p8.lambda, gaps[3]
    );
    if drift && monotone && gaps[3] < 1e-2 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn moments() -> Outcome {
    let err = |e: entfluct::Error| e.to_string();
    let mut worst = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    for l in [0.5, 2.0] {
        for src in [Source::dimer(l).map_err(err)?, Source::infinite(l).map_err(err)?] {
            let st = src.stats().map_err(err)?;
            let m1 = moment_by_alpha_derivative(&src, 1).map_err(err)?;
            let m2 = moment_by_alpha_derivative(&src, 2).map_err(err)?;
            worst = worst.max((m1 - st.entropy).abs()).max((m2 - st.dispersion - st.entropy.powi(2)).abs());
            let e = |a: f64| -> Result<f64, String> {
                Ok((tsallis(&src, a).map_err(err)? - tsallis_moment_expansion(&src, a).map_err(err)?).abs())
            };
            min_ratio = min_ratio.min(e(1.02)? / e(1.01)?);
        }
    }
    let msg = format!("max moment error {worst:.1e}, min Tsallis error ratio {min_ratio:.3}");
    if worst < 1e-5 && min_ratio >= 3.5 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_entfluct"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn determinism() -> Outcome {
    let mut notes = Vec::new();
    for args in [&["verify"][..], &["figure", "fig3"][..]] {
        let a = run_cli(args)?;
        let b = run_cli(args)?;
        if a != b {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        if a.1 != Some(0) || a.0.is_empty() {
            return Err(format!("`{}` exited with {:?}", args.join(" "), a.1));
        }
        notes.push(format!("`{}` {} bytes identical", args.join(" "), a.0.len()));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("landmark constants", landmarks),
        ("oracle equivalence", oracle_equivalence),
        ("critical asymptotics", critical_asymptotics),
        ("modulus identity suite", identity_suite),
        ("cross-module consistency", cross_module),
        ("finite-size drift", finite_size_drift),
        ("moment machinery", moments),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("criterion {} PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
