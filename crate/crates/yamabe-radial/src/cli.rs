//! Command-line front end: `check`, `solve`, `continue`, `bubble-scan`,
//! `oracle`. Exit codes: 0 success, 1 runtime/numeric failure, 2 hypothesis
//! not satisfied, 3 acceptance gap exceeded, 64 config/usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bubbles::{self, BubbleFamily};
use crate::coeffs::CoefficientField;
use crate::config::{fmt_f64, GammaChoice, RunConfig};
use crate::error::{Error, Result};
use crate::linsolve;
use crate::mesh::RadialMesh;
use crate::problem::{assemble, DiscreteProblem};
use crate::solver::{self, ConstraintSpec, SolveOptions, SolveResult};
use crate::special;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_GAP: i32 = 3;
pub const EXIT_CONFIG: i32 = 64;

const DEFAULT_GAP_THRESHOLD: f64 = 0.05;

struct Flags {
    config: Option<PathBuf>,
    out: PathBuf,
    seed: Option<u64>,
    force: bool,
    jobs: usize,
    gap_threshold: f64,
    positional: Vec<String>,
}

fn parse_flags(args: &[String]) -> std::result::Result<Flags, String> {
    let mut flags = Flags {
        config: None,
        out: PathBuf::from("out"),
        seed: None,
        force: false,
        jobs: 1,
        gap_threshold: DEFAULT_GAP_THRESHOLD,
        positional: Vec::new(),
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut grab = |name: &str| -> std::result::Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("flag {name} needs a value"))
        };
        match arg.as_str() {
            "--config" => flags.config = Some(PathBuf::from(grab("--config")?)),
            "--out" => flags.out = PathBuf::from(grab("--out")?),
            "--seed" => {
                flags.seed = Some(
                    grab("--seed")?
                        .parse()
                        .map_err(|_| "--seed expects an integer".to_string())?,
                )
            }
            "--force" => flags.force = true,
            "--jobs" => {
                flags.jobs = grab("--jobs")?
                    .parse()
                    .map_err(|_| "--jobs expects a positive integer".to_string())?;
                if flags.jobs == 0 {
                    return Err("--jobs must be at least 1".into());
                }
            }
            "--gap-threshold" => {
                flags.gap_threshold = grab("--gap-threshold")?
                    .parse()
                    .map_err(|_| "--gap-threshold expects a number".to_string())?;
            }
            other if other.starts_with("--") => return Err(format!("unknown flag {other}")),
            other => flags.positional.push(other.to_string()),
        }
    }
    Ok(flags)
}

const USAGE: &str = "usage: yamabe-radial <check|solve|continue|bubble-scan|oracle> \
[--config PATH] [--out DIR] [--seed N] [--force] [--jobs N] [--gap-threshold X] [args...]";

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run_with_args(&args, &mut std::io::stdout()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) => EXIT_CONFIG,
                _ => EXIT_RUNTIME,
            }
        }
    }
}

/// Testable core of `run`.
pub fn run_with_args(args: &[String], out: &mut dyn Write) -> Result<i32> {
    let Some(command) = args.first() else {
        writeln!(out, "{USAGE}")?;
        return Ok(EXIT_CONFIG);
    };
    let flags = parse_flags(&args[1..]).map_err(Error::Config)?;
    match command.as_str() {
        "check" => cmd_check(&flags, out),
        "solve" => cmd_solve(&flags, out),
        "continue" => cmd_continue(&flags, out),
        "bubble-scan" => cmd_bubble_scan(&flags, out),
        "oracle" => cmd_oracle(&flags, out),
        other => Err(Error::Config(format!("unknown command '{other}'\n{USAGE}"))),
    }
}

fn load_config(flags: &Flags) -> Result<RunConfig> {
    let path = flags
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config PATH is required for this command".into()))?;
    let mut config = RunConfig::parse_file(path)?;
    if let Some(seed) = flags.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn build_problem(config: &RunConfig) -> Result<DiscreteProblem> {
    let mesh = RadialMesh::uniform(&config.manifold, config.mesh_n)?;
    assemble(&config.manifold, &config.coeffs, &mesh)
}

/// Everything the hypothesis section of a run report needs.
struct Hypotheses {
    coercive: bool,
    lambda_min: f64,
    /// None when the geometry has no interior center (annulus) or n = 3.
    h_report: Option<bubbles::HReport>,
    /// Resolved gamma together with the feasibility thresholds it must exceed;
    /// None when the operator is not coercive (no extension available).
    gamma_block: Option<GammaBlock>,
}

struct GammaBlock {
    h: Vec<f64>,
    gamma: f64,
    crit_integral: f64,
    sub_integral: f64,
    q: f64,
    holds: bool,
}

fn evaluate_hypotheses(config: &RunConfig, p: &DiscreteProblem) -> Result<Hypotheses> {
    let coerc = linsolve::coercivity_check(p, linsolve::COERCIVITY_TOL);
    let h_report = if config.manifold.is_ball() && config.manifold.n >= 4 {
        Some(bubbles::h_condition(&config.manifold, &config.coeffs)?)
    } else {
        None
    };
    let gamma_block = if coerc.coercive {
        let h = linsolve::extend_boundary_data(p, &config.phi)?;
        let zeros = vec![0.0; h.len()];
        let two_sharp = special::critical_exponent(config.manifold.n);
        let crit_integral = p.constraint_value_unchecked(&zeros, &h, two_sharp);
        let gamma = match config.gamma {
            GammaChoice::Value(g) => g,
            GammaChoice::Auto => {
                if config.phi.iter().all(|&v| v == 0.0) {
                    1.0
                } else {
                    2.0 * crit_integral
                }
            }
        };
        let q = config.resolve_q();
        let sub_integral = p.constraint_value_unchecked(&zeros, &h, q);
        let holds = gamma > crit_integral && gamma > sub_integral;
        Some(GammaBlock {
            h,
            gamma,
            crit_integral,
            sub_integral,
            q,
            holds,
        })
    } else {
        None
    };
    Ok(Hypotheses {
        coercive: coerc.coercive,
        lambda_min: coerc.lambda_min,
        h_report,
        gamma_block,
    })
}

fn hypothesis_section(config: &RunConfig, hyp: &Hypotheses) -> (String, bool) {
    let mut text = String::new();
    let mut all_hold = true;
    text.push_str(&format!(
        "coercive = {} (lambda_min = {})\n",
        hyp.coercive,
        fmt_f64(hyp.lambda_min)
    ));
    all_hold &= hyp.coercive;
    match &hyp.h_report {
        Some(r) => {
            text.push_str(&format!(
                "H(x0) = {} (condition satisfied = {})\n",
                fmt_f64(r.h),
                r.satisfied
            ));
            all_hold &= r.satisfied;
        }
        None => {
            // evaluated only on balls of dimension >= 4; does not gate the verdict
            text.push_str("H(x0) = not applicable (requires a ball with n >= 4)\n");
        }
    }
    match &hyp.gamma_block {
        Some(g) => {
            text.push_str(&format!(
                "gamma = {} (int f|h|^2sharp = {}, int f|h|^q = {} at q = {}, condition holds = {})\n",
                fmt_f64(g.gamma),
                fmt_f64(g.crit_integral),
                fmt_f64(g.sub_integral),
                fmt_f64(g.q),
                g.holds
            ));
            all_hold &= g.holds;
        }
        None => {
            text.push_str("gamma condition = not evaluated (operator not coercive)\n");
            all_hold = false;
        }
    }
    if config.manifold.is_ball() && config.phi.iter().any(|&v| v != 0.0) {
        text.push_str(
            "note: ball geometry carries a single boundary value; \
             the boundary data cannot change sign\n",
        );
    }
    (text, all_hold)
}

fn config_header(config: &RunConfig) -> String {
    let mut text = String::from("# resolved configuration\n");
    for line in config.serialize().lines() {
        text.push_str(&format!("#   {line}\n"));
    }
    text.push_str(&format!("#   resolved.q = {}\n", fmt_f64(config.resolve_q())));
    let schedule: Vec<String> = config.resolve_schedule().iter().map(|&q| fmt_f64(q)).collect();
    text.push_str(&format!("#   resolved.q_schedule = {}\n", schedule.join(", ")));
    text.push_str(&format!(
        "#   resolved.delta = {}\n",
        fmt_f64(config.resolve_delta())
    ));
    let eps: Vec<String> = config.resolve_epsilons().iter().map(|&e| fmt_f64(e)).collect();
    text.push_str(&format!("#   resolved.epsilons = {}\n", eps.join(", ")));
    text
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), content)?;
    Ok(())
}

fn cmd_check(flags: &Flags, out: &mut dyn Write) -> Result<i32> {
    let config = load_config(flags)?;
    let p = build_problem(&config)?;
    let hyp = evaluate_hypotheses(&config, &p)?;
    let (section, all_hold) = hypothesis_section(&config, &hyp);
    let mut report = config_header(&config);
    report.push_str(&section);
    report.push_str(&format!("verdict = {}\n", if all_hold { "ok" } else { "failed" }));
    write!(out, "{report}")?;
    write_file(&flags.out, "check_summary.txt", &report)?;
    Ok(if all_hold { EXIT_OK } else { EXIT_HYPOTHESIS })
}

/// Run `count` independent minimizations (warm start plus seeded random
/// feasible starts), at most `jobs` at a time; the lowest-energy converged
/// result wins, ties broken by start index for determinism.
fn solve_with_restarts(
    p: &DiscreteProblem,
    spec: &ConstraintSpec,
    w0: &[f64],
    opts: &SolveOptions,
    jobs: usize,
) -> Result<SolveResult> {
    let mut starts: Vec<Vec<f64>> = vec![w0.to_vec()];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        let mut w = vec![0.0; p.node_count()];
        for i in p.interior() {
            w[i] = rng.gen_range(-1.0..1.0);
        }
        starts.push(w);
    }
    let single = SolveOptions {
        restarts: 0,
        ..*opts
    };
    let results = parallel_map(starts, jobs, |_idx, start| {
        solver::minimize_subcritical(p, spec, &start, &single)
    });
    let mut best: Option<SolveResult> = None;
    for res in results {
        let res = res?;
        best = match best {
            Some(prev) if prev.mu <= res.mu => Some(prev),
            _ => Some(res),
        };
    }
    Ok(best.expect("at least one start"))
}

fn parallel_map<T, R, F>(items: Vec<T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(usize, T) -> R + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.into_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let items: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    let queue = Mutex::new(items);
    let counter = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let item = queue.lock().unwrap().pop();
                let Some((idx, t)) = item else { break };
                let r = f(idx, t);
                slots.lock().unwrap()[idx] = Some(r);
                counter.fetch_add(1, Ordering::SeqCst);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("worker filled every slot"))
        .collect()
}

fn solve_context(
    flags: &Flags,
) -> Result<(RunConfig, DiscreteProblem, Hypotheses, String, bool)> {
    let config = load_config(flags)?;
    let p = build_problem(&config)?;
    let hyp = evaluate_hypotheses(&config, &p)?;
    let (section, _) = hypothesis_section(&config, &hyp);
    // solvability needs coercivity and the gamma condition; H(x0) is part of
    // the nontriviality analysis and is reported but does not gate the solve
    let solvable = hyp.coercive && hyp.gamma_block.as_ref().is_some_and(|g| g.holds);
    Ok((config, p, hyp, section, solvable))
}

fn cmd_solve(flags: &Flags, out: &mut dyn Write) -> Result<i32> {
    let (config, p, hyp, section, solvable) = solve_context(flags)?;
    if !solvable && !flags.force {
        write!(out, "{section}")?;
        writeln!(out, "hypotheses not satisfied; rerun with --force to solve anyway")?;
        return Ok(EXIT_HYPOTHESIS);
    }
    let g = hyp
        .gamma_block
        .as_ref()
        .ok_or(Error::NotCoercive { lambda_min: hyp.lambda_min })?;

    let q = config.resolve_q();
    let spec = ConstraintSpec::new(&p, g.gamma, q, g.h.clone())?;
    let psi1 = linsolve::first_eigenpair(&p, 1e-12)?;
    let start = solver::feasible_point(&p, &spec, &psi1)?;
    let opts = SolveOptions {
        tol: config.tol,
        max_iters: config.max_iters,
        restarts: config.restarts,
        seed: config.seed,
    };
    let res = solve_with_restarts(&p, &spec, &start.w0, &opts, flags.jobs)?;

    // trace CSV
    let mut trace = String::from("iter,energy,constraint_gap,step\n");
    for row in &res.trace {
        trace.push_str(&format!(
            "{},{},{},{}\n",
            row.iter,
            fmt_f64(row.energy),
            fmt_f64(row.constraint_gap),
            fmt_f64(row.step)
        ));
    }
    write_file(&flags.out, "solve_trace.csv", &trace)?;

    // solution CSV
    let mut solution = String::from("r,w,h,u\n");
    for (i, &r) in p.mesh.nodes().iter().enumerate() {
        solution.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(r),
            fmt_f64(res.w[i]),
            fmt_f64(g.h[i]),
            fmt_f64(res.w[i] + g.h[i])
        ));
    }
    write_file(&flags.out, "solve_solution.csv", &solution)?;

    let gap = (p.constraint_value_unchecked(&res.w, &g.h, q) - g.gamma).abs() / g.gamma;
    let nontrivial = solver::nontriviality_condition(&p, &spec, res.mu)?;
    let bound_lhs = p.lq_norm_pow(&res.w, q);
    let bound_rhs = 2f64.powf(q - 1.0) * g.gamma
        / p.coeffs.min_f(config.manifold.r_min, config.manifold.r_max);

    let mut summary = config_header(&config);
    summary.push_str(&section);
    summary.push_str(&format!("q = {}\n", fmt_f64(q)));
    summary.push_str(&format!("mu = {}\n", fmt_f64(res.mu)));
    summary.push_str(&format!("lambda = {}\n", fmt_f64(res.lambda)));
    summary.push_str(&format!("residual = {}\n", fmt_f64(res.residual)));
    summary.push_str(&format!("iterations = {}\n", res.iterations));
    summary.push_str(&format!("constraint_gap = {}\n", fmt_f64(gap)));
    summary.push_str(&format!(
        "feasible_start: t = {}, I(t psi1) = {}\n",
        fmt_f64(start.t),
        fmt_f64(p.energy(&start.w0)?)
    ));
    summary.push_str(&format!(
        "sign_changes = {}\n",
        if res.sign_changes.is_empty() {
            "none".to_string()
        } else {
            res.sign_changes
                .iter()
                .map(|(a, b)| format!("({}, {})", fmt_f64(*a), fmt_f64(*b)))
                .collect::<Vec<_>>()
                .join("; ")
        }
    ));
    summary.push_str(&format!(
        "nontriviality_value = {} (satisfied = {})\n",
        fmt_f64(nontrivial.value),
        nontrivial.satisfied
    ));
    summary.push_str(&format!(
        "lq_bound: int |w|^q dv = {} <= {} (holds = {})\n",
        fmt_f64(bound_lhs),
        fmt_f64(bound_rhs),
        bound_lhs <= bound_rhs
    ));
    write!(out, "{summary}")?;
    write_file(&flags.out, "solve_summary.txt", &summary)?;
    Ok(EXIT_OK)
}

fn cmd_continue(flags: &Flags, out: &mut dyn Write) -> Result<i32> {
    let (config, p, hyp, section, solvable) = solve_context(flags)?;
    if !solvable && !flags.force {
        write!(out, "{section}")?;
        writeln!(out, "hypotheses not satisfied; rerun with --force to solve anyway")?;
        return Ok(EXIT_HYPOTHESIS);
    }
    let g = hyp
        .gamma_block
        .as_ref()
        .ok_or(Error::NotCoercive { lambda_min: hyp.lambda_min })?;
    let schedule = config.resolve_schedule();
    let opts = SolveOptions {
        tol: config.tol,
        max_iters: config.max_iters,
        restarts: config.restarts,
        seed: config.seed,
    };
    let results = solver::continuation_to_critical(&p, g.gamma, &g.h, &schedule, &opts)?;

    let mut csv = String::from("q,mu,lambda,residual\n");
    for (q, r) in &results {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(*q),
            fmt_f64(r.mu),
            fmt_f64(r.lambda),
            fmt_f64(r.residual)
        ));
    }
    write_file(&flags.out, "continue.csv", &csv)?;

    let (_, last) = results.last().expect("schedule validated nonempty");
    let u: Vec<f64> = last.w.iter().zip(&g.h).map(|(w, h)| w + h).collect();
    let sign = solver::detect_sign_change(&p, &u);
    let mut summary = config_header(&config);
    summary.push_str(&section);
    summary.push_str(&format!("steps = {}\n", results.len()));
    summary.push_str(&format!("final_mu = {}\n", fmt_f64(last.mu)));
    summary.push_str(&format!("final_lambda = {}\n", fmt_f64(last.lambda)));
    summary.push_str(&format!("final_residual = {}\n", fmt_f64(last.residual)));
    summary.push_str(&format!(
        "lambda_all_positive = {}\n",
        results.iter().all(|(_, r)| r.lambda > 0.0)
    ));
    summary.push_str(&format!("critical_sign_changes = {}\n", sign.changes));
    write!(out, "{summary}")?;
    write_file(&flags.out, "continue_summary.txt", &summary)?;
    Ok(EXIT_OK)
}

fn cmd_bubble_scan(flags: &Flags, out: &mut dyn Write) -> Result<i32> {
    let config = load_config(flags)?;
    if !config.manifold.is_ball() {
        return Err(Error::Config(
            "bubble-scan requires ball geometry (manifold.r_min = 0)".into(),
        ));
    }
    let fam = BubbleFamily::new(
        config.manifold,
        config.coeffs.clone(),
        config.resolve_delta(),
        config.resolve_epsilons(),
    )?;
    let rows_res = parallel_map(fam.epsilons.clone(), flags.jobs, |_i, eps| fam.eps_row(eps));
    let mut rows = Vec::with_capacity(rows_res.len());
    for r in rows_res {
        rows.push(r?);
    }
    let report = bubbles::fit_expansion_from_rows(&fam, rows)?;

    let mut csv = String::from("epsilon,mu_eps,gamma_eps,Q_eps\n");
    for row in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(row.epsilon),
            fmt_f64(row.mu),
            fmt_f64(row.gamma),
            fmt_f64(row.quotient)
        ));
    }
    write_file(&flags.out, "bubble_scan.csv", &csv)?;

    let mut text = config_header(&config);
    text.push_str(&format!(
        "branch = {}\n",
        match report.branch {
            bubbles::Branch::PowerLaw => "eps^2 (n > 4)",
            bubbles::Branch::Logarithmic => "eps^2 log(1/eps^2) (n = 4)",
        }
    ));
    text.push_str(&format!("H(x0) = {}\n", fmt_f64(report.h_value)));
    text.push_str(&format!(
        "condition_satisfied = {}\n",
        report.condition_satisfied
    ));
    text.push_str(&format!(
        "fitted_coefficient = {}\n",
        fmt_f64(report.fitted_coefficient)
    ));
    text.push_str(&format!(
        "predicted_coefficient = {}\n",
        fmt_f64(report.predicted_coefficient)
    ));
    text.push_str(&format!(
        "fitted_leading_term = {}\n",
        fmt_f64(report.fitted_leading)
    ));
    match report.relative_gap {
        Some(gap) => text.push_str(&format!("relative_gap = {}\n", fmt_f64(gap))),
        None => text.push_str("relative_gap = degenerate: coefficient below noise floor\n"),
    }
    if let Some(audit) = &report.r_sign_audit {
        text.push_str(&format!(
            "curvature_sign_audit: predicted with -R = {}, with +R = {}; \
             the data supports the {} sign\n",
            fmt_f64(audit.predicted_minus_r),
            fmt_f64(audit.predicted_plus_r),
            if audit.supports_minus_r { "-R" } else { "+R" }
        ));
    }
    text.push_str(&format!(
        "gap_threshold = {}\n",
        fmt_f64(flags.gap_threshold)
    ));
    let exceeded = report
        .relative_gap
        .map(|gap| gap > flags.gap_threshold)
        .unwrap_or(false);
    text.push_str(&format!(
        "verdict = {}\n",
        if exceeded { "gap exceeded" } else { "ok" }
    ));
    write!(out, "{text}")?;
    write_file(&flags.out, "bubble_scan_report.txt", &text)?;
    Ok(if exceeded { EXIT_GAP } else { EXIT_OK })
}

fn cmd_oracle(flags: &Flags, out: &mut dyn Write) -> Result<i32> {
    let args = &flags.positional;
    let usage = "oracle <aubin p q | omega n | k0 n | two-sharp n | lambda1 n r_min r_max>";
    let Some(what) = args.first() else {
        return Err(Error::Config(format!("missing oracle kind\n{usage}")));
    };
    let num = |i: usize, name: &str| -> Result<f64> {
        args.get(i)
            .ok_or_else(|| Error::Config(format!("oracle: missing argument {name}\n{usage}")))?
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("oracle: argument {name} must be a number")))
    };
    match what.as_str() {
        "aubin" => {
            let (p, q) = (num(1, "p")?, num(2, "q")?);
            let v = special::aubin(p, q)?;
            writeln!(out, "I_{p}^{q} = {}", fmt_f64(v))?;
        }
        "omega" => {
            let n = num(1, "n")? as u32;
            writeln!(out, "omega_{n} = {}", fmt_f64(special::sphere_volume(n)?))?;
        }
        "k0" => {
            let n = num(1, "n")? as u32;
            writeln!(out, "K0({n}) = {}", fmt_f64(special::best_sobolev_constant(n)?))?;
        }
        "two-sharp" => {
            let n = num(1, "n")? as u32;
            if n < 3 {
                return Err(Error::Config("two-sharp requires n >= 3".into()));
            }
            writeln!(out, "2sharp({n}) = {}", fmt_f64(special::critical_exponent(n)))?;
        }
        "lambda1" => {
            let n = num(1, "n")? as u32;
            let (r_min, r_max) = (num(2, "r_min")?, num(3, "r_max")?);
            let m = crate::geometry::RadialManifold::new(n, 0.0, r_min, r_max)?;
            let c = CoefficientField::new(
                crate::coeffs::EvenPolynomial::constant(1.0),
                crate::coeffs::EvenPolynomial::constant(0.0),
                crate::coeffs::EvenPolynomial::constant(1.0),
            );
            let mesh = RadialMesh::uniform(&m, 2000)?;
            let p = assemble(&m, &c, &mesh)?;
            let pair = linsolve::first_eigenpair(&p, 1e-12)?;
            writeln!(
                out,
                "lambda1(flat, n={n}, [{r_min}, {r_max}], N=2000) = {}",
                fmt_f64(pair.eigenvalue)
            )?;
        }
        other => {
            return Err(Error::Config(format!("unknown oracle '{other}'\n{usage}")));
        }
    }
    Ok(EXIT_OK)
}
