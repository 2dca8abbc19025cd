use serde_json::{json, Value};
use sr_qsd::bounds::{
    cdf_bound, gap_at, gap_sup_bound, gap_sup_bound_exact, gap_xstar, gap_xstar_upper, pdf_bound_with_cdf, BoundKind,
    Target,
};
use sr_qsd::changepoint::sadd_report;
use sr_qsd::dist::{qsd_cdf, qsd_pdf, stationary_cdf, Representation};
use sr_qsd::eigen::{
    lambda_bracket_classic, lambda_lower_gamma, lambda_lower_moment, lambda_lower_simple, lambda_upper_e1,
    solve_lambda, EigenContext,
};
use sr_qsd::exec::Execution;
use sr_qsd::grid::{abscissae, GridKind};
use sr_qsd::mc::{simulate_killed_with, simulate_unrestricted_with, McConfig};
use sr_qsd::specfun::{QuadratureSpec, RootSpec};
use sr_qsd::Error;

use crate::table::{num, Column, Table};
use crate::CliError;

pub struct Settings {
    pub thresholds: Vec<f64>,
    pub grid_points: usize,
    pub grid_kind: GridKind,
    pub bounds: Vec<String>,
    pub quad: QuadratureSpec,
    pub root: RootSpec,
    pub exec: Execution,
    pub mc: McOverrides,
}

pub struct McOverrides {
    pub paths: usize,
    pub seed: u64,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub r0: f64,
    pub unrestricted: bool,
}

type Out<T> = Result<T, CliError>;

impl Settings {
    fn contexts(&self) -> Out<Vec<EigenContext>> {
        if self.thresholds.is_empty() {
            return Err(CliError::Usage("at least one --A is required".into()));
        }
        self.thresholds
            .iter()
            .map(|&a| solve_lambda(a, &self.root, &self.quad).map_err(CliError::from))
            .collect()
    }

    fn grid(&self, a: f64) -> Out<Vec<f64>> {
        Ok(abscissae(a, self.grid_points, self.grid_kind)?)
    }

    /// Requested bounds for `target`, or all of them. The flag marks an
    /// explicit request, which must be valid for every `A`.
    fn bounds_for(&self, target: Option<Target>) -> Out<Vec<(BoundKind, bool)>> {
        if self.bounds.is_empty() {
            return Ok(BoundKind::ALL
                .into_iter()
                .filter(|k| target.is_none_or(|t| k.target() == t))
                .map(|k| (k, false))
                .collect());
        }
        self.bounds
            .iter()
            .map(|name| {
                let found = match target {
                    Some(t) => BoundKind::ALL
                        .into_iter()
                        .find(|k| k.target() == t && k.name().eq_ignore_ascii_case(name)),
                    None => name.parse().ok(),
                };
                found.map(|k| (k, true)).ok_or_else(|| {
                    CliError::Usage(format!("unknown bound {name:?} for this command"))
                })
            })
            .collect()
    }
}

/// Map "not defined for this A" to NaN, keep real failures.
fn optional(r: sr_qsd::Result<f64>) -> sr_qsd::Result<f64> {
    match r {
        Err(Error::Regime { .. } | Error::Domain { .. }) => Ok(f64::NAN),
        other => other,
    }
}

fn one_or_many(v: Vec<Value>) -> Value {
    if v.len() == 1 {
        v.into_iter().next().unwrap()
    } else {
        Value::Array(v)
    }
}

fn describe(t: &mut Table, ctxs: &[EigenContext], seed: Option<u64>) {
    let m = &mut t.metadata;
    m.insert("A".into(), one_or_many(ctxs.iter().map(|c| num(c.threshold())).collect()));
    m.insert("lambda".into(), one_or_many(ctxs.iter().map(|c| num(c.lambda())).collect()));
    m.insert("regime".into(), one_or_many(ctxs.iter().map(|c| json!(c.regime().as_str())).collect()));
    m.insert(
        "versions".into(),
        json!({ "sr-qsd": sr_qsd::VERSION, "sr-qsd-cli": env!("CARGO_PKG_VERSION") }),
    );
    m.insert("seed".into(), seed.map_or(Value::Null, |s| json!(s)));
}

/// One table per context, stacked with a leading `A` column when there is
/// more than one.
fn stack<F>(ctxs: &[EigenContext], mut per_a: F) -> Out<Table>
where
    F: FnMut(&EigenContext) -> Out<Table>,
{
    let mut out = Table::default();
    for ctx in ctxs {
        let t = per_a(ctx)?;
        out.append(if ctxs.len() > 1 { t.with_leading("A", ctx.threshold()) } else { t });
    }
    Ok(out)
}

fn columns(names: &[&str], rows: Vec<Vec<f64>>) -> Table {
    let mut t = Table::default();
    for (j, n) in names.iter().enumerate() {
        t.push(*n, Column::Num(rows.iter().map(|r| r[j]).collect()));
    }
    t
}

pub fn lambda(s: &Settings) -> Out<Table> {
    let ctxs = s.contexts()?;
    let mut rows = Vec::new();
    for ctx in &ctxs {
        let a = ctx.threshold();
        let (lo, hi) = lambda_bracket_classic(a)?;
        rows.push(vec![
            a,
            ctx.lambda(),
            lo,
            hi,
            optional(lambda_lower_simple(a))?,
            optional(lambda_lower_moment(a))?,
            optional(lambda_lower_gamma(a, &s.quad))?,
            optional(lambda_upper_e1(a))?,
            ctx.residual(),
        ]);
    }
    let mut t = columns(
        &["A", "lambda", "bracket_lo", "bracket_hi", "lower_simple", "lower_moment", "lower_gamma", "upper_e1", "residual"],
        rows,
    );
    t.push("regime", Column::Text(ctxs.iter().map(|c| c.regime().as_str().to_string()).collect()));
    describe(&mut t, &ctxs, None);
    Ok(t)
}

/// Grid table of `x`, the truth columns, then each bound and its signed
/// error against the truth of its own target.
pub fn grid_table(s: &Settings, target: Option<Target>) -> Out<Table> {
    let ctxs = s.contexts()?;
    let kinds = s.bounds_for(target)?;
    let mut t = stack(&ctxs, |ctx| {
        for &(k, explicit) in &kinds {
            if explicit {
                ctx.require(k.name(), k.domain())?;
            }
        }
        let xs = s.grid(ctx.threshold())?;
        let rows = s.exec.try_map_slice(&xs, |&x| {
            let q = qsd_pdf(ctx, x, Representation::DerivativeForm)?;
            let big_q = qsd_cdf(ctx, x)?;
            let mut row = vec![x];
            match target {
                Some(Target::Pdf) => row.push(q),
                Some(Target::Cdf) => row.extend([big_q, stationary_cdf(x)]),
                None => row.extend([q, big_q]),
            }
            for &(k, _) in &kinds {
                let (b, truth) = if !ctx.satisfies(k.domain()) {
                    (f64::NAN, f64::NAN)
                } else if k.target() == Target::Pdf {
                    (pdf_bound_with_cdf(k, ctx, x, big_q, &s.quad)?, q)
                } else {
                    (cdf_bound(k, ctx, x, &s.quad)?, big_q)
                };
                row.extend([b, b - truth]);
            }
            Ok(row)
        })?;
        let mut names: Vec<String> = match target {
            Some(Target::Pdf) => vec!["x".into(), "q".into()],
            Some(Target::Cdf) => vec!["x".into(), "Q".into(), "H".into()],
            None => vec!["x".into(), "q".into(), "Q".into()],
        };
        for &(k, _) in &kinds {
            names.push(k.name().into());
            names.push(format!("{}_err", k.name()));
        }
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        Ok(columns(&names, rows))
    })?;
    describe(&mut t, &ctxs, None);
    Ok(t)
}

pub fn gap(s: &Settings) -> Out<Table> {
    let ctxs = s.contexts()?;
    let mut rows = Vec::new();
    for ctx in &ctxs {
        let a = ctx.threshold();
        let xs = s.grid(a)?;
        let sup = s
            .exec
            .try_map_slice(&xs, |&x| gap_at(ctx, x))?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        rows.push(vec![
            a,
            optional(gap_xstar(a, &s.root))?,
            optional(gap_xstar_upper(a))?,
            sup,
            optional(gap_sup_bound_exact(a, &s.root))?,
            optional(gap_sup_bound(a))?,
        ]);
    }
    let mut t = columns(&["A", "x_star", "x_star_upper", "grid_sup", "sup_bound_exact", "sup_bound"], rows);
    describe(&mut t, &ctxs, None);
    Ok(t)
}

pub fn sadd(s: &Settings) -> Out<Table> {
    let ctxs = s.contexts()?;
    let nan = |o: Option<f64>| o.unwrap_or(f64::NAN);
    let mut rows = Vec::new();
    for ctx in &ctxs {
        let r = sadd_report(ctx, &s.quad)?;
        rows.push(vec![
            r.threshold,
            r.lambda,
            r.sadd_exact,
            r.sadd_exact_cdf_form,
            nan(r.bound_gamma),
            nan(r.bound_simple),
            nan(r.bound_l5),
            r.quadrature_err,
        ]);
    }
    let mut t = columns(
        &["A", "lambda", "sadd_exact", "sadd_exact_cdf_form", "bound_gamma", "bound_simple", "bound_l5", "quadrature_err"],
        rows,
    );
    describe(&mut t, &ctxs, None);
    Ok(t)
}

struct Check {
    name: &'static str,
    a: f64,
    n_paths: usize,
    survivors: usize,
    statistic: f64,
    limit: f64,
}

/// Monte Carlo checks: KS against `Q_A` for each `A`, and with
/// `--unrestricted` also KS against `H` and the martingale mean.
pub fn validate(s: &Settings) -> Out<Table> {
    let ctxs = s.contexts()?;
    let m = &s.mc;
    let mut checks = Vec::new();
    for ctx in &ctxs {
        let a = ctx.threshold();
        let base = McConfig::killed(a)?;
        let cfg = McConfig {
            r0: m.r0,
            dt: m.dt.unwrap_or(base.dt),
            t_end: m.t_end.unwrap_or(base.t_end),
            n_paths: m.paths,
            seed: m.seed,
            ..base
        };
        let mut est = simulate_killed_with(&cfg, s.exec)?;
        let mut failure = None;
        let ks = est.compare_to(|x| {
            qsd_cdf(ctx, x).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                f64::NAN
            })
        });
        if let Some(e) = failure {
            return Err(e.into());
        }
        checks.push(Check {
            name: "killed_ks",
            a,
            n_paths: est.n_paths,
            survivors: est.survivors,
            statistic: ks,
            limit: 3.0 * est.max_std_err(),
        });
    }
    if m.unrestricted {
        let cfg = McConfig {
            n_paths: m.paths,
            seed: m.seed,
            ..McConfig::unrestricted()
        };
        let mut est = simulate_unrestricted_with(&cfg, s.exec)?;
        let ks = est.compare_to(stationary_cdf);
        checks.push(Check {
            name: "unrestricted_ks",
            a: f64::NAN,
            n_paths: est.n_paths,
            survivors: est.survivors,
            statistic: ks,
            limit: 3.0 * est.max_std_err(),
        });
        let cfg = McConfig {
            r0: 1.0,
            dt: 1e-3,
            t_end: 2.0,
            ..cfg
        };
        let est = simulate_unrestricted_with(&cfg, s.exec)?;
        checks.push(Check {
            name: "martingale_z",
            a: f64::NAN,
            n_paths: est.n_paths,
            survivors: est.survivors,
            statistic: ((est.mean_terminal - cfg.t_end - cfg.r0) / est.mean_std_err).abs(),
            limit: 4.0,
        });
    }

    let mut t = Table::default();
    t.push("check", Column::Text(checks.iter().map(|c| c.name.to_string()).collect()));
    t.push("A", Column::Num(checks.iter().map(|c| c.a).collect()));
    t.push("n_paths", Column::Int(checks.iter().map(|c| c.n_paths as u64).collect()));
    t.push("survivors", Column::Int(checks.iter().map(|c| c.survivors as u64).collect()));
    t.push("statistic", Column::Num(checks.iter().map(|c| c.statistic).collect()));
    t.push("limit", Column::Num(checks.iter().map(|c| c.limit).collect()));
    t.push(
        "pass",
        Column::Text(checks.iter().map(|c| (c.statistic <= c.limit).to_string()).collect()),
    );
    describe(&mut t, &ctxs, Some(m.seed));
    Ok(t)
}
