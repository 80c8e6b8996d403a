use std::io::Write;
use std::path::Path;

use latticecount::oracle::BruteForce;
use latticecount::polygon::{boundary_count, count_closure_polygon, count_interior_polygon};
use latticecount::quasipoly::interpolate;
use latticecount::rational::{format_rational, int};
use latticecount::triangle::{count_closure_triangle, count_interior_triangle};
use latticecount::{Counter, DilationVector, Error, Mode, PolygonSpec, TriangleDilation, TriangleSpec};

use crate::input::{parse_polygon, parse_simplex, SimplexProblem};
use crate::report::Report;
use crate::{Cli, CliError, Command, Engine, Family, ModeArg};

/// Largest box the `auto` engine enumerates for its cross-check.
pub const AUTO_CHECK_CELLS: u128 = 1_000_000;

/// What a command prints, plus a verification failure to report after
/// printing.
pub struct Output {
    pub report: Report,
    pub human: String,
    pub mismatch: Option<String>,
}

impl Output {
    fn new(report: Report, human: String) -> Self {
        Output {
            report,
            human,
            mismatch: None,
        }
    }
}

pub fn execute(cli: &Cli, budget: u128, out: &mut dyn Write) -> Result<(), CliError> {
    let output = match &cli.command {
        Command::Count { file, mode, engine } => count(&load_simplex(file)?, *mode, *engine, budget)?,
        Command::Reciprocity { file } => reciprocity(&load_simplex(file)?)?,
        Command::Triangle {
            a1,
            a2,
            c1,
            c2,
            t1,
            t2,
            t3,
            mode,
            check,
        } => {
            let spec = TriangleSpec::new(*a1, *a2, *c1, *c2)?;
            triangle(&spec, TriangleDilation::new(*t1, *t2, *t3), *mode, *check, budget)?
        }
        Command::Polygon { file, mode, check } => polygon(&load_polygon(file)?, *mode, *check, budget)?,
        Command::Interpolate {
            file,
            period,
            degree,
            family,
            mode,
        } => fit(&load_simplex(file)?, period, *degree, *family, *mode)?,
    };
    let text = if cli.machine {
        output.report.render()
    } else {
        output.human
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Failure(format!("write failed: {e}")))?;
    match output.mismatch {
        Some(m) => Err(CliError::Mismatch(m)),
        None => Ok(()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_simplex(path: &Path) -> Result<SimplexProblem, CliError> {
    parse_simplex(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_polygon(path: &Path) -> Result<PolygonSpec, CliError> {
    parse_polygon(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Interior => "interior",
        ModeArg::Closure => "closure",
    }
}

fn core_mode(mode: ModeArg) -> Mode {
    match mode {
        ModeArg::Interior => Mode::Interior,
        ModeArg::Closure => Mode::Closure,
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn oracle_count(oracle: &BruteForce, p: &SimplexProblem, mode: ModeArg) -> latticecount::Result<u64> {
    match mode {
        ModeArg::Interior => oracle.count_interior(&p.system, &p.t),
        ModeArg::Closure => oracle.count_closure(&p.system, &p.t),
    }
}

pub fn count(p: &SimplexProblem, mode: ModeArg, engine: Engine, budget: u128) -> Result<Output, CliError> {
    let validity = p.system.validate_dilation(&p.t)?;
    if !validity.nonempty {
        return Err(CliError::InvalidDilation(format!("t = {} gives an empty region", p.t)));
    }
    let mut report = Report::new("count");
    report.push("mode", mode_name(mode));
    report.push("engine", format!("{engine:?}").to_lowercase());
    report.push("n", p.system.dim());
    report.push("t", join(p.t.as_slice()));
    report.push("full_dimensional", validity.full_dimensional);
    let recursion = || -> Result<i128, CliError> {
        let counter = Counter::new(p.system.clone())?;
        Ok(match mode {
            ModeArg::Interior => counter.count_interior(&p.t)?,
            ModeArg::Closure => counter.count_closure(&p.t)?,
        })
    };
    let value = match engine {
        Engine::Recursion => recursion()?,
        Engine::Oracle => oracle_count(&BruteForce::new(budget), p, mode)? as i128,
        Engine::Auto => {
            let value = recursion()?;
            let small = BruteForce::new(budget.min(AUTO_CHECK_CELLS));
            match oracle_count(&small, p, mode) {
                Ok(o) if o as i128 == value => report.push("oracle", o),
                Ok(o) => {
                    return Err(CliError::Mismatch(format!("recursion gives {value}, brute force gives {o}")))
                }
                Err(Error::BudgetExceeded { .. }) => report.push("oracle", "skipped"),
                Err(e) => return Err(e.into()),
            }
            value
        }
    };
    report.push("count", value);
    Ok(Output::new(report, format!("{value}\n")))
}

pub fn reciprocity(p: &SimplexProblem) -> Result<Output, CliError> {
    let counter = Counter::new(p.system.clone())?;
    let r = counter.reciprocity(&p.t)?;
    let status = if r.holds() { "PASS" } else { "FAIL" };
    let mut report = Report::new("reciprocity");
    report.push("n", p.system.dim());
    report.push("t", join(p.t.as_slice()));
    report.push("interior_at_negated", r.interior_at_negated);
    report.push("signed_closure", r.signed_closure);
    report.push("status", status);
    let human = format!(
        "L°(-t) = {}\n(-1)^{} L(t) = {}\n{status}\n",
        r.interior_at_negated,
        p.system.dim(),
        r.signed_closure
    );
    let mut output = Output::new(report, human);
    if !r.holds() {
        output.mismatch = Some(format!(
            "reciprocity fails: {} != {}",
            r.interior_at_negated, r.signed_closure
        ));
    }
    Ok(output)
}

pub fn triangle(
    spec: &TriangleSpec,
    dil: TriangleDilation,
    mode: ModeArg,
    check: bool,
    budget: u128,
) -> Result<Output, CliError> {
    let value = match mode {
        ModeArg::Interior => count_interior_triangle(spec, &dil)?,
        ModeArg::Closure => count_closure_triangle(spec, &dil)?,
    };
    let mut report = Report::new("triangle");
    report.push("a", format!("{},{}", spec.a1, spec.a2));
    report.push("c", format!("{},{}", spec.c1, spec.c2));
    report.push("t", format!("{},{},{}", dil.t1, dil.t2, dil.t3));
    report.push("mode", mode_name(mode));
    report.push("count", value);
    let mut output = Output::new(report, format!("{value}\n"));
    if check {
        let problem = SimplexProblem {
            system: spec.simplex_system(),
            t: spec.dilation_vector(&dil),
            b: vec![],
        };
        let oracle = oracle_count(&BruteForce::new(budget), &problem, mode)?;
        output.report.push("oracle", oracle);
        output.human.push_str(&format!("oracle {oracle}\n"));
        if oracle as i128 != value {
            output.mismatch = Some(format!("closed form gives {value}, brute force gives {oracle}"));
        }
    }
    Ok(output)
}

pub fn polygon(poly: &PolygonSpec, mode: ModeArg, check: bool, budget: u128) -> Result<Output, CliError> {
    let closure = count_closure_polygon(poly)?;
    let interior = count_interior_polygon(poly)?;
    let value = match mode {
        ModeArg::Interior => interior,
        ModeArg::Closure => closure,
    };
    let mut report = Report::new("polygon");
    report.push("vertices", poly.vertices().len());
    report.push("mode", mode_name(mode));
    report.push("closure", closure);
    report.push("interior", interior);
    report.push("boundary", boundary_count(poly));
    report.push("area", format_rational(&poly.area()));
    report.push("count", value);
    let mut output = Output::new(report, format!("{value}\n"));
    if check {
        let (oc, oi) = BruteForce::new(budget).count_polygon(poly)?;
        output.report.push("oracle", if mode == ModeArg::Closure { oc } else { oi });
        output
            .human
            .push_str(&format!("oracle {}\n", if mode == ModeArg::Closure { oc } else { oi }));
        if (oc, oi) != (closure, interior) {
            output.mismatch = Some(format!(
                "decomposition gives ({closure}, {interior}), brute force gives ({oc}, {oi})"
            ));
        }
    }
    Ok(output)
}

/// Holdout points away from the interpolation nodes, on both sides of 0.
fn holdout_points(nvars: usize, periods: &[u64], degree: u32) -> Vec<Vec<i64>> {
    let reach = periods.iter().map(|&p| p as i64).max().unwrap_or(1) * (degree as i64 + 3);
    let count = 2 * periods.iter().product::<u64>().min(32) as i64 + 8;
    (0..count)
        .map(|j| {
            (0..nvars)
                .map(|i| {
                    let step = j + 3 * i as i64;
                    if (j + i as i64) % 2 == 0 {
                        reach + 1 + step
                    } else {
                        -1 - step
                    }
                })
                .collect()
        })
        .collect()
}

pub fn fit(
    p: &SimplexProblem,
    periods: &[u64],
    degree: u32,
    family: Family,
    mode: ModeArg,
) -> Result<Output, CliError> {
    let counter = Counter::new(p.system.clone())?;
    let n = p.system.dim();
    let periods: Vec<u64> = match (family, periods.len()) {
        (Family::Ray, 1) => periods.to_vec(),
        (Family::Full, 1) => vec![periods[0]; n + 1],
        (Family::Full, len) if len == n + 1 => periods.to_vec(),
        (Family::Ray, len) => {
            return Err(CliError::Parse(format!("the ray family takes one period, got {len}")))
        }
        (Family::Full, len) => {
            return Err(CliError::Parse(format!("expected 1 or {} periods, got {len}", n + 1)))
        }
    };
    if periods.contains(&0) {
        return Err(CliError::Parse("periods must be positive".into()));
    }
    let mode = core_mode(mode);
    let value_at = |args: &[i64]| -> latticecount::Result<latticecount::Rational> {
        let t = match family {
            Family::Ray => DilationVector::scaled(&p.b, args[0]),
            Family::Full => DilationVector::new(args.to_vec()),
        };
        Ok(int(counter.formal(&t, mode)?))
    };
    let q = interpolate(value_at, periods.clone(), degree)?;
    let points = holdout_points(q.nvars(), &periods, degree);
    let failures: Vec<String> = points
        .iter()
        .filter(|pt| q.evaluate(pt).ok() != value_at(pt).ok())
        .map(|pt| join(pt))
        .collect();
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };

    let mut report = Report::new("interpolate");
    report.push("family", format!("{family:?}").to_lowercase());
    report.push("periods", join(&periods));
    report.push("degree", degree);
    for (r, poly) in q.residues().iter().zip(q.table()) {
        report.push(format!("class.{}", r.iter().map(u64::to_string).collect::<Vec<_>>().join(".")), poly);
    }
    report.push("holdout_points", points.len());
    report.push("holdout", status);
    let variables = match family {
        Family::Ray => "t0 = s".to_string(),
        Family::Full => format!("t0..t{n}"),
    };
    let mut human = format!("quasipolynomial in {variables}, periods {}, degree {degree}\n", join(&periods));
    human.push_str(&q.to_string());
    human.push_str(&format!("holdout {status} ({} points)\n", points.len()));
    let mut output = Output::new(report, human);
    if !failures.is_empty() {
        output.mismatch = Some(format!("holdout prediction fails at {}", failures.join(" ")));
    }
    Ok(output)
}
