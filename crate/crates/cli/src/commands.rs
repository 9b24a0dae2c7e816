use std::fs;
use std::io::Write;

use log::{info, warn};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use torsion_core::l2_constants::{
    growth_constant, sl3z_volume, t2, Weight, WeightSL2C, WeightSL3, WeightSO,
};
use torsion_core::metrized_complex::{check_dlap_identity, check_rt_identity, duality_products, verify_gaction_bound};
use torsion_core::polynomials::{
    branched_cover_order, ln_bigint, mahler_measure_with_tolerance, mahler_multivariate_estimate, parse_laurent,
    parse_poly, rational_to_f64, strip_cyclotomic,
};
use torsion_core::regularize::{
    default_t_grid, reg_integral_even_poly, smoothed_log_product, zeta_reg_product_scaled, Cutoff, RegProductSpec,
};
use torsion_core::tower::{
    circle_complex, fibered_torus_bundle, knot_exterior, l2_acyclic, papprox_from_point, tau2_report, torsion_point,
};
use torsion_core::{TorsionSequencePoint, TowerComplex};

use crate::args::*;
use crate::error::{CliError, CliResult, Status};
use crate::input::{complex_from_json, parse_json, parse_matrix_arg, tower_from_json};
use crate::sequence_csv::{write_csv, SequenceRow};

pub fn run(cmd: &Command, out: &mut dyn Write) -> CliResult<Status> {
    match cmd {
        Command::Complex(a) => cmd_complex(a, out),
        Command::Tower(a) => cmd_tower(a, out),
        Command::Mahler(a) => cmd_mahler(a, out),
        Command::Knot(a) => cmd_knot(a, out),
        Command::L2(a) => cmd_l2(a, out),
        Command::RegularizeDemo(a) => cmd_regularize(a, out),
    }
}

fn read_file(path: &std::path::Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Exact rational followed by a decimal when it is not an integer.
fn show_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_string()
    } else {
        format!("{x} ≈ {:.12}", rational_to_f64(x))
    }
}

fn show_order(x: &BigInt) -> String {
    let s = x.to_string();
    if s.len() <= 24 {
        s
    } else {
        format!("{}.{}e{} ({} digits)", &s[..1], &s[1..5], s.len() - 1, s.len())
    }
}

fn show_torsion(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|f| format!("Z/{}", show_order(f))).collect::<Vec<_>>().join(" + ")
    }
}

pub fn cmd_complex(a: &ComplexArgs, out: &mut dyn Write) -> CliResult<Status> {
    let input = complex_from_json(&parse_json(&read_file(&a.file)?)?)?;
    let c = &input.complex;
    let mut failures = Vec::new();
    writeln!(out, "complex: dims {:?}", c.dims())?;
    for h in c.cohomology_all()? {
        writeln!(
            out,
            "H^{}: free rank {}, torsion {}, R^2 = {}",
            h.degree,
            h.free_rank,
            show_torsion(&h.torsion_factors),
            show_rat(&h.regulator_sq)
        )?;
        let cross = c.regulator_sq_by_quotient(h.degree)?;
        if cross != h.regulator_sq {
            failures.push(format!("degree {}: regulator routes disagree ({} vs {cross})", h.degree, h.regulator_sq));
        }
    }
    for (i, d) in c.differentials().iter().enumerate() {
        let dp = torsion_core::exact_linalg::detprime_sq(d, &c.grams()[i], &c.grams()[i + 1])?;
        writeln!(out, "det'(d_{i})^2 = {}", show_rat(&dp))?;
    }
    let rt = check_rt_identity(c)?;
    writeln!(out, "torsion identity: lhs = {}, rhs = {}: {}", show_rat(&rt.lhs), show_rat(&rt.rhs), verdict(rt.holds))?;
    if !rt.holds {
        failures.push("torsion identity fails".into());
    }
    let dl = check_dlap_identity(c)?;
    writeln!(out, "laplacian identity: lhs = {}, rhs = {}: {}", show_rat(&dl.lhs), show_rat(&dl.rhs), verdict(dl.holds))?;
    if !dl.holds {
        failures.push("laplacian identity fails".into());
    }
    let dual = duality_products(c)?;
    let dual_ok = dual.iter().all(One::is_one);
    writeln!(out, "duality R̂^(n-j) R^j = 1: {}", verdict(dual_ok))?;
    if !dual_ok {
        failures.push(format!("duality products {dual:?}"));
    }
    if let Some(g) = &input.group_action {
        let r = verify_gaction_bound(c, g)?;
        writeln!(
            out,
            "group action: |G| = {}, abelian {}, M^2 = {}, ν^2 = {}",
            r.group_order, r.abelian, r.m_sq, r.nu_sq
        )?;
        for d in &r.degrees {
            writeln!(out, "  degree {}: D = {}, R^2 >= bound: {}", d.degree, d.isotypic_dim, verdict(d.holds))?;
            if !d.holds {
                failures.push(format!("group-action bound fails in degree {}", d.degree));
            }
        }
    }
    Ok(Status::from_failures(failures))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn tower_source(a: &TowerArgs) -> CliResult<TowerComplex> {
    if let Some(path) = &a.file {
        return tower_from_json(&parse_json(&read_file(path)?)?);
    }
    if let Some(m) = &a.circle {
        return Ok(circle_complex(&parse_matrix_arg(m)?)?);
    }
    if let Some(p) = &a.alexander {
        return Ok(knot_exterior(&parse_poly(p)?)?);
    }
    if let Some(f) = &a.fibered {
        return Ok(fibered_torus_bundle(&parse_matrix_arg(f)?)?);
    }
    Err(CliError::Input("no tower given".into()))
}

pub fn sweep_values(sweep: Sweep, nmax: usize) -> Vec<usize> {
    match sweep {
        Sweep::Full => (1..=nmax).collect(),
        Sweep::Geometric => {
            let mut v = vec![1, nmax];
            let mut p = 1usize;
            while p <= nmax {
                v.push(p);
                if 3 * p <= nmax {
                    v.push(3 * p);
                }
                p *= 2;
            }
            v.sort_unstable();
            v.dedup();
            v
        }
    }
}

/// Per-N covers on a pool of `workers` threads, returned in the order of `ns`.
pub fn compute_sequence(t: &TowerComplex, ns: &[usize], workers: Option<usize>) -> CliResult<Vec<TorsionSequencePoint>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| CliError::Input(format!("worker pool: {e}")))?;
    let points = pool.install(|| {
        ns.par_iter()
            .map(|&n| {
                let p = torsion_point(t, n);
                info!("N = {n} done");
                p
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(points)
}

pub fn cmd_tower(a: &TowerArgs, out: &mut dyn Write) -> CliResult<Status> {
    let t = tower_source(a)?;
    writeln!(out, "tower: m = {}, dims {:?}", t.nvars(), t.dims())?;
    let acyclic = l2_acyclic(&t)?;
    let all_acyclic = acyclic.iter().all(|&x| x);
    let report = if all_acyclic {
        let r = tau2_report(&t, a.grid)?;
        writeln!(out, "l2-acyclic: yes")?;
        writeln!(
            out,
            "tau2 = {:.12} (without the factor 1/2: {:.12}), error <= {:.1e}",
            r.tau2, r.unhalved, r.error
        )?;
        writeln!(out, "m(det Δ_j) = {:?}", r.log_mahler)?;
        Some(r)
    } else {
        let bad: Vec<usize> = acyclic.iter().enumerate().filter(|(_, &x)| !x).map(|(j, _)| j).collect();
        warn!("not l2-acyclic in degrees {bad:?}; tau2 omitted");
        writeln!(out, "warning: not l2-acyclic (det Δ_j ≡ 0 for j in {bad:?}); tau2 omitted")?;
        None
    };
    if t.nvars() != 1 {
        writeln!(out, "finite covers need m = 1; no sequence computed")?;
        return Ok(Status::Passed);
    }
    let ns = sweep_values(a.sweep, a.nmax);
    let points = compute_sequence(&t, &ns, a.workers)?;
    let tau = report.as_ref().map(|r| r.tau2);
    let rows: Vec<SequenceRow> = points.iter().map(|p| SequenceRow::from_point(p, tau)).collect();
    writeln!(out, "{:>5}  {:<40} {:>14} {:>14} {:>14}", "N", "torsion orders |H^i_tors|", "log T/N", "max|log R|/N", "log T/N + tau")?;
    for r in &rows {
        let orders = r.torsion_orders.iter().map(show_order).collect::<Vec<_>>().join(", ");
        let resid = r.predicted_minus_tau2.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"));
        writeln!(out, "{:>5}  {:<40} {:>14.6} {:>14.6} {:>14}", r.n, orders, r.log_t_over_n, r.max_log_regulator_over_n, resid)?;
    }
    if let Some(path) = &a.csv {
        let f = fs::File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        write_csv(&rows, f)?;
        writeln!(out, "wrote {}", path.display())?;
    }
    let last = points.last().expect("nmax >= 1");
    match (&report, last.n) {
        (Some(r), n) if n >= 2 => {
            let p = papprox_from_point(r, last, a.tol);
            writeln!(
                out,
                "limit check at N = {n}: |log T/N + tau2| = {:.6}, max|log R|/N = {:.6}, tol {}: {}",
                p.residual,
                p.max_log_regulator_over_n,
                a.tol,
                verdict(p.passed)
            )?;
            Ok(Status::from_failures(p.failures))
        }
        _ => {
            writeln!(out, "no limit claim")?;
            Ok(Status::Passed)
        }
    }
}

pub fn cmd_mahler(a: &MahlerArgs, out: &mut dyn Write) -> CliResult<Status> {
    let p = parse_laurent(&a.poly)?;
    if p.nvars() <= 1 {
        let (q, shift) = p.to_int_poly()?;
        let m = mahler_measure_with_tolerance(&q, a.tol)?;
        writeln!(out, "p = {q}{}", if shift != 0 { format!(" (times t^{shift})") } else { String::new() })?;
        writeln!(out, "M(p) = {:.12} ± {:.1e}", m.value, m.error)?;
        writeln!(out, "log M(p) = {:.12} ± {:.1e}", m.log_value, m.log_error)?;
        let (cyclo, _) = strip_cyclotomic(&q.strip_monomial());
        if !cyclo.is_empty() {
            let s: Vec<String> = cyclo.iter().map(|(k, e)| if *e > 1 { format!("Φ_{k}^{e}") } else { format!("Φ_{k}") }).collect();
            writeln!(out, "cyclotomic factors: {}", s.join(" "))?;
        }
        if m.kronecker {
            writeln!(out, "Kronecker polynomial: M = |leading coefficient|")?;
        }
    } else {
        let e = mahler_multivariate_estimate(&p, a.grid)?;
        writeln!(out, "p = {p}")?;
        writeln!(
            out,
            "log M(p) ≈ {:.9} (grid {} per axis, coarse {:.9}, spread {:.1e}; not certified)",
            e.estimate, e.resolution, e.coarse, e.error_heuristic
        )?;
        writeln!(out, "M(p) ≈ {:.9}", e.estimate.exp())?;
    }
    Ok(Status::Passed)
}

pub fn cmd_knot(a: &KnotArgs, out: &mut dyn Write) -> CliResult<Status> {
    let delta = parse_poly(&a.alexander)?;
    let m = mahler_measure_with_tolerance(&delta, 1e-12)?;
    writeln!(out, "Δ = {delta}, log M(Δ) = {:.12}", m.log_value)?;
    writeln!(out, "{:>5}  {:>30}  {:>14}", "N", "|H_1(M_N)|", "log|H_1|/N")?;
    let mut last = None;
    for n in 1..=a.nmax {
        let order = branched_cover_order(&delta, n)?;
        if order.is_zero() {
            writeln!(out, "{n:>5}  {:>30}  {:>14}", "infinite", "-")?;
        } else {
            let v = ln_bigint(&order) / n as f64;
            writeln!(out, "{n:>5}  {:>30}  {:>14.6}", show_order(&order), v)?;
            last = Some((n, v));
        }
    }
    if let Some((n, v)) = last {
        writeln!(out, "N = {n}: log|H_1|/N - log M(Δ) = {:.6}", v - m.log_value)?;
    }
    Ok(Status::Passed)
}

fn parse_ints(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Input(format!("bad weight entry \"{}\"", x.trim()))))
        .collect()
}

pub fn cmd_l2(a: &L2Args, out: &mut dyn Write) -> CliResult<Status> {
    let w = parse_ints(&a.w)?;
    let weight = match a.family {
        Family::Hyperbolic => Weight::Hyperbolic(WeightSO::new(w)?),
        Family::Sl2c => {
            let [p, q] = w[..] else {
                return Err(CliError::Input("sl2c needs --w p,q".into()));
            };
            if p < 0 || q < 0 {
                return Err(CliError::Input("p and q must be non-negative".into()));
            }
            Weight::Sl2c(WeightSL2C::new(p as u32, q as u32))
        }
        Family::Sl3 => {
            let [p, q, r] = w[..] else {
                return Err(CliError::Input("sl3 needs --w p,q,r".into()));
            };
            Weight::Sl3(WeightSL3::new(p, q, r)?)
        }
    };
    let t = t2(&weight);
    writeln!(out, "t2 = {t} ≈ {:.12}", t.to_f64())?;
    match weight.strongly_acyclic() {
        Some(s) => writeln!(out, "strongly acyclic: {}", if s { "yes" } else { "no" })?,
        None => writeln!(out, "strongly acyclic: not decided for this family")?,
    }
    if let Some(v) = &a.volume {
        let volume = if v == "sl3z" {
            sl3z_volume()
        } else {
            crate::args::positive_f64(v).map_err(CliError::Input)?
        };
        match growth_constant(&weight) {
            Ok(c) => {
                writeln!(out, "c = |t2| = {c}")?;
                writeln!(out, "predicted growth c·vol = {:.12} (vol = {volume:.12})", c.to_f64() * volume)?;
            }
            Err(e) => {
                writeln!(out, "no growth prediction: {e}")?;
                return Ok(Status::Failed(vec![e.to_string()]));
            }
        }
    }
    Ok(Status::Passed)
}

pub fn cmd_regularize(a: &RegularizeArgs, out: &mut dyn Write) -> CliResult<Status> {
    let mut failures = Vec::new();
    let grid = default_t_grid(a.lambda_max, 16);
    writeln!(out, "{:>10}  {:>14}  {:>14}  {:>14}", "c", "closed form", "smoothed h1", "smoothed h2")?;
    for c in [1.0, 2.0 * std::f64::consts::PI, 10.0] {
        let exact = zeta_reg_product_scaled(c)?;
        let spec = RegProductSpec::Progression { scale: c, lambda_max: a.lambda_max };
        let h1 = smoothed_log_product(&spec, Cutoff::Exp { plateau: 0.5 }, &grid)?;
        let h2 = smoothed_log_product(&spec, Cutoff::ExpSquared { plateau: 0.3 }, &grid)?;
        writeln!(out, "{c:>10.6}  {exact:>14.9}  {:>14.9}  {:>14.9}", h1.constant, h2.constant)?;
        for (name, h) in [("h1", &h1), ("h2", &h2)] {
            if (h.constant - exact).abs() > a.tol {
                failures.push(format!("c = {c}, {name}: {} vs {exact}", h.constant));
            }
        }
    }
    for (k, a_) in [(0u32, 1i64), (2, 1), (4, 2)] {
        let r = reg_integral_even_poly(k, &BigRational::from_integer(a_.into()))?;
        writeln!(out, "k = {k}, a = {a_}: regularized ∫(ix)^k log(x²+a²) = {}, π∫x^k over [-a,a] = {}: {}", r.lhs, r.rhs, verdict(r.equal))?;
        if !r.equal {
            failures.push(format!("regularized integral k = {k}"));
        }
    }
    Ok(Status::from_failures(failures))
}
