//! Invariant checks behind `zrp validate`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use zrp_core::angular::{limit_y, orthonormality_matrix, AngularBasis, Channel};
use zrp_core::model::{preset, Direction, SPhaseModel, TwoCenterTarget};
use zrp_core::numerics::richardson_limit;
use zrp_core::phase_solver::{solve_phases, solve_phases_identical_model};
use zrp_core::scattering::{
    eigenchannels, integrated_sigma, optical_sigma, oracle_amplitude, oracle_sigma_bar, oracle_solve,
    partial_amplitude_exact, partial_amplitude_paper, sigma_bar,
};
use zrp_core::Result;

use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub check: &'static str,
    pub target: String,
    pub k: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl CheckRow {
    fn graded(check: &'static str, target: &str, k: f64, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        CheckRow { check, target: target.to_owned(), k, residual, tolerance, status }
    }

    fn info(check: &'static str, target: &str, k: f64, residual: f64) -> Self {
        CheckRow { check, target: target.to_owned(), k, residual, tolerance: f64::NAN, status: Status::Info }
    }
}

pub struct Settings {
    pub tol: f64,
    pub c2_r: f64,
    pub nodes: usize,
}

/// Largest value and the k where it occurs.
#[derive(Clone, Copy)]
struct Worst {
    value: f64,
    k: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { value: f64::NEG_INFINITY, k: f64::NAN }
    }

    fn see(&mut self, value: f64, k: f64) {
        if !(value <= self.value) {
            self.value = value;
            self.k = k;
        }
    }
}

fn k_grid(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

const DIRECTIONS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn identical_equivalence(c2: &TwoCenterTarget) -> Result<Vec<CheckRow>> {
    let mut w = Worst::new();
    for k in k_grid(1000, 1e-3, 3.0) {
        let g = solve_phases(c2, k)?;
        let c = solve_phases_identical_model(&c2.center1, c2.separation, k)?;
        for (a, b) in g.cots().into_iter().zip(c.cots()) {
            w.see(rel(a, b), k);
        }
    }
    Ok(vec![CheckRow::graded("identical_center_equivalence", &c2.name, w.k, w.value, 1e-10)])
}

fn root_certification(t: &TwoCenterTarget) -> Result<Vec<CheckRow>> {
    let mut w = Worst::new();
    for k in k_grid(1000, 1e-3, 3.0) {
        let p = solve_phases(t, k)?;
        w.see(p.residual0.max(p.residual1), k);
    }
    Ok(vec![CheckRow::graded("root_certification", &t.name, w.k, w.value, 1e-10)])
}

fn limit_laws(t: &TwoCenterTarget) -> Result<Vec<CheckRow>> {
    let ks = [1e-3, 3e-4, 1e-4];
    let p = ks.iter().map(|&k| solve_phases(t, k)).collect::<Result<Vec<_>>>()?;
    let s: Vec<_> = p.iter().zip(ks).map(|(p, k)| (k, p.eta0 / k)).collect();
    let pw: Vec<_> = p.iter().zip(ks).map(|(p, k)| (k, p.eta1 / k.powi(3))).collect();
    let (sv, se) = richardson_limit(&s)?;
    let (pv, pe) = richardson_limit(&pw)?;
    Ok(vec![
        CheckRow::graded("limit_law_eta0_over_k", &t.name, 1e-4, se / sv.abs(), 1e-2),
        CheckRow::graded("limit_law_eta1_over_k3", &t.name, 1e-4, pe / pv.abs(), 1e-2),
    ])
}

/// Zero-energy limit from the per-center scattering lengths a = −c1.
pub fn closed_form_length(t: &TwoCenterTarget) -> f64 {
    let (a1, a2, r) = (-t.center1.c1, -t.center2.c1, t.separation);
    (2.0 * r - r * r * (1.0 / a1 + 1.0 / a2)) / (1.0 - r * r / (a1 * a2))
}

fn zero_energy(t: &TwoCenterTarget) -> Result<Vec<CheckRow>> {
    let l = closed_form_length(t);
    let k = 1e-4;
    let est = -solve_phases(t, k)?.eta0 / k;
    let sigma = sigma_bar(t, k)?.sigma_total;
    Ok(vec![
        CheckRow::graded("scattering_length", &t.name, k, (est - l).abs(), 1e-3),
        CheckRow::graded("zero_energy_sigma", &t.name, k, rel(sigma, 4.0 * PI * l * l), 5e-3),
    ])
}

fn orthonormality(nodes: usize) -> Result<Vec<CheckRow>> {
    [0.1, 1.0, PI, 5.0, 8.0]
        .iter()
        .map(|&z| {
            let g = orthonormality_matrix(&AngularBasis::at_z(z)?, nodes)?;
            let d = (g[0][0] - 1.0).abs().max((g[1][1] - 1.0).abs()).max(g[0][1].abs()).max(g[1][0].abs());
            Ok(CheckRow::graded("orthonormality", "unit_R", z, d, 1e-12))
        })
        .collect()
}

fn spherical_limits() -> Result<Vec<CheckRow>> {
    let z = 1e-4;
    let b = AngularBasis::at_z(z)?;
    Ok(Channel::ALL
        .iter()
        .map(|&c| {
            let d = (0..=200)
                .map(|i| {
                    let u = -1.0 + i as f64 / 100.0;
                    (b.eval(c, u) - limit_y(c, u)).abs()
                })
                .fold(0.0, f64::max);
            let name = match c {
                Channel::Even => "spherical_limit_Z0",
                Channel::Odd => "spherical_limit_Z1",
            };
            CheckRow::graded(name, "unit_R", z, d, 1e-6)
        })
        .collect())
}

fn optical_theorem(t: &TwoCenterTarget, nodes: usize) -> Result<Vec<CheckRow>> {
    [0.1, 0.5, 1.0, 2.0]
        .iter()
        .map(|&k| {
            let mut worst: f64 = 0.0;
            for u in DIRECTIONS {
                let d = Direction::from_cos(u)?;
                worst = worst.max(rel(integrated_sigma(t, k, d, nodes)?, optical_sigma(t, k, d)?));
            }
            Ok(CheckRow::graded("optical_theorem", &t.name, k, worst, 1e-8))
        })
        .collect()
}

fn averaged_sigma(t: &TwoCenterTarget, nodes: usize) -> Result<Vec<CheckRow>> {
    let mut w = Worst::new();
    for k in k_grid(100, 0.01, 3.0) {
        w.see(rel(sigma_bar(t, k)?.sigma_total, oracle_sigma_bar(t, k, nodes)?), k);
    }
    Ok(vec![CheckRow::graded("sigma_bar_vs_optical_average", &t.name, w.k, w.value, 1e-8)])
}

fn amplitudes(t: &TwoCenterTarget, tol: f64) -> Result<Vec<CheckRow>> {
    let mut exact = Worst::new();
    let mut fixed = Worst::new();
    let mut recip = Worst::new();
    for k in [0.2, 0.5, 1.0] {
        for ui in DIRECTIONS {
            let inc = Direction::from_cos(ui)?;
            let sol = oracle_solve(t, k, inc)?;
            for uo in DIRECTIONS {
                let out = Direction::from_cos(uo)?;
                let f = oracle_amplitude(&sol, out).value;
                let scale = f.norm().max(1.0);
                let e = partial_amplitude_exact(t, k, inc, out)?.value;
                let p = partial_amplitude_paper(t, k, inc, out)?.value;
                exact.see((f - e).norm() / scale, k);
                fixed.see((f - p).norm() / scale, k);
                let back: Complex64 = oracle_amplitude(&oracle_solve(t, k, out.reversed())?, inc.reversed()).value;
                recip.see((f - back).norm() / scale, k);
            }
        }
    }
    let mut rows = vec![
        CheckRow::graded("amplitude_exact_vs_oracle", &t.name, exact.k, exact.value, tol),
        CheckRow::graded("reciprocity", &t.name, recip.k, recip.value, 1e-12),
    ];
    rows.push(if t.is_symmetric() {
        CheckRow::graded("amplitude_fixed_basis_vs_oracle", &t.name, fixed.k, fixed.value, tol)
    } else {
        CheckRow::info("amplitude_fixed_basis_vs_oracle", &t.name, fixed.k, fixed.value)
    });
    Ok(rows)
}

fn unitarity(t: &TwoCenterTarget) -> Result<Vec<CheckRow>> {
    let mut s = Worst::new();
    let mut o = Worst::new();
    let mut ceiling = Worst::new();
    for k in k_grid(100, 0.01, 3.0) {
        let d = eigenchannels(t, k)?;
        for tl in d.t_eigenvalues {
            let sl = Complex64::new(1.0, 0.0) + Complex64::new(0.0, k / (2.0 * PI)) * tl;
            s.see((sl.norm() - 1.0).abs(), k);
        }
        o.see(d.orthogonality_defect(), k);
        let row = sigma_bar(t, k)?;
        let lim = row.unitarity_limit();
        ceiling.see(((row.sigma0.max(row.sigma1) - lim) / lim).max(0.0), k);
    }
    Ok(vec![
        CheckRow::graded("channel_unitarity", &t.name, s.k, s.value, 1e-12),
        CheckRow::graded("mixing_orthogonality", &t.name, o.k, o.value, 1e-12),
        CheckRow::graded("unitarity_ceiling", &t.name, ceiling.k, ceiling.value, 0.0),
    ])
}

type Check<'a> = Box<dyn Fn() -> Result<Vec<CheckRow>> + Send + Sync + 'a>;

/// Runs every check; a numerical error inside a check is reported as a failed row.
pub fn run(settings: &Settings) -> Result<Vec<CheckRow>> {
    let ch = preset("CH", None)?;
    let c2 = TwoCenterTarget::new("C2", SPhaseModel::CARBON, SPhaseModel::CARBON, settings.c2_r)?;
    let (nodes, tol) = (settings.nodes, settings.tol);
    let targets = [&ch, &c2];

    let mut checks: Vec<(&'static str, String, Check)> = vec![
        ("identical_center_equivalence", c2.name.clone(), Box::new(|| identical_equivalence(&c2))),
        ("orthonormality", "unit_R".into(), Box::new(move || orthonormality(nodes))),
        ("spherical_limit", "unit_R".into(), Box::new(spherical_limits)),
        ("zero_energy", ch.name.clone(), Box::new(|| zero_energy(&ch))),
    ];
    for &t in &targets {
        checks.push(("root_certification", t.name.clone(), Box::new(move || root_certification(t))));
        checks.push(("limit_law", t.name.clone(), Box::new(move || limit_laws(t))));
        checks.push(("optical_theorem", t.name.clone(), Box::new(move || optical_theorem(t, nodes))));
        checks.push(("sigma_bar_vs_optical_average", t.name.clone(), Box::new(move || averaged_sigma(t, nodes))));
        checks.push(("amplitudes", t.name.clone(), Box::new(move || amplitudes(t, tol))));
        checks.push(("unitarity", t.name.clone(), Box::new(move || unitarity(t))));
    }

    let rows = checks
        .par_iter()
        .map(|(name, target, f)| match f() {
            Ok(rows) => rows,
            Err(e) => {
                log::error!("{name} for {target}: {e}");
                vec![CheckRow {
                    check: name,
                    target: target.clone(),
                    k: f64::NAN,
                    residual: f64::NAN,
                    tolerance: f64::NAN,
                    status: Status::Fail,
                }]
            }
        })
        .collect::<Vec<_>>();
    Ok(rows.into_iter().flatten().collect())
}

pub fn to_table(rows: &[CheckRow]) -> Table {
    let mut t = Table::new(&["check", "target", "k", "residual", "tolerance", "status"]);
    for r in rows {
        t.push(vec![
            r.check.into(),
            r.target.clone().into(),
            r.k.into(),
            r.residual.into(),
            Cell::from(r.tolerance),
            r.status.as_str().into(),
        ]);
    }
    t
}
