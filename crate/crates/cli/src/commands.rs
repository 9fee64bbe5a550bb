use std::fs;
use std::path::Path;

use rayon::prelude::*;
use zrp_core::angular::{limit_y, AngularBasis, Channel};
use zrp_core::model::{preset, Direction, SPhaseModel, TwoCenterTarget};
use zrp_core::phase_solver::{solve_phases, solve_phases_identical_model};
use zrp_core::scattering::{
    oracle_amplitude, oracle_sigma_bar, oracle_solve, partial_amplitude_exact, partial_amplitude_paper, sigma_bar,
    sigma_from_phases,
};

use crate::args::{cos_grid, positive, theta_grid, TargetArgs};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

pub fn load_target(args: &TargetArgs) -> CliResult<TwoCenterTarget> {
    let t = preset(&args.target, args.r).map_err(|e| CliError::from_core("load target", e))?;
    log::info!("target {} with R = {}", t.name, t.separation);
    Ok(t)
}

fn at(op: &str, target: &TwoCenterTarget, k: f64) -> impl Fn(zrp_core::Error) -> CliError {
    let op = format!("{op} for target {} at k = {k}", target.name);
    move |e| CliError::from_core(op.clone(), e)
}

pub fn phases(target: &TwoCenterTarget, ks: &[f64]) -> CliResult<Table> {
    let mut t = Table::new(&["k", "z", "eta0", "eta1", "cot_eta0", "cot_eta1", "residual0", "residual1"]);
    let rows = ks
        .par_iter()
        .map(|&k| {
            let p = solve_phases(target, k).map_err(at("solve_phases", target, k))?;
            Ok(vec![
                k.into(),
                (k * target.separation).into(),
                p.eta0.into(),
                p.eta1.into(),
                p.cot_eta0.into(),
                p.cot_eta1.into(),
                p.residual0.into(),
                p.residual1.into(),
            ])
        })
        .collect::<CliResult<Vec<Vec<Cell>>>>()?;
    t.extend(rows);
    Ok(t)
}

pub fn xsec(target: &TwoCenterTarget, ks: &[f64], nodes: usize) -> CliResult<Table> {
    let mut t = Table::new(&["k", "sigma0", "sigma1", "sigma_total", "oracle_sigma", "abs_diff"]);
    let rows = ks
        .par_iter()
        .map(|&k| {
            let s = sigma_bar(target, k).map_err(at("sigma_bar", target, k))?;
            let o = oracle_sigma_bar(target, k, nodes).map_err(at("oracle_sigma_bar", target, k))?;
            Ok(vec![
                k.into(),
                s.sigma0.into(),
                s.sigma1.into(),
                s.sigma_total.into(),
                o.into(),
                (s.sigma_total - o).abs().into(),
            ])
        })
        .collect::<CliResult<Vec<Vec<Cell>>>>()?;
    t.extend(rows);
    Ok(t)
}

fn angular_rows(zs: &[f64], theta_steps: usize, channels: &[Channel]) -> CliResult<Vec<Vec<Cell>>> {
    let thetas = theta_grid(theta_steps)?;
    let mut rows = Vec::with_capacity(zs.len() * thetas.len());
    for &z in zs {
        let basis = AngularBasis::at_z(positive("z", z)?).map_err(|e| CliError::from_core(format!("angular basis at z = {z}"), e))?;
        for &deg in &thetas {
            let u = deg.to_radians().cos();
            let mut row: Vec<Cell> = vec![z.into(), deg.into()];
            row.extend(channels.iter().map(|&c| Cell::from(basis.eval(c, u))));
            row.extend(channels.iter().map(|&c| Cell::from(limit_y(c, u))));
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn angular(zs: &[f64], theta_steps: usize) -> CliResult<Table> {
    let mut t = Table::new(&["z", "theta_deg", "Z0", "Z1", "Y00", "Y10"]);
    t.extend(angular_rows(zs, theta_steps, &Channel::ALL)?);
    Ok(t)
}

pub fn amplitude(target: &TwoCenterTarget, ks: &[f64], dir_steps: usize) -> CliResult<Table> {
    let cosines = cos_grid(dir_steps)?;
    let mut t = Table::new(&[
        "k", "cos_in", "cos_out", "oracle_re", "oracle_im", "exact_re", "exact_im", "fixed_re", "fixed_im",
    ]);
    let blocks = ks
        .par_iter()
        .map(|&k| {
            let err = at("amplitude", target, k);
            let mut rows = Vec::new();
            for &ui in &cosines {
                let inc = Direction::from_cos(ui).map_err(&err)?;
                let sol = oracle_solve(target, k, inc).map_err(&err)?;
                for &uo in &cosines {
                    let out = Direction::from_cos(uo).map_err(&err)?;
                    let f = oracle_amplitude(&sol, out).value;
                    let e = partial_amplitude_exact(target, k, inc, out).map_err(&err)?.value;
                    let p = partial_amplitude_paper(target, k, inc, out).map_err(&err)?.value;
                    rows.push(vec![
                        k.into(),
                        ui.into(),
                        uo.into(),
                        f.re.into(),
                        f.im.into(),
                        e.re.into(),
                        e.im.into(),
                        p.re.into(),
                        p.im.into(),
                    ]);
                }
            }
            Ok(rows)
        })
        .collect::<CliResult<Vec<_>>>()?;
    t.extend(blocks.into_iter().flatten());
    Ok(t)
}

pub const FIGURE1_HEADER: [&str; 11] = [
    "k",
    "unitarity_limit",
    "ch_sigma0",
    "ch_sigma1",
    "ch_sigma_total",
    "c2_sigma0",
    "c2_sigma1",
    "c2_sigma_total",
    "c2_sigma0_closed",
    "c2_sigma1_closed",
    "c2_sigma_total_closed",
];

pub const FIGURE_Z: [f64; 4] = [0.001, 1.0, 2.0, 4.0];

pub fn figure1(ks: &[f64], c2_r: f64) -> CliResult<Table> {
    let ch = preset("CH", None).map_err(|e| CliError::from_core("load CH", e))?;
    let c2 = preset("C2", Some(c2_r)).map_err(|e| CliError::from_core("load C2", e))?;
    let mut t = Table::new(&FIGURE1_HEADER);
    let rows = ks
        .par_iter()
        .map(|&k| {
            let a = sigma_bar(&ch, k).map_err(at("sigma_bar", &ch, k))?;
            let b = sigma_bar(&c2, k).map_err(at("sigma_bar", &c2, k))?;
            let c = solve_phases_identical_model(&SPhaseModel::CARBON, c2_r, k)
                .map(|p| sigma_from_phases(&p))
                .map_err(at("identical-center phases", &c2, k))?;
            Ok(vec![
                k.into(),
                a.unitarity_limit().into(),
                a.sigma0.into(),
                a.sigma1.into(),
                a.sigma_total.into(),
                b.sigma0.into(),
                b.sigma1.into(),
                b.sigma_total.into(),
                c.sigma0.into(),
                c.sigma1.into(),
                c.sigma_total.into(),
            ])
        })
        .collect::<CliResult<Vec<Vec<Cell>>>>()?;
    t.extend(rows);
    Ok(t)
}

pub fn figures(dir: &Path, ks: &[f64], c2_r: f64, theta_steps: usize) -> CliResult<()> {
    let c2_r = positive("c2-r", c2_r)?;
    fs::create_dir_all(dir).map_err(|source| CliError::Output { path: dir.display().to_string(), source })?;
    figure1(ks, c2_r)?.write(Some(&dir.join("figure1.csv")))?;

    let mut f2 = Table::new(&["z", "theta_deg", "Z0", "Y00"]);
    f2.extend(angular_rows(&FIGURE_Z, theta_steps, &[Channel::Even])?);
    f2.write(Some(&dir.join("figure2.csv")))?;

    let mut f3 = Table::new(&["z", "theta_deg", "Z1", "Y10"]);
    f3.extend(angular_rows(&FIGURE_Z, theta_steps, &[Channel::Odd])?);
    f3.write(Some(&dir.join("figure3.csv")))?;
    Ok(())
}
