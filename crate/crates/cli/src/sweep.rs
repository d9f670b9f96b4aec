//! Grid sweeps fanned out over a bounded pool of worker threads. Rows are
//! sorted by their grid point, so the CSV does not depend on the order of the
//! grid file or on completion order.

use std::fs;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::ValueEnum;
use serde_json::{json, Value};

use multalg::exactpoly::MPoly;
use multalg::genus2::{self, LorenzenPoint, LorenzenVariant};
use multalg::genus3::{self, StdPair};
use multalg::multalg::algebra_report;
use multalg::rational::{self, serde_rational, Rational};

use crate::commands::{algebra_options, rationals, Failure};
use crate::report::write_output;
use crate::{Cli, Command, GlobalArgs};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Lorenzen nets over a grid of `u`; columns u0,u1,u2,very_stable,dim,smooth,j_num,j_den.
    G2Lorenzen,
    /// Standard pairs over a grid of `(a, b)`; columns a,b,mat2,section,loci,web_dim.
    G3Pair,
}

#[derive(serde::Deserialize)]
struct GridPoint(#[serde(with = "serde_rational::vec")] Vec<Rational>);

fn read_grid(path: &std::path::Path, width: usize) -> Result<Vec<Vec<Rational>>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(&Value::Null, format!("{}: {e}", path.display())))?;
    let points: Vec<GridPoint> =
        serde_json::from_str(&text).map_err(|e| Failure::new(&Value::Null, format!("{}: {e}", path.display())))?;
    let points: Vec<Vec<Rational>> = points.into_iter().map(|p| p.0).collect();
    if let Some(bad) = points.iter().find(|p| p.len() != width) {
        return Err(Failure::new(&Value::Null, format!("grid point of length {}, expected {width}", bad.len())));
    }
    Ok(points)
}

fn sorted(mut points: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    points.sort();
    points
}

/// Runs `f` on every item with at most `workers` threads.
pub fn par_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                *slots[i].lock().expect("slot") = Some(f(item));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot").expect("filled")).collect()
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn lorenzen_row(g: &GlobalArgs, rst: &[Rational], variant: LorenzenVariant, u: &[Rational]) -> Result<Vec<String>, String> {
    let p = LorenzenPoint::new(rst.to_vec(), u.to_vec()).map_err(|e| e.to_string())?;
    let r = genus2::lorenzen_discriminant_report(&p, variant, &algebra_options(g)).map_err(|e| e.to_string())?;
    let (jn, jd) = match &r.j {
        Some(j) => (j.numer().to_string(), j.denom().to_string()),
        None => (String::new(), String::new()),
    };
    Ok(vec![
        fmt(&u[0]),
        fmt(&u[1]),
        fmt(&u[2]),
        r.very_stable.to_string(),
        r.dim.map(|d| d.to_string()).unwrap_or_default(),
        r.smooth.to_string(),
        jn,
        jd,
    ])
}

fn pair_row(g: &GlobalArgs, q: &MPoly, ab: &[Rational]) -> Result<Vec<String>, String> {
    let p = StdPair::new(ab[0].clone(), ab[1].clone()).map_err(|e| e.to_string())?;
    let mat2 = genus3::mat2_derivation_check(&p).map_err(|e| e.to_string())?;
    let section = genus3::section_two_conics(&p).map_err(|e| e.to_string())?;
    let loci = match genus3::symmetroid_nodes(&p) {
        Ok(r) => r.count.to_string(),
        Err(_) => String::new(),
    };
    let web = p.bundle(q.clone()).and_then(|d| genus3::genus3_web(&d)).map_err(|e| e.to_string())?;
    let alg = algebra_report(&web, &algebra_options(g)).map_err(|e| e.to_string())?;
    Ok(vec![fmt(&ab[0]), fmt(&ab[1]), mat2.to_string(), section.to_string(), loci, alg.dim.to_string()])
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let Command::Sweep { kind, grid, rst, variant, q } = &cli.command else { unreachable!("sweep only") };
    let g = &cli.global;
    let (header, rows): (Vec<&str>, Vec<Result<Vec<String>, String>>) = match kind {
        SweepKind::G2Lorenzen => {
            let rst = rationals("rst", rst)?;
            let points = sorted(read_grid(grid, 3)?);
            let variant: LorenzenVariant = (*variant).into();
            let rows = par_map(&points, g.workers, |u| lorenzen_row(g, &rst, variant, u));
            (vec!["u0", "u1", "u2", "very_stable", "dim", "smooth", "j_num", "j_den"], rows)
        }
        SweepKind::G3Pair => {
            let q = MPoly::parse(&genus3::xyz_ring(), q).map_err(|e| Failure::new(&Value::Null, e))?;
            let points = sorted(read_grid(grid, 2)?);
            let rows = par_map(&points, g.workers, |ab| pair_row(g, &q, ab));
            (vec!["a", "b", "mat2", "section", "loci", "web_dim"], rows)
        }
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| Failure::new(&Value::Null, e))?;
    for (i, row) in rows.into_iter().enumerate() {
        let row = row.map_err(|e| Failure::new(&json!({"row": i}), e))?;
        w.write_record(&row).map_err(|e| Failure::new(&Value::Null, e))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::new(&Value::Null, e))?;
    let text = String::from_utf8(bytes).expect("csv is utf-8");
    write_output(g.out.as_deref(), &text).map_err(|e| Failure::new(&Value::Null, e))
}
