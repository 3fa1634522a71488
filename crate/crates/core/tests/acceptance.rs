//! Acceptance suite: ten criteria, one PASS/FAIL line each.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use scv_core::bounds::{
    conference_majorant, conference_splus, ew_from, line_kn_check, product_t_plus, ramanujan_check,
    ramanujan_quadratic, ramanujan_root_threshold, ramanujan_simplified_threshold, verify_conjecture, wilf_from,
    CheckStatus, MaterializeOptions, Verdict, VERDICT_TOL,
};
use scv_core::clique::{max_clique_exact, motzkin_straus_estimate, Budget, ReplicatorOptions};
use scv_core::generators::{
    cartesian_product, complete, cycle, is_prime, line_graph, paley, random_gnp, seeded_rng, srg_parameters_of,
    srg_spectrum, unit_f64, SrgParams,
};
use scv_core::graph::{parse_graph6, write_graph6, Graph};
use scv_core::spectral::{eigenvalues_symmetric, is_ramanujan};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

/// Family corpus plus 500 random G(n, 1/2) graphs with n <= 24.
fn corpus() -> Vec<(String, Graph)> {
    let mut out = family_corpus();
    let mut rng = seeded_rng(2024);
    for i in 0..500 {
        let n = 1 + (unit_f64(&mut rng) * 24.0) as usize;
        out.push((format!("gnp{i}(n={n})"), random_gnp(n.min(24), 0.5, 10_000 + i).unwrap()));
    }
    out
}

fn exact_omega(g: &Graph) -> Result<usize, String> {
    let r = max_clique_exact(g, &Budget::default());
    ensure!(r.is_exact(), "clique search not exact on {}", write_graph6(g));
    Ok(r.omega)
}

fn criterion_1() -> Outcome {
    let corpus = corpus();
    for (name, g) in &corpus {
        let omega = exact_omega(g)?;
        if g.n() <= 24 {
            ensure!(omega == bron_kerbosch_omega(g), "{name}: solver omega disagrees with oracle");
        }
        let lambda1 = if g.n() == 0 { 0.0 } else { eigenvalues_symmetric(g).map_err(|e| e.to_string())?.lambda1() };
        let wilf = wilf_from(g.n(), lambda1);
        ensure!(wilf <= omega as f64 + VERDICT_TOL, "{name}: wilf {wilf} > omega {omega}");
        ensure!(wilf >= 1.0 - VERDICT_TOL, "{name}: wilf {wilf} < 1");
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn criterion_2() -> Outcome {
    let corpus = corpus();
    let mut max_gap = f64::NEG_INFINITY;
    for (name, g) in &corpus {
        let r = verify_conjecture(g, &Budget::default()).map_err(|e| e.to_string())?;
        ensure!(
            r.verdict != Verdict::Fails,
            "COUNTEREXAMPLE {name}: graph6 {} ew {:?} omega {} spectrum {:?} witness {:?}",
            r.graph6,
            r.ew,
            r.omega.omega,
            r.spectrum.eigenvalues(),
            r.omega.witness
        );
        ensure!(r.omega.is_exact(), "{name}: omega not exact");
        ensure!(r.verdict == Verdict::Holds, "{name}: verdict {}", r.verdict);
        ensure!(r.forms_agree, "{name}: the two conjecture forms disagree");
        let ew = r.ew.ok_or(format!("{name}: ew anomaly"))?;
        ensure!(ew >= 1.0 - VERDICT_TOL, "{name}: ew {ew} < 1");
        max_gap = max_gap.max(ew - r.omega.omega as f64);
    }
    Ok(format!("{} graphs, max ew - omega = {max_gap:.3e}", corpus.len()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for q in (5..=101).filter(|&q| q % 4 == 1 && is_prime(q)) {
        let mu = (q as u64 - 1) / 4;
        let g = paley(q).unwrap();
        let sp = eigenvalues_symmetric(&g).map_err(|e| e.to_string())?.s_plus().0;
        // Independent closed form from the Paley eigenvalues.
        let oracle: f64 = paley_spectrum(q).iter().filter(|&&x| x > 0.0).map(|x| x * x).sum();
        let formula = conference_splus(mu);
        ensure!((sp - formula).abs() <= 1e-8, "paley({q}): s+ {sp} vs formula {formula}");
        ensure!((oracle - formula).abs() <= 1e-8, "paley({q}): oracle {oracle} vs formula {formula}");
        let ew = ew_from(q, sp).map_err(|e| e.to_string())?;
        let omega = exact_omega(&g)?;
        ensure!(ew <= conference_majorant(mu) + VERDICT_TOL, "paley({q}): ew above majorant");
        if mu > 1 {
            ensure!(omega >= 3, "paley({q}): no triangle");
            ensure!(conference_majorant(mu) <= 3.0, "paley({q}): majorant {} > 3", conference_majorant(mu));
            ensure!(ew <= 3.0 + VERDICT_TOL, "paley({q}): ew {ew} > 3");
        } else {
            ensure!(omega == 2 && ew <= 2.0, "paley(5): triangle-free case");
        }
        count += 1;
    }
    Ok(format!("{count} conference graphs"))
}

fn criterion_4() -> Outcome {
    let cases: Vec<(&str, Graph, SrgParams, Vec<f64>)> = vec![
        ("petersen", petersen(), SrgParams::new(10, 3, 0, 1), {
            let mut v = vec![3.0];
            v.extend([1.0; 5]);
            v.extend([-2.0; 4]);
            v
        }),
        ("paley13", paley(13).unwrap(), SrgParams::new(13, 6, 2, 3), paley_spectrum(13)),
        ("paley17", paley(17).unwrap(), SrgParams::new(17, 8, 3, 4), paley_spectrum(17)),
        ("L(K6)", line_graph(&complete(6).unwrap()).unwrap(), SrgParams::line_of_complete(6), line_kn_spectrum(6)),
        ("L(K7)", line_graph(&complete(7).unwrap()).unwrap(), SrgParams::line_of_complete(7), line_kn_spectrum(7)),
    ];
    for (name, g, p, oracle) in cases {
        ensure!(srg_parameters_of(&g) == Some(p), "{name}: parameters {:?}", srg_parameters_of(&g));
        let closed = srg_spectrum(&p).map_err(|e| e.to_string())?;
        let numeric = eigenvalues_symmetric(&g).map_err(|e| e.to_string())?;
        let want = closed.eigenvalues();
        ensure!(want.len() == numeric.len(), "{name}: multiplicities sum to {}", want.len());
        for ((a, b), c) in numeric.eigenvalues().iter().zip(&want).zip(&oracle) {
            ensure!((a - b).abs() <= 1e-8, "{name}: numeric {a} vs closed form {b}");
            ensure!((b - c).abs() <= 1e-8, "{name}: closed form {b} vs hand spectrum {c}");
        }
        let groups = numeric.groups();
        let closed_groups = closed.groups();
        ensure!(groups.len() == closed_groups.len(), "{name}: {} eigenvalue groups", groups.len());
        for ((_, m1), (_, m2)) in groups.iter().zip(&closed_groups) {
            ensure!(*m1 as u64 == *m2, "{name}: multiplicity {m1} vs {m2}");
        }
    }
    Ok("5 graphs".into())
}

fn criterion_5() -> Outcome {
    for n in 6..=12usize {
        let g = line_graph(&complete(n).unwrap()).unwrap();
        let omega = exact_omega(&g)?;
        ensure!(omega == n - 1, "L(K{n}): omega {omega}");
        let ew = ew_from(g.n(), eigenvalues_symmetric(&g).map_err(|e| e.to_string())?.s_plus().0).map_err(|e| e.to_string())?;
        ensure!(ew <= (n - 1) as f64 + VERDICT_TOL, "L(K{n}): ew {ew}");
        let poly = 5 * n * n - 16 * n + 16;
        ensure!(poly > 0, "L(K{n}): polynomial {poly}");
        let rec = line_kn_check(n as u64, &MaterializeOptions::default()).map_err(|e| e.to_string())?;
        ensure!(rec.status == CheckStatus::Pass, "L(K{n}): {rec:?}");
    }
    Ok("n = 6..12".into())
}

fn criterion_6() -> Outcome {
    let bases: Vec<(&str, Graph)> = vec![
        ("K4", complete(4).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("petersen", petersen()),
        ("paley13", paley(13).unwrap()),
    ];
    for (name, g) in &bases {
        let prod = cartesian_product(g, g).unwrap();
        let (w, wp) = (exact_omega(g)?, exact_omega(&prod)?);
        ensure!(w == wp, "{name}: omega {w} but product omega {wp}");
        let base_eigs = eigenvalues_symmetric(g).map_err(|e| e.to_string())?;
        let t_oracle = pair_sum_t_plus(base_eigs.eigenvalues());
        let t_numeric = eigenvalues_symmetric(&prod).map_err(|e| e.to_string())?.s_plus().0;
        ensure!((t_oracle - t_numeric).abs() <= 1e-6, "{name}: pair-sum {t_oracle} vs product {t_numeric}");
        if let Some(p) = srg_parameters_of(g) {
            let t = product_t_plus(&srg_spectrum(&p).map_err(|e| e.to_string())?);
            ensure!((t - t_numeric).abs() <= 1e-6, "{name}: closed-form t+ {t} vs product {t_numeric}");
        }
    }
    let mut params: Vec<SrgParams> = family_corpus().iter().filter_map(|(_, g)| srg_parameters_of(g)).collect();
    params.sort_by_key(|p| (p.n, p.d, p.lambda, p.mu));
    params.dedup();
    let mut checked = 0;
    for p in params.iter().filter(|p| p.n > 7) {
        let sp = srg_spectrum(p).map_err(|e| e.to_string())?;
        let t = pair_sum_t_plus(&sp.eigenvalues());
        let n2s = (p.n * p.n) as f64 * sp.s_plus();
        ensure!(t <= n2s + 1e-9 * n2s, "{p}: t+ {t} > n^2 s+ {n2s}");
        checked += 1;
    }
    Ok(format!("4 products, {checked} SRG parameter sets"))
}

fn criterion_7() -> Outcome {
    for n in 22..=60usize {
        let g = cycle(n).unwrap();
        let ram = is_ramanujan(&g).map_err(|e| e.to_string())?;
        ensure!(ram.is_ramanujan, "C{n} not Ramanujan");
        let s_plus = eigenvalues_symmetric(&g).map_err(|e| e.to_string())?.s_plus().0;
        let majorant = 4.0 + 4.0 * (n as f64 - 1.0);
        ensure!(s_plus <= majorant + 1e-9, "C{n}: s+ {s_plus} > {majorant}");
        let quad = 4.0 / 9.0 * (n * n) as f64 - 4.0 * n as f64;
        ensure!(quad >= 0.0 && (quad - ramanujan_quadratic(n as u64, 2)).abs() < 1e-9, "C{n}: quadratic {quad}");
        let rec = ramanujan_check(&g).map_err(|e| e.to_string())?;
        ensure!(rec.status == CheckStatus::Pass, "C{n}: {rec:?}");
    }
    for n in 9..22u64 {
        ensure!(ramanujan_quadratic(n, 2) >= 0.0, "quadratic negative at n = {n}");
    }
    for d in 2..=50u64 {
        let root = ramanujan_root_threshold(d);
        let simplified = ramanujan_simplified_threshold(d);
        ensure!(root <= simplified + 1e-9, "d = {d}: root {root} above simplified {simplified}");
        ensure!(simplified <= 11.0 * d as f64, "d = {d}: simplified {simplified} above 11d");
        ensure!(ramanujan_quadratic(root.ceil() as u64, d) >= 0.0, "d = {d}: quadratic negative past the root");
        ensure!(ramanujan_quadratic(11 * d, d) >= 0.0, "d = {d}: quadratic negative at 11d");
    }
    Ok("cycles 22..60, d = 2..50".into())
}

fn criterion_8() -> Outcome {
    let mut rng = seeded_rng(88);
    for i in 0..200u64 {
        let n = 1 + (unit_f64(&mut rng) * 12.0) as usize;
        let p = 0.1 + 0.85 * unit_f64(&mut rng);
        let g = random_gnp(n.min(12), p, 500 + i).unwrap();
        let got = exact_omega(&g)?;
        let want = brute_force_omega(&g);
        ensure!(got == want, "{}: solver {got}, brute force {want}", write_graph6(&g));
    }
    Ok("200 graphs".into())
}

fn criterion_9() -> Outcome {
    let opts = ReplicatorOptions::default();
    for n in 3..=8 {
        let est = motzkin_straus_estimate(&complete(n).unwrap(), &opts).map_err(|e| e.to_string())?;
        let want = 0.5 * (1.0 - 1.0 / n as f64);
        ensure!((est.f_star - want).abs() <= 1e-6, "K{n}: {} vs {want}", est.f_star);
    }
    let triangle_free: Vec<(String, Graph)> = family_corpus()
        .into_iter()
        .filter(|(_, g)| g.m() > 0 && g.is_triangle_free())
        .collect();
    for (name, g) in &triangle_free {
        let est = motzkin_straus_estimate(g, &opts).map_err(|e| e.to_string())?;
        ensure!((est.f_star - 0.25).abs() <= 1e-6, "{name}: {}", est.f_star);
    }
    Ok(format!("K3..K8 and {} triangle-free graphs", triangle_free.len()))
}

fn criterion_10() -> Outcome {
    let mut rng = seeded_rng(1010);
    for i in 0..1000u64 {
        let n = (unit_f64(&mut rng) * 130.0) as usize;
        let p = unit_f64(&mut rng);
        let g = random_gnp(n, p, i).unwrap();
        let text = write_graph6(&g);
        let back = parse_graph6(&text).map_err(|e| format!("{text}: {e}"))?;
        ensure!(back == g, "graph changed after round trip: {text}");
        ensure!(write_graph6(&back) == text, "re-encoding differs: {text}");
    }
    Ok("1000 graphs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Wilf bound on the corpus", criterion_1),
        ("conjecture verdicts on the corpus", criterion_2),
        ("conference graphs q <= 101", criterion_3),
        ("SRG closed-form spectra", criterion_4),
        ("line graphs of K_n, n = 6..12", criterion_5),
        ("Cartesian squares", criterion_6),
        ("Ramanujan cycles and thresholds", criterion_7),
        ("clique solver vs brute force", criterion_8),
        ("Motzkin-Straus replicator", criterion_9),
        ("graph6 round trip", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
