//! Exit criteria for the library and sweep, one report line per criterion.
//!
//! Run with `cargo test -p boostclock --test acceptance -- --nocapture` to
//! see the report.

mod common;

use std::f64::consts::{PI, TAU};

use boostclock::kinematics::{
    saturation_limit, wigner_matrix, MomentumPoint, PhysicalParams, Rapidity,
};
use boostclock::measures::{
    bloch_z, fidelity, overlap_oracle, purity, renyi_entropy, schmidt_weights, Fidelity, RenyiOrder,
};
use boostclock::quadrature::{integrate_spherical, OracleSpec, QuadratureSpec};
use boostclock::sweep::{
    run_sweep, svg_string, to_csv_string, MeasureKind, SweepResult, SweepSpec,
};
use boostclock::wavepacket::{gaussian_density, WavepacketSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RATIOS: [f64; 3] = [0.1, 1.0, 10.0];
const SEED: u64 = 0x5EED;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn packet(r: f64) -> WavepacketSpec {
    WavepacketSpec::from_ratio(r).unwrap()
}

fn rapidity(x: f64) -> Rapidity {
    Rapidity::new(x).unwrap()
}

/// `|M(10) - M(8)| < 0.01 * (distance of M(10) from its unboosted value + 1e-9)`
fn plateau(series: &[(f64, f64)], unboosted: f64) -> Check {
    let at = |x: f64| {
        series
            .iter()
            .find(|p| (p.0 - x).abs() < 1e-12)
            .map(|p| p.1)
            .ok_or_else(|| format!("xi = {x} missing from series"))
    };
    let (end, mid) = (at(10.0)?, at(8.0)?);
    let bound = 0.01 * ((end - unboosted).abs() + 1e-9);
    ensure((end - mid).abs() < bound, || {
        format!("no plateau: M(10) = {end}, M(8) = {mid}, bound {bound:e}")
    })
}

fn monotone(series: &[(f64, f64)], increasing: bool, what: &str) -> Check {
    for p in series.windows(2) {
        let ok = if increasing {
            p[1].1 >= p[0].1
        } else {
            p[1].1 <= p[0].1
        };
        if !ok {
            return Err(format!(
                "{what} not monotone between xi = {} ({}) and xi = {} ({})",
                p[0].0, p[0].1, p[1].0, p[1].1
            ));
        }
    }
    Ok(())
}

/// Curves for larger `w/m` never lie on the wrong side of smaller ones.
fn ordered_in_ratio(result: &SweepResult, m: MeasureKind, larger_is_lower: bool) -> Check {
    for pair in RATIOS.windows(2) {
        let lo = result.series(m, pair[0], None);
        let hi = result.series(m, pair[1], None);
        for (a, b) in lo.iter().zip(&hi) {
            let ok = if larger_is_lower {
                b.1 <= a.1
            } else {
                b.1 >= a.1
            };
            if !ok {
                return Err(format!(
                    "{m} at xi = {}: w/m = {} gives {}, w/m = {} gives {}",
                    a.0, pair[0], a.1, pair[1], b.1
                ));
            }
        }
    }
    Ok(())
}

fn criterion_unitarity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let params = PhysicalParams::new(1.0, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let point = MomentumPoint::new(
            rng.random_range(0.0..=10.0),
            rng.random_range(0.0..=PI),
            rng.random_range(0.0..TAU),
        )
        .unwrap();
        let u = wigner_matrix(&params, &point, rapidity(rng.random_range(0.0..=10.0)));
        worst = worst.max(u.unitarity_defect());
    }
    ensure(worst < 1e-12, || format!("max |U†U - I| = {worst:e}"))
}

fn criterion_normalization() -> Check {
    let quad = QuadratureSpec::default();
    for r in RATIOS {
        let p = packet(r);
        let v = integrate_spherical(|x| gaussian_density(&p, x.q()).into(), &quad, p.spread_w())
            .map_err(|e| e.to_string())?;
        ensure((v.re - 1.0).abs() < 1e-8, || {
            format!("w/m = {r}: norm = {}", v.re)
        })?;
    }
    Ok(())
}

fn criterion_identity_boost(sweep: &SweepResult) -> Check {
    let rows: Vec<_> = sweep.rows.iter().filter(|r| r.xi == 0.0).collect();
    ensure(!rows.is_empty(), || "no xi = 0 rows".into())?;
    for r in rows {
        let target = if r.measure == MeasureKind::Fidelity {
            1.0
        } else {
            0.0
        };
        ensure((r.value - target).abs() < 1e-9, || format!("{r:?}"))?;
    }
    Ok(())
}

fn criterion_oracle() -> Check {
    let quad = QuadratureSpec::default();
    let oracle = OracleSpec::new(1_000_000, SEED).unwrap();
    for x in [0.5, 2.0, 8.0] {
        for r in RATIOS {
            let f = fidelity(&packet(r), rapidity(x), &quad).map_err(|e| e.to_string())?;
            let mc = overlap_oracle(&packet(r), rapidity(x), &oracle).map_err(|e| e.to_string())?;
            let diff = (f.value() - mc.estimate.norm()).abs();
            ensure(mc.std_error < 1e-3, || {
                format!("xi = {x}, w/m = {r}: oracle std error {:e}", mc.std_error)
            })?;
            ensure(diff < 3.0 * mc.std_error, || {
                format!(
                    "xi = {x}, w/m = {r}: quadrature {} vs oracle {} ± {:e}",
                    f.value(),
                    mc.estimate.norm(),
                    mc.std_error
                )
            })?;
        }
    }
    Ok(())
}

fn criterion_fidelity_curves(sweep: &SweepResult) -> Check {
    for r in RATIOS {
        let s = sweep.series(MeasureKind::Fidelity, r, None);
        ensure(s.len() == 101, || format!("w/m = {r}: {} points", s.len()))?;
        monotone(&s, false, &format!("fidelity (w/m = {r})"))?;
        plateau(&s, 1.0).map_err(|e| format!("w/m = {r}: {e}"))?;
    }
    ordered_in_ratio(sweep, MeasureKind::Fidelity, true)
}

fn criterion_entropy_curves(sweep: &SweepResult) -> Check {
    for r in RATIOS {
        let s = sweep.series(MeasureKind::Entropy, r, None);
        monotone(&s, true, &format!("entropy (w/m = {r})"))?;
        plateau(&s, 0.0).map_err(|e| format!("w/m = {r}: {e}"))?;
    }
    let classical = sweep
        .value_at(MeasureKind::Entropy, 0.1, None, 10.0)
        .ok_or("missing E(10) at w/m = 0.1")?;
    ensure(classical < 0.05, || {
        format!("saturated E at w/m = 0.1 is {classical}")
    })?;
    ordered_in_ratio(sweep, MeasureKind::Entropy, false)
}

fn criterion_identities(sweep: &SweepResult) -> Check {
    let f_rows = sweep
        .rows
        .iter()
        .filter(|r| r.measure == MeasureKind::Fidelity);
    let mut checked = 0;
    for fr in f_rows {
        let (x, r) = (fr.xi, fr.w_over_m);
        let get = |m, n| {
            sweep
                .value_at(m, r, n, x)
                .ok_or_else(|| format!("{m} missing at xi = {x}, w/m = {r}"))
        };
        let f = fr.value;
        let w = schmidt_weights(Fidelity::new(f).map_err(|e| e.to_string())?);
        let e = get(MeasureKind::Entropy, None)?;
        let at = || format!("xi = {x}, w/m = {r}");

        ensure(get(MeasureKind::MutualInfo, None)? == 2.0 * e, || {
            format!("I != 2E at {}", at())
        })?;
        let e2 = get(MeasureKind::Quadratic, None)?;
        ensure((e2 - (1.0 - f * f)).abs() < 1e-12, || {
            format!("E2 != 1 - F^2 at {}", at())
        })?;
        ensure((e2 - 2.0 * (1.0 - purity(&w))).abs() < 1e-12, || {
            format!("E2 != 2(1 - Tr rho^2) at {}", at())
        })?;
        for n in [1.0 - 1e-6, 1.0 + 1e-6] {
            let h = renyi_entropy(&w, RenyiOrder::Finite(n)).map_err(|e| e.to_string())?;
            ensure((h - e).abs() < 1e-5, || {
                format!("H_{n} = {h} vs E = {e} at {}", at())
            })?;
        }
        let h1 = get(MeasureKind::Renyi, Some(RenyiOrder::Finite(1.0)))?;
        ensure((h1 - e).abs() < 1e-5, || {
            format!("H_1 row {h1} vs E = {e} at {}", at())
        })?;
        let h0 = get(MeasureKind::Renyi, Some(RenyiOrder::Finite(0.0)))?;
        if f < 1.0 - 1e-9 {
            ensure(h0 == 1.0, || format!("H_0 = {h0} at {} (F = {f})", at()))?;
        }
        let hinf = get(MeasureKind::Renyi, Some(RenyiOrder::Infinity))?;
        ensure((hinf + w.p_plus.log2()).abs() < 1e-12, || {
            format!("H_inf = {hinf} at {}", at())
        })?;
        let en = get(MeasureKind::LogNegativity, None)?;
        let pt = common::log_negativity_by_partial_transpose(w.p_plus, w.p_minus);
        ensure((en - pt).abs() < 1e-10, || {
            format!("E_N = {en} vs partial transpose {pt} at {}", at())
        })?;
        checked += 1;
    }
    ensure(checked == 303, || {
        format!("checked {checked} grid points, expected 303")
    })
}

fn criterion_saturation() -> Check {
    let quad = QuadratureSpec::default();
    let f10 = fidelity(&packet(1.0), rapidity(10.0), &quad)
        .map_err(|e| e.to_string())?
        .value();
    let f20 = fidelity(&packet(1.0), rapidity(20.0), &quad)
        .map_err(|e| e.to_string())?
        .value();
    ensure((f10 - f20).abs() < 1e-3, || {
        format!("F(10) = {f10}, F(20) = {f20}")
    })?;
    // log-spaced q/m over [0.01, 100]
    let n = 10_000;
    let values: Vec<f64> = (0..=n)
        .map(|i| saturation_limit(10f64.powf(-2.0 + 4.0 * i as f64 / n as f64)))
        .collect();
    ensure(values.windows(2).all(|p| p[1] > p[0]), || {
        "saturation limit not strictly increasing".into()
    })?;
    ensure(values.iter().all(|&v| (0.0..1.0).contains(&v)), || {
        "saturation limit outside [0, 1)".into()
    })
}

fn criterion_spin_momentum(sweep: &SweepResult) -> Check {
    let sm = sweep.series(MeasureKind::SpinMomentum, 1.0, None);
    let ts = sweep.series(MeasureKind::Entropy, 1.0, None);
    ensure(sm.len() == ts.len() && !sm.is_empty(), || {
        "series length mismatch".into()
    })?;
    for (a, b) in sm.iter().zip(&ts) {
        if a.0 >= 0.25 - 1e-12 {
            ensure(a.1 > b.1, || {
                format!("xi = {}: spin-momentum {} <= time-system {}", a.0, a.1, b.1)
            })?;
        }
    }
    plateau(&sm, 0.0).map_err(|e| format!("spin-momentum: {e}"))?;
    plateau(&ts, 0.0).map_err(|e| format!("time-system: {e}"))
}

fn criterion_bloch_normalization(spec: &SweepSpec) -> Check {
    let mut worst: f64 = 0.0;
    for r in &spec.w_over_m_values {
        for x in spec.xi_grid() {
            let b = bloch_z(&packet(*r), rapidity(x), &spec.quad).map_err(|e| e.to_string())?;
            worst = worst.max((b.normalization - 1.0).abs());
        }
    }
    ensure(worst < 1e-6, || format!("max |norm - 1| = {worst:e}"))
}

fn criterion_determinism(spec: &SweepSpec, first: &SweepResult) -> Check {
    let second = run_sweep(spec).map_err(|e| e.to_string())?;
    ensure(to_csv_string(first) == to_csv_string(&second), || {
        "CSV bytes differ".into()
    })?;
    for m in MeasureKind::ALL {
        let a = svg_string(first, m).map_err(|e| e.to_string())?;
        let b = svg_string(&second, m).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{m} SVG bytes differ"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let spec = SweepSpec::default();
    let sweep = run_sweep(&spec).expect("default sweep");
    let ac = |name: &str, check: Check| (name.to_string(), check);

    let results = vec![
        ac(
            "AC1  unitarity of 1000 random Wigner matrices < 1e-12",
            criterion_unitarity(),
        ),
        ac(
            "AC2  Gaussian normalization within 1e-8",
            criterion_normalization(),
        ),
        ac(
            "AC3  identity boost: F = 1, measures = 0 within 1e-9",
            criterion_identity_boost(&sweep),
        ),
        ac(
            "AC4  quadrature vs 10^6-sample oracle within 3 sigma",
            criterion_oracle(),
        ),
        ac(
            "AC5  fidelity curves: monotone, plateau, ordered",
            criterion_fidelity_curves(&sweep),
        ),
        ac(
            "AC6  entropy curves: monotone, plateau, classical limit, ordered",
            criterion_entropy_curves(&sweep),
        ),
        ac(
            "AC7  measure identities on the full grid",
            criterion_identities(&sweep),
        ),
        ac("AC8  large-rapidity saturation", criterion_saturation()),
        ac(
            "AC9  spin-momentum entropy above time-system entropy",
            criterion_spin_momentum(&sweep),
        ),
        ac(
            "AC10 boosted-state normalization within 1e-6",
            criterion_bloch_normalization(&spec),
        ),
        ac(
            "AC11 byte-identical CSV and SVG across runs",
            criterion_determinism(&spec, &sweep),
        ),
    ];

    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
