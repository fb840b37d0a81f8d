//! Development scratch runs for the regularization numerics (phase 2:
//! non-circular curves, solenoid sweep, timing).

use inductance_core::*;
use std::time::Instant;

fn main() {
    let spec = QuadratureSpec64::default();
    let units = UnitSystem::Reduced;
    let pi = std::f64::consts::PI;

    for (name, lp) in [
        ("ellipse", Loop64::ellipse(2.0, 1.0).unwrap()),
        ("trefoil", Loop64::trefoil().unwrap()),
    ] {
        let l = lp.total_arclength();
        let k2 = lp.curvature_sq_integral();
        let eps = default_eps_schedule(&lp);
        println!("== {name}: L={l:.6} intk2={k2:.6} eps_max={:.4}", eps[0]);
        let t0 = Instant::now();
        let (hn, hw) = regularize::hadamard_self_both(&lp, &eps, &spec, units).unwrap();
        println!("  hadamard took {:?}", t0.elapsed());
        println!(
            "  H_N={:.8} H_W={:.8}; (H_W-H_N)/2L - 1 = {:.3e}",
            hn.value,
            hw.value,
            ((hw.value - hn.value) / (2.0 * l) - 1.0).abs()
        );
        println!(
            "  free clog dev {:.3e}; c2N rel {:.3e}; c2W rel {:.3e}; err_est N {:.2e}",
            (hn.fit.c_log.unwrap() - 2.0 * l).abs() / (2.0 * l),
            (hn.fit.c2.unwrap() - 11.0 / 24.0 * k2).abs() / (11.0 / 24.0 * k2),
            (hw.fit.c2.unwrap() - 5.0 / 24.0 * k2).abs() / (5.0 / 24.0 * k2),
            hn.error_estimate
        );
        let t0 = Instant::now();
        let zs = default_z_schedule::<f64>();
        let cn = continuation_self(&lp, InductanceForm::Neumann, &zs, &spec, units).unwrap();
        println!(
            "  continuation took {:?}; A_N={:.8} vs H_N rel {:.3e} (err_est {:.2e})",
            t0.elapsed(),
            cn.value,
            (cn.value - hn.value).abs() / hn.value.abs().max(1.0),
            cn.error_estimate
        );
        let range = regularize::default_phi_fit_range(&lp);
        let t0 = Instant::now();
        let (r1, r3n) = residue_estimates(&lp, InductanceForm::Neumann, range).unwrap();
        let (_, r3w) = residue_estimates(&lp, InductanceForm::Weber, range).unwrap();
        println!(
            "  residues took {:?}: res1 rel {:.3e}; res3N rel {:.3e}; res3W rel {:.3e}",
            t0.elapsed(),
            (r1 - 2.0 * l).abs() / (2.0 * l),
            (r3n + 0.75 * k2).abs() / (0.75 * k2),
            (r3w + 0.25 * k2).abs() / (0.25 * k2)
        );
    }

    // Helix (criterion-2 geometry) with the default spec.
    let sol = SolenoidSpec {
        r: 1.0,
        l: 2.0,
        n: 4.0,
    };
    let hel = helix_curve(&sol).unwrap();
    let le = hel.total_arclength();
    let gap = (hel.point(0.0) - hel.point(le)).norm();
    let eps_h = default_eps_schedule(&hel);
    println!("== helix n=4: L={le:.6} gap={gap:.6} eps_max={:.5}", eps_h[0]);
    let t0 = Instant::now();
    let (hn, hw) = regularize::hadamard_self_both(&hel, &eps_h, &spec, units).unwrap();
    println!("  hadamard (default spec) took {:?}", t0.elapsed());
    let diff = hw.value - hn.value;
    println!(
        "  H_W-H_N = {:.8}; vs 2L rel {:.3e}; vs 2(L-gap) rel {:.3e}",
        diff,
        (diff - 2.0 * le).abs() / (2.0 * le),
        (diff - 2.0 * (le - gap)).abs() / (2.0 * (le - gap))
    );
    println!("  free clog dev {:.3e}", (hn.fit.c_log.unwrap() - 2.0 * le).abs() / (2.0 * le));

    // Solenoid convergence study, coarse spec.
    let coarse = QuadratureSpec64::coarse();
    let limit = closed_form_inductance(1.0, 2.0, units).unwrap();
    let t0 = Instant::now();
    let rows = convergence_study(1.0, 2.0, &[1.0, 2.0, 4.0, 8.0], InductanceForm::Neumann, &coarse)
        .unwrap();
    println!("== solenoid study took {:?} (limit {:.6})", t0.elapsed());
    for (n, v) in &rows {
        println!("  n={n}: H/n^2 = {:.6}, |dev| = {:.6}", v, (v - limit).abs());
    }

    // Neumann vs Weber on the n=8 helix, coarse spec.
    let sol8 = SolenoidSpec {
        r: 1.0,
        l: 2.0,
        n: 8.0,
    };
    let hel8 = helix_curve(&sol8).unwrap();
    let le8 = hel8.total_arclength();
    let eps8 = default_eps_schedule(&hel8);
    let t0 = Instant::now();
    let (h8n, h8w) = regularize::hadamard_self_both(&hel8, &eps8, &coarse, units).unwrap();
    println!(
        "  n=8 both forms took {:?}; H_W-H_N vs 2(L-l): rel {:.3e}",
        t0.elapsed(),
        ((h8w.value - h8n.value) - 2.0 * (le8 - 2.0)).abs() / (2.0 * (le8 - 2.0))
    );

    // Power-2 homothety: the regularized power-2 energy is scale invariant.
    let c2 = Loop64::circle(2.0).unwrap();
    let eps2 = default_eps_schedule(&c2);
    let p2 = power2_self_regularized(&c2, InductanceForm::Neumann, &eps2, &spec).unwrap();
    println!(
        "== power2 on radius-2 circle: {:.8} (unit circle golden {:.8})",
        p2.value,
        -2.0 * pi * pi
    );

    // Homothety of the Hadamard value at lambda = 1/2 and 2.
    let golden_hn = 8.0 * pi * (std::f64::consts::LN_2 - 1.0);
    for lam in [0.5, 2.0] {
        let cl = Loop64::circle(lam).unwrap();
        let epsl = default_eps_schedule(&cl);
        let h = hadamard_self(&cl, InductanceForm::Neumann, &epsl, &spec, units).unwrap();
        let want = lam * golden_hn + 4.0 * pi * lam * lam.ln();
        println!(
            "  homothety lam={lam}: H={:.8} want {:.8} rel {:.3e}",
            h.value,
            want,
            (h.value - want).abs() / want.abs()
        );
    }

    // Alpha identity on a linked pair.
    let a = Loop64::circle(1.0).unwrap();
    let b = Loop64::circle_at(1.0, Vec364::new(1.0, 0.0, 0.0), Vec364::new(0.0, 1.0, 0.0)).unwrap();
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        let en = power_alpha_energy(&a, &b, alpha, InductanceForm::Neumann, &spec).unwrap();
        let ew = power_alpha_energy(&a, &b, alpha, InductanceForm::Weber, &spec).unwrap();
        println!(
            "  alpha={alpha}: E_N={:.8} alpha*E_W={:.8} rel {:.3e}",
            en,
            alpha * ew,
            (en - alpha * ew).abs() / en.abs().max(1e-30)
        );
    }
    let e0 = power_alpha_energy(&a, &b, 0.0, InductanceForm::Neumann, &spec).unwrap();
    println!("  alpha=0 Neumann energy = {:.3e} (want 0)", e0);

    // Orientation flip.
    let spec_q = QuadratureSpec64::default();
    let b_rev = b.reversed().unwrap();
    let m = mutual_inductance(&a, &b, InductanceForm::Neumann, units, &spec_q).unwrap();
    let m_rev = mutual_inductance(&a, &b_rev, InductanceForm::Neumann, units, &spec_q).unwrap();
    println!("  orientation: M={:.10} M_rev={:.10} sum {:.3e}", m, m_rev, m + m_rev);

    // Far-separated decay.
    let far = Loop64::circle_at(1.0, Vec364::new(0.0, 0.0, 1000.0), Vec364::new(0.0, 0.0, 1.0))
        .unwrap();
    let mfar = mutual_inductance(&a, &far, InductanceForm::Neumann, units, &spec_q).unwrap();
    println!("  far pair M = {:.3e} (bound 1e-4 mu0 = {:.3e})", mfar, 4.0 * pi * 1e-4);

    // Offset examples.
    let circ = Loop64::circle(1.0).unwrap();
    let off = circ.offset_curve(0.1).unwrap();
    let radii: Vec<f64> = off
        .sample_positions(16)
        .iter()
        .map(|p| (p.x * p.x + p.y * p.y).sqrt())
        .collect();
    println!("  offset circle radii ~0.9: {:?}", &radii[..4]);
    let ell = Loop64::ellipse(2.0, 1.0).unwrap();
    let elloff = ell.offset_curve(0.05).unwrap();
    println!(
        "  ellipse offset length {:.6} < {:.6}; min dist {:.6}",
        elloff.total_arclength(),
        ell.total_arclength(),
        min_pair_distance(&ell, &elloff, 1024)
    );
}
