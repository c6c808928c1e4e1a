use std::f64::consts::PI;

use wspectra::quad::integrate;
use wspectra::quantize::{build_kn, build_t, build_weyl, build_weyl_of_dual, hs_norm_matrix, reflection};
use wspectra::spectra::{eig_hermitian, singular_values};
use wspectra::symbols::{sample, zeta_cutoff, DualOptions};
use wspectra::{Grid1D, Grid2D, SymbolField};

/// Eigenvalues of the Weyl quantization of `exp(-r(x² + ξ²))` (Mehler's formula).
fn mehler(r: f64, k: usize) -> f64 {
    (1.0 / (1.0 + r)) * ((1.0 - r) / (1.0 + r)).powi(k as i32)
}

#[test]
fn mehler_oracle_is_self_consistent() {
    for r in [1.0 / 3.0, 0.5, 1.0, 2.0] {
        let trace: f64 = (0..2000).map(|k| mehler(r, k)).sum();
        let hs: f64 = (0..2000).map(|k| mehler(r, k).powi(2)).sum();
        // (2π)^{-1} ∬ a = 1/(2r),  (2π)^{-1} ∬ a² = 1/(4r)
        assert!((trace - 1.0 / (2.0 * r)).abs() < 1e-12);
        assert!((hs - 1.0 / (4.0 * r)).abs() < 1e-12);
    }
}

#[test]
fn gaussian_one_has_a_single_eigenvalue() {
    let g = Grid1D::new(8.0, 256).unwrap();
    let op = build_weyl(&SymbolField::gaussian(1.0).unwrap(), &g, &Grid1D::new(8.0, 256).unwrap()).unwrap();
    let sd = eig_hermitian(&op).unwrap();
    let big: Vec<f64> = sd.pos_eigs.iter().chain(&sd.neg_eigs).copied().filter(|&v| v >= 1e-3).collect();
    assert_eq!(big.len(), 1, "{big:?}");
    assert!((big[0] - 0.5).abs() < 1e-3);
    assert!((hs_norm_matrix(&op).powi(2) - 0.25).abs() < 0.0025);
}

#[test]
fn gaussian_third_matches_mehler() {
    let g = Grid1D::new(10.0, 192).unwrap();
    let op = build_weyl(&SymbolField::gaussian(1.0 / 3.0).unwrap(), &g, &Grid1D::new(12.0, 192).unwrap()).unwrap();
    assert!(op.warnings.is_empty(), "{:?}", op.warnings);
    let sd = eig_hermitian(&op).unwrap();
    for k in 0..3 {
        assert!((sd.pos_eigs[k] - mehler(1.0 / 3.0, k)).abs() < 1e-3);
    }
    assert!(sd.neg_eigs.first().map_or(true, |&v| v < 1e-6));
}

#[test]
fn hs_identity_for_every_t() {
    // bump of radius 2 centred at (0.3, -0.2): ∬|a|² = 2π R² ∫_0^1 e^{2 - 2/(1-u²)} u du
    let sym = SymbolField::bump(2.0, (0.3, -0.2)).unwrap();
    let radial = integrate(|u| if u >= 1.0 { 0.0 } else { (2.0 - 2.0 / (1.0 - u * u)).exp() * u }, 0.0, 1.0, 1e-12, 0.0).unwrap();
    let rhs = (2.0 * PI * 4.0 * radial) / (2.0 * PI);
    let g = Grid1D::new(4.0, 96).unwrap();
    let gx = Grid1D::new(4.0, 96).unwrap();
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let op = build_t(&sym, &g, &gx, t).unwrap();
        let lhs = hs_norm_matrix(&op).powi(2);
        assert!((lhs - rhs).abs() <= 0.01 * rhs, "t={t}: {lhs} vs {rhs}");
    }
}

#[test]
fn sector_bump_hs_identity() {
    let (r, angle) = (3.0, PI / 2.0);
    let sym = SymbolField::sector_bump(angle, r).unwrap();
    // independent polar quadrature of ∬_Ω |φ|²
    let radial = integrate(|rho| {
        let u = rho / r;
        if u >= 1.0 { 0.0 } else { (2.0 - 2.0 / (1.0 - u * u)).exp() * rho }
    }, 0.0, r, 1e-12, 0.0)
    .unwrap();
    let rhs = angle * radial / (2.0 * PI);
    // the ξ-jump gives the kernel a 1/|x - y| tail, so the box must be wide
    let g = Grid1D::new(48.0, 2048).unwrap();
    let op = build_weyl(&sym, &g, &Grid1D::new(4.0, 256).unwrap()).unwrap();
    let lhs = hs_norm_matrix(&op).powi(2);
    assert!((lhs - rhs).abs() <= 0.01 * rhs, "{lhs} vs {rhs}");
}

#[test]
fn xi_only_symbol_is_quantization_independent() {
    let sym = SymbolField::power_decay(0.0, 4.0).unwrap();
    let g = Grid1D::new(4.0, 64).unwrap();
    let gx = Grid1D::new(8.0, 128).unwrap();
    let w = build_weyl(&sym, &g, &gx).unwrap();
    let l = build_kn(&sym, &g, &gx).unwrap();
    assert!(hs_norm_matrix(&w.sub(&l).unwrap()) <= 1e-12 * hs_norm_matrix(&w));
}

#[test]
fn reflection_preserves_singular_values() {
    let sym = SymbolField::sector_bump(PI / 2.0, 2.0).unwrap();
    let g = Grid1D::new(4.0, 64).unwrap();
    let w = build_weyl(&sym, &g, &Grid1D::new(8.0, 128).unwrap()).unwrap();
    let wu = w.matmul(&reflection(&g)).unwrap();
    let (a, b) = (singular_values(&w), singular_values(&wu));
    for (x, y) in a.svals.iter().zip(&b.svals) {
        assert!((x - y).abs() <= 1e-13 * a.svals[0]);
    }
}

#[test]
fn weyl_minus_kn_bounded_by_mixed_derivative() {
    let phi00 = 1.0;
    let sym = SymbolField::b0_closed(phi00).unwrap();
    // ∬|∂x∂ξ b0|² = (φ/4π)² (∫ |(ζ(t)/t)'|² dt)², derivative by central differences of ζ
    let dz = |t: f64| {
        let f = |s: f64| if s == 0.0 { 0.0 } else { zeta_cutoff(s) / s };
        let h = 1e-5;
        (f(t + h) - f(t - h)) / (2.0 * h)
    };
    let one = 2.0 * integrate(|t| dz(t).powi(2), 1.0, 200.0, 1e-10, 0.0).unwrap();
    let bound = (phi00 / (4.0 * PI)).powi(2) * one * one / (8.0 * PI);
    let g = Grid1D::new(16.0, 256).unwrap();
    let gx = Grid1D::new(24.0, 768).unwrap();
    let w = build_weyl(&sym, &g, &gx).unwrap();
    let l = build_kn(&sym, &g, &gx).unwrap();
    let lhs = hs_norm_matrix(&w.sub(&l).unwrap()).powi(2);
    assert!(lhs > 0.0);
    assert!(lhs <= 1.1 * bound, "{lhs} vs {bound}");
}

#[test]
fn gaussian_duality_top_twenty() {
    // the dual of exp(-r|τ|²) is (1/r) exp(-|τ|²/r)
    let r = 1.0 / 3.0;
    let g = Grid1D::new(10.0, 256).unwrap();
    let gx = Grid1D::new(12.0, 256).unwrap();
    let a = build_weyl(&SymbolField::gaussian(r).unwrap(), &g, &gx).unwrap();
    let d = build_weyl(&SymbolField::gaussian(1.0 / r).unwrap().scaled(1.0 / r), &g, &gx).unwrap();
    let (sa, sd) = (singular_values(&a), singular_values(&d));
    for k in 0..20 {
        assert!((sa.svals[k] - sd.svals[k]).abs() <= 0.01 * sa.svals[k], "k={k}: {} vs {}", sa.svals[k], sd.svals[k]);
    }
}

#[test]
fn numerical_dual_matches_closed_form() {
    let r = 1.0 / 3.0;
    let s = sample(&SymbolField::gaussian(r).unwrap(), &Grid2D::square(11.0, 160).unwrap());
    let out = Grid2D::square(3.0, 24).unwrap();
    let d = wspectra::symbols::dual_symbol(&s, &out, DualOptions::default());
    assert!(!d.provenance.contains("truncated"));
    let exact = SymbolField::gaussian(1.0 / r).unwrap().scaled(1.0 / r);
    for j in 0..24 {
        for k in 0..24 {
            let (x, xi) = (out.x.node(j), out.xi.node(k));
            assert!((d.at(j, k) - exact.eval(x, xi)).norm() < 1e-9);
        }
    }
}

#[test]
fn numerical_dual_preserves_singular_values() {
    let sym = SymbolField::bump(6.0, (0.5, -0.3)).unwrap();
    let s = sample(&sym, &Grid2D::square(7.0, 192).unwrap());
    let g = Grid1D::new(7.0, 160).unwrap();
    let gx = Grid1D::new(7.0, 192).unwrap();
    let a = build_weyl(&sym, &g, &gx).unwrap();
    let d = build_weyl_of_dual(&s, &g, &gx, DualOptions::default()).unwrap();
    let (sa, sd) = (singular_values(&a), singular_values(&d));
    for k in 0..20 {
        assert!((sa.svals[k] - sd.svals[k]).abs() <= 0.01 * sa.svals[k], "k={k}: {} vs {}", sa.svals[k], sd.svals[k]);
    }
}
