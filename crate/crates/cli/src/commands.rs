//! One function per subcommand. Each returns a [`Report`] whose rows pair a
//! computed value with the value it is expected to equal.

use sklyanin_core::blowup::{
    blowdown_view, eventually_equal, generate_graded, seeds_for_s_blowup, seeds_for_t_blowup, veronese_view, ClosedForm,
};
use sklyanin_core::linalg;
use sklyanin_core::orbit::OrbitCalculus;
use sklyanin_core::report::Report;
use sklyanin_core::riemann_roch::{coordinates, rr_basis};
use sklyanin_core::sklyanin::{ideal_slice_rank, SklyaninAlgebra, SklyaninParams};
use sklyanin_core::virtual_blowup::{run_example, ExampleConfig, X2Mode};
use sklyanin_core::{Error, Rational, Result};

use crate::config::{Config, Div, DivisorText};

/// Window used by the brute-force effectiveness scan in `veff`.
pub const WINDOW: usize = 30;

pub fn cmd_rr(cfg: &Config, d: &Div) -> Result<Report> {
    let ring = cfg.ring()?;
    let ff = ring.function_field();
    let space = rr_basis(ff, d)?;
    let deg = d.degree();
    let mut rep = Report::new();
    rep.info("divisor", None, DivisorText(d).to_string(), "input");
    rep.info("deg D", None, deg, "input");
    if deg == 0 {
        rep.info("dim L(D)", None, space.dim(), "degree 0: 1 iff D is principal");
    } else {
        rep.check("dim L(D)", None, space.dim(), deg.max(0), "Riemann-Roch on a genus-1 curve");
    }
    for (i, f) in space.basis().iter().enumerate() {
        rep.info(format!("basis[{i}]"), None, f.to_string(), "computed");
        let mut ok = true;
        for (p, n) in d.terms() {
            ok &= ff.ord_at(f, p)? >= -n;
        }
        if !d.terms().any(|(p, _)| p.is_infinity()) {
            ok &= ff.ord_at_infinity(f)? >= 0;
        }
        rep.check(format!("poles of basis[{i}] within D"), None, ok, true, "pole-order check by local expansion");
    }
    // independence: coordinates of the basis in itself are the unit vectors
    let mut rows = Vec::new();
    for f in space.basis() {
        rows.push(coordinates(ff, f, &space)?.ok_or_else(|| Error::Inconsistent("basis element outside its span".into()))?);
    }
    rep.check("rank of basis", None, linalg::rank(&rows, space.dim()), space.dim(), "linear independence");
    Ok(rep)
}

pub fn cmd_veff(cfg: &Config, x: &Div) -> Result<Report> {
    let sigma = &cfg.sigma;
    let calc = OrbitCalculus::new(sigma, cfg.orbit_cap);
    let cert = calc.is_virtually_effective(x)?;
    let mut rep = Report::new();
    rep.info("divisor", None, DivisorText(x).to_string(), "input");
    let effective: Vec<bool> = (0..=WINDOW).map(|n| x.cumulative(sigma, n).is_effective()).collect();
    let window_lo = WINDOW / 2;
    rep.check(
        "virtually effective",
        None,
        cert.verdict,
        effective[window_lo..].iter().all(|&e| e),
        "brute-force scan of [x]_n for n in [15, 30]",
    );
    let least = (1..=WINDOW).find(|&n| effective[n]);
    let fmt_opt = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
    rep.check("least effective n", None, fmt_opt(cert.least_effective_n), fmt_opt(least), "brute-force scan of [x]_n for n in [1, 30]");
    if let Some(n0) = cert.threshold {
        rep.info("threshold", None, n0, "prefix and suffix sums");
        let stable = (n0..=WINDOW).all(|n| effective[n]) && (n0 == 0 || !effective[n0 - 1]);
        rep.check("threshold is sharp", None, stable, true, "brute-force scan of [x]_n for n in [0, 30]");
    }
    if let Some(w) = &cert.witness {
        let n = w.from_n.max(1);
        let p = w.point_at(sigma, n);
        rep.info("witness", Some(n), format!("coefficient {} at {p}", w.coefficient), "prefix and suffix sums");
        let c = x.cumulative(sigma, n).coeff(&p);
        rep.check("witness coefficient", Some(n), c, w.coefficient, "direct evaluation of [x]_n");
    }
    if cert.verdict {
        let dec = calc.decompose(x)?;
        rep.info("u", None, DivisorText(&dec.u).to_string(), "greedy decomposition");
        rep.info("v", None, DivisorText(&dec.v).to_string(), "greedy decomposition");
        rep.info("k", None, dec.k, "least k with v <= [u]_k");
        let back = dec.u.sub(&dec.v).add(&dec.v.twist(sigma, 1));
        rep.check("u - v + v^sigma = x", None, back == *x, true, "decomposition round trip");
        rep.check("u, v effective", None, dec.u.is_effective() && dec.v.is_effective(), true, "decomposition round trip");
        rep.check("v <= [u]_k", None, dec.v.le(&dec.u.cumulative(sigma, dec.k)), true, "decomposition round trip");
        let norm = calc.normalized_divisor(x)?;
        rep.info("normalized divisor", None, DivisorText(&norm).to_string(), "orbit sums");
        rep.check("deg normalized divisor", None, norm.degree(), x.degree(), "orbit sums preserve degree");
    }
    Ok(rep)
}

pub fn cmd_blowup(cfg: &Config, d: &Div, max_degree: usize) -> Result<Report> {
    cfg.require_cubic_sheaf()?;
    let ring = cfg.ring()?;
    let sigma = &cfg.sigma;
    let e = d.degree();
    let mut rep = Report::new();
    rep.info("divisor", None, DivisorText(d).to_string(), "input");
    let seeds = seeds_for_s_blowup(&ring, d)?;
    for (&i, s) in &seeds {
        rep.check("seed dim", Some(i), s.dim(), 3 * i as i64 - i as i64 * e, "Riemann-Roch on [D_L]_i - [d]_i");
    }
    let view = generate_graded(&ring, &seeds, max_degree)?;
    let closed = ClosedForm::blowup_bar(e).expand(max_degree + 1);
    for (n, (&got, &want)) in view.dims().iter().zip(&closed.coeffs).enumerate() {
        rep.check("generated dim", Some(n), got, want, "expansion of (t^2 + (1-d)t + 1)/(t-1)^2");
    }
    let lifted = view.hilbert().lift_by_g();
    let lifted_closed = ClosedForm::blowup_lifted(e).expand(max_degree + 1);
    rep.check("lifted series", None, lifted.coeffs.clone(), lifted_closed.coeffs, "expansion of (t^2 + (1-d)t + 1)/((t-1)^2 (1-t^3))");
    let full = blowdown_view(&ring, d, max_degree)?;
    rep.check("S(d)_n = H0(L_n(-[d]_n)) for n >= 1", None, eventually_equal(&ring, &view, &full, 1, max_degree)?, true, "blowup of a point set of degree <= 2");
    let cube = d.cumulative(sigma, 3);
    let t_view = generate_graded(&ring, &seeds_for_t_blowup(&ring, &cube)?, max_degree)?;
    let n_max = max_degree / 3;
    let ver = veronese_view(&view, 3, n_max)?;
    let t_ver = veronese_view(&t_view, 3, n_max)?;
    for n in 1..=n_max {
        rep.check("dim T([d]_3)", Some(3 * n), t_ver.piece(n)?.dim(), ver.piece(n)?.dim(), "3-Veronese of S(d)");
        rep.check("S(d)^(3) = T([d]_3)", Some(3 * n), ring.equal(ver.piece(n)?, t_ver.piece(n)?)?, true, "3-Veronese of S(d)");
    }
    Ok(rep)
}

pub fn cmd_example(cfg: &Config, point: &str, max_degree: usize, x2_mode: X2Mode) -> Result<Report> {
    cfg.require_cubic_sheaf()?;
    let ring = cfg.ring()?;
    let mut ex = ExampleConfig::new(cfg.point(point)?);
    ex.max_degree = max_degree;
    ex.x2_mode = x2_mode;
    run_example(&ring, &ex)
}

/// Parse `"a,b,c"` into exact rationals.
pub fn parse_params(s: &str) -> Result<SklyaninParams<Rational>> {
    let v: Vec<Rational> = s
        .split(',')
        .map(|t| sklyanin_core::scalar::parse_rational(t).ok_or_else(|| Error::Input(format!("not a rational: {t:?}"))))
        .collect::<Result<_>>()?;
    match <[Rational; 3]>::try_from(v) {
        Ok([a, b, c]) => Ok(SklyaninParams::new(a, b, c)),
        Err(v) => Err(Error::Input(format!("expected three parameters, got {}", v.len()))),
    }
}

/// Largest degree at which the word-space oracle is run.
pub const SLICE_ORACLE_DEGREE: usize = 4;

pub fn cmd_sklyanin(params: &SklyaninParams<Rational>, max_degree: usize) -> Result<Report> {
    if max_degree > 7 {
        return Err(Error::OutOfRange(format!("free-algebra degree {max_degree} > 7")));
    }
    let top = max_degree.max(4);
    let alg = SklyaninAlgebra::new(params.clone(), top);
    let mut rep = Report::new();
    rep.info("params", None, format!("{}, {}, {}", params.a, params.b, params.c), "input");
    let scr = alg.screen()?;
    rep.check("dim S_2", Some(2), scr.dim_s2, 6usize, "degeneracy screen");
    rep.check("dim S_3", Some(3), scr.dim_s3, 10usize, "degeneracy screen");
    rep.check("dim central cubics", Some(3), scr.central_dim, 1usize, "unique central cubic");
    for n in 0..=max_degree {
        rep.check("dim S_n", Some(n), alg.graded_dim(n)?, (n + 1) * (n + 2) / 2, "Hilbert series 1/(1-t)^3");
    }
    for n in 0..=SLICE_ORACLE_DEGREE.min(max_degree) {
        let brute = 3usize.pow(n as u32) - ideal_slice_rank(params, n);
        rep.check("dim S_n by ideal slice", Some(n), brute, alg.graded_dim(n)?, "word-space elimination");
    }
    if scr.degenerate {
        return Ok(rep);
    }
    let g = alg.central_cubics()?.remove(0);
    for n in 1..=max_degree {
        rep.check("dim (S/gS)_n", Some(n), alg.quotient_dim(&g, n)?, 3 * n, "S/gS has the dims of B(E, L, sigma)");
        if n >= 3 {
            rep.check("rank g S_{n-3}", Some(n), alg.g_image_rank(&g, n)?, alg.graded_dim(n - 3)?, "left multiplication by g is injective");
        }
    }
    Ok(rep)
}
