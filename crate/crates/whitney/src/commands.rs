//! One function per subcommand; each returns `(results, provenance)`.

use serde_json::{json, Map, Value};
use whitney_core::extension::{depth_audit, HermiteExtension1D, McShaneExtension, McShaneVariant};
use whitney_core::jackson::JacksonPipeline;
use whitney_core::markov::{classify_weak_markov, default_radii, refinement_delta, MarkovProbe, MarkovRatio, Verdict, DEFAULT_CAP};
use whitney_core::modulus::{default_grid, Axiom};
use whitney_core::predual::{finiteness_gap, predual_norm_bracket, predual_norm_k0, AtomicFunctional, FinitenessMode};
use whitney_core::whitney::whitney_lambda;
use whitney_core::{NormContext, Smooth, WhitneyField};

use crate::builtins::{parse_function, parse_shape, SetSource};
use crate::cli::{ExtendArgs, FinitenessArgs, JacksonArgs, MarkovArgs, Method, Mode, NormArgs, PredualArgs, ValidateArgs, Variant};
use crate::error::{input, CliResult};
use crate::formats::{load, load_field, load_modulus, load_points, AtomSpec, ModulusSpec};

pub type Outcome = CliResult<(Value, Map<String, Value>)>;

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn point(field: &WhitneyField, i: usize) -> Vec<f64> {
    field.jets()[i].base().to_vec()
}

fn check_shape(field: &WhitneyField, k: Option<usize>, n: Option<usize>) -> CliResult<()> {
    if let Some(k) = k.filter(|&k| k != field.order()) {
        return Err(input(format!("--k {k} does not match the field's k = {}", field.order())));
    }
    if let Some(n) = n.filter(|&n| n != field.dim()) {
        return Err(input(format!("--n {n} does not match the field's n = {}", field.dim())));
    }
    Ok(())
}

pub fn norm(a: &NormArgs) -> Outcome {
    let field = load_field(&a.field)?;
    check_shape(&field, a.k, a.n)?;
    let modulus = load_modulus(a.omega.as_deref())?;
    let ctx = NormContext::new(field.order(), field.dim(), modulus.clone())?;
    let r = whitney_lambda(&field, &ctx)?;
    let results = json!({
        "lambda": r.lambda,
        "lambda_sup": r.lambda_sup,
        "lambda_osc": r.lambda_osc,
        "sup_witness": r.sup_witness.map(|w| json!({
            "point": point(&field, w.point), "alpha": w.alpha.entries(),
        })),
        "osc_witness": r.osc_witness.map(|w| json!({
            "x": point(&field, w.x), "y": point(&field, w.y), "z": point(&field, w.z), "alpha": w.alpha.entries(),
        })),
    });
    let prov = json!({
        "points": field.len(),
        "k": field.order(),
        "n": field.dim(),
        "modulus": ModulusSpec::from_modulus(&modulus),
        "pairs": "all unordered pairs, Taylor remainders evaluated at both endpoints",
    });
    Ok((results, obj(prov)))
}

pub fn extend(a: &ExtendArgs) -> Outcome {
    let field = load_field(&a.input)?;
    let queries = load_points(&a.queries, "queries")?;
    if let Some(i) = queries.iter().position(|q| q.len() != field.dim()) {
        return Err(input(format!("query {i} has {} coordinates, field has n = {}", queries[i].len(), field.dim())));
    }
    let modulus = load_modulus(a.omega.as_deref())?;
    match a.method {
        Method::Mcshane => {
            let variant = match a.variant {
                Variant::Min => McShaneVariant::Min,
                Variant::Max => McShaneVariant::Max,
                Variant::Average => McShaneVariant::Average,
            };
            let ext = McShaneExtension::new(&field, modulus.clone())?.with_variant(variant);
            let values = queries.iter().map(|q| ext.eval(q)).collect::<Result<Vec<_>, _>>()?;
            let results = json!({
                "method": "mcshane",
                "values": values,
                "data_seminorm": ext.lambda(),
                "data_sup": ext.bound(),
            });
            let prov = json!({
                "queries": queries.len(),
                "modulus": ModulusSpec::from_modulus(&modulus),
                "variant": a.variant,
                "formula": "envelope of f(s) ± λ ω(‖x − s‖), clipped to [-max|f|, max|f|]",
            });
            Ok((results, obj(prov)))
        }
        Method::Hermite1d => {
            let ext = HermiteExtension1D::new(&field)?;
            let mut jets = Vec::with_capacity(queries.len());
            let mut depth = 0usize;
            for q in &queries {
                jets.push(ext.extend_jet(q[0])?.coeffs().to_vec());
                depth = depth.max(depth_audit(&ext, q)?.depth().unwrap_or(0));
            }
            let results = json!({
                "method": "hermite1d",
                "k": ext.order(),
                "derivatives": jets,
                "max_depth": depth,
            });
            let prov = json!({
                "queries": queries.len(),
                "derivative_order": ext.order(),
                "construction": "two-point Hermite blends between neighbors, cutoff-damped Taylor tails outside the hull",
            });
            Ok((results, obj(prov)))
        }
    }
}

fn axis_grid(half: f64, m: usize, n: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..m).map(|i| -half + 2.0 * half * i as f64 / (m - 1) as f64).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| axis.iter().map(move |&t| [p.clone(), vec![t]].concat())).collect();
    }
    out
}

pub fn jackson(a: &JacksonArgs) -> Outcome {
    let f = parse_function(&a.f, a.n)?;
    let modulus = load_modulus(a.omega.as_deref())?;
    let ctx = NormContext::new(a.k, a.n, modulus.clone())?;
    let pipe = JacksonPipeline::new(a.n, a.ell, a.big_n)?;
    let per_axis = a.grid.unwrap_or(match a.n {
        1 => 201,
        2 => 17,
        _ => 7,
    });
    if per_axis < 2 {
        return Err(input("--grid needs at least 2 points per axis"));
    }
    let half = a.ell as f64;
    let grid = axis_grid(half, per_axis, a.n);
    let rep = pipe.error_report(&f, &ctx, &grid)?;
    let fl = pipe.periodize(&f)?;
    let mut f_ell = Vec::with_capacity(grid.len());
    let mut smoothed = Vec::with_capacity(grid.len());
    for x in &grid {
        f_ell.push(fl.value(x));
        smoothed.push(pipe.smooth_en(&f, x)?);
    }
    let kernel = pipe.kernel();
    let results = json!({
        "kernel": {
            "N": kernel.order(),
            "half_order": kernel.half_order(),
            "degree": kernel.degree(),
            "gamma": kernel.gamma(),
        },
        "period": pipe.period(),
        "lambda": pipe.lambda(),
        "empirical_f_norm": rep.f_norm,
        "empirical_c_ell": rep.c_ell,
        "empirical_smoothed_ratio": rep.smoothed_ratio,
        "empirical_c_N": rep.c_n,
        "empirical_fit_unscaled": rep.fit_unscaled,
        "empirical_fit_scaled": rep.fit_scaled,
        "sup_errors": rep.sup_errors.iter().map(|(al, e)| json!({"alpha": al.entries(), "error": e})).collect::<Vec<_>>(),
        "profile": {"x": grid, "f_ell": f_ell, "smoothed": smoothed},
    });
    let quadrature = if a.n == 1 {
        "adaptive Gauss-Legendre (20 nodes per panel), relative and absolute tolerance 1e-13"
    } else {
        "tensor Gauss-Legendre rule, 12 nodes per panel, panels resolving the kernel peak"
    };
    let prov = json!({
        "grid": {"domain": format!("[-{half}, {half}]^{}", a.n), "per_axis": per_axis, "points": grid.len()},
        "seminorm_pairs": "adjacent grid points",
        "modulus": ModulusSpec::from_modulus(&modulus),
        "quadrature": quadrature,
        "fits": "empirical_fit_unscaled = c_N / (n C_ell max(1/N, ω(1/N))); empirical_fit_scaled uses λ/N",
    });
    Ok((results, obj(prov)))
}

pub fn predual(a: &PredualArgs) -> Outcome {
    let specs: Vec<AtomSpec> = load(&a.atoms, "atoms")?;
    let n = specs.first().map(|s| s.x.len()).ok_or_else(|| input("atoms: the list is empty"))?;
    let modulus = load_modulus(a.omega.as_deref())?;
    let ctx = NormContext::new(a.k, n, modulus.clone())?;
    let mut g = AtomicFunctional::new(ctx);
    for (i, s) in specs.iter().enumerate() {
        let (atom, coef) = s.to_atom()?;
        g.add(atom, coef).map_err(|e| crate::error::CliError::Input(format!("atom {i}: {e}")))?;
    }
    let mut results = Map::new();
    if a.k == 0 {
        let exact = predual_norm_k0(&g, &modulus)?;
        results.insert("norm".into(), json!(exact.value));
        results.insert("exact".into(), json!(true));
        results.insert("support".into(), json!(exact.support));
        results.insert("maximizer".into(), json!(exact.maximizer));
    } else {
        let b = predual_norm_bracket(&g)?;
        results.insert("exact".into(), json!(false));
        results.insert("lo".into(), json!(b.lo));
        results.insert("hi".into(), json!(b.hi));
        results.insert("support".into(), json!(b.support));
        results.insert(
            "decomposition".into(),
            json!(b.decomposition.iter().map(|(atom, t)| AtomSpec::from_atom(atom, *t)).collect::<Vec<_>>()),
        );
    }
    let prov = json!({
        "terms": g.terms().len(),
        "modulus": ModulusSpec::from_modulus(&modulus),
        "solver": {"method": "dense two-phase simplex, Bland's rule", "status": "OPTIMAL", "gap_tolerance": whitney_core::optim::GAP_TOLERANCE},
        "program": if a.k == 0 {
            "max Σ c_i u_i s.t. |u_i| <= 1, |u_i − u_j| <= ω(‖x_i − x_j‖)"
        } else {
            "lo: max pairing over jets with λ <= 1; hi: min Σ|t| over atom decompositions on the support"
        },
    });
    Ok((Value::Object(results), obj(prov)))
}

pub fn finiteness(a: &FinitenessArgs) -> Outcome {
    let field = load_field(&a.field)?;
    check_shape(&field, a.k, None)?;
    let modulus = load_modulus(a.omega.as_deref())?;
    let ctx = NormContext::new(field.order(), field.dim(), modulus.clone())?;
    let mode = match a.mode {
        Mode::Jets => FinitenessMode::Jets,
        Mode::Values => FinitenessMode::Values,
    };
    let r = finiteness_gap(&field, a.d, &ctx, mode, a.subset_limit as u128)?;
    let results = json!({
        "full": r.full,
        "subset_sup": r.subset_sup,
        "ratio": r.ratio,
        "witness": r.witness.iter().map(|&i| point(&field, i)).collect::<Vec<_>>(),
        "witness_indices": r.witness,
        "subsets_examined": r.subsets_examined,
        "early_exit": r.early_exit,
    });
    let prov = json!({
        "points": field.len(),
        "k": field.order(),
        "n": field.dim(),
        "d": a.d,
        "mode": a.mode,
        "modulus": ModulusSpec::from_modulus(&modulus),
        "enumeration": "subsets of min(d, |S|) points in lexicographic order",
        "subset_limit": a.subset_limit,
    });
    Ok((results, obj(prov)))
}

fn ratio_json(r: MarkovRatio) -> Value {
    match r {
        MarkovRatio::Finite(v) => json!(v),
        MarkovRatio::Capped => json!("CAPPED"),
    }
}

pub fn markov(a: &MarkovArgs, warn: &mut dyn FnMut(String)) -> Outcome {
    let center: Vec<f64> = load(&a.center, "center")?;
    if center.is_empty() {
        return Err(input("center: empty point"));
    }
    let set = match a.set.strip_prefix("builtin:") {
        Some(name) => SetSource::Shape(parse_shape(name, center.len())?),
        None => {
            let pts = load_points(&a.set, "set")?;
            if let Some(i) = pts.iter().position(|p| p.len() != center.len()) {
                return Err(input(format!("set point {i} has {} coordinates, center has {}", pts[i].len(), center.len())));
            }
            SetSource::Points(pts)
        }
    };
    let radii: Vec<f64> = match &a.radii {
        Some(r) => load(r, "radii")?,
        None => default_radii(),
    };
    if radii.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(input("radii must be positive and finite"));
    }
    if a.threshold.is_nan() || a.threshold <= 0.0 {
        return Err(input("--threshold must be positive"));
    }
    let sampler = |x: &[f64], r: f64| set.sample(x, r, a.grid);
    let c = classify_weak_markov(&center, sampler, a.k, &radii, a.threshold, a.grid)?;
    for r in &c.skipped {
        warn(format!("radius {r}: no sample points in the cube, skipped"));
    }
    let mut rows = Vec::with_capacity(c.ratios.len());
    for &(r, ratio) in &c.ratios {
        let sample = set.sample(&center, r, a.grid);
        let mut row = json!({"r": r, "ratio": ratio_json(ratio), "sample_size": sample.len()});
        if a.refine {
            let probe = MarkovProbe::new(center.clone(), r, a.k, sample).with_grid(a.grid);
            row["refinement_delta"] = json!(refinement_delta(&probe)?);
        }
        rows.push(row);
    }
    let results = json!({
        "verdict": match c.verdict {
            Verdict::WeakMarkov => "WEAK_MARKOV",
            Verdict::NotDetected => "NOT_DETECTED",
        },
        "min_ratio": c.min_ratio,
        "ratios": rows,
        "skipped_radii": c.skipped,
    });
    let prov = json!({
        "radii": radii,
        "grid_per_axis": a.grid,
        "threshold": a.threshold,
        "cap": DEFAULT_CAP,
        "basis": "((z − x)/r)^α, |α| <= k",
        "objective_points": "cube grid together with the sample",
        "refinement": if a.refine { json!(format!("grid {} vs {} points per axis", a.grid, 2 * a.grid - 1)) } else { Value::Null },
        "verdict_rule": "WEAK_MARKOV when the smallest ratio over the radii is at most the threshold; NOT_DETECTED is not a disproof",
    });
    Ok((results, obj(prov)))
}

pub fn validate_omega(a: &ValidateArgs) -> Outcome {
    let spec: ModulusSpec = load(&a.omega, "omega")?;
    let modulus = spec.to_modulus()?;
    let grid: Vec<f64> = if a.grid == "default" { default_grid() } else { load(&a.grid, "grid")? };
    let report = modulus.validate(&grid)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let axiom = match v.axiom {
                Axiom::Nondecreasing => "nondecreasing",
                Axiom::RatioNondecreasing => "ratio_nondecreasing",
                Axiom::VanishesAtZero => "vanishes_at_zero",
            };
            json!({"axiom": axiom, "witness": [v.witness.0, v.witness.1], "values": [v.values.0, v.values.1]})
        })
        .collect();
    let results = json!({"valid": report.is_valid(), "violations": violations});
    let prov = json!({
        "modulus": spec,
        "grid": report.grid,
        "zero_limit_decay": whitney_core::modulus::ZERO_LIMIT_DECAY,
    });
    Ok((results, obj(prov)))
}
