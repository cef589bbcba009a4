use std::fs;
use std::path::Path;

use attrarith::attractor::entropy_invariant;
use attrarith::cohomology::{
    dual_twist, fermat_hodge_numbers, fermat_primitive_dim, hj_expand, resolution_contributions, shioda_katsura_check,
    SingularCurveDatum,
};
use attrarith::flow::{write_trace_csv, FlowState};
use attrarith::jacobian::{descent_count, enumerate_forms, genus};
use attrarith::modular::{hcp_precision, j_value_with_bound};
use attrarith::numeric::float_to_decimal;
use attrarith::{
    attractor_point, certify_attractor_cm, class_number, decompose_jacobian, flow_integrate, hilbert_class_polynomial,
    k3_form_certificate, model_from_tau, torsion_points, weber_function, BigComplex, ChargeData, CurveSignature, Error,
    FlowConfig, GramMatrix,
};
use serde_json::{json, Value};

use crate::args::*;
use crate::cache;
use crate::output::{Certificate, Envelope, Output, Table};

pub enum Failure {
    /// Exit status 2.
    Input(String),
    /// Exit status 3.
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_computational() {
            Failure::Computation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<Output, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn complex_json(z: &BigComplex) -> Value {
    let (re, im) = z.to_decimal_strings();
    json!({ "re": re, "im": im })
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| input(format!("{what}: '{x}' is not an integer"))))
        .collect()
}

fn parse_complex(s: &str, prec: u32, what: &str) -> Result<BigComplex, Failure> {
    let (re, im) = s.split_once(',').ok_or_else(|| input(format!("{what}: expected RE,IM")))?;
    BigComplex::parse(prec, re, im).ok_or_else(|| input(format!("{what}: '{s}' is not a pair of decimals")))
}

fn read_gram(path: &Path) -> Result<GramMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<i64>> = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
    } else {
        text.lines().filter(|l| !l.trim().is_empty()).map(|l| parse_ints(l, "gram row")).collect::<Result<_, _>>()?
    };
    Ok(GramMatrix::new(rows)?)
}

fn charge(args: &ChargeArgs) -> Result<(ChargeData, Value), Failure> {
    match (args.p2, args.q2, args.pq, &args.gram) {
        (Some(p2), Some(q2), Some(pq), None) => Ok((
            ChargeData::new(p2, q2, pq),
            json!({ "p2": p2.to_string(), "q2": q2.to_string(), "pq": pq.to_string() }),
        )),
        (None, None, None, Some(path)) => {
            let gram = read_gram(path)?;
            let p = parse_ints(args.p.as_deref().unwrap_or_default(), "--p")?;
            let q = parse_ints(args.q.as_deref().unwrap_or_default(), "--q")?;
            let strs = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let rows: Vec<Vec<String>> = gram.rows().iter().map(|r| strs(r)).collect();
            let inputs = json!({ "gram": rows, "p": strs(&p), "q": strs(&q) });
            Ok((ChargeData::from_vectors(p, q, gram)?, inputs))
        }
        _ => Err(input("give either --p2 --q2 --pq or --gram --p --q")),
    }
}

fn charge_json(c: &ChargeData) -> Value {
    json!({ "p2": c.p2.to_string(), "q2": c.q2.to_string(), "pq": c.pq.to_string() })
}

pub fn attract(args: &ChargeArgs, prec: u32) -> Outcome {
    let (c, inputs) = charge(args)?;
    let pt = attractor_point(&c)?;
    let tau = pt.tau.to_big_complex(prec);
    let entropy = entropy_invariant(&c, prec)?;
    let mut certificates =
        vec![Certificate::new("charge_equation", pt.satisfies_charge_equation(&c), pt.satisfies_charge_equation(&c))];
    if let Some(prov) = &c.provenance {
        let k3 = k3_form_certificate(&prov.p, &prov.q, &prov.gram)?;
        certificates.push(Certificate::new("period_isotropy", k3.is_isotropic(), k3.is_isotropic()));
        certificates.push(Certificate::new("period_positivity", k3.is_positive(), k3.is_positive()));
    }
    let result = json!({
        "charge": charge_json(&c),
        "tau": pt.tau.to_string(),
        "tau_value": complex_json(&tau),
        "discriminant": pt.disc.to_string(),
        "form": { "a": pt.form.a.to_string(), "b": pt.form.b.to_string(), "c": pt.form.c.to_string() },
        "form_discriminant": pt.form.discriminant().to_string(),
        "class_number": pt.class_number.to_string(),
        "entropy": float_to_decimal(&entropy),
    });
    Ok(Output {
        envelope: Envelope { command: "attract".into(), inputs, result, certificates, precision_bits: prec },
        table: None,
    })
}

pub fn certify(args: &ChargeArgs, prec: u32) -> Outcome {
    let (c, inputs) = charge(args)?;
    let cert = certify_attractor_cm(&c, prec)?;
    let coeffs: Vec<String> = cert.polynomial.coeffs.iter().map(|x| x.to_string()).collect();
    let result = json!({
        "charge": charge_json(&c),
        "tau": cert.point.tau.to_string(),
        "j": complex_json(&cert.j.with_prec(prec)),
        "form_discriminant": cert.form_disc.to_string(),
        "fundamental_discriminant": cert.fundamental_disc.to_string(),
        "conductor": cert.conductor.to_string(),
        "field": cert.field.label(),
        "class_number": cert.class_number.to_string(),
        "polynomial": coeffs,
    });
    let certificates = vec![
        Certificate::new(
            "cm_residual",
            float_to_decimal(&rug::Float::with_val(prec, &cert.residual)),
            cert.residual < cert.threshold,
        ),
        Certificate::new("cm_threshold", float_to_decimal(&cert.threshold), true),
        Certificate::new(
            "hcp_rounding_residual",
            format!("{:e}", cert.polynomial.residual),
            cert.polynomial.residual < 0.25,
        ),
        Certificate::new("series_error_log2", format!("{:.2}", cert.series.total_log2()), true),
    ];
    Ok(Output {
        envelope: Envelope { command: "certify".into(), inputs, result, certificates, precision_bits: prec },
        table: None,
    })
}

pub fn hcp(args: &HcpArgs) -> Outcome {
    let disc = args.disc;
    let h = class_number(disc)?;
    let records = args.cache.as_deref().map(cache::load).unwrap_or_default();
    let hit =
        cache::lookup(&records, disc).and_then(|r| Some((r.coeffs.clone(), r.residual.as_ref()?.parse::<f64>().ok()?)));
    let hit = match hit {
        Some((coeffs, _)) if coeffs.len() != h + 1 => {
            eprintln!("warning: cached polynomial for {disc} has the wrong degree; recomputing");
            None
        }
        other => other,
    };
    let (coeffs, residual) = match hit {
        Some(found) => found,
        None => {
            let poly = hilbert_class_polynomial(disc)?;
            let coeffs: Vec<String> = poly.coeffs.iter().map(|x| x.to_string()).collect();
            if let Some(path) = &args.cache {
                let record = cache::Record {
                    disc: disc.to_string(),
                    coeffs: coeffs.clone(),
                    residual: Some(format!("{:e}", poly.residual)),
                };
                if let Err(e) = cache::store(path, records, record) {
                    eprintln!("warning: could not write cache {}: {e}", path.display());
                }
            }
            (coeffs, poly.residual)
        }
    };
    let degree = coeffs.len() - 1;
    let result = json!({ "disc": disc.to_string(), "degree": degree.to_string(), "coeffs": coeffs, "residual": format!("{residual:e}") });
    let certificates = vec![Certificate::new("rounding_residual", format!("{residual:e}"), residual < 0.25)];
    let table = Table {
        header: vec!["degree", "coefficient"],
        rows: coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect(),
    };
    Ok(Output {
        envelope: Envelope {
            command: "hcp".into(),
            inputs: json!({ "disc": disc.to_string() }),
            result,
            certificates,
            precision_bits: hcp_precision(disc, degree),
        },
        table: Some(table),
    })
}

pub fn jval(args: &JvalArgs, prec: u32) -> Outcome {
    let tau = parse_complex(&args.tau, prec, "--tau")?;
    let eval = j_value_with_bound(&tau, prec)?;
    let m = eval.matrix;
    let result = json!({
        "j": complex_json(&eval.value.with_prec(prec)),
        "reduced_tau": complex_json(&eval.reduced_tau.with_prec(prec)),
        "matrix": [[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]],
        "truncation": eval.series.truncation.to_string(),
    });
    let certificates = vec![Certificate::new("series_error_log2", format!("{:.2}", eval.series.total_log2()), true)];
    Ok(Output {
        envelope: Envelope {
            command: "jval".into(),
            inputs: json!({ "tau": complex_json(&tau) }),
            result,
            certificates,
            precision_bits: prec,
        },
        table: None,
    })
}

pub fn weber(args: &WeberArgs, prec: u32) -> Outcome {
    let (c, mut inputs) = charge(&args.charge)?;
    inputs["n"] = json!(args.n.to_string());
    let pt = attractor_point(&c)?;
    let model = model_from_tau(&pt.tau.to_big_complex(prec), prec)?;
    let case = model.weber_case()?;
    let points = torsion_points(&model, args.n)?;
    let mut worst = rug::Float::new(64);
    let mut rows = Vec::new();
    let mut listed = Vec::new();
    for p in &points {
        let w = weber_function(&model, p)?;
        let r = model.ode_residual(&p.x, &p.y);
        if r > worst {
            worst = r;
        }
        let (a, b, n) = p.coords;
        let (xr, xi) = p.x.with_prec(prec).to_decimal_strings();
        let (wr, wi) = w.with_prec(prec).to_decimal_strings();
        listed.push(json!({
            "a": a.to_string(), "b": b.to_string(), "n": n.to_string(),
            "x": { "re": xr, "im": xi },
            "weber": { "re": wr, "im": wi },
        }));
        rows.push(vec![a.to_string(), b.to_string(), n.to_string(), xr, xi, wr, wi]);
    }
    let tol = attrarith::numeric::pow2(64, -(prec as i32) / 2 + 10);
    let result = json!({
        "tau": pt.tau.to_string(),
        "a": complex_json(&model.a.with_prec(prec)),
        "b": complex_json(&model.b.with_prec(prec)),
        "j": complex_json(&model.j.with_prec(prec)),
        "case": case.label(),
        "points": listed,
    });
    let certificates = vec![Certificate::new("ode_residual_max", float_to_decimal(&worst), worst < tol)];
    Ok(Output {
        envelope: Envelope { command: "weber".into(), inputs, result, certificates, precision_bits: prec },
        table: Some(Table { header: vec!["a", "b", "n", "x_re", "x_im", "weber_re", "weber_im"], rows }),
    })
}

pub fn curve(args: &CurveArgs, prec: u32) -> Outcome {
    let sig = CurveSignature::new(args.d, args.k, args.l)?;
    let factors = decompose_jacobian(&sig);
    let g = genus(&sig);
    let triple = |f: &attrarith::FormIndex| vec![f.r.to_string(), f.s.to_string(), f.t.to_string()];
    let listed: Vec<Value> = factors
        .iter()
        .map(|f| {
            let mut v = json!({
                "key": triple(f.key()),
                "orbit_size": f.orbit.len().to_string(),
                "level": f.level.to_string(),
                "dimension": f.dimension.to_string(),
                "cm_set": f.cm_set.units.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
            });
            if args.orbits {
                v["orbit"] = json!(f.orbit.iter().map(triple).collect::<Vec<_>>());
            }
            v
        })
        .collect();
    let dim_sum: u64 = factors.iter().map(|f| f.dimension).sum();
    let descent = descent_count(&sig)?;
    let forms = enumerate_forms(&sig).len() as u64;
    let result = json!({
        "signature": sig.to_string(),
        "genus": g.to_string(),
        "form_count": forms.to_string(),
        "descent_count": descent.to_string(),
        "factors": listed,
    });
    let certificates = vec![
        Certificate::new("dimension_sum", dim_sum, dim_sum == g),
        Certificate::new("descent_count", descent, descent == forms),
    ];
    let rows = factors
        .iter()
        .map(|f| {
            let k = f.key();
            vec![
                k.r.to_string(),
                k.s.to_string(),
                k.t.to_string(),
                f.orbit.len().to_string(),
                f.level.to_string(),
                f.dimension.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        envelope: Envelope {
            command: "curve".into(),
            inputs: json!({ "d": args.d.to_string(), "k": args.k.to_string(), "l": args.l.to_string() }),
            result,
            certificates,
            precision_bits: prec,
        },
        table: Some(Table { header: vec!["r", "s", "t", "orbit_size", "level", "dimension"], rows }),
    })
}

pub fn resolve(args: &ResolveArgs, prec: u32) -> Outcome {
    let r = hj_expand(args.n, args.q)?;
    let (h2, h3) = resolution_contributions(&[SingularCurveDatum { genus: args.genus, n: args.n, q: args.q }])?;
    let dual = dual_twist(args.n, args.q)?;
    let dual_steps = hj_expand(args.n, dual)?.steps;
    let mut reversed = r.steps.clone();
    reversed.reverse();
    let strs = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let result = json!({
        "steps": strs(&r.steps),
        "length": r.length().to_string(),
        "delta_h2": h2.to_string(),
        "delta_h3": h3.to_string(),
        "dual_twist": dual.to_string(),
        "dual_steps": strs(&dual_steps),
    });
    let certificates = vec![Certificate::new("dual_reverses_steps", dual_steps == reversed, dual_steps == reversed)];
    Ok(Output {
        envelope: Envelope {
            command: "resolve".into(),
            inputs: json!({ "n": args.n.to_string(), "q": args.q.to_string(), "genus": args.genus.to_string() }),
            result,
            certificates,
            precision_bits: prec,
        },
        table: None,
    })
}

pub fn fermat(args: &FermatArgs, prec: u32) -> Outcome {
    if args.d < 2 {
        return Err(input("--d must be at least 2"));
    }
    let dim = fermat_primitive_dim(args.d, args.dim);
    let mut result = json!({ "primitive_dim": dim.to_string() });
    let mut table = None;
    if args.hodge {
        let h = fermat_hodge_numbers(args.d, args.dim);
        result["hodge"] = json!(h.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        let rows = h.iter().enumerate().map(|(w, x)| vec![(w + 1).to_string(), x.to_string()]).collect();
        table = Some(Table { header: vec!["weight", "count"], rows });
    }
    Ok(Output {
        envelope: Envelope {
            command: "fermat".into(),
            inputs: json!({ "d": args.d.to_string(), "dim": args.dim.to_string() }),
            result,
            certificates: Vec::new(),
            precision_bits: prec,
        },
        table,
    })
}

pub fn sk_check(args: &SkArgs, prec: u32) -> Outcome {
    let c = shioda_katsura_check(args.d, args.r, args.s)?;
    let result = json!({
        "middle": c.middle.to_string(),
        "twisted_left": c.twisted_left.to_string(),
        "twisted_right": c.twisted_right.to_string(),
        "invariant": c.invariant.to_string(),
        "lower_product": c.lower_product.to_string(),
        "lhs": c.lhs.to_string(),
        "rhs": c.rhs.to_string(),
    });
    let certificates = vec![Certificate::new("identity", c.holds, c.holds)];
    let out = Output {
        envelope: Envelope {
            command: "sk-check".into(),
            inputs: json!({ "d": args.d.to_string(), "r": args.r.to_string(), "s": args.s.to_string() }),
            result,
            certificates,
            precision_bits: prec,
        },
        table: None,
    };
    if c.holds {
        Ok(out)
    } else {
        Err(Failure::Computation(format!("identity fails: {} != {}", c.lhs, c.rhs)))
    }
}

fn save_trace(path: &Path, trajectory: &[FlowState]) -> Result<(), Failure> {
    let file = fs::File::create(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    write_trace_csv(trajectory, std::io::BufWriter::new(file)).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn trace_table(trajectory: &[FlowState]) -> Table {
    let mut buf = Vec::new();
    write_trace_csv(trajectory, &mut buf).expect("writing to memory");
    let text = String::from_utf8(buf).expect("ascii");
    let rows = text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect();
    Table { header: vec!["rho", "U", "re_tau", "im_tau", "Z2"], rows }
}

pub fn flow(args: &FlowArgs, prec: u32) -> Outcome {
    let (c, mut inputs) = charge(&args.charge)?;
    let cfg = FlowConfig {
        step: args.step,
        tol: args.tol,
        max_steps: args.max_steps,
        precision: prec,
        ..FlowConfig::default()
    };
    let tau0 = parse_complex(&args.tau0, prec, "--tau0")?;
    inputs["tau0"] = complex_json(&tau0);
    inputs["step"] = json!(args.step.to_string());
    inputs["tol"] = json!(args.tol.to_string());
    inputs["max_steps"] = json!(args.max_steps.to_string());
    let run = match flow_integrate(&c, &tau0, &cfg) {
        Ok(run) => run,
        Err(Error::NonConvergence { steps, trajectory }) => {
            if let Some(path) = &args.trace {
                save_trace(path, &trajectory)?;
            }
            return Err(Failure::Computation(format!("flow did not converge in {steps} steps")));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.trace {
        save_trace(path, &run.trajectory)?;
    }
    let cert = &run.certificate;
    let last = run.trajectory.last().expect("non-empty trajectory");
    let result = json!({
        "endpoint": complex_json(&cert.endpoint),
        "exact_tau": complex_json(&cert.exact),
        "steps": cert.steps.to_string(),
        "rho": last.rho.to_string(),
        "z2": float_to_decimal(&last.z2),
        "entropy": float_to_decimal(&cert.entropy),
    });
    let ok = |x: &rug::Float| *x < 10.0 * args.tol;
    let certificates = vec![
        Certificate::new("endpoint_error", float_to_decimal(&cert.endpoint_error), ok(&cert.endpoint_error)),
        Certificate::new("z2_error", float_to_decimal(&cert.z2_error), ok(&cert.z2_error)),
        Certificate::new("monotone", cert.monotone, cert.monotone),
    ];
    Ok(Output {
        envelope: Envelope { command: "flow".into(), inputs, result, certificates, precision_bits: prec },
        table: Some(trace_table(&run.trajectory)),
    })
}
