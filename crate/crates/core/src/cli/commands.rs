use num_bigint::BigInt;
use rand::SeedableRng;

use super::{
    Cli, Command, ConfigError, ConicScanArgs, Cor5Args, DivisorGapsArgs, Example1Args,
    IdentityArgs, InstanceArgs, KTableArgs, OverlapArgs, Params, PolyGapsArgs, Prop1Args,
};
use crate::conic::{
    chord_bound_check, conic_instance, diameter_sq, enumerate_points, ex2_holds,
    example1_asymptotics, example1_generate, r_leading_coefficient, remark3_determinant,
};
use crate::gaps::{
    admissible_s, cor1_check, cor2_check, cor3_check, prop1_check, theorem2_subset_check,
    BoundPremise, SizeValue, SizedRing,
};
use crate::overlap::{cor4_check, cor5_check, prop2_check, MeasureSpace, OverlapIntInstance};
use crate::report::{CheckReport, Conclusion, Quantity, Witness};
use crate::rings::{
    format_rational, parse_rational, ExactPower, MultiPoly, QuadInt, QuadRing, Rational, Ring,
};
use crate::vandermonde::random::{random_instance, AnyInstance, RingChoice, Rng64};
use crate::vandermonde::{k_by_enumeration, k_function, verify_identity, IdentityInstance};

type CmdResult = Result<Vec<CheckReport>, ConfigError>;

fn cfg(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

fn param(params: &mut Params, key: &str, value: impl ToString) {
    params.insert(key.to_string(), value.to_string());
}

pub(super) fn dispatch(cli: &Cli, params: &mut Params) -> CmdResult {
    if let Some(seed) = cli.seed {
        param(params, "seed", seed);
    }
    match &cli.command {
        Command::VerifyIdentity(a) => verify_identity_cmd(a, cli.seed, params),
        Command::KTable(a) => k_table(a, params),
        Command::Prop1(a) => prop1_cmd(a, cli.seed, params),
        Command::ConicScan(a) => conic_scan(a, params),
        Command::Example1(a) => example1(a, params),
        Command::DivisorGaps(a) => divisor_gaps(a, params),
        Command::PolyGaps(a) => poly_gaps(a, params),
        Command::Overlap(a) => overlap(a, params),
        Command::Cor5(a) => cor5(a, params),
    }
}

fn parse_int(what: &str, text: &str) -> Result<BigInt, ConfigError> {
    text.trim()
        .parse()
        .map_err(|_| cfg(format!("{what}: expected an integer, got {text:?}")))
}

fn parse_int_list(what: &str, text: &str) -> Result<Vec<BigInt>, ConfigError> {
    text.split(',').map(|x| parse_int(what, x)).collect()
}

fn parse_rational_list(text: &str) -> Result<Vec<Rational>, ConfigError> {
    text.split(',')
        .map(|x| parse_rational(x).map_err(Into::into))
        .collect()
}

fn parse_quad(ring: &QuadRing, text: &str) -> Result<QuadInt, ConfigError> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| cfg(format!("quadratic element {text:?}: expected \"a,b\"")))?;
    Ok(ring.element(parse_int("a", a)?, parse_int("b", b)?))
}

fn build_instance(
    choice: RingChoice,
    alpha: &str,
    gamma: &str,
) -> Result<AnyInstance, ConfigError> {
    let items: Vec<&str> = alpha.split(';').map(str::trim).collect();
    Ok(match choice {
        RingChoice::Integer => {
            let alpha = items
                .iter()
                .map(|x| parse_int("alpha", x))
                .collect::<Result<_, _>>()?;
            AnyInstance::Integer(IdentityInstance::from_alpha_gamma(
                alpha,
                parse_int("gamma", gamma)?,
            )?)
        }
        RingChoice::Quadratic(d) => {
            let ring = QuadRing::new(d)?;
            let alpha = items
                .iter()
                .map(|x| parse_quad(&ring, x))
                .collect::<Result<_, _>>()?;
            AnyInstance::Quadratic(IdentityInstance::from_alpha_gamma(
                alpha,
                parse_quad(&ring, gamma)?,
            )?)
        }
        RingChoice::Univariate | RingChoice::Bivariate => {
            let arity = if choice == RingChoice::Univariate {
                1
            } else {
                2
            };
            let alpha = items
                .iter()
                .map(|x| MultiPoly::parse(x, arity))
                .collect::<crate::Result<_>>()?;
            AnyInstance::Polynomial(IdentityInstance::from_alpha_gamma(
                alpha,
                MultiPoly::parse(gamma, arity)?,
            )?)
        }
    })
}

/// The explicit instance, or `trials` seeded random ones.
fn instances(
    args: &InstanceArgs,
    seed: Option<u64>,
    params: &mut Params,
) -> Result<Vec<AnyInstance>, ConfigError> {
    let choice: RingChoice = args.ring.parse()?;
    param(params, "ring", choice);
    match (args.trials, &args.alpha, &args.gamma) {
        (Some(trials), None, None) => {
            let seed = seed.ok_or_else(|| cfg("--seed is required with --trials"))?;
            if let Some(m) = args.m {
                if !(2..=crate::vandermonde::MAX_DET_DIM).contains(&m) {
                    return Err(cfg(format!("--m {m} is outside [2, 12]")));
                }
                param(params, "m", m);
            }
            param(params, "trials", trials);
            let mut rng = Rng64::seed_from_u64(seed);
            Ok((0..trials)
                .map(|i| {
                    let m = args.m.unwrap_or(2 + (i % 5) as usize);
                    random_instance(choice, &mut rng, m)
                })
                .collect())
        }
        (None, Some(alpha), Some(gamma)) => {
            param(params, "alpha", alpha);
            param(params, "gamma", gamma);
            Ok(vec![build_instance(choice, alpha, gamma)?])
        }
        _ => Err(cfg(
            "give either --alpha with --gamma, or --trials with --seed",
        )),
    }
}

fn rename(mut report: CheckReport, prefix: Option<String>) -> CheckReport {
    if let Some(p) = prefix {
        report.name = format!("{p} {}", report.name);
    }
    report
}

fn identity_reports<R: Ring>(
    inst: &IdentityInstance<R>,
    k: Option<usize>,
    prefix: Option<String>,
) -> CmdResult {
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..inst.m()).collect(),
    };
    ks.into_iter()
        .map(|k| Ok(rename(verify_identity(inst, k)?, prefix.clone())))
        .collect()
}

fn verify_identity_cmd(args: &IdentityArgs, seed: Option<u64>, params: &mut Params) -> CmdResult {
    let list = instances(&args.instance, seed, params)?;
    if let Some(k) = args.k {
        param(params, "k", k);
    }
    let many = list.len() > 1;
    let mut out = Vec::new();
    for (i, inst) in list.iter().enumerate() {
        let prefix = many.then(|| format!("trial {i}:"));
        out.extend(match inst {
            AnyInstance::Integer(x) => identity_reports(x, args.k, prefix)?,
            AnyInstance::Quadratic(x) => identity_reports(x, args.k, prefix)?,
            AnyInstance::Polynomial(x) => identity_reports(x, args.k, prefix)?,
        });
    }
    Ok(out)
}

fn k_table(args: &KTableArgs, params: &mut Params) -> CmdResult {
    let s = parse_rational(&args.s)?;
    param(params, "m", args.m);
    param(params, "s", format_rational(&s));
    let k = k_function(&s, args.m)?;
    let (brute, maximizers) = k_by_enumeration(&s, args.m);
    let mut report = CheckReport::new(format!("K[s={}, m={}]", format_rational(&s), args.m));
    report
        .note("value", format_rational(&k.value))
        .note("argmax_k", k.argmax_k)
        .note(
            "maximizers",
            maximizers
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
    let holds = k.value == brute;
    report.conclusion = Some(Conclusion::equal(
        Quantity::Rational(k.value.clone()),
        Quantity::Rational(brute.clone()),
        Some(k.value.cmp(&brute)),
        holds,
    ));
    Ok(vec![report])
}

fn parse_l(text: &str) -> Result<SizeValue, ConfigError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("exp(").and_then(|x| x.strip_suffix(')')) {
        return Ok(SizeValue::Exp(parse_rational(inner)?));
    }
    Ok(SizeValue::Power(t.parse::<ExactPower>()?))
}

fn prop1_report<R: SizedRing>(
    inst: &IdentityInstance<R>,
    s: Option<&Rational>,
    l: Option<&SizeValue>,
    prefix: Option<String>,
) -> Result<CheckReport, ConfigError> {
    let phi = R::NATURAL_SIZE;
    let s = match s {
        Some(s) => s.clone(),
        None => admissible_s(inst, phi, 8)?,
    };
    let premise = BoundPremise {
        s,
        l: l.cloned().unwrap_or_else(|| SizeValue::one_for(phi)),
    };
    Ok(rename(prop1_check(inst, phi, &premise)?, prefix))
}

fn prop1_cmd(args: &Prop1Args, seed: Option<u64>, params: &mut Params) -> CmdResult {
    let list = instances(&args.instance, seed, params)?;
    let s = args.s.as_deref().map(parse_rational).transpose()?;
    let l = args.l.as_deref().map(parse_l).transpose()?;
    if let Some(s) = &s {
        param(params, "s", format_rational(s));
    }
    if let Some(l) = &l {
        param(params, "L", l);
    }
    let many = list.len() > 1;
    list.iter()
        .enumerate()
        .map(|(i, inst)| {
            let prefix = many.then(|| format!("trial {i}:"));
            match inst {
                AnyInstance::Integer(x) => prop1_report(x, s.as_ref(), l.as_ref(), prefix),
                AnyInstance::Quadratic(x) => prop1_report(x, s.as_ref(), l.as_ref(), prefix),
                AnyInstance::Polynomial(x) => prop1_report(x, s.as_ref(), l.as_ref(), prefix),
            }
        })
        .collect()
}

fn conic_scan(args: &ConicScanArgs, params: &mut Params) -> CmdResult {
    if args.r_min == 0 || args.r_min > args.r_max {
        return Err(cfg(format!(
            "empty R range [{}, {}]",
            args.r_min, args.r_max
        )));
    }
    param(params, "d", args.d);
    param(params, "r_min", args.r_min);
    param(params, "r_max", args.r_max);
    param(params, "m", args.m);
    let mut out = Vec::new();
    for r in args.r_min..=args.r_max {
        let r = BigInt::from(r);
        let points = enumerate_points(args.d, &r)?;
        if points.is_empty() {
            continue;
        }
        out.push(theorem2_subset_check(args.d, &r, &points, args.m)?);
    }
    Ok(out)
}

fn example1(args: &Example1Args, params: &mut Params) -> CmdResult {
    let (t, d) = (args.t, args.d);
    param(params, "t", t);
    param(params, "d", d);
    let fam = example1_generate(t, d)?;
    let mut out = Vec::new();

    let mut family = CheckReport::new("family");
    for p in &fam.points {
        family.premise(
            format!("{p} on X^2 + {d}Y^2 = {}", fam.r),
            p.form(d) == fam.r,
        );
    }
    family.note("u", &fam.u).note("R", &fam.r);
    family.witness = Some(Witness::new("points", fam.points.iter()));
    out.push(family);

    let det = remark3_determinant(t, d)?;
    let expected = QuadRing::order(d)?.element(0, 8);
    let mut det_report = CheckReport::new("det1");
    det_report.conclusion = Some(Conclusion::equal(
        Quantity::Element(det.to_string()),
        Quantity::Element(expected.to_string()),
        None,
        det == expected,
    ));
    out.push(det_report);

    let inst = conic_instance(d, &fam.points)?;
    out.push(cor1_check(inst.alpha(), 3)?);
    out.push(chord_bound_check(d, &fam.points)?);

    let (ratio_r, ratio_d) = example1_asymptotics(t, d)?;
    let mut asym = CheckReport::new("asymptotics");
    asym.note("C_R", r_leading_coefficient(d))
        .note("D_sq", diameter_sq(&fam.points))
        .note("ratio_R", format_rational(&ratio_r))
        .note("ratio_D_sq", format_rational(&ratio_d))
        .note("diameter_bound_holds", ex2_holds(t, d)?);
    out.push(asym);
    Ok(out)
}

fn divisor_gaps(args: &DivisorGapsArgs, params: &mut Params) -> CmdResult {
    let n = parse_int("N", &args.n)?;
    let q = parse_int("q", &args.q)?;
    let a = parse_int("a", &args.a)?;
    let s = parse_rational(&args.s)?;
    param(params, "N", &n);
    param(params, "q", &q);
    param(params, "a", &a);
    param(params, "s", format_rational(&s));
    let subset = args
        .subset
        .as_deref()
        .map(|x| parse_int_list("subset", x))
        .transpose()?;
    if let Some(sub) = &args.subset {
        param(params, "subset", sub);
    }
    Ok(vec![cor2_check(&n, &q, &a, &s, subset.as_deref())?])
}

fn poly_gaps(args: &PolyGapsArgs, params: &mut Params) -> CmdResult {
    let polys = args
        .polys
        .split(';')
        .map(|p| MultiPoly::parse(p, args.arity))
        .collect::<crate::Result<Vec<_>>>()?;
    let common = MultiPoly::parse(&args.common, args.arity)?;
    let s = parse_rational(&args.s)?;
    param(params, "polys", &args.polys);
    param(params, "common", &args.common);
    param(params, "s", format_rational(&s));
    param(params, "arity", args.arity);
    Ok(vec![cor3_check(&polys, &common, &s)?])
}

fn overlap(args: &OverlapArgs, params: &mut Params) -> CmdResult {
    if let Some(values) = &args.values {
        let a = parse_rational_list(values)?;
        param(params, "values", values);
        let ks: Vec<usize> = match args.k {
            Some(k) => {
                param(params, "k", k);
                vec![k]
            }
            None => (0..a.len()).collect(),
        };
        return ks.into_iter().map(|k| Ok(prop2_check(&a, k)?)).collect();
    }
    match (&args.weights, &args.sets) {
        (Some(w), Some(sets)) => {
            param(params, "weights", w);
            param(params, "sets", sets);
            let weights = parse_rational_list(w)?;
            let sets = sets
                .split(';')
                .map(|set| {
                    let set = set.trim();
                    if set.is_empty() {
                        return Ok(Vec::new());
                    }
                    set.split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| cfg(format!("bad atom index {x:?}")))
                        })
                        .collect()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(vec![cor4_check(&MeasureSpace::new(weights, sets)?)?])
        }
        _ => Err(cfg("give --values, or --weights with --sets")),
    }
}

fn cor5(args: &Cor5Args, params: &mut Params) -> CmdResult {
    let c = parse_int("c", &args.c)?;
    let a = parse_int_list("a", &args.a)?;
    param(params, "c", &c);
    param(params, "a", &args.a);
    let s = args.s.as_deref().map(parse_rational).transpose()?;
    if let Some(s) = &s {
        param(params, "s", format_rational(s));
    }
    let inst = OverlapIntInstance::new(c, a)?;
    let ks: Vec<usize> = match args.k {
        Some(k) => {
            param(params, "k", k);
            vec![k]
        }
        None => (0..inst.a().len()).collect(),
    };
    ks.into_iter()
        .map(|k| Ok(cor5_check(&inst, k, s.as_ref())?))
        .collect()
}
