use std::collections::BTreeMap;

use intrinsic_density::constructions::{
    build_prefix_tree, build_wct_injection, extract_candidates, factorial, graph_set, hit_indices,
    introreduce, parse_guesses, prefix_code_sampler, prefix_set, trace_from_sampler, wct_target,
};
use intrinsic_density::samplers::coding::{
    cantor_pair, cantor_unpair, finite_set_code, finite_set_decode, string_code, string_decode,
};
use intrinsic_density::samplers::preimage_partial_density;
use intrinsic_density::weakrep::{
    build_p, dominating_adversary, fixed_width_code, fixed_width_decode, image_set,
    interleave_family, p_bound, prefix_free_code, prefix_free_decode, psi_eval, table_of_program,
    FamilyRegistry, Outcome, StringIndexMap, WeakRepTable,
};
use intrinsic_density::{
    density_profile, BitString, Density, Error, Nat, Result, Sampler, SetStream,
};
use serde_json::{json, Value};

use crate::inputs::{function_table, nat_set, read_file, u64_list};
use crate::report::{Run, Table, Verdict};
use crate::{Cli, CodesCommand, Command, WeakrepCommand};

pub fn dispatch(cli: &Cli) -> (String, Result<Run>) {
    let h = cli.horizon;
    match &cli.command {
        Command::Density {
            set,
            checkpoints,
            sampler,
        } => (
            "density".into(),
            density(set, checkpoints, sampler.as_deref(), h),
        ),
        Command::PrefixSet { set, count } => ("prefix-set".into(), prefix_set_cmd(set, *count, h)),
        Command::TreeDecode {
            set,
            sampler,
            q,
            full_height,
            depth,
        } => (
            "tree-decode".into(),
            tree_decode(set, sampler.as_deref(), *q, *full_height, *depth, h),
        ),
        Command::Introreduce { codes } => ("introreduce".into(), introreduce_cmd(codes)),
        Command::Wct {
            set,
            nmax,
            oracle_trace,
            trace_file,
        } => (
            "wct".into(),
            wct(set, *nmax, *oracle_trace, trace_file.as_deref(), h),
        ),
        Command::Graph { f } => ("graph".into(), graph(f)),
        Command::Trace { sampler, q, n } => ("trace".into(), trace(sampler, *q, *n)),
        Command::Hits { sampler, f, q } => ("hits".into(), hits(sampler, f, *q)),
        Command::Dom {
            f,
            sampler,
            q,
            nmax,
        } => ("dom".into(), dom(f, sampler, *q, *nmax)),
        Command::Codes(c) => codes(c),
        Command::Weakrep(w) => weakrep(w),
        Command::Pset {
            g,
            manifest,
            eof,
            checkpoints,
        } => ("pset".into(), pset(g, manifest, eof, checkpoints)),
    }
}

fn nat(n: &Nat) -> Value {
    Value::String(n.to_string())
}

fn ratio(r: &Density) -> Value {
    Value::String(r.to_string())
}

fn density(set: &str, checkpoints: &str, sampler: Option<&str>, horizon: u64) -> Result<Run> {
    let s = SetStream::parse(set, horizon)?;
    let cps = u64_list(checkpoints)?;
    let profile = density_profile(&s, &cps)?;
    let complement = density_profile(&s.complement(), &cps)?;

    let one = Density::from_integer(1);
    let sums_ok = profile
        .values
        .iter()
        .zip(&complement.values)
        .all(|(a, b)| a + b == one);
    let mut verdicts = vec![
        Verdict::new(
            "profile-well-formed",
            profile.is_well_formed(),
            "0 <= v <= 1, v*n integral, sup/inf attained",
        ),
        Verdict::new(
            "complement-sums-to-one",
            sums_ok,
            "rho_n(S) + rho_n(complement S) = 1 at every checkpoint",
        ),
    ];

    let mut table = Table::new(["checkpoint", "density"]);
    let mut results = json!({
        "checkpoints": profile.checkpoints,
        "values": profile.values.iter().map(ratio).collect::<Vec<_>>(),
        "observed_sup": ratio(&profile.observed_sup),
        "observed_inf": ratio(&profile.observed_inf),
        "complement_values": complement.values.iter().map(ratio).collect::<Vec<_>>(),
    });

    let sampled = match sampler {
        Some(spec) => {
            let smp = Sampler::parse(spec)?;
            let values = cps
                .iter()
                .map(|&n| preimage_partial_density(&s, &smp, n))
                .collect::<Result<Vec<_>>>()?;
            results["sampler"] = json!(smp.label());
            results["preimage_values"] = json!(values.iter().map(ratio).collect::<Vec<_>>());
            table.header.push("preimage_density".into());
            verdicts.push(Verdict::new(
                "preimage-in-range",
                values.iter().all(|v| *v <= one),
                "0 <= rho_n(s^-1(S)) <= 1",
            ));
            Some(values)
        }
        None => None,
    };
    for (i, (n, v)) in profile.checkpoints.iter().zip(&profile.values).enumerate() {
        let mut row = vec![n.to_string(), v.to_string()];
        if let Some(sv) = &sampled {
            row.push(sv[i].to_string());
        }
        table.push(row);
    }

    Ok(Run {
        parameters: json!({ "set": set, "checkpoints": cps, "sampler": sampler }),
        horizons: json!({ "set": nat(s.horizon()) }),
        results,
        verdicts,
        table,
    })
}

fn prefix_set_cmd(set: &str, count: u64, horizon: u64) -> Result<Run> {
    let a = SetStream::parse(set, horizon)?;
    let p = prefix_set(&a)?;
    let mut table = Table::new(["length", "prefix", "code"]);
    let mut members = Vec::new();
    let mut all_members = true;
    for k in 0..count {
        let sigma = a.prefix(k)?;
        let code = string_code(&sigma);
        all_members &= p.contains(&code)?;
        table.push([k.to_string(), sigma.to_string(), code.to_string()]);
        members.push(json!({ "length": k, "prefix": sigma.to_string(), "code": nat(&code) }));
    }
    Ok(Run {
        parameters: json!({ "set": set, "count": count }),
        horizons: json!({ "set": nat(a.horizon()), "prefix_set": nat(p.horizon()) }),
        results: json!({ "members": members }),
        verdicts: vec![Verdict::new(
            "codes-are-members",
            all_members,
            "every listed code passes the prefix-set membership test",
        )],
        table,
    })
}

fn tree_decode(
    set: &str,
    sampler: Option<&str>,
    q: u64,
    full_height: u64,
    depth: u64,
    horizon: u64,
) -> Result<Run> {
    let a = SetStream::parse(set, horizon)?;
    let s = match sampler {
        Some(spec) => Sampler::parse(spec)?,
        None => prefix_code_sampler(&a)?,
    };
    let tree = build_prefix_tree(&s, q, full_height, depth)?;
    let candidates = extract_candidates(&tree);

    let window = 2 * q * depth;
    let target = prefix_set(&a)?;
    let mut count = 0u64;
    let mut hypothesis = true;
    for j in 0..window {
        if target.contains(&s.eval(j)?)? {
            count += 1;
        }
        let n = j + 1;
        if n > full_height && count * q <= n {
            hypothesis = false;
        }
    }
    let truth = a.prefix(depth)?;
    let found = candidates.contains(&truth);
    let max_width = tree.max_pruned_width() as u64;

    let mut table = Table::new(["level", "width"]);
    for (l, level) in tree.levels.iter().enumerate() {
        table.push([l, level.len()]);
    }
    Ok(Run {
        parameters: json!({
            "set": set, "sampler": s.label(), "q": q,
            "full_height": full_height, "depth": depth,
        }),
        horizons: json!({ "set": nat(a.horizon()), "sampling_window": window }),
        results: json!({
            "widths": tree.levels.iter().map(Vec::len).collect::<Vec<_>>(),
            "candidates": candidates.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "true_prefix": truth.to_string(),
            "true_prefix_found": found,
            "density_hypothesis": hypothesis,
        }),
        verdicts: vec![
            Verdict::new(
                "width-at-most-2q",
                max_width <= 2 * q,
                format!(
                    "max width beyond the full part is {max_width}, 2q = {}",
                    2 * q
                ),
            ),
            Verdict::new(
                "path-recovered",
                !hypothesis || found,
                "if rho_n > 1/q for all full_height < n <= 2q*depth then A|depth is a candidate",
            ),
        ],
        table,
    })
}

fn introreduce_cmd(codes: &str) -> Result<Run> {
    let set = nat_set(codes)?;
    let params = json!({ "codes": set.iter().map(nat).collect::<Vec<_>>() });
    let mut table = Table::new(["position", "bit"]);
    match introreduce(&set) {
        Ok(bits) => {
            for (i, b) in bits.bits().iter().enumerate() {
                table.push([i.to_string(), (*b as u8).to_string()]);
            }
            Ok(Run {
                parameters: params,
                horizons: json!({ "defined_bits": bits.len() }),
                results: json!({ "bits": bits.to_string() }),
                verdicts: vec![Verdict::new("consistent", true, "all codes agree")],
                table,
            })
        }
        Err(Error::Inconsistent {
            position,
            first,
            second,
        }) => Ok(Run {
            parameters: params,
            horizons: json!({}),
            results: json!({
                "rejected": { "position": position, "first": nat(&first), "second": nat(&second) },
            }),
            verdicts: vec![Verdict::new(
                "consistent",
                false,
                format!("codes {first} and {second} disagree at position {position}"),
            )],
            table,
        }),
        Err(e) => Err(e),
    }
}

fn wct(
    set: &str,
    nmax: u64,
    oracle_trace: bool,
    trace_file: Option<&str>,
    horizon: u64,
) -> Result<Run> {
    let a = SetStream::parse(set, horizon)?;
    let guesses: BTreeMap<u64, BitString> = match (oracle_trace, trace_file) {
        (true, _) => (1..=nmax)
            .map(|n| Ok((n, wct_target(&a, n)?)))
            .collect::<Result<_>>()?,
        (false, Some(path)) => parse_guesses(&read_file(path)?)?,
        (false, None) => {
            return Err(Error::InvalidArgument(
                "one of --oracle-trace or --trace-file is required".into(),
            ))
        }
    };
    let g = build_wct_injection(&guesses, nmax)?;
    let sampler = g.sampler();

    let mut verdicts = Vec::new();
    let mut per_n = Vec::new();
    for n in 1..=nmax {
        let checkpoint = factorial(n)?;
        let rho = preimage_partial_density(&a, &sampler, checkpoint)?;
        let bound = Density::from_integer(1) - Density::new(1, n);
        let is_trace = match wct_target(&a, n) {
            Ok(t) => guesses.get(&n) == Some(&t),
            Err(Error::InsufficientElements { .. }) => false,
            Err(e) => return Err(e),
        };
        let fallbacks = g.fallbacks_in_block(n)?.len();
        if is_trace {
            verdicts.push(Verdict::new(
                format!("density-bound-n{n}"),
                rho >= bound,
                format!("rho_{checkpoint}(g^-1(A)) = {rho} >= {bound}"),
            ));
        }
        per_n.push(json!({
            "n": n,
            "checkpoint": checkpoint,
            "density": ratio(&rho),
            "bound": ratio(&bound),
            "guess_is_true_trace": is_trace,
            "fallbacks_in_block": fallbacks,
        }));
    }
    let distinct: std::collections::BTreeSet<u64> = g.table.iter().copied().collect();
    verdicts.push(Verdict::new(
        "injective",
        distinct.len() == g.table.len(),
        format!("{} distinct values on [0, {}!)", distinct.len(), nmax),
    ));

    let mut table = Table::new(["j", "g(j)"]);
    for (j, v) in g.table.iter().enumerate() {
        table.push([j as u64, *v]);
    }
    Ok(Run {
        parameters: json!({
            "set": set, "nmax": nmax,
            "trace": if oracle_trace { "oracle".to_string() } else { format!("file:{}", trace_file.unwrap_or_default()) },
        }),
        horizons: json!({ "set": nat(a.horizon()), "injection_domain": g.table.len() }),
        results: json!({
            "per_n": per_n,
            "guesses": guesses.iter().map(|(n, b)| (n.to_string(), b.to_string())).collect::<BTreeMap<_, _>>(),
        }),
        verdicts,
        table,
    })
}

fn graph(f: &str) -> Result<Run> {
    let values = function_table(f)?;
    let g = graph_set(&values, values.len() as u64)?;
    let members = g.finite_members().expect("graph sets are finite");
    let mut table = Table::new(["n", "f(n)", "code"]);
    let mut duality = true;
    for (n, &y) in values.iter().enumerate() {
        table.push([
            n.to_string(),
            y.to_string(),
            cantor_pair(n as u64, y).to_string(),
        ]);
        let budget = values[..=n].iter().max().copied().unwrap_or(0) + 1;
        duality &= psi_eval(&members, n as u64, budget) == Some(y);
    }
    Ok(Run {
        parameters: json!({ "f": f }),
        horizons: json!({ "domain": values.len(), "graph": nat(g.horizon()) }),
        results: json!({ "members": members.iter().map(nat).collect::<Vec<_>>() }),
        verdicts: vec![Verdict::new(
            "psi-recovers-f",
            duality,
            "psi over the graph equals f at every argument",
        )],
        table,
    })
}

fn trace(sampler: &str, q: u64, n: u64) -> Result<Run> {
    let s = Sampler::parse(sampler)?;
    let t = trace_from_sampler(&s, q, n)?;
    let bound = (n + 1) * q;
    let mut table = Table::new(["y"]);
    for y in &t {
        table.push([y]);
    }
    Ok(Run {
        parameters: json!({ "sampler": sampler, "q": q, "n": n }),
        horizons: json!({ "window": bound }),
        results: json!({ "trace": t.iter().map(nat).collect::<Vec<_>>(), "size": t.len() }),
        verdicts: vec![Verdict::new(
            "trace-size",
            t.len() as u64 <= bound,
            format!("|trace| = {} <= (n+1)q = {bound}", t.len()),
        )],
        table,
    })
}

fn hits(sampler: &str, f: &str, q: u64) -> Result<Run> {
    let s = Sampler::parse(sampler)?;
    let values = function_table(f)?;
    let horizon = values.len() as u64;
    let found = hit_indices(&s, &values, q, horizon)?;
    let mut sound = true;
    let mut sizes_ok = true;
    let mut table = Table::new(["m", "f(m)", "hit"]);
    for m in 0..horizon {
        let hit = found.contains(&m);
        if hit {
            let t = trace_from_sampler(&s, q, m)?;
            sound &= t.contains(&Nat::from(values[m as usize]));
            sizes_ok &= t.len() as u64 <= (m + 1) * q;
        }
        table.push([
            m.to_string(),
            values[m as usize].to_string(),
            hit.to_string(),
        ]);
    }
    Ok(Run {
        parameters: json!({ "sampler": sampler, "f": f, "q": q }),
        horizons: json!({ "m": horizon }),
        results: json!({ "hits": found }),
        verdicts: vec![
            Verdict::new("hit-in-trace", sound, "m hit implies f(m) in trace(m)"),
            Verdict::new("trace-size", sizes_ok, "|trace(m)| <= (m+1)q at every hit"),
        ],
        table,
    })
}

fn dom(f: &str, sampler: &str, q: u64, nmax: u64) -> Result<Run> {
    let values: Vec<Nat> = function_table(f)?.into_iter().map(Nat::from).collect();
    image_set(&values)?;
    let s = Sampler::parse(sampler)?;
    let mut table = Table::new(["n", "F(n)", "h(n)", "captured"]);
    let mut rows = Vec::new();
    let mut holds = true;
    for n in 0..=nmax {
        let p = dominating_adversary(&values, &s, q, n)?;
        holds &= p.holds();
        table.push([
            n.to_string(),
            p.value.to_string(),
            p.bound.to_string(),
            p.captured.to_string(),
        ]);
        rows.push(
            json!({ "n": n, "F": nat(&p.value), "h": nat(&p.bound), "captured": p.captured }),
        );
    }
    Ok(Run {
        parameters: json!({ "f": f, "sampler": sampler, "q": q, "nmax": nmax }),
        horizons: json!({ "domain": values.len() }),
        results: json!({ "probes": rows }),
        verdicts: vec![Verdict::new(
            "dominates-captured",
            holds,
            "F(n) in s([0,(n+1)q)) implies h(n) > F(n)",
        )],
        table,
    })
}

fn parse_nat(s: &str) -> Result<Nat> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("'{s}' is not a natural number")))
}

fn codes(c: &CodesCommand) -> (String, Result<Run>) {
    let run = |name: &str, params: Value, input: String, output: String, roundtrip: bool| Run {
        parameters: params,
        horizons: json!({}),
        results: json!({ "input": input, "output": output }),
        verdicts: vec![Verdict::new(
            "roundtrip",
            roundtrip,
            format!("{name} decodes back to its input"),
        )],
        table: {
            let mut t = Table::new(["input", "output"]);
            t.push([input, output]);
            t
        },
    };
    match c {
        CodesCommand::K { n } => (
            "codes k".into(),
            (|| {
                let code = prefix_free_code(*n)?;
                let back = prefix_free_decode(code.bits())?;
                Ok(run(
                    "k",
                    json!({ "n": n }),
                    n.to_string(),
                    code.to_string(),
                    back == (*n, code.len()),
                ))
            })(),
        ),
        CodesCommand::C { n, x } => (
            "codes c".into(),
            (|| {
                let code = fixed_width_code(*n, *x)?;
                let back = fixed_width_decode(*n, code.bits())?;
                Ok(run(
                    "c_n",
                    json!({ "n": n, "x": x }),
                    x.to_string(),
                    code.to_string(),
                    back == *x,
                ))
            })(),
        ),
        CodesCommand::Pair(p) => (
            "codes pair".into(),
            (|| match (&p.x, &p.y, &p.z) {
                (Some(x), Some(y), _) => {
                    let (x, y) = (parse_nat(x)?, parse_nat(y)?);
                    let z = cantor_pair(x.clone(), y.clone());
                    let ok = cantor_unpair(&z) == (x.clone(), y.clone());
                    Ok(run(
                        "pair",
                        json!({ "x": nat(&x), "y": nat(&y) }),
                        format!("{x},{y}"),
                        z.to_string(),
                        ok,
                    ))
                }
                (_, _, Some(z)) => {
                    let z = parse_nat(z)?;
                    let (x, y) = cantor_unpair(&z);
                    let ok = cantor_pair(x.clone(), y.clone()) == z;
                    Ok(run(
                        "unpair",
                        json!({ "z": nat(&z) }),
                        z.to_string(),
                        format!("{x},{y}"),
                        ok,
                    ))
                }
                _ => Err(Error::InvalidArgument("give --x and --y, or --z".into())),
            })(),
        ),
        CodesCommand::String(s) => (
            "codes string".into(),
            (|| match (&s.sigma, &s.code) {
                (Some(sigma), _) => {
                    let sigma: BitString = sigma.parse()?;
                    let code = string_code(&sigma);
                    let ok = string_decode(&code) == sigma;
                    Ok(run(
                        "string code",
                        json!({ "sigma": sigma.to_string() }),
                        sigma.to_string(),
                        code.to_string(),
                        ok,
                    ))
                }
                (None, Some(code)) => {
                    let code = parse_nat(code)?;
                    let sigma = string_decode(&code);
                    let ok = string_code(&sigma) == code;
                    Ok(run(
                        "string decode",
                        json!({ "code": nat(&code) }),
                        code.to_string(),
                        sigma.to_string(),
                        ok,
                    ))
                }
                _ => Err(Error::InvalidArgument("give --sigma or --code".into())),
            })(),
        ),
        CodesCommand::Setcode(s) => (
            "codes setcode".into(),
            (|| match (&s.members, &s.code) {
                (Some(members), _) => {
                    let set = u64_list(members)?.into_iter().collect();
                    let code = finite_set_code(&set);
                    let ok = finite_set_decode(&code) == set;
                    let shown = set.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                    Ok(run(
                        "set code",
                        json!({ "members": set }),
                        shown,
                        code.to_string(),
                        ok,
                    ))
                }
                (None, Some(code)) => {
                    let code = parse_nat(code)?;
                    let set = finite_set_decode(&code);
                    let ok = finite_set_code(&set) == code;
                    let shown = set.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                    Ok(run(
                        "set decode",
                        json!({ "code": nat(&code) }),
                        code.to_string(),
                        shown,
                        ok,
                    ))
                }
                _ => Err(Error::InvalidArgument("give --members or --code".into())),
            })(),
        ),
    }
}

fn weakrep(w: &WeakrepCommand) -> (String, Result<Run>) {
    match w {
        WeakrepCommand::Validate {
            file,
            table_horizon,
        } => (
            "weakrep validate".into(),
            (|| {
                let t = WeakRepTable::parse(&read_file(file)?, *table_horizon)?;
                let report = t.validate();
                let mut table = Table::new(["bullet", "passed", "witness"]);
                let mut verdicts = Vec::new();
                for r in &report.results {
                    let witness = r
                        .witness
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default();
                    table.push([
                        r.bullet.to_string(),
                        r.passed().to_string(),
                        witness.clone(),
                    ]);
                    verdicts.push(Verdict::new(r.bullet.to_string(), r.passed(), witness));
                }
                Ok(Run {
                    parameters: json!({ "file": file }),
                    horizons: json!({ "table": table_horizon }),
                    results: json!({ "triples": t.triples.len(), "represented": t.represented() }),
                    verdicts,
                    table,
                })
            })(),
        ),
        WeakrepCommand::OfProgram {
            manifest,
            e,
            table_horizon,
        } => (
            "weakrep of-program".into(),
            (|| {
                let r = FamilyRegistry::parse_manifest(&read_file(manifest)?)?;
                let t = table_of_program(&r, *e, *table_horizon)?;
                let report = t.validate();
                let mut table = Table::new(["x", "y", "z"]);
                for tr in &t.triples {
                    table.push([tr.x, tr.y, tr.z]);
                }
                Ok(Run {
                    parameters: json!({ "manifest": manifest, "e": e, "program": r.program(*e)?.to_string() }),
                    horizons: json!({ "table": table_horizon, "budget": r.budget() }),
                    results: json!({
                        "triples": t.triples.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "represented": t.represented(),
                    }),
                    verdicts: vec![Verdict::new(
                        "valid-weak-representation",
                        report.passed(),
                        report
                            .failures()
                            .map(|f| f.bullet.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    )],
                    table,
                })
            })(),
        ),
        WeakrepCommand::Interleave { manifest, inputs } => {
            (
                "weakrep interleave".into(),
                (|| {
                    let r = FamilyRegistry::parse_manifest(&read_file(manifest)?)?;
                    let d = interleave_family(&r);
                    let show = |o: Outcome| o.value().map_or("div".to_string(), |v| v.to_string());
                    let mut table = Table::new(["index", "input", "value"]);
                    let mut programs = Vec::new();
                    for k in 0..d.len() {
                        let mut vals = Vec::new();
                        for n in 0..*inputs {
                            let v = show(d.eval(k, n)?);
                            table.push([k.to_string(), n.to_string(), v.clone()]);
                            vals.push(v);
                        }
                        programs.push(json!({ "index": k, "program": d.program(k)?.to_string(), "values": vals }));
                    }
                    let mut ok = true;
                    for e in 0..r.len() {
                        for n in 0..*inputs {
                            let orig = r.eval(e, n)?;
                            ok &= d.eval(2 * e, 2 * n)? == orig
                                && d.eval(2 * e, 2 * n + 1)? == orig
                                && d.eval(2 * e + 1, n)? == orig;
                        }
                    }
                    Ok(Run {
                        parameters: json!({ "manifest": manifest, "inputs": inputs }),
                        horizons: json!({ "budget": r.budget() }),
                        results: json!({ "derived": programs }),
                        verdicts: vec![Verdict::new(
                            "interleaving-equalities",
                            ok,
                            "g_2e(2n) = g_2e(2n+1) = f_e(n) and g_2e+1 = f_e",
                        )],
                        table,
                    })
                })(),
            )
        }
    }
}

fn pset(g: &str, manifest: &str, eof: &str, checkpoints: &str) -> Result<Run> {
    let values = function_table(g)?;
    let r = FamilyRegistry::parse_manifest(&read_file(manifest)?)?;
    let e_of = StringIndexMap::parse(&read_file(eof)?)?;
    let cps = u64_list(checkpoints)?;
    let p = build_p(&values, &r, &e_of, &cps)?;
    let graph = graph_set(&values, values.len() as u64)?;

    let mut table = Table::new(["n", "p(n)", "code"]);
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in &cps {
        let bound = p_bound(&r, &e_of, &values, n)?;
        let cut = u64::try_from(&bound).map_err(|_| Error::Overflow("p(n)".into()))?;
        let code = string_code(&graph.prefix(cut)?);
        let decoded = string_decode(&code);
        ok &= p.contains(&code) && decoded.len() as u64 == cut;
        table.push([n.to_string(), bound.to_string(), code.to_string()]);
        rows.push(
            json!({ "n": n, "p": nat(&bound), "code": nat(&code), "prefix": decoded.to_string() }),
        );
    }
    Ok(Run {
        parameters: json!({ "g": g, "manifest": manifest, "eof": eof, "checkpoints": cps }),
        horizons: json!({ "graph": nat(graph.horizon()) }),
        results: json!({ "rows": rows, "P": p.iter().map(nat).collect::<Vec<_>>() }),
        verdicts: vec![Verdict::new(
            "prefix-lengths",
            ok,
            "each element of P decodes to A|p(n)",
        )],
        table,
    })
}
