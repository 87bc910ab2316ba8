//! One line per acceptance criterion; the test fails if any line is FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use intrinsic_density::constructions::{
    build_prefix_tree, build_wct_injection, extract_candidates, factorial, graph_set, hit_indices,
    introreduce, prefix_code_sampler, trace_from_sampler, wct_target,
};
use intrinsic_density::rng::{nth_output, SplitMix64};
use intrinsic_density::samplers::coding::{cantor_pair, cantor_unpair, string_code, string_decode};
use intrinsic_density::samplers::preimage_partial_density;
use intrinsic_density::weakrep::{
    dominating_adversary, fixed_width_code, fixed_width_decode, prefix_free_code,
    prefix_free_decode, psi_eval, table_of_program, Bullet, FamilyRegistry, Program, Triple,
    WeakRepTable, Witness,
};
use intrinsic_density::{BitString, Density, Error, Nat, Sampler, SetStream};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn ac1() -> Check {
    let start = Instant::now();
    let n_max = 7;
    for seed in 0..20 {
        let a = SetStream::seeded(seed, 1, 2, 1 << 16).map_err(e)?;
        let h: BTreeMap<u64, BitString> = (1..=n_max)
            .map(|n| Ok((n, wct_target(&a, n)?)))
            .collect::<Result<_, Error>>()
            .map_err(e)?;
        let g = build_wct_injection(&h, n_max).map_err(e)?;
        let s = g.sampler();
        for n in 1..=n_max {
            let checkpoint = factorial(n).map_err(e)?;
            let rho = preimage_partial_density(&a, &s, checkpoint).map_err(e)?;
            let bound = Density::from_integer(1) - Density::new(1, n);
            ensure(rho >= bound, || {
                format!("seed {seed}, n {n}: rho_{checkpoint} = {rho} < {bound}")
            })?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("20 sets, n <= 7, {:?}", start.elapsed()))
}

fn ac2() -> Check {
    let start = Instant::now();
    let depth = 64;
    for seed in 0..10 {
        let a = SetStream::seeded(seed, 1, 2, 1 << 16).map_err(e)?;
        let s = prefix_code_sampler(&a).map_err(e)?;
        let truth = a.prefix(depth).map_err(e)?;
        for q in [2u64, 3] {
            let tree = build_prefix_tree(&s, q, 0, depth).map_err(e)?;
            for level in 1..=depth as usize {
                let w = tree.width(level) as u64;
                ensure(w <= 2 * q, || {
                    format!("seed {seed}, q {q}: level {level} has width {w}")
                })?;
            }
            ensure(extract_candidates(&tree).contains(&truth), || {
                format!("seed {seed}, q {q}: A|64 not among the candidates")
            })?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "10 sets, q in {{2,3}}, depth 64, {:?}",
        start.elapsed()
    ))
}

fn ac3() -> Check {
    let horizon = 200u64;
    let mut total_hits = 0;
    for seed in 0..10 {
        let perm = SplitMix64::new(seed).permutation(1000);
        let s = Sampler::permutation_table(perm).map_err(e)?;
        let f: Vec<u64> = (0..horizon)
            .map(|m| nth_output(seed ^ 0xf00d, m) % 30)
            .collect();
        for q in 1..=3u64 {
            let hits = hit_indices(&s, &f, q, horizon).map_err(e)?;
            total_hits += hits.len();
            for &m in &hits {
                let t = trace_from_sampler(&s, q, m).map_err(e)?;
                ensure(t.contains(&Nat::from(f[m as usize])), || {
                    format!("seed {seed}, q {q}: f({m}) missing from its trace")
                })?;
                ensure(t.len() as u64 <= (m + 1) * q, || {
                    format!("seed {seed}, q {q}: |trace({m})| = {}", t.len())
                })?;
            }
        }
    }
    Ok(format!(
        "10 permutations, q in 1..=3, {total_hits} hits checked"
    ))
}

fn ac4() -> Check {
    let start = Instant::now();
    for z in 0..100_000u64 {
        let (x, y) = cantor_unpair(&Nat::from(z));
        ensure(cantor_pair(x, y) == Nat::from(z), || {
            format!("pair roundtrip at {z}")
        })?;
    }
    for len in 0..=16u32 {
        for v in 0..(1u64 << len) {
            let bits = (0..len).map(|i| (v >> (len - 1 - i)) & 1 == 1).collect();
            let sigma = BitString::from_bits(bits);
            let code = string_code(&sigma);
            ensure(string_decode(&code) == sigma, || {
                format!("string roundtrip at {sigma}")
            })?;
        }
    }
    let mut ks = Vec::new();
    for n in 1..=4096u64 {
        let k = prefix_free_code(n).map_err(e)?;
        let expected = 2 * n.ilog2() as usize + 2;
        ensure(k.len() == expected, || format!("|k({n})| = {}", k.len()))?;
        let (back, used) = prefix_free_decode(k.bits()).map_err(e)?;
        ensure(back == n && used == k.len(), || {
            format!("k roundtrip at {n}")
        })?;
        ks.push(k.into_bits());
    }
    // in lexicographic order a prefix sorts directly before some extension of it,
    // so checking neighbours covers every pair
    ks.sort();
    for w in ks.windows(2) {
        ensure(!w[1].starts_with(&w[0]), || "k is not prefix-free".into())?;
    }
    for n in 2..=64u64 {
        for x in 0..n * n {
            let c = fixed_width_code(n, x).map_err(e)?;
            let back = fixed_width_decode(n, c.bits()).map_err(e)?;
            ensure(back == x, || format!("c_{n}({x}) roundtrip"))?;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("pairing, strings, k, c_n, {:?}", start.elapsed()))
}

fn ac5() -> Check {
    for seed in 0..100 {
        let f: Vec<u64> = (0..50).map(|i| nth_output(seed, i) % 100).collect();
        let g = graph_set(&f, 50).map_err(e)?;
        let members = g.finite_members().ok_or("graph not finite")?;
        for (x, &y) in f.iter().enumerate() {
            ensure(psi_eval(&members, x as u64, 100) == Some(y), || {
                format!("seed {seed}: psi({x}) != {y}")
            })?;
        }
    }
    Ok("100 functions of length 50".into())
}

fn random_table(rng: &mut SplitMix64) -> WeakRepTable {
    let horizon = 2 + rng.below(10);
    let args = rng.below(horizon + 2);
    let mut t = WeakRepTable::new([], horizon);
    for x in 0..args {
        t.insert_filled(x, rng.below(20), rng.below(horizon + 1));
    }
    t
}

fn expect_only(t: &WeakRepTable, bullet: Bullet, witness: &Witness) -> Result<(), String> {
    let report = t.validate();
    for r in &report.results {
        if r.bullet == bullet {
            ensure(r.witness.as_ref() == Some(witness), || {
                format!("{bullet}: expected {witness}, got {:?}", r.witness)
            })?;
        } else {
            ensure(r.passed(), || {
                format!("{bullet} mutant also broke {}", r.bullet)
            })?;
        }
    }
    Ok(())
}

fn ac6() -> Check {
    let mut rng = SplitMix64::new(6);
    let mut mutants = [0usize; 4];
    for _ in 0..200 {
        let t = random_table(&mut rng);
        let h = t.horizon;
        ensure(t.validate().passed(), || {
            format!("fuzzed table rejected:\n{}", t.to_text())
        })?;
        let xs: Vec<u64> = t.represented().keys().copied().collect();

        let Some(&x) = xs.last() else { continue };
        let rows: Vec<Triple> = t.triples.iter().copied().filter(|r| r.x == x).collect();
        let first = rows[0];

        // one stage past the horizon
        let mut m = t.clone();
        let extra = Triple::new(x, first.y, h + 1);
        m.triples.insert(extra);
        expect_only(&m, Bullet::Representation, &Witness::OutsideHorizon(extra))?;
        mutants[0] += 1;

        let rows: Vec<Triple> = t.triples.iter().copied().filter(|r| r.x == x).collect();
        let first = rows[0];

        // a second value for x, complete up to the horizon
        let mut m = t.clone();
        let y = first.y + 1;
        m.insert_filled(x, y, h);
        expect_only(
            &m,
            Bullet::Consistency,
            &Witness::Conflict(first, Triple::new(x, y, h)),
        )?;
        mutants[1] += 1;

        // a gap in the run of x
        if rows.len() >= 2 {
            let mut m = t.clone();
            let gap = rows[1];
            m.triples.remove(&gap);
            expect_only(
                &m,
                Bullet::Monotonicity,
                &Witness::MissingStage {
                    present: first,
                    missing: gap,
                },
            )?;
            mutants[2] += 1;
        }

        // an argument dropped below a witnessed one
        if xs.len() >= 2 {
            let mut m = t.clone();
            let dropped = xs[xs.len() - 2];
            m.triples.retain(|r| r.x != dropped);
            expect_only(
                &m,
                Bullet::DownwardClosure,
                &Witness::MissingArgument {
                    present: first,
                    missing_x: dropped,
                },
            )?;
            mutants[3] += 1;
        }
    }
    ensure(mutants.iter().all(|&c| c > 0), || {
        format!("mutant counts {mutants:?}")
    })?;

    let programs = [
        "identity",
        "const:3",
        "double",
        "shift:2",
        "slow-identity",
        "halt-below:4",
        "diverge",
        "table:2@1,_,0@5,7@2",
        "halved:slow-identity",
    ]
    .iter()
    .map(|p| Program::parse(p))
    .collect::<Result<Vec<_>, _>>()
    .map_err(e)?;
    let r = FamilyRegistry::new(programs, 1000);
    let mut tables = 0;
    for idx in 0..r.len() {
        for horizon in [0u64, 1, 5, 12] {
            let t = table_of_program(&r, idx, horizon).map_err(e)?;
            ensure(t.validate().passed(), || {
                format!("table of program {idx} at {horizon}")
            })?;
            tables += 1;
        }
    }
    Ok(format!(
        "mutants {mutants:?} caught, 200 fuzzed tables and {tables} program tables valid"
    ))
}

fn power_sampler(seed: u64) -> Sampler {
    // injective mix of powers of two and non-powers
    let perm = SplitMix64::new(seed).permutation(128);
    Sampler::custom(format!("powers:{seed}"), 128, move |i| {
        let v = perm[i as usize];
        Ok(if v < 64 {
            Nat::from(1u8) << v
        } else {
            Nat::from(3u8) << (v - 64)
        })
    })
}

fn ac7() -> Check {
    let f: Vec<Nat> = (0..=30u32).map(|n| Nat::from(1u8) << n).collect();
    let mut captured = 0;
    for seed in 0..10 {
        let s = power_sampler(seed);
        for q in 1..=3u64 {
            for n in 0..=30u64 {
                let p = dominating_adversary(&f, &s, q, n).map_err(e)?;
                let window = (n + 1) * q;
                let expect = s
                    .image_interval(window)
                    .map_err(e)?
                    .contains(&f[n as usize]);
                ensure(p.captured == expect, || {
                    format!("seed {seed}: capture flag at {n}")
                })?;
                if p.captured {
                    captured += 1;
                    ensure(p.bound > p.value, || {
                        format!("seed {seed}: h({n}) <= F({n})")
                    })?;
                }
            }
        }
    }
    ensure(captured > 0, || "no value was ever captured".into())?;
    Ok(format!(
        "10 samplers, n <= 30, {captured} captures dominated"
    ))
}

fn ac8() -> Check {
    for seed in 0..10 {
        let a = SetStream::seeded(seed, 1, 2, 1 << 12).map_err(e)?;
        let truth = a.prefix(64).map_err(e)?;
        let codes: BTreeSet<Nat> = (1..=64)
            .map(|k| Ok(string_code(&a.prefix(k)?)))
            .collect::<Result<_, Error>>()
            .map_err(e)?;
        ensure(codes.len() == 64, || "expected 64 codes".into())?;
        let got = introreduce(&codes).map_err(e)?;
        ensure(got == truth, || format!("seed {seed}: recovered {got}"))?;

        let mut bad = codes.clone();
        let k = 1 + nth_output(seed, 0) % 63;
        let mut flipped = a.prefix(k).map_err(e)?.into_bits();
        let last = flipped.len() - 1;
        flipped[last] = !flipped[last];
        bad.insert(string_code(&BitString::from_bits(flipped)));
        match introreduce(&bad) {
            Err(Error::Inconsistent {
                position,
                first,
                second,
            }) => {
                let (u, v) = (string_decode(&first), string_decode(&second));
                ensure(u.get(position) != v.get(position), || {
                    format!("seed {seed}: witness position {position} does not separate")
                })?;
                ensure(position == last, || {
                    format!("seed {seed}: position {position}, flipped {last}")
                })?;
            }
            other => return Err(format!("seed {seed}: inconsistent input gave {other:?}")),
        }
    }
    Ok("10 sets recovered, flipped inputs rejected at the flipped bit".into())
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_idensity"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn ac9(dir: &Path) -> Check {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    std::fs::write(
        dir.join("manifest.txt"),
        "identity\nslow-identity\nconst:4\ndiverge\nbudget:64\n",
    )
    .map_err(e)?;
    std::fs::write(dir.join("eof.txt"), "0:0\n1:1\n01:2\n").map_err(e)?;
    std::fs::write(dir.join("guesses.txt"), "1:1\n2:01\n3:110\n").map_err(e)?;
    std::fs::write(dir.join("table.txt"), "0,0,1\n0,0,2\n0,0,3\n1,5,3\n").map_err(e)?;
    std::fs::write(dir.join("perm.csv"), "2,0,1,4,3\n").map_err(e)?;
    let (manifest, eof, guesses, table, perm) = (
        p("manifest.txt"),
        p("eof.txt"),
        p("guesses.txt"),
        p("table.txt"),
        p("perm.csv"),
    );
    let perm_spec = format!("table:{perm}");

    let invocations: Vec<Vec<&str>> = vec![
        vec![
            "density",
            "--set",
            "seed:3:p=1/3",
            "--checkpoints",
            "1,10,100,1000",
            "--sampler",
            "swapblocks:4",
        ],
        vec!["prefix-set", "--set", "odds", "--count", "6"],
        vec![
            "tree-decode",
            "--set",
            "seed:5",
            "--q",
            "2",
            "--depth",
            "24",
        ],
        vec!["introreduce", "--codes", "1,4,9"],
        vec!["introreduce", "--codes", "1,2"],
        vec!["wct", "--set", "seed:42", "--nmax", "5", "--oracle-trace"],
        vec![
            "wct",
            "--set",
            "seed:42",
            "--nmax",
            "3",
            "--trace-file",
            &guesses,
        ],
        vec!["graph", "--f", "seed:9:20:12"],
        vec!["trace", "--sampler", &perm_spec, "--q", "1", "--n", "1"],
        vec![
            "hits",
            "--sampler",
            "identity",
            "--f",
            "list:0,5,2,100",
            "--q",
            "2",
        ],
        vec![
            "dom",
            "--f",
            "pow2:20",
            "--sampler",
            "double",
            "--q",
            "2",
            "--nmax",
            "9",
        ],
        vec!["codes", "k", "--n", "5"],
        vec!["codes", "c", "--n", "7", "--x", "40"],
        vec!["codes", "pair", "--x", "3", "--y", "4"],
        vec!["codes", "pair", "--z", "1000000000000000000000"],
        vec!["codes", "string", "--sigma", "0110"],
        vec!["codes", "string", "--code", "77"],
        vec!["codes", "setcode", "--members", "0,3,5"],
        vec!["codes", "setcode", "--code", "41"],
        vec![
            "weakrep",
            "validate",
            "--file",
            &table,
            "--table-horizon",
            "3",
        ],
        vec![
            "weakrep",
            "of-program",
            "--manifest",
            &manifest,
            "--e",
            "1",
            "--table-horizon",
            "6",
        ],
        vec![
            "weakrep",
            "interleave",
            "--manifest",
            &manifest,
            "--inputs",
            "4",
        ],
        vec![
            "pset",
            "--g",
            "identity:64",
            "--manifest",
            &manifest,
            "--eof",
            &eof,
            "--checkpoints",
            "2,3",
        ],
    ];
    let mut runs = 0;
    for args in &invocations {
        for format in ["json", "csv"] {
            let mut full = vec!["--format", format];
            full.extend(args.iter().copied());
            let (a, code_a) = run_cli(&full);
            let (b, code_b) = run_cli(&full);
            ensure(code_a == code_b && a == b, || {
                format!("{} differs between runs", full.join(" "))
            })?;
            ensure(!a.is_empty(), || {
                format!("{} printed nothing (exit {code_a})", full.join(" "))
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} invocations byte-identical"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("AC1 traceability density bound", Box::new(ac1)),
        ("AC2 prefix tree width and recovery", Box::new(ac2)),
        ("AC3 graph trace adversary", Box::new(ac3)),
        ("AC4 codings", Box::new(ac4)),
        ("AC5 psi/graph duality", Box::new(ac5)),
        ("AC6 weak-representation validator", Box::new(ac6)),
        ("AC7 dominating adversary", Box::new(ac7)),
        ("AC8 introreducibility", Box::new(ac8)),
        ("AC9 CLI determinism", Box::new(|| ac9(dir.path()))),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(*name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("acceptance failed: {failed:?}");
        std::process::exit(1);
    }
}
