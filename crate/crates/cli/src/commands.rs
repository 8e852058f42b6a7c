use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigUint;
use qchoice::format::{parse_ballots, parse_choice, write_ballots, write_choice};
use qchoice::solvers::ORACLE_MAX_N;
use qchoice::{
    asymptotic_ratio, check_alpha, check_gamma, classify, dem_number, fixture, gen_cnk,
    gen_cnk_democratic_family, gen_cnk_liberal_family, lib_number, oracle_dem, oracle_lib,
    random_alpha, random_choice, sperner_bound, synth_majoritarian_with_limit, verify,
    AxiomWitness, BallotFamily, DemLimits, DemNumber, Direction, Error, FixtureId, GrandSet,
    QuasiChoice, RationalityClass, Relation, Share, VerifyOutcome,
};

use crate::report::*;
use crate::{Cli, Command, DemArgs, GenArgs, GenKind, NumbersArgs};

type Outcome = Result<Report, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { file } => check(&read_choice(file, cli.max_n)?),
        Command::Numbers(args) => numbers(cli, args),
        Command::Synth {
            file,
            share,
            output,
            max_ballots,
        } => synth(
            &read_choice(file, cli.max_n)?,
            *share,
            output.as_deref(),
            *max_ballots,
        ),
        Command::Verify {
            file,
            ballots,
            share,
        } => verify_cmd(cli, file, ballots, *share),
        Command::Gen(args) => gen(args),
        Command::Bounds { file, n, dem } => bounds(cli, file.as_deref(), *n, dem),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_choice(path: &Path, cap: usize) -> Result<QuasiChoice, Failure> {
    parse_choice(&read(path)?, cap).map_err(|e| Failure::Input(located(path, e)))
}

fn read_family(path: &Path, cap: usize) -> Result<BallotFamily, Failure> {
    parse_ballots(&read(path)?, cap).map_err(|e| Failure::Input(located(path, e)))
}

fn located(path: &Path, e: Error) -> String {
    match e {
        Error::Parse { line, message } if line > 0 => {
            format!("{}:{line}: {message}", path.display())
        }
        Error::Parse { message, .. } => format!("{}: {message}", path.display()),
        other => format!("{}: {other}", path.display()),
    }
}

fn write(path: &Path, text: &str) -> Result<String, Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn witness(w: &AxiomWitness, grand: &GrandSet) -> Witness {
    Witness {
        item: grand.name(w.item),
        menu_a: grand.show(w.menu_a),
        menu_b: grand.show(w.menu_b),
        description: w.describe(grand),
    }
}

fn edges(rel: &Relation) -> Vec<[String; 2]> {
    let grand = rel.grand();
    rel.edges()
        .into_iter()
        .map(|(q, p)| [grand.name(q), grand.name(p)])
        .collect()
}

fn refused(e: Error, grand: &GrandSet) -> Failure {
    match e {
        Error::AlphaViolated(w) => Failure::Refused(format!(
            "axiom alpha fails, so no ballot family represents this choice: {}",
            w.describe(grand)
        )),
        Error::SizeExceeded { .. } => Failure::Refused(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn check(c: &QuasiChoice) -> Outcome {
    let grand = c.grand();
    let verdict = |r: Result<(), AxiomWitness>| AxiomVerdict {
        holds: r.is_ok(),
        witness: r.err().map(|w| witness(&w, grand)),
    };
    let alpha = verdict(check_alpha(c));
    let gamma = verdict(check_gamma(c));
    let (class, voter) = match classify(c) {
        RationalityClass::NotRationalizable(_) => ("not rationalizable", None),
        RationalityClass::FreelyRationalizable(r) => ("freely rationalizable", Some(edges(&r))),
        RationalityClass::AsymmetricallyRationalizable(r) => (
            "freely rationalizable (also asymmetrically)",
            Some(edges(&r)),
        ),
    };
    Ok(Report::Check(CheckReport {
        items: grand.items().map(|i| grand.name(i)).collect(),
        alpha,
        gamma,
        class: class.to_string(),
        rationalizing_voter: voter,
    }))
}

fn dem_limits(args: &DemArgs) -> Result<DemLimits, Failure> {
    let timeout = match args.dem_timeout {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(Failure::Input(format!("invalid --dem-timeout {s}")))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(DemLimits {
        max_n: args.dem_max_n,
        timeout,
        node_cap: args.dem_node_cap,
    })
}

fn number_report(
    c: &QuasiChoice,
    limits: &DemLimits,
    oracle: bool,
) -> Result<NumbersReport, Failure> {
    let n = c.n();
    let lib = lib_number(c);
    let dem = match dem_number(c, limits) {
        Ok(r) => match r.number {
            DemNumber::Exact(value) => DemOut::Exact {
                value,
                explored: r.explored,
            },
            DemNumber::Interval { lo, hi } => DemOut::Interval {
                lo,
                hi,
                explored: r.explored,
            },
            DemNumber::Infinite => DemOut::Infinite,
        },
        Err(Error::GrandSetTooLarge { n, max }) => DemOut::NotComputed {
            reason: format!("{n} items is above --dem-max-n {max}"),
            upper: lib.finite().map(|l| 2 * l),
        },
        Err(e) => return Err(Failure::Input(e.to_string())),
    };
    let bound = sperner_bound(n as u64);
    let lib_exact = lib.finite();
    let dem_exact = match dem {
        DemOut::Exact { value, .. } => Some(value),
        _ => None,
    };
    let both = lib_exact.zip(dem_exact);
    let (oracle_out, oracle_skipped) = match (oracle, n <= ORACLE_MAX_N) {
        (false, _) => (None, None),
        (true, false) => (
            None,
            Some(format!(
                "the oracles enumerate at most {ORACLE_MAX_N} items"
            )),
        ),
        (true, true) => {
            let lib_kmax = usize::try_from(&bound).unwrap_or(usize::MAX).max(1);
            let dem_kmax = 2 * lib_kmax;
            let olib = oracle_lib(c, lib_kmax).map_err(|e| Failure::Input(e.to_string()))?;
            let odem = oracle_dem(c, dem_kmax).map_err(|e| Failure::Input(e.to_string()))?;
            let dem_known = matches!(dem, DemOut::Exact { .. } | DemOut::Infinite);
            let agrees = olib == lib_exact && (!dem_known || odem == dem_exact);
            (
                Some(OracleOut {
                    lib: olib,
                    dem: odem,
                    lib_kmax,
                    dem_kmax,
                    agrees,
                }),
                None,
            )
        }
    };
    Ok(NumbersReport {
        items: n,
        lib: match lib_exact {
            Some(value) => LibOut::Exact { value },
            None => LibOut::Infinite,
        },
        dem,
        sperner_bound: bound.to_string(),
        lib_within_sperner: lib_exact.map(|l| BigUint::from(l) <= bound),
        dem_at_most_twice_lib: both.map(|(l, d)| d <= 2 * l),
        lib_at_most_pow_dem: both.map(|(l, d)| (l as u128) <= 1u128 << (d - 1).min(127)),
        oracle: oracle_out,
        oracle_skipped,
    })
}

fn numbers(cli: &Cli, args: &NumbersArgs) -> Outcome {
    let c = read_choice(&args.file, cli.max_n)?;
    let limits = dem_limits(&args.dem)?;
    Ok(Report::Numbers(number_report(&c, &limits, args.oracle)?))
}

fn synth(c: &QuasiChoice, share: Share, output: Option<&Path>, max_ballots: u64) -> Outcome {
    let (family, trace) =
        synth_majoritarian_with_limit(c, share, max_ballots).map_err(|e| refused(e, c.grand()))?;
    let verified = verify(c, &family, share)
        .map_err(|e| Failure::Input(e.to_string()))?
        .is_verified();
    let text = write_ballots(&family);
    let (output, document) = match output {
        Some(path) => (Some(write(path, &text)?), None),
        None => (None, Some(text)),
    };
    Ok(Report::Synth(SynthReport {
        share: share.to_string(),
        ballots: family.len(),
        trace: TraceOut {
            base_size: trace.base_size,
            m: trace.m,
            t: trace.t.to_string(),
            neutral_added: trace.neutral_added,
            hypercritical_added: trace.hypercritical_added,
            replication_factor: trace.replication_factor,
            size: trace.size,
        },
        verified,
        output,
        document,
    }))
}

fn verify_cmd(cli: &Cli, file: &Path, ballots: &Path, share: Share) -> Outcome {
    let c = read_choice(file, cli.max_n)?;
    let family = read_family(ballots, cli.max_n)?;
    let outcome = verify(&c, &family, share).map_err(|e| {
        Failure::Input(format!("{} and {}: {e}", file.display(), ballots.display()))
    })?;
    let grand = c.grand();
    let counterexample = match outcome {
        VerifyOutcome::Verified => None,
        VerifyOutcome::Counterexample {
            menu,
            item,
            count,
            k,
            direction,
        } => Some(Counterexample {
            menu: grand.show(menu),
            item: grand.name(item),
            count,
            k,
            direction: match direction {
                Direction::ShouldBeChosen => "should_be_chosen",
                Direction::ShouldBeRejected => "should_be_rejected",
            }
            .to_string(),
        }),
    };
    Ok(Report::Verify(VerifyReport {
        share: share.to_string(),
        ballots: family.len(),
        verified: counterexample.is_none(),
        counterexample,
    }))
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Input(format!("gen {kind} needs {flag}")))
}

/// `dir/name.qc` → `dir/name.<kind>.ballots`.
fn companion(path: &Path, kind: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "choice".to_string());
    path.with_file_name(format!("{stem}.{kind}.ballots"))
}

fn gen(args: &GenArgs) -> Outcome {
    let input = |e: Error| Failure::Input(e.to_string());
    let (kind, description, choice, families): (_, _, QuasiChoice, Vec<(String, BallotFamily)>) =
        match args.kind {
            GenKind::Cnk => {
                let n = need(args.n, "--n", "cnk")?;
                let k = need(args.k, "--k", "cnk")?;
                let c = gen_cnk(n, k).map_err(input)?;
                let families = if args.with_families {
                    vec![
                        (
                            "liberal".to_string(),
                            gen_cnk_liberal_family(n, k).map_err(input)?,
                        ),
                        (
                            "democratic".to_string(),
                            gen_cnk_democratic_family(n, k).map_err(input)?,
                        ),
                    ]
                } else {
                    Vec::new()
                };
                let d = format!(
                    "c_{{{n},{k}}}: parameter n = {n}, grand set of {} items",
                    n + 1
                );
                ("cnk", d, c, families)
            }
            GenKind::Fixture => {
                let name = args
                    .name
                    .as_deref()
                    .ok_or_else(|| Failure::Input("gen fixture needs a fixture name".into()))?;
                let id: FixtureId = name.parse().map_err(input)?;
                let fx = fixture(id);
                let families = if args.with_families {
                    fx.families
                } else {
                    Vec::new()
                };
                ("fixture", format!("fixture {id}"), fx.choice, families)
            }
            GenKind::Random => {
                let n = need(args.n, "--n", "random")?;
                let c = if args.arbitrary {
                    random_choice(n, args.seed)
                } else {
                    random_alpha(n, args.seed, args.decisive)
                }
                .map_err(input)?;
                let what = if args.arbitrary {
                    "arbitrary"
                } else if args.decisive {
                    "decisive alpha"
                } else {
                    "alpha"
                };
                let d = format!("random {what} choice on {n} items, seed {}", args.seed);
                ("random", d, c, Vec::new())
            }
        };
    if args.with_families && families.is_empty() {
        return Err(Failure::Input(format!(
            "no known families for {description}"
        )));
    }
    let text = write_choice(&choice);
    let mut files = Vec::new();
    let document = match &args.output {
        Some(path) => {
            files.push(write(path, &text)?);
            for (fkind, fam) in &families {
                files.push(write(&companion(path, fkind), &write_ballots(fam))?);
            }
            None
        }
        None => Some(text),
    };
    Ok(Report::Gen(GenReport {
        kind: kind.to_string(),
        description,
        items: choice.n(),
        files,
        document,
    }))
}

fn bounds(cli: &Cli, file: Option<&Path>, n: Option<u64>, dem: &DemArgs) -> Outcome {
    let (items, numbers) = match (file, n) {
        (Some(path), _) => {
            let c = read_choice(path, cli.max_n)?;
            let limits = dem_limits(dem)?;
            (c.n() as u64, Some(number_report(&c, &limits, false)?))
        }
        (None, Some(n)) if n >= 1 => (n, None),
        _ => {
            return Err(Failure::Input(
                "bounds needs a choice file or --n >= 1".into(),
            ))
        }
    };
    // c_{n−1,⌊(n−1)/2⌋+1} on n items attains the bound.
    let tight_example = (items >= 2).then(|| {
        let m = items as usize - 1;
        [m, m / 2 + 1]
    });
    Ok(Report::Bounds(BoundsReport {
        items,
        sperner_bound: sperner_bound(items).to_string(),
        asymptotic_ratio: asymptotic_ratio(items),
        tight_example,
        numbers,
    }))
}
