//! Acceptance criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use qchoice::format::{parse_ballots, parse_choice, write_ballots, write_choice};
use qchoice::generators::random_relation;
use qchoice::{
    asymptotic_ratio, binomial, check_alpha, dem_from_lib, dem_number, fixture, gen_cnk,
    gen_cnk_democratic_family, gen_cnk_liberal_family, lib_from_dem, lib_number, oracle_dem,
    oracle_lib, random_alpha, random_choice, revealed_relation, sperner_bound, synth_liberal,
    synth_majoritarian, verify, Ballot, BallotFamily, DemLimits, DemNumber, FixtureId, GrandSet,
    LibNumber, Menu, QuasiChoice, Share, DEFAULT_MAX_ITEMS, DEFAULT_SIZE_LIMIT,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

/// Collects sub-check failures so a criterion reports all of them at once.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    passed: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: impl Into<String>) -> Outcome {
        if self.failures.is_empty() {
            Ok(format!("{} ({} checks)", summary.into(), self.passed))
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn limits(max_n: usize) -> DemLimits {
    DemLimits {
        max_n,
        ..DemLimits::default()
    }
}

fn dem_exact(c: &QuasiChoice, max_n: usize) -> Option<usize> {
    dem_number(c, &limits(max_n)).ok()?.number.exact()
}

fn verified(c: &QuasiChoice, family: &BallotFamily, s: Share) -> bool {
    verify(c, family, s)
        .map(|o| o.is_verified())
        .unwrap_or(false)
}

fn criterion_1() -> Outcome {
    let c = fixture(FixtureId::ExLib2Dem3).choice;
    let mut ck = Checks::default();
    let lib = lib_number(&c);
    let dem = dem_number(&c, &DemLimits::default()).map(|r| r.number);
    ck.check(lib == LibNumber::Finite(2), || {
        format!("lib = {lib}, expected 2")
    });
    ck.check(dem == Ok(DemNumber::Exact(3)), || {
        format!("dem = {dem:?}, expected Exact(3)")
    });
    let olib = oracle_lib(&c, 6);
    let odem = oracle_dem(&c, 6);
    ck.check(olib == Ok(Some(2)), || format!("oracle_lib = {olib:?}"));
    ck.check(odem == Ok(Some(3)), || format!("oracle_dem = {odem:?}"));
    ck.finish("lib = 2, dem = 3, oracles agree")
}

fn criterion_2() -> Outcome {
    let fx = fixture(FixtureId::ExDemEqLib);
    let c = &fx.choice;
    let mut ck = Checks::default();
    let lib = lib_number(c);
    ck.check(lib == LibNumber::Finite(3), || {
        format!("lib = {lib}, expected 3")
    });
    match dem_number(c, &DemLimits::default()) {
        Ok(r) => ck.check(r.number == DemNumber::Exact(3), || {
            format!("dem = {}, expected Exact(3)", r.number)
        }),
        Err(e) => ck.check(false, || format!("dem_number failed: {e}")),
    }
    let dem_family = fx.family("democratic").expect("published family");
    match verify(c, dem_family, Share::HALF) {
        Ok(o) if o.is_verified() => ck.check(true, String::new),
        Ok(o) => ck.check(false, || format!("democratic family rejected: {o:?}")),
        Err(e) => ck.check(false, || e.to_string()),
    }
    let lib_family = fx.family("liberal").expect("published family");
    ck.check(verified(c, lib_family, Share::ZERO), || {
        "liberal family rejected".to_string()
    });
    ck.finish("lib = 3, dem = 3, both published families verify")
}

fn criterion_3() -> Outcome {
    let fx = fixture(FixtureId::ExDem5Lib10);
    let c = &fx.choice;
    let mut ck = Checks::default();
    let five = fx.family("democratic").expect("published family");
    ck.check(five.len() == 5, || {
        format!("family has {} voters", five.len())
    });
    ck.check(verified(c, five, Share::HALF), || {
        "5-voter family rejected".into()
    });
    let lib = lib_number(c);
    ck.check(lib == LibNumber::Finite(10), || {
        format!("lib = {lib}, expected 10")
    });
    match synth_liberal(c) {
        Ok(f) => ck.check(f.len() == 10 && verified(c, &f, Share::ZERO), || {
            format!("synth_liberal gave {} ballots", f.len())
        }),
        Err(e) => ck.check(false, || e.to_string()),
    }
    ck.finish("5-voter family verifies, lib = 10")
}

fn criterion_4() -> Outcome {
    let mut ck = Checks::default();
    for n in 1..=6usize {
        for k in 1..=n + 1 {
            let c = gen_cnk(n, k).unwrap();
            let expected = binomial(n as u64, k as u64 - 1);
            let lib = lib_number(&c);
            ck.check(
                lib.finite().map(BigUint::from) == Some(expected.clone()),
                || format!("c_{n},{k}: lib = {lib}, expected {expected}"),
            );
            let libf = gen_cnk_liberal_family(n, k).unwrap();
            ck.check(
                BigUint::from(libf.len()) == expected && verified(&c, &libf, Share::ZERO),
                || format!("c_{n},{k}: liberal family of {} fails", libf.len()),
            );
            let size = if 2 * k > n { 2 * k - 1 } else { 2 * (n - k) };
            let demf = gen_cnk_democratic_family(n, k).unwrap();
            ck.check(
                demf.len() == size && verified(&c, &demf, Share::HALF),
                || format!("c_{n},{k}: democratic family of {} fails", demf.len()),
            );
        }
    }
    ck.finish("n <= 6, all k")
}

fn criterion_5() -> Outcome {
    let shares = ["0", "1/3", "1/2", "2/3", "9/10"].map(|s| s.parse::<Share>().unwrap());
    let mut ck = Checks::default();
    let mut largest = 0;
    let mut alpha_instances = Vec::new();
    for seed in 0..200u64 {
        let n = 2 + (seed % 4) as usize;
        let c = random_alpha(n, seed, seed % 3 == 0).unwrap();
        for s in shares {
            match synth_majoritarian(&c, s) {
                Ok((fam, trace)) => {
                    largest = largest.max(trace.size);
                    ck.check(
                        trace.size as usize == fam.len() && verified(&c, &fam, s),
                        || format!("seed {seed}, s = {s}: synthesized family rejected"),
                    );
                }
                Err(e) => ck.check(false, || format!("seed {seed}, s = {s}: {e}")),
            }
        }
        alpha_instances.push(c);
    }

    // Families of unrelated instances, in the formats the transforms emit.
    let mut submitted: Vec<BallotFamily> = Vec::new();
    for c in alpha_instances.iter().take(40) {
        let lib = synth_liberal(c).unwrap();
        let dem = dem_from_lib(&lib);
        if let Ok(back) = lib_from_dem(&dem, DEFAULT_SIZE_LIMIT) {
            submitted.push(back);
        }
        submitted.push(lib);
        submitted.push(dem);
    }
    let mut failing = 0;
    let mut seed = 10_000u64;
    while failing < 200 {
        let n = 2 + (seed % 4) as usize;
        let c = random_choice(n, seed).unwrap();
        let name = format!("random choice n={n} seed {seed}");
        seed += 1;
        if check_alpha(&c).is_ok() {
            continue;
        }
        failing += 1;
        ck.check(lib_number(&c) == LibNumber::Infinite, || {
            format!("{name}: lib finite")
        });
        let dem = dem_number(&c, &limits(5)).map(|r| r.number);
        ck.check(dem == Ok(DemNumber::Infinite), || {
            format!("{name}: dem = {dem:?}")
        });
        ck.check(synth_liberal(&c).is_err(), || {
            format!("{name}: synthesized")
        });
        for fam in submitted.iter().filter(|f| f.grand().len() == n) {
            for s in shares {
                ck.check(!verified(&c, fam, s), || {
                    format!("{name}: a family verified an alpha-failing choice at {s}")
                });
            }
        }
    }
    ck.finish(format!(
        "200 alpha instances x 5 shares verified (largest family {largest}), 200 alpha failures rejected"
    ))
}

fn criterion_6() -> Outcome {
    let mut ck = Checks::default();
    let mut instances: Vec<(String, QuasiChoice)> = FixtureId::ALL
        .iter()
        .map(|&id| (id.to_string(), fixture(id).choice))
        .collect();
    for seed in 0..100u64 {
        let n = 2 + (seed % 2) as usize;
        instances.push((
            format!("random n={n} seed {seed}"),
            random_alpha(n, seed, seed % 2 == 1).unwrap(),
        ));
    }
    let mut compared = 0;
    for (name, c) in &instances {
        let (Some(lib), Some(dem)) = (lib_number(c).finite(), dem_exact(c, 6)) else {
            continue;
        };
        compared += 1;
        ck.check(dem <= 2 * lib, || {
            format!("{name}: dem {dem} > 2·lib {lib}")
        });
        ck.check(lib as u128 <= 1u128 << (dem - 1), || {
            format!("{name}: lib {lib} > 2^(dem−1), dem {dem}")
        });
    }
    ck.finish(format!("{compared} instances with both numbers exact"))
}

fn criterion_7() -> Outcome {
    let mut ck = Checks::default();
    for n in 2..=6usize {
        let bound = sperner_bound(n as u64);
        for seed in 0..500u64 {
            let c = random_alpha(n, seed * 7 + n as u64, seed % 2 == 0).unwrap();
            let lib = lib_number(&c).finite();
            ck.check(lib.is_some_and(|l| BigUint::from(l) <= bound), || {
                format!("n = {n}, seed {seed}: lib {lib:?} above {bound}")
            });
        }
    }
    for n in 3..=7usize {
        let c = gen_cnk(n - 1, (n - 1) / 2 + 1).unwrap();
        let lib = lib_number(&c);
        let bound = sperner_bound(n as u64);
        ck.check(
            lib.finite().map(BigUint::from) == Some(bound.clone()),
            || format!("n = {n}: c_{{n−1,⌊(n−1)/2⌋+1}} has lib {lib}, bound {bound}"),
        );
    }
    ck.finish("bound holds on 2,500 instances, attained for n = 3..7")
}

fn criterion_8() -> Outcome {
    let limit = (2.0 / std::f64::consts::PI).sqrt() / 2.0;
    let mut ck = Checks::default();
    let mut previous = f64::INFINITY;
    for n in 10..=64u64 {
        let r = asymptotic_ratio(n);
        ck.check((0.3..=0.5).contains(&r), || format!("n = {n}: ratio {r}"));
        let gap = (r - limit).abs();
        ck.check(gap < previous, || {
            format!("n = {n}: gap {gap} did not shrink")
        });
        previous = gap;
    }
    let last = asymptotic_ratio(64);
    ck.check((last - limit).abs() <= 0.02, || {
        format!("n = 64: ratio {last}")
    });
    ck.finish(format!("ratio(64) = {last:.5}, limit {limit:.5}"))
}

fn criterion_9() -> Outcome {
    let mut ck = Checks::default();
    let mut instances = Vec::new();
    let g2 = GrandSet::new(2).unwrap();
    // Tables over the menus {0}, {1}, {0,1}.
    for code in 0u32..16 {
        let c = QuasiChoice::from_table(
            g2.clone(),
            vec![
                Menu::EMPTY,
                Menu(code & 1),
                Menu(code & 2),
                Menu(code >> 2 & 3),
            ],
        )
        .unwrap();
        if check_alpha(&c).is_ok() {
            instances.push((format!("n=2 table {code}"), c));
        }
    }
    let exhaustive = instances.len();
    for seed in 0..300u64 {
        instances.push((
            format!("n=3 seed {seed}"),
            random_alpha(3, seed, seed % 2 == 0).unwrap(),
        ));
    }
    for (name, c) in &instances {
        let lib = lib_number(c).finite().expect("alpha holds");
        let olib = oracle_lib(c, lib + 2);
        ck.check(olib == Ok(Some(lib)), || {
            format!("{name}: lib {lib}, oracle {olib:?}")
        });
        let dem = dem_exact(c, 3);
        let odem = oracle_dem(c, 2 * lib);
        ck.check(dem.is_some() && odem == Ok(dem), || {
            format!("{name}: dem {dem:?}, oracle {odem:?}")
        });
    }
    ck.finish(format!(
        "{exhaustive} exhaustive n=2 choices, 300 random n=3"
    ))
}

fn criterion_10() -> Outcome {
    let mut ck = Checks::default();
    for id in FixtureId::ALL {
        let fx = fixture(id);
        let text = write_choice(&fx.choice);
        match parse_choice(&text, DEFAULT_MAX_ITEMS) {
            Ok(back) => {
                ck.check(back == fx.choice, || format!("{id}: parsed choice differs"));
                ck.check(write_choice(&back) == text, || {
                    format!("{id}: text differs")
                });
            }
            Err(e) => ck.check(false, || format!("{id}: {e}")),
        }
        for (kind, fam) in &fx.families {
            let text = write_ballots(fam);
            match parse_ballots(&text, DEFAULT_MAX_ITEMS) {
                Ok(back) => ck.check(
                    back.members() == fam.members() && write_ballots(&back) == text,
                    || format!("{id} {kind}: ballots differ"),
                ),
                Err(e) => ck.check(false, || format!("{id} {kind}: {e}")),
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..1000usize {
        let grand = GrandSet::new(2 + i % 4).unwrap();
        let density = (i % 11) as f64 / 20.0;
        let b = Ballot::from_voter(random_relation(&grand, density, &mut rng));
        let again = Ballot::from_voter(revealed_relation(b.choice()));
        ck.check(again == b, || {
            format!("ballot {i}: revealed relation round trip differs")
        });
    }
    ck.finish("fixtures and 1,000 random ballots")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 lib=2, dem=3 example",
            criterion_1,
            Duration::from_secs(1),
        ),
        ("2 dem=lib example", criterion_2, Duration::from_secs(30)),
        (
            "3 dem<=5, lib>=10 example",
            criterion_3,
            Duration::from_secs(1),
        ),
        (
            "4 c_{n,k} numbers and families",
            criterion_4,
            Duration::from_secs(10),
        ),
        (
            "5 majoritarian synthesis",
            criterion_5,
            Duration::from_secs(60),
        ),
        ("6 relative bounds", criterion_6, Duration::from_secs(60)),
        (
            "7 Sperner bound and tightness",
            criterion_7,
            Duration::from_secs(30),
        ),
        ("8 asymptotic ratio", criterion_8, Duration::from_secs(1)),
        (
            "9 oracle equivalence",
            criterion_9,
            Duration::from_secs(120),
        ),
        ("10 round trips", criterion_10, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let timing = format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs());
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{timing}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{timing}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
