//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs sequentially in a single process so the timing criterion is not
//! disturbed by concurrent tests.

use std::process::{Command, ExitCode};
use std::time::Instant;

use mnsample::weightgen::laplace_samples;
use mnsample::{
    binary_sample, ccf_match, dac_match, engmf_weights, linear_oracle, sorted_uniforms, Replay,
    RngStream, Sampler, ScenarioParams, SortedUniforms, UniformSource, WeightTable,
};
use mnsample_cli::{
    run_benchmark, verify_complexity, verify_statistics, BenchConfig, VerifyConfig, WeightSource,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_routes_agree(table: &WeightTable, u: &SortedUniforms) -> Result<(), String> {
    let expected: Vec<usize> = u
        .as_slice()
        .iter()
        .map(|&x| linear_oracle(table, x).unwrap())
        .collect();
    let ccf = ccf_match(u, table).0;
    let dac = dac_match(u, table).0;
    let bin = binary_sample(table, u.len(), &mut Replay::new(u.as_slice()));
    ensure(ccf.as_slice() == expected, || {
        format!("ccf mismatch, m={}", table.len())
    })?;
    ensure(dac.as_slice() == expected, || {
        format!("dac mismatch, m={}", table.len())
    })?;
    ensure(bin.as_slice() == expected, || {
        format!("binary mismatch, m={}", table.len())
    })
}

fn criterion_oracle_equivalence() -> Outcome {
    let mut exhaustive = 0;
    let grid = [0.0, 1.0, 2.0];
    for size in 1..=8u32 {
        for code in 0..3usize.pow(size) {
            let mut c = code;
            let raw: Vec<f64> = (0..size)
                .map(|_| {
                    let w = grid[c % 3];
                    c /= 3;
                    w
                })
                .collect();
            let Ok(table) = WeightTable::build(&raw) else {
                continue;
            };
            let mut pts: Vec<f64> = table
                .as_slice()
                .iter()
                .flat_map(|&c| [c.next_down(), c, c.next_up(), 0.5 * c])
                .filter(|&x| x > 0.0 && x <= 1.0)
                .collect();
            pts.push(1.0);
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            all_routes_agree(&table, &SortedUniforms::from_values(pts).unwrap())?;
            exhaustive += 1;
        }
    }
    let mut rng = RngStream::new(4242);
    for case in 0..1000u64 {
        let m = 1 + (rng.uniform_open() * 4096.0) as usize;
        let n = 1 + (rng.uniform_open() * m as f64) as usize;
        let raw: Vec<f64> = (0..m)
            .map(|_| {
                let w = rng.uniform_open();
                if case % 4 == 0 && w < 0.5 {
                    0.0
                } else {
                    -w.ln()
                }
            })
            .collect();
        let table = WeightTable::build(&raw).map_err(|e| e.to_string())?;
        let u = sorted_uniforms(&mut RngStream::substream(case, 9), n.min(m));
        all_routes_agree(&table, &u)?;
    }
    Ok(format!(
        "{exhaustive} exhaustive tables and 1000 randomized cases identical"
    ))
}

fn criterion_distribution() -> Outcome {
    let config = VerifyConfig::default();
    ensure(
        config.gof_runs == 100 && config.gof_draws == 1_000_000 && config.gof_components == 16,
        || "unexpected goodness-of-fit configuration".into(),
    )?;
    let report = verify_statistics(&config).map_err(|e| e.to_string())?;
    let critical = report.runs[0].critical;
    ensure((critical - 37.70).abs() < 0.01, || {
        format!("critical value {critical}")
    })?;
    let summary: Vec<String> = Sampler::ALL
        .iter()
        .map(|&s| {
            let passes = report
                .runs
                .iter()
                .filter(|r| r.sampler == s && r.pass)
                .count();
            format!("{} {passes}/100", s.name())
        })
        .collect();
    for s in Sampler::ALL {
        let passes = report
            .runs
            .iter()
            .filter(|r| r.sampler == s && r.pass)
            .count();
        ensure(passes >= 98, || {
            format!("{} passed only {passes}/100", s.name())
        })?;
    }
    Ok(format!(
        "chi-square < {critical:.3}: {}",
        summary.join(", ")
    ))
}

fn criterion_sorted_uniforms() -> Outcome {
    let mut pooled = Vec::with_capacity(100_000);
    for seed in 0..1000 {
        pooled
            .extend_from_slice(sorted_uniforms(&mut RngStream::substream(seed, 2), 100).as_slice());
    }
    pooled.sort_by(f64::total_cmp);
    let n = pooled.len() as f64;
    let ks = pooled
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max);
    let bound = 1.95 / n.sqrt();
    ensure(ks < bound, || format!("KS {ks:.5} >= {bound:.5}"))?;

    for seed in 0..10_000u64 {
        let len = 1 + (seed % 500) as usize;
        let u = sorted_uniforms(&mut RngStream::new(seed), len);
        let v = u.as_slice();
        ensure(
            v.windows(2).all(|w| w[0] < w[1]) && v[0] > 0.0 && v[len - 1] < 1.0,
            || format!("seed {seed} not strictly increasing in (0, 1)"),
        )?;
    }

    // The next-sum normalization read literally from the pseudocode.
    let broken = (0..1000u64)
        .filter(|&seed| {
            let mut s = RngStream::new(seed);
            let mut z = Vec::new();
            let mut acc = 0.0;
            for _ in 0..=10 {
                acc += -s.uniform_open().ln();
                z.push(acc);
            }
            (0..10)
                .map(|i| z[i] / z[i + 1])
                .collect::<Vec<_>>()
                .windows(2)
                .any(|w| w[0] >= w[1])
        })
        .count();
    ensure(broken > 0, || "next-sum variant unexpectedly sorted".into())?;
    Ok(format!(
        "KS {ks:.5} < {bound:.5}; 10000/10000 calls strictly increasing; next-sum variant unsorted in {broken}/1000"
    ))
}

fn criterion_complexity() -> Outcome {
    let config = VerifyConfig::default();
    ensure(config.complexity_trials == 50, || {
        "expected 50 trials".into()
    })?;
    let report = verify_complexity(&config).map_err(|e| e.to_string())?;
    let violations = report.violations();
    ensure(violations.is_empty(), || violations.join("; "))?;
    let worst = report
        .cells
        .iter()
        .map(|c| c.dac_mean_probes / c.dac_mean_bound)
        .fold(0.0, f64::max);
    Ok(format!(
        "{} cells within hard bounds; worst mean D&C probes at {:.0}% of bound",
        report.cells.len(),
        worst * 100.0
    ))
}

fn criterion_timing() -> Outcome {
    let config = BenchConfig {
        n_min: 1000,
        n_max: 10_000,
        n_points: 2,
        ratios: vec![1, 1000],
        trials: 50,
        warmup: 2,
        weight_source: WeightSource::Engmf,
        ..BenchConfig::default()
    };
    let outcome = run_benchmark(&config).map_err(|e| e.to_string())?;
    let t = |n, ratio, s| outcome.get(n, ratio, s).unwrap().mean_seconds;

    let (dac, ccf, bin) = (
        t(10_000, 1000, Sampler::Dac),
        t(10_000, 1000, Sampler::Ccf),
        t(10_000, 1000, Sampler::Binary),
    );
    ensure(dac < ccf && dac < bin, || {
        format!("ratio 1000: dac {dac:.3e} ccf {ccf:.3e} binary {bin:.3e}")
    })?;
    let mut notes = vec![format!(
        "ratio 1000 N=1e4: dac {dac:.3e} < ccf {ccf:.3e}, binary {bin:.3e}"
    )];

    for n in [1000, 10_000] {
        let (dac, ccf, bin) = (
            t(n, 1, Sampler::Dac),
            t(n, 1, Sampler::Ccf),
            t(n, 1, Sampler::Binary),
        );
        ensure(
            ccf <= dac && dac <= 3.0 * ccf && ccf < bin && dac < bin,
            || format!("ratio 1 N={n}: dac {dac:.3e} ccf {ccf:.3e} binary {bin:.3e}"),
        )?;
        notes.push(format!(
            "ratio 1 N={n}: dac/ccf {:.2}, binary/dac {:.2}",
            dac / ccf,
            bin / dac
        ));
    }
    // Tenfold N at M = N should cost roughly tenfold for the linear samplers.
    for s in [Sampler::Ccf, Sampler::Dac] {
        let growth = t(10_000, 1, s) / t(1000, 1, s);
        ensure((4.0..=25.0).contains(&growth), || {
            format!(
                "{} growth x{growth:.1} from N=1e3 to 1e4 is not linear",
                s.name()
            )
        })?;
        notes.push(format!("{} x{growth:.1} per decade", s.name()));
    }
    Ok(notes.join("; "))
}

fn criterion_engmf() -> Outcome {
    for (n, ny) in [(100, 1), (100, 100), (1000, 100)] {
        let w = engmf_weights(
            &ScenarioParams::new(n, ny),
            &mut RngStream::new(n as u64 * 7 + ny as u64),
        )
        .map_err(|e| e.to_string())?;
        ensure(w.len() == n * ny, || {
            format!("({n}, {ny}) gave {} weights", w.len())
        })?;
        ensure(
            w.as_slice().iter().all(|v| *v > 0.0 && v.is_finite()),
            || format!("({n}, {ny}) has non-positive or non-finite weights"),
        )?;
        WeightTable::build(w.as_slice()).map_err(|e| e.to_string())?;
    }
    let ys = laplace_samples(&ScenarioParams::new(1, 100_000), &mut RngStream::new(11));
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let var = ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (ys.len() - 1) as f64;
    let rel = (var - 1e-2).abs() / 1e-2;
    ensure(rel < 0.05, || {
        format!("Laplace variance {var:.5} off by {:.1}%", rel * 100.0)
    })?;
    Ok(format!(
        "sizes and positivity hold; Laplace variance {var:.5} ({:.2}% from R)",
        rel * 100.0
    ))
}

fn criterion_csv_golden() -> Outcome {
    const HEADER: &str = "Ns,timesdcM1,timesccfM1,timesbM1,timesdcM100,timesccfM100,timesbM100,timesdcM1000,timesccfM1000,timesbM1000";
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("testresults.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_mnsample"))
        .args(["bench", "--quick", "--out"])
        .arg(&path)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("bench exited with {status}"))?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    ensure(text.ends_with('\n'), || {
        "final row not newline-terminated".into()
    })?;
    let lines: Vec<&str> = text.lines().collect();
    ensure(lines[0] == HEADER, || format!("header {:?}", lines[0]))?;
    let rows = lines.len() - 1;
    ensure(rows == BenchConfig::quick().n_points, || {
        format!("{rows} data rows")
    })?;
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        ensure(fields.len() == 10, || {
            format!("row {line:?} has {} fields", fields.len())
        })?;
        ensure(
            fields[1..]
                .iter()
                .all(|f| f.parse::<f64>().is_ok_and(|v| v >= 0.0)),
            || format!("row {line:?} has a non-numeric time"),
        )?;
    }
    Ok(format!("header matches; {rows} rows"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", criterion_oracle_equivalence),
        ("distributional correctness", criterion_distribution),
        ("sorted uniforms", criterion_sorted_uniforms),
        ("operation-count bounds", criterion_complexity),
        ("timing orderings", criterion_timing),
        ("filter scenario weights", criterion_engmf),
        ("csv golden", criterion_csv_golden),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({secs:.1}s) {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        println!(
            "acceptance: {} of {} criteria passed",
            criteria.len(),
            criteria.len()
        );
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
