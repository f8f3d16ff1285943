//! Wall-clock timing sweep.

use std::fs::File;
use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::time::Instant;

use mnsample::{NoStats, OpStats, RngStream, Sampler, Scratch, WeightTable};

use crate::config::BenchConfig;
use crate::{HarnessError, Result};

/// Column order within each ratio group.
pub const COLUMN_ORDER: [Sampler; 3] = [Sampler::Dac, Sampler::Ccf, Sampler::Binary];

/// Mean wall time of one sampler over one `(n, ratio)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRecord {
    pub n: usize,
    pub ratio: usize,
    pub sampler: Sampler,
    /// NaN when the cell was skipped.
    pub mean_seconds: f64,
    /// Mean probes plus linear comparisons, from a separate untimed pass.
    pub probe_mean: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub n_values: Vec<usize>,
    pub ratios: Vec<usize>,
    pub records: Vec<TimingRecord>,
}

impl BenchOutcome {
    pub fn get(&self, n: usize, ratio: usize, sampler: Sampler) -> Option<&TimingRecord> {
        self.records
            .iter()
            .find(|r| r.n == n && r.ratio == ratio && r.sampler == sampler)
    }
}

fn stream_id(cell: usize, trial: usize, slot: usize) -> u64 {
    ((cell as u64) << 40) | ((trial as u64) << 8) | slot as u64
}

const WEIGHT_SLOT: usize = 255;

/// Time every sampler on every cell of the sweep.
///
/// Per trial a fresh weight field is generated and its table built outside
/// the timed region; each sampler call, uniform generation included, is
/// then timed on its own substream. Sampler order rotates between trials.
/// When `output_path` is set the CSV is written there.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchOutcome> {
    config.validate()?;
    // Open the output first so an unwritable path fails before the sweep.
    let file = match &config.output_path {
        Some(path) => Some(File::create(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?),
        None => None,
    };

    let n_values = config.n_values();
    let mut records = Vec::new();
    let mut scratch = Scratch::new();
    let mut out: Vec<usize> = Vec::new();

    for (ri, &ratio) in config.ratios.iter().enumerate() {
        for (ni, &n) in n_values.iter().enumerate() {
            let cell = ri * n_values.len() + ni;
            let m = n.saturating_mul(ratio);
            if m > config.max_table_len {
                eprintln!(
                    "warning: skipping N={n} ratio={ratio}: table of {m} entries exceeds budget {}",
                    config.max_table_len
                );
                for sampler in COLUMN_ORDER {
                    records.push(TimingRecord {
                        n,
                        ratio,
                        sampler,
                        mean_seconds: f64::NAN,
                        probe_mean: None,
                    });
                }
                continue;
            }
            out.reserve(n);

            let mut seconds = [0.0f64; 3];
            let mut probes = [0u64; 3];
            for trial in 0..config.warmup + config.trials {
                let mut wstream =
                    RngStream::substream(config.seed, stream_id(cell, trial, WEIGHT_SLOT));
                let raw = config.weight_source.generate(n, ratio, &mut wstream)?;
                let table = WeightTable::build(raw.as_slice())?;
                drop(raw);
                let counted = trial >= config.warmup;

                for k in 0..3 {
                    let slot = (k + trial) % 3;
                    let sampler = COLUMN_ORDER[slot];
                    let mut stream =
                        RngStream::substream(config.seed, stream_id(cell, trial, slot));
                    let start = Instant::now();
                    sampler.sample_into(
                        &table,
                        n,
                        &mut stream,
                        &mut scratch,
                        &mut out,
                        &mut NoStats,
                    );
                    let elapsed = start.elapsed().as_secs_f64();
                    black_box(&out);
                    if counted {
                        seconds[slot] += elapsed;
                    }
                    if config.instrument && counted {
                        let mut stats = OpStats::default();
                        let mut stream =
                            RngStream::substream(config.seed, stream_id(cell, trial, slot));
                        sampler.sample_into(
                            &table,
                            n,
                            &mut stream,
                            &mut scratch,
                            &mut out,
                            &mut stats,
                        );
                        probes[slot] += match sampler {
                            Sampler::Ccf => stats.comparisons,
                            _ => stats.probes,
                        };
                    }
                }
            }
            for (slot, sampler) in COLUMN_ORDER.into_iter().enumerate() {
                records.push(TimingRecord {
                    n,
                    ratio,
                    sampler,
                    mean_seconds: seconds[slot] / config.trials as f64,
                    probe_mean: config
                        .instrument
                        .then(|| probes[slot] as f64 / config.trials as f64),
                });
            }
        }
    }

    let outcome = BenchOutcome {
        n_values,
        ratios: config.ratios.clone(),
        records,
    };
    if let (Some(file), Some(path)) = (file, &config.output_path) {
        let io_err = |source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut w = BufWriter::new(file);
        write_csv(&outcome, &mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    Ok(outcome)
}

pub fn csv_header(ratios: &[usize]) -> String {
    let mut header = String::from("Ns");
    for ratio in ratios {
        for sampler in COLUMN_ORDER {
            header.push_str(&format!(",times{}M{}", sampler.tag(), ratio));
        }
    }
    header
}

/// Header row, then one row per sample count.
pub fn write_csv<W: Write>(outcome: &BenchOutcome, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "{}", csv_header(&outcome.ratios))?;
    for &n in &outcome.n_values {
        let mut row = n.to_string();
        for &ratio in &outcome.ratios {
            for sampler in COLUMN_ORDER {
                let secs = outcome
                    .get(n, ratio, sampler)
                    .map_or(f64::NAN, |r| r.mean_seconds);
                row.push(',');
                row.push_str(&format_seconds(secs));
            }
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Plain decimal with nine significant digits.
pub fn format_seconds(secs: f64) -> String {
    if secs.is_nan() {
        return "nan".to_string();
    }
    if secs == 0.0 {
        return "0".to_string();
    }
    let magnitude = secs.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    format!("{secs:.decimals$}")
}
