use mnsample::{
    dac_match_with, sorted_uniforms, RngStream, Sampler, SortedUniforms, Trace, WeightTable,
};

fn ceil_log2(x: usize) -> u64 {
    (x as f64).log2().ceil() as u64
}

#[test]
fn hard_bounds_on_mixed_shapes() {
    let mut seed = 0;
    for &m in &[1usize, 2, 7, 64, 1000, 5000] {
        for &n in &[1usize, 3, 64, 999, 4000] {
            seed += 1;
            let raw: Vec<f64> = (0..m).map(|j| ((j * 31 + 7) % 11) as f64).collect();
            let Ok(table) = WeightTable::build(&raw) else {
                continue;
            };
            let probe_bound = n as u64 * (ceil_log2(m) + 1);
            let (_, ccf) = Sampler::Ccf.sample_with_stats(&table, n, &mut RngStream::new(seed));
            assert!(ccf.comparisons <= (n + m - 1) as u64, "ccf m={m} n={n}");
            assert_eq!(ccf.probes, 0);
            let (_, bin) = Sampler::Binary.sample_with_stats(&table, n, &mut RngStream::new(seed));
            assert!(bin.probes <= probe_bound);
            let (_, dac) = Sampler::Dac.sample_with_stats(&table, n, &mut RngStream::new(seed));
            assert!(dac.probes <= probe_bound);
            assert!(
                dac.max_depth as u64 <= ceil_log2(n) + 1,
                "depth m={m} n={n}"
            );
        }
    }
}

#[test]
fn smallest_instance() {
    let table = WeightTable::build(&[1.0]).unwrap();
    let (out, stats) = Sampler::Dac.sample_with_stats(&table, 1, &mut RngStream::new(0));
    assert_eq!(out.as_slice(), &[0]);
    assert!(stats.probes <= 1);
}

#[test]
fn deep_inputs_do_not_overflow_the_stack() {
    let table = WeightTable::build(&vec![1.0; 1 << 20]).unwrap();
    let n = 10_000_000;
    let (out, stats) = Sampler::Dac.sample_with_stats(&table, n, &mut RngStream::new(1));
    assert_eq!(out.len(), n);
    assert!(stats.max_depth as u64 <= ceil_log2(n) + 1);
}

#[test]
fn mean_dac_probes_track_log_ratio() {
    for &n in &[100usize, 1000] {
        let mut means = Vec::new();
        for &ratio in &[1usize, 100, 1000] {
            let m = n * ratio;
            let table = WeightTable::build(&vec![1.0; m]).unwrap();
            let trials = 20;
            let total: u64 = (0..trials)
                .map(|t| {
                    Sampler::Dac
                        .sample_with_stats(&table, n, &mut RngStream::substream(t, m as u64))
                        .1
                        .probes
                })
                .sum();
            let mean = total as f64 / trials as f64;
            let bound = 4.0 * n as f64 * (1.0 + (m as f64 / n as f64 + 1.0).log2());
            assert!(mean <= bound, "n={n} ratio={ratio}: {mean} > {bound}");
            means.push(mean / n as f64);
        }
        // Per-sample cost grows with log of the ratio, far below M.
        assert!(means[2] < means[0] + 2.0 * (1001f64).log2());
    }
}

/// Five uniforms over five weights laid out as in the textbook picture:
/// the median uniform is matched first, then each half in its own scope.
#[test]
fn five_by_five_walkthrough() {
    let table = WeightTable::from_cumulative(vec![0.1, 0.3, 0.5, 0.7, 1.0]).unwrap();
    let u = SortedUniforms::from_values(vec![0.125, 0.2375, 0.375, 0.4375, 0.875]).unwrap();
    let mut trace = Trace::default();
    let out = dac_match_with(&u, &table, &mut trace);
    assert_eq!(out.as_slice(), &[1, 1, 2, 2, 4]);

    let first = trace.events[0];
    assert_eq!(
        (first.uniform, first.lo, first.hi, first.found, first.depth),
        (2, 0, 4, 2, 1)
    );

    let at_depth = |d: u32| {
        let mut v: Vec<_> = trace
            .events
            .iter()
            .filter(|e| e.depth == d)
            .map(|e| (e.uniform, e.lo, e.hi, e.found))
            .collect();
        v.sort();
        v
    };
    assert_eq!(at_depth(2), vec![(0, 0, 2, 1), (3, 2, 4, 2)]);
    assert_eq!(at_depth(3), vec![(1, 1, 2, 1), (4, 2, 4, 4)]);
    assert_eq!(trace.events.len(), 5);
}

#[test]
fn sorted_uniform_stream_is_shared_between_sorted_samplers() {
    let table = WeightTable::build(&vec![1.0; 4096]).unwrap();
    let u = sorted_uniforms(&mut RngStream::new(5), 100);
    let (a, _) = mnsample::ccf_match(&u, &table);
    let b = Sampler::Dac.sample(&table, 100, &mut RngStream::new(5));
    assert_eq!(a, b);
}
