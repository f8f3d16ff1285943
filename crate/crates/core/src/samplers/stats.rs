//! Operation counters for the samplers.

/// Hooks called by the samplers as they work. Every method defaults to a
/// no-op so uninstrumented runs pay nothing.
pub trait Recorder {
    /// One weight-vs-uniform comparison in a linear sweep.
    #[inline(always)]
    fn compare(&mut self) {}

    /// One binary-search midpoint evaluation.
    #[inline(always)]
    fn probe(&mut self) {}

    /// Entered a divide-and-conquer subproblem at this nesting depth (root = 1).
    #[inline(always)]
    fn enter(&mut self, _depth: u32) {}

    /// A completed range-restricted search.
    #[inline(always)]
    fn search(&mut self, _event: SearchEvent) {}
}

/// Recorder that records nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoStats;

impl Recorder for NoStats {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    /// Weight-vs-uniform comparisons, including those made by probes.
    pub comparisons: u64,
    /// Binary-search midpoint evaluations.
    pub probes: u64,
    /// Deepest divide-and-conquer subproblem; 0 for non-recursive samplers.
    pub max_depth: u32,
}

impl Recorder for OpStats {
    #[inline(always)]
    fn compare(&mut self) {
        self.comparisons += 1;
    }

    #[inline(always)]
    fn probe(&mut self) {
        self.comparisons += 1;
        self.probes += 1;
    }

    #[inline(always)]
    fn enter(&mut self, depth: u32) {
        self.max_depth = self.max_depth.max(depth);
    }
}

/// One matched uniform: `uniforms[uniform]` was searched for in the
/// inclusive weight range `lo..=hi` and landed on `found`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchEvent {
    pub uniform: usize,
    pub lo: usize,
    pub hi: usize,
    pub found: usize,
    pub depth: u32,
}

/// Full search log plus counters.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub events: Vec<SearchEvent>,
    pub stats: OpStats,
}

impl Recorder for Trace {
    fn compare(&mut self) {
        self.stats.compare();
    }

    fn probe(&mut self) {
        self.stats.probe();
    }

    fn enter(&mut self, depth: u32) {
        self.stats.enter(depth);
    }

    fn search(&mut self, event: SearchEvent) {
        self.events.push(event);
    }
}
