//! Wall-clock comparison of the counting engines.

use std::fmt::Write as _;
use std::time::Instant;

use convexcount_core::counting::{
    count4_from_regions, count4_naive, count5_from_regions, count5_naive, CountingError,
};
use convexcount_core::search::{generate, GeneratorKind, GeneratorSpec, SearchError};
use convexcount_core::{Placement, TypeCounts4, TypeCounts5};

use crate::parallel::aggregate_parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchEngine {
    Naive,
    Regions,
}

impl BenchEngine {
    pub fn name(self) -> &'static str {
        match self {
            BenchEngine::Naive => "naive",
            BenchEngine::Regions => "regions",
        }
    }

    pub fn run(
        self,
        p: &Placement,
        threads: usize,
    ) -> Result<(TypeCounts4, TypeCounts5), CountingError> {
        match self {
            BenchEngine::Naive => Ok((count4_naive(p), count5_naive(p))),
            BenchEngine::Regions => {
                let a = aggregate_parallel(p, threads)?;
                Ok((count4_from_regions(&a)?, count5_from_regions(&a)?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub engine: BenchEngine,
    pub mean_ms: f64,
    pub min_ms: f64,
    pub counts4: TypeCounts4,
    pub counts5: TypeCounts5,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    /// Sizes at which the engines disagreed.
    pub mismatches: Vec<usize>,
}

impl BenchOutcome {
    pub fn row(&self, n: usize, engine: BenchEngine) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n && r.engine == engine)
    }

    /// Mean naive time over mean regions time at `n`.
    pub fn speedup(&self, n: usize) -> Option<f64> {
        let naive = self.row(n, BenchEngine::Naive)?;
        let regions = self.row(n, BenchEngine::Regions)?;
        Some(naive.mean_ms / regions.mean_ms)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Generate(#[from] SearchError),
    #[error(transparent)]
    Counting(#[from] CountingError),
}

/// Times each engine `repeat` times on one generated placement per size.
pub fn run_bench(
    sizes: &[usize],
    engines: &[BenchEngine],
    repeat: usize,
    kind: GeneratorKind,
    seed: u64,
    threads: usize,
) -> Result<BenchOutcome, BenchError> {
    let mut out = BenchOutcome::default();
    for &n in sizes {
        let p = generate(&GeneratorSpec::new(kind, n, seed))?;
        let mut first: Option<(TypeCounts4, TypeCounts5)> = None;
        for &engine in engines {
            let mut times = Vec::with_capacity(repeat.max(1));
            let mut counts = None;
            for _ in 0..repeat.max(1) {
                let t = Instant::now();
                let c = engine.run(&p, threads)?;
                times.push(t.elapsed().as_secs_f64() * 1e3);
                counts = Some(c);
            }
            let (c4, c5) = counts.expect("at least one repetition");
            match first {
                None => first = Some((c4, c5)),
                Some(f) if f != (c4, c5) && !out.mismatches.contains(&n) => out.mismatches.push(n),
                Some(_) => {}
            }
            out.rows.push(BenchRow {
                n,
                engine,
                mean_ms: times.iter().sum::<f64>() / times.len() as f64,
                min_ms: times.iter().copied().fold(f64::INFINITY, f64::min),
                counts4: c4,
                counts5: c5,
            });
        }
    }
    Ok(out)
}

pub fn render_table(b: &BenchOutcome) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>5}  {:<8}  {:>12}  {:>12}  {:>12}  {:>10}  {:>8}",
        "n", "engine", "mean_ms", "min_ms", "pentagon", "quad", "speedup"
    );
    for r in &b.rows {
        let speedup = match (r.engine, b.speedup(r.n)) {
            (BenchEngine::Regions, Some(x)) => format!("{x:.2}x"),
            _ => "-".to_owned(),
        };
        let _ = writeln!(
            s,
            "{:>5}  {:<8}  {:>12.3}  {:>12.3}  {:>12}  {:>10}  {:>8}",
            r.n,
            r.engine.name(),
            r.mean_ms,
            r.min_ms,
            r.counts5.pentagon,
            r.counts4.quad,
            speedup
        );
    }
    for n in &b.mismatches {
        let _ = writeln!(s, "MISMATCH at n = {n}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engines_agree_and_table_lists_rows() {
        let b = run_bench(
            &[8, 12],
            &[BenchEngine::Naive, BenchEngine::Regions],
            2,
            GeneratorKind::RandomDisc,
            1,
            1,
        )
        .unwrap();
        assert!(b.mismatches.is_empty());
        assert_eq!(b.rows.len(), 4);
        assert!(b.speedup(12).is_some());
        let table = render_table(&b);
        assert_eq!(table.lines().count(), 5);
        assert!(table.contains("regions"));
    }

    #[test]
    fn single_engine_has_no_speedup() {
        let b = run_bench(
            &[10],
            &[BenchEngine::Naive],
            1,
            GeneratorKind::Parabola,
            0,
            1,
        )
        .unwrap();
        assert_eq!(b.speedup(10), None);
        assert_eq!(b.rows[0].counts5.pentagon, 252);
    }
}
