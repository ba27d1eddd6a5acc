//! Placement generators and a simulated-annealing minimizer of the number of
//! convex pentagons.
//!
//! The annealer keeps a full orientation table of the current placement, a
//! bitmask per triple of the fourth points completing a convex quadrilateral,
//! and the number of pentagons through each point. A single-point move is
//! scored by recounting only the five-subsets through the moved point. Four points are in convex position iff the alternating
//! sign sum of their four triple orientations vanishes (a 2–2 Radon
//! partition), and five points form a convex pentagon iff all five of their
//! four-subsets are convex.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{aggregate_regions, count5_from_regions, count5_naive, CountingError};
use crate::geometry::{det, Placement, Point, Violation, COORD_BOUND};

/// Largest parabola placement whose coordinates stay in bounds: `(n-1)² <= 10⁷`.
pub const PARABOLA_MAX_N: usize = 3163;

const MAX_ATTEMPTS_PER_POINT: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Parabola,
    RandomDisc,
    Convex,
    GridPerturbed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    pub coord_bound: i64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            coord_bound: 1_000_000,
        }
    }

    pub fn with_bound(mut self, coord_bound: i64) -> Self {
        self.coord_bound = coord_bound;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid generator or search parameters: {0}")]
    InvalidSpec(&'static str),
    #[error("could not place point {placed} of {n} in general position after {MAX_ATTEMPTS_PER_POINT} attempts")]
    ExhaustedRejection { placed: usize, n: usize },
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("incremental pentagon count {incremental} disagrees with recount {recount}")]
    IncrementalMismatch { incremental: u64, recount: u64 },
}

/// Whether `q` can join `points` keeping them distinct and in general position.
fn fits(points: &[Point], q: Point) -> bool {
    if !q.in_bounds() {
        return false;
    }
    for (i, &a) in points.iter().enumerate() {
        if a == q {
            return false;
        }
        for &b in &points[i + 1..] {
            if det(a, b, q) == 0 {
                return false;
            }
        }
    }
    true
}

fn place_with<F>(n: usize, mut sample: F) -> Result<Placement, SearchError>
where
    F: FnMut(usize) -> Point,
{
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let mut placed = false;
        for _ in 0..MAX_ATTEMPTS_PER_POINT {
            let q = sample(i);
            if fits(&points, q) {
                points.push(q);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(SearchError::ExhaustedRejection { placed: i, n });
        }
    }
    Ok(Placement::new(points)?)
}

/// Generates a valid placement; deterministic in `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Placement, SearchError> {
    let n = spec.n;
    if n < 3 {
        return Err(SearchError::InvalidSpec("n must be at least 3"));
    }
    let bound = spec.coord_bound;
    if !(1..=COORD_BOUND).contains(&bound) {
        return Err(SearchError::InvalidSpec(
            "coordinate bound must lie in [1, 10^7]",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GeneratorKind::Parabola => {
            if n > PARABOLA_MAX_N {
                return Err(SearchError::InvalidSpec("parabola needs n <= 3163"));
            }
            let pts = (0..n as i64).map(|i| Point::new(i, i * i)).collect();
            Ok(Placement::new(pts)?)
        }
        GeneratorKind::RandomDisc => {
            let r2 = bound as i128 * bound as i128;
            place_with(n, |_| loop {
                let x = rng.random_range(-bound..=bound);
                let y = rng.random_range(-bound..=bound);
                if (x as i128 * x as i128 + y as i128 * y as i128) <= r2 {
                    break Point::new(x, y);
                }
            })
        }
        GeneratorKind::Convex => {
            let r = bound as f64;
            let step = core::f64::consts::TAU / n as f64;
            place_with(n, |i| {
                let theta = step * (i as f64 + 0.5 * rng.random::<f64>());
                let x = libm::round(r * libm::cos(theta)) as i64;
                let y = libm::round(r * libm::sin(theta)) as i64;
                Point::new(x.clamp(-bound, bound), y.clamp(-bound, bound))
            })
        }
        GeneratorKind::GridPerturbed => {
            let side = libm::ceil(libm::sqrt(n as f64)) as i64;
            let spacing = (2 * bound) / side;
            let jitter = (spacing / 4).max(1);
            place_with(n, |i| {
                let (row, col) = (i as i64 / side, i as i64 % side);
                let cx = -bound + spacing * col + spacing / 2;
                let cy = -bound + spacing * row + spacing / 2;
                let x = cx + rng.random_range(-jitter..=jitter);
                let y = cy + rng.random_range(-jitter..=jitter);
                Point::new(x.clamp(-bound, bound), y.clamp(-bound, bound))
            })
        }
    }
}

/// Proven minimum pentagon counts used as a consistency guard.
pub fn published_minimum(n: usize) -> Option<u64> {
    match n {
        16 => Some(112),
        18 => Some(252),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealConfig {
    pub n: usize,
    /// Proposals per restart.
    pub iterations: u64,
    pub restarts: u32,
    pub seed: u64,
    pub initial_temperature: f64,
    /// Per-proposal geometric factor applied to the temperature.
    pub cooling: f64,
    pub coord_bound: i64,
    /// Probability of a global (uniform in the bounding box) move; local
    /// moves stay in a box of side `local_side` around the current position.
    pub global_move_prob: f64,
    pub local_side: i64,
    /// Accepted moves between from-scratch recounts of the running count.
    pub recount_every: u64,
}

pub const DEFAULT_ITERATIONS: u64 = 1_000_000;
pub const DEFAULT_RESTARTS: u32 = 8;
pub const DEFAULT_SEARCH_BOUND: i64 = 100_000;
const DEFAULT_T0: f64 = 2.0;
const DEFAULT_T_FINAL: f64 = 0.02;

impl AnnealConfig {
    /// Default schedule for `n` points: the temperature decays geometrically
    /// from 2 to 0.02 over the run.
    pub fn new(n: usize) -> Self {
        Self::with_budget(n, DEFAULT_ITERATIONS, DEFAULT_RESTARTS, 0)
    }

    pub fn with_budget(n: usize, iterations: u64, restarts: u32, seed: u64) -> Self {
        let bound = DEFAULT_SEARCH_BOUND;
        Self {
            n,
            iterations,
            restarts,
            seed,
            initial_temperature: DEFAULT_T0,
            cooling: cooling_for(iterations, DEFAULT_T0, DEFAULT_T_FINAL),
            coord_bound: bound,
            global_move_prob: 0.5,
            local_side: (bound / 8).max(2),
            recount_every: 10_000,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n < 5 || self.n > ANNEAL_MAX_N {
            return Err(SearchError::InvalidSpec("minimization needs 5 <= n <= 64"));
        }
        if self.iterations == 0 {
            return Err(SearchError::InvalidSpec("iterations must be >= 1"));
        }
        if self.restarts == 0 {
            return Err(SearchError::InvalidSpec("restarts must be >= 1"));
        }
        if self.initial_temperature.is_nan() || self.initial_temperature <= 0.0 {
            return Err(SearchError::InvalidSpec("temperature must be > 0"));
        }
        if !(self.cooling > 0.0 && self.cooling <= 1.0) {
            return Err(SearchError::InvalidSpec("cooling must lie in (0, 1]"));
        }
        if self.coord_bound < 2 || self.coord_bound > COORD_BOUND {
            return Err(SearchError::InvalidSpec(
                "coordinate bound must lie in [2, 10^7]",
            ));
        }
        if !(0.0..=1.0).contains(&self.global_move_prob) || self.local_side < 2 {
            return Err(SearchError::InvalidSpec("bad move parameters"));
        }
        if self.recount_every == 0 {
            return Err(SearchError::InvalidSpec("recount interval must be >= 1"));
        }
        Ok(())
    }

    /// Seed of one restart chain, mixed from the base seed.
    pub fn restart_seed(&self, restart: u32) -> u64 {
        splitmix64(self.seed ^ splitmix64(restart as u64 + 1))
    }
}

/// Geometric factor taking `t0` to `t_final` in `iterations` steps.
pub fn cooling_for(iterations: u64, t0: f64, t_final: f64) -> f64 {
    libm::pow(t_final / t0, 1.0 / iterations.max(1) as f64).min(1.0)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn sign_of(d: i64) -> i8 {
    d.signum() as i8
}

/// Convexity of `(q0, q1, q2, q3)` from `s_i = χ(all but q_i)`.
#[inline]
fn radon_convex(s0: i8, s1: i8, s2: i8, s3: i8) -> bool {
    s0 - s1 + s2 - s3 == 0
}

/// Largest `n` the annealer accepts; fourth-point sets are `u64` masks.
pub const ANNEAL_MAX_N: usize = 64;

/// Running pentagon count of a placement under single-point moves.
#[derive(Clone, Debug)]
pub struct IncrementalPentagons {
    n: usize,
    points: Vec<Point>,
    /// `orient[(i*n + j)*n + k] = χ(i, j, k)`; zero on the diagonal.
    orient: Vec<i8>,
    /// For `a < b < c`, bit `d` of `quad[(a*n + b)*n + c]` is set iff
    /// `{a, b, c, d}` is in convex position.
    quad: Vec<u64>,
    total: u64,
    /// `χ(q, j, k)` for the proposed location `q`.
    row: Vec<i8>,
    /// Bit `z` of `pair[x*n + y]` marks `{p, x, y, z}` convex, for `x < y < z`.
    pair: Vec<u64>,
    /// Pentagons through each point of the current placement.
    through_count: Vec<u64>,
    tally: Vec<i64>,
}

impl IncrementalPentagons {
    /// Panics if `p.len() > ANNEAL_MAX_N`.
    pub fn new(p: &Placement) -> Self {
        let n = p.len();
        assert!(
            n <= ANNEAL_MAX_N,
            "annealer supports at most {ANNEAL_MAX_N} points"
        );
        let points = p.points().to_vec();
        let mut orient = vec![0i8; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j && j != k && i != k {
                        orient[(i * n + j) * n + k] = sign_of(det(points[i], points[j], points[k]));
                    }
                }
            }
        }
        let mut s = Self {
            n,
            points,
            orient,
            quad: vec![0; n * n * n],
            total: 0,
            row: vec![0; n * n],
            pair: vec![0; n * n],
            through_count: vec![0; n],
            tally: vec![0; n],
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    s.quad[(a * n + b) * n + c] = s.quad_mask(a, b, c);
                }
            }
        }
        s.total = s.count_all();
        for p in 0..n {
            s.through_count[p] = s.through(p, false, None);
        }
        s
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    fn chi(&self, i: usize, j: usize, k: usize) -> i8 {
        self.orient[(i * self.n + j) * self.n + k]
    }

    #[inline]
    fn convex4(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        radon_convex(
            self.chi(b, c, d),
            self.chi(a, c, d),
            self.chi(a, b, d),
            self.chi(a, b, c),
        )
    }

    fn quad_mask(&self, a: usize, b: usize, c: usize) -> u64 {
        (0..self.n)
            .filter(|&d| d != a && d != b && d != c && self.convex4(a, b, c, d))
            .fold(0, |m, d| m | 1 << d)
    }

    #[inline]
    fn q(&self, a: usize, b: usize, c: usize) -> u64 {
        self.quad[(a * self.n + b) * self.n + c]
    }

    /// Pentagon count from the orientation table alone.
    pub fn count_all(&self) -> u64 {
        let n = self.n;
        let mut total = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let qabc = self.q(a, b, c);
                    let mut ds = qabc & above(c);
                    while ds != 0 {
                        let d = ds.trailing_zeros() as usize;
                        ds &= ds - 1;
                        total += popcount(
                            qabc & self.q(a, b, d) & self.q(a, c, d) & self.q(b, c, d) & above(d),
                        );
                    }
                }
            }
        }
        total
    }

    /// Fills `pair` with the masks of `{p, x, y, z}` convex, reading
    /// `χ(p, j, k)` from `row` or from the table.
    fn fill_pairs(&mut self, p: usize, use_row: bool) {
        let n = self.n;
        let Self {
            row, orient, pair, ..
        } = self;
        let prow: &[i8] = if use_row {
            row
        } else {
            &orient[p * n * n..(p + 1) * n * n]
        };
        for a in (0..n).filter(|&a| a != p) {
            let pa = &prow[a * n..(a + 1) * n];
            for b in (a + 1..n).filter(|&b| b != p) {
                let pb = &prow[b * n..(b + 1) * n];
                let ab = &orient[(a * n + b) * n..(a * n + b + 1) * n];
                let pab = pa[b];
                let mut mask = 0u64;
                for (c, ((&abc, &pbc), &pac)) in ab.iter().zip(pb).zip(pa).enumerate().skip(b + 1) {
                    mask |= (radon_convex(abc, pbc, pac, pab) as u64) << c;
                }
                pair[a * n + b] = mask & !(1 << p);
            }
        }
    }

    /// Pentagons through `p`. With `tally`, adds to `tally[x]` the number of
    /// them that contain `x`.
    fn through(&mut self, p: usize, use_row: bool, mut tally: Option<&mut [i64]>) -> u64 {
        self.fill_pairs(p, use_row);
        let n = self.n;
        let mut count = 0;
        for a in (0..n).filter(|&a| a != p) {
            let pair_a = &self.pair[a * n..(a + 1) * n];
            for b in (a + 1..n).filter(|&b| b != p) {
                let pair_b = &self.pair[b * n..(b + 1) * n];
                let quad_ab = &self.quad[(a * n + b) * n..(a * n + b + 1) * n];
                let pab = pair_a[b];
                let mut cs = pab;
                while cs != 0 {
                    let c = cs.trailing_zeros() as usize;
                    cs &= cs - 1;
                    let mut ds = pab & pair_a[c] & pair_b[c] & quad_ab[c] & above(c);
                    if ds == 0 {
                        continue;
                    }
                    let k = popcount(ds);
                    count += k;
                    if let Some(t) = tally.as_deref_mut() {
                        t[a] += k as i64;
                        t[b] += k as i64;
                        t[c] += k as i64;
                        while ds != 0 {
                            t[ds.trailing_zeros() as usize] += 1;
                            ds &= ds - 1;
                        }
                    }
                }
            }
        }
        count
    }

    /// Change in the pentagon count if point `p` moved to `q`, or `None` if
    /// the move would break general position or leave the coordinate bound.
    pub fn propose(&mut self, p: usize, q: Point) -> Option<i64> {
        if !q.in_bounds() {
            return None;
        }
        let n = self.n;
        for j in 0..n {
            if j == p {
                continue;
            }
            if self.points[j] == q {
                return None;
            }
            for k in j + 1..n {
                if k == p {
                    continue;
                }
                let s = sign_of(det(q, self.points[j], self.points[k]));
                if s == 0 {
                    return None;
                }
                self.row[j * n + k] = s;
                self.row[k * n + j] = -s;
            }
        }
        let new = self.through(p, true, None) as i64;
        Some(new - self.through_count[p] as i64)
    }

    /// Applies the move scored by the last [`propose`](Self::propose) call.
    pub fn commit(&mut self, p: usize, q: Point, delta: i64) {
        let n = self.n;
        let mut tally = core::mem::take(&mut self.tally);
        tally.iter_mut().for_each(|t| *t = 0);
        let new = self.through(p, true, Some(&mut tally));
        tally.iter_mut().for_each(|t| *t = -*t);
        let old = self.through(p, false, Some(&mut tally));
        debug_assert_eq!(new as i64 - old as i64, delta);
        for (x, t) in tally.iter().enumerate() {
            self.through_count[x] = (self.through_count[x] as i64 - t) as u64;
        }
        self.through_count[p] = new;
        self.tally = tally;
        for j in 0..n {
            for k in 0..n {
                if j == p || k == p || j == k {
                    continue;
                }
                let s = self.row[j * n + k];
                self.orient[(p * n + j) * n + k] = s;
                self.orient[(j * n + k) * n + p] = s;
                self.orient[(k * n + p) * n + j] = s;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let idx = (a * n + b) * n + c;
                    if a == p || b == p || c == p {
                        self.quad[idx] = self.quad_mask(a, b, c);
                    } else if self.convex4(a, b, c, p) {
                        self.quad[idx] |= 1 << p;
                    } else {
                        self.quad[idx] &= !(1 << p);
                    }
                }
            }
        }
        self.points[p] = q;
        self.total = (self.total as i64 + delta) as u64;
    }

    pub fn placement(&self) -> Placement {
        Placement::new(self.points.clone()).expect("annealer keeps the placement valid")
    }
}

/// Kernighan's loop; the masks here are sparse and the target may lack a
/// hardware popcount.
#[inline]
fn popcount(mut x: u64) -> u64 {
    let mut k = 0;
    while x != 0 {
        x &= x - 1;
        k += 1;
    }
    k
}

/// Bits strictly above position `i`.
#[inline]
fn above(i: usize) -> u64 {
    !0u64 << i << 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestartTrace {
    pub restart: u32,
    pub seed: u64,
    pub initial_count: u64,
    pub best_count: u64,
    pub accepted: u64,
    pub rejected_invalid: u64,
    /// `(proposal index, count)` each time the best-so-far improved.
    pub improvements: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestartOutcome {
    pub trace: RestartTrace,
    pub best: Placement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    /// Fewer pentagons than a proven minimum: the counting code is wrong.
    PublishedBoundViolated {
        n: usize,
        published: u64,
        found: u64,
    },
    RecountMismatch {
        reported: u64,
        recount: u64,
    },
}

impl Consistency {
    pub fn is_ok(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best: Placement,
    pub best_count: u64,
    /// Total proposals over all restarts.
    pub iterations: u64,
    pub restarts: Vec<RestartTrace>,
    pub consistency: Consistency,
}

/// Runs one annealing chain.
pub fn anneal_restart(cfg: &AnnealConfig, restart: u32) -> Result<RestartOutcome, SearchError> {
    cfg.validate()?;
    let seed = cfg.restart_seed(restart);
    let start = generate(&GeneratorSpec {
        kind: GeneratorKind::RandomDisc,
        n: cfg.n,
        seed,
        coord_bound: cfg.coord_bound,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut state = IncrementalPentagons::new(&start);
    let bound = cfg.coord_bound;
    let half = cfg.local_side / 2;

    let mut best = start;
    let mut trace = RestartTrace {
        restart,
        seed,
        initial_count: state.total(),
        best_count: state.total(),
        accepted: 0,
        rejected_invalid: 0,
        improvements: Vec::new(),
    };
    let mut temperature = cfg.initial_temperature;

    for iter in 0..cfg.iterations {
        if trace.best_count == 0 {
            break;
        }
        let p = rng.random_range(0..cfg.n);
        let q = if rng.random::<f64>() < cfg.global_move_prob {
            Point::new(
                rng.random_range(-bound..=bound),
                rng.random_range(-bound..=bound),
            )
        } else {
            let cur = state.points()[p];
            Point::new(
                (cur.x + rng.random_range(-half..=half)).clamp(-bound, bound),
                (cur.y + rng.random_range(-half..=half)).clamp(-bound, bound),
            )
        };
        let u: f64 = rng.random();
        temperature *= cfg.cooling;

        let Some(delta) = state.propose(p, q) else {
            trace.rejected_invalid += 1;
            continue;
        };
        if delta > 0 && u >= libm::exp(-(delta as f64) / temperature) {
            continue;
        }
        state.commit(p, q, delta);
        trace.accepted += 1;

        if trace.accepted.is_multiple_of(cfg.recount_every) {
            let recount = count5_naive(&state.placement()).pentagon;
            if recount != state.total() {
                return Err(SearchError::IncrementalMismatch {
                    incremental: state.total(),
                    recount,
                });
            }
        }
        if state.total() < trace.best_count {
            trace.best_count = state.total();
            trace.improvements.push((iter, state.total()));
            best = state.placement();
        }
    }
    Ok(RestartOutcome { trace, best })
}

/// Picks the best restart (ties go to the lowest restart index), recounts it
/// from scratch and applies the published-minimum guard.
pub fn merge_restarts(
    cfg: &AnnealConfig,
    mut outcomes: Vec<RestartOutcome>,
) -> Result<SearchResult, SearchError> {
    outcomes.sort_by_key(|o| o.trace.restart);
    let winner = outcomes
        .iter()
        .min_by_key(|o| (o.trace.best_count, o.trace.restart))
        .ok_or(SearchError::InvalidSpec("no restarts were run"))?;
    let best = winner.best.clone();
    let best_count = winner.trace.best_count;

    let recount = count5_from_regions(&aggregate_regions(&best)?)?.pentagon;
    let consistency = if recount != best_count {
        Consistency::RecountMismatch {
            reported: best_count,
            recount,
        }
    } else {
        match published_minimum(cfg.n) {
            Some(published) if best_count < published => Consistency::PublishedBoundViolated {
                n: cfg.n,
                published,
                found: best_count,
            },
            _ => Consistency::Consistent,
        }
    };
    let iterations = outcomes.iter().map(|o| proposals_used(cfg, &o.trace)).sum();
    Ok(SearchResult {
        best,
        best_count,
        iterations,
        restarts: outcomes.into_iter().map(|o| o.trace).collect(),
        consistency,
    })
}

/// Proposals a chain made; chains stop early once they reach zero.
fn proposals_used(cfg: &AnnealConfig, t: &RestartTrace) -> u64 {
    if t.best_count == 0 {
        t.improvements.last().map_or(0, |&(i, _)| i + 1)
    } else {
        cfg.iterations
    }
}

/// Runs all restarts sequentially and merges them.
pub fn minimize_pentagons(cfg: &AnnealConfig) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let outcomes = (0..cfg.restarts)
        .map(|r| anneal_restart(cfg, r))
        .collect::<Result<Vec<_>, _>>()?;
    merge_restarts(cfg, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::{type4_of, Type4};
    use crate::counting::delta_count5;
    use crate::geometry::validate_points;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn parabola_generator() {
        let p = generate(&GeneratorSpec::new(GeneratorKind::Parabola, 5, 0)).unwrap();
        let expect: Vec<Point> = [(0, 0), (1, 1), (2, 4), (3, 9), (4, 16)]
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect();
        assert_eq!(p.points(), &expect[..]);
        assert!(generate(&GeneratorSpec::new(GeneratorKind::Parabola, 3164, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(GeneratorKind::Parabola, 3163, 0)).is_ok());
    }

    #[test]
    fn generators_are_deterministic_and_valid() {
        for kind in [
            GeneratorKind::Parabola,
            GeneratorKind::RandomDisc,
            GeneratorKind::Convex,
            GeneratorKind::GridPerturbed,
        ] {
            for n in [3, 10, 37] {
                let spec = GeneratorSpec::new(kind, n, 7);
                let a = generate(&spec).unwrap();
                let b = generate(&spec).unwrap();
                assert_eq!(a, b);
                assert_eq!(a.len(), n);
                assert_eq!(validate_points(a.points()), Ok(()));
            }
        }
    }

    #[test]
    fn seeds_differ() {
        let a = generate(&GeneratorSpec::new(GeneratorKind::RandomDisc, 10, 7)).unwrap();
        let b = generate(&GeneratorSpec::new(GeneratorKind::RandomDisc, 10, 8)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn pathological_bound_exhausts() {
        let spec = GeneratorSpec::new(GeneratorKind::RandomDisc, 10, 1).with_bound(1);
        assert!(matches!(
            generate(&spec),
            Err(SearchError::ExhaustedRejection { .. })
        ));
        let spec = GeneratorSpec::new(GeneratorKind::RandomDisc, 2, 1);
        assert!(matches!(generate(&spec), Err(SearchError::InvalidSpec(_))));
    }

    #[test]
    fn radon_rule_matches_classify4() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = [0usize; 2];
        for _ in 0..2000 {
            let q: [Point; 4] = core::array::from_fn(|_| {
                Point::new(rng.random_range(-20..=20), rng.random_range(-20..=20))
            });
            if validate_points(&q).is_err() {
                continue;
            }
            let s = |i: usize, j: usize, k: usize| sign_of(det(q[i], q[j], q[k]));
            let convex = radon_convex(s(1, 2, 3), s(0, 2, 3), s(0, 1, 3), s(0, 1, 2));
            assert_eq!(convex, type4_of(q) == Type4::ConvexQuad);
            seen[convex as usize] += 1;
        }
        assert!(seen[0] > 100 && seen[1] > 100);
    }

    fn random_placement(n: usize, seed: u64) -> Placement {
        generate(&GeneratorSpec::new(GeneratorKind::RandomDisc, n, seed).with_bound(50)).unwrap()
    }

    #[test]
    fn table_count_matches_naive() {
        for seed in 0..20 {
            let p = random_placement(5 + (seed as usize % 6), seed);
            assert_eq!(
                IncrementalPentagons::new(&p).total(),
                count5_naive(&p).pentagon
            );
        }
    }

    #[test]
    fn random_nine_delta_matches_full_difference() {
        let p = random_placement(9, 11);
        for moved in 0..9 {
            let rest = p.without(moved).unwrap();
            let full = count5_naive(&p);
            let base = count5_naive(&rest);
            let d = delta_count5(&p, moved);
            assert_eq!(d.pentagon, full.pentagon - base.pentagon);
            assert_eq!(d.four_hull, full.four_hull - base.four_hull);
            assert_eq!(d.three_hull, full.three_hull - base.three_hull);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn proposals_match_recount(seed in 0u64..10_000, moves in proptest::collection::vec((0usize..9, -60i64..=60, -60i64..=60), 1..12)) {
            let p = random_placement(9, seed);
            let mut st = IncrementalPentagons::new(&p);
            for (idx, x, y) in moves {
                let q = Point::new(x, y);
                match st.propose(idx, q) {
                    None => {
                        let mut pts = st.points().to_vec();
                        pts[idx] = q;
                        prop_assert!(validate_points(&pts).is_err());
                    }
                    Some(delta) => {
                        let before = st.placement();
                        st.commit(idx, q, delta);
                        let after = st.placement();
                        prop_assert_eq!(st.total(), count5_naive(&after).pentagon);
                        let moved_after = delta_count5(&after, idx).pentagon as i64;
                        let moved_before = delta_count5(&before, idx).pentagon as i64;
                        prop_assert_eq!(delta, moved_after - moved_before);
                        for x in 0..9 {
                            prop_assert_eq!(st.through_count[x], delta_count5(&after, x).pentagon);
                        }
                        let fresh = IncrementalPentagons::new(&after);
                        prop_assert_eq!(&st.quad, &fresh.quad);
                    }
                }
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(AnnealConfig::new(16).validate().is_ok());
        assert!(AnnealConfig::new(4).validate().is_err());
        assert!(AnnealConfig::new(ANNEAL_MAX_N + 1).validate().is_err());
        let mut c = AnnealConfig::new(10);
        c.cooling = 1.5;
        assert!(c.validate().is_err());
        c.cooling = 1.0;
        c.initial_temperature = 0.0;
        assert!(c.validate().is_err());
        c.initial_temperature = 1.0;
        c.iterations = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn cooling_schedule_hits_final_temperature() {
        let c = cooling_for(1000, 2.0, 0.02);
        assert!((2.0 * libm::pow(c, 1000.0) - 0.02).abs() < 1e-9);
    }

    #[test]
    fn small_search_is_reproducible_and_monotone() {
        let cfg = AnnealConfig::with_budget(10, 3000, 2, 42);
        let a = minimize_pentagons(&cfg).unwrap();
        let b = minimize_pentagons(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.consistency.is_ok());
        assert_eq!(count5_naive(&a.best).pentagon, a.best_count);
        for t in &a.restarts {
            assert!(t.best_count <= t.initial_count);
            assert!(t
                .improvements
                .windows(2)
                .all(|w| w[0].1 > w[1].1 && w[0].0 < w[1].0));
        }
    }

    #[test]
    fn guard_fires_on_impossible_count() {
        let cfg = AnnealConfig::with_budget(16, 1, 1, 0);
        let best = generate(&GeneratorSpec::new(GeneratorKind::RandomDisc, 16, 5)).unwrap();
        let real = count5_naive(&best).pentagon;
        let fake = RestartOutcome {
            trace: RestartTrace {
                restart: 0,
                seed: 0,
                initial_count: real,
                best_count: real,
                accepted: 0,
                rejected_invalid: 0,
                improvements: Vec::new(),
            },
            best,
        };
        let r = merge_restarts(&cfg, vec![fake.clone()]).unwrap();
        if real < 112 {
            assert!(matches!(
                r.consistency,
                Consistency::PublishedBoundViolated { .. }
            ));
        } else {
            assert!(r.consistency.is_ok());
        }
        let mut lying = fake;
        lying.trace.best_count = real + 1;
        let r = merge_restarts(&cfg, vec![lying]).unwrap();
        assert!(matches!(r.consistency, Consistency::RecountMismatch { .. }));
    }
}
