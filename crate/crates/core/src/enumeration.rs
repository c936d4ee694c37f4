//! Exhaustive generation and counting of fixed polyominoes.
//!
//! The enumerator grows shapes canonically: cells are offered in a fixed
//! order along each search path and a cell skipped at one branch stays
//! blocked for the rest of that path, so every translation class is reached
//! exactly once and counting needs no shape storage. Shapes live on a
//! `(2n-1) x n` grid anchored so that the first cell in reading order (lowest
//! row, then lowest column) is the origin; cells below the origin row, or to
//! its left within that row, are permanently blocked.
//!
//! Counting never materializes shapes. Streaming rebuilds the current path
//! as a normalized [`Polyomino`] for each visit and is therefore slower;
//! the two modes have separate size limits.

use std::fmt;
use std::io::{self, Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;

use crate::geometry::{Cell, Polyomino};
use crate::table::{CountTable, TableOrigin};

/// Default ceiling for counting runs.
pub const DEFAULT_COUNT_LIMIT: usize = 16;
/// Default ceiling for streaming runs (visitors make large sizes slow).
pub const DEFAULT_STREAM_LIMIT: usize = 13;

/// Tunables for the enumerator.
#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub count_limit: usize,
    pub stream_limit: usize,
    /// Worker threads for counting; `None` means all available cores.
    pub workers: Option<usize>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            count_limit: DEFAULT_COUNT_LIMIT,
            stream_limit: DEFAULT_STREAM_LIMIT,
            workers: None,
        }
    }
}

/// Errors from the enumeration entry points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnumerationError {
    /// Requested size outside `1 ..= limit`.
    Limit { requested: usize, limit: usize },
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Limit { requested, limit } => {
                write!(
                    f,
                    "limit: requested size {requested} is outside 1..={limit}"
                )
            }
        }
    }
}

impl std::error::Error for EnumerationError {}

struct Grid {
    width: usize,
    cells: usize,
}

impl Grid {
    fn new(n_max: usize) -> Self {
        let width = 2 * n_max - 1;
        Grid {
            width,
            cells: width * n_max,
        }
    }

    fn origin(&self, n_max: usize) -> usize {
        n_max - 1
    }

    /// Blocks everything left of the origin in the base row so no shape can
    /// be generated in two different translates.
    fn initial_seen(&self, n_max: usize) -> Vec<bool> {
        let mut seen = vec![false; self.cells];
        for s in seen.iter_mut().take(n_max - 1) {
            *s = true;
        }
        seen
    }

    #[inline]
    fn push_free_neighbors(&self, queue: &mut Vec<u32>, seen: &mut [bool], u: usize) {
        let col = u % self.width;
        if col + 1 < self.width && !seen[u + 1] {
            seen[u + 1] = true;
            queue.push((u + 1) as u32);
        }
        if u + self.width < self.cells && !seen[u + self.width] {
            seen[u + self.width] = true;
            queue.push((u + self.width) as u32);
        }
        if col > 0 && !seen[u - 1] {
            seen[u - 1] = true;
            queue.push((u - 1) as u32);
        }
        if u >= self.width && !seen[u - self.width] {
            seen[u - self.width] = true;
            queue.push((u - self.width) as u32);
        }
    }

    fn cell(&self, n_max: usize, u: usize) -> Cell {
        let col = (u % self.width) as i32 - (n_max as i32 - 1);
        let row = (u / self.width) as i32;
        Cell::new(col, row)
    }
}

/// Counts every translation class of `1 ..= n_max` cells.
///
/// The result is a pure function of `n_max`; worker count only affects wall
/// time.
pub fn count_fixed(n_max: usize) -> Result<CountTable, EnumerationError> {
    count_fixed_with(n_max, &EnumerationConfig::default())
}

pub fn count_fixed_with(
    n_max: usize,
    config: &EnumerationConfig,
) -> Result<CountTable, EnumerationError> {
    if n_max == 0 || n_max > config.count_limit {
        return Err(EnumerationError::Limit {
            requested: n_max,
            limit: config.count_limit,
        });
    }
    let workers = config.workers.unwrap_or_else(available_workers).max(1);
    let counts = if workers == 1 || n_max <= 10 {
        count_serial(n_max)
    } else {
        count_parallel(n_max, workers)
    };
    Ok(CountTable::from_counts(
        TableOrigin::Enumerated,
        counts[1..].iter().map(|&c| BigUint::from(c)),
    ))
}

fn available_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn count_serial(n_max: usize) -> Vec<u128> {
    let grid = Grid::new(n_max);
    let mut seen = grid.initial_seen(n_max);
    let origin = grid.origin(n_max);
    seen[origin] = true;
    let mut queue = vec![origin as u32];
    let mut counts = vec![0u128; n_max + 1];
    count_from(&grid, n_max, &mut queue, &mut seen, 0, 0, &mut counts);
    counts
}

/// Core canonical-growth recursion. Extends the shape with each candidate in
/// `queue[first..]` in turn; candidates stay blocked for the rest of the
/// path, which is what makes generation canonical.
fn count_from(
    grid: &Grid,
    limit: usize,
    queue: &mut Vec<u32>,
    seen: &mut [bool],
    first: usize,
    size: usize,
    counts: &mut [u128],
) {
    let level_end = queue.len();
    for idx in first..level_end {
        let u = queue[idx] as usize;
        counts[size + 1] += 1;
        if size + 1 < limit {
            let save = queue.len();
            grid.push_free_neighbors(queue, seen, u);
            count_from(grid, limit, queue, seen, idx + 1, size + 1, counts);
            for &v in &queue[save..] {
                seen[v as usize] = false;
            }
            queue.truncate(save);
        }
    }
}

/// A frozen search state: continuing from it explores one independent
/// subtree of the full search, so tasks can run on any number of workers and
/// their per-size sums are merged by plain addition.
struct SearchTask {
    queue: Vec<u32>,
    seen: Vec<bool>,
    first: usize,
}

fn count_parallel(n_max: usize, workers: usize) -> Vec<u128> {
    const SPLIT_DEPTH: usize = 6;
    let grid = Grid::new(n_max);
    let mut seen = grid.initial_seen(n_max);
    let origin = grid.origin(n_max);
    seen[origin] = true;
    let mut queue = vec![origin as u32];
    let mut counts = vec![0u128; n_max + 1];
    let mut tasks = Vec::new();
    split_tasks(
        &grid,
        n_max,
        SPLIT_DEPTH,
        &mut queue,
        &mut seen,
        0,
        0,
        &mut counts,
        &mut tasks,
    );

    let next = AtomicUsize::new(0);
    let task_results: Vec<Vec<u128>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let next = &next;
                let tasks = &tasks;
                let grid = &grid;
                scope.spawn(move || {
                    let mut local = vec![0u128; n_max + 1];
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(task) = tasks.get(i) else { break };
                        let mut queue = task.queue.clone();
                        let mut seen = task.seen.clone();
                        count_from(
                            grid,
                            n_max,
                            &mut queue,
                            &mut seen,
                            task.first,
                            SPLIT_DEPTH,
                            &mut local,
                        );
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    for local in task_results {
        for (total, part) in counts.iter_mut().zip(local) {
            *total += part;
        }
    }
    counts
}

/// Same walk as [`count_from`], but freezes the state into a task at
/// `depth` instead of recursing further. Sizes up to `depth` are counted
/// here, deeper sizes by whoever runs the tasks.
#[allow(clippy::too_many_arguments)]
fn split_tasks(
    grid: &Grid,
    limit: usize,
    depth: usize,
    queue: &mut Vec<u32>,
    seen: &mut [bool],
    first: usize,
    size: usize,
    counts: &mut [u128],
    tasks: &mut Vec<SearchTask>,
) {
    let level_end = queue.len();
    for idx in first..level_end {
        let u = queue[idx] as usize;
        counts[size + 1] += 1;
        if size + 1 < limit {
            let save = queue.len();
            grid.push_free_neighbors(queue, seen, u);
            if size + 1 == depth {
                tasks.push(SearchTask {
                    queue: queue.clone(),
                    seen: seen.to_vec(),
                    first: idx + 1,
                });
            } else {
                split_tasks(
                    grid,
                    limit,
                    depth,
                    queue,
                    seen,
                    idx + 1,
                    size + 1,
                    counts,
                    tasks,
                );
            }
            for &v in &queue[save..] {
                seen[v as usize] = false;
            }
            queue.truncate(save);
        }
    }
}

/// Calls `visitor` exactly once per translation class of `n` cells and
/// returns the number of visits.
///
/// Visit order is an implementation detail; callers must not rely on it.
pub fn for_each_polyomino<F>(n: usize, visitor: F) -> Result<u64, EnumerationError>
where
    F: FnMut(&Polyomino),
{
    for_each_polyomino_with(n, &EnumerationConfig::default(), visitor)
}

pub fn for_each_polyomino_with<F>(
    n: usize,
    config: &EnumerationConfig,
    mut visitor: F,
) -> Result<u64, EnumerationError>
where
    F: FnMut(&Polyomino),
{
    if n == 0 || n > config.stream_limit {
        return Err(EnumerationError::Limit {
            requested: n,
            limit: config.stream_limit,
        });
    }
    let grid = Grid::new(n);
    let mut seen = grid.initial_seen(n);
    let origin = grid.origin(n);
    seen[origin] = true;
    let mut queue = vec![origin as u32];
    let mut path = Vec::with_capacity(n);
    Ok(stream_from(
        &grid,
        n,
        &mut queue,
        &mut seen,
        0,
        &mut path,
        &mut visitor,
    ))
}

fn stream_from<F>(
    grid: &Grid,
    n: usize,
    queue: &mut Vec<u32>,
    seen: &mut [bool],
    first: usize,
    path: &mut Vec<u32>,
    visitor: &mut F,
) -> u64
where
    F: FnMut(&Polyomino),
{
    let n_max = n;
    let level_end = queue.len();
    let mut visits = 0;
    for idx in first..level_end {
        let u = queue[idx] as usize;
        path.push(u as u32);
        if path.len() == n {
            let poly = Polyomino::from_cells(path.iter().map(|&v| grid.cell(n_max, v as usize)))
                .expect("search path is connected");
            visitor(&poly);
            visits += 1;
        } else {
            let save = queue.len();
            grid.push_free_neighbors(queue, seen, u);
            visits += stream_from(grid, n, queue, seen, idx + 1, path, visitor);
            for &v in &queue[save..] {
                seen[v as usize] = false;
            }
            queue.truncate(save);
        }
        path.pop();
    }
    visits
}

/// Counts polyominoes that are not a concatenation of two smaller ones, for
/// every size up to `n_max`. This is the direct, shape-by-shape oracle for
/// the inconstructible-count sequence.
pub fn count_inconstructible(n_max: usize) -> Result<CountTable, EnumerationError> {
    count_inconstructible_with(n_max, &EnumerationConfig::default())
}

pub fn count_inconstructible_with(
    n_max: usize,
    config: &EnumerationConfig,
) -> Result<CountTable, EnumerationError> {
    if n_max == 0 || n_max > config.stream_limit {
        return Err(EnumerationError::Limit {
            requested: n_max,
            limit: config.stream_limit,
        });
    }
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut inconstructible = 0u64;
        for_each_polyomino_with(n, config, |p| {
            if !p.is_constructible() {
                inconstructible += 1;
            }
        })?;
        counts.push(BigUint::from(inconstructible));
    }
    Ok(CountTable::from_counts(TableOrigin::Enumerated, counts))
}

const CACHE_MAGIC: &str = "# polygrowth counts fnv1a64:";

/// Writes enumerated counts with a checksum line, atomically (write to a
/// sibling temp file, then rename).
pub fn store_counts(path: &Path, table: &CountTable) -> io::Result<()> {
    let body = table.to_text();
    let header = format!("{CACHE_MAGIC}{:016x}\n", fnv1a64(body.as_bytes()));
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(header.as_bytes())?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// Reads back a cache written by [`store_counts`]. Any problem (missing
/// file, bad checksum, malformed table) yields `None` and the caller
/// recomputes.
pub fn load_cached_counts(path: &Path) -> Option<CountTable> {
    let mut text = String::new();
    std::fs::File::open(path)
        .ok()?
        .read_to_string(&mut text)
        .ok()?;
    let (header, body) = text.split_once('\n')?;
    let stored = header.strip_prefix(CACHE_MAGIC)?;
    let actual = format!("{:016x}", fnv1a64(body.as_bytes()));
    if stored != actual {
        return None;
    }
    CountTable::parse_str(TableOrigin::Enumerated, body).ok()
}

fn fnv1a64(data: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in data {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
