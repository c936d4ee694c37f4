//! Shared test oracles: a naive grow-and-dedupe enumerator, a brute-force
//! composition search, and a seeded random shape generator. These stay
//! independent of the optimized search paths they are used to check.

use std::collections::BTreeSet;

use polygrowth::geometry::{Cell, Polyomino};
use rand::Rng;

/// Counts fixed polyominoes by generating all of them: extend every shape of
/// size n-1 by every free neighbor and dedupe by canonical form.
pub fn brute_force_layers(n_max: usize) -> Vec<BTreeSet<Polyomino>> {
    let mut layers: Vec<BTreeSet<Polyomino>> = Vec::with_capacity(n_max);
    layers.push(BTreeSet::from([Polyomino::monomino()]));
    for _ in 2..=n_max {
        let prev = layers.last().expect("at least the monomino layer");
        let mut next = BTreeSet::new();
        for shape in prev {
            for cell in shape.cells() {
                for (dc, dr) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let candidate = Cell::new(cell.col + dc, cell.row + dr);
                    if shape.cells().contains(&candidate) {
                        continue;
                    }
                    let grown = shape.cells().iter().copied().chain([candidate]);
                    next.insert(Polyomino::from_cells(grown).expect("still connected"));
                }
            }
        }
        layers.push(next);
    }
    layers
}

pub fn brute_force_counts(n_max: usize) -> Vec<u64> {
    brute_force_layers(n_max)
        .iter()
        .map(|layer| layer.len() as u64)
        .collect()
}

/// All compositions of `x` and `y` found the slow way: every translate of
/// `y` inside a window wide enough to cover any touching placement.
pub fn compositions_by_window(x: &Polyomino, y: &Polyomino) -> BTreeSet<Polyomino> {
    let reach = (x.size() + y.size()) as i32 + 1;
    let mut out = BTreeSet::new();
    for dc in -reach..=reach {
        for dr in -reach..=reach {
            let translated: Vec<Cell> = y
                .cells()
                .iter()
                .map(|c| Cell::new(c.col + dc, c.row + dr))
                .collect();
            if translated.iter().any(|c| x.cells().contains(c)) {
                continue;
            }
            let union: Vec<Cell> = x.cells().iter().copied().chain(translated).collect();
            if let Ok(poly) = Polyomino::from_cells(union) {
                out.insert(poly);
            }
        }
    }
    out
}

/// Random connected shape of exactly `size` cells, grown cell by cell.
pub fn random_polyomino<R: Rng>(rng: &mut R, size: usize) -> Polyomino {
    let mut cells = vec![Cell::new(0, 0)];
    while cells.len() < size {
        let base = cells[rng.random_range(0..cells.len())];
        let (dc, dr) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.random_range(0..4)];
        let candidate = Cell::new(base.col + dc, base.row + dr);
        if !cells.contains(&candidate) {
            cells.push(candidate);
        }
    }
    Polyomino::from_cells(cells).expect("grown shapes are connected")
}
