//! Property and oracle tests for the geometric operations.

mod common;

use polygrowth::enumeration;
use polygrowth::geometry::{is_connected, Cell, Polyomino};
use proptest::prelude::*;
use rand::Rng;

/// Deterministic shape builder for proptest: each step picks an existing
/// cell and a direction; collisions are skipped, so any script yields a
/// valid connected shape.
fn shape_from_script(script: &[(u8, u8)]) -> Polyomino {
    let mut cells = vec![Cell::new(0, 0)];
    for &(pick, dir) in script {
        let base = cells[pick as usize % cells.len()];
        let (dc, dr) = [(1, 0), (-1, 0), (0, 1), (0, -1)][dir as usize % 4];
        let candidate = Cell::new(base.col + dc, base.row + dr);
        if !cells.contains(&candidate) {
            cells.push(candidate);
        }
    }
    Polyomino::from_cells(cells).expect("scripted shapes are connected")
}

fn shape(max_extra: usize) -> impl Strategy<Value = Polyomino> {
    prop::collection::vec((any::<u8>(), any::<u8>()), 0..max_extra)
        .prop_map(|script| shape_from_script(&script))
}

proptest! {
    #[test]
    fn normalize_is_idempotent_and_translation_invariant(
        p in shape(8),
        dc in -1000i32..1000,
        dr in -1000i32..1000,
    ) {
        let translated = p.cells().iter().map(|c| Cell::new(c.col + dc, c.row + dr));
        let renormalized = Polyomino::from_cells(translated).unwrap();
        prop_assert_eq!(&renormalized, &p);
        let again = Polyomino::from_cells(p.cells().iter().copied()).unwrap();
        prop_assert_eq!(&again, &p);
    }

    #[test]
    fn concat_adds_sizes_and_is_constructible(x in shape(8), y in shape(8)) {
        let joined = x.concat(&y);
        prop_assert_eq!(joined.size(), x.size() + y.size());
        prop_assert!(joined.is_constructible());
    }

    #[test]
    fn concat_is_one_of_the_compositions(x in shape(5), y in shape(5)) {
        let joined = x.concat(&y);
        prop_assert!(x.compositions(&y).contains(&joined));
    }

    #[test]
    fn compositions_are_symmetric_and_bounded(x in shape(5), y in shape(5)) {
        let xy = x.compositions(&y);
        prop_assert!(xy.len() <= 4 * x.size() * y.size());
        for p in &xy {
            prop_assert_eq!(p.size(), x.size() + y.size());
        }
        let yx = y.compositions(&x);
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn balanced_split_revalidates(p in shape(15)) {
        prop_assume!(p.size() >= 2);
        let n = p.size();
        let split = p.decompose_balanced().unwrap();
        prop_assert_eq!(split.size_a, split.part_a.len());
        prop_assert_eq!(split.part_a.len() + split.part_b.len(), n);
        prop_assert!(is_connected(split.part_a.iter().copied()));
        prop_assert!(is_connected(split.part_b.iter().copied()));
        prop_assert!(4 * split.size_a + 1 >= n);
        prop_assert!(4 * split.size_a <= 3 * n + 1);
        let mut merged: Vec<Cell> = split.part_a.iter().chain(&split.part_b).copied().collect();
        merged.sort_unstable();
        prop_assert_eq!(merged.as_slice(), p.cells());
    }
}

#[test]
fn brute_force_agrees_with_canonical_growth() {
    let brute = common::brute_force_counts(8);
    assert_eq!(brute[2], 6, "n = 3");
    assert_eq!(brute[3], 19, "n = 4");
    let fast = enumeration::count_fixed(8).unwrap();
    for (i, count) in brute.iter().enumerate() {
        assert_eq!(
            fast.get(i + 1),
            &num_bigint::BigUint::from(*count),
            "n = {}",
            i + 1
        );
    }
}

#[test]
fn compositions_of_vertical_bars_grow_linearly() {
    // two height-k bars compose into 2k distinct shapes: the stacked bar
    // plus 2k-1 side-by-side offsets
    for k in 2..=8 {
        let bar = Polyomino::from_cells((0..k).map(|r| Cell::new(0, r))).unwrap();
        let fast = bar.compositions(&bar);
        let slow = common::compositions_by_window(&bar, &bar);
        assert_eq!(fast.len(), slow.len(), "k = {k}");
        assert_eq!(fast.len(), 2 * k as usize, "k = {k}");
        assert!(fast.iter().all(|p| slow.contains(p)));
    }
}

#[test]
fn compositions_of_monominoes_match_window_oracle() {
    let m = Polyomino::monomino();
    let slow = common::compositions_by_window(&m, &m);
    let fast = m.compositions(&m);
    assert_eq!(fast.len(), 2);
    assert_eq!(slow.len(), 2);
    assert!(fast.iter().all(|p| slow.contains(p)));
}

#[test]
fn random_compositions_match_window_oracle() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x706f6c79);
    for _ in 0..40 {
        let size_x = rng.random_range(1..=4);
        let size_y = rng.random_range(1..=4);
        let x = common::random_polyomino(&mut rng, size_x);
        let y = common::random_polyomino(&mut rng, size_y);
        let fast: std::collections::BTreeSet<_> = x.compositions(&y).into_iter().collect();
        let slow = common::compositions_by_window(&x, &y);
        assert_eq!(fast, slow, "x = {x}, y = {y}");
    }
}

#[test]
fn balanced_split_holds_exhaustively_up_to_seven() {
    for n in 2..=7 {
        enumeration::for_each_polyomino(n, |p| {
            let split = p.decompose_balanced().unwrap();
            assert!(is_connected(split.part_a.iter().copied()), "{p}");
            assert!(is_connected(split.part_b.iter().copied()), "{p}");
            assert!(
                4 * split.size_a + 1 >= n && 4 * split.size_a <= 3 * n + 1,
                "{p}"
            );
        })
        .unwrap();
    }
}
