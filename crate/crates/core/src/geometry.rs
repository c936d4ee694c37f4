//! Lattice-cell primitives and the structural operations on polyominoes.
//!
//! Cells are ordered column-major: first by column, then by row within a
//! column. A polyomino is kept in a canonical translate whose smallest cell
//! in that order is the origin, so two cell sets denote the same fixed
//! polyomino exactly when their canonical forms are equal.
//!
//! Concatenation places the largest cell of the first operand immediately to
//! the left of the smallest cell of the second. Under the column-major order
//! this contact sits on a column boundary, which is what makes the
//! decomposition of a polyomino into irreducible factors unique (see
//! [`Polyomino::is_constructible`]).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

/// A unit cell of the square lattice. Columns grow rightward, rows upward.
///
/// The derived ordering (column, then row) is the cell order used by
/// concatenation and constructibility.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

impl Cell {
    pub const fn new(col: i32, row: i32) -> Self {
        Cell { col, row }
    }

    fn offset(self, dc: i32, dr: i32) -> Self {
        Cell::new(self.col + dc, self.row + dr)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.col, self.row)
    }
}

/// Errors from polyomino construction and decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeometryError {
    /// Empty cell set where a polyomino was required.
    Empty,
    /// Cell set is not connected under 4-adjacency.
    Disconnected,
    /// Polyomino too small for the requested decomposition.
    TooSmall,
    /// Text form could not be parsed.
    Parse(String),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "empty: a polyomino needs at least one cell"),
            Self::Disconnected => write!(
                f,
                "disconnected: cells do not form a single 4-connected component"
            ),
            Self::TooSmall => write!(f, "too small: need at least 2 cells to decompose"),
            Self::Parse(msg) => write!(f, "parse: {msg}"),
        }
    }
}

impl std::error::Error for GeometryError {}

/// True iff the cells form one 4-connected component.
///
/// The empty set counts as not connected.
pub fn is_connected<I>(cells: I) -> bool
where
    I: IntoIterator<Item = Cell>,
{
    let set: HashSet<Cell> = cells.into_iter().collect();
    connected_set(&set)
}

fn connected_set(set: &HashSet<Cell>) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen = HashSet::with_capacity(set.len());
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(c) = stack.pop() {
        for (dc, dr) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let n = c.offset(dc, dr);
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == set.len()
}

fn connected_slice(cells: &[Cell]) -> bool {
    connected_set(&cells.iter().copied().collect())
}

/// A fixed polyomino: a nonempty 4-connected cell set in canonical translate.
///
/// Canonical means the cells are sorted in cell order and the smallest cell
/// is `(0, 0)`. Equality on `Polyomino` is therefore equality of translation
/// classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Polyomino {
    cells: Vec<Cell>,
}

impl Polyomino {
    /// Normalizes an arbitrary cell set into a polyomino.
    ///
    /// Duplicates are dropped; the cells are translated so the smallest one
    /// lands on the origin. Two inputs are translates of each other iff the
    /// results compare equal.
    pub fn from_cells<I>(cells: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = Cell>,
    {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        if cells.is_empty() {
            return Err(GeometryError::Empty);
        }
        if !connected_slice(&cells) {
            return Err(GeometryError::Disconnected);
        }
        let anchor = cells[0];
        for c in &mut cells {
            *c = Cell::new(c.col - anchor.col, c.row - anchor.row);
        }
        Ok(Polyomino { cells })
    }

    /// The single-cell polyomino.
    pub fn monomino() -> Self {
        Polyomino {
            cells: vec![Cell::new(0, 0)],
        }
    }

    /// Cells in ascending cell order; the first is always `(0, 0)`.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    fn largest(&self) -> Cell {
        *self.cells.last().expect("polyomino is nonempty")
    }

    /// Concatenates two polyominoes into one of `|X| + |Y|` cells.
    ///
    /// `Y` is translated so that its smallest cell sits immediately to the
    /// right of `X`'s largest cell. Every cell of `X` precedes every cell of
    /// the translated `Y` in cell order, so the two operands never overlap
    /// and the union is connected through the new contact.
    pub fn concat(&self, other: &Polyomino) -> Polyomino {
        let contact = self.largest().offset(1, 0);
        // smallest(other) is (0,0), so translating by `contact` puts it there
        let mut cells = self.cells.clone();
        cells.extend(
            other
                .cells
                .iter()
                .map(|c| c.offset(contact.col, contact.row)),
        );
        Polyomino::from_cells(cells).expect("concatenation is connected and nonempty")
    }

    /// True iff this polyomino is a concatenation of two smaller ones.
    ///
    /// Sort the cells as `c1 < … < cn`. In any concatenation the first
    /// operand's cells are exactly a prefix of that order and the second's a
    /// suffix (all of X precedes all of the translated Y), with the contact
    /// pair `c(k+1) = c(k) + (1, 0)` on a column boundary. Conversely any
    /// index `k` whose prefix and suffix are both connected and whose
    /// neighbors satisfy the contact relation exhibits the polyomino as
    /// `concat(prefix, suffix)`. Scanning all `k` is therefore exhaustive;
    /// trying all operand pairs is unnecessary.
    pub fn is_constructible(&self) -> bool {
        let n = self.cells.len();
        for k in 1..n {
            let a = self.cells[k - 1];
            let b = self.cells[k];
            if b == a.offset(1, 0)
                && connected_slice(&self.cells[..k])
                && connected_slice(&self.cells[k..])
            {
                return true;
            }
        }
        false
    }

    /// All distinct polyominoes formed as a disjoint connected union of a
    /// translate of `self` and a translate of `other`.
    ///
    /// Candidate offsets place some cell of `other` onto one of the four
    /// neighbors of some cell of `self`; anything else cannot touch. Unions
    /// are deduplicated by canonical form, so the result has at most
    /// `4 * |self| * |other|` elements.
    pub fn compositions(&self, other: &Polyomino) -> Vec<Polyomino> {
        let own: HashSet<Cell> = self.cells.iter().copied().collect();
        let mut offsets = HashSet::new();
        for x in &self.cells {
            for y in &other.cells {
                for (dc, dr) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    offsets.insert((x.col + dc - y.col, x.row + dr - y.row));
                }
            }
        }
        let mut out = HashSet::new();
        'offsets: for (dc, dr) in offsets {
            let translated: Vec<Cell> = other.cells.iter().map(|c| c.offset(dc, dr)).collect();
            for c in &translated {
                if own.contains(c) {
                    continue 'offsets;
                }
            }
            // disjoint and touching by construction, hence connected
            let union = self.cells.iter().copied().chain(translated);
            out.insert(Polyomino::from_cells(union).expect("union is connected"));
        }
        let mut out: Vec<Polyomino> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Splits the polyomino into two connected parts of balanced sizes.
    ///
    /// Builds a depth-first spanning tree of the cell adjacency graph rooted
    /// at the smallest cell, exploring neighbors in cell order, and removes
    /// the first subtree in depth-first postorder whose size `s` satisfies
    /// `n - 1 <= 4s <= 3n + 1`. Such a subtree always exists: if every
    /// subtree were out of range, the root's at most four subtrees would
    /// contain fewer than `n - 1` vertices in total, and the minimal subtree
    /// exceeding the range would have at most three children covering too few
    /// vertices. Removing a subtree leaves the rest of the tree connected, so
    /// both parts are polyominoes.
    pub fn decompose_balanced(&self) -> Result<SplitResult, GeometryError> {
        let n = self.cells.len();
        if n < 2 {
            return Err(GeometryError::TooSmall);
        }
        let index: std::collections::HashMap<Cell, usize> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        // explore neighbors in cell order so the tree, and thus the split,
        // is deterministic
        const DIRS: [(i32, i32); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut visited = vec![false; n];
        let mut post = Vec::with_capacity(n);
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        visited[0] = true;
        while let Some(&(v, next)) = stack.last() {
            if next == 4 {
                post.push(v);
                stack.pop();
                continue;
            }
            stack.last_mut().expect("stack nonempty").1 += 1;
            let (dc, dr) = DIRS[next];
            if let Some(&u) = index.get(&self.cells[v].offset(dc, dr)) {
                if !visited[u] {
                    visited[u] = true;
                    children[v].push(u);
                    stack.push((u, 0));
                }
            }
        }
        debug_assert_eq!(post.len(), n);

        let mut subtree = vec![1usize; n];
        for &v in &post {
            for &c in &children[v] {
                subtree[v] += subtree[c];
            }
        }
        let pick = post
            .iter()
            .copied()
            .find(|&v| {
                let s = 4 * subtree[v];
                s + 1 >= n && s <= 3 * n + 1
            })
            .expect("a balanced subtree always exists");

        let mut in_a = vec![false; n];
        let mut dfs = vec![pick];
        while let Some(v) = dfs.pop() {
            in_a[v] = true;
            dfs.extend(children[v].iter().copied());
        }
        let mut part_a = Vec::with_capacity(subtree[pick]);
        let mut part_b = Vec::with_capacity(n - subtree[pick]);
        for (i, &c) in self.cells.iter().enumerate() {
            if in_a[i] {
                part_a.push(c);
            } else {
                part_b.push(c);
            }
        }
        Ok(SplitResult {
            size_a: part_a.len(),
            part_a,
            part_b,
        })
    }
}

/// Outcome of [`Polyomino::decompose_balanced`].
///
/// Both parts keep the coordinates of the input polyomino; they partition its
/// cells, are each connected, and `size_a` satisfies
/// `(n-1)/4 <= size_a <= (3n+1)/4`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitResult {
    pub part_a: Vec<Cell>,
    pub part_b: Vec<Cell>,
    pub size_a: usize,
}

impl fmt::Display for Polyomino {
    /// Text form used for CLI I/O: cells as `col,row` separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Polyomino {
    type Err = GeometryError;

    /// Parses the text form and normalizes, so any translate is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cells = Vec::new();
        for token in s.split_whitespace() {
            let (col, row) = token
                .split_once(',')
                .ok_or_else(|| GeometryError::Parse(format!("expected col,row, got {token:?}")))?;
            let col = col
                .trim()
                .parse::<i32>()
                .map_err(|e| GeometryError::Parse(format!("bad column in {token:?}: {e}")))?;
            let row = row
                .trim()
                .parse::<i32>()
                .map_err(|e| GeometryError::Parse(format!("bad row in {token:?}: {e}")))?;
            cells.push(Cell::new(col, row));
        }
        Polyomino::from_cells(cells)
    }
}
