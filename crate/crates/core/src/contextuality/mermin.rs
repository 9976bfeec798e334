//! The Mermin 3×3 square of two-qubit Pauli products.

use crate::qmath::{on_qubits, sigma_x, sigma_y, sigma_z, ComplexMatrix, Observable};

pub const ROW_LABELS: [&str; 3] = ["H1", "H2", "H3"];
pub const COL_LABELS: [&str; 3] = ["V1", "V2", "V3"];

/// Operator products along each line: rows give `+I`, columns `+I, +I, -I`.
pub const ROW_SIGNS: [i8; 3] = [1, 1, 1];
pub const COL_SIGNS: [i8; 3] = [1, 1, -1];

#[derive(Debug, Clone, PartialEq)]
pub struct MerminSquare {
    /// `cells[row][col]`, each a 4×4 observable.
    pub cells: [[Observable; 3]; 3],
    /// Human-readable names, e.g. `"σx(1)σy(2)"`.
    pub names: [[&'static str; 3]; 3],
}

/// ```text
///        V1          V2          V3
/// H1:  σx(1)       σx(2)       σx(1)σx(2)
/// H2:  σy(2)       σy(1)       σy(1)σy(2)
/// H3:  σx(1)σy(2)  σx(2)σy(1)  σz(1)σz(2)
/// ```
pub fn mermin_square() -> MerminSquare {
    let (x, y, z) = (sigma_x(), sigma_y(), sigma_z());
    let two = |a: Option<&Observable>, b: Option<&Observable>| on_qubits(&[a, b]);
    MerminSquare {
        cells: [
            [two(Some(&x), None), two(None, Some(&x)), two(Some(&x), Some(&x))],
            [two(None, Some(&y)), two(Some(&y), None), two(Some(&y), Some(&y))],
            [
                two(Some(&x), Some(&y)),
                two(Some(&y), Some(&x)),
                two(Some(&z), Some(&z)),
            ],
        ],
        names: [
            ["σx(1)", "σx(2)", "σx(1)σx(2)"],
            ["σy(2)", "σy(1)", "σy(1)σy(2)"],
            ["σx(1)σy(2)", "σx(2)σy(1)", "σz(1)σz(2)"],
        ],
    }
}

/// Deviations (max entrywise modulus) of each operator identity.
#[derive(Debug, Clone, PartialEq)]
pub struct MerminReport {
    /// `|A² - I|` per cell.
    pub square_dev: [[f64; 3]; 3],
    /// Largest commutator entry within each row / column.
    pub row_commutator_dev: [f64; 3],
    pub col_commutator_dev: [f64; 3],
    /// `|ABC - s·I|` with `s` from [`ROW_SIGNS`] / [`COL_SIGNS`].
    pub row_product_dev: [f64; 3],
    pub col_product_dev: [f64; 3],
    /// Same products taken in reverse order.
    pub row_product_rev_dev: [f64; 3],
    pub col_product_rev_dev: [f64; 3],
}

impl MerminReport {
    pub fn max_deviation(&self) -> f64 {
        self.square_dev
            .iter()
            .flatten()
            .chain(&self.row_commutator_dev)
            .chain(&self.col_commutator_dev)
            .chain(&self.row_product_dev)
            .chain(&self.col_product_dev)
            .chain(&self.row_product_rev_dev)
            .chain(&self.col_product_rev_dev)
            .fold(0.0, |a, &b| a.max(b))
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

fn line_product(ops: [&Observable; 3]) -> ComplexMatrix {
    &(ops[0].matrix() * ops[1].matrix()) * ops[2].matrix()
}

fn reversed(l: [&Observable; 3]) -> [&Observable; 3] {
    [l[2], l[1], l[0]]
}

fn commutator_dev(ops: [&Observable; 3]) -> f64 {
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| ops[i].matrix().commutator(ops[j].matrix()).expect("4x4").max_abs())
        .fold(0.0, f64::max)
}

/// Computes every operator identity of the square.
pub fn mermin_verify(square: &MerminSquare) -> MerminReport {
    let id = ComplexMatrix::identity(4);
    let c = &square.cells;
    let row = |r: usize| [&c[r][0], &c[r][1], &c[r][2]];
    let col = |k: usize| [&c[0][k], &c[1][k], &c[2][k]];
    let signed = |s: i8| id.scale_real(f64::from(s));
    MerminReport {
        square_dev: std::array::from_fn(|r| {
            std::array::from_fn(|k| (c[r][k].matrix() * c[r][k].matrix()).max_abs_diff(&id))
        }),
        row_commutator_dev: std::array::from_fn(|r| commutator_dev(row(r))),
        col_commutator_dev: std::array::from_fn(|k| commutator_dev(col(k))),
        row_product_dev: std::array::from_fn(|r| line_product(row(r)).max_abs_diff(&signed(ROW_SIGNS[r]))),
        col_product_dev: std::array::from_fn(|k| line_product(col(k)).max_abs_diff(&signed(COL_SIGNS[k]))),
        row_product_rev_dev: std::array::from_fn(|r| {
            line_product(reversed(row(r))).max_abs_diff(&signed(ROW_SIGNS[r]))
        }),
        col_product_rev_dev: std::array::from_fn(|k| {
            line_product(reversed(col(k))).max_abs_diff(&signed(COL_SIGNS[k]))
        }),
    }
}

/// Outcome of an exhaustive search over ±1 value assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentSearch {
    pub checked: u64,
    pub satisfying: u64,
    /// First satisfying assignment found, if any.
    pub example: Option<Vec<i8>>,
    /// Product of the required signs of the first constraint group (rows).
    pub row_parity: i8,
    /// Product of the required signs of the second constraint group (columns).
    pub column_parity: i8,
    /// Each group multiplies every value exactly once, so differing parities
    /// rule out any assignment.
    pub parity_contradiction: bool,
}

/// Checks a row-major `v ∈ {±1}⁹` against the line constraints.
pub fn mermin_assignment_ok(v: &[i8], row_signs: [i8; 3], col_signs: [i8; 3]) -> bool {
    v.len() == 9
        && v.iter().all(|&x| x == 1 || x == -1)
        && (0..3).all(|r| v[3 * r] * v[3 * r + 1] * v[3 * r + 2] == row_signs[r])
        && (0..3).all(|k| v[k] * v[3 + k] * v[6 + k] == col_signs[k])
}

/// Enumerates all 512 noncontextual assignments `v ∈ {±1}⁹` against the
/// given line signs (the physical square uses [`ROW_SIGNS`], [`COL_SIGNS`]).
pub fn mermin_assignment_search_with(row_signs: [i8; 3], col_signs: [i8; 3]) -> AssignmentSearch {
    let mut satisfying = 0;
    let mut example = None;
    for mask in 0u32..512 {
        let v: Vec<i8> = (0..9).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if mermin_assignment_ok(&v, row_signs, col_signs) {
            satisfying += 1;
            example.get_or_insert(v);
        }
    }
    let row_parity = row_signs.iter().product();
    let column_parity = col_signs.iter().product();
    AssignmentSearch {
        checked: 512,
        satisfying,
        example,
        row_parity,
        column_parity,
        parity_contradiction: row_parity != column_parity,
    }
}

pub fn mermin_assignment_search() -> AssignmentSearch {
    mermin_assignment_search_with(ROW_SIGNS, COL_SIGNS)
}
