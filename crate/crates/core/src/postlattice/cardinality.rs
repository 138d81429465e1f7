//! Cardinality of the lattice of (C1, C2)-clonoids.
//!
//! [`classify_cardinality`] decides from the list of minimal finite pairs and
//! the two countable intervals. [`table_cell`] is an independent route through
//! the row/column partition of the summary table; tests check they agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{leq, CloneId, Rank};
use crate::error::Result;

use CloneId::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinality {
    Finite,
    CountablyInfinite,
    Uncountable,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cardinality::Finite => "finite",
            Cardinality::CountablyInfinite => "countably_infinite",
            Cardinality::Uncountable => "uncountable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalityVerdict {
    pub kind: Cardinality,
    /// Table cell such as `F1` or `U9`.
    pub cell: String,
    pub justification: String,
}

/// Minimal pairs `(K1, K2)` with a finite clonoid lattice. The families of
/// finite rank are handled separately.
const FINITE_PAIRS: [(CloneId, CloneId); 13] = [
    (Ic, SM),
    (I, McU(Rank::Infinite)),
    (I, McW(Rank::Infinite)),
    (LambdaC, Lc),
    (VC, Lc),
    (SM, Lc),
    (V0, McU(Rank::Infinite)),
    (V0, McW(Rank::Infinite)),
    (Lambda1, McU(Rank::Infinite)),
    (Lambda1, McW(Rank::Infinite)),
    (Mc, LambdaC),
    (Mc, VC),
    (Sc, Ic),
];

fn finite_rank_bound(cs: &[CloneId]) -> u32 {
    cs.iter()
        .filter_map(|c| match c.rank() {
            Some(Rank::Finite(k)) => Some(k),
            _ => None,
        })
        .max()
        .unwrap_or(2)
        + 1
}

fn within(c: CloneId, lo: CloneId, hi: CloneId) -> Result<bool> {
    Ok(leq(lo, c)? && leq(c, hi)?)
}

/// Whether `c` contains some `McU(k)` or `McW(k)` with finite `k`. A clone
/// containing one contains all larger ranks, so a rank beyond every finite
/// parameter of `c` decides it.
fn contains_finite_rank_mc(c: CloneId) -> Result<bool> {
    let k = Rank::Finite(finite_rank_bound(&[c]));
    Ok(leq(McU(k), c)? || leq(McW(k), c)?)
}

/// Classify the clonoid lattice of the pair `(c1, c2)`.
pub fn classify_cardinality(c1: CloneId, c2: CloneId) -> Result<CardinalityVerdict> {
    c1.validate()?;
    c2.validate()?;
    let cell = table_cell(c1, c2)?.code();
    if contains_finite_rank_mc(c2)? {
        return Ok(CardinalityVerdict {
            kind: Cardinality::Finite,
            cell,
            justification: format!(
                "finite: {c2} contains a monotone idempotent 1- or 0-separating clone of finite rank"
            ),
        });
    }
    for (k1, k2) in FINITE_PAIRS {
        if leq(k1, c1)? && leq(k2, c2)? {
            return Ok(CardinalityVerdict {
                kind: Cardinality::Finite,
                cell,
                justification: format!("finite: {c1} contains {k1} and {c2} contains {k2}"),
            });
        }
    }
    if within(c1, Ic, L)? && within(c2, Lc, L)? {
        return Ok(CardinalityVerdict {
            kind: Cardinality::CountablyInfinite,
            cell,
            justification: format!("countably infinite: {c1} in [Ic, L] and {c2} in [Lc, L]"),
        });
    }
    if within(c1, Mc, M)? && within(c2, Ic, Omega1)? {
        return Ok(CardinalityVerdict {
            kind: Cardinality::CountablyInfinite,
            cell,
            justification: format!("countably infinite: {c1} in [Mc, M] and {c2} in [Ic, Omega1]"),
        });
    }
    Ok(CardinalityVerdict {
        kind: Cardinality::Uncountable,
        cell,
        justification: format!(
            "uncountable: ({c1}, {c2}) contains no finite pair and lies in no countable interval"
        ),
    })
}

/// A cell of the summary table: a row of source clones, a column of target
/// clones, the verdict letter and the justification number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub row: usize,
    pub column: usize,
    pub kind: Cardinality,
    pub note: u32,
}

impl TableCell {
    pub fn code(&self) -> String {
        let letter = match self.kind {
            Cardinality::Finite => 'F',
            Cardinality::CountablyInfinite => 'C',
            Cardinality::Uncountable => 'U',
        };
        format!("{letter}{}", self.note)
    }
}

/// Rows partition the source clones.
pub(crate) fn table_row(c: CloneId) -> Result<Vec<usize>> {
    let u2 = U(Rank::Finite(2));
    let w2 = W(Rank::Finite(2));
    let rows = [
        leq(c, L0)? || leq(c, L1)? || leq(c, LS)?,
        within(c, I, L)?,
        (leq(LambdaC, c)? || leq(VC, c)? || leq(SM, c)?) && (leq(c, u2)? || leq(c, w2)?),
        within(c, Lambda1, Lambda)? || within(c, V0, V)?,
        within(c, Mc, M)?,
        leq(Sc, c)?,
    ];
    Ok(rows.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

/// Columns partition the target clones.
pub(crate) fn table_column(c: CloneId) -> Result<Vec<usize>> {
    let columns = [
        leq(c, Omega1)?,
        within(c, VC, V)? || within(c, LambdaC, Lambda)?,
        within(c, McU(Rank::Infinite), U(Rank::Infinite))?
            || within(c, McW(Rank::Infinite), W(Rank::Infinite))?,
        within(c, Lc, L)?,
        leq(SM, c)? || contains_finite_rank_mc(c)?,
    ];
    Ok(columns.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

const CELLS: [[(Cardinality, u32); 5]; 6] = {
    use Cardinality::*;
    [
        [(Uncountable, 8), (Uncountable, 9), (Uncountable, 9), (CountablyInfinite, 6), (Finite, 1)],
        [(Uncountable, 8), (Uncountable, 9), (Finite, 5), (CountablyInfinite, 6), (Finite, 1)],
        [(Uncountable, 12), (Uncountable, 11), (Uncountable, 10), (Finite, 3), (Finite, 1)],
        [(Uncountable, 8), (Uncountable, 8), (Finite, 5), (Finite, 3), (Finite, 1)],
        [(CountablyInfinite, 7), (Finite, 4), (Finite, 4), (Finite, 3), (Finite, 1)],
        [(Finite, 2), (Finite, 2), (Finite, 2), (Finite, 2), (Finite, 1)],
    ]
};

/// Look the pair up in the summary table.
pub fn table_cell(c1: CloneId, c2: CloneId) -> Result<TableCell> {
    let rows = table_row(c1)?;
    let columns = table_column(c2)?;
    debug_assert_eq!(rows.len(), 1, "rows must partition the clones ({c1})");
    debug_assert_eq!(columns.len(), 1, "columns must partition the clones ({c2})");
    let (row, column) = (rows[0], columns[0]);
    let (kind, note) = CELLS[row][column];
    Ok(TableCell { row, column, kind, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::postlattice::dual_clone;

    fn kind(a: CloneId, b: CloneId) -> Cardinality {
        classify_cardinality(a, b).unwrap().kind
    }

    #[test]
    fn spot_cells() {
        use Cardinality::*;
        assert_eq!(kind(Ic, SM), Finite);
        assert_eq!(kind(Ic, McU(Rank::Finite(2))), Finite);
        assert_eq!(kind(Sc, Ic), Finite);
        assert_eq!(kind(Mc, LambdaC), Finite);
        assert_eq!(kind(I, McU(Rank::Infinite)), Finite);
        assert_eq!(kind(Lc, L), CountablyInfinite);
        assert_eq!(kind(Mc, Omega1), CountablyInfinite);
        assert_eq!(kind(L, Lambda), Uncountable);
        assert_eq!(kind(LS, U(Rank::Infinite)), Uncountable);
        assert_eq!(kind(U(Rank::Finite(2)), V), Uncountable);
        assert_eq!(kind(U(Rank::Finite(2)), Omega1), Uncountable);
        assert_eq!(kind(SM, Lc), Finite);
        assert_eq!(kind(Ic, McU(Rank::Finite(1000))), Finite);
        assert_eq!(kind(Ic, McU(Rank::Infinite)), Uncountable);
    }

    #[test]
    fn rows_and_columns_partition() {
        for c in CloneId::instantiated(6) {
            assert_eq!(table_row(c).unwrap().len(), 1, "{c}");
            assert_eq!(table_column(c).unwrap().len(), 1, "{c}");
        }
    }

    #[test]
    fn classifier_agrees_with_table_and_duality() {
        let all = CloneId::instantiated(6);
        for &a in &all {
            for &b in &all {
                let v = classify_cardinality(a, b).unwrap();
                let cell = table_cell(a, b).unwrap();
                assert_eq!(v.kind, cell.kind, "{a} {b}");
                assert_eq!(v.cell, cell.code());
                assert_eq!(v.kind, kind(dual_clone(a), dual_clone(b)), "{a} {b}");
            }
        }
    }
}
