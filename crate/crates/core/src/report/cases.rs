//! Metrics and printed cells of the reference stability tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::flag_su::{self, FlagError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    G2,
    So5,
    So6,
    Sp3,
    F3,
    F4,
    F5,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::G2,
        Case::So5,
        Case::So6,
        Case::Sp3,
        Case::F3,
        Case::F4,
        Case::F5,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Case::G2 => "g2",
            Case::So5 => "so5",
            Case::So6 => "so6",
            Case::Sp3 => "sp3",
            Case::F3 => "f3",
            Case::F4 => "f4",
            Case::F5 => "f5",
        }
    }

    pub fn space_id(self) -> &'static str {
        match self {
            Case::G2 => "g2-t2",
            Case::So5 => "so5-t2",
            Case::So6 => "so6-t3",
            Case::Sp3 => "sp3-t3",
            Case::F3 => "f3",
            Case::F4 => "f4",
            Case::F5 => "f5",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Case::G2 => "G-stability of Einstein metrics on G2/T^2",
            Case::So5 => "G-stability of Einstein metrics on SO(5)/T^2",
            Case::So6 => "G-stability of Einstein metrics on SO(6)/T^3",
            Case::Sp3 => "G-stability of Einstein metrics on Sp(3)/T^3",
            Case::F3 => "G-stability of Einstein metrics on SU(3)/T",
            Case::F4 => "G-stability of Einstein metrics on SU(4)/T",
            Case::F5 => "Einstein metrics on SU(5)/T",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Case::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown case `{s}` (g2, so5, so6, sp3, f3, f4, f5)"))
    }
}

/// A value as printed in a reference table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedCell {
    pub text: String,
    pub value: f64,
    /// Largest absolute deviation counted as agreement.
    pub tol: f64,
}

/// Cells printed for one row; absent columns are `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PrintedRow {
    pub two_rho: Option<PrintedCell>,
    pub sc_n: Option<PrintedCell>,
    pub coindex: Option<usize>,
    pub lambda_p: Option<PrintedCell>,
    pub lambda_p_max: Option<PrintedCell>,
}

/// Agreement window for cells printed to about four decimals.
pub const DECIMAL_TOL: f64 = 5e-3;
/// Agreement window for closed-form cells.
pub const EXACT_TOL: f64 = 1e-10;

fn approx(text: &str) -> Option<PrintedCell> {
    Some(PrintedCell {
        text: text.to_string(),
        value: text.parse().expect("decimal literal"),
        tol: DECIMAL_TOL,
    })
}

fn exact(text: &str, value: f64) -> Option<PrintedCell> {
    Some(PrintedCell {
        text: text.to_string(),
        value,
        tol: EXACT_TOL,
    })
}

fn row(
    two_rho: Option<PrintedCell>,
    sc_n: Option<PrintedCell>,
    coindex: usize,
    lambda_p: Option<PrintedCell>,
    lambda_p_max: Option<PrintedCell>,
) -> PrintedRow {
    PrintedRow {
        two_rho,
        sc_n,
        coindex: Some(coindex),
        lambda_p,
        lambda_p_max,
    }
}

/// One table row before evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSpec {
    pub name: String,
    pub coords: Vec<f64>,
    pub printed: PrintedRow,
}

fn spec(name: &str, coords: Vec<f64>, printed: PrintedRow) -> RowSpec {
    RowSpec {
        name: name.to_string(),
        coords,
        printed,
    }
}

fn ints(v: &[i64]) -> Vec<f64> {
    v.iter().map(|&c| c as f64).collect()
}

pub fn case_rows(case: Case) -> Result<Vec<RowSpec>, FlagError> {
    let rows = match case {
        Case::G2 => vec![
            spec(
                "gK",
                ints(&[3, 1, 4, 5, 6, 9]),
                row(
                    exact("1/6", 1.0 / 6.0),
                    approx("3.8467"),
                    2,
                    exact("0", 0.0),
                    approx("1.028"),
                ),
            ),
            spec(
                "g1",
                vec![1.0, 0.2762, 1.0347, 1.0347, 1.0, 1.7895],
                row(
                    approx("0.7120"),
                    approx("3.8423"),
                    3,
                    approx("0.2394"),
                    approx("3.5930"),
                ),
            ),
            spec(
                "g2",
                vec![1.0, 0.2173, 1.0234, 1.0234, 1.0, 0.7440],
                row(
                    approx("0.8538"),
                    approx("3.8106"),
                    2,
                    approx("0.1727"),
                    approx("4.6410"),
                ),
            ),
        ],
        Case::So5 => {
            let s6 = 6f64.sqrt();
            let a = (24.0 - 4.0 * s6) / 15.0;
            vec![
                spec(
                    "gK",
                    ints(&[2, 4, 1, 3]),
                    row(
                        exact("1/6", 1.0 / 6.0),
                        approx("2.9511"),
                        1,
                        exact("0", 0.0),
                        approx("1.0654"),
                    ),
                ),
                spec(
                    "g1",
                    vec![a, a, 1.0, (7.0 - 2.0 * s6) / 5.0],
                    row(
                        approx("0.4694"),
                        approx("2.9420"),
                        2,
                        approx("0.3755"),
                        approx("2.3470"),
                    ),
                ),
            ]
        }
        Case::So6 => vec![
            spec(
                "gS",
                vec![1.0; 6],
                row(
                    exact("3/4", 0.75),
                    exact("9/4", 2.25),
                    3,
                    exact("1/2", 0.5),
                    exact("3/4", 0.75),
                ),
            ),
            spec(
                "g1",
                ints(&[5, 5, 5, 3, 3, 3]),
                row(
                    exact("7/36", 7.0 / 36.0),
                    exact("(11/20)√15", 11.0 / 20.0 * 15f64.sqrt()),
                    2,
                    exact("53/360 − √1201/360", (53.0 - 1201f64.sqrt()) / 360.0),
                    exact("5/18", 5.0 / 18.0),
                ),
            ),
        ],
        Case::Sp3 => vec![
            spec(
                "gK",
                vec![1.0, 0.25, 0.5, 0.75, 0.5, 0.25, 1.25, 1.0, 1.5],
                row(
                    exact("1/2", 0.5),
                    approx("5.8885"),
                    2,
                    exact("0", 0.0),
                    approx("1.028"),
                ),
            ),
            spec(
                "g1",
                vec![
                    1.0, 0.4311, 1.0381, 1.0381, 1.0, 1.0381, 0.4311, 0.4312, 1.0,
                ],
                row(
                    approx("0.8528"),
                    approx("5.8711"),
                    3,
                    approx("0.3790"),
                    approx("2.2931"),
                ),
            ),
            spec(
                "g2",
                vec![
                    1.0, 0.3430, 0.9326, 0.9326, 0.8101, 1.0567, 0.5477, 0.3430, 1.0,
                ],
                row(
                    approx("0.9149"),
                    approx("5.8759"),
                    2,
                    approx("0.3552"),
                    approx("2.8374"),
                ),
            ),
            spec(
                "g3",
                vec![
                    1.0, 0.3149, 0.8524, 0.9092, 0.7740, 0.9896, 0.5185, 0.3298, 0.8708,
                ],
                row(
                    approx("0.9719"),
                    approx("5.8759"),
                    3,
                    approx("0.3420"),
                    approx("3.0463"),
                ),
            ),
        ],
        Case::F3 => vec![
            spec(
                "gS",
                vec![1.0; 3],
                row(
                    exact("5/6", 5.0 / 6.0),
                    exact("5/2", 2.5),
                    2,
                    exact("1/2", 0.5),
                    exact("1/2", 0.5),
                ),
            ),
            spec(
                "gA",
                ints(&[1, 1, 2]),
                row(
                    exact("2/3", 2.0 / 3.0),
                    approx("2.5198"),
                    1,
                    exact("0", 0.0),
                    exact("1", 1.0),
                ),
            ),
        ],
        Case::F4 => vec![
            spec(
                "gS",
                vec![1.0; 6],
                row(
                    exact("3/4", 0.75),
                    exact("4.5", 4.5),
                    3,
                    exact("1/2", 0.5),
                    exact("3/4", 0.75),
                ),
            ),
            spec(
                "gA",
                ints(&[3, 3, 3, 5, 5, 5]),
                row(
                    exact("7/36", 7.0 / 36.0),
                    approx("4.5184"),
                    2,
                    approx("0.0509"),
                    approx("0.2778"),
                ),
            ),
            spec(
                "gK",
                ints(&[1, 2, 3, 1, 2, 1]),
                row(
                    exact("1/2", 0.5),
                    approx("4.5392"),
                    2,
                    exact("0", 0.0),
                    approx("1.1371"),
                ),
            ),
            spec(
                "g1",
                vec![1.0, 1.9436, 1.9436, 1.1867, 1.1867, 1.2815],
                row(
                    approx("0.5462"),
                    approx("4.5136"),
                    3,
                    approx("0.0875"),
                    approx("0.8731"),
                ),
            ),
        ],
        Case::F5 => {
            let printed = [
                row(exact("7/10", 0.7), exact("7", 7.0), 4, None, None),
                row(exact("11/80", 11.0 / 80.0), approx("7.0148"), 3, None, None),
                row(exact("2/5", 0.4), approx("7.0469"), 3, None, None),
                row(exact("1/10", 0.1), approx("7.0041"), 6, None, None),
                row(exact("1/10", 0.1), approx("6.9985"), 5, None, None),
                row(exact("1/10", 0.1), approx("6.9988"), 5, None, None),
                row(exact("1", 1.0), approx("7.0044"), 4, None, None),
            ];
            flag_su::f5_seven_metrics()?
                .into_iter()
                .zip(printed)
                .map(|((name, metric), printed)| spec(&name, metric.into_coords(), printed))
                .collect()
        }
    };
    Ok(rows)
}
