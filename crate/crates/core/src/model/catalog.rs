//! Built-in spaces: the full flag manifolds of G2, SO(5), SO(6), Sp(3) and
//! SU(n) for 3 ≤ n ≤ 12. Every summand is 2-dimensional.

use num_rational::Rational64;

use super::{ModelError, SpaceModel};
use crate::flag_su;

/// Identifiers accepted by [`catalog_space`], excluding the `f<n>` range.
pub const NAMED_SPACES: [&str; 4] = ["g2-t2", "so5-t2", "so6-t3", "sp3-t3"];

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Looks up a built-in space. Full flags of SU(n) are `f3` … `f12`, also
/// written `f(5)`.
pub fn catalog_space(id: &str) -> Result<SpaceModel, ModelError> {
    let quarter = q(1, 4);
    match id {
        "g2-t2" => SpaceModel::new(
            id,
            vec![2; 6],
            &[
                (1, 2, 3, quarter),
                (2, 4, 5, quarter),
                (3, 4, 6, quarter),
                (1, 5, 6, quarter),
                (2, 3, 4, q(1, 3)),
            ],
        ),
        "so5-t2" => SpaceModel::new(id, vec![2; 4], &[(1, 3, 4, q(1, 3)), (2, 3, 4, q(1, 3))]),
        "so6-t3" => SpaceModel::new(
            id,
            vec![2; 6],
            &[
                (1, 2, 3, quarter),
                (1, 5, 6, quarter),
                (2, 4, 6, quarter),
                (3, 4, 5, quarter),
            ],
        ),
        "sp3-t3" => SpaceModel::new(
            id,
            vec![2; 9],
            &[
                (1, 2, 4, quarter),
                (2, 4, 5, quarter),
                (1, 6, 7, quarter),
                (3, 5, 8, quarter),
                (3, 8, 9, quarter),
                (6, 7, 9, quarter),
                (2, 3, 6, q(1, 8)),
                (3, 4, 7, q(1, 8)),
                (4, 6, 8, q(1, 8)),
                (2, 7, 8, q(1, 8)),
            ],
        ),
        _ => match parse_flag_id(id) {
            Some(n) => flag_su::build_fn(n).map_err(|_| ModelError::UnknownSpace(id.to_string())),
            None => Err(ModelError::UnknownSpace(id.to_string())),
        },
    }
}

/// All catalog identifiers in display order.
pub fn catalog_ids() -> Vec<String> {
    NAMED_SPACES
        .iter()
        .map(|s| s.to_string())
        .chain((3..=flag_su::MAX_N).map(|n| format!("f{n}")))
        .collect()
}

fn parse_flag_id(id: &str) -> Option<usize> {
    let digits = id.strip_prefix('f')?;
    let digits = digits
        .strip_prefix('(')
        .and_then(|d| d.strip_suffix(')'))
        .unwrap_or(digits);
    digits.parse().ok()
}
