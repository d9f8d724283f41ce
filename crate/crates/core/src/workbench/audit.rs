use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{format_rational, int, rational_string, Rational};
use crate::grading::{total_bounds, TotalBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("offset must be 4, 5 or 6, got {0}")]
    Offset(usize),
    #[error("n-range must lie within 4..8, got {0}..{1}")]
    Range(usize, usize),
}

/// The three right-hand sides bounding the total dimension from above.
pub fn audit_bounds(n: usize, k: usize, s: usize, dim_g_omega: usize) -> TotalBounds {
    total_bounds(n, k, s, dim_g_omega)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admitted {
    pub k: usize,
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Excluded {
    pub k: usize,
    pub n: usize,
    /// Value of `3k²/2 − (2n+5/2)k + n² + 4n + 1`, strictly below `n² − offset`.
    #[serde(with = "rational_string")]
    pub bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseTable {
    pub offset: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub admitted: Vec<Admitted>,
    pub excluded: Vec<Excluded>,
    /// Admitted pairs grouped: all of `k = 2` as one family, other pairs singly.
    pub families: Vec<String>,
}

impl CaseTable {
    pub fn is_admitted(&self, k: usize, n: usize) -> bool {
        self.admitted.iter().any(|a| a.k == k && a.n == n)
    }
}

/// Which `(k, n)` with `2 ≤ k ≤ n` survive the universal bound for
/// `d = n² − offset`, over `n` in the inclusive range.
pub fn case_exclusions(offset: usize, n_range: RangeInclusive<usize>) -> Result<CaseTable, AuditError> {
    if !(4..=6).contains(&offset) {
        return Err(AuditError::Offset(offset));
    }
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo < 4 || hi > 8 || lo > hi {
        return Err(AuditError::Range(lo, hi));
    }
    let mut admitted = Vec::new();
    let mut excluded = Vec::new();
    for n in lo..=hi {
        let target = int((n * n - offset) as i64);
        for k in 2..=n {
            let bound = total_bounds(n, k, 0, 0).universal;
            if bound < target {
                excluded.push(Excluded { k, n, bound });
            } else {
                let reason = format!(
                    "3k^2/2-(2n+5/2)k+n^2+4n+1 = {} >= {} = n^2-{offset}",
                    format_rational(&bound),
                    format_rational(&target)
                );
                admitted.push(Admitted { k, n, reason });
            }
        }
    }
    let mut families = Vec::new();
    if admitted.iter().any(|a| a.k == 2) {
        families.push(format!("k=2, {lo}<=n<={hi}"));
    }
    families.extend(admitted.iter().filter(|a| a.k != 2).map(|a| format!("k={}, n={}", a.k, a.n)));
    Ok(CaseTable { offset, n_min: lo, n_max: hi, admitted, excluded, families })
}

/// Parses `a..b` or `a..=b`, both inclusive.
pub fn parse_n_range(s: &str) -> Option<RangeInclusive<usize>> {
    let (a, b) = s.split_once("..")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Some(a.trim().parse().ok()?..=b.trim().parse().ok()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_examples() {
        assert_eq!(audit_bounds(5, 3, 4, 4).with_s, int(22));
        assert_eq!(audit_bounds(4, 2, 2, 2).with_s, int(16));
        assert_eq!(audit_bounds(6, 3, 0, 0).universal, int(31));
        assert_eq!(audit_bounds(5, 2, 0, 0).universal, int(27));
    }

    #[test]
    fn offset_four() {
        let t = case_exclusions(4, 4..=8).unwrap();
        let rest: Vec<_> = t.admitted.iter().filter(|a| a.k != 2).map(|a| (a.k, a.n)).collect();
        assert_eq!(rest, vec![(3, 4), (4, 4), (3, 5), (5, 5)]);
        assert_eq!(t.families.len(), 5);
        assert_eq!(t.admitted.len() + t.excluded.len(), (4..=8).map(|n| n - 1).sum::<usize>());
    }

    #[test]
    fn offsets_five_six() {
        for off in [5, 6] {
            let t = case_exclusions(off, 4..=8).unwrap();
            assert_eq!(t.families.len(), 7);
            assert!(t.is_admitted(3, 6) && t.is_admitted(4, 5));
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("4..8"), Some(4..=8));
        assert_eq!(parse_n_range("4..=6"), Some(4..=6));
        assert_eq!(parse_n_range("x"), None);
        assert!(case_exclusions(3, 4..=8).is_err());
        assert!(case_exclusions(4, 3..=8).is_err());
    }
}
