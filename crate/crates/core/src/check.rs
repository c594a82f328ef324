//! Outcome of an identity check.

use crate::iwasawa::IwasawaPoly;
use crate::ring::CoeffRing;

/// Whether an identity held, and where it first failed.
///
/// The witness is a group-ring index for series comparisons and a
/// coefficient index for cyclotomic ring comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Check {
    pub fn pass() -> Self {
        Check { holds: true, witness: None }
    }

    pub fn from_bool(holds: bool) -> Self {
        Check { holds, witness: None }
    }

    pub fn fail_at(index: usize) -> Self {
        Check { holds: false, witness: Some(index) }
    }

    /// Compare two slices coefficientwise.
    pub fn slices<T: PartialEq>(a: &[T], b: &[T]) -> Self {
        if a.len() != b.len() {
            return Check::fail_at(a.len().min(b.len()));
        }
        match a.iter().zip(b).position(|(x, y)| x != y) {
            Some(i) => Check::fail_at(i),
            None => Check::pass(),
        }
    }

    pub fn series<R: CoeffRing>(a: &IwasawaPoly<R>, b: &IwasawaPoly<R>) -> Self {
        if a.level() != b.level() || a.ring() != b.ring() {
            return Check::from_bool(false);
        }
        Check::slices(a.group_ring(), b.group_ring())
    }

    pub fn and(self, other: Check) -> Check {
        if self.holds {
            other
        } else {
            self
        }
    }
}
