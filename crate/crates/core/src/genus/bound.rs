use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    F2,
    F4,
    F8,
    Delta,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::F2 => "f2",
            Branch::F4 => "2*f4-1",
            Branch::F8 => "f8",
            Branch::Delta => "2*delta-1",
        })
    }
}

/// Lower bound on `g_4` combined from invariant lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G4Bound {
    pub value: i64,
    pub branch: Branch,
    /// Every branch that produced a value.
    pub candidates: Vec<(Branch, i64)>,
    pub assumption: &'static str,
}

pub const G4_ASSUMPTION: &str = "g4 <= 128 assumed";

/// `max(f2, 2 f4 - 1, 2 f8 - 2 (f8 even) or 2 f8 - 1 (f8 odd), 2 delta - 1)`.
///
/// Each branch is monotone, so lower bounds on the inputs give a lower
/// bound on `g_4`. Ties go to the earliest branch in this order.
pub fn g4_lower_bound(f2: Option<i64>, f4: Option<i64>, f8: Option<i64>, delta: Option<i64>) -> Result<G4Bound> {
    let mut c = Vec::new();
    if let Some(v) = f2 {
        c.push((Branch::F2, v));
    }
    if let Some(v) = f4 {
        c.push((Branch::F4, 2 * v - 1));
    }
    if let Some(v) = f8 {
        c.push((Branch::F8, if v % 2 == 0 { 2 * v - 2 } else { 2 * v - 1 }));
    }
    if let Some(v) = delta {
        c.push((Branch::Delta, 2 * v - 1));
    }
    let &(branch, value) = c
        .iter()
        .fold(None, |best: Option<&(Branch, i64)>, x| match best {
            Some(b) if b.1 >= x.1 => Some(b),
            _ => Some(x),
        })
        .ok_or(Error::NoInputs)?;
    Ok(G4Bound {
        value,
        branch,
        candidates: c,
        assumption: G4_ASSUMPTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches() {
        let b = g4_lower_bound(None, None, Some(4), None).unwrap();
        assert_eq!((b.value, b.branch), (6, Branch::F8));
        assert_eq!(g4_lower_bound(Some(5), None, None, None).unwrap().value, 5);
        assert_eq!(g4_lower_bound(None, None, None, Some(3)).unwrap().value, 5);
        assert_eq!(g4_lower_bound(None, None, Some(3), None).unwrap().value, 5);
        assert_eq!(g4_lower_bound(None, Some(3), None, None).unwrap().value, 5);
        assert_eq!(g4_lower_bound(None, None, None, None), Err(Error::NoInputs));
    }
}

/// Upper bound `g4 <= g(Sigma)` from a surface in the class `v`, by the
/// adjunction formula.
pub fn adjunction_genus_bound(class: &crate::lorentz::LorentzClass) -> Result<i64> {
    crate::lorentz::adjunction_genus(class)
}
