use crate::error::{Error, Result};

/// Theta coefficient `a_i` (`i` in 4, 6, 8) of an even unimodular rank-24
/// lattice, from `a_2`: the theta series lies in a two-dimensional space of
/// weight-12 modular forms, so `a_2` fixes everything.
pub fn theta_by_modular_identity(a2: i64, i: u32) -> Result<i128> {
    let a2 = a2 as i128;
    match i {
        2 => Ok(a2),
        4 => Ok(196560 - 24 * a2),
        6 => Ok(16773120 + 252 * a2),
        8 => Ok(398034000 - 1472 * a2),
        _ => Err(Error::UnsupportedThetaIndex(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leech_and_examples() {
        assert_eq!(theta_by_modular_identity(0, 4).unwrap(), 196560);
        assert_eq!(theta_by_modular_identity(600, 4).unwrap(), 182160);
        assert_eq!(theta_by_modular_identity(312, 4).unwrap(), 189072);
        assert!(theta_by_modular_identity(0, 10).is_err());
    }
}
