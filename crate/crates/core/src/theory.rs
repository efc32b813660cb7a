//! Closed-form connectivity values for `FDSC_n`, used as expectations by
//! the CLI and the acceptance suite.

use crate::cuts::Mode;

/// Largest star size `m` for which a closed form is known: `d + 1` for
/// structure cuts, `d + 2` for substructure cuts.
pub fn max_pattern(d: u32, mode: Mode) -> u32 {
    match mode {
        Mode::Structure => d + 1,
        Mode::Substructure => d + 2,
    }
}

/// Predicted `κ(FDSC_n; K_{1,m})` (or `κ^s`), with `m = 0` meaning `K_1`.
/// `None` outside the covered range.
pub fn predicted_kappa(d: u32, m: u32, mode: Mode) -> Option<u32> {
    if d == 0 {
        return None;
    }
    match m {
        0 => Some(d + 2),
        1 if d <= 2 => Some(2),
        1 => Some(d + 1),
        m if m <= max_pattern(d, mode) => Some(d / 2 + 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        assert_eq!(predicted_kappa(1, 0, Mode::Structure), Some(3));
        assert_eq!(predicted_kappa(3, 0, Mode::Substructure), Some(5));
        assert_eq!(predicted_kappa(1, 1, Mode::Structure), Some(2));
        assert_eq!(predicted_kappa(2, 1, Mode::Substructure), Some(2));
        assert_eq!(predicted_kappa(3, 1, Mode::Structure), Some(4));
        assert_eq!(predicted_kappa(1, 2, Mode::Structure), Some(1));
        assert_eq!(predicted_kappa(2, 3, Mode::Structure), Some(2));
        assert_eq!(predicted_kappa(2, 4, Mode::Structure), None);
        assert_eq!(predicted_kappa(2, 4, Mode::Substructure), Some(2));
        assert_eq!(predicted_kappa(6, 7, Mode::Structure), Some(4));
        assert_eq!(predicted_kappa(6, 9, Mode::Substructure), None);
    }
}
