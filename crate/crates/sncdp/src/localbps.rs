//! Genus-zero sheaf-counting invariants for declared smooth moduli.
//!
//! The counting here is deliberately thin: the moduli space is handed in
//! as an already-built [`Variety`] (hence smooth), its weight function is
//! the constant `(-1)^dim`, and the higher-genus table is only defined
//! when the moduli embeds into the space of support cycles.  Anything
//! beyond that — singular moduli, non-primitive classes — is refused
//! rather than approximated.

use crate::error::{Error, Result};
use crate::variety::Variety;

/// A moduli space of one-dimensional sheaves, declared rather than
/// constructed: the caller asserts what the space is.
pub struct SheafModuli {
    pub space: Variety,
    /// Free-form record of the sheaf class and the polarization used.
    /// The invariants are conjecturally independent of the polarization,
    /// so it is carried verbatim into reports instead of being checked.
    pub label: String,
    /// Whether the support map embeds the moduli into the cycle space.
    /// Required for the higher-genus vanishing rule.
    pub hilbert_chow_embedding: bool,
}

/// The table of integer counts by genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GvTable {
    pub n0: i64,
}

impl GvTable {
    /// The genus-`g` entry: `n0` at genus zero, zero above.
    pub fn genus(&self, g: u32) -> i64 {
        if g == 0 {
            self.n0
        } else {
            0
        }
    }
}

/// The Euler characteristic weighted by the constant `(-1)^dim`, which is
/// the weight function of any smooth moduli space.
pub fn weighted_euler_smooth(moduli: &SheafModuli) -> Result<i64> {
    let sign = if moduli.space.dim().is_multiple_of(2) { 1 } else { -1 };
    Ok(sign * moduli.space.euler_number()?)
}

/// The full genus table.  Only available when the moduli embeds into the
/// cycle space: that is what forces every positive-genus entry to vanish.
pub fn gv_table(moduli: &SheafModuli) -> Result<GvTable> {
    if !moduli.hilbert_chow_embedding {
        return Err(Error::Unsupported(format!(
            "higher-genus entries are undefined for `{}`: the moduli was not declared \
             to embed into the cycle space",
            moduli.label
        )));
    }
    Ok(GvTable { n0: weighted_euler_smooth(moduli)? })
}

/// Compares a genus-zero curve count against the sheaf count.  For a
/// primitive class the cover sum collapses to its first term, so the two
/// must agree exactly; non-primitive classes would need the divisor sum
/// over sub-classes, which needs a class lattice this tool does not keep.
pub fn multiple_cover_check(n0_curves: i64, table: &GvTable, primitive: bool) -> Result<bool> {
    if !primitive {
        return Err(Error::Unsupported(
            "the cover sum over sub-classes is only evaluated for primitive classes".into(),
        ));
    }
    Ok(n0_curves == table.n0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn declared(space: Variety, label: &str) -> SheafModuli {
        SheafModuli { space, label: label.into(), hilbert_chow_embedding: true }
    }

    #[test]
    fn weighted_euler_of_the_example_moduli() {
        let line = declared(
            Variety::projective_space_named(1, "t").unwrap(),
            "fiber class, any polarization",
        );
        assert_eq!(weighted_euler_smooth(&line).unwrap(), -2);

        let square = declared(
            Variety::product(
                &Variety::projective_space_named(1, "f1").unwrap(),
                &Variety::projective_space_named(1, "f2").unwrap(),
            )
            .unwrap(),
            "conic class, any polarization",
        );
        assert_eq!(weighted_euler_smooth(&square).unwrap(), 4);

        let point = declared(Variety::point(), "rigid curve");
        assert_eq!(weighted_euler_smooth(&point).unwrap(), 1);
    }

    #[test]
    fn weighted_euler_is_multiplicative() {
        let factors = || {
            vec![
                Variety::point(),
                Variety::projective_space_named(1, "a").unwrap(),
                Variety::projective_space_named(2, "b").unwrap(),
                Variety::hirzebruch(0),
                Variety::hirzebruch(3),
            ]
        };
        for x in factors() {
            for y in factors() {
                if x.dim() + y.dim() > 3 {
                    continue;
                }
                let wx = weighted_euler_smooth(&declared(x.clone(), "x")).unwrap();
                let wy = weighted_euler_smooth(&declared(y.clone(), "y")).unwrap();
                let product = declared(Variety::product(&x, &y).unwrap(), "xy");
                assert_eq!(weighted_euler_smooth(&product).unwrap(), wx * wy);
            }
        }
    }

    #[test]
    fn gv_table_needs_the_embedding() {
        let mut moduli = declared(Variety::projective_space_named(1, "t").unwrap(), "fiber");
        let table = gv_table(&moduli).unwrap();
        assert_eq!(table.n0, -2);
        assert_eq!(table.genus(0), -2);
        for g in 1..6 {
            assert_eq!(table.genus(g), 0);
        }

        moduli.hilbert_chow_embedding = false;
        assert!(matches!(gv_table(&moduli), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cover_check_compares_exactly() {
        assert!(multiple_cover_check(-2, &GvTable { n0: -2 }, true).unwrap());
        assert!(multiple_cover_check(4, &GvTable { n0: 4 }, true).unwrap());
        assert!(!multiple_cover_check(4, &GvTable { n0: -2 }, true).unwrap());
        assert!(matches!(
            multiple_cover_check(4, &GvTable { n0: 4 }, false),
            Err(Error::Unsupported(_))
        ));
    }
}
