//! Virtual bundles represented by their Chern characters.
//!
//! A [`KClass`] is just a ring class whose degree-0 part is an integer (the
//! virtual rank). Sums, duals and tensor products act on the character;
//! conversions to and from Chern classes use the Newton identities, which are
//! implemented through degree 3 — enough for every variety this crate builds
//! (dimension at most 3).

use std::fmt;

use crate::bigrat::{frac, is_integer, rat, sign_pow, to_i64};
use crate::chow::{ChowClass, Ring};
use crate::error::{Error, Result};

/// A virtual bundle, stored as its Chern character.
#[derive(Debug, Clone, PartialEq)]
pub struct KClass {
    ch: ChowClass,
}

impl KClass {
    /// Wraps a character, checking that the degree-0 part is an integer.
    pub fn from_ch(ch: ChowClass) -> Result<Self> {
        if !is_integer(&ch.constant_coefficient()) {
            return Err(Error::NotAnInteger(format!(
                "virtual rank {}",
                ch.constant_coefficient()
            )));
        }
        Ok(KClass { ch })
    }

    /// The zero class.
    pub fn zero(ring: &Ring) -> Self {
        KClass { ch: ChowClass::zero(ring) }
    }

    /// The trivial bundle of the given rank.
    pub fn trivial(ring: &Ring, rank: i64) -> Self {
        KClass { ch: ChowClass::scalar(ring, rat(rank)) }
    }

    /// The line bundle with first Chern class `c1`: character `exp(c1)`.
    pub fn line_bundle(c1: &ChowClass) -> Result<Self> {
        let positive = c1.graded_part(0);
        if !positive.is_zero() {
            return Err(Error::Unsupported(
                "line bundle twist must have no degree-0 part".into(),
            ));
        }
        if c1 != &c1.graded_part(1) {
            return Err(Error::Unsupported(
                "line bundle twist must be pure degree 1".into(),
            ));
        }
        Ok(KClass { ch: c1.exp()? })
    }

    pub fn ch(&self) -> &ChowClass {
        &self.ch
    }

    pub fn ring(&self) -> &Ring {
        self.ch.ring()
    }

    /// The virtual rank (degree-0 part of the character).
    pub fn rank(&self) -> i64 {
        to_i64(&self.ch.constant_coefficient()).expect("rank is checked at construction")
    }

    /// Degree-1 part of the character; for an honest line bundle this is its
    /// first Chern class.
    pub fn ch1(&self) -> ChowClass {
        self.ch.graded_part(1)
    }

    pub fn add(&self, other: &KClass) -> Result<KClass> {
        Ok(KClass { ch: self.ch.checked_add(&other.ch)? })
    }

    pub fn sub(&self, other: &KClass) -> Result<KClass> {
        Ok(KClass { ch: self.ch.checked_sub(&other.ch)? })
    }

    /// Tensor product: characters multiply.
    pub fn tensor(&self, other: &KClass) -> Result<KClass> {
        Ok(KClass { ch: self.ch.checked_mul(&other.ch)? })
    }

    /// The dual: degree-`d` parts pick up `(-1)^d`.
    pub fn dual(&self) -> KClass {
        let ring = self.ch.ring().clone();
        let mut out = ChowClass::zero(&ring);
        for d in 0..=ring.dim() {
            out = &out + &self.ch.graded_part(d).scale(&sign_pow(d));
        }
        KClass { ch: out }
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ch)
    }
}

/// Character of a bundle with the given rank and total Chern class
/// `1 + c1 + c2 + c3` (Newton identities through degree 3).
pub fn chern_to_ch(rank: i64, total_chern: &ChowClass) -> Result<KClass> {
    let ring = total_chern.ring().clone();
    if ring.dim() > 3 {
        return Err(Error::Unsupported(
            "Chern conversions are implemented through degree 3".into(),
        ));
    }
    if total_chern.graded_part(0) != ChowClass::one(&ring) {
        return Err(Error::Unsupported(
            "total Chern class must start with 1".into(),
        ));
    }
    let c1 = total_chern.graded_part(1);
    let c2 = total_chern.graded_part(2);
    let c3 = total_chern.graded_part(3);
    // ch = rank + c1 + (c1^2 - 2 c2)/2 + (c1^3 - 3 c1 c2 + 3 c3)/6.
    let ch2 = (&c1.pow(2) - &c2.scale(&rat(2))).scale(&frac(1, 2));
    let ch3 = (&(&c1.pow(3) - &(&c1 * &c2).scale(&rat(3))) + &c3.scale(&rat(3)))
        .scale(&frac(1, 6));
    let ch = &(&(&ChowClass::scalar(&ring, rat(rank)) + &c1) + &ch2) + &ch3;
    Ok(KClass { ch })
}

/// Total Chern class `1 + c1 + c2 + c3` of a (possibly virtual) class, by
/// inverting the Newton identities degree by degree. The formulas are
/// universal, so they apply to any virtual rank.
pub fn ch_to_chern(k: &KClass) -> Result<ChowClass> {
    let ring = k.ch.ring().clone();
    if ring.dim() > 3 {
        return Err(Error::Unsupported(
            "Chern conversions are implemented through degree 3".into(),
        ));
    }
    let ch1 = k.ch.graded_part(1);
    let ch2 = k.ch.graded_part(2);
    let ch3 = k.ch.graded_part(3);
    let c1 = ch1.clone();
    // c2 = (c1^2 - 2 ch2)/2.
    let c2 = (&c1.pow(2) - &ch2.scale(&rat(2))).scale(&frac(1, 2));
    // c3 = 2 ch3 + c1^3/6 - c1 ch2.
    let c3 = &(&ch3.scale(&rat(2)) + &c1.pow(3).scale(&frac(1, 6))) - &(&c1 * &ch2);
    Ok(&(&(&ChowClass::one(&ring) + &c1) + &c2) + &c3)
}

/// Todd class of a (virtual) bundle:
/// `1 + c1/2 + (c1^2 + c2)/12 + c1 c2 / 24`, truncated at degree 3. For a
/// line bundle this reduces to `1 + t/2 + t^2/12` — the degree-3 Todd
/// coefficient of a line bundle vanishes.
pub fn todd(k: &KClass) -> Result<ChowClass> {
    let ring = k.ch.ring().clone();
    let total = ch_to_chern(k)?;
    let c1 = total.graded_part(1);
    let c2 = total.graded_part(2);
    let td1 = c1.scale(&frac(1, 2));
    let td2 = (&c1.pow(2) + &c2).scale(&frac(1, 12));
    let td3 = (&c1 * &c2).scale(&frac(1, 24));
    Ok(&(&(&ChowClass::one(&ring) + &td1) + &td2) + &td3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::testutil::*;
    use crate::chow::parse_class;

    #[test]
    fn cotangent_of_the_plane() {
        // rank 2, c = 1 - 3h + 3h^2  =>  ch = 2 - 3h + 3/2 h^2.
        let p2 = projective_ring(2, "h");
        let c = parse_class(&p2, "1 - 3*h + 3*h^2").unwrap();
        let k = chern_to_ch(2, &c).unwrap();
        assert_eq!(k.ch(), &parse_class(&p2, "2 - 3*h + 3/2*h^2").unwrap());
        // Round trip.
        assert_eq!(ch_to_chern(&k).unwrap(), c);
    }

    #[test]
    fn chern_of_rank_zero_difference() {
        // ch = -4 f1 - 4 f2 has virtual rank 0 and c = 1 - 4f1 - 4f2 + 16 f1 f2.
        let ring = quadric_ring("f1", "f2");
        let k = KClass::from_ch(parse_class(&ring, "-4*f1 - 4*f2").unwrap()).unwrap();
        assert_eq!(k.rank(), 0);
        assert_eq!(
            ch_to_chern(&k).unwrap(),
            parse_class(&ring, "1 - 4*f1 - 4*f2 + 16*f1*f2").unwrap()
        );
    }

    #[test]
    fn dual_flips_odd_degrees() {
        let ring = conic_family_ring();
        let k = KClass::from_ch(parse_class(&ring, "3 + h - 2*f1*f2 + 5*f1*f2*h").unwrap())
            .unwrap();
        let dual = k.dual();
        assert_eq!(
            dual.ch(),
            &parse_class(&ring, "3 - h - 2*f1*f2 - 5*f1*f2*h").unwrap()
        );
        // Involution.
        assert_eq!(dual.dual(), k);
    }

    #[test]
    fn tensor_with_structure_sheaf_is_identity() {
        let ring = hirzebruch_ring(6);
        let k = KClass::from_ch(parse_class(&ring, "2 + e + 3*f").unwrap()).unwrap();
        let o = KClass::trivial(&ring, 1);
        assert_eq!(k.tensor(&o).unwrap(), k);
    }

    #[test]
    fn line_bundle_twists() {
        // On the conic family ring: T = line(2h - f1 - f2) twisted down by
        // D = h + f1 - f2 gives line(h - 2 f1).
        let ring = conic_family_ring();
        let t = KClass::line_bundle(&parse_class(&ring, "2*h - f1 - f2").unwrap()).unwrap();
        let d_inv = KClass::line_bundle(&parse_class(&ring, "-h - f1 + f2").unwrap()).unwrap();
        let twisted = t.tensor(&d_inv).unwrap();
        let direct = KClass::line_bundle(&parse_class(&ring, "h - 2*f1").unwrap()).unwrap();
        assert_eq!(twisted, direct);
        assert_eq!(twisted.ch1(), parse_class(&ring, "h - 2*f1").unwrap());
    }

    #[test]
    fn tensor_of_line_bundles_on_the_quadric() {
        // line(3 f1 - f2) (x) line(-6 f1) = line(-3 f1 - f2), with character
        // 1 - 3 f1 - f2 + 3 f1 f2.
        let ring = quadric_ring("f1", "f2");
        let a = KClass::line_bundle(&parse_class(&ring, "3*f1 - f2").unwrap()).unwrap();
        let b = KClass::line_bundle(&parse_class(&ring, "-6*f1").unwrap()).unwrap();
        let product = a.tensor(&b).unwrap();
        assert_eq!(
            product.ch(),
            &parse_class(&ring, "1 - 3*f1 - f2 + 3*f1*f2").unwrap()
        );
    }

    #[test]
    fn todd_values() {
        // Trivial bundle: td = 1.
        let ring = conic_family_ring();
        let o = KClass::trivial(&ring, 1);
        assert_eq!(todd(&o).unwrap(), ChowClass::one(&ring));

        // Line bundle t = 2h - f1 - f2 on the conic family ring:
        // t^2 = -6 f1 f2, so td = 1 + h - (f1 + f2)/2 - f1 f2 / 2.
        let t = KClass::line_bundle(&parse_class(&ring, "2*h - f1 - f2").unwrap()).unwrap();
        assert_eq!(
            todd(&t).unwrap(),
            parse_class(&ring, "1 + h - 1/2*f1 - 1/2*f2 - 1/2*f1*f2").unwrap()
        );

        // Line bundle t = 2e + 6f on F6: t^2 = 0, so td = 1 + e + 3f.
        let f6 = hirzebruch_ring(6);
        let t = KClass::line_bundle(&parse_class(&f6, "2*e + 6*f").unwrap()).unwrap();
        assert_eq!(todd(&t).unwrap(), parse_class(&f6, "1 + e + 3*f").unwrap());
    }

    #[test]
    fn todd_is_multiplicative_on_line_bundle_sums() {
        let ring = conic_family_ring();
        for (a, b) in [("h", "f1"), ("2*h - f1 - f2", "f2 - f1"), ("h + f1", "-h")] {
            let la = KClass::line_bundle(&parse_class(&ring, a).unwrap()).unwrap();
            let lb = KClass::line_bundle(&parse_class(&ring, b).unwrap()).unwrap();
            let sum = la.add(&lb).unwrap();
            let lhs = todd(&sum).unwrap();
            let rhs = &todd(&la).unwrap() * &todd(&lb).unwrap();
            assert_eq!(lhs, rhs, "td additivity on {a} + {b}");
        }
    }

    #[test]
    fn non_integral_rank_is_rejected() {
        let ring = quadric_ring("f1", "f2");
        let bad = parse_class(&ring, "1/2 + f1").unwrap();
        assert!(KClass::from_ch(bad).is_err());
    }
}
