//! Ring maps and proper pushforwards between the rings of `chow`.
//!
//! A [`RingMap`] substitutes a chosen class for every generator and is
//! checked for well-definedness against the source relations.  A
//! [`Pushforward`] integrates along the fibers of one of three recognized
//! map shapes: a P^1-bundle (extract the coefficient of the relative
//! hyperplane class), a product projection (keep the terms whose contracted
//! part is the fiber's point class), or an isomorphism (transport along an
//! invertible ring map).  Each carries its pullback, so the projection
//! formula can be exercised directly, and each can form the
//! Grothendieck–Riemann–Roch index of a K-class.

use crate::bigrat::{rat, Rat};
use crate::chow::{same_ring, ChowClass, Monomial, Ring};
use crate::error::{Error, Result};
use crate::ktheory::{todd, KClass};

/// A graded ring homomorphism given on generators.
///
/// Construction checks that every generator's image is homogeneous of the
/// right degree and that every rewrite rule of the source maps to an
/// identity of the target, so applying the map term by term is legitimate.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<ChowClass>,
}

fn evaluate_terms<'a>(
    target: &Ring,
    images: &[ChowClass],
    terms: impl Iterator<Item = (&'a Monomial, &'a Rat)>,
) -> Result<ChowClass> {
    let mut acc = ChowClass::zero(target);
    for (m, c) in terms {
        let mut term = ChowClass::scalar(target, c.clone());
        for (i, k) in m.0.iter().enumerate() {
            if *k > 0 {
                term = term.checked_mul(&images[i].pow(*k))?;
            }
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

impl RingMap {
    /// Builds the map sending generator `i` of `source` to `images[i]`.
    pub fn new(source: &Ring, target: &Ring, images: Vec<ChowClass>) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::Presentation(format!(
                "expected {} generator images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            let spec = &source.variables()[i];
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch {
                    left: format!("image of `{}`", spec.name),
                    right: "map target".into(),
                });
            }
            if *img != img.graded_part(spec.degree) {
                return Err(Error::DegreeMismatch(format!(
                    "image of `{}` must be homogeneous of degree {}",
                    spec.name, spec.degree
                )));
            }
        }
        for rule in source.rules() {
            let lhs = images[rule.variable].pow(rule.exponent);
            let rhs =
                evaluate_terms(target, &images, rule.replacement.iter().map(|(m, c)| (m, c)))?;
            if lhs != rhs {
                return Err(Error::RelationViolation(format!(
                    "the rule for `{}` does not hold under the map: {} vs {}",
                    source.variables()[rule.variable].name,
                    lhs,
                    rhs
                )));
            }
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[ChowClass] {
        &self.images
    }

    pub fn apply(&self, class: &ChowClass) -> Result<ChowClass> {
        if !same_ring(class.ring(), &self.source) {
            return Err(Error::RingMismatch {
                left: "class to map".into(),
                right: "map source".into(),
            });
        }
        evaluate_terms(&self.target, &self.images, class.terms())
    }

    pub fn apply_k(&self, k: &KClass) -> Result<KClass> {
        KClass::from_ch(self.apply(k.ch())?)
    }
}

enum Kind {
    /// Integrate along the fibers of `P(E) -> B`: keep the coefficient of
    /// the relative hyperplane variable.
    Bundle { xi: usize, var_map: Vec<Option<usize>> },
    /// Integrate along the contracted factor of a product: keep the terms
    /// whose contracted part is exactly the fiber's point class.
    Projection { var_map: Vec<Option<usize>>, fiber_point: Monomial },
    /// Transport along an invertible ring map.
    Isomorphism { forward: RingMap },
}

/// A proper pushforward of one of the three recognized shapes, together
/// with its pullback.
pub struct Pushforward {
    source: Ring,
    target: Ring,
    kind: Kind,
    pullback: RingMap,
}

/// Builds `var_map[source index] = Some(target index)` from name pairs,
/// requiring a degree-preserving bijection onto the target variables.
fn build_var_map(
    source: &Ring,
    target: &Ring,
    pairs: &[(&str, &str)],
    skip: Option<usize>,
) -> Result<Vec<Option<usize>>> {
    let mut var_map: Vec<Option<usize>> = vec![None; source.nvars()];
    let mut hit = vec![false; target.nvars()];
    for (s, t) in pairs {
        let si = source
            .variable_index(s)
            .ok_or_else(|| Error::Pushforward(format!("no source variable `{s}`")))?;
        let ti = target
            .variable_index(t)
            .ok_or_else(|| Error::Pushforward(format!("no target variable `{t}`")))?;
        if Some(si) == skip {
            return Err(Error::Pushforward(format!(
                "the fiber variable `{s}` cannot be mapped to the base"
            )));
        }
        if var_map[si].is_some() {
            return Err(Error::Pushforward(format!("`{s}` is mapped twice")));
        }
        if hit[ti] {
            return Err(Error::Pushforward(format!("`{t}` is hit twice")));
        }
        if source.variables()[si].degree != target.variables()[ti].degree {
            return Err(Error::DegreeMismatch(format!(
                "`{s}` and `{t}` have different degrees"
            )));
        }
        var_map[si] = Some(ti);
        hit[ti] = true;
    }
    if let Some(missed) = hit.iter().position(|h| !h) {
        return Err(Error::Pushforward(format!(
            "target variable `{}` is not the image of anything",
            target.variables()[missed].name
        )));
    }
    Ok(var_map)
}

/// Re-expresses terms over mapped variables; every variable that occurs
/// must be mapped.
fn remap_terms<'a>(
    target: &Ring,
    var_map: &[Option<usize>],
    terms: impl Iterator<Item = (&'a Monomial, &'a Rat)>,
) -> ChowClass {
    let out = terms
        .map(|(m, c)| {
            let mut exps = vec![0u32; target.nvars()];
            for (i, k) in m.0.iter().enumerate() {
                if *k > 0 {
                    exps[var_map[i].expect("variable was checked to be mapped")] = *k;
                }
            }
            (Monomial(exps), c.clone())
        })
        .collect();
    ChowClass::from_terms(target, out)
}

impl Pushforward {
    /// The pushforward along `P(E) -> B` where `xi` names the relative
    /// hyperplane variable of the source and `base_map` matches the
    /// remaining source variables with the target's.
    pub fn projective_bundle(
        source: &Ring,
        target: &Ring,
        xi: &str,
        base_map: &[(&str, &str)],
    ) -> Result<Pushforward> {
        let xi_idx = source
            .variable_index(xi)
            .ok_or_else(|| Error::Pushforward(format!("no source variable `{xi}`")))?;
        if source.variables()[xi_idx].degree != 1 {
            return Err(Error::Pushforward(format!(
                "fiber variable `{xi}` must have degree 1"
            )));
        }
        let var_map = build_var_map(source, target, base_map, Some(xi_idx))?;
        for (i, image) in var_map.iter().enumerate() {
            if i != xi_idx && image.is_none() {
                return Err(Error::Pushforward(format!(
                    "base variable `{}` has no image",
                    source.variables()[i].name
                )));
            }
        }
        let xi_rule = source
            .rules()
            .iter()
            .find(|r| r.variable == xi_idx)
            .expect("a ring carries one rule per variable");
        if xi_rule.exponent != 2 {
            return Err(Error::Pushforward(format!(
                "`{xi}` is not a relative hyperplane class: its power rule has exponent {}",
                xi_rule.exponent
            )));
        }
        for rule in source.rules() {
            if rule.variable == xi_idx {
                continue;
            }
            if rule.replacement.iter().any(|(m, _)| m.0[xi_idx] > 0) {
                return Err(Error::Pushforward(format!(
                    "the rule for `{}` involves the fiber variable `{xi}`",
                    source.variables()[rule.variable].name
                )));
            }
            let ti = var_map[rule.variable].expect("base variables are mapped");
            let lhs = ChowClass::from_terms(
                target,
                vec![(Monomial::var(target.nvars(), ti), rat(1))],
            )
            .pow(rule.exponent);
            let rhs = remap_terms(target, &var_map, rule.replacement.iter().map(|(m, c)| (m, c)));
            if lhs != rhs {
                return Err(Error::RelationViolation(format!(
                    "the rule for `{}` does not hold in the base: {} vs {}",
                    source.variables()[rule.variable].name,
                    lhs,
                    rhs
                )));
            }
        }
        // The pullback re-checks the transport in the other direction.
        let mut images = vec![ChowClass::zero(source); target.nvars()];
        for (i, image) in var_map.iter().enumerate() {
            if let Some(j) = *image {
                images[j] =
                    ChowClass::generator(source, &source.variables()[i].name).expect("exists");
            }
        }
        let pullback = RingMap::new(target, source, images)?;
        Ok(Pushforward {
            source: source.clone(),
            target: target.clone(),
            kind: Kind::Bundle { xi: xi_idx, var_map },
            pullback,
        })
    }

    /// The pushforward along a projection `X x Y -> X`.  `kept` matches the
    /// variables of the `X` factor with the target's; the remaining
    /// variables are integrated out.
    pub fn product_projection(
        source: &Ring,
        target: &Ring,
        kept: &[(&str, &str)],
    ) -> Result<Pushforward> {
        let var_map = build_var_map(source, target, kept, None)?;
        // The ring must split: no rule may mix kept and contracted
        // variables, and kept relations must hold in the target.
        for rule in source.rules() {
            let kept_var = var_map[rule.variable].is_some();
            for (m, _) in &rule.replacement {
                for (i, k) in m.0.iter().enumerate() {
                    if *k > 0 && var_map[i].is_some() != kept_var {
                        return Err(Error::Pushforward(format!(
                            "the rule for `{}` mixes kept and contracted variables",
                            source.variables()[rule.variable].name
                        )));
                    }
                }
            }
            if kept_var {
                let ti = var_map[rule.variable].expect("kept");
                let lhs = ChowClass::from_terms(
                    target,
                    vec![(Monomial::var(target.nvars(), ti), rat(1))],
                )
                .pow(rule.exponent);
                let rhs =
                    remap_terms(target, &var_map, rule.replacement.iter().map(|(m, c)| (m, c)));
                if lhs != rhs {
                    return Err(Error::RelationViolation(format!(
                        "the rule for `{}` does not hold in the target: {} vs {}",
                        source.variables()[rule.variable].name,
                        lhs,
                        rhs
                    )));
                }
            }
        }
        // The source point must factor as (target point) x (fiber point).
        let mut fiber_point = source.point_monomial().clone();
        let mut kept_point = vec![0u32; target.nvars()];
        for (i, k) in source.point_monomial().0.iter().enumerate() {
            if let Some(j) = var_map[i] {
                kept_point[j] = *k;
                fiber_point.0[i] = 0;
            }
        }
        if Monomial(kept_point) != *target.point_monomial() {
            return Err(Error::Pushforward(
                "the point class does not factor through the projection".into(),
            ));
        }
        let mut images = vec![ChowClass::zero(source); target.nvars()];
        for (i, image) in var_map.iter().enumerate() {
            if let Some(j) = *image {
                images[j] =
                    ChowClass::generator(source, &source.variables()[i].name).expect("exists");
            }
        }
        let pullback = RingMap::new(target, source, images)?;
        Ok(Pushforward {
            source: source.clone(),
            target: target.clone(),
            kind: Kind::Projection { var_map, fiber_point },
            pullback,
        })
    }

    /// The pushforward along an isomorphism, given as the induced ring map
    /// on the source.  The map must send each generator to plus or minus a
    /// generator, one-to-one; its inverse becomes the pullback.
    pub fn isomorphism(forward: RingMap) -> Result<Pushforward> {
        let source = forward.source().clone();
        let target = forward.target().clone();
        if source.dim() != target.dim() || source.nvars() != target.nvars() {
            return Err(Error::NotInvertible(
                "source and target have different shapes".into(),
            ));
        }
        let mut inverse: Vec<Option<ChowClass>> = vec![None; target.nvars()];
        for (i, img) in forward.images().iter().enumerate() {
            let name = &source.variables()[i].name;
            let terms: Vec<_> = img.terms().collect();
            let not_invertible = || {
                Error::NotInvertible(format!(
                    "the image of `{name}` is not plus or minus a generator"
                ))
            };
            if terms.len() != 1 {
                return Err(not_invertible());
            }
            let (m, c) = (terms[0].0, terms[0].1);
            if *c != rat(1) && *c != rat(-1) {
                return Err(not_invertible());
            }
            let mut singles = m.0.iter().enumerate().filter(|(_, k)| **k > 0);
            let j = match (singles.next(), singles.next()) {
                (Some((j, 1)), None) => j,
                _ => return Err(not_invertible()),
            };
            if inverse[j].is_some() {
                return Err(Error::NotInvertible(format!(
                    "two generators map to `{}`",
                    target.variables()[j].name
                )));
            }
            inverse[j] = Some(
                ChowClass::generator(&source, name).expect("exists").scale(c),
            );
        }
        let images = inverse
            .into_iter()
            .map(|img| img.ok_or_else(|| Error::NotInvertible("a generator is missed".into())))
            .collect::<Result<Vec<_>>>()?;
        let pullback = RingMap::new(&target, &source, images)?;
        Ok(Pushforward {
            source,
            target,
            kind: Kind::Isomorphism { forward },
            pullback,
        })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn push(&self, class: &ChowClass) -> Result<ChowClass> {
        if !same_ring(class.ring(), &self.source) {
            return Err(Error::RingMismatch {
                left: "class to push".into(),
                right: "pushforward source".into(),
            });
        }
        match &self.kind {
            Kind::Bundle { xi, var_map } => {
                let mut out = vec![];
                for (m, c) in class.terms() {
                    if m.0[*xi] == 0 {
                        continue;
                    }
                    debug_assert_eq!(m.0[*xi], 1, "normal form bounds the fiber exponent");
                    let mut exps = vec![0u32; self.target.nvars()];
                    for (i, k) in m.0.iter().enumerate() {
                        if i != *xi && *k > 0 {
                            exps[var_map[i].expect("base variables are mapped")] = *k;
                        }
                    }
                    out.push((Monomial(exps), c.clone()));
                }
                Ok(ChowClass::from_terms(&self.target, out))
            }
            Kind::Projection { var_map, fiber_point } => {
                let mut out = vec![];
                'term: for (m, c) in class.terms() {
                    let mut exps = vec![0u32; self.target.nvars()];
                    for (i, k) in m.0.iter().enumerate() {
                        match var_map[i] {
                            Some(j) => exps[j] = *k,
                            None => {
                                if *k != fiber_point.0[i] {
                                    continue 'term;
                                }
                            }
                        }
                    }
                    out.push((Monomial(exps), c.clone()));
                }
                Ok(ChowClass::from_terms(&self.target, out))
            }
            Kind::Isomorphism { forward } => forward.apply(class),
        }
    }

    pub fn pullback(&self, class: &ChowClass) -> Result<ChowClass> {
        self.pullback.apply(class)
    }

    /// The relative tangent K-class, where it is determined by the stored
    /// data: the line bundle `2 xi - c1(E)` for a projective bundle, zero
    /// for an isomorphism.  A product projection's relative tangent depends
    /// on the contracted factor and must be supplied by the caller.
    pub fn relative_tangent(&self) -> Result<KClass> {
        match &self.kind {
            Kind::Bundle { xi, .. } => {
                let rule = self
                    .source
                    .rules()
                    .iter()
                    .find(|r| r.variable == *xi)
                    .expect("a ring carries one rule per variable");
                let mut a_terms = vec![];
                for (m, c) in &rule.replacement {
                    if m.0[*xi] == 1 {
                        let mut exps = m.0.clone();
                        exps[*xi] = 0;
                        a_terms.push((Monomial(exps), c.clone()));
                    }
                }
                let c1_e = ChowClass::from_terms(&self.source, a_terms);
                let double_xi = ChowClass::from_terms(
                    &self.source,
                    vec![(Monomial::var(self.source.nvars(), *xi), rat(2))],
                );
                KClass::line_bundle(&double_xi.checked_sub(&c1_e)?)
            }
            Kind::Projection { .. } => Err(Error::Unsupported(
                "the relative tangent of a product projection must be supplied by the caller"
                    .into(),
            )),
            Kind::Isomorphism { .. } => Ok(KClass::zero(&self.source)),
        }
    }

    /// The Grothendieck–Riemann–Roch index: push down `ch(f) td(T_rel)`.
    pub fn grr_index(&self, rel_tangent: &KClass, f: &KClass) -> Result<KClass> {
        if !same_ring(rel_tangent.ring(), &self.source) || !same_ring(f.ring(), &self.source) {
            return Err(Error::RingMismatch {
                left: "index data".into(),
                right: "pushforward source".into(),
            });
        }
        let integrand = f.ch().checked_mul(&todd(rel_tangent)?)?;
        KClass::from_ch(self.push(&integrand)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::parse_class;
    use crate::chow::testutil::{conic_family_ring, hirzebruch_ring, projective_ring, quadric_ring};
    use crate::variety::{BundleData, Variety};
    use proptest::prelude::*;

    fn conic_to_base() -> Pushforward {
        let source = conic_family_ring();
        let target = quadric_ring("f1", "f2");
        Pushforward::projective_bundle(&source, &target, "h", &[("f1", "f1"), ("f2", "f2")])
            .unwrap()
    }

    /// The family ring of the second component in the two-surface example:
    /// F6 x P1, with the extra line's variable `g`.
    fn f6_times_line() -> Variety {
        let f6 = Variety::hirzebruch(6);
        let line = Variety::projective_space_named(1, "g").unwrap();
        Variety::product(&f6, &line).unwrap()
    }

    #[test]
    fn ring_maps_check_their_relations() {
        let conic = conic_family_ring();
        let base = quadric_ring("f1", "f2");
        let f1 = ChowClass::generator(&base, "f1").unwrap();
        let f2 = ChowClass::generator(&base, "f2").unwrap();

        let good = RingMap::new(&conic, &base, vec![f1.clone(), f2.clone(), f1.scale(&rat(2))]);
        assert!(good.is_ok());

        let bad = RingMap::new(&conic, &base, vec![f1.clone(), f2.clone(), f1.clone()]);
        assert!(matches!(bad, Err(Error::RelationViolation(_))));

        let impure = RingMap::new(
            &conic,
            &base,
            vec![f1.clone(), f2.clone(), parse_class(&base, "f1*f2").unwrap()],
        );
        assert!(matches!(impure, Err(Error::DegreeMismatch(_))));

        let short = RingMap::new(&conic, &base, vec![f1, f2]);
        assert!(matches!(short, Err(Error::Presentation(_))));
    }

    #[test]
    fn ring_maps_apply_term_by_term() {
        // Restriction of the second family to the gluing locus.
        let family = f6_times_line();
        let base = quadric_ring("f1", "f2");
        let images = vec![
            ChowClass::generator(&base, "f1").unwrap(),
            ChowClass::generator(&base, "f1").unwrap().scale(&rat(-6)),
            ChowClass::generator(&base, "f2").unwrap(),
        ];
        let restrict = RingMap::new(family.ring(), &base, images).unwrap();
        let eg = parse_class(family.ring(), "e*g").unwrap();
        assert_eq!(restrict.apply(&eg).unwrap().to_string(), "-6*f1*f2");
        let k = parse_class(family.ring(), "2+8*f+2*e").unwrap();
        assert_eq!(restrict.apply(&k).unwrap().to_string(), "2-4*f1");
    }

    #[test]
    fn conic_family_pushforwards() {
        let pf = conic_to_base();
        let h2 = parse_class(pf.source(), "h^2").unwrap();
        assert_eq!(pf.push(&h2).unwrap().to_string(), "f1+f2");
        let d_times_h = parse_class(pf.source(), "h^2+f1*h-f2*h").unwrap();
        assert_eq!(pf.push(&d_times_h).unwrap().to_string(), "2*f1");
        // A pure pullback has nothing along the fiber.
        let alpha = parse_class(pf.target(), "3+f1-2*f2+5*f1*f2").unwrap();
        assert!(pf.push(&pf.pullback(&alpha).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn product_family_is_a_bundle_over_the_base() {
        let family = f6_times_line();
        let base = quadric_ring("f1", "f2");
        let pf = Pushforward::projective_bundle(
            family.ring(),
            &base,
            "e",
            &[("f", "f1"), ("g", "f2")],
        )
        .unwrap();
        let fe = parse_class(family.ring(), "f*e").unwrap();
        assert_eq!(pf.push(&fe).unwrap().to_string(), "f1");
        let rel = pf.relative_tangent().unwrap();
        assert_eq!(rel.ch1().to_string(), "6*f+2*e");
    }

    #[test]
    fn bundle_setup_is_validated() {
        let base = quadric_ring("f1", "f2");
        let conic = conic_family_ring();

        // A degree-3 power rule is not a P^1-bundle along that variable.
        let p2 = projective_ring(2, "h");
        let pt = crate::chow::make_ring(vec![], vec![], 0, Monomial::one(0)).unwrap();
        let not_quadratic = Pushforward::projective_bundle(&p2, &pt, "h", &[]);
        assert!(matches!(not_quadratic, Err(Error::Pushforward(_))));

        // Base relations must transport.
        let f6 = hirzebruch_ring(6);
        let to_plane = Pushforward::projective_bundle(&f6, &p2, "e", &[("f", "h")]);
        assert!(matches!(to_plane, Err(Error::RelationViolation(_))));

        // Every base variable needs an image, each target hit once.
        let partial = Pushforward::projective_bundle(&conic, &base, "h", &[("f1", "f1")]);
        assert!(partial.is_err());
        let doubled = Pushforward::projective_bundle(
            &conic,
            &base,
            "h",
            &[("f1", "f1"), ("f2", "f1")],
        );
        assert!(doubled.is_err());

        // Another rule mentioning the fiber variable disqualifies it.
        let mixed = crate::chow::make_ring(
            vec![crate::chow::VariableSpec::new("e", 1), crate::chow::VariableSpec::new("g", 1)],
            vec![
                crate::chow::RewriteRule::vanishing(0, 2),
                crate::chow::RewriteRule::new(
                    1,
                    2,
                    vec![(Monomial(vec![1, 1]), rat(1))],
                ),
            ],
            2,
            Monomial(vec![1, 1]),
        )
        .unwrap();
        let p1 = projective_ring(1, "t");
        let tangled = Pushforward::projective_bundle(&mixed, &p1, "e", &[("g", "t")]);
        assert!(matches!(tangled, Err(Error::Pushforward(_))));
    }

    #[test]
    fn projection_to_one_factor() {
        let quadric = quadric_ring("f1", "f2");
        let line = projective_ring(1, "t");
        let pf = Pushforward::product_projection(&quadric, &line, &[("f2", "t")]).unwrap();
        assert_eq!(pf.push(&parse_class(&quadric, "f1*f2").unwrap()).unwrap().to_string(), "t");
        assert_eq!(pf.push(&parse_class(&quadric, "f1").unwrap()).unwrap().to_string(), "1");
        assert!(pf.push(&parse_class(&quadric, "f2").unwrap()).unwrap().is_zero());
        assert!(pf.push(&ChowClass::one(&quadric)).unwrap().is_zero());
        assert_eq!(pf.pullback(&parse_class(&line, "t").unwrap()).unwrap().to_string(), "f2");
        assert!(pf.relative_tangent().is_err());

        // The conic family does not split off its fiber direction.
        let conic = conic_family_ring();
        let tangled = Pushforward::product_projection(
            &conic,
            &quadric,
            &[("f1", "f1"), ("f2", "f2")],
        );
        assert!(tangled.is_err());
    }

    #[test]
    fn isomorphism_transport() {
        let d = projective_ring(1, "t");
        let m = projective_ring(1, "u");
        let flip = RingMap::new(
            &d,
            &m,
            vec![ChowClass::generator(&m, "u").unwrap().scale(&rat(-1))],
        )
        .unwrap();
        let pf = Pushforward::isomorphism(flip).unwrap();
        assert_eq!(pf.push(&parse_class(&d, "1-2*t").unwrap()).unwrap().to_string(), "1+2*u");
        assert_eq!(pf.pullback(&parse_class(&m, "u").unwrap()).unwrap().to_string(), "-t");
        let rel = pf.relative_tangent().unwrap();
        assert!(rel.ch().is_zero());
        assert_eq!(todd(&rel).unwrap().to_string(), "1");

        let quadric = quadric_ring("f1", "f2");
        let collapse = RingMap::new(
            &d,
            &quadric,
            vec![ChowClass::generator(&quadric, "f1").unwrap()],
        )
        .unwrap();
        assert!(matches!(
            Pushforward::isomorphism(collapse),
            Err(Error::NotInvertible(_))
        ));

        let stretch = RingMap::new(
            &d,
            &m,
            vec![ChowClass::generator(&m, "u").unwrap().scale(&rat(2))],
        );
        // 4 u^2 = 0 holds, so the map exists, but it is not invertible.
        assert!(matches!(
            Pushforward::isomorphism(stretch.unwrap()),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn euler_characteristics_of_line_bundles_on_a_line() {
        let line = Variety::projective_space_named(1, "h").unwrap();
        let pt = Variety::point();
        let pf = Pushforward::projective_bundle(line.ring(), pt.ring(), "h", &[]).unwrap();
        let rel = pf.relative_tangent().unwrap();
        assert_eq!(rel.ch1().to_string(), "2*h");
        for d in -10i64..=10 {
            let h = ChowClass::generator(line.ring(), "h").unwrap();
            let bundle = KClass::line_bundle(&h.scale(&rat(d))).unwrap();
            let index = pf.grr_index(&rel, &bundle).unwrap();
            assert_eq!(index.rank(), d + 1, "degree {d}");
        }
    }

    #[test]
    fn index_rows_of_the_glued_families() {
        // Second component of the two-surface family: F6 x P1 over the
        // product of lines, pushed along the section class.
        let family = f6_times_line();
        let base = quadric_ring("f1", "f2");
        let pf = Pushforward::projective_bundle(
            family.ring(),
            &base,
            "e",
            &[("f", "f1"), ("g", "f2")],
        )
        .unwrap();
        let rel = pf.relative_tangent().unwrap();
        let v = KClass::from_ch(parse_class(family.ring(), "3+4*f*e").unwrap()).unwrap();
        assert_eq!(pf.grr_index(&rel, &v).unwrap().ch().to_string(), "3+4*f1");
        let twisted = rel
            .tensor(&KClass::line_bundle(&parse_class(family.ring(), "-e").unwrap()).unwrap())
            .unwrap();
        assert_eq!(pf.grr_index(&rel, &twisted).unwrap().ch().to_string(), "2+6*f1");

        // One component of the pencil of fibers on F1 over its own line.
        let f1 = Variety::hirzebruch(1);
        let line = projective_ring(1, "t");
        let pencil =
            Pushforward::projective_bundle(f1.ring(), &line, "e", &[("f", "t")]).unwrap();
        let rel = pencil.relative_tangent().unwrap();
        let v = KClass::from_ch(parse_class(f1.ring(), "3+4*f*e").unwrap()).unwrap();
        assert_eq!(pencil.grr_index(&rel, &v).unwrap().ch().to_string(), "3+4*t");
        let twisted = rel
            .tensor(&KClass::line_bundle(&parse_class(f1.ring(), "-e").unwrap()).unwrap())
            .unwrap();
        assert_eq!(pencil.grr_index(&rel, &twisted).unwrap().ch().to_string(), "2+t");

        // The twisted dualizing sheaf of that pencil has no index at all.
        let omega_c = KClass::line_bundle(&parse_class(f1.ring(), "-e-3*f").unwrap()).unwrap();
        assert!(pencil.grr_index(&rel, &omega_c).unwrap().ch().is_zero());
    }

    /// Builds a class over a fixed ring from a seed vector, one coefficient
    /// per basis monomial (missing seeds mean zero).
    fn class_from_seeds(ring: &Ring, seeds: &[i64]) -> ChowClass {
        let terms = ring
            .basis()
            .into_iter()
            .zip(seeds.iter().chain(std::iter::repeat(&0)))
            .map(|(m, c)| (m, rat(*c)))
            .collect();
        ChowClass::from_terms(ring, terms)
    }

    proptest! {
        #[test]
        fn bundle_projection_formula(
            a in prop::collection::vec(-9i64..=9, 0..=4),
            b in prop::collection::vec(-9i64..=9, 0..=8),
        ) {
            let pf = conic_to_base();
            let alpha = class_from_seeds(pf.target(), &a);
            let beta = class_from_seeds(pf.source(), &b);
            let lhs = pf.push(&pf.pullback(&alpha).unwrap().checked_mul(&beta).unwrap()).unwrap();
            let rhs = alpha.checked_mul(&pf.push(&beta).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projection_projection_formula(
            a in prop::collection::vec(-9i64..=9, 0..=2),
            b in prop::collection::vec(-9i64..=9, 0..=4),
        ) {
            let quadric = quadric_ring("f1", "f2");
            let line = projective_ring(1, "t");
            let pf = Pushforward::product_projection(&quadric, &line, &[("f1", "t")]).unwrap();
            let alpha = class_from_seeds(&line, &a);
            let beta = class_from_seeds(&quadric, &b);
            let lhs = pf.push(&pf.pullback(&alpha).unwrap().checked_mul(&beta).unwrap()).unwrap();
            let rhs = alpha.checked_mul(&pf.push(&beta).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn isomorphism_projection_formula(
            a in prop::collection::vec(-9i64..=9, 0..=2),
            b in prop::collection::vec(-9i64..=9, 0..=2),
        ) {
            let d = projective_ring(1, "t");
            let m = projective_ring(1, "u");
            let flip = RingMap::new(
                &d,
                &m,
                vec![ChowClass::generator(&m, "u").unwrap().scale(&rat(-1))],
            )
            .unwrap();
            let pf = Pushforward::isomorphism(flip).unwrap();
            let alpha = class_from_seeds(&m, &a);
            let beta = class_from_seeds(&d, &b);
            let lhs = pf.push(&pf.pullback(&alpha).unwrap().checked_mul(&beta).unwrap()).unwrap();
            let rhs = alpha.checked_mul(&pf.push(&beta).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn relative_todd_always_pushes_to_one(
            a in -5i64..=5,
            b in -5i64..=5,
            c in -5i64..=5,
        ) {
            let base = Variety::product(
                &Variety::projective_space_named(1, "f1").unwrap(),
                &Variety::projective_space_named(1, "f2").unwrap(),
            ).unwrap();
            let f1 = ChowClass::generator(base.ring(), "f1").unwrap();
            let f2 = ChowClass::generator(base.ring(), "f2").unwrap();
            let chern = ChowClass::one(base.ring())
                .checked_add(&f1.scale(&rat(a))).unwrap()
                .checked_add(&f2.scale(&rat(b))).unwrap()
                .checked_add(&f1.checked_mul(&f2).unwrap().scale(&rat(c))).unwrap();
            let total = Variety::projective_bundle(&base, &BundleData::new(2, chern), "x").unwrap();
            let pf = Pushforward::projective_bundle(
                total.ring(),
                base.ring(),
                "x",
                &[("f1", "f1"), ("f2", "f2")],
            ).unwrap();
            let td = todd(&pf.relative_tangent().unwrap()).unwrap();
            prop_assert_eq!(pf.push(&td).unwrap(), ChowClass::one(base.ring()));
        }
    }
}
