//! Genus-zero local invariants of a two-component configuration, computed
//! from a family of glued rational curves over a smooth moduli base.
//!
//! The input is a [`FamilySetup`]: for each component surface, a family of
//! curves fibered over the common moduli variety, a map into the surface, a
//! restriction to the universal gluing locus, and the class of that locus
//! inside the family.  The computation forms two pushed-down indices — one
//! of a rank-3 character of the surfaces, one of the twisted relative
//! tangents — takes their difference (a rank-zero K-class), and integrates
//! its total Chern class against that of the moduli tangent bundle.
//!
//! Every consistency condition that the geometry forces is checked along
//! the way: the gluing locus is a section of each family (so its class
//! restricts like the relative tangent), the two families restrict to the
//! same data on the gluing locus, and the final classes are integral.

use crate::chow::{same_ring, ChowClass};
use crate::delpezzo::{check_config, e_character, ComponentSurface, SncConfiguration};
use crate::error::{Error, Result};
use crate::ktheory::{ch_to_chern, KClass};
use crate::pushforward::{Pushforward, RingMap};
use crate::variety::{BundleData, Variety};
use crate::bigrat::{self, rat};

/// One component's curve family.
pub struct CurveFamilyComponent {
    pub label: String,
    /// Which classified surface this is.
    pub surface: ComponentSurface,
    /// The surface with its ring, as built by [`ComponentSurface::build`].
    pub surface_variety: Variety,
    /// The total space of the family of curves.
    pub family: Variety,
    /// Integration along the fibers of the family over the moduli.
    pub to_moduli: Pushforward,
    /// The pullback induced by the map from the family to the surface.
    pub from_surface: RingMap,
    /// Restriction to the universal gluing locus.
    pub to_divisor: RingMap,
    /// The class of the gluing locus inside the family.
    pub divisor_class: ChowClass,
}

/// The universal gluing locus, identified with the moduli.
pub struct GluedDivisor {
    pub variety: Variety,
    pub to_moduli: Pushforward,
}

/// A complete two-component family over a moduli variety.
pub struct FamilySetup {
    pub config: SncConfiguration,
    pub moduli: Variety,
    pub components: Vec<CurveFamilyComponent>,
    pub divisor: GluedDivisor,
    /// Human-readable name of the curve class being counted, written as a
    /// sum of one class per component.  Carried into reports, never parsed.
    pub curve_class_label: String,
}

/// A pushed-down index of per-component data on a glued family: the rows
/// contributed by each component, the correction along the gluing locus,
/// and the total `rows[0] + rows[1] - node`.
pub struct FamilyIndex {
    pub rows: Vec<KClass>,
    pub node: KClass,
    pub total: KClass,
}

/// The full output of the genus-zero computation.
pub struct GwOutcome {
    pub bundle_index: FamilyIndex,
    pub tangent_index: FamilyIndex,
    /// Tangent index minus bundle index; always of rank zero.
    pub difference: KClass,
    pub difference_chern: ChowClass,
    pub moduli_chern: ChowClass,
    pub invariant: i64,
}

/// The output of the shortcut through the dualizing sheaf of the glued
/// boundary curve, available over a one-dimensional moduli.
pub struct DualizingOutcome {
    pub index: FamilyIndex,
    pub index_chern: ChowClass,
    pub chern_inverse: ChowClass,
    pub invariant: i64,
}

impl FamilySetup {
    /// Checks the wiring of the setup: the underlying configuration is
    /// valid, every map connects the rings it should, the gluing locus is
    /// a section of each family, and restriction commutes with pulling
    /// back from the moduli.
    pub fn validate(&self) -> Result<()> {
        check_config(&self.config)?;
        if self.config.components.len() != 2 || self.components.len() != 2 {
            return Err(Error::Unsupported(
                "families are implemented for two-component configurations".into(),
            ));
        }
        if !same_ring(self.divisor.to_moduli.source(), self.divisor.variety.ring())
            || !same_ring(self.divisor.to_moduli.target(), self.moduli.ring())
        {
            return Err(Error::Inconsistent(
                "the gluing locus is not mapped to the moduli".into(),
            ));
        }
        for (i, comp) in self.components.iter().enumerate() {
            if self.config.components[i].surface != comp.surface {
                return Err(Error::Inconsistent(format!(
                    "family {i} is attached to {} but the configuration lists {}",
                    comp.surface.label(),
                    self.config.components[i].surface.label()
                )));
            }
            if comp.surface_variety.ring().describe() != comp.surface.build().ring().describe() {
                return Err(Error::Inconsistent(format!(
                    "the surface ring of family {i} does not present {}",
                    comp.surface.label()
                )));
            }
            let family_ring = comp.family.ring();
            if !same_ring(comp.from_surface.source(), comp.surface_variety.ring())
                || !same_ring(comp.from_surface.target(), family_ring)
                || !same_ring(comp.to_moduli.source(), family_ring)
                || !same_ring(comp.to_moduli.target(), self.moduli.ring())
                || !same_ring(comp.to_divisor.source(), family_ring)
                || !same_ring(comp.to_divisor.target(), self.divisor.variety.ring())
                || !same_ring(comp.divisor_class.ring(), family_ring)
            {
                return Err(Error::Inconsistent(format!(
                    "the maps of family {i} do not connect its rings"
                )));
            }
            if comp.divisor_class != comp.divisor_class.graded_part(1) {
                return Err(Error::DegreeMismatch(format!(
                    "the gluing locus class of family {i} must be homogeneous of degree 1"
                )));
            }
            // The gluing locus is a section, so its normal bundle is the
            // relative tangent: both classes must restrict equally.
            let relative = comp.to_moduli.relative_tangent()?;
            let from_tangent = comp.to_divisor.apply(&relative.ch1())?;
            let from_class = comp.to_divisor.apply(&comp.divisor_class)?;
            if from_tangent != from_class {
                return Err(Error::Inconsistent(format!(
                    "the gluing locus of family {i} is not a section: its class restricts \
                     to {from_class} but the relative tangent restricts to {from_tangent}"
                )));
            }
            // Restricting a pullback from the moduli must agree with
            // pulling back along the identification of the locus.
            for spec in self.moduli.ring().variables() {
                let generator = ChowClass::generator(self.moduli.ring(), &spec.name)
                    .expect("moduli generators exist");
                let through_family = comp.to_divisor.apply(&comp.to_moduli.pullback(&generator)?)?;
                let direct = self.divisor.to_moduli.pullback(&generator)?;
                if through_family != direct {
                    return Err(Error::Inconsistent(format!(
                        "restriction of family {i} does not commute with pulling back `{}`",
                        spec.name
                    )));
                }
            }
        }
        Ok(())
    }

    fn boundary_class(&self, i: usize) -> Result<ChowClass> {
        let comp = &self.components[i];
        comp.surface
            .curve_to_class(&comp.surface_variety, &self.config.components[i].boundary[0])
    }
}

/// Pushes per-component K-classes down to the moduli and combines them
/// into one index for the glued family: each family contributes the index
/// of its class, and the overcounted contribution along the gluing locus
/// is subtracted.  The two classes must restrict to the same data on the
/// locus; this is checked and the common restriction is used.
pub fn family_index_bundle(setup: &FamilySetup, bundles: &[KClass; 2]) -> Result<FamilyIndex> {
    let restricted: Vec<KClass> = setup
        .components
        .iter()
        .zip(bundles.iter())
        .map(|(comp, v)| comp.to_divisor.apply_k(v))
        .collect::<Result<_>>()?;
    if restricted[0] != restricted[1] {
        return Err(Error::Inconsistent(format!(
            "the two families restrict differently to the gluing locus: {} vs {}",
            restricted[0].ch(),
            restricted[1].ch()
        )));
    }
    let rows: Vec<KClass> = setup
        .components
        .iter()
        .zip(bundles.iter())
        .map(|(comp, v)| comp.to_moduli.grr_index(&comp.to_moduli.relative_tangent()?, v))
        .collect::<Result<_>>()?;
    let node = setup
        .divisor
        .to_moduli
        .grr_index(&KClass::zero(setup.divisor.variety.ring()), &restricted[0])?;
    let total = rows[0].add(&rows[1])?.sub(&node)?;
    Ok(FamilyIndex { rows, node, total })
}

/// The index of the relative tangents twisted down by the gluing locus,
/// corrected by the tensor product of their restrictions to the locus.
pub fn relative_tangent_index(setup: &FamilySetup) -> Result<FamilyIndex> {
    let mut rows = vec![];
    let mut restrictions = vec![];
    for comp in &setup.components {
        let relative = comp.to_moduli.relative_tangent()?;
        let negated = ChowClass::zero(comp.family.ring()).checked_sub(&comp.divisor_class)?;
        let twisted = relative.tensor(&KClass::line_bundle(&negated)?)?;
        rows.push(comp.to_moduli.grr_index(&relative, &twisted)?);
        restrictions.push(comp.to_divisor.apply(&relative.ch1())?);
    }
    let node_bundle = KClass::line_bundle(&restrictions[0].checked_add(&restrictions[1])?)?;
    let node = setup
        .divisor
        .to_moduli
        .grr_index(&KClass::zero(setup.divisor.variety.ring()), &node_bundle)?;
    let total = rows[0].add(&rows[1])?.sub(&node)?;
    Ok(FamilyIndex { rows, node, total })
}

fn integral_chern(k: &KClass, what: &str) -> Result<ChowClass> {
    let chern = ch_to_chern(k)?;
    if !chern.is_integral() {
        return Err(Error::NotAnInteger(format!("{what}: {chern}")));
    }
    Ok(chern)
}

/// The genus-zero local invariant of the configuration, computed from the
/// family setup.  See the module documentation for the steps.
pub fn local_gw_genus0(setup: &FamilySetup) -> Result<GwOutcome> {
    setup.validate()?;

    // The rank-3 character of each surface, dualized and pulled back to
    // the family.
    let characters: Vec<KClass> = setup
        .components
        .iter()
        .map(|comp| comp.from_surface.apply_k(&e_character(&comp.surface_variety)?.dual()))
        .collect::<Result<_>>()?;
    let bundle_index = family_index_bundle(setup, &[characters[0].clone(), characters[1].clone()])?;
    let tangent_index = relative_tangent_index(setup)?;

    let difference = tangent_index.total.sub(&bundle_index.total)?;
    if difference.rank() != 0 {
        return Err(Error::Inconsistent(format!(
            "the index difference has rank {}, expected 0",
            difference.rank()
        )));
    }
    let difference_chern = integral_chern(&difference, "the index difference Chern class")?;
    let moduli_chern = integral_chern(setup.moduli.tangent_ch(), "the moduli Chern class")?;

    let product = difference_chern.checked_mul(&moduli_chern)?;
    let top = setup.moduli.integrate(&product.graded_part(setup.moduli.dim()))?;
    let invariant = bigrat::to_i64(&top)
        .ok_or_else(|| Error::NotAnInteger(format!("the invariant: {}", bigrat::display(&top))))?;

    Ok(GwOutcome {
        bundle_index,
        tangent_index,
        difference,
        difference_chern,
        moduli_chern,
        invariant,
    })
}

/// The same invariant through the dualizing sheaf of the glued boundary:
/// the index of the log-canonical line bundles of the two surfaces, pulled
/// back to the families.  Over a one-dimensional moduli its negated total
/// Chern class integrates to the invariant; higher-dimensional moduli are
/// out of this shortcut's scope because the rank bookkeeping no longer
/// matches.
pub fn local_gw_genus0_dualizing(setup: &FamilySetup) -> Result<DualizingOutcome> {
    setup.validate()?;
    if setup.moduli.dim() != 1 {
        return Err(Error::Unsupported(format!(
            "the dualizing-sheaf shortcut needs a one-dimensional moduli, got dimension {}",
            setup.moduli.dim()
        )));
    }

    let mut bundles = vec![];
    for (i, comp) in setup.components.iter().enumerate() {
        let log_canonical = comp
            .surface_variety
            .canonical_class()
            .checked_add(&setup.boundary_class(i)?)?;
        bundles.push(KClass::line_bundle(&comp.from_surface.apply(&log_canonical)?)?);
    }
    let index = family_index_bundle(setup, &[bundles[0].clone(), bundles[1].clone()])?;
    if index.total.rank() != -1 {
        return Err(Error::Inconsistent(format!(
            "the dualizing index has rank {}, expected -1",
            index.total.rank()
        )));
    }
    let index_chern = ch_to_chern(&index.total)?;
    let chern_inverse = index_chern.inverse()?;
    if !chern_inverse.is_integral() {
        return Err(Error::NotAnInteger(format!(
            "the inverted Chern class: {chern_inverse}"
        )));
    }
    let top = setup.moduli.integrate(&chern_inverse.graded_part(setup.moduli.dim()))?;
    let invariant = bigrat::to_i64(&top)
        .ok_or_else(|| Error::NotAnInteger(format!("the invariant: {}", bigrat::display(&top))))?;

    Ok(DualizingOutcome { index, index_chern, chern_inverse, invariant })
}

/// Builds one of the two families shipped with the tool.
///
/// `"f1f1"` is the pencil of fibers on two copies of `F1` glued along
/// their negative sections; `"p2f6"` is the two-parameter family of conic
/// sections on the plane glued to `F6` along a conic.
pub fn builtin_example(name: &str) -> Result<FamilySetup> {
    match name {
        "f1f1" => {
            let config = SncConfiguration::pair(
                ComponentSurface::Hirzebruch(1),
                crate::delpezzo::CurveClass::RuledCurve { e: 1, f: 0 },
                ComponentSurface::Hirzebruch(1),
                crate::delpezzo::CurveClass::RuledCurve { e: 1, f: 0 },
            );
            let moduli = Variety::projective_space_named(1, "t")?.with_label("pencil base");
            let locus = Variety::projective_space_named(1, "t")?.with_label("gluing locus");
            let locus_map = RingMap::new(
                locus.ring(),
                moduli.ring(),
                vec![ChowClass::generator(moduli.ring(), "t")?],
            )?;
            let divisor =
                GluedDivisor { variety: locus.clone(), to_moduli: Pushforward::isomorphism(locus_map)? };

            let mut components = vec![];
            for i in 0..2 {
                let surface_variety = ComponentSurface::Hirzebruch(1).build();
                let family = Variety::hirzebruch(1).with_label(&format!("fiber family {}", i + 1));
                let to_moduli = Pushforward::projective_bundle(
                    family.ring(),
                    moduli.ring(),
                    "e",
                    &[("f", "t")],
                )?;
                let from_surface = RingMap::new(
                    surface_variety.ring(),
                    family.ring(),
                    vec![
                        ChowClass::generator(family.ring(), "f")?,
                        ChowClass::generator(family.ring(), "e")?,
                    ],
                )?;
                let t = ChowClass::generator(locus.ring(), "t")?;
                let to_divisor = RingMap::new(
                    family.ring(),
                    locus.ring(),
                    vec![t.clone(), t.scale(&rat(-1))],
                )?;
                let divisor_class = ChowClass::generator(family.ring(), "e")?;
                components.push(CurveFamilyComponent {
                    label: format!("component {}", i + 1),
                    surface: ComponentSurface::Hirzebruch(1),
                    surface_variety,
                    family,
                    to_moduli,
                    from_surface,
                    to_divisor,
                    divisor_class,
                });
            }
            Ok(FamilySetup {
                config,
                moduli,
                components,
                divisor,
                curve_class_label: "f + f".into(),
            })
        }
        "p2f6" => {
            let config = SncConfiguration::pair(
                ComponentSurface::Plane,
                crate::delpezzo::CurveClass::PlaneCurve(2),
                ComponentSurface::Hirzebruch(6),
                crate::delpezzo::CurveClass::RuledCurve { e: 1, f: 0 },
            );
            let two_lines = || -> Result<Variety> {
                Variety::product(
                    &Variety::projective_space_named(1, "f1")?,
                    &Variety::projective_space_named(1, "f2")?,
                )
            };
            let moduli = two_lines()?.with_label("conic moduli");
            let locus = two_lines()?.with_label("gluing locus");
            let locus_map = RingMap::new(
                locus.ring(),
                moduli.ring(),
                vec![
                    ChowClass::generator(moduli.ring(), "f1")?,
                    ChowClass::generator(moduli.ring(), "f2")?,
                ],
            )?;
            let divisor =
                GluedDivisor { variety: locus.clone(), to_moduli: Pushforward::isomorphism(locus_map)? };

            // First family: a projective bundle of conic sections over the
            // moduli, mapping to the plane by the relative hyperplane.
            let plane = ComponentSurface::Plane.build();
            let chern = {
                let f1 = ChowClass::generator(moduli.ring(), "f1")?;
                let f2 = ChowClass::generator(moduli.ring(), "f2")?;
                ChowClass::one(moduli.ring())
                    .checked_add(&f1.checked_add(&f2)?)?
                    .checked_add(&f1.checked_mul(&f2)?.scale(&rat(2)))?
            };
            let conic_family = Variety::projective_bundle(&moduli, &BundleData::new(2, chern), "h")?
                .with_label("conic family");
            let to_moduli_1 = Pushforward::projective_bundle(
                conic_family.ring(),
                moduli.ring(),
                "h",
                &[("f1", "f1"), ("f2", "f2")],
            )?;
            let from_surface_1 = RingMap::new(
                plane.ring(),
                conic_family.ring(),
                vec![ChowClass::generator(conic_family.ring(), "h")?],
            )?;
            let to_divisor_1 = {
                let f1 = ChowClass::generator(locus.ring(), "f1")?;
                let f2 = ChowClass::generator(locus.ring(), "f2")?;
                RingMap::new(
                    conic_family.ring(),
                    locus.ring(),
                    vec![f1.clone(), f2, f1.scale(&rat(2))],
                )?
            };
            let divisor_class_1 = crate::chow::parse_class(conic_family.ring(), "h+f1-f2")?;

            // Second family: the section curves of F6 carried along a
            // second parameter line.
            let ruled = ComponentSurface::Hirzebruch(6).build();
            let section_family = Variety::product(
                &Variety::hirzebruch(6),
                &Variety::projective_space_named(1, "g")?,
            )?
            .with_label("section family");
            let to_moduli_2 = Pushforward::projective_bundle(
                section_family.ring(),
                moduli.ring(),
                "e",
                &[("f", "f1"), ("g", "f2")],
            )?;
            let from_surface_2 = RingMap::new(
                ruled.ring(),
                section_family.ring(),
                vec![
                    ChowClass::generator(section_family.ring(), "f")?,
                    ChowClass::generator(section_family.ring(), "e")?,
                ],
            )?;
            let to_divisor_2 = {
                let f1 = ChowClass::generator(locus.ring(), "f1")?;
                let f2 = ChowClass::generator(locus.ring(), "f2")?;
                RingMap::new(
                    section_family.ring(),
                    locus.ring(),
                    vec![f1.clone(), f1.scale(&rat(-6)), f2],
                )?
            };
            let divisor_class_2 = ChowClass::generator(section_family.ring(), "e")?;

            Ok(FamilySetup {
                config,
                moduli,
                components: vec![
                    CurveFamilyComponent {
                        label: "conic side".into(),
                        surface: ComponentSurface::Plane,
                        surface_variety: plane,
                        family: conic_family,
                        to_moduli: to_moduli_1,
                        from_surface: from_surface_1,
                        to_divisor: to_divisor_1,
                        divisor_class: divisor_class_1,
                    },
                    CurveFamilyComponent {
                        label: "section side".into(),
                        surface: ComponentSurface::Hirzebruch(6),
                        surface_variety: ruled,
                        family: section_family,
                        to_moduli: to_moduli_2,
                        from_surface: from_surface_2,
                        to_divisor: to_divisor_2,
                        divisor_class: divisor_class_2,
                    },
                ],
                divisor,
                curve_class_label: "l + f".into(),
            })
        }
        other => Err(Error::UnknownExample(other.into())),
    }
}
