//! On-disk description of a family setup.
//!
//! The format is a sectioned TOML file whose values are expression strings
//! in the same grammar the engine prints: a `[moduli]` space, a `[divisor]`
//! section identifying the gluing locus with the moduli, and one
//! `[[component]]` section per surface with its family, maps, and declared
//! sheaf character.  Spaces are written as products of atoms — `point`,
//! `P<n>[var]`, `F<n>`, or (for a family over the moduli)
//! `bundle(<var>; <total chern>)` — separated by ` x `.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chow::{parse_class, Ring};
use crate::delpezzo::{e_character, ComponentSurface, SncConfiguration};
use crate::error::{Error, Result};
use crate::ktheory::KClass;
use crate::localgw::{CurveFamilyComponent, FamilySetup, GluedDivisor};
use crate::pushforward::{Pushforward, RingMap};
use crate::variety::{BundleData, Variety};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Name of the counted curve class, one summand per component.  Free
    /// text, echoed into reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_class: Option<String>,
    pub moduli: SpaceSection,
    pub divisor: DivisorSection,
    #[serde(rename = "component")]
    pub components: Vec<ComponentSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceSection {
    pub space: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorSection {
    pub space: String,
    /// Images of the locus generators in the moduli ring; must describe an
    /// isomorphism.
    pub to_moduli: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// The surface, `P2` or `F<n>`; its ring variables are fixed (`l`
    /// for the plane, `f` and `e` otherwise).
    pub surface: String,
    /// The boundary curve on the surface, e.g. `2*l` or `e`.
    pub boundary: String,
    /// The total space of the curve family, in the space grammar.
    pub family: String,
    /// The family variable whose fibers are collapsed to the moduli.
    pub fiber_variable: String,
    /// The class of the gluing locus inside the family.
    pub divisor_class: String,
    /// The rank-3 character of the surface, declared for the record and
    /// checked against the computed one.
    pub character: String,
    /// Images of the non-fiber family variables in the moduli ring
    /// (variable names only).
    pub to_moduli: BTreeMap<String, String>,
    /// Images of the surface generators in the family ring.
    pub from_surface: BTreeMap<String, String>,
    /// Images of the family generators in the gluing-locus ring.
    pub to_divisor: BTreeMap<String, String>,
}

fn syntax(text: &str, what: &str) -> Error {
    Error::Syntax { at: 0, what: format!("{what}: `{text}`") }
}

/// Splits a space expression on ` x ` at parenthesis depth zero.
fn split_factors(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut parts = vec![];
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth = depth.saturating_sub(1),
            b'x' if depth == 0
                && i > 0
                && bytes[i - 1] == b' '
                && i + 1 < bytes.len()
                && bytes[i + 1] == b' ' =>
            {
                parts.push(text[start..i - 1].trim());
                start = i + 2;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(text[start..].trim());
    parts
}

fn parse_atom(atom: &str, base: Option<&Variety>) -> Result<Variety> {
    if atom == "point" {
        return Ok(Variety::point());
    }
    if let Some(rest) = atom.strip_prefix('P') {
        let (n, var) = rest
            .split_once('[')
            .and_then(|(n, v)| Some((n, v.strip_suffix(']')?)))
            .ok_or_else(|| syntax(atom, "projective spaces are written `P<n>[var]`"))?;
        let n: u32 = n.parse().map_err(|_| syntax(atom, "bad projective dimension"))?;
        return Variety::projective_space_named(n, var);
    }
    if let Some(rest) = atom.strip_prefix('F') {
        let n: u32 = rest.parse().map_err(|_| syntax(atom, "bad ruled-surface index"))?;
        return Ok(Variety::hirzebruch(n));
    }
    if let Some(rest) = atom.strip_prefix("bundle(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| syntax(atom, "unclosed `bundle(...)`"))?;
        let (xi, chern) = inner
            .split_once(';')
            .ok_or_else(|| syntax(atom, "bundles are written `bundle(<var>; <chern>)`"))?;
        let base = base.ok_or_else(|| {
            Error::InputFile("`bundle(...)` is only available for component families".into())
        })?;
        let chern = parse_class(base.ring(), chern.trim())?;
        return Variety::projective_bundle(base, &BundleData::new(2, chern), xi.trim());
    }
    Err(syntax(atom, "unknown space"))
}

/// Parses a space expression; `base` is the moduli when `bundle(...)` is
/// allowed.
pub fn parse_space(text: &str, base: Option<&Variety>) -> Result<Variety> {
    let factors = split_factors(text);
    if factors.len() > 1 && factors.iter().any(|f| f.starts_with("bundle(")) {
        return Err(syntax(text, "`bundle(...)` must be the whole space"));
    }
    let mut space = parse_atom(factors[0], base)?;
    for factor in &factors[1..] {
        space = Variety::product(&space, &parse_atom(factor, None)?)?;
    }
    Ok(space)
}

fn parse_surface(text: &str) -> Result<ComponentSurface> {
    match text {
        "P2" => Ok(ComponentSurface::Plane),
        _ => match text.strip_prefix('F').and_then(|n| n.parse().ok()) {
            Some(n) => Ok(ComponentSurface::Hirzebruch(n)),
            None => Err(syntax(text, "surfaces are written `P2` or `F<n>`")),
        },
    }
}

/// Looks up an image for every source generator, in ring order, and
/// rejects entries that name no generator.
fn images_in_order(
    map: &BTreeMap<String, String>,
    source: &Ring,
    target: &Ring,
    section: &str,
) -> Result<Vec<crate::chow::ChowClass>> {
    for key in map.keys() {
        if !source.variables().iter().any(|v| &v.name == key) {
            return Err(Error::InputFile(format!(
                "{section}: `{key}` is not a generator of the source ring"
            )));
        }
    }
    source
        .variables()
        .iter()
        .map(|spec| {
            let text = map.get(&spec.name).ok_or_else(|| {
                Error::InputFile(format!("{section}: missing image for `{}`", spec.name))
            })?;
            parse_class(target, text)
        })
        .collect()
}

/// Builds the full family setup described by the file.
pub fn assemble(spec: &EvalSpec) -> Result<FamilySetup> {
    if spec.components.len() != 2 {
        return Err(Error::Unsupported(format!(
            "exactly two `[[component]]` sections are supported, found {}",
            spec.components.len()
        )));
    }
    let moduli = parse_space(&spec.moduli.space, None)?.with_label(&spec.moduli.space);
    let locus = parse_space(&spec.divisor.space, None)?.with_label("gluing locus");
    let iso = RingMap::new(
        locus.ring(),
        moduli.ring(),
        images_in_order(&spec.divisor.to_moduli, locus.ring(), moduli.ring(), "divisor.to_moduli")?,
    )?;
    let divisor = GluedDivisor { variety: locus.clone(), to_moduli: Pushforward::isomorphism(iso)? };

    let mut surfaces = vec![];
    let mut components = vec![];
    for (i, section) in spec.components.iter().enumerate() {
        let surface = parse_surface(&section.surface)?;
        let surface_variety = surface.build();
        let boundary = surface.class_to_curve(&parse_class(surface_variety.ring(), &section.boundary)?)?;
        let declared = KClass::from_ch(parse_class(surface_variety.ring(), &section.character)?)?;
        if declared != e_character(&surface_variety)? {
            return Err(Error::Inconsistent(format!(
                "component {i}: the declared character {} is not the character of {}",
                declared.ch(),
                surface.label()
            )));
        }
        let label = section.label.clone().unwrap_or_else(|| format!("component {}", i + 1));
        let family = parse_space(&section.family, Some(&moduli))?.with_label(&label);
        let pairs: Vec<(&str, &str)> = section
            .to_moduli
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        let to_moduli = Pushforward::projective_bundle(
            family.ring(),
            moduli.ring(),
            &section.fiber_variable,
            &pairs,
        )?;
        let from_surface = RingMap::new(
            surface_variety.ring(),
            family.ring(),
            images_in_order(
                &section.from_surface,
                surface_variety.ring(),
                family.ring(),
                "component.from_surface",
            )?,
        )?;
        let to_divisor = RingMap::new(
            family.ring(),
            divisor.variety.ring(),
            images_in_order(
                &section.to_divisor,
                family.ring(),
                divisor.variety.ring(),
                "component.to_divisor",
            )?,
        )?;
        let divisor_class = parse_class(family.ring(), &section.divisor_class)?;
        surfaces.push((surface, boundary));
        components.push(CurveFamilyComponent {
            label,
            surface,
            surface_variety,
            family,
            to_moduli,
            from_surface,
            to_divisor,
            divisor_class,
        });
    }
    let config =
        SncConfiguration::pair(surfaces[0].0, surfaces[0].1, surfaces[1].0, surfaces[1].1);
    let curve_class_label = spec.curve_class.clone().unwrap_or_default();
    Ok(FamilySetup { config, moduli, components, divisor, curve_class_label })
}

/// Renders a spec in the file format; the shipped samples are exactly this
/// output.
pub fn to_eval_string(spec: &EvalSpec) -> String {
    toml::to_string_pretty(spec).expect("specs serialize")
}

fn pairs(entries: &[(&str, &str)]) -> BTreeMap<String, String> {
    entries.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// The two shipped setups, as file data.
pub fn builtin_spec(name: &str) -> Result<EvalSpec> {
    match name {
        "f1f1" => {
            let component = |label: &str| ComponentSection {
                label: Some(label.into()),
                surface: "F1".into(),
                boundary: "e".into(),
                family: "F1".into(),
                fiber_variable: "e".into(),
                divisor_class: "e".into(),
                character: "3+4*f*e".into(),
                to_moduli: pairs(&[("f", "t")]),
                from_surface: pairs(&[("f", "f"), ("e", "e")]),
                to_divisor: pairs(&[("f", "t"), ("e", "-t")]),
            };
            Ok(EvalSpec {
                label: Some("two F1 pencils glued along the negative sections".into()),
                curve_class: Some("f + f".into()),
                moduli: SpaceSection { space: "P1[t]".into() },
                divisor: DivisorSection {
                    space: "P1[t]".into(),
                    to_moduli: pairs(&[("t", "t")]),
                },
                components: vec![component("component 1"), component("component 2")],
            })
        }
        "p2f6" => Ok(EvalSpec {
            label: Some("plane conics glued to sections of F6".into()),
            curve_class: Some("l + f".into()),
            moduli: SpaceSection { space: "P1[f1] x P1[f2]".into() },
            divisor: DivisorSection {
                space: "P1[f1] x P1[f2]".into(),
                to_moduli: pairs(&[("f1", "f1"), ("f2", "f2")]),
            },
            components: vec![
                ComponentSection {
                    label: Some("conic side".into()),
                    surface: "P2".into(),
                    boundary: "2*l".into(),
                    family: "bundle(h; 1+f1+f2+2*f1*f2)".into(),
                    fiber_variable: "h".into(),
                    divisor_class: "h+f1-f2".into(),
                    character: "3+6*l^2".into(),
                    to_moduli: pairs(&[("f1", "f1"), ("f2", "f2")]),
                    from_surface: pairs(&[("l", "h")]),
                    to_divisor: pairs(&[("f1", "f1"), ("f2", "f2"), ("h", "2*f1")]),
                },
                ComponentSection {
                    label: Some("section side".into()),
                    surface: "F6".into(),
                    boundary: "e".into(),
                    family: "F6 x P1[g]".into(),
                    fiber_variable: "e".into(),
                    divisor_class: "e".into(),
                    character: "3+4*f*e".into(),
                    to_moduli: pairs(&[("f", "f1"), ("g", "f2")]),
                    from_surface: pairs(&[("f", "f"), ("e", "e")]),
                    to_divisor: pairs(&[("f", "f1"), ("e", "-6*f1"), ("g", "f2")]),
                },
            ],
        }),
        other => Err(Error::UnknownExample(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localgw::{builtin_example, local_gw_genus0};

    #[test]
    fn space_grammar_builds_the_usual_spaces() {
        assert_eq!(parse_space("point", None).unwrap().dim(), 0);
        let line = parse_space("P1[t]", None).unwrap();
        assert_eq!(line.ring().describe(), Variety::projective_space_named(1, "t").unwrap().ring().describe());
        let square = parse_space("P1[f1] x P1[f2]", None).unwrap();
        assert_eq!(square.dim(), 2);
        assert_eq!(parse_space("F6 x P1[g]", None).unwrap().dim(), 3);

        assert!(matches!(parse_space("Q3", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_space("P1", None), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_space("bundle(h; 1)", None),
            Err(Error::InputFile(_))
        ));
        let bundled = parse_space("bundle(h; 1+f1+f2+2*f1*f2)", Some(&square)).unwrap();
        assert_eq!(bundled.dim(), 3);
        assert!(matches!(
            parse_space("bundle(h; 1) x P1[g]", Some(&square)),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn image_maps_must_cover_the_source_exactly() {
        let line = Variety::projective_space_named(1, "t").unwrap();
        let square = parse_space("P1[f1] x P1[f2]", None).unwrap();
        let missing = pairs(&[("f1", "t")]);
        assert!(matches!(
            images_in_order(&missing, square.ring(), line.ring(), "test"),
            Err(Error::InputFile(_))
        ));
        let stray = pairs(&[("f1", "t"), ("f2", "0"), ("g", "t")]);
        assert!(matches!(
            images_in_order(&stray, square.ring(), line.ring(), "test"),
            Err(Error::InputFile(_))
        ));
    }

    #[test]
    fn assembled_specs_match_the_builtin_families() {
        for name in ["f1f1", "p2f6"] {
            let from_file = assemble(&builtin_spec(name).unwrap()).unwrap();
            let direct = builtin_example(name).unwrap();
            let a = local_gw_genus0(&from_file).unwrap();
            let b = local_gw_genus0(&direct).unwrap();
            assert_eq!(a.invariant, b.invariant);
            assert_eq!(a.difference_chern.to_string(), b.difference_chern.to_string());
            assert_eq!(
                a.bundle_index.total.ch().to_string(),
                b.bundle_index.total.ch().to_string()
            );
            assert_eq!(
                a.tangent_index.total.ch().to_string(),
                b.tangent_index.total.ch().to_string()
            );
        }
    }

    #[test]
    fn wrong_declared_character_is_rejected() {
        let mut spec = builtin_spec("p2f6").unwrap();
        spec.components[0].character = "3+4*l^2".into();
        assert!(matches!(assemble(&spec), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn shipped_samples_are_exactly_the_builtin_specs() {
        let f1f1 = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../samples/f1f1.toml"));
        assert_eq!(to_eval_string(&builtin_spec("f1f1").unwrap()), f1f1);
        let p2f6 = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../samples/p2f6.toml"));
        assert_eq!(to_eval_string(&builtin_spec("p2f6").unwrap()), p2f6);
    }

    #[test]
    fn specs_round_trip_through_the_file_format() {
        for name in ["f1f1", "p2f6"] {
            let spec = builtin_spec(name).unwrap();
            let text = to_eval_string(&spec);
            let back: EvalSpec = toml::from_str(&text).unwrap();
            assert_eq!(to_eval_string(&back), text);
            assemble(&back).unwrap();
        }
    }
}
