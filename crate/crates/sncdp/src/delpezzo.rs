//! Surfaces with simple normal crossings whose components are planes and
//! Hirzebruch surfaces, glued along smooth rational curves.
//!
//! A configuration records the component surfaces, the boundary curve
//! classes on each, and which boundary curves are identified.  Validity
//! means: every boundary class contains a smooth rational curve, every
//! identified pair of curves has self-intersections summing to -2, the
//! anticanonical class minus the boundary is ample on every component, and
//! boundary curves on one component meet each other exactly at the triple
//! points forced by the gluing graph.
//!
//! `classify` enumerates all valid configurations with two or three
//! components up to the stated bounds on the Hirzebruch index and the
//! section twisting, and reports whether the bounds are large enough for
//! the enumeration to be exhaustive.

use std::collections::BTreeSet;
use std::fmt;

use crate::bigrat::{self, frac, rat};
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::ktheory::KClass;
use crate::variety::Variety;

/// A surface that may appear as a component: the plane (curve classes are
/// multiples of the line `l`) or a Hirzebruch surface `F_n` (curve classes
/// are combinations of the `(-n)`-section `e` and the fiber `f`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentSurface {
    Plane,
    Hirzebruch(u32),
}

/// An integral curve class on a component surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveClass {
    /// `d` times the line on the plane.
    PlaneCurve(i64),
    /// `e_coeff * e + f_coeff * f` on a Hirzebruch surface.
    RuledCurve { e: i64, f: i64 },
}

impl fmt::Display for CurveClass {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn monomial(out: &mut fmt::Formatter<'_>, c: i64, name: &str, lead: bool) -> fmt::Result {
            let sign = if c < 0 {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            match c.abs() {
                1 => write!(out, "{sign}{name}"),
                a => write!(out, "{sign}{a}*{name}"),
            }
        }
        match self {
            CurveClass::PlaneCurve(0) => write!(out, "0"),
            CurveClass::PlaneCurve(d) => monomial(out, *d, "l", true),
            CurveClass::RuledCurve { e: 0, f: 0 } => write!(out, "0"),
            CurveClass::RuledCurve { e, f } => {
                if *e != 0 {
                    monomial(out, *e, "e", true)?;
                }
                if *f != 0 {
                    monomial(out, *f, "f", *e == 0)?;
                }
                Ok(())
            }
        }
    }
}

impl ComponentSurface {
    pub fn label(&self) -> String {
        match self {
            ComponentSurface::Plane => "P2".into(),
            ComponentSurface::Hirzebruch(n) => format!("F{n}"),
        }
    }

    /// Builds the surface with its ring: the plane uses the variable `l`,
    /// a Hirzebruch surface uses `f` and `e`.
    pub fn build(&self) -> Variety {
        match self {
            ComponentSurface::Plane => Variety::projective_space_named(2, "l")
                .expect("plane variables are valid"),
            ComponentSurface::Hirzebruch(n) => Variety::hirzebruch(*n),
        }
    }

    pub fn canonical_curve(&self) -> CurveClass {
        match self {
            ComponentSurface::Plane => CurveClass::PlaneCurve(-3),
            ComponentSurface::Hirzebruch(n) => {
                CurveClass::RuledCurve { e: -2, f: -(*n as i64 + 2) }
            }
        }
    }

    fn expect_plane_curve(&self, c: &CurveClass) -> i64 {
        match c {
            CurveClass::PlaneCurve(d) => *d,
            _ => panic!("a ruled curve class was used on the plane"),
        }
    }

    fn expect_ruled_curve(&self, c: &CurveClass) -> (i64, i64) {
        match c {
            CurveClass::RuledCurve { e, f } => (*e, *f),
            _ => panic!("a plane curve class was used on a ruled surface"),
        }
    }

    pub fn intersection(&self, a: &CurveClass, b: &CurveClass) -> i64 {
        match self {
            ComponentSurface::Plane => self.expect_plane_curve(a) * self.expect_plane_curve(b),
            ComponentSurface::Hirzebruch(n) => {
                let (ae, af) = self.expect_ruled_curve(a);
                let (be, bf) = self.expect_ruled_curve(b);
                -(*n as i64) * ae * be + ae * bf + af * be
            }
        }
    }

    pub fn self_intersection(&self, c: &CurveClass) -> i64 {
        self.intersection(c, c)
    }

    pub fn is_ample(&self, c: &CurveClass) -> bool {
        match self {
            ComponentSurface::Plane => self.expect_plane_curve(c) > 0,
            ComponentSurface::Hirzebruch(n) => {
                let (a, b) = self.expect_ruled_curve(c);
                a > 0 && b > *n as i64 * a
            }
        }
    }

    /// `-(K + sum of the boundary curves)`, the class that must be ample
    /// for the component to qualify.
    pub fn log_anticanonical(&self, boundary: &[CurveClass]) -> CurveClass {
        match self {
            ComponentSurface::Plane => {
                let total: i64 = boundary.iter().map(|c| self.expect_plane_curve(c)).sum();
                CurveClass::PlaneCurve(3 - total)
            }
            ComponentSurface::Hirzebruch(n) => {
                let mut e = 2i64;
                let mut f = *n as i64 + 2;
                for c in boundary {
                    let (ce, cf) = self.expect_ruled_curve(c);
                    e -= ce;
                    f -= cf;
                }
                CurveClass::RuledCurve { e, f }
            }
        }
    }

    /// Whether the class contains a smooth irreducible rational curve: on
    /// the plane a line or a conic; on `F_n` the fiber, the negative
    /// section, or a section `e + b f` with `b >= n`.
    pub fn is_smooth_rational(&self, c: &CurveClass) -> bool {
        match self {
            ComponentSurface::Plane => matches!(c, CurveClass::PlaneCurve(1 | 2)),
            ComponentSurface::Hirzebruch(n) => match c {
                CurveClass::RuledCurve { e: 0, f: 1 } => true,
                CurveClass::RuledCurve { e: 1, f: b } => *b == 0 || *b >= *n as i64,
                _ => false,
            },
        }
    }

    /// The smooth rational curve classes with section twisting at most
    /// `b_max`.
    pub fn smooth_rational_curves(&self, b_max: u32) -> Vec<CurveClass> {
        match self {
            ComponentSurface::Plane => {
                vec![CurveClass::PlaneCurve(1), CurveClass::PlaneCurve(2)]
            }
            ComponentSurface::Hirzebruch(n) => {
                let mut out =
                    vec![CurveClass::RuledCurve { e: 0, f: 1 }, CurveClass::RuledCurve { e: 1, f: 0 }];
                for b in *n as i64..=b_max as i64 {
                    if b == 0 {
                        continue; // e + 0 f is already listed
                    }
                    out.push(CurveClass::RuledCurve { e: 1, f: b });
                }
                out
            }
        }
    }

    /// Translates a curve class into the surface's ring.
    pub fn curve_to_class(&self, v: &Variety, c: &CurveClass) -> Result<ChowClass> {
        let gen = |name: &str| ChowClass::generator(v.ring(), name);
        match self {
            ComponentSurface::Plane => {
                let d = self.expect_plane_curve(c);
                Ok(gen("l")?.scale(&rat(d)))
            }
            ComponentSurface::Hirzebruch(_) => {
                let (a, b) = self.expect_ruled_curve(c);
                gen("e")?.scale(&rat(a)).checked_add(&gen("f")?.scale(&rat(b)))
            }
        }
    }

    /// Reads a curve class back out of the surface's ring: the class must
    /// be purely of degree 1 with integer coefficients.
    pub fn class_to_curve(&self, class: &ChowClass) -> Result<CurveClass> {
        if *class != class.graded_part(1) {
            return Err(Error::DegreeMismatch(
                "a boundary curve class must be homogeneous of degree 1".into(),
            ));
        }
        let coeff = |name: &str| -> Result<i64> {
            let ring = class.ring();
            let index = ring.variable_index(name).ok_or_else(|| {
                Error::ForeignVariable(format!("expected a ring with the variable `{name}`"))
            })?;
            let c = class.coefficient(&crate::chow::Monomial::var(ring.nvars(), index));
            bigrat::to_i64(&c)
                .ok_or_else(|| Error::NotAnInteger(format!("coefficient of `{name}`")))
        };
        match self {
            ComponentSurface::Plane => Ok(CurveClass::PlaneCurve(coeff("l")?)),
            ComponentSurface::Hirzebruch(_) => {
                Ok(CurveClass::RuledCurve { e: coeff("e")?, f: coeff("f")? })
            }
        }
    }
}

/// The K-class `[cotangent] + [dual of the canonical bundle]` of a surface;
/// it has rank 3 and trivial first Chern class, and its degree-2 part is
/// `K^2 - e(S)` times the point.
pub fn e_character(surface: &Variety) -> Result<KClass> {
    if surface.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "this character is defined for surfaces, got dimension {}",
            surface.dim()
        )));
    }
    let ring = surface.ring();
    let k = surface.canonical_class();
    let euler = surface.euler_number()?;
    let point = ChowClass::from_terms(ring, vec![(ring.point_monomial().clone(), rat(1))]);
    // ch of the cotangent bundle: 2 + K + (K^2 - 2 e(S))/2 [pt].
    let cotangent = ChowClass::scalar(ring, rat(2))
        .checked_add(k)?
        .checked_add(
            &k.pow(2).checked_sub(&point.scale(&rat(2 * euler)))?.scale(&frac(1, 2)),
        )?;
    let anticanonical = k.scale(&rat(-1)).exp()?;
    KClass::from_ch(cotangent.checked_add(&anticanonical)?)
}

/// One component of a configuration: a surface and the classes of the
/// boundary curves along which it is glued to its neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncComponent {
    pub surface: ComponentSurface,
    pub boundary: Vec<CurveClass>,
}

/// A cycle member: the surface with its incoming and outgoing boundary
/// curves.
pub type CyclePart = (ComponentSurface, CurveClass, CurveClass);

/// A configuration of surfaces glued along boundary curves.  A gluing
/// identifies boundary slot `(component, index)` with another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncConfiguration {
    pub components: Vec<SncComponent>,
    pub gluings: Vec<((usize, usize), (usize, usize))>,
}

impl SncConfiguration {
    /// Two surfaces glued along one curve each.
    pub fn pair(
        s1: ComponentSurface,
        c1: CurveClass,
        s2: ComponentSurface,
        c2: CurveClass,
    ) -> SncConfiguration {
        SncConfiguration {
            components: vec![
                SncComponent { surface: s1, boundary: vec![c1] },
                SncComponent { surface: s2, boundary: vec![c2] },
            ],
            gluings: vec![((0, 0), (1, 0))],
        }
    }

    /// Three surfaces in a cycle; each component's boundary is listed as
    /// `[incoming, outgoing]` and the outgoing curve glues to the next
    /// component's incoming one.
    pub fn cycle3(parts: [CyclePart; 3]) -> SncConfiguration {
        SncConfiguration {
            components: parts
                .into_iter()
                .map(|(s, incoming, outgoing)| SncComponent {
                    surface: s,
                    boundary: vec![incoming, outgoing],
                })
                .collect(),
            gluings: vec![((0, 1), (1, 0)), ((1, 1), (2, 0)), ((2, 1), (0, 0))],
        }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let curves: Vec<String> = c.boundary.iter().map(|b| b.to_string()).collect();
                format!("{}[{}]", c.surface.label(), curves.join(","))
            })
            .collect();
        let mut out = parts.join(" ~ ");
        if self.components.len() == 3 {
            out.push_str(if self.gluings.len() == 3 { " (cycle)" } else { " (chain)" });
        }
        out
    }
}

impl fmt::Display for SncConfiguration {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.describe())
    }
}

/// Checks that a configuration is a valid normal crossing surface of the
/// recognized kind.  See the module documentation for the conditions.
pub fn check_config(config: &SncConfiguration) -> Result<()> {
    let n = config.components.len();
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!(
            "configurations with {n} components are not recognized"
        )));
    }

    // Every boundary slot is glued exactly once, to a different component.
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for ((ci, bi), (cj, bj)) in &config.gluings {
        for (c, b) in [(*ci, *bi), (*cj, *bj)] {
            let component = config
                .components
                .get(c)
                .ok_or_else(|| Error::Inconsistent(format!("no component {c}")))?;
            if b >= component.boundary.len() {
                return Err(Error::Inconsistent(format!(
                    "component {c} has no boundary slot {b}"
                )));
            }
            if !used.insert((c, b)) {
                return Err(Error::Inconsistent(format!(
                    "boundary slot {b} of component {c} is glued twice"
                )));
            }
        }
        if ci == cj {
            return Err(Error::Inconsistent(format!(
                "component {ci} is glued to itself"
            )));
        }
    }
    for (c, component) in config.components.iter().enumerate() {
        for b in 0..component.boundary.len() {
            if !used.contains(&(c, b)) {
                return Err(Error::Inconsistent(format!(
                    "boundary slot {b} of component {c} is not glued to anything"
                )));
            }
        }
    }

    // Boundary curves are smooth and rational.
    for (c, component) in config.components.iter().enumerate() {
        for curve in &component.boundary {
            if !component.surface.is_smooth_rational(curve) {
                return Err(Error::Inconsistent(format!(
                    "boundary class {curve} on component {c} ({}) is not a smooth rational curve",
                    component.surface.label()
                )));
            }
        }
    }

    // Identified curves have self-intersections summing to -2.
    for ((ci, bi), (cj, bj)) in &config.gluings {
        let si = config.components[*ci]
            .surface
            .self_intersection(&config.components[*ci].boundary[*bi]);
        let sj = config.components[*cj]
            .surface
            .self_intersection(&config.components[*cj].boundary[*bj]);
        if si + sj != -2 {
            return Err(Error::Inconsistent(format!(
                "glued curves have self-intersections {si} and {sj}; they must sum to -2"
            )));
        }
    }

    // The anticanonical class minus the boundary is ample on each piece.
    for (c, component) in config.components.iter().enumerate() {
        let leftover = component.surface.log_anticanonical(&component.boundary);
        if !component.surface.is_ample(&leftover) {
            return Err(Error::Inconsistent(format!(
                "anticanonical minus boundary is {leftover} on component {c} ({}), which is not ample",
                component.surface.label()
            )));
        }
    }

    // Boundary curves on one component meet exactly at the triple points
    // the gluing graph forces: once if their two neighbor components are
    // themselves glued, never otherwise.
    let neighbor = |c: usize, b: usize| -> usize {
        for ((ci, bi), (cj, bj)) in &config.gluings {
            if (*ci, *bi) == (c, b) {
                return *cj;
            }
            if (*cj, *bj) == (c, b) {
                return *ci;
            }
        }
        unreachable!("all slots were checked to be glued")
    };
    let glued_pair = |a: usize, b: usize| -> bool {
        config.gluings.iter().any(|((ci, _), (cj, _))| {
            (*ci == a && *cj == b) || (*ci == b && *cj == a)
        })
    };
    for (c, component) in config.components.iter().enumerate() {
        for x in 0..component.boundary.len() {
            for y in (x + 1)..component.boundary.len() {
                let (nx, ny) = (neighbor(c, x), neighbor(c, y));
                let expected = if nx != ny && glued_pair(nx, ny) { 1 } else { 0 };
                let met = component
                    .surface
                    .intersection(&component.boundary[x], &component.boundary[y]);
                if met != expected {
                    return Err(Error::Inconsistent(format!(
                        "boundary curves on component {c} meet {met} times, expected {expected}"
                    )));
                }
            }
        }
    }

    Ok(())
}

fn surfaces_up_to(n_max: u32) -> Vec<ComponentSurface> {
    let mut out = vec![ComponentSurface::Plane];
    out.extend((0..=n_max).map(ComponentSurface::Hirzebruch));
    out
}

fn swap_ruling(c: CurveClass) -> CurveClass {
    match c {
        CurveClass::RuledCurve { e, f } => CurveClass::RuledCurve { e: f, f: e },
        other => other,
    }
}

/// The two rulings of `F_0` are exchanged by an automorphism; normalize a
/// curve there so that the exchanged forms compare equal.
fn normalize_ruling(surface: ComponentSurface, c: CurveClass) -> CurveClass {
    match (surface, c) {
        (ComponentSurface::Hirzebruch(0), CurveClass::RuledCurve { e, f }) if f > e => {
            CurveClass::RuledCurve { e: f, f: e }
        }
        _ => c,
    }
}

/// All `(surface, curve)` pairs within the bounds where the curve is smooth
/// rational and the anticanonical class minus it is ample — the candidates
/// for a component with a single boundary curve.
pub fn ample_boundary_singles(n_max: u32, b_max: u32) -> Vec<(ComponentSurface, CurveClass)> {
    let mut out = vec![];
    for surface in surfaces_up_to(n_max) {
        for curve in surface.smooth_rational_curves(b_max) {
            if surface.is_ample(&surface.log_anticanonical(&[curve])) {
                out.push((surface, normalize_ruling(surface, curve)));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All `(surface, curve, curve)` triples within the bounds where both
/// curves are smooth rational, they meet each other `meetings` times, and
/// the anticanonical class minus both is ample — the candidates for a
/// component with two boundary curves.
pub fn ample_boundary_doubles(
    n_max: u32,
    b_max: u32,
    meetings: i64,
) -> Vec<CyclePart> {
    let mut out = vec![];
    for surface in surfaces_up_to(n_max) {
        let curves = surface.smooth_rational_curves(b_max);
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i..] {
                if surface.intersection(a, b) != meetings {
                    continue;
                }
                if !surface.is_ample(&surface.log_anticanonical(&[*a, *b])) {
                    continue;
                }
                // Normalize the component as a whole: exchanging the
                // rulings of F_0 must act on both curves at once.
                let sorted = |mut x: CurveClass, mut y: CurveClass| {
                    if y < x {
                        std::mem::swap(&mut x, &mut y);
                    }
                    (x, y)
                };
                let mut best = sorted(*a, *b);
                if surface == ComponentSurface::Hirzebruch(0) {
                    best = best.min(sorted(swap_ruling(*a), swap_ruling(*b)));
                }
                out.push((surface, best.0, best.1));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub configs: Vec<SncConfiguration>,
    /// Whether the bounds are large enough that nothing can exist beyond
    /// them.  A curve surviving the single-boundary ampleness test has
    /// self-intersection at most 4 (a conic in the plane), so a glued
    /// partner needs self-intersection at least -6, which caps the
    /// Hirzebruch index at 6; sections with twisting 2 or more never
    /// survive.  Bounds of 8 leave a margin over both.
    pub complete: bool,
}

/// Picks the canonical arrangement of an oriented cycle among its
/// rotations, its reflections, and (on `F_0` components) the exchange of
/// the two rulings, and renders it for deduplication.
fn canonical_cycle(
    parts: &[CyclePart; 3],
) -> (String, [CyclePart; 3]) {
    let render = |seq: &[CyclePart; 3]| -> String {
        let pieces: Vec<String> =
            seq.iter().map(|(s, x, y)| format!("{}({x},{y})", s.label())).collect();
        pieces.join("|")
    };
    let normalize = |(s, x, y): CyclePart| {
        if s == ComponentSurface::Hirzebruch(0) {
            let swapped = (s, swap_ruling(x), swap_ruling(y));
            if render(&[swapped; 3]) < render(&[(s, x, y); 3]) {
                return swapped;
            }
        }
        (s, x, y)
    };
    let mut best: Option<(String, [CyclePart; 3])> = None;
    for r in 0..3 {
        let rotated = [0, 1, 2].map(|i| normalize(parts[(i + r) % 3]));
        let reflected = [0, 1, 2].map(|i| {
            let (s, x, y) = rotated[2 - i];
            (s, y, x)
        });
        for candidate in [rotated, reflected] {
            let key = render(&candidate);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, candidate));
            }
        }
    }
    best.expect("six candidates were rendered")
}

/// Enumerates the valid configurations with the given number of components
/// (2 or 3), considering Hirzebruch surfaces up to `F_{n_max}` and sections
/// twisted up to `b_max`.
pub fn classify(rank: u32, n_max: u32, b_max: u32) -> Result<Classification> {
    let complete = n_max >= 8 && b_max >= 8;
    let singles = ample_boundary_singles(n_max, b_max);
    let mut configs = vec![];

    match rank {
        2 => {
            for (i, (s1, c1)) in singles.iter().enumerate() {
                for (s2, c2) in &singles[i..] {
                    if s1.self_intersection(c1) + s2.self_intersection(c2) != -2 {
                        continue;
                    }
                    let config = SncConfiguration::pair(*s1, *c1, *s2, *c2);
                    check_config(&config).expect("enumerated configurations are valid");
                    configs.push(config);
                }
            }
        }
        3 => {
            // A chain needs a middle component whose two boundary curves
            // are disjoint; a cycle needs three components whose boundary
            // curves meet once.
            let middles = ample_boundary_doubles(n_max, b_max, 0);
            for (s, a, b) in &middles {
                for (s1, c1) in &singles {
                    if s1.self_intersection(c1) + s.self_intersection(a) != -2 {
                        continue;
                    }
                    for (s2, c2) in &singles {
                        if s2.self_intersection(c2) + s.self_intersection(b) != -2 {
                            continue;
                        }
                        configs.push(SncConfiguration {
                            components: vec![
                                SncComponent { surface: *s1, boundary: vec![*c1] },
                                SncComponent { surface: *s, boundary: vec![*a, *b] },
                                SncComponent { surface: *s2, boundary: vec![*c2] },
                            ],
                            gluings: vec![((0, 0), (1, 0)), ((1, 1), (2, 0))],
                        });
                    }
                }
            }

            let corners = ample_boundary_doubles(n_max, b_max, 1);
            let mut oriented = vec![];
            for (s, a, b) in &corners {
                oriented.push((*s, *a, *b));
                if a != b {
                    oriented.push((*s, *b, *a));
                }
            }
            let mut seen = BTreeSet::new();
            for p1 in &oriented {
                for p2 in &oriented {
                    for p3 in &oriented {
                        let closes = |out: &CyclePart,
                                      inc: &CyclePart| {
                            out.0.self_intersection(&out.2) + inc.0.self_intersection(&inc.1)
                                == -2
                        };
                        if !(closes(p1, p2) && closes(p2, p3) && closes(p3, p1)) {
                            continue;
                        }
                        let (key, parts) = canonical_cycle(&[*p1, *p2, *p3]);
                        if !seen.insert(key) {
                            continue;
                        }
                        let config = SncConfiguration::cycle3(parts);
                        check_config(&config).expect("enumerated configurations are valid");
                        configs.push(config);
                    }
                }
            }
        }
        other => {
            return Err(Error::Unsupported(format!(
                "classification is implemented for 2 or 3 components, not {other}"
            )))
        }
    }

    configs.sort_by_key(|c| c.describe());
    configs.dedup();
    Ok(Classification { configs, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: CurveClass = CurveClass::RuledCurve { e: 1, f: 0 };
    const F: CurveClass = CurveClass::RuledCurve { e: 0, f: 1 };

    fn section(b: i64) -> CurveClass {
        CurveClass::RuledCurve { e: 1, f: b }
    }

    #[test]
    fn intersection_numbers_on_ruled_surfaces() {
        let f6 = ComponentSurface::Hirzebruch(6);
        assert_eq!(f6.self_intersection(&E), -6);
        assert_eq!(f6.self_intersection(&section(6)), 6);
        assert_eq!(f6.intersection(&section(6), &section(3)), 3);
        assert_eq!(f6.intersection(&E, &F), 1);
        let p2 = ComponentSurface::Plane;
        assert_eq!(p2.self_intersection(&CurveClass::PlaneCurve(2)), 4);
    }

    #[test]
    fn ampleness_criteria() {
        let f6 = ComponentSurface::Hirzebruch(6);
        assert!(f6.is_ample(&section(7)));
        assert!(!f6.is_ample(&section(6)));
        assert!(!f6.is_ample(&section(5)));
        assert!(!f6.is_ample(&F));
        let f2 = ComponentSurface::Hirzebruch(2);
        assert!(!f2.is_ample(&section(2)));
        assert!(f2.is_ample(&section(3)));
        let p2 = ComponentSurface::Plane;
        assert!(p2.is_ample(&CurveClass::PlaneCurve(1)));
        assert!(!p2.is_ample(&CurveClass::PlaneCurve(0)));
        assert!(!p2.is_ample(&CurveClass::PlaneCurve(-1)));
    }

    #[test]
    fn ruled_surfaces_with_ample_anticanonical_class() {
        // -K itself is ample only on F_0 and F_1; every higher step has the
        // negative section as an obstruction.
        for n in 0..=8 {
            let s = ComponentSurface::Hirzebruch(n);
            assert_eq!(s.is_ample(&s.log_anticanonical(&[])), n <= 1, "F_{n}");
        }
        let p2 = ComponentSurface::Plane;
        assert!(p2.is_ample(&p2.log_anticanonical(&[])));
    }

    #[test]
    fn smooth_rational_curve_lists() {
        let p2 = ComponentSurface::Plane;
        assert_eq!(
            p2.smooth_rational_curves(8),
            vec![CurveClass::PlaneCurve(1), CurveClass::PlaneCurve(2)]
        );
        let f2 = ComponentSurface::Hirzebruch(2);
        assert_eq!(
            f2.smooth_rational_curves(4),
            vec![F, E, section(2), section(3), section(4)]
        );
        // On F_0 the zero-twist section is the negative section itself.
        let f0 = ComponentSurface::Hirzebruch(0);
        assert_eq!(f0.smooth_rational_curves(2), vec![F, E, section(1), section(2)]);
    }

    #[test]
    fn single_boundary_census() {
        let singles = ample_boundary_singles(8, 8);
        let expected: Vec<(ComponentSurface, CurveClass)> = {
            let mut v = vec![
                (ComponentSurface::Plane, CurveClass::PlaneCurve(1)),
                (ComponentSurface::Plane, CurveClass::PlaneCurve(2)),
                (ComponentSurface::Hirzebruch(0), E),
                (ComponentSurface::Hirzebruch(0), section(1)),
                (ComponentSurface::Hirzebruch(1), E),
                (ComponentSurface::Hirzebruch(1), section(1)),
            ];
            v.extend((2..=8).map(|n| (ComponentSurface::Hirzebruch(n), E)));
            v.sort();
            v
        };
        assert_eq!(singles, expected);
        // In particular the second ruling of F_0 was folded into the first.
        assert!(!singles.contains(&(ComponentSurface::Hirzebruch(0), F)));
    }

    #[test]
    fn no_component_carries_two_disjoint_boundary_curves() {
        assert!(ample_boundary_doubles(8, 8, 0).is_empty());
    }

    #[test]
    fn two_boundary_census() {
        let doubles = ample_boundary_doubles(8, 8, 1);
        // The derived ordering on curve classes puts the fiber before the
        // negative section, so each pair arrives as (f, e).
        let mut expected: Vec<CyclePart> = (0..=8)
            .map(|n| (ComponentSurface::Hirzebruch(n), F, E))
            .collect();
        expected.push((
            ComponentSurface::Plane,
            CurveClass::PlaneCurve(1),
            CurveClass::PlaneCurve(1),
        ));
        expected.sort();
        assert_eq!(doubles, expected);
    }

    #[test]
    fn two_component_classification() {
        let got = classify(2, 8, 8).unwrap();
        assert!(got.complete);
        let names: Vec<String> = got.configs.iter().map(|c| c.describe()).collect();
        let mut expected = vec![
            "P2[l] ~ F3[e]",
            "P2[2*l] ~ F6[e]",
            "F0[e] ~ F2[e]",
            "F1[e] ~ F1[e]",
            "F1[e+f] ~ F3[e]",
            "F0[e+f] ~ F4[e]",
        ];
        expected.sort();
        assert_eq!(names, expected);
        for config in &got.configs {
            assert!(check_config(config).is_ok());
        }
    }

    #[test]
    fn small_bounds_are_flagged_incomplete() {
        let got = classify(2, 2, 8).unwrap();
        assert!(!got.complete);
        let names: Vec<String> = got.configs.iter().map(|c| c.describe()).collect();
        assert_eq!(names, vec!["F0[e] ~ F2[e]", "F1[e] ~ F1[e]"]);
    }

    #[test]
    fn classification_saturates() {
        assert_eq!(classify(2, 8, 8).unwrap().configs, classify(2, 12, 12).unwrap().configs);
        assert_eq!(classify(3, 8, 8).unwrap().configs, classify(3, 12, 12).unwrap().configs);
    }

    #[test]
    fn three_component_classification() {
        let got = classify(3, 8, 8).unwrap();
        assert!(got.complete);
        assert_eq!(got.configs.len(), 1);
        let triangle = &got.configs[0];
        assert_eq!(triangle.describe(), "F2[e,f] ~ F2[e,f] ~ F2[e,f] (cycle)");
        assert!(check_config(triangle).is_ok());
    }

    #[test]
    fn config_checks_reject_bad_data() {
        // Self-intersections that do not sum to -2.
        let wrong_sum = SncConfiguration::pair(
            ComponentSurface::Hirzebruch(1),
            E,
            ComponentSurface::Hirzebruch(2),
            E,
        );
        assert!(matches!(check_config(&wrong_sum), Err(Error::Inconsistent(_))));

        // A boundary class with no smooth rational member.
        let cubic = SncConfiguration::pair(
            ComponentSurface::Plane,
            CurveClass::PlaneCurve(3),
            ComponentSurface::Hirzebruch(6),
            E,
        );
        assert!(matches!(check_config(&cubic), Err(Error::Inconsistent(_))));

        // Gluing a twisted section makes the leftover class non-ample
        // even though the self-intersections match.
        let not_ample = SncConfiguration::pair(
            ComponentSurface::Hirzebruch(2),
            section(2),
            ComponentSurface::Hirzebruch(4),
            E,
        );
        assert!(matches!(check_config(&not_ample), Err(Error::Inconsistent(_))));

        // A triangle whose boundary curves miss each other.
        let mut broken = SncConfiguration::cycle3([
            (ComponentSurface::Hirzebruch(2), E, F),
            (ComponentSurface::Hirzebruch(2), E, F),
            (ComponentSurface::Hirzebruch(2), E, F),
        ]);
        broken.components[0].boundary = vec![F, F];
        assert!(check_config(&broken).is_err());

        // An unglued boundary slot.
        let mut dangling =
            SncConfiguration::pair(ComponentSurface::Hirzebruch(1), E, ComponentSurface::Hirzebruch(1), E);
        dangling.components[0].boundary.push(F);
        assert!(matches!(check_config(&dangling), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn valid_pairs_pass_the_checks() {
        let config = SncConfiguration::pair(
            ComponentSurface::Plane,
            CurveClass::PlaneCurve(2),
            ComponentSurface::Hirzebruch(6),
            E,
        );
        assert!(check_config(&config).is_ok());
        assert_eq!(config.describe(), "P2[2*l] ~ F6[e]");

        let pencil_pair = SncConfiguration::pair(
            ComponentSurface::Hirzebruch(1),
            E,
            ComponentSurface::Hirzebruch(1),
            E,
        );
        assert!(check_config(&pencil_pair).is_ok());
    }

    #[test]
    fn surface_characters() {
        let p2 = ComponentSurface::Plane.build();
        assert_eq!(e_character(&p2).unwrap().ch().to_string(), "3+6*l^2");
        let f6 = ComponentSurface::Hirzebruch(6).build();
        assert_eq!(e_character(&f6).unwrap().ch().to_string(), "3+4*f*e");
        let f1 = ComponentSurface::Hirzebruch(1).build();
        assert_eq!(e_character(&f1).unwrap().ch().to_string(), "3+4*f*e");
        for (surface, _) in ample_boundary_singles(8, 8) {
            let v = surface.build();
            let character = e_character(&v).unwrap();
            assert_eq!(character.rank(), 3, "{}", surface.label());
            assert!(character.ch1().is_zero(), "{}", surface.label());
        }
        // Not defined off dimension 2.
        assert!(e_character(&Variety::projective_space(3)).is_err());
    }

    #[test]
    fn curve_classes_round_trip_through_the_ring() {
        let f6 = ComponentSurface::Hirzebruch(6);
        let v = f6.build();
        let class = f6.curve_to_class(&v, &section(6)).unwrap();
        assert_eq!(class.to_string(), "6*f+e");
        assert_eq!(f6.class_to_curve(&class).unwrap(), section(6));

        let p2 = ComponentSurface::Plane;
        let vp = p2.build();
        let class = p2.curve_to_class(&vp, &CurveClass::PlaneCurve(2)).unwrap();
        assert_eq!(class.to_string(), "2*l");
        assert_eq!(p2.class_to_curve(&class).unwrap(), CurveClass::PlaneCurve(2));

        // Impure classes are rejected.
        let impure = class.checked_add(&ChowClass::one(vp.ring())).unwrap();
        assert!(p2.class_to_curve(&impure).is_err());
    }
}
