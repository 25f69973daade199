//! Smooth varieties packaged as a ring presentation plus the classes every
//! downstream computation keeps asking for: the Chern character of the
//! tangent bundle, the canonical class, and a record of which variables are
//! relative hyperplane classes of P^1-bundle structures.
//!
//! Constructors compose: a Hirzebruch surface is a projective bundle over a
//! line, a conic family is a projective bundle over a product of lines, and
//! so on.  Every constructor funnels through [`make_ring`], so the resulting
//! presentation is re-validated no matter how it was assembled.

use crate::bigrat::{self, rat, Rat};
use crate::chow::{make_ring, same_ring, ChowClass, Monomial, RewriteRule, Ring, VariableSpec};
use crate::error::{Error, Result};
use crate::ktheory::{ch_to_chern, KClass};

/// A recorded P^1-bundle structure on a variety.
///
/// `xi` indexes the relative hyperplane variable; `c1` and `c2` are the
/// Chern classes of the projectivized rank-2 bundle, expressed in the total
/// space's ring.  Fiberwise pushforwards are set up from this record.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub xi: usize,
    pub c1: ChowClass,
    pub c2: ChowClass,
}

/// A vector bundle presented by its rank and total Chern class.
#[derive(Clone, Debug)]
pub struct BundleData {
    pub rank: i64,
    pub total_chern: ChowClass,
}

impl BundleData {
    pub fn new(rank: i64, total_chern: ChowClass) -> Self {
        BundleData { rank, total_chern }
    }
}

/// A smooth variety with its intersection ring and standing data.
#[derive(Clone, Debug)]
pub struct Variety {
    ring: Ring,
    dim: u32,
    tangent_ch: KClass,
    canonical_class: ChowClass,
    label: String,
    fibrations: Vec<Fibration>,
}

/// Re-indexes a class into a larger ring: variable `i` of the source becomes
/// variable `offset + i` of the target.  The caller guarantees the target
/// contains matching relations, which holds for the constructors below.
fn embed(class: &ChowClass, target: &Ring, offset: usize) -> ChowClass {
    let n = target.nvars();
    let terms = class
        .terms()
        .map(|(m, c)| {
            let mut exps = vec![0u32; n];
            for (i, k) in m.0.iter().enumerate() {
                exps[offset + i] = *k;
            }
            (Monomial(exps), c.clone())
        })
        .collect();
    ChowClass::from_terms(target, terms)
}

fn widen_monomial(m: &Monomial, n: usize, offset: usize) -> Monomial {
    let mut exps = vec![0u32; n];
    for (i, k) in m.0.iter().enumerate() {
        exps[offset + i] = *k;
    }
    Monomial(exps)
}

impl Variety {
    /// A single reduced point.
    pub fn point() -> Variety {
        let ring = make_ring(vec![], vec![], 0, Monomial::one(0)).expect("point ring is valid");
        Variety {
            tangent_ch: KClass::zero(&ring),
            canonical_class: ChowClass::zero(&ring),
            ring,
            dim: 0,
            label: "pt".into(),
            fibrations: vec![],
        }
    }

    /// Projective space with hyperplane variable `h`.
    pub fn projective_space(n: u32) -> Variety {
        Variety::projective_space_named(n, "h").expect("default variable name is valid")
    }

    /// Projective space with a caller-chosen hyperplane variable name, so
    /// that products of projective spaces get distinct variables.
    pub fn projective_space_named(n: u32, var: &str) -> Result<Variety> {
        let ring = make_ring(
            vec![VariableSpec::new(var, 1)],
            vec![RewriteRule::vanishing(0, n + 1)],
            n,
            Monomial(vec![n]),
        )?;
        let h = ChowClass::generator(&ring, var).expect("generator was just declared");
        // Euler sequence: ch(T) = (n+1) e^h - 1.
        let tangent = h
            .exp()
            .expect("h has no constant term")
            .scale(&rat(n as i64 + 1))
            .checked_sub(&ChowClass::one(&ring))?;
        // A line is the projectivization of a trivial rank-2 bundle; record
        // that structure so it can serve as the base of a fiber square.
        let fibrations = if n == 1 {
            vec![Fibration { xi: 0, c1: ChowClass::zero(&ring), c2: ChowClass::zero(&ring) }]
        } else {
            vec![]
        };
        Ok(Variety {
            tangent_ch: KClass::from_ch(tangent)?,
            canonical_class: h.scale(&rat(-(n as i64 + 1))),
            ring,
            dim: n,
            label: format!("P{n}"),
            fibrations,
        })
    }

    /// The Hirzebruch surface `F_n = P(O + O(-n))` over a line, with fiber
    /// class `f` and relative hyperplane class `e` (the `(-n)`-section).
    pub fn hirzebruch(n: u32) -> Variety {
        let base = Variety::projective_space_named(1, "f").expect("base line is valid");
        let f = ChowClass::generator(base.ring(), "f").expect("f exists");
        let chern = ChowClass::one(base.ring()).checked_sub(&f.scale(&rat(n as i64))).unwrap();
        Variety::projective_bundle(&base, &BundleData::new(2, chern), "e")
            .expect("Hirzebruch bundle data is valid")
            .with_label(&format!("F{n}"))
    }

    /// The product `X x Y`.  Variables of `X` come first; a `Y` variable
    /// whose name collides is deterministically renamed by appending the
    /// smallest numeric suffix that is free.
    pub fn product(x: &Variety, y: &Variety) -> Result<Variety> {
        let nx = x.ring.nvars();
        let ny = y.ring.nvars();
        let n = nx + ny;

        let mut specs: Vec<VariableSpec> = x.ring.variables().to_vec();
        let mut renames: Vec<(String, String)> = vec![];
        for v in y.ring.variables() {
            let mut name = v.name.clone();
            if specs.iter().any(|s| s.name == name) {
                let mut k = 2u32;
                loop {
                    let candidate = format!("{}{}", v.name, k);
                    if !specs.iter().any(|s| s.name == candidate) {
                        name = candidate;
                        break;
                    }
                    k += 1;
                }
                renames.push((v.name.clone(), name.clone()));
            }
            specs.push(VariableSpec::new(&name, v.degree));
        }

        let mut rules: Vec<RewriteRule> = vec![];
        for r in x.ring.rules() {
            let replacement =
                r.replacement.iter().map(|(m, c)| (widen_monomial(m, n, 0), c.clone())).collect();
            rules.push(RewriteRule::new(r.variable, r.exponent, replacement));
        }
        for r in y.ring.rules() {
            let replacement =
                r.replacement.iter().map(|(m, c)| (widen_monomial(m, n, nx), c.clone())).collect();
            rules.push(RewriteRule::new(r.variable + nx, r.exponent, replacement));
        }

        let point = {
            let mut exps = x.ring.point_monomial().0.clone();
            exps.extend_from_slice(&y.ring.point_monomial().0);
            Monomial(exps)
        };
        let ring = make_ring(specs, rules, x.dim + y.dim, point)?;

        let tangent = embed(x.tangent_ch.ch(), &ring, 0)
            .checked_add(&embed(y.tangent_ch.ch(), &ring, nx))?;
        let canonical = embed(&x.canonical_class, &ring, 0)
            .checked_add(&embed(&y.canonical_class, &ring, nx))?;

        let mut fibrations = vec![];
        for fib in &x.fibrations {
            fibrations.push(Fibration {
                xi: fib.xi,
                c1: embed(&fib.c1, &ring, 0),
                c2: embed(&fib.c2, &ring, 0),
            });
        }
        for fib in &y.fibrations {
            fibrations.push(Fibration {
                xi: fib.xi + nx,
                c1: embed(&fib.c1, &ring, nx),
                c2: embed(&fib.c2, &ring, nx),
            });
        }

        let mut label = format!("{} x {}", x.label, y.label);
        if !renames.is_empty() {
            let noted: Vec<String> =
                renames.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            label.push_str(&format!(" [renamed {}]", noted.join(", ")));
        }

        Ok(Variety {
            tangent_ch: KClass::from_ch(tangent)?,
            canonical_class: canonical,
            ring,
            dim: x.dim + y.dim,
            label,
            fibrations,
        })
    }

    /// The projectivization `P(E)` of a rank-2 bundle on `base`, with
    /// relative hyperplane variable `xi` appended after the base variables.
    /// The new variable obeys `xi^2 = c1(E) xi - c2(E)`.
    pub fn projective_bundle(base: &Variety, e: &BundleData, xi: &str) -> Result<Variety> {
        if !same_ring(e.total_chern.ring(), &base.ring) {
            return Err(Error::RingMismatch {
                left: "bundle Chern class".into(),
                right: format!("ring of {}", base.label),
            });
        }
        if e.rank != 2 {
            return Err(Error::Unsupported(format!(
                "projectivization is implemented for rank 2 only, got rank {}",
                e.rank
            )));
        }
        if e.total_chern.constant_coefficient() != rat(1) {
            return Err(Error::DegreeMismatch(
                "total Chern class of a bundle must have constant term 1".into(),
            ));
        }
        for d in 3..=base.dim {
            if !e.total_chern.graded_part(d).is_zero() {
                return Err(Error::DegreeMismatch(format!(
                    "rank-2 bundle cannot have a Chern class in degree {d}"
                )));
            }
        }
        let c1 = e.total_chern.graded_part(1);
        let c2 = e.total_chern.graded_part(2);

        let nb = base.ring.nvars();
        let n = nb + 1;
        let mut specs = base.ring.variables().to_vec();
        specs.push(VariableSpec::new(xi, 1));

        let mut rules: Vec<RewriteRule> = base
            .ring
            .rules()
            .iter()
            .map(|r| {
                let replacement = r
                    .replacement
                    .iter()
                    .map(|(m, c)| (widen_monomial(m, n, 0), c.clone()))
                    .collect();
                RewriteRule::new(r.variable, r.exponent, replacement)
            })
            .collect();
        // xi^2 -> c1 xi - c2.
        let mut replacement: Vec<(Monomial, Rat)> = vec![];
        for (m, c) in c1.terms() {
            let mut widened = widen_monomial(m, n, 0);
            widened.0[nb] = 1;
            replacement.push((widened, c.clone()));
        }
        for (m, c) in c2.terms() {
            replacement.push((widen_monomial(m, n, 0), -c.clone()));
        }
        rules.push(RewriteRule::new(nb, 2, replacement));

        let point = {
            let mut exps = base.ring.point_monomial().0.clone();
            exps.push(1);
            Monomial(exps)
        };
        let ring = make_ring(specs, rules, base.dim + 1, point)?;

        let xi_class = ChowClass::generator(&ring, xi).expect("xi was just declared");
        let c1_up = embed(&c1, &ring, 0);
        let c2_up = embed(&c2, &ring, 0);
        // Relative Euler sequence: the relative tangent is a line bundle
        // with first Chern class 2 xi - c1(E).
        let rel_tangent = xi_class.scale(&rat(2)).checked_sub(&c1_up)?;
        let tangent = embed(base.tangent_ch.ch(), &ring, 0)
            .checked_add(&rel_tangent.exp().expect("degree-1 class has no constant term"))?;
        let canonical = embed(&base.canonical_class, &ring, 0)
            .checked_add(&c1_up)?
            .checked_sub(&xi_class.scale(&rat(2)))?;

        // Bundle structures of the base do not lift to the total space, so
        // only the new fibration is recorded.
        let fibrations = vec![Fibration { xi: nb, c1: c1_up, c2: c2_up }];

        Ok(Variety {
            tangent_ch: KClass::from_ch(tangent)?,
            canonical_class: canonical,
            ring,
            dim: base.dim + 1,
            label: format!("P(E) over {}", base.label),
            fibrations,
        })
    }

    pub fn with_label(mut self, label: &str) -> Variety {
        self.label = label.into();
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn tangent_ch(&self) -> &KClass {
        &self.tangent_ch
    }

    pub fn canonical_class(&self) -> &ChowClass {
        &self.canonical_class
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn fibrations(&self) -> &[Fibration] {
        &self.fibrations
    }

    /// Looks up the recorded fibration whose relative hyperplane variable
    /// has the given name.
    pub fn fibration_for(&self, xi: &str) -> Option<&Fibration> {
        let index = self.ring.variable_index(xi)?;
        self.fibrations.iter().find(|f| f.xi == index)
    }

    /// Integrates a class over the variety: the coefficient of the point
    /// class in its top-degree part.
    pub fn integrate(&self, class: &ChowClass) -> Result<Rat> {
        if !same_ring(class.ring(), &self.ring) {
            return Err(Error::RingMismatch {
                left: "class to integrate".into(),
                right: format!("ring of {}", self.label),
            });
        }
        Ok(class.point_coefficient())
    }

    /// The topological Euler number, computed as the integral of the top
    /// Chern class of the tangent bundle.
    pub fn euler_number(&self) -> Result<i64> {
        let chern = ch_to_chern(&self.tangent_ch)?;
        let top = self.integrate(&chern.graded_part(self.dim))?;
        bigrat::to_i64(&top).ok_or_else(|| {
            Error::NotAnInteger(format!(
                "Euler number of {} came out as {}",
                self.label,
                bigrat::display(&top)
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::parse_class;

    #[test]
    fn projective_plane_basics() {
        let p2 = Variety::projective_space(2);
        assert_eq!(p2.dim(), 2);
        assert_eq!(p2.tangent_ch().ch().to_string(), "2+3*h+3/2*h^2");
        assert_eq!(p2.canonical_class().to_string(), "-3*h");
        assert_eq!(p2.euler_number().unwrap(), 3);
        assert!(p2.fibrations().is_empty());
    }

    #[test]
    fn projective_line_records_its_fibration() {
        let p1 = Variety::projective_space_named(1, "t").unwrap();
        assert_eq!(p1.euler_number().unwrap(), 2);
        assert_eq!(p1.tangent_ch().ch().to_string(), "1+2*t");
        let fib = p1.fibration_for("t").expect("a line is a bundle over a point");
        assert!(fib.c1.is_zero() && fib.c2.is_zero());
    }

    #[test]
    fn hirzebruch_surface_classes() {
        let f6 = Variety::hirzebruch(6);
        assert_eq!(f6.label(), "F6");
        let e = ChowClass::generator(f6.ring(), "e").unwrap();
        assert_eq!(e.pow(2).to_string(), "-6*f*e");
        assert_eq!(f6.canonical_class().to_string(), "-8*f-2*e");
        assert_eq!(f6.tangent_ch().ch().to_string(), "2+8*f+2*e");
        assert_eq!(f6.euler_number().unwrap(), 4);
        let fib = f6.fibration_for("e").unwrap();
        assert_eq!(fib.c1.to_string(), "-6*f");
        assert!(fib.c2.is_zero());
    }

    #[test]
    fn product_of_lines_is_a_quadric() {
        let m = Variety::product(
            &Variety::projective_space_named(1, "f1").unwrap(),
            &Variety::projective_space_named(1, "f2").unwrap(),
        )
        .unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.canonical_class().to_string(), "-2*f1-2*f2");
        assert_eq!(m.euler_number().unwrap(), 4);
        let point = parse_class(m.ring(), "f1*f2").unwrap();
        assert_eq!(m.integrate(&point).unwrap(), rat(1));
        // Both rulings are recorded.
        assert_eq!(m.fibrations().len(), 2);
        assert!(m.fibration_for("f1").is_some() && m.fibration_for("f2").is_some());
    }

    #[test]
    fn conic_bundle_threefold() {
        let m = Variety::product(
            &Variety::projective_space_named(1, "f1").unwrap(),
            &Variety::projective_space_named(1, "f2").unwrap(),
        )
        .unwrap();
        let chern = parse_class(m.ring(), "1+f1+f2+2*f1*f2").unwrap();
        let c = Variety::projective_bundle(&m, &BundleData::new(2, chern), "h").unwrap();
        assert_eq!(c.dim(), 3);
        let h = ChowClass::generator(c.ring(), "h").unwrap();
        assert_eq!(h.pow(2).to_string(), "-2*f1*f2+f1*h+f2*h");
        assert!(h.pow(3).is_zero());
        assert_eq!(c.canonical_class().to_string(), "-f1-f2-2*h");
        assert_eq!(c.tangent_ch().ch().to_string(), "3+f1+f2+2*h-3*f1*f2-2*f1*f2*h");
        assert_eq!(c.euler_number().unwrap(), 8);
    }

    #[test]
    fn point_is_trivial() {
        let pt = Variety::point();
        assert_eq!(pt.dim(), 0);
        assert_eq!(pt.euler_number().unwrap(), 1);
        assert_eq!(pt.integrate(&ChowClass::one(pt.ring())).unwrap(), rat(1));
    }

    #[test]
    fn product_with_point_changes_nothing() {
        let f2 = Variety::hirzebruch(2);
        let prod = Variety::product(&f2, &Variety::point()).unwrap();
        assert_eq!(prod.ring().describe(), f2.ring().describe());
        assert_eq!(prod.tangent_ch().ch().to_string(), f2.tangent_ch().ch().to_string());
        assert_eq!(prod.canonical_class().to_string(), f2.canonical_class().to_string());
    }

    #[test]
    fn colliding_names_get_suffixes() {
        let p1 = Variety::projective_space(1);
        let twice = Variety::product(&p1, &p1).unwrap();
        let names: Vec<&str> =
            twice.ring().variables().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["h", "h2"]);
        let thrice = Variety::product(&twice, &p1).unwrap();
        let names: Vec<&str> =
            thrice.ring().variables().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["h", "h2", "h3"]);
        assert!(thrice.label().contains("renamed"));
    }

    #[test]
    fn bundle_data_is_validated() {
        let p3 = Variety::projective_space(3);
        let h = ChowClass::generator(p3.ring(), "h").unwrap();
        let ok = ChowClass::one(p3.ring()).checked_add(&h).unwrap();

        let wrong_rank = Variety::projective_bundle(&p3, &BundleData::new(3, ok.clone()), "x");
        assert!(matches!(wrong_rank, Err(Error::Unsupported(_))));

        let cubic = ok.checked_add(&h.pow(3)).unwrap();
        let too_deep = Variety::projective_bundle(&p3, &BundleData::new(2, cubic), "x");
        assert!(matches!(too_deep, Err(Error::DegreeMismatch(_))));

        let no_unit = Variety::projective_bundle(&p3, &BundleData::new(2, h.clone()), "x");
        assert!(matches!(no_unit, Err(Error::DegreeMismatch(_))));

        let f2 = Variety::hirzebruch(2);
        let foreign = Variety::projective_bundle(&f2, &BundleData::new(2, ok), "x");
        assert!(matches!(foreign, Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn integrate_checks_the_ring() {
        let p2 = Variety::projective_space(2);
        let f6 = Variety::hirzebruch(6);
        let h = ChowClass::generator(p2.ring(), "h").unwrap();
        assert!(matches!(f6.integrate(&h), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn explicit_bundle_reproduces_hirzebruch() {
        let base = Variety::projective_space_named(1, "f").unwrap();
        let f = ChowClass::generator(base.ring(), "f").unwrap();
        let chern = ChowClass::one(base.ring()).checked_sub(&f.scale(&rat(2))).unwrap();
        let built = Variety::projective_bundle(&base, &BundleData::new(2, chern), "e").unwrap();
        let stock = Variety::hirzebruch(2);
        assert_eq!(built.ring().describe(), stock.ring().describe());
        assert_eq!(built.canonical_class().to_string(), stock.canonical_class().to_string());
        assert_eq!(
            built.tangent_ch().ch().to_string(),
            stock.tangent_ch().ch().to_string()
        );
    }
}
