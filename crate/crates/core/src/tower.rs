//! Geometric building blocks and the towers assembled from them.
//!
//! A [`TowerVariety`] couples an [`IntersectionRing`] with the canonical
//! class of the space it presents, plus enough construction history (the
//! [`Level`] tree) to answer two questions the ring alone cannot:
//!
//! * what is the fiber of the tower over its distinguished base curve,
//!   as a tower in its own right (see [`TowerVariety::fiber`]), and
//! * which cohomology rules apply to each factor when pushing bundles
//!   down the tower (consumed by the direct-image calculus).
//!
//! Available blocks:
//!
//! * `curve(g)` — smooth curve of genus `g` with point class `c`,
//!   `c² = 0`, `∫c = 1`, `K = (2g−2)c`; this is always the distinguished
//!   base of any tower containing it.
//! * `abelian(d, chi)` — abelian `d`-fold with a polarization `θ` of
//!   Euler characteristic `chi`, so `θ^{d+1} = 0`, `∫θ^d = d!·chi`, `K = 0`.
//! * `projective_space(r)` — hyperplane class `h`, `h^{r+1} = 0`,
//!   `∫h^r = 1`, `K = −(r+1)h`.
//! * `product(V, W)` — ring tensor product; canonical classes add.
//! * `proj_bundle_rank2(S, L)` — the `P¹`-bundle `P(O ⊕ O(−L))` with
//!   section class `ξ` satisfying `ξ² = −(π*L)·ξ`; `K = −2ξ − π*L + π*K_S`.
//! * `double_cover(Y, L)` — degree-2 cover branched along a divisor in
//!   `|2L|`. The cover keeps the base presentation: its classes are the
//!   (possibly half-integral) pullbacks, and the ring's degree multiplier
//!   doubles so that `∫π*α = 2∫α`. `K = π*(K_Y + L)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Generator, GradedClass, IntersectionRing, Monomial, RewriteRule};

/// Branch data for a double cover: the cover is branched along a divisor
/// linearly equivalent to `2·half_branch`, so `half_branch` itself may be
/// half-integral but its double must be an integral class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDescriptor {
    pub half_branch: GradedClass,
}

/// Construction trace of a tower.
///
/// Every node is self-contained: classes stored at a node (bundle twists,
/// branch halves) are written in the generator coordinates of that node's
/// own subtree. Generator indices are assigned by an in-order walk — a
/// product lays out its left factor's generators before its right
/// factor's, and a projective bundle appends its section class after all
/// base generators.
#[derive(Debug, Clone, PartialEq)]
pub enum Level {
    Curve {
        genus: u64,
        name: String,
        /// Marks the distinguished base curve of a fibration. Set by the
        /// public `curve` constructor; the genus-0 fibers synthesized by
        /// `fiber()` leave it unset.
        is_base: bool,
    },
    Abelian {
        dim: u32,
        chi: u64,
        name: String,
    },
    ProjectiveSpace {
        dim: u32,
        name: String,
    },
    Product {
        left: Box<Level>,
        right: Box<Level>,
    },
    ProjBundle {
        base: Box<Level>,
        /// The twist `L` of `P(O ⊕ O(−L))`, in base coordinates.
        twist: GradedClass,
        section_name: String,
    },
    DoubleCover {
        base: Box<Level>,
        /// Half the branch class, in base coordinates.
        half_branch: GradedClass,
    },
}

impl Level {
    /// Number of ring generators contributed by this subtree.
    pub fn width(&self) -> usize {
        match self {
            Level::Curve { .. } | Level::Abelian { .. } | Level::ProjectiveSpace { .. } => 1,
            Level::Product { left, right } => left.width() + right.width(),
            Level::ProjBundle { base, .. } => base.width() + 1,
            Level::DoubleCover { base, .. } => base.width(),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Curve {
                genus,
                name,
                is_base,
            } => {
                write!(
                    f,
                    "curve(g={genus}, point={name}{})",
                    if *is_base { ", base" } else { "" }
                )
            }
            Level::Abelian { dim, chi, name } => {
                write!(f, "abelian(dim={dim}, chi={chi}, polarization={name})")
            }
            Level::ProjectiveSpace { dim, name } => {
                write!(f, "projective_space(dim={dim}, hyperplane={name})")
            }
            Level::Product { left, right } => write!(f, "({left}) x ({right})"),
            Level::ProjBundle {
                base, section_name, ..
            } => {
                write!(f, "proj_bundle(section={section_name}) over {base}")
            }
            Level::DoubleCover { base, .. } => write!(f, "double_cover over {base}"),
        }
    }
}

/// A variety presented by an intersection ring, its canonical class, and
/// the construction trace that produced both.
#[derive(Debug, Clone)]
pub struct TowerVariety {
    ring: IntersectionRing,
    canonical: GradedClass,
    base_genus: Option<u64>,
    base_point: Option<usize>,
    level: Level,
    notes: Vec<String>,
}

/// Ring data accumulated while walking a [`Level`] tree.
struct Assembly {
    generators: Vec<Generator>,
    rules: Vec<RewriteRule>,
    dim: u32,
    multiplier: BigRational,
    top_values: std::collections::BTreeMap<Monomial, BigRational>,
    canonical: GradedClass,
    /// (generator index of the base-curve point class, base genus).
    base: Option<(usize, u64)>,
}

fn factorial(n: u32) -> BigInt {
    (1..=u64::from(n)).fold(BigInt::one(), |acc, k| acc * k)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2g − 2` as an exact rational, safe for any `u64` genus.
fn two_g_minus_two(genus: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(genus) * 2 - 2)
}

fn assemble(level: &Level) -> Result<Assembly> {
    match level {
        Level::Curve {
            genus,
            name,
            is_base,
        } => Ok(Assembly {
            generators: vec![Generator::new(name.clone(), 1)],
            rules: vec![RewriteRule::new(
                Monomial::power_of(0, 2),
                GradedClass::zero(),
            )],
            dim: 1,
            multiplier: BigRational::one(),
            top_values: [(Monomial::generator(0), BigRational::one())].into(),
            canonical: GradedClass::generator(0).scale(&two_g_minus_two(*genus)),
            base: is_base.then_some((0, *genus)),
        }),
        Level::Abelian { dim, chi, name } => {
            let top = BigRational::from_integer(factorial(*dim) * BigInt::from(*chi));
            Ok(Assembly {
                generators: vec![Generator::new(name.clone(), 1)],
                rules: vec![RewriteRule::new(
                    Monomial::power_of(0, dim + 1),
                    GradedClass::zero(),
                )],
                dim: *dim,
                multiplier: BigRational::one(),
                top_values: [(Monomial::power_of(0, *dim), top)].into(),
                canonical: GradedClass::zero(),
                base: None,
            })
        }
        Level::ProjectiveSpace { dim, name } => Ok(Assembly {
            generators: vec![Generator::new(name.clone(), 1)],
            rules: vec![RewriteRule::new(
                Monomial::power_of(0, dim + 1),
                GradedClass::zero(),
            )],
            dim: *dim,
            multiplier: BigRational::one(),
            top_values: [(Monomial::power_of(0, *dim), BigRational::one())].into(),
            canonical: GradedClass::generator(0).scale_int(-i64::from(*dim) - 1),
            base: None,
        }),
        Level::Product { left, right } => {
            let l = assemble(left)?;
            let r = assemble(right)?;
            if l.base.is_some() && r.base.is_some() {
                return Err(Error::Structural(
                    "a product may contain at most one distinguished base curve".into(),
                ));
            }
            let lw = l.generators.len();
            let mut generators = l.generators;
            generators.extend(r.generators);
            let mut rules = l.rules;
            rules.extend(
                r.rules
                    .iter()
                    .map(|rule| RewriteRule::new(rule.lhs().shifted(lw), rule.rhs().shifted(lw))),
            );
            let mut top_values = std::collections::BTreeMap::new();
            for (ml, vl) in &l.top_values {
                for (mr, vr) in &r.top_values {
                    top_values.insert(ml.mul(&mr.shifted(lw)), vl * vr);
                }
            }
            Ok(Assembly {
                generators,
                rules,
                dim: l.dim + r.dim,
                multiplier: l.multiplier * r.multiplier,
                top_values,
                canonical: &l.canonical + &r.canonical.shifted(lw),
                base: l.base.or_else(|| r.base.map(|(i, g)| (i + lw, g))),
            })
        }
        Level::ProjBundle {
            base,
            twist,
            section_name,
        } => {
            let b = assemble(base)?;
            let width = b.generators.len();
            check_divisor_class(twist, &b, "projective-bundle twist")?;
            let xi = width;
            let mut generators = b.generators;
            generators.push(Generator::new(section_name.clone(), 1));
            let mut rules = b.rules;
            rules.push(RewriteRule::new(
                Monomial::power_of(xi, 2),
                twist.scale_int(-1).mul_monomial(&Monomial::generator(xi)),
            ));
            let top_values = b
                .top_values
                .iter()
                .map(|(m, v)| (m.mul(&Monomial::generator(xi)), v.clone()))
                .collect();
            let canonical = &(&GradedClass::generator(xi).scale_int(-2) - twist) + &b.canonical;
            Ok(Assembly {
                generators,
                rules,
                dim: b.dim + 1,
                multiplier: b.multiplier,
                top_values,
                canonical,
                base: b.base,
            })
        }
        Level::DoubleCover { base, half_branch } => {
            let b = assemble(base)?;
            check_divisor_class(half_branch, &b, "half-branch class")?;
            if !half_branch.scale_int(2).is_integral() {
                return Err(Error::Structural(
                    "double cover: twice the half-branch class must be integral".into(),
                ));
            }
            Ok(Assembly {
                generators: b.generators,
                rules: b.rules,
                dim: b.dim,
                multiplier: b.multiplier * int(2),
                top_values: b.top_values,
                canonical: &b.canonical + half_branch,
                base: b.base,
            })
        }
    }
}

/// A class stored at a tower node must be a divisor: codimension 1 in the
/// coordinates of the node's base subtree.
fn check_divisor_class(class: &GradedClass, base: &Assembly, what: &str) -> Result<()> {
    if class.width() > base.generators.len() {
        return Err(Error::Structural(format!(
            "{what} mentions generator index {} but the base has only {} generators",
            class.width() - 1,
            base.generators.len()
        )));
    }
    let codims: Vec<u32> = base.generators.iter().map(|g| g.codim).collect();
    for (m, _) in class.iter() {
        if m.codim(&codims) != 1 {
            return Err(Error::Structural(format!(
                "{what} must be a codimension-1 class"
            )));
        }
    }
    Ok(())
}

/// Fiber replay: rewrite a [`Level`] tree by deleting the base curve at
/// local generator index `local_base`. Returns `None` when the whole
/// subtree *is* the base curve (its fiber is a point and the node
/// disappears); classes stored at surviving nodes lose the base
/// coordinate, which kills every term that contained it.
fn fiber_of(level: &Level, local_base: usize) -> Result<Option<Level>> {
    match level {
        Level::Curve { is_base, .. } => {
            if *is_base && local_base == 0 {
                Ok(None)
            } else {
                Err(Error::Internal(
                    "fiber replay: base index does not point at the base curve".into(),
                ))
            }
        }
        Level::Abelian { .. } | Level::ProjectiveSpace { .. } => Err(Error::Internal(
            "fiber replay: base index points at a non-curve factor".into(),
        )),
        Level::Product { left, right } => {
            let lw = left.width();
            if local_base < lw {
                Ok(Some(match fiber_of(left, local_base)? {
                    None => (**right).clone(),
                    Some(fl) => Level::Product {
                        left: Box::new(fl),
                        right: right.clone(),
                    },
                }))
            } else {
                Ok(Some(match fiber_of(right, local_base - lw)? {
                    None => (**left).clone(),
                    Some(fr) => Level::Product {
                        left: left.clone(),
                        right: Box::new(fr),
                    },
                }))
            }
        }
        Level::ProjBundle {
            base,
            twist,
            section_name,
        } => {
            if local_base >= base.width() {
                return Err(Error::Internal(
                    "fiber replay: base index points at a bundle section".into(),
                ));
            }
            Ok(Some(match fiber_of(base, local_base)? {
                // The bundle sat directly over the base curve: its fiber is
                // a projective line whose point class is the restriction of
                // the section class.
                None => Level::Curve {
                    genus: 0,
                    name: section_name.clone(),
                    is_base: false,
                },
                Some(fb) => Level::ProjBundle {
                    base: Box::new(fb),
                    twist: twist.drop_coordinate(local_base),
                    section_name: section_name.clone(),
                },
            }))
        }
        Level::DoubleCover { base, half_branch } => match fiber_of(base, local_base)? {
            None => Err(Error::Internal(
                "fiber replay: a double cover cannot sit directly over the base curve".into(),
            )),
            Some(fb) => Ok(Some(Level::DoubleCover {
                base: Box::new(fb),
                half_branch: half_branch.drop_coordinate(local_base),
            })),
        },
    }
}

impl TowerVariety {
    pub(crate) fn from_level(level: Level, notes: Vec<String>) -> Result<Self> {
        let a = assemble(&level)?;
        let ring = IntersectionRing::new(a.generators, a.rules, a.dim, a.multiplier, a.top_values)?;
        ring.check_class(&a.canonical)?;
        Ok(TowerVariety {
            ring,
            canonical: a.canonical,
            base_genus: a.base.map(|(_, g)| g),
            base_point: a.base.map(|(i, _)| i),
            level,
            notes,
        })
    }

    /// Smooth curve of genus `g`: one point-class generator named
    /// `point_name`, `c² = 0`, `∫c = 1`, `K = (2g−2)·c`. The curve is the
    /// distinguished base of any tower built on top of it.
    pub fn curve(genus: u64, point_name: &str) -> Result<Self> {
        Self::from_level(
            Level::Curve {
                genus,
                name: point_name.into(),
                is_base: true,
            },
            Vec::new(),
        )
    }

    /// Abelian variety of dimension `d` with a polarization `θ` of Euler
    /// characteristic `chi = h⁰(θ)`: `θ^{d+1} = 0`, `∫θ^d = d!·chi`,
    /// `K = 0`.
    pub fn abelian(dim: u32, chi: u64, polarization_name: &str) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Parameter(
                "abelian: dimension must be at least 1".into(),
            ));
        }
        if chi < 1 {
            return Err(Error::Parameter(
                "abelian: the polarization characteristic chi must be at least 1".into(),
            ));
        }
        Self::from_level(
            Level::Abelian {
                dim,
                chi,
                name: polarization_name.into(),
            },
            Vec::new(),
        )
    }

    /// Projective space of dimension `r`: hyperplane class `h`,
    /// `h^{r+1} = 0`, `∫h^r = 1`, `K = −(r+1)·h`.
    pub fn projective_space(dim: u32, hyperplane_name: &str) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Parameter(
                "projective_space: dimension must be at least 1".into(),
            ));
        }
        Self::from_level(
            Level::ProjectiveSpace {
                dim,
                name: hyperplane_name.into(),
            },
            Vec::new(),
        )
    }

    /// Product of two towers: tensor product of the rings (left factor's
    /// generators first), canonical classes add, top intersection numbers
    /// multiply across factors. At most one factor may carry a base curve,
    /// and generator names must be disjoint.
    pub fn product(left: &TowerVariety, right: &TowerVariety) -> Result<Self> {
        let mut notes = left.notes.clone();
        notes.extend(right.notes.iter().cloned());
        Self::from_level(
            Level::Product {
                left: Box::new(left.level.clone()),
                right: Box::new(right.level.clone()),
            },
            notes,
        )
    }

    /// The `P¹`-bundle `P(O ⊕ O(−L))` over `base`, with section class `ξ`
    /// named `section_name` satisfying `ξ² = −(π*L)·ξ`, and
    /// `K = −2ξ − π*L + π*K_base`.
    pub fn proj_bundle_rank2(
        base: &TowerVariety,
        twist: &GradedClass,
        section_name: &str,
    ) -> Result<Self> {
        Self::from_level(
            Level::ProjBundle {
                base: Box::new(base.level.clone()),
                twist: twist.clone(),
                section_name: section_name.into(),
            },
            base.notes.clone(),
        )
    }

    /// Degree-2 cover branched along a divisor in `|2L|` where
    /// `L = cover.half_branch`. The presentation is unchanged — classes on
    /// the cover are (possibly half-integral) pullbacks — while the degree
    /// multiplier doubles and `K` gains `+L`.
    pub fn double_cover(base: &TowerVariety, cover: &CoverDescriptor) -> Result<Self> {
        let mut notes = base.notes.clone();
        notes.push(
            "double cover: assumes a smooth branch divisor exists in twice the half-branch \
             class; smoothness and base-point-freeness are asserted, not verified"
                .into(),
        );
        Self::from_level(
            Level::DoubleCover {
                base: Box::new(base.level.clone()),
                half_branch: cover.half_branch.clone(),
            },
            notes,
        )
    }

    pub fn ring(&self) -> &IntersectionRing {
        &self.ring
    }

    /// Canonical class of the total space.
    pub fn canonical(&self) -> &GradedClass {
        &self.canonical
    }

    /// Genus of the distinguished base curve, when there is one.
    pub fn base_genus(&self) -> Option<u64> {
        self.base_genus
    }

    /// Generator index of the base curve's point class.
    pub fn base_point(&self) -> Option<usize> {
        self.base_point
    }

    /// The point class `c` of the base curve, as a class on this tower.
    pub fn base_point_class(&self) -> Option<GradedClass> {
        self.base_point.map(GradedClass::generator)
    }

    /// Construction trace.
    pub fn level(&self) -> &Level {
        &self.level
    }

    /// Unverified hypotheses accumulated during construction.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Relative canonical class `K_{X/B} = K_X − f*K_B = K_X − (2g−2)·c`.
    /// `None` when the tower has no distinguished base curve.
    pub fn relative_canonical(&self) -> Option<GradedClass> {
        let index = self.base_point?;
        let genus = self.base_genus?;
        Some(&self.canonical - &GradedClass::generator(index).scale(&two_g_minus_two(genus)))
    }

    /// Restriction of a class to the fiber over a general point of the
    /// base curve: terms containing the base point class die, the rest
    /// lose that coordinate. The result lives on the fiber tower's ring.
    pub fn restrict_to_fiber(&self, class: &GradedClass) -> Result<GradedClass> {
        let index = self.base_point.ok_or_else(|| {
            Error::Structural("restrict_to_fiber: the tower has no distinguished base curve".into())
        })?;
        self.ring.check_class(class)?;
        Ok(class.drop_coordinate(index))
    }

    /// The fiber of the tower over a general point of its base curve,
    /// rebuilt as a tower in its own right by replaying the construction
    /// with the base deleted. The replayed fiber's canonical class is
    /// checked against the restriction of the total space's canonical
    /// class (they agree by adjunction, since the fiber moves in a
    /// base-point-free pencil).
    pub fn fiber(&self) -> Result<TowerVariety> {
        let index = self.base_point.ok_or_else(|| {
            Error::Structural("fiber: the tower has no distinguished base curve".into())
        })?;
        let level = fiber_of(&self.level, index)?
            .ok_or_else(|| Error::Structural("fiber: the tower is the base curve itself".into()))?;
        let fib = TowerVariety::from_level(level, self.notes.clone())?;
        let restricted = self.restrict_to_fiber(&self.canonical)?;
        if fib.canonical != restricted {
            return Err(Error::Internal(format!(
                "fiber canonical mismatch: replayed {} but restriction gives {}",
                fib.ring.class_string(&fib.canonical),
                fib.ring.class_string(&restricted),
            )));
        }
        Ok(fib)
    }
}
