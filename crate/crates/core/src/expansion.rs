//! Expansion functions on the ideal lattice.
//!
//! An [`ExpansionFn`] is stored as a table over the lattice of its ring.
//! Derived expansions built from another ring's expansion (quotients,
//! products, idealizations, amalgamations, localizations) are only defined
//! on ideals of a particular shape; other entries are left empty and
//! evaluating them reports [`Error::UnsupportedShape`].

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{self, RModule};
use crate::error::{Error, Result};
use crate::ideal::{self, Ideal, IdealLattice};
use crate::ring::{fmt_set, FiniteRing, Provenance};

/// Monotonicity pairs checked when validation is sampled.
const SAMPLED_PAIRS: usize = 4096;

/// A validated expansion function `δ : Id(R) -> Id(R)`.
#[derive(Clone)]
pub struct ExpansionFn {
    lattice: Arc<IdealLattice>,
    table: Arc<Vec<Option<usize>>>,
    label: String,
    sampled: bool,
}

impl fmt::Debug for ExpansionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpansionFn({} on {})", self.label, self.ring())
    }
}

impl fmt::Display for ExpansionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// The builtin expansion kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    Identity,
    Radical,
    /// `I ↦ I + K` with `K` generated by the given elements.
    AddK(Vec<usize>),
}

/// First failure of the expansion axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `I ⊄ δ(I)`.
    NotExtensive(Ideal),
    /// `I ⊆ J` but `δ(I) ⊄ δ(J)`.
    NotMonotone(Ideal, Ideal),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotExtensive(i) => write!(f, "{i} is not contained in its image"),
            AxiomViolation::NotMonotone(i, j) => {
                write!(f, "{i} ⊆ {j} but the images are not nested")
            }
        }
    }
}

impl ExpansionFn {
    pub fn ring(&self) -> &FiniteRing {
        self.lattice.ring()
    }

    pub fn lattice(&self) -> &Arc<IdealLattice> {
        &self.lattice
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when the axioms were checked on a sample of ideal pairs only.
    pub fn is_sampled(&self) -> bool {
        self.sampled
    }

    /// Whether every ideal of the lattice has a value.
    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn supports(&self, ideal: &Ideal) -> bool {
        self.lattice
            .index_of(ideal)
            .is_some_and(|i| self.table[i].is_some())
    }

    /// Evaluation by lattice index.
    pub fn eval_index(&self, i: usize) -> Option<usize> {
        self.table[i]
    }

    pub fn eval(&self, ideal: &Ideal) -> Result<Ideal> {
        let i = self.lattice.index_of(ideal).ok_or(Error::RingMismatch)?;
        match self.table[i] {
            Some(j) => Ok(self.lattice.get(j).clone()),
            None => Err(Error::UnsupportedShape {
                label: self.label.clone(),
                ideal: ideal.to_string(),
            }),
        }
    }

    /// `δ(I) ⊆ γ(I)` for every ideal where both are defined.
    pub fn pointwise_le(&self, other: &ExpansionFn) -> bool {
        self.ring() == other.ring()
            && self.table.iter().zip(other.table.iter()).all(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => self.lattice.get(*a).is_subset_of(self.lattice.get(*b)),
                _ => true,
            })
    }

    /// Same values on the whole lattice.
    pub fn same_values(&self, other: &ExpansionFn) -> bool {
        self.ring() == other.ring() && self.table == other.table
    }

    /// Validates a table and wraps it.
    fn from_table(
        lattice: Arc<IdealLattice>,
        table: Vec<Option<usize>>,
        label: String,
    ) -> Result<ExpansionFn> {
        let sampled = lattice.ring().size() > crate::limits().exhaustive_axiom_limit;
        if let Some(v) = table_violation(&lattice, &table, sampled) {
            return Err(Error::AxiomViolation(format!("{label}: {v}")));
        }
        Ok(ExpansionFn {
            lattice,
            table: Arc::new(table),
            label,
            sampled,
        })
    }

    /// Builds a total expansion from a function on ideals.
    pub fn from_fn(
        ring: &FiniteRing,
        label: impl Into<String>,
        f: impl Fn(&Ideal) -> Ideal,
    ) -> Result<ExpansionFn> {
        let lattice = ideal::lattice(ring)?;
        let label = label.into();
        let table = tabulate(&lattice, |i| Some(f(i)), &label)?;
        ExpansionFn::from_table(lattice, table, label)
    }
}

fn tabulate(
    lattice: &IdealLattice,
    f: impl Fn(&Ideal) -> Option<Ideal>,
    label: &str,
) -> Result<Vec<Option<usize>>> {
    lattice
        .ideals()
        .iter()
        .map(|i| match f(i) {
            None => Ok(None),
            Some(image) => lattice.index_of(&image).map(Some).ok_or_else(|| {
                Error::AxiomViolation(format!("{label}: image of {i} is not an ideal of the ring"))
            }),
        })
        .collect()
}

fn table_violation(
    lattice: &IdealLattice,
    table: &[Option<usize>],
    sampled: bool,
) -> Option<AxiomViolation> {
    let ideals = lattice.ideals();
    for (i, v) in table.iter().enumerate() {
        if let Some(v) = v {
            if !ideals[i].is_subset_of(&ideals[*v]) {
                return Some(AxiomViolation::NotExtensive(ideals[i].clone()));
            }
        }
    }
    let check = |i: usize, j: usize| -> Option<AxiomViolation> {
        let (Some(a), Some(b)) = (table[i], table[j]) else {
            return None;
        };
        if ideals[i].is_subset_of(&ideals[j]) && !ideals[a].is_subset_of(&ideals[b]) {
            return Some(AxiomViolation::NotMonotone(
                ideals[i].clone(),
                ideals[j].clone(),
            ));
        }
        None
    };
    let n = ideals.len();
    if sampled && n * n > SAMPLED_PAIRS {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..SAMPLED_PAIRS).find_map(|_| check(rng.gen_range(0..n), rng.gen_range(0..n)))
    } else {
        (0..n).find_map(|i| (0..n).find_map(|j| check(i, j)))
    }
}

/// Checks the expansion axioms of an arbitrary map over the full lattice.
/// Returns the first violation, or `None` when both axioms hold.
pub fn check_expansion_axioms(
    ring: &FiniteRing,
    candidate: impl Fn(&Ideal) -> Ideal,
) -> Result<Option<AxiomViolation>> {
    let lattice = ideal::enumerate_ideals(ring)?;
    let ideals = lattice.ideals();
    let images: Vec<Ideal> = ideals.iter().map(&candidate).collect();
    for (i, img) in ideals.iter().zip(&images) {
        if !i.is_subset_of(img) {
            return Ok(Some(AxiomViolation::NotExtensive(i.clone())));
        }
    }
    for (a, ia) in ideals.iter().zip(&images) {
        for (b, ib) in ideals.iter().zip(&images) {
            if a.is_subset_of(b) && !ia.is_subset_of(ib) {
                return Ok(Some(AxiomViolation::NotMonotone(a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// First pair `(I, J)` in lattice order with `δ(I ∩ J) ≠ δ(I) ∩ δ(J)`, or
/// `None` when δ has the finite intersection property. Pairs where δ is
/// undefined are skipped.
pub fn check_fip(delta: &ExpansionFn) -> Option<(Ideal, Ideal)> {
    let lat = &delta.lattice;
    let n = lat.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (lat.get(i), lat.get(j));
            let meet = a.intersect(b).expect("same ring");
            let m = lat.index_of(&meet).expect("lattice closed under intersection");
            let (Some(dm), Some(da), Some(db)) = (delta.table[m], delta.table[i], delta.table[j])
            else {
                continue;
            };
            let rhs = lat.get(da).intersect(lat.get(db)).expect("same ring");
            if lat.get(dm) != &rhs {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

pub fn builtin_delta(ring: &FiniteRing, kind: DeltaKind) -> Result<ExpansionFn> {
    match kind {
        DeltaKind::Identity => ExpansionFn::from_fn(ring, "id", |i| i.clone()),
        DeltaKind::Radical => ExpansionFn::from_fn(ring, "rad", ideal::radical),
        DeltaKind::AddK(gens) => {
            let k = ideal::ideal_closure(ring, &gens)?;
            let label = format!("addk({})", fmt_set(&gens));
            ExpansionFn::from_fn(ring, label, |i| i.sum(&k).expect("same ring"))
        }
    }
}

/// `outer ∘ inner`.
pub fn delta_compose(outer: &ExpansionFn, inner: &ExpansionFn) -> Result<ExpansionFn> {
    if outer.ring() != inner.ring() {
        return Err(Error::RingMismatch);
    }
    let table = inner
        .table
        .iter()
        .map(|v| v.and_then(|k| outer.table[k]))
        .collect();
    ExpansionFn::from_table(
        inner.lattice.clone(),
        table,
        format!("comp({},{})", outer.label, inner.label),
    )
}

/// `δ_q(J/I) = δ(J)/I` on `R/I`.
pub fn delta_quotient(delta: &ExpansionFn, i: &Ideal) -> Result<ExpansionFn> {
    let (q, _) = ideal::quotient_ring(delta.ring(), i)?;
    delta_quotient_on(&q, delta)
}

/// [`delta_quotient`] onto an existing quotient ring.
pub(crate) fn delta_quotient_on(q: &FiniteRing, delta: &ExpansionFn) -> Result<ExpansionFn> {
    let base = delta.ring();
    let Provenance::Quotient { base: qbase, reps, .. } = q.provenance() else {
        return Err(shape_mismatch("q", q));
    };
    if qbase != base {
        return Err(Error::RingMismatch);
    }
    // class of x: the coset whose least representative is min(x + I)
    let ideal_members = match q.provenance() {
        Provenance::Quotient { ideal, .. } => ideal.clone(),
        _ => unreachable!(),
    };
    let class_of_rep: std::collections::HashMap<usize, usize> =
        reps.iter().enumerate().map(|(c, &r)| (r, c)).collect();
    let proj: Vec<usize> = base
        .elements()
        .map(|x| {
            let rep = ideal_members.iter().map(|&k| base.add(x, k)).min().unwrap_or(x);
            class_of_rep[&rep]
        })
        .collect();
    let lattice = ideal::lattice(q)?;
    let label = format!("q({})", delta.label);
    let table = tabulate(
        &lattice,
        |k| {
            let pre: Vec<usize> = base.elements().filter(|&x| k.contains(proj[x])).collect();
            let pre = Ideal::from_sorted_unchecked(base, pre);
            let d = delta.eval(&pre).ok()?;
            let mut img: Vec<usize> = d.members().iter().map(|&x| proj[x]).collect();
            img.sort_unstable();
            img.dedup();
            Some(Ideal::from_sorted_unchecked(q, img))
        },
        &label,
    )?;
    ExpansionFn::from_table(lattice, table, label)
}

/// `δ_×(I1 × I2) = δ1(I1) × δ2(I2)` on `R1 × R2`.
pub fn delta_product(d1: &ExpansionFn, d2: &ExpansionFn) -> Result<ExpansionFn> {
    let ring = crate::ring::product(d1.ring(), d2.ring())?;
    delta_product_on(&ring, d1, d2)
}

pub(crate) fn delta_product_on(
    ring: &FiniteRing,
    d1: &ExpansionFn,
    d2: &ExpansionFn,
) -> Result<ExpansionFn> {
    let Provenance::Product(r1, r2) = ring.provenance() else {
        return Err(shape_mismatch("prod", ring));
    };
    if r1 != d1.ring() || r2 != d2.ring() {
        return Err(Error::RingMismatch);
    }
    let lattice = ideal::lattice(ring)?;
    let label = format!("prod({},{})", d1.label, d2.label);
    let table = tabulate(
        &lattice,
        |x| {
            let (i1, i2) = product_components(ring, x);
            let (a, b) = (d1.eval(&i1).ok()?, d2.eval(&i2).ok()?);
            Some(product_ideal(ring, &a, &b))
        },
        &label,
    )?;
    ExpansionFn::from_table(lattice, table, label)
}

/// Splits an ideal of `R1 × R2` into `I1 × I2`.
pub fn product_components(ring: &FiniteRing, x: &Ideal) -> (Ideal, Ideal) {
    let Provenance::Product(r1, r2) = ring.provenance() else {
        panic!("product_components on a non-product ring");
    };
    let s2 = r2.size();
    let i1 = r1
        .elements()
        .filter(|&a| x.contains(a * s2 + r2.zero()))
        .collect();
    let i2 = r2
        .elements()
        .filter(|&b| x.contains(r1.zero() * s2 + b))
        .collect();
    (
        Ideal::from_sorted_unchecked(r1, i1),
        Ideal::from_sorted_unchecked(r2, i2),
    )
}

/// `I1 × I2` as an ideal of the product ring.
pub fn product_ideal(ring: &FiniteRing, i1: &Ideal, i2: &Ideal) -> Ideal {
    let Provenance::Product(_, r2) = ring.provenance() else {
        panic!("product_ideal on a non-product ring");
    };
    let s2 = r2.size();
    let mut members: Vec<usize> = i1
        .members()
        .iter()
        .flat_map(|&a| i2.members().iter().map(move |&b| a * s2 + b))
        .collect();
    members.sort_unstable();
    Ideal::from_sorted_unchecked(ring, members)
}

/// `δ_(+)(I(+)N) = δ(I)(+)M` on `R(+)M`.
pub fn delta_idealization(delta: &ExpansionFn, module: &RModule) -> Result<ExpansionFn> {
    let ring = construct::trivial_extension(delta.ring(), module)?;
    delta_idealization_on(&ring, delta)
}

pub(crate) fn delta_idealization_on(ring: &FiniteRing, delta: &ExpansionFn) -> Result<ExpansionFn> {
    let Provenance::TrivialExtension { base, orders } = ring.provenance() else {
        return Err(shape_mismatch("plus", ring));
    };
    if base != delta.ring() {
        return Err(Error::RingMismatch);
    }
    let msize: usize = orders.iter().product();
    let lattice = ideal::lattice(ring)?;
    let label = format!("plus({})", delta.label);
    let table = tabulate(
        &lattice,
        |x| {
            let (i, _) = homogeneous_parts(ring, x)?;
            let d = delta.eval(&i).ok()?;
            let members = d
                .members()
                .iter()
                .flat_map(|&r| (0..msize).map(move |m| r * msize + m))
                .collect();
            Some(Ideal::from_sorted_unchecked(ring, members))
        },
        &label,
    )?;
    ExpansionFn::from_table(lattice, table, label)
}

/// For an ideal of `R(+)M` of the form `I(+)N`, returns `I` and the member
/// indices of `N`; `None` for other shapes.
pub fn homogeneous_parts(ring: &FiniteRing, x: &Ideal) -> Option<(Ideal, Vec<usize>)> {
    let Provenance::TrivialExtension { base, orders } = ring.provenance() else {
        return None;
    };
    let msize: usize = orders.iter().product();
    let i: Vec<usize> = base.elements().filter(|&r| x.contains(r * msize)).collect();
    let n: Vec<usize> = (0..msize).filter(|&m| x.contains(base.zero() * msize + m)).collect();
    (i.len() * n.len() == x.len()).then(|| (Ideal::from_sorted_unchecked(base, i), n))
}

/// `δ_⋈f` on `A ⋈^f J`: `δ(I) ⋈^f J` on ideals `I ⋈^f J`, and, when `delta1`
/// (an expansion of `f(A) + J`) is given, `{(a, f(a)+j) : f(a)+j ∈ δ1(K)}` on
/// ideals `K̄^f`. An ideal of both shapes must get the same value from both
/// rules.
pub fn delta_amalgam(
    ring: &FiniteRing,
    delta: &ExpansionFn,
    delta1: Option<&ExpansionFn>,
) -> Result<ExpansionFn> {
    let Provenance::Amalgamation(src) = ring.provenance() else {
        return Err(shape_mismatch("bow", ring));
    };
    if &src.a != delta.ring() {
        return Err(Error::RingMismatch);
    }
    let am = construct::Amalgam::from_ring(ring)?;
    if let Some(d1) = delta1 {
        if d1.ring() != am.sub() {
            return Err(Error::RingMismatch);
        }
    }
    let lattice = ideal::lattice(ring)?;
    let label = match delta1 {
        Some(d1) => format!("bow({},{})", delta.label, d1.label),
        None => format!("bow({})", delta.label),
    };
    let mut table = Vec::with_capacity(lattice.len());
    for x in lattice.ideals() {
        let via_ij = am
            .ij_component(x)
            .and_then(|i| delta.eval(&i).ok())
            .map(|d| am.ij_ideal_unchecked(&d));
        let via_k = delta1.and_then(|d1| {
            let k = am.kbar_component(x)?;
            let d = d1.eval(&k).ok()?;
            Some(am.kbar_ideal_unchecked(&d))
        });
        let value = match (via_ij, via_k) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidParams(format!(
                    "{label} assigns {a} and {b} to the ideal {x}"
                )))
            }
            (Some(a), _) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        table.push(match value {
            Some(v) => Some(lattice.index_of(&v).ok_or_else(|| {
                Error::AxiomViolation(format!("{label}: image of {x} is not an ideal"))
            })?),
            None => None,
        });
    }
    ExpansionFn::from_table(lattice, table, label)
}

/// `δ_S(Y) = (δ(Y ∩ R))_S` on `R_S`, where `Y ∩ R` is the contraction along
/// `r ↦ r/1`. On extended ideals `I_S` this agrees with `(δ(I))_S` whenever
/// `δ(I)_S = δ(I_S ∩ R)_S`; [`localization_compatible`] checks that.
pub fn delta_localize(ring: &FiniteRing, delta: &ExpansionFn) -> Result<ExpansionFn> {
    let Provenance::Localization { base, .. } = ring.provenance() else {
        return Err(shape_mismatch("loc", ring));
    };
    if base != delta.ring() {
        return Err(Error::RingMismatch);
    }
    let phi = construct::localization_map(ring)?;
    let lattice = ideal::lattice(ring)?;
    let label = format!("loc({})", delta.label);
    let table = tabulate(
        &lattice,
        |y| {
            let contraction = construct::hom_preimage(&phi, y).ok()?;
            let d = delta.eval(&contraction).ok()?;
            construct::hom_image(&phi, &d).ok().map(|(img, _)| img)
        },
        &label,
    )?;
    ExpansionFn::from_table(lattice, table, label)
}

/// Whether `δ_S(I_S) = (δ(I))_S` for the given ideal `I` of the base ring.
pub fn localization_compatible(
    delta_s: &ExpansionFn,
    delta: &ExpansionFn,
    i: &Ideal,
) -> Result<bool> {
    let phi = construct::localization_map(delta_s.ring())?;
    let (i_s, _) = construct::hom_image(&phi, i)?;
    let (d_s, _) = construct::hom_image(&phi, &delta.eval(i)?)?;
    Ok(delta_s.eval(&i_s)? == d_s)
}

fn shape_mismatch(expr: &str, ring: &FiniteRing) -> Error {
    Error::ShapeMismatch {
        expr: expr.into(),
        ring: ring.expr(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_closure;
    use crate::ring::{product, zmod};

    fn gens(r: &FiniteRing, g: &[usize]) -> Ideal {
        ideal_closure(r, g).unwrap()
    }

    #[test]
    fn builtins() {
        let z8 = zmod(8).unwrap();
        let id = builtin_delta(&z8, DeltaKind::Identity).unwrap();
        assert_eq!(id.eval(&gens(&z8, &[4])).unwrap(), gens(&z8, &[4]));
        let rad = builtin_delta(&z8, DeltaKind::Radical).unwrap();
        assert_eq!(rad.eval(&gens(&z8, &[])).unwrap().members(), &[0, 2, 4, 6]);
        let z12 = zmod(12).unwrap();
        let add4 = builtin_delta(&z12, DeltaKind::AddK(vec![4])).unwrap();
        assert_eq!(add4.eval(&gens(&z12, &[3])).unwrap().len(), 12);
        assert_eq!(add4.label(), "addk({4})");
    }

    #[test]
    fn composition() {
        let z12 = zmod(12).unwrap();
        let rad = builtin_delta(&z12, DeltaKind::Radical).unwrap();
        let id = builtin_delta(&z12, DeltaKind::Identity).unwrap();
        assert!(delta_compose(&rad, &rad).unwrap().same_values(&rad));
        let c = delta_compose(&rad, &id).unwrap();
        assert_eq!(c.eval(&gens(&z12, &[4])).unwrap(), gens(&z12, &[2]));
        assert_eq!(c.label(), "comp(rad,id)");
        let z8 = zmod(8).unwrap();
        let c8 = delta_compose(
            &builtin_delta(&z8, DeltaKind::Identity).unwrap(),
            &builtin_delta(&z8, DeltaKind::Radical).unwrap(),
        )
        .unwrap();
        assert_eq!(c8.eval(&gens(&z8, &[])).unwrap().members(), &[0, 2, 4, 6]);
        assert_eq!(delta_compose(&rad, &c8).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn axiom_checks() {
        let z12 = zmod(12).unwrap();
        assert_eq!(check_expansion_axioms(&z12, ideal::radical).unwrap(), None);
        let four = gens(&z12, &[4]);
        assert_eq!(
            check_expansion_axioms(&z12, |i| i.sum(&four).unwrap()).unwrap(),
            None
        );
        let z8 = zmod(8).unwrap();
        let zero = Ideal::zero(&z8);
        assert_eq!(
            check_expansion_axioms(&z8, |_| zero.clone()).unwrap(),
            Some(AxiomViolation::NotExtensive(gens(&z8, &[4])))
        );
    }

    #[test]
    fn fip() {
        let z12 = zmod(12).unwrap();
        assert!(check_fip(&builtin_delta(&z12, DeltaKind::Radical).unwrap()).is_none());
        assert!(check_fip(&builtin_delta(&z12, DeltaKind::Identity).unwrap()).is_none());
    }

    #[test]
    fn quotient_expansion() {
        let z12 = zmod(12).unwrap();
        let rad = builtin_delta(&z12, DeltaKind::Radical).unwrap();
        let six = gens(&z12, &[6]);
        let dq = delta_quotient(&rad, &six).unwrap();
        let (q, pi) = ideal::quotient_ring(&z12, &six).unwrap();
        let two = construct::hom_image(&pi, &gens(&z12, &[2])).unwrap().0;
        assert_eq!(dq.eval(&two).unwrap(), two);
        let four = gens(&z12, &[4]);
        let dq4 = delta_quotient(&rad, &four).unwrap();
        let (_, pi4) = ideal::quotient_ring(&z12, &four).unwrap();
        let zero = Ideal::zero(dq4.ring());
        let two4 = construct::hom_image(&pi4, &gens(&z12, &[2])).unwrap().0;
        assert_eq!(dq4.eval(&zero).unwrap(), two4);
        assert_eq!(dq.ring(), &q);
    }

    #[test]
    fn product_expansion() {
        let z4 = zmod(4).unwrap();
        let z2 = zmod(2).unwrap();
        let d = delta_product(
            &builtin_delta(&z4, DeltaKind::Radical).unwrap(),
            &builtin_delta(&z2, DeltaKind::Radical).unwrap(),
        )
        .unwrap();
        let r = product(&z4, &z2).unwrap();
        let zero = Ideal::zero(&r);
        let expect = product_ideal(&r, &gens(&z4, &[2]), &Ideal::zero(&z2));
        assert_eq!(d.eval(&zero).unwrap(), expect);
        assert!(d.is_total());
    }
}
