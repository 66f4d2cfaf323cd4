//! Derived rings: localizations, trivial extensions, amalgamated algebras and
//! duplications, together with homomorphism utilities.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expansion::ExpansionFn;
use crate::ideal::{self, Ideal};
use crate::ring::{fmt_set, AmalgamSource, FiniteRing, Provenance, RingHom};

/// The module `Z_{d_1} x ... x Z_{d_r}` over an additively cyclic ring, with
/// `r · (m_1, ..., m_r) = (k m_1, ..., k m_r)` where `r = k · 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModule {
    base: FiniteRing,
    orders: Vec<usize>,
    coeff: Vec<usize>,
}

impl RModule {
    pub fn new(base: &FiniteRing, orders: &[usize]) -> Result<RModule> {
        let coeff = base.integer_coefficients().ok_or_else(|| {
            Error::InvalidModule(format!(
                "base ring {base} is not a quotient of Z (additively cyclic)"
            ))
        })?;
        if orders.is_empty() {
            return Err(Error::InvalidModule("module needs at least one component".into()));
        }
        let ch = base.characteristic();
        for &d in orders {
            if d == 0 || !ch.is_multiple_of(d) {
                return Err(Error::InvalidModule(format!(
                    "order {d} does not divide the characteristic {ch} of {base}"
                )));
            }
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        crate::check_size(size)?;
        let module = RModule {
            base: base.clone(),
            orders: orders.to_vec(),
            coeff,
        };
        module.verify_axioms().map_err(Error::InvalidModule)?;
        Ok(module)
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    fn components(&self, m: usize) -> Vec<usize> {
        let mut m = m;
        let mut comps = vec![0; self.orders.len()];
        for (i, d) in self.orders.iter().enumerate().rev() {
            comps[i] = m % d;
            m /= d;
        }
        comps
    }

    fn index(&self, comps: &[usize]) -> usize {
        comps
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (c, d)| acc * d + c % d)
    }

    pub fn add(&self, m1: usize, m2: usize) -> usize {
        let (a, b) = (self.components(m1), self.components(m2));
        let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        self.index(&sum)
    }

    pub fn scale(&self, r: usize, m: usize) -> usize {
        let k = self.coeff[r];
        let scaled: Vec<usize> = self.components(m).iter().map(|c| k * c).collect();
        self.index(&scaled)
    }

    fn verify_axioms(&self) -> std::result::Result<(), String> {
        let r = &self.base;
        let n = self.size();
        for m in 0..n {
            if self.scale(r.one(), m) != m {
                return Err(format!("1 does not act trivially on {m}"));
            }
            for a in r.elements() {
                for b in r.elements() {
                    if self.scale(r.mul(a, b), m) != self.scale(a, self.scale(b, m)) {
                        return Err(format!("(ab)m != a(bm) at a={a}, b={b}, m={m}"));
                    }
                    if self.scale(r.add(a, b), m) != self.add(self.scale(a, m), self.scale(b, m)) {
                        return Err(format!("(a+b)m != am+bm at a={a}, b={b}, m={m}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A multiplicatively closed subset containing 1 and not 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultSet {
    ring: FiniteRing,
    members: Vec<usize>,
}

impl MultSet {
    pub fn new(ring: &FiniteRing, members: &[usize]) -> Result<MultSet> {
        for &m in members {
            ring.check_elem(m)?;
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if !members.contains(&ring.one()) {
            return Err(Error::InvalidMultSet("does not contain 1".into()));
        }
        if members.contains(&ring.zero()) {
            return Err(Error::InvalidMultSet("contains 0".into()));
        }
        for &a in &members {
            for &b in &members {
                if members.binary_search(&ring.mul(a, b)).is_err() {
                    return Err(Error::InvalidMultSet(format!(
                        "not closed: {} * {} = {}",
                        ring.label(a),
                        ring.label(b),
                        ring.label(ring.mul(a, b))
                    )));
                }
            }
        }
        Ok(MultSet {
            ring: ring.clone(),
            members,
        })
    }

    /// `R \ P` for a prime ideal `P`.
    pub fn complement(p: &Ideal) -> Result<MultSet> {
        let r = p.ring();
        let members: Vec<usize> = r.elements().filter(|&x| !p.contains(x)).collect();
        MultSet::new(r, &members)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

fn fractions_equal(r: &FiniteRing, s: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let diff = r.sub(r.mul(a, d), r.mul(c, b));
    s.iter().any(|&t| r.mul(t, diff) == r.zero())
}

/// The localization `R_S` and the canonical map `r ↦ r/1`.
pub fn localize(ring: &FiniteRing, s: &MultSet) -> Result<(FiniteRing, RingHom)> {
    if s.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let sm = s.members();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut class_of: HashMap<(usize, usize), usize> = HashMap::new();
    for r in ring.elements() {
        for &t in sm {
            let found = reps
                .iter()
                .position(|&rep| fractions_equal(ring, sm, rep, (r, t)));
            let c = found.unwrap_or_else(|| {
                reps.push((r, t));
                reps.len() - 1
            });
            class_of.insert((r, t), c);
        }
    }
    let q = reps.len();
    crate::check_size(q)?;
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &(a, b) in &reps {
        for &(c, d) in &reps {
            let den = ring.mul(b, d);
            let num = ring.add(ring.mul(a, d), ring.mul(c, b));
            add.push(class_of[&(num, den)] as u32);
            mul.push(class_of[&(ring.mul(a, c), den)] as u32);
        }
    }
    let zero = class_of[&(ring.zero(), ring.one())];
    let one = class_of[&(ring.one(), ring.one())];
    let map: Vec<usize> = ring.elements().map(|r| class_of[&(r, ring.one())]).collect();
    let loc = FiniteRing::from_tables(
        q,
        zero,
        one,
        add,
        mul,
        Provenance::Localization {
            base: ring.clone(),
            mult_set: sm.to_vec(),
            reps,
        },
    );
    let phi = RingHom::new(ring, &loc, map)?;
    Ok((loc, phi))
}

/// The canonical map `r ↦ r/1` of a ring built by [`localize`].
pub fn localization_map(loc: &FiniteRing) -> Result<RingHom> {
    let Provenance::Localization { base, mult_set, reps } = loc.provenance() else {
        return Err(Error::ShapeMismatch {
            expr: "localization map".into(),
            ring: loc.expr(),
        });
    };
    let map = base
        .elements()
        .map(|r| {
            reps.iter()
                .position(|&rep| fractions_equal(base, mult_set, rep, (r, base.one())))
                .expect("every fraction has a class")
        })
        .collect();
    RingHom::new(base, loc, map)
}

/// The trivial ring extension `R(+)M` with `(a,b)(c,d) = (ac, ad + cb)`.
pub fn trivial_extension(base: &FiniteRing, module: &RModule) -> Result<FiniteRing> {
    if module.base() != base {
        return Err(Error::RingMismatch);
    }
    let (rs, ms) = (base.size(), module.size());
    let size = rs * ms;
    crate::check_size(size)?;
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (a, b) = (x / ms, x % ms);
        for y in 0..size {
            let (c, d) = (y / ms, y % ms);
            add.push((base.add(a, c) * ms + module.add(b, d)) as u32);
            let m = module.add(module.scale(a, d), module.scale(c, b));
            mul.push((base.mul(a, c) * ms + m) as u32);
        }
    }
    Ok(FiniteRing::from_tables(
        size,
        base.zero() * ms,
        base.one() * ms,
        add,
        mul,
        Provenance::TrivialExtension {
            base: base.clone(),
            orders: module.orders().to_vec(),
        },
    ))
}

/// The module a trivial extension was built from.
pub fn extension_module(ring: &FiniteRing) -> Result<RModule> {
    match ring.provenance() {
        Provenance::TrivialExtension { base, orders } => RModule::new(base, orders),
        _ => Err(Error::ShapeMismatch {
            expr: "triv".into(),
            ring: ring.expr(),
        }),
    }
}

/// The inclusion `r ↦ (r, 0)` of `R` into `R(+)M`.
pub fn inclusion(base: &FiniteRing, ext: &FiniteRing) -> Result<RingHom> {
    match ext.provenance() {
        Provenance::TrivialExtension { base: b, orders } if b == base => {
            let ms: usize = orders.iter().product();
            let map = base.elements().map(|r| r * ms).collect();
            RingHom::with_label(base, ext, map, "inj".into())
        }
        _ => Err(Error::HomInvalid(format!(
            "`inj` needs a codomain of the form triv({base}, M[..]), got {ext}"
        ))),
    }
}

/// The ideal `0(+)M` of a trivial extension.
pub fn zero_plus_module(ext: &FiniteRing) -> Result<Ideal> {
    let Provenance::TrivialExtension { base, orders } = ext.provenance() else {
        return Err(Error::ShapeMismatch {
            expr: "0(+)M".into(),
            ring: ext.expr(),
        });
    };
    let ms: usize = orders.iter().product();
    Ok(Ideal::from_sorted_unchecked(
        ext,
        (0..ms).map(|m| base.zero() * ms + m).collect(),
    ))
}

/// `I(+)N` for an ideal `I` of the base and a list of module element indices.
pub fn homogeneous_ideal(ext: &FiniteRing, i: &Ideal, n: &[usize]) -> Result<Ideal> {
    let Provenance::TrivialExtension { orders, .. } = ext.provenance() else {
        return Err(Error::ShapeMismatch {
            expr: "I(+)N".into(),
            ring: ext.expr(),
        });
    };
    let ms: usize = orders.iter().product();
    let mut members: Vec<usize> = i
        .members()
        .iter()
        .flat_map(|&r| n.iter().map(move |&m| r * ms + m))
        .collect();
    members.sort_unstable();
    members.dedup();
    Ideal::from_members(ext, &members)
}

/// A subring of `parent` given by its members.
pub fn subring(parent: &FiniteRing, members: &[usize]) -> Result<FiniteRing> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let find = |x: usize, what: &str| {
        pos.get(&x).copied().ok_or_else(|| {
            Error::InvalidParams(format!("{} is not a subring: missing {what}", fmt_set(&members)))
        })
    };
    let zero = find(parent.zero(), "0")?;
    let one = find(parent.one(), "1")?;
    let n = members.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &a in &members {
        find(parent.neg(a), "a negative")?;
        for &b in &members {
            add.push(find(parent.add(a, b), "a sum")? as u32);
            mul.push(find(parent.mul(a, b), "a product")? as u32);
        }
    }
    Ok(FiniteRing::from_tables(
        n,
        zero,
        one,
        add,
        mul,
        Provenance::Subring {
            parent: parent.clone(),
            members,
        },
    ))
}

/// Which kind of amalgamation ideal to build.
#[derive(Clone, Debug)]
pub enum AmalgamIdealShape {
    /// `I ⋈^f J` for an ideal `I` of `A`.
    IJ(Ideal),
    /// `K̄^f` for an ideal `K` of `f(A) + J`.
    Kbar(Ideal),
}

/// The amalgamated algebra `A ⋈^f J = {(a, f(a) + j)}` inside `A x B`.
#[derive(Clone, Debug)]
pub struct Amalgam {
    f: RingHom,
    j: Ideal,
    ring: FiniteRing,
    pairs: Vec<(usize, usize)>,
    sub: FiniteRing,
    /// `b ↦` index in `sub`, for `b ∈ f(A) + J`.
    sub_index: HashMap<usize, usize>,
}

/// Builds `A ⋈^f J`.
pub fn amalgamate(a: &FiniteRing, b: &FiniteRing, f: &RingHom, j: &Ideal) -> Result<Amalgam> {
    build_amalgam(a, b, f, j, false)
}

/// The amalgamated duplication `A ⋈ I = A ⋈^{id} I`.
pub fn duplicate(a: &FiniteRing, i: &Ideal) -> Result<Amalgam> {
    build_amalgam(a, a, &RingHom::identity(a), i, true)
}

fn build_amalgam(
    a: &FiniteRing,
    b: &FiniteRing,
    f: &RingHom,
    j: &Ideal,
    duplication: bool,
) -> Result<Amalgam> {
    if f.domain() != a || f.codomain() != b {
        return Err(Error::HomInvalid(format!(
            "homomorphism {} does not go from {a} to {b}",
            f.label()
        )));
    }
    if j.ring() != b {
        return Err(Error::RingMismatch);
    }
    crate::check_size(a.size() * j.len())?;
    let mut pairs: Vec<(usize, usize)> = a
        .elements()
        .flat_map(|x| j.members().iter().map(move |&y| (x, b.add(f.apply(x), y))))
        .collect();
    pairs.sort_unstable();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = pairs.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            add.push(index[&(a.add(x1, x2), b.add(y1, y2))] as u32);
            mul.push(index[&(a.mul(x1, x2), b.mul(y1, y2))] as u32);
        }
    }
    let zero = index[&(a.zero(), b.zero())];
    let one = index[&(a.one(), b.one())];
    let ring = FiniteRing::from_tables(
        n,
        zero,
        one,
        add,
        mul,
        Provenance::Amalgamation(AmalgamSource {
            a: a.clone(),
            b: b.clone(),
            hom: f.map().to_vec(),
            hom_label: f.label().to_string(),
            j: j.members().to_vec(),
            j_gens: j.generators(),
            pairs: pairs.clone(),
            duplication,
        }),
    );
    Amalgam::assemble(f.clone(), j.clone(), ring, pairs)
}


impl Amalgam {
    fn assemble(f: RingHom, j: Ideal, ring: FiniteRing, pairs: Vec<(usize, usize)>) -> Result<Amalgam> {
        let mut image: Vec<usize> = pairs.iter().map(|&(_, y)| y).collect();
        image.sort_unstable();
        image.dedup();
        let sub = subring(f.codomain(), &image)?;
        let sub_index = image.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        Ok(Amalgam {
            f,
            j,
            ring,
            pairs,
            sub,
            sub_index,
        })
    }

    /// Recovers the amalgamation data of a ring built by [`amalgamate`] or
    /// [`duplicate`].
    pub fn from_ring(ring: &FiniteRing) -> Result<Amalgam> {
        let Provenance::Amalgamation(src) = ring.provenance() else {
            return Err(Error::ShapeMismatch {
                expr: "amalgamation".into(),
                ring: ring.expr(),
            });
        };
        let f = RingHom::with_label(&src.a, &src.b, src.hom.clone(), src.hom_label.clone())?;
        let j = Ideal::from_sorted_unchecked(&src.b, src.j.clone());
        Amalgam::assemble(f, j, ring.clone(), src.pairs.clone())
    }

    pub fn a(&self) -> &FiniteRing {
        self.f.domain()
    }

    pub fn b(&self) -> &FiniteRing {
        self.f.codomain()
    }

    pub fn f(&self) -> &RingHom {
        &self.f
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    /// The carrier ring `A ⋈^f J`.
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    /// The subring `f(A) + J` of `B`.
    pub fn sub(&self) -> &FiniteRing {
        &self.sub
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// The pair `(a, f(a) + j)` behind a carrier element.
    pub fn pair(&self, x: usize) -> (usize, usize) {
        self.pairs[x]
    }

    /// `p_A : (a, b) ↦ a`.
    pub fn proj_a(&self) -> Result<RingHom> {
        let map = self.pairs.iter().map(|&(a, _)| a).collect();
        RingHom::new(&self.ring, self.a(), map)
    }

    /// `p_B : (a, b) ↦ b`, as a map onto `f(A) + J`.
    pub fn proj_sub(&self) -> Result<RingHom> {
        let map = self.pairs.iter().map(|&(_, b)| self.sub_index[&b]).collect();
        RingHom::new(&self.ring, &self.sub, map)
    }

    /// `I ⋈^f J` for an ideal `I` of `A`.
    pub fn ij_ideal(&self, i: &Ideal) -> Result<Ideal> {
        if i.ring() != self.a() {
            return Err(Error::RingMismatch);
        }
        let x = self.ij_ideal_unchecked(i);
        x.verify().map_err(Error::NotAnIdeal)?;
        Ok(x)
    }

    pub(crate) fn ij_ideal_unchecked(&self, i: &Ideal) -> Ideal {
        let members = (0..self.size()).filter(|&x| i.contains(self.pairs[x].0)).collect();
        Ideal::from_sorted_unchecked(&self.ring, members)
    }

    /// `K̄^f = {(a, f(a) + j) : f(a) + j ∈ K}` for an ideal `K` of `f(A) + J`.
    pub fn kbar_ideal(&self, k: &Ideal) -> Result<Ideal> {
        if k.ring() != &self.sub {
            return Err(Error::RingMismatch);
        }
        let x = self.kbar_ideal_unchecked(k);
        x.verify().map_err(Error::NotAnIdeal)?;
        Ok(x)
    }

    pub(crate) fn kbar_ideal_unchecked(&self, k: &Ideal) -> Ideal {
        let members = (0..self.size())
            .filter(|&x| k.contains(self.sub_index[&self.pairs[x].1]))
            .collect();
        Ideal::from_sorted_unchecked(&self.ring, members)
    }

    /// `I` when the ideal has the form `I ⋈^f J`.
    pub fn ij_component(&self, x: &Ideal) -> Option<Ideal> {
        let mut i: Vec<usize> = x.members().iter().map(|&p| self.pairs[p].0).collect();
        i.sort_unstable();
        i.dedup();
        (i.len() * self.j.len() == x.len()).then(|| Ideal::from_sorted_unchecked(self.a(), i))
    }

    /// `K` when the ideal has the form `K̄^f`.
    pub fn kbar_component(&self, x: &Ideal) -> Option<Ideal> {
        let mut k: Vec<usize> = x
            .members()
            .iter()
            .map(|&p| self.sub_index[&self.pairs[p].1])
            .collect();
        k.sort_unstable();
        k.dedup();
        let k = Ideal::from_sorted_unchecked(&self.sub, k);
        let full = (0..self.size())
            .filter(|&p| k.contains(self.sub_index[&self.pairs[p].1]))
            .count();
        (full == x.len()).then_some(k)
    }
}

/// Builds `I ⋈^f J` or `K̄^f`.
pub fn amalgam_ideal(amalgam: &Amalgam, shape: &AmalgamIdealShape) -> Result<Ideal> {
    match shape {
        AmalgamIdealShape::IJ(i) => amalgam.ij_ideal(i),
        AmalgamIdealShape::Kbar(k) => amalgam.kbar_ideal(k),
    }
}

/// The subring `f(A) + J` and its inclusion into `B`.
pub fn subring_fa_plus_j(amalgam: &Amalgam) -> Result<(FiniteRing, RingHom)> {
    let Provenance::Subring { members, .. } = amalgam.sub.provenance() else {
        unreachable!("f(A) + J is always built as a subring");
    };
    let embed = RingHom::new(&amalgam.sub, amalgam.b(), members.clone())?;
    Ok((amalgam.sub.clone(), embed))
}

/// `{a : f(a) ∈ X}`.
pub fn hom_preimage(f: &RingHom, x: &Ideal) -> Result<Ideal> {
    if x.ring() != f.codomain() {
        return Err(Error::RingMismatch);
    }
    let members = f.domain().elements().filter(|&a| x.contains(f.apply(a))).collect();
    Ok(Ideal::from_sorted_unchecked(f.domain(), members))
}

/// The ideal generated by `f(X)`. The flag is set when `f` is not surjective
/// or `f(X)` itself is not an ideal, i.e. when a closure was taken.
pub fn hom_image(f: &RingHom, x: &Ideal) -> Result<(Ideal, bool)> {
    if x.ring() != f.domain() {
        return Err(Error::RingMismatch);
    }
    let mut image: Vec<usize> = x.members().iter().map(|&a| f.apply(a)).collect();
    image.sort_unstable();
    image.dedup();
    let closed = ideal::ideal_closure(f.codomain(), &image)?;
    let flagged = !f.is_surjective() || closed.len() != image.len();
    Ok((closed, flagged))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomIdealMode {
    Preimage,
    Image,
}

/// Preimage or image of an ideal; see [`hom_preimage`] and [`hom_image`].
pub fn hom_ideal(mode: HomIdealMode, f: &RingHom, x: &Ideal) -> Result<(Ideal, bool)> {
    match mode {
        HomIdealMode::Preimage => hom_preimage(f, x).map(|i| (i, false)),
        HomIdealMode::Image => hom_image(f, x),
    }
}

/// First ideal `I` of the codomain with `δ(f⁻¹(I)) ≠ f⁻¹(γ(I))`, or `None`
/// when `f` is a δγ-homomorphism.
pub fn is_delta_gamma_hom(
    f: &RingHom,
    delta: &ExpansionFn,
    gamma: &ExpansionFn,
) -> Result<Option<Ideal>> {
    if delta.ring() != f.domain() || gamma.ring() != f.codomain() {
        return Err(Error::RingMismatch);
    }
    for i in gamma.lattice().ideals() {
        let lhs = delta.eval(&hom_preimage(f, i)?)?;
        let rhs = hom_preimage(f, &gamma.eval(i)?)?;
        if lhs != rhs {
            return Ok(Some(i.clone()));
        }
    }
    Ok(None)
}

fn additive_order(r: &FiniteRing, a: usize) -> usize {
    let mut k = 1;
    let mut acc = a;
    while acc != r.zero() {
        acc = r.add(acc, a);
        k += 1;
    }
    k
}

/// Additive generators of `r`, starting with `1`.
fn additive_generators(r: &FiniteRing) -> Vec<usize> {
    let mut in_span = vec![false; r.size()];
    let mut span = vec![r.zero()];
    in_span[r.zero()] = true;
    let mut gens = Vec::new();
    let order = std::iter::once(r.one()).chain(r.elements());
    for g in order {
        if in_span[g] {
            continue;
        }
        gens.push(g);
        let mut layer = span.clone();
        loop {
            layer = layer.iter().map(|&x| r.add(x, g)).collect();
            if in_span[layer[0]] {
                break;
            }
            for &y in &layer {
                in_span[y] = true;
                span.push(y);
            }
        }
    }
    gens
}

/// Searches for a ring isomorphism `r1 -> r2` by backtracking over images of
/// additive generators.
pub fn find_isomorphism(r1: &FiniteRing, r2: &FiniteRing) -> Option<RingHom> {
    let n = r1.size();
    if n != r2.size() || r1.characteristic() != r2.characteristic() {
        return None;
    }
    let count = |r: &FiniteRing, p: &dyn Fn(usize) -> bool| r.elements().filter(|&x| p(x)).count();
    if count(r1, &|x| r1.is_unit(x)) != count(r2, &|x| r2.is_unit(x))
        || count(r1, &|x| r1.is_nilpotent(x)) != count(r2, &|x| r2.is_nilpotent(x))
    {
        return None;
    }
    let gens = additive_generators(r1);
    let orders2: Vec<usize> = r2.elements().map(|y| additive_order(r2, y)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[r1.zero()] = r2.zero();
    used[r2.zero()] = true;
    let span = vec![r1.zero()];
    if search(r1, r2, &gens, &orders2, span, &mut map, &mut used) {
        RingHom::new(r1, r2, map).ok()
    } else {
        None
    }
}

fn search(
    r1: &FiniteRing,
    r2: &FiniteRing,
    gens: &[usize],
    orders2: &[usize],
    span: Vec<usize>,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some((&g, rest)) = gens.split_first() else {
        return r1.elements().all(|a| {
            r1.elements()
                .all(|b| map[r1.mul(a, b)] == r2.mul(map[a], map[b]))
        });
    };
    let ord = additive_order(r1, g);
    let candidates: Vec<usize> = if g == r1.one() {
        vec![r2.one()]
    } else {
        r2.elements().filter(|&h| !used[h] && orders2[h] == ord).collect()
    };
    for h in candidates {
        let mut assigned = Vec::new();
        let mut ok = true;
        let mut layer = span.clone();
        let mut new_span = span.clone();
        'grow: loop {
            let next: Vec<usize> = layer.iter().map(|&x| r1.add(x, g)).collect();
            let mut all_known = true;
            for (&x, &y) in layer.iter().zip(&next) {
                let target = r2.add(map[x], h);
                if map[y] != usize::MAX {
                    if map[y] != target {
                        ok = false;
                        break 'grow;
                    }
                } else {
                    all_known = false;
                    if used[target] {
                        ok = false;
                        break 'grow;
                    }
                    map[y] = target;
                    used[target] = true;
                    assigned.push(y);
                    new_span.push(y);
                }
            }
            if all_known {
                break;
            }
            layer = next;
        }
        if ok && search(r1, r2, rest, orders2, new_span, map, used) {
            return true;
        }
        for y in assigned {
            used[map[y]] = false;
            map[y] = usize::MAX;
        }
    }
    false
}

pub fn are_isomorphic(r1: &FiniteRing, r2: &FiniteRing) -> bool {
    find_isomorphism(r1, r2).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_closure;
    use crate::ring::{product, zmod};

    #[test]
    fn localizations() {
        let z12 = zmod(12).unwrap();
        let odds = MultSet::new(&z12, &[1, 3, 5, 7, 9, 11]).unwrap();
        let (l, phi) = localize(&z12, &odds).unwrap();
        let units = MultSet::new(&z12, &[1, 5, 7, 11]).unwrap();
        assert_eq!(localize(&z12, &units).unwrap().0.size(), 12);
        assert_eq!(l.size(), 4);
        assert!(are_isomorphic(&l, &zmod(4).unwrap()));
        assert_eq!(localization_map(&l).unwrap().map(), phi.map());
        let p3 = ideal_closure(&z12, &[3]).unwrap();
        let (l3, _) = localize(&z12, &MultSet::complement(&p3).unwrap()).unwrap();
        assert_eq!(l3.size(), 3);
        let z6 = zmod(6).unwrap();
        let (l6, _) = localize(&z6, &MultSet::new(&z6, &[1]).unwrap()).unwrap();
        assert!(are_isomorphic(&l6, &z6));
        assert!(MultSet::new(&z6, &[1, 2]).is_err());
        assert!(MultSet::new(&z6, &[2, 4]).is_err());
        assert!(MultSet::new(&z6, &[0, 1]).is_err());
    }

    #[test]
    fn trivial_extensions() {
        let z2 = zmod(2).unwrap();
        let t = trivial_extension(&z2, &RModule::new(&z2, &[2]).unwrap()).unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(t.characteristic(), 2);
        assert_eq!(t.nilradical().members(), &[0, 1]);
        assert_eq!(t.expr(), "triv(Z2, M[2])");
        t.verify_ring_axioms().unwrap();
        let t22 = trivial_extension(&z2, &RModule::new(&z2, &[2, 2]).unwrap()).unwrap();
        assert_eq!(ideal::enumerate_ideals(&t22).unwrap().len(), 6);
        let z4 = zmod(4).unwrap();
        assert_eq!(
            trivial_extension(&z4, &RModule::new(&z4, &[4]).unwrap()).unwrap().size(),
            16
        );
        assert!(RModule::new(&z4, &[3]).is_err());
        assert!(RModule::new(&product(&z2, &z2).unwrap(), &[2]).is_err());
    }

    #[test]
    fn amalgamations() {
        let z4 = zmod(4).unwrap();
        let two = ideal_closure(&z4, &[2]).unwrap();
        let am = amalgamate(&z4, &z4, &RingHom::identity(&z4), &two).unwrap();
        assert_eq!(am.size(), 8);
        am.ring().verify_ring_axioms().unwrap();
        let dup = duplicate(&z4, &two).unwrap();
        assert_eq!(dup.pairs, am.pairs);
        assert_eq!(dup.ring().expr(), "dup(Z4, {2})");
        assert_eq!(am.ring().expr(), "amal(Z4, Z4, id, {2})");
        let collapsed = amalgamate(&z4, &z4, &RingHom::identity(&z4), &Ideal::zero(&z4)).unwrap();
        assert!(are_isomorphic(collapsed.ring(), &z4));

        let zero = am.ij_ideal(&Ideal::zero(&z4)).unwrap();
        let labels: Vec<String> = zero.members().iter().map(|&x| am.ring().label(x)).collect();
        assert_eq!(labels, ["(0,0)", "(0,2)"]);
        assert_eq!(am.ij_ideal(&two).unwrap().len(), 4);
        let (sub, _) = subring_fa_plus_j(&am).unwrap();
        assert_eq!(sub.size(), 4);
        let k = ideal_closure(&sub, &[2]).unwrap();
        let kbar = am.kbar_ideal(&k).unwrap();
        assert_eq!(kbar.len(), 4);
        assert_eq!(am.kbar_component(&kbar), Some(k));
        assert_eq!(am.ij_component(&zero), Some(Ideal::zero(&z4)));
    }

    #[test]
    fn idealization_as_amalgam() {
        let z2 = zmod(2).unwrap();
        let t = trivial_extension(&z2, &RModule::new(&z2, &[2]).unwrap()).unwrap();
        let inj = inclusion(&z2, &t).unwrap();
        let am = amalgamate(&z2, &t, &inj, &zero_plus_module(&t).unwrap()).unwrap();
        assert!(are_isomorphic(am.ring(), &t));
        let (sub, _) = subring_fa_plus_j(&am).unwrap();
        assert_eq!(sub.size(), t.size());
        let z4 = zmod(4).unwrap();
        assert!(RingHom::canonical(&z2, &z4).is_err());
    }

    #[test]
    fn hom_ideals() {
        let z12 = zmod(12).unwrap();
        let z4 = zmod(4).unwrap();
        let f = RingHom::canonical(&z12, &z4).unwrap();
        let two4 = ideal_closure(&z4, &[2]).unwrap();
        assert_eq!(hom_preimage(&f, &two4).unwrap(), ideal_closure(&z12, &[2]).unwrap());
        let (img, flagged) = hom_image(&f, &ideal_closure(&z12, &[2]).unwrap()).unwrap();
        assert_eq!(img, two4);
        assert!(!flagged);
        let z8 = zmod(8).unwrap();
        let id = RingHom::identity(&z8);
        assert!(hom_preimage(&id, &Ideal::zero(&z8)).unwrap().is_zero());
    }

    #[test]
    fn delta_gamma_homs() {
        use crate::expansion::{builtin_delta, DeltaKind};
        let z12 = zmod(12).unwrap();
        let z4 = zmod(4).unwrap();
        let f = RingHom::canonical(&z12, &z4).unwrap();
        let rad12 = builtin_delta(&z12, DeltaKind::Radical).unwrap();
        let rad4 = builtin_delta(&z4, DeltaKind::Radical).unwrap();
        assert_eq!(is_delta_gamma_hom(&f, &rad12, &rad4).unwrap(), None);
        let z8 = zmod(8).unwrap();
        let id8 = builtin_delta(&z8, DeltaKind::Identity).unwrap();
        let rad8 = builtin_delta(&z8, DeltaKind::Radical).unwrap();
        let g = RingHom::identity(&z8);
        assert_eq!(
            is_delta_gamma_hom(&g, &id8, &rad8).unwrap(),
            Some(Ideal::zero(&z8))
        );
        assert_eq!(is_delta_gamma_hom(&g, &rad8, &rad8).unwrap(), None);
    }

    #[test]
    fn isomorphism_search() {
        let z2 = zmod(2).unwrap();
        let z3 = zmod(3).unwrap();
        let z6 = zmod(6).unwrap();
        assert!(are_isomorphic(&product(&z2, &z3).unwrap(), &z6));
        let z4 = zmod(4).unwrap();
        assert!(!are_isomorphic(&product(&z2, &z2).unwrap(), &z4));
        let t = trivial_extension(&z2, &RModule::new(&z2, &[2]).unwrap()).unwrap();
        assert!(!are_isomorphic(&t, &product(&z2, &z2).unwrap()));
        assert!(!are_isomorphic(&t, &z4));
    }
}
