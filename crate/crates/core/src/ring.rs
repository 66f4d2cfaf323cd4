//! Finite commutative rings with identity over an index carrier `0..size`.
//!
//! A [`FiniteRing`] is a cheap, immutable handle around explicit addition
//! and multiplication tables plus the expression that built it. Two rings
//! compare equal when they were built the same way (same provenance), which
//! is what lets elements, ideals and expansion functions from separately
//! constructed but identical rings interoperate.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ideal::{Ideal, MemberSet};

/// How a ring was built. Element indices and element labels are derived from
/// this; see [`FiniteRing::label`].
#[derive(Clone, Debug)]
pub enum Provenance {
    /// `Z_n`; element `k` is the residue `k`.
    ZMod(usize),
    /// `R1 x R2`; element `(a, b)` has index `a * |R2| + b`.
    Product(FiniteRing, FiniteRing),
    /// `R / I`; cosets ordered by their least representative.
    Quotient {
        base: FiniteRing,
        ideal: Vec<usize>,
        gens: Vec<usize>,
        reps: Vec<usize>,
    },
    /// `R_S`; classes ordered by first occurrence of `(r, s)`, `r` outer.
    Localization {
        base: FiniteRing,
        mult_set: Vec<usize>,
        reps: Vec<(usize, usize)>,
    },
    /// `R(+)M` with `M = Z_{d_1} x ... x Z_{d_r}`; element `(r, m)` has index
    /// `r * |M| + m`, `m` read in mixed radix with the first component most
    /// significant.
    TrivialExtension { base: FiniteRing, orders: Vec<usize> },
    /// `A ⋈^f J`, pairs `(a, f(a) + j)` in lexicographic order.
    Amalgamation(AmalgamSource),
    /// A subring of `parent`, elements in increasing parent order.
    Subring {
        parent: FiniteRing,
        members: Vec<usize>,
    },
}

/// The data an amalgamated algebra was built from.
#[derive(Clone, Debug)]
pub struct AmalgamSource {
    pub a: FiniteRing,
    pub b: FiniteRing,
    pub hom: Vec<usize>,
    pub hom_label: String,
    pub j: Vec<usize>,
    pub j_gens: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// Display as `dup(..)`; does not take part in equality.
    pub duplication: bool,
}

impl PartialEq for Provenance {
    fn eq(&self, other: &Self) -> bool {
        use Provenance::*;
        match (self, other) {
            (ZMod(a), ZMod(b)) => a == b,
            (Product(a1, a2), Product(b1, b2)) => a1 == b1 && a2 == b2,
            (
                Quotient { base: b1, ideal: i1, .. },
                Quotient { base: b2, ideal: i2, .. },
            ) => b1 == b2 && i1 == i2,
            (
                Localization { base: b1, mult_set: s1, .. },
                Localization { base: b2, mult_set: s2, .. },
            ) => b1 == b2 && s1 == s2,
            (
                TrivialExtension { base: b1, orders: o1 },
                TrivialExtension { base: b2, orders: o2 },
            ) => b1 == b2 && o1 == o2,
            (Amalgamation(x), Amalgamation(y)) => {
                x.a == y.a && x.b == y.b && x.hom == y.hom && x.j == y.j
            }
            (
                Subring { parent: p1, members: m1 },
                Subring { parent: p2, members: m2 },
            ) => p1 == p2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for Provenance {}

struct RingData {
    size: usize,
    zero: usize,
    one: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    units: Vec<bool>,
    provenance: Provenance,
    lattice: OnceLock<Vec<MemberSet>>,
}

/// A finite commutative ring with identity.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.provenance == other.0.provenance
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.expr())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expr())
    }
}

/// `Z_n`.
pub fn zmod(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    crate::check_size(n)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(((a + b) % n) as u32);
            mul.push(((a * b) % n) as u32);
        }
    }
    Ok(FiniteRing::from_tables(n, 0, 1 % n, add, mul, Provenance::ZMod(n)))
}

/// The componentwise product ring `r1 x r2`.
pub fn product(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing> {
    let (s1, s2) = (r1.size(), r2.size());
    let size = s1 * s2;
    crate::check_size(size)?;
    let split = |x: usize| (x / s2, x % s2);
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (a1, a2) = split(x);
        for y in 0..size {
            let (b1, b2) = split(y);
            add.push((r1.add(a1, b1) * s2 + r2.add(a2, b2)) as u32);
            mul.push((r1.mul(a1, b1) * s2 + r2.mul(a2, b2)) as u32);
        }
    }
    let zero = r1.zero() * s2 + r2.zero();
    let one = r1.one() * s2 + r2.one();
    Ok(FiniteRing::from_tables(
        size,
        zero,
        one,
        add,
        mul,
        Provenance::Product(r1.clone(), r2.clone()),
    ))
}

impl FiniteRing {
    pub(crate) fn from_tables(
        size: usize,
        zero: usize,
        one: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        provenance: Provenance,
    ) -> FiniteRing {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        let mut neg = vec![0u32; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] as usize == zero {
                    neg[a] = b as u32;
                    break;
                }
            }
        }
        let units = (0..size)
            .map(|a| (0..size).any(|b| mul[a * size + b] as usize == one))
            .collect();
        FiniteRing(Arc::new(RingData {
            size,
            zero,
            one,
            add,
            mul,
            neg,
            units,
            provenance,
            lattice: OnceLock::new(),
        }))
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> usize {
        self.0.zero
    }

    pub fn one(&self) -> usize {
        self.0.one
    }

    pub fn provenance(&self) -> &Provenance {
        &self.0.provenance
    }

    /// True for the zero ring, where `1 = 0`.
    pub fn is_zero_ring(&self) -> bool {
        self.0.size == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.0.add[a * self.0.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.0.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.0.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k · a`, the k-fold sum of `a`.
    pub fn times(&self, k: usize, a: usize) -> usize {
        let mut acc = self.zero();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^k`, with `a^0 = 1`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.one();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.0.units[a]
    }

    /// Nilpotency index bound: `a` is nilpotent iff `a^|R| = 0`.
    pub fn is_nilpotent(&self, a: usize) -> bool {
        self.pow(a, self.size()) == self.zero()
    }

    /// Least `k ≥ 1` with `k · 1 = 0`.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one();
        let mut k = 1;
        while acc != self.zero() {
            acc = self.add(acc, self.one());
            k += 1;
        }
        k
    }

    /// Whether `1` generates the additive group, i.e. the ring is a quotient
    /// of `Z`.
    pub fn is_additively_cyclic(&self) -> bool {
        self.characteristic() == self.size()
    }

    /// For an additively cyclic ring, the integer `k` in `[0, char)` with
    /// `a = k · 1`.
    pub(crate) fn integer_coefficients(&self) -> Option<Vec<usize>> {
        if !self.is_additively_cyclic() {
            return None;
        }
        let mut coeff = vec![0; self.size()];
        let mut acc = self.zero();
        for k in 0..self.size() {
            coeff[acc] = k;
            acc = self.add(acc, self.one());
        }
        Some(coeff)
    }

    pub fn check_elem(&self, index: usize) -> Result<()> {
        if index >= self.size() {
            return Err(Error::ElementOutOfRange {
                index,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// A checked element handle.
    pub fn elem(&self, index: usize) -> Result<Elem<'_>> {
        self.check_elem(index)?;
        Ok(Elem { ring: self, index })
    }

    /// Set of nilpotent elements.
    pub fn nilradical(&self) -> Ideal {
        let members = self.elements().filter(|&a| self.is_nilpotent(a)).collect();
        Ideal::from_sorted_unchecked(self, members)
    }

    /// Intersection of the maximal ideals, computed as the set of `x` with
    /// `1 - xr` a unit for every `r`.
    pub fn jacobson_radical(&self) -> Ideal {
        let members = self
            .elements()
            .filter(|&x| {
                self.elements()
                    .all(|r| self.is_unit(self.sub(self.one(), self.mul(x, r))))
            })
            .collect();
        Ideal::from_sorted_unchecked(self, members)
    }

    /// Exhaustively checks the commutative-ring-with-identity axioms.
    pub fn verify_ring_axioms(&self) -> std::result::Result<(), String> {
        let n = self.size();
        let (z, o) = (self.zero(), self.one());
        if n > 1 && z == o {
            return Err("one equals zero in a nonzero ring".into());
        }
        for a in 0..n {
            if self.add(a, z) != a {
                return Err(format!("{a} + 0 != {a}"));
            }
            if self.mul(a, o) != a {
                return Err(format!("{a} * 1 != {a}"));
            }
            if self.add(a, self.neg(a)) != z {
                return Err(format!("{a} has no additive inverse"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("addition not commutative at ({a},{b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("multiplication not commutative at ({a},{b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("addition not associative at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn cached_lattice(&self) -> Option<&Vec<MemberSet>> {
        self.0.lattice.get()
    }

    pub(crate) fn cache_lattice(&self, sets: Vec<MemberSet>) -> &Vec<MemberSet> {
        self.0.lattice.get_or_init(|| sets)
    }

    /// The DSL expression that rebuilds this ring.
    pub fn expr(&self) -> String {
        match self.provenance() {
            Provenance::ZMod(n) => format!("Z{n}"),
            Provenance::Product(a, b) => {
                let right = match b.provenance() {
                    Provenance::Product(..) => format!("({})", b.expr()),
                    _ => b.expr(),
                };
                format!("{} x {}", a.expr(), right)
            }
            Provenance::Quotient { base, gens, .. } => {
                format!("quot({}, {})", base.expr(), fmt_set(gens))
            }
            Provenance::Localization { base, mult_set, .. } => {
                format!("loc({}, {})", base.expr(), fmt_set(mult_set))
            }
            Provenance::TrivialExtension { base, orders } => {
                let orders: Vec<String> = orders.iter().map(|d| d.to_string()).collect();
                format!("triv({}, M[{}])", base.expr(), orders.join(","))
            }
            Provenance::Amalgamation(src) if src.duplication => {
                format!("dup({}, {})", src.a.expr(), fmt_set(&src.j_gens))
            }
            Provenance::Amalgamation(src) => format!(
                "amal({}, {}, {}, {})",
                src.a.expr(),
                src.b.expr(),
                src.hom_label,
                fmt_set(&src.j_gens)
            ),
            Provenance::Subring { parent, members } => {
                format!("sub({}, {})", parent.expr(), fmt_set(members))
            }
        }
    }

    /// Human-readable label of an element, following the provenance.
    pub fn label(&self, a: usize) -> String {
        match self.provenance() {
            Provenance::ZMod(_) => a.to_string(),
            Provenance::Product(r1, r2) => {
                let s2 = r2.size();
                format!("({},{})", r1.label(a / s2), r2.label(a % s2))
            }
            Provenance::Quotient { base, reps, .. } => format!("[{}]", base.label(reps[a])),
            Provenance::Localization { base, reps, .. } => {
                let (r, s) = reps[a];
                format!("{}/{}", base.label(r), base.label(s))
            }
            Provenance::TrivialExtension { base, orders } => {
                let msize: usize = orders.iter().product();
                let (r, mut m) = (a / msize, a % msize);
                let mut comps = vec![0; orders.len()];
                for (i, d) in orders.iter().enumerate().rev() {
                    comps[i] = m % d;
                    m /= d;
                }
                if comps.len() == 1 {
                    format!("({},{})", base.label(r), comps[0])
                } else {
                    let comps: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
                    format!("({},[{}])", base.label(r), comps.join(","))
                }
            }
            Provenance::Amalgamation(src) => {
                let (x, y) = src.pairs[a];
                format!("({},{})", src.a.label(x), src.b.label(y))
            }
            Provenance::Subring { parent, members } => parent.label(members[a]),
        }
    }
}

pub(crate) fn fmt_set(items: &[usize]) -> String {
    let items: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// An element together with the ring it belongs to. Arithmetic between
/// elements of different rings is rejected.
#[derive(Clone, Copy)]
pub struct Elem<'r> {
    ring: &'r FiniteRing,
    index: usize,
}

impl<'r> Elem<'r> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    fn same_ring(&self, other: &Elem<'_>) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Elem<'_>) -> Result<Elem<'r>> {
        self.same_ring(other)?;
        Ok(Elem {
            ring: self.ring,
            index: self.ring.add(self.index, other.index),
        })
    }

    pub fn mul(&self, other: &Elem<'_>) -> Result<Elem<'r>> {
        self.same_ring(other)?;
        Ok(Elem {
            ring: self.ring,
            index: self.ring.mul(self.index, other.index),
        })
    }

    pub fn neg(&self) -> Elem<'r> {
        Elem {
            ring: self.ring,
            index: self.ring.neg(self.index),
        }
    }

    pub fn pow(&self, k: usize) -> Elem<'r> {
        Elem {
            ring: self.ring,
            index: self.ring.pow(self.index, k),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.index)
    }
}

impl PartialEq for Elem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.ring == other.ring
    }
}

impl fmt::Debug for Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.label(self.index))
    }
}

impl fmt::Display for Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.label(self.index))
    }
}

/// A unital ring homomorphism given by its element map. All homomorphism
/// laws are checked exhaustively at construction.
#[derive(Clone)]
pub struct RingHom {
    domain: FiniteRing,
    codomain: FiniteRing,
    map: Arc<Vec<usize>>,
    label: String,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({}: {} -> {})", self.label, self.domain, self.codomain)
    }
}

impl RingHom {
    /// Validates `map` as a unital homomorphism `domain -> codomain`.
    pub fn new(domain: &FiniteRing, codomain: &FiniteRing, map: Vec<usize>) -> Result<RingHom> {
        let label = format!(
            "map[{}]",
            map.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        Self::with_label(domain, codomain, map, label)
    }

    pub(crate) fn with_label(
        domain: &FiniteRing,
        codomain: &FiniteRing,
        map: Vec<usize>,
        label: String,
    ) -> Result<RingHom> {
        if map.len() != domain.size() {
            return Err(Error::HomInvalid(format!(
                "map has {} entries, domain has {} elements",
                map.len(),
                domain.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain.size()) {
            return Err(Error::HomInvalid(format!(
                "image {bad} outside codomain of size {}",
                codomain.size()
            )));
        }
        if map[domain.zero()] != codomain.zero() {
            return Err(Error::HomInvalid("0 is not mapped to 0".into()));
        }
        if map[domain.one()] != codomain.one() {
            return Err(Error::HomInvalid("1 is not mapped to 1".into()));
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if map[domain.add(a, b)] != codomain.add(map[a], map[b]) {
                    return Err(Error::HomInvalid(format!("not additive at ({a},{b})")));
                }
                if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                    return Err(Error::HomInvalid(format!("not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(RingHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map: Arc::new(map),
            label,
        })
    }

    pub fn identity(ring: &FiniteRing) -> RingHom {
        RingHom {
            domain: ring.clone(),
            codomain: ring.clone(),
            map: Arc::new(ring.elements().collect()),
            label: "id".into(),
        }
    }

    /// `k · 1 ↦ k · 1` from an additively cyclic ring (such as `Z_n`).
    pub fn canonical(domain: &FiniteRing, codomain: &FiniteRing) -> Result<RingHom> {
        let coeff = domain.integer_coefficients().ok_or_else(|| {
            Error::HomInvalid(format!("`canon` needs a cyclic domain, got {domain}"))
        })?;
        let map = coeff.iter().map(|&k| codomain.times(k, codomain.one())).collect();
        Self::with_label(domain, codomain, map, "canon".into())
    }

    pub fn domain(&self) -> &FiniteRing {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteRing {
        &self.codomain
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.size()];
        for &y in self.map.iter() {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn kernel(&self) -> Ideal {
        let zero = self.codomain.zero();
        let members = self
            .domain
            .elements()
            .filter(|&a| self.map[a] == zero)
            .collect();
        Ideal::from_sorted_unchecked(&self.domain, members)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if self.codomain != other.domain {
            return Err(Error::RingMismatch);
        }
        let map = self.map.iter().map(|&x| other.apply(x)).collect();
        RingHom::new(&self.domain, &other.codomain, map)
    }
}
