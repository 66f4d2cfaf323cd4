//! Ideals of a finite ring, the ideal lattice, and ideal arithmetic.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{fmt_set, FiniteRing, Provenance, RingHom};

/// Sorted member list plus a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MemberSet {
    members: Vec<usize>,
    bits: Vec<u64>,
}

impl MemberSet {
    fn from_sorted(size: usize, members: Vec<usize>) -> MemberSet {
        let mut bits = vec![0u64; size.div_ceil(64)];
        for &m in &members {
            bits[m / 64] |= 1 << (m % 64);
        }
        MemberSet { members, bits }
    }

    fn from_mask(mask: &[bool]) -> MemberSet {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        MemberSet::from_sorted(mask.len(), members)
    }

    #[inline]
    fn contains(&self, x: usize) -> bool {
        self.bits[x / 64] >> (x % 64) & 1 == 1
    }
}

/// An ideal, stored as its sorted member list.
#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    set: MemberSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.set.members == other.set.members && self.ring == other.ring
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.set.members.hash(state);
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lattice order: cardinality first, then lexicographic members.
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.set.members.cmp(&other.set.members))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.members().iter().map(|&m| self.ring.label(m)).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl Ideal {
    pub(crate) fn from_sorted_unchecked(ring: &FiniteRing, members: Vec<usize>) -> Ideal {
        Ideal {
            set: MemberSet::from_sorted(ring.size(), members),
            ring: ring.clone(),
        }
    }

    pub(crate) fn from_mask_unchecked(ring: &FiniteRing, mask: &[bool]) -> Ideal {
        Ideal {
            set: MemberSet::from_mask(mask),
            ring: ring.clone(),
        }
    }

    /// Builds an ideal from an explicit member list, rejecting sets that are
    /// not ideals.
    pub fn from_members(ring: &FiniteRing, members: &[usize]) -> Result<Ideal> {
        for &m in members {
            ring.check_elem(m)?;
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let ideal = Ideal::from_sorted_unchecked(ring, sorted);
        ideal.verify().map_err(Error::NotAnIdeal)?;
        Ok(ideal)
    }

    pub fn zero(ring: &FiniteRing) -> Ideal {
        Ideal::from_sorted_unchecked(ring, vec![ring.zero()])
    }

    pub fn whole(ring: &FiniteRing) -> Ideal {
        Ideal::from_sorted_unchecked(ring, ring.elements().collect())
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.set.members
    }

    pub fn len(&self) -> usize {
        self.set.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.len() <= other.len() && self.members().iter().all(|&x| other.contains(x))
    }

    /// Re-checks the ideal axioms: contains zero, closed under addition and
    /// negation, absorbs multiplication.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let r = &self.ring;
        if !self.contains(r.zero()) {
            return Err("does not contain zero".into());
        }
        for &x in self.members() {
            if !self.contains(r.neg(x)) {
                return Err(format!("not closed under negation at {}", r.label(x)));
            }
            for &y in self.members() {
                if !self.contains(r.add(x, y)) {
                    return Err(format!(
                        "not closed under addition at ({},{})",
                        r.label(x),
                        r.label(y)
                    ));
                }
            }
            for s in r.elements() {
                if !self.contains(r.mul(s, x)) {
                    return Err(format!(
                        "does not absorb {} * {}",
                        r.label(s),
                        r.label(x)
                    ));
                }
            }
        }
        Ok(())
    }

    /// A small generating set, chosen greedily in increasing index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = Ideal::zero(&self.ring);
        for &x in self.members() {
            if !current.contains(x) {
                gens.push(x);
                current = closure_with(&current, &[x]);
            }
        }
        gens
    }

    /// Generators in DSL form, e.g. `{4}`.
    pub fn gens_expr(&self) -> String {
        fmt_set(&self.generators())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ideal_algebra(IdealOp::Sum, self, other)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        ideal_algebra(IdealOp::Product, self, other)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        ideal_algebra(IdealOp::Intersect, self, other)
    }

    pub fn radical(&self) -> Ideal {
        radical(self)
    }

    /// The ideal power `I^k` (`I^0 = R`).
    pub fn power(&self, k: usize) -> Ideal {
        let mut acc = Ideal::whole(&self.ring);
        for _ in 0..k {
            acc = ideal_algebra(IdealOp::Product, &acc, self).expect("same ring");
        }
        acc
    }
}

/// `I + sum(R * extra)`.
fn closure_with(base: &Ideal, extra: &[usize]) -> Ideal {
    let r = &base.ring;
    let n = r.size();
    let mut mask = vec![false; n];
    let mut list: Vec<usize> = base.members().to_vec();
    for &x in &list {
        mask[x] = true;
    }
    let mut step_mask = vec![false; n];
    let mut steps = Vec::new();
    for &g in extra {
        for s in r.elements() {
            let p = r.mul(s, g);
            if !mask[p] && !step_mask[p] {
                step_mask[p] = true;
                steps.push(p);
            }
        }
    }
    let mut idx = 0;
    while idx < list.len() {
        let x = list[idx];
        for &p in &steps {
            let y = r.add(x, p);
            if !mask[y] {
                mask[y] = true;
                list.push(y);
            }
        }
        idx += 1;
    }
    Ideal::from_mask_unchecked(r, &mask)
}

/// The smallest ideal containing `gens`.
pub fn ideal_closure(ring: &FiniteRing, gens: &[usize]) -> Result<Ideal> {
    for &g in gens {
        ring.check_elem(g)?;
    }
    Ok(closure_with(&Ideal::zero(ring), gens))
}

/// All ideals of a finite ring, ordered by cardinality then members.
#[derive(Clone)]
pub struct IdealLattice {
    ring: FiniteRing,
    ideals: Vec<Ideal>,
    index: HashMap<Vec<usize>, usize>,
}

impl fmt::Debug for IdealLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealLattice")
            .field("ring", &self.ring)
            .field("ideals", &self.ideals)
            .finish()
    }
}

impl IdealLattice {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn get(&self, i: usize) -> &Ideal {
        &self.ideals[i]
    }

    pub fn index_of(&self, ideal: &Ideal) -> Option<usize> {
        if ideal.ring != self.ring {
            return None;
        }
        self.index.get(ideal.members()).copied()
    }

    pub fn proper(&self) -> impl Iterator<Item = &Ideal> {
        self.ideals.iter().filter(|i| i.is_proper())
    }

    /// Maximal ideals that are prime; in a finite ring every prime is maximal.
    pub fn primes(&self) -> Vec<Ideal> {
        self.proper()
            .filter(|p| {
                let r = &self.ring;
                r.elements().all(|x| {
                    p.contains(x) || r.elements().all(|y| !p.contains(r.mul(x, y)) || p.contains(y))
                })
            })
            .cloned()
            .collect()
    }
}

/// Enumerates the ideal lattice by closure-BFS from the zero ideal.
pub fn enumerate_ideals(ring: &FiniteRing) -> Result<IdealLattice> {
    crate::check_size(ring.size())?;
    let sets = match ring.cached_lattice() {
        Some(sets) => sets,
        None => ring.cache_lattice(bfs_ideals(ring)),
    };
    let ideals: Vec<Ideal> = sets
        .iter()
        .map(|s| Ideal {
            ring: ring.clone(),
            set: s.clone(),
        })
        .collect();
    let index = ideals
        .iter()
        .enumerate()
        .map(|(i, ideal)| (ideal.members().to_vec(), i))
        .collect();
    Ok(IdealLattice {
        ring: ring.clone(),
        ideals,
        index,
    })
}

/// Shared handle to a ring's lattice.
pub fn lattice(ring: &FiniteRing) -> Result<Arc<IdealLattice>> {
    enumerate_ideals(ring).map(Arc::new)
}

fn bfs_ideals(ring: &FiniteRing) -> Vec<MemberSet> {
    let start = Ideal::zero(ring);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(start.members().to_vec());
    let mut found = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(current) = queue.pop_front() {
        for x in ring.elements() {
            if current.contains(x) {
                continue;
            }
            let next = closure_with(&current, &[x]);
            if seen.insert(next.members().to_vec()) {
                found.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    found.sort();
    found.into_iter().map(|i| i.set).collect()
}

/// `{x : x^k ∈ I for some 1 ≤ k ≤ |R|}`.
pub fn radical(ideal: &Ideal) -> Ideal {
    let r = &ideal.ring;
    let k = r.size().max(1);
    let members = r.elements().filter(|&x| ideal.contains(r.pow(x, k))).collect();
    Ideal::from_sorted_unchecked(r, members)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
}

pub fn ideal_algebra(op: IdealOp, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if i.ring != j.ring {
        return Err(Error::RingMismatch);
    }
    let r = &i.ring;
    Ok(match op {
        IdealOp::Sum => closure_with(i, j.members()),
        IdealOp::Product => {
            let mut mask = vec![false; r.size()];
            let mut products = Vec::new();
            for &x in i.members() {
                for &y in j.members() {
                    let p = r.mul(x, y);
                    if !mask[p] {
                        mask[p] = true;
                        products.push(p);
                    }
                }
            }
            closure_with(&Ideal::zero(r), &products)
        }
        IdealOp::Intersect => {
            let members = i.members().iter().copied().filter(|&x| j.contains(x)).collect();
            Ideal::from_sorted_unchecked(r, members)
        }
    })
}

/// `R / I` together with the canonical surjection.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingHom)> {
    if ideal.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let n = ring.size();
    let rep_of: Vec<usize> = ring
        .elements()
        .map(|x| {
            ideal
                .members()
                .iter()
                .map(|&i| ring.add(x, i))
                .min()
                .expect("ideal contains zero")
        })
        .collect();
    let mut reps: Vec<usize> = rep_of.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut class_of_rep = vec![usize::MAX; n];
    for (c, &rep) in reps.iter().enumerate() {
        class_of_rep[rep] = c;
    }
    let class = |x: usize| class_of_rep[rep_of[x]];
    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            add.push(class(ring.add(a, b)) as u32);
            mul.push(class(ring.mul(a, b)) as u32);
        }
    }
    let quotient = FiniteRing::from_tables(
        q,
        class(ring.zero()),
        class(ring.one()),
        add,
        mul,
        Provenance::Quotient {
            base: ring.clone(),
            ideal: ideal.members().to_vec(),
            gens: ideal.generators(),
            reps,
        },
    );
    let map = ring.elements().map(class).collect();
    let projection = RingHom::new(ring, &quotient, map)?;
    Ok((quotient, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{product, zmod};

    #[test]
    fn closure_examples() {
        let z12 = zmod(12).unwrap();
        assert_eq!(ideal_closure(&z12, &[4]).unwrap().members(), &[0, 4, 8]);
        let z8 = zmod(8).unwrap();
        assert_eq!(ideal_closure(&z8, &[]).unwrap().members(), &[0]);
        assert_eq!(ideal_closure(&z8, &[3]).unwrap().len(), 8);
        assert!(ideal_closure(&z8, &[9]).is_err());
    }

    #[test]
    fn lattice_counts() {
        let z12 = zmod(12).unwrap();
        let lat = enumerate_ideals(&z12).unwrap();
        assert_eq!(lat.len(), 6);
        let sizes: Vec<usize> = lat.ideals().iter().map(|i| i.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
        let z2 = zmod(2).unwrap();
        assert_eq!(enumerate_ideals(&product(&z2, &z2).unwrap()).unwrap().len(), 4);
        for ideal in lat.ideals() {
            ideal.verify().unwrap();
        }
    }

    #[test]
    fn radical_examples() {
        let z8 = zmod(8).unwrap();
        assert_eq!(radical(&Ideal::zero(&z8)).members(), &[0, 2, 4, 6]);
        let z12 = zmod(12).unwrap();
        let four = ideal_closure(&z12, &[4]).unwrap();
        assert_eq!(radical(&four).members(), &[0, 2, 4, 6, 8, 10]);
        assert_eq!(radical(&Ideal::whole(&z12)).len(), 12);
    }

    #[test]
    fn algebra_examples() {
        let z12 = zmod(12).unwrap();
        let i4 = ideal_closure(&z12, &[4]).unwrap();
        let i6 = ideal_closure(&z12, &[6]).unwrap();
        let i2 = ideal_closure(&z12, &[2]).unwrap();
        assert!(i4.intersect(&i6).unwrap().is_zero());
        assert_eq!(i4.sum(&i6).unwrap(), i2);
        assert!(i2.product(&i6).unwrap().is_zero());
        let z6 = zmod(6).unwrap();
        assert_eq!(
            i4.sum(&Ideal::zero(&z6)).unwrap_err(),
            Error::RingMismatch
        );
    }

    #[test]
    fn quotients() {
        let z12 = zmod(12).unwrap();
        let i4 = ideal_closure(&z12, &[4]).unwrap();
        let (q, pi) = quotient_ring(&z12, &i4).unwrap();
        assert_eq!(q.size(), 4);
        assert_eq!(q.characteristic(), 4);
        assert_eq!(pi.kernel(), i4);
        q.verify_ring_axioms().unwrap();
        let z8 = zmod(8).unwrap();
        assert_eq!(quotient_ring(&z8, &Ideal::zero(&z8)).unwrap().0.size(), 8);
        assert!(quotient_ring(&z8, &Ideal::whole(&z8)).unwrap().0.is_zero_ring());
        assert_eq!(q.expr(), "quot(Z12, {4})");
    }

    #[test]
    fn from_members_rejects_non_ideals() {
        let z8 = zmod(8).unwrap();
        assert!(Ideal::from_members(&z8, &[0, 4]).is_ok());
        assert!(matches!(
            Ideal::from_members(&z8, &[0, 3]),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn primes_of_z12() {
        let z12 = zmod(12).unwrap();
        let primes = enumerate_ideals(&z12).unwrap().primes();
        let gens: Vec<String> = primes.iter().map(|p| p.gens_expr()).collect();
        assert_eq!(gens, vec!["{3}", "{2}"]);
    }
}
