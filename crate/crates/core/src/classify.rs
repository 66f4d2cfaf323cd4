//! Brute-force decision procedures for the ideal classes of the
//! (m,n)-closed δ-primary family.
//!
//! Every predicate scans its quantifier domain in lexicographic order and
//! returns the first violating element or tuple, so results are
//! deterministic and each failure can be re-checked by hand. The "weakly"
//! variants add the hypothesis that the power or product is nonzero; the
//! zero ideal is therefore vacuously weakly-anything.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::ExpansionFn;
use crate::ideal::{self, Ideal, IdealOp};
use crate::ring::{fmt_set, FiniteRing};

/// The exponents `m` and `n` of an (m,n)-closed condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MnParams {
    pub m: usize,
    pub n: usize,
}

impl MnParams {
    pub fn new(m: usize, n: usize) -> Result<MnParams> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "m and n must be positive, got m={m}, n={n}"
            )));
        }
        Ok(MnParams { m, n })
    }
}

impl fmt::Display for MnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// A concrete counterexample to a defining condition. Elements are ring
/// indices; ideals are given by their generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Element { a: usize },
    Pair { x: usize, y: usize },
    Tuple { xs: Vec<usize> },
    Ideals { gens: Vec<Vec<usize>> },
}

impl Witness {
    /// The witness using element labels of `ring`.
    pub fn describe(&self, ring: &FiniteRing) -> String {
        match self {
            Witness::Element { a } => ring.label(*a),
            Witness::Pair { x, y } => format!("({},{})", ring.label(*x), ring.label(*y)),
            Witness::Tuple { xs } => {
                let xs: Vec<String> = xs.iter().map(|&x| ring.label(x)).collect();
                format!("({})", xs.join(","))
            }
            Witness::Ideals { gens } => {
                let gs: Vec<String> = gens.iter().map(|g| fmt_set(g)).collect();
                format!("({})", gs.join(","))
            }
        }
    }

    /// The witness elements as a flat list (ideal witnesses list generators).
    pub fn elements(&self) -> Vec<usize> {
        match self {
            Witness::Element { a } => vec![*a],
            Witness::Pair { x, y } => vec![*x, *y],
            Witness::Tuple { xs } => xs.clone(),
            Witness::Ideals { gens } => gens.concat(),
        }
    }
}

/// Outcome of a classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

fn require_proper(i: &Ideal) -> Result<()> {
    if i.is_proper() {
        Ok(())
    } else {
        Err(Error::ImproperIdeal(i.to_string()))
    }
}

fn require_n(n: usize) -> Result<()> {
    let cap = crate::limits().max_absorbing_n;
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    if n > cap {
        return Err(Error::NTooLarge { n, cap });
    }
    Ok(())
}

/// `δ(I)`, with a ring check.
fn expand(i: &Ideal, delta: &ExpansionFn) -> Result<Ideal> {
    if delta.ring() != i.ring() {
        return Err(Error::RingMismatch);
    }
    delta.eval(i)
}

/// (Weakly) (m,n)-closed, with `a^n ∈ δ(I)` as conclusion when δ is given
/// and `a^n ∈ I` otherwise.
pub fn classify_mn(
    i: &Ideal,
    p: MnParams,
    delta: Option<&ExpansionFn>,
    weakly: bool,
) -> Result<Verdict> {
    require_proper(i)?;
    let target = match delta {
        Some(d) => expand(i, d)?,
        None => i.clone(),
    };
    let r = i.ring();
    for a in r.elements() {
        let am = r.pow(a, p.m);
        if weakly && am == r.zero() {
            continue;
        }
        if i.contains(am) && !target.contains(r.pow(a, p.n)) {
            return Ok(Verdict::Fails(Witness::Element { a }));
        }
    }
    Ok(Verdict::Holds)
}

/// (Weakly) semi-n-absorbing δ-primary: the (n+1, n) case.
pub fn is_semi_n_absorbing(
    i: &Ideal,
    n: usize,
    delta: Option<&ExpansionFn>,
    weakly: bool,
) -> Result<Verdict> {
    classify_mn(i, MnParams::new(n + 1, n)?, delta, weakly)
}

/// (Weakly) δ-primary: `xy ∈ I` implies `x ∈ I` or `y ∈ δ(I)`.
pub fn is_delta_primary(i: &Ideal, delta: &ExpansionFn, weakly: bool) -> Result<Verdict> {
    require_proper(i)?;
    let d = expand(i, delta)?;
    let r = i.ring();
    for x in r.elements() {
        if i.contains(x) {
            continue;
        }
        for y in r.elements() {
            let xy = r.mul(x, y);
            if weakly && xy == r.zero() {
                continue;
            }
            if i.contains(xy) && !d.contains(y) {
                return Ok(Verdict::Fails(Witness::Pair { x, y }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Visits nondecreasing tuples of `len` indices below `bound` in
/// lexicographic order, stopping when `visit` returns `true`.
fn nondecreasing(bound: usize, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        bound: usize,
        len: usize,
        start: usize,
        tuple: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if tuple.len() == len {
            return visit(tuple);
        }
        for x in start..bound {
            tuple.push(x);
            if rec(bound, len, x, tuple, visit) {
                return true;
            }
            tuple.pop();
        }
        false
    }
    rec(bound, len, 0, &mut Vec::with_capacity(len), visit)
}

fn product_of(r: &FiniteRing, xs: &[usize]) -> usize {
    xs.iter().fold(r.one(), |acc, &x| r.mul(acc, x))
}

/// Product of all entries except position `skip`.
fn product_without(r: &FiniteRing, xs: &[usize], skip: usize) -> usize {
    xs.iter()
        .enumerate()
        .filter(|&(k, _)| k != skip)
        .fold(r.one(), |acc, (_, &x)| r.mul(acc, x))
}

/// (Weakly) n-absorbing: whenever `x_1 ... x_{n+1} ∈ I`, some product of
/// `n` of the factors lies in `I`. The condition is symmetric, so only
/// nondecreasing tuples are scanned; the first violating tuple in full
/// lexicographic order is always nondecreasing.
pub fn is_n_absorbing(i: &Ideal, n: usize, weakly: bool) -> Result<Verdict> {
    require_proper(i)?;
    require_n(n)?;
    let r = i.ring();
    let mut witness = None;
    nondecreasing(r.size(), n + 1, &mut |xs| {
        let p = product_of(r, xs);
        if (weakly && p == r.zero()) || !i.contains(p) {
            return false;
        }
        let absorbed = (0..xs.len()).any(|k| i.contains(product_without(r, xs, k)));
        if !absorbed {
            witness = Some(xs.to_vec());
        }
        !absorbed
    });
    Ok(match witness {
        Some(xs) => Verdict::Fails(Witness::Tuple { xs }),
        None => Verdict::Holds,
    })
}

/// Prime is 1-absorbing.
pub fn is_prime(i: &Ideal, weakly: bool) -> Result<Verdict> {
    is_n_absorbing(i, 1, weakly)
}

/// (Strongly, weakly) n-absorbing over tuples of ideals. Ideals are ordered
/// lexicographically by their sorted member lists.
pub fn is_strongly_n_absorbing(i: &Ideal, n: usize, weakly: bool) -> Result<Verdict> {
    require_proper(i)?;
    require_n(n)?;
    let r = i.ring();
    let lattice = ideal::enumerate_ideals(r)?;
    let mut ideals: Vec<&Ideal> = lattice.ideals().iter().collect();
    ideals.sort_by(|a, b| a.members().cmp(b.members()));
    let prod = |xs: &[usize], skip: Option<usize>| -> Ideal {
        xs.iter()
            .enumerate()
            .filter(|&(k, _)| Some(k) != skip)
            .fold(Ideal::whole(r), |acc, (_, &x)| {
                ideal::ideal_algebra(IdealOp::Product, &acc, ideals[x]).expect("same ring")
            })
    };
    let mut witness = None;
    nondecreasing(ideals.len(), n + 1, &mut |xs| {
        let p = prod(xs, None);
        if (weakly && p.is_zero()) || !p.is_subset_of(i) {
            return false;
        }
        let absorbed = (0..xs.len()).any(|k| prod(xs, Some(k)).is_subset_of(i));
        if !absorbed {
            witness = Some(xs.iter().map(|&x| ideals[x].generators()).collect());
        }
        !absorbed
    });
    Ok(match witness {
        Some(gens) => Verdict::Fails(Witness::Ideals { gens }),
        None => Verdict::Holds,
    })
}

/// (Weakly) n-absorbing δ-primary: whenever `x_1 ... x_{n+1} ∈ I`, either
/// `x_1 ... x_n ∈ I` or, for some `1 ≤ k ≤ n`, the product omitting `x_k`
/// lies in `δ(I)`. For `n = 1` this is δ-primary and for `n = 2` the
/// 2-absorbing δ-primary condition.
pub fn is_n_absorbing_delta_primary(
    i: &Ideal,
    n: usize,
    delta: &ExpansionFn,
    weakly: bool,
) -> Result<Verdict> {
    require_proper(i)?;
    require_n(n)?;
    let d = expand(i, delta)?;
    let r = i.ring();
    // The condition is symmetric in x_1..x_n; x_{n+1} plays a separate role.
    let mut witness = None;
    nondecreasing(r.size(), n, &mut |head| {
        let head_product = product_of(r, head);
        if i.contains(head_product) {
            return false;
        }
        let mut xs = head.to_vec();
        xs.push(0);
        for last in r.elements() {
            xs[n] = last;
            let p = r.mul(head_product, last);
            if (weakly && p == r.zero()) || !i.contains(p) {
                continue;
            }
            if !(0..n).any(|k| d.contains(product_without(r, &xs, k))) {
                witness = Some(xs.clone());
                return true;
            }
        }
        false
    });
    Ok(match witness {
        Some(xs) => Verdict::Fails(Witness::Tuple { xs }),
        None => Verdict::Holds,
    })
}

/// `{a : a^m = 0 and a^n ∉ δ(I)}`.
pub fn unbreakable_zero_set(i: &Ideal, delta: &ExpansionFn, p: MnParams) -> Result<Vec<usize>> {
    let d = expand(i, delta)?;
    let r = i.ring();
    Ok(r.elements()
        .filter(|&a| r.pow(a, p.m) == r.zero() && !d.contains(r.pow(a, p.n)))
        .collect())
}

/// One line of a [`ClassificationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub class: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_label: Option<String>,
}

/// The outcome of every classifier on one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub ideal: Vec<usize>,
    pub members: Vec<String>,
    pub delta: String,
    pub m: usize,
    pub n: usize,
    pub entries: Vec<ReportEntry>,
    pub unbreakable_zero: Vec<String>,
}

impl ClassificationReport {
    pub fn get(&self, class: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.class == class)
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring:   {}", self.ring)?;
        writeln!(f, "ideal:  {} = {{{}}}", fmt_set(&self.ideal), self.members.join(","))?;
        writeln!(f, "delta:  {}", self.delta)?;
        writeln!(f, "params: m={} n={}", self.m, self.n)?;
        let width = self.entries.iter().map(|e| e.class.chars().count()).max().unwrap_or(0);
        for e in &self.entries {
            let pad = width - e.class.chars().count();
            write!(f, "  {}{} = {}", e.class, " ".repeat(pad), e.holds)?;
            if let Some(w) = &e.witness_label {
                write!(f, "  witness {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "unbreakable-zero: {{{}}}", self.unbreakable_zero.join(","))
    }
}

/// Parameter pairs reported by [`classify_full`]: every `n < m ≤ 4`, plus
/// the requested pair.
fn report_params(p: MnParams) -> Vec<MnParams> {
    let mut out = vec![p];
    for m in 2..=4 {
        for n in 1..m {
            let q = MnParams { m, n };
            if q != p {
                out.push(q);
            }
        }
    }
    out
}

/// Runs every classifier on `I`.
pub fn classify_full(i: &Ideal, delta: &ExpansionFn, p: MnParams) -> Result<ClassificationReport> {
    require_proper(i)?;
    let r = i.ring();
    let dl = delta.label();
    let mut entries = Vec::new();
    let mut push = |class: String, v: Verdict| {
        entries.push(ReportEntry {
            class,
            holds: v.holds(),
            witness_label: v.witness().map(|w| w.describe(r)),
            witness: v.witness().cloned(),
        });
    };
    for q in report_params(p) {
        let (m, n) = (q.m, q.n);
        push(format!("weakly-({m},{n})-closed-δ_{dl}"), classify_mn(i, q, Some(delta), true)?);
        push(format!("({m},{n})-closed-δ_{dl}"), classify_mn(i, q, Some(delta), false)?);
        push(format!("weakly-({m},{n})-closed"), classify_mn(i, q, None, true)?);
        push(format!("({m},{n})-closed"), classify_mn(i, q, None, false)?);
    }
    let n = p.n;
    push(format!("weakly-semi-{n}-absorbing-δ_{dl}"), is_semi_n_absorbing(i, n, Some(delta), true)?);
    push(format!("semi-{n}-absorbing-δ_{dl}"), is_semi_n_absorbing(i, n, Some(delta), false)?);
    push("weakly-prime".into(), is_prime(i, true)?);
    push("prime".into(), is_prime(i, false)?);
    push(format!("weakly-δ_{dl}-primary"), is_delta_primary(i, delta, true)?);
    push(format!("δ_{dl}-primary"), is_delta_primary(i, delta, false)?);
    if n <= crate::limits().max_absorbing_n {
        push(format!("weakly-{n}-absorbing"), is_n_absorbing(i, n, true)?);
        push(format!("{n}-absorbing"), is_n_absorbing(i, n, false)?);
        push(format!("strongly-weakly-{n}-absorbing"), is_strongly_n_absorbing(i, n, true)?);
        push(format!("strongly-{n}-absorbing"), is_strongly_n_absorbing(i, n, false)?);
        push(
            format!("weakly-{n}-absorbing-δ_{dl}-primary"),
            is_n_absorbing_delta_primary(i, n, delta, true)?,
        );
        push(
            format!("{n}-absorbing-δ_{dl}-primary"),
            is_n_absorbing_delta_primary(i, n, delta, false)?,
        );
    }
    let unbreakable = unbreakable_zero_set(i, delta, p)?;
    Ok(ClassificationReport {
        ring: r.expr(),
        ideal: i.generators(),
        members: i.members().iter().map(|&x| r.label(x)).collect(),
        delta: dl.to_string(),
        m: p.m,
        n: p.n,
        entries,
        unbreakable_zero: unbreakable.iter().map(|&x| r.label(x)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{builtin_delta, DeltaKind};
    use crate::ideal::ideal_closure;
    use crate::ring::zmod;

    fn setup(n: usize, gens: &[usize]) -> (FiniteRing, Ideal) {
        let r = zmod(n).unwrap();
        let i = ideal_closure(&r, gens).unwrap();
        (r, i)
    }

    fn id(r: &FiniteRing) -> ExpansionFn {
        builtin_delta(r, DeltaKind::Identity).unwrap()
    }

    fn rad(r: &FiniteRing) -> ExpansionFn {
        builtin_delta(r, DeltaKind::Radical).unwrap()
    }

    fn mn(m: usize, n: usize) -> MnParams {
        MnParams::new(m, n).unwrap()
    }

    #[test]
    fn mn_examples() {
        let (z8, i) = setup(8, &[4]);
        let d = id(&z8);
        assert_eq!(
            classify_mn(&i, mn(2, 1), Some(&d), true).unwrap(),
            Verdict::Fails(Witness::Element { a: 2 })
        );
        assert!(classify_mn(&i, mn(3, 1), Some(&d), true).unwrap().holds());
        let (z4, zero) = setup(4, &[]);
        assert_eq!(
            classify_mn(&zero, mn(2, 1), Some(&id(&z4)), false).unwrap(),
            Verdict::Fails(Witness::Element { a: 2 })
        );
        for m in 2..5 {
            for n in 1..m {
                assert!(classify_mn(&zero, mn(m, n), Some(&rad(&z4)), true).unwrap().holds());
            }
        }
        assert!(matches!(
            classify_mn(&Ideal::whole(&z8), mn(2, 1), None, true),
            Err(Error::ImproperIdeal(_))
        ));
        assert!(MnParams::new(0, 1).is_err());
    }

    #[test]
    fn delta_primary_examples() {
        let (z12, i4) = setup(12, &[4]);
        assert!(is_delta_primary(&i4, &rad(&z12), false).unwrap().holds());
        assert_eq!(
            is_delta_primary(&i4, &id(&z12), false).unwrap(),
            Verdict::Fails(Witness::Pair { x: 2, y: 2 })
        );
        let (z6, i2) = setup(6, &[2]);
        assert!(is_delta_primary(&i2, &id(&z6), false).unwrap().holds());
    }

    #[test]
    fn absorbing_examples() {
        let (_, i6) = setup(12, &[6]);
        assert_eq!(
            is_n_absorbing(&i6, 1, false).unwrap(),
            Verdict::Fails(Witness::Tuple { xs: vec![2, 3] })
        );
        assert!(is_n_absorbing(&i6, 2, false).unwrap().holds());
        let (_, zero6) = setup(6, &[]);
        assert!(is_n_absorbing(&zero6, 1, true).unwrap().holds());
        assert_eq!(
            is_n_absorbing(&i6, 4, false).unwrap_err(),
            Error::NTooLarge { n: 4, cap: 3 }
        );
    }

    #[test]
    fn strongly_absorbing_examples() {
        let (_, i2) = setup(6, &[2]);
        assert!(is_strongly_n_absorbing(&i2, 1, false).unwrap().holds());
        let (_, i6) = setup(12, &[6]);
        assert_eq!(
            is_strongly_n_absorbing(&i6, 1, false).unwrap(),
            Verdict::Fails(Witness::Ideals {
                gens: vec![vec![2], vec![3]]
            })
        );
        assert!(is_strongly_n_absorbing(&i6, 2, false).unwrap().holds());
    }

    #[test]
    fn absorbing_delta_primary_examples() {
        let (z12, i4) = setup(12, &[4]);
        assert!(is_n_absorbing_delta_primary(&i4, 2, &rad(&z12), false).unwrap().holds());
        let (_, i6) = setup(12, &[6]);
        assert_eq!(
            is_n_absorbing_delta_primary(&i6, 1, &id(&z12), false).unwrap(),
            Verdict::Fails(Witness::Tuple { xs: vec![2, 3] })
        );
        let (z7, zero) = setup(7, &[]);
        assert!(is_n_absorbing_delta_primary(&zero, 2, &id(&z7), true).unwrap().holds());
    }

    #[test]
    fn unbreakable_examples() {
        let (z8, zero) = setup(8, &[]);
        assert_eq!(unbreakable_zero_set(&zero, &id(&z8), mn(3, 1)).unwrap(), vec![2, 4, 6]);
        assert!(unbreakable_zero_set(&zero, &rad(&z8), mn(3, 1)).unwrap().is_empty());
        let (z4, zero4) = setup(4, &[]);
        assert_eq!(unbreakable_zero_set(&zero4, &id(&z4), mn(2, 1)).unwrap(), vec![2]);
    }

    #[test]
    fn full_report() {
        let (z8, i) = setup(8, &[4]);
        let rep = classify_full(&i, &id(&z8), mn(3, 1)).unwrap();
        assert!(rep.get("weakly-(3,1)-closed-δ_id").unwrap().holds);
        let closed = rep.get("(3,1)-closed-δ_id").unwrap();
        assert!(!closed.holds);
        assert_eq!(closed.witness, Some(Witness::Element { a: 2 }));
        assert!(!rep.get("weakly-(2,1)-closed-δ_id").unwrap().holds);
        let (z6, i2) = setup(6, &[2]);
        let rep = classify_full(&i2, &id(&z6), mn(2, 1)).unwrap();
        assert!(rep.entries.iter().all(|e| e.holds));
        assert!(classify_full(&Ideal::whole(&z8), &id(&z8), mn(3, 1)).is_err());
    }
}
