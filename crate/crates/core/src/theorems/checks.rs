//! Instance generators for the registry.

use std::collections::HashMap;
use std::sync::Arc;

use super::catalog::{Env, ParamRanges, RingCtx};
use super::{zmod_modulus, Counterexample, Job, Outcome};
use crate::classify::{
    classify_mn, is_n_absorbing, is_n_absorbing_delta_primary, is_semi_n_absorbing,
    unbreakable_zero_set, MnParams, Verdict,
};
use crate::construct::{
    amalgamate, duplicate, hom_image, hom_preimage, homogeneous_ideal, inclusion, is_delta_gamma_hom,
    localization_map, localize, zero_plus_module, Amalgam, MultSet,
};
use crate::error::{Error, Result};
use crate::expansion::{
    check_fip, delta_amalgam, delta_compose, delta_idealization_on, delta_localize,
    delta_product_on, delta_quotient_on, localization_compatible, product_components,
    product_ideal, ExpansionFn,
};
use crate::ideal::{ideal_closure, quotient_ring, Ideal};
use crate::ring::{zmod, FiniteRing, Provenance, RingHom};

// Extra Z_{p^c} rings for the prime-power check.
const PK_EXTRA: &[usize] = &[32, 64, 128, 27, 81, 25, 125, 49];

// Largest |R|^{n+1} for which n-absorbing scans are run.
const ABSORBING_BUDGET: f64 = 2.0e6;

fn absorbing_in_budget(size: usize, n: usize) -> bool {
    (size as f64).powi(n as i32 + 1) <= ABSORBING_BUDGET
}

fn w(i: &Ideal, d: &ExpansionFn, p: MnParams) -> Result<bool> {
    Ok(classify_mn(i, p, Some(d), true)?.holds())
}

fn c(i: &Ideal, d: &ExpansionFn, p: MnParams) -> Result<bool> {
    Ok(classify_mn(i, p, Some(d), false)?.holds())
}

/// Weakly but not (m,n)-closed δ-primary.
fn wnc(i: &Ideal, d: &ExpansionFn, p: MnParams) -> Result<bool> {
    Ok(w(i, d, p)? && !c(i, d, p)?)
}

fn wit(v: &Verdict) -> Vec<usize> {
    v.witness().map(|w| w.elements()).unwrap_or_default()
}

fn fail(cx: Counterexample) -> Outcome {
    Outcome::Fail(Box::new(cx))
}

fn implies(hyp: bool, concl: bool, cx: impl FnOnce() -> Counterexample) -> Outcome {
    match (hyp, concl) {
        (false, _) => Outcome::Vacuous,
        (true, true) => Outcome::Pass,
        (true, false) => fail(cx()),
    }
}

fn equiv(lhs: bool, rhs: bool, cx: impl FnOnce() -> Counterexample) -> Outcome {
    implies(true, lhs == rhs, cx)
}

fn job(f: impl Fn() -> Result<Vec<Outcome>> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

fn is_prime_number(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

fn per_ideal<F>(env: &Env, f: F) -> Vec<Job>
where
    F: Fn(&RingCtx, &Ideal, &ParamRanges) -> Result<Vec<Outcome>> + Send + Sync + 'static,
{
    let f = Arc::new(f);
    let params = env.params;
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        for ii in 0..ctx.proper.len() {
            let (ctx, f) = (ctx.clone(), f.clone());
            jobs.push(job(move || f(&ctx, &ctx.proper[ii], &params)));
        }
    }
    jobs
}

fn per_ideal_delta<F>(env: &Env, f: F) -> Vec<Job>
where
    F: Fn(&RingCtx, &Ideal, &ExpansionFn, &ParamRanges) -> Result<Vec<Outcome>>
        + Send
        + Sync
        + 'static,
{
    let f = Arc::new(f);
    let params = env.params;
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        for ii in 0..ctx.proper.len() {
            for di in 0..ctx.deltas.len() {
                let (ctx, f) = (ctx.clone(), f.clone());
                jobs.push(job(move || f(&ctx, &ctx.proper[ii], &ctx.deltas[di], &params)));
            }
        }
    }
    jobs
}

fn per_delta<F>(env: &Env, f: F) -> Vec<Job>
where
    F: Fn(&RingCtx, &ExpansionFn, &ParamRanges) -> Result<Vec<Outcome>> + Send + Sync + 'static,
{
    let f = Arc::new(f);
    let params = env.params;
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        for di in 0..ctx.deltas.len() {
            let (ctx, f) = (ctx.clone(), f.clone());
            jobs.push(job(move || f(&ctx, &ctx.deltas[di], &params)));
        }
    }
    jobs
}

fn per_delta_pair<F>(env: &Env, f: F) -> Vec<Job>
where
    F: Fn(&RingCtx, &ExpansionFn, &ExpansionFn, &ParamRanges) -> Result<Vec<Outcome>>
        + Send
        + Sync
        + 'static,
{
    let f = Arc::new(f);
    let params = env.params;
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        for a in 0..ctx.deltas.len() {
            for b in 0..ctx.deltas.len() {
                let (ctx, f) = (ctx.clone(), f.clone());
                jobs.push(job(move || f(&ctx, &ctx.deltas[a], &ctx.deltas[b], &params)));
            }
        }
    }
    jobs
}

// ---------------------------------------------------------------- basics

pub(crate) fn t32a(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |ctx, i, d, pr| {
        let r = &ctx.ring;
        let di = d.eval(i)?;
        let mut out = Vec::new();
        for n in 1..pr.max_m {
            // Semi-n-absorbing straight from its definition.
            let semi_witness = r.elements().find(|&a| {
                let a1 = r.pow(a, n + 1);
                a1 != r.zero() && i.contains(a1) && !di.contains(r.pow(a, n))
            });
            let p = MnParams { m: n + 1, n };
            let closed = classify_mn(i, p, Some(d), true)?;
            out.push(equiv(semi_witness.is_none(), closed.holds(), || {
                let witness = semi_witness.into_iter().chain(wit(&closed)).collect();
                Counterexample::new(i, d.label(), p, witness, "semi-n-absorbing and (n+1,n)-closed disagree")
            }));
        }
        Ok(out)
    }))
}

pub(crate) fn t32b(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |ctx, i, d, pr| {
        let mut out = Vec::new();
        for n in 1..=pr.max_absorbing_n {
            if !absorbing_in_budget(ctx.ring.size(), n) {
                out.push(Outcome::Skipped);
                continue;
            }
            let p = MnParams { m: n + 1, n };
            let absorbing = is_n_absorbing_delta_primary(i, n, d, true)?.holds();
            let semi = is_semi_n_absorbing(i, n, Some(d), true)?;
            out.push(implies(absorbing, semi.holds(), || {
                Counterexample::new(i, d.label(), p, wit(&semi), "weakly n-absorbing δ-primary but not weakly semi-n-absorbing")
            }));
        }
        Ok(out)
    }))
}

pub(crate) fn t32c(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |_, i, d, pr| {
        let mut out = Vec::new();
        for p in pr.mn_pairs() {
            let hyp = w(i, d, p)?;
            for k in p.n + 1..=pr.max_m {
                let q = MnParams { m: p.m, n: k };
                let v = classify_mn(i, q, Some(d), true)?;
                out.push(implies(hyp, v.holds(), || {
                    Counterexample::new(i, d.label(), q, wit(&v), format!("weakly (m,{}) holds but (m,{k}) fails", p.n))
                }));
            }
        }
        Ok(out)
    }))
}

pub(crate) fn t32d(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal(env, |ctx, i, pr| {
        let mut out = Vec::new();
        for n in 1..=pr.max_absorbing_n {
            let count = ctx.deltas.len() * pr.max_m;
            if !absorbing_in_budget(ctx.ring.size(), n) {
                out.extend(std::iter::repeat_n(Outcome::Skipped, count));
                continue;
            }
            let absorbing = is_n_absorbing(i, n, true)?.holds();
            for d in &ctx.deltas {
                for m in 1..=pr.max_m {
                    let p = MnParams { m, n };
                    let v = classify_mn(i, p, Some(d), true)?;
                    out.push(implies(absorbing, v.holds(), || {
                        Counterexample::new(i, d.label(), p, wit(&v), "weakly n-absorbing but not weakly (m,n)-closed δ-primary")
                    }));
                }
            }
        }
        Ok(out)
    }))
}

// ------------------------------------------------------------- expansions

pub(crate) fn t37a(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal(env, |ctx, i, pr| {
        let mut out = Vec::new();
        for (a, da) in ctx.deltas.iter().enumerate() {
            for (b, db) in ctx.deltas.iter().enumerate() {
                if a == b {
                    continue;
                }
                let below = da.eval(i)?.is_subset_of(&db.eval(i)?);
                for p in pr.mn_pairs() {
                    if !below {
                        out.push(Outcome::Vacuous);
                        continue;
                    }
                    let v = classify_mn(i, p, Some(db), true)?;
                    out.push(implies(w(i, da, p)?, v.holds(), || {
                        Counterexample::new(i, db.label(), p, wit(&v), format!("weakly {}-primary but not weakly {}-primary", da.label(), db.label()))
                    }));
                }
            }
        }
        Ok(out)
    }))
}

pub(crate) fn t37b(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |_, i, d, pr| {
        let di = d.eval(i)?;
        let mut out = Vec::new();
        for p in pr.mn_pairs() {
            let hyp = di.is_proper() && classify_mn(&di, p, None, true)?.holds();
            let v = classify_mn(i, p, Some(d), true)?;
            out.push(implies(hyp, v.holds(), || {
                Counterexample::new(i, d.label(), p, wit(&v), format!("δ(I) = {di} is weakly (m,n)-closed"))
            }));
        }
        Ok(out)
    }))
}

pub(crate) fn tcomp(env: &Env) -> Result<Vec<Job>> {
    Ok(per_delta_pair(env, |ctx, d, g, pr| {
        let comp = delta_compose(g, d)?;
        let z = d.eval(&Ideal::zero(&ctx.ring))?;
        let mut out = Vec::new();
        for p in pr.mn_pairs() {
            let hyp = z.is_proper() && c(&z, g, p)?;
            for i in &ctx.proper {
                if !hyp {
                    out.push(Outcome::Vacuous);
                    continue;
                }
                let weakly = w(i, &comp, p)?;
                let closed = classify_mn(i, p, Some(&comp), false)?;
                out.push(equiv(weakly, closed.holds(), || {
                    Counterexample::new(i, comp.label(), p, wit(&closed), format!("δ(0) = {z} is (m,n)-closed {}-primary", g.label()))
                }));
            }
        }
        Ok(out)
    }))
}

pub(crate) fn tgamma(env: &Env) -> Result<Vec<Job>> {
    Ok(per_delta_pair(env, |ctx, d, g, pr| {
        let comp = delta_compose(d, g)?;
        let mut out = Vec::new();
        for i in &ctx.proper {
            let gi = g.eval(i)?;
            for p in pr.mn_pairs() {
                let hyp = gi.is_proper() && w(&gi, d, p)?;
                let v = classify_mn(i, p, Some(&comp), true)?;
                out.push(implies(hyp, v.holds(), || {
                    Counterexample::new(i, comp.label(), p, wit(&v), format!("γ(I) = {gi} is weakly (m,n)-closed {}-primary", d.label()))
                }));
            }
        }
        Ok(out)
    }))
}

// ---------------------------------------------------------- homomorphisms

fn diagonal(am: &Amalgam) -> Result<RingHom> {
    let index: HashMap<(usize, usize), usize> = (0..am.size()).map(|x| (am.pair(x), x)).collect();
    let map = am
        .a()
        .elements()
        .map(|a| index[&(a, am.f().apply(a))])
        .collect();
    RingHom::with_label(am.a(), am.ring(), map, "diag".into())
}

/// Homomorphisms between catalog rings and the rings they are built from.
fn homs(env: &Env) -> Result<Vec<RingHom>> {
    let mut out = Vec::new();
    for ctx in env.nonzero_rings() {
        let r = &ctx.ring;
        out.push(RingHom::identity(r));
        match r.provenance() {
            Provenance::ZMod(n) => {
                for other in env.nonzero_rings() {
                    if let Some(m) = zmod_modulus(&other.ring) {
                        if m > 1 && m < *n && n % m == 0 {
                            out.push(RingHom::canonical(r, &other.ring)?);
                        }
                    }
                }
            }
            Provenance::Product(r1, r2) => {
                let s2 = r2.size();
                out.push(RingHom::with_label(r, r1, r.elements().map(|x| x / s2).collect(), "p1".into())?);
                out.push(RingHom::with_label(r, r2, r.elements().map(|x| x % s2).collect(), "p2".into())?);
            }
            Provenance::Quotient { base, ideal, .. } => {
                let i = Ideal::from_members(base, ideal)?;
                out.push(quotient_ring(base, &i)?.1);
            }
            Provenance::Localization { .. } => out.push(localization_map(r)?),
            Provenance::TrivialExtension { base, .. } => out.push(inclusion(base, r)?),
            Provenance::Amalgamation(_) => {
                let am = Amalgam::from_ring(r)?;
                out.push(am.proj_a()?);
                out.push(am.proj_sub()?);
                out.push(diagonal(&am)?);
            }
            Provenance::Subring { .. } => {}
        }
    }
    Ok(out)
}

fn hom_jobs(env: &Env, injective: bool) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for f in homs(env)? {
        if (injective && !f.is_injective()) || (!injective && !f.is_surjective()) {
            continue;
        }
        let dctx = env.ctx(f.domain())?;
        let cctx = env.ctx(f.codomain())?;
        for di in 0..dctx.deltas.len() {
            for gi in 0..cctx.deltas.len() {
                let (f, dctx, cctx, pairs) = (f.clone(), dctx.clone(), cctx.clone(), pairs.clone());
                jobs.push(job(move || {
                    let (d, g) = (&dctx.deltas[di], &cctx.deltas[gi]);
                    // Only δγ-homomorphisms produce instances.
                    if is_delta_gamma_hom(&f, d, g)?.is_some() {
                        return Ok(Vec::new());
                    }
                    let mut out = Vec::new();
                    let via = || format!("{}: {} -> {}", f.label(), f.domain().expr(), f.codomain().expr());
                    if injective {
                        for j in &cctx.proper {
                            let pre = hom_preimage(&f, j)?;
                            for &p in &pairs {
                                let v = classify_mn(&pre, p, Some(d), true)?;
                                out.push(implies(w(j, g, p)?, v.holds(), || {
                                    Counterexample::new(&pre, d.label(), p, wit(&v), format!("preimage of {j} (weakly {}-primary) under {}", g.label(), via()))
                                }));
                            }
                        }
                    } else {
                        let ker = f.kernel();
                        for i in dctx.proper.iter().filter(|i| ker.is_subset_of(i)) {
                            let (img, _) = hom_image(&f, i)?;
                            for &p in &pairs {
                                let v = classify_mn(&img, p, Some(g), true)?;
                                out.push(implies(w(i, d, p)?, v.holds(), || {
                                    Counterexample::new(&img, g.label(), p, wit(&v), format!("image of {i} (weakly {}-primary) under {}", d.label(), via()))
                                }));
                            }
                        }
                    }
                    Ok(out)
                }));
            }
        }
    }
    Ok(jobs)
}

pub(crate) fn thom1(env: &Env) -> Result<Vec<Job>> {
    hom_jobs(env, true)
}

pub(crate) fn thom2(env: &Env) -> Result<Vec<Job>> {
    hom_jobs(env, false)
}

// -------------------------------------------------------------- quotients

#[derive(Clone, Copy, PartialEq, Eq)]
enum QuotCheck {
    Down,
    Closed,
    Weakly,
}

fn quot_jobs(env: &Env, which: QuotCheck) -> Vec<Job> {
    per_ideal_delta(env, move |ctx, i, d, pr| {
        let (q, pi) = quotient_ring(&ctx.ring, i)?;
        let dq = delta_quotient_on(&q, d)?;
        let mut out = Vec::new();
        for j in ctx.proper.iter().filter(|j| i.is_subset_of(j)) {
            let (jq, _) = hom_image(&pi, j)?;
            for p in pr.mn_pairs() {
                let outcome = match which {
                    QuotCheck::Down => {
                        let v = classify_mn(&jq, p, Some(&dq), true)?;
                        implies(w(j, d, p)?, v.holds(), || {
                            Counterexample::new(&jq, dq.label(), p, wit(&v), format!("J = {j} is weakly {}-primary", d.label()))
                        })
                    }
                    QuotCheck::Closed => {
                        let v = classify_mn(j, p, Some(d), false)?;
                        implies(c(i, d, p)? && w(&jq, &dq, p)?, v.holds(), || {
                            Counterexample::new(j, d.label(), p, wit(&v), format!("I = {i} is (m,n)-closed and J/I is weakly {}-primary", dq.label()))
                        })
                    }
                    QuotCheck::Weakly => {
                        let v = classify_mn(j, p, Some(d), true)?;
                        implies(w(i, d, p)? && w(&jq, &dq, p)?, v.holds(), || {
                            Counterexample::new(j, d.label(), p, wit(&v), format!("I = {i} and J/I are weakly δ-primary"))
                        })
                    }
                };
                out.push(outcome);
            }
        }
        Ok(out)
    })
}

pub(crate) fn tquot1(env: &Env) -> Result<Vec<Job>> {
    Ok(quot_jobs(env, QuotCheck::Down))
}

pub(crate) fn tquot2(env: &Env) -> Result<Vec<Job>> {
    Ok(quot_jobs(env, QuotCheck::Closed))
}

pub(crate) fn tquot3(env: &Env) -> Result<Vec<Job>> {
    Ok(quot_jobs(env, QuotCheck::Weakly))
}

// ---------------------------------------------------------- localizations

/// Complements of primes and the powers of each non-nilpotent non-unit.
fn mult_sets(ctx: &RingCtx) -> Result<Vec<MultSet>> {
    let r = &ctx.ring;
    let mut candidates = Vec::new();
    for p in ctx.lattice.primes() {
        candidates.push(MultSet::complement(&p)?);
    }
    for s in r.elements() {
        if r.is_nilpotent(s) || r.is_unit(s) {
            continue;
        }
        let mut members = vec![r.one()];
        let mut x = s;
        while !members.contains(&x) {
            members.push(x);
            x = r.mul(x, s);
        }
        members.sort_unstable();
        candidates.push(MultSet::new(r, &members)?);
    }
    let mut out: Vec<MultSet> = Vec::new();
    for s in candidates {
        if !out.iter().any(|o| o.members() == s.members()) {
            out.push(s);
        }
    }
    Ok(out)
}

fn disjoint(i: &Ideal, s: &MultSet) -> bool {
    !s.members().iter().any(|&x| i.contains(x))
}

pub(crate) fn tloc(env: &Env) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        for s in mult_sets(ctx)? {
            let (ctx, pairs) = (ctx.clone(), pairs.clone());
            jobs.push(job(move || {
                let (l, phi) = localize(&ctx.ring, &s)?;
                let mut out = Vec::new();
                for d in &ctx.deltas {
                    let ds = delta_localize(&l, d)?;
                    for i in ctx.proper.iter().filter(|i| disjoint(i, &s)) {
                        if !localization_compatible(&ds, d, i)? {
                            out.extend(std::iter::repeat_n(Outcome::Skipped, pairs.len()));
                            continue;
                        }
                        let (i_s, _) = hom_image(&phi, i)?;
                        for &p in &pairs {
                            let v = classify_mn(&i_s, p, Some(&ds), true)?;
                            out.push(implies(w(i, d, p)?, v.holds(), || {
                                Counterexample::new(&i_s, ds.label(), p, wit(&v), format!("I = {i} is weakly {}-primary in {}", d.label(), ctx.ring.expr()))
                            }));
                        }
                    }
                }
                Ok(out)
            }));
        }
    }
    Ok(jobs)
}

pub(crate) fn floccor(env: &Env) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        for di in 0..ctx.deltas.len() {
            let (ctx, pairs) = (ctx.clone(), pairs.clone());
            jobs.push(job(move || {
                let d = &ctx.deltas[di];
                let mut locs = Vec::new();
                for prime in ctx.lattice.primes() {
                    let (l, phi) = localize(&ctx.ring, &MultSet::complement(&prime)?)?;
                    let ds = delta_localize(&l, d)?;
                    locs.push((prime, phi, ds));
                }
                let mut out = Vec::new();
                for i in &ctx.proper {
                    let above: Vec<_> = locs.iter().filter(|(prime, ..)| i.is_subset_of(prime)).collect();
                    let mut compatible = true;
                    let mut localized = Vec::new();
                    for (prime, phi, ds) in &above {
                        compatible &= localization_compatible(ds, d, i)?;
                        localized.push((prime, hom_image(phi, i)?.0, ds));
                    }
                    if !compatible {
                        out.extend(std::iter::repeat_n(Outcome::Skipped, pairs.len()));
                        continue;
                    }
                    for &p in &pairs {
                        let mut hyp = true;
                        for (_, i_p, ds) in &localized {
                            hyp &= w(i_p, ds, p)?;
                        }
                        let v = classify_mn(i, p, Some(d), true)?;
                        out.push(implies(hyp, v.holds(), || {
                            let primes: Vec<String> = localized.iter().map(|(q, ..)| q.to_string()).collect();
                            Counterexample::new(i, d.label(), p, wit(&v), format!("I_P is weakly δ_P-primary at every prime P ⊇ I: {}", primes.join(", ")))
                        }));
                    }
                }
                Ok(out)
            }));
        }
    }
    Ok(jobs)
}

// ----------------------------------------------------------- intersections

pub(crate) fn tint(env: &Env) -> Result<Vec<Job>> {
    Ok(per_delta(env, |ctx, d, pr| {
        if check_fip(d).is_some() {
            return Ok(Vec::new());
        }
        let mut groups: Vec<(Ideal, Vec<&Ideal>)> = Vec::new();
        for i in &ctx.proper {
            let value = d.eval(i)?;
            match groups.iter_mut().find(|(v, _)| *v == value) {
                Some((_, g)) => g.push(i),
                None => groups.push((value, vec![i])),
            }
        }
        let mut families: Vec<Vec<&Ideal>> = Vec::new();
        for (_, g) in &groups {
            for a in 0..g.len() {
                for b in a + 1..g.len() {
                    families.push(vec![g[a], g[b]]);
                    for c in b + 1..g.len() {
                        families.push(vec![g[a], g[b], g[c]]);
                    }
                }
            }
        }
        let mut out = Vec::new();
        for family in families {
            let mut inter = family[0].clone();
            for j in &family[1..] {
                inter = inter.intersect(j)?;
            }
            for p in pr.mn_pairs() {
                let mut hyp = true;
                for j in &family {
                    hyp &= w(j, d, p)?;
                }
                let v = classify_mn(&inter, p, Some(d), true)?;
                out.push(implies(hyp, v.holds(), || {
                    let names: Vec<String> = family.iter().map(|j| j.to_string()).collect();
                    Counterexample::new(&inter, d.label(), p, wit(&v), format!("intersection of {}", names.join(", ")))
                }));
            }
        }
        Ok(out)
    }))
}

// ------------------------------------------------------ unbreakable zeros

pub(crate) fn tshift(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |ctx, i, d, pr| {
        let r = &ctx.ring;
        let mut out = Vec::new();
        for p in pr.mn_pairs() {
            let unbreakable = unbreakable_zero_set(i, d, p)?;
            if !w(i, d, p)? || unbreakable.is_empty() {
                out.push(Outcome::Vacuous);
                continue;
            }
            let bad = unbreakable.iter().find_map(|&x| {
                i.members()
                    .iter()
                    .find(|&&y| r.pow(r.add(x, y), p.m) != r.zero())
                    .map(|&y| (x, y))
            });
            out.push(match bad {
                None => Outcome::Pass,
                Some((x, y)) => fail(Counterexample::new(i, d.label(), p, vec![x, y], format!("({} + {})^m ≠ 0", r.label(x), r.label(y)))),
            });
        }
        Ok(out)
    }))
}

pub(crate) fn tnil(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |ctx, i, d, pr| {
        let r = &ctx.ring;
        let mut out = Vec::new();
        for p in pr.mn_pairs() {
            if !wnc(i, d, p)? {
                out.push(Outcome::Vacuous);
                continue;
            }
            let not_nil = i.members().iter().copied().find(|&x| !r.is_nilpotent(x));
            let bad_power = (r.characteristic() == p.m && is_prime_number(p.m))
                .then(|| i.members().iter().copied().find(|&x| r.pow(x, p.m) != r.zero()))
                .flatten();
            out.push(match (not_nil, bad_power) {
                (None, None) => Outcome::Pass,
                (Some(x), _) => fail(Counterexample::new(i, d.label(), p, vec![x], "element of I is not nilpotent")),
                (None, Some(x)) => fail(Counterexample::new(i, d.label(), p, vec![x], "char R = m is prime but x^m ≠ 0")),
            });
        }
        Ok(out)
    }))
}

fn jrad_jobs(env: &Env, fixed_only: bool) -> Vec<Job> {
    let params = env.params;
    env.nonzero_rings()
        .map(|ctx| {
            let ctx = ctx.clone();
            job(move || {
                let r = &ctx.ring;
                let mut out = Vec::new();
                for &a in r.jacobson_radical().members() {
                    for n in 1..=params.max_absorbing_n {
                        let power = r.pow(a, n + 1);
                        let i = ideal_closure(r, &[power])?;
                        let p = MnParams { m: n + 1, n };
                        for d in &ctx.deltas {
                            if fixed_only && d.eval(&i)? != i {
                                out.push(Outcome::Skipped);
                                continue;
                            }
                            let v = is_semi_n_absorbing(&i, n, Some(d), true)?;
                            out.push(equiv(v.holds(), power == r.zero(), || {
                                let witness = std::iter::once(a).chain(wit(&v)).collect();
                                Counterexample::new(&i, d.label(), p, witness, format!("a = {}, a^{} = {}", r.label(a), n + 1, r.label(power)))
                            }));
                        }
                    }
                }
                Ok(out)
            })
        })
        .collect()
}

pub(crate) fn tjrad(env: &Env) -> Result<Vec<Job>> {
    Ok(jrad_jobs(env, true))
}

pub(crate) fn fjrad(env: &Env) -> Result<Vec<Job>> {
    Ok(jrad_jobs(env, false))
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut c) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        c += 1;
    }
    (rest == 1).then_some((p, c))
}

pub(crate) fn tpk(env: &Env) -> Result<Vec<Job>> {
    let mut moduli: Vec<usize> = env.rings.iter().filter_map(|c| zmod_modulus(&c.ring)).collect();
    moduli.extend_from_slice(PK_EXTRA);
    moduli.sort_unstable();
    moduli.dedup();
    let params = env.params;
    let mut jobs = Vec::new();
    for q in moduli {
        let Some((p, c)) = prime_power(q) else { continue };
        if c < 2 {
            continue;
        }
        let ctx = env.ctx(&zmod(q)?)?;
        for k in 1..c {
            for di in 0..ctx.deltas.len() {
                let ctx = ctx.clone();
                jobs.push(job(move || {
                    let r = &ctx.ring;
                    let d = &ctx.deltas[di];
                    let i = ideal_closure(r, &[p.pow(k as u32)])?;
                    let mut out = Vec::new();
                    for m in (2..=params.max_m).filter(|&m| m < k) {
                        let (a, b) = (k / m, k % m);
                        for n in 1..m {
                            let pm = MnParams { m, n };
                            let concl = b != 0 && k < c && c <= m * (a + 1) && n * (a + 1) < k;
                            out.push(implies(wnc(&i, d, pm)?, concl, || {
                                let u = unbreakable_zero_set(&i, d, pm).unwrap_or_default();
                                Counterexample::new(&i, d.label(), pm, u, format!("k={k}, c={c}, a={a}, b={b}"))
                            }));
                        }
                    }
                    Ok(out)
                }));
            }
        }
    }
    Ok(jobs)
}

// --------------------------------------------------------------- products

fn prod2_condition(
    j1: &Ideal,
    j2: &Ideal,
    d1: &ExpansionFn,
    d2: &ExpansionFn,
    p: MnParams,
) -> Result<bool> {
    let (r1, r2) = (j1.ring(), j2.ring());
    if !wnc(j1, d1, p)? {
        return Ok(false);
    }
    let nilpotent_into_j2 = r2.elements().all(|y| {
        let ym = r2.pow(y, p.m);
        !j2.contains(ym) || ym == r2.zero()
    });
    if !nilpotent_into_j2 {
        return Ok(false);
    }
    let nonzero_power = r1.elements().any(|x| {
        let xm = r1.pow(x, p.m);
        xm != r1.zero() && j1.contains(xm)
    });
    Ok(!nonzero_power || c(j2, d2, p)?)
}

/// Predicted (weakly, closed) status of an ideal of `R1 x R2` for `δ1 x δ2`,
/// computed from its components alone.
pub fn predict_product(
    x: &Ideal,
    d1: &ExpansionFn,
    d2: &ExpansionFn,
    p: MnParams,
) -> Result<(bool, bool)> {
    let (j1, j2) = product_components(x.ring(), x);
    if !j2.is_proper() {
        let closed = c(&j1, d1, p)?;
        return Ok((closed, closed));
    }
    if !j1.is_proper() {
        let closed = c(&j2, d2, p)?;
        return Ok((closed, closed));
    }
    let closed = c(&j1, d1, p)? && c(&j2, d2, p)?;
    let weakly_only = prod2_condition(&j1, &j2, d1, d2, p)? || prod2_condition(&j2, &j1, d2, d1, p)?;
    Ok((closed || weakly_only, closed))
}

fn product_jobs(env: &Env, three_way: bool) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        let Provenance::Product(r1, r2) = ctx.ring.provenance() else { continue };
        let (c1, c2) = (env.ctx(r1)?, env.ctx(r2)?);
        for a in 0..c1.deltas.len() {
            for b in 0..c2.deltas.len() {
                let (ctx, c1, c2, pairs) = (ctx.clone(), c1.clone(), c2.clone(), pairs.clone());
                jobs.push(job(move || {
                    let (d1, d2) = (&c1.deltas[a], &c2.deltas[b]);
                    let dx = delta_product_on(&ctx.ring, d1, d2)?;
                    let mut out = Vec::new();
                    if three_way {
                        let whole = Ideal::whole(&c2.ring);
                        for i1 in &c1.proper {
                            let x = product_ideal(&ctx.ring, i1, &whole);
                            for &p in &pairs {
                                let weakly = classify_mn(&x, p, Some(&dx), true)?;
                                let closed1 = classify_mn(i1, p, Some(d1), false)?;
                                let closed = classify_mn(&x, p, Some(&dx), false)?;
                                let agree = weakly.holds() == closed1.holds() && closed1.holds() == closed.holds();
                                out.push(equiv(agree, true, || {
                                    Counterexample::new(&x, dx.label(), p, wit(&weakly).into_iter().chain(wit(&closed)).collect(), format!(
                                        "weakly={} closed(I1)={} closed={}", weakly.holds(), closed1.holds(), closed.holds()
                                    ))
                                }));
                            }
                        }
                    } else {
                        for x in &ctx.proper {
                            let (j1, j2) = product_components(&ctx.ring, x);
                            for &p in &pairs {
                                let lhs = wnc(x, &dx, p)?;
                                let rhs = j1.is_proper()
                                    && j2.is_proper()
                                    && (prod2_condition(&j1, &j2, d1, d2, p)? || prod2_condition(&j2, &j1, d2, d1, p)?);
                                out.push(equiv(lhs, rhs, || {
                                    Counterexample::new(x, dx.label(), p, Vec::new(), format!("weakly-not-closed={lhs}, component condition={rhs}"))
                                }));
                            }
                        }
                    }
                    Ok(out)
                }));
            }
        }
    }
    Ok(jobs)
}

pub(crate) fn tprod1(env: &Env) -> Result<Vec<Job>> {
    product_jobs(env, true)
}

pub(crate) fn tprod2(env: &Env) -> Result<Vec<Job>> {
    product_jobs(env, false)
}

// ---------------------------------------------------------- idealization

/// First `(x, e)` with `x ∈ xs` and `m·(x^{m-1} e) ≠ 0` in `R(+)M`.
fn module_not_killed(t: &FiniteRing, xs: &[usize], m: usize) -> Option<(usize, usize)> {
    let Provenance::TrivialExtension { base, orders } = t.provenance() else {
        return None;
    };
    let msize: usize = orders.iter().product();
    xs.iter().find_map(|&x| {
        let lifted = base.pow(x, m - 1) * msize;
        (0..msize)
            .find(|&e| t.times(m, t.mul(lifted, base.zero() * msize + e)) != t.zero())
            .map(|e| (x, e))
    })
}

fn full_module(t: &FiniteRing) -> Vec<usize> {
    match t.provenance() {
        Provenance::TrivialExtension { orders, .. } => (0..orders.iter().product()).collect(),
        _ => Vec::new(),
    }
}

pub(crate) fn tideal(env: &Env) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for ctx in env.nonzero_rings() {
        let Provenance::TrivialExtension { base, .. } = ctx.ring.provenance() else { continue };
        let bctx = env.ctx(base)?;
        for di in 0..bctx.deltas.len() {
            let (ctx, bctx, pairs) = (ctx.clone(), bctx.clone(), pairs.clone());
            jobs.push(job(move || {
                let t = &ctx.ring;
                let d = &bctx.deltas[di];
                let dplus = delta_idealization_on(t, d)?;
                let module = full_module(t);
                let mut out = Vec::new();
                for i in &bctx.proper {
                    let x = homogeneous_ideal(t, i, &module)?;
                    for &p in &pairs {
                        let lhs = wnc(&x, &dplus, p)?;
                        let unbreakable = unbreakable_zero_set(i, d, p)?;
                        let killed = module_not_killed(t, &unbreakable, p.m);
                        let rhs = wnc(i, d, p)? && killed.is_none();
                        out.push(equiv(lhs, rhs, || {
                            Counterexample::new(&x, dplus.label(), p, killed.map(|(a, _)| vec![a]).unwrap_or_default(), format!("weakly-not-closed={lhs}, base condition={rhs}"))
                        }));
                    }
                }
                Ok(out)
            }));
        }
    }
    Ok(jobs)
}

// ----------------------------------------------------------- amalgamation

fn push_unique(out: &mut Vec<Amalgam>, am: Amalgam) {
    if !out.iter().any(|o| o.ring() == am.ring()) {
        out.push(am);
    }
}

/// Catalog amalgamations, duplications `Z_n ⋈ K` and `R ⋈ (0(+)M)` inside
/// catalog trivial extensions, up to 64 elements.
fn amalgams(env: &Env) -> Result<Vec<Amalgam>> {
    const MAX: usize = 64;
    let mut out = Vec::new();
    for ctx in env.nonzero_rings() {
        let r = &ctx.ring;
        match r.provenance() {
            Provenance::Amalgamation(_) => push_unique(&mut out, Amalgam::from_ring(r)?),
            Provenance::ZMod(_) => {
                for k in ctx.proper.iter().filter(|k| !k.is_zero()) {
                    if r.size() * k.len() <= MAX {
                        push_unique(&mut out, duplicate(r, k)?);
                    }
                }
            }
            Provenance::TrivialExtension { base, .. } if r.size() <= MAX => {
                let am = amalgamate(base, r, &inclusion(base, r)?, &zero_plus_module(r)?)?;
                push_unique(&mut out, am);
            }
            _ => {}
        }
    }
    Ok(out)
}

fn is_duplication(am: &Amalgam) -> bool {
    am.a() == am.b() && am.f().map().iter().enumerate().all(|(a, &b)| a == b)
}

fn is_idealization(am: &Amalgam) -> bool {
    match am.b().provenance() {
        Provenance::TrivialExtension { base, .. } => {
            base == am.a()
                && inclusion(base, am.b()).is_ok_and(|inj| inj.map() == am.f().map())
                && zero_plus_module(am.b()).is_ok_and(|j| &j == am.j())
        }
        _ => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum AmCheck {
    Closed,
    Weakly,
    CharM,
    Dup,
    Idealization,
}

fn am_jobs(env: &Env, which: AmCheck) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for am in amalgams(env)? {
        if (which == AmCheck::Dup && !is_duplication(&am))
            || (which == AmCheck::Idealization && !is_idealization(&am))
        {
            continue;
        }
        let am = Arc::new(am);
        let actx = env.ctx(am.a())?;
        for di in 0..actx.deltas.len() {
            let (am, actx, pairs) = (am.clone(), actx.clone(), pairs.clone());
            jobs.push(job(move || {
                let d = &actx.deltas[di];
                let bow = delta_amalgam(am.ring(), d, None)?;
                let dplus = match which {
                    AmCheck::Idealization => Some(delta_idealization_on(am.b(), d)?),
                    _ => None,
                };
                let (b_ring, f) = (am.b(), am.f());
                let mut out = Vec::new();
                for i in &actx.proper {
                    let x = am.ij_ideal(i)?;
                    for &p in &pairs {
                        let cx = |detail: String, witness: Vec<usize>| {
                            Counterexample::new(&x, bow.label(), p, witness, detail)
                        };
                        let unbreakable = unbreakable_zero_set(i, d, p)?;
                        let outcome = match which {
                            AmCheck::Closed => {
                                let (lhs, rhs) = (c(i, d, p)?, c(&x, &bow, p)?);
                                equiv(lhs, rhs, || cx(format!("I closed={lhs}, I⋈J closed={rhs}"), Vec::new()))
                            }
                            AmCheck::Weakly | AmCheck::Dup => {
                                let lhs = wnc(&x, &bow, p)?;
                                let shifted = unbreakable.iter().all(|&a| {
                                    am.j().members().iter().all(|&j| {
                                        b_ring.pow(b_ring.add(f.apply(a), j), p.m) == b_ring.zero()
                                    })
                                });
                                let rhs = wnc(i, d, p)? && shifted;
                                equiv(lhs, rhs, || cx(format!("I⋈J weakly-not-closed={lhs}, condition on I={rhs}"), unbreakable.clone()))
                            }
                            AmCheck::CharM => {
                                let hyp = am.sub().characteristic() == p.m && am.j().power(p.m).is_zero();
                                let (lhs, rhs) = (wnc(&x, &bow, p)?, wnc(i, d, p)?);
                                implies(hyp, lhs == rhs, || cx(format!("I⋈J weakly-not-closed={lhs}, I weakly-not-closed={rhs}"), Vec::new()))
                            }
                            AmCheck::Idealization => {
                                let t = am.b();
                                let dplus = dplus.as_ref().expect("built above");
                                let y = homogeneous_ideal(t, i, &full_module(t))?;
                                let same_w = w(&y, dplus, p)? == w(&x, &bow, p)?;
                                let same_c = c(&y, dplus, p)? == c(&x, &bow, p)?;
                                let killed = module_not_killed(t, &unbreakable, p.m).is_none();
                                let same_char = wnc(&y, dplus, p)? == (wnc(i, d, p)? && killed);
                                equiv(same_w && same_c && same_char, true, || {
                                    cx(format!("agree weakly={same_w}, closed={same_c}, characterization={same_char}"), Vec::new())
                                })
                            }
                        };
                        out.push(outcome);
                    }
                }
                Ok(out)
            }));
        }
    }
    Ok(jobs)
}

pub(crate) fn tam1(env: &Env) -> Result<Vec<Job>> {
    am_jobs(env, AmCheck::Closed)
}

pub(crate) fn tam2(env: &Env) -> Result<Vec<Job>> {
    am_jobs(env, AmCheck::Weakly)
}

pub(crate) fn tam3(env: &Env) -> Result<Vec<Job>> {
    am_jobs(env, AmCheck::CharM)
}

pub(crate) fn tam4(env: &Env) -> Result<Vec<Job>> {
    am_jobs(env, AmCheck::Dup)
}

pub(crate) fn tam5(env: &Env) -> Result<Vec<Job>> {
    am_jobs(env, AmCheck::Idealization)
}

fn kbar_jobs(env: &Env, weakly: bool) -> Result<Vec<Job>> {
    let pairs = env.params.mn_pairs();
    let mut jobs = Vec::new();
    for am in amalgams(env)? {
        let am = Arc::new(am);
        let actx = env.ctx(am.a())?;
        let sctx = env.ctx(am.sub())?;
        // id and rad on each side.
        for di in 0..2 {
            for si in 0..2 {
                let (am, actx, sctx, pairs) = (am.clone(), actx.clone(), sctx.clone(), pairs.clone());
                jobs.push(job(move || {
                    let (d, d1) = (&actx.deltas[di], &sctx.deltas[si]);
                    let bow = match delta_amalgam(am.ring(), d, Some(d1)) {
                        Ok(b) => b,
                        Err(Error::InvalidParams(_)) => {
                            return Ok(vec![Outcome::Skipped; sctx.proper.len() * pairs.len()])
                        }
                        Err(e) => return Err(e),
                    };
                    let ps = am.proj_sub()?;
                    let a_ring = am.a();
                    let mut out = Vec::new();
                    for k in &sctx.proper {
                        let x = am.kbar_ideal(k)?;
                        for &p in &pairs {
                            let outcome = if weakly {
                                let lhs = wnc(&x, &bow, p)?;
                                let unbreakable = unbreakable_zero_set(k, d1, p)?;
                                let bad = (0..am.size()).find(|&y| {
                                    unbreakable.contains(&ps.apply(y))
                                        && a_ring.pow(am.pair(y).0, p.m) != a_ring.zero()
                                });
                                let rhs = wnc(k, d1, p)? && bad.is_none();
                                equiv(lhs, rhs, || {
                                    Counterexample::new(&x, bow.label(), p, bad.into_iter().collect(), format!("K̄ weakly-not-closed={lhs}, condition on K={rhs}"))
                                })
                            } else {
                                let (lhs, rhs) = (c(k, d1, p)?, c(&x, &bow, p)?);
                                equiv(lhs, rhs, || {
                                    Counterexample::new(&x, bow.label(), p, Vec::new(), format!("K closed={lhs}, K̄ closed={rhs}"))
                                })
                            };
                            out.push(outcome);
                        }
                    }
                    Ok(out)
                }));
            }
        }
    }
    Ok(jobs)
}

pub(crate) fn tam6(env: &Env) -> Result<Vec<Job>> {
    kbar_jobs(env, false)
}

pub(crate) fn tam7(env: &Env) -> Result<Vec<Job>> {
    kbar_jobs(env, true)
}

// ------------------------------------------------------------ known false

pub(crate) fn fw2c(env: &Env) -> Result<Vec<Job>> {
    Ok(per_ideal_delta(env, |_, i, d, pr| {
        let mut out = Vec::new();
        for p in pr.mn_pairs() {
            let v = classify_mn(i, p, Some(d), false)?;
            out.push(implies(w(i, d, p)?, v.holds(), || {
                Counterexample::new(i, d.label(), p, wit(&v), "weakly (m,n)-closed δ-primary but not (m,n)-closed δ-primary")
            }));
        }
        Ok(out)
    }))
}

/// An ideal as its member set when small, else by generators.
fn show(i: &Ideal) -> String {
    if i.len() <= 8 {
        return i.to_string();
    }
    let r = i.ring();
    let gens: Vec<String> = i.generators().iter().map(|&g| r.label(g)).collect();
    format!("<{}>", gens.join(","))
}

/// First `a` with `a^m ∈ I` (nonzero when `weakly`) and `a^n ∉ I`: the kind
/// of element offered as evidence against closedness.
fn naive_witness(i: &Ideal, p: MnParams, weakly: bool) -> Option<usize> {
    let r = i.ring();
    r.elements().find(|&a| {
        let am = r.pow(a, p.m);
        i.contains(am) && !(weakly && am == r.zero()) && !i.contains(r.pow(a, p.n))
    })
}

/// Checks the claim "I is not (weakly) (m,n)-closed δ-primary".
fn claim_not_closed(i: &Ideal, d: &ExpansionFn, p: MnParams, weakly: bool) -> Result<Outcome> {
    let r = i.ring();
    let evidence = naive_witness(i, p, weakly);
    let holds = classify_mn(i, p, Some(d), weakly)?.holds();
    let di = d.eval(i)?;
    Ok(implies(evidence.is_some(), !holds, || {
        let a = evidence.expect("hypothesis holds");
        Counterexample::new(i, d.label(), p, vec![a], format!(
            "{}^{} = {} lies in I, but {}^{} = {} lies in δ(I) = {}",
            r.label(a), p.m, r.label(r.pow(a, p.m)), r.label(a), p.n, r.label(r.pow(a, p.n)), show(&di)
        ))
    }))
}

pub(crate) fn fex35(env: &Env) -> Result<Vec<Job>> {
    // The stated instance first, then the Z_{2^{n+1}}, (n+1,n) family.
    let cases = [(8, 3, 1), (4, 2, 1), (8, 3, 2), (16, 4, 3)];
    let mut jobs = Vec::new();
    for (q, m, n) in cases {
        let ctx = env.ctx(&zmod(q)?)?;
        jobs.push(job(move || {
            let d = ctx.delta("rad").expect("rad is always in the pool");
            Ok(vec![claim_not_closed(&Ideal::zero(&ctx.ring), d, MnParams { m, n }, false)?])
        }));
    }
    Ok(jobs)
}

pub(crate) fn fex36(env: &Env) -> Result<Vec<Job>> {
    let ctx = env.ctx(&zmod(8)?)?;
    Ok(vec![job(move || {
        let i = ideal_closure(&ctx.ring, &[4])?;
        ctx.deltas
            .iter()
            .map(|d| claim_not_closed(&i, d, MnParams { m: 2, n: 1 }, true))
            .collect()
    })])
}

pub(crate) fn frmk45(env: &Env) -> Result<Vec<Job>> {
    let ring = crate::dsl::parse_ring("amal(Z8, triv(Z8, M[8]), inj, {1})")?;
    let am = Arc::new(Amalgam::from_ring(&ring)?);
    let actx = env.ctx(am.a())?;
    Ok(vec![job(move || {
        let x = am.ij_ideal(&Ideal::zero(am.a()))?;
        actx.deltas
            .iter()
            .map(|d| claim_not_closed(&x, &delta_amalgam(am.ring(), d, None)?, MnParams { m: 3, n: 1 }, true))
            .collect()
    })])
}
