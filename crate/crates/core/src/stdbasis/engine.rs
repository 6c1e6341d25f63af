//! Buchberger's algorithm for well-orderings and Mora's tangent cone
//! algorithm for local degree orderings, both on elements of a free module
//! `R^r` with position-over-term ordering. Ideals are the case `r = 1`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial, Ring, Scalar};

/// Monomial ordering used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum MonOrder {
    DegRevLex,
    NegDegRevLex,
    /// Block order eliminating the last `k` variables: degrevlex on the last
    /// `k` exponents first, degrevlex on the rest as tie break.
    ElimLast(usize),
    /// On `k[x_1..x_n, t]`: total degree first, then the local order on the
    /// `x` part. Used for homogenized local computations.
    HomLocal,
}

impl MonOrder {
    pub(crate) fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonOrder::DegRevLex => a.cmp_degrevlex(b),
            MonOrder::NegDegRevLex => a.cmp_neg_degrevlex(b),
            MonOrder::ElimLast(k) => {
                let n = a.nvars();
                let (a0, a1) = a.exponents().split_at(n - k);
                let (b0, b1) = b.exponents().split_at(n - k);
                let tail = Monomial::new(a1.to_vec()).cmp_degrevlex(&Monomial::new(b1.to_vec()));
                tail.then_with(|| Monomial::new(a0.to_vec()).cmp_degrevlex(&Monomial::new(b0.to_vec())))
            }
            MonOrder::HomLocal => {
                let n = a.nvars() - 1;
                a.degree().cmp(&b.degree()).then_with(|| {
                    Monomial::new(a.exponents()[..n].to_vec()).cmp_neg_degrevlex(&Monomial::new(b.exponents()[..n].to_vec()))
                })
            }
        }
    }

    pub(crate) fn is_global(self) -> bool {
        !matches!(self, MonOrder::NegDegRevLex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mon: Monomial,
    pub coef: Scalar,
}

/// Module element; terms sorted strictly decreasing in the engine order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

fn cmp_pos(order: MonOrder, ac: usize, am: &Monomial, bc: usize, bm: &Monomial) -> Ordering {
    // lower component index is larger
    bc.cmp(&ac).then_with(|| order.cmp(am, bm))
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_polys(order: MonOrder, comps: &[Polynomial]) -> Self {
        Self::from_polys_at(order, comps, 0)
    }

    pub fn from_polys_at(order: MonOrder, comps: &[Polynomial], offset: usize) -> Self {
        let mut terms: Vec<Term> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |(m, c)| Term { comp: i + offset, mon: m.clone(), coef: c.clone() })
            })
            .collect();
        sort_terms(order, &mut terms);
        Vector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    pub fn ecart(&self) -> u32 {
        self.degree() - self.lead().mon.degree()
    }

    pub fn single_component(&self) -> bool {
        let c = self.lead().comp;
        self.terms.iter().all(|t| t.comp == c)
    }

    pub fn monic(mut self) -> Self {
        if let Some(t) = self.terms.first() {
            if !t.coef.is_one() {
                let inv = t.coef.recip();
                for t in &mut self.terms {
                    t.coef *= &inv;
                }
            }
        }
        self
    }

    pub fn to_polys(&self, ring: &Arc<Ring>, ncomps: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); ncomps];
        for t in &self.terms {
            buckets[t.comp].push((t.mon.clone(), t.coef.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
    }

    /// Components `range` of the element, re-indexed from zero.
    pub fn project(&self, ring: &Arc<Ring>, from: usize, to: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); to - from];
        for t in &self.terms {
            if t.comp >= from && t.comp < to {
                buckets[t.comp - from].push((t.mon.clone(), t.coef.clone()));
            }
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
    }
}

fn sort_terms(order: MonOrder, terms: &mut [Term]) {
    terms.sort_by(|a, b| cmp_pos(order, b.comp, &b.mon, a.comp, &a.mon));
}

/// `h - c * m * g`, merging in the engine order.
fn sub_mul(order: MonOrder, h: &[Term], c: &Scalar, m: &Monomial, g: &Vector) -> Vec<Term> {
    let mut out = Vec::with_capacity(h.len() + g.terms.len());
    let mut i = 0;
    let mut gi = g.terms.iter().map(|t| Term { comp: t.comp, mon: t.mon.mul(m), coef: -(&t.coef * c) });
    let mut next_g = gi.next();
    while let Some(gt) = next_g.take() {
        if i >= h.len() {
            out.push(gt);
            out.extend(gi.by_ref());
            break;
        }
        let ht = &h[i];
        match cmp_pos(order, ht.comp, &ht.mon, gt.comp, &gt.mon) {
            Ordering::Greater => {
                out.push(ht.clone());
                i += 1;
                next_g = Some(gt);
            }
            Ordering::Less => {
                out.push(gt);
                next_g = gi.next();
            }
            Ordering::Equal => {
                let s = &ht.coef + &gt.coef;
                if !s.is_zero() {
                    out.push(Term { comp: ht.comp, mon: ht.mon.clone(), coef: s });
                }
                i += 1;
                next_g = gi.next();
            }
        }
    }
    out.extend(h[i..].iter().cloned());
    out
}

fn divides_lead(g: &Vector, comp: usize, mon: &Monomial) -> bool {
    let l = g.lead();
    l.comp == comp && l.mon.divides(mon)
}

pub(crate) fn spoly(order: MonOrder, f: &Vector, g: &Vector) -> Vector {
    let (lf, lg) = (f.lead(), g.lead());
    let lcm = lf.mon.lcm(&lg.mon);
    let mf = lcm.div(&lf.mon).expect("lcm");
    let mg = lcm.div(&lg.mon).expect("lcm");
    let scaled: Vec<Term> = f
        .terms
        .iter()
        .map(|t| Term { comp: t.comp, mon: t.mon.mul(&mf), coef: &t.coef / &lf.coef })
        .collect();
    let c = lg.coef.recip();
    Vector { terms: sub_mul(order, &scaled, &c, &mg, g) }
}

/// Full reduction with respect to `basis` for a well-ordering.
pub(crate) fn reduce_full(order: MonOrder, h: Vector, basis: &[Vector]) -> Vector {
    debug_assert!(order.is_global());
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = h.terms;
    while !cur.is_empty() {
        let lt = &cur[0];
        match basis.iter().find(|g| divides_lead(g, lt.comp, &lt.mon)) {
            Some(g) => {
                let gl = g.lead();
                let m = lt.mon.div(&gl.mon).expect("divides");
                let c = &lt.coef / &gl.coef;
                cur = sub_mul(order, &cur, &c, &m, g);
            }
            None => {
                rem.push(cur.remove(0));
            }
        }
    }
    Vector { terms: rem }
}

/// Reduces only until the leading term is irreducible.
fn reduce_top(order: MonOrder, h: Vector, basis: &[Vector]) -> Vector {
    let mut cur = h.terms;
    while !cur.is_empty() {
        let lt = &cur[0];
        match basis.iter().find(|g| divides_lead(g, lt.comp, &lt.mon)) {
            Some(g) => {
                let gl = g.lead();
                let m = lt.mon.div(&gl.mon).expect("divides");
                let c = &lt.coef / &gl.coef;
                cur = sub_mul(order, &cur, &c, &m, g);
            }
            None => break,
        }
    }
    Vector { terms: cur }
}

struct Pair {
    i: usize,
    j: usize,
    lcm_deg: u32,
    lcm: Monomial,
    comp: usize,
}

fn make_pair(basis: &[Vector], i: usize, j: usize) -> Option<Pair> {
    let (a, b) = (basis[i].lead(), basis[j].lead());
    if a.comp != b.comp {
        return None;
    }
    let lcm = a.mon.lcm(&b.mon);
    Some(Pair { i, j, lcm_deg: lcm.degree(), lcm, comp: a.comp })
}

/// Picks the pair with the smallest lcm (normal strategy); ties broken by
/// the term order and then by insertion order.
fn select_pair(order: MonOrder, pairs: &mut Vec<Pair>) -> Pair {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (p, q) = (&pairs[k], &pairs[best]);
        let key = p.lcm_deg.cmp(&q.lcm_deg).then_with(|| {
            if order.is_global() {
                cmp_pos(order, p.comp, &p.lcm, q.comp, &q.lcm)
            } else {
                cmp_pos(order, q.comp, &q.lcm, p.comp, &p.lcm)
            }
        });
        if key == Ordering::Less {
            best = k;
        }
    }
    pairs.remove(best)
}

/// Reduced Groebner basis for a well-ordering (degrevlex or elimination).
pub(crate) fn groebner(order: MonOrder, gens: Vec<Vector>) -> Vec<Vector> {
    groebner_with(order, gens, |_| Vec::new())
}

/// Buchberger's algorithm where `extra` may contribute further ideal
/// elements each time the basis grows.
fn groebner_with(order: MonOrder, gens: Vec<Vector>, mut extra: impl FnMut(&[Vector]) -> Vec<Vector>) -> Vec<Vector> {
    assert!(order.is_global());
    let mut basis: Vec<Vector> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Vector>, pairs: &mut Vec<Pair>, v: Vector| {
        let k = basis.len();
        basis.push(v.monic());
        for i in 0..k {
            if let Some(p) = make_pair(basis, i, k) {
                pairs.push(p);
            }
        }
    };

    let mut pending = gens;
    pending.reverse();
    loop {
        while let Some(g) = pending.pop() {
            let g = reduce_full(order, g, &basis);
            if !g.is_zero() {
                add(&mut basis, &mut pairs, g);
                pending.extend(extra(&basis));
            }
        }
        if pairs.is_empty() {
            break;
        }
        let pair = select_pair(order, &mut pairs);
        let (i, j) = (pair.i, pair.j);
        done.insert((i, j));
        let (gi, gj) = (&basis[i], &basis[j]);
        // product criterion for elements living in a single component
        if gi.single_component()
            && gj.single_component()
            && gi.lead().mon.is_coprime(&gj.lead().mon)
        {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides_lead(&basis[k], pair.comp, &pair.lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(order, gi, gj);
        let h = reduce_top(order, s, &basis);
        if !h.is_zero() {
            add(&mut basis, &mut pairs, h);
            pending.extend(extra(&basis));
        }
    }
    interreduce(order, basis)
}

fn minimalize(order: MonOrder, basis: Vec<Vector>) -> Vec<Vector> {
    let mut keep: Vec<Vector> = Vec::new();
    let mut sorted = basis;
    // process in increasing leading term so that divisors come first
    sorted.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        x.mon.degree().cmp(&y.mon.degree()).then_with(|| cmp_pos(order, x.comp, &x.mon, y.comp, &y.mon))
    });
    for g in sorted {
        let l = g.lead();
        if !keep.iter().any(|k| divides_lead(k, l.comp, &l.mon)) {
            keep.retain(|k| {
                let kl = k.lead();
                !(kl.comp == l.comp && l.mon.divides(&kl.mon))
            });
            keep.push(g);
        }
    }
    keep
}

fn interreduce(order: MonOrder, basis: Vec<Vector>) -> Vec<Vector> {
    let mut min = minimalize(order, basis);
    for k in 0..min.len() {
        let g = std::mem::replace(&mut min[k], Vector::zero());
        let head = g.terms[0].clone();
        let others: Vec<Vector> = min.iter().filter(|v| !v.is_zero()).cloned().collect();
        let tail = reduce_full(order, Vector { terms: g.terms[1..].to_vec() }, &others);
        let mut terms = vec![head];
        terms.extend(tail.terms);
        min[k] = Vector { terms }.monic();
    }
    min.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        cmp_pos(order, y.comp, &y.mon, x.comp, &x.mon)
    });
    min
}

/// Least `D` such that every monomial of degree `D` is divisible by one of
/// `leads` (all in component 0), if the leading ideal is m-primary.
fn corner_of<'a>(nvars: usize, leads: impl Iterator<Item = &'a Monomial> + Clone) -> Option<u32> {
    let mut powers = vec![u32::MAX; nvars];
    for m in leads.clone() {
        let support: Vec<usize> = m.support().collect();
        match support.as_slice() {
            [] => return Some(0),
            [i] => powers[*i] = powers[*i].min(m.exponents()[*i]),
            _ => {}
        }
    }
    if powers.contains(&u32::MAX) {
        return None;
    }
    let bound: u32 = powers.iter().map(|a| a - 1).sum::<u32>() + 1;
    (1..=bound).find(|&d| Monomial::all_of_degree(nvars, d).iter().all(|x| leads.clone().any(|l| l.divides(x))))
}

/// Drops terms of degree `>= d`; terms are sorted by increasing degree.
fn truncate(v: &mut Vector, corner: Option<u32>) {
    if let Some(d) = corner {
        if let Some(cut) = v.terms.iter().position(|t| t.mon.degree() >= d) {
            v.terms.truncate(cut);
        }
    }
}

fn ideal_leads(vs: &[Vector]) -> Option<impl Iterator<Item = &Monomial> + Clone> {
    if vs.iter().all(|v| v.lead().comp == 0) {
        Some(vs.iter().map(|v| &v.lead().mon))
    } else {
        None
    }
}

/// Mora's weak normal form with ecart-driven reducer selection. The result
/// `r` satisfies `u * h = sum a_i g_i + r` with `u` a unit at the origin, and
/// `r == 0` exactly when `h` lies in the localized module generated by a
/// standard basis `basis`. When the leading terms of an ideal basis contain
/// all monomials of some degree `D`, terms of degree `>= D` are dropped.
pub(crate) fn mora_nf(order: MonOrder, h: Vector, basis: &[Vector]) -> Vector {
    let corner = match (basis.first(), ideal_leads(basis)) {
        (Some(g), Some(ls)) if h.terms.iter().all(|t| t.comp == 0) => corner_of(g.lead().mon.nvars(), ls),
        _ => None,
    };
    let mut t: Vec<Vector> = basis.to_vec();
    let mut h = h;
    truncate(&mut h, corner);
    while !h.is_zero() {
        let lt = h.lead().clone();
        let candidate = t
            .iter()
            .enumerate()
            .filter(|(_, g)| divides_lead(g, lt.comp, &lt.mon))
            .min_by_key(|(k, g)| (g.ecart(), *k))
            .map(|(k, _)| k);
        let Some(k) = candidate else {
            break;
        };
        if t[k].ecart() > h.ecart() {
            t.push(h.clone());
        }
        let g = &t[k];
        let gl = g.lead();
        let m = lt.mon.div(&gl.mon).expect("divides");
        let c = &lt.coef / &gl.coef;
        h = Vector { terms: sub_mul(order, &h.terms, &c, &m, g) };
        truncate(&mut h, corner);
    }
    h
}

/// Minimal standard basis of an ideal for a local degree ordering, by
/// Lazard's method: a Groebner basis of the homogenized generators for
/// [`MonOrder::HomLocal`], dehomogenized. Leading coefficients are 1.
pub(crate) fn local_standard_basis(order: MonOrder, gens: Vec<Vector>) -> Vec<Vector> {
    assert!(!order.is_global());
    let hom = MonOrder::HomLocal;
    let homogenized: Vec<Vector> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            debug_assert!(g.terms.iter().all(|t| t.comp == 0));
            let d = g.degree();
            let mut terms: Vec<Term> = g
                .terms
                .iter()
                .map(|t| {
                    let mut e = t.mon.exponents().to_vec();
                    e.push(d - t.mon.degree());
                    Term { comp: 0, mon: Monomial::new(e), coef: t.coef.clone() }
                })
                .collect();
            sort_terms(hom, &mut terms);
            Vector { terms }
        })
        .collect();
    // Once the local leading terms cover all monomials of degree D, m^D lies
    // in the localized ideal and the degree-D monomials may be added.
    let n = gens.first().map_or(0, |g| g.lead().mon.nvars());
    let mut corner: Option<u32> = None;
    let gb = groebner_with(hom, homogenized, |basis| {
        let leads: Vec<Monomial> = basis.iter().map(|v| Monomial::new(v.lead().mon.exponents()[..n].to_vec())).collect();
        match corner_of(n, leads.iter()) {
            Some(d) if d > 0 && corner.is_none_or(|c| d < c) => {
                corner = Some(d);
                Monomial::all_of_degree(n, d)
                    .into_iter()
                    .map(|m| {
                        let mut e = m.exponents().to_vec();
                        e.push(0);
                        Vector { terms: vec![Term { comp: 0, mon: Monomial::new(e), coef: Scalar::one() }] }
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    });
    let basis: Vec<Vector> = gb
        .into_iter()
        .map(|v| {
            let mut terms: Vec<Term> = v
                .terms
                .into_iter()
                .map(|t| {
                    let e = t.mon.exponents();
                    Term { comp: 0, mon: Monomial::new(e[..e.len() - 1].to_vec()), coef: t.coef }
                })
                .collect();
            sort_terms(order, &mut terms);
            Vector { terms }.monic()
        })
        .collect();
    if let Some(u) = basis.iter().find(|v| v.lead().mon.is_one()) {
        let one = Term { comp: 0, mon: u.lead().mon.clone(), coef: Scalar::one() };
        return vec![Vector { terms: vec![one] }];
    }
    let mut min = minimalize(order, basis);
    min.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        cmp_pos(order, y.comp, &y.mon, x.comp, &x.mon)
    });
    min
}

/// Generators of the syzygy module of `gens` (vectors of length `r`) via a
/// position-over-term basis of the tagged elements `(g_i, e_i)`.
pub(crate) fn syzygies(ring: &Arc<Ring>, r: usize, gens: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let m = gens.len();
    let order = MonOrder::DegRevLex;
    let nv = ring.nvars();
    let tagged: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut v = Vector::from_polys(order, g);
            v.terms.push(Term { comp: r + i, mon: Monomial::one(nv), coef: Scalar::one() });
            sort_terms(order, &mut v.terms);
            v
        })
        .collect();
    let gb = groebner(order, tagged);
    gb.into_iter()
        .filter(|v| v.lead().comp >= r)
        .map(|v| v.project(ring, r, r + m))
        .collect()
}
