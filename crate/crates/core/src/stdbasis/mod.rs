//! Groebner bases (global degrevlex), Mora standard bases (local negative
//! degrevlex) and the ideal and module algebra built on them.
//!
//! Local computations realize the local ring at the origin for polynomial
//! data: an element is a member of the localized ideal iff its Mora weak
//! normal form vanishes. Colon ideals, intersections and syzygies are
//! computed in the polynomial ring; localization is exact, so the resulting
//! generators are valid locally as well.

pub(crate) mod engine;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::par::{self, Exec};
use crate::poly::{same_ring, Monomial, Polynomial, Ring, Scalar};
use engine::{MonOrder, Vector};

/// Computational term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Degree reverse lexicographic; a well-order with 1 smallest.
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic; 1 is the largest monomial.
    LocalNegDegRevLex,
}

impl TermOrder {
    fn engine(self) -> MonOrder {
        match self {
            TermOrder::GlobalDegRevLex => MonOrder::DegRevLex,
            TermOrder::LocalNegDegRevLex => MonOrder::NegDegRevLex,
        }
    }

    pub fn is_local(self) -> bool {
        self == TermOrder::LocalNegDegRevLex
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermOrder::GlobalDegRevLex => "global",
            TermOrder::LocalNegDegRevLex => "local",
        })
    }
}

/// Dimension of a zero locus through the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusDim {
    /// The ideal is the unit ideal (the locus does not meet the origin, or is
    /// empty globally).
    Empty,
    Dim(usize),
}

impl fmt::Display for LocusDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusDim::Empty => f.write_str("empty"),
            LocusDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(c) => Some(c),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(c) => write!(f, "{c}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug)]
struct Basis {
    vectors: Vec<Vector>,
    polys: Vec<Polynomial>,
}

/// An ideal given by generators, with write-once standard bases per order.
#[derive(Clone)]
pub struct IdealData {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    global: OnceLock<Basis>,
    local: OnceLock<Basis>,
}

impl fmt::Debug for IdealData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

impl IdealData {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert!(same_ring(g.ring(), ring), "generator from a different ring");
        }
        IdealData { ring: ring.clone(), gens, global: OnceLock::new(), local: OnceLock::new() }
    }

    /// The maximal ideal of the origin.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)))
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, [Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn basis(&self, ord: TermOrder) -> &Basis {
        let cell = match ord {
            TermOrder::GlobalDegRevLex => &self.global,
            TermOrder::LocalNegDegRevLex => &self.local,
        };
        cell.get_or_init(|| {
            let o = ord.engine();
            let gens: Vec<Vector> = self.gens.iter().map(|g| Vector::from_polys(o, std::slice::from_ref(g))).collect();
            let vectors = match ord {
                TermOrder::GlobalDegRevLex => engine::groebner(o, gens),
                TermOrder::LocalNegDegRevLex => engine::local_standard_basis(o, gens),
            };
            let polys = vectors.iter().map(|v| v.to_polys(&self.ring, 1).remove(0)).collect();
            Basis { vectors, polys }
        })
    }

    /// Standard basis for `ord`: reduced Groebner basis for the global order,
    /// minimal Mora standard basis with leading coefficients 1 for the local
    /// order.
    pub fn standard_basis(&self, ord: TermOrder) -> &[Polynomial] {
        &self.basis(ord).polys
    }

    /// Leading monomials of the standard basis.
    pub fn leading_monomials(&self, ord: TermOrder) -> Vec<Monomial> {
        self.basis(ord).vectors.iter().map(|v| v.lead().mon.clone()).collect()
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if same_ring(p.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Global: the unique fully reduced remainder. Local: Mora's weak normal
    /// form scaled so that its leading coefficient is 1; it is only defined
    /// up to a unit and should be used for zero tests.
    pub fn normal_form(&self, p: &Polynomial, ord: TermOrder) -> Result<Polynomial> {
        self.check(p)?;
        let o = ord.engine();
        let v = Vector::from_polys(o, std::slice::from_ref(p));
        let basis = &self.basis(ord).vectors;
        let r = match ord {
            TermOrder::GlobalDegRevLex => engine::reduce_full(o, v, basis),
            TermOrder::LocalNegDegRevLex => engine::mora_nf(o, v, basis).monic(),
        };
        Ok(r.to_polys(&self.ring, 1).remove(0))
    }

    pub fn contains(&self, p: &Polynomial, ord: TermOrder) -> Result<bool> {
        Ok(self.normal_form(p, ord)?.is_zero())
    }

    pub fn contains_all(&self, ps: &[Polynomial], ord: TermOrder) -> Result<bool> {
        for p in ps {
            if !self.contains(p, ord)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_ideal(&self, other: &IdealData, ord: TermOrder) -> Result<bool> {
        self.contains_all(&other.gens, ord)
    }

    /// Equality by mutual membership of generators.
    pub fn equals(&self, other: &IdealData, ord: TermOrder) -> Result<bool> {
        Ok(self.contains_ideal(other, ord)? && other.contains_ideal(self, ord)?)
    }

    /// Whether the localized ideal is the whole local ring.
    pub fn is_local_unit(&self) -> bool {
        self.leading_monomials(TermOrder::LocalNegDegRevLex).iter().any(Monomial::is_one)
    }

    /// Krull dimension of `V(I)` at the origin, read off the local leading
    /// ideal.
    pub fn dim_at_origin(&self) -> LocusDim {
        monomial_ideal_dim(self.ring.nvars(), &self.leading_monomials(TermOrder::LocalNegDegRevLex))
    }

    /// Krull dimension of the affine variety `V(I)`.
    pub fn dim_global(&self) -> LocusDim {
        monomial_ideal_dim(self.ring.nvars(), &self.leading_monomials(TermOrder::GlobalDegRevLex))
    }

    /// `dim_Q O/I O` at the origin: the number of local standard monomials.
    pub fn colength(&self) -> Colength {
        match self.std_monomials() {
            Ok(ms) => Colength::Finite(ms.len()),
            Err(_) => Colength::Infinite,
        }
    }

    /// Monomials outside the local leading ideal, by increasing degree.
    pub fn std_monomials(&self) -> Result<Vec<Monomial>> {
        let n = self.ring.nvars();
        let lead = self.leading_monomials(TermOrder::LocalNegDegRevLex);
        match monomial_ideal_dim(n, &lead) {
            LocusDim::Empty => return Ok(Vec::new()),
            LocusDim::Dim(d) if d > 0 => return Err(Error::InfiniteColength { dim: d }),
            _ => {}
        }
        let mut out = Vec::new();
        for d in 0.. {
            let mut layer: Vec<Monomial> = Monomial::all_of_degree(n, d)
                .into_iter()
                .filter(|m| !lead.iter().any(|l| l.divides(m)))
                .collect();
            if layer.is_empty() {
                break;
            }
            layer.sort();
            out.extend(layer);
        }
        Ok(out)
    }

    /// `(I : J)`, computed generator by generator of `J` from syzygies and
    /// intersected by elimination. The result is valid globally and, since
    /// localization is exact, in the local ring.
    pub fn quotient(&self, j: &IdealData) -> Result<IdealData> {
        self.quotient_with(j, Exec::default())
    }

    pub fn quotient_with(&self, j: &IdealData, exec: Exec) -> Result<IdealData> {
        if !same_ring(&self.ring, &j.ring) {
            return Err(Error::RingMismatch);
        }
        if j.is_zero() {
            return Err(Error::ColonByZero);
        }
        let parts = par::map(exec, &j.gens, |g| self.quotient_by_element(g));
        let mut acc = parts[0].clone();
        for part in &parts[1..] {
            acc = acc.intersect(part)?;
        }
        Ok(acc)
    }

    fn quotient_by_element(&self, g: &Polynomial) -> IdealData {
        let mut cols = vec![vec![g.clone()]];
        cols.extend(self.gens.iter().map(|p| vec![p.clone()]));
        let syz = engine::syzygies(&self.ring, 1, &cols);
        IdealData::new(&self.ring, syz.into_iter().map(|s| s.into_iter().next().expect("component")))
    }

    /// `I ∩ J` as `(t I + (1 - t) J) ∩ R` with a block order eliminating `t`.
    pub fn intersect(&self, other: &IdealData) -> Result<IdealData> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(IdealData::new(&self.ring, []));
        }
        let ext = self.ring.extend_with_fresh("t");
        let n = self.ring.nvars();
        let t = Polynomial::var(&ext, n);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let o = MonOrder::ElimLast(1);
        let gens: Vec<Vector> = self
            .gens
            .iter()
            .map(|g| &t * &g.lift(&ext))
            .chain(other.gens.iter().map(|g| &one_minus_t * &g.lift(&ext)))
            .map(|p| Vector::from_polys(o, &[p]))
            .collect();
        let gb = engine::groebner(o, gens);
        let out = gb
            .iter()
            .map(|v| v.to_polys(&ext, 1).remove(0))
            .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[n] == 0))
            .map(|p| {
                Polynomial::from_terms(&self.ring, p.terms().iter().map(|(m, c)| (m.truncated(n), c.clone())))
            });
        Ok(IdealData::new(&self.ring, out))
    }

    /// Rabinowitsch: `p` vanishes on `V(I)` iff `1 ∈ I + <1 - t p>` in the
    /// polynomial ring extended by `t` (global order).
    pub fn radical_contains(&self, p: &Polynomial) -> Result<bool> {
        self.check(p)?;
        let ext = self.ring.extend_with_fresh("t");
        let t = Polynomial::var(&ext, self.ring.nvars());
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.lift(&ext)).collect();
        gens.push(&Polynomial::one(&ext) - &(&t * &p.lift(&ext)));
        let ideal = IdealData::new(&ext, gens);
        Ok(ideal.standard_basis(TermOrder::GlobalDegRevLex).iter().any(Polynomial::is_constant))
    }

    /// Whether `p` vanishes on the germ of `V(I)` at the origin: the
    /// saturation `(I : p^∞)` is computed by repeated colons and must become
    /// the unit ideal locally. Components of `V(I)` away from the origin are
    /// ignored, unlike [`IdealData::radical_contains`].
    pub fn radical_contains_local(&self, p: &Polynomial) -> Result<bool> {
        self.check(p)?;
        if p.is_zero() {
            return Ok(true);
        }
        let by = IdealData::new(&self.ring, [p.clone()]);
        let mut j = self.clone();
        loop {
            if j.is_local_unit() {
                return Ok(true);
            }
            let next = j.quotient(&by)?;
            if j.contains_ideal(&next, TermOrder::GlobalDegRevLex)? {
                return Ok(false);
            }
            j = next;
        }
    }

    /// Minimal number of generators of the localized ideal together with a
    /// minimal generating subset of the given generators.
    pub fn min_generators(&self) -> (usize, Vec<Polynomial>) {
        let keep = self.minimal_subset();
        (keep.len(), keep.iter().map(|&i| self.gens[i].clone()).collect())
    }

    /// Indices of a minimal generating subset of the localized ideal,
    /// preferring earlier generators. For finite colength the classes of the
    /// generators in `O/mI` are compared by linear algebra; otherwise
    /// syzygies decide.
    pub fn minimal_subset(&self) -> Vec<usize> {
        if self.gens.is_empty() {
            return Vec::new();
        }
        if self.colength().finite().is_some() {
            let mi = self.product(&IdealData::maximal(&self.ring)).expect("same ring");
            let alg = crate::artin::QuotientAlgebra::new(&mi).expect("m I is m-primary");
            let mut span = linalg::Subspace::zero(alg.dim());
            let mut keep = Vec::new();
            for (i, g) in self.gens.iter().enumerate() {
                let c = alg.coords(g).expect("same ring");
                if !span.contains(&c) {
                    span = span.sum(&linalg::Subspace::span(alg.dim(), [c]));
                    keep.push(i);
                }
            }
            return keep;
        }
        let m = ModuleData::new(&self.ring, 1, self.gens.iter().map(|g| vec![g.clone()]).collect()).expect("rank 1");
        m.minimal_subset()
    }

    /// `prod` of ideals.
    pub fn product(&self, other: &IdealData) -> Result<IdealData> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(IdealData::new(&self.ring, gens))
    }
}

/// Krull dimension of `k[x]/L` for a monomial ideal `L` given by generators:
/// the size of a largest set of variables containing no generator's support.
pub(crate) fn monomial_ideal_dim(nvars: usize, lead: &[Monomial]) -> LocusDim {
    if lead.iter().any(Monomial::is_one) {
        return LocusDim::Empty;
    }
    let supports: Vec<u32> = lead.iter().map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for set in 0u32..(1 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    LocusDim::Dim(best)
}

/// A submodule of the free module `R^rank`, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleData {
    ring: Arc<Ring>,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
}

impl ModuleData {
    /// Zero vectors are dropped.
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        for g in &gens {
            if g.len() != rank {
                return Err(Error::Shape(format!("vector of length {} in a module of rank {rank}", g.len())));
            }
            if g.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| g.iter().any(|p| !p.is_zero())).collect();
        Ok(ModuleData { ring: ring.clone(), rank, gens })
    }

    /// The free module with its unit-vector basis.
    pub fn free(ring: &Arc<Ring>, rank: usize) -> Self {
        let gens = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                    .collect()
            })
            .collect();
        ModuleData { ring: ring.clone(), rank, gens }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    /// Generators of `{(a_1..a_m) : sum a_i g_i = 0}` for the generators
    /// `g_i` of this module (in their stored order).
    pub fn syzygies(&self) -> ModuleData {
        let syz = engine::syzygies(&self.ring, self.rank, &self.gens);
        ModuleData::new(&self.ring, self.gens.len(), syz).expect("shape")
    }

    /// Minimal number of generators of the localized module
    /// (`dim M/mM` by Nakayama) and a minimal generating subset.
    pub fn min_generators(&self) -> (usize, ModuleData) {
        let keep = self.minimal_subset();
        let gens: Vec<Vec<Polynomial>> = keep.iter().map(|&i| self.gens[i].clone()).collect();
        (gens.len(), ModuleData { ring: self.ring.clone(), rank: self.rank, gens })
    }

    /// Indices of a minimal generating subset of the stored generators. A
    /// generator is dropped when some syzygy has a unit coefficient at its
    /// position; later generators are dropped first.
    pub fn minimal_subset(&self) -> Vec<usize> {
        let m = self.gens.len();
        if m == 0 {
            return Vec::new();
        }
        let syz = self.syzygies();
        let mut rows: Vec<Vec<Scalar>> = syz
            .gens
            .iter()
            .map(|s| s.iter().rev().map(Polynomial::constant_term).collect::<Vec<_>>())
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        let pivots = linalg::rref(&mut rows);
        let dropped: Vec<usize> = pivots.iter().map(|&c| m - 1 - c).collect();
        (0..m).filter(|i| !dropped.contains(i)).collect()
    }

    fn check_vector(&self, v: &[Polynomial]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::Shape(format!("vector of length {} in a module of rank {}", v.len(), self.rank)));
        }
        if v.iter().any(|p| !same_ring(p.ring(), &self.ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Membership in the localized module: `v ∈ M_0` iff the ideal `(M : v)`
    /// is not contained in the maximal ideal, i.e. some syzygy of
    /// `(v, g_1, ..., g_k)` has a unit first coefficient.
    pub fn contains_local(&self, v: &[Polynomial]) -> Result<bool> {
        self.check_vector(v)?;
        let mut cols = vec![v.to_vec()];
        cols.extend(self.gens.iter().cloned());
        let syz = engine::syzygies(&self.ring, self.rank, &cols);
        Ok(syz.iter().any(|s| !s[0].constant_term().is_zero()))
    }

    /// Membership in the module over the polynomial ring.
    pub fn contains_global(&self, v: &[Polynomial]) -> Result<bool> {
        self.check_vector(v)?;
        let o = MonOrder::DegRevLex;
        let gb = engine::groebner(o, self.gens.iter().map(|g| Vector::from_polys(o, g)).collect());
        Ok(engine::reduce_full(o, Vector::from_polys(o, v), &gb).is_zero())
    }

    pub fn contains_module_local(&self, other: &ModuleData) -> Result<bool> {
        for g in &other.gens {
            if !self.contains_local(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of localized modules by double inclusion.
    pub fn equals_local(&self, other: &ModuleData) -> Result<bool> {
        Ok(self.contains_module_local(other)? && other.contains_module_local(self)?)
    }
}

// Free-function forms of the operations.

/// Returns a copy of `ideal` whose standard basis for `ord` is computed.
pub fn std_basis(ideal: &IdealData, ord: TermOrder) -> IdealData {
    let out = ideal.clone();
    out.standard_basis(ord);
    out
}

pub fn normal_form(p: &Polynomial, ideal: &IdealData, ord: TermOrder) -> Result<Polynomial> {
    ideal.normal_form(p, ord)
}

pub fn ideal_membership(p: &Polynomial, ideal: &IdealData, ord: TermOrder) -> Result<bool> {
    ideal.contains(p, ord)
}

pub fn ideal_equal(i: &IdealData, j: &IdealData, ord: TermOrder) -> Result<bool> {
    i.equals(j, ord)
}

pub fn ideal_quotient(i: &IdealData, j: &IdealData) -> Result<IdealData> {
    i.quotient(j)
}

pub fn syzygies(m: &ModuleData) -> ModuleData {
    m.syzygies()
}

pub fn min_generators(m: &ModuleData) -> (usize, ModuleData) {
    m.min_generators()
}

pub fn dim_at_origin(i: &IdealData) -> LocusDim {
    i.dim_at_origin()
}

pub fn colength(i: &IdealData) -> Colength {
    i.colength()
}

pub fn std_monomials(i: &IdealData) -> Result<Vec<Monomial>> {
    i.std_monomials()
}

pub fn radical_membership(p: &Polynomial, i: &IdealData, ord: TermOrder) -> Result<bool> {
    match ord {
        TermOrder::GlobalDegRevLex => i.radical_contains(p),
        TermOrder::LocalNegDegRevLex => i.radical_contains_local(p),
    }
}

#[cfg(test)]
mod tests;
