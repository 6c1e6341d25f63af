//! Artin quotients `A = O/I` of the local ring at the origin: coordinates
//! in the standard-monomial basis, socles, annihilators, Wiebe duality and
//! the complete-intersection form of the freeness criterion.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Precondition, Result};
use crate::linalg::{self, Subspace};
use crate::logder::{self, Derivation, DerivationModule, DivisorGerm, SaitoData};
use crate::poly::{int, same_ring, Monomial, PolyMatrix, Polynomial, Scalar};
use crate::stdbasis::{Colength, IdealData, LocusDim, TermOrder};
use crate::verdict::Verdict;

/// A finite-dimensional local algebra `O/I` with basis the local standard
/// monomials of `I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    ideal: IdealData,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    reducers: Vec<(Monomial, Polynomial)>,
    cutoff: u32,
}

impl QuotientAlgebra {
    /// Fails with [`Precondition::NotArtin`] when `V(I)` has positive
    /// dimension at the origin.
    pub fn new(ideal: &IdealData) -> Result<Self> {
        let basis = match ideal.std_monomials() {
            Ok(b) => b,
            Err(Error::InfiniteColength { dim }) => return Err(Precondition::NotArtin { dim }.into()),
            Err(e) => return Err(e),
        };
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let ord = TermOrder::LocalNegDegRevLex;
        let reducers = ideal.leading_monomials(ord).into_iter().zip(ideal.standard_basis(ord).iter().cloned()).collect();
        // every monomial above the top standard degree lies in I
        let cutoff = basis.iter().map(Monomial::degree).max().map_or(0, |d| d + 1);
        Ok(QuotientAlgebra { ideal: ideal.clone(), basis, index, reducers, cutoff })
    }

    pub fn ideal(&self) -> &IdealData {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// `m^cutoff` is contained in `I`.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Coordinates of the class of `p`. Terms are eliminated from the
    /// largest non-standard one downwards in the local order, discarding
    /// everything of degree at least the cutoff, so the result is canonical.
    pub fn coords(&self, p: &Polynomial) -> Result<Vec<Scalar>> {
        if !same_ring(p.ring(), self.ideal.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut work: HashMap<Monomial, Scalar> =
            p.terms().iter().filter(|(m, _)| m.degree() < self.cutoff).cloned().collect();
        loop {
            let next = work
                .keys()
                .filter(|m| !self.index.contains_key(*m))
                .max_by(|a, b| a.cmp_neg_degrevlex(b))
                .cloned();
            let Some(m) = next else { break };
            let c = work.remove(&m).expect("present");
            let (lm, g) = self.reducers.iter().find(|(lm, _)| lm.divides(&m)).expect("non-standard monomial");
            let q = m.div(lm).expect("divides");
            let lc = g.coefficient(lm);
            for (t, a) in g.terms() {
                if t == lm {
                    continue;
                }
                let tm = t.mul(&q);
                if tm.degree() >= self.cutoff {
                    continue;
                }
                let e = work.entry(tm.clone()).or_insert_with(Scalar::zero);
                *e -= &c * a / &lc;
                if e.is_zero() {
                    work.remove(&tm);
                }
            }
        }
        let mut out = vec![Scalar::zero(); self.basis.len()];
        for (m, c) in work {
            out[self.index[&m]] = c;
        }
        Ok(out)
    }

    /// The polynomial `sum c_i b_i` in the standard monomials.
    pub fn element(&self, coords: &[Scalar]) -> Polynomial {
        let ring = self.ideal.ring();
        Polynomial::from_terms(ring, self.basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Canonical representative of the class of `p`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.element(&self.coords(p)?))
    }

    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.coords(p)?.iter().all(Scalar::is_zero))
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&a.try_mul(b)?)
    }

    /// Matrix of multiplication by `p`; column `j` holds the coordinates of
    /// `p * b_j`.
    pub fn mult_matrix(&self, p: &Polynomial) -> Result<Vec<Vec<Scalar>>> {
        let d = self.dim();
        let mut m = vec![vec![Scalar::zero(); d]; d];
        for (j, b) in self.basis.iter().enumerate() {
            let prod = p.mul_term(b, &int(1));
            for (i, c) in self.coords(&prod)?.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// The ideal of `A` generated by the classes of `gens`.
    pub fn ideal_of(&self, gens: &[Polynomial]) -> Result<CosetIdeal> {
        let mut vectors = Vec::new();
        for g in gens {
            for b in &self.basis {
                vectors.push(self.coords(&g.mul_term(b, &int(1)))?);
            }
        }
        Ok(CosetIdeal { space: Subspace::span(self.dim(), vectors) })
    }

    pub fn whole(&self) -> CosetIdeal {
        CosetIdeal { space: Subspace::whole(self.dim()) }
    }

    pub fn zero_ideal(&self) -> CosetIdeal {
        CosetIdeal { space: Subspace::zero(self.dim()) }
    }

    /// `soc(A)`, the common kernel of multiplication by the variables.
    pub fn socle(&self) -> Result<CosetIdeal> {
        let ring = self.ideal.ring();
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        self.annihilator_of(&vars)
    }

    /// `Ann_A(J A)`, the common kernel of multiplication by the generators of
    /// `J`; the annihilator of the zero ideal is `A`.
    pub fn annihilator(&self, j: &IdealData) -> Result<CosetIdeal> {
        self.annihilator_of(j.gens())
    }

    /// The annihilator of the classes of `gens`.
    pub fn annihilator_of(&self, gens: &[Polynomial]) -> Result<CosetIdeal> {
        let mut rows = Vec::new();
        for g in gens {
            rows.extend(self.mult_matrix(g)?);
        }
        let kernel = linalg::nullspace(&rows, self.dim());
        Ok(CosetIdeal { space: Subspace::span(self.dim(), kernel) })
    }

    /// `(I : J) / I` from an ideal quotient over the polynomial ring. Agrees
    /// with [`annihilator`](Self::annihilator) but can be far slower.
    pub fn annihilator_colon(&self, j: &IdealData) -> Result<CosetIdeal> {
        match self.ideal.quotient(j) {
            Ok(colon) => self.ideal_of(colon.gens()),
            Err(Error::ColonByZero) => Ok(self.whole()),
            Err(e) => Err(e),
        }
    }

    /// `(I : m) / I`.
    pub fn socle_colon(&self) -> Result<CosetIdeal> {
        self.annihilator_colon(&IdealData::maximal(self.ideal.ring()))
    }

    pub fn contains(&self, ideal: &CosetIdeal, p: &Polynomial) -> Result<bool> {
        Ok(ideal.space.contains(&self.coords(p)?))
    }
}

/// An ideal of a [`QuotientAlgebra`], as a subspace of its coordinate space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetIdeal {
    space: Subspace,
}

impl CosetIdeal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains_coords(&self, v: &[Scalar]) -> bool {
        self.space.contains(v)
    }

    pub fn contains_ideal(&self, other: &CosetIdeal) -> bool {
        self.space.contains_subspace(&other.space)
    }

    pub fn equals(&self, other: &CosetIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Standard-monomial representatives of a vector-space basis.
    pub fn representatives(&self, alg: &QuotientAlgebra) -> Vec<Polynomial> {
        self.space.basis().iter().map(|v| alg.element(v)).collect()
    }
}

/// Shortcut for [`QuotientAlgebra::new`].
pub fn quotient(ideal: &IdealData) -> Result<QuotientAlgebra> {
    QuotientAlgebra::new(ideal)
}

#[derive(Clone, Debug)]
pub struct CiCert {
    pub colength: Colength,
    /// Minimal number of generators of the localized ideal.
    pub min_generators: usize,
    pub minimal: Vec<Polynomial>,
    /// Socle dimension, computed when the ideal is a complete intersection;
    /// it must be 1.
    pub socle_dim: Option<usize>,
}

/// `I` is an m-primary complete intersection iff its colength is finite and
/// it needs exactly `n` generators locally.
pub fn ci_check(ideal: &IdealData) -> Result<Verdict<CiCert>> {
    let n = ideal.ring().nvars();
    let colength = ideal.colength();
    let (count, minimal) = ideal.min_generators();
    let holds = colength.finite().is_some() && count == n;
    let mut socle_dim = None;
    let mut notes = vec![format!("colength {colength}, {count} minimal generators, n = {n}")];
    if holds {
        let d = QuotientAlgebra::new(ideal)?.socle()?.dim();
        if d != 1 {
            notes.push(format!("complete intersection with socle dimension {d}"));
        }
        socle_dim = Some(d);
    }
    let mut v = Verdict::new(holds, CiCert { colength, min_generators: count, minimal, socle_dim });
    v.diagnostics = notes;
    Ok(v)
}

fn require_isolated(gamma: &Polynomial) -> Result<usize> {
    let j = IdealData::new(gamma.ring(), gamma.jacobian());
    match j.colength() {
        Colength::Finite(mu) => Ok(mu),
        Colength::Infinite => {
            let dim = match j.dim_at_origin() {
                LocusDim::Dim(d) => d,
                LocusDim::Empty => 0,
            };
            Err(Precondition::NonIsolatedCritical { dim }.into())
        }
    }
}

#[derive(Clone, Debug)]
pub struct WiebeCert {
    pub delta: Polynomial,
    pub colength: usize,
    /// `⟨Δ̄⟩ = Ann(J̄_γ)`.
    pub delta_generates_ann_jacobian: bool,
    /// `J̄_γ = Ann(Δ̄)`.
    pub jacobian_is_ann_delta: bool,
}

/// Checks both Wiebe dualities in `A = O/⟨F⟩` for `F_j = sum_i T_ji ∂_i γ`
/// with transition matrix `T` and `Δ = det T`.
pub fn wiebe_check(gamma: &Polynomial, fs: &[Polynomial], transition: &PolyMatrix) -> Result<Verdict<WiebeCert>> {
    let n = gamma.nvars();
    if transition.rows() != n || transition.cols() != n {
        return Err(Error::NotSquare { rows: transition.rows(), cols: transition.cols() });
    }
    if fs.len() != n {
        return Err(Error::Shape(format!("{} sequence elements for {n} variables", fs.len())));
    }
    require_isolated(gamma)?;
    let g = gamma.jacobian();
    for (row, fj) in fs.iter().enumerate() {
        let mut acc = Polynomial::zero(gamma.ring());
        for (i, gi) in g.iter().enumerate() {
            acc = acc.try_add(&transition.get(row, i).try_mul(gi)?)?;
        }
        if &acc != fj {
            return Err(Precondition::TransitionMismatch { row }.into());
        }
    }
    let ideal = IdealData::new(gamma.ring(), fs.iter().cloned());
    let alg = QuotientAlgebra::new(&ideal)?;
    let delta = transition.det()?;
    let jac = IdealData::new(gamma.ring(), g.iter().cloned());
    let jbar = alg.ideal_of(&g)?;
    let dbar = alg.ideal_of(std::slice::from_ref(&delta))?;
    let ann_j = alg.annihilator(&jac)?;
    let ann_d = alg.annihilator(&IdealData::new(gamma.ring(), [delta.clone()]))?;
    let first = ann_j.equals(&dbar);
    let second = ann_d.equals(&jbar);
    let cert = WiebeCert {
        delta,
        colength: alg.dim(),
        delta_generates_ann_jacobian: first,
        jacobian_is_ann_delta: second,
    };
    let v = Verdict::new(first && second, cert);
    Ok(v.note(format!("dim A = {}, dim Ann(J) = {}, dim Ann(Δ) = {}", alg.dim(), ann_j.dim(), ann_d.dim())))
}

#[derive(Clone, Debug)]
pub struct TheoremBCert {
    pub milnor: usize,
    pub colength: usize,
    /// The regular sequence `F` generating `Θ(γ)`.
    pub sequence: Vec<Polynomial>,
    /// Preimages `δ_j ∈ Θ` with `δ_j(γ) = F_j`.
    pub preimages: Vec<Derivation>,
    pub saito: SaitoData,
    /// Membership of `f ∂_i γ` in `Θ(γ)`, per `i`.
    pub memberships: Vec<bool>,
    /// Verdict of Saito's criterion on the same divisor.
    pub saito_verdict: bool,
}

/// `D` is free iff `f J_γ ⊆ Θ(γ)`, for `γ ∈ m²` with an isolated critical
/// point and `O/Θ(γ)` a complete intersection. On success the preimages of
/// a minimal generating set of `Θ(γ)` form a basis of `Der(-log D)`.
pub fn theorem_b_check(germ: &DivisorGerm, theta: &DerivationModule, gamma: &Polynomial) -> Result<Verdict<TheoremBCert>> {
    if !same_ring(gamma.ring(), germ.ring()) {
        return Err(Error::RingMismatch);
    }
    if let Some(d) = gamma.low_degree() {
        if d < 2 {
            return Err(Precondition::GammaNotInSquare { degree: d }.into());
        }
    }
    let milnor = require_isolated(gamma)?;
    logder::require_reduced(germ)?;
    let ring = germ.ring();
    let n = germ.nvars();

    let images: Vec<(usize, Polynomial)> = theta
        .derivations()
        .iter()
        .enumerate()
        .map(|(k, d)| Ok((k, d.apply(gamma)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let ideal = IdealData::new(ring, images.iter().map(|(_, p)| p.clone()));
    let ci = ci_check(&ideal)?;
    if !ci.holds {
        return Err(match ci.certificate.colength {
            Colength::Infinite => {
                let dim = match ideal.dim_at_origin() {
                    LocusDim::Dim(d) => d,
                    LocusDim::Empty => 0,
                };
                Precondition::NotArtin { dim }
            }
            Colength::Finite(_) => Precondition::NotCompleteIntersection { generators: ci.certificate.min_generators, nvars: n },
        }
        .into());
    }
    let colength = ci.certificate.colength.finite().expect("artin");

    let keep = ideal.minimal_subset();
    let sequence: Vec<Polynomial> = keep.iter().map(|&i| images[i].1.clone()).collect();
    let preimages: Vec<Derivation> = keep.iter().map(|&i| theta.derivations()[images[i].0].clone()).collect();
    let saito = SaitoData::new(germ, preimages.clone())?;
    for (row, fj) in sequence.iter().enumerate() {
        let mut acc = Polynomial::zero(ring);
        for (i, gi) in gamma.jacobian().iter().enumerate() {
            acc = acc.try_add(&saito.matrix.get(row, i).try_mul(gi)?)?;
        }
        if &acc != fj {
            return Err(Precondition::TransitionMismatch { row }.into());
        }
    }

    let mut memberships = Vec::with_capacity(n);
    for gi in gamma.jacobian() {
        memberships.push(ideal.contains(&germ.f().try_mul(&gi)?, TermOrder::LocalNegDegRevLex)?);
    }
    let holds = memberships.iter().all(|&b| b);
    let saito_verdict = logder::saito_free_check(germ, theta)?.holds;

    let mut notes = vec![format!("Milnor number {milnor}, colength of Θ(γ) {colength}")];
    if holds {
        let unit = saito.cofactor.as_ref().is_some_and(|u| !u.constant_term().is_zero());
        if !unit {
            notes.push("f J ⊆ Θ(γ) but the Saito determinant is not a unit multiple of f".into());
        }
    }
    if saito_verdict != holds {
        notes.push(format!("Saito's criterion disagrees: free = {saito_verdict}"));
    }
    let cert = TheoremBCert { milnor, colength, sequence, preimages, saito, memberships, saito_verdict };
    let mut v = Verdict::new(holds, cert);
    v.diagnostics = notes;
    Ok(v)
}

/// Chooses `n` derivations of `theta` whose images `δ(γ)` generate an
/// m-primary ideal, hence a complete intersection: all of `theta` when it
/// has `n` generators, otherwise the first such `n`-subset of a minimal
/// generating set in lexicographic order.
pub fn ci_preimages(theta: &DerivationModule, gamma: &Polynomial) -> Result<Option<Vec<Derivation>>> {
    let n = gamma.nvars();
    let candidates: Vec<Derivation> = if theta.len() == n {
        theta.derivations().to_vec()
    } else {
        theta.as_module().minimal_subset().into_iter().map(|i| theta.derivations()[i].clone()).collect()
    };
    if candidates.len() < n {
        return Ok(None);
    }
    let images = candidates.iter().map(|d| d.apply(gamma)).collect::<Result<Vec<_>>>()?;
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let ideal = IdealData::new(gamma.ring(), pick.iter().map(|&i| images[i].clone()));
        if ideal.colength().finite().is_some() {
            return Ok(Some(pick.iter().map(|&i| candidates[i].clone()).collect()));
        }
        // next combination
        let m = candidates.len();
        let mut k = n;
        while k > 0 && pick[k - 1] == m - n + k - 1 {
            k -= 1;
        }
        if k == 0 {
            return Ok(None);
        }
        pick[k - 1] += 1;
        for j in k..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct HessianCert {
    /// `⟨Δ⟩ = ⟨f⟩` in the local ring.
    pub det_generates_f: bool,
    /// `f H_γ ∈ soc(A_γ)`.
    pub hessian_in_socle: bool,
}

/// For homogeneous `γ`, compares `⟨Δ⟩ = ⟨f⟩` with `f H_γ ∈ soc(A_γ)`; the
/// verdict holds when the two sides agree.
pub fn hessian_socle_check(
    germ: &DivisorGerm,
    gamma: &Polynomial,
    alg: &QuotientAlgebra,
    delta: &Polynomial,
) -> Result<Verdict<HessianCert>> {
    if !gamma.is_homogeneous() {
        return Err(Precondition::NonHomogeneous.into());
    }
    let ring = germ.ring();
    let local = TermOrder::LocalNegDegRevLex;
    let det_generates_f =
        IdealData::new(ring, [delta.clone()]).equals(&IdealData::new(ring, [germ.f().clone()]), local)?;
    let fh = germ.f().try_mul(&gamma.hessian_det())?;
    let soc = alg.socle()?;
    let hessian_in_socle = alg.contains(&soc, &fh)?;
    let v = Verdict::new(det_generates_f == hessian_in_socle, HessianCert { det_generates_f, hessian_in_socle });
    Ok(v.note(format!("⟨Δ⟩ = ⟨f⟩: {det_generates_f}, f·H ∈ soc: {hessian_in_socle}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logder::derlog;
    use crate::poly::Ring;
    use std::sync::Arc;

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> IdealData {
        IdealData::new(r, gens.iter().map(|s| poly(r, s)))
    }

    fn whitney_theta_gamma() -> (Arc<Ring>, IdealData) {
        let r = Ring::new(["x", "y", "z"]);
        let i = ideal(&r, &["2*x^2+4*z^2", "2*x*y^2+4*x*z", "2*x*y*z+2*x*y", "2*y^2-4*z^2"]);
        (r, i)
    }

    #[test]
    fn quotient_dimensions() {
        let r = Ring::new(["x", "y"]);
        assert_eq!(quotient(&ideal(&r, &["x^2", "y^2"])).unwrap().dim(), 4);
        let (_, w) = whitney_theta_gamma();
        assert_eq!(quotient(&w).unwrap().dim(), 6);
        let r3 = Ring::new(["x", "y", "z"]);
        let e5 = ideal(&r3, &["2*x^2+2*y^2", "2*x^2*y^2-2*y^4+4*x*y*z-2*x^2*z^2-6*y^2*z^2+4*x*y*z^3", "2*y*z-2*x*z^2"]);
        let e = quotient(&e5).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::NotArtin { dim: 1 })));
    }

    #[test]
    fn coordinates_are_canonical() {
        let (r, w) = whitney_theta_gamma();
        let a = quotient(&w).unwrap();
        for m in a.basis() {
            let p = Polynomial::monomial(&r, m.clone(), int(1));
            assert_eq!(a.normal_form(&p).unwrap(), p);
        }
        for g in w.gens() {
            assert!(a.is_zero(g).unwrap());
        }
        // f = x^2 - y^2 z is -2 z^2 in A
        let f = poly(&r, "x^2 - y^2*z");
        assert_eq!(a.normal_form(&f).unwrap(), poly(&r, "-2*z^2"));
        // the class of 1 + z times anything is a unit multiple
        let u = poly(&r, "(1+z)*(x^2 - y^2*z)");
        let lhs = a.normal_form(&u).unwrap();
        let rhs = a.mul(&poly(&r, "1+z"), &a.normal_form(&f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        for k in 0..=3u32 {
            for m in Monomial::all_of_degree(3, a.cutoff() + k) {
                assert!(w.contains(&Polynomial::monomial(&r, m, int(1)), TermOrder::LocalNegDegRevLex).unwrap());
            }
        }
    }

    #[test]
    fn socles() {
        let r = Ring::new(["x", "y"]);
        let a = quotient(&ideal(&r, &["x^2", "y^2"])).unwrap();
        let s = a.socle().unwrap();
        assert_eq!(s.representatives(&a), vec![poly(&r, "x*y")]);

        let (r, w) = whitney_theta_gamma();
        let a = quotient(&w).unwrap();
        let s = a.socle().unwrap();
        assert!(s.equals(&a.socle_colon().unwrap()));
        let expect = a.ideal_of(&[poly(&r, "y*z"), poly(&r, "z^2")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.equals(&expect));

        let r = Ring::new(["x"]);
        let a = quotient(&ideal(&r, &["x^3"])).unwrap();
        assert_eq!(a.socle().unwrap().representatives(&a), vec![poly(&r, "x^2")]);
    }

    #[test]
    fn annihilators() {
        let r = Ring::new(["x", "y"]);
        let a = quotient(&ideal(&r, &["x^2", "y"])).unwrap();
        let ann = a.annihilator(&ideal(&r, &["x"])).unwrap();
        assert_eq!(ann.representatives(&a), vec![poly(&r, "x")]);
        assert!(a.annihilator(&IdealData::new(&r, [])).unwrap().equals(&a.whole()));

        let (r, w) = whitney_theta_gamma();
        let a = quotient(&w).unwrap();
        let jac = ideal(&r, &["2*x", "2*y", "2*z"]);
        let ann = a.annihilator(&jac).unwrap();
        assert!(ann.equals(&a.annihilator_colon(&jac).unwrap()));
        assert!(a.contains(&ann, &poly(&r, "x^2 - y^2*z")).unwrap());
    }

    #[test]
    fn complete_intersections() {
        let r = Ring::new(["x", "y"]);
        let v = ci_check(&ideal(&r, &["x^2", "y^2"])).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.socle_dim, Some(1));
        let v = ci_check(&ideal(&r, &["x^2+y^2", "x^3-y^3"])).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.colength, Colength::Finite(6));
        assert_eq!(v.certificate.socle_dim, Some(1));
        let (_, w) = whitney_theta_gamma();
        let v = ci_check(&w).unwrap();
        assert!(!v.holds);
        assert_eq!(v.certificate.min_generators, 4);
    }

    #[test]
    fn wiebe_small_cases() {
        let r = Ring::new(["x", "y"]);
        let gamma = poly(&r, "x^2+y^2");
        let id = PolyMatrix::identity(&r, 2);
        let v = wiebe_check(&gamma, &[poly(&r, "2*x"), poly(&r, "2*y")], &id).unwrap();
        assert!(v.holds);

        let t = PolyMatrix::from_rows(&r, vec![vec![poly(&r, "x"), poly(&r, "0")], vec![poly(&r, "0"), poly(&r, "1")]])
            .unwrap();
        let v = wiebe_check(&gamma, &[poly(&r, "2*x^2"), poly(&r, "2*y")], &t).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.colength, 2);

        let e = wiebe_check(&gamma, &[poly(&r, "2*x^2"), poly(&r, "y")], &t).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::TransitionMismatch { row: 1 })));
    }

    #[test]
    fn wiebe_on_free_arrangement() {
        let r = Ring::new(["x", "y"]);
        let gamma = poly(&r, "x^2+y^2");
        let t = PolyMatrix::from_rows(
            &r,
            vec![vec![poly(&r, "x"), poly(&r, "y")], vec![poly(&r, "x^2"), poly(&r, "-y^2")]],
        )
        .unwrap();
        let fs = vec![poly(&r, "2*x^2+2*y^2"), poly(&r, "2*x^3-2*y^3")];
        let v = wiebe_check(&gamma, &fs, &t).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.colength, 6);
        assert_eq!(v.certificate.delta, poly(&r, "-x^2*y - x*y^2"));
    }

    #[test]
    fn theorem_b_arrangement() {
        let r = Ring::new(["x", "y"]);
        let g = DivisorGerm::new(poly(&r, "x*y*(x+y)")).unwrap();
        let theta = derlog(&g);
        let v = theorem_b_check(&g, &theta, &poly(&r, "x^2+y^2")).unwrap();
        assert!(v.holds);
        let c = &v.certificate;
        assert_eq!(c.milnor, 1);
        assert_eq!(c.colength, 6);
        assert!(c.saito_verdict);
        assert!(!c.saito.cofactor.as_ref().unwrap().constant_term().is_zero());
        let th = IdealData::new(&r, c.sequence.clone());
        assert!(th.equals(&ideal(&r, &["x^2+y^2", "x^3-y^3"]), TermOrder::LocalNegDegRevLex).unwrap());
    }

    #[test]
    fn theorem_b_normal_crossings() {
        let r = Ring::new(["x1", "x2", "x3"]);
        let g = DivisorGerm::new(poly(&r, "x1*x2*x3")).unwrap();
        let v = theorem_b_check(&g, &derlog(&g), &poly(&r, "x1^2+x2^2+x3^2")).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.colength, 8);
    }

    #[test]
    fn theorem_b_preconditions() {
        let r = Ring::new(["x", "y", "z"]);
        let w = DivisorGerm::new(poly(&r, "x^2-y^2*z")).unwrap();
        let theta = derlog(&w);
        let e = theorem_b_check(&w, &theta, &poly(&r, "x^2+y^2+z^2")).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::NotCompleteIntersection { generators: 4, nvars: 3 })));
        let e = theorem_b_check(&w, &theta, &poly(&r, "x+y^2+z^2")).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::GammaNotInSquare { degree: 1 })));
        let e = theorem_b_check(&w, &theta, &poly(&r, "x^2+y^2")).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::NonIsolatedCritical { dim: 1 })));
    }

    #[test]
    fn hessian_remark() {
        let r = Ring::new(["x", "y"]);
        let g = DivisorGerm::new(poly(&r, "x*y*(x+y)")).unwrap();
        let gamma = poly(&r, "x^2+y^2");
        let theta = derlog(&g);
        let b = theorem_b_check(&g, &theta, &gamma).unwrap();
        let a = quotient(&IdealData::new(&r, b.certificate.sequence.clone())).unwrap();
        let v = hessian_socle_check(&g, &gamma, &a, &b.certificate.saito.det).unwrap();
        assert!(v.holds);
        assert!(v.certificate.det_generates_f && v.certificate.hessian_in_socle);

        let r = Ring::new(["x", "y", "z"]);
        let w = DivisorGerm::new(poly(&r, "x^2-y^2*z")).unwrap();
        let gamma = poly(&r, "x^2+y^2+z^2");
        let rows = [["x", "0", "2*z"], ["y^2", "0", "2*x"], ["0", "y", "-2*z"]];
        let ds: Vec<Derivation> =
            rows.iter().map(|row| Derivation::new(&r, row.iter().map(|s| poly(&r, s)).collect()).unwrap()).collect();
        let theta = DerivationModule::new(&w, ds.clone(), false).unwrap();
        let a = quotient(&theta.apply(&gamma).unwrap()).unwrap();
        let delta = SaitoData::new(&w, ds).unwrap().det;
        let v = hessian_socle_check(&w, &gamma, &a, &delta).unwrap();
        assert!(v.holds);
        assert!(!v.certificate.det_generates_f && !v.certificate.hessian_in_socle);

        let chosen = ci_preimages(&derlog(&w), &gamma).unwrap().unwrap();
        assert_eq!(chosen.len(), 3);
        let theta = DerivationModule::new(&w, chosen.clone(), false).unwrap();
        assert!(ci_check(&theta.apply(&gamma).unwrap()).unwrap().holds);

        let e = hessian_socle_check(&w, &poly(&r, "x^2+y^3+z^2"), &a, &delta).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::NonHomogeneous)));
    }
}
