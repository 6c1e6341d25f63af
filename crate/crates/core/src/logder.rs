//! Logarithmic derivations of a hypersurface germ and Saito's criterion.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Precondition, Result};
use crate::poly::{same_ring, PolyMatrix, Polynomial, Ring, Scalar};
use crate::stdbasis::{IdealData, LocusDim, ModuleData, TermOrder};
use crate::verdict::Verdict;

/// The germ at the origin of `D = V(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorGerm {
    f: Polynomial,
}

impl DivisorGerm {
    /// Requires `f` nonzero and vanishing at the origin.
    pub fn new(f: Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidDivisor("f is zero".into()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::InvalidDivisor(format!("f = {f} is a unit at the origin")));
        }
        Ok(DivisorGerm { f })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.f.ring()
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Tests `δ(f) ∈ ⟨f⟩` in the polynomial ring.
    pub fn is_tangent(&self, d: &Derivation) -> Result<bool> {
        let df = d.apply(&self.f)?;
        Ok(df.div_exact(&self.f)?.is_some())
    }
}

/// A vector field `sum a_i ∂_i`, stored as its coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != ring.nvars() {
            return Err(Error::Shape(format!(
                "derivation has {} coefficients in a ring with {} variables",
                coeffs.len(),
                ring.nvars()
            )));
        }
        if coeffs.iter().any(|c| !same_ring(c.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Derivation { coeffs })
    }

    /// The coordinate field `∂_i`.
    pub fn partial(ring: &Arc<Ring>, i: usize) -> Self {
        let coeffs =
            (0..ring.nvars()).map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }).collect();
        Derivation { coeffs }
    }

    /// The Euler field `sum x_i ∂_i`.
    pub fn euler(ring: &Arc<Ring>) -> Self {
        Derivation { coeffs: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect() }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.apply_derivation(&self.coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<Derivation> {
        let coeffs = self.coeffs.iter().map(|a| a.try_mul(p)).collect::<Result<_>>()?;
        Ok(Derivation { coeffs })
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(Derivation { coeffs })
    }

    /// Linear combination `sum c_k d_k` with polynomial coefficients.
    pub fn combine(ring: &Arc<Ring>, coeffs: &[Polynomial], derivs: &[Derivation]) -> Result<Derivation> {
        let mut acc = Derivation { coeffs: vec![Polynomial::zero(ring); ring.nvars()] };
        for (c, d) in coeffs.iter().zip(derivs) {
            if !c.is_zero() {
                acc = acc.add(&d.mul_poly(c)?)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of logarithmic derivations of `D`: either generators of all
/// of `Der(-log D)` or of a submodule `Θ`.
#[derive(Clone, Debug)]
pub struct DerivationModule {
    germ: DivisorGerm,
    derivs: Vec<Derivation>,
    is_full_derlog: bool,
}

impl DerivationModule {
    /// Fails with [`Precondition::NotTangent`] naming the first derivation
    /// that does not preserve `⟨f⟩`.
    pub fn new(germ: &DivisorGerm, derivs: Vec<Derivation>, is_full_derlog: bool) -> Result<Self> {
        for (index, d) in derivs.iter().enumerate() {
            if d.coeffs.len() != germ.nvars() {
                return Err(Error::Shape(format!("derivation {index} has the wrong length")));
            }
            if !germ.is_tangent(d)? {
                return Err(Precondition::NotTangent { index }.into());
            }
        }
        Ok(DerivationModule { germ: germ.clone(), derivs, is_full_derlog })
    }

    pub fn germ(&self) -> &DivisorGerm {
        &self.germ
    }

    pub fn derivations(&self) -> &[Derivation] {
        &self.derivs
    }

    pub fn is_full_derlog(&self) -> bool {
        self.is_full_derlog
    }

    pub fn len(&self) -> usize {
        self.derivs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derivs.is_empty()
    }

    /// The submodule of `R^n` spanned by the coefficient vectors.
    pub fn as_module(&self) -> ModuleData {
        let gens = self.derivs.iter().map(|d| d.coeffs.clone()).collect();
        ModuleData::new(self.germ.ring(), self.germ.nvars(), gens).expect("shape checked")
    }

    pub fn contains_local(&self, d: &Derivation) -> Result<bool> {
        self.as_module().contains_local(&d.coeffs)
    }

    pub fn contains_global(&self, d: &Derivation) -> Result<bool> {
        self.as_module().contains_global(&d.coeffs)
    }

    /// Equality of the generated modules over the local ring.
    pub fn equals_local(&self, other: &DerivationModule) -> Result<bool> {
        self.as_module().equals_local(&other.as_module())
    }

    /// The ideal `Θ(γ)` generated by the `δ(γ)`.
    pub fn apply(&self, gamma: &Polynomial) -> Result<IdealData> {
        apply_derivs(self, gamma)
    }
}

/// The Saito matrix `(δ_j(x_i))` of `n` derivations, its determinant, and
/// the cofactor `u` with `Δ = u f` when the division is exact.
#[derive(Clone, Debug)]
pub struct SaitoData {
    pub derivations: Vec<Derivation>,
    pub matrix: PolyMatrix,
    pub det: Polynomial,
    pub cofactor: Option<Polynomial>,
}

impl SaitoData {
    /// Row `j` of the matrix holds the coefficients of `δ_j`.
    pub fn new(germ: &DivisorGerm, derivations: Vec<Derivation>) -> Result<Self> {
        let n = germ.nvars();
        if derivations.len() != n {
            return Err(Error::NotSquare { rows: derivations.len(), cols: n });
        }
        let rows = derivations.iter().map(|d| d.coeffs.clone()).collect();
        let matrix = PolyMatrix::from_rows(germ.ring(), rows)?;
        let det = matrix.det()?;
        let cofactor = det.div_exact(germ.f())?;
        Ok(SaitoData { derivations, matrix, det, cofactor })
    }
}

#[derive(Clone, Debug)]
pub struct ReducednessCert {
    /// Dimension of `V(f, ∂_1 f, ..., ∂_n f)`.
    pub singular_dim: LocusDim,
    pub nvars: usize,
}

/// `D` is reduced iff its singular locus has codimension at least 2 in
/// `C^n`, i.e. `dim V(f, ∂f) <= n - 2`.
pub fn reducedness_check(germ: &DivisorGerm) -> Verdict<ReducednessCert> {
    let n = germ.nvars();
    let mut gens = vec![germ.f.clone()];
    gens.extend(germ.f.jacobian());
    let sing = IdealData::new(germ.ring(), gens);
    let dim = sing.dim_global();
    let holds = match dim {
        LocusDim::Empty => true,
        LocusDim::Dim(d) => d + 2 <= n,
    };
    let v = Verdict::new(holds, ReducednessCert { singular_dim: dim, nvars: n });
    v.note(format!("dim V(f, ∂f) = {dim}, n = {n}"))
}

pub(crate) fn require_reduced(germ: &DivisorGerm) -> Result<()> {
    let v = reducedness_check(germ);
    if v.holds {
        return Ok(());
    }
    let dim = match v.certificate.singular_dim {
        LocusDim::Empty => -1,
        LocusDim::Dim(d) => d as i64,
    };
    Err(Precondition::NotReduced { dim }.into())
}

/// Generators of `Der(-log D)`: the first `n` components of the syzygies of
/// `(∂_1 f, ..., ∂_n f, -f)`.
pub fn derlog(germ: &DivisorGerm) -> DerivationModule {
    let ring = germ.ring();
    let n = germ.nvars();
    let mut cols: Vec<Vec<Polynomial>> = germ.f.jacobian().into_iter().map(|p| vec![p]).collect();
    cols.push(vec![-&germ.f]);
    let cols = ModuleData::new(ring, 1, cols).expect("rank one");
    // zero partials are dropped by ModuleData; track positions
    let positions: Vec<usize> = {
        let jac = germ.f.jacobian();
        let mut pos: Vec<usize> = (0..n).filter(|&i| !jac[i].is_zero()).collect();
        pos.push(n);
        pos
    };
    let mut derivs: Vec<Derivation> = Vec::new();
    for i in 0..n {
        if germ.f.diff(i).expect("index").is_zero() {
            derivs.push(Derivation::partial(ring, i));
        }
    }
    for s in cols.syzygies().gens() {
        let mut coeffs = vec![Polynomial::zero(ring); n];
        for (k, &p) in positions.iter().enumerate() {
            if p < n {
                coeffs[p] = s[k].clone();
            }
        }
        let d = Derivation { coeffs };
        if !d.is_zero() && !derivs.contains(&d) {
            derivs.push(d);
        }
    }
    DerivationModule { germ: germ.clone(), derivs, is_full_derlog: true }
}

/// The ideal generated by `δ(γ)` for the generators `δ` of `theta`.
pub fn apply_derivs(theta: &DerivationModule, gamma: &Polynomial) -> Result<IdealData> {
    if !same_ring(gamma.ring(), theta.germ.ring()) {
        return Err(Error::RingMismatch);
    }
    let gens = theta.derivs.iter().map(|d| d.apply(gamma)).collect::<Result<Vec<_>>>()?;
    Ok(IdealData::new(theta.germ.ring(), gens))
}

#[derive(Clone, Debug)]
pub struct FreenessCert {
    /// Minimal number of generators of the localized module.
    pub min_generators: usize,
    /// A basis and its Saito data, present when the module is free.
    pub saito: Option<SaitoData>,
}

/// Saito's criterion. Counts minimal generators of `Der(-log D)` over the
/// local ring; when the count is `n`, certifies with `Δ = u f`, `u(0) != 0`.
/// When `theta` is not marked as the full module, `Der(-log D)` is computed.
pub fn saito_free_check(germ: &DivisorGerm, theta: &DerivationModule) -> Result<Verdict<FreenessCert>> {
    require_reduced(germ)?;
    let n = germ.nvars();
    let computed;
    let module = if theta.is_full_derlog {
        theta
    } else {
        computed = derlog(germ);
        &computed
    };
    let (count, mins) = module.as_module().min_generators();
    if count != n {
        let v = Verdict::new(false, FreenessCert { min_generators: count, saito: None });
        return Ok(v.note(format!("Der(-log D) needs {count} generators, n = {n}")));
    }
    let mut basis: Vec<Derivation> = mins.gens().iter().map(|g| Derivation { coeffs: g.clone() }).collect();
    let mut saito = SaitoData::new(germ, basis.clone())?;
    let unit = match &saito.cofactor {
        Some(u) => !u.constant_term().is_zero(),
        None => false,
    };
    if !unit {
        let v = Verdict::new(false, FreenessCert { min_generators: count, saito: Some(saito) });
        return Ok(v.note("Saito determinant is not a unit multiple of f"));
    }
    let u = saito.cofactor.clone().expect("checked");
    if u.is_constant() {
        let c = u.constant_term();
        if !c.is_one() {
            basis[0] = basis[0].scale(&c.recip());
            saito = SaitoData::new(germ, basis)?;
        }
    }
    let v = Verdict::new(true, FreenessCert { min_generators: count, saito: Some(saito) });
    Ok(v.note(format!("free: {n} generators, Δ = u·f with u(0) != 0")))
}

/// Checks `Δ ∈ ⟨f⟩` for `n` logarithmic derivations.
pub fn saito_det_membership(germ: &DivisorGerm, derivs: &[Derivation]) -> Result<Verdict<SaitoData>> {
    for (index, d) in derivs.iter().enumerate() {
        if !germ.is_tangent(d)? {
            return Err(Precondition::NotTangent { index }.into());
        }
    }
    let saito = SaitoData::new(germ, derivs.to_vec())?;
    let principal = IdealData::new(germ.ring(), [germ.f.clone()]);
    let holds = principal.contains(&saito.det, TermOrder::GlobalDegRevLex)?;
    let note = match &saito.cofactor {
        Some(q) => format!("Δ = {} , Δ/f = {q}", saito.det),
        None => format!("Δ = {} is not divisible by f", saito.det),
    };
    Ok(Verdict::new(holds, saito).note(note))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn deriv(r: &Arc<Ring>, cs: &[&str]) -> Derivation {
        Derivation::new(r, cs.iter().map(|s| poly(r, s)).collect()).unwrap()
    }

    fn whitney() -> (Arc<Ring>, DivisorGerm, Vec<Derivation>) {
        let r = Ring::new(["x", "y", "z"]);
        let g = DivisorGerm::new(poly(&r, "x^2 - y^2*z")).unwrap();
        let rows = vec![
            deriv(&r, &["x", "0", "2*z"]),
            deriv(&r, &["y^2", "0", "2*x"]),
            deriv(&r, &["y*z", "x", "0"]),
            deriv(&r, &["0", "y", "-2*z"]),
        ];
        (r, g, rows)
    }

    fn example5() -> (Arc<Ring>, DivisorGerm, Vec<Derivation>) {
        let r = Ring::new(["x", "y", "z"]);
        let g = DivisorGerm::new(poly(&r, "x*y*(x+y)*(x-y)*(y-x*z)")).unwrap();
        let rows = vec![
            deriv(&r, &["x", "y", "0"]),
            deriv(&r, &["0", "x^2*y - y^3", "2*x*y - x^2*z - 3*y^2*z + 2*x*y*z^2"]),
            deriv(&r, &["0", "0", "y - x*z"]),
        ];
        (r, g, rows)
    }

    #[test]
    fn divisor_validation() {
        let r = Ring::new(["x", "y"]);
        assert!(DivisorGerm::new(Polynomial::zero(&r)).is_err());
        assert!(DivisorGerm::new(poly(&r, "1 + x")).is_err());
        assert!(DivisorGerm::new(poly(&r, "x*y")).is_ok());
    }

    #[test]
    fn reducedness() {
        let (_, w, _) = whitney();
        let v = reducedness_check(&w);
        assert!(v.holds);
        assert_eq!(v.certificate.singular_dim, LocusDim::Dim(1));
        let r = Ring::new(["x", "y"]);
        let v = reducedness_check(&DivisorGerm::new(poly(&r, "x^2*y")).unwrap());
        assert!(!v.holds);
        assert_eq!(v.certificate.singular_dim, LocusDim::Dim(1));
        let v = reducedness_check(&DivisorGerm::new(poly(&r, "x*y")).unwrap());
        assert!(v.holds);
        assert_eq!(v.certificate.singular_dim, LocusDim::Dim(0));
    }

    #[test]
    fn whitney_derlog_matches_listed_rows() {
        let (_, w, rows) = whitney();
        let d = derlog(&w);
        for g in d.derivations() {
            assert!(w.is_tangent(g).unwrap());
        }
        let listed = DerivationModule::new(&w, rows, false).unwrap();
        assert!(d.equals_local(&listed).unwrap());
        assert_eq!(d.as_module().min_generators().0, 4);
    }

    #[test]
    fn smooth_and_normal_crossing_derlog() {
        let r = Ring::new(["x", "y"]);
        let g = DivisorGerm::new(poly(&r, "x")).unwrap();
        let expect = DerivationModule::new(&g, vec![deriv(&r, &["x", "0"]), deriv(&r, &["0", "1"])], false).unwrap();
        assert!(derlog(&g).equals_local(&expect).unwrap());

        let r = Ring::new(["x1", "x2", "x3"]);
        let g = DivisorGerm::new(poly(&r, "x1*x2*x3")).unwrap();
        let diag = vec![deriv(&r, &["x1", "0", "0"]), deriv(&r, &["0", "x2", "0"]), deriv(&r, &["0", "0", "x3"])];
        let expect = DerivationModule::new(&g, diag, false).unwrap();
        assert!(derlog(&g).equals_local(&expect).unwrap());
    }

    #[test]
    fn derlog_contains_f_times_partials() {
        for (r, g, _) in [whitney(), example5()] {
            let d = derlog(&g);
            for i in 0..3 {
                let fd = Derivation::partial(&r, i).mul_poly(g.f()).unwrap();
                assert!(d.contains_global(&fd).unwrap());
            }
        }
    }

    #[test]
    fn apply_to_gamma() {
        let (r, w, rows) = whitney();
        let gamma = poly(&r, "x^2 + y^2 + z^2");
        let theta = DerivationModule::new(&w, rows, true).unwrap();
        let i = theta.apply(&gamma).unwrap();
        let expect: Vec<Polynomial> =
            ["2*x^2+4*z^2", "2*x*y^2+4*x*z", "2*x*y*z+2*x*y", "2*y^2-4*z^2"].iter().map(|s| poly(&r, s)).collect();
        assert_eq!(i.gens(), &expect[..]);
        let listed = IdealData::new(&r, ["x*y", "x^2+2*z^2", "y^2-2*z^2", "2*x*z+x*y^2"].map(|s| poly(&r, s)));
        assert!(i.equals(&listed, TermOrder::LocalNegDegRevLex).unwrap());

        let (r, g, rows) = example5();
        let theta = DerivationModule::new(&g, rows, true).unwrap();
        let i = theta.apply(&poly(&r, "x^2+y^2+z^2")).unwrap();
        let expect: Vec<Polynomial> = [
            "2*x^2+2*y^2",
            "2*x^2*y^2-2*y^4+4*x*y*z-2*x^2*z^2-6*y^2*z^2+4*x*y*z^3",
            "2*y*z-2*x*z^2",
        ]
        .iter()
        .map(|s| poly(&r, s))
        .collect();
        assert_eq!(i.gens(), &expect[..]);
        assert!(theta.apply(&Polynomial::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn freeness_verdicts() {
        let (_, w, _) = whitney();
        let v = saito_free_check(&w, &derlog(&w)).unwrap();
        assert!(!v.holds);
        assert_eq!(v.certificate.min_generators, 4);

        let (_, g, _) = example5();
        let v = saito_free_check(&g, &derlog(&g)).unwrap();
        assert!(v.holds);
        let s = v.certificate.saito.unwrap();
        assert!(s.cofactor.unwrap().is_one());
        assert_eq!(&s.det, g.f());

        let r = Ring::new(["x1", "x2", "x3"]);
        let g = DivisorGerm::new(poly(&r, "x1*x2*x3")).unwrap();
        let v = saito_free_check(&g, &derlog(&g)).unwrap();
        assert!(v.holds);
        assert_eq!(&v.certificate.saito.unwrap().det, g.f());
    }

    #[test]
    fn freeness_requires_reduced() {
        let r = Ring::new(["x", "y"]);
        let g = DivisorGerm::new(poly(&r, "x^2*y")).unwrap();
        let e = saito_free_check(&g, &derlog(&g)).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::NotReduced { dim: 1 })));
    }

    #[test]
    fn determinant_membership() {
        let (_, g, rows) = example5();
        let v = saito_det_membership(&g, &rows).unwrap();
        assert!(v.holds);
        assert!(v.certificate.cofactor.unwrap().is_one());

        let (_, w, rows) = whitney();
        let v = saito_det_membership(&w, &rows[..3]).unwrap();
        assert!(v.holds);
        let q = v.certificate.cofactor.clone().unwrap();
        assert_eq!(&q * w.f(), v.certificate.det);

        let rep = vec![rows[0].clone(), rows[1].clone(), rows[0].clone()];
        let v = saito_det_membership(&w, &rep).unwrap();
        assert!(v.holds && v.certificate.det.is_zero());

        let r = w.ring().clone();
        let bad = vec![Derivation::partial(&r, 0), rows[1].clone(), rows[2].clone()];
        let e = saito_det_membership(&w, &bad).unwrap_err();
        assert!(matches!(e, Error::Precondition(Precondition::NotTangent { index: 0 })));
    }

    #[test]
    fn any_three_derlog_elements_have_det_in_f() {
        let (_, g, _) = example5();
        let d = derlog(&g);
        let ds = d.derivations();
        let k = ds.len();
        for a in 0..k {
            for b in (a + 1)..k {
                for c in (b + 1)..k {
                    let v = saito_det_membership(&g, &[ds[a].clone(), ds[b].clone(), ds[c].clone()]).unwrap();
                    assert!(v.holds);
                }
            }
        }
    }

    #[test]
    fn free_verdict_survives_recombination() {
        let r = Ring::new(["x", "y"]);
        let g = DivisorGerm::new(poly(&r, "x*y*(x+y)")).unwrap();
        let base = derlog(&g);
        let ds = base.derivations().to_vec();
        let k = ds.len();
        // upper unitriangular with rational entries, times 3 on the diagonal
        let mut mixed = Vec::new();
        for i in 0..k {
            let mut coeffs = vec![Polynomial::zero(&r); k];
            coeffs[i] = Polynomial::constant(&r, int(3));
            for (j, c) in coeffs.iter_mut().enumerate().skip(i + 1) {
                *c = Polynomial::constant(&r, int((i + 2 * j) as i64 - 1));
            }
            mixed.push(Derivation::combine(&r, &coeffs, &ds).unwrap());
        }
        let theta = DerivationModule::new(&g, mixed, true).unwrap();
        let a = saito_free_check(&g, &base).unwrap();
        let b = saito_free_check(&g, &theta).unwrap();
        assert!(a.holds && b.holds);
        let basis = b.certificate.saito.unwrap().derivations;
        let basis = DerivationModule::new(&g, basis, false).unwrap();
        assert!(basis.equals_local(&base).unwrap());
    }
}
