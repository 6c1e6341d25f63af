//! Random choice of `γ` from a finite-dimensional space of functions, and
//! the probe for finite colength of `Der(-log D)(γ)`.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::logder::{derlog, DerivationModule, DivisorGerm};
use crate::par::{self, Exec};
use crate::poly::{int, same_ring, Polynomial, Ring, Scalar};
use crate::stdbasis::{Colength, IdealData, LocusDim};
use crate::verdict::Verdict;

/// A finite-dimensional space `Γ ⊆ m` of functions with `V(Γ) = {0}`.
#[derive(Clone, Debug)]
pub struct GammaSpace {
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
}

impl GammaSpace {
    pub fn new(ring: &Arc<Ring>, basis: Vec<Polynomial>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidGammaSpace("empty basis".into()));
        }
        for b in &basis {
            if !same_ring(b.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !b.constant_term().is_zero() {
                return Err(Error::InvalidGammaSpace(format!("{b} does not vanish at the origin")));
            }
        }
        let ideal = IdealData::new(ring, basis.iter().cloned());
        if let Colength::Infinite = ideal.colength() {
            let dim = match ideal.dim_at_origin() {
                LocusDim::Dim(d) => d,
                LocusDim::Empty => 0,
            };
            return Err(Error::InvalidGammaSpace(format!("V(Γ) has dimension {dim} at the origin")));
        }
        Ok(GammaSpace { ring: ring.clone(), basis })
    }

    /// The span of all monomials of degree `d`.
    pub fn all_of_degree(ring: &Arc<Ring>, d: u32) -> Result<Self> {
        let basis = crate::poly::Monomial::all_of_degree(ring.nvars(), d)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m, int(1)))
            .collect();
        GammaSpace::new(ring, basis)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Whether every basis element lies in `m²`.
    pub fn in_square(&self) -> bool {
        self.basis.iter().all(|b| b.low_degree().is_none_or(|d| d >= 2))
    }
}

/// Seed, coefficient height bound `H` and retry count `R` for sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub height: u64,
    pub retries: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, height: 100, retries: 5 }
    }
}

impl SampleConfig {
    pub fn new(seed: u64, height: u64, retries: u32) -> Result<Self> {
        if height == 0 {
            return Err(Error::Shape("coefficient bound must be at least 1".into()));
        }
        if retries == 0 {
            return Err(Error::Shape("retry count must be at least 1".into()));
        }
        Ok(SampleConfig { seed, height, retries })
    }
}

/// Deterministic stream of samples `sum c_i b_i`, each `c_i = p/q` with
/// `p, q` uniform in `[1, H]`.
pub struct Sampler<'a> {
    space: &'a GammaSpace,
    height: u64,
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    pub fn new(space: &'a GammaSpace, cfg: &SampleConfig) -> Self {
        Sampler { space, height: cfg.height.max(1), rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    pub fn draw(&mut self) -> Polynomial {
        let mut acc = Polynomial::zero(&self.space.ring);
        for b in &self.space.basis {
            let p = self.rng.gen_range(1..=self.height);
            let q = self.rng.gen_range(1..=self.height);
            let c = Scalar::new(p.into(), q.into());
            acc = &acc + &b.scale(&c);
        }
        acc
    }
}

/// The first sample for `cfg`.
pub fn sample_gamma(space: &GammaSpace, cfg: &SampleConfig) -> Polynomial {
    Sampler::new(space, cfg).draw()
}

/// Colength of the Jacobian ideal: the Milnor number, or infinite for a
/// non-isolated critical point.
pub fn isolated_crit_check(gamma: &Polynomial) -> Colength {
    IdealData::new(gamma.ring(), gamma.jacobian()).colength()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub gamma: Polynomial,
    pub colength: Colength,
    pub dim: LocusDim,
}

#[derive(Clone, Debug)]
pub struct ProbeCert {
    pub seed: u64,
    /// Every draw, in order; the last one decides the verdict.
    pub attempts: Vec<Attempt>,
}

impl ProbeCert {
    /// Colength of `Θ(γ)` for the successful draw.
    pub fn colength(&self) -> Option<usize> {
        self.attempts.last().and_then(|a| a.colength.finite())
    }
}

/// Draws `γ` up to `R` times until `Der(-log D)(γ)` has finite colength.
pub fn theorem_a_probe(germ: &DivisorGerm, space: &GammaSpace, cfg: &SampleConfig) -> Result<Verdict<ProbeCert>> {
    probe_with(&derlog(germ), space, cfg)
}

/// As [`theorem_a_probe`] for a precomputed module of derivations.
pub fn probe_with(theta: &DerivationModule, space: &GammaSpace, cfg: &SampleConfig) -> Result<Verdict<ProbeCert>> {
    if !same_ring(space.ring(), theta.germ().ring()) {
        return Err(Error::RingMismatch);
    }
    let mut sampler = Sampler::new(space, cfg);
    let mut attempts = Vec::new();
    for _ in 0..cfg.retries.max(1) {
        let gamma = sampler.draw();
        let ideal = theta.apply(&gamma)?;
        let colength = ideal.colength();
        let dim = ideal.dim_at_origin();
        let done = colength.finite().is_some();
        attempts.push(Attempt { gamma, colength, dim });
        if done {
            break;
        }
    }
    let last = attempts.last().expect("at least one draw");
    let holds = last.colength.finite().is_some();
    let note = if holds {
        format!("V(Θ(γ)) = {{0}} with colength {} after {} draw(s)", last.colength, attempts.len())
    } else {
        format!(
            "dim V(Θ(γ)) = {} for all {} draws; evidence that D is not holonomic",
            last.dim,
            attempts.len()
        )
    };
    Ok(Verdict::new(holds, ProbeCert { seed: cfg.seed, attempts }).note(note))
}

/// Runs the probe once per seed, sharing one computation of `Der(-log D)`.
pub fn probe_seeds(
    germ: &DivisorGerm,
    space: &GammaSpace,
    cfg: &SampleConfig,
    seeds: &[u64],
    exec: Exec,
) -> Result<Vec<Verdict<ProbeCert>>> {
    let theta = derlog(germ);
    par::map(exec, seeds, |&seed| probe_with(&theta, space, &SampleConfig { seed, ..*cfg })).into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct LocusCert {
    /// Candidate generators vanishing on `V(I)`.
    pub candidate_in_radical: Vec<bool>,
    /// Generators of `I` vanishing on the candidate locus.
    pub ideal_in_radical: Vec<bool>,
}

/// `√I = √⟨candidate⟩` for the germs at the origin, by radical membership
/// in both directions.
pub fn locus_compare(ideal: &IdealData, candidate: &[Polynomial]) -> Result<Verdict<LocusCert>> {
    let cand = IdealData::new(ideal.ring(), candidate.iter().cloned());
    let candidate_in_radical = candidate.iter().map(|p| ideal.radical_contains_local(p)).collect::<Result<Vec<_>>>()?;
    let ideal_in_radical = ideal.gens().iter().map(|p| cand.radical_contains_local(p)).collect::<Result<Vec<_>>>()?;
    let holds = candidate_in_radical.iter().chain(&ideal_in_radical).all(|&b| b);
    Ok(Verdict::new(holds, LocusCert { candidate_in_radical, ideal_in_radical }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn squares(r: &Arc<Ring>) -> GammaSpace {
        let basis = (0..r.nvars()).map(|i| Polynomial::var(r, i).pow(2)).collect();
        GammaSpace::new(r, basis).unwrap()
    }

    #[test]
    fn gamma_space_validation() {
        let r = Ring::new(["x", "y"]);
        assert!(GammaSpace::new(&r, vec![poly(&r, "x^2")]).is_err());
        assert!(GammaSpace::new(&r, vec![poly(&r, "x^2+1"), poly(&r, "y")]).is_err());
        assert!(GammaSpace::new(&r, vec![poly(&r, "x^2"), poly(&r, "y^3")]).is_ok());
        assert!(SampleConfig::new(0, 0, 5).is_err());
        assert!(SampleConfig::new(0, 10, 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let r = Ring::new(["x", "y", "z"]);
        let g = squares(&r);
        let cfg = SampleConfig { seed: 7, ..Default::default() };
        assert_eq!(sample_gamma(&g, &cfg), sample_gamma(&g, &cfg));
        let other = SampleConfig { seed: 8, ..Default::default() };
        assert_ne!(sample_gamma(&g, &cfg), sample_gamma(&g, &other));
        let ones = SampleConfig { height: 1, ..Default::default() };
        assert_eq!(sample_gamma(&g, &ones), poly(&r, "x^2+y^2+z^2"));

        let r1 = Ring::new(["x"]);
        let g1 = GammaSpace::new(&r1, vec![poly(&r1, "x")]).unwrap();
        let s = sample_gamma(&g1, &cfg);
        assert_eq!(s.len(), 1);
        assert_eq!(s.degree(), Some(1));
    }

    #[test]
    fn milnor_numbers() {
        let r = Ring::new(["x", "y", "z"]);
        assert_eq!(isolated_crit_check(&poly(&r, "x^2+y^2+z^2")), Colength::Finite(1));
        assert_eq!(isolated_crit_check(&poly(&r, "x^3+y^3+z^3")), Colength::Finite(8));
        let r2 = Ring::new(["x", "y"]);
        assert_eq!(isolated_crit_check(&poly(&r2, "x^2*y")), Colength::Infinite);
    }

    #[test]
    fn probes() {
        let r = Ring::new(["x", "y", "z"]);
        let g = squares(&r);
        let cfg = SampleConfig::default();
        let w = DivisorGerm::new(poly(&r, "x^2-y^2*z")).unwrap();
        let v = theorem_a_probe(&w, &g, &cfg).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.colength(), Some(6));

        let e5 = DivisorGerm::new(poly(&r, "x*y*(x+y)*(x-y)*(y-x*z)")).unwrap();
        let v = theorem_a_probe(&e5, &g, &SampleConfig { retries: 2, ..cfg }).unwrap();
        assert!(!v.holds);
        assert_eq!(v.certificate.attempts.len(), 2);
        assert!(v.certificate.attempts.iter().all(|a| a.dim == LocusDim::Dim(1)));

        let r3 = Ring::new(["x1", "x2", "x3"]);
        let nc = DivisorGerm::new(poly(&r3, "x1*x2*x3")).unwrap();
        let v = theorem_a_probe(&nc, &squares(&r3), &cfg).unwrap();
        assert_eq!(v.certificate.colength(), Some(8));
    }

    #[test]
    fn parallel_probes_match_sequential() {
        let r = Ring::new(["x", "y", "z"]);
        let w = DivisorGerm::new(poly(&r, "x^2-y^2*z")).unwrap();
        let g = squares(&r);
        let seeds = [1, 2, 3, 4];
        let a = probe_seeds(&w, &g, &SampleConfig::default(), &seeds, Exec::Parallel).unwrap();
        let b = probe_seeds(&w, &g, &SampleConfig::default(), &seeds, Exec::Sequential).unwrap();
        let ga: Vec<_> = a.iter().map(|v| v.certificate.attempts.clone()).collect();
        let gb: Vec<_> = b.iter().map(|v| v.certificate.attempts.clone()).collect();
        assert_eq!(ga, gb);
    }

    #[test]
    fn generic_quadrics_have_isolated_critical_points() {
        let r = Ring::new(["x", "y", "z"]);
        let g = GammaSpace::all_of_degree(&r, 2).unwrap();
        let ok = (0..100u64)
            .filter(|&seed| {
                let gamma = sample_gamma(&g, &SampleConfig { seed, ..Default::default() });
                isolated_crit_check(&gamma).finite().is_some()
            })
            .count();
        assert!(ok >= 99, "{ok}");
    }

    #[test]
    fn loci() {
        let r = Ring::new(["x", "y", "z"]);
        let i = IdealData::new(&r, [poly(&r, "x^2")]);
        assert!(locus_compare(&i, &[poly(&r, "x")]).unwrap().holds);
        let i = IdealData::new(&r, [poly(&r, "x")]);
        assert!(!locus_compare(&i, &[poly(&r, "x"), poly(&r, "y")]).unwrap().holds);
        let e5 = IdealData::new(
            &r,
            ["2*x^2+2*y^2", "2*x^2*y^2-2*y^4+4*x*y*z-2*x^2*z^2-6*y^2*z^2+4*x*y*z^3", "2*y*z-2*x*z^2"].map(|s| poly(&r, s)),
        );
        assert!(locus_compare(&e5, &[poly(&r, "x"), poly(&r, "y")]).unwrap().holds);
    }
}
