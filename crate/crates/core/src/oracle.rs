//! Brute-force linear algebra on truncated jets, used to check the standard
//! basis engine. Nothing here is clever; it exists to be obviously right.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::linalg::{self, Subspace};
use crate::logder::{derlog, Derivation, DivisorGerm};
use crate::par::{self, Exec};
use crate::poly::{int, Monomial, Polynomial, Scalar};
use crate::stdbasis::{Colength, IdealData};
use crate::verdict::Verdict;

/// A space of derivations with coefficients of degree at most `degree`,
/// stored as reduced row-echelon coefficient vectors. Coordinate
/// `i * monomials.len() + k` is the coefficient of `monomials[k] ∂_i`.
#[derive(Clone, Debug)]
pub struct JetBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub space: Subspace,
}

impl JetBasis {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn coords(&self, d: &Derivation) -> Option<Vec<Scalar>> {
        let m = self.monomials.len();
        let mut v = vec![Scalar::zero(); m * d.coeffs().len()];
        for (i, a) in d.coeffs().iter().enumerate() {
            for (mon, c) in a.terms() {
                let k = self.monomials.iter().position(|x| x == mon)?;
                v[i * m + k] = c.clone();
            }
        }
        Some(v)
    }

    /// Whether `d` has coefficient degree at most `degree` and lies in the
    /// space.
    pub fn contains(&self, d: &Derivation) -> bool {
        self.coords(d).is_some_and(|v| self.space.contains(&v))
    }

    pub fn derivations(&self, germ: &DivisorGerm) -> Vec<Derivation> {
        let ring = germ.ring();
        let n = germ.nvars();
        let m = self.monomials.len();
        self.space
            .basis()
            .iter()
            .map(|v| {
                let coeffs = (0..n)
                    .map(|i| {
                        Polynomial::from_terms(
                            ring,
                            self.monomials.iter().cloned().zip(v[i * m..(i + 1) * m].iter().cloned()),
                        )
                    })
                    .collect();
                Derivation::new(ring, coeffs).expect("shape")
            })
            .collect()
    }
}

/// Solves `sum a_i ∂_i f = c f` for `deg a_i <= d` and `deg c <= d - 1` as
/// one linear system; returns the `a`-part of the solution space.
pub fn jet_derlog(germ: &DivisorGerm, d: u32) -> JetBasis {
    let n = germ.nvars();
    let f = germ.f();
    let monomials = Monomial::all_up_to_degree(n, d);
    let m = monomials.len();
    let one = int(1);
    let partials = f.jacobian();
    // image polynomial of each unknown
    let mut images: Vec<Polynomial> = Vec::new();
    for p in &partials {
        for mon in &monomials {
            images.push(p.mul_term(mon, &one));
        }
    }
    let cofactor_monomials = if d == 0 { Vec::new() } else { Monomial::all_up_to_degree(n, d - 1) };
    for mon in &cofactor_monomials {
        images.push(f.mul_term(mon, &-one.clone()));
    }
    let ncols = images.len();
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (col, img) in images.iter().enumerate() {
        for (mon, c) in img.terms() {
            let r = *row_of.entry(mon.clone()).or_insert_with(|| {
                rows.push(vec![Scalar::zero(); ncols]);
                rows.len() - 1
            });
            rows[r][col] = c.clone();
        }
    }
    let kernel = linalg::nullspace(&rows, ncols);
    let projected = kernel.into_iter().map(|v| v[..n * m].to_vec());
    JetBasis { degree: d, monomials, space: Subspace::span(n * m, projected) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetColength {
    /// `m^k ⊆ I` was certified at degree `k`, and the colength is the count.
    Stabilized { colength: usize, degree: u32 },
    NotStabilized,
}

impl JetColength {
    pub fn finite(self) -> Option<usize> {
        match self {
            JetColength::Stabilized { colength, .. } => Some(colength),
            JetColength::NotStabilized => None,
        }
    }
}

impl fmt::Display for JetColength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetColength::Stabilized { colength, .. } => write!(f, "{colength}"),
            JetColength::NotStabilized => write!(f, "not stabilized"),
        }
    }
}

/// Span of the truncations to degree `<= k` of all `m g` with `deg m <= k`.
fn truncated_span(ideal: &IdealData, monomials: &[Monomial], index: &HashMap<Monomial, usize>, k: u32) -> Subspace {
    let n = ideal.ring().nvars();
    let one = int(1);
    let mut vectors = Vec::new();
    for g in ideal.gens() {
        for mon in Monomial::all_up_to_degree(n, k) {
            let p = g.mul_term(&mon, &one);
            let mut v = vec![Scalar::zero(); monomials.len()];
            let mut any = false;
            for (t, c) in p.terms() {
                if t.degree() <= k {
                    v[index[t]] = c.clone();
                    any = true;
                }
            }
            if any {
                vectors.push(v);
            }
        }
    }
    Subspace::span(monomials.len(), vectors)
}

/// Colength of `I` in the local ring from truncated jets: finds the least
/// `k <= cutoff` with every monomial of degree `k` in `I + m^(k+1)`; then
/// `m^k ⊆ I` by Nakayama and the colength is `dim R_{<k} / I_{<k}`.
pub fn jet_colength(ideal: &IdealData, cutoff: u32) -> JetColength {
    let n = ideal.ring().nvars();
    let monomials = Monomial::all_up_to_degree(n, cutoff);
    let index: HashMap<Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut below = Subspace::zero(monomials.len());
    let mut below_count = 0usize;
    for k in 0..=cutoff {
        let span = truncated_span(ideal, &monomials, &index, k);
        let top = Monomial::all_of_degree(n, k);
        let covered = top.iter().all(|m| {
            let mut v = vec![Scalar::zero(); monomials.len()];
            v[index[m]] = int(1);
            span.contains(&v)
        });
        if covered {
            return JetColength::Stabilized { colength: below_count - below.dim(), degree: k };
        }
        below = span;
        below_count += top.len();
    }
    JetColength::NotStabilized
}

#[derive(Clone, Debug)]
pub struct DerlogCross {
    pub degree: u32,
    pub jet_dim: usize,
    /// Jet basis elements outside the computed module.
    pub jet_not_in_module: usize,
    /// Computed generators of coefficient degree `<= degree`, and how many
    /// of them are outside the jet space.
    pub generators_checked: usize,
    pub generators_not_in_jets: usize,
}

/// Compares `Der(-log D)` from syzygies with the jet solution space at
/// coefficient degree `d`, in both directions.
pub fn cross_check_derlog(germ: &DivisorGerm, d: u32) -> Result<Verdict<DerlogCross>> {
    let module = derlog(germ);
    let jets = jet_derlog(germ, d);
    let mut jet_not_in_module = 0;
    for j in jets.derivations(germ) {
        if !module.contains_global(&j)? {
            jet_not_in_module += 1;
        }
    }
    let low: Vec<&Derivation> = module
        .derivations()
        .iter()
        .filter(|g| g.coeffs().iter().all(|a| a.degree().is_none_or(|e| e <= d)))
        .collect();
    let generators_not_in_jets = low.iter().filter(|g| !jets.contains(g)).count();
    let cert = DerlogCross {
        degree: d,
        jet_dim: jets.dim(),
        jet_not_in_module,
        generators_checked: low.len(),
        generators_not_in_jets,
    };
    let holds = jet_not_in_module == 0 && generators_not_in_jets == 0;
    let v = Verdict::new(holds, cert);
    Ok(v.note(format!("jet space of dimension {} at degree {d}", jets.dim())))
}

#[derive(Clone, Debug)]
pub struct ColengthCross {
    pub symbolic: Colength,
    pub jet: JetColength,
}

/// The standard-basis colength agrees with the jet count whenever the
/// latter stabilizes below `cutoff`.
pub fn cross_check_colength(ideal: &IdealData, cutoff: u32) -> Verdict<ColengthCross> {
    let symbolic = ideal.colength();
    let jet = jet_colength(ideal, cutoff);
    let holds = match jet {
        JetColength::Stabilized { colength, .. } => symbolic == Colength::Finite(colength),
        JetColength::NotStabilized => true,
    };
    let v = Verdict::new(holds, ColengthCross { symbolic, jet });
    v.note(format!("standard basis: {symbolic}, jets: {jet}"))
}

pub fn cross_check_colength_batch(ideals: &[IdealData], cutoff: u32, exec: Exec) -> Vec<Verdict<ColengthCross>> {
    par::map(exec, ideals, |i| cross_check_colength(i, cutoff))
}
