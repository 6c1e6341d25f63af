//! One function per command; each maps a problem file to a report.

use std::fmt;

use serde_json::{json, Value};

use freediv::artin::{self, QuotientAlgebra};
use freediv::generic::{self, GammaSpace, SampleConfig};
use freediv::logder::{self, derlog, Derivation, DerivationModule, DivisorGerm, SaitoData};
use freediv::oracle;
use freediv::{Colength, Error, IdealData, LocusDim, Polynomial, TermOrder};

use crate::problem::ProblemFile;
use crate::report::{self, object, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Derlog,
    Free,
    TheoremA,
    TheoremB,
    Artin,
    Socle,
    Wiebe,
    HessianSocle,
    Locus,
    OracleCheck,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Derlog => "derlog",
            Command::Free => "free",
            Command::TheoremA => "theorem-a",
            Command::TheoremB => "theorem-b",
            Command::Artin => "artin",
            Command::Socle => "socle",
            Command::Wiebe => "wiebe",
            Command::HessianSocle => "hessian-socle",
            Command::Locus => "locus",
            Command::OracleCheck => "oracle-check",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub sample: SampleConfig,
    pub order: TermOrder,
    pub jet_cutoff: u32,
    pub jet_degree: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { sample: SampleConfig::default(), order: TermOrder::LocalNegDegRevLex, jet_cutoff: 8, jet_degree: 2 }
    }
}

/// Failures that are not verdicts.
#[derive(Debug)]
pub enum Failure {
    /// A hypothesis of the requested check does not hold (exit code 2).
    Precondition(String),
    /// Malformed or incomplete input (exit code 3).
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(p) => Failure::Precondition(p.to_string()),
            Error::InfiniteColength { .. } | Error::ColonByZero => Failure::Precondition(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(bool, Value, Vec<String>), Failure>;

fn colength_json(c: Colength) -> Value {
    match c {
        Colength::Finite(n) => json!(n),
        Colength::Infinite => json!("infinite"),
    }
}

fn dim_json(d: LocusDim) -> Value {
    match d {
        LocusDim::Dim(n) => json!(n),
        LocusDim::Empty => json!("empty"),
    }
}

fn germ(p: &ProblemFile) -> Result<DivisorGerm, Failure> {
    let f = p.f.clone().ok_or_else(|| Failure::Input("missing `f:` entry".into()))?;
    Ok(DivisorGerm::new(f)?)
}

fn gamma(p: &ProblemFile) -> Result<Polynomial, Failure> {
    p.gamma.clone().ok_or_else(|| Failure::Input("missing `gamma:` entry".into()))
}

/// The module of the `theta:` entry, or `Der(-log D)` when absent.
fn theta(p: &ProblemFile, g: &DivisorGerm) -> Result<DerivationModule, Failure> {
    match &p.theta {
        Some(rows) => {
            let ds = rows
                .iter()
                .map(|r| Derivation::new(&p.ring, r.clone()))
                .collect::<freediv::Result<Vec<_>>>()?;
            Ok(DerivationModule::new(g, ds, false)?)
        }
        None => Ok(derlog(g)),
    }
}

fn gamma_space(p: &ProblemFile, notes: &mut Vec<String>) -> Result<GammaSpace, Failure> {
    match &p.gamma_space {
        Some(basis) => Ok(GammaSpace::new(&p.ring, basis.clone())?),
        None => {
            notes.push("no gamma_space given; using the span of the squared variables".into());
            let basis = (0..p.ring.nvars()).map(|i| Polynomial::var(&p.ring, i).pow(2)).collect();
            Ok(GammaSpace::new(&p.ring, basis)?)
        }
    }
}

fn saito_json(s: &SaitoData) -> Value {
    object(vec![
        ("basis", report::derivs(&s.derivations)),
        ("det", report::poly(&s.det)),
        ("cofactor", s.cofactor.as_ref().map_or(Value::Null, report::poly)),
    ])
}

fn inputs(p: &ProblemFile) -> Value {
    let mut pairs = vec![("ring", json!(p.ring.vars()))];
    if let Some(f) = &p.f {
        pairs.push(("f", report::poly(f)));
    }
    if let Some(g) = &p.gamma {
        pairs.push(("gamma", report::poly(g)));
    }
    if let Some(gs) = &p.gamma_space {
        pairs.push(("gamma_space", report::polys(gs)));
    }
    if let Some(t) = &p.theta {
        pairs.push(("theta", Value::Array(t.iter().map(|r| report::polys(r)).collect())));
    }
    if let Some(l) = &p.locus {
        pairs.push(("locus", report::polys(l)));
    }
    object(pairs)
}

pub fn run(command: Command, opts: &Options, p: &ProblemFile) -> Result<Report, Failure> {
    let outcome = match command {
        Command::Derlog => cmd_derlog(p),
        Command::Free => cmd_free(p),
        Command::TheoremA => cmd_theorem_a(p, opts),
        Command::TheoremB => cmd_theorem_b(p),
        Command::Artin => cmd_artin(p, opts),
        Command::Socle => cmd_socle(p),
        Command::Wiebe => cmd_wiebe(p),
        Command::HessianSocle => cmd_hessian(p),
        Command::Locus => cmd_locus(p),
        Command::OracleCheck => cmd_oracle(p, opts),
    };
    let base = |verdict, certificate, diagnostics| Report {
        command: command.to_string(),
        inputs: inputs(p),
        verdict,
        certificate,
        diagnostics,
        seed: opts.sample.seed,
        timings_ms: None,
    };
    match outcome {
        Ok((holds, cert, notes)) => Ok(base(Some(holds), cert, notes)),
        Err(Failure::Precondition(msg)) => Ok(base(None, json!({ "precondition": msg }), vec![msg])),
        Err(e) => Err(e),
    }
}

fn cmd_derlog(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let red = logder::reducedness_check(&g);
    let m = derlog(&g);
    let (count, mins) = m.as_module().min_generators();
    let minimal: Vec<Derivation> =
        mins.gens().iter().map(|v| Derivation::new(g.ring(), v.clone()).expect("shape")).collect();
    let cert = object(vec![
        ("generators", report::derivs(m.derivations())),
        ("min_generators", json!(count)),
        ("minimal", report::derivs(&minimal)),
        ("reduced", json!(red.holds)),
        ("singular_dim", dim_json(red.certificate.singular_dim)),
    ]);
    Ok((true, cert, red.diagnostics))
}

fn cmd_free(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let v = logder::saito_free_check(&g, &derlog(&g))?;
    let mut pairs = vec![("min_generators", json!(v.certificate.min_generators))];
    if let Some(s) = &v.certificate.saito {
        pairs.push(("saito", saito_json(s)));
    }
    Ok((v.holds, object(pairs), v.diagnostics))
}

fn cmd_theorem_a(p: &ProblemFile, opts: &Options) -> Outcome {
    let g = germ(p)?;
    let mut notes = Vec::new();
    let space = gamma_space(p, &mut notes)?;
    let th = theta(p, &g)?;
    let v = generic::probe_with(&th, &space, &opts.sample)?;
    notes.extend(v.diagnostics.iter().cloned());
    let attempts: Vec<Value> = v
        .certificate
        .attempts
        .iter()
        .map(|a| {
            object(vec![
                ("gamma", report::poly(&a.gamma)),
                ("colength", colength_json(a.colength)),
                ("dim", dim_json(a.dim)),
            ])
        })
        .collect();
    let mut pairs = vec![
        ("attempts", Value::Array(attempts)),
        ("colength", v.certificate.colength().map_or(Value::Null, |c| json!(c))),
    ];
    if !v.holds {
        if let Some(cand) = &p.locus {
            let last = &v.certificate.attempts.last().expect("attempt").gamma;
            let ideal = th.apply(last)?;
            let lc = generic::locus_compare(&ideal, cand)?;
            notes.push(format!("V(Θ(γ)) equals V({}): {}", join(cand), lc.holds));
            pairs.push(("locus", object(vec![("candidate", report::polys(cand)), ("equal", json!(lc.holds))])));
        }
    }
    Ok((v.holds, object(pairs), notes))
}

fn join(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_theorem_b(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let gm = gamma(p)?;
    let th = theta(p, &g)?;
    let v = artin::theorem_b_check(&g, &th, &gm)?;
    let c = &v.certificate;
    let cert = object(vec![
        ("milnor", json!(c.milnor)),
        ("colength", json!(c.colength)),
        ("sequence", report::polys(&c.sequence)),
        ("preimages", report::derivs(&c.preimages)),
        ("saito", saito_json(&c.saito)),
        ("memberships", json!(c.memberships)),
        ("saito_free", json!(c.saito_verdict)),
    ]);
    Ok((v.holds, cert, v.diagnostics))
}

fn algebra(ideal: &IdealData) -> Result<QuotientAlgebra, Failure> {
    Ok(QuotientAlgebra::new(ideal)?)
}

fn cmd_artin(p: &ProblemFile, opts: &Options) -> Outcome {
    let g = germ(p)?;
    let gm = gamma(p)?;
    let ideal = theta(p, &g)?.apply(&gm)?;
    let alg = algebra(&ideal)?;
    let ci = artin::ci_check(&ideal)?;
    let mut fj = Vec::new();
    for d in gm.jacobian() {
        fj.push(ideal.contains(&(g.f() * &d), opts.order)?);
    }
    let basis: Vec<Polynomial> =
        alg.basis().iter().map(|m| Polynomial::monomial(&p.ring, m.clone(), freediv::poly::int(1))).collect();
    let cert = object(vec![
        ("theta_gamma", report::polys(ideal.gens())),
        ("colength", json!(alg.dim())),
        ("std_monomials", report::polys(&basis)),
        ("complete_intersection", json!(ci.holds)),
        ("min_generators", json!(ci.certificate.min_generators)),
        ("socle_dim", ci.certificate.socle_dim.map_or(Value::Null, |d| json!(d))),
        ("f_normal_form", report::poly(&alg.normal_form(g.f())?)),
        ("f_jacobian_in_theta", json!(fj)),
        ("order", json!(opts.order.to_string())),
    ]);
    Ok((ci.holds, cert, ci.diagnostics))
}

fn cmd_socle(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let gm = gamma(p)?;
    let ideal = theta(p, &g)?.apply(&gm)?;
    let alg = algebra(&ideal)?;
    let soc = alg.socle()?;
    let ann = alg.annihilator(&IdealData::new(&p.ring, gm.jacobian()))?;
    let f_in_soc = alg.contains(&soc, g.f())?;
    let f_in_ann = alg.contains(&ann, g.f())?;
    let cert = object(vec![
        ("socle", report::polys(&soc.representatives(&alg))),
        ("socle_dim", json!(soc.dim())),
        ("annihilator_jacobian", report::polys(&ann.representatives(&alg))),
        ("annihilator_equals_socle", json!(ann.equals(&soc))),
        ("f_normal_form", report::poly(&alg.normal_form(g.f())?)),
        ("f_in_socle", json!(f_in_soc)),
        ("f_in_annihilator", json!(f_in_ann)),
    ]);
    Ok((true, cert, vec![format!("dim A = {}, dim soc A = {}", alg.dim(), soc.dim())]))
}

fn ci_derivations(p: &ProblemFile, g: &DivisorGerm, gm: &Polynomial, notes: &mut Vec<String>) -> Result<Vec<Derivation>, Failure> {
    let th = theta(p, g)?;
    let n = g.nvars();
    match artin::ci_preimages(&th, gm)? {
        Some(ds) => {
            if th.len() != n {
                notes.push(format!("using {n} of {} derivations whose images form a regular sequence", th.len()));
            }
            Ok(ds)
        }
        None => Err(Failure::Precondition(format!(
            "no {n} derivations of Θ map γ to an m-primary complete intersection"
        ))),
    }
}

fn cmd_wiebe(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let gm = gamma(p)?;
    let mut notes = Vec::new();
    let ds = ci_derivations(p, &g, &gm, &mut notes)?;
    let fs = ds.iter().map(|d| d.apply(&gm)).collect::<freediv::Result<Vec<_>>>()?;
    let saito = SaitoData::new(&g, ds.clone())?;
    let v = artin::wiebe_check(&gm, &fs, &saito.matrix)?;
    notes.extend(v.diagnostics.iter().cloned());
    let c = &v.certificate;
    let cert = object(vec![
        ("derivations", report::derivs(&ds)),
        ("sequence", report::polys(&fs)),
        ("delta", report::poly(&c.delta)),
        ("colength", json!(c.colength)),
        ("delta_generates_ann_jacobian", json!(c.delta_generates_ann_jacobian)),
        ("jacobian_is_ann_delta", json!(c.jacobian_is_ann_delta)),
    ]);
    Ok((v.holds, cert, notes))
}

fn cmd_hessian(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let gm = gamma(p)?;
    if !gm.is_homogeneous() {
        return Err(Error::from(freediv::Precondition::NonHomogeneous).into());
    }
    let mut notes = Vec::new();
    let ds = ci_derivations(p, &g, &gm, &mut notes)?;
    let sub = DerivationModule::new(&g, ds.clone(), false)?;
    let alg = algebra(&sub.apply(&gm)?)?;
    let delta = SaitoData::new(&g, ds.clone())?.det;
    let v = artin::hessian_socle_check(&g, &gm, &alg, &delta)?;
    notes.extend(v.diagnostics.iter().cloned());
    let cert = object(vec![
        ("derivations", report::derivs(&ds)),
        ("delta", report::poly(&delta)),
        ("hessian", report::poly(&gm.hessian_det())),
        ("det_generates_f", json!(v.certificate.det_generates_f)),
        ("hessian_in_socle", json!(v.certificate.hessian_in_socle)),
    ]);
    Ok((v.holds, cert, notes))
}

fn cmd_locus(p: &ProblemFile) -> Outcome {
    let g = germ(p)?;
    let gm = gamma(p)?;
    let cand = p.locus.clone().ok_or_else(|| Failure::Input("missing `locus:` entry".into()))?;
    let ideal = theta(p, &g)?.apply(&gm)?;
    let v = generic::locus_compare(&ideal, &cand)?;
    let cert = object(vec![
        ("theta_gamma", report::polys(ideal.gens())),
        ("dim_at_origin", dim_json(ideal.dim_at_origin())),
        ("candidate_in_radical", json!(v.certificate.candidate_in_radical)),
        ("ideal_in_radical", json!(v.certificate.ideal_in_radical)),
    ]);
    Ok((v.holds, cert, v.diagnostics))
}

fn cmd_oracle(p: &ProblemFile, opts: &Options) -> Outcome {
    let g = germ(p)?;
    let dv = oracle::cross_check_derlog(&g, opts.jet_degree)?;
    let mut notes = dv.diagnostics.clone();
    let mut holds = dv.holds;
    let mut pairs = vec![(
        "derlog",
        object(vec![
            ("degree", json!(dv.certificate.degree)),
            ("jet_dim", json!(dv.certificate.jet_dim)),
            ("agree", json!(dv.holds)),
        ]),
    )];
    if let Some(gm) = &p.gamma {
        let th = theta(p, &g)?;
        for (name, ideal) in [("theta_gamma", th.apply(gm)?), ("jacobian", IdealData::new(&p.ring, gm.jacobian()))] {
            let cv = oracle::cross_check_colength(&ideal, opts.jet_cutoff);
            holds &= cv.holds;
            notes.push(format!("{name}: {}", cv.diagnostics.join("; ")));
            pairs.push((
                name,
                object(vec![
                    ("symbolic", colength_json(cv.certificate.symbolic)),
                    ("jet", cv.certificate.jet.finite().map_or(json!("not stabilized"), |c| json!(c))),
                    ("agree", json!(cv.holds)),
                ]),
            ));
        }
    }
    Ok((holds, object(pairs), notes))
}
