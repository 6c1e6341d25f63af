use proptest::prelude::*;

use super::*;
use crate::poly::int;

const G: TermOrder = TermOrder::GlobalDegRevLex;
const L: TermOrder = TermOrder::LocalNegDegRevLex;

fn ring3() -> Arc<Ring> {
    Ring::new(["x", "y", "z"])
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    Polynomial::parse(r, s).unwrap()
}

fn ideal(r: &Arc<Ring>, gens: &[&str]) -> IdealData {
    IdealData::new(r, gens.iter().map(|s| p(r, s)))
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn whitney_theta_gamma(r: &Arc<Ring>) -> IdealData {
    ideal(r, &["2*x^2+4*z^2", "2*x*y^2+4*x*z", "2*x*y*z+2*x*y", "2*y^2-4*z^2"])
}

#[test]
fn std_basis_examples() {
    let r = ring3();
    let i = ideal(&r, &["x", "y"]);
    assert_eq!(i.standard_basis(G), &[p(&r, "x"), p(&r, "y")]);

    let r1 = Ring::new(["x"]);
    let i = ideal(&r1, &["x + x^2", "x"]);
    assert_eq!(i.leading_monomials(L), vec![mono(&[1])]);

    let i = ideal(&r, &["2*x*y*(1+z)", "x^2+2*z^2", "y^2-2*z^2", "2*x*z+x*y^2"]);
    let lead = i.leading_monomials(L);
    assert!(lead.iter().any(|m| m.divides(&mono(&[1, 1, 0]))));
    assert!(i.contains(&p(&r, "x*y"), L).unwrap());
}

#[test]
fn zero_and_unit_edge_cases() {
    let r = ring3();
    let zero = IdealData::new(&r, [Polynomial::zero(&r)]);
    assert!(zero.standard_basis(L).is_empty());
    assert_eq!(zero.colength(), Colength::Infinite);
    assert_eq!(zero.dim_at_origin(), LocusDim::Dim(3));

    let unit = ideal(&r, &["1 + x*y", "z + x*y*z"]);
    assert_eq!(unit.standard_basis(L), &[Polynomial::one(&r)]);
    assert_eq!(unit.colength(), Colength::Finite(0));
    assert_eq!(unit.dim_at_origin(), LocusDim::Empty);
    // not a unit globally
    assert!(!unit.contains(&Polynomial::one(&r), G).unwrap());
}

#[test]
fn normal_form_examples() {
    let r = ring3();
    assert!(ideal(&r, &["x"]).normal_form(&p(&r, "x^2"), G).unwrap().is_zero());
    assert!(ideal(&r, &["x"]).normal_form(&p(&r, "x^2"), L).unwrap().is_zero());
    let m = IdealData::maximal(&r);
    assert_eq!(m.normal_form(&p(&r, "1"), L).unwrap(), p(&r, "1"));
    assert_eq!(m.normal_form(&p(&r, "1"), G).unwrap(), p(&r, "1"));

    let tg = whitney_theta_gamma(&r);
    let f = p(&r, "x^2 - y^2*z");
    assert!(!tg.normal_form(&f, L).unwrap().is_zero());
    assert!(tg.normal_form(&(&f + &p(&r, "2*z^2")), L).unwrap().is_zero());
}

#[test]
fn membership_examples() {
    let r = ring3();
    assert!(!ideal(&r, &["x^2", "y"]).contains(&p(&r, "x"), G).unwrap());
    let tg = whitney_theta_gamma(&r);
    let f = p(&r, "x^2 - y^2*z");
    for g in ["2*x", "2*y", "2*z"] {
        assert!(tg.contains(&(&f * &p(&r, g)), L).unwrap());
    }
    let fifth = p(&r, "x*y*(x+y)*(x-y)*(y-x*z)");
    let delta = p(&r, "x*(x^2*y-y^3)*(y-x*z)");
    assert!(IdealData::new(&r, [fifth]).contains(&delta, G).unwrap());
}

#[test]
fn equality_examples() {
    let r = ring3();
    let a = ideal(&r, &["2*x*y*(1+z)"]);
    let b = ideal(&r, &["x*y"]);
    assert!(a.equals(&b, L).unwrap());
    assert!(!a.equals(&b, G).unwrap());
    let c = ideal(&r, &["x^2+y^2", "x^3-y^3"]);
    assert!(c.equals(&c.clone(), L).unwrap());
    assert!(c.equals(&c.clone(), G).unwrap());
}

#[test]
fn quotient_examples() {
    let r = Ring::new(["x", "y"]);
    let i = ideal(&r, &["x^2", "y^2"]);
    let q = i.quotient(&ideal(&r, &["x"])).unwrap();
    assert!(q.equals(&ideal(&r, &["x", "y^2"]), G).unwrap());

    // Brute-force oracle over monomials of degree <= 5: m ∈ (I : x) iff x*m
    // is divisible by x^2 or y^2 (I is monomial), compared with membership in
    // the computed colon ideal.
    for m in Monomial::all_up_to_degree(2, 5) {
        let xm = m.mul(&mono(&[1, 0]));
        let expected = mono(&[2, 0]).divides(&xm) || mono(&[0, 2]).divides(&xm);
        let mp = Polynomial::monomial(&r, m, int(1));
        assert_eq!(q.contains(&mp, G).unwrap(), expected);
    }

    let x = ideal(&r, &["x"]);
    assert!(x.quotient(&IdealData::unit(&r)).unwrap().equals(&x, G).unwrap());
    assert!(matches!(x.quotient(&IdealData::new(&r, [])), Err(Error::ColonByZero)));

    let r3 = ring3();
    let tg = whitney_theta_gamma(&r3);
    let jac = ideal(&r3, &["2*x", "2*y", "2*z"]);
    let colon = tg.quotient(&jac).unwrap();
    assert!(colon.contains(&p(&r3, "x^2 - y^2*z"), L).unwrap());
}

#[test]
fn intersection_matches_syzygy_route() {
    // I ∩ J = {-c : (c, a, b) syzygy of (1,1), (f_i,0), (0,g_j)}
    let r = Ring::new(["x", "y"]);
    let i = ideal(&r, &["x^2", "x*y"]);
    let j = ideal(&r, &["y^3", "x - y"]);
    let via_elim = i.intersect(&j).unwrap();
    let mut cols = vec![vec![p(&r, "1"), p(&r, "1")]];
    cols.extend(i.gens().iter().map(|f| vec![f.clone(), Polynomial::zero(&r)]));
    cols.extend(j.gens().iter().map(|g| vec![Polynomial::zero(&r), g.clone()]));
    let m = ModuleData::new(&r, 2, cols).unwrap();
    let via_syz = IdealData::new(&r, m.syzygies().gens().iter().map(|s| s[0].clone()));
    assert!(via_elim.equals(&via_syz, G).unwrap());
}

#[test]
fn syzygy_examples() {
    let r = Ring::new(["x", "y"]);
    let col = |xs: &[&str]| {
        ModuleData::new(&r, 1, xs.iter().map(|s| vec![p(&r, s)]).collect()).unwrap()
    };
    let syz = col(&["x", "y"]).syzygies();
    let koszul = ModuleData::new(&r, 2, vec![vec![p(&r, "y"), p(&r, "-x")]]).unwrap();
    assert!(syz.equals_local(&koszul).unwrap());
    assert!(koszul.contains_global(&syz.gens()[0]).unwrap());

    let syz = col(&["x", "x"]).syzygies();
    assert!(syz.contains_global(&[p(&r, "1"), p(&r, "-1")]).unwrap());
}

#[test]
fn min_generator_examples() {
    let r = ring3();
    let free = ModuleData::free(&r, 3);
    assert_eq!(free.min_generators().0, 3);
    // (1+x)*e1 is redundant next to e1 locally but not globally.
    let m = ModuleData::new(
        &r,
        2,
        vec![
            vec![p(&r, "1+x"), p(&r, "0")],
            vec![p(&r, "1"), p(&r, "0")],
            vec![p(&r, "y"), p(&r, "x")],
            vec![p(&r, "0"), p(&r, "x^2")],
        ],
    )
    .unwrap();
    let (count, gens) = m.min_generators();
    assert_eq!(count, 2);
    assert!(gens.equals_local(&m).unwrap());
    let tg = whitney_theta_gamma(&r);
    assert_eq!(tg.min_generators().0, 4);
    assert_eq!(ideal(&r, &["x^2", "x^2 + x^3", "y"]).min_generators().0, 2);
}

#[test]
fn dimension_and_colength_examples() {
    let r = ring3();
    assert_eq!(ideal(&r, &["x", "y"]).dim_at_origin(), LocusDim::Dim(1));
    assert_eq!(IdealData::maximal(&r).dim_at_origin(), LocusDim::Dim(0));
    let r2 = Ring::new(["x", "y"]);
    let sq = ideal(&r2, &["x^2", "y^2"]);
    assert_eq!(sq.colength(), Colength::Finite(4));
    assert_eq!(
        sq.std_monomials().unwrap(),
        vec![mono(&[0, 0]), mono(&[0, 1]), mono(&[1, 0]), mono(&[1, 1])]
    );
    assert_eq!(ideal(&r2, &["x^2+y^2", "x^3-y^3"]).colength(), Colength::Finite(6));
    assert_eq!(IdealData::maximal(&r).std_monomials().unwrap(), vec![Monomial::one(3)]);
    let tg = whitney_theta_gamma(&r);
    let sm = tg.std_monomials().unwrap();
    assert_eq!(sm.len(), 6);
    assert!(sm.contains(&mono(&[0, 1, 1])) && sm.contains(&mono(&[0, 0, 2])));
    assert!(matches!(ideal(&r, &["x", "y"]).std_monomials(), Err(Error::InfiniteColength { dim: 1 })));
    // a component away from the origin does not count locally
    assert_eq!(ideal(&r2, &["x*(1-x)", "y"]).colength(), Colength::Finite(1));
    assert_eq!(ideal(&r2, &["x*(1-x)", "y"]).dim_global(), LocusDim::Dim(0));
}

#[test]
fn radical_examples() {
    let r = ring3();
    assert!(ideal(&r, &["x^2"]).radical_contains(&p(&r, "x")).unwrap());
    assert!(!ideal(&r, &["x", "y"]).radical_contains(&p(&r, "z")).unwrap());
    assert!(ideal(&r, &["x^3 - y^2", "y^3"]).radical_contains(&p(&r, "x")).unwrap());
    assert!(ideal(&r, &["x^2"]).radical_contains_local(&p(&r, "x")).unwrap());
    assert!(!ideal(&r, &["x", "y"]).radical_contains_local(&p(&r, "z")).unwrap());
    // the germ at 0 of V(x(x-1)) is V(x); globally it also contains x = 1
    let two = ideal(&r, &["x*(x-1)"]);
    assert!(two.radical_contains_local(&p(&r, "x")).unwrap());
    assert!(!two.radical_contains(&p(&r, "x")).unwrap());
    let theta = ideal(
        &r,
        &["2*x^2+2*y^2", "2*x^2*y^2-2*y^4+4*x*y*z-2*x^2*z^2-6*y^2*z^2+4*x*y*z^3", "2*y*z-2*x*z^2"],
    );
    for v in ["x", "y"] {
        assert!(radical_membership(&p(&r, v), &theta, TermOrder::LocalNegDegRevLex).unwrap());
    }
    assert!(!radical_membership(&p(&r, "z"), &theta, TermOrder::LocalNegDegRevLex).unwrap());
}

fn buchberger_complete(basis: &[Polynomial]) -> bool {
    use engine::{reduce_full, spoly, MonOrder, Vector};
    let o = MonOrder::DegRevLex;
    let vs: Vec<Vector> = basis.iter().map(|b| Vector::from_polys(o, std::slice::from_ref(b))).collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if !reduce_full(o, spoly(o, &vs[i], &vs[j]), &vs).is_zero() {
                return false;
            }
        }
    }
    true
}

fn arb_poly(r: Arc<Ring>, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = r.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -3i64..=3), 1..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                &r,
                terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| (Monomial::new(e), int(c))),
            )
        },
    )
}

fn arb_ideal(n: usize) -> impl Strategy<Value = IdealData> {
    let r = Ring::new(["x", "y", "z"].iter().take(n));
    prop::collection::vec(arb_poly(r.clone(), 3, 3), 1..=3).prop_map(move |gens| IdealData::new(&r, gens))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_bases_are_complete(i in arb_ideal(3)) {
        let gb = i.standard_basis(G).to_vec();
        prop_assert!(buchberger_complete(&gb));
        for g in i.gens() {
            prop_assert!(i.contains(g, G).unwrap());
        }
    }

    #[test]
    fn local_membership_agrees_with_colon_route(i in arb_ideal(2), q in arb_poly(Ring::new(["x", "y"]), 3, 3)) {
        prop_assume!(!i.is_zero());
        let q = Polynomial::from_terms(i.ring(), q.terms().iter().cloned());
        for g in i.gens() {
            prop_assert!(i.contains(g, L).unwrap());
        }
        let m = ModuleData::new(i.ring(), 1, i.gens().iter().map(|g| vec![g.clone()]).collect()).unwrap();
        prop_assert_eq!(i.contains(&q, L).unwrap(), m.contains_local(std::slice::from_ref(&q)).unwrap());
        let prod = &q * &i.gens()[0];
        prop_assert!(i.contains(&prod, L).unwrap());
    }

    #[test]
    fn quotient_inclusions(i in arb_ideal(2), j in arb_ideal(2)) {
        let j = IdealData::new(i.ring(), j.gens().iter().map(|g| Polynomial::from_terms(i.ring(), g.terms().iter().cloned())));
        prop_assume!(!j.is_zero());
        let q = i.quotient(&j).unwrap();
        prop_assert!(q.contains_ideal(&i, G).unwrap());
        prop_assert!(i.contains_ideal(&q.product(&j).unwrap(), G).unwrap());
    }

    #[test]
    fn syzygies_are_relations(i in arb_ideal(3)) {
        let m = ModuleData::new(i.ring(), 1, i.gens().iter().map(|g| vec![g.clone()]).collect()).unwrap();
        for s in m.syzygies().gens() {
            let mut acc = Polynomial::zero(i.ring());
            for (a, g) in s.iter().zip(i.gens()) {
                acc = &acc + &(a * g);
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn dim_zero_iff_finite_colength(i in arb_ideal(3)) {
        let finite = i.colength().finite().is_some();
        let dim0 = matches!(i.dim_at_origin(), LocusDim::Dim(0) | LocusDim::Empty);
        prop_assert_eq!(finite, dim0);
    }

    #[test]
    fn linear_min_generators_agree_with_syzygies(i in arb_ideal(2)) {
        let mut gens = i.gens().to_vec();
        gens.push(p(i.ring(), "x^4 + y^5"));
        gens.push(p(i.ring(), "y^4"));
        let i = IdealData::new(i.ring(), gens);
        prop_assert!(i.colength().finite().is_some());
        let (count, minimal) = i.min_generators();
        let m = ModuleData::new(i.ring(), 1, i.gens().iter().map(|g| vec![g.clone()]).collect()).unwrap();
        prop_assert_eq!(count, m.min_generators().0);
        prop_assert!(IdealData::new(i.ring(), minimal).equals(&i, L).unwrap());
    }
}
