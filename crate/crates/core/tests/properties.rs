//! Randomized invariants on whole elements rather than basis monomials.

use std::sync::OnceLock;

use proptest::prelude::*;
use qphase::calculus::Calculus;
use qphase::hopf::{Bundle, Comodule};
use qphase::report::random_element;
use qphase::symplectic::Symplectic;
use qphase::{Element, Monomial, Presentation, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct World {
    bundle: Bundle,
    symplectic: Symplectic,
}

fn world() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let bundle = Bundle::build().unwrap();
        let symplectic = Symplectic::build(&bundle.spaces).unwrap();
        World { bundle, symplectic }
    })
}

fn sample(p: &Presentation, seed: u64, terms: usize) -> Element {
    let basis: Vec<Monomial> = p.basis(None).unwrap();
    random_element(&basis, &mut ChaCha8Rng::seed_from_u64(seed), terms)
}

fn calc() -> &'static Calculus {
    &world().symplectic.calculus
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_are_associative_in_phase_space_forms(s in any::<u64>()) {
        let p = &world().bundle.spaces.omega_q;
        let (a, b, c) = (sample(p, s, 3), sample(p, s ^ 1, 3), sample(p, s ^ 2, 3));
        prop_assert_eq!(p.mul(&p.mul(&a, &b), &c), p.mul(&a, &p.mul(&b, &c)));
    }

    #[test]
    fn differential_is_a_graded_derivation(s in any::<u64>()) {
        let c = calc();
        let u = c.omega.component(&sample(&c.omega, s, 4), 1);
        let v = sample(&c.omega, s ^ 7, 4);
        let lhs = c.differential(&c.omega.mul(&u, &v));
        let rhs = c.omega.mul(&c.differential(&u), &v) - c.omega.mul(&u, &c.differential(&v));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(c.differential(&c.differential(&v)).is_zero());
    }

    #[test]
    fn partials_reassemble_the_differential(s in any::<u64>()) {
        let c = calc();
        let f = sample(&c.q, s, 5);
        let form = qphase::calculus::OneForm { coeffs: c.gradient(&f) };
        prop_assert_eq!(c.assemble(&form), c.differential(&c.lift(&f)));
    }

    #[test]
    fn three_bracket_formulas_agree(s in any::<u64>()) {
        let sy = &world().symplectic;
        let q = &sy.calculus.q;
        let (f, g) = (sample(q, s, 3), sample(q, s ^ 3, 3));
        let [w, p, x] = sy.poisson_forms(&f, &g);
        prop_assert_eq!(&w, &p);
        prop_assert_eq!(&p, &x);
    }

    #[test]
    fn bracket_is_bilinear(s in any::<u64>(), a in -3i64..4, b in -3i64..4) {
        let sy = &world().symplectic;
        let q = &sy.calculus.q;
        let (f, g, h) = (sample(q, s, 3), sample(q, s ^ 5, 3), sample(q, s ^ 9, 3));
        let c = Scalar::from_ints(a, b);
        let lhs = sy.poisson(&(f.scale(&c) + g.clone()), &h);
        let rhs = sy.poisson(&f, &h).scale(&c) + sy.poisson(&g, &h);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coaction_is_multiplicative_on_phase_space(s in any::<u64>()) {
        let b = &world().bundle;
        let q = &b.spaces.q;
        let (u, v) = (sample(q, s, 3), sample(q, s ^ 11, 3));
        let lhs = b.coact(Comodule::Q, &q.mul(&u, &v));
        let rhs = b.coact(Comodule::Q, &u).mul(&b.coact(Comodule::Q, &v), b.f(), q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_makes_the_plane_a_module_algebra(s in any::<u64>()) {
        let b = &world().bundle;
        let (f, m) = (b.f().clone(), b.m().clone());
        let h = sample(&f, s, 2);
        let (u, v) = (sample(&m, s ^ 13, 3), sample(&m, s ^ 17, 3));
        let lhs = b.act(Comodule::M, &h, &m.mul(&u, &v));
        let mut rhs = Element::zero();
        for ((h1, h2), c) in b.hopf.coproduct(&h).terms() {
            let left = b.act(Comodule::M, &Element::monomial(*h1), &u);
            let right = b.act(Comodule::M, &Element::monomial(*h2), &v);
            rhs.add_scaled(c, &m.mul(&left, &right));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_inverts_the_identity_under_convolution(s in any::<u64>()) {
        let b = &world().bundle;
        let f = b.f().clone();
        let h = sample(&f, s, 3);
        let mut conv = Element::zero();
        for ((h1, h2), c) in b.hopf.coproduct(&h).terms() {
            conv.add_scaled(c, &f.mul(&b.hopf.antipode_mono(h1), &Element::monomial(*h2)));
        }
        prop_assert_eq!(conv, Element::constant(b.hopf.counit(&h)));
    }

    #[test]
    fn printing_round_trips(s in any::<u64>()) {
        let q = &world().bundle.spaces.q;
        let e = sample(q, s, 4);
        let printed = qphase::cli::print::element(q, &e);
        prop_assert_eq!(qphase::cli::parse_in(q, &printed).unwrap(), e);
    }
}
