//! The concrete algebras.
//!
//! | name     | generators (canonical order)              | dim  |
//! |----------|-------------------------------------------|------|
//! | `M`      | x y                                       | 9    |
//! | `Q`      | x y px py                                 | 81   |
//! | `OmegaM` | dx dy x y                                 | 36   |
//! | `OmegaQ` | dx dy dpx dpy x y px py                   | 1296 |
//! | `F`      | a b c (d eliminated)                      | 27   |
//! | `MF`     | x y a b c (d eliminated)                  | 243  |
//!
//! Differentials precede functions so that every 1-form is written with its
//! `dz` on the left. Relations are entered as printed and oriented by the
//! builder.

use std::sync::Arc;

use crate::field::Scalar;
use crate::ncpoly::{
    check_associativity, check_local_confluence, AssocMode, Element, Monomial, NcError, Presentation,
    PresentationBuilder, TensorElement,
};
use crate::report::SuiteReport;

pub const PRESENTATION_NAMES: [&str; 6] = ["M", "Q", "OmegaM", "OmegaQ", "F", "MF"];

fn q(n: i64) -> Scalar {
    Scalar::q_pow(n)
}

fn c(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `q^2 - 1`
fn q2m1() -> Scalar {
    q(2) - c(1)
}

/// Plane relations `xy = q yx` and cubic caps on the two given names.
fn plane_relations(b: &mut PresentationBuilder, x: &str, y: &str) {
    b.relation(&[(c(1), &format!("{x} {y}"))], &[(q(1), &format!("{y} {x}"))]);
    b.cap(x, 3, Element::one()).cap(y, 3, Element::one());
}

fn phase_space_relations(b: &mut PresentationBuilder) {
    plane_relations(b, "x", "y");
    b.relation(&[(c(1), "px x")], &[(q(2), "x px")]);
    b.relation(&[(c(1), "px y")], &[(q(1), "y px"), (q2m1(), "x py")]);
    b.relation(&[(c(1), "py x")], &[(q(1), "x py")]);
    b.relation(&[(c(1), "py y")], &[(q(2), "y py")]);
    b.relation(&[(c(1), "px py")], &[(q(1), "py px")]);
    b.cap("px", 3, Element::one()).cap("py", 3, Element::one());
}

/// Relations of the differential algebra of the plane on `(x, y, dx, dy)`.
fn plane_form_relations(b: &mut PresentationBuilder, x: &str, y: &str, dx: &str, dy: &str) {
    let w = |a: &str, b: &str| format!("{a} {b}");
    b.relation(&[(c(1), &w(x, dx))], &[(q(2), &w(dx, x))]);
    b.relation(&[(c(1), &w(x, dy))], &[(q(1), &w(dy, x)), (q2m1(), &w(dx, y))]);
    b.relation(&[(c(1), &w(y, dx))], &[(q(1), &w(dx, y))]);
    b.relation(&[(c(1), &w(y, dy))], &[(q(2), &w(dy, y))]);
    b.relation(&[(c(1), &w(dx, dy))], &[(-q(2), &w(dy, dx))]);
    b.cap(dx, 2, Element::zero()).cap(dy, 2, Element::zero());
}

pub fn build_m() -> Result<Presentation, NcError> {
    let mut b = PresentationBuilder::new("M");
    b.generator("x", 0).generator("y", 0);
    plane_relations(&mut b, "x", "y");
    b.build()
}

pub fn build_q() -> Result<Presentation, NcError> {
    let mut b = PresentationBuilder::new("Q");
    b.generator("x", 0).generator("y", 0).generator("px", 0).generator("py", 0);
    phase_space_relations(&mut b);
    b.build()
}

pub fn build_omega_m() -> Result<Presentation, NcError> {
    let mut b = PresentationBuilder::new("OmegaM");
    b.generator("dx", 1).generator("dy", 1).generator("x", 0).generator("y", 0);
    plane_relations(&mut b, "x", "y");
    plane_form_relations(&mut b, "x", "y", "dx", "dy");
    b.build()
}

pub fn build_omega_q() -> Result<Presentation, NcError> {
    let mut b = PresentationBuilder::new("OmegaQ");
    for d in ["dx", "dy", "dpx", "dpy"] {
        b.generator(d, 1);
    }
    for f in ["x", "y", "px", "py"] {
        b.generator(f, 0);
    }
    phase_space_relations(&mut b);

    // grade 1
    b.relation(&[(c(1), "x dx")], &[(q(2), "dx x")]);
    b.relation(&[(c(1), "y dx")], &[(q(1), "dx y")]);
    b.relation(&[(c(1), "x dy")], &[(q(1), "dy x"), (q2m1(), "dx y")]);
    b.relation(&[(c(1), "y dy")], &[(q(2), "dy y")]);
    b.relation(&[(c(1), "dpx x")], &[(q(2), "x dpx")]);
    b.relation(&[(c(1), "dpx y")], &[(q(1), "y dpx"), (q2m1(), "x dpy")]);
    b.relation(&[(c(1), "dpy x")], &[(q(1), "x dpy")]);
    b.relation(&[(c(1), "dpy y")], &[(q(2), "y dpy")]);
    b.relation(&[(c(1), "px dpx")], &[(q(2), "dpx px")]);
    b.relation(&[(c(1), "py dpx")], &[(q(1), "dpx py")]);
    b.relation(&[(c(1), "px dpy")], &[(q(1), "dpy px"), (q2m1(), "dpx py")]);
    b.relation(&[(c(1), "py dpy")], &[(q(2), "dpy py")]);
    b.relation(&[(c(1), "dx px")], &[(q(1), "px dx")]);
    b.relation(&[(c(1), "dx py")], &[(q(2), "py dx")]);
    b.relation(&[(c(1), "dy px")], &[(q(2), "px dy"), (q(1) - c(1), "py dx")]);
    b.relation(&[(c(1), "dy py")], &[(q(1), "py dy")]);

    // grade 2
    b.cap("dx", 2, Element::zero()).cap("dy", 2, Element::zero());
    b.cap("dpx", 2, Element::zero()).cap("dpy", 2, Element::zero());
    b.relation(&[(c(1), "dx dy")], &[(-q(2), "dy dx")]);
    b.relation(&[(c(1), "dpx dpy")], &[(-q(2), "dpy dpx")]);
    b.relation(&[(c(1), "dpx dx")], &[(-q(2), "dx dpx")]);
    b.relation(&[(c(1), "dpx dy")], &[(-q(1), "dy dpx"), (c(1) - q(2), "dx dpy")]);
    b.relation(&[(c(1), "dpy dx")], &[(-q(1), "dx dpy")]);
    b.relation(&[(c(1), "dpy dy")], &[(-q(2), "dy dpy")]);
    b.build()
}

/// `d = a^2 (1 + q bc)` in the `a, b, c` normal form; from `ad - q bc = 1`
/// and `a^{-1} = a^2`.
pub fn determinant_solution_for_d() -> Element {
    let a2 = Monomial::from_exps(&[2]);
    let a2bc = Monomial::from_exps(&[2, 1, 1]);
    Element::from_terms([(a2, Scalar::one()), (a2bc, q(1))])
}

/// The finite quantum group: quotient of the `SL_q(2)` function algebra by
/// `a^3 = d^3 = 1`, `b^3 = c^3 = 0`. Relations `ab = q ba`, `ac = q ca`,
/// `bc = cb`, and `d` is solved from the quantum determinant `ad - q bc = 1`.
pub fn build_f() -> Result<Presentation, NcError> {
    let mut b = PresentationBuilder::new("F");
    b.generator("a", 0).generator("b", 0).generator("c", 0).generator("d", 0);
    b.relation(&[(c(1), "a b")], &[(q(1), "b a")]);
    b.relation(&[(c(1), "a c")], &[(q(1), "c a")]);
    b.relation(&[(c(1), "b c")], &[(c(1), "c b")]);
    b.cap("a", 3, Element::one()).cap("b", 3, Element::zero()).cap("c", 3, Element::zero());
    b.eliminate("d", determinant_solution_for_d());
    b.build()
}

/// Offset of the `F` generators inside `MF`.
pub const MF_F_OFFSET: usize = 2;

/// Embed an `M` monomial into `MF`.
pub fn m_into_mf(m: &Monomial) -> Monomial {
    m.shifted(0, 0, 2)
}

/// Embed an `F` monomial into `MF`.
pub fn f_into_mf(f: &Monomial) -> Monomial {
    f.shifted(0, MF_F_OFFSET, 4)
}

/// Split an `MF` monomial into its `M` and `F` parts.
pub fn split_mf(m: &Monomial) -> (Monomial, Monomial) {
    (m.restrict(0..2), m.shifted(MF_F_OFFSET, 0, 4))
}

/// Smash product `M # F` with cross rules `(1#h)(m#1) = (h1 ▷ m) # h2`
/// computed from the coproduct of each `F` generator and the action of `F`
/// monomials on `M` generators.
pub fn build_smash_mf(
    f: &Presentation,
    coproduct: impl Fn(usize) -> TensorElement,
    act_on_gen: impl Fn(&Monomial, usize) -> Element,
) -> Result<Presentation, NcError> {
    let mut b = PresentationBuilder::new("MF");
    b.generator("x", 0).generator("y", 0);
    b.generator("a", 0).generator("b", 0).generator("c", 0).generator("d", 0);
    plane_relations(&mut b, "x", "y");
    for ((hi, lo), rhs) in f.rules() {
        let name_hi = f.generator_name(*hi);
        let name_lo = f.generator_name(*lo);
        b.rule(name_hi, name_lo, rhs.map_monomials(f_into_mf));
    }
    b.cap("a", 3, Element::one()).cap("b", 3, Element::zero()).cap("c", 3, Element::zero());
    b.eliminate("d", determinant_solution_for_d().map_monomials(f_into_mf));
    for h in 0..3 {
        let delta = coproduct(h);
        for m in 0..2 {
            let mut rhs = Element::zero();
            for ((h1, h2), coef) in delta.terms() {
                let acted = act_on_gen(h1, m);
                for (am, ac) in acted.terms() {
                    let joined = m_into_mf(am).concat(&f_into_mf(h2)).expect("M before F");
                    rhs.add_term(joined, coef * ac);
                }
            }
            b.rule(f.generator_name(h), ["x", "y"][m], rhs);
        }
    }
    b.build()
}

/// All shipped presentations, built once and shared.
#[derive(Debug, Clone)]
pub struct SpaceCatalog {
    pub m: Arc<Presentation>,
    pub q: Arc<Presentation>,
    pub omega_m: Arc<Presentation>,
    pub omega_q: Arc<Presentation>,
    pub f: Arc<Presentation>,
    pub mf: Arc<Presentation>,
}

impl SpaceCatalog {
    pub fn build() -> Result<Self, NcError> {
        let f = Arc::new(build_f()?);
        let m = build_m()?;
        let mf = {
            let hopf = crate::hopf::HopfData::new(f.clone(), crate::hopf::RFormLegOrder::Standard);
            let table = crate::hopf::ActionTable::standard();
            build_smash_mf(&f, |g| hopf.generator_coproduct(g), |fm, mg| table.act_mono_on_gen(fm, mg))?
        };
        Ok(SpaceCatalog {
            m: Arc::new(m),
            q: Arc::new(build_q()?),
            omega_m: Arc::new(build_omega_m()?),
            omega_q: Arc::new(build_omega_q()?),
            f,
            mf: Arc::new(mf),
        })
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Presentation>> {
        match name {
            "M" => Some(&self.m),
            "Q" => Some(&self.q),
            "OmegaM" => Some(&self.omega_m),
            "OmegaQ" => Some(&self.omega_q),
            "F" => Some(&self.f),
            "MF" => Some(&self.mf),
            _ => None,
        }
    }

    pub fn all(&self) -> [&Arc<Presentation>; 6] {
        [&self.m, &self.q, &self.omega_m, &self.omega_q, &self.f, &self.mf]
    }
}

/// `Q` generators inside `OmegaQ` start after the four differentials.
pub const OMEGA_Q_FN_OFFSET: usize = 4;

pub fn q_into_omega(m: &Monomial) -> Monomial {
    m.shifted(0, OMEGA_Q_FN_OFFSET, 4)
}

/// Grade-0 `OmegaQ` monomial back to `Q`.
pub fn omega_to_q(m: &Monomial) -> Monomial {
    m.shifted(OMEGA_Q_FN_OFFSET, 0, 4)
}

/// `M` embedded in `Q` as the base (`x`, `y`) or as the fibre (`px`, `py`).
pub fn m_into_q_base(m: &Monomial) -> Monomial {
    m.shifted(0, 0, 2)
}

pub fn m_into_q_fibre(m: &Monomial) -> Monomial {
    m.shifted(0, 2, 2)
}

/// Split a `Q` monomial `a□w` into base and fibre parts (as `M` monomials).
pub fn split_q(m: &Monomial) -> (Monomial, Monomial) {
    (m.restrict(0..2), m.shifted(2, 0, 2))
}

/// Dimensions, Poincaré series and rewrite-system soundness for every
/// shipped presentation. Local confluence is always checked on every
/// overlap. `exhaustive` checks associativity on every basis triple of `M`
/// and `Q` and on every (basis, generator, generator) triple elsewhere;
/// otherwise the algebras above 300 dimensions get seeded random triples.
pub fn spaces_report(spaces: &SpaceCatalog, exhaustive: bool, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("spaces").with_seed(seed);
    let expected = [("M", 9), ("Q", 81), ("OmegaM", 36), ("OmegaQ", 1296), ("F", 27), ("MF", 243)];
    for (name, dim) in expected {
        let p = spaces.get(name).expect("shipped presentation");
        let got = p.dim();
        r.assert(&format!("dim {name} = {dim}"), got == Ok(dim), || format!("{got:?}"));
    }
    let series = spaces.omega_q.graded_dims();
    r.assert("graded dims of OmegaQ are 81 324 486 324 81", series == Ok(vec![81, 324, 486, 324, 81]), || {
        format!("{series:?}")
    });
    let plane = spaces.omega_m.graded_dims();
    r.assert("graded dims of OmegaM are 9 18 9", plane == Ok(vec![9, 18, 9]), || format!("{plane:?}"));
    for p in spaces.all() {
        let dim = p.dim().unwrap_or(usize::MAX);
        let mode = match (exhaustive, dim) {
            (true, d) if d <= 81 => AssocMode::Exhaustive,
            (false, d) if d > 300 => AssocMode::Random { triples: 2000, seed },
            _ => AssocMode::Sampled { random_triples: 200, seed },
        };
        let a = check_associativity(p, mode);
        r.push(&format!("associativity on {}", p.name()), a.triples_checked, a.first_failure.into_iter().collect());
        let c = check_local_confluence(p);
        r.push(&format!("local confluence of {}", p.name()), c.overlaps_checked, c.failures);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(p: &Presentation, terms: &[(Scalar, &str)]) -> Element {
        let raw = terms
            .iter()
            .map(|(s, w)| (s.clone(), p.word_from_names(&w.split_whitespace().collect::<Vec<_>>()).unwrap()))
            .collect();
        p.normalize(&raw)
    }

    fn word(p: &Presentation, w: &str) -> Element {
        elem(p, &[(Scalar::one(), w)])
    }

    #[test]
    fn plane() {
        let m = build_m().unwrap();
        assert_eq!(word(&m, "y x"), elem(&m, &[(q(2), "x y")]));
        assert_eq!(word(&m, "x x x"), Element::one());
        assert_eq!(m.dim().unwrap(), 9);
    }

    #[test]
    fn phase_space() {
        let p = build_q().unwrap();
        assert_eq!(word(&p, "px x"), elem(&p, &[(q(2), "x px")]));
        assert_eq!(word(&p, "px y"), elem(&p, &[(q(1), "y px"), (q2m1(), "x py")]));
        assert_eq!(word(&p, "py px"), elem(&p, &[(q(2), "px py")]));
        assert_eq!(word(&p, "px px px"), Element::one());
        assert_eq!(p.dim().unwrap(), 81);
        // the plane relations hold verbatim
        assert_eq!(word(&p, "x y"), elem(&p, &[(q(1), "y x")]));
    }

    #[test]
    fn plane_forms() {
        let p = build_omega_m().unwrap();
        assert_eq!(word(&p, "x dy"), elem(&p, &[(q(1), "dy x"), (q2m1(), "dx y")]));
        assert!(word(&p, "dx dx").is_zero());
        assert_eq!(word(&p, "dy dx"), elem(&p, &[(-q(1), "dx dy")]));
        assert_eq!(p.graded_dims().unwrap(), vec![9, 18, 9]);
    }

    #[test]
    fn phase_space_forms() {
        let p = build_omega_q().unwrap();
        // printed relations hold, whatever the orientation
        assert_eq!(word(&p, "dy px"), elem(&p, &[(q(2), "px dy"), (q(1) - c(1), "py dx")]));
        assert_eq!(word(&p, "dpx dy"), elem(&p, &[(-q(1), "dy dpx"), (c(1) - q(2), "dx dpy")]));
        assert!(word(&p, "dx dx").is_zero());
        assert_eq!(word(&p, "px x"), elem(&p, &[(q(2), "x px")]));
        assert_eq!(p.graded_dims().unwrap(), vec![81, 324, 486, 324, 81]);
        assert_eq!(p.basis(Some(2)).unwrap().len(), 486);
    }

    #[test]
    fn manin_dual_subalgebras() {
        let p = build_omega_q().unwrap();
        for (u, v) in [("dx", "dy"), ("dpx", "dpy")] {
            assert!(word(&p, &format!("{u} {u}")).is_zero());
            assert!(word(&p, &format!("{v} {v}")).is_zero());
            assert_eq!(word(&p, &format!("{u} {v}")), elem(&p, &[(-q(2), &format!("{v} {u}"))]));
        }
    }

    #[test]
    fn quantum_group_relations() {
        let f = build_f().unwrap();
        assert_eq!(f.dim().unwrap(), 27);
        assert_eq!(word(&f, "b c"), word(&f, "c b"));
        assert_eq!(word(&f, "a a a"), Element::one());
        // relations involving the eliminated generator
        assert_eq!(word(&f, "b d"), elem(&f, &[(q(1), "d b")]));
        assert_eq!(word(&f, "c d"), elem(&f, &[(q(1), "d c")]));
        let lhs = &word(&f, "a d") - &word(&f, "d a");
        assert_eq!(lhs, elem(&f, &[(q(1) - q(2), "b c")]));
        assert_eq!(&word(&f, "a d") - &elem(&f, &[(q(1), "b c")]), Element::one());
        assert_eq!(word(&f, "d d d"), Element::one());
        assert!(word(&f, "b b b").is_zero());
    }
}
