//! Check suites for the Hopf structure, the actions and coactions, the
//! Galois certificate and the cotensor construction.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::action::Comodule;
use super::{t_index, Bundle};
use crate::field::Scalar;
use crate::ncpoly::linalg::rank;
use crate::ncpoly::{Element, Monomial, Presentation, TensorElement};
use crate::report::{random_element, SuiteReport};

type Triple = BTreeMap<(Monomial, Monomial, Monomial), Scalar>;

fn add3(t: &mut Triple, k: (Monomial, Monomial, Monomial), v: Scalar) {
    let e = t.entry(k).or_default();
    *e += &v;
    if e.is_zero() {
        t.remove(&k);
    }
}

fn fmt_mono(p: &Presentation, m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    m.word().iter().map(|&g| p.generator_name(g)).collect::<Vec<_>>().join("*")
}

impl Bundle {
    /// Every element `f` for which `act_from_rform` disagrees with the table
    /// action, over generators of `F` and the basis of `M`; with `sampled`,
    /// also over 500 seeded random pairs.
    pub fn action_consistency_failures(&self, sampled: bool) -> Vec<String> {
        self.action_consistency_failures_seeded(sampled, crate::report::DEFAULT_SEED)
    }

    pub fn action_consistency_failures_seeded(&self, sampled: bool, seed: u64) -> Vec<String> {
        let f = self.f();
        let m = self.m();
        let mbasis = m.basis(None).expect("finite");
        let mut pairs: Vec<(Element, Element)> = Vec::new();
        for h in 0..4 {
            for u in &mbasis {
                pairs.push((f.gen_element(h), Element::monomial(*u)));
            }
        }
        if sampled {
            let fbasis = f.basis(None).expect("finite");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..500 {
                pairs.push((random_element(&fbasis, &mut rng, 3), random_element(&mbasis, &mut rng, 3)));
            }
        }
        pairs
            .iter()
            .filter_map(|(h, u)| {
                let direct = self.act(Comodule::M, h, u);
                let via_r = self.act_from_rform(Comodule::M, h, u);
                (direct != via_r).then(|| format!("h = {h:?}, m = {u:?}"))
            })
            .collect()
    }

    /// `act_from_rform` on the 4×2 generator pairs against the printed table.
    pub fn table_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for h in 0..4 {
            for z in 0..2 {
                let via_r = self.act_from_rform(Comodule::M, &self.f().gen_element(h), &Element::monomial(Monomial::gen(z)));
                if via_r != self.table.entry(h, z) {
                    out.push(format!("{} ▷ {}", ["a", "b", "c", "d"][h], ["x", "y"][z]));
                }
            }
        }
        out
    }

    /// `h ▷ (uv) = (h1 ▷ u)(h2 ▷ v)` for generators `h` and basis `u`, `v`.
    pub fn module_algebra_failures(&self, c: Comodule, right_generators_only: bool) -> (usize, Vec<String>) {
        let p = self.presentation(c).clone();
        let basis = p.basis(None).expect("finite");
        let rights: Vec<Monomial> = if right_generators_only {
            (0..p.num_generators()).map(Monomial::gen).collect()
        } else {
            basis.clone()
        };
        let mut cases = Vec::new();
        for h in 0..4 {
            for u in &basis {
                for v in &rights {
                    cases.push((h, *u, *v));
                }
            }
        }
        let failures = cases
            .par_iter()
            .filter_map(|&(h, u, v)| {
                let hel = self.f().gen_element(h);
                let lhs = self.act(c, &hel, &p.mul_mono(&u, &v));
                let mut rhs = Element::zero();
                for ((h1, h2), coef) in self.hopf.coproduct(&hel).terms() {
                    let a = self.act_mono(c, h1, &u);
                    let b = self.act_mono(c, h2, &v);
                    rhs.add_scaled(coef, &p.mul(&a, &b));
                }
                (lhs != rhs).then(|| format!("h = {}, u = {}, v = {}", ["a", "b", "c", "d"][h], fmt_mono(&p, &u), fmt_mono(&p, &v)))
            })
            .collect();
        (cases.len(), failures)
    }

    /// The table action respects the relations of `F`: the generator
    /// matrices satisfy the exchange rules and caps, and `d` acts as its
    /// determinant expression does.
    fn table_respects_f(&self) -> Vec<String> {
        let f = self.f();
        let on = |e: &Element, z: usize| {
            let mut acc = Element::zero();
            for (m, c) in e.terms() {
                acc.add_scaled(c, &self.table.act_mono_on_gen(m, z));
            }
            acc
        };
        let word_matrix = |word: &[usize], z: usize| {
            let mut v = [Scalar::zero(), Scalar::zero()];
            v[z] = Scalar::one();
            for &g in word.iter().rev() {
                let a = self.table.generator_matrix(g);
                v = std::array::from_fn(|n| (0..2).map(|k| &a[n][k] * &v[k]).sum());
            }
            Element::from_terms((0..2).map(|n| (Monomial::gen(n), v[n].clone())))
        };
        let mut out = Vec::new();
        for ((hi, lo), rhs) in f.rules() {
            for z in 0..2 {
                if word_matrix(&[*hi, *lo], z) != on(rhs, z) {
                    out.push(format!("rule {} {} on {}", f.generator_name(*hi), f.generator_name(*lo), ["x", "y"][z]));
                }
            }
        }
        for (g, gen) in f.generators().iter().enumerate() {
            if let Some(cap) = &gen.cap {
                for z in 0..2 {
                    if word_matrix(&vec![g; cap.exponent as usize], z) != on(&cap.replacement, z) {
                        out.push(format!("{}^{} on {}", gen.name, cap.exponent, ["x", "y"][z]));
                    }
                }
            }
        }
        for z in 0..2 {
            if on(&f.gen_element(3), z) != self.table.entry(3, z) {
                out.push(format!("d ▷ {} disagrees with the determinant", ["x", "y"][z]));
            }
        }
        out
    }

    /// The action suite: table versus r-form, module-algebra law, and
    /// well-definedness on `F`.
    pub fn action_report(&self, seed: u64) -> SuiteReport {
        let mut r = SuiteReport::new("action").with_seed(seed);
        r.push("r-form reproduces the table on generator pairs", 8, self.table_failures());
        r.push("r-form action equals table action on generators × basis of M", 36, self.action_consistency_failures_seeded(false, seed));
        let sampled = self.action_consistency_failures_seeded(true, seed);
        r.push("r-form action equals table action on 500 random pairs", 536, sampled);
        r.push("table matrices satisfy the relations of F", 8, self.table_respects_f());
        let (n, fails) = self.module_algebra_failures(Comodule::M, false);
        r.push("module-algebra law on generators × basis × basis of M", n, fails);
        let (n, fails) = self.module_algebra_failures(Comodule::OmegaM, true);
        r.push("module-algebra law on OmegaM (h▷dz = d(h▷z))", n, fails);
        let (n, fails) = self.module_algebra_failures(Comodule::Q, true);
        r.push("module-algebra law on Q", n, fails);
        r
    }

    fn delta_left(&self, t: &TensorElement) -> Triple {
        let mut out = Triple::new();
        for ((l, r), c) in t.terms() {
            for ((l1, l2), c1) in self.hopf.coproduct_mono(l).terms() {
                add3(&mut out, (*l1, *l2, *r), c * c1);
            }
        }
        out
    }

    fn delta_right(&self, t: &TensorElement) -> Triple {
        let mut out = Triple::new();
        for ((l, r), c) in t.terms() {
            for ((r1, r2), c1) in self.hopf.coproduct_mono(r).terms() {
                add3(&mut out, (*l, *r1, *r2), c * c1);
            }
        }
        out
    }

    /// Hopf axioms of `F` on its 27-dimensional basis and the r-form laws.
    pub fn hopf_report(&self) -> SuiteReport {
        let f = self.f().clone();
        let hopf = &self.hopf;
        let basis = f.basis(None).expect("finite");
        let mut r = SuiteReport::new("hopf");

        let fails: Vec<String> = basis
            .iter()
            .filter(|h| {
                let d = hopf.coproduct_mono(h);
                self.delta_left(&d) != self.delta_right(&d)
            })
            .map(|h| fmt_mono(&f, h))
            .collect();
        r.push("coassociativity", basis.len(), fails);

        let fails: Vec<String> = basis
            .iter()
            .filter(|h| {
                let d = hopf.coproduct_mono(h);
                let left = d.contract(|a, b| Element::term(hopf.counit_mono(a), *b));
                let right = d.contract(|a, b| Element::term(hopf.counit_mono(b), *a));
                left != Element::monomial(**h) || right != Element::monomial(**h)
            })
            .map(|h| fmt_mono(&f, h))
            .collect();
        r.push("counit", basis.len(), fails);

        let fails: Vec<String> = basis
            .iter()
            .filter(|h| {
                let d = hopf.coproduct_mono(h);
                let eps = Element::constant(hopf.counit_mono(h));
                let left = d.contract(|a, b| f.mul(&hopf.antipode_mono(a), &Element::monomial(*b)));
                let right = d.contract(|a, b| f.mul(&Element::monomial(*a), &hopf.antipode_mono(b)));
                left != eps || right != eps
            })
            .map(|h| fmt_mono(&f, h))
            .collect();
        r.push("antipode", basis.len(), fails);

        let pairs: Vec<(Monomial, Monomial)> = basis.iter().flat_map(|u| basis.iter().map(move |v| (*u, *v))).collect();
        let fails: Vec<String> = pairs
            .par_iter()
            .filter(|(u, v)| {
                let uv = f.mul_mono(u, v);
                let delta_uv = hopf.coproduct(&uv);
                let prod = hopf.coproduct_mono(u).mul(&hopf.coproduct_mono(v), &f, &f);
                let eps_ok = hopf.counit(&uv) == &hopf.counit_mono(u) * &hopf.counit_mono(v);
                let s_ok = hopf.antipode(&uv) == f.mul(&hopf.antipode_mono(v), &hopf.antipode_mono(u));
                delta_uv != prod || !eps_ok || !s_ok
            })
            .map(|(u, v)| format!("{} · {}", fmt_mono(&f, u), fmt_mono(&f, v)))
            .collect();
        r.push("Δ, ε multiplicative and S anti-multiplicative on basis pairs", pairs.len(), fails);

        // the eliminated generator obeys the Hopf structure of a matrix entry
        let d = f.gen_element(3);
        let mut ok = hopf.coproduct(&d) == hopf.generator_coproduct(3);
        ok &= hopf.counit(&d).is_one();
        ok &= hopf.antipode(&d) == f.gen_element(0);
        r.assert("coproduct, counit and antipode of d", ok, || "d = a^2(1 + q bc) disagrees".into());

        let mut fails = Vec::new();
        for g in 0..4 {
            for h in 0..4 {
                let (i, j) = super::t_pos(g);
                let (k, l) = super::t_pos(h);
                let lhs = hopf.rform(&f.gen_element(g), &f.gen_element(h));
                let rhs = hopf.rform_generators(t_index(i, j), t_index(k, l));
                if lhs != rhs {
                    fails.push(format!("r({} ⊗ {})", ["a", "b", "c", "d"][g], ["a", "b", "c", "d"][h]));
                }
            }
        }
        r.push("r(T_i^j ⊗ T_k^l) = q R_ik^jl", 16, fails);

        let (n, fails) = self.rform_law_failures(&basis);
        r.push("r-form bialgebra pairing laws on basis triples", n, fails);
        r
    }

    /// `r(fg ⊗ h)` and `r(f ⊗ gh)` against the coproduct expansions in the
    /// selected leg order.
    fn rform_law_failures(&self, basis: &[Monomial]) -> (usize, Vec<String>) {
        let f = self.f().clone();
        let hopf = &self.hopf;
        let swapped = hopf.leg_order() == super::RFormLegOrder::Swapped;
        let triples: Vec<(Monomial, Monomial, Monomial)> = basis
            .iter()
            .flat_map(|a| basis.iter().flat_map(move |b| basis.iter().map(move |c| (*a, *b, *c))))
            .collect();
        let fails = triples
            .par_iter()
            .filter(|(u, v, w)| {
                let uv = f.mul_mono(u, v);
                let vw = f.mul_mono(v, w);
                let ew = Element::monomial(*w);
                let eu = Element::monomial(*u);
                // r(uv ⊗ w)
                let lhs1 = hopf.rform(&uv, &ew);
                let mut rhs1 = Scalar::zero();
                for ((w1, w2), c) in hopf.coproduct_mono(w).terms() {
                    let (first, second) = if swapped { (w2, w1) } else { (w1, w2) };
                    rhs1 += &(c * &(hopf.rform_mono(u, first) * hopf.rform_mono(v, second)));
                }
                // r(u ⊗ vw)
                let lhs2 = hopf.rform(&eu, &vw);
                let mut rhs2 = Scalar::zero();
                for ((u1, u2), c) in hopf.coproduct_mono(u).terms() {
                    let val = if swapped {
                        hopf.rform_mono(u1, v) * hopf.rform_mono(u2, w)
                    } else {
                        hopf.rform_mono(u1, w) * hopf.rform_mono(u2, v)
                    };
                    rhs2 += &(c * &val);
                }
                lhs1 != rhs1 || lhs2 != rhs2
            })
            .map(|(u, v, w)| format!("({}, {}, {})", fmt_mono(&f, u), fmt_mono(&f, v), fmt_mono(&f, w)))
            .collect();
        (triples.len(), fails)
    }

    /// Images of the generators satisfy every defining relation.
    pub fn coaction_relation_failures(&self, c: Comodule) -> (usize, Vec<String>) {
        let p = self.presentation(c).clone();
        let f = self.f().clone();
        let gen_img = |g: usize| self.coact(c, &Element::monomial(Monomial::gen(g)));
        let mut cases = 0;
        let mut fails = Vec::new();
        let image_of = |e: &Element| -> TensorElement {
            let mut out = TensorElement::zero();
            for (m, coef) in e.terms() {
                let mut acc = TensorElement::one();
                for g in m.word() {
                    acc = acc.mul(&gen_img(g), &f, &p);
                }
                out.add_scaled(coef, &acc);
            }
            out
        };
        for ((hi, lo), rhs) in p.rules() {
            cases += 1;
            let lhs = gen_img(*hi).mul(&gen_img(*lo), &f, &p);
            if lhs != image_of(rhs) {
                fails.push(format!("{} {}", p.generator_name(*hi), p.generator_name(*lo)));
            }
        }
        for (g, gen) in p.generators().iter().enumerate() {
            if let Some(cap) = &gen.cap {
                cases += 1;
                let mut lhs = TensorElement::one();
                for _ in 0..cap.exponent {
                    lhs = lhs.mul(&gen_img(g), &f, &p);
                }
                if lhs != image_of(&cap.replacement) {
                    fails.push(format!("{}^{}", gen.name, cap.exponent));
                }
            }
        }
        (cases, fails)
    }

    /// `δ_L(uv) = δ_L(u) δ_L(v)` on basis pairs (or basis × generators).
    pub fn coaction_morphism_failures(&self, c: Comodule, exhaustive: bool) -> (usize, Vec<String>) {
        let p = self.presentation(c).clone();
        let basis = p.basis(None).expect("finite");
        let rights: Vec<Monomial> =
            if exhaustive { basis.clone() } else { (0..p.num_generators()).map(Monomial::gen).collect() };
        self.coaction_morphism_on(c, &basis, &rights)
    }

    /// Multiplicativity on `lefts × rights`.
    pub fn coaction_morphism_on(&self, c: Comodule, lefts: &[Monomial], rights: &[Monomial]) -> (usize, Vec<String>) {
        let p = self.presentation(c).clone();
        let pairs: Vec<(Monomial, Monomial)> = lefts.iter().flat_map(|u| rights.iter().map(move |v| (*u, *v))).collect();
        let fails = pairs
            .par_iter()
            .filter(|(u, v)| {
                let lhs = self.coact(c, &p.mul_mono(u, v));
                let rhs = self.coact_mono(c, u).mul(&self.coact_mono(c, v), self.f(), &p);
                lhs != rhs
            })
            .map(|(u, v)| format!("{} · {}", fmt_mono(&p, u), fmt_mono(&p, v)))
            .collect();
        (pairs.len(), fails)
    }

    /// `(Δ ⊗ id) δ_L = (id ⊗ δ_L) δ_L` and `(ε ⊗ id) δ_L = id` on generators.
    pub fn coaction_axiom_failures(&self, c: Comodule) -> (usize, Vec<String>) {
        let p = self.presentation(c).clone();
        let mut fails = Vec::new();
        for g in 0..p.num_generators() {
            let e = Element::monomial(Monomial::gen(g));
            let d = self.coact(c, &e);
            let left = self.delta_left(&d);
            let mut right = Triple::new();
            for ((h, m), coef) in d.terms() {
                for ((h2, m0), c2) in self.coact_mono(c, m).terms() {
                    add3(&mut right, (*h, *h2, *m0), coef * c2);
                }
            }
            let counit = d.contract(|h, m| Element::term(self.hopf.counit_mono(h), *m));
            if left != right || counit != e {
                fails.push(p.generator_name(g).to_string());
            }
        }
        (p.num_generators(), fails)
    }

    /// Coaction suite over the plane, the phase space and both form algebras,
    /// plus the box product. `full` checks multiplicativity on every basis
    /// pair of `Q` instead of basis × generators.
    pub fn coaction_report(&self, full: bool) -> SuiteReport {
        let mut r = SuiteReport::new("coaction");
        for c in Comodule::ALL {
            let (n, fails) = self.coaction_axiom_failures(c);
            r.push(&format!("coaction axioms on generators of {}", c.name()), n, fails);
            let (n, fails) = self.coaction_relation_failures(c);
            r.push(&format!("relations of {} are covariant", c.name()), n, fails);
        }
        let (n, fails) = self.coaction_morphism_failures(Comodule::M, true);
        r.push("δ_L algebra morphism on basis pairs of M", n, fails);
        let (n, fails) = self.coaction_morphism_failures(Comodule::Q, full);
        let scope = if full { "basis pairs" } else { "basis × generators" };
        r.push(&format!("δ_L algebra morphism on {scope} of Q"), n, fails);
        let omega = self.spaces.omega_q.clone();
        let gens: Vec<Monomial> = (0..omega.num_generators()).map(Monomial::gen).collect();
        let lefts = if full {
            omega.basis(None).expect("finite")
        } else {
            let mut low = omega.basis(Some(0)).expect("finite");
            low.extend(omega.basis(Some(1)).expect("finite"));
            low
        };
        let (n, fails) = self.coaction_morphism_on(Comodule::OmegaQ, &lefts, &gens);
        let scope = if full { "basis" } else { "grade ≤ 1 basis" };
        r.push(&format!("δ_L algebra morphism on {scope} × generators of OmegaQ"), n, fails);
        let (n, fails) = self.box_product_failures();
        r.push("box product reproduces the products of Q", n, fails);
        r
    }

    /// `(a□v)(b□w)` against the product of `Q` on all basis pairs.
    pub fn box_product_failures(&self) -> (usize, Vec<String>) {
        let q = self.spaces.q.clone();
        let basis = q.basis(None).expect("finite");
        let pairs: Vec<(Monomial, Monomial)> = basis.iter().flat_map(|u| basis.iter().map(move |v| (*u, *v))).collect();
        let fails = pairs
            .par_iter()
            .filter(|(u, v)| {
                let boxed = self.box_mul(
                    &self.q_to_box(&Element::monomial(*u)),
                    &self.q_to_box(&Element::monomial(*v)),
                );
                self.box_to_q(&boxed) != *q.mul_mono(u, v)
            })
            .map(|(u, v)| format!("{} · {}", fmt_mono(&q, u), fmt_mono(&q, v)))
            .collect();
        (pairs.len(), fails)
    }

    /// Coinvariants, the translation-map identity and the dimension count.
    pub fn galois_report(&self) -> SuiteReport {
        let mut r = SuiteReport::new("galois");
        let co = self.coinvariants();
        r.assert("coinvariants of M # F have dimension 9", co.len() == 9, || format!("dimension {}", co.len()));
        let inside: Vec<String> = co
            .iter()
            .filter(|e| e.terms().any(|(m, _)| !crate::spaces::split_mf(m).1.is_one()))
            .map(|e| format!("{e:?}"))
            .collect();
        r.push("coinvariants lie in M # 1", co.len(), inside);
        let fails: Vec<String> = self.translation_failures().iter().map(|h| fmt_mono(self.f(), h)).collect();
        r.push("β((1#S(h1)) ⊗ (1#h2)) = 1 ⊗ h", 27, fails);
        r.assert("β(1 ⊗ 1) = 1 ⊗ 1", self.galois_beta(&TensorElement::one()) == TensorElement::one(), || "β(1⊗1)".into());
        let dim_p = self.spaces.mf.dim().expect("finite");
        let dim_f = self.f().dim().expect("finite");
        let dim_b = co.len();
        r.assert(
            "dim(P ⊗_B P) = dim(P ⊗ F)",
            dim_p * dim_p / dim_b == dim_p * dim_f,
            || format!("{} vs {}", dim_p * dim_p / dim_b, dim_p * dim_f),
        );
        r
    }

    /// Cotensor dimension, `φ(Q)` spans it, and `φ` is multiplicative.
    pub fn cotensor_report(&self) -> SuiteReport {
        let mut r = SuiteReport::new("cotensor");
        let data = self.cotensor_basis();
        r.assert("dim (M # F) □_F M = 81", data.dim() == 81, || format!("dimension {}", data.dim()));
        let qb = self.spaces.q.basis(None).expect("finite");
        let images: Vec<TensorElement> = qb.iter().map(|m| self.q_to_cotensor(&Element::monomial(*m))).collect();
        let outside: Vec<String> =
            qb.iter().zip(&images).filter(|(_, t)| !self.in_cotensor(t)).map(|(m, _)| fmt_mono(&self.spaces.q, m)).collect();
        r.push("φ maps Q into the cotensor", qb.len(), outside);
        let cols: Vec<_> = images.iter().map(|t| t.as_map().clone()).collect();
        let rk = rank(&cols);
        r.assert("φ(Q) has rank 81", rk == 81, || format!("rank {rk}"));
        let q = self.spaces.q.clone();
        let mut fails = Vec::new();
        for g in 0..4 {
            for h in 0..4 {
                let (u, v) = (Monomial::gen(g), Monomial::gen(h));
                let lhs = self.q_to_cotensor(&q.mul_mono(&u, &v));
                let rhs = self.cotensor_mul(&self.q_to_cotensor(&Element::monomial(u)), &self.q_to_cotensor(&Element::monomial(v)));
                if lhs != rhs {
                    fails.push(format!("{} · {}", q.generator_name(g), q.generator_name(h)));
                }
            }
        }
        r.push("cotensor products match Q on generator pairs", 16, fails);
        r
    }
}
