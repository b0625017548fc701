use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::field::Scalar;
use crate::ncpoly::{Element, Monomial, NcError, MAX_GENS};

/// `g^exponent = replacement`, e.g. `x^3 = 1` or `dx^2 = 0`.
#[derive(Clone, Debug)]
pub struct PowerCap {
    pub exponent: u8,
    pub replacement: Element,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// Form degree: 0 for functions, 1 for differentials.
    pub grade: u8,
    pub cap: Option<PowerCap>,
    /// Generators expressed through the others never appear in monomials.
    pub eliminated: Option<Element>,
}

/// A raw (not yet normalized) combination of words.
pub type RawWords = Vec<(Scalar, Vec<usize>)>;

/// A finite-dimensional graded algebra given by generators, length-two
/// exchange rules `g_j g_i -> (canonical combination)` for `j > i`, power
/// caps, and optional eliminated generators.
///
/// Products are computed by right-multiplying canonical monomials one
/// generator at a time; both monomial-generator and monomial-monomial
/// products are memoized.
pub struct Presentation {
    name: String,
    gens: Vec<Generator>,
    rules: HashMap<(usize, usize), Element>,
    gen_cache: DashMap<(Monomial, u8), Arc<Element>>,
    mono_cache: DashMap<(Monomial, Monomial), Arc<Element>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.gens.iter().map(|g| g.name.as_str()).collect::<Vec<_>>())
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_name(&self, g: usize) -> &str {
        &self.gens[g].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Rule for the out-of-order pair `g_hi g_lo`.
    pub fn rule(&self, hi: usize, lo: usize) -> Option<&Element> {
        self.rules.get(&(hi, lo))
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.rules.iter()
    }

    pub fn is_eliminated(&self, g: usize) -> bool {
        self.gens[g].eliminated.is_some()
    }

    pub fn grade(&self, m: &Monomial) -> u32 {
        self.gens.iter().enumerate().map(|(g, gen)| gen.grade as u32 * m.exp(g) as u32).sum()
    }

    /// Grades occurring in `e`, ascending.
    pub fn grades(&self, e: &Element) -> Vec<u32> {
        let mut v: Vec<u32> = e.terms().map(|(m, _)| self.grade(m)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Homogeneous component of grade `k`.
    pub fn component(&self, e: &Element, k: u32) -> Element {
        e.filter(|m| self.grade(m) == k)
    }

    /// The element represented by a single generator (after elimination).
    pub fn gen_element(&self, g: usize) -> Element {
        match &self.gens[g].eliminated {
            Some(e) => e.clone(),
            None => Element::monomial(Monomial::gen(g)),
        }
    }

    pub fn gen_by_name(&self, name: &str) -> Result<Element, NcError> {
        let g = self.index_of(name).ok_or_else(|| NcError::UnknownGenerator {
            name: name.to_string(),
            presentation: self.name.clone(),
        })?;
        Ok(self.gen_element(g))
    }

    /// Canonical monomial `m` times generator `g`.
    pub fn mul_mono_gen(&self, m: &Monomial, g: usize) -> Arc<Element> {
        let key = (*m, g as u8);
        if let Some(hit) = self.gen_cache.get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.mul_mono_gen_uncached(m, g));
        self.gen_cache.insert(key, out.clone());
        out
    }

    fn mul_mono_gen_uncached(&self, m: &Monomial, g: usize) -> Element {
        if let Some(sub) = &self.gens[g].eliminated {
            return self.mul(&Element::monomial(*m), sub);
        }
        match m.last_gen() {
            Some(last) if last > g => {
                let rest = m.dec(last);
                let rhs = self
                    .rules
                    .get(&(last, g))
                    .unwrap_or_else(|| panic!("{}: no rule for {} {}", self.name, self.gens[last].name, self.gens[g].name));
                let mut out = Element::zero();
                for (w, c) in rhs.terms() {
                    out.add_scaled(c, &self.mul_mono(&rest, w));
                }
                out
            }
            _ => {
                let bumped = m.bump(g);
                match &self.gens[g].cap {
                    Some(cap) if bumped.exp(g) >= cap.exponent => {
                        let rest = bumped.with_exp(g, bumped.exp(g) - cap.exponent);
                        self.mul(&Element::monomial(rest), &cap.replacement)
                    }
                    _ => Element::monomial(bumped),
                }
            }
        }
    }

    /// Product of two canonical monomials.
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Arc<Element> {
        if b.is_one() {
            return Arc::new(Element::monomial(*a));
        }
        if a.is_one() {
            return Arc::new(Element::monomial(*b));
        }
        let key = (*a, *b);
        if let Some(hit) = self.mono_cache.get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.mul_mono_word(a, &b.word()));
        self.mono_cache.insert(key, out.clone());
        out
    }

    fn mul_mono_word(&self, a: &Monomial, word: &[usize]) -> Element {
        if let Some(joined) = a.concat(&Monomial::from_word(word)) {
            // Appending in order only needs the cap check.
            if self.gens.iter().enumerate().all(|(g, gen)| match &gen.cap {
                Some(cap) => joined.exp(g) < cap.exponent,
                None => true,
            }) && word.iter().all(|&g| self.gens[g].eliminated.is_none())
            {
                return Element::monomial(joined);
            }
        }
        let mut acc = Element::monomial(*a);
        for &g in word {
            let mut next = Element::zero();
            for (m, c) in acc.terms() {
                next.add_scaled(c, &self.mul_mono_gen(m, g));
            }
            acc = next;
        }
        acc
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_scaled(&(ca * cb), &self.mul_mono(ma, mb));
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, n: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Normal form of a single word of generator indices.
    pub fn normalize_word(&self, word: &[usize]) -> Element {
        let mut acc = Element::one();
        for &g in word {
            let mut next = Element::zero();
            for (m, c) in acc.terms() {
                next.add_scaled(c, &self.mul_mono_gen(m, g));
            }
            acc = next;
        }
        acc
    }

    pub fn normalize(&self, raw: &RawWords) -> Element {
        let mut out = Element::zero();
        for (c, w) in raw {
            out.add_scaled(c, &self.normalize_word(w));
        }
        out
    }

    /// Re-normalize an element whose monomials may violate caps or contain
    /// eliminated generators.
    pub fn renormalize(&self, e: &Element) -> Element {
        let raw: RawWords = e.terms().map(|(m, c)| (c.clone(), m.word())).collect();
        self.normalize(&raw)
    }

    pub fn word_from_names(&self, names: &[&str]) -> Result<Vec<usize>, NcError> {
        names
            .iter()
            .map(|n| {
                self.index_of(n).ok_or_else(|| NcError::UnknownGenerator {
                    name: n.to_string(),
                    presentation: self.name.clone(),
                })
            })
            .collect()
    }

    /// All canonical monomials, optionally restricted to one grade.
    pub fn basis(&self, grade: Option<u32>) -> Result<Vec<Monomial>, NcError> {
        let mut bounds = Vec::with_capacity(self.gens.len());
        for gen in &self.gens {
            if gen.eliminated.is_some() {
                bounds.push(1u8);
                continue;
            }
            match &gen.cap {
                Some(cap) => bounds.push(cap.exponent),
                None => return Err(NcError::InfiniteBasis { generator: gen.name.clone() }),
            }
        }
        let mut out = Vec::new();
        let mut exps = vec![0u8; self.gens.len()];
        loop {
            let m = Monomial::from_exps(&exps);
            if grade.is_none_or(|k| self.grade(&m) == k) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == exps.len() {
                    out.sort();
                    return Ok(out);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn dim(&self) -> Result<usize, NcError> {
        Ok(self.basis(None)?.len())
    }

    /// Dimensions of each grade, from 0 up to the top grade.
    pub fn graded_dims(&self) -> Result<Vec<usize>, NcError> {
        let basis = self.basis(None)?;
        let top = basis.iter().map(|m| self.grade(m)).max().unwrap_or(0);
        let mut dims = vec![0usize; top as usize + 1];
        for m in &basis {
            dims[self.grade(m) as usize] += 1;
        }
        Ok(dims)
    }

    pub fn clear_caches(&self) {
        self.gen_cache.clear();
        self.mono_cache.clear();
    }
}

/// Collects generators, caps and relations, orienting every relation into a
/// rule for its out-of-order word.
#[derive(Debug, Default)]
pub struct PresentationBuilder {
    name: String,
    gens: Vec<Generator>,
    rules: HashMap<(usize, usize), Element>,
    relations: Vec<(String, BTreeMap<Vec<usize>, Scalar>)>,
}

impl PresentationBuilder {
    pub fn new(name: &str) -> Self {
        PresentationBuilder { name: name.to_string(), ..Default::default() }
    }

    pub fn generator(&mut self, name: &str, grade: u8) -> &mut Self {
        assert!(self.gens.len() < MAX_GENS, "at most {MAX_GENS} generators");
        assert!(grade <= 1, "generator grades are 0 or 1");
        self.gens.push(Generator { name: name.to_string(), grade, cap: None, eliminated: None });
        self
    }

    pub fn index(&self, name: &str) -> usize {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .unwrap_or_else(|| panic!("{}: unknown generator {name}", self.name))
    }

    pub fn cap(&mut self, name: &str, exponent: u8, replacement: Element) -> &mut Self {
        assert!(exponent >= 2, "power caps need exponent >= 2");
        let g = self.index(name);
        self.gens[g].cap = Some(PowerCap { exponent, replacement });
        self
    }

    pub fn eliminate(&mut self, name: &str, value: Element) -> &mut Self {
        let g = self.index(name);
        self.gens[g].eliminated = Some(value);
        self
    }

    /// Direct rule `hi lo -> rhs` with `rhs` already canonical.
    pub fn rule(&mut self, hi: &str, lo: &str, rhs: Element) -> &mut Self {
        let (h, l) = (self.index(hi), self.index(lo));
        assert!(h > l, "{}: rule {hi} {lo} is not out of order", self.name);
        self.rules.insert((h, l), rhs);
        self
    }

    /// Relation `lhs = rhs` between quadratic words as written; each term is
    /// a coefficient and a space-separated word of generator names.
    pub fn relation(&mut self, lhs: &[(Scalar, &str)], rhs: &[(Scalar, &str)]) -> &mut Self {
        let mut combo: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        let label = format!("{} = {}", fmt_side(lhs), fmt_side(rhs));
        for (sign, side) in [(Scalar::one(), lhs), (-Scalar::one(), rhs)] {
            for (c, w) in side {
                let word: Vec<usize> = w.split_whitespace().map(|n| self.index(n)).collect();
                let e = combo.entry(word).or_default();
                *e += &(&sign * c);
            }
        }
        combo.retain(|_, c| !c.is_zero());
        self.relations.push((label, combo));
        self
    }

    pub fn build(&self) -> Result<Presentation, NcError> {
        let mut rules = self.rules.clone();
        let mut pending: Vec<(String, BTreeMap<Vec<usize>, Scalar>)> = self.relations.clone();
        while !pending.is_empty() {
            let mut progressed = false;
            let mut still = Vec::new();
            for (label, combo) in pending {
                let combo = substitute_rules(&combo, &rules);
                let bad: Vec<&Vec<usize>> = combo.keys().filter(|w| !is_sorted_word(w)).collect();
                match bad.len() {
                    0 if combo.is_empty() => progressed = true,
                    0 => return Err(NcError::InconsistentRelation { relation: label }),
                    1 => {
                        let word = bad[0].clone();
                        if word.len() != 2 {
                            return Err(NcError::UnsupportedRelation { relation: label });
                        }
                        let lead = combo[&word].clone();
                        let scale = -(lead.inv().expect("nonzero coefficient"));
                        let mut rhs = Element::zero();
                        for (w, c) in &combo {
                            if *w != word {
                                rhs.add_term(Monomial::from_word(w), &scale * c);
                            }
                        }
                        rules.insert((word[0], word[1]), rhs);
                        progressed = true;
                    }
                    _ => still.push((label, combo)),
                }
            }
            if !progressed {
                return Err(NcError::UnresolvedRelations {
                    relations: still.into_iter().map(|(l, _)| l).collect(),
                });
            }
            pending = still;
        }
        for j in 0..self.gens.len() {
            for i in 0..j {
                if self.gens[i].eliminated.is_some() || self.gens[j].eliminated.is_some() {
                    continue;
                }
                let Some(rhs) = rules.get(&(j, i)) else {
                    return Err(NcError::MissingRule {
                        presentation: self.name.clone(),
                        hi: self.gens[j].name.clone(),
                        lo: self.gens[i].name.clone(),
                    });
                };
                let grade = self.gens[i].grade as u32 + self.gens[j].grade as u32;
                for (m, _) in rhs.terms() {
                    let g: u32 = (0..self.gens.len()).map(|k| self.gens[k].grade as u32 * m.exp(k) as u32).sum();
                    if g != grade {
                        return Err(NcError::GradeViolation {
                            presentation: self.name.clone(),
                            hi: self.gens[j].name.clone(),
                            lo: self.gens[i].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(Presentation {
            name: self.name.clone(),
            gens: self.gens.clone(),
            rules,
            gen_cache: DashMap::new(),
            mono_cache: DashMap::new(),
        })
    }
}

fn fmt_side(side: &[(Scalar, &str)]) -> String {
    side.iter().map(|(c, w)| format!("({c}) {w}")).collect::<Vec<_>>().join(" + ")
}

fn is_sorted_word(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

fn substitute_rules(
    combo: &BTreeMap<Vec<usize>, Scalar>,
    rules: &HashMap<(usize, usize), Element>,
) -> BTreeMap<Vec<usize>, Scalar> {
    let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    let mut push = |w: Vec<usize>, c: Scalar| {
        let e = out.entry(w).or_default();
        *e += &c;
    };
    for (w, c) in combo {
        match (w.len(), w.len() == 2 && w[0] > w[1]) {
            (2, true) => match rules.get(&(w[0], w[1])) {
                Some(rhs) => {
                    for (m, rc) in rhs.terms() {
                        push(m.word(), c * rc);
                    }
                }
                None => push(w.clone(), c.clone()),
            },
            _ => push(w.clone(), c.clone()),
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Monomial {
    /// Canonical monomial of a sorted word.
    pub fn from_word(word: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for &g in word {
            m = m.bump(g);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> Presentation {
        let q2 = Scalar::q_pow(2);
        let mut b = PresentationBuilder::new("plane");
        b.generator("x", 0).generator("y", 0);
        b.relation(&[(Scalar::one(), "x y")], &[(Scalar::q(), "y x")]);
        b.cap("x", 3, Element::one()).cap("y", 3, Element::one());
        let p = b.build().unwrap();
        assert_eq!(p.rule(1, 0), Some(&Element::term(q2, Monomial::from_exps(&[1, 1]))));
        p
    }

    #[test]
    fn reorients_relation() {
        let p = plane();
        let yx = p.normalize_word(&[1, 0]);
        assert_eq!(yx, Element::term(Scalar::q_pow(2), Monomial::from_exps(&[1, 1])));
    }

    #[test]
    fn caps_apply() {
        let p = plane();
        assert_eq!(p.normalize_word(&[0, 0, 0]), Element::one());
        assert_eq!(p.normalize_word(&[1, 0, 0, 0]), p.normalize_word(&[1]));
    }

    #[test]
    fn basis_needs_caps() {
        let mut b = PresentationBuilder::new("free");
        b.generator("t", 0);
        let p = b.build().unwrap();
        assert!(matches!(p.basis(None), Err(NcError::InfiniteBasis { .. })));
        assert_eq!(plane().basis(None).unwrap().len(), 9);
    }

    #[test]
    fn missing_rule_is_reported() {
        let mut b = PresentationBuilder::new("bad");
        b.generator("u", 0).generator("v", 0);
        assert!(matches!(b.build(), Err(NcError::MissingRule { .. })));
    }

    #[test]
    fn relation_among_canonical_words_is_inconsistent() {
        let mut b = PresentationBuilder::new("bad");
        b.generator("u", 0).generator("v", 0);
        b.relation(&[(Scalar::one(), "u v")], &[(Scalar::from_int(2), "u v")]);
        assert!(matches!(b.build(), Err(NcError::InconsistentRelation { .. })));
    }
}
