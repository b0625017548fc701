//! Word-level rewriting and consistency certificates for presentations.
//!
//! [`reduce_word`] rewrites raw words redex by redex, independently of the
//! memoized monomial multiplication in [`Presentation`]. Running it with the
//! leftmost and rightmost strategies on every critical overlap certifies local
//! confluence; the associativity checks certify the multiplication table.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::field::Scalar;
use crate::ncpoly::{Element, Monomial, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

enum Redex {
    Eliminated(usize),
    Swap(usize),
    Cap(usize, u8),
}

fn find_redex(p: &Presentation, w: &[usize], strategy: Strategy) -> Option<Redex> {
    let mut found = None;
    for i in 0..w.len() {
        let here = if p.is_eliminated(w[i]) {
            Some(Redex::Eliminated(i))
        } else if i + 1 < w.len() && w[i] > w[i + 1] {
            Some(Redex::Swap(i))
        } else if let Some(cap) = &p.generators()[w[i]].cap {
            let e = cap.exponent as usize;
            if i + e <= w.len() && w[i..i + e].iter().all(|&g| g == w[i]) {
                Some(Redex::Cap(i, cap.exponent))
            } else {
                None
            }
        } else {
            None
        };
        if here.is_some() {
            found = here;
            if strategy == Strategy::Leftmost {
                break;
            }
        }
    }
    found
}

/// Rewrite a combination of words to normal form one redex at a time.
pub fn reduce_word(p: &Presentation, word: &[usize], strategy: Strategy) -> Element {
    let mut work: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    work.insert(word.to_vec(), Scalar::one());
    let mut done = Element::zero();
    let mut steps = 0usize;
    while let Some((w, c)) = work.pop_first() {
        steps += 1;
        assert!(steps < 10_000_000, "rewriting did not terminate");
        if c.is_zero() {
            continue;
        }
        let Some(redex) = find_redex(p, &w, strategy) else {
            done.add_term(Monomial::from_word(&w), c);
            continue;
        };
        let (start, len, replacement) = match redex {
            Redex::Eliminated(i) => (i, 1, p.generators()[w[i]].eliminated.clone().unwrap()),
            Redex::Swap(i) => (i, 2, p.rule(w[i], w[i + 1]).cloned().expect("rule for out-of-order pair")),
            Redex::Cap(i, e) => (i, e as usize, p.generators()[w[i]].cap.clone().unwrap().replacement),
        };
        for (m, rc) in replacement.terms() {
            let mut nw = w[..start].to_vec();
            nw.extend(m.word());
            nw.extend_from_slice(&w[start + len..]);
            let e = work.entry(nw).or_default();
            *e += &(&c * rc);
        }
    }
    done
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub presentation: String,
    pub overlaps_checked: usize,
    pub failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Overlap words of the rewrite system: every generator triple (this covers
/// all `g_k g_j g_i` critical pairs) and every cap/rule overlap.
pub fn critical_words(p: &Presentation) -> Vec<Vec<usize>> {
    let n = p.num_generators();
    let live: Vec<usize> = (0..n).filter(|&g| !p.is_eliminated(g)).collect();
    let mut words = Vec::new();
    for &a in &live {
        for &b in &live {
            for &c in &live {
                words.push(vec![a, b, c]);
            }
        }
    }
    for &g in &live {
        if let Some(cap) = &p.generators()[g].cap {
            let e = cap.exponent as usize;
            words.push(vec![g; e + 1]);
            for &h in &live {
                if h != g {
                    let mut w = vec![g; e];
                    w.push(h);
                    words.push(w);
                    let mut w = vec![h];
                    w.extend(vec![g; e]);
                    words.push(w);
                }
            }
        }
    }
    words
}

pub fn check_local_confluence(p: &Presentation) -> ConfluenceReport {
    let words = critical_words(p);
    let failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let left = reduce_word(p, w, Strategy::Leftmost);
            let right = reduce_word(p, w, Strategy::Rightmost);
            let fast = p.normalize_word(w);
            if left != right || left != fast {
                let names: Vec<&str> = w.iter().map(|&g| p.generator_name(g)).collect();
                Some(format!("overlap {} resolves differently", names.join(" ")))
            } else {
                None
            }
        })
        .collect();
    ConfluenceReport { presentation: p.name().to_string(), overlaps_checked: words.len(), failures }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AssocMode {
    /// Every triple of basis monomials.
    Exhaustive,
    /// Every (basis, generator, generator) triple plus seeded random basis
    /// triples. The anchored triples alone already certify that right
    /// multiplication by generators respects every relation.
    Sampled { random_triples: usize, seed: u64 },
    /// Seeded random basis triples only.
    Random { triples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct AssocReport {
    pub presentation: String,
    pub mode: AssocMode,
    pub triples_checked: usize,
    pub first_failure: Option<String>,
}

impl AssocReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn assoc_holds(p: &Presentation, u: &Monomial, v: &Monomial, w: &Monomial) -> bool {
    let uv = p.mul_mono(u, v);
    let vw = p.mul_mono(v, w);
    let left = p.mul(&uv, &Element::monomial(*w));
    let right = p.mul(&Element::monomial(*u), &vw);
    left == right
}

pub fn check_associativity(p: &Presentation, mode: AssocMode) -> AssocReport {
    let basis = p.basis(None).expect("finite basis required");
    let describe = |t: &(Monomial, Monomial, Monomial)| format!("({:?}, {:?}, {:?})", t.0, t.1, t.2);
    let (triples_checked, first_failure) = match mode {
        AssocMode::Exhaustive => {
            let n = basis.len();
            let fail = (0..n * n).into_par_iter().find_map_first(|ij| {
                let (u, v) = (&basis[ij / n], &basis[ij % n]);
                basis.iter().find(|w| !assoc_holds(p, u, v, w)).map(|w| (*u, *v, *w))
            });
            (n * n * n, fail.map(|t| describe(&t)))
        }
        AssocMode::Sampled { random_triples, seed } => {
            let gens: Vec<Monomial> =
                (0..p.num_generators()).filter(|&g| !p.is_eliminated(g)).map(Monomial::gen).collect();
            let mut triples = Vec::new();
            for u in &basis {
                for g in &gens {
                    for h in &gens {
                        triples.push((*u, *g, *h));
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..random_triples {
                let pick = |r: &mut ChaCha8Rng| basis[r.gen_range(0..basis.len())];
                triples.push((pick(&mut rng), pick(&mut rng), pick(&mut rng)));
            }
            let fail = triples.par_iter().find_first(|(u, v, w)| !assoc_holds(p, u, v, w));
            (triples.len(), fail.map(describe))
        }
        AssocMode::Random { triples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pick = |r: &mut ChaCha8Rng| basis[r.gen_range(0..basis.len())];
            let sample: Vec<_> = (0..triples).map(|_| (pick(&mut rng), pick(&mut rng), pick(&mut rng))).collect();
            let fail = sample.par_iter().find_first(|(u, v, w)| !assoc_holds(p, u, v, w));
            (triples, fail.map(describe))
        }
    };
    AssocReport { presentation: p.name().to_string(), mode, triples_checked, first_failure }
}
