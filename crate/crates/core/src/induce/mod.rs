//! The induced module: words of strictly-negative-degree generators applied
//! to base-module vectors, with generator application by rewriting toward
//! the base.
//!
//! Words are arbitrary products of lowering generators (no normal ordering
//! among themselves); a generator of degree >= 0 is pushed rightward with
//! `g.(w.y) = [g,w].y + w.(g.y)` until it acts on the base module (degree 0)
//! or annihilates it (degree >= 1). Each step shortens the word to the right
//! of the moving generator, so the rewriting terminates.

mod symbolic;

pub use symbolic::{
    agrees_with_concrete, symbolic_reduce, AffineVec, SymbolicEngine, SymbolicImage,
};

use crate::algebra::{AlgebraSpec, Generator};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::gmodule::{act, ModuleKind, ModuleSpec, VectorInV};
use std::collections::BTreeMap;

/// A spanning word: lowering letters (leftmost acts last) over a base
/// vector `(j, weight)`; the weight is empty for finite-kind modules.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PBWWord {
    pub letters: Vec<Generator>,
    pub base: (usize, Vec<i64>),
}

impl PBWWord {
    /// Extragrading degree: sum of letter degrees (<= 0).
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| l.degree.i).sum()
    }

    /// Lattice weight for graded modules: letter weights plus base weight.
    /// Finite-kind words carry no lattice grading.
    pub fn lattice_weight(&self) -> Option<Vec<i64>> {
        if self.base.1.is_empty() {
            return None;
        }
        let mut w = self.base.1.clone();
        for l in &self.letters {
            for (c, a) in w.iter_mut().zip(&l.degree.alpha) {
                *c += a;
            }
        }
        Some(w)
    }
}

/// Finite combination of spanning words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalVector {
    terms: BTreeMap<PBWWord, Scalar>,
}

impl FormalVector {
    pub fn zero() -> Self {
        FormalVector::default()
    }

    pub fn single(word: PBWWord) -> Self {
        let mut v = FormalVector::zero();
        v.insert(word, Scalar::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, word: PBWWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FormalVector) -> FormalVector {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FormalVector {
        if c.is_zero() {
            return FormalVector::zero();
        }
        FormalVector {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PBWWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common (degree, weight) of all words, if homogeneous.
    pub fn homogeneous_bidegree(&self) -> Option<(i64, Option<Vec<i64>>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let sig = (first.degree(), first.lattice_weight());
        for w in it {
            if (w.degree(), w.lattice_weight()) != sig {
                return None;
            }
        }
        Some(sig)
    }

    fn from_v(v: &VectorInV) -> FormalVector {
        let mut out = FormalVector::zero();
        for ((j, w), c) in v.iter() {
            out.insert(
                PBWWord {
                    letters: Vec::new(),
                    base: (*j, w.clone()),
                },
                c.clone(),
            );
        }
        out
    }
}

/// Build the single-word vector for a lowering shape.
///
/// `shape` lists `(i_t, k_t)` with `i_t >= 1` (stored as degree `-i_t`),
/// `betas` the letter lattice weights. For graded modules the base weight is
/// `alpha - sum(betas)` so the whole word sits at weight `alpha`; finite
/// modules take `alpha = None`.
pub fn monomial_vector(
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
    shape: &[(i64, usize)],
    betas: &[Vec<i64>],
    base_j: usize,
    alpha: Option<&[i64]>,
) -> Result<FormalVector> {
    if betas.len() != shape.len() {
        return Err(Error::Shape(format!(
            "{} letters but {} lattice arguments",
            shape.len(),
            betas.len()
        )));
    }
    let n = algebra.lattice_rank();
    let mut letters = Vec::with_capacity(shape.len());
    for ((i, k), beta) in shape.iter().zip(betas) {
        if *i < 1 {
            return Err(Error::Degree(format!("lowering shape entry i={i} < 1")));
        }
        if *k >= algebra.family_count(-i) {
            return Err(Error::Unknown(format!("family {k} not in K_{}", -i)));
        }
        if beta.len() != n {
            return Err(Error::Arity("letter weight has wrong rank".into()));
        }
        letters.push(Generator::new(-i, beta.clone(), *k));
    }
    if base_j >= module.basis_len() {
        return Err(Error::Unknown(format!("basis index {base_j} out of range")));
    }
    let base_weight = match (module.kind(), alpha) {
        (ModuleKind::Graded, Some(alpha)) => {
            if alpha.len() != n {
                return Err(Error::Arity("target weight has wrong rank".into()));
            }
            let mut w = alpha.to_vec();
            for beta in betas {
                for (c, b) in w.iter_mut().zip(beta) {
                    *c -= b;
                }
            }
            w
        }
        (ModuleKind::Finite, None) => Vec::new(),
        (ModuleKind::Graded, None) => {
            return Err(Error::Shape("graded module needs a target weight".into()))
        }
        (ModuleKind::Finite, Some(_)) => {
            return Err(Error::Shape("finite module takes no target weight".into()))
        }
    };
    Ok(FormalVector::single(PBWWord {
        letters,
        base: (base_j, base_weight),
    }))
}

fn apply_to_word(
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
    g: &Generator,
    word: &PBWWord,
) -> Result<FormalVector> {
    if g.degree.i <= -1 {
        let mut letters = Vec::with_capacity(word.letters.len() + 1);
        letters.push(g.clone());
        letters.extend_from_slice(&word.letters);
        return Ok(FormalVector::single(PBWWord {
            letters,
            base: word.base.clone(),
        }));
    }
    match word.letters.split_first() {
        None => {
            if g.degree.i >= 1 {
                // G^+ annihilates V
                return Ok(FormalVector::zero());
            }
            let v = VectorInV::basis_vector(word.base.0, word.base.1.clone());
            Ok(FormalVector::from_v(&act(g, &v, module)?))
        }
        Some((head, tail)) => {
            let rest = PBWWord {
                letters: tail.to_vec(),
                base: word.base.clone(),
            };
            let mut out = FormalVector::zero();
            // [g, head] . rest
            for (gs, c) in algebra.bracket(g, head)?.iter() {
                out = out.add(&apply_to_word(algebra, module, gs, &rest)?.scale(c));
            }
            // head . (g . rest)
            for (w, c) in apply_generator(algebra, module, g, &FormalVector::single(rest))?.iter() {
                let mut letters = Vec::with_capacity(w.letters.len() + 1);
                letters.push(head.clone());
                letters.extend_from_slice(&w.letters);
                out.insert(
                    PBWWord {
                        letters,
                        base: w.base.clone(),
                    },
                    c.clone(),
                );
            }
            Ok(out)
        }
    }
}

/// Apply one generator of any degree to an induced-module vector.
pub fn apply_generator(
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
    g: &Generator,
    x: &FormalVector,
) -> Result<FormalVector> {
    let mut out = FormalVector::zero();
    for (word, c) in x.iter() {
        out = out.add(&apply_to_word(algebra, module, g, word)?.scale(c));
    }
    Ok(out)
}

/// Apply a raising word (written left to right; the rightmost letter acts
/// first). The total degree must cancel the vector's degree, so the result
/// is read off in the base module.
pub fn apply_raising_word(
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
    word: &[Generator],
    x: &FormalVector,
) -> Result<VectorInV> {
    if x.is_zero() {
        return Ok(VectorInV::zero());
    }
    let (xdeg, _) = x
        .homogeneous_bidegree()
        .ok_or_else(|| Error::Degree("vector is not homogeneous".into()))?;
    let wdeg: i64 = word.iter().map(|g| g.degree.i).sum();
    if wdeg + xdeg != 0 {
        return Err(Error::Degree(format!(
            "raising word degree {wdeg} does not cancel vector degree {xdeg}"
        )));
    }
    let mut cur = x.clone();
    for g in word.iter().rev() {
        cur = apply_generator(algebra, module, g, &cur)?;
        if cur.is_zero() {
            return Ok(VectorInV::zero());
        }
    }
    let mut out = VectorInV::zero();
    for (w, c) in cur.iter() {
        if !w.letters.is_empty() {
            return Err(Error::Internal(
                "degree-zero result still contains letters".into(),
            ));
        }
        out.insert(w.base.0, w.base.1.clone(), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::registry_algebra;
    use crate::gmodule::registry_module;
    use std::collections::BTreeMap as Map;

    fn params(pairs: &[(&str, &str)]) -> Map<String, String> {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    fn vir_setup(lambda: &str, mu: &str) -> (AlgebraSpec, ModuleSpec) {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[("lambda", lambda), ("mu", mu)]), &a).unwrap();
        (a, m)
    }

    #[test]
    fn empty_word_is_base_vector() {
        let (a, m) = vir_setup("1/2", "1/3");
        let v = monomial_vector(&a, &m, &[], &[], 0, Some(&[5])).unwrap();
        let (w, c) = v.iter().next().unwrap();
        assert!(w.letters.is_empty());
        assert_eq!(w.base, (0, vec![5]));
        assert!(c.is_one());
        assert_eq!(v.homogeneous_bidegree(), Some((0, Some(vec![5]))));
    }

    #[test]
    fn monomial_weight_bookkeeping() {
        // word d_{-1+3p} over base v_{a-3p} at target weight a = 0
        let (a, m) = vir_setup("1/2", "1/3");
        let v = monomial_vector(&a, &m, &[(1, 0)], &[vec![3]], 0, Some(&[0])).unwrap();
        let (w, _) = v.iter().next().unwrap();
        assert_eq!(w.base, (0, vec![-3]));
        assert_eq!(w.degree(), -1);
        assert_eq!(w.lattice_weight(), Some(vec![0]));
    }

    #[test]
    fn raising_generator_kills_base_module() {
        let (a, m) = vir_setup("1/2", "1/3");
        let x = monomial_vector(&a, &m, &[], &[], 0, Some(&[0])).unwrap();
        let g = Generator::new(1, vec![0], 0);
        assert!(apply_generator(&a, &m, &g, &x).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_generator_delegates_to_module() {
        let (a, m) = vir_setup("0", "0");
        let x = monomial_vector(&a, &m, &[], &[], 0, Some(&[2])).unwrap();
        let g = Generator::new(0, vec![1], 0);
        let y = apply_generator(&a, &m, &g, &x).unwrap();
        // d_p v_{2p} = 2p v_{3p} at lambda = mu = 0
        let (w, c) = y.iter().next().unwrap();
        assert_eq!(w.base, (0, vec![3]));
        assert_eq!(*c, &Scalar::from_int(2) * &Scalar::p());
    }

    #[test]
    fn virasoro_two_step_example() {
        // lambda = mu = 0: d_1 (d_{-1+p} v_{a-p}) = (-2+p)(a-p) v_a at a = ap
        // with a = 4: coefficient (-2+p) * 3p on v_{4p}
        let (alg, m) = vir_setup("0", "0");
        let x = monomial_vector(&alg, &m, &[(1, 0)], &[vec![1]], 0, Some(&[4])).unwrap();
        let d1 = Generator::new(1, vec![0], 0);
        let y = apply_generator(&alg, &m, &d1, &x).unwrap();
        let terms: Vec<_> = y.iter().collect();
        assert_eq!(terms.len(), 1);
        let (w, c) = terms[0];
        assert!(w.letters.is_empty());
        assert_eq!(w.base, (0, vec![4]));
        let three_p = &Scalar::from_int(3) * &Scalar::p();
        let want = &(&Scalar::from_int(-2) + &Scalar::p()) * &three_p;
        assert_eq!(*c, want);
    }

    #[test]
    fn apply_raising_word_matches_iterated_application() {
        let (alg, m) = vir_setup("1/2", "1/3");
        let x = monomial_vector(&alg, &m, &[(1, 0)], &[vec![2]], 0, Some(&[1])).unwrap();
        let word = vec![Generator::new(1, vec![-1], 0)];
        let out = apply_raising_word(&alg, &m, &word, &x).unwrap();
        assert!(!out.is_zero());
        // degree bookkeeping errors are caught
        let bad = vec![Generator::new(1, vec![0], 0), Generator::new(1, vec![0], 0)];
        assert!(matches!(
            apply_raising_word(&alg, &m, &bad, &x),
            Err(Error::Degree(_))
        ));
        // empty word on a degree-zero vector is the identity
        let v0 = monomial_vector(&alg, &m, &[], &[], 0, Some(&[3])).unwrap();
        let id = apply_raising_word(&alg, &m, &[], &v0).unwrap();
        assert_eq!(id, VectorInV::basis_vector(0, vec![3]));
    }

    #[test]
    fn linearity_of_apply_generator() {
        let (alg, m) = vir_setup("1/2", "1/3");
        let x = monomial_vector(&alg, &m, &[(1, 0)], &[vec![1]], 0, Some(&[0])).unwrap();
        let y = monomial_vector(&alg, &m, &[(1, 0)], &[vec![-2]], 0, Some(&[0])).unwrap();
        let a = Scalar::rational(2, 3);
        let b = -&Scalar::p();
        let g = Generator::new(1, vec![1], 0);
        let lhs = apply_generator(&alg, &m, &g, &x.scale(&a).add(&y.scale(&b))).unwrap();
        let rhs = apply_generator(&alg, &m, &g, &x)
            .unwrap()
            .scale(&a)
            .add(&apply_generator(&alg, &m, &g, &y).unwrap().scale(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_consistency_on_samples() {
        // g.(h.x) - h.(g.x) = [g,h].x in the induced module
        let (alg, m) = vir_setup("1/2", "1/3");
        let x = monomial_vector(
            &alg,
            &m,
            &[(1, 0), (1, 0)],
            &[vec![1], vec![-1]],
            0,
            Some(&[0]),
        )
        .unwrap();
        for (gi, ga, hi, ha) in [(1, 2, 1, -1), (1, 0, 0, 1), (2, 1, -1, 0)] {
            let g = Generator::new(gi, vec![ga], 0);
            let h = Generator::new(hi, vec![ha], 0);
            let gh =
                apply_generator(&alg, &m, &g, &apply_generator(&alg, &m, &h, &x).unwrap()).unwrap();
            let hg =
                apply_generator(&alg, &m, &h, &apply_generator(&alg, &m, &g, &x).unwrap()).unwrap();
            let lhs = gh.add(&hg.scale(&-&Scalar::one()));
            let mut rhs = FormalVector::zero();
            for (gs, c) in alg.bracket(&g, &h).unwrap().iter() {
                rhs = rhs.add(&apply_generator(&alg, &m, gs, &x).unwrap().scale(c));
            }
            assert_eq!(lhs, rhs, "failed for g=({gi},{ga}), h=({hi},{ha})");
        }
    }

    #[test]
    fn degree_and_weight_shift_structurally() {
        let alg = registry_algebra("toroidal-sl2", &params(&[])).unwrap();
        let m = registry_module("loop", &params(&[("q", "2")]), &alg).unwrap();
        let x = monomial_vector(&alg, &m, &[(1, 0)], &[vec![2]], 1, Some(&[0])).unwrap();
        let g = Generator::new(1, vec![-1], 2);
        let y = apply_generator(&alg, &m, &g, &x).unwrap();
        assert!(!y.is_zero());
        let (deg, weight) = y.homogeneous_bidegree().unwrap();
        assert_eq!(deg, 0);
        assert_eq!(weight, Some(vec![-1]));
    }
}
