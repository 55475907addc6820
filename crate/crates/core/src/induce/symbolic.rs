//! Fully symbolic generator application: lattice arguments are affine forms
//! in the symbolic variables `(beta_1..beta_s, gamma_1..gamma_r)` and
//! coefficients are exp-polynomials in those variables.
//!
//! Running the same rewriting as the concrete route but over affine
//! arguments produces, for a lowering shape applied against a raising shape,
//! the functions `h_l(beta, gamma)`: the coefficient of `v_l` after applying
//! the raising word to the lowering monomial, valid for every concrete
//! choice of the lattice points.

use crate::algebra::{AlgebraSpec, Generator};
use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::gmodule::{ModuleKind, ModuleSpec};
use crate::induce::{apply_raising_word, monomial_vector};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Affine integer form over `nvars` symbolic variables: per lattice
/// coordinate, `value = coeffs . vars + const`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineVec {
    pub coeffs: Vec<Vec<i64>>,
    pub consts: Vec<i64>,
}

impl AffineVec {
    /// The zero form on no lattice coordinates (finite-kind base weights).
    pub fn empty() -> Self {
        AffineVec {
            coeffs: Vec::new(),
            consts: Vec::new(),
        }
    }

    pub fn constant(values: &[i64], nvars: usize) -> Self {
        AffineVec {
            coeffs: vec![vec![0; nvars]; values.len()],
            consts: values.to_vec(),
        }
    }

    /// The identity block: lattice coordinate c reads symbolic variable
    /// `offset + c`.
    pub fn block(n: usize, offset: usize, nvars: usize) -> Self {
        let mut coeffs = vec![vec![0; nvars]; n];
        for (c, row) in coeffs.iter_mut().enumerate() {
            row[offset + c] = 1;
        }
        AffineVec {
            coeffs,
            consts: vec![0; n],
        }
    }

    pub fn add(&self, other: &AffineVec) -> AffineVec {
        AffineVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            consts: self
                .consts
                .iter()
                .zip(&other.consts)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &AffineVec) -> AffineVec {
        AffineVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
            consts: self
                .consts
                .iter()
                .zip(&other.consts)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    /// Concrete value at a symbolic-variable assignment.
    pub fn eval(&self, point: &[i64]) -> Vec<i64> {
        self.coeffs
            .iter()
            .zip(&self.consts)
            .map(|(row, c)| row.iter().zip(point).map(|(a, x)| a * x).sum::<i64>() + c)
            .collect()
    }

    /// Stack two forms into a substitution for a 2n-variable function.
    fn stacked(&self, other: &AffineVec) -> (Vec<Vec<i64>>, Vec<i64>) {
        let mut a = self.coeffs.clone();
        a.extend(other.coeffs.iter().cloned());
        let mut b = self.consts.clone();
        b.extend_from_slice(&other.consts);
        (a, b)
    }
}

/// Generator with a symbolic lattice argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SymGenerator {
    i: i64,
    family: usize,
    arg: AffineVec,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SymWord {
    letters: Vec<SymGenerator>,
    base: (usize, AffineVec),
}

#[derive(Debug, Clone, Default)]
struct SymVector {
    terms: BTreeMap<SymWord, ExpPoly>,
}

impl SymVector {
    fn insert(&mut self, word: SymWord, c: ExpPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c).expect("coefficient arities agree");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn add_scaled(&mut self, other: SymVector, factor: &ExpPoly) {
        for (w, c) in other.terms {
            self.insert(w, c.mul(factor).expect("coefficient arities agree"));
        }
    }
}

/// The symbolic image of a shape pair: for each base index `l`, the
/// coefficient `h_l(beta, gamma)` of `v_l` produced by the raising word.
#[derive(Debug, Clone)]
pub struct SymbolicImage {
    /// Lattice rank n.
    pub n: usize,
    /// Number of lowering letters s.
    pub lower_len: usize,
    /// Number of raising letters r.
    pub raise_len: usize,
    /// `h_l` per base index, in `n*(s+r)` variables (betas then gammas).
    pub images: BTreeMap<usize, ExpPoly>,
}

impl SymbolicImage {
    pub fn nvars(&self) -> usize {
        self.n * (self.lower_len + self.raise_len)
    }

    /// Evaluate every `h_l` at concrete `(betas, gammas)`.
    pub fn evaluate(
        &self,
        betas: &[Vec<i64>],
        gammas: &[Vec<i64>],
    ) -> Result<BTreeMap<usize, crate::exactnum::Scalar>> {
        let mut point = Vec::with_capacity(self.nvars());
        for b in betas {
            point.extend_from_slice(b);
        }
        for g in gammas {
            point.extend_from_slice(g);
        }
        if point.len() != self.nvars() {
            return Err(Error::Arity("wrong number of lattice points".into()));
        }
        let mut out = BTreeMap::new();
        for (l, h) in &self.images {
            let v = h.evaluate(&point)?;
            if !v.is_zero() {
                out.insert(*l, v);
            }
        }
        Ok(out)
    }
}

struct SymContext<'a> {
    algebra: &'a AlgebraSpec,
    module: &'a ModuleSpec,
    nvars: usize,
}

impl<'a> SymContext<'a> {
    /// Symbolic bracket: substitute the affine arguments into the structure
    /// functions.
    fn bracket(&self, x: &SymGenerator, y: &SymGenerator) -> Result<Vec<(SymGenerator, ExpPoly)>> {
        let (a, b) = x.arg.stacked(&y.arg);
        let mut out = Vec::new();
        for (s, f) in self.algebra.structure(x.i, y.i, x.family, y.family)?.iter() {
            let coeff = f.substitute_affine(&a, &b)?;
            if coeff.is_zero() {
                continue;
            }
            out.push((
                SymGenerator {
                    i: x.i + y.i,
                    family: *s,
                    arg: x.arg.add(&y.arg),
                },
                coeff,
            ));
        }
        Ok(out)
    }

    /// Symbolic module action of a degree-zero symbolic generator on a base
    /// vector.
    fn act(&self, g: &SymGenerator, base: &(usize, AffineVec)) -> Result<SymVector> {
        debug_assert_eq!(g.i, 0);
        let mut out = SymVector::default();
        for (s, h) in self.module.action(g.family, base.0)?.iter() {
            let coeff = match self.module.kind() {
                ModuleKind::Graded => {
                    let (a, b) = g.arg.stacked(&base.1);
                    h.substitute_affine(&a, &b)?
                }
                ModuleKind::Finite => h.substitute_affine(&g.arg.coeffs, &g.arg.consts)?,
            };
            let new_base = match self.module.kind() {
                ModuleKind::Graded => g.arg.add(&base.1),
                ModuleKind::Finite => AffineVec::empty(),
            };
            out.insert(
                SymWord {
                    letters: Vec::new(),
                    base: (*s, new_base),
                },
                coeff,
            );
        }
        Ok(out)
    }

    fn apply_to_word(&self, g: &SymGenerator, word: &SymWord) -> Result<SymVector> {
        if g.i <= -1 {
            let mut letters = Vec::with_capacity(word.letters.len() + 1);
            letters.push(g.clone());
            letters.extend_from_slice(&word.letters);
            let mut out = SymVector::default();
            out.insert(
                SymWord {
                    letters,
                    base: word.base.clone(),
                },
                ExpPoly::constant(self.nvars, crate::exactnum::Scalar::one()),
            );
            return Ok(out);
        }
        match word.letters.split_first() {
            None => {
                if g.i >= 1 {
                    return Ok(SymVector::default());
                }
                self.act(g, &word.base)
            }
            Some((head, tail)) => {
                let rest = SymWord {
                    letters: tail.to_vec(),
                    base: word.base.clone(),
                };
                let mut out = SymVector::default();
                for (gs, c) in self.bracket(g, head)? {
                    out.add_scaled(self.apply_to_word(&gs, &rest)?, &c);
                }
                let moved = self.apply_to_word(g, &rest)?;
                for (w, c) in moved.terms {
                    let mut letters = Vec::with_capacity(w.letters.len() + 1);
                    letters.push(head.clone());
                    letters.extend_from_slice(&w.letters);
                    out.insert(
                        SymWord {
                            letters,
                            base: w.base,
                        },
                        c,
                    );
                }
                Ok(out)
            }
        }
    }
}

/// Run the raising shape against the lowering shape symbolically.
///
/// The lowering word has letters of degrees `-i_t` with arguments `beta_t`,
/// over base `v_{base_j}(alpha - sum beta)`; the raising word has degrees
/// `+j_u` with arguments `gamma_u`. The raising degrees must sum to the
/// lowering total. For graded modules `alpha` is the concrete target weight;
/// finite modules take `None`.
pub fn symbolic_reduce(
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
    lower_shape: &[(i64, usize)],
    raise_shape: &[(i64, usize)],
    base_j: usize,
    alpha: Option<&[i64]>,
) -> Result<SymbolicImage> {
    let n = algebra.lattice_rank();
    let s = lower_shape.len();
    let r = raise_shape.len();
    let lower_total: i64 = lower_shape.iter().map(|&(i, _)| i).sum();
    let raise_total: i64 = raise_shape.iter().map(|&(j, _)| j).sum();
    if lower_total != raise_total {
        return Err(Error::Shape(format!(
            "raising degree {raise_total} != lowering degree {lower_total}"
        )));
    }
    for &(i, k) in lower_shape {
        if i < 1 {
            return Err(Error::Degree(format!("lowering shape entry i={i} < 1")));
        }
        if k >= algebra.family_count(-i) {
            return Err(Error::Unknown(format!("family {k} not in K_{}", -i)));
        }
    }
    for &(j, m) in raise_shape {
        if j < 1 {
            return Err(Error::Degree(format!("raising shape entry j={j} < 1")));
        }
        if m >= algebra.family_count(j) {
            return Err(Error::Unknown(format!("family {m} not in K_{j}")));
        }
    }
    if base_j >= module.basis_len() {
        return Err(Error::Unknown(format!("basis index {base_j} out of range")));
    }
    let nvars = n * (s + r);
    let ctx = SymContext {
        algebra,
        module,
        nvars,
    };

    // base weight: alpha - sum of betas (graded), or nothing (finite)
    let base_arg = match (module.kind(), alpha) {
        (ModuleKind::Graded, Some(alpha)) => {
            if alpha.len() != n {
                return Err(Error::Arity("target weight has wrong rank".into()));
            }
            let mut acc = AffineVec::constant(alpha, nvars);
            for t in 0..s {
                acc = acc.sub(&AffineVec::block(n, n * t, nvars));
            }
            acc
        }
        (ModuleKind::Finite, None) => AffineVec::empty(),
        _ => {
            return Err(Error::Shape(
                "target weight must match the module kind".into(),
            ))
        }
    };
    let letters: Vec<SymGenerator> = lower_shape
        .iter()
        .enumerate()
        .map(|(t, &(i, k))| SymGenerator {
            i: -i,
            family: k,
            arg: AffineVec::block(n, n * t, nvars),
        })
        .collect();
    let mut cur = SymVector::default();
    cur.insert(
        SymWord {
            letters,
            base: (base_j, base_arg),
        },
        ExpPoly::constant(nvars, crate::exactnum::Scalar::one()),
    );

    for (u, &(j, m)) in raise_shape.iter().enumerate().rev() {
        let g = SymGenerator {
            i: j,
            family: m,
            arg: AffineVec::block(n, n * (s + u), nvars),
        };
        let mut next = SymVector::default();
        for (w, c) in cur.terms {
            next.add_scaled(ctx.apply_to_word(&g, &w)?, &c);
        }
        cur = next;
    }

    let mut images: BTreeMap<usize, ExpPoly> = BTreeMap::new();
    for (w, c) in cur.terms {
        if !w.letters.is_empty() {
            return Err(Error::Internal(
                "degree-zero symbolic result still contains letters".into(),
            ));
        }
        match images.entry(w.base.0) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c)?;
                *e.get_mut() = sum;
            }
        }
    }
    images.retain(|_, h| !h.is_zero());
    Ok(SymbolicImage {
        n,
        lower_len: s,
        raise_len: r,
        images,
    })
}

type CacheKey = (
    Vec<(i64, usize)>,
    Vec<(i64, usize)>,
    usize,
    Option<Vec<i64>>,
);

/// Memoizing wrapper around [`symbolic_reduce`]: shape pairs repeat heavily
/// across a dimension scan, and results are immutable once computed.
pub struct SymbolicEngine<'a> {
    pub algebra: &'a AlgebraSpec,
    pub module: &'a ModuleSpec,
    cache: Mutex<HashMap<CacheKey, Arc<SymbolicImage>>>,
}

impl<'a> SymbolicEngine<'a> {
    pub fn new(algebra: &'a AlgebraSpec, module: &'a ModuleSpec) -> Self {
        SymbolicEngine {
            algebra,
            module,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn reduce(
        &self,
        lower_shape: &[(i64, usize)],
        raise_shape: &[(i64, usize)],
        base_j: usize,
        alpha: Option<&[i64]>,
    ) -> Result<Arc<SymbolicImage>> {
        let key: CacheKey = (
            lower_shape.to_vec(),
            raise_shape.to_vec(),
            base_j,
            alpha.map(<[i64]>::to_vec),
        );
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let image = Arc::new(symbolic_reduce(
            self.algebra,
            self.module,
            lower_shape,
            raise_shape,
            base_j,
            alpha,
        )?);
        self.cache.lock().unwrap().insert(key, image.clone());
        Ok(image)
    }
}

/// Check symbolic/concrete agreement for one shape pair at one concrete
/// assignment: evaluating the symbolic image must reproduce the raising-word
/// application on the concrete monomial, exactly.
#[allow(clippy::too_many_arguments)]
pub fn agrees_with_concrete(
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
    image: &SymbolicImage,
    lower_shape: &[(i64, usize)],
    raise_shape: &[(i64, usize)],
    base_j: usize,
    alpha: Option<&[i64]>,
    betas: &[Vec<i64>],
    gammas: &[Vec<i64>],
) -> Result<bool> {
    let x = monomial_vector(algebra, module, lower_shape, betas, base_j, alpha)?;
    let word: Vec<Generator> = raise_shape
        .iter()
        .zip(gammas)
        .map(|(&(j, m), g)| Generator::new(j, g.clone(), m))
        .collect();
    let concrete = apply_raising_word(algebra, module, &word, &x)?;
    let symbolic = image.evaluate(betas, gammas)?;
    // the concrete result sits at one weight; compare per base index
    let mut concrete_map: BTreeMap<usize, crate::exactnum::Scalar> = BTreeMap::new();
    for ((j, _w), c) in concrete.iter() {
        concrete_map.insert(*j, c.clone());
    }
    Ok(concrete_map == symbolic)
}
