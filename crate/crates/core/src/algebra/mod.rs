//! Extragraded exp-polynomial Lie algebras presented by structure-function
//! tables.
//!
//! An algebra carries a Z x Z^n grading. Its distinguished spanning set is
//! indexed by `(i, alpha, k)`: extragrading degree `i`, lattice weight
//! `alpha`, and a family index `k` into the finite set attached to degree
//! `i`. Brackets are given per `(i, j, k, m)` by finite lists of
//! `(target family, exp-polynomial in the 2n lattice variables)`.

mod file;
mod registry;

pub use file::parse_algebra_file;
pub use registry::registry_algebra;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::exppoly::ExpPoly;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Position in the Z x Z^n grading.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeIndex {
    pub i: i64,
    pub alpha: Vec<i64>,
}

impl DegreeIndex {
    pub fn new(i: i64, alpha: Vec<i64>) -> Self {
        DegreeIndex { i, alpha }
    }
}

/// One element of the distinguished spanning set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub degree: DegreeIndex,
    pub family: usize,
}

impl Generator {
    pub fn new(i: i64, alpha: Vec<i64>, family: usize) -> Self {
        Generator {
            degree: DegreeIndex::new(i, alpha),
            family,
        }
    }
}

/// Finite linear combination of generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, g: Generator, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.insert(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }
}

/// Per-degree family names.
#[derive(Clone)]
pub(crate) enum FamilyTable {
    /// The same family list at every extragrading degree.
    Uniform(Vec<String>),
    /// Explicit lists per degree; absent degrees are empty.
    PerDegree(BTreeMap<i64, Vec<String>>),
}

/// One structure entry: targets and exp-polynomial coefficients.
pub type BracketTerms = Vec<(usize, ExpPoly)>;

pub(crate) type StructureRule = Arc<dyn Fn(i64, i64, usize, usize) -> BracketTerms + Send + Sync>;
pub(crate) type StructureMap = BTreeMap<(i64, i64, usize, usize), BracketTerms>;

/// Structure-function source.
#[derive(Clone)]
pub(crate) enum StructureTable {
    /// Closed-form rule generating the table entry for any degree pair.
    Rule(StructureRule),
    /// Finite table, with the transposed entry derived by antisymmetry
    /// when only one orientation is present.
    Table(StructureMap),
}

/// Memoized lookups; results are immutable once computed, so sharing the
/// cache across clones keeps the algebra behaviorally pure.
type Memo<K, V> = Arc<Mutex<HashMap<K, V>>>;

#[derive(Clone, Default)]
pub(crate) struct AlgebraCaches {
    structure: Memo<(i64, i64, usize, usize), Arc<BracketTerms>>,
    bracket: Memo<(Generator, Generator), LieElement>,
}

/// An extragraded exp-polynomial Lie algebra.
#[derive(Clone)]
pub struct AlgebraSpec {
    pub(crate) name: String,
    pub(crate) n: usize,
    pub(crate) depth: i64,
    pub(crate) families: FamilyTable,
    pub(crate) structure: StructureTable,
    pub(crate) caches: AlgebraCaches,
}

impl std::fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("depth", &self.depth)
            .finish()
    }
}

impl AlgebraSpec {
    pub(crate) fn new(
        name: String,
        n: usize,
        depth: i64,
        families: FamilyTable,
        structure: StructureTable,
    ) -> Self {
        AlgebraSpec {
            name,
            n,
            depth,
            families,
            structure,
            caches: AlgebraCaches::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same algebra with a different enumeration depth cap.
    pub fn with_depth(mut self, depth: i64) -> Self {
        self.depth = depth;
        self
    }

    /// Lattice rank n.
    pub fn lattice_rank(&self) -> usize {
        self.n
    }

    /// Enumeration bound on |i| for degree scans.
    pub fn depth_bound(&self) -> i64 {
        self.depth
    }

    pub fn family_names(&self, i: i64) -> &[String] {
        match &self.families {
            FamilyTable::Uniform(v) => v,
            FamilyTable::PerDegree(m) => m.get(&i).map(Vec::as_slice).unwrap_or(&[]),
        }
    }

    pub fn family_count(&self, i: i64) -> usize {
        self.family_names(i).len()
    }

    pub fn family_index(&self, i: i64, name: &str) -> Result<usize> {
        self.family_names(i)
            .iter()
            .position(|f| f == name)
            .ok_or_else(|| Error::Unknown(format!("no family `{name}` at degree {i}")))
    }

    /// Raw structure entry: the finite list of `(target family, f)` with `f`
    /// an exp-polynomial in the 2n variables `(alpha, beta)`. Memoized.
    pub fn structure(&self, i: i64, j: i64, k: usize, m: usize) -> Result<Arc<BracketTerms>> {
        if k >= self.family_count(i) || m >= self.family_count(j) {
            return Err(Error::Unknown(format!(
                "family index out of range at degrees ({i}, {j})"
            )));
        }
        if let Some(hit) = self.caches.structure.lock().unwrap().get(&(i, j, k, m)) {
            return Ok(hit.clone());
        }
        let entry = match &self.structure {
            StructureTable::Rule(rule) => rule(i, j, k, m),
            StructureTable::Table(table) => {
                if let Some(entry) = table.get(&(i, j, k, m)) {
                    entry.clone()
                } else if let Some(entry) = table.get(&(j, i, m, k)) {
                    // derive by antisymmetry: swap the two variable blocks
                    // and negate
                    let n = self.n;
                    let mut a = vec![vec![0i64; 2 * n]; 2 * n];
                    for v in 0..n {
                        a[v][n + v] = 1;
                        a[n + v][v] = 1;
                    }
                    let b = vec![0i64; 2 * n];
                    let mut out = Vec::with_capacity(entry.len());
                    for (s, f) in entry {
                        out.push((*s, f.substitute_affine(&a, &b)?.neg()));
                    }
                    out
                } else {
                    Vec::new()
                }
            }
        };
        let entry = Arc::new(entry);
        self.caches
            .structure
            .lock()
            .unwrap()
            .insert((i, j, k, m), entry.clone());
        Ok(entry)
    }

    /// Bracket of two generators, exact. Memoized.
    pub fn bracket(&self, x: &Generator, y: &Generator) -> Result<LieElement> {
        if x.degree.alpha.len() != self.n || y.degree.alpha.len() != self.n {
            return Err(Error::Arity(
                "generator lattice weight has wrong rank".into(),
            ));
        }
        let cache_key = (x.clone(), y.clone());
        if let Some(hit) = self.caches.bracket.lock().unwrap().get(&cache_key) {
            return Ok(hit.clone());
        }
        let point: Vec<i64> = x
            .degree
            .alpha
            .iter()
            .chain(y.degree.alpha.iter())
            .copied()
            .collect();
        let mut out = LieElement::zero();
        let target_alpha: Vec<i64> = x
            .degree
            .alpha
            .iter()
            .zip(&y.degree.alpha)
            .map(|(a, b)| a + b)
            .collect();
        for (s, f) in self
            .structure(x.degree.i, y.degree.i, x.family, y.family)?
            .iter()
        {
            let c = f.evaluate(&point)?;
            out.insert(
                Generator::new(x.degree.i + y.degree.i, target_alpha.clone(), *s),
                c,
            );
        }
        self.caches
            .bracket
            .lock()
            .unwrap()
            .insert(cache_key, out.clone());
        Ok(out)
    }

    /// Bracket extended linearly in the first argument.
    pub fn bracket_elem(&self, x: &LieElement, y: &Generator) -> Result<LieElement> {
        let mut out = LieElement::zero();
        for (g, c) in x.iter() {
            out = out.add(&self.bracket(g, y)?.scale(c));
        }
        Ok(out)
    }

    /// All generators with |i| <= degree_bound (i != 0 included) and lattice
    /// coordinates in [-coord_bound, coord_bound], in canonical order.
    pub fn enumerate_generators(&self, degree_bound: i64, coord_bound: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        let coords: Vec<i64> = (-coord_bound..=coord_bound).collect();
        for i in -degree_bound..=degree_bound {
            for k in 0..self.family_count(i) {
                for alpha in lattice_box(self.n, &coords) {
                    out.push(Generator::new(i, alpha, k));
                }
            }
        }
        out
    }
}

/// All points of the n-fold cartesian power of `coords`.
pub(crate) fn lattice_box(n: usize, coords: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * coords.len());
        for partial in &out {
            for &c in coords {
                let mut v = partial.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Sampling bounds for axiom checks.
#[derive(Debug, Clone, Copy)]
pub struct SampleSpec {
    pub degree_bound: i64,
    pub coord_bound: i64,
    /// Minimum number of sampled pairs/triples (all are used when the
    /// enumeration is smaller).
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            degree_bound: 3,
            coord_bound: 3,
            samples: 100,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub antisymmetry_checked: usize,
    pub jacobi_checked: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify antisymmetry and the Jacobi identity exactly on sampled generator
/// tuples within the given bounds. Violations are reported with witnesses,
/// not raised as errors.
pub fn check_axioms(a: &AlgebraSpec, sample: &SampleSpec) -> Result<AxiomReport> {
    let gens = a.enumerate_generators(sample.degree_bound, sample.coord_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
    let mut violations = Vec::new();

    let mut antisymmetry_checked = 0;
    for _ in 0..sample.samples {
        let x = gens.choose(&mut rng).expect("nonempty generator set");
        let y = gens.choose(&mut rng).expect("nonempty generator set");
        let sum = a.bracket(x, y)?.add(&a.bracket(y, x)?);
        antisymmetry_checked += 1;
        if !sum.is_zero() {
            violations.push(format!("antisymmetry fails at x={x:?}, y={y:?}"));
        }
    }

    let mut jacobi_checked = 0;
    for _ in 0..sample.samples {
        let x = gens.choose(&mut rng).expect("nonempty generator set");
        let y = gens.choose(&mut rng).expect("nonempty generator set");
        let z = gens.choose(&mut rng).expect("nonempty generator set");
        let xy_z = a.bracket_elem(&a.bracket(x, y)?, z)?;
        let yz_x = a.bracket_elem(&a.bracket(y, z)?, x)?;
        let zx_y = a.bracket_elem(&a.bracket(z, x)?, y)?;
        let total = xy_z.add(&yz_x).add(&zx_y);
        jacobi_checked += 1;
        if !total.is_zero() {
            violations.push(format!("jacobi fails at x={x:?}, y={y:?}, z={z:?}"));
        }
    }

    Ok(AxiomReport {
        algebra: a.name.clone(),
        antisymmetry_checked,
        jacobi_checked,
        violations,
    })
}
