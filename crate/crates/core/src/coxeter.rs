//! The Coxeter-group engine.
//!
//! Elements are represented by their exact matrices in the canonical
//! (geometric) representation, which is faithful, so equality of elements is
//! equality of matrices. Length and descent questions reduce to root signs:
//! ℓ(ws) > ℓ(w) iff w(α_s) is a positive root. ShortLex reduced words come
//! from greedily stripping the least left descent; Tits' M-operation
//! rewriting is kept as an independent (exponential) oracle.

use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{EngineError, Result};
use crate::field::{two_cos_pi_over, FieldElement, FieldSpec};
use crate::graph::{CoxeterGraph, Label, VertexSet};
use crate::oracles::EnumeratedGroup;
use crate::roots::Root;
use crate::word::{ArtinWord, CoxWord};

/// A square matrix over the field K, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KMatrix {
    n: usize,
    data: Vec<FieldElement>,
}

impl std::fmt::Debug for KMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KMatrix({}x{})", self.n, self.n)
    }
}

impl KMatrix {
    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> Self {
        let zero = FieldElement::zero(spec);
        let one = FieldElement::one(spec);
        let mut data = vec![zero; n * n];
        for i in 0..n {
            data[i * n + i] = one.clone();
        }
        KMatrix { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        KMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, rhs: &KMatrix) -> KMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        KMatrix::from_fn(n, |i, j| {
            let mut acc: Option<FieldElement> = None;
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let term = a * rhs.get(k, j);
                acc = Some(match acc {
                    Some(v) => &v + &term,
                    None => term,
                });
            }
            acc.unwrap_or_else(|| FieldElement::zero(self.data[0].spec()))
        })
    }

    pub fn act(&self, coords: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = FieldElement::zero(self.data[0].spec());
                for (k, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        acc = &acc + &(self.get(i, k) * c);
                    }
                }
                acc
            })
            .collect()
    }

    /// Column `j` as a coordinate vector (the image of the j-th basis root).
    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if i == j {
                    if e.as_rational().map(|r| {
                        r.eq(&num_rational::BigRational::from(num_bigint::BigInt::from(
                            1,
                        )))
                    }) != Some(true)
                    {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// An element of W, stored with its inverse so descent tests on both sides
/// stay cheap. Equality and hashing use the matrix alone.
#[derive(Clone)]
pub struct CoxElement {
    mat: KMatrix,
    inv: KMatrix,
    shortlex: OnceLock<CoxWord>,
}

impl std::fmt::Debug for CoxElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoxElement")
    }
}

impl PartialEq for CoxElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for CoxElement {}

impl Hash for CoxElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl CoxElement {
    pub fn mat(&self) -> &KMatrix {
        &self.mat
    }

    pub fn inv_mat(&self) -> &KMatrix {
        &self.inv
    }

    pub fn mul(&self, rhs: &CoxElement) -> CoxElement {
        CoxElement {
            mat: self.mat.mul(&rhs.mat),
            inv: rhs.inv.mul(&self.inv),
            shortlex: OnceLock::new(),
        }
    }

    pub fn inverse(&self) -> CoxElement {
        CoxElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
            shortlex: OnceLock::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

/// How the bilinear form classifies the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphType {
    Spherical,
    Affine,
    Other,
}

impl GraphType {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphType::Spherical => "spherical",
            GraphType::Affine => "affine",
            GraphType::Other => "other",
        }
    }
}

/// Everything the engines need about one Coxeter graph: the field, the
/// bilinear form, and the generator matrices.
pub struct GroupContext {
    graph: CoxeterGraph,
    field: Arc<FieldSpec>,
    gram: Vec<Vec<FieldElement>>,
    gens: Vec<KMatrix>,
    classify: OnceLock<GraphType>,
    longest: OnceLock<Result<CoxElement>>,
    tau_perm: OnceLock<Vec<usize>>,
    pub(crate) enumeration_cache: OnceLock<Result<Arc<EnumeratedGroup>>>,
}

/// The pair (v, w) with u = v·w, v in the standard parabolic subgroup for X
/// and w of minimal length in its coset: ℓ(xw) > ℓ(w) for every x in X.
#[derive(Debug, Clone)]
pub struct MinimalCosetDecomposition {
    pub v: CoxElement,
    pub w: CoxElement,
}

impl GroupContext {
    pub fn new(graph: CoxeterGraph) -> Result<Arc<GroupContext>> {
        let field = FieldSpec::for_graph(&graph);
        let n = graph.rank();
        let mut gram = vec![vec![FieldElement::zero(&field); n]; n];
        for (s, row) in gram.iter_mut().enumerate() {
            for (t, entry) in row.iter_mut().enumerate() {
                // ⟨α_s, α_t⟩ = −2cos(π/m_st); the diagonal m = 1 gives 2,
                // an infinite label gives −2.
                let val = two_cos_pi_over(&field, graph.label(s, t))?;
                *entry = -&val;
            }
        }
        let gens: Vec<KMatrix> = (0..n)
            .map(|s| {
                KMatrix::from_fn(n, |i, t| {
                    // ρ(s)(α_t) = α_t − ⟨α_t, α_s⟩ α_s
                    let mut e = if i == t {
                        FieldElement::one(&field)
                    } else {
                        FieldElement::zero(&field)
                    };
                    if i == s {
                        e = &e - &gram[t][s];
                    }
                    e
                })
            })
            .collect();
        Ok(Arc::new(GroupContext {
            graph,
            field,
            gram,
            gens,
            classify: OnceLock::new(),
            longest: OnceLock::new(),
            tau_perm: OnceLock::new(),
            enumeration_cache: OnceLock::new(),
        }))
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn gram(&self, s: usize, t: usize) -> &FieldElement {
        &self.gram[s][t]
    }

    pub fn identity(&self) -> CoxElement {
        let id = KMatrix::identity(&self.field, self.rank());
        CoxElement {
            mat: id.clone(),
            inv: id,
            shortlex: OnceLock::new(),
        }
    }

    pub fn generator(&self, s: usize) -> CoxElement {
        CoxElement {
            mat: self.gens[s].clone(),
            inv: self.gens[s].clone(),
            shortlex: OnceLock::new(),
        }
    }

    pub fn element_of(&self, word: &CoxWord) -> CoxElement {
        let mut el = self.identity();
        for &s in &word.0 {
            el = el.mul(&self.generator(s));
        }
        el
    }

    /// The Coxeter image of an Artin word (exponents are irrelevant in W).
    pub fn element_of_artin(&self, word: &ArtinWord) -> CoxElement {
        self.element_of(&word.cox_image())
    }

    /// ℓ(ws) < ℓ(w), i.e. w(α_s) is a negative root.
    pub fn right_descent(&self, w: &CoxElement, s: usize) -> bool {
        column_sign(&w.mat, s) < 0
    }

    /// ℓ(sw) < ℓ(w), i.e. w⁻¹(α_s) is a negative root.
    pub fn left_descent(&self, w: &CoxElement, s: usize) -> bool {
        column_sign(&w.inv, s) < 0
    }

    /// The ShortLex-least reduced word for `w`: repeatedly strip the least
    /// left descent. Cached on the element.
    pub fn shortlex(&self, w: &CoxElement) -> CoxWord {
        w.shortlex
            .get_or_init(|| {
                let mut letters = Vec::new();
                let mut mat = w.mat.clone();
                let mut inv = w.inv.clone();
                while !mat.is_identity() {
                    let s = (0..self.rank())
                        .find(|&s| column_sign(&inv, s) < 0)
                        .expect("non-identity element without a left descent");
                    letters.push(s);
                    mat = self.gens[s].mul(&mat);
                    inv = inv.mul(&self.gens[s]);
                }
                CoxWord(letters)
            })
            .clone()
    }

    pub fn length(&self, w: &CoxElement) -> usize {
        self.shortlex(w).len()
    }

    /// Letters of any reduced word (well-defined by Tits' theorem).
    pub fn support(&self, w: &CoxElement) -> VertexSet {
        self.shortlex(w).letter_set()
    }

    /// Tits rewriting closure: exhaustively apply braid moves, deleting an
    /// adjacent equal pair whenever one appears, until the word is M-reduced.
    /// Exponential; a verification oracle, not a production path.
    pub fn m_reduce(&self, word: &CoxWord) -> Result<CoxWord> {
        const MAX_LEN: usize = 16;
        const MAX_CLOSURE: usize = 1_000_000;
        if word.len() > MAX_LEN {
            return Err(EngineError::CapExceeded(format!(
                "m_reduce input length {} exceeds cap {MAX_LEN}",
                word.len()
            )));
        }
        let mut current = word.0.clone();
        'shorten: loop {
            let mut visited: HashSet<Vec<usize>> = HashSet::new();
            let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
            visited.insert(current.clone());
            queue.push_back(current.clone());
            while let Some(w) = queue.pop_front() {
                if let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] == w[i + 1]) {
                    let mut shorter = w.clone();
                    shorter.drain(i..i + 2);
                    current = shorter;
                    continue 'shorten;
                }
                for i in 0..w.len() {
                    let s = w[i];
                    for t in 0..self.rank() {
                        if t == s {
                            continue;
                        }
                        let m = match self.graph.label(s, t) {
                            Label::Finite(m) => m as usize,
                            Label::Infinite => continue,
                        };
                        if i + m > w.len() {
                            continue;
                        }
                        let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
                        if !alternates {
                            continue;
                        }
                        let mut next = w.clone();
                        for k in 0..m {
                            next[i + k] = if k % 2 == 0 { t } else { s };
                        }
                        if visited.insert(next.clone()) {
                            if visited.len() > MAX_CLOSURE {
                                return Err(EngineError::CapExceeded(format!(
                                    "m_reduce closure exceeded {MAX_CLOSURE} words"
                                )));
                            }
                            queue.push_back(next);
                        }
                    }
                }
            }
            return Ok(CoxWord(current));
        }
    }

    /// Strong membership in the standard parabolic subgroup for X: a reduced
    /// word over X iff the support of the element lies in X.
    pub fn cox_member_strong(&self, word: &CoxWord, x: &VertexSet) -> Option<CoxWord> {
        let el = self.element_of(word);
        let reduced = self.shortlex(&el);
        if reduced.0.iter().all(|&s| x.contains(s)) {
            Some(reduced)
        } else {
            None
        }
    }

    /// Greedy strip of left descents lying in X; returns u = v·w with
    /// ℓ(u) = ℓ(v) + ℓ(w) and w (X,∅)-minimal.
    pub fn left_coset_decompose(&self, u: &CoxElement, x: &VertexSet) -> MinimalCosetDecomposition {
        let mut v = self.identity();
        let mut w = u.clone();
        loop {
            let descent = x.iter().find(|&s| self.left_descent(&w, s));
            match descent {
                Some(s) => {
                    let g = self.generator(s);
                    v = v.mul(&g);
                    w = g.mul(&w);
                }
                None => break,
            }
        }
        MinimalCosetDecomposition { v, w }
    }

    /// Spherical iff the bilinear form is positive definite; affine iff it is
    /// positive semidefinite, every label is finite, and each connected
    /// component has a one-dimensional radical.
    pub fn classify(&self) -> GraphType {
        *self.classify.get_or_init(|| {
            let n = self.rank();
            if n == 0 {
                return GraphType::Spherical;
            }
            if self.positive_definite() {
                return GraphType::Spherical;
            }
            if !self.positive_semidefinite() || !self.graph.is_free_of_infinity() {
                return GraphType::Other;
            }
            for component in self.graph.components() {
                let k = component.len();
                let sub = KMatrix::from_fn(k, |i, j| self.gram[component[i]][component[j]].clone());
                if k - matrix_rank(&sub) != 1 {
                    return GraphType::Other;
                }
            }
            GraphType::Affine
        })
    }

    fn positive_definite(&self) -> bool {
        let n = self.rank();
        for k in 1..=n {
            let sub = KMatrix::from_fn(k, |i, j| self.gram[i][j].clone());
            if determinant(&sub).sign() <= 0 {
                return false;
            }
        }
        true
    }

    fn positive_semidefinite(&self) -> bool {
        // det(λI − B) = λⁿ + c₁λⁿ⁻¹ + …; for a symmetric matrix all
        // eigenvalues are real, and they are all ≥ 0 iff (−1)ᵏ c_k ≥ 0.
        let n = self.rank();
        let b = KMatrix::from_fn(n, |i, j| self.gram[i][j].clone());
        let coeffs = char_poly(&b);
        coeffs.iter().enumerate().skip(1).all(|(k, c)| {
            let signed = if k % 2 == 0 { c.clone() } else { -c };
            signed.sign() >= 0
        })
    }

    /// The longest element of a spherical group, by climbing right ascents.
    pub fn longest_element(&self) -> Result<CoxElement> {
        self.longest
            .get_or_init(|| {
                if self.classify() != GraphType::Spherical {
                    return Err(EngineError::Precondition(
                        "longest element requires a spherical graph".into(),
                    ));
                }
                let mut w = self.identity();
                loop {
                    let ascent = (0..self.rank()).find(|&s| !self.right_descent(&w, s));
                    match ascent {
                        Some(s) => w = w.mul(&self.generator(s)),
                        None => return Ok(w),
                    }
                }
            })
            .clone()
    }

    /// The diagram permutation induced by conjugation with the longest
    /// element: w₀ s w₀ is again a generator.
    pub fn longest_twist(&self) -> Result<&[usize]> {
        if self.classify() != GraphType::Spherical {
            return Err(EngineError::Precondition(
                "diagram twist requires a spherical graph".into(),
            ));
        }
        Ok(self.tau_perm.get_or_init(|| {
            let w0 = self.longest_element().expect("spherical checked");
            (0..self.rank())
                .map(|s| {
                    let conj = w0.mul(&self.generator(s)).mul(&w0);
                    (0..self.rank())
                        .find(|&t| conj.mat == self.gens[t])
                        .expect("w0 conjugate of a generator is a generator")
                })
                .collect()
        }))
    }

    /// Scratch context for the full subgraph on `set`; words move between the
    /// two vertex numberings through `VertexSet::local_index`/`global_index`.
    pub fn subcontext(&self, set: &VertexSet) -> Result<Arc<GroupContext>> {
        GroupContext::new(self.graph.induced(set))
    }
}

/// Sign of a root vector stored as a matrix column. Roots have all
/// coordinates of one sign; the first nonzero coordinate decides.
fn column_sign(m: &KMatrix, col: usize) -> i8 {
    let mut sign = 0;
    for i in 0..m.n() {
        let s = m.get(i, col).sign();
        if s != 0 {
            sign = s;
            break;
        }
    }
    debug_assert!(
        (0..m.n()).all(|i| {
            let s = m.get(i, col).sign();
            s == 0 || s == sign
        }),
        "matrix column is not a root vector"
    );
    sign
}

/// Determinant by Gaussian elimination over K.
fn determinant(m: &KMatrix) -> FieldElement {
    let n = m.n();
    let spec = m.get(0, 0).spec().clone();
    let mut a: Vec<Vec<FieldElement>> = (0..n).map(|i| m.column_row(i)).collect();
    let mut det = FieldElement::one(&spec);
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return FieldElement::zero(&spec),
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inverse();
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (entry, pivot) in row.iter_mut().zip(&pivot_row).skip(col) {
                *entry = &*entry - &(&factor * pivot);
            }
        }
    }
    det
}

fn matrix_rank(m: &KMatrix) -> usize {
    let n = m.n();
    let mut a: Vec<Vec<FieldElement>> = (0..n).map(|i| m.column_row(i)).collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let pivot = match (row..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(row, pivot);
        let inv = a[row][col].inverse();
        let pivot_row = a[row].clone();
        for other in a.iter_mut().skip(row + 1) {
            if other[col].is_zero() {
                continue;
            }
            let factor = &other[col] * &inv;
            for (entry, pivot) in other.iter_mut().zip(&pivot_row).skip(col) {
                *entry = &*entry - &(&factor * pivot);
            }
        }
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    rank
}

/// Characteristic polynomial coefficients [1, c₁, …, c_n] of det(λI − B),
/// by the Faddeev–LeVerrier recurrence.
fn char_poly(b: &KMatrix) -> Vec<FieldElement> {
    let n = b.n();
    let spec = b.get(0, 0).spec().clone();
    let mut coeffs = vec![FieldElement::one(&spec)];
    let mut m = KMatrix::identity(&spec, n); // M₀ = I with c₀ = 1
    for k in 1..=n {
        // M_k = B·M_{k−1} + c_{k−1} I handled incrementally below.
        let bm = b.mul(&m);
        let mut trace = FieldElement::zero(&spec);
        for i in 0..n {
            trace = &trace + bm.get(i, i);
        }
        let ck = trace.scale(&num_rational::BigRational::new(
            num_bigint::BigInt::from(-1),
            num_bigint::BigInt::from(k as i64),
        ));
        m = KMatrix::from_fn(n, |i, j| {
            if i == j {
                bm.get(i, j) + &ck
            } else {
                bm.get(i, j).clone()
            }
        });
        coeffs.push(ck);
    }
    coeffs
}

impl KMatrix {
    fn column_row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.n).map(|j| self.get(i, j).clone()).collect()
    }
}

impl GroupContext {
    /// The simple root α_s.
    pub fn simple_root(&self, s: usize) -> Root {
        let mut coords = vec![FieldElement::zero(&self.field); self.rank()];
        coords[s] = FieldElement::one(&self.field);
        Root::new(coords)
    }

    /// Matrix action of w on a root.
    pub fn act(&self, w: &CoxElement, r: &Root) -> Root {
        Root::new(w.mat.act(r.coords()))
    }

    pub fn act_inv(&self, w: &CoxElement, r: &Root) -> Root {
        Root::new(w.inv.act(r.coords()))
    }

    /// w(α_s) without building a separate root first.
    pub fn act_on_simple(&self, w: &CoxElement, s: usize) -> Root {
        Root::new(w.mat.column(s))
    }

    /// ρ(s)(v) = v − ⟨v, α_s⟩ α_s, applied directly.
    pub fn apply_generator(&self, s: usize, r: &Root) -> Root {
        let mut coords = r.coords().to_vec();
        let mut inner = FieldElement::zero(&self.field);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                inner = &inner + &(c * &self.gram[i][s]);
            }
        }
        coords[s] = &coords[s] - &inner;
        Root::new(coords)
    }

    /// The bilinear form ⟨a, b⟩.
    pub fn inner(&self, a: &Root, b: &Root) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords().iter().enumerate() {
                if !bj.is_zero() {
                    acc = &acc + &(&(ai * bj) * &self.gram[i][j]);
                }
            }
        }
        acc
    }
}
