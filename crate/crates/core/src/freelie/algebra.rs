//! Free graded Lie algebras with a canonical basis and normal forms.
//!
//! The basis in each degree consists of the standard bracketings of the
//! Lyndon words of that degree, together with `[b(w), b(w)]` for every
//! Lyndon word `w` of odd degree. Elements are stored by coordinates in this
//! basis. Products, derivations and substitutions are computed in the tensor
//! algebra and brought back by solving against the embedded basis, one
//! multidegree block at a time; the block solves are cached.

use super::expr::{self, format_terms, is_identifier, LieExpression, Tree};
use super::lyndon::{is_lyndon, lyndon_words_of_degree, standard_factorization};
use super::tensor::{Tensor, Word};
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{odd, Rational};
use crate::error::DgError;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

/// A canonical basis element: the bracketed Lyndon word `root`, or its
/// square when `square` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisKey {
    root: Box<[u16]>,
    square: bool,
}

impl BasisKey {
    pub fn letter(i: u16) -> BasisKey {
        BasisKey {
            root: vec![i].into_boxed_slice(),
            square: false,
        }
    }

    pub fn lyndon(w: &[u16]) -> BasisKey {
        debug_assert!(is_lyndon(w));
        BasisKey {
            root: w.into(),
            square: false,
        }
    }

    pub fn square_of(w: &[u16]) -> BasisKey {
        debug_assert!(is_lyndon(w));
        BasisKey {
            root: w.into(),
            square: true,
        }
    }

    pub fn root(&self) -> &[u16] {
        &self.root
    }

    pub fn is_square(&self) -> bool {
        self.square
    }

    pub fn len(&self) -> usize {
        self.root.len() * if self.square { 2 } else { 1 }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_letter(&self) -> Option<u16> {
        (!self.square && self.root.len() == 1).then(|| self.root[0])
    }

    fn letters(&self) -> impl Iterator<Item = u16> + '_ {
        let second: &[u16] = if self.square { &self.root } else { &[] };
        self.root.iter().chain(second.iter()).copied()
    }

    /// The leading word of the expansion: `w`, or `ww` for a square.
    pub fn word(&self) -> Word {
        self.letters().collect()
    }

    pub fn content(&self) -> Word {
        let mut c = self.word();
        c.sort_unstable();
        c
    }
}

impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous element of a free graded Lie algebra in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    degree: i64,
    terms: BTreeMap<BasisKey, Rational>,
}

impl LieElement {
    pub fn zero(degree: i64) -> LieElement {
        LieElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(key: BasisKey, degree: i64) -> LieElement {
        let mut e = LieElement::zero(degree);
        e.terms.insert(key, Rational::one());
        e
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, Rational> {
        &self.terms
    }

    pub fn coeff(&self, key: &BasisKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`. A zero summand may have any degree.
    pub fn add_scaled(&mut self, other: &LieElement, c: &Rational) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
        }
        assert_eq!(self.degree, other.degree, "adding Lie elements of different degrees");
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut e = self.clone();
        e.add_scaled(other, &Rational::one());
        e
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut e = self.clone();
        e.add_scaled(other, &-Rational::one());
        e
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let mut e = LieElement::zero(self.degree);
        e.add_scaled(self, c);
        e.degree = self.degree;
        e
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-Rational::one())
    }

    /// Largest word length among the terms (0 for zero).
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn min_length(&self) -> usize {
        self.terms.keys().map(|k| k.len()).min().unwrap_or(0)
    }

    /// The part spanned by basis elements of the given word length.
    pub fn length_part(&self, len: usize) -> LieElement {
        LieElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() == len)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

pub struct DegreeBasis {
    pub keys: Vec<BasisKey>,
    position: HashMap<BasisKey, usize>,
    by_content: HashMap<Word, Vec<usize>>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn position(&self, key: &BasisKey) -> Option<usize> {
        self.position.get(key).copied()
    }
}

struct Block {
    keys: Vec<BasisKey>,
    pivots: Vec<Word>,
    inverse: Matrix,
}

#[derive(Default)]
struct Cache {
    bases: HashMap<i64, Arc<DegreeBasis>>,
    blocks: HashMap<Word, Arc<Block>>,
    expansions: HashMap<BasisKey, Arc<Tensor>>,
}

/// The free graded Lie algebra on an ordered list of positive-degree generators.
pub struct FreeLie {
    names: Vec<String>,
    degrees: Vec<i64>,
    index: HashMap<String, u16>,
    cache: RwLock<Cache>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLie")
            .field("names", &self.names)
            .field("degrees", &self.degrees)
            .finish()
    }
}

impl PartialEq for FreeLie {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.degrees == other.degrees
    }
}

impl FreeLie {
    pub fn new<S: AsRef<str>>(generators: &[(S, i64)]) -> Result<FreeLie, DgError> {
        if generators.len() > u16::MAX as usize {
            return Err(DgError::InvalidPresentation("too many generators".into()));
        }
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (i, (name, degree)) in generators.iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(DgError::InvalidPresentation(format!("generator name {name:?} is not an identifier")));
            }
            if *degree < 1 {
                return Err(DgError::NonPositiveDegree {
                    generator: name.to_string(),
                    degree: *degree,
                });
            }
            if index.insert(name.to_string(), i as u16).is_some() {
                return Err(DgError::InvalidPresentation(format!("duplicate generator {name:?}")));
            }
            names.push(name.to_string());
            degrees.push(*degree);
        }
        Ok(FreeLie {
            names,
            degrees,
            index,
            cache: RwLock::new(Cache::default()),
        })
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn gen_degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).map(|&i| i as usize)
    }

    pub fn word_degree(&self, w: &[u16]) -> i64 {
        w.iter().map(|&c| self.degrees[c as usize]).sum()
    }

    pub fn key_degree(&self, k: &BasisKey) -> i64 {
        self.word_degree(&k.word())
    }

    pub fn generator(&self, i: usize) -> LieElement {
        LieElement::basis(BasisKey::letter(i as u16), self.degrees[i])
    }

    /// Canonical basis of the given degree, sorted by word length and then
    /// lexicographically by word.
    pub fn basis(&self, degree: i64) -> Arc<DegreeBasis> {
        if let Some(b) = self.cache.read().expect("cache lock").bases.get(&degree) {
            return b.clone();
        }
        let mut keys: Vec<BasisKey> = lyndon_words_of_degree(&self.degrees, degree)
            .iter()
            .map(|w| BasisKey::lyndon(w))
            .collect();
        if degree % 2 == 0 && odd(degree / 2) {
            for w in lyndon_words_of_degree(&self.degrees, degree / 2) {
                keys.push(BasisKey::square_of(&w));
            }
        }
        keys.sort();
        let position = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut by_content: HashMap<Word, Vec<usize>> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            by_content.entry(k.content()).or_default().push(i);
        }
        let b = Arc::new(DegreeBasis {
            keys,
            position,
            by_content,
        });
        self.cache
            .write()
            .expect("cache lock")
            .bases
            .entry(degree)
            .or_insert(b)
            .clone()
    }

    pub fn dim(&self, degree: i64) -> usize {
        if degree < 1 {
            0
        } else {
            self.basis(degree).len()
        }
    }

    /// Image of a basis element in the tensor algebra.
    pub fn expansion(&self, key: &BasisKey) -> Arc<Tensor> {
        if let Some(t) = self.cache.read().expect("cache lock").expansions.get(key) {
            return t.clone();
        }
        let t = if let Some(c) = key.as_letter() {
            Tensor::word(vec![c])
        } else if key.square {
            let inner = BasisKey::lyndon(&key.root);
            let x = self.expansion(&inner);
            let d = self.word_degree(&key.root);
            x.commutator(d, &x, d)
        } else {
            let (u, v) = standard_factorization(&key.root);
            let (ku, kv) = (BasisKey::lyndon(u), BasisKey::lyndon(v));
            self.expansion(&ku)
                .commutator(self.word_degree(u), &self.expansion(&kv), self.word_degree(v))
        };
        let t = Arc::new(t);
        self.cache
            .write()
            .expect("cache lock")
            .expansions
            .entry(key.clone())
            .or_insert(t)
            .clone()
    }

    pub fn to_tensor(&self, x: &LieElement) -> Tensor {
        let mut t = Tensor::zero();
        for (k, c) in &x.terms {
            t.add_scaled(&self.expansion(k), c);
        }
        t
    }

    fn block(&self, content: &Word) -> Arc<Block> {
        if let Some(b) = self.cache.read().expect("cache lock").blocks.get(content) {
            return b.clone();
        }
        let degree = self.word_degree(content);
        let basis = self.basis(degree);
        let keys: Vec<BasisKey> = basis
            .by_content
            .get(content)
            .map(|ix| ix.iter().map(|&i| basis.keys[i].clone()).collect())
            .unwrap_or_default();
        let expansions: Vec<Arc<Tensor>> = keys.iter().map(|k| self.expansion(k)).collect();
        let n = keys.len();
        let leading: Vec<Word> = keys.iter().map(|k| k.word()).collect();
        let square = |rows: &[Word]| {
            let entries = rows
                .iter()
                .map(|w| expansions.iter().map(|e| e.coeff(w)).collect())
                .collect();
            Matrix::from_rows(rows.len(), n, entries)
        };
        let (pivots, inverse) = match square(&leading).inverse() {
            Some(inv) => (leading, inv),
            None => {
                let mut words: Vec<Word> = expansions.iter().flat_map(|e| e.terms().map(|(w, _)| w.clone())).collect();
                words.sort();
                words.dedup();
                let all = square(&words);
                let ech = all.transpose().echelon();
                assert_eq!(ech.rank(), n, "canonical basis must embed injectively into the tensor algebra");
                let rows: Vec<Word> = ech.pivot_cols.iter().map(|&i| words[i].clone()).collect();
                let inv = square(&rows).inverse().expect("independent rows");
                (rows, inv)
            }
        };
        let b = Arc::new(Block { keys, pivots, inverse });
        self.cache
            .write()
            .expect("cache lock")
            .blocks
            .entry(content.clone())
            .or_insert(b)
            .clone()
    }

    /// Reads a Lie element off its image in the tensor algebra. The tensor
    /// must lie in the image of the embedding and be homogeneous.
    pub fn from_tensor(&self, t: &Tensor, degree: i64) -> LieElement {
        let mut contents: Vec<Word> = t
            .terms()
            .map(|(w, _)| {
                let mut c = w.clone();
                c.sort_unstable();
                c
            })
            .collect();
        contents.sort();
        contents.dedup();
        let mut out = LieElement::zero(degree);
        for c in contents {
            debug_assert_eq!(self.word_degree(&c), degree, "inhomogeneous tensor");
            let block = self.block(&c);
            if block.keys.is_empty() {
                continue;
            }
            let v: Vec<Rational> = block.pivots.iter().map(|w| t.coeff(w)).collect();
            let x = block.inverse.mul_vec(&v);
            for (k, c) in block.keys.iter().zip(x) {
                out.add_term(k.clone(), c);
            }
        }
        out
    }

    /// As [`Self::from_tensor`], but verifies that the tensor is a Lie element.
    pub fn from_tensor_checked(&self, t: &Tensor, degree: i64) -> Option<LieElement> {
        let e = self.from_tensor(t, degree);
        (self.to_tensor(&e) == *t).then_some(e)
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let degree = x.degree + y.degree;
        if x.is_zero() || y.is_zero() {
            return LieElement::zero(degree);
        }
        let t = self
            .to_tensor(x)
            .commutator(x.degree, &self.to_tensor(y), y.degree);
        self.from_tensor(&t, degree)
    }

    /// Dense coordinates in `basis(x.degree())`.
    pub fn coords(&self, x: &LieElement) -> Vec<Rational> {
        let b = self.basis(x.degree);
        let mut v = vec![Rational::zero(); b.len()];
        for (k, c) in &x.terms {
            let i = b.position(k).expect("basis key of the right degree");
            v[i] = c.clone();
        }
        v
    }

    pub fn from_coords(&self, degree: i64, v: &[Rational]) -> LieElement {
        let b = self.basis(degree);
        assert_eq!(v.len(), b.len(), "coordinate vector length");
        let mut e = LieElement::zero(degree);
        for (k, c) in b.keys.iter().zip(v) {
            e.add_term(k.clone(), c.clone());
        }
        e
    }

    /// Coefficients of the generators in `x` (all zero unless `x` has the
    /// degree of some generator).
    pub fn linear_part(&self, x: &LieElement) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ngens()];
        for (k, c) in &x.terms {
            if let Some(i) = k.as_letter() {
                v[i as usize] = c.clone();
            }
        }
        v
    }

    pub fn is_decomposable(&self, x: &LieElement) -> bool {
        x.terms.keys().all(|k| k.len() >= 2)
    }

    pub fn key_tree(&self, k: &BasisKey) -> Tree {
        fn lyndon_tree(lie: &FreeLie, w: &[u16]) -> Tree {
            if w.len() == 1 {
                Tree::ident(lie.name(w[0] as usize))
            } else {
                let (u, v) = standard_factorization(w);
                Tree::bracket(lyndon_tree(lie, u), lyndon_tree(lie, v))
            }
        }
        let t = lyndon_tree(self, &k.root);
        if k.square {
            Tree::bracket(t.clone(), t)
        } else {
            t
        }
    }

    pub fn format_key(&self, k: &BasisKey) -> String {
        self.key_tree(k).to_string()
    }

    /// Text form in the expression grammar; zero is written `0`.
    pub fn format(&self, x: &LieElement) -> String {
        let terms: Vec<(Rational, String)> = x
            .terms
            .iter()
            .map(|(k, c)| (c.clone(), self.format_key(k)))
            .collect();
        format_terms(&terms)
    }

    fn tree_tensor(&self, t: &Tree) -> Result<(Tensor, i64), DgError> {
        match t {
            Tree::Ident { name, offset } => {
                let i = self.position(name).ok_or_else(|| DgError::UnknownGenerator {
                    name: name.clone(),
                    offset: *offset,
                })?;
                Ok((Tensor::word(vec![i as u16]), self.degrees[i]))
            }
            Tree::Bracket(a, b) => {
                let (ta, da) = self.tree_tensor(a)?;
                let (tb, db) = self.tree_tensor(b)?;
                Ok((ta.commutator(da, &tb, db), da + db))
            }
        }
    }

    pub fn element(&self, e: &LieExpression) -> Result<LieElement, DgError> {
        let mut total = Tensor::zero();
        let mut degree = None;
        for term in &e.terms {
            let (t, d) = self.tree_tensor(&term.tree)?;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(DgError::InhomogeneousExpression {
                        offset: term.offset,
                        expected: d0,
                        found: d,
                    })
                }
                _ => {}
            }
            total.add_scaled(&t, &term.coeff);
        }
        let degree = degree.expect("grammar requires at least one term");
        Ok(self.from_tensor(&total, degree))
    }

    pub fn parse(&self, text: &str) -> Result<LieElement, DgError> {
        let e = expr::parse(text)?;
        self.element(&e)
    }

    /// Applies a derivation of degree `k` with the given generator values
    /// (as tensors) to a tensor. When `f` is supplied the derivation is an
    /// `f`-derivation into another algebra and `f` gives the generator images
    /// used on either side of the differentiated letter.
    pub fn derive_tensor(&self, t: &Tensor, k: i64, values: &[Arc<Tensor>], f: Option<&[Arc<Tensor>]>) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in t.terms() {
            let mut prefix_degree = 0;
            for (i, &letter) in w.iter().enumerate() {
                let v = &values[letter as usize];
                if !v.is_zero() {
                    let mut coeff = c.clone();
                    if odd(k * prefix_degree) {
                        coeff = -coeff;
                    }
                    match f {
                        None => {
                            for (u, a) in v.terms() {
                                let mut nw = Vec::with_capacity(w.len() + u.len());
                                nw.extend_from_slice(&w[..i]);
                                nw.extend_from_slice(u);
                                nw.extend_from_slice(&w[i + 1..]);
                                out.add_term(nw, a * &coeff);
                            }
                        }
                        Some(f) => {
                            let mut prod = Tensor::unit();
                            for &l in &w[..i] {
                                prod = prod.mul(&f[l as usize]);
                            }
                            prod = prod.mul(v);
                            for &l in &w[i + 1..] {
                                prod = prod.mul(&f[l as usize]);
                            }
                            out.add_scaled(&prod, &coeff);
                        }
                    }
                }
                prefix_degree += self.degrees[letter as usize];
            }
        }
        out
    }

    /// Substitutes tensors for the letters of each word.
    pub fn substitute_tensor(&self, t: &Tensor, images: &[Arc<Tensor>]) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in t.terms() {
            let mut prod = Tensor::unit();
            for &l in w {
                prod = prod.mul(&images[l as usize]);
                if prod.is_zero() {
                    break;
                }
            }
            out.add_scaled(&prod, c);
        }
        out
    }

    /// All iterated brackets of the given elements of total degree `degree`,
    /// as a spanning set of the generated subalgebra there.
    pub fn generated_span(&self, elements: &[LieElement], degree: i64) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        let elements: Vec<&LieElement> = elements.iter().filter(|e| !e.is_zero() && e.degree() >= 1).collect();
        // right-normed brackets [e_1,[e_2,...,e_r]] span the generated subalgebra
        fn rec(lie: &FreeLie, els: &[&LieElement], rest: i64, acc: Option<LieElement>, out: &mut Vec<Vec<Rational>>) {
            if rest == 0 {
                if let Some(a) = acc {
                    if !a.is_zero() {
                        out.push(lie.coords(&a));
                    }
                }
                return;
            }
            for e in els {
                if e.degree() <= rest {
                    let next = match &acc {
                        None => (*e).clone(),
                        Some(a) => lie.bracket(e, a),
                    };
                    if acc.is_some() && next.is_zero() {
                        continue;
                    }
                    rec(lie, els, rest - e.degree(), Some(next), out);
                }
            }
        }
        rec(self, &elements, degree, None, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qf};

    fn lie(gens: &[(&str, i64)]) -> FreeLie {
        FreeLie::new(gens).unwrap()
    }

    #[test]
    fn small_bases() {
        let even = lie(&[("x", 2)]);
        assert_eq!(even.dim(4), 0);
        let oddx = lie(&[("x", 1)]);
        assert_eq!(oddx.dim(2), 1);
        assert_eq!(oddx.format_key(&oddx.basis(2).keys[0]), "[x,x]");
        assert_eq!(oddx.dim(3), 0);
        let ab = lie(&[("a", 2), ("b", 2)]);
        assert_eq!((ab.dim(2), ab.dim(4), ab.dim(6)), (2, 1, 2));
        let names: Vec<String> = ab.basis(6).keys.iter().map(|k| ab.format_key(k)).collect();
        assert_eq!(names, vec!["[a,[a,b]]", "[[a,b],b]"]);
    }

    #[test]
    fn normal_forms() {
        let ab = lie(&[("a", 2), ("b", 2)]);
        assert!(ab.parse("[a,a]").unwrap().is_zero());
        let yx = lie(&[("x", 2), ("y", 2)]).parse("[y,x]").unwrap();
        assert_eq!(lie(&[("x", 2), ("y", 2)]).format(&yx), "-1*[x,y]");
        let l = ab.parse("[[a,b],b]").unwrap();
        let r = ab.parse("-1*[b,[a,b]]").unwrap();
        assert_eq!(l, r);
        let x = ab.bracket(&ab.parse("[a,b]").unwrap(), &ab.generator(0));
        assert_eq!(x, ab.parse("-1*[a,[a,b]]").unwrap());
        assert_eq!(ab.parse("1/2*[a,b] + 1/2*[a,b]").unwrap().coeff(&ab.basis(4).keys[0]), q(1));
        assert!(matches!(ab.parse("a + [a,b]"), Err(DgError::InhomogeneousExpression { .. })));
        assert!(matches!(ab.parse("[a,c]"), Err(DgError::UnknownGenerator { offset: 3, .. })));
        let _ = qf(1, 2);
    }

    #[test]
    fn odd_squares() {
        let l = lie(&[("x", 1), ("y", 1)]);
        // [x,y] = [y,x] for odd x, y
        assert_eq!(l.parse("[x,y]").unwrap(), l.parse("[y,x]").unwrap());
        // [x,[x,x]] = 0
        assert!(l.parse("[x,[x,x]]").unwrap().is_zero());
        assert_eq!(l.dim(2), 3);
    }
}
