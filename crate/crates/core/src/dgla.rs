//! A common interface for finite slices of dg Lie algebras, with structure
//! checks, homology, and two concrete kinds: tables and products.

use crate::algebra::basis::GradedBasis;
use crate::algebra::complex::ChainComplexSlice;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{is_zero_vec, odd, Rational};
use crate::error::DgError;
use crate::report::Verdict;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A dg Lie algebra known on a window of degrees, in coordinates.
///
/// `differential` and `bracket` return `None` when the result lands in a
/// degree that is not known.
pub trait DgLieAlgebra: Send + Sync {
    fn window(&self) -> (i64, i64);

    fn knows(&self, degree: i64) -> bool {
        let (a, b) = self.window();
        a <= degree && degree <= b
    }

    fn dim(&self, degree: i64) -> usize;

    fn differential(&self, degree: i64, x: &[Rational]) -> Option<Vec<Rational>>;

    fn bracket(&self, i: i64, x: &[Rational], j: i64, y: &[Rational]) -> Option<Vec<Rational>>;

    fn basis_name(&self, degree: i64, i: usize) -> String {
        format!("e{degree}.{i}")
    }
}

pub type SharedDgla = Arc<dyn DgLieAlgebra>;

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b * c;
    }
}

pub fn neg(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| -x).collect()
}

pub fn sum(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Matrix of the differential leaving degree `k`.
pub fn differential_matrix<G: DgLieAlgebra + ?Sized>(g: &G, k: i64) -> Option<Matrix> {
    let n = g.dim(k);
    let cols: Option<Vec<Vec<Rational>>> = (0..n).map(|i| g.differential(k, &unit(n, i))).collect();
    Some(Matrix::from_columns(g.dim(k - 1), &cols?))
}

/// The underlying chain complex on `lo..=hi`.
pub fn chain_complex<G: DgLieAlgebra + ?Sized>(g: &G, lo: i64, hi: i64) -> Result<ChainComplexSlice, DgError> {
    for k in lo..=hi {
        if !g.knows(k) {
            let (min, max) = g.window();
            return Err(crate::algebra::complex::ComplexError::WindowTooNarrow {
                degree: k,
                missing: k,
                min,
                max,
            }
            .into());
        }
    }
    let mut basis = GradedBasis::default();
    let mut blocks = Vec::new();
    for k in lo..=hi {
        for i in 0..g.dim(k) {
            basis.push(format!("{}#{k}.{i}", g.basis_name(k, i)), k)?;
        }
        if k > lo {
            blocks.push((k, differential_matrix(g, k).expect("degree below is known")));
        }
    }
    Ok(ChainComplexSlice::new(lo, hi, basis, blocks))
}

/// Betti numbers in degrees `lo..=hi`; needs degrees `lo-1..=hi+1`.
pub fn betti<G: DgLieAlgebra + ?Sized>(g: &G, lo: i64, hi: i64) -> Result<Vec<usize>, DgError> {
    Ok(chain_complex(g, lo - 1, hi + 1)?.betti(lo, hi)?)
}

/// Checks d² = 0, antisymmetry, Jacobi and the Leibniz rule on basis
/// elements with degrees in `lo..=hi`, visiting at most `limit` triples.
pub fn check_structure<G: DgLieAlgebra + ?Sized>(g: &G, lo: i64, hi: i64, limit: usize) -> Vec<Verdict> {
    let mut elems: Vec<(i64, Vec<Rational>, String)> = Vec::new();
    for k in lo..=hi {
        if !g.knows(k) {
            continue;
        }
        let n = g.dim(k);
        for i in 0..n {
            elems.push((k, unit(n, i), g.basis_name(k, i)));
        }
    }
    let mut out = Vec::new();
    let mut fail = None;
    for (k, x, name) in &elems {
        if let Some(dx) = g.differential(*k, x) {
            if let Some(ddx) = g.differential(k - 1, &dx) {
                if !is_zero_vec(&ddx) {
                    fail = Some(format!("d(d({name})) != 0"));
                    break;
                }
            }
        }
    }
    out.push(Verdict::from_result("d^2 = 0", fail.map_or(Ok(()), Err)));

    let mut anti = None;
    let mut leibniz = None;
    'pairs: for (i, (a, x, xn)) in elems.iter().enumerate() {
        for (b, y, yn) in elems.iter().skip(i) {
            let (Some(xy), Some(yx)) = (g.bracket(*a, x, *b, y), g.bracket(*b, y, *a, x)) else { continue };
            let s = if odd(a * b) { Rational::one() } else { -Rational::one() };
            let mut r = xy.clone();
            add_scaled(&mut r, &yx, &-s);
            if !is_zero_vec(&r) && anti.is_none() {
                anti = Some(format!("[{xn},{yn}] != -(-1)^(|x||y|) [{yn},{xn}]"));
            }
            // d[x,y] = [dx,y] + (-1)^|x| [x,dy]
            let lhs = g.differential(a + b, &xy);
            let dx = g.differential(*a, x);
            let dy = g.differential(*b, y);
            if let (Some(lhs), Some(dx), Some(dy)) = (lhs, dx, dy) {
                let t1 = g.bracket(a - 1, &dx, *b, y);
                let t2 = g.bracket(*a, x, b - 1, &dy);
                if let (Some(t1), Some(t2)) = (t1, t2) {
                    let mut r = lhs;
                    add_scaled(&mut r, &t1, &-Rational::one());
                    let c = if odd(*a) { Rational::one() } else { -Rational::one() };
                    add_scaled(&mut r, &t2, &c);
                    if !is_zero_vec(&r) && leibniz.is_none() {
                        leibniz = Some(format!("d[{xn},{yn}] violates the Leibniz rule"));
                    }
                }
            }
            if anti.is_some() && leibniz.is_some() {
                break 'pairs;
            }
        }
    }
    out.push(Verdict::from_result("graded antisymmetry", anti.map_or(Ok(()), Err)));
    out.push(Verdict::from_result("d is a derivation", leibniz.map_or(Ok(()), Err)));

    let n = elems.len();
    let total = n * n * n;
    let stride = if total > limit && limit > 0 { total / limit + 1 } else { 1 };
    let mut jac = None;
    let mut t = 0usize;
    while t < total && jac.is_none() {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        t += stride;
        let ((a, x, xn), (b, y, yn), (c, z, zn)) = (&elems[i], &elems[j], &elems[k]);
        let lhs = g.bracket(*b, y, *c, z).and_then(|yz| g.bracket(*a, x, b + c, &yz));
        let r1 = g.bracket(*a, x, *b, y).and_then(|xy| g.bracket(a + b, &xy, *c, z));
        let r2 = g.bracket(*a, x, *c, z).and_then(|xz| g.bracket(*b, y, a + c, &xz));
        if let (Some(lhs), Some(r1), Some(r2)) = (lhs, r1, r2) {
            let mut r = lhs;
            add_scaled(&mut r, &r1, &-Rational::one());
            let s = if odd(a * b) { Rational::one() } else { -Rational::one() };
            add_scaled(&mut r, &r2, &s);
            if !is_zero_vec(&r) {
                jac = Some(format!("Jacobi fails on ({xn}, {yn}, {zn})"));
            }
        }
    }
    out.push(Verdict::from_result("graded Jacobi", jac.map_or(Ok(()), Err)));
    out
}

/// A dg Lie algebra given by finite structure tables; zero outside its basis.
#[derive(Debug, Clone)]
pub struct TableDgLa {
    basis: GradedBasis,
    /// Global index of each basis element within its degree block.
    differential: BTreeMap<usize, Vec<(usize, Rational)>>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl TableDgLa {
    /// `brackets` lists `[e_i, e_j]` for some ordered pairs; the reversed
    /// pairs follow by antisymmetry and must not be listed with another value.
    pub fn new(
        basis: GradedBasis,
        differential: BTreeMap<usize, Vec<(usize, Rational)>>,
        brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    ) -> Result<TableDgLa, DgError> {
        let n = basis.len();
        let mut full: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for ((i, j), v) in &brackets {
            if *i >= n || *j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(DgError::DimensionMismatch("bracket table index out of range".into()));
            }
            let deg = basis.degree(*i) + basis.degree(*j);
            if v.iter().any(|(k, c)| !c.is_zero() && basis.degree(*k) != deg) {
                return Err(DgError::Invalid(format!(
                    "[{},{}] has a term of the wrong degree",
                    basis.name(*i),
                    basis.name(*j)
                )));
            }
            let s = if odd(basis.degree(*i) * basis.degree(*j)) { Rational::one() } else { -Rational::one() };
            let rev: Vec<(usize, Rational)> = v.iter().map(|(k, c)| (*k, c * &s)).collect();
            if let Some(prev) = full.get(&(*j, *i)) {
                if !same_sparse(prev, &rev) {
                    return Err(DgError::Invalid(format!(
                        "[{},{}] and [{},{}] are inconsistent with antisymmetry",
                        basis.name(*i),
                        basis.name(*j),
                        basis.name(*j),
                        basis.name(*i)
                    )));
                }
            }
            full.insert((*i, *j), v.clone());
            full.insert((*j, *i), rev);
        }
        for (i, v) in &differential {
            if *i >= n || v.iter().any(|(k, c)| *k >= n || (!c.is_zero() && basis.degree(*k) != basis.degree(*i) - 1)) {
                return Err(DgError::Invalid("differential table entry out of range or of the wrong degree".into()));
            }
        }
        Ok(TableDgLa {
            basis,
            differential,
            brackets: full,
        })
    }

    /// An abelian algebra with the given basis and zero differential.
    pub fn abelian(basis: GradedBasis) -> TableDgLa {
        TableDgLa {
            basis,
            differential: BTreeMap::new(),
            brackets: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    fn global(&self, degree: i64, x: &[Rational]) -> Vec<(usize, Rational)> {
        self.basis
            .in_degree(degree)
            .into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (g, c.clone()))
            .collect()
    }

    fn local(&self, degree: i64, terms: &BTreeMap<usize, Rational>) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.basis.dim(degree)];
        for (g, c) in terms {
            v[self.basis.local_index(*g)] += c;
        }
        v
    }
}

fn same_sparse(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> bool {
    let collect = |v: &[(usize, Rational)]| {
        let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in v {
            *m.entry(*k).or_insert_with(Rational::zero) += c;
        }
        m.retain(|_, c| !c.is_zero());
        m
    };
    collect(a) == collect(b)
}

impl DgLieAlgebra for TableDgLa {
    fn window(&self) -> (i64, i64) {
        (self.basis.min_degree().unwrap_or(0), self.basis.max_degree().unwrap_or(0))
    }

    fn knows(&self, _degree: i64) -> bool {
        true
    }

    fn dim(&self, degree: i64) -> usize {
        self.basis.dim(degree)
    }

    fn differential(&self, degree: i64, x: &[Rational]) -> Option<Vec<Rational>> {
        let mut out = BTreeMap::new();
        for (g, c) in self.global(degree, x) {
            for (k, a) in self.differential.get(&g).into_iter().flatten() {
                *out.entry(*k).or_insert_with(Rational::zero) += a * &c;
            }
        }
        Some(self.local(degree - 1, &out))
    }

    fn bracket(&self, i: i64, x: &[Rational], j: i64, y: &[Rational]) -> Option<Vec<Rational>> {
        let mut out = BTreeMap::new();
        let ys = self.global(j, y);
        for (g, c) in self.global(i, x) {
            for (h, e) in &ys {
                for (k, a) in self.brackets.get(&(g, *h)).into_iter().flatten() {
                    *out.entry(*k).or_insert_with(Rational::zero) += a * &c * e;
                }
            }
        }
        Some(self.local(i + j, &out))
    }

    fn basis_name(&self, degree: i64, i: usize) -> String {
        self.basis.name(self.basis.in_degree(degree)[i]).to_string()
    }
}

/// The product `g × h`, with coordinates concatenated degree by degree.
pub struct ProductDgLa {
    pub left: SharedDgla,
    pub right: SharedDgla,
}

impl ProductDgLa {
    pub fn new(left: SharedDgla, right: SharedDgla) -> ProductDgLa {
        ProductDgLa { left, right }
    }

    fn split<'a>(&self, degree: i64, x: &'a [Rational]) -> (&'a [Rational], &'a [Rational]) {
        x.split_at(self.left.dim(degree))
    }
}

impl DgLieAlgebra for ProductDgLa {
    fn window(&self) -> (i64, i64) {
        let (a, b) = self.left.window();
        let (c, d) = self.right.window();
        (a.max(c), b.min(d))
    }

    fn knows(&self, degree: i64) -> bool {
        self.left.knows(degree) && self.right.knows(degree)
    }

    fn dim(&self, degree: i64) -> usize {
        self.left.dim(degree) + self.right.dim(degree)
    }

    fn differential(&self, degree: i64, x: &[Rational]) -> Option<Vec<Rational>> {
        let (a, b) = self.split(degree, x);
        let mut out = self.left.differential(degree, a)?;
        out.extend(self.right.differential(degree, b)?);
        Some(out)
    }

    fn bracket(&self, i: i64, x: &[Rational], j: i64, y: &[Rational]) -> Option<Vec<Rational>> {
        let (xa, xb) = self.split(i, x);
        let (ya, yb) = self.split(j, y);
        let mut out = self.left.bracket(i, xa, j, ya)?;
        out.extend(self.right.bracket(i, xb, j, yb)?);
        Some(out)
    }

    fn basis_name(&self, degree: i64, i: usize) -> String {
        let n = self.left.dim(degree);
        if i < n {
            format!("({},0)", self.left.basis_name(degree, i))
        } else {
            format!("(0,{})", self.right.basis_name(degree, i - n))
        }
    }
}

/// The simple Lie algebra with basis e, f, h in degree 0:
/// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> TableDgLa {
    let basis = GradedBasis::new([("e", 0), ("f", 0), ("h", 0)]).expect("distinct names");
    let two = Rational::from_integer(2.into());
    let mut br = BTreeMap::new();
    br.insert((2, 0), vec![(0, two.clone())]);
    br.insert((2, 1), vec![(1, -two)]);
    br.insert((0, 1), vec![(2, Rational::one())]);
    TableDgLa::new(basis, BTreeMap::new(), br).expect("a valid table")
}

/// The Heisenberg algebra in degree 0: `[x,y] = z`, z central.
pub fn heisenberg() -> TableDgLa {
    let basis = GradedBasis::new([("x", 0), ("y", 0), ("z", 0)]).expect("distinct names");
    TableDgLa::new(basis, BTreeMap::new(), BTreeMap::from([((0, 1), vec![(2, Rational::one())])])).expect("a valid table")
}
