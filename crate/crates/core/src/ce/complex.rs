//! Chevalley–Eilenberg chains: graded-symmetric words in the suspension
//! `s·g`, with the internal and the bracket part of the differential.

use crate::algebra::basis::GradedBasis;
use crate::algebra::complex::{ChainComplexSlice, ComplexError};
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{odd, Rational};
use crate::dgla::{unit, DgLieAlgebra, ProductDgLa, SharedDgla};
use crate::error::DgError;
use crate::report::Verdict;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// A basis element of `g`: (degree in g, index).
type Letter = (i64, usize);

/// A sorted word; odd letters of `s·g` appear at most once.
pub type Word = Vec<Letter>;

fn sdeg(l: &Letter) -> i64 {
    l.0 + 1
}

/// Sorts a sequence of letters in the free graded-commutative algebra,
/// returning the Koszul sign, or `None` if the product vanishes.
pub fn normalize(mut letters: Vec<Letter>) -> Option<(bool, Word)> {
    let mut negative = false;
    // insertion sort, tracking swaps of adjacent letters
    for i in 1..letters.len() {
        let mut j = i;
        while j > 0 && letters[j - 1] > letters[j] {
            if odd(sdeg(&letters[j - 1]) * sdeg(&letters[j])) {
                negative = !negative;
            }
            letters.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in letters.windows(2) {
        if w[0] == w[1] && odd(sdeg(&w[0])) {
            return None;
        }
    }
    Some((negative, letters))
}

/// Chevalley–Eilenberg chains of `g` in total degrees `0..=max`.
pub struct CeComplex {
    g: SharedDgla,
    words: BTreeMap<i64, Vec<Word>>,
    complex: ChainComplexSlice,
}

/// The degrees of `g` needed for chains up to total degree `max`.
pub fn required_window(max: i64) -> (i64, i64) {
    (0, max - 1)
}

fn enumerate(g: &dyn DgLieAlgebra, max: i64) -> BTreeMap<i64, Vec<Word>> {
    let letters: Vec<Letter> = (0..max).flat_map(|k| (0..g.dim(k)).map(move |i| (k, i))).collect();
    let mut out: BTreeMap<i64, Vec<Word>> = (0..=max).map(|n| (n, Vec::new())).collect();
    fn rec(letters: &[Letter], start: usize, word: &mut Word, total: i64, max: i64, out: &mut BTreeMap<i64, Vec<Word>>) {
        out.get_mut(&total).expect("within range").push(word.clone());
        for i in start..letters.len() {
            let l = letters[i];
            let d = sdeg(&l);
            if total + d > max {
                continue;
            }
            // odd letters at most once: continue from the next letter
            let next = if odd(d) { i + 1 } else { i };
            word.push(l);
            rec(letters, next, word, total + d, max, out);
            word.pop();
        }
    }
    rec(&letters, 0, &mut Vec::new(), 0, max, &mut out);
    out
}

impl CeComplex {
    /// Needs `g` known and zero below degree 0, and known in `0..max`.
    pub fn new(g: SharedDgla, max: i64) -> Result<CeComplex, DgError> {
        let (lo, hi) = required_window(max);
        let (wlo, whi) = g.window();
        for k in lo..=hi {
            if !g.knows(k) {
                return Err(ComplexError::WindowTooNarrow {
                    degree: max,
                    missing: k,
                    min: wlo,
                    max: whi,
                }
                .into());
            }
        }
        for k in wlo..0 {
            if g.dim(k) > 0 {
                return Err(DgError::Invalid(format!("g has {} basis elements in negative degree {k}", g.dim(k))));
            }
        }
        let words = enumerate(g.as_ref(), max);
        let mut basis = GradedBasis::default();
        for (n, ws) in &words {
            for w in ws {
                let name: Vec<String> = w.iter().map(|(k, i)| format!("s{}", g.basis_name(*k, *i))).collect();
                basis.push(if name.is_empty() { "1".to_string() } else { name.join("^") }, *n)?;
            }
        }
        let mut ce = CeComplex {
            g,
            words,
            complex: ChainComplexSlice::new(0, 0, GradedBasis::default(), Vec::new()),
        };
        let mut blocks = Vec::new();
        for n in 1..=max {
            blocks.push((n, ce.differential_block(n)));
        }
        ce.complex = ChainComplexSlice::new(0, max, basis, blocks);
        Ok(ce)
    }

    pub fn words(&self, n: i64) -> &[Word] {
        &self.words[&n]
    }

    pub fn complex(&self) -> &ChainComplexSlice {
        &self.complex
    }

    fn differential_block(&self, n: i64) -> Matrix {
        let index: HashMap<&Word, usize> = self.words[&(n - 1)].iter().enumerate().map(|(i, w)| (w, i)).collect();
        let src = &self.words[&n];
        let mut m = Matrix::zeros(index.len(), src.len());
        for (c, w) in src.iter().enumerate() {
            for (coef, word) in self.d_word(w) {
                let r = index[&word];
                m.add_to(r, c, &coef);
            }
        }
        m
    }

    /// `d(sx_1 ∧ … ∧ sx_k) = -Σ (-1)^{n_i} … s(dx_i) …
    ///  + Σ_{i<j} (-1)^{|sx_i| + n_ij} s[x_i, x_j] ∧ …`.
    fn d_word(&self, w: &Word) -> Vec<(Rational, Word)> {
        let g = self.g.as_ref();
        let mut out = Vec::new();
        let mut push = |c: Rational, letters: Vec<Letter>| {
            if let Some((neg, word)) = normalize(letters) {
                out.push((if neg { -c } else { c }, word));
            }
        };
        let mut prefix = 0;
        for (i, &(k, idx)) in w.iter().enumerate() {
            if k >= 1 {
                let dx = g.differential(k, &unit(g.dim(k), idx)).expect("known degree");
                for (j, c) in dx.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut letters = w.clone();
                    letters[i] = (k - 1, j);
                    let s = if odd(prefix) { c.clone() } else { -c.clone() };
                    push(s, letters);
                }
            }
            prefix += sdeg(&(k, idx));
        }
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                let (a, b) = (w[i], w[j]);
                // move sx_i, sx_j to the front
                let mut sign = odd(sdeg(&a));
                let before_i: i64 = w[..i].iter().map(sdeg).sum();
                let between: i64 = w[..j].iter().map(sdeg).sum::<i64>() - sdeg(&a);
                if odd(sdeg(&a) * before_i) {
                    sign = !sign;
                }
                if odd(sdeg(&b) * between) {
                    sign = !sign;
                }
                let k = a.0 + b.0;
                if !g.knows(k) {
                    continue;
                }
                let Some(br) = g.bracket(a.0, &unit(g.dim(a.0), a.1), b.0, &unit(g.dim(b.0), b.1)) else {
                    continue;
                };
                let rest: Vec<Letter> = w.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, l)| *l).collect();
                for (t, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut letters = vec![(k, t)];
                    letters.extend_from_slice(&rest);
                    push(if sign { -c.clone() } else { c.clone() }, letters);
                }
            }
        }
        out
    }

    /// Betti numbers of the chains in degrees `0..=hi`, `hi` below the top.
    pub fn chain_betti(&self, hi: i64) -> Vec<usize> {
        let rank = |k: i64| if k >= 1 { self.complex.d(k).map_or(0, |m| m.rank()) } else { 0 };
        (0..=hi).map(|k| self.complex.dim(k) - rank(k) - rank(k + 1)).collect()
    }
}

/// `C*_CE(g; M) = Hom(C^CE_*(g), M)` for trivial coefficients `M = Q^m`,
/// as a chain complex in degrees `-max..=0` (cohomological degree `n` sits
/// in degree `-n`).
pub fn cochain_complex(ce: &CeComplex, m: usize) -> Result<ChainComplexSlice, DgError> {
    let c = ce.complex();
    let (_, max) = c.window();
    let mut basis = GradedBasis::default();
    for n in 0..=max {
        for i in 0..c.dim(n) * m {
            basis.push(format!("c{n}.{i}"), -n)?;
        }
    }
    let mut blocks = Vec::new();
    for n in 0..max {
        // δ: C^n -> C^{n+1}, f ↦ f∘d
        let d = c.d(n + 1).expect("inside the window").transpose();
        let mut big = Matrix::zeros(d.rows() * m, d.cols() * m);
        for r in 0..d.rows() {
            for col in 0..d.cols() {
                let x = d.get(r, col);
                if x.is_zero() {
                    continue;
                }
                for t in 0..m {
                    big.set(r * m + t, col * m + t, x.clone());
                }
            }
        }
        blocks.push((-n, big));
    }
    Ok(ChainComplexSlice::new(-max, 0, basis, blocks))
}

/// Cohomology with coefficients in `Q^m`, degrees `0..=hi`.
pub fn ce_cohomology(g: SharedDgla, m: usize, hi: i64) -> Result<Vec<usize>, DgError> {
    let ce = CeComplex::new(g, hi + 1)?;
    let co = cochain_complex(&ce, m)?;
    let mut out = Vec::new();
    for n in 0..=hi {
        let dim = co.dim(-n);
        let out_rank = co.d(-n).map_or(0, |x| x.rank());
        let in_rank = if n == 0 { 0 } else { co.d(-n + 1).map_or(0, |x| x.rank()) };
        out.push(dim - out_rank - in_rank);
    }
    Ok(out)
}

/// Chain dimensions in degrees `0..=hi`.
pub fn chain_dims(g: SharedDgla, hi: i64) -> Result<Vec<usize>, DgError> {
    let ce = CeComplex::new(g, hi)?;
    Ok((0..=hi).map(|n| ce.words(n).len()).collect())
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len()).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

/// Künneth comparison for `g × h` with coefficients `Q^m ⊗ Q^n`.
pub fn ce_product_check(g: SharedDgla, h: SharedDgla, m: usize, n: usize, hi: i64) -> Result<Vec<Verdict>, DgError> {
    let gh: SharedDgla = Arc::new(ProductDgLa::new(g.clone(), h.clone()));
    let dims = (chain_dims(g.clone(), hi)?, chain_dims(h.clone(), hi)?, chain_dims(gh.clone(), hi)?);
    let betti = (
        ce_cohomology(g, m, hi)?,
        ce_cohomology(h, n, hi)?,
        ce_cohomology(gh, m * n, hi)?,
    );
    let mut out = Vec::new();
    let expect = convolve(&dims.0, &dims.1);
    out.push(if expect == dims.2 {
        Verdict::pass("chain dimensions multiply")
    } else {
        Verdict::fail("chain dimensions multiply", format!("{:?} vs {:?}", dims.2, expect))
    });
    let expect = convolve(&betti.0, &betti.1);
    out.push(if expect == betti.2 {
        Verdict::pass("Künneth formula for cohomology")
    } else {
        Verdict::fail("Künneth formula for cohomology", format!("{:?} vs {:?}", betti.2, expect))
    });
    Ok(out)
}
