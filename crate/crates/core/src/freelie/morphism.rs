//! Degree-preserving maps between presentations, given on generators.

use super::algebra::LieElement;
use super::presentation::{Indecomposables, Presentation, Rho, SubSpec};
use super::tensor::Tensor;
use crate::algebra::linmap::GradedLinearMap;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::Rational;
use crate::error::DgError;
use crate::report::Verdict;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<LieElement>,
    tensors: Vec<Arc<Tensor>>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && *self.source == *other.source && *self.target == *other.target
    }
}

impl Morphism {
    pub fn new(source: Arc<Presentation>, target: Arc<Presentation>, images: Vec<LieElement>) -> Result<Morphism, DgError> {
        if images.len() != source.ngens() {
            return Err(DgError::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.ngens()
            )));
        }
        let images: Vec<LieElement> = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { LieElement::zero(source.lie().gen_degree(i)) } else { x })
            .collect();
        let tensors = images.iter().map(|x| Arc::new(target.lie().to_tensor(x))).collect();
        Ok(Morphism {
            source,
            target,
            images,
            tensors,
        })
    }

    /// Images given as expressions in the target; generators not listed map
    /// to zero.
    pub fn from_exprs(source: Arc<Presentation>, target: Arc<Presentation>, images: &[(String, String)]) -> Result<Morphism, DgError> {
        let mut v: Vec<LieElement> = (0..source.ngens()).map(|i| LieElement::zero(source.lie().gen_degree(i))).collect();
        for (name, text) in images {
            let i = source
                .lie()
                .position(name)
                .ok_or_else(|| DgError::InvalidPresentation(format!("image given for unknown generator {name:?}")))?;
            v[i] = target.parse(text)?;
        }
        Morphism::new(source, target, v)
    }

    pub fn identity(p: Arc<Presentation>) -> Morphism {
        let images = (0..p.ngens()).map(|i| p.lie().generator(i)).collect();
        Morphism::new(p.clone(), p, images).expect("identity has one image per generator")
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &LieElement {
        &self.images[generator]
    }

    pub fn image_tensors(&self) -> &[Arc<Tensor>] {
        &self.tensors
    }

    pub fn apply(&self, x: &LieElement) -> LieElement {
        let src = self.source.lie();
        let t = src.substitute_tensor(&src.to_tensor(x), &self.tensors);
        self.target.lie().from_tensor(&t, x.degree())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Morphism) -> Morphism {
        let images = g.images.iter().map(|x| self.apply(x)).collect();
        Morphism::new(g.source.clone(), self.target.clone(), images).expect("same generator count")
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && (0..self.source.ngens()).all(|i| self.images[i] == self.source.lie().generator(i))
    }

    /// Checks degrees, compatibility with d, that the named sub is fixed,
    /// and ρ∘f = ρ when ρ is given.
    pub fn check(&self, fixed: Option<&str>, rho: Option<&Rho>) -> Vec<Verdict> {
        let (src, tgt) = (self.source.lie(), self.target.lie());
        let mut out = Vec::new();
        let bad: Vec<String> = (0..src.ngens())
            .filter(|&i| !self.images[i].is_zero() && self.images[i].degree() != src.gen_degree(i))
            .map(|i| format!("f({}) has degree {}", src.name(i), self.images[i].degree()))
            .collect();
        if !bad.is_empty() {
            out.push(Verdict::fail("degree 0", bad.join("; ")));
            return out;
        }
        out.push(Verdict::pass("degree 0"));
        let witness = (0..src.ngens()).find_map(|i| {
            let lhs = self.apply(self.source.d_of(i));
            let rhs = self.target.d(&self.images[i]);
            (lhs != rhs).then(|| {
                format!(
                    "f(d({})) = {} but d(f({})) = {}",
                    src.name(i),
                    tgt.format(&lhs),
                    src.name(i),
                    tgt.format(&rhs)
                )
            })
        });
        out.push(match witness {
            None => Verdict::pass("commutes with d"),
            Some(w) => Verdict::fail("commutes with d", w),
        });
        if let Some(name) = fixed {
            let check = format!("fixes {name}");
            let v = match (self.source.sub(name), self.target.sub(name)) {
                (Ok(s), Ok(t)) => {
                    let w = match (s, t) {
                        (SubSpec::GeneratorSplit(a), SubSpec::GeneratorSplit(b)) if a.len() == b.len() => {
                            a.iter().zip(b).find_map(|(&i, &j)| {
                                (self.images[i] != tgt.generator(j))
                                    .then(|| format!("f({}) = {}", src.name(i), tgt.format(&self.images[i])))
                            })
                        }
                        (SubSpec::ElementGenerated(a), SubSpec::ElementGenerated(b)) if a.len() == b.len() => {
                            a.iter().zip(b).find_map(|(x, y)| {
                                let fx = self.apply(x);
                                (fx != *y).then(|| format!("f({}) = {}", src.format(x), tgt.format(&fx)))
                            })
                        }
                        _ => Some("the subalgebras have different shapes".to_string()),
                    };
                    match w {
                        None => Verdict::pass(check),
                        Some(w) => Verdict::fail(check, w),
                    }
                }
                _ => Verdict::fail(check, format!("unknown subalgebra {name:?}")),
            };
            out.push(v);
        }
        if let Some(rho) = rho {
            let w = (0..src.ngens()).find_map(|i| {
                let a = rho.apply(&self.images[i]);
                (a.as_slice() != rho.value(i)).then(|| format!("rho(f({})) differs from rho({})", src.name(i), src.name(i)))
            });
            out.push(match w {
                None => Verdict::pass("preserves rho"),
                Some(w) => Verdict::fail("preserves rho", w),
            });
        }
        out
    }

    /// The induced map on indecomposables relative to `sub` (the same sub
    /// name is used on both sides).
    pub fn indec_action(&self, sub: Option<&str>) -> Result<GradedLinearMap, DgError> {
        let s = self.source.indecomposables(sub)?;
        let t = self.target.indecomposables(sub)?;
        Ok(indec_matrix(&s, &t, 0, |g| self.target.lie().linear_part(&self.images[g])))
    }

    /// Inverse of an automorphism, by inverting the linear part and then
    /// correcting word-length by word-length.
    pub fn invert(&self, rel: Option<&str>) -> Result<Morphism, DgError> {
        if *self.source != *self.target {
            return Err(DgError::InvalidMorphism("source and target differ".into()));
        }
        let p = &self.source;
        if !p.is_minimal(rel)? {
            return Err(DgError::NonMinimalAmbient(rel.unwrap_or("").to_string()));
        }
        let lie = p.lie();
        let n = p.ngens();
        let mut degrees: Vec<i64> = lie.degrees().to_vec();
        degrees.sort_unstable();
        degrees.dedup();
        // inverse of the linear part, degree by degree
        let mut lin_inv: Vec<LieElement> = (0..n).map(|i| LieElement::zero(lie.gen_degree(i))).collect();
        for &k in &degrees {
            let gens: Vec<usize> = (0..n).filter(|&i| lie.gen_degree(i) == k).collect();
            let mut m = Matrix::zeros(gens.len(), gens.len());
            for (c, &j) in gens.iter().enumerate() {
                let lin = lie.linear_part(&self.images[j]);
                for (r, &i) in gens.iter().enumerate() {
                    m.set(r, c, lin[i].clone());
                }
            }
            let inv = m.inverse().ok_or(DgError::NotInvertibleLinearPart)?;
            for (c, &j) in gens.iter().enumerate() {
                let mut x = LieElement::zero(k);
                for (r, &i) in gens.iter().enumerate() {
                    x.add_scaled(&lie.generator(i), inv.get(r, c));
                }
                lin_inv[j] = x;
            }
        }
        let ell_inv = Morphism::new(p.clone(), p.clone(), lin_inv.clone())?;
        let mut g = ell_inv.clone();
        let max_len = degrees.last().copied().unwrap_or(0) as usize + 1;
        for _ in 0..=max_len {
            let fg = self.compose(&g);
            let err: Vec<LieElement> = (0..n).map(|i| fg.images[i].sub(&lie.generator(i))).collect();
            if err.iter().all(LieElement::is_zero) {
                break;
            }
            let images = (0..n).map(|i| g.images[i].sub(&ell_inv.apply(&err[i]))).collect();
            g = Morphism::new(p.clone(), p.clone(), images)?;
        }
        if !self.compose(&g).is_identity() || !g.compose(self).is_identity() {
            return Err(DgError::NotInvertibleLinearPart);
        }
        Ok(g)
    }
}

/// Matrix of a linear map between indecomposables, given the linear part
/// (over all target generators) of the image of each source generator.
pub(crate) fn indec_matrix(
    s: &Indecomposables,
    t: &Indecomposables,
    degree: i64,
    linear: impl Fn(usize) -> Vec<Rational>,
) -> GradedLinearMap {
    let mut map = GradedLinearMap::zero(s.basis().clone(), t.basis().clone(), degree);
    for k in s.basis().degrees() {
        let cols = s.basis().in_degree(k);
        let rows = t.basis().in_degree(k + degree);
        if rows.is_empty() {
            continue;
        }
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (c, &j) in cols.iter().enumerate() {
            let lin = linear(s.generators[j]);
            for (r, &i) in rows.iter().enumerate() {
                m.set(r, c, lin[t.generators[i]].clone());
            }
        }
        map.set_block(k, m);
    }
    map
}

/// Identity-on-generators embedding data: the image of generator `i` of
/// `source` is generator `map[i]` of `target`.
pub fn generator_inclusion(source: Arc<Presentation>, target: Arc<Presentation>, map: &[usize]) -> Result<Morphism, DgError> {
    let images = map.iter().map(|&j| target.lie().generator(j)).collect();
    Morphism::new(source, target, images)
}
