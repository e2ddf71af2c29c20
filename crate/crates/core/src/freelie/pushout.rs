//! Pushouts of presentations along a shared generator-split subalgebra.

use super::algebra::{FreeLie, LieElement};
use super::morphism::Morphism;
use super::presentation::{Presentation, SubSpec};
use crate::error::DgError;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Pushout {
    pub presentation: Arc<Presentation>,
    pub left: Morphism,
    pub right: Morphism,
    /// Positions in the pushout of the shared generators, in sub order.
    pub shared: Vec<usize>,
    /// Positions in the pushout of the remaining generators of each side.
    pub left_free: Vec<usize>,
    pub right_free: Vec<usize>,
}

/// Glues `p` and `q` along the subalgebra called `along` in both (matched
/// generator by generator, in the listed order), or takes the free product
/// when `along` is `None`. Clashing names of free generators get the
/// suffixes `_1` and `_2`. The shared sub is kept under its name.
pub fn pushout(p: &Arc<Presentation>, q: &Arc<Presentation>, along: Option<&str>) -> Result<Pushout, DgError> {
    let (ps, qs): (Vec<usize>, Vec<usize>) = match along {
        None => (Vec::new(), Vec::new()),
        Some(name) => {
            let a = p.sub_generators(name)?.to_vec();
            let b = q.sub_generators(name)?.to_vec();
            (a, b)
        }
    };
    let (pl, ql) = (p.lie(), q.lie());
    if ps.len() != qs.len() {
        return Err(DgError::IncompatibleSubs(format!("shared subs have {} and {} generators", ps.len(), qs.len())));
    }
    for (&i, &j) in ps.iter().zip(&qs) {
        if pl.gen_degree(i) != ql.gen_degree(j) {
            return Err(DgError::IncompatibleSubs(format!(
                "{} has degree {} but {} has degree {}",
                pl.name(i),
                pl.gen_degree(i),
                ql.name(j),
                ql.gen_degree(j)
            )));
        }
    }
    let p_free: Vec<usize> = (0..p.ngens()).filter(|i| !ps.contains(i)).collect();
    let q_free: Vec<usize> = (0..q.ngens()).filter(|i| !qs.contains(i)).collect();
    let p_names: HashSet<&str> = p_free.iter().map(|&i| pl.name(i)).collect();
    let q_names: HashSet<&str> = q_free.iter().map(|&i| ql.name(i)).collect();
    let shared_names: HashSet<&str> = ps.iter().map(|&i| pl.name(i)).collect();
    let mut gens: Vec<(String, i64)> = ps.iter().map(|&i| (pl.name(i).to_string(), pl.gen_degree(i))).collect();
    for &i in &p_free {
        let n = pl.name(i);
        let name = if q_names.contains(n) || shared_names.contains(n) { format!("{n}_1") } else { n.to_string() };
        gens.push((name, pl.gen_degree(i)));
    }
    for &j in &q_free {
        let n = ql.name(j);
        let name = if p_names.contains(n) || shared_names.contains(n) { format!("{n}_2") } else { n.to_string() };
        gens.push((name, ql.gen_degree(j)));
    }
    let lie = Arc::new(FreeLie::new(&gens)?);
    let shared: Vec<usize> = (0..ps.len()).collect();
    let left_free: Vec<usize> = (ps.len()..ps.len() + p_free.len()).collect();
    let right_free: Vec<usize> = (ps.len() + p_free.len()..gens.len()).collect();
    let mut p_map = vec![0; p.ngens()];
    let mut q_map = vec![0; q.ngens()];
    for (k, (&i, &j)) in ps.iter().zip(&qs).enumerate() {
        p_map[i] = k;
        q_map[j] = k;
    }
    for (k, &i) in p_free.iter().enumerate() {
        p_map[i] = left_free[k];
    }
    for (k, &j) in q_free.iter().enumerate() {
        q_map[j] = right_free[k];
    }
    let rename = |src: &FreeLie, map: &[usize], x: &LieElement| {
        let images: Vec<Arc<_>> = map.iter().map(|&j| Arc::new(lie.to_tensor(&lie.generator(j)))).collect();
        lie.from_tensor(&src.substitute_tensor(&src.to_tensor(x), &images), x.degree())
    };
    let mut d: Vec<LieElement> = (0..gens.len()).map(|i| LieElement::zero(lie.gen_degree(i) - 1)).collect();
    for i in 0..p.ngens() {
        d[p_map[i]] = rename(pl, &p_map, p.d_of(i));
    }
    for j in 0..q.ngens() {
        let dj = rename(ql, &q_map, q.d_of(j));
        if qs.contains(&j) && dj != d[q_map[j]] {
            return Err(DgError::IncompatibleSubs(format!(
                "d({}) = {} does not match d({}) = {}",
                ql.name(j),
                ql.format(q.d_of(j)),
                lie.name(q_map[j]),
                lie.format(&d[q_map[j]])
            )));
        }
        d[q_map[j]] = dj;
    }
    let mut subs = BTreeMap::new();
    if let Some(name) = along {
        subs.insert(name.to_string(), SubSpec::GeneratorSplit(shared.clone()));
    }
    let presentation = Arc::new(Presentation::new(lie.clone(), d, subs)?);
    let left = super::morphism::generator_inclusion(p.clone(), presentation.clone(), &p_map)?;
    let right = super::morphism::generator_inclusion(q.clone(), presentation.clone(), &q_map)?;
    Ok(Pushout {
        presentation,
        left,
        right,
        shared,
        left_free,
        right_free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    #[test]
    fn free_product_and_gluing() {
        let a = Arc::new(Presentation::builder().generator("a", 2).build().unwrap());
        let b = Arc::new(Presentation::builder().generator("b", 2).build().unwrap());
        let po = pushout(&a, &b, None).unwrap();
        assert_eq!(po.presentation.lie().names(), &["a".to_string(), "b".to_string()]);
        assert!(all_pass(&po.left.check(None, None)));

        let x = Arc::new(
            Presentation::builder()
                .generator("s", 1)
                .generator("x", 3)
                .differential("x", "[s,s]")
                .sub_generators("S", &["s"])
                .build()
                .unwrap(),
        );
        let y = Arc::new(
            Presentation::builder()
                .generator("t", 1)
                .generator("x", 2)
                .sub_generators("S", &["t"])
                .build()
                .unwrap(),
        );
        let po = pushout(&x, &y, Some("S")).unwrap();
        assert_eq!(po.presentation.lie().names(), &["s", "x_1", "x_2"]);
        let sum = po.presentation.indecomposables(Some("S")).unwrap().basis().len();
        assert_eq!(sum, x.indecomposables(Some("S")).unwrap().basis().len() + y.indecomposables(Some("S")).unwrap().basis().len());
        assert!(all_pass(&po.right.check(None, None)));
    }
}
