#![allow(dead_code)]

use dglie::algebra::rational::Rational;
use dglie::freelie::{LieElement, Presentation, PresentationSpec};
use dglie::io;
use dglie::models::ManifoldModel;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(rel: &str) -> PathBuf {
    root().join(rel)
}

pub fn fixtures_in(dir: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

pub fn stem(p: &std::path::Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn read(path: &PathBuf) -> (String, String) {
    (path.display().to_string(), std::fs::read_to_string(path).unwrap())
}

pub fn load_presentation(path: &PathBuf) -> Arc<Presentation> {
    let (file, text) = read(path);
    Arc::new(io::parse_presentation(&file, &text).unwrap())
}

pub fn load_model(path: &PathBuf) -> ManifoldModel {
    let (file, text) = read(path);
    io::parse_model_data(&file, &text).unwrap().build().unwrap()
}

pub fn presentations() -> Vec<(String, Arc<Presentation>)> {
    fixtures_in("presentations").iter().map(|p| (stem(p), load_presentation(p))).collect()
}

pub fn models() -> Vec<(String, ManifoldModel)> {
    fixtures_in("models").iter().map(|p| (stem(p), load_model(p))).collect()
}

pub fn model(name: &str) -> ManifoldModel {
    load_model(&fixture(&format!("models/{name}.json")))
}

/// A random element of the given degree with small integer coefficients.
pub fn random_element(rng: &mut ChaCha8Rng, p: &Presentation, degree: i64, density: f64) -> LieElement {
    let lie = p.lie();
    let v: Vec<Rational> = (0..lie.dim(degree))
        .map(|_| if rng.gen_bool(density) { q(rng.gen_range(-2..=2)) } else { Rational::zero() })
        .collect();
    lie.from_coords(degree, &v)
}

/// Adds generators of random degrees `1..=max_deg` in increasing degree.
/// Each new differential, when present, is a random integer combination of
/// a basis of the cycles one degree down in the algebra built so far.
pub fn extend_random(rng: &mut ChaCha8Rng, mut spec: PresentationSpec, names: &[String], max_deg: i64) -> PresentationSpec {
    let mut degrees: Vec<i64> = names.iter().map(|_| rng.gen_range(1..=max_deg)).collect();
    degrees.sort_unstable();
    for (name, &k) in names.iter().zip(&degrees) {
        let mut dx = None;
        if k >= 2 && !spec.generators.is_empty() && rng.gen_bool(0.7) {
            let current = Presentation::from_spec(&spec).unwrap();
            let d = current.chain_slice(k - 2, k - 1).d(k - 1).unwrap();
            let kernel = d.kernel();
            let mut v = vec![Rational::zero(); current.lie().dim(k - 1)];
            for b in &kernel {
                let c = q(rng.gen_range(-2..=2));
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &c * y;
                }
            }
            let x = current.lie().from_coords(k - 1, &v);
            if !x.is_zero() {
                dx = Some(current.format(&x));
            }
        }
        spec = spec.generator(name, k);
        if let Some(e) = dx {
            spec = spec.differential(name, &e);
        }
    }
    spec
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random quasi-free presentation with at most `max_gens` generators of
/// degree at most `max_deg`.
pub fn random_presentation(rng: &mut ChaCha8Rng, max_gens: usize, max_deg: i64) -> Arc<Presentation> {
    let n = rng.gen_range(1..=max_gens);
    let spec = extend_random(rng, Presentation::builder(), &names("g", n), max_deg);
    Arc::new(spec.build().unwrap())
}

/// Rational tensors, kept separate from the library's tensor code.
pub type Tens = BTreeMap<Vec<u16>, Rational>;

pub fn tens_add(a: &mut Tens, w: Vec<u16>, c: &Rational) {
    let e = a.entry(w.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        a.remove(&w);
    }
}

pub fn tens_letter(i: u16) -> Tens {
    Tens::from([(vec![i], Rational::one())])
}

pub fn tens_scale(x: &Tens, c: &Rational) -> Tens {
    let mut out = Tens::new();
    for (w, a) in x {
        tens_add(&mut out, w.clone(), &(a * c));
    }
    out
}

pub fn tens_sum(x: &Tens, y: &Tens) -> Tens {
    let mut out = x.clone();
    for (w, a) in y {
        tens_add(&mut out, w.clone(), a);
    }
    out
}

/// `xy - (-1)^{|x||y|} yx`.
pub fn tens_commutator(x: &Tens, dx: i64, y: &Tens, dy: i64) -> Tens {
    let mut out = Tens::new();
    let s = if (dx * dy) % 2 != 0 { q(1) } else { q(-1) };
    for (u, a) in x {
        for (v, b) in y {
            let ab = a * b;
            let mut w = u.clone();
            w.extend(v);
            tens_add(&mut out, w, &ab);
            let mut w = v.clone();
            w.extend(u);
            tens_add(&mut out, w, &(&s * &ab));
        }
    }
    out
}

pub fn from_library(t: &dglie::freelie::tensor::Tensor) -> Tens {
    t.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// All bracketings of a word.
pub fn bracketings(word: &[u16], degrees: &[i64]) -> Vec<(Tens, i64)> {
    if word.len() == 1 {
        return vec![(tens_letter(word[0]), degrees[word[0] as usize])];
    }
    let mut out = Vec::new();
    for cut in 1..word.len() {
        for (l, dl) in bracketings(&word[..cut], degrees) {
            for (r, dr) in bracketings(&word[cut..], degrees) {
                out.push((tens_commutator(&l, dl, &r, dr), dl + dr));
            }
        }
    }
    out
}

/// Incremental row reduction over Q.
#[derive(Default)]
pub struct Span {
    rows: Vec<(Vec<u16>, Tens)>,
}

impl Span {
    fn reduce(&self, v: &Tens) -> Tens {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                v = tens_sum(&v, &tens_scale(row, &-c));
            }
        }
        v
    }

    /// Adds `v`; true when it was independent of the earlier vectors.
    pub fn insert(&mut self, v: &Tens) -> bool {
        let r = self.reduce(v);
        let Some((pivot, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else { return false };
        let r = tens_scale(&r, &(Rational::one() / c));
        for (_, row) in self.rows.iter_mut() {
            if let Some(a) = row.get(&pivot).cloned() {
                *row = tens_sum(row, &tens_scale(&r, &-a));
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub fn contains(&self, v: &Tens) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank_of(vectors: &[Tens]) -> usize {
    let mut s = Span::default();
    for v in vectors {
        s.insert(v);
    }
    s.rank()
}

/// Distinct permutations of a multiset.
pub fn permutations(content: &[u16]) -> Vec<Vec<u16>> {
    if content.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for i in 0..content.len() {
        if seen.contains(&content[i]) {
            continue;
        }
        seen.push(content[i]);
        let mut rest = content.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Words of total degree `k` in letters of the given degrees.
pub fn words_of_degree(degrees: &[i64], k: i64) -> Vec<Vec<u16>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        if d <= k {
            for mut w in words_of_degree(degrees, k - d) {
                w.insert(0, i as u16);
                out.push(w);
            }
        }
    }
    out
}

/// A basis of the degree-`k` part of the free graded Lie algebra, found by
/// reducing all bracketings of all words of that degree.
pub fn lie_basis_oracle(degrees: &[i64], k: i64) -> Vec<Tens> {
    let mut span = Span::default();
    let mut out = Vec::new();
    for w in words_of_degree(degrees, k) {
        for (t, _) in bracketings(&w, degrees) {
            if span.insert(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// Gauss–Jordan inverse of a small square matrix.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let row_c = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&row_c) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).fold(q(0), |s, t| s + &a[i][t] * &b[t][j])).collect())
        .collect()
}

pub fn transpose(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `½ Σ (P⁻¹)_{ik} [α_k, α_i]` as a tensor.
pub fn omega_oracle(pairing: &[Vec<Rational>], degrees: &[i64]) -> Tens {
    let inv = inverse(pairing).expect("nondegenerate");
    let mut out = Tens::new();
    for i in 0..degrees.len() {
        for k in 0..degrees.len() {
            if inv[i][k].is_zero() {
                continue;
            }
            let b = tens_commutator(&tens_letter(k as u16), degrees[k], &tens_letter(i as u16), degrees[i]);
            out = tens_sum(&out, &tens_scale(&b, &(&inv[i][k] * qf(1, 2))));
        }
    }
    out
}

/// The CLI corpus over the fixtures, with the expected exit codes.
pub fn corpus() -> Vec<(Vec<String>, i32)> {
    let f = |rel: &str| fixture(rel).display().to_string();
    let mut out: Vec<(Vec<String>, i32)> = Vec::new();
    let mut push = |args: &[&str], code: i32| {
        let v = args
            .iter()
            .map(|a| if a.ends_with(".json") { f(a) } else { a.to_string() })
            .collect();
        out.push((v, code));
    };
    for p in fixtures_in("presentations") {
        push(&["check", &format!("presentations/{}.json", stem(&p))], 0);
    }
    for (name, code) in [
        ("bad_pontryagin", 2),
        ("d_squared", 1),
        ("degenerate_pairing", 2),
        ("not_json", 2),
        ("unclosed", 2),
        ("unknown_key", 2),
    ] {
        push(&["check", &format!("broken/{name}.json")], code);
    }
    for (name, code) in [
        ("bad_pontryagin", 2),
        ("d_squared", 2),
        ("degenerate_pairing", 1),
        ("not_json", 2),
        ("unclosed", 2),
        ("unknown_key", 2),
    ] {
        push(&["model", &format!("broken/{name}.json")], code);
    }
    push(&["homology", "presentations/s2.json", "--min", "1", "--max", "3"], 0);
    push(&["homology", "presentations/nonminimal.json", "--min", "1", "--max", "3"], 0);
    push(&["indec", "presentations/mixed.json", "--sub", "X"], 0);
    push(&["indec", "presentations/tilde_w11.json", "--sub", "beta"], 0);
    push(&["indec", "presentations/nonminimal.json"], 0);
    push(&["der", "presentations/w11.json", "--min", "0", "--max", "3", "--sub", "omega"], 0);
    push(&["der", "presentations/mixed.json", "--min", "-1", "--max", "2"], 0);
    push(&["der", "presentations/mixed.json", "--min", "0", "--max", "2", "--assert-semisimple"], 0);
    push(&["der", "presentations/w11.json", "--min", "0", "--max", "2", "--mode", "trivial-differential"], 0);
    push(&["der", "presentations/mixed.json", "--min", "0", "--max", "2", "--mode", "trivial-differential"], 1);
    push(&["der", "presentations/w11.json", "--min", "-1", "--max", "2", "--assert-semisimple"], 2);
    push(
        &[
            "der",
            "presentations/twisted8.json",
            "--sub",
            "omega",
            "--min",
            "0",
            "--max",
            "2",
            "--rho",
            "jobs/twisted8_rho.json",
            "--assert-semisimple",
        ],
        0,
    );
    push(&["der", "presentations/w21.json", "--min", "0", "--max", "2", "--rho", "jobs/twisted8_rho.json"], 2);
    for t in fixtures_in("tables") {
        push(&["ce", &format!("tables/{}.json", stem(&t)), "--max", "4"], 0);
    }
    push(&["ce", "tables/abelian_odd.json", "tables/abelian_plane.json", "--max", "4"], 0);
    push(&["ce", "tables/sl2.json", "tables/heisenberg.json", "--max", "4"], 0);
    push(&["ce", "tables/sl2.json", "--max", "3", "--coeff-dim", "2"], 0);
    for m in fixtures_in("models") {
        let m = format!("models/{}.json", stem(&m));
        push(&["model", &m], 0);
        push(&["tilde", &m], 0);
        push(&["block-g", &m, "--max", "3", "--assert-semisimple"], 0);
        push(&["xi", &m, "--max", "3", "--assert-semisimple"], 0);
        push(&["forget", &m, "--max", "3"], 0);
    }
    push(&["block-g", "models/w11.json", "--max", "2"], 2);
    push(&["glue", "models/w11.json", "models/w11.json", "--max", "2", "--assert-semisimple"], 0);
    push(&["glue", "models/w11.json", "models/w21.json", "--max", "2", "--assert-semisimple"], 0);
    push(&["connected-sum", "models/w11.json", "models/w21.json"], 0);
    push(&["connected-sum", "models/w11.json", "models/s2xs2.json"], 2);
    push(&["g", "presentations/tilde_w11.json", "--sub", "beta", "--max", "2", "--assert-semisimple"], 0);
    push(&["g", "presentations/mixed.json", "--sub", "X", "--max", "2", "--assert-semisimple"], 0);
    push(&["g", "presentations/nonminimal.json", "--max", "2", "--assert-semisimple"], 1);
    push(
        &[
            "g",
            "presentations/twisted8.json",
            "--sub",
            "omega",
            "--rho",
            "jobs/twisted8_rho.json",
            "--max",
            "3",
            "--assert-semisimple",
        ],
        0,
    );
    push(&["exp", "presentations/mixed.json", "jobs/mixed_exp.json"], 0);
    push(&["exp", "presentations/w21.json", "jobs/w21_exp.json"], 0);
    push(&["exp", "presentations/w21.json", "jobs/w21_exp.json", "--sub", "omega"], 1);
    push(&["mc", "models/twisted8.json", "jobs/twisted8_mc.json", "--min", "-1", "--max", "1"], 0);
    push(&["mc", "models/twisted8.json", "jobs/twisted8_not_rel.json", "--min", "-1", "--max", "1"], 1);
    push(&["homotopy", "presentations/point2.json", "presentations/interval_target.json", "jobs/homotopy.json"], 0);
    push(
        &["homotopy", "presentations/point2.json", "presentations/interval_target.json", "jobs/homotopy_wrong.json"],
        1,
    );
    out
}

/// Runs one CLI invocation in-process with the report sent to `out`.
pub fn run_cli(args: &[String], out: &std::path::Path) -> i32 {
    let mut argv = vec!["dglie".to_string()];
    argv.extend(args.iter().cloned());
    argv.push("--out".into());
    argv.push(out.display().to_string());
    argv.push("--no-timing".into());
    dglie::cli::run(argv)
}
