//! Lyndon words over the generator alphabet (ordered by generator position).

use super::tensor::Word;

/// `w` is Lyndon iff it is nonempty and strictly smaller than each of its
/// proper suffixes.
pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u16]) -> (&[u16], &[u16]) {
    assert!(w.len() >= 2, "standard factorization needs length >= 2");
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (&w[..i], &w[i..]);
        }
    }
    unreachable!("the last letter is always a Lyndon suffix")
}

/// All Lyndon words whose letters' degrees add up to `degree`.
pub fn lyndon_words_of_degree(degrees: &[i64], degree: i64) -> Vec<Word> {
    let mut out = Vec::new();
    if degree < 1 {
        return out;
    }
    let mut w = Vec::new();
    for first in 0..degrees.len() {
        if degrees[first] > degree {
            continue;
        }
        w.clear();
        w.push(first as u16);
        extend(degrees, degree - degrees[first], first, &mut w, &mut out);
    }
    out
}

fn extend(degrees: &[i64], rest: i64, first: usize, w: &mut Word, out: &mut Vec<Word>) {
    if rest == 0 {
        if is_lyndon(w) {
            out.push(w.clone());
        }
        return;
    }
    // Every letter of a Lyndon word is at least its first letter; the first
    // letter can repeat only if another letter follows eventually.
    for c in first..degrees.len() {
        let d = degrees[c];
        if d > rest {
            continue;
        }
        w.push(c as u16);
        extend(degrees, rest - d, first, w, out);
        w.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_checks() {
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(is_lyndon(&[0, 1, 1]));
        assert!(!is_lyndon(&[0, 1, 0]));
        assert!(!is_lyndon(&[0, 0]));
        assert_eq!(standard_factorization(&[0, 0, 1]), (&[0u16][..], &[0u16, 1][..]));
        assert_eq!(standard_factorization(&[0, 1, 1]), (&[0u16, 1][..], &[1u16][..]));
    }

    #[test]
    fn counts_match_necklace_formula() {
        // two letters of degree 1: Lyndon words of length n number (1/n) sum mu(d) 2^{n/d}
        let counts: Vec<usize> = (1..=6).map(|n| lyndon_words_of_degree(&[1, 1], n).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
    }
}
