use crate::{OracleError, Result};

/// A factor as 1-based inclusive positions.
pub type Factor = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfSolution {
    pub value: usize,
    pub witness: Vec<Factor>,
}

pub fn is_factor_set(text: &[char], factors: &[Factor]) -> bool {
    let mut sorted = factors.to_vec();
    sorted.sort_unstable();
    let mut letters = Vec::new();
    let mut last_end = 0;
    for &(i, j) in &sorted {
        if i == 0 || i >= j || j > text.len() || text[i - 1] != text[j - 1] || i <= last_end {
            return false;
        }
        if letters.contains(&text[i - 1]) {
            return false;
        }
        letters.push(text[i - 1]);
        last_end = j;
    }
    true
}

/// Maximum set of disjoint factors with pairwise distinct letters, by a
/// dynamic program over (position, letters used).
pub fn exact_df(text: &[char]) -> Result<DfSolution> {
    let mut alphabet: Vec<char> = text.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    if alphabet.len() > 16 {
        return Err(OracleError::Refused(format!("alphabet of {} letters", alphabet.len())));
    }
    let n = text.len();
    let letter: Vec<usize> = text.iter().map(|c| alphabet.binary_search(c).unwrap()).collect();
    let masks = 1usize << alphabet.len();
    // table[i][m]: best count using positions i.. with letters in m already spent
    let mut table = vec![vec![0usize; masks]; n + 2];
    for i in (0..n).rev() {
        for m in 0..masks {
            let mut b = table[i + 1][m];
            let x = letter[i];
            if m >> x & 1 == 0 {
                for j in i + 1..n {
                    if letter[j] == x {
                        b = b.max(1 + table[j + 1][m | 1 << x]);
                    }
                }
            }
            table[i][m] = b;
        }
    }
    let mut witness = Vec::new();
    let (mut i, mut m) = (0, 0);
    while i < n {
        if table[i][m] == table[i + 1][m] {
            i += 1;
            continue;
        }
        let x = letter[i];
        let j = (i + 1..n).find(|&j| letter[j] == x && table[i][m] == 1 + table[j + 1][m | 1 << x]).unwrap();
        witness.push((i + 1, j + 1));
        m |= 1 << x;
        i = j + 1;
    }
    Ok(DfSolution { value: table[0][0], witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn examples() {
        assert_eq!(exact_df(&chars("aabb")).unwrap().value, 2);
        assert_eq!(exact_df(&chars("abc")).unwrap().value, 0);
        assert_eq!(exact_df(&chars("abab")).unwrap().value, 1);
        assert_eq!(exact_df(&chars("")).unwrap().value, 0);
    }

    #[test]
    fn witness_is_valid() {
        for s in ["aabbab", "abcabcab", "aaaa", "abacbcdd", "ßaßa"] {
            let t = chars(s);
            let sol = exact_df(&t).unwrap();
            assert_eq!(sol.witness.len(), sol.value);
            assert!(is_factor_set(&t, &sol.witness), "{s}");
        }
    }

    #[test]
    fn validity_checks() {
        let t = chars("abab");
        assert!(!is_factor_set(&t, &[(1, 3), (2, 4)]));
        assert!(!is_factor_set(&t, &[(1, 2)]));
        assert!(is_factor_set(&t, &[(2, 4)]));
        let t = chars("aaaa");
        assert!(!is_factor_set(&t, &[(1, 2), (3, 4)]));
    }
}
