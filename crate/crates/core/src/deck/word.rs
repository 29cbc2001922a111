//! Freely reduced words over `g1^{±1}, g2^{±1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Letters are `1, -1, 2, -2` for `g1, g1^-1, g2, g2^-1`.
pub type Letter = i8;

pub const LETTERS: [Letter; 4] = [1, -1, 2, -2];

/// A freely reduced word in the free group on two generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

/// 2x2 integer matrix `[a, b, c, d]`.
pub type IntMatrix = [i64; 4];

pub const IDENTITY_MATRIX: IntMatrix = [1, 0, 0, 1];

pub fn letter_matrix(l: Letter) -> IntMatrix {
    match l {
        1 => [1, 2, 0, 1],
        -1 => [1, -2, 0, 1],
        2 => [1, 0, 2, 1],
        -2 => [1, 0, -2, 1],
        _ => panic!("invalid letter {l}"),
    }
}

pub fn mat_mul(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let m = |p: i64, q: i64, r: i64, s: i64| {
        p.checked_mul(q)
            .and_then(|u| r.checked_mul(s).and_then(|v| u.checked_add(v)))
            .expect("matrix entry overflow")
    };
    [
        m(x[0], y[0], x[1], y[2]),
        m(x[0], y[1], x[1], y[3]),
        m(x[2], y[0], x[3], y[2]),
        m(x[2], y[1], x[3], y[3]),
    ]
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// Freely reduces the given letter sequence.
    pub fn new(letters: &[Letter]) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(LETTERS.contains(&l), "invalid letter {l}");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        FreeWord::new(&v)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, j: i64) -> FreeWord {
        let base = if j < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * j.unsigned_abs() as usize);
        for _ in 0..j.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        FreeWord::new(&v)
    }

    pub fn matrix(&self) -> IntMatrix {
        self.0
            .iter()
            .fold(IDENTITY_MATRIX, |acc, &l| mat_mul(&acc, &letter_matrix(l)))
    }

    /// Splits `w = u c u^-1` with `c` cyclically reduced; returns `(u, c)`.
    pub fn cyclic_reduction(&self) -> (FreeWord, FreeWord) {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == -w[w.len() - 1 - k] {
            k += 1;
        }
        (
            FreeWord(w[..k].to_vec()),
            FreeWord(w[k..w.len() - k].to_vec()),
        )
    }

    /// `(sum of g1 exponents, sum of g2 exponents)`: the class in the abelianization.
    pub fn abelianization(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(a, b), &l| match l {
            1 => (a + 1, b),
            -1 => (a - 1, b),
            2 => (a, b + 1),
            _ => (a, b - 1),
        })
    }

    /// All freely reduced words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        let mut frontier = vec![FreeWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * 3 + 4);
            for w in &frontier {
                for l in LETTERS {
                    if w.0.last() == Some(&-l) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(FreeWord(v));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                1 => "g1",
                -1 => "g1^-1",
                2 => "g2",
                _ => "g2^-1",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Accepts `g1`, `g2`, `g1^-1`, `g2^-1`, `g1^k` tokens, optionally separated
    /// by whitespace, `*` or `.`; an empty string or `1`/`id` is the identity.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() || t == "1" || t == "id" || t == "e" {
            return Ok(FreeWord::identity());
        }
        let bytes: Vec<char> = t
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*' && *c != '.')
            .collect();
        let mut letters = Vec::new();
        let mut i = 0;
        let bad = || Error::Parse(format!("invalid word {s:?}"));
        while i < bytes.len() {
            if bytes[i] != 'g' || i + 1 >= bytes.len() {
                return Err(bad());
            }
            let gen: Letter = match bytes[i + 1] {
                '1' => 1,
                '2' => 2,
                _ => return Err(bad()),
            };
            i += 2;
            let mut exp: i64 = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let start = i;
                if i < bytes.len() && bytes[i] == '-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = bytes[start..i].iter().collect();
                exp = num.parse().map_err(|_| bad())?;
            }
            for _ in 0..exp.unsigned_abs() {
                letters.push(if exp < 0 { -gen } else { gen });
            }
        }
        Ok(FreeWord::new(&letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_inverse() {
        assert_eq!(FreeWord::new(&[1, 2, -2, -1]), FreeWord::identity());
        let w = FreeWord::new(&[1, 2, 1, -2]);
        assert_eq!(w.inverse().letters(), &[2, -1, -2, -1]);
        assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn g1g2_matrix() {
        assert_eq!(FreeWord::new(&[1, 2]).matrix(), [5, 2, 2, 1]);
    }

    #[test]
    fn cyclic_reduction_splits_conjugator() {
        let w = FreeWord::new(&[2, 1, 1, -2]);
        let (u, c) = w.cyclic_reduction();
        assert_eq!(u.letters(), &[2]);
        assert_eq!(c.letters(), &[1, 1]);
        assert_eq!(u.mul(&c).mul(&u.inverse()), w);
    }

    #[test]
    fn parse_round_trip() {
        let w: FreeWord = "g1 g2^-1 g1^2".parse().unwrap();
        assert_eq!(w.letters(), &[1, -2, 1, 1]);
        assert_eq!(w.to_string().parse::<FreeWord>().unwrap(), w);
        assert_eq!("g1g2".parse::<FreeWord>().unwrap().letters(), &[1, 2]);
        assert!("x1".parse::<FreeWord>().is_err());
    }

    #[test]
    fn word_counts() {
        // 1 + 4 + 12 + 36
        assert_eq!(FreeWord::all_up_to(3).len(), 53);
    }

    #[test]
    fn nonempty_words_are_not_identity_matrices() {
        for w in FreeWord::all_up_to(6).into_iter().skip(1) {
            let m = w.matrix();
            assert!(m != [1, 0, 0, 1] && m != [-1, 0, 0, -1], "{w}");
        }
    }
}
