//! Permutations on `{0, .., degree-1}` with cycle-notation parsing.

use std::fmt;

use crate::error::GroupError;

/// A permutation stored as its image table: `p.apply(i) == images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from an image table, rejecting non-bijections.
    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image table {:?} is not a bijection",
                    images
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Group product: `(a.compose(b)).apply(x) == a.apply(b.apply(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: (0..self.degree())
                .map(|x| self.images[other.images[x] as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u16 == y)
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    /// `()` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let s = text.trim();
        if s.is_empty() || s == "()" {
            return Ok(Perm { images });
        }
        let mut rest = s;
        let mut moved = vec![false; degree];
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(GroupError::InvalidPermutation(format!(
                    "expected '(' in cycle notation: {text:?}"
                )));
            };
            let Some(close) = rest[open..].find(')') else {
                return Err(GroupError::InvalidPermutation(format!(
                    "unbalanced parenthesis in {text:?}"
                )));
            };
            let body = &rest[open + 1..open + close];
            rest = rest[open + close + 1..].trim_start();
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        GroupError::InvalidPermutation(format!("bad point {t:?} in {text:?}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if points.is_empty() {
                continue;
            }
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {p} out of range 1..={degree} in {text:?}"
                    )));
                }
                if moved[p - 1] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {p} appears in two cycles in {text:?}"
                    )));
                }
                moved[p - 1] = true;
            }
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                images[from] = to as u16;
            }
        }
        Perm::from_images(images)
    }

    /// Writes the permutation in 1-based disjoint-cycle notation.
    pub fn to_cycles(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(3), 4);
        assert_eq!(p.to_cycles(), "(1 2 3)(4 5)");
        let id = Perm::parse_cycles("()", 4).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        let ab = a.compose(&b);
        // b sends 2->3, then a fixes 3.
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.compose(&ab.inverse()), Perm::identity(3));
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("(1 2)(2 3)", 3).is_err());
    }
}
