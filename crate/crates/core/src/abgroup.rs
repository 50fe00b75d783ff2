//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// `Z^b + Z/d1 + Z/d2 + ...` with `d1 | d2 | ...` and every `di >= 2`.
/// This canonical form makes equality of computed (co)homology groups a
/// plain structural comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbGroup {
    pub fn free(rank: usize) -> Self {
        AbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        AbGroup::free(0)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Builds the canonical form from a free rank and an arbitrary multiset
    /// of torsion orders (not necessarily a divisor chain).
    pub fn from_parts(free_rank: usize, orders: impl IntoIterator<Item = u64>) -> Self {
        // Split into prime powers, then rebuild the chain from the top:
        // d_t = product of the largest power of each prime, and so on.
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u32>> =
            std::collections::BTreeMap::new();
        for d in orders {
            assert!(d >= 1, "torsion order must be positive");
            if d == 1 {
                continue;
            }
            for (p, e) in factorize(d) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        for exps in by_prime.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let depth = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut chain = Vec::new();
        for level in 0..depth {
            let mut d: u64 = 1;
            for (p, exps) in &by_prime {
                if let Some(e) = exps.get(level) {
                    d = d
                        .checked_mul(p.checked_pow(*e).expect("torsion order overflow"))
                        .expect("torsion order overflow");
                }
            }
            chain.push(d);
        }
        chain.reverse(); // ascending divisor chain d1 | d2 | ...
        AbGroup {
            free_rank,
            torsion: chain,
        }
    }

    pub fn from_bigint_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let orders: Vec<u64> = factors
            .iter()
            .map(|f| f.to_u64().expect("invariant factor exceeds u64 at desk scale"))
            .collect();
        AbGroup::from_parts(free_rank, orders)
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        AbGroup::from_parts(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(other.torsion.iter()).copied(),
        )
    }

    /// Tensor product over `Z`.
    pub fn tensor(&self, other: &AbGroup) -> AbGroup {
        let mut orders: Vec<u64> = Vec::new();
        // Z^a (x) Z^b = Z^(ab); Z^a (x) Z/d = (Z/d)^a; Z/d (x) Z/e = Z/gcd.
        for d in &other.torsion {
            for _ in 0..self.free_rank {
                orders.push(*d);
            }
        }
        for d in &self.torsion {
            for _ in 0..other.free_rank {
                orders.push(*d);
            }
            for e in &other.torsion {
                orders.push(d.gcd(e));
            }
        }
        AbGroup::from_parts(self.free_rank * other.free_rank, orders)
    }

    /// `Tor_1^Z`: free parts contribute nothing, `Tor(Z/d, Z/e) = Z/gcd`.
    pub fn tor1(&self, other: &AbGroup) -> AbGroup {
        let mut orders = Vec::new();
        for d in &self.torsion {
            for e in &other.torsion {
                orders.push(d.gcd(e));
            }
        }
        AbGroup::from_parts(0, orders)
    }

    /// Total order of the torsion part.
    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&d| d as u128).product()
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for AbGroup {
    /// Pinned output grammar: `Z` / `Z^b` / `Z/d` summands joined by ` + `,
    /// `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for AbGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(AbGroup::zero());
        }
        let mut free_rank = 0usize;
        let mut torsion = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                free_rank += 1;
            } else if let Some(b) = part.strip_prefix("Z^") {
                free_rank += b.parse::<usize>().map_err(|e| e.to_string())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                torsion.push(d.parse::<u64>().map_err(|e| e.to_string())?);
            } else {
                return Err(format!("unrecognised summand {part:?}"));
            }
        }
        Ok(AbGroup::from_parts(free_rank, torsion))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_chain_from_scrambled_orders() {
        // Z/2 + Z/3 + Z/4 canonicalises to Z/2 + Z/12
        let g = AbGroup::from_parts(0, [4, 3, 2]);
        assert_eq!(g.torsion, vec![2, 12]);
        assert_eq!(g.to_string(), "Z/2 + Z/12");
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for g in [
            AbGroup::zero(),
            AbGroup::free(1),
            AbGroup::free(3),
            AbGroup::from_parts(2, [2, 2, 6]),
        ] {
            let s = g.to_string();
            let back: AbGroup = s.parse().unwrap();
            assert_eq!(g, back, "roundtrip failed for {s}");
        }
        assert_eq!(AbGroup::free(1).to_string(), "Z");
        assert_eq!(AbGroup::zero().to_string(), "0");
    }

    #[test]
    fn tensor_and_tor() {
        let z2 = AbGroup::from_parts(0, [2]);
        let z4 = AbGroup::from_parts(0, [4]);
        assert_eq!(z2.tensor(&z4), AbGroup::from_parts(0, [2]));
        assert_eq!(z2.tor1(&z4), AbGroup::from_parts(0, [2]));
        let z = AbGroup::free(1);
        assert_eq!(z.tensor(&z2), z2);
        assert_eq!(z.tor1(&z2), AbGroup::zero());
        assert_eq!(z.tensor(&z), z);
    }
}
