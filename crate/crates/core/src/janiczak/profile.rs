use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`profiles`].
pub const MAX_PROFILE_ATOMS: usize = 24;

/// Which exact finite class sizes `1..=bound` occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SizeProfile {
    pub bound: usize,
    pub present: BTreeSet<usize>,
}

impl SizeProfile {
    pub fn new(bound: usize, present: impl IntoIterator<Item = usize>) -> Result<SizeProfile> {
        let present: BTreeSet<usize> = present.into_iter().collect();
        if let Some(&s) = present.iter().find(|&&s| s == 0 || s > bound) {
            return Err(Error::Input(format!("size {s} outside 1..={bound}")));
        }
        Ok(SizeProfile { bound, present })
    }

    /// Profile whose atom `A_i` (size `i+1`) is set iff bit `i` of `bits` is.
    pub fn from_bits(bound: usize, bits: u64) -> SizeProfile {
        let present = (0..bound.min(64)).filter(|i| bits >> i & 1 == 1).map(|i| i + 1).collect();
        SizeProfile { bound, present }
    }

    pub fn from_atoms(bound: usize, atoms: impl IntoIterator<Item = usize>) -> Result<SizeProfile> {
        SizeProfile::new(bound, atoms.into_iter().map(|a| a + 1))
    }

    pub fn has(&self, size: usize) -> bool {
        self.present.contains(&size)
    }

    /// Truth of `A_i` in this profile; `None` beyond the bound.
    pub fn atom(&self, i: usize) -> Option<bool> {
        (i < self.bound).then(|| self.has(i + 1))
    }

    /// Whether `other` agrees with `self` on all of `self`'s sizes.
    pub fn is_extended_by(&self, other: &SizeProfile) -> bool {
        other.bound >= self.bound && (1..=self.bound).all(|s| self.has(s) == other.has(s))
    }
}

/// All `2^n` profiles of bound `n`; entry `j` sets `A_i` iff bit `i` of `j` is 1.
pub fn profiles(n: usize) -> Result<Vec<SizeProfile>> {
    if n > MAX_PROFILE_ATOMS {
        return Err(Error::Resource(format!("2^{n} profiles exceeds the limit 2^{MAX_PROFILE_ATOMS}")));
    }
    Ok((0..1u64 << n).map(|j| SizeProfile::from_bits(n, j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        assert_eq!(profiles(0).unwrap(), vec![SizeProfile { bound: 0, present: BTreeSet::new() }]);
        let p2 = profiles(2).unwrap();
        assert_eq!(p2.len(), 4);
        assert_eq!(p2[3], SizeProfile::new(2, [1, 2]).unwrap());
        assert_eq!(p2[2], SizeProfile::new(2, [2]).unwrap());
        let distinct: BTreeSet<_> = profiles(5).unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 32);
        assert!(profiles(MAX_PROFILE_ATOMS + 1).is_err());
    }
}
