use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Handle {
    Even,
    Odd,
}

/// A spin structure on Σ_g as the values of its quadratic form on a symplectic basis,
/// ordered q(a₁), q(b₁), …, q(a_g), q(b_g).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinStructure {
    genus: usize,
    q: Vec<u8>,
}

impl SpinStructure {
    pub fn new(genus: usize, q: Vec<u8>) -> Result<Self> {
        if q.len() != 2 * genus {
            return Err(Error::LengthMismatch { expected: 2 * genus, got: q.len() });
        }
        if q.iter().any(|&b| b > 1) {
            return Err(Error::Invalid("q-values must be 0 or 1".into()));
        }
        Ok(SpinStructure { genus, q })
    }

    /// A representative of the given parity: all zeros for +1, q(a₁)=q(b₁)=1 for −1.
    pub fn with_parity(genus: usize, parity: i8) -> Result<Self> {
        let mut q = vec![0; 2 * genus];
        match parity {
            1 => {}
            -1 if genus == 0 => return Err(Error::InvalidParity { genus }),
            -1 => {
                q[0] = 1;
                q[1] = 1;
            }
            p => return Err(Error::Invalid(format!("parity must be ±1, got {p}"))),
        }
        Ok(SpinStructure { genus, q })
    }

    /// All 4^g spin structures in lexicographic order of their q-bits.
    pub fn enumerate(genus: usize) -> Vec<SpinStructure> {
        let n = 2 * genus;
        (0..1usize << n)
            .map(|bits| {
                let q = (0..n).map(|k| ((bits >> (n - 1 - k)) & 1) as u8).collect();
                SpinStructure { genus, q }
            })
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn q(&self) -> &[u8] {
        &self.q
    }

    /// Σ q(a_i) q(b_i) mod 2.
    pub fn arf(&self) -> u8 {
        self.q.chunks(2).map(|h| h[0] * h[1]).sum::<u8>() % 2
    }

    pub fn parity(&self) -> i8 {
        if self.arf() == 0 {
            1
        } else {
            -1
        }
    }

    pub fn handle_word(&self) -> Vec<Handle> {
        self.q.chunks(2).map(|h| if h[0] * h[1] == 1 { Handle::Odd } else { Handle::Even }).collect()
    }

    /// Curl counts (on a_i, on b_i) per handle, one curl on each cycle with q = 1.
    pub fn curls(&self) -> Vec<(usize, usize)> {
        self.q.chunks(2).map(|h| (h[0] as usize, h[1] as usize)).collect()
    }
}
