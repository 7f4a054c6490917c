//! Finite abelian gradings and bicharacters.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::Scalar;

/// A finite abelian group ⊕ ℤ_{n_i}. Elements are encoded row-major in the
/// mixed radix of `orders` (first factor most significant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub orders: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Self {
        assert!(orders.iter().all(|&n| n >= 1), "cyclic factor orders must be positive");
        AbelianGroup { orders }
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: vec![] }
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn digits(&self, g: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        let mut rest = g;
        for k in (0..self.orders.len()).rev() {
            out[k] = rest % self.orders[k];
            rest /= self.orders[k];
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.orders).fold(0, |acc, (&x, &n)| acc * n + x % n)
    }

    pub fn add(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.digits(g), self.digits(h));
        let s: Vec<usize> = a.iter().zip(&b).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect();
        self.encode(&s)
    }

    pub fn neg(&self, g: usize) -> usize {
        let a = self.digits(g);
        let s: Vec<usize> = a.iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect();
        self.encode(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub group: AbelianGroup,
    pub block_of_basis: Vec<usize>,
}

impl Grading {
    /// Largest weight of a product e_a·e_b outside its block g(a)+g(b), relative to the
    /// largest structure constant.
    pub fn violation(&self, alg: &AlgebraData) -> f64 {
        let d = alg.dim();
        let m = alg.mult();
        let scale = m.max_abs().max(f64::MIN_POSITIVE);
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                let target = self.group.add(self.block_of_basis[a], self.block_of_basis[b]);
                for c in 0..d {
                    if self.block_of_basis[c] != target {
                        worst = worst.max(m.get(&[a, b, c]).norm() / scale);
                    }
                }
            }
        }
        worst
    }

    pub fn is_multiplicative(&self, alg: &AlgebraData, tol: f64) -> bool {
        self.block_of_basis.len() == alg.dim() && self.violation(alg) <= tol
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bicharacter {
    pub group: AbelianGroup,
    /// `table[h][j] = λ̃(h, j)`.
    pub table: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn trivial(group: AbelianGroup) -> Self {
        let n = group.order();
        Bicharacter { group, table: vec![vec![Scalar::new(1.0, 0.0); n]; n] }
    }

    pub fn value(&self, h: usize, j: usize) -> Scalar {
        self.table[h][j]
    }

    /// Largest violation of λ̃(h, j+l) = λ̃(h,j)λ̃(h,l) and λ̃(h,j)λ̃(j,h) = 1.
    pub fn defect(&self) -> f64 {
        let n = self.group.order();
        let mut worst: f64 = 0.0;
        for h in 0..n {
            for j in 0..n {
                worst = worst.max((self.value(h, j) * self.value(j, h) - 1.0).norm());
                for l in 0..n {
                    let lhs = self.value(h, self.group.add(j, l));
                    worst = worst.max((lhs - self.value(h, j) * self.value(h, l)).norm());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_round_trip() {
        let g = AbelianGroup::new(vec![2, 3]);
        for x in 0..6 {
            assert_eq!(g.encode(&g.digits(x)), x);
            assert_eq!(g.add(x, g.neg(x)), 0);
        }
        assert_eq!(g.add(g.encode(&[1, 2]), g.encode(&[1, 2])), g.encode(&[0, 1]));
    }

    #[test]
    fn trivial_bicharacter_is_valid() {
        assert_eq!(Bicharacter::trivial(AbelianGroup::new(vec![2, 2])).defect(), 0.0);
    }
}
