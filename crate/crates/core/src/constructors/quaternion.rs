use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// t + x·î + y·ĵ + z·k̂
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { t: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quaternion = Quaternion { t: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quaternion = Quaternion { t: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quaternion = Quaternion { t: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quaternion = Quaternion { t: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { t, x, y, z }
    }

    pub fn real(t: f64) -> Self {
        Quaternion { t, ..Self::ZERO }
    }

    pub fn conj(self) -> Self {
        Quaternion { t: self.t, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn real_part(self) -> f64 {
        self.t
    }

    pub fn components(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn norm_sqr(self) -> f64 {
        self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion { t: self.t * s, x: self.x * s, y: self.y * s, z: self.z * s }
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion { t: self.t + o.t, x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        self + (-o)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.t, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.t, o.x, o.y, o.z);
        Quaternion {
            t: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            x: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            y: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            z: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn conjugation_reverses_products() {
        let p = Quaternion::new(1.0, 2.0, -0.5, 3.0);
        let q = Quaternion::new(-2.0, 0.25, 1.0, 4.0);
        assert_eq!((p * q).conj(), q.conj() * p.conj());
        assert_eq!(p.conj().components(), [1.0, -2.0, 0.5, -3.0]);
        assert_eq!((p * p.conj()).real_part(), p.norm_sqr());
    }
}
