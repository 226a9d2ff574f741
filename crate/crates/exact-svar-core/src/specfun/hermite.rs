use crate::prelude::*;

/// Probabilists' Hermite polynomial `He_k(z)` by the three-term recurrence.
pub fn hermite_he(k: usize, z: f64) -> f64 {
    HermiteIter::new(z).nth(k).unwrap_or(f64::NAN)
}

/// Streams `He_0(z), He_1(z), …`.
#[derive(Debug, Clone)]
pub struct HermiteIter {
    z: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl HermiteIter {
    pub fn new(z: f64) -> Self {
        HermiteIter {
            z,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for HermiteIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let next = self.z * self.cur - self.k as f64 * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// Streams the normalized values `He_k(z) / √(k!)`, which stay below
/// `1.09·e^{z²/4}` and therefore never overflow.
#[derive(Debug, Clone)]
pub struct NormalizedHermiteIter {
    z: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl NormalizedHermiteIter {
    pub fn new(z: f64) -> Self {
        NormalizedHermiteIter {
            z,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for NormalizedHermiteIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let k = self.k as f64;
        let next = (self.z * self.cur - k.sqrt() * self.prev) / (k + 1.0).sqrt();
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}
