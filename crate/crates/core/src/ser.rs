//! Serde helpers: complex values travel as `{re, im}` objects and undefined values as `null`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pt {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Pt {
    fn from(z: Complex64) -> Self {
        Pt { re: z.re, im: z.im }
    }
}

impl From<Pt> for Complex64 {
    fn from(p: Pt) -> Self {
        Complex64::new(p.re, p.im)
    }
}

pub fn complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    Pt::from(*z).serialize(s)
}

pub fn opt_complex<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    z.map(Pt::from).serialize(s)
}

pub fn vec_complex<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| Pt::from(*z)))
}

pub fn vec_opt_complex<S: Serializer>(v: &[Option<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| z.map(Pt::from)))
}

pub fn pair_opt_complex<S: Serializer>(v: &(Option<Complex64>, Option<Complex64>), s: S) -> Result<S::Ok, S::Error> {
    (v.0.map(Pt::from), v.1.map(Pt::from)).serialize(s)
}
