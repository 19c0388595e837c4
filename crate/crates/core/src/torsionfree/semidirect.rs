use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::intmat::IntMatrix;
use crate::modtwo::{F2Matrix, F2Vector};
use crate::weyl::WeylElement;

/// `(x, v, g)` in `Z/2^l × (∏ Λ_i/2 ⋊ W(Psi))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SemidirectElement {
    pub x: F2Vector,
    pub v: Vec<F2Vector>,
    pub g: WeylElement,
}

impl SemidirectElement {
    pub fn identity(n: usize, m: usize, ell: usize) -> Self {
        SemidirectElement { x: F2Vector::zero(ell), v: vec![F2Vector::zero(n); m], g: IntMatrix::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.v.iter().all(|v| v.is_zero()) && self.g.is_identity()
    }

    /// `(x1,v1,g1)(x2,v2,g2) = (x1+x2, v1 + g1 v2, g1 g2)`.
    pub fn mul(&self, o: &SemidirectElement) -> SemidirectElement {
        let g1 = F2Matrix::from_int(&self.g);
        SemidirectElement {
            x: self.x + o.x,
            v: self.v.iter().zip(&o.v).map(|(&a, &b)| a + g1.apply(b)).collect(),
            g: self.g.mul(&o.g),
        }
    }

    pub fn inverse(&self) -> SemidirectElement {
        let gi = self.g.inverse_unimodular().expect("group elements are unimodular");
        let gi2 = F2Matrix::from_int(&gi);
        SemidirectElement { x: self.x, v: self.v.iter().map(|&v| gi2.apply(v)).collect(), g: gi }
    }

    pub fn pow(&self, mut e: u64) -> SemidirectElement {
        let mut base = self.clone();
        let mut acc = Self::identity(self.g.dim(), self.v.len(), self.x.dim());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Least `k <= bound` with `self^k = 1`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl Serialize for SemidirectElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SemidirectElement", 3)?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("v", &self.v)?;
        st.serialize_field("g", &self.g)?;
        st.end()
    }
}
