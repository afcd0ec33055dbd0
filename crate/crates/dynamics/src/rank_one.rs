use ndarray::{Array1, Array2};
use spin_core::C64;

/// `T(ψ₁, ψ₂) = ⟨ψ₂, ·⟩ ψ₁`, stored by its two vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm {
    pub left: Array1<C64>,
    pub right: Array1<C64>,
}

impl RankOneTerm {
    pub fn new(left: Array1<C64>, right: Array1<C64>) -> Self {
        Self { left, right }
    }

    /// Operator, trace and Frobenius norm all equal `‖ψ₁‖‖ψ₂‖`.
    pub fn norm(&self) -> f64 {
        l2(&self.left) * l2(&self.right)
    }

    /// `tr T = ⟨ψ₂, ψ₁⟩`.
    pub fn trace(&self) -> C64 {
        self.right.iter().zip(self.left.iter()).map(|(r, l)| r.conj() * l).sum()
    }

    pub fn to_dense(&self) -> Array2<C64> {
        Array2::from_shape_fn((self.left.len(), self.right.len()), |(i, j)| self.left[i] * self.right[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self { left: self.right.clone(), right: self.left.clone() }
    }

    /// Add `c · T` to a dense matrix.
    pub fn add_to(&self, m: &mut Array2<C64>, c: C64) {
        for (i, l) in self.left.iter().enumerate() {
            let cl = c * l;
            for (j, r) in self.right.iter().enumerate() {
                m[[i, j]] += cl * r.conj();
            }
        }
    }
}

fn l2(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
