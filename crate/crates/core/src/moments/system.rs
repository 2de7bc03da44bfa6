use nalgebra::{SMatrix, SVector};

use crate::effective::EffectiveParams;

pub type Mat14 = SMatrix<f64, 14, 14>;
pub type Vec14 = SVector<f64, 14>;

pub(crate) const N: usize = 0;
pub(crate) const M: usize = 1;

/// Position of `k_i` (one-based) in the state vector.
pub(crate) const fn k(i: usize) -> usize {
    i + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MomentState {
    pub n: f64,
    pub m: f64,
    /// k1..k12, stored zero-based.
    pub k: [f64; 12],
}

impl MomentState {
    /// Flexural occupation `m0`, everything else zero.
    pub fn thermal(m0: f64) -> Self {
        Self {
            m: m0,
            ..Self::default()
        }
    }

    pub fn to_vector(&self) -> Vec14 {
        let mut v = Vec14::zeros();
        v[N] = self.n;
        v[M] = self.m;
        for i in 0..12 {
            v[i + 2] = self.k[i];
        }
        v
    }

    pub fn from_vector(v: &Vec14) -> Self {
        let mut k = [0.0; 12];
        for i in 0..12 {
            k[i] = v[i + 2];
        }
        Self {
            n: v[N],
            m: v[M],
            k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentSystem {
    pub matrix_a: Mat14,
    pub vector_b: Vec14,
    pub params: EffectiveParams,
}

impl MomentSystem {
    /// ẋ = A x + b.
    pub fn rhs(&self, x: &Vec14) -> Vec14 {
        self.matrix_a * x + self.vector_b
    }
}

/// Assembles A and b from the 14 moment equations.
pub fn build_system(params: &EffectiveParams) -> MomentSystem {
    let g = params.g_coupling;
    let w = params.omega;
    let gam = params.gamma_cool;
    let nu = params.nu;
    let a2 = params.alpha_sq();
    let h = gam / 2.0;

    let mut a = Mat14::zeros();
    let mut b = Vec14::zeros();

    // ṅ = g k7 − γ n − (γ/2) k3
    a[(N, k(7))] = g;
    a[(N, N)] = -gam;
    a[(N, k(3))] = -h;
    // ṁ = g|α|² k2 + g k6
    a[(M, k(2))] = g * a2;
    a[(M, k(6))] = g;
    // k̇1 = −ν k2
    a[(k(1), k(2))] = -nu;
    // k̇2 = ν k1 − 2g|α|² − 2g k3
    a[(k(2), k(1))] = nu;
    a[(k(2), k(3))] = -2.0 * g;
    b[k(2)] = -2.0 * g * a2;
    // k̇3 = ω k4 − γ|α|² − (γ/2) k3
    a[(k(3), k(4))] = w;
    a[(k(3), k(3))] = -h;
    b[k(3)] = -gam * a2;
    // k̇4 = −ω k3 − 2g|α|² k1 − (γ/2) k4
    a[(k(4), k(3))] = -w;
    a[(k(4), k(1))] = -2.0 * g * a2;
    a[(k(4), k(4))] = -h;
    // k̇5 = −ν k6 − ω k7 − (γ/2) k5 − γ|α|² k1
    a[(k(5), k(6))] = -nu;
    a[(k(5), k(7))] = -w;
    a[(k(5), k(5))] = -h;
    a[(k(5), k(1))] = -gam * a2;
    // k̇6 = ν k5 − 2g|α|² k3 − 2g k11 − 4g|α|² n − 2g|α|² + ω k8 − (γ/2) k6 − γ|α|² k2
    a[(k(6), k(5))] = nu;
    a[(k(6), k(3))] = -2.0 * g * a2;
    a[(k(6), k(11))] = -2.0 * g;
    a[(k(6), N)] = -4.0 * g * a2;
    a[(k(6), k(8))] = w;
    a[(k(6), k(6))] = -h;
    a[(k(6), k(2))] = -gam * a2;
    b[k(6)] = -2.0 * g * a2;
    // k̇7 = ν k8 + ω k5 − 2g|α|² k9 − 4g|α|² m − 2g|α|² − (γ/2) k7
    a[(k(7), k(8))] = nu;
    a[(k(7), k(5))] = w;
    a[(k(7), k(9))] = -2.0 * g * a2;
    a[(k(7), M)] = -4.0 * g * a2;
    a[(k(7), k(7))] = -h;
    b[k(7)] = -2.0 * g * a2;
    // k̇8 = −ν k7 − 2g|α|² k4 − 2g k12 − ω k6 − 2g|α|² k10 − (γ/2) k8
    a[(k(8), k(7))] = -nu;
    a[(k(8), k(4))] = -2.0 * g * a2;
    a[(k(8), k(12))] = -2.0 * g;
    a[(k(8), k(6))] = -w;
    a[(k(8), k(10))] = -2.0 * g * a2;
    a[(k(8), k(8))] = -h;
    // k̇9 = ν k10 − 2g|α|² k2 − 2g k6
    a[(k(9), k(10))] = nu;
    a[(k(9), k(2))] = -2.0 * g * a2;
    a[(k(9), k(6))] = -2.0 * g;
    // k̇10 = −ν k9 − 2g|α|² k1 − 2g k5
    a[(k(10), k(9))] = -nu;
    a[(k(10), k(1))] = -2.0 * g * a2;
    a[(k(10), k(5))] = -2.0 * g;
    // k̇11 = ω k12 − 2g|α|² k7 − γ k11 − γ|α|² k3
    a[(k(11), k(12))] = w;
    a[(k(11), k(7))] = -2.0 * g * a2;
    a[(k(11), k(11))] = -gam;
    a[(k(11), k(3))] = -gam * a2;
    // k̇12 = −ω k11 − 2g|α|² k5 − γ k12 − γ|α|² k4
    a[(k(12), k(11))] = -w;
    a[(k(12), k(5))] = -2.0 * g * a2;
    a[(k(12), k(12))] = -gam;
    a[(k(12), k(4))] = -gam * a2;

    MomentSystem {
        matrix_a: a,
        vector_b: b,
        params: *params,
    }
}
