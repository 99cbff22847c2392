#![allow(dead_code)]

use weylcurv_core::generate::random_curvature;
use weylcurv_core::{CurvatureClass, CurvatureModel, InnerProduct, Rational, Scalar, Tensor4};

/// Definite and Lorentzian signatures for dimension n.
pub fn signatures(n: usize) -> [(usize, usize); 2] {
    [(n, 0), (n - 1, 1)]
}

pub fn metric(p: usize, q: usize) -> InnerProduct {
    InnerProduct::from_signature(p, q).unwrap()
}

pub fn model(class: CurvatureClass, h: &InnerProduct, seed: u64) -> CurvatureModel {
    CurvatureModel::new(h.clone(), random_curvature(class, h, seed)).unwrap()
}

pub fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

pub fn zero4(n: usize) -> Tensor4 {
    Tensor4::zeros(n)
}

/// Every (n, signature, seed) triple with n in `dims`, `per` seeds each.
pub fn cases(dims: std::ops::RangeInclusive<usize>, per: u64) -> Vec<(InnerProduct, u64)> {
    let mut out = Vec::new();
    for n in dims {
        for (p, qq) in signatures(n) {
            for seed in 0..per {
                out.push((metric(p, qq), seed * 1000 + n as u64));
            }
        }
    }
    out
}
