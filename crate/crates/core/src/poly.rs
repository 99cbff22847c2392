//! Polynomials of degree at most two in n variables.
//!
//! `p(x) = c + Σ_k b_k x^k + Σ_{k,l} Q_{kl} x^k x^l` with `Q` stored symmetric,
//! so `∂_m p = b_m + 2 Σ_l Q_{ml} x^l`.

use crate::scalar::{max_abs, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<S> {
    n: usize,
    constant: S,
    linear: Vec<S>,
    quad: Vec<S>,
}

impl<S: Scalar> Poly2<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            constant: S::zero(),
            linear: vec![S::zero(); n],
            quad: vec![S::zero(); n * n],
        }
    }

    pub fn constant(n: usize, value: S) -> Self {
        Self {
            constant: value,
            ..Self::zero(n)
        }
    }

    pub fn linear(n: usize, coeffs: impl Fn(usize) -> S) -> Self {
        Self {
            linear: (0..n).map(coeffs).collect(),
            ..Self::zero(n)
        }
    }

    /// `quad(k, l)` must be symmetric in (k, l).
    pub fn from_parts(
        n: usize,
        constant: S,
        linear: impl Fn(usize) -> S,
        quad: impl Fn(usize, usize) -> S,
    ) -> Self {
        let mut q = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                q.push(quad(k, l));
            }
        }
        Self {
            n,
            constant,
            linear: (0..n).map(linear).collect(),
            quad: q,
        }
    }

    pub fn c0(&self) -> &S {
        &self.constant
    }

    pub fn c1(&self, k: usize) -> &S {
        &self.linear[k]
    }

    pub fn c2(&self, k: usize, l: usize) -> &S {
        &self.quad[k * self.n + l]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            constant: self.constant.clone() + &other.constant,
            linear: zip(&self.linear, &other.linear, |a, b| a.clone() + b),
            quad: zip(&self.quad, &other.quad, |a, b| a.clone() + b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            n: self.n,
            constant: self.constant.clone() * factor,
            linear: self.linear.iter().map(|a| a.clone() * factor).collect(),
            quad: self.quad.iter().map(|a| a.clone() * factor).collect(),
        }
    }

    /// Product with every term of degree > 2 dropped.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let half = S::from_frac(1, 2);
        let mut out = Self::zero(n);
        out.constant = self.constant.clone() * &other.constant;
        for k in 0..n {
            out.linear[k] = self.constant.clone() * &other.linear[k] + other.constant.clone() * &self.linear[k];
        }
        for k in 0..n {
            for l in 0..n {
                let cross = (self.linear[k].clone() * &other.linear[l] + self.linear[l].clone() * &other.linear[k]) * &half;
                out.quad[k * n + l] = self.constant.clone() * &other.quad[k * n + l]
                    + other.constant.clone() * &self.quad[k * n + l]
                    + cross;
            }
        }
        out
    }

    /// Drops every term of degree > `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        let mut out = self.clone();
        if degree < 2 {
            out.quad.iter_mut().for_each(|q| *q = S::zero());
        }
        if degree < 1 {
            out.linear.iter_mut().for_each(|q| *q = S::zero());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let two = S::from_int(2);
        Self {
            n: self.n,
            constant: self.linear[var].clone(),
            linear: (0..self.n).map(|l| self.quad[var * self.n + l].clone() * &two).collect(),
            quad: vec![S::zero(); self.n * self.n],
        }
    }

    /// Largest absolute coefficient among terms of degree ≤ `degree`.
    pub fn max_abs_through(&self, degree: usize) -> S {
        let mut m = self.constant.abs_val();
        let mut bump = |v: S| {
            if v > m {
                m = v;
            }
        };
        if degree >= 1 {
            bump(max_abs(&self.linear));
        }
        if degree >= 2 {
            bump(max_abs(&self.quad));
        }
        m
    }
}

fn zip<S: Scalar>(a: &[S], b: &[S], f: impl Fn(&S, &S) -> S) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// Sum of `terms` starting from the zero polynomial.
pub fn sum<S: Scalar>(n: usize, terms: impl IntoIterator<Item = Poly2<S>>) -> Poly2<S> {
    terms.into_iter().fold(Poly2::zero(n), |acc, t| acc.add(&t))
}
