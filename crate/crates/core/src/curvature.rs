//! Symmetry classes of rank-4 curvature tensors.
//!
//! Three nested classes are recognised, each cut out by linear identities on
//! `A(x, y, z, w)`:
//!
//! * generalized curvature tensors (`R`): antisymmetry in the first pair and
//!   the first Bianchi identity;
//! * Weyl generalized curvature tensors (`W`): additionally
//!   `A(x,y,z,w) + A(x,y,w,z) = (2/n)(ρ(y,x) − ρ(x,y)) h(z,w)`;
//! * algebraic curvature tensors (`A`): additionally antisymmetric in the last
//!   pair (equivalently, pair-interchange symmetric).
//!
//! The Ricci contraction is `ρ(j,k) = ε^{il} A(i,j,k,l)` throughout.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::tensor::{alternate_pair, contract, same_dim, symmetrize_pair, InnerProduct, Tensor2, Tensor4, TwoForm};

/// One of the defining identities, in the order diagnostics report them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    /// A(x,y,z,w) + A(y,x,z,w) = 0
    Antisym12,
    /// A(x,y,z,w) + A(y,z,x,w) + A(z,x,y,w) = 0
    Bianchi,
    /// last-pair symmetrization equals (2/n) ΛRic ⊗ h
    Weyl,
    /// A(x,y,z,w) + A(x,y,w,z) = 0
    Antisym34,
    /// A(x,y,z,w) = A(z,w,x,y)
    Interchange,
}

impl Equation {
    pub const ALL: [Equation; 5] = [
        Equation::Antisym12,
        Equation::Bianchi,
        Equation::Weyl,
        Equation::Antisym34,
        Equation::Interchange,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Equation::Antisym12 => "antisym12",
            Equation::Bianchi => "bianchi",
            Equation::Weyl => "weyl",
            Equation::Antisym34 => "antisym34",
            Equation::Interchange => "interchange",
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurvatureClass {
    /// generalized curvature tensors
    #[serde(rename = "R")]
    Generalized,
    /// Weyl generalized curvature tensors
    #[serde(rename = "W")]
    Weyl,
    /// algebraic curvature tensors
    #[serde(rename = "A")]
    Algebraic,
}

impl CurvatureClass {
    pub fn letter(self) -> &'static str {
        match self {
            CurvatureClass::Generalized => "R",
            CurvatureClass::Weyl => "W",
            CurvatureClass::Algebraic => "A",
        }
    }

    /// Identities that define the class, in diagnostic order.
    pub fn equations(self) -> &'static [Equation] {
        match self {
            CurvatureClass::Generalized => &[Equation::Antisym12, Equation::Bianchi],
            CurvatureClass::Weyl => &[Equation::Antisym12, Equation::Bianchi, Equation::Weyl],
            CurvatureClass::Algebraic => &[
                Equation::Antisym12,
                Equation::Bianchi,
                Equation::Weyl,
                Equation::Antisym34,
            ],
        }
    }
}

impl fmt::Display for CurvatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ClassFlags {
    pub in_r: bool,
    pub in_w: bool,
    pub in_a: bool,
}

impl ClassFlags {
    pub fn contains(&self, class: CurvatureClass) -> bool {
        match class {
            CurvatureClass::Generalized => self.in_r,
            CurvatureClass::Weyl => self.in_w,
            CurvatureClass::Algebraic => self.in_a,
        }
    }

    /// Smallest class containing the tensor.
    pub fn finest(&self) -> Option<CurvatureClass> {
        if self.in_a {
            Some(CurvatureClass::Algebraic)
        } else if self.in_w {
            Some(CurvatureClass::Weyl)
        } else if self.in_r {
            Some(CurvatureClass::Generalized)
        } else {
            None
        }
    }
}

/// Maximum absolute residual entry of each identity.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport<S = Rational> {
    pub antisym12: S,
    pub bianchi: S,
    pub weyl: S,
    pub antisym34: S,
    pub interchange: S,
}

impl<S: Scalar> SymmetryReport<S> {
    pub fn residual(&self, eq: Equation) -> &S {
        match eq {
            Equation::Antisym12 => &self.antisym12,
            Equation::Bianchi => &self.bianchi,
            Equation::Weyl => &self.weyl,
            Equation::Antisym34 => &self.antisym34,
            Equation::Interchange => &self.interchange,
        }
    }

    pub fn holds(&self, eq: Equation) -> bool {
        self.residual(eq).is_negligible()
    }

    pub fn flags(&self) -> ClassFlags {
        let in_r = self.holds(Equation::Antisym12) && self.holds(Equation::Bianchi);
        ClassFlags {
            in_r,
            in_w: in_r && self.holds(Equation::Weyl),
            in_a: in_r && self.holds(Equation::Antisym34),
        }
    }

    pub fn first_violation(&self) -> Option<Equation> {
        Equation::ALL.into_iter().find(|eq| !self.holds(*eq))
    }

    pub fn first_violation_for(&self, class: CurvatureClass) -> Option<Equation> {
        class.equations().iter().copied().find(|eq| !self.holds(*eq))
    }
}

/// The triple (V, h, A).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureModel<S = Rational> {
    h: InnerProduct<S>,
    a: Tensor4<S>,
    flags: Option<ClassFlags>,
}

impl<S: Scalar> CurvatureModel<S> {
    pub fn new(h: InnerProduct<S>, a: Tensor4<S>) -> Result<Self> {
        same_dim(&h, a.dim())?;
        Ok(Self { h, a, flags: None })
    }

    /// Same model with its class flags computed and cached.
    pub fn classified(self) -> Self {
        let flags = classify(&self.a, &self.h);
        Self {
            flags: Some(flags),
            ..self
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn h(&self) -> &InnerProduct<S> {
        &self.h
    }

    pub fn tensor(&self) -> &Tensor4<S> {
        &self.a
    }

    pub fn cached_flags(&self) -> Option<ClassFlags> {
        self.flags
    }

    pub fn flags(&self) -> ClassFlags {
        self.flags.unwrap_or_else(|| classify(&self.a, &self.h))
    }

    pub fn require(&self, class: CurvatureClass) -> Result<()> {
        require_class(&self.a, &self.h, class)
    }
}

pub fn residual_antisym12<S: Scalar>(a: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(a.dim(), |i, j, k, l| a.get(i, j, k, l).clone() + a.get(j, i, k, l))
}

pub fn residual_bianchi<S: Scalar>(a: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(a.dim(), |i, j, k, l| {
        a.get(i, j, k, l).clone() + a.get(j, k, i, l) + a.get(k, i, j, l)
    })
}

/// A(i,j,k,l) + A(i,j,l,k), i.e. twice the last-pair symmetrization.
pub fn residual_pair_antisym34<S: Scalar>(a: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(a.dim(), |i, j, k, l| a.get(i, j, k, l).clone() + a.get(i, j, l, k))
}

pub fn residual_interchange<S: Scalar>(a: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(a.dim(), |i, j, k, l| a.get(i, j, k, l).clone() - a.get(k, l, i, j))
}

pub fn residual_weyl<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<Tensor4<S>> {
    let rho = ricci(a, h)?;
    let coeff = S::from_frac(2, a.dim() as i64);
    Ok(Tensor4::from_fn(a.dim(), |i, j, k, l| {
        let skew = (rho.get(j, i).clone() - rho.get(i, j)) * &coeff * h.get(k, l);
        a.get(i, j, k, l).clone() + a.get(i, j, l, k) - skew
    }))
}

/// ρ(j,k) = ε^{il} A(i,j,k,l)
pub fn ricci<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<Tensor2<S>> {
    contract(a, h, 1, 4)
}

/// ρ*(j,k) = ε^{il} A(j,i,l,k)
pub fn ricci_star<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<Tensor2<S>> {
    contract(a, h, 2, 3)
}

/// ΛRic = ½(ρ − ρᵀ)
pub fn alt_ricci<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<TwoForm<S>> {
    Ok(alternate_pair(&ricci(a, h)?))
}

pub fn sym_ricci<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<Tensor2<S>> {
    Ok(symmetrize_pair(&ricci(a, h)?))
}

/// σ(ψ)(x,y,z,w) = 2ψ(x,y)h(z,w) + ψ(x,z)h(y,w) − ψ(y,z)h(x,w) − ψ(x,w)h(y,z) + ψ(y,w)h(x,z)
pub fn sigma<S: Scalar>(psi: &TwoForm<S>, h: &InnerProduct<S>) -> Result<Tensor4<S>> {
    same_dim(h, psi.dim())?;
    let two = S::from_int(2);
    Ok(Tensor4::from_fn(psi.dim(), |i, j, k, l| {
        two.clone() * psi.get(i, j) * h.get(k, l) + psi.get(i, k).clone() * h.get(j, l)
            - psi.get(j, k).clone() * h.get(i, l)
            - psi.get(i, l).clone() * h.get(j, k)
            + psi.get(j, l).clone() * h.get(i, k)
    }))
}

/// A*(i,j,k,l) = −A(i,j,l,k)
pub fn conjugate<S: Scalar>(a: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(a.dim(), |i, j, k, l| -a.get(i, j, l, k).clone())
}

/// S(A)(i,j,k,l) = ½(A(i,j,k,l) + A(i,j,l,k))
pub fn symmetrize_last<S: Scalar>(a: &Tensor4<S>) -> Tensor4<S> {
    residual_pair_antisym34(a).scale(&S::from_frac(1, 2))
}

pub fn symmetry_report<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<SymmetryReport<S>> {
    Ok(SymmetryReport {
        antisym12: residual_antisym12(a).max_abs(),
        bianchi: residual_bianchi(a).max_abs(),
        weyl: residual_weyl(a, h)?.max_abs(),
        antisym34: residual_pair_antisym34(a).max_abs(),
        interchange: residual_interchange(a).max_abs(),
    })
}

/// Panics if the dimensions of `a` and `h` differ.
pub fn classify<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> ClassFlags {
    symmetry_report(a, h).expect("dimension mismatch in classify").flags()
}

pub fn require_class<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>, class: CurvatureClass) -> Result<()> {
    let report = symmetry_report(a, h)?;
    match report.first_violation_for(class) {
        None => Ok(()),
        Some(violated) => Err(Error::Class {
            required: class.letter(),
            violated,
        }),
    }
}

/// Algebraic part and 2-form of the splitting A = A₁ + σ(ψ).
#[derive(Clone, Debug, PartialEq)]
pub struct HigaParts<S = Rational> {
    pub algebraic: Tensor4<S>,
    pub psi: TwoForm<S>,
}

/// Splits a Weyl tensor as A = A₁ + σ(ψ) with ψ = −(1/n) ΛRic(A) and A₁ algebraic.
pub fn higa_decompose<S: Scalar>(model: &CurvatureModel<S>) -> Result<HigaParts<S>> {
    model.require(CurvatureClass::Weyl)?;
    let (a, h) = (model.tensor(), model.h());
    let psi = alt_ricci(a, h)?.scale(&S::from_frac(-1, a.dim() as i64));
    let algebraic = a.sub(&sigma(&psi, h)?);
    Ok(HigaParts { algebraic, psi })
}

/// −4[ψ(i,j)h(l,k) + ψ(j,k)h(l,i) + ψ(k,i)h(l,j)], the Bianchi defect of conjugate(σ(ψ)).
pub fn conjugate_bianchi_residual_closed_form<S: Scalar>(psi: &TwoForm<S>, h: &InnerProduct<S>) -> Result<Tensor4<S>> {
    same_dim(h, psi.dim())?;
    let minus_four = S::from_int(-4);
    Ok(Tensor4::from_fn(psi.dim(), |i, j, k, l| {
        (psi.get(i, j).clone() * h.get(l, k) + psi.get(j, k).clone() * h.get(l, i) + psi.get(k, i).clone() * h.get(l, j))
            * &minus_four
    }))
}

/// Returns the proportionality constant `c` when sym Ric = c·h.
pub fn is_einstein_weyl<S: Scalar>(model: &CurvatureModel<S>) -> Result<Option<S>> {
    let h = model.h();
    let sym = sym_ricci(model.tensor(), h)?;
    let c = h.inverse().matmul(&sym).trace() / S::from_int(model.dim() as i64);
    Ok(sym.approx_eq(&h.matrix().scale(&c)).then_some(c))
}
