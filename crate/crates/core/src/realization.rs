//! Jet-level realizations of curvature models.
//!
//! Everything lives on coordinates `x` centred at the point of interest and is
//! truncated to the order that determines curvature there: metrics to degree 2,
//! one-forms and connections to degree 1.
//!
//! Christoffel symbols are stored with the last index lowered by the *constant*
//! part ε of the metric: `Γ_{jkl} := ε_{lm} Γ_{jk}^m`. With this storage the
//! curvature at the origin is exactly
//!
//! `R_{ijkl}(0) = ∂_iΓ_{jkl} − ∂_jΓ_{ikl} + ε^{rs}(Γ_{irl}Γ_{jks} − Γ_{jrl}Γ_{iks})` at x = 0,
//!
//! and a connection can be kept fixed while the metric is rescaled.

use crate::curvature::{alt_ricci, higa_decompose, require_class, CurvatureClass, CurvatureModel};
use crate::error::{Error, Result};
use crate::poly::{sum, Poly2};
use crate::scalar::{Rational, Scalar};
use crate::tensor::{same_dim, InnerProduct, Tensor2, Tensor3, Tensor4, TwoForm};

/// Quadratic metric coefficient of [`riemann_realize`]:
/// `G(k,l,i,j) = (1/6)(A(k,i,l,j) + A(l,i,k,j))`, fixed against [`curvature_at_origin`].
pub const RIEMANN_QUAD_COEFF: (i64, i64) = (1, 6);

/// Linear Christoffel coefficient of [`affine_realize`]:
/// `C(i,j,k,l) = (1/3)(A(i,j,k,l) + A(i,k,j,l))`, fixed against [`curvature_at_origin`].
pub const AFFINE_LINEAR_COEFF: (i64, i64) = (1, 3);

/// `g_ij(x) = ε_ij + Σ_k L(k,i,j) x^k + Σ_{k,l} G(k,l,i,j) x^k x^l`, G symmetric in (k,l).
///
/// Jets built by [`riemann_realize`] have `L = 0` (geodesic coordinates); a linear
/// part only appears after a gauge transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet<S = Rational> {
    constant: InnerProduct<S>,
    linear: Tensor3<S>,
    quad: Tensor4<S>,
}

impl<S: Scalar> MetricJet<S> {
    pub fn new(constant: InnerProduct<S>, linear: Tensor3<S>, quad: Tensor4<S>) -> Result<Self> {
        let n = constant.dim();
        if linear.dim() != n || quad.dim() != n {
            return Err(Error::Dimension("metric jet parts have mismatched dimensions".into()));
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if !linear.get(k, i, j).approx_eq(linear.get(k, j, i)) {
                        return Err(Error::Shape("metric linear part not symmetric in (i,j)".into()));
                    }
                    for l in 0..n {
                        let g = quad.get(k, l, i, j);
                        if !g.approx_eq(quad.get(l, k, i, j)) || !g.approx_eq(quad.get(k, l, j, i)) {
                            return Err(Error::Shape("metric quadratic part not symmetric".into()));
                        }
                    }
                }
            }
        }
        Ok(Self { constant, linear, quad })
    }

    pub fn flat(constant: InnerProduct<S>) -> Self {
        let n = constant.dim();
        Self {
            constant,
            linear: Tensor3::zeros(n),
            quad: Tensor4::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.constant.dim()
    }

    pub fn constant(&self) -> &InnerProduct<S> {
        &self.constant
    }

    pub fn linear(&self) -> &Tensor3<S> {
        &self.linear
    }

    pub fn quad(&self) -> &Tensor4<S> {
        &self.quad
    }

    pub fn is_geodesic(&self) -> bool {
        self.linear.is_negligible()
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly2<S> {
        Poly2::from_parts(
            self.dim(),
            self.constant.get(i, j).clone(),
            |k| self.linear.get(k, i, j).clone(),
            |k, l| self.quad.get(k, l, i, j).clone(),
        )
    }

    fn entries(&self) -> Vec<Vec<Poly2<S>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// g^{ij}(x) through degree 1: ε^{-1} − ε^{-1} L(x) ε^{-1}.
    fn inverse_through_linear(&self) -> Vec<Vec<Poly2<S>>> {
        let n = self.dim();
        let e = &self.constant;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        Poly2::from_parts(
                            n,
                            e.inv(i, j).clone(),
                            |k| {
                                let mut acc = S::zero();
                                for a in 0..n {
                                    for b in 0..n {
                                        acc = acc + e.inv(i, a).clone() * self.linear.get(k, a, b) * e.inv(b, j);
                                    }
                                }
                                -acc
                            },
                            |_, _| S::zero(),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    fn from_polys(constant: InnerProduct<S>, g: &[Vec<Poly2<S>>]) -> Self {
        let n = constant.dim();
        Self {
            linear: Tensor3::from_fn(n, |k, i, j| g[i][j].c1(k).clone()),
            quad: Tensor4::from_fn(n, |k, l, i, j| g[i][j].c2(k, l).clone()),
            constant,
        }
    }
}

/// `φ_i(x) = c_i + Σ_l M(l,i) x^l`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneFormJet<S = Rational> {
    constant: Vec<S>,
    linear: Tensor2<S>,
}

impl<S: Scalar> OneFormJet<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            constant: vec![S::zero(); n],
            linear: Tensor2::zeros(n),
        }
    }

    pub fn from_linear(linear: Tensor2<S>) -> Self {
        Self {
            constant: vec![S::zero(); linear.dim()],
            linear,
        }
    }

    pub fn new(constant: Vec<S>, linear: Tensor2<S>) -> Result<Self> {
        if constant.len() != linear.dim() {
            return Err(Error::Dimension("one-form constant and linear parts differ in dimension".into()));
        }
        Ok(Self { constant, linear })
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn constant(&self) -> &[S] {
        &self.constant
    }

    /// M(l, i), the coefficient of x^l in φ_i.
    pub fn linear(&self) -> &Tensor2<S> {
        &self.linear
    }

    pub fn component(&self, i: usize) -> Poly2<S> {
        Poly2::from_parts(
            self.dim(),
            self.constant[i].clone(),
            |l| self.linear.get(l, i).clone(),
            |_, _| S::zero(),
        )
    }
}

/// `Γ_{jkl}(x) = Γ⁰_{jkl} + Σ_i C(i,j,k,l) x^i`, last index lowered with ε.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionJet<S = Rational> {
    background: InnerProduct<S>,
    constant: Tensor3<S>,
    linear: Tensor4<S>,
}

impl<S: Scalar> ConnectionJet<S> {
    pub fn new(background: InnerProduct<S>, constant: Tensor3<S>, linear: Tensor4<S>) -> Result<Self> {
        let n = background.dim();
        if constant.dim() != n || linear.dim() != n {
            return Err(Error::Dimension("connection jet parts have mismatched dimensions".into()));
        }
        Ok(Self {
            background,
            constant,
            linear,
        })
    }

    pub fn zero(background: InnerProduct<S>) -> Self {
        let n = background.dim();
        Self {
            background,
            constant: Tensor3::zeros(n),
            linear: Tensor4::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.background.dim()
    }

    pub fn background(&self) -> &InnerProduct<S> {
        &self.background
    }

    /// Γ_{jkl}(0)
    pub fn constant(&self) -> &Tensor3<S> {
        &self.constant
    }

    /// C(i,j,k,l) = ∂_i Γ_{jkl}
    pub fn linear(&self) -> &Tensor4<S> {
        &self.linear
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            background: self.background.clone(),
            constant: self.constant.add(&other.constant),
            linear: self.linear.add(&other.linear),
        }
    }

    fn lowered(&self, j: usize, k: usize, l: usize) -> Poly2<S> {
        Poly2::from_parts(
            self.dim(),
            self.constant.get(j, k, l).clone(),
            |i| self.linear.get(i, j, k, l).clone(),
            |_, _| S::zero(),
        )
    }

    /// Γ_{jk}^m
    fn raised(&self, j: usize, k: usize, m: usize) -> Poly2<S> {
        let n = self.dim();
        sum(n, (0..n).map(|l| self.lowered(j, k, l).scale(self.background.inv(m, l))))
    }

    /// Builds from `Γ_{jk}^m` polynomials, keeping degree ≤ 1.
    fn from_raised(background: InnerProduct<S>, raised: &[Vec<Vec<Poly2<S>>>]) -> Self {
        let n = background.dim();
        let lower = |j: usize, k: usize, l: usize| -> Poly2<S> {
            sum(n, (0..n).map(|m| raised[j][k][m].scale(background.get(l, m))))
        };
        let lowered: Vec<Poly2<S>> = (0..n.pow(3)).map(|f| lower(f / (n * n), (f / n) % n, f % n)).collect();
        let at = |j: usize, k: usize, l: usize| &lowered[(j * n + k) * n + l];
        Self {
            constant: Tensor3::from_fn(n, |j, k, l| at(j, k, l).c0().clone()),
            linear: Tensor4::from_fn(n, |i, j, k, l| at(j, k, l).c1(i).clone()),
            background: background.clone(),
        }
    }
}

/// A metric and one-form jet with the connection they determine.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylJet<S = Rational> {
    metric: MetricJet<S>,
    phi: OneFormJet<S>,
    conn: ConnectionJet<S>,
    model: CurvatureModel<S>,
}

impl<S: Scalar> WeylJet<S> {
    /// Derives the connection as Γ^g + α.
    pub fn new(metric: MetricJet<S>, phi: OneFormJet<S>, model: CurvatureModel<S>) -> Result<Self> {
        let conn = levi_civita_christoffels(&metric).add(&weyl_alpha(&phi, &metric)?);
        Self::with_connection(metric, phi, conn, model)
    }

    /// Keeps an explicitly supplied connection, e.g. one read back from a file.
    pub fn with_connection(
        metric: MetricJet<S>,
        phi: OneFormJet<S>,
        conn: ConnectionJet<S>,
        model: CurvatureModel<S>,
    ) -> Result<Self> {
        let n = metric.dim();
        if phi.dim() != n || conn.dim() != n || model.dim() != n {
            return Err(Error::Dimension("jet parts have mismatched dimensions".into()));
        }
        if conn.background() != metric.constant() {
            return Err(Error::Shape("connection background differs from the metric at the origin".into()));
        }
        Ok(Self {
            metric,
            phi,
            conn,
            model,
        })
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn metric(&self) -> &MetricJet<S> {
        &self.metric
    }

    pub fn phi(&self) -> &OneFormJet<S> {
        &self.phi
    }

    pub fn connection(&self) -> &ConnectionJet<S> {
        &self.conn
    }

    pub fn model(&self) -> &CurvatureModel<S> {
        &self.model
    }
}

/// `f(x) = Σ_k a_k x^k + Σ_{k,l} Q_{kl} x^k x^l`, Q symmetric, f(0) = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFunction<S = Rational> {
    linear: Vec<S>,
    quad: Tensor2<S>,
}

impl<S: Scalar> GaugeFunction<S> {
    pub fn new(linear: Vec<S>, quad: Tensor2<S>) -> Result<Self> {
        if linear.len() != quad.dim() {
            return Err(Error::Dimension("gauge function parts differ in dimension".into()));
        }
        if !quad.is_symmetric() {
            return Err(Error::Shape("gauge function quadratic part must be symmetric".into()));
        }
        Ok(Self { linear, quad })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            linear: vec![S::zero(); n],
            quad: Tensor2::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.quad.dim()
    }

    pub fn linear(&self) -> &[S] {
        &self.linear
    }

    pub fn quad(&self) -> &Tensor2<S> {
        &self.quad
    }

    fn poly(&self) -> Poly2<S> {
        Poly2::from_parts(
            self.dim(),
            S::zero(),
            |k| self.linear[k].clone(),
            |k, l| self.quad.get(k, l).clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationReport<S = Rational> {
    pub curvature_at_origin: Tensor4<S>,
    pub target: Tensor4<S>,
    pub max_abs_difference: S,
    /// g(0) against the model's inner product.
    pub metric_difference: S,
    /// `None` for bare affine connections.
    pub compatibility_max: Option<S>,
    pub torsion_max: S,
    /// max |dφ + (1/n) ΛRic(R(0))|; `None` for bare affine connections.
    pub dphi_check: Option<S>,
    pub success: bool,
}

impl<S: Scalar> RealizationReport<S> {
    /// Name of the first nonzero check, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        let checks: [(&'static str, Option<&S>); 5] = [
            ("curvature", Some(&self.max_abs_difference)),
            ("metric", Some(&self.metric_difference)),
            ("compatibility", self.compatibility_max.as_ref()),
            ("torsion", Some(&self.torsion_max)),
            ("dphi", self.dphi_check.as_ref()),
        ];
        checks
            .into_iter()
            .find(|(_, v)| v.is_some_and(|v| !v.is_negligible()))
            .map(|(name, _)| name)
    }
}

/// Γ^g from `Γ_{ijk} = ½(∂_i g_{jk} + ∂_j g_{ik} − ∂_k g_{ij})`, raised with g^{-1}
/// through degree 1 and re-lowered with ε.
pub fn levi_civita_christoffels<S: Scalar>(m: &MetricJet<S>) -> ConnectionJet<S> {
    let n = m.dim();
    let g = m.entries();
    let ginv = m.inverse_through_linear();
    let half = S::from_frac(1, 2);
    let dg: Vec<Vec<Vec<Poly2<S>>>> = (0..n)
        .map(|a| (0..n).map(|i| (0..n).map(|j| g[i][j].derivative(a)).collect()).collect())
        .collect();
    let first_kind = |i: usize, j: usize, k: usize| -> Poly2<S> {
        dg[i][j][k].add(&dg[j][i][k]).sub(&dg[k][i][j]).scale(&half)
    };
    let raised: Vec<Vec<Vec<Poly2<S>>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|mm| sum(n, (0..n).map(|k| ginv[mm][k].mul(&first_kind(i, j, k)))).truncate(1))
                        .collect()
                })
                .collect()
        })
        .collect();
    ConnectionJet::from_raised(m.constant().clone(), &raised)
}

/// α with `α_{ij}^m = φ_i δ_j^m + φ_j δ_i^m − g_{ij} ξ^m`, ξ^m = g^{mk} φ_k, through degree 1.
///
/// For a geodesic metric and φ(0) = 0 this is
/// `α_{ijk} = φ_i ε_{jk} + φ_j ε_{ik} − φ_k ε_{ij}`.
pub fn weyl_alpha<S: Scalar>(phi: &OneFormJet<S>, m: &MetricJet<S>) -> Result<ConnectionJet<S>> {
    let n = m.dim();
    if phi.dim() != n {
        return Err(Error::Dimension("one-form and metric dimensions differ".into()));
    }
    let g = m.entries();
    let ginv = m.inverse_through_linear();
    let comps: Vec<Poly2<S>> = (0..n).map(|i| phi.component(i)).collect();
    let xi: Vec<Poly2<S>> = (0..n)
        .map(|mm| sum(n, (0..n).map(|k| ginv[mm][k].mul(&comps[k]))).truncate(1))
        .collect();
    let raised: Vec<Vec<Vec<Poly2<S>>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|mm| {
                            let mut p = g[i][j].mul(&xi[mm]).scale(&-S::one());
                            if j == mm {
                                p = p.add(&comps[i]);
                            }
                            if i == mm {
                                p = p.add(&comps[j]);
                            }
                            p.truncate(1)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(ConnectionJet::from_raised(m.constant().clone(), &raised))
}

pub fn curvature_at_origin<S: Scalar>(c: &ConnectionJet<S>) -> Tensor4<S> {
    let n = c.dim();
    let e = c.background();
    let g0 = c.constant();
    let lin = c.linear();
    Tensor4::from_fn(n, |i, j, k, l| {
        let mut acc = lin.get(i, j, k, l).clone() - lin.get(j, i, k, l);
        if !g0.is_negligible() {
            for r in 0..n {
                for s in 0..n {
                    let w = e.inv(r, s);
                    if w.is_negligible() {
                        continue;
                    }
                    let quad = g0.get(i, r, l).clone() * g0.get(j, k, s) - g0.get(j, r, l).clone() * g0.get(i, k, s);
                    acc = acc + w.clone() * quad;
                }
            }
        }
        acc
    })
}

/// Metric jet in geodesic coordinates whose Levi-Civita curvature at 0 is `a1`.
pub fn riemann_realize<S: Scalar>(a1: &Tensor4<S>, h: &InnerProduct<S>) -> Result<MetricJet<S>> {
    same_dim(h, a1.dim())?;
    require_class(a1, h, CurvatureClass::Algebraic)?;
    let c = S::from_frac(RIEMANN_QUAD_COEFF.0, RIEMANN_QUAD_COEFF.1);
    let n = a1.dim();
    let quad = Tensor4::from_fn(n, |k, l, i, j| (a1.get(k, i, l, j).clone() + a1.get(l, i, k, j)) * &c);
    MetricJet::new(h.clone(), Tensor3::zeros(n), quad)
}

/// Pseudo-Riemannian jet (φ = 0) realizing an algebraic model.
pub fn riemann_jet<S: Scalar>(model: &CurvatureModel<S>) -> Result<WeylJet<S>> {
    let metric = riemann_realize(model.tensor(), model.h())?;
    WeylJet::new(metric, OneFormJet::zero(model.dim()), model.clone())
}

/// Weyl jet realizing a Weyl model: split A = A₁ + σ(ψ), realize A₁ by a metric
/// and take φ_i = Σ_l ψ(l,i) x^l.
pub fn weyl_realize<S: Scalar>(model: &CurvatureModel<S>) -> Result<WeylJet<S>> {
    let parts = higa_decompose(model)?;
    let metric = riemann_realize(&parts.algebraic, model.h())?;
    let phi = OneFormJet::from_linear(parts.psi.into_matrix());
    WeylJet::new(metric, phi, model.clone())
}

/// Torsion-free connection jet whose curvature at 0 is `a`.
pub fn affine_realize<S: Scalar>(a: &Tensor4<S>, h: &InnerProduct<S>) -> Result<ConnectionJet<S>> {
    same_dim(h, a.dim())?;
    require_class(a, h, CurvatureClass::Generalized)?;
    let c = S::from_frac(AFFINE_LINEAR_COEFF.0, AFFINE_LINEAR_COEFF.1);
    let n = a.dim();
    let linear = Tensor4::from_fn(n, |i, j, k, l| (a.get(i, j, k, l).clone() + a.get(i, k, j, l)) * &c);
    ConnectionJet::new(h.clone(), Tensor3::zeros(n), linear)
}

/// max |coefficient| of ∇g + 2φ⊗g through degree 1.
pub fn metricity_defect<S: Scalar>(metric: &MetricJet<S>, phi: &OneFormJet<S>, conn: &ConnectionJet<S>) -> S {
    let n = metric.dim();
    let g = metric.entries();
    let two = S::from_int(2);
    let raised: Vec<Poly2<S>> = (0..n.pow(3)).map(|f| conn.raised(f / (n * n), (f / n) % n, f % n)).collect();
    let gamma = |i: usize, j: usize, m: usize| &raised[(i * n + j) * n + m];
    let mut worst = S::zero();
    for i in 0..n {
        let phi_i = phi.component(i);
        for j in 0..n {
            for k in 0..n {
                let transport = sum(
                    n,
                    (0..n).map(|m| gamma(i, j, m).mul(&g[m][k]).add(&gamma(i, k, m).mul(&g[j][m]))),
                );
                let defect = g[j][k]
                    .derivative(i)
                    .sub(&transport)
                    .add(&phi_i.mul(&g[j][k]).scale(&two))
                    .truncate(1);
                let v = defect.max_abs_through(1);
                if v > worst {
                    worst = v;
                }
            }
        }
    }
    worst
}

pub fn compatibility_residual<S: Scalar>(jet: &WeylJet<S>) -> S {
    metricity_defect(&jet.metric, &jet.phi, &jet.conn)
}

/// max |Γ_{jkl} − Γ_{kjl}| over all coefficients.
pub fn torsion_residual<S: Scalar>(c: &ConnectionJet<S>) -> S {
    let n = c.dim();
    let lin = Tensor4::from_fn(n, |i, j, k, l| c.linear.get(i, j, k, l).clone() - c.linear.get(i, k, j, l));
    let cst = Tensor3::from_fn(n, |j, k, l| c.constant.get(j, k, l).clone() - c.constant.get(k, j, l));
    let (a, b) = (lin.max_abs(), cst.max_abs());
    if a > b {
        a
    } else {
        b
    }
}

/// dφ(j,k) = ½(∂_jφ_k − ∂_kφ_j) = ½(M(j,k) − M(k,j)).
pub fn dphi<S: Scalar>(phi: &OneFormJet<S>) -> TwoForm<S> {
    crate::tensor::alternate_pair(phi.linear())
}

pub fn verify_realization<S: Scalar>(jet: &WeylJet<S>) -> RealizationReport<S> {
    let model = jet.model();
    let curvature = curvature_at_origin(&jet.conn);
    let n = S::from_int(jet.dim() as i64);
    let lam = alt_ricci(&curvature, model.h()).expect("dimensions checked at construction");
    let dphi_check = dphi(&jet.phi).matrix().add(&lam.matrix().scale(&(S::one() / n))).max_abs();
    finish_report(
        curvature,
        model,
        jet.metric.constant(),
        Some(compatibility_residual(jet)),
        torsion_residual(&jet.conn),
        Some(dphi_check),
    )
}

/// Curvature and torsion checks for a bare connection realizing `model`.
pub fn verify_affine<S: Scalar>(conn: &ConnectionJet<S>, model: &CurvatureModel<S>) -> Result<RealizationReport<S>> {
    same_dim(model.h(), conn.dim())?;
    Ok(finish_report(
        curvature_at_origin(conn),
        model,
        conn.background(),
        None,
        torsion_residual(conn),
        None,
    ))
}

fn finish_report<S: Scalar>(
    curvature: Tensor4<S>,
    model: &CurvatureModel<S>,
    metric_at_origin: &InnerProduct<S>,
    compatibility_max: Option<S>,
    torsion_max: S,
    dphi_check: Option<S>,
) -> RealizationReport<S> {
    let target = model.tensor().clone();
    let max_abs_difference = curvature.sub(&target).max_abs();
    let metric_difference = metric_at_origin.matrix().sub(model.h().matrix()).max_abs();
    let mut report = RealizationReport {
        curvature_at_origin: curvature,
        target,
        max_abs_difference,
        metric_difference,
        compatibility_max,
        torsion_max,
        dphi_check,
        success: false,
    };
    report.success = report.first_failure().is_none();
    report
}

/// (g, φ) → (e^{2f} g, φ − df) with the connection left untouched.
pub fn gauge_transform<S: Scalar>(jet: &WeylJet<S>, f: &GaugeFunction<S>) -> Result<WeylJet<S>> {
    let n = jet.dim();
    if f.dim() != n {
        return Err(Error::Dimension(format!(
            "gauge function has dimension {}, jet has {n}",
            f.dim()
        )));
    }
    let fp = f.poly();
    let two = S::from_int(2);
    // e^{2f} = 1 + 2f + 2f² + O(|x|³)
    let conformal = Poly2::constant(n, S::one())
        .add(&fp.scale(&two))
        .add(&fp.mul(&fp).scale(&two));
    let g = jet.metric.entries();
    let scaled: Vec<Vec<Poly2<S>>> = g
        .iter()
        .map(|row| row.iter().map(|gij| conformal.mul(gij)).collect())
        .collect();
    let metric = MetricJet::from_polys(jet.metric.constant().clone(), &scaled);

    let df: Vec<Poly2<S>> = (0..n).map(|i| fp.derivative(i)).collect();
    let constant = (0..n)
        .map(|i| jet.phi.constant[i].clone() - df[i].c0())
        .collect();
    let linear = Tensor2::from_fn(n, |l, i| jet.phi.linear.get(l, i).clone() - df[i].c1(l));
    let phi = OneFormJet::new(constant, linear)?;
    WeylJet::with_connection(metric, phi, jet.conn.clone(), jet.model.clone())
}
