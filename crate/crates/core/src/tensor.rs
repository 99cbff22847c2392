//! Dense multilinear algebra over a [`Scalar`] field.
//!
//! Storage is row-major: `Tensor2(i, j)` lives at `i * n + j`, `Tensor3(i, j, k)`
//! at `(i * n + j) * n + k` and `Tensor4(i, j, k, l)` at `((i * n + j) * n + k) * n + l`.
//! All indices are 0-based in memory.

use crate::error::{Error, Result};
use crate::scalar::{max_abs, Rational, Scalar};

/// Largest supported dimension (n⁴ = 65536 entries for a rank-4 tensor).
pub const MAX_DIM: usize = 16;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Dimension(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

macro_rules! dense_common {
    ($name:ident, $rank:expr) => {
        impl<S: Scalar> $name<S> {
            pub fn zeros(dim: usize) -> Self {
                Self {
                    dim,
                    entries: vec![S::zero(); dim.pow($rank)],
                }
            }

            /// Builds from a flat row-major vector of exactly `dim^rank` entries.
            pub fn from_entries(dim: usize, entries: Vec<S>) -> Result<Self> {
                check_dim(dim)?;
                if entries.len() != dim.pow($rank) {
                    return Err(Error::Shape(format!(
                        "expected {} entries for dimension {dim}, got {}",
                        dim.pow($rank),
                        entries.len()
                    )));
                }
                Ok(Self { dim, entries })
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            pub fn entries(&self) -> &[S] {
                &self.entries
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.dim, other.dim, "dimension mismatch");
                self.zip_with(other, |a, b| a.clone() + b)
            }

            pub fn sub(&self, other: &Self) -> Self {
                assert_eq!(self.dim, other.dim, "dimension mismatch");
                self.zip_with(other, |a, b| a.clone() - b)
            }

            pub fn scale(&self, factor: &S) -> Self {
                self.map(|a| a.clone() * factor)
            }

            pub fn neg(&self) -> Self {
                self.map(|a| -a.clone())
            }

            pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
                Self {
                    dim: self.dim,
                    entries: self.entries.iter().map(f).collect(),
                }
            }

            fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
                Self {
                    dim: self.dim,
                    entries: self
                        .entries
                        .iter()
                        .zip(&other.entries)
                        .map(|(a, b)| f(a, b))
                        .collect(),
                }
            }

            pub fn max_abs(&self) -> S {
                max_abs(&self.entries)
            }

            /// Exact zero in rational mode, within tolerance in float mode.
            pub fn is_negligible(&self) -> bool {
                self.entries.iter().all(Scalar::is_negligible)
            }

            /// Entrywise comparison under [`Scalar::approx_eq`].
            pub fn approx_eq(&self, other: &Self) -> bool {
                self.dim == other.dim
                    && self
                        .entries
                        .iter()
                        .zip(&other.entries)
                        .all(|(a, b)| a.approx_eq(b))
            }
        }
    };
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<S = Rational> {
    dim: usize,
    entries: Vec<S>,
}

dense_common!(Tensor2, 2);

impl<S: Scalar> Tensor2<S> {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape(format!("matrix is not {dim}x{dim}")));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { S::one() } else { S::zero() })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (0..n).fold(S::zero(), |acc, m| acc + self.get(i, m).clone() * other.get(m, j))
        })
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.approx_eq(&self.transpose())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.approx_eq(&self.transpose().neg())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S = Rational> {
    dim: usize,
    entries: Vec<S>,
}

dense_common!(Tensor3, 3);

impl<S: Scalar> Tensor3<S> {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim.pow(3));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    entries.push(f(i, j, k));
                }
            }
        }
        Self { dim, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.entries[(i * self.dim + j) * self.dim + k]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4<S = Rational> {
    dim: usize,
    entries: Vec<S>,
}

dense_common!(Tensor4, 4);

impl<S: Scalar> Tensor4<S> {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim.pow(4));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        entries.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { dim, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        let n = self.dim;
        &self.entries[((i * n + j) * n + k) * n + l]
    }

    /// Iterates `([i, j, k, l], value)` in storage order.
    pub fn indexed(&self) -> impl Iterator<Item = ([usize; 4], &S)> + '_ {
        let n = self.dim;
        self.entries.iter().enumerate().map(move |(flat, v)| {
            ([flat / (n * n * n), (flat / (n * n)) % n, (flat / n) % n, flat % n], v)
        })
    }
}

/// Antisymmetric n×n matrix: ψ, ΛRic, dφ.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<S = Rational>(Tensor2<S>);

impl<S: Scalar> TwoForm<S> {
    pub fn new(matrix: Tensor2<S>) -> Result<Self> {
        if !matrix.is_antisymmetric() {
            return Err(Error::Shape("two-form must be antisymmetric".into()));
        }
        Ok(Self(matrix))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(Tensor2::zeros(dim))
    }

    /// Fills from the upper triangle; `upper(i, j)` is called for `i < j` only.
    pub fn from_upper(dim: usize, upper: impl Fn(usize, usize) -> S) -> Self {
        let m = Tensor2::from_fn(dim, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => upper(i, j),
            std::cmp::Ordering::Greater => -upper(j, i),
            std::cmp::Ordering::Equal => S::zero(),
        });
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Tensor2<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Tensor2<S> {
        self.0
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self(self.0.scale(factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    pub fn is_negligible(&self) -> bool {
        self.0.is_negligible()
    }
}

/// Nondegenerate symmetric bilinear form on V with its inverse and signature.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct<S = Rational> {
    matrix: Tensor2<S>,
    inverse: Tensor2<S>,
    signature: (usize, usize),
}

impl<S: Scalar> InnerProduct<S> {
    /// `diag(+1 × p, −1 × q)`.
    pub fn from_signature(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n < 2 {
            return Err(Error::Dimension(format!("signature ({p}, {q}) has dimension < 2")));
        }
        check_dim(n)?;
        let matrix = Tensor2::from_fn(n, |i, j| match (i == j, i < p) {
            (false, _) => S::zero(),
            (true, true) => S::one(),
            (true, false) => -S::one(),
        });
        Ok(Self {
            inverse: matrix.clone(),
            matrix,
            signature: (p, q),
        })
    }

    pub fn from_matrix(matrix: Tensor2<S>) -> Result<Self> {
        let n = matrix.dim();
        if n < 2 {
            return Err(Error::Dimension("inner product needs dimension >= 2".into()));
        }
        if !matrix.is_symmetric() {
            return Err(Error::Shape("inner product matrix is not symmetric".into()));
        }
        let inverse = invert(&matrix)?;
        let signature = signature_of(&matrix)?;
        Ok(Self {
            matrix,
            inverse,
            signature,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Tensor2<S> {
        &self.matrix
    }

    pub fn inverse(&self) -> &Tensor2<S> {
        &self.inverse
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// ε_{ij}
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        self.matrix.get(i, j)
    }

    /// ε^{ij}
    #[inline]
    pub fn inv(&self, i: usize, j: usize) -> &S {
        self.inverse.get(i, j)
    }

    /// True when the matrix is `diag(+1 × p, −1 × q)`.
    pub fn is_canonical(&self) -> bool {
        let (p, q) = self.signature;
        Self::from_signature(p, q)
            .map(|c| c.matrix.approx_eq(&self.matrix))
            .unwrap_or(false)
    }

    fn check_same_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::Dimension(format!(
                "tensor dimension {dim} does not match inner product dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Fraction-free Gauss-Jordan elimination on `[m | I]`.
fn invert<S: Scalar>(m: &Tensor2<S>) -> Result<Tensor2<S>> {
    let n = m.dim();
    let width = 2 * n;
    let mut a: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..width)
                .map(|j| {
                    if j < n {
                        m.get(i, j).clone()
                    } else if j - n == i {
                        S::one()
                    } else {
                        S::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = S::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !a[r][k].is_negligible())
            .ok_or_else(|| Error::Degenerate("matrix is singular".into()))?;
        a.swap(k, pivot);
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..width {
                let updated = (a[k][k].clone() * &a[i][j] - factor.clone() * &a[k][j]) / &prev;
                a[i][j] = updated;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(Tensor2::from_fn(n, |i, j| a[i][n + j].clone() / &a[i][i]))
}

/// Sylvester inertia via symmetric (congruence) elimination.
fn signature_of<S: Scalar>(m: &Tensor2<S>) -> Result<(usize, usize)> {
    let n = m.dim();
    let mut a: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_negligible() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_negligible()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_negligible()) {
                // e_k -> e_k + e_j makes the pivot 2 a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] = a[k][c].clone() + &v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] = row[k].clone() + &v;
                }
            } else {
                return Err(Error::Degenerate("matrix is singular".into()));
            }
        }
        let d = a[k][k].clone();
        if d > S::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let factor = a[i][k].clone() / &d;
            for j in k..n {
                let v = factor.clone() * &a[k][j];
                a[i][j] = a[i][j].clone() - &v;
            }
        }
        for i in k + 1..n {
            a[k][i] = S::zero();
        }
    }
    Ok((pos, neg))
}

/// Contracts two slots of `t` against ε^{ab}. Slots are numbered 1 to 4; the
/// two remaining slots keep their relative order.
pub fn contract<S: Scalar>(
    t: &Tensor4<S>,
    h: &InnerProduct<S>,
    slot_a: usize,
    slot_b: usize,
) -> Result<Tensor2<S>> {
    h.check_same_dim(t.dim())?;
    if slot_a == slot_b || !(1..=4).contains(&slot_a) || !(1..=4).contains(&slot_b) {
        return Err(Error::Shape(format!("invalid contraction slots ({slot_a}, {slot_b})")));
    }
    let n = t.dim();
    let free: Vec<usize> = (1..=4).filter(|s| *s != slot_a && *s != slot_b).collect();
    Ok(Tensor2::from_fn(n, |r, s| {
        let mut acc = S::zero();
        for a in 0..n {
            for b in 0..n {
                let w = h.inv(a, b);
                if w.is_zero() {
                    continue;
                }
                let mut idx = [0usize; 4];
                idx[slot_a - 1] = a;
                idx[slot_b - 1] = b;
                idx[free[0] - 1] = r;
                idx[free[1] - 1] = s;
                acc = acc + w.clone() * t.get(idx[0], idx[1], idx[2], idx[3]);
            }
        }
        acc
    }))
}

/// ½(t − tᵀ)
pub fn alternate_pair<S: Scalar>(t: &Tensor2<S>) -> TwoForm<S> {
    let half = S::from_frac(1, 2);
    TwoForm(Tensor2::from_fn(t.dim(), |i, j| {
        (t.get(i, j).clone() - t.get(j, i)) * &half
    }))
}

/// ½(t + tᵀ)
pub fn symmetrize_pair<S: Scalar>(t: &Tensor2<S>) -> Tensor2<S> {
    let half = S::from_frac(1, 2);
    Tensor2::from_fn(t.dim(), |i, j| (t.get(i, j).clone() + t.get(j, i)) * &half)
}

pub(crate) fn same_dim<S: Scalar>(h: &InnerProduct<S>, dim: usize) -> Result<()> {
    h.check_same_dim(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn mat(rows: &[&[i64]]) -> Tensor2 {
        Tensor2::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn signature_constructors() {
        let h = InnerProduct::<Q>::from_signature(2, 0).unwrap();
        assert_eq!(h.matrix(), &mat(&[&[1, 0], &[0, 1]]));
        let h = InnerProduct::<Q>::from_signature(1, 1).unwrap();
        assert_eq!(h.matrix(), &mat(&[&[1, 0], &[0, -1]]));
        let h = InnerProduct::<Q>::from_signature(3, 1).unwrap();
        assert_eq!(h.matrix(), &mat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]));
        assert_eq!(h.inverse(), h.matrix());
        assert!(matches!(InnerProduct::<Q>::from_signature(1, 0), Err(Error::Dimension(_))));
    }

    #[test]
    fn from_matrix_examples() {
        let id = InnerProduct::from_matrix(Tensor2::<Q>::identity(3)).unwrap();
        assert_eq!(id.signature(), (3, 0));
        assert_eq!(id.inverse(), &Tensor2::identity(3));

        let hyperbolic = InnerProduct::from_matrix(mat(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(hyperbolic.signature(), (1, 1));
        assert_eq!(hyperbolic.inverse(), &mat(&[&[0, 1], &[1, 0]]));

        assert!(matches!(
            InnerProduct::from_matrix(mat(&[&[1, 1], &[1, 1]])),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            InnerProduct::from_matrix(mat(&[&[1, 2], &[0, 1]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn signature_with_zero_diagonal_block() {
        // two hyperbolic planes plus a negative direction
        let m = mat(&[
            &[0, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, 0, 2, 0],
            &[0, 0, 2, 0, 0],
            &[0, 0, 0, 0, -3],
        ]);
        let h = InnerProduct::from_matrix(m.clone()).unwrap();
        assert_eq!(h.signature(), (2, 3));
        assert_eq!(m.matmul(h.inverse()), Tensor2::identity(5));
    }

    #[test]
    fn alternate_pair_examples() {
        let t = mat(&[&[0, 3], &[1, 0]]);
        assert_eq!(alternate_pair(&t).matrix(), &mat(&[&[0, 1], &[-1, 0]]));
        let sym = mat(&[&[2, 5], &[5, -1]]);
        assert!(alternate_pair(&sym).is_negligible());
    }

    #[test]
    fn contract_rejects_bad_slots_and_dims() {
        let h = InnerProduct::<Q>::from_signature(2, 0).unwrap();
        let t = Tensor4::<Q>::zeros(2);
        assert!(contract(&t, &h, 1, 1).is_err());
        assert!(contract(&t, &h, 0, 2).is_err());
        assert!(contract(&Tensor4::<Q>::zeros(3), &h, 1, 4).is_err());
        assert!(contract(&t, &h, 1, 4).unwrap().is_negligible());
    }

    #[test]
    fn contract_picks_free_slots_in_order() {
        // t(i,j,k,l) = 1 only at (0,1,0,0): contracting slots 1,4 gives r(1,0)=1
        let t = Tensor4::<Q>::from_fn(2, |i, j, k, l| if (i, j, k, l) == (0, 1, 0, 0) { q(1) } else { q(0) });
        let h = InnerProduct::<Q>::from_signature(2, 0).unwrap();
        let r = contract(&t, &h, 1, 4).unwrap();
        assert_eq!(r.get(1, 0), &q(1));
        assert_eq!(r.max_abs(), q(1));
        let r = contract(&t, &h, 3, 4).unwrap();
        assert_eq!(r.get(0, 1), &q(1));
    }

    #[test]
    fn float_mode_inverse() {
        let m = Tensor2::<f64>::from_rows(vec![vec![2.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let h = InnerProduct::from_matrix(m.clone()).unwrap();
        assert_eq!(h.signature(), (1, 1));
        assert!(m.matmul(h.inverse()).approx_eq(&Tensor2::identity(2)));
    }

    fn arb_tensor4() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, i64)> {
        (2usize..=4).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-5i64..=5, n.pow(4)),
                prop::collection::vec(-5i64..=5, n.pow(4)),
                -5i64..=5,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn contract_is_linear((n, t1, t2, a) in arb_tensor4(), p in 0usize..=4, sa in 1usize..=4, sb in 1usize..=4) {
            prop_assume!(sa != sb);
            let p = p.min(n);
            let h = InnerProduct::<Q>::from_signature(p, n - p).unwrap();
            let t1 = Tensor4::from_entries(n, t1.into_iter().map(q).collect()).unwrap();
            let t2 = Tensor4::from_entries(n, t2.into_iter().map(q).collect()).unwrap();
            let lhs = contract(&t1.scale(&q(a)).add(&t2), &h, sa, sb).unwrap();
            let rhs = contract(&t1, &h, sa, sb).unwrap().scale(&q(a)).add(&contract(&t2, &h, sa, sb).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pair_parts_reconstruct(n in 2usize..=6, seed in prop::collection::vec(-9i64..=9, 36)) {
            let t = Tensor2::from_fn(n, |i, j| q(seed[i * 6 + j]));
            let alt = alternate_pair(&t);
            let sym = symmetrize_pair(&t);
            prop_assert!(alt.matrix().is_antisymmetric());
            prop_assert!(sym.is_symmetric());
            prop_assert_eq!(alt.matrix().add(&sym), t);
        }

        #[test]
        fn inverse_is_exact(n in 2usize..=5, raw in prop::collection::vec(-5i64..=5, 25)) {
            let m = Tensor2::from_fn(n, |i, j| {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                q(raw[a * 5 + b])
            });
            match InnerProduct::from_matrix(m.clone()) {
                Ok(h) => {
                    prop_assert_eq!(m.matmul(h.inverse()), Tensor2::identity(n));
                    let (p, qn) = h.signature();
                    prop_assert_eq!(p + qn, n);
                }
                Err(e) => prop_assert!(matches!(e, Error::Degenerate(_))),
            }
        }
    }
}
