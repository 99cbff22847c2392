//! Seeded random members of each curvature class, with small integer raw entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::{classify, sigma, CurvatureClass};
use crate::scalar::Scalar;
use crate::tensor::{InnerProduct, Tensor4, TwoForm};

const ENTRY_BOUND: i64 = 4;

fn raw_tensor<S: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Tensor4<S> {
    let entries = (0..n.pow(4))
        .map(|_| S::from_int(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)))
        .collect();
    Tensor4::from_entries(n, entries).expect("n^4 entries")
}

fn raw_two_form<S: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> TwoForm<S> {
    let upper: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)).collect();
    TwoForm::from_upper(n, |i, j| S::from_int(upper[i * n + j]))
}

fn antisymmetrize12<S: Scalar>(t: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(t.dim(), |i, j, k, l| t.get(i, j, k, l).clone() - t.get(j, i, k, l))
}

fn antisymmetrize34<S: Scalar>(t: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(t.dim(), |i, j, k, l| t.get(i, j, k, l).clone() - t.get(i, j, l, k))
}

fn symmetrize_pairs<S: Scalar>(t: &Tensor4<S>) -> Tensor4<S> {
    Tensor4::from_fn(t.dim(), |i, j, k, l| t.get(i, j, k, l).clone() + t.get(k, l, i, j))
}

/// B(A) = A − ⅓[A(i,j,k,l) + A(j,k,i,l) + A(k,i,j,l)]
pub fn bianchi_projector<S: Scalar>(t: &Tensor4<S>) -> Tensor4<S> {
    let third = S::from_frac(1, 3);
    Tensor4::from_fn(t.dim(), |i, j, k, l| {
        let cyclic = t.get(i, j, k, l).clone() + t.get(j, k, i, l) + t.get(k, i, j, l);
        t.get(i, j, k, l).clone() - cyclic * &third
    })
}

fn algebraic_from<S: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Tensor4<S> {
    let raw = raw_tensor(rng, n);
    bianchi_projector(&symmetrize_pairs(&antisymmetrize34(&antisymmetrize12(&raw))))
}

/// Antisymmetric matrix with integer entries in [−4, 4].
pub fn random_two_form<S: Scalar>(n: usize, seed: u64) -> TwoForm<S> {
    raw_two_form(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Deterministic in `(class, h, seed)`.
///
/// # Panics
/// If the generated tensor fails to classify into `class`.
pub fn random_curvature<S: Scalar>(class: CurvatureClass, h: &InnerProduct<S>, seed: u64) -> Tensor4<S> {
    let n = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = match class {
        CurvatureClass::Algebraic => algebraic_from(&mut rng, n),
        CurvatureClass::Weyl => {
            let a1 = algebraic_from(&mut rng, n);
            let psi = raw_two_form(&mut rng, n);
            a1.add(&sigma(&psi, h).expect("same dimension"))
        }
        CurvatureClass::Generalized => bianchi_projector(&antisymmetrize12(&raw_tensor(&mut rng, n))),
    };
    assert!(
        classify(&t, h).contains(class),
        "generator produced a tensor outside class {class}"
    );
    t
}

/// Weyl tensor A₁ + σ(ψ) together with the parts used to build it.
pub fn random_weyl_parts<S: Scalar>(h: &InnerProduct<S>, seed: u64) -> (Tensor4<S>, TwoForm<S>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a1 = algebraic_from(&mut rng, h.dim());
    let psi = raw_two_form(&mut rng, h.dim());
    (a1, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn generators_land_in_their_class() {
        for n in 2..=5 {
            for p in [n, n - 1] {
                let h = InnerProduct::<Rational>::from_signature(p, n - p).unwrap();
                for seed in 0..3 {
                    let a = random_curvature(CurvatureClass::Algebraic, &h, seed);
                    assert!(classify(&a, &h).in_a);
                    let w = random_curvature(CurvatureClass::Weyl, &h, seed);
                    let f = classify(&w, &h);
                    assert!(f.in_w && !f.in_a);
                    let r = random_curvature(CurvatureClass::Generalized, &h, seed);
                    assert!(classify(&r, &h).in_r);
                }
            }
        }
    }

    #[test]
    fn generic_generalized_tensor_is_not_weyl() {
        let h = InnerProduct::<Rational>::from_signature(3, 0).unwrap();
        let r = random_curvature(CurvatureClass::Generalized, &h, 1);
        assert!(!classify(&r, &h).in_w);
    }

    #[test]
    fn deterministic_in_seed() {
        let h = InnerProduct::<Rational>::from_signature(2, 1).unwrap();
        assert_eq!(
            random_curvature(CurvatureClass::Weyl, &h, 42),
            random_curvature(CurvatureClass::Weyl, &h, 42)
        );
        assert_ne!(
            random_curvature(CurvatureClass::Weyl, &h, 42),
            random_curvature(CurvatureClass::Weyl, &h, 43)
        );
        let psi = random_two_form::<Rational>(4, 7);
        assert!(psi.matrix().is_antisymmetric());
        assert_eq!(psi, random_two_form(4, 7));
    }

    #[test]
    fn weyl_parts_match_weyl_generator() {
        let h = InnerProduct::<Rational>::from_signature(3, 1).unwrap();
        let (a1, psi) = random_weyl_parts(&h, 8);
        let w = random_curvature(CurvatureClass::Weyl, &h, 8);
        assert_eq!(a1.add(&sigma(&psi, &h).unwrap()), w);
    }
}
