//! Batch evaluation over many independent models.
//!
//! Every operation in the crate is a pure function of immutable inputs, so a
//! batch is an embarrassingly parallel map. With the `parallel` feature (on by
//! default) [`Execution::Parallel`] runs on the rayon pool; without it every
//! batch runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::curvature::{classify, higa_decompose, ClassFlags, CurvatureModel, HigaParts};
use crate::error::Result;
use crate::realization::{verify_realization, weyl_realize, RealizationReport};
use crate::scalar::Scalar;
use crate::tensor::{InnerProduct, Tensor4};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Order-preserving map.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Order-preserving map over a seed range.
pub fn map_seeds<U, F>(exec: Execution, seeds: std::ops::Range<u64>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => seeds.into_par_iter().map(f).collect(),
        _ => seeds.map(f).collect(),
    }
}

/// Runs `f` on a dedicated pool of `jobs` threads when given.
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(jobs) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            return pool.install(f);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    f()
}

pub fn classify_all<S: Scalar>(exec: Execution, tensors: &[Tensor4<S>], h: &InnerProduct<S>) -> Vec<ClassFlags> {
    map(exec, tensors, |t| classify(t, h))
}

pub fn decompose_all<S: Scalar>(exec: Execution, models: &[CurvatureModel<S>]) -> Vec<Result<HigaParts<S>>> {
    map(exec, models, higa_decompose)
}

/// Realizes each Weyl model and verifies the resulting jet.
pub fn realize_and_verify<S: Scalar>(exec: Execution, models: &[CurvatureModel<S>]) -> Vec<Result<RealizationReport<S>>> {
    map(exec, models, |m| weyl_realize(m).map(|jet| verify_realization(&jet)))
}
