//! Exact real-root isolation, double-double complex roots, and the `λ_j`
//! chain.

mod aberth;
mod chain;
mod sturm;

pub use aberth::{complex_roots, complex_roots_with, AberthConfig, ComplexRoot, ComplexRootJson, RootSet};
pub use chain::{lambda_chain, ChainFailure, LambdaChain, LambdaChainJson};
pub use sturm::{
    compare_roots, dyadic_width, refine, sturm_isolate, RealRootIsolator, RootEnclosure, RootEnclosureJson,
    SturmSequence,
};
