//! Local structure of normal finite abelian covers.
//!
//! Given the combinatorial data `{(H_i, ψ_i)}` of a `G`-cover at a branch
//! point (cyclic inertia subgroups `H_i ≤ G` with characters `ψ_i` generating
//! their duals), this crate decides whether the cover is locally simple,
//! Gorenstein (with a lifting character as certificate), a local complete
//! intersection, or smooth at the point, and builds the Artinian fiber ring
//! `⊕_χ C·w_χ` over the point together with its invariant-ring data.
//!
//! All arithmetic is exact: roots of unity are elements of `Q/Z`
//! ([`RootExponent`]) and group computations go through the Smith normal
//! form over `Z`.
//!
//! ```
//! use abcover::{classify, AbelianGroup, CombinatorialData, Limits, LciVerdict};
//!
//! // (Z/2)^3 with inertia generated by e1, e2, e3 and e1+e2+e3.
//! let g = AbelianGroup::new(vec![2, 2, 2]).unwrap();
//! let gens = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
//! let branch = gens.iter().map(|r| (g.element(r.to_vec()).unwrap(), 1)).collect();
//! let data = CombinatorialData::new(g, branch).unwrap();
//!
//! let report = classify(&data, &Limits::default()).unwrap();
//! assert!(!report.locally_simple);
//! assert!(report.gorenstein);
//! assert_eq!(report.lci, LciVerdict::NotLci);
//! ```

pub mod abelgrp;
pub mod classify;
pub mod coverdata;
pub mod fiberring;

pub use abelgrp::{
    discrete_log, element_order, image_subgroup, kernel_generators, restrict_character,
    smith_normal_form, solve_character_congruences, AbelianGroup, Character, Element, GroupError,
    Hom, IntMatrix, RootExponent, Subgroup,
};
pub use classify::{
    classify, gorenstein_hilbert, gorenstein_lift, gorenstein_socle, gorenstein_watanabe, lci_classify,
    smoothness_check, ClassificationReport, CrossChecks, LciReason, LciVerdict, SmoothVerdict,
    SMOOTHNESS_ASSUMPTION,
};
pub use coverdata::{
    BranchDatum, CombinatorialData, Factorization, KernelDescription, ValidationError,
    ValidationReport,
};
pub use fiberring::{
    alpha_exponents, build_fiber_ring, epsilon, hilbert_numerator,
    invariant_monomials_up_to_degree, socle_basis, FiberRing, HilbertNumerator,
};

use thiserror::Error;

/// Resource bounds for the operations that enumerate groups or monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group (or kernel, or monomial list) that may be enumerated.
    pub enumeration: u64,
    /// Largest `|G|` for which the full fiber-ring product table is built.
    pub fiber_order: u64,
    /// Total-degree bound for invariant monomial enumeration.
    pub max_degree: u32,
    /// Groups up to this order have every character-lifting answer checked
    /// against a scan of all characters.
    pub cross_check: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1_000_000,
            fiber_order: 2048,
            max_degree: 12,
            cross_check: 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} needs {required} elements, over the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        required: u64,
        limit: u64,
    },
    #[error("branch data is not totally ramified (étale index {etale_index})")]
    NotTotallyRamified { etale_index: u64 },
    #[error("Gorenstein deciders disagree: {0}")]
    DeciderDisagreement(String),
}

pub(crate) fn check_limit(what: &'static str, required: u64, limit: u64) -> Result<(), Error> {
    if required > limit {
        Err(Error::LimitExceeded {
            what,
            required,
            limit,
        })
    } else {
        Ok(())
    }
}

/// Guide chapters under `book/src`, compiled as doc-tests so the snippets
/// there cannot drift from the API.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/groups.md")]
    pub struct Groups;
    #[doc = include_str!("../../../book/src/cover-data.md")]
    pub struct CoverData;
    #[doc = include_str!("../../../book/src/fiber-ring.md")]
    pub struct FiberRing;
    #[doc = include_str!("../../../book/src/gorenstein.md")]
    pub struct Gorenstein;
    #[doc = include_str!("../../../book/src/lci-and-smoothness.md")]
    pub struct LciAndSmoothness;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
