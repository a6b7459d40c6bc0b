//! Verdicts at a point: Gorenstein (four independent routes), local complete
//! intersection, smoothness, and the aggregated report.

use std::fmt;

use crate::abelgrp::{kernel_generators, solve_character_congruences, Character, RootExponent};
use crate::coverdata::{CombinatorialData, KernelDescription};
use crate::fiberring::{build_fiber_ring, hilbert_numerator, socle_basis};
use crate::{Error, Limits};

/// Geometric hypothesis the smoothness verdict depends on but which the
/// combinatorial data cannot see.
pub const SMOOTHNESS_ASSUMPTION: &str = "branch divisors through the point are smooth and meet transversally (the differentials of their local equations are linearly independent)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LciVerdict {
    Lci,
    NotLci,
    Unknown,
}

impl LciVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            LciVerdict::Lci => "LCI",
            LciVerdict::NotLci => "NotLCI",
            LciVerdict::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for LciVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which rule of the lci decision table fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LciReason {
    /// `K = 0`; locally simple covers are lci.
    LocallySimple,
    /// Not Gorenstein, and lci implies Gorenstein.
    LciImpliesGorenstein,
    /// Every nonzero `k ∈ K` moves at least three coordinates, so the
    /// quotient is singular only in codimension ≥ 3. Such quotient
    /// singularities are rigid (Schlessinger) and a singular complete
    /// intersection is never rigid.
    RigidQuotient,
    /// Two branch components and Gorenstein: `K` is a cyclic group acting as
    /// `(η, η⁻¹)`, an `A_n` hypersurface singularity.
    ATypeSurface,
    /// Outside every rule above; no decision is claimed.
    OpenGeneralCase,
    /// The kernel was too large to enumerate.
    Limit,
}

impl LciReason {
    pub fn code(&self) -> &'static str {
        match self {
            LciReason::LocallySimple => "locally-simple",
            LciReason::LciImpliesGorenstein => "lci-implies-gorenstein",
            LciReason::RigidQuotient => "rigid-quotient",
            LciReason::ATypeSurface => "A-type-surface",
            LciReason::OpenGeneralCase => "open-general-case",
            LciReason::Limit => "limit",
        }
    }
}

impl fmt::Display for LciReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmoothVerdict {
    /// Smooth, provided [`SMOOTHNESS_ASSUMPTION`] holds.
    SmoothConditional,
    NotSmooth,
}

impl SmoothVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SmoothVerdict::SmoothConditional => "Smooth-conditional",
            SmoothVerdict::NotSmooth => "NotSmooth",
        }
    }
}

impl fmt::Display for SmoothVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn lift_constraints(data: &CombinatorialData) -> Vec<(crate::Element, RootExponent)> {
    data.branch()
        .iter()
        .map(|b| (b.generator().clone(), b.character_value()))
        .collect()
}

/// A character `χ` of `G` with `χ|H_i = ψ_i` for all `i` (lexicographically
/// smallest when several exist), or `None`.
pub fn gorenstein_lift(data: &CombinatorialData, limits: &Limits) -> Option<Character> {
    solve_character_congruences(data.group(), &lift_constraints(data), limits.cross_check)
}

/// `K ≤ SL`: the determinant `Σ t_i·a_i/d_i` vanishes on every generator
/// `(t_1, …, t_s)` of `K`. Since `K` has no pseudo-reflections this is the
/// Gorenstein criterion for `C^s/K`.
pub fn gorenstein_watanabe(data: &CombinatorialData) -> bool {
    let kernel = kernel_generators(&data.sum_map());
    kernel.generators.iter().all(|k| {
        k.residues()
            .iter()
            .zip(data.branch())
            .fold(RootExponent::ZERO, |acc, (&t, b)| {
                acc + b.character_value().scale(t as i128)
            })
            .is_zero()
    })
}

/// Socle of the fiber ring is one-dimensional. Needs totally ramified data.
pub fn gorenstein_socle(data: &CombinatorialData, limits: &Limits) -> Result<bool, Error> {
    let ring = build_fiber_ring(data, limits)?;
    Ok(socle_basis(&ring).len() == 1)
}

/// Hilbert numerator of the invariant ring is palindromic. Needs totally
/// ramified data.
pub fn gorenstein_hilbert(data: &CombinatorialData, limits: &Limits) -> Result<bool, Error> {
    Ok(hilbert_numerator(data, limits)?.is_palindromic())
}

fn lci_decide(data: &CombinatorialData, kernel: &KernelDescription, gorenstein: bool) -> (LciVerdict, LciReason) {
    if kernel.is_trivial() {
        return (LciVerdict::Lci, LciReason::LocallySimple);
    }
    if !gorenstein {
        return (LciVerdict::NotLci, LciReason::LciImpliesGorenstein);
    }
    // With s = 2 every nonzero k has support exactly 2, so the rigidity rule
    // cannot fire and the enumeration is not needed.
    if data.len() == 2 {
        return (LciVerdict::Lci, LciReason::ATypeSurface);
    }
    match kernel.min_support {
        Some(m) if m >= 3 => (LciVerdict::NotLci, LciReason::RigidQuotient),
        Some(_) => (LciVerdict::Unknown, LciReason::OpenGeneralCase),
        None => (LciVerdict::Unknown, LciReason::Limit),
    }
}

/// The lci decision table. Apply to totally ramified data (the étale part
/// does not change the verdict).
pub fn lci_classify(data: &CombinatorialData, limits: &Limits) -> (LciVerdict, LciReason) {
    let kernel = data.kernel(limits.enumeration);
    let gorenstein = !kernel.is_trivial() && gorenstein_lift(data, limits).is_some();
    lci_decide(data, &kernel, gorenstein)
}

/// Smooth over the point (given [`SMOOTHNESS_ASSUMPTION`]) iff `ν` is
/// injective; this includes the unramified case.
pub fn smoothness_check(data: &CombinatorialData) -> SmoothVerdict {
    if data.is_locally_simple() {
        SmoothVerdict::SmoothConditional
    } else {
        SmoothVerdict::NotSmooth
    }
}

/// Outputs of the four Gorenstein deciders. `None` means the decider was
/// skipped because its enumeration would exceed the limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossChecks {
    pub lift: bool,
    pub watanabe: bool,
    pub socle: Option<bool>,
    pub palindromic: Option<bool>,
}

impl CrossChecks {
    pub fn agree(&self) -> bool {
        [Some(self.watanabe), self.socle, self.palindromic]
            .iter()
            .flatten()
            .all(|&v| v == self.lift)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub locally_simple: bool,
    pub totally_ramified: bool,
    /// `|T| = |G / M|`.
    pub etale_index: u64,
    pub kernel: KernelDescription,
    pub gorenstein: bool,
    /// Lexicographically smallest `χ ∈ G*` with `χ|H_i = ψ_i`.
    pub certificate: Option<Character>,
    pub cross_checks: CrossChecks,
    pub lci: LciVerdict,
    pub lci_reason: LciReason,
    pub smooth: SmoothVerdict,
    pub assumptions: Vec<String>,
    /// Limits in force for this run.
    pub limits: Limits,
    /// Set when some part of the report was skipped because of `limits`.
    pub limit_exceeded: Option<Error>,
}

/// Runs every decider on the totally ramified part of `data` and aggregates
/// the verdicts. Fails only if the Gorenstein deciders disagree.
pub fn classify(data: &CombinatorialData, limits: &Limits) -> Result<ClassificationReport, Error> {
    let factorization = data.ramification_factorization();
    let restricted = &factorization.restricted;
    let kernel = restricted.kernel(limits.enumeration);
    let mut limit_exceeded = None;
    let mut skip = |r: Result<bool, Error>| match r {
        Ok(v) => Some(v),
        Err(e @ Error::LimitExceeded { .. }) => {
            limit_exceeded.get_or_insert(e);
            None
        }
        Err(e) => panic!("restricted data must be totally ramified: {e}"),
    };

    let restricted_lift = gorenstein_lift(restricted, limits);
    let cross_checks = CrossChecks {
        lift: restricted_lift.is_some(),
        watanabe: gorenstein_watanabe(restricted),
        socle: skip(gorenstein_socle(restricted, limits)),
        palindromic: skip(gorenstein_hilbert(restricted, limits)),
    };
    if !cross_checks.agree() {
        return Err(Error::DeciderDisagreement(format!("{cross_checks:?}")));
    }
    let certificate = gorenstein_lift(data, limits);
    if certificate.is_some() != cross_checks.lift {
        return Err(Error::DeciderDisagreement(
            "lifting on G and on the inertia subgroup M disagree".to_string(),
        ));
    }
    let gorenstein = cross_checks.lift;

    let (lci, lci_reason) = lci_decide(restricted, &kernel, gorenstein);
    if lci_reason == LciReason::Limit && limit_exceeded.is_none() {
        limit_exceeded = Some(Error::LimitExceeded {
            what: "kernel enumeration",
            required: kernel.order,
            limit: limits.enumeration,
        });
    }

    Ok(ClassificationReport {
        locally_simple: kernel.is_trivial(),
        totally_ramified: factorization.etale_index == 1,
        etale_index: factorization.etale_index,
        kernel,
        gorenstein,
        certificate,
        cross_checks,
        lci,
        lci_reason,
        smooth: smoothness_check(data),
        assumptions: vec![SMOOTHNESS_ASSUMPTION.to_string()],
        limits: *limits,
        limit_exceeded,
    })
}
