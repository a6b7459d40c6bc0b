//! Combinatorial data of a cover at a point: the pairs `(H_i, ψ_i)`, the sum
//! map `ν: ⊕ H_i → G`, its kernel `K`, and the split into a totally ramified
//! part and an étale part.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::abelgrp::{
    image_subgroup, kernel_generators, AbelianGroup, Element, GroupError, Hom, LatticeQuotient,
    RootExponent, Subgroup,
};

/// One pair `(H, ψ)`: `H = ⟨generator⟩` of order `d`, and `ψ(generator) =
/// char_residue / d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchDatum {
    generator: Element,
    char_residue: u64,
    order: u64,
}

impl BranchDatum {
    pub fn generator(&self) -> &Element {
        &self.generator
    }

    pub fn char_residue(&self) -> u64 {
        self.char_residue
    }

    /// `d = |H|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `ψ(generator)` as an element of `Q/Z`.
    pub fn character_value(&self) -> RootExponent {
        RootExponent::new(self.char_residue as i128, self.order)
    }

    /// Re-expresses the pair with the lexicographically smallest generator of
    /// `H`; the residue moves with it so that `ψ` is unchanged.
    fn canonical(generator: Element, char_residue: u64) -> Self {
        let d = generator.order();
        let (generator, char_residue) = (1..d.max(2))
            .filter(|u| u.gcd(&d) == 1)
            .map(|u| {
                let g = generator.scale(u as i128);
                let a = (u as u128 * char_residue as u128 % d as u128) as u64;
                (g, a)
            })
            .min_by(|x, y| x.0.cmp(&y.0))
            .expect("1 is always a unit");
        BranchDatum {
            generator,
            char_residue,
            order: d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("malformed group: {0}")]
    MalformedGroup(GroupError),
    #[error("datum {datum}: malformed generator: {source}")]
    MalformedElement { datum: usize, source: GroupError },
    #[error("datum {datum}: generator is the identity (trivial inertia)")]
    TrivialInertia { datum: usize },
    #[error("datum {datum}: character residue {residue} is outside [0, {order})")]
    CharacterOutOfRange { datum: usize, residue: i64, order: u64 },
    #[error("datum {datum}: character residue {residue} does not generate the dual of a cyclic group of order {order}")]
    NonGeneratingCharacter { datum: usize, residue: u64, order: u64 },
    #[error("data {first} and {second} describe the same pair (H, ψ)")]
    DuplicatePair { first: usize, second: usize },
}

/// Every violation found in one validation pass.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub errors: Vec<ValidationError>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.errors.iter().map(|e| e.to_string()).collect();
        f.write_str(&lines.join("; "))
    }
}

/// Validated, canonicalized combinatorial data at a point. Only constructible
/// through validation, so every value upholds the datum invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialData {
    group: AbelianGroup,
    branch: Vec<BranchDatum>,
}

impl CombinatorialData {
    /// Validates pairs `(generator, a)` meaning `ψ(generator) = a/d`.
    pub fn new(group: AbelianGroup, pairs: Vec<(Element, u64)>) -> Result<Self, ValidationReport> {
        let mut errors = Vec::new();
        let mut branch = Vec::with_capacity(pairs.len());
        for (datum, (generator, a)) in pairs.into_iter().enumerate() {
            if generator.group() != &group {
                errors.push(ValidationError::MalformedElement {
                    datum,
                    source: GroupError::GroupMismatch,
                });
                continue;
            }
            if let Some(b) = check_datum(datum, generator, a as i64, &mut errors) {
                branch.push((datum, b));
            }
        }
        finish(group, branch, errors)
    }

    /// Validates untyped input: moduli and, per datum, a residue list and the
    /// character integer.
    pub fn from_raw(moduli: &[i64], branch: &[(Vec<i64>, i64)]) -> Result<Self, ValidationReport> {
        let group = moduli
            .iter()
            .enumerate()
            .map(|(index, &m)| {
                u64::try_from(m).map_err(|_| GroupError::ModulusTooSmall { index, modulus: 0 })
            })
            .collect::<Result<Vec<u64>, _>>()
            .and_then(AbelianGroup::new)
            .map_err(|e| ValidationReport {
                errors: vec![ValidationError::MalformedGroup(e)],
            })?;
        let mut errors = Vec::new();
        let mut data = Vec::new();
        for (datum, (residues, a)) in branch.iter().enumerate() {
            let element = residues
                .iter()
                .enumerate()
                .map(|(index, &r)| {
                    u64::try_from(r).map_err(|_| GroupError::ResidueOutOfRange {
                        index,
                        value: 0,
                        modulus: group.moduli().get(index).copied().unwrap_or(0),
                    })
                })
                .collect::<Result<Vec<u64>, _>>()
                .and_then(|r| group.element(r));
            match element {
                Ok(g) => {
                    if let Some(b) = check_datum(datum, g, *a, &mut errors) {
                        data.push((datum, b));
                    }
                }
                Err(source) => errors.push(ValidationError::MalformedElement { datum, source }),
            }
        }
        finish(group, data, errors)
    }

    /// Runs validation again on the already canonical pairs.
    pub fn revalidate(&self) -> Result<Self, ValidationReport> {
        let pairs = self
            .branch
            .iter()
            .map(|b| (b.generator.clone(), b.char_residue))
            .collect();
        CombinatorialData::new(self.group.clone(), pairs)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn branch(&self) -> &[BranchDatum] {
        &self.branch
    }

    /// `s`, the number of branch components through the point.
    pub fn len(&self) -> usize {
        self.branch.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch.is_empty()
    }

    /// `(d_1, …, d_s)`.
    pub fn orders(&self) -> Vec<u64> {
        self.branch.iter().map(|b| b.order).collect()
    }

    /// `H = ⊕ Z/d_i`, with the `i`-th generator standing for `g_i`.
    pub fn inertia_sum(&self) -> AbelianGroup {
        AbelianGroup::new(self.orders()).expect("inertia orders are at least 2")
    }

    /// `ν: ⊕ Z/d_i → G, (t_1, …, t_s) ↦ Σ t_i·g_i`.
    pub fn sum_map(&self) -> Hom {
        let images = self.branch.iter().map(|b| b.generator.clone()).collect();
        Hom::new(self.inertia_sum(), self.group.clone(), images)
            .expect("each g_i is killed by its own order")
    }

    /// `K = ker ν`. The full element list, lexicographically greedy
    /// generators and the minimal support are filled in only when
    /// `|K| ≤ enumeration_limit`.
    pub fn kernel(&self, enumeration_limit: u64) -> KernelDescription {
        let kernel = kernel_generators(&self.sum_map());
        match kernel.enumerate(enumeration_limit) {
            Some(elements) => {
                let generators = kernel.canonical_generators(&elements);
                let min_support = elements
                    .iter()
                    .filter(|k| !k.is_identity())
                    .map(Element::support)
                    .min();
                KernelDescription {
                    generators,
                    order: kernel.order,
                    min_support,
                    elements: Some(elements),
                }
            }
            None => KernelDescription {
                generators: kernel.generators,
                order: kernel.order,
                min_support: None,
                elements: None,
            },
        }
    }

    pub fn is_locally_simple(&self) -> bool {
        self.sum_map().is_injective()
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.sum_map().is_surjective()
    }

    /// Splits off the étale part: `M = im ν ≤ G`, `|T| = |G/M|`, and the same
    /// data re-expressed as a `M`-cover (in invariant-factor coordinates for
    /// `M`). When `ν` is already onto, the data is returned unchanged.
    pub fn ramification_factorization(&self) -> Factorization {
        let nu = self.sum_map();
        let image = image_subgroup(&nu);
        let etale_index = self.group.order() / image.order;
        if etale_index == 1 {
            return Factorization {
                image,
                etale_index,
                restricted: self.clone(),
            };
        }
        // M ≅ Z^s / L with L the relation lattice of the g_i.
        let quotient = LatticeQuotient::new(&nu.kernel_lattice());
        let pairs = (0..self.len())
            .map(|i| {
                let mut x = vec![0i128; self.len()];
                x[i] = 1;
                (quotient.project(&x), self.branch[i].char_residue)
            })
            .collect();
        let restricted = CombinatorialData::new(quotient.group().clone(), pairs)
            .expect("restriction to the image keeps the data valid");
        Factorization {
            image,
            etale_index,
            restricted,
        }
    }
}

fn check_datum(
    datum: usize,
    generator: Element,
    a: i64,
    errors: &mut Vec<ValidationError>,
) -> Option<BranchDatum> {
    let d = generator.order();
    if d == 1 {
        errors.push(ValidationError::TrivialInertia { datum });
        return None;
    }
    if a < 0 || a as u64 >= d {
        errors.push(ValidationError::CharacterOutOfRange {
            datum,
            residue: a,
            order: d,
        });
        return None;
    }
    let a = a as u64;
    if a.gcd(&d) != 1 {
        errors.push(ValidationError::NonGeneratingCharacter {
            datum,
            residue: a,
            order: d,
        });
        return None;
    }
    Some(BranchDatum::canonical(generator, a))
}

fn finish(
    group: AbelianGroup,
    branch: Vec<(usize, BranchDatum)>,
    mut errors: Vec<ValidationError>,
) -> Result<CombinatorialData, ValidationReport> {
    for (i, (first, a)) in branch.iter().enumerate() {
        if let Some((second, _)) = branch[i + 1..].iter().find(|(_, b)| a == b) {
            errors.push(ValidationError::DuplicatePair {
                first: *first,
                second: *second,
            });
        }
    }
    if errors.is_empty() {
        Ok(CombinatorialData {
            group,
            branch: branch.into_iter().map(|(_, b)| b).collect(),
        })
    } else {
        errors.sort_by_key(datum_of);
        Err(ValidationReport { errors })
    }
}

fn datum_of(e: &ValidationError) -> usize {
    match e {
        ValidationError::MalformedGroup(_) => 0,
        ValidationError::MalformedElement { datum, .. }
        | ValidationError::TrivialInertia { datum }
        | ValidationError::CharacterOutOfRange { datum, .. }
        | ValidationError::NonGeneratingCharacter { datum, .. } => *datum,
        ValidationError::DuplicatePair { second, .. } => *second,
    }
}

/// `K = ker ν` as a subgroup of `H = ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDescription {
    pub generators: Vec<Element>,
    pub order: u64,
    /// Least number of nonzero coordinates of a nonzero `k ∈ K`; `None` when
    /// `K` is trivial or was too large to enumerate.
    pub min_support: Option<usize>,
    pub elements: Option<Vec<Element>>,
}

impl KernelDescription {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }
}

/// The factorization of the cover near the point into a totally ramified
/// `M`-cover followed by an étale `T = G/M`-cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `M`, the subgroup generated by the inertia groups.
    pub image: Subgroup,
    /// `|T| = |G| / |M|`.
    pub etale_index: u64,
    pub restricted: CombinatorialData,
}
