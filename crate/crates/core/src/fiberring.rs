//! The invariant ring `C[z_1, …, z_s]^K` of the model cover and its fiber
//! over the deepest branch point.
//!
//! Each character `χ ∈ G*` picks out a unique monomial
//! `w_χ = z_1^{α_1}⋯z_s^{α_s}` with `0 ≤ α_i < d_i` and `χ|H_i = ψ_i^{α_i}`.
//! Over the point where every `u_i = z_i^{d_i}` vanishes, the coordinate ring
//! collapses to the Artinian algebra with basis `{w_χ}` and
//!
//! ```text
//! w_χ · w_χ' = w_{χχ'}   if α_i(χ) + α_i(χ') < d_i for every i
//!            = 0         otherwise
//! ```

use crate::abelgrp::{discrete_log, kernel_generators, AbelianGroup, Character, RootExponent};
use crate::coverdata::CombinatorialData;
use crate::{check_limit, Error, Limits};

/// Exponent vector `(α_1, …, α_s)` of `w_χ`, each `α_i ∈ [0, d_i)`.
pub type AlphaVector = Vec<u64>;

/// `α_i = log_{ψ_i(g_i)} χ(g_i)`, computed coordinate by coordinate.
pub fn alpha_exponents(data: &CombinatorialData, chi: &Character) -> AlphaVector {
    data.branch()
        .iter()
        .map(|b| {
            discrete_log(b.character_value(), chi.eval(b.generator()), b.order())
                .expect("ψ_i generates the dual of H_i")
        })
        .collect()
}

/// Carry digits `ε_i = ⌊(α_i(χ) + α_i(χ')) / d_i⌋ ∈ {0, 1}`: the power of
/// `u_i` in `w_χ · w_χ' = w_{χχ'} · Π u_i^{ε_i}`.
pub fn epsilon(data: &CombinatorialData, chi: &Character, chi2: &Character) -> Vec<u64> {
    let a = alpha_exponents(data, chi);
    let b = alpha_exponents(data, chi2);
    carries(&a, &b, &data.orders())
}

fn carries(a: &[u64], b: &[u64], orders: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(orders)
        .map(|((&x, &y), &d)| (x + y) / d)
        .collect()
}

/// The fiber algebra `⊕_χ C·w_χ` as a multiplication table on characters.
/// Structure constants are all 1, so only which basis element (if any) a
/// product lands on is stored.
#[derive(Clone, Debug)]
pub struct FiberRing {
    group: AbelianGroup,
    orders: Vec<u64>,
    characters: Vec<Character>,
    alpha: Vec<AlphaVector>,
    product: Vec<Option<u32>>,
}

impl FiberRing {
    pub fn dimension(&self) -> usize {
        self.characters.len()
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `(d_1, …, d_s)` of the data the ring was built from.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Basis labels, in lexicographic order; index 0 is the trivial character.
    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn index_of(&self, chi: &Character) -> usize {
        self.group.character_index(chi) as usize
    }

    pub fn alpha(&self, chi: &Character) -> &[u64] {
        &self.alpha[self.index_of(chi)]
    }

    pub fn alpha_at(&self, index: usize) -> &[u64] {
        &self.alpha[index]
    }

    /// Degree of `w_χ`, i.e. `Σ α_i`.
    pub fn degree_at(&self, index: usize) -> u64 {
        self.alpha[index].iter().sum()
    }

    /// Index of the basis element `w_i · w_j` lands on, or `None` for zero.
    pub fn product_at(&self, i: usize, j: usize) -> Option<usize> {
        self.product[i * self.dimension() + j].map(|k| k as usize)
    }

    pub fn product(&self, chi: &Character, chi2: &Character) -> Option<&Character> {
        self.product_at(self.index_of(chi), self.index_of(chi2))
            .map(|k| &self.characters[k])
    }
}

/// Builds the full product table; needs totally ramified data and
/// `|G| ≤ limits.fiber_order`.
pub fn build_fiber_ring(data: &CombinatorialData, limits: &Limits) -> Result<FiberRing, Error> {
    let group = data.group().clone();
    let n = group.order();
    check_limit("fiber ring", n, limits.fiber_order)?;
    require_totally_ramified(data)?;

    let characters: Vec<Character> = group.characters().collect();
    let alpha: Vec<AlphaVector> = characters.iter().map(|c| alpha_exponents(data, c)).collect();
    let orders = data.orders();
    let moduli = group.moduli();
    let n = n as usize;

    let mut product = vec![None; n * n];
    for i in 0..n {
        for j in i..n {
            let fits = alpha[i]
                .iter()
                .zip(&alpha[j])
                .zip(&orders)
                .all(|((&x, &y), &d)| x + y < d);
            if !fits {
                continue;
            }
            let k = characters[i]
                .residues()
                .iter()
                .zip(characters[j].residues())
                .zip(moduli)
                .fold(0u64, |acc, ((&a, &b), &m)| acc * m + (a + b) % m);
            product[i * n + j] = Some(k as u32);
            product[j * n + i] = Some(k as u32);
        }
    }
    Ok(FiberRing {
        group,
        orders,
        characters,
        alpha,
        product,
    })
}

fn require_totally_ramified(data: &CombinatorialData) -> Result<(), Error> {
    let nu = data.sum_map();
    if nu.is_surjective() {
        Ok(())
    } else {
        Err(Error::NotTotallyRamified {
            etale_index: data.group().order() / nu.image_order(),
        })
    }
}

/// Characters `χ` whose `w_χ` is killed by every `w_χ'` with `χ'` nontrivial:
/// the socle of the local Artinian ring.
pub fn socle_basis(ring: &FiberRing) -> Vec<Character> {
    let n = ring.dimension();
    (0..n)
        .filter(|&i| (1..n).all(|j| ring.product_at(i, j).is_none()))
        .map(|i| ring.characters[i].clone())
        .collect()
}

/// `Q(t) = Σ_χ t^{deg w_χ}`, the numerator of the Hilbert series of the
/// invariant ring over `Π_i (1 − t^{d_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertNumerator {
    pub coefficients: Vec<u64>,
}

impl HilbertNumerator {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// `q_d = q_{D−d}` for every `d`, with `D` the degree.
    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    /// Coefficients of `Q(t) / Π_i (1 − t^{d_i})` up to `t^max_degree`.
    pub fn series(&self, orders: &[u64], max_degree: usize) -> Vec<u64> {
        let mut out = vec![0u64; max_degree + 1];
        for (d, &q) in self.coefficients.iter().enumerate().take(max_degree + 1) {
            out[d] = q;
        }
        // Dividing by (1 − t^k) is a running sum with stride k.
        for &k in orders {
            let k = k as usize;
            for d in k..=max_degree {
                out[d] += out[d - k];
            }
        }
        out
    }
}

impl std::fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &q)| q != 0)
            .map(|(d, &q)| match (d, q) {
                (0, q) => q.to_string(),
                (1, 1) => "t".to_string(),
                (1, q) => format!("{q}t"),
                (d, 1) => format!("t^{d}"),
                (d, q) => format!("{q}t^{d}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Degree distribution of the `w_χ` basis; needs totally ramified data and
/// `|G| ≤ limits.enumeration`.
pub fn hilbert_numerator(data: &CombinatorialData, limits: &Limits) -> Result<HilbertNumerator, Error> {
    check_limit("Hilbert numerator", data.group().order(), limits.enumeration)?;
    require_totally_ramified(data)?;
    let top: u64 = data.orders().iter().map(|d| d - 1).sum();
    let mut coefficients = vec![0u64; top as usize + 1];
    for chi in data.group().characters() {
        let deg: u64 = alpha_exponents(data, &chi).iter().sum();
        coefficients[deg as usize] += 1;
    }
    while coefficients.len() > 1 && coefficients.last() == Some(&0) {
        coefficients.pop();
    }
    Ok(HilbertNumerator { coefficients })
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

/// Exponent vectors `α ∈ N^s` with `Σ α_i ≤ max_degree` whose monomial is
/// fixed by `K`, found by evaluating `Π ψ_i^{α_i}` on generators of `K`.
/// Sorted by total degree, then lexicographically.
pub fn invariant_monomials_up_to_degree(
    data: &CombinatorialData,
    max_degree: u32,
    limits: &Limits,
) -> Result<Vec<AlphaVector>, Error> {
    let s = data.len() as u64;
    let count = binomial(max_degree as u64 + s, s).unwrap_or(u64::MAX);
    check_limit("monomial enumeration", count, limits.enumeration)?;

    let kernel = kernel_generators(&data.sum_map());
    let values: Vec<RootExponent> = data.branch().iter().map(|b| b.character_value()).collect();
    let is_invariant = |alpha: &[u64]| {
        kernel.generators.iter().all(|k| {
            k.residues()
                .iter()
                .zip(alpha)
                .zip(&values)
                .fold(RootExponent::ZERO, |acc, ((&t, &a), v)| {
                    acc + v.scale(t as i128 * a as i128)
                })
                .is_zero()
        })
    };

    let mut out = Vec::new();
    for degree in 0..=max_degree as u64 {
        let mut current = vec![0u64; s as usize];
        compositions(&mut current, 0, degree, &mut |alpha| {
            if is_invariant(alpha) {
                out.push(alpha.to_vec());
            }
        });
    }
    Ok(out)
}

/// Visits every `α` with `Σ α = remaining` over positions `pos..`, in
/// lexicographic order.
fn compositions(current: &mut [u64], pos: usize, remaining: u64, visit: &mut dyn FnMut(&[u64])) {
    if pos == current.len() {
        if remaining == 0 {
            visit(current);
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining;
        visit(current);
        current[pos] = 0;
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        compositions(current, pos + 1, remaining - v, visit);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(moduli: &[i64], branch: &[(&[i64], i64)]) -> CombinatorialData {
        let branch: Vec<(Vec<i64>, i64)> = branch.iter().map(|(g, a)| (g.to_vec(), *a)).collect();
        CombinatorialData::from_raw(moduli, &branch).unwrap()
    }

    fn z2_cubed() -> CombinatorialData {
        data(
            &[2, 2, 2],
            &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)],
        )
    }

    fn z3_pair() -> CombinatorialData {
        data(&[3], &[(&[1], 1), (&[1], 2)])
    }

    fn chi(g: &CombinatorialData, r: &[u64]) -> Character {
        Character::new(g.group(), r.to_vec()).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let d = z2_cubed();
        assert_eq!(alpha_exponents(&d, &Character::trivial(d.group())), vec![0, 0, 0, 0]);
        assert_eq!(alpha_exponents(&d, &chi(&d, &[1, 1, 1])), vec![1, 1, 1, 1]);
        let d = z3_pair();
        assert_eq!(alpha_exponents(&d, &chi(&d, &[1])), vec![1, 2]);
    }

    #[test]
    fn epsilon_examples() {
        let d = z2_cubed();
        let c = chi(&d, &[1, 1, 1]);
        assert_eq!(epsilon(&d, &c, &Character::trivial(d.group())), vec![0, 0, 0, 0]);
        assert_eq!(epsilon(&d, &c, &c), vec![1, 1, 1, 1]);
        assert_eq!(carries(&[1, 1], &[1, 0], &[2, 2]), vec![1, 0]);
    }

    #[test]
    fn dual_numbers() {
        let d = data(&[2], &[(&[1], 1)]);
        let ring = build_fiber_ring(&d, &Limits::default()).unwrap();
        assert_eq!(ring.dimension(), 2);
        assert_eq!(ring.product_at(1, 1), None);
        assert_eq!(ring.product_at(0, 1), Some(1));
        assert_eq!(socle_basis(&ring), vec![chi(&d, &[1])]);
    }

    #[test]
    fn z2_cubed_ring() {
        let d = z2_cubed();
        let ring = build_fiber_ring(&d, &Limits::default()).unwrap();
        assert_eq!(ring.dimension(), 8);
        assert_eq!(ring.alpha(&chi(&d, &[1, 1, 0])), &[1, 1, 0, 0]);
        assert_eq!(ring.alpha(&chi(&d, &[0, 0, 1])), &[0, 0, 1, 1]);
        assert_eq!(
            ring.product(&chi(&d, &[1, 1, 0]), &chi(&d, &[0, 0, 1])),
            Some(&chi(&d, &[1, 1, 1]))
        );
        assert_eq!(socle_basis(&ring), vec![chi(&d, &[1, 1, 1])]);
    }

    #[test]
    fn z3_pair_ring() {
        let d = z3_pair();
        let ring = build_fiber_ring(&d, &Limits::default()).unwrap();
        assert_eq!(ring.dimension(), 3);
        assert_eq!(ring.product(&chi(&d, &[1]), &chi(&d, &[2])), None);
        assert_eq!(socle_basis(&ring), vec![chi(&d, &[1]), chi(&d, &[2])]);
    }

    #[test]
    fn ring_needs_total_ramification_and_room() {
        let d = data(&[105], &[(&[5], 1)]);
        assert_eq!(
            build_fiber_ring(&d, &Limits::default()).unwrap_err(),
            Error::NotTotallyRamified { etale_index: 5 }
        );
        let limits = Limits { fiber_order: 4, ..Limits::default() };
        assert!(matches!(
            build_fiber_ring(&z2_cubed(), &limits),
            Err(Error::LimitExceeded { required: 8, limit: 4, .. })
        ));
    }

    #[test]
    fn hilbert_examples() {
        let limits = Limits::default();
        let simple = data(&[2, 3], &[(&[1, 0], 1), (&[0, 1], 1)]);
        let q = hilbert_numerator(&simple, &limits).unwrap();
        // (1 + t)(1 + t + t^2)
        assert_eq!(q.coefficients, vec![1, 2, 2, 1]);
        assert!(q.is_palindromic());

        let q = hilbert_numerator(&z2_cubed(), &limits).unwrap();
        assert_eq!(q.coefficients, vec![1, 0, 6, 0, 1]);
        assert!(q.is_palindromic());
        assert_eq!(q.to_string(), "1 + 6t^2 + t^4");

        let q = hilbert_numerator(&z3_pair(), &limits).unwrap();
        assert_eq!(q.coefficients, vec![1, 0, 0, 2]);
        assert!(!q.is_palindromic());
    }

    #[test]
    fn monomial_examples() {
        let limits = Limits::default();
        assert_eq!(
            invariant_monomials_up_to_degree(&z3_pair(), 0, &limits).unwrap(),
            vec![vec![0, 0]]
        );
        let mut got = invariant_monomials_up_to_degree(&z3_pair(), 3, &limits).unwrap();
        got.sort();
        assert_eq!(got, vec![vec![0, 0], vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);

        let k0 = data(&[2], &[(&[1], 1)]);
        assert_eq!(
            invariant_monomials_up_to_degree(&k0, 2, &limits).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );

        let tight = Limits { enumeration: 3, ..limits };
        assert!(invariant_monomials_up_to_degree(&z3_pair(), 3, &tight).is_err());
    }

    #[test]
    fn series_expansion() {
        // 1/(1-t)^2 = 1 + 2t + 3t^2 + …
        let q = HilbertNumerator { coefficients: vec![1] };
        assert_eq!(q.series(&[1, 1], 4), vec![1, 2, 3, 4, 5]);
    }
}
