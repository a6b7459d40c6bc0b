mod common;

use std::collections::BTreeSet;

use abcover::{
    alpha_exponents, build_fiber_ring, epsilon, gorenstein_lift, hilbert_numerator,
    invariant_monomials_up_to_degree, socle_basis, CombinatorialData, Limits, RootExponent,
};
use common::{build, raw_data, scan_log};
use proptest::prelude::*;

fn moduli() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=8, 1..=3).prop_filter("|G| <= 64", |m| m.iter().product::<u64>() <= 64)
}

/// Valid data, replaced by its totally ramified part.
fn ramified(m: &[u64], raw: &[(Vec<u64>, u64)]) -> Option<CombinatorialData> {
    let data = build(m, raw)?;
    (!data.is_empty()).then(|| data.ramification_factorization().restricted)
}

fn scan_alpha(data: &CombinatorialData, chi: &abcover::Character) -> Vec<u64> {
    data.branch()
        .iter()
        .map(|b| scan_log(b.character_value(), chi.eval(b.generator()), b.order()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms((m, raw) in raw_data(moduli(), 4)) {
        let Some(data) = ramified(&m, &raw) else { return Ok(()) };
        let ring = build_fiber_ring(&data, &Limits::default()).unwrap();
        let n = ring.dimension();
        prop_assert_eq!(n as u64, data.group().order());
        prop_assert!(ring.characters()[0].is_trivial());
        let mul = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(i), Some(j)) => ring.product_at(i, j),
            _ => None,
        };
        for i in 0..n {
            prop_assert_eq!(ring.product_at(0, i), Some(i));
            for j in 0..n {
                let ij = ring.product_at(i, j);
                prop_assert_eq!(ij, ring.product_at(j, i));
                if let Some(k) = ij {
                    prop_assert_eq!(ring.degree_at(k), ring.degree_at(i) + ring.degree_at(j));
                    prop_assert_eq!(&ring.characters()[k], &ring.characters()[i].mul(&ring.characters()[j]));
                }
                for k in 0..n {
                    prop_assert_eq!(mul(ij, Some(k)), mul(Some(i), ring.product_at(j, k)));
                }
            }
        }
    }

    #[test]
    fn alpha_is_a_bijection_onto_box_invariants((m, raw) in raw_data(moduli(), 4)) {
        let Some(data) = ramified(&m, &raw) else { return Ok(()) };
        let orders = data.orders();
        let alphas: BTreeSet<Vec<u64>> = data.group().characters().map(|chi| {
            let a = alpha_exponents(&data, &chi);
            assert_eq!(a, scan_alpha(&data, &chi));
            a
        }).collect();
        prop_assert_eq!(alphas.len() as u64, data.group().order());
        let top: u64 = orders.iter().map(|d| d - 1).sum();
        // Listing every monomial up to the top degree can outgrow the limit.
        let Ok(monomials) = invariant_monomials_up_to_degree(&data, top as u32, &Limits::default()) else {
            return Ok(());
        };
        let in_box: BTreeSet<Vec<u64>> = monomials
            .into_iter()
            .filter(|a| a.iter().zip(&orders).all(|(x, d)| x < d))
            .collect();
        prop_assert_eq!(alphas, in_box);
    }

    #[test]
    fn epsilon_matches_carries((m, raw) in raw_data(moduli(), 4), i in any::<u64>(), j in any::<u64>()) {
        let Some(data) = build(&m, &raw) else { return Ok(()) };
        let g = data.group();
        let chi = g.character_at(i % g.order());
        let psi = g.character_at(j % g.order());
        let (a, b, c) = (scan_alpha(&data, &chi), scan_alpha(&data, &psi), scan_alpha(&data, &chi.mul(&psi)));
        let eps = epsilon(&data, &chi, &psi);
        for (k, d) in data.orders().into_iter().enumerate() {
            prop_assert!(eps[k] <= 1);
            prop_assert_eq!(a[k] + b[k], c[k] + eps[k] * d);
        }
    }

    #[test]
    fn membership_matches_lifting((m, raw) in raw_data(moduli(), 4)) {
        let Some(data) = build(&m, &raw) else { return Ok(()) };
        let monomials: BTreeSet<Vec<u64>> = invariant_monomials_up_to_degree(&data, 6, &Limits::default())
            .unwrap()
            .into_iter()
            .collect();
        let values: Vec<RootExponent> = data.branch().iter().map(|b| b.character_value()).collect();
        let mut alpha = vec![0u64; data.len()];
        loop {
            if alpha.iter().sum::<u64>() <= 6 {
                // α is invariant iff Π ψ_i^{α_i} extends to a character of G.
                let lifts = data.group().characters().any(|chi| {
                    data.branch().iter().zip(&alpha).zip(&values)
                        .all(|((b, &a), v)| chi.eval(b.generator()) == v.scale(a as i128))
                });
                prop_assert_eq!(monomials.contains(&alpha), lifts, "alpha {:?}", alpha);
            }
            let Some(pos) = (0..alpha.len()).rev().find(|&p| alpha[p] < 6) else { break };
            alpha[pos] += 1;
            for x in &mut alpha[pos + 1..] {
                *x = 0;
            }
        }
    }

    #[test]
    fn monomial_counts_match_hilbert_series((m, raw) in raw_data(moduli(), 4)) {
        let Some(data) = build(&m, &raw).filter(|d| !d.is_empty()) else { return Ok(()) };
        let restricted = data.ramification_factorization().restricted;
        let q = hilbert_numerator(&restricted, &Limits::default()).unwrap();
        let series = q.series(&data.orders(), 12);
        let mut counts = vec![0u64; 13];
        for a in invariant_monomials_up_to_degree(&data, 12, &Limits::default()).unwrap() {
            counts[a.iter().sum::<u64>() as usize] += 1;
        }
        prop_assert_eq!(counts, series);
    }

    #[test]
    fn socle_of_gorenstein_data((m, raw) in raw_data(moduli(), 4)) {
        let Some(data) = ramified(&m, &raw) else { return Ok(()) };
        let limits = Limits::default();
        let ring = build_fiber_ring(&data, &limits).unwrap();
        let socle = socle_basis(&ring);
        prop_assert!(!socle.is_empty());
        match gorenstein_lift(&data, &limits) {
            Some(chi) => prop_assert_eq!(socle, vec![chi.inverse()]),
            None => prop_assert!(socle.len() >= 2),
        }
    }
}
