mod common;

use abcover::{
    classify, gorenstein_hilbert, gorenstein_lift, gorenstein_socle, gorenstein_watanabe,
    lci_classify, smoothness_check, CombinatorialData, LciVerdict, Limits, RootExponent,
    SmoothVerdict,
};
use common::{brute_lift, build, elementary_prime, raw_data};
use proptest::prelude::*;

fn up_to_512() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=16, 1..=3).prop_filter("|G| <= 512", |m| m.iter().product::<u64>() <= 512)
}

fn elementary() -> impl Strategy<Value = Vec<u64>> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=4).prop_map(|(p, n)| vec![p; n])
}

fn cyclic_prime_power() -> impl Strategy<Value = Vec<u64>> {
    (prop::sample::select(vec![2u64, 3]), 1u32..=4).prop_map(|(p, n)| vec![p.pow(n)])
}

/// Chain condition on cyclic data: sorted by order the subgroups strictly
/// increase, and each `ψ_{j+1}` restricts to `ψ_j`.
fn chain_oracle(data: &CombinatorialData) -> bool {
    let mut branch: Vec<_> = data.branch().to_vec();
    branch.sort_by_key(|b| b.order());
    branch.windows(2).all(|w| {
        let (small, big) = (&w[0], &w[1]);
        if small.order() == big.order() {
            return false;
        }
        let c = (0..big.order())
            .find(|&c| big.generator().scale(c as i128) == *small.generator())
            .expect("subgroups of a cyclic group are nested");
        RootExponent::new((c * big.char_residue()) as i128, big.order()) == small.character_value()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn four_deciders_agree((m, raw) in raw_data(up_to_512(), 5)) {
        let Some(data) = build(&m, &raw) else { return Ok(()) };
        let data = data.ramification_factorization().restricted;
        let limits = Limits::default();
        let lift = gorenstein_lift(&data, &limits);
        prop_assert_eq!(&lift, &brute_lift(&data));
        let g = lift.is_some();
        prop_assert_eq!(gorenstein_watanabe(&data), g);
        prop_assert_eq!(gorenstein_socle(&data, &limits).unwrap(), g);
        prop_assert_eq!(gorenstein_hilbert(&data, &limits).unwrap(), g);
    }

    #[test]
    fn elementary_abelian_classification((m, raw) in raw_data(elementary(), 6)) {
        let Some(data) = build(&m, &raw) else { return Ok(()) };
        prop_assert!(elementary_prime(data.group()).is_some());
        let report = classify(&data, &Limits::default()).unwrap();
        prop_assert_ne!(report.lci, LciVerdict::Unknown);
        prop_assert_eq!(report.lci == LciVerdict::Lci, report.locally_simple);
        if report.gorenstein && !report.locally_simple {
            prop_assert!(report.kernel.min_support.unwrap() >= 3);
            // Distinct inertia subgroups meet trivially.
            let b = data.branch();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let hj: Vec<_> = (0..b[j].order()).map(|t| b[j].generator().scale(t as i128)).collect();
                    prop_assert!(!hj.contains(b[i].generator()));
                }
            }
        }
    }

    #[test]
    fn cyclic_chain_law((m, raw) in raw_data(cyclic_prime_power(), 4)) {
        let Some(data) = build(&m, &raw) else { return Ok(()) };
        let report = classify(&data, &Limits::default()).unwrap();
        prop_assert_eq!(report.gorenstein, chain_oracle(&data));
    }

    #[test]
    fn verdicts_are_consistent((m, raw) in raw_data(up_to_512(), 5)) {
        let Some(data) = build(&m, &raw) else { return Ok(()) };
        let limits = Limits::default();
        let report = classify(&data, &limits).unwrap();
        prop_assert!(report.cross_checks.agree());
        prop_assert_eq!(report.locally_simple, data.is_locally_simple());
        prop_assert_eq!(report.totally_ramified, data.is_totally_ramified());
        prop_assert_eq!(report.etale_index * data.sum_map().image_order(), data.group().order());
        prop_assert_eq!(report.certificate.clone(), brute_lift(&data));
        if report.locally_simple {
            prop_assert_eq!(report.lci, LciVerdict::Lci);
            prop_assert!(report.gorenstein);
        }
        if report.lci == LciVerdict::Lci {
            prop_assert!(report.locally_simple || report.gorenstein);
        }
        if smoothness_check(&data) == SmoothVerdict::SmoothConditional {
            prop_assert_eq!(report.lci, LciVerdict::Lci);
        }
        // Dropping the étale part changes nothing but the index.
        let restricted = data.ramification_factorization().restricted;
        prop_assert_eq!(lci_classify(&restricted, &limits), (report.lci, report.lci_reason));
    }
}
