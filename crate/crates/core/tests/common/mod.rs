#![allow(dead_code)]

use abcover::{AbelianGroup, Character, CombinatorialData, Element, RootExponent};
use proptest::prelude::*;

/// Raw random data: moduli plus `(residues, character)` per datum, reduced
/// into range but not otherwise filtered.
pub fn raw_data(
    moduli: impl Strategy<Value = Vec<u64>>,
    max_s: usize,
) -> impl Strategy<Value = (Vec<u64>, Vec<(Vec<u64>, u64)>)> {
    moduli.prop_flat_map(move |m| {
        let rank = m.len();
        let datum = (prop::collection::vec(any::<u64>(), rank), any::<u64>());
        (Just(m), prop::collection::vec(datum, 0..=max_s))
    })
}

/// Turns raw residues into valid data when possible: the character residue
/// is mapped onto a unit mod the generator order.
pub fn build(moduli: &[u64], raw: &[(Vec<u64>, u64)]) -> Option<CombinatorialData> {
    let g = AbelianGroup::new(moduli.to_vec()).ok()?;
    let mut pairs = Vec::new();
    for (res, a) in raw {
        let res: Vec<u64> = res.iter().zip(moduli).map(|(r, m)| r % m).collect();
        let e = g.element(res).ok()?;
        let d = e.order();
        if d < 2 {
            continue;
        }
        let units: Vec<u64> = (1..d).filter(|u| gcd(*u, d) == 1).collect();
        pairs.push((e, units[(*a as usize) % units.len()]));
    }
    CombinatorialData::new(g, pairs).ok()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `t` in `[0, d)` with `t·base = target`, by scanning.
pub fn scan_log(base: RootExponent, target: RootExponent, d: u64) -> u64 {
    (0..d)
        .find(|&t| base.scale(t as i128) == target)
        .expect("target lies in the cyclic group of base")
}

/// `|H| = Π d_i`, saturating.
pub fn source_order(data: &CombinatorialData) -> u64 {
    data.orders().iter().fold(1u64, |acc, &d| acc.saturating_mul(d))
}

/// Kernel of the sum map by enumerating `H`.
pub fn brute_kernel(data: &CombinatorialData) -> Vec<Element> {
    let nu = data.sum_map();
    nu.source().elements().filter(|h| nu.apply(h).is_identity()).collect()
}

/// First character (lexicographically) restricting to every `ψ_i`.
pub fn brute_lift(data: &CombinatorialData) -> Option<Character> {
    data.group().characters().find(|chi| {
        data.branch()
            .iter()
            .all(|b| chi.eval(b.generator()) == b.character_value())
    })
}

/// Smallest `p` with `moduli = [p, p, …]`, if the group is elementary abelian.
pub fn elementary_prime(g: &AbelianGroup) -> Option<u64> {
    let p = *g.moduli().first()?;
    let prime = (2..p).all(|q| p % q != 0);
    (prime && g.moduli().iter().all(|&m| m == p)).then_some(p)
}
