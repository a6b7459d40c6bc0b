//! Characters of finite abelian groups with exact values in `Q/Z`.
//!
//! A root of unity `exp(2πi·p/q)` is represented by the reduced fraction
//! `p/q ∈ [0, 1)`; multiplying roots is adding fractions mod 1.

use std::fmt;
use std::ops::Add;

use num_integer::Integer;

use super::group::{index_of_residues, AbelianGroup, Element};
use super::matrix::{smith_normal_form, IntMatrix};
use super::{DiscreteLogError, GroupError};

/// An element of `Q/Z`, kept as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootExponent {
    num: u64,
    den: u64,
}

impl RootExponent {
    pub const ZERO: RootExponent = RootExponent { num: 0, den: 1 };

    /// `num/den mod 1`, canonicalized. Panics on a zero denominator.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let r = num.rem_euclid(den as i128) as u64;
        let g = r.gcd(&den);
        RootExponent {
            num: r / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn neg(&self) -> Self {
        Self::new(-(self.num as i128), self.den)
    }

    pub fn scale(&self, k: i128) -> Self {
        let k = k.rem_euclid(self.den as i128);
        Self::new(k * self.num as i128, self.den)
    }
}

impl Add for RootExponent {
    type Output = RootExponent;
    fn add(self, rhs: RootExponent) -> RootExponent {
        let l = self.den.lcm(&rhs.den);
        let a = self.num as i128 * (l / self.den) as i128;
        let b = rhs.num as i128 * (l / rhs.den) as i128;
        RootExponent::new(a + b, l)
    }
}

impl fmt::Debug for RootExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for RootExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A character of `G = ⊕ Z/n_j`: the one sending the `j`-th generator to
/// `residues[j] / n_j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    group: AbelianGroup,
    residues: Vec<u64>,
}

impl Character {
    pub fn new(group: &AbelianGroup, residues: Vec<u64>) -> Result<Self, GroupError> {
        // Same validity rules as elements: G* has the same cyclic factors.
        let e = group.element(residues)?;
        Ok(Character {
            group: group.clone(),
            residues: e.residues().to_vec(),
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Character {
            group: group.clone(),
            residues: vec![0; group.rank()],
        }
    }

    pub(crate) fn from_coords(group: &AbelianGroup, coords: &[i128]) -> Self {
        let e = group.element_reduced(coords);
        Character {
            group: group.clone(),
            residues: e.residues().to_vec(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    /// `χ(e) = Σ_j residues[j]·e_j / n_j mod 1`.
    pub fn eval(&self, e: &Element) -> RootExponent {
        assert_eq!(e.group(), &self.group, "evaluating a character off its group");
        let l = self.group.exponent();
        let total = self
            .residues
            .iter()
            .zip(e.residues())
            .zip(self.group.moduli())
            .fold(0u128, |acc, ((&c, &x), &n)| {
                (acc + (c as u128 * x as u128 % n as u128) * (l / n) as u128) % l as u128
            });
        RootExponent::new(total as i128, l)
    }

    /// Pointwise product `(χ·χ')(e) = χ(e)·χ'(e)`.
    pub fn mul(&self, other: &Character) -> Character {
        assert_eq!(self.group, other.group, "multiplying characters of different groups");
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.group.moduli())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Character {
            group: self.group.clone(),
            residues,
        }
    }

    pub fn inverse(&self) -> Character {
        let residues = self
            .residues
            .iter()
            .zip(self.group.moduli())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        Character {
            group: self.group.clone(),
            residues,
        }
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{:?}", self.residues)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl AbelianGroup {
    /// All characters, lexicographic in their residue tuples.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order()).map(move |i| self.character_at(i))
    }

    pub fn character_at(&self, index: u64) -> Character {
        let e = self.element_at(index);
        Character {
            group: self.clone(),
            residues: e.residues().to_vec(),
        }
    }

    pub fn character_index(&self, chi: &Character) -> u64 {
        index_of_residues(self.moduli(), chi.residues())
    }
}

/// `χ(g)`; the restriction of `χ` to `⟨g⟩` is determined by this value.
pub fn restrict_character(chi: &Character, g: &Element) -> RootExponent {
    chi.eval(g)
}

/// The unique `t ∈ [0, order)` with `t·base = target` in `Q/Z`, where `base`
/// has exact order `order`.
pub fn discrete_log(
    base: RootExponent,
    target: RootExponent,
    order: u64,
) -> Result<u64, DiscreteLogError> {
    if base.den() != order {
        return Err(DiscreteLogError::NotAGenerator { base, order });
    }
    if order % target.den() != 0 {
        return Err(DiscreteLogError::OutsideSubgroup { base, target });
    }
    if order == 1 {
        return Ok(0);
    }
    let n = order as i128;
    // base.num is a unit mod order because the fraction is reduced.
    let inv = (base.num() as i128).extended_gcd(&n).x.rem_euclid(n);
    let scaled = target.num() as i128 * (order / target.den()) as i128 % n;
    Ok((scaled * inv).rem_euclid(n) as u64)
}

/// One solution of `Σ_j c_j·g_j/n_j ≡ value (mod 1)` over all constraints,
/// as raw integer coordinates, or `None`.
///
/// Everything is scaled to the single modulus `L = lcm(moduli, denominators)`
/// and the system `A c ≡ b (mod L)` is diagonalized with the Smith form.
fn solve_mod_l(group: &AbelianGroup, constraints: &[(Element, RootExponent)]) -> Option<Vec<i128>> {
    let rank = group.rank();
    let l = constraints
        .iter()
        .fold(group.exponent(), |acc, (_, v)| acc.lcm(&v.den())) as i128;
    let rows: Vec<Vec<i128>> = constraints
        .iter()
        .map(|(g, _)| {
            g.residues()
                .iter()
                .zip(group.moduli())
                .map(|(&r, &n)| r as i128 * (l / n as i128))
                .collect()
        })
        .collect();
    let rhs: Vec<i128> = constraints
        .iter()
        .map(|(_, v)| v.num() as i128 * (l / v.den() as i128))
        .collect();
    let a = IntMatrix::from_rows(&rows, rank);
    let snf = smith_normal_form(&a);
    let b = snf.u.mul_vec(&rhs);
    let diag = snf.d.diagonal();

    let mut z = vec![0i128; rank];
    for (i, &bi) in b.iter().enumerate() {
        let di = diag.get(i).copied().unwrap_or(0);
        let g = di.gcd(&l);
        let bi = bi.rem_euclid(l);
        if bi % g != 0 {
            return None;
        }
        if i < rank {
            let m = l / g;
            let unit = (di / g).rem_euclid(m);
            let inv = if m == 1 { 0 } else { unit.extended_gcd(&m).x.rem_euclid(m) };
            z[i] = ((bi / g) % m * inv).rem_euclid(m);
        }
    }
    Some(snf.v.mul_vec(&z))
}

fn satisfies(chi: &Character, constraints: &[(Element, RootExponent)]) -> bool {
    constraints.iter().all(|(g, v)| chi.eval(g) == *v)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The lexicographically smallest character with `χ(g) = value` for every
/// constraint, or `None` if no character satisfies them all.
///
/// Coordinates are fixed one at a time. For coordinate `j` the feasible
/// values form a coset `v0 + ⟨step⟩` in `Z/n_j`; `step` is the least divisor
/// of `n_j` admissible for the homogeneous system, and the minimum of the
/// coset is `v0 mod step`. When `|G| ≤ cross_check_limit` the answer is
/// compared against a scan over all characters.
pub fn solve_character_congruences(
    group: &AbelianGroup,
    constraints: &[(Element, RootExponent)],
    cross_check_limit: u64,
) -> Option<Character> {
    let solution = solve_lexmin(group, constraints);
    if let Some(chi) = &solution {
        assert!(satisfies(chi, constraints), "congruence solver returned a non-solution");
    }
    if group.order() <= cross_check_limit {
        let brute = group.characters().find(|chi| satisfies(chi, constraints));
        assert_eq!(solution, brute, "congruence solver disagrees with enumeration");
    }
    solution
}

fn solve_lexmin(group: &AbelianGroup, constraints: &[(Element, RootExponent)]) -> Option<Character> {
    solve_mod_l(group, constraints)?;
    let mut fixed: Vec<(Element, RootExponent)> = constraints.to_vec();
    let homogeneous: Vec<(Element, RootExponent)> = constraints
        .iter()
        .map(|(g, _)| (g.clone(), RootExponent::ZERO))
        .collect();
    let mut homogeneous_fixed = homogeneous;
    let mut residues = Vec::with_capacity(group.rank());
    for (j, &n) in group.moduli().iter().enumerate() {
        let generator = group.generator(j);
        let current = solve_mod_l(group, &fixed).expect("feasibility is preserved");
        let v0 = current[j].rem_euclid(n as i128) as u64;
        let step = divisors(n)
            .into_iter()
            .find(|&d| {
                let mut trial = homogeneous_fixed.clone();
                trial.push((generator.clone(), RootExponent::new(d as i128, n)));
                solve_mod_l(group, &trial).is_some()
            })
            .expect("n_j itself is always admissible");
        let value = v0 % step;
        residues.push(value as i128);
        fixed.push((generator.clone(), RootExponent::new(value as i128, n)));
        homogeneous_fixed.push((generator, RootExponent::ZERO));
    }
    Some(Character::from_coords(group, &residues))
}
