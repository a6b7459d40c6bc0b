//! Finite abelian groups given as products of cyclic factors, their elements,
//! homomorphisms between them, kernels and images.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::matrix::{smith_normal_form, IntMatrix};
use super::GroupError;

/// `Z/n_1 ⊕ … ⊕ Z/n_k` in the decomposition the caller chose. The empty list
/// is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    moduli: Arc<[u64]>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self, GroupError> {
        if let Some((index, &modulus)) = moduli.iter().enumerate().find(|(_, &m)| m < 2) {
            return Err(GroupError::ModulusTooSmall { index, modulus });
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(GroupError::OrderOverflow)?;
        Ok(AbelianGroup {
            moduli: moduli.into(),
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            moduli: Arc::from(Vec::new()),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Least common multiple of the moduli (the exponent of the group).
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    pub fn identity(&self) -> Element {
        Element {
            group: self.clone(),
            residues: vec![0; self.rank()],
        }
    }

    /// The `j`-th standard generator.
    pub fn generator(&self, j: usize) -> Element {
        let mut e = self.identity();
        e.residues[j] = 1;
        e
    }

    /// Builds an element from residues already in range.
    pub fn element(&self, residues: Vec<u64>) -> Result<Element, GroupError> {
        if residues.len() != self.rank() {
            return Err(GroupError::WrongLength {
                expected: self.rank(),
                found: residues.len(),
            });
        }
        if let Some((index, (&value, &modulus))) = residues
            .iter()
            .zip(self.moduli.iter())
            .enumerate()
            .find(|(_, (&r, &m))| r >= m)
        {
            return Err(GroupError::ResidueOutOfRange {
                index,
                value,
                modulus,
            });
        }
        Ok(Element {
            group: self.clone(),
            residues,
        })
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element_reduced(&self, coords: &[i128]) -> Element {
        assert_eq!(coords.len(), self.rank(), "coordinate count mismatch");
        let residues = coords
            .iter()
            .zip(self.moduli.iter())
            .map(|(&c, &m)| c.rem_euclid(m as i128) as u64)
            .collect();
        Element {
            group: self.clone(),
            residues,
        }
    }

    /// Position of `e` in the lexicographic enumeration (last coordinate fastest).
    pub fn index_of(&self, e: &Element) -> u64 {
        debug_assert_eq!(&e.group, self);
        index_of_residues(&self.moduli, &e.residues)
    }

    pub fn element_at(&self, mut index: u64) -> Element {
        let mut residues = vec![0; self.rank()];
        for (r, &m) in residues.iter_mut().zip(self.moduli.iter()).rev() {
            *r = index % m;
            index /= m;
        }
        Element {
            group: self.clone(),
            residues,
        }
    }

    /// All elements in lexicographic order of residue tuples.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Isomorphism onto the invariant-factor form `Z/e_1 ⊕ … ⊕ Z/e_r`,
    /// `e_i | e_{i+1}`, returned as the normalized group and the map into it.
    pub fn normalize(&self) -> (AbelianGroup, Hom) {
        let diag: Vec<i128> = self.moduli.iter().map(|&m| m as i128).collect();
        let quotient = LatticeQuotient::new(&IntMatrix::from_diagonal(&diag));
        let images = (0..self.rank())
            .map(|j| {
                let mut x = vec![0; self.rank()];
                x[j] = 1;
                quotient.project(&x)
            })
            .collect();
        let target = quotient.group().clone();
        let hom = Hom::new(self.clone(), target.clone(), images)
            .expect("normalization map is well defined");
        (target, hom)
    }
}

pub(crate) fn index_of_residues(moduli: &[u64], residues: &[u64]) -> u64 {
    residues
        .iter()
        .zip(moduli)
        .fold(0, |acc, (&r, &m)| acc * m + r)
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup{:?}", &self.moduli[..])
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An element of an [`AbelianGroup`], stored as reduced residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    group: AbelianGroup,
    residues: Vec<u64>,
}

impl Element {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    /// Number of nonzero coordinates.
    pub fn support(&self) -> usize {
        self.residues.iter().filter(|&&r| r != 0).count()
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.group, other.group, "adding elements of different groups");
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.group.moduli.iter())
            .map(|((&a, &b), &m)| ((a as u128 + b as u128) % m as u128) as u64)
            .collect();
        Element {
            group: self.group.clone(),
            residues,
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(-1)
    }

    pub fn scale(&self, k: i128) -> Element {
        let residues = self
            .residues
            .iter()
            .zip(self.group.moduli.iter())
            .map(|(&r, &m)| {
                let k = k.rem_euclid(m as i128) as u128;
                ((k * r as u128) % m as u128) as u64
            })
            .collect();
        Element {
            group: self.group.clone(),
            residues,
        }
    }

    /// Smallest `n ≥ 1` with `n·e = 0`.
    pub fn order(&self) -> u64 {
        self.residues
            .iter()
            .zip(self.group.moduli.iter())
            .fold(1, |acc, (&r, &m)| acc.lcm(&(m / r.gcd(&m))))
    }

    pub fn to_coords(&self) -> Vec<i128> {
        self.residues.iter().map(|&r| r as i128).collect()
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.group, &self.residues).cmp(&(&other.group, &other.residues))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.residues)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn element_order(e: &Element) -> u64 {
    e.order()
}

/// A homomorphism given by the images of the source's standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    source: AbelianGroup,
    target: AbelianGroup,
    images: Vec<Element>,
}

impl Hom {
    pub fn new(
        source: AbelianGroup,
        target: AbelianGroup,
        images: Vec<Element>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.rank() {
            return Err(GroupError::WrongLength {
                expected: source.rank(),
                found: images.len(),
            });
        }
        for (generator, (image, &m)) in images.iter().zip(source.moduli()).enumerate() {
            if image.group() != &target {
                return Err(GroupError::GroupMismatch);
            }
            if !image.scale(m as i128).is_identity() {
                return Err(GroupError::IllDefinedHom { generator });
            }
        }
        Ok(Hom {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, e: &Element) -> Element {
        assert_eq!(e.group(), &self.source, "element outside the source group");
        e.residues()
            .iter()
            .zip(&self.images)
            .fold(self.target.identity(), |acc, (&r, img)| {
                acc.add(&img.scale(r as i128))
            })
    }

    /// `[A | diag(m)]`: column `j < a` is the image of the `j`-th source
    /// generator, the rest are the target relations.
    fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i128>> = (0..self.target.rank())
            .map(|k| {
                self.images
                    .iter()
                    .map(|img| img.residues()[k] as i128)
                    .collect()
            })
            .collect();
        let a = IntMatrix::from_rows(&rows, self.source.rank());
        let diag: Vec<i128> = self.target.moduli().iter().map(|&m| m as i128).collect();
        a.hconcat(&IntMatrix::from_diagonal(&diag))
    }

    /// Basis (as columns) of the lattice `{x ∈ Z^a : Σ x_j·image_j = 0}`.
    /// It has full rank `a` because it contains every `n_j·e_j`.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let a = self.source.rank();
        let snf = smith_normal_form(&self.relation_matrix());
        let basis = snf.kernel_basis();
        debug_assert_eq!(basis.len(), a);
        let mut m = IntMatrix::zeros(a, basis.len());
        for (j, v) in basis.iter().enumerate() {
            for i in 0..a {
                m[(i, j)] = v[i];
            }
        }
        m
    }

    /// Order of the image, from the cokernel `Z^b / (A Z^a + diag(m) Z^b)`.
    pub fn image_order(&self) -> u64 {
        let snf = smith_normal_form(&self.relation_matrix());
        let cokernel: u128 = snf.d.diagonal().iter().map(|&d| d as u128).product();
        (self.target.order() as u128 / cokernel) as u64
    }

    pub fn is_injective(&self) -> bool {
        self.image_order() == self.source.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.order()
    }
}

/// A subgroup given by generators together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub ambient: AbelianGroup,
    pub generators: Vec<Element>,
    pub order: u64,
}

impl Subgroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Every element, sorted lexicographically, or `None` if the order
    /// exceeds `limit`.
    pub fn enumerate(&self, limit: u64) -> Option<Vec<Element>> {
        if self.order > limit {
            return None;
        }
        let mut set = Span::new(&self.ambient);
        for g in &self.generators {
            set.extend(g);
        }
        let mut all: Vec<Vec<u64>> = set.members.into_iter().collect();
        all.sort_unstable();
        debug_assert_eq!(all.len() as u64, self.order);
        Some(
            all.into_iter()
                .map(|residues| Element {
                    group: self.ambient.clone(),
                    residues,
                })
                .collect(),
        )
    }

    /// Lexicographically greedy generating set: walk the sorted elements and
    /// keep each one not already in the span of those kept so far.
    pub fn canonical_generators(&self, elements: &[Element]) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut spanned = Span::new(&self.ambient);
        for e in elements {
            if spanned.len() == elements.len() {
                break;
            }
            if spanned.contains(e) {
                continue;
            }
            gens.push(e.clone());
            spanned.extend(e);
        }
        gens
    }
}

/// Subgroup generated so far, as a set of residue vectors.
struct Span<'a> {
    moduli: &'a [u64],
    members: HashSet<Vec<u64>>,
}

impl<'a> Span<'a> {
    fn new(ambient: &'a AbelianGroup) -> Self {
        Span {
            moduli: ambient.moduli(),
            members: HashSet::from([vec![0; ambient.rank()]]),
        }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn contains(&self, e: &Element) -> bool {
        self.members.contains(e.residues())
    }

    /// Adds `⟨g⟩`: every current member plus each multiple of `g`, stopping
    /// at the first multiple already present (the cosets beyond repeat).
    fn extend(&mut self, g: &Element) {
        if self.contains(g) {
            return;
        }
        let base: Vec<Vec<u64>> = self.members.iter().cloned().collect();
        let mut m = g.residues().to_vec();
        while !self.members.contains(&m) {
            for b in &base {
                let sum = b
                    .iter()
                    .zip(&m)
                    .zip(self.moduli)
                    .map(|((x, y), n)| (x + y) % n)
                    .collect();
                self.members.insert(sum);
            }
            for ((x, y), n) in m.iter_mut().zip(g.residues()).zip(self.moduli) {
                *x = (*x + y) % n;
            }
        }
    }
}

fn dedup_nonzero(mut elems: Vec<Element>) -> Vec<Element> {
    elems.retain(|e| !e.is_identity());
    let mut seen = HashSet::new();
    elems.retain(|e| seen.insert(e.clone()));
    elems
}

/// Generators and order of `ker f`.
pub fn kernel_generators(f: &Hom) -> Subgroup {
    let lattice = f.kernel_lattice();
    let generators = dedup_nonzero(
        (0..lattice.cols())
            .map(|j| f.source.element_reduced(&lattice.column(j)))
            .collect(),
    );
    Subgroup {
        ambient: f.source.clone(),
        generators,
        order: f.source.order() / f.image_order(),
    }
}

/// Generators and order of `im f`.
pub fn image_subgroup(f: &Hom) -> Subgroup {
    Subgroup {
        ambient: f.target.clone(),
        generators: dedup_nonzero(f.images.clone()),
        order: f.image_order(),
    }
}

/// `Z^n / L` for a full-rank lattice `L`, in invariant-factor form, together
/// with the projection from `Z^n`.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    group: AbelianGroup,
    // Rows of the left transform that survive (invariant factor > 1).
    transform: Vec<Vec<i128>>,
}

impl LatticeQuotient {
    /// `basis` holds a lattice basis in its columns and must be square and
    /// nonsingular.
    pub fn new(basis: &IntMatrix) -> Self {
        assert!(basis.is_square(), "lattice basis must be square");
        let snf = smith_normal_form(basis);
        let diag = snf.d.diagonal();
        assert!(diag.iter().all(|&d| d != 0), "lattice is not of full rank");
        let mut moduli = Vec::new();
        let mut transform = Vec::new();
        for (k, &d) in diag.iter().enumerate() {
            if d > 1 {
                moduli.push(d as u64);
                transform.push(snf.u.row(k).to_vec());
            }
        }
        let group = AbelianGroup::new(moduli).expect("quotient of a full-rank lattice is finite");
        LatticeQuotient { group, transform }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn project(&self, x: &[i128]) -> Element {
        let coords: Vec<i128> = self
            .transform
            .iter()
            .map(|row| {
                row.iter().zip(x).fold(0i128, |acc, (&a, &b)| {
                    acc.checked_add(a.checked_mul(b).expect("overflow in projection"))
                        .expect("overflow in projection")
                })
            })
            .collect();
        self.group.element_reduced(&coords)
    }
}
