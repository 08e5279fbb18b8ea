//! Cohomology presentations of BSO(n), BSU(n), BU(n), the Pontrjagin
//! subring, and the Whitney restriction maps used to characterize the
//! common kernel of all splittings.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::linalg::{self, Subspace};
use crate::algebra::{
    GeneratorTable, GradedPolynomial, Monomial, Rational, RewriteRule, RingMap, RingPresentation,
    TensorRing,
};
use crate::error::{Error, Result};
use crate::symmetric::{l_class_component, power_sum, SymmetricPolynomial};

/// Name of the Euler class generator.
pub const EULER: &str = "chi";

pub fn pontrjagin_name(k: usize) -> String {
    format!("p_{}", 4 * k)
}

/// `Pont*(n) = Q[p_4, ..., p_{4m}]`, `m = floor(n/2)`.
pub fn pont_ring(n: u32) -> RingPresentation {
    let m = (n / 2) as usize;
    let table = GeneratorTable::from_pairs((1..=m).map(|k| (pontrjagin_name(k), 4 * k as u32)))
        .expect("distinct names");
    RingPresentation::free(Arc::new(table))
}

/// `H*(BSO(n))`: the Pontrjagin ring, plus `chi` of degree `n` with
/// `chi^2 = p_{2n}` when `n` is even.
pub fn so_ring(n: u32) -> RingPresentation {
    let pont = pont_ring(n);
    if n % 2 == 1 || n == 0 {
        return pont;
    }
    let m = (n / 2) as usize;
    let mut pairs = vec![(EULER.to_string(), n)];
    pairs.extend((1..=m).map(|k| (pontrjagin_name(k), 4 * k as u32)));
    let table = Arc::new(GeneratorTable::from_pairs(pairs).expect("distinct names"));
    let rule = RewriteRule::new(0, 2, GradedPolynomial::generator(&table, m)).expect("valid rule");
    RingPresentation::new(table, vec![rule]).expect("single rule")
}

/// Includes `Pont*(n)` into `H*(BSO(n))`.
pub fn pont_to_so(n: u32) -> RingMap {
    let pont = pont_ring(n);
    let so = so_ring(n);
    let images = pont
        .table()
        .generators()
        .iter()
        .map(|g| so.gen(&g.name).expect("shared name"))
        .collect();
    RingMap::new(pont.table(), &so, images).expect("degree preserving")
}

/// `H*(BSU(n)) = Q[c_4, ..., c_{2n}]`.
pub fn su_ring(n: u32) -> RingPresentation {
    let table = GeneratorTable::from_pairs((2..=n).map(|i| (format!("c_{}", 2 * i), 2 * i)))
        .expect("distinct names");
    RingPresentation::free(Arc::new(table))
}

/// `H*(BU(n)) = Q[c_2, ..., c_{2n}]`.
pub fn u_ring(n: u32) -> RingPresentation {
    let table = GeneratorTable::from_pairs((1..=n).map(|i| (format!("c_{}", 2 * i), 2 * i)))
        .expect("distinct names");
    RingPresentation::free(Arc::new(table))
}

/// Monomial basis of `Pont^degree(n)`.
pub fn pont_basis(n: u32, degree: u32) -> Result<Vec<GradedPolynomial>> {
    if !degree.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "Pontrjagin degree {degree} is not divisible by 4"
        )));
    }
    let ring = pont_ring(n);
    Ok(ring
        .monomial_basis(degree)?
        .into_iter()
        .map(|m| GradedPolynomial::monomial(ring.table(), m, Rational::from_integer(1.into())))
        .collect())
}

/// Evaluates a symmetric function in `floor(n/2)` Pontrjagin roots as an
/// element of `Pont*(n)`.
pub fn pont_from_symmetric(n: u32, f: &SymmetricPolynomial) -> Result<GradedPolynomial> {
    let ring = pont_ring(n);
    let m = ring.table().len();
    let f = f.with_vars(m);
    let images: Vec<GradedPolynomial> = (0..m)
        .map(|i| GradedPolynomial::generator(ring.table(), i))
        .collect();
    f.evaluate(&images, &ring)
}

/// `ph_{4d}` represented by the bare power sum of the Pontrjagin roots.
pub fn ph_class(n: u32, d: usize) -> GradedPolynomial {
    let m = (n / 2) as usize;
    pont_from_symmetric(n, &power_sum(d, m, 4)).expect("power sums evaluate")
}

/// Hirzebruch class `L_{4d}` in `Pont*(n)`.
pub fn l_class(n: u32, d: usize) -> GradedPolynomial {
    let m = (n / 2) as usize;
    pont_from_symmetric(n, &l_class_component(d, m)).expect("L components evaluate")
}

/// The Whitney sum map `Pont*(n) -> Pont*(n1) ⊗ Pont*(n2)`, with the
/// second factor's generators primed.
#[derive(Debug, Clone)]
pub struct WhitneySplit {
    pub n1: u32,
    pub n2: u32,
    pub tensor: TensorRing,
    map: RingMap,
}

impl WhitneySplit {
    pub fn new(n1: u32, n2: u32) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Precondition(format!("invalid split ({n1}, {n2})")));
        }
        let left = pont_ring(n1);
        let right = pont_ring(n2);
        let tensor = TensorRing::new(&left, &right, |s| s.to_string(), |s| format!("{s}'"))?;
        let (m1, m2) = ((n1 / 2) as usize, (n2 / 2) as usize);
        let source = pont_ring(n1 + n2);
        let p = |side: &[usize], i: usize| {
            if i == 0 {
                tensor.ring.one()
            } else {
                GradedPolynomial::generator(tensor.ring.table(), side[i - 1])
            }
        };
        let images = (1..=source.table().len())
            .map(|k| {
                let mut sum = tensor.ring.zero();
                for i in 0..=k.min(m1) {
                    let j = k - i;
                    if j <= m2 {
                        sum += &(&p(&tensor.left_map, i) * &p(&tensor.right_map, j));
                    }
                }
                sum
            })
            .collect();
        let map = RingMap::new(source.table(), &tensor.ring, images)?;
        Ok(WhitneySplit {
            n1,
            n2,
            tensor,
            map,
        })
    }

    pub fn n(&self) -> u32 {
        self.n1 + self.n2
    }

    /// Restriction before the shift truncation.
    pub fn restrict(&self, x: &GradedPolynomial) -> GradedPolynomial {
        self.map.apply(x)
    }

    /// Restriction followed by discarding every component whose degree on
    /// a factor is below that factor's fibre dimension.
    pub fn restrict_shifted(&self, x: &GradedPolynomial) -> GradedPolynomial {
        self.restrict(x).filter_terms(|m| {
            let (a, b) = self.tensor.bidegree(m);
            a >= self.n1 && b >= self.n2
        })
    }

    /// Coordinates of the shifted restriction. With `tilde`, the right
    /// factor is taken modulo the Hirzebruch class of its degree.
    fn coordinates(
        &self,
        x: &GradedPolynomial,
        tilde: bool,
    ) -> BTreeMap<(Monomial, Monomial), Rational> {
        let left = pont_ring(self.n1);
        let right = pont_ring(self.n2);
        let mut out = BTreeMap::new();
        let image = self.restrict_shifted(x);
        for (m, c) in image.terms() {
            let (l, r) = self.tensor.split(m, left.table(), right.table());
            out.insert((l, r), c.clone());
        }
        if !tilde {
            return out;
        }
        let mut quotient = BTreeMap::new();
        let mut by_block: BTreeMap<(Monomial, u32), Vec<(Monomial, Rational)>> = BTreeMap::new();
        for ((l, r), c) in out {
            let b = r.degree();
            by_block.entry((l, b)).or_default().push((r, c));
        }
        for ((l, b), entries) in by_block {
            let ell = l_class(self.n2, (b / 4) as usize);
            let (pivot, pivot_coef) = ell
                .leading_term()
                .map(|(m, c)| (m.clone(), c.clone()))
                .expect("L components are nonzero");
            let at_pivot = entries
                .iter()
                .find(|(r, _)| *r == pivot)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero);
            let factor = at_pivot / pivot_coef;
            let mut block: BTreeMap<Monomial, Rational> = entries.into_iter().collect();
            for (r, c) in ell.terms() {
                *block.entry(r.clone()).or_insert_with(Rational::zero) -= &factor * c;
            }
            block.remove(&pivot);
            for (r, c) in block {
                if !c.is_zero() {
                    quotient.insert((l.clone(), r), c);
                }
            }
        }
        quotient
    }
}

/// Whitney sum map on full `H*(BSO(n1 + n2))` for even `n1, n2`: the
/// Pontrjagin classes split as in [`WhitneySplit`] and `chi -> chi ⊗ chi'`.
pub fn so_whitney(n1: u32, n2: u32) -> Result<(TensorRing, RingMap)> {
    if n1 == 0 || n2 == 0 || n1 % 2 == 1 || n2 % 2 == 1 {
        return Err(Error::Precondition(format!(
            "Euler class splitting needs positive even dimensions, got ({n1}, {n2})"
        )));
    }
    let left = so_ring(n1);
    let right = so_ring(n2);
    let tensor = TensorRing::new(&left, &right, |s| s.to_string(), |s| format!("{s}'"))?;
    let source = so_ring(n1 + n2);
    let name = |side: &[usize], table: &GeneratorTable, i: usize| {
        if i == 0 {
            tensor.ring.one()
        } else {
            let pos = table
                .lookup(&pontrjagin_name(i))
                .expect("Pontrjagin generator");
            GradedPolynomial::generator(tensor.ring.table(), side[pos])
        }
    };
    let (m1, m2) = ((n1 / 2) as usize, (n2 / 2) as usize);
    let images = source
        .table()
        .generators()
        .iter()
        .map(|g| {
            if g.name == EULER {
                let l = GradedPolynomial::generator(tensor.ring.table(), tensor.left_map[0]);
                let r = GradedPolynomial::generator(tensor.ring.table(), tensor.right_map[0]);
                return &l * &r;
            }
            let k = (g.degree / 4) as usize;
            let mut sum = tensor.ring.zero();
            for i in 0..=k.min(m1) {
                let j = k - i;
                if j <= m2 {
                    sum += &(&name(&tensor.left_map, left.table(), i)
                        * &name(&tensor.right_map, right.table(), j));
                }
            }
            sum
        })
        .collect();
    let map = RingMap::new(source.table(), &tensor.ring, images)?;
    Ok((tensor, map))
}

/// Parses a characteristic class of `n`-dimensional oriented bundles.
/// Besides generator names, `L_<deg>` and `ph_<deg>` denote Hirzebruch and
/// Pontrjagin character components. With `full`, the result lives in
/// `H*(BSO(n))`, otherwise in `Pont*(n)`.
pub fn parse_class(text: &str, n: u32, full: bool) -> Result<GradedPolynomial> {
    let ring = if full { so_ring(n) } else { pont_ring(n) };
    let embed = pont_to_so(n);
    let lift = |p: GradedPolynomial| if full { embed.apply(&p) } else { p };
    let resolved = crate::algebra::parse_with(text, ring.table(), |name| {
        let (kind, degree) = name.split_once('_')?;
        let degree: u32 = degree.parse().ok()?;
        if !degree.is_multiple_of(4) {
            return None;
        }
        let d = (degree / 4) as usize;
        match kind {
            "L" => Some(lift(l_class(n, d))),
            "ph" => Some(lift(ph_class(n, d))),
            _ => None,
        }
    })?;
    Ok(ring.reduce(&resolved))
}

/// Stacks the coordinate rows of the given splits on a domain basis.
fn restriction_rows(
    splits: &[WhitneySplit],
    basis: &[GradedPolynomial],
    tilde: bool,
) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for split in splits {
        let columns: Vec<_> = basis.iter().map(|x| split.coordinates(x, tilde)).collect();
        let mut keys: Vec<&(Monomial, Monomial)> = columns.iter().flat_map(|c| c.keys()).collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            rows.push(
                columns
                    .iter()
                    .map(|c| c.get(key).cloned().unwrap_or_else(Rational::zero))
                    .collect(),
            );
        }
    }
    rows
}

/// A subspace of `Pont^degree(n)` recorded in [`pont_basis`] coordinates.
#[derive(Debug, Clone)]
pub struct SubspaceSpec {
    pub n: u32,
    pub degree: u32,
    pub basis: Vec<GradedPolynomial>,
    pub subspace: Subspace,
}

impl SubspaceSpec {
    pub fn from_polynomials(n: u32, degree: u32, elements: &[GradedPolynomial]) -> Result<Self> {
        let basis = pont_basis(n, degree)?;
        let monomials: Vec<Monomial> = basis
            .iter()
            .map(|b| b.leading_term().unwrap().0.clone())
            .collect();
        let ring = pont_ring(n);
        let vectors = elements.iter().map(|p| ring.coordinates(p, &monomials));
        let subspace = Subspace::span(basis.len(), vectors);
        Ok(SubspaceSpec {
            n,
            degree,
            basis,
            subspace,
        })
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Basis elements as polynomials.
    pub fn elements(&self) -> Vec<GradedPolynomial> {
        let ring = pont_ring(self.n);
        self.subspace
            .basis()
            .iter()
            .map(|v| {
                let mut p = ring.zero();
                for (c, b) in v.iter().zip(&self.basis) {
                    p += &b.scale(c);
                }
                p
            })
            .collect()
    }

    pub fn same_as(&self, other: &SubspaceSpec) -> bool {
        self.n == other.n && self.degree == other.degree && self.subspace.same_as(&other.subspace)
    }

    pub fn contains(&self, p: &GradedPolynomial) -> bool {
        let monomials: Vec<Monomial> = self
            .basis
            .iter()
            .map(|b| b.leading_term().unwrap().0.clone())
            .collect();
        self.subspace
            .contains(&pont_ring(self.n).coordinates(p, &monomials))
    }
}

fn check_kernel_args(n: u32, degree: u32) -> Result<()> {
    if !degree.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "degree {degree} is not divisible by 4"
        )));
    }
    if n % 2 == 1 && n < 7 {
        return Err(Error::Precondition(format!(
            "odd fibre dimension {n} < 7 is outside the characterization"
        )));
    }
    if n == 0 {
        return Err(Error::Precondition(
            "fibre dimension must be positive".into(),
        ));
    }
    Ok(())
}

/// The splits whose kernels are intersected: `(2 m1, 2 m2)` with
/// `0 < m1 < m` for even `n`, and every `(even, odd)` split for odd `n`.
pub fn admissible_splits(n: u32) -> Result<Vec<WhitneySplit>> {
    let m = n / 2;
    if n.is_multiple_of(2) {
        (1..m)
            .map(|m1| WhitneySplit::new(2 * m1, n - 2 * m1))
            .collect()
    } else {
        (1..=m)
            .map(|m1| WhitneySplit::new(2 * m1, n - 2 * m1))
            .collect()
    }
}

/// Common kernel of all restrictions (`r` for even `n`, `r~` for odd `n`)
/// on `Pont^degree(n)`, computed from the stacked restriction matrices.
pub fn kernel_intersection(n: u32, degree: u32) -> Result<SubspaceSpec> {
    check_kernel_args(n, degree)?;
    let basis = pont_basis(n, degree)?;
    if degree < n {
        return SubspaceSpec::from_polynomials(n, degree, &[]);
    }
    let splits = admissible_splits(n)?;
    let rows = restriction_rows(&splits, &basis, n % 2 == 1);
    let kernel = linalg::nullspace(&rows, basis.len());
    let ring = pont_ring(n);
    let elements: Vec<GradedPolynomial> = kernel
        .iter()
        .map(|v| {
            let mut p = ring.zero();
            for (c, b) in v.iter().zip(&basis) {
                p += &b.scale(c);
            }
            p
        })
        .collect();
    SubspaceSpec::from_polynomials(n, degree, &elements)
}

/// The predicted kernel: `ph_{4d}` for even `n`; `ph_{4d}` and `L_{4d}`
/// for odd `n >= 7`. Empty below the fibre dimension.
pub fn closed_form_kernel(n: u32, degree: u32) -> Result<SubspaceSpec> {
    check_kernel_args(n, degree)?;
    if degree < n {
        return SubspaceSpec::from_polynomials(n, degree, &[]);
    }
    let d = (degree / 4) as usize;
    let mut elements = vec![ph_class(n, d)];
    if n % 2 == 1 {
        elements.push(l_class(n, d));
    }
    SubspaceSpec::from_polynomials(n, degree, &elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn pont(n: u32, text: &str) -> GradedPolynomial {
        parse_polynomial(text, pont_ring(n).table()).unwrap()
    }

    #[test]
    fn bso4_presentation() {
        let so = so_ring(4);
        let chi = so.gen("chi").unwrap();
        assert_eq!(so.mul(&chi, &chi), so.gen("p_8").unwrap());
        assert_eq!(so.dimension(8).unwrap(), 3);
    }

    #[test]
    fn pont_bases() {
        let names = |n, d| -> Vec<String> {
            pont_basis(n, d)
                .unwrap()
                .iter()
                .map(|p| p.to_string())
                .collect()
        };
        assert_eq!(names(4, 8), ["p_4^2", "p_8"]);
        assert_eq!(names(4, 12), ["p_4^3", "p_4 * p_8"]);
        assert_eq!(names(2, 8), ["p_4^2"]);
        assert!(pont_basis(4, 6).is_err());
    }

    #[test]
    fn su_rings_skip_c2() {
        let su3 = su_ring(3);
        let names: Vec<&str> = su3
            .table()
            .generators()
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        assert_eq!(names, ["c_4", "c_6"]);
        assert_eq!(su3.dimension(12).unwrap(), 2);
        assert_eq!(u_ring(2).dimension(4).unwrap(), 2);
    }

    #[test]
    fn whitney_on_generators() {
        let split = WhitneySplit::new(2, 2).unwrap();
        let image = split.restrict(&pont(4, "p_4"));
        assert_eq!(image.to_string(), "p_4 + p_4'");
        let image = split.restrict(&pont(4, "p_8"));
        assert_eq!(image.to_string(), "p_4 * p_4'");
        assert_eq!(split.restrict(&pont(4, "1")).to_string(), "1");
        assert!(WhitneySplit::new(0, 4).is_err());
    }

    #[test]
    fn ph_restricts_primitively() {
        let split = WhitneySplit::new(2, 2).unwrap();
        let image = split.restrict(&ph_class(4, 2));
        assert_eq!(image.to_string(), "p_4^2 + p_4'^2");
        assert!(split.restrict_shifted(&ph_class(4, 2)).is_zero());
    }

    #[test]
    fn ph_and_l_classes() {
        assert_eq!(ph_class(4, 2), pont(4, "p_4^2 - 2*p_8"));
        assert_eq!(l_class(4, 2), pont(4, "(7*p_8 - p_4^2)/45"));
        assert_eq!(l_class(2, 2), pont(2, "-1/45*p_4^2"));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_intersection(4, 8).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&pont(4, "p_4^2 - 2*p_8")));
        assert_eq!(kernel_intersection(6, 12).unwrap().dim(), 1);
        let k = kernel_intersection(7, 8).unwrap();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&l_class(7, 2)));
        assert_eq!(closed_form_kernel(6, 4).unwrap().dim(), 0);
        assert!(kernel_intersection(5, 8).is_err());
    }

    #[test]
    fn euler_class_splits() {
        let (tensor, map) = so_whitney(2, 2).unwrap();
        let chi = so_ring(4).gen("chi").unwrap();
        assert_eq!(map.apply(&chi).to_string(), "chi * chi'");
        assert_eq!(
            tensor
                .ring
                .reduce(&map.apply(&so_ring(4).gen("p_8").unwrap()))
                .to_string(),
            "p_4 * p_4'"
        );
        assert!(so_whitney(3, 2).is_err());
    }

    #[test]
    fn class_expressions() {
        assert_eq!(parse_class("L_8", 4, false).unwrap(), l_class(4, 2));
        let full = parse_class("chi^2 - p_8 + ph_4", 4, true).unwrap();
        assert_eq!(full.to_string(), "p_4");
        assert!(parse_class("L_6", 4, false).is_err());
    }

    #[test]
    fn tilde_keeps_p4_alive() {
        let split = WhitneySplit::new(2, 5).unwrap();
        assert!(!split.coordinates(&pont(7, "p_4^3"), true).is_empty());
        assert!(split.coordinates(&l_class(7, 3), true).is_empty());
    }
}
