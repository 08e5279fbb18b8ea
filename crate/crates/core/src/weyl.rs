//! Averaging over the Weyl group of `SU(3)` on polynomials on its Cartan
//! algebra, an independent route to the kernel of `kappa` for the `CP^2`
//! bundle over `BSU(3)`.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::linalg::{self, Subspace};
use crate::algebra::{
    binomial, GeneratorTable, GradedPolynomial, Monomial, Rational, RingMap, RingPresentation,
};
use crate::charring::{l_class, pont_to_so, so_ring, su_ring, EULER};
use crate::error::{Error, Result};
use crate::gysin::{kappa_table, projectivize, BundleSpec, KappaDomain};

/// The six permutations of `{x_1, x_2, x_3}`.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
    [1, 2, 0],
    [2, 0, 1],
];

/// `Q[x_1, x_2]` with `x_3 = -x_1 - x_2`, each `x_i` of degree 2, and the
/// permutation action of `Σ_3`.
#[derive(Debug, Clone)]
pub struct TorusModel {
    ring: RingPresentation,
    actions: Vec<RingMap>,
}

impl Default for TorusModel {
    fn default() -> Self {
        Self::new()
    }
}

impl TorusModel {
    pub fn new() -> Self {
        let table =
            Arc::new(GeneratorTable::from_pairs([("x_1", 2), ("x_2", 2)]).expect("distinct names"));
        let ring = RingPresentation::free(table.clone());
        let x = [
            ring.gen("x_1").expect("x_1"),
            ring.gen("x_2").expect("x_2"),
            -(&ring.gen("x_1").expect("x_1") + &ring.gen("x_2").expect("x_2")),
        ];
        // σ acts by x_i -> x_{σ(i)}; x_3 follows automatically.
        let actions = PERMUTATIONS
            .iter()
            .map(|s| {
                RingMap::new(&table, &ring, vec![x[s[0]].clone(), x[s[1]].clone()])
                    .expect("degree 2 images")
            })
            .collect();
        TorusModel { ring, actions }
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    /// `x_i` for `i` in `1..=3`.
    pub fn x(&self, i: usize) -> GradedPolynomial {
        match i {
            1 => self.ring.gen("x_1").expect("x_1"),
            2 => self.ring.gen("x_2").expect("x_2"),
            3 => -(&self.x(1) + &self.x(2)),
            _ => panic!("x_{i} is not a coordinate"),
        }
    }

    pub fn act(&self, sigma: usize, p: &GradedPolynomial) -> GradedPolynomial {
        self.actions[sigma].apply(p)
    }

    pub fn is_invariant(&self, p: &GradedPolynomial) -> bool {
        self.actions.iter().all(|a| a.apply(p) == *p)
    }

    /// `Φ(p) = Σ_σ σ*p`.
    pub fn phi_average(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        let mut sum = self.ring.zero();
        for a in &self.actions {
            sum += &a.apply(p);
        }
        if !self.is_invariant(&sum) {
            return Err(Error::Precondition("average is not invariant".into()));
        }
        Ok(sum)
    }

    /// Dimension of the invariants in a degree, as the rank of `Φ`.
    pub fn invariant_dimension(&self, degree: u32) -> Result<usize> {
        let basis = self.ring.monomial_basis(degree)?;
        let columns = basis
            .iter()
            .map(|m| {
                let p = GradedPolynomial::monomial(self.ring.table(), m.clone(), Rational::one());
                Ok(self.ring.coordinates(&self.phi_average(&p)?, &basis))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(linalg::rank(
            &linalg::transpose(&columns, basis.len()),
            basis.len(),
        ))
    }

    /// `f*: H*(BSU(3)) -> H*(BT)`, sending `c_4, c_6` to the elementary
    /// symmetric functions `e_2, e_3` of the `x_i`.
    pub fn su3_pullback(&self) -> RingMap {
        let e2 = &(&self.x(1) * &self.x(2)) + &(&self.x(3) * &(&self.x(1) + &self.x(2)));
        let e3 = &(&self.x(1) * &self.x(2)) * &self.x(3);
        let su3 = su_ring(3);
        RingMap::new(su3.table(), &self.ring, vec![e2, e3]).expect("degrees 4 and 6")
    }
}

/// `z_1 = (x_2-x_1)(x_3-x_1)` and its permutations, spanning the
/// quadratic forms on the Cartan algebra.
#[derive(Debug, Clone)]
pub struct ZBasis {
    pub z: [GradedPolynomial; 3],
}

impl ZBasis {
    pub fn new(model: &TorusModel) -> Self {
        let x = |i| model.x(i);
        let z = |i: usize, j: usize, k: usize| &(&x(j) - &x(i)) * &(&x(k) - &x(i));
        ZBasis {
            z: [z(1, 2, 3), z(2, 1, 3), z(3, 2, 1)],
        }
    }

    /// Power sum `s_i = z_1^i + z_2^i + z_3^i`.
    pub fn s(&self, i: u32) -> GradedPolynomial {
        let mut sum = self.z[0].pow(i);
        sum += &self.z[1].pow(i);
        sum += &self.z[2].pow(i);
        sum
    }
}

/// Images of the Euler class and `p_4` under `BT -> BSO(4)`, as `z_1` and
/// `z_1 + s_1`. Both are checked against the root description
/// `χ = ab`, `p_4 = a^2 + b^2`, and `χ^2 = p_8 = a^2 b^2`, where
/// `a = x_2 - x_1` and `b = x_3 - x_1`.
pub fn chi_p4_images(model: &TorusModel) -> Result<(GradedPolynomial, GradedPolynomial)> {
    let zb = ZBasis::new(model);
    let chi = zb.z[0].clone();
    let p4 = &zb.z[0] + &zb.s(1);
    let a = &model.x(2) - &model.x(1);
    let b = &model.x(3) - &model.x(1);
    let ok = chi == &a * &b && p4 == &a.pow(2) + &b.pow(2) && chi.pow(2) == &a.pow(2) * &b.pow(2);
    if !ok {
        return Err(Error::Precondition(
            "torus images disagree with the root description".into(),
        ));
    }
    Ok((chi, p4))
}

/// The ring map `H*(BSO(4)) -> H*(BT)` induced by the torus images.
pub fn so4_pullback(model: &TorusModel) -> Result<RingMap> {
    let (chi, p4) = chi_p4_images(model)?;
    let so4 = so_ring(4);
    let p8 = chi.pow(2);
    let images = so4
        .table()
        .generators()
        .iter()
        .map(|g| match g.name.as_str() {
            EULER => chi.clone(),
            "p_4" => p4.clone(),
            _ => p8.clone(),
        })
        .collect();
    RingMap::new(so4.table(), &model.ring, images)
}

/// `C` with `c_{j,k} = binom(d-k, j)` and its determinant.
pub fn binomial_matrix(d: u32) -> Result<(Vec<Vec<Rational>>, Rational)> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let matrix: Vec<Vec<Rational>> = (0..=d)
        .map(|j| {
            (0..=d)
                .map(|k| {
                    if j <= d - k {
                        Rational::from_integer(binomial(d - k, j))
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = linalg::determinant(&matrix);
    if det.abs() != Rational::one() {
        return Err(Error::Precondition(format!(
            "binomial matrix has determinant {det}"
        )));
    }
    Ok((matrix, det))
}

/// `v_{k,d} = z_1^k (z_1 + s_1)^{d-k}`.
pub fn v_element(model: &TorusModel, k: u32, d: u32) -> GradedPolynomial {
    let zb = ZBasis::new(model);
    &zb.z[0].pow(k) * &(&zb.z[0] + &zb.s(1)).pow(d - k)
}

/// `2 Σ_j binom(d-k, j) s_1^j s_{d-j}`, the expansion of `Φ(v_{k,d})`.
pub fn phi_v_expansion(model: &TorusModel, k: u32, d: u32) -> GradedPolynomial {
    let zb = ZBasis::new(model);
    let mut sum = model.ring.zero();
    for j in 0..=d - k {
        let c = Rational::from_integer(binomial(d - k, j) * 2);
        sum += &(&zb.s(1).pow(j) * &zb.s(d - j)).scale(&c);
    }
    sum
}

fn rank_of(model: &TorusModel, elements: &[GradedPolynomial], degree: u32) -> Result<usize> {
    let basis = model.ring.monomial_basis(degree)?;
    let rows: Vec<Vec<Rational>> = elements
        .iter()
        .map(|p| model.ring.coordinates(p, &basis))
        .collect();
    Ok(linalg::rank(&rows, basis.len()))
}

/// Rank of `Φ` on `span{v_{k,d}}`.
pub fn image_dimension(model: &TorusModel, d: u32) -> Result<usize> {
    let images = (0..=d)
        .map(|k| model.phi_average(&v_element(model, k, d)))
        .collect::<Result<Vec<_>>>()?;
    rank_of(model, &images, 4 * d)
}

/// Whether `s_d` lies in `span{s_j s_1^{d-j} : 0 <= j < d}`, decided in
/// the torus model.
pub fn s_d_in_span_torus(model: &TorusModel, d: u32) -> Result<bool> {
    let zb = ZBasis::new(model);
    let span: Vec<GradedPolynomial> = (0..d).map(|j| &zb.s(j) * &zb.s(1).pow(d - j)).collect();
    let mut with = span.clone();
    with.push(zb.s(d));
    Ok(rank_of(model, &with, 4 * d)? == rank_of(model, &span, 4 * d)?)
}

/// The same membership question with `z_1, z_2, z_3` treated as free
/// variables and restricted to `z_1 + z_2 + z_3 = 0`, i.e. `z_3 = -z_1 - z_2`.
pub fn s_d_in_span_restricted(d: u32) -> Result<bool> {
    let ring = RingPresentation::free(Arc::new(GeneratorTable::from_pairs([
        ("z_1", 4),
        ("z_2", 4),
    ])?));
    let z = [
        ring.gen("z_1")?,
        ring.gen("z_2")?,
        -(&ring.gen("z_1")? + &ring.gen("z_2")?),
    ];
    let s = |i: u32| &(&z[0].pow(i) + &z[1].pow(i)) + &z[2].pow(i);
    let basis = ring.monomial_basis(4 * d)?;
    let span: Vec<Vec<Rational>> = (0..d)
        .map(|j| ring.coordinates(&(&s(j) * &s(1).pow(d - j)), &basis))
        .collect();
    let mut with = span.clone();
    with.push(ring.coordinates(&s(d), &basis));
    Ok(linalg::rank(&with, basis.len()) == linalg::rank(&span, basis.len()))
}

/// Kernel on `H^{4d+4}(BSO(4))` obtained through the averaging operator.
#[derive(Debug, Clone)]
pub struct WeylKernel {
    pub d: u32,
    pub domain_ring: RingPresentation,
    pub domain_basis: Vec<Monomial>,
    /// Columns `Φ((hg)* F(x))` in the torus monomial basis of degree `4d`.
    pub matrix: Vec<Vec<Rational>>,
    pub subspace: Subspace,
}

impl WeylKernel {
    pub fn elements(&self) -> Vec<GradedPolynomial> {
        self.subspace
            .basis()
            .iter()
            .map(|v| self.domain_ring.from_coordinates(&self.domain_basis, v))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Intersection with the Pontrjagin subring (no Euler class factor).
    pub fn pont_part(&self) -> Subspace {
        let chi = self.domain_ring.table().lookup(EULER).expect("Euler class");
        let with_chi: Vec<usize> = (0..self.domain_basis.len())
            .filter(|&i| self.domain_basis[i].exponent(chi) > 0)
            .collect();
        self.subspace
            .intersect(&Subspace::coordinate(self.domain_basis.len(), &with_chi))
    }

    pub fn contains(&self, x: &GradedPolynomial) -> bool {
        self.subspace
            .contains(&self.domain_ring.coordinates(x, &self.domain_basis))
    }
}

/// Splits `x = a L_{4d+4} + χ F(χ, p_4)` and returns `(a, F)`, with `F`
/// written in `H*(BSO(4))`.
pub fn decompose(x: &GradedPolynomial, d: u32) -> Result<(Rational, GradedPolynomial)> {
    let so4 = so_ring(4);
    let x = so4.reduce(x);
    let chi_index = so4.table().lookup(EULER)?;
    let p4_index = so4.table().lookup("p_4")?;
    let p8_index = so4.table().lookup("p_8")?;
    let c1 = x.filter_terms(|m| m.exponent(chi_index) == 0);
    let c2_times_chi = x.filter_terms(|m| m.exponent(chi_index) == 1);
    let ell = pont_to_so(4).apply(&l_class(4, (d + 1) as usize));
    let top = Monomial::generator(so4.table(), p4_index, d + 1);
    let a = c1.coefficient(&top) / ell.coefficient(&top);
    let rest = &c1 - &ell.scale(&a);
    // rest = p_8 C_3 and χ C_2 = c2_times_chi; F = χ C_3 + C_2.
    let p8 = Monomial::generator(so4.table(), p8_index, 1);
    let chi = Monomial::generator(so4.table(), chi_index, 1);
    let mut f = so4.zero();
    for (m, c) in rest.terms() {
        let q = m
            .checked_div(&p8)
            .ok_or_else(|| Error::Precondition("residue not divisible by p_8".into()))?;
        f += &so4.mul(
            &GradedPolynomial::generator(so4.table(), chi_index),
            &GradedPolynomial::monomial(so4.table(), q, c.clone()),
        );
    }
    for (m, c) in c2_times_chi.terms() {
        let q = m.checked_div(&chi).expect("χ divides");
        f.add_term(q, c.clone());
    }
    Ok((a, f))
}

/// `x -> Φ((hg)* F)` on `H^{4d+4}(BSO(4))` and its kernel.
pub fn kernel_via_weyl(model: &TorusModel, d: u32) -> Result<WeylKernel> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let so4 = so_ring(4);
    let pull = so4_pullback(model)?;
    let degree = 4 * d + 4;
    let domain_basis = so4.monomial_basis(degree)?;
    let torus_basis = model.ring.monomial_basis(4 * d)?;
    let columns = domain_basis
        .iter()
        .map(|m| {
            let x = GradedPolynomial::monomial(so4.table(), m.clone(), Rational::one());
            let (_, f) = decompose(&x, d)?;
            Ok(model
                .ring
                .coordinates(&model.phi_average(&pull.apply(&f))?, &torus_basis))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = linalg::transpose(&columns, torus_basis.len());
    let subspace = Subspace::kernel(&matrix, domain_basis.len());
    Ok(WeylKernel {
        d,
        domain_ring: so4,
        domain_basis,
        matrix,
        subspace,
    })
}

/// Result of comparing the averaging route with the Gysin engine.
#[derive(Debug, Clone)]
pub struct WeylComparison {
    pub d: u32,
    pub weyl_dim: usize,
    pub gysin_dim: usize,
    pub same_kernel: bool,
    /// `Φ((hg)* F(x)) = 2 f*(κ(x))` for every basis element.
    pub matrices_agree: bool,
    pub pont_dim: usize,
    pub image_rank: usize,
}

impl WeylComparison {
    pub fn agrees(&self) -> bool {
        self.same_kernel && self.matrices_agree
    }
}

pub fn compare_with_gysin(model: &TorusModel, d: u32) -> Result<WeylComparison> {
    let weyl = kernel_via_weyl(model, d)?;
    let fib = projectivize(&BundleSpec::universal_su(3), "z")?;
    let table = kappa_table(&fib, 4 * d + 4, KappaDomain::Full)?;
    if table.domain_basis != weyl.domain_basis {
        return Err(Error::Precondition("domain bases differ".into()));
    }
    let f_star = model.su3_pullback();
    let torus_basis = model.ring.monomial_basis(4 * d)?;
    let two = Rational::from_integer(2.into());
    let matrices_agree = table.domain_elements().iter().enumerate().all(|(j, x)| {
        let lifted = model
            .ring
            .coordinates(&f_star.apply(&table.apply(x)).scale(&two), &torus_basis);
        lifted.iter().zip(&weyl.matrix).all(|(a, row)| *a == row[j])
    });
    Ok(WeylComparison {
        d,
        weyl_dim: weyl.dim(),
        gysin_dim: table.kernel().dim(),
        same_kernel: weyl.subspace.same_as(&table.kernel()),
        matrices_agree,
        pont_dim: weyl.pont_part().dim(),
        image_rank: linalg::rank(&weyl.matrix, weyl.domain_basis.len()),
    })
}

/// Integer partitions of `n` into parts 2 and 3.
pub fn partitions_into_two_and_three(n: u32) -> usize {
    (0..=n / 3).filter(|b| (n - 3 * b).is_multiple_of(2)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn averaging() {
        let t = TorusModel::new();
        let zb = ZBasis::new(&t);
        assert_eq!(t.phi_average(&zb.z[0]).unwrap(), zb.s(1).scale(&int(2)));
        assert!(t.phi_average(&t.ring().zero()).unwrap().is_zero());
        let f = t.su3_pullback();
        for c in ["c_4", "c_6", "c_4^3 - c_6^2"] {
            let q = f.apply(&parse_polynomial(c, su_ring(3).table()).unwrap());
            assert!(t.is_invariant(&q));
            assert_eq!(t.phi_average(&q).unwrap(), q.scale(&int(6)));
        }
        for deg in 0..=12 {
            assert_eq!(
                t.invariant_dimension(2 * deg).unwrap(),
                partitions_into_two_and_three(deg)
            );
        }
    }

    #[test]
    fn z_basis_is_permuted() {
        let t = TorusModel::new();
        let zb = ZBasis::new(&t);
        for s in 0..6 {
            let images: Vec<_> = zb.z.iter().map(|z| t.act(s, z)).collect();
            for z in &zb.z {
                assert!(images.contains(z));
            }
        }
        let (chi, p4) = chi_p4_images(&t).unwrap();
        assert_eq!(chi, zb.z[0]);
        assert_eq!(p4, &(&zb.z[0].scale(&int(2)) + &zb.z[1]) + &zb.z[2]);
    }

    #[test]
    fn binomial_matrices() {
        let (m, det) = binomial_matrix(1).unwrap();
        assert_eq!(m, vec![vec![int(1), int(1)], vec![int(1), int(0)]]);
        assert_eq!(det, int(-1));
        let (m, det) = binomial_matrix(2).unwrap();
        assert_eq!(m[1], vec![int(2), int(1), int(0)]);
        assert_eq!(det, int(-1));
        for d in 1..=8 {
            let (m, det) = binomial_matrix(d).unwrap();
            assert_eq!(det.abs(), int(1));
            for k in 0..=d as usize {
                assert_eq!(m[d as usize - k][k], int(1));
            }
        }
    }

    #[test]
    fn phi_of_v() {
        let t = TorusModel::new();
        for d in 1..=4 {
            for k in 0..=d {
                assert_eq!(
                    t.phi_average(&v_element(&t, k, d)).unwrap(),
                    phi_v_expansion(&t, k, d)
                );
            }
        }
    }

    #[test]
    fn images_fill_the_invariants() {
        let t = TorusModel::new();
        for d in 1..=6 {
            assert_eq!(
                image_dimension(&t, d).unwrap(),
                partitions_into_two_and_three(2 * d)
            );
        }
    }

    #[test]
    fn membership_checks_disagree() {
        let t = TorusModel::new();
        // In the torus the span is e_2 times the invariants, so s_d escapes
        // it only when 3 | d.
        for d in 2..=8 {
            assert!(!s_d_in_span_restricted(d).unwrap());
            assert_eq!(s_d_in_span_torus(&t, d).unwrap(), d % 3 != 0, "d = {d}");
        }
    }

    #[test]
    fn decomposition() {
        let so4 = so_ring(4);
        let x = parse_polynomial("chi*p_4 + p_4^2 + 2*p_8", so4.table()).unwrap();
        let (a, f) = decompose(&x, 1).unwrap();
        let ell = pont_to_so(4).apply(&l_class(4, 2));
        assert_eq!(a, rat(-45, 1));
        let chi = so4.gen("chi").unwrap();
        assert_eq!(
            so4.reduce(&(&ell.scale(&a) + &so4.mul(&chi, &f))),
            so4.reduce(&x)
        );
    }

    #[test]
    fn agrees_with_gysin() {
        let t = TorusModel::new();
        for d in 1..=4 {
            let c = compare_with_gysin(&t, d).unwrap();
            assert!(c.agrees(), "{c:?}");
            assert_eq!(c.pont_dim, 1);
            let k = kernel_via_weyl(&t, d).unwrap();
            let so4 = so_ring(4);
            let pm = parse_polynomial(&format!("(p_4 - chi)^{}", d + 1), so4.table()).unwrap();
            assert!(k.contains(&so4.reduce(&pm)));
            assert!(k.contains(&pont_to_so(4).apply(&l_class(4, (d + 1) as usize))));
        }
    }
}
