//! Projective bundles, fibre integration, and pushforwards of
//! characteristic classes of the vertical tangent bundle.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::linalg::{self, Subspace};
use crate::algebra::rational::double_factorial;
use crate::algebra::{
    binomial, factorial, Generator, GeneratorTable, GradedPolynomial, Monomial, Rational,
    RewriteRule, RingMap, RingPresentation, TensorRing,
};
use crate::charring::{pont_ring, pont_to_so, so_ring, so_whitney, su_ring, EULER};
use crate::error::{Error, Result};
use crate::symmetric::{character_component, CharacterKind};

/// A complex vector bundle over a base given by its rank and Chern
/// classes `c_2, c_4, ...` (omitted trailing classes are zero).
#[derive(Debug, Clone)]
pub struct BundleSpec {
    base: RingPresentation,
    rank: u32,
    chern: Vec<GradedPolynomial>,
}

impl BundleSpec {
    pub fn new(base: RingPresentation, rank: u32, chern: Vec<GradedPolynomial>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition("bundle rank must be positive".into()));
        }
        if chern.len() > rank as usize {
            return Err(Error::Precondition(format!(
                "{} Chern classes given for a rank {rank} bundle",
                chern.len()
            )));
        }
        let mut reduced = Vec::with_capacity(chern.len());
        for (i, c) in chern.into_iter().enumerate() {
            if **c.table() != **base.table() {
                return Err(Error::TableMismatch);
            }
            let expected = 2 * (i as u32 + 1);
            match c.homogeneous_degree() {
                Some(d) if d != expected => {
                    return Err(Error::DegreeMismatch {
                        name: format!("c_{expected}"),
                        expected,
                        found: d,
                    })
                }
                None if !c.is_zero() => return Err(Error::NotHomogeneous(format!("c_{expected}"))),
                _ => {}
            }
            reduced.push(base.reduce(&c));
        }
        Ok(BundleSpec {
            base,
            rank,
            chern: reduced,
        })
    }

    pub fn trivial(base: RingPresentation, rank: u32) -> Result<Self> {
        Self::new(base, rank, Vec::new())
    }

    /// The universal bundle over `BSU(n)`.
    pub fn universal_su(n: u32) -> Self {
        let base = su_ring(n);
        let mut chern = vec![base.zero()];
        chern.extend(
            base.table()
                .generators()
                .iter()
                .map(|g| base.gen(&g.name).unwrap()),
        );
        Self::new(base, n, chern).expect("universal classes have the right degrees")
    }

    /// `V ⊕ C^k`.
    pub fn plus_trivial(&self, k: u32) -> Self {
        BundleSpec {
            rank: self.rank + k,
            ..self.clone()
        }
    }

    pub fn base(&self) -> &RingPresentation {
        &self.base
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `c_{2i}`, with `c_0 = 1`.
    pub fn chern(&self, i: usize) -> GradedPolynomial {
        match i {
            0 => self.base.one(),
            i if i <= self.chern.len() => self.chern[i - 1].clone(),
            _ => self.base.zero(),
        }
    }
}

/// A fibre bundle whose total-space cohomology is free over the base with
/// basis the monomials in the fibre generators below their top powers, and
/// whose vertical tangent bundle is complex.
///
/// Fibre integration extracts the coefficient of the product of the fibre
/// generators at their top powers.
#[derive(Debug, Clone)]
pub struct Fibration {
    base: RingPresentation,
    total: RingPresentation,
    base_map: Vec<usize>,
    fibre: Vec<(usize, u32)>,
    vertical: GradedPolynomial,
    rank: u32,
}

/// `P(V)` with tautological class `z` named `name`; the relation is
/// `sum_i c_{2i}(V) z^{r-i} = 0`.
pub fn projectivize(spec: &BundleSpec, name: &str) -> Result<Fibration> {
    let r = spec.rank;
    let (ring, map) = spec
        .base
        .with_leading_generators(vec![Generator::new(name, 2)])?;
    let table = ring.table().clone();
    let z = GradedPolynomial::generator(&table, 0);
    let embed = |p: &GradedPolynomial| p.reindex(&table, &map).expect("base embeds");
    let mut replacement = GradedPolynomial::zero(&table);
    for i in 1..=r as usize {
        replacement -= &(&embed(&spec.chern(i)) * &z.pow(r - i as u32));
    }
    let mut rules = ring.rules().to_vec();
    rules.push(RewriteRule::new(0, r, replacement)?);
    let total = RingPresentation::new(table.clone(), rules)?;

    // T_v ⊕ C = q*V ⊗ L^dual, so c(T_v) = sum_j e_j(v_1 + z, ..., v_r + z).
    let e_shifted = |j: u32| {
        let mut sum = GradedPolynomial::zero(&table);
        for i in 0..=j {
            let coef = Rational::from_integer(binomial(r - i, j - i));
            sum += &(&embed(&spec.chern(i as usize)) * &z.pow(j - i)).scale(&coef);
        }
        total.reduce(&sum)
    };
    if !e_shifted(r).is_zero() {
        return Err(Error::Inconsistent(
            "top Chern class of q*V ⊗ L^dual does not vanish".into(),
        ));
    }
    let mut vertical = total.zero();
    for j in 0..r {
        vertical += &e_shifted(j);
    }
    Ok(Fibration {
        base: spec.base.clone(),
        total,
        base_map: map,
        fibre: vec![(0, r - 1)],
        vertical,
        rank: r - 1,
    })
}

impl Fibration {
    pub fn base(&self) -> &RingPresentation {
        &self.base
    }

    pub fn total(&self) -> &RingPresentation {
        &self.total
    }

    /// Real dimension of the fibre.
    pub fn fibre_dimension(&self) -> u32 {
        2 * self.rank
    }

    /// Complex rank of the vertical tangent bundle.
    pub fn vertical_rank(&self) -> u32 {
        self.rank
    }

    /// `c_{2j}(T_v)` for `j = 0..=rank`.
    pub fn vertical_chern(&self) -> Vec<GradedPolynomial> {
        (0..=self.rank)
            .map(|j| self.vertical.graded_component(2 * j))
            .collect()
    }

    /// Top power of the fibre generator named `name`.
    pub fn fibre_generator(&self, name: &str) -> Option<(GradedPolynomial, u32)> {
        let i = self.total.table().position(name)?;
        let top = self.fibre.iter().find(|(g, _)| *g == i)?.1;
        Some((GradedPolynomial::generator(self.total.table(), i), top))
    }

    pub fn pullback(&self, y: &GradedPolynomial) -> GradedPolynomial {
        self.base
            .embed(y, &self.total, &self.base_map)
            .expect("base embeds into total")
    }

    /// Fibre integration `H^k(E) -> H^{k - dim}(B)`.
    pub fn gysin(&self, x: &GradedPolynomial) -> GradedPolynomial {
        let reduced = self.total.reduce(x);
        let mut out = self.base.zero();
        for (m, c) in reduced.terms() {
            if self.fibre.iter().any(|&(g, top)| m.exponent(g) != top) {
                continue;
            }
            let exps = self.base_map.iter().map(|&i| m.exponent(i)).collect();
            let base_monomial =
                Monomial::from_exponents(self.base.table(), exps).expect("normal monomial");
            out.add_term(base_monomial, c.clone());
        }
        out
    }

    /// `(p_4, ..., p_{4r})` and the Euler class of the vertical tangent
    /// bundle, from `p_k = (-1)^k [t^{2k}] c(t) c(-t)`.
    pub fn real_classes(&self) -> (Vec<GradedPolynomial>, GradedPolynomial) {
        let c = self.vertical_chern();
        let r = self.rank as usize;
        let mut pont = Vec::with_capacity(r);
        for k in 1..=r {
            let mut sum = self.total.zero();
            for i in 0..=(2 * k).min(r) {
                let j = 2 * k - i;
                if j > r {
                    continue;
                }
                let term = self.total.mul(&c[i], &c[j]);
                if j % 2 == 0 {
                    sum += &term;
                } else {
                    sum -= &term;
                }
            }
            pont.push(if k % 2 == 0 { sum } else { -sum });
        }
        (pont, c[r].clone())
    }

    /// The classifying map `H*(BSO(n)) -> H*(E)` of the vertical tangent
    /// bundle, `n` the fibre dimension.
    pub fn tangent_map(&self) -> RingMap {
        let n = self.fibre_dimension();
        let so = so_ring(n);
        let (pont, euler) = self.real_classes();
        let images = so
            .table()
            .generators()
            .iter()
            .map(|g| {
                if g.name == EULER {
                    euler.clone()
                } else {
                    pont[(g.degree / 4) as usize - 1].clone()
                }
            })
            .collect();
        RingMap::new(so.table(), &self.total, images)
            .expect("tangent classes have the right degrees")
    }

    /// `kappa(c) = f_!(c(T_v))` for a class in `H*(BSO(n))` or `Pont*(n)`.
    pub fn kappa(&self, class: &GradedPolynomial) -> Result<GradedPolynomial> {
        let n = self.fibre_dimension();
        let class = if **class.table() == **pont_ring(n).table() {
            pont_to_so(n).apply(class)
        } else if **class.table() == **so_ring(n).table() {
            class.clone()
        } else {
            return Err(Error::TableMismatch);
        };
        Ok(self.gysin(&self.tangent_map().apply(&class)))
    }

    /// `trf(x) = f_!(chi(T_v) x)`.
    pub fn transfer(&self, x: &GradedPolynomial) -> GradedPolynomial {
        let (_, euler) = self.real_classes();
        self.gysin(&self.total.mul(&euler, x))
    }

    /// Normalized Chern character component `ch_{2d}(T_v)`.
    pub fn chern_character(&self, d: usize) -> GradedPolynomial {
        let r = self.rank as usize;
        let c = self.vertical_chern();
        character_component(CharacterKind::Chern, d, r, true)
            .evaluate(&c[1..], &self.total)
            .expect("Chern classes have the right degrees")
    }

    /// Stacks `upper`, a fibration over our total space, on top of `self`.
    /// The vertical tangent bundle of the composite is `T_upper ⊕ T_self`.
    pub fn compose(&self, upper: &Fibration) -> Result<Fibration> {
        if upper.base != self.total {
            return Err(Error::TableMismatch);
        }
        let base_map = self.base_map.iter().map(|&i| upper.base_map[i]).collect();
        let mut fibre = upper.fibre.clone();
        fibre.extend(self.fibre.iter().map(|&(g, top)| (upper.base_map[g], top)));
        let vertical = upper
            .total
            .mul(&upper.vertical, &upper.pullback(&self.vertical));
        Ok(Fibration {
            base: self.base.clone(),
            total: upper.total.clone(),
            base_map,
            fibre,
            vertical,
            rank: self.rank + upper.rank,
        })
    }

    /// `E_1 × E_2 -> B_1 × B_2`; the second factor's names are primed.
    pub fn product(&self, other: &Fibration) -> Result<Fibration> {
        let total = TensorRing::new(
            &self.total,
            &other.total,
            |s| s.to_string(),
            |s| format!("{s}'"),
        )?;
        let base = product_base(self, other)?;
        let mut base_map: Vec<usize> = self.base_map.iter().map(|&i| total.left_map[i]).collect();
        base_map.extend(other.base_map.iter().map(|&i| total.right_map[i]));
        let mut fibre: Vec<(usize, u32)> = self
            .fibre
            .iter()
            .map(|&(g, t)| (total.left_map[g], t))
            .collect();
        fibre.extend(other.fibre.iter().map(|&(g, t)| (total.right_map[g], t)));
        let vertical = total
            .ring
            .mul(&total.left(&self.vertical)?, &total.right(&other.vertical)?);
        Ok(Fibration {
            base: base.ring,
            total: total.ring,
            base_map,
            fibre,
            vertical,
            rank: self.rank + other.rank,
        })
    }
}

/// `H*(B_1) ⊗ H*(B_2)` with the naming used by [`Fibration::product`].
pub fn product_base(a: &Fibration, b: &Fibration) -> Result<TensorRing> {
    TensorRing::new(&a.base, &b.base, |s| s.to_string(), |s| format!("{s}'"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaDomain {
    /// The Pontrjagin subring.
    Pont,
    /// All of `H*(BSO(n))`, including the Euler class.
    Full,
}

/// Matrix of `kappa` in one degree: rows indexed by the codomain monomial
/// basis, columns by the domain basis.
#[derive(Debug, Clone)]
pub struct KappaTable {
    pub n: u32,
    pub degree: u32,
    pub domain: KappaDomain,
    pub domain_ring: RingPresentation,
    pub domain_basis: Vec<Monomial>,
    pub codomain: RingPresentation,
    pub codomain_basis: Vec<Monomial>,
    pub matrix: Vec<Vec<Rational>>,
}

impl KappaTable {
    /// Builds the table from the images of the domain basis elements.
    pub fn from_columns(
        n: u32,
        degree: u32,
        domain: KappaDomain,
        domain_ring: RingPresentation,
        domain_basis: Vec<Monomial>,
        codomain: RingPresentation,
        codomain_basis: Vec<Monomial>,
        columns: &[GradedPolynomial],
    ) -> Self {
        let coords: Vec<Vec<Rational>> = columns
            .iter()
            .map(|c| codomain.coordinates(c, &codomain_basis))
            .collect();
        let matrix = (0..codomain_basis.len())
            .map(|i| coords.iter().map(|col| col[i].clone()).collect())
            .collect();
        KappaTable {
            n,
            degree,
            domain,
            domain_ring,
            domain_basis,
            codomain,
            codomain_basis,
            matrix,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.domain_basis.is_empty()
    }

    pub fn domain_elements(&self) -> Vec<GradedPolynomial> {
        self.domain_basis
            .iter()
            .map(|m| {
                GradedPolynomial::monomial(self.domain_ring.table(), m.clone(), Rational::one())
            })
            .collect()
    }

    pub fn coordinates(&self, x: &GradedPolynomial) -> Vec<Rational> {
        self.domain_ring.coordinates(x, &self.domain_basis)
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.matrix.iter().map(|row| row[j].clone()).collect()
    }

    /// `kappa(x)` through the matrix.
    pub fn apply(&self, x: &GradedPolynomial) -> GradedPolynomial {
        let image = linalg::mat_vec(&self.matrix, &self.coordinates(x));
        self.codomain.from_coordinates(&self.codomain_basis, &image)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel(&self.matrix, self.domain_basis.len())
    }

    pub fn kernel_elements(&self) -> Vec<GradedPolynomial> {
        self.kernel()
            .basis()
            .iter()
            .map(|v| self.domain_ring.from_coordinates(&self.domain_basis, v))
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix, self.domain_basis.len())
    }
}

/// Matrix of `kappa: H^degree(BSO(n)) -> H^{degree-n}(B)` (or its
/// restriction to `Pont`). Degrees `<= n` are discarded by the shift, which
/// leaves an empty table.
pub fn kappa_table(fibration: &Fibration, degree: u32, domain: KappaDomain) -> Result<KappaTable> {
    let n = fibration.fibre_dimension();
    let domain_ring = match domain {
        KappaDomain::Pont => pont_ring(n),
        KappaDomain::Full => so_ring(n),
    };
    let codomain = fibration.base.clone();
    if degree <= n {
        return Ok(KappaTable::from_columns(
            n,
            degree,
            domain,
            domain_ring,
            vec![],
            codomain,
            vec![],
            &[],
        ));
    }
    let domain_basis = domain_ring.monomial_basis(degree)?;
    let codomain_basis = codomain.monomial_basis(degree - n)?;
    let columns: Vec<GradedPolynomial> = domain_basis
        .iter()
        .map(|m| {
            fibration.kappa(&GradedPolynomial::monomial(
                domain_ring.table(),
                m.clone(),
                Rational::one(),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(KappaTable::from_columns(
        n,
        degree,
        domain,
        domain_ring,
        domain_basis,
        codomain,
        codomain_basis,
        &columns,
    ))
}

/// `Q[u]` with `deg u = 4`, the cohomology of `BSU(2)`.
pub fn bsu2_ring() -> RingPresentation {
    RingPresentation::free(Arc::new(
        GeneratorTable::from_pairs([("u", 4)]).expect("one name"),
    ))
}

/// `P(V ⊕ C^{m-1})` over `BSU(2)`, a `CP^m` bundle.
pub fn bsu2_plus_trivial(m: u32) -> Result<Fibration> {
    if m < 1 {
        return Err(Error::Precondition(
            "fibre dimension m must be positive".into(),
        ));
    }
    let base = bsu2_ring();
    let u = base.gen("u")?;
    let spec = BundleSpec::new(base.clone(), m + 1, vec![base.zero(), u])?;
    projectivize(&spec, "z")
}

/// `a_0..a_K` in `q_!(ch(T_v)) = sum_p a_p u^p` for `P(V ⊕ C^{m-1})`
/// over `BSU(2)`, computed from the vertical tangent bundle.
pub fn ch_pushforward(m: u32, truncation: usize) -> Result<Vec<Rational>> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "m = {m}; the pushforward needs m >= 2"
        )));
    }
    let fibration = bsu2_plus_trivial(m)?;
    let table = fibration.base.table().clone();
    (0..truncation)
        .chain(std::iter::once(truncation))
        .map(|p| {
            let d = m as usize + 2 * p;
            let image = fibration.gysin(&fibration.chern_character(d));
            Ok(image.coefficient(&Monomial::generator(&table, 0, p as u32)))
        })
        .collect()
}

/// Coefficients of `(2 cos(sqrt u) + m - 1) * sum_l (-1)^l u^l / (m+2l)!`.
pub fn ch_pushforward_series(m: u32, truncation: usize) -> Vec<Rational> {
    let fact = |n: u32| Rational::from_integer(factorial(n));
    let cos2: Vec<Rational> = (0..=truncation)
        .map(|k| sign(k) * Rational::from_integer(BigInt::from(2)) / fact(2 * k as u32))
        .collect();
    let line: Vec<Rational> = (0..=truncation)
        .map(|l| sign(l) / fact(m + 2 * l as u32))
        .collect();
    (0..=truncation)
        .map(|p| {
            let mut a = Rational::from_integer(BigInt::from(m) - 1) * &line[p];
            for k in 0..=p {
                a += &cos2[k] * &line[p - k];
            }
            a
        })
        .collect()
}

/// The printed closed form
/// `(-1)^p ((m-1)/(m+2p)! + sum_{k+l=p} 2/((m+2k)F (2l)!))`,
/// where `F` is the double factorial when `double` is set and the ordinary
/// factorial otherwise.
pub fn ch_pushforward_closed_form(m: u32, truncation: usize, double: bool) -> Vec<Rational> {
    let fact = |n: u32| Rational::from_integer(factorial(n));
    let head = |n: u32| {
        Rational::from_integer(if double {
            double_factorial(n)
        } else {
            factorial(n)
        })
    };
    (0..=truncation)
        .map(|p| {
            let mut a = Rational::from_integer(BigInt::from(m) - 1) / fact(m + 2 * p as u32);
            for k in 0..=p {
                let l = p - k;
                a += Rational::from_integer(BigInt::from(2))
                    / (head(m + 2 * k as u32) * fact(2 * l as u32));
            }
            sign(p) * a
        })
        .collect()
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Which printed form of the coefficients agrees with the direct pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormComparison {
    pub pipeline: Vec<Rational>,
    pub series: Vec<Rational>,
    pub single_factorial_matches: bool,
    pub double_factorial_matches: bool,
}

pub fn compare_ch_pushforward(m: u32, truncation: usize) -> Result<ClosedFormComparison> {
    let pipeline = ch_pushforward(m, truncation)?;
    let series = ch_pushforward_series(m, truncation);
    Ok(ClosedFormComparison {
        single_factorial_matches: pipeline == ch_pushforward_closed_form(m, truncation, false),
        double_factorial_matches: pipeline == ch_pushforward_closed_form(m, truncation, true),
        pipeline,
        series,
    })
}

/// The composite `P(W) -> CP^1 × CP^r -> CP^r`, where `CP^1 × CP^r` is the
/// projectivization of the trivial plane bundle (class `z`, `z^2 = 0`) and
/// `W` has rank `m+1`, `c_2 = 0`, `c_4 = u = x^2 + z x` (class `w`).
#[derive(Debug, Clone)]
pub struct HolomorphicComposite {
    pub r: u32,
    pub m: u32,
    pub proj: Fibration,
    pub q: Fibration,
    pub composite: Fibration,
    pub u: GradedPolynomial,
}

/// `H*(CP^r) = Q[x]/(x^{r+1})`.
pub fn projective_space(r: u32) -> RingPresentation {
    let table = Arc::new(GeneratorTable::from_pairs([("x", 2)]).expect("one name"));
    let rule = RewriteRule::new(0, r + 1, GradedPolynomial::zero(&table)).expect("valid rule");
    RingPresentation::new(table, vec![rule]).expect("single rule")
}

pub fn holomorphic_composite(r: u32, m: u32) -> Result<HolomorphicComposite> {
    if m < 1 {
        return Err(Error::Precondition(
            "fibre dimension m must be positive".into(),
        ));
    }
    let cpr = projective_space(r);
    let proj = projectivize(&BundleSpec::trivial(cpr, 2)?, "z")?;
    let middle = proj.total().clone();
    let x = middle.gen("x")?;
    let z = middle.gen("z")?;
    let u = middle.reduce(&(&x.pow(2) + &(&z * &x)));
    let spec = BundleSpec::new(middle.clone(), m + 1, vec![middle.zero(), u.clone()])?;
    let q = projectivize(&spec, "w")?;
    let composite = proj.compose(&q)?;
    Ok(HolomorphicComposite {
        r,
        m,
        proj,
        q,
        composite,
        u,
    })
}

impl HolomorphicComposite {
    /// `proj_!(u^l)`.
    pub fn proj_pushforward_of_u_power(&self, l: u32) -> GradedPolynomial {
        self.proj.gysin(&self.proj.total().pow(&self.u, l))
    }

    /// Coefficient of `x^{2l-1}` in `(proj ∘ q)_!(ch(T_v))` for `l = 1..=K`.
    pub fn composite_coefficients(&self, truncation: usize) -> Vec<Rational> {
        let base = self.composite.base();
        (1..=truncation)
            .map(|l| {
                let d = self.m as usize + 2 * l;
                let image = self.composite.gysin(&self.composite.chern_character(d));
                image.coefficient(&Monomial::generator(base.table(), 0, 2 * l as u32 - 1))
            })
            .collect()
    }
}

/// Coefficients of `x^{2l-1}`, `l = 1..=K`, of the composite pushforward of
/// the Chern character; each should be `l * a_l`.
pub fn composite_pushforward_holomorphic(
    r: u32,
    m: u32,
    truncation: usize,
) -> Result<Vec<Rational>> {
    if (r as usize) < 2 * truncation {
        return Err(Error::Truncation {
            requested: 2 * truncation,
            truncation: r as usize,
        });
    }
    Ok(holomorphic_composite(r, m)?.composite_coefficients(truncation))
}

/// Fibre integration along the sphere bundle `BSO(2m) -> BSO(2m+1)`:
/// writing `x = x_1 chi + x_2` with `x_i` Pontrjagin, returns `2 x_1` in
/// `Pont*(2m+1) = H*(BSO(2m+1))`.
pub fn sphere_bundle_gysin(m: u32, x: &GradedPolynomial) -> Result<GradedPolynomial> {
    let so = so_ring(2 * m);
    if **x.table() != **so.table() {
        return Err(Error::TableMismatch);
    }
    let target = pont_ring(2 * m + 1);
    let mut out = target.zero();
    for (mono, c) in so.reduce(x).terms() {
        if mono.exponent(0) == 1 {
            let exps = mono.exponents()[1..].to_vec();
            out.add_term(
                Monomial::from_exponents(target.table(), exps)?,
                c * Rational::from_integer(2.into()),
            );
        }
    }
    Ok(out)
}

/// `kappa` of a product bundle computed two ways: restricting the class
/// along the Whitney sum and applying `kappa ⊗ kappa`, and directly on the
/// product bundle. Both land in `H*(B_1) ⊗ H*(B_2)`.
pub fn product_kappa(
    first: &Fibration,
    second: &Fibration,
    class: &GradedPolynomial,
) -> Result<(GradedPolynomial, GradedPolynomial)> {
    let (n1, n2) = (first.fibre_dimension(), second.fibre_dimension());
    let n = n1 + n2;
    let class = if **class.table() == **pont_ring(n).table() {
        pont_to_so(n).apply(class)
    } else if **class.table() == **so_ring(n).table() {
        class.clone()
    } else {
        return Err(Error::TableMismatch);
    };
    if class.terms().any(|(m, _)| m.degree() % 2 == 1) {
        return Err(Error::Precondition(
            "odd-degree classes need the signed product formula".into(),
        ));
    }
    let base = product_base(first, second)?;
    let (tensor, restriction) = so_whitney(n1, n2)?;
    let left_so = so_ring(n1);
    let right_so = so_ring(n2);
    let mut via_restriction = base.ring.zero();
    for (m, c) in restriction.apply(&class).terms() {
        let (a, b) = tensor.split(m, left_so.table(), right_so.table());
        let ka = first.kappa(&GradedPolynomial::monomial(
            left_so.table(),
            a,
            Rational::one(),
        ))?;
        let kb = second.kappa(&GradedPolynomial::monomial(
            right_so.table(),
            b,
            Rational::one(),
        ))?;
        via_restriction += &base.product(&ka, &kb)?.scale(c);
    }
    let direct = first.product(second)?.kappa(&class)?;
    Ok((base.ring.reduce(&via_restriction), direct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};
    use crate::charring::{l_class, parse_class};
    use num_traits::Zero;

    fn cp2_bundle() -> Fibration {
        projectivize(&BundleSpec::universal_su(3), "z").unwrap()
    }

    fn poly(ring: &RingPresentation, text: &str) -> GradedPolynomial {
        ring.reduce(&parse_polynomial(text, ring.table()).unwrap())
    }

    #[test]
    fn projective_relations() {
        let p = cp2_bundle();
        let t = p.total();
        assert_eq!(t.reduce(&poly(t, "z^3")), poly(t, "-c_4*z - c_6"));
        let point = projectivize(
            &BundleSpec::trivial(
                RingPresentation::free(Arc::new(GeneratorTable::new(vec![]).unwrap())),
                3,
            )
            .unwrap(),
            "z",
        )
        .unwrap();
        assert!(point.total().reduce(&poly(point.total(), "z^3")).is_zero());
        let m = 4;
        let b = bsu2_plus_trivial(m).unwrap();
        let bt = b.total();
        assert_eq!(bt.reduce(&poly(bt, "z^5")), poly(bt, "-u*z^3"));
        for l in 0..4u32 {
            let zpow = poly(bt, &format!("z^{}", m + 2 * l));
            let expected = poly(
                b.base(),
                &format!("{}*u^{l}", if l % 2 == 0 { 1 } else { -1 }),
            );
            assert_eq!(b.gysin(&zpow), expected);
        }
    }

    #[test]
    fn gysin_on_powers() {
        let p = cp2_bundle();
        let t = p.total();
        assert_eq!(p.gysin(&poly(t, "z^2")), p.base().one());
        assert!(p.gysin(&poly(t, "z")).is_zero());
        assert!(p.gysin(&poly(t, "1")).is_zero());
    }

    #[test]
    fn vertical_tangent_classes() {
        let p = cp2_bundle();
        let t = p.total();
        let c = p.vertical_chern();
        assert_eq!(c[1], poly(t, "3*z"));
        assert_eq!(c[2], poly(t, "c_4 + 3*z^2"));
        let (pont, euler) = p.real_classes();
        assert_eq!(euler, poly(t, "c_4 + 3*z^2"));
        assert_eq!(pont[0], poly(t, "3*z^2 - 2*c_4"));

        let cp1 = projectivize(&BundleSpec::trivial(bsu2_ring(), 2).unwrap(), "z").unwrap();
        assert_eq!(cp1.vertical_chern()[1], poly(cp1.total(), "2*z"));

        let line = projectivize(&BundleSpec::trivial(bsu2_ring(), 1).unwrap(), "z").unwrap();
        assert_eq!(line.vertical_chern(), vec![line.total().one()]);
        let (pont, euler) = line.real_classes();
        assert!(pont.is_empty());
        assert_eq!(euler, line.total().one());
    }

    #[test]
    fn tangent_of_cp2() {
        // CP^2 over a point: p_1 = 3h^2 fixes the sign convention.
        let point = RingPresentation::free(Arc::new(GeneratorTable::new(vec![]).unwrap()));
        let p = projectivize(&BundleSpec::trivial(point, 3).unwrap(), "h").unwrap();
        let (pont, euler) = p.real_classes();
        assert_eq!(pont[0], poly(p.total(), "3*h^2"));
        assert_eq!(euler, poly(p.total(), "3*h^2"));
        assert_eq!(p.kappa(&l_class(4, 1)).unwrap(), p.base().one());
    }

    #[test]
    fn kappa_examples() {
        let p = cp2_bundle();
        let chi = so_ring(4).gen("chi").unwrap();
        assert_eq!(p.kappa(&chi).unwrap(), p.base().constant(rat(3, 1)));
        assert!(p.kappa(&l_class(4, 2)).unwrap().is_zero());
        assert!(!p.kappa(&l_class(4, 1)).unwrap().is_zero());
        let table = kappa_table(&p, 8, KappaDomain::Pont).unwrap();
        assert_eq!(table.kernel().dim(), 1);
        assert!(table.kernel().contains(&table.coordinates(&l_class(4, 2))));
        let full = kappa_table(&p, 8, KappaDomain::Full).unwrap();
        assert_eq!(full.kernel().dim(), 2);
        let x = parse_class("(p_4 - chi)^2", 4, true).unwrap();
        assert!(full.kernel().contains(&full.coordinates(&x)));
        assert!(kappa_table(&p, 4, KappaDomain::Pont).unwrap().is_empty());
    }

    #[test]
    fn ch_pushforward_low_terms() {
        let a = ch_pushforward(2, 5).unwrap();
        assert_eq!(a[0], rat(3, 2));
        assert!(a.iter().all(|x| !x.is_zero()));
        for m in 2..6u32 {
            let a = ch_pushforward(m, 3).unwrap();
            assert_eq!(
                a[0],
                Rational::from_integer(BigInt::from(m + 1)) / Rational::from_integer(factorial(m))
            );
            assert_eq!(a, ch_pushforward_series(m, 3));
        }
        assert!(ch_pushforward(1, 2).is_err());
    }

    #[test]
    fn holomorphic_composite_terms() {
        let h = holomorphic_composite(12, 2).unwrap();
        let base = h.proj.base();
        for l in 1..=5u32 {
            let expected = poly(base, &format!("{l}*x^{}", 2 * l - 1));
            assert_eq!(h.proj_pushforward_of_u_power(l), expected);
        }
        let u3 = h.proj.total().pow(&h.u, 3);
        assert_eq!(u3, poly(h.proj.total(), "x^6 + 3*z*x^5"));
        let a = ch_pushforward(2, 3).unwrap();
        let coeffs = composite_pushforward_holomorphic(12, 2, 3).unwrap();
        for (l, c) in coeffs.iter().enumerate() {
            assert_eq!(*c, Rational::from_integer(BigInt::from(l + 1)) * &a[l + 1]);
        }
        assert!(composite_pushforward_holomorphic(4, 2, 3).is_err());
    }

    #[test]
    fn sphere_bundle() {
        let so = so_ring(4);
        let two = |text: &str| poly(&pont_ring(5), text);
        assert_eq!(sphere_bundle_gysin(2, &poly(&so, "chi")).unwrap(), two("2"));
        assert!(sphere_bundle_gysin(2, &poly(&so, "p_4")).unwrap().is_zero());
        assert_eq!(
            sphere_bundle_gysin(2, &poly(&so, "chi*p_4")).unwrap(),
            two("2*p_4")
        );
        assert_eq!(
            sphere_bundle_gysin(2, &poly(&so, "chi^3")).unwrap(),
            two("2*p_8")
        );
    }

    #[test]
    fn transfer_multiplies_by_euler_number() {
        let p = cp2_bundle();
        assert_eq!(p.transfer(&p.total().one()), p.base().constant(rat(3, 1)));
        let y = poly(p.base(), "c_4^2 - c_6");
        assert_eq!(p.transfer(&p.pullback(&y)), y.scale(&rat(3, 1)));
        let line = projectivize(&BundleSpec::trivial(su_ring(3), 1).unwrap(), "z").unwrap();
        assert_eq!(line.transfer(&line.pullback(&y)), y);
    }

    #[test]
    fn product_routes_agree() {
        let a = cp2_bundle();
        let b = projectivize(&BundleSpec::trivial(bsu2_ring(), 2).unwrap(), "z").unwrap();
        for text in ["p_4^2 - 2*p_8", "p_4^3", "chi*p_4 + p_8", "1"] {
            let class = parse_class(text, 6, true).unwrap();
            let (r1, r2) = product_kappa(&a, &b, &class).unwrap();
            assert_eq!(r1, r2, "{text}");
        }
        let (r1, _) = product_kappa(&a, &b, &parse_class("1", 6, true).unwrap()).unwrap();
        assert!(r1.is_zero());
    }
}
