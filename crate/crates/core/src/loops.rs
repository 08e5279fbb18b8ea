//! Free graded-commutative algebras, the doubled algebra modelling the
//! cohomology of a free loop space, and transgression.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::linalg::{self, Subspace};
use crate::algebra::{
    Generator, GeneratorTable, GradedPolynomial, Monomial, Rational, RingMap, RingPresentation,
};
use crate::charring::pont_ring;
use crate::error::{Error, Result};
use crate::gysin::{KappaDomain, KappaTable};

/// Free graded-commutative algebra on named generators; odd generators
/// square to zero.
pub fn free_gca<S: Into<String>>(
    generators: impl IntoIterator<Item = (S, u32)>,
) -> Result<RingPresentation> {
    Ok(RingPresentation::free(Arc::new(
        GeneratorTable::from_pairs(generators)?,
    )))
}

/// Name of the transgressed generator.
pub fn transgressed_name(name: &str) -> String {
    format!("t_{name}")
}

/// `Λ(η* V ⊕ trg V)` for a free source `ΛV`: each generator `x` gives `y`
/// (same name and degree) and `t_x` of degree `|x| - 1`, primed on clashes.
#[derive(Debug, Clone)]
pub struct LoopAlgebra {
    source: RingPresentation,
    target: RingPresentation,
    y: Vec<usize>,
    t: Vec<usize>,
}

impl LoopAlgebra {
    pub fn new(source: &RingPresentation) -> Result<Self> {
        if !source.is_free() {
            return Err(Error::Precondition(
                "the loop model needs a free source algebra".into(),
            ));
        }
        let gens = source.table().generators();
        if let Some(g) = gens.iter().find(|g| g.degree == 0) {
            return Err(Error::Precondition(format!(
                "generator `{}` has degree 0",
                g.name
            )));
        }
        let mut all: Vec<Generator> = gens.to_vec();
        for g in gens {
            // Iterated levels can meet an earlier `t_` name; prime it.
            let mut name = transgressed_name(&g.name);
            while all.iter().any(|h| h.name == name) {
                name.push('\'');
            }
            all.push(Generator::new(name, g.degree - 1));
        }
        let k = gens.len();
        Ok(LoopAlgebra {
            source: source.clone(),
            target: RingPresentation::free(Arc::new(GeneratorTable::new(all)?)),
            y: (0..k).collect(),
            t: (k..2 * k).collect(),
        })
    }

    pub fn source(&self) -> &RingPresentation {
        &self.source
    }

    pub fn target(&self) -> &RingPresentation {
        &self.target
    }

    /// `η*`, the algebra map `x_i -> y_i`.
    pub fn eta(&self, p: &GradedPolynomial) -> GradedPolynomial {
        p.reindex(self.target.table(), &self.y)
            .expect("same degrees")
    }

    fn y_gen(&self, i: usize) -> GradedPolynomial {
        GradedPolynomial::generator(self.target.table(), self.y[i])
    }

    fn t_gen(&self, i: usize) -> GradedPolynomial {
        GradedPolynomial::generator(self.target.table(), self.t[i])
    }

    /// Transgression of a monomial, applying the product rule
    /// `trg(ab) = (-1)^{|a|} η*a trg(b) + trg(a) η*b` along its factors.
    fn trg_monomial(&self, m: &Monomial) -> GradedPolynomial {
        let table = self.source.table();
        let factors: Vec<usize> = m
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let mut sum = self.target.zero();
        let mut prefix_degree = 0u32;
        for (pos, &i) in factors.iter().enumerate() {
            let mut term = self.target.one();
            for (q, &j) in factors.iter().enumerate() {
                let factor = if q == pos {
                    self.t_gen(j)
                } else {
                    self.y_gen(j)
                };
                term = &term * &factor;
            }
            if prefix_degree % 2 == 1 {
                sum -= &term;
            } else {
                sum += &term;
            }
            prefix_degree += table.degree(i);
        }
        sum
    }

    /// `trg: ΛV -> Λ(η*V ⊕ trg V)`, lowering degree by one.
    pub fn trg(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        if **p.table() != **self.source.table() {
            return Err(Error::TableMismatch);
        }
        let mut out = self.target.zero();
        for (m, c) in p.terms() {
            out += &self.trg_monomial(m).scale(c);
        }
        Ok(out)
    }

    /// `trg(x_1^{m_1} ... x_n^{m_n}) = sum_i m_i y_1^{m_1} .. y_i^{m_i - 1} t_i .. y_n^{m_n}`,
    /// valid when every generator has even degree.
    pub fn trg_closed_formula(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        let table = self.source.table();
        if (0..table.len()).any(|i| table.is_odd(i)) {
            return Err(Error::Precondition(
                "the monomial formula needs even generators".into(),
            ));
        }
        let mut out = self.target.zero();
        for (m, c) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut term = self.t_gen(i).scale(&(c * Rational::from_integer(e.into())));
                for (j, &f) in m.exponents().iter().enumerate() {
                    let power = if i == j { f - 1 } else { f };
                    term = &term * &self.y_gen(j).pow(power);
                }
                out += &term;
            }
        }
        Ok(out)
    }

    /// Matrix of `trg` from source degree `degree` to target degree `degree - 1`.
    pub fn trg_matrix(
        &self,
        degree: u32,
    ) -> Result<(Vec<Monomial>, Vec<Monomial>, Vec<Vec<Rational>>)> {
        let domain = self.source.monomial_basis(degree)?;
        let codomain = self.target.monomial_basis(degree.saturating_sub(1))?;
        let columns: Vec<Vec<Rational>> = domain
            .iter()
            .map(|m| self.target.coordinates(&self.trg_monomial(m), &codomain))
            .collect();
        let rows = (0..codomain.len())
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok((domain, codomain, rows))
    }

    /// Whether `trg` has trivial kernel on every positive degree up to
    /// `max_degree`.
    pub fn trg_injectivity_check(&self, max_degree: u32) -> Result<bool> {
        let table = self.source.table();
        if (0..table.len()).any(|i| table.is_odd(i)) {
            return Err(Error::Precondition(
                "injectivity is claimed for even generators only".into(),
            ));
        }
        for degree in 1..=max_degree {
            let (domain, _, rows) = self.trg_matrix(degree)?;
            if linalg::rank(&rows, domain.len()) != domain.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Successive loop algebras `L^1, ..., L^r` over a free source.
#[derive(Debug, Clone)]
pub struct LoopTower {
    levels: Vec<LoopAlgebra>,
}

impl LoopTower {
    /// Requires no source generator of degree `<= r`, standing in for
    /// `r`-connectedness.
    pub fn new(source: &RingPresentation, r: usize) -> Result<Self> {
        if let Some(g) = source
            .table()
            .generators()
            .iter()
            .find(|g| g.degree as usize <= r)
        {
            return Err(Error::Precondition(format!(
                "generator `{}` of degree {} obstructs {r}-fold transgression",
                g.name, g.degree
            )));
        }
        let mut levels = Vec::with_capacity(r);
        let mut ring = source.clone();
        for _ in 0..r {
            let level = LoopAlgebra::new(&ring)?;
            ring = level.target().clone();
            levels.push(level);
        }
        Ok(LoopTower { levels })
    }

    pub fn levels(&self) -> &[LoopAlgebra] {
        &self.levels
    }

    pub fn top(&self) -> &RingPresentation {
        self.levels
            .last()
            .map_or_else(|| unreachable!("towers have a level"), |l| l.target())
    }

    /// `trg^r`.
    pub fn iterate(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        let mut x = p.clone();
        for level in &self.levels {
            x = level.trg(&x)?;
        }
        Ok(x)
    }
}

/// `trg^r(p)`, building the tower on the fly.
pub fn iterate_trg(
    source: &RingPresentation,
    r: usize,
    p: &GradedPolynomial,
) -> Result<GradedPolynomial> {
    if r == 0 {
        return Ok(p.clone());
    }
    LoopTower::new(source, r)?.iterate(p)
}

/// Kappa table of the loop construction (fibre dimension `n + 1`) over the
/// loop model of the base: restrict `Pont*(n+1) -> Pont*(n)`, apply the
/// given table, then transgress.
pub fn loop_kappa(table: &KappaTable, loop_algebra: &LoopAlgebra) -> Result<KappaTable> {
    if table.domain != KappaDomain::Pont {
        return Err(Error::Precondition(
            "loop construction acts on Pontrjagin classes".into(),
        ));
    }
    if !table.codomain.is_free() {
        return Err(Error::Precondition("base cohomology is not free".into()));
    }
    if **loop_algebra.source().table() != **table.codomain.table() {
        return Err(Error::TableMismatch);
    }
    let n = table.n + 1;
    let domain_ring = pont_ring(n);
    let codomain = loop_algebra.target().clone();
    if table.is_empty() || table.degree <= n {
        return Ok(KappaTable::from_columns(
            n,
            table.degree,
            KappaDomain::Pont,
            domain_ring,
            vec![],
            codomain,
            vec![],
            &[],
        ));
    }
    let lower = pont_ring(table.n);
    let images: Vec<GradedPolynomial> = domain_ring
        .table()
        .generators()
        .iter()
        .map(|g| lower.gen(&g.name).unwrap_or_else(|_| lower.zero()))
        .collect();
    let restriction = RingMap::new(domain_ring.table(), &lower, images)?;
    let domain_basis = domain_ring.monomial_basis(table.degree)?;
    let codomain_basis = codomain.monomial_basis(table.degree - n)?;
    let columns: Vec<GradedPolynomial> = domain_basis
        .iter()
        .map(|m| {
            let x = GradedPolynomial::monomial(domain_ring.table(), m.clone(), Rational::one());
            loop_algebra.trg(&table.apply(&restriction.apply(&x)))
        })
        .collect::<Result<_>>()?;
    Ok(KappaTable::from_columns(
        n,
        table.degree,
        KappaDomain::Pont,
        domain_ring,
        domain_basis,
        codomain,
        codomain_basis,
        &columns,
    ))
}

/// `Λφ(w)` for `φ` given by the images of the generators of `V`.
pub fn lambda_extend(
    generators: &Arc<GeneratorTable>,
    images: Vec<GradedPolynomial>,
    target: &RingPresentation,
    w: &GradedPolynomial,
) -> Result<GradedPolynomial> {
    Ok(RingMap::new(generators, target, images)?.apply(w))
}

/// Dimensions compared in one degree for `Λ(V/W) ≅ Λ(V)/(W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDegree {
    pub degree: u32,
    pub lambda_v: usize,
    pub ideal: usize,
    pub kernel: usize,
    pub image: usize,
    pub lambda_quotient: usize,
}

impl QuotientDegree {
    pub fn consistent(&self) -> bool {
        self.kernel == self.ideal
            && self.image == self.lambda_quotient
            && self.lambda_v == self.ideal + self.image
    }
}

/// Reduced row echelon form, returning pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Checks `Λ(V/W) ≅ Λ(V)/(W)` degreewise: `W` is spanned by homogeneous
/// linear combinations of the generators of `V` (coordinate vectors).
pub fn quotient_check(
    v: &Arc<GeneratorTable>,
    w: &[Vec<Rational>],
    max_degree: u32,
) -> Result<Vec<QuotientDegree>> {
    let k = v.len();
    let mut rows = w.to_vec();
    for row in &rows {
        if row.len() != k {
            return Err(Error::Precondition(
                "W vectors must have one entry per generator".into(),
            ));
        }
        let degrees: Vec<u32> = (0..k)
            .filter(|&i| !row[i].is_zero())
            .map(|i| v.degree(i))
            .collect();
        if degrees.windows(2).any(|p| p[0] != p[1]) {
            return Err(Error::NotHomogeneous("W spanning vector".into()));
        }
    }
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..k).filter(|i| !pivots.contains(i)).collect();
    let quotient = RingPresentation::free(Arc::new(GeneratorTable::new(
        free.iter().map(|&i| v.get(i).clone()).collect(),
    )?));
    // π(v_j) = v_j for free j; π(v_p) = -sum_j row_j v_j for a pivot p.
    let qgen = |j: usize| {
        let pos = free.iter().position(|&f| f == j).expect("free generator");
        GradedPolynomial::generator(quotient.table(), pos)
    };
    let images: Vec<GradedPolynomial> = (0..k)
        .map(|i| match pivots.iter().position(|&p| p == i) {
            None => qgen(i),
            Some(r) => {
                let mut img = quotient.zero();
                for &j in &free {
                    if !rows[r][j].is_zero() {
                        img -= &qgen(j).scale(&rows[r][j]);
                    }
                }
                img
            }
        })
        .collect();
    let source = RingPresentation::free(v.clone());
    let pi = RingMap::new(v, &quotient, images)?;
    let w_polys: Vec<GradedPolynomial> = rows
        .iter()
        .map(|row| {
            let mut p = source.zero();
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    p += &GradedPolynomial::generator(v, i).scale(c);
                }
            }
            p
        })
        .collect();
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        let basis = source.monomial_basis(degree)?;
        let qbasis = quotient.monomial_basis(degree)?;
        let matrix_columns: Vec<Vec<Rational>> = basis
            .iter()
            .map(|m| {
                let x = GradedPolynomial::monomial(v, m.clone(), Rational::one());
                quotient.coordinates(&pi.apply(&x), &qbasis)
            })
            .collect();
        let matrix: Vec<Vec<Rational>> = (0..qbasis.len())
            .map(|i| matrix_columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let kernel = Subspace::kernel(&matrix, basis.len()).dim();
        let image = linalg::rank(&matrix, basis.len());
        let mut ideal_vectors = Vec::new();
        for wp in &w_polys {
            let wd = wp.homogeneous_degree().expect("homogeneous");
            if wd > degree {
                continue;
            }
            for m in source.monomial_basis(degree - wd)? {
                let x = GradedPolynomial::monomial(v, m, Rational::one());
                ideal_vectors.push(source.coordinates(&(wp * &x), &basis));
            }
        }
        let ideal = Subspace::span(basis.len(), ideal_vectors).dim();
        out.push(QuotientDegree {
            degree,
            lambda_v: basis.len(),
            ideal,
            kernel,
            image,
            lambda_quotient: qbasis.len(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::charring::su_ring;

    fn loop_of(pairs: &[(&str, u32)]) -> LoopAlgebra {
        LoopAlgebra::new(&free_gca(pairs.iter().cloned()).unwrap()).unwrap()
    }

    fn src(l: &LoopAlgebra, text: &str) -> GradedPolynomial {
        parse_polynomial(text, l.source().table()).unwrap()
    }

    fn tgt(l: &LoopAlgebra, text: &str) -> GradedPolynomial {
        parse_polynomial(text, l.target().table()).unwrap()
    }

    #[test]
    fn transgression_examples() {
        let l = loop_of(&[("x", 4)]);
        assert!(l.trg(&src(&l, "1")).unwrap().is_zero());
        assert_eq!(l.trg(&src(&l, "x^2")).unwrap(), tgt(&l, "2*x*t_x"));
        let l = loop_of(&[("a", 3), ("b", 4)]);
        assert_eq!(l.trg(&src(&l, "a*b")).unwrap(), tgt(&l, "-a*t_b + t_a*b"));
        let l = loop_of(&[("a", 4), ("b", 6)]);
        assert_eq!(l.trg(&src(&l, "a*b")).unwrap(), tgt(&l, "a*t_b + t_a*b"));
    }

    #[test]
    fn closed_formula_matches() {
        let l = loop_of(&[("a", 4), ("b", 6)]);
        let p = src(&l, "a^3*b^2 - 5*a*b");
        assert_eq!(l.trg(&p).unwrap(), l.trg_closed_formula(&p).unwrap());
    }

    #[test]
    fn injectivity() {
        assert!(loop_of(&[("u", 4)]).trg_injectivity_check(20).unwrap());
        assert!(LoopAlgebra::new(&su_ring(3))
            .unwrap()
            .trg_injectivity_check(24)
            .unwrap());
        assert!(LoopAlgebra::new(&free_gca([("e", 0)]).unwrap()).is_err());
    }

    #[test]
    fn iterated() {
        let base = free_gca([("u", 4)]).unwrap();
        let u = base.gen("u").unwrap();
        assert_eq!(iterate_trg(&base, 1, &u).unwrap().to_string(), "t_u");
        let twice = iterate_trg(&base, 2, &u).unwrap();
        assert_eq!(twice.to_string(), "t_t_u");
        assert_eq!(twice.homogeneous_degree(), Some(2));
        let c4 = su_ring(3).gen("c_4").unwrap();
        assert!(!iterate_trg(&su_ring(3), 3, &c4).unwrap().is_zero());
        assert!(iterate_trg(&su_ring(3), 4, &c4).is_err());
    }

    #[test]
    fn lambda_extension() {
        let v = Arc::new(GeneratorTable::from_pairs([("v", 2), ("w", 2)]).unwrap());
        let target = free_gca([("a", 2)]).unwrap();
        let a = target.gen("a").unwrap();
        let images = vec![a.clone(), a.scale(&Rational::from_integer(2.into()))];
        let vw = parse_polynomial("v*w", &v).unwrap();
        let out = lambda_extend(&v, images.clone(), &target, &vw).unwrap();
        assert_eq!(out.to_string(), "2 * a^2");
        let g = parse_polynomial("v", &v).unwrap();
        assert_eq!(lambda_extend(&v, images, &target, &g).unwrap(), a);
    }

    #[test]
    fn quotient_by_linear_forms() {
        let one = Rational::one;
        let v = Arc::new(GeneratorTable::from_pairs([("v_1", 2), ("v_2", 2)]).unwrap());
        for row in quotient_check(&v, &[vec![one(), -one()]], 16).unwrap() {
            assert!(row.consistent(), "{row:?}");
        }
        let odd = Arc::new(GeneratorTable::from_pairs([("a", 3), ("b", 3)]).unwrap());
        let rows = quotient_check(&odd, &[vec![one(), one()]], 16).unwrap();
        assert!(rows.iter().all(QuotientDegree::consistent));
        assert_eq!(rows[6].lambda_v, 1);
        assert_eq!(rows[6].ideal, 1);
    }
}
