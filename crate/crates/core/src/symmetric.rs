//! Symmetric polynomials in formal roots, expressed in the elementary
//! basis, and multiplicative sequences generated by a power series.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{
    bernoulli, factorial, linalg, GeneratorTable, GradedPolynomial, Monomial, Rational, RingMap,
    RingPresentation,
};
use crate::error::{Error, Result};

/// Generators `e_1, ..., e_m` with `deg e_i = weight * i`. The weight must
/// be even so that the generators commute.
pub fn elementary_table(vars: usize, weight: u32) -> Arc<GeneratorTable> {
    assert!(weight.is_multiple_of(2), "symmetric functions need an even weight");
    Arc::new(
        GeneratorTable::from_pairs((1..=vars).map(|i| (format!("e_{i}"), weight * i as u32)))
            .expect("distinct names"),
    )
}

/// Root variables `x_1, ..., x_m`, each of degree `weight`.
pub fn root_table(vars: usize, weight: u32) -> Arc<GeneratorTable> {
    assert!(weight.is_multiple_of(2), "symmetric functions need an even weight");
    Arc::new(
        GeneratorTable::from_pairs((1..=vars).map(|i| (format!("x_{i}"), weight)))
            .expect("distinct names"),
    )
}

/// Elementary symmetric polynomial `e_k` in the generators of `table`
/// whose indices are listed in `vars`.
pub fn elementary_in(table: &Arc<GeneratorTable>, vars: &[usize], k: usize) -> GradedPolynomial {
    // Coefficients of prod (1 + x_i t), built one variable at a time.
    let mut layers = vec![GradedPolynomial::one(table)];
    for &v in vars {
        let x = GradedPolynomial::generator(table, v);
        let mut next = layers.clone();
        next.push(GradedPolynomial::zero(table));
        for j in 1..next.len() {
            next[j] += &(&layers[j - 1] * &x);
        }
        layers = next;
    }
    layers
        .into_iter()
        .nth(k)
        .unwrap_or_else(|| GradedPolynomial::zero(table))
}

/// A polynomial in the elementary symmetric functions of `vars` roots.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPolynomial {
    vars: usize,
    weight: u32,
    poly: GradedPolynomial,
}

impl SymmetricPolynomial {
    pub fn from_elementary(vars: usize, weight: u32, poly: GradedPolynomial) -> Result<Self> {
        if **poly.table() != *elementary_table(vars, weight) {
            return Err(Error::TableMismatch);
        }
        Ok(SymmetricPolynomial { vars, weight, poly })
    }

    pub fn zero(vars: usize, weight: u32) -> Self {
        SymmetricPolynomial {
            vars,
            weight,
            poly: GradedPolynomial::zero(&elementary_table(vars, weight)),
        }
    }

    pub fn one(vars: usize, weight: u32) -> Self {
        SymmetricPolynomial {
            vars,
            weight,
            poly: GradedPolynomial::one(&elementary_table(vars, weight)),
        }
    }

    /// `e_i` (zero when `i > vars`).
    pub fn elementary(i: usize, vars: usize, weight: u32) -> Self {
        let table = elementary_table(vars, weight);
        let poly = match i {
            0 => GradedPolynomial::one(&table),
            i if i <= vars => GradedPolynomial::generator(&table, i - 1),
            _ => GradedPolynomial::zero(&table),
        };
        SymmetricPolynomial { vars, weight, poly }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn poly(&self) -> &GradedPolynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_shape(&self, other: &Self) {
        assert!(
            self.vars == other.vars && self.weight == other.weight,
            "symmetric polynomials in different variable sets"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        SymmetricPolynomial {
            poly: &self.poly + &other.poly,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other);
        SymmetricPolynomial {
            poly: &self.poly - &other.poly,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_shape(other);
        SymmetricPolynomial {
            poly: &self.poly * &other.poly,
            ..self.clone()
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        SymmetricPolynomial {
            poly: self.poly.scale(factor),
            ..self.clone()
        }
    }

    /// Same element with `deg e_i = weight * i`.
    pub fn regrade(&self, weight: u32) -> Self {
        let table = elementary_table(self.vars, weight);
        let poly = GradedPolynomial::from_terms(
            &table,
            self.poly.terms().map(|(m, c)| {
                (
                    Monomial::from_exponents(&table, m.exponents().to_vec()).unwrap(),
                    c.clone(),
                )
            }),
        );
        SymmetricPolynomial {
            vars: self.vars,
            weight,
            poly,
        }
    }

    /// Rewrites in `vars` variables: extra `e_i` are zero, dropped ones map
    /// to zero (the "set the new roots to 0" specialization).
    pub fn with_vars(&self, vars: usize) -> Self {
        let table = elementary_table(vars, self.weight);
        let mut poly = GradedPolynomial::zero(&table);
        for (m, c) in self.poly.terms() {
            let e = m.exponents();
            if e.iter().skip(vars).any(|&x| x > 0) {
                continue;
            }
            let mut exps = vec![0; vars];
            for (i, &x) in e.iter().take(vars).enumerate() {
                exps[i] = x;
            }
            poly.add_term(Monomial::from_exponents(&table, exps).unwrap(), c.clone());
        }
        SymmetricPolynomial {
            vars,
            weight: self.weight,
            poly,
        }
    }

    /// Coefficient of `e_1^d`.
    pub fn coefficient_of_e1_power(&self, d: u32) -> Rational {
        if self.vars == 0 {
            return if d == 0 {
                self.poly.constant_term()
            } else {
                Rational::zero()
            };
        }
        let table = self.poly.table();
        self.poly.coefficient(&Monomial::generator(table, 0, d))
    }

    /// Expansion as an honest polynomial in the roots `x_1..x_m`.
    pub fn expand(&self) -> GradedPolynomial {
        let roots = root_table(self.vars, self.weight);
        let ring = RingPresentation::free(roots.clone());
        let all: Vec<usize> = (0..self.vars).collect();
        let images = (1..=self.vars)
            .map(|k| elementary_in(&roots, &all, k))
            .collect();
        RingMap::new(self.poly.table(), &ring, images)
            .expect("elementary images have matching degrees")
            .apply(&self.poly)
    }

    /// Evaluates at `e_i -> images[i-1]` in `target`. The images must have
    /// degree `weight' * i` for a single `weight'`.
    pub fn evaluate(
        &self,
        images: &[GradedPolynomial],
        target: &RingPresentation,
    ) -> Result<GradedPolynomial> {
        if images.len() != self.vars {
            return Err(Error::Precondition(format!(
                "{} images for {} elementary generators",
                images.len(),
                self.vars
            )));
        }
        let weight = images
            .iter()
            .enumerate()
            .find_map(|(i, p)| {
                p.homogeneous_degree()
                    .filter(|&d| d > 0)
                    .map(|d| d / (i as u32 + 1))
            })
            .unwrap_or(self.weight);
        let regraded = if self.vars == 0 {
            self.clone()
        } else {
            self.regrade(weight)
        };
        Ok(RingMap::new(regraded.poly.table(), target, images.to_vec())?.apply(&regraded.poly))
    }

    /// Renders with `e_i` replaced by `name(i)`, for example `p_{4i}`.
    pub fn render_with(&self, name: impl Fn(usize) -> String) -> String {
        let table = Arc::new(
            GeneratorTable::from_pairs((1..=self.vars).map(|i| (name(i), self.weight * i as u32)))
                .expect("distinct names"),
        );
        let map: Vec<usize> = (0..self.vars).collect();
        self.poly
            .reindex(&table, &map)
            .expect("same degrees")
            .to_string()
    }
}

impl fmt::Display for SymmetricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Newton power sum `s_d = x_1^d + ... + x_m^d` in the elementary basis.
pub fn power_sum(d: usize, vars: usize, weight: u32) -> SymmetricPolynomial {
    power_sums(d, vars, weight).pop().expect("non-empty")
}

/// `[s_0, s_1, ..., s_d]` with `s_0 = m`.
pub fn power_sums(d: usize, vars: usize, weight: u32) -> Vec<SymmetricPolynomial> {
    let e = |i: usize| SymmetricPolynomial::elementary(i, vars, weight);
    let mut s =
        vec![SymmetricPolynomial::one(vars, weight)
            .scale(&Rational::from_integer(BigInt::from(vars)))];
    for k in 1..=d {
        // s_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i s_{k-i} + (-1)^{k-1} k e_k
        let mut acc = e(k).scale(&Rational::from_integer(BigInt::from(k)));
        if k % 2 == 0 {
            acc = acc.scale(&-Rational::one());
        }
        for i in 1..k {
            let term = e(i).mul(&s[k - i]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        s.push(acc);
    }
    s
}

fn is_symmetric(p: &GradedPolynomial, vars: usize) -> Result<bool> {
    if vars < 2 {
        return Ok(true);
    }
    let table = p.table();
    let mut transposition: Vec<usize> = (0..vars).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..vars).map(|i| (i + 1) % vars).collect();
    Ok(p.reindex(table, &transposition)? == *p && p.reindex(table, &cycle)? == *p)
}

/// Expresses a symmetric polynomial in the roots `x_1..x_m` (as produced by
/// [`root_table`]) in the elementary basis, by repeatedly cancelling the
/// leading monomial `x^a` with `e_1^{a_1-a_2} ... e_m^{a_m}`.
pub fn express_in_elementary(p: &GradedPolynomial) -> Result<SymmetricPolynomial> {
    let roots = p.table().clone();
    let vars = roots.len();
    let weight = if vars == 0 {
        INDEX_WEIGHT
    } else {
        roots.degree(0)
    };
    if *roots != *root_table(vars, weight) {
        return Err(Error::Precondition(
            "polynomial is not in root variables x_1..x_m".into(),
        ));
    }
    if !is_symmetric(p, vars)? {
        return Err(Error::NotSymmetric);
    }
    let etable = elementary_table(vars, weight);
    let all: Vec<usize> = (0..vars).collect();
    let elementary: Vec<GradedPolynomial> =
        (1..=vars).map(|k| elementary_in(&roots, &all, k)).collect();
    let mut rest = p.clone();
    let mut out = GradedPolynomial::zero(&etable);
    while let Some((lead, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let a = lead.exponents();
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        let exps: Vec<u32> = (0..vars)
            .map(|i| a[i] - if i + 1 < vars { a[i + 1] } else { 0 })
            .collect();
        let mut expansion = GradedPolynomial::constant(&roots, c.clone());
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 {
                expansion = &expansion * &elementary[i].pow(k);
            }
        }
        rest -= &expansion;
        out.add_term(Monomial::from_exponents(&etable, exps)?, c);
    }
    Ok(SymmetricPolynomial {
        vars,
        weight,
        poly: out,
    })
}

/// Truncated power series `f_0 + f_1 x + ... + f_K x^K`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coefficients: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs a constant term");
        PowerSeries { coefficients }
    }

    /// `sqrt(x) coth(sqrt(x)) = sum 2^{2k} B_{2k} / (2k)! x^k`.
    pub fn hirzebruch_l(truncation: usize) -> Self {
        let b = crate::algebra::rational::bernoulli_table(2 * truncation);
        PowerSeries::new(
            (0..=truncation)
                .map(|k| {
                    let two_pow = BigInt::one() << (2 * k);
                    Rational::from_integer(two_pow) * &b[2 * k]
                        / Rational::from_integer(factorial(2 * k as u32))
                })
                .collect(),
        )
    }

    /// `1 + x`, whose multiplicative sequence is the total elementary class.
    pub fn one_plus_x(truncation: usize) -> Self {
        let mut c = vec![Rational::zero(); truncation + 1];
        c[0] = Rational::one();
        if truncation >= 1 {
            c[1] = Rational::one();
        }
        PowerSeries::new(c)
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `log f` for `f_0 = 1`, truncated at the same order.
    fn log(&self) -> Result<Vec<Rational>> {
        if !self.coefficients[0].is_one() {
            return Err(Error::Precondition(
                "multiplicative sequences need f_0 = 1".into(),
            ));
        }
        let f = &self.coefficients;
        let mut g = vec![Rational::zero(); f.len()];
        for k in 1..f.len() {
            // k g_k = k f_k - sum_{j=1}^{k-1} j g_j f_{k-j}
            let mut acc = Rational::from_integer(BigInt::from(k)) * &f[k];
            for j in 1..k {
                acc -= Rational::from_integer(BigInt::from(j)) * &g[j] * &f[k - j];
            }
            g[k] = acc / Rational::from_integer(BigInt::from(k));
        }
        Ok(g)
    }
}

/// Grading used for sequence components before they are regraded.
pub const INDEX_WEIGHT: u32 = 2;

/// Multiplicative sequence `F` of a power series `f`: `F(x_1..x_m)` is the
/// symmetric function `prod_i f(x_i)`, split into homogeneous components.
#[derive(Debug)]
pub struct MultiplicativeSequence {
    series: PowerSeries,
    cache: Mutex<HashMap<usize, Arc<Vec<SymmetricPolynomial>>>>,
}

impl Clone for MultiplicativeSequence {
    fn clone(&self) -> Self {
        MultiplicativeSequence::new(self.series.clone())
    }
}

impl MultiplicativeSequence {
    pub fn new(series: PowerSeries) -> Self {
        MultiplicativeSequence {
            series,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn hirzebruch_l(truncation: usize) -> Self {
        Self::new(PowerSeries::hirzebruch_l(truncation))
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn truncation(&self) -> usize {
        self.series.truncation()
    }

    /// All components `F_0..F_K` in `vars` variables, with `deg e_i = 2i`.
    pub fn components(&self, vars: usize) -> Result<Arc<Vec<SymmetricPolynomial>>> {
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&vars) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(self.compute(vars)?);
        // Concurrent fills compute identical values; keep whichever lands first.
        let mut cache = self.cache.lock().expect("cache poisoned");
        Ok(cache.entry(vars).or_insert(computed).clone())
    }

    fn compute(&self, vars: usize) -> Result<Vec<SymmetricPolynomial>> {
        let k = self.truncation();
        let g = self.series.log()?;
        // prod f(x_i) = exp(sum_k g_k s_k)
        let s = power_sums(k, vars, INDEX_WEIGHT);
        let mut exponent = SymmetricPolynomial::zero(vars, INDEX_WEIGHT);
        for j in 1..=k {
            exponent = exponent.add(&s[j].scale(&g[j]));
        }
        let top = INDEX_WEIGHT * k as u32;
        let mut total = GradedPolynomial::one(exponent.poly.table());
        let mut power = total.clone();
        for j in 1..=k {
            power = power.mul_truncated(&exponent.poly, top);
            if power.is_zero() {
                break;
            }
            let inv = Rational::one() / Rational::from_integer(factorial(j as u32));
            total += &power.scale(&inv);
        }
        Ok((0..=k)
            .map(|d| SymmetricPolynomial {
                vars,
                weight: INDEX_WEIGHT,
                poly: total.graded_component(INDEX_WEIGHT * d as u32),
            })
            .collect())
    }

    /// Component `F_d` in `vars` variables, with `deg e_i = 2i`.
    pub fn component(&self, d: usize, vars: usize) -> Result<SymmetricPolynomial> {
        if d > self.truncation() {
            return Err(Error::Truncation {
                requested: d,
                truncation: self.truncation(),
            });
        }
        Ok(self.components(vars)?[d].clone())
    }
}

/// Hirzebruch component `L_{4d}` in `vars` Pontrjagin roots (`e_i` of degree `4i`).
pub fn l_class_component(d: usize, vars: usize) -> SymmetricPolynomial {
    let seq = MultiplicativeSequence::hirzebruch_l(d.max(1));
    let c = seq.component(d, vars).expect("within truncation");
    let c = c.regrade(4);
    if vars >= 1 {
        assert!(
            !c.coefficient_of_e1_power(d as u32).is_zero(),
            "pure p_4 power coefficient of L_{} vanished",
            4 * d
        );
    }
    c
}

/// Coefficient of `p_4^d` in `L_{4d}`: the series coefficient `2^{2d} B_{2d} / (2d)!`.
pub fn l_class_leading_coefficient(d: usize) -> Rational {
    let two_pow = BigInt::one() << (2 * d);
    Rational::from_integer(two_pow) * bernoulli(2 * d)
        / Rational::from_integer(factorial(2 * d as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterKind {
    /// Chern roots, `e_i` of degree `2i`.
    Chern,
    /// Pontrjagin roots (squares of Chern roots), `e_i` of degree `4i`.
    Pontrjagin,
}

/// Degree-`d` component of the Chern or Pontrjagin character.
///
/// Normalized: `ch_{2d} = s_d / d!`, `ph_{4d} = 2 s_d / (2d)!`.
/// Otherwise the bare power sum `s_d`.
pub fn character_component(
    kind: CharacterKind,
    d: usize,
    vars: usize,
    normalized: bool,
) -> SymmetricPolynomial {
    let weight = match kind {
        CharacterKind::Chern => 2,
        CharacterKind::Pontrjagin => 4,
    };
    let s = power_sum(d, vars, weight);
    if !normalized {
        return s;
    }
    let factor = match kind {
        CharacterKind::Chern => Rational::one() / Rational::from_integer(factorial(d as u32)),
        CharacterKind::Pontrjagin => {
            Rational::from_integer(BigInt::from(2))
                / Rational::from_integer(factorial(2 * d as u32))
        }
    };
    if d == 0 && kind == CharacterKind::Pontrjagin {
        // ph_0 is the rank 2m = 2 s_0, which the formula already gives.
        return s.scale(&factor);
    }
    s.scale(&factor)
}

/// Checks that every symmetric `h = sum_i a_i x_m^i F_{d-i}(x_1..x_{m-1})`
/// is a multiple of `F_d(x_1..x_m)`: the space of admissible coefficient
/// vectors `(a_0..a_d)` must be one-dimensional and spanned by `(f_0..f_d)`.
pub fn verify_powerseries_lemma(
    seq: &MultiplicativeSequence,
    d: usize,
    vars: usize,
) -> Result<bool> {
    if vars < 3 {
        return Err(Error::Precondition(
            "the power-series check needs at least 3 variables".into(),
        ));
    }
    if d > seq.truncation() {
        return Err(Error::Truncation {
            requested: d,
            truncation: seq.truncation(),
        });
    }
    if let Some(k) = (0..=d).find(|&k| seq.series().coefficient(k).is_zero()) {
        return Err(Error::Precondition(format!(
            "series coefficient f_{k} vanishes"
        )));
    }
    let roots = root_table(vars, INDEX_WEIGHT);
    let lower = seq.components(vars - 1)?;
    let embed: Vec<usize> = (0..vars - 1).collect();
    let last = GradedPolynomial::generator(&roots, vars - 1);
    // Column i: x_m^i F_{d-i}(x_1..x_{m-1}) minus its image under (x_{m-1} x_m).
    let mut swap: Vec<usize> = (0..vars).collect();
    swap.swap(vars - 2, vars - 1);
    let mut columns = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let f = lower[d - i].expand().reindex(&roots, &embed)?;
        let h = &last.pow(i as u32) * &f;
        let defect = &h - &h.reindex(&roots, &swap)?;
        columns.push(defect);
    }
    let mut monomials: Vec<Monomial> = columns
        .iter()
        .flat_map(|c| c.terms().map(|(m, _)| m.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|m| columns.iter().map(|c| c.coefficient(m)).collect())
        .collect();
    let kernel = linalg::nullspace(&rows, d + 1);
    if kernel.len() != 1 {
        return Ok(false);
    }
    let expected: Vec<Rational> = (0..=d).map(|k| seq.series().coefficient(k)).collect();
    Ok(linalg::Subspace::span(d + 1, kernel).contains(&expected))
}
