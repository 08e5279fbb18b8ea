use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::generators::{GeneratorTable, Monomial};
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Polynomial with exact rational coefficients in graded-commutative
/// generators. Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct GradedPolynomial {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for GradedPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for GradedPolynomial {}

impl GradedPolynomial {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        GradedPolynomial {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<GeneratorTable>, value: Rational) -> Self {
        Self::monomial(table, Monomial::one(table), value)
    }

    pub fn monomial(
        table: &Arc<GeneratorTable>,
        monomial: Monomial,
        coefficient: Rational,
    ) -> Self {
        let mut p = Self::zero(table);
        p.add_term(monomial, coefficient);
        p
    }

    pub fn generator(table: &Arc<GeneratorTable>, i: usize) -> Self {
        Self::monomial(table, Monomial::generator(table, i, 1), Rational::one())
    }

    pub fn named(table: &Arc<GeneratorTable>, name: &str) -> Result<Self> {
        Ok(Self::generator(table, table.lookup(name)?))
    }

    pub fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(&self.table))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, monomial: Monomial, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `Some(d)` if every term has degree `d` (the zero polynomial reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn graded_component(&self, degree: u32) -> Self {
        GradedPolynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of degree at most `degree`.
    pub fn truncate(&self, degree: u32) -> Self {
        self.filter_terms(|m| m.degree() <= degree)
    }

    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        GradedPolynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.table);
        }
        GradedPolynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let mut out = Self::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negate)) = ma.mul(mb, &self.table) {
                    let c = ca * cb;
                    out.add_term(m, if negate { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Product truncated to total degree at most `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        assert!(
            same_table(&self.table, &other.table),
            "generator tables differ"
        );
        let mut out = Self::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > max_degree {
                    continue;
                }
                if let Some((m, negate)) = ma.mul(mb, &self.table) {
                    let c = ca * cb;
                    out.add_term(m, if negate { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(&self.table);
        for _ in 0..exponent {
            result = &result * self;
        }
        result
    }

    /// Moves the polynomial into `target`, sending generator `i` to
    /// generator `map[i]`. Koszul signs from reordering odd generators are
    /// applied.
    pub fn reindex(&self, target: &Arc<GeneratorTable>, map: &[usize]) -> Result<Self> {
        if map.len() != self.table.len() {
            return Err(Error::TableMismatch);
        }
        for (i, &j) in map.iter().enumerate() {
            if self.table.degree(i) != target.degree(j) {
                return Err(Error::DegreeMismatch {
                    name: self.table.get(i).name.clone(),
                    expected: target.degree(j),
                    found: self.table.degree(i),
                });
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exponents = vec![0; target.len()];
            let mut odd_targets = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exponents[map[i]] += e;
                    if self.table.is_odd(i) {
                        odd_targets.push(map[i]);
                    }
                }
            }
            let mut inversions = 0;
            for a in 0..odd_targets.len() {
                for b in a + 1..odd_targets.len() {
                    if odd_targets[a] > odd_targets[b] {
                        inversions += 1;
                    }
                }
            }
            let monomial = Monomial::from_exponents(target, exponents)?;
            out.add_term(
                monomial,
                if inversions % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                },
            );
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GradedPolynomial {
    /// `coef * gen^e * gen^e` terms in descending monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{}", m.display(&self.table))?;
            } else {
                write!(
                    f,
                    "{} * {}",
                    format_rational(&magnitude),
                    m.display(&self.table)
                )?;
            }
        }
        Ok(())
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: Self) -> GradedPolynomial {
        self.checked_add(rhs).expect("generator tables differ")
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: Self) -> GradedPolynomial {
        self.checked_add(&-rhs).expect("generator tables differ")
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: Self) -> GradedPolynomial {
        self.checked_mul(rhs).expect("generator tables differ")
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: Self) -> GradedPolynomial {
        &self + &rhs
    }
}

impl Sub for GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: Self) -> GradedPolynomial {
        &self - &rhs
    }
}

impl Mul for GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: Self) -> GradedPolynomial {
        &self * &rhs
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        -&self
    }
}

impl AddAssign<&GradedPolynomial> for GradedPolynomial {
    fn add_assign(&mut self, rhs: &GradedPolynomial) {
        assert!(
            same_table(&self.table, &rhs.table),
            "generator tables differ"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&GradedPolynomial> for GradedPolynomial {
    fn sub_assign(&mut self, rhs: &GradedPolynomial) {
        assert!(
            same_table(&self.table, &rhs.table),
            "generator tables differ"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn bso4() -> Arc<GeneratorTable> {
        Arc::new(GeneratorTable::from_pairs([("chi", 4), ("p_4", 4), ("p_8", 8)]).unwrap())
    }

    #[test]
    fn square_of_p4() {
        let t = bso4();
        let p4 = GradedPolynomial::named(&t, "p_4").unwrap();
        assert_eq!((&p4 * &p4).to_string(), "p_4^2");
        let one_plus = &GradedPolynomial::one(&t) + &p4;
        assert_eq!((&one_plus * &one_plus).to_string(), "p_4^2 + 2 * p_4 + 1");
    }

    #[test]
    fn odd_generators_anticommute() {
        let t = Arc::new(GeneratorTable::from_pairs([("a", 3), ("b", 5)]).unwrap());
        let a = GradedPolynomial::named(&t, "a").unwrap();
        let b = GradedPolynomial::named(&t, "b").unwrap();
        assert_eq!(&a * &b, -(&b * &a));
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn mismatched_tables_error() {
        let t1 = bso4();
        let t2 = Arc::new(GeneratorTable::from_pairs([("u", 4)]).unwrap());
        let x = GradedPolynomial::one(&t1);
        let y = GradedPolynomial::one(&t2);
        assert_eq!(x.checked_mul(&y).unwrap_err(), Error::TableMismatch);
    }

    #[test]
    fn display_is_deterministic() {
        let t = bso4();
        let p4 = GradedPolynomial::named(&t, "p_4").unwrap();
        let p8 = GradedPolynomial::named(&t, "p_8").unwrap();
        let l8 = &p8.scale(&rat(7, 45)) - &(&p4 * &p4).scale(&rat(1, 45));
        assert_eq!(l8.to_string(), "-1/45 * p_4^2 + 7/45 * p_8");
        assert_eq!(GradedPolynomial::constant(&t, rat(3, 2)).to_string(), "3/2");
        assert_eq!(GradedPolynomial::zero(&t).to_string(), "0");
        assert_eq!((-&p4).to_string(), "-p_4");
        assert_eq!(l8.homogeneous_degree(), Some(8));
        assert_eq!(l8.graded_component(8), l8);
        assert!(l8.graded_component(4).is_zero());
        assert_eq!(l8.coefficient(&Monomial::generator(&t, 2, 1)), rat(7, 45));
        assert_eq!(GradedPolynomial::one(&t).constant_term(), int(1));
    }
}
