use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Ordered list of named, graded generators.
///
/// The order is part of the monomial order: earlier generators are heavier,
/// and products of odd generators are stored in table order.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for GeneratorTable {}

impl GeneratorTable {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::Precondition("empty generator name".into()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(GeneratorTable { generators, index })
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(name, degree)| Generator::new(name, degree))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.position(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.generators[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.generators[i].is_odd()
    }
}

/// Exponent vector together with its total degree.
///
/// The derived order compares total degree first and then exponents
/// lexicographically in table order, which is the degree-lexicographic
/// order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(table: &GeneratorTable) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; table.len()],
        }
    }

    pub fn from_exponents(table: &GeneratorTable, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != table.len() {
            return Err(Error::TableMismatch);
        }
        let mut degree = 0;
        for (i, &e) in exponents.iter().enumerate() {
            if table.is_odd(i) && e > 1 {
                return Err(Error::Precondition(format!(
                    "odd generator `{}` raised to power {e}",
                    table.get(i).name
                )));
            }
            degree += e * table.degree(i);
        }
        Ok(Monomial { degree, exponents })
    }

    pub fn generator(table: &GeneratorTable, i: usize, power: u32) -> Self {
        let mut exponents = vec![0; table.len()];
        exponents[i] = power;
        Monomial {
            degree: power * table.degree(i),
            exponents,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents[i]
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Degree carried by the generators whose index lies in `range`.
    pub fn partial_degree(&self, table: &GeneratorTable, range: std::ops::Range<usize>) -> u32 {
        range.map(|i| self.exponents[i] * table.degree(i)).sum()
    }

    /// Graded-commutative product. Returns `None` when an odd generator
    /// would appear twice, and otherwise the product together with the
    /// Koszul sign (`true` means negate).
    pub fn mul(&self, other: &Monomial, table: &GeneratorTable) -> Option<(Monomial, bool)> {
        let mut odd_in_self_after = 0u32;
        // Count pairs (i in self, j in other) of odd generators with i > j.
        let n = self.exponents.len();
        let mut odd_suffix = vec![0u32; n + 1];
        for i in (0..n).rev() {
            let here = u32::from(table.is_odd(i) && self.exponents[i] == 1);
            odd_suffix[i] = odd_suffix[i + 1] + here;
        }
        let mut exponents = Vec::with_capacity(n);
        for i in 0..n {
            let e = self.exponents[i] + other.exponents[i];
            if table.is_odd(i) {
                if e > 1 {
                    return None;
                }
                if other.exponents[i] == 1 {
                    odd_in_self_after += odd_suffix[i + 1];
                }
            }
            exponents.push(e);
        }
        let negate = odd_in_self_after % 2 == 1;
        Some((
            Monomial {
                degree: self.degree + other.degree,
                exponents,
            },
            negate,
        ))
    }

    /// `self / other` if `other` divides `self` as exponent vectors.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            exponents.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exponents,
        })
    }

    pub(crate) fn with_exponents(table: &GeneratorTable, exponents: Vec<u32>) -> Monomial {
        let degree = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| e * table.degree(i))
            .sum();
        Monomial { degree, exponents }
    }

    pub fn display<'a>(&'a self, table: &'a GeneratorTable) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            table,
        }
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    table: &'a GeneratorTable,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.monomial.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            f.write_str(&self.table.get(i).name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> GeneratorTable {
        GeneratorTable::from_pairs([("a", 3), ("b", 3), ("p", 4), ("c", 1)]).unwrap()
    }

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(
            GeneratorTable::from_pairs([("x", 2), ("x", 4)]).unwrap_err(),
            Error::DuplicateGenerator("x".into())
        );
    }

    #[test]
    fn koszul_sign_on_swap() {
        let t = table();
        let a = Monomial::generator(&t, 0, 1);
        let b = Monomial::generator(&t, 1, 1);
        let (ab, s1) = a.mul(&b, &t).unwrap();
        let (ba, s2) = b.mul(&a, &t).unwrap();
        assert_eq!(ab, ba);
        assert!(!s1);
        assert!(s2);
        assert!(a.mul(&a, &t).is_none());
    }

    #[test]
    fn even_generators_commute_without_sign() {
        let t = table();
        let p = Monomial::generator(&t, 2, 2);
        let a = Monomial::generator(&t, 0, 1);
        assert!(!p.mul(&a, &t).unwrap().1);
        assert!(!a.mul(&p, &t).unwrap().1);
    }

    #[test]
    fn three_odd_generators() {
        let t = table();
        let a = Monomial::generator(&t, 0, 1);
        let b = Monomial::generator(&t, 1, 1);
        let c = Monomial::generator(&t, 3, 1);
        // c * (a b) = a b c moved past two odd factors: sign +.
        let (ab, _) = a.mul(&b, &t).unwrap();
        let (_, sign) = c.mul(&ab, &t).unwrap();
        assert!(!sign);
        // b * (a c) = - a b c
        let (ac, _) = a.mul(&c, &t).unwrap();
        let (_, sign) = b.mul(&ac, &t).unwrap();
        assert!(sign);
    }

    #[test]
    fn order_is_degree_then_lex() {
        let t = GeneratorTable::from_pairs([("z", 2), ("c", 4)]).unwrap();
        let z2 = Monomial::generator(&t, 0, 2);
        let c = Monomial::generator(&t, 1, 1);
        let z = Monomial::generator(&t, 0, 1);
        assert!(z2 > c);
        assert!(c > z);
    }
}
