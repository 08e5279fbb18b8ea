use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::generators::{Generator, GeneratorTable, Monomial};
use super::poly::{same_table, GradedPolynomial};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `generator^power -> replacement`, with every replacement monomial
/// strictly below the head in the monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    generator: usize,
    power: u32,
    replacement: GradedPolynomial,
}

impl RewriteRule {
    pub fn new(generator: usize, power: u32, replacement: GradedPolynomial) -> Result<Self> {
        let table = replacement.table().clone();
        if generator >= table.len() {
            return Err(Error::InvalidRule(format!(
                "no generator with index {generator}"
            )));
        }
        let name = &table.get(generator).name;
        if table.is_odd(generator) {
            return Err(Error::InvalidRule(format!(
                "odd generator `{name}` needs no rule"
            )));
        }
        if power == 0 {
            return Err(Error::InvalidRule(format!("zero power for `{name}`")));
        }
        let head = Monomial::generator(&table, generator, power);
        for (m, _) in replacement.terms() {
            if m.degree() != head.degree() {
                return Err(Error::InvalidRule(format!(
                    "replacement for `{name}^{power}` is not homogeneous of degree {}",
                    head.degree()
                )));
            }
            if *m >= head {
                return Err(Error::InvalidRule(format!(
                    "replacement term `{}` is not below `{name}^{power}`",
                    m.display(&table)
                )));
            }
        }
        Ok(RewriteRule {
            generator,
            power,
            replacement,
        })
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn replacement(&self) -> &GradedPolynomial {
        &self.replacement
    }

    pub fn head(&self) -> Monomial {
        Monomial::generator(self.replacement.table(), self.generator, self.power)
    }
}

/// Graded-commutative algebra given by generators and a triangular
/// rewrite system: at most one rule per generator, each rule a pure power.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    table: Arc<GeneratorTable>,
    rules: Vec<RewriteRule>,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.rules == other.rules
    }
}

impl RingPresentation {
    pub fn new(table: Arc<GeneratorTable>, rules: Vec<RewriteRule>) -> Result<Self> {
        let mut seen = vec![false; table.len()];
        for rule in &rules {
            if !same_table(rule.replacement.table(), &table) {
                return Err(Error::TableMismatch);
            }
            if std::mem::replace(&mut seen[rule.generator], true) {
                return Err(Error::InvalidRule(format!(
                    "two rules for `{}`",
                    table.get(rule.generator).name
                )));
            }
        }
        Ok(RingPresentation { table, rules })
    }

    pub fn free(table: Arc<GeneratorTable>) -> Self {
        RingPresentation {
            table,
            rules: Vec::new(),
        }
    }

    /// Builds the rules from relations `r = 0`; each relation's leading
    /// monomial must be a pure power of one generator.
    pub fn from_relations(
        table: Arc<GeneratorTable>,
        relations: &[GradedPolynomial],
    ) -> Result<Self> {
        let mut rules = Vec::with_capacity(relations.len());
        for relation in relations {
            if !same_table(relation.table(), &table) {
                return Err(Error::TableMismatch);
            }
            let (head, lc) = relation
                .leading_term()
                .ok_or_else(|| Error::InvalidRule("zero relation".into()))?;
            let support: Vec<usize> = (0..table.len()).filter(|&i| head.exponent(i) > 0).collect();
            if support.len() != 1 {
                return Err(Error::InvalidRule(format!(
                    "leading monomial `{}` of `{relation}` is not a pure power",
                    head.display(&table)
                )));
            }
            let generator = support[0];
            let power = head.exponent(generator);
            let inverse = Rational::one() / lc;
            let mut replacement = relation.scale(&-inverse);
            replacement.add_term(head.clone(), Rational::one());
            rules.push(RewriteRule::new(generator, power, replacement)?);
        }
        Self::new(table, rules)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_free(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn zero(&self) -> GradedPolynomial {
        GradedPolynomial::zero(&self.table)
    }

    pub fn one(&self) -> GradedPolynomial {
        GradedPolynomial::one(&self.table)
    }

    pub fn constant(&self, value: Rational) -> GradedPolynomial {
        GradedPolynomial::constant(&self.table, value)
    }

    pub fn gen(&self, name: &str) -> Result<GradedPolynomial> {
        GradedPolynomial::named(&self.table, name)
    }

    pub fn rule_for(&self, generator: usize) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.generator == generator)
    }

    fn applicable_rule(&self, m: &Monomial) -> Option<&RewriteRule> {
        self.rules
            .iter()
            .find(|r| m.exponent(r.generator) >= r.power)
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.applicable_rule(m).is_none()
    }

    /// Unique normal form: no monomial is divisible by a rule head.
    ///
    /// Terms are processed from the largest monomial down; every rewrite
    /// only produces smaller monomials, so each monomial is visited once.
    pub fn reduce(&self, p: &GradedPolynomial) -> GradedPolynomial {
        assert!(
            same_table(p.table(), &self.table),
            "generator tables differ"
        );
        if self.rules.is_empty() {
            return p.clone();
        }
        let mut work: BTreeMap<Monomial, Rational> = p.clone().into_terms();
        let mut done = GradedPolynomial::zero(&self.table);
        while let Some((m, c)) = work.pop_last() {
            match self.applicable_rule(&m) {
                None => done.add_term(m, c),
                Some(rule) => {
                    let cofactor = m.checked_div(&rule.head()).expect("head divides monomial");
                    for (rm, rc) in rule.replacement.terms() {
                        if let Some((product, negate)) = cofactor.mul(rm, &self.table) {
                            let coefficient = &c * rc;
                            let coefficient = if negate { -coefficient } else { coefficient };
                            let slot = work.entry(product).or_insert_with(Rational::zero);
                            *slot += coefficient;
                        }
                    }
                }
            }
            // Drop cancelled entries lazily.
            while let Some(entry) = work.last_entry() {
                if entry.get().is_zero() {
                    entry.remove();
                } else {
                    break;
                }
            }
        }
        done
    }

    pub fn mul(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &GradedPolynomial, exponent: u32) -> GradedPolynomial {
        let mut result = self.one();
        for _ in 0..exponent {
            result = self.mul(&result, a);
        }
        result
    }

    /// Normal-form monomials of the given degree, in descending order.
    pub fn monomial_basis(&self, degree: u32) -> Result<Vec<Monomial>> {
        if let Some(g) = self.table.generators().iter().find(|g| g.degree == 0) {
            return Err(Error::Precondition(format!(
                "generator `{}` has degree 0; graded pieces are infinite",
                g.name
            )));
        }
        let bounds: Vec<Option<u32>> = (0..self.table.len())
            .map(|i| {
                if self.table.is_odd(i) {
                    Some(1)
                } else {
                    self.rule_for(i).map(|r| r.power - 1)
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.table.len()];
        enumerate(&self.table, &bounds, 0, degree, &mut exps, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    /// Coordinates of the degree-`degree` part of `reduce(p)` in
    /// [`monomial_basis`](Self::monomial_basis).
    pub fn coordinates(&self, p: &GradedPolynomial, basis: &[Monomial]) -> Vec<Rational> {
        let reduced = self.reduce(p);
        basis.iter().map(|m| reduced.coefficient(m)).collect()
    }

    pub fn from_coordinates(&self, basis: &[Monomial], coords: &[Rational]) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            &self.table,
            basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    pub fn dimension(&self, degree: u32) -> Result<usize> {
        Ok(self.monomial_basis(degree)?.len())
    }

    /// Adds generators in front of the existing ones (so they become the
    /// heaviest) and carries the existing rules over.
    pub fn with_leading_generators(
        &self,
        generators: Vec<Generator>,
    ) -> Result<(Self, Vec<usize>)> {
        let shift = generators.len();
        let mut all = generators;
        all.extend(self.table.generators().iter().cloned());
        let table = Arc::new(GeneratorTable::new(all)?);
        let map: Vec<usize> = (0..self.table.len()).map(|i| i + shift).collect();
        let mut rules = Vec::with_capacity(self.rules.len());
        for rule in &self.rules {
            rules.push(RewriteRule::new(
                rule.generator + shift,
                rule.power,
                rule.replacement.reindex(&table, &map)?,
            )?);
        }
        Ok((RingPresentation::new(table, rules)?, map))
    }

    /// Moves an element of `self` into a ring whose generators extend ours
    /// according to `map`.
    pub fn embed(
        &self,
        p: &GradedPolynomial,
        target: &RingPresentation,
        map: &[usize],
    ) -> Result<GradedPolynomial> {
        Ok(target.reduce(&p.reindex(&target.table, map)?))
    }
}

fn enumerate(
    table: &GeneratorTable,
    bounds: &[Option<u32>],
    i: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if i == table.len() {
        if remaining == 0 {
            out.push(Monomial::with_exponents(table, exps.clone()));
        }
        return;
    }
    let degree = table.degree(i);
    let mut max = remaining / degree;
    if let Some(b) = bounds[i] {
        max = max.min(b);
    }
    for e in 0..=max {
        exps[i] = e;
        enumerate(table, bounds, i + 1, remaining - e * degree, exps, out);
    }
    exps[i] = 0;
}

/// Tensor product `A ⊗ B` on the disjoint union of the generator tables.
/// Generators of `A` come first; `B`'s are renamed by `rename`.
#[derive(Debug, Clone)]
pub struct TensorRing {
    pub ring: RingPresentation,
    pub left_len: usize,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
}

impl TensorRing {
    pub fn new(
        left: &RingPresentation,
        right: &RingPresentation,
        rename_left: impl Fn(&str) -> String,
        rename_right: impl Fn(&str) -> String,
    ) -> Result<Self> {
        let mut gens: Vec<Generator> = left
            .table
            .generators()
            .iter()
            .map(|g| Generator::new(rename_left(&g.name), g.degree))
            .collect();
        gens.extend(
            right
                .table
                .generators()
                .iter()
                .map(|g| Generator::new(rename_right(&g.name), g.degree)),
        );
        let table = Arc::new(GeneratorTable::new(gens)?);
        let left_map: Vec<usize> = (0..left.table.len()).collect();
        let right_map: Vec<usize> = (0..right.table.len())
            .map(|i| i + left.table.len())
            .collect();
        let mut rules = Vec::new();
        for (ring, map) in [(left, &left_map), (right, &right_map)] {
            for rule in &ring.rules {
                rules.push(RewriteRule::new(
                    map[rule.generator],
                    rule.power,
                    rule.replacement.reindex(&table, map)?,
                )?);
            }
        }
        Ok(TensorRing {
            ring: RingPresentation::new(table, rules)?,
            left_len: left.table.len(),
            left_map,
            right_map,
        })
    }

    pub fn left(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        p.reindex(self.ring.table(), &self.left_map)
    }

    pub fn right(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        p.reindex(self.ring.table(), &self.right_map)
    }

    /// `a ⊗ b`.
    pub fn product(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> Result<GradedPolynomial> {
        Ok(self.ring.mul(&self.left(a)?, &self.right(b)?))
    }

    /// Degrees carried by the left and right factors of a monomial.
    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        let table = self.ring.table();
        (
            m.partial_degree(table, 0..self.left_len),
            m.partial_degree(table, self.left_len..table.len()),
        )
    }

    /// Splits a monomial into its left and right factors (as monomials of
    /// the original rings).
    pub fn split(
        &self,
        m: &Monomial,
        left: &GeneratorTable,
        right: &GeneratorTable,
    ) -> (Monomial, Monomial) {
        let e = m.exponents();
        (
            Monomial::with_exponents(left, e[..self.left_len].to_vec()),
            Monomial::with_exponents(right, e[self.left_len..].to_vec()),
        )
    }
}

/// Graded ring homomorphism determined by the images of the generators,
/// followed by reduction in the target.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: Arc<GeneratorTable>,
    target: RingPresentation,
    images: Vec<GradedPolynomial>,
}

impl RingMap {
    pub fn new(
        source: &Arc<GeneratorTable>,
        target: &RingPresentation,
        images: Vec<GradedPolynomial>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Precondition(format!(
                "{} images given for {} generators",
                images.len(),
                source.len()
            )));
        }
        let mut reduced = Vec::with_capacity(images.len());
        for (g, image) in source.generators().iter().zip(images) {
            if !same_table(image.table(), target.table()) {
                return Err(Error::TableMismatch);
            }
            let image = target.reduce(&image);
            if !image.is_zero() {
                let found = image
                    .homogeneous_degree()
                    .ok_or_else(|| Error::NotHomogeneous(g.name.clone()))?;
                if found != g.degree {
                    return Err(Error::DegreeMismatch {
                        name: g.name.clone(),
                        expected: g.degree,
                        found,
                    });
                }
            }
            reduced.push(image);
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images: reduced,
        })
    }

    /// Map given by a name → image table; unnamed generators go to zero.
    pub fn from_named(
        source: &Arc<GeneratorTable>,
        target: &RingPresentation,
        images: &[(&str, GradedPolynomial)],
    ) -> Result<Self> {
        let mut all = vec![target.zero(); source.len()];
        for (name, image) in images {
            all[source.lookup(name)?] = image.clone();
        }
        Self::new(source, target, all)
    }

    pub fn target(&self) -> &RingPresentation {
        &self.target
    }

    pub fn source(&self) -> &Arc<GeneratorTable> {
        &self.source
    }

    pub fn images(&self) -> &[GradedPolynomial] {
        &self.images
    }

    pub fn apply(&self, p: &GradedPolynomial) -> GradedPolynomial {
        assert!(
            same_table(p.table(), &self.source),
            "generator tables differ"
        );
        let mut powers: HashMap<(usize, u32), GradedPolynomial> = HashMap::new();
        let mut out = self.target.zero();
        for (m, c) in p.terms() {
            let mut term = self.target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = powers
                    .entry((i, e))
                    .or_insert_with(|| self.target.pow(&self.images[i], e))
                    .clone();
                term = self.target.mul(&term, &power);
                if term.is_zero() {
                    break;
                }
            }
            out += &term;
        }
        out
    }

    pub fn compose(&self, after: &RingMap) -> Result<RingMap> {
        let images = self.images.iter().map(|p| after.apply(p)).collect();
        RingMap::new(&self.source, &after.target, images)
    }
}

/// Convenience wrapper: apply the homomorphism given by `images`.
pub fn substitute(
    p: &GradedPolynomial,
    images: Vec<GradedPolynomial>,
    target: &RingPresentation,
) -> Result<GradedPolynomial> {
    Ok(RingMap::new(p.table(), target, images)?.apply(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn bso4() -> RingPresentation {
        let table =
            Arc::new(GeneratorTable::from_pairs([("chi", 4), ("p_4", 4), ("p_8", 8)]).unwrap());
        let chi = GradedPolynomial::named(&table, "chi").unwrap();
        let p8 = GradedPolynomial::named(&table, "p_8").unwrap();
        RingPresentation::from_relations(table, &[&(&chi * &chi) - &p8]).unwrap()
    }

    #[test]
    fn chi_squared_reduces_to_top_pontrjagin() {
        let ring = bso4();
        let chi = ring.gen("chi").unwrap();
        assert_eq!(ring.reduce(&(&chi * &chi)), ring.gen("p_8").unwrap());
    }

    #[test]
    fn basis_dimensions_of_bso4() {
        let ring = bso4();
        // degree 4d+4 has d+2 elements
        for d in 0..5 {
            assert_eq!(ring.dimension(4 * d + 4).unwrap(), d as usize + 2);
        }
    }

    #[test]
    fn bad_rule_rejected() {
        let table = Arc::new(GeneratorTable::from_pairs([("z", 2), ("c", 4)]).unwrap());
        let c = GradedPolynomial::named(&table, "c").unwrap();
        let z = GradedPolynomial::named(&table, "z").unwrap();
        // c -> z^2 would rewrite a smaller monomial into a larger one.
        assert!(RewriteRule::new(1, 1, &z * &z).is_err());
        assert!(RewriteRule::new(0, 2, c.clone()).is_ok());
        assert!(RewriteRule::new(0, 2, z.clone()).is_err());
    }

    #[test]
    fn substitution_degree_checked() {
        let ring = bso4();
        let target =
            RingPresentation::free(Arc::new(GeneratorTable::from_pairs([("u", 4)]).unwrap()));
        let u = target.gen("u").unwrap();
        let err =
            RingMap::new(ring.table(), &target, vec![u.clone(), u.clone(), u.clone()]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
        let ok = RingMap::new(ring.table(), &target, vec![u.clone(), u.clone(), &u * &u]).unwrap();
        let chi = ring.gen("chi").unwrap();
        assert_eq!(ok.apply(&(&chi * &ring.gen("p_4").unwrap())), &u * &u);
    }

    #[test]
    fn identity_substitution() {
        let ring = bso4();
        let id: Vec<_> = (0..3)
            .map(|i| GradedPolynomial::generator(ring.table(), i))
            .collect();
        let p = &ring.gen("p_4").unwrap().pow(3) + &ring.constant(int(5));
        assert_eq!(substitute(&p, id, &ring).unwrap(), p);
    }
}
