//! Named verification suites. Each check records what was claimed, whether
//! the computation confirmed it, and the data it looked at.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    factorial, linalg::Subspace, parse_polynomial, rat, GradedPolynomial, Monomial, Rational,
    RingMap, RingPresentation, TensorRing,
};
use crate::charring::{
    closed_form_kernel, kernel_intersection, l_class, pont_to_so, so_ring, su_ring,
};
use crate::error::{Error, Result};
use crate::gysin::{
    bsu2_plus_trivial, compare_ch_pushforward, holomorphic_composite, kappa_table, projectivize,
    BundleSpec, Fibration, KappaDomain,
};
use crate::loops::{loop_kappa, LoopAlgebra};
use crate::weyl::{
    binomial_matrix, compare_with_gysin, s_d_in_span_restricted, s_d_in_span_torus, TorusModel,
};

pub const SUITES: [&str; 9] = [
    "lclass",
    "prop52",
    "thm18",
    "weyl-compare",
    "lemma31",
    "transgression",
    "gysin-axioms",
    "vanishing",
    "holo",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub passed: bool,
    pub witness: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Checks whose id starts with `prefix`.
    pub fn group<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Highest coefficient index for series-valued checks.
    pub truncation: usize,
    /// Randomized cases per Gysin axiom.
    pub cases: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            truncation: 5,
            cases: 100,
            seed: 0x6d6d_6d31,
        }
    }
}

type Witness = Vec<(String, String)>;

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn new() -> Self {
        Builder { checks: Vec::new() }
    }

    /// Runs one check; an engine error fails it and becomes the witness.
    fn check(
        &mut self,
        id: impl Into<String>,
        claim: impl Into<String>,
        body: impl FnOnce() -> Result<(bool, Witness)>,
    ) {
        let (passed, witness) = match body() {
            Ok(r) => r,
            Err(e) => (false, vec![("error".into(), e.to_string())]),
        };
        self.checks.push(Check {
            id: id.into(),
            claim: claim.into(),
            passed,
            witness,
        });
    }

    fn finish(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            checks: self.checks,
        }
    }
}

fn w(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

fn list(values: &[Rational]) -> String {
    let items: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<SuiteReport> {
    let report = match name {
        "lclass" => lclass(),
        "prop52" => prop52(options),
        "thm18" => thm18(),
        "weyl-compare" => weyl_compare(),
        "lemma31" => lemma31(),
        "transgression" => transgression(),
        "gysin-axioms" => gysin_axioms(options),
        "vanishing" => vanishing(),
        "holo" => holo(options),
        other => return Err(Error::Precondition(format!("unknown suite `{other}`"))),
    };
    Ok(report.finish(name))
}

fn cp2_bundle() -> Result<Fibration> {
    projectivize(&BundleSpec::universal_su(3), "z")
}

/// `CP^{2k}` over a point.
fn even_projective_space(k: u32) -> Result<Fibration> {
    let point = RingPresentation::free(std::sync::Arc::new(crate::algebra::GeneratorTable::new(
        vec![],
    )?));
    projectivize(&BundleSpec::trivial(point, 2 * k + 1)?, "h")
}

fn lclass() -> Builder {
    let mut b = Builder::new();
    let expected = [
        (1, "1/3 * p_4"),
        (2, "-1/45 * p_4^2 + 7/45 * p_8"),
        (3, "2/945 * p_4^3 - 13/945 * p_4 * p_8 + 62/945 * p_12"),
    ];
    for (k, text) in expected {
        b.check(
            format!("lclass.L{}", 4 * k),
            format!("L_{} = {text}", 4 * k),
            || {
                let ring = crate::charring::pont_ring(6);
                let want = parse_polynomial(text, ring.table())?;
                let got = l_class(6, k);
                Ok((got == want, vec![w("computed", &got)]))
            },
        );
    }
    for k in 1..=3u32 {
        b.check(
            format!("lclass.signature.CP{}", 2 * k),
            format!("<L_{}, [CP^{}]> = 1", 4 * k, 2 * k),
            || {
                let cp = even_projective_space(k)?;
                let value = cp.kappa(&l_class(4 * k, k as usize))?;
                Ok((value == cp.base().one(), vec![w("pairing", &value)]))
            },
        );
    }
    b
}

fn prop52(options: &SuiteOptions) -> Builder {
    let mut b = Builder::new();
    let k = options.truncation;
    let mut single = true;
    let mut double = true;
    for m in 2..=5u32 {
        let cmp = compare_ch_pushforward(m, k);
        b.check(
            format!("prop52.m{m}.nonzero"),
            format!("a_p != 0 for p <= {k}"),
            || {
                let c = cmp.clone()?;
                Ok((
                    c.pipeline.iter().all(|a| !a.is_zero()),
                    vec![w("a", list(&c.pipeline))],
                ))
            },
        );
        b.check(format!("prop52.m{m}.a0"), "a_0 = (m+1)/m!", || {
            let c = cmp.clone()?;
            let want =
                Rational::from_integer((m + 1).into()) / Rational::from_integer(factorial(m));
            Ok((
                c.pipeline[0] == want,
                vec![w("a_0", &c.pipeline[0]), w("expected", want)],
            ))
        });
        b.check(
            format!("prop52.m{m}.series"),
            "pipeline = (2 cos(sqrt u) + m - 1) * sum_l (-1)^l u^l/(m+2l)!",
            || {
                let c = cmp.clone()?;
                Ok((c.pipeline == c.series, vec![w("series", list(&c.series))]))
            },
        );
        if let Ok(c) = &cmp {
            single &= c.single_factorial_matches;
            double &= c.double_factorial_matches;
        } else {
            single = false;
            double = false;
        }
    }
    b.check(
        "prop52.closed-form",
        "one printed closed form matches the pipeline for m = 2..5",
        || {
            let which = match (single, double) {
                (true, false) => "(m+2k)!",
                (false, true) => "(m+2k)!!",
                (true, true) => "both",
                (false, false) => "neither",
            };
            Ok((
                single || double,
                vec![
                    w("single factorial (m+2k)!", single),
                    w("double factorial (m+2k)!!", double),
                    w("matches", which),
                ],
            ))
        },
    );
    b
}

fn span_of(ring: &RingPresentation, basis: &[Monomial], elements: &[GradedPolynomial]) -> Subspace {
    Subspace::span(
        basis.len(),
        elements
            .iter()
            .map(|p| ring.coordinates(&ring.reduce(p), basis)),
    )
}

fn thm18() -> Builder {
    let mut b = Builder::new();
    let fib = cp2_bundle();
    for d in 1..=4u32 {
        let degree = 4 * d + 4;
        b.check(
            format!("thm18.pont.d{d}"),
            format!("ker kappa on Pont^{degree}(4) = span{{L_{degree}}}"),
            || {
                let fib = fib.clone()?;
                let table = kappa_table(&fib, degree, KappaDomain::Pont)?;
                let ell = span_of(
                    &table.domain_ring,
                    &table.domain_basis,
                    &[l_class(4, d as usize + 1)],
                );
                let kernel = table.kernel();
                let elements: Vec<String> = table
                    .kernel_elements()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                Ok((
                    kernel.same_as(&ell),
                    vec![w("dim", kernel.dim()), w("kernel", elements.join("; "))],
                ))
            },
        );
        let full = fib
            .clone()
            .and_then(|f| kappa_table(&f, degree, KappaDomain::Full));
        b.check(
            format!("thm18.full.contains.d{d}"),
            format!(
                "ker kappa on H^{degree}(BSO(4)) contains L_{degree} and (p_4 - chi)^{}",
                d + 1
            ),
            || {
                let table = full.clone()?;
                let so4 = so_ring(4);
                let pm = parse_polynomial(&format!("(p_4 - chi)^{}", d + 1), so4.table())?;
                let ell = pont_to_so(4).apply(&l_class(4, d as usize + 1));
                let kernel = table.kernel();
                let has = |p: &GradedPolynomial| {
                    kernel.contains(&so4.coordinates(&so4.reduce(p), &table.domain_basis))
                };
                Ok((
                    has(&pm) && has(&ell),
                    vec![w("L", has(&ell)), w("(p_4 - chi)^(d+1)", has(&pm))],
                ))
            },
        );
        b.check(
            format!("thm18.full.dim.d{d}"),
            format!("ker kappa on H^{degree}(BSO(4)) is 2-dimensional"),
            || {
                let table = full.clone()?;
                let dim = table.kernel().dim();
                let codomain = table.codomain_basis.len();
                Ok((
                    dim == 2,
                    vec![
                        w("dim", dim),
                        w("domain dim", table.domain_basis.len()),
                        w("rank", table.rank()),
                        w("codomain dim", codomain),
                    ],
                ))
            },
        );
    }
    b
}

fn weyl_compare() -> Builder {
    let mut b = Builder::new();
    let model = TorusModel::new();
    for d in 1..=4u32 {
        b.check(
            format!("weyl.agree.d{d}"),
            "Weyl averaging and the Gysin engine give the same kernel on H^{4d+4}(BSO(4))",
            || {
                let c = compare_with_gysin(&model, d)?;
                Ok((
                    c.agrees(),
                    vec![
                        w("weyl dim", c.weyl_dim),
                        w("gysin dim", c.gysin_dim),
                        w("same subspace", c.same_kernel),
                        w("matrices agree (factor 2)", c.matrices_agree),
                        w("image rank", c.image_rank),
                        w("Pont part dim", c.pont_dim),
                    ],
                ))
            },
        );
    }
    for d in 1..=8u32 {
        b.check(
            format!("weyl.binomial.d{d}"),
            "det C = ±1 with antidiagonal 1",
            || {
                let (m, det) = binomial_matrix(d)?;
                let anti = (0..=d as usize).all(|k| m[d as usize - k][k].is_one());
                Ok((anti, vec![w("det", det)]))
            },
        );
    }
    for d in 2..=6u32 {
        b.check(
            format!("weyl.sd-membership.d{d}"),
            "s_d not in span{s_j s_1^(d-j)}: the z-restricted and torus checks agree",
            || {
                let restricted = s_d_in_span_restricted(d)?;
                let torus = s_d_in_span_torus(&model, d)?;
                Ok((
                    restricted == torus,
                    vec![
                        w("in span (z_1+z_2+z_3 = 0)", restricted),
                        w("in span (torus model)", torus),
                    ],
                ))
            },
        );
    }
    b
}

fn lemma31() -> Builder {
    let mut b = Builder::new();
    for n in [4u32, 6, 8, 7, 9] {
        for degree in (4..=24).step_by(4) {
            let claim = if n % 2 == 0 {
                "intersection of Whitney kernels = span{ph}"
            } else {
                "intersection of Whitney kernels = span{ph, L}"
            };
            b.check(format!("lemma31.n{n}.deg{degree}"), claim, || {
                let oracle = kernel_intersection(n, degree)?;
                let closed = closed_form_kernel(n, degree)?;
                Ok((
                    oracle.same_as(&closed),
                    vec![
                        w("oracle dim", oracle.dim()),
                        w("closed form dim", closed.dim()),
                    ],
                ))
            });
        }
    }
    b
}

fn transgression() -> Builder {
    let mut b = Builder::new();
    let su3 = su_ring(3);
    let loop_algebra = LoopAlgebra::new(&su3);
    b.check(
        "trg.injective",
        "trg is injective on Q[c_4, c_6] in degrees 1..=24",
        || Ok((loop_algebra.clone()?.trg_injectivity_check(24)?, vec![])),
    );
    b.check(
        "trg.closed-formula",
        "product rule = monomial formula for all monomials of degree <= 20",
        || {
            let l = loop_algebra.clone()?;
            let mut count = 0;
            for degree in 0..=20 {
                for m in su3.monomial_basis(degree)? {
                    let x = GradedPolynomial::monomial(su3.table(), m, Rational::one());
                    if l.trg(&x)? != l.trg_closed_formula(&x)? {
                        return Ok((false, vec![w("counterexample", x)]));
                    }
                    count += 1;
                }
            }
            Ok((true, vec![w("monomials", count)]))
        },
    );
    let fib = cp2_bundle();
    for d in 1..=4u32 {
        let degree = 4 * d + 4;
        b.check(
            format!("trg.loop-kernel.d{d}"),
            format!("loop kappa kernel on Pont^{degree}(5) = span{{L_{degree}}}"),
            || {
                let table = kappa_table(&fib.clone()?, degree, KappaDomain::Pont)?;
                let lt = loop_kappa(&table, &loop_algebra.clone()?)?;
                let ell = span_of(
                    &lt.domain_ring,
                    &lt.domain_basis,
                    &[l_class(5, d as usize + 1)],
                );
                Ok((lt.kernel().same_as(&ell), vec![w("dim", lt.kernel().dim())]))
            },
        );
    }
    b
}

fn vanishing() -> Builder {
    let mut b = Builder::new();
    let fib = cp2_bundle();
    for k in 2..=6usize {
        b.check(
            format!("vanishing.L{}", 4 * k),
            format!("kappa(L_{}) = 0 on the CP^2 bundle", 4 * k),
            || {
                let value = fib.clone()?.kappa(&l_class(4, k))?;
                Ok((value.is_zero(), vec![w("kappa", value)]))
            },
        );
    }
    b.check("vanishing.total", "kappa(L) = 1 through degree 24", || {
        let f = fib.clone()?;
        let mut total = f.base().zero();
        for k in 1..=6 {
            total += &f.kappa(&l_class(4, k))?;
        }
        Ok((total == f.base().one(), vec![w("kappa(L)", total)]))
    });
    let loop_algebra = LoopAlgebra::new(&su_ring(3));
    for d in 1..=4u32 {
        let degree = 4 * d + 4;
        b.check(
            format!("vanishing.loop-L-column.d{d}"),
            format!("the L_{degree} column of the loop kappa table is zero"),
            || {
                let table = kappa_table(&fib.clone()?, degree, KappaDomain::Pont)?;
                let lt = loop_kappa(&table, &loop_algebra.clone()?)?;
                let image = lt.apply(&l_class(5, d as usize + 1));
                Ok((image.is_zero(), vec![w("image", image)]))
            },
        );
    }
    b
}

fn holo(options: &SuiteOptions) -> Builder {
    let mut b = Builder::new();
    let r = 20;
    let k = options.truncation;
    for m in [2u32, 3] {
        let composite = holomorphic_composite(r, m);
        if m == 2 {
            for l in 1..=6u32 {
                b.check(
                    format!("holo.proj.l{l}"),
                    format!("proj_!(u^{l}) = {l} x^{}", 2 * l - 1),
                    || {
                        let c = composite.clone()?;
                        let got = c.proj_pushforward_of_u_power(l);
                        let base = c.proj.base();
                        let want = GradedPolynomial::monomial(
                            base.table(),
                            Monomial::generator(base.table(), 0, 2 * l - 1),
                            Rational::from_integer(l.into()),
                        );
                        Ok((got == want, vec![w("computed", got)]))
                    },
                );
            }
        }
        b.check(
            format!("holo.composite.m{m}"),
            format!("coefficient of x^(2l-1) is l a_l != 0 for l = 1..{k}"),
            || {
                let coefficients = composite.clone()?.composite_coefficients(k);
                let a = crate::gysin::ch_pushforward(m, k)?;
                let ok = coefficients.iter().enumerate().all(|(i, c)| {
                    !c.is_zero() && *c == &a[i + 1] * Rational::from_integer((i + 1).into())
                });
                Ok((
                    ok,
                    vec![w("coefficients", list(&coefficients)), w("a", list(&a))],
                ))
            },
        );
    }
    b
}

/// A homogeneous element with small random rational coordinates.
pub fn random_element(
    ring: &RingPresentation,
    degree: u32,
    rng: &mut impl Rng,
) -> Result<GradedPolynomial> {
    let basis = ring.monomial_basis(degree)?;
    let coords: Vec<Rational> = basis
        .iter()
        .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    Ok(ring.from_coordinates(&basis, &coords))
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn even_degree(rng: &mut impl Rng, max: u32) -> u32 {
    2 * rng.gen_range(1..=max / 2)
}

/// Runs `cases` randomized instances; the first failure is the witness.
fn randomized(
    cases: usize,
    rng: &mut ChaCha8Rng,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<Option<String>>,
) -> Result<(bool, Witness)> {
    for i in 0..cases {
        if let Some(detail) = case(rng)? {
            return Ok((false, vec![w("case", i), w("counterexample", detail)]));
        }
    }
    Ok((true, vec![w("cases", cases)]))
}

fn gysin_axioms(options: &SuiteOptions) -> Builder {
    let mut b = Builder::new();
    let cases = options.cases;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);

    b.check(
        "axioms.linearity",
        "f_!(ax + by) = a f_!(x) + b f_!(y) and f_!(f^*(y) x) = y f_!(x)",
        || {
            let f = cp2_bundle()?;
            randomized(cases, &mut rng, |rng| {
                let degree = even_degree(rng, 16);
                let (x, y) = (
                    random_element(f.total(), degree, rng)?,
                    random_element(f.total(), degree, rng)?,
                );
                let (a, c) = (random_rational(rng), random_rational(rng));
                let lhs = f.gysin(&(&x.scale(&a) + &y.scale(&c)));
                let rhs = &f.gysin(&x).scale(&a) + &f.gysin(&y).scale(&c);
                if lhs != rhs {
                    return Ok(Some(format!("x = {x}, y = {y}")));
                }
                let yb = random_element(f.base(), even_degree(rng, 12), rng)?;
                let lhs = f.gysin(&f.total().mul(&f.pullback(&yb), &x));
                let rhs = f.base().mul(&yb, &f.gysin(&x));
                Ok((lhs != rhs).then(|| format!("x = {x}, base y = {yb}")))
            })
        },
    );

    b.check(
        "axioms.transitivity",
        "(proj ∘ q)_! = proj_! ∘ q_! on the holomorphic composite",
        || {
            let c = holomorphic_composite(6, 2)?;
            randomized(cases, &mut rng, |rng| {
                let x = random_element(c.composite.total(), even_degree(rng, 20), rng)?;
                let lhs = c.composite.gysin(&x);
                let rhs = c.proj.gysin(&c.q.gysin(&x));
                Ok((lhs != rhs).then(|| format!("x = {x}")))
            })
        },
    );

    b.check(
        "axioms.naturality",
        "g^* f_! = f'_! ĝ^* for random base maps BSU(3) -> Q[a, b]",
        || {
            let f = cp2_bundle()?;
            let target = crate::loops::free_gca([("a", 2), ("b", 4)])?;
            let su3 = su_ring(3);
            randomized(cases, &mut rng, |rng| {
                let g = RingMap::new(
                    su3.table(),
                    &target,
                    vec![
                        random_element(&target, 4, rng)?,
                        random_element(&target, 6, rng)?,
                    ],
                )?;
                let pulled = projectivize(
                    &BundleSpec::new(
                        target.clone(),
                        3,
                        vec![target.zero(), g.images()[0].clone(), g.images()[1].clone()],
                    )?,
                    "z",
                )?;
                let lift_images = f
                    .total()
                    .table()
                    .generators()
                    .iter()
                    .map(|gen| match su3.gen(&gen.name) {
                        Ok(c) => Ok(pulled.pullback(&g.apply(&c))),
                        Err(_) => pulled.total().gen(&gen.name),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let lift = RingMap::new(f.total().table(), pulled.total(), lift_images)?;
                let x = random_element(f.total(), even_degree(rng, 16), rng)?;
                let lhs = g.apply(&f.gysin(&x));
                let rhs = pulled.gysin(&lift.apply(&x));
                Ok((lhs != rhs).then(|| {
                    format!(
                        "x = {x}, c_4 -> {}, c_6 -> {}",
                        g.images()[0],
                        g.images()[1]
                    )
                }))
            })
        },
    );

    b.check(
        "axioms.gysin-pullback",
        "q_! q^* = 0 for positive-dimensional fibres",
        || {
            let fibrations = [
                cp2_bundle()?,
                bsu2_plus_trivial(3)?,
                holomorphic_composite(6, 2)?.composite,
            ];
            randomized(cases, &mut rng, |rng| {
                let f = &fibrations[rng.gen_range(0..fibrations.len())];
                let y = random_element(f.base(), even_degree(rng, 16), rng)?;
                let image = f.gysin(&f.pullback(&y));
                Ok((!image.is_zero()).then(|| format!("y = {y}")))
            })
        },
    );

    b.check(
        "axioms.product",
        "(f_1 × f_2)_!(x_1 × x_2) = (-1)^(n_2 |x_1|) f_1!(x_1) × f_2!(x_2)",
        || {
            let f1 = cp2_bundle()?;
            let f2 = bsu2_plus_trivial(2)?;
            let product = f1.product(&f2)?;
            let totals = TensorRing::new(
                f1.total(),
                f2.total(),
                |s| s.to_string(),
                |s| format!("{s}'"),
            )?;
            let bases = crate::gysin::product_base(&f1, &f2)?;
            randomized(cases, &mut rng, |rng| {
                let x1 = random_element(f1.total(), even_degree(rng, 12), rng)?;
                let x2 = random_element(f2.total(), even_degree(rng, 12), rng)?;
                let lhs = product.gysin(&totals.product(&x1, &x2)?);
                let mut rhs = bases.product(&f1.gysin(&x1), &f2.gysin(&x2))?;
                if (f2.fibre_dimension() * x1.homogeneous_degree().unwrap_or(0)) % 2 == 1 {
                    rhs = -rhs;
                }
                Ok((lhs != rhs).then(|| format!("x_1 = {x1}, x_2 = {x2}")))
            })
        },
    );
    b
}
