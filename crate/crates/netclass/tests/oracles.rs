//! Brute-force oracles for the curve machinery, independent of the fast paths.

use netclass::cubic::{aronhold, classify_cubic, CubicType};
use netclass::forms::{lift_form, linear_factors, singular_points, BinaryForm, TernaryForm};
use netclass::gf::{ExtField, Field, FieldCtx, Fp, Fq, PrimeField};
use netclass::linalg::Mat3;
use netclass::net::random_gl3_with;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cubic(f: &PrimeField, rng: &mut impl Rng) -> TernaryForm<Fp> {
    let c: Vec<i64> = (0..10).map(|_| rng.gen_range(0..f.p() as i64)).collect();
    TernaryForm::from_i64(f, 3, &c)
}

fn random_linear(f: &PrimeField, rng: &mut impl Rng) -> TernaryForm<Fp> {
    loop {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..f.p() as i64)).collect();
        if c.iter().any(|&x| x != 0) {
            return TernaryForm::from_i64(f, 1, &c);
        }
    }
}

fn random_conic(f: &PrimeField, rng: &mut impl Rng) -> TernaryForm<Fp> {
    let c: Vec<i64> = (0..6).map(|_| rng.gen_range(0..f.p() as i64)).collect();
    TernaryForm::from_i64(f, 2, &c)
}

/// Points of P²(field), one representative each.
fn plane_points(field: &ExtField) -> Vec<[Fq; 3]> {
    let elems = field.elements();
    let (zero, one) = (field.zero(), field.one());
    let mut pts = Vec::new();
    for &a in &elems {
        for &b in &elems {
            pts.push([one, a, b]);
        }
    }
    for &b in &elems {
        pts.push([zero, one, b]);
    }
    pts.push([zero, zero, one]);
    pts
}

/// Two points spanning the line `a·x + b·y + c·z = 0`.
fn line_span(field: &ExtField, [a, b, c]: [Fq; 3]) -> ([Fq; 3], [Fq; 3]) {
    let zero = field.zero();
    if !field.is_zero(a) {
        ([field.neg(b), a, zero], [field.neg(c), zero, a])
    } else {
        ([field.one(), zero, zero], [zero, field.neg(c), b])
    }
}

fn dividing_lines(ctx: &FieldCtx, g: &TernaryForm<Fp>, k: u32) -> usize {
    let field = ctx.level(k).unwrap();
    let g = lift_form(&field, g);
    plane_points(&field)
        .into_iter()
        .filter(|&l| {
            let (p, q) = line_span(&field, l);
            g.restrict(&field, p, q).is_zero(&field)
        })
        .count()
}

fn singular_somewhere(ctx: &FieldCtx, g: &TernaryForm<Fp>, levels: &[u32]) -> bool {
    let f = ctx.prime_field();
    levels.iter().any(|&k| {
        let field = ctx.level(k).unwrap();
        let forms: Vec<TernaryForm<Fq>> = g
            .partials(&f)
            .iter()
            .map(|d| lift_form(&field, d))
            .collect();
        let g = lift_form(&field, g);
        plane_points(&field).into_iter().any(|pt| {
            field.is_zero(g.eval(&field, pt))
                && forms.iter().all(|d| field.is_zero(d.eval(&field, pt)))
        })
    })
}

/// Cubics with many rational and non-rational linear components, in random
/// coordinates.
fn structured_cubics(f: &PrimeField, rng: &mut impl Rng, n: usize) -> Vec<TernaryForm<Fp>> {
    (0..n)
        .map(|i| {
            let g = match i % 5 {
                0 => random_linear(f, rng)
                    .mul(f, &random_linear(f, rng))
                    .mul(f, &random_linear(f, rng)),
                1 => random_linear(f, rng).mul(f, &random_conic(f, rng)),
                2 => random_linear(f, rng)
                    .pow(f, 2)
                    .mul(f, &random_linear(f, rng)),
                // an irreducible binary cubic gives three conjugate concurrent lines
                3 => {
                    let c: Vec<i64> = (0..4).map(|_| rng.gen_range(0..f.p() as i64)).collect();
                    let b = BinaryForm::from_i64(f, &c);
                    let mut coeffs = vec![Fp(0); 10];
                    for (j, &v) in b.coeffs().iter().enumerate() {
                        // x^(3-j) y^j occupies slot j among the z-free monomials
                        coeffs[[0, 1, 3, 6][j]] = v;
                    }
                    TernaryForm::new(3, coeffs)
                }
                _ => random_cubic(f, rng),
            };
            g.substitute(f, &random_gl3_with(f, rng))
        })
        .filter(|g| !g.is_zero(f))
        .collect()
}

#[test]
fn linear_factors_match_dual_point_enumeration() {
    let ctx = FieldCtx::standard(5).unwrap();
    let f = ctx.prime_field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in structured_cubics(&f, &mut rng, 60) {
        let lf = linear_factors(&ctx, &g).unwrap();
        let n1 = dividing_lines(&ctx, &g, 1);
        let n2 = dividing_lines(&ctx, &g, 2);
        let n3 = dividing_lines(&ctx, &g, 3);
        let distinct = n1 + (n2 - n1) + (n3 - n1);
        assert_eq!(lf.lines.len(), distinct, "distinct lines of {g:?}");
        assert_eq!(lf.line_degree() as usize + lf.residual.degree(), 3);
        let rational = lf.lines.iter().filter(|(l, _)| l.is_rational()).count();
        assert_eq!(rational, n1, "rational lines of {g:?}");
    }
}

#[test]
fn discriminant_matches_singular_point_search() {
    for p in [5, 7] {
        let ctx = FieldCtx::standard(p).unwrap();
        let f = ctx.prime_field();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut seen_both = [false; 2];
        for g in structured_cubics(&f, &mut rng, 80) {
            let singular = singular_somewhere(&ctx, &g, &[1, 2, 3]);
            let inv = aronhold(&f, &g);
            assert_eq!(inv.is_singular(&f), singular, "{g:?}");
            let ty = classify_cubic(&ctx, &g).unwrap();
            assert_eq!(ty == CubicType::Nonsingular, !singular);
            if let Ok(points) = singular_points(&ctx, &g) {
                assert_eq!(points.is_empty(), !singular);
            }
            seen_both[singular as usize] = true;
        }
        assert_eq!(seen_both, [true, true]);
    }
}

/// `j` of `y²z + a1·xyz + a3·yz² = x³ + a2·x²z + a4·xz² + a6·z³`, or `None`
/// when the curve is singular.
fn weierstrass_j(f: &PrimeField, [a1, a2, a3, a4, a6]: [Fp; 5]) -> Option<Fp> {
    let (m, a, s) = (|x, y| f.mul(x, y), |x, y| f.add(x, y), |x, y| f.sub(x, y));
    let c = |n| f.elem(n);
    let b2 = a(m(a1, a1), m(c(4), a2));
    let b4 = a(m(c(2), a4), m(a1, a3));
    let b6 = a(m(a3, a3), m(c(4), a6));
    let b8 = s(
        a(a(m(m(a1, a1), a6), m(m(c(4), a2), a6)), m(a2, m(a3, a3))),
        a(m(m(a1, a3), a4), m(a4, a4)),
    );
    let c4 = s(m(b2, b2), m(c(24), b4));
    let disc = a(
        s(
            s(f.neg(m(m(b2, b2), b8)), m(c(8), m(b4, m(b4, b4)))),
            m(c(27), m(b6, b6)),
        ),
        m(c(9), m(b2, m(b4, b6))),
    );
    let inv = f.inv(disc).ok()?;
    Some(m(m(c4, m(c4, c4)), inv))
}

fn weierstrass_cubic(f: &PrimeField, [a1, a2, a3, a4, a6]: [Fp; 5]) -> TernaryForm<Fp> {
    let mut g = TernaryForm::zero(f, 3);
    let terms = [
        (f.one(), [0, 2, 1]),
        (a1, [1, 1, 1]),
        (a3, [0, 1, 2]),
        (f.neg(f.one()), [3, 0, 0]),
        (f.neg(a2), [2, 0, 1]),
        (f.neg(a4), [1, 0, 2]),
        (f.neg(a6), [0, 0, 3]),
    ];
    for (c, e) in terms {
        g = g.add(f, &TernaryForm::monomial(f, c, e));
    }
    g
}

#[test]
fn aronhold_j_matches_weierstrass_j() {
    for p in [5u64, 7, 11, 13, 31] {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p + 100);
        let mut checked = 0;
        while checked < 150 {
            let a: [Fp; 5] = std::array::from_fn(|_| f.elem(rng.gen_range(0..p as i64)));
            let g = weierstrass_cubic(&f, a);
            let m: Mat3<Fp> = random_gl3_with(&f, &mut rng);
            let scale = f.elem(rng.gen_range(1..p as i64));
            let moved = g.substitute(&f, &m).scale(&f, scale);
            let inv = aronhold(&f, &moved);
            match weierstrass_j(&f, a) {
                None => assert!(inv.is_singular(&f), "p={p} {a:?}"),
                Some(j) => {
                    assert_eq!(inv.j(&f), Ok(j), "p={p} {a:?}");
                    checked += 1;
                }
            }
        }
    }
}
