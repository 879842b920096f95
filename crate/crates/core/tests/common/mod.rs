#![allow(dead_code)]

use num_traits::{One, Zero};
use opcalc_core::{OpExpr, Poly, Rat, SSeries, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64, d: i64) -> Rat {
    Rat::from_frac(n, d)
}

pub fn p(text: &str) -> Poly {
    text.parse().unwrap()
}

pub fn mono(n: usize) -> Poly {
    Poly::monomial(Rat::one(), n)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    r(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::new((0..=deg).map(|_| random_rational(rng)).collect())
}

/// A polynomial symbol carried as a series truncated at `order`.
pub fn random_series(rng: &mut ChaCha8Rng, max_deg: usize, order: usize) -> SSeries {
    SSeries::from_poly(&random_poly(rng, max_deg), order)
}

fn random_atom(rng: &mut ChaCha8Rng) -> OpExpr {
    match rng.gen_range(0..10) {
        0 => OpExpr::D,
        1 => OpExpr::X,
        2 => OpExpr::Identity,
        3 => OpExpr::Integral,
        4 => OpExpr::Difference,
        5 => OpExpr::Shift(random_rational(rng)),
        6 => OpExpr::EvalZero,
        7 => OpExpr::Substitute(random_poly(rng, 2)),
        8 => OpExpr::SeriesInD(random_series(rng, 4, 16)),
        _ => OpExpr::PolyInX(random_poly(rng, 2)),
    }
}

/// Random expression over the DSL atoms, of nesting depth at most `depth`.
pub fn random_operator(rng: &mut ChaCha8Rng, depth: usize) -> OpExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return random_atom(rng);
    }
    match rng.gen_range(0..4) {
        0 | 1 => OpExpr::compose(
            random_operator(rng, depth - 1),
            random_operator(rng, depth - 1),
        ),
        2 => random_operator(rng, depth - 1) + random_operator(rng, depth - 1),
        _ => OpExpr::scaled(random_rational(rng), random_operator(rng, depth - 1)),
    }
}

/// Operators known to have a DX-expansion with a finite upper diagonal.
pub fn random_dx_operator(rng: &mut ChaCha8Rng) -> OpExpr {
    let base = |rng: &mut ChaCha8Rng| match rng.gen_range(0..7) {
        0 => OpExpr::D,
        1 => OpExpr::X,
        2 => OpExpr::Shift(random_rational(rng)),
        3 => OpExpr::PolyInX(random_poly(rng, 2)),
        4 => OpExpr::SeriesInD(random_series(rng, 3, 32)),
        5 => OpExpr::compose(OpExpr::X, OpExpr::Shift(r(-1, 1))),
        _ => OpExpr::Difference,
    };
    if rng.gen_bool(0.3) {
        OpExpr::compose(base(rng), base(rng))
    } else {
        base(rng)
    }
}

/// Stirling numbers of the second kind `S(n, k)` for `n, k <= n_max`.
pub fn stirling2(n_max: usize) -> Vec<Vec<Rat>> {
    let mut s = vec![vec![Rat::zero(); n_max + 1]; n_max + 1];
    s[0][0] = Rat::one();
    for n in 1..=n_max {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] + Rat::from_usize(k) * &s[n - 1][k];
        }
    }
    s
}

/// `Σ_k S(n, k) x^k`, the conjugate sequence of the forward difference.
pub fn touchard(n: usize) -> Poly {
    Poly::new(stirling2(n)[n].clone())
}
