//! Random expressions that stay well defined for t in [-1, 1].

use rand::Rng;

use super::{BinOp, Expr, Func};

/// Environment variable that seeds the randomized suites.
pub const SEED_VAR: &str = "HOROCURVE_SEED";

/// Seed from `HOROCURVE_SEED`, or `default` when unset or unparsable.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

fn positive(e: Expr) -> Expr {
    Expr::bin(BinOp::Add, Expr::num(2.0), Expr::func(Func::Sin, e))
}

/// A random expression of nesting depth at most `depth`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.2) {
        return match rng.random_range(0..4) {
            0 | 1 => Expr::Var,
            2 => Expr::num((rng.random_range(0.1..2.0f64) * 100.0).round() / 100.0),
            _ => Expr::Pi,
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.random_range(0..16) {
        0 => Expr::bin(BinOp::Add, a, random_expr(rng, depth - 1)),
        1 => Expr::bin(BinOp::Sub, a, random_expr(rng, depth - 1)),
        2 | 3 => Expr::bin(BinOp::Mul, a, random_expr(rng, depth - 1)),
        4 => {
            let d = Expr::bin(BinOp::Add, Expr::num(1.5), Expr::pow(random_expr(rng, depth - 1), 2.0));
            Expr::bin(BinOp::Div, a, d)
        }
        5 => Expr::negate(a),
        6 => Expr::func(Func::Sin, a),
        7 => Expr::func(Func::Cos, a),
        8 => Expr::func(Func::Atan, a),
        9 => Expr::func(Func::Tanh, a),
        10 => Expr::func(Func::Exp, Expr::func(Func::Sin, a)),
        11 => Expr::func(Func::Log, positive(a)),
        12 => Expr::func(Func::Sqrt, positive(a)),
        13 => Expr::func(Func::Tan, Expr::bin(BinOp::Mul, Expr::num(0.5), Expr::func(Func::Sin, a))),
        14 => {
            let f = if rng.random_bool(0.5) { Func::Sinh } else { Func::Cosh };
            Expr::func(f, Expr::func(Func::Cos, a))
        }
        _ => {
            let p = [1.5, 2.0, 3.0, -0.5][rng.random_range(0..4)];
            Expr::pow(positive(a), p)
        }
    }
}
