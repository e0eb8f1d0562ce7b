#![allow(dead_code)]

use num::{BigInt, BigRational, ToPrimitive};
use statrs::function::gamma::gamma;

/// Reference values at 15 iterations, columns N = 10, 15, 25, 50.
pub const REF_X: [f64; 11] = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0];

pub const REF_F: [[f64; 4]; 11] = [
    [0.0000000000, 0.0000000000, 0.0000000000, 0.0000000000],
    [0.4036738856, 0.4045266250, 0.4045235026, 0.4045235024],
    [0.6658626593, 0.6652631608, 0.6652578446, 0.6652578448],
    [0.8353708975, 0.8334184925, 0.8334154070, 0.8334154068],
    [0.9443573988, 0.9418982540, 0.9418951684, 0.9418951684],
    [1.0144374602, 1.0118879495, 1.0118841902, 1.0118841903],
    [1.0595784826, 1.0570456452, 1.0570418968, 1.0570418967],
    [1.0887030794, 1.0861819735, 1.0861787456, 1.0861787455],
    [1.1075132470, 1.1049814404, 1.1049787070, 1.1049787070],
    [1.1196651637, 1.1171115798, 1.1171090443, 1.1171090444],
    [1.1275118485, 1.1249385493, 1.1249359382, 1.1249359382],
];

pub const REF_FP: [[f64; 4]; 11] = [
    [1.0000000000, 1.0000000000, 1.0000000000, 1.0000000000],
    [0.6450803420, 0.6442642937, 0.6442495479, 0.6442495461],
    [0.4189562550, 0.4154133505, 0.4154176707, 0.4154176711],
    [0.2697139887, 0.2679636516, 0.2679659918, 0.2679659914],
    [0.1733336877, 0.1728814969, 0.1728800369, 0.1728800375],
    [0.1115538147, 0.1115431922, 0.1115424083, 0.1115424080],
    [0.0719247489, 0.0719686778, 0.0719693974, 0.0719693972],
    [0.0464362346, 0.0464355030, 0.0464366676, 0.0464366678],
    [0.0299991498, 0.0299616664, 0.0299623908, 0.0299623909],
    [0.0193776822, 0.0193326322, 0.0193327138, 0.0193327137],
    [0.0125058088, 0.0124744388, 0.0124741099, 0.0124741098],
];

/// The table has no f'' row at x = 2.0.
pub const REF_FPP_X: [f64; 10] = [0.0, 0.5, 1.0, 1.5, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0];

pub const REF_FPP: [[f64; 4]; 10] = [
    [-0.9192031329, -0.8809437796, -0.8807848835, -0.8807849724],
    [-0.5513725007, -0.5658276136, -0.5658037464, -0.5658037300],
    [-0.3662977979, -0.3643882166, -0.3643723455, -0.3643723552],
    [-0.2385329622, -0.2348981506, -0.2349101459, -0.2349101417],
    [-0.0981133286, -0.0977533531, -0.0977500466, -0.0977500475],
    [-0.0630210169, -0.0630697634, -0.0630676466, -0.0630676457],
    [-0.0405944573, -0.0406920734, -0.0406922931, -0.0406922928],
    [-0.0262103556, -0.0262544563, -0.0262557467, -0.0262557472],
    [-0.0169503305, -0.0169398783, -0.0169410136, -0.0169410139],
    [-0.0109702242, -0.0109304115, -0.0109308917, -0.0109308915],
];

/// Comparison table at N = 10: x, RK4 column, presented-method column.
pub const REF_SHOOT: [(f64, f64, f64); 6] = [
    (0.0, 1.0, 1.0),
    (1.0, 0.41542, 0.4189562550),
    (2.0, 0.17288, 0.1733336877),
    (3.0, 0.07197, 0.0719247489),
    (4.0, 0.02996, 0.0299991498),
    (5.0, 0.01247, 0.0125058088),
];

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Explicit Gamma-sum form of `J_n^{a,b}(t)` in exact rational arithmetic.
///
/// The Gamma ratios are expanded as products; inputs are taken as the exact
/// dyadic rationals their f64 values represent, so only the final rounding is inexact.
pub fn jacobi_gamma_sum(a: f64, b: f64, n: usize, t: f64) -> f64 {
    // Term m: Γ(n+a+1)/(n! Γ(n+a+b+1)) · C(n,m) Γ(n+m+a+b+1)/Γ(m+a+1) · ((t-1)/2)^m.
    let q = |v: f64| BigRational::from_float(v).expect("finite input");
    let int = |v: usize| BigRational::from_integer(BigInt::from(v));
    let (a, b, t) = (q(a), q(b), q(t));
    let half_shift = (t - int(1)) / int(2);
    let mut term = (1..=n).fold(int(1), |acc, i| acc * (int(i) + &a) / int(i));
    let mut sum = term.clone();
    for m in 1..=n {
        term =
            term * int(n - m + 1) / int(m) * (int(n + m) + &a + &b) / (int(m) + &a) * &half_shift;
        sum += &term;
    }
    sum.to_f64().expect("representable")
}

/// `∫_{-1}^{1} J_n² (1-t)^a (1+t)^b dt` in closed form.
pub fn jacobi_norm(a: f64, b: f64, n: usize) -> f64 {
    let nf = n as f64;
    2f64.powf(a + b + 1.0) / (2.0 * nf + a + b + 1.0) * gamma(nf + a + 1.0) * gamma(nf + b + 1.0)
        / (gamma(nf + a + b + 1.0) * factorial(n))
}

/// Composite Simpson on `[lo, hi]` with `2m` panels.
pub fn simpson<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (hi - lo) / n as f64;
    let mut s = g(lo) + g(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * g(lo + i as f64 * h);
    }
    s * h / 3.0
}

pub fn crane(x: f64) -> [f64; 3] {
    let e = (-x).exp();
    [1.0 - e, e, -e]
}
