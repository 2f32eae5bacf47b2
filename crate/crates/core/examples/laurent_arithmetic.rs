//! Exact Laurent polynomials in `q^(1/2)`.
//!
//! ```bash
//! cargo run -p qgb --example laurent_arithmetic
//! ```

use qgb::laurent::HalfLaurent;
use qgb::{frac, rat};

fn main() {
    let half = HalfLaurent::monomial(rat(1), 1);
    let d = HalfLaurent::half_difference();
    println!("q^(1/2) + q^(1/2)    = {}", half.clone() + half.clone());
    println!("q^(1/2) - q^(-1/2)   = {d}");
    println!("1/2 * (that) * q^-1  = {}", d.mul_monomial(&frac(1, 2), -2));

    // geom_div(v) is the closed form of (q^v - 1)/(q^(1/2) - q^(-1/2))
    for v in [-3, -1, 0, 1, 3] {
        let g = HalfLaurent::geom_div(v);
        let back = g.clone() * d.clone();
        let target = HalfLaurent::monomial(rat(1), 2 * v) - HalfLaurent::one();
        println!("geom_div({v:>2}) = {g:<40}  check: {}", back == target);
    }

    let p = d.mul_monomial(&frac(1, 2), 0);
    println!("p = {p}");
    println!("p(1) = {}, p'(1) = {}, p(4) = {}", p.value_at_1(), p.derivative_at_1(), p.eval_real(4.0).unwrap());
}
