//! Arithmetic in the Grassmann algebra E_4 and its standard automorphisms.

use ncdet::grassmann::GrassmannAlgebra;
use ncdet::ring::{ParseElement, Rationals, Ring};

fn main() {
    let e = GrassmannAlgebra::new(4, Rationals);
    let a = e.parse("1 + v1 + 2*v2*v3").expect("valid element");
    let b = e.parse("v2 - v1*v4").expect("valid element");

    println!("a      = {}", e.format(&a));
    println!("b      = {}", e.format(&b));
    println!("ab     = {}", e.format(&e.mul(&a, &b)));
    println!("ba     = {}", e.format(&e.mul(&b, &a)));
    println!("b^2    = {}", e.format(&e.mul(&b, &b)));

    let (even, odd) = e.parity_split(&a);
    println!("a_0    = {}", e.format(&even));
    println!("a_1    = {}", e.format(&odd));
    println!("eps(a) = {}", e.format(&e.epsilon(&a)));

    // sigma is conjugation by 1 + v1 and has infinite order
    let mut x = e.generator(2);
    for j in 1..=3 {
        x = e.sigma(&x);
        println!("sigma^{j}(v2) = {}", e.format(&x));
    }
}
