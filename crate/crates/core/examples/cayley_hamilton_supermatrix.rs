//! Right and left Cayley-Hamilton identities for a random 2x2 supermatrix
//! over E_4, at level k = 2 (degree 4).

use ncdet::det::{char_poly, expected_leading, left_substitute, right_substitute, Side};
use ncdet::grassmann::GrassmannAlgebra;
use ncdet::matrix::format_matrix;
use ncdet::ring::{Rationals, Ring};
use ncdet::rng::seeded;
use ncdet::structures::shapes::supermatrix_member;

fn main() {
    let e = GrassmannAlgebra::new(4, Rationals);
    let mut rng = seeded(2024);
    let a = supermatrix_member(&e, 1, 2, &mut rng);
    println!("A = {}", format_matrix(&e, &a));
    println!("predicted leading coefficient: {}", expected_leading(2, 2));
    for side in [Side::Right, Side::Left] {
        let p = char_poly(&e, &a, 2, side).unwrap();
        println!("{side:?} characteristic polynomial, degree {}:", p.degree());
        for (t, c) in p.coefficients.iter().enumerate() {
            println!("  lambda_{t} = {}", e.format(c));
        }
        let value = match side {
            Side::Right => right_substitute(&e, &p, &a).unwrap(),
            Side::Left => left_substitute(&e, &p, &a).unwrap(),
        };
        println!("  substituted: {}", if ncdet::matrix::is_zero_matrix(&e, &value) { "0" } else { "nonzero" });
    }
}
