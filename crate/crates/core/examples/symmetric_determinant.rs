//! Symmetric determinant and preadjoint over Q and over E_3.
//!
//! Over a commutative ring sdet(A) = n! det(A) and A* = (n-1)! adj(A); over
//! the Grassmann algebra the two evaluators still agree entry by entry.

use ncdet::det::{preadjoint, preadjoint_via_minors, sdet};
use ncdet::grassmann::GrassmannAlgebra;
use ncdet::matrix::{format_matrix, parse_matrix};
use ncdet::ring::{Rationals, Ring};

fn main() {
    let a = parse_matrix(&Rationals, r#"[["2","1","0"],["1","3","1"],["0","1","4"]]"#).expect("valid matrix");
    println!("A       = {}", format_matrix(&Rationals, &a));
    println!("sdet(A) = {}  (3! * 18)", Rationals.format(&sdet(&Rationals, &a).unwrap()));
    println!("A*      = {}", format_matrix(&Rationals, &preadjoint(&Rationals, &a).unwrap()));

    let e = GrassmannAlgebra::new(3, Rationals);
    let b = parse_matrix(&e, r#"[["1 + v1","v2"],["v3","v1*v2"]]"#).expect("valid matrix");
    println!("B       = {}", format_matrix(&e, &b));
    println!("sdet(B) = {}", e.format(&sdet(&e, &b).unwrap()));
    let direct = preadjoint(&e, &b).unwrap();
    let minors = preadjoint_via_minors(&e, &b).unwrap();
    println!("B*      = {}", format_matrix(&e, &direct));
    println!("direct and minor-based preadjoints agree: {}", direct == minors);
}
