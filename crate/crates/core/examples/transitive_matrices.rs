//! Transitive matrices from unit sequences, blow-ups, and the Hadamard
//! automorphism they induce on 3x3 matrices.

use ncdet::matrix::{
    blow_up, format_matrix, parse_matrix, theta, theta_conjugation, transitive_from_units, units_from_transitive,
};
use ncdet::ring::{ParseElement, Rationals, Ring};

fn main() {
    let g: Vec<_> = ["2", "-1", "1/3"].iter().map(|t| Rationals.parse(t).unwrap()).collect();
    let t = transitive_from_units(&Rationals, &g).unwrap();
    println!("T = {}", format_matrix(&Rationals, t.matrix()));
    let back: Vec<_> = units_from_transitive(&t).iter().map(|x| Rationals.format(x)).collect();
    println!("units read back from T: {back:?}");

    let big = blow_up(&Rationals, &t, &[2, 3, 5]).unwrap();
    println!("blow-up along cuts [2, 3, 5] = {}", format_matrix(&Rationals, big.matrix()));

    let a = parse_matrix(&Rationals, r#"[["1","2","3"],["4","5","6"],["7","8","9"]]"#).unwrap();
    let h = theta(&Rationals, &t, &a).unwrap();
    println!("Theta_T(A)  = {}", format_matrix(&Rationals, &h));
    println!("D A D^-1    = {}", format_matrix(&Rationals, &theta_conjugation(&Rationals, &t, &a).unwrap()));
}
