//! Graded matrices over E_4 for the grading by degree mod 3, and the
//! embedding gamma of E_4 into them.

use ncdet::det::preadjoint;
use ncdet::grassmann::GrassmannAlgebra;
use ncdet::matrix::{format_matrix, mat_mul};
use ncdet::ring::{ParseElement, Rationals, Ring};
use ncdet::rng::seeded;
use ncdet::structures::{embed_gamma, graded_matrix_membership, sample_graded_matrix, DegreeResidueGrading};

fn main() {
    let e = GrassmannAlgebra::new(4, Rationals);
    let grading = DegreeResidueGrading { n: 3 };
    let r = e.parse("1 + v1 + v1*v2 + v1*v2*v3").unwrap();
    let s = e.parse("2 - v4 + v2*v3").unwrap();
    let gr = embed_gamma(&e, &grading, &r);
    println!("gamma(r) = {}", format_matrix(&e, &gr));
    let product = mat_mul(&e, &gr, &embed_gamma(&e, &grading, &s)).unwrap();
    println!("gamma(r) gamma(s) = gamma(rs): {}", product == embed_gamma(&e, &grading, &e.mul(&r, &s)));

    let mut rng = seeded(5);
    let a = sample_graded_matrix(&e, &grading, &mut rng);
    let p = preadjoint(&e, &a).unwrap();
    println!("A  = {}", format_matrix(&e, &a));
    println!("A* graded: {}", graded_matrix_membership(&e, &grading, &p));
}
