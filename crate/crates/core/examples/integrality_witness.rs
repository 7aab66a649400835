//! Monic relations of degree 4 with even coefficients for elements of E_4,
//! first through the epsilon-twisted diagonal embedding, then through the
//! Z/2-grading by degree.

use ncdet::grassmann::GrassmannAlgebra;
use ncdet::ring::{ParseElement, Rationals};
use ncdet::structures::{graded_integrality_witness, integrality_witness, DegreeResidueGrading, WitnessOptions};

fn main() {
    let e = GrassmannAlgebra::new(4, Rationals);
    let eps = e.epsilon_endomorphism();
    let log = |stage: &str| eprintln!("  .. {stage}");
    let opts = WitnessOptions { progress: Some(&log), ..Default::default() };

    for text in ["v1", "1 + v1 + v2*v3", "v1 + v2 + v3*v4"] {
        let r = e.parse(text).unwrap();
        let w = integrality_witness(&e, &eps, 2, &r, &opts).unwrap();
        println!("r = {text}");
        println!("{}", serde_json::to_string_pretty(&w.record(&e)).unwrap());
        let g = graded_integrality_witness(&e, &DegreeResidueGrading { n: 2 }, 2, &r, &opts).unwrap();
        println!("graded relation verified: {}", g.verified(&e));
    }
}
