//! Integrality over Fix(epsilon)[w^2] in the skew polynomial ring E_4[w, epsilon].

use ncdet::grassmann::GrassmannAlgebra;
use ncdet::poly::SkewPolyRing;
use ncdet::ring::{ParseElement, Rationals, Ring};
use ncdet::structures::{skew_integrality_witness, WitnessOptions};

fn main() {
    let e = GrassmannAlgebra::new(4, Rationals);
    let skew = SkewPolyRing::new(e.clone(), e.epsilon_endomorphism(), "w");
    let w = skew.indeterminate();
    let v1 = skew.constant(e.generator(1));
    println!("w v1 = {}", skew.format(&skew.mul(&w, &v1)));
    println!("v1 w = {}", skew.format(&skew.mul(&v1, &w)));

    for text in ["w", "v1*w", "1 + v2 + v3*w"] {
        let f = skew.parse(text).unwrap();
        let witness = skew_integrality_witness(&skew, 2, &f, &WitnessOptions::default()).unwrap();
        println!("f = {}", skew.format(&f));
        for (t, g) in witness.coefficients.iter().enumerate() {
            println!("  g_{t} = {}", skew.format(g));
        }
        println!("  relation holds: {}", witness.verified(&skew));
    }
}
