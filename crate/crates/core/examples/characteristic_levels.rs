use procong::torus::{characteristic_lattice_oracle, characteristic_level};

fn main() {
    for n in 1..=12 {
        let d = characteristic_level(n);
        let oracle = characteristic_lattice_oracle(n);
        println!("n = {n:2}: K_n = {d} Z^2, oracle basis ({}, 0) ({}, {})", oracle.a, oracle.b, oracle.d);
    }
}
