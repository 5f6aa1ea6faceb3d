use ratwz_core::*;
use ratwz_core::rational::rat;

fn main() {
    let params = SizeParams::default();
    let case = OperatorCase::differential();
    let t0 = std::time::Instant::now();
    let p = random_pair(3, &case, &params);
    eprintln!("build {:?}", t0.elapsed());
    eprintln!("f: num deg {:?} terms {} | den deg {:?} terms {}",
        p.f().num().total_degree(), p.f().num().num_terms(),
        p.f().den().total_degree(), p.f().den().num_terms());
    // biggest coefficient size
    let maxbits = p.f().num().terms().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap();
    eprintln!("max coeff bits in f num: {}", maxbits);
    let t0 = std::time::Instant::now();
    let g = poly_gcd(p.f().num(), p.f().den());
    eprintln!("gcd of f parts: {:?} -> {}", t0.elapsed(), g.total_degree().unwrap_or(0));
    let _ = rat(1,2);
}
