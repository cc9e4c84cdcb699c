use std::time::Instant;
fn main() {
    let pattern = fdca_core::patterns::AngularPattern::corner(3).unwrap();
    let ball = fdca_core::patterns::hamming_ball(&pattern);
    let mask = fdca_core::automaton::SuppressionMask::new(5, 1).unwrap();
    let t = Instant::now();
    let serial = fdca_core::patterns::count_exact(5, &ball, &mask, 25).unwrap();
    println!("w=5 serial count: {} in {:?}", serial.point(), t.elapsed());
    let t = Instant::now();
    let par = fdca_cli::parallel::count_exact_parallel(5, &ball, &mask, 25).unwrap();
    println!("w=5 parallel count: {} in {:?}", par.point(), t.elapsed());
    let (one, two) = fdca_core::patterns::build_recognizer_pair(5, &pattern).unwrap();
    let t = Instant::now();
    let r = fdca_cli::parallel::verify_recognition_parallel(&two, |c| fdca_core::patterns::is_unique_instance(c, &ball, &mask).unwrap(), 25).unwrap();
    println!("w=5 verify two-layer: agrees={} in {:?}", r.agrees, t.elapsed());
    let t = Instant::now();
    let r = fdca_cli::parallel::verify_recognition_parallel(&one, |c| fdca_core::patterns::is_unique_instance(c, &ball, &mask).unwrap(), 25).unwrap();
    println!("w=5 verify one-layer: agrees={} in {:?}", r.agrees, t.elapsed());
    let t = Instant::now();
    let mc = fdca_cli::parallel::estimate_monte_carlo_parallel(6, &ball, &fdca_core::automaton::SuppressionMask::new(6,1).unwrap(), 1_000_000, 42).unwrap();
    println!("w=6 MC 1e6: {:?} in {:?}", mc.value, t.elapsed());
}
