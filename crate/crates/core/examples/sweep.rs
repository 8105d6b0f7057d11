use aks_workbench::{aks_test, Natural};
use std::time::Instant;

fn main() {
    let hi: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5000);
    let start = Instant::now();
    let primes = (2..=hi)
        .filter(|&n| aks_test(&Natural::from(n)).unwrap().0.is_prime())
        .count();
    println!("{primes} primes <= {hi} in {:?}", start.elapsed());
    for n in [1_000_003u64, 1_000_033, 1_000_037] {
        let t = Instant::now();
        let (v, trace) = aks_test(&Natural::from(n)).unwrap();
        println!(
            "{n}: {:?} step {} r={:?} in {:?}",
            v.outcome(),
            v.deciding_step(),
            trace.chosen_r,
            t.elapsed()
        );
    }
}
