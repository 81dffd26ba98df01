//! Writes a problem file with a known answer.
//!
//!     cargo run --example forward_fixture -- 11 3 24 7 > problem.json
//!
//! Arguments: p, g, n, seed. Output digits are fixed at 4.

use jacobian_isogeny::cli::ProblemSpec;
use jacobian_isogeny::mumford_newton::guard_digits;
use jacobian_isogeny::oracle::forward_instance;
use jacobian_isogeny::PrecisionContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jacobian_isogeny::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let [p, g, n, seed] = match args[..] {
        [p, g, n, seed] => [p, g, n, seed],
        [] => [11, 3, 24, 7],
        _ => panic!("usage: forward_fixture P G N SEED"),
    };
    let (g, n) = (g as usize, n as usize);
    let digits = 4;
    let ctx = PrecisionContext::new(p, digits + guard_digits(p, n))?;
    let inst = forward_instance(&ctx, g, n, &mut ChaCha8Rng::seed_from_u64(seed))?;
    print!("{}", ProblemSpec::from_forward(&inst, digits, n)?.to_json());
    Ok(())
}
