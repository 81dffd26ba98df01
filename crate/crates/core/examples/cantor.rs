//! Cantor's group law on a genus-2 Jacobian over F_13.

use jacobian_isogeny::oracle::FieldCurve;
use jacobian_isogeny::PrecisionContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jacobian_isogeny::Result<()> {
    let k = PrecisionContext::new(13, 1)?;
    let f: Vec<_> = [1i64, 4, 0, 2, 0, 1].iter().map(|&c| k.from_i64(c)).collect();
    let curve = FieldCurve::new(&k, f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = curve.random_divisor(&mut rng);
    let show = |p: &[jacobian_isogeny::FixedPointElem]| p.iter().map(|c| c.value()).collect::<Vec<_>>();
    println!("D    = ({:?}, {:?})", show(&d.a), show(&d.b));
    let mut acc = curve.identity();
    let mut order = 0u64;
    loop {
        acc = curve.add(&acc, &d);
        order += 1;
        if acc == curve.identity() {
            break;
        }
    }
    println!("order of D: {order}");
    let d5 = curve.mul(&d, 5);
    println!("[5]D = ({:?}, {:?})", show(&d5.a), show(&d5.b));
    let mut sum = curve.identity();
    for _ in 0..5 {
        sum = curve.add(&sum, &d);
    }
    println!("D + D + D + D + D equals [5]D: {}", sum == d5);
    Ok(())
}
