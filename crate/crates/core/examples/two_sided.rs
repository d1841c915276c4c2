// Two-sided encryption of a whole dictionary block, C = Y1 M X1 + W - Y2F W H*X2.

use oblique::crypto::{build_dictionary, decrypt2, encrypt2, keygen, DEFAULT_DECODE_MARGIN};
use oblique::Result;

pub fn run_example() -> Result<()> {
    let dict = build_dictionary(8, 3, 12, 5, DEFAULT_DECODE_MARGIN)?;
    let (sk, pk) = keygen(&dict, 6, 21, true, Some(7))?;
    let message = dict.matrix().clone();

    let c = encrypt2(&pk, &message, 3)?;
    let back = decrypt2(&sk, &c)?;
    let err = back.distance(&message)? / message.frobenius_norm();
    println!("payload {}x{}, relative roundtrip error {err:.2e}", c.payload.rows(), c.payload.cols());
    assert!(err <= 1e-8);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("two-sided example");
}
