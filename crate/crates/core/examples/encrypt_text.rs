// Text through the projector cipher: dictionary, keys, encryption with
// fresh noise per symbol, decryption, and what a wrong key or the
// pseudoinverse probe gets.

use oblique::crypto::{attack_probe, build_dictionary, decrypt_bytes, encrypt_bytes, keygen, DEFAULT_DECODE_MARGIN};
use oblique::Result;

pub fn run_example() -> Result<()> {
    let dict = build_dictionary(8, 3, 256, 42, DEFAULT_DECODE_MARGIN)?;
    let (sk, pk) = keygen(&dict, 5, 7, false, None)?;
    println!("dictionary rank k = {}, key width r = {}", pk.k, pk.r);

    let message = b"HELLO, PROJECTORS";
    let c = encrypt_bytes(&pk, &dict, message, 99)?;
    let again = encrypt_bytes(&pk, &dict, message, 100)?;
    println!("ciphertext {}x{}; re-encryption differs: {}", c.payload.rows(), c.payload.cols(), c != again);
    let plain = decrypt_bytes(&sk, &dict, &c)?;
    println!("decrypted: {}", String::from_utf8_lossy(&plain));
    assert_eq!(plain, message);

    let (wrong, _) = keygen(&dict, 5, 8, false, None)?;
    match decrypt_bytes(&wrong, &dict, &c) {
        Ok(bytes) => println!("wrong key produced {:?}", String::from_utf8_lossy(&bytes)),
        Err(e) => println!("wrong key: {e}"),
    }

    let probe = attack_probe(&pk, Some(&sk))?;
    println!(
        "probe: rank(Y2 F) = {} < r = {}, relative distance to F {:.3}",
        probe.rank_y2f,
        probe.r,
        probe.relative_distance.unwrap_or(f64::NAN)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("encrypt text example");
}
