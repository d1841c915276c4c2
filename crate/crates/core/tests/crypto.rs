mod common;

use common::norm;
use oblique::crypto::{
    attack_probe, build_dictionary, decrypt, decrypt2, decrypt_bytes, encrypt, encrypt2, encrypt_bytes,
    encrypt_with_noise, keygen, keygen_with, Dictionary, KeygenOptions, DEFAULT_DECODE_MARGIN,
};
use oblique::linalg::rank_of;
use oblique::rng::gaussian_vector;
use oblique::{Error, Matrix, Tolerance};
use proptest::prelude::*;
use std::sync::OnceLock;

fn text_dictionary() -> &'static Dictionary {
    static DICT: OnceLock<Dictionary> = OnceLock::new();
    DICT.get_or_init(|| build_dictionary(8, 3, 256, 42, DEFAULT_DECODE_MARGIN).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bytes_round_trip(bytes in proptest::collection::vec(any::<u8>(), 0..64), key_seed in any::<u64>(), seed in any::<u64>()) {
        let dict = text_dictionary();
        let (sk, pk) = keygen(dict, 5, key_seed, false, None).unwrap();
        let c = encrypt_bytes(&pk, dict, &bytes, seed).unwrap();
        prop_assert_eq!(c.payload.cols(), bytes.len());
        prop_assert_eq!(decrypt_bytes(&sk, dict, &c).unwrap(), bytes);
    }

    #[test]
    fn public_material_is_rank_deficient(key_seed in any::<u64>(), extra in 2usize..=5) {
        let dict = text_dictionary();
        let r = dict.rank() + extra;
        let (_, pk) = keygen(dict, r, key_seed, false, None).unwrap();
        let tol = Tolerance::default();
        prop_assert_eq!(rank_of(&pk.y1, &tol).rank, dict.rank());
        prop_assert_eq!(rank_of(&pk.y2f, &tol).rank, dict.rank());
        prop_assert!(dict.rank() < r);
    }
}

#[test]
fn noise_is_annihilated_by_the_secret() {
    let dict = text_dictionary();
    let (sk, pk) = keygen(dict, 5, 3, false, None).unwrap();
    let eye = Matrix::identity(pk.r);
    let leak = eye.sub(&pk.y2f).unwrap();
    let annihilator = sk.f.matmul(&leak).unwrap();
    let f_norm = sk.f.frobenius_norm();
    for t in 0..1000u64 {
        let w = gaussian_vector(pk.r, t);
        let hit = annihilator.mul_vec(&w).unwrap();
        assert!(norm(&hit) <= 1e-10 * f_norm * norm(&w), "trial {t}: {:e}", norm(&hit));
    }
}

#[test]
fn noise_changes_ciphertext_not_plaintext() {
    let dict = text_dictionary();
    let (sk, pk) = keygen(dict, 6, 4, false, None).unwrap();
    let m = dict.column(72).unwrap();
    let zero = encrypt_with_noise(&pk, &m, &vec![0.0; pk.r]).unwrap();
    let noisy = encrypt(&pk, &m, 11).unwrap();
    assert!(zero.payload.distance(&noisy.payload).unwrap() > 1e-6);
    for c in [&zero, &noisy] {
        let back = decrypt(&sk, c).unwrap().column(0);
        let err: Vec<f64> = back.iter().zip(&m).map(|(x, y)| x - y).collect();
        assert!(norm(&err) <= 1e-8);
    }
}

#[test]
fn two_sided_round_trip_of_the_whole_dictionary() {
    let dict = text_dictionary();
    let (sk, pk) = keygen(dict, 5, 8, true, Some(6)).unwrap();
    let m = dict.matrix();
    let back = decrypt2(&sk, &encrypt2(&pk, m, 1).unwrap()).unwrap();
    assert!(back.distance(m).unwrap() <= 1e-8 * m.frobenius_norm());
}

#[test]
fn keygen_guard_and_custom_gap() {
    let dict = text_dictionary();
    let k = dict.rank();
    for r in [k, k + 1] {
        assert!(matches!(keygen(dict, r, 1, false, None), Err(Error::InvalidParameter(_))));
    }
    let (_, pk) = keygen_with(dict, &KeygenOptions::one_sided(k + 1).with_min_gap(1), 1).unwrap();
    assert_eq!(pk.r, k + 1);
}

#[test]
fn probe_does_not_recover_the_secret() {
    let dict = text_dictionary();
    for seed in 0..10u64 {
        let (sk, pk) = keygen(dict, 5, seed, false, None).unwrap();
        let rep = attack_probe(&pk, Some(&sk)).unwrap();
        assert!(rep.rank_deficient);
        assert!(rep.relative_distance.unwrap() > 1e-3);
    }
}

#[test]
fn unmapped_byte_is_rejected() {
    let dict = build_dictionary(6, 2, 40, 5, DEFAULT_DECODE_MARGIN).unwrap();
    let (_, pk) = keygen(&dict, 4, 1, false, None).unwrap();
    assert!(matches!(encrypt_bytes(&pk, &dict, b"A", 1), Err(Error::UnmappedSymbol(65))));
}
