// Keys, ciphertexts and dictionaries on disk, then the same flow driven
// through the command-line entry point.

use std::fs;

use oblique::cli;
use oblique::crypto::{build_dictionary, keygen, read_public_key, write_dictionary, write_public_key, DEFAULT_DECODE_MARGIN};
use oblique::Result;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("oblique-key-files-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();

    let dict = build_dictionary(8, 3, 256, 42, DEFAULT_DECODE_MARGIN)?;
    write_dictionary(path("dict.csv"), &dict)?;
    let (_, pk) = keygen(&dict, 5, 1, false, None)?;
    write_public_key(path("pk.json"), &pk)?;
    assert_eq!(read_public_key(path("pk.json"))?, pk);

    fs::write(path("msg.txt"), "HELLO")?;
    let steps: [Vec<String>; 3] = [
        ["keygen", "--dict", &path("dict.csv"), "--r", "5", "--seed", "3", "--out-secret", &path("sk.json"), "--out-public", &path("pk.json")]
            .map(String::from)
            .to_vec(),
        ["encrypt", "--public", &path("pk.json"), "--in", &path("msg.txt"), "--dict", &path("dict.csv"), "--seed", "9", "--out", &path("c.json")]
            .map(String::from)
            .to_vec(),
        ["decrypt", "--secret", &path("sk.json"), "--in", &path("c.json"), "--dict", &path("dict.csv"), "--out", &path("out.txt")]
            .map(String::from)
            .to_vec(),
    ];
    for step in steps {
        let out = cli::execute(std::iter::once("oblique".to_string()).chain(step));
        print!("{}", out.report);
        assert_eq!(out.exit_code, cli::EXIT_OK, "{}", out.diagnostics);
    }
    assert_eq!(fs::read(path("out.txt"))?, b"HELLO");
    fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("key files example");
}
