//! Replays the fuzz corpus seeds through the fuzz target bodies.

use std::path::Path;

use msls::fuzzing::TARGETS;

#[test]
fn corpus_seeds_run_clean() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    for (name, body) in TARGETS {
        let dir = root.join(name);
        let mut n = 0;
        for entry in std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
            let data = std::fs::read(entry.unwrap().path()).unwrap();
            body(&data);
            n += 1;
        }
        assert!(n >= 3, "{name}: only {n} seeds");
    }
}

#[test]
fn bodies_survive_odd_bytes() {
    let inputs: [&[u8]; 6] = [b"", b"\xff\xfe", b"g^g^1", b",,,,", b"\"\n\"", b"{\"type\":\"shard\"}"];
    for (_, body) in TARGETS {
        for d in inputs {
            body(d);
        }
    }
}
