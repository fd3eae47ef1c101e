//! Bodies of the fuzz targets, also replayed over the checked-in corpus by the
//! test suite. Each must return normally for every input.

use std::sync::OnceLock;

use crate::gf::FieldCtx;
use crate::linpoly::QPoly;
use crate::report::{from_csv, to_csv};
use crate::search::decode_checkpoint_line;

fn small_fields() -> &'static [FieldCtx] {
    static F: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    F.get_or_init(|| [(2, 1), (3, 1), (2, 2)].into_iter().map(|(p, e)| FieldCtx::new(p, e).unwrap()).collect())
}

/// Accepted literals re-encode to an equal element.
pub fn parse_elem(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for ctx in small_fields() {
        if let Ok(x) = ctx.parse_elem(s) {
            assert_eq!(ctx.parse_elem(&ctx.format_elem(x)).ok(), Some(x));
        }
    }
}

pub fn qpoly_parse(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for ctx in small_fields() {
        if let Ok(f) = QPoly::parse(ctx, s) {
            assert_eq!(QPoly::parse(ctx, &f.format(ctx)).ok(), Some(f));
        }
    }
}

pub fn checkpoint_line(data: &[u8]) {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = decode_checkpoint_line(s);
    }
}

/// A decoded table that re-encodes must decode to itself.
pub fn csv_decode(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = from_csv(s) {
        if let Ok(text) = to_csv(&v) {
            if let Ok(back) = from_csv(&text) {
                assert_eq!(back, v);
            }
        }
    }
}

pub const TARGETS: [(&str, fn(&[u8])); 4] = [
    ("parse_elem", parse_elem),
    ("qpoly_parse", qpoly_parse),
    ("checkpoint_line", checkpoint_line),
    ("csv_decode", csv_decode),
];
