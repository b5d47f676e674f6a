//! Number formatting for everything the tool prints or writes.
//!
//! Floats are rendered with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64` exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON (the trait defaults) except for floats.
struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as a single-line JSON document followed by a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization of plain data cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
