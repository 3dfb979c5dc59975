//! Minimal CSV sink: header row, comma separator, LF line endings.
//!
//! Every field this crate emits is a decimal number or a bare word, so no
//! quoting is ever needed; fields containing separators are rejected.

use std::io::{self, Write};

pub struct CsvWriter<W: Write> {
    out: W,
    columns: usize,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W, header: &[&str]) -> io::Result<Self> {
        write_row(&mut out, header)?;
        Ok(CsvWriter {
            out,
            columns: header.len(),
        })
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) -> io::Result<()> {
        assert_eq!(
            fields.len(),
            self.columns,
            "row width must match the header"
        );
        write_row(&mut self.out, fields)
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

fn write_row<W: Write, S: AsRef<str>>(out: &mut W, fields: &[S]) -> io::Result<()> {
    for (i, field) in fields.iter().enumerate() {
        let field = field.as_ref();
        debug_assert!(
            !field.contains([',', '"', '\n', '\r']),
            "unquotable field {field:?}"
        );
        if i > 0 {
            out.write_all(b",")?;
        }
        out.write_all(field.as_bytes())?;
    }
    out.write_all(b"\n")
}
