use serde::Serialize;

use sklyanin_core::report::{Report, Row};

use crate::config::Format;

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    pass: bool,
    rows: &'a [Row],
}

#[derive(Serialize)]
struct CsvRow<'a> {
    object: &'a str,
    degree: Option<usize>,
    computed: String,
    expected: Option<String>,
    source: &'a str,
    pass: bool,
}

pub fn render(command: &str, report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = JsonReport { command, pass: report.all_pass(), rows: &report.rows };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &report.rows {
                w.serialize(CsvRow {
                    object: &r.object,
                    degree: r.degree,
                    computed: r.computed.to_string(),
                    expected: r.expected.as_ref().map(ToString::to_string),
                    source: &r.source,
                    pass: r.pass,
                })
                .expect("csv row serializes");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
    }
}
