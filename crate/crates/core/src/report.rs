//! Expected-versus-computed tables shared by every verification run.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    List(Vec<i64>),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => write!(f, "{v}"),
            Cell::List(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<Vec<i64>> for Cell {
    fn from(v: Vec<i64>) -> Self {
        Cell::List(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub object: String,
    pub degree: Option<usize>,
    pub computed: Cell,
    pub expected: Option<Cell>,
    pub source: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a check; it passes iff `computed == expected`.
    pub fn check(&mut self, object: impl Into<String>, degree: Option<usize>, computed: impl Into<Cell>, expected: impl Into<Cell>, source: &str) -> bool {
        let (computed, expected) = (computed.into(), expected.into());
        let pass = computed == expected;
        self.rows.push(Row { object: object.into(), degree, computed, expected: Some(expected), source: source.into(), pass });
        pass
    }

    /// Record an informational value with nothing to compare against.
    pub fn info(&mut self, object: impl Into<String>, degree: Option<usize>, computed: impl Into<Cell>, source: &str) {
        self.rows.push(Row { object: object.into(), degree, computed: computed.into(), expected: None, source: source.into(), pass: true });
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn find(&self, object: &str, degree: Option<usize>) -> Option<&Row> {
        self.rows.iter().find(|r| r.object == object && r.degree == degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracking() {
        let mut r = Report::new();
        assert!(r.check("dim", Some(1), 3usize, 3usize, "ambient"));
        r.info("note", None, "x", "info");
        assert!(r.all_pass());
        assert!(!r.check("dim", Some(2), 5usize, 6usize, "ambient"));
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.find("dim", Some(2)).unwrap().computed, Cell::Int(5));
        assert_eq!(Cell::List(vec![1, 2]).to_string(), "1 2");
    }
}
