//! Column tables and their CSV / JSON rendering.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(usize),
    Text(String),
}

impl Cell {
    /// Shortest decimal that parses back to the same value.
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        // Writing into a Vec cannot fail.
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        writer.into_inner().expect("in-memory flush")
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut object = Map::new();
        for (k, name) in self.columns.iter().enumerate() {
            let column = self.rows.iter().map(|row| row[k].json()).collect();
            object.insert((*name).to_string(), Value::Array(column));
        }
        let mut bytes = serde_json::to_vec_pretty(&Value::Object(object)).expect("serializable");
        bytes.push(b'\n');
        bytes
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// `<out>.<suffix>.<ext>` next to the main output.
pub fn sidecar_path(out: &Path, suffix: &str, format: Format) -> PathBuf {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let stem = out.with_extension("");
    let mut name = stem.into_os_string();
    name.push(format!(".{suffix}.{ext}"));
    PathBuf::from(name)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    file.write_all(bytes).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["index", "class", "x"]);
        t.push(vec![0usize.into(), "dark".into(), 0.1.into()]);
        t.push(vec![1usize.into(), "superradiant".into(), 1e-20.into()]);
        t.push(vec![2usize.into(), "subradiant".into(), f64::NAN.into()]);
        t
    }

    #[test]
    fn csv_uses_shortest_round_trip_floats() {
        let text = String::from_utf8(sample().to_csv()).unwrap();
        assert_eq!(text, "index,class,x\n0,dark,0.1\n1,superradiant,1e-20\n2,subradiant,NaN\n");
        for x in [0.1, 1.0 / 3.0, 2.5e-300, -7.0, 0.05 + 1e-17] {
            let rendered = Cell::Float(x).render();
            assert_eq!(rendered.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn json_mirrors_columns() {
        let value: Value = serde_json::from_slice(&sample().to_json()).unwrap();
        assert_eq!(value["class"][1], "superradiant");
        assert_eq!(value["x"][0], 0.1);
        assert!(value["x"][2].is_null());
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["index", "class", "x"]);
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(sidecar_path(Path::new("out/spec.csv"), "features", Format::Csv), PathBuf::from("out/spec.features.csv"));
        assert_eq!(sidecar_path(Path::new("spec"), "meta", Format::Json), PathBuf::from("spec.meta.json"));
    }
}
