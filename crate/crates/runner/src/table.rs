//! Tabular output: a `# key=value` metadata block followed by CSV rows, or the
//! same content as JSON.

use std::io::{self, BufRead, Write};

/// Errors reading or writing tables.
#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("malformed metadata line `{0}`")]
    Metadata(String),
    #[error("output is not UTF-8")]
    Utf8(#[from] std::string::FromUtf8Error),
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(n) => Some(*n as f64),
            Cell::Text(_) => None,
        }
    }

    fn parse(field: &str) -> Cell {
        if let Ok(n) = field.parse::<u64>() {
            return Cell::Int(n);
        }
        match field.parse::<f64>() {
            Ok(x) => Cell::Float(x),
            Err(_) => Cell::Text(field.to_string()),
        }
    }
}

/// Seventeen significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Float(x) => f.write_str(&format_float(*x)),
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<(), TableError> {
        for (k, v) in &self.metadata {
            writeln!(w, "# {k}={v}")?;
        }
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(&self.columns)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(|c| c.to_string()))?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn write_json(&self, mut w: impl Write) -> Result<(), TableError> {
        let s = |x: &str| serde_json::to_string(x).expect("strings always serialize");
        writeln!(w, "{{")?;
        writeln!(w, "  \"metadata\": {{")?;
        for (i, (k, v)) in self.metadata.iter().enumerate() {
            let sep = if i + 1 < self.metadata.len() { "," } else { "" };
            writeln!(w, "    {}: {}{sep}", s(k), s(v))?;
        }
        writeln!(w, "  }},")?;
        writeln!(w, "  \"rows\": [")?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, cell)| {
                    let value = match cell {
                        Cell::Float(x) if !x.is_finite() => "null".to_string(),
                        Cell::Text(t) => s(t),
                        other => other.to_string(),
                    };
                    format!("{}: {value}", s(c))
                })
                .collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, "    {{{}}}{sep}", fields.join(", "))?;
        }
        writeln!(w, "  ]")?;
        writeln!(w, "}}")?;
        Ok(())
    }

    /// Parses the CSV layout written by [`Table::write_csv`].
    pub fn read_csv(r: impl BufRead) -> Result<Table, TableError> {
        let mut metadata = Vec::new();
        let mut body = String::new();
        for line in r.lines() {
            let line = line?;
            if let Some(meta) = line.strip_prefix('#') {
                let (k, v) = meta
                    .trim_start()
                    .split_once('=')
                    .ok_or_else(|| TableError::Metadata(line.clone()))?;
                metadata.push((k.to_string(), v.to_string()));
            } else {
                body.push_str(&line);
                body.push('\n');
            }
        }
        let mut csv = csv::Reader::from_reader(body.as_bytes());
        let columns = csv.headers()?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for record in csv.records() {
            rows.push(record?.iter().map(Cell::parse).collect());
        }
        Ok(Table { metadata, columns, rows })
    }
}

/// Writes `table` in the requested format to `w`.
pub fn write(table: &Table, format: crate::config::Format, w: impl Write) -> Result<(), TableError> {
    match format {
        crate::config::Format::Csv => table.write_csv(w),
        crate::config::Format::Json => table.write_json(w),
    }
}

/// Convenience for in-memory rendering.
pub fn render(table: &Table, format: crate::config::Format) -> Result<String, TableError> {
    let mut buf = Vec::new();
    write(table, format, io::Cursor::new(&mut buf))?;
    Ok(String::from_utf8(buf)?)
}
