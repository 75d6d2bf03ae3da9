//! Tabular output in three encodings that carry the same fields.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text for people.
    Table,
    /// Header row plus one record per row.
    Csv,
    /// JSON Lines: one object per row.
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Missing,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Self::Text(s.into())
    }

    /// Float rounded to `decimals` places so every encoding prints the same digits.
    pub fn rounded(x: f64, decimals: i32) -> Self {
        let scale = 10f64.powi(decimals);
        Self::Float((x * scale).round() / scale)
    }

    fn render(&self) -> String {
        match self {
            Self::Text(s) => s.clone(),
            Self::Int(i) => i.to_string(),
            Self::Float(x) => x.to_string(),
            Self::Missing => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Text(s) => Value::String(s.clone()),
            Self::Int(i) => Value::from(*i),
            Self::Float(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Self::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Footnotes, shown only in table format.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table if self.rows.len() == 1 => self.write_record(out),
            Format::Table => self.write_table(out),
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_record(&self, out: &mut dyn Write) -> io::Result<()> {
        let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
        for (name, cell) in self.columns.iter().zip(&self.rows[0]) {
            writeln!(out, "{name:<width$}  {}", cell.render())?;
        }
        self.write_notes(out)
    }

    fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, name)| {
                rendered
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([name.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_owned()
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for row in &rendered {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        self.write_notes(out)
    }

    fn write_notes(&self, out: &mut dyn Write) -> io::Result<()> {
        for note in &self.notes {
            writeln!(out, "note: {note}")?;
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::render))?;
        }
        writer.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        for row in &self.rows {
            let object: Map<String, Value> = self
                .columns
                .iter()
                .zip(row)
                .map(|(name, cell)| (name.to_string(), cell.to_json()))
                .collect();
            serde_json::to_writer(&mut *out, &object)?;
            writeln!(out)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(vec!["name", "n", "x"]);
        r.push(vec![Cell::text("a, b"), Cell::Int(3), Cell::Float(0.5)]);
        r.push(vec![Cell::text("c"), Cell::Int(-1), Cell::Missing]);
        r.note("footnote");
        r
    }

    fn render(r: &Report, f: Format) -> String {
        let mut buf = Vec::new();
        r.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn encodings() {
        let r = sample();
        assert_eq!(render(&r, Format::Csv), "name,n,x\n\"a, b\",3,0.5\nc,-1,\n");
        assert_eq!(
            render(&r, Format::Json),
            "{\"name\":\"a, b\",\"n\":3,\"x\":0.5}\n{\"name\":\"c\",\"n\":-1,\"x\":null}\n"
        );
        assert_eq!(
            render(&r, Format::Table),
            "name  n   x\na, b  3   0.5\nc     -1\nnote: footnote\n"
        );
    }

    #[test]
    fn single_row_is_a_record() {
        let mut r = Report::new(vec!["length", "text"]);
        r.push(vec![Cell::Int(5), Cell::text("me we")]);
        assert_eq!(render(&r, Format::Table), "length  5\ntext    me we\n");
    }

    #[test]
    fn rounding() {
        assert_eq!(Cell::rounded(1.234_567, 4), Cell::Float(1.2346));
    }
}
