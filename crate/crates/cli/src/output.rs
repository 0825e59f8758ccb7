//! Energy formatting and CSV/table writers.

use std::io::Write;

use morse_gps::reference::truncate_to;
use morse_gps::units::hartree_to_ev;

pub const TABLE2_DECIMALS: usize = 8;
pub const TABLE3_DECIMALS: usize = 7;
pub const SWEEP_DECIMALS: usize = 7;

/// `−E` in eV, cut to `decimals` places.
pub fn neg_ev(energy_hartree: f64, decimals: usize) -> String {
    truncate_to(-hartree_to_ev(energy_hartree), decimals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

/// Rows of string cells, written as CSV or as a padded text table.
pub struct Rows {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Rows {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Table => self.write_table(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    fn write_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &mut dyn Iterator<Item = &str>| {
            let s: Vec<String> = cells
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            s.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(&mut self.header.iter().copied()))?;
        for row in &self.rows {
            writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Rows {
        let mut r = Rows::new(&["molecule", "n", "neg_energy_ev"]);
        r.push(vec!["H2".into(), "0".into(), "4.47601313".into()]);
        r.push(vec!["LiH".into(), "12".into(), "1.0".into()]);
        r
    }

    #[test]
    fn csv_output() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "molecule,n,neg_energy_ev\nH2,0,4.47601313\nLiH,12,1.0\n"
        );
    }

    #[test]
    fn table_output() {
        let mut buf = Vec::new();
        sample().write(Format::Table, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "molecule  n   neg_energy_ev\nH2        0   4.47601313\nLiH       12  1.0\n"
        );
    }

    #[test]
    fn energies_are_truncated() {
        let e = morse_gps::units::ev_to_hartree(-4.476013139).unwrap();
        assert_eq!(neg_ev(e, 8), "4.47601313");
    }
}
