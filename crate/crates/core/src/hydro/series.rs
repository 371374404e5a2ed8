use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};

/// Column order of the catchment CSV schema.
pub const CSV_COLUMNS: [&str; 4] = ["date", "precip_mm", "pet_mm", "flow_mm"];

/// Daily forcing and observed streamflow on consecutive days.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HydroSeries {
    dates: Vec<NaiveDate>,
    precip: Vec<f64>,
    pet: Vec<f64>,
    flow: Vec<f64>,
}

impl HydroSeries {
    pub fn new(
        dates: Vec<NaiveDate>,
        precip: Vec<f64>,
        pet: Vec<f64>,
        flow: Vec<f64>,
    ) -> Result<Self> {
        let n = dates.len();
        for len in [precip.len(), pet.len(), flow.len()] {
            if len != n {
                return Err(Error::Dimension {
                    left: n,
                    right: len,
                });
            }
        }
        if n == 0 {
            return Err(Error::invalid("series must contain at least one day"));
        }
        for (i, pair) in dates.windows(2).enumerate() {
            if pair[0].succ_opt() != Some(pair[1]) {
                return Err(Error::invalid(format!(
                    "day {}: dates must increase by exactly one day ({} then {})",
                    i + 1,
                    pair[0],
                    pair[1]
                )));
            }
        }
        for (name, values) in [("precip", &precip), ("pet", &pet), ("flow", &flow)] {
            if let Some(i) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::invalid(format!(
                    "{name} on {} must be finite and non-negative, got {}",
                    dates[i], values[i]
                )));
            }
        }
        Ok(HydroSeries {
            dates,
            precip,
            pet,
            flow,
        })
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn precip(&self) -> &[f64] {
        &self.precip
    }

    pub fn pet(&self) -> &[f64] {
        &self.pet
    }

    pub fn flow(&self) -> &[f64] {
        &self.flow
    }

    pub fn start(&self) -> NaiveDate {
        self.dates[0]
    }

    pub fn end(&self) -> NaiveDate {
        self.dates[self.len() - 1]
    }

    /// Index of `date`, if it lies inside the series.
    pub fn index_of(&self, date: NaiveDate) -> Option<usize> {
        let offset = (date - self.start()).num_days();
        (0..self.len() as i64)
            .contains(&offset)
            .then_some(offset as usize)
    }

    /// Copy with the observed flow replaced.
    pub fn with_flow(&self, flow: Vec<f64>) -> Result<Self> {
        Self::new(
            self.dates.clone(),
            self.precip.clone(),
            self.pet.clone(),
            flow,
        )
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    /// Parses the `date,precip_mm,pet_mm,flow_mm` schema. Line numbers in
    /// errors count the header as line 1.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Parse {
                line: 1,
                message: e.to_string(),
            })?
            .clone();
        let mut index = [0usize; 4];
        for (slot, name) in index.iter_mut().zip(CSV_COLUMNS) {
            *slot = headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("missing column '{name}'"),
                })?;
        }

        let (mut dates, mut precip, mut pet, mut flow) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (row, record) in rdr.records().enumerate() {
            let line = row + 2;
            let record = record.map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            let field = |k: usize| -> Result<&str> {
                match record.get(index[k]) {
                    Some(s) if !s.is_empty() => Ok(s),
                    _ => Err(Error::Parse {
                        line,
                        message: format!("missing value for '{}'", CSV_COLUMNS[k]),
                    }),
                }
            };
            let date =
                NaiveDate::parse_from_str(field(0)?, "%Y-%m-%d").map_err(|e| Error::Parse {
                    line,
                    message: format!("bad date '{}': {e}", field(0).unwrap_or_default()),
                })?;
            if let Some(prev) = dates.last() {
                let prev: &NaiveDate = prev;
                if prev.succ_opt() != Some(date) {
                    return Err(Error::Parse {
                        line,
                        message: format!("date gap: {prev} is followed by {date}"),
                    });
                }
            }
            let mut values = [0.0; 3];
            for (k, v) in values.iter_mut().enumerate() {
                let raw = field(k + 1)?;
                *v = raw.parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse {} value '{raw}'", CSV_COLUMNS[k + 1]),
                })?;
                if !v.is_finite() || *v < 0.0 {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "{} must be finite and non-negative, got {raw}",
                            CSV_COLUMNS[k + 1]
                        ),
                    });
                }
            }
            dates.push(date);
            precip.push(values[0]);
            pet.push(values[1]);
            flow.push(values[2]);
        }
        if dates.is_empty() {
            return Err(Error::Parse {
                line: 2,
                message: "no data rows".into(),
            });
        }
        Self::new(dates, precip, pet, flow)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::invalid(e.to_string());
        w.write_record(CSV_COLUMNS).map_err(io)?;
        for i in 0..self.len() {
            w.write_record([
                self.dates[i].format("%Y-%m-%d").to_string(),
                self.precip[i].to_string(),
                self.pet[i].to_string(),
                self.flow[i].to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
