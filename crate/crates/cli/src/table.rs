//! Incidence matrices as CSV: a header of monomials (first cell empty), then
//! one row per variable.

use staged_core::analyze::IncidenceMatrix;

use crate::error::CliError;

pub fn incidence_to_csv(m: &IncidenceMatrix) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    let mut header = vec![String::new()];
    header.extend(m.cols().iter().map(|c| c.to_string()));
    w.write_record(&header).map_err(internal)?;
    for (x, row) in m.rows().iter().zip(m.entries()) {
        let mut record = vec![x.name().to_string()];
        record.extend(row.iter().map(|a| a.to_string()));
        w.write_record(&record).map_err(internal)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
