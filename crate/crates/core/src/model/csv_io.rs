use std::io::{self, Write};

use thiserror::Error;

use super::{Instance, ParamError, TypeParams, GENERATOR_ID};

#[derive(Debug, Error)]
pub enum InstanceCsvError {
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("header must be type_1..type_K, got {0:?}")]
    Header(String),
    #[error("line {line}: cannot parse {value:?} as a number")]
    Number { line: u64, value: String },
    #[error("metadata line {0:?}: {1}")]
    Metadata(String, String),
    #[error("metadata lambdas has {found} entries but the header has {expected} columns")]
    LambdaCount { found: usize, expected: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LambdaListError {
    #[error("empty list")]
    Empty,
    #[error("entry {index}: cannot parse {value:?} as a number")]
    Number { index: usize, value: String },
}

/// Parses a list of mean sizes separated by commas or semicolons, e.g.
/// `1,0.25` or `1;0.25`. Positivity is checked by [`TypeParams::new`].
pub fn parse_lambda_list(text: &str) -> Result<Vec<f64>, LambdaListError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(LambdaListError::Empty);
    }
    text.split([',', ';'])
        .enumerate()
        .map(|(index, raw)| {
            raw.trim().parse::<f64>().map_err(|_| LambdaListError::Number {
                index,
                value: raw.to_string(),
            })
        })
        .collect()
}

/// Writes `n` rows of `K` sizes. Values use shortest round-trip formatting,
/// so parsing the output reproduces the instance bit for bit.
pub fn write_instance_csv<W: Write>(instance: &Instance, mut out: W) -> io::Result<()> {
    let lambdas: Vec<String> = instance.params().lambdas().iter().map(f64::to_string).collect();
    writeln!(out, "# generator={GENERATOR_ID}")?;
    writeln!(out, "# seed={}", instance.seed())?;
    writeln!(out, "# lambdas={}", lambdas.join(","))?;
    let header: Vec<String> = (1..=instance.k()).map(|k| format!("type_{k}")).collect();
    writeln!(out, "{}", header.join(","))?;
    for row in instance.rows() {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Reads an instance written by [`write_instance_csv`].
///
/// `# seed=` defaults to 0 and `# lambdas=` to the column means when absent.
/// Unknown metadata keys are ignored.
pub fn parse_instance_csv(text: &str) -> Result<Instance, InstanceCsvError> {
    let mut seed = 0u64;
    let mut lambdas = None;
    for line in text.lines() {
        let Some(meta) = line.trim_start().strip_prefix('#') else {
            continue;
        };
        let Some((key, value)) = meta.split_once('=') else {
            continue;
        };
        match key.trim() {
            "seed" => {
                seed = value
                    .trim()
                    .parse()
                    .map_err(|e| InstanceCsvError::Metadata(line.to_string(), format!("{e}")))?;
            }
            "lambdas" => {
                lambdas = Some(
                    parse_lambda_list(value)
                        .map_err(|e| InstanceCsvError::Metadata(line.to_string(), e.to_string()))?,
                );
            }
            _ => {}
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let k = header.len();
    let well_formed = k > 0
        && header
            .iter()
            .enumerate()
            .all(|(i, name)| name == format!("type_{}", i + 1));
    if !well_formed {
        return Err(InstanceCsvError::Header(header.iter().collect::<Vec<_>>().join(",")));
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>().map_err(|_| InstanceCsvError::Number {
                    line,
                    value: cell.to_string(),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParamError::NoJobs.into());
    }

    let lambdas = match lambdas {
        Some(l) if l.len() != k => {
            return Err(InstanceCsvError::LambdaCount {
                found: l.len(),
                expected: k,
            })
        }
        Some(l) => l,
        None => (0..k)
            .map(|ty| rows.iter().map(|r| r.get(ty).copied().unwrap_or(0.0)).sum::<f64>() / rows.len() as f64)
            .collect(),
    };
    let params = TypeParams::new(lambdas, rows.len())?;
    Ok(Instance::from_sizes(params, seed, rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sample_instance;

    #[test]
    fn round_trip_is_bit_exact() {
        let params = TypeParams::new(vec![1.0, 0.25, 3.5], 40).unwrap();
        let inst = sample_instance(&params, 77);
        let mut buf = Vec::new();
        write_instance_csv(&inst, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# generator="));
        let back = parse_instance_csv(&text).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn metadata_is_optional() {
        let inst = parse_instance_csv("type_1,type_2\n1,3\n3,1\n").unwrap();
        assert_eq!(inst.params().lambdas(), &[2.0, 2.0]);
        assert_eq!(inst.seed(), 0);
        assert_eq!(inst.n(), 2);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_instance_csv("a,b\n1,2\n"),
            Err(InstanceCsvError::Header(_))
        ));
        assert!(matches!(
            parse_instance_csv("type_1\nx\n"),
            Err(InstanceCsvError::Number { .. })
        ));
        assert!(parse_instance_csv("type_1,type_2\n1,2\n3\n").is_err());
        assert!(parse_instance_csv("type_1\n-1\n").is_err());
        assert!(parse_instance_csv("type_1\n").is_err());
        assert!(parse_instance_csv("# lambdas=1,2\ntype_1\n1\n").is_err());
        assert!(parse_instance_csv("# seed=abc\ntype_1\n1\n").is_err());
        assert!(parse_instance_csv("").is_err());
    }

    #[test]
    fn lambda_lists() {
        assert_eq!(parse_lambda_list("1,0.25").unwrap(), vec![1.0, 0.25]);
        assert_eq!(parse_lambda_list(" 1 ; 2;3 ").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_lambda_list(""), Err(LambdaListError::Empty));
        assert!(parse_lambda_list("1,,2").is_err());
        assert!(parse_lambda_list("1,x").is_err());
    }
}
