//! Data files: UTF-8 text, one real per line, `#` starts a comment.
//! Null-distribution tables use two reals per line (`y F0(y)`), separated
//! by whitespace or a comma.

use crate::error::CliError;
use exact_svar_core::scale_test::NullCdfSpec;
use std::path::Path;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_real(line_no: usize, tok: &str) -> Result<f64, CliError> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Data(format!("line {line_no}: '{tok}' is not a finite real number"))),
    }
}

/// Values of a sample file, in file order.
pub fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for (no, line) in content_lines(text) {
        out.push(parse_real(no, line)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage("data file holds no values".into()));
    }
    Ok(out)
}

/// Knots `(y, F0(y))` of a table file.
pub fn parse_table(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let mut out = Vec::new();
    for (no, line) in content_lines(text) {
        let toks: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if toks.len() != 2 {
            return Err(CliError::Data(format!("line {no}: expected two values")));
        }
        out.push((parse_real(no, toks[0])?, parse_real(no, toks[1])?));
    }
    if out.is_empty() {
        return Err(CliError::Usage("table file holds no knots".into()));
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_values(path: &Path) -> Result<Vec<f64>, CliError> {
    parse_values(&read(path)?)
}

/// `table:PATH` reads a knot file; anything else is a builtin such as
/// `uniform`, `normal:0,1` or `gamma:2,1`.
pub fn parse_null_spec(spec: &str) -> Result<NullCdfSpec, CliError> {
    if let Some(path) = spec.strip_prefix("table:") {
        let knots = parse_table(&read(Path::new(path))?)?;
        return NullCdfSpec::table(knots).map_err(|e| CliError::Data(e.to_string()));
    }
    NullCdfSpec::parse_builtin(spec).map_err(|e| CliError::Usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_with_comments() {
        let v = parse_values("# header\n0.1\n\n 0.2 # inline\n3e-1\n").unwrap();
        assert_eq!(v, vec![0.1, 0.2, 0.3]);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_values("0.1\n# c\nabc\n").unwrap_err();
        assert!(matches!(&e, CliError::Data(m) if m.contains("line 3")), "{e}");
        assert!(matches!(parse_values("# nothing\n"), Err(CliError::Usage(_))));
        assert!(matches!(parse_values("nan"), Err(CliError::Data(_))));
    }

    #[test]
    fn table_lines() {
        let t = parse_table("0 0\n1, 0.5\n2\t1\n").unwrap();
        assert_eq!(t, vec![(0.0, 0.0), (1.0, 0.5), (2.0, 1.0)]);
        assert!(parse_table("0 0 0").is_err());
    }
}
