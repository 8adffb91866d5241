use sfcurve::{Point, Rect};

use crate::failure::Failure;

pub fn parse_numbers(s: &str, count: usize) -> Result<Vec<f64>, Failure> {
    let values = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("`{part}` is not a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != count {
        return Err(Failure::usage(format!(
            "expected {count} comma-separated numbers, got {}",
            values.len()
        )));
    }
    Ok(values)
}

pub fn parse_point(s: &str) -> Result<Point, Failure> {
    let v = parse_numbers(s, 2)?;
    Ok(Point::new(v[0], v[1]))
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), Failure> {
    let v = parse_numbers(s, 2)?;
    Ok((v[0], v[1]))
}

/// `x_lo,x_hi,y_lo,y_hi`.
pub fn parse_rect(s: &str) -> Result<Rect, Failure> {
    let v = parse_numbers(s, 4)?;
    Rect::new(v[0], v[1], v[2], v[3]).map_err(|e| Failure::usage(e.to_string()))
}
