use nalgebra::Vector2;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error("vertex {index}: {message}")]
    BadVertex { index: usize, message: String },
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFew(usize),
}

/// Parses vertices written as `x,y; x,y; ...`. Newlines also separate
/// vertices, and whitespace may replace the comma inside a vertex.
pub fn parse_polygon(text: &str) -> Result<Vec<Vector2<f64>>, PolygonError> {
    let mut out = Vec::new();
    for (index, chunk) in text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .enumerate()
    {
        let parts: Vec<&str> = chunk
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        if parts.len() != 2 {
            return Err(PolygonError::BadVertex {
                index,
                message: format!("expected two coordinates in {chunk:?}"),
            });
        }
        let mut xy = [0.0; 2];
        for (slot, p) in xy.iter_mut().zip(&parts) {
            *slot = p
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| PolygonError::BadVertex {
                    index,
                    message: format!("bad number {p:?}"),
                })?;
        }
        out.push(Vector2::new(xy[0], xy[1]));
    }
    if out.len() < 3 {
        return Err(PolygonError::TooFew(out.len()));
    }
    Ok(out)
}
