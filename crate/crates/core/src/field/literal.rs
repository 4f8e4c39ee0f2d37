//! Text literals: `p^n` or `p^n:c0,c1,...` for fields and `[a0,a1,...]` for elements.

use super::{make_field, FFElem, FieldError, FieldSpec};

fn bad(s: &str, why: impl Into<String>) -> FieldError {
    FieldError::Literal(s.to_string(), why.into())
}

fn parse_list(s: &str, body: &str) -> Result<Vec<i64>, FieldError> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| bad(s, format!("{t:?}: {e}")))
        })
        .collect()
}

/// Parses `p^n` (canonical field) or `p^n:c0,...,cn`, in which case the listed
/// modulus must be the canonical one.
pub fn parse_field(s: &str) -> Result<FieldSpec, FieldError> {
    let (head, modulus) = match s.split_once(':') {
        Some((h, m)) => (h, Some(m)),
        None => (s, None),
    };
    let (p, n) = match head.split_once('^') {
        Some((p, n)) => (p.trim(), n.trim()),
        None => (head.trim(), "1"),
    };
    let p: u64 = p.parse().map_err(|_| bad(s, "characteristic"))?;
    let n: u32 = n.parse().map_err(|_| bad(s, "degree"))?;
    let field = make_field(p, n)?;
    if let Some(m) = modulus {
        let coeffs = parse_list(s, m)?;
        let canonical: Vec<i64> = field.modulus().iter().map(|&c| c as i64).collect();
        if coeffs != canonical {
            return Err(bad(s, format!("modulus is not the canonical {field}")));
        }
    }
    Ok(field)
}

/// Parses `[a0,a1,...]` (or a bare integer for a prime-subfield element) in `field`.
pub fn parse_element(field: &FieldSpec, s: &str) -> Result<FFElem, FieldError> {
    let t = s.trim();
    let coeffs = match t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Some(body) => parse_list(s, body)?,
        None => vec![t.parse::<i64>().map_err(|_| bad(s, "expected [a0,a1,...]"))?],
    };
    if coeffs.len() > field.n() as usize {
        return Err(bad(s, format!("more than {} coordinates", field.n())));
    }
    if coeffs.iter().any(|&c| c < 0 || c as u64 >= field.p()) {
        return Err(bad(s, format!("coordinates must lie in [0, {})", field.p())));
    }
    field.elem(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_literals() {
        let f9 = parse_field("3^2").unwrap();
        assert_eq!(f9.to_string(), "3^2:1,0,1");
        assert_eq!(parse_field("3^2:1,0,1").unwrap(), f9);
        assert!(parse_field("3^2:2,1,1").is_err());
        assert_eq!(parse_field("7").unwrap().q(), 7);
        assert!(parse_field("6^1").is_err());
    }

    #[test]
    fn element_literals() {
        let f9 = parse_field("3^2").unwrap();
        let a = parse_element(&f9, "[0,1]").unwrap();
        assert_eq!(a, f9.alpha());
        assert_eq!(a.to_string(), "[0,1]");
        assert_eq!(parse_element(&f9, "2").unwrap(), f9.from_int(2));
        assert!(parse_element(&f9, "[0,3]").is_err());
        assert!(parse_element(&f9, "[0,1,1]").is_err());
    }
}
