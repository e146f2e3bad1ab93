use super::data::SeifertData;
use crate::error::{Error, Result};
use serde_json::Value;

/// Parses `"g=2 b=1 (2,1) (3,2)"`.
pub fn parse_text(s: &str) -> Result<SeifertData> {
    let bad = |m: &str| Error::Parse(format!("{m} in {s:?}"));
    let mut g = None;
    let mut b = None;
    let mut cones = Vec::new();
    // make "(2, 1)" a single token
    let compact: String = {
        let mut out = String::new();
        let mut depth = 0;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth > 0 && ch.is_whitespace() {
                continue;
            }
            out.push(ch);
        }
        out
    };
    for tok in compact.split_whitespace() {
        if let Some(v) = tok.strip_prefix("g=") {
            g = Some(v.parse::<u32>().map_err(|_| bad("bad genus"))?);
        } else if let Some(v) = tok.strip_prefix("b=") {
            b = Some(v.parse::<i64>().map_err(|_| bad("bad b"))?);
        } else if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let (a, be) = inner.split_once(',').ok_or_else(|| bad("bad cone"))?;
            let a = a.trim().parse::<i64>().map_err(|_| bad("bad cone order"))?;
            let be = be.trim().parse::<i64>().map_err(|_| bad("bad cone invariant"))?;
            cones.push((a, be));
        } else {
            return Err(bad(&format!("unexpected token {tok:?}")));
        }
    }
    SeifertData::new(g.ok_or_else(|| bad("missing g"))?, b.ok_or_else(|| bad("missing b"))?, cones)
}

/// Parses `[g, b, [α₁,β₁], …]` or `{"g":…, "b":…, "cones":[[α,β], …]}`.
pub fn parse_json(v: &Value) -> Result<SeifertData> {
    let bad = || Error::Parse(format!("not a Seifert tuple: {v}"));
    let int = |x: &Value| x.as_i64().ok_or_else(bad);
    let pair = |x: &Value| -> Result<(i64, i64)> {
        match x.as_array().map(|a| a.as_slice()) {
            Some([a, b]) => Ok((int(a)?, int(b)?)),
            _ => Err(bad()),
        }
    };
    match v {
        Value::Array(items) if items.len() >= 2 => {
            let g = u32::try_from(int(&items[0])?).map_err(|_| bad())?;
            let b = int(&items[1])?;
            let cones = items[2..].iter().map(pair).collect::<Result<Vec<_>>>()?;
            SeifertData::new(g, b, cones)
        }
        Value::Object(map) => {
            let g = u32::try_from(int(map.get("g").ok_or_else(bad)?)?).map_err(|_| bad())?;
            let b = int(map.get("b").ok_or_else(bad)?)?;
            let cones = match map.get("cones") {
                Some(Value::Array(cs)) => cs.iter().map(pair).collect::<Result<Vec<_>>>()?,
                None => vec![],
                _ => return Err(bad()),
            };
            SeifertData::new(g, b, cones)
        }
        _ => Err(bad()),
    }
}

/// Accepts either form; JSON is tried when the input starts with `[` or `{`.
pub fn parse_seifert(s: &str) -> Result<SeifertData> {
    let t = s.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        parse_json(&v)
    } else {
        parse_text(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let a = parse_seifert("g=2 b=1 (2,1) (3, 2)").unwrap();
        let b = parse_seifert("[2, 1, [2,1], [3,2]]").unwrap();
        let c = parse_seifert(r#"{"g":2,"b":1,"cones":[[2,1],[3,2]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "g=2 b=1 (2,1) (3,2)");
    }

    #[test]
    fn errors() {
        assert!(parse_seifert("g=2").is_err());
        assert!(parse_seifert("g=2 b=1 (2,4)").is_err());
        assert!(parse_seifert("[2]").is_err());
        assert!(parse_seifert("g=x b=1").is_err());
    }
}
