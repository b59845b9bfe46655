use num::{BigInt, Num};

use super::{Axis, Exact, InfoError, JointPmf};

/// Parses `p/q`, an integer, or a plain decimal such as `0.125` into an exact value.
pub fn parse_probability(s: &str) -> Option<Exact> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str_radix(n.trim(), 10).ok()?;
        let d = BigInt::from_str_radix(d.trim(), 10).ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Exact::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n = BigInt::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).ok()?;
    Some(Exact::new(n, BigInt::from(10).pow(frac.len() as u32)))
}

/// Parses the pmf text format:
///
/// ```text
/// axes X:0,1 Y:0,1
/// 0 0 1/3
/// 0 1 1/3
/// 1 0 1/3
/// ```
///
/// The header lists every axis as `name:sym,sym,...`; each further line gives
/// one symbol per axis and a probability (`p/q` or decimal). `#` starts a comment.
pub fn parse_pmf(text: &str) -> Result<JointPmf<Exact>, InfoError> {
    let mut axes: Option<Vec<Axis>> = None;
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| InfoError::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match &axes {
            None => {
                if tokens.next() != Some("axes") {
                    return Err(err("expected an `axes` header".into()));
                }
                let parsed: Result<Vec<Axis>, InfoError> = tokens
                    .map(|t| {
                        let (name, syms) = t.split_once(':').ok_or_else(|| err(format!("bad axis `{t}`")))?;
                        let alphabet: Vec<String> = syms.split(',').map(str::to_string).collect();
                        if name.is_empty() || alphabet.iter().any(String::is_empty) {
                            return Err(err(format!("bad axis `{t}`")));
                        }
                        Ok(Axis { name: name.to_string(), alphabet })
                    })
                    .collect();
                let parsed = parsed?;
                if parsed.is_empty() {
                    return Err(err("no axes declared".into()));
                }
                axes = Some(parsed);
            }
            Some(ax) => {
                let toks: Vec<&str> = tokens.collect();
                if toks.len() != ax.len() + 1 {
                    return Err(err(format!("expected {} symbols and a probability", ax.len())));
                }
                let mut outcome = Vec::with_capacity(ax.len());
                for (t, a) in toks.iter().zip(ax) {
                    let i = a
                        .alphabet
                        .iter()
                        .position(|s| s == t)
                        .ok_or_else(|| err(format!("`{t}` is not in the alphabet of {}", a.name)))?;
                    outcome.push(i);
                }
                let prob = parse_probability(toks[ax.len()])
                    .ok_or_else(|| err(format!("bad probability `{}`", toks[ax.len()])))?;
                entries.push((outcome, prob));
            }
        }
    }
    let axes = axes.ok_or(InfoError::Parse { line: 0, msg: "missing `axes` header".into() })?;
    JointPmf::new(axes, entries)
}

impl JointPmf<Exact> {
    pub fn to_text(&self) -> String {
        let header: Vec<String> = self.axes().iter().map(|a| format!("{}:{}", a.name, a.alphabet.join(","))).collect();
        let mut out = format!("axes {}\n", header.join(" "));
        for (o, w) in self.iter() {
            out.push_str(&format!("{} {}\n", self.format_outcome(o), w));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::ratio;
    use super::*;

    #[test]
    fn probabilities() {
        assert_eq!(parse_probability("1/3"), Some(ratio(1, 3)));
        assert_eq!(parse_probability("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_probability("1"), Some(ratio(1, 1)));
        assert_eq!(parse_probability(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_probability("1/0"), None);
        assert_eq!(parse_probability("-1"), None);
        assert_eq!(parse_probability("abc"), None);
    }

    #[test]
    fn triangle_round_trip() {
        let text = "# uniform on three corners\naxes X:0,1 Y:0,1\n0 0 1/3\n0 1 1/3\n1 0 1/3\n";
        let p = parse_pmf(text).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_pmf(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pmf("0 0 1\n"), Err(InfoError::Parse { line: 1, .. })));
        assert!(matches!(parse_pmf("axes X:0,1\n2 1\n"), Err(InfoError::Parse { line: 2, .. })));
        assert!(matches!(parse_pmf("axes X:0,1\n0 1/2\n"), Err(InfoError::NotNormalized(_))));
    }
}
