use super::{parse_bitstring, Domain, DomainError, Secret};

/// Parses the domain text format: one secret per line, either a bare 3-bit
/// string or three comma-separated symbols. `#` starts a comment.
///
/// When every symbol is `0` or `1` all three alphabets are `{0,1}`; otherwise
/// each coordinate's alphabet is the sorted set of symbols seen there.
pub fn parse_domain(text: &str) -> Result<Domain, DomainError> {
    let mut rows: Vec<(usize, [String; 3])> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syms: [String; 3] = if line.contains(',') {
            let parts: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if parts.len() != 3 || parts.iter().any(|p| p.is_empty()) {
                return Err(DomainError::Parse { line: n + 1, msg: format!("expected three symbols in `{line}`") });
            }
            [parts[0].clone(), parts[1].clone(), parts[2].clone()]
        } else {
            let b = parse_bitstring(line)
                .ok_or_else(|| DomainError::Parse { line: n + 1, msg: format!("`{line}` is not a 3-bit string") })?;
            let x = Secret::from_bit_index(b);
            x.0.map(|c| c.to_string())
        };
        rows.push((n + 1, syms));
    }
    if rows.is_empty() {
        return Err(DomainError::Empty);
    }
    let binary = rows.iter().all(|(_, s)| s.iter().all(|c| c == "0" || c == "1"));
    let alphabets: [Vec<String>; 3] = [0, 1, 2].map(|c| {
        if binary {
            vec!["0".to_string(), "1".to_string()]
        } else {
            let mut a: Vec<String> = rows.iter().map(|(_, s)| s[c].clone()).collect();
            a.sort();
            a.dedup();
            a
        }
    });
    let mut members = Vec::with_capacity(rows.len());
    for (line, syms) in &rows {
        let idx = [0, 1, 2].map(|c| alphabets[c].iter().position(|a| *a == syms[c]).expect("collected"));
        let x = Secret(idx);
        if members.contains(&x) {
            return Err(DomainError::Parse { line: *line, msg: format!("duplicate secret `{}`", syms.join(",")) });
        }
        members.push(x);
    }
    Domain::new(alphabets, members)
}
