use std::collections::BTreeMap;

use super::{Scheme, SchemeError};
use crate::domain::{Domain, Secret};
use crate::info::{parse_probability, Exact};

/// Parses the scheme text format:
///
/// ```text
/// alphabets 0,1 | 0,1 | 0,1
/// shares 0,1 | 0,1 | 0,1
/// randomness 0:1/2 1:1/2
/// 0,0,0 | 0 | 0 0 0
/// 0,0,0 | 1 | 1 1 1
/// ```
///
/// `alphabets` lists the secret alphabets, `shares` the W12/W23/W31 alphabets
/// (inferred from the rows when omitted), `randomness` each value with its
/// probability. Every row is `x1,x2,x3 | r | w12 w23 w31`, and every
/// (secret, randomness) pair must appear exactly once. `#` starts a comment.
pub fn parse_scheme(text: &str) -> Result<Scheme, SchemeError> {
    let mut alphabets: Option<[Vec<String>; 3]> = None;
    let mut shares: Option<[Vec<String>; 3]> = None;
    let mut randomness: Option<Vec<(String, Exact)>> = None;
    let mut rows: Vec<(usize, [String; 3], String, [String; 3])> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| SchemeError::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabets ") {
            alphabets = Some(triple_of_lists(rest).ok_or_else(|| err("expected three `|`-separated alphabets".into()))?);
        } else if let Some(rest) = line.strip_prefix("shares ") {
            shares = Some(triple_of_lists(rest).ok_or_else(|| err("expected three `|`-separated alphabets".into()))?);
        } else if let Some(rest) = line.strip_prefix("randomness ") {
            let mut r = Vec::new();
            for tok in rest.split_whitespace() {
                let (name, p) = tok.split_once(':').ok_or_else(|| err(format!("expected `value:p/q`, got `{tok}`")))?;
                let p = parse_probability(p).ok_or_else(|| err(format!("bad probability `{p}`")))?;
                r.push((name.to_string(), p));
            }
            randomness = Some(r);
        } else {
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(err("expected `x1,x2,x3 | r | w12 w23 w31`".into()));
            }
            let secret: Vec<String> = parts[0].split(',').map(|s| s.trim().to_string()).collect();
            let w: Vec<String> = parts[2].split_whitespace().map(str::to_string).collect();
            if secret.len() != 3 || w.len() != 3 {
                return Err(err("expected three secret symbols and three shares".into()));
            }
            rows.push((
                line_no,
                [secret[0].clone(), secret[1].clone(), secret[2].clone()],
                parts[1].to_string(),
                [w[0].clone(), w[1].clone(), w[2].clone()],
            ));
        }
    }

    let missing = |what: &str| SchemeError::Parse { line: 0, msg: format!("missing `{what}` header") };
    let alphabets = alphabets.ok_or_else(|| missing("alphabets"))?;
    let randomness = randomness.ok_or_else(|| missing("randomness"))?;

    let mut table: BTreeMap<Secret, Vec<Option<[String; 3]>>> = BTreeMap::new();
    for (line, sx, r, w) in rows {
        let err = |msg: String| SchemeError::Parse { line, msg };
        let mut idx = [0usize; 3];
        for c in 0..3 {
            idx[c] = alphabets[c]
                .iter()
                .position(|a| *a == sx[c])
                .ok_or_else(|| err(format!("`{}` is not in alphabet X{}", sx[c], c + 1)))?;
        }
        let ri = randomness
            .iter()
            .position(|(name, _)| *name == r)
            .ok_or_else(|| err(format!("unknown randomness value `{r}`")))?;
        let slot = &mut table.entry(Secret(idx)).or_insert_with(|| vec![None; randomness.len()])[ri];
        if slot.is_some() {
            return Err(err(format!("row for ({}, {r}) given twice", sx.join(","))));
        }
        *slot = Some(w);
    }

    let members: Vec<Secret> = table.keys().copied().collect();
    let domain = Domain::new(alphabets, members)?;
    let mut raw = Vec::with_capacity(table.len());
    for (x, row) in table {
        let complete: Option<Vec<[String; 3]>> = row.into_iter().collect();
        raw.push(complete.ok_or_else(|| SchemeError::Parse {
            line: 0,
            msg: format!("secret {} lacks a row for some randomness value", domain.format_secret(&x)),
        })?);
    }
    match shares {
        Some(shares) => Scheme::from_symbols(domain, randomness, shares, raw),
        None => {
            let shares = [0, 1, 2].map(|e| {
                let mut a: Vec<String> = raw.iter().flatten().map(|w| w[e].clone()).collect();
                a.sort();
                a.dedup();
                a
            });
            Scheme::from_symbols(domain, randomness, shares, raw)
        }
    }
}

fn triple_of_lists(s: &str) -> Option<[Vec<String>; 3]> {
    let parts: Vec<Vec<String>> =
        s.split('|').map(|p| p.trim().split(',').map(|t| t.trim().to_string()).collect()).collect();
    if parts.len() != 3 || parts.iter().flatten().any(String::is_empty) {
        return None;
    }
    Some([parts[0].clone(), parts[1].clone(), parts[2].clone()])
}

impl Scheme {
    pub fn to_text(&self) -> String {
        let lists = |a: &[Vec<String>; 3]| a.iter().map(|l| l.join(",")).collect::<Vec<_>>().join(" | ");
        let mut out = format!("alphabets {}\n", lists(self.domain().alphabets()));
        out.push_str(&format!("shares {}\n", lists(self.share_alphabets())));
        let r: Vec<String> = self.randomness().iter().map(|(n, p)| format!("{n}:{p}")).collect();
        out.push_str(&format!("randomness {}\n", r.join(" ")));
        let d = self.domain();
        for (m, x) in d.members().iter().enumerate() {
            let sx: Vec<&str> = (0..3).map(|c| d.symbol(c, x.coord(c))).collect();
            for (ri, (rname, _)) in self.randomness().iter().enumerate() {
                let w = self.shares(m, ri);
                let ws: Vec<&str> = (0..3).map(|e| self.share_alphabets()[e][w[e]].as_str()).collect();
                out.push_str(&format!("{} | {} | {}\n", sx.join(","), rname, ws.join(" ")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{canonical_scheme, validity_domain, verify};
    use super::*;

    #[test]
    fn round_trip_canonical() {
        for id in 1..=5 {
            let s = canonical_scheme(id, &validity_domain(id).unwrap()).unwrap();
            let text = s.to_text();
            let back = parse_scheme(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn parity_by_hand() {
        let text = "alphabets 0,1 | 0,1 | 0,1\nrandomness a:1/2 b:1/2\n\
                    0,0,0 | a | 0 0 0\n0,0,0 | b | 1 1 1\n0,1,1 | a | 1 0 1\n0,1,1 | b | 0 1 0\n";
        let s = parse_scheme(text).unwrap();
        assert_eq!(s.domain().len(), 2);
        assert!(verify(&s).passed());
    }

    #[test]
    fn incomplete_rows() {
        let text = "alphabets 0,1 | 0,1 | 0,1\nrandomness a:1/2 b:1/2\n0,0,0 | a | 0 0 0\n";
        assert!(matches!(parse_scheme(text), Err(SchemeError::Parse { .. })));
        let text = "alphabets 0,1 | 0,1 | 0,1\nrandomness a:1\n0,0,0 | a | 0 0 0\n0,0,0 | a | 0 0 0\n";
        assert!(matches!(parse_scheme(text), Err(SchemeError::Parse { line: 4, .. })));
    }
}
