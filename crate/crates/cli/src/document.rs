//! The line-oriented poset file format and the other output formats.
//!
//! ```text
//! # comments run to the end of the line
//! d < b        # d is covered by b
//! b < a
//! c < a
//! z            # an isolated point
//! @base d
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use finito::complex::order_complex;
use finito::{Error, FinitePoset, HasseDiagram, Result};
use serde_json::json;

/// A parsed poset file, before the order is checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PosetDocument {
    /// Point names in order of first appearance; a point's index is its position.
    pub labels: Vec<String>,
    /// `(lower, upper)` pairs, deduplicated, in file order.
    pub covers: Vec<(usize, usize)>,
    /// Points declared on a line of their own.
    pub isolated: Vec<usize>,
    pub base: Option<usize>,
    pub warnings: Vec<String>,
}

impl PosetDocument {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        let h = HasseDiagram::new(self.labels.len(), self.covers.clone())
            .with_labels(self.labels.clone());
        FinitePoset::from_covers(&h)
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn identifier(token: &str, line: usize) -> Result<&str> {
    if is_identifier(token) {
        Ok(token)
    } else if token.is_empty() {
        Err(parse_error(line, "expected an identifier"))
    } else {
        Err(parse_error(line, format!("invalid identifier {token:?}")))
    }
}

pub fn parse_poset(text: &str) -> Result<PosetDocument> {
    let mut doc = PosetDocument::default();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen_covers = HashSet::new();
    let mut base: Option<(String, usize)> = None;
    let mut intern = |name: &str, doc: &mut PosetDocument| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            doc.labels.push(name.to_string());
            doc.labels.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('@') {
            let mut words = rest.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("base"), Some(name), None) => {
                    base = Some((identifier(name, line)?.to_string(), line));
                }
                (Some("base"), _, _) => return Err(parse_error(line, "expected `@base NAME`")),
                (Some(other), _, _) => {
                    return Err(parse_error(line, format!("unknown directive @{other}")))
                }
                (None, _, _) => return Err(parse_error(line, "empty directive")),
            }
        } else if let Some((lhs, rhs)) = content.split_once('<') {
            let lo = intern(identifier(lhs.trim(), line)?, &mut doc);
            let hi = intern(identifier(rhs.trim(), line)?, &mut doc);
            if seen_covers.insert((lo, hi)) {
                doc.covers.push((lo, hi));
            } else {
                doc.warnings.push(format!(
                    "line {line}: duplicate cover {} < {} ignored",
                    lhs.trim(),
                    rhs.trim()
                ));
            }
        } else {
            let x = intern(identifier(content, line)?, &mut doc);
            doc.isolated.push(x);
        }
    }
    if let Some((name, line)) = base {
        match index.get(&name) {
            Some(&x) => doc.base = Some(x),
            None => {
                return Err(parse_error(
                    line,
                    format!("basepoint {name} is not a declared point"),
                ))
            }
        }
    }
    if doc.labels.is_empty() {
        return Err(Error::Empty);
    }
    Ok(doc)
}

/// Parses a map file of `src -> dst` lines into the map's value table.
pub fn parse_map(text: &str, src: &FinitePoset, dst: &FinitePoset) -> Result<Vec<usize>> {
    let mut f: Vec<Option<usize>> = vec![None; src.len()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (a, b) = content
            .split_once("->")
            .ok_or_else(|| parse_error(line, "expected `SRC -> DST`"))?;
        let (a, b) = (identifier(a.trim(), line)?, identifier(b.trim(), line)?);
        let x = src
            .index_of(a)
            .ok_or_else(|| parse_error(line, format!("{a} is not a point of the source")))?;
        let y = dst
            .index_of(b)
            .ok_or_else(|| parse_error(line, format!("{b} is not a point of the target")))?;
        match f[x] {
            Some(prev) if prev != y => {
                return Err(parse_error(
                    line,
                    format!("{a} is already sent to {}", dst.label(prev)),
                ))
            }
            _ => f[x] = Some(y),
        }
    }
    let given = f.iter().flatten().count();
    f.into_iter()
        .collect::<Option<Vec<usize>>>()
        .ok_or(Error::MapArity {
            got: given,
            expected: src.len(),
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Poset,
    Json,
    Dot,
    Faces,
}

/// Labels safe to write back out: the poset's own when they are distinct
/// identifiers, point indices otherwise.
pub fn output_labels(p: &FinitePoset) -> Vec<String> {
    if let Some(labels) = p.labels() {
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() == labels.len() && labels.iter().all(|l| is_identifier(l)) {
            return labels.to_vec();
        }
    }
    (0..p.len()).map(|x| x.to_string()).collect()
}

pub fn emit(p: &FinitePoset, base: Option<usize>, format: Format) -> String {
    let labels = output_labels(p);
    let covers = p.hasse().covers;
    let mut out = String::new();
    match format {
        Format::Poset => {
            for &(lo, hi) in &covers {
                let _ = writeln!(out, "{} < {}", labels[lo], labels[hi]);
            }
            for (x, label) in labels.iter().enumerate() {
                if p.is_maximal(x) && p.is_minimal(x) {
                    let _ = writeln!(out, "{label}");
                }
            }
            if let Some(b) = base {
                let _ = writeln!(out, "@base {}", labels[b]);
            }
        }
        Format::Json => {
            let value = json!({
                "labels": labels,
                "covers": covers.iter().map(|&(lo, hi)| [&labels[lo], &labels[hi]]).collect::<Vec<_>>(),
                "base": base.map(|b| labels[b].clone()),
            });
            out = serde_json::to_string_pretty(&value).expect("json value serializes");
            out.push('\n');
        }
        Format::Dot => {
            out.push_str("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
            let levels = p.levels();
            for level in 0..p.height() {
                let members: Vec<String> = (0..p.len())
                    .filter(|&x| levels[x] == level)
                    .map(|x| format!("\"{}\";", labels[x]))
                    .collect();
                let _ = writeln!(out, "  {{ rank=same; {} }}", members.join(" "));
            }
            for &(lo, hi) in &covers {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", labels[lo], labels[hi]);
            }
            out.push_str("}\n");
        }
        Format::Faces => {
            for face in order_complex(p).all_faces() {
                let names: Vec<&str> = face.iter().map(|&v| labels[v].as_str()).collect();
                let _ = writeln!(out, "{}", names.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use finito::spaces::four_point;

    #[test]
    fn singleton() {
        let doc = parse_poset("x").unwrap();
        let p = doc.to_poset().unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(emit(&p, None, Format::Poset), "x\n");
    }

    #[test]
    fn four_point_example() {
        let doc = parse_poset("d < b\nb < a\nc < a").unwrap();
        assert_eq!(doc.labels, vec!["d", "b", "a", "c"]);
        let p = doc.to_poset().unwrap();
        assert!(p.is_homeomorphic(&four_point()));
        assert!(p.lt(p.index_of("d").unwrap(), p.index_of("a").unwrap()));
    }

    #[test]
    fn malformed_cover() {
        assert_eq!(
            parse_poset("a <").unwrap_err(),
            Error::Parse {
                line: 1,
                message: "expected an identifier".into()
            }
        );
        assert!(matches!(
            parse_poset("a\nb - c"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_poset("@base q\na"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_poset("@colour red"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert_eq!(parse_poset("# nothing\n\n").unwrap_err(), Error::Empty);
    }

    #[test]
    fn cycles_are_rejected() {
        let doc = parse_poset("a < b\nb < c\nc < a").unwrap();
        assert!(matches!(doc.to_poset(), Err(Error::Cycle(_))));
        assert!(matches!(
            parse_poset("a < a").unwrap().to_poset(),
            Err(Error::Cycle(0))
        ));
    }

    #[test]
    fn duplicates_warn() {
        let doc = parse_poset("a < b\na < b  # again\n").unwrap();
        assert_eq!(doc.covers, vec![(0, 1)]);
        assert_eq!(doc.warnings.len(), 1);
        assert!(doc.warnings[0].starts_with("line 2"));
    }

    #[test]
    fn comments_isolated_points_and_base() {
        let doc = parse_poset("# header\nz\na < b # inline\n@base b\n").unwrap();
        assert_eq!(doc.labels, vec!["z", "a", "b"]);
        assert_eq!(doc.isolated, vec![0]);
        assert_eq!(doc.base, Some(2));
        let p = doc.to_poset().unwrap();
        assert_eq!(emit(&p, doc.base, Format::Poset), "a < b\nz\n@base b\n");
    }

    #[test]
    fn json_schema() {
        let p = parse_poset("a < b").unwrap().to_poset().unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit(&p, Some(0), Format::Json)).unwrap();
        assert_eq!(
            v,
            json!({"labels": ["a", "b"], "covers": [["a", "b"]], "base": "a"})
        );
    }

    #[test]
    fn faces_use_labels() {
        let p = parse_poset("a < b").unwrap().to_poset().unwrap();
        assert_eq!(emit(&p, None, Format::Faces), "a\nb\na b\n");
    }

    #[test]
    fn unusable_labels_fall_back_to_indices() {
        let p = FinitePoset::chain(2)
            .unwrap()
            .with_labels(vec!["a b".into(), "c".into()]);
        assert_eq!(output_labels(&p), vec!["0", "1"]);
    }

    #[test]
    fn map_files() {
        let src = parse_poset("a < b").unwrap().to_poset().unwrap();
        let dst = parse_poset("x").unwrap().to_poset().unwrap();
        assert_eq!(
            parse_map("a -> x\nb -> x\n", &src, &dst).unwrap(),
            vec![0, 0]
        );
        assert!(parse_map("a -> x\n", &src, &dst).is_err());
        assert!(matches!(
            parse_map("a -> y", &src, &dst),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_map("a x", &src, &dst),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
