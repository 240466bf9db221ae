//! Plain-text cycle documents.
//!
//! ```text
//! rspin-cycle 1
//! n 5
//! r 10
//! dim 1
//! source 3,4,5,5,6
//! tree {1,2} 2/5
//! tree {1,2}{1,2,3} 1
//! ```
//!
//! `r` and `source` are optional (`source` needs `r`). Each `tree` line lists
//! the tree's edges as canonical mark sets (the side without mark `n`), or `.`
//! for the tree without edges, followed by the weight. Lines starting with `#`
//! and blank lines are ignored. Export writes trees in increasing order.

use std::fmt::Write;

use super::cycle::TropicalCycle;
use super::tree::SplitTree;
use crate::error::{Error, Result};
use crate::marks::MarkSet;
use crate::monodromy::{parse_int_list, write_list, MonodromyVector};
use crate::rational::{format, parse, Rational};

pub const HEADER: &str = "rspin-cycle 1";

pub fn export_cycle(c: &TropicalCycle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "n {}", c.n());
    if let Some(r) = c.r() {
        let _ = writeln!(out, "r {r}");
    }
    let _ = writeln!(out, "dim {}", c.dim());
    if let Some(s) = c.source() {
        out.push_str("source ");
        let _ = write_list(&mut out, s.marks());
        out.push('\n');
    }
    for (tree, w) in c.weights() {
        let _ = writeln!(out, "tree {tree} {}", format(w));
    }
    out
}

fn parse_tree(n: usize, text: &str, line: usize) -> Result<SplitTree> {
    if text == "." {
        return SplitTree::new(n, []).map_err(|e| Error::parse(line, "tree", e.to_string()));
    }
    let mut sides = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .and_then(|r| r.split_once('}'))
            .ok_or_else(|| Error::parse(line, "tree", format!("expected {{...}} groups in {text:?}")))?;
        let labels = parse_int_list(body.0).map_err(|m| Error::parse(line, "tree", m))?;
        if labels.iter().any(|&l| l < 1 || l as usize > n) {
            return Err(Error::parse(line, "tree", format!("mark outside 1..={n} in {text:?}")));
        }
        let labels: Vec<usize> = labels.into_iter().map(|l| l as usize).collect();
        sides.push(MarkSet::from_labels(&labels));
        rest = body.1;
    }
    for s in &sides {
        if s.contains(n - 1) {
            return Err(Error::parse(line, "tree", format!("edge {s} is not written on the side without mark {n}")));
        }
    }
    SplitTree::new(n, sides).map_err(|e| Error::parse(line, "tree", e.to_string()))
}

pub fn import_cycle(text: &str) -> Result<TropicalCycle> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((no, _)) => return Err(Error::parse(no, "header", format!("expected {HEADER:?}"))),
        None => return Err(Error::parse(1, "header", "empty document")),
    }
    let (mut n, mut r, mut dim, mut source): (Option<usize>, Option<i64>, Option<usize>, Option<(usize, Vec<i64>)>) =
        (None, None, None, None);
    let mut weights: Vec<(SplitTree, Rational)> = Vec::new();
    for (no, l) in lines {
        let (key, value) = l.split_once(' ').ok_or_else(|| Error::parse(no, l, "expected a key and a value"))?;
        let value = value.trim();
        let int = |field: &str| value.parse::<i64>().map_err(|_| Error::parse(no, field, format!("not an integer: {value:?}")));
        let once = |set: bool, field: &str| if set { Err(Error::parse(no, field, "given twice")) } else { Ok(()) };
        match key {
            "n" => {
                once(n.is_some(), "n")?;
                let v = int("n")?;
                if !(3..63).contains(&v) {
                    return Err(Error::parse(no, "n", "must be in 3..=62"));
                }
                n = Some(v as usize);
            }
            "r" => {
                once(r.is_some(), "r")?;
                r = Some(int("r")?);
            }
            "dim" => {
                once(dim.is_some(), "dim")?;
                let v = int("dim")?;
                dim = Some(usize::try_from(v).map_err(|_| Error::parse(no, "dim", "negative"))?);
            }
            "source" => {
                once(source.is_some(), "source")?;
                source = Some((no, parse_int_list(value).map_err(|m| Error::parse(no, "source", m))?));
            }
            "tree" => {
                let n = n.ok_or_else(|| Error::parse(no, "tree", "`n` must precede trees"))?;
                let (tree, w) = value.rsplit_once(' ').ok_or_else(|| Error::parse(no, "tree", "expected a tree and a weight"))?;
                let tree = parse_tree(n, tree.trim(), no)?;
                let w = parse(w).map_err(|e| Error::parse(no, "weight", e.to_string()))?;
                weights.push((tree, w));
            }
            other => return Err(Error::parse(no, other, "unknown field")),
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "n", "missing"))?;
    let dim = dim.ok_or_else(|| Error::parse(1, "dim", "missing"))?;
    let source = match source {
        None => None,
        Some((no, marks)) => {
            let r = r.ok_or_else(|| Error::parse(no, "source", "needs `r`"))?;
            Some(MonodromyVector::validate(r, &marks).map_err(|e| Error::parse(no, "source", e.to_string()))?)
        }
    };
    TropicalCycle::from_parts(n, r, source, dim, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn round_trip() {
        let v = MonodromyVector::validate(10, &[3, 4, 5, 5, 6]).unwrap();
        let c = TropicalCycle::tropicalize(&v).unwrap();
        let doc = export_cycle(&c);
        assert!(doc.starts_with("rspin-cycle 1\nn 5\nr 10\ndim 1\nsource 3,4,5,5,6\ntree {1,2} 2/5\n"));
        assert_eq!(import_cycle(&doc).unwrap(), c);

        let u = TropicalCycle::unit_fan(5).unwrap();
        assert_eq!(import_cycle(&export_cycle(&u)).unwrap(), u);

        let p = TropicalCycle::tropicalize(&MonodromyVector::validate(10, &[5, 5, 6, 6]).unwrap()).unwrap();
        assert!(export_cycle(&p).ends_with("tree . 2/5\n"));
        assert_eq!(import_cycle(&export_cycle(&p)).unwrap(), p);
    }

    #[test]
    fn boundary_divisor_document() {
        let doc = "rspin-cycle 1\n# a boundary divisor\nn 5\ndim 1\ntree {1,2} -1\ntree {3,4} 1\ntree {1,2,3} 1\ntree {1,2,4} 1\n";
        let c = import_cycle(doc).unwrap();
        assert_eq!(c.ray_weight(MarkSet::from_labels(&[1, 2])).unwrap(), int(-1));
        assert_eq!(c.ray_weight(MarkSet::from_labels(&[5, 3])).unwrap(), int(1));
        assert_eq!(c.support().count(), 4);
        assert_eq!(c.r(), None);
    }

    fn parse_error_line(doc: &str) -> usize {
        match import_cycle(doc) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        assert_eq!(parse_error_line("rspin-cycle 1\nn 6\ndim 2\ntree {1,2}{2,3} 1\n"), 4);
        assert_eq!(parse_error_line("rspin-cycle 1\nn 5\ndim 1\ntree {1,2} 1/0\n"), 4);
        assert_eq!(parse_error_line("rspin-cycle 2\n"), 1);
        assert_eq!(parse_error_line("rspin-cycle 1\nn 5\nn 5\n"), 3);
        assert_eq!(parse_error_line("rspin-cycle 1\nn 5\ndim 1\ntree {1,5} 1\n"), 4);
        assert_eq!(parse_error_line("rspin-cycle 1\nn 5\ndim 1\ncolour blue\n"), 4);
        assert!(import_cycle("rspin-cycle 1\nn 5\ndim 1\ntree {1,2}{1,2,3} 1\n").is_err());
    }
}
