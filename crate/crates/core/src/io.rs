//! Code files, histogram export and the textual form of F_q elements.
//!
//! A code file is one JSON document:
//!
//! ```json
//! {
//!   "field":  {"p": 3, "h": 1, "m": 3, "modulus": [1, 2, 0, 1]},
//!   "params": {"m": 3, "q": 3, "d": 2, "set": [[2, 0, 0]]},
//!   "words":  [{"tag": {"Pi": [2, 0, 0]}, "a": [[1, 0, 0], [0, 1, 0], [2, 2, 1]]}, …]
//! }
//! ```
//!
//! Elements are little-endian F_p coefficient vectors; tags are `Pi`, `J`
//! (with their parameter), `A1`, `A2`, `Zero` or `Other`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{Component, RankCode};
use crate::error::{Error, Result};
use crate::gfield::{Elt, FieldCtx, FieldDesc};
use crate::linforms::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    Pi(Vec<u32>),
    J(Vec<u32>),
    A1,
    A2,
    Zero,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    pub q: u64,
    pub d: usize,
    pub set: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordEntry {
    pub tag: Tag,
    pub a: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldDesc,
    pub params: Params,
    pub words: Vec<WordEntry>,
}

impl CodeFile {
    pub fn from_code(code: &RankCode) -> CodeFile {
        let ctx = code.ctx();
        let tag = |c: &Component| match *c {
            Component::Pi(a) => Tag::Pi(ctx.coeffs(a)),
            Component::J(b) => Tag::J(ctx.coeffs(b)),
            Component::A1 => Tag::A1,
            Component::A2 => Tag::A2,
            Component::Zero => Tag::Zero,
            Component::Other => Tag::Other,
        };
        CodeFile {
            field: ctx.desc(),
            params: Params {
                m: ctx.m(),
                q: ctx.q(),
                d: code.claimed_distance(),
                set: code.set().iter().map(|&a| ctx.coeffs(a)).collect(),
            },
            words: code
                .entries()
                .map(|(w, c)| WordEntry {
                    tag: tag(c),
                    a: w.to_coeffs(ctx),
                })
                .collect(),
        }
    }

    pub fn to_code(&self) -> Result<RankCode> {
        let ctx = Arc::new(FieldCtx::from_desc(&self.field)?);
        if self.params.m != ctx.m() || self.params.q != ctx.q() {
            return Err(Error::Format("params do not match the field".into()));
        }
        let elt = |c: &[u32]| ctx.from_coeffs(c);
        let set = self
            .params
            .set
            .iter()
            .map(|c| elt(c))
            .collect::<Result<Vec<_>>>()?;
        let entries = self
            .words
            .iter()
            .map(|e| {
                let tag = match &e.tag {
                    Tag::Pi(a) => Component::Pi(elt(a)?),
                    Tag::J(b) => Component::J(elt(b)?),
                    Tag::A1 => Component::A1,
                    Tag::A2 => Component::A2,
                    Tag::Zero => Component::Zero,
                    Tag::Other => Component::Other,
                };
                Ok((Word::from_coeffs(&ctx, &e.a)?, tag))
            })
            .collect::<Result<Vec<_>>>()?;
        RankCode::new(ctx.clone(), self.params.d, set, entries)
    }
}

pub fn write_code(path: &Path, code: &RankCode) -> Result<()> {
    let mut text = serde_json::to_string(&CodeFile::from_code(code))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_code(path: &Path) -> Result<RankCode> {
    let text = fs::read_to_string(path)?;
    let file: CodeFile = serde_json::from_str(&text)?;
    file.to_code()
}

/// Two-column CSV `rank,count`.
pub fn write_histogram_csv(out: &mut impl Write, hist: &BTreeMap<usize, u64>) -> Result<()> {
    writeln!(out, "rank,count")?;
    for (r, c) in hist {
        writeln!(out, "{r},{c}")?;
    }
    Ok(())
}

/// Parses an F_q element: a residue `r` with `0 <= r < p`, or `w^K` for the
/// K-th power of the fixed generator of F_q*.
pub fn parse_fq_element(ctx: &FieldCtx, s: &str) -> Result<Elt> {
    let s = s.trim();
    let bad = || Error::BadElement(format!("{s:?} is not `r` (0 <= r < p) or `w^K`"));
    if let Some(k) = s.strip_prefix("w^") {
        let k: u64 = k.parse().map_err(|_| bad())?;
        return Ok(ctx.pow(ctx.fq_generator(), k));
    }
    let r: u32 = s.parse().map_err(|_| bad())?;
    if r >= ctx.p() {
        return Err(bad());
    }
    Ok(ctx.from_int(r as i64))
}

/// Comma-separated list of [`parse_fq_element`] items; empty string is the
/// empty list.
pub fn parse_fq_list(ctx: &FieldCtx, s: &str) -> Result<Vec<Elt>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_fq_element(ctx, t))
        .collect()
}

/// Inverse of [`parse_fq_element`]: residues for prime-field elements,
/// `w^K` otherwise.
pub fn fq_label(ctx: &FieldCtx, a: Elt) -> String {
    let c = ctx.coeffs(a);
    if c[1..].iter().all(|&d| d == 0) {
        c[0].to_string()
    } else {
        format!("w^{}", ctx.fq_index(a).map_or(0, |i| i - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_family;

    #[test]
    fn roundtrip_family() {
        let ctx = Arc::new(FieldCtx::new(3, 1, 3, None).unwrap());
        let code = build_family(ctx.clone(), &[ctx.from_int(2)]).unwrap();
        let file = CodeFile::from_code(&code);
        let text = serde_json::to_string(&file).unwrap();
        let back: CodeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let code2 = back.to_code().unwrap();
        assert_eq!(code2.len(), 729);
        assert!(code.entries().zip(code2.entries()).all(|(a, b)| a == b));
        assert_eq!(code2.set(), code.set());
    }

    #[test]
    fn element_grammar() {
        let ctx = FieldCtx::new(2, 2, 3, None).unwrap();
        let w = parse_fq_element(&ctx, "w^1").unwrap();
        assert_eq!(w, ctx.fq_generator());
        assert_eq!(parse_fq_element(&ctx, "1").unwrap(), Elt::ONE);
        assert!(parse_fq_element(&ctx, "2").is_err());
        assert!(parse_fq_element(&ctx, "w^x").is_err());
        assert_eq!(fq_label(&ctx, w), "w^1");
        assert_eq!(fq_label(&ctx, Elt::ONE), "1");
        assert_eq!(parse_fq_list(&ctx, "w^1, w^2").unwrap().len(), 2);
        assert!(parse_fq_list(&ctx, "").unwrap().is_empty());
        let f27 = FieldCtx::new(3, 1, 3, None).unwrap();
        assert_eq!(fq_label(&f27, f27.from_int(2)), "2");
    }

    #[test]
    fn histogram_csv() {
        let mut buf = Vec::new();
        write_histogram_csv(&mut buf, &BTreeMap::from([(2, 5), (3, 7)])).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "rank,count\n2,5\n3,7\n");
    }
}
