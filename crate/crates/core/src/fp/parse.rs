//! The `.grp` presentation text format.
//!
//! ```text
//! group S3
//! gens a b
//! rel a^2
//! rel b^2
//! rel (a b)^3
//! ```
//!
//! Factors are `x`, `x^n`, `( word )^n` or the commutator `[u,v]` which
//! expands to `u v u^-1 v^-1`. `#` starts a comment. A file may hold several
//! `group` blocks. Callers can allow extra keyword lines (for example
//! `central <word>` in extension files).

use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};

/// One `group` block with any extra keyword lines it carried.
#[derive(Clone, Debug)]
pub struct ParsedBlock {
    pub presentation: Presentation,
    pub extras: Vec<(String, Word)>,
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut blocks = parse_blocks(text, &[])?;
    if blocks.len() != 1 {
        return Err(Error::Parse { line: 0, msg: format!("expected one group block, found {}", blocks.len()) });
    }
    Ok(blocks.remove(0).presentation)
}

pub fn parse_presentations(text: &str) -> Result<Vec<Presentation>> {
    Ok(parse_blocks(text, &[])?.into_iter().map(|b| b.presentation).collect())
}

pub fn parse_blocks(text: &str, extra_keywords: &[&str]) -> Result<Vec<ParsedBlock>> {
    struct Pending {
        name: String,
        gens: Option<Vec<String>>,
        rels: Vec<Word>,
        extras: Vec<(String, Word)>,
    }
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    let finish = |p: Pending, line: usize| -> Result<ParsedBlock> {
        let gens = p.gens.ok_or(Error::Parse { line, msg: format!("group {} has no gens line", p.name) })?;
        Ok(ParsedBlock { presentation: Presentation::new(p.name, gens, p.rels)?, extras: p.extras })
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match kw {
            "group" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(Error::Parse { line: line_no, msg: "expected `group <name>`".into() });
                }
                if let Some(p) = cur.take() {
                    out.push(finish(p, line_no)?);
                }
                cur = Some(Pending { name: rest.to_string(), gens: None, rels: Vec::new(), extras: Vec::new() });
            }
            "gens" => {
                let p = cur.as_mut().ok_or(Error::Parse { line: line_no, msg: "gens before group".into() })?;
                if p.gens.is_some() {
                    return Err(Error::Parse { line: line_no, msg: "duplicate gens line".into() });
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (j, n) in names.iter().enumerate() {
                    if !is_ident(n) {
                        return Err(Error::Parse { line: line_no, msg: format!("bad generator name `{n}`") });
                    }
                    if names[..j].contains(n) {
                        return Err(Error::Parse { line: line_no, msg: format!("duplicate generator `{n}`") });
                    }
                }
                p.gens = Some(names);
            }
            _ if kw == "rel" || extra_keywords.contains(&kw) => {
                let p = cur.as_mut().ok_or(Error::Parse { line: line_no, msg: format!("{kw} before group") })?;
                let gens = p.gens.as_ref().ok_or(Error::Parse { line: line_no, msg: format!("{kw} before gens") })?;
                let w = parse_word(rest, gens).map_err(|msg| Error::Parse { line: line_no, msg })?;
                if kw == "rel" {
                    p.rels.push(w);
                } else {
                    p.extras.push((kw.to_string(), w));
                }
            }
            other => {
                return Err(Error::Parse { line: line_no, msg: format!("unknown keyword `{other}`") });
            }
        }
    }
    if let Some(p) = cur.take() {
        out.push(finish(p, text.lines().count())?);
    }
    Ok(out)
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if c.is_ascii_digit() || (c == '-' && i + 1 < cs.len() && cs[i + 1].is_ascii_digit()) {
            let st = i;
            i += 1;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| format!("bad integer `{t}`"))?));
        } else {
            out.push(match c {
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                _ => return Err(format!("unexpected character `{c}`")),
            });
            i += 1;
        }
    }
    Ok(out)
}

/// Parses a word over the given generator names.
pub fn parse_word(s: &str, gens: &[String]) -> std::result::Result<Word, String> {
    let toks = tokenize(s)?;
    let mut pos = 0;
    let w = parse_seq(&toks, &mut pos, gens)?;
    if pos != toks.len() {
        return Err(format!("unexpected token {:?}", toks[pos]));
    }
    Ok(w)
}

fn parse_seq(t: &[Tok], pos: &mut usize, gens: &[String]) -> std::result::Result<Word, String> {
    let mut w = Word::identity();
    while *pos < t.len() {
        match t[*pos] {
            Tok::RParen | Tok::RBracket | Tok::Comma => break,
            _ => {
                let f = parse_factor(t, pos, gens)?;
                w = w.mul(&f);
            }
        }
    }
    Ok(w)
}

fn parse_factor(t: &[Tok], pos: &mut usize, gens: &[String]) -> std::result::Result<Word, String> {
    let base = match &t[*pos] {
        Tok::Ident(name) => {
            *pos += 1;
            if name == "1" {
                Word::identity()
            } else {
                let g = gens.iter().position(|x| x == name).ok_or(format!("unknown generator `{name}`"))?;
                Word::gen(g)
            }
        }
        Tok::Int(1) => {
            *pos += 1;
            Word::identity()
        }
        Tok::LParen => {
            *pos += 1;
            let inner = parse_seq(t, pos, gens)?;
            if t.get(*pos) != Some(&Tok::RParen) {
                return Err("missing `)`".into());
            }
            *pos += 1;
            inner
        }
        Tok::LBracket => {
            *pos += 1;
            let a = parse_seq(t, pos, gens)?;
            if t.get(*pos) != Some(&Tok::Comma) {
                return Err("expected `,` in commutator".into());
            }
            *pos += 1;
            let b = parse_seq(t, pos, gens)?;
            if t.get(*pos) != Some(&Tok::RBracket) {
                return Err("missing `]`".into());
            }
            *pos += 1;
            Word::commutator(&a, &b)
        }
        other => return Err(format!("unexpected token {other:?}")),
    };
    if t.get(*pos) == Some(&Tok::Caret) {
        *pos += 1;
        match t.get(*pos) {
            Some(Tok::Int(e)) => {
                *pos += 1;
                Ok(base.pow(*e))
            }
            _ => Err("expected integer exponent after `^`".into()),
        }
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3() {
        let p = parse_presentation("group S3\ngens a b\nrel a^2\nrel b^2\nrel (a b)^3\n").unwrap();
        assert_eq!(p.name(), "S3");
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators()[2].to_signed(), vec![1, 2, 1, 2, 1, 2]);
    }

    #[test]
    fn commutator_sugar_and_negative_exponents() {
        let gens = vec!["x".to_string(), "y".to_string()];
        assert_eq!(parse_word("[x,y]", &gens).unwrap().to_signed(), vec![1, 2, -1, -2]);
        assert_eq!(parse_word("x^-2 y", &gens).unwrap().to_signed(), vec![-1, -1, 2]);
        assert_eq!(parse_word("[x y, y]", &gens).unwrap().to_signed(), vec![1, 2, -1, -2]);
        assert!(parse_word("z", &gens).is_err());
        assert!(parse_word("(x y", &gens).is_err());
    }

    #[test]
    fn round_trips_through_text() {
        let p = parse_presentation("group Q8\ngens a b\nrel a^4\nrel a^2 b^-2\nrel b^-1 a b a\n").unwrap();
        let q = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn multiple_blocks_and_extras() {
        let text = "group A\ngens a\nrel a^2\n\ngroup B # comment\ngens x y\nrel [x,y]\ncentral x^2\n";
        let blocks = parse_blocks(text, &["central"]).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[1].extras.len(), 1);
        assert!(parse_blocks(text, &[]).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_presentation("group G\ngens a\nrel b\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
