//! Text grammar for group specifications.
//!
//! ```text
//! spec   := name '(' args ')' | 'm10'
//! name   := cyclic | dihedral | sym | alt | elemab | wreath | direct
//!         | psl2 | pgl2 | psigmal2 | pgammal2 | L
//! ```
//! Integers are decimal; `wreath` and `direct` take two nested specs, `elemab`
//! and `L` take two integers, the rest one. Aliases: `c`, `d`, `s`, `a`,
//! `symmetric`, `alternating`, `elem_abelian`, `pgaml2`.

use std::fmt;

use super::projective::ProjectiveFamily;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    ElemAbelian(u64, u32),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Projective(ProjectiveFamily, u64),
    L(u64, u32),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Symmetric(n) => write!(f, "sym({n})"),
            GroupSpec::Alternating(n) => write!(f, "alt({n})"),
            GroupSpec::ElemAbelian(p, k) => write!(f, "elemab({p},{k})"),
            GroupSpec::Wreath(h, k) => write!(f, "wreath({h},{k})"),
            GroupSpec::Direct(h, k) => write!(f, "direct({h},{k})"),
            GroupSpec::Projective(ProjectiveFamily::M10, _) => write!(f, "m10"),
            GroupSpec::Projective(fam, q) => write!(f, "{fam}({q})"),
            GroupSpec::L(p, chi) => write!(f, "L({p},{chi})"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Open,
    Close,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok, usize, &'a str)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if start == bytes.len() {
            return Ok((Tok::End, start, "<end>"));
        }
        let c = bytes[start];
        let tok = if c.is_ascii_alphabetic() {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            Tok::Ident(self.src[start..self.pos].to_string())
        } else if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = &self.src[start..self.pos];
            let v = text.parse().map_err(|_| Error::SpecParse { token: text.into(), offset: start, message: "integer too large".into() })?;
            Tok::Int(v)
        } else {
            self.pos += 1;
            match c {
                b'(' => Tok::Open,
                b')' => Tok::Close,
                b',' => Tok::Comma,
                _ => {
                    let end = self.src[start..].char_indices().nth(1).map_or(self.src.len(), |(i, _)| start + i);
                    self.pos = end;
                    return Err(Error::SpecParse { token: self.src[start..end].into(), offset: start, message: "unexpected character".into() });
                }
            }
        };
        Ok((tok, start, &self.src[start..self.pos]))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    cur: (Tok, usize, &'a str),
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::SpecParse { token: self.cur.2.to_string(), offset: self.cur.1, message: message.into() })
    }

    fn bump(&mut self) -> Result<()> {
        self.cur = self.lex.next()?;
        Ok(())
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.cur.0 != t {
            return self.err(format!("expected {what}"));
        }
        self.bump()
    }

    fn int(&mut self) -> Result<u64> {
        match self.cur.0 {
            Tok::Int(v) => {
                self.bump()?;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn small(&mut self) -> Result<usize> {
        let offset = self.cur.1;
        let token = self.cur.2.to_string();
        let v = self.int()?;
        usize::try_from(v).ok().filter(|&v| v <= 1 << 20).ok_or(Error::SpecParse { token, offset, message: "degree too large".into() })
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = match &self.cur.0 {
            Tok::Ident(s) => s.clone(),
            _ => return self.err("expected a group name"),
        };
        let (name_offset, name_tok) = (self.cur.1, self.cur.2.to_string());
        self.bump()?;
        if name == "m10" {
            return Ok(GroupSpec::Projective(ProjectiveFamily::M10, 9));
        }
        self.expect(Tok::Open, "'('")?;
        let spec = match name.as_str() {
            "cyclic" | "c" => GroupSpec::Cyclic(self.small()?),
            "dihedral" | "d" => GroupSpec::Dihedral(self.small()?),
            "sym" | "symmetric" | "s" => GroupSpec::Symmetric(self.small()?),
            "alt" | "alternating" | "a" => GroupSpec::Alternating(self.small()?),
            "elemab" | "elem_abelian" => {
                let p = self.int()?;
                self.expect(Tok::Comma, "','")?;
                let k = self.int()? as u32;
                GroupSpec::ElemAbelian(p, k)
            }
            "L" | "l" => {
                let p = self.int()?;
                self.expect(Tok::Comma, "','")?;
                let chi = self.int()? as u32;
                GroupSpec::L(p, chi)
            }
            "wreath" | "direct" => {
                let h = self.spec()?;
                self.expect(Tok::Comma, "','")?;
                let k = self.spec()?;
                if name == "wreath" {
                    GroupSpec::Wreath(Box::new(h), Box::new(k))
                } else {
                    GroupSpec::Direct(Box::new(h), Box::new(k))
                }
            }
            "psl2" => GroupSpec::Projective(ProjectiveFamily::Psl2, self.int()?),
            "pgl2" => GroupSpec::Projective(ProjectiveFamily::Pgl2, self.int()?),
            "psigmal2" => GroupSpec::Projective(ProjectiveFamily::PSigmaL2, self.int()?),
            "pgammal2" | "pgaml2" => GroupSpec::Projective(ProjectiveFamily::PGammaL2, self.int()?),
            _ => return Err(Error::SpecParse { token: name_tok, offset: name_offset, message: "unknown group family".into() }),
        };
        self.expect(Tok::Close, "')'")?;
        Ok(spec)
    }
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let mut lex = Lexer { src: s, pos: 0 };
        let cur = lex.next()?;
        let mut p = Parser { lex, cur };
        let spec = p.spec()?;
        if p.cur.0 != Tok::End {
            return p.err("trailing input");
        }
        Ok(spec)
    }
}
