//! Permutations of `{0, …, n-1}` stored as image tables.
//!
//! Composition is left to right: `a.compose(&b)` maps `x` to `b(a(x))`,
//! matching exponent notation `x^{ab} = (x^a)^b`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from an image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if seen[x] {
                return Err(Error::NotBijection(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_usize_images(images: &[usize]) -> Result<Self> {
        Self::from_images(images.iter().map(|&x| x as u32).collect())
    }

    /// Builds from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if used[x] {
                    return Err(Error::NotBijection(format!("point {x} repeated in cycles")));
                }
                used[x] = true;
                images[x] = cyc[(k + 1) % cyc.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `x^self`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Left-to-right product: `x ↦ other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right product; panics on degree mismatch.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `self^g = g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation { images: out }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| other.images[y as usize] == self.images[other.images[x] as usize])
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    /// Extends to a larger degree fixing the new points.
    pub fn extend(&self, n: usize) -> Permutation {
        assert!(n >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Permutation { images }
    }

    /// Places `self` on points `offset..offset+deg` of a degree-`n` permutation.
    pub fn shifted(&self, offset: usize, n: usize) -> Permutation {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// Restriction to the first `m` points; `None` if they are not invariant.
    pub fn restrict_prefix(&self, m: usize) -> Option<Permutation> {
        let images: Vec<u32> = self.images[..m].to_vec();
        if images.iter().all(|&x| (x as usize) < m) {
            Some(Permutation { images })
        } else {
            None
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses one permutation line: an image list or 0-based disjoint cycles.
/// Column numbers in errors are 1-based.
pub fn parse_permutation(line: &str, degree: usize, line_no: usize) -> Result<Permutation> {
    let trimmed = line.trim();
    let perr = |col: usize, msg: String| Error::Parse { line: line_no, column: col, message: msg };
    if trimmed.starts_with('(') {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = line.as_bytes();
        let mut i = 0;
        let mut current: Option<Vec<usize>> = None;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                '(' => {
                    if current.is_some() {
                        return Err(perr(i + 1, "nested '('".into()));
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                ')' => {
                    let cyc = current.take().ok_or_else(|| perr(i + 1, "unmatched ')'".into()))?;
                    for (k, &x) in cyc.iter().enumerate() {
                        images[x] = cyc[(k + 1) % cyc.len()] as u32;
                    }
                    i += 1;
                }
                c if c.is_ascii_whitespace() || c == ',' => i += 1,
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    let tok = &line[start..i];
                    let x: usize = tok.parse().map_err(|_| perr(start + 1, format!("bad number '{tok}'")))?;
                    let cyc = current.as_mut().ok_or_else(|| perr(start + 1, "point outside a cycle".into()))?;
                    if x >= degree {
                        return Err(perr(start + 1, format!("point {x} out of range for degree {degree}")));
                    }
                    if used[x] {
                        return Err(perr(start + 1, format!("point {x} repeated")));
                    }
                    used[x] = true;
                    cyc.push(x);
                }
                other => return Err(perr(i + 1, format!("unexpected character '{other}'"))),
            }
        }
        if current.is_some() {
            return Err(perr(line.len() + 1, "unterminated cycle".into()));
        }
        Ok(Permutation { images })
    } else {
        let mut images = Vec::with_capacity(degree);
        let mut used = vec![false; degree];
        let mut pos = 0;
        for tok in line.split_whitespace() {
            let col = line[pos..].find(tok).map(|o| pos + o).unwrap_or(pos);
            pos = col + tok.len();
            let x: usize = tok.parse().map_err(|_| perr(col + 1, format!("bad number '{tok}'")))?;
            if x >= degree {
                return Err(perr(col + 1, format!("point {x} out of range for degree {degree}")));
            }
            if used[x] {
                return Err(perr(col + 1, format!("point {x} repeated")));
            }
            used[x] = true;
            images.push(x as u32);
        }
        if images.len() != degree {
            return Err(perr(1, format!("expected {degree} images, found {}", images.len())));
        }
        Ok(Permutation { images })
    }
}

/// Parses a generator file: `degree n` then one permutation per line.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let mut it = line.split_whitespace();
                let head = it.next().unwrap_or("");
                if head != "degree" {
                    return Err(Error::Parse { line: line_no, column: 1, message: "expected 'degree n'".into() });
                }
                let tok = it.next().ok_or(Error::Parse { line: line_no, column: line.len() + 1, message: "missing degree".into() })?;
                let n: usize = tok.parse().map_err(|_| Error::Parse { line: line_no, column: line.find(tok).unwrap_or(0) + 1, message: format!("bad degree '{tok}'") })?;
                degree = Some(n);
            }
            Some(n) => gens.push(parse_permutation(line, n, line_no)?),
        }
    }
    let n = degree.ok_or(Error::Parse { line: 1, column: 1, message: "empty generator file".into() })?;
    Ok((n, gens))
}

/// Writes a generator file in cycle notation.
pub fn write_generator_file(degree: usize, gens: &[Permutation]) -> String {
    let mut s = format!("degree {degree}\n");
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}
