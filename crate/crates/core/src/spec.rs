//! Ring construction recipes and their text form.
//!
//! ```text
//! spec    := "Z" int
//!          | gf
//!          | "M" int "(" gf ")"
//!          | "prod(" spec ("," spec)* ")"
//! gf      := "GF(" int ["^" int] ["," "poly=" int ("," int)*] ")"
//! ```
//!
//! A `poly=` list gives coefficients `c0,c1,...` from the constant term up. It
//! may stop before the leading coefficient, which is then taken to be 1.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfSpec {
    pub p: u32,
    pub r: u32,
    /// Monic modulus, `poly[i]` is the coefficient of `x^i`, `poly.len() == r + 1`.
    pub poly: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zm(u32),
    Gf(GfSpec),
    Mat(u32, GfSpec),
    Product(Vec<RingSpec>),
}

/// Built-in Conway polynomials for the small extension fields.
fn default_poly(p: u32, r: u32) -> Option<Vec<u32>> {
    match (p, r) {
        (_, 1) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![2, 2, 1]),
        _ => None,
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl GfSpec {
    /// GF(p^r) with the built-in modulus.
    pub fn new(p: u32, r: u32) -> Result<Self> {
        let poly = default_poly(p, r).ok_or_else(|| {
            Error::InvalidSpec(format!(
                "GF({p}^{r}) has no built-in modulus, pass poly=..."
            ))
        })?;
        Self::with_poly(p, r, poly)
    }

    pub fn with_poly(p: u32, r: u32, mut poly: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidSpec("extension degree must be >= 1".into()));
        }
        if poly.len() == r as usize {
            poly.push(1);
        }
        if poly.len() != r as usize + 1 {
            return Err(Error::InvalidSpec(format!(
                "modulus for GF({p}^{r}) needs {r} or {} coefficients, got {}",
                r + 1,
                poly.len()
            )));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidSpec(format!(
                "modulus coefficients must lie in 0..{p}"
            )));
        }
        if poly[r as usize] != 1 {
            return Err(Error::InvalidSpec("modulus must be monic".into()));
        }
        if !is_irreducible(p, &poly) {
            return Err(Error::Reducible {
                p,
                degree: r,
                poly,
            });
        }
        Ok(GfSpec { p, r, poly })
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.r)
    }
}

/// Remainder of `a` modulo monic `b` over F_p.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (a[shift + i] + p * p - (lead * bc) % p) % p;
                a[shift + i] = t;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                divisor.push((t % p as u64) as u32);
                t /= p as u64;
            }
            divisor.push(1);
            if poly_rem(p, poly, &divisor).is_empty() {
                return false;
            }
        }
    }
    true
}

impl RingSpec {
    pub fn zm(m: u32) -> Self {
        RingSpec::Zm(m)
    }

    pub fn gf(p: u32, r: u32) -> Result<Self> {
        Ok(RingSpec::Gf(GfSpec::new(p, r)?))
    }

    pub fn mat(m: u32, p: u32, r: u32) -> Result<Self> {
        Ok(RingSpec::Mat(m, GfSpec::new(p, r)?))
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product(factors)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Zm(m) if *m < 2 => Err(Error::InvalidSpec(format!("Z{m}: modulus must be >= 2"))),
            RingSpec::Zm(_) => Ok(()),
            RingSpec::Gf(g) => GfSpec::with_poly(g.p, g.r, g.poly.clone()).map(|_| ()),
            RingSpec::Mat(m, g) => {
                if *m == 0 {
                    return Err(Error::InvalidSpec("matrix size must be >= 1".into()));
                }
                GfSpec::with_poly(g.p, g.r, g.poly.clone()).map(|_| ())
            }
            RingSpec::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::InvalidSpec("product needs at least one factor".into()));
                }
                fs.iter().try_for_each(RingSpec::validate)
            }
        }
    }

    /// Ring order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        match self {
            RingSpec::Zm(m) => *m as u128,
            RingSpec::Gf(g) => g.order(),
            RingSpec::Mat(m, g) => {
                let q = g.order();
                let e = (*m as u32).saturating_mul(*m);
                q.checked_pow(e).unwrap_or(u128::MAX)
            }
            RingSpec::Product(fs) => fs
                .iter()
                .map(RingSpec::order)
                .fold(1u128, |a, b| a.saturating_mul(b)),
        }
    }
}

impl fmt::Display for GfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let default = default_poly(self.p, self.r).as_deref() == Some(&self.poly[..]);
        if self.r == 1 && default {
            return write!(f, "GF({})", self.p);
        }
        write!(f, "GF({}^{}", self.p, self.r)?;
        if !default {
            let cs: Vec<String> = self.poly.iter().map(u32::to_string).collect();
            write!(f, ",poly={}", cs.join(","))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zm(m) => write!(f, "Z{m}"),
            RingSpec::Gf(g) => write!(f, "{g}"),
            RingSpec::Mat(m, g) => write!(f, "M{m}({g})"),
            RingSpec::Product(fs) => {
                write!(f, "prod(")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        spec.validate().map_err(|e| match e {
            Error::InvalidSpec(m) => Error::parse(1, 1, m),
            other => other,
        })?;
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{tok}'")))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.err("expected integer"));
        }
        self.pos += digits;
        self.src[start..self.pos].parse().map_err(|_| Error::parse(1, start + 1, "integer too large"))
    }

    fn spec(&mut self) -> Result<RingSpec> {
        self.skip_ws();
        if self.eat("prod(") {
            let mut fs = vec![self.spec()?];
            while self.eat(",") {
                fs.push(self.spec()?);
            }
            self.expect(")")?;
            return Ok(RingSpec::Product(fs));
        }
        if self.src[self.pos..].starts_with("GF(") {
            return Ok(RingSpec::Gf(self.gf()?));
        }
        if self.eat("Z") {
            return Ok(RingSpec::Zm(self.int()?));
        }
        if self.eat("M") {
            let m = self.int()?;
            self.expect("(")?;
            let g = self.gf()?;
            self.expect(")")?;
            return Ok(RingSpec::Mat(m, g));
        }
        Err(self.err("expected Z<m>, GF(...), M<m>(GF(...)) or prod(...)"))
    }

    fn gf(&mut self) -> Result<GfSpec> {
        let start = self.pos;
        self.expect("GF(")?;
        let p = self.int()?;
        let r = if self.eat("^") { self.int()? } else { 1 };
        let poly = if self.eat(",") {
            self.expect("poly=")?;
            let mut cs = vec![self.int()?];
            while self.eat(",") {
                cs.push(self.int()?);
            }
            Some(cs)
        } else {
            None
        };
        self.expect(")")?;
        let res = match poly {
            Some(cs) => GfSpec::with_poly(p, r, cs),
            None => GfSpec::new(p, r),
        };
        res.map_err(|e| match e {
            Error::InvalidSpec(m) => Error::parse(1, start + 1, m),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["Z4", "GF(2^2)", "GF(3)", "M2(GF(2))", "prod(Z2,Z3)", "prod(Z2,prod(GF(2^2),Z4))"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let s: RingSpec = "GF(3^1)".parse().unwrap();
        assert_eq!(s.to_string(), "GF(3)");
        let s: RingSpec = " prod( Z2 , GF(2) ) ".parse().unwrap();
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn explicit_poly() {
        let s: RingSpec = "GF(5^2,poly=2,1)".parse().unwrap();
        assert_eq!(s.order(), 25);
        assert_eq!(s.to_string(), "GF(5^2,poly=2,1,1)");
        let s2: RingSpec = s.to_string().parse().unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn errors() {
        assert!(matches!("Z1".parse::<RingSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("GF(4)".parse::<RingSpec>(), Err(Error::Parse { .. })));
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(matches!(
            "GF(2^2,poly=1,0,1)".parse::<RingSpec>(),
            Err(Error::Reducible { .. })
        ));
        assert!(matches!("GF(5^3)".parse::<RingSpec>(), Err(Error::Parse { .. })));
        match "prod(Z2,Q3)".parse::<RingSpec>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("{other:?}"),
        }
        assert!("Z4x".parse::<RingSpec>().is_err());
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(2, &[1, 1, 1]));
        assert!(!is_irreducible(2, &[0, 1, 1]));
        assert!(is_irreducible(2, &[1, 1, 0, 0, 1]));
        // x^4 + x^2 + 1 = (x^2+x+1)^2
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1]));
        assert!(is_irreducible(3, &[2, 2, 1]));
        // x^2 + 1 has no root mod 3
        assert!(is_irreducible(3, &[1, 0, 1]));
    }
}
