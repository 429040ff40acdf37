//! Finite Frobenius rings realised as explicit operation tables.
//!
//! Elements are indices `0..order`. Index 0 is always zero; the position of
//! the identity depends on the constructor and is available from
//! [`FiniteRing::one`]. Index order is lexicographic in the constructor's
//! natural coordinates:
//!
//! * `Z<m>`: residues `0..m`;
//! * `GF(p^r)`: coefficient tuples, the index is `sum c_i p^i`;
//! * `M<m>(GF(q))`: row-major entry tuples, first entry most significant;
//! * `prod(...)`: component tuples, first factor most significant.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spec::{GfSpec, RingSpec};

pub type Elem = u16;

pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Largest ring order representable with [`Elem`] indices.
pub const MAX_ORDER: usize = 1 << 16;

/// Rings up to this order get exhaustive axiom checks; larger ones are sampled.
pub const FULL_AXIOM_CHECK: usize = 256;

/// An additive character `x -> zeta_e^{c(x)}`, stored as the exponent map `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingCharacter {
    pub exponents: Vec<u32>,
    pub modulus: u32,
}

impl GeneratingCharacter {
    pub fn exponent(&self, x: Elem) -> u32 {
        self.exponents[x as usize]
    }

    /// `x -> k c(x)`, still additive, not necessarily generating.
    pub fn scaled(&self, k: u32) -> Self {
        GeneratingCharacter {
            exponents: self
                .exponents
                .iter()
                .map(|&c| ((c as u64 * k as u64) % self.modulus as u64) as u32)
                .collect(),
            modulus: self.modulus,
        }
    }
}

/// How the ring was put together; drives element notation and ranks.
#[derive(Clone, Debug)]
pub enum Structure {
    Cyclic { m: u32 },
    Field { p: u32, r: u32 },
    Matrix { m: usize, base: Box<FiniteRing> },
    Product { factors: Vec<FiniteRing> },
}

#[derive(Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    order: usize,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    units: Vec<Elem>,
    is_unit: Vec<bool>,
    exponent: u32,
    character: GeneratingCharacter,
    structure: Structure,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("spec", &self.spec.to_string())
            .field("order", &self.order)
            .field("units", &self.units.len())
            .finish()
    }
}

/// Build and verify a ring with the default order cap.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing> {
    build_ring_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_ring_with_cap(spec: &RingSpec, cap: usize) -> Result<FiniteRing> {
    spec.validate()?;
    let order = spec.order();
    if order > cap as u128 || order > MAX_ORDER as u128 {
        return Err(Error::OrderCap {
            order,
            cap: cap.min(MAX_ORDER),
        });
    }
    let ring = construct(spec);
    ring.verify()?;
    Ok(ring)
}

fn construct(spec: &RingSpec) -> FiniteRing {
    match spec {
        RingSpec::Zm(m) => cyclic(*m),
        RingSpec::Gf(g) => field(g),
        RingSpec::Mat(m, g) => matrix(*m as usize, field(g)),
        RingSpec::Product(fs) => product(fs.iter().map(construct).collect()),
    }
}

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Elem> {
    let mut t = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            t.push(f(a, b) as Elem);
        }
    }
    t
}

fn finish(
    spec: RingSpec,
    one: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    exponent: u32,
    char_exponents: Vec<u32>,
    structure: Structure,
) -> FiniteRing {
    let order = (add.len() as f64).sqrt().round() as usize;
    let mut neg = vec![0; order];
    for a in 0..order {
        for b in 0..order {
            if add[a * order + b] == 0 {
                neg[a] = b as Elem;
                break;
            }
        }
    }
    let mut is_unit = vec![false; order];
    for a in 0..order {
        is_unit[a] = (0..order)
            .any(|b| mul[a * order + b] as usize == one && mul[b * order + a] as usize == one);
    }
    let units = (0..order).filter(|&a| is_unit[a]).map(|a| a as Elem).collect();
    FiniteRing {
        spec,
        order,
        one: one as Elem,
        add,
        mul,
        neg,
        units,
        is_unit,
        exponent,
        character: GeneratingCharacter {
            exponents: char_exponents,
            modulus: exponent,
        },
        structure,
    }
}

fn cyclic(m: u32) -> FiniteRing {
    let n = m as usize;
    finish(
        RingSpec::Zm(m),
        1 % n,
        table(n, |a, b| (a + b) % n),
        table(n, |a, b| (a * b) % n),
        m,
        (0..m).collect(),
        Structure::Cyclic { m },
    )
}

fn field(g: &GfSpec) -> FiniteRing {
    let p = g.p as usize;
    let r = g.r as usize;
    let q = g.order() as usize;
    let coeffs = |x: usize| -> Vec<usize> {
        let mut t = x;
        (0..r)
            .map(|_| {
                let c = t % p;
                t /= p;
                c
            })
            .collect()
    };
    let index = |cs: &[usize]| cs.iter().rev().fold(0, |acc, &c| acc * p + c);
    let add = table(q, |a, b| {
        let (ca, cb) = (coeffs(a), coeffs(b));
        let s: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
        index(&s)
    });
    let mul = table(q, |a, b| {
        let (ca, cb) = (coeffs(a), coeffs(b));
        let mut prod = vec![0usize; 2 * r - 1];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for d in (r..prod.len()).rev() {
            let lead = prod[d];
            if lead != 0 {
                for (i, &m) in g.poly.iter().enumerate() {
                    let k = d - r + i;
                    prod[k] = (prod[k] + p * p - lead * m as usize % p) % p;
                }
            }
        }
        index(&prod[..r])
    });
    // Tr(x) = x + x^p + ... + x^{p^{r-1}}
    let trace: Vec<u32> = (0..q)
        .map(|x| {
            let mut acc = 0usize;
            let mut pow = x;
            for _ in 0..r {
                acc = add[acc * q + pow] as usize;
                let mut next = 1usize;
                for _ in 0..p {
                    next = mul[next * q + pow] as usize;
                }
                pow = next;
            }
            debug_assert!(acc < p, "trace must land in the prime field");
            acc as u32
        })
        .collect();
    finish(
        RingSpec::Gf(g.clone()),
        1,
        add,
        mul,
        g.p,
        trace,
        Structure::Field { p: g.p, r: g.r },
    )
}

fn matrix(m: usize, base: FiniteRing) -> FiniteRing {
    let q = base.order;
    let cells = m * m;
    let n = q.pow(cells as u32);
    let entries = |x: usize| -> Vec<usize> {
        let mut t = x;
        let mut e = vec![0; cells];
        for i in (0..cells).rev() {
            e[i] = t % q;
            t /= q;
        }
        e
    };
    let index = |e: &[usize]| e.iter().fold(0, |acc, &c| acc * q + c);
    let decoded: Vec<Vec<usize>> = (0..n).map(entries).collect();
    let add = table(n, |a, b| {
        let s: Vec<usize> = decoded[a]
            .iter()
            .zip(&decoded[b])
            .map(|(&x, &y)| base.add(x as Elem, y as Elem) as usize)
            .collect();
        index(&s)
    });
    let mul = table(n, |a, b| {
        let (ea, eb) = (&decoded[a], &decoded[b]);
        let mut out = vec![0usize; cells];
        for i in 0..m {
            for j in 0..m {
                let mut acc: Elem = 0;
                for l in 0..m {
                    acc = base.add(acc, base.mul(ea[i * m + l] as Elem, eb[l * m + j] as Elem));
                }
                out[i * m + j] = acc as usize;
            }
        }
        index(&out)
    });
    let mut id = vec![0usize; cells];
    for i in 0..m {
        id[i * m + i] = base.one as usize;
    }
    let one = index(&id);
    let chars: Vec<u32> = decoded
        .iter()
        .map(|e| {
            let tr = (0..m).fold(0 as Elem, |acc, i| base.add(acc, e[i * m + i] as Elem));
            base.character.exponent(tr)
        })
        .collect();
    let exponent = base.exponent;
    let g = match &base.spec {
        RingSpec::Gf(g) => g.clone(),
        _ => unreachable!("matrix rings are built over fields"),
    };
    finish(
        RingSpec::Mat(m as u32, g),
        one,
        add,
        mul,
        exponent,
        chars,
        Structure::Matrix {
            m,
            base: Box::new(base),
        },
    )
}

fn lcm(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

fn product(factors: Vec<FiniteRing>) -> FiniteRing {
    let radices: Vec<usize> = factors.iter().map(|f| f.order).collect();
    let n: usize = radices.iter().product();
    let decode = |x: usize| -> Vec<usize> {
        let mut t = x;
        let mut out = vec![0; radices.len()];
        for i in (0..radices.len()).rev() {
            out[i] = t % radices[i];
            t /= radices[i];
        }
        out
    };
    let encode = |cs: &[usize]| cs.iter().zip(&radices).fold(0, |acc, (&c, &r)| acc * r + c);
    let decoded: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let componentwise = |op: &dyn Fn(&FiniteRing, Elem, Elem) -> Elem| {
        table(n, |a, b| {
            let cs: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| op(f, decoded[a][i] as Elem, decoded[b][i] as Elem) as usize)
                .collect();
            encode(&cs)
        })
    };
    let add = componentwise(&|f, x, y| f.add(x, y));
    let mul = componentwise(&|f, x, y| f.mul(x, y));
    let one = encode(&factors.iter().map(|f| f.one as usize).collect::<Vec<_>>());
    let exponent = factors.iter().fold(1, |acc, f| lcm(acc, f.exponent));
    let chars: Vec<u32> = decoded
        .iter()
        .map(|cs| {
            let s: u64 = factors
                .iter()
                .zip(cs)
                .map(|(f, &c)| {
                    f.character.exponent(c as Elem) as u64 * (exponent / f.exponent) as u64
                })
                .sum();
            (s % exponent as u64) as u32
        })
        .collect();
    let spec = RingSpec::Product(factors.iter().map(|f| f.spec.clone()).collect());
    finish(
        spec,
        one,
        add,
        mul,
        exponent,
        chars,
        Structure::Product { factors },
    )
}

impl FiniteRing {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(|x| x as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.is_unit[x as usize]
    }

    /// Exponent `e` of the additive group.
    pub fn additive_exponent(&self) -> u32 {
        self.exponent
    }

    pub fn character(&self) -> &GeneratingCharacter {
        &self.character
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Replace the character after checking that it is additive and generating.
    pub fn with_character(mut self, character: GeneratingCharacter) -> Result<Self> {
        check_additive(&self, &character)?;
        if !is_generating_character(&self, &character) {
            return Err(Error::Character(format!(
                "character is not generating on {}",
                self.spec
            )));
        }
        self.character = character;
        Ok(self)
    }

    /// Exhaustive (or, above [`FULL_AXIOM_CHECK`], sampled) check of every
    /// structural invariant.
    pub fn verify(&self) -> Result<()> {
        let n = self.order;
        for a in self.elements() {
            if self.add(0, a) != a || self.add(a, self.neg(a)) != 0 {
                return Err(Error::Axiom(format!("additive identity/inverse fails at {a}")));
            }
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(Error::Axiom(format!("multiplicative identity fails at {a}")));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::Axiom(format!("addition not commutative at ({a},{b})")));
                }
            }
        }
        let triple = |a: Elem, b: Elem, c: Elem| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(Error::Axiom(format!("addition not associative at ({a},{b},{c})")));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Axiom(format!("multiplication not associative at ({a},{b},{c})")));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                || self.mul(self.add(b, c), a) != self.add(self.mul(b, a), self.mul(c, a))
            {
                return Err(Error::Axiom(format!("distributivity fails at ({a},{b},{c})")));
            }
            Ok(())
        };
        if n <= FULL_AXIOM_CHECK {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..200_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n) as Elem,
                    rng.gen_range(0..n) as Elem,
                    rng.gen_range(0..n) as Elem,
                );
                triple(a, b, c)?;
            }
        }
        check_additive(self, &self.character)?;
        if !is_generating_character(self, &self.character)
            || !is_generating_character_right(self, &self.character)
        {
            return Err(Error::Character(format!(
                "constructed character of {} is not generating",
                self.spec
            )));
        }
        Ok(())
    }

    /// Canonical text for an element; see the module docs for the layout.
    pub fn format_elem(&self, x: Elem) -> String {
        match &self.structure {
            Structure::Cyclic { .. } | Structure::Field { .. } => x.to_string(),
            Structure::Matrix { m, base } => {
                let q = base.order;
                let cells = m * m;
                let mut t = x as usize;
                let mut e = vec![0; cells];
                for i in (0..cells).rev() {
                    e[i] = t % q;
                    t /= q;
                }
                let rows: Vec<String> = (0..*m)
                    .map(|i| {
                        (0..*m)
                            .map(|j| base.format_elem(e[i * m + j] as Elem))
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                format!("[{}]", rows.join(";"))
            }
            Structure::Product { factors } => {
                let cs = self.components(x);
                let parts: Vec<String> = factors
                    .iter()
                    .zip(cs)
                    .map(|(f, c)| f.format_elem(c))
                    .collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Components of a product-ring element (the element itself otherwise).
    pub fn components(&self, x: Elem) -> Vec<Elem> {
        match &self.structure {
            Structure::Product { factors } => {
                let mut t = x as usize;
                let mut out = vec![0; factors.len()];
                for i in (0..factors.len()).rev() {
                    out[i] = (t % factors[i].order) as Elem;
                    t /= factors[i].order;
                }
                out
            }
            _ => vec![x],
        }
    }

    /// Matrix entries of a matrix-ring element, row-major.
    pub fn entries(&self, x: Elem) -> Option<Vec<Elem>> {
        match &self.structure {
            Structure::Matrix { m, base } => {
                let q = base.order;
                let mut t = x as usize;
                let mut e = vec![0; m * m];
                for i in (0..m * m).rev() {
                    e[i] = (t % q) as Elem;
                    t /= q;
                }
                Some(e)
            }
            _ => None,
        }
    }

    /// Parse an element in canonical notation, or `#<index>`.
    pub fn parse_elem(&self, s: &str) -> std::result::Result<Elem, String> {
        let s = s.trim();
        if let Some(idx) = s.strip_prefix('#') {
            let i: usize = idx.parse().map_err(|_| format!("bad index {s:?}"))?;
            return if i < self.order {
                Ok(i as Elem)
            } else {
                Err(format!("index {i} out of range for ring of order {}", self.order))
            };
        }
        match &self.structure {
            Structure::Cyclic { .. } | Structure::Field { .. } => {
                let v: usize = s.parse().map_err(|_| format!("bad element {s:?}"))?;
                if v < self.order {
                    Ok(v as Elem)
                } else {
                    Err(format!("element {v} out of range 0..{}", self.order))
                }
            }
            Structure::Matrix { m, base } => {
                let inner = s
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| format!("matrix element must look like [a,b;c,d], got {s:?}"))?;
                let rows: Vec<&str> = inner.split(';').collect();
                if rows.len() != *m {
                    return Err(format!("expected {m} rows in {s:?}"));
                }
                let mut idx = 0usize;
                for row in rows {
                    let cells: Vec<&str> = row.split(',').collect();
                    if cells.len() != *m {
                        return Err(format!("expected {m} entries per row in {s:?}"));
                    }
                    for c in cells {
                        idx = idx * base.order + base.parse_elem(c)? as usize;
                    }
                }
                Ok(idx as Elem)
            }
            Structure::Product { factors } => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| format!("product element must look like (a,b,...), got {s:?}"))?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(format!("expected {} components in {s:?}", factors.len()));
                }
                let mut idx = 0usize;
                for (f, part) in factors.iter().zip(parts) {
                    idx = idx * f.order + f.parse_elem(part)? as usize;
                }
                Ok(idx as Elem)
            }
        }
    }

    /// `(q_i, m_i)` per simple factor, if the ring is a product of matrix
    /// rings over fields (prime `Z<p>` counts as a field).
    pub fn semisimple_factors(&self) -> Option<Vec<(u32, usize)>> {
        match &self.structure {
            Structure::Cyclic { m } => crate::spec::is_prime(*m).then(|| vec![(*m, 1)]),
            Structure::Field { p, r } => Some(vec![(p.pow(*r), 1)]),
            Structure::Matrix { m, base } => Some(vec![(base.order as u32, *m)]),
            Structure::Product { factors } => {
                let mut out = Vec::new();
                for f in factors {
                    out.extend(f.semisimple_factors()?);
                }
                Some(out)
            }
        }
    }

    /// Matrix ranks of the components of `x`, aligned with
    /// [`semisimple_factors`](Self::semisimple_factors).
    pub fn semisimple_ranks(&self, x: Elem) -> Option<Vec<usize>> {
        match &self.structure {
            Structure::Cyclic { m } => crate::spec::is_prime(*m).then(|| vec![usize::from(x != 0)]),
            Structure::Field { .. } => Some(vec![usize::from(x != 0)]),
            Structure::Matrix { m, base } => {
                let e = self.entries(x)?;
                Some(vec![matrix_rank(base, *m, &e)])
            }
            Structure::Product { factors } => {
                let mut out = Vec::new();
                for (f, c) in factors.iter().zip(self.components(x)) {
                    out.extend(f.semisimple_ranks(c)?);
                }
                Some(out)
            }
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Rank of an `m x m` matrix over a field given as a ring table.
pub fn matrix_rank(field: &FiniteRing, m: usize, entries: &[Elem]) -> usize {
    let inv = |a: Elem| -> Elem {
        field
            .elements()
            .find(|&b| field.mul(a, b) == field.one())
            .expect("nonzero field element is invertible")
    };
    let mut a: Vec<Vec<Elem>> = (0..m).map(|i| entries[i * m..(i + 1) * m].to_vec()).collect();
    let mut rank = 0;
    for col in 0..m {
        let Some(piv) = (rank..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let s = inv(a[rank][col]);
        for c in 0..m {
            a[rank][c] = field.mul(s, a[rank][c]);
        }
        for r in 0..m {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..m {
                    let t = field.mul(f, a[rank][c]);
                    a[r][c] = field.sub(a[r][c], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn check_additive(ring: &FiniteRing, c: &GeneratingCharacter) -> Result<()> {
    if c.exponents.len() != ring.order || c.modulus == 0 {
        return Err(Error::Character("character has the wrong shape".into()));
    }
    if c.exponent(0) != 0 {
        return Err(Error::Character("c(0) != 0".into()));
    }
    let e = c.modulus;
    for a in ring.elements() {
        if c.exponent(a) >= e {
            return Err(Error::Character(format!("c({a}) not reduced mod {e}")));
        }
        for b in ring.elements() {
            if c.exponent(ring.add(a, b)) != (c.exponent(a) + c.exponent(b)) % e {
                return Err(Error::Character(format!("c is not additive at ({a},{b})")));
            }
        }
    }
    Ok(())
}

/// True iff every nonzero `x` has some `r` with `c(rx) != 0`, i.e. the kernel
/// holds no nonzero left ideal.
pub fn is_generating_character(ring: &FiniteRing, c: &GeneratingCharacter) -> bool {
    ring.elements()
        .skip(1)
        .all(|x| ring.elements().any(|r| c.exponent(ring.mul(r, x)) != 0))
}

/// Right-ideal counterpart of [`is_generating_character`].
pub fn is_generating_character_right(ring: &FiniteRing, c: &GeneratingCharacter) -> bool {
    ring.elements()
        .skip(1)
        .all(|x| ring.elements().any(|r| c.exponent(ring.mul(x, r)) != 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn z4() {
        let r = ring("Z4");
        assert_eq!(r.order(), 4);
        assert_eq!(r.units(), &[1, 3]);
        assert_eq!(r.additive_exponent(), 4);
        assert_eq!(r.character().exponents, vec![0, 1, 2, 3]);
        assert_eq!(r.one(), 1);
    }

    #[test]
    fn f2_squared() {
        let r = ring("prod(Z2,Z2)");
        assert_eq!(r.order(), 4);
        assert_eq!(r.units().len(), 1);
        assert_eq!(r.format_elem(r.units()[0]), "(1,1)");
        assert_eq!(r.additive_exponent(), 2);
    }

    #[test]
    fn mat2_f2_units_brute_force() {
        let r = ring("M2(GF(2))");
        assert_eq!(r.order(), 16);
        // det != 0 over F_2, counted directly from the entries
        let invertible = (0..16u16)
            .filter(|&x| {
                let e = r.entries(x).unwrap();
                (e[0] * e[3] + e[1] * e[2]) % 2 == 1
            })
            .count();
        assert_eq!(invertible, 6);
        assert_eq!(r.units().len(), 6);
        assert_eq!(r.format_elem(r.one()), "[1,0;0,1]");
        assert!(!r.is_commutative());
    }

    #[test]
    fn gf4_is_a_field() {
        let r = ring("GF(2^2)");
        assert_eq!(r.units().len(), 3);
        // a * a = a + 1 for the root of x^2 + x + 1
        assert_eq!(r.mul(2, 2), 3);
        assert_eq!(r.additive_exponent(), 2);
        let r9 = ring("GF(3^2)");
        assert_eq!(r9.units().len(), 8);
        let r16 = ring("GF(2^4)");
        assert_eq!(r16.units().len(), 15);
    }

    #[test]
    fn product_character_combines_by_lcm() {
        let r = ring("prod(Z2,Z3)");
        assert_eq!(r.additive_exponent(), 6);
        let x = r.parse_elem("(1,1)").unwrap();
        // 1 * 3 + 1 * 2
        assert_eq!(r.character().exponent(x), 5);
    }

    #[test]
    fn generating_property() {
        let r = ring("Z4");
        assert!(is_generating_character(&r, r.character()));
        assert!(!is_generating_character(&r, &r.character().scaled(2)));
        let r = ring("prod(Z2,Z2)");
        let first = GeneratingCharacter {
            exponents: r.elements().map(|x| r.components(x)[0] as u32).collect(),
            modulus: 2,
        };
        assert!(!is_generating_character(&r, &first));
        assert!(matches!(
            r.clone().with_character(first),
            Err(Error::Character(_))
        ));
    }

    #[test]
    fn order_cap() {
        let spec: RingSpec = "M3(GF(2))".parse().unwrap();
        assert!(matches!(
            build_ring_with_cap(&spec, 256),
            Err(Error::OrderCap { order: 512, .. })
        ));
        assert!(build_ring_with_cap(&spec, 512).is_ok());
    }

    #[test]
    fn element_notation_roundtrip() {
        for s in ["Z6", "GF(2^2)", "M2(GF(2))", "prod(Z2,prod(Z3,M2(GF(2))))"] {
            let r = ring(s);
            for x in r.elements() {
                assert_eq!(r.parse_elem(&r.format_elem(x)), Ok(x), "{s}");
                assert_eq!(r.parse_elem(&format!("#{x}")), Ok(x));
            }
        }
        let r = ring("Z4");
        assert!(r.parse_elem("4").is_err());
        assert!(r.parse_elem("x").is_err());
    }

    #[test]
    fn ranks() {
        let r = ring("M2(GF(2))");
        assert_eq!(r.semisimple_factors(), Some(vec![(2, 2)]));
        let rank1 = r.parse_elem("[1,0;0,0]").unwrap();
        assert_eq!(r.semisimple_ranks(rank1), Some(vec![1]));
        assert_eq!(r.semisimple_ranks(r.one()), Some(vec![2]));
        assert_eq!(r.semisimple_ranks(0), Some(vec![0]));
        assert_eq!(ring("Z4").semisimple_factors(), None);
        assert_eq!(ring("prod(Z2,GF(3))").semisimple_factors(), Some(vec![(2, 1), (3, 1)]));
    }
}
