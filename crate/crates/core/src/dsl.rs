//! Text syntax for rings, ideals and expansion functions.
//!
//! ```text
//! ring  := atom ("x" atom)*
//! atom  := "Z" nat | "(" ring ")"
//!        | "quot(" ring "," gens ")" | "loc(" ring "," gens ")"
//!        | "triv(" ring "," "M[" nat {"," nat} "])"
//!        | "amal(" ring "," ring "," hom "," gens ")" | "dup(" ring "," gens ")"
//!        | "sub(" ring "," gens ")"
//! hom   := "id" | "canon" | "inj" | "map[" nat {"," nat} "]"
//! gens  := "{" [nat {"," nat}] "}"
//! delta := "id" | "rad" | "addk(" gens ")" | "comp(" delta "," delta ")"
//!        | "q(" delta ")" | "prod(" delta "," delta ")" | "plus(" delta ")"
//!        | "bow(" delta ["," delta] ")" | "loc(" delta ")"
//! ```
//!
//! Whitespace is ignored. Products associate to the left. Element literals
//! are indices in the ring's enumeration. Errors carry 1-based character
//! positions.

use crate::construct::{self, MultSet, RModule};
use crate::error::{Error, Result};
use crate::expansion::{self, DeltaKind, ExpansionFn};
use crate::ideal::{self, Ideal};
use crate::ring::{self, FiniteRing, Provenance, RingHom};

/// Parsed ring expression. `pos` fields are 1-based character positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    ZMod { n: usize, pos: usize },
    Product(Box<RingExpr>, Box<RingExpr>),
    Quot { base: Box<RingExpr>, gens: Vec<usize>, pos: usize },
    Loc { base: Box<RingExpr>, elems: Vec<usize>, pos: usize },
    Triv { base: Box<RingExpr>, orders: Vec<usize>, pos: usize },
    Amal { a: Box<RingExpr>, b: Box<RingExpr>, hom: HomExpr, gens: Vec<usize>, pos: usize },
    Dup { base: Box<RingExpr>, gens: Vec<usize>, pos: usize },
    Sub { parent: Box<RingExpr>, members: Vec<usize>, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomExpr {
    Id,
    Canon,
    Inj,
    Map(Vec<usize>),
}

/// Parsed expansion-function expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaExpr {
    Id,
    Rad,
    AddK(Vec<usize>),
    Comp(Box<DeltaExpr>, Box<DeltaExpr>, usize),
    Quot(Box<DeltaExpr>, usize),
    Prod(Box<DeltaExpr>, Box<DeltaExpr>, usize),
    Plus(Box<DeltaExpr>, usize),
    Bow(Box<DeltaExpr>, Option<Box<DeltaExpr>>, usize),
    Loc(Box<DeltaExpr>, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Parser<'a>> {
        if let Some(i) = text.char_indices().find(|(_, c)| !c.is_ascii()).map(|(i, _)| i) {
            return Err(Error::Parse {
                pos: text[..i].chars().count() + 1,
                msg: "unexpected non-ASCII character".into(),
            });
        }
        Ok(Parser {
            src: text.as_bytes(),
            at: 0,
        })
    }

    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.at + 1
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.at).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(f) => format!("`{}`", f as char),
                None => "end of input".into(),
            };
            self.err(format!("expected `{}`, found {found}", c as char))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_alphabetic() {
            self.at += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.at]).into_owned()
    }

    fn nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.at])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start + 1,
                msg: "number too large".into(),
            })
    }

    fn nat_list(&mut self, close: u8) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.nat()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn gens(&mut self) -> Result<Vec<usize>> {
        self.expect(b'{')?;
        self.nat_list(b'}')
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn ring(&mut self) -> Result<RingExpr> {
        let mut left = self.atom()?;
        while self.peek() == Some(b'x') {
            self.at += 1;
            let right = self.atom()?;
            left = RingExpr::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<RingExpr> {
        let pos = self.pos();
        if self.eat(b'(') {
            let inner = self.ring()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        if self.peek() == Some(b'Z') {
            self.at += 1;
            let n = self.nat()?;
            return Ok(RingExpr::ZMod { n, pos });
        }
        let word = self.ident();
        let boxed = |p: &mut Parser| p.ring().map(Box::new);
        match word.as_str() {
            "quot" | "loc" | "dup" | "sub" => {
                self.expect(b'(')?;
                let base = boxed(self)?;
                self.expect(b',')?;
                let gens = self.gens()?;
                self.expect(b')')?;
                Ok(match word.as_str() {
                    "quot" => RingExpr::Quot { base, gens, pos },
                    "loc" => RingExpr::Loc { base, elems: gens, pos },
                    "dup" => RingExpr::Dup { base, gens, pos },
                    _ => RingExpr::Sub { parent: base, members: gens, pos },
                })
            }
            "triv" => {
                self.expect(b'(')?;
                let base = boxed(self)?;
                self.expect(b',')?;
                if self.peek() != Some(b'M') {
                    return self.err("expected a module `M[d1,...]`");
                }
                self.at += 1;
                self.expect(b'[')?;
                let orders = self.nat_list(b']')?;
                self.expect(b')')?;
                Ok(RingExpr::Triv { base, orders, pos })
            }
            "amal" => {
                self.expect(b'(')?;
                let a = boxed(self)?;
                self.expect(b',')?;
                let b = boxed(self)?;
                self.expect(b',')?;
                let hom = self.hom()?;
                self.expect(b',')?;
                let gens = self.gens()?;
                self.expect(b')')?;
                Ok(RingExpr::Amal { a, b, hom, gens, pos })
            }
            "" => self.err("expected a ring expression"),
            other => Err(Error::Parse {
                pos,
                msg: format!("unknown ring constructor `{other}`"),
            }),
        }
    }

    fn hom(&mut self) -> Result<HomExpr> {
        let pos = self.pos();
        match self.ident().as_str() {
            "id" => Ok(HomExpr::Id),
            "canon" => Ok(HomExpr::Canon),
            "inj" => Ok(HomExpr::Inj),
            "map" => {
                self.expect(b'[')?;
                Ok(HomExpr::Map(self.nat_list(b']')?))
            }
            other => Err(Error::Parse {
                pos,
                msg: format!("unknown homomorphism `{other}` (expected id, canon, inj or map[..])"),
            }),
        }
    }

    fn delta(&mut self) -> Result<DeltaExpr> {
        let pos = self.pos();
        let word = self.ident();
        let unary = |p: &mut Parser| -> Result<Box<DeltaExpr>> {
            p.expect(b'(')?;
            let d = p.delta()?;
            p.expect(b')')?;
            Ok(Box::new(d))
        };
        let binary = |p: &mut Parser| -> Result<(Box<DeltaExpr>, Box<DeltaExpr>)> {
            p.expect(b'(')?;
            let a = p.delta()?;
            p.expect(b',')?;
            let b = p.delta()?;
            p.expect(b')')?;
            Ok((Box::new(a), Box::new(b)))
        };
        match word.as_str() {
            "id" => Ok(DeltaExpr::Id),
            "rad" => Ok(DeltaExpr::Rad),
            "addk" => {
                self.expect(b'(')?;
                let g = self.gens()?;
                self.expect(b')')?;
                Ok(DeltaExpr::AddK(g))
            }
            "comp" => binary(self).map(|(a, b)| DeltaExpr::Comp(a, b, pos)),
            "prod" => binary(self).map(|(a, b)| DeltaExpr::Prod(a, b, pos)),
            "q" => unary(self).map(|d| DeltaExpr::Quot(d, pos)),
            "plus" => unary(self).map(|d| DeltaExpr::Plus(d, pos)),
            "loc" => unary(self).map(|d| DeltaExpr::Loc(d, pos)),
            "bow" => {
                self.expect(b'(')?;
                let d = Box::new(self.delta()?);
                let d1 = if self.eat(b',') {
                    Some(Box::new(self.delta()?))
                } else {
                    None
                };
                self.expect(b')')?;
                Ok(DeltaExpr::Bow(d, d1, pos))
            }
            "" => self.err("expected an expansion expression"),
            other => Err(Error::Parse {
                pos,
                msg: format!("unknown expansion `{other}`"),
            }),
        }
    }
}

fn located(pos: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ (Error::Located { .. } | Error::Parse { .. }) => e,
        e => Error::Located {
            pos,
            error: Box::new(e),
        },
    }
}

/// Parses a ring expression without building it.
pub fn parse_ring_expr(text: &str) -> Result<RingExpr> {
    let mut p = Parser::new(text)?;
    let e = p.ring()?;
    p.finish()?;
    Ok(e)
}

/// Parses an expansion expression without evaluating it.
pub fn parse_delta_ast(text: &str) -> Result<DeltaExpr> {
    let mut p = Parser::new(text)?;
    let e = p.delta()?;
    p.finish()?;
    Ok(e)
}

/// Parses and builds a ring.
pub fn parse_ring(text: &str) -> Result<FiniteRing> {
    parse_ring_expr(text)?.build()
}

impl RingExpr {
    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            RingExpr::ZMod { n, pos } => ring::zmod(*n).map_err(located(*pos)),
            RingExpr::Product(a, b) => {
                let (ra, rb) = (a.build()?, b.build()?);
                ring::product(&ra, &rb).map_err(located(a.pos()))
            }
            RingExpr::Quot { base, gens, pos } => {
                let r = base.build()?;
                let at = located(*pos);
                let i = ideal::ideal_closure(&r, gens).map_err(&at)?;
                Ok(ideal::quotient_ring(&r, &i).map_err(&at)?.0)
            }
            RingExpr::Loc { base, elems, pos } => {
                let r = base.build()?;
                let at = located(*pos);
                let s = MultSet::new(&r, elems).map_err(&at)?;
                Ok(construct::localize(&r, &s).map_err(&at)?.0)
            }
            RingExpr::Triv { base, orders, pos } => {
                let r = base.build()?;
                let at = located(*pos);
                let m = RModule::new(&r, orders).map_err(&at)?;
                construct::trivial_extension(&r, &m).map_err(&at)
            }
            RingExpr::Amal { a, b, hom, gens, pos } => {
                let (ra, rb) = (a.build()?, b.build()?);
                let at = located(*pos);
                let f = build_hom(&ra, &rb, hom).map_err(&at)?;
                let j = ideal::ideal_closure(&rb, gens).map_err(&at)?;
                Ok(construct::amalgamate(&ra, &rb, &f, &j).map_err(&at)?.ring().clone())
            }
            RingExpr::Dup { base, gens, pos } => {
                let r = base.build()?;
                let at = located(*pos);
                let i = ideal::ideal_closure(&r, gens).map_err(&at)?;
                Ok(construct::duplicate(&r, &i).map_err(&at)?.ring().clone())
            }
            RingExpr::Sub { parent, members, pos } => {
                let r = parent.build()?;
                for &m in members {
                    r.check_elem(m).map_err(located(*pos))?;
                }
                construct::subring(&r, members).map_err(located(*pos))
            }
        }
    }

    fn pos(&self) -> usize {
        match self {
            RingExpr::Product(a, _) => a.pos(),
            RingExpr::ZMod { pos, .. }
            | RingExpr::Quot { pos, .. }
            | RingExpr::Loc { pos, .. }
            | RingExpr::Triv { pos, .. }
            | RingExpr::Amal { pos, .. }
            | RingExpr::Dup { pos, .. }
            | RingExpr::Sub { pos, .. } => *pos,
        }
    }
}

/// `id` needs equal rings; `canon` a cyclic domain whose characteristic is
/// a multiple of the codomain's; `inj` a codomain `triv(A, M[..])`.
pub fn build_hom(a: &FiniteRing, b: &FiniteRing, hom: &HomExpr) -> Result<RingHom> {
    match hom {
        HomExpr::Id if a == b => Ok(RingHom::identity(a)),
        HomExpr::Id => Err(Error::HomInvalid(format!("`id` needs equal rings, got {a} and {b}"))),
        HomExpr::Canon => RingHom::canonical(a, b),
        HomExpr::Inj => construct::inclusion(a, b),
        HomExpr::Map(map) => RingHom::new(a, b, map.clone()),
    }
}

/// Parses and builds an expansion function on `ring`.
pub fn parse_delta_expr(text: &str, ring: &FiniteRing) -> Result<ExpansionFn> {
    parse_delta_ast(text)?.build(ring)
}

impl DeltaExpr {
    pub fn build(&self, ring: &FiniteRing) -> Result<ExpansionFn> {
        let mismatch = |name: &str, pos: usize| Error::Located {
            pos,
            error: Box::new(Error::ShapeMismatch {
                expr: name.into(),
                ring: ring.expr(),
            }),
        };
        match self {
            DeltaExpr::Id => expansion::builtin_delta(ring, DeltaKind::Identity),
            DeltaExpr::Rad => expansion::builtin_delta(ring, DeltaKind::Radical),
            DeltaExpr::AddK(g) => expansion::builtin_delta(ring, DeltaKind::AddK(g.clone())),
            DeltaExpr::Comp(a, b, pos) => {
                expansion::delta_compose(&a.build(ring)?, &b.build(ring)?).map_err(located(*pos))
            }
            DeltaExpr::Quot(d, pos) => match ring.provenance() {
                Provenance::Quotient { base, .. } => {
                    expansion::delta_quotient_on(ring, &d.build(base)?).map_err(located(*pos))
                }
                _ => Err(mismatch("q", *pos)),
            },
            DeltaExpr::Prod(a, b, pos) => match ring.provenance() {
                Provenance::Product(r1, r2) => {
                    expansion::delta_product_on(ring, &a.build(r1)?, &b.build(r2)?)
                        .map_err(located(*pos))
                }
                _ => Err(mismatch("prod", *pos)),
            },
            DeltaExpr::Plus(d, pos) => match ring.provenance() {
                Provenance::TrivialExtension { base, .. } => {
                    expansion::delta_idealization_on(ring, &d.build(base)?).map_err(located(*pos))
                }
                _ => Err(mismatch("plus", *pos)),
            },
            DeltaExpr::Bow(d, d1, pos) => match ring.provenance() {
                Provenance::Amalgamation(src) => {
                    let delta = d.build(&src.a)?;
                    let delta1 = match d1 {
                        Some(d1) => {
                            let am = construct::Amalgam::from_ring(ring).map_err(located(*pos))?;
                            Some(d1.build(am.sub())?)
                        }
                        None => None,
                    };
                    expansion::delta_amalgam(ring, &delta, delta1.as_ref()).map_err(located(*pos))
                }
                _ => Err(mismatch("bow", *pos)),
            },
            DeltaExpr::Loc(d, pos) => match ring.provenance() {
                Provenance::Localization { base, .. } => {
                    expansion::delta_localize(ring, &d.build(base)?).map_err(located(*pos))
                }
                _ => Err(mismatch("loc", *pos)),
            },
        }
    }
}

/// Parses a generator list: `{0,4}`, `0,4`, `4` or `{}`.
pub fn parse_gens(text: &str) -> Result<Vec<usize>> {
    let mut p = Parser::new(text)?;
    let gens = if p.peek() == Some(b'{') {
        p.gens()?
    } else if p.peek().is_none() {
        Vec::new()
    } else {
        let mut out = vec![p.nat()?];
        while p.eat(b',') {
            out.push(p.nat()?);
        }
        out
    };
    p.finish()?;
    Ok(gens)
}

/// The ideal of `ring` generated by a generator list in [`parse_gens`] form.
pub fn parse_ideal(text: &str, ring: &FiniteRing) -> Result<Ideal> {
    ideal::ideal_closure(ring, &parse_gens(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let z8 = parse_ring("Z8").unwrap();
        assert_eq!(z8, ring::zmod(8).unwrap());
        assert_eq!(parse_ring("triv(Z2, M[2,2])").unwrap().size(), 8);
        let err = parse_ring("Z0").unwrap_err();
        assert_eq!(
            err,
            Error::Located {
                pos: 1,
                error: Box::new(Error::InvalidModulus(0))
            }
        );
        assert_eq!(err.to_string(), "at position 1: invalid modulus 0: must be at least 1");
    }

    #[test]
    fn syntax_errors_are_positioned() {
        assert!(matches!(parse_ring("Z8 x"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_ring("foo(Z2)"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_ring("quot(Z8 {4})"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(parse_ring("Z8)"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_ring("Zé"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn semantic_errors() {
        let e = parse_ring("triv(Z4, M[3])").unwrap_err();
        assert!(matches!(e.root(), Error::InvalidModule(_)));
        let e = parse_ring("amal(Z2, Z4, canon, {0})").unwrap_err();
        assert!(matches!(e.root(), Error::HomInvalid(_)));
        let e = parse_ring("loc(Z6, {1,2})").unwrap_err();
        assert!(matches!(e.root(), Error::InvalidMultSet(_)));
    }

    #[test]
    fn round_trip() {
        for text in [
            "Z12",
            "Z2 x Z3",
            "Z2 x (Z2 x Z2)",
            "Z2 x Z2 x Z2",
            "quot(Z16, {8})",
            "loc(Z12, {1,5,7,11})",
            "triv(Z2, M[2,2])",
            "triv(quot(Z16, {4}), M[2])",
            "amal(Z4, Z4, id, {2})",
            "dup(Z4, {2})",
            "amal(Z2, triv(Z2, M[2]), inj, {1})",
            "amal(Z8, Z4, canon, {2})",
        ] {
            let r = parse_ring(text).unwrap();
            assert_eq!(r.expr(), text);
            assert_eq!(parse_ring(&r.expr()).unwrap(), r, "{text}");
        }
    }

    #[test]
    fn delta_examples() {
        let z8 = parse_ring("Z8").unwrap();
        assert_eq!(parse_delta_expr("rad", &z8).unwrap().label(), "rad");
        let z12 = parse_ring("Z12").unwrap();
        assert_eq!(parse_delta_expr("comp(rad,id)", &z12).unwrap().label(), "comp(rad,id)");
        let e = parse_delta_expr("prod(rad,id)", &z8).unwrap_err();
        assert!(matches!(e.root(), Error::ShapeMismatch { .. }));
        let p = parse_ring("Z4 x Z2").unwrap();
        assert_eq!(parse_delta_expr("prod(rad, id)", &p).unwrap().label(), "prod(rad,id)");
        let q = parse_ring("quot(Z12, {4})").unwrap();
        assert_eq!(parse_delta_expr("q(rad)", &q).unwrap().label(), "q(rad)");
        let t = parse_ring("triv(Z4, M[4])").unwrap();
        assert!(parse_delta_expr("plus(rad)", &t).is_ok());
        let a = parse_ring("dup(Z4, {2})").unwrap();
        assert!(parse_delta_expr("bow(rad)", &a).is_ok());
        assert!(parse_delta_expr("bow(id,id)", &a).is_ok());
        assert!(matches!(parse_delta_expr("foo", &z8), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn gens() {
        assert_eq!(parse_gens("{0,4}").unwrap(), vec![0, 4]);
        assert_eq!(parse_gens("0, 4").unwrap(), vec![0, 4]);
        assert_eq!(parse_gens("{}").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_gens("6").unwrap(), vec![6]);
        assert!(parse_gens("{1,").is_err());
    }
}
