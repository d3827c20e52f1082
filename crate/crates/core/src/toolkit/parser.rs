//! Recursive-descent parser for `.fz` documents.
//!
//! ```text
//! document := (fuzzyset | sliceset | sequence)*
//! fuzzyset := "fuzzyset" NAME ("{" cut+ "}" | "empty" ";")
//! sliceset := "sliceset" NAME "{" slice+ "}"
//! sequence := "sequence" NAME "(" "n" [">=" INT] ")" "{" (cut+ | "even" "{" cut+ "}" "odd" "{" cut+ "}") "}"
//! cut      := "cut" "alpha" "in" range ":" set ";"
//! slice    := "slice" "alpha" "in" range ":" set ";"
//! range    := ("(" | "[") expr "," expr (")" | "]")
//! set      := part ("|" part)* | "empty" | "R"
//! part     := "[" expr "," expr "]" with "(-inf" and "inf)" for infinite ends
//! ```

use std::cmp::Ordering;

use super::document::{slice_set_from_bands, Definition, Document, Entry};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::convergence::{FuzzySeq, FuzzySequence, SeqBody};
use crate::expr::{fuzzy_set_from_bands, Band, Env, Expr, PartExpr, RangeExpr, SetExpr, Var};
use crate::num::{parse_decimal, ExtReal};

const RESERVED: &[&str] = &[
    "fuzzyset", "sliceset", "sequence", "cut", "slice", "alpha", "in", "empty", "R", "inf", "n", "even", "odd",
];

/// Indices at which a sequence definition is instantiated during parsing.
const CHECKED_OFFSETS: &[u64] = &[0, 1, 2, 3, 4, 5, 6, 7, 63, 1023];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    Constant,
    Level,
    Index,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let mut doc = Document::default();
    while p.peek().tok != Tok::Eof {
        let start = p.peek().clone();
        let entry = p.definition()?;
        if doc.get(&entry.name).is_some() {
            return Err(semantic(&start, format!("`{}` is defined twice", entry.name)));
        }
        validate(&entry).map_err(|m| semantic(&start, format!("`{}`: {m}", entry.name)))?;
        doc.entries.push(entry);
    }
    Ok(doc)
}

fn semantic(at: &Token, message: String) -> ParseError {
    ParseError::Semantic { line: at.line, col: at.col, message }
}

fn validate(entry: &Entry) -> Result<(), String> {
    match &entry.def {
        Definition::FuzzySet(bands) => fuzzy_set_from_bands(bands, &Env::default()).map(|_| ()).map_err(|e| e.to_string()),
        Definition::SliceSet(bands) => slice_set_from_bands(bands).map(|_| ()).map_err(|e| e.to_string()),
        Definition::Sequence { n_min, body } => {
            let seq = FuzzySeq { name: entry.name.clone(), n_min: *n_min, body: body.clone() };
            for off in CHECKED_OFFSETS {
                seq.instantiate(n_min + off).map_err(|e| e.to_string())?;
            }
            Ok(())
        }
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax { line: t.line, col: t.col, message: format!("expected {expected}, found {}", t.tok.describe()) })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            let what = tok.describe();
            self.error(&what)
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == word)
    }

    fn keyword(&mut self, word: &str) -> Result<Token, ParseError> {
        if self.is_keyword(word) {
            Ok(self.next())
        } else {
            self.error(&format!("`{word}`"))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => self.error("a name"),
        }
    }

    fn definition(&mut self) -> Result<Entry, ParseError> {
        if self.is_keyword("fuzzyset") {
            self.next();
            let name = self.name()?;
            if self.is_keyword("empty") {
                self.next();
                self.expect(Tok::Semi)?;
                return Ok(Entry { name, def: Definition::FuzzySet(Vec::new()) });
            }
            let bands = self.band_block("cut", Scope::Constant)?;
            Ok(Entry { name, def: Definition::FuzzySet(bands) })
        } else if self.is_keyword("sliceset") {
            self.next();
            let name = self.name()?;
            let bands = self.band_block("slice", Scope::Level)?;
            Ok(Entry { name, def: Definition::SliceSet(bands) })
        } else if self.is_keyword("sequence") {
            self.next();
            let name = self.name()?;
            self.expect(Tok::LParen)?;
            self.keyword("n")?;
            let mut n_min = 1;
            if self.peek().tok == Tok::GreaterEq {
                self.next();
                let t = self.next();
                n_min = match &t.tok {
                    Tok::Number(s) if s.chars().all(|c| c.is_ascii_digit()) => s
                        .parse()
                        .map_err(|_| ParseError::Syntax { line: t.line, col: t.col, message: "index too large".into() })?,
                    _ => {
                        self.pos -= 1;
                        return self.error("an integer");
                    }
                };
                if n_min == 0 {
                    return Err(semantic(&t, "indices start at 1".into()));
                }
            }
            self.expect(Tok::RParen)?;
            let body = if self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::Ident("even".into())) {
                self.expect(Tok::LBrace)?;
                self.keyword("even")?;
                let mut even = self.band_block("cut", Scope::Index)?;
                self.keyword("odd")?;
                let mut odd = self.band_block("cut", Scope::Index)?;
                self.expect(Tok::RBrace)?;
                sort_bands(&mut even, &Env::index(n_min + n_min % 2));
                sort_bands(&mut odd, &Env::index(n_min + 1 - n_min % 2));
                SeqBody::Parity { even, odd }
            } else {
                let mut bands = self.band_block("cut", Scope::Index)?;
                sort_bands(&mut bands, &Env::index(n_min));
                SeqBody::Uniform(bands)
            };
            Ok(Entry { name, def: Definition::Sequence { n_min, body } })
        } else {
            self.error("`fuzzyset`, `sliceset` or `sequence`")
        }
    }

    fn band_block(&mut self, keyword: &str, scope: Scope) -> Result<Vec<Band>, ParseError> {
        let open = self.expect(Tok::LBrace)?;
        let mut bands = Vec::new();
        while self.is_keyword(keyword) {
            self.next();
            self.keyword("alpha")?;
            self.keyword("in")?;
            // level ranges never depend on alpha itself
            let range_scope = if scope == Scope::Level { Scope::Constant } else { scope };
            let range = self.range(range_scope)?;
            self.expect(Tok::Colon)?;
            let set = self.set(scope)?;
            self.expect(Tok::Semi)?;
            bands.push(Band { range, set });
        }
        if bands.is_empty() {
            if self.peek().tok == Tok::RBrace {
                return Err(semantic(&open, "a definition needs at least one band (write `empty;` for the empty fuzzy set)".into()));
            }
            return self.error(&format!("`{keyword}`"));
        }
        self.expect(Tok::RBrace)?;
        if scope != Scope::Index {
            sort_bands(&mut bands, &Env::default());
        }
        Ok(bands)
    }

    fn range(&mut self, scope: Scope) -> Result<RangeExpr, ParseError> {
        let lo_closed = match self.next().tok {
            Tok::LBracket => true,
            Tok::LParen => false,
            _ => {
                self.pos -= 1;
                return self.error("`(` or `[`");
            }
        };
        let lo = self.expr(scope)?;
        self.expect(Tok::Comma)?;
        let hi = self.expr(scope)?;
        let hi_closed = match self.next().tok {
            Tok::RBracket => true,
            Tok::RParen => false,
            _ => {
                self.pos -= 1;
                return self.error("`)` or `]`");
            }
        };
        Ok(RangeExpr { lo, lo_closed, hi, hi_closed })
    }

    fn set(&mut self, scope: Scope) -> Result<SetExpr, ParseError> {
        if self.is_keyword("empty") {
            self.next();
            return Ok(SetExpr::Empty);
        }
        if self.is_keyword("R") {
            self.next();
            return Ok(SetExpr::Line);
        }
        let mut parts = vec![self.part(scope)?];
        while self.peek().tok == Tok::Bar {
            self.next();
            parts.push(self.part(scope)?);
        }
        Ok(SetExpr::Parts(parts))
    }

    fn part(&mut self, scope: Scope) -> Result<PartExpr, ParseError> {
        let open = self.next();
        let round_open = match open.tok {
            Tok::LBracket => false,
            Tok::LParen => true,
            _ => {
                self.pos -= 1;
                return self.error("`[` or `(`");
            }
        };
        let lo = self.expr(scope)?;
        self.expect(Tok::Comma)?;
        let hi = self.expr(scope)?;
        let close = self.next();
        let round_close = match close.tok {
            Tok::RBracket => false,
            Tok::RParen => true,
            _ => {
                self.pos -= 1;
                return self.error("`]` or `)`");
            }
        };
        if round_open != (lo.literal_infinity() == Some(ExtReal::NegInf)) {
            return Err(ParseError::Syntax {
                line: open.line,
                col: open.col,
                message: "use `(` exactly for a `-inf` left end and `[` otherwise".into(),
            });
        }
        if round_close != (hi.literal_infinity() == Some(ExtReal::PosInf)) {
            return Err(ParseError::Syntax {
                line: close.line,
                col: close.col,
                message: "use `)` exactly for an `inf` right end and `]` otherwise".into(),
            });
        }
        Ok(PartExpr { lo, hi })
    }

    fn expr(&mut self, scope: Scope) -> Result<Expr, ParseError> {
        let mut left = self.term(scope)?;
        loop {
            let op = self.peek().tok.clone();
            if op != Tok::Plus && op != Tok::Minus {
                return Ok(left);
            }
            self.next();
            let right = self.term(scope)?;
            left = if op == Tok::Plus {
                Expr::Add(Box::new(left), Box::new(right))
            } else {
                Expr::Sub(Box::new(left), Box::new(right))
            };
        }
    }

    fn term(&mut self, scope: Scope) -> Result<Expr, ParseError> {
        let mut left = self.unary(scope)?;
        loop {
            let op = self.peek().tok.clone();
            if op != Tok::Star && op != Tok::Slash {
                return Ok(left);
            }
            self.next();
            let right = self.unary(scope)?;
            left = if op == Tok::Star {
                Expr::Mul(Box::new(left), Box::new(right))
            } else {
                Expr::Div(Box::new(left), Box::new(right))
            };
        }
    }

    fn unary(&mut self, scope: Scope) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary(scope)?)));
        }
        self.primary(scope)
    }

    fn primary(&mut self, scope: Scope) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Number(s) => parse_decimal(s)
                .map(Expr::Num)
                .ok_or_else(|| ParseError::Syntax { line: t.line, col: t.col, message: format!("malformed number `{s}`") }),
            Tok::Ident(s) if s == "inf" => Ok(Expr::Inf),
            Tok::Ident(s) if s == "n" => {
                if scope != Scope::Index {
                    return Err(semantic(&t, "`n` may only appear inside a sequence".into()));
                }
                Ok(Expr::Var(Var::N))
            }
            Tok::Ident(s) if s == "alpha" => {
                if scope != Scope::Level {
                    return Err(semantic(&t, "`alpha` may only appear in sliceset slice endpoints".into()));
                }
                Ok(Expr::Var(Var::Alpha))
            }
            Tok::LParen => {
                let e = self.expr(scope)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                self.error("an expression")
            }
        }
    }
}

/// Descending by upper level, then by lower level, evaluated in `env`.
/// Bands that cannot be evaluated keep their relative order.
fn sort_bands(bands: &mut [Band], env: &Env) {
    let key = |b: &Band| (b.range.hi.eval(env).ok(), b.range.lo.eval(env).ok());
    bands.sort_by(|a, b| match (key(a), key(b)) {
        ((Some(ha), la), (Some(hb), lb)) => hb.cmp(&ha).then_with(|| match (la, lb) {
            (Some(la), Some(lb)) => lb.cmp(&la),
            _ => Ordering::Equal,
        }),
        _ => Ordering::Equal,
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::FuzzySequence;
    use crate::num::{int, ratio};
    use crate::spatial::{Interval, IntervalUnion};
    use crate::toolkit::{corpus, print};
    use crate::Level;

    const WCREPU: &str = "sequence wcrepu (n >= 1) {
        cut alpha in [0, 1/(3*n)]: [0, 9*n] | [10*n, inf);
        cut alpha in (1/(3*n), 0.6]: [0, 4];
        cut alpha in (0.6, 1]: [0, 1] | [3, 4];
    }";

    fn position(r: Result<Document, ParseError>) -> (bool, usize, usize) {
        match r {
            Err(ParseError::Syntax { line, col, .. }) => (true, line, col),
            Err(ParseError::Semantic { line, col, .. }) => (false, line, col),
            Ok(_) => panic!("parsed"),
        }
    }

    #[test]
    fn wcrepu_listing() {
        let doc = parse(WCREPU).unwrap();
        let u1 = doc.sequence("wcrepu").unwrap().instantiate(1).unwrap();
        assert_eq!(u1.thresholds(), vec![Level::one(), Level::ratio(3, 5), Level::ratio(1, 3)]);
        let bottom = IntervalUnion::normalize(vec![Interval::closed(int(0), int(9)), Interval::ray_up(int(10))]);
        assert_eq!(u1.alpha_cut(&Level::zero()), bottom);
        assert_eq!(u1.alpha_cut(&Level::ratio(1, 2)), IntervalUnion::normalize(vec![Interval::closed(int(0), int(4))]));
        assert!(print(&doc).contains("1/(3*n)"));
        // bands come out in descending order
        let text = print(&doc);
        assert!(text.find("(0.6, 1]").unwrap() < text.find("[0, 1/(3*n)]").unwrap());
    }

    #[test]
    fn empty_fuzzy_set() {
        assert_eq!(position(parse("fuzzyset e { }")), (false, 1, 12));
        let doc = parse("fuzzyset e empty;").unwrap();
        assert!(doc.fuzzy_set("e").unwrap().is_empty());
    }

    #[test]
    fn syntax_positions() {
        assert_eq!(position(parse("fuzzyset a {\n  cut alpha in [0, 1: [0, 1];\n}")), (true, 2, 21));
        assert_eq!(position(parse("fuzzyset a {\n  cut alpha in [0, 1]: [0, 1;\n}")), (true, 2, 29));
        assert_eq!(position(parse("fuzzyset a {\n  cut alpha in [0, 1]: (0, 1];\n}")), (true, 2, 24));
        assert_eq!(position(parse("fuzzyset in { cut alpha in [0, 1]: R; }")), (true, 1, 10));
    }

    #[test]
    fn semantic_errors() {
        let gap = "fuzzyset a {\n  cut alpha in (0.7, 1]: [0, 1];\n  cut alpha in [0, 0.6]: [0, 2];\n}";
        assert_eq!(position(parse(gap)), (false, 1, 1));
        let nested = "fuzzyset a {\n  cut alpha in (0.5, 1]: [0, 3];\n  cut alpha in [0, 0.5]: [0, 2];\n}";
        assert!(!position(parse(nested)).0);
        assert_eq!(position(parse("fuzzyset a { cut alpha in [0, 1]: [alpha, 1]; }")), (false, 1, 36));
        assert_eq!(position(parse("fuzzyset a { cut alpha in [0, 1]: [n, 1]; }")), (false, 1, 36));
        assert_eq!(position(parse("sliceset a { slice alpha in [0, alpha]: R; }")), (false, 1, 33));
        let twice = "fuzzyset a empty;\nfuzzyset a empty;";
        assert_eq!(position(parse(twice)), (false, 2, 1));
        // 1/(n-3) is fine at n = 1, 2 but not at n = 3
        let late = "sequence s (n >= 1) { cut alpha in [0, 1]: [0, 1/(n-3)]; }";
        assert!(!position(parse(late)).0);
    }

    #[test]
    fn slice_sets() {
        let doc = parse("sliceset d {\n  slice alpha in [0, 0.5]: [0, 4];\n  slice alpha in (0.5, 1]: [1-alpha*alpha, 1] | [3, 4-alpha*alpha];\n}").unwrap();
        let s = doc.slice_set("d").unwrap();
        assert_eq!(s.bands().len(), 2);
        assert_eq!(s.s_value(), Some(&int(1)));
        assert_eq!(s.f_value(), Some(&int(0)));
        assert!(print(&doc).contains("[1-alpha*alpha, 1]"));
    }

    #[test]
    fn parity_sequence() {
        let doc = corpus();
        let genr = doc.sequence("genr").unwrap();
        assert_eq!(genr.instantiate(3).unwrap().s_value(), Level::ratio(3, 5));
        let u4 = genr.instantiate(4).unwrap();
        assert_eq!(u4.s_value(), Level::one());
        assert_eq!(u4.alpha_cut(&Level::one()), IntervalUnion::normalize(vec![Interval::point(int(2))]));
        let gen = doc.sequence("gen").unwrap();
        assert_eq!(gen.instantiate(2).unwrap(), u4);
    }

    #[test]
    fn corpus_round_trip() {
        let doc = corpus();
        let text = print(&doc);
        assert_eq!(text, crate::toolkit::corpus::SOURCE);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(doc.names().count(), 15);
    }

    #[test]
    fn wcreguf_cuts() {
        let u1 = corpus().sequence("wcreguf").unwrap().instantiate(1).unwrap();
        let expected = IntervalUnion::normalize(vec![
            Interval::ray_down(int(-4)),
            Interval::closed(int(-3), int(-1)),
            Interval::closed(int(1), int(3)),
            Interval::ray_up(int(4)),
        ]);
        assert_eq!(u1.alpha_cut(&Level::ratio(1, 3)), expected);
        assert_eq!(u1.alpha_cut(&Level::zero()), expected);
        assert_ne!(u1.alpha_cut(&Level::new(ratio(1, 2)).unwrap()), expected);
    }

    #[test]
    fn number_forms() {
        let doc = parse("fuzzyset a { cut alpha in [0, .25]: [-1.5, 2/4]; }").unwrap();
        let u = doc.fuzzy_set("a").unwrap();
        assert_eq!(u.s_value(), Level::ratio(1, 4));
        assert_eq!(u.support(), IntervalUnion::normalize(vec![Interval::closed(ratio(-3, 2), ratio(1, 2))]));
        assert!(print(&doc).contains("[-1.5, 0.5]") || print(&doc).contains("[-1.5, 2/4]"));
    }
}
